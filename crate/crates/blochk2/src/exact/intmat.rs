use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (n, k) = (a.len(), b.len());
    let m = b[0].len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let t = &a[i][l] * &b[l][j];
                out[i][j] += t;
            }
        }
    }
    out
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &Mat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut denom = BigInt::one();
    let mut sign = 1i32;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // pivot search
            let mut found = None;
            for i in k + 1..n {
                if !a[i][k].is_zero() {
                    found = Some(i);
                    break;
                }
            }
            match found {
                None => return BigInt::zero(),
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &num / &denom;
            }
            a[i][k] = BigInt::zero();
        }
        denom = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Inverse of a unimodular integer matrix (det ±1), exact.
pub fn unimodular_inverse(m: &Mat) -> Mat {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("unimodular matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t1 = &f * &a[col][j];
                a[r][j] -= t1;
                let t2 = &f * &inv[col][j];
                inv[r][j] -= t2;
            }
        }
    }
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|c| {
                    assert!(c.is_integer(), "matrix was not unimodular");
                    c.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Smith normal form result: `u * a * v = d` with `u, v` unimodular and `d`
/// diagonal, nonnegative, each entry dividing the next.
pub struct Snf {
    pub d: Mat,
    pub u: Mat,
    pub v: Mat,
}

/// Smith normal form with deterministic pivoting (smallest nonzero pivot by
/// absolute value, then lowest row-major index).
pub fn smith_normal_form(a: &Mat) -> Snf {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let mut t = 0usize;
    while t < rows.min(cols) {
        // pick pivot among d[t.., t..]
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[i][j].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d[i][j].abs() < d[pi][pj].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let (pi, pj) = match pivot {
            None => break,
            Some(p) => p,
        };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);

        // clear row and column t by division steps; restart if a remainder
        // forces a smaller pivot
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = rounded_div(&d[i][t], &d[t][t]);
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    // remainder smaller than pivot: swap up and redo
                    d.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = rounded_div(&d[t][j], &d[t][t]);
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    dirty = true;
                }
            }
        }
        t += 1;
    }
    // normalize signs
    for i in 0..rows.min(cols) {
        if d[i][i].is_negative() {
            for j in 0..cols {
                let x = -d[i][j].clone();
                d[i][j] = x;
            }
            for j in 0..rows {
                let x = -u[i][j].clone();
                u[i][j] = x;
            }
        }
    }
    // divisibility chain: fold non-dividing later entries back
    let rank = (0..rows.min(cols)).take_while(|&i| !d[i][i].is_zero()).count();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..rank.saturating_sub(1) {
            let (a_, b_) = (d[i][i].clone(), d[i + 1][i + 1].clone());
            if (&b_ % &a_).is_zero() {
                continue;
            }
            changed = true;
            let g = a_.gcd(&b_);
            let l = &a_ * &b_ / &g;
            // standard 2x2 smith step via explicit transforms:
            // add col i+1 to col i, then clear
            add_col(&mut d, i, i + 1, &BigInt::one());
            add_col(&mut v, i, i + 1, &BigInt::one());
            // now d[i][i]=a, d[i+1][i]=b; reduce the 2x2 block
            let e = a_.extended_gcd(&b_);
            // row_i' = x*row_i + y*row_{i+1}; row_{i+1}' = -(b/g) row_i + (a/g) row_{i+1}
            let (x, y) = (e.x.clone(), e.y.clone());
            let (am, bm) = (&a_ / &g, &b_ / &g);
            row_combine(&mut d, i, i + 1, &x, &y, &(-bm.clone()), &am);
            row_combine(&mut u, i, i + 1, &x, &y, &(-bm.clone()), &am);
            // clear the off-diagonal entry in column i+1
            let q = rounded_div(&d[i][i + 1].clone(), &d[i][i]);
            col_sub_from(&mut d, i + 1, i, &q);
            col_sub_from(&mut v, i + 1, i, &q);
            debug_assert_eq!(d[i][i], g);
            debug_assert_eq!(d[i + 1][i + 1].abs(), l);
            if d[i + 1][i + 1].is_negative() {
                for j in 0..cols {
                    let xx = -d[i + 1][j].clone();
                    d[i + 1][j] = xx;
                }
                for j in 0..rows {
                    let xx = -u[i + 1][j].clone();
                    u[i + 1][j] = xx;
                }
            }
        }
    }
    Snf { d, u, v }
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i -= q * row_t
fn row_sub(m: &mut Mat, i: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let cols = m[0].len();
    for j in 0..cols {
        let delta = q * &m[t][j];
        m[i][j] -= delta;
    }
}

/// col_j -= q * col_t
fn col_sub(m: &mut Mat, j: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let delta = q * &row[t];
        row[j] -= delta;
    }
}

/// col_j -= q * col_t (same as col_sub; explicit name for the SNF chain fix)
fn col_sub_from(m: &mut Mat, j: usize, t: usize, q: &BigInt) {
    col_sub(m, j, t, q)
}

/// col_a += q * col_b
fn add_col(m: &mut Mat, a: usize, b: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let delta = q * &row[b];
        row[a] += delta;
    }
}

/// Simultaneous row update:
/// row_i <- p*row_i + q*row_k ; row_k <- r*row_i_old + s*row_k_old
fn row_combine(m: &mut Mat, i: usize, k: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
    let cols = m[0].len();
    for j in 0..cols {
        let a = m[i][j].clone();
        let b = m[k][j].clone();
        m[i][j] = p * &a + q * &b;
        m[k][j] = r * &a + s * &b;
    }
}

/// Division rounding to nearest (ties toward zero), keeping remainders small.
pub fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        if a.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&m(&[&[2, 1], &[1, 1]])), BigInt::one());
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(
            determinant(&m(&[&[3, 0, 0], &[0, -2, 0], &[0, 0, 5]])),
            BigInt::from(-30)
        );
        // Vandermonde 1,2,3
        assert_eq!(
            determinant(&m(&[&[1, 1, 1], &[1, 2, 4], &[1, 3, 9]])),
            BigInt::from(2)
        );
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let ai = unimodular_inverse(&a);
        assert_eq!(matmul(&a, &ai), identity(2));
    }

    fn check_snf(a: &Mat, expect_diag: &[i64]) {
        let snf = smith_normal_form(a);
        let prod = matmul(&matmul(&snf.u, a), &snf.v);
        assert_eq!(prod, snf.d, "U*A*V == D");
        for (i, &e) in expect_diag.iter().enumerate() {
            assert_eq!(snf.d[i][i], BigInt::from(e), "diagonal {i}");
        }
        assert_eq!(determinant(&snf.u).abs(), BigInt::one());
        assert_eq!(determinant(&snf.v).abs(), BigInt::one());
        // divisibility chain
        let n = a.len().min(a[0].len());
        for i in 0..n - 1 {
            if !snf.d[i + 1][i + 1].is_zero() {
                assert!((&snf.d[i + 1][i + 1] % &snf.d[i][i]).is_zero());
            }
        }
    }

    #[test]
    fn snf_examples() {
        check_snf(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]), &[2, 2, 156]);
        check_snf(&m(&[&[1, -3, 1]]), &[1]);
        check_snf(&m(&[&[2, 0], &[0, 3]]), &[1, 6]);
        check_snf(&m(&[&[0, 0], &[0, 0]]), &[0, 0]);
        check_snf(&m(&[&[6, 4], &[4, 6]]), &[2, 10]);
    }
}

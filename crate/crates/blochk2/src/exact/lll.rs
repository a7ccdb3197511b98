use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Lenstra–Lenstra–Lovász reduction with δ = 3/4, exact rational
/// Gram–Schmidt. Dimensions here are tiny (≤ 16), so the textbook algorithm
/// is plenty.
pub fn lll_reduce(basis: &mut Vec<Vec<BigInt>>) {
    let n = basis.len();
    if n <= 1 {
        return;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));

    let mut k = 1usize;
    let (mut mu, mut b_star_sq) = gram_schmidt(basis);
    while k < n {
        // size reduction of b_k against b_{k-1}..b_0
        for j in (0..k).rev() {
            let q = round_rational(&mu[k][j]);
            if !q.is_zero() {
                let bj = basis[j].clone();
                for (x, y) in basis[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                let qq = BigRational::from_integer(q);
                for l in 0..=j {
                    let adj = &qq * &mu[j][l];
                    mu[k][l] -= adj;
                }
            }
        }
        // Lovász condition
        let lhs = &b_star_sq[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b_star_sq[k - 1];
        if lhs >= &rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            let res = gram_schmidt(basis);
            mu = res.0;
            b_star_sq = res.1;
            k = k.max(2) - 1;
        }
    }
}

/// Returns (mu, |b*_i|^2). Zero vectors yield zero norms; callers must not
/// feed linearly dependent rows (our lattices always have full row rank by
/// construction: identity block on the left).
fn gram_schmidt(basis: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = basis.len();
    let dim = basis[0].len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<BigRational> = basis[i]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        for j in 0..i {
            let dot = int_rat_dot(&basis[i], &star[j]);
            let m = if norms[j] == BigRational::zero() {
                BigRational::zero()
            } else {
                dot / &norms[j]
            };
            mu[i][j] = m.clone();
            for l in 0..dim {
                let adj = &m * &star[j][l];
                v[l] -= adj;
            }
        }
        mu[i][i] = BigRational::one();
        let norm = v.iter().map(|c| c * c).fold(BigRational::zero(), |a, b| a + b);
        norms.push(norm);
        star.push(v);
    }
    (mu, norms)
}

fn int_rat_dot(a: &[BigInt], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| BigRational::from_integer(x.clone()) * y)
        .fold(BigRational::zero(), |acc, t| acc + t)
}

fn round_rational(r: &BigRational) -> BigInt {
    use num_integer::Integer;
    let two = BigInt::from(2);
    let num = r.numer() * &two + r.denom();
    let den = r.denom() * &two;
    num.div_floor(&den)
}

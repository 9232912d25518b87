//! Exact rational roots of polynomials over `Q`.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use super::{Poly, Scalar, Var};
use crate::error::{Error, Result};

/// Largest absolute integer we are willing to factor by trial division.
const FACTOR_LIMIT: u64 = 1 << 40;

/// Primitive integer polynomial with the same roots as `p`.
fn integer_coefficients<V: Var>(p: &Poly<Scalar, V>) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Scalar::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| if g.is_zero() { c } else { c / &g }).collect()
}

fn positive_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&v| v <= FACTOR_LIMIT)
        .ok_or_else(|| Error::Precondition(format!("coefficient {n} too large for rational root search")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Distinct rational roots of `p`, sorted ascending.
///
/// Uses the rational root theorem on the primitive integer form. Fails with
/// [`Error::Precondition`] for the zero polynomial or when a coefficient is
/// too large to factor.
pub fn rational_roots<V: Var>(p: &Poly<Scalar, V>) -> Result<Vec<Scalar>> {
    if p.is_zero() {
        return Err(Error::Precondition("every point is a root of the zero polynomial".into()));
    }
    let mut roots = Vec::new();
    let coeffs = integer_coefficients(p);
    let low = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    if low > 0 {
        roots.push(Scalar::zero());
    }
    let trimmed = &coeffs[low..];
    if trimmed.len() > 1 {
        let ps = positive_divisors(&trimmed[0])?;
        let qs = positive_divisors(trimmed.last().expect("nonempty"))?;
        let reduced = Poly::<Scalar, V>::from_coeffs(trimmed.iter().map(|c| Scalar::from_integer(c.clone())).collect());
        for &q in &qs {
            for &num in &ps {
                if BigInt::from(num).gcd(&BigInt::from(q)) != BigInt::one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand = Scalar::new(BigInt::from(num) * sign, BigInt::from(q));
                    if super::Field::is_zero(&reduced.eval(&cand)) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Roots of `p` that are integers `≥ 0`.
pub fn nonneg_integer_roots<V: Var>(p: &Poly<Scalar, V>) -> Result<Vec<i64>> {
    Ok(rational_roots(p)?
        .into_iter()
        .filter(super::is_nonneg_integer)
        .filter_map(|r| r.to_integer().to_i64())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Xi};

    fn p(c: &[Scalar]) -> Poly<Scalar, Xi> {
        Poly::from_coeffs(c.to_vec())
    }

    #[test]
    fn finds_all_rational_roots() {
        // (2x+3)(x-4)x(x²+1)
        let f = p(&[int(3), int(2)])
            .mul(&p(&[int(-4), int(1)]))
            .mul(&p(&[int(0), int(1)]))
            .mul(&p(&[int(1), int(0), int(1)]));
        assert_eq!(rational_roots(&f).unwrap(), vec![rat(-3, 2), int(0), int(4)]);
        assert_eq!(nonneg_integer_roots(&f).unwrap(), vec![0, 4]);
    }

    #[test]
    fn rational_coefficients_and_repeated_roots() {
        // (x - 1/3)² (x + 5/2)
        let f = p(&[rat(-1, 3), int(1)]).pow(2).mul(&p(&[rat(5, 2), int(1)]));
        assert_eq!(rational_roots(&f).unwrap(), vec![rat(-5, 2), rat(1, 3)]);
    }

    #[test]
    fn constants_have_no_roots() {
        assert!(rational_roots(&p(&[int(7)])).unwrap().is_empty());
        assert!(rational_roots(&Poly::<Scalar, Xi>::zero()).is_err());
    }
}

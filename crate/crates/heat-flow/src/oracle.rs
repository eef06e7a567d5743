use crate::error::HeatError;
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use poly_core::rational::{binomial, pow};
use poly_core::{Monomial, Polynomial};

/// `E[y^k]` for `y ~ N(0, 2t)`: `(k−1)!!·(2t)^{k/2}` for even `k`, zero for odd.
fn gaussian_moment(k: u32, time: &BigRational) -> BigRational {
    if k % 2 == 1 {
        return BigRational::zero();
    }
    let mut dfact = BigInt::one();
    let mut i = 1u32;
    while i < k {
        dfact *= BigInt::from(i);
        i += 2;
    }
    let two_t = time * BigRational::from_integer(BigInt::from(2));
    BigRational::from_integer(dfact) * pow(&two_t, k / 2)
}

/// Convolution of `f0` with the heat kernel at `time > 0`, computed by
/// expanding `f0(x − y)` binomially and integrating each power of `y`
/// against the Gaussian.
pub fn gaussian_convolution_oracle(f0: &Polynomial, time: &BigRational) -> Result<Polynomial> {
    if !time.is_positive() {
        return Err(HeatError::Domain(format!("time must be positive, got {time}")));
    }
    let n = f0.nvars();
    let mut out = Polynomial::zero(n);
    for (m, c) in f0.terms() {
        // per coordinate: Σ_k C(a,k) x^{a−k} E[(−y)^k]
        let mut partial: Vec<(Vec<u32>, BigRational)> = vec![(vec![0; n], c.clone())];
        for (i, &a) in m.exponents().iter().enumerate() {
            let mut next = Vec::new();
            for k in 0..=a {
                let mom = gaussian_moment(k, time);
                if mom.is_zero() {
                    continue;
                }
                let w = BigRational::from_integer(binomial(a, k)) * mom;
                for (e, v) in &partial {
                    let mut e = e.clone();
                    e[i] = a - k;
                    next.push((e, v * &w));
                }
            }
            partial = next;
        }
        for (e, v) in partial {
            out.add_term(Monomial::new(e), v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve_at;
    use poly_core::catalog::motzkin;
    use poly_core::{rat, ratio};

    #[test]
    fn known_values() {
        let x2 = Polynomial::from_int_terms(1, &[(1, &[2])]);
        assert_eq!(
            gaussian_convolution_oracle(&x2, &rat(1)).unwrap(),
            Polynomial::from_int_terms(1, &[(1, &[2]), (2, &[0])])
        );
        let x = Polynomial::var(1, 0);
        assert_eq!(gaussian_convolution_oracle(&x, &ratio(3, 7)).unwrap(), x);
        assert_eq!(
            gaussian_convolution_oracle(&motzkin(), &rat(1)).unwrap(),
            evolve_at(&motzkin(), &rat(1))
        );
    }

    #[test]
    fn rejects_non_positive_time() {
        let x = Polynomial::var(1, 0);
        assert!(gaussian_convolution_oracle(&x, &rat(0)).is_err());
        assert!(gaussian_convolution_oracle(&x, &rat(-1)).is_err());
    }

    #[test]
    fn fourth_moment() {
        // E[y^4] with variance 2t is 3(2t)^2
        assert_eq!(gaussian_moment(4, &ratio(1, 2)), rat(3));
        assert_eq!(gaussian_moment(3, &rat(1)), rat(0));
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use poly_core::rational::factorial;
use poly_core::{Polynomial, TimePolynomial};
use std::sync::{Arc, OnceLock, RwLock};

/// Coefficients of the degree-`k` heat polynomial: entry `j` multiplies
/// `t^j x^{k-2j}`.
fn coefficients(k: u32) -> Vec<BigInt> {
    let kf = factorial(k);
    (0..=k / 2)
        .map(|j| &kf / (factorial(k - 2 * j) * factorial(j)))
        .collect()
}

/// Memoized table of heat-polynomial coefficients, grown on demand and safe
/// to share between threads.
#[derive(Default)]
pub struct HeatBasisCache {
    table: RwLock<Vec<Arc<Vec<BigInt>>>>,
}

impl HeatBasisCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide instance.
    pub fn global() -> &'static HeatBasisCache {
        static CACHE: OnceLock<HeatBasisCache> = OnceLock::new();
        CACHE.get_or_init(HeatBasisCache::new)
    }

    /// Coefficient list for degree `k` (entry `j` belongs to `t^j x^{k-2j}`).
    pub fn coefficients(&self, k: u32) -> Arc<Vec<BigInt>> {
        if let Some(c) = self.table.read().expect("cache lock").get(k as usize) {
            return c.clone();
        }
        let mut w = self.table.write().expect("cache lock");
        while w.len() <= k as usize {
            let next = w.len() as u32;
            w.push(Arc::new(coefficients(next)));
        }
        w[k as usize].clone()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The heat polynomial of degree `k` in `(t, x)`.
    pub fn get(&self, k: u32) -> TimePolynomial {
        let coefs = self.coefficients(k);
        let terms = coefs
            .iter()
            .enumerate()
            .map(|(j, c)| (vec![j as u32, k - 2 * j as u32], BigRational::from_integer(c.clone())));
        TimePolynomial::from_polynomial(Polynomial::from_terms(2, terms).expect("two slots"))
            .expect("two slots")
    }
}

/// Degree-`k` heat polynomial, the solution of `u_t = u_xx` with `u(x,0) = x^k`.
pub fn heat_basis(k: u32) -> TimePolynomial {
    HeatBasisCache::global().get(k)
}

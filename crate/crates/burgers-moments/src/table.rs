use crate::{BurgersError, Result};
use num_rational::BigRational;
use poly_core::{format_rational, parse_rational, rat, rational::binomial};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// Initial values `s_{k,p}(0)` keyed by `(k, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BurgersMomentTable {
    initial: BTreeMap<(u32, u32), BigRational>,
}

impl BurgersMomentTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = ((u32, u32), BigRational)>>(entries: I) -> Self {
        BurgersMomentTable { initial: entries.into_iter().collect() }
    }

    pub fn get(&self, k: u32, p: u32) -> Option<&BigRational> {
        self.initial.get(&(k, p))
    }

    pub fn insert(&mut self, k: u32, p: u32, value: BigRational) {
        self.initial.insert((k, p), value);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.initial.iter()
    }

    pub fn max_k(&self) -> u32 {
        self.initial.keys().map(|kp| kp.0).max().unwrap_or(0)
    }

    pub fn max_p(&self) -> u32 {
        self.initial.keys().map(|kp| kp.1).max().unwrap_or(0)
    }

    /// Every entry multiplied by `factor`.
    pub fn scaled(&self, factor: &BigRational) -> Self {
        Self::from_entries(self.initial.iter().map(|(kp, v)| (*kp, v * factor)))
    }

    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.initial.iter().map(|((k, p), v)| (format!("{k},{p}"), format_rational(v))).collect()
    }

    pub fn from_json_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let mut out = Self::new();
        for (key, value) in map {
            let bad = || BurgersError::BadEntry(format!("{key:?}: {value:?}"));
            let (k, p) = key.split_once(',').ok_or_else(bad)?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            let p: u32 = p.trim().parse().map_err(|_| bad())?;
            out.insert(k, p, parse_rational(value).map_err(|_| bad())?);
        }
        Ok(out)
    }
}

impl Serialize for BurgersMomentTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_map().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BurgersMomentTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, String>::deserialize(d)?;
        Self::from_json_map(&map).map_err(serde::de::Error::custom)
    }
}

/// `∫ x^k f₀(x)^p dx` for the tent `f₀ = 1 − |x|` on `[−1, 1]`, for all
/// `k ≤ max_k`, `p ≤ max_p`. `f₀^0` is taken as the indicator of
/// `[−1, 1]`, so `s_{k,0}(0) = ∫_{−1}^{1} x^k dx`.
pub fn one_tooth_initial_moments(max_k: u32, max_p: u32) -> BurgersMomentTable {
    let mut table = BurgersMomentTable::new();
    for k in 0..=max_k {
        for p in 0..=max_p {
            // left piece (1 + x)^p on [−1, 0], right piece (1 − x)^p on [0, 1]
            let mut total = rat(0);
            for j in 0..=p {
                let c = BigRational::from_integer(binomial(p, j));
                let e = (k + j + 1) as i64;
                let left = if (k + j) % 2 == 0 { rat(1) } else { rat(-1) } / rat(e);
                let right = if j % 2 == 0 { rat(1) } else { rat(-1) } / rat(e);
                total += c * (left + right);
            }
            table.insert(k, p, total);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly_core::ratio;

    #[test]
    fn tent_moments() {
        let t = one_tooth_initial_moments(2, 3);
        assert_eq!(t.get(0, 1), Some(&rat(1)));
        assert_eq!(t.get(1, 1), Some(&rat(0)));
        assert_eq!(t.get(2, 1), Some(&ratio(1, 6)));
        assert_eq!(t.get(0, 0), Some(&rat(2)));
        assert_eq!(t.get(2, 0), Some(&ratio(2, 3)));
        assert_eq!((t.max_k(), t.max_p()), (2, 3));
    }

    #[test]
    fn json_keys() {
        let t = one_tooth_initial_moments(1, 1);
        let map = t.to_json_map();
        assert_eq!(map.get("0,1").map(String::as_str), Some("1"));
        assert_eq!(map.get("1,1").map(String::as_str), Some("0"));
        assert_eq!(BurgersMomentTable::from_json_map(&map).unwrap(), t);
        let mut bad = BTreeMap::new();
        bad.insert("1;1".to_string(), "1".to_string());
        assert!(BurgersMomentTable::from_json_map(&bad).is_err());
    }
}

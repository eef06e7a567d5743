use crate::error::PolyError;
use crate::monomial::Monomial;
use crate::rational::{pow, to_f64};
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Total degree, with the zero polynomial at negative infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse polynomial in a fixed number of variables. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    /// The zero polynomial. Panics if `nvars == 0`.
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars > 0, "a polynomial needs at least one variable");
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// The coordinate function `x_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::term(nvars, Monomial::var(nvars, var), BigRational::one())
    }

    pub fn term(nvars: usize, m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        assert_eq!(m.nvars(), nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        if nvars == 0 {
            return Err(PolyError::NoVariables);
        }
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PolyError::VariableCount { expected: nvars, found: e.len() });
            }
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }

    /// Convenience for integer-coefficient literals.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            nvars,
            terms.iter().map(|(c, e)| (e.to_vec(), BigRational::from_integer(BigInt::from(*c)))),
        )
        .expect("literal terms must match the variable count")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.coefficient(&Monomial::new(exps.to_vec()))
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |m| Degree::Finite(m.degree()))
    }

    /// Largest exponent of one variable across all terms.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[var]).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(PolyError::VariableCount { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Exact product. Fails on a variable-count mismatch.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(PolyError::VariableCount { expected: self.nvars, found: point.len() });
        }
        let mut sum = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= pow(x, e);
                }
            }
            sum += v;
        }
        Ok(sum)
    }

    /// Floating-point value; coefficients are rounded to `f64` first.
    pub fn evaluate_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.nvars {
            return Err(PolyError::VariableCount { expected: self.nvars, found: point.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .zip(point)
                    .fold(to_f64(c), |acc, (&e, x)| acc * x.powi(e as i32))
            })
            .sum())
    }

    /// Partial derivative in one variable.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[var] -= 1;
            out.add_term(Monomial::new(ex), c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// `Σ_i w_i ∂_i² p` over all variables.
    pub fn laplacian(&self, weights: &[BigRational]) -> Result<Polynomial> {
        self.laplacian_from(0, weights)
    }

    /// Weighted Laplacian over variables `first, first+1, …`; used by
    /// [`crate::TimePolynomial`] to skip the time slot.
    pub(crate) fn laplacian_from(&self, first: usize, weights: &[BigRational]) -> Result<Polynomial> {
        if first + weights.len() != self.nvars {
            return Err(PolyError::VariableCount {
                expected: self.nvars - first,
                found: weights.len(),
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            for (i, w) in weights.iter().enumerate() {
                let var = first + i;
                let e = m.exponents()[var];
                if e < 2 || w.is_zero() {
                    continue;
                }
                let mut ex = m.exponents().to_vec();
                ex[var] -= 2;
                let f = BigRational::from_integer(BigInt::from(e * (e - 1)));
                out.add_term(Monomial::new(ex), c * f * w);
            }
        }
        Ok(out)
    }

    /// Terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Sets one variable to a value; the variable slot stays, with exponent 0.
    pub fn substitute(&self, var: usize, value: &BigRational) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            let mut ex = m.exponents().to_vec();
            ex[var] = 0;
            let v = if e == 0 { c.clone() } else { c * pow(value, e) };
            out.add_term(Monomial::new(ex), v);
        }
        out
    }

    /// Replaces variable `i` by `images[i]`; the result lives in the images'
    /// ring.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(PolyError::VariableCount { expected: self.nvars, found: images.len() });
        }
        let target = images[0].nvars;
        for im in images {
            if im.nvars != target {
                return Err(PolyError::VariableCount { expected: target, found: im.nvars });
            }
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|im| vec![Polynomial::one(im.nvars), im.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Re-embeds into `nvars` variables, sending variable `i` to slot
    /// `slots[i]`.
    pub fn embed(&self, nvars: usize, slots: &[usize]) -> Result<Polynomial> {
        if slots.len() != self.nvars {
            return Err(PolyError::VariableCount { expected: self.nvars, found: slots.len() });
        }
        if nvars == 0 || slots.iter().any(|&s| s >= nvars) {
            return Err(PolyError::Malformed(format!("slot out of range for {nvars} variables")));
        }
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut ex = vec![0; nvars];
            for (i, &e) in m.exponents().iter().enumerate() {
                ex[slots[i]] += e;
            }
            out.add_term(Monomial::new(ex), c.clone());
        }
        Ok(out)
    }

    /// Drops a variable that does not occur.
    pub fn remove_var(&self, var: usize) -> Result<Polynomial> {
        if self.nvars < 2 {
            return Err(PolyError::NoVariables);
        }
        if self.degree_in(var) != 0 {
            return Err(PolyError::Malformed(format!("variable {var} still occurs")));
        }
        let mut out = Polynomial::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            let mut ex = m.exponents().to_vec();
            ex.remove(var);
            out.add_term(Monomial::new(ex), c.clone());
        }
        Ok(out)
    }

    /// Largest absolute coefficient, as a float.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| to_f64(c).abs()).fold(0.0, f64::max)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Polynomial {
    /// Human-readable form with the given variable names, terms in
    /// descending graded-lex order or ascending when `ascending` is set.
    pub fn format_with(&self, names: &[String], ascending: bool) -> Result<String> {
        if names.len() != self.nvars {
            return Err(PolyError::VariableCount { expected: self.nvars, found: names.len() });
        }
        if self.terms.is_empty() {
            return Ok("0".into());
        }
        let terms: Box<dyn Iterator<Item = (&Monomial, &BigRational)>> =
            if ascending { Box::new(self.terms.iter()) } else { Box::new(self.terms.iter().rev()) };
        let mut out = String::new();
        for (i, (m, c)) in terms.enumerate() {
            let s = crate::rational::format_rational(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            if mono.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag, mono.join("*")));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::json::default_var_names(self.nvars);
        f.write_str(&self.format_with(&names, false).expect("names sized to variables"))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("variable count mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("variable count mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs).expect("variable count mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

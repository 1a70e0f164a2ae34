//! Exact rational coefficients, sparse monomials and multivariate polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::render::{render_power, render_sum};

/// The ground field: arbitrary-precision rationals, always in lowest terms
/// with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `a (a-1) ... (a-k+1)`; zero when `k > a`.
pub fn falling(a: u64, k: u64) -> BigInt {
    if k > a {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - i))
}

pub fn factorial(n: u64) -> BigInt {
    falling(n, n)
}

/// Falling factorial for a possibly negative base, as used for Laurent
/// monomials: `a (a-1) ... (a-k+1)`.
pub fn falling_signed(a: i64, k: u64) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - i))
}

/// A monomial `x^α` stored as a sorted sparse map `variable → exponent`.
/// Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Monomial(vec![(i, 1)])
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(i, e)])
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect(),
        )
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (i, e) in pairs {
            *map.entry(i).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0
            .iter()
            .find(|(v, _)| *v == i)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for &(i, e) in &self.0 {
            if i < n {
                out[i] = e;
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest variable index with a nonzero exponent.
    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(i, _)| i)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => match i.cmp(&j) {
                    Ordering::Less => {
                        out.push((i, e));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((j, f));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((i, e + f));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(i, e)| other.exponent(i) >= e)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other
                .0
                .iter()
                .map(|&(i, e)| (i, e - self.exponent(i)))
                .filter(|&(_, e)| e > 0)
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(
            self.0
                .iter()
                .chain(other.0.iter())
                .map(|&(i, _)| i)
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .map(|i| (i, self.exponent(i).max(other.exponent(i)))),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(i, _)| other.exponent(i) == 0)
    }

    /// Graded lexicographic comparison with variable 0 most significant.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.lex_cmp(other))
    }

    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let mut a = self.0.iter();
        let mut b = other.0.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(i, e)), Some(&(j, f))) => {
                    if i != j {
                        // the monomial containing the smaller index is larger
                        return j.cmp(&i);
                    }
                    if e != f {
                        return e.cmp(&f);
                    }
                }
            }
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        self.0
            .iter()
            .map(|&(i, e)| render_power(&names[i], e as i64))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Default variable names `x1, …, xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// A polynomial in `nvars` variables over the rationals, in canonical form:
/// no zero coefficients are stored and the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, Monomial::one(), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{} out of range", i + 1);
        Self::monomial(nvars, Monomial::var(i), Rat::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Univariate helper: `Σ coeffs[k] x^k` in one variable.
    pub fn univariate(coeffs: &[Rat]) -> Self {
        Self::from_terms(
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var_pow(0, k as u32), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rat> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&Monomial::one())
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.max_var().is_none_or(|v| v < self.nvars));
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::structural(format!(
                "variable-count mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Result<MultiPoly> {
        if var >= self.nvars {
            return Err(Error::structural(format!(
                "variable index {var} out of range for {} variables",
                self.nvars
            )));
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let reduced = Monomial::var(var).quotient_of(m).expect("exponent checked");
            out.add_term(reduced, c * rat(e as i64));
        }
        Ok(out)
    }

    /// Substitutes `x_i ↦ images[i]`; all images share one variable count.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::structural(format!(
                "substitution needs {} images, got {}",
                self.nvars,
                images.len()
            )));
        }
        let target = images.first().map_or(0, MultiPoly::nvars);
        if images.iter().any(|p| p.nvars != target) {
            return Err(Error::structural(
                "substitution images disagree on variable count",
            ));
        }
        let mut cache: BTreeMap<(usize, u32), MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, e) in m.iter() {
                let power = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                term = &term * &power;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-embeds the polynomial into a ring with `nvars` variables, mapping
    /// variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        MultiPoly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                (
                    Monomial::from_pairs(m.iter().map(|(i, e)| (map[i], e))),
                    c.clone(),
                )
            }),
        )
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms_grlex_desc(&self) -> Vec<(&Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(a.0));
        v
    }

    pub fn render(&self, names: &[String]) -> String {
        render_sum(
            self.terms_grlex_desc()
                .into_iter()
                .map(|(m, c)| (c.clone(), m.render(names))),
        )
    }

    // --- univariate helpers (nvars == 1) -------------------------------

    fn uni_lead(&self) -> Option<(u32, Rat)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.exponent(0), c.clone()))
            .max_by_key(|(e, _)| *e)
    }

    /// Euclidean division in `K[x]`.
    pub fn uni_div_rem(&self, divisor: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        if self.nvars != 1 || divisor.nvars != 1 {
            return Err(Error::structural("univariate division needs one variable"));
        }
        let (dd, dc) = divisor
            .uni_lead()
            .ok_or_else(|| Error::structural("division by zero polynomial"))?;
        let mut q = MultiPoly::zero(1);
        let mut r = self.clone();
        while let Some((rd, rc)) = r.uni_lead() {
            if rd < dd {
                break;
            }
            let m = Monomial::var_pow(0, rd - dd);
            let c = rc / &dc;
            q.add_term(m.clone(), c.clone());
            r = &r - &divisor.mul_monomial(&m, &c);
        }
        Ok((q, r))
    }

    /// Monic greatest common divisor in `K[x]` (`0` when both are zero).
    pub fn uni_gcd(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.uni_div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Scales so the leading coefficient (any order, univariate: top degree)
    /// is one.
    pub fn monic(&self) -> MultiPoly {
        match self.uni_lead_any() {
            Some(c) => self.scale(&(Rat::one() / c)),
            None => self.clone(),
        }
    }

    fn uni_lead_any(&self) -> Option<Rat> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.grlex_cmp(b.0))
            .map(|(_, c)| c.clone())
    }

    /// Coefficient list `[c_0, c_1, …]` of a univariate polynomial.
    pub fn uni_coefficients(&self) -> Vec<Rat> {
        let deg = self.degree_in(0).unwrap_or(0) as usize;
        let mut out = vec![Rat::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            out[m.exponent(0) as usize] = c.clone();
        }
        out
    }

    pub fn has_negative_leading(&self) -> bool {
        self.uni_lead_any().is_some_and(|c| c.is_negative())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.nvars)))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("variable-count mismatch in +")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("variable-count mismatch in -")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("variable-count mismatch in *")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

/// Exact product; fails on a variable-count mismatch.
pub fn poly_mul(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    p.try_mul(q)
}

/// A derivation of a polynomial ring, given by the images `δ(x_i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivationSpec {
    images: Vec<MultiPoly>,
}

impl DerivationSpec {
    pub fn new(images: Vec<MultiPoly>) -> Result<Self> {
        let n = images.len();
        if let Some(bad) = images.iter().find(|p| p.nvars() != n) {
            return Err(Error::structural(format!(
                "derivation image has {} variables, ring has {n}",
                bad.nvars()
            )));
        }
        Ok(DerivationSpec { images })
    }

    /// The partial derivative `∂/∂x_var` on a ring with `nvars` variables.
    pub fn partial(nvars: usize, var: usize) -> Self {
        let images = (0..nvars)
            .map(|i| {
                if i == var {
                    MultiPoly::one(nvars)
                } else {
                    MultiPoly::zero(nvars)
                }
            })
            .collect();
        DerivationSpec { images }
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    /// `Σ_i δ(x_i) ∂p/∂x_i`.
    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.nvars() {
            return Err(Error::structural(format!(
                "derivation on {} variables applied to polynomial in {}",
                self.nvars(),
                p.nvars()
            )));
        }
        let mut out = MultiPoly::zero(p.nvars());
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let dp = p.partial_derivative(i)?;
            if !dp.is_zero() {
                out = &out + &(img * &dp);
            }
        }
        Ok(out)
    }

    pub fn apply_pow(&self, p: &MultiPoly, n: usize) -> Result<MultiPoly> {
        let mut cur = p.clone();
        for _ in 0..n {
            if cur.is_zero() {
                break;
            }
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }
}

pub fn apply_derivation(d: &DerivationSpec, p: &MultiPoly) -> Result<MultiPoly> {
    d.apply(p)
}

/// Checks `δⁿ(ab) = Σ_i C(n,i) δ^i(a) δ^{n-i}(b)` with both sides computed
/// independently.
pub fn leibniz_power_check(
    d: &DerivationSpec,
    a: &MultiPoly,
    b: &MultiPoly,
    n: usize,
) -> Result<bool> {
    let lhs = d.apply_pow(&a.try_mul(b)?, n)?;
    let a_pows: Vec<MultiPoly> = std::iter::successors(Some(a.clone()), |p| d.apply(p).ok())
        .take(n + 1)
        .collect();
    let b_pows: Vec<MultiPoly> = std::iter::successors(Some(b.clone()), |p| d.apply(p).ok())
        .take(n + 1)
        .collect();
    if a_pows.len() != n + 1 || b_pows.len() != n + 1 {
        return Err(Error::structural(
            "derivation and operands disagree on variable count",
        ));
    }
    let mut rhs = MultiPoly::zero(a.nvars());
    for i in 0..=n {
        let c = Rat::from_integer(binomial(n as u64, i as u64));
        rhs = &rhs + &(&a_pows[i] * &b_pows[n - i]).scale(&c);
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(2, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(2, 1)
    }
    fn c2(v: i64) -> MultiPoly {
        MultiPoly::constant(2, rat(v))
    }
    fn cusp() -> MultiPoly {
        &y().pow(2) - &x().pow(3)
    }
    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn products() {
        let p = &(&x() + &c2(1)) * &(&x() - &c2(1));
        assert_eq!(p, &x().pow(2) - &c2(1));
        assert!((&cusp() * &MultiPoly::zero(2)).is_zero());
        assert_eq!((&cusp() * &x()).render(&names()), "-x^4 + x*y^2");
        assert!(poly_mul(&x(), &MultiPoly::var(3, 0)).is_err());
    }

    #[test]
    fn partials_of_the_cusp() {
        assert_eq!(
            cusp().partial_derivative(0).unwrap().render(&names()),
            "-3*x^2"
        );
        assert_eq!(
            cusp().partial_derivative(1).unwrap().render(&names()),
            "2*y"
        );
        assert!(c2(7).partial_derivative(0).unwrap().is_zero());
        assert_eq!(
            cusp().partial_derivative(2).unwrap_err().kind(),
            "structural"
        );
    }

    #[test]
    fn euler_derivation_scales_monomials() {
        let t = MultiPoly::var(1, 0);
        let euler = DerivationSpec::new(vec![t.clone()]).unwrap();
        for k in 0..6 {
            let p = t.pow(k);
            assert_eq!(euler.apply(&p).unwrap(), p.scale(&rat(k as i64)));
        }
        let ddt = DerivationSpec::partial(1, 0);
        assert_eq!(ddt.apply(&t.pow(3)).unwrap(), t.pow(2).scale(&rat(3)));
        assert!(euler.apply(&MultiPoly::one(1)).unwrap().is_zero());
    }

    #[test]
    fn leibniz_examples() {
        let t = MultiPoly::var(1, 0);
        let ddt = DerivationSpec::partial(1, 0);
        assert!(leibniz_power_check(&ddt, &t, &t.pow(2), 2).unwrap());
        assert_eq!(ddt.apply_pow(&t.pow(3), 2).unwrap(), t.scale(&rat(6)));
        assert!(leibniz_power_check(&ddt, &t.pow(4), &(&t + &MultiPoly::one(1)), 0).unwrap());
    }

    #[test]
    fn rendering_is_grlex_descending() {
        let p = &(&y().scale(&rat(2)) - &x().pow(2).scale(&rat(3))) + &c2(0);
        assert_eq!(p.render(&names()), "-3*x^2 + 2*y");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
        let q = &x().scale(&ratio(1, 2)) - &c2(1);
        assert_eq!(q.render(&names()), "1/2*x - 1");
    }

    #[test]
    fn univariate_division_and_gcd() {
        let t = MultiPoly::var(1, 0);
        let one = MultiPoly::one(1);
        let a = &(&t - &one) * &(&t + &one);
        let b = &(&t - &one) * &t;
        assert_eq!(a.uni_gcd(&b).unwrap(), &t - &one);
        let (q, r) = a.uni_div_rem(&(&t + &one)).unwrap();
        assert_eq!(q, &t - &one);
        assert!(r.is_zero());
    }

    #[test]
    fn substitution_composes() {
        let t = MultiPoly::var(1, 0);
        let img = cusp().substitute(&[t.pow(2), t.pow(3)]).unwrap();
        assert!(img.is_zero());
    }

    #[test]
    fn binomials_and_falling() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(2, 3), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(falling_signed(-1, 2), BigInt::from(2));
    }
}

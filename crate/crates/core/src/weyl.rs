//! The Weyl algebra `A_n = Q<x_1..x_n, d_1..d_n>` with `[d_i, x_j] = δ_ij`.
//!
//! Elements are stored in `x`-before-`d` normal order. Products use the
//! closed form `d^b x^a = Σ_k C(b,k) a(a-1)…(a-k+1) x^(a-k) d^(b-k)` in each
//! variable; the independent adjacent-swap rewriter lives in the test kit.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::commalg::{PolyIdeal, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::poly::{binomial, default_names, falling, rat, Monomial, MultiPoly, Rat};
use crate::render::render_sum;

/// `x^α d^β`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct WeylMonomial {
    pub x: Monomial,
    pub d: Monomial,
}

impl WeylMonomial {
    pub fn new(x: Monomial, d: Monomial) -> Self {
        WeylMonomial { x, d }
    }

    pub fn degree(&self) -> u32 {
        self.x.total_degree() + self.d.total_degree()
    }

    /// Degree-compatible total order on `x^α d^β`, read as a commutative
    /// monomial in `x_1..x_n, d_1..d_n`. Leading terms multiply under it.
    pub fn grade_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.x.lex_cmp(&other.x))
            .then_with(|| self.d.lex_cmp(&other.d))
    }

    fn quotient_of(&self, other: &Self) -> Option<WeylMonomial> {
        Some(WeylMonomial {
            x: self.x.quotient_of(&other.x)?,
            d: self.d.quotient_of(&other.d)?,
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<WeylMonomial, Rat>,
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        WeylElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Rat::one())
    }

    pub fn scalar(n: usize, c: Rat) -> Self {
        Self::monomial(n, WeylMonomial::default(), c)
    }

    pub fn monomial(n: usize, m: WeylMonomial, c: Rat) -> Self {
        let mut e = Self::zero(n);
        e.add_term(m, c);
        e
    }

    /// `x_i` (0-based index).
    pub fn x(n: usize, i: usize) -> Self {
        assert!(i < n);
        Self::monomial(
            n,
            WeylMonomial::new(Monomial::var(i), Monomial::one()),
            Rat::one(),
        )
    }

    /// `d_i` (0-based index).
    pub fn d(n: usize, i: usize) -> Self {
        assert!(i < n);
        Self::monomial(
            n,
            WeylMonomial::new(Monomial::one(), Monomial::var(i)),
            Rat::one(),
        )
    }

    /// `x^a d^b` in rank one.
    pub fn xd(a: u32, b: u32) -> Self {
        Self::monomial(
            1,
            WeylMonomial::new(Monomial::var_pow(0, a), Monomial::var_pow(0, b)),
            Rat::one(),
        )
    }

    /// The Euler operator `h = x d` of rank one.
    pub fn h() -> Self {
        Self::xd(1, 1)
    }

    /// Multiplication by a polynomial, as an operator.
    pub fn from_poly(p: &MultiPoly) -> Self {
        let mut e = Self::zero(p.nvars());
        for (m, c) in p.terms() {
            e.add_term(WeylMonomial::new(m.clone(), Monomial::one()), c.clone());
        }
        e
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (WeylMonomial, Rat)>) -> Self {
        let mut e = Self::zero(n);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<WeylMonomial, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|m| m.x.is_one() && m.d.is_one())
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&WeylMonomial::default())
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: WeylMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::structural(format!(
                "Weyl rank mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        WeylElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let coeff = c1 * c2;
                for (m, c) in monomial_product(self.n, m1, m2) {
                    out.add_term(m, &coeff * &c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same rank");
        }
        acc
    }

    /// `max(|α| + |β|)`, or `None` for zero.
    pub fn standard_order(&self) -> Option<u32> {
        self.terms.keys().map(WeylMonomial::degree).max()
    }

    /// `max |β|`: the order as a differential operator.
    pub fn diff_order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.d.total_degree()).max()
    }

    pub fn leading(&self) -> Option<(&WeylMonomial, &Rat)> {
        self.terms.iter().max_by(|a, b| a.0.grade_cmp(b.0))
    }

    /// The operator applied to a polynomial: `x_i` multiplies and `d_i`
    /// differentiates.
    pub fn act(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.n {
            return Err(Error::structural(format!(
                "operator of rank {} applied to a polynomial in {} variables",
                self.n,
                p.nvars()
            )));
        }
        let mut out = MultiPoly::zero(self.n);
        for (wm, c) in &self.terms {
            for (pm, pc) in p.terms() {
                let mut coeff = c * pc;
                let mut exps = pm.exponents(self.n);
                for (i, b) in wm.d.iter() {
                    let f = falling(exps[i] as u64, b as u64);
                    if f.is_zero() {
                        coeff = Rat::zero();
                        break;
                    }
                    coeff *= Rat::from_integer(f);
                    exps[i] -= b;
                }
                if coeff.is_zero() {
                    continue;
                }
                out.add_term(wm.x.mul(&Monomial::from_exponents(&exps)), coeff);
            }
        }
        Ok(out)
    }

    /// Terms grouped by the `d`-monomial: `self = Σ_β p_β(x) d^β`.
    pub fn left_coefficients(&self) -> BTreeMap<Monomial, MultiPoly> {
        let mut out: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.d.clone())
                .or_insert_with(|| MultiPoly::zero(self.n))
                .add_term(m.x.clone(), c.clone());
        }
        out
    }

    /// Coefficients on the right: `self = Σ_β d^β r_β(x)`.
    pub fn right_coefficients(&self) -> BTreeMap<Monomial, MultiPoly> {
        let mut out: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        let mut rest = self.clone();
        while let Some((m, c)) = rest
            .terms
            .iter()
            .max_by(|a, b| {
                a.0.d
                    .total_degree()
                    .cmp(&b.0.d.total_degree())
                    .then_with(|| a.0.grade_cmp(b.0))
            })
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            out.entry(m.d.clone())
                .or_insert_with(|| MultiPoly::zero(self.n))
                .add_term(m.x.clone(), c.clone());
            let dpart = Self::monomial(self.n, WeylMonomial::new(Monomial::one(), m.d), Rat::one());
            let xpart = Self::monomial(self.n, WeylMonomial::new(m.x, Monomial::one()), c);
            rest = rest
                .try_sub(&dpart.try_mul(&xpart).expect("same rank"))
                .expect("same rank");
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Rebuilds `Σ_β d^β r_β(x)` in normal order.
    pub fn from_right_coefficients(n: usize, coeffs: &BTreeMap<Monomial, MultiPoly>) -> Self {
        let mut out = Self::zero(n);
        for (d, p) in coeffs {
            let dpart =
                Self::monomial(n, WeylMonomial::new(Monomial::one(), d.clone()), Rat::one());
            out = out
                .try_add(&dpart.try_mul(&Self::from_poly(p)).expect("same rank"))
                .expect("same rank");
        }
        out
    }

    pub fn render_with(&self, xnames: &[String], dnames: &[String]) -> String {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grade_cmp(a.0));
        render_sum(v.into_iter().map(|(m, c)| {
            let parts: Vec<String> = [m.x.render(xnames), m.d.render(dnames)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            (c.clone(), parts.join("*"))
        }))
    }

    pub fn render(&self) -> String {
        self.render_with(&default_names(self.n), &default_d_names(self.n))
    }
}

pub fn default_d_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("d{i}")).collect()
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `(x^a d^b)(x^c d^e)` expanded into normal order.
fn monomial_product(
    n: usize,
    left: &WeylMonomial,
    right: &WeylMonomial,
) -> Vec<(WeylMonomial, Rat)> {
    let mut acc: Vec<(Vec<u32>, Vec<u32>, Rat)> = vec![(
        left.x.mul(&right.x).exponents(n),
        left.d.mul(&right.d).exponents(n),
        Rat::one(),
    )];
    for (i, b) in left.d.iter() {
        let a = right.x.exponent(i);
        if a == 0 {
            continue;
        }
        let mut next = Vec::new();
        for (xs, ds, c) in &acc {
            for k in 0..=b.min(a) {
                let f =
                    Rat::from_integer(binomial(b as u64, k as u64) * falling(a as u64, k as u64));
                let mut xs2 = xs.clone();
                let mut ds2 = ds.clone();
                xs2[i] -= k;
                ds2[i] -= k;
                next.push((xs2, ds2, c * f));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(xs, ds, c)| {
            (
                WeylMonomial::new(Monomial::from_exponents(&xs), Monomial::from_exponents(&ds)),
                c,
            )
        })
        .collect()
}

pub fn weyl_mul(u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
    u.try_mul(v)
}

/// `uv - vu`.
pub fn weyl_comm(u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
    u.try_mul(v)?.try_sub(&v.try_mul(u)?)
}

/// `ad_a^k(e)`.
pub fn ad_power(a: &WeylElement, k: usize, e: &WeylElement) -> Result<WeylElement> {
    a.check(e)?;
    let mut cur = e.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        cur = weyl_comm(a, &cur)?;
    }
    Ok(cur)
}

/// Least `m ≤ bound` with `ad_s^m(e) = 0`, or `None`.
pub fn ad_nilpotency(s: &WeylElement, e: &WeylElement, bound: usize) -> Result<Option<usize>> {
    let mut cur = e.clone();
    for m in 0..=bound {
        if cur.is_zero() {
            return Ok(Some(m));
        }
        cur = weyl_comm(s, &cur)?;
    }
    Ok(None)
}

pub fn weyl_act(u: &WeylElement, p: &MultiPoly) -> Result<MultiPoly> {
    u.act(p)
}

/// `D(A) = A ⊕ D(A)_[0]`: the constant part `u*1` and the part killing 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSplit {
    pub constant_part: MultiPoly,
    pub annihilator_part: WeylElement,
}

pub fn split_order_zero(u: &WeylElement) -> OperatorSplit {
    let constant_part = u.act(&MultiPoly::one(u.rank())).expect("same rank");
    let annihilator_part = u
        .try_sub(&WeylElement::from_poly(&constant_part))
        .expect("same rank");
    OperatorSplit {
        constant_part,
        annihilator_part,
    }
}

/// `u(x^α)` recovered from the values `ad_x^β(u) * 1` with `|β| ≤ i`:
/// `Σ_{β≤α, |β|≤i} (-1)^|β| C(α,β) (ad_x^β(u) * 1) x^(α-β)`.
///
/// Requires `i` to be at least the order of `u` as a differential operator.
pub fn canonical_action(u: &WeylElement, i: u32, alpha: &Monomial) -> Result<MultiPoly> {
    let n = u.rank();
    if let Some(ord) = u.diff_order() {
        if i < ord {
            return Err(Error::Contract(format!(
                "operator has order {ord} as a differential operator, above the stated bound {i}"
            )));
        }
    }
    if alpha.max_var().is_some_and(|v| v >= n) {
        return Err(Error::structural(
            "monomial uses a variable outside the rank",
        ));
    }
    let a = alpha.exponents(n);
    let one = MultiPoly::one(n);
    let mut out = MultiPoly::zero(n);
    for beta in multi_indices_below(&a) {
        let size: u32 = beta.iter().sum();
        if size > i {
            continue;
        }
        let mut img = u.clone();
        for (v, &b) in beta.iter().enumerate() {
            img = ad_power(&WeylElement::x(n, v), b as usize, &img)?;
        }
        if img.is_zero() {
            continue;
        }
        let value = img.act(&one)?;
        let mut coeff = if size.is_multiple_of(2) {
            Rat::one()
        } else {
            -Rat::one()
        };
        for (&av, &bv) in a.iter().zip(&beta) {
            coeff *= Rat::from_integer(binomial(av as u64, bv as u64));
        }
        let rest: Vec<u32> = a.iter().zip(&beta).map(|(x, y)| x - y).collect();
        out = &out + &value.mul_monomial(&Monomial::from_exponents(&rest), &coeff);
    }
    Ok(out)
}

/// All `β ≤ a` componentwise.
pub fn multi_indices_below(a: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &ai in a {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=ai).map(move |b| {
                    let mut p = prefix.clone();
                    p.push(b);
                    p
                })
            })
            .collect();
    }
    out
}

/// The ideal of `A` generated by `polys` and the values `u * p`.
///
/// Each operator is first checked to map `I` into `I` on `f·m` for relation
/// generators `f` and monomials `m` up to a degree window.
pub fn dstar_ideal_span(
    ops: &[WeylElement],
    polys: &[MultiPoly],
    a: &QuotientAlgebra,
) -> Result<PolyIdeal> {
    let n = a.nvars();
    for u in ops {
        if u.rank() != n {
            return Err(Error::structural("operator rank differs from the algebra"));
        }
        let window = u.standard_order().unwrap_or(0).max(2);
        for f in a.relations().generators() {
            if f.is_zero() {
                continue;
            }
            for m in monomials_up_to(n, window) {
                let fm = f.mul_monomial(&m, &Rat::one());
                if !a.normal_form(&u.act(&fm)?)?.is_zero() {
                    return Err(Error::Stability {
                        op: u.render(),
                        poly: fm.to_string(),
                    });
                }
            }
        }
    }
    let mut gens: Vec<MultiPoly> = Vec::new();
    for p in polys {
        gens.push(a.normal_form(p)?);
        for u in ops {
            gens.push(a.normal_form(&u.act(p)?)?);
        }
    }
    gens.extend(a.relations().generators().iter().cloned());
    PolyIdeal::with_order(n, gens, a.relations().order().clone())
}

/// Monomials in `n` variables of total degree at most `deg`.
pub fn monomials_up_to(n: usize, deg: u32) -> Vec<Monomial> {
    let mut out = vec![Vec::<u32>::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                let used: u32 = p.iter().sum();
                (0..=deg - used).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out.iter().map(|e| Monomial::from_exponents(e)).collect()
}

/// Exact left division: `q` with `s q = n`, if it exists.
pub fn left_divide(s: &WeylElement, n: &WeylElement) -> Result<Option<WeylElement>> {
    divide(s, n, true)
}

/// Exact right division: `q` with `q s = n`, if it exists.
pub fn right_divide(s: &WeylElement, n: &WeylElement) -> Result<Option<WeylElement>> {
    divide(s, n, false)
}

fn divide(s: &WeylElement, n: &WeylElement, left: bool) -> Result<Option<WeylElement>> {
    s.check(n)?;
    let (sm, sc) = match s.leading() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return Err(Error::structural("division by zero operator")),
    };
    let mut q = WeylElement::zero(s.n);
    let mut rest = n.clone();
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let Some(qm) = sm.quotient_of(&m) else {
            return Ok(None);
        };
        let t = WeylElement::monomial(s.n, qm, c / &sc);
        let prod = if left { s.try_mul(&t)? } else { t.try_mul(s)? };
        rest = rest.try_sub(&prod)?;
        q = q.try_add(&t)?;
    }
    Ok(Some(q))
}

/// A random element with at most `terms` terms of standard order `≤ order`
/// and small integer coefficients.
pub fn random_element<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    order: u32,
    terms: usize,
) -> WeylElement {
    let mut out = WeylElement::zero(n);
    for _ in 0..terms {
        let total = rng.gen_range(0..=order);
        let mut exps = vec![0u32; 2 * n];
        for _ in 0..total {
            let v = rng.gen_range(0..2 * n);
            exps[v] += 1;
        }
        let m = WeylMonomial::new(
            Monomial::from_exponents(&exps[..n]),
            Monomial::from_exponents(&exps[n..]),
        );
        let mut c = rng.gen_range(-5i64..=5);
        if c == 0 {
            c = 1;
        }
        out.add_term(m, rat(c));
    }
    out
}

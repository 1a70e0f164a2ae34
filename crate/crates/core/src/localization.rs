//! Left fractions `s^-k e` over a Weyl algebra, for a fixed element `s`
//! whose inner derivation is locally nilpotent.
//!
//! Everything rests on the two expansions
//! `s^m r = Σ_i C(m,i) ad_s^i(r) s^(m-i)` and
//! `r s^m = Σ_i C(m,i) s^(m-i) (-ad_s)^i(r)`.

use num_traits::One;
use rand::{Rng, RngCore};
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::filtration::{element_order, AlgebraHandle, DeltaFamily, WeylHandle};
use crate::poly::{binomial, Rat};
use crate::render::parenthesize;
use crate::weyl::{ad_nilpotency, ad_power, left_divide, random_element, WeylElement};

/// The denominator element `s` and the search bound for `ad_s`-nilpotency.
#[derive(Clone, Debug)]
pub struct LocalizationContext {
    s: WeylElement,
    bound: usize,
    s_name: String,
    names: Option<(Vec<String>, Vec<String>)>,
}

impl LocalizationContext {
    pub fn new(s: WeylElement) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::structural("cannot localize at zero"));
        }
        let s_name = s.render();
        Ok(LocalizationContext {
            s,
            bound: crate::filtration::DEFAULT_BOUND,
            s_name,
            names: None,
        })
    }

    /// Localization of `A_1` at powers of `x`.
    pub fn at_x() -> Self {
        Self::new(WeylElement::x(1, 0)).expect("nonzero")
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }

    /// Renders `s` with a custom name, e.g. `t` for curve operators.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.s_name = name.into();
        self
    }

    /// Variable names for rendering numerators; `s` is re-rendered with them.
    pub fn with_variable_names(mut self, xnames: Vec<String>, dnames: Vec<String>) -> Self {
        self.s_name = self.s.render_with(&xnames, &dnames);
        self.names = Some((xnames, dnames));
        self
    }

    pub fn render_weyl(&self, e: &WeylElement) -> String {
        match &self.names {
            Some((x, d)) => e.render_with(x, d),
            None => e.render(),
        }
    }

    pub fn s(&self) -> &WeylElement {
        &self.s
    }

    pub fn rank(&self) -> usize {
        self.s.rank()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Least `N` with `ad_s^N(r) = 0`.
    pub fn nilpotency(&self, r: &WeylElement) -> Result<usize> {
        ad_nilpotency(&self.s, r, self.bound)?.ok_or_else(|| Error::NotAdNilpotent {
            s: self.s.render(),
            element: r.render(),
            bound: self.bound,
        })
    }

    fn s_pow(&self, k: u32) -> WeylElement {
        self.s.pow(k)
    }
}

/// `s^-k numerator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedElement {
    pub k: u32,
    pub numerator: WeylElement,
}

impl LocalizedElement {
    pub fn new(k: u32, numerator: WeylElement) -> Self {
        LocalizedElement { k, numerator }
    }

    pub fn from_weyl(e: WeylElement) -> Self {
        Self::new(0, e)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn render(&self, ctx: &LocalizationContext) -> String {
        if self.k == 0 || self.numerator.is_zero() {
            return ctx.render_weyl(&self.numerator);
        }
        let base = if ctx
            .s_name
            .contains([' ', '*', '^'])
        {
            format!("({})", ctx.s_name)
        } else {
            ctx.s_name.clone()
        };
        let num = ctx.render_weyl(&self.numerator);
        if num == "1" {
            format!("{base}^-{}", self.k)
        } else {
            let body = if num.contains(' ') || num.starts_with('-') {
                parenthesize(&num)
            } else {
                num
            };
            format!("{base}^-{}*{body}", self.k)
        }
    }
}

/// Strips left factors of `s` from the numerator while `k > 0`.
pub fn canonicalize(u: &LocalizedElement, ctx: &LocalizationContext) -> Result<LocalizedElement> {
    let mut out = u.clone();
    if out.numerator.is_zero() {
        out.k = 0;
        return Ok(out);
    }
    while out.k > 0 {
        match left_divide(&ctx.s, &out.numerator)? {
            Some(q) => {
                out.numerator = q;
                out.k -= 1;
            }
            None => break,
        }
    }
    Ok(out)
}

fn raise(u: &LocalizedElement, k: u32, ctx: &LocalizationContext) -> Result<WeylElement> {
    debug_assert!(k >= u.k);
    ctx.s_pow(k - u.k).try_mul(&u.numerator)
}

pub fn loc_add(
    u: &LocalizedElement,
    v: &LocalizedElement,
    ctx: &LocalizationContext,
) -> Result<LocalizedElement> {
    let k = u.k.max(v.k);
    let n = raise(u, k, ctx)?.try_add(&raise(v, k, ctx)?)?;
    canonicalize(&LocalizedElement::new(k, n), ctx)
}

pub fn loc_scale(u: &LocalizedElement, c: &Rat) -> LocalizedElement {
    LocalizedElement::new(u.k, u.numerator.scale(c))
}

/// True iff the numerators agree at a common denominator exponent.
pub fn loc_eq(
    u: &LocalizedElement,
    v: &LocalizedElement,
    ctx: &LocalizationContext,
) -> Result<bool> {
    let k = u.k.max(v.k);
    Ok(raise(u, k, ctx)? == raise(v, k, ctx)?)
}

/// One term `c · left · s^power` (or `c · s^power · left`) of an expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionTerm {
    pub coefficient: Rat,
    pub element: WeylElement,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub terms: Vec<ExpansionTerm>,
    /// The normal-ordered sum of the terms.
    pub value: WeylElement,
    /// Whether `s` sits to the right of each term (`push_right`) or to the
    /// left (`push_left`).
    pub s_on_right: bool,
}

impl Expansion {
    /// Renders the unexpanded sum, e.g. `d1*x1^2 - 2*x1`.
    pub fn render(&self, s_name: &str) -> String {
        let mut out = String::new();
        for t in &self.terms {
            let e = t.element.scale(&t.coefficient);
            if e.is_zero() {
                continue;
            }
            let mut body = e.render();
            let negative = body.starts_with('-') && !body[1..].contains(' ');
            if negative {
                body.remove(0);
            }
            let sp = match t.power {
                0 => String::new(),
                1 => s_name.to_string(),
                p => format!("{s_name}^{p}"),
            };
            let piece = match (body.as_str(), sp.is_empty()) {
                (_, true) => parenthesize(&body),
                ("1", false) => sp,
                (_, false) if self.s_on_right => format!("{}*{sp}", parenthesize(&body)),
                (_, false) => format!("{sp}*{}", parenthesize(&body)),
            };
            if out.is_empty() {
                out = if negative { format!("-{piece}") } else { piece };
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&piece);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

/// `s^m r = Σ_i C(m,i) ad_s^i(r) s^(m-i)`, checked against the direct product.
pub fn push_right(m: u32, r: &WeylElement, ctx: &LocalizationContext) -> Result<Expansion> {
    let nil = ctx.nilpotency(r)?;
    let mut terms = Vec::new();
    let mut value = WeylElement::zero(ctx.rank());
    let mut ad = r.clone();
    for i in 0..=m.min(nil.saturating_sub(1) as u32) {
        if i > 0 {
            ad = ad_power(&ctx.s, 1, &ad)?;
        }
        let c = Rat::from_integer(binomial(m as u64, i as u64));
        value = value.try_add(&ad.try_mul(&ctx.s_pow(m - i))?.scale(&c))?;
        terms.push(ExpansionTerm {
            coefficient: c,
            element: ad.clone(),
            power: m - i,
        });
    }
    let direct = ctx.s_pow(m).try_mul(r)?;
    if value != direct {
        return Err(Error::VerificationWindow(format!(
            "expansion of s^{m} r disagrees with the direct product for r = {}",
            r.render()
        )));
    }
    Ok(Expansion {
        terms,
        value,
        s_on_right: true,
    })
}

/// `r s^m = Σ_i C(m,i) s^(m-i) (-ad_s)^i(r)`, checked against the direct
/// product.
pub fn push_left(m: u32, r: &WeylElement, ctx: &LocalizationContext) -> Result<Expansion> {
    let nil = ctx.nilpotency(r)?;
    let minus_s = ctx.s.neg();
    let mut terms = Vec::new();
    let mut value = WeylElement::zero(ctx.rank());
    let mut ad = r.clone();
    for i in 0..=m.min(nil.saturating_sub(1) as u32) {
        if i > 0 {
            ad = ad_power(&minus_s, 1, &ad)?;
        }
        let c = Rat::from_integer(binomial(m as u64, i as u64));
        value = value.try_add(&ctx.s_pow(m - i).try_mul(&ad)?.scale(&c))?;
        terms.push(ExpansionTerm {
            coefficient: c,
            element: ad.clone(),
            power: m - i,
        });
    }
    let direct = r.try_mul(&ctx.s_pow(m))?;
    if value != direct {
        return Err(Error::VerificationWindow(format!(
            "expansion of r s^{m} disagrees with the direct product for r = {}",
            r.render()
        )));
    }
    Ok(Expansion {
        terms,
        value,
        s_on_right: false,
    })
}

/// `u s^-b = s^-n h` with `n = N(u) + b - 1` and
/// `h = Σ_i C(n,i) ad_s^i(u) s^(n-i-b)`.
fn move_past_inverse(
    u: &WeylElement,
    b: u32,
    ctx: &LocalizationContext,
) -> Result<(u32, WeylElement)> {
    if b == 0 || u.is_zero() {
        return Ok((0, u.clone()));
    }
    let nil = ctx.nilpotency(u)? as u32;
    let n = (nil + b).saturating_sub(1).max(b);
    let mut h = WeylElement::zero(ctx.rank());
    let mut ad = u.clone();
    for i in 0..nil.min(n - b + 1) {
        if i > 0 {
            ad = ad_power(&ctx.s, 1, &ad)?;
        }
        let c = Rat::from_integer(binomial(n as u64, i as u64));
        h = h.try_add(&ad.try_mul(&ctx.s_pow(n - i - b))?.scale(&c))?;
    }
    Ok((n, h))
}

pub fn loc_mul(
    u: &LocalizedElement,
    v: &LocalizedElement,
    ctx: &LocalizationContext,
) -> Result<LocalizedElement> {
    let (n, h) = move_past_inverse(&u.numerator, v.k, ctx)?;
    let num = h.try_mul(&v.numerator)?;
    canonicalize(&LocalizedElement::new(u.k + n, num), ctx)
}

/// `s^-k r = h s^-n` with `n = N(r) + k - 1` and
/// `h = Σ_{i=k}^{n} C(n,i) s^(i-k) (-ad_s)^(n-i)(r)`.
pub fn to_right_fraction(
    u: &LocalizedElement,
    ctx: &LocalizationContext,
) -> Result<(WeylElement, u32)> {
    if u.k == 0 || u.numerator.is_zero() {
        return Ok((u.numerator.clone(), 0));
    }
    let k = u.k;
    let nil = ctx.nilpotency(&u.numerator)? as u32;
    let n = (nil + k).saturating_sub(1).max(k);
    let minus_s = ctx.s.neg();
    let mut h = WeylElement::zero(ctx.rank());
    for i in k..=n {
        let ad = ad_power(&minus_s, (n - i) as usize, &u.numerator)?;
        if ad.is_zero() {
            continue;
        }
        let c = Rat::from_integer(binomial(n as u64, i as u64));
        h = h.try_add(&ctx.s_pow(i - k).try_mul(&ad)?.scale(&c))?;
    }
    Ok((h, n))
}

/// `Σ c · left · g_index · right`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealCombination {
    pub terms: Vec<(Rat, WeylElement, usize, WeylElement)>,
}

impl IdealCombination {
    pub fn evaluate(&self, gens: &[WeylElement]) -> Result<WeylElement> {
        let n = gens.first().map_or(1, WeylElement::rank);
        let mut out = WeylElement::zero(n);
        for (c, l, j, r) in &self.terms {
            let g = gens
                .get(*j)
                .ok_or_else(|| Error::structural("certificate names a missing generator"))?;
            out = out.try_add(&l.try_mul(g)?.try_mul(r)?.scale(c))?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ExtensionReport {
    pub checked: usize,
    pub witnessed: usize,
    pub failures: Vec<String>,
    /// Rendered `(g, m, h, n)` with `s^-m g = h s^-n`, for the first cases.
    pub examples: Vec<(String, u32, String, u32)>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked == self.witnessed
    }
}

/// Certificate that `s^-m g` lies in `𝔞 S^-1`: `h` with `g s^n = s^m h`,
/// written as an explicit combination of the generators.
pub fn extension_certificate(
    g: &IdealCombination,
    gens: &[WeylElement],
    m: u32,
    ctx: &LocalizationContext,
) -> Result<(IdealCombination, u32)> {
    let value = g.evaluate(gens)?;
    let nil = ctx.nilpotency(&value)? as u32;
    let n = (nil + m).saturating_sub(1).max(m);
    let mut terms = Vec::new();
    // (-ad_s)^j(w) = Σ_t C(j,t) (-1)^t s^t w s^(j-t)
    for i in m..=n {
        let j = n - i;
        let ci = Rat::from_integer(binomial(n as u64, i as u64));
        for t in 0..=j {
            let mut c = &ci * Rat::from_integer(binomial(j as u64, t as u64));
            if t % 2 == 1 {
                c = -c;
            }
            let left_s = ctx.s_pow(i - m + t);
            let right_s = ctx.s_pow(j - t);
            for (gc, l, idx, r) in &g.terms {
                terms.push((&c * gc, left_s.try_mul(l)?, *idx, r.try_mul(&right_s)?));
            }
        }
    }
    Ok((IdealCombination { terms }, n))
}

/// For each sampled ideal element `g = Σ u gen v` and each `m ≤ max_m`,
/// exhibits `s^-m g = h s^-n` with `h` an explicit ideal combination, and
/// re-verifies `g s^n = s^m h`.
pub fn ideal_extension_check(
    gens: &[WeylElement],
    ctx: &LocalizationContext,
    size_bound: u32,
    samples: usize,
    max_m: u32,
    rng: &mut dyn RngCore,
) -> Result<ExtensionReport> {
    let mut report = ExtensionReport::default();
    if gens.is_empty() {
        return Ok(report);
    }
    let n = ctx.rank();
    for _ in 0..samples {
        let idx = rng.gen_range(0..gens.len());
        let u = random_element(rng, n, size_bound, 2);
        let v = random_element(rng, n, size_bound, 2);
        let g = IdealCombination {
            terms: vec![(Rat::one(), u, idx, v)],
        };
        let value = g.evaluate(gens)?;
        for m in 0..=max_m {
            report.checked += 1;
            let (h, npow) = extension_certificate(&g, gens, m, ctx)?;
            let hv = h.evaluate(gens)?;
            let lhs = value.try_mul(&ctx.s_pow(npow))?;
            let rhs = ctx.s_pow(m).try_mul(&hv)?;
            if lhs == rhs {
                report.witnessed += 1;
                if report.examples.len() < 3 {
                    report.examples.push((value.render(), m, hv.render(), npow));
                }
            } else {
                report.failures.push(format!(
                    "s^-{m} * ({}) has no verified right fraction",
                    value.render()
                ));
            }
        }
    }
    Ok(report)
}

/// The localized algebra as an order-engine handle.
#[derive(Clone, Debug)]
pub struct LocalizedHandle {
    pub ctx: LocalizationContext,
    pub max_k: u32,
    pub sample_terms: usize,
}

impl LocalizedHandle {
    pub fn new(ctx: LocalizationContext) -> Self {
        LocalizedHandle {
            ctx,
            max_k: 2,
            sample_terms: 3,
        }
    }
}

impl AlgebraHandle for LocalizedHandle {
    type Elem = LocalizedElement;

    fn zero(&self) -> LocalizedElement {
        LocalizedElement::from_weyl(WeylElement::zero(self.ctx.rank()))
    }
    fn one(&self) -> LocalizedElement {
        LocalizedElement::from_weyl(WeylElement::one(self.ctx.rank()))
    }
    fn is_zero(&self, e: &LocalizedElement) -> bool {
        e.is_zero()
    }
    fn add(&self, a: &LocalizedElement, b: &LocalizedElement) -> Result<LocalizedElement> {
        loc_add(a, b, &self.ctx)
    }
    fn scale(&self, a: &LocalizedElement, c: &Rat) -> LocalizedElement {
        loc_scale(a, c)
    }
    fn mul(&self, a: &LocalizedElement, b: &LocalizedElement) -> Result<LocalizedElement> {
        loc_mul(a, b, &self.ctx)
    }
    fn sample(&self, rng: &mut dyn RngCore, size: u32) -> LocalizedElement {
        let num = random_element(rng, self.ctx.rank(), size, self.sample_terms);
        let k = rng.gen_range(0..=self.max_k);
        canonicalize(&LocalizedElement::new(k, num), &self.ctx).expect("division terminates")
    }
    fn render(&self, e: &LocalizedElement) -> String {
        e.render(&self.ctx)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OrderPreservationReport {
    pub checked: usize,
    pub inconclusive: usize,
    pub violations: Vec<String>,
}

impl OrderPreservationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares the order of `e` with the order of `s^-m e` for sampled `e` and
/// every `m ≤ max_m`. The generators must commute with `s`.
pub fn order_preservation_check(
    ctx: &LocalizationContext,
    generators: &[WeylElement],
    samples: usize,
    size: u32,
    max_m: u32,
    rng: &mut dyn RngCore,
    budget: &Budget,
) -> Result<OrderPreservationReport> {
    let weyl = WeylHandle::new(ctx.rank());
    let loc = LocalizedHandle::new(ctx.clone());
    let plain = DeltaFamily::new(&weyl, generators.to_vec())?;
    let lifted = DeltaFamily::new(
        &loc,
        generators
            .iter()
            .cloned()
            .map(LocalizedElement::from_weyl)
            .collect(),
    )?;
    let bound = ctx.bound;
    let mut report = OrderPreservationReport::default();
    for _ in 0..samples {
        let e = random_element(rng, ctx.rank(), size, 3);
        let k = element_order(&e, &plain, bound, budget)?.order();
        for m in 0..=max_m {
            let le = canonicalize(&LocalizedElement::new(m, e.clone()), ctx)?;
            let lk = element_order(&le, &lifted, bound, budget)?.order();
            match (k, lk) {
                (Some(a), Some(b)) => {
                    report.checked += 1;
                    if a != b {
                        report.violations.push(format!(
                            "ord({}) = {a} but ord({}) = {b}",
                            e.render(),
                            le.render(ctx)
                        ));
                    }
                }
                _ => report.inconclusive += 1,
            }
        }
    }
    Ok(report)
}

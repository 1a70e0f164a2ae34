//! Differential operators on monomial curves `K[t^a, t^b, ...] ⊆ K[t]`.
//!
//! Operators are Laurent operators `Σ c t^a d^j` stored as left fractions
//! over the localization at `t`; `t^a d^j` has degree `a - j` and sends
//! `t^s` to `s(s-1)...(s-j+1) t^(s+a-j)`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, IncrementalEliminator, SparseVec};
use crate::localization::{loc_add, loc_mul, LocalizationContext, LocalizedElement};
use crate::poly::{falling_signed, Monomial, MultiPoly, Rat};
use crate::weyl::{WeylElement, WeylMonomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCurve {
    generators: Vec<u32>,
}

impl MonomialCurve {
    pub fn new(mut generators: Vec<u32>) -> Result<Self> {
        generators.sort_unstable();
        generators.dedup();
        if generators.is_empty() || generators[0] == 0 {
            return Err(Error::structural("semigroup generators must be positive"));
        }
        if generators[0] == 1 && generators.len() > 1 {
            return Err(Error::structural(
                "generator 1 only occurs for the line itself",
            ));
        }
        let g = generators.iter().fold(0u32, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::structural(format!(
                "semigroup generators have gcd {g}, not 1"
            )));
        }
        Ok(MonomialCurve { generators })
    }

    /// `K[t^2, t^3] ≅ K[x, y]/(y^2 - x^3)`.
    pub fn cusp() -> Self {
        Self::new(vec![2, 3]).expect("valid")
    }

    pub fn line() -> Self {
        Self::new(vec![1]).expect("valid")
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn max_generator(&self) -> u32 {
        *self.generators.last().expect("nonempty")
    }

    /// Membership flags for `0..=n`.
    fn table(&self, n: u32) -> Vec<bool> {
        let mut t = vec![false; n as usize + 1];
        t[0] = true;
        for s in 1..=n as usize {
            t[s] = self
                .generators
                .iter()
                .any(|&g| g as usize <= s && t[s - g as usize]);
        }
        t
    }

    pub fn contains(&self, s: i64) -> bool {
        s >= 0 && self.table(s as u32)[s as usize]
    }

    /// Semigroup elements up to `n`.
    pub fn elements_up_to(&self, n: u32) -> Vec<u32> {
        self.table(n)
            .into_iter()
            .enumerate()
            .filter(|(_, b)| *b)
            .map(|(s, _)| s as u32)
            .collect()
    }

    /// Least `c` with every integer `≥ c` in the semigroup.
    pub fn conductor(&self) -> u32 {
        let g0 = self.generators[0];
        let t = self.table(g0 * self.max_generator() + g0);
        let mut c = t.len();
        while c > 0 && t[c - 1] {
            c -= 1;
        }
        c as u32
    }

    /// Image of a polynomial in one variable per generator under
    /// `x_i ↦ t^(g_i)`.
    pub fn pullback(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.generators.len() {
            return Err(Error::structural(format!(
                "curve has {} coordinates, polynomial has {} variables",
                self.generators.len(),
                p.nvars()
            )));
        }
        let images: Vec<MultiPoly> = self
            .generators
            .iter()
            .map(|&g| MultiPoly::monomial(1, Monomial::var_pow(0, g), Rat::one()))
            .collect();
        p.substitute(&images)
    }

    /// True iff every exponent of the univariate `p` lies in the semigroup.
    pub fn contains_poly(&self, p: &MultiPoly) -> bool {
        p.nvars() == 1
            && p.terms()
                .keys()
                .all(|m| self.contains(m.exponent(0) as i64))
    }
}

/// Localization at `t`, rendering with `t` and `d`.
pub fn curve_context() -> LocalizationContext {
    LocalizationContext::at_x().with_variable_names(vec!["t".into()], vec!["d".into()])
}

/// `c t^a d^j`.
pub fn laurent_term(a: i64, j: u32, c: Rat) -> LocalizedElement {
    let k = if a < 0 { (-a) as u32 } else { 0 };
    let p = if a < 0 { 0 } else { a as u32 };
    let m = WeylMonomial::new(Monomial::var_pow(0, p), Monomial::var_pow(0, j));
    LocalizedElement::new(k, WeylElement::monomial(1, m, c))
}

pub fn from_poly(p: &MultiPoly) -> LocalizedElement {
    LocalizedElement::from_weyl(WeylElement::from_poly(p))
}

/// Coefficients keyed by `(a, j)` for the terms `t^a d^j`.
pub fn laurent_coefficients(u: &LocalizedElement) -> SparseVec<(i64, u32)> {
    let mut out = SparseVec::new();
    for (m, c) in u.numerator.terms() {
        let a = m.x.exponent(0) as i64 - u.k as i64;
        out.insert((a, m.d.exponent(0)), c.clone());
    }
    out
}

/// The operator applied to `t^s`, as exponent → coefficient.
pub fn act_on_power(u: &LocalizedElement, s: i64) -> BTreeMap<i64, Rat> {
    let mut out: BTreeMap<i64, Rat> = BTreeMap::new();
    for ((a, j), c) in laurent_coefficients(u) {
        let f = falling_signed(s, j as u64);
        if f.is_zero() {
            continue;
        }
        let e = out.entry(s + a - j as i64).or_insert_with(Rat::zero);
        *e += c * Rat::from_integer(f);
        if e.is_zero() {
            out.remove(&(s + a - j as i64));
        }
    }
    out
}

/// Checks `u(t^s) ∈ 𝒜` for every semigroup element `s ≤ window`.
pub fn preserves(u: &LocalizedElement, curve: &MonomialCurve, window: u32) -> bool {
    curve
        .elements_up_to(window)
        .into_iter()
        .all(|s| act_on_power(u, s as i64).keys().all(|&e| curve.contains(e)))
}

/// A basis of the truncated space of operators of order `≤ order` whose
/// Laurent coefficients have degree `≤ degree` and which preserve the curve.
#[derive(Clone, Debug)]
pub struct DiffOpSpace {
    pub curve: MonomialCurve,
    pub order: u32,
    pub degree: i64,
    pub basis: Vec<LocalizedElement>,
    /// Homogeneous degree of each basis element.
    pub degrees: Vec<i64>,
    pub windows: (u32, u32),
}

impl DiffOpSpace {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn render(&self) -> Vec<String> {
        let ctx = curve_context();
        self.basis.iter().map(|b| b.render(&ctx)).collect()
    }
}

/// Solves for the operators on window `d + i + max-generator` and re-checks
/// every solution on a strictly larger window.
pub fn curve_diffops_basis(curve: &MonomialCurve, order: u32, degree: u32) -> Result<DiffOpSpace> {
    let w1 = degree + order + curve.max_generator();
    let w2 = 2 * w1 + curve.max_generator();
    let sgrp = curve.elements_up_to(w1);
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    let d = degree as i64;
    // Homogeneous degree e; below the point where more than `order`
    // semigroup elements are forced to be roots, only zero survives.
    let mut e = d;
    loop {
        let forced = sgrp.iter().filter(|&&s| (s as i64) + e < 0).count();
        if forced > order as usize || e < -(w1 as i64) {
            break;
        }
        let js: Vec<u32> = (0..=order).filter(|&j| e + j as i64 <= d).collect();
        if !js.is_empty() {
            let rows: Vec<Vec<Rat>> = sgrp
                .iter()
                .filter(|&&s| !curve.contains(s as i64 + e))
                .map(|&s| {
                    js.iter()
                        .map(|&j| Rat::from_integer(falling_signed(s as i64, j as u64)))
                        .collect()
                })
                .collect();
            for v in nullspace(&rows, js.len()) {
                let mut op = LocalizedElement::from_weyl(WeylElement::zero(1));
                for (c, &j) in v.iter().zip(&js) {
                    if !c.is_zero() {
                        op = loc_add(
                            &op,
                            &laurent_term(e + j as i64, j, c.clone()),
                            &curve_context(),
                        )?;
                    }
                }
                if !preserves(&op, curve, w2) {
                    return Err(Error::VerificationWindow(format!(
                        "{} preserves the curve up to t^{w1} but not up to t^{w2}",
                        op.render(&curve_context())
                    )));
                }
                basis.push(op);
                degrees.push(e);
            }
        }
        e -= 1;
    }
    Ok(DiffOpSpace {
        curve: curve.clone(),
        order,
        degree: d,
        basis,
        degrees,
        windows: (w1, w2),
    })
}

/// `Σ c · u · g_index · v`, all curve operators.
#[derive(Clone, Debug)]
pub struct WitnessTerm {
    pub coefficient: Rat,
    pub left: LocalizedElement,
    pub generator: usize,
    pub right: LocalizedElement,
}

#[derive(Clone, Debug)]
pub struct SimplicityWitness {
    pub terms: Vec<WitnessTerm>,
    pub order_bound: u32,
    pub degree_bound: u32,
    pub products_examined: usize,
}

impl SimplicityWitness {
    pub fn evaluate(&self, gens: &[MultiPoly]) -> Result<LocalizedElement> {
        let ctx = curve_context();
        let mut out = LocalizedElement::from_weyl(WeylElement::zero(1));
        for t in &self.terms {
            let g = gens
                .get(t.generator)
                .ok_or_else(|| Error::structural("certificate names a missing generator"))?;
            let p = loc_mul(&loc_mul(&t.left, &from_poly(g), &ctx)?, &t.right, &ctx)?;
            out = loc_add(
                &out,
                &crate::localization::loc_scale(&p, &t.coefficient),
                &ctx,
            )?;
        }
        Ok(out)
    }

    /// Re-multiplies the combination and applies it to `t^s` for semigroup
    /// elements up to `window`.
    pub fn verify(&self, gens: &[MultiPoly], curve: &MonomialCurve, window: u32) -> Result<bool> {
        let v = self.evaluate(gens)?;
        if v != LocalizedElement::from_weyl(WeylElement::one(1)) {
            return Ok(false);
        }
        for s in curve.elements_up_to(window) {
            let mut expect = BTreeMap::new();
            expect.insert(s as i64, Rat::one());
            let mut got = BTreeMap::new();
            for t in &self.terms {
                let g = from_poly(&gens[t.generator]);
                let mut cur = act_on_power(&t.right, s as i64);
                cur = act_on_map(&g, &cur);
                cur = act_on_map(&t.left, &cur);
                for (e, c) in cur {
                    let slot = got.entry(e).or_insert_with(Rat::zero);
                    *slot += c * &t.coefficient;
                }
            }
            got.retain(|_, c: &mut Rat| !c.is_zero());
            if got != expect {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Fully parenthesized `(c)*(u)*(g)*(v)` summands.
    pub fn render(&self, gens: &[MultiPoly]) -> String {
        let ctx = curve_context();
        let names = vec!["t".to_string()];
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                format!(
                    "({})*({})*({})*({})",
                    t.coefficient,
                    t.left.render(&ctx),
                    gens[t.generator].render(&names),
                    t.right.render(&ctx)
                )
            })
            .collect();
        parts.join(" + ")
    }
}

fn act_on_map(u: &LocalizedElement, f: &BTreeMap<i64, Rat>) -> BTreeMap<i64, Rat> {
    let mut out: BTreeMap<i64, Rat> = BTreeMap::new();
    for (s, c) in f {
        for (e, v) in act_on_power(u, *s) {
            *out.entry(e).or_insert_with(Rat::zero) += v * c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SearchStats {
    pub order_bound: u32,
    pub degree_bound: u32,
    pub products_examined: usize,
    pub span_rank: usize,
}

#[derive(Clone, Debug)]
pub enum WitnessOutcome {
    Found(SimplicityWitness),
    NotFound(SearchStats),
}

fn homogeneous_degree(p: &MultiPoly) -> Option<i64> {
    let mut it = p.terms().keys().map(|m| m.exponent(0) as i64);
    let first = it.next()?;
    it.all(|e| e == first).then_some(first)
}

/// Searches the span of `u g v` (`u, v` in the truncated operator space,
/// `g` among `gens`) for `1`. Only degree-compatible triples are formed
/// when every generator is homogeneous.
pub fn simplicity_witness(
    curve: &MonomialCurve,
    gens: &[MultiPoly],
    order_bound: u32,
    degree_bound: u32,
    budget: &Budget,
) -> Result<WitnessOutcome> {
    if gens.is_empty() || gens.iter().any(MultiPoly::is_zero) {
        return Err(Error::Contract("ideal generators must be nonzero".into()));
    }
    if let Some(g) = gens.iter().find(|g| !curve.contains_poly(g)) {
        return Err(Error::Contract(format!(
            "{} is not in the curve algebra",
            g.render(&["t".to_string()])
        )));
    }
    let ctx = curve_context();
    let space = curve_diffops_basis(curve, order_bound, degree_bound)?;
    let gdeg: Vec<Option<i64>> = gens.iter().map(homogeneous_degree).collect();
    let graded = gdeg.iter().all(Option::is_some);
    let mut target = SparseVec::new();
    target.insert((0i64, 0u32), Rat::one());
    let mut elim: IncrementalEliminator<(i64, u32)> = IncrementalEliminator::new();
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    let found = |elim: &IncrementalEliminator<(i64, u32)>, triples: &[(usize, usize, usize)], n| {
        elim.express(&target).map(|combo| SimplicityWitness {
            terms: combo
                .into_iter()
                .map(|(tag, c)| {
                    let (ui, gi, vi) = triples[tag];
                    WitnessTerm {
                        coefficient: c,
                        left: space.basis[ui].clone(),
                        generator: gi,
                        right: space.basis[vi].clone(),
                    }
                })
                .collect(),
            order_bound,
            degree_bound,
            products_examined: n,
        })
    };
    for (gi, g) in gens.iter().enumerate() {
        let gl = from_poly(g);
        for (ui, u) in space.basis.iter().enumerate() {
            let ug = loc_mul(u, &gl, &ctx)?;
            let mut grew = false;
            for (vi, v) in space.basis.iter().enumerate() {
                if graded && space.degrees[ui] + gdeg[gi].expect("graded") + space.degrees[vi] != 0
                {
                    continue;
                }
                budget
                    .charge(1, "simplicity witness search")
                    .map_err(|e| match e {
                        Error::BudgetExceeded { limit, .. } => Error::BudgetExceeded {
                            limit,
                            context: format!(
                                "simplicity witness search after {} products (span rank {})",
                                triples.len(),
                                elim.rank()
                            ),
                        },
                        other => other,
                    })?;
                let p = loc_mul(&ug, v, &ctx)?;
                triples.push((ui, gi, vi));
                grew |= elim.push(&laurent_coefficients(&p)).1;
            }
            if grew {
                if let Some(w) = found(&elim, &triples, triples.len()) {
                    return Ok(WitnessOutcome::Found(w));
                }
            }
        }
    }
    Ok(WitnessOutcome::NotFound(SearchStats {
        order_bound,
        degree_bound,
        products_examined: triples.len(),
        span_rank: elim.rank(),
    }))
}

/// Least `p ≤ max_power` for which the generators of the `p`-th power of
/// the ideal admit a witness at the given bounds.
pub fn least_witness_power(
    curve: &MonomialCurve,
    gens: &[MultiPoly],
    max_power: u32,
    order_bound: u32,
    degree_bound: u32,
    budget: &Budget,
) -> Result<Option<(u32, SimplicityWitness)>> {
    let mut power = gens.to_vec();
    for p in 1..=max_power {
        if let WitnessOutcome::Found(w) =
            simplicity_witness(curve, &power, order_bound, degree_bound, budget)?
        {
            return Ok(Some((p, w)));
        }
        let mut next = Vec::new();
        for a in &power {
            for g in gens {
                let q = a.try_mul(g)?;
                if !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        power = next;
    }
    Ok(None)
}

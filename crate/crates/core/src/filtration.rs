//! Orders with respect to a finite commuting family of inner derivations.
//!
//! For `Δ = {ad_g1, …, ad_gk}` with commuting `g`'s, the order of `e` is the
//! least `k` such that every word of length `k + 1` in the `ad_g` kills `e`.
//! Since the maps commute, a word is determined by its exponent vector and
//! the search enumerates multisets level by level.

use std::collections::BTreeMap;
use std::fmt::Debug;

use rand::RngCore;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::poly::Rat;
use crate::weyl::{random_element, weyl_comm, WeylElement};

pub const DEFAULT_BOUND: usize = 32;

/// The ambient algebra seen by the order engine.
pub trait AlgebraHandle: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, e: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, a: &Self::Elem, c: &Rat) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn sample(&self, rng: &mut dyn RngCore, size: u32) -> Self::Elem;
    fn render(&self, e: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.add(a, &self.scale(b, &-Rat::from_integer(1.into())))
    }

    /// `ad_g(e) = ge - eg`.
    fn commutator(&self, g: &Self::Elem, e: &Self::Elem) -> Result<Self::Elem> {
        self.sub(&self.mul(g, e)?, &self.mul(e, g)?)
    }
}

/// The Weyl algebra `A_n` as an order-engine handle.
#[derive(Clone, Copy, Debug)]
pub struct WeylHandle {
    pub n: usize,
    /// Number of terms drawn by [`AlgebraHandle::sample`].
    pub sample_terms: usize,
}

impl WeylHandle {
    pub fn new(n: usize) -> Self {
        WeylHandle { n, sample_terms: 3 }
    }

    /// `{ad_x1, …, ad_xn, ad_d1, …, ad_dn}`.
    pub fn full_generators(&self) -> Vec<WeylElement> {
        (0..self.n)
            .map(|i| WeylElement::x(self.n, i))
            .chain((0..self.n).map(|i| WeylElement::d(self.n, i)))
            .collect()
    }
}

impl AlgebraHandle for WeylHandle {
    type Elem = WeylElement;

    fn zero(&self) -> WeylElement {
        WeylElement::zero(self.n)
    }
    fn one(&self) -> WeylElement {
        WeylElement::one(self.n)
    }
    fn is_zero(&self, e: &WeylElement) -> bool {
        e.is_zero()
    }
    fn add(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
        a.try_add(b)
    }
    fn scale(&self, a: &WeylElement, c: &Rat) -> WeylElement {
        a.scale(c)
    }
    fn mul(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
        a.try_mul(b)
    }
    fn sample(&self, rng: &mut dyn RngCore, size: u32) -> WeylElement {
        random_element(rng, self.n, size, self.sample_terms)
    }
    fn render(&self, e: &WeylElement) -> String {
        e.render()
    }
    fn commutator(&self, g: &WeylElement, e: &WeylElement) -> Result<WeylElement> {
        weyl_comm(g, e)
    }
}

/// `Δ' = {ad_g : g ∈ generators}` over a handle.
pub struct DeltaFamily<'h, H: AlgebraHandle> {
    handle: &'h H,
    generators: Vec<H::Elem>,
}

impl<'h, H: AlgebraHandle> Clone for DeltaFamily<'h, H> {
    fn clone(&self) -> Self {
        DeltaFamily {
            handle: self.handle,
            generators: self.generators.clone(),
        }
    }
}

impl<'h, H: AlgebraHandle> DeltaFamily<'h, H> {
    pub fn new(handle: &'h H, generators: Vec<H::Elem>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::structural("a Δ family needs at least one generator"));
        }
        Ok(DeltaFamily { handle, generators })
    }

    pub fn handle(&self) -> &'h H {
        self.handle
    }

    pub fn generators(&self) -> &[H::Elem] {
        &self.generators
    }

    pub fn apply(&self, j: usize, e: &H::Elem) -> Result<H::Elem> {
        let g = self
            .generators
            .get(j)
            .ok_or_else(|| Error::structural(format!("generator index {j} out of range")))?;
        self.handle.commutator(g, e)
    }

    /// Applies the generator word left to right: `word = [j1, j2]` means
    /// `ad_{g_j2}(ad_{g_j1}(e))`.
    pub fn apply_word(&self, word: &[usize], e: &H::Elem) -> Result<H::Elem> {
        let mut cur = e.clone();
        for &j in word {
            cur = self.apply(j, &cur)?;
        }
        Ok(cur)
    }

    /// Checks `ad_g ad_h (e) = ad_h ad_g (e)` on the given elements.
    pub fn commutes_on(&self, samples: &[H::Elem]) -> Result<bool> {
        for e in samples {
            for a in 0..self.generators.len() {
                for b in a + 1..self.generators.len() {
                    if self.apply_word(&[a, b], e)? != self.apply_word(&[b, a], e)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "kebab-case")]
pub enum OrderStatus {
    /// The zero element, of order `-1`.
    Zero,
    Order(usize),
    ExceedsBound(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderResult<E> {
    pub status: OrderStatus,
    /// For `Order(k)`: a length-`k` generator word with nonzero image.
    pub witness: Vec<usize>,
    pub image: Option<E>,
}

impl<E> OrderResult<E> {
    /// The order as an integer, `-1` for zero, `None` past the bound.
    pub fn order(&self) -> Option<i64> {
        match self.status {
            OrderStatus::Zero => Some(-1),
            OrderStatus::Order(k) => Some(k as i64),
            OrderStatus::ExceedsBound(_) => None,
        }
    }
}

fn word_of(v: &[usize]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .flat_map(|(j, &k)| std::iter::repeat_n(j, k))
        .collect()
}

/// The Δ-order of `e`, searching exponent vectors up to total length
/// `bound + 1`. One budget step is charged per derivation application.
pub fn element_order<H: AlgebraHandle>(
    e: &H::Elem,
    delta: &DeltaFamily<'_, H>,
    bound: usize,
    budget: &Budget,
) -> Result<OrderResult<H::Elem>> {
    let h = delta.handle;
    if h.is_zero(e) {
        return Ok(OrderResult {
            status: OrderStatus::Zero,
            witness: Vec::new(),
            image: None,
        });
    }
    let k = delta.generators.len();
    let mut level: BTreeMap<Vec<usize>, H::Elem> = BTreeMap::new();
    level.insert(vec![0; k], e.clone());
    for depth in 0..=bound {
        let mut next: BTreeMap<Vec<usize>, H::Elem> = BTreeMap::new();
        let mut seen: std::collections::BTreeSet<Vec<usize>> = Default::default();
        for (v, img) in &level {
            for j in 0..k {
                let mut w = v.clone();
                w[j] += 1;
                if !seen.insert(w.clone()) {
                    continue;
                }
                budget.charge(1, "order search")?;
                let out = delta.apply(j, img)?;
                if !h.is_zero(&out) {
                    next.insert(w, out);
                }
            }
        }
        if next.is_empty() {
            let (v, img) = level.into_iter().next().expect("level is nonempty");
            return Ok(OrderResult {
                status: OrderStatus::Order(depth),
                witness: word_of(&v),
                image: Some(img),
            });
        }
        level = next;
    }
    Ok(OrderResult {
        status: OrderStatus::ExceedsBound(bound),
        witness: Vec::new(),
        image: None,
    })
}

/// Order computed over every word (no commutation assumed). Exponential;
/// intended for cross-checks and for non-commuting families.
pub fn exhaustive_order<E, Z>(
    e: &E,
    maps: &[&dyn Fn(&E) -> E],
    is_zero: Z,
    bound: usize,
) -> Option<i64>
where
    E: Clone,
    Z: Fn(&E) -> bool,
{
    if is_zero(e) {
        return Some(-1);
    }
    let mut level = vec![e.clone()];
    for depth in 0..=bound {
        let next: Vec<E> = level
            .iter()
            .flat_map(|x| maps.iter().map(move |f| f(x)))
            .filter(|x| !is_zero(x))
            .collect();
        if next.is_empty() {
            return Some(depth as i64);
        }
        level = next;
    }
    None
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FiltrationReport {
    pub pairs_checked: usize,
    pub derivations_checked: usize,
    pub inconclusive: usize,
    pub violations: Vec<String>,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples pairs and checks `ord(uv) ≤ ord(u) + ord(v)` and
/// `ord(ad_g(u)) ≤ ord(u) - 1`.
pub fn filtration_law_check<H: AlgebraHandle>(
    delta: &DeltaFamily<'_, H>,
    samples: usize,
    size: u32,
    bound: usize,
    rng: &mut dyn RngCore,
    budget: &Budget,
) -> Result<FiltrationReport> {
    let h = delta.handle;
    let mut report = FiltrationReport::default();
    let ord = |e: &H::Elem| element_order(e, delta, bound, budget).map(|r| r.order());
    for _ in 0..samples {
        let u = h.sample(rng, size);
        let v = h.sample(rng, size);
        let uv = h.mul(&u, &v)?;
        match (ord(&u)?, ord(&v)?, ord(&uv)?) {
            (Some(a), Some(b), Some(c)) => {
                report.pairs_checked += 1;
                if c > a + b && !(a < 0 || b < 0) {
                    report.violations.push(format!(
                        "ord(({})*({})) = {c} > {a} + {b}",
                        h.render(&u),
                        h.render(&v)
                    ));
                }
                for j in 0..delta.generators.len() {
                    let du = delta.apply(j, &u)?;
                    report.derivations_checked += 1;
                    match ord(&du)? {
                        Some(o) if o <= (a - 1).max(-1) => {}
                        Some(o) => report.violations.push(format!(
                            "ord(ad_{}({})) = {o} > {a} - 1",
                            h.render(&delta.generators[j]),
                            h.render(&u)
                        )),
                        None => report.inconclusive += 1,
                    }
                }
            }
            _ => report.inconclusive += 1,
        }
    }
    Ok(report)
}

/// A nonzero order-zero image of `e` together with the generator word that
/// produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Descent<E> {
    pub element: E,
    pub word: Vec<usize>,
}

pub fn descend_to_constants<H: AlgebraHandle>(
    e: &H::Elem,
    delta: &DeltaFamily<'_, H>,
    bound: usize,
    budget: &Budget,
) -> Result<Descent<H::Elem>> {
    let h = delta.handle;
    if h.is_zero(e) {
        return Err(Error::Contract("descent needs a nonzero element".into()));
    }
    let r = element_order(e, delta, bound, budget)?;
    match r.status {
        OrderStatus::Order(_) => Ok(Descent {
            element: r.image.expect("order results carry an image"),
            word: r.witness,
        }),
        OrderStatus::ExceedsBound(b) => Err(Error::ExceedsBound {
            element: h.render(e),
            bound: b,
        }),
        OrderStatus::Zero => unreachable!("checked nonzero"),
    }
}

/// True iff every generator commutator of `e` vanishes.
pub fn zero_component_membership<H: AlgebraHandle>(
    e: &H::Elem,
    delta: &DeltaFamily<'_, H>,
) -> Result<bool> {
    for j in 0..delta.generators.len() {
        if !delta.handle.is_zero(&delta.apply(j, e)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

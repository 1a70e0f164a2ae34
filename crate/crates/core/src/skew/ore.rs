//! Iterated Ore extensions `A[x_1..x_n; δ_1..δ_n]` over a commutative
//! quotient algebra `A` with commuting derivations: `x_i a = a x_i + δ_i(a)`.

use std::collections::BTreeMap;

use num_traits::One;

use crate::commalg::{derivation_stable, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::poly::{binomial, DerivationSpec, Monomial, MultiPoly, Rat};
use crate::render::render_sum;

#[derive(Clone, Debug)]
pub struct OrePresentation {
    base: QuotientAlgebra,
    derivations: Vec<DerivationSpec>,
    names: Vec<String>,
}

impl OrePresentation {
    /// Checks that every `δ_i` maps the relation ideal into itself and that
    /// the `δ_i` commute on the base generators.
    pub fn new(
        base: QuotientAlgebra,
        derivations: Vec<DerivationSpec>,
        names: Vec<String>,
    ) -> Result<Self> {
        if names.len() != derivations.len() {
            return Err(Error::Presentation(format!(
                "{} Ore variables named for {} derivations",
                names.len(),
                derivations.len()
            )));
        }
        let m = base.nvars();
        if let Some(d) = derivations.iter().find(|d| d.nvars() != m) {
            return Err(Error::Presentation(format!(
                "derivation on {} variables over a base with {m}",
                d.nvars()
            )));
        }
        if !derivation_stable(base.relations(), &derivations)? {
            return Err(Error::Presentation(
                "a derivation does not preserve the relation ideal".into(),
            ));
        }
        for (i, di) in derivations.iter().enumerate() {
            for (j, dj) in derivations.iter().enumerate().skip(i + 1) {
                for k in 0..m {
                    let xk = MultiPoly::var(m, k);
                    let a = di.apply(&dj.apply(&xk)?)?;
                    let b = dj.apply(&di.apply(&xk)?)?;
                    if !base.equal(&a, &b)? {
                        return Err(Error::Presentation(format!(
                            "derivations {} and {} do not commute",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(OrePresentation {
            base,
            derivations,
            names,
        })
    }

    pub fn base(&self) -> &QuotientAlgebra {
        &self.base
    }

    pub fn derivations(&self) -> &[DerivationSpec] {
        &self.derivations
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.derivations.len()
    }

    /// `δ^γ(b) = δ_1^γ1 … δ_n^γn (b)` reduced in the base.
    fn delta_pow(&self, gamma: &[u32], b: &MultiPoly) -> Result<MultiPoly> {
        let mut cur = b.clone();
        for (d, &g) in self.derivations.iter().zip(gamma) {
            cur = d.apply_pow(&cur, g as usize)?;
        }
        self.base.normal_form(&cur)
    }

    fn check(&self, e: &OreElement) -> Result<()> {
        if e.n != self.rank() || e.base_vars != self.base.nvars() {
            return Err(Error::structural(
                "Ore element does not belong to this presentation",
            ));
        }
        Ok(())
    }
}

/// `Σ_α a_α x^α` with left coefficients in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreElement {
    n: usize,
    base_vars: usize,
    terms: BTreeMap<Vec<u32>, MultiPoly>,
}

impl OreElement {
    pub fn zero(p: &OrePresentation) -> Self {
        OreElement {
            n: p.rank(),
            base_vars: p.base.nvars(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: &OrePresentation) -> Self {
        Self::from_base(p, &MultiPoly::one(p.base.nvars())).expect("unit")
    }

    pub fn from_base(p: &OrePresentation, a: &MultiPoly) -> Result<Self> {
        Self::term(p, vec![0; p.rank()], a)
    }

    /// `x_i` (0-based).
    pub fn var(p: &OrePresentation, i: usize) -> Result<Self> {
        if i >= p.rank() {
            return Err(Error::structural(format!("Ore variable {i} out of range")));
        }
        let mut alpha = vec![0; p.rank()];
        alpha[i] = 1;
        Self::term(p, alpha, &MultiPoly::one(p.base.nvars()))
    }

    /// `a x^α`.
    pub fn term(p: &OrePresentation, alpha: Vec<u32>, a: &MultiPoly) -> Result<Self> {
        let mut e = Self::zero(p);
        if alpha.len() != p.rank() {
            return Err(Error::structural(
                "multi-index length differs from the rank",
            ));
        }
        e.add_term(alpha, p.base.normal_form(a)?);
        Ok(e)
    }

    pub fn from_terms(p: &OrePresentation, terms: BTreeMap<Vec<u32>, MultiPoly>) -> Result<Self> {
        let mut e = Self::zero(p);
        for (alpha, a) in terms {
            e = e.add(&Self::term(p, alpha, &a)?)?;
        }
        Ok(e)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, MultiPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, alpha: Vec<u32>, a: MultiPoly) {
        if a.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(alpha.clone())
            .or_insert_with(|| MultiPoly::zero(a.nvars()));
        *entry = &*entry + &a;
        if entry.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.base_vars != other.base_vars {
            return Err(Error::structural(
                "Ore elements from different presentations",
            ));
        }
        let mut out = self.clone();
        for (alpha, a) in &other.terms {
            out.add_term(alpha.clone(), a.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), v.scale(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Rewrites `a x^α` as `Σ_{α'} x^α' r_α'` (coefficients on the right):
    /// `a x^α = Σ_γ C(α,γ) (-1)^|γ| x^(α-γ) δ^γ(a)`.
    pub fn to_right(&self, p: &OrePresentation) -> Result<BTreeMap<Vec<u32>, MultiPoly>> {
        p.check(self)?;
        let mut out: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (alpha, a) in &self.terms {
            for gamma in crate::weyl::multi_indices_below(alpha) {
                let size: u32 = gamma.iter().sum();
                let mut c = multi_binomial(alpha, &gamma);
                if size % 2 == 1 {
                    c = -c;
                }
                let coeff = p.delta_pow(&gamma, a)?.scale(&c);
                let rest: Vec<u32> = alpha.iter().zip(&gamma).map(|(x, y)| x - y).collect();
                let e = out
                    .entry(rest)
                    .or_insert_with(|| MultiPoly::zero(self.base_vars));
                *e = &*e + &coeff;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Inverse of [`to_right`](Self::to_right):
    /// `x^α b = Σ_γ C(α,γ) δ^γ(b) x^(α-γ)`.
    pub fn from_right(p: &OrePresentation, right: &BTreeMap<Vec<u32>, MultiPoly>) -> Result<Self> {
        let mut out = Self::zero(p);
        for (alpha, b) in right {
            if alpha.len() != p.rank() {
                return Err(Error::structural(
                    "multi-index length differs from the rank",
                ));
            }
            for gamma in crate::weyl::multi_indices_below(alpha) {
                let c = multi_binomial(alpha, &gamma);
                let coeff = p.delta_pow(&gamma, b)?.scale(&c);
                let rest: Vec<u32> = alpha.iter().zip(&gamma).map(|(x, y)| x - y).collect();
                out.add_term(rest, coeff);
            }
        }
        Ok(out)
    }

    pub fn render(&self, p: &OrePresentation) -> String {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (sa, sb): (u32, u32) = (a.iter().sum(), b.iter().sum());
            sb.cmp(&sa).then_with(|| b.cmp(a))
        });
        let mut parts = Vec::new();
        for alpha in keys {
            let xs = Monomial::from_exponents(alpha).render(p.names());
            for (m, c) in self.terms[alpha].terms_grlex_desc() {
                let mono: Vec<String> = [m.render(p.base.names()), xs.clone()]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect();
                parts.push((c.clone(), mono.join("*")));
            }
        }
        render_sum(parts)
    }
}

fn multi_binomial(alpha: &[u32], gamma: &[u32]) -> Rat {
    alpha
        .iter()
        .zip(gamma)
        .map(|(&a, &g)| Rat::from_integer(binomial(a as u64, g as u64)))
        .product()
}

/// `(a x^α)(b x^β) = a Σ_{γ≤α} C(α,γ) δ^γ(b) x^(α-γ+β)`.
pub fn ore_mul(u: &OreElement, v: &OreElement, p: &OrePresentation) -> Result<OreElement> {
    p.check(u)?;
    p.check(v)?;
    let mut out = OreElement::zero(p);
    for (alpha, a) in &u.terms {
        for (beta, b) in &v.terms {
            for gamma in crate::weyl::multi_indices_below(alpha) {
                let db = p.delta_pow(&gamma, b)?;
                if db.is_zero() {
                    continue;
                }
                let c = multi_binomial(alpha, &gamma);
                let coeff = p.base.mul(a, &db.scale(&c))?;
                let exp: Vec<u32> = alpha
                    .iter()
                    .zip(&gamma)
                    .zip(beta)
                    .map(|((x, g), y)| x - g + y)
                    .collect();
                out.add_term(exp, coeff);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commalg::PolyIdeal;
    use crate::poly::rat;
    use proptest::prelude::*;

    fn weyl_as_ore() -> OrePresentation {
        let base = QuotientAlgebra::with_names(PolyIdeal::zero(1), vec!["t".into()]).unwrap();
        OrePresentation::new(base, vec![DerivationSpec::partial(1, 0)], vec!["x".into()]).unwrap()
    }

    #[test]
    fn defining_relation() {
        let p = weyl_as_ore();
        let x = OreElement::var(&p, 0).unwrap();
        let t = OreElement::from_base(&p, &MultiPoly::var(1, 0)).unwrap();
        assert_eq!(ore_mul(&x, &t, &p).unwrap().render(&p), "t*x + 1");
        assert_eq!(ore_mul(&x, &OreElement::one(&p), &p).unwrap(), x);
        let x2 = ore_mul(&x, &x, &p).unwrap();
        assert_eq!(ore_mul(&x2, &t, &p).unwrap().render(&p), "t*x^2 + 2*x");
    }

    #[test]
    fn rejects_unstable_or_noncommuting_derivations() {
        let t = MultiPoly::var(1, 0);
        let base = QuotientAlgebra::new(PolyIdeal::new(1, vec![t.pow(2)]).unwrap());
        let err = OrePresentation::new(base, vec![DerivationSpec::partial(1, 0)], vec!["x".into()])
            .unwrap_err();
        assert_eq!(err.kind(), "presentation");

        let s = MultiPoly::var(2, 0);
        let base = QuotientAlgebra::polynomial_ring(2);
        let d1 = DerivationSpec::partial(2, 0);
        let d2 = DerivationSpec::new(vec![s.clone(), MultiPoly::zero(2)]).unwrap();
        let err =
            OrePresentation::new(base, vec![d1, d2], vec!["x".into(), "y".into()]).unwrap_err();
        assert_eq!(err.kind(), "presentation");
    }

    #[test]
    fn right_coefficients() {
        let p = weyl_as_ore();
        let t = MultiPoly::var(1, 0);
        let e = OreElement::term(&p, vec![1], &t).unwrap();
        let right = e.to_right(&p).unwrap();
        assert_eq!(right.get(&vec![1]), Some(&t));
        assert_eq!(right.get(&vec![0]), Some(&MultiPoly::constant(1, rat(-1))));
        assert_eq!(OreElement::from_right(&p, &right).unwrap(), e);
    }

    fn element() -> impl Strategy<Value = BTreeMap<Vec<u32>, MultiPoly>> {
        prop::collection::btree_map(
            (0u32..3, 0u32..3).prop_map(|(a, b)| vec![a, b]),
            prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 1..3).prop_map(|ts| {
                MultiPoly::from_terms(
                    2,
                    ts.into_iter()
                        .map(|(a, b, c)| (Monomial::from_exponents(&[a, b]), rat(c))),
                )
            }),
            0..3,
        )
    }

    fn two_variable() -> OrePresentation {
        // Q[s, t][x, y; d/ds, d/dt]
        let base =
            QuotientAlgebra::with_names(PolyIdeal::zero(2), vec!["s".into(), "t".into()]).unwrap();
        OrePresentation::new(
            base,
            vec![DerivationSpec::partial(2, 0), DerivationSpec::partial(2, 1)],
            vec!["x".into(), "y".into()],
        )
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn associative(a in element(), b in element(), c in element()) {
            let p = two_variable();
            let (a, b, c) = (
                OreElement::from_terms(&p, a).unwrap(),
                OreElement::from_terms(&p, b).unwrap(),
                OreElement::from_terms(&p, c).unwrap(),
            );
            let lhs = ore_mul(&ore_mul(&a, &b, &p).unwrap(), &c, &p).unwrap();
            let rhs = ore_mul(&a, &ore_mul(&b, &c, &p).unwrap(), &p).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn right_form_round_trips(a in element()) {
            let p = two_variable();
            let e = OreElement::from_terms(&p, a).unwrap();
            let back = OreElement::from_right(&p, &e.to_right(&p).unwrap()).unwrap();
            prop_assert_eq!(back, e);
        }
    }
}

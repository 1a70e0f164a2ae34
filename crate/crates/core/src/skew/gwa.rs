//! Generalized Weyl algebras `D[X, Y; σ, a]` over `D = Q[H_1..H_m]`.
//!
//! An element is `Σ_γ d_γ v_γ` with `v_γ = v_γ1 ⋯ v_γn`, where `v_k = X^k`
//! for `k ≥ 0` and `v_k = Y^-k` for `k < 0`. The relations are
//! `Y_i X_i = a_i`, `X_i Y_i = σ_i(a_i)`, `X_i d = σ_i(d) X_i` and
//! `Y_i d = σ_i^-1(d) Y_i`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::filtration::AlgebraHandle;
use crate::poly::{rat, Monomial, MultiPoly, Rat};
use crate::render::render_sum;
use crate::weyl::WeylElement;

/// `H_j ↦ scale_j H_j + shift_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    scale: Vec<Rat>,
    shift: Vec<Rat>,
}

impl AffineMap {
    pub fn shift(shift: Vec<Rat>) -> Self {
        let scale = vec![Rat::one(); shift.len()];
        AffineMap { scale, shift }
    }

    /// A general affine automorphism. Only shifts occur in the algebras of
    /// interest; scaling maps exist to exhibit non-nilpotent `σ - 1`.
    pub fn affine(scale: Vec<Rat>, shift: Vec<Rat>) -> Result<Self> {
        if scale.len() != shift.len() {
            return Err(Error::Presentation("scale and shift lengths differ".into()));
        }
        if scale.iter().any(Zero::is_zero) {
            return Err(Error::Presentation(
                "an automorphism cannot scale by zero".into(),
            ));
        }
        Ok(AffineMap { scale, shift })
    }

    pub fn is_shift(&self) -> bool {
        self.scale.iter().all(One::is_one)
    }

    pub fn shifts(&self) -> &[Rat] {
        &self.shift
    }

    fn images(&self, power: i64) -> Vec<MultiPoly> {
        let m = self.shift.len();
        (0..m)
            .map(|j| {
                let h = MultiPoly::var(m, j);
                let (c, s) = (&self.scale[j], &self.shift[j]);
                // σ^k(H) = c^k H + s (1 + c + … + c^(k-1)); σ^-1(H) = (H - s)/c.
                let (ck, sk) = if power >= 0 {
                    let mut ck = Rat::one();
                    let mut sk = Rat::zero();
                    for _ in 0..power {
                        sk = c * &sk + s;
                        ck *= c;
                    }
                    (ck, sk)
                } else {
                    let ci = Rat::one() / c;
                    let si = -(s * &ci);
                    let mut ck = Rat::one();
                    let mut sk = Rat::zero();
                    for _ in 0..-power {
                        sk = &ci * &sk + &si;
                        ck *= &ci;
                    }
                    (ck, sk)
                };
                &h.scale(&ck) + &MultiPoly::constant(m, sk)
            })
            .collect()
    }

    /// `σ^power(p)`.
    pub fn apply(&self, p: &MultiPoly, power: i64) -> Result<MultiPoly> {
        if power == 0 || p.is_constant() {
            return Ok(p.clone());
        }
        p.substitute(&self.images(power))
    }
}

#[derive(Clone, Debug)]
pub struct GwaPresentation {
    base_names: Vec<String>,
    sigma: Vec<AffineMap>,
    a: Vec<MultiPoly>,
}

impl GwaPresentation {
    /// Shift automorphisms `σ_i(H_j) = H_j + shifts[i][j]`.
    pub fn new(base_names: Vec<String>, shifts: Vec<Vec<Rat>>, a: Vec<MultiPoly>) -> Result<Self> {
        Self::with_maps(
            base_names,
            shifts.into_iter().map(AffineMap::shift).collect(),
            a,
        )
    }

    pub fn with_maps(
        base_names: Vec<String>,
        sigma: Vec<AffineMap>,
        a: Vec<MultiPoly>,
    ) -> Result<Self> {
        let m = base_names.len();
        if sigma.len() != a.len() {
            return Err(Error::Presentation(format!(
                "{} automorphisms for {} defining elements",
                sigma.len(),
                a.len()
            )));
        }
        if sigma.iter().any(|s| s.shift.len() != m) || a.iter().any(|p| p.nvars() != m) {
            return Err(Error::Presentation(format!(
                "base ring has {m} variables; maps and defining elements must agree"
            )));
        }
        for (i, si) in sigma.iter().enumerate() {
            for (j, aj) in a.iter().enumerate() {
                if i != j && si.apply(aj, 1)? != *aj {
                    return Err(Error::Presentation(format!(
                        "σ_{} does not fix the defining element a_{}",
                        i + 1,
                        j + 1
                    )));
                }
            }
            for sj in &sigma[i + 1..] {
                for k in 0..m {
                    let h = MultiPoly::var(m, k);
                    if si.apply(&sj.apply(&h, 1)?, 1)? != sj.apply(&si.apply(&h, 1)?, 1)? {
                        return Err(Error::Presentation("automorphisms do not commute".into()));
                    }
                }
            }
        }
        Ok(GwaPresentation {
            base_names,
            sigma,
            a,
        })
    }

    /// `Q[h][x, y; σ(h) = h - 1, a = h + 1]`, isomorphic to `A_1` via
    /// `h = x d`, `x ↦ X`, `d ↦ Y`.
    pub fn weyl() -> Self {
        let h = MultiPoly::var(1, 0);
        Self::new(
            vec!["h".into()],
            vec![vec![rat(-1)]],
            vec![&h + &MultiPoly::one(1)],
        )
        .expect("consistent")
    }

    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn base_vars(&self) -> usize {
        self.base_names.len()
    }

    pub fn base_names(&self) -> &[String] {
        &self.base_names
    }

    pub fn sigma(&self) -> &[AffineMap] {
        &self.sigma
    }

    pub fn defining_elements(&self) -> &[MultiPoly] {
        &self.a
    }

    /// `σ^γ(d) = σ_1^γ1 ⋯ σ_n^γn (d)`.
    pub fn sigma_pow(&self, gamma: &[i64], d: &MultiPoly) -> Result<MultiPoly> {
        let mut cur = d.clone();
        for (s, &g) in self.sigma.iter().zip(gamma) {
            cur = s.apply(&cur, g)?;
        }
        Ok(cur)
    }

    /// `v_k v_l = c v_(k+l)` in coordinate `i`; returns `c`.
    fn pair_coefficient(&self, i: usize, k: i64, l: i64) -> Result<MultiPoly> {
        let s = &self.sigma[i];
        let a = &self.a[i];
        let one = MultiPoly::one(self.base_vars());
        if k == 0 || l == 0 || (k > 0) == (l > 0) {
            return Ok(one);
        }
        if k > 0 {
            // X^k Y^m
            let m = -l;
            let p = k.min(m);
            let mut prod = one;
            for j in 1..=p {
                prod = &prod * &s.apply(a, j)?;
            }
            if k >= m {
                s.apply(&prod, k - m)
            } else {
                Ok(prod)
            }
        } else {
            // Y^m X^q
            let (m, q) = (-k, l);
            let p = m.min(q);
            let mut prod = one;
            for j in 0..p {
                prod = &prod * &s.apply(a, -j)?;
            }
            s.apply(&prod, -(m - p))
        }
    }

    fn check(&self, e: &GwaElement) -> Result<()> {
        if e.rank != self.rank() || e.terms.values().any(|p| p.nvars() != self.base_vars()) {
            return Err(Error::structural(
                "GWA element does not belong to this presentation",
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GwaElement {
    rank: usize,
    terms: BTreeMap<Vec<i64>, MultiPoly>,
}

impl GwaElement {
    pub fn zero(p: &GwaPresentation) -> Self {
        GwaElement {
            rank: p.rank(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: &GwaPresentation) -> Self {
        Self::term(p, vec![0; p.rank()], MultiPoly::one(p.base_vars()))
    }

    pub fn base(p: &GwaPresentation, d: MultiPoly) -> Self {
        Self::term(p, vec![0; p.rank()], d)
    }

    /// `d v_γ`.
    pub fn term(p: &GwaPresentation, gamma: Vec<i64>, d: MultiPoly) -> Self {
        let mut e = Self::zero(p);
        e.add_term(gamma, d);
        e
    }

    /// `X_i` (0-based).
    pub fn x(p: &GwaPresentation, i: usize) -> Self {
        let mut g = vec![0; p.rank()];
        g[i] = 1;
        Self::term(p, g, MultiPoly::one(p.base_vars()))
    }

    /// `Y_i` (0-based).
    pub fn y(p: &GwaPresentation, i: usize) -> Self {
        let mut g = vec![0; p.rank()];
        g[i] = -1;
        Self::term(p, g, MultiPoly::one(p.base_vars()))
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Vec<i64>, MultiPoly)>) -> Self {
        let mut e = GwaElement {
            rank,
            terms: BTreeMap::new(),
        };
        for (g, d) in terms {
            e.add_term(g, d);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, MultiPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, gamma: Vec<i64>, d: MultiPoly) {
        if d.is_zero() {
            return;
        }
        let e = self
            .terms
            .entry(gamma.clone())
            .or_insert_with(|| MultiPoly::zero(d.nvars()));
        *e = &*e + &d;
        if e.is_zero() {
            self.terms.remove(&gamma);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::structural("GWA elements of different rank"));
        }
        let mut out = self.clone();
        for (g, d) in &other.terms {
            out.add_term(g.clone(), d.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        GwaElement {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(g, d)| (g.clone(), d.scale(c)))
                .filter(|(_, d)| !d.is_zero())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Total degree in the base variables; `None` for zero.
    pub fn base_degree(&self) -> Option<u32> {
        self.terms
            .values()
            .filter_map(MultiPoly::total_degree)
            .max()
    }

    pub fn render(&self, p: &GwaPresentation) -> String {
        let names = p.base_names();
        render_sum(self.terms.iter().flat_map(|(g, d)| {
            let v = if g.iter().all(|&x| x == 0) {
                String::new()
            } else if g.len() == 1 {
                format!("v[{}]", g[0])
            } else {
                let parts: Vec<String> = g.iter().map(i64::to_string).collect();
                format!("v[{}]", parts.join(","))
            };
            if d.len() == 1 {
                let (m, c) = d.terms().iter().next().unwrap();
                let mono = match (m.is_one(), v.is_empty()) {
                    (true, true) => String::new(),
                    (true, false) => v,
                    (false, true) => m.render(names),
                    (false, false) => format!("{}*{v}", m.render(names)),
                };
                vec![(c.clone(), mono)]
            } else if v.is_empty() {
                d.terms_grlex_desc()
                    .into_iter()
                    .map(|(m, c)| (c.clone(), m.render(names)))
                    .collect()
            } else {
                vec![(Rat::one(), format!("({})*{v}", d.render(names)))]
            }
        }))
    }
}

/// `(d v_γ)(e v_δ) = d σ^γ(e) v_γ v_δ`, with `v_γ v_δ` resolved coordinate by
/// coordinate.
pub fn gwa_mul(u: &GwaElement, v: &GwaElement, p: &GwaPresentation) -> Result<GwaElement> {
    p.check(u)?;
    p.check(v)?;
    let n = p.rank();
    let mut out = GwaElement::zero(p);
    for (g, d) in &u.terms {
        for (h, e) in &v.terms {
            let mut coeff = d * &p.sigma_pow(g, e)?;
            let mut prefix = vec![0i64; n];
            let mut sum = vec![0i64; n];
            for i in 0..n {
                let c = p.pair_coefficient(i, g[i], h[i])?;
                coeff = &coeff * &p.sigma_pow(&prefix, &c)?;
                sum[i] = g[i] + h[i];
                prefix[i] = sum[i];
            }
            out.add_term(sum, coeff);
        }
    }
    Ok(out)
}

/// Least `m ≤ bound` with `(σ_i - 1)^m (d) = 0`, or `None` past the bound.
pub fn shift_nilpotency_order(
    p: &GwaPresentation,
    i: usize,
    d: &MultiPoly,
    bound: usize,
) -> Result<Option<usize>> {
    let s = p
        .sigma
        .get(i)
        .ok_or_else(|| Error::structural(format!("automorphism index {i} out of range")))?;
    let mut cur = d.clone();
    for m in 0..=bound {
        if cur.is_zero() {
            return Ok(Some(m));
        }
        cur = &s.apply(&cur, 1)? - &cur;
    }
    Ok(None)
}

/// The isomorphism `A_1 → Q[h][X, Y; σ(h) = h - 1, a = h + 1]`, sending
/// `x^a d^b` to `X^a Y^b`.
pub fn weyl_gwa_iso(u: &WeylElement) -> Result<GwaElement> {
    if u.rank() != 1 {
        return Err(Error::structural(
            "the GWA isomorphism is defined for rank 1",
        ));
    }
    let p = GwaPresentation::weyl();
    let one = MultiPoly::one(1);
    let mut out = GwaElement::zero(&p);
    for (m, c) in u.terms() {
        let a = m.x.exponent(0) as i64;
        let b = m.d.exponent(0) as i64;
        let xa = GwaElement::term(&p, vec![a], one.clone());
        let yb = GwaElement::term(&p, vec![-b], one.clone());
        out = out.add(&gwa_mul(&xa, &yb, &p)?.scale(c))?;
    }
    Ok(out)
}

/// Inverse of [`weyl_gwa_iso`]: `h ↦ x d`, `v_k ↦ x^k` or `d^-k`.
pub fn gwa_to_weyl(e: &GwaElement) -> Result<WeylElement> {
    if e.rank() != 1 {
        return Err(Error::structural(
            "the GWA isomorphism is defined for rank 1",
        ));
    }
    let mut out = WeylElement::zero(1);
    for (g, d) in e.terms() {
        if d.nvars() != 1 {
            return Err(Error::structural("expected a coefficient in Q[h]"));
        }
        let k = g[0];
        let v = if k >= 0 {
            WeylElement::xd(k as u32, 0)
        } else {
            WeylElement::xd(0, (-k) as u32)
        };
        let mut coeff = WeylElement::zero(1);
        for (m, c) in d.terms() {
            coeff = coeff.try_add(&WeylElement::h().pow(m.exponent(0)).scale(c))?;
        }
        out = out.try_add(&coeff.try_mul(&v)?)?;
    }
    Ok(out)
}

/// A GWA as an order-engine handle; samples have grades in `[-size, size]`
/// and base coefficients of degree at most `size`.
#[derive(Clone, Debug)]
pub struct GwaHandle {
    pub presentation: GwaPresentation,
    pub sample_terms: usize,
}

impl GwaHandle {
    pub fn new(presentation: GwaPresentation) -> Self {
        GwaHandle {
            presentation,
            sample_terms: 3,
        }
    }
}

impl AlgebraHandle for GwaHandle {
    type Elem = GwaElement;

    fn zero(&self) -> GwaElement {
        GwaElement::zero(&self.presentation)
    }
    fn one(&self) -> GwaElement {
        GwaElement::one(&self.presentation)
    }
    fn is_zero(&self, e: &GwaElement) -> bool {
        e.is_zero()
    }
    fn add(&self, a: &GwaElement, b: &GwaElement) -> Result<GwaElement> {
        a.add(b)
    }
    fn scale(&self, a: &GwaElement, c: &Rat) -> GwaElement {
        a.scale(c)
    }
    fn mul(&self, a: &GwaElement, b: &GwaElement) -> Result<GwaElement> {
        gwa_mul(a, b, &self.presentation)
    }
    fn sample(&self, rng: &mut dyn RngCore, size: u32) -> GwaElement {
        let p = &self.presentation;
        let m = p.base_vars();
        let size = size as i64;
        let mut out = GwaElement::zero(p);
        for _ in 0..self.sample_terms {
            let g: Vec<i64> = (0..p.rank()).map(|_| rng.gen_range(-size..=size)).collect();
            let exps: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=size as u32)).collect();
            let c = match rng.gen_range(-4i64..=4) {
                0 => 1,
                c => c,
            };
            out.add_term(
                g,
                MultiPoly::monomial(m, Monomial::from_exponents(&exps), rat(c)),
            );
        }
        out
    }
    fn render(&self, e: &GwaElement) -> String {
        e.render(&self.presentation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::filtration::{element_order, DeltaFamily, OrderStatus};
    use crate::weyl::{random_element, weyl_mul};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn h() -> MultiPoly {
        MultiPoly::var(1, 0)
    }
    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(1, rat(v))
    }

    #[test]
    fn weyl_presentation_relations() {
        let p = GwaPresentation::weyl();
        let x = GwaElement::x(&p, 0);
        let y = GwaElement::y(&p, 0);
        assert_eq!(
            gwa_mul(&y, &x, &p).unwrap(),
            GwaElement::base(&p, &h() + &c(1))
        );
        assert_eq!(gwa_mul(&x, &y, &p).unwrap(), GwaElement::base(&p, h()));
        let hh = GwaElement::base(&p, h());
        assert_eq!(
            gwa_mul(&x, &hh, &p).unwrap(),
            GwaElement::term(&p, vec![1], &h() - &c(1))
        );
        assert_eq!(gwa_mul(&x, &hh, &p).unwrap().render(&p), "(h - 1)*v[1]");
    }

    #[test]
    fn higher_powers() {
        let p = GwaPresentation::weyl();
        // X^2 Y^3 = σ(a)σ^2(a) Y = h(h - 1) Y
        let x2 = GwaElement::term(&p, vec![2], c(1));
        let y3 = GwaElement::term(&p, vec![-3], c(1));
        assert_eq!(
            gwa_mul(&x2, &y3, &p).unwrap(),
            GwaElement::term(&p, vec![-1], &h() * &(&h() - &c(1)))
        );
        // Y^2 X^3 = a σ^-1(a) X = (h + 1)(h + 2) X
        let y2 = GwaElement::term(&p, vec![-2], c(1));
        let x3 = GwaElement::term(&p, vec![3], c(1));
        assert_eq!(
            gwa_mul(&y2, &x3, &p).unwrap(),
            GwaElement::term(&p, vec![1], &(&h() + &c(1)) * &(&h() + &c(2)))
        );
    }

    #[test]
    fn iso_examples() {
        let p = GwaPresentation::weyl();
        assert_eq!(
            weyl_gwa_iso(&WeylElement::h()).unwrap(),
            GwaElement::base(&p, h())
        );
        assert_eq!(
            weyl_gwa_iso(&WeylElement::one(1)).unwrap(),
            GwaElement::one(&p)
        );
        let dx = weyl_mul(&WeylElement::d(1, 0), &WeylElement::x(1, 0)).unwrap();
        assert_eq!(
            weyl_gwa_iso(&dx).unwrap(),
            GwaElement::base(&p, &h() + &c(1))
        );
    }

    #[test]
    fn iso_is_multiplicative_and_invertible() {
        let p = GwaPresentation::weyl();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let u = random_element(&mut rng, 1, 5, 3);
            let v = random_element(&mut rng, 1, 5, 3);
            let lhs = weyl_gwa_iso(&weyl_mul(&u, &v).unwrap()).unwrap();
            let rhs = gwa_mul(&weyl_gwa_iso(&u).unwrap(), &weyl_gwa_iso(&v).unwrap(), &p).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(gwa_to_weyl(&weyl_gwa_iso(&u).unwrap()).unwrap(), u);
        }
    }

    #[test]
    fn nilpotency_of_shifts() {
        let p = GwaPresentation::new(vec!["H".into()], vec![vec![rat(-1)]], vec![h()]).unwrap();
        assert_eq!(shift_nilpotency_order(&p, 0, &h(), 10).unwrap(), Some(2));
        assert_eq!(shift_nilpotency_order(&p, 0, &c(5), 10).unwrap(), Some(1));
        assert_eq!(
            shift_nilpotency_order(&p, 0, &h().pow(2), 10).unwrap(),
            Some(3)
        );
        let doubling = GwaPresentation::with_maps(
            vec!["H".into()],
            vec![AffineMap::affine(vec![rat(2)], vec![rat(0)]).unwrap()],
            vec![h()],
        )
        .unwrap();
        assert_eq!(
            shift_nilpotency_order(&doubling, 0, &h(), 20).unwrap(),
            None
        );
    }

    #[test]
    fn rejects_inconsistent_presentations() {
        let h1 = MultiPoly::var(2, 0);
        let h2 = MultiPoly::var(2, 1);
        let ok = GwaPresentation::new(
            vec!["H1".into(), "H2".into()],
            vec![vec![rat(-1), rat(0)], vec![rat(0), rat(-1)]],
            vec![h1.clone(), h2.clone()],
        );
        assert!(ok.is_ok());
        let bad = GwaPresentation::new(
            vec!["H1".into(), "H2".into()],
            vec![vec![rat(-1), rat(1)], vec![rat(0), rat(-1)]],
            vec![h1, h2],
        )
        .unwrap_err();
        assert_eq!(bad.kind(), "presentation");
    }

    #[test]
    fn rank_two_is_a_tensor_product() {
        let h1 = MultiPoly::var(2, 0);
        let h2 = MultiPoly::var(2, 1);
        let one = MultiPoly::one(2);
        let p = GwaPresentation::new(
            vec!["H1".into(), "H2".into()],
            vec![vec![rat(-1), rat(0)], vec![rat(0), rat(-1)]],
            vec![&h1 + &one, &h2 + &one],
        )
        .unwrap();
        let x1 = GwaElement::x(&p, 0);
        let y2 = GwaElement::y(&p, 1);
        assert_eq!(
            gwa_mul(&x1, &y2, &p).unwrap(),
            gwa_mul(&y2, &x1, &p).unwrap()
        );
        let e = GwaElement::term(&p, vec![1, -1], &h1 * &h2);
        let f = GwaElement::term(&p, vec![-1, 2], &h1 + &h2);
        let g = GwaElement::term(&p, vec![2, 0], h2.clone());
        let lhs = gwa_mul(&gwa_mul(&e, &f, &p).unwrap(), &g, &p).unwrap();
        let rhs = gwa_mul(&e, &gwa_mul(&f, &g, &p).unwrap(), &p).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn grading_of_products() {
        let handle = GwaHandle::new(GwaPresentation::weyl());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let u = handle.sample(&mut rng, 3);
            let v = handle.sample(&mut rng, 3);
            let uv = handle.mul(&u, &v).unwrap();
            for g in uv.terms().keys() {
                assert!(u
                    .terms()
                    .keys()
                    .any(|a| v.terms().keys().any(|b| a[0] + b[0] == g[0])));
            }
        }
    }

    #[test]
    fn ad_x_orders_finite_for_shifts_and_infinite_for_doubling() {
        let shift = GwaHandle::new(GwaPresentation::weyl());
        let delta = DeltaFamily::new(&shift, vec![GwaElement::x(&shift.presentation, 0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let e = shift.sample(&mut rng, 2);
            let r = element_order(&e, &delta, 32, &Budget::unlimited()).unwrap();
            assert!(r.order().is_some());
        }
        let doubling = GwaHandle::new(
            GwaPresentation::with_maps(
                vec!["h".into()],
                vec![AffineMap::affine(vec![rat(2)], vec![rat(0)]).unwrap()],
                vec![h()],
            )
            .unwrap(),
        );
        let p = &doubling.presentation;
        let delta = DeltaFamily::new(&doubling, vec![GwaElement::x(p, 0)]).unwrap();
        let e = GwaElement::term(p, vec![-1], h());
        let r = element_order(&e, &delta, 12, &Budget::unlimited()).unwrap();
        assert_eq!(r.status, OrderStatus::ExceedsBound(12));
    }
}

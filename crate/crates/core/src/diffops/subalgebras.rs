//! The graded subalgebras `R_0 ⊂ R_1 ⊂ R_2 ⊂ A_1` and ideal searches in
//! them.
//!
//! Under `A_1 ≅ Q[h][x, d; σ(h) = h - 1]` every element is `Σ p_g(h) v_g`
//! with `v_g = x^g` or `d^-g`:
//! - `R_0 = ⊕_{g ≥ 0} K[h] x^g`
//! - `R_1 = R_0 ⊕ ⊕_{j ≥ 1} K[h] y^j`, `y = h d`, `y^j = h(h+1)...(h+j-1) d^j`
//! - `R_2 = R_0 ⊕ ⊕_{j ≥ 1} h K[h] d^j`

use std::collections::BTreeMap;
use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::filtration::{descend_to_constants, DeltaFamily, WeylHandle, DEFAULT_BOUND};
use crate::linalg::{IncrementalEliminator, SparseVec};
use crate::localization::IdealCombination;
use crate::poly::{binomial, Monomial, MultiPoly, Rat};
use crate::skew::weyl_gwa_iso;
use crate::weyl::{WeylElement, WeylMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subalgebra {
    A1,
    R0,
    R1,
    R2,
}

impl fmt::Display for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subalgebra::A1 => "A1",
            Subalgebra::R0 => "R0",
            Subalgebra::R1 => "R1",
            Subalgebra::R2 => "R2",
        })
    }
}

impl std::str::FromStr for Subalgebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A1" | "a1" => Ok(Subalgebra::A1),
            "R0" | "r0" => Ok(Subalgebra::R0),
            "R1" | "r1" => Ok(Subalgebra::R1),
            "R2" | "r2" => Ok(Subalgebra::R2),
            _ => Err(Error::structural(format!("unknown subalgebra `{s}`"))),
        }
    }
}

pub fn y() -> WeylElement {
    WeylElement::h()
        .try_mul(&WeylElement::d(1, 0))
        .expect("rank 1")
}

/// `h^e d^j`.
fn h_pow_d(e: u32, j: u32) -> WeylElement {
    WeylElement::h()
        .pow(e)
        .try_mul(&WeylElement::xd(0, j))
        .expect("rank 1")
}

fn h_poly(p: &MultiPoly) -> WeylElement {
    let mut out = WeylElement::zero(1);
    for (m, c) in p.terms() {
        out = out
            .try_add(&WeylElement::h().pow(m.exponent(0)).scale(c))
            .expect("rank 1");
    }
    out
}

/// `h(h+1)...(h+j-1)`.
pub fn rising_h(j: u32) -> MultiPoly {
    let h = MultiPoly::var(1, 0);
    (0..j).fold(MultiPoly::one(1), |acc, l| {
        acc.try_mul(
            &h.try_add(&MultiPoly::constant(1, Rat::from_integer(l.into())))
                .expect("1 var"),
        )
        .expect("1 var")
    })
}

/// Grade components `g ↦ p_g(h)` with the coefficient on the left.
pub fn grade_components(u: &WeylElement) -> Result<BTreeMap<i64, MultiPoly>> {
    Ok(weyl_gwa_iso(u)?
        .terms()
        .iter()
        .map(|(g, p)| (g[0], p.clone()))
        .collect())
}

/// Rebuilds `p(h) v_g` inside `A_1`.
pub fn component_element(g: i64, p: &MultiPoly) -> WeylElement {
    let v = if g >= 0 {
        WeylElement::xd(g as u32, 0)
    } else {
        WeylElement::xd(0, (-g) as u32)
    };
    h_poly(p).try_mul(&v).expect("rank 1")
}

/// `x - d` degree of a homogeneous element.
pub fn grade(u: &WeylElement) -> Option<i64> {
    let mut it = u
        .terms()
        .keys()
        .map(|m| m.x.exponent(0) as i64 - m.d.exponent(0) as i64);
    let first = it.next()?;
    it.all(|g| g == first).then_some(first)
}

impl Subalgebra {
    pub const ALL: [Subalgebra; 4] = [
        Subalgebra::A1,
        Subalgebra::R0,
        Subalgebra::R1,
        Subalgebra::R2,
    ];

    pub fn generators(&self) -> Vec<WeylElement> {
        let x = WeylElement::x(1, 0);
        let h = WeylElement::h();
        match self {
            Subalgebra::A1 => vec![x, WeylElement::d(1, 0)],
            Subalgebra::R0 => vec![x, h],
            Subalgebra::R1 => vec![x, h, y()],
            Subalgebra::R2 => vec![x, h, h_pow_d(1, 1), h_pow_d(1, 2)],
        }
    }

    /// Required factor of the grade `-j` coefficient, `None` if the grade is
    /// absent.
    fn negative_factor(&self, j: u32) -> Option<MultiPoly> {
        match self {
            Subalgebra::A1 => Some(MultiPoly::one(1)),
            Subalgebra::R0 => None,
            Subalgebra::R1 => Some(rising_h(j)),
            Subalgebra::R2 => Some(MultiPoly::var(1, 0)),
        }
    }

    pub fn contains(&self, u: &WeylElement) -> Result<bool> {
        if u.rank() != 1 {
            return Err(Error::structural(
                "subalgebras of A_1 contain rank-1 elements",
            ));
        }
        for (g, p) in grade_components(u)? {
            if g >= 0 {
                continue;
            }
            match self.negative_factor((-g) as u32) {
                None => return Ok(false),
                Some(f) => {
                    if !p.uni_div_rem(&f)?.1.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Generators of `R ∩ D_i` as a left `K[x]`-module (`D_i`: order in
    /// `d` at most `i`).
    pub fn module_generators(&self, i: u32) -> Vec<WeylElement> {
        let mut out: Vec<WeylElement> = (0..=i).map(|b| WeylElement::h().pow(b)).collect();
        match self {
            Subalgebra::A1 => return (0..=i).map(|j| WeylElement::xd(0, j)).collect(),
            Subalgebra::R0 => {}
            Subalgebra::R1 => {
                for j in 1..=i / 2 {
                    for e in 0..=i - 2 * j {
                        out.push(
                            WeylElement::h()
                                .pow(e)
                                .try_mul(&y().pow(j))
                                .expect("rank 1"),
                        );
                    }
                }
            }
            Subalgebra::R2 => {
                for j in 1..i {
                    for e in 0..i - j {
                        out.push(h_pow_d(e + 1, j));
                    }
                }
            }
        }
        out
    }

    /// Homogeneous K-spanning set of the elements of standard order at most
    /// `bound`.
    pub fn spanning_set(&self, bound: u32) -> Vec<WeylElement> {
        let mut out = Vec::new();
        let h = WeylElement::h();
        for e in 0..=bound / 2 {
            for g in 0..=bound - 2 * e {
                out.push(h.pow(e).try_mul(&WeylElement::xd(g, 0)).expect("rank 1"));
            }
        }
        for j in 1..=bound {
            match self {
                Subalgebra::R0 => {}
                Subalgebra::A1 => {
                    for e in 0..=(bound - j) / 2 {
                        out.push(h_pow_d(e, j));
                    }
                }
                Subalgebra::R1 => {
                    for e in 0..=bound / 2 {
                        if 2 * e + 2 * j > bound {
                            break;
                        }
                        out.push(h.pow(e).try_mul(&y().pow(j)).expect("rank 1"));
                    }
                }
                Subalgebra::R2 => {
                    for e in 1..=bound / 2 {
                        if 2 * e + j > bound {
                            break;
                        }
                        out.push(h_pow_d(e, j));
                    }
                }
            }
        }
        out
    }
}

fn weyl_vector(u: &WeylElement) -> SparseVec<WeylMonomial> {
    u.terms()
        .iter()
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

/// Searches `Σ c a g b = target` with `a, b` from the spanning set of `sub`
/// up to standard order `order_bound`; grade-compatible triples only.
pub fn ideal_membership(
    sub: Subalgebra,
    gens: &[WeylElement],
    target: &WeylElement,
    order_bound: u32,
    budget: &Budget,
) -> Result<Option<IdealCombination>> {
    let span = sub.spanning_set(order_bound);
    let grades: Vec<Option<i64>> = span.iter().map(grade).collect();
    let tg = grade(target);
    let mut elim: IncrementalEliminator<WeylMonomial> = IncrementalEliminator::new();
    let mut triples = Vec::new();
    let goal = weyl_vector(target);
    for (gi, g) in gens.iter().enumerate() {
        let gg = grade(g);
        for (ai, a) in span.iter().enumerate() {
            let ag = a.try_mul(g)?;
            for (bi, b) in span.iter().enumerate() {
                if let (Some(t), Some(x), Some(y), Some(z)) = (tg, grades[ai], gg, grades[bi]) {
                    if x + y + z != t {
                        continue;
                    }
                }
                budget.charge(1, "two-sided ideal search")?;
                triples.push((ai, gi, bi));
                elim.push(&weyl_vector(&ag.try_mul(b)?));
            }
        }
    }
    Ok(elim.express(&goal).map(|combo| IdealCombination {
        terms: combo
            .into_iter()
            .map(|(tag, c)| {
                let (ai, gi, bi) = triples[tag];
                (c, span[ai].clone(), gi, span[bi].clone())
            })
            .collect(),
    }))
}

/// A nonzero polynomial in the two-sided ideal, with its certificate.
#[derive(Clone, Debug)]
pub struct BaseIntersection {
    pub element: MultiPoly,
    pub generator: usize,
    /// Number of `ad_x` steps.
    pub steps: usize,
    pub certificate: IdealCombination,
}

/// Descends the first generator with `ad_x` until it lies in `K[x]`;
/// `ad_x^m(g) = Σ_t C(m,t) (-1)^(m-t) x^t g x^(m-t)` is the certificate.
pub fn ideal_meets_base(
    gens: &[WeylElement],
    sub: Subalgebra,
    budget: &Budget,
) -> Result<BaseIntersection> {
    if gens.is_empty() || gens.iter().any(WeylElement::is_zero) {
        return Err(Error::Contract("ideal generators must be nonzero".into()));
    }
    for g in gens {
        if !sub.contains(g)? {
            return Err(Error::Contract(format!("{} is not in {sub}", g.render())));
        }
    }
    let handle = WeylHandle::new(1);
    let x = WeylElement::x(1, 0);
    let delta = DeltaFamily::new(&handle, vec![x.clone()])?;
    let d = descend_to_constants(&gens[0], &delta, DEFAULT_BOUND, budget)?;
    let m = d.word.len();
    let mut terms = Vec::new();
    for t in 0..=m {
        let mut c = Rat::from_integer(binomial(m as u64, t as u64));
        if (m - t) % 2 == 1 {
            c = -c;
        }
        terms.push((c, x.pow(t as u32), 0, x.pow((m - t) as u32)));
    }
    let certificate = IdealCombination { terms };
    if certificate.evaluate(gens)? != d.element {
        return Err(Error::VerificationWindow(
            "descent certificate does not re-verify".into(),
        ));
    }
    let mut element = MultiPoly::zero(1);
    for (mono, c) in d.element.terms() {
        if !mono.d.is_one() {
            return Err(Error::VerificationWindow(
                "descent left the base ring".into(),
            ));
        }
        element.add_term(Monomial::var_pow(0, mono.x.exponent(0)), c.clone());
    }
    Ok(BaseIntersection {
        element,
        generator: 0,
        steps: m,
        certificate,
    })
}

/// `u = c + a_x x + a_h h + a_y y` with `a_*` in `R_1` and `c` a scalar:
/// the decomposition `R_1 = K ⊕ (x, h, y)`.
pub fn r1_decomposition(u: &WeylElement) -> Result<(Rat, WeylElement, WeylElement, WeylElement)> {
    let mut c = Rat::from_integer(0.into());
    let mut ax = WeylElement::zero(1);
    let mut ah = WeylElement::zero(1);
    let mut ay = WeylElement::zero(1);
    let h = MultiPoly::var(1, 0);
    for (g, p) in grade_components(u)? {
        if g > 0 {
            ax = ax.try_add(&component_element(g - 1, &p))?;
        } else if g == 0 {
            c = p.constant_term();
            let rest = p.try_sub(&MultiPoly::constant(1, c.clone()))?;
            let (q, _) = rest.uni_div_rem(&h)?;
            ah = ah.try_add(&h_poly(&q))?;
        } else {
            let j = (-g) as u32;
            let (q, r) = p.uni_div_rem(&rising_h(j))?;
            if !r.is_zero() {
                return Err(Error::Contract(format!("{} is not in R1", u.render())));
            }
            ay = ay.try_add(&h_poly(&q).try_mul(&y().pow(j - 1))?)?;
        }
    }
    Ok((c, ax, ah, ay))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::weyl::random_element;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x() -> WeylElement {
        WeylElement::x(1, 0)
    }
    fn d() -> WeylElement {
        WeylElement::d(1, 0)
    }
    fn h() -> WeylElement {
        WeylElement::h()
    }

    #[test]
    fn membership() {
        assert!(Subalgebra::R0.contains(&h()).unwrap());
        assert!(!Subalgebra::R0.contains(&d()).unwrap());
        assert!(Subalgebra::R1.contains(&y()).unwrap());
        assert!(!Subalgebra::R1.contains(&h_pow_d(1, 2)).unwrap());
        assert!(Subalgebra::R2.contains(&h_pow_d(1, 2)).unwrap());
        assert!(!Subalgebra::R2.contains(&d()).unwrap());
        assert!(Subalgebra::A1.contains(&d()).unwrap());
        // d x = h + 1 is in R_0
        assert!(Subalgebra::R0
            .contains(&d().try_mul(&x()).unwrap())
            .unwrap());
    }

    #[test]
    fn closed_under_products_of_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for sub in Subalgebra::ALL {
            let gens = sub.generators();
            for _ in 0..20 {
                let mut p = WeylElement::one(1);
                for _ in 0..4 {
                    p = p
                        .try_mul(&gens[rand::Rng::gen_range(&mut rng, 0..gens.len())])
                        .unwrap();
                }
                assert!(sub.contains(&p).unwrap(), "{sub}: {}", p.render());
            }
        }
    }

    #[test]
    fn spanning_sets_lie_in_the_subalgebra() {
        for sub in Subalgebra::ALL {
            for e in sub.spanning_set(6) {
                assert!(sub.contains(&e).unwrap());
                assert!(grade(&e).is_some());
            }
            for e in sub.module_generators(3) {
                assert!(sub.contains(&e).unwrap());
                assert!(e.diff_order().unwrap() <= 3);
            }
        }
    }

    #[test]
    fn components_rebuild() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let u = random_element(&mut rng, 1, 4, 4);
            let mut back = WeylElement::zero(1);
            for (g, p) in grade_components(&u).unwrap() {
                back = back.try_add(&component_element(g, &p)).unwrap();
            }
            assert_eq!(back, u);
        }
    }

    #[test]
    fn base_intersections() {
        let b = Budget::unlimited();
        let r = ideal_meets_base(&[d()], Subalgebra::A1, &b).unwrap();
        assert_eq!(r.element, MultiPoly::constant(1, rat(-1)));
        let r = ideal_meets_base(&[x()], Subalgebra::R0, &b).unwrap();
        assert_eq!(r.element, MultiPoly::var(1, 0));
        assert_eq!(r.steps, 0);
        let r = ideal_meets_base(&[h()], Subalgebra::R2, &b).unwrap();
        assert_eq!(r.element, MultiPoly::var(1, 0).scale(&rat(-1)));
        assert_eq!(r.certificate.evaluate(&[h()]).unwrap(), x().scale(&rat(-1)));
        assert_eq!(
            ideal_meets_base(&[d()], Subalgebra::R0, &b)
                .unwrap_err()
                .kind(),
            "contract"
        );
    }

    #[test]
    fn two_sided_search() {
        let b = Budget::unlimited();
        for target in [x(), h(), h_pow_d(1, 3)] {
            let c = ideal_membership(Subalgebra::R2, &[h()], &target, 5, &b)
                .unwrap()
                .expect("found");
            assert_eq!(c.evaluate(&[h()]).unwrap(), target);
            for (_, a, _, bb) in &c.terms {
                assert!(
                    Subalgebra::R2.contains(a).unwrap() && Subalgebra::R2.contains(bb).unwrap()
                );
            }
        }
        // 1 is not in (x) inside R_0
        assert!(
            ideal_membership(Subalgebra::R0, &[x()], &WeylElement::one(1), 4, &b)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn r1_splits() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let span = Subalgebra::R1.spanning_set(6);
        for _ in 0..20 {
            let mut u = WeylElement::scalar(1, rat(5));
            for e in &span {
                if rand::Rng::gen_bool(&mut rng, 0.3) {
                    u = u
                        .try_add(&e.scale(&rat(rand::Rng::gen_range(&mut rng, -3..4))))
                        .unwrap();
                }
            }
            let (c, ax, ah, ay) = r1_decomposition(&u).unwrap();
            let back = WeylElement::scalar(1, c)
                .try_add(&ax.try_mul(&x()).unwrap())
                .unwrap()
                .try_add(&ah.try_mul(&h()).unwrap())
                .unwrap()
                .try_add(&ay.try_mul(&y()).unwrap())
                .unwrap();
            assert_eq!(back, u);
            for a in [ax, ah, ay] {
                assert!(Subalgebra::R1.contains(&a).unwrap());
            }
        }
        let (c, ..) = r1_decomposition(&WeylElement::scalar(1, rat(5))).unwrap();
        assert_eq!(c, rat(5));
    }
}

//! Executable checks for the subalgebras `R_0`, `R_1`, `R_2` of `A_1`.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::commalg::{derivation_stable, PolyIdeal};
use crate::error::Result;
use crate::filtration::AlgebraHandle;
use crate::localization::IdealCombination;
use crate::poly::{factorial, rat, DerivationSpec, MultiPoly, Rat};
use crate::skew::{GwaElement, GwaHandle, GwaPresentation};
use crate::weyl::{left_divide, right_divide, weyl_comm, WeylElement};

use super::annihilator::{annihilator_pair, weyl_filtration_basis};
use super::report::{paren, Check, CheckStatus, Equation, SuiteReport};
use super::subalgebras::{
    component_element, grade_components, ideal_meets_base, ideal_membership, r1_decomposition, y,
    Subalgebra,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteBounds {
    /// Largest index `i` in the indexed families (`h d^i`, `x^i`, ...).
    pub max_index: u32,
    /// Standard-order bound for sampled elements and ideal searches.
    pub degree: u32,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            max_index: 5,
            degree: 3,
            samples: 20,
            seed: 0,
        }
    }
}

fn r(e: &WeylElement) -> String {
    paren(&e.render())
}

fn x() -> WeylElement {
    WeylElement::x(1, 0)
}
fn d() -> WeylElement {
    WeylElement::d(1, 0)
}
fn h() -> WeylElement {
    WeylElement::h()
}
fn hd(i: u32) -> WeylElement {
    h().try_mul(&WeylElement::xd(0, i)).expect("rank 1")
}

fn sample_in(sub: Subalgebra, rng: &mut dyn RngCore, bound: u32) -> WeylElement {
    let span = sub.spanning_set(bound);
    let mut u = WeylElement::zero(1);
    for _ in 0..3 {
        let e = &span[rng.gen_range(0..span.len())];
        u = u
            .try_add(&e.scale(&rat(rng.gen_range(1..5))))
            .expect("rank 1");
    }
    u
}

fn combination_rhs(c: &IdealCombination, gens: &[WeylElement]) -> String {
    c.terms
        .iter()
        .map(|(k, a, j, b)| format!("({k})*{}*{}*{}", r(a), r(&gens[*j]), r(b)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn essential_check(sub: Subalgebra) -> Result<Check> {
    let mut c = Check::new("essential-b1").bound("i", 1);
    let pair = annihilator_pair(&sub.module_generators(1), 1, &weyl_filtration_basis(1))?;
    let (b, cc) = pair.render()?;
    c.notes.push(format!("b1 = {b}, c1 = {cc}"));
    c.expect(!pair.b.is_zero_ideal(), || "b1 is zero".into());
    Ok(c)
}

fn meets_base_check(sub: Subalgebra, budget: &Budget) -> Result<Check> {
    let mut c = Check::new("ideal-meets-base");
    let gens = vec![h()];
    let m = ideal_meets_base(&gens, sub, budget)?;
    let value = m.certificate.evaluate(&gens)?;
    c.record(Equation::new(
        paren(&m.element.render(&["x1".to_string()])),
        combination_rhs(&m.certificate, &gens),
    ));
    c.expect(
        !m.element.is_zero() && value == WeylElement::from_poly(&m.element),
        || "descent certificate does not re-verify".into(),
    );
    Ok(c.bound("steps", m.steps as u64))
}

pub fn verify_r0_suite(bounds: &SuiteBounds, budget: &Budget) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut checks = Vec::new();
    let gens = Subalgebra::R0.generators();

    let mut c = Check::new("membership-normal-forms")
        .bound("samples", bounds.samples as u64)
        .bound("length", bounds.degree as u64);
    for _ in 0..bounds.samples {
        let mut word = Vec::new();
        let mut p = WeylElement::one(1);
        for _ in 0..rng.gen_range(1..=bounds.degree.max(1)) {
            let g = &gens[rng.gen_range(0..gens.len())];
            word.push(r(g));
            p = p.try_mul(g)?;
        }
        c.expect(Subalgebra::R0.contains(&p)?, || {
            format!("{} left R0", p.render())
        });
        c.record(Equation::new(word.join("*"), r(&p)));
    }
    checks.push(c);

    let mut c = Check::new("normality-of-x").bound("samples", bounds.samples as u64);
    let mut us = vec![h()];
    for _ in 0..bounds.samples {
        us.push(sample_in(Subalgebra::R0, &mut rng, bounds.degree));
    }
    for u in &us {
        let ux = u.try_mul(&x())?;
        let xu = x().try_mul(u)?;
        match (left_divide(&x(), &ux)?, right_divide(&x(), &xu)?) {
            (Some(a), Some(b)) => {
                c.expect(
                    Subalgebra::R0.contains(&a)? && Subalgebra::R0.contains(&b)?,
                    || format!("quotients of {} leave R0", u.render()),
                );
                c.record(Equation::new(
                    format!("{}*(x1)", r(u)),
                    format!("(x1)*{}", r(&a)),
                ));
                c.record(Equation::new(
                    format!("(x1)*{}", r(u)),
                    format!("{}*(x1)", r(&b)),
                ));
            }
            _ => c.fail(format!(
                "x does not divide the products with {}",
                u.render()
            )),
        }
    }
    checks.push(c);

    let mut c = Check::new("quotient-map").bound("samples", bounds.samples as u64);
    let project = |u: &WeylElement| -> Result<WeylElement> {
        Ok(grade_components(u)?
            .get(&0)
            .map(|p| component_element(0, p))
            .unwrap_or_else(|| WeylElement::zero(1)))
    };
    let mut pairs = vec![(h().pow(2), WeylElement::one(1))];
    for _ in 0..bounds.samples {
        pairs.push((
            sample_in(Subalgebra::R0, &mut rng, bounds.degree),
            sample_in(Subalgebra::R0, &mut rng, bounds.degree),
        ));
    }
    for (u, v) in &pairs {
        let pu = project(u)?;
        let rest = u.try_sub(&pu)?;
        match left_divide(&x(), &rest)? {
            Some(q) if Subalgebra::R0.contains(&q)? => {
                c.record(Equation::new(r(u), format!("{} + (x1)*{}", r(&pu), r(&q))));
            }
            _ => c.fail(format!("{} - π({}) is not in x R0", u.render(), u.render())),
        }
        let puv = project(&u.try_mul(v)?)?;
        c.expect(puv == pu.try_mul(&project(v)?)?, || {
            format!("π is not multiplicative on {}, {}", u.render(), v.render())
        });
    }
    checks.push(c);

    let mut c = Check::new("stable-ideals").bound("max_index", bounds.max_index as u64);
    let xv = MultiPoly::var(1, 0);
    let euler = DerivationSpec::new(vec![xv.clone()])?;
    let mut candidates: Vec<(MultiPoly, bool)> =
        (0..=bounds.max_index).map(|i| (xv.pow(i), true)).collect();
    let one = MultiPoly::one(1);
    for p in [
        xv.try_sub(&one)?,
        xv.pow(2).try_add(&one)?,
        xv.pow(2).try_sub(&xv)?,
        xv.try_add(&one.scale(&rat(2)))?.pow(2),
    ] {
        candidates.push((p, false));
    }
    let names = vec!["x1".to_string()];
    for (p, monomial) in &candidates {
        let ideal = PolyIdeal::new(1, vec![p.clone()])?;
        let stable = derivation_stable(&ideal, std::slice::from_ref(&euler))?;
        let image = euler.apply(p)?;
        let wp = WeylElement::from_poly(p);
        c.record(Equation::new(
            format!("[(x1*d1), {}]", r(&wp)),
            r(&WeylElement::from_poly(&image)),
        ));
        c.expect(stable == *monomial, || {
            format!(
                "ideal({}) stability is {stable}, expected {monomial}",
                p.render(&names)
            )
        });
    }
    checks.push(c);

    checks.push(essential_check(Subalgebra::R0)?);
    checks.push(meets_base_check(Subalgebra::R0, budget)?);
    Ok(SuiteReport {
        suite: "R0".into(),
        checks,
    })
}

/// `Q[h][x, y; σ(h) = h - 1, a = h(h+1)]`.
pub fn r1_presentation() -> GwaPresentation {
    let hv = MultiPoly::var(1, 0);
    let a = hv
        .try_mul(&hv.try_add(&MultiPoly::one(1)).expect("1 var"))
        .expect("1 var");
    GwaPresentation::new(vec!["h".into()], vec![vec![rat(-1)]], vec![a]).expect("consistent")
}

/// `p(h) v_g ↦ p(h) x^g` or `p(h) y^-g`.
pub fn r1_epimorphism(e: &GwaElement) -> Result<WeylElement> {
    let mut out = WeylElement::zero(1);
    for (g, p) in e.terms() {
        let v = if g[0] >= 0 {
            x().pow(g[0] as u32)
        } else {
            y().pow((-g[0]) as u32)
        };
        out = out.try_add(&component_element(0, p).try_mul(&v)?)?;
    }
    Ok(out)
}

pub fn verify_r1_suite(bounds: &SuiteBounds, budget: &Budget) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut checks = Vec::new();
    let yy = y();

    let mut c = Check::new("gwa-relations");
    let hh1 = h().try_mul(&h().try_add(&WeylElement::one(1))?)?;
    let h1h = h().try_sub(&WeylElement::one(1))?.try_mul(&h())?;
    let yx = yy.try_mul(&x())?;
    let xy = x().try_mul(&yy)?;
    c.record(Equation::new(format!("{}*(x1)", r(&yy)), r(&yx)));
    c.record(Equation::new(format!("(x1)*{}", r(&yy)), r(&xy)));
    c.record(Equation::new(r(&yx), "(x1*d1)*(x1*d1 + 1)"));
    c.record(Equation::new(r(&xy), "(x1*d1 - 1)*(x1*d1)"));
    c.expect(yx == hh1, || "yx != h(h+1)".into());
    c.expect(xy == h1h, || "xy != (h-1)h".into());
    checks.push(c);

    let samples = bounds.samples.max(100);
    let mut c = Check::new("gwa-epimorphism")
        .bound("samples", samples as u64)
        .bound("degree", bounds.degree as u64);
    let pres = r1_presentation();
    let handle = GwaHandle::new(pres.clone());
    for k in 0..samples {
        let a = handle.sample(&mut rng, bounds.degree.min(2));
        let b = handle.sample(&mut rng, bounds.degree.min(2));
        let ab = handle.mul(&a, &b)?;
        let (fa, fb, fab) = (
            r1_epimorphism(&a)?,
            r1_epimorphism(&b)?,
            r1_epimorphism(&ab)?,
        );
        c.expect(fa.try_mul(&fb)? == fab, || {
            format!("φ fails on {} * {}", handle.render(&a), handle.render(&b))
        });
        c.expect(Subalgebra::R1.contains(&fab)?, || {
            format!("{} left R1", fab.render())
        });
        if k < 5 {
            c.record(Equation::new(format!("{}*{}", r(&fa), r(&fb)), r(&fab)));
        }
    }
    // graded dimensions: {h^e v_g : e ≤ D} must map to D+1 independent
    // elements in every grade.
    let dd = bounds.degree;
    let mut total = 0u64;
    for g in -(dd as i64)..=dd as i64 {
        let images: Vec<WeylElement> = (0..=dd)
            .map(|e| {
                r1_epimorphism(&GwaElement::term(
                    &pres,
                    vec![g],
                    MultiPoly::var(1, 0).pow(e),
                ))
            })
            .collect::<Result<_>>()?;
        let mut elim = crate::linalg::IncrementalEliminator::new();
        let rank = images
            .iter()
            .filter(|u| {
                elim.push(
                    &u.terms()
                        .iter()
                        .map(|(m, c)| (m.clone(), c.clone()))
                        .collect(),
                )
                .1
            })
            .count();
        total += rank as u64;
        c.expect(rank == dd as usize + 1, || {
            format!("grade {g}: image rank {rank}")
        });
    }
    c.notes.push(format!(
        "graded image dimension {total} of {}",
        (2 * dd as u64 + 1) * (dd as u64 + 1)
    ));
    checks.push(c);

    let mut c = Check::new("m1-squared");
    let y_w = yy.try_mul(&h())?.try_sub(&h().try_mul(&yy)?)?;
    let x_w = h().try_mul(&x())?.try_sub(&x().try_mul(&h())?)?;
    let h_w = yy.try_mul(&x())?.try_sub(&h().pow(2))?;
    c.record(Equation::new(
        r(&yy),
        format!("{}*(x1*d1) - (x1*d1)*{}", r(&yy), r(&yy)),
    ));
    c.record(Equation::new("(x1)", "(x1*d1)*(x1) - (x1)*(x1*d1)"));
    c.record(Equation::new(
        "(x1*d1)",
        format!("{}*(x1) - (x1*d1)*(x1*d1)", r(&yy)),
    ));
    c.expect(y_w == yy, || "yh - hy != y".into());
    c.expect(x_w == x(), || "hx - xh != x".into());
    c.expect(h_w == h(), || "yx - h^2 != h".into());
    checks.push(c);

    let mut c = Check::new("constant-plus-maximal").bound("samples", bounds.samples as u64);
    let mut us = vec![WeylElement::scalar(1, rat(5))];
    for _ in 0..bounds.samples {
        us.push(sample_in(Subalgebra::R1, &mut rng, bounds.degree + 2));
    }
    for u in &us {
        let (k, ax, ah, ay) = r1_decomposition(u)?;
        let back = WeylElement::scalar(1, k.clone())
            .try_add(&ax.try_mul(&x())?)?
            .try_add(&ah.try_mul(&h())?)?
            .try_add(&ay.try_mul(&yy)?)?;
        c.expect(back == *u, || {
            format!("decomposition of {} does not re-verify", u.render())
        });
        for a in [&ax, &ah, &ay] {
            c.expect(Subalgebra::R1.contains(a)?, || {
                format!("{} is not in R1", a.render())
            });
        }
        c.record(Equation::new(
            r(u),
            format!(
                "({k}) + {}*(x1) + {}*(x1*d1) + {}*{}",
                r(&ax),
                r(&ah),
                r(&ay),
                r(&yy)
            ),
        ));
    }
    checks.push(c);

    checks.push(essential_check(Subalgebra::R1)?);
    checks.push(meets_base_check(Subalgebra::R1, budget)?);
    Ok(SuiteReport {
        suite: "R1".into(),
        checks,
    })
}

pub fn verify_r2_suite(bounds: &SuiteBounds, budget: &Budget) -> Result<SuiteReport> {
    let n = bounds.max_index;
    let mut checks = Vec::new();

    let mut c = Check::new("commutator-table").bound("max_index", n as u64);
    for i in 0..=n {
        for j in 0..=n {
            let lhs = weyl_comm(&hd(i), &hd(j))?;
            let rhs = hd(i + j).scale(&rat(i as i64 - j as i64));
            c.expect(lhs == rhs, || format!("[h d^{i}, h d^{j}] mismatch"));
            c.record(Equation::new(
                format!("[{}, {}]", r(&hd(i)), r(&hd(j))),
                r(&rhs),
            ));
        }
    }
    checks.push(c);

    let mut c = Check::new("commutator-generation").bound("max_index", (n + 1) as u64);
    let mut known = vec![hd(1), hd(2)];
    for i in 2..=n {
        let next = weyl_comm(&known[i as usize - 1], &hd(1))?
            .scale(&(Rat::from_integer(1.into()) / rat(i as i64 - 1)));
        c.record(Equation::new(
            r(&hd(i + 1)),
            format!(
                "(1/{})*[{}, {}]",
                i - 1,
                r(&known[i as usize - 1]),
                r(&hd(1))
            ),
        ));
        c.expect(next == hd(i + 1), || {
            format!("step {i} does not give h d^{}", i + 1)
        });
        c.expect(Subalgebra::R2.contains(&next)?, || {
            format!("{} is not in R2", next.render())
        });
        known.push(next);
    }
    checks.push(c);

    let mut c = Check::new("maximality").bound("max_index", n as u64);
    for i in 1..=n {
        let mut cur = WeylElement::xd(0, i);
        let mut expr = r(&cur);
        for _ in 1..i {
            cur = weyl_comm(&cur, &x())?;
            expr = format!("[{expr}, (x1)]");
        }
        let want = d().scale(&Rat::from_integer(factorial(i as u64)));
        c.expect(cur == want, || {
            format!("(-ad_x)^{}(d^{i}) != {i}! d", i - 1)
        });
        c.record(Equation::new(expr, r(&want)));
    }
    checks.push(c);

    let mut c = Check::new("ideal-generated-by-h").bound("max_index", n as u64);
    let gens = vec![h()];
    let mut targets = vec![x(), h()];
    targets.extend((1..=n).map(hd));
    for t in &targets {
        let bound = t.standard_order().unwrap_or(0).max(1);
        c.bounds
            .entry("order".into())
            .and_modify(|v| *v = (*v).max(bound as u64))
            .or_insert(bound as u64);
        match ideal_membership(Subalgebra::R2, &gens, t, bound, budget)? {
            Some(comb) => {
                c.expect(comb.evaluate(&gens)? == *t, || {
                    "combination does not re-verify".into()
                });
                c.record(Equation::new(r(t), combination_rhs(&comb, &gens)));
            }
            None => {
                c.status = CheckStatus::Inconclusive;
                c.notes
                    .push(format!("{} not reached within order {bound}", t.render()));
            }
        }
    }
    checks.push(c);

    let mut c = Check::new("eigen-decomposition").bound("max_index", (n + 1) as u64);
    for i in 1..=n + 1 {
        let xi = WeylElement::xd(i, 0);
        let di = WeylElement::xd(0, i);
        let a = weyl_comm(&h(), &xi)?;
        let b = weyl_comm(&h(), &di)?;
        c.expect(a == xi.scale(&rat(i as i64)), || {
            format!("[h, x^{i}] mismatch")
        });
        c.expect(b == di.scale(&rat(-(i as i64))), || {
            format!("[h, d^{i}] mismatch")
        });
        c.record(Equation::new(format!("[(x1*d1), {}]", r(&xi)), r(&a)));
        c.record(Equation::new(format!("[(x1*d1), {}]", r(&di)), r(&b)));
    }
    checks.push(c);

    checks.push(essential_check(Subalgebra::R2)?);
    checks.push(meets_base_check(Subalgebra::R2, budget)?);
    Ok(SuiteReport {
        suite: "R2".into(),
        checks,
    })
}

pub fn verify_suite(sub: Subalgebra, bounds: &SuiteBounds, budget: &Budget) -> Result<SuiteReport> {
    match sub {
        Subalgebra::R0 => verify_r0_suite(bounds, budget),
        Subalgebra::R1 => verify_r1_suite(bounds, budget),
        Subalgebra::R2 => verify_r2_suite(bounds, budget),
        Subalgebra::A1 => Err(crate::error::Error::structural(
            "suites exist for R0, R1 and R2",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let b = SuiteBounds::default();
        for sub in [Subalgebra::R0, Subalgebra::R1, Subalgebra::R2] {
            let rep = verify_suite(sub, &b, &Budget::unlimited()).unwrap();
            for c in &rep.checks {
                assert_eq!(
                    c.status,
                    CheckStatus::Pass,
                    "{sub} {}: {:?}",
                    c.name,
                    c.notes
                );
            }
        }
    }

    #[test]
    fn r2_examples() {
        let rep = verify_r2_suite(&SuiteBounds::default(), &Budget::unlimited()).unwrap();
        let m = rep.check("maximality").unwrap();
        assert!(m
            .certificate
            .contains(&Equation::new("[[(d1^3), (x1)], (x1)]", "(6*d1)")));
        let e = rep.check("eigen-decomposition").unwrap();
        assert!(e
            .certificate
            .contains(&Equation::new("[(x1*d1), (d1^2)]", "(-2*d1^2)")));
        let t = rep.check("commutator-table").unwrap();
        assert_eq!(t.certificate.len(), 36);
        let base = rep.check("ideal-meets-base").unwrap();
        assert_eq!(base.certificate[0].lhs, "(-x1)");
    }

    #[test]
    fn r0_examples() {
        let rep = verify_r0_suite(&SuiteBounds::default(), &Budget::unlimited()).unwrap();
        let n = rep.check("normality-of-x").unwrap();
        assert!(n
            .certificate
            .contains(&Equation::new("(x1*d1)*(x1)", "(x1)*(x1*d1 + 1)")));
        let q = rep.check("quotient-map").unwrap();
        assert_eq!(q.certificate[0].rhs, "(x1^2*d1^2 + x1*d1) + (x1)*(0)");
    }

    #[test]
    fn json_shape() {
        let rep = verify_r1_suite(&SuiteBounds::default(), &Budget::unlimited()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["suite"], "R1");
        let first = &v["checks"][0];
        assert_eq!(first["status"], "pass");
        assert!(first["certificate"][0]["lhs"].is_string());
        assert!(first["bounds"].is_object());
    }
}

//! Acceptance suite: one PASS/FAIL line per criterion, each under its time
//! limit.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use dnilp::algebra::Algebra;
use dnilp_core::budget::Budget;
use dnilp_core::commalg::{
    is_smooth, jacobi_matrix, jacobi_rank, jacobian_ideal, minors_and_tuples, PolyIdeal,
    QuotientAlgebra,
};
use dnilp_core::diffops::annihilator::{annihilator_pair, weyl_filtration_basis};
use dnilp_core::diffops::curve::{act_on_power, simplicity_witness, MonomialCurve, WitnessOutcome};
use dnilp_core::diffops::subalgebras::Subalgebra;
use dnilp_core::diffops::suites::{verify_suite, SuiteBounds};
use dnilp_core::filtration::{
    descend_to_constants, element_order, AlgebraHandle, DeltaFamily, OrderStatus, WeylHandle,
};
use dnilp_core::localization::{
    loc_add, loc_eq, loc_mul, order_preservation_check, push_left, push_right, LocalizationContext,
    LocalizedElement,
};
use dnilp_core::poly::{rat, DerivationSpec, Monomial};
use dnilp_core::skew::{gwa_mul, weyl_gwa_iso, AffineMap, GwaElement, GwaHandle, GwaPresentation};
use dnilp_core::weyl::{canonical_action, random_element, weyl_act, weyl_mul, WeylMonomial};
use dnilp_core::{Error, MultiPoly, Rat, WeylElement};
use dnilp_testkit::swap_rewrite_mul;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn x() -> WeylElement {
    WeylElement::x(1, 0)
}

fn d() -> WeylElement {
    WeylElement::d(1, 0)
}

/// Weyl arithmetic through the rewriting oracle, used to re-read
/// certificates independently of the closed-form product.
struct OracleWeyl;

impl Algebra for OracleWeyl {
    type V = WeylElement;
    fn selector(&self) -> String {
        "oracle".into()
    }
    fn knows(&self, name: &str) -> bool {
        matches!(name, "x1" | "d1" | "x" | "d" | "h")
    }
    fn constant(&self, c: Rat) -> WeylElement {
        WeylElement::scalar(1, c)
    }
    fn symbol(&self, name: &str) -> Result<WeylElement, Error> {
        Ok(match name {
            "x1" | "x" => x(),
            "d1" | "d" => d(),
            _ => swap_rewrite_mul(&x(), &d()),
        })
    }
    fn add(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement, Error> {
        a.try_add(b)
    }
    fn scale(&self, a: &WeylElement, c: &Rat) -> WeylElement {
        a.scale(c)
    }
    fn mul(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement, Error> {
        Ok(swap_rewrite_mul(a, b))
    }
    fn render(&self, a: &WeylElement) -> String {
        a.render()
    }
}

fn oracle_comm(a: &WeylElement, b: &WeylElement) -> WeylElement {
    swap_rewrite_mul(a, b)
        .try_sub(&swap_rewrite_mul(b, a))
        .expect("same rank")
}

fn weyl_monomial(xs: &[u32], ds: &[u32]) -> WeylElement {
    WeylElement::monomial(
        xs.len(),
        WeylMonomial {
            x: Monomial::from_exponents(xs),
            d: Monomial::from_exponents(ds),
        },
        Rat::one(),
    )
}

fn exponent_vectors(len: usize, max_total: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=max_total {
        for mut rest in exponent_vectors(len - 1, max_total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, m: usize, deg: u32, terms: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(m);
    for _ in 0..terms {
        let e: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=deg)).collect();
        p.add_term(Monomial::from_exponents(&e), rat(rng.gen_range(-3..=3)));
    }
    p
}

fn weyl_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..200 {
        let n = 1 + i % 2;
        let u = {
            let order = rng.gen_range(0..=6);
            random_element(&mut rng, n, order, 3)
        };
        let v = {
            let order = rng.gen_range(0..=6);
            random_element(&mut rng, n, order, 3)
        };
        let fast = core(weyl_mul(&u, &v))?;
        let slow = swap_rewrite_mul(&u, &v);
        ensure(fast == slow, || {
            format!(
                "({}) * ({}): {} vs {}",
                u.render(),
                v.render(),
                fast.render(),
                slow.render()
            )
        })?;
    }
    Ok(())
}

fn standard_filtration() -> Outcome {
    let budget = Budget::unlimited();
    for n in 1..=2 {
        let handle = WeylHandle::new(n);
        let delta = core(DeltaFamily::new(&handle, handle.full_generators()))?;
        for exps in exponent_vectors(2 * n, 6) {
            let (xs, ds) = exps.split_at(n);
            let e = weyl_monomial(xs, ds);
            let want: u32 = exps.iter().sum();
            let got = core(element_order(&e, &delta, 8, &budget))?.order();
            ensure(got == Some(want as i64), || {
                format!("ord({}) = {got:?}, expected {want}", e.render())
            })?;
        }
    }
    Ok(())
}

fn leibniz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let images = vec![
            random_poly(&mut rng, 2, 2, 2),
            random_poly(&mut rng, 2, 2, 2),
        ];
        let delta = core(DerivationSpec::new(images))?;
        let a = random_poly(&mut rng, 2, 3, 3);
        let b = random_poly(&mut rng, 2, 3, 3);
        let n = rng.gen_range(0..=5usize);
        let iterate = |p: &MultiPoly, k: usize| -> Result<MultiPoly, String> {
            let mut q = p.clone();
            for _ in 0..k {
                q = core(delta.apply(&q))?;
            }
            Ok(q)
        };
        let lhs = iterate(&core(a.try_mul(&b))?, n)?;
        // Pascal's triangle row n.
        let mut row = vec![Rat::one()];
        for _ in 0..n {
            let mut next = vec![Rat::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        let mut rhs = MultiPoly::zero(2);
        for (i, c) in row.iter().enumerate() {
            let term = core(iterate(&a, i)?.try_mul(&iterate(&b, n - i)?))?.scale(c);
            rhs = core(rhs.try_add(&term))?;
        }
        ensure(lhs == rhs, || format!("n = {n}: sides differ"))?;
    }
    Ok(())
}

fn gwa_isomorphism() -> Outcome {
    let p = GwaPresentation::weyl();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let u = {
            let order = rng.gen_range(0..=5);
            random_element(&mut rng, 1, order, 3)
        };
        let v = {
            let order = rng.gen_range(0..=5);
            random_element(&mut rng, 1, order, 3)
        };
        let lhs = core(weyl_gwa_iso(&swap_rewrite_mul(&u, &v)))?;
        let rhs = core(gwa_mul(
            &core(weyl_gwa_iso(&u))?,
            &core(weyl_gwa_iso(&v))?,
            &p,
        ))?;
        ensure(lhs == rhs, || {
            format!("not multiplicative on ({}) * ({})", u.render(), v.render())
        })?;
    }
    let hv = MultiPoly::var(1, 0);
    let one = MultiPoly::one(1);
    let yx = core(weyl_gwa_iso(&swap_rewrite_mul(&d(), &x())))?;
    ensure(yx == GwaElement::base(&p, core(hv.try_add(&one))?), || {
        format!("yx maps to {}", yx.render(&p))
    })?;
    let xh = core(weyl_gwa_iso(&swap_rewrite_mul(&x(), &WeylElement::h())))?;
    let want = GwaElement::term(&p, vec![1], core(hv.try_sub(&one))?);
    ensure(xh == want, || format!("xh maps to {}", xh.render(&p)))
}

fn shift_test_double() -> Outcome {
    let budget = Budget::unlimited();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let shift = GwaHandle::new(GwaPresentation::weyl());
    let sp = &shift.presentation;
    let delta = core(DeltaFamily::new(
        &shift,
        vec![GwaElement::x(sp, 0), GwaElement::y(sp, 0)],
    ))?;
    for _ in 0..50 {
        let e = shift.sample(&mut rng, 2);
        let r = core(element_order(&e, &delta, 24, &budget))?;
        ensure(r.order().is_some(), || {
            format!("no finite order for {}", e.render(sp))
        })?;
    }
    let hv = MultiPoly::var(1, 0);
    let doubling = GwaHandle::new(core(GwaPresentation::with_maps(
        vec!["h".into()],
        vec![core(AffineMap::affine(vec![rat(2)], vec![rat(0)]))?],
        vec![hv],
    ))?);
    let dp = &doubling.presentation;
    let delta = core(DeltaFamily::new(&doubling, vec![GwaElement::x(dp, 0)]))?;
    let mut seen = 0;
    while seen < 50 {
        let e = doubling.sample(&mut rng, 2);
        if e.base_degree().unwrap_or(0) == 0 {
            continue;
        }
        seen += 1;
        let r = core(element_order(&e, &delta, 10, &budget))?;
        ensure(r.status == OrderStatus::ExceedsBound(10), || {
            format!("{} has status {:?}", e.render(dp), r.status)
        })?;
    }
    Ok(())
}

fn localization_identities() -> Outcome {
    let ctx = LocalizationContext::at_x();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let r = {
            let order = rng.gen_range(0..=4);
            random_element(&mut rng, 1, order, 3)
        };
        for m in 0..=4u32 {
            let right = core(push_right(m, &r, &ctx))?;
            ensure(right.value == swap_rewrite_mul(&x().pow(m), &r), || {
                format!("s^{m} r expansion for {}", r.render())
            })?;
            let left = core(push_left(m, &r, &ctx))?;
            ensure(left.value == swap_rewrite_mul(&r, &x().pow(m)), || {
                format!("r s^{m} expansion for {}", r.render())
            })?;
            // x^m (x^-m r) = r
            let frac = core(loc_mul(
                &LocalizedElement::new(m, WeylElement::one(1)),
                &LocalizedElement::from_weyl(r.clone()),
                &ctx,
            ))?;
            let back = core(loc_mul(
                &LocalizedElement::from_weyl(x().pow(m)),
                &frac,
                &ctx,
            ))?;
            ensure(
                core(loc_eq(&back, &LocalizedElement::from_weyl(r.clone()), &ctx))?,
                || format!("x^{m} * x^-{m} * r != r for {}", r.render()),
            )?;
        }
    }
    let inv_h = LocalizedElement::new(1, WeylElement::h());
    ensure(
        core(loc_eq(&inv_h, &LocalizedElement::from_weyl(d()), &ctx))?,
        || "d != x^-1 h".into(),
    )
}

fn order_preservation() -> Outcome {
    let ctx = LocalizationContext::at_x();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let r = core(order_preservation_check(
        &ctx,
        &[x()],
        50,
        3,
        2,
        &mut rng,
        &Budget::unlimited(),
    ))?;
    ensure(r.passed() && r.checked > 0, || {
        format!("violations: {:?}", r.violations)
    })
}

fn minor_law(q: &QuotientAlgebra, label: &str) -> Outcome {
    let j = core(jacobi_matrix(q))?;
    let r = core(jacobi_rank(&j, q))?;
    let m = core(minors_and_tuples(&j, q, r))?;
    for (rows, cols, p) in &m.minors {
        let inside = m.row_tuples.contains(rows) && m.col_tuples.contains(cols);
        ensure(!p.is_zero() == inside, || {
            format!("{label}: minor {rows:?} x {cols:?}")
        })?;
    }
    Ok(())
}

fn jacobian() -> Outcome {
    let xv = MultiPoly::var(2, 0);
    let yv = MultiPoly::var(2, 1);
    let cusp_rel = core(yv.pow(2).try_sub(&xv.pow(3)))?;
    let cusp = QuotientAlgebra::new(core(PolyIdeal::new(2, vec![cusp_rel.clone()]))?);
    let jac = core(jacobian_ideal(&cusp))?;
    let want = core(PolyIdeal::new(2, vec![xv.pow(2), yv.clone(), cusp_rel]))?;
    ensure(core(jac.same_ideal(&want))?, || {
        "cusp Jacobian ideal".into()
    })?;
    ensure(!core(is_smooth(&cusp))?, || "cusp reported smooth".into())?;
    let circle_rel = core(core(xv.pow(2).try_add(&yv.pow(2)))?.try_sub(&MultiPoly::one(2)))?;
    let circle = QuotientAlgebra::new(core(PolyIdeal::new(2, vec![circle_rel]))?);
    ensure(core(is_smooth(&circle))?, || {
        "circle reported singular".into()
    })?;
    minor_law(&cusp, "cusp")?;
    // Graphs y = p(x), z = q(x): quotients isomorphic to K[x].
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..2 {
        let p = random_poly(&mut rng, 1, 3, 3).remap(3, &[0]);
        let q = random_poly(&mut rng, 1, 3, 3).remap(3, &[0]);
        let rels = vec![
            core(MultiPoly::var(3, 1).try_sub(&p))?,
            core(MultiPoly::var(3, 2).try_sub(&q))?,
        ];
        let a = QuotientAlgebra::new(core(PolyIdeal::new(3, rels))?);
        minor_law(&a, &format!("graph {k}"))?;
    }
    Ok(())
}

fn descent() -> Outcome {
    let handle = WeylHandle::new(1);
    let gens = handle.full_generators();
    let delta = core(DeltaFamily::new(&handle, gens.clone()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let budget = Budget::unlimited();
    let mut done = 0;
    while done < 50 {
        let e = {
            let order = rng.gen_range(0..=5);
            random_element(&mut rng, 1, order, 3)
        };
        if e.is_zero() {
            continue;
        }
        done += 1;
        let desc = core(descend_to_constants(&e, &delta, 16, &budget))?;
        let mut cur = e.clone();
        for &j in &desc.word {
            cur = oracle_comm(&gens[j], &cur);
        }
        ensure(cur == desc.element, || {
            format!("word does not reproduce image of {}", e.render())
        })?;
        ensure(cur.is_scalar() && !cur.is_zero(), || {
            format!("descent of {} ended at {}", e.render(), cur.render())
        })?;
    }
    Ok(())
}

fn suites() -> Outcome {
    let budget = Budget::unlimited();
    let bounds = SuiteBounds::default();
    for sub in [Subalgebra::R0, Subalgebra::R1, Subalgebra::R2] {
        let report = core(verify_suite(sub, &bounds, &budget))?;
        for c in &report.checks {
            ensure(c.status == dnilp_core::diffops::CheckStatus::Pass, || {
                format!("{sub} {}: {:?}", c.name, c.notes)
            })?;
            for eq in &c.certificate {
                let lhs = OracleWeyl.parse(&eq.lhs).map_err(|e| e.to_string())?;
                let rhs = OracleWeyl.parse(&eq.rhs).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || {
                    format!("{sub} {}: {} != {}", c.name, eq.lhs, eq.rhs)
                })?;
            }
        }
        if sub == Subalgebra::R1
            && report
                .check("m1-squared")
                .is_none_or(|c| c.certificate.len() < 3)
        {
            return fail("m1-squared lacks certificates for y, h and x");
        }
    }
    let h = WeylElement::h();
    let hd = |i: u32| swap_rewrite_mul(&h, &d().pow(i));
    for i in 0..=5 {
        for j in 0..=5 {
            let lhs = oracle_comm(&hd(i), &hd(j));
            let rhs = hd(i + j).scale(&rat(i as i64 - j as i64));
            ensure(lhs == rhs, || format!("[h d^{i}, h d^{j}]"))?;
        }
    }
    for i in 1..=5u32 {
        let mut cur = d().pow(i);
        for _ in 1..i {
            cur = oracle_comm(&cur, &x());
        }
        let fact: i64 = (1..=i as i64).product();
        ensure(cur == d().scale(&rat(fact)), || {
            format!("(-ad_x)^{} (d^{i})", i - 1)
        })?;
    }
    Ok(())
}

fn annihilators() -> Outcome {
    let pair = core(annihilator_pair(
        &Subalgebra::R0.module_generators(1),
        1,
        &weyl_filtration_basis(1),
    ))?;
    let xi = core(PolyIdeal::new(1, vec![MultiPoly::var(1, 0)]))?;
    ensure(
        core(pair.b.same_ideal(&xi))? && core(pair.c.same_ideal(&xi))?,
        || format!("R0 at i = 1 gives {:?}", pair.render()),
    )?;
    for i in 1..=3 {
        let full = core(annihilator_pair(
            &Subalgebra::A1.module_generators(i),
            i,
            &weyl_filtration_basis(i),
        ))?;
        ensure(core(full.b.is_unit())? && core(full.c.is_unit())?, || {
            format!("full ring at i = {i} gives {:?}", full.render())
        })?;
    }
    Ok(())
}

fn cusp_witness() -> Outcome {
    let curve = MonomialCurve::cusp();
    let xv = MultiPoly::var(2, 0);
    let yv = MultiPoly::var(2, 1);
    let rel = core(yv.pow(2).try_sub(&xv.pow(3)))?;
    let q = QuotientAlgebra::new(core(PolyIdeal::new(2, vec![rel]))?);
    let mut gens = Vec::new();
    for g in core(jacobian_ideal(&q))?.generators() {
        let t = core(curve.pullback(g))?;
        if !t.is_zero() {
            gens.push(t);
        }
    }
    let w = match core(simplicity_witness(
        &curve,
        &gens,
        3,
        8,
        &Budget::unlimited(),
    ))? {
        WitnessOutcome::Found(w) => w,
        WitnessOutcome::NotFound(s) => {
            return fail(format!("no witness within k <= 3, d <= 8: {s:?}"))
        }
    };
    let ctx = dnilp_core::diffops::curve::curve_context();
    let mut total = LocalizedElement::from_weyl(WeylElement::zero(1));
    for t in &w.terms {
        let g = LocalizedElement::from_weyl(WeylElement::from_poly(&gens[t.generator]));
        let prod = core(loc_mul(&core(loc_mul(&t.left, &g, &ctx))?, &t.right, &ctx))?;
        total = core(loc_add(
            &total,
            &dnilp_core::localization::loc_scale(&prod, &t.coefficient),
            &ctx,
        ))?;
    }
    let one = LocalizedElement::from_weyl(WeylElement::one(1));
    ensure(core(loc_eq(&total, &one, &ctx))?, || {
        "certificate does not multiply to 1".into()
    })?;
    for t in &w.terms {
        for s in curve.elements_up_to(40) {
            for u in [&t.left, &t.right] {
                let img = act_on_power(u, s as i64);
                ensure(img.keys().all(|&e| curve.contains(e)), || {
                    "certificate factor leaves the curve algebra".into()
                })?;
            }
        }
    }
    Ok(())
}

fn canonical_actions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for k in 0..200 {
        let n = 1 + k % 2;
        let u = {
            let order = rng.gen_range(0..=4);
            random_element(&mut rng, n, order, 3)
        };
        for exps in exponent_vectors(n, 6) {
            let alpha = Monomial::from_exponents(&exps);
            let direct = core(weyl_act(
                &u,
                &MultiPoly::monomial(n, alpha.clone(), Rat::one()),
            ))?;
            let canon = core(canonical_action(&u, 4, &alpha))?;
            ensure(direct == canon, || format!("{} on x^{exps:?}", u.render()))?;
        }
    }
    Ok(())
}

fn cli() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let n = common::round_trip(&mut rng, 56)?;
    ensure(n >= 500, || format!("only {n} round trips"))?;
    let cases: [(&[&str], i32); 4] = [
        (&["mul", "--algebra", "weyl:1", "d1", "x1"], 0),
        (
            &[
                "witness",
                "--algebra",
                "curve:2,3",
                "--bounds",
                "k=0,d=0",
                "t^2",
            ],
            1,
        ),
        (&["mul", "--algebra", "weyl:1", "x^-1"], 2),
        (
            &["ord", "--budget", "1", "--delta", "x1,d1", "x1^2*d1^3"],
            3,
        ),
    ];
    for (args, want) in cases {
        let (code, out) = common::dnilp(args);
        ensure(code == want, || format!("{args:?} exited {code}: {out}"))?;
    }
    let mut outputs = BTreeMap::new();
    for args in [
        &["verify", "R2", "--bounds", "default"][..],
        &["mul", "d1", "x1"][..],
    ] {
        for _ in 0..2 {
            outputs
                .entry(args.join(" "))
                .or_insert_with(Vec::new)
                .push(common::dnilp(args).1);
        }
    }
    for (k, v) in outputs {
        ensure(v[0] == v[1], || format!("`{k}` is not deterministic"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, u64, fn() -> Outcome)> = vec![
        ("weyl normal-form soundness", 5, weyl_soundness),
        ("standard filtration law", 10, standard_filtration),
        ("leibniz identity", 5, leibniz),
        ("gwa isomorphism", 5, gwa_isomorphism),
        (
            "shift presentation and doubling test double",
            5,
            shift_test_double,
        ),
        ("localization identities", 5, localization_identities),
        (
            "order preservation under localization",
            5,
            order_preservation,
        ),
        ("jacobian machinery", 5, jacobian),
        ("descent to constants", 10, descent),
        ("subalgebra suites", 20, suites),
        ("annihilator ideals", 5, annihilators),
        ("cusp simplicity witness", 60, cusp_witness),
        ("canonical action", 10, canonical_actions),
        ("cli", 10, cli),
    ];
    let mut failures = Vec::new();
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let elapsed = start.elapsed();
        let res = match res {
            Ok(()) if elapsed > Duration::from_secs(limit) => Err(format!(
                "took {:.2}s, limit {limit}s",
                elapsed.as_secs_f64()
            )),
            other => other,
        };
        match &res {
            Ok(()) => println!("PASS {:>2} {name} ({:.2}s)", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                println!(
                    "FAIL {:>2} {name} ({:.2}s): {e}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

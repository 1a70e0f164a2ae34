#![allow(dead_code)]

use std::process::Command;

use dnilp::algebra::{select, Algebra, AnyAlgebra};
use dnilp_core::diffops::curve::laurent_term;
use dnilp_core::filtration::AlgebraHandle;
use dnilp_core::localization::{canonicalize, loc_add, LocalizedHandle};
use dnilp_core::poly::{rat, Monomial};
use dnilp_core::skew::{GwaHandle, OreElement};
use dnilp_core::weyl::random_element;
use dnilp_core::MultiPoly;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Runs the built binary and returns (exit code, stdout).
pub fn dnilp(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dnilp"))
        .args(args)
        .env_remove("DNILP_BUDGET")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

fn random_poly(rng: &mut ChaCha8Rng, m: usize, deg: u32) -> MultiPoly {
    let mut p = MultiPoly::zero(m);
    for _ in 0..3 {
        let e: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=deg)).collect();
        let c = rat(rng.gen_range(-5..=5)) / rat(rng.gen_range(1..=3));
        p.add_term(Monomial::from_exponents(&e), c);
    }
    p
}

fn check<A: Algebra>(a: &A, e: &A::V) -> Result<(), String> {
    let text = a.render(e);
    let back = a
        .parse(&text)
        .map_err(|err| format!("{}: `{text}`: {err}", a.selector()))?;
    if back == *e {
        Ok(())
    } else {
        Err(format!(
            "{}: `{text}` re-rendered as `{}`",
            a.selector(),
            a.render(&back)
        ))
    }
}

/// Renders and re-parses `per` random elements in each algebra; returns the
/// number checked or the first mismatch.
pub fn round_trip(rng: &mut ChaCha8Rng, per: usize) -> Result<usize, String> {
    let selectors = [
        "weyl:1",
        "weyl:2",
        "weyl:3",
        "loc:x",
        "curve:2,3",
        "gwa:weyl",
        "gwa:r1",
        "ore:weyl",
        "poly:x,y,z",
    ];
    let mut count = 0;
    for sel in selectors {
        let alg = select(sel, None).map_err(|e| e.to_string())?;
        for _ in 0..per {
            match &alg {
                AnyAlgebra::Weyl(a) => {
                    let order = rng.gen_range(0..=5);
                    check(a, &random_element(rng, a.n, order, 4))?
                }
                AnyAlgebra::Loc(a) if a.curve.is_none() => {
                    let h = LocalizedHandle::new(a.ctx.clone());
                    check(a, &h.sample(rng, 3))?
                }
                AnyAlgebra::Loc(a) => {
                    let mut e = laurent_term(0, 0, rat(0));
                    for _ in 0..3 {
                        let t = laurent_term(
                            rng.gen_range(-3..=4),
                            rng.gen_range(0..=3),
                            rat(rng.gen_range(-4..=4)),
                        );
                        e = loc_add(&e, &t, &a.ctx).map_err(|e| e.to_string())?;
                    }
                    let e = canonicalize(&e, &a.ctx).map_err(|e| e.to_string())?;
                    check(a, &e)?
                }
                AnyAlgebra::Gwa(a) => {
                    let h = GwaHandle::new(a.presentation.clone());
                    check(a, &h.sample(rng, 3))?
                }
                AnyAlgebra::Ore(a) => {
                    let p = &a.presentation;
                    let mut terms = std::collections::BTreeMap::new();
                    for _ in 0..3 {
                        let alpha = vec![rng.gen_range(0..=3)];
                        let c = random_poly(rng, 1, 3);
                        if !c.is_zero() {
                            terms.insert(alpha, c);
                        }
                    }
                    let e = OreElement::from_terms(p, terms).map_err(|e| e.to_string())?;
                    check(a, &e)?
                }
                AnyAlgebra::Poly(a) => check(a, &random_poly(rng, a.names.len(), 4))?,
            }
            count += 1;
        }
    }
    Ok(count)
}

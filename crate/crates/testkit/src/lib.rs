//! Independent reference implementations used only by tests.
//!
//! Nothing here shares code paths with the kernel's fast routines: products
//! are computed by rewriting words one adjacent pair at a time.

use std::collections::BTreeMap;

use dnilp_core::poly::{DerivationSpec, Monomial, MultiPoly, Rat};
use dnilp_core::weyl::{WeylElement, WeylMonomial};
use num_traits::Zero;

/// A letter of a Weyl word: `X(i)` is `x_i`, `D(i)` is `d_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    X(usize),
    D(usize),
}

fn word_of(m: &WeylMonomial) -> Vec<Letter> {
    let mut w = Vec::new();
    for (i, e) in m.x.iter() {
        w.extend(std::iter::repeat_n(Letter::X(i), e as usize));
    }
    for (i, e) in m.d.iter() {
        w.extend(std::iter::repeat_n(Letter::D(i), e as usize));
    }
    w
}

/// A word is normal when every `X` precedes every `D` and indices ascend
/// within each block.
fn first_violation(w: &[Letter]) -> Option<usize> {
    (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1])
}

/// Product `uv` by repeated single adjacent swaps `d_i x_i → x_i d_i + 1`
/// (and plain swaps of commuting letters) until every word is normal.
pub fn swap_rewrite_mul(u: &WeylElement, v: &WeylElement) -> WeylElement {
    let n = u.rank();
    // Identical words are merged while pending; each step is still a single
    // adjacent rewrite.
    let mut pending: BTreeMap<Vec<Letter>, Rat> = BTreeMap::new();
    let push = |pending: &mut BTreeMap<Vec<Letter>, Rat>, w: Vec<Letter>, c: Rat| {
        let e = pending.entry(w.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            pending.remove(&w);
        }
    };
    for (m1, c1) in u.terms() {
        for (m2, c2) in v.terms() {
            let mut w = word_of(m1);
            w.extend(word_of(m2));
            push(&mut pending, w, c1 * c2);
        }
    }
    let mut done: BTreeMap<Vec<Letter>, Rat> = BTreeMap::new();
    while let Some((w, c)) = pending.pop_last() {
        match first_violation(&w) {
            None => {
                let e = done.entry(w).or_insert_with(Rat::zero);
                *e += c;
            }
            Some(k) => {
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                if let (Letter::D(i), Letter::X(j)) = (w[k], w[k + 1]) {
                    if i == j {
                        let mut shorter = w.clone();
                        shorter.drain(k..k + 2);
                        push(&mut pending, shorter, c.clone());
                    }
                }
                push(&mut pending, swapped, c);
            }
        }
    }
    let mut out = WeylElement::zero(n);
    for (w, c) in done {
        let mut xs = vec![0u32; n];
        let mut ds = vec![0u32; n];
        for l in w {
            match l {
                Letter::X(i) => xs[i] += 1,
                Letter::D(i) => ds[i] += 1,
            }
        }
        out.add_term(
            WeylMonomial::new(Monomial::from_exponents(&xs), Monomial::from_exponents(&ds)),
            c,
        );
    }
    out
}

/// Letter of an Ore word over a commutative polynomial base: a base element
/// or one of the adjoined variables.
#[derive(Clone, Debug, PartialEq, Eq)]
enum OreLetter {
    Base(MultiPoly),
    Var(usize),
}

/// Product of `Σ a_α x^α` elements in `Q[t_1..t_m][x_1..x_n; δ]` by rewriting
/// `x_i a → a x_i + δ_i(a)` one letter at a time. Elements are maps from
/// exponent vectors to left coefficients.
pub fn ore_rewrite_mul(
    derivations: &[DerivationSpec],
    u: &BTreeMap<Vec<u32>, MultiPoly>,
    v: &BTreeMap<Vec<u32>, MultiPoly>,
) -> BTreeMap<Vec<u32>, MultiPoly> {
    let n = derivations.len();
    let nbase = derivations.first().map_or(0, DerivationSpec::nvars);
    let mut pending: Vec<Vec<OreLetter>> = Vec::new();
    let expand = |alpha: &Vec<u32>, a: &MultiPoly| {
        let mut w = vec![OreLetter::Base(a.clone())];
        for (i, &e) in alpha.iter().enumerate() {
            w.extend(std::iter::repeat_n(OreLetter::Var(i), e as usize));
        }
        w
    };
    for (a1, c1) in u {
        for (a2, c2) in v {
            let mut w = expand(a1, c1);
            w.extend(expand(a2, c2));
            pending.push(w);
        }
    }
    let mut out: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
    while let Some(w) = pending.pop() {
        let pos = (0..w.len().saturating_sub(1)).find(|&k| match (&w[k], &w[k + 1]) {
            (OreLetter::Var(_), OreLetter::Base(_)) => true,
            (OreLetter::Base(_), OreLetter::Base(_)) => true,
            (OreLetter::Var(i), OreLetter::Var(j)) => i > j,
            _ => false,
        });
        let Some(k) = pos else {
            let mut coeff = MultiPoly::one(nbase);
            let mut alpha = vec![0u32; n];
            for l in w {
                match l {
                    OreLetter::Base(p) => coeff = &coeff * &p,
                    OreLetter::Var(i) => alpha[i] += 1,
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let e = out.entry(alpha).or_insert_with(|| MultiPoly::zero(nbase));
            *e = &*e + &coeff;
            continue;
        };
        match (&w[k], &w[k + 1]) {
            (OreLetter::Base(a), OreLetter::Base(b)) => {
                let mut merged = w[..k].to_vec();
                merged.push(OreLetter::Base(a * b));
                merged.extend_from_slice(&w[k + 2..]);
                pending.push(merged);
            }
            (OreLetter::Var(i), OreLetter::Base(a)) => {
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                pending.push(swapped);
                let da = derivations[*i].apply(a).expect("compatible");
                if !da.is_zero() {
                    let mut replaced = w[..k].to_vec();
                    replaced.push(OreLetter::Base(da));
                    replaced.extend_from_slice(&w[k + 2..]);
                    pending.push(replaced);
                }
            }
            _ => {
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                pending.push(swapped);
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// `σ(p)(h) = p(h + s)` computed by expanding binomials term by term, used to
/// cross-check shift automorphisms.
pub fn shift_univariate(p: &MultiPoly, s: &Rat) -> MultiPoly {
    let h = MultiPoly::var(1, 0);
    let shifted = &h + &MultiPoly::constant(1, s.clone());
    let mut out = MultiPoly::zero(1);
    for (m, c) in p.terms() {
        let mut term = MultiPoly::constant(1, c.clone());
        for _ in 0..m.exponent(0) {
            term = &term * &shifted;
        }
        out = &out + &term;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_rewriter_basics() {
        let x = WeylElement::x(1, 0);
        let d = WeylElement::d(1, 0);
        let r = swap_rewrite_mul(&d.pow(2), &x.pow(2));
        assert_eq!(r.render(), "x1^2*d1^2 + 4*x1*d1 + 2");
        assert_eq!(swap_rewrite_mul(&d, &x).render(), "x1*d1 + 1");
    }

    #[test]
    fn ore_rewriter_basics() {
        let t = MultiPoly::var(1, 0);
        let dd = vec![DerivationSpec::partial(1, 0)];
        let x: BTreeMap<_, _> = [(vec![1], MultiPoly::one(1))].into_iter().collect();
        let tt: BTreeMap<_, _> = [(vec![0], t.clone())].into_iter().collect();
        let r = ore_rewrite_mul(&dd, &x, &tt);
        assert_eq!(r.get(&vec![1]), Some(&t));
        assert_eq!(r.get(&vec![0]), Some(&MultiPoly::one(1)));
    }
}

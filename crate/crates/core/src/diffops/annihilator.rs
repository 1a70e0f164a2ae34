//! Left and right annihilators over `K[x]` of `D_i / R_i` for subalgebras
//! `R ⊆ A_1`, by echelon forms over the principal ideal domain `K[x]`.

use std::collections::BTreeMap;

use crate::commalg::PolyIdeal;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::weyl::{ad_power, WeylElement};

#[derive(Clone, Debug)]
pub struct AnnihilatorPair {
    /// `{p : p D_i ⊆ R_i}`.
    pub b: PolyIdeal,
    /// `{p : D_i p ⊆ R_i}`.
    pub c: PolyIdeal,
}

impl AnnihilatorPair {
    pub fn render(&self) -> Result<(String, String)> {
        let names = vec!["x1".to_string()];
        Ok((self.b.render(&names)?, self.c.render(&names)?))
    }
}

fn to_vector(
    coeffs: BTreeMap<Monomial, MultiPoly>,
    i: u32,
    e: &WeylElement,
) -> Result<Vec<MultiPoly>> {
    let mut v = vec![MultiPoly::zero(1); i as usize + 1];
    for (m, p) in coeffs {
        let j = m.exponent(0);
        if j > i {
            return Err(Error::structural(format!(
                "{} has order above {i}",
                e.render()
            )));
        }
        v[j as usize] = p;
    }
    Ok(v)
}

fn degree(p: &MultiPoly) -> u32 {
    p.total_degree().unwrap_or(0)
}

/// Row echelon form over `K[x]` on the first `prefix` columns; returns the
/// index of the first row whose prefix is zero.
fn echelon(rows: &mut [Vec<MultiPoly>], prefix: usize) -> Result<usize> {
    let mut pivot = 0;
    for col in 0..prefix {
        loop {
            let best = (pivot..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by_key(|&r| degree(&rows[r][col]));
            let Some(best) = best else { break };
            rows.swap(pivot, best);
            let mut clean = true;
            for r in pivot + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let (q, rem) = rows[r][col].uni_div_rem(&rows[pivot][col])?;
                for k in 0..rows[r].len() {
                    let sub = q.try_mul(&rows[pivot][k])?;
                    rows[r][k] = rows[r][k].try_sub(&sub)?;
                }
                clean &= rem.is_zero();
            }
            if clean {
                pivot += 1;
                break;
            }
        }
    }
    Ok(pivot)
}

/// Generator of `{p : p·target ∈ span(module)}` (zero for the zero ideal).
fn colon(module: &[Vec<MultiPoly>], target: &[MultiPoly]) -> Result<MultiPoly> {
    let n = target.len();
    let mut rows: Vec<Vec<MultiPoly>> = module
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.push(MultiPoly::zero(1));
            r
        })
        .collect();
    let mut t = target.to_vec();
    t.push(MultiPoly::one(1));
    rows.push(t);
    let start = echelon(&mut rows, n)?;
    let mut g = MultiPoly::zero(1);
    for r in &rows[start..] {
        g = g.uni_gcd(&r[n])?;
    }
    Ok(g)
}

fn lcm(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    if a.is_zero() || b.is_zero() {
        return Ok(MultiPoly::zero(1));
    }
    let g = a.uni_gcd(b)?;
    let (q, _) = a.try_mul(b)?.uni_div_rem(&g)?;
    Ok(q.monic())
}

fn annihilator(module: &[Vec<MultiPoly>], targets: &[Vec<MultiPoly>]) -> Result<PolyIdeal> {
    let mut acc = MultiPoly::one(1);
    for t in targets {
        acc = lcm(&acc, &colon(module, t)?)?;
    }
    if acc.is_zero() {
        Ok(PolyIdeal::zero(1))
    } else {
        PolyIdeal::new(1, vec![acc])
    }
}

fn check_rank(list: &[WeylElement]) -> Result<()> {
    if list.iter().any(|e| e.rank() != 1) {
        return Err(Error::structural("annihilators are computed inside A_1"));
    }
    Ok(())
}

/// `r_gens` must generate `R ∩ D_i` as a left `K[x]`-module; `d_basis`
/// generates `D_i`. Right generators are obtained from `ad_x`-images,
/// since `x^m g = Σ C(m,l) ad_x^l(g) x^(m-l)`.
pub fn annihilator_pair(
    r_gens: &[WeylElement],
    i: u32,
    d_basis: &[WeylElement],
) -> Result<AnnihilatorPair> {
    check_rank(r_gens)?;
    check_rank(d_basis)?;
    if d_basis.is_empty() {
        return Err(Error::structural("empty basis for D_i"));
    }
    let left_module = r_gens
        .iter()
        .map(|g| to_vector(g.left_coefficients(), i, g))
        .collect::<Result<Vec<_>>>()?;
    let left_targets = d_basis
        .iter()
        .map(|g| to_vector(g.left_coefficients(), i, g))
        .collect::<Result<Vec<_>>>()?;
    let x = WeylElement::x(1, 0);
    let mut right_gens = Vec::new();
    for g in r_gens {
        for l in 0..=i as usize {
            let a = ad_power(&x, l, g)?;
            if !a.is_zero() {
                right_gens.push(a);
            }
        }
    }
    let right_module = right_gens
        .iter()
        .map(|g| to_vector(g.right_coefficients(), i, g))
        .collect::<Result<Vec<_>>>()?;
    let right_targets = d_basis
        .iter()
        .map(|g| to_vector(g.right_coefficients(), i, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnnihilatorPair {
        b: annihilator(&left_module, &left_targets)?,
        c: annihilator(&right_module, &right_targets)?,
    })
}

/// `{1, d, ..., d^i}`.
pub fn weyl_filtration_basis(i: u32) -> Vec<WeylElement> {
    (0..=i).map(|j| WeylElement::xd(0, j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> WeylElement {
        WeylElement::h()
    }
    fn ideal(p: MultiPoly) -> PolyIdeal {
        PolyIdeal::new(1, vec![p]).unwrap()
    }
    fn x() -> MultiPoly {
        MultiPoly::var(1, 0)
    }

    #[test]
    fn r0_at_order_one() {
        let one = WeylElement::one(1);
        let p = annihilator_pair(&[one, h()], 1, &weyl_filtration_basis(1)).unwrap();
        assert!(p.b.same_ideal(&ideal(x())).unwrap());
        assert!(p.c.same_ideal(&ideal(x())).unwrap());
        assert_eq!(
            p.render().unwrap(),
            ("ideal(x1)".to_string(), "ideal(x1)".to_string())
        );
    }

    #[test]
    fn r0_at_order_two() {
        let gens = vec![WeylElement::one(1), h(), h().pow(2)];
        let p = annihilator_pair(&gens, 2, &weyl_filtration_basis(2)).unwrap();
        assert!(p.b.same_ideal(&ideal(x().pow(2))).unwrap());
        assert!(p.c.same_ideal(&ideal(x().pow(2))).unwrap());
    }

    #[test]
    fn full_ring_gives_unit_ideals() {
        for i in 0..4 {
            let b = weyl_filtration_basis(i);
            let p = annihilator_pair(&b, i, &b).unwrap();
            assert!(p.b.is_unit().unwrap());
            assert!(p.c.is_unit().unwrap());
        }
    }

    #[test]
    fn missing_direction_gives_zero() {
        let p = annihilator_pair(&[WeylElement::one(1)], 1, &weyl_filtration_basis(1)).unwrap();
        assert!(p.b.is_zero_ideal());
        assert!(p.c.is_zero_ideal());
    }

    #[test]
    fn order_too_high_is_structural() {
        let err = annihilator_pair(&[h().pow(2)], 1, &weyl_filtration_basis(1)).unwrap_err();
        assert_eq!(err.kind(), "structural");
    }
}

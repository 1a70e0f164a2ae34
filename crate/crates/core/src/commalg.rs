//! Commutative ideal theory for `P_n = Q[x_1..x_n]`: Gröbner bases, quotient
//! algebras, Jacobi matrices and the Jacobian ideal.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::poly::{default_names, DerivationSpec, Monomial, MultiPoly, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Grlex,
    Lex,
}

/// A monomial order. `priority[0]` is the most significant variable; the
/// identity priority makes `x1 > x2 > …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn grlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Grlex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            priority: (0..nvars).collect(),
        }
    }

    /// `priority` must be a permutation of `0..n`.
    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut sorted = priority.clone();
        sorted.sort_unstable();
        if sorted != (0..priority.len()).collect::<Vec<_>>() {
            return Err(Error::structural("variable priority is not a permutation"));
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let lex = || {
            for &v in &self.priority {
                match a.exponent(v).cmp(&b.exponent(v)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        };
        match self.kind {
            OrderKind::Grlex => a.total_degree().cmp(&b.total_degree()).then_with(lex),
            OrderKind::Lex => lex(),
        }
    }

    pub fn leading(&self, p: &MultiPoly) -> Option<(Monomial, Rat)> {
        p.terms()
            .iter()
            .max_by(|x, y| self.cmp(x.0, y.0))
            .map(|(m, c)| (m.clone(), c.clone()))
    }
}

/// Full reduction of `p` by `basis`: no term of the remainder is divisible by
/// a leading monomial of the basis.
pub fn reduce(p: &MultiPoly, basis: &[MultiPoly], order: &MonomialOrder) -> MultiPoly {
    let leads: Vec<(Monomial, Rat)> = basis.iter().filter_map(|g| order.leading(g)).collect();
    let mut rest = p.clone();
    let mut rem = MultiPoly::zero(p.nvars());
    while let Some((m, c)) = order.leading(&rest) {
        let hit = leads
            .iter()
            .zip(basis.iter().filter(|g| !g.is_zero()))
            .find_map(|((lm, lc), g)| lm.quotient_of(&m).map(|q| (q, lc, g)));
        match hit {
            Some((q, lc, g)) => {
                rest = &rest - &g.mul_monomial(&q, &(&c / lc));
            }
            None => {
                rem.add_term(m.clone(), c.clone());
                rest.add_term(m, -c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: &MonomialOrder) -> MultiPoly {
    let (fm, fc) = order.leading(f).expect("nonzero");
    let (gm, gc) = order.leading(g).expect("nonzero");
    let l = fm.lcm(&gm);
    let a = f.mul_monomial(&fm.quotient_of(&l).unwrap(), &(Rat::one() / fc));
    let b = g.mul_monomial(&gm.quotient_of(&l).unwrap(), &(Rat::one() / gc));
    &a - &b
}

/// Buchberger's algorithm with the coprime-leading-monomial criterion,
/// returning the reduced, monic basis sorted by descending leading monomial.
/// One budget step is charged per S-polynomial reduction.
pub fn buchberger(
    gens: &[MultiPoly],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<MultiPoly>> {
    let mut basis: Vec<MultiPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| monic(g, order))
        .collect();
    let mut pairs: VecDeque<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop_front() {
        let (li, _) = order.leading(&basis[i]).unwrap();
        let (lj, _) = order.leading(&basis[j]).unwrap();
        if li.is_coprime(&lj) {
            continue;
        }
        budget.charge(1, "Gröbner basis computation")?;
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        let k = basis.len();
        basis.push(monic(&r, order));
        if r.is_constant() {
            return Ok(vec![MultiPoly::one(r.nvars())]);
        }
        pairs.extend((0..k).map(|i| (i, k)));
    }
    Ok(reduce_basis(basis, order))
}

fn monic(p: &MultiPoly, order: &MonomialOrder) -> MultiPoly {
    match order.leading(p) {
        Some((_, c)) => p.scale(&(Rat::one() / c)),
        None => p.clone(),
    }
}

fn reduce_basis(mut basis: Vec<MultiPoly>, order: &MonomialOrder) -> Vec<MultiPoly> {
    basis.sort_by(|a, b| order.cmp(&order.leading(a).unwrap().0, &order.leading(b).unwrap().0));
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for g in basis {
        let lg = order.leading(&g).unwrap().0;
        if minimal
            .iter()
            .any(|h| order.leading(h).unwrap().0.divides(&lg))
        {
            continue;
        }
        minimal.push(g);
    }
    let mut out: Vec<MultiPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<MultiPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let (lm, lc) = order.leading(&minimal[i]).unwrap();
            let tail = {
                let mut t = minimal[i].clone();
                t.add_term(lm.clone(), -lc);
                t
            };
            let mut g = reduce(&tail, &others, order);
            g.add_term(lm, Rat::one());
            g
        })
        .collect();
    out.sort_by(|a, b| order.cmp(&order.leading(b).unwrap().0, &order.leading(a).unwrap().0));
    out
}

/// An ideal of `P_n` with a write-once cache of its reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct PolyIdeal {
    nvars: usize,
    generators: Vec<MultiPoly>,
    order: MonomialOrder,
    basis: OnceLock<Vec<MultiPoly>>,
}

impl PolyIdeal {
    pub fn new(nvars: usize, generators: Vec<MultiPoly>) -> Result<Self> {
        Self::with_order(nvars, generators, MonomialOrder::grlex(nvars))
    }

    pub fn with_order(
        nvars: usize,
        generators: Vec<MultiPoly>,
        order: MonomialOrder,
    ) -> Result<Self> {
        if order.nvars() != nvars {
            return Err(Error::structural("monomial order has wrong variable count"));
        }
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::structural(format!(
                "generator in {} variables for an ideal of P_{nvars}",
                g.nvars()
            )));
        }
        let generators = if generators.is_empty() {
            vec![MultiPoly::zero(nvars)]
        } else {
            generators
        };
        Ok(PolyIdeal {
            nvars,
            generators,
            order,
            basis: OnceLock::new(),
        })
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(nvars, Vec::new()).expect("consistent")
    }

    pub fn unit(nvars: usize) -> Self {
        Self::new(nvars, vec![MultiPoly::one(nvars)]).expect("consistent")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.iter().all(MultiPoly::is_zero)
    }

    /// The reduced Gröbner basis, computed on first use under `budget`.
    pub fn groebner(&self, budget: &Budget) -> Result<&[MultiPoly]> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = buchberger(&self.generators, &self.order, budget)?;
        Ok(self.basis.get_or_init(|| b))
    }

    /// [`groebner`](Self::groebner) with the environment-configured budget.
    pub fn basis(&self) -> Result<&[MultiPoly]> {
        self.groebner(&Budget::from_env())
    }

    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.nvars {
            return Err(Error::structural(format!(
                "polynomial in {} variables reduced modulo an ideal of P_{}",
                p.nvars(),
                self.nvars
            )));
        }
        Ok(reduce(p, self.basis()?, &self.order))
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.contains(&MultiPoly::one(self.nvars))
    }

    /// Same ideal as `other`, compared through reduced bases.
    pub fn same_ideal(&self, other: &PolyIdeal) -> Result<bool> {
        let a = buchberger(self.basis()?, &self.order, &Budget::from_env())?;
        let b = buchberger(other.basis()?, &self.order, &Budget::from_env())?;
        Ok(a == b)
    }

    pub fn render(&self, names: &[String]) -> Result<String> {
        let gens: Vec<String> = self.basis()?.iter().map(|g| g.render(names)).collect();
        Ok(format!("ideal({})", gens.join(", ")))
    }
}

pub fn groebner(ideal: &PolyIdeal) -> Result<Vec<MultiPoly>> {
    Ok(ideal.basis()?.to_vec())
}

pub fn ideal_contains(ideal: &PolyIdeal, p: &MultiPoly) -> Result<bool> {
    ideal.contains(p)
}

/// `A = P_n / I` with normal forms as canonical representatives.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    relations: PolyIdeal,
    names: Vec<String>,
}

impl QuotientAlgebra {
    pub fn new(relations: PolyIdeal) -> Self {
        let names = default_names(relations.nvars());
        QuotientAlgebra { relations, names }
    }

    pub fn polynomial_ring(nvars: usize) -> Self {
        Self::new(PolyIdeal::zero(nvars))
    }

    pub fn with_names(relations: PolyIdeal, names: Vec<String>) -> Result<Self> {
        if names.len() != relations.nvars() {
            return Err(Error::structural("one name per variable required"));
        }
        Ok(QuotientAlgebra { relations, names })
    }

    pub fn nvars(&self) -> usize {
        self.relations.nvars()
    }

    pub fn relations(&self) -> &PolyIdeal {
        &self.relations
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        self.relations.normal_form(p)
    }

    pub fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        self.normal_form(&a.try_mul(b)?)
    }

    pub fn equal(&self, a: &MultiPoly, b: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(&a.try_sub(b)?)?.is_zero())
    }
}

pub fn normal_form(p: &MultiPoly, a: &QuotientAlgebra) -> Result<MultiPoly> {
    a.normal_form(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiMatrix {
    pub entries: Vec<Vec<MultiPoly>>,
    pub reduced: Vec<Vec<MultiPoly>>,
}

impl JacobiMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }
}

pub fn jacobi_matrix(a: &QuotientAlgebra) -> Result<JacobiMatrix> {
    let n = a.nvars();
    let gens: Vec<&MultiPoly> = a
        .relations()
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .collect();
    let mut entries = Vec::new();
    let mut reduced = Vec::new();
    for f in gens {
        let row: Vec<MultiPoly> = (0..n)
            .map(|j| f.partial_derivative(j))
            .collect::<Result<_>>()?;
        let red = row
            .iter()
            .map(|p| a.normal_form(p))
            .collect::<Result<_>>()?;
        entries.push(row);
        reduced.push(red);
    }
    Ok(JacobiMatrix { entries, reduced })
}

fn determinant(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    match m.len() {
        0 => MultiPoly::one(nvars),
        1 => m[0][0].clone(),
        k => {
            let mut acc = MultiPoly::zero(nvars);
            for c in 0..k {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * &determinant(&minor, nvars);
                acc = if c % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        go(0, n, r, &mut Vec::new(), &mut out);
    }
    out
}

fn minor(j: &JacobiMatrix, rows: &[usize], cols: &[usize], nvars: usize) -> MultiPoly {
    let sub: Vec<Vec<MultiPoly>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| j.entries[r][c].clone()).collect())
        .collect();
    determinant(&sub, nvars)
}

/// The largest `r` such that some `r × r` minor is nonzero modulo `I`.
pub fn jacobi_rank(j: &JacobiMatrix, a: &QuotientAlgebra) -> Result<usize> {
    let top = j.rows().min(j.cols());
    for r in (1..=top).rev() {
        for rows in combinations(j.rows(), r) {
            for cols in combinations(j.cols(), r) {
                let m = minor(j, &rows, &cols, a.nvars());
                if !a.normal_form(&m)?.is_zero() {
                    return Ok(r);
                }
            }
        }
    }
    Ok(0)
}

/// All `r × r` minors (row tuple, column tuple, minor mod `I`) with 0-based
/// indices, plus the row tuples `I_r` and column tuples `J_r` that occur in a
/// nonzero minor.
#[derive(Clone, Debug)]
pub struct Minors {
    pub minors: Vec<(Vec<usize>, Vec<usize>, MultiPoly)>,
    pub row_tuples: BTreeSet<Vec<usize>>,
    pub col_tuples: BTreeSet<Vec<usize>>,
}

pub fn minors_and_tuples(j: &JacobiMatrix, a: &QuotientAlgebra, r: usize) -> Result<Minors> {
    if r > j.rows() || r > j.cols() {
        return Err(Error::structural(format!(
            "rank {r} exceeds a {}x{} matrix",
            j.rows(),
            j.cols()
        )));
    }
    let mut out = Minors {
        minors: Vec::new(),
        row_tuples: BTreeSet::new(),
        col_tuples: BTreeSet::new(),
    };
    if r == 0 {
        return Ok(out);
    }
    for rows in combinations(j.rows(), r) {
        for cols in combinations(j.cols(), r) {
            let m = a.normal_form(&minor(j, &rows, &cols, a.nvars()))?;
            if !m.is_zero() {
                out.row_tuples.insert(rows.clone());
                out.col_tuples.insert(cols.clone());
            }
            out.minors.push((rows.clone(), cols, m));
        }
    }
    Ok(out)
}

/// The Jacobian ideal, as an ideal of `P_n` containing `I`. It is the unit
/// ideal when `I = 0` or the rank is zero.
pub fn jacobian_ideal(a: &QuotientAlgebra) -> Result<PolyIdeal> {
    let n = a.nvars();
    let order = a.relations().order().clone();
    if a.relations().is_zero_ideal() {
        return PolyIdeal::with_order(n, vec![MultiPoly::one(n)], order);
    }
    let j = jacobi_matrix(a)?;
    let r = jacobi_rank(&j, a)?;
    if r == 0 {
        return PolyIdeal::with_order(n, vec![MultiPoly::one(n)], order);
    }
    let mut gens: Vec<MultiPoly> = minors_and_tuples(&j, a, r)?
        .minors
        .into_iter()
        .map(|(_, _, m)| m)
        .filter(|m| !m.is_zero())
        .collect();
    gens.extend(a.relations().generators().iter().cloned());
    PolyIdeal::with_order(n, gens, order)
}

pub fn is_smooth(a: &QuotientAlgebra) -> Result<bool> {
    jacobian_ideal(a)?.is_unit()
}

/// True iff `δ(g)` lies in the ideal for every generator `g` and every `δ`.
pub fn derivation_stable(ideal: &PolyIdeal, ds: &[DerivationSpec]) -> Result<bool> {
    for d in ds {
        for g in ideal.generators() {
            if !ideal.contains(&d.apply(g)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;

    fn x() -> MultiPoly {
        MultiPoly::var(2, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(2, 1)
    }
    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(2, rat(v))
    }
    fn cusp() -> MultiPoly {
        &y().pow(2) - &x().pow(3)
    }
    fn circle() -> MultiPoly {
        &(&x().pow(2) + &y().pow(2)) - &c(1)
    }
    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }
    fn quotient(gens: Vec<MultiPoly>) -> QuotientAlgebra {
        QuotientAlgebra::with_names(PolyIdeal::new(2, gens).unwrap(), names()).unwrap()
    }

    #[test]
    fn groebner_examples() {
        let i = PolyIdeal::new(2, vec![x()]).unwrap();
        assert_eq!(groebner(&i).unwrap(), vec![x()]);
        let i = PolyIdeal::new(2, vec![cusp()]).unwrap();
        assert_eq!(groebner(&i).unwrap(), vec![&x().pow(3) - &y().pow(2)]);
        let i = PolyIdeal::new(2, vec![&(&x() * &y()) - &c(1), x().pow(2)]).unwrap();
        assert_eq!(groebner(&i).unwrap(), vec![c(1)]);
    }

    #[test]
    fn normal_form_examples() {
        // Under grlex the leading term of y^2 - x^3 is x^3, so y^2 is reduced.
        let grlex = quotient(vec![cusp()]);
        assert_eq!(grlex.normal_form(&y().pow(2)).unwrap(), y().pow(2));
        assert_eq!(grlex.normal_form(&x().pow(3)).unwrap(), y().pow(2));
        let lex_y = MonomialOrder::with_priority(OrderKind::Lex, vec![1, 0]).unwrap();
        let lex = QuotientAlgebra::new(PolyIdeal::with_order(2, vec![cusp()], lex_y).unwrap());
        assert_eq!(lex.normal_form(&y().pow(2)).unwrap(), x().pow(3));
        assert!(grlex.normal_form(&MultiPoly::zero(2)).unwrap().is_zero());
        assert_eq!(grlex.normal_form(&x()).unwrap(), x());
    }

    #[test]
    fn membership_examples() {
        let i = PolyIdeal::new(2, vec![x(), &x() - &c(1)]).unwrap();
        assert!(ideal_contains(&i, &c(1)).unwrap());
        let i = PolyIdeal::new(2, vec![x()]).unwrap();
        assert!(!ideal_contains(&i, &y()).unwrap());
        let i = PolyIdeal::new(2, vec![x().pow(2).scale(&rat(3)), y().scale(&rat(2))]).unwrap();
        assert!(ideal_contains(&i, &(&x().pow(2) * &y())).unwrap());
    }

    #[test]
    fn jacobi_examples() {
        let a = quotient(vec![cusp()]);
        let j = jacobi_matrix(&a).unwrap();
        assert_eq!(
            j.entries,
            vec![vec![x().pow(2).scale(&rat(-3)), y().scale(&rat(2))]]
        );
        assert_eq!(jacobi_rank(&j, &a).unwrap(), 1);
        let m = minors_and_tuples(&j, &a, 1).unwrap();
        assert_eq!(m.minors.len(), 2);
        assert_eq!(m.row_tuples, [vec![0]].into_iter().collect());
        assert_eq!(m.col_tuples, [vec![0], vec![1]].into_iter().collect());
        assert!(minors_and_tuples(&j, &a, 2).is_err());
        assert!(minors_and_tuples(&j, &a, 0).unwrap().minors.is_empty());

        let line = QuotientAlgebra::new(PolyIdeal::new(1, vec![MultiPoly::var(1, 0)]).unwrap());
        let j = jacobi_matrix(&line).unwrap();
        assert_eq!(j.entries, vec![vec![MultiPoly::one(1)]]);

        let circ = quotient(vec![circle()]);
        let j = jacobi_matrix(&circ).unwrap();
        assert_eq!(
            j.entries,
            vec![vec![x().scale(&rat(2)), y().scale(&rat(2))]]
        );
        assert_eq!(jacobi_rank(&j, &circ).unwrap(), 1);
    }

    #[test]
    fn jacobian_ideals_and_smoothness() {
        let a = quotient(vec![cusp()]);
        let expected = PolyIdeal::new(2, vec![x().pow(2), y(), cusp()]).unwrap();
        assert!(jacobian_ideal(&a).unwrap().same_ideal(&expected).unwrap());
        assert!(!is_smooth(&a).unwrap());
        assert!(is_smooth(&quotient(vec![circle()])).unwrap());
        assert!(jacobian_ideal(&QuotientAlgebra::polynomial_ring(2))
            .unwrap()
            .is_unit()
            .unwrap());
        let t = MultiPoly::var(1, 0);
        let line = QuotientAlgebra::new(PolyIdeal::new(1, vec![&t - &MultiPoly::one(1)]).unwrap());
        assert!(is_smooth(&line).unwrap());
    }

    #[test]
    fn jacobian_ideal_ignores_redundant_generators() {
        let a = quotient(vec![cusp()]);
        let b = quotient(vec![cusp(), &x() * &cusp()]);
        assert_eq!(
            jacobian_ideal(&a).unwrap().basis().unwrap(),
            jacobian_ideal(&b).unwrap().basis().unwrap()
        );
    }

    #[test]
    fn stability_examples() {
        let t = MultiPoly::var(1, 0);
        let euler = DerivationSpec::new(vec![t.clone()]).unwrap();
        for i in 1..5 {
            let ideal = PolyIdeal::new(1, vec![t.pow(i)]).unwrap();
            assert!(derivation_stable(&ideal, std::slice::from_ref(&euler)).unwrap());
        }
        let ideal = PolyIdeal::new(1, vec![&t - &MultiPoly::one(1)]).unwrap();
        assert!(!derivation_stable(&ideal, &[euler]).unwrap());
        assert!(derivation_stable(&ideal, &[]).unwrap());
    }

    #[test]
    fn budget_aborts() {
        let i = PolyIdeal::new(2, vec![&(&x() * &y()) - &c(1), x().pow(2)]).unwrap();
        let err = i.groebner(&Budget::new(0)).unwrap_err();
        assert_eq!(err.kind(), "budget");
    }

    #[test]
    fn render_ideal() {
        let i = PolyIdeal::new(2, vec![y().scale(&rat(2)), x().pow(2).scale(&rat(3))]).unwrap();
        assert_eq!(i.render(&names()).unwrap(), "ideal(x^2, y)");
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 0..4).prop_map(|ts| {
            MultiPoly::from_terms(
                2,
                ts.into_iter()
                    .map(|(a, b, c)| (Monomial::from_exponents(&[a, b]), rat(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn reduced_basis_is_unique(gens in prop::collection::vec(small_poly(), 1..4)) {
            let a = PolyIdeal::new(2, gens.clone()).unwrap();
            let mut rev = gens;
            rev.reverse();
            let b = PolyIdeal::new(2, rev).unwrap();
            prop_assert_eq!(a.basis().unwrap(), b.basis().unwrap());
        }

        #[test]
        fn normal_form_is_multiplicative(p in small_poly(), q in small_poly()) {
            let a = quotient(vec![cusp()]);
            let lhs = a.normal_form(&(&p * &q)).unwrap();
            let rhs = a.mul(&a.normal_form(&p).unwrap(), &a.normal_form(&q).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(a.normal_form(&lhs).unwrap(), lhs);
        }
    }
}

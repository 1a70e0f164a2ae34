//! Exact linear algebra over the rationals: dense row reduction, nullspaces
//! and an incremental sparse eliminator that remembers how every stored
//! vector was built from the inputs.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Rat;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rat>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : M v = 0}` for an `m × ncols` matrix.
pub fn nullspace(matrix: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut rows = matrix.to_vec();
    let pivots = rref(&mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn rank(matrix: &[Vec<Rat>], ncols: usize) -> usize {
    let mut rows = matrix.to_vec();
    rref(&mut rows, ncols).len()
}

/// Sparse vector keyed by an ordered coordinate type.
pub type SparseVec<K> = BTreeMap<K, Rat>;

fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, f: &Rat, src: &SparseVec<K>) {
    for (k, v) in src {
        let e = target.entry(k.clone()).or_insert_with(Rat::zero);
        *e += f * v;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

/// Gaussian elimination that accepts vectors one at a time. Every stored row
/// carries the combination of input tags that produced it, so membership
/// queries come back with an explicit certificate.
#[derive(Clone, Debug)]
pub struct IncrementalEliminator<K: Ord + Clone> {
    rows: Vec<(K, SparseVec<K>, BTreeMap<usize, Rat>)>,
    pivot_index: BTreeMap<K, usize>,
    inputs: usize,
}

impl<K: Ord + Clone> Default for IncrementalEliminator<K> {
    fn default() -> Self {
        IncrementalEliminator {
            rows: Vec::new(),
            pivot_index: BTreeMap::new(),
            inputs: 0,
        }
    }
}

impl<K: Ord + Clone> IncrementalEliminator<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, BTreeMap<usize, Rat>) {
        let mut v = v.clone();
        let mut combo: BTreeMap<usize, Rat> = BTreeMap::new();
        loop {
            let hit = v
                .iter()
                .find_map(|(k, c)| self.pivot_index.get(k).map(|&i| (i, c.clone())));
            let Some((i, c)) = hit else { break };
            let (_, row, rc) = &self.rows[i];
            axpy(&mut v, &-c.clone(), row);
            for (t, x) in rc {
                let e = combo.entry(*t).or_insert_with(Rat::zero);
                *e -= &c * x;
                if e.is_zero() {
                    combo.remove(t);
                }
            }
        }
        (v, combo)
    }

    /// Adds an input vector, returning its tag and whether it increased the
    /// rank.
    pub fn push(&mut self, v: &SparseVec<K>) -> (usize, bool) {
        let tag = self.inputs;
        self.inputs += 1;
        let (mut r, mut combo) = self.reduce(v);
        combo.insert(tag, Rat::one());
        let Some((pk, pc)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return (tag, false);
        };
        let inv = Rat::one() / pc;
        for x in r.values_mut() {
            *x = &*x * &inv;
        }
        for x in combo.values_mut() {
            *x = &*x * &inv;
        }
        self.pivot_index.insert(pk.clone(), self.rows.len());
        self.rows.push((pk, r, combo));
        (tag, true)
    }

    /// Expresses `target` as `Σ c_tag · input_tag`, if it lies in the span.
    pub fn express(&self, target: &SparseVec<K>) -> Option<BTreeMap<usize, Rat>> {
        let (r, combo) = self.reduce(target);
        if !r.is_empty() {
            return None;
        }
        Some(
            combo
                .into_iter()
                .map(|(t, c)| (t, -c))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    }
}

//! Sparse vectors and matrices with exact elimination.

use std::collections::{BTreeMap, BTreeSet};

use crate::field::{Field, FieldScalar};

/// Sparse vector keyed by coordinate; never stores zeros.
pub type SparseVec = BTreeMap<usize, FieldScalar>;

/// `v += c * w`, dropping cancelled entries.
pub fn axpy(v: &mut SparseVec, c: &FieldScalar, w: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let add = c * x;
        match v.get_mut(k) {
            Some(y) => {
                *y = &*y + &add;
                if y.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                if !add.is_zero() {
                    v.insert(*k, add);
                }
            }
        }
    }
}

pub fn scale(v: &SparseVec, c: &FieldScalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (*k, c * x)).collect()
}

/// Add `c` at coordinate `k`.
pub fn add_entry(v: &mut SparseVec, k: usize, c: FieldScalar) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&k) {
        Some(y) => {
            *y = &*y + &c;
            if y.is_zero() {
                v.remove(&k);
            }
        }
        None => {
            v.insert(k, c);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: BTreeMap<(usize, usize), FieldScalar>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        SparseMatrix { rows, cols, field, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = SparseMatrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from column vectors indexed by row.
    pub fn from_columns(rows: usize, field: Field, columns: &[SparseVec]) -> Self {
        let mut m = SparseMatrix::zeros(rows, columns.len(), field);
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                m.set(*i, j, x.clone());
            }
        }
        m
    }

    pub fn from_rows(cols: usize, field: Field, rows: &[SparseVec]) -> Self {
        let mut m = SparseMatrix::zeros(rows.len(), cols, field);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row {
                m.set(i, *j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> FieldScalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Set an entry; zero removes it. Panics when out of bounds.
    pub fn set(&mut self, i: usize, j: usize, v: FieldScalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &FieldScalar)> {
        self.entries.iter().map(|((i, j), v)| (*i, *j, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = SparseMatrix::zeros(self.cols, self.rows, self.field);
        for ((i, j), v) in &self.entries {
            t.entries.insert((*j, *i), v.clone());
        }
        t
    }

    pub fn row_vecs(&self) -> Vec<SparseVec> {
        let mut out = vec![SparseVec::new(); self.rows];
        for ((i, j), v) in &self.entries {
            out[*i].insert(*j, v.clone());
        }
        out
    }

    pub fn col_vecs(&self) -> Vec<SparseVec> {
        let mut out = vec![SparseVec::new(); self.cols];
        for ((i, j), v) in &self.entries {
            out[*j].insert(*i, v.clone());
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let rows = self.row_vecs();
        let ocols = other.row_vecs();
        let mut out = SparseMatrix::zeros(self.rows, other.cols, self.field);
        for (i, row) in rows.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, x) in row {
                axpy(&mut acc, x, &ocols[*k]);
            }
            for (j, v) in acc {
                out.entries.insert((i, j), v);
            }
        }
        out
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for ((i, j), x) in &self.entries {
            if let Some(y) = v.get(j) {
                add_entry(&mut out, *i, x * y);
            }
        }
        out
    }

    /// Rank by exact elimination with Markowitz pivot choice.
    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.cols];
        for (i, row) in rows.iter().enumerate() {
            for j in row.keys() {
                col_rows[*j].insert(i);
            }
        }
        let mut active: BTreeSet<usize> = (0..self.rows).filter(|i| !rows[*i].is_empty()).collect();
        let mut rank = 0;
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for &i in &active {
                let rc = rows[i].len() - 1;
                for j in rows[i].keys() {
                    let cost = rc * (col_rows[*j].len() - 1);
                    if best.is_none_or(|(c, _, _)| cost < c) {
                        best = Some((cost, i, *j));
                    }
                }
                if matches!(best, Some((0, _, _))) {
                    break;
                }
            }
            let Some((_, pi, pj)) = best else { break };
            rank += 1;
            active.remove(&pi);
            let prow = std::mem::take(&mut rows[pi]);
            for j in prow.keys() {
                col_rows[*j].remove(&pi);
            }
            let pinv = prow[&pj].inv().expect("pivot is nonzero");
            let targets: Vec<usize> = col_rows[pj].iter().copied().collect();
            for k in targets {
                let f = -(&rows[k][&pj] * &pinv);
                let before: Vec<usize> = rows[k].keys().copied().collect();
                axpy(&mut rows[k], &f, &prow);
                for j in before {
                    if !rows[k].contains_key(&j) {
                        col_rows[j].remove(&k);
                    }
                }
                for j in prow.keys() {
                    if rows[k].contains_key(j) {
                        col_rows[*j].insert(k);
                    }
                }
                if rows[k].is_empty() {
                    active.remove(&k);
                }
            }
        }
        rank
    }

    /// Reduced row echelon form: returns the nonzero rows and pivot columns.
    pub fn rref(&self) -> (Vec<SparseVec>, Vec<usize>) {
        let mut ech = Echelon::new(self.field);
        for row in self.row_vecs() {
            ech.insert(row);
        }
        ech.into_rref()
    }

    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let (rows, pivots) = self.rref();
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let one = self.field.one();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|j| !pivot_set.contains(j)) {
            let mut v = SparseVec::new();
            v.insert(free, one.clone());
            for (row, &p) in rows.iter().zip(&pivots) {
                if let Some(x) = row.get(&free) {
                    v.insert(p, -x);
                }
            }
            out.push(v);
        }
        out
    }
}

/// Incrementally maintained reduced echelon basis of a subspace.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    // pivot coordinate -> normalized vector with that pivot as its largest key
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon { field, pivots: BTreeMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduce `v` against the basis; zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = usize::MAX;
        loop {
            let next = v.range(..=cursor).rev().find(|(k, _)| self.pivots.contains_key(k)).map(|(k, _)| *k);
            let Some(k) = next else { return v };
            let c = -&v[&k];
            axpy(&mut v, &c, &self.pivots[&k]);
            if k == 0 {
                return v;
            }
            cursor = k - 1;
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Add `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&lead, c)) = v.iter().next_back() else { return false };
        let inv = c.inv().expect("nonzero lead");
        let v = scale(&v, &inv);
        for w in self.pivots.values_mut() {
            if let Some(x) = w.get(&lead).cloned() {
                axpy(w, &-x, &v);
            }
        }
        self.pivots.insert(lead, v);
        true
    }

    /// Rows in order of pivot column, each with a unit pivot entry.
    pub fn into_rref(self) -> (Vec<SparseVec>, Vec<usize>) {
        let pivots: Vec<usize> = self.pivots.keys().copied().collect();
        (self.pivots.into_values().collect(), pivots)
    }

    /// Coefficients of `v` over the reduced basis, keyed by pivot, if `v` is in the span.
    pub fn express(&self, v: &SparseVec) -> Option<BTreeMap<usize, FieldScalar>> {
        let mut coords = BTreeMap::new();
        let mut rest = v.clone();
        for (&p, w) in self.pivots.iter().rev() {
            if let Some(c) = rest.get(&p).cloned() {
                axpy(&mut rest, &-&c, w);
                coords.insert(p, c);
            }
        }
        rest.is_empty().then_some(coords)
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    m.kernel_basis()
}

/// True iff `v` lies in the span of `basis`.
pub fn in_span(v: &SparseVec, basis: &[SparseVec], field: Field) -> bool {
    let mut ech = Echelon::new(field);
    for b in basis {
        ech.insert(b.clone());
    }
    ech.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> FieldScalar {
        Field::Rational.from_i64(v)
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(SparseMatrix::zeros(0, 0, Field::Rational).rank(), 0);
        assert_eq!(SparseMatrix::identity(5, Field::Rational).rank(), 5);
        assert!(SparseMatrix::identity(3, Field::Rational).kernel_basis().is_empty());
        assert_eq!(SparseMatrix::zeros(2, 2, Field::Rational).kernel_basis().len(), 2);
    }

    #[test]
    fn span_membership() {
        let f = Field::Rational;
        assert!(in_span(&SparseVec::new(), &[], f));
        let e1: SparseVec = [(0, q(1))].into_iter().collect();
        let e2: SparseVec = [(1, q(1))].into_iter().collect();
        assert!(!in_span(&e1, std::slice::from_ref(&e2), f));
        let s: SparseVec = [(0, q(2)), (1, q(3))].into_iter().collect();
        assert!(in_span(&s, &[e1, e2], f));
    }

    #[test]
    fn dependent_rows() {
        let f = Field::Rational;
        let rows: Vec<SparseVec> = vec![
            [(0, q(1)), (1, q(2))].into_iter().collect(),
            [(0, q(2)), (1, q(4))].into_iter().collect(),
            [(2, q(1))].into_iter().collect(),
        ];
        let m = SparseMatrix::from_rows(3, f, &rows);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&ker[0]).is_empty());
    }

    #[test]
    fn express_recovers_coordinates() {
        let f = Field::Rational;
        let mut e = Echelon::new(f);
        e.insert([(0, q(1)), (2, q(1))].into_iter().collect());
        let v: SparseVec = [(0, q(3)), (2, q(3))].into_iter().collect();
        assert!(e.express(&v).is_some());
        let w: SparseVec = [(1, q(1))].into_iter().collect();
        assert!(e.express(&w).is_none());
    }
}

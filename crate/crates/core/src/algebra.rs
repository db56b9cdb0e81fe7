//! Path algebras, admissible quotients and normal forms.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldScalar};
use crate::sparse::{add_entry, axpy, Echelon, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("arrow {0} has an undeclared endpoint")]
    UndeclaredVertex(String),
    #[error("duplicate identifier {0}")]
    DuplicateId(String),
    #[error("relation {0} has terms with mismatched endpoints")]
    MalformedRelation(usize),
    #[error("relation {0} is not contained in the square of the arrow ideal")]
    NotInRadicalSquare(usize),
    #[error("quotient is not finite-dimensional below degree guard {0}")]
    NotAdmissible(usize),
    #[error("the quiver declares no involution")]
    NoInvolution,
    #[error("involution is not an order-two map compatible with endpoints")]
    BadInvolution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Involution on vertices and arrows (by index).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Involution {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    involution: Option<Involution>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, AlgebraError> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(AlgebraError::DuplicateId(v.clone()));
            }
        }
        for a in &arrows {
            if !seen.insert(a.name.clone()) {
                return Err(AlgebraError::DuplicateId(a.name.clone()));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(AlgebraError::UndeclaredVertex(a.name.clone()));
            }
        }
        Ok(Quiver { vertices, arrows, involution: None })
    }

    pub fn with_involution(mut self, inv: Involution) -> Result<Self, AlgebraError> {
        let nv = self.vertices.len();
        let na = self.arrows.len();
        if inv.vertices.len() != nv || inv.arrows.len() != na {
            return Err(AlgebraError::BadInvolution);
        }
        for v in 0..nv {
            if inv.vertices[v] >= nv || inv.vertices[inv.vertices[v]] != v {
                return Err(AlgebraError::BadInvolution);
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            let j = inv.arrows[i];
            if j >= na || inv.arrows[j] != i {
                return Err(AlgebraError::BadInvolution);
            }
            let b = &self.arrows[j];
            if b.source != inv.vertices[a.source] || b.target != inv.vertices[a.target] {
                return Err(AlgebraError::BadInvolution);
            }
        }
        self.involution = Some(inv);
        Ok(self)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn involution(&self) -> Option<&Involution> {
        self.involution.as_ref()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let ar = &self.arrows[a];
        Path { start: ar.source, end: ar.target, arrows: vec![a] }
    }

    /// Path from a word of arrow indices; `None` if not composable.
    pub fn path(&self, arrows: &[usize]) -> Option<Path> {
        let first = *arrows.first()?;
        let mut p = self.arrow_path(first);
        for &a in &arrows[1..] {
            p = p.concat(&self.arrow_path(a))?;
        }
        Some(p)
    }

    /// Parse a word of arrow names separated by `.`.
    /// Parse `e.a.A`-style words; `e1`, `e2`, … name the trivial paths.
    pub fn parse_word(&self, word: &str) -> Option<Path> {
        let word = word.trim();
        if self.arrow_index(word).is_none() {
            if let Some(v) = word.strip_prefix('e').and_then(|d| d.parse::<usize>().ok()) {
                return (1..=self.vertices.len()).contains(&v).then(|| Path::trivial(v - 1));
            }
        }
        let idx: Option<Vec<usize>> = word.split('.').map(|w| self.arrow_index(w.trim())).collect();
        self.path(&idx?)
    }

    /// All paths of exactly the given length, in path order.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &layer {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == p.end {
                        next.push(p.concat(&self.arrow_path(i)).expect("composable"));
                    }
                }
            }
            layer = next;
        }
        layer.sort();
        layer
    }

    pub fn bar_path(&self, p: &Path) -> Result<Path, AlgebraError> {
        let inv = self.involution.as_ref().ok_or(AlgebraError::NoInvolution)?;
        Ok(Path {
            start: inv.vertices[p.start],
            end: inv.vertices[p.end],
            arrows: p.arrows.iter().map(|a| inv.arrows[*a]).collect(),
        })
    }

    pub fn display_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", self.vertices[p.start]);
        }
        p.arrows.iter().map(|a| self.arrows[*a].name.as_str()).collect::<Vec<_>>().join(".")
    }
}

/// A path: start and end vertex plus an arrow word, composed left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    #[allow(clippy::len_without_is_empty)] // see is_trivial
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { start: self.start, end: other.end, arrows })
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathElement {
    field: Field,
    terms: BTreeMap<Path, FieldScalar>,
}

impl PathElement {
    pub fn zero(field: Field) -> Self {
        PathElement { field, terms: BTreeMap::new() }
    }

    pub fn monomial(path: Path, c: FieldScalar) -> Self {
        let field = c.field();
        let mut e = PathElement::zero(field);
        e.add_term(path, c);
        e
    }

    pub fn path(path: Path, field: Field) -> Self {
        PathElement::monomial(path, field.one())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Path, FieldScalar> {
        &self.terms
    }

    pub fn coefficient(&self, p: &Path) -> FieldScalar {
        self.terms.get(p).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, p: Path, c: FieldScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn add(&self, other: &PathElement) -> PathElement {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PathElement) -> PathElement {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &FieldScalar) -> PathElement {
        let mut out = PathElement::zero(self.field);
        for (p, x) in &self.terms {
            out.add_term(p.clone(), c * x);
        }
        out
    }

    /// Product in the path algebra (concatenation, zero on mismatch).
    pub fn mul(&self, other: &PathElement) -> PathElement {
        let mut out = PathElement::zero(self.field);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.concat(q) {
                    out.add_term(pq, a * b);
                }
            }
        }
        out
    }

    /// True iff every term runs from `o` to `t`.
    pub fn is_uniform(&self, o: usize, t: usize) -> bool {
        self.terms.keys().all(|p| p.start == o && p.end == t)
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let p = self.terms.keys().next()?;
        self.is_uniform(p.start, p.end).then_some((p.start, p.end))
    }

    pub fn min_len(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).min()
    }

    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).max()
    }

    pub fn leading(&self) -> Option<(&Path, &FieldScalar)> {
        self.terms.iter().next_back()
    }

    pub fn bar(&self, q: &Quiver) -> Result<PathElement, AlgebraError> {
        let mut out = PathElement::zero(self.field);
        for (p, c) in &self.terms {
            out.add_term(q.bar_path(p)?, c.clone());
        }
        Ok(out)
    }

    /// Change of field for integer-coefficient elements.
    pub fn to_field(&self, field: Field) -> PathElement {
        let mut out = PathElement::zero(field);
        for (p, c) in &self.terms {
            let v = c.to_i64().expect("integer coefficient");
            out.add_term(p.clone(), field.from_i64(v));
        }
        out
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.to_i64().is_some_and(|v| v < 0);
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                s.push_str(&format!("{abs}*"));
            }
            s.push_str(&q.display_path(p));
        }
        s
    }
}

/// Finite-dimensional quotient `KQ/I` with a monomial normal-form basis.
///
/// The builder looks for the smallest `L` such that every path of length `L`
/// lies in `I + J^{L+1}`, working with truncations of `p·rel·q`. This detects
/// `J^L ⊂ I` whenever the relations are homogeneous for some positive weighting
/// of the arrows, which covers both length-graded and weighted relations.
#[derive(Debug, Clone)]
pub struct BoundAlgebra {
    quiver: Quiver,
    field: Field,
    relations: Vec<PathElement>,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    nilpotency: usize,
    reductions: HashMap<Path, SparseVec>,
    table: Vec<Vec<SparseVec>>,
}

#[derive(Debug, Clone)]
struct PathIndex {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl PathIndex {
    fn up_to(q: &Quiver, len: usize) -> Self {
        let paths: Vec<Path> = (0..=len).flat_map(|l| q.paths_of_length(l)).collect();
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PathIndex { paths, index }
    }
}

impl BoundAlgebra {
    pub fn build(
        quiver: Quiver,
        relations: Vec<PathElement>,
        field: Field,
        max_degree_guard: usize,
    ) -> Result<Self, AlgebraError> {
        let relations: Vec<PathElement> = relations.iter().map(|r| r.to_field(field)).collect();
        for (i, r) in relations.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            if r.endpoints().is_none() {
                return Err(AlgebraError::MalformedRelation(i));
            }
            if r.min_len().unwrap_or(0) < 2 {
                return Err(AlgebraError::NotInRadicalSquare(i));
            }
        }
        for l in 1..=max_degree_guard {
            let idx = PathIndex::up_to(&quiver, l);
            let ech = Self::relation_span(&quiver, &relations, &idx, l);
            let top = quiver.paths_of_length(l);
            let spanned = |p: &Path| ech.contains(&[(idx.index[p], field.one())].into_iter().collect());
            if top.iter().all(spanned) {
                return Ok(Self::finish(quiver, field, relations, idx, ech, l));
            }
        }
        Err(AlgebraError::NotAdmissible(max_degree_guard))
    }

    fn relation_span(q: &Quiver, rels: &[PathElement], idx: &PathIndex, l: usize) -> Echelon {
        let field = rels.first().map_or(Field::Rational, |r| r.field());
        let mut ech = Echelon::new(field);
        let layers: Vec<Vec<Path>> = (0..=l).map(|k| q.paths_of_length(k)).collect();
        for rel in rels.iter().filter(|r| !r.is_zero()) {
            let (o, t) = rel.endpoints().expect("checked");
            let m = rel.min_len().expect("nonzero");
            if m > l {
                continue;
            }
            for a in 0..=(l - m) {
                for b in 0..=(l - m - a) {
                    for p in layers[a].iter().filter(|p| p.end == o) {
                        for s in layers[b].iter().filter(|s| s.start == t) {
                            let mut v = SparseVec::new();
                            for (w, c) in rel.terms() {
                                let full = p.concat(w).and_then(|x| x.concat(s)).expect("uniform");
                                if full.len() <= l {
                                    add_entry(&mut v, idx.index[&full], c.clone());
                                }
                            }
                            if !v.is_empty() {
                                ech.insert(v);
                            }
                        }
                    }
                }
            }
        }
        ech
    }

    fn finish(
        quiver: Quiver,
        field: Field,
        relations: Vec<PathElement>,
        idx: PathIndex,
        ech: Echelon,
        l: usize,
    ) -> Self {
        let pivots: std::collections::BTreeSet<usize> = ech.pivot_columns().collect();
        let basis: Vec<Path> = idx
            .paths
            .iter()
            .enumerate()
            .filter(|(i, p)| p.len() < l && !pivots.contains(i))
            .map(|(_, p)| p.clone())
            .collect();
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut reductions = HashMap::new();
        let (rows, piv) = ech.into_rref();
        for (row, p) in rows.iter().zip(piv) {
            let path = &idx.paths[p];
            if path.len() >= l {
                continue;
            }
            // row = path + rest with rest over basis paths of length < l
            let mut v = SparseVec::new();
            for (k, c) in row {
                if *k == p {
                    continue;
                }
                let q = &idx.paths[*k];
                if q.len() < l {
                    add_entry(&mut v, index[q], -c);
                }
            }
            reductions.insert(path.clone(), v);
        }
        let mut alg = BoundAlgebra {
            quiver,
            field,
            relations,
            basis,
            index,
            nilpotency: l,
            reductions,
            table: Vec::new(),
        };
        let n = alg.basis.len();
        let mut table = vec![vec![SparseVec::new(); n]; n];
        for (row, bi) in table.iter_mut().zip(&alg.basis) {
            for (cell, bj) in row.iter_mut().zip(&alg.basis) {
                if let Some(p) = bi.concat(bj) {
                    *cell = alg.nf_path(&p);
                }
            }
        }
        alg.table = table;
        alg
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn relations(&self) -> &[PathElement] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Smallest `L` with `J^L = 0`.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis paths grouped by length.
    pub fn degree_dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.nilpotency];
        for p in &self.basis {
            d[p.len()] += 1;
        }
        d
    }

    /// Basis indices of `e_o A e_t`.
    pub fn corner(&self, o: usize, t: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|i| self.basis[*i].start == o && self.basis[*i].end == t).collect()
    }

    /// Basis indices of `A e_v` (paths ending at `v`).
    pub fn left_projective(&self, v: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|i| self.basis[*i].end == v).collect()
    }

    /// Basis indices of `e_v A` (paths starting at `v`).
    pub fn right_projective(&self, v: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|i| self.basis[*i].start == v).collect()
    }

    /// Normal form of a single path, as coordinates over the basis.
    pub fn nf_path(&self, p: &Path) -> SparseVec {
        if p.len() >= self.nilpotency {
            return SparseVec::new();
        }
        if let Some(i) = self.index.get(p) {
            return [(*i, self.field.one())].into_iter().collect();
        }
        self.reductions.get(p).cloned().unwrap_or_default()
    }

    pub fn coords(&self, x: &PathElement) -> SparseVec {
        let mut v = SparseVec::new();
        for (p, c) in x.terms() {
            let c = c.to_i64().map_or_else(|| c.clone(), |k| self.field.from_i64(k));
            axpy(&mut v, &c, &self.nf_path(p));
        }
        v
    }

    pub fn element(&self, v: &SparseVec) -> PathElement {
        let mut out = PathElement::zero(self.field);
        for (i, c) in v {
            out.add_term(self.basis[*i].clone(), c.clone());
        }
        out
    }

    pub fn normal_form(&self, x: &PathElement) -> PathElement {
        self.element(&self.coords(x))
    }

    pub fn multiply(&self, x: &PathElement, y: &PathElement) -> PathElement {
        self.element(&self.mul_coords(&self.coords(x), &self.coords(y)))
    }

    pub fn mul_coords(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                axpy(&mut out, &(a * b), &self.table[*i][*j]);
            }
        }
        out
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn bar(&self, x: &PathElement) -> Result<PathElement, AlgebraError> {
        Ok(self.normal_form(&x.bar(&self.quiver)?))
    }

    pub fn one(&self) -> PathElement {
        let mut out = PathElement::zero(self.field);
        for v in 0..self.quiver.vertices.len() {
            out.add_term(Path::trivial(v), self.field.one());
        }
        out
    }

    pub fn word(&self, w: &str) -> PathElement {
        let p = self.quiver.parse_word(w).unwrap_or_else(|| panic!("bad word {w}"));
        PathElement::path(p, self.field)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.start + 1)
        } else {
            let w: Vec<String> = self.arrows.iter().map(|a| a.to_string()).collect();
            write!(f, "[{}]", w.join(","))
        }
    }
}

/// Arrow indices of the Hecke quiver, in the order ε < α < ᾱ < ε̄.
pub const EPS: usize = 0;
pub const ALPHA: usize = 1;
pub const ALPHA_BAR: usize = 2;
pub const EPS_BAR: usize = 3;

/// The two-vertex quiver with loops ε, ε̄ and arrows α: 1→2, ᾱ: 2→1.
pub fn hecke_quiver() -> Quiver {
    let arrows = vec![
        Arrow { name: "e".into(), source: 0, target: 0 },
        Arrow { name: "a".into(), source: 0, target: 1 },
        Arrow { name: "A".into(), source: 1, target: 0 },
        Arrow { name: "E".into(), source: 1, target: 1 },
    ];
    Quiver::new(vec!["1".into(), "2".into()], arrows)
        .expect("static quiver")
        .with_involution(Involution { vertices: vec![1, 0], arrows: vec![EPS_BAR, ALPHA_BAR, ALPHA, EPS] })
        .expect("static involution")
}

fn word_elem(q: &Quiver, w: &[usize], c: i64) -> PathElement {
    PathElement::monomial(q.path(w).expect("composable"), Field::Rational.from_i64(c))
}

fn power(w: &[usize], k: usize) -> Vec<usize> {
    w.iter().copied().cycle().take(w.len() * k).collect()
}

/// Relations of `Λ(r,s)`: the four zero relations and `ε^r − (αᾱ)^s`, `ε̄^r − (ᾱα)^s`.
pub fn lambda_relations(q: &Quiver, r: usize, s: usize) -> Vec<PathElement> {
    let mut rels = vec![
        word_elem(q, &[ALPHA, EPS_BAR], 1),
        word_elem(q, &[EPS, ALPHA], 1),
        word_elem(q, &[ALPHA_BAR, EPS], 1),
        word_elem(q, &[EPS_BAR, ALPHA_BAR], 1),
    ];
    rels.push(word_elem(q, &vec![EPS; r], 1).add(&word_elem(q, &power(&[ALPHA, ALPHA_BAR], s), -1)));
    rels.push(word_elem(q, &vec![EPS_BAR; r], 1).add(&word_elem(q, &power(&[ALPHA_BAR, ALPHA], s), -1)));
    rels
}

/// Guard that comfortably exceeds the nilpotency index of `Λ(r,s)`.
pub fn lambda_guard(r: usize, s: usize) -> usize {
    r.max(2 * s) + 4
}

pub fn hecke_algebra(field: Field) -> BoundAlgebra {
    lambda_algebra(2, 1, field)
}

pub fn lambda_algebra(r: usize, s: usize, field: Field) -> BoundAlgebra {
    assert!(r >= 2 && s >= 1, "Λ(r,s) needs r ≥ 2 and s ≥ 1");
    let q = hecke_quiver();
    let rels = lambda_relations(&q, r, s);
    BoundAlgebra::build(q, rels, field, lambda_guard(r, s)).expect("Λ(r,s) is admissible")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hecke_dimensions() {
        let a = hecke_algebra(Field::Rational);
        assert_eq!(a.dim(), 8);
        assert_eq!(a.degree_dims(), vec![2, 4, 2]);
        assert_eq!(a.corner(0, 0).len(), 3);
        assert_eq!(a.corner(1, 1).len(), 3);
        assert_eq!(a.corner(0, 1).len(), 1);
        assert_eq!(a.corner(1, 0).len(), 1);
    }

    #[test]
    fn hecke_normal_forms() {
        let a = hecke_algebra(Field::Rational);
        assert!(a.normal_form(&a.word("e.e.e")).is_zero());
        assert_eq!(a.normal_form(&a.word("a.A")), a.word("e.e"));
        let e1 = PathElement::path(Path::trivial(0), Field::Rational);
        assert_eq!(a.normal_form(&e1), e1);
        assert!(a.multiply(&a.word("e"), &a.word("a")).is_zero());
        assert_eq!(a.multiply(&e1, &a.word("a")), a.word("a"));
        assert!(a.multiply(&a.word("e.e"), &a.word("e")).is_zero());
    }

    #[test]
    fn bar_examples() {
        let a = hecke_algebra(Field::Rational);
        assert_eq!(a.bar(&a.word("e")).unwrap(), a.word("E"));
        assert_eq!(a.bar(&a.one()).unwrap(), a.one());
        let rel = a.relations()[4].clone();
        assert_eq!(rel.bar(a.quiver()).unwrap(), a.relations()[5]);
    }

    #[test]
    fn degree_one_relation_is_rejected() {
        let q = hecke_quiver();
        let rel = vec![word_elem(&q, &[EPS], 1)];
        assert_eq!(
            BoundAlgebra::build(q, rel, Field::Rational, 6).unwrap_err(),
            AlgebraError::NotInRadicalSquare(0)
        );
    }

    #[test]
    fn mismatched_relation_is_rejected() {
        let q = hecke_quiver();
        let rel = vec![word_elem(&q, &[EPS, EPS], 1).add(&word_elem(&q, &[ALPHA, EPS_BAR], 1))];
        assert_eq!(
            BoundAlgebra::build(q, rel, Field::Rational, 6).unwrap_err(),
            AlgebraError::MalformedRelation(0)
        );
    }

    #[test]
    fn non_admissible_guard() {
        let q = hecke_quiver();
        let rel = vec![word_elem(&q, &[EPS, ALPHA], 1)];
        assert_eq!(
            BoundAlgebra::build(q, rel, Field::Rational, 5).unwrap_err(),
            AlgebraError::NotAdmissible(5)
        );
    }

    #[test]
    fn lambda_dimensions() {
        for (r, s) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let l = lambda_algebra(r, s, Field::Rational);
            assert_eq!(l.dim(), 2 * r + 4 * s, "Λ({r},{s})");
            assert_eq!(l.corner(0, 0).len(), r + s);
            assert_eq!(l.corner(0, 1).len(), s);
        }
    }

    #[test]
    fn inhomogeneous_power_survives() {
        let l = lambda_algebra(3, 1, Field::Rational);
        assert_eq!(l.nilpotency(), 4);
        assert_eq!(l.normal_form(&l.word("e.e.e")), l.word("a.A"));
        assert!(l.normal_form(&l.word("e.e.e.e")).is_zero());
    }
}

//! The Ext algebra `E(A) = KQ/⟨ε²+αᾱ, ε̄²+ᾱα⟩`, computed one degree at a time.
//!
//! The relations are quadratic, so `Eⁿ = (Eⁿ⁻¹ ⊗ KQ₁) / (Eⁿ⁻² ⊗ R)`. Each
//! degree stores its normal-form basis and the matrix of right
//! multiplication by each arrow from the previous degree.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{hecke_quiver, Path, PathElement, Quiver, ALPHA, ALPHA_BAR, EPS, EPS_BAR};
use crate::field::{Field, FieldScalar};
use crate::sparse::{add_entry, axpy, in_span, scale, Echelon, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error("relation {0} is not a uniform quadratic element")]
    NotQuadratic(usize),
    #[error("element is not homogeneous")]
    NotHomogeneous,
}

#[derive(Debug, Clone)]
struct Degree {
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    /// `(i, a) ↦` coordinates of `basisₙ₋₁[i]·a`.
    from_prev: HashMap<(usize, usize), SparseVec>,
}

/// Quadratic path algebra with degreewise memoized normal forms.
#[derive(Debug)]
pub struct GradedAlgebra {
    quiver: Quiver,
    field: Field,
    relations: Vec<PathElement>,
    degrees: RwLock<Vec<Degree>>,
}

/// Homogeneous element: coordinates over the degree-`n` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    pub degree: usize,
    pub coords: SparseVec,
}

impl ExtElement {
    pub fn zero(degree: usize) -> Self {
        ExtElement { degree, coords: SparseVec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, o: &ExtElement) -> ExtElement {
        assert_eq!(self.degree, o.degree, "degree mismatch");
        let mut c = self.coords.clone();
        for (k, v) in &o.coords {
            add_entry(&mut c, *k, v.clone());
        }
        ExtElement { degree: self.degree, coords: c }
    }

    pub fn sub(&self, o: &ExtElement) -> ExtElement {
        assert_eq!(self.degree, o.degree, "degree mismatch");
        let mut c = self.coords.clone();
        for (k, v) in &o.coords {
            add_entry(&mut c, *k, -v);
        }
        ExtElement { degree: self.degree, coords: c }
    }

    pub fn scale(&self, s: &FieldScalar) -> ExtElement {
        ExtElement { degree: self.degree, coords: scale(&self.coords, s) }
    }
}

impl GradedAlgebra {
    pub fn new(quiver: Quiver, relations: Vec<PathElement>, field: Field) -> Result<Self, ExtError> {
        let relations: Vec<PathElement> = relations.iter().map(|r| r.to_field(field)).collect();
        for (i, r) in relations.iter().enumerate() {
            let quad = r.min_len() == Some(2) && r.max_len() == Some(2) && r.endpoints().is_some();
            if !quad {
                return Err(ExtError::NotQuadratic(i));
            }
        }
        let mut basis = Vec::new();
        for v in 0..quiver.vertices().len() {
            basis.push(Path::trivial(v));
        }
        let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let zero = Degree { basis, index, from_prev: HashMap::new() };
        Ok(GradedAlgebra { quiver, field, relations, degrees: RwLock::new(vec![zero]) })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Make sure degrees `0..=n` are computed.
    pub fn ensure(&self, n: usize) {
        if self.degrees.read().expect("lock").len() > n {
            return;
        }
        let mut w = self.degrees.write().expect("lock");
        while w.len() <= n {
            let next = self.next_degree(&w);
            w.push(next);
        }
    }

    fn next_degree(&self, done: &[Degree]) -> Degree {
        let n = done.len();
        let prev = &done[n - 1];
        let mut pairs: Vec<(Path, usize, usize)> = Vec::new();
        for (i, b) in prev.basis.iter().enumerate() {
            for (a, arrow) in self.quiver.arrows().iter().enumerate() {
                if arrow.source == b.end() {
                    pairs.push((b.concat(&self.quiver.arrow_path(a)).expect("composable"), i, a));
                }
            }
        }
        pairs.sort();
        let col: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(c, (_, i, a))| ((*i, *a), c)).collect();
        let mut ech = Echelon::new(self.field);
        if n >= 2 {
            let pp = &done[n - 2];
            for (ci, c) in pp.basis.iter().enumerate() {
                for rel in &self.relations {
                    let (o, _) = rel.endpoints().expect("checked");
                    if c.end() != o {
                        continue;
                    }
                    let mut v = SparseVec::new();
                    for (w, lam) in rel.terms() {
                        let (a1, a2) = (w.arrows()[0], w.arrows()[1]);
                        for (j, cj) in &prev.from_prev[&(ci, a1)] {
                            add_entry(&mut v, col[&(*j, a2)], lam * cj);
                        }
                    }
                    if !v.is_empty() {
                        ech.insert(v);
                    }
                }
            }
        }
        let pivots: std::collections::BTreeSet<usize> = ech.pivot_columns().collect();
        let keep: Vec<usize> = (0..pairs.len()).filter(|c| !pivots.contains(c)).collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let basis: Vec<Path> = keep.iter().map(|c| pairs[*c].0.clone()).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut from_prev = HashMap::new();
        for (c, (_, i, a)) in pairs.iter().enumerate() {
            let r = ech.reduce([(c, self.field.one())].into_iter().collect());
            let v: SparseVec = r.into_iter().map(|(k, x)| (pos[&k], x)).collect();
            from_prev.insert((*i, *a), v);
        }
        Degree { basis, index, from_prev }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.ensure(n);
        self.degrees.read().expect("lock")[n].basis.len()
    }

    pub fn basis(&self, n: usize) -> Vec<Path> {
        self.ensure(n);
        self.degrees.read().expect("lock")[n].basis.clone()
    }

    /// Right multiplication of a degree-`n` coordinate vector by arrow `a`.
    fn times_arrow(&self, n: usize, v: &SparseVec, a: usize) -> SparseVec {
        self.ensure(n + 1);
        let d = self.degrees.read().expect("lock");
        let mut out = SparseVec::new();
        for (i, c) in v {
            if let Some(w) = d[n + 1].from_prev.get(&(*i, a)) {
                axpy(&mut out, c, w);
            }
        }
        out
    }

    /// Normal form of a single path.
    pub fn path(&self, p: &Path) -> ExtElement {
        let start = self.degrees.read().expect("lock")[0].index[&Path::trivial(p.start())];
        let mut v: SparseVec = [(start, self.field.one())].into_iter().collect();
        for (k, a) in p.arrows().iter().enumerate() {
            v = self.times_arrow(k, &v, *a);
        }
        ExtElement { degree: p.len(), coords: v }
    }

    pub fn element(&self, x: &PathElement) -> Result<ExtElement, ExtError> {
        let n = match (x.min_len(), x.max_len()) {
            (None, None) => return Ok(ExtElement::zero(0)),
            (Some(a), Some(b)) if a == b => a,
            _ => return Err(ExtError::NotHomogeneous),
        };
        let x = x.to_field(self.field);
        let mut out = ExtElement::zero(n);
        for (p, c) in x.terms() {
            out = out.add(&self.path(p).scale(c));
        }
        Ok(out)
    }

    /// Parse a `.`-separated arrow word, or `e1`/`e2`, into normal form.
    pub fn word(&self, w: &str) -> ExtElement {
        let p = match w {
            "e1" => Path::trivial(0),
            "e2" => Path::trivial(1),
            _ => self.quiver.parse_word(w).unwrap_or_else(|| panic!("bad word {w}")),
        };
        self.path(&p)
    }

    pub fn mul(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        let basis_y = self.basis(y.degree);
        let mut out = ExtElement::zero(x.degree + y.degree);
        for (j, cy) in &y.coords {
            let p = &basis_y[*j];
            // restrict x to paths ending where p starts
            let basis_x = self.basis(x.degree);
            let mut v: SparseVec = x
                .coords
                .iter()
                .filter(|(i, _)| basis_x[**i].end() == p.start())
                .map(|(i, c)| (*i, c * cy))
                .collect();
            for (k, a) in p.arrows().iter().enumerate() {
                v = self.times_arrow(x.degree + k, &v, *a);
            }
            out = out.add(&ExtElement { degree: out.degree, coords: v });
        }
        out
    }

    pub fn pow(&self, x: &ExtElement, k: usize) -> ExtElement {
        let mut out = self.one();
        for _ in 0..k {
            out = self.mul(&out, x);
        }
        out
    }

    pub fn one(&self) -> ExtElement {
        let n = self.quiver.vertices().len();
        ExtElement { degree: 0, coords: (0..n).map(|i| (i, self.field.one())).collect() }
    }

    pub fn to_path_element(&self, x: &ExtElement) -> PathElement {
        let b = self.basis(x.degree);
        let mut out = PathElement::zero(self.field);
        for (i, c) in &x.coords {
            out.add_term(b[*i].clone(), c.clone());
        }
        out
    }

    pub fn display(&self, x: &ExtElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        self.to_path_element(x).display(&self.quiver)
    }

    pub fn bar(&self, x: &ExtElement) -> ExtElement {
        let b = self.to_path_element(x).bar(&self.quiver).expect("involution");
        self.element(&b).unwrap_or_else(|_| ExtElement::zero(x.degree))
    }
}

/// `E(A)` over `field`.
pub fn hecke_ext(field: Field) -> GradedAlgebra {
    let q = hecke_quiver();
    let w = |arrows: &[usize]| PathElement::path(q.path(arrows).expect("path"), field);
    let rels = vec![
        w(&[EPS, EPS]).add(&w(&[ALPHA, ALPHA_BAR])),
        w(&[EPS_BAR, EPS_BAR]).add(&w(&[ALPHA_BAR, ALPHA])),
    ];
    GradedAlgebra::new(q, rels, field).expect("quadratic")
}

/// `x = ε² + ε̄²`.
pub fn element_x(e: &GradedAlgebra) -> ExtElement {
    e.word("e.e").add(&e.word("E.E"))
}

/// `z = εαε̄ᾱ + αε̄ᾱε + ε̄ᾱεα + ᾱεαε̄`.
pub fn element_z(e: &GradedAlgebra) -> ExtElement {
    ["e.a.E.A", "a.E.A.e", "E.A.e.a", "A.e.a.E"].iter().map(|w| e.word(w)).fold(ExtElement::zero(4), |a, b| a.add(&b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralityReport {
    pub element: String,
    pub degree: usize,
    pub central: bool,
    pub failing_arrows: Vec<String>,
}

/// `e·γ = (−1)^{deg e} γ·e` for every arrow `γ`.
pub fn graded_centrality(e: &GradedAlgebra, name: &str, x: &ExtElement) -> CentralityReport {
    let mut failing = Vec::new();
    for (a, arrow) in e.quiver().arrows().iter().enumerate() {
        let g = e.path(&e.quiver().arrow_path(a));
        let lhs = e.mul(x, &g);
        let mut rhs = e.mul(&g, x);
        if x.degree % 2 == 1 {
            rhs = rhs.scale(&e.field().from_i64(-1));
        }
        if lhs != rhs {
            failing.push(arrow.name.clone());
        }
    }
    CentralityReport { element: name.to_string(), degree: x.degree, central: failing.is_empty(), failing_arrows: failing }
}

pub fn is_graded_central(e: &GradedAlgebra, x: &ExtElement) -> bool {
    graded_centrality(e, "", x).central
}

/// `z·y = y·z` for every basis element `y` of `Eᵐ`, `m ≤ m_max`.
pub fn z_commutes_through(e: &GradedAlgebra, m_max: usize) -> bool {
    let z = element_z(e);
    (0..=m_max).all(|m| {
        e.basis(m).iter().all(|p| {
            let y = e.path(p);
            e.mul(&z, &y) == e.mul(&y, &z)
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub bar_holds: bool,
    /// Set when the checked form differs from the printed one.
    pub note: Option<String>,
}

/// The eight identities used to push products back over `S`, and their bars.
pub fn reduction_identities(e: &GradedAlgebra) -> Vec<IdentityCheck> {
    let x = element_x(e);
    let z = element_z(e);
    let w = |s: &str| e.word(s);
    let m = |a: &ExtElement, b: &ExtElement| e.mul(a, b);
    let neg = |a: &ExtElement| a.scale(&e.field().from_i64(-1));
    let cases: Vec<(&str, ExtElement, ExtElement)> = vec![
        ("A.a = -x e2", w("A.a"), neg(&m(&x, &w("e2")))),
        ("e.e.a = x a", w("e.e.a"), m(&x, &w("a"))),
        ("a.E.A.a = -x a.E", w("a.E.A.a"), neg(&m(&x, &w("a.E")))),
        ("e.a.E.A.a = -x e.a.E", w("e.a.E.A.a"), neg(&m(&x, &w("e.a.E")))),
        ("e.e = x e1", w("e.e"), m(&x, &w("e1"))),
        ("E.A.e.e = x E.A", w("E.A.e.e"), m(&x, &w("E.A"))),
        ("a.E.A.e = z e1 - e.a.E.A", w("a.E.A.e"), m(&z, &w("e1")).sub(&w("e.a.E.A"))),
        ("e.a.E.A.e = z e - x a.E.A", w("e.a.E.A.e"), m(&z, &w("e")).sub(&m(&x, &w("a.E.A")))),
    ];
    cases
        .into_iter()
        .map(|(name, lhs, rhs)| IdentityCheck {
            name: name.to_string(),
            holds: lhs == rhs,
            bar_holds: e.bar(&lhs) == e.bar(&rhs),
            note: name.starts_with("E.A.e.e").then(|| "printed as A.e.e = x E.A, which mixes degrees 3 and 4".to_string()),
        })
        .collect()
}

/// One element of the generating set, as printed and as used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub printed: String,
    pub used: String,
    pub substituted: bool,
    #[serde(skip)]
    pub path: Option<Path>,
}

/// The sixteen module generators. The printed `α ε ᾱ` does not compose and is
/// replaced by `α ε̄ ᾱ`.
pub fn generating_set(e: &GradedAlgebra) -> Vec<GeneratorEntry> {
    let q = e.quiver();
    let printed: [(&str, &[usize]); 16] = [
        ("e1", &[]),
        ("e2", &[]),
        ("e", &[EPS]),
        ("a", &[ALPHA]),
        ("E", &[EPS_BAR]),
        ("A", &[ALPHA_BAR]),
        ("e.a", &[EPS, ALPHA]),
        ("E.A", &[EPS_BAR, ALPHA_BAR]),
        ("a.E", &[ALPHA, EPS_BAR]),
        ("A.e", &[ALPHA_BAR, EPS]),
        ("e.a.E", &[EPS, ALPHA, EPS_BAR]),
        ("E.A.e", &[EPS_BAR, ALPHA_BAR, EPS]),
        ("A.e.a", &[ALPHA_BAR, EPS, ALPHA]),
        ("a.e.A", &[ALPHA, EPS, ALPHA_BAR]),
        ("e.a.E.A", &[EPS, ALPHA, EPS_BAR, ALPHA_BAR]),
        ("E.A.e.a", &[EPS_BAR, ALPHA_BAR, EPS, ALPHA]),
    ];
    printed
        .iter()
        .map(|(name, arrows)| {
            let p = match *name {
                "e1" => Some(Path::trivial(0)),
                "e2" => Some(Path::trivial(1)),
                _ => q.path(arrows),
            };
            match p {
                Some(p) if !e.path(&p).is_zero() => {
                    GeneratorEntry { printed: name.to_string(), used: name.to_string(), substituted: false, path: Some(p) }
                }
                _ => {
                    // swap each loop for its bar until the word composes
                    let fixed: Vec<usize> = arrows
                        .iter()
                        .enumerate()
                        .map(|(k, a)| {
                            let ok_before = k == 0 || q.arrows()[arrows[k - 1]].target == q.arrows()[*a].source;
                            if ok_before || !(*a == EPS || *a == EPS_BAR) {
                                *a
                            } else {
                                EPS + EPS_BAR - *a
                            }
                        })
                        .collect();
                    let p = q.path(&fixed);
                    let used = p.as_ref().map_or("-".to_string(), |p| q.display_path(p));
                    GeneratorEntry { printed: name.to_string(), used, substituted: true, path: p }
                }
            }
        })
        .collect()
}

/// Homogeneous monomials `x^a z^b` of degree `n`, with their exponents.
pub fn central_monomials(e: &GradedAlgebra, n: usize) -> Vec<((usize, usize), ExtElement)> {
    let x = element_x(e);
    let z = element_z(e);
    let mut out = Vec::new();
    if n % 2 == 1 {
        return out;
    }
    for b in 0..=n / 4 {
        let a = (n - 4 * b) / 2;
        out.push(((a, b), e.mul(&e.pow(&x, a), &e.pow(&z, b))));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingenRow {
    pub n: usize,
    pub dim: usize,
    pub span: usize,
    pub cokernel: usize,
}

fn span_of_monomials_times_s(e: &GradedAlgebra, s: &[GeneratorEntry], n: usize) -> Vec<SparseVec> {
    let mut out = Vec::new();
    for entry in s {
        let Some(p) = &entry.path else { continue };
        if p.len() > n {
            continue;
        }
        let sv = e.path(p);
        for (_, m) in central_monomials(e, n - p.len()) {
            let v = e.mul(&m, &sv);
            if !v.is_zero() {
                out.push(v.coords);
            }
        }
    }
    out
}

/// Does `{x^a z^b s}` span `Eⁿ` for each `n ≤ n_max`?
pub fn fingen_check(e: &GradedAlgebra, n_max: usize) -> Vec<FingenRow> {
    let s = generating_set(e);
    (0..=n_max)
        .map(|n| {
            let mut ech = Echelon::new(e.field());
            for v in span_of_monomials_times_s(e, &s, n) {
                ech.insert(v);
            }
            let dim = e.dim(n);
            FingenRow { n, dim, span: ech.dim(), cokernel: dim - ech.dim() }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceRow {
    pub n: usize,
    pub monomials: Vec<String>,
    pub rank: usize,
    pub independent: bool,
}

/// Linear independence of `{x^a z^b : 2a + 4b = n}` in `Eⁿ` for even `n ≤ n_max`.
pub fn poly_independence(e: &GradedAlgebra, n_max: usize) -> Vec<IndependenceRow> {
    (0..=n_max)
        .step_by(2)
        .map(|n| {
            let mons = central_monomials(e, n);
            let mut ech = Echelon::new(e.field());
            let mut names = Vec::new();
            for ((a, b), m) in &mons {
                names.push(monomial_name(*a, *b));
                ech.insert(m.coords.clone());
            }
            IndependenceRow { n, rank: ech.dim(), independent: ech.dim() == mons.len(), monomials: names }
        })
        .collect()
}

fn monomial_name(a: usize, b: usize) -> String {
    match (a, b) {
        (0, 0) => "1".to_string(),
        _ => {
            let mut s = String::new();
            if a > 0 {
                s.push_str(&if a == 1 { "x".to_string() } else { format!("x^{a}") });
            }
            if b > 0 {
                s.push_str(&if b == 1 { "z".to_string() } else { format!("z^{b}") });
            }
            s
        }
    }
}

/// Every `s·γ` lies in the span of `{x^a z^b s'}`.
pub fn generator_reexpression(e: &GradedAlgebra) -> BTreeMap<String, bool> {
    let s = generating_set(e);
    let mut out = BTreeMap::new();
    for entry in &s {
        let Some(p) = &entry.path else { continue };
        for (a, arrow) in e.quiver().arrows().iter().enumerate() {
            if arrow.source != p.end() {
                continue;
            }
            let n = p.len() + 1;
            let prod = e.mul(&e.path(p), &e.path(&e.quiver().arrow_path(a)));
            let span = span_of_monomials_times_s(e, &s, n);
            out.insert(format!("{}*{}", entry.used, arrow.name), in_span(&prod.coords, &span, e.field()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_dimensions() {
        let e = hecke_ext(Field::Rational);
        let dims: Vec<usize> = (0..=6).map(|n| e.dim(n)).collect();
        assert_eq!(dims, [2, 4, 6, 8, 10, 12, 14]);
    }

    #[test]
    fn relation_holds() {
        let e = hecke_ext(Field::Rational);
        let lhs = e.word("e.e");
        let rhs = e.word("a.A").scale(&Field::Rational.from_i64(-1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_matches_paths() {
        let e = hecke_ext(Field::Rational);
        assert_eq!(e.mul(&e.word("e.a"), &e.word("E.A")), e.word("e.a.E.A"));
        assert!(e.mul(&e.word("a"), &e.word("e")).is_zero());
    }

    #[test]
    fn epsilon_is_not_central() {
        let e = hecke_ext(Field::Rational);
        let r = graded_centrality(&e, "e", &e.word("e"));
        assert!(!r.central);
        assert!(r.failing_arrows.contains(&"a".to_string()));
    }

    #[test]
    fn printed_sixth_identity_is_inhomogeneous() {
        let e = hecke_ext(Field::Rational);
        let x = element_x(&e);
        let lhs = e.word("A.e.e");
        let rhs = e.mul(&x, &e.word("E.A"));
        assert_ne!(lhs.degree, rhs.degree);
        assert_eq!(lhs, e.mul(&x, &e.word("A")));
    }

    #[test]
    fn printed_generator_is_substituted() {
        let e = hecke_ext(Field::Rational);
        let s = generating_set(&e);
        let subs: Vec<_> = s.iter().filter(|g| g.substituted).collect();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].printed, "a.e.A");
        assert_eq!(subs[0].used, "a.E.A");
    }
}

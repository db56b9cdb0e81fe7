//! Minimal projective bimodule resolutions of `A` and `Λ(r,s)`.
//!
//! `Rₙ = ⊕_{x∈𝒢ⁿ} A o(x) ⊗ t(x) A`. Generators are tagged by family
//! (`g`, `f`, `ḡ`, `f̄`) and index; the differential is stored as tensor
//! terms `c · L ⊗_y R` and realized as a matrix over monomial bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{hecke_quiver, BoundAlgebra, Path, PathElement, Quiver, ALPHA, ALPHA_BAR, EPS, EPS_BAR};
use crate::field::Field;
use crate::sparse::{add_entry, SparseMatrix, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("degree {degree}: reference to missing generator {tag}")]
    IndexOutOfRange { degree: usize, tag: GeneratorTag },
    #[error("degree {degree}: expansions of {tag} disagree")]
    ExpansionMismatch { degree: usize, tag: GeneratorTag },
    #[error("degree {degree}: generator census disagrees with the closed form")]
    TermMismatch { degree: usize },
    #[error("degree {degree}: differential does not compose to zero on {tag}")]
    NotAComplex { degree: usize, tag: GeneratorTag },
    #[error("degree {degree}: homology is nonzero")]
    NotExact { degree: usize },
    #[error("degree {degree}: clause coverage incomplete ({family:?})")]
    Coverage { degree: usize, family: Family },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    G,
    F,
    GBar,
    FBar,
}

impl Family {
    pub fn bar(self) -> Family {
        match self {
            Family::G => Family::GBar,
            Family::F => Family::FBar,
            Family::GBar => Family::G,
            Family::FBar => Family::F,
        }
    }

    pub fn origin(self) -> usize {
        match self {
            Family::G | Family::F => 0,
            Family::GBar | Family::FBar => 1,
        }
    }

    pub fn terminus(self) -> usize {
        match self {
            Family::G | Family::FBar => 0,
            Family::GBar | Family::F => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::G => "g",
            Family::F => "f",
            Family::GBar => "gb",
            Family::FBar => "fb",
        }
    }
}

/// One summand `A o(x) ⊗ t(x) A` of `Rₙ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorTag {
    pub degree: usize,
    pub family: Family,
    pub index: usize,
}

impl GeneratorTag {
    pub fn new(degree: usize, family: Family, index: usize) -> Self {
        GeneratorTag { degree, family, index }
    }

    pub fn origin(&self) -> usize {
        self.family.origin()
    }

    pub fn terminus(&self) -> usize {
        self.family.terminus()
    }

    pub fn bar(&self) -> Self {
        GeneratorTag { family: self.family.bar(), ..*self }
    }
}

impl fmt::Display for GeneratorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}^{}", self.family.symbol(), self.index, self.degree)
    }
}

/// Number of `g`-indices and `f`-indices in degree `n`.
pub fn index_ranges(n: usize) -> (usize, usize) {
    if n == 0 {
        return (1, 0);
    }
    let (k, i) = (n / 4, n % 4);
    if i % 2 == 0 {
        (2 * k + 1, n - 2 * k)
    } else {
        (n.div_ceil(2), n.div_ceil(2))
    }
}

/// Tags of `Rₙ` in canonical order: `g`, `f`, `ḡ`, `f̄`, each by index.
pub fn tags(n: usize) -> Vec<GeneratorTag> {
    let (ng, nf) = index_ranges(n);
    let mut out = Vec::with_capacity(2 * (ng + nf));
    for (fam, count) in [(Family::G, ng), (Family::F, nf), (Family::GBar, ng), (Family::FBar, nf)] {
        out.extend((1..=count).map(|j| GeneratorTag::new(n, fam, j)));
    }
    out
}

/// Multiplicities of `P₁₁, P₁₂, P₂₁, P₂₂` in `Rₙ` from the closed form.
pub fn resolution_term(n: usize) -> [usize; 4] {
    if n == 0 {
        return [1, 0, 0, 1];
    }
    let (k, i) = (n / 4, n % 4);
    if i <= 1 {
        [2 * k + 1, 2 * k + i, 2 * k + i, 2 * k + 1]
    } else {
        [2 * k + i - 1, 2 * k + 2, 2 * k + 2, 2 * k + i - 1]
    }
}

/// Census of summand types among the tags of degree `n`.
pub fn census(n: usize) -> [usize; 4] {
    let mut c = [0; 4];
    for t in tags(n) {
        c[2 * t.origin() + t.terminus()] += 1;
    }
    c
}

pub fn check_terms(n: usize) -> Result<(), ResolutionError> {
    if census(n) == resolution_term(n) && tags(n).len() == 2 * (n + 1) {
        Ok(())
    } else {
        Err(ResolutionError::TermMismatch { degree: n })
    }
}

/// The set `𝒢ⁿ` as elements of the free path algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    pub degree: usize,
    pub elements: BTreeMap<GeneratorTag, PathElement>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, tag: &GeneratorTag) -> Option<&PathElement> {
        self.elements.get(tag)
    }
}

struct Prev<'a> {
    set: &'a GeneratorSet,
    q: &'a Quiver,
}

impl Prev<'_> {
    fn get(&self, fam: Family, j: usize) -> Result<&PathElement, ResolutionError> {
        let tag = GeneratorTag::new(self.set.degree, fam, j);
        self.set.get(&tag).ok_or(ResolutionError::IndexOutOfRange { degree: self.set.degree + 1, tag })
    }

    fn arrow(&self, a: usize) -> PathElement {
        PathElement::path(self.q.arrow_path(a), Field::Rational)
    }

    fn right(&self, fam: Family, j: usize, a: usize) -> Result<PathElement, ResolutionError> {
        Ok(self.get(fam, j)?.mul(&self.arrow(a)))
    }

    fn left(&self, a: usize, fam: Family, j: usize) -> Result<PathElement, ResolutionError> {
        Ok(self.arrow(a).mul(self.get(fam, j)?))
    }
}

fn assemble(
    n: usize,
    q: &Quiver,
    g: BTreeMap<usize, PathElement>,
    f: BTreeMap<usize, PathElement>,
) -> Result<GeneratorSet, ResolutionError> {
    let (ng, nf) = index_ranges(n);
    if !g.keys().copied().eq(1..=ng) {
        return Err(ResolutionError::Coverage { degree: n, family: Family::G });
    }
    if !f.keys().copied().eq(1..=nf) {
        return Err(ResolutionError::Coverage { degree: n, family: Family::F });
    }
    let mut elements = BTreeMap::new();
    for (fam, map) in [(Family::G, g), (Family::F, f)] {
        for (j, x) in map {
            elements.insert(GeneratorTag::new(n, fam.bar(), j), x.bar(q).expect("involution"));
            elements.insert(GeneratorTag::new(n, fam, j), x);
        }
    }
    Ok(GeneratorSet { degree: n, elements })
}

fn gset_zero() -> GeneratorSet {
    let mut elements = BTreeMap::new();
    elements.insert(GeneratorTag::new(0, Family::G, 1), PathElement::path(Path::trivial(0), Field::Rational));
    elements.insert(GeneratorTag::new(0, Family::GBar, 1), PathElement::path(Path::trivial(1), Field::Rational));
    GeneratorSet { degree: 0, elements }
}

/// One step of the right-expansion recursion `x = Σ h^{n−1} r`.
fn gset_step(prev: &GeneratorSet, q: &Quiver) -> Result<GeneratorSet, ResolutionError> {
    use Family::{F, G};
    let n = prev.degree + 1;
    let (k, i) = (n / 4, n % 4);
    let p = Prev { set: prev, q };
    let ge = |j| p.right(G, j, EPS);
    let fa = |j| p.right(F, j, ALPHA_BAR);
    let fe = |j| p.right(F, j, EPS_BAR);
    let ga = |j| p.right(G, j, ALPHA);
    let mut g = BTreeMap::new();
    let mut f = BTreeMap::new();
    if n == 1 {
        g.insert(1, ge(1)?);
    } else if i % 2 == 0 {
        g.insert(1, ge(1)?.sub(&fa(1)?));
    } else {
        g.insert(1, ge(1)?.sub(&fa(2)?));
    }
    for l in 1..=k {
        if (i == 0 && l < k) || i == 2 {
            g.insert(2 * l, ge(2 * l)?.sub(&fa(2 * l + 1)?));
            g.insert(2 * l + 1, ge(2 * l + 1)?.add(&fa(2 * l)?));
        }
        if i == 1 || i == 3 {
            g.insert(2 * l, ge(2 * l)?.add(&fa(2 * l - 1)?));
        }
        if (i == 1 && l < k) || i == 3 {
            g.insert(2 * l + 1, ge(2 * l + 1)?.sub(&fa(2 * l + 2)?));
        }
    }
    if i == 0 && k >= 1 {
        g.insert(2 * k, ge(2 * k)?);
        g.insert(2 * k + 1, fa(2 * k)?);
    }
    if i == 1 && k >= 1 {
        g.insert(2 * k + 1, ge(2 * k + 1)?);
    }
    if i == 3 {
        g.insert(2 * k + 2, fa(2 * k + 1)?);
    }
    if n == 1 {
        f.insert(1, ga(1)?);
    } else if i % 2 == 1 {
        f.insert(1, fe(1)?.add(&ga(1)?));
    }
    for l in 0..=k {
        if i % 2 == 0 && l < k {
            f.insert(2 * l + 1, fe(2 * l + 1)?.sub(&ga(2 * l + 2)?));
            f.insert(2 * l + 2, fe(2 * l + 2)?.add(&ga(2 * l + 1)?));
        }
        if (i == 1 && 1 <= l && l < k) || (i == 3 && 1 <= l && l <= k) {
            f.insert(2 * l + 1, fe(2 * l + 1)?.add(&ga(2 * l)?));
        }
        if i % 2 == 1 && l < k {
            f.insert(2 * l + 2, fe(2 * l + 2)?.sub(&ga(2 * l + 3)?));
        }
    }
    if i == 1 && k >= 1 {
        f.insert(2 * k + 1, ga(2 * k)?);
    }
    if i == 2 {
        f.insert(2 * k + 1, fe(2 * k + 1)?);
        f.insert(2 * k + 2, ga(2 * k + 1)?);
    }
    if i == 3 {
        f.insert(2 * k + 2, fe(2 * k + 2)?);
    }
    assemble(n, q, g, f)
}

/// One step of the left-expansion recursion `x = Σ q h^{n−1}`.
fn gset_left_step(prev: &GeneratorSet, q: &Quiver) -> Result<GeneratorSet, ResolutionError> {
    use Family::{FBar, GBar, F, G};
    let n = prev.degree + 1;
    let (k, i) = (n / 4, n % 4);
    let p = Prev { set: prev, q };
    let eg = |j| p.left(EPS, G, j);
    let af = |j| p.left(ALPHA, FBar, j);
    let ef = |j| p.left(EPS, F, j);
    let ag = |j| p.left(ALPHA, GBar, j);
    let mut g = BTreeMap::new();
    let mut f = BTreeMap::new();
    if n == 1 {
        g.insert(1, eg(1)?);
    } else {
        g.insert(1, eg(1)?.sub(&af(1)?));
    }
    for l in 1..=k {
        if (i == 0 && l < k) || i != 0 {
            g.insert(2 * l, eg(2 * l + 1)?.add(&af(2 * l)?));
        }
        if (i == 0 && l < k) || i == 2 || (i == 1 && l < k) || i == 3 {
            g.insert(2 * l + 1, eg(2 * l)?.sub(&af(2 * l + 1)?));
        }
    }
    if i == 0 && k >= 1 {
        g.insert(2 * k, af(2 * k)?);
    }
    if (i == 0 || i == 1) && k >= 1 {
        g.insert(2 * k + 1, eg(2 * k)?);
    }
    if i == 3 {
        g.insert(2 * k + 2, af(2 * k + 2)?);
    }
    if n == 1 {
        f.insert(1, ag(1)?);
    } else if i % 2 == 1 {
        f.insert(1, ef(2)?.add(&ag(1)?));
    }
    for l in 0..=k {
        if (i % 2 == 0 && l < k) || (i == 1 && 1 <= l && l < k) || (i == 3 && 1 <= l && l <= k) {
            f.insert(2 * l + 1, ef(2 * l + 2)?.add(&ag(2 * l + 1)?));
        }
        if l < k {
            f.insert(2 * l + 2, ef(2 * l + 1)?.sub(&ag(2 * l + 2)?));
        }
    }
    if (i == 1 && k >= 1) || i == 2 {
        f.insert(2 * k + 1, ag(2 * k + 1)?);
    }
    if i == 2 || i == 3 {
        f.insert(2 * k + 2, ef(2 * k + 1)?);
    }
    assemble(n, q, g, f)
}

/// `𝒢⁰, …, 𝒢ⁿ` via the right expansions.
pub fn gsets_up_to(n: usize) -> Result<Vec<GeneratorSet>, ResolutionError> {
    let q = hecke_quiver();
    let mut out = vec![gset_zero()];
    for _ in 0..n {
        let next = gset_step(out.last().expect("nonempty"), &q)?;
        out.push(next);
    }
    Ok(out)
}

pub fn gset(n: usize) -> Result<GeneratorSet, ResolutionError> {
    Ok(gsets_up_to(n)?.pop().expect("nonempty"))
}

/// `𝒢ⁿ` built from `𝒢ⁿ⁻¹` by the left expansions; must agree with [`gset`].
pub fn gset_left(n: usize) -> Result<GeneratorSet, ResolutionError> {
    assert!(n >= 1, "left expansions start in degree 1");
    let q = hecke_quiver();
    let prev = gset(n - 1)?;
    let left = gset_left_step(&prev, &q)?;
    let right = gset_step(&prev, &q)?;
    for (tag, x) in &right.elements {
        if left.get(tag) != Some(x) {
            return Err(ResolutionError::ExpansionMismatch { degree: n, tag: *tag });
        }
    }
    Ok(left)
}

/// One tensor term `coef · left ⊗_target right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Term {
    pub coef: i64,
    pub left: Path,
    pub target: GeneratorTag,
    pub right: Path,
}

impl Term {
    pub fn bar(&self, q: &Quiver) -> Term {
        Term {
            coef: self.coef,
            left: q.bar_path(&self.left).expect("involution"),
            target: self.target.bar(),
            right: q.bar_path(&self.right).expect("involution"),
        }
    }
}

/// A bimodule map `Rₙ → Rₙ₋₁` given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleMap {
    pub degree: usize,
    pub terms: BTreeMap<GeneratorTag, Vec<Term>>,
}

impl BimoduleMap {
    fn close_bar(degree: usize, rows: BTreeMap<GeneratorTag, Vec<Term>>, q: &Quiver) -> Self {
        let mut terms = rows.clone();
        for (tag, ts) in rows {
            terms.insert(tag.bar(), ts.iter().map(|t| t.bar(q)).collect());
        }
        BimoduleMap { degree, terms }
    }

    /// Terms sorted, for comparison up to ordering.
    pub fn canonical(&self) -> BTreeMap<GeneratorTag, Vec<Term>> {
        self.terms
            .iter()
            .map(|(k, v)| {
                let mut v = v.clone();
                v.sort();
                (*k, v)
            })
            .collect()
    }

    pub fn term_count(&self) -> usize {
        self.terms.values().map(Vec::len).sum()
    }
}

/// Which printed variants of two clauses of the `δ` table to use.
///
/// The defaults are the readings that yield a complex; the printed ones are
/// kept for the tests that show they fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Transcription {
    /// `𝔭₁ⁿ`, odd `n ≥ 3`: left term `ε𝔭₁` as printed instead of `ε𝔭₂`.
    pub p1_odd_printed: bool,
    /// `𝔭_{2l+2}ⁿ`, odd `n`: sign `−α𝔲̄_{2l+2}` as printed instead of `+`.
    pub p_even_odd_printed: bool,
}

struct Table<'q> {
    q: &'q Quiver,
    n: usize,
    rows: BTreeMap<GeneratorTag, Vec<Term>>,
}

impl Table<'_> {
    fn tag(&self, fam: Family, j: usize) -> GeneratorTag {
        GeneratorTag::new(self.n - 1, fam, j)
    }

    fn r(&self, c: i64, fam: Family, j: usize, a: usize) -> Term {
        let y = self.tag(fam, j);
        Term { coef: c, left: Path::trivial(y.origin()), target: y, right: self.q.arrow_path(a) }
    }

    fn l(&self, c: i64, a: usize, fam: Family, j: usize) -> Term {
        let y = self.tag(fam, j);
        Term { coef: c, left: self.q.arrow_path(a), target: y, right: Path::trivial(y.terminus()) }
    }

    fn set(&mut self, fam: Family, j: usize, terms: Vec<Term>) {
        self.rows.insert(GeneratorTag::new(self.n, fam, j), terms);
    }
}

/// Unbarred rows of `δₙ` for `A`.
fn hecke_rows(n: usize, q: &Quiver, tr: Transcription) -> Result<BTreeMap<GeneratorTag, Vec<Term>>, ResolutionError> {
    use Family::{FBar as PB, GBar as UB, F as P, G as U};
    let (e, a, ab, eb) = (EPS, ALPHA, ALPHA_BAR, EPS_BAR);
    let (k, i) = (n / 4, n % 4);
    let even = i % 2 == 0;
    let mut t = Table { q, n, rows: BTreeMap::new() };
    // 𝔲 rows
    let row = if n == 1 {
        vec![t.r(1, U, 1, e), t.l(-1, e, U, 1)]
    } else if even {
        vec![t.r(1, U, 1, e), t.r(-1, P, 1, ab), t.l(1, e, U, 1), t.l(-1, a, PB, 1)]
    } else {
        vec![t.r(1, U, 1, e), t.r(-1, P, 2, ab), t.l(-1, e, U, 1), t.l(1, a, PB, 1)]
    };
    t.set(U, 1, row);
    for l in 1..=k {
        if (i == 0 && l < k) || i == 2 {
            let row = vec![t.r(1, U, 2 * l, e), t.r(-1, P, 2 * l + 1, ab), t.l(1, e, U, 2 * l + 1), t.l(1, a, PB, 2 * l)];
            t.set(U, 2 * l, row);
            let row = vec![t.r(1, U, 2 * l + 1, e), t.r(1, P, 2 * l, ab), t.l(1, e, U, 2 * l), t.l(-1, a, PB, 2 * l + 1)];
            t.set(U, 2 * l + 1, row);
        }
        if i == 1 || i == 3 {
            let row = vec![t.r(1, U, 2 * l, e), t.r(1, P, 2 * l - 1, ab), t.l(-1, e, U, 2 * l + 1), t.l(-1, a, PB, 2 * l)];
            t.set(U, 2 * l, row);
        }
        if (i == 1 && l < k) || i == 3 {
            let row =
                vec![t.r(1, U, 2 * l + 1, e), t.r(-1, P, 2 * l + 2, ab), t.l(-1, e, U, 2 * l), t.l(1, a, PB, 2 * l + 1)];
            t.set(U, 2 * l + 1, row);
        }
    }
    if i == 0 && k >= 1 {
        let row = vec![t.r(1, U, 2 * k, e), t.l(1, a, PB, 2 * k)];
        t.set(U, 2 * k, row);
        let row = vec![t.r(1, P, 2 * k, ab), t.l(1, e, U, 2 * k)];
        t.set(U, 2 * k + 1, row);
    }
    if i == 1 && k >= 1 {
        let row = vec![t.r(1, U, 2 * k + 1, e), t.l(-1, e, U, 2 * k)];
        t.set(U, 2 * k + 1, row);
    }
    if i == 3 {
        let row = vec![t.r(1, P, 2 * k + 1, ab), t.l(-1, a, PB, 2 * k + 2)];
        t.set(U, 2 * k + 2, row);
    }
    // 𝔭 rows
    if n == 1 {
        let row = vec![t.r(1, U, 1, a), t.l(-1, a, UB, 1)];
        t.set(P, 1, row);
    } else if !even {
        let target = if tr.p1_odd_printed { 1 } else { 2 };
        let row = vec![t.r(1, P, 1, eb), t.r(1, U, 1, a), t.l(-1, e, P, target), t.l(-1, a, UB, 1)];
        t.set(P, 1, row);
    }
    for l in 0..=k {
        if even && l < k {
            let row =
                vec![t.r(1, P, 2 * l + 1, eb), t.r(-1, U, 2 * l + 2, a), t.l(1, e, P, 2 * l + 2), t.l(1, a, UB, 2 * l + 1)];
            t.set(P, 2 * l + 1, row);
            let row =
                vec![t.r(1, P, 2 * l + 2, eb), t.r(1, U, 2 * l + 1, a), t.l(1, e, P, 2 * l + 1), t.l(-1, a, UB, 2 * l + 2)];
            t.set(P, 2 * l + 2, row);
        }
        if (i == 1 && 1 <= l && l < k) || (i == 3 && 1 <= l && l <= k) {
            let row =
                vec![t.r(1, P, 2 * l + 1, eb), t.r(1, U, 2 * l, a), t.l(-1, e, P, 2 * l + 2), t.l(-1, a, UB, 2 * l + 1)];
            t.set(P, 2 * l + 1, row);
        }
        if !even && l < k {
            let sign = if tr.p_even_odd_printed { -1 } else { 1 };
            let row = vec![
                t.r(1, P, 2 * l + 2, eb),
                t.r(-1, U, 2 * l + 3, a),
                t.l(-1, e, P, 2 * l + 1),
                t.l(sign, a, UB, 2 * l + 2),
            ];
            t.set(P, 2 * l + 2, row);
        }
    }
    if i == 1 && k >= 1 {
        let row = vec![t.r(1, U, 2 * k, a), t.l(-1, a, UB, 2 * k + 1)];
        t.set(P, 2 * k + 1, row);
    }
    if i == 2 {
        let row = vec![t.r(1, P, 2 * k + 1, eb), t.l(1, a, UB, 2 * k + 1)];
        t.set(P, 2 * k + 1, row);
        let row = vec![t.r(1, U, 2 * k + 1, a), t.l(1, e, P, 2 * k + 1)];
        t.set(P, 2 * k + 2, row);
    }
    if i == 3 {
        let row = vec![t.r(1, P, 2 * k + 2, eb), t.l(-1, e, P, 2 * k + 1)];
        t.set(P, 2 * k + 2, row);
    }
    let (ng, nf) = index_ranges(n);
    let count = |fam| t.rows.keys().filter(|x| x.family == fam).map(|x| x.index).collect::<Vec<_>>();
    if !count(U).into_iter().eq(1..=ng) {
        return Err(ResolutionError::Coverage { degree: n, family: U });
    }
    if !count(P).into_iter().eq(1..=nf) {
        return Err(ResolutionError::Coverage { degree: n, family: P });
    }
    let (pg, pf) = index_ranges(n - 1);
    for term in t.rows.values().flatten() {
        let y = term.target;
        let bound = if y.family == U || y.family == UB { pg } else { pf };
        if y.index == 0 || y.index > bound {
            return Err(ResolutionError::IndexOutOfRange { degree: n, tag: y });
        }
    }
    Ok(t.rows)
}

/// `δₙ : Rₙ → Rₙ₋₁` for `A`, with the corrected readings.
pub fn delta(n: usize) -> BimoduleMap {
    delta_with(n, Transcription::default()).expect("corrected table is well-indexed")
}

pub fn delta_with(n: usize, tr: Transcription) -> Result<BimoduleMap, ResolutionError> {
    assert!(n >= 1, "δₙ is defined for n ≥ 1");
    let q = hecke_quiver();
    Ok(BimoduleMap::close_bar(n, hecke_rows(n, &q, tr)?, &q))
}

/// Weight `a·rs + b·r + c·s` with `w(ε) = 2s`, `w(α) = r`, for indeterminate `r, s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Weight(i64, i64, i64);

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight(self.0 + o.0, self.1 + o.1, self.2 + o.2)
    }
}

fn is_loop(a: usize) -> bool {
    a == EPS || a == EPS_BAR
}

fn short_weight(a: usize) -> Weight {
    if is_loop(a) {
        Weight(0, 0, 2)
    } else {
        Weight(0, 1, 0)
    }
}

fn long_weight(a: usize) -> Weight {
    if is_loop(a) {
        Weight(2, 0, -2)
    } else {
        Weight(2, -1, 0)
    }
}

fn loop_power(q: &Quiver, v: usize, m: usize) -> Path {
    let a = if v == 0 { EPS } else { EPS_BAR };
    q.path(&vec![a; m]).unwrap_or_else(|| Path::trivial(v))
}

/// Alternating `α`/`ᾱ` word of length `m` starting at `v`.
fn alternating_from(q: &Quiver, v: usize, m: usize) -> Path {
    let mut p = Path::trivial(v);
    for _ in 0..m {
        let a = if p.end() == 0 { ALPHA } else { ALPHA_BAR };
        p = p.concat(&q.arrow_path(a)).expect("alternating");
    }
    p
}

/// Alternating `α`/`ᾱ` word of length `m` ending at `v`.
fn alternating_to(q: &Quiver, v: usize, m: usize) -> Path {
    let start = if m.is_multiple_of(2) { v } else { 1 - v };
    alternating_from(q, start, m)
}

fn single_letter(t: &Term) -> usize {
    let side = if t.left.is_trivial() { &t.right } else { &t.left };
    debug_assert_eq!(side.len(), 1);
    side.arrows()[0]
}

/// `∂ₙ` for `Λ(r,s)`.
///
/// Each term of the `δₙ` row is lengthened where needed so that the row is
/// homogeneous for the weighting `w(ε) = 2s`, `w(α) = r`, with `r, s` treated
/// as indeterminates: a loop becomes `ε^{r−1}`, an `α`/`ᾱ` letter becomes the
/// alternating word of length `2s−1`. In even degree the row of `𝔲₁` is the
/// full norm `Σ ε^a 𝔲₁ ε^b − Σ (αᾱ)^j 𝔭₁ … − Σ … 𝔭̄₁ …`. For `(r,s) = (2,1)`
/// this is `δₙ`.
pub fn partial(n: usize, r: usize, s: usize) -> BimoduleMap {
    assert!(n >= 1 && r >= 2 && s >= 1);
    let q = hecke_quiver();
    let mut weights: HashMap<GeneratorTag, Weight> = HashMap::new();
    for t in tags(0) {
        weights.insert(t, Weight(0, 0, 0));
    }
    let mut result = None;
    for m in 1..=n {
        let base = BimoduleMap::close_bar(m, hecke_rows(m, &q, Transcription::default()).expect("table"), &q);
        let mut rows = BTreeMap::new();
        for (x, terms) in &base.terms {
            let w = row_weight(terms, &weights);
            weights.insert(*x, w);
            if x.family == Family::G || x.family == Family::F {
                rows.insert(*x, lengthen_row(&q, *x, terms, w, &weights, r, s));
            }
        }
        if m == n {
            result = Some(BimoduleMap::close_bar(n, rows, &q));
        }
    }
    result.expect("n ≥ 1")
}

fn row_weight(terms: &[Term], weights: &HashMap<GeneratorTag, Weight>) -> Weight {
    let options = |t: &Term| {
        let base = weights[&t.target];
        let a = single_letter(t);
        [base + short_weight(a), base + long_weight(a)]
    };
    let mut common: Vec<Weight> = options(&terms[0]).to_vec();
    for t in &terms[1..] {
        let o = options(t);
        common.retain(|w| o.contains(w));
    }
    common.dedup();
    match common.as_slice() {
        [w] => *w,
        // ties only arise when every term admits both; prefer the short reading
        [..] if common.len() > 1 => options(&terms[0])[0],
        _ => panic!("no homogeneous reading of row"),
    }
}

fn lengthen_row(
    q: &Quiver,
    x: GeneratorTag,
    terms: &[Term],
    w: Weight,
    weights: &HashMap<GeneratorTag, Weight>,
    r: usize,
    s: usize,
) -> Vec<Term> {
    let mut out = Vec::new();
    for t in terms {
        let a = single_letter(t);
        if weights[&t.target] + short_weight(a) == w {
            out.push(t.clone());
            continue;
        }
        let y = t.target;
        let mut t2 = t.clone();
        if is_loop(a) {
            if t.left.is_trivial() {
                t2.right = loop_power(q, y.terminus(), r - 1);
            } else {
                t2.left = loop_power(q, y.origin(), r - 1);
            }
        } else if t.left.is_trivial() {
            t2.right = alternating_from(q, y.terminus(), 2 * s - 1);
        } else {
            t2.left = alternating_to(q, y.origin(), 2 * s - 1);
        }
        out.push(t2);
    }
    if x.family == Family::G && x.index == 1 && x.degree.is_multiple_of(2) {
        let o = x.origin();
        let u = terms[0].target;
        for a in 1..r.saturating_sub(1) {
            out.push(Term { coef: 1, left: loop_power(q, o, a), target: u, right: loop_power(q, o, r - 1 - a) });
        }
        let (p, pb) = (terms[1].target, terms[3].target);
        for j in 1..(2 * s - 1) {
            let y = if j % 2 == 0 { p } else { pb };
            out.push(Term {
                coef: -1,
                left: alternating_from(q, o, j),
                target: y,
                right: alternating_from(q, y.terminus(), 2 * s - 1 - j),
            });
        }
    }
    out
}

/// Which differential family to realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Differential {
    Hecke(Transcription),
    Lambda { r: usize, s: usize },
}

impl Differential {
    pub fn map(&self, n: usize) -> Result<BimoduleMap, ResolutionError> {
        match *self {
            Differential::Hecke(tr) => delta_with(n, tr),
            Differential::Lambda { r, s } => Ok(partial(n, r, s)),
        }
    }
}

/// Ordered monomial basis `(tag, λ, μ)` of `Rₙ` over a bound algebra.
#[derive(Debug, Clone)]
pub struct VectorRealization {
    pub degree: usize,
    pub basis: Vec<(GeneratorTag, usize, usize)>,
    index: HashMap<(GeneratorTag, usize, usize), usize>,
}

impl VectorRealization {
    pub fn new(alg: &BoundAlgebra, n: usize) -> Self {
        let mut basis = Vec::new();
        for t in tags(n) {
            for l in alg.left_projective(t.origin()) {
                for r in alg.right_projective(t.terminus()) {
                    basis.push((t, l, r));
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        VectorRealization { degree: n, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, tag: GeneratorTag, l: usize, r: usize) -> Option<usize> {
        self.index.get(&(tag, l, r)).copied()
    }

    /// Basis position of the generator `o(y) ⊗ t(y)` of summand `y`.
    pub fn generator(&self, alg: &BoundAlgebra, tag: GeneratorTag) -> usize {
        let l = alg.basis_index(&Path::trivial(tag.origin())).expect("idempotent");
        let r = alg.basis_index(&Path::trivial(tag.terminus())).expect("idempotent");
        self.index[&(tag, l, r)]
    }
}

fn concat_nf(alg: &BoundAlgebra, a: &Path, b: &Path) -> SparseVec {
    a.concat(b).map(|p| alg.nf_path(&p)).unwrap_or_default()
}

/// Matrix of a bimodule map `Rₙ → Rₙ₋₁` on monomial bases.
pub fn realize(map: &BimoduleMap, alg: &BoundAlgebra) -> SparseMatrix {
    let src = VectorRealization::new(alg, map.degree);
    let tgt = VectorRealization::new(alg, map.degree - 1);
    let field = alg.field();
    let mut cols = Vec::with_capacity(src.dim());
    for (y, l, r) in &src.basis {
        let mut col = SparseVec::new();
        let lp = &alg.basis()[*l];
        let rp = &alg.basis()[*r];
        for t in map.terms.get(y).map(Vec::as_slice).unwrap_or(&[]) {
            let lv = concat_nf(alg, lp, &t.left);
            if lv.is_empty() {
                continue;
            }
            let rv = concat_nf(alg, &t.right, rp);
            let c = field.from_i64(t.coef);
            for (li, lc) in &lv {
                for (ri, rc) in &rv {
                    let pos = tgt.position(t.target, *li, *ri).expect("target basis");
                    add_entry(&mut col, pos, &c * &(lc * rc));
                }
            }
        }
        cols.push(col);
    }
    SparseMatrix::from_columns(tgt.dim(), field, &cols)
}

/// The multiplication map `R₀ → A`.
pub fn multiplication_map(alg: &BoundAlgebra) -> SparseMatrix {
    let src = VectorRealization::new(alg, 0);
    let cols: Vec<SparseVec> = src.basis.iter().map(|(_, l, r)| alg.mul_basis(*l, *r).clone()).collect();
    SparseMatrix::from_columns(alg.dim(), alg.field(), &cols)
}

/// True iff every term has a factor in the radical.
pub fn check_minimal(map: &BimoduleMap) -> bool {
    map.terms.values().flatten().all(|t| !(t.left.is_trivial() && t.right.is_trivial()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub n: usize,
    pub generators: usize,
    pub multiplicities: [usize; 4],
    pub terms_match: bool,
    pub dim_r: usize,
    pub rank: usize,
    pub complex: bool,
    pub exact: bool,
    pub minimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub algebra_dim: usize,
    pub cokernel_dim: usize,
    pub degrees: Vec<DegreeReport>,
    pub first_failure: Option<String>,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Realized differentials `δ₁ … δ_N` (index `n−1` holds `δₙ`).
pub fn realize_all(alg: &BoundAlgebra, diff: Differential, n_max: usize) -> Result<Vec<(BimoduleMap, SparseMatrix)>, ResolutionError> {
    let maps: Vec<BimoduleMap> = (1..=n_max).map(|n| diff.map(n)).collect::<Result<_, _>>()?;
    Ok(maps
        .into_par_iter()
        .map(|m| {
            let mat = realize(&m, alg);
            (m, mat)
        })
        .collect())
}

/// `δₙ₋₁ ∘ δₙ = 0` on generators, for `1 ≤ n ≤ n_max` (with `δ₀` the multiplication).
pub fn check_complex(alg: &BoundAlgebra, n_max: usize, diff: Differential) -> Result<(), ResolutionError> {
    let mats = realize_all(alg, diff, n_max)?;
    check_complex_realized(alg, &mats)
}

fn check_complex_realized(alg: &BoundAlgebra, mats: &[(BimoduleMap, SparseMatrix)]) -> Result<(), ResolutionError> {
    let mu = multiplication_map(alg);
    for (idx, (map, mat)) in mats.iter().enumerate() {
        let n = map.degree;
        let prev = if idx == 0 { &mu } else { &mats[idx - 1].1 };
        let src = VectorRealization::new(alg, n);
        let cols = mat.col_vecs();
        for tag in tags(n) {
            if !prev.apply(&cols[src.generator(alg, tag)]).is_empty() {
                return Err(ResolutionError::NotAComplex { degree: n, tag });
            }
        }
    }
    Ok(())
}

/// Complex, exactness and minimality report through degree `n_max`.
pub fn resolution_report(alg: &BoundAlgebra, diff: Differential, n_max: usize) -> Result<ResolutionReport, ResolutionError> {
    let mats = realize_all(alg, diff, n_max + 1)?;
    let ranks: Vec<usize> = mats.par_iter().map(|(_, m)| m.rank()).collect();
    let mu = multiplication_map(alg);
    let dims: Vec<usize> = (0..=n_max + 1).map(|n| VectorRealization::new(alg, n).dim()).collect();
    let cokernel_dim = dims[0] - ranks[0];
    let mut first_failure = None;
    if cokernel_dim != alg.dim() || mu.rank() != alg.dim() {
        first_failure = Some("cokernel of the first differential is not the algebra".to_string());
    }
    let mut degrees = Vec::new();
    for n in 0..=n_max {
        let complex = pair_complex(alg, &mu, &mats, n);
        let incoming = if n == 0 { mu.rank() } else { ranks[n - 1] };
        let exact = incoming + ranks[n] == dims[n];
        let minimal = n == 0 || check_minimal(&mats[n - 1].0);
        let mult = census(n);
        let terms_match = mult == resolution_term(n) && tags(n).len() == 2 * (n + 1);
        if first_failure.is_none() {
            if !terms_match {
                first_failure = Some(format!("degree {n}: resolution terms"));
            } else if !complex {
                first_failure = Some(format!("degree {n}: not a complex"));
            } else if !exact {
                first_failure = Some(format!("degree {n}: not exact"));
            } else if !minimal {
                first_failure = Some(format!("degree {n}: not minimal"));
            }
        }
        degrees.push(DegreeReport {
            n,
            generators: tags(n).len(),
            multiplicities: mult,
            terms_match,
            dim_r: dims[n],
            rank: if n == 0 { 0 } else { ranks[n - 1] },
            complex,
            exact,
            minimal,
        });
    }
    Ok(ResolutionReport { algebra_dim: alg.dim(), cokernel_dim, degrees, first_failure })
}

/// `δₙ ∘ δₙ₊₁ = 0` on generators of `Rₙ₊₁`, with `δ₀` the multiplication.
fn pair_complex(alg: &BoundAlgebra, mu: &SparseMatrix, mats: &[(BimoduleMap, SparseMatrix)], n: usize) -> bool {
    let outer = if n == 0 { mu } else { &mats[n - 1].1 };
    let inner = &mats[n];
    let src = VectorRealization::new(alg, inner.0.degree);
    let cols = inner.1.col_vecs();
    tags(inner.0.degree).iter().all(|t| outer.apply(&cols[src.generator(alg, *t)]).is_empty())
}

/// `rank δₙ + rank δₙ₊₁ = dim Rₙ` for `1 ≤ n < n_max` and the cokernel of `δ₁` is `A`.
pub fn check_exact(alg: &BoundAlgebra, n_max: usize, diff: Differential) -> Result<Vec<usize>, ResolutionError> {
    let mats = realize_all(alg, diff, n_max)?;
    let ranks: Vec<usize> = mats.par_iter().map(|(_, m)| m.rank()).collect();
    let d0 = VectorRealization::new(alg, 0).dim();
    if d0 - ranks[0] != alg.dim() {
        return Err(ResolutionError::NotExact { degree: 0 });
    }
    for n in 1..n_max {
        if ranks[n - 1] + ranks[n] != VectorRealization::new(alg, n).dim() {
            return Err(ResolutionError::NotExact { degree: n });
        }
    }
    Ok(ranks)
}

/// Checks a run of consecutive maps `δ_a, δ_{a+1}, …`: each adjacent pair
/// composes to zero and homology vanishes at every interior degree.
pub fn verify_sequence(alg: &BoundAlgebra, maps: &[BimoduleMap]) -> Result<(), ResolutionError> {
    let mats: Vec<SparseMatrix> = maps.par_iter().map(|m| realize(m, alg)).collect();
    for w in 0..maps.len().saturating_sub(1) {
        let inner = &maps[w + 1];
        let src = VectorRealization::new(alg, inner.degree);
        let cols = mats[w + 1].col_vecs();
        for t in tags(inner.degree) {
            if !mats[w].apply(&cols[src.generator(alg, t)]).is_empty() {
                return Err(ResolutionError::NotAComplex { degree: inner.degree, tag: t });
            }
        }
    }
    let ranks: Vec<usize> = mats.par_iter().map(SparseMatrix::rank).collect();
    for w in 0..maps.len().saturating_sub(1) {
        let n = maps[w].degree;
        if ranks[w] + ranks[w + 1] != VectorRealization::new(alg, n).dim() {
            return Err(ResolutionError::NotExact { degree: n });
        }
    }
    Ok(())
}

/// Unbarred rows of `δₙ` as transcribed, before closing under the bar.
pub fn delta_rows(n: usize, tr: Transcription) -> Result<BTreeMap<GeneratorTag, Vec<Term>>, ResolutionError> {
    hecke_rows(n, &hecke_quiver(), tr)
}

/// `δₙ` from unbarred rows, with bar images added.
pub fn from_rows(n: usize, rows: BTreeMap<GeneratorTag, Vec<Term>>) -> BimoduleMap {
    BimoduleMap::close_bar(n, rows, &hecke_quiver())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hecke_algebra;

    #[test]
    fn small_generator_sets() {
        let q = hecke_quiver();
        let g1 = gset(1).unwrap();
        let names: Vec<String> = g1.elements.values().map(|x| x.display(&q)).collect();
        assert_eq!(names, ["e", "a", "E", "A"]);
        let g2 = gset(2).unwrap();
        let names: Vec<String> = g2.elements.values().map(|x| x.display(&q)).collect();
        assert_eq!(names, ["e.e - a.A", "a.E", "e.a", "-A.a + E.E", "A.e", "E.A"]);
    }

    #[test]
    fn first_differentials() {
        let d1 = delta(1);
        let u = GeneratorTag::new(1, Family::G, 1);
        assert_eq!(d1.terms[&u].len(), 2);
        assert_eq!(d1.terms[&u][0].coef, 1);
        assert_eq!(d1.terms[&u][1].coef, -1);
        let d4 = delta(4);
        let u3 = &d4.terms[&GeneratorTag::new(4, Family::G, 3)];
        assert_eq!(u3.len(), 2);
        assert_eq!(u3[0].target, GeneratorTag::new(3, Family::F, 2));
        assert_eq!(u3[1].target, GeneratorTag::new(3, Family::G, 2));
    }

    #[test]
    fn realization_shapes() {
        let a = hecke_algebra(Field::Rational);
        let m = realize(&delta(1), &a);
        assert_eq!((m.rows(), m.cols()), (32, 64));
        assert_eq!(m.rank(), 24);
    }

    #[test]
    fn identity_like_term_is_not_minimal() {
        let y = GeneratorTag::new(0, Family::G, 1);
        let mut terms = BTreeMap::new();
        terms.insert(
            GeneratorTag::new(1, Family::G, 1),
            vec![Term { coef: 1, left: Path::trivial(0), target: y, right: Path::trivial(0) }],
        );
        assert!(!check_minimal(&BimoduleMap { degree: 1, terms }));
    }
}

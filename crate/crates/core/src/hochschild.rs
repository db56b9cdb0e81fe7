//! Hochschild cochains `Hom(Rₙ, A) ≅ ⊕_x e_{o(x)} A e_{t(x)}`, their
//! cohomology, the named cocycle bases and the map into `E(A)`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{BoundAlgebra, Path, PathElement};
use crate::ext::{ExtElement, GradedAlgebra};
use crate::field::Field;
use crate::resolution::{gset, tags, BimoduleMap, Differential, Family, GeneratorTag, ResolutionError};
use crate::sparse::{add_entry, Echelon, SparseMatrix, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochschildError {
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error("{name} is not defined in degree {n}")]
    OutOfRange { name: String, n: usize },
    #[error("degree {n}: computed dimension {computed}, closed form {formula}")]
    DimensionMismatch { n: usize, computed: usize, formula: usize },
    #[error("{0} is not a cocycle")]
    NotACocycle(String),
    #[error("value at {0} does not lie in the right corner")]
    BadValue(GeneratorTag),
    #[error("basis certificates need characteristic other than 2")]
    CharacteristicTwo,
}

/// Ordered basis `(x, b)` of `Cⁿ`, `b` a basis monomial of `e_{o(x)} A e_{t(x)}`.
#[derive(Debug, Clone)]
pub struct CochainSpace {
    pub degree: usize,
    pub basis: Vec<(GeneratorTag, usize)>,
    index: HashMap<(GeneratorTag, usize), usize>,
}

impl CochainSpace {
    pub fn new(alg: &BoundAlgebra, n: usize) -> Self {
        let mut basis = Vec::new();
        for t in tags(n) {
            for b in alg.corner(t.origin(), t.terminus()) {
                basis.push((t, b));
            }
        }
        let index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        CochainSpace { degree: n, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, tag: GeneratorTag, b: usize) -> Option<usize> {
        self.index.get(&(tag, b)).copied()
    }
}

pub fn cochain_dim(alg: &BoundAlgebra, n: usize) -> usize {
    CochainSpace::new(alg, n).dim()
}

/// A cochain given by its nonzero values on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub name: String,
    pub values: BTreeMap<GeneratorTag, PathElement>,
}

impl Cochain {
    pub fn vector(&self, alg: &BoundAlgebra) -> Result<SparseVec, HochschildError> {
        let space = CochainSpace::new(alg, self.degree);
        let mut v = SparseVec::new();
        for (tag, val) in &self.values {
            for (b, c) in alg.coords(val) {
                let pos = space.position(*tag, b).ok_or(HochschildError::BadValue(*tag))?;
                add_entry(&mut v, pos, c);
            }
        }
        Ok(v)
    }

    /// `u ↦ a·c(u)`.
    pub fn left_multiply(&self, alg: &BoundAlgebra, a: &PathElement, name: &str) -> Cochain {
        let values = self
            .values
            .iter()
            .map(|(t, v)| (*t, alg.multiply(a, v)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Cochain { degree: self.degree, name: name.to_string(), values }
    }
}

/// Matrix of `η ↦ η∘δₙ`, from `Cⁿ⁻¹` to `Cⁿ`.
pub fn induced_map(alg: &BoundAlgebra, map: &BimoduleMap) -> SparseMatrix {
    let n = map.degree;
    let src = CochainSpace::new(alg, n - 1);
    let tgt = CochainSpace::new(alg, n);
    let mut by_target: HashMap<GeneratorTag, Vec<(GeneratorTag, &Path, &Path, i64)>> = HashMap::new();
    for (x, terms) in &map.terms {
        for t in terms {
            by_target.entry(t.target).or_default().push((*x, &t.left, &t.right, t.coef));
        }
    }
    let field = alg.field();
    let cols: Vec<SparseVec> = src
        .basis
        .iter()
        .map(|(y, b)| {
            let mut col = SparseVec::new();
            let bp = &alg.basis()[*b];
            for (x, l, r, c) in by_target.get(y).map(Vec::as_slice).unwrap_or(&[]) {
                let Some(p) = l.concat(bp).and_then(|p| p.concat(r)) else { continue };
                for (k, v) in alg.nf_path(&p) {
                    let pos = tgt.position(*x, k).expect("corner");
                    add_entry(&mut col, pos, &field.from_i64(*c) * &v);
                }
            }
            col
        })
        .collect();
    SparseMatrix::from_columns(tgt.dim(), field, &cols)
}

/// `dim HHⁿ(A)` from the closed form (`5` in degree 0).
pub fn hh_formula(n: usize) -> usize {
    if n == 0 {
        return 5;
    }
    let (k, i) = (n / 4, n % 4);
    if i == 3 {
        2 * k + 4
    } else {
        2 * k + 3
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhRow {
    pub n: usize,
    pub dim_cochain: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub dim_hh: usize,
    pub formula: Option<usize>,
}

impl HhRow {
    pub fn matches(&self) -> bool {
        self.formula.is_none_or(|f| f == self.dim_hh)
    }
}

/// Induced matrices `δ*₁ … δ*_{n_max+1}` (index `n−1` holds `δ*ₙ`).
pub fn induced_maps(alg: &BoundAlgebra, diff: Differential, n_max: usize) -> Result<Vec<SparseMatrix>, HochschildError> {
    let maps: Vec<BimoduleMap> = (1..=n_max + 1).map(|n| diff.map(n)).collect::<Result<_, _>>()?;
    Ok(maps.par_iter().map(|m| induced_map(alg, m)).collect())
}

/// `dim HHⁿ = dim Cⁿ − rank δ*ₙ₊₁ − rank δ*ₙ` for `n ≤ n_max`.
pub fn hh_dims(alg: &BoundAlgebra, diff: Differential, n_max: usize) -> Result<Vec<HhRow>, HochschildError> {
    let mats = induced_maps(alg, diff, n_max)?;
    let ranks: Vec<usize> = mats.par_iter().map(SparseMatrix::rank).collect();
    let hecke = matches!(diff, Differential::Hecke(_)) || matches!(diff, Differential::Lambda { r: 2, s: 1 });
    Ok((0..=n_max)
        .map(|n| {
            let dim_cochain = cochain_dim(alg, n);
            let rank_in = if n == 0 { 0 } else { ranks[n - 1] };
            let rank_out = ranks[n];
            HhRow {
                n,
                dim_cochain,
                rank_in,
                rank_out,
                dim_hh: dim_cochain - rank_in - rank_out,
                formula: hecke.then(|| hh_formula(n)),
            }
        })
        .collect())
}

pub fn hh_dim(alg: &BoundAlgebra, n: usize) -> Result<usize, HochschildError> {
    let row = hh_dims(alg, Differential::Hecke(Default::default()), n)?.pop().expect("row");
    if !row.matches() {
        return Err(HochschildError::DimensionMismatch { n, computed: row.dim_hh, formula: hh_formula(n) });
    }
    Ok(row.dim_hh)
}

/// Named cocycle families spanning HH^n(A).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CocycleName {
    Phi,
    Theta(usize),
    Psi(usize),
    Chi(usize),
    EpsPhi,
    EpsBarPhi,
    EpsChi,
    EpsBarChi,
}

impl std::fmt::Display for CocycleName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CocycleName::Phi => write!(f, "phi"),
            CocycleName::Theta(l) => write!(f, "theta_{l}"),
            CocycleName::Psi(l) => write!(f, "psi_{l}"),
            CocycleName::Chi(l) => write!(f, "chi_{l}"),
            CocycleName::EpsPhi => write!(f, "e*phi"),
            CocycleName::EpsBarPhi => write!(f, "E*phi"),
            CocycleName::EpsChi => write!(f, "e*chi_1"),
            CocycleName::EpsBarChi => write!(f, "E*chi_1"),
        }
    }
}

fn tag(n: usize, family: Family, index: usize) -> GeneratorTag {
    GeneratorTag::new(n, family, index)
}

/// The named cochain of degree `n` (for `A`).
pub fn named_cocycle(alg: &BoundAlgebra, name: CocycleName, n: usize) -> Result<Cochain, HochschildError> {
    let (k, i) = (n / 4, n % 4);
    let even = n > 0 && i % 2 == 0;
    let out_of_range = || HochschildError::OutOfRange { name: name.to_string(), n };
    let e1 = alg.word("e1");
    let e2 = alg.word("e2");
    let mut values = BTreeMap::new();
    match name {
        CocycleName::Phi | CocycleName::EpsPhi | CocycleName::EpsBarPhi => {
            if !even {
                return Err(out_of_range());
            }
            values.insert(tag(n, Family::G, 1), e1);
            values.insert(tag(n, Family::GBar, 1), e2);
        }
        CocycleName::Theta(l) => {
            if !even || l == 0 || l > k {
                return Err(out_of_range());
            }
            for j in [2 * l, 2 * l + 1] {
                values.insert(tag(n, Family::G, j), e1.clone());
                values.insert(tag(n, Family::GBar, j), e2.clone());
            }
        }
        CocycleName::Psi(l) => {
            if !even || l == 0 || l > k {
                return Err(out_of_range());
            }
            values.insert(tag(n, Family::G, 2 * l), alg.word("e.e"));
        }
        CocycleName::Chi(l) => {
            let m = match i {
                1 => 2 * k + 1,
                3 => 2 * k + 2,
                _ => return Err(out_of_range()),
            };
            if l == 0 || l > m {
                return Err(out_of_range());
            }
            let sign = alg.field().from_i64(if l % 2 == 1 { 1 } else { -1 });
            values.insert(tag(n, Family::G, l), alg.word("e"));
            values.insert(tag(n, Family::GBar, l), alg.word("E"));
            values.insert(tag(n, Family::F, l), alg.word("a").scale(&sign));
            values.insert(tag(n, Family::FBar, l), alg.word("A").scale(&sign));
        }
        CocycleName::EpsChi | CocycleName::EpsBarChi => {
            let base = named_cocycle(alg, CocycleName::Chi(1), n)?;
            let a = if name == CocycleName::EpsChi { alg.word("e") } else { alg.word("E") };
            return Ok(base.left_multiply(alg, &a, &name.to_string()));
        }
    }
    let base = Cochain { degree: n, name: name.to_string(), values };
    Ok(match name {
        CocycleName::EpsPhi => base.left_multiply(alg, &alg.word("e"), &name.to_string()),
        CocycleName::EpsBarPhi => base.left_multiply(alg, &alg.word("E"), &name.to_string()),
        _ => base,
    })
}

/// The listed basis of `HHⁿ(A)` for `n ≥ 1`.
pub fn basis_names(n: usize) -> Vec<CocycleName> {
    let (k, i) = (n / 4, n % 4);
    let mut out = Vec::new();
    if i % 2 == 0 {
        out.extend([CocycleName::Phi, CocycleName::EpsPhi, CocycleName::EpsBarPhi]);
        for l in 1..=k {
            out.push(CocycleName::Psi(l));
            out.push(CocycleName::Theta(l));
        }
    } else {
        let m = if i == 1 { 2 * k + 1 } else { 2 * k + 2 };
        out.extend((1..=m).map(CocycleName::Chi));
        out.extend([CocycleName::EpsChi, CocycleName::EpsBarChi]);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub cocycle: bool,
    pub independent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub n: usize,
    pub dim_cochain: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub dim_hh: usize,
    pub formula: usize,
    pub basis: Vec<BasisEntry>,
}

impl CohomologyReport {
    pub fn passed(&self) -> bool {
        self.dim_hh == self.formula
            && self.basis.len() == self.dim_hh
            && self.basis.iter().all(|b| b.cocycle && b.independent)
    }
}

fn certify(
    alg: &BoundAlgebra,
    n: usize,
    named: Vec<(String, SparseVec)>,
    incoming: Option<&SparseMatrix>,
    outgoing: &SparseMatrix,
) -> CohomologyReport {
    let mut ech = Echelon::new(alg.field());
    if let Some(m) = incoming {
        for c in m.col_vecs() {
            ech.insert(c);
        }
    }
    let rank_in = ech.dim();
    let rank_out = outgoing.rank();
    let basis = named
        .into_iter()
        .map(|(name, v)| {
            let cocycle = outgoing.apply(&v).is_empty();
            let independent = ech.insert(v);
            BasisEntry { name, cocycle, independent }
        })
        .collect();
    let dim_cochain = cochain_dim(alg, n);
    CohomologyReport { n, dim_cochain, rank_in, rank_out, dim_hh: dim_cochain - rank_in - rank_out, formula: hh_formula(n), basis }
}

/// Certificate for the listed basis of `HHⁿ(A)`, `n ≥ 1`.
pub fn check_basis(alg: &BoundAlgebra, n: usize) -> Result<CohomologyReport, HochschildError> {
    if alg.field().characteristic() == 2 {
        return Err(HochschildError::CharacteristicTwo);
    }
    if n == 0 {
        return check_hh0(alg);
    }
    let diff = Differential::Hecke(Default::default());
    let incoming = induced_map(alg, &diff.map(n)?);
    let outgoing = induced_map(alg, &diff.map(n + 1)?);
    let named = basis_names(n)
        .into_iter()
        .map(|c| {
            let co = named_cocycle(alg, c, n)?;
            Ok((co.name.clone(), co.vector(alg)?))
        })
        .collect::<Result<Vec<_>, HochschildError>>()?;
    Ok(certify(alg, n, named, Some(&incoming), &outgoing))
}

/// Degree-0 cochain of a central candidate `a`: `g⁰ ↦ e₁ a e₁`, `ḡ⁰ ↦ e₂ a e₂`.
pub fn degree_zero_cochain(alg: &BoundAlgebra, a: &PathElement, name: &str) -> Cochain {
    let mut values = BTreeMap::new();
    for (t, v) in [(tag(0, Family::G, 1), "e1"), (tag(0, Family::GBar, 1), "e2")] {
        let e = alg.word(v);
        let x = alg.multiply(&alg.multiply(&e, a), &e);
        if !x.is_zero() {
            values.insert(t, x);
        }
    }
    Cochain { degree: 0, name: name.to_string(), values }
}

/// The centre basis `{e₁+e₂, ε, ε̄, ε², ε̄²}`.
pub fn hh0_basis(alg: &BoundAlgebra) -> Vec<Cochain> {
    let one = alg.one();
    [("1", one), ("e", alg.word("e")), ("E", alg.word("E")), ("e.e", alg.word("e.e")), ("E.E", alg.word("E.E"))]
        .iter()
        .map(|(name, a)| degree_zero_cochain(alg, a, name))
        .collect()
}

fn check_hh0(alg: &BoundAlgebra) -> Result<CohomologyReport, HochschildError> {
    let outgoing = induced_map(alg, &Differential::Hecke(Default::default()).map(1)?);
    let named = hh0_basis(alg)
        .into_iter()
        .map(|c| Ok((c.name.clone(), c.vector(alg)?)))
        .collect::<Result<Vec<_>, HochschildError>>()?;
    Ok(certify(alg, 0, named, None, &outgoing))
}

/// `ξ(x)` for each `x ∈ 𝒢ⁿ`: the `e_{o(x)}` coefficient of `c(x)` when `o(x) = t(x)`.
fn scalar_parts(c: &Cochain) -> BTreeMap<GeneratorTag, crate::field::FieldScalar> {
    let mut out = BTreeMap::new();
    for (t, v) in &c.values {
        if t.origin() == t.terminus() {
            let s = v.coefficient(&Path::trivial(t.origin()));
            if !s.is_zero() {
                out.insert(*t, s);
            }
        }
    }
    out
}

/// Image of a cocycle in `Eⁿ`: the length-`n` element `v` with `⟨v, x⟩ = ξ(x)`
/// for all `x ∈ 𝒢ⁿ`, taken modulo the relations of `E(A)`.
pub fn project_to_ext(alg: &BoundAlgebra, ext: &GradedAlgebra, c: &Cochain) -> Result<ExtElement, HochschildError> {
    let n = c.degree;
    let diff = Differential::Hecke(Default::default());
    let outgoing = induced_map(alg, &diff.map(n + 1)?);
    if !outgoing.apply(&c.vector(alg)?).is_empty() {
        return Err(HochschildError::NotACocycle(c.name.clone()));
    }
    let field = ext.field();
    let xi = scalar_parts(c);
    let g = gset(n)?;
    let paths = ext.quiver().paths_of_length(n);
    let pindex: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    // rows (x | ξ(x)) with column 0 for ξ; pivots are the largest path column
    let mut ech = Echelon::new(field);
    for (t, x) in &g.elements {
        let mut row = SparseVec::new();
        for (p, cf) in x.to_field(field).terms() {
            add_entry(&mut row, pindex[p] + 1, cf.clone());
        }
        if let Some(s) = xi.get(t) {
            add_entry(&mut row, 0, s.to_i64().map_or_else(|| s.clone(), |k| field.from_i64(k)));
        }
        ech.insert(row);
    }
    let (rows, pivots) = ech.into_rref();
    let mut v = PathElement::zero(field);
    for (row, p) in rows.iter().zip(pivots) {
        if p == 0 {
            return Err(HochschildError::NotACocycle(c.name.clone()));
        }
        if let Some(s) = row.get(&0) {
            v.add_term(paths[p - 1].clone(), s.clone());
        }
    }
    if v.is_zero() {
        return Ok(ExtElement::zero(n));
    }
    Ok(ext.element(&v).expect("homogeneous"))
}

/// `Field` of the algebra for convenience in reports.
pub fn field_of(alg: &BoundAlgebra) -> Field {
    alg.field()
}

//! The line-based algebra spec format.
//!
//! ```text
//! # comment
//! name: hecke
//! family: hecke            # or lambda
//! field: rational          # or prime 5
//! vertices: 1 2
//! arrow: e 1 1             # name source target
//! involution: e E          # swapped pair; unlisted names are fixed
//! relation: e.e - a.A      # signed path words, optional `c*` coefficients
//! r: 3                     # lambda only
//! s: 1
//! ```

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use sha2::{Digest, Sha256};
use tame_hecke::algebra::{hecke_quiver, lambda_algebra, Arrow, Involution};
use tame_hecke::{BoundAlgebra, Field, PathElement, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecFamily {
    Hecke,
    Lambda,
}

impl SpecFamily {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "hecke" => Ok(SpecFamily::Hecke),
            "lambda" => Ok(SpecFamily::Lambda),
            _ => bail!("unknown family `{s}` (expected hecke or lambda)"),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SpecFamily::Hecke => "hecke",
            SpecFamily::Lambda => "lambda",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    /// `forced` admits characteristic 2.
    Prime { p: u64, forced: bool },
}

impl FieldSpec {
    /// Accepts `rational`, `q`, `prime P`, `fp:P`, with a trailing `!` to allow `P = 2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s == "rational" {
            return Ok(FieldSpec::Rational);
        }
        let rest = s
            .strip_prefix("fp:")
            .or_else(|| s.strip_prefix("prime"))
            .ok_or_else(|| anyhow!("unknown field `{s}` (expected q, rational, fp:P or prime P)"))?
            .trim();
        let (digits, forced) = match rest.strip_suffix('!') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let p: u64 = digits.trim().parse().with_context(|| format!("bad prime `{digits}`"))?;
        let f = FieldSpec::Prime { p, forced };
        f.field()?;
        Ok(f)
    }

    pub fn field(self) -> Result<Field> {
        match self {
            FieldSpec::Rational => Ok(Field::Rational),
            FieldSpec::Prime { p: 2, forced: false } => {
                bail!("characteristic 2 is excluded by default; write fp:2! to force it")
            }
            FieldSpec::Prime { p, forced: true } => Ok(Field::prime_unchecked(p)?),
            FieldSpec::Prime { p, forced: false } => Ok(Field::prime(p)?),
        }
    }

    fn to_spec(self) -> String {
        match self {
            FieldSpec::Rational => "rational".into(),
            FieldSpec::Prime { p, forced } => format!("prime {p}{}", if forced { "!" } else { "" }),
        }
    }
}

/// One relation: signed multiples of path words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation(pub Vec<(i64, String)>);

impl Relation {
    fn parse(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        let flush = |cur: &mut String, sign: i64, terms: &mut Vec<(i64, String)>| -> Result<()> {
            let t = cur.trim();
            if t.is_empty() {
                bail!("empty term in relation `{s}`");
            }
            let (c, w) = match t.split_once('*') {
                Some((c, w)) => (c.trim().parse::<i64>().with_context(|| format!("bad coefficient `{c}`"))?, w.trim()),
                None => (1, t),
            };
            if w.is_empty() || w.contains(char::is_whitespace) {
                bail!("bad path word `{w}`");
            }
            terms.push((sign * c, w.to_string()));
            cur.clear();
            Ok(())
        };
        for (i, ch) in s.char_indices() {
            match ch {
                '+' | '-' => {
                    if i == 0 || s[..i].trim().is_empty() {
                        if ch == '-' {
                            sign = -sign;
                        }
                        continue;
                    }
                    flush(&mut cur, sign, &mut terms)?;
                    sign = if ch == '-' { -1 } else { 1 };
                }
                _ => cur.push(ch),
            }
        }
        flush(&mut cur, sign, &mut terms)?;
        Ok(Relation(terms))
    }

    fn to_spec(&self) -> String {
        let mut out = String::new();
        for (i, (c, w)) in self.0.iter().enumerate() {
            let mag = c.unsigned_abs();
            let body = if mag == 1 { w.clone() } else { format!("{mag}*{w}") };
            match (i, *c < 0) {
                (0, false) => out.push_str(&body),
                (0, true) => write!(out, "-{body}").unwrap(),
                (_, false) => write!(out, " + {body}").unwrap(),
                (_, true) => write!(out, " - {body}").unwrap(),
            }
        }
        out
    }

    fn element(&self, q: &Quiver) -> Result<PathElement> {
        let mut x = PathElement::zero(Field::Rational);
        for (c, w) in &self.0 {
            let p = q.parse_word(w).ok_or_else(|| anyhow!("`{w}` is not a path in the quiver"))?;
            x.add_term(p, Field::Rational.from_i64(*c));
        }
        Ok(x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: Option<String>,
    pub family: SpecFamily,
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub involution: Vec<(String, String)>,
    pub relations: Vec<Relation>,
    pub r: Option<usize>,
    pub s: Option<usize>,
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut family = None;
        let mut field = None;
        let mut vertices: Option<Vec<String>> = None;
        let mut arrows = Vec::new();
        let mut involution = Vec::new();
        let mut relations = Vec::new();
        let mut relation_lines = Vec::new();
        let (mut r, mut s) = (None, None);
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |e: anyhow::Error| e.context(format!("line {line_no}: {line}"));
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| anyhow!("line {line_no}: expected `key: value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let once = |seen: bool| if seen { Err(anyhow!("line {line_no}: `{key}` given twice")) } else { Ok(()) };
            match key {
                "name" => {
                    once(name.is_some())?;
                    name = Some(value.to_string());
                }
                "family" => {
                    once(family.is_some())?;
                    family = Some(SpecFamily::parse(value).map_err(at)?);
                }
                "field" => {
                    once(field.is_some())?;
                    field = Some(FieldSpec::parse(value).map_err(at)?);
                }
                "vertices" => {
                    once(vertices.is_some())?;
                    vertices = Some(value.split_whitespace().map(str::to_string).collect());
                }
                "arrow" => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    let [n, src, tgt] = parts[..] else {
                        bail!("line {line_no}: arrow needs `name source target`");
                    };
                    arrows.push((n.to_string(), src.to_string(), tgt.to_string()));
                }
                "involution" => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    let [a, b] = parts[..] else {
                        bail!("line {line_no}: involution needs a pair of names");
                    };
                    involution.push((a.to_string(), b.to_string()));
                }
                "relation" => {
                    relations.push(Relation::parse(value).map_err(at)?);
                    relation_lines.push(line_no);
                }
                "r" | "s" => {
                    let slot = if key == "r" { &mut r } else { &mut s };
                    once(slot.is_some())?;
                    *slot = Some(value.parse::<usize>().map_err(|e| anyhow!("line {line_no}: bad {key}: {e}"))?);
                }
                _ => bail!("line {line_no}: unknown key `{key}`"),
            }
        }
        let family = family.ok_or_else(|| anyhow!("missing `family`"))?;
        let spec = AlgebraSpec {
            name,
            family,
            field: field.unwrap_or(FieldSpec::Rational),
            vertices: vertices.unwrap_or_default(),
            arrows,
            involution,
            relations,
            r,
            s,
        };
        spec.validate()?;
        if spec.family == SpecFamily::Hecke {
            let q = spec.quiver()?;
            for (rel, line_no) in spec.relations.iter().zip(relation_lines) {
                rel.element(&q).map_err(|e| e.context(format!("line {line_no}: relation {}", rel.to_spec())))?;
            }
        }
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        match self.family {
            SpecFamily::Lambda => {
                if !(self.vertices.is_empty() && self.arrows.is_empty() && self.involution.is_empty() && self.relations.is_empty()) {
                    bail!("lambda specs carry only r and s; the quiver and relations are generated");
                }
                let (Some(r), Some(s)) = (self.r, self.s) else {
                    bail!("lambda specs need both r and s");
                };
                if r < 2 || s < 1 {
                    bail!("lambda needs r >= 2 and s >= 1, got r = {r}, s = {s}");
                }
            }
            SpecFamily::Hecke => {
                if self.r.is_some() || self.s.is_some() {
                    bail!("r and s only apply to the lambda family");
                }
                if self.vertices.is_empty() || self.arrows.is_empty() {
                    bail!("hecke specs declare vertices and arrows");
                }
            }
        }
        Ok(())
    }

    /// Canonical text; `parse(to_text(x)) == x`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            writeln!(out, "name: {n}").unwrap();
        }
        writeln!(out, "family: {}", self.family.as_str()).unwrap();
        writeln!(out, "field: {}", self.field.to_spec()).unwrap();
        if !self.vertices.is_empty() {
            writeln!(out, "vertices: {}", self.vertices.join(" ")).unwrap();
        }
        for (n, a, b) in &self.arrows {
            writeln!(out, "arrow: {n} {a} {b}").unwrap();
        }
        for (a, b) in &self.involution {
            writeln!(out, "involution: {a} {b}").unwrap();
        }
        for rel in &self.relations {
            writeln!(out, "relation: {}", rel.to_spec()).unwrap();
        }
        if let Some(r) = self.r {
            writeln!(out, "r: {r}").unwrap();
        }
        if let Some(s) = self.s {
            writeln!(out, "s: {s}").unwrap();
        }
        out
    }

    /// SHA-256 of the canonical text.
    pub fn digest(&self) -> String {
        let h = Sha256::digest(self.to_text().as_bytes());
        h.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// `(r, s)` of the presented algebra; the hecke family is `(2, 1)`.
    pub fn params(&self) -> (usize, usize) {
        (self.r.unwrap_or(2), self.s.unwrap_or(1))
    }

    pub fn quiver(&self) -> Result<Quiver> {
        if self.family == SpecFamily::Lambda {
            return Ok(hecke_quiver());
        }
        let vertex = |v: &str| {
            self.vertices.iter().position(|w| w == v).ok_or_else(|| anyhow!("arrow endpoint `{v}` is not a declared vertex"))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|(n, a, b)| Ok(Arrow { name: n.clone(), source: vertex(a)?, target: vertex(b)? }))
            .collect::<Result<Vec<_>>>()?;
        let q = Quiver::new(self.vertices.clone(), arrows)?;
        let mut inv = Involution { vertices: (0..self.vertices.len()).collect(), arrows: (0..self.arrows.len()).collect() };
        for (a, b) in &self.involution {
            if let (Some(i), Some(j)) = (q.vertex_index(a), q.vertex_index(b)) {
                inv.vertices[i] = j;
                inv.vertices[j] = i;
            } else if let (Some(i), Some(j)) = (q.arrow_index(a), q.arrow_index(b)) {
                inv.arrows[i] = j;
                inv.arrows[j] = i;
            } else {
                bail!("involution pair `{a} {b}` does not name two vertices or two arrows");
            }
        }
        Ok(q.with_involution(inv)?)
    }

    /// Build the algebra over `field`. The differential tables are written for the
    /// two-vertex quiver with loops at both ends, so hecke specs must have that shape.
    pub fn build(&self, field: Field) -> Result<BoundAlgebra> {
        if self.family == SpecFamily::Lambda {
            let (r, s) = self.params();
            return Ok(lambda_algebra(r, s, field));
        }
        let q = self.quiver()?;
        let reference = hecke_quiver();
        let shape = |q: &Quiver| -> Vec<(usize, usize)> { q.arrows().iter().map(|a| (a.source, a.target)).collect() };
        if shape(&q) != shape(&reference) || q.involution() != reference.involution() {
            bail!("the quiver must have arrows loop(1), 1->2, 2->1, loop(2) in that order, swapped by the involution");
        }
        let rels = self
            .relations
            .iter()
            .enumerate()
            .map(|(i, r)| r.element(&q).with_context(|| format!("relation {}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        let longest = rels.iter().filter_map(PathElement::max_len).max().unwrap_or(1);
        Ok(BoundAlgebra::build(q, rels, field, 2 * longest + 4)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HECKE: &str = include_str!("../specs/hecke.spec");

    #[test]
    fn relation_round_trip() {
        for s in ["e.e - a.A", "-2*e.e + a.A", "a.E", "E.E - 3*A.a + e2"] {
            let r = Relation::parse(s).unwrap();
            assert_eq!(Relation::parse(&r.to_spec()).unwrap(), r);
        }
        assert_eq!(Relation::parse("- e.e").unwrap().0, vec![(-1, "e.e".to_string())]);
        assert!(Relation::parse("e.e -").is_err());
        assert!(Relation::parse("e e").is_err());
    }

    #[test]
    fn hecke_spec_builds_a() {
        let spec = AlgebraSpec::parse(HECKE).unwrap();
        let a = spec.build(Field::Rational).unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(a.degree_dims(), vec![2, 4, 2]);
        assert_eq!(AlgebraSpec::parse(&spec.to_text()).unwrap(), spec);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = AlgebraSpec::parse("family: hecke\ncolour: blue\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = AlgebraSpec::parse("family: lambda\nr: 3\ns: x\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = format!("{:#}", AlgebraSpec::parse("family: hecke\nrelation: e.e +\n").unwrap_err());
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn field_parsing() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rational);
        assert_eq!(FieldSpec::parse("prime 5").unwrap(), FieldSpec::Prime { p: 5, forced: false });
        assert!(FieldSpec::parse("fp:2").is_err());
        assert!(FieldSpec::parse("fp:2!").is_ok());
        assert!(FieldSpec::parse("fp:9").is_err());
    }

    #[test]
    fn lambda_rejects_relations() {
        assert!(AlgebraSpec::parse("family: lambda\nr: 3\ns: 1\nrelation: e.e\n").is_err());
        assert!(AlgebraSpec::parse("family: lambda\nr: 1\ns: 1\n").is_err());
    }

    #[test]
    fn bad_quiver_shape() {
        // breaks the involution, caught while parsing
        let text = HECKE.replace("arrow: a 1 2", "arrow: a 2 1");
        assert!(AlgebraSpec::parse(&text).is_err());
        // consistent quiver, arrows listed in another order
        let text = HECKE.replace("arrow: e 1 1\narrow: a 1 2", "arrow: a 1 2\narrow: e 1 1");
        let spec = AlgebraSpec::parse(&text).unwrap();
        let err = spec.build(Field::Rational).unwrap_err();
        assert!(err.to_string().contains("the quiver must have"), "{err}");
    }
}

//! One function per verb section. Each returns a [`Section`] and never panics on
//! a failed check; usage problems come back as errors.

use anyhow::{bail, Result};
use serde_json::{json, to_value};
use tame_hecke::algebra::{hecke_quiver, lambda_relations};
use tame_hecke::ext::{
    element_x, element_z, fingen_check, generating_set, graded_centrality, hecke_ext, reduction_identities, generator_reexpression,
    poly_independence, GradedAlgebra,
};
use tame_hecke::hochschild::{check_basis, hh_dims, named_cocycle, project_to_ext, CocycleName};
use tame_hecke::resolution::{resolution_report, DegreeReport, Differential};
use tame_hecke::BoundAlgebra;

use crate::report::{yes, Section, Table};

/// Does `alg` present the same quotient as `A`?
pub fn is_hecke(alg: &BoundAlgebra) -> bool {
    let q = hecke_quiver();
    alg.dim() == 8 && lambda_relations(&q, 2, 1).iter().all(|r| alg.normal_form(&r.to_field(alg.field())).is_zero())
}

pub fn require_hecke(alg: &BoundAlgebra, verb: &str) -> Result<()> {
    if !is_hecke(alg) {
        bail!("`{verb}` needs the tame Hecke algebra A; this spec presents a different quotient");
    }
    Ok(())
}

fn failure_kind(d: &DegreeReport) -> Option<&'static str> {
    if !d.terms_match {
        Some("TermMismatch")
    } else if !d.complex {
        Some("NotAComplex")
    } else if !d.exact {
        Some("NotExact")
    } else if !d.minimal {
        Some("NotMinimal")
    } else {
        None
    }
}

pub fn resolve(alg: &BoundAlgebra, diff: Differential, n_max: usize) -> Result<Section> {
    let rep = resolution_report(alg, diff, n_max)?;
    let mut t = Table::new(&["n", "|G^n|", "P11", "P12", "P21", "P22", "dim R_n", "rank d_n", "complex", "exact", "minimal"]);
    for d in &rep.degrees {
        let m = d.multiplicities;
        t.row(vec![
            d.n.to_string(),
            d.generators.to_string(),
            m[0].to_string(),
            m[1].to_string(),
            m[2].to_string(),
            m[3].to_string(),
            d.dim_r.to_string(),
            d.rank.to_string(),
            yes(d.complex),
            yes(d.exact),
            yes(d.minimal),
        ]);
    }
    let mut text = t.render();
    let differential = match diff {
        Differential::Hecke(_) => "delta".to_string(),
        Differential::Lambda { r, s } => format!("partial(r={r},s={s})"),
    };
    text.push_str(&format!("differential {differential}; dim A = {}; dim R_0 - rank d_1 = {}\n", rep.algebra_dim, rep.cokernel_dim));
    let failure = if rep.cokernel_dim != rep.algebra_dim {
        Some("NotExact at degree 0".to_string())
    } else {
        rep.degrees.iter().find_map(|d| failure_kind(d).map(|k| format!("{k} at degree {}", d.n)))
    };
    if let Some(f) = &failure {
        text.push_str(&format!("failure: {f}\n"));
    }
    let data = json!({
        "differential": differential,
        "max_degree": n_max,
        "algebra_dim": rep.algebra_dim,
        "cokernel_dim": rep.cokernel_dim,
        "degrees": to_value(&rep.degrees)?,
        "failure": failure,
    });
    Ok(Section { name: "resolve", pass: rep.passed() && failure.is_none(), data, text })
}

pub fn hh(alg: &BoundAlgebra, n_max: usize) -> Result<Section> {
    let rows = hh_dims(alg, Differential::Hecke(Default::default()), n_max)?;
    let mut t = Table::new(&["n", "dim C^n", "rank in", "rank out", "dim HH^n", "formula", "match"]);
    for r in &rows {
        t.row(vec![
            r.n.to_string(),
            r.dim_cochain.to_string(),
            r.rank_in.to_string(),
            r.rank_out.to_string(),
            r.dim_hh.to_string(),
            r.formula.map_or("-".into(), |f| f.to_string()),
            yes(r.matches()),
        ]);
    }
    let pass = rows.iter().all(|r| r.matches());
    let data = json!({ "max_degree": n_max, "degrees": to_value(&rows)? });
    Ok(Section { name: "hh", pass, data, text: t.render() })
}

pub fn hh_basis(alg: &BoundAlgebra, n_max: usize) -> Result<Section> {
    if alg.field().characteristic() == 2 {
        bail!("basis certificates need characteristic not 2: the named cocycles are independent only when 2 is invertible");
    }
    let mut t = Table::new(&["n", "dim HH^n", "formula", "certified", "basis"]);
    let mut reports = Vec::new();
    for n in 0..=n_max {
        let rep = check_basis(alg, n)?;
        let ok = rep.basis.iter().filter(|b| b.cocycle && b.independent).count();
        let names: Vec<&str> = rep.basis.iter().map(|b| b.name.as_str()).collect();
        t.row(vec![rep.n.to_string(), rep.dim_hh.to_string(), rep.formula.to_string(), ok.to_string(), names.join(" ")]);
        reports.push(rep);
    }
    let pass = reports.iter().all(|r| r.passed());
    let degrees: Vec<_> = reports
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "dim_cochain": r.dim_cochain,
                "dim_hh": r.dim_hh,
                "formula_value": r.formula,
                "basis_names": r.basis.iter().map(|b| b.name.clone()).collect::<Vec<_>>(),
                "basis": to_value(&r.basis).expect("serializable"),
                "pass": r.passed(),
            })
        })
        .collect();
    Ok(Section { name: "hh-basis", pass, data: json!({ "max_degree": n_max, "degrees": degrees }), text: t.render() })
}

fn ext_algebra(alg: &BoundAlgebra) -> GradedAlgebra {
    hecke_ext(alg.field())
}

pub fn ext_dims(e: &GradedAlgebra, n_max: usize) -> Section {
    let mut t = Table::new(&["n", "dim E^n", "2(n+1)"]);
    let mut dims = Vec::new();
    for n in 0..=n_max {
        let d = e.dim(n);
        t.row(vec![n.to_string(), d.to_string(), (2 * (n + 1)).to_string()]);
        dims.push(d);
    }
    let pass = dims.iter().enumerate().all(|(n, d)| *d == 2 * (n + 1));
    Section { name: "ext-dims", pass, data: json!({ "max_degree": n_max, "dims": dims }), text: t.render() }
}

pub fn ext_identities(e: &GradedAlgebra) -> Result<Section> {
    let ids = reduction_identities(e);
    let mut t = Table::new(&["identity", "holds", "bar holds"]);
    let mut text = String::new();
    for id in &ids {
        t.row(vec![id.name.clone(), yes(id.holds), yes(id.bar_holds)]);
    }
    text.push_str(&t.render());
    for id in ids.iter().filter(|i| i.note.is_some()) {
        text.push_str(&format!("note ({}): {}\n", id.name, id.note.as_deref().unwrap_or_default()));
    }
    let pass = ids.iter().all(|i| i.holds && i.bar_holds);
    Ok(Section { name: "ext-identities", pass, data: json!({ "identities": to_value(&ids)? }), text })
}

pub fn ext_centre(e: &GradedAlgebra) -> Result<Section> {
    let x = graded_centrality(e, "x", &element_x(e));
    let z = graded_centrality(e, "z", &element_z(e));
    // control: a degree-one loop is not graded central
    let eps = graded_centrality(e, "e", &e.word("e"));
    let mut t = Table::new(&["element", "degree", "graded central", "failing arrows"]);
    for c in [&x, &z, &eps] {
        t.row(vec![c.element.clone(), c.degree.to_string(), yes(c.central), c.failing_arrows.join(" ")]);
    }
    let pass = x.central && z.central && !eps.central;
    let data = json!({ "x": to_value(&x)?, "z": to_value(&z)?, "control": to_value(&eps)? });
    Ok(Section { name: "ext-centre", pass, data, text: t.render() })
}

pub fn ext_fingen(e: &GradedAlgebra, n_max: usize) -> Result<Section> {
    let s = generating_set(e);
    let rows = fingen_check(e, n_max);
    let re = generator_reexpression(e);
    let mut text = String::new();
    let used: Vec<&str> = s.iter().map(|g| g.used.as_str()).collect();
    text.push_str(&format!("S ({} elements): {}\n", s.len(), used.join(" ")));
    for g in s.iter().filter(|g| g.substituted) {
        text.push_str(&format!("substituted {} -> {} (the printed word does not compose)\n", g.printed, g.used));
    }
    let mut t = Table::new(&["n", "dim E^n", "span", "cokernel"]);
    for r in &rows {
        t.row(vec![r.n.to_string(), r.dim.to_string(), r.span.to_string(), r.cokernel.to_string()]);
    }
    text.push_str(&t.render());
    let re_fail: Vec<&String> = re.iter().filter(|(_, ok)| !**ok).map(|(k, _)| k).collect();
    text.push_str(&format!("s*arrow re-expressed over S: {}/{}\n", re.len() - re_fail.len(), re.len()));
    let pass = rows.iter().all(|r| r.cokernel == 0) && re_fail.is_empty();
    let data = json!({
        "max_degree": n_max,
        "generators": to_value(&s)?,
        "degrees": to_value(&rows)?,
        "reexpression": to_value(&re)?,
    });
    Ok(Section { name: "ext-fingen", pass, data, text })
}

pub fn ext_krull(e: &GradedAlgebra, n_max: usize) -> Result<Section> {
    let rows = poly_independence(e, n_max);
    let mut t = Table::new(&["n", "monomials", "rank", "independent"]);
    for r in &rows {
        t.row(vec![r.n.to_string(), r.monomials.join(" "), r.rank.to_string(), yes(r.independent)]);
    }
    let pass = rows.iter().all(|r| r.independent);
    let conclusion = if pass {
        format!("Krull dimension >= 2 evidence: x^a z^b independent through degree {n_max}")
    } else {
        "no evidence: a monomial family is dependent".to_string()
    };
    let mut text = t.render();
    text.push_str(&conclusion);
    text.push('\n');
    let data = json!({ "max_degree": n_max, "degrees": to_value(&rows)?, "conclusion": conclusion });
    Ok(Section { name: "ext-krull", pass, data, text })
}

pub fn projections(alg: &BoundAlgebra) -> Result<Section> {
    let e = ext_algebra(alg);
    let cases = [
        (CocycleName::Phi, 2, "x", element_x(&e)),
        (CocycleName::Theta(1), 4, "z", element_z(&e)),
        (CocycleName::Psi(1), 4, "0", tame_hecke::ext::ExtElement::zero(4)),
    ];
    let mut t = Table::new(&["cocycle", "n", "image", "expected", "match"]);
    let mut out = Vec::new();
    for (name, n, label, want) in cases {
        let c = named_cocycle(alg, name, n)?;
        let got = project_to_ext(alg, &e, &c)?;
        let show = |v: &tame_hecke::ext::ExtElement| if v.is_zero() { "0".to_string() } else { e.display(v) };
        let ok = got == want;
        t.row(vec![name.to_string(), n.to_string(), show(&got), if want.is_zero() { label.to_string() } else { format!("{label} = {}", show(&want)) }, yes(ok)]);
        out.push(json!({ "cocycle": name.to_string(), "n": n, "image": show(&got), "expected": label, "match": ok }));
    }
    let pass = out.iter().all(|v| v["match"] == true);
    Ok(Section { name: "projections", pass, data: json!({ "cases": out }), text: t.render() })
}

pub struct ExtFlags {
    pub centre: bool,
    pub fingen: bool,
    pub krull: bool,
}

pub fn ext(alg: &BoundAlgebra, n_max: usize, flags: &ExtFlags) -> Result<Vec<Section>> {
    let e = ext_algebra(alg);
    let mut out = vec![ext_dims(&e, n_max), ext_identities(&e)?];
    if flags.centre {
        out.push(ext_centre(&e)?);
    }
    if flags.fingen {
        out.push(ext_fingen(&e, n_max)?);
    }
    if flags.krull {
        out.push(ext_krull(&e, n_max)?);
    }
    Ok(out)
}

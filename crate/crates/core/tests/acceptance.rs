//! Acceptance criteria 1–10. Each prints one line; the test fails if any does.
//!
//! All comparisons are exact (tolerance 0). Runtime targets are enforced as
//! upper bounds on wall-clock time.

use std::time::{Duration, Instant};

use tame_hecke::algebra::{hecke_algebra, lambda_algebra};
use tame_hecke::ext::*;
use tame_hecke::hochschild::*;
use tame_hecke::resolution::*;
use tame_hecke::Field;

struct Outcome {
    id: u8,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn run(id: u8, title: &'static str, limit: Option<Duration>, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let t = Instant::now();
    let r = f();
    let elapsed = t.elapsed();
    let (mut pass, mut detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(l) = limit {
        if elapsed > l {
            pass = false;
            detail = format!("{detail}; over the {} s target", l.as_secs());
        }
    }
    Outcome { id, title, pass, detail, elapsed }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1() -> Result<String, String> {
    let sets = gsets_up_to(12).map_err(|e| e.to_string())?;
    for (n, g) in sets.iter().enumerate() {
        ensure(g.len() == 2 * (n + 1), format!("|G^{n}| = {}", g.len()))?;
        ensure(census(n) == resolution_term(n), format!("census mismatch at n = {n}"))?;
    }
    Ok("census = closed form and |G^n| = 2(n+1) for n <= 12".into())
}

fn c2() -> Result<String, String> {
    let a = hecke_algebra(Field::Rational);
    let rep = resolution_report(&a, Differential::Hecke(Transcription::default()), 8).map_err(|e| e.to_string())?;
    if let Some(f) = &rep.first_failure {
        return Err(f.clone());
    }
    ensure(rep.cokernel_dim == 8, format!("coker = {}", rep.cokernel_dim))?;
    let rank1 = rep.degrees[1].rank;
    Ok(format!("complex, exact, minimal for n <= 8; rank d1 = {rank1}, dim R0 - rank d1 = {}", rep.cokernel_dim))
}

fn c3() -> Result<String, String> {
    for (r, s) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let l = lambda_algebra(r, s, Field::Rational);
        let rep = resolution_report(&l, Differential::Lambda { r, s }, 6).map_err(|e| e.to_string())?;
        if let Some(f) = &rep.first_failure {
            return Err(format!("({r},{s}): {f}"));
        }
        ensure(rep.cokernel_dim == l.dim(), format!("({r},{s}): cokernel {}", rep.cokernel_dim))?;
    }
    for n in 1..=6 {
        ensure(partial(n, 2, 1).canonical() == delta(n).canonical(), format!("partial({n},2,1) != delta({n})"))?;
    }
    let a = hecke_algebra(Field::Rational);
    let readings = [Transcription::default(), Transcription { p1_odd_printed: true, ..Default::default() }];
    let passing = readings
        .iter()
        .filter(|tr| check_complex(&a, 6, Differential::Hecke(**tr)).is_ok() && check_exact(&a, 6, Differential::Hecke(**tr)).is_ok())
        .count();
    ensure(passing == 1, format!("{passing} readings of p1 pass"))?;
    Ok("four Lambda(r,s) resolutions exact for n <= 6; (2,1) equals delta; exactly one p1 reading passes".into())
}

fn c4() -> Result<String, String> {
    let expected = [5, 3, 3, 4, 5, 5, 5, 6, 7, 7];
    for field in [Field::Rational, Field::prime(5).unwrap()] {
        let a = hecke_algebra(field);
        let rows = hh_dims(&a, Differential::Hecke(Transcription::default()), 9).map_err(|e| e.to_string())?;
        let dims: Vec<usize> = rows.iter().map(|r| r.dim_hh).collect();
        ensure(dims == expected && rows.iter().all(HhRow::matches), format!("over {field}: {dims:?}"))?;
    }
    Ok(format!("dims {expected:?} over Q and F5"))
}

fn c5() -> Result<String, String> {
    let a = hecke_algebra(Field::Rational);
    let d1 = induced_map(&a, &delta(1));
    let kernel = d1.kernel_basis().len();
    ensure(kernel == 5, format!("ker = {kernel}"))?;
    let rep = check_basis(&a, 0).map_err(|e| e.to_string())?;
    ensure(rep.passed(), format!("{:?}", rep.basis))?;
    Ok("ker d1* has dim 5 and contains 1, e, E, e.e, E.E independently".into())
}

fn c6() -> Result<String, String> {
    let a = hecke_algebra(Field::Rational);
    let mut counts = Vec::new();
    for n in 1..=7 {
        let rep = check_basis(&a, n).map_err(|e| e.to_string())?;
        ensure(rep.passed(), format!("n = {n}: {:?}", rep.basis))?;
        counts.push(rep.basis.len());
    }
    ensure(counts == [3, 3, 4, 5, 5, 5, 6], format!("{counts:?}"))?;
    Ok(format!("named bases certified for n = 1..7, counts {counts:?}"))
}

fn c7() -> Result<String, String> {
    let e = hecke_ext(Field::Rational);
    for n in 0..=14 {
        ensure(e.dim(n) == 2 * (n + 1), format!("dim E^{n} = {}", e.dim(n)))?;
    }
    ensure(is_graded_central(&e, &element_x(&e)), "x not central")?;
    ensure(is_graded_central(&e, &element_z(&e)), "z not central")?;
    for id in reduction_identities(&e) {
        ensure(id.holds && id.bar_holds, format!("identity {} fails", id.name))?;
    }
    Ok("dim E^n = 2(n+1) for n <= 14; x, z graded central; 8 identities and bars hold".into())
}

fn c8() -> Result<String, String> {
    let e = hecke_ext(Field::Rational);
    for row in fingen_check(&e, 12) {
        ensure(row.cokernel == 0, format!("n = {}: cokernel {}", row.n, row.cokernel))?;
    }
    for row in poly_independence(&e, 12) {
        ensure(row.independent, format!("n = {}: {:?} dependent", row.n, row.monomials))?;
    }
    Ok("S generates E^n for n <= 12; x^a z^b independent for even n <= 12".into())
}

fn c9() -> Result<String, String> {
    let a = hecke_algebra(Field::Rational);
    let e = hecke_ext(Field::Rational);
    let phi = named_cocycle(&a, CocycleName::Phi, 2).map_err(|e| e.to_string())?;
    let theta = named_cocycle(&a, CocycleName::Theta(1), 4).map_err(|e| e.to_string())?;
    let px = project_to_ext(&a, &e, &phi).map_err(|e| e.to_string())?;
    let pz = project_to_ext(&a, &e, &theta).map_err(|e| e.to_string())?;
    ensure(px == element_x(&e), format!("phi^2 -> {}", e.display(&px)))?;
    ensure(pz == element_z(&e), format!("theta_1^4 -> {}", e.display(&pz)))?;
    Ok("phi^2 -> x and theta_1^4 -> z".into())
}

fn c10() -> Result<String, String> {
    let a = hecke_algebra(Field::Rational);
    let rows = delta_rows(4, Transcription::default()).map_err(|e| e.to_string())?;
    let (d3, d5) = (delta(3), delta(5));
    ensure(verify_sequence(&a, &[d3.clone(), delta(4), d5.clone()]).is_ok(), "unmutated table fails")?;
    let mut flips = 0;
    for (tag, terms) in &rows {
        for k in 0..terms.len() {
            let mut m = rows.clone();
            m.get_mut(tag).unwrap()[k].coef *= -1;
            let bad = from_rows(4, m);
            ensure(verify_sequence(&a, &[d3.clone(), bad, d5.clone()]).is_err(), format!("flip {tag} term {k} undetected"))?;
            flips += 1;
        }
    }
    // single flips in the bar-closed table too
    let closed = delta(4);
    for (tag, terms) in &closed.terms {
        for k in 0..terms.len() {
            let mut m = closed.clone();
            m.terms.get_mut(tag).unwrap()[k].coef *= -1;
            ensure(verify_sequence(&a, &[d3.clone(), m, d5.clone()]).is_err(), format!("closed flip {tag} term {k} undetected"))?;
            flips += 1;
        }
    }
    Ok(format!("all {flips} single sign flips in delta_4 detected"))
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let outcomes = [
        run(1, "resolution terms", Some(secs(1)), c1),
        run(2, "complex/exactness/minimality for A", Some(secs(30)), c2),
        run(3, "Lambda family", None, c3),
        run(4, "Hochschild dimensions", Some(secs(60)), c4),
        run(5, "HH^0 basis", None, c5),
        run(6, "basis certificates", None, c6),
        run(7, "Ext algebra", None, c7),
        run(8, "finite generation", None, c8),
        run(9, "pre-images", None, c9),
        run(10, "mutation sensitivity", None, c10),
    ];
    for o in &outcomes {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{verdict}] {}: {} ({:.2} s)", o.id, o.title, o.detail, o.elapsed.as_secs_f64());
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

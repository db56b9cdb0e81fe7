//! `tamehecke`: batch verification of resolutions, Hochschild cohomology and
//! Ext algebras from an algebra spec file.
//!
//! Exit status: 0 when every executed check passes, 1 when a check fails,
//! 2 on usage or spec errors.

mod commands;
mod report;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tame_hecke::resolution::Differential;
use tame_hecke::BoundAlgebra;

use commands::ExtFlags;
use report::{RunReport, Section, SpecInfo};
use spec::{AlgebraSpec, FieldSpec, SpecFamily};

const BUNDLED: &[(&str, &str)] = &[
    ("hecke", include_str!("../specs/hecke.spec")),
    ("lambda-2-1", include_str!("../specs/lambda-2-1.spec")),
    ("lambda-3-1", include_str!("../specs/lambda-3-1.spec")),
    ("lambda-2-2", include_str!("../specs/lambda-2-2.spec")),
    ("lambda-3-2", include_str!("../specs/lambda-3-2.spec")),
];

#[derive(Parser)]
#[command(name = "tamehecke", version, about = "Verify bimodule resolutions, Hochschild cohomology and Ext algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Resolution terms, complex, exactness and minimality per degree.
    Resolve(Common),
    /// Hochschild cohomology dimensions of A.
    Hh {
        #[command(flatten)]
        common: Common,
        /// Certify the named cocycle bases.
        #[arg(long)]
        check_basis: bool,
    },
    /// The Ext algebra of A.
    Ext {
        #[command(flatten)]
        common: Common,
        /// Graded centrality of x and z.
        #[arg(long)]
        centre: bool,
        /// Generation over K[x,z] by the sixteen-element set.
        #[arg(long)]
        fingen: bool,
        /// Independence of the monomials in x and z.
        #[arg(long)]
        krull: bool,
    },
    /// Images of named cocycles in the Ext algebra.
    Projections(Common),
    /// Every check the spec supports.
    All(Common),
}

#[derive(Args)]
struct Common {
    /// Spec file, or `builtin:NAME` for a bundled spec.
    spec: String,
    /// Highest degree to check; the default depends on the verb.
    #[arg(long, env = "TAMEHECKE_MAX_DEGREE")]
    max_degree: Option<usize>,
    /// Ground field, overriding the spec: q, fp:P, or fp:2! for characteristic 2.
    #[arg(long)]
    field: Option<String>,
    /// Which differential to use.
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// No text report on stdout.
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Hecke,
    Lambda,
}

struct Loaded {
    spec: AlgebraSpec,
    alg: BoundAlgebra,
    diff: Differential,
    field: String,
}

fn read_spec(src: &str) -> Result<AlgebraSpec> {
    let text = match src.strip_prefix("builtin:") {
        Some(name) => match BUNDLED.iter().find(|(n, _)| *n == name) {
            Some((_, t)) => t.to_string(),
            None => {
                let names: Vec<&str> = BUNDLED.iter().map(|(n, _)| *n).collect();
                bail!("no bundled spec `{name}` (have {})", names.join(", "));
            }
        },
        None => std::fs::read_to_string(src).with_context(|| format!("reading {src}"))?,
    };
    AlgebraSpec::parse(&text).with_context(|| format!("parsing {src}"))
}

fn load(c: &Common) -> Result<Loaded> {
    let mut spec = read_spec(&c.spec)?;
    if let Some(f) = &c.field {
        spec.field = FieldSpec::parse(f)?;
    }
    let field = spec.field.field()?;
    let alg = spec.build(field)?;
    let (r, s) = spec.params();
    let family = match c.family {
        Some(FamilyArg::Hecke) => SpecFamily::Hecke,
        Some(FamilyArg::Lambda) => SpecFamily::Lambda,
        None => spec.family,
    };
    let diff = match family {
        SpecFamily::Hecke if (r, s) != (2, 1) => bail!("the hecke differential needs r = 2, s = 1, got r = {r}, s = {s}"),
        SpecFamily::Hecke => Differential::Hecke(Default::default()),
        SpecFamily::Lambda => Differential::Lambda { r, s },
    };
    Ok(Loaded { spec, alg, diff, field: field.to_string() })
}

fn degree(c: &Common, default: usize) -> usize {
    c.max_degree.unwrap_or(default)
}

impl Cmd {
    fn common(&self) -> &Common {
        match self {
            Cmd::Resolve(c) | Cmd::Projections(c) | Cmd::All(c) => c,
            Cmd::Hh { common, .. } | Cmd::Ext { common, .. } => common,
        }
    }
}

fn run(cmd: &Cmd) -> Result<RunReport> {
    let c = cmd.common();
    let l = load(c)?;
    let (name, sections): (&'static str, Vec<Section>) = match cmd {
        Cmd::Resolve(_) => ("resolve", vec![commands::resolve(&l.alg, l.diff, degree(c, 8))?]),
        Cmd::Hh { check_basis, .. } => {
            if l.spec.params() != (2, 1) {
                bail!("`hh` needs the tame Hecke algebra A (family hecke, or lambda with r = 2, s = 1)");
            }
            let n = degree(c, 9);
            let mut v = vec![commands::hh(&l.alg, n)?];
            if *check_basis {
                v.push(commands::hh_basis(&l.alg, n)?);
            }
            ("hh", v)
        }
        Cmd::Ext { centre, fingen, krull, .. } => {
            commands::require_hecke(&l.alg, "ext")?;
            let flags = ExtFlags { centre: *centre, fingen: *fingen, krull: *krull };
            ("ext", commands::ext(&l.alg, degree(c, 12), &flags)?)
        }
        Cmd::Projections(_) => {
            commands::require_hecke(&l.alg, "projections")?;
            ("projections", vec![commands::projections(&l.alg)?])
        }
        Cmd::All(_) => {
            let mut v = vec![commands::resolve(&l.alg, l.diff, degree(c, 8))?];
            // the remaining checks concern A only
            if commands::is_hecke(&l.alg) {
                v.push(commands::hh(&l.alg, degree(c, 9))?);
                if l.alg.field().characteristic() != 2 {
                    v.push(commands::hh_basis(&l.alg, degree(c, 7))?);
                }
                let flags = ExtFlags { centre: true, fingen: true, krull: true };
                v.extend(commands::ext(&l.alg, degree(c, 12), &flags)?);
                v.push(commands::projections(&l.alg)?);
            }
            ("all", v)
        }
    };
    let spec = SpecInfo {
        name: l.spec.name.clone().unwrap_or_else(|| c.spec.clone()),
        family: l.spec.family.as_str().to_string(),
        digest: l.spec.digest(),
    };
    Ok(RunReport { command: name, spec, field: l.field, sections })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.cmd.common();
    let report = match run(&cli.cmd) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("tamehecke: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &common.json {
        let mut body = serde_json::to_string_pretty(&report.to_json()).expect("serializable");
        body.push('\n');
        if let Err(e) = std::fs::write(path, body) {
            eprintln!("tamehecke: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if !common.quiet {
        print!("{}", report.to_text());
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_specs_round_trip() {
        for (name, text) in BUNDLED {
            let spec = AlgebraSpec::parse(text).unwrap();
            assert_eq!(spec.name.as_deref(), Some(*name));
            assert_eq!(AlgebraSpec::parse(&spec.to_text()).unwrap(), spec, "{name}");
            spec.build(tame_hecke::Field::Rational).unwrap();
        }
    }

    #[test]
    fn bundled_hecke_matches_lambda_2_1() {
        let a = read_spec("builtin:hecke").unwrap().build(tame_hecke::Field::Rational).unwrap();
        assert!(commands::is_hecke(&a));
        let l = read_spec("builtin:lambda-2-1").unwrap().build(tame_hecke::Field::Rational).unwrap();
        assert!(commands::is_hecke(&l));
        let l31 = read_spec("builtin:lambda-3-1").unwrap().build(tame_hecke::Field::Rational).unwrap();
        assert!(!commands::is_hecke(&l31));
    }
}

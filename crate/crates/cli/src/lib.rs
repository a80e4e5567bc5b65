//! Batch driver: census, braid monodromy dumps, certificates,
//! presentations, invariants, model identities and predictions for one
//! `(a,b)` or a grid of them.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use hirzebruch::complex::{build_complex, census, classify_vertices, closed_form_counts, ComplexParams, DegenerationComplex};
use hirzebruch::factorization::{assemble, certify, Certificate, Factorization};
use hirzebruch::grouptheory::{abelianization, check_perm_quotient, triangle_assignment, AbelianInvariants};
use hirzebruch::model::{build_n_quotient, predict_series, verify_identities, IdentityKind, Reading};
use hirzebruch::vankampen::{presentation_unchecked, tietze_simplify, Presentation, PresentationKind};
use hirzebruch::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CERTIFICATE: u8 = 2;
pub const EXIT_IDENTITY: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "f1bmf", version, about = "Braid monodromy and fundamental groups of branch curves of Hirzebruch surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Planes, lines, punctures and vertex classes, enumerated and closed-form.
    Census,
    /// The complex K(a,b) and its vertex classification as JSON.
    DumpComplex,
    /// The braid monodromy factorization, one factor per line.
    DumpBmf,
    /// Degree, permutation, linking and (for small m) Artin checks of the product.
    Certify,
    /// Van Kampen presentations in GAP syntax and JSON.
    EmitPresentation,
    /// Abelianizations, Tietze simplification and the S_n quotient.
    Invariants,
    /// The identity suite in the quotient of the combined model.
    VerifyIdentities,
    /// Predicted lower central series quotients.
    Predict,
    /// Every stage in order.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    CToMu,
    CToTau,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, global = true)]
    pub a: Option<i64>,
    #[arg(long, global = true)]
    pub b: Option<i64>,
    /// Grid such as `a=1..3,b=2..4` (inclusive ranges).
    #[arg(long, global = true)]
    pub grid: Option<String>,
    /// Artifact directory.
    #[arg(long, global = true, env = "F1BMF_OUT", default_value = "f1bmf-out")]
    pub out: PathBuf,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 20_000)]
    pub tietze_budget: usize,
    #[arg(long, global = true, default_value_t = 4_000)]
    pub tietze_max_len: usize,
    /// Largest strand count for the exact Artin comparison with the full twist.
    #[arg(long, global = true, default_value_t = 16)]
    pub artin_limit: usize,
    /// Insertion budget of the orbit saturation of N(a,b).
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub orbit_budget: usize,
    #[arg(long, global = true, value_enum, default_value = "c-to-mu")]
    pub reading: ReadingArg,
    /// Emit presentations even when the certificate fails.
    #[arg(long, global = true)]
    pub unchecked: bool,
}

impl RunConfig {
    pub fn cells(&self) -> Result<Vec<ComplexParams>, String> {
        let mut out = Vec::new();
        if let Some(g) = &self.grid {
            let (ar, br) = parse_grid(g)?;
            for a in ar.0..=ar.1 {
                for b in br.0..=br.1 {
                    out.push(ComplexParams::new(a, b).map_err(|e| e.to_string())?);
                }
            }
        } else {
            match (self.a, self.b) {
                (Some(a), Some(b)) => out.push(ComplexParams::new(a, b).map_err(|e| e.to_string())?),
                _ => return Err("give --a and --b, or --grid".into()),
            }
        }
        if out.is_empty() {
            return Err("empty grid".into());
        }
        if self.tietze_budget == 0 || self.orbit_budget == 0 {
            return Err("budgets must be positive".into());
        }
        Ok(out)
    }

    fn reading(&self) -> Reading {
        match self.reading {
            ReadingArg::CToMu => Reading::CToMu,
            ReadingArg::CToTau => Reading::CToTau,
        }
    }
}

fn parse_range(s: &str) -> Result<Range, String> {
    let bad = || format!("bad range {s:?}");
    match s.split_once("..") {
        Some((lo, hi)) => {
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            Ok((lo, hi))
        }
        None => {
            let v: i64 = s.trim().parse().map_err(|_| bad())?;
            Ok((v, v))
        }
    }
}

/// Inclusive range `(lo, hi)`.
pub type Range = (i64, i64);

/// `a=1..3,b=2..4` into the two inclusive ranges.
pub fn parse_grid(spec: &str) -> Result<(Range, Range), String> {
    let (mut ar, mut br) = (None, None);
    for part in spec.split(',') {
        let (key, range) = part.split_once('=').ok_or_else(|| format!("bad grid component {part:?}"))?;
        let r = parse_range(range)?;
        match key.trim() {
            "a" => ar = Some(r),
            "b" => br = Some(r),
            k => return Err(format!("unknown grid key {k:?}")),
        }
    }
    match (ar, br) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err("grid needs both a and b".into()),
    }
}

/// Result of one stage on one cell.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub json: Value,
    pub files: Vec<(String, String)>,
}

impl Outcome {
    fn new(code: u8, text: String, json: Value) -> Self {
        Outcome { code, text, json, files: Vec::new() }
    }

    fn from_error(stage: &str, e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted(_) => EXIT_BUDGET,
            Error::Certificate(_) => EXIT_CERTIFICATE,
            _ => EXIT_USAGE,
        };
        Outcome::new(code, format!("error: {e}"), json!({ "stage": stage, "error": e.to_string() }))
    }
}

fn ok_word(b: bool) -> &'static str {
    if b {
        "OK"
    } else {
        "FAIL"
    }
}

/// Exit codes are ordered by severity: budget, identity, certificate.
fn combine(codes: impl IntoIterator<Item = u8>) -> u8 {
    let rank = |c: u8| match c {
        EXIT_BUDGET => 4,
        EXIT_IDENTITY => 3,
        EXIT_CERTIFICATE => 2,
        EXIT_USAGE => 5,
        _ => 0,
    };
    codes.into_iter().max_by_key(|&c| rank(c)).unwrap_or(EXIT_OK)
}

pub fn run_census(p: ComplexParams) -> Outcome {
    let closed = closed_form_counts(p);
    match census(p) {
        Ok(r) => {
            let agree = r == closed;
            let text = format!(
                "n={}, L={}, m={}, m1={}, 2-points={}, 3-points={}, 6-points={}, closed forms {}",
                r.n,
                r.lines,
                r.m,
                r.m1,
                r.two_points,
                r.three_points,
                r.six_points,
                ok_word(agree)
            );
            let code = if agree { EXIT_OK } else { EXIT_CERTIFICATE };
            Outcome::new(code, text, json!({ "enumerated": r, "closed_form": closed, "agree": agree }))
        }
        Err(e) => Outcome::from_error("census", e),
    }
}

fn complex(p: ComplexParams) -> DegenerationComplex {
    build_complex(p).expect("validated parameters")
}

pub fn run_dump_complex(p: ComplexParams) -> Outcome {
    let c = complex(p);
    let classes = classify_vertices(&c);
    let value = json!({ "complex": c, "vertex_classes": classes });
    let text = format!("{} vertices, {} edges, {} triangles", c.vertices.len(), c.edges.len(), c.triangles.len());
    let mut o = Outcome::new(EXIT_OK, text, value.clone());
    o.files.push(("complex.json".into(), pretty(&value)));
    o
}

pub fn run_dump_bmf(p: ComplexParams) -> Outcome {
    match assemble(&complex(p)) {
        Ok(fz) => {
            let dump = fz.dump();
            let text = format!("{} factors on {} strands, degree {}", fz.factors.len(), fz.strands(), fz.degree());
            let value = json!({ "strands": fz.strands(), "factors": fz.factors.len(), "degree": fz.degree() });
            let mut o = Outcome::new(EXIT_OK, text, value);
            o.files.push(("bmf.tsv".into(), dump));
            o
        }
        Err(e) => Outcome::from_error("dump-bmf", e),
    }
}

fn certificate_text(c: &Certificate) -> String {
    let artin = match c.artin {
        None => "skipped".to_string(),
        Some(b) => ok_word(b).to_string(),
    };
    let mut s = format!(
        "degree {}/{}, permutation {}, linking {} ({}/{} pairs), artin {}",
        c.degree,
        c.expected_degree,
        ok_word(c.permutation_identity),
        ok_word(c.first_bad_pair.is_none()),
        c.linking_ok_pairs,
        c.linking_pairs,
        artin
    );
    if let Some(why) = c.first_violation() {
        s.push_str(&format!("; first violation: {why}"));
    }
    s
}

pub fn run_certify(p: ComplexParams, cfg: &RunConfig) -> Outcome {
    match assemble(&complex(p)) {
        Ok(fz) => {
            let cert = certify(&fz, cfg.artin_limit);
            let code = if cert.passed() { EXIT_OK } else { EXIT_CERTIFICATE };
            Outcome::new(code, certificate_text(&cert), json!({ "certificate": cert, "passed": cert.passed() }))
        }
        Err(e) => Outcome::from_error("certify", e),
    }
}

fn presentation_json(p: &Presentation) -> Value {
    json!({
        "kind": p.kind,
        "generators": p.generators.iter().map(|g| json!({
            "name": g.name,
            "puncture": g.puncture.map(|q| json!({ "epsilon": q.line.kind.epsilon(), "r": q.line.r, "k": q.line.k, "delta": q.delta })),
        })).collect::<Vec<_>>(),
        "relators": p.relators.iter().map(|r| p.word_text(r)).collect::<Vec<_>>(),
    })
}

fn kind_name(k: PresentationKind) -> &'static str {
    match k {
        PresentationKind::Affine => "affine",
        PresentationKind::Projective => "projective",
    }
}

fn presentations(fz: &Factorization) -> Result<Vec<Presentation>, Error> {
    [PresentationKind::Affine, PresentationKind::Projective].into_iter().map(|k| presentation_unchecked(fz, k)).collect()
}

pub fn run_emit_presentation(p: ComplexParams, cfg: &RunConfig) -> Outcome {
    let fz = match assemble(&complex(p)) {
        Ok(fz) => fz,
        Err(e) => return Outcome::from_error("emit-presentation", e),
    };
    let cert = certify(&fz, cfg.artin_limit);
    if !cert.passed() && !cfg.unchecked {
        let why = cert.first_violation().unwrap_or_default();
        return Outcome::new(
            EXIT_CERTIFICATE,
            format!("refusing to emit: certificate failed ({why}); pass --unchecked to emit anyway"),
            json!({ "emitted": false, "certificate": cert }),
        );
    }
    match presentations(&fz) {
        Ok(ps) => {
            let mut files = Vec::new();
            let mut summary = Vec::new();
            for pr in &ps {
                let name = kind_name(pr.kind);
                files.push((format!("presentation_{name}.g"), pr.to_gap()));
                files.push((format!("presentation_{name}.json"), pretty(&presentation_json(pr))));
                summary.push(json!({ "kind": pr.kind, "generators": pr.rank(), "relators": pr.relators.len() }));
            }
            let text = ps
                .iter()
                .map(|pr| format!("{}: {} generators, {} relators", kind_name(pr.kind), pr.rank(), pr.relators.len()))
                .collect::<Vec<_>>()
                .join("; ");
            let note = if cert.passed() { "" } else { " (unchecked: certificate failed)" };
            let mut o = Outcome::new(EXIT_OK, format!("{text}{note}"), json!({ "emitted": true, "certified": cert.passed(), "presentations": summary }));
            o.files = files;
            o
        }
        Err(e) => Outcome::from_error("emit-presentation", e),
    }
}

pub fn run_invariants(p: ComplexParams, cfg: &RunConfig) -> Outcome {
    let c = complex(p);
    let fz = match assemble(&c) {
        Ok(fz) => fz,
        Err(e) => return Outcome::from_error("invariants", e),
    };
    let ps = match presentations(&fz) {
        Ok(ps) => ps,
        Err(e) => return Outcome::from_error("invariants", e),
    };
    let m1 = closed_form_counts(p).m1;
    let mut lines = Vec::new();
    let mut values = Vec::new();
    let mut good = true;
    for pr in &ps {
        let expected = match pr.kind {
            PresentationKind::Affine => AbelianInvariants::cyclic(0),
            PresentationKind::Projective => AbelianInvariants::cyclic(2 * m1),
        };
        let ab = abelianization(pr);
        let (simplified, report) = tietze_simplify(pr, cfg.tietze_budget, cfg.tietze_max_len);
        let ab_simplified = abelianization(&simplified);
        let perm = triangle_assignment(&c, pr).and_then(|asg| check_perm_quotient(pr, &asg));
        let (perm_text, perm_ok, perm_json) = match &perm {
            Ok(r) => (
                format!(
                    "S_{} quotient {} ({} violated relators, transitive {}, full symmetric {})",
                    r.degree,
                    ok_word(r.passed()),
                    r.violations,
                    r.transitive,
                    r.full_symmetric
                ),
                r.passed(),
                json!(r),
            ),
            Err(e) => (format!("S_n quotient error: {e}"), false, json!(e.to_string())),
        };
        let matches = ab == expected && ab_simplified == ab;
        good &= matches && perm_ok;
        lines.push(format!(
            "{}: {} generators, {} relators; Ab = {} (expected {}) {}; after Tietze {} generators, Ab = {}; {}",
            kind_name(pr.kind),
            pr.rank(),
            pr.relators.len(),
            ab,
            expected,
            ok_word(ab == expected),
            simplified.rank(),
            ab_simplified,
            perm_text
        ));
        values.push(json!({
            "kind": pr.kind,
            "generators": pr.rank(),
            "relators": pr.relators.len(),
            "abelianization": ab.to_string(),
            "expected": expected.to_string(),
            "tietze": { "generators": simplified.rank(), "relators": simplified.relators.len(), "steps": report.steps, "exhausted": report.exhausted, "abelianization": ab_simplified.to_string() },
            "permutation_quotient": perm_json,
        }));
    }
    let cert = certify(&fz, 0);
    if !cert.passed() {
        lines.push("note: presentations are built from a factorization that fails its certificate".into());
    }
    let code = if good { EXIT_OK } else { EXIT_CERTIFICATE };
    Outcome::new(code, lines.join("\n"), json!({ "certified": cert.passed(), "presentations": values }))
}

pub fn run_verify_identities(p: ComplexParams, cfg: &RunConfig) -> Outcome {
    match verify_identities(&complex(p), cfg.reading(), cfg.orbit_budget) {
        Ok(r) => {
            let (s_ok, s_all) = r.count(IdentityKind::Statement);
            let (i_ok, i_all) = r.count(IdentityKind::Intermediate);
            let (l_ok, l_all) = r.count(IdentityKind::Literal);
            let mut lines = vec![format!(
                "statements {s_ok}/{s_all}, intermediate steps {i_ok}/{i_all}, literal transcriptions {l_ok}/{l_all}, skipped {}; mu {}, nu {}, shadow {}",
                r.skipped,
                if r.quotient.mu_trivial { "trivial" } else { "nontrivial" },
                if r.quotient.nu_trivial { "trivial" } else { "nontrivial" },
                r.quotient.shadow
            )];
            for f in r.failures() {
                lines.push(format!("  FAIL [{:?}] {} {}: {} vs {}", f.kind, f.family, f.instance, f.lhs, f.rhs));
            }
            let code = if r.statements_hold() { EXIT_OK } else { EXIT_IDENTITY };
            Outcome::new(code, lines.join("\n"), json!(r))
        }
        Err(e) => Outcome::from_error("verify-identities", e),
    }
}

pub fn run_predict(p: ComplexParams, cfg: &RunConfig) -> Outcome {
    let pr = predict_series(p);
    let shadow = build_n_quotient(&complex(p), cfg.reading(), cfg.orbit_budget).map(|q| q.summary());
    let (shadow_text, consistent, shadow_json) = match &shadow {
        Ok(s) => {
            let bottom_ok = s.mu_trivial == pr.affine.bottom.is_trivial();
            let ok = s.shadow == pr.affine.middle && bottom_ok;
            (format!("quotient shadow {} {}", s.shadow, ok_word(ok)), ok, json!(s))
        }
        Err(e) => (format!("quotient shadow unavailable: {e}"), false, json!(e.to_string())),
    };
    let text = format!(
        "n={} m1={} affine: S_{} / {} / {} / {}; projective: S_{} / {} / {} / {}; {}",
        pr.n,
        pr.m1,
        pr.affine.symmetric_degree,
        pr.affine.top,
        pr.affine.middle,
        pr.affine.bottom,
        pr.projective.symmetric_degree,
        pr.projective.top,
        pr.projective.middle,
        pr.projective.bottom,
        shadow_text
    );
    let code = match shadow {
        Err(Error::BudgetExhausted(_)) => EXIT_BUDGET,
        _ if consistent => EXIT_OK,
        _ => EXIT_IDENTITY,
    };
    Outcome::new(code, text, json!({ "prediction": pr, "quotient": shadow_json, "consistent": consistent }))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn stage_name(c: Command) -> &'static str {
    match c {
        Command::Census => "census",
        Command::DumpComplex => "dump-complex",
        Command::DumpBmf => "dump-bmf",
        Command::Certify => "certify",
        Command::EmitPresentation => "emit-presentation",
        Command::Invariants => "invariants",
        Command::VerifyIdentities => "verify-identities",
        Command::Predict => "predict",
        Command::All => "all",
    }
}

pub fn run_stage(cmd: Command, p: ComplexParams, cfg: &RunConfig) -> Vec<(Command, Outcome)> {
    let one = |c: Command| -> Outcome {
        match c {
            Command::Census => run_census(p),
            Command::DumpComplex => run_dump_complex(p),
            Command::DumpBmf => run_dump_bmf(p),
            Command::Certify => run_certify(p, cfg),
            Command::EmitPresentation => run_emit_presentation(p, cfg),
            Command::Invariants => run_invariants(p, cfg),
            Command::VerifyIdentities => run_verify_identities(p, cfg),
            Command::Predict => run_predict(p, cfg),
            Command::All => unreachable!(),
        }
    };
    if cmd == Command::All {
        [
            Command::Census,
            Command::DumpComplex,
            Command::DumpBmf,
            Command::Certify,
            Command::EmitPresentation,
            Command::Invariants,
            Command::VerifyIdentities,
            Command::Predict,
        ]
        .into_iter()
        .map(|c| (c, one(c)))
        .collect()
    } else {
        vec![(cmd, one(cmd))]
    }
}

fn write_artifacts(dir: &Path, results: &[(Command, Outcome)]) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut report = serde_json::Map::new();
    for (c, o) in results {
        for (name, body) in &o.files {
            fs::write(dir.join(name), body)?;
        }
        report.insert(stage_name(*c).into(), json!({ "exit_code": o.code, "result": o.json }));
    }
    fs::write(dir.join(format!("{}.json", stage_name(results_command(results)))), pretty(&Value::Object(report)))
}

fn results_command(results: &[(Command, Outcome)]) -> Command {
    if results.len() > 1 {
        Command::All
    } else {
        results[0].0
    }
}

/// Runs the command on every cell; returns the exit code and the printed
/// report.
pub fn run(cli: &Cli) -> (u8, String) {
    let cells = match cli.config.cells() {
        Ok(c) => c,
        Err(e) => return (EXIT_USAGE, format!("error: {e}\n")),
    };
    let results: Vec<(ComplexParams, Vec<(Command, Outcome)>)> =
        cells.par_iter().map(|&p| (p, run_stage(cli.command, p, &cli.config))).collect();
    let mut out = String::new();
    let mut codes = Vec::new();
    let mut json_cells = Vec::new();
    for (p, res) in &results {
        let dir = cli.config.out.join(format!("a{}_b{}", p.a, p.b));
        if let Err(e) = write_artifacts(&dir, res) {
            return (EXIT_USAGE, format!("error: cannot write artifacts to {}: {e}\n", dir.display()));
        }
        let mut cell = serde_json::Map::new();
        for (c, o) in res {
            codes.push(o.code);
            if cli.config.format == Format::Text {
                for (i, line) in o.text.lines().enumerate() {
                    if i == 0 {
                        out.push_str(&format!("({},{}) {}: {line}\n", p.a, p.b, stage_name(*c)));
                    } else {
                        out.push_str(&format!("      {line}\n"));
                    }
                }
            }
            cell.insert(stage_name(*c).into(), json!({ "exit_code": o.code, "result": o.json }));
        }
        json_cells.push(json!({ "a": p.a, "b": p.b, "stages": cell }));
    }
    if cli.config.format == Format::Json {
        out = pretty(&json!({ "cells": json_cells }));
    }
    (combine(codes), out)
}

pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (code, text) = run(&cli);
    print!("{text}");
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("a=1..3,b=2..4").unwrap(), ((1, 3), (2, 4)));
        assert_eq!(parse_grid("b=2,a=1..2").unwrap(), ((1, 2), (2, 2)));
        assert!(parse_grid("a=3..1,b=2").is_err());
        assert!(parse_grid("a=1").is_err());
        assert!(parse_grid("c=1,a=1,b=2").is_err());
    }

    #[test]
    fn severity_order() {
        assert_eq!(combine([EXIT_OK, EXIT_CERTIFICATE, EXIT_IDENTITY]), EXIT_IDENTITY);
        assert_eq!(combine([EXIT_BUDGET, EXIT_IDENTITY]), EXIT_BUDGET);
        assert_eq!(combine([EXIT_OK]), EXIT_OK);
    }
}

//! Argument parsing and verb dispatch.
//!
//! Every verb produces a [`Report`]: a JSON document (stdout or `--out`)
//! and a short human summary (stderr). Exit codes: 0 pass, 1 fail,
//! 2 usage or invalid input, 3 resource cap.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use tropgrass_core::linmod::{orth_member, tropker_member, LinearForm, Vector};
use tropgrass_core::plucker::{
    cocircuits, duality_report, exchange_oracle, is_plucker, recover_plucker,
};
use tropgrass_core::quotient::{
    certified_free_rank_one, equivalent, is_free_rank_one, pairing_image, qw_presentation,
    saturate, surjectivity_check, top_wedge_presentation, wedge_presentation, EquivalenceVerdict,
    Evidence, FreenessVerdict, Quotient, Separation, DEFAULT_BUDGET,
};
use tropgrass_core::wedge::{
    decompose_boolean, elongate, hodge_star, maximal_minors, stable_sum, wedge,
};
use tropgrass_core::{Boolean, Error, Semifield, SemifieldKind, Subset, Tensor, Tropical};

use crate::fixtures::{self, circuit_matrix_text, MK4_CIRCUITS_GOLDEN};
use crate::format::{
    certificate_json, entries_of, matrix_from_rows, matrix_json, parse_kind, presentation_json,
    render_matrix, saturation_json, scalars, tensor_from_entries, tensor_json, AnyTensor, Entries,
    MatrixJson, PresentationJson, TensorJson,
};
use crate::suite::{random_suite, sweep_boolean, DEFAULT_SEED, RANDOM_SHAPES, SWEEP_SHAPES};

#[derive(Debug, Parser)]
#[command(name = "tropgrass", version, about = "Tropical exterior algebra workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Semifield: B (Boolean) or TQ (max-plus over the rationals).
    #[arg(long, global = true)]
    pub semifield: Option<String>,

    /// Ambient rank, for generated inputs.
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Degree, for generated inputs.
    #[arg(long, global = true)]
    pub d: Option<usize>,

    /// Input JSON file, or `-` for stdin. Repeat for two-argument verbs.
    #[arg(long, global = true)]
    pub input: Vec<String>,

    /// Cap on visited states (congruence engines, decomposition search).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,

    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test the tropical Plücker relations.
    CheckPlucker,
    /// Circuit forms, the rows of `-∧w`.
    Circuits,
    /// Cocircuit vectors.
    Cocircuits,
    /// Wedge product of two tensors.
    Wedge,
    /// Maximal minors of a matrix.
    Minors,
    /// Hodge star.
    Star,
    /// Wedge of two Plücker vectors, when nonzero.
    StableSum,
    /// Wedge with the uniform tensor up to degree `--target`.
    Elongate {
        #[arg(long)]
        target: usize,
    },
    /// Membership in a tropical kernel.
    KernelMember,
    /// Search for a Boolean matrix whose maximal minors are the input.
    DecomposeB,
    /// Presentation of `Q_w`, or of `∧^k Q_w` with `--k`.
    Qw {
        #[arg(long)]
        k: Option<usize>,
    },
    /// Presentation of `∧^d Q_w` from the bend relations directly.
    TopWedge,
    /// Decide `u ∼ v` in a presented quotient.
    Equiv,
    /// Decide whether `∧^d Q_w` is free of rank one.
    FreeRankOne {
        /// Use the certificate construction over 𝔹 as well.
        #[arg(long)]
        certificate: bool,
    },
    /// Rebuild `w` from its quotient.
    Recover,
    /// `x_I ↦ ⟨λ, u ∧ x_I⟩`.
    Pairing,
    /// Compare the images of `x_I`, `|I| = d-1`, with the cocircuits.
    Surjectivity,
    /// Exhaustive Boolean sweep, or the seeded random suite with `--semifield TQ`.
    Sweep {
        /// Samples per shape for the random suite.
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Reproduce a named example.
    Repro { name: ReproName },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReproName {
    Mk4,
    U34Pairing,
    TropkerExample,
    #[value(name = "sec6-quotient")]
    TwoRelationQuotient,
    PerpStrict,
}

/// A finished job.
#[derive(Debug, Clone)]
pub struct Report {
    pub pass: bool,
    pub json: Value,
    pub summary: String,
    /// Overrides the pass/fail status.
    pub exit: Option<u8>,
}

impl Report {
    fn new(pass: bool, json: Value, summary: impl Into<String>) -> Self {
        Report {
            pass,
            json,
            summary: summary.into(),
            exit: None,
        }
    }
}

/// Exit status for an error.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ResourceCap { .. }) => 3,
        Some(Error::UndefinedStableSum | Error::Inconsistency(_)) => 1,
        _ => 2,
    }
}

/// Parses, runs, writes the report, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = cli.out.clone();
    match run(cli) {
        Ok(report) => {
            eprintln!("{}", report.summary.trim_end());
            if let Err(e) = emit(&report.json, out.as_deref()) {
                eprintln!("error: {e:#}");
                return 2;
            }
            if let Some(code) = report.exit {
                code
            } else if report.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

fn emit(json: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(json)? + "\n";
    match out {
        None => io::stdout().write_all(text.as_bytes())?,
        Some(path) => {
            // Write beside the target, then rename into place.
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".tmp");
            fs::write(&tmp, text).with_context(|| format!("writing {}", path.display()))?;
            fs::rename(&tmp, path)?;
        }
    }
    Ok(())
}

fn read_json(source: &str) -> Result<Value> {
    let text = if source == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(source).with_context(|| format!("reading {source}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {source}"))
}

struct Job {
    semifield: Option<SemifieldKind>,
    inputs: Vec<String>,
    n: Option<usize>,
    d: Option<usize>,
    budget: usize,
    seed: u64,
}

impl Job {
    fn input(&self, i: usize) -> Result<Value> {
        let source = self
            .inputs
            .get(i)
            .ok_or_else(|| anyhow!("missing --input (argument {})", i + 1))?;
        read_json(source)
    }

    fn check_kind(&self, found: SemifieldKind) -> Result<()> {
        match self.semifield {
            Some(expected) if expected != found => Err(Error::MixedSemifield {
                left: expected,
                right: found,
            }
            .into()),
            _ => Ok(()),
        }
    }

    fn tensor(&self, i: usize) -> Result<AnyTensor> {
        let t = TensorJson::parse(self.input(i)?)?;
        self.check_kind(t.kind())?;
        Ok(t)
    }
}

macro_rules! dispatch {
    ($t:expr, $w:ident => $body:expr) => {
        match $t {
            AnyTensor::B($w) => $body,
            AnyTensor::T($w) => $body,
        }
    };
}

pub fn run(cli: Cli) -> Result<Report> {
    let job = Job {
        semifield: cli.semifield.as_deref().map(parse_kind).transpose()?,
        inputs: cli.input,
        n: cli.n,
        d: cli.d,
        budget: cli.budget,
        seed: cli.seed,
    };
    match cli.command {
        Command::CheckPlucker => dispatch!(job.tensor(0)?, w => check_plucker(&w)),
        Command::Circuits => dispatch!(job.tensor(0)?, w => circuits_report(&w)),
        Command::Cocircuits => dispatch!(job.tensor(0)?, w => cocircuits_report(&w)),
        Command::Wedge => match (job.tensor(0)?, job.tensor(1)?) {
            (AnyTensor::B(a), AnyTensor::B(b)) => tensor_report("wedge", &wedge(&a, &b)?),
            (AnyTensor::T(a), AnyTensor::T(b)) => tensor_report("wedge", &wedge(&a, &b)?),
            (a, b) => Err(mixed(a.kind(), b.kind())),
        },
        Command::Minors => {
            let raw: MatrixJson = serde_json::from_value(job.input(0)?).context("matrix JSON")?;
            let kind = parse_kind(&raw.semifield)?;
            job.check_kind(kind)?;
            match kind {
                SemifieldKind::Boolean => {
                    tensor_report("minors", &maximal_minors(&matrix_from_rows::<Boolean>(&raw.rows)?)?)
                }
                SemifieldKind::TropicalRational => {
                    tensor_report("minors", &maximal_minors(&matrix_from_rows::<Tropical>(&raw.rows)?)?)
                }
            }
        }
        Command::Star => dispatch!(job.tensor(0)?, w => tensor_report("star", &hodge_star(&w))),
        Command::StableSum => match (job.tensor(0)?, job.tensor(1)?) {
            (AnyTensor::B(a), AnyTensor::B(b)) => stable_sum_report(&a, &b),
            (AnyTensor::T(a), AnyTensor::T(b)) => stable_sum_report(&a, &b),
            (a, b) => Err(mixed(a.kind(), b.kind())),
        },
        Command::Elongate { target } => {
            dispatch!(job.tensor(0)?, w => tensor_report("elongate", &elongate(&w, target)?))
        }
        Command::KernelMember => kernel_member(&job),
        Command::DecomposeB => match job.tensor(0)? {
            AnyTensor::B(w) => decompose_report(&w, job.budget),
            other => Err(mixed(SemifieldKind::Boolean, other.kind())),
        },
        Command::Qw { k } => dispatch!(job.tensor(0)?, w => {
            let p = qw_presentation(&w)?;
            let p = match k {
                Some(k) => wedge_presentation(&p, k)?,
                None => p,
            };
            presentation_report("qw", &p)
        }),
        Command::TopWedge => {
            dispatch!(job.tensor(0)?, w => presentation_report("top-wedge", &top_wedge_presentation(&w)?))
        }
        Command::Equiv => equiv(&job),
        Command::FreeRankOne { certificate } => match job.tensor(0)? {
            AnyTensor::B(w) if certificate => free_rank_one_report(&w, certified_free_rank_one(&w)?),
            AnyTensor::B(w) => free_rank_one_report(&w, is_free_rank_one(&w, job.budget)?),
            AnyTensor::T(w) => free_rank_one_report(&w, is_free_rank_one(&w, job.budget)?),
        },
        Command::Recover => dispatch!(job.tensor(0)?, w => {
            let recovered = recover_plucker(&w)?;
            Ok(Report::new(
                true,
                json!({"verb": "recover", "tensor": tensor_json(&recovered)}),
                format!("recovered {} coordinates, projectively equal to the input", recovered.support_len()),
            ))
        }),
        Command::Pairing => pairing(&job),
        Command::Surjectivity => dispatch!(job.tensor(0)?, w => surjectivity_report(&w, job.budget)),
        Command::Sweep { samples } => sweep(&job, samples),
        Command::Repro { name } => repro(name, job.budget),
    }
}

fn mixed(left: SemifieldKind, right: SemifieldKind) -> anyhow::Error {
    Error::MixedSemifield { left, right }.into()
}

fn check_plucker<S: Semifield>(w: &Tensor<S>) -> Result<Report> {
    let r = is_plucker(w)?;
    let violation = r.first_violation.map(|v| {
        json!({"a": v.a.to_string(), "b": v.b.to_string(), "omitted": v.omitted})
    });
    let summary = match r.first_violation {
        None => format!("Plücker: yes ({} relations)", r.relations_checked),
        Some(v) => format!(
            "Plücker: no; relation A={{{}}} B={{{}}} fails when the term for {} is omitted",
            v.a, v.b, v.omitted
        ),
    };
    Ok(Report::new(
        r.is_plucker,
        json!({
            "verb": "check-plucker",
            "is_plucker": r.is_plucker,
            "relations_checked": r.relations_checked,
            "first_violation": violation,
        }),
        summary,
    ))
}

fn circuits_report<S: Semifield>(w: &Tensor<S>) -> Result<Report> {
    let rows = tropgrass_core::plucker::circuits(w)?;
    let json_rows: serde_json::Map<String, Value> = rows
        .iter()
        .map(|(j, f)| (j.to_string(), json!(f.entries().iter().map(ToString::to_string).collect::<Vec<_>>())))
        .collect();
    let text = circuit_matrix_text(w)?;
    Ok(Report::new(
        true,
        json!({"verb": "circuits", "semifield": S::KIND.tag(), "rows": json_rows, "text": text}),
        text,
    ))
}

fn cocircuits_report<S: Semifield>(w: &Tensor<S>) -> Result<Report> {
    let family = cocircuits(w)?;
    let json_family: serde_json::Map<String, Value> = family
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v.entries().iter().map(ToString::to_string).collect::<Vec<_>>())))
        .collect();
    let labels: Vec<String> = family.keys().map(|k| k.label('β')).collect();
    let columns: Vec<String> = (1..=w.n()).map(|i| format!("e_{i}")).collect();
    let cells: Vec<Vec<S>> = family.values().map(|v| v.entries().to_vec()).collect();
    let text = render_matrix(&labels, &columns, &cells);
    Ok(Report::new(
        true,
        json!({"verb": "cocircuits", "semifield": S::KIND.tag(), "cocircuits": json_family}),
        text,
    ))
}

fn tensor_report<S: Semifield>(verb: &str, t: &Tensor<S>) -> Result<Report> {
    Ok(Report::new(
        true,
        json!({"verb": verb, "tensor": tensor_json(t)}),
        format!("{verb}: degree {} with {} nonzero coordinates", t.degree(), t.support_len()),
    ))
}

fn stable_sum_report<S: Semifield>(a: &Tensor<S>, b: &Tensor<S>) -> Result<Report> {
    match stable_sum(a, b) {
        Ok(t) => Ok(Report::new(
            true,
            json!({"verb": "stable-sum", "defined": true, "tensor": tensor_json(&t)}),
            format!("stable sum: degree {}", t.degree()),
        )),
        Err(Error::UndefinedStableSum) => Ok(Report::new(
            false,
            json!({"verb": "stable-sum", "defined": false}),
            "stable sum undefined: the wedge is zero",
        )),
        Err(e) => Err(e.into()),
    }
}

#[derive(Deserialize)]
struct KernelInput {
    semifield: String,
    rows: Vec<Vec<String>>,
    vector: Vec<String>,
}

fn kernel_member(job: &Job) -> Result<Report> {
    let raw: KernelInput = serde_json::from_value(job.input(0)?).context("kernel-member JSON")?;
    let kind = parse_kind(&raw.semifield)?;
    job.check_kind(kind)?;
    fn decide<S: Semifield>(raw: &KernelInput) -> Result<bool> {
        let rows = raw
            .rows
            .iter()
            .map(|r| Ok(LinearForm::new(scalars::<S>(r)?)))
            .collect::<Result<Vec<_>>>()?;
        if raw.vector.is_empty() {
            bail!("empty vector");
        }
        Ok(tropker_member(&rows, &Vector::new(scalars::<S>(&raw.vector)?))?)
    }
    let member = match kind {
        SemifieldKind::Boolean => decide::<Boolean>(&raw)?,
        SemifieldKind::TropicalRational => decide::<Tropical>(&raw)?,
    };
    Ok(Report::new(
        member,
        json!({"verb": "kernel-member", "member": member}),
        format!("member of the tropical kernel: {}", if member { "yes" } else { "no" }),
    ))
}

fn decompose_report(w: &Tensor<Boolean>, budget: usize) -> Result<Report> {
    let found = decompose_boolean(w, budget)?;
    let summary = match &found {
        Some(m) => format!("totally decomposable: {} x {} factor matrix", m.rows(), m.cols()),
        None => "not totally decomposable".to_string(),
    };
    Ok(Report::new(
        found.is_some(),
        json!({"verb": "decompose-b", "decomposable": found.is_some(), "matrix": found.as_ref().map(matrix_json)}),
        summary,
    ))
}

fn presentation_report<S: Semifield>(verb: &str, p: &tropgrass_core::quotient::Presentation<S>) -> Result<Report> {
    let summary = format!(
        "{verb}: rank {} with {} generating pairs from {} bend sources",
        p.rank(),
        p.generators().len(),
        p.sources().len()
    );
    Ok(Report::new(
        true,
        json!({"verb": verb, "presentation": presentation_json(p)}),
        summary,
    ))
}

#[derive(Deserialize)]
struct EquivInput {
    presentation: PresentationJson,
    u: Entries,
    v: Entries,
}

fn equiv(job: &Job) -> Result<Report> {
    let raw: EquivInput = serde_json::from_value(job.input(0)?).context("equiv JSON")?;
    let kind = raw.presentation.kind()?;
    job.check_kind(kind)?;
    match kind {
        SemifieldKind::Boolean => equiv_typed::<Boolean>(&raw, job.budget),
        SemifieldKind::TropicalRational => equiv_typed::<Tropical>(&raw, job.budget),
    }
}

fn equiv_typed<S: Quotient>(raw: &EquivInput, budget: usize) -> Result<Report> {
    let p = raw.presentation.build::<S>()?;
    let u = tensor_from_entries::<S>(p.n(), p.degree(), &raw.u)?;
    let v = tensor_from_entries::<S>(p.n(), p.degree(), &raw.v)?;
    let verdict = equivalent(&p, &u, &v, budget)?;
    Ok(verdict_report(&verdict))
}

pub fn verdict_json<S: Semifield>(verdict: &EquivalenceVerdict<S>) -> Value {
    match verdict {
        EquivalenceVerdict::Equal { chain } => json!({
            "verdict": "equal",
            "chain": chain.iter().map(|s| json!({
                "generator": s.generator,
                "reversed": s.reversed,
                "from": entries_of(&s.from),
                "to": entries_of(&s.to),
            })).collect::<Vec<_>>(),
        }),
        EquivalenceVerdict::Distinct { witness } => json!({
            "verdict": "distinct",
            "witness": match witness {
                Separation::Functional(f) => json!({"functional": entries_of(f)}),
                Separation::Support(t) => json!({"support": t.iter().map(ToString::to_string).collect::<Vec<_>>()}),
            },
        }),
        EquivalenceVerdict::Unknown { explored } => json!({"verdict": "unknown", "explored": explored}),
    }
}

fn verdict_report<S: Semifield>(verdict: &EquivalenceVerdict<S>) -> Report {
    let summary = match verdict {
        EquivalenceVerdict::Equal { chain } => format!("equal ({} rewrite steps)", chain.len()),
        EquivalenceVerdict::Distinct { .. } => "distinct (separating functional found)".to_string(),
        EquivalenceVerdict::Unknown { explored } => format!("unknown after {explored} states"),
    };
    let mut json = verdict_json(verdict);
    json["verb"] = json!("equiv");
    let mut report = Report::new(verdict.is_equal(), json, summary);
    if let EquivalenceVerdict::Unknown { .. } = verdict {
        report.summary.push_str(" (budget exhausted)");
        report.exit = Some(3);
    }
    report
}

fn evidence_json<S: Semifield>(v: &FreenessVerdict<S>) -> Value {
    match &v.evidence {
        Evidence::Saturation(s) => json!({"saturation": saturation_json(s)}),
        Evidence::Certificate(c) => json!({"certificate": certificate_json(c)}),
        Evidence::Failure(f) => json!({"failure": {"stage": f.stage(), "detail": f.to_string()}}),
    }
}

fn free_rank_one_report<S: Semifield>(w: &Tensor<S>, verdict: FreenessVerdict<S>) -> Result<Report> {
    let summary = match &verdict.evidence {
        Evidence::Saturation(s) => format!(
            "free of rank one: {}; {} classes among 0 and the basis, {} basis elements vanish",
            if verdict.free { "yes" } else { "no" },
            s.class_count(),
            s.vanishing.len()
        ),
        Evidence::Certificate(c) => format!(
            "free of rank one: yes; pivot {}, {} vanishing steps, {} edges, {} generators checked",
            c.pivot.label('x'),
            c.vanishing.len(),
            c.edges.len(),
            c.generators_checked
        ),
        Evidence::Failure(f) => format!("free of rank one: no; certificate failed at {f}"),
    };
    let _ = w;
    Ok(Report::new(
        verdict.free,
        json!({"verb": "free-rank-one", "free": verdict.free, "evidence": evidence_json(&verdict)}),
        summary,
    ))
}

#[derive(Deserialize)]
struct PairingInput {
    w: Value,
    u: Entries,
}

fn pairing(job: &Job) -> Result<Report> {
    let raw: PairingInput = serde_json::from_value(job.input(0)?).context("pairing JSON")?;
    let w = TensorJson::parse(raw.w)?;
    job.check_kind(w.kind())?;
    fn typed<S: Quotient>(w: &Tensor<S>, u: &Entries, budget: usize) -> Result<Report> {
        let degree = match u.keys().next() {
            Some(k) => k.parse::<Subset>()?.len(),
            None => bail!("u must be nonzero"),
        };
        let u = tensor_from_entries::<S>(w.n(), degree, u)?;
        let image = pairing_image(w, &u, budget)?;
        Ok(Report::new(
            true,
            json!({"verb": "pairing", "image": tensor_json(&image)}),
            format!("image: {}", describe(&image)),
        ))
    }
    dispatch!(w, w => typed(&w, &raw.u, job.budget))
}

/// `0·e_1 + 1·e_3` style rendering.
pub fn describe<S: Semifield>(t: &Tensor<S>) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.iter()
        .map(|(k, x)| {
            if x.is_one() {
                k.label('e')
            } else {
                format!("{x}·{}", k.label('e'))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn surjectivity_report<S: Quotient>(w: &Tensor<S>, budget: usize) -> Result<Report> {
    let r = surjectivity_check(w, budget)?;
    Ok(Report::new(
        r.passed(),
        json!({
            "verb": "surjectivity",
            "checked": r.checked,
            "matches": r.matches,
            "mismatches": r.mismatches.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        format!("{} of {} images match their cocircuits", r.matches, r.checked),
    ))
}

fn sweep(job: &Job, samples: usize) -> Result<Report> {
    if job.semifield == Some(SemifieldKind::TropicalRational) {
        let shapes: Vec<(usize, usize)> = match (job.d, job.n) {
            (Some(d), Some(n)) => vec![(d, n)],
            (None, None) => RANDOM_SHAPES.to_vec(),
            _ => bail!("give both --n and --d, or neither"),
        };
        let report = random_suite(job.seed, samples, &shapes)?;
        let mut summary = format!("seed {}\n", report.seed);
        for s in &report.shapes {
            summary.push_str(&format!(
                "({},{}): {} samples, certificates {}/{}, perturbations flipped {} and rejected {} [{}]\n",
                s.d,
                s.n,
                s.samples,
                s.certificate_ok,
                s.samples,
                s.perturbations_flipped,
                s.perturbation_certificate_failed,
                if s.passed() { "pass" } else { "FAIL" }
            ));
        }
        return Ok(Report::new(
            report.passed(),
            json!({"verb": "sweep", "semifield": "TQ", "report": report}),
            summary,
        ));
    }
    let shapes: Vec<(usize, usize)> = match (job.n, job.d) {
        (Some(n), Some(d)) => vec![(n, d)],
        (None, None) => SWEEP_SHAPES.to_vec(),
        _ => bail!("give both --n and --d, or neither"),
    };
    let mut rows = Vec::new();
    let mut summary = String::new();
    for (n, d) in shapes {
        let row = sweep_boolean(n, d, job.budget)?;
        summary.push_str(&format!(
            "(n,d)=({n},{d}): {} candidates, matroids {} (plucker) / {} (free rank one) / {} (exchange) [{}]\n",
            row.candidates,
            row.plucker,
            row.free_rank_one,
            row.exchange,
            if row.passed() { "agree" } else { "DISAGREE" }
        ));
        rows.push(row);
    }
    let pass = rows.iter().all(|r| r.passed());
    Ok(Report::new(pass, json!({"verb": "sweep", "semifield": "B", "rows": rows}), summary))
}

struct Checks {
    items: Vec<(String, bool)>,
}

impl Checks {
    fn new() -> Self {
        Checks { items: Vec::new() }
    }

    fn add(&mut self, name: &str, ok: bool) {
        self.items.push((name.to_string(), ok));
    }

    fn finish(self, name: &str, extra: Value) -> Report {
        let pass = self.items.iter().all(|(_, ok)| *ok);
        let summary: String = self
            .items
            .iter()
            .map(|(n, ok)| format!("[{}] {n}\n", if *ok { "ok" } else { "FAIL" }))
            .collect();
        let checks: serde_json::Map<String, Value> =
            self.items.into_iter().map(|(n, ok)| (n, json!(ok))).collect();
        Report::new(
            pass,
            json!({"verb": "repro", "name": name, "checks": checks, "details": extra}),
            summary,
        )
    }
}

fn repro(name: ReproName, budget: usize) -> Result<Report> {
    match name {
        ReproName::Mk4 => repro_mk4(budget),
        ReproName::U34Pairing => repro_u34(budget),
        ReproName::TropkerExample => repro_tropker(budget),
        ReproName::TwoRelationQuotient => repro_two_relations(budget),
        ReproName::PerpStrict => repro_perp(),
    }
}

fn repro_mk4(budget: usize) -> Result<Report> {
    let w = fixtures::mk4();
    let mut c = Checks::new();
    let text = circuit_matrix_text(&w)?;
    c.add("16 bases", w.support_len() == 16);
    c.add("circuit matrix equals the golden file", text == MK4_CIRCUITS_GOLDEN);
    c.add("Plücker relations hold", is_plucker(&w)?.is_plucker);
    c.add("basis exchange holds", exchange_oracle(&w)?);
    let verdict = is_free_rank_one(&w, budget)?;
    c.add("top wedge is free of rank one", verdict.free);
    let vanishing = match &verdict.evidence {
        Evidence::Saturation(s) => s.vanishing.clone(),
        _ => Vec::new(),
    };
    c.add("vanishing classes are the four hyperplanes", vanishing == fixtures::mk4_hyperplanes());
    let top = top_wedge_presentation(&w)?;
    let x = |k: &[usize]| Tensor::<Boolean>::basis(6, Subset::of(k));
    c.add(
        "x_{123} ~ 0",
        equivalent(&top, &x(&[1, 2, 3])?, &Tensor::zero(6, 3), budget)?.is_equal(),
    );
    c.add(
        "x_{134} ~ x_{234}",
        equivalent(&top, &x(&[1, 3, 4])?, &x(&[2, 3, 4])?, budget)?.is_equal(),
    );
    c.add("duality report passes", duality_report(&w)?.passed());
    c.add("not transversal", decompose_boolean(&w, budget)?.is_none());
    let mut report = c.finish(
        "mk4",
        json!({"matrix": text, "vanishing": vanishing.iter().map(ToString::to_string).collect::<Vec<_>>()}),
    );
    report.summary = format!("{text}{}", report.summary);
    Ok(report)
}

fn repro_u34(budget: usize) -> Result<Report> {
    let w = fixtures::uniform(3, 4);
    let p = wedge_presentation(&qw_presentation(&w)?, 2)?;
    let u = fixtures::boolean(4, 2, &[&[1, 2], &[3, 4]]);
    let v = fixtures::boolean(4, 2, &[&[1, 3], &[2, 4]]);
    let verdict = equivalent(&p, &u, &v, budget)?;
    let all = Tensor::uniform(4, 1);
    let (iu, iv) = (pairing_image(&w, &u, budget)?, pairing_image(&w, &v, budget)?);
    let p3 = wedge_presentation(&qw_presentation(&w)?, 3)?;
    let mut images_agree = true;
    for i in 1..=4 {
        let xi = Tensor::basis(4, Subset::singleton(i))?;
        images_agree &= equivalent(&p3, &wedge(&u, &xi)?, &wedge(&v, &xi)?, budget)?.is_equal();
    }
    let mut c = Checks::new();
    c.add("x_{12}+x_{34} and x_{13}+x_{24} are distinct in the quotient", verdict.is_distinct());
    c.add("pairing sends x_{12}+x_{34} to e_1+e_2+e_3+e_4", iu == all);
    c.add("pairing sends x_{13}+x_{24} to e_1+e_2+e_3+e_4", iv == all);
    c.add("wedging with each x_i identifies the two", images_agree);
    Ok(c.finish(
        "u34-pairing",
        json!({"equiv": verdict_json(&verdict), "image_u": tensor_json(&iu), "image_v": tensor_json(&iv)}),
    ))
}

fn repro_tropker(budget: usize) -> Result<Report> {
    use fixtures::{tropical, tropical_form};
    let vector = |xs: &[&str]| Vector::new(xs.iter().map(|s| tropical(s)).collect());
    let first = tropical_form(&["0", "1", "2"]);
    let rows_a = [first.clone(), tropical_form(&["0", "0", "-inf"])];
    let rows_b = [first, tropical_form(&["0", "1", "-inf"])];
    let mut c = Checks::new();
    c.add("(0,0,-1) is in the kernel", tropker_member(&rows_a, &vector(&["0", "0", "-1"]))?);
    c.add("(0,0,0) is not in the kernel", !tropker_member(&rows_a, &vector(&["0", "0", "0"]))?);
    c.add(
        "(0,-1,-2) is in the kernel for the second matrix",
        tropker_member(&rows_b, &vector(&["0", "-1", "-2"]))?,
    );
    c.add(
        "(0,-1,-inf) is in the kernel for the second matrix",
        tropker_member(&rows_b, &vector(&["0", "-1", "-inf"]))?,
    );
    let sources = rows_a.iter().map(|f| Tensor::from_vector(&f.transpose())).collect();
    let p = tropgrass_core::quotient::Presentation::from_sources(3, 1, sources)?;
    let t = |entries: &[(usize, &str)]| {
        Tensor::from_entries(3, 1, entries.iter().map(|(i, x)| (Subset::singleton(*i), tropical(x))))
    };
    let a = t(&[(1, "0"), (2, "1")])?;
    let b = t(&[(1, "0"), (3, "2")])?;
    let d = t(&[(2, "1"), (3, "2")])?;
    c.add("x_1 + 1x_2 ~ x_1 + 2x_3", equivalent(&p, &a, &b, budget)?.is_equal());
    c.add("x_1 + 2x_3 ~ 1x_2 + 2x_3", equivalent(&p, &b, &d, budget)?.is_equal());
    c.add(
        "x_1 ~ x_2",
        equivalent(&p, &t(&[(1, "0")])?, &t(&[(2, "0")])?, budget)?.is_equal(),
    );
    Ok(c.finish("tropker-example", json!({"presentation": presentation_json(&p)})))
}

fn repro_two_relations(budget: usize) -> Result<Report> {
    let p = fixtures::two_relation_presentation();
    let q = wedge_presentation(&p, 2)?;
    let s = saturate(&q, budget)?;
    let x = |k: &[usize]| Tensor::<Boolean>::basis(3, Subset::of(k));
    let mut c = Checks::new();
    c.add("second wedge is free of rank one", s.is_free_rank_one());
    c.add(
        "x_1x_2 ~ x_1x_3",
        equivalent(&q, &x(&[1, 2])?, &x(&[1, 3])?, budget)?.is_equal(),
    );
    c.add("x_2x_3 ~ 0", equivalent(&q, &x(&[2, 3])?, &Tensor::zero(3, 2), budget)?.is_equal());
    c.add("x_2x_3 is the only vanishing basis element", s.vanishing == [Subset::of(&[2, 3])]);
    Ok(c.finish(
        "sec6-quotient",
        json!({"presentation": presentation_json(&q), "saturation": saturation_json(&s)}),
    ))
}

fn repro_perp() -> Result<Report> {
    let n = 3;
    let all: Vec<Vector<Boolean>> = (0u32..1 << n)
        .map(|m| Vector::new((0..n).map(|i| Boolean(m >> i & 1 == 1)).collect()))
        .collect();
    let gens = [Vector::indicator(n, &[1, 2]), Vector::indicator(n, &[2, 3])];
    let span: Vec<&Vector<Boolean>> = all
        .iter()
        .filter(|v| {
            (0..4).any(|m| {
                let mut c = Vector::zero(n);
                for (i, g) in gens.iter().enumerate() {
                    if m >> i & 1 == 1 {
                        c = c.add(g).expect("same length");
                    }
                }
                c == **v
            })
        })
        .collect();
    let mut perp = Vec::new();
    for f in &all {
        if orth_member(&gens, &f.transpose())? {
            perp.push(f.clone());
        }
    }
    let mut double_perp = Vec::new();
    for v in &all {
        if orth_member(&perp, &v.transpose())? {
            double_perp.push(v.clone());
        }
    }
    let extra: Vec<&Vector<Boolean>> = double_perp.iter().filter(|v| !span.contains(v)).collect();
    let name = |v: &Vector<Boolean>| {
        let t = Tensor::from_vector(v);
        describe(&t)
    };
    let mut c = Checks::new();
    c.add("L^perp is spanned by x_1+x_2+x_3", perp == [Vector::zero(n), Vector::indicator(n, &[1, 2, 3])]);
    c.add("L is contained in L^perp^perp", span.iter().all(|v| double_perp.contains(v)));
    c.add("the containment is strict, e_1+e_3 is the extra element", extra == [&Vector::indicator(n, &[1, 3])]);
    Ok(c.finish(
        "perp-strict",
        json!({
            "span": span.iter().map(|v| name(v)).collect::<Vec<_>>(),
            "perp": perp.iter().map(name).collect::<Vec<_>>(),
            "double_perp": double_perp.iter().map(name).collect::<Vec<_>>(),
        }),
    ))
}

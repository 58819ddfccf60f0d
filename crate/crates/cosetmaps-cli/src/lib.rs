//! Command implementations behind the `cosetmaps` binary. Each command
//! writes its report to the given writer and returns the process exit code.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use cosetmaps::deciders::{Certificate, Decider, ResumeMap, SweepEvent, Verdict, VerdictKind};
use cosetmaps::engine::EngineOpts;
use cosetmaps::ff::{self, FieldError};
use cosetmaps::oracle;
use cosetmaps::words::Word;
use serde::Serialize;

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_NEGATIVE: i32 = 10;
pub const EXIT_UNDECIDED: i32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Vsmb,
    Vwmb,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub budget: usize,
    pub threshold: u64,
    pub jobs: usize,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        let o = EngineOpts::default();
        RunConfig { seed: o.seed, budget: o.budget, threshold: o.threshold, jobs: 1, format: Format::Text }
    }
}

impl RunConfig {
    pub fn engine_opts(&self, keep_witnesses: bool) -> EngineOpts {
        EngineOpts { seed: self.seed, budget: self.budget, threshold: self.threshold, keep_witnesses }
    }

    pub fn decider(&self, keep_witnesses: bool) -> Decider {
        Decider::with_jobs(self.engine_opts(keep_witnesses), self.jobs)
    }

    fn json(&self) -> bool {
        self.format == Format::Json
    }
}

pub fn exit_code(kind: VerdictKind) -> i32 {
    if kind.is_positive() {
        EXIT_POSITIVE
    } else if kind.is_negative() {
        EXIT_NEGATIVE
    } else {
        EXIT_UNDECIDED
    }
}

#[derive(Serialize)]
struct WithConfig<'a, T: Serialize> {
    #[serde(flatten)]
    body: T,
    config: &'a RunConfig,
}

fn write_json<T: Serialize>(out: &mut dyn Write, v: &T) {
    serde_json::to_writer(&mut *out, v).expect("serializable report");
    writeln!(out).ok();
}

fn certificate_line(c: &Certificate) -> String {
    match c {
        Certificate::Divisibility(d) => {
            format!("{} divides e: the power map is trivial on {}", d.value, d.coset())
        }
        Certificate::Constancy(c) => format!(
            "{} is constant on {} ({} points checked)",
            c.word.word,
            c.coset_labels().join(" x "),
            c.cert.points_checked
        ),
        Certificate::Descent(d) => {
            let d = d.describe();
            format!(
                "{} * lcm over {} ({}) divides e: the power map is trivial on {}",
                d.degree,
                d.base_coset,
                d.base_lcm,
                d.cosets.join(", ")
            )
        }
        Certificate::Syntactic(d) => format!("syntactic derivation, rule {:?}, {} steps", d.rule, d.size()),
    }
}

/// Independent re-check of everything a verdict claims.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Verification {
    pub certificates: bool,
    pub witnesses_verified: usize,
    pub witnesses_failed: usize,
}

impl Verification {
    pub fn of(v: &Verdict) -> Verification {
        let (checked, passed) = v.verify_witnesses();
        Verification { certificates: v.verify_certificates(), witnesses_verified: passed, witnesses_failed: checked - passed }
    }

    pub fn passed(&self) -> bool {
        self.certificates && self.witnesses_failed == 0
    }
}

#[derive(Serialize)]
struct VerdictOutput<R: Serialize> {
    #[serde(flatten)]
    report: R,
    verification: Verification,
}

fn finish_verdict(v: &Verdict, cfg: &RunConfig, opts: &EngineOpts, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let check = Verification::of(v);
    print_verdict(v, cfg, opts, &check, out);
    if !check.passed() {
        writeln!(err, "error: re-verification failed: {check:?}").ok();
        return EXIT_CHECK_FAILED;
    }
    exit_code(v.kind)
}

fn print_verdict(v: &Verdict, cfg: &RunConfig, opts: &EngineOpts, check: &Verification, out: &mut dyn Write) {
    if cfg.json() {
        let body = VerdictOutput { report: v.report(opts), verification: *check };
        write_json(out, &WithConfig { body, config: cfg });
        return;
    }
    writeln!(out, "{}: {}", v.input, v.kind).ok();
    let certs: Vec<&Certificate> = v
        .certificates
        .iter()
        .chain(v.delegated.iter().filter(|_| v.certificates.is_empty()).flat_map(|d| d.certificates.iter()))
        .collect();
    for c in certs {
        writeln!(out, "  certificate: {}", certificate_line(c)).ok();
    }
    if let Some(s) = &v.shortcuts {
        writeln!(out, "  Sym3 map non-constant: {:?}, Sz(2) map non-constant: {:?}", s.sym3_nonconstant, s.sz2_nonconstant).ok();
    }
    if !v.syntactic.is_empty() {
        writeln!(out, "  variation classes settled syntactically: {}", v.syntactic.len()).ok();
    }
    let tasks = v.tasks.len() + v.delegated.as_ref().map_or(0, |d| d.tasks.len());
    writeln!(out, "  group checks: {tasks}, evaluations: {}", v.evaluations()).ok();
    for n in &v.notes {
        writeln!(out, "  note: {n}").ok();
    }
    writeln!(
        out,
        "  re-verified: certificates {}, witnesses {} ok / {} failed",
        if check.certificates { "ok" } else { "FAILED" },
        check.witnesses_verified,
        check.witnesses_failed
    )
    .ok();
    writeln!(out, "  elapsed: {:.2}s", v.elapsed).ok();
}

/// `power <e>`
pub fn cmd_power(e: i64, cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if e == 0 {
        writeln!(err, "error: the exponent must be nonzero").ok();
        return EXIT_USAGE;
    }
    let d = cfg.decider(true);
    match d.decide_power(e) {
        Ok(v) => finish_verdict(&v, cfg, &d.opts, out, err),
        Err(x) => {
            writeln!(err, "error: {x}").ok();
            EXIT_CHECK_FAILED
        }
    }
}

/// `word <text> --mode vsmb|vwmb`
pub fn cmd_word(text: &str, mode: Mode, cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let w = match Word::parse(text) {
        Ok(w) => w,
        Err(x) => {
            writeln!(err, "error: {x}").ok();
            return EXIT_USAGE;
        }
    };
    if w.is_empty() {
        writeln!(err, "error: {text:?} is empty after free reduction").ok();
        return EXIT_USAGE;
    }
    let d = cfg.decider(true);
    let res = match mode {
        Mode::Vsmb => d.decide_vsmb(&w),
        Mode::Vwmb => d.decide_vwmb(&w),
    };
    match res {
        Ok(v) => finish_verdict(&v, cfg, &d.opts, out, err),
        Err(x) => {
            writeln!(err, "error: {x}").ok();
            EXIT_CHECK_FAILED
        }
    }
}

/// Reads word verdicts from an earlier JSON-lines sweep report.
pub fn read_resume(path: &Path) -> std::io::Result<ResumeMap> {
    let f = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut map = HashMap::new();
    for line in f.lines() {
        let line = line?;
        let Ok(v) = serde_json::from_str::<serde_json::Value>(&line) else { continue };
        if !matches!(v["type"].as_str(), Some("word") | Some("resumed")) {
            continue;
        }
        let (Some(w), Ok(kind)) = (v["word"].as_str(), serde_json::from_value::<VerdictKind>(v["verdict"].clone())) else {
            continue;
        };
        map.insert(w.to_string(), kind);
    }
    Ok(map)
}

#[derive(Serialize)]
#[serde(tag = "type", rename = "summary")]
struct SweepSummary {
    length: usize,
    certified: bool,
    undecided: bool,
    elapsed: f64,
}

/// `sweep <l>`
pub fn cmd_sweep(l: usize, resume: Option<&Path>, cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if !(1..=8).contains(&l) {
        writeln!(err, "error: sweep length must be between 1 and 8").ok();
        return EXIT_USAGE;
    }
    let resume = match resume.map(read_resume).transpose() {
        Ok(r) => r.unwrap_or_default(),
        Err(x) => {
            writeln!(err, "error: cannot read resume file: {x}").ok();
            return EXIT_USAGE;
        }
    };
    let t0 = Instant::now();
    let d = cfg.decider(false);
    if cfg.json() {
        write_json(out, &serde_json::json!({"type": "config", "length": l, "config": cfg}));
    }
    let json = cfg.json();
    let mut emit = |ev: &SweepEvent| {
        if json {
            write_json(out, ev);
            return;
        }
        match ev {
            SweepEvent::Word { word, verdict, .. } if *verdict != VerdictKind::Vwmb => {
                writeln!(out, "  {word}: {verdict}").ok();
            }
            SweepEvent::Power { word, verdict, exception, .. } => {
                let ex = if *exception { " (excluded)" } else { "" };
                writeln!(out, "  power word {word}: {verdict}{ex}").ok();
            }
            SweepEvent::Length(s) => {
                writeln!(
                    out,
                    "length {}: {} words, {} syntactic, {} by symmetry, {} canonical, certified: {}",
                    s.length,
                    s.words,
                    s.syntactic,
                    s.in_canonical_orbit,
                    s.canonical.map_or("-".to_string(), |c| c.to_string()),
                    s.certified
                )
                .ok();
                for c in &s.cells {
                    let t = c.table.map_or("-".to_string(), |t| t.to_string());
                    writeln!(out, "    cell {:?}: {} (table {t})", c.cell, c.count).ok();
                }
            }
            _ => {}
        }
    };
    let rep = match d.sweep(l, &resume, &mut emit) {
        Ok(r) => r,
        Err(x) => {
            writeln!(err, "error: {x}").ok();
            return EXIT_CHECK_FAILED;
        }
    };
    let summary = SweepSummary { length: l, certified: rep.certified, undecided: rep.undecided, elapsed: t0.elapsed().as_secs_f64() };
    if cfg.json() {
        write_json(out, &summary);
    } else {
        writeln!(out, "all words up to length {l} certified: {} ({:.1}s)", rep.certified, summary.elapsed).ok();
    }
    if rep.certified {
        EXIT_POSITIVE
    } else if rep.undecided {
        EXIT_UNDECIDED
    } else {
        EXIT_CHECK_FAILED
    }
}

/// `oracle <name|all>`
pub fn cmd_oracle(name: &str, cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if name != "all" && !oracle::SUITES.contains(&name) {
        writeln!(err, "error: unknown check {name:?}; available: all, {}", oracle::SUITES.join(", ")).ok();
        return EXIT_USAGE;
    }
    let checks = match oracle::run(name, cfg.seed) {
        Ok(c) => c,
        Err(x) => {
            writeln!(err, "error: {x}").ok();
            return EXIT_CHECK_FAILED;
        }
    };
    if cfg.json() {
        write_json(out, &serde_json::json!({"type": "config", "suite": name, "config": cfg}));
    }
    for c in &checks {
        if cfg.json() {
            write_json(out, c);
        } else {
            let mark = if c.passed { "pass" } else { "FAIL" };
            writeln!(out, "{mark} [{}] {}: {}", c.suite, c.name, c.computed).ok();
        }
    }
    if checks.iter().all(|c| c.passed) {
        EXIT_POSITIVE
    } else {
        EXIT_CHECK_FAILED
    }
}

#[derive(Debug, Clone)]
pub enum FieldCommand {
    FindIrreducible { p: u64, k: usize },
    FindPrimitive { p: u64, k: usize },
    Verify { p: u64, k: usize, coeffs: String },
}

#[derive(Serialize)]
struct FieldReport {
    p: u64,
    k: usize,
    /// Coefficients from the constant term up.
    coefficients: Vec<u32>,
    irreducible: bool,
    primitive: Option<bool>,
    seed: u64,
}

fn field_error_code(e: &FieldError) -> i32 {
    match e {
        FieldError::UnsupportedSize { .. } => EXIT_UNSUPPORTED,
        _ => EXIT_USAGE,
    }
}

fn primitivity(p: u64, f: &[u32]) -> Option<bool> {
    ff::is_primitive(p, f).ok()
}

/// `field find-irreducible|find-primitive|verify`
pub fn cmd_field(sub: &FieldCommand, cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let res: Result<(FieldReport, i32), FieldError> = (|| match sub {
        FieldCommand::FindIrreducible { p, k } | FieldCommand::FindPrimitive { p, k } => {
            let p32 = ff::check_characteristic(*p)?;
            if *k == 0 {
                return Err(FieldError::ZeroDegree);
            }
            let (f, primitive) = if matches!(sub, FieldCommand::FindPrimitive { .. }) {
                (ff::random_primitive(p32, *k, cfg.seed)?, Some(true))
            } else {
                let f = ff::random_irreducible(p32, *k, cfg.seed);
                let prim = primitivity(*p, &f);
                (f, prim)
            };
            Ok((FieldReport { p: *p, k: *k, coefficients: f, irreducible: true, primitive, seed: cfg.seed }, EXIT_POSITIVE))
        }
        FieldCommand::Verify { p, k, coeffs } => {
            ff::check_characteristic(*p)?;
            let f: Vec<u32> = coeffs
                .split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| FieldError::NotMonic)?;
            if f.len() != k + 1 {
                return Err(FieldError::WrongDegree { expected: *k, found: f.len().saturating_sub(1) });
            }
            let irreducible = ff::is_irreducible(*p, &f)?;
            let primitive = if irreducible { primitivity(*p, &f) } else { Some(false) };
            let code = if irreducible { EXIT_POSITIVE } else { EXIT_CHECK_FAILED };
            Ok((FieldReport { p: *p, k: *k, coefficients: f, irreducible, primitive, seed: cfg.seed }, code))
        }
    })();
    match res {
        Ok((r, code)) => {
            if cfg.json() {
                write_json(out, &WithConfig { body: r, config: cfg });
            } else {
                let coeffs: Vec<String> = r.coefficients.iter().map(|c| c.to_string()).collect();
                writeln!(out, "GF({}^{}) modulus {}", r.p, r.k, coeffs.join(",")).ok();
                let prim = r.primitive.map_or("unknown (group order too large to factor)".to_string(), |b| b.to_string());
                writeln!(out, "  irreducible: {}, primitive: {prim}", r.irreducible).ok();
            }
            code
        }
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            field_error_code(&e)
        }
    }
}

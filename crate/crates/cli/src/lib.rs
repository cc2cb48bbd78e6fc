//! Command implementations behind the `platjones` binary.
//!
//! Each command returns the text it would print, or a [`Failure`] carrying
//! the process exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use platjones::braid::{annotate, components, parse, random_word, BraidWord};
use platjones::evaluator::{compile_word, evaluate, jones, mirror_symmetry_check, JonesOptions};
use platjones::oracle::jones_exact_with_limit;
use platjones::qnum::{Deformation, QPoint, DEFAULT_FIT_TOLERANCE};
use platjones::qsim::{amplitude, run_traced};
use platjones::{Error, LaurentPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_MAX_CROSSINGS: usize = 20;

/// Tolerances used by `verify`.
pub const VERIFY_REL_TOL: f64 = 1e-6;
pub const VERIFY_MIRROR_TOL: f64 = 1e-10;
pub const VERIFY_QSIM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

/// Exit code for a library error: 2 input, 3 orientation, 4 fit,
/// 5 deformation parameter, 6 crossing limit, 1 anything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::IndexOutOfRange { .. }
        | Error::ZeroPower { .. }
        | Error::InvalidStrandCount(_)
        | Error::FlipCount { .. } => 2,
        Error::CapMismatch { .. }
        | Error::AnnotationConflict { .. }
        | Error::UnannotatedSyllable(_)
        | Error::ParityMismatch { .. } => 3,
        Error::ResidualTooLarge { .. } | Error::IllConditioned { .. } | Error::InsufficientSamples { .. } => 4,
        Error::DegenerateQ { .. }
        | Error::NegativeRadicand { .. }
        | Error::VanishingDenominator { .. }
        | Error::NonUnitaryBlock { .. } => 5,
        Error::TooManyCrossings { .. } => 6,
        Error::NonAdmissibleTriple(..) => 1,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(exit_code(&e), e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tolerance: f64,
    /// `None` picks `max(64, 2·window width + 16)`.
    pub samples: Option<usize>,
    pub root_order: Option<u32>,
    pub theta: Option<f64>,
    pub window: Option<(i32, i32)>,
    pub flips: Option<Vec<bool>>,
    pub max_crossings: usize,
    pub json: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_FIT_TOLERANCE,
            samples: None,
            root_order: None,
            theta: None,
            window: None,
            flips: None,
            max_crossings: DEFAULT_MAX_CROSSINGS,
            json: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), Failure> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Failure::new(2, "tolerance must be positive"));
        }
        if let Some(s) = self.samples {
            if s < 16 {
                return Err(Failure::new(2, format!("at least 16 samples required, got {s}")));
            }
        }
        if let Some(r) = self.root_order {
            if r < 5 {
                return Err(Failure::new(
                    5,
                    format!("root order {r} is below 5; q-numbers degenerate or turn negative"),
                ));
            }
        }
        if let Some((lo, hi)) = self.window {
            if lo > hi {
                return Err(Failure::new(2, format!("empty window [{lo}, {hi}]")));
            }
        }
        Ok(())
    }

    /// `θ` from `--theta`, else `2π/r`, else `2π/5`.
    pub fn theta(&self) -> f64 {
        match (self.theta, self.root_order) {
            (Some(t), _) => t,
            (None, Some(r)) => std::f64::consts::TAU / r as f64,
            (None, None) => std::f64::consts::TAU / 5.0,
        }
    }
}

/// `"0101"` → flips.
pub fn parse_flips(bits: &str) -> Result<Vec<bool>, String> {
    bits.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(format!("flip bits must be 0 or 1, found '{other}'")),
        })
        .collect()
}

/// `"-12,12"` → window.
pub fn parse_window(text: &str) -> Result<(i32, i32), String> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| format!("window must be MIN,MAX, got '{text}'"))?;
    let lo = a.trim().parse().map_err(|_| format!("bad window bound '{a}'"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad window bound '{b}'"))?;
    Ok((lo, hi))
}

pub fn load_word(path: &Path, flips: Option<&[bool]>) -> Result<BraidWord, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))?;
    let word = parse(&text).map_err(|e| {
        let f = Failure::from(e);
        Failure::new(f.code, format!("{}: {}", path.display(), f.message))
    })?;
    match flips {
        Some(f) => Ok(word.with_flips(f.to_vec())?),
        None => Ok(word),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Polynomial {
    /// Exponents are in `x`, the square root of the named variable.
    pub variable: &'static str,
    pub text: String,
    pub coeffs: LaurentPoly,
}

impl Polynomial {
    fn in_q(p: &LaurentPoly) -> Self {
        Self {
            variable: "q^(1/2)",
            text: p.to_q_string(),
            coeffs: p.clone(),
        }
    }

    fn in_t(p: &LaurentPoly) -> Self {
        Self {
            variable: "t^(1/2)",
            text: p.to_q_string().replace('q', "t"),
            coeffs: p.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Deviations {
    pub oracle_rel: f64,
    pub mirror: f64,
    pub qsim: f64,
}

/// Stable JSON report; fields a command does not compute are `null`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub word: String,
    pub n: usize,
    pub flips: Option<String>,
    pub components: Option<usize>,
    pub polynomial: Option<Polynomial>,
    pub residual: Option<f64>,
    pub operator_count: Option<usize>,
    pub program: Option<String>,
    pub theta: Option<f64>,
    pub p_k: Option<f64>,
    pub amplitude: Option<[f64; 2]>,
    pub im_amplitude: Option<f64>,
    pub oracle_polynomial: Option<Polynomial>,
    pub writhe: Option<i64>,
    pub bracket_span: Option<[i32; 2]>,
    pub deviations: Option<Deviations>,
}

impl Report {
    fn new(word: &BraidWord) -> Self {
        Self {
            word: word.to_string(),
            n: word.n(),
            flips: None,
            components: None,
            polynomial: None,
            residual: None,
            operator_count: None,
            program: None,
            theta: None,
            p_k: None,
            amplitude: None,
            im_amplitude: None,
            oracle_polynomial: None,
            writhe: None,
            bracket_span: None,
            deviations: None,
        }
    }
}

fn bits(flips: &[bool]) -> String {
    flips.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

pub fn cmd_eval(path: &Path, config: &RunConfig) -> Result<String, Failure> {
    config.validate()?;
    let word = load_word(path, config.flips.as_deref())?;
    let annotated = annotate(&word)?;
    let options = JonesOptions {
        samples: config.samples,
        window: config.window,
        tolerance: config.tolerance,
    };
    let r = jones(&word, &options)?;
    let mut report = Report::new(&word);
    report.flips = Some(bits(&r.flips));
    report.components = Some(r.components);
    report.polynomial = Some(Polynomial::in_q(&r.polynomial));
    report.residual = Some(r.residual);
    report.operator_count = Some(r.operator_count);
    report.program = Some(r.program.clone());
    if config.json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    writeln!(out, "word:           {word}").unwrap();
    writeln!(out, "orientations:   {}", annotated.word).unwrap();
    writeln!(out, "components:     {}", r.components).unwrap();
    writeln!(out, "program:        {}", r.program).unwrap();
    writeln!(out, "operators:      {}", r.operator_count).unwrap();
    writeln!(out, "window (x):     [{}, {}]", r.window.0, r.window.1).unwrap();
    writeln!(out, "residual:       {:.3e}", r.residual).unwrap();
    writeln!(out, "jones:          {}", r.polynomial).unwrap();
    Ok(out)
}

pub fn cmd_prob(path: &Path, config: &RunConfig) -> Result<String, Failure> {
    config.validate()?;
    let word = load_word(path, config.flips.as_deref())?;
    let theta = config.theta();
    let amp = amplitude(&word, theta)?;
    let prog = compile_word(&word)?;
    let mut report = Report::new(&word);
    report.theta = Some(theta);
    report.p_k = Some(amp.norm_sqr());
    report.amplitude = Some([amp.re, amp.im]);
    report.im_amplitude = Some(amp.im);
    report.operator_count = Some(prog.operator_count());
    report.program = Some(prog.to_string());
    if config.json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    writeln!(out, "word:      {word}").unwrap();
    writeln!(out, "theta:     {theta}").unwrap();
    writeln!(out, "amplitude: {} {} {}i", amp.re, if amp.im < 0.0 { '-' } else { '+' }, amp.im.abs()).unwrap();
    writeln!(out, "Im:        {:.3e}", amp.im).unwrap();
    writeln!(out, "P_K:       {}", amp.norm_sqr()).unwrap();
    Ok(out)
}

pub fn cmd_oracle(path: &Path, config: &RunConfig) -> Result<String, Failure> {
    config.validate()?;
    let word = load_word(path, config.flips.as_deref())?;
    let r = jones_exact_with_limit(&word, config.max_crossings)?;
    let span = [r.bracket.min_exponent().unwrap_or(0), r.bracket.max_exponent().unwrap_or(0)];
    let mut report = Report::new(&word);
    report.oracle_polynomial = Some(Polynomial::in_t(&r.jones));
    report.writhe = Some(r.writhe);
    report.bracket_span = Some(span);
    report.components = Some(components(&word));
    if config.json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    writeln!(out, "word:         {word}").unwrap();
    writeln!(out, "writhe:       {}", r.writhe).unwrap();
    writeln!(out, "bracket:      {}", r.bracket.to_string_in("A")).unwrap();
    writeln!(out, "bracket span: A^{} .. A^{}", span[0], span[1]).unwrap();
    writeln!(out, "jones:        {}", Polynomial::in_t(&r.jones).text).unwrap();
    Ok(out)
}

/// θ points for the modulus comparison, all inside the unitary range.
fn verify_thetas(n: usize) -> Vec<f64> {
    let top = std::f64::consts::TAU / (n as f64 + 2.0);
    (1..=10).map(|k| top * k as f64 / 11.0).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub name: String,
    pub word: String,
    pub program: Option<String>,
    pub pass: bool,
    pub deviations: Option<Deviations>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub seed: Option<u64>,
    pub cases: Vec<Case>,
    pub passed: usize,
    pub failed: usize,
    pub worst: Deviations,
}

fn check_word(word: &BraidWord, max_crossings: usize) -> Result<(String, Deviations), Error> {
    let prog = compile_word(word)?;
    let v = jones_exact_with_limit(word, max_crossings)?.jones;
    let (mut oracle_rel, mut mirror, mut qsim): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for theta in verify_thetas(word.n()) {
        let p = QPoint::new(theta);
        let e = evaluate(word, theta)?;
        let d = p.q_number(2.0)?.abs().powi(word.n() as i32 - 1);
        let rhs = v.eval(&p).norm();
        oracle_rel = oracle_rel.max((e.norm() * d - rhs).abs() / rhs.max(1.0));
        mirror = mirror.max(mirror_symmetry_check(word, theta)?);
        let (state, _) = run_traced(word, theta)?;
        qsim = qsim.max((state.amplitude(0) - e).norm());
    }
    Ok((prog.to_string(), Deviations { oracle_rel, mirror, qsim }))
}

fn run_case(name: String, word: &BraidWord, max_crossings: usize) -> Case {
    match check_word(word, max_crossings) {
        Ok((program, dev)) => Case {
            name,
            word: word.to_string(),
            program: Some(program),
            pass: dev.oracle_rel < VERIFY_REL_TOL && dev.mirror < VERIFY_MIRROR_TOL && dev.qsim < VERIFY_QSIM_TOL,
            deviations: Some(dev),
            error: None,
        },
        Err(e) => Case {
            name,
            word: word.to_string(),
            program: None,
            pass: false,
            deviations: None,
            error: Some(e.to_string()),
        },
    }
}

pub enum VerifySource {
    Corpus(PathBuf),
    Random { count: usize, seed: u64 },
}

/// `*.braid` files of a directory, by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::new(1, format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "braid"))
        .collect();
    files.sort();
    Ok(files)
}

/// Returns the report and whether every case passed.
pub fn cmd_verify(source: &VerifySource, config: &RunConfig) -> Result<(String, bool), Failure> {
    config.validate()?;
    let (seed, cases) = match source {
        VerifySource::Corpus(dir) => {
            let mut cases = Vec::new();
            for path in corpus_files(dir)? {
                let name = path.file_name().unwrap().to_string_lossy().into_owned();
                match load_word(&path, None) {
                    Ok(word) => cases.push(run_case(name, &word, config.max_crossings)),
                    Err(f) => cases.push(Case {
                        name,
                        word: String::new(),
                        program: None,
                        pass: false,
                        deviations: None,
                        error: Some(f.message),
                    }),
                }
            }
            (None, cases)
        }
        VerifySource::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let cases = (0..*count)
                .map(|k| {
                    let strands = if k % 2 == 0 { 4 } else { 6 };
                    let word = random_word(&mut rng, strands, 10);
                    run_case(format!("random-{k}"), &word, config.max_crossings)
                })
                .collect();
            (Some(*seed), cases)
        }
    };
    let worst = cases.iter().filter_map(|c| c.deviations.as_ref()).fold(
        Deviations {
            oracle_rel: 0.0,
            mirror: 0.0,
            qsim: 0.0,
        },
        |w, d| Deviations {
            oracle_rel: w.oracle_rel.max(d.oracle_rel),
            mirror: w.mirror.max(d.mirror),
            qsim: w.qsim.max(d.qsim),
        },
    );
    let passed = cases.iter().filter(|c| c.pass).count();
    let summary = Summary {
        seed,
        failed: cases.len() - passed,
        passed,
        cases,
        worst,
    };
    let ok = summary.failed == 0;
    if config.json {
        return Ok((to_json(&summary), ok));
    }
    let mut out = String::new();
    if let Some(s) = seed {
        writeln!(out, "seed {s}").unwrap();
    }
    for c in &summary.cases {
        let status = if c.pass { "PASS" } else { "FAIL" };
        match (&c.deviations, &c.error) {
            (Some(d), _) => writeln!(
                out,
                "{status} {:<24} oracle {:.1e}  mirror {:.1e}  qsim {:.1e}  {}",
                c.name, d.oracle_rel, d.mirror, d.qsim, c.word
            )
            .unwrap(),
            (None, Some(e)) => writeln!(out, "{status} {:<24} {e}", c.name).unwrap(),
            (None, None) => unreachable!(),
        }
        if let Some(p) = &c.program {
            writeln!(out, "     {:<24} {p}", "").unwrap();
        }
    }
    writeln!(
        out,
        "{} passed, {} failed; worst oracle {:.1e}, mirror {:.1e}, qsim {:.1e}",
        summary.passed, summary.failed, summary.worst.oracle_rel, summary.worst.mirror, summary.worst.qsim
    )
    .unwrap();
    Ok((out, ok))
}

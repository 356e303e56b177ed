//! The `spider` command line: argument parsing, output formats and exit codes.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::link::cable::{g3, g3_normalized, vector_colours};
use crate::link::ideal::{period_check, IdealKind};
use crate::link::parse_pd;
use crate::qpoly::{LaurentPoly, RatFunc};
use crate::rep::{inv_dim, parse_weights, Algebra, Weight};
use crate::report::Report;
use crate::sl3::clasp::nonsegregate;
use crate::sl3::reduce::{evaluate_closed_traced, graph_invariant};
use crate::sl3::{clasp_with, Tangle};
use crate::sp4::{b2_coeffs, verify_b2_recurrences, Sp4Weight};
use crate::theta::{admissible, theta_entry, theta_matrix};
use crate::tl2::theta_sl2;
use crate::verify::{run_suite, Suite};
use crate::web::{parse_signs, render_signs, Web, WebJson, WebSum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_GUARDRAIL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "spider", version, about = "Exact sl(3) and sp(4) web computations")]
pub struct Cli {
    /// Print polynomials in powers of q^(1/2) instead of v.
    #[arg(long, global = true)]
    pub q_units: bool,
    /// Emit JSON for commands whose default output is text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest clasp weight a + b.
    #[arg(long, global = true)]
    pub max_clasp_weight: Option<usize>,
    /// Largest total strand count after cabling a link.
    #[arg(long, global = true)]
    pub max_cable_width: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a closed web or cubic bipartite planar graph.
    EvalGraph {
        file: PathBuf,
        /// Emit every reduction step as JSON.
        #[arg(long)]
        trace: bool,
    },
    /// Coloured sl(3) invariant of a link diagram in PD notation.
    EvalLink {
        /// File with crossings `X(a,b,c,d)±` and `O` circles.
        #[arg(long)]
        pd: PathBuf,
        /// One weight per component, `a,b;c,d;...`; all vectors if omitted.
        #[arg(long)]
        colors: Option<String>,
        /// Divide by the kink factor raised to the writhe.
        #[arg(long)]
        normalize_writhe: bool,
    },
    /// Expand a clasp into webs.
    ClaspExpand {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Boundary pattern of `+` and `-` for a non-segregated clasp.
        #[arg(long, allow_hyphen_values = true)]
        nonseg: Option<String>,
    },
    /// sp(4) single clasp expansion coefficients.
    Sp4Coeffs {
        #[arg(long)]
        weight: String,
        #[arg(long)]
        n: usize,
        /// Check the linear recurrences as well.
        #[arg(long)]
        verify: bool,
    },
    /// Trihedron coefficients.
    Theta(ThetaArgs),
    /// Dimension of the invariant space of a tensor product.
    InvDim {
        #[arg(long)]
        algebra: String,
        weights: String,
    },
    /// Test whether G(L) = G(L')^p modulo the loop ideal.
    PeriodCheck {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        gl: PathBuf,
        #[arg(long)]
        gbar: PathBuf,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("algebra").required(true).args(["sl2", "sl3"])))]
pub struct ThetaArgs {
    /// sl(2) edge labels i j k.
    #[arg(long, num_args = 3, value_names = ["I", "J", "K"])]
    pub sl2: Option<Vec<usize>>,
    /// sl(3) triple `a1,b1;a2,b2;a3,b3`.
    #[arg(long)]
    pub sl3: Option<String>,
    /// A single matrix entry.
    #[arg(long, num_args = 2, value_names = ["I", "J"], requires = "sl3")]
    pub entry: Option<Vec<u32>>,
}

/// Result of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) => EXIT_VERIFICATION,
        Error::Guardrail(_) => EXIT_GUARDRAIL,
        Error::Domain(_) | Error::Parse(_) | Error::Web(_) | Error::Io(_) => EXIT_INPUT,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn config(cli: &Cli) -> Config {
    let mut cfg = Config::default();
    if let Some(w) = cli.max_clasp_weight {
        cfg.max_clasp_weight = w;
    }
    if let Some(w) = cli.max_cable_width {
        cfg.max_cable_width = w;
    }
    cfg
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("output types serialize");
    s.push('\n');
    s
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct Value {
    value: String,
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let cfg = config(cli);
    let q = cli.q_units;
    let text_or_json = |value: String| {
        if cli.json {
            to_json(&Value { value })
        } else {
            format!("{value}\n")
        }
    };
    match &cli.command {
        Command::EvalGraph { file, trace } => {
            let g: WebJson = parse_json(&read(file)?, &file.display().to_string())?;
            if *trace {
                let t = evaluate_closed_traced(&g.to_bipartite_web(false)?)?;
                return Ok((EXIT_OK, to_json(&t)));
            }
            Ok((EXIT_OK, text_or_json(graph_invariant(&g)?.render(q))))
        }
        Command::EvalLink { pd, colors, normalize_writhe } => {
            let d = parse_pd(&read(pd)?)?;
            let colours = match colors {
                Some(c) => parse_weights(c)?,
                None => vector_colours(&d),
            };
            let v = if *normalize_writhe {
                g3_normalized(&d, &colours, &cfg)?
            } else {
                g3(&d, &colours, &cfg)?
            };
            Ok((EXIT_OK, text_or_json(v.render(q))))
        }
        Command::ClaspExpand { a, b, nonseg } => {
            let mut c = clasp_with(*a, *b, &cfg)?;
            if let Some(p) = nonseg {
                let types = parse_signs(p)?;
                c = nonsegregate(&c, &types, &types)?;
            }
            Ok((EXIT_OK, to_json(&ClaspExpansion::new(*a, *b, &c, q))))
        }
        Command::Sp4Coeffs { weight, n, verify } => {
            let w: Sp4Weight = weight.parse()?;
            let out = Sp4Output::new(w, *n, q)?;
            let mut text = to_json(&out);
            if *verify {
                let r = verify_b2_recurrences(w, *n)?;
                text.push_str(&format!("{}\n", r.summary()));
                if !r.passed() {
                    return Ok((EXIT_VERIFICATION, text));
                }
            }
            Ok((EXIT_OK, text))
        }
        Command::Theta(t) => theta(t, &cfg, q, &text_or_json),
        Command::InvDim { algebra, weights } => {
            let alg: Algebra = algebra.parse()?;
            let ws = parse_weights(weights)?;
            Ok((EXIT_OK, text_or_json(inv_dim(alg, &ws)?.to_string())))
        }
        Command::PeriodCheck { p, ideal, gl, gbar } => {
            let kind: IdealKind = ideal.parse()?;
            let g: LaurentPoly = read(gl)?.trim().parse()?;
            let h: LaurentPoly = read(gbar)?.trim().parse()?;
            let ok = period_check(&g, &h, *p, kind)?;
            let verdict = if ok { "consistent" } else { "obstructed" };
            Ok((EXIT_OK, text_or_json(verdict.to_string())))
        }
        Command::Verify { suite, max } => {
            let s: Suite = suite.parse()?;
            let reports = run_suite(s, *max, &cfg)?;
            let passed = reports.iter().all(Report::passed);
            let text = if cli.json {
                to_json(&reports)
            } else {
                reports.iter().map(|r| format!("{}\n", r.summary())).collect()
            };
            Ok((if passed { EXIT_OK } else { EXIT_VERIFICATION }, text))
        }
    }
}

fn theta(t: &ThetaArgs, cfg: &Config, q: bool, text_or_json: &dyn Fn(String) -> String) -> Result<(i32, String)> {
    if let Some(v) = &t.sl2 {
        return Ok((EXIT_OK, text_or_json(theta_sl2(v[0], v[1], v[2]).render(q))));
    }
    let spec = t.sl3.as_deref().expect("clap requires --sl2 or --sl3");
    let ws = parse_weights(spec)?;
    let triple: [Weight; 3] = ws
        .try_into()
        .map_err(|_| Error::Parse(format!("expected three weights in {spec:?}")))?;
    let adm = admissible(triple).ok_or_else(|| Error::Domain(format!("triple {spec:?} is not admissible")))?;
    let matrix = match &t.entry {
        Some(e) => vec![vec![theta_entry(triple, e[0], e[1], cfg)?]],
        None => theta_matrix(triple, cfg)?,
    };
    let out = ThetaOutput {
        weights: triple.iter().map(Weight::to_string).collect(),
        d: adm.d,
        entry: t.entry.clone(),
        matrix: matrix.iter().map(|r| r.iter().map(|x| x.render(q)).collect()).collect(),
    };
    Ok((EXIT_OK, to_json(&out)))
}

/// JSON form of a clasp expansion: canonical web keys with coefficients.
#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct ClaspExpansion {
    pub a: usize,
    pub b: usize,
    pub top: String,
    pub bottom: String,
    pub terms: Vec<ClaspTerm>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct ClaspTerm {
    pub web: String,
    pub coeff: String,
}

impl ClaspExpansion {
    pub fn new(a: usize, b: usize, t: &Tangle, q_units: bool) -> ClaspExpansion {
        ClaspExpansion {
            a,
            b,
            top: render_signs(t.top()),
            bottom: render_signs(t.bottom()),
            terms: t
                .sum()
                .keyed()
                .into_iter()
                .map(|(web, c)| ClaspTerm { web, coeff: c.render(q_units) })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<ClaspExpansion> {
        parse_json(text, "clasp expansion")
    }

    pub fn to_tangle(&self) -> Result<Tangle> {
        let mut sum = WebSum::new();
        for t in &self.terms {
            sum.add_term(&Web::from_key_string(&t.web)?, t.coeff.parse::<RatFunc>()?);
        }
        Ok(Tangle::from_sum(parse_signs(&self.top)?, parse_signs(&self.bottom)?, sum))
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct Sp4Output {
    pub weight: String,
    pub n: usize,
    pub coefficients: Vec<Sp4Entry>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct Sp4Entry {
    pub i: usize,
    pub j: usize,
    pub coeff: String,
}

impl Sp4Output {
    pub fn new(w: Sp4Weight, n: usize, q_units: bool) -> Result<Sp4Output> {
        let t = b2_coeffs(w, n)?;
        Ok(Sp4Output {
            weight: w.to_string(),
            n,
            coefficients: t
                .iter()
                .map(|((i, j), c)| Sp4Entry { i, j, coeff: c.render(q_units) })
                .collect(),
        })
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct ThetaOutput {
    pub weights: Vec<String>,
    pub d: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<Vec<u32>>,
    pub matrix: Vec<Vec<String>>,
}

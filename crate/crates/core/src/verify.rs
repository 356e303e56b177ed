//! Named verification suites run by `spider verify`.

use std::str::FromStr;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::rep::{inv_dim, Algebra, Weight};
use crate::report::Report;
use crate::sl3::clasp::{
    double_clasp, verify_clasp_axioms, verify_nonseg_recurrences, verify_single_recurrences,
};
use crate::sl3::clasp_with;
use crate::sp4::{verify_b2_recurrences, verify_base_agreement, verify_double_trace, Sp4Weight};
use crate::theta::admissible;
use crate::tl2::{jw_with, theta_sl2, theta_sl2_diagram, tl_mult, Chord, TlElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Sl3Recurrences,
    ClaspAxioms,
    Sp4Recurrences,
    Jw,
    ThetaSl2,
    ThetaSl3,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = [
        "sl3-recurrences",
        "clasp-axioms",
        "sp4-recurrences",
        "jw",
        "theta-sl2",
        "theta-sl3",
        "all",
    ];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sl3-recurrences" => Suite::Sl3Recurrences,
            "clasp-axioms" => Suite::ClaspAxioms,
            "sp4-recurrences" => Suite::Sp4Recurrences,
            "jw" => Suite::Jw,
            "theta-sl2" => Suite::ThetaSl2,
            "theta-sl3" => Suite::ThetaSl3,
            "all" => Suite::All,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown suite {s:?}, expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

/// Runs `suite` up to size `max`; each suite reads `max` as its natural
/// size parameter.
pub fn run_suite(suite: Suite, max: usize, cfg: &Config) -> Result<Vec<Report>> {
    Ok(match suite {
        Suite::Sl3Recurrences => vec![sl3_recurrences(max)?],
        Suite::ClaspAxioms => vec![clasp_axioms(max, cfg)?],
        Suite::Sp4Recurrences => vec![sp4_recurrences(max)?],
        Suite::Jw => vec![jw_projectors(max, cfg)?],
        Suite::ThetaSl2 => vec![theta_sl2_formula(max)?],
        Suite::ThetaSl3 => vec![theta_sl3_dimensions(max as u32)?],
        Suite::All => {
            let mut out = Vec::new();
            for s in [
                Suite::Sl3Recurrences,
                Suite::ClaspAxioms,
                Suite::Sp4Recurrences,
                Suite::Jw,
                Suite::ThetaSl2,
                Suite::ThetaSl3,
            ] {
                out.extend(run_suite(s, max, cfg)?);
            }
            out
        }
    })
}

/// Single recurrences for `n <= max` and the non-segregated families for
/// `a, b <= max`.
pub fn sl3_recurrences(max: usize) -> Result<Report> {
    let mut r = Report::new("sl3-recurrences");
    for n in 1..=max {
        r.absorb(verify_single_recurrences(n)?);
    }
    for a in 1..=max {
        for b in 1..=max {
            r.absorb(verify_nonseg_recurrences(a, b)?);
        }
    }
    Ok(r)
}

/// Clasp axioms for `a + b <= max` and agreement of the two clasp
/// constructions.
pub fn clasp_axioms(max: usize, cfg: &Config) -> Result<Report> {
    let mut r = Report::new("clasp-axioms");
    for n in 1..=max {
        for a in 0..=n {
            let b = n - a;
            let c = clasp_with(a, b, cfg)?;
            r.absorb(verify_clasp_axioms(&c, &format!("({a},{b})"))?);
            let d = double_clasp(a, b, cfg)?;
            r.check(d == c, || format!("double expansion differs from clasp ({a},{b})"));
        }
    }
    Ok(r)
}

/// sp(4) recurrences, double trace and base agreement for `2 <= n <= max`.
pub fn sp4_recurrences(max: usize) -> Result<Report> {
    let mut r = Report::new("sp4-recurrences");
    for w in [Sp4Weight::N0, Sp4Weight::ZeroN] {
        r.absorb(verify_base_agreement(w)?);
        for n in 2..=max {
            r.absorb(verify_b2_recurrences(w, n)?);
            r.absorb(verify_double_trace(w, n)?);
        }
    }
    Ok(r)
}

/// Jones-Wenzl projectors up to `max` strands are idempotent and killed by
/// every cup-cap generator on either side.
pub fn jw_projectors(max: usize, cfg: &Config) -> Result<Report> {
    let mut r = Report::new("jw");
    for n in 1..=max {
        let f = jw_with(n, cfg)?;
        r.check(tl_mult(&f, &f)? == f, || format!("f_{n} is not idempotent"));
        for i in 1..n {
            let e = TlElement::from_chord(Chord::e(n, i));
            r.check(tl_mult(&e, &f)?.is_zero(), || format!("e_{i} f_{n} != 0"));
            r.check(tl_mult(&f, &e)?.is_zero(), || format!("f_{n} e_{i} != 0"));
        }
    }
    Ok(r)
}

/// Closed sl(2) trihedron formula against the projector-decorated diagram.
pub fn theta_sl2_formula(max: usize) -> Result<Report> {
    let mut r = Report::new("theta-sl2");
    for i in 0..=max {
        for j in 0..=max {
            for k in 0..=max {
                let f = theta_sl2(i, j, k);
                let d = theta_sl2_diagram(i, j, k)?;
                r.check(f == d, || format!("theta({i},{j},{k}): formula {f} vs diagram {d}"));
            }
        }
    }
    Ok(r)
}

/// Size of the sl(3) trihedron basis against the invariant dimension for
/// weights with `a + b <= max`.
pub fn theta_sl3_dimensions(max: u32) -> Result<Report> {
    let mut r = Report::new("theta-sl3");
    let ws: Vec<Weight> = (0..=max)
        .flat_map(|a| (0..=max - a).map(move |b| Weight::new(a, b)))
        .collect();
    for &x in &ws {
        for &y in &ws {
            for &z in &ws {
                let dim = inv_dim(Algebra::Sl3, &[x, y, z])?;
                let got = admissible([x, y, z]).map_or(0, |a| a.size() as u64);
                r.check(got == dim, || format!("{x} {y} {z}: basis {got}, dimension {dim}"));
            }
        }
    }
    Ok(r)
}

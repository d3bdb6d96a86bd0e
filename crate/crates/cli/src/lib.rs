//! Command-line front-end for the `ncqm-core` engine.

pub mod config;
pub mod error;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use ncqm_core::bialgebra::{verify_bialgebra, GroupElement};
use ncqm_core::dual::{
    poisson_bracket_dir, star_closed, star_diagnostics, verify_star, DualElement, StarOracle,
};
use ncqm_core::hopf::{heisenberg_limit_report, verify_hopf_axioms};
use ncqm_core::series::SeriesTermJson;
use ncqm_core::uea::{format_zmap, verify_flatness, verify_relations};
use ncqm_core::{
    parse_algebra, parse_dual, AlgebraElement, DeformParams, Hopf, Index3, Index4, Uea,
    VerificationReport, ZMap,
};

pub use config::{Config, Format, Overrides};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "ncqm",
    version,
    about = "Exact computations in the three-parameter deformed enveloping algebra"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Truncation order D in the total ℏ-degree
    #[arg(long, global = true)]
    pub trunc: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// key = value file; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the result to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-ordered product A·B
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Commutator [A, B]
    Comm {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Coproduct Δ(A) as a sum of tensor terms
    Coproduct {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Counit ε(A), a series in ℏ
    Counit {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Antipode S(A)
    Antipode {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Flatness map: degree-g monomials times λ^{-g}
    Phi {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Coordinates in the divided-power basis Z^I X^J
    Zbasis {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Closed-formula star product of two dual elements
    Star {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Star product computed from the coproduct
    Staroracle {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
        /// Enumeration bound on |S|+|T|; default |a|+|b|+D per monomial pair
        #[arg(long)]
        cap: Option<u32>,
    },
    /// First-order bracket {U, V}_i
    Poisson {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        dir: usize,
    },
    /// Group law of G_NC on rational 7-tuples
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Exhaustive identity checks; exit code 1 on any failure
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupOp {
    /// G·H for tuples θ,φ,ψ,q1,q2,p1,p2
    Compose {
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    Inverse {
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Defining relations on all generator pairs
    Relations,
    /// Relations after the flatness map
    Flatness,
    /// Hopf axioms on PBW monomials up to the given degree
    Hopf {
        #[arg(long, default_value_t = 2)]
        maxdeg: u32,
    },
    /// Star-product gate on dual monomials up to the given norm
    Star {
        #[arg(long, default_value_t = 2)]
        maxdeg: u32,
        /// Also report the ungated full-order comparison
        #[arg(long)]
        diagnostics: bool,
    },
    /// Cocommutators, duality and the classical layer
    Bialgebra,
    /// α=1, β=γ=0 single-parameter limit; ignores the parameter flags
    Heisenberg {
        #[arg(long, default_value_t = 5)]
        deg: u32,
    },
    /// Every suite above
    All {
        #[arg(long, default_value_t = 2)]
        maxdeg: u32,
        #[arg(long, default_value_t = 5)]
        deg: u32,
    },
}

/// What a run produced: exit code and the two streams.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and executes it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let (code, body, err) = match execute(&cli) {
        Ok(body) => (0, body, String::new()),
        Err((e, body)) => (
            e.exit_code(),
            body.unwrap_or_default(),
            format!("error: {e}\n"),
        ),
    };
    let mut out = Outcome {
        code,
        stdout: String::new(),
        stderr: err,
    };
    if body.is_empty() {
        return out;
    }
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                out.code = CliError::Io(String::new()).exit_code();
                out.stderr
                    .push_str(&format!("error: {}: {e}\n", path.display()));
            }
        }
        None => out.stdout = body,
    }
    out
}

type Failure = (CliError, Option<String>);

fn fail(e: impl Into<CliError>) -> Failure {
    (e.into(), None)
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let g = &cli.global;
    let base = match &g.config {
        Some(path) => Config::load(path).map_err(fail)?,
        None => Config::default(),
    };
    let cfg = base.apply(&Overrides {
        alpha: g.alpha.clone(),
        beta: g.beta.clone(),
        gamma: g.gamma.clone(),
        truncation: g.trunc,
        format: g.format,
    });
    let params = cfg.params().map_err(fail)?;
    let json = cfg.format == Format::Json;
    let d = params.truncation;
    let uea = || Uea::new(params.clone());
    let primal = |u: &Uea, text: &str| parse_algebra(text, u).map_err(fail);
    let dual = |text: &str| parse_dual(text, d).map_err(fail);

    let body = match &cli.command {
        Command::Mul { a, b } => {
            let u = uea();
            element(
                &u.mul(&primal(&u, a)?, &primal(&u, b)?).map_err(fail)?,
                json,
            )
        }
        Command::Comm { a, b } => {
            let u = uea();
            element(
                &u.commutator(&primal(&u, a)?, &primal(&u, b)?)
                    .map_err(fail)?,
                json,
            )
        }
        Command::Coproduct { a } => {
            let h = Hopf::new(params.clone());
            let t = h.coproduct(&primal(h.algebra(), a)?).map_err(fail)?;
            if json {
                to_json(&t.to_json())
            } else {
                t.to_string()
            }
        }
        Command::Counit { a } => {
            let h = Hopf::new(params.clone());
            let s = h.counit(&primal(h.algebra(), a)?).map_err(fail)?;
            if json {
                to_json(&CounitJson { coeff: s.to_json() })
            } else {
                s.to_string()
            }
        }
        Command::Antipode { a } => {
            let h = Hopf::new(params.clone());
            element(&h.antipode(&primal(h.algebra(), a)?).map_err(fail)?, json)
        }
        Command::Phi { a } => {
            let u = uea();
            element(&u.phi(&primal(&u, a)?).map_err(fail)?, json)
        }
        Command::Zbasis { a } => {
            let u = uea();
            let z = u.to_z_basis(&primal(&u, a)?).map_err(fail)?;
            zmap(&z, json)
        }
        Command::Star { u, v } => dual_out(&star_closed(&dual(u)?, &dual(v)?).map_err(fail)?, json),
        Command::Staroracle { u, v, cap } => {
            let oracle = StarOracle::new(params.clone());
            let (x, y) = (dual(u)?, dual(v)?);
            let result = match cap {
                None => oracle.star(&x, &y).map_err(fail)?,
                Some(cap) => {
                    let mut acc = DualElement::zero(d);
                    for (a, sa) in x.terms() {
                        for (b, sb) in y.terms() {
                            let piece = oracle.star_oracle(a, b, *cap).scale(&(sa * sb));
                            acc = acc.try_add(&piece).map_err(fail)?;
                        }
                    }
                    acc
                }
            };
            dual_out(&result, json)
        }
        Command::Poisson { u, v, dir } => dual_out(
            &poisson_bracket_dir(&dual(u)?, &dual(v)?, *dir).map_err(fail)?,
            json,
        ),
        Command::Group { op } => {
            let parse = |s: &str| s.parse::<GroupElement>().map_err(fail);
            let result = match op {
                GroupOp::Compose { g, h } => parse(g)?.compose(&parse(h)?, &params),
                GroupOp::Inverse { g } => parse(g)?.inverse(),
            };
            if json {
                let element = result.to_string().split(',').map(str::to_string).collect();
                to_json(&GroupJson { element })
            } else {
                result.to_string()
            }
        }
        Command::Verify { suite } => return verify(suite, &params, json),
    };
    Ok(finish(body))
}

#[derive(Serialize)]
struct CounitJson {
    coeff: Vec<SeriesTermJson>,
}

#[derive(Serialize)]
struct GroupJson {
    element: Vec<String>,
}

/// `{"terms":[{"z":[..],"x":[..],"coeff":<series>}]}`
#[derive(Serialize)]
struct ZJson {
    terms: Vec<ZTermJson>,
}

#[derive(Serialize)]
struct ZTermJson {
    z: Index3,
    x: Index4,
    coeff: Vec<SeriesTermJson>,
}

fn finish(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

fn element(x: &AlgebraElement, json: bool) -> String {
    if json {
        to_json(&x.to_json())
    } else {
        x.to_string()
    }
}

fn dual_out(x: &DualElement, json: bool) -> String {
    if json {
        to_json(&x.to_json())
    } else {
        x.to_string()
    }
}

fn zmap(z: &ZMap, json: bool) -> String {
    if json {
        let terms = z
            .iter()
            .map(|(m, s)| ZTermJson {
                z: m.central,
                x: m.qp,
                coeff: s.to_json(),
            })
            .collect();
        to_json(&ZJson { terms })
    } else {
        format_zmap(z)
    }
}

fn verify(suite: &Suite, params: &DeformParams, json: bool) -> Result<String, Failure> {
    let mut sections: Vec<(&str, VerificationReport)> = Vec::new();
    let mut diagnostics = None;
    let run_one = |s: &Suite,
                   sections: &mut Vec<(&str, VerificationReport)>|
     -> Result<(), Failure> {
        match s {
            Suite::Relations => sections.push(("relations", verify_relations(params))),
            Suite::Flatness => sections.push(("flatness", verify_flatness(params))),
            Suite::Hopf { maxdeg } => sections.push(("hopf", verify_hopf_axioms(*maxdeg, params))),
            Suite::Star { maxdeg, .. } => sections.push(("star", verify_star(*maxdeg, params))),
            Suite::Bialgebra => {
                sections.push(("bialgebra", verify_bialgebra(params).map_err(fail)?))
            }
            Suite::Heisenberg { deg } => {
                sections.push(("heisenberg", heisenberg_limit_report(*deg)))
            }
            Suite::All { .. } => unreachable!(),
        }
        Ok(())
    };
    match suite {
        Suite::All { maxdeg, deg } => {
            for s in [
                Suite::Relations,
                Suite::Flatness,
                Suite::Hopf { maxdeg: *maxdeg },
                Suite::Star {
                    maxdeg: *maxdeg,
                    diagnostics: false,
                },
                Suite::Bialgebra,
                Suite::Heisenberg { deg: *deg },
            ] {
                run_one(&s, &mut sections)?;
            }
        }
        Suite::Star {
            maxdeg,
            diagnostics: true,
        } => {
            run_one(suite, &mut sections)?;
            diagnostics = Some(star_diagnostics(*maxdeg, params));
        }
        other => run_one(other, &mut sections)?,
    }
    let pass = sections.iter().all(|(_, r)| r.passed());
    let body = if json {
        let mut obj = serde_json::Map::new();
        for (name, r) in &sections {
            obj.insert(
                name.to_string(),
                serde_json::to_value(r).expect("serializable"),
            );
        }
        if let Some(r) = &diagnostics {
            obj.insert(
                "star_diagnostics".into(),
                serde_json::to_value(r).expect("serializable"),
            );
        }
        obj.insert("pass".into(), Value::Bool(pass));
        to_json(&Value::Object(obj))
    } else {
        let mut out = format!("parameters: {params}\n");
        for (name, r) in &sections {
            out.push_str(&format!("== {name}\n{}\n", r.summary()));
        }
        if let Some(r) = &diagnostics {
            out.push_str(&format!(
                "== star diagnostics (not gated)\n{}\n",
                r.summary()
            ));
        }
        out.push_str(if pass { "ALL PASS" } else { "FAILED" });
        out
    };
    let body = finish(body);
    if pass {
        Ok(body)
    } else {
        Err((CliError::VerificationFailed, Some(body)))
    }
}

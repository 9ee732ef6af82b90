//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or parse
//! error, 3 a resource cap was hit.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::constructions::{f_map, v_index, v_word, w_ij, SpineLetter, V_word};
use crate::error::{Error, Result};
use crate::markedspace::{ball, balls_equal, find_distinguishing_word, metric, Limits};
use crate::oracle::{Oracle, Symbol};
use crate::sections::{decompose, nucleus_at, nucleus_depth, Decomposition, NucleusOutcome};
use crate::verify::{self, Knobs};
use crate::wordproblem::{BetaPair, ElementOrder, GroupSpec, MarkedGroup};
use crate::words::{parse_raw, parse_word, KElement, ReducedWord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "overgroup",
    version,
    about = "Word problems and marked-group metrics for Grigorchuk overgroups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Operate on words.
    #[command(subcommand)]
    Word(WordCmd),
    /// Decide whether a word is the identity.
    Solve(SolveArgs),
    /// Enumerate a Cayley ball.
    Ball(BallArgs),
    /// Ball sizes |B(0)| … |B(r)|.
    Growth(GrowthArgs),
    /// Distance between two marked groups.
    Metric(MetricArgs),
    /// Shortest word separating two marked groups.
    Distinguish(DistinguishArgs),
    /// Build witness words.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Run invariant suites (`all` runs every suite).
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    /// Canonical form, class and last occurrences.
    Classify { oracle: String },
    /// The shifted oracle σᵏω.
    Shift {
        oracle: String,
        #[arg(long, default_value_t = 1)]
        by: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum WordCmd {
    /// Free-product normal form.
    Reduce { word: String },
    /// Same as the top-level `solve`.
    Solve(SolveArgs),
    /// Section tree down to a given depth.
    Sections {
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Nucleus at depth ⌈log₂|w|⌉ or deeper.
    Nucleus {
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Order of an element, up to a cap.
    Order {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// `<family>@<oracle>`, e.g. `beta-01@121(0)`.
    #[arg(long)]
    pub spec: String,
    #[arg(long)]
    pub word: String,
}

#[derive(Args, Debug)]
pub struct LimitArgs {
    #[arg(long, default_value_t = Limits::default().max_elements)]
    pub max_elements: usize,
    #[arg(long, default_value_t = Limits::default().max_words)]
    pub max_words: u64,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_elements: self.max_elements,
            max_words: self.max_words,
        }
    }
}

#[derive(Args, Debug)]
pub struct BallArgs {
    #[arg(long)]
    pub spec: String,
    #[arg(long)]
    pub radius: usize,
    #[arg(long)]
    pub dot: bool,
    #[command(flatten)]
    pub limits: LimitArgs,
}

#[derive(Args, Debug)]
pub struct GrowthArgs {
    #[arg(long)]
    pub spec: String,
    #[arg(long)]
    pub rmax: usize,
    #[arg(long)]
    pub csv: bool,
    #[command(flatten)]
    pub limits: LimitArgs,
}

#[derive(Args, Debug)]
pub struct MetricArgs {
    pub spec1: String,
    pub spec2: String,
    #[arg(long, default_value_t = 3)]
    pub max_r: usize,
}

#[derive(Args, Debug)]
pub struct DistinguishArgs {
    pub spec1: String,
    pub spec2: String,
    #[arg(long, default_value_t = 16)]
    pub max_len: usize,
    #[arg(long, default_value_t = Limits::default().max_words)]
    pub max_words: u64,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// v_n = y^{(ax)^n}.
    Vn {
        #[arg(long, default_value = "d")]
        y: char,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// V-word at a tree vertex given as a bit string.
    #[command(name = "V")]
    V {
        #[arg(long, default_value = "d")]
        y: char,
        #[arg(long, default_value = "")]
        path: String,
    },
    /// Separating word W(ij) for an eventually constant oracle with tail i.
    Wij {
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        i: u8,
        #[arg(long)]
        j: u8,
        /// Also run β_ij, α and the other β on the word.
        #[arg(long)]
        verify: bool,
    },
    /// Image of a word under the map f.
    Fmap { word: String },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    pub suite: String,
    /// Print a table instead of JSON.
    #[arg(long)]
    pub table: bool,
    /// Use reduced sizes.
    #[arg(long)]
    pub quick: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long)]
    pub radius: Option<usize>,
}

/// Text to print and the process exit code.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            stdout,
            code: EXIT_OK,
        }
    }

    fn json(v: &Value) -> Outcome {
        Outcome::ok(pretty(v))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap(_) => EXIT_RESOURCE_CAP,
        _ => EXIT_USAGE,
    }
}

fn spec(text: &str) -> Result<MarkedGroup> {
    Ok(MarkedGroup::new(text.parse::<GroupSpec>()?))
}

fn symbol(n: u8) -> Result<Symbol> {
    Symbol::from_index(n as usize).ok_or_else(|| Error::InvalidSpec {
        spec: n.to_string(),
        reason: "symbols are 0, 1 and 2".into(),
    })
}

fn spine(y: char) -> Result<SpineLetter> {
    let k = KElement::from_name(y).ok_or(Error::DisallowedLetter(y))?;
    SpineLetter::new(k)
}

pub fn execute(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Oracle(OracleCmd::Classify { oracle }) => {
            let o: Oracle = oracle.parse()?;
            let last: serde_json::Map<String, Value> = Symbol::ALL
                .iter()
                .map(|&s| (s.to_string(), json!(o.last_occurrence(s))))
                .collect();
            Ok(Outcome::json(&json!({
                "oracle": o,
                "class": o.classify(),
                "orbit": o.orbit(),
                "last_occurrence": last,
            })))
        }
        Command::Oracle(OracleCmd::Shift { oracle, by }) => {
            let o: Oracle = oracle.parse()?;
            Ok(Outcome::json(
                &json!({ "oracle": o, "by": by, "shifted": o.shift_by(by) }),
            ))
        }
        Command::Word(WordCmd::Reduce { word }) => {
            let raw = parse_raw(&word)?;
            let w = ReducedWord::reduce(raw.iter().copied());
            Ok(Outcome::json(
                &json!({ "word": word, "normal_form": w, "length": w.len() }),
            ))
        }
        Command::Word(WordCmd::Solve(args)) | Command::Solve(args) => solve(&args),
        Command::Word(WordCmd::Sections {
            oracle,
            word,
            depth,
            dot,
        }) => {
            let o: Oracle = oracle.parse()?;
            let w = parse_word(&word)?;
            match decompose(&w, &o, depth) {
                Decomposition::Tree(t) if dot => Ok(Outcome::ok(t.to_dot())),
                Decomposition::Tree(t) => Ok(Outcome::json(&t.to_json())),
                Decomposition::NotInStabilizer { level, vertex } => Ok(Outcome::json(&json!({
                    "word": w, "oracle": o, "not_in_stabilizer": { "level": level, "vertex": vertex },
                }))),
            }
        }
        Command::Word(WordCmd::Nucleus {
            oracle,
            word,
            depth,
        }) => {
            let o: Oracle = oracle.parse()?;
            let w = parse_word(&word)?;
            let depth = depth.unwrap_or_else(|| nucleus_depth(&w));
            let body = match nucleus_at(&w, &o, depth)? {
                NucleusOutcome::Nucleus(n) => n.to_json(),
                NucleusOutcome::NotInStabilizer { level, vertex } => {
                    json!({ "not_in_stabilizer": { "level": level, "vertex": vertex } })
                }
            };
            Ok(Outcome::json(
                &json!({ "word": w, "oracle": o, "nucleus": body }),
            ))
        }
        Command::Word(WordCmd::Order { spec: s, word, cap }) => {
            let g = spec(&s)?;
            let w = parse_word(&word)?;
            let order = match g.element_order(&w, cap.max(1)) {
                ElementOrder::Finite(n) => json!(n),
                ElementOrder::Unknown => json!("unknown"),
            };
            Ok(Outcome::json(
                &json!({ "spec": g.spec(), "word": w, "cap": cap, "order": order }),
            ))
        }
        Command::Ball(args) => {
            let g = spec(&args.spec)?;
            let b = ball(&g, args.radius, args.limits.limits());
            let code = if b.partial {
                EXIT_RESOURCE_CAP
            } else {
                EXIT_OK
            };
            let stdout = if args.dot {
                b.to_dot(&g)
            } else {
                pretty(&json!({
                    "spec": b.spec,
                    "radius": b.radius,
                    "size": b.size(),
                    "sizes": b.sizes,
                    "partial": b.partial,
                    "representatives": b.representatives,
                }))
            };
            Ok(Outcome { stdout, code })
        }
        Command::Growth(args) => {
            let g = spec(&args.spec)?;
            let b = ball(&g, args.rmax, args.limits.limits());
            let code = if b.partial {
                EXIT_RESOURCE_CAP
            } else {
                EXIT_OK
            };
            let stdout = if args.csv {
                b.growth_csv()
            } else {
                pretty(&json!({ "spec": b.spec, "sizes": b.sizes, "partial": b.partial }))
            };
            Ok(Outcome { stdout, code })
        }
        Command::Metric(args) => {
            let (g1, g2) = (spec(&args.spec1)?, spec(&args.spec2)?);
            let m = metric(&g1, &g2, args.max_r);
            let cmp = balls_equal(&g1, &g2, args.max_r);
            Ok(Outcome::json(&json!({
                "spec1": g1.spec(),
                "spec2": g2.spec(),
                "max_r": args.max_r,
                "result": m,
                "balls_equal_at_max_r": cmp.equal,
            })))
        }
        Command::Distinguish(args) => {
            let (g1, g2) = (spec(&args.spec1)?, spec(&args.spec2)?);
            let w = find_distinguishing_word(&g1, &g2, args.max_len, args.max_words)?;
            let verdicts = w
                .as_ref()
                .map(|w| json!({ "spec1": g1.is_identity(w), "spec2": g2.is_identity(w) }));
            Ok(Outcome::json(&json!({
                "spec1": g1.spec(),
                "spec2": g2.spec(),
                "max_len": args.max_len,
                "witness": w,
                "length": w.as_ref().map(ReducedWord::len),
                "identity": verdicts,
            })))
        }
        Command::Construct(c) => construct(c),
        Command::Verify(args) => run_verify(&args),
    }
}

fn solve(args: &SolveArgs) -> Result<Outcome> {
    let g = spec(&args.spec)?;
    let w = parse_word(&args.word)?;
    let v = g.verdict(&w);
    Ok(Outcome::json(&json!({
        "word": args.word,
        "normal_form": w,
        "identity": v.identity,
        "depth_used": v.depth_used,
        "family": g.spec().family().to_string(),
        "oracle": g.spec().oracle(),
    })))
}

fn construct(c: ConstructCmd) -> Result<Outcome> {
    match c {
        ConstructCmd::Vn { y, n } => {
            let w = v_word(spine(y)?, n);
            Ok(Outcome::json(
                &json!({ "y": y.to_string(), "n": n, "word": w, "length": w.len() }),
            ))
        }
        ConstructCmd::V { y, path } => {
            let w = V_word(spine(y)?, &path)?;
            Ok(Outcome::json(&json!({
                "y": y.to_string(), "path": path, "index": v_index(&path)?, "word": w,
            })))
        }
        ConstructCmd::Wij {
            oracle,
            i,
            j,
            verify,
        } => {
            let o: Oracle = oracle.parse()?;
            let (si, sj) = (symbol(i)?, symbol(j)?);
            if !verify {
                let w = w_ij(&o, si, sj)?;
                return Ok(Outcome::json(
                    &json!({ "oracle": o, "pair": format!("{i}{j}"), "word": w, "length": w.len() }),
                ));
            }
            let (w, [beta, alpha, other]) = verify::wij_verdicts(&o, si, sj)?;
            let holds = beta && !alpha && !other;
            let l = si.third(sj).expect("distinct symbols");
            let name = |a, b| BetaPair::new(a, b).map(|p| format!("beta-{}", p.name()));
            Ok(Outcome {
                stdout: pretty(&json!({
                    "oracle": o,
                    "pair": format!("{i}{j}"),
                    "word": w,
                    "length": w.len(),
                    "identity": {
                        name(si, sj)?: beta,
                        "alpha": alpha,
                        name(si, l)?: other,
                    },
                    "contract_holds": holds,
                })),
                code: if holds { EXIT_OK } else { EXIT_CHECK_FAILED },
            })
        }
        ConstructCmd::Fmap { word } => {
            let w = parse_word(&word)?;
            Ok(Outcome::json(&json!({ "word": w, "image": f_map(&w) })))
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<Outcome> {
    let mut knobs = if args.quick {
        Knobs::quick()
    } else {
        Knobs::default()
    };
    if let Some(seed) = args.seed {
        knobs.seed = seed;
    }
    if let Some(n) = args.max_len {
        knobs.max_len = n;
    }
    if let Some(r) = args.radius {
        knobs.radius = r;
    }
    let reports = if args.suite == "all" {
        verify::run_all(&knobs)
    } else {
        vec![verify::run_suite(&args.suite, &knobs)?]
    };
    let passed = reports.iter().all(|r| r.passed());
    let stdout = if args.table {
        reports.iter().map(|r| r.table()).collect()
    } else {
        pretty(&json!({ "knobs": knobs, "passed": passed, "suites": reports }))
    };
    Ok(Outcome {
        stdout,
        code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

//! Command-line front end for the `wdpar` library.
//!
//! Exit codes: 0 on success or a true verdict, 1 on a false verdict, a
//! domain error or reported violations, 2 on usage and parse errors.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use wdpar::concrete::{graded_pieces, sample_filtration, GradedModule};
use wdpar::expr;
use wdpar::gl2::{self, GL2Kind};
use wdpar::harness::{self, PurityPredicate, RunConfig};
use wdpar::io::{self, envelope, module_to_json, spectrum_to_json};
use wdpar::rat::parse_rational;
use wdpar::spectrum::{self, WeightedSpectrum};
use wdpar::zeta::{self, ConjugateFamily, Perm};
use wdpar::{Error, Rational, ResidueCard, SSModule};

#[derive(Parser)]
#[command(name = "wdpar", version, about = "Exact Weil-Deligne parameter calculus")]
struct Cli {
    /// Residue field cardinality used for expression leaves.
    #[arg(long, global = true, default_value_t = 3)]
    q: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModuleInput {
    /// Module expression such as "sum(ind(1,0,1), ind(1/2,1/3,0))"; when
    /// absent a JSON module is read from stdin.
    #[arg(long)]
    expr: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a module expression to canonical form.
    Eval { expression: String },
    /// Test purity of weight j, directly and by counting.
    Purity {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[command(flatten)]
        input: ModuleInput,
    },
    /// Sample a stable filtration of the realized module and list its pieces.
    Filtration {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        steps: usize,
        #[command(flatten)]
        input: ModuleInput,
    },
    /// Eigenvalue multiplicities; with --weight also wm-purity and b(W, m).
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        #[command(flatten)]
        input: ModuleInput,
    },
    /// The pure module with a given spectrum (JSON spectrum on stdin, or the
    /// spectrum of --expr).
    Canonical {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        expr: Option<String>,
    },
    /// Local L-factor of a module.
    Lfactor {
        #[command(flatten)]
        input: ModuleInput,
    },
    /// Local GL(2) parameters.
    Gl2 {
        #[command(subcommand)]
        command: Gl2Command,
    },
    /// Tensor-induced parameters and their checks.
    Zeta {
        #[command(subcommand)]
        command: ZetaCommand,
    },
    /// Randomized harnesses.
    Fuzz {
        #[command(subcommand)]
        command: FuzzCommand,
    },
}

#[derive(Subcommand)]
enum Gl2Command {
    /// Unitary classification of a JSON parameter read from stdin.
    Classify,
    /// Which integers l, m survive the bound |(l − 2)/4| < bound.
    RamanujanDeduce {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, default_value = "1/5")]
        bound: String,
    },
    /// The integer weight forced inside the shifted open interval.
    Prop5 {
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        #[arg(long, default_value = "-1/2", allow_hyphen_values = true)]
        lo: String,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        hi: String,
    },
}

#[derive(Args)]
struct FamilyInput {
    /// A two-dimensional factor expression; repeat once per factor.
    #[arg(long = "factor", required = true)]
    factors: Vec<String>,
    /// Residue degrees, comma separated; all 1 when absent. Factor i is read
    /// over q^(L/f_i), L the lcm of the degrees.
    #[arg(long, value_delimiter = ',')]
    degrees: Vec<u32>,
}

#[derive(Subcommand)]
enum ZetaCommand {
    /// Tensor product of the restricted factors.
    BuildR {
        #[command(flatten)]
        family: FamilyInput,
    },
    /// Check the exterior-square descent lemma on two factors, or scan the
    /// whole grid.
    Lemma42 {
        #[arg(long)]
        scan: bool,
        #[arg(long = "factor")]
        factors: Vec<String>,
    },
    /// Factor-permutation operator for a permutation in cycle notation.
    Rb {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        r: usize,
    },
    /// L-factor of the tensor-induced parameter.
    Lfactor {
        #[command(flatten)]
        family: FamilyInput,
    },
}

#[derive(Subcommand)]
enum FuzzCommand {
    /// Purity of modules whose filtration pieces are pure.
    Prop3 {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        iters: usize,
        #[arg(long, default_value_t = 12)]
        cap: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        /// Use the deliberately broken purity predicate.
        #[arg(long)]
        mutant: bool,
    },
    /// Symbolic tensor products against the matrix construction.
    TensorOracle {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_t: u32,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
    },
}

/// What a command produced: the text and JSON renderings and whether the
/// verdict was positive.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn report(text: impl Into<String>, json: Value, ok: bool) -> Report {
    Report {
        text: text.into(),
        json,
        ok,
    }
}

fn stdin_text() -> Result<String, Error> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Error::InvalidArgument(format!("reading stdin: {e}")))?;
    Ok(s)
}

fn eval_expr(src: &str, q: ResidueCard) -> Result<SSModule, Error> {
    expr::eval(&expr::parse(src)?, q)
}

fn module(input: &ModuleInput, q: ResidueCard) -> Result<SSModule, Error> {
    match &input.expr {
        Some(src) => eval_expr(src, q),
        None => io::module_from_json(&stdin_text()?),
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Factor `i` is read over `q^{L/f_i}` with `L` the lcm of the degrees, so
/// every restriction lands over `q^L`.
fn family(input: &FamilyInput, q: ResidueCard) -> Result<ConjugateFamily, Error> {
    let degrees = if input.degrees.is_empty() {
        vec![1; input.factors.len()]
    } else {
        input.degrees.clone()
    };
    if degrees.len() != input.factors.len() {
        return Err(Error::InvalidArgument(format!(
            "{} factors but {} residue degrees",
            input.factors.len(),
            degrees.len()
        )));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidArgument("residue degrees must be positive".into()));
    }
    let l = degrees.iter().fold(1, |l, &f| l / gcd(l, f) * f);
    let factors = input
        .factors
        .iter()
        .zip(&degrees)
        .map(|(s, &f)| eval_expr(s, q.extend(l / f)?))
        .collect::<Result<Vec<_>, _>>()?;
    ConjugateFamily::new(factors, degrees)
}

fn weight(src: &str) -> Result<Rational, Error> {
    parse_rational(src)
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let q = ResidueCard::new(cli.q)?;
    Ok(match &cli.command {
        Command::Eval { expression } => {
            let a = eval_expr(expression, q)?;
            report(a.to_string(), json!({ "module": module_to_json(&a) }), true)
        }
        Command::Purity { weight: w, input } => {
            let j = weight(w)?;
            let a = module(input, q)?;
            let s = spectrum::spectrum_of(&a);
            let pure = a.is_pure(&j);
            let wm = spectrum::is_wm_pure(&s, &j);
            let counted = spectrum::purity_via_counting(&a, &j);
            let b = spectrum::b_spectrum(&s, &j);
            let mut text = format!(
                "pure of weight {j}: {pure}\nwm-pure spectrum: {wm}\nblocks: {}\nb(W, m): {b}\ncounting verdict: {counted}",
                a.block_count()
            );
            if let Some(bad) = a.impure_block(&j) {
                text.push_str(&format!("\nimpure block: {bad}"));
            }
            let value = json!({
                "weight": j.to_string(),
                "pure": pure,
                "wm_pure": wm,
                "blocks": a.block_count(),
                "b_spectrum": b,
                "counting": counted,
                "impure_block": a.impure_block(&j).map(|b| b.to_string()),
            });
            report(text, value, pure)
        }
        Command::Filtration { seed, steps, input } => {
            let a = module(input, q)?;
            let g = GradedModule::realize(&a);
            let filt = sample_filtration(&g, *seed, *steps);
            let pieces = graded_pieces(&g, &filt)?;
            let mut text = format!("module: {a}\nb: {}\n", g.b_of());
            let mut values = Vec::new();
            for (k, p) in pieces.iter().enumerate() {
                let ss = p.to_ss();
                text.push_str(&format!("piece {}: {ss} (b = {})\n", k + 1, p.b_of()));
                values.push(json!({ "module": module_to_json(&ss), "b": p.b_of() }));
            }
            let total: usize = pieces.iter().map(GradedModule::b_of).sum();
            text.push_str(&format!("sum of piece b: {total}"));
            report(
                text,
                json!({ "module": module_to_json(&a), "b": g.b_of(), "pieces": values }),
                true,
            )
        }
        Command::Spectrum { weight: w, input } => {
            let a = module(input, q)?;
            let s = spectrum::spectrum_of(&a);
            let mut text: Vec<String> = s
                .entries()
                .iter()
                .map(|(alpha, m)| format!("{alpha}: {m}"))
                .collect();
            let mut value = json!({ "spectrum": spectrum_to_json(&s) });
            let mut ok = true;
            if let Some(w) = w {
                let j = weight(w)?;
                ok = spectrum::is_wm_pure(&s, &j);
                let b = spectrum::b_spectrum(&s, &j);
                text.push(format!("wm-pure of weight {j}: {ok}"));
                text.push(format!("b(W, m): {b}"));
                value["wm_pure"] = json!(ok);
                value["b_spectrum"] = json!(b);
            }
            report(text.join("\n"), value, ok)
        }
        Command::Canonical { weight: w, expr } => {
            let j = weight(w)?;
            let s: WeightedSpectrum = match expr {
                Some(src) => spectrum::spectrum_of(&eval_expr(src, q)?),
                None => io::spectrum_from_json(&stdin_text()?)?,
            };
            let a = spectrum::canonical_module(&s, &j)?;
            report(a.to_string(), json!({ "module": module_to_json(&a) }), true)
        }
        Command::Lfactor { input } => {
            let a = module(input, q)?;
            let l = zeta::local_l_factor(&a);
            report(
                l.to_string(),
                json!({ "lfactor": l.to_string(), "degree": l.degree() }),
                true,
            )
        }
        Command::Gl2 { command } => run_gl2(command)?,
        Command::Zeta { command } => run_zeta(command, q)?,
        Command::Fuzz { command } => run_fuzz(command, q)?,
    })
}

fn run_gl2(command: &Gl2Command) -> Result<Report, Error> {
    Ok(match command {
        Gl2Command::Classify => {
            let p = io::gl2_from_json(&stdin_text()?)?;
            let kind = match &p.kind {
                GL2Kind::Supercuspidal { .. } => "supercuspidal",
                GL2Kind::SteinbergTwist { .. } => "steinberg",
                GL2Kind::PrincipalSeries { .. } => "principal_series",
            };
            let ram = gl2::is_ramanujan(&p);
            match gl2::classify_unitary(&p) {
                Ok(u) => report(
                    format!("{p}\nt: {}\npsi weight: {}\nramanujan: {ram}", u.t, u.psi_weight),
                    json!({
                        "kind": kind,
                        "unitary": true,
                        "t": u.t.to_string(),
                        "psi_weight": u.psi_weight.to_string(),
                        "ramanujan": ram,
                    }),
                    true,
                ),
                Err(Error::NonUnitary(why)) => report(
                    format!("{p}\nnot unitary: {why}"),
                    json!({ "kind": kind, "unitary": false, "reason": why }),
                    false,
                ),
                Err(e) => return Err(e),
            }
        }
        Gl2Command::RamanujanDeduce { l, m, bound } => {
            let d = gl2::ramanujan_deduce(*l, *m, &parse_rational(bound)?)?;
            report(
                format!("holds: {}\nadmissible: {:?}", d.holds, d.admissible),
                json!({ "holds": d.holds, "admissible": d.admissible }),
                d.holds,
            )
        }
        Gl2Command::Prop5 { i, lo, hi } => {
            let d = gl2::prop5_weight_deduce(*i, &parse_rational(lo)?, &parse_rational(hi)?)?;
            report(
                format!("twisted weight: {}\nw(Lambda): {}", d.twisted_weight, d.lambda_weight),
                json!({
                    "twisted_weight": d.twisted_weight,
                    "lambda_weight": d.lambda_weight.to_string(),
                }),
                true,
            )
        }
    })
}

fn run_zeta(command: &ZetaCommand, q: ResidueCard) -> Result<Report, Error> {
    Ok(match command {
        ZetaCommand::BuildR { family: f } => {
            let r = zeta::build_r(&family(f, q)?)?;
            let text = match r.purity_weight() {
                Some(j) => format!("{r}\npure of weight {j}"),
                None => format!("{r}\nnot pure"),
            };
            report(
                text,
                json!({
                    "module": module_to_json(&r),
                    "purity_weight": r.purity_weight().map(|j| j.to_string()),
                }),
                true,
            )
        }
        ZetaCommand::Lemma42 { scan, factors } => {
            if *scan {
                let s = zeta::lemma42_scan(q)?;
                let shown: Vec<String> = s
                    .violations
                    .iter()
                    .map(|(a, b)| format!("{a} ; {b}"))
                    .collect();
                report(
                    format!(
                        "pairs: {}\nhypotheses held: {}\nviolations: {}{}",
                        s.pairs,
                        s.hypotheses_held,
                        s.violations.len(),
                        shown.iter().map(|v| format!("\n  {v}")).collect::<String>()
                    ),
                    json!({
                        "pairs": s.pairs,
                        "hypotheses_held": s.hypotheses_held,
                        "violations": shown,
                    }),
                    s.violations.is_empty(),
                )
            } else {
                let [a, b] = factors.as_slice() else {
                    return Err(Error::InvalidArgument(
                        "give --scan or exactly two --factor expressions".into(),
                    ));
                };
                let c = zeta::lemma42_check(&eval_expr(a, q)?, &eval_expr(b, q)?)?;
                report(
                    format!("hypotheses: {}\nconclusion: {}", c.hypotheses_hold, c.conclusion_holds),
                    json!({
                        "hypotheses_hold": c.hypotheses_hold,
                        "conclusion_holds": c.conclusion_holds,
                    }),
                    !c.violated(),
                )
            }
        }
        ZetaCommand::Rb { perm, r } => {
            let p = Perm::parse_cycles(perm, *r)?;
            let m = zeta::rb_galois(&p);
            let rows: Vec<Vec<String>> = m
                .to_rows()
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect();
            report(m.to_string(), json!({ "perm": p.to_string(), "matrix": rows }), true)
        }
        ZetaCommand::Lfactor { family: f } => {
            let l = zeta::local_l_factor(&zeta::build_r(&family(f, q)?)?);
            report(
                l.to_string(),
                json!({ "lfactor": l.to_string(), "degree": l.degree() }),
                true,
            )
        }
    })
}

fn run_fuzz(command: &FuzzCommand, q: ResidueCard) -> Result<Report, Error> {
    Ok(match command {
        FuzzCommand::Prop3 {
            seed,
            iters,
            cap,
            weight: w,
            mutant,
        } => {
            let mut cfg = RunConfig::new(*seed, *iters, *cap)?.with_q(q);
            if let Some(w) = w {
                cfg = cfg.with_weight(weight(w)?);
            }
            let pred = if *mutant {
                PurityPredicate::Mutant
            } else {
                PurityPredicate::Correct
            };
            let r = harness::fuzz_prop3(&cfg, pred)?;
            let ok = r.violations == 0 && r.kernel_failures == 0;
            let text = format!(
                "iterations: {}\npure graded: {}\nviolations: {}\nkernel failures: {}{}",
                r.iterations,
                r.pure_graded,
                r.violations,
                r.kernel_failures,
                r.counterexamples
                    .iter()
                    .map(|c| format!("\n  {c}"))
                    .collect::<String>()
            );
            report(text, serde_json::to_value(&r).expect("report serializes"), ok)
        }
        FuzzCommand::TensorOracle { seed, max_t, pairs } => {
            let r = harness::fuzz_tensor_oracle(*seed, *max_t, *pairs, q)?;
            report(
                format!("cases: {}\nmismatches: {}", r.cases, r.mismatches),
                serde_json::to_value(&r).expect("report serializes"),
                r.mismatches == 0,
            )
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::InvalidArgument(_)
        | Error::InvalidPermutation(_)
        | Error::InvalidResidueCard(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", envelope(r.json));
            } else {
                println!("{}", r.text);
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(e) => {
            if cli.json {
                println!("{}", envelope(json!({ "error": e.to_string() })));
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

//! Randomized checks that run the symbolic layer against the concrete one.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::concrete::{graded_pieces, sample_filtration_with, GradedModule};
use crate::error::{Error, Result};
use crate::gen::{perturb, random_module, random_monomial, random_pure_module, random_weight};
use crate::io::module_to_json;
use crate::rat::{int, Rational};
use crate::wd::{Indecomposable, SSModule};
use crate::weil::ResidueCard;

/// Counterexamples kept in a report; the counts are always complete.
const KEEP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub iterations: usize,
    pub cap: usize,
    /// Weight the pure samples are drawn at; random per sample when absent.
    pub weight: Option<Rational>,
    pub q: ResidueCard,
}

impl RunConfig {
    pub fn new(seed: u64, iterations: usize, cap: usize) -> Result<Self> {
        if iterations == 0 {
            return Err(Error::InvalidArgument("iterations must be at least 1".into()));
        }
        if cap == 0 || cap > 64 {
            return Err(Error::InvalidArgument(format!("dimension cap {cap} is outside 1..=64")));
        }
        Ok(Self {
            seed,
            iterations,
            cap,
            weight: None,
            q: ResidueCard::new(3)?,
        })
    }

    pub fn with_weight(mut self, j: Rational) -> Self {
        self.weight = Some(j);
        self
    }

    pub fn with_q(mut self, q: ResidueCard) -> Self {
        self.q = q;
        self
    }
}

/// The purity test the harness applies to pieces and totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PurityPredicate {
    Correct,
    /// Compares every block against the length of the first block, the kind
    /// of slip that only shows up once blocks of different lengths meet.
    Mutant,
}

impl PurityPredicate {
    pub fn holds(self, a: &SSModule, j: &Rational) -> bool {
        match self {
            PurityPredicate::Correct => a.is_pure(j),
            PurityPredicate::Mutant => {
                let Some(first) = a.parts().keys().next() else {
                    return true;
                };
                let t0 = int(first.t as i64);
                a.parts().keys().all(|b| b.alpha.weight() == j + &t0)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop3Report {
    pub iterations: usize,
    /// Samples whose graded pieces are all pure of one common weight.
    pub pure_graded: usize,
    /// Pure-graded samples whose total module is not pure of that weight.
    pub violations: usize,
    /// Samples with `Σ dim ker Gr(N) < dim ker N`.
    pub kernel_failures: usize,
    pub counterexamples: Vec<Value>,
}

/// Draws a module for the filtration harness: mostly pure, some nearly
/// pure, some arbitrary.
fn prop3_module(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> SSModule {
    let j = cfg
        .weight
        .clone()
        .unwrap_or_else(|| random_weight(rng, -2, 2));
    let roll = rng.random_range(0..10);
    if roll < 5 {
        random_pure_module(rng, cfg.q, &j, cfg.cap)
    } else if roll < 8 {
        let a = random_pure_module(rng, cfg.q, &j, cfg.cap);
        perturb(rng, &a, cfg.cap)
    } else {
        random_module(rng, cfg.q, cfg.cap)
    }
}

pub fn fuzz_prop3(cfg: &RunConfig, pred: PurityPredicate) -> Result<Prop3Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = Prop3Report {
        iterations: cfg.iterations,
        pure_graded: 0,
        violations: 0,
        kernel_failures: 0,
        counterexamples: Vec::new(),
    };
    for i in 0..cfg.iterations {
        let a = prop3_module(&mut rng, cfg);
        let mut g = GradedModule::realize(&a);
        if rng.random_bool(0.5) {
            g = g.scramble(&mut rng);
        }
        let steps = rng.random_range(1..=4);
        let filt = sample_filtration_with(&g, &mut rng, steps);
        let pieces = graded_pieces(&g, &filt)?;

        let b_total = g.b_of();
        let b_pieces: usize = pieces.iter().map(GradedModule::b_of).sum();
        if b_pieces < b_total {
            report.kernel_failures += 1;
            if report.counterexamples.len() < KEEP {
                report.counterexamples.push(json!({
                    "iteration": i,
                    "kind": "kernel",
                    "module": module_to_json(&a),
                    "b_total": b_total,
                    "b_pieces": b_pieces,
                }));
            }
        }

        let total = g.to_ss();
        let graded: Vec<SSModule> = pieces.iter().map(GradedModule::to_ss).collect();
        let candidates: BTreeSet<Rational> = graded
            .iter()
            .flat_map(|p| p.parts().keys().map(Indecomposable::purity_weight))
            .collect();
        let mut counted = false;
        for j in &candidates {
            if !graded.iter().all(|p| pred.holds(p, j)) {
                continue;
            }
            if !counted {
                report.pure_graded += 1;
                counted = true;
            }
            if !pred.holds(&total, j) {
                report.violations += 1;
                if report.counterexamples.len() < KEEP {
                    report.counterexamples.push(json!({
                        "iteration": i,
                        "kind": "purity",
                        "weight": j.to_string(),
                        "module": module_to_json(&total),
                        "pieces": graded.iter().map(module_to_json).collect::<Vec<_>>(),
                    }));
                }
                break;
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub cases: usize,
    pub mismatches: usize,
    pub counterexamples: Vec<Value>,
}

/// Symbolic tensor product against the matrix one, compared on the block
/// decomposition and on the Jordan type of the assembled `N`.
pub fn tensor_oracle_case<R: Rng>(a: &SSModule, b: &SSModule, rng: &mut R) -> Result<bool> {
    let symbolic = a.tensor(b)?;
    let ga = GradedModule::realize(a).scramble(rng);
    let gb = GradedModule::realize(b);
    let concrete = ga.tensor(&gb)?;
    let mut sizes: Vec<usize> = symbolic.blocks().map(Indecomposable::dim).collect();
    sizes.sort_unstable_by(|x, y| y.cmp(x));
    Ok(concrete.to_ss() == symbolic && concrete.nilpotent_jordan_type() == sizes)
}

/// Every shape `V_{α,s} ⊗ V_{β,t}` with `s, t ≤ max_t`, `pairs` random
/// monomial pairs each.
pub fn fuzz_tensor_oracle(seed: u64, max_t: u32, pairs: usize, q: ResidueCard) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport {
        cases: 0,
        mismatches: 0,
        counterexamples: Vec::new(),
    };
    for s in 0..=max_t {
        for t in 0..=max_t {
            for _ in 0..pairs {
                let a = SSModule::block(q, random_monomial(&mut rng), s);
                let b = SSModule::block(q, random_monomial(&mut rng), t);
                report.cases += 1;
                if !tensor_oracle_case(&a, &b, &mut rng)? {
                    report.mismatches += 1;
                    if report.counterexamples.len() < KEEP {
                        report
                            .counterexamples
                            .push(json!({"left": module_to_json(&a), "right": module_to_json(&b)}));
                    }
                }
            }
        }
    }
    Ok(report)
}

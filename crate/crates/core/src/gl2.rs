//! Local parameters for `GL(2)` and the weight deductions built on them.
//!
//! Weights follow the Weil-number convention: a character of weight `w`
//! has Frobenius eigenvalue of absolute value `q^{w/2}`, so `|·|^t` has
//! weight `2t` up to sign.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{int, rat, to_i64, Rational};
use crate::wd::SSModule;
use crate::weil::{ResidueCard, WeilMonomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GL2Kind {
    /// Irreducible two-dimensional `Λ`, kept only through its weight.
    Supercuspidal { weight: Rational },
    /// `ψ ⊗ St`, whose parameter is `V_{q^{1/2}ψ,1}`.
    SteinbergTwist { psi: WeilMonomial },
    /// `V_{ψ1,0} ⊕ V_{ψ2,0}`.
    PrincipalSeries { psi1: WeilMonomial, psi2: WeilMonomial },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GL2Param {
    pub q: ResidueCard,
    pub kind: GL2Kind,
}

/// `t` is the complementary-series exponent (`0` when tempered) and
/// `psi_weight` the weight of the character left after removing `|·|^{±t}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitarityData {
    pub t: Rational,
    pub psi_weight: Rational,
}

impl GL2Param {
    pub fn supercuspidal(q: ResidueCard, weight: Rational) -> Self {
        Self {
            q,
            kind: GL2Kind::Supercuspidal { weight },
        }
    }

    pub fn steinberg(q: ResidueCard, psi: WeilMonomial) -> Self {
        Self {
            q,
            kind: GL2Kind::SteinbergTwist { psi },
        }
    }

    pub fn principal_series(q: ResidueCard, psi1: WeilMonomial, psi2: WeilMonomial) -> Self {
        Self {
            q,
            kind: GL2Kind::PrincipalSeries { psi1, psi2 },
        }
    }

    pub fn to_ss(&self) -> Result<SSModule> {
        match &self.kind {
            GL2Kind::Supercuspidal { .. } => Err(Error::NotSemistable(
                "supercuspidal parameters are irreducible and carry no monodromy blocks".into(),
            )),
            GL2Kind::SteinbergTwist { psi } => Ok(SSModule::block(
                self.q,
                psi.shift(&rat(1, 2)),
                1,
            )),
            GL2Kind::PrincipalSeries { psi1, psi2 } => SSModule::block(self.q, psi1.clone(), 0)
                .direct_sum(&SSModule::block(self.q, psi2.clone(), 0)),
        }
    }

    /// The central character, when it is known as a monomial.
    pub fn central_character(&self) -> Option<WeilMonomial> {
        match &self.kind {
            GL2Kind::Supercuspidal { .. } => None,
            GL2Kind::SteinbergTwist { psi } => Some(psi.pow(2)),
            GL2Kind::PrincipalSeries { psi1, psi2 } => Some(psi1 * psi2),
        }
    }

    pub fn central_weight(&self) -> Rational {
        match &self.kind {
            GL2Kind::Supercuspidal { weight } => weight * int(2),
            GL2Kind::SteinbergTwist { psi } => psi.weight() * int(2),
            GL2Kind::PrincipalSeries { psi1, psi2 } => psi1.weight() + psi2.weight(),
        }
    }

    pub fn twist(&self, chi: &WeilMonomial) -> Self {
        let kind = match &self.kind {
            GL2Kind::Supercuspidal { weight } => GL2Kind::Supercuspidal {
                weight: weight + chi.weight(),
            },
            GL2Kind::SteinbergTwist { psi } => GL2Kind::SteinbergTwist { psi: psi * chi },
            GL2Kind::PrincipalSeries { psi1, psi2 } => GL2Kind::PrincipalSeries {
                psi1: psi1 * chi,
                psi2: psi2 * chi,
            },
        };
        Self { q: self.q, kind }
    }
}

impl fmt::Display for GL2Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GL2Kind::Supercuspidal { weight } => write!(f, "supercuspidal(weight {weight})"),
            GL2Kind::SteinbergTwist { psi } => write!(f, "steinberg({psi})"),
            GL2Kind::PrincipalSeries { psi1, psi2 } => write!(f, "principal_series({psi1}, {psi2})"),
        }?;
        write!(f, " over q={}", self.q)
    }
}

pub fn classify_unitary(p: &GL2Param) -> Result<UnitarityData> {
    let central = p.central_weight();
    if !central.is_zero() {
        return Err(Error::NonUnitary(format!(
            "central character has weight {central}"
        )));
    }
    match &p.kind {
        GL2Kind::Supercuspidal { weight } => Ok(UnitarityData {
            t: int(0),
            psi_weight: weight.clone(),
        }),
        GL2Kind::SteinbergTwist { psi } => Ok(UnitarityData {
            t: int(0),
            psi_weight: psi.weight(),
        }),
        GL2Kind::PrincipalSeries { psi1, psi2 } => {
            let (w1, w2) = (psi1.weight(), psi2.weight());
            if w1 != -w2.clone() {
                return Err(Error::NonUnitary(format!(
                    "principal series weights {w1} and {w2} are not opposite"
                )));
            }
            let t = w1.abs() / int(2);
            if t >= rat(1, 2) {
                return Err(Error::NonUnitary(format!(
                    "complementary-series exponent {t} is not below 1/2"
                )));
            }
            Ok(UnitarityData {
                t,
                psi_weight: (w1 + w2) / int(2),
            })
        }
    }
}

/// Every constituent character has weight zero.
pub fn is_ramanujan(p: &GL2Param) -> bool {
    match &p.kind {
        GL2Kind::Supercuspidal { weight } => weight.is_zero(),
        GL2Kind::SteinbergTwist { psi } => psi.weight().is_zero(),
        GL2Kind::PrincipalSeries { psi1, psi2 } => {
            psi1.weight().is_zero() && psi2.weight().is_zero()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop5Deduction {
    /// The integer weight of `Λ ⊗ |·|^{-i/2}`.
    pub twisted_weight: i64,
    /// `w(Λ)` itself.
    pub lambda_weight: Rational,
}

/// The twisted weight `w(Λ) + i` is an integer and `w(Λ)` lies in the open
/// interval `(lo, hi)`, so the twisted weight is the integer in
/// `(lo + i, hi + i)`.
pub fn prop5_weight_deduce(i: i64, lo: &Rational, hi: &Rational) -> Result<Prop5Deduction> {
    if hi - lo > int(1) {
        return Err(Error::IntervalTooLong {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let (a, b) = (lo + int(i), hi + int(i));
    let first = a.floor() + int(1);
    if first >= b {
        return Err(Error::EmptyIntegerInterval {
            lo: a.to_string(),
            hi: b.to_string(),
        });
    }
    let n = to_i64(&first).ok_or_else(|| Error::InvalidArgument("weight out of range".into()))?;
    Ok(Prop5Deduction {
        twisted_weight: n,
        lambda_weight: int(n - i),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamanujanDeduction {
    pub holds: bool,
    /// Every integer `n` with `|n − 2|/4 < bound`.
    pub admissible: Vec<i64>,
}

/// With `|α| = q^{l/4}`, unitarity of `π ⊗ |·|^{1/2}` puts the exponent
/// `(l − 2)/4` strictly inside `(−bound, bound)`; likewise for `m`.
pub fn ramanujan_deduce(l: i64, m: i64, bound: &Rational) -> Result<RamanujanDeduction> {
    if !bound.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "bound exponent must be positive, got {bound}"
        )));
    }
    let radius = bound * int(4);
    let admits = |n: i64| (int(n) - int(2)).abs() < radius;
    let reach = to_i64(&radius.ceil())
        .ok_or_else(|| Error::InvalidArgument(format!("bound {bound} is too large")))?;
    let admissible = (2 - reach..=2 + reach).filter(|&n| admits(n)).collect();
    Ok(RamanujanDeduction {
        holds: admits(l) && admits(m),
        admissible,
    })
}

/// The weight of `α_v²` over `q` from that of `α_w² = (α_v²)^f` over `q^f`.
/// Weights do not depend on the base, so this is the identity once `f` is
/// checked.
pub fn weil_square_descent(alpha_sq_weight: &Rational, f: u32) -> Result<Rational> {
    if f == 0 {
        return Err(Error::InvalidArgument("residue degree must be positive".into()));
    }
    Ok(alpha_sq_weight.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorBookkeeping {
    pub a: WeilMonomial,
    pub b: WeilMonomial,
    pub c: WeilMonomial,
    pub d: WeilMonomial,
    /// `γδ = ζ·q_w`, i.e. `weight(γδ) = 2`.
    pub product_relation_ok: bool,
    /// `ab·(γδ)⁻¹ = α²`.
    pub alpha_sq: WeilMonomial,
    /// `cd·(γδ)⁻¹ = β²`.
    pub beta_sq: WeilMonomial,
}

/// Frobenius eigenvalues on the tensor product of `{α, β}` and `{γ, δ}`.
pub fn tensor_eigenvalue_bookkeeping(
    alpha: &WeilMonomial,
    beta: &WeilMonomial,
    gamma: &WeilMonomial,
    delta: &WeilMonomial,
) -> TensorBookkeeping {
    let a = alpha * gamma;
    let b = alpha * delta;
    let c = beta * gamma;
    let d = beta * delta;
    let gd = gamma * delta;
    let alpha_sq = &(&a * &b) / &gd;
    let beta_sq = &(&c * &d) / &gd;
    TensorBookkeeping {
        product_relation_ok: gd.weight() == int(2),
        a,
        b,
        c,
        d,
        alpha_sq,
        beta_sq,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutcome {
    pub bookkeeping: TensorBookkeeping,
    pub l: i64,
    pub m: i64,
    pub deduction: RamanujanDeduction,
    /// Purity weights `l/2` and `m/2` of `α_v` and `β_v`.
    pub weights: (Rational, Rational),
}

/// Eigenvalues over `q_w` to the purity of `α_v` and `β_v`: recover `α²` and
/// `β²` from the tensor eigenvalues, descend them along `f`, read off the
/// integers `l` and `m`, then apply the Ramanujan bound.
pub fn ramanujan_pipeline(
    alpha: &WeilMonomial,
    beta: &WeilMonomial,
    gamma: &WeilMonomial,
    delta: &WeilMonomial,
    f: u32,
    bound: &Rational,
) -> Result<PipelineOutcome> {
    let bk = tensor_eigenvalue_bookkeeping(alpha, beta, gamma, delta);
    if !bk.product_relation_ok {
        return Err(Error::InvalidArgument(format!(
            "gamma*delta has weight {}, expected 2",
            (gamma * delta).weight()
        )));
    }
    let integral = |w: Rational| {
        to_i64(&w).ok_or_else(|| Error::NonIntegralWeight(w.to_string()))
    };
    let l = integral(weil_square_descent(&bk.alpha_sq.weight(), f)?)?;
    let m = integral(weil_square_descent(&bk.beta_sq.weight(), f)?)?;
    let deduction = ramanujan_deduce(l, m, bound)?;
    let half = |n: i64| {
        if n.is_even() {
            int(n / 2)
        } else {
            rat(n, 2)
        }
    };
    Ok(PipelineOutcome {
        bookkeeping: bk,
        l,
        m,
        deduction,
        weights: (half(l), half(m)),
    })
}

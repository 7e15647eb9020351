//! Weighted spectra `(W, m)` and the counting criterion for purity.
//!
//! For a weight `j` and an eigenvalue `α` put `s_α = weight(α) − j`. A
//! spectrum is wm-pure of weight `j` when
//!
//! 1. `m(q⁻¹α) ≥ m(α)` whenever `weight(α) > j`,
//! 2. `m(α) = m(q^{-s_α}α)` for every `α`,
//! 3. every `s_α` is an integer.
//!
//! Condition 3 is what makes the reflection `α ↦ q^{-s_α}α` stay inside the
//! chain of `α`; with half-integral weights it is not implied by 1 and 2.
//! Wm-pure spectra are exactly the spectra of pure modules, and
//! [`canonical_module`] builds that module as `⊕_{α∈W⁺} V_{α,s_α}^{δ(α)}`.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rat::{int, to_i64, Rational};
use crate::wd::{Indecomposable, SSModule};
use crate::weil::{ResidueCard, WeilMonomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedSpectrum {
    q: ResidueCard,
    m: BTreeMap<WeilMonomial, usize>,
}

impl WeightedSpectrum {
    pub fn new(q: ResidueCard, entries: impl IntoIterator<Item = (WeilMonomial, usize)>) -> Self {
        let mut m = BTreeMap::new();
        for (a, k) in entries {
            if k > 0 {
                *m.entry(a).or_insert(0) += k;
            }
        }
        Self { q, m }
    }

    pub fn q(&self) -> ResidueCard {
        self.q
    }

    pub fn entries(&self) -> &BTreeMap<WeilMonomial, usize> {
        &self.m
    }

    /// `m(α)`, zero off the support.
    pub fn mult(&self, a: &WeilMonomial) -> usize {
        self.m.get(a).copied().unwrap_or(0)
    }

    /// Total multiplicity; the dimension of any module realizing it.
    pub fn mass(&self) -> usize {
        self.m.values().sum()
    }

    /// `W⁺ = {α : weight(α) ≥ j}`.
    pub fn upper(&self, j: &Rational) -> impl Iterator<Item = &WeilMonomial> {
        let j = j.clone();
        self.m.keys().filter(move |a| a.weight() >= j)
    }
}

/// Each block `(α, t)` contributes one to `α, q⁻¹α, …, q⁻ᵗα`.
pub fn spectrum_of(a: &SSModule) -> WeightedSpectrum {
    WeightedSpectrum {
        q: a.q(),
        m: a.eigenvalues(),
    }
}

fn s_alpha(a: &WeilMonomial, j: &Rational) -> Rational {
    a.weight() - j
}

/// The first violated condition, with its witness.
fn wm_violation(s: &WeightedSpectrum, j: &Rational) -> Option<(&'static str, WeilMonomial)> {
    for (a, &k) in &s.m {
        let sa = s_alpha(a, j);
        if to_i64(&sa).is_none() {
            return Some(("(iii) integral s_alpha", a.clone()));
        }
        if sa.is_positive() && s.mult(&a.shift(&int(-1))) < k {
            return Some(("(i) m(q^-1 alpha) >= m(alpha)", a.clone()));
        }
        if s.mult(&a.shift(&-sa)) != k {
            return Some(("(ii) m(alpha) = m(q^-s alpha)", a.clone()));
        }
    }
    None
}

pub fn is_wm_pure(s: &WeightedSpectrum, j: &Rational) -> bool {
    wm_violation(s, j).is_none()
}

/// `δ(α) = m(α) − m(qα)`.
pub fn delta(s: &WeightedSpectrum, a: &WeilMonomial) -> i64 {
    s.mult(a) as i64 - s.mult(&a.shift(&int(1))) as i64
}

/// `b(W, m) = Σ_{α∈W⁺} δ(α)`.
pub fn b_spectrum(s: &WeightedSpectrum, j: &Rational) -> i64 {
    s.upper(j).map(|a| delta(s, a)).sum()
}

/// The pure module of weight `j` with spectrum `s`.
pub fn canonical_module(s: &WeightedSpectrum, j: &Rational) -> Result<SSModule> {
    if let Some((condition, witness)) = wm_violation(s, j) {
        return Err(Error::NotWmPure {
            weight: j.to_string(),
            condition,
            witness: witness.to_string(),
        });
    }
    let mut out = SSModule::zero(s.q);
    for a in s.upper(j) {
        let d = delta(s, a);
        // Wm-purity forces δ ≥ 0 on W⁺ with integral, non-negative s_α.
        let t = to_i64(&s_alpha(a, j)).expect("checked integral");
        debug_assert!(d >= 0 && t >= 0);
        if d > 0 {
            out.add_block(Indecomposable::new(a.clone(), t as u32), d as usize);
        }
    }
    Ok(out)
}

/// The least possible `dim ker Nᵏ` over modules with spectrum `s`: the map
/// `U_α → U_{q^{-k}α}` factors through every eigenspace in between, so its
/// rank is at most the smallest multiplicity on that stretch of the chain.
/// For `k = 1` and a wm-pure spectrum this is `b(W, m)`.
pub fn kernel_floor(s: &WeightedSpectrum, k: u32) -> usize {
    let rank_cap: usize = s
        .m
        .iter()
        .map(|(a, &top)| {
            (1..=k as i64)
                .map(|i| s.mult(&a.shift(&int(-i))))
                .fold(top, usize::min)
        })
        .sum();
    s.mass() - rank_cap
}

/// `dim ker Nᵏ`: a block `V_{α,t}` contributes `min(t + 1, k)`.
pub fn kernel_dim(a: &SSModule, k: u32) -> usize {
    a.parts()
        .iter()
        .map(|(b, &n)| n * (b.t + 1).min(k) as usize)
        .sum()
}

/// Purity by counting. The spectrum must be wm-pure of weight `j`, the block
/// count must equal `b(W, m)`, and every power `Nᵏ` must reach its kernel
/// floor. The block count alone does not decide purity: `V_{qβ,1} ⊕ V_{β,1}`
/// with `weight(β) = j` has two blocks and `b = 2`, yet is not pure.
pub fn purity_via_counting(a: &SSModule, j: &Rational) -> bool {
    let s = spectrum_of(a);
    if !is_wm_pure(&s, j) || a.block_count() as i64 != b_spectrum(&s, j) {
        return false;
    }
    let longest = a.parts().keys().map(|b| b.t + 1).max().unwrap_or(0);
    (2..=longest).all(|k| kernel_dim(a, k) == kernel_floor(&s, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn q() -> ResidueCard {
        ResidueCard::new(4).unwrap()
    }

    fn mono(e: i64) -> WeilMonomial {
        WeilMonomial::new(int(e), rat(1, 6))
    }

    fn spec(entries: &[(i64, usize)]) -> WeightedSpectrum {
        WeightedSpectrum::new(q(), entries.iter().map(|&(e, k)| (mono(e), k)))
    }

    #[test]
    fn spectrum_examples() {
        let v1 = SSModule::block(q(), mono(1), 1);
        assert_eq!(spectrum_of(&v1), spec(&[(1, 1), (0, 1)]));
        let v = v1.direct_sum(&SSModule::block(q(), mono(1), 0)).unwrap();
        assert_eq!(spectrum_of(&v), spec(&[(1, 2), (0, 1)]));
        assert_eq!(spectrum_of(&v).mass(), v.dim());
    }

    #[test]
    fn wm_purity_examples() {
        // α = mono(1) has weight 2.
        assert!(is_wm_pure(&spec(&[(1, 1), (0, 1)]), &int(1)));
        assert!(!is_wm_pure(&spec(&[(1, 2), (0, 1)]), &int(1)));
        assert!(is_wm_pure(&spec(&[]), &int(1)));
        assert!(is_wm_pure(&spec(&[(1, 1), (0, 1), (-1, 1)]), &int(0)));
        // Symmetric about j, so only condition (i) fails.
        assert!(!is_wm_pure(&spec(&[(1, 2), (0, 1), (-1, 2)]), &int(0)));
    }

    #[test]
    fn half_integral_reflection_is_not_wm_pure() {
        // Weights j+1/2, j-3/2 in one chain and j+3/2, j-1/2 in the other:
        // conditions (i) and (ii) both hold but no pure module exists.
        let half = |e: Rational| WeilMonomial::new(e, int(0));
        let s = WeightedSpectrum::new(
            q(),
            [
                (half(rat(1, 4)), 1),
                (half(rat(-3, 4)), 1),
                (half(rat(3, 4)), 1),
                (half(rat(-1, 4)), 1),
            ],
        );
        assert!(!is_wm_pure(&s, &int(0)));
        assert!(canonical_module(&s, &int(0)).is_err());
    }

    #[test]
    fn delta_examples() {
        let s = spec(&[(1, 1), (0, 1)]);
        assert_eq!(delta(&s, &mono(1)), 1);
        assert_eq!(delta(&s, &mono(0)), 0);
        assert_eq!(delta(&spec(&[(3, 4)]), &mono(3)), 4);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            canonical_module(&spec(&[(1, 1), (0, 1)]), &int(1)).unwrap(),
            SSModule::block(q(), mono(1), 1)
        );
        let beta = WeilMonomial::new(rat(3, 4), int(0));
        assert_eq!(
            canonical_module(&WeightedSpectrum::new(q(), [(beta.clone(), 1)]), &rat(3, 2)).unwrap(),
            SSModule::block(q(), beta, 0)
        );
        let err = canonical_module(&spec(&[(1, 2), (0, 1)]), &int(1)).unwrap_err();
        assert!(matches!(err, Error::NotWmPure { .. }));
        let p = SSModule::from_blocks(
            q(),
            [
                (Indecomposable::new(mono(2), 2), 2),
                (Indecomposable::new(mono(1), 0), 1),
                (Indecomposable::new(mono(3), 4), 1),
            ],
        );
        assert!(p.is_pure(&int(2)));
        assert_eq!(canonical_module(&spectrum_of(&p), &int(2)).unwrap(), p);
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_spectrum(&spec(&[(1, 1), (0, 1)]), &int(1)), 1);
        // Two eigenvalues above j in unrelated chains: each is its own run.
        let s = WeightedSpectrum::new(
            q(),
            [
                (WeilMonomial::new(int(2), int(0)), 1),
                (WeilMonomial::new(int(3), rat(1, 2)), 1),
            ],
        );
        assert_eq!(b_spectrum(&s, &int(1)), 2);
        let p = SSModule::from_blocks(
            q(),
            [
                (Indecomposable::new(mono(2), 2), 2),
                (Indecomposable::new(mono(1), 0), 1),
            ],
        );
        assert_eq!(b_spectrum(&spectrum_of(&p), &int(2)), p.block_count() as i64);
    }

    #[test]
    fn counting_examples() {
        assert!(purity_via_counting(&SSModule::block(q(), mono(1), 1), &int(1)));
        let split = SSModule::block(q(), mono(1), 0)
            .direct_sum(&SSModule::block(q(), mono(0), 0))
            .unwrap();
        assert!(!purity_via_counting(&split, &int(1)));
        assert_eq!(split.block_count(), 2);
        assert_eq!(b_spectrum(&spectrum_of(&split), &int(1)), 1);
    }

    #[test]
    fn block_count_alone_misses_impurity() {
        let beta = mono(0);
        let v = SSModule::from_blocks(
            q(),
            [
                (Indecomposable::new(mono(1), 1), 1),
                (Indecomposable::new(beta.clone(), 1), 1),
            ],
        );
        let j = beta.weight();
        let s = spectrum_of(&v);
        assert!(is_wm_pure(&s, &j));
        assert!(!v.is_pure(&j));
        assert_eq!(v.block_count() as i64, b_spectrum(&s, &j));
        assert_eq!(kernel_dim(&v, 2), 4);
        assert_eq!(kernel_floor(&s, 2), 3);
        assert!(!purity_via_counting(&v, &j));
        let pure = canonical_module(&s, &j).unwrap();
        assert!(purity_via_counting(&pure, &j));
        assert_eq!(kernel_dim(&pure, 2), 3);
    }

    #[test]
    fn kernel_floor_matches_b_on_wm_pure() {
        let s = spec(&[(1, 1), (0, 3), (-1, 1)]);
        assert!(is_wm_pure(&s, &int(0)));
        assert_eq!(kernel_floor(&s, 1) as i64, b_spectrum(&s, &int(0)));
    }
}

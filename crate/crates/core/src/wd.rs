//! Frobenius-semisimple semistable Weil-Deligne modules, symbolically.
//!
//! A module is a multiset of indecomposables `V_{α,t}`: Frobenius acts on
//! `C^{t+1}` by `Diag(α, q⁻¹α, …, q⁻ᵗα)` and `N` is the single Jordan chain
//! moving down that list. `α` is always the *top* eigenvalue, and a block is
//! pure of weight `j` exactly when `weight(α) = j + t`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::rat::{int, Rational};
use crate::weil::{ResidueCard, WeilMonomial};

/// `V_{α,t}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Indecomposable {
    pub alpha: WeilMonomial,
    pub t: u32,
}

impl Indecomposable {
    pub fn new(alpha: WeilMonomial, t: u32) -> Self {
        Self { alpha, t }
    }

    pub fn dim(&self) -> usize {
        self.t as usize + 1
    }

    /// `α, q⁻¹α, …, q⁻ᵗα`, top first.
    pub fn eigenvalues(&self) -> impl Iterator<Item = WeilMonomial> + '_ {
        (0..=self.t).map(move |i| self.alpha.shift(&int(-(i as i64))))
    }

    /// The bottom eigenvalue `q⁻ᵗα`, which spans `ker N`.
    pub fn bottom(&self) -> WeilMonomial {
        self.alpha.shift(&int(-(self.t as i64)))
    }

    pub fn is_pure(&self, j: &Rational) -> bool {
        self.alpha.weight() == j + int(self.t as i64)
    }

    /// The unique weight this block is pure of.
    pub fn purity_weight(&self) -> Rational {
        self.alpha.weight() - int(self.t as i64)
    }
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({}, t={})", self.alpha, self.t)
    }
}

/// A semistable module in canonical form.
///
/// Parts are kept in a sorted map from block to multiplicity, so two modules
/// are isomorphic exactly when they compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SSModule {
    q: ResidueCard,
    parts: BTreeMap<Indecomposable, usize>,
}

impl SSModule {
    pub fn zero(q: ResidueCard) -> Self {
        Self {
            q,
            parts: BTreeMap::new(),
        }
    }

    pub fn block(q: ResidueCard, alpha: WeilMonomial, t: u32) -> Self {
        Self::from_blocks(q, [(Indecomposable::new(alpha, t), 1)])
    }

    pub fn from_blocks(
        q: ResidueCard,
        blocks: impl IntoIterator<Item = (Indecomposable, usize)>,
    ) -> Self {
        let mut m = Self::zero(q);
        for (b, k) in blocks {
            m.add_block(b, k);
        }
        m
    }

    pub fn add_block(&mut self, b: Indecomposable, mult: usize) {
        if mult > 0 {
            *self.parts.entry(b).or_insert(0) += mult;
        }
    }

    pub fn q(&self) -> ResidueCard {
        self.q
    }

    pub fn parts(&self) -> &BTreeMap<Indecomposable, usize> {
        &self.parts
    }

    /// Blocks with multiplicity, expanded.
    pub fn blocks(&self) -> impl Iterator<Item = &Indecomposable> {
        self.parts
            .iter()
            .flat_map(|(b, &k)| std::iter::repeat_n(b, k))
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(|(b, k)| b.dim() * k).sum()
    }

    /// Number of indecomposable summands, `dim ker N`.
    pub fn block_count(&self) -> usize {
        self.parts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Eigenvalue multiset of Frobenius.
    pub fn eigenvalues(&self) -> BTreeMap<WeilMonomial, usize> {
        let mut out = BTreeMap::new();
        for (b, &k) in &self.parts {
            for a in b.eigenvalues() {
                *out.entry(a).or_insert(0) += k;
            }
        }
        out
    }

    fn map_blocks(&self, q: ResidueCard, f: impl Fn(&Indecomposable) -> Indecomposable) -> Self {
        Self::from_blocks(q, self.parts.iter().map(|(b, &k)| (f(b), k)))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.q.ensure_same(other.q)?;
        let mut out = self.clone();
        for (b, &k) in &other.parts {
            out.add_block(b.clone(), k);
        }
        Ok(out)
    }

    /// Bilinear extension of
    /// `V_{α,s} ⊗ V_{β,t} = ⊕_{k=0}^{min(s,t)} V_{q^{-k}αβ, s+t-2k}`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.q.ensure_same(other.q)?;
        let mut out = Self::zero(self.q);
        for (a, &ka) in &self.parts {
            for (b, &kb) in &other.parts {
                let ab = &a.alpha * &b.alpha;
                for k in 0..=a.t.min(b.t) {
                    out.add_block(
                        Indecomposable::new(ab.shift(&int(-(k as i64))), a.t + b.t - 2 * k),
                        ka * kb,
                    );
                }
            }
        }
        Ok(out)
    }

    /// Contragredient: `V_{α,t} ↦ V_{qᵗα⁻¹,t}`.
    pub fn dual(&self) -> Self {
        self.map_blocks(self.q, |b| {
            Indecomposable::new(b.alpha.inv().shift(&int(b.t as i64)), b.t)
        })
    }

    /// Tate twist by `m`: every eigenvalue is multiplied by `q^{-m}`.
    pub fn tate_twist(&self, m: i64) -> Self {
        self.map_blocks(self.q, |b| Indecomposable::new(b.alpha.shift(&int(-m)), b.t))
    }

    /// Multiplies every eigenvalue by `chi` (twist by an unramified character).
    pub fn twist_by(&self, chi: &WeilMonomial) -> Self {
        self.map_blocks(self.q, |b| Indecomposable::new(&b.alpha * chi, b.t))
    }

    /// Restriction to the extension of residue degree `f`: Frobenius becomes
    /// `Φ^f` and `q` becomes `q^f`.
    pub fn restrict(&self, f: u32) -> Result<Self> {
        if f == 0 {
            return Err(Error::InvalidArgument("residue degree must be positive".into()));
        }
        let q = self.q.extend(f)?;
        let fr = int(f as i64);
        Ok(self.map_blocks(q, |b| {
            Indecomposable::new(
                WeilMonomial::new(b.alpha.e().clone(), b.alpha.zeta() * &fr),
                b.t,
            )
        }))
    }

    /// `Λ²` of a 2-dimensional module.
    pub fn exterior_square_2dim(&self) -> Result<Self> {
        if self.dim() != 2 {
            return Err(Error::Dimension {
                expected: 2,
                found: self.dim(),
            });
        }
        let det = self.determinant();
        Ok(Self::block(self.q, det, 0))
    }

    /// Product of all Frobenius eigenvalues.
    pub fn determinant(&self) -> WeilMonomial {
        self.eigenvalues()
            .iter()
            .fold(WeilMonomial::one(), |acc, (a, &k)| &acc * &a.pow(k as i64))
    }

    /// Every block satisfies `weight(α) = j + t`.
    pub fn is_pure(&self, j: &Rational) -> bool {
        self.parts.keys().all(|b| b.is_pure(j))
    }

    /// The first block that is not pure of weight `j`.
    pub fn impure_block(&self, j: &Rational) -> Option<&Indecomposable> {
        self.parts.keys().find(|b| !b.is_pure(j))
    }

    /// The weight `j` the module is pure of, if any (`None` for the zero
    /// module, which is pure of every weight).
    pub fn purity_weight(&self) -> Option<Rational> {
        let j = self.parts.keys().next()?.purity_weight();
        self.is_pure(&j).then_some(j)
    }

    /// Monodromy weight grading of a module pure of weight `j`: block
    /// `(α, t)` contributes one dimension at each of `j+t, j+t-2, …, j-t`.
    pub fn weight_filtration(&self, j: &Rational) -> Result<BTreeMap<Rational, usize>> {
        if let Some(b) = self.impure_block(j) {
            return Err(Error::NotPure {
                block: b.to_string(),
                weight: j.to_string(),
            });
        }
        let mut out = BTreeMap::new();
        for (b, &k) in &self.parts {
            for a in b.eigenvalues() {
                *out.entry(a.weight()).or_insert(0) += k;
            }
        }
        Ok(out)
    }

    /// Whether `det` has weight `j·dim`.
    pub fn det_weight_check(&self, j: &Rational) -> bool {
        self.determinant().weight() == j * int(self.dim() as i64)
    }

    /// Mean eigenvalue weight; equals `j` for a module pure of weight `j`.
    pub fn mean_weight(&self) -> Option<Rational> {
        let d = self.dim();
        (d > 0).then(|| self.determinant().weight() / int(d as i64))
    }
}

impl fmt::Display for SSModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, &k)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if k.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{k}*{b}")?;
            }
        }
        Ok(())
    }
}

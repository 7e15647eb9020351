//! Tensor-induced parameters `R = ⊗ᵢ restrict(Vᵢ, fᵢ)`, the permutation
//! operators `r_B`, the exterior-square descent lemma and local L-factors.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rat::{int, rat, Rational};
use crate::wd::SSModule;
use crate::weil::{ResidueCard, WeilMonomial};

/// `r` two-dimensional factors and the residue degrees applied to them
/// before tensoring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateFamily {
    factors: Vec<SSModule>,
    residue_degrees: Vec<u32>,
}

impl ConjugateFamily {
    pub fn new(factors: Vec<SSModule>, residue_degrees: Vec<u32>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("a family needs at least one factor".into()));
        }
        if factors.len() != residue_degrees.len() {
            return Err(Error::Dimension {
                expected: factors.len(),
                found: residue_degrees.len(),
            });
        }
        for v in &factors {
            if v.dim() != 2 {
                return Err(Error::Dimension {
                    expected: 2,
                    found: v.dim(),
                });
            }
        }
        if let Some(&f) = residue_degrees.iter().find(|&&f| f == 0) {
            return Err(Error::InvalidArgument(format!("residue degree {f} is not positive")));
        }
        let q = factors[0].q().extend(residue_degrees[0])?;
        for (v, &f) in factors.iter().zip(&residue_degrees) {
            q.ensure_same(v.q().extend(f)?)?;
        }
        Ok(Self {
            factors,
            residue_degrees,
        })
    }

    /// All factors over one `q`, nothing restricted.
    pub fn unramified(factors: Vec<SSModule>) -> Result<Self> {
        let n = factors.len();
        Self::new(factors, vec![1; n])
    }

    pub fn r(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[SSModule] {
        &self.factors
    }

    pub fn residue_degrees(&self) -> &[u32] {
        &self.residue_degrees
    }
}

pub fn build_r(fam: &ConjugateFamily) -> Result<SSModule> {
    let mut pieces = fam
        .factors
        .iter()
        .zip(&fam.residue_degrees)
        .map(|(v, &f)| v.restrict(f));
    let first = pieces.next().expect("families are non-empty")?;
    pieces.try_fold(first, |acc, v| acc.tensor(&v?))
}

/// A module of dimension `2^r` with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorParameter {
    module: SSModule,
    multiplicity: usize,
}

impl TensorParameter {
    pub fn new(module: SSModule, multiplicity: usize) -> Result<Self> {
        if !module.dim().is_power_of_two() || module.dim() < 2 {
            return Err(Error::InvalidModule(format!(
                "tensor parameter has dimension {}, not a power of two",
                module.dim()
            )));
        }
        if multiplicity == 0 {
            return Err(Error::InvalidArgument("multiplicity must be positive".into()));
        }
        Ok(Self {
            module,
            multiplicity,
        })
    }

    pub fn from_family(fam: &ConjugateFamily, multiplicity: usize) -> Result<Self> {
        Self::new(build_r(fam)?, multiplicity)
    }

    pub fn module(&self) -> &SSModule {
        &self.module
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// `module^{⊕m}`.
    pub fn total(&self) -> SSModule {
        let mut out = SSModule::zero(self.module.q());
        for (b, &n) in self.module.parts() {
            out.add_block(b.clone(), n * self.multiplicity);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma42 {
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
}

impl Lemma42 {
    pub fn violated(&self) -> bool {
        self.hypotheses_hold && !self.conclusion_holds
    }
}

/// Hypotheses: `V₁ ⊗ V₂`, `Λ²V₁` and `Λ²V₂` pure of weight 2. Conclusion:
/// `V₁` and `V₂` pure of weight 1.
pub fn lemma42_check(v1: &SSModule, v2: &SSModule) -> Result<Lemma42> {
    for v in [v1, v2] {
        if v.dim() != 2 {
            return Err(Error::Dimension {
                expected: 2,
                found: v.dim(),
            });
        }
    }
    let two = int(2);
    let hypotheses_hold = v1.tensor(v2)?.is_pure(&two)
        && v1.exterior_square_2dim()?.is_pure(&two)
        && v2.exterior_square_2dim()?.is_pure(&two);
    let one = int(1);
    Ok(Lemma42 {
        hypotheses_hold,
        conclusion_holds: v1.is_pure(&one) && v2.is_pure(&one),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma42Scan {
    pub pairs: usize,
    pub hypotheses_held: usize,
    pub violations: Vec<(SSModule, SSModule)>,
}

/// Every two-dimensional module with `ζ = 0`, exponents in
/// `{−2, −3/2, …, 3}` and blocks of length at most 2: `V_{α,1}` and
/// `V_{α,0} ⊕ V_{β,0}`.
pub fn lemma42_grid(q: ResidueCard) -> Vec<SSModule> {
    let exps: Vec<Rational> = (-4..=6).map(|k| rat(k, 2)).collect();
    let mono = |e: &Rational| WeilMonomial::q_power(e.clone());
    let mut out: Vec<SSModule> = exps.iter().map(|e| SSModule::block(q, mono(e), 1)).collect();
    for (i, a) in exps.iter().enumerate() {
        for b in &exps[i..] {
            let v = SSModule::block(q, mono(a), 0)
                .direct_sum(&SSModule::block(q, mono(b), 0))
                .expect("same q");
            out.push(v);
        }
    }
    out
}

/// Checks the lemma on every ordered pair drawn from [`lemma42_grid`].
pub fn lemma42_scan(q: ResidueCard) -> Result<Lemma42Scan> {
    let grid = lemma42_grid(q);
    let mut scan = Lemma42Scan {
        pairs: 0,
        hypotheses_held: 0,
        violations: Vec::new(),
    };
    for v1 in &grid {
        for v2 in &grid {
            let c = lemma42_check(v1, v2)?;
            scan.pairs += 1;
            scan.hypotheses_held += c.hypotheses_hold as usize;
            if c.violated() {
                scan.violations.push((v1.clone(), v2.clone()));
            }
        }
    }
    Ok(scan)
}

/// `⊗ᵢ gᵢ` in the given factor order.
pub fn rb_connected(gs: &[QMatrix]) -> QMatrix {
    gs.iter()
        .fold(QMatrix::identity(1), |acc, g| acc.kron(g))
}

/// A permutation of `{0, …, r−1}` stored as its list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Self(images))
    }

    pub fn identity(r: usize) -> Self {
        Self((0..r).collect())
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.r(), other.r(), "permutations of different sets");
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.r()];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        Self(inv)
    }

    /// All `r!` permutations in lexicographic order of images.
    pub fn all(r: usize) -> Vec<Self> {
        fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if prefix.len() == used.len() {
                out.push(Perm(prefix.clone()));
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    go(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; r], &mut out);
        out
    }

    /// Cycle notation on `{1, …, r}`, e.g. `"(1 2)(3)"` or `"()"`.
    pub fn parse_cycles(src: &str, r: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..r).collect();
        let mut touched = vec![false; r];
        let mut rest = src.trim();
        if rest.is_empty() {
            return Ok(Self(images));
        }
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|s| s.split_once(')'))
                .ok_or_else(|| Error::InvalidPermutation(format!("malformed cycle notation {src:?}")))?;
            let cycle = body
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(k) if (1..=r).contains(&k) => Ok(k - 1),
                    _ => Err(Error::InvalidPermutation(format!("{s:?} is not in 1..={r}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            for &i in &cycle {
                if std::mem::replace(&mut touched[i], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "{} appears twice in {src:?}",
                        i + 1
                    )));
                }
            }
            for (k, &i) in cycle.iter().enumerate() {
                images[i] = cycle[(k + 1) % cycle.len()];
            }
            rest = body.1.trim_start();
        }
        Ok(Self(images))
    }

    /// `σ(g) = [g_{σ⁻¹(0)}, …, g_{σ⁻¹(r−1)}]`: factor `i` moves to slot `σ(i)`.
    pub fn act<T: Clone>(&self, items: &[T]) -> Vec<T> {
        let inv = self.inverse();
        (0..self.r()).map(|i| items[inv.0[i]].clone()).collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.r()];
        let mut wrote = false;
        for start in 0..self.r() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// The operator on `(Q²)^{⊗r}` sending `v₀ ⊗ … ⊗ v_{r−1}` to the tensor whose
/// slot `σ(i)` holds `vᵢ`. It fixes `e₁ ⊗ … ⊗ e₁` and satisfies
/// `P_σ · ⊗gᵢ · P_σ⁻¹ = ⊗σ(g)ᵢ`.
pub fn rb_galois(perm: &Perm) -> QMatrix {
    let r = perm.r();
    let n = 1usize << r;
    let mut m = QMatrix::zeros(n, n);
    // Basis index bits are read with factor 0 most significant, matching kron.
    let digit = |x: usize, i: usize| (x >> (r - 1 - i)) & 1;
    for x in 0..n {
        let mut y = 0;
        for i in 0..r {
            y |= digit(x, i) << (r - 1 - perm.apply(i));
        }
        m.set(y, x, int(1));
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    /// Comes from a one-dimensional automorphic representation: must be a
    /// multiple of a single character.
    OneDimensional(SSModule),
    /// Tensor-induced pieces, each counted with multiplicity.
    Tensor(Vec<TensorParameter>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurityVerdict {
    pub pure: bool,
    pub dim: usize,
    /// The first block that is not pure of the requested weight.
    pub witness: Option<String>,
}

pub fn theorem2_pipeline(component: &Component, j: &Rational) -> Result<PurityVerdict> {
    let total = match component {
        Component::OneDimensional(v) => {
            let mut blocks = v.parts().keys();
            if let Some(first) = blocks.next() {
                if let Some(other) = blocks.find(|b| *b != first) {
                    return Err(Error::MixedWeight {
                        witness: format!("{first} and {other}"),
                    });
                }
                if first.t != 0 {
                    return Err(Error::MixedWeight {
                        witness: format!("{first} is not a character"),
                    });
                }
            }
            v.clone()
        }
        Component::Tensor(parts) => {
            let q = parts
                .first()
                .map(|p| p.module().q())
                .ok_or_else(|| Error::InvalidArgument("no tensor parameters given".into()))?;
            // Direct sums of pure modules are pure; the semisimplification is
            // what the parameters describe, and purity passes to the whole.
            parts
                .iter()
                .try_fold(SSModule::zero(q), |acc, p| acc.direct_sum(&p.total()))?
        }
    };
    let witness = total.impure_block(j).map(|b| b.to_string());
    Ok(PurityVerdict {
        pure: witness.is_none(),
        dim: total.dim(),
        witness,
    })
}

/// `∏ (1 − βT)^{-k}` over the bottom eigenvalues `β` of the blocks, `k`
/// counting blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LFactor {
    q: ResidueCard,
    factors: BTreeMap<WeilMonomial, usize>,
}

impl LFactor {
    pub fn q(&self) -> ResidueCard {
        self.q
    }

    pub fn factors(&self) -> &BTreeMap<WeilMonomial, usize> {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.values().sum()
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.q.ensure_same(other.q)?;
        let mut factors = self.factors.clone();
        for (b, &k) in &other.factors {
            *factors.entry(b.clone()).or_insert(0) += k;
        }
        Ok(Self { q: self.q, factors })
    }
}

impl fmt::Display for LFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (b, &k)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "(1 - zeta:{} q^{{{}}} T)^{{-{k}}}", b.zeta(), b.e())?;
        }
        Ok(())
    }
}

pub fn local_l_factor(a: &SSModule) -> LFactor {
    let mut factors = BTreeMap::new();
    for (b, &k) in a.parts() {
        *factors.entry(b.bottom()).or_insert(0) += k;
    }
    LFactor { q: a.q(), factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concrete::GradedModule;
    use proptest::prelude::*;

    fn q() -> ResidueCard {
        ResidueCard::new(5).unwrap()
    }

    fn mono(e: Rational, z: Rational) -> WeilMonomial {
        WeilMonomial::new(e, z)
    }

    fn steinberg_w1(z: Rational) -> SSModule {
        SSModule::block(q(), mono(int(1), z), 1)
    }

    #[test]
    fn build_r_examples() {
        let v = SSModule::block(q(), mono(rat(1, 2), rat(1, 3)), 1);
        let fam = ConjugateFamily::new(vec![v.clone()], vec![3]).unwrap();
        assert_eq!(build_r(&fam).unwrap(), v.restrict(3).unwrap());

        let fam = ConjugateFamily::unramified(vec![steinberg_w1(int(0)), steinberg_w1(rat(1, 4))]).unwrap();
        let r = build_r(&fam).unwrap();
        assert_eq!(r.dim(), 4);
        assert!(r.is_pure(&int(2)));
    }

    #[test]
    fn build_r_spectrum_is_products() {
        let m = |e, z| mono(rat(e, 2), rat(z, 6));
        let (a, b, c, d) = (m(1, 1), m(1, 2), m(1, 3), m(1, 5));
        let ch = |x: &WeilMonomial| SSModule::block(q(), x.clone(), 0);
        let v1 = ch(&a).direct_sum(&ch(&b)).unwrap();
        let v2 = ch(&c).direct_sum(&ch(&d)).unwrap();
        let r = build_r(&ConjugateFamily::unramified(vec![v1, v2]).unwrap()).unwrap();
        let mut expected = BTreeMap::new();
        for x in [&a * &c, &a * &d, &b * &c, &b * &d] {
            *expected.entry(x).or_insert(0) += 1;
        }
        assert_eq!(r.eigenvalues(), expected);
    }

    #[test]
    fn family_rejects_bad_input() {
        let three = SSModule::block(q(), WeilMonomial::one(), 2);
        assert!(ConjugateFamily::unramified(vec![three]).is_err());
        assert!(ConjugateFamily::new(vec![steinberg_w1(int(0))], vec![0]).is_err());
        assert!(ConjugateFamily::new(vec![steinberg_w1(int(0))], vec![1, 1]).is_err());
        let other = SSModule::block(ResidueCard::new(7).unwrap(), WeilMonomial::one(), 1);
        assert!(matches!(
            ConjugateFamily::unramified(vec![steinberg_w1(int(0)), other]),
            Err(Error::IncompatibleFields { .. })
        ));
        // q and q² agree once the first is restricted twice.
        let q25 = SSModule::block(ResidueCard::new(25).unwrap(), WeilMonomial::one(), 1);
        assert!(ConjugateFamily::new(vec![steinberg_w1(int(0)), q25], vec![2, 1]).is_ok());
    }

    #[test]
    fn build_r_purity_up_to_three() {
        let factors: Vec<SSModule> = (0..3)
            .map(|i| {
                if i % 2 == 0 {
                    steinberg_w1(rat(i, 5))
                } else {
                    let c = SSModule::block(q(), mono(rat(1, 2), rat(1, 2)), 0);
                    c.direct_sum(&SSModule::block(q(), mono(rat(1, 2), int(0)), 0)).unwrap()
                }
            })
            .collect();
        for r in 1..=3 {
            let fam = ConjugateFamily::unramified(factors[..r].to_vec()).unwrap();
            let out = build_r(&fam).unwrap();
            assert_eq!(out.dim(), 1 << r);
            assert!(out.is_pure(&int(r as i64)));
        }
    }

    #[test]
    fn lemma42_examples() {
        let v = steinberg_w1(int(0));
        let c = lemma42_check(&v, &v).unwrap();
        assert!(c.hypotheses_hold && c.conclusion_holds);

        let split = SSModule::block(q(), WeilMonomial::q_power(int(1)), 0)
            .direct_sum(&SSModule::block(q(), WeilMonomial::one(), 0))
            .unwrap();
        assert!(split.exterior_square_2dim().unwrap().is_pure(&int(2)));
        let c = lemma42_check(&split, &v).unwrap();
        assert!(!c.hypotheses_hold);
        assert!(!c.violated());
        assert!(lemma42_check(&SSModule::block(q(), WeilMonomial::one(), 2), &v).is_err());
    }

    #[test]
    fn lemma42_grid_has_no_violations() {
        let scan = lemma42_scan(q()).unwrap();
        assert_eq!(scan.pairs, 77 * 77);
        assert!(scan.hypotheses_held > 0);
        assert!(scan.violations.is_empty());
    }

    #[test]
    fn rb_examples() {
        let g = QMatrix::from_ints(&[&[2, 1], &[3, -1]]);
        assert_eq!(rb_connected(std::slice::from_ref(&g)), g);
        assert!(rb_connected(&[QMatrix::identity(2), QMatrix::identity(2)]).is_identity());
        assert!(rb_galois(&Perm::identity(3)).is_identity());
        let swap = rb_galois(&Perm::parse_cycles("(1 2)", 2).unwrap());
        assert_eq!(
            swap,
            QMatrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
        );
    }

    #[test]
    fn perm_parsing() {
        let p = Perm::parse_cycles("(1 2 3)", 3).unwrap();
        assert_eq!(p.images(), &[1, 2, 0]);
        assert_eq!(p.to_string(), "(1 2 3)");
        assert_eq!(Perm::parse_cycles("()", 3).unwrap(), Perm::identity(3));
        assert_eq!(Perm::parse_cycles("(1,3)(2)", 3).unwrap().images(), &[2, 1, 0]);
        assert!(Perm::parse_cycles("(1 4)", 3).is_err());
        assert!(Perm::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Perm::parse_cycles("1 2", 3).is_err());
        assert!(Perm::new(vec![0, 0]).is_err());
        assert_eq!(Perm::all(3).len(), 6);
    }

    #[test]
    fn theorem2_examples() {
        let chi = mono(int(1), rat(1, 3));
        let mut v = SSModule::zero(q());
        v.add_block(crate::wd::Indecomposable::new(chi.clone(), 0), 3);
        assert!(theorem2_pipeline(&Component::OneDimensional(v), &int(2)).unwrap().pure);

        let fam = ConjugateFamily::unramified(vec![steinberg_w1(int(0)), steinberg_w1(int(0))]).unwrap();
        let tp = TensorParameter::from_family(&fam, 2).unwrap();
        let verdict = theorem2_pipeline(&Component::Tensor(vec![tp]), &int(2)).unwrap();
        assert!(verdict.pure);
        assert_eq!(verdict.dim, 8);

        let mixed = SSModule::block(q(), chi, 0)
            .direct_sum(&SSModule::block(q(), WeilMonomial::one(), 0))
            .unwrap();
        assert!(matches!(
            theorem2_pipeline(&Component::OneDimensional(mixed), &int(2)),
            Err(Error::MixedWeight { .. })
        ));
    }

    #[test]
    fn lfactor_examples() {
        let a = mono(rat(1, 2), rat(1, 3));
        let l = local_l_factor(&SSModule::block(q(), a.clone(), 0));
        assert_eq!(l.degree(), 1);
        assert_eq!(l.to_string(), "(1 - zeta:1/3 q^{1/2} T)^{-1}");

        let psi = mono(int(0), rat(1, 4));
        let st = SSModule::block(q(), psi.shift(&rat(1, 2)), 1);
        let l = local_l_factor(&st);
        assert_eq!(l.degree(), 1);
        assert_eq!(l.factors().keys().next().unwrap(), &psi.shift(&rat(-1, 2)));
        assert_eq!(l.to_string(), "(1 - zeta:1/4 q^{-1/2} T)^{-1}");
        assert_eq!(local_l_factor(&SSModule::zero(q())).to_string(), "1");
    }

    fn small_module() -> impl Strategy<Value = SSModule> {
        proptest::collection::vec((-6i64..7, 0i64..4, 0u32..3, 1usize..3), 0..4).prop_map(|bs| {
            SSModule::from_blocks(
                ResidueCard::new(5).unwrap(),
                bs.into_iter()
                    .map(|(e, z, t, k)| (crate::wd::Indecomposable::new(mono(rat(e, 2), rat(z, 4)), t), k)),
            )
        })
    }

    fn factor() -> impl Strategy<Value = QMatrix> {
        proptest::collection::vec(-5i64..6, 4)
            .prop_map(|v| QMatrix::from_fn(2, 2, |i, j| rat(v[2 * i + j], 1 + (i + j) as i64)))
    }

    proptest! {
        #[test]
        fn lfactor_of_sum_is_product(a in small_module(), b in small_module()) {
            let sum = a.direct_sum(&b).unwrap();
            prop_assert_eq!(local_l_factor(&sum), local_l_factor(&a).product(&local_l_factor(&b)).unwrap());
        }

        #[test]
        fn lfactor_degree_is_kernel_dim(a in small_module()) {
            prop_assert_eq!(local_l_factor(&a).degree(), GradedModule::realize(&a).b_of());
        }

        #[test]
        fn rb_trace_is_multiplicative(gs in proptest::collection::vec(factor(), 1..4)) {
            let expected = gs.iter().fold(int(1), |acc, g| acc * g.trace());
            prop_assert_eq!(rb_connected(&gs).trace(), expected);
        }

        #[test]
        fn rb_intertwines(gs in proptest::collection::vec(factor(), 1..4), pick in 0usize..6) {
            let perms = Perm::all(gs.len());
            let s = &perms[pick % perms.len()];
            let p = rb_galois(s);
            let lhs = &(&p * &rb_connected(&gs)) * &p.inverse().unwrap();
            prop_assert_eq!(lhs, rb_connected(&s.act(&gs)));
        }

        #[test]
        fn rb_is_a_homomorphism(r in 1usize..4, a in 0usize..6, b in 0usize..6) {
            let perms = Perm::all(r);
            let (s, t) = (&perms[a % perms.len()], &perms[b % perms.len()]);
            prop_assert_eq!(&rb_galois(s) * &rb_galois(t), rb_galois(&s.compose(t)));
            let top = rb_galois(s).column(0);
            prop_assert!(top[0] == int(1) && top[1..].iter().all(|x| *x == int(0)));
        }

        #[test]
        fn perm_display_roundtrip(r in 1usize..5, k in 0usize..24) {
            let perms = Perm::all(r);
            let p = &perms[k % perms.len()];
            prop_assert_eq!(&Perm::parse_cycles(&p.to_string(), r).unwrap(), p);
        }
    }
}

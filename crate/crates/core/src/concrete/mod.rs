//! Matrix-level Weil-Deligne modules.
//!
//! A [`GradedModule`] is a direct sum of Frobenius eigenspaces `U_α` together
//! with maps `N_α : U_α → U_{q⁻¹α}`. Frobenius is semisimple by construction
//! and `ΦNΦ⁻¹ = q⁻¹N` holds because every map lowers the eigenvalue by one
//! power of `q`. Nothing here consults the symbolic block rules of
//! [`crate::wd`]; block decompositions are recovered from ranks only, which is
//! what makes this layer usable as an oracle for them.

mod filtration;
mod jordan;

pub use filtration::{
    graded_pieces, sample_filtration, sample_filtration_with, GradedSubspace, StableFiltration,
};
pub use jordan::{jordan_chevalley, nilpotent_exp, unipotent_log};

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rat::{frac, int, Rational};
use crate::wd::{Indecomposable, SSModule};
use crate::weil::{ResidueCard, WeilMonomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    q: ResidueCard,
    pieces: BTreeMap<WeilMonomial, usize>,
    maps: BTreeMap<WeilMonomial, QMatrix>,
}

fn lower(a: &WeilMonomial) -> WeilMonomial {
    a.shift(&int(-1))
}

impl GradedModule {
    /// Validates shapes and fills in zero maps between adjacent pieces that
    /// were not given one.
    pub fn new(
        q: ResidueCard,
        pieces: BTreeMap<WeilMonomial, usize>,
        mut maps: BTreeMap<WeilMonomial, QMatrix>,
    ) -> Result<Self> {
        let pieces: BTreeMap<_, _> = pieces.into_iter().filter(|(_, d)| *d > 0).collect();
        for (a, m) in &maps {
            let src = pieces.get(a).copied().unwrap_or(0);
            let dst = pieces.get(&lower(a)).copied().unwrap_or(0);
            if src == 0 || dst == 0 {
                if m.is_zero() {
                    continue;
                }
                return Err(Error::InvalidModule(format!(
                    "map at {a} has no source or target piece"
                )));
            }
            if (m.rows(), m.cols()) != (dst, src) {
                return Err(Error::InvalidModule(format!(
                    "map at {a} is {}x{}, expected {dst}x{src}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        maps.retain(|a, _| pieces.contains_key(a) && pieces.contains_key(&lower(a)));
        for (a, &d) in &pieces {
            if let Some(&d2) = pieces.get(&lower(a)) {
                maps.entry(a.clone())
                    .or_insert_with(|| QMatrix::zeros(d2, d));
            }
        }
        Ok(Self { q, pieces, maps })
    }

    pub fn q(&self) -> ResidueCard {
        self.q
    }

    pub fn pieces(&self) -> &BTreeMap<WeilMonomial, usize> {
        &self.pieces
    }

    pub fn maps(&self) -> &BTreeMap<WeilMonomial, QMatrix> {
        &self.maps
    }

    pub fn piece_dim(&self, a: &WeilMonomial) -> usize {
        self.pieces.get(a).copied().unwrap_or(0)
    }

    /// `N_α`, absent when `q⁻¹α` is not an eigenvalue.
    pub fn map(&self, a: &WeilMonomial) -> Option<&QMatrix> {
        self.maps.get(a)
    }

    pub fn dim(&self) -> usize {
        self.pieces.values().sum()
    }

    /// Canonical block realization: each `V_{α,t}` contributes a chain of
    /// basis vectors with `N` sending each to the next.
    pub fn realize(a: &SSModule) -> Self {
        let mut pieces: BTreeMap<WeilMonomial, usize> = BTreeMap::new();
        // (source piece, source index) -> (target index)
        let mut links: Vec<(WeilMonomial, usize, usize)> = Vec::new();
        for b in a.blocks() {
            let mut prev: Option<(WeilMonomial, usize)> = None;
            for ev in b.eigenvalues() {
                let slot = pieces.entry(ev.clone()).or_insert(0);
                let idx = *slot;
                *slot += 1;
                if let Some((src, sidx)) = prev.take() {
                    links.push((src, sidx, idx));
                }
                prev = Some((ev, idx));
            }
        }
        let mut maps: BTreeMap<WeilMonomial, QMatrix> = BTreeMap::new();
        for (src, sidx, tidx) in links {
            let ds = pieces[&src];
            let dt = pieces[&lower(&src)];
            maps.entry(src)
                .or_insert_with(|| QMatrix::zeros(dt, ds))
                .set(tidx, sidx, int(1));
        }
        Self::new(a.q(), pieces, maps).expect("block realization is well formed")
    }

    /// Recovers the block decomposition from ranks of composite maps.
    ///
    /// Within a run `v_0, v_1 = q⁻¹v_0, …` of consecutive eigenvalues, let
    /// `r(i,k)` be the rank of `N^{k-i} : U_{v_i} → U_{v_k}`. The number of
    /// blocks starting at `v_i` and ending at `v_k` is
    /// `r(i,k) − r(i−1,k) − r(i,k+1) + r(i−1,k+1)`.
    pub fn to_ss(&self) -> SSModule {
        let mut out = SSModule::zero(self.q);
        for run in self.runs() {
            let n = run.len();
            let mut r = vec![vec![0usize; n]; n];
            for i in 0..n {
                let mut m = QMatrix::identity(self.pieces[&run[i]]);
                r[i][i] = m.cols();
                for k in i + 1..n {
                    m = &self.maps[&run[k - 1]] * &m;
                    r[i][k] = m.rank();
                    if r[i][k] == 0 {
                        break;
                    }
                }
            }
            let at = |i: isize, k: usize| -> isize {
                if i < 0 || k >= n {
                    0
                } else {
                    r[i as usize][k] as isize
                }
            };
            for (i, top) in run.iter().enumerate() {
                for k in i..n {
                    let ii = i as isize;
                    let mult = at(ii, k) - at(ii - 1, k) - at(ii, k + 1) + at(ii - 1, k + 1);
                    debug_assert!(mult >= 0);
                    if mult > 0 {
                        out.add_block(
                            Indecomposable::new(top.clone(), (k - i) as u32),
                            mult as usize,
                        );
                    }
                }
            }
        }
        out
    }

    /// Maximal runs of eigenvalues `v, q⁻¹v, q⁻²v, …` present in the support,
    /// each listed top first.
    fn runs(&self) -> Vec<Vec<WeilMonomial>> {
        let mut classes: BTreeMap<(Rational, Rational), Vec<WeilMonomial>> = BTreeMap::new();
        for a in self.pieces.keys() {
            classes
                .entry((a.zeta().clone(), frac(a.e())))
                .or_default()
                .push(a.clone());
        }
        let mut runs = Vec::new();
        for (_, mut members) in classes {
            members.sort_by(|a, b| b.e().cmp(a.e()));
            let mut cur: Vec<WeilMonomial> = Vec::new();
            for a in members {
                if cur.last().is_some_and(|p| lower(p) != a) {
                    runs.push(std::mem::take(&mut cur));
                }
                cur.push(a);
            }
            if !cur.is_empty() {
                runs.push(cur);
            }
        }
        runs
    }

    /// Start of each piece in the assembled basis.
    pub fn offsets(&self) -> BTreeMap<WeilMonomial, usize> {
        let mut off = 0;
        self.pieces
            .iter()
            .map(|(a, &d)| {
                let o = off;
                off += d;
                (a.clone(), o)
            })
            .collect()
    }

    /// `N` as a single `dim × dim` matrix in the assembled basis.
    pub fn assembled_n(&self) -> QMatrix {
        let off = self.offsets();
        let mut n = QMatrix::zeros(self.dim(), self.dim());
        for (a, m) in &self.maps {
            n.set_block(off[&lower(a)], off[a], m);
        }
        n
    }

    /// `b(V) = dim ker N`.
    pub fn b_of(&self) -> usize {
        self.dim() - self.maps.values().map(QMatrix::rank).sum::<usize>()
    }

    /// Jordan type of `N` (block sizes, largest first) from ranks of its
    /// powers: the number of blocks of size ≥ k is `rk N^{k-1} − rk N^k`.
    pub fn nilpotent_jordan_type(&self) -> Vec<usize> {
        jordan_type_of_nilpotent(&self.assembled_n())
    }

    /// Eigenvalue multiset.
    pub fn spectrum(&self) -> BTreeMap<WeilMonomial, usize> {
        self.pieces.clone()
    }

    /// Tensor product with `N₁⊗1 + 1⊗N₂`; piece `γ` is the sum of
    /// `U_α ⊗ U_β` over all `αβ = γ`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.q.ensure_same(other.q)?;
        // γ -> [(α, β, offset)]
        let mut layout: BTreeMap<WeilMonomial, Vec<(WeilMonomial, WeilMonomial, usize)>> =
            BTreeMap::new();
        let mut pieces: BTreeMap<WeilMonomial, usize> = BTreeMap::new();
        for (a, &da) in &self.pieces {
            for (b, &db) in &other.pieces {
                let g = a * b;
                let slot = pieces.entry(g.clone()).or_insert(0);
                layout.entry(g).or_default().push((a.clone(), b.clone(), *slot));
                *slot += da * db;
            }
        }
        let find = |g: &WeilMonomial, a: &WeilMonomial, b: &WeilMonomial| -> usize {
            layout[g]
                .iter()
                .find(|(x, y, _)| x == a && y == b)
                .map(|&(_, _, o)| o)
                .expect("tensor layout is closed under lowering")
        };
        let mut maps: BTreeMap<WeilMonomial, QMatrix> = BTreeMap::new();
        for (g, entries) in &layout {
            let lg = lower(g);
            let Some(&dt) = pieces.get(&lg) else {
                continue;
            };
            let mut m = QMatrix::zeros(dt, pieces[g]);
            for (a, b, off) in entries {
                let (da, db) = (self.pieces[a], other.pieces[b]);
                if let Some(n1) = self.maps.get(a) {
                    let row = find(&lg, &lower(a), b);
                    add_block(&mut m, row, *off, &n1.kron(&QMatrix::identity(db)));
                }
                if let Some(n2) = other.maps.get(b) {
                    let row = find(&lg, a, &lower(b));
                    add_block(&mut m, row, *off, &QMatrix::identity(da).kron(n2));
                }
            }
            maps.insert(g.clone(), m);
        }
        Self::new(self.q, pieces, maps)
    }

    /// Conjugates by an invertible matrix on each piece:
    /// `N'_α = P_{q⁻¹α}⁻¹ N_α P_α`.
    pub fn change_basis(&self, p: &BTreeMap<WeilMonomial, QMatrix>) -> Result<Self> {
        let mut maps = BTreeMap::new();
        for (a, n) in &self.maps {
            let pa = &p[a];
            let pl = p[&lower(a)].inverse()?;
            maps.insert(a.clone(), &(&pl * n) * pa);
        }
        Self::new(self.q, self.pieces.clone(), maps)
    }

    /// A random graded change of basis by integer matrices of determinant ±1.
    pub fn scramble<R: Rng>(&self, rng: &mut R) -> Self {
        let p: BTreeMap<_, _> = self
            .pieces
            .iter()
            .map(|(a, &d)| (a.clone(), random_unimodular(d, rng)))
            .collect();
        self.change_basis(&p).expect("unimodular matrices are invertible")
    }
}

fn add_block(m: &mut QMatrix, r: usize, c: usize, block: &QMatrix) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let b = block.get(i, j);
            if !b.is_zero() {
                let v = m.get(r + i, c + j) + b;
                m.set(r + i, c + j, v);
            }
        }
    }
}

/// Block sizes of a nilpotent matrix, largest first.
pub fn jordan_type_of_nilpotent(n: &QMatrix) -> Vec<usize> {
    let dim = n.rows();
    let mut ranks = vec![dim];
    let mut p = QMatrix::identity(dim);
    while *ranks.last().unwrap() > 0 {
        p = &p * n;
        ranks.push(p.rank());
        assert!(ranks.len() <= dim + 2, "matrix is not nilpotent");
    }
    // at_least[k] = number of blocks of size ≥ k+1
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for (k, &c) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k + 1, c - next));
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Integer matrix with determinant ±1, built from elementary operations.
pub fn random_unimodular<R: Rng>(n: usize, rng: &mut R) -> QMatrix {
    let mut m = QMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        if rng.random_bool(0.2) {
            for c in 0..n {
                let (a, b) = (m.get(i, c).clone(), m.get(j, c).clone());
                m.set(i, c, b);
                m.set(j, c, a);
            }
        } else {
            let k = int(rng.random_range(-2..=2));
            for c in 0..n {
                let v = m.get(i, c) + &k * m.get(j, c);
                m.set(i, c, v);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> ResidueCard {
        ResidueCard::new(3).unwrap()
    }

    fn mono(e: i64) -> WeilMonomial {
        WeilMonomial::q_power(int(e))
    }

    fn sum(ms: &[SSModule]) -> SSModule {
        ms.iter()
            .fold(SSModule::zero(q()), |acc, m| acc.direct_sum(m).unwrap())
    }

    #[test]
    fn realize_examples() {
        let g = GradedModule::realize(&SSModule::block(q(), mono(1), 1));
        assert_eq!(g.pieces(), &BTreeMap::from([(mono(0), 1), (mono(1), 1)]));
        assert_eq!(g.map(&mono(1)), Some(&QMatrix::from_ints(&[&[1]])));

        let g = GradedModule::realize(&SSModule::block(q(), mono(1), 0));
        assert_eq!(g.dim(), 1);
        assert!(g.maps().is_empty());

        let a = SSModule::block(q(), mono(1), 1);
        let g = GradedModule::realize(&a.direct_sum(&a).unwrap());
        assert_eq!(g.piece_dim(&mono(1)), 2);
        assert!(g.map(&mono(1)).unwrap().is_identity());
    }

    #[test]
    fn to_ss_examples() {
        let split = GradedModule::new(
            q(),
            BTreeMap::from([(mono(1), 1), (mono(0), 1)]),
            BTreeMap::from([(mono(1), QMatrix::from_ints(&[&[0]]))]),
        )
        .unwrap();
        assert_eq!(
            split.to_ss(),
            sum(&[
                SSModule::block(q(), mono(1), 0),
                SSModule::block(q(), mono(0), 0)
            ])
        );
        let a = sum(&[
            SSModule::block(q(), mono(2), 3),
            SSModule::block(q(), mono(1), 1),
            SSModule::block(q(), mono(1), 0),
            SSModule::block(q(), WeilMonomial::new(rat(1, 2), rat(1, 3)), 2),
        ]);
        assert_eq!(GradedModule::realize(&a).to_ss(), a);
    }

    #[test]
    fn tensor_of_two_steinbergs_has_type_3_1() {
        // Independent check: Jordan type of N₁⊗1 + 1⊗N₂ on the plain 4×4
        // Kronecker matrices, without any grading.
        let n = QMatrix::from_ints(&[&[0, 0], &[1, 0]]);
        let i2 = QMatrix::identity(2);
        let big = &n.kron(&i2) + &i2.kron(&n);
        assert_eq!(jordan_type_of_nilpotent(&big), vec![3, 1]);

        let st = GradedModule::realize(&SSModule::block(q(), mono(1), 1));
        let t = st.tensor(&st).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.nilpotent_jordan_type(), vec![3, 1]);
        assert_eq!(
            t.to_ss(),
            sum(&[
                SSModule::block(q(), mono(2), 2),
                SSModule::block(q(), mono(1), 0)
            ])
        );
    }

    #[test]
    fn tensor_with_trivial_and_spectrum() {
        let a = sum(&[
            SSModule::block(q(), mono(2), 2),
            SSModule::block(q(), WeilMonomial::new(rat(1, 2), rat(1, 2)), 1),
        ]);
        let g = GradedModule::realize(&a);
        let one = GradedModule::realize(&SSModule::block(q(), WeilMonomial::one(), 0));
        assert_eq!(g.tensor(&one).unwrap(), g);

        let h = GradedModule::realize(&SSModule::block(q(), mono(-1), 1));
        let t = g.tensor(&h).unwrap();
        let mut expected: BTreeMap<WeilMonomial, usize> = BTreeMap::new();
        for (x, dx) in g.spectrum() {
            for (y, dy) in h.spectrum() {
                *expected.entry(&x * &y).or_insert(0) += dx * dy;
            }
        }
        assert_eq!(t.spectrum(), expected);
    }

    #[test]
    fn b_of_examples() {
        let g = GradedModule::realize(&SSModule::block(q(), mono(2), 4));
        assert_eq!(g.b_of(), 1);
        let zero_n = GradedModule::new(
            q(),
            BTreeMap::from([(mono(1), 3), (mono(0), 2)]),
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(zero_n.b_of(), 5);
        let g = GradedModule::realize(&sum(&[
            SSModule::block(q(), mono(1), 1),
            SSModule::block(q(), mono(0), 0),
        ]));
        assert_eq!(g.b_of(), 2);
        assert_eq!(g.assembled_n().kernel().cols(), 2);
    }

    #[test]
    fn scrambled_module_keeps_its_type() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = sum(&[
            SSModule::block(q(), mono(2), 2),
            SSModule::block(q(), mono(1), 1),
            SSModule::block(q(), mono(1), 0),
            SSModule::block(q(), mono(2), 2),
        ]);
        let g = GradedModule::realize(&a).scramble(&mut rng);
        assert!(g.maps().values().all(QMatrix::is_integral));
        assert_eq!(g.to_ss(), a);
    }

    #[test]
    fn rejects_bad_shapes() {
        let r = GradedModule::new(
            q(),
            BTreeMap::from([(mono(1), 2), (mono(0), 1)]),
            BTreeMap::from([(mono(1), QMatrix::from_ints(&[&[1]]))]),
        );
        assert!(matches!(r, Err(Error::InvalidModule(_))));
    }
}

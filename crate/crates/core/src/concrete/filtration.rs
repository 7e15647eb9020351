//! Graded `N`-stable subspaces, filtrations by them, and their graded
//! quotients.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{lower, GradedModule};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rat::{int, Rational};
use crate::weil::WeilMonomial;

/// A graded subspace: for each piece `U_α`, a basis (as columns) of the
/// component in `U_α`. Pieces with no columns are still listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    basis: BTreeMap<WeilMonomial, QMatrix>,
}

impl GradedSubspace {
    pub fn zero(g: &GradedModule) -> Self {
        Self {
            basis: g
                .pieces()
                .iter()
                .map(|(a, &d)| (a.clone(), QMatrix::zeros(d, 0)))
                .collect(),
        }
    }

    pub fn full(g: &GradedModule) -> Self {
        Self {
            basis: g
                .pieces()
                .iter()
                .map(|(a, &d)| (a.clone(), QMatrix::identity(d)))
                .collect(),
        }
    }

    /// Builds from arbitrary spanning columns per piece.
    pub fn from_spanning(g: &GradedModule, span: BTreeMap<WeilMonomial, QMatrix>) -> Result<Self> {
        let mut out = Self::zero(g);
        for (a, m) in span {
            let d = g.piece_dim(&a);
            if d == 0 || m.rows() != d {
                return Err(Error::InvalidFiltration(format!(
                    "spanning set at {a} does not fit the piece"
                )));
            }
            out.basis.insert(a, m.column_basis());
        }
        Ok(out)
    }

    /// The smallest `N`-stable graded subspace containing `seeds`.
    pub fn closure(g: &GradedModule, seeds: &BTreeMap<WeilMonomial, Vec<Vec<Rational>>>) -> Self {
        let mut pending: BTreeMap<WeilMonomial, Vec<Vec<Rational>>> = seeds.clone();
        let mut basis = BTreeMap::new();
        // N lowers the exponent, so visiting pieces from the top down sees
        // every image before its target is finalized.
        for (a, &d) in g.pieces().iter().rev() {
            let cols = pending.remove(a).unwrap_or_default();
            let b = QMatrix::from_columns(d, &cols).column_basis();
            if let Some(n) = g.map(a) {
                let images = pending.entry(lower(a)).or_default();
                images.extend(b.columns().iter().map(|c| n.apply(c)));
            }
            basis.insert(a.clone(), b);
        }
        Self { basis }
    }

    pub fn component(&self, a: &WeilMonomial) -> &QMatrix {
        &self.basis[a]
    }

    pub fn dims(&self) -> BTreeMap<WeilMonomial, usize> {
        self.basis.iter().map(|(a, b)| (a.clone(), b.cols())).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.values().map(QMatrix::cols).sum()
    }

    pub fn is_stable(&self, g: &GradedModule) -> bool {
        g.maps().iter().all(|(a, n)| {
            let img = n * &self.basis[a];
            self.basis[&lower(a)].spans(&img)
        })
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> bool {
        self.basis
            .iter()
            .all(|(a, b)| other.basis.get(a).is_some_and(|o| b.spans(o)))
    }

    fn same_shape(&self, g: &GradedModule) -> bool {
        self.basis.len() == g.pieces().len()
            && self
                .basis
                .iter()
                .all(|(a, b)| b.rows() == g.piece_dim(a) && b.rank() == b.cols())
    }
}

/// `0 = F_0 ⊂ F_1 ⊂ … ⊂ F_k = V`; only `F_1, …, F_k` are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableFiltration {
    steps: Vec<GradedSubspace>,
}

impl StableFiltration {
    pub fn trivial(g: &GradedModule) -> Self {
        Self {
            steps: vec![GradedSubspace::full(g)],
        }
    }

    /// Checks nesting, stability and that the last step is everything.
    pub fn new(g: &GradedModule, steps: Vec<GradedSubspace>) -> Result<Self> {
        let f = Self { steps };
        f.validate(g)?;
        Ok(f)
    }

    pub fn steps(&self) -> &[GradedSubspace] {
        &self.steps
    }

    pub fn validate(&self, g: &GradedModule) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidFiltration(m));
        let Some(last) = self.steps.last() else {
            return bad("no steps".into());
        };
        for (i, s) in self.steps.iter().enumerate() {
            if !s.same_shape(g) {
                return bad(format!("step {i} does not match the module's pieces"));
            }
            if !s.is_stable(g) {
                return bad(format!("step {i} is not N-stable"));
            }
        }
        for (i, w) in self.steps.windows(2).enumerate() {
            if !w[1].contains(&w[0]) {
                return bad(format!("step {i} is not contained in step {}", i + 1));
            }
        }
        if last.dim() != g.dim() {
            return bad("last step is not the whole module".into());
        }
        Ok(())
    }
}

/// Samples a filtration with at most `steps` nonzero steps.
///
/// Each intermediate step is the stable closure of the previous one plus a
/// random integer vector in a random piece (tops of eigenvalue chains are
/// favoured, since closures of those are whole blocks in a split module).
/// Steps that fail to grow, or reach the whole module early, are dropped.
pub fn sample_filtration(g: &GradedModule, seed: u64, steps: usize) -> StableFiltration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_filtration_with(g, &mut rng, steps)
}

pub fn sample_filtration_with<R: Rng>(
    g: &GradedModule,
    rng: &mut R,
    steps: usize,
) -> StableFiltration {
    let pieces: Vec<(WeilMonomial, usize)> =
        g.pieces().iter().map(|(a, &d)| (a.clone(), d)).collect();
    let tops: Vec<usize> = (0..pieces.len())
        .filter(|&i| g.piece_dim(&pieces[i].0.shift(&int(1))) == 0)
        .collect();
    let mut out = Vec::new();
    let mut cur = GradedSubspace::zero(g);
    for _ in 1..steps.max(1) {
        if pieces.is_empty() {
            break;
        }
        let idx = if !tops.is_empty() && rng.random_bool(0.6) {
            tops[rng.random_range(0..tops.len())]
        } else {
            rng.random_range(0..pieces.len())
        };
        let (a, d) = &pieces[idx];
        let mut v: Vec<Rational> = (0..*d).map(|_| int(rng.random_range(-2..=2))).collect();
        if v.iter().all(|x| *x == int(0)) {
            v[rng.random_range(0..*d)] = int(1);
        }
        let mut seeds: BTreeMap<WeilMonomial, Vec<Vec<Rational>>> = cur
            .basis
            .iter()
            .map(|(k, b)| (k.clone(), b.columns()))
            .collect();
        seeds.entry(a.clone()).or_default().push(v);
        let next = GradedSubspace::closure(g, &seeds);
        if next.dim() == cur.dim() || next.dim() == g.dim() {
            continue;
        }
        out.push(next.clone());
        cur = next;
    }
    out.push(GradedSubspace::full(g));
    let f = StableFiltration { steps: out };
    debug_assert!(f.validate(g).is_ok());
    f
}

/// The successive quotients `F_i / F_{i-1}` as graded modules (zero quotients
/// are skipped).
pub fn graded_pieces(g: &GradedModule, filt: &StableFiltration) -> Result<Vec<GradedModule>> {
    filt.validate(g)?;
    let zero = GradedSubspace::zero(g);
    let mut out = Vec::new();
    let mut prev = &zero;
    for cur in filt.steps() {
        let q = quotient(g, prev, cur)?;
        if q.dim() > 0 {
            out.push(q);
        }
        prev = cur;
    }
    Ok(out)
}

/// `cur / prev`, with basis given by the columns of `cur` that extend a basis
/// of `prev`.
fn quotient(g: &GradedModule, prev: &GradedSubspace, cur: &GradedSubspace) -> Result<GradedModule> {
    // Per piece: full basis [prev | complement] of `cur`, and the size of the
    // `prev` part.
    let mut frames: BTreeMap<WeilMonomial, (QMatrix, usize)> = BTreeMap::new();
    for a in g.pieces().keys() {
        let p = prev.component(a);
        let frame = p.hstack(cur.component(a)).column_basis();
        frames.insert(a.clone(), (frame, p.cols()));
    }
    let pieces: BTreeMap<WeilMonomial, usize> = frames
        .iter()
        .map(|(a, (f, p))| (a.clone(), f.cols() - p))
        .collect();
    let mut maps = BTreeMap::new();
    for (a, n) in g.maps() {
        let (src, sp) = &frames[a];
        let (dst, dp) = &frames[&lower(a)];
        let (rows, cols) = (dst.cols() - dp, src.cols() - sp);
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut m = QMatrix::zeros(rows, cols);
        for j in 0..cols {
            let image = n.apply(&src.column(sp + j));
            let coords = dst.solve(&image).ok_or_else(|| {
                Error::InvalidFiltration(format!("image at {a} leaves the step"))
            })?;
            for i in 0..rows {
                m.set(i, j, coords[dp + i].clone());
            }
        }
        maps.insert(a.clone(), m);
    }
    GradedModule::new(g.q(), pieces, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wd::SSModule;
    use crate::weil::ResidueCard;

    fn q() -> ResidueCard {
        ResidueCard::new(5).unwrap()
    }

    fn mono(e: i64) -> WeilMonomial {
        WeilMonomial::q_power(int(e))
    }

    #[test]
    fn single_step_is_trivial() {
        let g = GradedModule::realize(&SSModule::block(q(), mono(1), 2));
        let f = sample_filtration(&g, 3, 1);
        assert_eq!(f, StableFiltration::trivial(&g));
        assert_eq!(graded_pieces(&g, &f).unwrap(), vec![g]);
    }

    #[test]
    fn steinberg_has_only_the_kernel_line() {
        let g = GradedModule::realize(&SSModule::block(q(), mono(1), 1));
        // Every sampled proper step is the bottom line.
        for seed in 0..40 {
            let f = sample_filtration(&g, seed, 4);
            for s in &f.steps()[..f.steps().len() - 1] {
                assert_eq!(s.dims(), BTreeMap::from([(mono(0), 1), (mono(1), 0)]));
            }
        }
        // The top line alone is not stable.
        let top = GradedSubspace::from_spanning(
            &g,
            BTreeMap::from([(mono(1), QMatrix::identity(1))]),
        )
        .unwrap();
        assert!(!top.is_stable(&g));
        assert!(StableFiltration::new(&g, vec![top, GradedSubspace::full(&g)]).is_err());
    }

    #[test]
    fn steinberg_quotients() {
        let g = GradedModule::realize(&SSModule::block(q(), mono(1), 1));
        let kernel = GradedSubspace::from_spanning(
            &g,
            BTreeMap::from([(mono(0), QMatrix::identity(1))]),
        )
        .unwrap();
        let f = StableFiltration::new(&g, vec![kernel, GradedSubspace::full(&g)]).unwrap();
        let pieces = graded_pieces(&g, &f).unwrap();
        let ss: Vec<SSModule> = pieces.iter().map(GradedModule::to_ss).collect();
        assert_eq!(
            ss,
            vec![
                SSModule::block(q(), mono(0), 0),
                SSModule::block(q(), mono(1), 0)
            ]
        );
        assert!(pieces.iter().map(GradedModule::b_of).sum::<usize>() >= g.b_of());
    }

    #[test]
    fn sampled_filtrations_are_valid_and_dims_add() {
        let a = SSModule::from_blocks(
            q(),
            [
                (crate::wd::Indecomposable::new(mono(2), 2), 2),
                (crate::wd::Indecomposable::new(mono(1), 1), 1),
                (crate::wd::Indecomposable::new(mono(0), 0), 1),
            ],
        );
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = GradedModule::realize(&a).scramble(&mut rng);
        for seed in 0..30 {
            let f = sample_filtration(&g, seed, 5);
            assert!(f.validate(&g).is_ok());
            let pieces = graded_pieces(&g, &f).unwrap();
            assert_eq!(pieces.iter().map(GradedModule::dim).sum::<usize>(), g.dim());
            assert!(pieces.iter().map(GradedModule::b_of).sum::<usize>() >= g.b_of());
        }
    }
}

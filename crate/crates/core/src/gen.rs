//! Seeded random modules and expressions for fuzzing and property tests.
//!
//! Eigenvalue weights stay in `[−4, 4]` on the half-integer lattice and the
//! roots of unity have small denominators, so modules built from the same
//! generator meet each other's eigenvalue chains often.

use num_traits::{Signed, ToPrimitive};
use rand::Rng;

use crate::expr::Expr;
use crate::rat::{rat, Rational};
use crate::wd::{Indecomposable, SSModule};
use crate::weil::{ResidueCard, WeilMonomial};

const ZETAS: [(i64, i64); 8] = [(0, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 6), (5, 6)];

pub fn random_zeta<R: Rng>(rng: &mut R) -> Rational {
    let (a, b) = ZETAS[rng.random_range(0..ZETAS.len())];
    rat(a, b)
}

/// A half-integer weight in `[lo, hi]`.
pub fn random_weight<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    rat(rng.random_range(2 * lo..=2 * hi), 2)
}

/// `ζ·q^{w/2}` with `w` a half-integer in `[−4, 4]`.
pub fn random_monomial<R: Rng>(rng: &mut R) -> WeilMonomial {
    WeilMonomial::new(random_weight(rng, -4, 4) / rat(2, 1), random_zeta(rng))
}

fn with_weight<R: Rng>(rng: &mut R, w: &Rational) -> WeilMonomial {
    WeilMonomial::new(w / rat(2, 1), random_zeta(rng))
}

/// Blocks with arbitrary top weights; total dimension at most `cap`.
pub fn random_module<R: Rng>(rng: &mut R, q: ResidueCard, cap: usize) -> SSModule {
    let mut out = SSModule::zero(q);
    let target = rng.random_range(1..=cap.max(1));
    while out.dim() < target {
        let room = (target - out.dim()).min(4) as u32;
        let t = rng.random_range(0..room);
        out.add_block(Indecomposable::new(random_monomial(rng), t), 1);
    }
    out
}

/// A module pure of weight `j`, every eigenvalue weight inside `[−4, 4]`
/// when `j` is.
pub fn random_pure_module<R: Rng>(
    rng: &mut R,
    q: ResidueCard,
    j: &Rational,
    cap: usize,
) -> SSModule {
    let mut out = SSModule::zero(q);
    let target = rng.random_range(1..=cap.max(1));
    while out.dim() < target {
        let room = (target - out.dim()).min(4) as i64;
        // Keep the top weight j + t and the bottom weight j − t in [−4, 4].
        let span = (rat(4, 1) - j.abs()).floor().to_integer().to_i64().unwrap_or(0);
        let t = rng.random_range(0..room.min(span + 1).max(1));
        let top = j + rat(t, 1);
        out.add_block(Indecomposable::new(with_weight(rng, &top), t as u32), 1);
    }
    out
}

/// One local change to `a`: move a block's top eigenvalue by `q^{k/4}`,
/// lengthen or shorten a block, or add a stray character.
pub fn perturb<R: Rng>(rng: &mut R, a: &SSModule, cap: usize) -> SSModule {
    let blocks: Vec<Indecomposable> = a.blocks().cloned().collect();
    if blocks.is_empty() {
        return random_module(rng, a.q(), cap);
    }
    let i = rng.random_range(0..blocks.len());
    let mut out = SSModule::zero(a.q());
    for (k, b) in blocks.iter().enumerate() {
        if k != i {
            out.add_block(b.clone(), 1);
        }
    }
    let b = &blocks[i];
    match rng.random_range(0..4) {
        0 => {
            let shifts = [-4, -2, -1, 1, 2, 4];
            let s = shifts[rng.random_range(0..shifts.len())];
            out.add_block(Indecomposable::new(b.alpha.shift(&rat(s, 4)), b.t), 1);
        }
        1 if a.dim() < cap => out.add_block(Indecomposable::new(b.alpha.clone(), b.t + 1), 1),
        2 if b.t > 0 => out.add_block(Indecomposable::new(b.alpha.clone(), b.t - 1), 1),
        _ => {
            out.add_block(b.clone(), 1);
            if out.dim() < cap {
                out.add_block(Indecomposable::new(random_monomial(rng), 0), 1);
            }
        }
    }
    out
}

/// A mix of arbitrary, pure and nearly pure modules (about a third each);
/// pure ones have a random half-integer weight in `[−2, 2]`.
pub fn random_mixed_module<R: Rng>(rng: &mut R, q: ResidueCard, cap: usize) -> SSModule {
    match rng.random_range(0..3) {
        0 => random_module(rng, q, cap),
        1 => {
            let j = random_weight(rng, -2, 2);
            random_pure_module(rng, q, &j, cap)
        }
        _ => {
            let j = random_weight(rng, -2, 2);
            let mut a = random_pure_module(rng, q, &j, cap);
            for _ in 0..rng.random_range(1..=2) {
                a = perturb(rng, &a, cap);
            }
            a
        }
    }
}

/// A random expression of bounded depth. `ext2` is only applied to
/// two-dimensional leaves and `tensor` only near the leaves, so evaluation
/// stays small.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    let leaf = |rng: &mut R, t_max: u32| Expr::Ind {
        e: rat(rng.random_range(-8..=8), 4),
        zeta: random_zeta(rng),
        t: rng.random_range(0..=t_max),
    };
    if depth == 0 {
        return leaf(rng, 2);
    }
    let sub = |rng: &mut R| Box::new(random_expr(rng, depth - 1));
    match rng.random_range(0..8) {
        0 => leaf(rng, 3),
        1 => {
            let n = rng.random_range(1..=3);
            Expr::Sum((0..n).map(|_| random_expr(rng, depth - 1)).collect())
        }
        2 => Expr::Tensor(Box::new(leaf(rng, 2)), sub(rng)),
        3 => Expr::Dual(sub(rng)),
        4 => Expr::Twist(sub(rng), rng.random_range(-3..=3)),
        5 => Expr::Restrict(sub(rng), rng.random_range(1..=3)),
        6 => {
            let arg = if rng.random_bool(0.5) {
                Expr::Ind {
                    e: rat(rng.random_range(-8..=8), 4),
                    zeta: random_zeta(rng),
                    t: 1,
                }
            } else {
                Expr::Sum(vec![leaf(rng, 0), leaf(rng, 0)])
            };
            Expr::Ext2(Box::new(arg))
        }
        _ => Expr::Sum(vec![random_expr(rng, depth - 1), leaf(rng, 1)]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_bounds() {
        let q = ResidueCard::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let four = rat(4, 1);
        for _ in 0..500 {
            let a = random_mixed_module(&mut rng, q, 12);
            assert!(a.dim() >= 1 && a.dim() <= 12, "{a}");
            let j = random_weight(&mut rng, -2, 2);
            let p = random_pure_module(&mut rng, q, &j, 12);
            assert!(p.is_pure(&j));
            for w in p.eigenvalues().keys().map(|x| x.weight()) {
                assert!(w <= four && w >= -four.clone());
            }
        }
    }

    #[test]
    fn random_exprs_evaluate() {
        let q = ResidueCard::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let e = random_expr(&mut rng, 3);
            let printed = e.to_string();
            assert_eq!(crate::expr::parse(&printed).unwrap(), e);
            // Restriction changes q, so sums mixing restricted and
            // unrestricted terms may legitimately fail; anything else must
            // evaluate.
            match crate::expr::eval(&e, q) {
                Ok(_) | Err(crate::Error::IncompatibleFields { .. }) => {}
                Err(err) => panic!("{printed}: {err}"),
            }
        }
    }

    #[test]
    fn same_seed_same_module() {
        let q = ResidueCard::new(3).unwrap();
        let a = random_mixed_module(&mut ChaCha8Rng::seed_from_u64(5), q, 12);
        let b = random_mixed_module(&mut ChaCha8Rng::seed_from_u64(5), q, 12);
        assert_eq!(a, b);
    }
}

//! Multiplicative Jordan-Chevalley decomposition and the exp/log bridge
//! between unipotent and nilpotent matrices.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::Poly;
use crate::rat::{int, Rational};

/// Splits an invertible `M` as `M = S·U` with `S` semisimple, `U` unipotent
/// and `SU = US`.
///
/// `S` is found by Newton's iteration `S ← S − s(S)·s'(S)⁻¹` where `s` is the
/// squarefree part of the characteristic polynomial. This never factors the
/// polynomial, so it works over `Q` whether or not the eigenvalues are
/// rational.
pub fn jordan_chevalley(m: &QMatrix) -> Result<(QMatrix, QMatrix)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.determinant()?.is_zero() {
        return Err(Error::Singular);
    }
    let s_poly = Poly::charpoly(m).squarefree_part();
    let ds = s_poly.derivative();
    let mut s = m.clone();
    // Quadratic convergence: the nilpotent error squares each round.
    for _ in 0..=m.rows() {
        let val = s_poly.eval_matrix(&s);
        if val.is_zero() {
            let u = &s.inverse()? * m;
            return Ok((s, u));
        }
        let step = &val * &ds.eval_matrix(&s).inverse()?;
        s = &s - &step;
    }
    unreachable!("Newton iteration for the semisimple part did not terminate")
}

/// `log U = Σ_{k≥1} (−1)^{k+1} (U−1)^k / k`, a finite sum.
pub fn unipotent_log(u: &QMatrix) -> Result<QMatrix> {
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    let n = u.rows();
    let x = u - &QMatrix::identity(n);
    if !x.is_nilpotent() {
        return Err(Error::NotUnipotent);
    }
    let mut out = QMatrix::zeros(n, n);
    let mut p = QMatrix::identity(n);
    for k in 1..=n.max(1) {
        p = &p * &x;
        if p.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { int(1) } else { int(-1) };
        out = &out + &p.scale(&(sign / int(k as i64)));
    }
    Ok(out)
}

/// `exp N = Σ_k N^k / k!`, a finite sum.
pub fn nilpotent_exp(nil: &QMatrix) -> Result<QMatrix> {
    if !nil.is_square() {
        return Err(Error::NotSquare {
            rows: nil.rows(),
            cols: nil.cols(),
        });
    }
    if !nil.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let n = nil.rows();
    let mut out = QMatrix::identity(n);
    let mut p = QMatrix::identity(n);
    let mut fact = Rational::one();
    for k in 1..=n {
        p = &p * nil;
        if p.is_zero() {
            break;
        }
        fact *= int(k as i64);
        out = &out + &p.scale(&fact.recip());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn check_jc(m: &QMatrix) {
        let (s, u) = jordan_chevalley(m).unwrap();
        assert_eq!(&s * &u, *m);
        assert_eq!(&s * &u, &u * &s);
        assert!((&u - &QMatrix::identity(m.rows())).is_nilpotent());
        // Minimal polynomial of S is squarefree: the squarefree part of its
        // characteristic polynomial already kills it.
        assert!(Poly::charpoly(&s).squarefree_part().eval_matrix(&s).is_zero());
    }

    #[test]
    fn jc_examples() {
        let unip = QMatrix::from_ints(&[&[1, 3, -2], &[0, 1, 5], &[0, 0, 1]]);
        let (s, u) = jordan_chevalley(&unip).unwrap();
        assert!(s.is_identity());
        assert_eq!(u, unip);

        let diag = QMatrix::from_ints(&[&[2, 0], &[0, -3]]);
        let (s, u) = jordan_chevalley(&diag).unwrap();
        assert_eq!(s, diag);
        assert!(u.is_identity());

        let m = QMatrix::from_ints(&[&[2, 1], &[0, 2]]);
        let (s, u) = jordan_chevalley(&m).unwrap();
        assert_eq!(s, QMatrix::from_ints(&[&[2, 0], &[0, 2]]));
        assert_eq!(
            u,
            QMatrix::from_rows(vec![vec![int(1), rat(1, 2)], vec![int(0), int(1)]])
        );
        check_jc(&m);
    }

    #[test]
    fn jc_irrational_eigenvalues() {
        // Companion matrix of (x² − 2)², whose eigenvalues ±√2 are not rational.
        let m = QMatrix::from_ints(&[
            &[0, 0, 0, -4],
            &[1, 0, 0, 0],
            &[0, 1, 0, 4],
            &[0, 0, 1, 0],
        ]);
        check_jc(&m);
        let (s, _) = jordan_chevalley(&m).unwrap();
        assert_ne!(s, m);
    }

    #[test]
    fn jc_singular() {
        let m = QMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(jordan_chevalley(&m), Err(Error::Singular));
    }

    #[test]
    fn log_exp_examples() {
        assert!(unipotent_log(&QMatrix::identity(3)).unwrap().is_zero());
        let shear = QMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            unipotent_log(&shear).unwrap(),
            QMatrix::from_ints(&[&[0, 1], &[0, 0]])
        );
        assert_eq!(
            nilpotent_exp(&QMatrix::from_ints(&[&[0, 1], &[0, 0]])).unwrap(),
            shear
        );
        assert!(nilpotent_exp(&QMatrix::zeros(3, 3)).unwrap().is_identity());
        assert_eq!(
            unipotent_log(&QMatrix::from_ints(&[&[2, 0], &[0, 1]])),
            Err(Error::NotUnipotent)
        );
        assert_eq!(
            nilpotent_exp(&QMatrix::from_ints(&[&[1, 0], &[0, 0]])),
            Err(Error::NotNilpotent)
        );
    }

    fn strict_upper(n: usize) -> impl Strategy<Value = QMatrix> {
        proptest::collection::vec(-4i64..5, n * n).prop_map(move |v| {
            QMatrix::from_fn(n, n, |i, j| if j > i { int(v[i * n + j]) } else { int(0) })
        })
    }

    fn invertible_3x3() -> impl Strategy<Value = QMatrix> {
        proptest::collection::vec(-3i64..4, 9)
            .prop_map(|v| QMatrix::from_fn(3, 3, |i, j| int(v[i * 3 + j])))
            .prop_filter("invertible", |m| m.rank() == 3)
    }

    proptest! {
        #[test]
        fn exp_log_roundtrip(nil in strict_upper(4)) {
            let u = nilpotent_exp(&nil).unwrap();
            prop_assert_eq!(unipotent_log(&u).unwrap(), nil.clone());
            prop_assert_eq!(nilpotent_exp(&unipotent_log(&u).unwrap()).unwrap(), u);
        }

        #[test]
        fn jc_on_conjugated_jordan_forms(p in invertible_3x3(), a in 1i64..4, b in -3i64..-1) {
            // A single Jordan block for `a` next to an eigenvalue `b`, in a
            // random basis.
            let j = QMatrix::from_ints(&[&[a, 1, 0], &[0, a, 0], &[0, 0, b]]);
            let m = &(&p * &j) * &p.inverse().unwrap();
            check_jc(&m);
            let (s, _) = jordan_chevalley(&m).unwrap();
            let expected_s = &(&p * &QMatrix::from_ints(&[&[a, 0, 0], &[0, a, 0], &[0, 0, b]])) * &p.inverse().unwrap();
            prop_assert_eq!(s, expected_s);
        }
    }
}

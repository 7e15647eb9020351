//! Formal Frobenius eigenvalues `ζ·q^e`.
//!
//! A [`WeilMonomial`] records a root of unity (as an angle in `[0, 1)`) and a
//! rational exponent of the residue cardinality `q`. The ambient `q` is not
//! stored in the monomial; containers such as `SSModule` carry it, and
//! [`WeilNumber`] pairs the two when a checked product across fields is
//! needed.

use std::fmt;
use std::ops::{Div, Mul};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{frac, int, parse_rational, Rational};

/// Cardinality `q` of the residue field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueCard(u64);

impl ResidueCard {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidResidueCard(q));
        }
        Ok(Self(q))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Residue cardinality of an extension of residue degree `f`.
    pub fn extend(self, f: u32) -> Result<Self> {
        self.0
            .checked_pow(f)
            .map(Self)
            .ok_or(Error::ResidueOverflow { q: self.0, f })
    }

    pub fn ensure_same(self, other: Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::IncompatibleFields {
                left: self.0,
                right: other.0,
            })
        }
    }
}

impl fmt::Display for ResidueCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `ζ·q^e` with `ζ = exp(2πi·zeta)`.
///
/// Ordering is lexicographic on `(e, zeta)`, which is what the canonical
/// forms of modules and spectra sort by.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeilMonomial {
    e: Rational,
    zeta: Rational,
}

impl WeilMonomial {
    pub fn new(e: Rational, zeta: Rational) -> Self {
        Self {
            e,
            zeta: frac(&zeta),
        }
    }

    pub fn one() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    /// `q^e` with trivial root of unity.
    pub fn q_power(e: Rational) -> Self {
        Self::new(e, Rational::zero())
    }

    /// The root of unity `exp(2πi·zeta)`.
    pub fn root_of_unity(zeta: Rational) -> Self {
        Self::new(Rational::zero(), zeta)
    }

    pub fn e(&self) -> &Rational {
        &self.e
    }

    pub fn zeta(&self) -> &Rational {
        &self.zeta
    }

    /// `2e`: the modulus is `q^{weight/2}`.
    pub fn weight(&self) -> Rational {
        &self.e * int(2)
    }

    pub fn is_one(&self) -> bool {
        self.e.is_zero() && self.zeta.is_zero()
    }

    pub fn inv(&self) -> Self {
        Self::new(-&self.e, -&self.zeta)
    }

    pub fn pow(&self, n: i64) -> Self {
        let n = int(n);
        Self::new(&self.e * &n, &self.zeta * &n)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: &Rational) -> Self {
        Self {
            e: &self.e + k,
            zeta: self.zeta.clone(),
        }
    }

    /// All `f` monomials whose `f`-th power is `self`.
    pub fn roots(&self, f: u32) -> Vec<Self> {
        assert!(f >= 1, "root order must be positive");
        let fr = int(f as i64);
        (0..f)
            .map(|k| Self::new(&self.e / &fr, (&self.zeta + int(k as i64)) / &fr))
            .collect()
    }

    /// True when `self / other` is an integral power of `q`.
    pub fn same_chain(&self, other: &Self) -> bool {
        self.zeta == other.zeta && frac(&self.e) == frac(&other.e)
    }

    /// Parses `zeta:a/b q^e` (braces around the exponent are optional; either
    /// part may be omitted).
    pub fn parse(src: &str) -> Result<Self> {
        let mut zeta = Rational::zero();
        let mut e = Rational::zero();
        let mut seen = false;
        for tok in src.split_whitespace() {
            if let Some(z) = tok.strip_prefix("zeta:") {
                zeta = parse_rational(z)?;
            } else if let Some(x) = tok.strip_prefix("q^") {
                let x = x.trim_start_matches('{').trim_end_matches('}');
                e = parse_rational(x)?;
            } else {
                return Err(Error::Parse {
                    offset: src.find(tok).unwrap_or(0),
                    message: format!("unexpected `{tok}` in monomial"),
                });
            }
            seen = true;
        }
        if !seen {
            return Err(Error::Parse {
                offset: 0,
                message: "empty monomial".into(),
            });
        }
        Ok(Self::new(e, zeta))
    }
}

impl Mul for &WeilMonomial {
    type Output = WeilMonomial;

    fn mul(self, rhs: &WeilMonomial) -> WeilMonomial {
        WeilMonomial::new(&self.e + &rhs.e, &self.zeta + &rhs.zeta)
    }
}

impl Mul for WeilMonomial {
    type Output = WeilMonomial;

    fn mul(self, rhs: WeilMonomial) -> WeilMonomial {
        &self * &rhs
    }
}

impl Div for &WeilMonomial {
    type Output = WeilMonomial;

    fn div(self, rhs: &WeilMonomial) -> WeilMonomial {
        WeilMonomial::new(self.e() - rhs.e(), self.zeta() - rhs.zeta())
    }
}

impl fmt::Display for WeilMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta:{} q^{}", self.zeta, self.e)
    }
}

/// A monomial together with the field it lives over.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeilNumber {
    pub q: ResidueCard,
    pub value: WeilMonomial,
}

impl WeilNumber {
    pub fn new(q: ResidueCard, value: WeilMonomial) -> Self {
        Self { q, value }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.q.ensure_same(other.q)?;
        Ok(Self::new(self.q, &self.value * &other.value))
    }

    pub fn inv(&self) -> Self {
        Self::new(self.q, self.value.inv())
    }

    pub fn weight(&self) -> Rational {
        self.value.weight()
    }

    /// The `f` roots, each over the same `q`.
    pub fn roots(&self, f: u32) -> Vec<Self> {
        self.value
            .roots(f)
            .into_iter()
            .map(|v| Self::new(self.q, v))
            .collect()
    }

    /// `α^f` viewed over the extension with residue cardinality `q^f`.
    ///
    /// As a complex number this is `ζ^f·q^{ef} = ζ^f·(q^f)^e`, so the exponent
    /// relative to the new base is unchanged and the weight is preserved.
    pub fn restrict(&self, f: u32) -> Result<Self> {
        let q = self.q.extend(f)?;
        let v = &self.value;
        Ok(Self::new(
            q,
            WeilMonomial::new(v.e.clone(), &v.zeta * int(f as i64)),
        ))
    }
}

/// Exponent of `q` as an absolute quantity, i.e. `log_q |α|` where `α`
/// lives over `q^f`.
pub fn absolute_exponent(m: &WeilMonomial, f: u32) -> Rational {
    m.e() * int(f as i64)
}

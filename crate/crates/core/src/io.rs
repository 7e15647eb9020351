//! JSON encodings of modules, spectra and `GL(2)` parameters.
//!
//! Monomials are `{"e": "p/r", "zeta": "a/b"}`; integers are accepted in
//! place of rational strings. Everything written carries `"format": 1`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gl2::{GL2Kind, GL2Param};
use crate::rat::{int, parse_rational, Rational};
use crate::spectrum::WeightedSpectrum;
use crate::wd::{Indecomposable, SSModule};
use crate::weil::{ResidueCard, WeilMonomial};

pub const FORMAT: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Int(i64),
    Text(String),
}

impl RatRepr {
    fn value(&self) -> Result<Rational> {
        match self {
            RatRepr::Int(n) => Ok(int(*n)),
            RatRepr::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MonoDto {
    e: RatRepr,
    #[serde(default = "zero_repr")]
    zeta: RatRepr,
}

fn zero_repr() -> RatRepr {
    RatRepr::Int(0)
}

impl MonoDto {
    fn from(m: &WeilMonomial) -> Self {
        Self {
            e: RatRepr::Text(m.e().to_string()),
            zeta: RatRepr::Text(m.zeta().to_string()),
        }
    }

    fn value(&self) -> Result<WeilMonomial> {
        Ok(WeilMonomial::new(self.e.value()?, self.zeta.value()?))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BlockDto {
    alpha: MonoDto,
    t: u32,
    #[serde(default = "one")]
    mult: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ModuleDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<u32>,
    q: u64,
    parts: Vec<BlockDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EntryDto {
    alpha: MonoDto,
    mult: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SpectrumDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<u32>,
    q: u64,
    entries: Vec<EntryDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum KindDto {
    Supercuspidal { weight: RatRepr },
    Steinberg { psi: MonoDto },
    PrincipalSeries { psi1: MonoDto, psi2: MonoDto },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GL2Dto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<u32>,
    q: u64,
    #[serde(flatten)]
    kind: KindDto,
}

fn decode<T: for<'de> Deserialize<'de>>(src: &str) -> Result<T> {
    serde_json::from_str(src).map_err(|e| Error::Parse {
        offset: offset_of(src, e.line(), e.column()),
        message: e.to_string(),
    })
}

/// Byte offset of a 1-based line and column as reported by serde_json.
fn offset_of(src: &str, line: usize, column: usize) -> usize {
    let start: usize = src.lines().take(line.saturating_sub(1)).map(|l| l.len() + 1).sum();
    (start + column.saturating_sub(1)).min(src.len())
}

fn encode<T: Serialize>(dto: &T) -> Value {
    serde_json::to_value(dto).expect("DTOs always serialize")
}

pub fn module_to_json(a: &SSModule) -> Value {
    encode(&ModuleDto {
        format: Some(FORMAT),
        q: a.q().get(),
        parts: a
            .parts()
            .iter()
            .map(|(b, &mult)| BlockDto {
                alpha: MonoDto::from(&b.alpha),
                t: b.t,
                mult,
            })
            .collect(),
    })
}

pub fn module_from_json(src: &str) -> Result<SSModule> {
    let dto: ModuleDto = decode(src)?;
    let q = ResidueCard::new(dto.q)?;
    let mut out = SSModule::zero(q);
    for b in dto.parts {
        out.add_block(Indecomposable::new(b.alpha.value()?, b.t), b.mult);
    }
    Ok(out)
}

pub fn spectrum_to_json(s: &WeightedSpectrum) -> Value {
    encode(&SpectrumDto {
        format: Some(FORMAT),
        q: s.q().get(),
        entries: s
            .entries()
            .iter()
            .map(|(a, &mult)| EntryDto {
                alpha: MonoDto::from(a),
                mult,
            })
            .collect(),
    })
}

pub fn spectrum_from_json(src: &str) -> Result<WeightedSpectrum> {
    let dto: SpectrumDto = decode(src)?;
    let entries = dto
        .entries
        .iter()
        .map(|e| Ok((e.alpha.value()?, e.mult)))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightedSpectrum::new(ResidueCard::new(dto.q)?, entries))
}

pub fn gl2_to_json(p: &GL2Param) -> Value {
    let kind = match &p.kind {
        GL2Kind::Supercuspidal { weight } => KindDto::Supercuspidal {
            weight: RatRepr::Text(weight.to_string()),
        },
        GL2Kind::SteinbergTwist { psi } => KindDto::Steinberg {
            psi: MonoDto::from(psi),
        },
        GL2Kind::PrincipalSeries { psi1, psi2 } => KindDto::PrincipalSeries {
            psi1: MonoDto::from(psi1),
            psi2: MonoDto::from(psi2),
        },
    };
    encode(&GL2Dto {
        format: Some(FORMAT),
        q: p.q.get(),
        kind,
    })
}

pub fn gl2_from_json(src: &str) -> Result<GL2Param> {
    let dto: GL2Dto = decode(src)?;
    let q = ResidueCard::new(dto.q)?;
    Ok(match dto.kind {
        KindDto::Supercuspidal { weight } => GL2Param::supercuspidal(q, weight.value()?),
        KindDto::Steinberg { psi } => GL2Param::steinberg(q, psi.value()?),
        KindDto::PrincipalSeries { psi1, psi2 } => {
            GL2Param::principal_series(q, psi1.value()?, psi2.value()?)
        }
    })
}

/// `{"format": 1, ...fields}`.
pub fn envelope(fields: Value) -> Value {
    let mut out = json!({ "format": FORMAT });
    if let (Some(o), Value::Object(f)) = (out.as_object_mut(), fields) {
        o.extend(f);
    }
    out
}

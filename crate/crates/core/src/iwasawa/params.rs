use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Scalar, ScalarParseError};

pub const PARAM_NAMES: [&str; 6] = ["t11", "t12", "t21", "t22", "t31", "t32"];

#[derive(Debug, Error)]
pub enum ParamsError {
    #[error("unknown parameter {0:?} (expected t11, t12, t21, t22, t31, t32 or t)")]
    UnknownName(String),
    #[error("parameter {0:?} given twice")]
    Repeated(String),
    #[error("expected name=value, got {0:?}")]
    Syntax(String),
    #[error("value of {name}: {source}")]
    Value {
        name: String,
        #[source]
        source: ScalarParseError,
    },
}

/// The six Kuranishi coordinates `t₁₁, t₁₂, t₂₁, t₂₂, t₃₁, t₃₂`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IwasawaParams {
    pub t11: Scalar,
    pub t12: Scalar,
    pub t21: Scalar,
    pub t22: Scalar,
    pub t31: Scalar,
    pub t32: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Case {
    /// `t₁₁ = t₁₂ = t₂₁ = t₂₂ = 0`.
    I,
    /// Some of `t₁₁..t₂₂` nonzero, `D(t) = 0`.
    II,
    /// `D(t) ≠ 0`.
    III,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
        })
    }
}

impl IwasawaParams {
    pub fn zero() -> Self {
        Self::from_array(std::array::from_fn(|_| Scalar::zero()))
    }

    pub fn from_array([t11, t12, t21, t22, t31, t32]: [Scalar; 6]) -> Self {
        Self { t11, t12, t21, t22, t31, t32 }
    }

    pub fn to_array(&self) -> [Scalar; 6] {
        [
            self.t11.clone(),
            self.t12.clone(),
            self.t21.clone(),
            self.t22.clone(),
            self.t31.clone(),
            self.t32.clone(),
        ]
    }

    /// Real rational tuple from `(num, den)` pairs.
    pub fn from_ratios(values: [(i64, i64); 6]) -> Self {
        Self::from_array(values.map(|(n, d)| Scalar::ratio(n, d)))
    }

    /// `t_{iλ}` with `i ∈ 1..=3`, `λ ∈ 1..=2`.
    pub fn get(&self, i: usize, lambda: usize) -> &Scalar {
        match (i, lambda) {
            (1, 1) => &self.t11,
            (1, 2) => &self.t12,
            (2, 1) => &self.t21,
            (2, 2) => &self.t22,
            (3, 1) => &self.t31,
            (3, 2) => &self.t32,
            _ => panic!("no parameter t{i}{lambda}"),
        }
    }

    fn slot(&mut self, name: &str) -> Option<&mut Scalar> {
        Some(match name {
            "t11" => &mut self.t11,
            "t12" => &mut self.t12,
            "t21" => &mut self.t21,
            "t22" => &mut self.t22,
            "t31" => &mut self.t31,
            "t32" => &mut self.t32,
            _ => return None,
        })
    }

    /// `D(t) = t₁₁t₂₂ − t₂₁t₁₂`.
    pub fn discriminant(&self) -> Scalar {
        &self.t11 * &self.t22 - &self.t21 * &self.t12
    }

    pub fn case(&self) -> Case {
        let linear_zero = [&self.t11, &self.t12, &self.t21, &self.t22].iter().all(|t| t.is_zero());
        if linear_zero {
            Case::I
        } else if self.discriminant().is_zero() {
            Case::II
        } else {
            Case::III
        }
    }
}

pub fn case_of(t: &IwasawaParams) -> Case {
    t.case()
}

impl fmt::Display for IwasawaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let values = self.to_array();
        let parts: Vec<String> = PARAM_NAMES
            .iter()
            .zip(values.iter())
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for IwasawaParams {
    type Err = ParamsError;

    /// `"t11=1/2,t22=1/2+i"`; omitted entries are 0, and `t=<v>` sets all
    /// six at once (so `"t=0"` is the origin). An empty string is the origin.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Self::zero();
        let mut seen: Vec<String> = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| ParamsError::Syntax(item.to_string()))?;
            let name = name.trim();
            let v: Scalar = value.trim().parse().map_err(|source| ParamsError::Value {
                name: name.to_string(),
                source,
            })?;
            if seen.iter().any(|n| n == name) {
                return Err(ParamsError::Repeated(name.to_string()));
            }
            seen.push(name.to_string());
            if name == "t" {
                for n in PARAM_NAMES {
                    *out.slot(n).expect("known") = v.clone();
                }
                continue;
            }
            *out.slot(name).ok_or_else(|| ParamsError::UnknownName(name.to_string()))? = v;
        }
        Ok(out)
    }
}

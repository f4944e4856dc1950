//! JSON specs for generators, negations, bijections, connectives and
//! implications. Every spec is an object tagged by `"kind"`:
//!
//! ```json
//! {"kind": "ign", "g": {"kind": "power_gp", "p": 2}, "N": {"kind": "yager_np", "p": 2}}
//! ```
//!
//! Specs are plain `f64` data; [`ImplicationSpec::build`] and friends turn
//! them into operators over any [`Scalar`].

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classes::build_intersection_member;
use crate::connectives::{BasicTNorm, BinaryConnective, Negation};
use crate::error::{Error, Result};
use crate::generators::{Direction, Generator};
use crate::implications::{Bijection, ImplicationCandidate};
use crate::interp::BilinearGrid;
use crate::properties::{BinaryOperator, CLOSED_FORM_TOL, NUMERIC_TOL};
use crate::scalar::Scalar;
use crate::surface::SurfaceGrid;

fn lit_points<S: Scalar>(points: &[(f64, f64)]) -> Vec<(S, S)> {
    points.iter().map(|&(x, y)| (S::lit(x), S::lit(y))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// `(1-x)^p`
    YagerF { p: f64 },
    /// `x^p`
    YagerG { p: f64 },
    /// `1-(1-x)^p`
    PowerGp { p: f64 },
    NegLog,
    PiecewiseF,
    Table { direction: Direction, points: Vec<(f64, f64)> },
}

impl GeneratorSpec {
    /// Whether the pseudo-inverse falls back to bisection.
    pub fn numeric(&self) -> bool {
        matches!(self, GeneratorSpec::Table { .. })
    }

    pub fn build<S: Scalar>(&self) -> Result<Generator<S>> {
        match self {
            GeneratorSpec::YagerF { p } => Generator::yager(S::lit(*p)),
            GeneratorSpec::YagerG { p } => Generator::yager_conorm(S::lit(*p)),
            GeneratorSpec::PowerGp { p } => Generator::power_complement(S::lit(*p)),
            GeneratorSpec::NegLog => Ok(Generator::neg_log()),
            GeneratorSpec::PiecewiseF => Ok(Generator::piecewise()),
            GeneratorSpec::Table { direction, points } => Generator::table(*direction, &lit_points(points)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BijectionSpec {
    Identity,
    Power { a: f64 },
    Cosine,
    Table { points: Vec<(f64, f64)> },
}

impl BijectionSpec {
    pub fn build<S: Scalar>(&self) -> Result<Bijection<S>> {
        match self {
            BijectionSpec::Identity => Ok(Bijection::identity()),
            BijectionSpec::Power { a } => Bijection::power(S::lit(*a)),
            BijectionSpec::Cosine => Ok(Bijection::cosine()),
            BijectionSpec::Table { points } => Bijection::table(&lit_points(points)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NegationSpec {
    Standard,
    /// `1 - (1 - (1-x)^p)^(1/p)`
    YagerNp { p: f64 },
    PhiConjugate { phi: BijectionSpec },
    Dual { of: Box<NegationSpec> },
    Table { points: Vec<(f64, f64)> },
}

impl NegationSpec {
    pub fn build<S: Scalar>(&self) -> Result<Negation<S>> {
        match self {
            NegationSpec::Standard => Ok(Negation::standard()),
            NegationSpec::YagerNp { p } => Negation::yager(S::lit(*p)),
            NegationSpec::PhiConjugate { phi } => Ok(Negation::phi_conjugate(&phi.build()?)),
            NegationSpec::Dual { of } => Ok(of.build()?.dual()),
            NegationSpec::Table { points } => Negation::table(&lit_points(points)),
        }
    }
}

/// A Yager parameter: a number, or `"inf"` for the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum YagerParam {
    Number(f64),
    Named(InfinityName),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfinityName {
    #[serde(rename = "inf", alias = "+inf", alias = "infinity", alias = "Infinity")]
    Inf,
}

impl YagerParam {
    pub fn value(self) -> f64 {
        match self {
            YagerParam::Number(p) => p,
            YagerParam::Named(InfinityName::Inf) => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConnectiveSpec {
    Basic { name: BasicTNorm },
    YagerTnorm { p: YagerParam },
    GeneratedTnorm { f: GeneratorSpec },
    GeneratedTconorm { g: GeneratorSpec },
    Dual { of: Box<ConnectiveSpec> },
    /// `sqrt((x² + y²)/2)`
    Mean,
    /// Either inline `values[i][j]` on the uniform grid, or a surface CSV.
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        values: Option<Vec<Vec<f64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        csv: Option<PathBuf>,
    },
    /// `S(x,y) = I(1-x, y)`
    ConormFromImplication { of: Box<ImplicationSpec> },
    PiecewiseConorm,
}

impl ConnectiveSpec {
    /// Whether evaluation involves a bisection or a numeric residual.
    pub fn numeric(&self) -> bool {
        match self {
            ConnectiveSpec::GeneratedTnorm { f: g } | ConnectiveSpec::GeneratedTconorm { g } => g.numeric(),
            ConnectiveSpec::Dual { of } => of.numeric(),
            ConnectiveSpec::ConormFromImplication { of } => of.numeric(),
            _ => false,
        }
    }

    pub fn build<S: Scalar>(&self) -> Result<BinaryConnective<S>> {
        match self {
            ConnectiveSpec::Basic { name } => Ok(BinaryConnective::basic(*name)),
            ConnectiveSpec::YagerTnorm { p } => BinaryConnective::yager(S::lit(p.value())),
            ConnectiveSpec::GeneratedTnorm { f } => BinaryConnective::generated_tnorm(&f.build()?),
            ConnectiveSpec::GeneratedTconorm { g } => BinaryConnective::generated_tconorm(&g.build()?),
            ConnectiveSpec::Dual { of } => Ok(of.build()?.dual()),
            ConnectiveSpec::Mean => Ok(BinaryConnective::mean()),
            ConnectiveSpec::Table { values: Some(v), csv: None } => {
                let values = v.iter().map(|row| row.iter().map(|&x| S::lit(x)).collect()).collect();
                Ok(BinaryConnective::table(BilinearGrid::new(values)?))
            }
            ConnectiveSpec::Table { values: None, csv: Some(path) } => SurfaceGrid::<S>::read_csv(path)?.to_connective(),
            ConnectiveSpec::Table { .. } => {
                Err(Error::Config("table needs exactly one of \"values\" or \"csv\"".into()))
            }
            ConnectiveSpec::ConormFromImplication { of } => Ok(BinaryConnective::from_implication(&of.build()?)),
            ConnectiveSpec::PiecewiseConorm => Ok(BinaryConnective::piecewise_conorm()),
        }
    }
}

/// The base of a φ-conjugate: a full spec or the bare name of a
/// parameterless implication such as `"lukasiewicz"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImplicationRef {
    Name(String),
    Spec(Box<ImplicationSpec>),
}

impl ImplicationRef {
    fn resolve(&self) -> Result<ImplicationSpec> {
        match self {
            ImplicationRef::Spec(s) => Ok((**s).clone()),
            ImplicationRef::Name(name) => {
                serde_json::from_value(serde_json::json!({ "kind": name })).map_err(|e| {
                    Error::Config(format!("{name:?} is not a parameterless implication: {e}"))
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ImplicationSpec {
    YagerResidual { p: f64 },
    Residual { of: ConnectiveSpec },
    Ig { g: GeneratorSpec },
    Ign {
        g: GeneratorSpec,
        #[serde(rename = "N", alias = "n")]
        n: NegationSpec,
    },
    Sn {
        #[serde(rename = "S", alias = "s")]
        s: ConnectiveSpec,
        #[serde(rename = "N", alias = "n")]
        n: NegationSpec,
    },
    PhiConjugate { base: ImplicationRef, phi: BijectionSpec },
    Lukasiewicz,
    MeanResidual,
    PiecewiseF,
    IntersectionMember { phi: BijectionSpec },
}

impl ImplicationSpec {
    pub const KINDS: [&'static str; 10] = [
        "yager_residual",
        "residual",
        "ig",
        "ign",
        "sn",
        "phi_conjugate",
        "lukasiewicz",
        "mean_residual",
        "piecewise_f",
        "intersection_member",
    ];

    pub fn numeric(&self) -> bool {
        match self {
            ImplicationSpec::Residual { .. } => true,
            ImplicationSpec::Ig { g } | ImplicationSpec::Ign { g, .. } => g.numeric(),
            ImplicationSpec::Sn { s, .. } => s.numeric(),
            ImplicationSpec::PhiConjugate { base, .. } => base.resolve().map(|b| b.numeric()).unwrap_or(false),
            _ => false,
        }
    }

    pub fn build<S: Scalar>(&self) -> Result<ImplicationCandidate<S>> {
        match self {
            ImplicationSpec::YagerResidual { p } => ImplicationCandidate::yager_residual(S::lit(*p)),
            ImplicationSpec::Residual { of } => Ok(ImplicationCandidate::residual_of(&of.build()?)),
            ImplicationSpec::Ig { g } => ImplicationCandidate::ig(&g.build()?),
            ImplicationSpec::Ign { g, n } => ImplicationCandidate::ign(&g.build()?, &n.build()?),
            ImplicationSpec::Sn { s, n } => Ok(ImplicationCandidate::sn(&s.build()?, &n.build()?)),
            ImplicationSpec::PhiConjugate { base, phi } => {
                Ok(base.resolve()?.build::<S>()?.phi_conjugate(&phi.build()?))
            }
            ImplicationSpec::Lukasiewicz => Ok(ImplicationCandidate::lukasiewicz()),
            ImplicationSpec::MeanResidual => Ok(ImplicationCandidate::mean_residual()),
            ImplicationSpec::PiecewiseF => Ok(ImplicationCandidate::piecewise_f()),
            ImplicationSpec::IntersectionMember { phi } => Ok(build_intersection_member(&phi.build()?)),
        }
    }
}

/// A binary operator spec: implication kinds take precedence, anything
/// else is read as a connective.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Implication(ImplicationSpec),
    Connective(ConnectiveSpec),
}

impl OperatorSpec {
    pub fn from_value(v: Value) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Config("spec needs a string \"kind\" field".into()))?;
        if ImplicationSpec::KINDS.contains(&kind) {
            Ok(OperatorSpec::Implication(serde_json::from_value(v)?))
        } else {
            Ok(OperatorSpec::Connective(serde_json::from_value(v)?))
        }
    }

    /// Suggested tolerance: 1e-6 when a numeric residual or bisection is
    /// involved, 1e-9 otherwise.
    pub fn default_tolerance(&self) -> f64 {
        let numeric = match self {
            OperatorSpec::Implication(s) => s.numeric(),
            OperatorSpec::Connective(s) => s.numeric(),
        };
        if numeric {
            NUMERIC_TOL
        } else {
            CLOSED_FORM_TOL
        }
    }

    pub fn build<S: Scalar>(&self) -> Result<Operator<S>> {
        Ok(match self {
            OperatorSpec::Implication(s) => Operator::Implication(s.build()?),
            OperatorSpec::Connective(s) => Operator::Connective(s.build()?),
        })
    }
}

pub enum Operator<S> {
    Implication(ImplicationCandidate<S>),
    Connective(BinaryConnective<S>),
}

impl<S: Scalar> Operator<S> {
    pub fn implication(&self) -> Option<&ImplicationCandidate<S>> {
        match self {
            Operator::Implication(i) => Some(i),
            Operator::Connective(_) => None,
        }
    }

    pub fn connective(&self) -> Option<&BinaryConnective<S>> {
        match self {
            Operator::Connective(c) => Some(c),
            Operator::Implication(_) => None,
        }
    }
}

impl<S: Scalar> BinaryOperator<S> for Operator<S> {
    fn apply(&self, x: S, y: S) -> S {
        match self {
            Operator::Implication(i) => i.eval(x, y),
            Operator::Connective(c) => c.eval(x, y),
        }
    }

    fn name(&self) -> &str {
        match self {
            Operator::Implication(i) => i.label(),
            Operator::Connective(c) => c.label(),
        }
    }
}

/// Reads a spec argument: inline JSON (starting with `{`), a path to a
/// JSON file, or a bare kind name such as `lukasiewicz`.
pub fn load_value(arg: &str) -> Result<Value> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        return Ok(serde_json::from_str(trimmed)?);
    }
    let path = Path::new(trimmed);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        return Ok(serde_json::from_str(&text)?);
    }
    if !trimmed.is_empty() && trimmed.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Ok(serde_json::json!({ "kind": trimmed }));
    }
    Err(Error::Config(format!("{arg:?} is neither inline JSON nor a readable file")))
}

pub fn load<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    Ok(serde_json::from_value(load_value(arg)?)?)
}

pub fn load_operator(arg: &str) -> Result<OperatorSpec> {
    OperatorSpec::from_value(load_value(arg)?)
}

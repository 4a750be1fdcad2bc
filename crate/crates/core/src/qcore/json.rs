//! JSON file formats for matrices, states, POVMs and instruments.
//!
//! ```text
//! matrix:     {"d": 2, "re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]]}   (row-major)
//! state:      {"re": [...], "im": [...]}
//! povm:       {"effects": [matrix, ...]}
//! instrument: {"kraus": [[matrix, ...], ...]}                         (one list per outcome)
//! ```
//!
//! The `*Json` structs are the raw wire shapes. Converting them to domain
//! types validates them and reports the offending field path on failure.

use serde::{Deserialize, Serialize};

use super::linalg::{c64, ComplexMatrix};
use super::observable::{Instrument, Povm};
use super::state::PureState;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub d: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PovmJson {
    pub effects: Vec<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstrumentJson {
    pub kraus: Vec<Vec<MatrixJson>>,
}

fn malformed(field: &str, reason: impl Into<String>) -> Error {
    Error::Malformed { field: field.to_string(), reason: reason.into() }
}

/// Prefixes the field path of a validation error raised below `field`.
fn at(field: &str, err: Error) -> Error {
    match err {
        Error::Malformed { field: inner, reason } => Error::Malformed { field: format!("{field}.{inner}"), reason },
        other => Error::Malformed { field: field.to_string(), reason: other.to_string() },
    }
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let d = m.nrows();
        let rows = |f: fn(&c64) -> f64| (0..d).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect();
        Self { d, re: rows(|z| z.re), im: rows(|z| z.im) }
    }

    /// Square matrix, shape checked against `d`.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let d = self.d;
        if d == 0 {
            return Err(malformed("d", "dimension must be positive"));
        }
        for (name, part) in [("re", &self.re), ("im", &self.im)] {
            if part.len() != d {
                return Err(malformed(name, format!("expected {d} rows, found {}", part.len())));
            }
            for (i, row) in part.iter().enumerate() {
                if row.len() != d {
                    return Err(malformed(
                        &format!("{name}[{i}]"),
                        format!("expected {d} columns, found {}", row.len()),
                    ));
                }
                if let Some(j) = row.iter().position(|x| !x.is_finite()) {
                    return Err(malformed(&format!("{name}[{i}][{j}]"), "non-finite entry"));
                }
            }
        }
        Ok(ComplexMatrix::from_fn(d, d, |i, j| c64::new(self.re[i][j], self.im[i][j])))
    }
}

impl From<&PureState> for StateJson {
    fn from(psi: &PureState) -> Self {
        Self {
            re: psi.amplitudes().iter().map(|z| z.re).collect(),
            im: psi.amplitudes().iter().map(|z| z.im).collect(),
        }
    }
}

impl From<PureState> for StateJson {
    fn from(psi: PureState) -> Self {
        (&psi).into()
    }
}

impl StateJson {
    /// Normalizes within `1e-12`; the amplitudes themselves must be finite.
    pub fn to_state(&self) -> Result<PureState> {
        if self.re.len() != self.im.len() {
            return Err(malformed("im", format!("expected {} entries, found {}", self.re.len(), self.im.len())));
        }
        let amps = self.re.iter().zip(&self.im).map(|(&r, &i)| c64::new(r, i)).collect();
        PureState::new(amps).map_err(|e| malformed("re", e.to_string()))
    }
}

impl TryFrom<StateJson> for PureState {
    type Error = Error;
    fn try_from(value: StateJson) -> Result<Self> {
        value.to_state()
    }
}

impl From<Povm> for PovmJson {
    fn from(p: Povm) -> Self {
        Self { effects: p.effects().iter().map(MatrixJson::from_matrix).collect() }
    }
}

impl PovmJson {
    pub fn to_povm(&self) -> Result<Povm> {
        if self.effects.is_empty() {
            return Err(malformed("effects", "empty"));
        }
        let effects = self
            .effects
            .iter()
            .enumerate()
            .map(|(i, m)| m.to_matrix().map_err(|e| at(&format!("effects[{i}]"), e)))
            .collect::<Result<Vec<_>>>()?;
        check_shared_dim(effects.iter().map(|m| m.nrows()), |i| format!("effects[{i}].d"))?;
        Povm::new(effects).map_err(|e| malformed("effects", e.to_string()))
    }
}

impl TryFrom<PovmJson> for Povm {
    type Error = Error;
    fn try_from(value: PovmJson) -> Result<Self> {
        value.to_povm()
    }
}

impl From<Instrument> for InstrumentJson {
    fn from(inst: Instrument) -> Self {
        Self { kraus: inst.kraus().iter().map(|ops| ops.iter().map(MatrixJson::from_matrix).collect()).collect() }
    }
}

impl InstrumentJson {
    pub fn to_instrument(&self) -> Result<Instrument> {
        if self.kraus.is_empty() {
            return Err(malformed("kraus", "empty"));
        }
        let mut kraus = Vec::with_capacity(self.kraus.len());
        for (i, ops) in self.kraus.iter().enumerate() {
            if ops.is_empty() {
                return Err(malformed(&format!("kraus[{i}]"), "outcome has no Kraus operators"));
            }
            let mats = ops
                .iter()
                .enumerate()
                .map(|(k, m)| m.to_matrix().map_err(|e| at(&format!("kraus[{i}][{k}]"), e)))
                .collect::<Result<Vec<_>>>()?;
            kraus.push(mats);
        }
        let dims: Vec<(usize, usize, usize)> = kraus
            .iter()
            .enumerate()
            .flat_map(|(i, ops)| ops.iter().enumerate().map(move |(k, m)| (i, k, m.nrows())))
            .collect();
        if let Some(&(i, k, d)) = dims.iter().find(|(_, _, d)| *d != dims[0].2) {
            return Err(malformed(&format!("kraus[{i}][{k}].d"), format!("expected {}, found {d}", dims[0].2)));
        }
        Instrument::new(kraus).map_err(|e| malformed("kraus", e.to_string()))
    }
}

impl TryFrom<InstrumentJson> for Instrument {
    type Error = Error;
    fn try_from(value: InstrumentJson) -> Result<Self> {
        value.to_instrument()
    }
}

fn check_shared_dim(dims: impl Iterator<Item = usize>, field: impl Fn(usize) -> String) -> Result<()> {
    let dims: Vec<usize> = dims.collect();
    if let Some(i) = dims.iter().position(|&d| d != dims[0]) {
        return Err(malformed(&field(i), format!("expected {}, found {}", dims[0], dims[i])));
    }
    Ok(())
}

/// Input file for optimization runs: exactly one of the three lists is given.
///
/// * `observables` – Hermitian matrices, measured projectively
/// * `povms` – effect lists
/// * `instruments` – explicit Kraus operators
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observables: Option<Vec<MatrixJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub povms: Option<Vec<PovmJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instruments: Option<Vec<InstrumentJson>>,
}

/// Validated content of a [`MeasurementSpec`].
#[derive(Clone, Debug)]
pub enum Measurements {
    Observables(Vec<ComplexMatrix>),
    Povms(Vec<Povm>),
    Instruments(Vec<Instrument>),
}

impl MeasurementSpec {
    pub fn observables(list: &[ComplexMatrix]) -> Self {
        Self { observables: Some(list.iter().map(MatrixJson::from_matrix).collect()), ..Self::default() }
    }

    pub fn povms(list: &[Povm]) -> Self {
        Self { povms: Some(list.iter().cloned().map(PovmJson::from).collect()), ..Self::default() }
    }

    pub fn instruments(list: &[Instrument]) -> Self {
        Self { instruments: Some(list.iter().cloned().map(InstrumentJson::from).collect()), ..Self::default() }
    }

    /// Parses and validates a spec, naming the offending field on failure.
    pub fn parse(text: &str) -> Result<Measurements> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let spec: MeasurementSpec = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            malformed(if path.is_empty() || path == "." { "<root>" } else { &path }, e.into_inner().to_string())
        })?;
        spec.validate()
    }

    pub fn validate(&self) -> Result<Measurements> {
        let given = [self.observables.is_some(), self.povms.is_some(), self.instruments.is_some()];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(malformed("<root>", "expected exactly one of `observables`, `povms`, `instruments`"));
        }
        let out = if let Some(list) = &self.observables {
            let mats = list
                .iter()
                .enumerate()
                .map(|(i, m)| m.to_matrix().map_err(|e| at(&format!("observables[{i}]"), e)))
                .collect::<Result<Vec<_>>>()?;
            for (i, m) in mats.iter().enumerate() {
                super::linalg::ensure_hermitian(m, super::linalg::HERMITIAN_TOL)
                    .map_err(|e| malformed(&format!("observables[{i}]"), e.to_string()))?;
            }
            check_shared_dim(mats.iter().map(|m| m.nrows()), |i| format!("observables[{i}].d"))?;
            Measurements::Observables(mats)
        } else if let Some(list) = &self.povms {
            let povms = list
                .iter()
                .enumerate()
                .map(|(i, p)| p.to_povm().map_err(|e| at(&format!("povms[{i}]"), e)))
                .collect::<Result<Vec<_>>>()?;
            check_shared_dim(povms.iter().map(Povm::dim), |i| format!("povms[{i}]"))?;
            Measurements::Povms(povms)
        } else {
            let list = self.instruments.as_ref().expect("checked above");
            let insts = list
                .iter()
                .enumerate()
                .map(|(i, p)| p.to_instrument().map_err(|e| at(&format!("instruments[{i}]"), e)))
                .collect::<Result<Vec<_>>>()?;
            check_shared_dim(insts.iter().map(Instrument::dim), |i| format!("instruments[{i}]"))?;
            Measurements::Instruments(insts)
        };
        let empty = match &out {
            Measurements::Observables(v) => v.is_empty(),
            Measurements::Povms(v) => v.is_empty(),
            Measurements::Instruments(v) => v.is_empty(),
        };
        if empty {
            return Err(malformed("<root>", "measurement list is empty"));
        }
        Ok(out)
    }
}

//! JSON file formats and result records.
//!
//! Complex matrices are arrays of rows, each entry a `[re, im]` pair:
//!
//! ```json
//! [[[0.5, 0.0], [0.0, -0.5]],
//!  [[0.0, 0.5], [0.5, 0.0]]]
//! ```
//!
//! A state file holds one such matrix. Operator-list files (POVMs, projector
//! sequences) are `{"elements": [m1, m2, ...]}`. A channel file is
//! `{"dim_b": 2, "inputs": [{"symbol": "0", "prob": 0.5, "state": m}, ...]}`
//! and a codebook file is `{"codewords": ["0", "1", ...]}`.
//!
//! Non-finite reals in result records are written as the strings `"inf"`,
//! `"-inf"` and `"nan"`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::decoder::{Codebook, CqChannel};
use crate::dilation::Povm;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityOperator, HermitianOperator, Seed};

/// Tolerance on the sum of a channel file's input probabilities.
pub const PRIOR_SUM_TOL: f64 = 1e-9;

pub type MatrixLiteral = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_literal(m: &ComplexMatrix) -> MatrixLiteral {
    m.row_iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn matrix_from_literal(lit: &MatrixLiteral) -> Result<ComplexMatrix> {
    let n = lit.len();
    if n == 0 {
        return Err(Error::Validation("matrix has no rows".into()));
    }
    for (i, row) in lit.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Validation(format!(
                "row {i} has {} entries, expected {n} (matrices must be square)",
                row.len()
            )));
        }
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        let [re, im] = lit[i][j];
        num_complex::Complex64::new(re, im)
    }))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{origin}: {e}")))
}

fn context(origin: &str, e: Error) -> Error {
    match e {
        Error::Validation(msg) => Error::Validation(format!("{origin}: {msg}")),
        other if other.is_validation() => Error::Validation(format!("{origin}: {other}")),
        other => other,
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn parse_state(text: &str, origin: &str) -> Result<DensityOperator> {
    let lit: MatrixLiteral = parse(text, origin)?;
    matrix_from_literal(&lit)
        .and_then(DensityOperator::new)
        .map_err(|e| context(origin, e))
}

pub fn load_state(path: impl AsRef<Path>) -> Result<DensityOperator> {
    let path = path.as_ref();
    parse_state(&read(path)?, &path.display().to_string())
}

pub fn save_state(path: impl AsRef<Path>, rho: &DensityOperator) -> Result<()> {
    write_json(path.as_ref(), &matrix_to_literal(rho.matrix()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorListFile {
    elements: Vec<MatrixLiteral>,
}

/// Hermitian operators of an `{"elements": [...]}` file, in order.
pub fn parse_operators(text: &str, origin: &str) -> Result<Vec<HermitianOperator>> {
    let file: OperatorListFile = parse(text, origin)?;
    if file.elements.is_empty() {
        return Err(Error::Validation(format!("{origin}: \"elements\" is empty")));
    }
    file.elements
        .iter()
        .enumerate()
        .map(|(i, lit)| {
            matrix_from_literal(lit)
                .and_then(HermitianOperator::new)
                .map_err(|e| context(&format!("{origin}: element {i}"), e))
        })
        .collect()
}

pub fn load_operators(path: impl AsRef<Path>) -> Result<Vec<HermitianOperator>> {
    let path = path.as_ref();
    parse_operators(&read(path)?, &path.display().to_string())
}

pub fn save_operators(path: impl AsRef<Path>, ops: &[HermitianOperator]) -> Result<()> {
    let file = OperatorListFile {
        elements: ops.iter().map(|op| matrix_to_literal(op.matrix())).collect(),
    };
    write_json(path.as_ref(), &file)
}

pub fn load_povm(path: impl AsRef<Path>) -> Result<Povm> {
    let path = path.as_ref();
    let origin = path.display().to_string();
    Povm::new(parse_operators(&read(path)?, &origin)?).map_err(|e| context(&origin, e))
}

pub fn save_povm(path: impl AsRef<Path>, povm: &Povm) -> Result<()> {
    save_operators(path, povm.elements())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelInput {
    symbol: String,
    prob: f64,
    state: MatrixLiteral,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelFile {
    dim_b: usize,
    inputs: Vec<ChannelInput>,
}

/// A channel and the input distribution stored with it. The probabilities
/// are rescaled to sum to 1 exactly once they pass the tolerance check.
pub fn parse_channel(text: &str, origin: &str) -> Result<(CqChannel, Vec<f64>)> {
    let file: ChannelFile = parse(text, origin)?;
    if file.inputs.is_empty() {
        return Err(Error::Validation(format!("{origin}: \"inputs\" is empty")));
    }
    let mut symbols = Vec::with_capacity(file.inputs.len());
    let mut outputs = Vec::with_capacity(file.inputs.len());
    let mut prior = Vec::with_capacity(file.inputs.len());
    for input in &file.inputs {
        let at = format!("{origin}: input {:?}", input.symbol);
        if !input.prob.is_finite() || input.prob < 0.0 {
            return Err(Error::Validation(format!("{at}: prob {} is not a probability", input.prob)));
        }
        if symbols.contains(&input.symbol) {
            return Err(Error::Validation(format!("{at}: duplicate symbol")));
        }
        let m = matrix_from_literal(&input.state).map_err(|e| context(&at, e))?;
        if m.nrows() != file.dim_b {
            return Err(Error::Validation(format!(
                "{at}: state has dimension {}, but dim_b is {}",
                m.nrows(),
                file.dim_b
            )));
        }
        let rho = DensityOperator::new(m)
            .map_err(|e| Error::Validation(format!("{at}: state is not a valid density operator: {e}")))?;
        symbols.push(input.symbol.clone());
        outputs.push(rho);
        prior.push(input.prob);
    }
    let total: f64 = prior.iter().sum();
    if (total - 1.0).abs() > PRIOR_SUM_TOL + f64::EPSILON {
        return Err(Error::Validation(format!(
            "{origin}: prior sum {total} differs from 1 by more than {PRIOR_SUM_TOL:e}"
        )));
    }
    prior.iter_mut().for_each(|p| *p /= total);
    let channel = CqChannel::new(symbols, outputs).map_err(|e| context(origin, e))?;
    Ok((channel, prior))
}

pub fn load_channel(path: impl AsRef<Path>) -> Result<(CqChannel, Vec<f64>)> {
    let path = path.as_ref();
    parse_channel(&read(path)?, &path.display().to_string())
}

pub fn save_channel(path: impl AsRef<Path>, channel: &CqChannel, prior: &[f64]) -> Result<()> {
    if prior.len() != channel.alphabet_size() {
        return Err(Error::shape(format!(
            "{} probabilities for {} symbols",
            prior.len(),
            channel.alphabet_size()
        )));
    }
    let file = ChannelFile {
        dim_b: channel.dim_b(),
        inputs: channel
            .symbols()
            .iter()
            .zip(channel.outputs())
            .zip(prior)
            .map(|((symbol, rho), &prob)| ChannelInput {
                symbol: symbol.clone(),
                prob,
                state: matrix_to_literal(rho.matrix()),
            })
            .collect(),
    };
    write_json(path.as_ref(), &file)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodebookFile {
    codewords: Vec<String>,
}

pub fn parse_codebook(text: &str, origin: &str, channel: &CqChannel) -> Result<Codebook> {
    let file: CodebookFile = parse(text, origin)?;
    Codebook::from_symbols(&file.codewords, channel).map_err(|e| match e {
        Error::Key(symbol) => Error::Validation(format!("{origin}: unknown channel symbol {symbol:?}")),
        other => context(origin, other),
    })
}

pub fn load_codebook(path: impl AsRef<Path>, channel: &CqChannel) -> Result<Codebook> {
    let path = path.as_ref();
    parse_codebook(&read(path)?, &path.display().to_string(), channel)
}

pub fn save_codebook(path: impl AsRef<Path>, codebook: &Codebook, channel: &CqChannel) -> Result<()> {
    let file = CodebookFile {
        codewords: codebook.symbols(channel).into_iter().map(String::from).collect(),
    };
    write_json(path.as_ref(), &file)
}

/// A real as JSON, with non-finite values spelled as strings.
pub fn real(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else if x.is_nan() {
        Value::from("nan")
    } else if x > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

pub fn reals(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| real(x)).collect())
}

/// Inverse of [`real`].
pub fn value_to_real(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => match s.as_str() {
            "inf" => Some(f64::INFINITY),
            "-inf" => Some(f64::NEG_INFINITY),
            "nan" => Some(f64::NAN),
            _ => None,
        },
        _ => None,
    }
}

pub fn matrix_value(m: &ComplexMatrix) -> Value {
    Value::Array(
        m.row_iter()
            .map(|row| Value::Array(row.iter().map(|z| Value::Array(vec![real(z.re), real(z.im)])).collect()))
            .collect(),
    )
}

/// Output of one command invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultRecord {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub seed: Seed,
    pub tool_version: String,
    pub wall_time_ms: f64,
}

impl ResultRecord {
    pub fn new(command: impl Into<String>, seed: Seed) -> Self {
        ResultRecord {
            command: command.into(),
            parameters: BTreeMap::new(),
            outputs: BTreeMap::new(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_ms: 0.0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output_real(&mut self, key: &str, x: f64) -> &mut Self {
        self.output(key, real(x))
    }

    /// Reads back an output written with [`real`].
    pub fn real_output(&self, key: &str) -> Option<f64> {
        self.outputs.get(key).and_then(value_to_real)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("records contain only JSON values");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        parse(text, "result record")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        parse(&read(path)?, &path.display().to_string())
    }

    /// The record with its timing zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        ResultRecord {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }
}

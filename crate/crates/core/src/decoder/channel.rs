use rand::distr::{weighted::WeightedIndex, Distribution};

use crate::error::{Error, Result};
use crate::hypothesis::CqJointState;
use crate::linalg::{c, tensor, ComplexVector, DensityOperator, Sampler};

/// Classical-quantum channel `x ↦ ρ_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct CqChannel {
    symbols: Vec<String>,
    outputs: Vec<DensityOperator>,
    dim_b: usize,
}

impl CqChannel {
    pub fn new(symbols: Vec<String>, outputs: Vec<DensityOperator>) -> Result<Self> {
        if outputs.is_empty() {
            return Err(Error::shape("a channel needs at least one input symbol"));
        }
        if symbols.len() != outputs.len() {
            return Err(Error::shape(format!(
                "{} symbols for {} output states",
                symbols.len(),
                outputs.len()
            )));
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::Validation(format!("duplicate channel symbol {s:?}")));
            }
        }
        let dim_b = outputs[0].dim();
        if let Some((x, _)) = outputs.iter().enumerate().find(|(_, o)| o.dim() != dim_b) {
            return Err(Error::shape(format!(
                "output for symbol {:?} has dimension {}, expected {dim_b}",
                symbols[x],
                outputs[x].dim()
            )));
        }
        Ok(CqChannel {
            symbols,
            outputs,
            dim_b,
        })
    }

    /// Channel with symbols `"0"`, `"1"`, ….
    pub fn from_outputs(outputs: Vec<DensityOperator>) -> Result<Self> {
        let symbols = (0..outputs.len()).map(|x| x.to_string()).collect();
        Self::new(symbols, outputs)
    }

    /// Qubit channel `x ↦ |ψ_x⟩⟨ψ_x|` with `|ψ_0⟩ = |0⟩` and real overlap
    /// `⟨ψ_0|ψ_1⟩ = overlap`.
    pub fn pure_qubit_pair(overlap: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&overlap) {
            return Err(Error::Parameter(format!("overlap {overlap} is outside [0, 1]")));
        }
        let psi0 = ComplexVector::from_vec(vec![c(1.0), c(0.0)]);
        let psi1 = ComplexVector::from_vec(vec![c(overlap), c((1.0 - overlap * overlap).sqrt())]);
        Self::from_outputs(vec![DensityOperator::pure(&psi0)?, DensityOperator::pure(&psi1)?])
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn outputs(&self) -> &[DensityOperator] {
        &self.outputs
    }

    pub fn output(&self, x: usize) -> &DensityOperator {
        &self.outputs[x]
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn alphabet_size(&self) -> usize {
        self.outputs.len()
    }

    pub fn symbol_index(&self, symbol: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::Key(symbol.to_string()))
    }

    /// `ρ_XB` for input distribution `prior`.
    pub fn joint_state(&self, prior: &[f64]) -> Result<CqJointState> {
        CqJointState::new(self.symbols.clone(), prior.to_vec(), self.outputs.clone())
    }

    /// `n` uses of the channel as one channel on strings of symbols
    /// (first symbol major in both the alphabet order and the output tensor).
    pub fn tensor_power(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("tensor power must be at least 1".into()));
        }
        let mut symbols = self.symbols.clone();
        let mut outputs = self.outputs.clone();
        for _ in 1..n {
            let mut next_symbols = Vec::with_capacity(symbols.len() * self.symbols.len());
            let mut next_outputs = Vec::with_capacity(symbols.len() * self.symbols.len());
            for (s, o) in symbols.iter().zip(&outputs) {
                for (t, p) in self.symbols.iter().zip(&self.outputs) {
                    next_symbols.push(format!("{s}{t}"));
                    next_outputs.push(DensityOperator::new(tensor(o.matrix(), p.matrix())?)?);
                }
            }
            symbols = next_symbols;
            outputs = next_outputs;
        }
        Self::new(symbols, outputs)
    }
}

/// Codewords `x_1 … x_M` as indices into a channel's alphabet (repeats allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    codewords: Vec<usize>,
}

impl Codebook {
    pub fn new(codewords: Vec<usize>, channel: &CqChannel) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::Parameter("a codebook needs at least one codeword".into()));
        }
        if let Some(&x) = codewords.iter().find(|&&x| x >= channel.alphabet_size()) {
            return Err(Error::Range {
                index: x,
                len: channel.alphabet_size(),
            });
        }
        Ok(Codebook { codewords })
    }

    pub fn from_symbols<S: AsRef<str>>(symbols: &[S], channel: &CqChannel) -> Result<Self> {
        let codewords = symbols
            .iter()
            .map(|s| channel.symbol_index(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(codewords, channel)
    }

    /// `M` codewords drawn i.i.d. from `prior`.
    pub fn sample(prior: &[f64], messages: usize, sampler: &mut Sampler) -> Result<Self> {
        if messages == 0 {
            return Err(Error::Parameter("a codebook needs at least one codeword".into()));
        }
        let dist = WeightedIndex::new(prior)
            .map_err(|e| Error::Parameter(format!("invalid prior: {e}")))?;
        let codewords = (0..messages).map(|_| dist.sample(sampler.rng())).collect();
        Ok(Codebook { codewords })
    }

    pub fn codewords(&self) -> &[usize] {
        &self.codewords
    }

    pub fn message_count(&self) -> usize {
        self.codewords.len()
    }

    pub fn symbols<'a>(&self, channel: &'a CqChannel) -> Vec<&'a str> {
        self.codewords
            .iter()
            .map(|&x| channel.symbols()[x].as_str())
            .collect()
    }
}

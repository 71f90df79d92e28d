//! Linear combinations of unitaries: `PREP† · SELECT · PREP`.
//!
//! Register layout of an assembled encoding, low to high:
//! work `[0, n)`, term ancillas, data register. Term `j` runs controlled on
//! the data register reading `j`; a negative sign becomes `Z X Z X = -I` on
//! work qubit 0 inside the controlled branch.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Control};
use crate::diag::{build_uc, build_us, uniformly_controlled_ry, SinusoidSpec, UcVariant};
use crate::encoding::{AncillaRegister, BlockEncoding};
use crate::error::{Error, Result};
use crate::linalg::{cos_diag, shift_left, shift_right, sin_diag, RMatrix};
use crate::shift::{build_shift, ShiftSpec};

fn one() -> u64 {
    1
}

fn plus() -> i8 {
    1
}

/// A unitary (or an `α = 1` block encoding) on the work register.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum TermOp {
    Identity,
    Cos {
        omega: f64,
        #[serde(default)]
        phi: f64,
    },
    Sin {
        omega: f64,
        #[serde(default)]
        phi: f64,
    },
    ShiftLeft {
        #[serde(default = "one")]
        power: u64,
    },
    ShiftRight {
        #[serde(default = "one")]
        power: u64,
    },
    /// Matrix product `factors[0] · factors[1] · …`; the last factor acts first.
    Product { factors: Vec<TermOp> },
}

/// A term circuit over `n + n_anc` qubits (work first, own ancillas above).
#[derive(Clone, Debug, PartialEq)]
pub struct EncodedTerm {
    pub circuit: Circuit,
    pub n_anc: usize,
}

impl TermOp {
    pub fn name(&self) -> &'static str {
        match self {
            TermOp::Identity => "identity",
            TermOp::Cos { .. } => "cos",
            TermOp::Sin { .. } => "sin",
            TermOp::ShiftLeft { .. } => "shift_left",
            TermOp::ShiftRight { .. } => "shift_right",
            TermOp::Product { .. } => "product",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            TermOp::Cos { omega, phi } | TermOp::Sin { omega, phi } if !(omega.is_finite() && phi.is_finite()) => {
                Err(Error::InvalidParameter(format!("non-finite sinusoid in `{}` term", self.name())))
            }
            TermOp::Product { factors } if factors.is_empty() => Err(Error::InvalidParameter("empty product term".into())),
            TermOp::Product { factors } => factors.iter().try_for_each(TermOp::validate),
            _ => Ok(()),
        }
    }

    /// Dense `N x N` reference matrix of the encoded operator.
    pub fn matrix(&self, n: usize) -> RMatrix {
        let dim = 1usize << n;
        match self {
            TermOp::Identity => RMatrix::identity(dim, dim),
            TermOp::Cos { omega, phi } => cos_diag(dim, *omega, *phi),
            TermOp::Sin { omega, phi } => sin_diag(dim, *omega, *phi),
            TermOp::ShiftLeft { power } => pow(&shift_left(dim), *power % dim as u64),
            TermOp::ShiftRight { power } => pow(&shift_right(dim), *power % dim as u64),
            TermOp::Product { factors } => factors.iter().fold(RMatrix::identity(dim, dim), |acc, f| acc * f.matrix(n)),
        }
    }

    pub fn encode(&self, n: usize) -> Result<EncodedTerm> {
        self.validate()?;
        let sinusoid = |omega: f64, phi: f64| SinusoidSpec::new(omega, phi);
        Ok(match self {
            TermOp::Identity => EncodedTerm { circuit: Circuit::new(n), n_anc: 0 },
            TermOp::Cos { omega, phi } => EncodedTerm { circuit: build_uc(n, sinusoid(*omega, *phi), UcVariant::Select)?.circuit, n_anc: 1 },
            TermOp::Sin { omega, phi } => EncodedTerm { circuit: build_us(n, sinusoid(*omega, *phi))?.circuit, n_anc: 1 },
            TermOp::ShiftLeft { power } => EncodedTerm { circuit: build_shift(n, ShiftSpec::left(*power))?, n_anc: 0 },
            TermOp::ShiftRight { power } => EncodedTerm { circuit: build_shift(n, ShiftSpec::right(*power))?, n_anc: 0 },
            TermOp::Product { factors } => {
                let parts = factors.iter().rev().map(|f| f.encode(n)).collect::<Result<Vec<_>>>()?;
                let n_anc: usize = parts.iter().map(|p| p.n_anc).sum();
                let mut circuit = Circuit::new(n + n_anc);
                let mut offset = n;
                for p in parts {
                    let map: Vec<usize> = (0..n).chain(offset..offset + p.n_anc).collect();
                    circuit.append(&p.circuit.map_qubits(&map, n + n_anc)?)?;
                    offset += p.n_anc;
                }
                EncodedTerm { circuit, n_anc }
            }
        })
    }
}

fn pow(m: &RMatrix, s: u64) -> RMatrix {
    (0..s).fold(RMatrix::identity(m.nrows(), m.ncols()), |acc, _| acc * m)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LcuTerm {
    pub weight: f64,
    #[serde(default = "plus")]
    pub sign: i8,
    pub op: TermOp,
}

impl LcuTerm {
    pub fn new(weight: f64, sign: i8, op: TermOp) -> Self {
        LcuTerm { weight, sign, op }
    }

    /// `weight` and `sign` from a signed coefficient.
    pub fn signed(coefficient: f64, op: TermOp) -> Self {
        LcuTerm { weight: coefficient.abs(), sign: if coefficient < 0.0 { -1 } else { 1 }, op }
    }
}

/// How term ancillas are laid out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AncillaMode {
    /// Each term owns its ancillas.
    #[default]
    Separate,
    /// All terms reuse one register sized for the widest term.
    Shared,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LcuSpec {
    /// Work-register width.
    pub n: usize,
    pub terms: Vec<LcuTerm>,
    #[serde(default)]
    pub ancillas: AncillaMode,
}

impl LcuSpec {
    pub fn new(n: usize, terms: Vec<LcuTerm>) -> Self {
        LcuSpec { n, terms, ancillas: AncillaMode::Separate }
    }

    pub fn with_ancillas(mut self, mode: AncillaMode) -> Self {
        self.ancillas = mode;
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: LcuSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > 24 {
            return Err(Error::InvalidParameter(format!("work register width {} outside 1..=24", self.n)));
        }
        for t in &self.terms {
            if !(t.weight.is_finite() && t.weight >= 0.0) {
                return Err(Error::InvalidParameter(format!("LCU weight must be finite and nonnegative, got {}", t.weight)));
            }
            if t.sign != 1 && t.sign != -1 {
                return Err(Error::InvalidParameter(format!("LCU sign must be +1 or -1, got {}", t.sign)));
            }
            t.op.validate()?;
        }
        if !self.terms.iter().any(|t| t.weight > 0.0) {
            return Err(Error::InvalidParameter("LCU needs at least one positive weight".into()));
        }
        Ok(())
    }

    /// Terms with positive weight, in order.
    pub fn active_terms(&self) -> Vec<&LcuTerm> {
        self.terms.iter().filter(|t| t.weight > 0.0).collect()
    }

    pub fn alpha(&self) -> f64 {
        self.active_terms().iter().map(|t| t.weight).sum()
    }

    pub fn data_width(&self) -> usize {
        data_width(self.active_terms().len())
    }

    /// `Σ sign_j w_j U_j` as a dense matrix.
    pub fn dense_matrix(&self) -> RMatrix {
        let dim = 1usize << self.n;
        self.terms.iter().fold(RMatrix::zeros(dim, dim), |acc, t| acc + t.op.matrix(self.n) * (t.sign as f64 * t.weight))
    }
}

/// `ceil(log2 J)`.
pub fn data_width(terms: usize) -> usize {
    terms.max(1).next_power_of_two().trailing_zeros() as usize
}

/// `PREP|0> = Σ_j sqrt(w_j / Σw) |j>` on `ceil(log2 J)` qubits.
///
/// Binary tree of uniformly controlled `Ry`, top bit first. Equal weights on
/// a power-of-two count give plain Hadamards.
pub fn build_prep(weights: &[f64]) -> Result<Circuit> {
    if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(Error::InvalidParameter("PREP weights must be finite and nonnegative".into()));
    }
    if !weights.iter().any(|w| *w > 0.0) {
        return Err(Error::InvalidParameter("PREP needs at least one positive weight".into()));
    }
    let d = data_width(weights.len());
    let mut c = Circuit::new(d);
    if weights.len() == 1 << d && weights.iter().all(|w| *w == weights[0]) {
        for q in 0..d {
            c.h(q);
        }
        return Ok(c);
    }
    let mut padded = weights.to_vec();
    padded.resize(1 << d, 0.0);
    for level in (0..d).rev() {
        let prefixes = 1usize << (d - 1 - level);
        let block = 1usize << level;
        let angles: Vec<f64> = (0..prefixes)
            .map(|h| {
                let start = h * 2 * block;
                let m0: f64 = padded[start..start + block].iter().sum();
                let m1: f64 = padded[start + block..start + 2 * block].iter().sum();
                2.0 * m1.sqrt().atan2(m0.sqrt())
            })
            .collect();
        let controls: Vec<usize> = (level + 1..d).collect();
        c.append(&uniformly_controlled_ry(d, &controls, level, &angles)?)?;
    }
    Ok(c)
}

/// `Σ_j |j><j| ⊗ sign_j U_j` with `U_j = branches[j]`.
///
/// Branches live on the full register and must leave `data_qubits` alone.
pub fn build_select(branches: &[Circuit], signs: &[i8], data_qubits: &[usize], num_qubits: usize) -> Result<Circuit> {
    if signs.len() != branches.len() {
        return Err(Error::DimensionMismatch { expected: branches.len(), found: signs.len() });
    }
    if data_qubits.len() < usize::BITS as usize && branches.len() > 1usize << data_qubits.len() {
        return Err(Error::InvalidParameter(format!("{} terms do not fit a {}-qubit data register", branches.len(), data_qubits.len())));
    }
    let mut out = Circuit::new(num_qubits);
    for (j, (branch, &sign)) in branches.iter().zip(signs).enumerate() {
        let mut body = branch.widened(num_qubits);
        if sign < 0 {
            // Z X Z X = -I
            body.p(0, PI).x(0).p(0, PI).x(0);
        }
        let controls: Vec<Control> = data_qubits.iter().enumerate().map(|(b, &q)| Control { qubit: q, polarity: (j >> b) & 1 == 1 }).collect();
        out.append(&body.controlled(&controls)?)?;
    }
    Ok(out)
}

/// Assembles `PREP† · SELECT · PREP`; zero-weight terms are dropped first.
pub fn build_lcu(spec: &LcuSpec) -> Result<BlockEncoding> {
    spec.validate()?;
    let n = spec.n;
    let terms = spec.active_terms();
    let encoded = terms.iter().map(|t| t.op.encode(n)).collect::<Result<Vec<_>>>()?;
    let mut registers = Vec::new();
    let mut offsets = Vec::with_capacity(encoded.len());
    let mut next = n;
    match spec.ancillas {
        AncillaMode::Separate => {
            for (j, (t, e)) in terms.iter().zip(&encoded).enumerate() {
                offsets.push(next);
                if e.n_anc > 0 {
                    registers.push(AncillaRegister { name: format!("term{j}:{}", t.op.name()), start: next, len: e.n_anc });
                }
                next += e.n_anc;
            }
        }
        AncillaMode::Shared => {
            let widest = encoded.iter().map(|e| e.n_anc).max().unwrap_or(0);
            offsets = vec![n; encoded.len()];
            if widest > 0 {
                registers.push(AncillaRegister { name: "shared".into(), start: n, len: widest });
            }
            next += widest;
        }
    }
    let d = data_width(terms.len());
    let data: Vec<usize> = (next..next + d).collect();
    if d > 0 {
        registers.push(AncillaRegister { name: "data".into(), start: next, len: d });
    }
    let width = next + d;

    let branches = encoded
        .iter()
        .zip(&offsets)
        .map(|(e, &off)| {
            let map: Vec<usize> = (0..n).chain(off..off + e.n_anc).collect();
            e.circuit.map_qubits(&map, width)
        })
        .collect::<Result<Vec<_>>>()?;
    let signs: Vec<i8> = terms.iter().map(|t| t.sign).collect();
    let weights: Vec<f64> = terms.iter().map(|t| t.weight).collect();

    let prep = build_prep(&weights)?.map_qubits(&data, width)?;
    let mut c = prep.clone();
    c.append(&build_select(&branches, &signs, &data, width)?)?;
    c.append(&prep.adjoint())?;
    BlockEncoding::new(c, n, spec.alpha(), registers)
}

/// `±α₀ C(ω,φ) ± α₁ L ± α₂ R ± α₃ I`, data patterns 0..3 in that order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandedSpec {
    pub omega: f64,
    #[serde(default)]
    pub phi: f64,
    pub weights: [f64; 4],
    #[serde(default = "all_plus")]
    pub signs: [i8; 4],
}

fn all_plus() -> [i8; 4] {
    [1; 4]
}

impl BandedSpec {
    /// On a single qubit `L = R`, so their signed weights merge into one term.
    pub fn to_lcu(&self, n: usize) -> LcuSpec {
        let [w0, w1, w2, w3] = self.weights;
        let [s0, s1, s2, s3] = self.signs;
        let cos = LcuTerm::new(w0, s0, TermOp::Cos { omega: self.omega, phi: self.phi });
        let id = LcuTerm::new(w3, s3, TermOp::Identity);
        let terms = if n == 1 {
            let merged = s1 as f64 * w1 + s2 as f64 * w2;
            vec![cos, LcuTerm::signed(merged, TermOp::ShiftLeft { power: 1 }), id]
        } else {
            vec![cos, LcuTerm::new(w1, s1, TermOp::ShiftLeft { power: 1 }), LcuTerm::new(w2, s2, TermOp::ShiftRight { power: 1 }), id]
        };
        LcuSpec::new(n, terms)
    }
}

pub fn build_banded(n: usize, spec: &BandedSpec) -> Result<BlockEncoding> {
    build_lcu(&spec.to_lcu(n))
}

/// `α₀ C(ω₁) + α₁ L + α₂ R + α₃ C(ω₂)`, each cosine on its own ancilla.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoFrequencySpec {
    pub omega1: f64,
    pub omega2: f64,
    pub weights: [f64; 4],
    #[serde(default = "all_plus")]
    pub signs: [i8; 4],
}

impl TwoFrequencySpec {
    pub fn to_lcu(&self, n: usize) -> LcuSpec {
        let ops = [
            TermOp::Cos { omega: self.omega1, phi: 0.0 },
            TermOp::ShiftLeft { power: 1 },
            TermOp::ShiftRight { power: 1 },
            TermOp::Cos { omega: self.omega2, phi: 0.0 },
        ];
        let terms = ops.into_iter().zip(self.weights).zip(self.signs).map(|((op, w), s)| LcuTerm::new(w, s, op)).collect();
        LcuSpec::new(n, terms)
    }
}

pub fn build_two_frequency(n: usize, spec: &TwoFrequencySpec) -> Result<BlockEncoding> {
    build_lcu(&spec.to_lcu(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Harmonic {
    /// Harmonic number; frequency `2π n / T` per index step.
    pub n: u32,
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
}

/// Truncated real Fourier series `f(x) = a0/2 + Σ a_n cos(2πnx/T) + b_n sin(2πnx/T)`
/// sampled at the grid indices `x = 0..N-1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierSpec {
    #[serde(default)]
    pub a0: f64,
    pub period: f64,
    #[serde(default)]
    pub harmonics: Vec<Harmonic>,
}

impl FourierSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: FourierSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.period.is_finite() && self.period != 0.0) {
            return Err(Error::InvalidParameter(format!("Fourier period must be finite and nonzero, got {}", self.period)));
        }
        let finite = self.a0.is_finite() && self.harmonics.iter().all(|h| h.a.is_finite() && h.b.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("non-finite Fourier coefficient".into()));
        }
        if self.a0 == 0.0 && self.harmonics.iter().all(|h| h.a == 0.0 && h.b == 0.0) {
            return Err(Error::InvalidParameter("Fourier series has no nonzero coefficient".into()));
        }
        Ok(())
    }

    pub fn frequency(&self, harmonic: u32) -> f64 {
        TAU * harmonic as f64 / self.period
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.a0 / 2.0
            + self
                .harmonics
                .iter()
                .map(|h| {
                    let w = self.frequency(h.n) * x;
                    h.a * w.cos() + h.b * w.sin()
                })
                .sum::<f64>()
    }

    /// Signed LCU terms for `diag(f(k))`, without the work width.
    pub fn terms(&self) -> Vec<LcuTerm> {
        let mut terms = vec![LcuTerm::signed(self.a0 / 2.0, TermOp::Identity)];
        for h in &self.harmonics {
            let omega = self.frequency(h.n);
            terms.push(LcuTerm::signed(h.a, TermOp::Cos { omega, phi: 0.0 }));
            terms.push(LcuTerm::signed(h.b, TermOp::Sin { omega, phi: 0.0 }));
        }
        terms
    }

    /// `α = |a0/2| + Σ (|a_n| + |b_n|)`.
    pub fn alpha(&self) -> f64 {
        self.a0.abs() / 2.0 + self.harmonics.iter().map(|h| h.a.abs() + h.b.abs()).sum::<f64>()
    }

    pub fn to_lcu(&self, n: usize) -> LcuSpec {
        LcuSpec::new(n, self.terms()).with_ancillas(AncillaMode::Shared)
    }
}

pub fn build_fourier_diagonal(n: usize, spec: &FourierSpec) -> Result<BlockEncoding> {
    spec.validate()?;
    build_lcu(&spec.to_lcu(n))
}

use std::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;

use crate::bits::BitString;
use crate::error::{domain, Error, Result};
use crate::info::{DensityMatrix, DiscreteDistribution, Ensemble};
use crate::rng;

/// Largest register (in qubits) materialized as dense matrices.
pub const MAX_DENSE_QUBITS: usize = 12;
/// Largest message length evaluated with dense `2^n x 2^n` tables.
pub const MAX_DENSE_BITS: usize = 12;

/// Classical code: message index `x` is sent as computational basis state `codewords[x]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalCode {
    n: usize,
    m: usize,
    codewords: Vec<u64>,
}

impl ClassicalCode {
    pub fn new(n: usize, m: usize, codewords: Vec<u64>) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_BITS {
            return Err(Error::TooLarge(format!("classical codes are tabulated for 1 <= n <= {MAX_DENSE_BITS}, got {n}")));
        }
        if codewords.len() != 1 << n {
            return Err(Error::DimensionMismatch(format!(
                "{} codewords for {} messages",
                codewords.len(),
                1u64 << n
            )));
        }
        if let Some(c) = codewords.iter().find(|&&c| c >> m != 0) {
            return domain(format!("codeword {c} does not fit in {m} qubits"));
        }
        Ok(Self { n, m, codewords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn codeword(&self, x: usize) -> u64 {
        self.codewords[x]
    }

    pub fn codewords(&self) -> &[u64] {
        &self.codewords
    }

    /// Decoder returning the smallest message mapped to each observation
    /// (message 0 for unused observations).
    pub fn first_preimage_decoder(&self) -> DecodeMap {
        let mut table = vec![u64::MAX; 1 << self.m];
        for (x, &c) in self.codewords.iter().enumerate() {
            if table[c as usize] == u64::MAX {
                table[c as usize] = x as u64;
            }
        }
        for z in table.iter_mut() {
            if *z == u64::MAX {
                *z = 0;
            }
        }
        DecodeMap {
            n: self.n,
            m: self.m,
            table,
        }
    }
}

/// Deterministic post-processing of a computational-basis measurement on
/// `m` qubits into an `n`-bit guess.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeMap {
    n: usize,
    m: usize,
    table: Vec<u64>,
}

impl DecodeMap {
    pub fn new(n: usize, m: usize, table: Vec<u64>) -> Result<Self> {
        if table.len() != 1 << m {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for {} observations",
                table.len(),
                1u64 << m
            )));
        }
        if n < 64 && table.iter().any(|&z| z >> n != 0) {
            return domain(format!("decoded value does not fit in {n} bits"));
        }
        Ok(Self { n, m, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn decode(&self, y: u64) -> u64 {
        self.table[y as usize]
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }
}

/// Encoder given by an explicit density matrix per message.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumCode {
    n: usize,
    m: usize,
    states: Vec<DensityMatrix>,
}

impl QuantumCode {
    pub fn new(n: usize, states: Vec<DensityMatrix>) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_BITS || states.len() != 1 << n {
            return Err(Error::DimensionMismatch(format!(
                "{} states for n = {n}",
                states.len()
            )));
        }
        let d = states[0].dim();
        if !d.is_power_of_two() || states.iter().any(|s| s.dim() != d) {
            return Err(Error::DimensionMismatch("states must share a power-of-two dimension".into()));
        }
        Ok(Self {
            n,
            m: d.trailing_zeros() as usize,
            states,
        })
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }
}

/// Maps every n-bit message to a state on m qubits.
#[derive(Debug, Clone, PartialEq)]
pub enum Encoder {
    Classical(ClassicalCode),
    Quantum(QuantumCode),
    /// `copies` independent uses of `block` on consecutive message blocks;
    /// the first block holds the most significant bits.
    Product { block: Box<Encoder>, copies: usize },
}

impl Encoder {
    pub fn n(&self) -> usize {
        match self {
            Encoder::Classical(c) => c.n,
            Encoder::Quantum(q) => q.n,
            Encoder::Product { block, copies } => block.n() * copies,
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Encoder::Classical(c) => c.m,
            Encoder::Quantum(q) => q.m,
            Encoder::Product { block, copies } => block.m() * copies,
        }
    }

    /// The encoded state of message `x`.
    pub fn state(&self, x: &BitString) -> Result<DensityMatrix> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "{}-bit message for an encoder of {} bits",
                x.len(),
                self.n()
            )));
        }
        if self.m() > MAX_DENSE_QUBITS {
            return Err(Error::TooLarge(format!("{} qubits exceed the dense limit", self.m())));
        }
        match self {
            Encoder::Classical(c) => DensityMatrix::basis(1 << c.m, c.codeword(x.to_index()? as usize) as usize),
            Encoder::Quantum(q) => Ok(q.states[x.to_index()? as usize].clone()),
            Encoder::Product { block, copies } => {
                let bn = block.n();
                let mut acc: Option<DensityMatrix> = None;
                for c in 0..*copies {
                    let bits: Vec<bool> = (0..bn).map(|i| x.get(c * bn + i)).collect();
                    let s = block.state(&BitString::from_bits(&bits)?)?;
                    acc = Some(match acc {
                        None => s,
                        Some(a) => a.kron(&s),
                    });
                }
                Ok(acc.expect("copies >= 1"))
            }
        }
    }

    /// The ensemble `{state(x), prior(x)}` over all n-bit messages.
    pub fn ensemble(&self, prior: &DiscreteDistribution) -> Result<Ensemble> {
        let n = self.n();
        if n > MAX_DENSE_BITS || self.m() > MAX_DENSE_QUBITS {
            return Err(Error::TooLarge(format!("dense ensemble for n = {n}, m = {}", self.m())));
        }
        if prior.len() != 1 << n {
            return Err(Error::DimensionMismatch(format!(
                "prior over {} outcomes for {} messages",
                prior.len(),
                1u64 << n
            )));
        }
        let labels = (0..1u64 << n)
            .map(|x| BitString::from_index(n, x))
            .collect::<Result<Vec<_>>>()?;
        let states = labels.iter().map(|l| self.state(l)).collect::<Result<Vec<_>>>()?;
        Ensemble::new(states, prior.clone(), labels)
    }
}

/// Sends the first `m` bits of an `n`-bit message in the computational basis.
pub fn truncation_encoder(n: usize, m: usize) -> Result<Encoder> {
    if m > n {
        return domain(format!("truncation needs m <= n, got m = {m}, n = {n}"));
    }
    if n == 0 || n > MAX_DENSE_BITS {
        return Err(Error::TooLarge(format!("tabulated truncation needs 1 <= n <= {MAX_DENSE_BITS}, got {n}")));
    }
    let codewords = (0..1u64 << n).map(|x| x >> (n - m)).collect();
    Ok(Encoder::Classical(ClassicalCode::new(n, m, codewords)?))
}

/// Reads the `m` received bits and pads the rest with zeros.
pub fn truncation_decoder(n: usize, m: usize) -> Result<DecodeMap> {
    if m > n || n == 0 || n > 63 {
        return domain(format!("truncation needs m <= n <= 63, got m = {m}, n = {n}"));
    }
    if m > MAX_DENSE_QUBITS {
        return Err(Error::TooLarge(format!("decode table for {m} qubits")));
    }
    DecodeMap::new(n, m, (0..1u64 << m).map(|y| y << (n - m)).collect())
}

/// The 2 -> 1 quantum random access code. Message `b1 b2` is the pure state
/// with Bloch vector `((-1)^b2, 0, (-1)^b1) / sqrt 2`, so a Z-basis
/// measurement recovers `b1` and an X-basis measurement recovers `b2`, each
/// with probability `(1 + 1/sqrt 2) / 2`.
pub fn qrac_2to1_encoder() -> Encoder {
    let states = (0..4u32)
        .map(|x| {
            let b1 = (x >> 1) & 1;
            let b2 = x & 1;
            let sx = if b2 == 0 { FRAC_1_SQRT_2 } else { -FRAC_1_SQRT_2 };
            let sz = if b1 == 0 { FRAC_1_SQRT_2 } else { -FRAC_1_SQRT_2 };
            DensityMatrix::from_bloch([sx, 0.0, sz]).expect("pure qubit state")
        })
        .collect();
    Encoder::Quantum(QuantumCode::new(2, states).expect("four qubit states"))
}

pub fn product_encoder(block: Encoder, copies: usize) -> Result<Encoder> {
    if copies == 0 {
        return domain("product encoder needs at least one copy");
    }
    if copies == 1 {
        return Ok(block);
    }
    Ok(Encoder::Product {
        block: Box::new(block),
        copies,
    })
}

/// Classical code with i.i.d. uniform codewords drawn from `seed`.
pub fn random_classical_code(n: usize, m: usize, seed: u64) -> Result<ClassicalCode> {
    if m > MAX_DENSE_QUBITS || n > MAX_DENSE_BITS {
        return Err(Error::TooLarge(format!("random code with n = {n}, m = {m}")));
    }
    let mut r = rng::master(seed);
    let codewords = (0..1u64 << n)
        .map(|_| r.random_range(0..1u64 << m))
        .collect();
    ClassicalCode::new(n, m, codewords)
}

use crate::coding::encoder::{ClassicalCode, DecodeMap, MAX_DENSE_BITS};
use crate::coding::povm::Povm;
use crate::error::{Error, Result};
use crate::info::{mutual_information as table_mi, DiscreteDistribution, Ensemble, JointTable};
use crate::par::{map_range, stable_sum, Exec};

/// Negative entries above this are rounding dust and are clamped to zero.
pub const NEGATIVE_DUST_TOL: f64 = 1e-12;
pub const JOINT_SUM_TOL: f64 = 1e-9;

/// Exact law of `(X, Z)` over `{0,1}^n x {0,1}^n`, rows indexed by the
/// message `x` and columns by the guess `z` (big-endian indices).
#[derive(Debug, Clone, PartialEq)]
pub struct DenseJoint {
    n: usize,
    table: Vec<f64>,
}

impl DenseJoint {
    pub fn new(n: usize, mut table: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_BITS {
            return Err(Error::TooLarge(format!("dense joint tables need 1 <= n <= {MAX_DENSE_BITS}, got {n}")));
        }
        let size = 1usize << n;
        if table.len() != size * size {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {size}x{size} joint",
                table.len()
            )));
        }
        for p in table.iter_mut() {
            if !p.is_finite() || *p < -NEGATIVE_DUST_TOL {
                return Err(Error::InvalidDistribution(format!("joint entry {p}")));
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let total = stable_sum(table.iter().copied());
        if (total - 1.0).abs() > JOINT_SUM_TOL {
            return Err(Error::InvalidDistribution(format!("joint sums to {total}")));
        }
        if total != 1.0 {
            for p in table.iter_mut() {
                *p /= total;
            }
        }
        Ok(Self { n, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn get(&self, x: usize, z: usize) -> f64 {
        self.table[x * self.size() + z]
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn to_joint_table(&self) -> JointTable {
        JointTable::new(self.size(), self.size(), self.table.clone()).expect("validated joint")
    }

    /// `w[k] = P[d_H(X, Z) = k]` for `k = 0..=n`.
    pub fn error_weights(&self, exec: Exec) -> Vec<f64> {
        let size = self.size();
        let rows = map_range(size, exec, |x| {
            let mut w = vec![0.0; self.n + 1];
            for z in 0..size {
                let p = self.table[x * size + z];
                if p != 0.0 {
                    w[(x ^ z).count_ones() as usize] += p;
                }
            }
            w
        });
        (0..=self.n)
            .map(|k| stable_sum(rows.iter().map(|w| w[k])))
            .collect()
    }

    /// Kronecker product of joints on independent message blocks; `self`
    /// holds the more significant bits.
    pub fn tensor(&self, other: &DenseJoint) -> Result<DenseJoint> {
        let n = self.n + other.n;
        if n > MAX_DENSE_BITS {
            return Err(Error::TooLarge(format!("dense joint on {n} bits")));
        }
        let (sa, sb) = (self.size(), other.size());
        let size = sa * sb;
        let mut table = vec![0.0; size * size];
        for xa in 0..sa {
            for za in 0..sa {
                let pa = self.get(xa, za);
                if pa == 0.0 {
                    continue;
                }
                for xb in 0..sb {
                    for zb in 0..sb {
                        table[(xa * sb + xb) * size + za * sb + zb] = pa * other.get(xb, zb);
                    }
                }
            }
        }
        DenseJoint::new(n, table)
    }
}

/// Joint law of message and guess: dense, or a product of independent blocks.
#[derive(Debug, Clone, PartialEq)]
pub enum JointDistribution {
    Dense(DenseJoint),
    /// Independent blocks; block 0 holds the most significant message bits.
    Factored(Vec<DenseJoint>),
}

impl JointDistribution {
    pub fn n(&self) -> usize {
        match self {
            JointDistribution::Dense(d) => d.n(),
            JointDistribution::Factored(blocks) => blocks.iter().map(DenseJoint::n).sum(),
        }
    }

    /// `P[d_H(X, Z) = k]` for `k = 0..=n`. For factored joints this is the
    /// convolution of the per-block distributions.
    pub fn error_weights(&self, exec: Exec) -> Vec<f64> {
        match self {
            JointDistribution::Dense(d) => d.error_weights(exec),
            JointDistribution::Factored(blocks) => {
                let mut acc = vec![1.0];
                for b in blocks {
                    acc = convolve(&acc, &b.error_weights(exec));
                }
                acc
            }
        }
    }

    /// Expands a factored joint into a dense table (n <= 12).
    pub fn to_dense(&self) -> Result<DenseJoint> {
        match self {
            JointDistribution::Dense(d) => Ok(d.clone()),
            JointDistribution::Factored(blocks) => {
                let mut iter = blocks.iter();
                let first = iter
                    .next()
                    .ok_or_else(|| Error::Domain("factored joint without blocks".into()))?;
                iter.try_fold(first.clone(), |acc, b| acc.tensor(b))
            }
        }
    }
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `P(x, z) = p(x) tr(E_z sigma_x)` for an ensemble measured with a POVM.
/// Messages absent from the ensemble, and guesses absent from the POVM,
/// get probability zero.
pub fn joint_distribution(e: &Ensemble, povm: &Povm, exec: Exec) -> Result<JointDistribution> {
    let n = e.label_bits();
    if povm.labels()[0].len() != n {
        return Err(Error::DimensionMismatch(format!(
            "POVM outcomes have {} bits, messages have {n}",
            povm.labels()[0].len()
        )));
    }
    if povm.dim() != e.dim() {
        return Err(Error::DimensionMismatch(format!(
            "POVM acts on dimension {}, states have dimension {}",
            povm.dim(),
            e.dim()
        )));
    }
    if n > MAX_DENSE_BITS {
        return Err(Error::TooLarge(format!("dense joint on {n} bits")));
    }
    let size = 1usize << n;
    let z_index: Vec<usize> = povm
        .labels()
        .iter()
        .map(|l| l.to_index().map(|v| v as usize))
        .collect::<Result<_>>()?;
    let rows = map_range(e.len(), exec, |k| {
        let p = e.probs().probs()[k];
        let sigma = e.states()[k].matrix();
        let mut row = vec![0.0; size];
        if p > 0.0 {
            for (el, &z) in povm.elements().iter().zip(&z_index) {
                row[z] = p * el.trace_product(sigma).expect("dimensions checked").re;
            }
        }
        row
    });
    let mut table = vec![0.0; size * size];
    for (label, row) in e.labels().iter().zip(rows) {
        let x = label.to_index()? as usize;
        table[x * size..(x + 1) * size].copy_from_slice(&row);
    }
    Ok(JointDistribution::Dense(DenseJoint::new(n, table)?))
}

/// Joint of a classical code read out in the computational basis and post-processed by `decoder`.
pub fn classical_joint(code: &ClassicalCode, decoder: &DecodeMap, prior: &DiscreteDistribution) -> Result<DenseJoint> {
    if decoder.n() != code.n() || decoder.m() != code.m() {
        return Err(Error::DimensionMismatch(format!(
            "decoder ({}, {}) for code ({}, {})",
            decoder.n(),
            decoder.m(),
            code.n(),
            code.m()
        )));
    }
    let size = 1usize << code.n();
    if prior.len() != size {
        return Err(Error::DimensionMismatch("prior does not match code".into()));
    }
    let mut table = vec![0.0; size * size];
    for x in 0..size {
        let z = decoder.decode(code.codeword(x)) as usize;
        table[x * size + z] += prior.probs()[x];
    }
    DenseJoint::new(code.n(), table)
}

/// `P[d_H(X, Z) <= t]`. Equals `P[X = Z]` at `t = 0` and 1 for `t >= n`.
pub fn hamming_success(j: &JointDistribution, t: usize, exec: Exec) -> f64 {
    if t >= j.n() {
        return 1.0;
    }
    let w = j.error_weights(exec);
    stable_sum(w[..=t].iter().copied())
}

/// `I(X; Z)` in bits; additive over independent blocks.
pub fn joint_mutual_information(j: &JointDistribution) -> f64 {
    match j {
        JointDistribution::Dense(d) => table_mi(&d.to_joint_table()),
        JointDistribution::Factored(blocks) => blocks.iter().map(|b| table_mi(&b.to_joint_table())).sum(),
    }
}

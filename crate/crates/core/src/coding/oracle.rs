//! Brute-force optimal decoding.
//!
//! Given the joint law of the message `x` and whatever the receiver
//! observes `y`, the best deterministic decoder for `P[d_H(X, Z) <= t]`
//! picks, for every `y`, the guess `z` whose radius-`t` Hamming ball holds
//! the most posterior mass. This module finds that guess by scanning every
//! `z` in `{0,1}^n`. It shares no code with the success evaluation in
//! [`super::joint`] and serves as the reference those values are checked against.

use crate::coding::encoder::{ClassicalCode, MAX_DENSE_BITS};
use crate::coding::joint::DenseJoint;
use crate::error::{Error, Result};
use crate::info::DiscreteDistribution;
use crate::par::{map_range, Exec};

/// Joint law `P(x, y)` of an n-bit message and an observation `y in 0..observations`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationTable {
    n: usize,
    observations: usize,
    data: Vec<f64>,
}

impl ObservationTable {
    pub fn new(n: usize, observations: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_BITS {
            return Err(Error::TooLarge(format!("exhaustive decoding needs 1 <= n <= {MAX_DENSE_BITS}, got {n}")));
        }
        if observations == 0 || data.len() != (1usize << n) * observations {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for {} messages x {observations} observations",
                data.len(),
                1usize << n
            )));
        }
        Ok(Self { n, observations, data })
    }

    /// Observation = the basis state sent by a classical code.
    pub fn from_classical_code(code: &ClassicalCode, prior: &DiscreteDistribution) -> Result<Self> {
        let size = 1usize << code.n();
        if prior.len() != size {
            return Err(Error::DimensionMismatch("prior does not match code".into()));
        }
        let obs = 1usize << code.m();
        let mut data = vec![0.0; size * obs];
        for x in 0..size {
            data[x * obs + code.codeword(x) as usize] += prior.probs()[x];
        }
        Self::new(code.n(), obs, data)
    }

    /// Observation = the raw outcome of the measurement behind `joint`.
    pub fn from_joint(joint: &DenseJoint) -> Result<Self> {
        Self::new(joint.n(), joint.size(), joint.table().to_vec())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn observations(&self) -> usize {
        self.observations
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalDecoder {
    /// Best guess for each observation (lexicographically smallest on ties).
    pub decode: Vec<u64>,
    /// The achieved, and optimal, `P[d_H(X, Z) <= t]`.
    pub success: f64,
}

/// Exhaustive search for the decoder maximizing `P[d_H(X, Z) <= t]`.
pub fn optimal_hamming_decoder(table: &ObservationTable, t: usize, exec: Exec) -> Result<OptimalDecoder> {
    let n = table.n;
    if n > MAX_DENSE_BITS {
        return Err(Error::TooLarge(format!("exhaustive decoding on {n} bits")));
    }
    let size = 1usize << n;
    let obs = table.observations;
    let best = map_range(obs, exec, |y| {
        let support: Vec<(usize, f64)> = (0..size)
            .map(|x| (x, table.data[x * obs + y]))
            .filter(|&(_, p)| p > 0.0)
            .collect();
        let mut best_z = 0u64;
        let mut best_mass = f64::NEG_INFINITY;
        for z in 0..size {
            let mut mass = 0.0;
            for &(x, p) in &support {
                if hamming(x, z) <= t {
                    mass += p;
                }
            }
            if mass > best_mass {
                best_mass = mass;
                best_z = z as u64;
            }
        }
        (best_z, best_mass.max(0.0))
    });
    let success = best.iter().map(|&(_, m)| m).sum();
    Ok(OptimalDecoder {
        decode: best.into_iter().map(|(z, _)| z).collect(),
        success,
    })
}

fn hamming(a: usize, b: usize) -> usize {
    let mut d = 0;
    let mut v = a ^ b;
    while v != 0 {
        d += v & 1;
        v >>= 1;
    }
    d
}

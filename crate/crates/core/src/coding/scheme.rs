//! Named encoding/decoding schemes, replayable from a JSON descriptor, and
//! their comparison against the decoding bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bounds::{pac_nayak_bound, qpsc_lhs, BoundValue};
use crate::coding::encoder::{
    qrac_2to1_encoder, random_classical_code, truncation_decoder, truncation_encoder, ClassicalCode,
    DecodeMap, Encoder, MAX_DENSE_BITS,
};
use crate::coding::joint::{
    classical_joint, hamming_success, joint_distribution, joint_mutual_information, DenseJoint,
    JointDistribution,
};
use crate::coding::oracle::{optimal_hamming_decoder, ObservationTable};
use crate::coding::povm::pretty_good_measurement;
use crate::error::{domain, Error, Result};
use crate::info::DiscreteDistribution;
use crate::par::Exec;

/// Longest message handled by the factored (per-bit) truncation joint.
pub const MAX_FACTORED_BITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    /// First m bits in the computational basis, zero padding.
    Truncation,
    /// n/2 independent 2 -> 1 QRAC blocks, each decoded by its pretty-good measurement.
    QracProduct,
    /// Uniformly random codewords, decoded to the smallest preimage.
    RandomClassical,
}

/// Everything needed to rebuild a scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeDescriptor {
    pub scheme: SchemeKind,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl SchemeDescriptor {
    pub fn truncation(n: usize, m: usize) -> Self {
        Self {
            scheme: SchemeKind::Truncation,
            n,
            m,
            seed: None,
        }
    }

    pub fn qrac_product(n: usize) -> Self {
        Self {
            scheme: SchemeKind::QracProduct,
            n,
            m: n / 2,
            seed: None,
        }
    }

    pub fn random_classical(n: usize, m: usize, seed: u64) -> Self {
        Self {
            scheme: SchemeKind::RandomClassical,
            n,
            m,
            seed: Some(seed),
        }
    }

    pub fn build(&self) -> Result<Scheme> {
        let (n, m) = (self.n, self.m);
        if n == 0 {
            return domain("message length must be >= 1");
        }
        match self.scheme {
            SchemeKind::Truncation => {
                if m > n {
                    return domain(format!("truncation needs m <= n, got m = {m}, n = {n}"));
                }
                if n > MAX_FACTORED_BITS {
                    return Err(Error::TooLarge(format!("truncation on {n} bits")));
                }
                Ok(Scheme {
                    descriptor: self.clone(),
                    body: SchemeBody::Truncation,
                })
            }
            SchemeKind::QracProduct => {
                if n % 2 != 0 || m != n / 2 {
                    return domain(format!("qrac-product needs even n and m = n/2, got n = {n}, m = {m}"));
                }
                if n > MAX_FACTORED_BITS {
                    return Err(Error::TooLarge(format!("qrac-product on {n} bits")));
                }
                Ok(Scheme {
                    descriptor: self.clone(),
                    body: SchemeBody::QracProduct { copies: n / 2 },
                })
            }
            SchemeKind::RandomClassical => {
                if m > n {
                    return domain(format!("random code needs m <= n, got m = {m}, n = {n}"));
                }
                let seed = self
                    .seed
                    .ok_or_else(|| Error::Domain("random-classical needs a seed".into()))?;
                let code = random_classical_code(n, m, seed)?;
                let decoder = code.first_preimage_decoder();
                Ok(Scheme {
                    descriptor: self.clone(),
                    body: SchemeBody::Classical { code, decoder },
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum SchemeBody {
    Truncation,
    QracProduct { copies: usize },
    Classical { code: ClassicalCode, decoder: DecodeMap },
}

/// A concrete encoder together with its decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct Scheme {
    descriptor: SchemeDescriptor,
    body: SchemeBody,
}

impl Scheme {
    pub fn descriptor(&self) -> &SchemeDescriptor {
        &self.descriptor
    }

    pub fn n(&self) -> usize {
        self.descriptor.n
    }

    pub fn m(&self) -> usize {
        self.descriptor.m
    }

    /// The encoder, when it can be tabulated densely.
    pub fn encoder(&self) -> Result<Encoder> {
        match &self.body {
            SchemeBody::Truncation => truncation_encoder(self.n(), self.m()),
            SchemeBody::QracProduct { copies } => {
                crate::coding::encoder::product_encoder(qrac_2to1_encoder(), *copies)
            }
            SchemeBody::Classical { code, .. } => Ok(Encoder::Classical(code.clone())),
        }
    }

    /// Joint law of message and decoded guess under the uniform prior.
    /// Dense for `n <= 12`; product schemes beyond that are factored per block.
    pub fn joint(&self, exec: Exec) -> Result<JointDistribution> {
        let n = self.n();
        match &self.body {
            SchemeBody::Truncation => {
                if n <= MAX_DENSE_BITS {
                    let Encoder::Classical(code) = truncation_encoder(n, self.m())? else {
                        unreachable!("truncation is classical")
                    };
                    let dec = truncation_decoder(n, self.m())?;
                    Ok(JointDistribution::Dense(classical_joint(&code, &dec, &uniform(n)?)?))
                } else {
                    // kept bits are read perfectly; each dropped bit is a fair coin against a 0 pad
                    let kept = DenseJoint::new(1, vec![0.5, 0.0, 0.0, 0.5])?;
                    let dropped = DenseJoint::new(1, vec![0.5, 0.0, 0.5, 0.0])?;
                    let mut blocks = vec![kept; self.m()];
                    blocks.extend(std::iter::repeat_n(dropped, n - self.m()));
                    Ok(JointDistribution::Factored(blocks))
                }
            }
            SchemeBody::QracProduct { copies } => {
                let block = qrac_block_joint(exec)?;
                let factored = JointDistribution::Factored(vec![block; *copies]);
                if n <= MAX_DENSE_BITS {
                    Ok(JointDistribution::Dense(factored.to_dense()?))
                } else {
                    Ok(factored)
                }
            }
            SchemeBody::Classical { code, decoder } => Ok(JointDistribution::Dense(classical_joint(
                code,
                decoder,
                &uniform(n)?,
            )?)),
        }
    }

    /// What the receiver observes before decoding, for the exhaustive oracle.
    pub fn observation_table(&self, exec: Exec) -> Result<ObservationTable> {
        let n = self.n();
        if n > MAX_DENSE_BITS {
            return Err(Error::TooLarge(format!("observation table on {n} bits")));
        }
        match &self.body {
            SchemeBody::Truncation => {
                let Encoder::Classical(code) = truncation_encoder(n, self.m())? else {
                    unreachable!("truncation is classical")
                };
                ObservationTable::from_classical_code(&code, &uniform(n)?)
            }
            SchemeBody::Classical { code, .. } => ObservationTable::from_classical_code(code, &uniform(n)?),
            SchemeBody::QracProduct { .. } => ObservationTable::from_joint(&self.joint(exec)?.to_dense()?),
        }
    }

    /// `P[X = Z]` under the uniform prior in exact rational arithmetic
    /// (classical schemes only).
    pub fn exact_success(&self, t: usize) -> Result<BigRational> {
        let n = self.n();
        if n > MAX_DENSE_BITS {
            return Err(Error::TooLarge(format!("exact count on {n} bits")));
        }
        let (code, decoder) = match &self.body {
            SchemeBody::Truncation => {
                let Encoder::Classical(code) = truncation_encoder(n, self.m())? else {
                    unreachable!("truncation is classical")
                };
                (code, truncation_decoder(n, self.m())?)
            }
            SchemeBody::Classical { code, decoder } => (code.clone(), decoder.clone()),
            SchemeBody::QracProduct { .. } => {
                return Err(Error::Unsupported("exact rational success for quantum schemes".into()))
            }
        };
        let hits = (0..1u64 << n)
            .filter(|&x| {
                let z = decoder.decode(code.codeword(x as usize));
                ((x ^ z).count_ones() as usize) <= t
            })
            .count();
        Ok(BigRational::new(BigInt::from(hits), BigInt::from(1u64) << n))
    }
}

fn uniform(n: usize) -> Result<DiscreteDistribution> {
    DiscreteDistribution::uniform(1 << n)
}

/// Joint of one 2 -> 1 QRAC block under its pretty-good measurement.
pub fn qrac_block_joint(exec: Exec) -> Result<DenseJoint> {
    let e = qrac_2to1_encoder().ensemble(&uniform(2)?)?;
    let povm = pretty_good_measurement(&e)?;
    joint_distribution(&e, &povm, exec)?.to_dense()
}

/// One radius of a dominance curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceRow {
    pub t: usize,
    pub beta: f64,
    pub success: f64,
    pub bound: BoundValue,
    /// Best achievable success from the same observations, when `n <= 12`.
    pub oracle: Option<f64>,
    pub holds: bool,
}

pub const DOMINANCE_TOL: f64 = 1e-9;

/// Success `P[d_H <= t]` for `t = 0..=floor(n/2)` next to the bound at `beta = t/n`.
/// `holds` checks both the bound and, when computed, the oracle ceiling.
pub fn dominance_curve(scheme: &Scheme, with_oracle: bool, exec: Exec) -> Result<Vec<DominanceRow>> {
    let n = scheme.n();
    let joint = scheme.joint(exec)?;
    let obs = if with_oracle && n <= MAX_DENSE_BITS {
        Some(scheme.observation_table(exec)?)
    } else {
        None
    };
    let mut rows = Vec::new();
    for t in 0..=n / 2 {
        let beta = t as f64 / n as f64;
        let success = hamming_success(&joint, t, exec);
        let bound = pac_nayak_bound(n as f64, scheme.m() as f64, beta)?;
        let oracle = match &obs {
            Some(o) => Some(optimal_hamming_decoder(o, t, exec)?.success),
            None => None,
        };
        let holds = success <= bound.clamped + DOMINANCE_TOL
            && oracle.is_none_or(|o| success <= o + DOMINANCE_TOL && o <= bound.clamped + DOMINANCE_TOL);
        rows.push(DominanceRow {
            t,
            beta,
            success,
            bound,
            oracle,
            holds,
        });
    }
    Ok(rows)
}

/// Outcome of the information-requirement check on one joint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InformationCheck {
    pub mutual_information: f64,
    /// Qubit budget; `I(X;Z)` may not exceed it.
    pub qubits: usize,
    /// `(eps, delta, required)` for every `t` with `eps = t/n < 1/2`, where
    /// `delta = 1 - P[d_H <= t]` and `required = qpsc_lhs(n, eps, delta)`.
    pub requirements: Vec<(f64, f64, f64)>,
    pub holds: bool,
}

/// Checks `I(X;Z) <= m` and `I(X;Z) >= (1-delta)(1-H(eps))n - H(delta)` at
/// every radius, with `delta` the observed failure probability. Assumes the
/// uniform prior.
pub fn information_check(joint: &JointDistribution, qubits: usize, exec: Exec) -> Result<InformationCheck> {
    let n = joint.n();
    let mi = joint_mutual_information(joint);
    let mut holds = mi <= qubits as f64 + 1e-9;
    let mut requirements = Vec::new();
    for t in 0..n {
        let eps = t as f64 / n as f64;
        if eps >= 0.5 {
            break;
        }
        let delta = (1.0 - hamming_success(joint, t, exec)).clamp(0.0, 1.0);
        let required = qpsc_lhs(n as f64, eps, delta)?;
        holds &= mi >= required - 1e-6;
        requirements.push((eps, delta, required));
    }
    Ok(InformationCheck {
        mutual_information: mi,
        qubits,
        requirements,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::nayak_bound;

    #[test]
    fn descriptor_roundtrip_json() {
        let d = SchemeDescriptor::random_classical(6, 3, 42);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"scheme":"random-classical","n":6,"m":3,"seed":42}"#);
        let back: SchemeDescriptor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        let t: SchemeDescriptor = serde_json::from_str(r#"{"scheme":"truncation","n":8,"m":4}"#).unwrap();
        assert_eq!(t, SchemeDescriptor::truncation(8, 4));
    }

    #[test]
    fn descriptor_validation() {
        assert!(SchemeDescriptor::truncation(4, 5).build().is_err());
        assert!(SchemeDescriptor { scheme: SchemeKind::QracProduct, n: 5, m: 2, seed: None }.build().is_err());
        assert!(SchemeDescriptor { scheme: SchemeKind::RandomClassical, n: 5, m: 2, seed: None }.build().is_err());
        assert!(SchemeDescriptor::truncation(65, 5).build().is_err());
    }

    #[test]
    fn truncation_saturates_exactly() {
        for n in 1..=10 {
            for m in 0..n {
                let s = SchemeDescriptor::truncation(n, m).build().unwrap();
                let exact = s.exact_success(0).unwrap();
                let expected = BigRational::new(BigInt::from(1), BigInt::from(1u64) << (n - m));
                assert_eq!(exact, expected);
                assert_eq!(nayak_bound(n as f64, m as f64).unwrap().raw, (m as f64 - n as f64).exp2());
            }
        }
    }

    #[test]
    fn factored_truncation_matches_dense_form() {
        // n = 12 dense vs the per-bit factorization used beyond 12 bits
        let s = SchemeDescriptor::truncation(12, 5).build().unwrap();
        let dense = s.joint(Exec::default()).unwrap();
        let kept = DenseJoint::new(1, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        let dropped = DenseJoint::new(1, vec![0.5, 0.0, 0.5, 0.0]).unwrap();
        let mut blocks = vec![kept; 5];
        blocks.extend(vec![dropped; 7]);
        let factored = JointDistribution::Factored(blocks);
        for t in 0..=12 {
            let a = hamming_success(&dense, t, Exec::default());
            let b = hamming_success(&factored, t, Exec::default());
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn large_truncation_is_factored() {
        let s = SchemeDescriptor::truncation(64, 20).build().unwrap();
        let j = s.joint(Exec::default()).unwrap();
        assert!(matches!(j, JointDistribution::Factored(_)));
        let p0 = hamming_success(&j, 0, Exec::default());
        assert!((p0.log2() + 44.0).abs() < 1e-9);
        let rows = dominance_curve(&s, true, Exec::default()).unwrap();
        assert!(rows.iter().all(|r| r.holds && r.oracle.is_none()));
    }

    #[test]
    fn qrac_product_convolution() {
        // per-block PGM error weights: d=0 w.p. 1/2, d=1 w.p. 1/2, d=2 never
        let s = SchemeDescriptor::qrac_product(8).build().unwrap();
        let j = s.joint(Exec::default()).unwrap();
        let binom = [1.0, 4.0, 6.0, 4.0, 1.0];
        let mut cum = 0.0;
        for t in 0..=8 {
            if t <= 4 {
                cum += binom[t] / 16.0;
            }
            assert!((hamming_success(&j, t, Exec::default()) - cum).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn full_rate_row_is_certain() {
        let s = SchemeDescriptor::truncation(6, 6).build().unwrap();
        let rows = dominance_curve(&s, true, Exec::default()).unwrap();
        assert_eq!(rows[0].success, 1.0);
        assert_eq!(rows[0].bound.clamped, 1.0);
        assert!(rows.iter().all(|r| r.holds));
    }

    #[test]
    fn information_checks_hold_for_all_schemes() {
        let schemes = [
            SchemeDescriptor::truncation(8, 4),
            SchemeDescriptor::truncation(6, 0),
            SchemeDescriptor::qrac_product(6),
            SchemeDescriptor::random_classical(6, 3, 1),
        ];
        for d in schemes {
            let s = d.build().unwrap();
            let c = information_check(&s.joint(Exec::default()).unwrap(), s.m(), Exec::default()).unwrap();
            assert!(c.holds, "{d:?}: {c:?}");
        }
    }
}

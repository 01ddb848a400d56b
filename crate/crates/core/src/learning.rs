//! PAC learning of arbitrary Boolean functions on `n` bits: the Zipf
//! distribution, the memorization learner, exact generalization error and
//! seeded experiments.
//!
//! Concepts are explicit truth tables over ranks `1..=N`, `N = 2^n`; rank `k`
//! is the input string `k - 1` (big-endian).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::bounds::memorization_sample_count;
use crate::error::{domain, Error, Result};
use crate::info::{DensityMatrix, DiscreteDistribution};
use crate::linalg::ComplexMatrix;
use crate::par::{map_range, stable_sum, Exec};
use crate::rng;

/// Truth table of `f : {0,1}^n -> {0,1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptTable {
    n: u32,
    values: Vec<bool>,
}

impl ConceptTable {
    pub fn new(n: u32, values: Vec<bool>) -> Result<Self> {
        if n > 24 || values.len() != 1usize << n {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for n = {n}",
                values.len()
            )));
        }
        Ok(Self { n, values })
    }

    pub fn constant(n: u32, value: bool) -> Result<Self> {
        Self::new(n, vec![value; 1usize << n.min(25)])
    }

    pub fn random<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Result<Self> {
        let len = 1usize << n.min(25);
        Self::new(n, (0..len).map(|_| rng.random::<bool>()).collect())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    /// Label of rank `k` (1-based).
    pub fn label(&self, k: usize) -> bool {
        self.values[k - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn negated(&self) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|v| !v).collect(),
        }
    }

    /// Ranks (1-based) where the two tables differ.
    pub fn disagreements(&self, other: &ConceptTable) -> Result<Vec<usize>> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("n = {} vs n = {}", self.n, other.n)));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i + 1)
            .collect())
    }
}

/// Labelled examples `(rank, label)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ExampleSet {
    pub pairs: Vec<(usize, bool)>,
}

impl ExampleSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// `H_N = sum_{k <= N} 1/k`, summed from the smallest term.
pub fn harmonic(big_n: usize) -> f64 {
    stable_sum((1..=big_n).rev().map(|k| 1.0 / k as f64))
}

/// Exact `H_N` as a rational.
pub fn harmonic_exact(big_n: usize) -> BigRational {
    let mut acc = BigRational::new(BigInt::from(0), BigInt::from(1));
    for k in 1..=big_n {
        acc += BigRational::new(BigInt::from(1), BigInt::from(k));
    }
    acc
}

/// `Zipf(k) = 1 / (k H_N)` over ranks `1..=N`.
pub fn zipf_distribution(big_n: usize) -> Result<DiscreteDistribution> {
    if big_n == 0 {
        return domain("Zipf needs N >= 1");
    }
    let h = harmonic(big_n);
    let probs: Vec<f64> = (1..=big_n).map(|k| 1.0 / (k as f64 * h)).collect();
    let total = stable_sum(probs.iter().copied());
    DiscreteDistribution::new(probs.into_iter().map(|p| p / total).collect())
}

/// `m` i.i.d. labelled draws from `dist`, replayable from `seed`.
pub fn sample_examples(dist: &DiscreteDistribution, f: &ConceptTable, m: usize, seed: u64) -> Result<ExampleSet> {
    let sampler = Sampler::new(dist, f)?;
    Ok(sampler.draw(f, m, &mut rng::master(seed)))
}

struct Sampler {
    index: WeightedIndex<f64>,
}

impl Sampler {
    fn new(dist: &DiscreteDistribution, f: &ConceptTable) -> Result<Self> {
        if dist.len() != f.domain_size() {
            return Err(Error::DimensionMismatch(format!(
                "distribution over {} points, concept over {}",
                dist.len(),
                f.domain_size()
            )));
        }
        let index = WeightedIndex::new(dist.probs())
            .map_err(|e| Error::InvalidDistribution(e.to_string()))?;
        Ok(Self { index })
    }

    fn draw<R: Rng + ?Sized>(&self, f: &ConceptTable, m: usize, rng: &mut R) -> ExampleSet {
        let pairs = (0..m)
            .map(|_| {
                let k = self.index.sample(rng) + 1;
                (k, f.label(k))
            })
            .collect();
        ExampleSet { pairs }
    }
}

/// Memorizes every observed label and guesses a uniform random bit elsewhere.
pub fn memorization_learner(s: &ExampleSet, big_n: usize, seed: u64) -> Result<ConceptTable> {
    if !big_n.is_power_of_two() {
        return domain(format!("domain size {big_n} is not a power of two"));
    }
    let mut seen: Vec<Option<bool>> = vec![None; big_n];
    for &(k, label) in &s.pairs {
        if k == 0 || k > big_n {
            return domain(format!("example rank {k} outside 1..={big_n}"));
        }
        match seen[k - 1] {
            Some(prev) if prev != label => return Err(Error::ConflictingLabels { index: k }),
            _ => seen[k - 1] = Some(label),
        }
    }
    let mut r = rng::master(seed);
    let values = seen
        .into_iter()
        .map(|v| v.unwrap_or_else(|| r.random::<bool>()))
        .collect();
    ConceptTable::new(big_n.trailing_zeros(), values)
}

/// `Pr_{x ~ D}[f(x) != h(x)]`, summed exactly over the disagreement set.
pub fn generalization_error(f: &ConceptTable, h: &ConceptTable, dist: &DiscreteDistribution) -> Result<f64> {
    let diff = f.disagreements(h)?;
    if dist.len() != f.domain_size() {
        return Err(Error::DimensionMismatch(format!(
            "distribution over {} points, concepts over {}",
            dist.len(),
            f.domain_size()
        )));
    }
    Ok(stable_sum(diff.iter().map(|&k| dist.mass_of_rank(k))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistributionKind {
    Zipf,
    Uniform,
}

impl DistributionKind {
    pub fn build(self, big_n: usize) -> Result<DiscreteDistribution> {
        match self {
            DistributionKind::Zipf => zipf_distribution(big_n),
            DistributionKind::Uniform => DiscreteDistribution::uniform(big_n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMode {
    /// `ceil((N/eps) ln(N/delta))` random examples.
    Guaranteed,
    Fixed(u64),
    /// Every point exactly once, no sampling.
    FullSweep,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PacConfig {
    pub n: u32,
    pub eps: f64,
    pub delta: f64,
    pub trials: usize,
    pub seed: u64,
    pub distribution: DistributionKind,
    pub samples: SampleMode,
}

impl PacConfig {
    pub fn new(n: u32, eps: f64, delta: f64, trials: usize, seed: u64) -> Self {
        Self {
            n,
            eps,
            delta,
            trials,
            seed,
            distribution: DistributionKind::Zipf,
            samples: SampleMode::Guaranteed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub m: u64,
    pub error: f64,
    pub failed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PacReport {
    pub n: u32,
    pub domain_size: usize,
    pub eps: f64,
    pub delta: f64,
    pub seed: u64,
    pub m: u64,
    pub trials: usize,
    pub failures: usize,
    pub failure_fraction: f64,
    /// Memorized labels the learner got wrong; always zero.
    pub flipped_labels: usize,
    pub records: Vec<TrialRecord>,
}

pub const MAX_EXPERIMENT_BITS: u32 = 16;

/// Runs `trials` independent rounds of: draw a uniformly random concept,
/// sample examples, memorize, measure the exact error. A round fails when
/// its error exceeds `eps`. Round `i` uses its own stream derived from
/// `(seed, i)`.
pub fn pac_experiment(cfg: &PacConfig, exec: Exec) -> Result<PacReport> {
    if cfg.n == 0 || cfg.n > MAX_EXPERIMENT_BITS {
        return domain(format!("n must be in 1..={MAX_EXPERIMENT_BITS}, got {}", cfg.n));
    }
    if cfg.trials == 0 {
        return domain("need at least one trial");
    }
    let big_n = 1usize << cfg.n;
    let m = match cfg.samples {
        SampleMode::Guaranteed => memorization_sample_count(big_n as u64, cfg.eps, cfg.delta)?,
        SampleMode::Fixed(m) => m,
        SampleMode::FullSweep => big_n as u64,
    };
    let dist = cfg.distribution.build(big_n)?;
    let index = WeightedIndex::new(dist.probs()).map_err(|e| Error::InvalidDistribution(e.to_string()))?;
    let sampler = Sampler { index };

    let outcomes = map_range(cfg.trials, exec, |trial| -> Result<(TrialRecord, usize)> {
        let mut r = rng::trial(cfg.seed, trial as u64);
        let f = ConceptTable::random(cfg.n, &mut r)?;
        let examples = match cfg.samples {
            SampleMode::FullSweep => ExampleSet {
                pairs: (1..=big_n).map(|k| (k, f.label(k))).collect(),
            },
            _ => sampler.draw(&f, m as usize, &mut r),
        };
        let h = memorization_learner(&examples, big_n, r.next_u64())?;
        let flipped = examples.pairs.iter().filter(|&&(k, l)| h.label(k) != l).count();
        let error = generalization_error(&f, &h, &dist)?;
        Ok((
            TrialRecord {
                trial,
                m,
                error,
                failed: error > cfg.eps,
            },
            flipped,
        ))
    });
    let mut records = Vec::with_capacity(cfg.trials);
    let mut flipped_labels = 0;
    for o in outcomes {
        let (rec, flipped) = o?;
        flipped_labels += flipped;
        records.push(rec);
    }
    let failures = records.iter().filter(|r| r.failed).count();
    Ok(PacReport {
        n: cfg.n,
        domain_size: big_n,
        eps: cfg.eps,
        delta: cfg.delta,
        seed: cfg.seed,
        m,
        trials: cfg.trials,
        failures,
        failure_fraction: failures as f64 / cfg.trials as f64,
        flipped_labels,
        records,
    })
}

/// `delta + 3 sqrt(delta (1 - delta) / trials)`: the empirical failure
/// fraction allowed when the true failure probability is at most `delta`.
pub fn failure_allowance(delta: f64, trials: usize) -> f64 {
    delta + 3.0 * (delta * (1.0 - delta) / trials as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageCheck {
    /// Points with `D(i) > eps / N`.
    pub heavy_points: usize,
    /// Heavy points whose miss probability `(1 - D(i))^m` exceeds `delta / N`.
    pub violations: usize,
    /// Largest `(1 - D(i))^m / (delta / N)` over heavy points.
    pub worst_ratio: f64,
}

/// Checks, without sampling, that `m` draws miss each heavy point with
/// probability at most `delta / N`.
pub fn coverage_miss_check(dist: &DiscreteDistribution, eps: f64, delta: f64, m: u64) -> CoverageCheck {
    let big_n = dist.len() as f64;
    let target = delta / big_n;
    let mut heavy_points = 0;
    let mut violations = 0;
    let mut worst_ratio = 0.0f64;
    for &p in dist.probs() {
        if p > eps / big_n {
            heavy_points += 1;
            let miss = (1.0 - p).powf(m as f64);
            if miss > target {
                violations += 1;
            }
            worst_ratio = worst_ratio.max(miss / target);
        }
    }
    CoverageCheck {
        heavy_points,
        violations,
        worst_ratio,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallCheck {
    /// Zipf-weighted error of `h` against `f`.
    pub error: f64,
    /// `|I|`, the Hamming distance between the two truth tables.
    pub disagreements: usize,
    /// `beta N`.
    pub ball_radius: f64,
    /// Whether `error < beta / (n + 1)`.
    pub premise: bool,
    /// `!premise || |I| < beta N`.
    pub implication_holds: bool,
}

/// Tests the step "Zipf error below `beta/(n+1)` forces fewer than `beta N`
/// disagreements" on a concrete pair of tables.
pub fn disagreement_ball_check(f: &ConceptTable, h: &ConceptTable, beta: f64) -> Result<BallCheck> {
    if !(0.0..=0.5).contains(&beta) {
        return domain(format!("beta must lie in [0, 1/2], got {beta}"));
    }
    let big_n = f.domain_size();
    let zipf = zipf_distribution(big_n)?;
    let error = generalization_error(f, h, &zipf)?;
    let disagreements = f.disagreements(h)?.len();
    let ball_radius = beta * big_n as f64;
    let premise = error < beta / (f.n() as f64 + 1.0);
    Ok(BallCheck {
        error,
        disagreements,
        ball_radius,
        premise,
        implication_holds: !premise || (disagreements as f64) < ball_radius,
    })
}

/// `sum_x sqrt(D(x)) |x>|c(x)>` on `n + 1` qubits; the label qubit is last.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumExampleState {
    n: u32,
    amplitudes: Vec<Complex64>,
}

pub const MAX_QUANTUM_EXAMPLE_BITS: u32 = 10;
/// Largest register for which [`QuantumExampleState::density_matrix`] is built.
pub const MAX_EXAMPLE_PROJECTOR_QUBITS: u32 = 8;

impl QuantumExampleState {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn qubits(&self) -> u32 {
        self.n + 1
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, x: usize, label: bool) -> Complex64 {
        self.amplitudes[2 * x + label as usize]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// The projector `|psi><psi|`.
    pub fn density_matrix(&self) -> Result<DensityMatrix> {
        if self.qubits() > MAX_EXAMPLE_PROJECTOR_QUBITS {
            return Err(Error::TooLarge(format!("projector on {} qubits", self.qubits())));
        }
        DensityMatrix::new(ComplexMatrix::projector(&self.amplitudes))
    }
}

pub fn quantum_example_state(dist: &DiscreteDistribution, c: &ConceptTable) -> Result<QuantumExampleState> {
    if c.n() > MAX_QUANTUM_EXAMPLE_BITS {
        return Err(Error::TooLarge(format!(
            "quantum examples are built for n <= {MAX_QUANTUM_EXAMPLE_BITS}, got {}",
            c.n()
        )));
    }
    if dist.len() != c.domain_size() {
        return Err(Error::DimensionMismatch("distribution and concept sizes differ".into()));
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 2 * c.domain_size()];
    for (x, &p) in dist.probs().iter().enumerate() {
        amplitudes[2 * x + c.values()[x] as usize] = Complex64::new(p.sqrt(), 0.0);
    }
    Ok(QuantumExampleState { n: c.n(), amplitudes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::zipf_sample_lower_bound;
    use num_traits::ToPrimitive;

    #[test]
    fn zipf_examples() {
        let one = zipf_distribution(1).unwrap();
        assert_eq!(one.probs(), &[1.0]);
        let four = zipf_distribution(4).unwrap();
        // H_4 = 25/12
        for (p, e) in four.probs().iter().zip([12.0, 6.0, 4.0, 3.0]) {
            assert!((p - e / 25.0).abs() < 1e-15);
        }
        assert!((four.mass_of_rank(1) - 0.48).abs() < 1e-15);
        assert!(zipf_distribution(0).is_err());
    }

    #[test]
    fn zipf_is_strictly_decreasing() {
        let z = zipf_distribution(1 << 12).unwrap();
        assert!(z.probs().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn harmonic_sandwich() {
        for n in 1..=16u32 {
            let big_n = 1usize << n;
            let h = harmonic(big_n);
            assert!(h >= (big_n as f64).ln());
            assert!(h <= (big_n as f64).ln() + 1.0);
            assert!(h <= n as f64 + 1.0);
            let z = zipf_distribution(big_n).unwrap();
            assert!(z.mass_of_rank(big_n) >= 1.0 / (big_n as f64 * (n as f64 + 1.0)));
        }
        for n in 1..=8u32 {
            let exact = harmonic_exact(1 << n);
            assert!((exact.to_f64().unwrap() - harmonic(1 << n)).abs() < 1e-13);
        }
    }

    #[test]
    fn sampling_examples() {
        let f = ConceptTable::constant(3, true).unwrap();
        let d = DiscreteDistribution::uniform(8).unwrap();
        assert!(sample_examples(&d, &f, 0, 1).unwrap().is_empty());
        let point = DiscreteDistribution::point_mass(8, 5).unwrap();
        let s = sample_examples(&point, &f, 20, 1).unwrap();
        assert!(s.pairs.iter().all(|&p| p == (6, true)));
        assert_eq!(sample_examples(&d, &f, 50, 9).unwrap(), sample_examples(&d, &f, 50, 9).unwrap());
    }

    #[test]
    fn rank_one_frequency_under_zipf() {
        let big_n = 256;
        let z = zipf_distribution(big_n).unwrap();
        let f = ConceptTable::constant(8, false).unwrap();
        let m = 10_000;
        let s = sample_examples(&z, &f, m, 2024).unwrap();
        let hits = s.pairs.iter().filter(|p| p.0 == 1).count() as f64;
        let p = 1.0 / harmonic(big_n);
        assert!((p - 0.1633).abs() < 1e-4);
        let sigma = (m as f64 * p * (1.0 - p)).sqrt();
        assert!((hits - m as f64 * p).abs() <= 3.0 * sigma);
    }

    #[test]
    fn memorization_cases() {
        let mut r = rng::master(5);
        let f = ConceptTable::random(4, &mut r).unwrap();
        let full = ExampleSet {
            pairs: (1..=16).map(|k| (k, f.label(k))).collect(),
        };
        assert_eq!(memorization_learner(&full, 16, 1).unwrap(), f);

        let a = memorization_learner(&ExampleSet::default(), 16, 3).unwrap();
        let b = memorization_learner(&ExampleSet::default(), 16, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.domain_size(), 16);

        let partial = ExampleSet {
            pairs: vec![(2, f.label(2)), (9, f.label(9)), (2, f.label(2))],
        };
        let h = memorization_learner(&partial, 16, 4).unwrap();
        assert_eq!(h.label(2), f.label(2));
        assert_eq!(h.label(9), f.label(9));

        let bad = ExampleSet {
            pairs: vec![(3, true), (3, false)],
        };
        assert_eq!(
            memorization_learner(&bad, 16, 0),
            Err(Error::ConflictingLabels { index: 3 })
        );
    }

    #[test]
    fn generalization_error_cases() {
        let mut r = rng::master(6);
        let f = ConceptTable::random(2, &mut r).unwrap();
        let u = DiscreteDistribution::uniform(4).unwrap();
        assert_eq!(generalization_error(&f, &f, &u).unwrap(), 0.0);
        assert_eq!(generalization_error(&f, &f.negated(), &u).unwrap(), 1.0);
        let mut v = f.values().to_vec();
        v[0] = !v[0];
        let h = ConceptTable::new(2, v).unwrap();
        let z = zipf_distribution(4).unwrap();
        assert!((generalization_error(&f, &h, &z).unwrap() - 0.48).abs() < 1e-15);
        let other = ConceptTable::constant(3, false).unwrap();
        assert!(generalization_error(&f, &other, &u).is_err());
    }

    #[test]
    fn experiment_trivial_cases() {
        let mut cfg = PacConfig::new(6, 1.0, 0.1, 20, 3);
        let r = pac_experiment(&cfg, Exec::default()).unwrap();
        assert_eq!(r.failures, 0);

        cfg.eps = 0.01;
        cfg.samples = SampleMode::FullSweep;
        let r = pac_experiment(&cfg, Exec::default()).unwrap();
        assert_eq!(r.failures, 0);
        assert!(r.records.iter().all(|t| t.error == 0.0));
        assert_eq!(r.m, 64);
    }

    #[test]
    fn experiment_is_order_independent() {
        let cfg = PacConfig::new(5, 0.2, 0.2, 16, 77);
        let a = pac_experiment(&cfg, Exec::Sequential).unwrap();
        let b = pac_experiment(&cfg, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.flipped_labels, 0);
    }

    #[test]
    fn coverage_holds_analytically() {
        for n in 1..=8u32 {
            let big_n = 1usize << n;
            for (eps, delta) in [(0.1, 0.1), (0.5, 0.05), (0.9, 0.5)] {
                let m = memorization_sample_count(big_n as u64, eps, delta).unwrap();
                for d in [zipf_distribution(big_n).unwrap(), DiscreteDistribution::uniform(big_n).unwrap()] {
                    let c = coverage_miss_check(&d, eps, delta, m);
                    assert_eq!(c.violations, 0, "n = {n}");
                    assert!(c.worst_ratio < 1.0);
                }
            }
        }
    }

    #[test]
    fn ball_check_cases() {
        let mut r = rng::master(8);
        let f = ConceptTable::random(8, &mut r).unwrap();
        let same = disagreement_ball_check(&f, &f, 0.25).unwrap();
        assert!(same.premise && same.implication_holds);
        assert_eq!(same.disagreements, 0);

        // flip the floor(beta N) - 1 lightest ranks
        let beta = 0.25;
        let big_n = 256usize;
        let count = (beta * big_n as f64).floor() as usize - 1;
        let mut v = f.values().to_vec();
        for k in (big_n - count + 1)..=big_n {
            v[k - 1] = !v[k - 1];
        }
        let h = ConceptTable::new(8, v).unwrap();
        let c = disagreement_ball_check(&f, &h, beta).unwrap();
        let z = zipf_distribution(big_n).unwrap();
        let tail: f64 = ((big_n - count + 1)..=big_n).map(|k| z.mass_of_rank(k)).sum();
        assert!((c.error - tail).abs() < 1e-12);
        assert_eq!(c.disagreements, count);
        assert!(c.implication_holds);
        assert!((c.disagreements as f64) < c.ball_radius);
        assert!(disagreement_ball_check(&f, &h, 0.6).is_err());
    }

    #[test]
    fn quantum_example_cases() {
        let id = ConceptTable::new(1, vec![false, true]).unwrap();
        let u = DiscreteDistribution::uniform(2).unwrap();
        let q = quantum_example_state(&u, &id).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [s, 0.0, 0.0, s];
        for (a, e) in q.amplitudes().iter().zip(expect) {
            assert!((a.re - e).abs() < 1e-15 && a.im == 0.0);
        }
        let point = DiscreteDistribution::point_mass(2, 1).unwrap();
        let q = quantum_example_state(&point, &id).unwrap();
        assert_eq!(q.amplitude(1, true), Complex64::new(1.0, 0.0));
        assert_eq!(q.norm(), 1.0);

        let mut r = rng::master(2);
        let c = ConceptTable::random(2, &mut r).unwrap();
        let z = zipf_distribution(4).unwrap();
        let q = quantum_example_state(&z, &c).unwrap();
        assert!((q.norm() - 1.0).abs() < 1e-12);
        for x in 0..4 {
            let on = q.amplitude(x, c.values()[x]);
            let off = q.amplitude(x, !c.values()[x]);
            assert!((on.re - z.probs()[x].sqrt()).abs() < 1e-15);
            assert_eq!(off, Complex64::new(0.0, 0.0));
        }
        let rho = q.density_matrix().unwrap();
        assert_eq!(rho.dim(), 8);

        let big = ConceptTable::constant(11, false).unwrap();
        assert!(quantum_example_state(&DiscreteDistribution::uniform(2048).unwrap(), &big).is_err());
    }

    #[test]
    fn lower_bound_is_finite_and_positive_for_small_beta() {
        for n in 2..=16 {
            assert!(zipf_sample_lower_bound(n, 0.1, 0.1).unwrap() > 0.0);
        }
    }
}

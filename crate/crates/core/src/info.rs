//! Classical and quantum information measures. All logarithms are base 2
//! and `0 log 0 = 0` throughout.

use num_complex::Complex64;
use rand::Rng;

use crate::bits::BitString;
use crate::error::{domain, Error, Result};
use crate::linalg::{self, ComplexMatrix, HermitianEig, HERMITIAN_TOL, ZERO_EIGENVALUE_TOL};
use crate::par::stable_sum;

pub const NORMALIZATION_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;

/// Probability vector over outcomes `1..=N`, stored zero-based. For
/// distributions over `{0,1}^n`, rank `k` is the big-endian string of `k - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    probs: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidDistribution(format!("entry {p} is not a probability")));
        }
        let total = stable_sum(probs.iter().copied());
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidDistribution(format!("sums to {total}")));
        }
        Ok(Self { probs })
    }

    /// Normalizes nonnegative weights.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidDistribution("weights must be finite and nonnegative".into()));
        }
        let total = stable_sum(weights.iter().copied());
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("weights sum to zero".into()));
        }
        Self::new(weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(outcomes: usize) -> Result<Self> {
        if outcomes == 0 {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        Ok(Self {
            probs: vec![1.0 / outcomes as f64; outcomes],
        })
    }

    pub fn point_mass(outcomes: usize, index: usize) -> Result<Self> {
        if index >= outcomes {
            return Err(Error::InvalidDistribution(format!("index {index} >= {outcomes}")));
        }
        let mut probs = vec![0.0; outcomes];
        probs[index] = 1.0;
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Mass of rank `k` (1-based).
    pub fn mass_of_rank(&self, k: usize) -> f64 {
        self.probs[k - 1]
    }
}

/// The n-bit string for rank `k` (1-based).
pub fn rank_to_bits(n: usize, k: u64) -> Result<BitString> {
    if k == 0 {
        return domain("ranks start at 1");
    }
    BitString::from_index(n, k - 1)
}

/// Joint law of two discrete variables, rows indexed by X and columns by Z.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl JointTable {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} table",
                data.len()
            )));
        }
        if data.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidDistribution("joint entries must be nonnegative".into()));
        }
        let total = stable_sum(data.iter().copied());
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidDistribution(format!("joint sums to {total}")));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn product(x: &DiscreteDistribution, z: &DiscreteDistribution) -> Self {
        let data = x
            .probs()
            .iter()
            .flat_map(|&px| z.probs().iter().map(move |&pz| px * pz))
            .collect();
        Self {
            rows: x.len(),
            cols: z.len(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, x: usize, z: usize) -> f64 {
        self.data[x * self.cols + z]
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|x| stable_sum(self.data[x * self.cols..(x + 1) * self.cols].iter().copied()))
            .collect()
    }

    pub fn marginal_z(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|z| stable_sum((0..self.rows).map(|x| self.get(x, z))))
            .collect()
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {deviation:e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let eig = linalg::hermitian_eig(&matrix)?;
        let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -ZERO_EIGENVALUE_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix })
    }

    /// `|psi><psi|` for a (not necessarily normalized) nonzero vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let psi: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::projector(&psi))
    }

    /// Diagonal state with the given spectrum.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(probs))
    }

    /// Computational basis projector `|index><index|`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidState(format!("basis index {index} >= {dim}")));
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(index, index)] = Complex64::new(1.0, 0.0);
        Ok(Self { matrix: m })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// Single-qubit state `(I + r.sigma) / 2` for a Bloch vector with `|r| <= 1`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let [x, y, z] = r;
        let m = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(0.5 * (1.0 + z), 0.0),
                Complex64::new(0.5 * x, -0.5 * y),
                Complex64::new(0.5 * x, 0.5 * y),
                Complex64::new(0.5 * (1.0 - z), 0.0),
            ],
        )?;
        Self::new(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn kron(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn eig(&self) -> Result<HermitianEig> {
        linalg::hermitian_eig(&self.matrix)
    }
}

/// Ensemble `{sigma(x), p(x)}` of equal-dimension states labelled by bit strings.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    states: Vec<DensityMatrix>,
    probs: DiscreteDistribution,
    labels: Vec<BitString>,
}

impl Ensemble {
    pub fn new(
        states: Vec<DensityMatrix>,
        probs: DiscreteDistribution,
        labels: Vec<BitString>,
    ) -> Result<Self> {
        if states.len() != probs.len() || states.len() != labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} states, {} probabilities, {} labels",
                states.len(),
                probs.len(),
                labels.len()
            )));
        }
        let d = states[0].dim();
        if !d.is_power_of_two() {
            return Err(Error::DimensionMismatch(format!("dimension {d} is not a power of two")));
        }
        if states.iter().any(|s| s.dim() != d) {
            return Err(Error::DimensionMismatch("states of different dimensions".into()));
        }
        let n = labels[0].len();
        if labels.iter().any(|l| l.len() != n) {
            return Err(Error::DimensionMismatch("labels of different lengths".into()));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::Domain("ensemble labels must be distinct".into()));
        }
        Ok(Self {
            states,
            probs,
            labels,
        })
    }

    /// Labels `0..K` written on `n` bits.
    pub fn with_index_labels(
        states: Vec<DensityMatrix>,
        probs: DiscreteDistribution,
        n: usize,
    ) -> Result<Self> {
        let labels = (0..states.len() as u64)
            .map(|i| BitString::from_index(n, i))
            .collect::<Result<Vec<_>>>()?;
        Self::new(states, probs, labels)
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn probs(&self) -> &DiscreteDistribution {
        &self.probs
    }

    pub fn labels(&self) -> &[BitString] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    /// Bit length of the labels.
    pub fn label_bits(&self) -> usize {
        self.labels[0].len()
    }

    /// `sum_x p(x) sigma(x)`.
    pub fn average_state(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut acc = ComplexMatrix::zeros(d, d);
        for (s, &p) in self.states.iter().zip(self.probs.probs()) {
            if p > 0.0 {
                acc = acc.add(&s.matrix().scale_real(p)).expect("equal dimensions");
            }
        }
        acc
    }
}

/// `-sum p log2 p` over a slice, ignoring zeros and clamping negatives to zero.
pub fn entropy_bits(probs: &[f64]) -> f64 {
    let terms = probs
        .iter()
        .map(|&p| if p > 0.0 { -p * p.log2() } else { 0.0 });
    stable_sum(terms)
}

/// Binary entropy `H(p)` in bits.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("binary entropy needs p in [0,1], got {p}"));
    }
    Ok(binary_entropy_unchecked(p))
}

pub(crate) fn binary_entropy_unchecked(p: f64) -> f64 {
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

pub fn shannon_entropy(d: &DiscreteDistribution) -> f64 {
    entropy_bits(d.probs())
}

/// `S(rho) = -tr(rho log2 rho)`, computed from the spectrum. Negative
/// eigenvalue dust is clamped to zero and the spectrum is not renormalized.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eig = rho.eig()?;
    Ok(entropy_bits(&eig.eigenvalues))
}

/// `I(X;Z) = H(X) + H(Z) - H(X,Z)`.
pub fn mutual_information(j: &JointTable) -> f64 {
    entropy_bits(&j.marginal_x()) + entropy_bits(&j.marginal_z()) - entropy_bits(j.entries())
}

/// Holevo quantity `S(sum p sigma) - sum p S(sigma)`.
pub fn holevo_chi(e: &Ensemble) -> Result<f64> {
    let avg = e.average_state();
    let s_avg = entropy_bits(&linalg::hermitian_eig(&avg)?.eigenvalues);
    let mut members = Vec::with_capacity(e.len());
    for (s, &p) in e.states().iter().zip(e.probs().probs()) {
        if p > 0.0 {
            members.push(p * von_neumann_entropy(s)?);
        }
    }
    let chi = s_avg - stable_sum(members);
    let ceiling = (e.dim() as f64).log2();
    assert!(
        chi >= -1e-9 && chi <= ceiling + 1e-9,
        "Holevo quantity {chi} outside [0, {ceiling}]"
    );
    Ok(chi)
}

/// Classical channel `P(y | x)`, one stochastic row per input symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelTable {
    inputs: usize,
    outputs: usize,
    data: Vec<f64>,
}

impl ChannelTable {
    pub fn new(inputs: usize, outputs: usize, data: Vec<f64>) -> Result<Self> {
        if inputs == 0 || outputs == 0 || data.len() != inputs * outputs {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {inputs}x{outputs} channel",
                data.len()
            )));
        }
        for row in data.chunks(outputs) {
            if row.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return Err(Error::InvalidDistribution("negative channel entry".into()));
            }
            let s = stable_sum(row.iter().copied());
            if (s - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::InvalidDistribution(format!("channel row sums to {s}")));
            }
        }
        Ok(Self {
            inputs,
            outputs,
            data,
        })
    }

    /// Binary symmetric channel with crossover probability `p`.
    pub fn binary_symmetric(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return domain(format!("crossover {p} outside [0,1]"));
        }
        Self::new(2, 2, vec![1.0 - p, p, p, 1.0 - p])
    }

    /// Random channel with rows drawn uniformly from the simplex.
    pub fn random<R: Rng + ?Sized>(inputs: usize, outputs: usize, rng: &mut R) -> Result<Self> {
        let mut data = Vec::with_capacity(inputs * outputs);
        for _ in 0..inputs {
            let w: Vec<f64> = (0..outputs).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
            let s: f64 = w.iter().sum();
            data.extend(w.iter().map(|x| x / s));
        }
        Self::new(inputs, outputs, data)
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[x * self.outputs + y]
    }

    /// Joint table of `(X, Y)` for input law `input`.
    pub fn joint(&self, input: &DiscreteDistribution) -> Result<JointTable> {
        if input.len() != self.inputs {
            return Err(Error::DimensionMismatch(format!(
                "{} input probabilities for a channel with {} inputs",
                input.len(),
                self.inputs
            )));
        }
        let data = (0..self.inputs)
            .flat_map(|x| (0..self.outputs).map(move |y| (x, y)))
            .map(|(x, y)| input.probs()[x] * self.get(x, y))
            .collect();
        JointTable::new(self.inputs, self.outputs, data)
    }
}

/// Largest `m log2 |Y|` for which [`product_channel_mutual_info`] builds its table.
pub const MAX_PRODUCT_OUTPUT_BITS: f64 = 24.0;

/// Exact `I(X'; Y')` where `Y'` is `copies` independent uses of the channel.
pub fn product_channel_mutual_info(
    input: &DiscreteDistribution,
    channel: &ChannelTable,
    copies: usize,
) -> Result<f64> {
    if copies == 0 {
        return domain("need at least one channel use");
    }
    let bits = copies as f64 * (channel.outputs() as f64).log2();
    if bits > MAX_PRODUCT_OUTPUT_BITS + 1e-12 {
        return Err(Error::TooLarge(format!(
            "{copies} uses of a {}-output channel need {bits:.1} > {MAX_PRODUCT_OUTPUT_BITS} bits",
            channel.outputs()
        )));
    }
    if input.len() != channel.inputs() {
        return Err(Error::DimensionMismatch("input law does not match channel".into()));
    }
    let ny = channel.outputs();
    let total_y = ny.pow(copies as u32);
    let mut data = Vec::with_capacity(input.len() * total_y);
    for x in 0..channel.inputs() {
        let px = input.probs()[x];
        for y in 0..total_y {
            let mut p = px;
            let mut rest = y;
            for _ in 0..copies {
                p *= channel.get(x, rest % ny);
                rest /= ny;
            }
            data.push(p);
        }
    }
    let joint = JointTable::new(channel.inputs(), total_y, data)?;
    Ok(mutual_information(&joint))
}

/// Random mixed state `G G^dagger / tr(G G^dagger)` with `G` a `dim x rank` Ginibre matrix.
pub fn random_density_matrix<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    let g = linalg::random_ginibre(dim, rank.max(1), rng);
    let m = g.matmul(&g.adjoint())?;
    let tr = m.trace().re;
    let m = m.scale_real(1.0 / tr);
    let m = ComplexMatrix::from_fn(dim, dim, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    DensityMatrix::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use proptest::prelude::*;
    use rand::Rng;

    const H_QUARTER: f64 = 0.811_278_124_459_132_9;

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // -(1/4)log2(1/4) - (3/4)log2(3/4) = 1/2 + (3/4)(2 - log2 3)
        let direct = 0.5 + 0.75 * (2.0 - 3f64.log2());
        assert!((binary_entropy(0.25).unwrap() - direct).abs() < 1e-15);
        assert!((direct - H_QUARTER).abs() < 1e-15);
        assert!(matches!(binary_entropy(1.5), Err(Error::Domain(_))));
        assert!(binary_entropy(-0.1).is_err());
    }

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_entropy(&DiscreteDistribution::uniform(8).unwrap()), 3.0);
        assert_eq!(shannon_entropy(&DiscreteDistribution::point_mass(5, 2).unwrap()), 0.0);
        let d = DiscreteDistribution::new(vec![0.5, 0.25, 0.25]).unwrap();
        assert_eq!(shannon_entropy(&d), 1.5);
    }

    #[test]
    fn distribution_validation() {
        assert!(DiscreteDistribution::new(vec![0.5, 0.4]).is_err());
        assert!(DiscreteDistribution::new(vec![1.5, -0.5]).is_err());
        assert!(DiscreteDistribution::new(vec![]).is_err());
        let d = DiscreteDistribution::from_weights(&[1.0, 3.0]).unwrap();
        assert_eq!(d.mass_of_rank(2), 0.75);
        assert_eq!(rank_to_bits(3, 1).unwrap().to_string(), "000");
        assert_eq!(rank_to_bits(3, 8).unwrap().to_string(), "111");
    }

    #[test]
    fn von_neumann_examples() {
        assert!((von_neumann_entropy(&DensityMatrix::maximally_mixed(2)).unwrap() - 1.0).abs() < 1e-15);
        let psi = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        assert!(von_neumann_entropy(&DensityMatrix::pure(&psi).unwrap()).unwrap().abs() < 1e-12);
        let rho = DensityMatrix::diagonal(&[0.75, 0.25]).unwrap();
        assert!((von_neumann_entropy(&rho).unwrap() - binary_entropy(0.25).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::diagonal(&[0.5, 0.4]).is_err());
        assert!(DensityMatrix::diagonal(&[1.2, -0.2]).is_err());
        assert!(DensityMatrix::from_bloch([0.0, 0.0, 1.0]).is_ok());
        assert!(DensityMatrix::from_bloch([1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn mutual_information_examples() {
        let u = DiscreteDistribution::uniform(2).unwrap();
        assert!(mutual_information(&JointTable::product(&u, &u)).abs() < 1e-15);
        let corr = JointTable::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!((mutual_information(&corr) - 1.0).abs() < 1e-15);
        let bsc = ChannelTable::binary_symmetric(0.25).unwrap().joint(&u).unwrap();
        assert!((mutual_information(&bsc) - (1.0 - H_QUARTER)).abs() < 1e-12);
        assert!((mutual_information(&bsc) - 0.188_721_875_540_867).abs() < 1e-12);
    }

    #[test]
    fn holevo_examples() {
        let u2 = DiscreteDistribution::uniform(2).unwrap();
        let rho = random_density_matrix(2, 2, &mut rng::master(1)).unwrap();
        let same = Ensemble::with_index_labels(vec![rho.clone(), rho], u2.clone(), 1).unwrap();
        assert!(holevo_chi(&same).unwrap().abs() < 1e-12);

        let basis = vec![DensityMatrix::basis(2, 0).unwrap(), DensityMatrix::basis(2, 1).unwrap()];
        let classical = Ensemble::with_index_labels(basis, u2, 1).unwrap();
        assert!((holevo_chi(&classical).unwrap() - 1.0).abs() < 1e-12);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let qrac: Vec<DensityMatrix> = [(s, s), (-s, s), (s, -s), (-s, -s)]
            .iter()
            .map(|&(x, z)| DensityMatrix::from_bloch([x, 0.0, z]).unwrap())
            .collect();
        let e = Ensemble::with_index_labels(qrac, DiscreteDistribution::uniform(4).unwrap(), 2).unwrap();
        // oracle: average is I/2 (S = 1) and every member is pure (S = 0)
        let avg = e.average_state();
        assert!(avg.max_abs_diff(DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);
        for s in e.states() {
            assert!(von_neumann_entropy(s).unwrap().abs() < 1e-12);
        }
        assert!((holevo_chi(&e).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ensemble_validation() {
        let u = DiscreteDistribution::uniform(2).unwrap();
        let a = DensityMatrix::maximally_mixed(2);
        let b = DensityMatrix::maximally_mixed(4);
        assert!(Ensemble::with_index_labels(vec![a.clone(), b], u.clone(), 1).is_err());
        let l = BitString::from_index(1, 0).unwrap();
        assert!(Ensemble::new(vec![a.clone(), a.clone()], u.clone(), vec![l.clone(), l]).is_err());
        let three = DensityMatrix::diagonal(&[0.5, 0.25, 0.25]).unwrap();
        assert!(Ensemble::with_index_labels(vec![three.clone(), three], u, 1).is_err());
    }

    #[test]
    fn product_channel_examples() {
        let u = DiscreteDistribution::uniform(2).unwrap();
        let bsc = ChannelTable::binary_symmetric(0.25).unwrap();
        let single = mutual_information(&bsc.joint(&u).unwrap());
        assert!((product_channel_mutual_info(&u, &bsc, 1).unwrap() - single).abs() < 1e-14);

        let noiseless = ChannelTable::binary_symmetric(0.0).unwrap();
        assert!((product_channel_mutual_info(&u, &noiseless, 3).unwrap() - 1.0).abs() < 1e-12);

        // oracle: two-copy table enumerated directly, P(x, y1 y2) = 1/2 q(y1|x) q(y2|x)
        let q = [0.75, 0.25];
        let mut joint = vec![];
        for x in 0..2 {
            for y1 in 0..2 {
                for y2 in 0..2 {
                    let a = q[(x ^ y1) as usize];
                    let b = q[(x ^ y2) as usize];
                    joint.push(0.5 * a * b);
                }
            }
        }
        let oracle = mutual_information(&JointTable::new(2, 4, joint).unwrap());
        let two = product_channel_mutual_info(&u, &bsc, 2).unwrap();
        assert!((two - oracle).abs() < 1e-14);
        assert!(two > 0.188 && two < 0.378);
        assert!(two <= 2.0 * single + 1e-12);

        let big = ChannelTable::binary_symmetric(0.1).unwrap();
        assert!(matches!(
            product_channel_mutual_info(&u, &big, 25),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn copies_bound_random_channels() {
        let mut r = rng::master(44);
        for _ in 0..50 {
            let nx = r.random_range(2..=4);
            let ny = r.random_range(2..=4);
            let copies = r.random_range(1..=3);
            let ch = ChannelTable::random(nx, ny, &mut r).unwrap();
            let w: Vec<f64> = (0..nx).map(|_| r.random::<f64>() + 0.01).collect();
            let input = DiscreteDistribution::from_weights(&w).unwrap();
            let single = mutual_information(&ch.joint(&input).unwrap());
            let multi = product_channel_mutual_info(&input, &ch, copies).unwrap();
            assert!(multi <= copies as f64 * single + 1e-9);
        }
    }

    #[test]
    fn chi_never_exceeds_log_dimension() {
        let mut r = rng::master(9);
        for k in 0..50 {
            let dim = if k % 2 == 0 { 2 } else { 4 };
            let members = 2 + k % 5;
            let states = (0..members)
                .map(|_| random_density_matrix(dim, 1 + k % dim, &mut r).unwrap())
                .collect();
            let w: Vec<f64> = (0..members).map(|_| r.random::<f64>() + 0.05).collect();
            let e = Ensemble::with_index_labels(states, DiscreteDistribution::from_weights(&w).unwrap(), 3)
                .unwrap();
            let chi = holevo_chi(&e).unwrap();
            assert!(chi <= (dim as f64).log2() + 1e-9 && chi >= -1e-9);
        }
    }

    proptest! {
        #[test]
        fn diagonal_states_match_shannon(w in proptest::collection::vec(0.0f64..1.0, 2..9)) {
            prop_assume!(w.iter().sum::<f64>() > 1e-3);
            let d = DiscreteDistribution::from_weights(&w).unwrap();
            let rho = DensityMatrix::diagonal(d.probs()).unwrap();
            let s = von_neumann_entropy(&rho).unwrap();
            prop_assert!((s - shannon_entropy(&d)).abs() < 1e-10);
        }

        #[test]
        fn mutual_information_sandwich(w in proptest::collection::vec(0.0f64..1.0, 12)) {
            prop_assume!(w.iter().sum::<f64>() > 1e-3);
            let total: f64 = w.iter().sum();
            let j = JointTable::new(3, 4, w.iter().map(|x| x / total).collect()).unwrap();
            let i = mutual_information(&j);
            let hx = entropy_bits(&j.marginal_x());
            let hz = entropy_bits(&j.marginal_z());
            prop_assert!(i >= -1e-9);
            prop_assert!(i <= hx.min(hz) + 1e-9);
        }

        #[test]
        fn binary_entropy_symmetric(p in 0.0f64..=1.0) {
            let a = binary_entropy(p).unwrap();
            let b = binary_entropy(1.0 - p).unwrap();
            prop_assert!((a - b).abs() < 1e-14);
        }
    }
}

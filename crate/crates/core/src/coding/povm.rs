use crate::bits::BitString;
use crate::coding::encoder::{DecodeMap, MAX_DENSE_QUBITS};
use crate::error::{Error, Result};
use crate::info::Ensemble;
use crate::linalg::{self, matrix_function, ComplexMatrix, ZeroPolicy};

pub const POVM_PSD_TOL: f64 = 1e-9;
pub const POVM_COMPLETENESS_TOL: f64 = 1e-8;

/// Measurement with outcomes labelled by bit strings.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
    labels: Vec<BitString>,
}

impl Povm {
    pub fn new(elements: Vec<ComplexMatrix>, labels: Vec<BitString>) -> Result<Self> {
        if elements.is_empty() || elements.len() != labels.len() {
            return Err(Error::InvalidPovm(format!(
                "{} elements, {} labels",
                elements.len(),
                labels.len()
            )));
        }
        let d = elements[0].rows();
        if elements.iter().any(|e| e.rows() != d || e.cols() != d) {
            return Err(Error::InvalidPovm("elements must be square and of equal dimension".into()));
        }
        let n = labels[0].len();
        if labels.iter().any(|l| l.len() != n) {
            return Err(Error::InvalidPovm("labels of different lengths".into()));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::InvalidPovm("duplicate outcome labels".into()));
        }
        let mut sum = ComplexMatrix::zeros(d, d);
        for (e, l) in elements.iter().zip(&labels) {
            let eig = linalg::hermitian_eig(e)
                .map_err(|err| Error::InvalidPovm(format!("element {l}: {err}")))?;
            let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
            if min < -POVM_PSD_TOL {
                return Err(Error::InvalidPovm(format!("element {l} has eigenvalue {min:e}")));
            }
            sum = sum.add(e)?;
        }
        let gap = sum.max_abs_diff(&ComplexMatrix::identity(d));
        if gap > POVM_COMPLETENESS_TOL {
            return Err(Error::InvalidPovm(format!("elements sum to identity only within {gap:e}")));
        }
        Ok(Self { elements, labels })
    }

    /// Computational-basis measurement on `qubits` qubits, outcomes labelled by
    /// the measured string.
    pub fn computational_basis(qubits: usize) -> Result<Self> {
        if qubits == 0 || qubits > MAX_DENSE_QUBITS {
            return Err(Error::TooLarge(format!("basis measurement on {qubits} qubits")));
        }
        let d = 1usize << qubits;
        let mut elements = Vec::with_capacity(d);
        let mut labels = Vec::with_capacity(d);
        for y in 0..d {
            let mut diag = vec![0.0; d];
            diag[y] = 1.0;
            elements.push(ComplexMatrix::from_real_diagonal(&diag));
            labels.push(BitString::from_index(qubits, y as u64)?);
        }
        Self::new(elements, labels)
    }

    /// Computational-basis measurement followed by `decoder`: outcome `z`
    /// collects every basis projector decoded to `z`.
    pub fn from_decode_map(decoder: &DecodeMap) -> Result<Self> {
        let d = 1usize << decoder.m();
        let mut diags: Vec<(u64, Vec<f64>)> = Vec::new();
        for y in 0..d {
            let z = decoder.decode(y as u64);
            let slot = match diags.iter().position(|(l, _)| *l == z) {
                Some(i) => i,
                None => {
                    diags.push((z, vec![0.0; d]));
                    diags.len() - 1
                }
            };
            diags[slot].1[y] = 1.0;
        }
        diags.sort_by_key(|(z, _)| *z);
        let mut elements = Vec::with_capacity(diags.len());
        let mut labels = Vec::with_capacity(diags.len());
        for (z, diag) in diags {
            elements.push(ComplexMatrix::from_real_diagonal(&diag));
            labels.push(BitString::from_index(decoder.n(), z)?);
        }
        Self::new(elements, labels)
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn labels(&self) -> &[BitString] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }

    /// `max |sum E - I|`.
    pub fn completeness_gap(&self) -> f64 {
        let d = self.dim();
        let mut sum = ComplexMatrix::zeros(d, d);
        for e in &self.elements {
            sum = sum.add(e).expect("equal dimensions");
        }
        sum.max_abs_diff(&ComplexMatrix::identity(d))
    }
}

/// Pretty-good (square-root) measurement
/// `E_x = rho^{-1/2} p_x sigma_x rho^{-1/2}` with `rho` the ensemble average
/// and the inverse taken on its support. The complement of the support is
/// split evenly over all outcomes so that the elements sum to the identity.
pub fn pretty_good_measurement(e: &Ensemble) -> Result<Povm> {
    let avg = e.average_state();
    let inv_sqrt = matrix_function(&avg, |x| 1.0 / x.sqrt(), ZeroPolicy::Pseudo)?;
    let support = matrix_function(&avg, |_| 1.0, ZeroPolicy::Pseudo)?;
    let d = e.dim();
    let remainder = ComplexMatrix::identity(d)
        .sub(&support)?
        .scale_real(1.0 / e.len() as f64);
    let mut elements = Vec::with_capacity(e.len());
    for (s, &p) in e.states().iter().zip(e.probs().probs()) {
        let core = if p > 0.0 {
            inv_sqrt
                .matmul(&s.matrix().scale_real(p))?
                .matmul(&inv_sqrt)?
        } else {
            ComplexMatrix::zeros(d, d)
        };
        let el = core.add(&remainder)?;
        // restore exact Hermiticity lost to rounding
        elements.push(ComplexMatrix::from_fn(d, d, |i, j| (el[(i, j)] + el[(j, i)].conj()) * 0.5));
    }
    Povm::new(elements, e.labels().to_vec())
}

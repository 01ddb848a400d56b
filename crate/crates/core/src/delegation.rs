//! Guessing bounds for classically-driven blind computation and a game in
//! which a server tries to reconstruct the client's secret description `C`
//! from the bits it was sent.
//!
//! `C` is a uniform string of `L = ceil(T)` bits, `T = 3.388 n`. The server
//! sees a leak of `C`, applies a strategy, and wins at tolerance `eps` when
//! its guess is within Hamming distance `floor(eps L)` of `C`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::bounds::{binomial, bisect_root, pac_nayak_bound, BoundValue, DEFAULT_BISECT_TOL};
use crate::error::{domain, Error, Result};
use crate::info::binary_entropy_unchecked as h;
use crate::par::{map_range, Exec};
use crate::rng;

/// Description bits per MBQC qubit.
pub const DESCRIPTION_BITS_PER_QUBIT: f64 = 3.388;
/// Fraction of the description the client communicates.
pub const SENT_FRACTION: f64 = 0.591;
/// Quoted exponent constant in the guessing bound.
pub const GUESS_EXPONENT: f64 = 0.41;
/// Quoted exponent in `2^(-1.388 n)`.
pub const PER_QUBIT_EXPONENT: f64 = 1.388;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CdbqcParams {
    pub n: u32,
    pub t: f64,
    pub sent: f64,
    pub ratio: f64,
}

impl CdbqcParams {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return domain("pattern needs at least one qubit");
        }
        let t = DESCRIPTION_BITS_PER_QUBIT * n as f64;
        let sent = 2.0 * n as f64;
        Ok(Self { n, t, sent, ratio: sent / t })
    }

    /// `ceil(T)`.
    pub fn length(&self) -> usize {
        self.t.ceil() as usize
    }

    /// `floor(0.591 T)`.
    pub fn leaked_bits(&self) -> usize {
        (SENT_FRACTION * self.t).floor() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ServerGuessBound {
    /// `2^((-0.41 + eps + H(eps)) T)`.
    pub quoted: BoundValue,
    /// `pac_nayak_bound(T, 0.591 T, eps)`.
    pub internal: BoundValue,
}

pub fn server_guess_bound(t: f64, eps: f64) -> Result<ServerGuessBound> {
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("T must be positive, got {t}"));
    }
    if !(0.0..=0.5).contains(&eps) {
        return domain(format!("eps must lie in [0, 1/2], got {eps}"));
    }
    let quoted = BoundValue::from_log2((-GUESS_EXPONENT + eps + h(eps)) * t);
    let internal = pac_nayak_bound(t, SENT_FRACTION * t, eps)?;
    Ok(ServerGuessBound { quoted, internal })
}

/// Root of `eps + H(eps) = 0.41`: below it the guessing bound is
/// exponentially small.
pub fn guess_threshold() -> Result<f64> {
    bisect_root(|e| e + h(e) - GUESS_EXPONENT, 0.01, 0.2, DEFAULT_BISECT_TOL)
}

/// Smallest `eps` with `1 - H(eps) <= ratio`: a server decoding within
/// `eps T` with certainty from `ratio T` bits needs at least this `eps`.
pub fn perfect_decoder_epsilon_floor(ratio: f64) -> Result<f64> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return domain(format!("ratio must lie in (0, 1), got {ratio}"));
    }
    bisect_root(|e| h(e) - (1.0 - ratio), 0.0, 0.5, DEFAULT_BISECT_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowThresholds {
    pub guess_root: f64,
    pub perfect_floor: f64,
    /// `1.388 / 3.388`, the exponent coefficient implied by `2^(-1.388 n)`.
    pub implied_coefficient: f64,
    pub quoted_coefficient: f64,
}

pub fn flow_thresholds() -> Result<FlowThresholds> {
    Ok(FlowThresholds {
        guess_root: guess_threshold()?,
        perfect_floor: perfect_decoder_epsilon_floor(SENT_FRACTION)?,
        implied_coefficient: PER_QUBIT_EXPONENT / DESCRIPTION_BITS_PER_QUBIT,
        quoted_coefficient: GUESS_EXPONENT,
    })
}

/// What the server learns about `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "bits")]
pub enum Leak {
    /// The first `k` bits.
    Prefix(usize),
    /// All of `C`.
    Full,
    /// `C[2i] xor C[2i + 1]` for `i < k`.
    Parities(usize),
}

impl Leak {
    pub fn sent_bits(&self, length: usize) -> usize {
        match *self {
            Leak::Prefix(k) | Leak::Parities(k) => k,
            Leak::Full => length,
        }
    }

    fn validate(&self, length: usize) -> Result<()> {
        match *self {
            Leak::Prefix(k) if k > length => domain(format!("prefix of {k} bits from a {length}-bit string")),
            Leak::Parities(k) if 2 * k > length => domain(format!("{k} pair parities from a {length}-bit string")),
            _ => Ok(()),
        }
    }

    /// Whether the unseen part is a uniform suffix independent of the leak.
    fn is_prefix(&self) -> bool {
        matches!(self, Leak::Prefix(_) | Leak::Full)
    }

    fn apply(&self, c: &BitString) -> Vec<bool> {
        match *self {
            Leak::Prefix(k) => (0..k).map(|i| c.get(i)).collect(),
            Leak::Full => c.iter().collect(),
            Leak::Parities(k) => (0..k).map(|i| c.get(2 * i) ^ c.get(2 * i + 1)).collect(),
        }
    }
}

/// Server decoders. Each copies the leaked bits into the first positions
/// of the guess and pads the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    ZeroPad,
    /// Uniform random padding.
    RandomPad,
    /// Pads with the majority value of the leaked bits, ties to zero.
    MajorityPriorPad,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::ZeroPad, Strategy::RandomPad, Strategy::MajorityPriorPad];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::ZeroPad => "zero-pad",
            Strategy::RandomPad => "random-pad",
            Strategy::MajorityPriorPad => "majority-prior-pad",
        }
    }

    pub fn is_deterministic(&self) -> bool {
        !matches!(self, Strategy::RandomPad)
    }

    fn guess<R: Rng + ?Sized>(&self, sent: &[bool], length: usize, rng: &mut R) -> Result<BitString> {
        let mut bits = Vec::with_capacity(length);
        bits.extend(sent.iter().copied().take(length));
        let pad = match self {
            Strategy::MajorityPriorPad => 2 * sent.iter().filter(|&&b| b).count() > sent.len(),
            _ => false,
        };
        while bits.len() < length {
            bits.push(match self {
                Strategy::RandomPad => rng.random::<bool>(),
                _ => pad,
            });
        }
        BitString::from_bits(&bits)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "trials")]
pub enum GameMode {
    Exact,
    MonteCarlo(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    /// Real-valued description size used for the bound.
    pub t: f64,
    /// Length of `C` in bits.
    pub length: usize,
    pub leak: Leak,
    pub strategy: Strategy,
    pub mode: GameMode,
    pub seed: u64,
    pub eps_grid: Vec<f64>,
}

/// `0, step, 2 step, ...` up to and including `max`.
pub fn eps_grid(step: f64, max: f64) -> Vec<f64> {
    let count = (max / step + 1e-9).floor() as usize;
    (0..=count).map(|i| i as f64 * step).collect()
}

pub const GRID_STEP: f64 = 0.005;
pub const GRID_MAX: f64 = 0.2;
/// Largest `C` enumerated in exact mode for non-prefix leaks.
pub const MAX_ENUMERATED_BITS: usize = 24;

impl GameConfig {
    /// Prefix leak of `floor(0.591 T)` bits with `T = 3.388 n`.
    pub fn prefix(params: &CdbqcParams, strategy: Strategy, mode: GameMode, seed: u64) -> Self {
        Self {
            t: params.t,
            length: params.length(),
            leak: Leak::Prefix(params.leaked_bits()),
            strategy,
            mode,
            seed,
            eps_grid: eps_grid(GRID_STEP, GRID_MAX),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub epsilon: f64,
    /// `floor(eps L)`.
    pub threshold: usize,
    pub empirical_p: Option<f64>,
    pub exact_p: Option<f64>,
    /// Clamped quoted bound at real `T`; for leaks longer than
    /// `floor(0.591 T)` bits, the clamped `pac_nayak_bound(T, sent, eps)`.
    pub bound_p: f64,
    pub dominated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameCurve {
    pub strategy: Strategy,
    pub leak: Leak,
    pub length: usize,
    pub t: f64,
    pub trials: Option<usize>,
    pub rows: Vec<CurveRow>,
}

impl GameCurve {
    pub fn dominated(&self) -> bool {
        self.rows.iter().all(|r| r.dominated)
    }
}

/// Allowed excess of an empirical frequency over a true probability `p`
/// after `trials` draws.
pub fn dominance_slack(p: f64, trials: usize) -> f64 {
    let n = trials as f64;
    3.0 * (p * (1.0 - p) / n).sqrt() + 3.0 / n
}

/// `P[Bin(s, 1/2) <= k]`, exactly.
pub fn suffix_tail(s: usize, k: usize) -> f64 {
    let num: BigUint = (0..=k.min(s)).map(|i| binomial(s as u64, i as u64)).sum();
    let den = BigUint::one() << s;
    BigRational::new(num.into(), den.into()).to_f64().unwrap_or(0.0)
}

pub fn guessing_game(cfg: &GameConfig, exec: Exec) -> Result<GameCurve> {
    if cfg.length == 0 {
        return domain("secret must have at least one bit");
    }
    cfg.leak.validate(cfg.length)?;
    for &e in &cfg.eps_grid {
        if !(0.0..=0.5).contains(&e) {
            return domain(format!("grid point {e} outside [0, 1/2]"));
        }
    }
    let length = cfg.length;
    let thresholds: Vec<usize> = cfg.eps_grid.iter().map(|e| (e * length as f64).floor() as usize).collect();

    let exact: Option<Vec<f64>> = match (cfg.leak.is_prefix(), cfg.mode) {
        (true, _) => {
            let s = length - cfg.leak.sent_bits(length);
            Some(thresholds.iter().map(|&k| suffix_tail(s, k)).collect())
        }
        (false, GameMode::Exact) => Some(enumerate(cfg, &thresholds, exec)?),
        (false, GameMode::MonteCarlo(_)) => None,
    };

    let (empirical, trials) = match cfg.mode {
        GameMode::Exact => (None, None),
        GameMode::MonteCarlo(trials) => {
            if trials == 0 {
                return domain("need at least one trial");
            }
            let dists = map_range(trials, exec, |i| -> Result<usize> {
                let mut r = rng::trial(cfg.seed, i as u64);
                let c = random_string(length, &mut r)?;
                let g = cfg.strategy.guess(&cfg.leak.apply(&c), length, &mut r)?;
                Ok(c.hamming(&g))
            });
            let mut hist = vec![0usize; length + 1];
            for d in dists {
                hist[d?] += 1;
            }
            let cum = cumulative(&hist);
            let p = thresholds.iter().map(|&k| cum[k.min(length)] as f64 / trials as f64).collect::<Vec<_>>();
            (Some(p), Some(trials))
        }
    };

    let sent = cfg.leak.sent_bits(length);
    let over_budget = sent as f64 > (SENT_FRACTION * cfg.t).floor();
    let mut rows = Vec::with_capacity(cfg.eps_grid.len());
    for (i, &eps) in cfg.eps_grid.iter().enumerate() {
        let bound_p = if over_budget {
            pac_nayak_bound(cfg.t, sent as f64, eps)?.clamped
        } else {
            server_guess_bound(cfg.t, eps)?.quoted.clamped
        };
        let exact_p = exact.as_ref().map(|v| v[i]);
        let empirical_p = empirical.as_ref().map(|v| v[i]);
        let exact_ok = exact_p.is_none_or(|p| p <= bound_p + 1e-12);
        let empirical_ok = match (empirical_p, trials) {
            (Some(p), Some(n)) => p <= bound_p + dominance_slack(bound_p, n),
            _ => true,
        };
        rows.push(CurveRow {
            epsilon: eps,
            threshold: thresholds[i],
            empirical_p,
            exact_p,
            bound_p,
            dominated: exact_ok && empirical_ok,
        });
    }
    Ok(GameCurve {
        strategy: cfg.strategy,
        leak: cfg.leak,
        length,
        t: cfg.t,
        trials,
        rows,
    })
}

fn random_string<R: RngCore + ?Sized>(length: usize, r: &mut R) -> Result<BitString> {
    let bits: Vec<bool> = (0..length).map(|_| r.random::<bool>()).collect();
    BitString::from_bits(&bits)
}

fn cumulative(hist: &[usize]) -> Vec<usize> {
    hist.iter()
        .scan(0usize, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

fn enumerate(cfg: &GameConfig, thresholds: &[usize], exec: Exec) -> Result<Vec<f64>> {
    let length = cfg.length;
    if length > MAX_ENUMERATED_BITS {
        return Err(Error::TooLarge(format!(
            "exact mode enumerates at most {MAX_ENUMERATED_BITS} bits for this leak, got {length}"
        )));
    }
    if !cfg.strategy.is_deterministic() {
        return Err(Error::Unsupported(format!(
            "exact mode for {} needs a prefix leak",
            cfg.strategy.name()
        )));
    }
    let total = 1usize << length;
    let chunk = 1usize << length.saturating_sub(8);
    let chunks = total.div_ceil(chunk);
    let hists = map_range(chunks, exec, |ci| -> Result<Vec<usize>> {
        let mut hist = vec![0usize; length + 1];
        let mut unused = rng::master(0);
        for idx in ci * chunk..((ci + 1) * chunk).min(total) {
            let c = BitString::from_index(length, idx as u64)?;
            let g = cfg.strategy.guess(&cfg.leak.apply(&c), length, &mut unused)?;
            hist[c.hamming(&g)] += 1;
        }
        Ok(hist)
    });
    let mut hist = vec![0usize; length + 1];
    for part in hists {
        for (a, b) in hist.iter_mut().zip(part?) {
            *a += b;
        }
    }
    let cum = cumulative(&hist);
    Ok(thresholds.iter().map(|&k| cum[k.min(length)] as f64 / total as f64).collect())
}

/// `server_guess_bound` minus the internal bound at integer sizes
/// `pac_nayak_bound(ceil T, floor(0.591 T), eps)`, in log2 units, raw and
/// with both exponents clamped at 0.
pub fn quoted_minus_internal(t: f64, eps: f64) -> Result<(f64, f64)> {
    let quoted = server_guess_bound(t, eps)?.quoted.log2_raw;
    let internal = pac_nayak_bound(t.ceil(), (SENT_FRACTION * t).floor(), eps)?.log2_raw;
    Ok((quoted - internal, quoted.min(0.0) - internal.min(0.0)))
}

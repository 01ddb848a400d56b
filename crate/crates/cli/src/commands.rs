use pacsc_core::bounds::{
    binom_entropy_bound, binom_sum_entropy_bound, binomial, binomial_partial_sum, log2_binomial,
    memorization_sample_count, nayak_bound, pac_holevo_min_samples, pac_nayak_bound, qpsc_lhs,
    zipf_sample_lower_bound, BoundValue,
};
use pacsc_core::coding::encoder::MAX_DENSE_BITS;
use pacsc_core::coding::{dominance_curve, SchemeDescriptor};
use pacsc_core::delegation::{
    eps_grid, flow_thresholds, guessing_game, server_guess_bound, CdbqcParams, GameConfig, GameMode, Leak, Strategy,
    DESCRIPTION_BITS_PER_QUBIT, GRID_MAX, GRID_STEP, SENT_FRACTION,
};
use pacsc_core::learning::{
    coverage_miss_check, failure_allowance, pac_experiment, DistributionKind, PacConfig, SampleMode,
};
use pacsc_core::par::Exec;

use crate::args::{require, BoundName, DistributionArg, LeakArg, Params, SchemeArg, StrategyArg};
use crate::output::Report;
use crate::UsageError;

fn exec(p: &Params) -> Exec {
    if Params::flag(p.sequential) {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn put_bound(r: &mut Report, b: &BoundValue) {
    r.put("raw", b.raw);
    r.put("clamped", b.clamped);
    r.put("log2_raw", b.log2_raw);
}

fn small(v: u64, flag: &str, max: u64) -> anyhow::Result<usize> {
    if v > max {
        return Err(UsageError(format!("--{flag} = {v} exceeds {max}")).into());
    }
    Ok(v as usize)
}

pub fn bounds(name: BoundName, p: &Params) -> anyhow::Result<Report> {
    let mut r = Report::new("bounds", p);
    let name_str = serde_json::to_value(name)?.as_str().unwrap_or_default().to_string();
    r.put("bound", name_str);
    match name {
        BoundName::Nayak => {
            let n = require(p.n, "n", "message bits")?;
            let m = require(p.m, "m", "qubits")?;
            put_bound(&mut r, &nayak_bound(n as f64, m as f64)?);
        }
        BoundName::PacNayak => {
            let n = require(p.n, "n", "message bits")?;
            let m = require(p.m, "m", "qubits")?;
            let beta = require(p.beta, "beta", "relative Hamming radius in [0, 1/2]")?;
            put_bound(&mut r, &pac_nayak_bound(n as f64, m as f64, beta)?);
        }
        BoundName::Binom => {
            let n = require(p.n, "n", "binomial n")?;
            let k = require(p.k, "k", "binomial k <= n")?;
            let exponent = binom_entropy_bound(n, k)?;
            r.put("exact", binomial(n, k).to_string());
            r.put("log2_exact", log2_binomial(n, k)?);
            r.put("entropy_exponent", exponent);
            r.put("holds", log2_binomial(n, k)? <= exponent + 1e-9);
        }
        BoundName::BinomSum => {
            let n = require(p.n, "n", "binomial n")?;
            let k = require(p.k, "k", "partial-sum limit t <= n/2")?;
            let exponent = binom_sum_entropy_bound(n, k)?;
            let sum = binomial_partial_sum(n, k);
            let log2_sum = sum.to_string().parse::<f64>().map_or(f64::INFINITY, f64::log2);
            r.put("exact", sum.to_string());
            r.put("log2_exact", log2_sum);
            r.put("entropy_exponent", exponent);
            r.put("holds", log2_sum <= exponent + 1e-9);
        }
        BoundName::Qpsc => {
            let n = require(p.n, "n", "message bits")?;
            let eps = require(p.eps, "eps", "relative Hamming error in [0, 1/2)")?;
            let delta = require(p.delta, "delta", "failure probability in [0, 1]")?;
            r.put("value", qpsc_lhs(n as f64, eps, delta)?);
        }
        BoundName::PacHolevo => {
            let n = require(p.n, "n", "message bits")?;
            let ell = require(p.ell, "ell", "qubits per copy")?;
            let eps = require(p.eps, "eps", "relative Hamming error in [0, 1/2)")?;
            let delta = require(p.delta, "delta", "failure probability in [0, 1]")?;
            r.put("min_copies", pac_holevo_min_samples(n as f64, ell, eps, delta)?);
        }
        BoundName::ZipfLower => {
            let n = require(p.n, "n", "input bits")?;
            let beta = require(p.beta, "beta", "in [0, 1/2]")?;
            let delta = require(p.delta, "delta", "failure probability in [0, 1]")?;
            r.put("value", zipf_sample_lower_bound(small(n, "n", 1000)? as u32, beta, delta)?);
        }
        BoundName::Memorization => {
            let n = require(p.n, "n", "input bits; the domain has 2^n points")?;
            let eps = require(p.eps, "eps", "in (0, 1]")?;
            let delta = require(p.delta, "delta", "in (0, 1)")?;
            let n = small(n, "n", 63)?;
            r.put("domain_size", 1u64 << n);
            r.put("samples", memorization_sample_count(1u64 << n, eps, delta)?);
            r.put("log", "natural");
        }
        BoundName::FlowThresholds => {
            let ft = flow_thresholds()?;
            r.put("guess_root", ft.guess_root);
            r.put("perfect_floor", ft.perfect_floor);
            r.put("implied_coefficient", ft.implied_coefficient);
            r.put("quoted_coefficient", ft.quoted_coefficient);
            r.put("guess_root_in_bracket", ft.guess_root > 0.06 && ft.guess_root < 0.07);
            r.put("perfect_floor_in_bracket", ft.perfect_floor > 0.08 && ft.perfect_floor < 0.09);
        }
        BoundName::ServerGuess => {
            let t = description_bits(p)?;
            let eps = require(p.eps, "eps", "in [0, 1/2]")?;
            let b = server_guess_bound(t, eps)?;
            r.put("T", t);
            put_bound(&mut r, &b.quoted);
            r.put("internal_raw", b.internal.raw);
            r.put("internal_clamped", b.internal.clamped);
            r.put("internal_log2_raw", b.internal.log2_raw);
        }
    }
    Ok(r)
}

fn description_bits(p: &Params) -> anyhow::Result<f64> {
    match (p.t, p.n) {
        (Some(t), _) => Ok(t),
        (None, Some(n)) => Ok(DESCRIPTION_BITS_PER_QUBIT * n as f64),
        (None, None) => Err(UsageError("give --T (description bits) or --n (pattern qubits, T = 3.388 n)".into()).into()),
    }
}

pub fn simulate(p: &Params) -> anyhow::Result<Report> {
    let scheme = require(p.scheme, "scheme", "truncation, qrac-product or random-classical")?;
    let n = small(require(p.n, "n", "message bits")?, "n", 64)?;
    let d = match scheme {
        SchemeArg::Truncation => SchemeDescriptor::truncation(n, small(require(p.m, "m", "kept bits")?, "m", 64)?),
        SchemeArg::QracProduct => SchemeDescriptor::qrac_product(n),
        SchemeArg::RandomClassical => {
            SchemeDescriptor::random_classical(n, small(require(p.m, "m", "codeword bits")?, "m", 64)?, p.seed())
        }
    };
    let built = d.build()?;
    let with_oracle = !Params::flag(p.no_oracle) && n <= MAX_DENSE_BITS;
    let rows = dominance_curve(&built, with_oracle, exec(p))?;
    let mut r = Report::new("simulate", p);
    r.put("scheme", serde_json::to_value(d.scheme)?.as_str().unwrap_or_default().to_string());
    r.put("n", n);
    r.put("m", d.m);
    r.put("oracle", with_oracle);
    r.columns = vec!["t", "beta", "success", "bound_raw", "bound_clamped", "bound_log2", "oracle", "holds"];
    for row in &rows {
        r.rows.push(vec![
            row.t.into(),
            row.beta.into(),
            row.success.into(),
            row.bound.raw.into(),
            row.bound.clamped.into(),
            row.bound.log2_raw.into(),
            row.oracle.into(),
            row.holds.into(),
        ]);
    }
    r.violation = rows.iter().any(|row| !row.holds);
    r.put("dominated", !r.violation);
    Ok(r)
}

pub fn learn(p: &Params) -> anyhow::Result<Report> {
    let n = small(require(p.n, "n", "input bits")?, "n", 16)? as u32;
    let eps = require(p.eps, "eps", "target error in (0, 1]")?;
    let delta = require(p.delta, "delta", "failure probability in (0, 1)")?;
    let trials = p.trials.unwrap_or(100);
    let beta = p.beta.unwrap_or(0.1);
    let mut cfg = PacConfig::new(n, eps, delta, trials, p.seed());
    cfg.distribution = match p.distribution.unwrap_or(DistributionArg::Zipf) {
        DistributionArg::Zipf => DistributionKind::Zipf,
        DistributionArg::Uniform => DistributionKind::Uniform,
    };
    cfg.samples = match (Params::flag(p.full_sweep), p.samples) {
        (true, _) => SampleMode::FullSweep,
        (false, Some(m)) => SampleMode::Fixed(m),
        (false, None) => SampleMode::Guaranteed,
    };
    let report = pac_experiment(&cfg, exec(p))?;
    let guaranteed_m = memorization_sample_count(1u64 << n, eps, delta)?;
    let dist = cfg.distribution.build(1usize << n)?;
    let cover = coverage_miss_check(&dist, eps, delta, report.m);
    let allowance = failure_allowance(delta, trials);

    let mut r = Report::new("learn", p);
    r.put("n", n as u64);
    r.put("domain_size", report.domain_size);
    r.put("distribution", serde_json::to_value(cfg.distribution)?.as_str().unwrap_or_default().to_string());
    r.put("m", report.m);
    r.put("guaranteed_m", guaranteed_m);
    r.put("sample_count_log", "natural");
    r.put("beta", beta);
    r.put("zipf_sample_lower_bound", zipf_sample_lower_bound(n, beta, delta)?);
    r.put("failures", report.failures);
    r.put("failure_fraction", report.failure_fraction);
    r.put("failure_allowance", allowance);
    r.put("flipped_labels", report.flipped_labels);
    r.put("heavy_points", cover.heavy_points);
    r.put("coverage_violations", cover.violations);
    r.columns = vec!["trial", "m", "error", "failed"];
    for t in &report.records {
        r.rows.push(vec![t.trial.into(), t.m.into(), t.error.into(), t.failed.into()]);
    }
    let guaranteed_run = matches!(cfg.samples, SampleMode::Guaranteed);
    r.violation = report.flipped_labels > 0
        || (guaranteed_run && (report.failure_fraction > allowance || cover.violations > 0));
    Ok(r)
}

pub fn delegate(p: &Params) -> anyhow::Result<Report> {
    let t = description_bits(p)?;
    if !(1.0..=1e6).contains(&t) {
        return Err(UsageError(format!("description bits must lie in [1, 1e6], got {t}")).into());
    }
    let length = t.ceil() as usize;
    let default_sent = (SENT_FRACTION * t).floor() as u64;
    let leak = match p.leak.unwrap_or(LeakArg::Prefix) {
        LeakArg::Prefix => Leak::Prefix(small(p.m.unwrap_or(default_sent), "m", length as u64)?),
        LeakArg::Full => Leak::Full,
        LeakArg::Parities => Leak::Parities(small(p.m.unwrap_or((length / 2) as u64), "m", length as u64)?),
    };
    let strategies: Vec<Strategy> = match p.strategy.unwrap_or(StrategyArg::All) {
        StrategyArg::ZeroPad => vec![Strategy::ZeroPad],
        StrategyArg::RandomPad => vec![Strategy::RandomPad],
        StrategyArg::MajorityPriorPad => vec![Strategy::MajorityPriorPad],
        StrategyArg::All => Strategy::ALL.to_vec(),
    };
    let mode = match p.trials {
        Some(n) => GameMode::MonteCarlo(n),
        None => GameMode::Exact,
    };
    let params = match p.n {
        Some(n) => Some(CdbqcParams::new(small(n, "n", 1 << 20)? as u32)?),
        None => None,
    };

    let mut r = Report::new("delegate", p);
    r.put("T", t);
    r.put("length", length);
    r.put("sent_bits", leak.sent_bits(length));
    r.put("leak", serde_json::to_value(p.leak.unwrap_or(LeakArg::Prefix))?.as_str().unwrap_or_default().to_string());
    r.put("mode", if p.trials.is_some() { "monte-carlo" } else { "exact" });
    if let Some(c) = params {
        r.put("ratio", c.ratio);
    }
    r.columns = vec!["strategy", "epsilon", "threshold", "empirical_p", "exact_p", "bound_p", "dominated"];
    for s in strategies {
        let cfg = GameConfig {
            t,
            length,
            leak,
            strategy: s,
            mode,
            seed: p.seed(),
            eps_grid: eps_grid(GRID_STEP, GRID_MAX),
        };
        let curve = guessing_game(&cfg, exec(p))?;
        r.violation |= !curve.dominated();
        for row in curve.rows {
            r.rows.push(vec![
                s.name().into(),
                row.epsilon.into(),
                row.threshold.into(),
                row.empirical_p.into(),
                row.exact_p.into(),
                row.bound_p.into(),
                row.dominated.into(),
            ]);
        }
    }
    r.put("dominated", !r.violation);
    Ok(r)
}

//! Implementations of the six subcommands.

use std::path::Path;

use rrtwo::analysis::{
    table_grid, thresholds as threshold_report, var_crossed, var_mangat, var_proposed, var_simple,
    variance_curves, Baseline, DenominatorConvention, EfficiencyMode, SweepSpec, SweepTarget,
};
use rrtwo::estimators::{
    estimate_crossed_from_counts, estimate_mangat, estimate_proposed, estimate_simple,
    ClampedTriple, EstimateTriple,
};
use rrtwo::forward::{forward_proposed, forward_simple, mangat_alpha};
use rrtwo::montecarlo::{run_experiment, SimulationConfig};
use rrtwo::types::{CellCounts, DesignParams, ModelId, PopulationTruth, ResponseProfile};

use crate::config::{pick, require, FileConfig};
use crate::output::{fmt_float, format_rounded, render, FormatKind, Record};
use crate::{
    CliError, CurvesArgs, EstimateArgs, ForwardArgs, SimulateArgs, TablesArgs, ThresholdsArgs,
};

fn validate_probability(value: f64, flag: &str) -> Result<f64, CliError> {
    if value > 0.0 && value <= 1.0 {
        Ok(value)
    } else {
        Err(CliError::Input(format!(
            "--{flag} must lie in (0, 1], got {value}"
        )))
    }
}

fn resolve_params(p: Option<f64>, lambda: Option<f64>) -> Result<DesignParams, CliError> {
    let p = require(p, "p")?;
    let lambda = require(lambda, "lambda")?;
    DesignParams::new(p, lambda).map_err(Into::into)
}

fn resolve_truth(
    pi_a: Option<f64>,
    pi_b: Option<f64>,
    pi_ab: Option<f64>,
) -> Result<PopulationTruth, CliError> {
    let pi_a = require(pi_a, "pi-a")?;
    let pi_b = require(pi_b, "pi-b")?;
    let pi_ab = require(pi_ab, "pi-ab")?;
    PopulationTruth::new(pi_a, pi_b, pi_ab).map_err(Into::into)
}

fn resolve_model(model: Option<String>) -> Result<ModelId, CliError> {
    require(model, "model")?.parse().map_err(CliError::from)
}

fn parse_counts_text(text: &str) -> Result<CellCounts, CliError> {
    let fields: Vec<&str> = text.trim().split(',').map(str::trim).collect();
    if fields.len() != 4 {
        return Err(CliError::Input(format!(
            "counts: expected four comma-separated values n11,n10,n01,n00, got {} field(s)",
            fields.len()
        )));
    }
    let names = ["n11", "n10", "n01", "n00"];
    let mut values = [0u64; 4];
    for (i, raw) in fields.iter().enumerate() {
        values[i] = raw.parse().map_err(|_| {
            CliError::Input(format!(
                "counts: {} value '{raw}' is not a non-negative integer",
                names[i]
            ))
        })?;
    }
    Ok(CellCounts::new(values[0], values[1], values[2], values[3]))
}

fn read_counts_file(path: &Path) -> Result<CellCounts, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("counts file {}: {e}", path.display())))?;
    let mut lines = text.lines().filter(|line| !line.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| CliError::Input("counts file: file is empty".into()))?;
    let normalized = header
        .split(',')
        .map(str::trim)
        .collect::<Vec<_>>()
        .join(",");
    if normalized != "n11,n10,n01,n00" {
        return Err(CliError::Input(format!(
            "counts file: expected header 'n11,n10,n01,n00', got '{}'",
            header.trim()
        )));
    }
    let row = lines
        .next()
        .ok_or_else(|| CliError::Input("counts file: missing data row".into()))?;
    parse_counts_text(row)
}

fn emit(records: &[Record], format: FormatKind) {
    print!("{}", render(records, format));
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn estimate(args: EstimateArgs, file: &FileConfig, format: FormatKind) -> Result<(), CliError> {
    let model = resolve_model(pick(args.model, file.model.clone()))?;
    let p = pick(args.p, file.p);
    let lambda = pick(args.lambda, file.lambda);
    let counts = match (
        pick(args.counts, file.counts.clone()),
        pick(args.counts_file, file.counts_file.clone()),
    ) {
        (Some(inline), None) => parse_counts_text(&inline)?,
        (None, Some(path)) => read_counts_file(&path)?,
        (Some(_), Some(_)) => {
            return Err(CliError::Input(
                "pass either --counts or --counts-file, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Input(
                "missing counts: pass --counts or --counts-file".into(),
            ))
        }
    };
    let n = counts.n();
    if n == 0 {
        return Err(CliError::Input("counts sum to zero".into()));
    }

    let record = match model {
        ModelId::MangatSingleA | ModelId::MangatSingleB => {
            let (device, yes, flag) = if model == ModelId::MangatSingleA {
                (require(p, "p")?, counts.yes_a(), "p")
            } else {
                (require(lambda, "lambda")?, counts.yes_b(), "lambda")
            };
            let device = validate_probability(device, flag)?;
            let raw = estimate_mangat(yes, n, device)?;
            let clamped = raw.clamp(0.0, 1.0);
            let se = var_mangat(
                device,
                clamped,
                n,
                DenominatorConvention::SampleSizeMinusOne,
            )?
            .sqrt();
            Record::new()
                .text("model", model.label())
                .int("n", n)
                .float("pi_raw", raw)
                .float("pi", clamped)
                .bool("clamped", clamped != raw)
                .float("se", se)
        }
        ModelId::ProposedEA | ModelId::SimpleModel | ModelId::CrossedModel => {
            let params = resolve_params(p, lambda)?;
            let est: EstimateTriple = match model {
                ModelId::ProposedEA => estimate_proposed(&counts, &params)?,
                ModelId::SimpleModel => estimate_simple(&counts, &params)?,
                ModelId::CrossedModel => estimate_crossed_from_counts(&counts, &params)?,
                _ => unreachable!(),
            };
            let clamped: ClampedTriple = est.clamped();
            let plug_in = PopulationTruth::new(clamped.pi_a, clamped.pi_b, clamped.pi_ab)?;
            let variances = match model {
                ModelId::ProposedEA => var_proposed(&params, &plug_in, n),
                ModelId::SimpleModel => var_simple(&params, &plug_in, n)?,
                ModelId::CrossedModel => var_crossed(&params, &plug_in, n)?,
                _ => unreachable!(),
            };
            Record::new()
                .text("model", model.label())
                .int("n", n)
                .float("pi_a_raw", est.pi_a)
                .float("pi_b_raw", est.pi_b)
                .float("pi_ab_raw", est.pi_ab)
                .float("pi_a", clamped.pi_a)
                .float("pi_b", clamped.pi_b)
                .float("pi_ab", clamped.pi_ab)
                .bool("clamped", clamped.changed)
                .float("se_a", variances.var_a.sqrt())
                .float("se_b", variances.var_b.sqrt())
                .float("se_ab", variances.var_ab.sqrt())
        }
    };
    emit(&[record], format);
    Ok(())
}

pub fn forward(args: ForwardArgs, file: &FileConfig, format: FormatKind) -> Result<(), CliError> {
    let model = resolve_model(pick(args.model, file.model.clone()))?;
    let p = pick(args.p, file.p);
    let lambda = pick(args.lambda, file.lambda);
    let pi_a = pick(args.pi_a, file.pi_a);
    let pi_b = pick(args.pi_b, file.pi_b);
    let pi_ab = pick(args.pi_ab, file.pi_ab);

    let record = match model {
        ModelId::MangatSingleA | ModelId::MangatSingleB => {
            let (device, pi, flags) = if model == ModelId::MangatSingleA {
                (require(p, "p")?, require(pi_a, "pi-a")?, ("p", "pi-a"))
            } else {
                (
                    require(lambda, "lambda")?,
                    require(pi_b, "pi-b")?,
                    ("lambda", "pi-b"),
                )
            };
            let device = validate_probability(device, flags.0)?;
            if !(0.0..=1.0).contains(&pi) {
                return Err(CliError::Input(format!(
                    "--{} must lie in [0, 1], got {pi}",
                    flags.1
                )));
            }
            Record::new()
                .text("model", model.label())
                .float("device_p", device)
                .float("pi", pi)
                .float("alpha", mangat_alpha(device, pi))
        }
        ModelId::CrossedModel => {
            return Err(rrtwo::Error::UnsimulableModel(ModelId::CrossedModel).into());
        }
        ModelId::ProposedEA | ModelId::SimpleModel => {
            let params = resolve_params(p, lambda)?;
            let truth = resolve_truth(pi_a, pi_b, pi_ab)?;
            let profile: ResponseProfile = match model {
                ModelId::ProposedEA => forward_proposed(&params, &truth),
                ModelId::SimpleModel => forward_simple(&params, &truth),
                _ => unreachable!(),
            };
            Record::new()
                .text("model", model.label())
                .float("p", params.p())
                .float("lambda", params.lambda())
                .float("pi_a", truth.pi_a())
                .float("pi_b", truth.pi_b())
                .float("pi_ab", truth.pi_ab())
                .float("t11", profile.t11())
                .float("t10", profile.t10())
                .float("t01", profile.t01())
                .float("t00", profile.t00())
        }
    };
    emit(&[record], format);
    Ok(())
}

pub fn simulate(args: SimulateArgs, file: &FileConfig, format: FormatKind) -> Result<(), CliError> {
    let model = resolve_model(pick(args.model, file.model.clone()))?;
    let params = resolve_params(pick(args.p, file.p), pick(args.lambda, file.lambda))?;
    let truth = resolve_truth(
        pick(args.pi_a, file.pi_a),
        pick(args.pi_b, file.pi_b),
        pick(args.pi_ab, file.pi_ab),
    )?;
    let n = pick(args.n, file.n).unwrap_or(1000);
    let reps = pick(args.reps, file.reps).unwrap_or(20_000);
    let seed = pick(args.seed, file.seed).unwrap_or(0);

    let config = SimulationConfig::new(model, params, truth, n, reps, seed)?;
    let summary = run_experiment(&config);

    let mut record = Record::new()
        .text("model", model.label())
        .int("n", n)
        .int("reps", reps)
        .int("seed", seed);
    for (name, component) in summary.components() {
        let (mean, se, z, var_emp, var_theory, ratio) = match component {
            Some(c) => (
                Some(c.mean),
                Some(c.se_of_mean),
                Some(c.z_score()),
                Some(c.empirical_variance),
                Some(c.theoretical_variance),
                Some(c.variance_ratio()),
            ),
            None => (None, None, None, None, None, None),
        };
        record = record
            .opt_float(lookup_field(name, "mean"), mean)
            .opt_float(lookup_field(name, "se_mean"), se)
            .opt_float(lookup_field(name, "z"), z)
            .opt_float(lookup_field(name, "var_emp"), var_emp)
            .opt_float(lookup_field(name, "var_theory"), var_theory)
            .opt_float(lookup_field(name, "var_ratio"), ratio);
    }
    let theory = summary.theoretical_theta.as_array();
    for (idx, label) in ["11", "10", "01", "00"].iter().enumerate() {
        record = record.float(
            theta_field("theta_emp_", label),
            summary.empirical_theta[idx],
        );
    }
    for (idx, label) in ["11", "10", "01", "00"].iter().enumerate() {
        record = record.float(theta_field("theta_theory_", label), theory[idx]);
    }

    let text = render(&[record], format);
    match pick(args.out, file.out.clone()) {
        Some(path) => write_text(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

// Field names must be 'static for the record builder; enumerate them.
fn lookup_field(component: &str, stat: &str) -> &'static str {
    match (component, stat) {
        ("a", "mean") => "mean_a",
        ("a", "se_mean") => "se_mean_a",
        ("a", "z") => "z_a",
        ("a", "var_emp") => "var_emp_a",
        ("a", "var_theory") => "var_theory_a",
        ("a", "var_ratio") => "var_ratio_a",
        ("b", "mean") => "mean_b",
        ("b", "se_mean") => "se_mean_b",
        ("b", "z") => "z_b",
        ("b", "var_emp") => "var_emp_b",
        ("b", "var_theory") => "var_theory_b",
        ("b", "var_ratio") => "var_ratio_b",
        ("ab", "mean") => "mean_ab",
        ("ab", "se_mean") => "se_mean_ab",
        ("ab", "z") => "z_ab",
        ("ab", "var_emp") => "var_emp_ab",
        ("ab", "var_theory") => "var_theory_ab",
        ("ab", "var_ratio") => "var_ratio_ab",
        _ => unreachable!(),
    }
}

fn theta_field(prefix: &str, label: &str) -> &'static str {
    match (prefix, label) {
        ("theta_emp_", "11") => "theta_emp_11",
        ("theta_emp_", "10") => "theta_emp_10",
        ("theta_emp_", "01") => "theta_emp_01",
        ("theta_emp_", "00") => "theta_emp_00",
        ("theta_theory_", "11") => "theta_theory_11",
        ("theta_theory_", "10") => "theta_theory_10",
        ("theta_theory_", "01") => "theta_theory_01",
        ("theta_theory_", "00") => "theta_theory_00",
        _ => unreachable!(),
    }
}

fn parse_levels(text: &str) -> Result<Vec<f64>, CliError> {
    let mut levels = Vec::new();
    for field in text.split(',') {
        let trimmed = field.trim();
        let level: f64 = trimmed
            .parse()
            .map_err(|_| CliError::Input(format!("levels: '{trimmed}' is not a number")))?;
        if !(0.0..=1.0).contains(&level) {
            return Err(CliError::Input(format!(
                "levels: {level} must lie in [0, 1]"
            )));
        }
        levels.push(level);
    }
    if levels.is_empty() {
        return Err(CliError::Input(
            "levels: at least one level required".into(),
        ));
    }
    Ok(levels)
}

pub fn tables(args: TablesArgs, file: &FileConfig) -> Result<(), CliError> {
    let p = pick(args.p, file.p).unwrap_or(0.6);
    let lambda = pick(args.lambda, file.lambda).unwrap_or(0.7);
    let params = DesignParams::new(p, lambda).map_err(CliError::from)?;
    let baseline: Baseline = pick(args.baseline, file.baseline.clone())
        .unwrap_or_else(|| "simple".into())
        .parse()?;
    let mode: EfficiencyMode = pick(args.mode, file.mode.clone())
        .unwrap_or_else(|| "published".into())
        .parse()?;
    let levels = parse_levels(
        &pick(args.levels, file.levels.clone()).unwrap_or_else(|| "0.05,0.1,0.2".into()),
    )?;
    let out_dir = pick(args.out, file.out.clone()).unwrap_or_else(|| "tables".into());

    std::fs::create_dir_all(&out_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", out_dir.display())))?;

    let decimals = match baseline {
        Baseline::Simple => 2,
        Baseline::Crossed => 1,
    };
    for &level in &levels {
        let records = table_grid(&params, &[level], mode, baseline)?;
        let mut text = String::from("pi_a,pi_b,re_a,re_b,re_ab\n");
        for record in &records {
            text.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_float(record.pi_a),
                fmt_float(record.pi_b),
                format_rounded(record.re_a, decimals),
                format_rounded(record.re_b, decimals),
                format_rounded(record.re_ab, decimals),
            ));
        }
        let name = format!(
            "{}_{}_pi_ab_{}.csv",
            baseline.label(),
            mode.label(),
            fmt_float(level)
        );
        let path = out_dir.join(name);
        write_text(&path, &text)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

pub fn thresholds(
    args: ThresholdsArgs,
    file: &FileConfig,
    format: FormatKind,
) -> Result<(), CliError> {
    let params = resolve_params(pick(args.p, file.p), pick(args.lambda, file.lambda))?;
    let truth = resolve_truth(
        pick(args.pi_a, file.pi_a),
        pick(args.pi_b, file.pi_b),
        pick(args.pi_ab, file.pi_ab),
    )?;
    let report = threshold_report(&params, &truth)?;
    let record = Record::new()
        .float("p", params.p())
        .float("lambda", params.lambda())
        .float("pi_a", truth.pi_a())
        .float("pi_b", truth.pi_b())
        .float("pi_ab", truth.pi_ab())
        .float("threshold_a", report.threshold_a)
        .float("threshold_b", report.threshold_b)
        .float("threshold_ab", report.threshold_ab)
        .bool("satisfied_a", report.satisfied_a)
        .bool("satisfied_b", report.satisfied_b)
        .bool("satisfied_ab", report.satisfied_ab)
        .bool("boundary_a", report.boundary_a)
        .bool("boundary_b", report.boundary_b)
        .bool("boundary_ab", report.boundary_ab);
    emit(&[record], format);
    Ok(())
}

fn round10(x: f64) -> f64 {
    (x * 1e10).round() / 1e10
}

fn sweep_values(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(CliError::Input(format!(
            "--step must be positive, got {step}"
        )));
    }
    if !from.is_finite() || !to.is_finite() {
        return Err(CliError::Input("sweep bounds must be finite".into()));
    }
    if to < from {
        return Ok(Vec::new());
    }
    let count = ((to - from) / step + 1e-9).floor() as u64 + 1;
    Ok((0..count)
        .map(|k| round10(from + k as f64 * step))
        .collect())
}

pub fn curves(args: CurvesArgs, file: &FileConfig) -> Result<(), CliError> {
    let params = resolve_params(pick(args.p, file.p), pick(args.lambda, file.lambda))?;
    let target = match require(pick(args.sweep, file.sweep.clone()), "sweep")?.as_str() {
        "pi-a" => SweepTarget::PiA,
        "pi-b" => SweepTarget::PiB,
        "pi-ab" => SweepTarget::PiAb,
        other => {
            return Err(CliError::Input(format!(
                "--sweep must be pi-a, pi-b, or pi-ab, got '{other}'"
            )))
        }
    };
    let values = sweep_values(
        require(pick(args.from, file.from), "from")?,
        require(pick(args.to, file.to), "to")?,
        require(pick(args.step, file.step), "step")?,
    )?;
    // The swept coordinate's own flag is not needed; the other two are.
    let pi_a = pick(args.pi_a, file.pi_a);
    let pi_b = pick(args.pi_b, file.pi_b);
    let pi_ab = pick(args.pi_ab, file.pi_ab);
    let spec = SweepSpec {
        target,
        values,
        pi_a: if target == SweepTarget::PiA {
            0.0
        } else {
            require(pi_a, "pi-a")?
        },
        pi_b: if target == SweepTarget::PiB {
            0.0
        } else {
            require(pi_b, "pi-b")?
        },
        pi_ab: if target == SweepTarget::PiAb {
            0.0
        } else {
            require(pi_ab, "pi-ab")?
        },
        n: pick(args.n, file.n).unwrap_or(1),
    };
    let rows = variance_curves(&params, &spec)?;

    let mut text = format!("{},var_simple,var_crossed,var_proposed\n", target.label());
    for row in &rows {
        text.push_str(&format!(
            "{},{:.10},{:.10},{:.10}\n",
            fmt_float(row.x),
            row.var_simple,
            row.var_crossed,
            row.var_proposed
        ));
    }
    match pick(args.out, file.out.clone()) {
        Some(path) => write_text(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

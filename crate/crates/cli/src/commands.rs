use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use pbe_core::circuit::{decompose, transpile_count, DecompositionPolicy};
use pbe_core::circuit::{Circuit, StateVector};
use pbe_core::qsvt;
use pbe_core::diag::{build_dense_baseline, build_uc, build_us_with, p0_closed_form, SinusoidSpec, UcVariant};
use pbe_core::io::{emit_csv, Cell};
use pbe_core::lcu::{build_banded, build_fourier_diagonal, build_lcu, BandedSpec, FourierSpec, LcuSpec};
use pbe_core::linalg::{cos_diag, sin_diag, to_complex};
use pbe_core::pde::{elliptic_lcu, AdrSpec, EllipticSpec, ReactionShape};
use pbe_core::qsvt::{adr_initial_state, approx_poly, run_adr, run_elliptic, InversionWindow, PolyTarget, QsvtRun};
use pbe_core::shift::{build_shift, ShiftSpec};
use pbe_core::verify::{success_probability, verify_block};

use crate::error::CliError;
use crate::{AdrArgs, CircuitKind, Diagonal, EllipticArgs, ExportArgs, Output, P0Args, PhaseArgs, PolyKind, ScalingArgs, Shape, ShiftDirection, VerifyArgs, Window};

type Result<T> = std::result::Result<T, CliError>;

fn out_dir(o: &Output) -> Result<&Path> {
    fs::create_dir_all(&o.out).map_err(|source| CliError::Path { path: o.out.clone(), source })?;
    Ok(&o.out)
}

fn write_text(path: PathBuf, text: &str) -> Result<String> {
    fs::write(&path, text).map_err(|source| CliError::Path { path: path.clone(), source })?;
    Ok(path.display().to_string())
}

fn write_csv(dir: &Path, name: &str, header: &[&str], rows: &[Vec<Cell>]) -> Result<String> {
    let path = dir.join(name);
    emit_csv(&path, header, rows).map_err(|e| match e {
        pbe_core::Error::Io(source) => CliError::Path { path: path.clone(), source },
        other => other.into(),
    })?;
    Ok(path.display().to_string())
}

fn read_config<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Path { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Core(e.into()))
}

fn require_config(path: &Option<PathBuf>, kind: &str) -> Result<PathBuf> {
    path.clone().ok_or_else(|| CliError::Config(format!("--config is required for {kind}")))
}

pub fn verify(a: &VerifyArgs) -> Result<Value> {
    if !(a.tol >= 0.0) {
        return Err(CliError::Config(format!("--tol must be non-negative, got {}", a.tol)));
    }
    let spec = SinusoidSpec::new(a.omega, a.phi);
    let variant: UcVariant = a.variant.into();
    let dim = 1usize << a.n.min(30);
    let (be, target) = match a.which {
        Diagonal::Cos => (build_uc(a.n, spec, variant)?, cos_diag(dim, a.omega, a.phi)),
        Diagonal::Sin => (build_us_with(a.n, spec, variant)?, sin_diag(dim, a.omega, a.phi)),
    };
    let report = verify_block(&be, &to_complex(&target), a.tol)?;
    let path = write_text(out_dir(&a.output)?.join("verify.json"), &report.to_json())?;
    if !report.passed {
        return Err(CliError::VerificationFailed { max_abs_error: report.max_abs_error, tolerance: a.tol });
    }
    Ok(json!({ "command": "verify", "report": report, "artifacts": [path] }))
}

fn sweep_state(n: usize, state: &str, seed: u64) -> Result<StateVector> {
    let s = match state {
        "uniform" => StateVector::uniform(n)?,
        "random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let amps = (0..1usize << n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            StateVector::normalized(amps)?
        }
        other => match other.strip_prefix("basis:").map(str::parse::<usize>) {
            Some(Ok(k)) => StateVector::basis(n, k)?,
            _ => return Err(CliError::Config(format!("unknown state `{other}`; expected uniform, basis:K or random"))),
        },
    };
    Ok(s)
}

pub fn p0_sweep(a: &P0Args) -> Result<Value> {
    if a.points == 0 {
        return Err(CliError::Config("--points must be positive".into()));
    }
    let state = sweep_state(a.n, &a.state, a.seed)?;
    let mut rows = Vec::with_capacity(a.points);
    let mut mean = 0.0;
    for j in 0..a.points {
        let omega = TAU * j as f64 / a.points as f64;
        let be = build_uc(a.n, SinusoidSpec::new(omega, a.phi), UcVariant::Select)?;
        let p0 = success_probability(&be, &state)?;
        let expected = if a.phi == 0.0 { Cell::Float(p0_closed_form(state.amplitudes(), omega)?) } else { Cell::Text(String::new()) };
        mean += p0 / a.points as f64;
        rows.push(vec![Cell::Float(omega), Cell::Float(p0), expected]);
    }
    let path = write_csv(out_dir(&a.output)?, "p0_sweep.csv", &["omega", "p0", "p0_closed_form"], &rows)?;
    Ok(json!({ "command": "p0-sweep", "state": a.state, "points": a.points, "mean_p0": mean, "artifacts": [path] }))
}

/// Least-squares `y = a x + b`; returns `(a, b, max |residual| / y)`.
fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let m = xs.len() as f64;
    let (sx, sy) = (xs.iter().sum::<f64>(), ys.iter().sum::<f64>());
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let det = m * sxx - sx * sx;
    let a = if det == 0.0 { 0.0 } else { (m * sxy - sx * sy) / det };
    let b = (sy - a * sx) / m;
    let worst = xs.iter().zip(ys).map(|(x, y)| ((a * x + b - y) / y).abs()).fold(0.0, f64::max);
    (a, b, worst)
}

pub fn gate_scaling(a: &ScalingArgs) -> Result<Value> {
    if a.n_min == 0 || a.n_min > a.n_max || a.n_max > 16 {
        return Err(CliError::Config(format!("need 1 <= n-min <= n-max <= 16, got {}..{}", a.n_min, a.n_max)));
    }
    let policy = DecompositionPolicy::default();
    let mut rows = Vec::new();
    let (mut ns, mut ours, mut base) = (Vec::new(), Vec::new(), Vec::new());
    for n in a.n_min..=a.n_max {
        let spec = SinusoidSpec::new(a.omega, 0.0);
        let select = transpile_count(&build_uc(n, spec, UcVariant::Select)?.circuit, policy)?;
        let conj = transpile_count(&build_uc(n, spec, UcVariant::CnotConjugation)?.circuit, policy)?;
        let values: Vec<f64> = (0..1usize << n).map(|k| (k as f64 * a.omega).cos()).collect();
        let dense = transpile_count(&build_dense_baseline(&values)?.circuit, policy)?;
        ns.push(n as f64);
        ours.push(select.total as f64);
        base.push(dense.total as f64);
        rows.push(vec![
            Cell::from(n),
            Cell::from(select.total),
            Cell::from(select.cnot),
            Cell::from(conj.total),
            Cell::from(conj.cnot),
            Cell::from(dense.total),
            Cell::from(dense.cnot),
        ]);
    }
    let header = ["n", "count_ours", "cnot_ours", "count_cnot_conjugation", "cnot_cnot_conjugation", "count_baseline", "cnot_baseline"];
    let dir = out_dir(&a.output)?;
    let csv = write_csv(dir, "gate_scaling.csv", &header, &rows)?;
    let (slope, intercept, residual) = linear_fit(&ns, &ours);
    let log_base: Vec<f64> = base.iter().map(|c| c.log2()).collect();
    let (exponent, _, _) = linear_fit(&ns, &log_base);
    let fit = json!({
        "omega": a.omega,
        "linear_fit": { "slope": slope, "intercept": intercept, "max_relative_residual": residual },
        "baseline_log2_slope": exponent,
    });
    let fit_path = write_text(dir.join("gate_scaling_fit.json"), &serde_json::to_string_pretty(&fit).expect("fit serializes"))?;
    Ok(json!({ "command": "gate-scaling", "fit": fit, "artifacts": [csv, fit_path] }))
}

/// Both vectors normalized, `qsvt` sign-aligned with `reference`.
fn aligned_profiles(output: &[f64], reference: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    let sign = if output.iter().zip(reference).map(|(a, b)| a * b).sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
    let (nu, nv) = (norm(output), norm(reference));
    (output.iter().map(|x| sign * x / nu).collect(), reference.iter().map(|x| x / nv).collect())
}

fn tag(x: f64) -> String {
    let s = format!("{x}");
    s.replace('.', "p").replace('-', "m")
}

pub fn elliptic(a: &EllipticArgs) -> Result<Value> {
    let spec: EllipticSpec = match &a.config {
        Some(p) => read_config(p)?,
        None => EllipticSpec { d: a.d, a0: a.a0, omega_x: a.omega, n: a.n },
    };
    spec.validate()?;
    if a.k.is_empty() {
        return Err(CliError::Config("--k needs at least one value".into()));
    }
    let window = match a.window {
        Window::Covering => InversionWindow::Covering,
        Window::Literal => InversionWindow::Literal,
    };
    let dir = out_dir(&a.output)?;
    let mut rows = Vec::new();
    let mut artifacts = Vec::new();
    let mut runs: Vec<QsvtRun> = Vec::new();
    for &k in &a.k {
        let run = run_elliptic(&spec, k, a.epsilon, window)?;
        rows.push(vec![
            Cell::from(run.problem.clone()),
            Cell::Float(k),
            Cell::Float(run.relative_error),
            Cell::Float(run.success_probability),
            Cell::from(run.degree),
            Cell::Float(run.kappa.unwrap_or(k)),
            Cell::Float(run.alpha),
        ]);
        let (q, c) = aligned_profiles(&run.output, &run.reference);
        let h = spec.h();
        let profile: Vec<Vec<Cell>> = (0..q.len()).map(|i| vec![Cell::from(i), Cell::Float(i as f64 * h), Cell::Float(q[i]), Cell::Float(c[i])]).collect();
        artifacts.push(write_csv(dir, &format!("elliptic_solution_k{}.csv", tag(k)), &["index", "x", "qsvt", "classical"], &profile)?);
        runs.push(run);
    }
    let header = ["problem", "k", "e_r", "success_prob", "degree", "kappa", "alpha"];
    artifacts.insert(0, write_csv(dir, "elliptic.csv", &header, &rows)?);
    let summary: Vec<Value> = runs
        .iter()
        .map(|r| json!({ "k": r.parameter, "e_r": r.relative_error, "success_prob": r.success_probability, "degree": r.degree, "kappa": r.kappa, "phase_residual": r.phase_residual }))
        .collect();
    Ok(json!({ "command": "elliptic", "spec": spec, "runs": summary, "artifacts": artifacts }))
}

pub fn adr(a: &AdrArgs) -> Result<Value> {
    let mut spec: AdrSpec = match &a.config {
        Some(p) => read_config(p)?,
        None => {
            let shape = match a.profile {
                Shape::Sine => ReactionShape::Sine,
                Shape::Cosine => ReactionShape::Cosine,
                Shape::Square => ReactionShape::Square,
                Shape::Triangle => ReactionShape::Triangle,
            };
            shape.adr_spec(a.n)
        }
    };
    if !a.t.is_empty() {
        spec.times = a.t.clone();
    }
    spec.validate()?;
    let runs = run_adr(&spec, &spec.times, a.epsilon)?;
    let initial: Vec<f64> = adr_initial_state(&spec)?.amplitudes().iter().map(|z| z.re).collect();
    let dir = out_dir(&a.output)?;
    let mut artifacts = Vec::new();
    let mut rows = Vec::new();
    let dx = spec.dx();
    let reaction = spec.reaction_values();
    for r in &runs {
        rows.push(vec![
            Cell::Float(r.parameter),
            Cell::Float(r.relative_error),
            Cell::Float(r.success_probability),
            Cell::from(r.degree),
            Cell::Float(r.tau.unwrap_or(0.0)),
            Cell::Float(r.evolved_norm.unwrap_or(f64::NAN)),
        ]);
        let (q, c) = aligned_profiles(&r.output, &r.reference);
        let profile: Vec<Vec<Cell>> = (0..q.len())
            .map(|i| vec![Cell::from(i), Cell::Float(i as f64 * dx), Cell::Float(reaction[i]), Cell::Float(initial[i]), Cell::Float(q[i]), Cell::Float(c[i])])
            .collect();
        artifacts.push(write_csv(dir, &format!("adr_profile_t{}.csv", tag(r.parameter)), &["index", "x", "reaction", "initial", "qsvt", "classical"], &profile)?);
    }
    artifacts.insert(0, write_csv(dir, "adr.csv", &["t", "e_r", "success_prob", "degree", "tau", "evolved_norm"], &rows)?);
    let summary: Vec<Value> =
        runs.iter().map(|r| json!({ "t": r.parameter, "e_r": r.relative_error, "success_prob": r.success_probability, "degree": r.degree, "phase_residual": r.phase_residual })).collect();
    Ok(json!({ "command": "adr", "runs": summary, "artifacts": artifacts }))
}

pub fn qsp_phases(a: &PhaseArgs) -> Result<Value> {
    let target = match a.kind {
        PolyKind::Inverse => PolyTarget::Inverse { kappa: a.k },
        PolyKind::Exp => PolyTarget::Exp { tau: a.t },
    };
    let poly = approx_poly(target, a.epsilon)?;
    let dir = out_dir(&a.output)?;
    let mut parts = Vec::new();
    let mut artifacts = Vec::new();
    for (name, part) in [("even", poly.even_part()), ("odd", poly.odd_part())] {
        if part.is_zero() {
            continue;
        }
        let sol = qsvt::qsp_phases(&part)?;
        artifacts.push(write_text(dir.join(format!("phases_{name}.json")), &sol.phases.to_json())?);
        parts.push(json!({ "part": name, "degree": sol.phases.degree, "residual": sol.residual, "iterations": sol.iterations }));
    }
    Ok(json!({ "command": "qsp-phases", "target": target, "epsilon": a.epsilon, "parts": parts, "artifacts": artifacts }))
}

pub fn export_circuit(a: &ExportArgs) -> Result<Value> {
    let spec = SinusoidSpec::new(a.omega, a.phi);
    let (circuit, alpha, n_work): (Circuit, f64, usize) = match a.kind {
        CircuitKind::Uc => {
            let be = build_uc(a.n, spec, a.variant.into())?;
            (be.circuit, be.alpha, be.n_work)
        }
        CircuitKind::Us => {
            let be = build_us_with(a.n, spec, a.variant.into())?;
            (be.circuit, be.alpha, be.n_work)
        }
        CircuitKind::Shift => {
            let s = match a.direction {
                ShiftDirection::Left => ShiftSpec::left(a.power),
                ShiftDirection::Right => ShiftSpec::right(a.power),
            };
            (build_shift(a.n, s)?, 1.0, a.n)
        }
        CircuitKind::Banded => {
            let s: BandedSpec = read_config(&require_config(&a.config, "banded")?)?;
            let be = build_banded(a.n, &s)?;
            (be.circuit, be.alpha, be.n_work)
        }
        CircuitKind::Lcu => {
            let s: LcuSpec = read_config(&require_config(&a.config, "lcu")?)?;
            s.validate()?;
            let be = build_lcu(&s)?;
            (be.circuit, be.alpha, be.n_work)
        }
        CircuitKind::Fourier => {
            let s: FourierSpec = read_config(&require_config(&a.config, "fourier")?)?;
            let be = build_fourier_diagonal(a.n, &s)?;
            (be.circuit, be.alpha, be.n_work)
        }
        CircuitKind::Elliptic => {
            let s: EllipticSpec = read_config(&require_config(&a.config, "elliptic")?)?;
            let be = build_banded(s.n, &elliptic_lcu(&s)?)?;
            (be.circuit, be.alpha, be.n_work)
        }
    };
    let policy = DecompositionPolicy::default();
    let counts = transpile_count(&circuit, policy)?;
    let written = if a.decompose { decompose(&circuit, policy)? } else { circuit };
    let path = write_text(out_dir(&a.output)?.join("circuit.json"), &written.to_json_pretty())?;
    Ok(json!({
        "command": "export-circuit",
        "qubits": written.num_qubits(),
        "work_qubits": n_work,
        "alpha": alpha,
        "gates": written.len(),
        "transpiled": counts,
        "artifacts": [path],
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_fit_recovers_line() {
        let xs = [2.0, 3.0, 4.0, 5.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x + 3.0).collect();
        let (a, b, r) = linear_fit(&xs, &ys);
        assert!((a - 3.0).abs() < 1e-12 && (b - 3.0).abs() < 1e-12 && r < 1e-12);
    }

    #[test]
    fn states_parse() {
        assert_eq!(sweep_state(2, "basis:3", 0).unwrap().amplitudes()[3].re, 1.0);
        assert!(sweep_state(2, "basis:9", 0).is_err());
        assert!(sweep_state(2, "ghz", 0).is_err());
        let a = sweep_state(3, "random", 7).unwrap();
        let b = sweep_state(3, "random", 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn aligned_profiles_flip_sign() {
        let (q, c) = aligned_profiles(&[-1.0, -1.0], &[2.0, 2.0]);
        assert!(q.iter().zip(&c).all(|(a, b)| (a - b).abs() < 1e-15));
    }
}

//! Acceptance criteria 1-11, one PASS/FAIL line each.
//!
//! Oracles are written out inline from the matrix definitions rather than
//! taken from the library. Tolerances are fixed here and printed with each
//! line.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pbe_core::circuit::{transpile_count, unitary_of, DecompositionPolicy, GateKind, StateVector};
use pbe_core::diag::{build_dense_baseline, build_uc, build_us_with, SinusoidSpec, UcVariant};
use pbe_core::lcu::{build_banded, build_fourier_diagonal, build_lcu, AncillaMode, BandedSpec, LcuSpec, LcuTerm, TermOp};
use pbe_core::pde::{adr_shifted_lcu, EllipticSpec, ReactionShape};
use pbe_core::qsvt::{approx_poly, qsp_eval_scalar, qsp_phases, run_adr, run_elliptic, ChebyshevPoly, InversionWindow, PolyTarget};
use pbe_core::shift::{build_shift, ShiftSpec};
use pbe_core::verify::{apply_block, extract_block};
use pbe_core::BlockEncoding;

type CMat = DMatrix<Complex64>;
type Outcome = Result<String, String>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn max_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn diag(values: impl IntoIterator<Item = f64>) -> CMat {
    let v: Vec<Complex64> = values.into_iter().map(c).collect();
    CMat::from_diagonal(&nalgebra::DVector::from_vec(v))
}

/// `L|k> = |k+1 mod N>`.
fn left(dim: usize) -> CMat {
    CMat::from_fn(dim, dim, |i, j| if i == (j + 1) % dim { c(1.0) } else { c(0.0) })
}

/// `R|k> = |k-1 mod N>`.
fn right(dim: usize) -> CMat {
    left(dim).transpose()
}

fn scaled_block(be: &BlockEncoding) -> CMat {
    extract_block(be).expect("block extraction")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed <= limit, || format!("runtime {elapsed:.1?} exceeds {limit:?}"))
}

fn encodings_are_exact() -> Outcome {
    const TOL: f64 = 1e-12;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for case in 0..50 {
        let n = rng.gen_range(1..=6);
        let omega = rng.gen_range(0.0..TAU);
        let phi = rng.gen_range(0.0..TAU);
        let dim = 1usize << n;
        let cos = diag((0..dim).map(|k| (k as f64 * omega + phi).cos()));
        let sin = diag((0..dim).map(|k| (k as f64 * omega + phi).sin()));
        for variant in [UcVariant::Select, UcVariant::CnotConjugation] {
            let spec = SinusoidSpec::new(omega, phi);
            let ec = max_diff(&scaled_block(&build_uc(n, spec, variant).unwrap()), &cos);
            let es = max_diff(&scaled_block(&build_us_with(n, spec, variant).unwrap()), &sin);
            check(ec <= TOL && es <= TOL, || format!("case {case}: n={n} ω={omega} φ={phi} {variant:?}: cos {ec:.2e}, sin {es:.2e}"))?;
            worst = worst.max(ec).max(es);
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("50 cases x 2 variants, max error {worst:.2e} <= {TOL:.0e}"))
}

fn printed_banded_example() -> Outcome {
    const TOL: f64 = 1e-12;
    let spec = BandedSpec { omega: FRAC_PI_2, phi: 0.0, weights: [0.25; 4], signs: [1; 4] };
    let be = build_banded(2, &spec).unwrap();
    let printed = [
        [(0.0f64).cos() + 1.0, 1.0, 0.0, 1.0],
        [1.0, (PI / 2.0).cos() + 1.0, 1.0, 0.0],
        [0.0, 1.0, PI.cos() + 1.0, 1.0],
        [1.0, 0.0, 1.0, (3.0 * PI / 2.0).cos() + 1.0],
    ];
    let target = CMat::from_fn(4, 4, |i, j| c(printed[i][j] / 4.0));
    check(be.alpha == 1.0, || format!("alpha {} != 1", be.alpha))?;
    let prep_is_hadamards = be.circuit.gates().iter().filter(|g| g.controls.is_empty() && matches!(g.kind, GateKind::Ry(_))).count() == 0;
    check(prep_is_hadamards, || "PREP for uniform weights is not H⊗H".into())?;
    let err = max_diff(&scaled_block(&be), &target);
    check(err <= TOL, || format!("error {err:.2e}"))?;
    Ok(format!("4x4 matrix reproduced, error {err:.2e} <= {TOL:.0e}"))
}

fn probability_law() -> Outcome {
    const TOL: f64 = 1e-12;
    const N: usize = 4;
    const POINTS: usize = 256;
    let dim = 1usize << N;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let random: Vec<Complex64> = (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let mut states = vec![("uniform".to_string(), StateVector::uniform(N).unwrap()), ("random".to_string(), StateVector::normalized(random).unwrap())];
    for k in 0..dim {
        states.push((format!("basis:{k}"), StateVector::basis(N, k).unwrap()));
    }
    let mut worst: f64 = 0.0;
    let mut worst_basis: f64 = 0.0;
    for j in 0..POINTS {
        let omega = TAU * j as f64 / POINTS as f64;
        let be = build_uc(N, SinusoidSpec::new(omega, 0.0), UcVariant::Select).unwrap();
        for (name, s) in &states {
            let p0 = apply_block(&be, s).unwrap().success_probability;
            let expected: f64 = s.amplitudes().iter().enumerate().map(|(k, a)| a.norm_sqr() * (k as f64 * omega).cos().powi(2)).sum();
            let e = (p0 - expected).abs();
            check(e <= TOL, || format!("{name} at ω={omega}: p0 {p0} vs {expected}"))?;
            worst = worst.max(e);
            if let Some(k) = name.strip_prefix("basis:") {
                let k: f64 = k.parse().unwrap();
                worst_basis = worst_basis.max((p0 - (k * omega).cos().powi(2)).abs());
            }
        }
    }
    check(worst_basis <= TOL, || format!("basis curve off by {worst_basis:.2e}"))?;
    Ok(format!("{} states x {POINTS} points, max error {worst:.2e} <= {TOL:.0e}", states.len()))
}

fn gate_scaling() -> Outcome {
    let start = Instant::now();
    let policy = DecompositionPolicy::default();
    let omega = 2.0;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut detail = Vec::new();
    for n in 2..=8usize {
        let spec = SinusoidSpec::new(omega, 0.0);
        let select = transpile_count(&build_uc(n, spec, UcVariant::Select).unwrap().circuit, policy).unwrap();
        let conj = transpile_count(&build_uc(n, spec, UcVariant::CnotConjugation).unwrap().circuit, policy).unwrap();
        check(conj.total == 3 * n + 3, || format!("n={n}: cnot-conjugation count {} != {}", conj.total, 3 * n + 3))?;
        check(conj.cnot == 2 * n, || format!("n={n}: {} CNOTs != 2n", conj.cnot))?;
        let values: Vec<f64> = (0..1usize << n).map(|k| (k as f64 * omega).cos()).collect();
        let dense = transpile_count(&build_dense_baseline(&values).unwrap().circuit, policy).unwrap();
        let floor = (1usize << n) / 2;
        check(dense.cnot >= floor, || format!("n={n}: baseline has {} two-qubit gates < {floor}", dense.cnot))?;
        xs.push(n as f64);
        ys.push(select.total as f64);
        detail.push(format!("{}:{}/{}", n, select.total, dense.cnot));
    }
    let m = xs.len() as f64;
    let (sx, sy) = (xs.iter().sum::<f64>(), ys.iter().sum::<f64>());
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let a = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let b = (sy - a * sx) / m;
    let residual = xs.iter().zip(&ys).map(|(x, y)| ((a * x + b - y) / y).abs()).fold(0.0, f64::max);
    check(residual <= 0.05, || format!("linear fit residual {residual:.3} > 5%"))?;
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("select count ≈ {a:.2}n + {b:.2} (max rel. residual {residual:.2e} <= 5e-2); cnot variant = 3n+3; n:ours/baseline-cnot {}", detail.join(" ")))
}

fn shift_correctness() -> Outcome {
    const TOL: f64 = 1e-12;
    let mut worst: f64 = 0.0;
    for n in 1..=6usize {
        let dim = 1usize << n;
        let l = unitary_of(&build_shift(n, ShiftSpec::left(1)).unwrap()).unwrap().into_inner();
        let r = unitary_of(&build_shift(n, ShiftSpec::right(1)).unwrap()).unwrap().into_inner();
        worst = worst.max(max_diff(&l, &left(dim))).max(max_diff(&r, &right(dim)));
        worst = worst.max(max_diff(&(&l * &r), &CMat::identity(dim, dim)));
        for s in [2u64, 3, dim as u64 + 1] {
            let ls = unitary_of(&build_shift(n, ShiftSpec::left(s)).unwrap()).unwrap().into_inner();
            let mut expect = CMat::identity(dim, dim);
            for _ in 0..s {
                expect = left(dim) * expect;
            }
            worst = worst.max(max_diff(&ls, &expect));
        }
        for omega in [0.7, 2.0, -1.3] {
            let mut be = build_uc(n, SinusoidSpec::new(omega, 0.0), UcVariant::Select).unwrap();
            let shift = build_shift(n, ShiftSpec::right(1)).unwrap().widened(be.num_qubits());
            be.circuit.append(&shift).unwrap();
            // row i holds cos(jω) in column j = i+1 mod N
            let pattern = CMat::from_fn(dim, dim, |i, j| if j == (i + 1) % dim { c((j as f64 * omega).cos()) } else { c(0.0) });
            worst = worst.max(max_diff(&scaled_block(&be), &pattern));
        }
        check(worst <= TOL, || format!("n={n}: error {worst:.2e}"))?;
    }
    Ok(format!("n=1..6 permutations, L·R = I, powers and R·C pattern; max error {worst:.2e} <= {TOL:.0e}"))
}

fn fourier_diagonal() -> Outcome {
    const TOL: f64 = 1e-10;
    const W: f64 = TAU / 16.0;
    let profiles: [(ReactionShape, fn(f64) -> f64); 4] = [
        (ReactionShape::Square, |x| 0.1 + 0.01 * (W * x).sin() + 0.01 / 3.0 * (3.0 * W * x).sin()),
        (ReactionShape::Triangle, |x| 0.1 - 0.01 * (W * x).sin() + 0.01 / 9.0 * (3.0 * W * x).sin()),
        (ReactionShape::Sine, |x| 0.1 + 0.01 * (W * x).sin()),
        (ReactionShape::Cosine, |x| 0.1 + 0.01 * (W * x).cos()),
    ];
    let mut worst: f64 = 0.0;
    for (shape, f) in profiles {
        let be = build_fourier_diagonal(4, &shape.series()).unwrap();
        let target = diag((0..16).map(|k| f(k as f64)));
        let e = max_diff(&scaled_block(&be), &target);
        check(e <= TOL, || format!("{}: error {e:.2e}", shape.name()))?;
        worst = worst.max(e);
    }
    Ok(format!("square, triangle (and sine, cosine) at N=16, max error {worst:.2e} <= {TOL:.0e}"))
}

/// Max |QSP(x) - P(x)| on 501 Chebyshev-Lobatto points.
fn scalar_residual(angles: &[f64], poly: &ChebyshevPoly) -> f64 {
    (0..501).map(|j| (j as f64 * PI / 500.0).cos()).map(|x| (qsp_eval_scalar(angles, x) - poly.eval(x)).abs()).fold(0.0, f64::max)
}

/// `(α, τ_d)` of the shifted ADR generator on 16 nodes.
fn adr_scales(shape: ReactionShape) -> (f64, f64) {
    let spec = shape.adr_spec(4);
    let (_, lcu) = adr_shifted_lcu(&spec).unwrap();
    (lcu.alpha(), spec.tau_d())
}

fn qsp_phase_gate() -> Outcome {
    const GATE: f64 = 1e-8;
    let mut targets = vec![(PolyTarget::Inverse { kappa: 3.0 }, 0.1), (PolyTarget::Inverse { kappa: 4.0 }, 0.1), (PolyTarget::Inverse { kappa: 3.0 }, 0.01), (PolyTarget::Inverse { kappa: 4.0 }, 0.01)];
    for shape in ReactionShape::ALL {
        let (alpha, tau_d) = adr_scales(shape);
        for t in [1.0, 5.0, 10.0] {
            targets.push((PolyTarget::Exp { tau: alpha * t * tau_d }, 1e-6));
        }
    }
    let mut worst: f64 = 0.0;
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for (target, eps) in targets {
        let poly = approx_poly(target, eps).unwrap();
        for part in [poly.even_part(), poly.odd_part()] {
            if part.is_zero() {
                continue;
            }
            let start = Instant::now();
            let sol = qsp_phases(&part).map_err(|e| format!("{target:?}: {e}"))?;
            let elapsed = start.elapsed();
            let r = scalar_residual(&sol.phases.angles, &part);
            check(r <= GATE, || format!("{target:?} degree {}: residual {r:.2e}", part.degree()))?;
            within(elapsed, Duration::from_secs(120))?;
            worst = worst.max(r);
            slowest = slowest.max(elapsed);
            count += 1;
        }
    }
    Ok(format!("{count} polynomials, max residual {worst:.2e} <= {GATE:.0e}, slowest {slowest:.2?} < 2 min"))
}

fn elliptic_qsvt() -> Outcome {
    const EPS: f64 = 0.1;
    let start = Instant::now();
    let d1 = EllipticSpec { d: 1.0, a0: 1.5, omega_x: 2.0, n: 3 };
    let d01 = EllipticSpec { d: 0.1, a0: 1.5, omega_x: 1.0, n: 3 };
    let cases = [(d1, 3.0, 0.0056), (d1, 4.0, 0.0026), (d01, 3.0, 0.0038), (d01, 4.0, 0.0031)];
    let mut measured = Vec::new();
    for (spec, k, reference) in cases {
        let run = run_elliptic(&spec, k, EPS, InversionWindow::Covering).map_err(|e| e.to_string())?;
        let e = run.relative_error;
        check(e <= 2.0 * reference, || format!("D={} k={k}: e_r {e:.4e} > 2 x {reference}", spec.d))?;
        measured.push(format!("D={} k={k}: {e:.2e} (<= {:.4})", spec.d, 2.0 * reference));
        let lit = run_elliptic(&spec, k, EPS, InversionWindow::Literal).map_err(|e| e.to_string())?;
        println!("    info: D={} k={k} literal window [1/k, 1] gives e_r = {:.4}", spec.d, lit.relative_error);
        if spec.d == 1.0 {
            measured.push(format!("p={:.3}", run.success_probability));
        }
    }
    let e3 = run_elliptic(&d1, 3.0, EPS, InversionWindow::Covering).unwrap().relative_error;
    let e4 = run_elliptic(&d1, 4.0, EPS, InversionWindow::Covering).unwrap().relative_error;
    check(e4 <= e3, || format!("e_r(k=4) {e4:.3e} > e_r(k=3) {e3:.3e}"))?;
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("ε={EPS}, {}; e_r(k=4) <= e_r(k=3)", measured.join(", ")))
}

fn adr_evolution() -> Outcome {
    const TOL: f64 = 1e-2;
    const EPS: f64 = 1e-6;
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut degrees = Vec::new();
    for shape in ReactionShape::ALL {
        let spec = shape.adr_spec(4);
        let runs = run_adr(&spec, &[1.0, 5.0, 10.0], EPS).map_err(|e| e.to_string())?;
        for r in &runs {
            check(r.relative_error <= TOL, || format!("{} t={}: e_r {:.3e}", shape.name(), r.parameter, r.relative_error))?;
            check(r.success_probability > 0.0 && r.success_probability <= 1.0, || format!("success probability {}", r.success_probability))?;
            worst = worst.max(r.relative_error);
        }
        degrees.push(format!("{}:{}", shape.name(), runs.iter().map(|r| r.degree.to_string()).collect::<Vec<_>>().join("/")));
    }
    within(start.elapsed(), Duration::from_secs(600))?;
    Ok(format!("4 profiles x t/τ_d ∈ {{1,5,10}}, max e_r {worst:.2e} <= {TOL:.0e}, degrees {}", degrees.join(" ")))
}

fn random_op(rng: &mut ChaCha8Rng, depth: usize) -> TermOp {
    match rng.gen_range(0..if depth == 0 { 6 } else { 5 }) {
        0 => TermOp::Identity,
        1 => TermOp::Cos { omega: rng.gen_range(-PI..PI), phi: rng.gen_range(-PI..PI) },
        2 => TermOp::Sin { omega: rng.gen_range(-PI..PI), phi: rng.gen_range(-PI..PI) },
        3 => TermOp::ShiftLeft { power: rng.gen_range(0..6) },
        4 => TermOp::ShiftRight { power: rng.gen_range(0..6) },
        _ => TermOp::Product { factors: (0..2).map(|_| random_op(rng, depth + 1)).collect() },
    }
}

fn op_oracle(op: &TermOp, dim: usize) -> CMat {
    let pow = |m: CMat, p: u64| (0..p).fold(CMat::identity(dim, dim), |acc, _| &m * acc);
    match op {
        TermOp::Identity => CMat::identity(dim, dim),
        TermOp::Cos { omega, phi } => diag((0..dim).map(|k| (k as f64 * omega + phi).cos())),
        TermOp::Sin { omega, phi } => diag((0..dim).map(|k| (k as f64 * omega + phi).sin())),
        TermOp::ShiftLeft { power } => pow(left(dim), *power),
        TermOp::ShiftRight { power } => pow(right(dim), *power),
        TermOp::Product { factors } => factors.iter().fold(CMat::identity(dim, dim), |acc, f| acc * op_oracle(f, dim)),
    }
}

fn lcu_oracle() -> Outcome {
    const TOL: f64 = 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    let mut widest = 0;
    for case in 0..20 {
        let n = rng.gen_range(1..=4);
        let j = rng.gen_range(1..=8);
        let terms: Vec<LcuTerm> = (0..j).map(|_| LcuTerm::new(rng.gen_range(0.05..2.0), if rng.gen_bool(0.5) { 1 } else { -1 }, random_op(&mut rng, 0))).collect();
        let mode = if rng.gen_bool(0.5) { AncillaMode::Separate } else { AncillaMode::Shared };
        let spec = LcuSpec::new(n, terms).with_ancillas(mode);
        let dim = 1usize << n;
        let target = spec.terms.iter().fold(CMat::zeros(dim, dim), |acc, t| acc + op_oracle(&t.op, dim) * c(t.sign as f64 * t.weight));
        let be = build_lcu(&spec).map_err(|e| format!("case {case}: {e}"))?;
        let e = max_diff(&scaled_block(&be), &target);
        check(e <= TOL, || format!("case {case} (n={n}, J={j}, {mode:?}): error {e:.2e}"))?;
        worst = worst.max(e);
        widest = widest.max(be.num_qubits());
    }
    Ok(format!("20 specs, up to {widest} qubits, max error {worst:.2e} <= {TOL:.0e}"))
}

fn read_tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir).unwrap().map(|e| e.unwrap()).map(|e| (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())).collect()
}

fn cli_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_pbe");
    let commands: [&[&str]; 7] = [
        &["verify", "--n", "4", "--omega", "1.3"],
        &["p0-sweep", "--n", "3", "--points", "64", "--state", "random", "--seed", "42"],
        &["gate-scaling", "--n-max", "6", "--omega", "2"],
        &["elliptic", "--d", "0.1", "--omega", "1", "--k", "3,4"],
        &["adr", "--profile", "square", "--t", "1,5"],
        &["qsp-phases", "--kind", "exp", "--t", "3.5", "--epsilon", "1e-8"],
        &["export-circuit", "--kind", "uc", "--n", "3", "--omega", "0.4", "--decompose"],
    ];
    let mut files = 0;
    for args in commands {
        let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
        for d in &dirs {
            let status = Command::new(exe).args(args).arg("--out").arg(d.path()).output().unwrap();
            check(status.status.success(), || format!("{args:?} failed: {}", String::from_utf8_lossy(&status.stderr)))?;
        }
        let (a, b) = (read_tree(dirs[0].path()), read_tree(dirs[1].path()));
        check(!a.is_empty(), || format!("{args:?} wrote nothing"))?;
        check(a == b, || format!("{args:?}: outputs differ between runs"))?;
        files += a.len();
    }
    Ok(format!("7 commands run twice, {files} artifacts byte-identical"))
}

fn main() -> ExitCode {
    // the random LCU specs reach 16 qubits
    std::env::set_var("PBE_MAX_QUBITS", "20");
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("sinusoidal encodings are exact", encodings_are_exact),
        ("banded example matrix", printed_banded_example),
        ("ancilla probability law", probability_law),
        ("gate scaling", gate_scaling),
        ("shift permutations", shift_correctness),
        ("Fourier diagonal", fourier_diagonal),
        ("QSP phase residual gate", qsp_phase_gate),
        ("elliptic QSVT", elliptic_qsvt),
        ("ADR evolution", adr_evolution),
        ("LCU oracle equivalence", lcu_oracle),
        ("CLI determinism", cli_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2}: {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|p| label.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("{label}: PASS ({:.1?}) {detail}", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("{label}: FAIL ({:.1?}) {why}", start.elapsed());
            }
        }
    }
    println!("acceptance: {} failed", failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use pencil_persist::linalg::{
    eigen_general, eigen_hermitian, hermitian_sqrt, inverse, ComplexMatrix,
};
use pencil_persist::pencil::{cluster_roots, exceptional_set, pencil_from_eigenproblem};
use pencil_persist::persistence::{
    cyclicity_check, measure_estimate, projection_vanishing_check, PerturbationFamily,
};
use pencil_persist::{bs_reduce, fixtures, random, Complex64, ExceptionalKind, ToleranceConfig};
use pencil_persist_cli::MatrixFile;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn bin(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_pencil-persist"))
        .args(args)
        .arg("--json")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "`{}` exited with {}: {}",
            args.join(" "),
            out.status,
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(v: &Value) -> Complex64 {
    Complex64::new(v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

fn pair_vec(v: &Value) -> Vec<Complex64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|p| Complex64::new(p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect()
}

fn expand(roots: &[pencil_persist::Root]) -> Vec<Complex64> {
    roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.t, r.multiplicity))
        .collect()
}

/// Greedy nearest matching with relative tolerance `tol · max(1, |t|)`.
fn multisets_match(a: &[Complex64], b: &[Complex64], tol: f64) -> Result<(), String> {
    if a.len() != b.len() {
        return Err(format!("sizes differ: {} vs {}", a.len(), b.len()));
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let j = (0..b.len())
            .filter(|&j| !used[j])
            .min_by(|&i, &j| (b[i] - x).norm().total_cmp(&(b[j] - x).norm()))
            .unwrap();
        let err = (b[j] - x).norm() / x.norm().max(1.0);
        if err > tol {
            return Err(format!(
                "{x} has no partner within {tol:e} (nearest {}, rel. error {err:.2e})",
                b[j]
            ));
        }
        used[j] = true;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let out = bin(&["corpus", "run", "example-2.9"])?;
    let report = &out["report"];
    ensure(out["passed"] == true, || {
        format!("corpus checks failed: {}", out["checks"])
    })?;
    ensure(report["exceptional"]["kind"] == "AllComplex", || {
        format!("kind {}", report["exceptional"]["kind"])
    })?;
    ensure(report["cyclic"] == true, || "not cyclic".into())?;
    ensure(report["v_class"]["indefinite"] == true, || {
        "V not indefinite".into()
    })?;
    ensure(report["v_class"]["kernel_dim"] == 1, || {
        format!("kernel_dim {}", report["v_class"]["kernel_dim"])
    })?;
    let mut worst: f64 = 0.0;
    for w in report["witnesses"].as_array().unwrap() {
        worst = worst.max(w["residual"].as_f64().unwrap());
    }
    for r in out["persistent_witness"]["residuals"].as_array().unwrap() {
        worst = worst.max(r.as_f64().unwrap());
    }
    ensure(worst <= 1e-10, || format!("witness residual {worst:e}"))?;

    // Kernel at t = 2 against (1, −1, −2)/√6, up to phase.
    let probe = &out["probe"];
    ensure(c(&probe["t"]) == Complex64::new(2.0, 0.0), || {
        "probe not at t = 2".into()
    })?;
    let f = pair_vec(&probe["vector"]);
    let want = [1.0, -1.0, -2.0].map(|x| Complex64::new(x / 6f64.sqrt(), 0.0));
    let fnorm = f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let phase: Complex64 = want
        .iter()
        .zip(&f)
        .map(|(w, z)| w.conj() * z)
        .sum::<Complex64>()
        / fnorm;
    let dist = want
        .iter()
        .zip(&f)
        .map(|(w, z)| (z / fnorm - phase * w).norm_sqr())
        .sum::<f64>()
        .sqrt();
    ensure(dist <= 1e-8, || format!("kernel direction off by {dist:e}"))?;
    Ok(format!("AllComplex, cyclic, indefinite, ker V = 1, residual {worst:.1e}, kernel distance {dist:.1e}"))
}

fn criterion_2() -> Outcome {
    let out = bin(&["corpus", "run", "example-2.6"])?;
    let roots = out["exceptional"]["roots"].as_array().unwrap();
    ensure(out["exceptional"]["kind"] == "Finite", || {
        "kind not Finite".into()
    })?;
    ensure(roots.len() == 2, || format!("{} roots", roots.len()))?;
    let mut worst: f64 = 0.0;
    for want in [Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)] {
        let r = roots
            .iter()
            .min_by(|a, b| (c(a) - want).norm().total_cmp(&(c(b) - want).norm()))
            .unwrap();
        ensure(r["multiplicity"] == 1, || {
            format!("multiplicity {}", r["multiplicity"])
        })?;
        worst = worst.max((c(r) - want).norm());
    }
    ensure(worst <= 1e-9, || format!("|root ∓ i| = {worst:e}"))?;
    Ok(format!("roots ±i, simple, max error {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    let cfg = cfg();
    for k in 0..100u64 {
        let n = 1 + (k as usize % 12);
        let mut rng = random::seeded_stream(3, k);
        let h0 = random::hermitian(n, &mut rng);
        let v = random::hermitian(n, &mut rng);
        let spec: Vec<f64> = eigen_hermitian(&h0, &cfg).unwrap().real_values();
        // A random gap, including the unbounded ones at either end.
        let gap = (random::uniform(&mut rng, 0.0, 1.0) * (n + 1) as f64) as usize;
        let e0 = match gap {
            0 => spec[0] - 1.0,
            g if g >= n => spec[n - 1] + 1.0,
            g => 0.5 * (spec[g - 1] + spec[g]),
        };
        let bs = bs_reduce(&h0, &v, e0, &cfg).map_err(|e| format!("instance {k}: {e}"))?;
        ensure(bs.exceptional_t.len() <= n, || {
            format!("instance {k}: {} couplings", bs.exceptional_t.len())
        })?;
        let pencil = pencil_from_eigenproblem(&h0, &v, e0, &cfg).unwrap();
        let set = exceptional_set(&pencil, &cfg).unwrap();
        let bs_roots = expand(&cluster_roots(bs.exceptional_t.clone(), cfg.tol_cluster));
        multisets_match(&expand(&set.roots), &bs_roots, 1e-8)
            .map_err(|e| format!("instance {k} (n = {n}): {e}"))?;
    }
    Ok("100 instances, n ≤ 12: Birman–Schwinger couplings equal pencil roots".into())
}

fn criterion_4() -> Outcome {
    let cfg = cfg();
    let mut accepted = 0;
    let mut draws = 0u64;
    let mut worst: f64 = 0.0;
    while accepted < 500 {
        draws += 1;
        let mut rng = random::seeded_stream(4, draws);
        let n = 2 + (draws as usize % 9);
        let k = 1 + (random::uniform(&mut rng, 0.0, 1.0) * n as f64) as usize;
        let h0 = random::hermitian(n, &mut rng);
        let v = random::psd(n, k.min(n), &mut rng);
        let fam = PerturbationFamily::new(h0, v, &cfg).unwrap();
        if !cyclicity_check(&fam, &cfg).cyclic {
            continue;
        }
        accepted += 1;
        let spec = eigen_hermitian(fam.h0(), &cfg).unwrap().real_values();
        let lambda0 = spec[(random::uniform(&mut rng, 0.0, 1.0) * n as f64) as usize];
        let pencil = pencil_from_eigenproblem(fam.h0(), fam.v(), lambda0, &cfg).unwrap();
        let set = exceptional_set(&pencil, &cfg).unwrap();
        ensure(set.kind != ExceptionalKind::AllComplex, || {
            format!("draw {draws}: AllComplex")
        })?;
        let roots = expand(&set.roots);
        let mut ts = Vec::with_capacity(20);
        while ts.len() < 20 {
            let t = random::uniform(&mut rng, 0.0, 1.0);
            let tc = Complex64::new(t, 0.0);
            if roots
                .iter()
                .all(|r| (r - tc).norm() > 1e-3 * r.norm().max(1.0))
            {
                ts.push(t);
            }
        }
        for (t, norm) in projection_vanishing_check(&fam, lambda0, &ts, &cfg).unwrap() {
            worst = worst.max(norm);
            ensure(norm <= 1e-8, || {
                format!("draw {draws}: ‖V^½ P V^½‖ = {norm:e} at t = {t}")
            })?;
        }
    }
    Ok(format!(
        "500 cyclic PSD instances ({draws} draws): no AllComplex, max projection norm {worst:.1e}"
    ))
}

fn criterion_5() -> Outcome {
    let cfg = cfg();
    for k in 0..200u64 {
        let mut rng = random::seeded_stream(5, k);
        let n = 1 + (k as usize % 10);
        let h0 = random::hermitian(n, &mut rng);
        let v = random::hermitian(n, &mut rng);
        let lambda0 = random::uniform(&mut rng, -2.0, 2.0);
        let pencil = pencil_from_eigenproblem(&h0, &v, lambda0, &cfg).unwrap();
        let set = exceptional_set(&pencil, &cfg).unwrap();
        ensure(set.total_multiplicity() == n, || {
            format!(
                "instance {k}: total multiplicity {} ≠ {n}",
                set.total_multiplicity()
            )
        })?;
        let reduced =
            &inverse(&v, &cfg).unwrap() * &h0.shift(Complex64::new(-lambda0, 0.0)).scale_real(-1.0);
        let oracle = eigen_general(&reduced, &cfg).unwrap().values;
        multisets_match(&expand(&set.roots), &oracle, 1e-8)
            .map_err(|e| format!("instance {k} (n = {n}): {e}"))?;
    }
    Ok("200 invertible-V instances: multiplicity n, roots = σ(V⁻¹(λ0 − H0))".into())
}

fn criterion_6() -> Outcome {
    let list = bin(&["corpus", "list"])?;
    for n in [4usize, 8, 16] {
        let id = format!("example-2.7-truncated-{n}");
        let out = bin(&["corpus", "run", &id])?;
        let roots = out["report"]["exceptional"]["roots"].as_array().unwrap();
        let total: u64 = roots
            .iter()
            .map(|r| r["multiplicity"].as_u64().unwrap())
            .sum();
        ensure(total == 2 * n as u64, || format!("{id}: {total} roots"))?;
        for r in roots {
            ensure(c(r).norm() <= 1e-6, || format!("{id}: root {}", c(r)))?;
        }
        let entry = list
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["id"] == id.as_str())
            .unwrap();
        let doc = entry["description"].as_str().unwrap();
        ensure(doc.contains("unit disk"), || {
            format!("{id}: description lacks the untruncated contrast")
        })?;
    }
    let (h0, v) = fixtures::example_2_7_truncated(4);
    let vh = &v * &h0;
    let vh8 = (0..7).fold(vh.clone(), |acc, _| &acc * &vh);
    ensure(vh8.frobenius_norm() == 0.0, || "V H0 not nilpotent".into())?;
    Ok("N = 4, 8, 16: all 2N couplings at 0".into())
}

fn criterion_7() -> Outcome {
    let out = bin(&["hunt", "--dim", "4", "--trials", "20", "--seed", "7"])?;
    let families = out["families"].as_array().unwrap();
    ensure(!families.is_empty(), || "no families".into())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (i, f) in families.iter().enumerate() {
        let h0: MatrixFile = serde_json::from_value(f["h0"].clone()).unwrap();
        let v: MatrixFile = serde_json::from_value(f["v"].clone()).unwrap();
        let (hp, vp) = (
            dir.path().join(format!("h0-{i}.json")),
            dir.path().join(format!("v-{i}.json")),
        );
        std::fs::write(&hp, h0.to_json()).unwrap();
        std::fs::write(&vp, v.to_json()).unwrap();
        let report = bin(&[
            "analyze",
            "--h0",
            path(&hp),
            "--v",
            path(&vp),
            "--lambda0",
            "0",
            "--seed",
            "12345",
            "--measure-samples",
            "50",
        ])?;
        ensure(report["exceptional"]["kind"] == "AllComplex", || {
            format!("family {i}: not AllComplex")
        })?;
        ensure(report["cyclic"] == true, || {
            format!("family {i}: not cyclic")
        })?;
        ensure(report["v_class"]["indefinite"] == true, || {
            format!("family {i}: V not indefinite")
        })?;
    }
    Ok(format!(
        "{} of 20 trials verified and re-analyzed",
        families.len()
    ))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn criterion_8() -> Outcome {
    let cfg = cfg();
    let ex = PerturbationFamily::new(fixtures::example_2_9_h0(), fixtures::example_2_9_v(), &cfg)
        .unwrap();
    let m1 = measure_estimate(&ex, 0.0, 1e-6, 1000, &cfg, 0).unwrap();
    ensure(m1 == 1.0, || format!("persistent family estimate {m1}"))?;
    let diag = PerturbationFamily::new(
        ComplexMatrix::from_real_diagonal(&[0.0, 1.0]),
        ComplexMatrix::identity(2),
        &cfg,
    )
    .unwrap();
    let m2 = measure_estimate(&diag, 0.0, 1e-3, 1000, &cfg, 0).unwrap();
    ensure((1e-3..=4e-3).contains(&m2), || {
        format!("diagonal estimate {m2}")
    })?;
    // Spot-check the square root used by the projection check on the same fixture.
    let s = hermitian_sqrt(diag.v(), &cfg).unwrap();
    ensure(s == ComplexMatrix::identity(2), || "√I ≠ I".into())?;
    Ok(format!("persistent family {m1}, diagonal fixture {m2}"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            1,
            "counterexample reproduction",
            Duration::from_secs(1),
            criterion_1,
        ),
        (
            2,
            "pencil with couplings ±i",
            Duration::from_secs(1),
            criterion_2,
        ),
        (
            3,
            "Birman–Schwinger oracle",
            Duration::from_secs(30),
            criterion_3,
        ),
        (
            4,
            "PSD cyclic property suite",
            Duration::from_secs(60),
            criterion_4,
        ),
        (
            5,
            "invertible V exactness",
            Duration::from_secs(30),
            criterion_5,
        ),
        (
            6,
            "truncated shift blocks",
            Duration::from_secs(5),
            criterion_6,
        ),
        (
            7,
            "counterexample hunter",
            Duration::from_secs(30),
            criterion_7,
        ),
        (8, "measure surrogate", Duration::from_secs(5), criterion_8),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= limit {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS criterion {id} ({name}, {elapsed:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}, {elapsed:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

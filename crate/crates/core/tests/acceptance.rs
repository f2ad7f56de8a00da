//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. All comparisons are exact.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sphercat_core::ar::{
    ar_triangle, component_count, hom_dim_closed, in_f_minus, in_f_plus, serre, tau,
};
use sphercat_core::dg::{assemble, decompose, homology_with_action};
use sphercat_core::oracle::hom_dim_oracle;
use sphercat_core::tstructure::{
    canonical_spec, decomposition_triangle, orthogonality_check, silting_vanishing,
    sparseness_evidence, thick_closure_window,
};
use sphercat_core::verify::{closed_vs_oracle, serre_duality, sphericity, SWEEP_W};
use sphercat_core::{
    AlgebraDescriptor, ClosedForm, DgModule, HomBackend, Indec, Matrix, Oracle, PrimeField, Report,
    Window,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn x(i: i64, r: usize) -> Indec {
    Indec::new(i, r)
}

fn full_window() -> Window {
    Window::new(-8, 8, 6).unwrap()
}

fn algebra(w: i64) -> AlgebraDescriptor {
    AlgebraDescriptor::new(w, PrimeField::default())
}

/// Folds a batch of reports into one outcome.
fn all_pass(reports: Vec<Report>) -> Outcome {
    let pairs: u64 = reports.iter().map(|r| r.stats.pairs_checked).sum();
    match reports.iter().find(|r| !r.passed()) {
        Some(bad) => Err(bad.to_string()),
        None => Ok(format!("{} sweeps, {pairs} pairs", reports.len())),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let win = full_window();
    let reports = SWEEP_W
        .iter()
        .map(|&w| closed_vs_oracle(w, &win, PrimeField::default()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    all_pass(reports)
}

fn criterion_2() -> Outcome {
    let oracle = Oracle::default();
    let mut reports = Vec::new();
    for w in SWEEP_W {
        for backend in [&ClosedForm as &dyn HomBackend, &oracle] {
            reports.push(sphericity(w, -12, 12, backend).map_err(|e| e.to_string())?);
        }
    }
    all_pass(reports)
}

fn criterion_3() -> Outcome {
    let oracle = Oracle::default();
    let backends = [&ClosedForm as &dyn HomBackend, &oracle];
    let mut checked = 0u64;

    for backend in backends {
        for r in 0..=6 {
            for s in 0..=6 {
                for offset in -6..=6 {
                    let expected = if offset == 0 || offset == 1 {
                        r.min(s) + 1
                    } else {
                        0
                    };
                    let got = backend
                        .hom_dim(1, x(0, r), x(offset, s))
                        .map_err(|e| e.to_string())?;
                    ensure(got == expected, || {
                        format!(
                            "w=1 {} Hom(X_{r}, Σ^{offset}X_{s}) = {got}, want {expected}",
                            backend.name()
                        )
                    })?;
                    checked += 1;
                }
            }
        }
    }

    let win = full_window();
    for backend in backends {
        for t in win.labels() {
            let got = backend.hom_dim(0, t, t).map_err(|e| e.to_string())?;
            ensure(got == 2, || {
                format!("w=0 {} End({t}) = {got}", backend.name())
            })?;
            checked += 1;
        }
    }

    let labels = win.labels();
    for w in SWEEP_W.into_iter().filter(|w| !(0..=1).contains(w)) {
        for &t in &labels {
            for &u in &labels {
                let dim = hom_dim_closed(w, t, u);
                ensure(dim <= 1, || format!("w={w} Hom({t}, {u}) = {dim}"))?;
                let plus = in_f_plus(w, t, u).unwrap();
                let minus = in_f_minus(w, serre(w, t), u).unwrap();
                ensure(!(plus && minus), || {
                    format!("w={w} F+({t}) meets F-(S{t}) at {u}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} values"))
}

fn criterion_4() -> Outcome {
    let win = full_window();
    let oracle = Oracle::default();
    let mut reports = Vec::new();
    for w in SWEEP_W {
        for backend in [&ClosedForm as &dyn HomBackend, &oracle] {
            reports.push(serre_duality(w, &win, backend).map_err(|e| e.to_string())?);
        }
    }
    all_pass(reports)
}

fn random_labels(rng: &mut ChaCha8Rng, win: &Window, max: usize) -> Vec<Indec> {
    let labels = win.labels();
    let n = rng.gen_range(1..=max);
    (0..n).map(|_| *labels.choose(rng).unwrap()).collect()
}

fn criterion_5() -> Outcome {
    let win = full_window();
    let oracle = Oracle::default();
    let mut reports = Vec::new();
    for w in SWEEP_W {
        let spec = canonical_spec(w);
        for backend in [&ClosedForm as &dyn HomBackend, &oracle] {
            reports.push(orthogonality_check(w, &spec, &win, backend).map_err(|e| e.to_string())?);
        }
    }
    let summary = all_pass(reports)?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let trials = 200;
    for w in SWEEP_W {
        let spec = canonical_spec(w);
        for _ in 0..trials {
            let labels = random_labels(&mut rng, &win, 6);
            let m = assemble(algebra(w), &labels);
            let tri = decomposition_triangle(w, &m).map_err(|e| e.to_string())?;
            ensure(tri.respects(&spec), || {
                format!(
                    "w={w} {labels:?}: sub {:?} quot {:?}",
                    tri.sub_labels, tri.quot_labels
                )
            })?;
            let h = |m: &DgModule| homology_with_action(m).map(|g| g.dims().clone());
            let (hm, hs, hq) = (
                h(&m).map_err(|e| e.to_string())?,
                h(&tri.sub).map_err(|e| e.to_string())?,
                h(&tri.quot).map_err(|e| e.to_string())?,
            );
            let mut sum: BTreeMap<i64, usize> = hs;
            for (n, k) in hq {
                *sum.entry(n).or_default() += k;
            }
            ensure(sum == hm, || {
                format!("w={w} {labels:?}: homology does not add")
            })?;
        }
    }
    Ok(format!(
        "{summary}; {} random triangles",
        trials * SWEEP_W.len()
    ))
}

fn criterion_6() -> Outcome {
    let win = full_window();
    let oracle = Oracle::default();
    let mut reports = Vec::new();
    for w in [-3, -2, -1, 0] {
        let ev = sparseness_evidence(w, &win).map_err(|e| e.to_string())?;
        if w == 0 {
            let off_line = win.labels().iter().filter(|t| t.width >= 1).count();
            ensure(ev.witnesses.len() == off_line, || {
                "w=0 witness list incomplete".into()
            })?;
            ensure(ev.baseline.iter().all(|b| b.dim == 2), || {
                "w=0 baseline End != 2".into()
            })?;
        } else {
            ensure(ev.witnesses.len() == win.len(), || {
                format!("w={w} witness list incomplete")
            })?;
        }
        reports.push(ev.report);
    }
    for w in [-3, -2, -1] {
        for backend in [&ClosedForm as &dyn HomBackend, &oracle] {
            reports.push(silting_vanishing(w, 12, backend).map_err(|e| e.to_string())?);
        }
    }
    all_pass(reports)
}

fn criterion_7() -> Outcome {
    let win = full_window();
    for w in [-3, -2, 0, 2, 3] {
        let d = (w - 1i64).unsigned_abs() as usize;
        let got = component_count(w, &win).map_err(|e| e.to_string())?;
        ensure(got == d, || format!("w={w}: {got} components, want {d}"))?;
    }
    let shifts = (win.i_max - win.i_min + 1) as usize;
    let got = component_count(1, &win).map_err(|e| e.to_string())?;
    ensure(got == shifts, || format!("w=1: {got} tubes, want {shifts}"))?;

    let examples = [
        (1, x(0, 0), x(0, 0), vec![x(0, 1)]),
        (1, x(0, 2), x(0, 2), vec![x(0, 1), x(0, 3)]),
        (3, x(0, 0), x(2, 0), vec![x(0, 1)]),
    ];
    for (w, t, start, middle) in examples {
        let tri = ar_triangle(w, t);
        ensure(
            tri.start == start && tri.middle == middle && tri.end == t,
            || format!("w={w} triangle at {t}: {tri:?}"),
        )?;
    }

    // Mesh identity, computed by the oracle against the assembled middle
    // term: dim(x, E) = dim(x, τt) + dim(x, t) - [x ≅ t] - [x ≅ Σ^{-1}t].
    let mesh_win = Window::new(-5, 5, 4).unwrap();
    let mut checked = 0u64;
    for w in SWEEP_W {
        let alg = algebra(w);
        for t in mesh_win.labels() {
            let tri = ar_triangle(w, t);
            ensure(tri.start == tau(w, t) && tri.middle.len() <= 2, || {
                format!("{tri:?}")
            })?;
            let e = assemble(alg, &tri.middle);
            let start = DgModule::indecomposable(alg, tri.start);
            let end = DgModule::indecomposable(alg, t);
            for s in mesh_win.labels() {
                let src = DgModule::indecomposable(alg, s);
                let dim =
                    |target: &DgModule| hom_dim_oracle(&src, 0, target).map_err(|e| e.to_string());
                let lhs = dim(&e)? as i64;
                let rhs = dim(&start)? as i64 + dim(&end)? as i64
                    - i64::from(s == t)
                    - i64::from(s == t.suspend(-1));
                ensure(lhs == rhs, || {
                    format!("w={w} mesh at {t}, probe {s}: {lhs} vs {rhs}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "component counts, 3 examples, {checked} mesh probes"
    ))
}

fn random_invertible(rng: &mut ChaCha8Rng, field: PrimeField, n: usize) -> Matrix {
    let p = field.modulus() as i64;
    loop {
        let m = Matrix::from_fn(field, n, n, |_, _| rng.gen_range(0..p));
        if m.inverse().is_some() {
            return m;
        }
    }
}

fn criterion_8() -> Outcome {
    let win = full_window();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let trials = 500;
    for trial in 0..trials {
        let w = *SWEEP_W.choose(&mut rng).unwrap();
        let alg = algebra(w);
        let mut labels = random_labels(&mut rng, &win, 6);
        let m = assemble(alg, &labels);
        let changes: BTreeMap<i64, Matrix> = m
            .dims()
            .iter()
            .map(|(&n, &k)| (n, random_invertible(&mut rng, alg.field(), k)))
            .collect();
        let scrambled = m.base_change(&changes).map_err(|e| e.to_string())?;
        let back = decompose(&scrambled).map_err(|e| e.to_string())?;
        labels.sort();
        ensure(back == labels, || {
            format!("trial {trial} w={w}: {labels:?} -> {back:?}")
        })?;
    }
    Ok(format!("{trials} round trips"))
}

fn criterion_9() -> Outcome {
    let win = full_window();
    let mut sizes = Vec::new();
    for w in [-2, 0, 2] {
        let c = thick_closure_window(w, x(0, 0), &win);
        ensure(c.covers_interior(), || {
            format!("w={w}: missing {:?} note {:?}", c.missing, c.note)
        })?;
        sizes.push(format!("w={w}: all {} interior labels", c.interior.len()));
    }
    Ok(sizes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("oracle and closed form agree", criterion_1),
        ("sphericity", criterion_2),
        ("hom dimension tables", criterion_3),
        ("serre duality", criterion_4),
        ("canonical structures and truncation triangles", criterion_5),
        ("sparseness and silting evidence", criterion_6),
        ("AR structure", criterion_7),
        ("Krull-Schmidt round trip", criterion_8),
        ("thick closure from X_0", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let ms = started.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS criterion {} {name}: {detail} ({ms} ms)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} {name}: {detail} ({ms} ms)", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

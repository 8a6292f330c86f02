//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see them.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use latconv::composition::{
    compose, conjugate_formula, dual_representation, outer_properness_check, scalarization_identity_check, strict_section_closure_check, CompositionInstance,
};
use latconv::cones::{cone_base, dual_cone, in_cone, OrderCone};
use latconv::generate::{generate, generate_control, GenParams};
use latconv::oracle::{oracle_conjugate_of_composition, oracle_envelope};
use latconv::rational::{add, dot, is_zero, q, qr, qvec, scale, ExtReal, Vector};
use latconv::report::Status;
use latconv::scalar_fn::{fenchel_moreau_gap, slope_dual_grid, ExtScalarFn};
use latconv::scenario::Scenario;
use latconv::setvalued_fn::{biconjugate_directions, convexity_report, derived_dual_primal_grid, inverse_monotonicity, sv_fenchel_moreau_check, SetValuedFn};
use latconv::upper_sets::{indicator_quasiconcavity_report, is_subset, lattice_inf, lattice_sup, set_equal, support, UpperSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scenarios() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn shapes(count: usize, seed0: u64) -> Vec<GenParams> {
    let s: [(usize, usize, usize, usize); 12] = [
        (1, 1, 1, 3),
        (1, 1, 1, 7),
        (1, 2, 1, 4),
        (2, 1, 1, 3),
        (1, 1, 2, 5),
        (2, 2, 1, 3),
        (1, 2, 2, 3),
        (2, 2, 2, 2),
        (3, 1, 1, 2),
        (1, 3, 2, 2),
        (2, 3, 3, 2),
        (3, 2, 1, 2),
    ];
    (0..count)
        .map(|i| {
            let (dim_x, dim_y, dim_z, grid_size) = s[i % s.len()];
            GenParams { dim_x, dim_y, dim_z, grid_size, seed: seed0 + i as u64 }
        })
        .collect()
}

fn ivec(rng: &mut ChaCha8Rng, dim: usize, lo: i64, hi: i64) -> Vector {
    (0..dim).map(|_| q(rng.gen_range(lo..=hi))).collect()
}

fn rand_set(rng: &mut ChaCha8Rng, cone: &OrderCone) -> UpperSet {
    let k = rng.gen_range(1..=3);
    let pts = (0..k).map(|_| ivec(rng, cone.dim(), -3, 3)).collect();
    UpperSet::new(cone, pts, vec![]).unwrap()
}

fn worked_instance() -> Outcome {
    let start = Instant::now();
    let s = Scenario::load(&scenarios().join("worked_1d.json")).map_err(|e| e.to_string())?;
    let inst = s.build().map_err(|e| e.to_string())?;
    let f = conjugate_formula(&inst, &qvec(&[-1]), &qvec(&[1])).map_err(|e| e.to_string())?;
    ensure(f.lhs == ExtReal::zero() && f.rhs == ExtReal::zero() && f.gap == ExtReal::zero(), || format!("at (-1, 1): {f:?}"))?;
    for xs in [0, 1, 2] {
        let f = conjugate_formula(&inst, &qvec(&[xs]), &qvec(&[1])).map_err(|e| e.to_string())?;
        ensure(f.lhs == ExtReal::PosInf && f.rhs == ExtReal::PosInf, || format!("at ({xs}, 1): {f:?}"))?;
    }
    let line = OrderCone::orthant(1).unwrap();
    let probes = vec![qvec(&[1]), qvec(&[-1])];
    for x in -1..=1 {
        let expected = UpperSet::translate(&line, qvec(&[-x])).unwrap();
        let rep = dual_representation(&inst, &qvec(&[x])).map_err(|e| e.to_string())?;
        ensure(set_equal(&rep, &expected, &probes).unwrap(), || format!("dual representation at {x}: {rep}"))?;
        ensure(compose(&inst, &qvec(&[x])).unwrap() == expected, || format!("composition at {x}"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("LHS = RHS = 0 at (-1, 1), both +inf off the slope, representation exact at 3 points, {t:.2?}"))
}

struct Tally {
    probes: usize,
    pairs: usize,
    exact: usize,
}

fn duality_pairs(inst: &CompositionInstance, tally: &mut Tally, label: &str, require_exact: bool) -> Result<(), String> {
    for z in inst.z_directions() {
        for xs in &inst.x_dual_grid {
            let f = conjugate_formula(inst, xs, &z).map_err(|e| e.to_string())?;
            ensure(f.lhs <= f.rhs, || format!("{label}: weak duality fails at x*={xs:?} z*={z:?}: {f:?}"))?;
            let o = oracle_conjugate_of_composition(inst, xs, &z).map_err(|e| e.to_string())?;
            ensure(o == f.lhs, || format!("{label}: oracle {o} vs {} at x*={xs:?} z*={z:?}", f.lhs))?;
            if require_exact && f.formula_exact {
                ensure(f.gap == ExtReal::zero(), || format!("{label}: gap {} at x*={xs:?} z*={z:?}", f.gap))?;
                tally.exact += 1;
            }
            tally.pairs += 1;
        }
    }
    Ok(())
}

fn random_suite() -> Outcome {
    let start = Instant::now();
    let mut t = Tally { probes: 0, pairs: 0, exact: 0 };
    let params = shapes(108, 10_000);
    for p in &params {
        let inst = generate(p).and_then(|s| s.build().map_err(|e| latconv::Error::InvalidParameter(e.to_string()))).map_err(|e| format!("{p:?}: {e}"))?;
        ensure(inst.hypotheses().duality_ready(), || format!("{p:?}: hypotheses fail: {:?}", inst.hypotheses().reason()))?;
        for e in scalarization_identity_check(&inst).map_err(|e| e.to_string())? {
            ensure(e.status == Status::Pass, || format!("{p:?}: {e:?}"))?;
            t.probes += 1;
        }
        duality_pairs(&inst, &mut t, &format!("{p:?}"), true)?;
    }
    let controls = shapes(36, 20_000);
    for p in &controls {
        let inst = generate_control(p).unwrap().build().map_err(|e| e.to_string())?;
        duality_pairs(&inst, &mut t, &format!("control {p:?}"), false)?;
    }
    let el = start.elapsed();
    ensure(el < Duration::from_secs(60), || format!("took {el:?}"))?;
    ensure(t.exact > 0, || "no formula-exact pairs".into())?;
    Ok(format!(
        "{} instances + {} controls, {} identity probes, {} weak-duality/oracle pairs, {} formula-exact with gap 0, {el:.2?}",
        params.len(),
        controls.len(),
        t.probes,
        t.pairs,
        t.exact
    ))
}

fn max_affine(rng: &mut ChaCha8Rng, dim: usize) -> ExtScalarFn {
    let grid: Vec<Vector> = if dim == 1 { (-3..=3).map(|v| qvec(&[v])).collect() } else { (-2..=2).flat_map(|a| (-2..=2).map(move |b| qvec(&[a, b]))).collect() };
    let pieces: Vec<(Vector, i64)> = (0..rng.gen_range(1..=4)).map(|_| (ivec(rng, dim, -3, 3), rng.gen_range(-4..=4))).collect();
    let vals = grid.iter().map(|x| pieces.iter().map(|(a, b)| ExtReal::Finite(dot(a, x) + q(*b))).max().unwrap()).collect();
    ExtScalarFn::new(dim, grid, vals).unwrap()
}

fn sv_check(r: &SetValuedFn) -> Vec<latconv::report::ReportEntry> {
    let base = cone_base(&dual_cone(r.ambient())).unwrap();
    let dirs = biconjugate_directions(r, &base).unwrap();
    let grid = derived_dual_primal_grid(r, &dirs).unwrap();
    sv_fenchel_moreau_check(r, &grid, &base, "R").unwrap()
}

fn fenchel_moreau() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut scalar = 0;
    for i in 0..60 {
        let rho = max_affine(&mut rng, 1 + i % 2);
        let gap = fenchel_moreau_gap(&rho, &slope_dual_grid(&rho)).map_err(|e| e.to_string())?;
        ensure(gap == ExtReal::zero(), || format!("convex function {i}: gap {gap}"))?;
        ensure(oracle_envelope(&rho).unwrap().as_slice() == rho.values(), || format!("convex function {i}: envelope differs"))?;
        scalar += 1;
    }
    let mut scalar_controls = 0;
    while scalar_controls < 20 {
        let dim = 1 + scalar_controls % 2;
        let rho = max_affine(&mut rng, dim);
        let mut vals = rho.values().to_vec();
        let k = rng.gen_range(0..vals.len());
        vals[k] = vals[k].add_q(&q(rng.gen_range(1..=5)));
        let bumped = ExtScalarFn::new(dim, rho.grid().to_vec(), vals).unwrap();
        if bumped.midpoint_convexity_violation().is_none() {
            continue;
        }
        let gap = fenchel_moreau_gap(&bumped, &slope_dual_grid(&bumped)).unwrap();
        ensure(gap > ExtReal::zero(), || format!("nonconvex function: gap {gap}"))?;
        scalar_controls += 1;
    }
    let mut sv = 0;
    for p in shapes(30, 30_000) {
        let inst = generate(&p).unwrap().build().map_err(|e| e.to_string())?;
        for r in [&inst.g, inst.composed()] {
            for e in sv_check(r) {
                ensure(e.status == Status::Pass, || format!("{p:?}: {e:?}"))?;
            }
            sv += 1;
        }
    }
    let mut sv_controls = 0;
    for p in shapes(36, 40_000) {
        let inst = generate_control(&p).unwrap().build().map_err(|e| e.to_string())?;
        if convexity_report(&inst.g, 64, p.seed).unwrap().convex {
            continue;
        }
        let entries = sv_check(&inst.g);
        ensure(entries.iter().any(|e| e.status == Status::Fail && e.witness.is_some()), || format!("control {p:?} recovered"))?;
        sv_controls += 1;
    }
    ensure(sv_controls > 0, || "no nonconvex set-valued controls".into())?;
    Ok(format!("{scalar} convex scalar gaps 0, {scalar_controls} nonconvex gaps > 0, {sv} set-valued recoveries, {sv_controls} set-valued controls fail with witnesses"))
}

fn structure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut probes = 0;
    while probes < 1200 {
        let d = rng.gen_range(2..=3);
        let gens: Vec<Vector> = (0..rng.gen_range(0..=3)).map(|_| ivec(&mut rng, d, -2, 2)).filter(|v| !is_zero(v)).collect();
        let cone = OrderCone::new(d, gens).unwrap();
        let back = dual_cone(&dual_cone(&cone));
        for _ in 0..20 {
            let v = ivec(&mut rng, d, -3, 3);
            let m = cone.contains(&v);
            ensure(m == back.contains(&v) && m == in_cone(&cone, &v).unwrap(), || format!("double dual differs at {v:?}"))?;
            probes += 1;
        }
    }
    let plane = OrderCone::orthant(2).unwrap();
    for _ in 0..200 {
        let (a, b, c) = (rand_set(&mut rng, &plane), rand_set(&mut rng, &plane), rand_set(&mut rng, &plane));
        let (z1, z2) = (ivec(&mut rng, 2, -2, 3), ivec(&mut rng, 2, -2, 3));
        let t = qr(rng.gen_range(1..=5), 2);
        ensure(support(&a, &scale(&z1, &t)).unwrap() == support(&a, &z1).unwrap().mul_pos(&t), || "homogeneity".into())?;
        let sum = support(&a, &z1).unwrap().add_lower(&support(&a, &z2).unwrap());
        ensure(support(&a, &add(&z1, &z2)).unwrap() >= sum, || "superadditivity".into())?;
        let inf = lattice_inf(&[a.clone(), b.clone()]).unwrap();
        let sup = lattice_sup(&[a.clone(), b.clone()]).unwrap();
        let bounds = is_subset(&a, &inf).unwrap() && is_subset(&b, &inf).unwrap() && is_subset(&sup, &a).unwrap() && is_subset(&sup, &b).unwrap();
        let least = (is_subset(&a, &c).unwrap() && is_subset(&b, &c).unwrap()) == is_subset(&inf, &c).unwrap();
        let greatest = (is_subset(&c, &a).unwrap() && is_subset(&c, &b).unwrap()) == is_subset(&c, &sup).unwrap();
        ensure(bounds && least && greatest, || "lattice bounds".into())?;
    }
    let free = OrderCone::new(2, vec![]).unwrap();
    let mut pairs = 0;
    while pairs < 60 {
        let b = rand_set(&mut rng, &free);
        let a = lattice_sup(&[b.clone(), rand_set(&mut rng, &free)]).unwrap();
        if a.is_empty() {
            continue;
        }
        let rep = indicator_quasiconcavity_report(&a, &b, 48, pairs as u64).unwrap();
        ensure(rep.equivalent(), || format!("indicator equivalence: {rep:?}"))?;
        pairs += 1;
    }
    let mut inverse = 0;
    let (mut outer, mut closure) = (0, 0);
    for p in shapes(108, 10_000) {
        let inst = generate(&p).unwrap().build().map_err(|e| e.to_string())?;
        if inverse < 60 {
            for r in [&inst.g, &inst.f, inst.composed()] {
                let m = inverse_monotonicity(r).unwrap();
                ensure(m.holds(), || format!("{p:?}: inverse characterization {m:?}"))?;
                inverse += 1;
            }
        }
        for e in outer_properness_check(&inst).unwrap() {
            ensure(e.status != Status::Fail, || format!("{p:?}: {e:?}"))?;
            outer += 1;
        }
        if inst.hypotheses().assumptions.satisfied() {
            for e in strict_section_closure_check(&inst).unwrap() {
                ensure(e.passed(), || format!("{p:?}: {e:?}"))?;
                closure += 1;
            }
        }
    }
    Ok(format!(
        "{probes} double-dual probes, 200 support/lattice samples, {pairs} indicator pairs, {inverse} inverse checks, {outer} properness entries, {closure} section-closure entries"
    ))
}

fn cli() -> Outcome {
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_latconv")).args(args).output().unwrap();
    let dir = scenarios();
    let path = |n: &str| dir.join(n).to_string_lossy().into_owned();
    for (file, code) in [("worked_1d.json", 0), ("generated_2d.json", 0), ("no_descent.json", 2), ("nonconvex.json", 1), ("missing.json", 3)] {
        let out = run(&["verify", "--scenario", &path(file)]);
        ensure(out.status.code() == Some(code), || format!("{file}: exit {:?}, expected {code}", out.status.code()))?;
        if code < 3 {
            let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("{file}: {e}"))?;
            let ok = v.as_array().is_some_and(|a| {
                a.iter().all(|e| {
                    let o = e.as_object();
                    o.is_some_and(|o| o.len() == 8 && ["check", "inputs", "tolerance", "status"].iter().all(|k| o[*k].is_string()))
                })
            });
            ensure(ok, || format!("{file}: report shape"))?;
        }
    }
    let gen = ["generate", "--dims", "1,2,1", "--grid-size", "4", "--seed", "9"];
    ensure(run(&gen).stdout == run(&gen).stdout, || "generate is not deterministic".into())?;
    Ok("exit codes 0, 0, 2, 1, 3 as contracted; generate byte-identical per seed; reports well-formed".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 5] = [
        ("worked analytic instance", worked_instance),
        ("random composition suite", random_suite),
        ("Fenchel-Moreau suites", fenchel_moreau),
        ("structural property suites", structure),
        ("CLI end-to-end", cli),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS criterion {}: {name}: {msg}", i + 1),
            Err(msg) => {
                println!("FAIL criterion {}: {name}: {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, even on success:
//!
//!     cargo test -p sepkit --test acceptance

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use sepkit::cli::{camacho_constraint, generate_example, run_cli_with_io, Env, Example};
use sepkit::dualgraph::{has_errors, parse_graph, to_json_string, validate_indices, CrossingKind};
use sepkit::exactfield::is_root_of_unity;
use sepkit::holonomy::{
    cycle_basis, delta, holonomy, representation_class, representation_class_with, residual_divisor, Convention,
    RepresentationKind,
};
use sepkit::intersection::{definiteness, divisor_pairing, intersection_matrix, IntersectionMatrix};
use sepkit::verdict::{gorenstein_reduce, rules, separatrix_bound, toma_prune_by_index, verdict, Conclusion};
use sepkit::{DualGraph, Error};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        return Err(format!("took {t:?}, limit {limit:?}"));
    }
    Ok(())
}

fn p2_cycle_triviality() -> Outcome {
    let start = Instant::now();
    let mut r = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    while checked < 200 {
        let t = q(r.gen_range(-60..=60), r.gen_range(1..=60));
        if t == q(0, 1) || t == q(-1, 1) {
            continue;
        }
        let g = generate_example(&Example::P2Cycle { t: t.clone() }).map_err(|e| e.to_string())?;
        let basis = cycle_basis(&g);
        ensure!(basis.cycles.len() == 1, "t = {t}: {} cycles", basis.cycles.len());
        let h = holonomy(&g, &basis.cycles[0], Convention::HeadSide).ok_or("undefined holonomy")?;
        ensure!(h.is_one(), "t = {t}: holonomy {h}");
        ensure!(!has_errors(&validate_indices(&g)), "t = {t}: validation errors");
        checked += 1;
    }
    within(Duration::from_secs(1), start)?;

    // the tail-side weights at t = 2 are the ones in the plane-curve equations
    let g = generate_example(&Example::P2Cycle { t: q(2, 1) }).map_err(|e| e.to_string())?;
    let weights: Vec<String> = (0..3)
        .map(|k| delta(&g, k, Convention::TailSide).unwrap().to_string())
        .collect();
    ensure!(weights == ["2", "-3", "-3/2"], "t = 2 weights {weights:?}");
    Ok(format!("{checked} values of t, holonomy 1"))
}

fn camacho_counterexample() -> Outcome {
    let start = Instant::now();
    let coeffs = camacho_constraint([-2, -2, -3]).primitive_integer_coeffs();
    let expected: Vec<BigInt> = [5, 11, 5].into_iter().map(BigInt::from).collect();
    let negated: Vec<BigInt> = expected.iter().map(|c| -c).collect();
    ensure!(coeffs == expected || coeffs == negated, "constraint {coeffs:?}");

    let g = generate_example(&Example::camacho()).map_err(|e| e.to_string())?;
    let tail: Vec<String> = g.field().min_poly_tail().iter().map(ToString::to_string).collect();
    ensure!(tail == ["-21", "0"], "field tail {tail:?}");
    ensure!(!has_errors(&validate_indices(&g)), "validation errors");
    let d = definiteness(&intersection_matrix(&g));
    ensure!(d.negative_definite, "matrix not negative definite");
    ensure!(d.determinant == BigInt::from(-3), "determinant {}", d.determinant);
    let kind = representation_class(&g).kind;
    ensure!(kind == RepresentationKind::Infinite, "representation {kind:?}");
    let c = verdict(&g).map_err(|e| e.to_string())?;
    ensure!(c.conclusion == Conclusion::CertifiedAbsent, "conclusion {:?}", c.conclusion);
    within(Duration::from_secs(1), start)?;
    Ok("5t^2 + 11t + 5 over Q(sqrt 21), det -3, Infinite, CertifiedAbsent".into())
}

fn tree_corollary() -> Outcome {
    let start = Instant::now();
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..1000u64 {
        let n = r.gen_range(1..=50);
        let g = generate_example(&Example::RandomTree {
            seed: trial,
            n,
            saddle_node_probability: 0.3,
            quadratic: None,
        })
        .map_err(|e| e.to_string())?;
        let pruned = toma_prune_by_index(&g).map_err(|e| e.to_string())?;
        ensure!(!pruned.is_empty(), "seed {trial}: empty pruned subcurve");
        for x in g.crossings() {
            if let CrossingKind::SaddleNode { weak, .. } = x.kind {
                ensure!(!pruned.contains(&weak), "seed {trial}: incoming weak edge {}", x.id);
            }
        }
        let (_, oracle) = toma_oracle(&g);
        ensure!(pruned == oracle, "seed {trial}: {pruned:?} vs oracle {oracle:?}");
        let c = verdict(&g).map_err(|e| e.to_string())?;
        ensure!(
            c.conclusion == Conclusion::SeparatrixExists && c.rule == rules::TREE,
            "seed {trial}: {:?} via {}",
            c.conclusion,
            c.rule
        );
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("1000 trees in {:?}", start.elapsed()))
}

fn trivial_fixtures() -> Vec<DualGraph> {
    let mut r = ChaCha8Rng::seed_from_u64(4);
    let mut out = Vec::new();
    for _ in 0..40 {
        let t = q(r.gen_range(1..=30), r.gen_range(1..=30));
        out.push(generate_example(&Example::P2Cycle { t }).unwrap());
    }
    for seed in 0..60 {
        out.push(
            generate_example(&Example::RandomTree {
                seed,
                n: r.gen_range(1..=20),
                saddle_node_probability: 0.0,
                quadratic: [None, Some(2), Some(-1), Some(21)].choose(&mut r).unwrap().to_owned(),
            })
            .unwrap(),
        );
    }
    for _ in 0..100 {
        out.push(random_graph(&mut r, &GraphSpec::cycles(Indices::Trivial)));
    }
    for _ in 0..100 {
        out.push(random_graph(&mut r, &GraphSpec::cycles(Indices::Palette)));
    }
    out
}

fn residual_identities() -> Outcome {
    let mut checked = 0;
    for (i, g) in trivial_fixtures().iter().enumerate() {
        if has_errors(&validate_indices(g)) || representation_class(g).kind != RepresentationKind::Trivial {
            continue;
        }
        let res = residual_divisor(g).map_err(|e| format!("fixture {i}: {e}"))?;
        for (k, x) in g.crossings().iter().enumerate() {
            let d = delta(g, k, Convention::HeadSide).ok_or("saddle-node crossing")?;
            let quotient = res.residues[x.tail]
                .1
                .checked_div(&res.residues[x.head].1)
                .map_err(|e| e.to_string())?;
            ensure!(quotient == d, "fixture {i}, crossing {}: {quotient} vs {d}", x.id);
        }
        for (id, v) in divisor_pairing(g, &res.to_divisor()).map_err(|e| e.to_string())? {
            ensure!(v.is_zero(), "fixture {i}: R.{id} = {v}");
        }
        checked += 1;
    }
    ensure!(checked >= 200, "only {checked} trivial fixtures");
    Ok(format!("{checked} fixtures"))
}

fn count_bound() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    let mut instances: Vec<DualGraph> = (0..30)
        .map(|seed| {
            generate_example(&Example::RandomTree {
                seed,
                n: r.gen_range(1..=12),
                saddle_node_probability: 0.0,
                quadratic: Some(*[2, 3, 5, -1, -2, 21].choose(&mut r).unwrap()),
            })
            .unwrap()
        })
        .collect();
    instances.extend((0..20).map(|_| random_graph(&mut r, &GraphSpec::cycles(Indices::Trivial))));
    let mut ranks = Vec::new();
    for (i, g) in instances.iter().enumerate() {
        ensure!(definiteness(&intersection_matrix(g)).invertible, "instance {i}: singular matrix");
        ensure!(
            representation_class(g).kind == RepresentationKind::Trivial,
            "instance {i}: nontrivial representation"
        );
        let b = separatrix_bound(g).map_err(|e| format!("instance {i}: {e}"))?;
        let res = residual_divisor(g).map_err(|e| e.to_string())?;
        let oracle = coordinate_rank(&res.values());
        ensure!(b.lower_bound == oracle, "instance {i}: rank {} vs oracle {oracle}", b.lower_bound);
        ensure!(
            b.declared_m >= b.lower_bound && b.lower_bound >= 1 && b.holds,
            "instance {i}: declared {} lower bound {}",
            b.declared_m,
            b.lower_bound
        );
        ranks.push(b.lower_bound);
    }
    let max = ranks.iter().max().copied().unwrap_or(0);
    Ok(format!("{} instances, ranks 1..={max}", instances.len()))
}

fn torsion_route() -> Outcome {
    let g = generate_example(&Example::Torsion4).map_err(|e| e.to_string())?;
    let class = representation_class(&g);
    ensure!(class.kind == RepresentationKind::Torsion { order: 4 }, "kind {:?}", class.kind);
    let h = class.holonomies[0].value.clone().ok_or("undefined holonomy")?;
    ensure!(h == g.field().generator(), "holonomy {h}, expected i");
    ensure!(is_root_of_unity(&h).map_err(|e| e.to_string())? == Some(4), "order of i");
    let c = verdict(&g).map_err(|e| e.to_string())?;
    ensure!(
        c.conclusion == Conclusion::SeparatrixExists && c.rule == rules::TORSION,
        "{:?} via {}",
        c.conclusion,
        c.rule
    );
    ensure!(c.witnesses.torsion_order == Some(4), "witness {:?}", c.witnesses.torsion_order);
    Ok("holonomy i, Torsion(4), SeparatrixExists".into())
}

fn camacho_shape(a: [i64; 3]) -> DualGraph {
    parse_graph(&format!(
        r#"{{"field": {{"min_poly": ["0"]}},
          "components": [{{"id": "E1", "self_intersection": -2}}, {{"id": "E2", "self_intersection": -2}},
                         {{"id": "E3", "self_intersection": -3}}],
          "crossings": [
            {{"tail": "E1", "head": "E2", "kind": "nondegenerate", "cs_tail": ["-1"]}},
            {{"tail": "E1", "head": "E3", "kind": "nondegenerate", "cs_tail": ["-1"]}},
            {{"tail": "E2", "head": "E3", "kind": "nondegenerate", "cs_tail": ["-1"]}}],
          "gorenstein": {{"k": 2, "a": {{"E1": {}, "E2": {}, "E3": {}}}}}}}"#,
        a[0], a[1], a[2]
    ))
    .unwrap()
}

fn gorenstein_reduction() -> Outcome {
    let ok = gorenstein_reduce(&camacho_shape([2, 2, 2])).map_err(|e| e.to_string())?;
    ensure!(ok.forced_a && ok.pairings == [0, 0, 0], "(2,2,2): {ok:?}");
    match gorenstein_reduce(&camacho_shape([1, 2, 2])) {
        Err(Error::GorensteinInconsistent(msg)) => ensure!(msg.starts_with("D.E1 = 2"), "message {msg}"),
        other => return Err(format!("(1,2,2): {other:?}")),
    }

    // -(A^T A + I) is negative definite by construction
    let mut r = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100 {
        let n = r.gen_range(1..=6);
        let rows = r.gen_range(1..=6);
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..n).map(|_| r.gen_range(-2..=2)).collect())
            .collect();
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| -(0..rows).map(|k| a[k][i] * a[k][j]).sum::<i64>() - i64::from(i == j))
                    .collect()
            })
            .collect();
        let d = definiteness(&IntersectionMatrix {
            ids: (1..=n).map(|i| format!("E{i}")).collect(),
            entries: m.clone(),
        });
        ensure!(d.negative_definite, "trial {trial}: {m:?} not reported definite");
        ensure!(integer_rank(&m) == n, "trial {trial}: nonzero kernel in {m:?}");
    }
    Ok("(2,2,2) forced, (1,2,2) gives D.E1 = 2, 100 kernels trivial".into())
}

fn convention_duality() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(8);
    let mut cycles = 0;
    for trial in 0..300 {
        let spec = GraphSpec {
            saddle_node_probability: if trial % 3 == 0 { 0.15 } else { 0.0 },
            ..GraphSpec::cycles(Indices::Palette)
        };
        let g = random_graph(&mut r, &spec);
        ensure!(g.cycle_rank() >= 1, "trial {trial}: no cycle");
        let basis = cycle_basis(&g);
        let head = representation_class_with(&g, &basis, Convention::HeadSide);
        let tail = representation_class_with(&g, &basis, Convention::TailSide);
        ensure!(head.kind == tail.kind, "trial {trial}: {:?} vs {:?}", head.kind, tail.kind);
        for (h, t) in head.holonomies.iter().zip(&tail.holonomies) {
            ensure!(h.order == t.order, "trial {trial}: orders differ");
            match (&h.value, &t.value) {
                (Some(a), Some(b)) => ensure!((a * b).is_one(), "trial {trial}: {a} * {b} != 1"),
                (None, None) => {}
                _ => return Err(format!("trial {trial}: defined under one convention only")),
            }
            cycles += 1;
        }
    }
    Ok(format!("300 graphs, {cycles} cycles"))
}

fn determinism() -> Outcome {
    let mut fixtures = vec![
        generate_example(&Example::camacho()).unwrap(),
        generate_example(&Example::Camacho {
            self_intersections: [-2, -2, -3],
            closed_world: false,
        })
        .unwrap(),
        generate_example(&Example::Torsion4).unwrap(),
        generate_example(&Example::P2Cycle { t: q(2, 1) }).unwrap(),
        generate_example(&Example::P2Cycle { t: q(-7, 5) }).unwrap(),
    ];
    for seed in 0..6 {
        fixtures.push(
            generate_example(&Example::RandomTree {
                seed,
                n: 25,
                saddle_node_probability: 0.3,
                quadratic: (seed % 2 == 1).then_some(5),
            })
            .unwrap(),
        );
    }
    let mut r = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..4 {
        fixtures.push(random_graph(&mut r, &GraphSpec::cycles(Indices::Palette)));
    }

    let dir = std::env::temp_dir().join(format!("sepkit-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_sepkit");
    let mut compared = 0;
    for (i, g) in fixtures.iter().enumerate() {
        let path = dir.join(format!("fixture{i}.json"));
        std::fs::write(&path, to_json_string(g)).map_err(|e| e.to_string())?;
        let p = path.to_str().unwrap();
        for format in ["json", "text"] {
            let args = ["analyze", "--input", p, "--format", format];
            let runs: Vec<Vec<u8>> = (0..2)
                .map(|_| Command::new(bin).args(args).output().map(|o| o.stdout))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let mut in_process = Vec::new();
            run_cli_with_io(
                std::iter::once("sepkit").chain(args),
                &Env::default(),
                &mut std::io::empty(),
                &mut in_process,
                &mut std::io::sink(),
            );
            ensure!(!runs[0].is_empty(), "fixture {i}: empty {format} report");
            ensure!(runs[0] == runs[1], "fixture {i}: {format} reports differ between runs");
            ensure!(runs[0] == in_process, "fixture {i}: {format} report differs in process");
            compared += 1;
        }
    }
    std::fs::remove_dir_all(&dir).map_err(|e| e.to_string())?;
    Ok(format!("{} fixtures, {compared} report pairs identical", fixtures.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("projective-plane cycle has holonomy 1", p2_cycle_triviality),
        ("Camacho counterexample", camacho_counterexample),
        ("tree corollary and pruning oracle", tree_corollary),
        ("residual divisor identities", residual_identities),
        ("separatrix count bound", count_bound),
        ("torsion route", torsion_route),
        ("Gorenstein reduction", gorenstein_reduction),
        ("convention duality", convention_duality),
        ("analyze determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name} ({detail}; {ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

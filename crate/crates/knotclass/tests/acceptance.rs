//! One line per acceptance criterion. Run with
//! `cargo test -p knotclass --test acceptance`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use knotclass::cli::run_with;
use knotclass::table::{parse_table, to_table_string};
use knotclass_core::coloring::{count_colorings, count_colorings_bruteforce, fingerprint, strands, ColoringScheme};
use knotclass_core::enumeration::{enumerate_filtered, enumerate_projections, Filters};
use knotclass_core::moves::{apply, legal_moves, r3_inverse, MoveDescriptor, R2Variant};
use knotclass_core::realizability::{is_realizable, is_realizable_exhaustive, witness};
use knotclass_core::{ClassificationReport, Notation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn n(s: &str) -> Notation {
    s.parse().unwrap()
}

fn classify_via_cli(n_max: usize) -> Result<(ClassificationReport, String), String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let arg = n_max.to_string();
    let code = run_with(["knotclass", "--format", "records", "classify", "--max-crossings", &arg], &mut out, &mut err);
    ensure!(code == 0, "exit {code}: {}", String::from_utf8_lossy(&err));
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let rep = parse_table(&text).map_err(|e| e.to_string())?;
    Ok((rep, text))
}

fn table(n_max: usize, expected: &str) -> Outcome {
    let (rep, _) = classify_via_cli(n_max)?;
    let row: Vec<String> = rep.counts.iter().map(ToString::to_string).collect();
    let row = row.join(",");
    ensure!(row == expected, "counts {row}, expected {expected}");
    ensure!(rep.unresolved.is_empty(), "{} unresolved pairs", rep.unresolved.len());
    Ok(format!("{row}, 0 unresolved"))
}

fn coloring_oracle() -> Outcome {
    let schemes: Vec<ColoringScheme> =
        [3u32, 4, 5].iter().flat_map(|&r| (1..r).filter_map(move |t| ColoringScheme::new(r, t).ok())).collect();
    ensure!(schemes.len() == 8, "expected 8 unit schemes, got {}", schemes.len());
    let mut checks = 0;
    for k in 1..=6 {
        for v in enumerate_projections(k) {
            let st = strands(&v).map_err(|e| e.to_string())?;
            let w = witness(&v).ok_or_else(|| format!("{v} has no witness"))?;
            let leftward: Vec<bool> = (0..k).map(|c| w.under_passes_leftward(c)).collect();
            for s in &schemes {
                let fast = count_colorings(&st, s);
                let brute = count_colorings_bruteforce(&st, s).map_err(|e| e.to_string())?;
                let reference = oracle_colorings(&v, &leftward, s.r as u64, s.t as u64) as u128;
                ensure!(fast == brute && brute == reference, "{v} at {s}: {fast} {brute} {reference}");
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} projection-scheme pairs"))
}

fn move_invariance() -> Outcome {
    let schemes = ColoringScheme::default_set();
    let starts: Vec<Notation> = (1..=7).flat_map(enumerate_projections).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut applied = 0;
    while applied < 10_000 {
        let mut v = starts.choose(&mut rng).unwrap().clone();
        let mut fp = fingerprint(&v, &schemes).map_err(|e| e.to_string())?;
        for _ in 0..25 {
            let moves = legal_moves(&v, 7).map_err(|e| e.to_string())?;
            let Some((d, r)) = moves.choose(&mut rng) else { break };
            let next = fingerprint(r, &schemes).map_err(|e| e.to_string())?;
            ensure!(next == fp, "{d} on {v} changed the fingerprint");
            applied += 1;
            v = r.clone();
            fp = next;
        }
    }
    Ok(format!("{applied} moves, {} schemes", schemes.len()))
}

fn realizability() -> Outcome {
    let mut sample: Vec<Notation> = (1..=5).flat_map(all_parity_valid).collect();
    let exhaustive = sample.len();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    sample.extend((0..1_000).map(|_| {
        let k = rng.gen_range(1..=8);
        random_parity_valid(&mut rng, k)
    }));
    for v in &sample {
        let fast = is_realizable(v).realizable();
        ensure!(fast == is_realizable_exhaustive(v).realizable(), "{v}: pruned and exhaustive disagree");
        ensure!(fast == oracle_planar(v), "{v}: disagrees with interlacement test");
        ensure!(is_realizable(&v.mirror()).realizable() == fast, "{v}: mirror verdict differs");
        for w in v.orbit() {
            ensure!(is_realizable(&w).realizable() == fast, "{v}: verdict differs on {w}");
        }
    }
    Ok(format!("{exhaustive} exhaustive, 1000 random"))
}

fn canonicalization() -> Outcome {
    let mut sample: Vec<Notation> = (1..=5).flat_map(all_notations).collect();
    let exhaustive = sample.len();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    sample.extend((0..10_000).map(|_| {
        let k = rng.gen_range(1..=8);
        random_notation(&mut rng, k)
    }));
    for v in &sample {
        let c = v.canonicalize();
        ensure!(c == oracle_canonical(v), "{v}: canonical form {c} differs from reference");
        ensure!(c.canonicalize() == c, "{v}: not idempotent");
        let orbit = v.orbit();
        ensure!(orbit == oracle_orbit(v), "{v}: orbit differs from reference");
        for w in &orbit {
            ensure!(w.canonicalize() == c, "{v}: {w} canonicalizes differently");
        }
    }
    Ok(format!("{exhaustive} exhaustive, 10000 random"))
}

fn realizable_sample(rng: &mut ChaCha8Rng, max_n: usize) -> Notation {
    loop {
        let k = rng.gen_range(1..=max_n);
        let v = random_parity_valid(rng, k);
        if oracle_planar(&v) {
            return v;
        }
    }
}

fn round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..1_000 {
        let v = realizable_sample(&mut rng, 7);
        let site = rng.gen_range(1..=v.label_count() as u16 + 1);
        let add = MoveDescriptor::R1Add { site, over_first: rng.gen() };
        let bigger = apply(&v, &add).map_err(|e| format!("{add} on {v}: {e}"))?;
        let back = apply(&bigger, &MoveDescriptor::R1Remove { shift: 0, site }).map_err(|e| e.to_string())?;
        ensure!(back == v, "{add} on {v} does not undo");
    }
    let mut r2 = 0;
    while r2 < 1_000 {
        let v = realizable_sample(&mut rng, 6);
        let len = v.label_count() as u16;
        let i = rng.gen_range(1..=len + 1);
        let j = rng.gen_range(i + 2..=len + 3);
        let variant = if rng.gen() { R2Variant::Parallel } else { R2Variant::Crossed };
        let add = MoveDescriptor::R2Add { i, j, variant, first_over: rng.gen() };
        let Ok(bigger) = apply(&v, &add) else { continue };
        let back = apply(&bigger, &MoveDescriptor::R2Remove { shift: 0, i, j }).map_err(|e| e.to_string())?;
        ensure!(back == v, "{add} on {v} does not undo");
        r2 += 1;
    }
    let mut r3 = 0;
    for k in 3..=6 {
        for v in enumerate_filtered(k, Filters { canonical: true, realizable: true, prime: false }) {
            for (d, r) in legal_moves(&v, k).map_err(|e| e.to_string())? {
                if matches!(d, MoveDescriptor::R3 { .. }) {
                    let inv = r3_inverse(&d).ok_or_else(|| format!("{d} has no inverse"))?;
                    ensure!(apply(&r, &inv).as_ref() == Ok(&v), "{d} on {v} does not invert");
                    r3 += 1;
                }
            }
        }
    }
    Ok(format!("1000 R1, 1000 R2, {r3} R3 sites"))
}

fn unknot_absorption() -> Outcome {
    let (rep, _) = classify_via_cli(3)?;
    ensure!(rep.classes[0].representative.is_empty(), "class 0 is not the empty notation");
    for v in ["(1,2)", "(2,1)", "(1,4)(2,3)"] {
        let id = rep.locate(&n(v), 100_000).map_err(|e| e.to_string())?;
        ensure!(id == Some(0), "{v} located in {id:?}");
    }
    let trefoil = n("(1,4)(3,6)(5,2)");
    let id = rep.locate(&trefoil, 100_000).map_err(|e| e.to_string())?;
    ensure!(matches!(id, Some(k) if k != 0), "trefoil located in {id:?}");
    let s = ColoringScheme::new(3, 2).unwrap();
    let counts = (
        knotclass_core::coloring::count_notation_colorings(&trefoil, &s).map_err(|e| e.to_string())?,
        knotclass_core::coloring::count_notation_colorings(&Notation::empty(), &s).map_err(|e| e.to_string())?,
    );
    ensure!(counts == (9, 3), "counts at 3:2 are {counts:?}");
    Ok("three unknot diagrams absorbed, trefoil 9 vs 3".into())
}

fn persistence() -> Outcome {
    let (rep, text) = classify_via_cli(7)?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("seven.tsv");
    knotclass::table::save_table(&rep, &path).map_err(|e| e.to_string())?;
    let loaded = knotclass::table::load_table(&path).map_err(|e| e.to_string())?;
    ensure!(loaded == rep, "loaded report differs");
    let again = dir.path().join("again.tsv");
    knotclass::table::save_table(&loaded, &again).map_err(|e| e.to_string())?;
    let (a, b) = (std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
    ensure!(a == b, "second save differs");
    ensure!(a == text.as_bytes() && to_table_string(&loaded) == text, "file differs from printed table");
    Ok(format!("{} bytes", a.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("table n<=7", 300, || table(7, "1,0,0,1,1,2,3,7")),
        ("table n<=8 (stretch)", 3600, || table(8, "1,0,0,1,1,2,3,7,21")),
        ("coloring oracle n<=6, r in {3,4,5}", 600, coloring_oracle),
        ("move invariance, 10^4 moves n<=7", 600, move_invariance),
        ("realizability agreement", 300, realizability),
        ("canonicalization", 120, canonicalization),
        ("move round trips", 600, round_trips),
        ("unknot absorption", 60, unknot_absorption),
        ("persistence n<=7", 300, persistence),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > Duration::from_secs(limit) => Err(format!("exceeded {limit} s")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name}  [{detail}; {:.1} s of {limit} s]", took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  [{why}; {:.1} s]", took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}

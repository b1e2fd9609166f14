//! One line per acceptance criterion; exits non-zero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use basketweave::analysis::{classify_relations, decompose, Dimension, Relation, RelationKind};
use basketweave::automaton::{detect_period, run, shape_metrics, OCTAGON_RATIO};
use basketweave::coloring::{
    classify, exact_candidates, find_coloring, propagate, propagate_with_margin,
    search_perfect_seeds, Color, ColorSet, SearchBudget, Seed,
};
use basketweave::geometry::{
    four_cell_configuration, four_cell_distances, mount_offsets, phase_shift_permutation,
};
use basketweave::lattice::{neighbors, AdjacencyKind, TileId, Window};
use basketweave::seeds;
use basketweave_cli::commands::{cmd_coordseq, cycle_notation, KindArg};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);

const V: [usize; 43] = [
    0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 2, 2, 3, 2, 2, 4, 2, 8, 3, 10, 2, 12, 2, 16, 3, 18, 2, 20, 2,
    24, 3, 26, 2, 28, 2, 32, 3, 34, 2, 36, 2, 40,
];
const Y: [usize; 43] = [
    1, 3, 4, 4, 6, 4, 6, 8, 10, 10, 12, 10, 15, 11, 19, 16, 19, 21, 17, 21, 19, 24, 19, 29, 17, 29,
    19, 32, 19, 37, 17, 37, 19, 40, 19, 45, 17, 45, 19, 48, 19, 53, 17,
];
const C: [usize; 43] = [
    1, 3, 4, 5, 6, 4, 6, 8, 10, 10, 13, 12, 17, 14, 21, 18, 23, 23, 25, 24, 29, 26, 31, 31, 33, 32,
    37, 34, 39, 39, 41, 40, 45, 42, 47, 47, 49, 48, 53, 50, 55, 55, 57,
];

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(format!("{:.2}s", t.as_secs_f64()))
    } else {
        Err(format!("took {:.2}s, limit {:.0}s", t.as_secs_f64(), limit.as_secs_f64()))
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coordination() -> Outcome {
    let start = Instant::now();
    let full = cmd_coordseq(KindArg::Full, 11);
    let edge = cmd_coordseq(KindArg::Edge, 10);
    let rows = |v: &[usize]| {
        let mut s = String::from("s,count\n");
        for (k, n) in v.iter().enumerate() {
            s.push_str(&format!("{k},{n}\n"));
        }
        s
    };
    check(full == rows(&[1, 7, 15, 24, 32, 40, 48, 56, 64, 72, 80, 88]), || format!("full: {full}"))?;
    check(edge == rows(&[1, 5, 11, 16, 21, 27, 32, 37, 43, 48, 53]), || format!("edge: {edge}"))?;
    within(start, Duration::from_secs(1))
}

fn automaton_sequences() -> Outcome {
    let start = Instant::now();
    let tiles: Vec<TileId> = seeds::perfect().tiles().collect();
    let (seq, _) = run(&tiles, 43).map_err(|e| e.to_string())?;
    for (name, got, want) in [("V", &seq.v, &V), ("Y", &seq.y, &Y), ("C", &seq.c, &C)] {
        if let Some(s) = (0..43).find(|&k| got[k] != want[k]) {
            return Err(format!("{name}({}) = {}, paper {}", s + 1, got[s], want[s]));
        }
    }
    within(start, Duration::from_secs(5))
}

fn periodicity() -> Outcome {
    let tiles: Vec<TileId> = seeds::perfect().tiles().collect();
    let (seq, _) = run(&tiles, 300).map_err(|e| e.to_string())?;
    let c: Vec<i64> = seq.c.iter().map(|&x| x as i64).collect();
    let p = detect_period(&c, 15).ok_or("no period")?;
    check(p.len == 6 && p.values == [-3, 5, 0, 2, -1, 5], || p.to_string())?;
    Ok(p.to_string())
}

fn perfection() -> Outcome {
    let start = Instant::now();
    let schedule = [4, 8, 12, 16, 20];
    let s = seeds::perfect();
    let rep = classify(&s, &schedule).map_err(|e| e.to_string())?;
    check(
        rep.verdict.to_string() == "PerfectWithinRadius(20)" && rep.forced.colored_count() == 2 * 41 * 41,
        || format!("{} with {} tiles", rep.verdict, rep.forced.colored_count()),
    )?;
    let mut verdicts = Vec::new();
    for t in s.tiles() {
        let mut sub = s.clone();
        sub.remove(t);
        let v = classify(&sub, &schedule).map_err(|e| e.to_string())?.verdict;
        check(!v.is_perfect(), || format!("removing {t} leaves {v}"))?;
        verdicts.push(v.to_string());
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("removals give {}; {t}", verdicts.join(", ")))
}

fn lower_bound() -> Outcome {
    let start = Instant::now();
    let out = search_perfect_seeds(4, Window::centered(1), 8, SearchBudget::default())
        .map_err(|e| e.to_string())?;
    let t = within(start, Duration::from_secs(30 * 60))?;
    match out.seeds.first() {
        None => Ok(format!("{} classes, none perfect (bounded evidence); {t}", out.classes)),
        Some(s) => {
            let tiles: Vec<String> = s.iter().map(|(t, c)| format!("{t}={c}")).collect();
            Err(format!(
                "{} of {} classes colour the radius-8 window, e.g. {}",
                out.seeds.len(),
                out.classes,
                tiles.join(" ")
            ))
        }
    }
}

/// Finds 2D components `1, 1', 2, 2'` with the relations of the reference
/// picture.
fn match_picture(d: &basketweave::analysis::CrystalDecomposition, rel: &[Relation]) -> Option<String> {
    let two: Vec<usize> = (0..d.components.len())
        .filter(|&k| d.components[k].dimension == Dimension::Two)
        .collect();
    let has = |kind: RelationKind, a: usize, b: usize| -> Option<Option<usize>> {
        rel.iter()
            .find(|r| r.kind == kind && ((r.a, r.b) == (a, b) || (r.a, r.b) == (b, a)))
            .map(|r| r.via)
    };
    let crystal = |k: usize| d.components[k].crystal;
    for &one in &two {
        for &one_p in &two {
            for &two_c in &two {
                for &two_p in &two {
                    let set: BTreeSet<usize> = [one, one_p, two_c, two_p].into();
                    if set.len() < 4
                        || crystal(one) != crystal(one_p)
                        || crystal(two_c) != crystal(two_p)
                        || crystal(one) == crystal(two_c)
                    {
                        continue;
                    }
                    let (Some(_), Some(_), Some(Some(g1)), Some(Some(g2))) = (
                        has(RelationKind::Adjoined, one_p, two_p),
                        has(RelationKind::SeparatedByInterface, one, two_c),
                        has(RelationKind::GrainBoundary, one, one_p),
                        has(RelationKind::GrainBoundary, two_c, two_p),
                    ) else {
                        continue;
                    };
                    if g1 != g2 {
                        return Some(format!(
                            "1={one} 1'={one_p} 2={two_c} 2'={two_p}, boundaries {g1} and {g2}"
                        ));
                    }
                }
            }
        }
    }
    None
}

fn crystals() -> Outcome {
    let s = seeds::perfect();
    let field = propagate_with_margin(&s, s.window(20));
    let d = decompose(&field).map_err(|e| e.to_string())?;
    check(d.recoloring.patterns.len() == 5, || format!("{} patterns", d.recoloring.patterns.len()))?;
    check(d.components.len() == 7 && d.crystal_count() == 5, || {
        format!("{} components, {} crystals", d.components.len(), d.crystal_count())
    })?;
    let rel = classify_relations(&d);
    match_picture(&d, &rel).ok_or_else(|| {
        let r: Vec<String> = rel.iter().map(|r| r.to_string()).collect();
        format!("relations do not match: {}", r.join("; "))
    })
}

fn octagon() -> Outcome {
    let start = Instant::now();
    let tiles: Vec<TileId> = seeds::perfect().tiles().collect();
    let (_, st) = run(&tiles, 400).map_err(|e| e.to_string())?;
    let m = shape_metrics(&st).map_err(|e| e.to_string())?;
    let est = m.estimate.ok_or("hull is not an octagon")?;
    let err = (est - OCTAGON_RATIO).abs() / OCTAGON_RATIO;
    check(err < 0.02, || format!("estimate {est:.6}, error {:.2}%", 100.0 * err))?;
    let t = within(start, Duration::from_secs(120))?;
    Ok(format!("estimate {est:.6}, error {:.3}%; {t}", 100.0 * err))
}

fn geometry() -> Outcome {
    let (p, q) = mount_offsets();
    check((p - (0.5 - 3f64.sqrt() / 4.0)).abs() < 1e-9 && (q - 0.25).abs() < 1e-9, || {
        format!("offsets ({p}, {q})")
    })?;
    let r = four_cell_distances(&four_cell_configuration()).map_err(|e| e.to_string())?;
    let short = (2.0 - 3f64.sqrt()).sqrt();
    check(
        [(r.ab, short), (r.ac, short), (r.ad, 1.0), (r.ae, 1.0)]
            .iter()
            .all(|(x, y)| (x - y).abs() < 1e-6),
        || format!("distances {} {} {} {}", r.ab, r.ac, r.ad, r.ae),
    )?;
    let cyc = cycle_notation(&phase_shift_permutation());
    check(cyc == "(Y G)", || format!("phase shift {cyc}"))?;
    Ok(format!("p={p:.9} q={q:.9}, phase shift {cyc}"))
}

fn random_seed(rng: &mut ChaCha8Rng, w: Window, n: usize) -> Seed {
    common::window_tiles(w)
        .choose_multiple(rng, n)
        .map(|&t| (t, Color::from_index(rng.gen_range(0..4))))
        .collect()
}

fn properties(bin: &Path) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let t = TileId::new(rng.gen_range(-500..500), rng.gen_range(-500..500), rng.gen_range(0..2));
        let full: BTreeSet<TileId> = neighbors(t, AdjacencyKind::Full).into_iter().collect();
        let edge: BTreeSet<TileId> = neighbors(t, AdjacencyKind::EdgeOnly).into_iter().collect();
        check(full.len() == 7 && edge.len() == 5, || format!("degrees at {t}"))?;
        check(full == common::raster_neighbors(t, false), || format!("full neighbours of {t}"))?;
        check(edge == common::raster_neighbors(t, true), || format!("edge neighbours of {t}"))?;
    }

    let perfect = propagate_with_margin(&seeds::perfect(), Window::centered(6));
    for n in 0..50 {
        let w = Window::centered(1 + n % 4);
        let s: Seed = if n % 2 == 0 {
            common::window_tiles(w)
                .choose_multiple(&mut rng, 4)
                .map(|&t| (t, perfect.get(t).unwrap()))
                .collect()
        } else {
            random_seed(&mut rng, w, 3)
        };
        if let Ok(m) = exact_candidates(&s, w) {
            check(propagate(&s, w).is_subset_of(&m.forced()), || format!("forcing exceeds field for {s:?}"))?;
        }
    }

    for n in 0..30 {
        let w = Window::new((rng.gen_range(-3..4), rng.gen_range(-3..4)), n % 2);
        let n = rng.gen_range(0..4);
        let s = random_seed(&mut rng, w, n);
        let listed = common::list_colorings(&s, w);
        let tiles = common::window_tiles(w);
        match exact_candidates(&s, w) {
            Err(_) => check(listed.is_empty(), || format!("{s:?} wrongly barren"))?,
            Ok(m) => {
                for (k, &t) in tiles.iter().enumerate() {
                    let union: ColorSet = listed.iter().map(|c| c[k]).collect();
                    check(m.get(t) == Some(union), || format!("candidates of {t} for {s:?}"))?;
                }
            }
        }
    }

    for _ in 0..40 {
        let s = random_seed(&mut rng, Window::centered(1), 6);
        let alive: Vec<bool> = (1..=5).map(|r| find_coloring(&s, Window::centered(r)).is_some()).collect();
        check(alive.windows(2).all(|p| p[0] || !p[1]), || format!("barrenness not monotone for {s:?}"))?;
    }

    let reruns = cli_reruns(bin)?;
    Ok(format!("{reruns} CLI invocations byte-identical"))
}

fn cli_reruns(bin: &Path) -> Result<usize, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let seed = dir.path().join("perfect.seed");
    std::fs::write(&seed, basketweave_cli::seedfile::format_seed(&seeds::perfect()))
        .map_err(|e| e.to_string())?;
    let seed = seed.to_str().unwrap();
    let out = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let calls: Vec<Vec<String>> = vec![
        vec!["classify".into(), "--seed".into(), seed.into(), "--schedule".into(), "4,8".into(), "--out".into(), out("c.svg")],
        vec!["grow".into(), "--seed".into(), seed.into(), "--radius".into(), "6".into()],
        vec!["automaton".into(), "--seed".into(), seed.into(), "--ticks".into(), "12".into(), "--frames".into(), out("frames")],
        vec!["coordseq".into(), "--kind".into(), "edge".into(), "--radius".into(), "10".into()],
        vec!["crystals".into(), "--seed".into(), seed.into(), "--radius".into(), "12".into(), "--out".into(), out("x.svg")],
        vec!["search".into(), "--k".into(), "3".into(), "--radius".into(), "4".into()],
        vec!["render".into(), "--view".into(), "candidates".into(), "--seed".into(), seed.into(), "--radius".into(), "4".into(), "--out".into(), out("r.svg")],
        vec!["render".into(), "--view".into(), "patterns".into(), "--seed".into(), seed.into(), "--radius".into(), "10".into(), "--out".into(), out("p.svg")],
        vec!["geometry".into()],
    ];
    let snapshot = || -> Result<Vec<(String, Vec<u8>)>, String> {
        let mut files = Vec::new();
        let mut stack = vec![dir.path().to_path_buf()];
        while let Some(p) = stack.pop() {
            for e in std::fs::read_dir(&p).map_err(|e| e.to_string())? {
                let e = e.map_err(|e| e.to_string())?.path();
                if e.is_dir() {
                    stack.push(e);
                } else {
                    files.push((e.display().to_string(), std::fs::read(&e).map_err(|e| e.to_string())?));
                }
            }
        }
        files.sort();
        Ok(files)
    };
    let mut first = Vec::new();
    for round in 0..2 {
        let mut outputs = Vec::new();
        for args in &calls {
            let o = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
            check(o.status.success(), || format!("{} failed: {}", args[0], String::from_utf8_lossy(&o.stderr)))?;
            outputs.push(o.stdout);
        }
        let files = snapshot()?;
        if round == 0 {
            first = vec![(outputs, files)];
        } else {
            let (o0, f0) = &first[0];
            for (k, (a, b)) in o0.iter().zip(&outputs).enumerate() {
                check(a == b, || format!("stdout of {} differs", calls[k][0]))?;
            }
            check(*f0 == files, || "written files differ".to_string())?;
        }
    }
    Ok(2 * calls.len())
}

fn main() {
    let bin = Path::new(env!("CARGO_BIN_EXE_basketweave"));
    let criteria: Vec<Criterion> = vec![
        ("coordination sequences", Box::new(coordination)),
        ("automaton sequences", Box::new(automaton_sequences)),
        ("periodicity", Box::new(periodicity)),
        ("perfection and minimality", Box::new(perfection)),
        ("no perfect 4-tile seed in a 3x3 patch", Box::new(lower_bound)),
        ("crystal decomposition", Box::new(crystals)),
        ("octagon constant", Box::new(octagon)),
        ("geometry", Box::new(geometry)),
        ("property suites", Box::new(move || properties(bin))),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", n + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

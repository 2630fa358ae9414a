//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits nonzero if any criterion fails or exceeds its time budget.

use std::io::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torq_core::cubical::{boundary_surface, build_complex, EdgeCycle, Voxel, VoxelSolid};
use torq_core::embedding::{q_invariant, q_system, H1Class, MarkedTorusEmbedding, SystemEmbedding};
use torq_core::fixtures::{
    core_of_tube, donut, donut_core, drilled_cube, rectangle, straight_tunnel, trefoil,
    tube_with_framing, verify_tube_oracle, Framing, LatticePath,
};
use torq_core::gf2::{Gf2Matrix, Gf2Vector};
use torq_core::mcg::{decompose_tau_u, q_parity, Generator, MappingClass, MappingClassMod2, Word};
use torq_core::moves::{
    builder_double_longitude_twist, builder_double_meridian_twist, builder_lemma_l2,
    builder_reflect_xy, builder_rotate_pi, builder_swap_ml, q_of, MorseData,
};

const BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn solid(points: &[[i64; 3]]) -> VoxelSolid {
    VoxelSolid::new(points.iter().map(|&p| Voxel::from(p))).unwrap()
}

/// `A x` for `x` given as a bit mask over the columns.
fn apply_mask(a: &Gf2Matrix, mask: u32) -> u64 {
    (0..a.cols())
        .filter(|j| mask >> j & 1 == 1)
        .map(|j| a.column(j).iter().fold(0u64, |acc, &i| acc | 1 << i))
        .fold(0, |acc, col| acc ^ col)
}

fn vector_mask(v: &Gf2Vector) -> u64 {
    v.support().iter().fold(0, |acc, &i| acc | 1 << i)
}

fn gf2_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..500 {
        let rows = rng.gen_range(1..=14);
        let cols = rng.gen_range(1..=12);
        let density = rng.gen_range(0.05..0.7);
        let entries: Vec<(usize, usize)> = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(density))
            .collect();
        let a = Gf2Matrix::from_entries(rows, cols, entries).unwrap();

        let images: Vec<u64> = (0..1u32 << cols).map(|x| apply_mask(&a, x)).collect();
        let mut image = images.clone();
        image.sort_unstable();
        image.dedup();
        let kernel: Vec<u32> = (0..1u32 << cols)
            .filter(|&x| images[x as usize] == 0)
            .collect();

        let rank = a.rank();
        ensure(1usize << rank == image.len(), || {
            format!("trial {trial}: rank {rank}, image size {}", image.len())
        })?;

        let basis = a.kernel_basis();
        ensure(basis.len() == cols - rank, || {
            format!("trial {trial}: kernel basis has {} vectors", basis.len())
        })?;
        let masks: Vec<u32> = basis.iter().map(|v| vector_mask(v) as u32).collect();
        let mut span: Vec<u32> = (0..1u32 << masks.len())
            .map(|s| {
                (0..masks.len())
                    .filter(|k| s >> k & 1 == 1)
                    .fold(0, |acc, k| acc ^ masks[k])
            })
            .collect();
        span.sort_unstable();
        span.dedup();
        ensure(span == kernel, || {
            format!("trial {trial}: kernel basis does not span the kernel")
        })?;

        for _ in 0..8 {
            let b_mask = if rng.gen_bool(0.5) {
                images[rng.gen_range(0..images.len())]
            } else {
                rng.gen_range(0..1u64 << rows)
            };
            let b =
                Gf2Vector::from_support(rows, (0..rows).filter(|i| b_mask >> i & 1 == 1)).unwrap();
            let solvable = image.binary_search(&b_mask).is_ok();
            match a.solve(&b).unwrap() {
                Some(x) => ensure(images[vector_mask(&x) as usize] == b_mask, || {
                    format!("trial {trial}: wrong solution")
                })?,
                None => ensure(!solvable, || format!("trial {trial}: missed a solution"))?,
            }
        }
    }
    Ok(())
}

fn fused_donuts() -> VoxelSolid {
    let mut v = Vec::new();
    for x in 0..5 {
        for y in 0..3 {
            if (x, y) != (1, 1) && (x, y) != (3, 1) {
                v.push([x, y, 0]);
            }
        }
    }
    solid(&v)
}

fn homology_sanity() -> Outcome {
    let cube = solid(&[[0, 0, 0]]);
    let b = build_complex(&cube).unwrap().betti_numbers();
    ensure(b == [1, 0, 0], || format!("voxel b={b:?}"))?;
    let s = boundary_surface(&cube).unwrap();
    let b = s.complex().betti_numbers();
    ensure(b == [1, 0, 1] && s.euler_characteristic() == 2, || {
        format!("voxel surface b={b:?}")
    })?;

    let d = donut(3).unwrap();
    let b = build_complex(d.solid()).unwrap().betti_numbers();
    ensure(b == [1, 1, 0], || format!("donut b={b:?}"))?;
    let b = d.surface().complex().betti_numbers();
    ensure(
        b == [1, 2, 1] && d.surface().euler_characteristic() == 0,
        || format!("donut surface b={b:?}"),
    )?;

    let chi = boundary_surface(&fused_donuts())
        .unwrap()
        .euler_characteristic();
    ensure(chi == -2, || format!("genus-two surface chi={chi}"))
}

fn core_values() -> Outcome {
    let d = donut(3).unwrap();
    let q = q_invariant(&d).unwrap();
    ensure(
        (q.c, q.n, q.q) == (H1Class::Meridian, H1Class::Longitude, false),
        || format!("donut {q:?}"),
    )?;
    let swapped = d.transport_marking(&MappingClass::SWAP).unwrap();
    ensure(q_invariant(&swapped).unwrap().q, || {
        "swapped donut has Q=0".into()
    })?;

    let shifted = translated(&swapped, [10, 0, 0]);
    let system = SystemEmbedding::new(vec![d, shifted]).unwrap();
    let r = q_system(&system).unwrap();
    let xor = r.components.iter().fold(false, |acc, c| acc ^ c.q);
    ensure(r.total && r.total == xor, || format!("system total {r:?}"))
}

fn translated(e: &MarkedTorusEmbedding, by: [i64; 3]) -> MarkedTorusEmbedding {
    MarkedTorusEmbedding::with_margin(
        e.solid().translated(by).unwrap(),
        e.m_cycle().translated(by).unwrap(),
        e.l_cycle().translated(by).unwrap(),
        e.box_margin(),
    )
    .unwrap()
}

fn transported_parity() -> Outcome {
    let fixed = [
        (1, 0, 0, 1),
        (0, 1, 1, 0),
        (1, 2, 0, 1),
        (1, 0, 2, 1),
        (-1, 0, 0, -1),
        (-1, 0, 0, 1),
        (2, 1, 1, 0),
        (3, 2, 4, 3),
        (0, 1, 1, 2),
        (2, 3, 1, 2),
    ];
    let d = donut(3).unwrap();
    let q0 = q_invariant(&d).unwrap().q;
    for (a, b, c, dd) in fixed {
        let m = MappingClass::new(a, b, c, dd).unwrap();
        ensure(m.tau().in_h(), || format!("{m} has tau outside H"))?;
        let q1 = q_invariant(&d.transport_marking(&m).unwrap()).unwrap().q;
        let expected = q_parity(&MappingClass::IDENTITY, &m).unwrap();
        ensure(q0 ^ q1 == expected, || {
            format!("{m}: Q difference {} but parity {}", q0 ^ q1, expected)
        })?;
        ensure(expected == (m.tau() == MappingClassMod2::V), || {
            format!("{m}: parity disagrees with tau")
        })?;
    }
    Ok(())
}

fn crossing_invariance() -> Outcome {
    let unknot =
        q_invariant(&tube_with_framing(&rectangle(4, 3).unwrap(), Framing::Even).unwrap()).unwrap();
    let knotted = q_invariant(&tube_with_framing(&trefoil(), Framing::Even).unwrap()).unwrap();
    ensure(
        (unknot.c, unknot.n, unknot.q) == (knotted.c, knotted.n, knotted.q),
        || format!("unknot {unknot:?} vs trefoil {knotted:?}"),
    )
}

fn drilled_case() -> Outcome {
    let e = drilled_cube(4, &straight_tunnel(4).unwrap()).unwrap();
    let q = q_invariant(&e).unwrap();
    ensure(
        (q.c, q.n, q.q) == (H1Class::Longitude, H1Class::Meridian, true),
        || format!("drilled cube {q:?}"),
    )?;
    let d = q_invariant(&donut(3).unwrap()).unwrap();
    ensure(q.c == d.n && q.n == d.c, || {
        "compact and outer classes are not swapped".into()
    })
}

fn linking_oracle() -> Outcome {
    let mut knots: Vec<(String, LatticePath)> = vec![("trefoil".into(), trefoil())];
    for (w, h) in [(3, 3), (4, 3), (5, 4), (6, 6)] {
        knots.push((format!("rectangle {w}x{h}"), rectangle(w, h).unwrap()));
    }
    for outer in [3, 4, 5] {
        knots.push((format!("donut core {outer}"), donut_core(outer).unwrap()));
    }
    let mut cases = 0;
    for (name, knot) in &knots {
        for framing in [Framing::Lattice, Framing::Even, Framing::Odd] {
            let e = tube_with_framing(knot, framing).unwrap();
            let core =
                core_of_tube(e.solid()).ok_or_else(|| format!("{name}: core not recovered"))?;
            let report = verify_tube_oracle(&e, &core).unwrap();
            ensure(report.checks.len() == 3 && report.agrees(), || {
                format!("{name} {framing:?}:\n{report}")
            })?;
            cases += report.checks.len();
        }
    }
    for outer in [3, 5] {
        let e = donut(outer).unwrap();
        let report = verify_tube_oracle(&e, &core_of_tube(e.solid()).unwrap()).unwrap();
        ensure(report.agrees(), || format!("donut {outer}:\n{report}"))?;
        cases += 3;
    }
    ensure(cases == knots.len() * 9 + 6, || {
        format!("ran {cases} class checks")
    })
}

fn move_calculus() -> Outcome {
    let builders = [
        builder_double_meridian_twist(),
        builder_double_longitude_twist(),
        builder_rotate_pi(),
        builder_reflect_xy(),
        builder_swap_ml(),
    ];
    let got: Vec<u8> = builders.iter().map(|s| u8::from(q_of(s))).collect();
    ensure(got == [0, 0, 0, 0, 1], || {
        format!("builder parities {got:?}")
    })?;

    let mut seen = std::collections::HashSet::new();
    for (slot, chi) in [2i64, 1, 0, 0, -2].into_iter().enumerate() {
        for k in 0..3u32 {
            // n_min - n_saddle + n_max = chi - 1
            let extra = k + 3 * u32::from(slot == 3);
            let n_saddle = extra + if chi < 1 { (1 - chi) as u32 } else { 0 };
            let n_max = if chi >= 1 { (chi - 1) as u32 } else { 0 };
            let n_min = (chi - 1 + n_saddle as i64 - n_max as i64) as u32;
            let morse = MorseData::new(n_min, n_saddle, n_max, chi).map_err(|e| e.to_string())?;
            ensure(seen.insert(morse), || {
                format!("duplicate Morse data {morse:?}")
            })?;
            let q = q_of(&builder_lemma_l2(&morse));
            ensure(q == (chi.rem_euclid(2) == 1), || {
                format!("{morse:?}: q={}", u8::from(q))
            })?;
        }
    }
    Ok(())
}

fn random_word(rng: &mut ChaCha8Rng) -> (Word, MappingClass) {
    let mut word = Word::new();
    let mut product = MappingClass::IDENTITY;
    for _ in 0..rng.gen_range(0..=30) {
        let g = Generator::ALL[rng.gen_range(0..4)];
        let power = match g {
            Generator::MeridianTwist | Generator::LongitudeTwist => {
                rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }
            }
            _ => 1,
        };
        match product.checked_mul(&g.power(power).unwrap()) {
            Some(p) if p.max_abs_entry() <= 1_000_000 => {
                product = p;
                word.push(g, power);
            }
            _ => {}
        }
    }
    (word, product)
}

fn decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..1000 {
        let (word, m) = random_word(&mut rng);
        let direct = word.product().map_err(|e| e.to_string())?;
        ensure(direct == m && m.max_abs_entry() <= 1_000_000, || {
            format!("sample {i}: bad word {word}")
        })?;
        let found = decompose_tau_u(&m).map_err(|e| format!("sample {i}: {m}: {e}"))?;
        let back = found.product().map_err(|e| e.to_string())?;
        ensure(back == m, || {
            format!("sample {i}: {m} decomposed to {found} = {back}")
        })?;
    }
    Ok(())
}

/// A random unimodular matrix built from elementary moves.
fn random_unimodular(rng: &mut ChaCha8Rng) -> MappingClass {
    let moves = [
        MappingClass::new(1, 1, 0, 1).unwrap(),
        MappingClass::new(1, 0, 1, 1).unwrap(),
        MappingClass::new(1, -1, 0, 1).unwrap(),
        MappingClass::new(1, 0, -1, 1).unwrap(),
        MappingClass::SWAP,
        MappingClass::new(-1, 0, 0, 1).unwrap(),
    ];
    let mut m = MappingClass::IDENTITY;
    for _ in 0..rng.gen_range(0..12) {
        m = m * moves[rng.gen_range(0..moves.len())];
    }
    m
}

fn random_in_h(rng: &mut ChaCha8Rng) -> MappingClass {
    loop {
        let m = random_unimodular(rng);
        if m.tau().in_h() {
            return m;
        }
    }
}

fn cocycle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut taus = std::collections::HashSet::new();
    for i in 0..200 {
        let f = random_unimodular(&mut rng);
        let g = random_in_h(&mut rng) * f;
        let h = random_in_h(&mut rng) * g;
        taus.insert(f.tau());
        let (fg, gh, fh) = (q_parity(&f, &g), q_parity(&g, &h), q_parity(&f, &h));
        let (fg, gh, fh) = match (fg, gh, fh) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            other => return Err(format!("triple {i}: parity undefined {other:?}")),
        };
        ensure(fh == fg ^ gh, || format!("triple {i}: {f} {g} {h}"))?;
    }
    ensure(taus.len() == 6, || {
        format!("only {} reductions of F were sampled", taus.len())
    })
}

fn gate(label: &str, result: Result<impl std::fmt::Debug, String>, expected: &str) -> Outcome {
    match result {
        Err(name) if name == expected => Ok(()),
        other => Err(format!("{label}: expected {expected}, got {other:?}")),
    }
}

fn robustness() -> Outcome {
    let d = donut(3).unwrap();
    let (m, l) = (d.m_cycle().clone(), d.l_cycle().clone());
    let name = |r: Result<MarkedTorusEmbedding, torq_core::embedding::EmbeddingError>| {
        r.map_err(|e| e.name().to_string())
            .map(|e| q_invariant(&e).map(|q| q.q))
    };

    let mut pinched: Vec<Voxel> = d.solid().iter().copied().collect();
    pinched.push(Voxel::new(3, 3, 0));
    let pinched = VoxelSolid::new(pinched).unwrap();
    gate(
        "pinched solid",
        name(MarkedTorusEmbedding::new(pinched, m.clone(), l.clone())),
        "PinchedSolid",
    )?;

    let sphere = solid(&[[0, 0, 0], [1, 0, 0]]);
    let sq = EdgeCycle::new(vec![[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]).unwrap();
    let sq2 = EdgeCycle::new(vec![[0, 0, 0], [0, 0, 1], [0, 1, 1], [0, 1, 0]]).unwrap();
    gate(
        "sphere boundary",
        name(MarkedTorusEmbedding::new(sphere, sq.clone(), sq2.clone())),
        "NotATorus",
    )?;
    gate(
        "genus-two boundary",
        name(MarkedTorusEmbedding::new(fused_donuts(), sq, sq2)),
        "NotATorus",
    )?;

    let off = m.translated([0, 0, 5]).unwrap();
    gate(
        "off-surface marking",
        name(MarkedTorusEmbedding::new(d.solid().clone(), off, l.clone())),
        "CycleNotOnSurface",
    )?;

    gate(
        "dependent marking",
        name(MarkedTorusEmbedding::new(
            d.solid().clone(),
            m.clone(),
            m.clone(),
        )),
        "DependentMarking",
    )?;
    let diag = d.realize(H1Class::Diagonal).unwrap();
    let doubled = MarkedTorusEmbedding::new(d.solid().clone(), diag.clone(), diag);
    gate("repeated diagonal", name(doubled), "DependentMarking")?;

    gate(
        "zero box margin",
        name(MarkedTorusEmbedding::with_margin(
            d.solid().clone(),
            m.clone(),
            l.clone(),
            0,
        )),
        "InsufficientBoxMargin",
    )?;
    gate(
        "zero margin on an existing embedding",
        name(d.set_box_margin(0)),
        "InsufficientBoxMargin",
    )?;
    for margin in [1, 2, 4] {
        let q = q_invariant(&d.set_box_margin(margin).unwrap()).unwrap();
        ensure(!q.q, || format!("margin {margin} changed Q"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (
            "gf2 solve/kernel/rank vs exhaustive enumeration",
            gf2_oracle,
        ),
        ("homology sanity", homology_sanity),
        ("donut values and component sum", core_values),
        (
            "transported marking vs mapping-class parity",
            transported_parity,
        ),
        ("crossing-move invariance", crossing_invariance),
        ("drilled cube realizes the swapped case", drilled_case),
        ("linking and meridian-disk oracles", linking_oracle),
        ("move calculus", move_calculus),
        ("generator decomposition", decomposition),
        ("parity cocycle", cocycle),
        ("robustness gates", robustness),
    ];
    let mut out = std::io::stdout().lock();
    let mut failed = 0;
    for (i, (label, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed < BUDGET, || {
                format!(
                    "took {:.1}s, over the {}s budget",
                    elapsed.as_secs_f64(),
                    BUDGET.as_secs()
                )
            })
        });
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(()) => writeln!(out, "criterion {:>2} {label}: PASS ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                writeln!(
                    out,
                    "criterion {:>2} {label}: FAIL ({secs:.2}s) {why}",
                    i + 1
                )
            }
        }
        .unwrap();
    }
    writeln!(
        out,
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    )
    .unwrap();
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

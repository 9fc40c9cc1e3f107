//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line with
//! its measured time; the test fails if any criterion fails or overruns.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use polar_grassmann::bounds::{mt1_distance_bound, mt2_distance};
use polar_grassmann::codec::{LineCodec, ReceivedWord};
use polar_grassmann::distance::{min_distance_exhaustive, random_sweep, rank2_form_scan, DEFAULT_BUDGET};
use polar_grassmann::field::SUPPORTED_ORDERS;
use polar_grassmann::pluecker::{binomial, pluecker_of_rows, tuple_index};
use polar_grassmann::{count_formula, Elem, FieldTable, LinearCode, MatrixGF, QuadraticSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid() -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    for n in 2..=3 {
        for k in 1..=n {
            for q in [2, 3, 4, 5] {
                out.push((n, k, q));
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let cases = grid();
    for &(n, k, q) in &cases {
        let got = QuadraticSpace::new(n, q).unwrap().enumerate_totally_singular(k).unwrap().len();
        let want = count_formula(n, k, q);
        ensure(got as u128 == want, || format!("({n},{k},{q}): enumerated {got}, formula {want}"))?;
    }
    Ok(format!("{} parameter sets", cases.len()))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for (n, k, q) in grid().into_iter().filter(|&(n, k, _)| k < n) {
        let code = LinearCode::build(n, k, q).unwrap();
        let lost = if q % 2 == 0 && k >= 2 { binomial(2 * n + 1, k - 2) } else { 0 };
        let want = binomial(2 * n + 1, k) - lost;
        ensure(code.dimension() == want, || format!("({n},{k},{q}): rank {} want {want}", code.dimension()))?;
        checked += 1;
    }
    for (n, q, want) in [(2, 2, 9), (2, 3, 10), (2, 4, 9), (2, 5, 10), (3, 3, 35), (3, 2, 28)] {
        let code = LinearCode::build(n, n, q).unwrap();
        ensure(code.dimension() == want, || format!("({n},{n},{q}): rank {} want {want}", code.dimension()))?;
        checked += 1;
    }
    Ok(format!("{checked} generator ranks"))
}

fn criterion_3() -> Outcome {
    let mut found = Vec::new();
    for (q, want) in [(2, 4), (3, 18), (5, 100)] {
        let code = LinearCode::build(2, 2, q).unwrap();
        let d = min_distance_exhaustive(&code, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(d == want, || format!("P(2,2,{q}): d = {d}, want {want}"))?;
        found.push(format!("P(2,2,{q})={d}"));
    }
    Ok(found.join(" "))
}

fn criterion_4() -> Outcome {
    let code = LinearCode::build(3, 3, 2).unwrap();
    ensure(code.length() == 135, || format!("N = {}", code.length()))?;
    ensure(code.dimension() == 28, || format!("K = {}", code.dimension()))?;
    let d = min_distance_exhaustive(&code, 1 << 28).map_err(|e| e.to_string())?;
    ensure(d == 32, || format!("d = {d}, want 32"))?;
    Ok("P(3,3,2) N=135 K=28 d=32 within 2^28 steps".into())
}

fn criterion_5() -> Outcome {
    let code = LinearCode::build(3, 2, 3).unwrap();
    let want = mt2_distance(3, 3).unwrap() as u64;
    let w = rank2_form_scan(&code, u64::MAX).map_err(|e| e.to_string())?;
    ensure(w.weight == want, || format!("rank-2 witness weight {} want {want}", w.weight))?;
    ensure(code.weight_of_functional(&w.functional).unwrap() as u64 == want, || "witness re-encode mismatch".into())?;
    let sweep = random_sweep(&code, 100_000, 2024).unwrap();
    ensure(sweep >= want, || format!("sweep found weight {sweep} < {want}"))?;
    Ok(format!("witness weight {} (x{}), sweep min {sweep}", w.weight, w.multiplicity))
}

fn criterion_6() -> Outcome {
    let mut found = Vec::new();
    for (n, k, q) in grid().into_iter().filter(|&(n, k, _)| k < n) {
        let code = LinearCode::build(n, k, q).unwrap();
        let Ok(d) = min_distance_exhaustive(&code, DEFAULT_BUDGET) else {
            continue;
        };
        let b = mt1_distance_bound(n, k, q).unwrap() as u64;
        ensure(d >= b, || format!("P({n},{k},{q}): d = {d} < bound {b}"))?;
        found.push(format!("P({n},{k},{q})={d}>={b}"));
    }
    ensure(found.iter().any(|s| s.starts_with("P(3,2,2)=") && s.ends_with(">=16")), || "P(3,2,2) not covered".into())?;
    Ok(found.join(" "))
}

fn criterion_7() -> Outcome {
    let mut total = 0;
    for (n, q) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)] {
        let codec = LineCodec::new(n, q).unwrap();
        let list = codec.space().enumerate_totally_singular(2).unwrap();
        ensure(codec.length() == list.len() as u64, || format!("({n},{q}): length mismatch"))?;
        for (i, line) in list.points().iter().enumerate() {
            let got = codec.counter().unrank(i as u64).map_err(|e| e.to_string())?;
            ensure(&got == line, || format!("({n},{q}): unrank({i}) differs from the list"))?;
            let back = codec.counter().rank(&got).map_err(|e| e.to_string())?;
            ensure(back == i as u64, || format!("({n},{q}): rank(unrank({i})) = {back}"))?;
        }
        total += list.len();
    }
    Ok(format!("{total} lines over 6 spaces"))
}

fn check_encoding(codec: &LineCodec, code: &LinearCode, msg: &[Elem]) -> Result<(), String> {
    let f = codec.field();
    let word = code.encode(msg).unwrap();
    let local = codec.encode(&codec.message_to_form(msg).unwrap()).unwrap();
    for (i, ((&c, &s), &l)) in word.iter().zip(code.column_scales()).zip(&local).enumerate() {
        ensure(f.mul(c, s) == l, || format!("message {msg:?}: position {i} local {l} generator {c}"))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let codec = LineCodec::new(3, 3).unwrap();
    let code = LinearCode::build(3, 2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let msg: Vec<Elem> = (0..21).map(|_| rng.gen_range(0..3)).collect();
        check_encoding(&codec, &code, &msg)?;
    }
    let codec = LineCodec::new(2, 2).unwrap();
    let code = LinearCode::build(2, 2, 2).unwrap();
    for bits in 0u32..1 << 10 {
        let msg: Vec<Elem> = (0..10).map(|b| ((bits >> b) & 1) as Elem).collect();
        check_encoding(&codec, &code, &msg)?;
    }
    Ok("200 messages on P(3,2,3), all 1024 on P(2,2,2)".into())
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    for (q, seed) in [(3u32, 9u64), (2, 10)] {
        let codec = LineCodec::new(3, q).unwrap();
        let f = codec.field();
        let len = codec.length() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = 0;
        for _ in 0..100 {
            let msg: Vec<Elem> = (0..21).map(|_| rng.gen_range(0..q as Elem)).collect();
            let sent = codec.encode(&codec.message_to_form(&msg).unwrap()).unwrap();
            let mut noisy = sent.clone();
            let pos = rng.gen_range(0..len);
            let delta = rng.gen_range(1..q as Elem);
            noisy[pos] = f.add(noisy[pos], delta);
            let (out, _) = codec.correct_all(&ReceivedWord::new(3, q, noisy).unwrap()).unwrap();
            if out != sent {
                failures += 1;
            }
        }
        ensure(failures == 0, || format!("P(3,2,{q}): {failures} of 100 trials not recovered"))?;
        parts.push(format!("P(3,2,{q}) {} votes/position 100/100", codec.votes_per_position()));
    }
    Ok(parts.join(", "))
}

fn criterion_10() -> Outcome {
    for &q in &SUPPORTED_ORDERS {
        let f = FieldTable::of_order(q).unwrap();
        for a in f.elements() {
            if a != 0 {
                ensure(f.mul(a, f.inv(a)) == 1, || format!("GF({q}): inverse of {a}"))?;
            }
            for b in f.elements() {
                ensure(f.add(a, b) == f.add(b, a), || format!("GF({q}): + not commutative"))?;
                for c in f.elements() {
                    let lhs = f.mul(a, f.add(b, c));
                    ensure(lhs == f.add(f.mul(a, b), f.mul(a, c)), || format!("GF({q}): distributivity"))?;
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for case in 0..1000 {
        let q = SUPPORTED_ORDERS[case % SUPPORTED_ORDERS.len()];
        let f = FieldTable::of_order(q).unwrap();
        let (rows, cols) = (rng.gen_range(1..6), rng.gen_range(1..8));
        let data: Vec<Elem> = (0..rows * cols).map(|_| rng.gen_range(0..q) as Elem).collect();
        let m = MatrixGF::from_vec(f, rows, cols, data).unwrap();
        let r = m.rref().matrix;
        ensure(r.rref().matrix == r, || format!("case {case}: rref not idempotent"))?;
        let t = loop {
            let d: Vec<Elem> = (0..rows * rows).map(|_| rng.gen_range(0..q) as Elem).collect();
            let t = MatrixGF::from_vec(f, rows, rows, d).unwrap();
            if t.rank() == rows {
                break t;
            }
        };
        ensure(t.mul(&m).unwrap().rref().matrix == r, || format!("case {case}: rref depends on the basis"))?;
    }

    let gp = |f: &FieldTable, dim: usize, rows: &[Vec<Elem>]| -> Result<(), String> {
        let p = pluecker_of_rows(f, rows).map_err(|e| e.to_string())?.coords;
        let at = |i: usize, j: usize| p[tuple_index(&[i, j], dim).unwrap()];
        for a in 0..dim {
            for b in a + 1..dim {
                for c in b + 1..dim {
                    for d in c + 1..dim {
                        let v = f.add(
                            f.sub(f.mul(at(a, b), at(c, d)), f.mul(at(a, c), at(b, d))),
                            f.mul(at(a, d), at(b, c)),
                        );
                        ensure(v == 0, || format!("relation fails at {a}{b}{c}{d} for {rows:?}"))?;
                    }
                }
            }
        }
        Ok(())
    };
    for q in [2, 3] {
        let space = QuadraticSpace::new(2, q).unwrap();
        for line in space.enumerate_totally_singular(2).unwrap().points() {
            gp(space.field(), 5, &line.basis().row_vecs())?;
        }
    }
    let f5 = FieldTable::of_order(5).unwrap();
    let mut random_pairs = 0;
    while random_pairs < 500 {
        let rows: Vec<Vec<Elem>> = (0..2).map(|_| (0..7).map(|_| rng.gen_range(0..5)).collect()).collect();
        if MatrixGF::from_rows(f5, &rows).unwrap().rank() == 2 {
            gp(f5, 7, &rows)?;
            random_pairs += 1;
        }
    }

    let codec = LineCodec::new(3, 2).unwrap();
    for i in 0..codec.length() {
        let votes = codec.recovery_sets(i).map_err(|e| e.to_string())?;
        ensure(votes.len() == 3, || format!("position {i}: {} votes", votes.len()))?;
        let mut seen = HashSet::new();
        for v in &votes {
            for j in v.positions {
                ensure(j != i && seen.insert(j), || format!("position {i}: vote sets overlap at {j}"))?;
            }
        }
    }
    Ok("field axioms, 1000 rref cases, Pluecker relations, vote disjointness on P(3,2,2)".into())
}

fn main() {
    type Criterion = (u32, fn() -> Outcome, Duration);
    let minute = Duration::from_secs(60);
    let criteria: [Criterion; 10] = [
        (1, criterion_1, 2 * minute),
        (2, criterion_2, minute),
        (3, criterion_3, 2 * minute),
        (4, criterion_4, 10 * minute),
        (5, criterion_5, 5 * minute),
        (6, criterion_6, 2 * minute),
        (7, criterion_7, 2 * minute),
        (8, criterion_8, 2 * minute),
        (9, criterion_9, minute),
        (10, criterion_10, 2 * minute),
    ];
    let mut failed = Vec::new();
    for (id, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        match result {
            Ok(detail) if took <= limit => println!("criterion {id:>2}: PASS  {detail} [{took:.2?}]"),
            Ok(detail) => {
                println!("criterion {id:>2}: FAIL  over time limit {limit:?}: {detail} [{took:.2?}]");
                failed.push(id);
            }
            Err(why) => {
                println!("criterion {id:>2}: FAIL  {why} [{took:.2?}]");
                failed.push(id);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

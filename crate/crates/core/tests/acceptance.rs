//! Acceptance criteria, one PASS/FAIL line each, with wall-clock bounds.

use std::process::Command;
use std::time::{Duration, Instant};

use cohera_core::algebra::{axiom_suite, extract, extract_member_oracle, AlgebraModel};
use cohera_core::atoms::{atom_separoid_suite, atom_set_algebra_suite};
use cohera_core::desirability::{natural_extension_member, set_member, SetKind};
use cohera_core::embeddings::{
    combine_events_witness, event_hom_suite, saturation_lemma_suite, set_algebra_extraction_suite, EventWitness,
};
use cohera_core::partition::quasi_separoid_suite;
use cohera_core::rational::{int, Rational};
use cohera_core::sampling::Sampler;
use cohera_core::space::anonymous_space;
use cohera_core::{Event, Gamble, Report};
use num_traits::{Signed, Zero};

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_report(r: &Report, extra: &str) -> Outcome {
    let ok = r.failed == 0 && r.is_consistent() && r.attempted > 0;
    let mut detail = format!("attempted={} passed={} failed={} skipped={}", r.attempted, r.passed, r.failed, r.skipped);
    if !extra.is_empty() {
        detail.push_str(&format!(" {extra}"));
    }
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!(" first-failure={}:{}", f.law, f.inputs));
    }
    Outcome { ok, detail }
}

fn criterion(id: u32, name: &str, bound: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = elapsed < bound;
    let ok = out.ok && in_time;
    println!(
        "{} [{id}] {name}: {} ({:.2?} < {:?}{})",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        elapsed,
        bound,
        if in_time { "" } else { ", TIME BOUND EXCEEDED" },
    );
    ok
}

fn separoid() -> Outcome {
    match quasi_separoid_suite(4) {
        Ok(r) => {
            let exhaustive = r.notes.iter().any(|n| n.contains("15 partitions, 3375 triples"));
            let mut out = from_report(&r, "");
            out.ok &= exhaustive;
            out
        }
        Err(e) => Outcome { ok: false, detail: e.to_string() },
    }
}

fn saturation() -> Outcome {
    match saturation_lemma_suite(4) {
        Ok(r) => {
            let exhaustive = r.notes.iter().any(|n| n.contains("15 partitions × 256 pairs × 6 laws"));
            let mut out = from_report(&r, "");
            out.ok &= exhaustive;
            out
        }
        Err(e) => Outcome { ok: false, detail: e.to_string() },
    }
}

fn set_extraction() -> Outcome {
    match set_algebra_extraction_suite(4) {
        Ok(r) => from_report(&r, ""),
        Err(e) => Outcome { ok: false, detail: e.to_string() },
    }
}

fn axioms() -> Outcome {
    let mut total = Report::new("axioms");
    let mut models = 0;
    for i in 0..20u64 {
        let n = 3 + (i as usize % 3);
        let model = match AlgebraModel::random(n, 3, 1000 + i) {
            Ok(m) => m,
            Err(e) => return Outcome { ok: false, detail: e.to_string() },
        };
        if model.lattice().len() != cohera_core::Partition::all(n).len() {
            return Outcome { ok: false, detail: format!("model {i}: lattice is not the full partition lattice") };
        }
        total.merge(axiom_suite(&model, 50, 1000 + i));
        models += 1;
    }
    from_report(&total, &format!("models={models}"))
}

fn event_hom() -> Outcome {
    match event_hom_suite(4) {
        Ok(r) => from_report(&r, ""),
        Err(e) => Outcome { ok: false, detail: e.to_string() },
    }
}

/// `f ∈ D_S` straight from the definition: `f ∈ L⁺` or `inf_S f > 0`.
fn in_event_set(s: &Event, f: &Gamble) -> bool {
    f.is_nonneg_nonzero() || (!s.is_empty() && s.iter().all(|w| f.value(w).is_positive()))
}

fn witnesses() -> Outcome {
    let mut sampler = Sampler::new(6);
    let (mut splits, mut disjoint, mut bad) = (0, 0, Vec::new());
    while splits < 500 || disjoint < 100 {
        let n = 2 + sampler.index(4);
        let space = anonymous_space(n).unwrap();
        let s = sampler.nonempty_event(&space);
        let t = sampler.nonempty_event(&space);
        let st = s.intersect(&t).unwrap();
        if st.is_empty() {
            if disjoint >= 100 {
                continue;
            }
            disjoint += 1;
            match combine_events_witness(&s, &t, &sampler.nonzero_gamble(&space)) {
                Ok(EventWitness::Incoherence { f_tilde, g_tilde }) => {
                    let sums_to_zero = f_tilde.add(&g_tilde).unwrap().is_zero();
                    if !(sums_to_zero && in_event_set(&s, &f_tilde) && in_event_set(&t, &g_tilde)) {
                        bad.push(format!("disjoint S={s:?} T={t:?}"));
                    }
                }
                other => bad.push(format!("disjoint S={s:?} T={t:?}: {other:?}")),
            }
            continue;
        }
        if splits >= 500 {
            continue;
        }
        splits += 1;
        let f = if sampler.index(5) == 0 {
            sampler.nonneg_nonzero(&space)
        } else {
            let lifted: Vec<i64> = (0..n)
                .map(|w| if st.contains(w) { sampler.int(1, 3) } else { sampler.int(-3, 3) })
                .collect();
            Gamble::from_ints(&space, &lifted).unwrap()
        };
        assert!(in_event_set(&st, &f));
        match combine_events_witness(&s, &t, &f) {
            Ok(EventWitness::Split { f1, f2 }) => {
                if !(f1.add(&f2).unwrap() == f && in_event_set(&s, &f1) && in_event_set(&t, &f2)) {
                    bad.push(format!("split S={s:?} T={t:?} f={f:?}"));
                }
            }
            other => bad.push(format!("split S={s:?} T={t:?} f={f:?}: {other:?}")),
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("splits={splits} disjoint={disjoint} invalid={}{}", bad.len(), bad.first().map(|b| format!(" first={b}")).unwrap_or_default()),
    }
}

fn extraction_oracle() -> Outcome {
    let (mut agree, mut disagree, mut members, mut first) = (0, 0, 0, None);
    for m in 0..10u64 {
        let n = 3 + (m as usize % 3);
        let model = AlgebraModel::random(n, 3, 2000 + m).unwrap();
        let pool: Vec<_> = model
            .sets()
            .iter()
            .filter(|(_, d)| matches!(d.kind(), SetKind::Assertions(_) | SetKind::Unit))
            .map(|(_, d)| d.clone())
            .collect();
        let mut sampler = Sampler::new(2000 + m);
        let lattice = model.lattice();
        for _ in 0..200 {
            let d = &pool[sampler.index(pool.len())];
            let x = lattice.partition(sampler.index(lattice.len()));
            let space = model.space();
            let f = if sampler.coin() {
                sampler.nonzero_gamble(space)
            } else {
                // x-measurable candidates make membership a real question.
                let vals: Vec<i64> = (0..x.n_blocks()).map(|_| sampler.int(-3, 3)).collect();
                let g: Vec<i64> = (0..n).map(|w| vals[x.block_of(w)]).collect();
                if g.iter().all(|&v| v == 0) {
                    sampler.nonzero_gamble(space)
                } else {
                    Gamble::from_ints(space, &g).unwrap()
                }
            };
            let dd = extract(d, x).and_then(|e| set_member(&e, &f));
            let lp = extract_member_oracle(d, x, &f);
            match (dd, lp) {
                (Ok(a), Ok(b)) if a == b => {
                    agree += 1;
                    members += a as usize;
                }
                other => {
                    disagree += 1;
                    first.get_or_insert_with(|| format!("D={} x={x:?} f={f:?}: {other:?}", d.describe()));
                }
            }
        }
    }
    Outcome {
        ok: disagree == 0 && agree == 2000,
        detail: format!(
            "agree={agree} disagree={disagree} members={members}{}",
            first.map(|f| format!(" first={f}")).unwrap_or_default()
        ),
    }
}

fn atoms() -> Outcome {
    let sep = match atom_separoid_suite(4) {
        Ok(r) => r,
        Err(e) => return Outcome { ok: false, detail: e.to_string() },
    };
    let alg = match atom_set_algebra_suite(4, 6) {
        Ok(r) => r,
        Err(e) => return Outcome { ok: false, detail: e.to_string() },
    };
    let mut explored: Vec<String> = Vec::new();
    for r in [&sep, &alg] {
        for (law, e) in &r.exploratory {
            explored.push(format!("{law}={}/{}", e.counterexamples, e.checked));
        }
    }
    let mut total = sep.clone();
    total.merge(alg);
    from_report(&total, &format!("exploratory[{}]", explored.join(" ")))
}

/// Solves `A λ = b` by Gaussian elimination when the columns of `A` are
/// linearly independent; `None` if dependent or inconsistent.
fn solve_independent(columns: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = b.len();
    let k = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..k {
        let p = (pivot_row..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, p);
        let pv = m[pivot_row][col].clone();
        for v in m[pivot_row][col..].iter_mut() {
            *v = &*v / &pv;
        }
        let pivot = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *v = &*v - &(&factor * p);
                }
            }
        }
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

/// `f ∈ cone(gens)` by enumerating every linearly independent generator subset.
fn basis_oracle(gens: &[Vec<Rational>], f: &[Rational]) -> bool {
    (0u32..1 << gens.len()).any(|mask| {
        let cols: Vec<Vec<Rational>> = (0..gens.len()).filter(|i| mask >> i & 1 == 1).map(|i| gens[i].clone()).collect();
        if cols.len() > f.len() {
            return false;
        }
        solve_independent(&cols, f).is_some_and(|l| l.iter().all(|v| !v.is_negative()))
    })
}

fn natural_extension_oracle() -> Outcome {
    let mut sampler = Sampler::new(9);
    let (mut agree, mut members, mut first) = (0, 0, None);
    let mut queries = 0;
    while queries < 500 {
        let n = 1 + sampler.index(3);
        let space = anonymous_space(n).unwrap();
        let k: Vec<Gamble> = (0..sampler.index(4)).map(|_| sampler.gamble(&space)).collect();
        let f = sampler.gamble(&space);
        if f.is_zero() {
            continue;
        }
        queries += 1;
        let mut gens: Vec<Vec<Rational>> = k.iter().map(|g| g.values().to_vec()).collect();
        for w in 0..n {
            gens.push((0..n).map(|v| if v == w { int(1) } else { int(0) }).collect());
        }
        let oracle = basis_oracle(&gens, f.values());
        match natural_extension_member(&k, &f) {
            Ok(got) if got == oracle => {
                agree += 1;
                members += got as usize;
            }
            other => {
                first.get_or_insert_with(|| format!("K={k:?} f={f:?}: {other:?} vs {oracle}"));
            }
        }
    }
    Outcome {
        ok: agree == 500,
        detail: format!(
            "agree={agree}/500 members={members}{}",
            first.map(|f| format!(" first={f}")).unwrap_or_default()
        ),
    }
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cohera"))
            .args(["verify", "--suites", "all", "--size-limit", "3", "--seed", "7"])
            .output()
            .expect("cohera runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout;
    let exits = (a.status.code(), b.status.code());
    let zero_failures = serde_json::from_slice::<serde_json::Value>(&a.stdout)
        .ok()
        .and_then(|v| v["asserted_failures"].as_u64())
        == Some(0);
    Outcome {
        ok: same && exits == (Some(0), Some(0)) && zero_failures && !a.stdout.is_empty(),
        detail: format!("identical={same} exits={exits:?} bytes={} asserted_failures_zero={zero_failures}", a.stdout.len()),
    }
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "quasi-separoid laws, |Ω|<=4", secs(10), separoid),
        criterion(2, "saturation lemma, |Ω|<=4", secs(10), saturation),
        criterion(3, "set-algebra extraction theorem, |Ω|<=4", secs(30), set_extraction),
        criterion(4, "information-algebra axioms, 20 random models", secs(120), axioms),
        criterion(5, "event embedding, |Ω|<=4", secs(60), event_hom),
        criterion(6, "constructive witnesses, 500 splits + 100 disjoint", secs(30), witnesses),
        criterion(7, "extraction double description vs LP, 10x200", secs(120), extraction_oracle),
        criterion(8, "atom suites, |Ω|<=4, pool of 6", secs(60), atoms),
        criterion(9, "natural extension vs basis enumeration, 500 queries", secs(60), natural_extension_oracle),
        criterion(10, "verify determinism", secs(120), determinism),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}

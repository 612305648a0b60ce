//! Acceptance criteria. Prints one line per criterion and exits nonzero when
//! any criterion deviates from its recorded expectation.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use collapse_lab::club::{block_decode, block_encode, derive_club, recover_from_club};
use collapse_lab::collapse::build_col_dense;
use collapse_lab::factorization::{ComposedProjection, Embedding, Factorization, TripleMap};
use collapse_lab::poset::{
    check_complete_embedding, check_dense_embedding, check_projection, generic_filters,
    image_generic, FinitePoset, OrderMap, Outcome, Verification,
};
use collapse_lab::suite::codec_sweep;
use collapse_lab::term::{
    build_term_poset, check_laver_projection, name_index, LaverTermEmbedding,
};
use common::*;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
        }
    }
}

/// Criteria known not to hold on the finite frames; see the README.
const EXPECTED_FAILURES: [u32; 2] = [3, 4];

fn outcome_text(o: Option<&Outcome>) -> String {
    match o {
        Some(Outcome::Pass) => "pass".into(),
        Some(Outcome::Fail(ce)) => format!("fail at {ce:?}"),
        Some(Outcome::Skip(why)) => format!("skip ({why})"),
        None => "missing".into(),
    }
}

fn summary(v: &Verification) -> String {
    v.clauses
        .iter()
        .map(|c| format!("{}={}", c.name, outcome_text(Some(&c.outcome))))
        .collect::<Vec<_>>()
        .join(" ")
}

fn club_roundtrip() -> Verdict {
    let mut conditions = 0;
    let mut pairs = 0;
    for name in ["f1", "f2"] {
        let col = build_col_dense(&frame(name)).unwrap();
        let els = col.elements();
        for p in els {
            let mut expect = vec![0];
            for v in p.values() {
                expect.push(expect.last().unwrap() + 1 + v);
            }
            let c = derive_club(p);
            if c.points() != expect.as_slice() || recover_from_club(c.points()).as_ref() != Ok(p) {
                return Verdict::new(false, format!("{name}: roundtrip fails at {p}"));
            }
            conditions += 1;
        }
        for p in els {
            for q in els.iter().filter(|q| p.values().starts_with(q.values())) {
                if !derive_club(p).points().starts_with(derive_club(q).points()) {
                    return Verdict::new(false, format!("{name}: C_{q} not initial in C_{p}"));
                }
                pairs += 1;
            }
        }
    }
    Verdict::new(
        true,
        format!("{conditions} conditions, {pairs} ordered pairs on F1 and F2"),
    )
}

fn codec_bijectivity() -> Verdict {
    let sweep = codec_sweep(4096);
    let mut functions = 0u64;
    for &(a, len) in &sweep {
        let mut f = vec![0usize; len];
        let mut i = 0usize;
        loop {
            if block_encode(&f, 0..len, a) != Ok(i) || block_decode(i, 0..len, a).as_ref() != Ok(&f)
            {
                return Verdict::new(false, format!("a={a} len={len} index {i}"));
            }
            functions += 1;
            i += 1;
            let Some(k) = (0..len).rev().find(|&k| f[k] + 1 < a) else {
                break;
            };
            f[k] += 1;
            f[k + 1..].iter_mut().for_each(|x| *x = 0);
        }
    }
    Verdict::new(
        true,
        format!("{} blocks, {functions} functions", sweep.len()),
    )
}

fn factorization_suite() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["f1", "f2"] {
        let fac = Factorization::new(&frame(name)).unwrap();
        let d = &fac.domain;
        let v = check_dense_embedding(&fac.pi_map());
        let mut two_sided = true;
        for r1 in 0..d.len() {
            for r0 in 0..d.len() {
                let (p1, s1) = fac.target.element(fac.pi[r1]);
                let (p0, s0) = fac.target.element(fac.pi[r0]);
                let image = p1.values().starts_with(p0.values()) && s1.extends(s0);
                two_sided &= d.leq(r1, r0) == image;
            }
        }
        let roundtrip = fac.inverse_roundtrip();
        let injective = v.clause("injective") == Some(&Outcome::Pass);
        let dense = v.clause("dense_range") == Some(&Outcome::Pass);
        ok &= injective && two_sided && dense && roundtrip.is_pass();
        parts.push(format!(
            "{name}: |D|={} injective={} order_iso={} range_dense={} inverse={} coupled_density={}",
            d.len(),
            outcome_text(v.clause("injective")),
            if two_sided { "pass" } else { "fail" },
            outcome_text(v.clause("dense_range")),
            outcome_text(Some(&roundtrip)),
            outcome_text(Some(&fac.coupled_density())),
        ));
    }
    Verdict::new(ok, parts.join("; "))
}

fn triple_map_suite() -> Verdict {
    let c = TripleMap::new(&frame("f1-lower")).unwrap();
    let v = check_dense_embedding(&c.order_map());
    let detail = format!(
        "|D'|={} |target|={} {}",
        c.source.len(),
        c.target.len(),
        summary(&v)
    );
    Verdict::new(v.passed(), detail)
}

fn laver_projection_suite() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["f1", "smallest", "f1-lower"] {
        let t = ComposedProjection::new(&frame(name), 4096).unwrap();
        let g = generic_filters(&t.lower).len();
        let v = check_laver_projection(&t.lower, &t.upper, 4096).unwrap();
        ok &= v.passed();
        parts.push(format!(
            "{name} ({g} generics): {}",
            if v.passed() { "pass" } else { "fail" }
        ));
    }
    Verdict::new(ok, parts.join("; "))
}

fn term_embedding_suite() -> Verdict {
    let t = ComposedProjection::new(&frame("smallest"), 4096).unwrap();
    let emb = LaverTermEmbedding::new(&t.lower, &t.upper, t.upper_alphabet.clone());
    let term = build_term_poset(&t.lower, &t.upper, 4096).unwrap();
    let map = emb.embedding_map(&t.names, &term).unwrap();
    let v = check_dense_embedding(&OrderMap::new(&t.names, &term, map));
    let witnessed = (0..term.len())
        .filter(|&i| {
            let q = emb.term_reduce(term.element(i)).unwrap();
            let e = name_index(&emb.term_embed(&q).unwrap(), t.upper.len()).unwrap();
            term.leq(e, i)
        })
        .count();
    let ok = v.passed() && witnessed == term.len();
    let detail = format!(
        "{} generics, {} names, reduce witnesses {witnessed}/{}; {}",
        emb.generic_count(),
        term.len(),
        term.len(),
        summary(&v)
    );
    Verdict::new(ok, detail)
}

fn theorem_suite() -> Verdict {
    let t = ComposedProjection::new(&frame("smallest"), 4096).unwrap();
    let m = t.order_map();
    let v = check_projection(&m);
    if !v.passed() {
        return Verdict::new(false, summary(&v));
    }
    let images: Vec<_> = generic_filters(&t.source)
        .iter()
        .map(|h| image_generic(&m, h))
        .collect::<Result<_, _>>()
        .unwrap_or_default();
    let iteration_generics = t.iteration_generics();
    let all_hit = iteration_generics.iter().all(|k| images.contains(k));
    let quotients: Vec<Outcome> = iteration_generics
        .iter()
        .map(|k| t.check_quotient_equivalence(k, 64).unwrap())
        .collect();
    let equivalent = quotients.iter().filter(|o| o.is_pass()).count();
    let ok = !images.is_empty() && all_hit && equivalent == quotients.len();
    let detail = format!(
        "|D'|={} |P*Q|={} projection=pass, {} source generics map to generics, every iteration generic hit={all_hit}, quotient equivalence {equivalent}/{}",
        t.source.len(),
        t.iteration.poset.len(),
        images.len(),
        quotients.len()
    );
    Verdict::new(ok, detail)
}

/// Passes unmutated, fails with a nonempty counterexample after the mutation.
fn sensitive(label: &str, before: &Verification, after: &Verification) -> (bool, String) {
    let caught = after.counterexample().filter(|(_, ce)| !ce.is_empty());
    let ok = before.passed() && caught.is_some();
    let text = match caught {
        Some((clause, ce)) => format!("{label}: {clause} fails at {ce:?}"),
        None => format!("{label}: not detected"),
    };
    (ok, text)
}

fn mutation_sensitivity() -> Verdict {
    let t = ComposedProjection::new(&frame("smallest"), 4096).unwrap();
    let wrong =
        ComposedProjection::with_embedding(&frame("smallest"), 4096, Embedding::Collapsed).unwrap();
    let projection = sensitive(
        "projection (every name index sent to 0)",
        &check_projection(&t.order_map()),
        &check_projection(&wrong.order_map()),
    );

    let emb = LaverTermEmbedding::new(&t.lower, &t.upper, t.upper_alphabet.clone());
    let term = build_term_poset(&t.lower, &t.upper, 4096).unwrap();
    let map = emb.embedding_map(&t.names, &term).unwrap();
    let good = OrderMap::new(&t.names, &term, map.clone());
    let mut bad_map = map;
    let victim = t.names.minimal_elements()[0];
    bad_map[victim] = term.top();
    let dense = sensitive(
        "dense embedding (a minimal condition sent to the top name)",
        &check_dense_embedding(&good),
        &check_dense_embedding(&good.with_map(bad_map)),
    );

    let fac = Factorization::new(&frame("f1")).unwrap();
    let inc = fac.inclusion_map();
    let mut swapped = inc.map.clone();
    let x = fac.domain.minimal_elements()[0];
    let y = fac.domain.top();
    swapped.swap(x, y);
    let complete = sensitive(
        "complete embedding (top and a minimal condition swapped)",
        &check_complete_embedding(&inc),
        &check_complete_embedding(&inc.with_map(swapped)),
    );
    let all = [projection, dense, complete];
    Verdict::new(
        all.iter().all(|(ok, _)| *ok),
        all.map(|(_, s)| s).join("; "),
    )
}

fn oracle_cross_validation() -> Verdict {
    let posets: Vec<(String, FinitePoset<()>)> = suite_posets(12);
    for (label, p) in &posets {
        let census = collapse_lab::poset::antichain_census(p, true, usize::MAX).unwrap();
        let naive = naive_antichains(p);
        if census.max_size != naive.max_size || census.list.as_ref() != Some(&naive.maximal) {
            return Verdict::new(false, format!("census disagrees on {label}"));
        }
        let mut gens: Vec<Vec<usize>> = generic_filters(p)
            .iter()
            .map(|g| g.members.iter().collect())
            .collect();
        gens.sort();
        let naive_gens: Vec<Vec<usize>> = naive_generics(p)
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        if gens != naive_gens {
            return Verdict::new(false, format!("generics disagree on {label}"));
        }
        let sep = collapse_lab::poset::separative_quotient(p);
        let naive = naive_separative(p);
        let n = p.len();
        let same = sep.poset.len() == naive.keys.len()
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    sep.poset.leq(sep.class_of[a], sep.class_of[b])
                        == naive.leq(naive.class_of[a], naive.class_of[b])
                })
            });
        if !same {
            return Verdict::new(false, format!("separative quotient disagrees on {label}"));
        }
    }
    Verdict::new(
        true,
        format!("{} posets of at most 12 elements", posets.len()),
    )
}

fn determinism() -> Verdict {
    let path = frame_path("f1");
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_collapse-lab"))
            .args(["run", "--frame"])
            .arg(&path)
            .args(["--suite", "all", "--format", "lines", "--workers", workers])
            .output()
            .unwrap()
            .stdout
    };
    let outputs = [run("1"), run("1"), run("4"), run("0")];
    let same = outputs.windows(2).all(|w| w[0] == w[1]);
    let lines = outputs[0].iter().filter(|&&b| b == b'\n').count();
    Verdict::new(
        same && lines > 0,
        format!("4 runs (workers 1, 1, 4, all cores), {lines} lines each, identical={same}"),
    )
}

type Criterion = (u32, &'static str, Duration, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            1,
            "club roundtrip and initial segments",
            Duration::from_secs(1),
            club_roundtrip,
        ),
        (
            2,
            "block codec bijectivity",
            Duration::from_secs(5),
            codec_bijectivity,
        ),
        (
            3,
            "block factorization on F1 and F2",
            Duration::from_secs(10),
            factorization_suite,
        ),
        (
            4,
            "triple map dense embedding on F1 with a lower stage",
            Duration::from_secs(30),
            triple_map_suite,
        ),
        (
            5,
            "identity projection onto the iteration",
            Duration::from_secs(60),
            laver_projection_suite,
        ),
        (
            6,
            "term embedding dense with reduce witness",
            Duration::from_secs(60),
            term_embedding_suite,
        ),
        (
            7,
            "composed projection and quotient equivalence",
            Duration::from_secs(120),
            theorem_suite,
        ),
        (
            8,
            "mutation sensitivity of the three checkers",
            Duration::from_secs(60),
            mutation_sensitivity,
        ),
        (
            9,
            "oracle cross-validation",
            Duration::from_secs(60),
            oracle_cross_validation,
        ),
        (
            10,
            "deterministic reports across worker counts",
            Duration::from_secs(60),
            determinism,
        ),
    ];
    let mut deviations = Vec::new();
    for (n, title, budget, run) in criteria {
        let start = Instant::now();
        let mut v = run();
        let elapsed = start.elapsed();
        if elapsed > budget {
            v.pass = false;
            v.detail.push_str(&format!("; over budget {budget:?}"));
        }
        let word = if v.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {n:>2} {word} {title} [{elapsed:.2?}]: {}",
            v.detail
        );
        if v.pass == EXPECTED_FAILURES.contains(&n) {
            deviations.push(n);
        }
    }
    if deviations.is_empty() {
        println!("acceptance: all criteria match expectations (expected failures: {EXPECTED_FAILURES:?})");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {deviations:?}");
        ExitCode::FAILURE
    }
}

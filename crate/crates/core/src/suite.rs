//! Checker suites over one frame and their reports.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::club::{block_decode, block_encode, block_space, derive_club, recover_from_club};
use crate::collapse::{build_col_dense, build_laver, build_laver_shape, LaverCondition};
use crate::error::{Error, Result};
use crate::factorization::{
    densify, frame_upper_alphabet, upper_shape, ComposedProjection, Embedding, Factorization,
    TripleMap,
};
use crate::frame::CardinalFrame;
use crate::poset::{
    antichain_census, check_dense_embedding, check_projection, generic_filters, image_generic,
    FinitePoset, OrderMap, Outcome, Verification, DEFAULT_CENSUS_CAP, DEFAULT_ISO_CAP,
};
use crate::term::{
    build_term_poset, check_laver_projection, name_index, LaverTermEmbedding, DEFAULT_TERM_CAP,
};

/// Largest block space swept by the codec suite.
pub const CODEC_SWEEP_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Suite {
    Club,
    Codec,
    Factorize,
    Corollary,
    Term,
    LaverProjection,
    ComposedProjection,
    Quotient,
    Census,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Club,
        Suite::Codec,
        Suite::Factorize,
        Suite::Corollary,
        Suite::Term,
        Suite::LaverProjection,
        Suite::ComposedProjection,
        Suite::Quotient,
        Suite::Census,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Club => "club",
            Suite::Codec => "codec",
            Suite::Factorize => "factorize",
            Suite::Corollary => "corollary",
            Suite::Term => "term",
            Suite::LaverProjection => "laver-projection",
            Suite::ComposedProjection => "theorem-pi",
            Suite::Quotient => "quotient",
            Suite::Census => "census",
            Suite::All => "all",
        }
    }

    pub fn header(self) -> &'static str {
        match self {
            Suite::Club => "club codes: C(0)=0, C(i+1)=C(i)+1+p(i) and its inverse",
            Suite::Codec => "block codec: mixed-radix enumeration of functions on a block",
            Suite::Factorize => {
                "block factorization of the upper Laver collapse over the club of the Col coordinate"
            }
            Suite::Corollary => "triple map (lower part, Col coordinate, upper part) as a dense embedding",
            Suite::Term => "term embedding of the name-valued Laver collapse into the term poset",
            Suite::LaverProjection => "identity from the product with the term poset onto the iteration",
            Suite::ComposedProjection => "composed projection from the full collapse onto the two-step iteration",
            Suite::Quotient => "quotient by a generic of the iteration against Q x Col",
            Suite::Census => "maximal antichain census of the building-block posets",
            Suite::All => "every suite",
        }
    }

    pub fn expand(self) -> Vec<Suite> {
        if self == Suite::All {
            Suite::EACH.to_vec()
        } else {
            vec![self]
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub term: usize,
    pub iso: usize,
    pub census: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            term: DEFAULT_TERM_CAP,
            iso: DEFAULT_ISO_CAP,
            census: DEFAULT_CENSUS_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub property: String,
    pub outcome: Outcome,
    /// Shown in text reports only.
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn sorted(suite: Suite, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.property.cmp(&b.property));
        SuiteReport { suite, checks }
    }
}

fn check(property: impl Into<String>, outcome: Outcome) -> Check {
    Check {
        property: property.into(),
        outcome,
        note: None,
    }
}

fn from_verification(prefix: &str, v: &Verification) -> Vec<Check> {
    v.clauses
        .iter()
        .map(|c| {
            let name = if prefix.is_empty() {
                c.name.to_string()
            } else {
                format!("{prefix}.{}", c.name)
            };
            check(name, c.outcome.clone())
        })
        .collect()
}

fn first_failure(n: usize, bad: impl Fn(usize) -> Option<Vec<usize>> + Sync + Send) -> Outcome {
    (0..n)
        .into_par_iter()
        .find_map_first(bad)
        .map_or(Outcome::Pass, Outcome::Fail)
}

/// Runs the suites selected by `suite`, in fixed order.
pub fn run_suite(frame: &CardinalFrame, suite: Suite, caps: Caps) -> Vec<SuiteReport> {
    suite
        .expand()
        .into_par_iter()
        .map(|s| {
            let checks = run_one(frame, s, caps).unwrap_or_else(|e| vec![build_failure(e)]);
            SuiteReport::sorted(s, checks)
        })
        .collect()
}

fn build_failure(e: Error) -> Check {
    match e {
        Error::TermPosetTooLarge { .. }
        | Error::CapExceeded { .. }
        | Error::CensusCapExceeded { .. } => check("build", Outcome::Skip(e.to_string())),
        other => Check {
            note: Some(other.to_string()),
            ..check("build", Outcome::Fail(Vec::new()))
        },
    }
}

fn run_one(frame: &CardinalFrame, suite: Suite, caps: Caps) -> Result<Vec<Check>> {
    match suite {
        Suite::Club => club_suite(frame),
        Suite::Codec => codec_suite(frame),
        Suite::Factorize => factorize_suite(frame),
        Suite::Corollary => triple_map_suite(frame),
        Suite::Term => term_suite(frame, caps),
        Suite::LaverProjection => laver_projection_suite(frame, caps),
        Suite::ComposedProjection => composed_projection_suite(frame, caps),
        Suite::Quotient => quotient_suite(frame, caps),
        Suite::Census => census_suite(frame, caps),
        Suite::All => unreachable!("expanded before dispatch"),
    }
}

fn club_suite(frame: &CardinalFrame) -> Result<Vec<Check>> {
    let col = build_col_dense(frame)?;
    let els = col.elements();
    let roundtrip = first_failure(els.len(), |i| {
        let back = recover_from_club(derive_club(&els[i]).points());
        (back.as_ref() != Ok(&els[i])).then(|| vec![i])
    });
    let initial_segment = first_failure(els.len(), |i| {
        let ci = derive_club(&els[i]);
        col.above(i)
            .iter()
            .find(|&j| !derive_club(&els[j]).is_initial_segment_of(&ci))
            .map(|j| vec![i, j])
    });
    Ok(vec![
        check("roundtrip", roundtrip),
        check("initial_segment", initial_segment),
    ])
}

/// `(alphabet, length)` pairs with at most `limit` functions, lengths capped at 12.
pub fn codec_sweep(limit: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=limit {
        for len in 0..=12 {
            match block_space(len, a) {
                Ok(n) if n <= limit => out.push((a, len)),
                _ => break,
            }
        }
    }
    out
}

fn codec_roundtrip(a: usize, len: usize) -> Option<Vec<usize>> {
    let n = block_space(len, a).ok()?;
    (0..n).find_map(|i| {
        let f = block_decode(i, 3..3 + len, a).ok()?;
        (block_encode(&f, 3..3 + len, a).ok() != Some(i)).then(|| vec![a, len, i])
    })
}

fn codec_suite(frame: &CardinalFrame) -> Result<Vec<Check>> {
    let sweep = codec_sweep(CODEC_SWEEP_LIMIT);
    let bijective = first_failure(sweep.len(), |k| codec_roundtrip(sweep[k].0, sweep[k].1));
    let mut alphabets: Vec<usize> = frame.alphabet().values().copied().collect();
    alphabets.push(frame.col_alphabet());
    alphabets.sort_unstable();
    alphabets.dedup();
    let blocks: Vec<(usize, usize)> = alphabets
        .iter()
        .flat_map(|&a| (0..=frame.max_club_top()).map(move |len| (a, len)))
        .collect();
    let frame_blocks = first_failure(blocks.len(), |k| codec_roundtrip(blocks[k].0, blocks[k].1));
    Ok(vec![
        check("bijective", bijective),
        check("frame_blocks", frame_blocks),
    ])
}

fn factorize_suite(frame: &CardinalFrame) -> Result<Vec<Check>> {
    let fac = Factorization::new(frame)?;
    let mut checks = Vec::new();
    let inc = check_dense_embedding(&fac.inclusion_map());
    checks.push(check(
        "domain_dense_in_ambient",
        inc.clause("dense_range").cloned().unwrap_or(Outcome::Pass),
    ));
    let v = check_dense_embedding(&fac.pi_map());
    for (clause, name) in [
        ("injective", "pi_injective"),
        ("order_isomorphism", "pi_order_isomorphism"),
        ("dense_range", "pi_range_dense"),
    ] {
        checks.push(check(
            name,
            v.clause(clause).cloned().unwrap_or(Outcome::Pass),
        ));
    }
    checks.push(check("pi_range_dense_coupled", fac.coupled_density()));
    checks.push(check("pi_inverse_roundtrip", fac.inverse_roundtrip()));
    let amb = &fac.ambient;
    let densify_ok = first_failure(amb.len(), |i| {
        let r = amb.element(i);
        let d = densify(r);
        (!(d.is_uniform() && d.extends(r) && d.check_blocks(&fac.alphabet).is_ok()))
            .then(|| vec![i])
    });
    checks.push(check("densify_extends", densify_ok));
    Ok(checks)
}

fn triple_map_suite(frame: &CardinalFrame) -> Result<Vec<Check>> {
    let c = TripleMap::new(frame)?;
    let mut checks = from_verification("", &check_dense_embedding(&c.order_map()));
    let top = if c.map[c.source.top()] == c.target.top() {
        Outcome::Pass
    } else {
        Outcome::Fail(vec![c.source.top()])
    };
    checks.push(check("top_to_top", top));
    Ok(checks)
}

fn term_suite(frame: &CardinalFrame, caps: Caps) -> Result<Vec<Check>> {
    let lower = build_laver(frame, frame.mu(), frame.kappa())?;
    let alphabet = frame_upper_alphabet(frame)?;
    let shape = upper_shape(frame, &alphabet);
    let upper = build_laver_shape(&shape, frame)?;
    let term = build_term_poset(&lower, &upper, caps.term)?;
    let emb = LaverTermEmbedding::new(&lower, &upper, alphabet);
    let names = build_laver_shape(&emb.source_shape(&shape)?, frame)?;
    let map = emb.embedding_map(&names, &term)?;
    let mut checks = from_verification(
        "",
        &check_dense_embedding(&OrderMap::new(&names, &term, map.clone())),
    );
    let witness = first_failure(term.len(), |i| {
        let ok = emb
            .term_reduce(term.element(i))
            .and_then(|q| emb.term_embed(&q))
            .and_then(|e| name_index(&e, upper.len()))
            .is_ok_and(|e| term.leq(e, i));
        (!ok).then(|| vec![i])
    });
    checks.push(check("reduce_witness", witness));
    let roundtrip = first_failure(names.len(), |i| {
        (emb.term_reduce(term.element(map[i])).as_ref() != Ok(names.element(i))).then(|| vec![i])
    });
    checks.push(check("reduce_roundtrip", roundtrip));
    let domains = first_failure(names.len(), |i| {
        let sigma = term.element(map[i]);
        let same = |c: &LaverCondition| {
            c.entries().len() == names.element(i).entries().len()
                && c.entries()
                    .iter()
                    .zip(names.element(i).entries())
                    .all(|((s, f), (t, g))| s == t && f.keys().eq(g.keys()))
        };
        (!sigma.values().iter().all(|&v| same(upper.element(v)))).then(|| vec![i])
    });
    checks.push(check("domains_constant", domains));
    Ok(checks)
}

fn laver_projection_suite(frame: &CardinalFrame, caps: Caps) -> Result<Vec<Check>> {
    let lower = build_laver(frame, frame.mu(), frame.kappa())?;
    let alphabet = frame_upper_alphabet(frame)?;
    let upper = build_laver_shape(&upper_shape(frame, &alphabet), frame)?;
    let trivial = FinitePoset::new(vec![()], |_, _| true)?;
    let mut checks =
        from_verification("lower", &check_laver_projection(&lower, &upper, caps.term)?);
    checks.extend(from_verification(
        "trivial_base",
        &check_laver_projection(&trivial, &upper, caps.term)?,
    ));
    Ok(checks)
}

fn composed_projection_suite(frame: &CardinalFrame, caps: Caps) -> Result<Vec<Check>> {
    let t = ComposedProjection::new(frame, caps.term)?;
    let m = t.order_map();
    let v = check_projection(&m);
    let projection_ok = v.passed();
    let mut checks = from_verification("", &v);
    let image = if projection_ok {
        let gens = generic_filters(&t.source);
        first_failure(gens.len(), |i| {
            image_generic(&m, &gens[i]).is_err().then(|| vec![i])
        })
    } else {
        Outcome::Skip("not a projection".into())
    };
    checks.push(check("image_generic", image));
    let wrong = ComposedProjection::with_embedding(frame, caps.term, Embedding::Collapsed)?;
    let detected = if check_projection(&wrong.order_map()).passed() {
        Outcome::Fail(Vec::new())
    } else {
        Outcome::Pass
    };
    checks.push(check("collapsed_embedding_rejected", detected));
    Ok(checks)
}

fn quotient_suite(frame: &CardinalFrame, caps: Caps) -> Result<Vec<Check>> {
    let t = ComposedProjection::new(frame, caps.term)?;
    if !check_projection(&t.order_map()).passed() {
        return Ok(vec![check(
            "separative_equivalence",
            Outcome::Skip("not a projection".into()),
        )]);
    }
    let gens = t.iteration_generics();
    let outcomes = gens
        .par_iter()
        .map(|k| t.check_quotient_equivalence(k, caps.iso))
        .collect::<Result<Vec<_>>>()?;
    let outcome = match outcomes.iter().position(Outcome::is_fail) {
        Some(i) => Outcome::Fail(vec![i]),
        None => outcomes
            .into_iter()
            .find(|o| matches!(o, Outcome::Skip(_)))
            .unwrap_or(Outcome::Pass),
    };
    Ok(vec![check("separative_equivalence", outcome)])
}

fn census_outcome<T>(poset: &FinitePoset<T>, cap: usize) -> Outcome {
    match antichain_census(poset, true, cap) {
        Err(e) => Outcome::Skip(e.to_string()),
        Ok(c) => {
            let list = c.list.unwrap_or_default();
            let bad = list.iter().position(|a| {
                let pairwise = a
                    .iter()
                    .all(|&x| a.iter().all(|&y| x == y || !poset.compatible(x, y)));
                let maximal = (0..poset.len())
                    .all(|z| a.contains(&z) || a.iter().any(|&x| poset.compatible(x, z)));
                !(pairwise && maximal)
            });
            let max_ok = list.iter().map(Vec::len).max() == Some(c.max_size);
            match bad {
                Some(i) => Outcome::Fail(vec![i]),
                None if !max_ok => Outcome::Fail(vec![c.max_size]),
                None => Outcome::Pass,
            }
        }
    }
}

fn census_suite(frame: &CardinalFrame, caps: Caps) -> Result<Vec<Check>> {
    let lower = build_laver(frame, frame.mu(), frame.kappa())?;
    let col = build_col_dense(frame)?;
    let alphabet = frame_upper_alphabet(frame)?;
    let upper = build_laver_shape(&upper_shape(frame, &alphabet), frame)?;
    Ok(vec![
        check("col", census_outcome(&col, caps.census)),
        check("lower", census_outcome(&lower, caps.census)),
        check("upper", census_outcome(&upper, caps.census)),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Lines,
}

fn outcome_word(o: &Outcome) -> &'static str {
    match o {
        Outcome::Pass => "PASS",
        Outcome::Fail(_) => "FAIL",
        Outcome::Skip(_) => "SKIP",
    }
}

fn counterexample_suffix(o: &Outcome) -> String {
    match o {
        Outcome::Fail(ce) if !ce.is_empty() => {
            let parts: Vec<String> = ce.iter().map(ToString::to_string).collect();
            format!(" counterexample={}", parts.join(","))
        }
        _ => String::new(),
    }
}

/// `CHECK <suite>.<property> PASS|FAIL|SKIP [counterexample=...]`, sorted.
pub fn render_lines(reports: &[SuiteReport]) -> String {
    let mut lines: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(move |c| {
                format!(
                    "CHECK {}.{} {}{}",
                    r.suite.name(),
                    c.property,
                    outcome_word(&c.outcome),
                    counterexample_suffix(&c.outcome)
                )
            })
        })
        .collect();
    lines.sort();
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

pub fn render_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "== {}: {}", r.suite.name(), r.suite.header());
        for c in &r.checks {
            let _ = write!(out, "  {:<40} {}", c.property, outcome_word(&c.outcome));
            match &c.outcome {
                Outcome::Fail(ce) if !ce.is_empty() => {
                    let _ = write!(out, "  counterexample {ce:?}");
                }
                Outcome::Skip(why) => {
                    let _ = write!(out, "  ({why})");
                }
                _ => {}
            }
            if let Some(note) = &c.note {
                let _ = write!(out, "  ({note})");
            }
            out.push('\n');
        }
    }
    out
}

/// 0 all pass, 1 any failure, 3 a skip under `strict`.
pub fn exit_code(reports: &[SuiteReport], strict: bool) -> i32 {
    let outcomes = || {
        reports
            .iter()
            .flat_map(|r| r.checks.iter().map(|c| &c.outcome))
    };
    if outcomes().any(Outcome::is_fail) {
        1
    } else if strict && outcomes().any(|o| matches!(o, Outcome::Skip(_))) {
        3
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::fixtures::*;

    #[test]
    fn club_and_codec_pass_on_f1() {
        let reports = run_suite(&f1(), Suite::Club, Caps::default());
        assert_eq!(exit_code(&reports, true), 0);
        assert_eq!(
            render_lines(&reports),
            "CHECK club.initial_segment PASS\nCHECK club.roundtrip PASS\n"
        );
    }

    #[test]
    fn sweep_covers_limits() {
        let sweep = codec_sweep(4096);
        assert!(sweep.contains(&(2, 12)));
        assert!(sweep.contains(&(4096, 1)));
        assert!(sweep.contains(&(64, 2)));
        assert!(!sweep.contains(&(65, 2)));
    }

    #[test]
    fn smallest_frame_passes_everything() {
        let reports = run_suite(
            &smallest(),
            Suite::All,
            Caps {
                iso: 64,
                ..Caps::default()
            },
        );
        let text = render_lines(&reports);
        assert_eq!(exit_code(&reports, true), 0, "{text}");
    }

    #[test]
    fn strict_skip_exit_code() {
        let reports = run_suite(
            &smallest(),
            Suite::Quotient,
            Caps {
                iso: 1,
                ..Caps::default()
            },
        );
        assert_eq!(exit_code(&reports, false), 0);
        assert_eq!(exit_code(&reports, true), 3);
    }

    #[test]
    fn term_cap_skips() {
        let reports = run_suite(
            &smallest(),
            Suite::Term,
            Caps {
                term: 2,
                ..Caps::default()
            },
        );
        assert!(matches!(reports[0].checks[0].outcome, Outcome::Skip(_)));
    }
}

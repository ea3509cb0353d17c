//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the verdict lines appear in
//! `cargo test` output. Criteria whose literal form is known to be
//! unattainable are reported as FAIL with the measured discrepancy; the run
//! only aborts if a criterion fails in a way not accounted for below.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use symhyper::classify::{
    check_palindrome, classify, classify_base, classify_recursive, enumerate_stable,
    going_down_predict, going_up_expand, lemma6_rank, predicted_x_plus_count, Palindrome,
    StabilizerClass,
};
use symhyper::nonlocality::{
    build_two_level_family, classical_max, classical_value, product_of_g, MerminSystem,
    SearchBudget,
};
use symhyper::pascal::{matmul_mod2, pascal_matrix};
use symhyper::qec::{
    alpha_distance, alternating_row_sum, build_code, corrected_alpha_table,
    corrupted_one_logical, knill_laflamme, knill_laflamme_check, lemma9_checks,
    reference_alpha_table, QEC_TOL,
};
use symhyper::recovery::{
    first_column, reconstruct, roundtrip_failures, trace_mixture, CoefficientVariant,
};
use symhyper::statevec::{
    build_state, build_symmetric_state, dense_operator, is_stabilized, max_abs_diff,
    pauli_matrix, product_of_g_gates, reduced_density_matrix, search_local_pauli_stabilizers,
    Hypergraph, PauliWord, OPERATOR_TOL,
};
use symhyper::sym_core::{
    all_nonempty, e_from_g, g_from_e, sign_vector, CardinalityVector, IndicatorVector,
};

#[derive(PartialEq, Eq)]
enum Verdict {
    Pass,
    /// Fails exactly as the documented analysis predicts.
    KnownFail,
    Fail,
}

struct Outcome {
    verdict: Verdict,
    detail: String,
}

impl Outcome {
    fn check(ok: bool, detail: impl Into<String>) -> Self {
        Self {
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            detail: detail.into(),
        }
    }
}

fn k(text: &str) -> CardinalityVector {
    text.parse().unwrap()
}

fn stable_states(n_range: std::ops::RangeInclusive<usize>) -> Vec<CardinalityVector> {
    n_range
        .flat_map(all_nonempty)
        .filter(|v| classify(v).is_stable())
        .collect()
}

fn criterion_1() -> Outcome {
    let seq: Vec<usize> = (2..=9)
        .map(|n| enumerate_stable(n, StabilizerClass::XPlus).unwrap().len())
        .collect();
    let formula_ok = (2..=16).all(|n| {
        enumerate_stable(n, StabilizerClass::XPlus).unwrap().len() as u64
            == predicted_x_plus_count(n)
            && predicted_x_plus_count(n) == (1u64 << (n / 2)) - 1
    });
    Outcome::check(
        seq == [1, 1, 3, 3, 7, 7, 15, 15] && formula_ok,
        format!("X_PLUS counts n=2..9 {seq:?}; 2^⌊n/2⌋-1 for n=2..16: {formula_ok}"),
    )
}

/// Families outside the hypotheses of the local Pauli classification:
/// `n <= 2`, the complete graph, and its local-Z relatives.
fn outside_hypotheses(v: &CardinalityVector) -> bool {
    v.n() <= 2 || matches!(v.m(), [2] | [1] | [1, 2])
}

fn criterion_2() -> Outcome {
    // Class words against the dense oracle, n <= 10.
    let states: Vec<CardinalityVector> = (1..=10).flat_map(all_nonempty).collect();
    let word_mismatches: Vec<String> = states
        .par_iter()
        .filter_map(|v| {
            let psi = build_symmetric_state(v).unwrap();
            let c = classify(v);
            let bad = StabilizerClass::STABLE.iter().any(|&cand| {
                is_stabilized(&PauliWord::for_class(cand, v.n()).unwrap(), &psi) != (c == cand)
            });
            bad.then(|| v.to_string())
        })
        .collect();

    // Exhaustive local Pauli search, n <= 6.
    let searched: Vec<(CardinalityVector, Vec<PauliWord>)> = (1..=6)
        .flat_map(all_nonempty)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|v| {
            let words = search_local_pauli_stabilizers(&build_symmetric_state(&v).unwrap()).unwrap();
            (v, words)
        })
        .collect();
    let mut exact = 0;
    let mut extra = Vec::new();
    let mut missing = Vec::new();
    for (v, words) in &searched {
        let predicted: Vec<PauliWord> = PauliWord::for_class(classify(v), v.n()).into_iter().collect();
        if words == &predicted {
            exact += 1;
        } else if predicted.iter().all(|p| words.contains(p)) {
            extra.push(v.clone());
        } else {
            missing.push(v.to_string());
        }
    }
    let extra_ok = extra.iter().all(outside_hypotheses);
    let families: BTreeSet<String> = extra
        .iter()
        .filter(|v| v.n() >= 3)
        .map(|v| format!("K_n^{:?}", v.m()))
        .collect();
    let detail = format!(
        "{} states n<=10 agree on all class words (mismatches {:?}); search n<=6: {exact} find exactly \
         the predicted word, {} find further stabilizers, all outside the hypotheses \
         (n<=2 or {families:?}), missing {missing:?}",
        states.len(),
        word_mismatches,
        extra.len()
    );
    let verdict = if !word_mismatches.is_empty() || !missing.is_empty() || !extra_ok {
        Verdict::Fail
    } else if extra.is_empty() {
        Verdict::Pass
    } else {
        Verdict::KnownFail
    };
    Outcome { verdict, detail }
}

fn criterion_3() -> Outcome {
    let involution = (0..=64).all(|n| {
        let a = pascal_matrix(n).unwrap();
        matmul_mod2(&a, &a).unwrap().is_identity()
    });
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let roundtrips = (0..1000).all(|_| {
        let n = rng.random_range(1..=20usize);
        let g = (rng.random_range(1..(1u64 << n)) as u128) << 1;
        let ind = IndicatorVector::new(n, g).unwrap();
        g_from_e(&e_from_g(&ind)).unwrap() == ind
    });
    Outcome::check(
        involution && roundtrips,
        format!("A² = I for n <= 64: {involution}; 1000 random g_from_e∘e_from_g roundtrips: {roundtrips}"),
    )
}

fn criterion_4() -> Outcome {
    let mut down_checked = 0;
    let mut up_checked = 0;
    let mut bad = Vec::new();
    for v in stable_states(2..=13) {
        let c = classify(&v);
        let down = v.down().unwrap();
        down_checked += 1;
        if classify(&down) != going_down_predict(c).unwrap() {
            bad.push(format!("down {v}"));
        }
        if v.n() <= 12 && c != StabilizerClass::YPlus {
            for (u, predicted) in going_up_expand(&v).unwrap() {
                up_checked += 1;
                if classify(&u) != predicted {
                    bad.push(format!("up {v} -> {u}"));
                }
            }
        }
    }
    let all: Vec<CardinalityVector> = (1..=14).flat_map(all_nonempty).collect();
    let recursion_bad: Vec<String> = all
        .par_iter()
        .filter(|v| classify_recursive(v) != classify(v))
        .map(|v| v.to_string())
        .collect();
    Outcome::check(
        bad.is_empty() && recursion_bad.is_empty(),
        format!(
            "{down_checked} down and {up_checked} up predictions (failures {bad:?}); \
             recursion vs palindromes on {} states, disagreements {recursion_bad:?}",
            all.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=64 {
        for m in 1..=n {
            checked += 1;
            let v = CardinalityVector::single(n, m).unwrap();
            let direct = StabilizerClass::STABLE
                .into_iter()
                .find(|c| check_palindrome(&v, c.condition().unwrap()))
                .unwrap_or(StabilizerClass::Unstable);
            let others = [Palindrome::MinusY, Palindrome::IY, Palindrome::MinusIY]
                .iter()
                .any(|&p| check_palindrome(&v, p));
            if others {
                bad.push(format!("K{n}^{m} satisfies a -Y/±iY condition"));
            }
            if classify_base(n, m) != direct {
                bad.push(format!("K{n}^{m}"));
            }
        }
    }
    Outcome::check(bad.is_empty(), format!("{checked} (n, m) pairs, disagreements {bad:?}"))
}

fn criterion_6() -> Outcome {
    let states = stable_states(1..=9);
    let worst: Vec<(String, f64)> = states
        .par_iter()
        .map(|v| {
            let g = Hypergraph::symmetric(v).unwrap();
            let dense = dense_operator(v.n(), &product_of_g_gates(&g).unwrap()).unwrap();
            let word = product_of_g(v).unwrap();
            (v.to_string(), max_abs_diff(&dense, &pauli_matrix(&word).unwrap()))
        })
        .collect();
    let max = worst.iter().map(|w| w.1).fold(0.0, f64::max);
    Outcome::check(
        max < OPERATOR_TOL,
        format!("{} stable states n <= 9, max |Π g_j - word| = {max:.1e}", states.len()),
    )
}

fn criterion_7() -> Outcome {
    let budget = SearchBudget::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for t in ["K3^2", "K7^2"] {
        let r = classical_max(&k(t), budget).unwrap();
        let n = k(t).n() as i64;
        let good = r.exhaustive
            && r.classical_max < n
            && (r.quantum - (n + 1) as f64).abs() < 1e-10
            && r.violation;
        ok &= good;
        notes.push(format!("{t}: quantum {} classical {} (V={})", r.quantum, r.classical_max, r.variables));
    }
    let v = k("K5^3,4");
    let r = classical_max(&v, budget).unwrap();
    let sys = MerminSystem::new(&v).unwrap();
    let mut witness = sys.decode(0);
    for j in [3, 4, 5] {
        witness.x[j - 1] = -1;
    }
    witness.set_c(&[1, 2], -1);
    let witness_value = classical_value(&v, &witness).unwrap();
    let good = r.exhaustive && r.classical_max == 6 && !r.violation && witness_value == 6;
    ok &= good;
    notes.push(format!(
        "K5^3,4: exhaustive classical max {} over 2^{}, quoted witness reaches {witness_value}",
        r.classical_max, r.variables
    ));
    Outcome::check(ok, notes.join("; "))
}

fn criterion_8() -> Outcome {
    let chain = build_two_level_family(&k("K7^4")).unwrap();
    let texts: Vec<String> = chain.iter().map(|c| c.to_string()).collect();
    let expected = ["K6^3", "K6^1,3", "K7^2,4", "K8^3,5", "K9^4,6", "K10^5,7", "K11^6,8"];
    let last = chain.last().unwrap();
    Outcome::check(
        texts == expected && classify(last) == StabilizerClass::XMinus,
        format!("chain {}", texts.join(" -> ")),
    )
}

fn criterion_9() -> Outcome {
    let states = stable_states(3..=10);
    let rows: Vec<(CardinalityVector, bool, bool, bool, bool, bool)> = states
        .par_iter()
        .map(|v| {
            let code = build_code(v).unwrap();
            let kl = knill_laflamme(&code).unwrap();
            let n = v.n();
            let reference = alpha_distance(&kl.alpha, &reference_alpha_table(code.class(), n).unwrap()) < QEC_TOL;
            let corrected = alpha_distance(&kl.alpha, &corrected_alpha_table(code.class(), n).unwrap()) < QEC_TOL;
            let structure = lemma9_checks(&code).unwrap().all();
            let bad = code
                .with_one_logical(corrupted_one_logical(&code, 1).unwrap())
                .unwrap();
            let control_rejected = !knill_laflamme_check(&bad);
            (v.clone(), kl.passes(), reference, corrected, structure, control_rejected)
        })
        .collect();
    let sums_vanish = (3..=10).all(|n| alternating_row_sum(n).unwrap() == 0);
    let structural = rows.iter().all(|r| r.1 && r.3 && r.4 && r.5) && sums_vanish;
    let reference_misses: Vec<&CardinalityVector> = rows.iter().filter(|r| !r.2).map(|r| &r.0).collect();
    // The reference table is not Hermitian when n is even; every such code misses it.
    let misses_as_predicted = rows.iter().all(|r| r.2 == (r.0.n() % 2 == 1));
    let detail = format!(
        "{} codes 3 <= n <= 10: Knill-Laflamme, Hermitian table, structural checks, \
         alternating sums and negative controls all hold: {structural}; reference α table \
         matches {}/{} (misses {} codes, exactly those with even n, where its (3,2)/(3,1) \
         entry is not the conjugate of its transpose)",
        rows.len(),
        rows.len() - reference_misses.len(),
        rows.len(),
        reference_misses.len()
    );
    let verdict = if !structural || !misses_as_predicted {
        Verdict::Fail
    } else if reference_misses.is_empty() {
        Verdict::Pass
    } else {
        Verdict::KnownFail
    };
    Outcome { verdict, detail }
}

fn criterion_10() -> Outcome {
    let states: Vec<CardinalityVector> = (2..=10).flat_map(all_nonempty).collect();
    let worst = states
        .par_iter()
        .map(|v| {
            let psi = build_state(&Hypergraph::symmetric(v).unwrap()).unwrap();
            (0..=3.min(v.n() - 1))
                .map(|kk| {
                    let traced: Vec<usize> = (1..=kk).collect();
                    let dense = reduced_density_matrix(&psi, &traced).unwrap();
                    let mix = trace_mixture(v, kk).unwrap().density().unwrap();
                    max_abs_diff(&dense, &mix)
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    let mut roundtrips = 0;
    let mut failures = Vec::new();
    for n in 2..=12 {
        for v in all_nonempty(n) {
            for kk in 1..=3.min(n - 1) {
                if v.min_cardinality().unwrap() < kk + 1 {
                    continue;
                }
                roundtrips += 1;
                let col = first_column(&trace_mixture(&v, kk).unwrap());
                match reconstruct(&col, n, kk, CoefficientVariant::default()) {
                    Ok(f) if f == sign_vector(&v) => {}
                    _ => failures.push(format!("{v} k={kk}")),
                }
            }
        }
    }
    let tally: Vec<(CoefficientVariant, usize)> = CoefficientVariant::ALL
        .iter()
        .map(|&var| (var, roundtrip_failures(var, 12, 3).unwrap()))
        .collect();
    let winner = tally.iter().min_by_key(|t| t.1).unwrap().0;
    Outcome::check(
        worst < OPERATOR_TOL
            && failures.is_empty()
            && winner == CoefficientVariant::default()
            && tally[0].1 == 0,
        format!(
            "mixture vs dense trace max diff {worst:.1e}; {roundtrips} roundtrips, failures {failures:?}; \
             roundtrip failures per variant {tally:?}, default {:?}",
            CoefficientVariant::default()
        ),
    )
}

fn criterion_11() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 3..=12 {
        let staircase: Vec<usize> = (2..=n).collect();
        for v in all_nonempty(n) {
            if v.min_cardinality().unwrap() < 2 {
                continue;
            }
            checked += 1;
            let exception = v.m() == [n] || v.m() == [2] || v.m() == staircase.as_slice();
            let rank = lemma6_rank(&v).unwrap();
            if (exception && rank > 2) || (!exception && rank != 3) {
                bad.push(format!("{v}: rank {rank}"));
            }
        }
    }
    Outcome::check(bad.is_empty(), format!("{checked} states, unexpected ranks {bad:?}"))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("counting", criterion_1, Duration::from_secs(10)),
        ("oracle equivalence", criterion_2, Duration::from_secs(120)),
        ("Pascal involution", criterion_3, Duration::from_secs(1)),
        ("going down / up / recursion", criterion_4, Duration::from_secs(60)),
        ("single-level closed form", criterion_5, Duration::from_secs(5)),
        ("product of g_j", criterion_6, Duration::from_secs(120)),
        ("Mermin bounds and counterexample", criterion_7, Duration::from_secs(180)),
        ("two-level chain", criterion_8, Duration::from_secs(1)),
        ("collective-error code", criterion_9, Duration::from_secs(180)),
        ("partial trace and reconstruction", criterion_10, Duration::from_secs(180)),
        ("rank of sign triples", criterion_11, Duration::from_secs(10)),
    ];
    let mut unexpected = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let label = match (&outcome.verdict, in_time) {
            (Verdict::Pass, true) => "PASS",
            (Verdict::KnownFail, true) => "FAIL (known)",
            _ => "FAIL",
        };
        if outcome.verdict == Verdict::Fail || !in_time {
            unexpected += 1;
        }
        println!(
            "{label} criterion {:>2} [{name}] {:.2}s/{}s: {}",
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            outcome.detail
        );
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}

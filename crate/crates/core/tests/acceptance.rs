//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always print; the process
//! exits non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use treemaps::hopf::{b_plus, coproduct, TensorSum};
use treemaps::laws::{run_suite, LawReport, Sweep};
use treemaps::mlv::{check_kernel, evaluate_l, EvalOptions};
use treemaps::parse::{parse_forest, parse_index, parse_poly};
use treemaps::products::diamond;
use treemaps::rtm::{apply_rtm, f_poly, generate_relations, Variant};
use treemaps::{shared, ForestSum, Mutation, NCPoly, Rational, RootIndex};

type Verdict = Result<String, String>;

fn forest(text: &str) -> ForestSum {
    parse_forest(text).expect("valid forest")
}

fn tensor(terms: &[(i64, &str, &str)]) -> TensorSum {
    let mut out = TensorSum::zero();
    for &(c, left, right) in terms {
        for (a, ca) in forest(left).iter() {
            for (b, cb) in forest(right).iter() {
                out.add_term((a.clone(), b.clone()), &(&Rational::from_integer(c) * ca) * cb);
            }
        }
    }
    out
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Hopf structure goldens: four coproduct displays and two grafting displays.
fn hopf_goldens() -> Verdict {
    let cases = [
        ("1", tensor(&[(1, "1", "1")])),
        ("[]", tensor(&[(1, "[]", "1"), (1, "1", "[]")])),
        ("[] []", tensor(&[(1, "[] []", "1"), (2, "[]", "[]"), (1, "1", "[] []")])),
        ("[[]]", tensor(&[(1, "[[]]", "1"), (1, "[]", "[]"), (1, "1", "[[]]")])),
        ("[[] []]", tensor(&[(1, "[[] []]", "1"), (1, "[] []", "[]"), (2, "[]", "[[]]"), (1, "1", "[[] []]")])),
    ];
    for (input, want) in &cases {
        let got = coproduct(&forest(input));
        ensure(got == *want, || format!("coproduct of {input} differs"))?;
    }
    let grafts = [
        ("1", "[]"),
        ("[] [[] []]", "[[] [[] []]]"),
        ("[] [] [] - 2*[[]] [[]]", "[[] [] []] - 2*[[[]] [[]]]"),
    ];
    for (input, want) in grafts {
        ensure(b_plus(&forest(input)) == forest(want), || format!("B+ of {input} differs"))?;
    }
    Ok(format!("{} coproducts, {} grafts exact", cases.len(), grafts.len()))
}

/// Vertex-map conditions for r ≤ 4 and the two-vertex examples.
fn rtm_goldens() -> Verdict {
    let mut checked = 0;
    for r in 1..=4 {
        let ctx = shared(r, None).map_err(|e| e.to_string())?;
        let z = NCPoly::z(r);
        for s in RootIndex::all(r) {
            let zd = NCPoly::z_delta(r, s);
            let u = &z - &zd;
            let run = |f: &str, p: &NCPoly| apply_rtm(&ctx, &forest(f), p).map_err(|e| e.to_string());
            ensure(run("[]", &zd)? == &zd * &u, || format!("vertex on z_s^δ, r={r} s={}", s.j()))?;
            ensure(run("[]", &z)?.is_zero(), || format!("vertex on z, r={r}"))?;

            // Two vertices: the defining conditions give the "−" sign.
            let zd2 = &zd * &zd;
            let minus = &(&zd * &(&u * &u)) - &(&zd2 * &u);
            let plus = &(&zd * &(&u * &u)) + &(&zd2 * &u);
            let cherry_of = |sign: i64| {
                let head = &(&zd * &u) + &zd2.scale_int(sign);
                &(&head * &(&z.scale_int(2) - &zd)) * &u
            };
            for (f, want, plus_display) in [("[] []", minus.clone(), plus.clone()), ("[[] []]", cherry_of(-1), cherry_of(1))] {
                let got = run(f, &zd)?;
                let fp = f_poly(&ctx, &forest(f)).map_err(|e| e.to_string())?;
                let thm1 = &zd * &diamond(&ctx, s, &fp, &NCPoly::one(r)).map_err(|e| e.to_string())?;
                ensure(got == want, || format!("{f} on z_s^δ, r={r} s={}: {got}", s.j()))?;
                ensure(got == thm1, || format!("{f} on z_s^δ disagrees with z_s^δ(F ⋄_s 1), r={r} s={}", s.j()))?;
                ensure(plus_display != thm1, || format!("the \"+\" display satisfies the identity at r={r} s={}", s.j()))?;
            }
            checked += 1;
        }
    }
    let sweep = Sweep { r_values: vec![1, 2], max_forest_degree: 2, max_word_degree: 2, sample_budget: 4, ..Sweep::default() };
    let reports = run_suite(&["thm1"], &sweep, None).map_err(|e| e.to_string())?;
    ensure(reports[0].passed(), || "thm1 consistency sweep failed".into())?;
    Ok(format!("{checked} (r, s) pairs; two-vertex values follow the \"−\" sign and satisfy z_s^δ(F ⋄_s 1)"))
}

fn suites(names: &[&str], sweep: &Sweep) -> Verdict {
    let reports: Vec<LawReport> = run_suite(names, sweep, None).map_err(|e| e.to_string())?;
    let cases: usize = reports.iter().map(|r| r.cases).sum();
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} ({} failures, first: {})", r.law, r.failures.len(), r.failures[0].case))
        .collect();
    ensure(failing.is_empty(), || failing.join("; "))?;
    Ok(format!("{} suites, {cases} cases, 0 counterexamples", reports.len()))
}

fn thm1_suite() -> Verdict {
    suites(&["thm1"], &Sweep::default())
}

/// The tau-conjugation law runs on all words up to one degree above the cap, which covers
/// arbitrary words of degree 4 at every r in the sweep.
fn thm2_thm3_suites() -> Verdict {
    suites(&["thm2", "thm3"], &Sweep::default())
}

fn lemma_suites() -> Verdict {
    suites(
        &[
            "harmonic_lemma_i_ii",
            "lem_xplusy",
            "lem6",
            "prop0",
            "lem1_mixed_assoc",
            "lem_y",
            "prop7",
            "prop_main3",
            "lem2_i",
            "lem2_ii",
            "lem2_iii",
            "lem2_iv",
            "lem2_v",
            "lem2_vi",
            "lem2_vii",
            "mt45",
            "mt51",
            "g_eq_f_of_antipode",
        ],
        &Sweep::default(),
    )
}

fn hopf_axioms() -> Verdict {
    let sweep = Sweep { r_values: vec![1], max_hopf_degree: 5, ..Sweep::default() };
    suites(
        &["hopf_coassoc", "hopf_counit", "hopf_antipode_axiom", "hopf_multiplicativity", "hopf_tree_counts"],
        &sweep,
    )
}

fn rtm_commutativity() -> Verdict {
    let sweep = Sweep { r_values: vec![1, 2], max_forest_degree: 2, max_word_degree: 3, ..Sweep::default() };
    suites(&["rtm_commute", "rtm_split_independence"], &sweep)
}

fn euler_relation() -> Verdict {
    let ctx = shared(1, None).map_err(|e| e.to_string())?;
    let rels = generate_relations(&ctx, 1, 2, Variant::Direct).map_err(|e| e.to_string())?;
    let want = parse_poly("x y0 y0 - x x y0", 1).map_err(|e| e.to_string())?;
    ensure(rels.len() == 1 && rels[0].poly == want, || format!("got {} relations", rels.len()))?;
    let opts = EvalOptions { max_terms: 100_000, ..EvalOptions::default() };
    let rep = check_kernel(&rels[0].poly, &opts).map_err(|e| e.to_string())?;
    ensure(rep.pass && rep.sum.norm() < 1e-3, || format!("|ζ(2,1) − ζ(3)| = {:.3e}", rep.sum.norm()))?;
    let zeta2 = evaluate_l(&parse_index("2;0", 1).map_err(|e| e.to_string())?, &opts).map_err(|e| e.to_string())?;
    let alt = evaluate_l(&parse_index("1;1", 2).map_err(|e| e.to_string())?, &opts).map_err(|e| e.to_string())?;
    let e2 = (zeta2.value.re - std::f64::consts::PI.powi(2) / 6.0).abs();
    let e1 = (alt.value.re + std::f64::consts::LN_2).abs();
    ensure(e2 < 1e-4 && e1 < 1e-4, || format!("|ζ(2) − π²/6| = {e2:.3e}, |L(1;−1) + log 2| = {e1:.3e}"))?;
    Ok(format!(
        "x y0 y0 - x x y0; |ζ(2,1) − ζ(3)| = {:.3e}; |ζ(2) − π²/6| = {e2:.3e}; |L(1;−1) + log 2| = {e1:.3e}",
        rep.sum.norm()
    ))
}

fn relation_kernel() -> Verdict {
    let opts = EvalOptions { max_terms: 100_000, tolerance: 1e-3, ..EvalOptions::default() };
    let (mut count, mut worst, mut worst_bound, mut by_bound) = (0, 0.0f64, 0.0f64, 0);
    for r in 1..=2 {
        let ctx = shared(r, None).map_err(|e| e.to_string())?;
        for d in 1..=2 {
            for wt in 1..=3 {
                for variant in [Variant::Direct, Variant::TauConjugate] {
                    for rel in generate_relations(&ctx, d, wt, variant).map_err(|e| e.to_string())? {
                        let rep = check_kernel(&rel.poly, &opts).map_err(|e| e.to_string())?;
                        ensure(rep.pass, || format!("{rel}: |sum| = {:.3e} > bound {:.3e}", rep.sum.norm(), rep.bound))?;
                        count += 1;
                        if rep.sum.norm() >= opts.tolerance {
                            by_bound += 1;
                        }
                        if rep.sum.norm() > worst {
                            worst = rep.sum.norm();
                            worst_bound = rep.bound;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{count} relations pass; max |sum| = {worst:.3e} (bound {worst_bound:.3e}); {by_bound} pass by the error bound rather than the tolerance"
    ))
}

fn mutation_caught() -> Verdict {
    let sweep = Sweep { r_values: vec![1, 2], max_forest_degree: 2, max_word_degree: 2, sample_budget: 4, ..Sweep::default() };
    let reports = run_suite(&["prop0", "thm1"], &sweep, Some(Mutation::DiamondRule3Sign)).map_err(|e| e.to_string())?;
    let counts: Vec<String> = reports.iter().map(|r| format!("{}: {}", r.law, r.failures.len())).collect();
    ensure(reports.iter().all(|r| !r.failures.is_empty()), || counts.join(", "))?;
    Ok(format!("counterexamples under {}: {}", Mutation::DiamondRule3Sign, counts.join(", ")))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Verdict,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "hopf structure goldens", budget: secs(1), run: hopf_goldens },
        Criterion { id: 2, name: "rtm condition goldens", budget: secs(1), run: rtm_goldens },
        Criterion { id: 3, name: "tree map identity sweep", budget: secs(300), run: thm1_suite },
        Criterion { id: 4, name: "antipode and tau-conjugation sweeps", budget: None, run: thm2_thm3_suites },
        Criterion { id: 5, name: "auxiliary identity sweeps", budget: None, run: lemma_suites },
        Criterion { id: 6, name: "hopf axioms to degree 5", budget: None, run: hopf_axioms },
        Criterion { id: 7, name: "rtm commutativity and split independence", budget: None, run: rtm_commutativity },
        Criterion { id: 8, name: "euler relation and depth-1 values", budget: secs(5), run: euler_relation },
        Criterion { id: 9, name: "relations d<=2 wt<=3 r<=2 in the kernel", budget: secs(120), run: relation_kernel },
        Criterion { id: 10, name: "mutation self-test", budget: None, run: mutation_caught },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let verdict = (c.run)();
        let took = start.elapsed();
        let verdict = match (verdict, c.budget) {
            (Ok(msg), Some(limit)) if took > limit => Err(format!("{msg}; over the {}s budget", limit.as_secs())),
            (v, _) => v,
        };
        let (tag, msg) = match &verdict {
            Ok(msg) => ("PASS", msg),
            Err(msg) => ("FAIL", msg),
        };
        if verdict.is_err() {
            failed += 1;
        }
        println!("{tag} criterion {:>2} {}: {msg} [{:.2}s]", c.id, c.name, took.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

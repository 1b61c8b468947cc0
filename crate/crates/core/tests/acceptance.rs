//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line
//! with its runtime; the process exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use drsl::classical::{entails, Backend, Engine, Valuation};
use drsl::klm::{rc_model, rc_prop, Rank, RankedInterpretation, RationalClosure};
use drsl::normalize::{normalize_kb, normalize_statement, NormalStatement};
use drsl::oracle::{
    enumerate_ranked_interpretations, generate_random_kb, minimal_model_oracle, random_defeasible,
    random_drsl_statement, random_klm_kb, random_normal_query, EnumerationBudget, GeneratorProfile,
};
use drsl::semantics::{build_rc_structure, RankedStandpointStructure};
use drsl::standpoint::{standpoint_split, Reasoner};
use drsl::syntax::{
    parse_bool, parse_kb, parse_klm, print_klm, AtomId, BoolFormula, DrslStatement, KlmStatement,
    KnowledgeBase, StandpointId, Vocabulary,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

const TOMATO: &str = "standpoints: B, C, L
[B] (tomato -> fruit)
[B] (fruit -> vegetable)
[C] (savoury <-> vegetable)
[C] (sweet <-> fruit)
[C] (tomato ~> savoury)
[C] (fruit ~> !vegetable) & [C] (vegetable ~> !fruit)
L <= C
[L] (vegetable -> !fruit)
";

fn klm_statements(kb: &KnowledgeBase) -> Vec<KlmStatement> {
    kb.statements
        .iter()
        .map(|s| match s {
            DrslStatement::Klm(k) => k.clone(),
            other => panic!("not a propositional statement: {other:?}"),
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let kb = parse_kb("p -> b\nb ~> f\np ~> !f\n").unwrap();
    let model = rc_model(&klm_statements(&kb), &kb.vocabulary).unwrap();
    let table = model.to_table(&kb.vocabulary);
    let expected = "∞ | p -b f, p -b -f\n2 | p b f\n1 | p b -f, -p b -f\n0 | -p b f, -p -b f, -p -b -f";
    ensure!(table == expected, "table differs:\n{table}");
    Ok("four-row table reproduced byte for byte".into())
}

fn members(split: &drsl::standpoint::SplitResult, vocab: &Vocabulary, label: &str) -> Vec<String> {
    split
        .kb(label)
        .map(|k| k.statements.iter().map(|s| print_klm(s, vocab)).collect())
        .unwrap_or_default()
}

fn criterion_2() -> Outcome {
    let n = normalize_kb(&parse_kb(TOMATO).unwrap());
    let v = &n.vocabulary;
    let split = standpoint_split(&n);
    let labels: Vec<&str> = split.kbs.iter().map(|k| k.label.as_str()).collect();
    ensure!(labels == ["K_B", "K_C", "K_L"], "parts {labels:?}");
    ensure!(
        members(&split, v, "K_B") == ["tomato -> fruit", "fruit -> vegetable"],
        "K_B = {:?}",
        members(&split, v, "K_B")
    );
    let k_c = [
        "savoury <-> vegetable",
        "sweet <-> fruit",
        "tomato ~> savoury",
        "fruit ~> !vegetable",
        "vegetable ~> !fruit",
    ];
    ensure!(members(&split, v, "K_C") == k_c, "K_C = {:?}", members(&split, v, "K_C"));

    // The published K_L lists the strict legal rule as `fruit -> !vegetable` and leaves
    // out the two defeasible culinary rules that the sharpening L <= C also carries over.
    let printed_k_l = ["savoury <-> vegetable", "sweet <-> fruit", "tomato ~> savoury", "fruit -> !vegetable"];
    let k_l = &split.kb("K_L").unwrap().statements;
    let ours: Vec<String> = members(&split, v, "K_L");
    ensure!(
        ours[..3] == printed_k_l[..3] && ours[3..5] == k_c[3..5] && ours.len() == 6,
        "K_L = {ours:?}"
    );
    let legal = parse_bool(printed_k_l[3], v).unwrap();
    let ours_legal = match &k_l[5] {
        KlmStatement::Bool(b) => b.clone(),
        other => return Err(format!("unexpected last K_L member {other:?}")),
    };
    ensure!(
        entails(std::slice::from_ref(&legal), &ours_legal) && entails(std::slice::from_ref(&ours_legal), &legal),
        "the legal rule is not classically equivalent to the published one"
    );
    let printed: Vec<KlmStatement> = printed_k_l.iter().map(|t| parse_klm(t, v).unwrap()).collect();
    ensure!(
        rc_model(&printed, v).unwrap() == rc_model(k_l, v).unwrap(),
        "the published K_L and ours have different rational closures"
    );
    let id = |name: &str| v.standpoint(name).unwrap();
    for (s, want) in [("B", vec!["K_B"]), ("C", vec!["K_C", "K_L"]), ("L", vec!["K_L"])] {
        let got = split.know_labels(id(s)).unwrap();
        ensure!(got == want, "Know_{s} = {got:?}");
    }

    let phi = "sweet & tomato";
    let n2 = normalize_kb(&parse_kb(&format!("{TOMATO}<L> ({phi})\n")).unwrap());
    let split2 = standpoint_split(&n2);
    let id2 = |name: &str| n2.vocabulary.standpoint(name).unwrap();
    ensure!(
        split2.know_labels(id2("C")).unwrap() == ["K_C", "K_L", "K_L^1"],
        "Know_C with the diamond = {:?}",
        split2.know_labels(id2("C"))
    );
    ensure!(
        split2.know_labels(id2("L")).unwrap() == ["K_L", "K_L^1"],
        "Know_L with the diamond = {:?}",
        split2.know_labels(id2("L"))
    );
    let mut ext = members(&split, v, "K_L");
    ext.push(phi.to_string());
    ensure!(members(&split2, &n2.vocabulary, "K_L^1") == ext, "K_L^1 is not K_L plus the diamond body");
    Ok("K_B, K_C exact; K_L matches up to the listed gaps; Know sets exact".into())
}

fn ask(r: &Reasoner, q: &str) -> Result<bool, String> {
    let stmt = r.parse_query(q).map_err(|e| e.to_string())?;
    r.ask(&stmt).map(|a| a.verdict).map_err(|e| e.to_string())
}

fn criterion_3() -> Outcome {
    let k = "s <= *\np -> b\nb ~> f\n";
    let k2 = format!("{k}[s] (p ~> !f)\nt <= *\n");
    let r = Reasoner::new(normalize_kb(&parse_kb(k).unwrap()));
    let r2 = Reasoner::new(normalize_kb(&parse_kb(&k2).unwrap()));
    let checks = [
        (&r, "[s] (p ~> f)", true),
        (&r, "p ~> f", true),
        (&r, "(p ~> f) & [s] (p ~> f)", true),
        (&r2, "[s] (p ~> f)", false),
        (&r2, "p ~> f", false),
        (&r2, "[t] (p ~> f)", true),
    ];
    for (reasoner, q, want) in checks {
        let got = ask(reasoner, q)?;
        ensure!(got == want, "`{q}` gave {got}, expected {want}");
    }
    Ok("6 verdicts match".into())
}

/// Reads a valuation written with the abbreviations `t s_a v s_w f`, where a
/// trailing `'` marks a false atom.
fn abbreviated(text: &str, vocab: &Vocabulary) -> Valuation {
    let names = [("t", "tomato"), ("s_a", "savoury"), ("v", "vegetable"), ("s_w", "sweet"), ("f", "fruit")];
    let mut u = Valuation::new(vocab.atom_count(), 0);
    for tok in text.split_whitespace() {
        let (abbr, value) = match tok.strip_suffix('\'') {
            Some(a) => (a, false),
            None => (tok, true),
        };
        let full = names.iter().find(|(a, _)| *a == abbr).expect("known abbreviation").1;
        u = u.with(vocab.atom(full).unwrap(), value);
    }
    u
}

fn criterion_4() -> Outcome {
    let kb = parse_kb(TOMATO).unwrap();
    let v = &kb.vocabulary;
    let rc = build_rc_structure(&normalize_kb(&kb)).map_err(|e| e.to_string())?;
    let m = &rc.structure;
    let zero = ["t s_a v s_w' f'", "t' s_a v s_w' f'", "t' s_a' v' s_w f", "t' s_a' v' s_w' f'"];
    let published = [
        ("pi_C", vec!["t s_a v s_w f", "t s_a' v' s_w f", "t s_a' v' s_w' f'", "t' s_a v s_w f"]),
        ("pi_L", vec!["t s_a' v' s_w f", "t s_a' v' s_w' f'"]),
    ];
    for (label, one) in &published {
        let g = &m.gamma[m.index_of(label).ok_or(format!("no {label}"))?];
        let mut want: BTreeMap<Valuation, Rank> = BTreeMap::new();
        for t in &zero {
            want.insert(abbreviated(t, v), Rank::Finite(0));
        }
        for t in one {
            want.insert(abbreviated(t, v), Rank::Finite(1));
        }
        for u in Valuation::all(v.atom_count()) {
            let expect = want.get(&u).copied().unwrap_or(Rank::Infinite);
            ensure!(g.rank(&u) == expect, "{label}: {} has rank {}, expected {expect}", u.render(v), g.rank(&u));
        }
    }
    let b = &m.gamma[m.index_of("pi_B").ok_or("no pi_B")?];
    let k_b = [parse_bool("tomato -> fruit", v).unwrap(), parse_bool("fruit -> vegetable", v).unwrap()];
    for u in Valuation::all(v.atom_count()) {
        let sat = k_b.iter().all(|f| drsl::classical::eval(&u, f));
        ensure!(
            b.rank(&u) == if sat { Rank::Finite(0) } else { Rank::Infinite },
            "pi_B ranks {} wrongly",
            u.render(v)
        );
    }
    let r = Reasoner::new(normalize_kb(&kb));
    ensure!(ask(&r, "tomato ~> vegetable")?, "tomato ~> vegetable should hold");
    ensure!(!ask(&r, "[L] (tomato -> !fruit)")?, "[L] (tomato -> !fruit) should fail");
    let witness = abbreviated("t s_a' v' s_w f", v);
    let l = &m.gamma[m.index_of("pi_L").unwrap()];
    ensure!(l.rank(&witness) == Rank::Finite(1), "the dessert tomato is at {}", l.rank(&witness));
    let q = DrslStatement::Klm(parse_klm("tomato -> !fruit", v).unwrap());
    ensure!(!l.satisfies(&parse_klm("tomato -> !fruit", v).unwrap()), "gamma(pi_L) satisfies the rule");
    ensure!(!m.satisfies(&DrslStatement::boxed(v.standpoint("L").unwrap(), q), v).unwrap(), "semantic check disagrees");
    Ok(format!("tables match; counter-valuation {} at rank 1 of pi_L", witness.render(v)))
}

fn vocab_of(atoms: usize) -> Vocabulary {
    Vocabulary::with_symbols(["p", "q", "r", "w"][..atoms].iter().copied(), Vec::<&str>::new())
}

fn criterion_5() -> Outcome {
    let mut queries = 0;
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(5_000 + seed);
        let atoms = rng.gen_range(1..=4);
        let vocab = vocab_of(atoms);
        let kb = random_klm_kb(&mut rng, atoms, 6, 2);
        let model = rc_model(&kb, &vocab).unwrap();
        for _ in 0..20 {
            let q = random_defeasible(&mut rng, atoms, 2);
            let (a, b) = (rc_prop(&kb, &q), model.satisfies(&q));
            ensure!(
                a == b,
                "seed {seed}: rc_prop={a}, model={b} for {} on {:?}",
                print_klm(&q, &vocab),
                kb.iter().map(|k| print_klm(k, &vocab)).collect::<Vec<_>>()
            );
            queries += 1;
        }
    }
    Ok(format!("500 knowledge bases, {queries} queries, 0 discrepancies"))
}

fn criterion_6() -> Outcome {
    let budget = EnumerationBudget::default();
    let mut nontrivial = 0;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(6_000 + seed);
        let atoms = rng.gen_range(1..=3);
        let vocab = vocab_of(atoms);
        let kb = random_klm_kb(&mut rng, atoms, 6, 2);
        let min = minimal_model_oracle(&kb, &vocab, &budget).map_err(|e| format!("seed {seed}: {e}"))?;
        let rc = rc_model(&kb, &vocab).unwrap();
        ensure!(min == rc, "seed {seed}: oracle\n{}\nrational closure\n{}", min.to_table(&vocab), rc.to_table(&vocab));
        ensure!(kb.iter().all(|k| min.satisfies(k)), "seed {seed}: the minimum is not a model");
        if min.level_count() > 1 {
            nontrivial += 1;
        }
    }
    Ok(format!("200 knowledge bases agree ({nontrivial} with more than one finite rank)"))
}

fn as_conjunction(q: &[NormalStatement]) -> DrslStatement {
    q.iter()
        .map(NormalStatement::to_drsl)
        .reduce(DrslStatement::conj)
        .expect("nonempty query")
}

/// The knowledge bases used by the differential check, shared with the model check.
fn drsl_kbs() -> Vec<KnowledgeBase> {
    (0..300u64)
        .map(|seed| {
            let profile = GeneratorProfile {
                atoms: 3,
                standpoints: 1 + (seed as usize % 2),
                max_statements: 6,
                ..Default::default()
            };
            generate_random_kb(7_000 + seed, &profile)
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    let mut truths = 0;
    for (i, kb) in drsl_kbs().iter().enumerate() {
        let normal = normalize_kb(kb);
        let r = Reasoner::new(normal.clone());
        let m = build_rc_structure(&normal).map_err(|e| format!("kb {i}: {e}"))?.structure;
        let mut sps = r.split().standpoints.clone();
        if !sps.contains(&StandpointId::UNIVERSAL) {
            sps.push(StandpointId::UNIVERSAL);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(70_000 + i as u64);
        let width = kb.vocabulary.atom_count();
        for _ in 0..10 {
            let q = random_normal_query(&mut rng, width, &sps, 2);
            let alg = r.rc_standpoint(&q).map_err(|e| e.to_string())?.verdict;
            let stmt = as_conjunction(&q);
            let sem = m.satisfies(&stmt, &kb.vocabulary).map_err(|e| e.to_string())?;
            ensure!(
                alg == sem,
                "kb {i}:\n{}query {}: algorithm={alg}, structure={sem}",
                drsl::syntax::print_kb(kb),
                drsl::syntax::print_statement(&stmt, &kb.vocabulary)
            );
            checked += 1;
            truths += alg as usize;
        }
    }
    Ok(format!("300 knowledge bases, {checked} queries ({truths} entailed), 0 discrepancies"))
}

fn leaves(stmt: &DrslStatement, out: &mut Vec<KlmStatement>) {
    match stmt {
        DrslStatement::Klm(k) => {
            for c in k.conjuncts() {
                if !out.contains(c) {
                    out.push(c.clone());
                }
            }
        }
        DrslStatement::Modal(_, _, b) => leaves(b, out),
        DrslStatement::Conj(a, b) => {
            leaves(a, out);
            leaves(b, out);
        }
        DrslStatement::Sharpening { .. } => {}
    }
}

/// Satisfaction of a statement and of its normal form depends on each `γ(π)` only
/// through which KLM leaves it satisfies. One representative interpretation per
/// leaf pattern therefore covers every enumerated structure.
fn criterion_8() -> Outcome {
    let budget = EnumerationBudget {
        max_atoms: 2,
        ..Default::default()
    };
    let vocab = Vocabulary::with_symbols(["p", "q"], ["A", "B"]);
    let interps = enumerate_ranked_interpretations(2, &budget).map_err(|e| e.to_string())?;
    let named: Vec<StandpointId> = vocab.standpoint_ids().filter(|s| !s.is_universal()).collect();
    let mut sps = vec![StandpointId::UNIVERSAL];
    sps.extend(&named);
    let mut rng = ChaCha8Rng::seed_from_u64(8_000);
    let mut statements = 0;
    let mut structures: u64 = 0;
    while statements < 200 {
        let stmt = random_drsl_statement(&mut rng, 2, &sps, 2, false);
        let mut ls = Vec::new();
        leaves(&stmt, &mut ls);
        if ls.len() > 4 {
            continue;
        }
        statements += 1;
        let normal = normalize_statement(&stmt).map_err(|_| "sharpening drawn".to_string())?;
        let mut reps: BTreeMap<Vec<bool>, &RankedInterpretation> = BTreeMap::new();
        let mut classes_of = Vec::new();
        for g in &interps {
            let key: Vec<bool> = ls.iter().map(|l| g.satisfies(l)).collect();
            reps.entry(key.clone()).or_insert(g);
            classes_of.push(key);
        }
        let reps: Vec<&RankedInterpretation> = reps.into_values().collect();
        for k in 1..=3usize {
            let mut idx = vec![0usize; k];
            loop {
                let gamma: Vec<RankedInterpretation> = idx.iter().map(|&i| reps[i].clone()).collect();
                let mut masks = vec![1u32; named.len()];
                loop {
                    let pi: Vec<String> = (1..=k).map(|i| format!("pi_{i}")).collect();
                    let sigma = named
                        .iter()
                        .zip(&masks)
                        .map(|(&s, &msk)| (s, (0..k).filter(|&p| msk >> p & 1 == 1).collect()))
                        .collect();
                    let m = RankedStandpointStructure::new(pi, sigma, gamma.clone()).unwrap();
                    let whole = m.satisfies(&stmt, &vocab).unwrap();
                    let mut parts = true;
                    for n in &normal {
                        parts &= m.satisfies(&n.to_drsl(), &vocab).unwrap();
                    }
                    ensure!(
                        whole == parts,
                        "{}: statement {whole}, normal form {parts}",
                        drsl::syntax::print_statement(&stmt, &vocab)
                    );
                    structures += 1;
                    if !advance_masks(&mut masks, k) {
                        break;
                    }
                }
                if !advance_multiset(&mut idx, reps.len()) {
                    break;
                }
            }
        }
    }
    Ok(format!(
        "200 statements over all structures with |Pi| <= 3 ({} interpretations, {structures} representative structures), 0 discrepancies",
        interps.len()
    ))
}

fn advance_masks(masks: &mut [u32], k: usize) -> bool {
    for m in masks.iter_mut() {
        if *m + 1 < 1 << k {
            *m += 1;
            return true;
        }
        *m = 1;
    }
    false
}

fn advance_multiset(idx: &mut [usize], n: usize) -> bool {
    for i in (0..idx.len()).rev() {
        if idx[i] + 1 < n {
            let v = idx[i] + 1;
            idx[i..].iter_mut().for_each(|j| *j = v);
            return true;
        }
    }
    false
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    let tomato = parse_kb(TOMATO).unwrap();
    let mut kbs = vec![tomato];
    kbs.extend(drsl_kbs());
    for (i, kb) in kbs.iter().enumerate() {
        let m = build_rc_structure(&normalize_kb(kb)).map_err(|e| format!("kb {i}: {e}"))?.structure;
        ensure!(
            m.check_model(kb).map_err(|e| format!("kb {i}: {e}\n{}", drsl::syntax::print_kb(kb)))?,
            "kb {i} is not modelled by its own structure:\n{}",
            drsl::syntax::print_kb(kb)
        );
        checked += 1;
    }
    Ok(format!("{checked} representative structures are models of their knowledge bases"))
}

/// `x_i -> x_{i+1}` strict chain, `x_i ~> x_{i+1}` defeasible chain, and
/// `x_{n-1} ~> !x_0` closing a loop that makes `x_0` exceptional.
fn horn_kb(n: usize, rng: &mut ChaCha8Rng) -> (Vec<KlmStatement>, Vec<KlmStatement>) {
    let x = |i: usize| BoolFormula::Atom(AtomId(i as u32));
    let mut kb = Vec::new();
    for i in 0..n - 1 {
        if i % 3 == 0 {
            kb.push(KlmStatement::Bool(BoolFormula::implies(x(i), x(i + 1))));
        } else {
            kb.push(KlmStatement::defeasible(x(i), x(i + 1)));
        }
    }
    kb.push(KlmStatement::defeasible(x(n - 1), BoolFormula::not(x(0))));
    for _ in 0..n / 4 {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        kb.push(KlmStatement::defeasible(BoolFormula::and(x(a), x(b)), x((a + b) % n)));
    }
    let queries = (0..10)
        .map(|_| {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            KlmStatement::defeasible(x(a), x(b))
        })
        .collect();
    (kb, queries)
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10_000);
    let mut points = Vec::new();
    let mut report = Vec::new();
    for n in [8usize, 16, 32, 64] {
        let (kb, queries) = horn_kb(n, &mut rng);
        let engine = Engine::new(Backend::Dpll);
        let mut best = Duration::MAX;
        let mut best_total = Duration::MAX;
        let mut calls = 0;
        for _ in 0..5 {
            engine.reset_stats();
            let start = Instant::now();
            let rc = RationalClosure::with_engine(&engine, &kb);
            for q in &queries {
                rc.entails(&engine, q);
            }
            let total = start.elapsed();
            let stats = engine.stats();
            ensure!(stats.decisions == 0, "n={n}: {} case splits on a Horn family", stats.decisions);
            calls = stats.calls;
            best = best.min(total / stats.calls as u32);
            best_total = best_total.min(total);
        }
        let m = kb.len();
        points.push(((m as f64).ln(), best.as_secs_f64().ln()));
        report.push(format!("n={n} m={m} calls={calls} per-call={:.1}us total={:.2}ms", best.as_secs_f64() * 1e6, best_total.as_secs_f64() * 1e3));
    }
    let k = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let slope = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / points.iter().map(|(x, _)| (x - mx).powi(2)).sum::<f64>();
    ensure!(slope < 2.0, "per-call time grows with exponent {slope:.2}: {}", report.join("; "));
    Ok(format!("0 case splits; per-call log-log slope {slope:.2}; {}", report.join("; ")))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("golden ranked model of the birds knowledge base", Duration::from_secs(1), criterion_1),
        ("golden standpoint split of the tomato knowledge base", Duration::from_secs(1), criterion_2),
        ("golden non-monotonicity pair", Duration::from_secs(1), criterion_3),
        ("golden representative structure of the tomato knowledge base", Duration::from_secs(5), criterion_4),
        ("representation theorem, propositional", Duration::from_secs(60), criterion_5),
        ("minimality oracle", Duration::from_secs(120), criterion_6),
        ("algorithm versus representative structure", Duration::from_secs(120), criterion_7),
        ("normalization equivalence", Duration::from_secs(120), criterion_8),
        ("representative structures are models", Duration::from_secs(120), criterion_9),
        ("Horn fast path", Duration::from_secs(120), criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}

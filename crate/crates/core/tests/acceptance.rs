//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! All comparisons are exact; there are no numeric tolerances.

use std::collections::BTreeSet;
use std::process::ExitCode;

use gamma2::complex::{assemble, build_b_mod2, vertex_stabilizer};
use gamma2::exactmat::enumerate_gl_mod2;
use gamma2::membership::factor;
use gamma2::parallel::Execution;
use gamma2::presentations::{gamma2_generators, gamma2_presentation};
use gamma2::schreier::{build_coset_system, derive_gamma2_2, schreier_table};
use gamma2::verifier::{
    check_appendix_identities, check_edge_systems, check_theorem_presentation, cross_check_abelianization,
    roundtrip_suite, Report, ASSIGNMENTS,
};
use gamma2::words::power;
use gamma2::{generator_matrix, parse_word, IntMatrix, Word};

const TABLE: &str = include_str!("golden/table1.txt");
const S_WORDS: &str = include_str!("golden/s_words.txt");
const SEED: u64 = 7;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report_ok(r: &Report) -> Result<(), String> {
    match r.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!(
            "{}: {} failed, first {} ({})",
            r.suite,
            r.failed(),
            c.label,
            c.detail.clone().unwrap_or_default()
        )),
    }
}

fn golden_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// `(w)^k` or a plain word.
fn displayed_word(text: &str) -> Word {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix('(') {
        let (inner, exp) = rest.rsplit_once(")^").expect("group with exponent");
        power(&parse_word(inner).unwrap(), exp.parse().unwrap())
    } else {
        parse_word(t).unwrap()
    }
}

fn relator_validity() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=6 {
        let r = check_theorem_presentation(n);
        report_ok(&r)?;
        counts.push(gamma2_presentation(n).relators.len());
    }
    ensure(counts[..3] == [1, 7, 37], || format!("counts {counts:?}"))?;
    Ok(format!("n = 1..6 all relators trivial, counts {counts:?}"))
}

fn table_reproduction() -> Outcome {
    let table = schreier_table().map_err(|e| e.to_string())?;
    let mut cells = 0;
    for line in golden_lines(TABLE) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let (coset, letter, matrix, symbol) = (f[0], f[1], f[2], f[3]);
        let i: usize = coset.parse().unwrap();
        let cell = table[i]
            .iter()
            .find(|c| c.w.to_string() == letter)
            .ok_or_else(|| format!("no cell for {letter} at {i}"))?;
        let want: IntMatrix = matrix.parse().unwrap();
        ensure(cell.value == want && cell.symbol.to_string() == symbol, || {
            format!("cell ({i}, {letter}): got {} {}", cell.value, cell.symbol)
        })?;
        cells += 1;
    }
    ensure(cells == 30 && table.iter().map(Vec::len).sum::<usize>() == 30, || {
        format!("{cells} golden cells")
    })?;
    Ok("30/30 cells match".into())
}

fn rewriting_reproduction() -> Outcome {
    let sys = build_coset_system().map_err(|e| e.to_string())?;
    let mut n = 0;
    for line in golden_lines(S_WORDS) {
        let (r, rest) = line.split_once(' ').unwrap();
        let (i, word) = rest.split_once(' ').unwrap();
        let (r, i): (usize, usize) = (r.parse().unwrap(), i.parse().unwrap());
        let got = sys.rewrite_relator(&sys.ambient.relators[r], i).map_err(|e| e.to_string())?;
        let want = displayed_word(word);
        ensure(got.to_string() == want.to_string(), || format!("relator {r} coset {i}: {got}"))?;
        n += 1;
    }
    ensure(n == 24, || format!("{n} displayed words"))?;
    Ok(format!("{n}/24 rewritten relators match"))
}

fn pipeline_endpoint() -> Outcome {
    let d = derive_gamma2_2().map_err(|e| e.to_string())?;
    let target = gamma2_presentation(2);
    ensure(d.presentation.generator_set() == target.generator_set(), || "generator sets differ".into())?;
    ensure(
        d.presentation.relator_normal_forms() == target.relator_normal_forms(),
        || format!("{:?}", d.mismatches),
    )?;
    Ok(format!("{} relators, normal forms identical", d.presentation.relators.len()))
}

fn complex_combinatorics() -> Outcome {
    let b = build_b_mod2(3).map_err(|e| e.to_string())?;
    ensure(b.counts() == [7, 21, 28], || format!("counts {:?}", b.counts()))?;
    let missing: BTreeSet<Vec<usize>> = b
        .missing_triples()
        .into_iter()
        .map(|t| t.into_iter().map(|v| v + 1).collect())
        .collect();
    let listed: BTreeSet<Vec<usize>> = [
        [1, 2, 4],
        [1, 3, 5],
        [1, 6, 7],
        [2, 3, 6],
        [2, 5, 7],
        [3, 4, 7],
        [4, 5, 6],
    ]
    .iter()
    .map(|t| t.to_vec())
    .collect();
    ensure(missing == listed, || format!("missing triples {missing:?}"))?;
    let g2 = enumerate_gl_mod2(2).map_err(|e| e.to_string())?.len();
    let g3 = enumerate_gl_mod2(3).map_err(|e| e.to_string())?.len();
    ensure(g2 == 6 && g3 == 168, || format!("|GL(2)| = {g2}, |GL(3)| = {g3}"))?;
    Ok("7/21/28 simplices, 7 missing triples, 6 and 168 invertible matrices".into())
}

fn stabilizer_contracts() -> Outcome {
    for k in 1..=7 {
        let s = vertex_stabilizer(k).map_err(|e| e.to_string())?;
        s.check().map_err(|e| format!("v{k}: {e}"))?;
    }
    let r = check_edge_systems();
    report_ok(&r)?;
    Ok(format!("7 vertex systems, edge suite {}/{}", r.passed(), r.checks.len()))
}

fn assembly() -> Outcome {
    let mut parts = Vec::new();
    for n in 3..=5 {
        let a = assemble(n, Execution::default()).map_err(|e| e.to_string())?;
        let p = &a.presentation;
        for r in &p.relators {
            let m = p.evaluate(r).map_err(|e| e.to_string())?;
            ensure(m.is_identity(), || format!("n={n}: relator {r} is not trivial"))?;
        }
        let matrices: BTreeSet<IntMatrix> = p
            .generators
            .iter()
            .map(|g| p.matrix_of(g).unwrap())
            .collect();
        for g in gamma2_generators(n) {
            let m = generator_matrix(&g, n).unwrap();
            ensure(matrices.contains(&m), || format!("n={n}: {g} missing"))?;
        }
        let id: BTreeSet<_> = a.identified.generators.iter().cloned().collect();
        if n >= 4 {
            ensure(id == gamma2_generators(n).into_iter().collect(), || {
                format!("n={n}: identified generators differ")
            })?;
        }
        parts.push(format!("n={n}: {} generators, {} relators", p.generators.len(), p.relators.len()));
    }
    Ok(parts.join("; "))
}

fn membership() -> Outcome {
    for n in 2..=5 {
        report_ok(&roundtrip_suite(n, 100, 20, SEED))?;
    }
    for n in 1..=5 {
        let w = factor(&IntMatrix::identity(n)).map_err(|e| e.to_string())?;
        ensure(w.is_empty(), || format!("identity factors as {w}"))?;
    }
    for bad in ["1,1;0,1", "3,0;0,1", "0,1;1,0", "1,2,0;0,1,0;0,0,3"] {
        let m: IntMatrix = bad.parse().unwrap();
        ensure(factor(&m).is_err(), || format!("{bad} was factored"))?;
    }
    Ok("400/400 round trips, identity empty, non-members rejected".into())
}

fn appendix() -> Outcome {
    let r = check_appendix_identities();
    report_ok(&r)?;
    for (j, k) in ASSIGNMENTS {
        let tag = format!("(j,k)=({j},{k})");
        ensure(r.checks.iter().any(|c| c.label.ends_with(&tag)), || format!("no check for {tag}"))?;
    }
    Ok(format!("{}/{} checks", r.passed(), r.checks.len()))
}

fn consistency() -> Outcome {
    let r = cross_check_abelianization();
    report_ok(&r)?;
    let value = r.checks[0].detail.clone().unwrap_or_default();
    Ok(format!("three routes agree on {value}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("relator validity", relator_validity),
        ("rewriting table", table_reproduction),
        ("rewritten relators", rewriting_reproduction),
        ("pipeline endpoint", pipeline_endpoint),
        ("complex combinatorics", complex_combinatorics),
        ("stabilizer contracts", stabilizer_contracts),
        ("assembly", assembly),
        ("membership", membership),
        ("appendix identities", appendix),
        ("abelianization consistency", consistency),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", k + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Batch checks with machine-readable reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{edge_families, edge_stabilizer_data, vertex_stabilizer};
use crate::error::{Error, Result};
use crate::exactmat::{GeneratorId, IntMatrix};
use crate::membership::factor;
use crate::parallel::{self, Execution};
use crate::presentations::{
    abelianization_invariants, gamma2_generators, gamma2_relators_by_family, AbelianInvariants, Family,
    Presentation,
};
use crate::schreier::derive_gamma2_2;
use crate::words::{commutator, conjugate, evaluate, evaluate_with, parse_word, power, Letter, Word};

const MANIFEST: &str = include_str!("../data/appendix_manifest.txt");
const SUBSTITUTIONS: &str = include_str!("../data/appendix_substitutions.txt");

/// Number of displays recorded in the appendix manifest.
pub const MANIFEST_ITEMS: usize = 51;

/// Largest `n` for the theorem check.
pub const THEOREM_BOUND: usize = 6;

/// Index assignments `(j, k)` used with `i = 1`.
pub const ASSIGNMENTS: [(usize, usize); 2] = [(2, 3), (3, 2)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(label: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            status: Status::Pass,
            detail: None,
        }
    }

    pub fn fail(label: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            status: Status::Fail,
            detail: Some(detail.into()),
        }
    }

    /// Pass with an informational note.
    pub fn note(label: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            detail: Some(detail.into()),
            ..Check::pass(label)
        }
    }

    fn from_result(label: impl Into<String>, r: Result<()>) -> Self {
        match r {
            Ok(()) => Check::pass(label),
            Err(e) => Check::fail(label, e.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    suite: &'a str,
    passed: usize,
    failed: usize,
    checks: &'a [Check],
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ReportJson {
            suite: &self.suite,
            passed: self.passed(),
            failed: self.failed(),
            checks: &self.checks,
        })
        .expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}/{} passed", self.suite, self.passed(), self.checks.len())?;
        for c in &self.checks {
            let tag = if c.passed() { "pass" } else { "FAIL" };
            match &c.detail {
                Some(d) => writeln!(f, "  {tag} {}: {d}", c.label)?,
                None => writeln!(f, "  {tag} {}", c.label)?,
            }
        }
        Ok(())
    }
}

fn identity_check(label: String, p: &Presentation, w: &Word) -> Check {
    match p.evaluate(w) {
        Ok(m) if m.is_identity() => Check::pass(label),
        Ok(m) => Check::fail(label, format!("evaluates to {m}")),
        Err(e) => Check::fail(label, e.to_string()),
    }
}

/// Every relator of the level 2 presentation evaluates to the identity, and
/// the generator and family counts match their closed forms.
pub fn check_theorem_presentation(n: usize) -> Report {
    check_theorem_presentation_with(n, Execution::default())
}

pub fn check_theorem_presentation_with(n: usize, exec: Execution) -> Report {
    let mut report = Report::new(format!("theorem n={n}"));
    if !(1..=THEOREM_BOUND).contains(&n) {
        report.push(Check::fail(
            "dimension",
            format!("n = {n} is outside 1..={THEOREM_BOUND}"),
        ));
        return report;
    }
    let gens = gamma2_generators(n);
    let gen_check = if gens.len() == n * n {
        Check::pass("generator count")
    } else {
        Check::fail("generator count", format!("{} generators, expected {}", gens.len(), n * n))
    };
    report.push(gen_check);
    let by_family = gamma2_relators_by_family(n);
    for fam in Family::ALL {
        let got = by_family.iter().filter(|(f, _)| *f == fam).count();
        let want = fam.expected_count(n);
        let label = format!("family {fam} count");
        report.push(if got == want {
            Check::pass(label)
        } else {
            Check::fail(label, format!("{got} relators, expected {want}"))
        });
    }
    let p = Presentation::new(n, gens, Vec::new());
    let checks = parallel::map(exec, &by_family, |(fam, w)| {
        identity_check(format!("family {fam}: {w}"), &p, w)
    });
    report.checks.extend(checks);
    report
}

/// Expression syntax of the appendix manifest: words in `E(a,b)`, `F(a)`
/// with indices `i`, `j`, `k` or digits, groups `(w)^k`, commutators `[u, v]`.
struct Expr<'a> {
    text: &'a str,
    pos: usize,
    ijk: (usize, usize, usize),
}

impl<'a> Expr<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn peek(&mut self) -> Option<u8> {
        while self.text.as_bytes().get(self.pos) == Some(&b' ') {
            self.pos += 1;
        }
        self.text.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn index(&mut self) -> Result<usize> {
        let c = self.peek().ok_or_else(|| self.err("expected an index"))?;
        self.pos += 1;
        match c {
            b'i' => Ok(self.ijk.0),
            b'j' => Ok(self.ijk.1),
            b'k' => Ok(self.ijk.2),
            b'1'..=b'9' => Ok((c - b'0') as usize),
            _ => Err(self.err("expected an index")),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let start = self.pos;
        if self.text.as_bytes().get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.text.as_bytes().get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "expected an exponent"))
    }

    fn sequence(&mut self) -> Result<Word> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            let base = match c {
                b'E' | b'F' => {
                    self.pos += 1;
                    self.eat(b'(')?;
                    let a = self.index()?;
                    let g = if c == b'E' {
                        self.eat(b',')?;
                        GeneratorId::E(a, self.index()?)
                    } else {
                        GeneratorId::F(a)
                    };
                    self.eat(b')')?;
                    Word::generator(g)
                }
                b'(' => {
                    self.pos += 1;
                    let w = self.sequence()?;
                    self.eat(b')')?;
                    w
                }
                b'[' => {
                    self.pos += 1;
                    let u = self.sequence()?;
                    self.eat(b',')?;
                    let v = self.sequence()?;
                    self.eat(b']')?;
                    commutator(&u, &v)
                }
                _ => break,
            };
            parts.push(power(&base, self.exponent()?));
        }
        Ok(Word::product(&parts))
    }
}

/// Parse one manifest expression with `i, j, k` bound to `ijk`.
pub fn parse_manifest_word(text: &str, ijk: (usize, usize, usize)) -> Result<Word> {
    let mut e = Expr { text, pos: 0, ijk };
    let w = e.sequence()?;
    if e.peek().is_some() {
        return Err(e.err("unexpected character"));
    }
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// The first line is a relator, so every line is.
    Identity,
    /// Every line equals the first, conjugation steps up to conjugacy.
    Equal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Start,
    Eq,
    Conj,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifestItem {
    Chain {
        label: String,
        kind: ChainKind,
        reconstructed: bool,
        lines: Vec<(Step, String)>,
    },
    /// A template relator, checked for every index assignment.
    Relator { label: String, text: String },
    /// A relator with literal indices.
    Fixed { label: String, text: String },
}

impl ManifestItem {
    pub fn label(&self) -> &str {
        match self {
            ManifestItem::Chain { label, .. }
            | ManifestItem::Relator { label, .. }
            | ManifestItem::Fixed { label, .. } => label,
        }
    }
}

/// Parse the manifest format. Error positions are line numbers.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestItem>> {
    let mut items = Vec::new();
    let mut open: Option<ManifestItem> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let (head, rest) = s.split_once(' ').unwrap_or((s, ""));
        let rest = rest.trim();
        match (head, open.as_mut()) {
            ("chain", None) => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                let kind = match f.get(1) {
                    Some(&"identity") => ChainKind::Identity,
                    Some(&"equal") => ChainKind::Equal,
                    _ => return Err(Error::parse(line, "chain needs a kind")),
                };
                let reconstructed = match f.get(2) {
                    None => false,
                    Some(&"reconstructed") => true,
                    Some(other) => return Err(Error::parse(line, format!("unknown flag {other:?}"))),
                };
                open = Some(ManifestItem::Chain {
                    label: f[0].to_string(),
                    kind,
                    reconstructed,
                    lines: Vec::new(),
                });
            }
            ("start" | "eq" | "conj", Some(ManifestItem::Chain { lines, .. })) => {
                let step = match head {
                    "start" => Step::Start,
                    "eq" => Step::Eq,
                    _ => Step::Conj,
                };
                if (step == Step::Start) != lines.is_empty() {
                    return Err(Error::parse(line, "`start` must open a chain"));
                }
                lines.push((step, rest.to_string()));
            }
            ("end", Some(_)) => items.push(open.take().expect("open chain")),
            ("relator" | "fixed", None) => {
                let (label, text) = rest
                    .split_once(' ')
                    .ok_or_else(|| Error::parse(line, "expected a label and a word"))?;
                let (label, text) = (label.to_string(), text.trim().to_string());
                items.push(if head == "relator" {
                    ManifestItem::Relator { label, text }
                } else {
                    ManifestItem::Fixed { label, text }
                });
            }
            _ => return Err(Error::parse(line, format!("unexpected {head:?}"))),
        }
    }
    if open.is_some() {
        return Err(Error::parse(text.lines().count(), "unterminated chain"));
    }
    Ok(items)
}

pub fn appendix_manifest() -> Result<Vec<ManifestItem>> {
    parse_manifest(MANIFEST)
}

/// Characteristic polynomial coefficients, leading coefficient first.
pub fn characteristic_polynomial(a: &IntMatrix) -> Vec<BigInt> {
    // Faddeev-LeVerrier; the divisions are exact.
    let n = a.dim();
    let mut coeffs = vec![BigInt::from(1)];
    let mut m = IntMatrix::identity(n);
    for k in 1..=n {
        let am = a.mul(&m);
        let trace: BigInt = (1..=n).map(|i| am.entry(i, i).clone()).sum();
        let c = -trace / BigInt::from(k);
        let mut next = am;
        for i in 1..=n {
            *next.at_mut(i - 1, i - 1) += &c;
        }
        coeffs.push(c);
        m = next;
    }
    coeffs
}

fn eval3(w: &Word) -> Result<IntMatrix> {
    evaluate(w, 3)
}

fn check_chain(kind: ChainKind, lines: &[(Step, String)], ijk: (usize, usize, usize)) -> Result<()> {
    let mut first: Option<IntMatrix> = None;
    let mut prev: Option<IntMatrix> = None;
    for (k, (step, text)) in lines.iter().enumerate() {
        let m = eval3(&parse_manifest_word(text, ijk)?)?;
        let fail = |what: &str| Err(Error::Consistency(format!("line {} ({what})", k + 1)));
        match kind {
            ChainKind::Identity => {
                if !m.is_identity() {
                    return fail("not the identity");
                }
            }
            ChainKind::Equal => match step {
                Step::Start => {}
                Step::Eq => {
                    if Some(&m) != first.as_ref() {
                        return fail("differs from the first line");
                    }
                }
                Step::Conj => {
                    let p = prev.as_ref().expect("conj follows a line");
                    if characteristic_polynomial(&m) != characteristic_polynomial(p) {
                        return fail("not conjugate to the previous line");
                    }
                }
            },
        }
        if first.is_none() {
            first = Some(m.clone());
        }
        prev = Some(m);
    }
    Ok(())
}

fn check_substitutions() -> Result<usize> {
    let eval: BTreeMap<GeneratorId, IntMatrix> = (1..=7)
        .map(vertex_stabilizer)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flat_map(|s| s.generators.into_iter().map(|g| (g.label, g.matrix)))
        .collect();
    let lookup = |g: &GeneratorId| {
        eval.get(g)
            .cloned()
            .ok_or_else(|| Error::InvalidGenerator(g.to_string()))
    };
    let mut count = 0;
    for (k, raw) in SUBSTITUTIONS.lines().enumerate() {
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let (lhs, rhs) = s
            .split_once('=')
            .ok_or_else(|| Error::parse(k + 1, "expected `label = word`"))?;
        let target = lookup(&GeneratorId::named(lhs.trim()))?;
        let w = parse_word(rhs)?;
        if w.symbols().any(|g| !g.to_string().starts_with("v1_") && !g.to_string().starts_with("v2_")) {
            return Err(Error::Consistency(format!("line {}: word leaves vertices 1 and 2", k + 1)));
        }
        if evaluate_with(&w, 3, lookup)? != target {
            return Err(Error::Consistency(format!("line {}: {} has a different matrix", k + 1, lhs.trim())));
        }
        count += 1;
    }
    Ok(count)
}

/// Every displayed appendix identity, evaluated at `n = 3` with `i = 1` and
/// both assignments of `(j, k)`.
pub fn check_appendix_identities() -> Report {
    let mut report = Report::new("appendix");
    let items = match appendix_manifest() {
        Ok(items) => items,
        Err(e) => {
            report.push(Check::fail("manifest", e.to_string()));
            return report;
        }
    };
    report.push(if items.len() == MANIFEST_ITEMS {
        Check::pass(format!("manifest covers {MANIFEST_ITEMS} displays"))
    } else {
        Check::fail("manifest count", format!("{} items, expected {MANIFEST_ITEMS}", items.len()))
    });
    for item in &items {
        match item {
            ManifestItem::Chain {
                label,
                kind,
                reconstructed,
                lines,
            } => {
                for (j, k) in ASSIGNMENTS {
                    let name = format!("{label} (j,k)=({j},{k})");
                    let c = Check::from_result(name.clone(), check_chain(*kind, lines, (1, j, k)));
                    report.push(if c.passed() && *reconstructed {
                        Check::note(name, "reconstructed reading of primed symbols")
                    } else {
                        c
                    });
                }
            }
            ManifestItem::Relator { label, text } => {
                for (j, k) in ASSIGNMENTS {
                    let name = format!("{label} (j,k)=({j},{k})");
                    let r = parse_manifest_word(text, (1, j, k))
                        .and_then(|w| eval3(&w))
                        .and_then(|m| {
                            if m.is_identity() {
                                Ok(())
                            } else {
                                Err(Error::Consistency(format!("evaluates to {m}")))
                            }
                        });
                    report.push(Check::from_result(name, r));
                }
            }
            ManifestItem::Fixed { label, text } => {
                let r = parse_manifest_word(text, (0, 0, 0)).and_then(|w| eval3(&w)).and_then(|m| {
                    if m.is_identity() {
                        Ok(())
                    } else {
                        Err(Error::Consistency(format!("evaluates to {m}")))
                    }
                });
                report.push(Check::from_result(label.clone(), r));
            }
        }
    }
    report.push(match check_substitutions() {
        Ok(count) => Check::note("substitutions", format!("{count} generator substitutions agree")),
        Err(e) => Check::fail("substitutions", e.to_string()),
    });
    report
}

/// Edge stabilizers at `n = 3`: membership, fixed endpoints, and agreement
/// of the matrix sets within each family.
pub fn check_edge_systems() -> Report {
    let mut report = Report::new("edges");
    let data = match edge_stabilizer_data() {
        Ok(d) => d,
        Err(e) => {
            report.push(Check::fail("edge data", e.to_string()));
            return report;
        }
    };
    report.push(if data.len() == 21 {
        Check::pass("21 edges")
    } else {
        Check::fail("edge count", format!("{} edges", data.len()))
    });
    for ((a, b), sys) in &data {
        report.push(Check::from_result(format!("edge v{a}-v{b}"), sys.check()));
    }
    match edge_families() {
        Ok(families) => {
            let sizes: Vec<usize> = families.iter().map(|f| f.edges.len()).collect();
            let shape_ok = sizes.iter().filter(|&&s| s == 3).count() == 6
                && sizes.iter().filter(|&&s| s == 1).count() == 3;
            report.push(if shape_ok {
                Check::pass("six shared families and three single edges")
            } else {
                Check::fail("family shape", format!("family sizes {sizes:?}"))
            });
            for fam in &families {
                let sets: Vec<BTreeSet<IntMatrix>> = fam
                    .edges
                    .iter()
                    .map(|&(a, b)| {
                        data.get(&(a.min(b), a.max(b)))
                            .map(|s| s.generators.iter().map(|g| g.matrix.clone()).collect())
                            .unwrap_or_default()
                    })
                    .collect();
                let names: Vec<String> = fam.edges.iter().map(|(a, b)| format!("v{a}-v{b}")).collect();
                let label = format!("family {}", names.join(" "));
                report.push(if sets.windows(2).all(|w| w[0] == w[1]) && !sets[0].is_empty() {
                    Check::pass(label)
                } else {
                    Check::fail(label, "matrix sets differ")
                });
            }
        }
        Err(e) => report.push(Check::fail("families", e.to_string())),
    }
    report
}

/// A seeded random word of length at most `max_len` in the level 2 generators.
pub fn random_word(rng: &mut impl Rng, n: usize, max_len: usize) -> Word {
    let gens = gamma2_generators(n);
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let g = gens[rng.gen_range(0..gens.len())].clone();
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            Word::from_letters(vec![Letter::new(g, e)])
        })
        .collect::<Vec<_>>();
    Word::product(&letters)
}

/// Random words are evaluated, factored, and re-evaluated.
pub fn roundtrip_suite(n: usize, trials: usize, max_len: usize, seed: u64) -> Report {
    roundtrip_suite_with(n, trials, max_len, seed, Execution::default())
}

pub fn roundtrip_suite_with(n: usize, trials: usize, max_len: usize, seed: u64, exec: Execution) -> Report {
    let mut report = Report::new(format!("roundtrip n={n} seed={seed}"));
    if n < 2 {
        report.push(Check::fail("dimension", "round trips need n >= 2"));
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<Word> = (0..trials).map(|_| random_word(&mut rng, n, max_len)).collect();
    let width = trials.to_string().len();
    let checks = parallel::map_range(exec, trials, |t| {
        let label = format!("trial {t:0width$}");
        let r = (|| {
            let m = evaluate(&words[t], n)?;
            let f = factor(&m)?;
            if evaluate(&f, n)? != m {
                return Err(Error::Consistency(format!("factor of {} evaluates differently", words[t])));
            }
            if m.is_identity() && !f.is_empty() {
                return Err(Error::Consistency("identity factored to a nonempty word".into()));
            }
            Ok(())
        })();
        Check::from_result(label, r)
    });
    report.checks.extend(checks);
    report
}

/// Abelian invariants of the level 2 group at `n = 2` along three routes:
/// the stated presentation, the derived one, and the rewritten relators on
/// the four subgroup generators.
pub fn cross_check_abelianization() -> Report {
    let mut report = Report::new("abelianization");
    let stated = crate::presentations::gamma2_presentation(2);
    let a = abelianization_invariants(&stated);
    let derivation = match derive_gamma2_2() {
        Ok(d) => d,
        Err(e) => {
            report.push(Check::fail("derivation", e.to_string()));
            return report;
        }
    };
    let b = abelianization_invariants(&derivation.presentation);
    let c = abelianization_invariants(&derivation.g_presentation);
    let same = |label: &str, x: &AbelianInvariants, y: &AbelianInvariants| {
        if x == y {
            Check::note(label, x.to_string())
        } else {
            Check::fail(label, format!("{x} vs {y}"))
        }
    };
    report.push(same("stated vs derived", &a, &b));
    report.push(same("stated vs rewritten", &a, &c));

    let mut permuted = stated.clone();
    permuted.relators.reverse();
    permuted.relators.rotate_left(3);
    report.push(same("relator order", &a, &abelianization_invariants(&permuted)));

    let mut redundant = stated.clone();
    let g = Word::generator(stated.generators[1].clone());
    redundant.relators.push(conjugate(&stated.relators[3], &g));
    report.push(same("redundant conjugate", &a, &abelianization_invariants(&redundant)));

    let gens_ok = a.free_rank + a.torsion.iter().filter(|d| !d.is_zero()).count() <= stated.generators.len();
    report.push(if gens_ok {
        Check::pass("rank bound")
    } else {
        Check::fail("rank bound", "more invariants than generators")
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_reports() {
        let r = check_theorem_presentation(2);
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.checks.len(), 1 + 5 + 7);
        assert_eq!(check_theorem_presentation(1).passed(), 1 + 5 + 1);
        assert!(!check_theorem_presentation(7).all_passed());
    }

    #[test]
    fn manifest_expressions() {
        let w = parse_manifest_word("[E(j,i), F(k)] (E(i,j))^-2", (1, 2, 3)).unwrap();
        let expected = parse_word("E(2,1)^-1 F(3)^-1 E(2,1) F(3) E(1,2)^-2").unwrap();
        assert_eq!(w, expected);
        assert!(parse_manifest_word("E(i,q)", (1, 2, 3)).is_err());
    }

    #[test]
    fn charpoly() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        let want: Vec<BigInt> = [1, -5, 5].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(characteristic_polynomial(&a), want);
    }

    #[test]
    fn appendix_passes() {
        let r = check_appendix_identities();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn report_json_shape() {
        let mut r = Report::new("demo");
        r.push(Check::pass("a"));
        r.push(Check::fail("b", "broken"));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["passed"], 1);
        assert_eq!(v["failed"], 1);
        assert_eq!(v["checks"][1]["status"], "fail");
        assert!(v["checks"][0].get("detail").is_none());
    }

    #[test]
    fn roundtrip_small() {
        assert!(roundtrip_suite(2, 30, 10, 7).all_passed());
        let empty = roundtrip_suite(2, 1, 0, 1);
        assert!(empty.all_passed());
    }
}

//! Reidemeister-Schreier rewriting for the level 2 subgroup of `GL(2, Z)`.
//!
//! The ambient group is presented on `x, y, z`; cosets of the subgroup are
//! indexed by a fixed Schreier transversal `a0..a5` and identified through
//! their mod-2 images. Subgroup generators are named `g1..g4`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::exactmat::{is_level2, mod2_image, GeneratorId, IntMatrix, Mod2Matrix};
use crate::parallel::{self, Execution};
use crate::presentations::{gamma2_presentation, gl2z_presentation, Presentation};
use crate::words::{cyclic_normal_form, free_reduce, inverse, parse_word, power, Letter, Word};

/// Transversal words, in coset order.
pub const TRANSVERSAL: [&str; 6] = ["1", "x^-1", "y", "z", "x^-1 z", "y z"];

/// The table columns: `x, x^-1, y, y^-1, z`.
pub fn table_letters() -> Vec<Letter> {
    [("x", 1), ("x", -1), ("y", 1), ("y", -1), ("z", 1)]
        .into_iter()
        .map(|(s, e)| Letter::new(GeneratorId::named(s), e))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Representative {
    pub index: usize,
    pub word: Word,
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug)]
pub struct CosetSystem {
    pub ambient: Presentation,
    pub transversal: Vec<Representative>,
    /// `action[(letter, i)]` is the coset of `letter * a_i`.
    pub action: BTreeMap<(Letter, usize), usize>,
    images: Vec<Mod2Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteCell {
    pub w: Letter,
    pub i: usize,
    pub value: IntMatrix,
    /// `g1..g4`, `g1^-1`, `g3^-1` or the empty word.
    pub symbol: Word,
}

pub fn subgroup_generators() -> [(GeneratorId, IntMatrix); 4] {
    [
        (GeneratorId::named("g1"), IntMatrix::from_i64(&[&[1, 2], &[0, 1]])),
        (GeneratorId::named("g2"), IntMatrix::from_i64(&[&[1, 2], &[0, -1]])),
        (GeneratorId::named("g3"), IntMatrix::from_i64(&[&[1, 0], &[2, 1]])),
        (GeneratorId::named("g4"), IntMatrix::from_i64(&[&[-1, 0], &[2, 1]])),
    ]
}

/// Name of a cell value over `g1..g4`: the four generators, the inverses of
/// `g1` and `g3`, or the identity.
pub fn classify(value: &IntMatrix) -> Option<Word> {
    if value.is_identity() {
        return Some(Word::empty());
    }
    for (g, m) in subgroup_generators() {
        if &m == value {
            return Some(Word::generator(g));
        }
        let name = g.to_string();
        if (name == "g1" || name == "g3") && m.inverse().ok().as_ref() == Some(value) {
            return Some(Word::letter(g, -1));
        }
    }
    None
}

impl CosetSystem {
    pub fn build() -> Result<Self> {
        let ambient = gl2z_presentation();
        let mut transversal = Vec::new();
        let mut images = Vec::new();
        for (index, text) in TRANSVERSAL.iter().enumerate() {
            let word = parse_word(text)?;
            let matrix = ambient.evaluate(&word)?;
            let image = mod2_image(&matrix);
            if images.contains(&image) {
                return Err(Error::Consistency(format!(
                    "representative a{index} repeats a mod-2 image"
                )));
            }
            images.push(image);
            transversal.push(Representative {
                index,
                word,
                matrix,
            });
        }
        let mut sys = CosetSystem {
            ambient,
            transversal,
            action: BTreeMap::new(),
            images,
        };
        for letter in table_letters() {
            let m = sys.letter_matrix(&letter)?;
            for i in 0..6 {
                let target = sys.bar(&m.mul(&sys.transversal[i].matrix))?;
                sys.action.insert((letter.clone(), i), target);
            }
        }
        Ok(sys)
    }

    pub fn letter_matrix(&self, letter: &Letter) -> Result<IntMatrix> {
        self.ambient.matrix_of(&letter.symbol)?.pow(letter.exponent)
    }

    /// Coset index of `A`.
    pub fn bar(&self, a: &IntMatrix) -> Result<usize> {
        let image = mod2_image(a);
        self.images
            .iter()
            .position(|m| *m == image)
            .ok_or_else(|| Error::Precondition(format!("{a} is not unimodular of size 2")))
    }

    /// `bar(w a_i)^-1 w a_i` for a unit letter `w`.
    pub fn cell(&self, w: &Letter, i: usize) -> Result<RewriteCell> {
        let wa = self.letter_matrix(w)?.mul(&self.transversal[i].matrix);
        let j = self.bar(&wa)?;
        let value = self.transversal[j].matrix.inverse()?.mul(&wa);
        let symbol = classify(&value).ok_or_else(|| {
            Error::Consistency(format!("cell ({w}, {i}) = {value} is outside the generating set"))
        })?;
        if !is_level2(&value) {
            return Err(Error::Consistency(format!("cell ({w}, {i}) leaves the subgroup")));
        }
        Ok(RewriteCell {
            w: w.clone(),
            i,
            value,
            symbol,
        })
    }

    /// Coset of `w a0`.
    pub fn coset_of(&self, w: &Word) -> Result<usize> {
        self.bar(&self.ambient.evaluate(w)?)
    }

    /// The rewritten relator `s_ri`: the product over the letters `r_j` of
    /// `bar(r_j a_c)^-1 r_j a_c`, where `a_c` is the coset of the suffix after
    /// `r_j` applied to `a_i`.
    pub fn rewrite_relator(&self, r: &Word, i: usize) -> Result<Word> {
        if i >= self.transversal.len() {
            return Err(Error::IndexOutOfRange {
                what: format!("coset {i}"),
                n: self.transversal.len(),
            });
        }
        let m = self.ambient.evaluate(r)?;
        if !m.is_identity() {
            return Err(Error::Precondition(format!("{r} is not a relator")));
        }
        let mut units = Vec::new();
        for l in r.letters() {
            let unit = l.exponent.signum();
            for _ in 0..l.exponent.abs() {
                units.push(Letter::new(l.symbol.clone(), unit));
            }
        }
        let mut coset = i;
        let mut factors = Vec::with_capacity(units.len());
        for letter in units.iter().rev() {
            let cell = self.cell(letter, coset)?;
            coset = self.bar(&self.letter_matrix(letter)?.mul(&self.transversal[coset].matrix))?;
            factors.push(cell.symbol);
        }
        factors.reverse();
        Ok(Word::product(factors.iter()))
    }
}

pub fn build_coset_system() -> Result<CosetSystem> {
    CosetSystem::build()
}

/// All 30 cells, one row per coset, columns in [`table_letters`] order.
pub fn schreier_table() -> Result<Vec<Vec<RewriteCell>>> {
    let sys = CosetSystem::build()?;
    (0..6)
        .map(|i| table_letters().iter().map(|w| sys.cell(w, i)).collect())
        .collect()
}

/// Table rendered as aligned text.
pub fn table_text(table: &[Vec<RewriteCell>]) -> String {
    let mut rows = vec![std::iter::once("i".to_string())
        .chain(table_letters().iter().map(|l| format!("w={l}")))
        .collect::<Vec<_>>()];
    for (i, row) in table.iter().enumerate() {
        let mut cells = vec![i.to_string()];
        cells.extend(row.iter().map(|c| format!("{} ({})", c.value, c.symbol)));
        rows.push(cells);
    }
    let width: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            r.iter()
                .zip(&width)
                .map(|(s, w)| format!("{s:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// The rewritten relator for every ambient relator and coset.
#[derive(Clone, Debug)]
pub struct SWord {
    pub relator: usize,
    pub coset: usize,
    pub word: Word,
}

pub fn all_s_words(sys: &CosetSystem, exec: Execution) -> Result<Vec<SWord>> {
    let jobs: Vec<(usize, usize)> = (0..sys.ambient.relators.len())
        .flat_map(|r| (0..6).map(move |i| (r, i)))
        .collect();
    parallel::map(exec, &jobs, |&(r, i)| {
        sys.rewrite_relator(&sys.ambient.relators[r], i)
            .map(|word| SWord {
                relator: r,
                coset: i,
                word,
            })
    })
    .into_iter()
    .collect()
}

/// Drop trivial words and keep the first of each cyclic normal form class.
pub fn dedup_up_to_conjugation(words: impl IntoIterator<Item = Word>) -> Vec<Word> {
    let mut seen = HashSet::new();
    words
        .into_iter()
        .filter(|w| !w.is_empty() && seen.insert(cyclic_normal_form(w)))
        .collect()
}

/// `g1 = E12, g2 = F2 E12, g3 = E21, g4 = F1 E21`.
pub fn substitution() -> BTreeMap<GeneratorId, Word> {
    [
        ("g1", "E(1,2)"),
        ("g2", "F(2) E(1,2)"),
        ("g3", "E(2,1)"),
        ("g4", "F(1) E(2,1)"),
    ]
    .into_iter()
    .map(|(g, w)| (GeneratorId::named(g), parse_word(w).expect("literal word")))
    .collect()
}

fn units(w: &Word) -> Vec<Letter> {
    let mut out = Vec::new();
    for l in w.letters() {
        for _ in 0..l.exponent.abs() {
            out.push(Letter::new(l.symbol.clone(), l.exponent.signum()));
        }
    }
    out
}

/// Reduce exponents of involutions to 0 or 1.
fn fold_involutions(w: &Word, involutions: &BTreeSet<GeneratorId>) -> Word {
    let mut cur = free_reduce(w);
    loop {
        let letters: Vec<Letter> = cur
            .letters()
            .iter()
            .filter_map(|l| {
                if involutions.contains(&l.symbol) {
                    (l.exponent.rem_euclid(2) == 1).then(|| Letter::new(l.symbol.clone(), 1))
                } else {
                    Some(l.clone())
                }
            })
            .collect();
        let next = free_reduce(&Word::from_letters(letters));
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Canonical form up to conjugation, inversion and involution signs.
fn involution_normal_form(w: &Word, involutions: &BTreeSet<GeneratorId>) -> Word {
    let a = cyclic_normal_form(&fold_involutions(w, involutions));
    let b = cyclic_normal_form(&fold_involutions(&inverse(w), involutions));
    let a = cyclic_normal_form(&fold_involutions(&a, involutions));
    let b = cyclic_normal_form(&fold_involutions(&b, involutions));
    a.min(b)
}

/// Rewrite rule `X F X -> F` (and `X^-1 F X^-1 -> F`) read off a relator
/// `(X F)^2` with `F` an involution.
fn braid_rule(w: &Word, involutions: &BTreeSet<GeneratorId>) -> Option<(GeneratorId, GeneratorId)> {
    let nf = involution_normal_form(w, involutions);
    match units(&nf).as_slice() {
        [a, b, c, d] if a == c && b == d && a.symbol != b.symbol => {
            let (x, f) = if involutions.contains(&b.symbol) {
                (a, b)
            } else if involutions.contains(&a.symbol) {
                (b, a)
            } else {
                return None;
            };
            (!involutions.contains(&x.symbol)).then(|| (x.symbol.clone(), f.symbol.clone()))
        }
        _ => None,
    }
}

fn apply_rules_once(w: &Word, rules: &[(GeneratorId, GeneratorId)]) -> Option<Word> {
    let u = units(w);
    let len = u.len();
    if len < 3 {
        return None;
    }
    // search every rotation, so matches across the word ends count
    for start in 0..len {
        for (x, f) in rules {
            for sign in [1, -1] {
                let hit = (0..3).all(|k| {
                    let l = &u[(start + k) % len];
                    if k == 1 {
                        l.symbol == *f
                    } else {
                        l.symbol == *x && l.exponent == sign
                    }
                });
                if hit {
                    let mut rest: Vec<Letter> = (3..len).map(|k| u[(start + k) % len].clone()).collect();
                    rest.insert(0, Letter::new(f.clone(), 1));
                    return Some(free_reduce(&Word::from_letters(rest)));
                }
            }
        }
    }
    None
}

/// Relator simplification using the involutions and the `(X F)^2` relators
/// present in the set. Each relator is rewritten only with rules derived
/// from the other relators; a relator that becomes trivial is dropped, and
/// duplicates up to conjugation, inversion and involution signs are merged.
pub fn involution_tietze(relators: &[Word]) -> Vec<Word> {
    let mut current: Vec<Word> = relators.to_vec();
    loop {
        let mut changed = false;
        let mut k = 0;
        while k < current.len() {
            let others: Vec<&Word> = current
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, w)| w)
                .collect();
            let involutions: BTreeSet<GeneratorId> = others
                .iter()
                .filter_map(|w| match w.letters() {
                    [l] if l.exponent.abs() == 2 => Some(l.symbol.clone()),
                    _ => None,
                })
                .collect();
            let rules: Vec<(GeneratorId, GeneratorId)> = others
                .iter()
                .filter_map(|w| braid_rule(w, &involutions))
                .collect();
            let mut w = fold_involutions(&current[k], &involutions);
            while let Some(next) = apply_rules_once(&w, &rules) {
                w = fold_involutions(&next, &involutions);
            }
            let nf = involution_normal_form(&w, &involutions);
            let duplicate = others
                .iter()
                .any(|o| involution_normal_form(o, &involutions) == nf);
            if nf.is_empty() || duplicate {
                current.remove(k);
                changed = true;
                continue;
            }
            if nf != current[k] {
                current[k] = nf;
                changed = true;
            }
            k += 1;
        }
        if !changed {
            return current;
        }
    }
}

/// Every stage of the derivation of the level 2 presentation at `n = 2`.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub s_words: Vec<SWord>,
    /// Deduplicated rewritten relators over `g1..g4`.
    pub g_presentation: Presentation,
    /// Relators after the substitution, before simplification.
    pub substituted: Vec<Word>,
    pub presentation: Presentation,
    /// Differences against the stated presentation, empty when they agree.
    pub mismatches: Vec<String>,
}

impl Derivation {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn derive_gamma2_2() -> Result<Derivation> {
    derive_gamma2_2_with(Execution::default())
}

pub fn derive_gamma2_2_with(exec: Execution) -> Result<Derivation> {
    let sys = CosetSystem::build()?;
    let s_words = all_s_words(&sys, exec)?;
    let g_relators = dedup_up_to_conjugation(s_words.iter().map(|s| s.word.clone()));
    let g_gens: Vec<GeneratorId> = subgroup_generators().iter().map(|(g, _)| g.clone()).collect();
    let g_presentation = Presentation::new(2, g_gens, g_relators)
        .with_evaluation(subgroup_generators().into_iter().collect());

    let subst = substitution();
    for (g, w) in &subst {
        let lhs = g_presentation.matrix_of(g)?;
        let rhs = crate::words::evaluate(w, 2)?;
        if lhs != rhs {
            return Err(Error::Consistency(format!("substitution for {g} changes its matrix")));
        }
    }
    let substituted: Vec<Word> = g_presentation
        .relators
        .iter()
        .map(|r| r.substitute(|g| subst.get(g).cloned()))
        .collect();
    let relators = involution_tietze(&substituted);

    let target = gamma2_presentation(2);
    let mut presentation = target.clone();
    presentation.relators = relators;

    let mut mismatches = Vec::new();
    if presentation.generator_set() != target.generator_set() {
        mismatches.push("generator sets differ".to_string());
    }
    let got = presentation.relator_normal_forms();
    let want = target.relator_normal_forms();
    for w in want.difference(&got) {
        mismatches.push(format!("missing relator {w}"));
    }
    for w in got.difference(&want) {
        mismatches.push(format!("unexpected relator {w}"));
    }
    Ok(Derivation {
        s_words,
        g_presentation,
        substituted,
        presentation,
        mismatches,
    })
}

/// Squares of `g`-words, as displayed for the rewritten relators.
pub fn squared(text: &str) -> Word {
    power(&parse_word(text).expect("literal word"), 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transversal_matrices() {
        let sys = build_coset_system().unwrap();
        assert_eq!(sys.transversal.len(), 6);
        assert_eq!(sys.transversal[4].matrix, IntMatrix::from_i64(&[&[1, 1], &[1, 0]]));
        assert_eq!(sys.bar(&IntMatrix::identity(2)).unwrap(), 0);
        let x = Letter::new(GeneratorId::named("x"), 1);
        assert_eq!(sys.action[&(x.clone(), 0)], 1);
        let z = sys.ambient.matrix_of(&GeneratorId::named("z")).unwrap();
        assert_eq!(sys.bar(&z).unwrap(), 3);
    }

    #[test]
    fn action_is_a_permutation_per_letter() {
        let sys = build_coset_system().unwrap();
        for l in table_letters() {
            let targets: BTreeSet<usize> = (0..6).map(|i| sys.action[&(l.clone(), i)]).collect();
            assert_eq!(targets.len(), 6, "{l}");
        }
    }

    #[test]
    fn selected_cells() {
        let table = schreier_table().unwrap();
        assert_eq!(table[0][0].value, IntMatrix::from_i64(&[&[1, -2], &[0, 1]]));
        assert_eq!(table[0][0].symbol.to_string(), "g1^-1");
        assert_eq!(table[2][2].symbol.to_string(), "g3");
        for row in &table {
            assert!(row[4].value.is_identity());
        }
    }

    #[test]
    fn displayed_rewrites() {
        let sys = build_coset_system().unwrap();
        let r = &sys.ambient.relators;
        assert_eq!(sys.rewrite_relator(&r[0], 2).unwrap(), squared("g4"));
        assert_eq!(sys.rewrite_relator(&r[1], 0).unwrap(), squared("g4 g3^-1 g1 g2"));
        for i in 0..6 {
            assert!(sys.rewrite_relator(&r[2], i).unwrap().is_empty());
        }
        assert!(sys.rewrite_relator(&parse_word("x y").unwrap(), 0).is_err());
    }

    #[test]
    fn derivation_reaches_the_stated_presentation() {
        let d = derive_gamma2_2().unwrap();
        assert_eq!(d.g_presentation.relators.len(), 8);
        assert!(d.matches(), "{:?}", d.mismatches);
        assert_eq!(d.presentation.relators.len(), 7);
    }

    #[test]
    fn plain_substitution_alone_falls_short() {
        let d = derive_gamma2_2().unwrap();
        let p = Presentation::new(2, d.presentation.generators.clone(), d.substituted.clone());
        assert_ne!(p.relator_normal_forms(), gamma2_presentation(2).relator_normal_forms());
    }

    #[test]
    fn tietze_pass_keeps_self_rules_out() {
        // (X F)^2 must not simplify itself away
        let w = parse_word("E(1,2) F(1) E(1,2) F(1)").unwrap();
        let f2 = parse_word("F(1)^2").unwrap();
        let out = involution_tietze(&[f2.clone(), w.clone()]);
        assert_eq!(out.len(), 2);
    }
}

//! Finite presentations: the data model, the builders for the level 2
//! congruence subgroups and their axis stabilizers, and abelianization.

mod serial;
mod smith;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactmat::{generator_matrix, GeneratorId, IntMatrix};
use crate::words::{commutator, cyclic_normal_form, evaluate_with, power, Word};

pub use serial::{parse, serialize, Format};
pub use smith::smith_diagonal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    /// Matrix dimension of the evaluation; 0 for an abstract presentation.
    pub n: usize,
    pub generators: Vec<GeneratorId>,
    pub relators: Vec<Word>,
    /// Explicit matrices. Standard symbols fall back to their built-in matrix.
    pub evaluation: BTreeMap<GeneratorId, IntMatrix>,
}

impl Presentation {
    pub fn new(n: usize, generators: Vec<GeneratorId>, relators: Vec<Word>) -> Self {
        Presentation {
            n,
            generators,
            relators,
            evaluation: BTreeMap::new(),
        }
    }

    /// A presentation with no matrix realization.
    pub fn abstract_group(generators: Vec<GeneratorId>, relators: Vec<Word>) -> Self {
        Self::new(0, generators, relators)
    }

    pub fn with_evaluation(mut self, evaluation: BTreeMap<GeneratorId, IntMatrix>) -> Self {
        self.evaluation = evaluation;
        self
    }

    /// True when every generator has a matrix.
    pub fn has_evaluation(&self) -> bool {
        self.n >= 1
            && self
                .generators
                .iter()
                .all(|g| self.evaluation.contains_key(g) || g.validate(self.n).is_ok())
    }

    pub fn matrix_of(&self, g: &GeneratorId) -> Result<IntMatrix> {
        if let Some(m) = self.evaluation.get(g) {
            return Ok(m.clone());
        }
        if self.n == 0 {
            return Err(Error::Precondition(format!(
                "presentation has no evaluation for {g}"
            )));
        }
        generator_matrix(g, self.n)
    }

    pub fn evaluate(&self, w: &Word) -> Result<IntMatrix> {
        let mut cache: BTreeMap<GeneratorId, IntMatrix> = BTreeMap::new();
        evaluate_with(w, self.n.max(1), |g| {
            if let Some(m) = cache.get(g) {
                return Ok(m.clone());
            }
            let m = self.matrix_of(g)?;
            cache.insert(g.clone(), m.clone());
            Ok(m)
        })
    }

    /// Symbols used by relators but missing from the generator list.
    pub fn undeclared_symbols(&self) -> Vec<GeneratorId> {
        let declared: BTreeSet<&GeneratorId> = self.generators.iter().collect();
        let mut missing: BTreeSet<GeneratorId> = BTreeSet::new();
        for r in &self.relators {
            for s in r.symbols() {
                if !declared.contains(s) {
                    missing.insert(s.clone());
                }
            }
        }
        missing.into_iter().collect()
    }

    /// Set of relator normal forms.
    pub fn relator_normal_forms(&self) -> BTreeSet<Word> {
        self.relators
            .iter()
            .map(cyclic_normal_form)
            .filter(|w| !w.is_empty())
            .collect()
    }

    pub fn generator_set(&self) -> BTreeSet<GeneratorId> {
        self.generators.iter().cloned().collect()
    }
}

/// The relator families of the level 2 presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    One,
    Two,
    ThreeA,
    ThreeB,
    Four,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::One,
        Family::Two,
        Family::ThreeA,
        Family::ThreeB,
        Family::Four,
    ];

    /// Closed-form size of the family after deduplication.
    pub fn expected_count(self, n: usize) -> usize {
        let c2 = n * n.saturating_sub(1);
        let c3 = c2 * n.saturating_sub(2);
        let c4 = c3 * n.saturating_sub(3);
        match self {
            Family::One => n,
            Family::Two => 2 * c2 + c2 / 2,
            Family::ThreeA => 3 * c3,
            Family::ThreeB => c3 / 6,
            Family::Four => c4 / 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::One => "1",
            Family::Two => "2",
            Family::ThreeA => "3a",
            Family::ThreeB => "3b",
            Family::Four => "4",
        })
    }
}

fn e(i: usize, j: usize) -> Word {
    Word::generator(GeneratorId::E(i, j))
}

fn f(i: usize) -> Word {
    Word::generator(GeneratorId::F(i))
}

fn inv(w: &Word) -> Word {
    crate::words::inverse(w)
}

fn sq(parts: &[&Word]) -> Word {
    power(&Word::product(parts.iter().copied()), 2)
}

/// Keeps the first word of each normal-form class.
#[derive(Default)]
struct Dedup {
    seen: HashSet<Word>,
}

impl Dedup {
    fn admit(&mut self, w: &Word) -> bool {
        self.seen.insert(cyclic_normal_form(w))
    }
}

/// Generators of the level 2 presentation: every `E(i,j)` in lexicographic
/// order, then every `F(i)`.
pub fn gamma2_generators(n: usize) -> Vec<GeneratorId> {
    let mut gens = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                gens.push(GeneratorId::E(i, j));
            }
        }
    }
    gens.extend((1..=n).map(GeneratorId::F));
    gens
}

/// The level 2 relators in canonical order, tagged by family.
pub fn gamma2_relators_by_family(n: usize) -> Vec<(Family, Word)> {
    let mut out = Vec::new();
    for i in 1..=n {
        out.push((Family::One, power(&f(i), 2)));
    }
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            out.push((Family::Two, sq(&[&e(i, j), &f(i)])));
            out.push((Family::Two, sq(&[&e(i, j), &f(j)])));
            if i < j {
                out.push((Family::Two, sq(&[&f(i), &f(j)])));
            }
        }
    }
    let triples = || {
        (1..=n).flat_map(move |i| {
            (1..=n).flat_map(move |j| {
                (1..=n)
                    .filter(move |&k| i != j && j != k && i != k)
                    .map(move |k| (i, j, k))
            })
        })
    };
    let mut seen = Dedup::default();
    for (i, j, k) in triples() {
        let shapes = [
            commutator(&e(i, j), &e(i, k)),
            commutator(&e(i, j), &e(k, j)),
            commutator(&e(i, j), &f(k)),
            Word::product([&commutator(&e(i, j), &e(k, i)), &power(&e(k, j), 2)]),
        ];
        for w in shapes {
            if seen.admit(&w) {
                out.push((Family::ThreeA, w));
            }
        }
    }
    for (i, j, k) in triples().filter(|&(i, j, k)| i < j && j < k) {
        let left = Word::product([&e(j, i), &f(j), &e(i, j), &f(i), &inv(&e(k, i)), &e(k, j)]);
        let right = Word::product([&e(k, i), &f(k), &e(i, k), &f(i), &inv(&e(j, i)), &e(j, k)]);
        out.push((Family::ThreeB, commutator(&left, &right)));
    }
    let mut seen = Dedup::default();
    for (i, j, k) in triples() {
        for l in 1..=n {
            if l == i || l == j || l == k || i >= k {
                continue;
            }
            let w = commutator(&e(i, j), &e(k, l));
            if seen.admit(&w) {
                out.push((Family::Four, w));
            }
        }
    }
    out
}

/// The level 2 congruence subgroup presentation at dimension `n`.
pub fn gamma2_presentation(n: usize) -> Presentation {
    assert!(n >= 1, "dimension must be positive");
    let relators = gamma2_relators_by_family(n)
        .into_iter()
        .map(|(_, w)| w)
        .collect();
    let gens = gamma2_generators(n);
    let evaluation = gens
        .iter()
        .map(|g| (g.clone(), generator_matrix(g, n).expect("valid generator")))
        .collect();
    Presentation::new(n, gens, relators).with_evaluation(evaluation)
}

/// Matrices of the ambient generators `x, y, z` of `GL(2, Z)`.
pub fn gl2z_matrices() -> [(GeneratorId, IntMatrix); 3] {
    [
        (GeneratorId::named("x"), IntMatrix::from_i64(&[&[1, -1], &[0, 1]])),
        (GeneratorId::named("y"), IntMatrix::from_i64(&[&[1, 0], &[1, 1]])),
        (GeneratorId::named("z"), IntMatrix::from_i64(&[&[0, 1], &[1, 0]])),
    ]
}

pub fn gl2z_presentation() -> Presentation {
    let [x, y, z] = gl2z_matrices().map(|(g, _)| Word::generator(g));
    let relators = vec![
        Word::product([&x, &y, &x, &inv(&y), &inv(&x), &inv(&y)]),
        power(&(&x * &y), 6),
        power(&z, 2),
        Word::product([&x, &z, &y, &z]),
    ];
    let gens = gl2z_matrices().map(|(g, _)| g).to_vec();
    Presentation::new(2, gens, relators).with_evaluation(gl2z_matrices().into_iter().collect())
}

/// Index shift embedding `GL(n-1)` symbols into the stabilizer of `e_t`.
fn rho(t: usize, g: &GeneratorId) -> Result<GeneratorId> {
    let up = |i: usize| if i >= t { i + 1 } else { i };
    match *g {
        GeneratorId::E(i, j) => Ok(GeneratorId::E(up(i), up(j))),
        GeneratorId::F(i) => Ok(GeneratorId::F(up(i))),
        _ => Err(Error::Precondition(format!(
            "inner generator {g} is not an E or F symbol"
        ))),
    }
}

/// Insert a trivial row and column at position `t`.
fn embed_at(m: &IntMatrix, t: usize) -> IntMatrix {
    let n = m.dim() + 1;
    let mut out = IntMatrix::identity(n);
    let src = |k: usize| if k < t - 1 { k } else { k - 1 };
    for r in (0..n).filter(|&r| r != t - 1) {
        for c in (0..n).filter(|&c| c != t - 1) {
            *out.at_mut(r, c) = m.at(src(r), src(c)).clone();
        }
    }
    out
}

/// Presentation of the stabilizer of `e_t` in the level 2 subgroup at
/// dimension `n`, built from a presentation of the subgroup at `n - 1`.
pub fn stabilizer_presentation(n: usize, t: usize, inner: &Presentation) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::Precondition("stabilizer needs n >= 2".into()));
    }
    if t < 1 || t > n {
        return Err(Error::IndexOutOfRange {
            what: format!("axis {t}"),
            n,
        });
    }
    if inner.n != n - 1 || !inner.has_evaluation() {
        return Err(Error::Precondition(format!(
            "inner presentation must carry an evaluation at dimension {}",
            n - 1
        )));
    }
    let mut gens: Vec<GeneratorId> = (1..=n).filter(|&i| i != t).map(|i| GeneratorId::E(t, i)).collect();
    for g in &inner.generators {
        let image = rho(t, g)?;
        let expected = embed_at(&inner.matrix_of(g)?, t);
        if generator_matrix(&image, n)? != expected {
            return Err(Error::Consistency(format!(
                "inner generator {g} does not embed as {image}"
            )));
        }
        gens.push(image);
    }

    let others: Vec<usize> = (1..=n).filter(|&i| i != t).collect();
    let pairs: Vec<(usize, usize)> = others
        .iter()
        .flat_map(|&i| others.iter().filter(move |&&j| j != i).map(move |&j| (i, j)))
        .collect();
    let mut relators = Vec::new();
    let mut seen = Dedup::default();
    let mut push = |w: Word, relators: &mut Vec<Word>| {
        if seen.admit(&w) {
            relators.push(w);
        }
    };
    for &(i, j) in pairs.iter().filter(|(i, j)| i < j) {
        push(commutator(&e(t, i), &e(t, j)), &mut relators);
    }
    for y in &inner.relators {
        for g in y.symbols() {
            rho(t, g)?;
        }
        push(y.rename(|g| rho(t, g).expect("checked above")), &mut relators);
    }
    for &(i, j) in &pairs {
        let w = Word::product([&commutator(&e(i, j), &e(t, i)), &power(&e(t, j), 2)]);
        push(w, &mut relators);
        push(commutator(&e(i, j), &e(t, j)), &mut relators);
    }
    for &(i, j) in &pairs {
        for &k in others.iter().filter(|&&k| k != i && k != j) {
            push(commutator(&e(i, j), &e(t, k)), &mut relators);
        }
    }
    for &i in &others {
        push(sq(&[&e(t, i), &f(i)]), &mut relators);
    }
    for &(i, j) in &pairs {
        push(commutator(&e(t, j), &f(i)), &mut relators);
    }

    let evaluation = gens
        .iter()
        .map(|g| Ok((g.clone(), generator_matrix(g, n)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(Presentation::new(n, gens, relators).with_evaluation(evaluation))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let torsion: Vec<String> = self.torsion.iter().map(|d| d.to_string()).collect();
        write!(f, "Z^{} x [{}]", self.free_rank, torsion.join(", "))
    }
}

/// Relators x generators matrix of exponent sums.
pub fn exponent_matrix(p: &Presentation) -> Vec<Vec<BigInt>> {
    let column: BTreeMap<&GeneratorId, usize> =
        p.generators.iter().enumerate().map(|(k, g)| (g, k)).collect();
    p.relators
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::from(0); p.generators.len()];
            for l in r.letters() {
                if let Some(&c) = column.get(&l.symbol) {
                    row[c] += l.exponent;
                }
            }
            row
        })
        .collect()
}

pub fn abelianization_invariants(p: &Presentation) -> AbelianInvariants {
    let cols = p.generators.len();
    let (rank, torsion) = smith::invariant_factors(exponent_matrix(p), cols);
    AbelianInvariants {
        free_rank: cols - rank,
        torsion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    #[test]
    fn theorem_counts() {
        let totals = [1, 7, 37, 122, 305, 641];
        for n in 1..=6 {
            let rels = gamma2_relators_by_family(n);
            assert_eq!(rels.len(), totals[n - 1], "n = {n}");
            for fam in Family::ALL {
                let got = rels.iter().filter(|(f, _)| *f == fam).count();
                assert_eq!(got, fam.expected_count(n), "n = {n}, family {fam}");
            }
            assert_eq!(gamma2_presentation(n).generators.len(), n * n);
        }
    }

    #[test]
    fn n1_and_n2_lists() {
        let p = gamma2_presentation(1);
        assert_eq!(p.generators, vec![GeneratorId::F(1)]);
        assert_eq!(p.relators[0].to_string(), "F(1)^2");
        let p = gamma2_presentation(2);
        let shown: Vec<String> = p.relators.iter().map(|w| w.to_string()).collect();
        assert_eq!(
            shown,
            [
                "F(1)^2",
                "F(2)^2",
                "E(1,2) F(1) E(1,2) F(1)",
                "E(1,2) F(2) E(1,2) F(2)",
                "F(1) F(2) F(1) F(2)",
                "E(2,1) F(2) E(2,1) F(2)",
                "E(2,1) F(1) E(2,1) F(1)",
            ]
        );
    }

    #[test]
    fn relators_hold_as_matrices() {
        for n in 1..=4 {
            let p = gamma2_presentation(n);
            for r in &p.relators {
                assert!(p.evaluate(r).unwrap().is_identity(), "n = {n}: {r}");
            }
        }
    }

    #[test]
    fn gl2z_relators_hold() {
        let p = gl2z_presentation();
        assert_eq!(p.relators.len(), 4);
        for r in &p.relators {
            assert!(p.evaluate(r).unwrap().is_identity(), "{r}");
        }
        assert_eq!(p.relators[0].to_string(), "x y x y^-1 x^-1 y^-1");
    }

    #[test]
    fn stabilizer_of_first_axis_at_n3() {
        let p = stabilizer_presentation(3, 1, &gamma2_presentation(2)).unwrap();
        let gens: Vec<String> = p.generators.iter().map(|g| g.to_string()).collect();
        assert_eq!(gens, ["E(1,2)", "E(1,3)", "E(2,3)", "E(3,2)", "F(2)", "F(3)"]);
        assert_eq!(p.relators.len(), 16);
        let expected = [
            "F(2)^2",
            "F(3)^2",
            "E(1,2) F(2) E(1,2) F(2)",
            "E(1,3) F(3) E(1,3) F(3)",
            "E(2,3) F(2) E(2,3) F(2)",
            "E(2,3) F(3) E(2,3) F(3)",
            "E(3,2) F(2) E(3,2) F(2)",
            "E(3,2) F(3) E(3,2) F(3)",
            "F(2) F(3) F(2) F(3)",
            "E(1,2)^-1 E(1,3)^-1 E(1,2) E(1,3)",
            "E(1,2)^-1 E(3,2)^-1 E(1,2) E(3,2)",
            "E(1,2)^-1 F(3)^-1 E(1,2) F(3)",
            "E(1,3)^-1 E(2,3)^-1 E(1,3) E(2,3)",
            "E(1,3)^-1 F(2)^-1 E(1,3) F(2)",
            "E(2,3)^-1 E(1,2)^-1 E(2,3) E(1,2) E(1,3)^2",
            "E(3,2)^-1 E(1,3)^-1 E(3,2) E(1,3) E(1,2)^2",
        ];
        let nf: BTreeSet<Word> = expected
            .iter()
            .map(|s| cyclic_normal_form(&parse_word(s).unwrap()))
            .collect();
        assert_eq!(p.relator_normal_forms(), nf);
        for g in &p.generators {
            let m = p.matrix_of(g).unwrap();
            assert!(crate::exactmat::is_level2(&m));
            assert_eq!(m.column(1), IntMatrix::identity(3).column(1));
        }
    }

    #[test]
    fn stabilizer_at_n2() {
        let p = stabilizer_presentation(2, 1, &gamma2_presentation(1)).unwrap();
        assert_eq!(p.generators, vec![GeneratorId::E(1, 2), GeneratorId::F(2)]);
        let shown: Vec<String> = p.relators.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["F(2)^2", "E(1,2) F(2) E(1,2) F(2)"]);
    }

    #[test]
    fn stabilizer_errors() {
        let inner = gamma2_presentation(2);
        assert!(stabilizer_presentation(3, 4, &inner).is_err());
        assert!(stabilizer_presentation(4, 1, &inner).is_err());
        let bare = Presentation::abstract_group(vec![GeneratorId::named("a")], vec![]);
        assert!(stabilizer_presentation(2, 1, &bare).is_err());
    }

    #[test]
    fn stabilizers_fix_their_axis() {
        for n in 3..=5 {
            let inner = gamma2_presentation(n - 1);
            for t in 1..=n {
                let p = stabilizer_presentation(n, t, &inner).unwrap();
                let et = IntMatrix::identity(n).column(t);
                for g in &p.generators {
                    assert_eq!(p.matrix_of(g).unwrap().column(t), et);
                }
                for r in &p.relators {
                    assert!(p.evaluate(r).unwrap().is_identity(), "n={n} t={t}: {r}");
                }
            }
        }
    }

    #[test]
    fn abelianization_small() {
        let a = GeneratorId::named("a");
        let b = GeneratorId::named("b");
        let wa = Word::generator(a.clone());
        let wb = Word::generator(b.clone());
        let p = Presentation::abstract_group(vec![a.clone()], vec![power(&wa, 2)]);
        let inv = abelianization_invariants(&p);
        assert_eq!((inv.free_rank, inv.torsion), (0, vec![BigInt::from(2)]));
        let p = Presentation::abstract_group(vec![a, b], vec![commutator(&wa, &wb)]);
        let inv = abelianization_invariants(&p);
        assert_eq!((inv.free_rank, inv.torsion.len()), (2, 0));
    }
}

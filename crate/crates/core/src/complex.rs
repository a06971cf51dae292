//! Simplicial complexes on which the level 2 group acts, the stabilizers of
//! their vertices and edges, and the assembly of a presentation from that
//! stabilizer data.
//!
//! The edge-generator symbols of the general construction are dropped up
//! front: every edge element they stand for is trivial in both instances
//! handled here, so an edge contributes only the identifications between the
//! copies of its stabilizer generators at the two endpoints.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{is_level2, rank_mod2, GeneratorId, IntMatrix};
use crate::membership::factor;
use crate::parallel::{self, Execution};
use crate::presentations::{gamma2_generators, gamma2_presentation, stabilizer_presentation, Presentation};
use crate::words::{cyclic_normal_form, evaluate, inverse, parse_word, Word};

const EDGE_DATA: &str = include_str!("../data/edge_relations.txt");

/// Largest dimension for which the mod 2 complex is built.
pub const MOD2_BOUND: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertices: Vec<Vec<i64>>,
    /// `simplices[d]` holds the `d`-simplices as sorted vertex-index lists.
    pub simplices: Vec<BTreeSet<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn count(&self, dim: usize) -> usize {
        self.simplices.get(dim).map_or(0, |s| s.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|s| s.len()).collect()
    }

    pub fn is_simplex(&self, face: &[usize]) -> bool {
        let mut f = face.to_vec();
        f.sort_unstable();
        f.dedup();
        f.len() == face.len()
            && !f.is_empty()
            && self.simplices.get(f.len() - 1).is_some_and(|s| s.contains(&f))
    }

    pub fn is_downward_closed(&self) -> bool {
        self.simplices.iter().skip(1).all(|layer| {
            layer.iter().all(|s| {
                (0..s.len()).all(|drop| {
                    let face: Vec<usize> = s
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    self.is_simplex(&face)
                })
            })
        })
    }

    /// Vertex triples that are not 2-simplices.
    pub fn missing_triples(&self) -> Vec<Vec<usize>> {
        let m = self.vertices.len();
        let mut out = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    if !self.is_simplex(&[a, b, c]) {
                        out.push(vec![a, b, c]);
                    }
                }
            }
        }
        out
    }
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            cur.push(v);
            go(v + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Nonzero vectors of `Z_2^n`, simplices the subsets extending to a basis.
///
/// Vertices are ordered by weight, then by support, so that at `n = 3` they
/// read `e1, e2, e3, e1+e2, e1+e3, e2+e3, e1+e2+e3`.
pub fn build_b_mod2(n: usize) -> Result<SimplicialComplex> {
    if n == 0 {
        return Err(Error::Precondition("dimension must be positive".into()));
    }
    if n > MOD2_BOUND {
        return Err(Error::TooLarge {
            what: "mod 2 complex dimension",
            n,
            max: MOD2_BOUND,
        });
    }
    let mut supports: Vec<Vec<usize>> = (1..=n).flat_map(|k| subsets(n, k)).collect();
    supports.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let vertices: Vec<Vec<i64>> = supports
        .iter()
        .map(|s| (0..n).map(|i| i64::from(s.contains(&i))).collect())
        .collect();
    let bits: Vec<Vec<bool>> = vertices.iter().map(|v| v.iter().map(|&x| x == 1).collect()).collect();
    let simplices = (1..=n)
        .map(|k| {
            subsets(vertices.len(), k)
                .into_iter()
                .filter(|s| rank_mod2(s.iter().map(|&v| bits[v].clone()).collect()) == k)
                .collect()
        })
        .collect();
    Ok(SimplicialComplex { vertices, simplices })
}

/// The quotient of the integral complex: the full simplex on `e1..en`.
pub fn orbit_complex(n: usize) -> Result<SimplicialComplex> {
    if n < 2 {
        return Err(Error::Precondition("orbit complex needs n >= 2".into()));
    }
    let vertices = (0..n)
        .map(|i| (0..n).map(|k| i64::from(k == i)).collect())
        .collect();
    let simplices = (1..=n).map(|k| subsets(n, k).into_iter().collect()).collect();
    Ok(SimplicialComplex { vertices, simplices })
}

/// True when `a` is level 2 and every vector of `delta` is one of its columns.
pub fn is_extension(a: &IntMatrix, delta: &[Vec<BigInt>]) -> bool {
    let n = a.dim();
    if delta.iter().any(|v| v.len() != n) || !is_level2(a) {
        return false;
    }
    let columns: Vec<Vec<BigInt>> = (1..=n).map(|c| a.column(c)).collect();
    delta.iter().all(|v| columns.contains(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedObject {
    Vertex(Vec<BigInt>),
    Edge(Vec<BigInt>, Vec<BigInt>),
}

impl FixedObject {
    pub fn vectors(&self) -> Vec<&Vec<BigInt>> {
        match self {
            FixedObject::Vertex(v) => vec![v],
            FixedObject::Edge(a, b) => vec![a, b],
        }
    }

    fn transported(&self, x: &IntMatrix) -> FixedObject {
        match self {
            FixedObject::Vertex(v) => FixedObject::Vertex(x.mul_vec(v)),
            FixedObject::Edge(a, b) => FixedObject::Edge(x.mul_vec(a), x.mul_vec(b)),
        }
    }
}

impl fmt::Display for FixedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[BigInt]| {
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        };
        match self {
            FixedObject::Vertex(v) => f.write_str(&show(v)),
            FixedObject::Edge(a, b) => write!(f, "{}-{}", show(a), show(b)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGenerator {
    pub label: GeneratorId,
    pub matrix: IntMatrix,
    /// A word in the `E`/`F` generators evaluating to `matrix`, if known.
    pub word: Option<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerSystem {
    pub object: FixedObject,
    pub generators: Vec<StabilizerGenerator>,
    pub presentation: Option<Presentation>,
}

impl StabilizerSystem {
    /// Every generator is level 2 and fixes the object pointwise.
    pub fn check(&self) -> Result<()> {
        for g in &self.generators {
            if !is_level2(&g.matrix) {
                return Err(Error::Consistency(format!("generator {} is not level 2", g.label)));
            }
            for v in self.object.vectors() {
                if &g.matrix.mul_vec(v) != v {
                    return Err(Error::Consistency(format!(
                        "generator {} moves {}",
                        g.label, self.object
                    )));
                }
            }
            if let Some(w) = &g.word {
                if evaluate(w, g.matrix.dim())? != g.matrix {
                    return Err(Error::Consistency(format!("word for {} is wrong", g.label)));
                }
            }
        }
        if let Some(p) = &self.presentation {
            for r in &p.relators {
                if !p.evaluate(r)?.is_identity() {
                    return Err(Error::Consistency(format!("relator {r} is not trivial")));
                }
            }
        }
        Ok(())
    }

    /// Fails if two generators share a matrix.
    pub fn matrix_index(&self) -> Result<BTreeMap<IntMatrix, GeneratorId>> {
        let mut out = BTreeMap::new();
        for g in &self.generators {
            if let Some(prev) = out.insert(g.matrix.clone(), g.label.clone()) {
                return Err(Error::Consistency(format!(
                    "generators {prev} and {} have the same matrix",
                    g.label
                )));
            }
        }
        Ok(out)
    }
}

/// Conjugate every generator by `x`; relators are kept symbol for symbol.
pub fn conjugation_transport(x: &IntMatrix, sys: &StabilizerSystem) -> Result<StabilizerSystem> {
    let x_inv = x.inverse()?;
    let generators = sys
        .generators
        .iter()
        .map(|g| {
            let matrix = x.mul(&g.matrix).mul(&x_inv);
            let word = if x.is_identity() {
                g.word.clone()
            } else {
                Some(factor(&matrix)?)
            };
            Ok(StabilizerGenerator {
                label: g.label.clone(),
                matrix,
                word,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let presentation = sys.presentation.as_ref().map(|p| {
        let evaluation = generators.iter().map(|g| (g.label.clone(), g.matrix.clone())).collect();
        Presentation::new(p.n, p.generators.clone(), p.relators.clone()).with_evaluation(evaluation)
    });
    Ok(StabilizerSystem {
        object: sys.object.transported(x),
        generators,
        presentation,
    })
}

/// Prefix every generator label with `tag`, e.g. `E(1,2)` becomes `v4_E1_2`.
pub fn relabel(sys: &StabilizerSystem, tag: &str) -> StabilizerSystem {
    let name = |g: &GeneratorId| GeneratorId::named(format!("{tag}_{}", g.compact_label()));
    let generators: Vec<StabilizerGenerator> = sys
        .generators
        .iter()
        .map(|g| StabilizerGenerator {
            label: name(&g.label),
            matrix: g.matrix.clone(),
            word: g.word.clone(),
        })
        .collect();
    let presentation = sys.presentation.as_ref().map(|p| {
        let evaluation = generators.iter().map(|g| (g.label.clone(), g.matrix.clone())).collect();
        Presentation::new(
            p.n,
            p.generators.iter().map(name).collect(),
            p.relators.iter().map(|r| r.rename(name)).collect(),
        )
        .with_evaluation(evaluation)
    });
    StabilizerSystem {
        object: sys.object.clone(),
        generators,
        presentation,
    }
}

fn system_from_presentation(p: Presentation, object: FixedObject) -> Result<StabilizerSystem> {
    let generators = p
        .generators
        .iter()
        .map(|g| {
            Ok(StabilizerGenerator {
                label: g.clone(),
                matrix: p.matrix_of(g)?,
                word: Some(Word::generator(g.clone())),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilizerSystem {
        object,
        generators,
        presentation: Some(p),
    })
}

fn unit_vector(n: usize, t: usize) -> Vec<BigInt> {
    (1..=n).map(|k| if k == t { BigInt::one() } else { BigInt::zero() }).collect()
}

/// Stabilizer of the axis `e_t` in dimension `n`, with the level 2 group of
/// dimension `n - 1` as inner factor. Labels are the standard symbols.
pub fn axis_stabilizer(n: usize, t: usize) -> Result<StabilizerSystem> {
    let p = stabilizer_presentation(n, t, &gamma2_presentation(n - 1))?;
    system_from_presentation(p, FixedObject::Vertex(unit_vector(n, t)))
}

/// Conjugators carrying `e1` onto the seven vertices at `n = 3`.
pub fn vertex_conjugator_words() -> [&'static str; 7] {
    [
        "1",
        "S(1)",
        "S(2) S(1)",
        "T(2,1)",
        "S(2) T(2,1)",
        "S(1) S(2) T(2,1)",
        "T(3,1) T(2,1)",
    ]
}

pub fn vertex_conjugator(k: usize) -> Result<IntMatrix> {
    if !(1..=7).contains(&k) {
        return Err(Error::IndexOutOfRange {
            what: format!("vertex v{k}"),
            n: 7,
        });
    }
    evaluate(&parse_word(vertex_conjugator_words()[k - 1])?, 3)
}

/// Stabilizer of vertex `v_k` at `n = 3`, labels tagged `v{k}_`.
pub fn vertex_stabilizer(k: usize) -> Result<StabilizerSystem> {
    let x = vertex_conjugator(k)?;
    let base = axis_stabilizer(3, 1)?;
    Ok(relabel(&conjugation_transport(&x, &base)?, &format!("v{k}")))
}

/// One block of the edge data: edges sharing a stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFamily {
    pub edges: Vec<(usize, usize)>,
    pub conjugator: Word,
    pub matrices: Vec<IntMatrix>,
    /// For each matrix, its word at each vertex of the family.
    pub relations: Vec<BTreeMap<usize, Word>>,
}

impl EdgeFamily {
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.edges.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

fn vertex_of_label(g: &GeneratorId) -> Option<usize> {
    match g {
        GeneratorId::Named(s) => s.strip_prefix('v')?.split('_').next()?.parse().ok(),
        _ => None,
    }
}

fn parse_vertex(tok: &str, line: usize) -> Result<usize> {
    tok.strip_prefix('v')
        .and_then(|d| d.parse().ok())
        .filter(|k| (1..=7).contains(k))
        .ok_or_else(|| Error::parse(line, format!("bad vertex {tok:?}")))
}

/// Parse the edge data. Error positions are line numbers.
pub fn parse_edge_families(text: &str) -> Result<Vec<EdgeFamily>> {
    let mut out: Vec<EdgeFamily> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let (head, rest) = s.split_once(' ').unwrap_or((s, ""));
        if head == "edges" {
            let edges = rest
                .split_whitespace()
                .map(|e| {
                    let (a, b) = e.split_once('-').ok_or_else(|| Error::parse(line, "bad edge"))?;
                    Ok((parse_vertex(a, line)?, parse_vertex(b, line)?))
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(EdgeFamily {
                edges,
                conjugator: Word::empty(),
                matrices: Vec::new(),
                relations: Vec::new(),
            });
            continue;
        }
        let fam = out
            .last_mut()
            .ok_or_else(|| Error::parse(line, "data before the first `edges` line"))?;
        match head {
            "conjugator" => fam.conjugator = parse_word(rest)?,
            "matrix" => fam.matrices.push(rest.parse()?),
            "rel" => {
                let mut rel = BTreeMap::new();
                for part in rest.split('=') {
                    let w = parse_word(part)?;
                    let vs: BTreeSet<usize> = w.symbols().filter_map(vertex_of_label).collect();
                    if vs.len() != 1 || w.symbols().any(|g| vertex_of_label(g).is_none()) {
                        return Err(Error::parse(line, format!("word {part:?} must live at one vertex")));
                    }
                    rel.insert(*vs.iter().next().expect("one vertex"), w);
                }
                fam.relations.push(rel);
            }
            _ => return Err(Error::parse(line, format!("unknown keyword {head:?}"))),
        }
    }
    for fam in &out {
        if fam.relations.len() != fam.matrices.len() {
            return Err(Error::Consistency("each matrix needs one relation line".into()));
        }
        if fam.relations.iter().any(|r| r.keys().copied().collect::<BTreeSet<_>>() != fam.vertices()) {
            return Err(Error::Consistency("relation lines must cover the family's vertices".into()));
        }
    }
    Ok(out)
}

pub fn edge_families() -> Result<Vec<EdgeFamily>> {
    parse_edge_families(EDGE_DATA)
}

fn vertex_vector(k: usize) -> Result<Vec<BigInt>> {
    Ok(vertex_conjugator(k)?.mul_vec(&unit_vector(3, 1)))
}

/// The 21 edge stabilizers at `n = 3`, keyed by vertex pairs `(a, b)`, `a < b`.
///
/// Each matrix triple is the transport of the `v1-v2` triple by the family
/// conjugator, checked against the recorded matrices, the endpoint vectors,
/// and the recorded words at every vertex.
pub fn edge_stabilizer_data() -> Result<BTreeMap<(usize, usize), StabilizerSystem>> {
    let families = edge_families()?;
    let vertex_eval: BTreeMap<GeneratorId, IntMatrix> = (1..=7)
        .map(vertex_stabilizer)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flat_map(|s| s.generators.into_iter().map(|g| (g.label, g.matrix)))
        .collect();
    let base = families
        .iter()
        .find(|f| f.edges.contains(&(1, 2)))
        .ok_or_else(|| Error::Consistency("no data for edge v1-v2".into()))?
        .matrices
        .clone();
    let mut out = BTreeMap::new();
    for fam in &families {
        let c = evaluate(&fam.conjugator, 3)?;
        let c_inv = c.inverse()?;
        let transported: Vec<IntMatrix> = base.iter().map(|m| c.mul(m).mul(&c_inv)).collect();
        if transported != fam.matrices {
            return Err(Error::Consistency(format!(
                "conjugator {} does not carry the v1-v2 triple onto the recorded one",
                fam.conjugator
            )));
        }
        for (m, rel) in fam.matrices.iter().zip(&fam.relations) {
            for w in rel.values() {
                let value = crate::words::evaluate_with(w, 3, |g| {
                    vertex_eval
                        .get(g)
                        .cloned()
                        .ok_or_else(|| Error::InvalidGenerator(g.to_string()))
                })?;
                if &value != m {
                    return Err(Error::Consistency(format!("edge word {w} does not evaluate to {m}")));
                }
            }
        }
        for &(a, b) in &fam.edges {
            let sys = StabilizerSystem {
                object: FixedObject::Edge(vertex_vector(a)?, vertex_vector(b)?),
                generators: fam
                    .matrices
                    .iter()
                    .enumerate()
                    .map(|(k, m)| {
                        Ok(StabilizerGenerator {
                            label: GeneratorId::named(format!("v{a}v{b}_{}", k + 1)),
                            matrix: m.clone(),
                            word: Some(factor(m)?),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
                presentation: None,
            };
            sys.check()?;
            out.insert((a.min(b), a.max(b)), sys);
        }
    }
    if out.len() != 21 {
        return Err(Error::Consistency(format!("expected 21 edges, found {}", out.len())));
    }
    Ok(out)
}

/// The combinatorial skeleton of an assembly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblyPlan {
    pub vertices: Vec<String>,
    /// A spanning tree, as index pairs into `vertices`.
    pub tree: Vec<(usize, usize)>,
    pub edges: Vec<(usize, usize)>,
    /// Triangles with their base vertex first.
    pub triangles: Vec<[usize; 3]>,
}

impl AssemblyPlan {
    fn complete(vertices: Vec<String>) -> Self {
        let m = vertices.len();
        let edges: Vec<(usize, usize)> = subsets(m, 2).into_iter().map(|s| (s[0], s[1])).collect();
        AssemblyPlan {
            tree: (1..m).map(|k| (0, k)).collect(),
            edges,
            triangles: subsets(m, 3).into_iter().map(|s| [s[0], s[1], s[2]]).collect(),
            vertices,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Assembly {
    pub plan: AssemblyPlan,
    pub vertex_systems: Vec<StabilizerSystem>,
    /// Free product of the vertex presentations plus the edge relators.
    pub presentation: Presentation,
    pub edge_relators: Vec<Word>,
    /// The presentation after merging generators identified by two-letter
    /// edge relators.
    pub identified: Presentation,
}

/// The assembled presentation; see [`assemble`].
pub fn brown_assemble(n: usize) -> Result<Presentation> {
    Ok(assemble(n, Execution::default())?.presentation)
}

pub fn assemble(n: usize, exec: Execution) -> Result<Assembly> {
    match n {
        0..=2 => Err(Error::Precondition("assembly needs n >= 3".into())),
        3 => assemble_three(exec),
        _ => assemble_inductive(n, exec),
    }
}

fn assemble_three(exec: Execution) -> Result<Assembly> {
    let systems = parallel::map_range(exec, 7, |k| vertex_stabilizer(k + 1))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    // Fails on a matrix shared by two generators of one stabilizer.
    for s in &systems {
        s.matrix_index()?;
    }
    let mut edge_relators = Vec::new();
    for fam in edge_families()? {
        for rel in &fam.relations {
            for &(a, b) in &fam.edges {
                edge_relators.push(Word::product([&rel[&a], &inverse(&rel[&b])]));
            }
        }
    }
    let plan = AssemblyPlan::complete((1..=7).map(|k| format!("v{k}")).collect());
    finish(3, plan, systems, edge_relators, exec)
}

fn assemble_inductive(n: usize, exec: Execution) -> Result<Assembly> {
    let inner = gamma2_presentation(n - 1);
    let systems = parallel::map_range(exec, n, |k| {
        let t = k + 1;
        let p = stabilizer_presentation(n, t, &inner)?;
        let sys = system_from_presentation(p, FixedObject::Vertex(unit_vector(n, t)))?;
        Ok(relabel(&sys, &format!("e{t}")))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let tag = |t: usize, g: &GeneratorId| GeneratorId::named(format!("e{t}_{}", g.compact_label()));
    let mut edge_relators = Vec::new();
    for s in 1..=n {
        for t in s + 1..=n {
            for g in gamma2_generators(n) {
                let j = match g {
                    GeneratorId::E(_, j) | GeneratorId::F(j) => j,
                    _ => unreachable!(),
                };
                if j != s && j != t {
                    edge_relators.push(Word::product([
                        &Word::generator(tag(s, &g)),
                        &inverse(&Word::generator(tag(t, &g))),
                    ]));
                }
            }
        }
    }
    let plan = AssemblyPlan::complete((1..=n).map(|t| format!("e{t}")).collect());
    finish(n, plan, systems, edge_relators, exec)
}

fn finish(
    n: usize,
    plan: AssemblyPlan,
    systems: Vec<StabilizerSystem>,
    edge_relators: Vec<Word>,
    exec: Execution,
) -> Result<Assembly> {
    let mut generators = Vec::new();
    let mut relators = Vec::new();
    let mut evaluation = BTreeMap::new();
    for s in &systems {
        let p = s
            .presentation
            .as_ref()
            .ok_or_else(|| Error::Precondition("vertex system without presentation".into()))?;
        generators.extend(p.generators.iter().cloned());
        relators.extend(p.relators.iter().cloned());
        evaluation.extend(s.generators.iter().map(|g| (g.label.clone(), g.matrix.clone())));
    }
    relators.extend(edge_relators.iter().cloned());
    let presentation = Presentation::new(n, generators, relators).with_evaluation(evaluation);

    let bad: Vec<String> = parallel::map(exec, &presentation.relators, |r| match presentation.evaluate(r) {
        Ok(m) if m.is_identity() => None,
        Ok(_) => Some(format!("relator {r} is not trivial")),
        Err(e) => Some(e.to_string()),
    })
    .into_iter()
    .flatten()
    .collect();
    if let Some(first) = bad.first() {
        return Err(Error::Consistency(format!("{} bad relators, first: {first}", bad.len())));
    }

    let identified = identify(&presentation, &edge_relators)?;
    Ok(Assembly {
        plan,
        vertex_systems: systems,
        presentation,
        edge_relators,
        identified,
    })
}

fn find(parent: &mut BTreeMap<GeneratorId, GeneratorId>, g: &GeneratorId) -> GeneratorId {
    let p = parent[g].clone();
    if &p == g {
        return p;
    }
    let root = find(parent, &p);
    parent.insert(g.clone(), root.clone());
    root
}

/// Merge generators joined by an edge relator of the form `a b^-1`, name each
/// class by the standard symbol with its matrix when there is one, and drop
/// relators that become trivial or repeat up to cyclic conjugacy.
pub fn identify(p: &Presentation, edge_relators: &[Word]) -> Result<Presentation> {
    let mut parent: BTreeMap<GeneratorId, GeneratorId> =
        p.generators.iter().map(|g| (g.clone(), g.clone())).collect();
    for r in edge_relators {
        if let [a, b] = r.letters() {
            if a.exponent == 1 && b.exponent == -1 && a.symbol != b.symbol {
                let (ra, rb) = (find(&mut parent, &a.symbol), find(&mut parent, &b.symbol));
                if ra != rb {
                    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    parent.insert(hi, lo);
                }
            }
        }
    }
    let mut classes: BTreeMap<GeneratorId, Vec<GeneratorId>> = BTreeMap::new();
    for g in &p.generators {
        let root = find(&mut parent, g);
        classes.entry(root).or_default().push(g.clone());
    }
    let standard: BTreeMap<IntMatrix, GeneratorId> = gamma2_generators(p.n)
        .into_iter()
        .map(|g| Ok((crate::exactmat::generator_matrix(&g, p.n)?, g)))
        .collect::<Result<_>>()?;
    let mut name: BTreeMap<GeneratorId, GeneratorId> = BTreeMap::new();
    let mut evaluation = BTreeMap::new();
    let mut generators = Vec::new();
    let mut used = BTreeSet::new();
    for (root, members) in &classes {
        let m = p.matrix_of(root)?;
        for g in members {
            if p.matrix_of(g)? != m {
                return Err(Error::Consistency(format!(
                    "{g} and {root} are identified but have different matrices"
                )));
            }
        }
        let target = standard.get(&m).cloned().unwrap_or_else(|| root.clone());
        if !used.insert(target.clone()) {
            return Err(Error::Consistency(format!(
                "two generator classes both carry the matrix of {target}"
            )));
        }
        if !target.is_standard() {
            evaluation.insert(target.clone(), m);
        }
        for g in members {
            name.insert(g.clone(), target.clone());
        }
        generators.push(target);
    }
    let order: BTreeMap<&GeneratorId, usize> = p
        .generators
        .iter()
        .enumerate()
        .map(|(k, g)| (g, k))
        .collect();
    generators.sort_by_key(|g| {
        classes
            .iter()
            .find(|(_, ms)| name[&ms[0]] == *g)
            .map(|(_, ms)| ms.iter().map(|m| order[m]).min().unwrap_or(0))
    });
    let mut seen = BTreeSet::new();
    let relators = p
        .relators
        .iter()
        .map(|r| r.rename(|g| name[g].clone()))
        .filter(|r| {
            let nf = cyclic_normal_form(r);
            !nf.is_empty() && seen.insert(nf)
        })
        .collect();
    Ok(Presentation::new(p.n, generators, relators).with_evaluation(evaluation))
}

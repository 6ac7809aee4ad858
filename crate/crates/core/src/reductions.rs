//! Bounded-occurrence 3SAT to 3DM-3, built so that satisfiable formulas give
//! instances with perfect matchings.
//!
//! Each variable becomes `K` rings whose tips are the leaves of complete
//! binary trees, one tree per (occurrence, polarity); tree roots carry the
//! clause edges. The whole structure is copied three times and every root is
//! tied to its two copies by a root edge.
//!
//! # Vertex parts
//!
//! Inside one copy every tree root lies in part 0 and the children of a node
//! in part `p` lie in parts `p + 1` and `p + 2` (mod 3), left to right. All
//! trees share a shape, so leaf `k` has the same part `L(k)` in every tree;
//! ring `k`'s tips sit in `L(k)`, its `a` vertices in `L(k) + 1` and its `b`
//! vertices in `L(k) + 2`. Clause vertices `s₁`, `s₂` sit in parts 1 and 2.
//! Copy `c` shifts every part by `c`, which makes root edges tripartite and
//! the three parts equally large.
//!
//! # Clause attachment
//!
//! A ring covering its positive tips encodes `true`. With tree height `h`,
//! a tree whose leaves are covered by the ring ends up with its root covered
//! iff `h` is even, so the root left free by a true literal has the
//! literal's polarity when `h` is odd and the opposite one when `h` is even.
//! Clause edges attach to that root.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::DmInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    /// 0-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn from_signed(x: i64) -> Option<Literal> {
        (x != 0).then(|| Literal { var: x.unsigned_abs() as usize - 1, negated: x < 0 })
    }

    pub fn to_signed(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }
}

/// A CNF formula with at most 3 literals per clause and every variable
/// occurring in at most `bound` clauses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatBFormula {
    n_vars: usize,
    clauses: Vec<Vec<Literal>>,
    bound: usize,
}

impl SatBFormula {
    /// Clauses are given as signed 1-based literals.
    pub fn new(n_vars: usize, clauses: Vec<Vec<i64>>, bound: usize) -> Result<Self> {
        let mut parsed = Vec::with_capacity(clauses.len());
        for (j, clause) in clauses.iter().enumerate() {
            if clause.len() > 3 {
                return Err(Error::InvalidFormula(format!("clause {} has {} literals", j + 1, clause.len())));
            }
            let mut lits = Vec::with_capacity(clause.len());
            for &x in clause {
                let lit = Literal::from_signed(x)
                    .ok_or_else(|| Error::InvalidFormula(format!("clause {} contains literal 0", j + 1)))?;
                if lit.var >= n_vars {
                    return Err(Error::InvalidFormula(format!("variable {} out of range", lit.var + 1)));
                }
                if lits.iter().any(|l: &Literal| l.var == lit.var) {
                    return Err(Error::InvalidFormula(format!(
                        "clause {} mentions variable {} twice",
                        j + 1,
                        lit.var + 1
                    )));
                }
                lits.push(lit);
            }
            parsed.push(lits);
        }
        let f = SatBFormula { n_vars, clauses: parsed, bound };
        for v in 0..n_vars {
            let d = f.occurrences(v).len();
            if d > bound {
                return Err(Error::InvalidFormula(format!("variable {} occurs {d} > B = {bound} times", v + 1)));
            }
        }
        Ok(f)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `(clause, negated)` for each occurrence of `var`, in clause order.
    pub fn occurrences(&self, var: usize) -> Vec<(usize, bool)> {
        self.clauses
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.iter().find(|l| l.var == var).map(|l| (j, l.negated)))
            .collect()
    }

    pub fn satisfied(&self, assignment: &[bool]) -> usize {
        self.clauses.iter().filter(|c| c.iter().any(|l| l.holds(assignment))).count()
    }

    /// Maximum number of simultaneously satisfiable clauses and a witness,
    /// by trying all `2^n_vars` assignments.
    pub fn brute_force_opt(&self) -> (usize, Vec<bool>) {
        assert!(self.n_vars < 32, "brute force over {} variables", self.n_vars);
        let mut best = (0, vec![false; self.n_vars]);
        let mut first = true;
        for mask in 0u64..(1 << self.n_vars) {
            let a: Vec<bool> = (0..self.n_vars).map(|v| mask >> v & 1 == 1).collect();
            let s = self.satisfied(&a);
            if first || s > best.0 {
                best = (s, a);
                first = false;
            }
        }
        best
    }
}

/// Rings per variable: `2^⌊log₂(3B/2 + 1)⌋`.
pub fn rings_per_variable(bound: usize) -> usize {
    // ⌊log₂(3B/2 + 1)⌋ = ⌊log₂(3B + 2)⌋ - 1
    let x = 3 * bound + 2;
    let floor_log = usize::BITS - 1 - x.leading_zeros();
    1 << (floor_log - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexRole {
    /// Ring tip `v_i[γ, k]` (or `v̄_i[γ, k]` when negated), also a tree leaf.
    Tip { var: usize, occ: usize, ring: usize, negated: bool },
    /// First inner ring vertex of slot `occ`.
    RingA { var: usize, ring: usize, occ: usize },
    /// Second inner ring vertex of slot `occ`.
    RingB { var: usize, ring: usize, occ: usize },
    /// Inner tree node in heap numbering (`2..K`).
    Tree { var: usize, occ: usize, negated: bool, node: usize },
    /// Tree root `u_i[γ]` or `ū_i[γ]`.
    Root { var: usize, occ: usize, negated: bool },
    /// Clause vertex `s₁[j]` (side 1) or `s₂[j]` (side 2).
    Clause { clause: usize, side: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeRole {
    /// Ring edge through the tip of slot `occ` with the given polarity.
    Ring { var: usize, ring: usize, occ: usize, negated: bool },
    /// Tree edge joining heap node `node` with its two children.
    Tree { var: usize, occ: usize, negated: bool, node: usize },
    /// Clause edge for the literal of `var` (its occurrence `occ`).
    Clause { clause: usize, var: usize, occ: usize },
    /// Root edge tying the three copies of a root together.
    Root { var: usize, occ: usize, negated: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutVertex {
    pub role: VertexRole,
    pub copy: u8,
    pub part: u8,
    /// Index within its part.
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutEdge {
    pub role: EdgeRole,
    /// `None` for root edges, which span all copies.
    pub copy: Option<u8>,
    /// Vertex ids ordered by part.
    pub vertices: [usize; 3],
}

/// Labelled vertices and edges of a reduced instance. Edge `i` here is
/// edge `i` of the generated [`DmInstance`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionLayout {
    pub rings: usize,
    pub tree_height: u32,
    pub vertices: Vec<LayoutVertex>,
    pub edges: Vec<LayoutEdge>,
}

impl ReductionLayout {
    /// Edge id for every `(copy, role)`.
    pub fn edge_index(&self) -> HashMap<(Option<u8>, EdgeRole), usize> {
        self.edges.iter().enumerate().map(|(id, e)| ((e.copy, e.role), id)).collect()
    }

    pub fn vertex_index(&self) -> HashMap<(u8, VertexRole), usize> {
        self.vertices.iter().enumerate().map(|(id, v)| ((v.copy, v.role), id)).collect()
    }

    /// Vertices of one copy of the single (untripled) construction.
    pub fn vertices_per_copy(&self) -> usize {
        self.vertices.len() / 3
    }

    /// Root polarity that stays free when a literal of polarity `negated` is true.
    pub fn free_root_polarity(&self, literal_negated: bool) -> bool {
        literal_negated ^ (self.tree_height % 2 == 0)
    }
}

/// Builder for one copy's labelled structure.
struct Builder {
    vertices: Vec<LayoutVertex>,
    edges: Vec<LayoutEdge>,
    ids: HashMap<(u8, VertexRole), usize>,
    next_index: [usize; 3],
}

impl Builder {
    fn vertex(&mut self, copy: u8, base_part: u8, role: VertexRole) -> usize {
        let key = (copy, role);
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let part = (base_part + copy) % 3;
        let id = self.vertices.len();
        self.vertices.push(LayoutVertex { role, copy, part, index: self.next_index[part as usize] });
        self.next_index[part as usize] += 1;
        self.ids.insert(key, id);
        id
    }

    fn edge(&mut self, role: EdgeRole, copy: Option<u8>, vs: [usize; 3]) {
        let mut sorted = vs;
        sorted.sort_by_key(|&v| self.vertices[v].part);
        debug_assert!((0..3).all(|p| self.vertices[sorted[p]].part as usize == p), "edge {role:?} is not tripartite");
        self.edges.push(LayoutEdge { role, copy, vertices: sorted });
    }
}

/// Part of every heap node of a complete binary tree whose root lies in part 0.
fn tree_parts(rings: usize) -> Vec<u8> {
    let mut parts = vec![0u8; 2 * rings];
    for node in 2..2 * rings {
        let parent = parts[node / 2];
        parts[node] = (parent + 1 + (node % 2) as u8) % 3;
    }
    parts
}

/// Reduces a formula to a 3DM-3 instance: three copies of the ring-of-trees
/// construction joined by root edges.
pub fn sat_to_3dm3(formula: &SatBFormula) -> Result<(DmInstance, ReductionLayout)> {
    if let Some(j) = formula.clauses().iter().position(|c| c.is_empty()) {
        return Err(Error::EmptyClause(j + 1));
    }
    let rings = rings_per_variable(formula.bound().max(1));
    let height = rings.trailing_zeros();
    let parts = tree_parts(rings);
    let leaf_part = |ring: usize| parts[rings + ring];
    let mut b = Builder { vertices: Vec::new(), edges: Vec::new(), ids: HashMap::new(), next_index: [0; 3] };
    let free_polarity = |neg: bool| neg ^ (height % 2 == 0);

    for copy in 0..3u8 {
        for var in 0..formula.n_vars() {
            let occs = formula.occurrences(var);
            let d = occs.len();
            if d == 0 {
                continue;
            }
            for ring in 0..rings {
                let lp = leaf_part(ring);
                for occ in 0..d {
                    let a = b.vertex(copy, (lp + 1) % 3, VertexRole::RingA { var, ring, occ });
                    let bb = b.vertex(copy, (lp + 2) % 3, VertexRole::RingB { var, ring, occ });
                    let a_next = b.vertex(copy, (lp + 1) % 3, VertexRole::RingA { var, ring, occ: (occ + 1) % d });
                    let pos = b.vertex(copy, lp, VertexRole::Tip { var, occ, ring, negated: false });
                    let neg = b.vertex(copy, lp, VertexRole::Tip { var, occ, ring, negated: true });
                    b.edge(EdgeRole::Ring { var, ring, occ, negated: false }, Some(copy), [pos, a, bb]);
                    b.edge(EdgeRole::Ring { var, ring, occ, negated: true }, Some(copy), [neg, a_next, bb]);
                }
            }
            for occ in 0..d {
                for negated in [false, true] {
                    let node_vertex = |b: &mut Builder, node: usize| -> usize {
                        if node >= rings {
                            b.vertex(copy, parts[node], VertexRole::Tip { var, occ, ring: node - rings, negated })
                        } else if node == 1 {
                            b.vertex(copy, parts[1], VertexRole::Root { var, occ, negated })
                        } else {
                            b.vertex(copy, parts[node], VertexRole::Tree { var, occ, negated, node })
                        }
                    };
                    for node in 1..rings {
                        let p = node_vertex(&mut b, node);
                        let l = node_vertex(&mut b, 2 * node);
                        let r = node_vertex(&mut b, 2 * node + 1);
                        b.edge(EdgeRole::Tree { var, occ, negated, node }, Some(copy), [p, l, r]);
                    }
                }
            }
        }
        for (clause, lits) in formula.clauses().iter().enumerate() {
            let s1 = b.vertex(copy, 1, VertexRole::Clause { clause, side: 1 });
            let s2 = b.vertex(copy, 2, VertexRole::Clause { clause, side: 2 });
            for lit in lits {
                let occ = formula.occurrences(lit.var).iter().position(|&(c, _)| c == clause).unwrap();
                let root = b.vertex(
                    copy,
                    0,
                    VertexRole::Root { var: lit.var, occ, negated: free_polarity(lit.negated) },
                );
                b.edge(EdgeRole::Clause { clause, var: lit.var, occ }, Some(copy), [root, s1, s2]);
            }
        }
    }
    for var in 0..formula.n_vars() {
        for occ in 0..formula.occurrences(var).len() {
            for negated in [false, true] {
                let role = VertexRole::Root { var, occ, negated };
                let vs = [0u8, 1, 2].map(|c| b.ids[&(c, role)]);
                b.edge(EdgeRole::Root { var, occ, negated }, None, vs);
            }
        }
    }
    let m = b.next_index[0];
    debug_assert!(b.next_index.iter().all(|&c| c == m));
    let edges = b.edges.iter().map(|e| e.vertices.map(|v| b.vertices[v].index)).collect();
    let dm = DmInstance::new_bounded(m, edges)?;
    let layout = ReductionLayout { rings, tree_height: height, vertices: b.vertices, edges: b.edges };
    Ok((dm, layout))
}

/// Upper bound on the vertex count of the reduced instance: with at most 3
/// literals per clause, one copy has at most `m(18K - 4)` vertices.
pub fn vertex_bound(formula: &SatBFormula) -> usize {
    let k = rings_per_variable(formula.bound().max(1));
    3 * (18 * k - 4) * formula.clauses().len()
}

/// The matching an assignment induces: rings follow the truth values, trees
/// are covered greedily from the leaves up, each satisfied clause uses the
/// root of its first true literal, and root edges pick up every root left
/// free in all three copies.
pub fn assignment_to_matching(formula: &SatBFormula, layout: &ReductionLayout, assignment: &[bool]) -> Result<Vec<usize>> {
    if assignment.len() != formula.n_vars() {
        return Err(Error::DimensionMismatch(format!(
            "assignment has {} values for {} variables",
            assignment.len(),
            formula.n_vars()
        )));
    }
    let eidx = layout.edge_index();
    let mut covered = vec![false; layout.vertices.len()];
    let mut chosen = Vec::new();
    let mut try_take = |id: usize, covered: &mut Vec<bool>| -> bool {
        let vs = layout.edges[id].vertices;
        if vs.iter().any(|&v| covered[v]) {
            return false;
        }
        vs.iter().for_each(|&v| covered[v] = true);
        chosen.push(id);
        true
    };
    for copy in 0..3u8 {
        for var in 0..formula.n_vars() {
            let d = formula.occurrences(var).len();
            for ring in 0..layout.rings {
                for occ in 0..d {
                    let role = EdgeRole::Ring { var, ring, occ, negated: !assignment[var] };
                    try_take(eidx[&(Some(copy), role)], &mut covered);
                }
            }
            for occ in 0..d {
                for negated in [false, true] {
                    for node in (1..layout.rings).rev() {
                        let role = EdgeRole::Tree { var, occ, negated, node };
                        try_take(eidx[&(Some(copy), role)], &mut covered);
                    }
                }
            }
        }
        for (clause, lits) in formula.clauses().iter().enumerate() {
            if let Some(lit) = lits.iter().find(|l| l.holds(assignment)) {
                let occ = formula.occurrences(lit.var).iter().position(|&(c, _)| c == clause).unwrap();
                let id = eidx[&(Some(copy), EdgeRole::Clause { clause, var: lit.var, occ })];
                if !try_take(id, &mut covered) {
                    return Err(Error::NonCanonicalMatching(format!(
                        "root for clause {} is already covered",
                        clause + 1
                    )));
                }
            }
        }
    }
    for var in 0..formula.n_vars() {
        for occ in 0..formula.occurrences(var).len() {
            for negated in [false, true] {
                try_take(eidx[&(None, EdgeRole::Root { var, occ, negated })], &mut covered);
            }
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Reads the truth assignment off the ring edges. Every ring of a variable,
/// in every copy, must use all of its positive-tip edges or all of its
/// negative-tip edges, and all must agree. Variables with no occurrences
/// come back `false`.
pub fn decode_matching_to_assignment(
    formula: &SatBFormula,
    layout: &ReductionLayout,
    matching: &[usize],
) -> Result<Vec<bool>> {
    let used: BTreeSet<usize> = matching.iter().copied().collect();
    let eidx = layout.edge_index();
    let mut assignment = vec![false; formula.n_vars()];
    for (var, value) in assignment.iter_mut().enumerate() {
        let d = formula.occurrences(var).len();
        if d == 0 {
            continue;
        }
        let mut seen: Option<bool> = None;
        for copy in 0..3u8 {
            for ring in 0..layout.rings {
                let count = |negated: bool| {
                    (0..d)
                        .filter(|&occ| used.contains(&eidx[&(Some(copy), EdgeRole::Ring { var, ring, occ, negated })]))
                        .count()
                };
                let (pos, neg) = (count(false), count(true));
                let ring_value = match (pos, neg) {
                    (p, 0) if p == d => true,
                    (0, q) if q == d => false,
                    _ => {
                        return Err(Error::NonCanonicalMatching(format!(
                            "variable {} ring {} (copy {}) uses {pos} positive and {neg} negative edges",
                            var + 1,
                            ring + 1,
                            copy + 1
                        )))
                    }
                };
                match seen {
                    None => seen = Some(ring_value),
                    Some(v) if v != ring_value => {
                        return Err(Error::NonCanonicalMatching(format!(
                            "rings of variable {} disagree",
                            var + 1
                        )))
                    }
                    _ => {}
                }
            }
        }
        *value = seen.unwrap();
    }
    Ok(assignment)
}

/// Replaces the restrictions of a matching to the three copies by copies of
/// the largest one and re-adds every root edge whose roots are all free.
pub fn symmetrize(layout: &ReductionLayout, matching: &[usize]) -> Vec<usize> {
    let mut per_copy = [Vec::new(), Vec::new(), Vec::new()];
    for &id in matching {
        if let Some(c) = layout.edges[id].copy {
            per_copy[c as usize].push(id);
        }
    }
    let best = (0..3).max_by_key(|&c| (per_copy[c].len(), std::cmp::Reverse(c))).unwrap();
    let eidx = layout.edge_index();
    let mut out = Vec::new();
    let mut covered = vec![false; layout.vertices.len()];
    for &id in &per_copy[best] {
        let role = layout.edges[id].role;
        for c in 0..3u8 {
            let e = eidx[&(Some(c), role)];
            layout.edges[e].vertices.iter().for_each(|&v| covered[v] = true);
            out.push(e);
        }
    }
    for (id, e) in layout.edges.iter().enumerate() {
        if e.copy.is_none() && e.vertices.iter().all(|&v| !covered[v]) {
            e.vertices.iter().for_each(|&v| covered[v] = true);
            out.push(id);
        }
    }
    out.sort_unstable();
    out
}

/// All formulas with at most `max_vars` variables and between 1 and
/// `max_clauses` clauses, one representative per class under renaming
/// variables, flipping polarities and reordering clauses. Every variable of
/// a representative occurs, and its bound is its largest occurrence count.
pub fn small_formulas(max_vars: usize, max_clauses: usize) -> Vec<SatBFormula> {
    let mut clause_pool: Vec<Vec<Literal>> = Vec::new();
    for mask in 1u32..(1 << max_vars) {
        let vars: Vec<usize> = (0..max_vars).filter(|v| mask >> v & 1 == 1).collect();
        for signs in 0u32..(1 << vars.len()) {
            if vars.len() > 3 {
                continue;
            }
            clause_pool.push(
                vars.iter().enumerate().map(|(i, &var)| Literal { var, negated: signs >> i & 1 == 1 }).collect(),
            );
        }
    }
    let perms = crate::exact::permutations(max_vars);
    let canonical = |clauses: &[Vec<Literal>]| -> Vec<Vec<Literal>> {
        let mut best: Option<Vec<Vec<Literal>>> = None;
        for perm in &perms {
            for flips in 0u32..(1 << max_vars) {
                let mut form: Vec<Vec<Literal>> = clauses
                    .iter()
                    .map(|c| {
                        let mut c: Vec<Literal> = c
                            .iter()
                            .map(|l| Literal { var: perm[l.var], negated: l.negated ^ (flips >> l.var & 1 == 1) })
                            .collect();
                        c.sort();
                        c
                    })
                    .collect();
                form.sort();
                if best.as_ref().is_none_or(|b| form < *b) {
                    best = Some(form);
                }
            }
        }
        best.unwrap()
    };
    let mut seen = BTreeSet::new();
    let mut stack: Vec<(usize, Vec<Vec<Literal>>)> = vec![(0, Vec::new())];
    while let Some((start, clauses)) = stack.pop() {
        if !clauses.is_empty() {
            seen.insert(canonical(&clauses));
        }
        if clauses.len() < max_clauses {
            for idx in start..clause_pool.len() {
                let mut next = clauses.clone();
                next.push(clause_pool[idx].clone());
                stack.push((idx, next));
            }
        }
    }
    seen.into_iter()
        .map(|clauses| {
            let mut used: Vec<usize> = clauses.iter().flatten().map(|l| l.var).collect();
            used.sort_unstable();
            used.dedup();
            let signed: Vec<Vec<i64>> = clauses
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|l| Literal { var: used.binary_search(&l.var).unwrap(), negated: l.negated }.to_signed())
                        .collect()
                })
                .collect();
            let bound = (0..used.len())
                .map(|v| clauses.iter().filter(|c| c.iter().any(|l| l.var == used[v])).count())
                .max()
                .unwrap_or(1);
            SatBFormula::new(used.len(), signed, bound).expect("enumerated formulas are valid")
        })
        .collect()
}

/// Vertices of a 3DM instance left uncovered by a matching of `size` edges.
pub fn uncovered(dm: &DmInstance, size: usize) -> usize {
    3 * (dm.m() - size)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_counts() {
        assert_eq!(rings_per_variable(1), 2);
        assert_eq!(rings_per_variable(2), 4);
        assert_eq!(rings_per_variable(3), 4);
        assert_eq!(rings_per_variable(4), 4);
        assert_eq!(rings_per_variable(5), 8);
        assert_eq!(rings_per_variable(10), 16);
    }

    #[test]
    fn tree_parts_alternate() {
        let p = tree_parts(4);
        assert_eq!(&p[1..], &[0, 1, 2, 2, 0, 0, 1]);
    }

    #[test]
    fn formula_validation() {
        assert!(SatBFormula::new(1, vec![vec![1, -1]], 2).is_err());
        assert!(SatBFormula::new(1, vec![vec![2]], 2).is_err());
        assert!(SatBFormula::new(1, vec![vec![1], vec![1]], 1).is_err());
        assert!(SatBFormula::new(2, vec![vec![1, 2, -1, 2]], 3).is_err());
        let f = SatBFormula::new(1, vec![vec![]], 1).unwrap();
        assert!(matches!(sat_to_3dm3(&f), Err(Error::EmptyClause(1))));
    }

    #[test]
    fn single_literal_formula() {
        let f = SatBFormula::new(1, vec![vec![1]], 1).unwrap();
        let (dm, layout) = sat_to_3dm3(&f).unwrap();
        assert_eq!(layout.rings, 2);
        // per copy: 2 rings × 4 vertices, 2 roots, 2 clause vertices
        assert_eq!(layout.vertices_per_copy(), 12);
        assert_eq!(dm.m(), 12);
        let m = assignment_to_matching(&f, &layout, &[true]).unwrap();
        assert!(dm.is_matching(&m));
        assert_eq!(uncovered(&dm, m.len()), 0);
        let m = assignment_to_matching(&f, &layout, &[false]).unwrap();
        assert_eq!(uncovered(&dm, m.len()), 6);
        assert_eq!(decode_matching_to_assignment(&f, &layout, &m).unwrap(), vec![false]);
    }

    #[test]
    fn inconsistent_rings_rejected() {
        let f = SatBFormula::new(2, vec![vec![1, 2], vec![-1]], 2).unwrap();
        let (_, layout) = sat_to_3dm3(&f).unwrap();
        let eidx = layout.edge_index();
        let mut m = assignment_to_matching(&f, &layout, &[true, false]).unwrap();
        // swap ring 2 of variable 1 (copy 1) to its negative edges
        for occ in 0..2 {
            m.retain(|&e| e != eidx[&(Some(0), EdgeRole::Ring { var: 0, ring: 1, occ, negated: false })]);
            m.push(eidx[&(Some(0), EdgeRole::Ring { var: 0, ring: 1, occ, negated: true })]);
        }
        assert!(matches!(decode_matching_to_assignment(&f, &layout, &m), Err(Error::NonCanonicalMatching(_))));
    }

    #[test]
    fn round_trip_two_variables() {
        let f = SatBFormula::new(2, vec![vec![1, 2], vec![-1, 2], vec![1, -2]], 3).unwrap();
        let (dm, layout) = sat_to_3dm3(&f).unwrap();
        for mask in 0..4 {
            let a = vec![mask & 1 == 1, mask & 2 == 2];
            let m = assignment_to_matching(&f, &layout, &a).unwrap();
            assert!(dm.is_matching(&m));
            assert_eq!(uncovered(&dm, m.len()), 6 * (3 - f.satisfied(&a)));
            assert_eq!(decode_matching_to_assignment(&f, &layout, &m).unwrap(), a);
            assert_eq!(symmetrize(&layout, &m), m);
        }
    }
}

//! Exhaustive solvers used as ground truth: optimal marriages and
//! submarriages for 3GSM, optimal matchings and submatchings for 3PSA, and a
//! branch-and-bound maximum 3-dimensional matching.
//!
//! Every solver refuses inputs above a size limit (overridable) and reports
//! how many candidates it visited.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{DmInstance, GsmInstance, PsaInstance};
use crate::solution::{Family, Marriage, Submarriage, Submatching};
use crate::stability::{marriage_instability, stability_report_gsm, stability_report_psa};

pub const DEFAULT_MSM_LIMIT: usize = 6;
pub const DEFAULT_MSS_LIMIT: usize = 4;
pub const DEFAULT_PSA_MSM_LIMIT: usize = 9;
pub const DEFAULT_PSA_MSS_LIMIT: usize = 6;
pub const DEFAULT_DM_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Msm,
    Mss,
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// All `k`-subsets of `0..n`, lexicographic.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct MsmOptimum {
    pub marriage: Marriage,
    pub stab: u64,
    /// Marriages examined, `(n!)²`.
    pub enumerated: u64,
}

/// A stability-maximising marriage by enumerating every `(σ, τ)`. Ties go
/// to the lexicographically smallest `(σ, τ)`.
pub fn msm_opt(inst: &GsmInstance, limit: usize) -> Result<MsmOptimum> {
    let n = inst.n();
    if n > limit {
        return Err(Error::InstanceTooLarge { size: n, limit });
    }
    let perms = permutations(n);
    // key (ins, σ index, τ index) is unique, so the parallel reduction is deterministic
    let (ins, si, ti) = perms
        .par_iter()
        .enumerate()
        .map(|(si, sigma)| {
            let mut best = (u64::MAX, si, 0);
            for (ti, tau) in perms.iter().enumerate() {
                let ins = marriage_instability(inst, sigma, tau);
                if ins < best.0 {
                    best = (ins, si, ti);
                }
            }
            best
        })
        .min()
        .expect("at least one permutation");
    let count = perms.len() as u64;
    Ok(MsmOptimum {
        marriage: Marriage::from_permutations(&perms[si], &perms[ti])?,
        stab: (n as u64).pow(3) - ins,
        enumerated: count * count,
    })
}

/// Distribution summary over every marriage, for exhaustive checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MarriageScan {
    pub enumerated: u64,
    pub min_ins: u64,
    pub max_ins: u64,
}

/// Instability range over all `(n!)²` marriages.
pub fn scan_all_marriages(inst: &GsmInstance, limit: usize) -> Result<MarriageScan> {
    let n = inst.n();
    if n > limit {
        return Err(Error::InstanceTooLarge { size: n, limit });
    }
    let perms = permutations(n);
    let (min_ins, max_ins) = perms
        .par_iter()
        .map(|sigma| {
            perms.iter().fold((u64::MAX, 0), |(lo, hi), tau| {
                let ins = marriage_instability(inst, sigma, tau);
                (lo.min(ins), hi.max(ins))
            })
        })
        .reduce(|| (u64::MAX, 0), |a, b| (a.0.min(b.0), a.1.max(b.1)));
    let count = perms.len() as u64;
    Ok(MarriageScan { enumerated: count * count, min_ins, max_ins })
}

#[derive(Clone, Debug)]
pub struct MssOptimum {
    pub submarriage: Submarriage,
    pub size: usize,
    pub enumerated: u64,
}

/// A maximum-cardinality stable submarriage. Sizes are tried from `n`
/// downwards; within a size the first stable submarriage in lexicographic
/// order of (women, men, dogs, pairing) wins.
pub fn mss_opt(inst: &GsmInstance, limit: usize) -> Result<MssOptimum> {
    let n = inst.n();
    if n > limit {
        return Err(Error::InstanceTooLarge { size: n, limit });
    }
    let mut enumerated = 0u64;
    for size in (1..=n).rev() {
        let subsets = combinations(n, size);
        let perms = permutations(size);
        for ws in &subsets {
            for ms in &subsets {
                for ds in &subsets {
                    for pm in &perms {
                        for pd in &perms {
                            enumerated += 1;
                            let fams = (0..size).map(|x| Family::new(ws[x], ms[pm[x]], ds[pd[x]])).collect();
                            let sub = Submarriage::new(n, fams)?;
                            if stability_report_gsm(inst, &sub, false).ins == 0 {
                                return Ok(MssOptimum { submarriage: sub, size, enumerated });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(MssOptimum { submarriage: Submarriage::empty(n), size: 0, enumerated: enumerated + 1 })
}

/// Every matching (partition into triples) of `0..players`, each triple
/// built around the lowest unassigned player.
pub fn all_psa_matchings(players: usize) -> Vec<Vec<[usize; 3]>> {
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<[usize; 3]>, out: &mut Vec<Vec<[usize; 3]>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let u = free[0];
        let rest: Vec<usize> = free[1..].to_vec();
        for x in 0..rest.len() {
            for y in x + 1..rest.len() {
                let (v, w) = (rest[x], rest[y]);
                let mut next: Vec<usize> = rest.iter().copied().filter(|&p| p != v && p != w).collect();
                cur.push([u, v, w]);
                rec(&mut next, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if players % 3 == 0 {
        rec(&mut (0..players).collect(), &mut Vec::new(), &mut out);
    }
    out
}

/// Every submatching of `0..players`.
pub fn all_psa_submatchings(players: usize) -> Vec<Vec<[usize; 3]>> {
    fn rec(free: &[usize], cur: &mut Vec<[usize; 3]>, out: &mut Vec<Vec<[usize; 3]>>) {
        let Some((&u, rest)) = free.split_first() else {
            out.push(cur.clone());
            return;
        };
        // u unmatched
        rec(rest, cur, out);
        for x in 0..rest.len() {
            for y in x + 1..rest.len() {
                let (v, w) = (rest[x], rest[y]);
                let next: Vec<usize> = rest.iter().copied().filter(|&p| p != v && p != w).collect();
                cur.push([u, v, w]);
                rec(&next, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    let all: Vec<usize> = (0..players).collect();
    rec(&all, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct PsaOptimum {
    pub submatching: Submatching,
    /// `stab` for [`Mode::Msm`], cardinality for [`Mode::Mss`].
    pub value: u64,
    pub enumerated: u64,
}

/// Exhaustive 3PSA optimum. For [`Mode::Msm`] the best matching by stability;
/// for [`Mode::Mss`] the largest stable submatching. First optimum in
/// enumeration order wins.
pub fn psa_opt(inst: &PsaInstance, mode: Mode, limit: usize) -> Result<PsaOptimum> {
    let players = inst.players();
    if players > limit {
        return Err(Error::InstanceTooLarge { size: players, limit });
    }
    let candidates = match mode {
        Mode::Msm => all_psa_matchings(players),
        Mode::Mss => all_psa_submatchings(players),
    };
    let enumerated = candidates.len() as u64;
    let mut best: Option<(u64, Submatching)> = None;
    for triples in candidates {
        let sub = Submatching::new(players, triples)?;
        let report = stability_report_psa(inst, &sub, false);
        let value = match mode {
            Mode::Msm => report.stab,
            Mode::Mss if report.ins == 0 => sub.len() as u64,
            Mode::Mss => continue,
        };
        if best.as_ref().map_or(true, |(v, _)| value > *v) {
            best = Some((value, sub));
        }
    }
    let (value, submatching) = best.expect("the empty submatching is always stable");
    Ok(PsaOptimum { submatching, value, enumerated })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DmMatching {
    /// Edge ids, increasing.
    pub edges: Vec<usize>,
    /// Search nodes expanded.
    pub nodes: u64,
}

impl DmMatching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// Branch-and-bound state for [`max_3dm`]. Vertices are numbered
/// `part * m + index`.
struct DmSearch<'a> {
    edges: &'a [[usize; 3]],
    m: usize,
    incident: Vec<Vec<usize>>,
    covered: Vec<bool>,
    // vertex given up: left uncovered for good
    dead: Vec<bool>,
    // edge usable: every endpoint is neither covered nor dead
    alive: Vec<bool>,
    avail: Vec<u32>,
    dead_count: [usize; 3],
    budget: usize,
    chosen: Vec<usize>,
    nodes: u64,
    node_limit: u64,
    trail: Vec<Undo>,
}

enum Undo {
    Edge(usize),
    Dead(usize),
}

impl DmSearch<'_> {
    fn vertex(&self, e: usize, part: usize) -> usize {
        part * self.m + self.edges[e][part]
    }

    fn kill_edge(&mut self, e: usize) {
        self.alive[e] = false;
        self.trail.push(Undo::Edge(e));
        for p in 0..3 {
            let v = self.vertex(e, p);
            self.avail[v] -= 1;
        }
    }

    fn mark_dead(&mut self, v: usize) {
        self.dead[v] = true;
        self.dead_count[v / self.m] += 1;
        self.trail.push(Undo::Dead(v));
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Edge(e) => {
                    self.alive[e] = true;
                    for p in 0..3 {
                        let v = self.vertex(e, p);
                        self.avail[v] += 1;
                    }
                }
                Undo::Dead(v) => {
                    self.dead[v] = false;
                    self.dead_count[v / self.m] -= 1;
                }
            }
        }
    }

    /// Removes every edge at `v` and marks neighbours that lose their last
    /// edge as dead. Returns false once some part exceeds the budget.
    fn retire(&mut self, v: usize) -> bool {
        for idx in 0..self.incident[v].len() {
            let e = self.incident[v][idx];
            if !self.alive[e] {
                continue;
            }
            self.kill_edge(e);
            for p in 0..3 {
                let u = self.vertex(e, p);
                if u != v && self.avail[u] == 0 && !self.covered[u] && !self.dead[u] {
                    self.mark_dead(u);
                }
            }
        }
        self.dead_count.iter().all(|&d| d <= self.budget)
    }

    fn take(&mut self, e: usize) -> bool {
        self.chosen.push(e);
        let vs: Vec<usize> = (0..3).map(|p| self.vertex(e, p)).collect();
        for &v in &vs {
            self.covered[v] = true;
        }
        let mut ok = true;
        for &v in &vs {
            ok &= self.retire(v);
        }
        ok
    }

    fn untake(&mut self, e: usize, mark: usize) {
        self.undo_to(mark);
        for p in 0..3 {
            let v = self.vertex(e, p);
            self.covered[v] = false;
        }
        self.chosen.pop();
    }

    /// True iff the rest can be completed leaving at most `budget`
    /// uncovered vertices in every part.
    fn dfs(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Timeout(self.node_limit));
        }
        // most constrained open vertex
        let mut pick: Option<(u32, usize)> = None;
        for v in 0..3 * self.m {
            if self.covered[v] || self.dead[v] {
                continue;
            }
            let a = self.avail[v];
            if pick.map_or(true, |(b, _)| a < b) {
                pick = Some((a, v));
                if a <= 1 {
                    break;
                }
            }
        }
        let Some((_, v)) = pick else { return Ok(true) };

        let options: Vec<usize> = self.incident[v].iter().copied().filter(|&e| self.alive[e]).collect();
        for e in options {
            let mark = self.trail.len();
            if self.take(e) && self.dfs()? {
                return Ok(true);
            }
            self.untake(e, mark);
        }
        if self.dead_count[v / self.m] < self.budget {
            let mark = self.trail.len();
            self.mark_dead(v);
            if self.retire(v) && self.dfs()? {
                return Ok(true);
            }
            self.undo_to(mark);
        }
        Ok(false)
    }
}

/// Maximum matching of a 3DM instance with the default node budget.
pub fn max_3dm(dm: &DmInstance) -> Result<DmMatching> {
    max_3dm_with_budget(dm, DEFAULT_DM_BUDGET)
}

/// Exact maximum matching by iterative deepening on the number of
/// uncovered elements per part. Each round is a depth-first search that
/// branches on the open element with the fewest usable edges: cover it with
/// one of them, or give it up while the round's allowance lasts.
///
/// Every matching leaves the same number of elements uncovered in each
/// part, so the first allowance that admits a completion is optimal.
pub fn max_3dm_with_budget(dm: &DmInstance, node_limit: u64) -> Result<DmMatching> {
    let m = dm.m();
    let edges = dm.edges();
    let mut incident = vec![Vec::new(); 3 * m];
    for (id, e) in edges.iter().enumerate() {
        for p in 0..3 {
            incident[p * m + e[p]].push(id);
        }
    }
    // duplicate edges never help; keep the first copy
    let mut seen = std::collections::HashSet::new();
    let alive: Vec<bool> = edges.iter().map(|e| seen.insert(*e)).collect();
    let mut avail = vec![0u32; 3 * m];
    for (id, e) in edges.iter().enumerate() {
        if alive[id] {
            for p in 0..3 {
                avail[p * m + e[p]] += 1;
            }
        }
    }
    let mut search = DmSearch {
        edges,
        m,
        incident,
        covered: vec![false; 3 * m],
        dead: vec![false; 3 * m],
        alive,
        avail,
        dead_count: [0; 3],
        budget: 0,
        chosen: Vec::new(),
        nodes: 0,
        node_limit,
        trail: Vec::new(),
    };
    for v in 0..3 * m {
        if search.avail[v] == 0 {
            search.mark_dead(v);
        }
    }
    let base = search.trail.len();
    let start = *search.dead_count.iter().max().unwrap();
    for budget in start..=m {
        search.budget = budget;
        search.undo_to(base);
        if search.dfs()? {
            let mut chosen = search.chosen.clone();
            chosen.sort_unstable();
            return Ok(DmMatching { edges: chosen, nodes: search.nodes });
        }
    }
    unreachable!("leaving every element uncovered is always feasible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_gadget2, gen_random, gen_random_psa};

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(5).len(), 120);
        assert_eq!(combinations(4, 2).len(), 6);
    }

    #[test]
    fn trivial_optima() {
        let inst = GsmInstance::from_ranks(1, [vec![vec![0]], vec![vec![0]], vec![vec![0]]]).unwrap();
        assert_eq!(msm_opt(&inst, 6).unwrap().stab, 1);
        assert_eq!(mss_opt(&inst, 4).unwrap().size, 1);
        let psa = PsaInstance::from_ranks(3, vec![vec![0]; 3]).unwrap();
        assert_eq!(psa_opt(&psa, Mode::Msm, 9).unwrap().value, 1);
        assert_eq!(psa_opt(&psa, Mode::Mss, 6).unwrap().value, 1);
    }

    #[test]
    fn size_limits() {
        let inst = gen_random(5, 0);
        assert!(matches!(mss_opt(&inst, 4), Err(Error::InstanceTooLarge { size: 5, limit: 4 })));
        assert!(matches!(msm_opt(&gen_random(7, 0), 6), Err(Error::InstanceTooLarge { .. })));
        let psa = gen_random_psa(12, 0).unwrap();
        assert!(matches!(psa_opt(&psa, Mode::Msm, 9), Err(Error::InstanceTooLarge { .. })));
    }

    #[test]
    fn gadget_mss_is_one() {
        let out = mss_opt(&gen_gadget2(), 4).unwrap();
        assert_eq!(out.size, 1);
    }

    #[test]
    fn matching_enumeration_sizes() {
        assert_eq!(all_psa_matchings(6).len(), 10);
        assert_eq!(all_psa_matchings(9).len(), 280);
        assert_eq!(all_psa_matchings(12).len(), 15400);
        // 1 empty + 20 singles + 10 pairs
        assert_eq!(all_psa_submatchings(6).len(), 31);
    }

    #[test]
    fn msm_scan_agree() {
        for seed in 0..4 {
            let inst = gen_random(3, seed);
            let opt = msm_opt(&inst, 6).unwrap();
            let scan = scan_all_marriages(&inst, 6).unwrap();
            assert_eq!(opt.enumerated, 36);
            assert_eq!(opt.stab, 27 - scan.min_ins);
        }
    }

    #[test]
    fn tiny_3dm() {
        let dm = DmInstance::new(1, vec![[0, 0, 0]]).unwrap();
        assert_eq!(max_3dm(&dm).unwrap().size(), 1);
        let dm = DmInstance::new(2, vec![[0, 0, 0], [0, 1, 1]]).unwrap();
        assert_eq!(max_3dm(&dm).unwrap().size(), 1);
        let dm = DmInstance::new(3, vec![]).unwrap();
        assert_eq!(max_3dm(&dm).unwrap().size(), 0);
    }

    #[test]
    fn dm_timeout() {
        let (dm, _) = crate::generators::gen_planted_dm(8, 16, 3);
        assert!(matches!(max_3dm_with_budget(&dm, 2), Err(Error::Timeout(2))));
    }
}

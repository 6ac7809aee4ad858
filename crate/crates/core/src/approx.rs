//! Greedy 4/9-approximations for maximally stable marriages (AMSM) and
//! matchings (ASA).
//!
//! Both repeatedly pick the triple with the largest *stable set* among the
//! players still unassigned, fix it as a family, and recurse on the rest.
//! The stable set of a triple is every triple sharing a member who weakly
//! prefers the candidate to it; none of those can block once the candidate
//! is a family.
//!
//! Restricting preferences to the survivors keeps relative order, so stable
//! sets are computed against the original rank rows over surviving indices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{choose2, choose3, Gender, GsmInstance, PsaInstance};
use crate::solution::{Family, Marriage, Matching};
use crate::stability::{stability_report_gsm, stability_report_psa, StabilityReport};

/// Per-step constant of the ASA guarantee: `stab(ASA) >= 2n³ - ASA_C0 · n²`.
/// Follows from summing [`asa_step_bound`] over all steps.
pub const ASA_C0: u64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableSetStats {
    pub triple: [usize; 3],
    pub size: u64,
}

/// One greedy step: the chosen triple, how many players per gender (or
/// triples' worth of players, for 3PSA) were left, and its stable-set size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyStep {
    pub triple: [usize; 3],
    pub remaining: usize,
    pub stable_set: u64,
}

#[derive(Clone, Debug)]
pub struct AmsmOutcome {
    pub marriage: Marriage,
    pub report: StabilityReport,
    pub steps: Vec<GreedyStep>,
}

#[derive(Clone, Debug)]
pub struct AsaOutcome {
    pub matching: Matching,
    pub report: StabilityReport,
    pub steps: Vec<GreedyStep>,
}

/// `|S_ijk|` restricted to the surviving players `alive`.
pub fn stable_set_size_within(inst: &GsmInstance, alive: [&[usize]; 3], (i, j, k): (usize, usize, usize)) -> u64 {
    let n = inst.n();
    let row_a = inst.rank_row(Gender::Woman, i);
    let row_b = inst.rank_row(Gender::Man, j);
    let row_d = inst.rank_row(Gender::Dog, k);
    let ra = row_a[j * n + k];
    let rb = row_b[i * n + k];
    let rd = row_d[i * n + j];

    let count2 = |row: &[u32], r: u32, xs: &[usize], ys: &[usize]| -> u64 {
        let mut c = 0;
        for &x in xs {
            for &y in ys {
                if row[x * n + y] >= r {
                    c += 1;
                }
            }
        }
        c
    };
    let sa = count2(row_a, ra, alive[1], alive[2]);
    let sb = count2(row_b, rb, alive[0], alive[2]);
    let sd = count2(row_d, rd, alive[0], alive[1]);
    let sab = alive[2].iter().filter(|&&d| row_a[j * n + d] >= ra && row_b[i * n + d] >= rb).count() as u64;
    let sad = alive[1].iter().filter(|&&b| row_a[b * n + k] >= ra && row_d[i * n + b] >= rd).count() as u64;
    let sbd = alive[0].iter().filter(|&&a| row_b[a * n + k] >= rb && row_d[a * n + j] >= rd).count() as u64;
    // the triple itself is the only member of all three parts
    sa + sb + sd - sab - sad - sbd + 1
}

pub fn stable_set_size(inst: &GsmInstance, triple: (usize, usize, usize)) -> Result<StableSetStats> {
    let n = inst.n();
    for idx in [triple.0, triple.1, triple.2] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, limit: n });
        }
    }
    let all: Vec<usize> = (0..n).collect();
    Ok(StableSetStats {
        triple: [triple.0, triple.1, triple.2],
        size: stable_set_size_within(inst, [&all, &all, &all], triple),
    })
}

/// Lower bound on the best stable-set size with `k` players per gender
/// left: `⌈4k²/3 - k - 1⌉`, floored at 0.
pub fn amsm_step_bound(k: usize) -> u64 {
    let k = k as i64;
    let num = 4 * k * k - 3 * k - 3;
    if num <= 0 {
        0
    } else {
        ((num + 2) / 3) as u64
    }
}

/// Closed-form ceiling on `ins(AMSM)`: `Σ_{k=1..n} (5k²/3 + k + 1)
/// = 5n(n+1)(2n+1)/18 + n(n+3)/2`, rounded down.
pub fn amsm_ins_bound(n: usize) -> u64 {
    let n = n as u64;
    (5 * n * (n + 1) * (2 * n + 1) + 9 * n * (n + 3)) / 18
}

/// Greedy maximally-stable-marriage approximation. Among maximisers the
/// lexicographically smallest `(i, j, k)` is taken.
pub fn amsm(inst: &GsmInstance) -> AmsmOutcome {
    let n = inst.n();
    let mut alive: [Vec<usize>; 3] = [(0..n).collect(), (0..n).collect(), (0..n).collect()];
    let mut families = Vec::with_capacity(n);
    let mut steps = Vec::with_capacity(n);
    while !alive[0].is_empty() {
        let view = [&alive[0][..], &alive[1][..], &alive[2][..]];
        let mut best: Option<(u64, (usize, usize, usize))> = None;
        for &i in view[0] {
            for &j in view[1] {
                for &k in view[2] {
                    let s = stable_set_size_within(inst, view, (i, j, k));
                    // strict comparison keeps the first (lexicographically smallest) maximiser
                    if best.map_or(true, |(b, _)| s > b) {
                        best = Some((s, (i, j, k)));
                    }
                }
            }
        }
        let (size, (i, j, k)) = best.expect("non-empty survivors");
        steps.push(GreedyStep { triple: [i, j, k], remaining: alive[0].len(), stable_set: size });
        families.push(Family::new(i, j, k));
        alive[0].retain(|&x| x != i);
        alive[1].retain(|&x| x != j);
        alive[2].retain(|&x| x != k);
    }
    let marriage = Marriage::from_families(n, families).expect("greedy picks disjoint families");
    let report = stability_report_gsm(inst, marriage.as_submarriage(), false);
    AmsmOutcome { marriage, report, steps }
}

/// `|S_abc|` for the 3PSA triple `{a, b, c}` among surviving players.
pub fn psa_stable_set_size_within(inst: &PsaInstance, alive: &[usize], [a, b, c]: [usize; 3]) -> u64 {
    let weakly_worse = |x: usize, y: usize, z: usize| -> u64 {
        let r = inst.rank(x, y, z);
        let mut cnt = 0;
        for (p, &v) in alive.iter().enumerate() {
            if v == x {
                continue;
            }
            for &w in &alive[p + 1..] {
                if w != x && inst.rank(x, v, w) >= r {
                    cnt += 1;
                }
            }
        }
        cnt
    };
    let both = |x: usize, y: usize, z: usize| -> u64 {
        let (rx, ry) = (inst.rank(x, y, z), inst.rank(y, x, z));
        alive
            .iter()
            .filter(|&&w| w != x && w != y && inst.rank(x, y, w) >= rx && inst.rank(y, x, w) >= ry)
            .count() as u64
    };
    weakly_worse(a, b, c) + weakly_worse(b, a, c) + weakly_worse(c, a, b) - both(a, b, c) - both(a, c, b) - both(b, c, a)
        + 1
}

/// Per-step guarantee for ASA with `3k` players left. Some triple has two
/// members that each rank it within their top `⌊P/3⌋ + 1` pairs, where
/// `P = C(3k-1, 2)`, so its stable set holds at least
/// `2(P - ⌊P/3⌋) - (3k - 2)` triples.
pub fn asa_step_bound(k: usize) -> u64 {
    if k == 0 {
        return 0;
    }
    let p = choose2(3 * k - 1) as u64;
    2 * (p - p / 3) - (3 * k as u64 - 2)
}

/// Lower bound on `stab(ASA)` for `3n` players: the per-step bounds summed.
pub fn asa_stab_bound(n: usize) -> u64 {
    (1..=n).map(asa_step_bound).sum()
}

/// Ceiling on `ins(ASA)`: total triples minus [`asa_stab_bound`].
pub fn asa_ins_bound(n: usize) -> u64 {
    choose3(3 * n) - asa_stab_bound(n)
}

/// Greedy maximally-stable-matching approximation for 3PSA, with the
/// lexicographically smallest sorted triple taken among maximisers.
pub fn asa(inst: &PsaInstance) -> AsaOutcome {
    let mut alive: Vec<usize> = (0..inst.players()).collect();
    let mut triples = Vec::with_capacity(inst.n());
    let mut steps = Vec::with_capacity(inst.n());
    while !alive.is_empty() {
        let mut best: Option<(u64, [usize; 3])> = None;
        let k = alive.len();
        for x in 0..k {
            for y in x + 1..k {
                for z in y + 1..k {
                    let t = [alive[x], alive[y], alive[z]];
                    let s = psa_stable_set_size_within(inst, &alive, t);
                    if best.map_or(true, |(b, _)| s > b) {
                        best = Some((s, t));
                    }
                }
            }
        }
        let (size, t) = best.expect("at least three survivors");
        steps.push(GreedyStep { triple: t, remaining: alive.len() / 3, stable_set: size });
        triples.push(t);
        alive.retain(|u| !t.contains(u));
    }
    let matching = Matching::new(inst.players(), triples).expect("greedy picks disjoint triples");
    let report = stability_report_psa(inst, matching.as_submatching(), false);
    AsaOutcome { matching, report, steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_gadget2, gen_random, gen_random_psa};

    /// Stable-set membership straight from the definition.
    fn brute_stable_set(inst: &GsmInstance, alive: [&[usize]; 3], (i, j, k): (usize, usize, usize)) -> u64 {
        let mut c = 0;
        for &a in alive[0] {
            for &b in alive[1] {
                for &d in alive[2] {
                    let by_a = a == i && inst.triple_rank(Gender::Woman, a, b, d) >= inst.triple_rank(Gender::Woman, i, j, k);
                    let by_b = b == j && inst.triple_rank(Gender::Man, a, b, d) >= inst.triple_rank(Gender::Man, i, j, k);
                    let by_d = d == k && inst.triple_rank(Gender::Dog, a, b, d) >= inst.triple_rank(Gender::Dog, i, j, k);
                    if by_a || by_b || by_d {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn single_triple() {
        let inst = GsmInstance::from_ranks(1, [vec![vec![0]], vec![vec![0]], vec![vec![0]]]).unwrap();
        assert_eq!(stable_set_size(&inst, (0, 0, 0)).unwrap().size, 1);
        let out = amsm(&inst);
        assert_eq!(out.report.stab, 1);
        assert!(stable_set_size(&inst, (0, 1, 0)).is_err());
    }

    #[test]
    fn matches_brute_force() {
        for seed in 0..10 {
            let inst = gen_random(4, seed);
            let all: Vec<usize> = (0..4).collect();
            let part: Vec<usize> = vec![0, 2, 3];
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        let s = stable_set_size(&inst, (i, j, k)).unwrap().size;
                        assert_eq!(s, brute_stable_set(&inst, [&all, &all, &all], (i, j, k)));
                        assert!(s <= 3 * 16 - 3 * 4 + 1);
                    }
                }
            }
            for &i in &part {
                for &j in &part {
                    for &k in &part {
                        assert_eq!(
                            stable_set_size_within(&inst, [&part, &part, &part], (i, j, k)),
                            brute_stable_set(&inst, [&part, &part, &part], (i, j, k))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gadget_stable_sets() {
        // golden values, cross-checked against an independent script
        let g = gen_gadget2();
        let all = [0usize, 1];
        let mut table = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let s = stable_set_size(&g, (i, j, k)).unwrap().size;
                    assert_eq!(s, brute_stable_set(&g, [&all, &all, &all], (i, j, k)));
                    table.push(s);
                }
            }
        }
        assert_eq!(table, vec![6, 5, 3, 6, 3, 2, 6, 1]);
    }

    #[test]
    fn bounds_closed_forms() {
        assert_eq!(amsm_step_bound(1), 0);
        assert_eq!(amsm_step_bound(2), 3); // 16/3 - 3 = 2.33
        assert_eq!(amsm_step_bound(3), 8); // 12 - 4
        let direct: Vec<u64> = (1..=12u64)
            .map(|n| {
                let num: u64 = (1..=n).map(|k| 5 * k * k + 3 * k + 3).sum();
                num / 3
            })
            .collect();
        let closed: Vec<u64> = (1..=12).map(amsm_ins_bound).collect();
        assert_eq!(direct, closed);
        assert_eq!(asa_step_bound(1), 1);
        assert_eq!(asa_step_bound(2), 10);
        for n in 1..40 {
            let n64 = n as u64;
            assert!(asa_stab_bound(n) + ASA_C0 * n64 * n64 >= 2 * n64 * n64 * n64);
        }
    }

    #[test]
    fn amsm_deterministic_and_valid() {
        let inst = gen_random(6, 1);
        let a = amsm(&inst);
        let b = amsm(&inst);
        assert_eq!(a.marriage, b.marriage);
        assert_eq!(a.marriage.families().len(), 6);
        for s in &a.steps {
            assert!(s.stable_set >= amsm_step_bound(s.remaining));
        }
        assert!(a.report.ins <= amsm_ins_bound(6));
    }

    #[test]
    fn asa_trivial() {
        let inst = PsaInstance::from_ranks(3, vec![vec![0]; 3]).unwrap();
        let out = asa(&inst);
        assert_eq!(out.report.stab, 1);
        assert_eq!(out.matching.triples(), &[[0, 1, 2]]);
    }

    #[test]
    fn psa_stable_set_brute() {
        let inst = gen_random_psa(9, 5).unwrap();
        let alive: Vec<usize> = (0..9).collect();
        let own = |x: usize, t: [usize; 3]| {
            let o: Vec<usize> = t.iter().copied().filter(|&y| y != x).collect();
            inst.rank(x, o[0], o[1])
        };
        for a in 0..9 {
            for b in a + 1..9 {
                for c in b + 1..9 {
                    let t = [a, b, c];
                    let mut brute = 0;
                    for u in 0..9 {
                        for v in u + 1..9 {
                            for w in v + 1..9 {
                                let s = [u, v, w];
                                if t.iter().any(|&x| s.contains(&x) && own(x, s) >= own(x, t)) {
                                    brute += 1;
                                }
                            }
                        }
                    }
                    assert_eq!(psa_stable_set_size_within(&inst, &alive, t), brute);
                }
            }
        }
    }
}

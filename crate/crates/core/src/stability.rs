//! Blocking-triple tests and stability reports.
//!
//! For a submarriage `S` the universe is `A_S × B_S × D_S`: players without a
//! family never block. For a 3PSA submatching the universe is every 3-set of
//! covered players.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{choose3, Gender, GsmInstance, PsaInstance, UNMATCHED};
use crate::solution::{Submarriage, Submatching};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    /// Number of triples in the universe.
    pub universe: u64,
    pub stab: u64,
    pub ins: u64,
    /// The unstable triples, when requested. 3GSM triples are `[a, b, d]`;
    /// 3PSA triples are sorted player indices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unstable: Option<Vec<[usize; 3]>>,
}

impl StabilityReport {
    fn from_counts(universe: u64, ins: u64, unstable: Option<Vec<[usize; 3]>>) -> Self {
        StabilityReport { universe, stab: universe - ins, ins, unstable }
    }

    /// `stab + ins` equals the universe, and a listing (if any) has `ins` entries.
    pub fn is_conserved(&self) -> bool {
        self.stab + self.ins == self.universe
            && self.unstable.as_ref().map_or(true, |l| l.len() as u64 == self.ins)
    }
}

/// Rank each player gives their own family, `UNMATCHED` if they have none.
pub(crate) fn current_ranks(inst: &GsmInstance, sub: &Submarriage) -> [Vec<u32>; 3] {
    Gender::ALL.map(|g| {
        (0..inst.n())
            .map(|p| match sub.family_of(g, p) {
                Some(f) => inst.triple_rank(g, f.woman, f.man, f.dog),
                None => UNMATCHED,
            })
            .collect()
    })
}

/// True iff each of `a`, `b`, `d` strictly prefers the triple to their own family.
pub fn is_unstable_triple_gsm(inst: &GsmInstance, sub: &Submarriage, triple: (usize, usize, usize)) -> Result<bool> {
    let (a, b, d) = triple;
    let n = inst.n();
    for (g, p) in [(Gender::Woman, a), (Gender::Man, b), (Gender::Dog, d)] {
        if p >= n {
            return Err(Error::IndexOutOfRange { index: p, limit: n });
        }
        if sub.family_of(g, p).is_none() {
            return Err(Error::UncoveredPlayer { gender: g, player: p });
        }
    }
    Ok(Gender::ALL.iter().all(|&g| {
        let own = sub.family_of(g, [a, b, d][g.index()]).unwrap();
        inst.triple_rank(g, a, b, d) < inst.triple_rank(g, own.woman, own.man, own.dog)
    }))
}

/// Counts (and optionally lists) unstable triples over the covered players.
/// `cur` holds each player's rank of their own family.
fn scan_gsm(
    inst: &GsmInstance,
    covered: [&[usize]; 3],
    cur: [&[u32]; 3],
    mut list: Option<&mut Vec<[usize; 3]>>,
) -> u64 {
    let mut ins = 0u64;
    for &a in covered[0] {
        let row_a = inst.rank_row(Gender::Woman, a);
        let ca = cur[0][a];
        for &b in covered[1] {
            let row_b = inst.rank_row(Gender::Man, b);
            let cb = cur[1][b];
            let base = b * inst.n();
            for &d in covered[2] {
                if row_a[base + d] < ca
                    && row_b[inst.pair_index(a, d)] < cb
                    && inst.rank(Gender::Dog, d, inst.pair_index(a, b)) < cur[2][d]
                {
                    ins += 1;
                    if let Some(l) = list.as_deref_mut() {
                        l.push([a, b, d]);
                    }
                }
            }
        }
    }
    ins
}

pub fn stability_report_gsm(inst: &GsmInstance, sub: &Submarriage, list: bool) -> StabilityReport {
    let covered = Gender::ALL.map(|g| sub.covered(g));
    let cur = current_ranks(inst, sub);
    let mut unstable = list.then(Vec::new);
    let ins = scan_gsm(
        inst,
        [&covered[0], &covered[1], &covered[2]],
        [&cur[0], &cur[1], &cur[2]],
        unstable.as_mut(),
    );
    let universe = covered.iter().map(|c| c.len() as u64).product();
    StabilityReport::from_counts(universe, ins, unstable)
}

/// Number of unstable triples of the marriage `{(i, sigma[i], tau[i])}`.
/// Skips validation; used by the exhaustive solvers.
pub fn marriage_instability(inst: &GsmInstance, sigma: &[usize], tau: &[usize]) -> u64 {
    let n = inst.n();
    let mut cur = [vec![0u32; n], vec![0u32; n], vec![0u32; n]];
    for a in 0..n {
        let (b, d) = (sigma[a], tau[a]);
        cur[0][a] = inst.triple_rank(Gender::Woman, a, b, d);
        cur[1][b] = inst.triple_rank(Gender::Man, a, b, d);
        cur[2][d] = inst.triple_rank(Gender::Dog, a, b, d);
    }
    let all: Vec<usize> = (0..n).collect();
    scan_gsm(inst, [&all, &all, &all], [&cur[0], &cur[1], &cur[2]], None)
}

/// Rank `u` gives the pair of their own triple, `UNMATCHED` when uncovered.
fn psa_current(inst: &PsaInstance, sub: &Submatching) -> Vec<u32> {
    (0..inst.players())
        .map(|u| sub.partners(u).map_or(UNMATCHED, |(v, w)| inst.rank(u, v, w)))
        .collect()
}

pub fn is_unstable_triple_psa(inst: &PsaInstance, sub: &Submatching, triple: [usize; 3]) -> Result<bool> {
    let [u, v, w] = triple;
    if u == v || v == w || u == w {
        return Err(Error::DimensionMismatch(format!("{triple:?} is not a 3-set")));
    }
    for p in triple {
        if p >= inst.players() {
            return Err(Error::IndexOutOfRange { index: p, limit: inst.players() });
        }
        if sub.partners(p).is_none() {
            return Err(Error::UncoveredPsaPlayer(p));
        }
    }
    let own = |x: usize| {
        let (y, z) = sub.partners(x).unwrap();
        inst.rank(x, y, z)
    };
    Ok(inst.rank(u, v, w) < own(u) && inst.rank(v, u, w) < own(v) && inst.rank(w, u, v) < own(w))
}

pub fn stability_report_psa(inst: &PsaInstance, sub: &Submatching, list: bool) -> StabilityReport {
    let covered = sub.covered();
    let cur = psa_current(inst, sub);
    let mut unstable = list.then(Vec::new);
    let mut ins = 0u64;
    let k = covered.len();
    for i in 0..k {
        let u = covered[i];
        for j in i + 1..k {
            let v = covered[j];
            for &w in &covered[j + 1..] {
                if inst.rank(u, v, w) < cur[u] && inst.rank(v, u, w) < cur[v] && inst.rank(w, u, v) < cur[w] {
                    ins += 1;
                    if let Some(l) = unstable.as_mut() {
                        l.push([u, v, w]);
                    }
                }
            }
        }
    }
    StabilityReport::from_counts(choose3(k), ins, unstable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_gadget2, gen_random};
    use crate::solution::{Family, Marriage};

    #[test]
    fn trivial_instance_is_stable() {
        let inst = GsmInstance::from_ranks(1, [vec![vec![0]], vec![vec![0]], vec![vec![0]]]).unwrap();
        let m = Marriage::from_permutations(&[0], &[0]).unwrap();
        let r = stability_report_gsm(&inst, m.as_submarriage(), true);
        assert_eq!((r.stab, r.ins, r.universe), (1, 0, 1));
    }

    #[test]
    fn gadget_blocking_triples() {
        let g = gen_gadget2();
        let m = Marriage::from_permutations(&[0, 1], &[0, 1]).unwrap();
        // a2 b2 d1 blocks {a1b1d1, a2b2d2}
        assert!(is_unstable_triple_gsm(&g, m.as_submarriage(), (1, 1, 0)).unwrap());
        let m = Marriage::from_families(2, vec![Family::new(0, 1, 1), Family::new(1, 0, 0)]).unwrap();
        // a1 b1 d1 blocks {a1b2d2, a2b1d1}
        assert!(is_unstable_triple_gsm(&g, m.as_submarriage(), (0, 0, 0)).unwrap());
    }

    #[test]
    fn own_family_never_blocks() {
        let inst = gen_random(4, 3);
        let m = Marriage::from_permutations(&[2, 0, 3, 1], &[1, 3, 0, 2]).unwrap();
        for f in m.families() {
            assert!(!is_unstable_triple_gsm(&inst, m.as_submarriage(), (f.woman, f.man, f.dog)).unwrap());
        }
    }

    #[test]
    fn uncovered_player_is_an_error() {
        let g = gen_gadget2();
        let s = Submarriage::new(2, vec![Family::new(0, 0, 0)]).unwrap();
        assert!(matches!(
            is_unstable_triple_gsm(&g, &s, (0, 1, 0)),
            Err(Error::UncoveredPlayer { gender: Gender::Man, player: 1 })
        ));
    }

    #[test]
    fn report_listing_matches_count() {
        let inst = gen_random(5, 11);
        let m = Marriage::from_permutations(&[4, 3, 2, 1, 0], &[0, 2, 4, 1, 3]).unwrap();
        let r = stability_report_gsm(&inst, m.as_submarriage(), true);
        assert!(r.is_conserved());
        assert_eq!(r.universe, 125);
        assert_eq!(r.ins, marriage_instability(&inst, &[4, 3, 2, 1, 0], &[0, 2, 4, 1, 3]));
        for t in r.unstable.as_ref().unwrap() {
            assert!(is_unstable_triple_gsm(&inst, m.as_submarriage(), (t[0], t[1], t[2])).unwrap());
        }
    }

    #[test]
    fn psa_three_players() {
        let inst = PsaInstance::from_ranks(3, vec![vec![0]; 3]).unwrap();
        let s = Submatching::new(3, vec![[0, 1, 2]]).unwrap();
        let r = stability_report_psa(&inst, &s, true);
        assert_eq!((r.stab, r.ins, r.universe), (1, 0, 1));
        assert!(!is_unstable_triple_psa(&inst, &s, [0, 1, 2]).unwrap());
    }
}

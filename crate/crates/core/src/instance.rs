//! Preference instances for the three-gender (3GSM) and three-person (3PSA)
//! problems, plus tripartite matching (3DM) instances.
//!
//! Rankings are 0-based with 0 the most preferred pair. The empty assignment
//! is never stored: every ranked pair beats it, so it behaves as the virtual
//! rank [`UNMATCHED`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rank of the empty assignment. Every real pair ranks strictly better.
pub const UNMATCHED: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gender {
    Woman,
    Man,
    Dog,
}

impl Gender {
    pub const ALL: [Gender; 3] = [Gender::Woman, Gender::Man, Gender::Dog];

    pub fn index(self) -> usize {
        match self {
            Gender::Woman => 0,
            Gender::Man => 1,
            Gender::Dog => 2,
        }
    }

    /// Single-letter prefix used when printing players (`a`, `b`, `d`).
    pub fn letter(self) -> char {
        match self {
            Gender::Woman => 'a',
            Gender::Man => 'b',
            Gender::Dog => 'd',
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Gender::Woman => "woman",
            Gender::Man => "man",
            Gender::Dog => "dog",
        };
        f.write_str(s)
    }
}

/// Checks that `row` is a bijection onto `0..len` and returns the first
/// repeated value otherwise.
fn check_bijection(row: &[usize], len: usize) -> std::result::Result<(), Option<usize>> {
    if row.len() != len {
        return Err(None);
    }
    let mut seen = vec![false; len];
    for &r in row {
        if r >= len {
            return Err(None);
        }
        if std::mem::replace(&mut seen[r], true) {
            return Err(Some(r));
        }
    }
    Ok(())
}

/// Inverts a preference list (pairs, best first) into a rank row.
fn ranks_from_list(list: &[usize], len: usize) -> std::result::Result<Vec<usize>, Option<usize>> {
    check_bijection(list, len)?;
    let mut ranks = vec![0; len];
    for (rank, &pair) in list.iter().enumerate() {
        ranks[pair] = rank;
    }
    Ok(ranks)
}

/// A 3GSM instance: `n` women, men and dogs, each ranking all `n²` pairs of
/// the two other genders.
///
/// A pair is indexed row-major by its two partners taken in gender order:
/// a woman ranks `man * n + dog`, a man ranks `woman * n + dog` and a dog
/// ranks `woman * n + man`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsmInstance {
    n: usize,
    // ranks[g][player * n² + pair]
    ranks: [Vec<u32>; 3],
}

impl GsmInstance {
    /// Builds an instance from rank tables: `tables[g][player][pair]` is the
    /// rank `player` of gender `g` gives to `pair`.
    pub fn from_ranks(n: usize, tables: [Vec<Vec<usize>>; 3]) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("n must be positive".into()));
        }
        let nn = n * n;
        let mut ranks: [Vec<u32>; 3] = Default::default();
        for g in Gender::ALL {
            let table = &tables[g.index()];
            if table.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{g} table has {} rows, expected {n}",
                    table.len()
                )));
            }
            let flat = &mut ranks[g.index()];
            flat.reserve(n * nn);
            for (player, row) in table.iter().enumerate() {
                match check_bijection(row, nn) {
                    Ok(()) => {}
                    Err(Some(rank)) => return Err(Error::DuplicateRank { gender: g, player, rank }),
                    Err(None) => {
                        return Err(Error::DimensionMismatch(format!(
                            "{g} {player} row must be a permutation of 0..{nn}"
                        )))
                    }
                }
                flat.extend(row.iter().map(|&r| r as u32));
            }
        }
        Ok(GsmInstance { n, ranks })
    }

    /// Builds an instance from preference lists: `lists[g][player]` lists all
    /// pair indices, most preferred first.
    pub fn from_preference_lists(n: usize, lists: [Vec<Vec<usize>>; 3]) -> Result<Self> {
        let nn = n * n;
        let mut tables: [Vec<Vec<usize>>; 3] = Default::default();
        for g in Gender::ALL {
            for (player, list) in lists[g.index()].iter().enumerate() {
                match ranks_from_list(list, nn) {
                    Ok(row) => tables[g.index()].push(row),
                    Err(Some(pair)) => {
                        // a repeated pair means some rank is left unused and another doubled
                        return Err(Error::DuplicateRank { gender: g, player, rank: pair });
                    }
                    Err(None) => {
                        return Err(Error::DimensionMismatch(format!(
                            "{g} {player} list must be a permutation of 0..{nn}"
                        )))
                    }
                }
            }
        }
        Self::from_ranks(n, tables)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Index of the pair of `gender`'s two partners, given in gender order.
    #[inline]
    pub fn pair_index(&self, p1: usize, p2: usize) -> usize {
        p1 * self.n + p2
    }

    /// Partners of `gender` in the family `(a, b, d)`, in gender order.
    #[inline]
    pub fn partners_in(gender: Gender, a: usize, b: usize, d: usize) -> (usize, usize) {
        match gender {
            Gender::Woman => (b, d),
            Gender::Man => (a, d),
            Gender::Dog => (a, b),
        }
    }

    #[inline]
    pub fn rank(&self, gender: Gender, player: usize, pair: usize) -> u32 {
        let nn = self.n * self.n;
        self.ranks[gender.index()][player * nn + pair]
    }

    /// Rank the member of `gender` in the triple `(a, b, d)` gives that triple.
    #[inline]
    pub fn triple_rank(&self, gender: Gender, a: usize, b: usize, d: usize) -> u32 {
        let nn = self.n * self.n;
        match gender {
            Gender::Woman => self.ranks[0][a * nn + b * self.n + d],
            Gender::Man => self.ranks[1][b * nn + a * self.n + d],
            Gender::Dog => self.ranks[2][d * nn + a * self.n + b],
        }
    }

    /// Rank row of one player, indexed by pair.
    pub fn rank_row(&self, gender: Gender, player: usize) -> &[u32] {
        let nn = self.n * self.n;
        &self.ranks[gender.index()][player * nn..(player + 1) * nn]
    }

    /// True iff `player` strictly prefers `pair_x` to `pair_y`.
    pub fn prefers(&self, gender: Gender, player: usize, pair_x: usize, pair_y: usize) -> Result<bool> {
        let nn = self.n * self.n;
        if player >= self.n {
            return Err(Error::IndexOutOfRange { index: player, limit: self.n });
        }
        for p in [pair_x, pair_y] {
            if p >= nn {
                return Err(Error::IndexOutOfRange { index: p, limit: nn });
            }
        }
        Ok(self.rank(gender, player, pair_x) < self.rank(gender, player, pair_y))
    }

    /// Pair indices of `player`'s list, most preferred first.
    pub fn preference_list(&self, gender: Gender, player: usize) -> Vec<usize> {
        let row = self.rank_row(gender, player);
        let mut list = vec![0; row.len()];
        for (pair, &r) in row.iter().enumerate() {
            list[r as usize] = pair;
        }
        list
    }

    pub fn preference_lists(&self) -> [Vec<Vec<usize>>; 3] {
        Gender::ALL.map(|g| (0..self.n).map(|p| self.preference_list(g, p)).collect())
    }

    /// The instance induced on the surviving players, with each list
    /// restricted to surviving pairs in the original relative order.
    /// Survivors are renumbered in increasing order of their old index.
    pub fn restrict(&self, alive: [&[usize]; 3]) -> Result<GsmInstance> {
        let k = alive[0].len();
        if alive.iter().any(|s| s.len() != k) || k == 0 {
            return Err(Error::DimensionMismatch("restriction needs equal non-empty sets".into()));
        }
        let mut lists: [Vec<Vec<usize>>; 3] = Default::default();
        for g in Gender::ALL {
            let (o1, o2) = match g {
                Gender::Woman => (alive[1], alive[2]),
                Gender::Man => (alive[0], alive[2]),
                Gender::Dog => (alive[0], alive[1]),
            };
            for &player in alive[g.index()] {
                let mut pairs: Vec<(u32, usize)> = Vec::with_capacity(k * k);
                for (i1, &p1) in o1.iter().enumerate() {
                    for (i2, &p2) in o2.iter().enumerate() {
                        pairs.push((self.rank(g, player, self.pair_index(p1, p2)), i1 * k + i2));
                    }
                }
                pairs.sort_unstable();
                lists[g.index()].push(pairs.into_iter().map(|(_, p)| p).collect());
            }
        }
        GsmInstance::from_preference_lists(k, lists)
    }
}

/// Number of unordered pairs drawn from `k` items.
#[inline]
pub fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

#[inline]
pub fn choose3(k: usize) -> u64 {
    let k = k as u64;
    if k < 3 {
        0
    } else {
        k * (k - 1) * (k - 2) / 6
    }
}

/// A 3PSA instance: `3n` players, each ranking every unordered pair of the
/// other players.
///
/// In files and rank rows, player `u`'s pairs are numbered lexicographically
/// over `(v, w)` with `v < w`, both different from `u` (see [`local_pairs`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsaInstance {
    players: usize,
    // ranks[(u * N + v) * N + w], symmetric in (v, w); UNMATCHED where u is involved or v == w
    ranks: Vec<u32>,
}

/// Pairs of players other than `u`, in the lexicographic order used by rank rows.
pub fn local_pairs(players: usize, u: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(choose2(players.saturating_sub(1)));
    for v in (0..players).filter(|&v| v != u) {
        for w in (v + 1..players).filter(|&w| w != u) {
            out.push((v, w));
        }
    }
    out
}

impl PsaInstance {
    /// Builds an instance from rank rows indexed by local pair index.
    pub fn from_ranks(players: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if players == 0 || players % 3 != 0 {
            return Err(Error::PlayerCountNotMultipleOf3(players));
        }
        if rows.len() != players {
            return Err(Error::DimensionMismatch(format!(
                "{} rank rows for {players} players",
                rows.len()
            )));
        }
        let len = choose2(players - 1);
        let np = players;
        let mut ranks = vec![UNMATCHED; np * np * np];
        for (u, row) in rows.iter().enumerate() {
            match check_bijection(row, len) {
                Ok(()) => {}
                Err(Some(rank)) => return Err(Error::DuplicatePsaRank { player: u, rank }),
                Err(None) => {
                    return Err(Error::DimensionMismatch(format!(
                        "player {u} row must be a permutation of 0..{len}"
                    )))
                }
            }
            for (idx, (v, w)) in local_pairs(np, u).into_iter().enumerate() {
                let r = row[idx] as u32;
                ranks[(u * np + v) * np + w] = r;
                ranks[(u * np + w) * np + v] = r;
            }
        }
        Ok(PsaInstance { players, ranks })
    }

    /// Builds an instance from preference lists of local pair indices, best first.
    pub fn from_preference_lists(players: usize, lists: Vec<Vec<usize>>) -> Result<Self> {
        if players == 0 || players % 3 != 0 {
            return Err(Error::PlayerCountNotMultipleOf3(players));
        }
        let len = choose2(players - 1);
        let mut rows = Vec::with_capacity(lists.len());
        for (u, list) in lists.iter().enumerate() {
            match ranks_from_list(list, len) {
                Ok(row) => rows.push(row),
                Err(Some(p)) => return Err(Error::DuplicatePsaRank { player: u, rank: p }),
                Err(None) => {
                    return Err(Error::DimensionMismatch(format!(
                        "player {u} list must be a permutation of 0..{len}"
                    )))
                }
            }
        }
        Self::from_ranks(players, rows)
    }

    pub fn players(&self) -> usize {
        self.players
    }

    /// Players per triple count, i.e. `n` for `3n` players.
    pub fn n(&self) -> usize {
        self.players / 3
    }

    /// Rank `u` gives the pair `{v, w}`.
    #[inline]
    pub fn rank(&self, u: usize, v: usize, w: usize) -> u32 {
        let np = self.players;
        self.ranks[(u * np + v) * np + w]
    }

    /// True iff `u` strictly prefers pair `x` to pair `y`.
    pub fn prefers(&self, u: usize, x: (usize, usize), y: (usize, usize)) -> Result<bool> {
        for p in [u, x.0, x.1, y.0, y.1] {
            if p >= self.players {
                return Err(Error::IndexOutOfRange { index: p, limit: self.players });
            }
        }
        for (v, w) in [x, y] {
            if v == w || v == u || w == u {
                return Err(Error::DimensionMismatch(format!(
                    "({v}, {w}) is not a pair of players other than {u}"
                )));
            }
        }
        Ok(self.rank(u, x.0, x.1) < self.rank(u, y.0, y.1))
    }

    /// Local pair indices of `u`'s list, most preferred first.
    pub fn preference_list(&self, u: usize) -> Vec<usize> {
        let pairs = local_pairs(self.players, u);
        let mut list = vec![0; pairs.len()];
        for (idx, (v, w)) in pairs.into_iter().enumerate() {
            list[self.rank(u, v, w) as usize] = idx;
        }
        list
    }

    pub fn preference_lists(&self) -> Vec<Vec<usize>> {
        (0..self.players).map(|u| self.preference_list(u)).collect()
    }
}

/// A tripartite hypergraph over ground sets `W`, `X`, `Y` of size `m`.
/// Edges are stored 0-based as `[w, x, y]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DmInstance {
    m: usize,
    edges: Vec<[usize; 3]>,
    degree_bounded3: bool,
}

impl DmInstance {
    pub fn new(m: usize, edges: Vec<[usize; 3]>) -> Result<Self> {
        for e in &edges {
            for &v in e {
                if v >= m {
                    return Err(Error::IndexOutOfRange { index: v, limit: m });
                }
            }
        }
        let degree_bounded3 = (0..3).all(|part| {
            let mut deg = vec![0usize; m];
            edges.iter().for_each(|e| deg[e[part]] += 1);
            deg.iter().all(|&d| d <= 3)
        });
        Ok(DmInstance { m, edges, degree_bounded3 })
    }

    /// Like [`DmInstance::new`] but rejects instances with an element in more than 3 edges.
    pub fn new_bounded(m: usize, edges: Vec<[usize; 3]>) -> Result<Self> {
        let inst = Self::new(m, edges)?;
        if !inst.degree_bounded3 {
            return Err(Error::InvalidDm("an element lies in more than 3 edges".into()));
        }
        Ok(inst)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn degree_bounded3(&self) -> bool {
        self.degree_bounded3
    }

    /// Degrees of every element, per part.
    pub fn degrees(&self) -> [Vec<usize>; 3] {
        let mut deg = [vec![0; self.m], vec![0; self.m], vec![0; self.m]];
        for e in &self.edges {
            for part in 0..3 {
                deg[part][e[part]] += 1;
            }
        }
        deg
    }

    /// True iff the edges with the given indices are pairwise disjoint.
    pub fn is_matching(&self, edge_ids: &[usize]) -> bool {
        let mut used = [vec![false; self.m], vec![false; self.m], vec![false; self.m]];
        for &id in edge_ids {
            let Some(e) = self.edges.get(id) else { return false };
            for part in 0..3 {
                if std::mem::replace(&mut used[part][e[part]], true) {
                    return false;
                }
            }
        }
        true
    }
}

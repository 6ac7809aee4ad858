//! Instance families: the two-player-per-gender gadget with no stable
//! marriage, its block-structured generalisation, seeded random instances,
//! the 3DM-3 embedding into 3GSM and the 3GSM-to-3PSA lift.
//!
//! Wherever a preference list only pins down a prefix (or a block whose
//! internal order is free), the free part is filled in lexicographic order
//! of pair index.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{choose2, local_pairs, DmInstance, Gender, GsmInstance, PsaInstance};
use crate::solution::{Family, Marriage};

/// Name of the random instance generator. Bump the suffix if the sampling
/// procedure changes.
pub const RANDOM_GENERATOR: &str = "chacha8-shuffle-v1";

/// Concatenates the blocks (dropping pairs already listed) and appends every
/// remaining pair of `0..len` in increasing order.
fn complete_list(len: usize, blocks: &[Vec<usize>]) -> Vec<usize> {
    let mut seen = vec![false; len];
    let mut list = Vec::with_capacity(len);
    for &p in blocks.iter().flatten() {
        if !std::mem::replace(&mut seen[p], true) {
            list.push(p);
        }
    }
    list.extend((0..len).filter(|&p| !seen[p]));
    list
}

/// Row-major pair indices of `xs × ys`, lexicographic.
fn product(n: usize, xs: &[usize], ys: &[usize]) -> Vec<usize> {
    xs.iter().flat_map(|&x| ys.iter().map(move |&y| x * n + y)).collect()
}

fn from_blocks(n: usize, blocks: [Vec<Vec<Vec<usize>>>; 3]) -> GsmInstance {
    let lists = blocks.map(|rows| rows.iter().map(|b| complete_list(n * n, b)).collect());
    GsmInstance::from_preference_lists(n, lists).expect("generated lists are permutations")
}

/// The `n = 2` instance in which every marriage has an unstable triple.
pub fn gen_gadget2() -> GsmInstance {
    let p = |x: usize, y: usize| x * 2 + y;
    from_blocks(
        2,
        [
            // a1: b1d1 b2d2, a2: b2d1
            vec![vec![vec![p(0, 0), p(1, 1)]], vec![vec![p(1, 0)]]],
            // b1: a1d1, b2: a1d2 a2d1
            vec![vec![vec![p(0, 0)]], vec![vec![p(0, 1), p(1, 0)]]],
            // d1: a2b2 a1b1, d2: a1b2
            vec![vec![vec![p(1, 1), p(0, 0)]], vec![vec![p(0, 1)]]],
        ],
    )
}

/// Block-structured preferences on halves `X₁ = 0..n/2`, `X₂ = n/2..n` of
/// each gender, under which every marriage has `Ω(n³)` unstable triples.
///
/// | player | blocks (then everything else) |
/// |--------|-------------------------------|
/// | a ∈ A₁ | B₁D₁, B₂D₂ |
/// | a ∈ A₂ | B₂D₁ |
/// | b ∈ B₁ | A₁D₁ |
/// | b ∈ B₂ | A₁D₂, A₂D₁ |
/// | d ∈ D₁ | A₂B₂, A₁B₁ |
/// | d ∈ D₂ | A₁B₂ |
pub fn gen_adversarial(n: usize) -> Result<GsmInstance> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::OddN(n));
    }
    let h = n / 2;
    let lo: Vec<usize> = (0..h).collect();
    let hi: Vec<usize> = (h..n).collect();
    let pr = |x: &[usize], y: &[usize]| product(n, x, y);
    let half = |p: usize| p < h;
    let women = (0..n)
        .map(|a| if half(a) { vec![pr(&lo, &lo), pr(&hi, &hi)] } else { vec![pr(&hi, &lo)] })
        .collect();
    let men = (0..n)
        .map(|b| if half(b) { vec![pr(&lo, &lo)] } else { vec![pr(&lo, &hi), pr(&hi, &lo)] })
        .collect();
    let dogs = (0..n)
        .map(|d| if half(d) { vec![pr(&hi, &hi), pr(&lo, &lo)] } else { vec![pr(&lo, &hi)] })
        .collect();
    Ok(from_blocks(n, [women, men, dogs]))
}

/// Uniformly random preferences: every list is an independent shuffle,
/// drawn for women, then men, then dogs.
pub fn gen_random(n: usize, seed: u64) -> GsmInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nn = n * n;
    let lists = Gender::ALL.map(|_| {
        (0..n)
            .map(|_| {
                let mut l: Vec<usize> = (0..nn).collect();
                l.shuffle(&mut rng);
                l
            })
            .collect()
    });
    GsmInstance::from_preference_lists(n, lists).expect("shuffles are permutations")
}

/// Uniformly random 3PSA preferences over `players` players.
pub fn gen_random_psa(players: usize, seed: u64) -> Result<PsaInstance> {
    if players == 0 || players % 3 != 0 {
        return Err(Error::PlayerCountNotMultipleOf3(players));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = choose2(players - 1);
    let lists = (0..players)
        .map(|_| {
            let mut l: Vec<usize> = (0..len).collect();
            l.shuffle(&mut rng);
            l
        })
        .collect();
    PsaInstance::from_preference_lists(players, lists)
}

/// A random 3DM-3 instance on ground sets of size `m` that contains a
/// planted perfect matching, plus up to `extra` further random edges kept
/// within the degree bound. Returns the instance and the planted edge ids.
pub fn gen_planted_dm(m: usize, extra: usize, seed: u64) -> (DmInstance, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<usize> = (0..m).collect();
    let mut ys: Vec<usize> = (0..m).collect();
    xs.shuffle(&mut rng);
    ys.shuffle(&mut rng);
    let mut edges: Vec<[usize; 3]> = (0..m).map(|w| [w, xs[w], ys[w]]).collect();
    let mut deg = [vec![1usize; m], vec![1usize; m], vec![1usize; m]];
    let mut attempts = 0;
    let mut added = 0;
    while added < extra && attempts < 50 * (extra + 1) && m > 0 {
        attempts += 1;
        let e = [rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m)];
        if (0..3).all(|p| deg[p][e[p]] < 3) {
            (0..3).for_each(|p| deg[p][e[p]] += 1);
            edges.push(e);
            added += 1;
        }
    }
    // shuffle edge order so the planted matching is not simply the first m edges
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.shuffle(&mut rng);
    let shuffled: Vec<[usize; 3]> = order.iter().map(|&i| edges[i]).collect();
    let mut planted: Vec<usize> = order.iter().enumerate().filter(|(_, &i)| i < m).map(|(pos, _)| pos).collect();
    planted.sort_unstable();
    (DmInstance::new_bounded(m, shuffled).expect("degrees kept <= 3"), planted)
}

/// A 3GSM instance built from a 3DM-3 instance, with the bookkeeping needed
/// to turn perfect matchings into stable marriages.
///
/// With `M = 3m`, player numbering inside each gender is, for copy `j ∈ {0, 1}`:
/// women `a_i^j[k]` at `j·M + 3i + k`; men `b_i^j, w_i^j, y_i^j` at
/// `j·M + i, j·M + m + i, j·M + 2m + i`; dogs `d_i^j, x_i^j, z_i^j` likewise.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub instance: GsmInstance,
    pub m: usize,
    /// For every `w`, the three edge ids (into the source instance) sitting in
    /// slots 1..3 after padding by repeating the last incident edge.
    pub slots: Vec<[usize; 3]>,
    edges: Vec<[usize; 3]>,
}

struct EmbedIndex {
    m: usize,
}

impl EmbedIndex {
    fn big(&self) -> usize {
        3 * self.m
    }
    fn a(&self, j: usize, i: usize, k: usize) -> usize {
        j * self.big() + 3 * i + k
    }
    fn b(&self, j: usize, i: usize) -> usize {
        j * self.big() + i
    }
    fn w(&self, j: usize, i: usize) -> usize {
        j * self.big() + self.m + i
    }
    fn y(&self, j: usize, i: usize) -> usize {
        j * self.big() + 2 * self.m + i
    }
    // dogs share the man layout: d ~ b, x ~ w, z ~ y
    fn block(&self, j: usize) -> Vec<usize> {
        (j * self.big()..(j + 1) * self.big()).collect()
    }
}

/// Embeds a 3DM-3 instance with `m` elements per part into a 3GSM instance
/// with `n = 6m` players per gender.
pub fn embed_3dm(dm: &DmInstance) -> Result<Embedding> {
    let m = dm.m();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (id, e) in dm.edges().iter().enumerate() {
        incident[e[0]].push(id);
    }
    let mut slots = Vec::with_capacity(m);
    for (w, inc) in incident.iter().enumerate() {
        if inc.is_empty() || inc.len() > 3 {
            return Err(Error::NotDegree3Padded(w + 1, inc.len()));
        }
        let last = *inc.last().unwrap();
        slots.push([inc[0], *inc.get(1).unwrap_or(&last), *inc.get(2).unwrap_or(&last)]);
    }
    let ix = EmbedIndex { m };
    let n = 6 * m;
    let pr = |x: &[usize], y: &[usize]| product(n, x, y);
    let (s1, s2) = (ix.block(0), ix.block(1));

    let mut women = vec![Vec::new(); n];
    for j in 0..2 {
        for i in 0..m {
            for k in 0..3 {
                let e = dm.edges()[slots[i][k]];
                let mut blocks = vec![
                    vec![ix.w(j, i) * n + ix.w(j, i)],
                    vec![ix.y(j, i) * n + ix.y(j, i)],
                    vec![ix.b(j, e[1]) * n + ix.b(j, e[2])],
                ];
                if j == 0 {
                    blocks.push(pr(&s1, &s1));
                    blocks.push(pr(&s2, &s2));
                } else {
                    blocks.push(pr(&s2, &s1));
                }
                women[ix.a(j, i, k)] = blocks;
            }
        }
    }

    let mut men = vec![Vec::new(); n];
    let mut dogs = vec![Vec::new(); n];
    for j in 0..2 {
        let (b_tail, d_tail) = if j == 0 {
            (vec![pr(&s1, &s1)], vec![pr(&s2, &s2), pr(&s1, &s1)])
        } else {
            (vec![pr(&s1, &s2), pr(&s2, &s1)], vec![pr(&s1, &s2)])
        };
        for i in 0..m {
            // w, y: a[1] a[2] a[3] with their own x / z
            for (man, dog) in [(ix.w(j, i), ix.w(j, i)), (ix.y(j, i), ix.y(j, i))] {
                let mut blocks: Vec<Vec<usize>> = (0..3).map(|k| vec![ix.a(j, i, k) * n + dog]).collect();
                blocks.extend(b_tail.iter().cloned());
                men[man] = blocks;
            }
            men[ix.b(j, i)] = b_tail.clone();
            // x, z: a[3] a[2] a[1] with their own w / y
            for (dog, man) in [(ix.w(j, i), ix.w(j, i)), (ix.y(j, i), ix.y(j, i))] {
                let mut blocks: Vec<Vec<usize>> = (0..3).rev().map(|k| vec![ix.a(j, i, k) * n + man]).collect();
                blocks.extend(d_tail.iter().cloned());
                dogs[dog] = blocks;
            }
            dogs[ix.b(j, i)] = d_tail.clone();
        }
    }
    let instance = from_blocks(n, [women, men, dogs]);
    Ok(Embedding { instance, m, slots, edges: dm.edges().to_vec() })
}

impl Embedding {
    /// The stable marriage associated with a perfect matching (given as edge
    /// ids of the source instance): `a_i^j[t]` marries the matched edge's
    /// `b^j d^j`, and of the two remaining slots the lower marries
    /// `w_i^j x_i^j`, the higher `y_i^j z_i^j`.
    pub fn witness(&self, matching: &[usize]) -> Result<Marriage> {
        let m = self.m;
        let mut chosen = vec![None; m];
        let mut used_x = vec![false; m];
        let mut used_y = vec![false; m];
        for &id in matching {
            let e = *self.edges.get(id).ok_or(Error::IndexOutOfRange { index: id, limit: self.edges.len() })?;
            if chosen[e[0]].is_some() || used_x[e[1]] || used_y[e[2]] {
                return Err(Error::InvalidDm(format!("edge {} overlaps the matching", id + 1)));
            }
            chosen[e[0]] = Some(id);
            used_x[e[1]] = true;
            used_y[e[2]] = true;
        }
        let ix = EmbedIndex { m };
        let mut families = Vec::with_capacity(6 * m);
        for i in 0..m {
            let id = chosen[i].ok_or_else(|| Error::InvalidDm(format!("w{} is not matched", i + 1)))?;
            let t = self.slots[i].iter().position(|&s| s == id).expect("matched edge is one of w's slots");
            let e = self.edges[id];
            let rest: Vec<usize> = (0..3).filter(|&k| k != t).collect();
            for j in 0..2 {
                families.push(Family::new(ix.a(j, i, t), ix.b(j, e[1]), ix.b(j, e[2])));
                families.push(Family::new(ix.a(j, i, rest[0]), ix.w(j, i), ix.w(j, i)));
                families.push(Family::new(ix.a(j, i, rest[1]), ix.y(j, i), ix.y(j, i)));
            }
        }
        Marriage::from_families(6 * m, families)
    }
}

/// Views a 3GSM instance as 3PSA: women, men and dogs become players
/// `0..n`, `n..2n`, `2n..3n`. Every player keeps the cross-gender pairs in
/// their original order on top and ranks all other pairs below them,
/// lexicographically.
pub fn lift_gsm_to_psa(inst: &GsmInstance) -> PsaInstance {
    let n = inst.n();
    let np = 3 * n;
    let offset = |g: Gender| g.index() * n;
    let lists = (0..np)
        .map(|u| {
            let g = Gender::ALL[u / n];
            let p = u % n;
            let (g1, g2) = match g {
                Gender::Woman => (Gender::Man, Gender::Dog),
                Gender::Man => (Gender::Woman, Gender::Dog),
                Gender::Dog => (Gender::Woman, Gender::Man),
            };
            let pairs = local_pairs(np, u);
            let mut lookup = vec![usize::MAX; np * np];
            for (idx, &(v, w)) in pairs.iter().enumerate() {
                lookup[v * np + w] = idx;
            }
            let top: Vec<usize> = inst
                .preference_list(g, p)
                .into_iter()
                .map(|pair| {
                    let (x, y) = (pair / n + offset(g1), pair % n + offset(g2));
                    lookup[x * np + y]
                })
                .collect();
            complete_list(pairs.len(), &[top])
        })
        .collect();
    PsaInstance::from_preference_lists(np, lists).expect("lifted lists are permutations")
}

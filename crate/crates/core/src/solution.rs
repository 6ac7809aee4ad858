//! Marriages, submarriages and 3PSA (sub)matchings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Gender;

/// One woman, one man and one dog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Family {
    pub woman: usize,
    pub man: usize,
    pub dog: usize,
}

impl Family {
    pub fn new(woman: usize, man: usize, dog: usize) -> Self {
        Family { woman, man, dog }
    }

    pub fn member(&self, gender: Gender) -> usize {
        match gender {
            Gender::Woman => self.woman,
            Gender::Man => self.man,
            Gender::Dog => self.dog,
        }
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.woman, self.man, self.dog]
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}b{}d{}", self.woman + 1, self.man + 1, self.dog + 1)
    }
}

/// A set of pairwise disjoint families over `n` players per gender.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submarriage {
    n: usize,
    families: Vec<Family>,
    // slot[g][player] = index into `families`
    slot: [Vec<Option<u32>>; 3],
}

impl Submarriage {
    pub fn new(n: usize, mut families: Vec<Family>) -> Result<Self> {
        families.sort_unstable();
        let mut slot: [Vec<Option<u32>>; 3] = [vec![None; n], vec![None; n], vec![None; n]];
        for (idx, fam) in families.iter().enumerate() {
            for g in Gender::ALL {
                let p = fam.member(g);
                if p >= n {
                    return Err(Error::IndexOutOfRange { index: p, limit: n });
                }
                if slot[g.index()][p].replace(idx as u32).is_some() {
                    return Err(Error::OverlappingFamilies(format!("{} {}", g, p + 1)));
                }
            }
        }
        Ok(Submarriage { n, families, slot })
    }

    pub fn empty(n: usize) -> Self {
        Submarriage { n, families: Vec::new(), slot: [vec![None; n], vec![None; n], vec![None; n]] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Families sorted by (woman, man, dog).
    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    /// The family of `player`, or `None` when unmatched.
    #[inline]
    pub fn family_of(&self, gender: Gender, player: usize) -> Option<Family> {
        self.slot[gender.index()][player].map(|i| self.families[i as usize])
    }

    /// The pair married to `player` (partners in gender order), or `None`.
    pub fn partners(&self, gender: Gender, player: usize) -> Option<(usize, usize)> {
        self.family_of(gender, player).map(|f| match gender {
            Gender::Woman => (f.man, f.dog),
            Gender::Man => (f.woman, f.dog),
            Gender::Dog => (f.woman, f.man),
        })
    }

    /// Covered players of one gender, increasing.
    pub fn covered(&self, gender: Gender) -> Vec<usize> {
        (0..self.n).filter(|&p| self.slot[gender.index()][p].is_some()).collect()
    }

    pub fn is_marriage(&self) -> bool {
        self.families.len() == self.n
    }

    /// The submarriage with `family` added.
    pub fn with(&self, family: Family) -> Result<Submarriage> {
        let mut fams = self.families.clone();
        fams.push(family);
        Submarriage::new(self.n, fams)
    }

    /// The submarriage with `family` removed (no-op if absent).
    pub fn without(&self, family: Family) -> Submarriage {
        let fams = self.families.iter().copied().filter(|&f| f != family).collect();
        Submarriage::new(self.n, fams).expect("subset of a valid submarriage")
    }
}

/// A marriage: every player in exactly one family. Family `i` is
/// `(i, sigma[i], tau[i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marriage {
    inner: Submarriage,
}

fn check_permutation(p: &[usize]) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || std::mem::replace(&mut seen[x], true) {
            return Err(Error::NotAPermutation(p.to_vec()));
        }
    }
    Ok(())
}

impl Marriage {
    pub fn from_permutations(sigma: &[usize], tau: &[usize]) -> Result<Self> {
        check_permutation(sigma)?;
        check_permutation(tau)?;
        if sigma.len() != tau.len() {
            return Err(Error::DimensionMismatch(format!(
                "sigma has length {}, tau has length {}",
                sigma.len(),
                tau.len()
            )));
        }
        let fams = (0..sigma.len()).map(|i| Family::new(i, sigma[i], tau[i])).collect();
        Ok(Marriage { inner: Submarriage::new(sigma.len(), fams)? })
    }

    pub fn from_families(n: usize, families: Vec<Family>) -> Result<Self> {
        let inner = Submarriage::new(n, families)?;
        if !inner.is_marriage() {
            return Err(Error::DimensionMismatch(format!(
                "{} families do not cover {n} players per gender",
                inner.len()
            )));
        }
        Ok(Marriage { inner })
    }

    pub fn to_permutations(&self) -> (Vec<usize>, Vec<usize>) {
        // families are sorted by woman and cover every woman
        let sigma = self.inner.families.iter().map(|f| f.man).collect();
        let tau = self.inner.families.iter().map(|f| f.dog).collect();
        (sigma, tau)
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn families(&self) -> &[Family] {
        self.inner.families()
    }

    pub fn as_submarriage(&self) -> &Submarriage {
        &self.inner
    }

    pub fn into_submarriage(self) -> Submarriage {
        self.inner
    }
}

/// Pairwise disjoint unordered triples over a 3PSA player set. Each triple
/// is stored sorted, and the list of triples is sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submatching {
    players: usize,
    triples: Vec<[usize; 3]>,
    slot: Vec<Option<u32>>,
}

impl Submatching {
    pub fn new(players: usize, triples: Vec<[usize; 3]>) -> Result<Self> {
        let mut triples: Vec<[usize; 3]> = triples
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        triples.sort_unstable();
        let mut slot = vec![None; players];
        for (idx, t) in triples.iter().enumerate() {
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::OverlappingFamilies(format!("triple {t:?} repeats a player")));
            }
            for &u in t {
                if u >= players {
                    return Err(Error::IndexOutOfRange { index: u, limit: players });
                }
                if slot[u].replace(idx as u32).is_some() {
                    return Err(Error::OverlappingFamilies(format!("player {}", u + 1)));
                }
            }
        }
        Ok(Submatching { players, triples, slot })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// The two partners of `u`, or `None` when unmatched.
    #[inline]
    pub fn partners(&self, u: usize) -> Option<(usize, usize)> {
        self.slot[u].map(|i| {
            let t = self.triples[i as usize];
            match t.iter().position(|&x| x == u) {
                Some(0) => (t[1], t[2]),
                Some(1) => (t[0], t[2]),
                _ => (t[0], t[1]),
            }
        })
    }

    /// Covered players, increasing.
    pub fn covered(&self) -> Vec<usize> {
        (0..self.players).filter(|&u| self.slot[u].is_some()).collect()
    }

    pub fn is_matching(&self) -> bool {
        self.triples.len() * 3 == self.players
    }
}

/// A 3PSA matching: a submatching covering every player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    inner: Submatching,
}

impl Matching {
    pub fn new(players: usize, triples: Vec<[usize; 3]>) -> Result<Self> {
        let inner = Submatching::new(players, triples)?;
        if !inner.is_matching() {
            return Err(Error::DimensionMismatch(format!(
                "{} triples do not cover {players} players",
                inner.len()
            )));
        }
        Ok(Matching { inner })
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        self.inner.triples()
    }

    pub fn players(&self) -> usize {
        self.inner.players
    }

    pub fn as_submatching(&self) -> &Submatching {
        &self.inner
    }
}

/// The 3PSA matching a marriage becomes once women, men and dogs are
/// numbered `0..n`, `n..2n`, `2n..3n`.
pub fn marriage_as_matching(marriage: &Marriage) -> Matching {
    let n = marriage.n();
    let triples = marriage.families().iter().map(|f| [f.woman, n + f.man, 2 * n + f.dog]).collect();
    Matching::new(3 * n, triples).expect("a marriage maps to a matching")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_permutations() {
        let m = Marriage::from_permutations(&[0, 1], &[0, 1]).unwrap();
        assert_eq!(m.families(), &[Family::new(0, 0, 0), Family::new(1, 1, 1)]);
    }

    #[test]
    fn swapped_men() {
        let m = Marriage::from_permutations(&[1, 0], &[0, 1]).unwrap();
        assert_eq!(m.families(), &[Family::new(0, 1, 0), Family::new(1, 0, 1)]);
        assert_eq!(m.to_permutations(), (vec![1, 0], vec![0, 1]));
    }

    #[test]
    fn not_a_permutation() {
        assert!(matches!(Marriage::from_permutations(&[0, 0], &[0, 1]), Err(Error::NotAPermutation(_))));
        assert!(matches!(Marriage::from_permutations(&[0, 1], &[2, 1]), Err(Error::NotAPermutation(_))));
    }

    #[test]
    fn submarriage_lookup() {
        let s = Submarriage::new(3, vec![Family::new(2, 0, 1)]).unwrap();
        assert_eq!(s.partners(Gender::Woman, 2), Some((0, 1)));
        assert_eq!(s.partners(Gender::Man, 0), Some((2, 1)));
        assert_eq!(s.partners(Gender::Dog, 1), Some((2, 0)));
        assert_eq!(s.partners(Gender::Dog, 0), None);
        assert!(Submarriage::new(3, vec![Family::new(0, 0, 0), Family::new(1, 0, 1)]).is_err());
    }

    #[test]
    fn submatching_lookup() {
        let s = Submatching::new(6, vec![[4, 0, 2]]).unwrap();
        assert_eq!(s.triples(), &[[0, 2, 4]]);
        assert_eq!(s.partners(2), Some((0, 4)));
        assert_eq!(s.partners(1), None);
        assert!(Submatching::new(6, vec![[0, 1, 2], [2, 3, 4]]).is_err());
        assert!(Matching::new(6, vec![[0, 1, 2]]).is_err());
    }
}

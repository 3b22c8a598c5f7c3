use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{DecoratedPermutation, PermError, Permutation};
use crate::exact::{determinant, rank, Q};

/// A Grassmann necklace `(I₁, …, Iₙ)` of type `(k, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct GrassmannNecklace {
    n: usize,
    subsets: Vec<BTreeSet<usize>>,
}

impl TryFrom<Vec<Vec<usize>>> for GrassmannNecklace {
    type Error = PermError;

    fn try_from(v: Vec<Vec<usize>>) -> Result<Self, Self::Error> {
        Self::new(v.into_iter().map(|s| s.into_iter().collect()).collect())
    }
}

impl From<GrassmannNecklace> for Vec<Vec<usize>> {
    fn from(nk: GrassmannNecklace) -> Self {
        nk.subsets.into_iter().map(|s| s.into_iter().collect()).collect()
    }
}

impl GrassmannNecklace {
    pub fn new(subsets: Vec<BTreeSet<usize>>) -> Result<Self, PermError> {
        let n = subsets.len();
        if n == 0 {
            return Err(PermError::BadNecklace("empty sequence".into()));
        }
        let k = subsets[0].len();
        for (idx, s) in subsets.iter().enumerate() {
            if s.len() != k {
                return Err(PermError::BadNecklace(format!("I_{} has size {} != {k}", idx + 1, s.len())));
            }
            if let Some(&bad) = s.iter().find(|&&x| x == 0 || x > n) {
                return Err(PermError::OutOfRange { value: bad, n });
            }
        }
        for i in 1..=n {
            let cur = &subsets[i - 1];
            let next = &subsets[i % n];
            if cur.contains(&i) {
                let mut without: BTreeSet<usize> = cur.clone();
                without.remove(&i);
                if !without.is_subset(next) {
                    return Err(PermError::BadNecklace(format!("I_{} is not I_{i} minus {i} plus one element", i % n + 1)));
                }
            } else if cur != next {
                return Err(PermError::BadNecklace(format!("{i} not in I_{i} but I_{} != I_{i}", i % n + 1)));
            }
        }
        Ok(Self { n, subsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.subsets[0].len()
    }

    /// `I_i` for `1 <= i <= n`.
    pub fn subset(&self, i: usize) -> &BTreeSet<usize> {
        &self.subsets[i - 1]
    }

    /// Reads off `π(𝓘)`: if `I_{i+1} = (I_i ∖ {i}) ∪ {j}` with `j ≠ i` then
    /// `π(j) = i`; if `I_{i+1} = I_i` the fixed point `i` is counterclockwise
    /// when `i ∈ I_i` and clockwise otherwise.
    pub fn to_decorated(&self) -> Result<DecoratedPermutation, PermError> {
        let n = self.n;
        let mut one_line = vec![0usize; n];
        let mut ccw = Vec::new();
        for i in 1..=n {
            let cur = self.subset(i);
            let next = self.subset(i % n + 1);
            let assign = |pos: usize, val: usize, one_line: &mut Vec<usize>| {
                if one_line[pos - 1] != 0 {
                    return Err(PermError::BadNecklace(format!("π({pos}) assigned twice")));
                }
                one_line[pos - 1] = val;
                Ok(())
            };
            if cur == next {
                assign(i, i, &mut one_line)?;
                if cur.contains(&i) {
                    ccw.push(i);
                }
            } else {
                let added: Vec<usize> = next.difference(cur).copied().collect();
                let &[j] = added.as_slice() else {
                    return Err(PermError::BadNecklace(format!("I_{} differs from I_{i} by more than one element", i % n + 1)));
                };
                assign(j, i, &mut one_line)?;
            }
        }
        let perm = Permutation::new(one_line)?;
        DecoratedPermutation::new(perm, ccw)
    }

    /// Inverse of [`Self::to_decorated`]. `I₁` is the set of weak excedances;
    /// each later subset drops `i` and adds `π⁻¹(i)` whenever `i ∈ I_i`.
    pub fn from_decorated(d: &DecoratedPermutation) -> Self {
        let n = d.n();
        let inv = d.perm().inverse();
        let mut subsets = Vec::with_capacity(n);
        let mut cur: BTreeSet<usize> = d.weak_excedances().into_iter().collect();
        for i in 1..=n {
            subsets.push(cur.clone());
            if cur.contains(&i) {
                cur.remove(&i);
                cur.insert(inv.at(i));
            }
        }
        Self { n, subsets }
    }

    /// All necklaces of type `(k, n)` for every `k`, via decorated permutations.
    pub fn all(n: usize) -> Vec<Self> {
        DecoratedPermutation::all(n).iter().map(Self::from_decorated).collect()
    }
}

/// Subsets of size `k` of `[n]`, lexicographically ordered with respect to
/// the shifted order `i <_i i+1 <_i … <_i n <_i 1 <_i … <_i i-1`.
fn shifted_lex_subsets(i: usize, k: usize, n: usize) -> Vec<Vec<usize>> {
    let order: Vec<usize> = (0..n).map(|t| (i - 1 + t) % n + 1).collect();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        let mut s: Vec<usize> = idx.iter().map(|&t| order[t]).collect();
        s.sort_unstable();
        out.push(s);
        let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else { break };
        idx[p] += 1;
        for t in p + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
    out
}

/// The necklace of a full-rank `k × n` matrix: `I_i` is the lexicographically
/// smallest `k`-subset in the shifted order `<_i` with a nonzero maximal minor.
pub fn necklace_of_matrix(a: &[Vec<Q>]) -> Result<GrassmannNecklace, PermError> {
    let k = a.len();
    let n = a.first().map_or(0, Vec::len);
    if k == 0 || n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(PermError::BadMatrix(format!("expected a non-empty k x n matrix, got {k} rows")));
    }
    let r = rank(a);
    if r < k {
        return Err(PermError::RankDeficient { rank: r, k });
    }
    let minor = |cols: &[usize]| -> Q {
        let sub: Vec<Vec<Q>> = a.iter().map(|row| cols.iter().map(|&c| row[c - 1].clone()).collect()).collect();
        determinant(&sub)
    };
    let mut subsets = Vec::with_capacity(n);
    for i in 1..=n {
        let s = shifted_lex_subsets(i, k, n)
            .into_iter()
            .find(|s| !minor(s).is_zero())
            .expect("full rank has a nonzero minor");
        subsets.push(s.into_iter().collect());
    }
    GrassmannNecklace::new(subsets)
}

use std::fmt;

use super::{DecoratedPermutation, PermError, Permutation};

/// A subset `J = {j₁ < … < j_k}` of `[n]` together with its complement
/// `{h₁ < … < h_{n-k}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetJ {
    n: usize,
    members: Vec<usize>,
    complement: Vec<usize>,
}

impl SubsetJ {
    pub fn new(members: impl IntoIterator<Item = usize>, n: usize) -> Result<Self, PermError> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&j| j == 0 || j > n) {
            return Err(PermError::OutOfRange { value: bad, n });
        }
        let complement = (1..=n).filter(|h| members.binary_search(h).is_err()).collect();
        Ok(Self { n, members, complement })
    }

    /// `J = {1, …, k}`.
    pub fn initial(k: usize, n: usize) -> Result<Self, PermError> {
        Self::new(1..=k, n)
    }

    /// All `2ⁿ` subsets of `[n]`, ordered by size then lexicographically.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out: Vec<Self> = (0u32..(1 << n))
            .map(|mask| Self::new((1..=n).filter(|&i| mask >> (i - 1) & 1 == 1), n).unwrap())
            .collect();
        out.sort_by(|a, b| (a.k(), &a.members).cmp(&(b.k(), &b.members)));
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// The decorated permutation `π(J)` of the TP Schubert cell: `π(h_i) = i`
    /// and `π(j_i) = n - k + i`, with a fixed point counterclockwise exactly
    /// when it lies in `J`.
    pub fn pi(&self) -> DecoratedPermutation {
        let (n, k) = (self.n, self.k());
        let mut one_line = vec![0; n];
        for (i, &h) in self.complement.iter().enumerate() {
            one_line[h - 1] = i + 1;
        }
        for (i, &j) in self.members.iter().enumerate() {
            one_line[j - 1] = n - k + i + 1;
        }
        let perm = Permutation::new(one_line).expect("π(J) is a permutation");
        let ccw: Vec<usize> = perm.fixed_points().into_iter().filter(|&p| self.contains(p)).collect();
        DecoratedPermutation::new(perm, ccw).expect("colors on fixed points")
    }

    /// `e(J)`: the identity with counterclockwise fixed points exactly at `J`.
    pub fn identity_decoration(&self) -> DecoratedPermutation {
        DecoratedPermutation::identity_decoration(self.n, self.members.iter().copied()).expect("identity")
    }
}

impl fmt::Display for SubsetJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

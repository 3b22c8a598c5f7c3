use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PermError;

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self, PermError> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotAPermutation { n, values: one_line });
            }
            seen[v] = true;
        }
        Ok(Self { one_line })
    }

    pub fn identity(n: usize) -> Self {
        Self { one_line: (1..=n).collect() }
    }

    /// `w₀(i) = n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Self { one_line: (1..=n).rev().collect() }
    }

    /// The simple transposition `s_i`, exchanging `i` and `i+1`.
    pub fn simple(i: usize, n: usize) -> Result<Self, PermError> {
        Self::transposition(i, i + 1, n)
    }

    pub fn transposition(a: usize, b: usize, n: usize) -> Result<Self, PermError> {
        if a == 0 || a >= b || b > n {
            return Err(PermError::BadTransposition { a, b, n });
        }
        let mut p = Self::identity(n);
        p.one_line.swap(a - 1, b - 1);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.one_line
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { one_line: inv }
    }

    /// Position of value `v`, i.e. `w⁻¹(v)`.
    pub fn position_of(&self, v: usize) -> usize {
        self.one_line.iter().position(|&x| x == v).expect("value in range") + 1
    }

    /// Function composition `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.n() != other.n() {
            return Err(PermError::SizeMismatch { left: self.n(), right: other.n() });
        }
        Ok(Self { one_line: other.one_line.iter().map(|&v| self.one_line[v - 1]).collect() })
    }

    /// Left multiplication by the transposition `(a b)`: exchanges the values `a` and `b`.
    pub fn swap_values(&self, a: usize, b: usize) -> Self {
        let mut out = self.clone();
        for v in out.one_line.iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
        out
    }

    /// Right multiplication by `(i j)`: exchanges the entries in positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        out.one_line.swap(i - 1, j - 1);
        out
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.one_line;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    pub fn descents(&self) -> Vec<usize> {
        self.one_line.windows(2).enumerate().filter(|(_, w)| w[0] > w[1]).map(|(i, _)| i + 1).collect()
    }

    /// At most one descent.
    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() <= 1
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.at(i) == i).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// All permutations of `{1, …, n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Self { one_line: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// Product of value transpositions, evaluated right to left: the last pair in
/// `pairs` acts first. So `[(2,4), (1,2), (2,3), (1,2)]` means
/// `(24)(12)(23)(12)`, and the result sends `x` to `(24)((12)((23)((12)(x))))`.
pub fn compose_seq(pairs: &[(usize, usize)], n: usize) -> Result<Permutation, PermError> {
    let mut out = Permutation::identity(n);
    for &(a, b) in pairs {
        if a == 0 || a >= b || b > n {
            return Err(PermError::BadTransposition { a, b, n });
        }
        // out <- out ∘ (a b): the pairs further right act earlier
        out = out.swap_positions(a, b);
    }
    Ok(out)
}

/// Strong Bruhat order via the sorted-prefix (tableau) criterion: `u <= v` iff
/// for every `k` the sorted first `k` entries of `u` are entrywise at most those of `v`.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> Result<bool, PermError> {
    if u.n() != v.n() {
        return Err(PermError::SizeMismatch { left: u.n(), right: v.n() });
    }
    let n = u.n();
    for k in 1..n {
        let mut a = u.one_line[..k].to_vec();
        let mut b = v.one_line[..k].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a.iter().zip(&b).any(|(x, y)| x > y) {
            return Ok(false);
        }
    }
    Ok(true)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.one_line.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Parses comma-separated one-line notation, with or without parentheses.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Ok(Self::identity(0));
        }
        let values = t
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| PermError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.one_line.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        Self::new(v).map_err(serde::de::Error::custom)
    }
}

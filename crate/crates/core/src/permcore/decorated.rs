use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{PermError, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedPointColor {
    Clockwise,
    Counterclockwise,
}

/// A permutation whose fixed points are colored clockwise or counterclockwise.
///
/// Only the counterclockwise fixed points are stored; every other fixed point
/// is clockwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDecorated", into = "RawDecorated")]
pub struct DecoratedPermutation {
    perm: Permutation,
    ccw_fixed: BTreeSet<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawDecorated {
    perm: Permutation,
    #[serde(default)]
    ccw_fixed: Vec<usize>,
}

impl TryFrom<RawDecorated> for DecoratedPermutation {
    type Error = PermError;

    fn try_from(raw: RawDecorated) -> Result<Self, Self::Error> {
        Self::new(raw.perm, raw.ccw_fixed)
    }
}

impl From<DecoratedPermutation> for RawDecorated {
    fn from(d: DecoratedPermutation) -> Self {
        RawDecorated { perm: d.perm, ccw_fixed: d.ccw_fixed.into_iter().collect() }
    }
}

impl DecoratedPermutation {
    pub fn new(perm: Permutation, ccw_fixed: impl IntoIterator<Item = usize>) -> Result<Self, PermError> {
        let ccw_fixed: BTreeSet<usize> = ccw_fixed.into_iter().collect();
        for &p in &ccw_fixed {
            if p == 0 || p > perm.n() || perm.at(p) != p {
                return Err(PermError::ColorOnNonFixedPoint(p));
            }
        }
        Ok(Self { perm, ccw_fixed })
    }

    /// A permutation without fixed points needs no decoration.
    pub fn undecorated(perm: Permutation) -> Self {
        Self { perm, ccw_fixed: BTreeSet::new() }
    }

    /// The decoration of the identity with counterclockwise fixed points exactly at `ccw`.
    pub fn identity_decoration(n: usize, ccw: impl IntoIterator<Item = usize>) -> Result<Self, PermError> {
        Self::new(Permutation::identity(n), ccw)
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn ccw_fixed(&self) -> &BTreeSet<usize> {
        &self.ccw_fixed
    }

    pub fn color(&self, i: usize) -> Option<FixedPointColor> {
        if self.perm.at(i) != i {
            None
        } else if self.ccw_fixed.contains(&i) {
            Some(FixedPointColor::Counterclockwise)
        } else {
            Some(FixedPointColor::Clockwise)
        }
    }

    /// Positions `i` with `π(i) > i`, or `π(i) = i` counterclockwise.
    pub fn weak_excedances(&self) -> Vec<usize> {
        (1..=self.n())
            .filter(|&i| self.perm.at(i) > i || self.ccw_fixed.contains(&i))
            .collect()
    }

    pub fn k(&self) -> usize {
        self.weak_excedances().len()
    }

    pub fn is_decoration_of_identity(&self) -> bool {
        self.perm.is_identity()
    }

    /// Every decorated permutation on `n` letters.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for perm in Permutation::all(n) {
            let fixed = perm.fixed_points();
            for mask in 0u32..(1 << fixed.len()) {
                let ccw = fixed.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p);
                out.push(Self::new(perm.clone(), ccw).expect("fixed points"));
            }
        }
        out
    }
}

impl fmt::Display for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.perm)?;
        if !self.ccw_fixed.is_empty() {
            let ccw: Vec<String> = self.ccw_fixed.iter().map(|p| p.to_string()).collect();
            write!(f, " ccw{{{}}}", ccw.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_only_on_fixed_points() {
        let p = Permutation::new(vec![2, 1, 3]).unwrap();
        assert!(DecoratedPermutation::new(p.clone(), [1]).is_err());
        let d = DecoratedPermutation::new(p, [3]).unwrap();
        assert_eq!(d.color(3), Some(FixedPointColor::Counterclockwise));
        assert_eq!(d.color(1), None);
        assert_eq!(d.weak_excedances(), vec![1, 3]);
    }

    #[test]
    fn json_shape() {
        let d = DecoratedPermutation::identity_decoration(3, [2]).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"perm":[1,2,3],"ccw_fixed":[2]}"#);
        let back: DecoratedPermutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<DecoratedPermutation>(r#"{"perm":[2,1],"ccw_fixed":[1]}"#).is_err());
    }

    #[test]
    fn counts() {
        // sum over S_n of 2^{#fixed points}: 2, 5, 16, 65
        assert_eq!(DecoratedPermutation::all(1).len(), 2);
        assert_eq!(DecoratedPermutation::all(3).len(), 16);
        assert_eq!(DecoratedPermutation::all(4).len(), 65);
    }
}

use std::fmt;

use super::{DecoratedPermutation, PermError, Permutation};

/// Window `(π̃(1), …, π̃(n))` of a bounded affine permutation, with
/// `i <= π̃(i) <= i + n` and entries distinct modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundedAffinePermutation {
    window: Vec<usize>,
}

impl BoundedAffinePermutation {
    pub fn new(window: Vec<usize>) -> Result<Self, PermError> {
        let n = window.len();
        let mut seen = vec![false; n];
        for (idx, &v) in window.iter().enumerate() {
            let position = idx + 1;
            if v < position || v > position + n {
                return Err(PermError::WindowBounds { position, value: v, n });
            }
            let r = v % n;
            if seen[r] {
                return Err(PermError::WindowNotPermutation { n, window });
            }
            seen[r] = true;
        }
        Ok(Self { window })
    }

    /// `π̃(i) = π(i) + n` when `π(i) < i` or `i` is a counterclockwise fixed
    /// point, and `π̃(i) = π(i)` otherwise.
    pub fn affinize(d: &DecoratedPermutation) -> Self {
        let n = d.n();
        let window = (1..=n)
            .map(|i| {
                let v = d.perm().at(i);
                if v < i || (v == i && d.ccw_fixed().contains(&i)) {
                    v + n
                } else {
                    v
                }
            })
            .collect();
        Self { window }
    }

    pub fn deaffinize(&self) -> DecoratedPermutation {
        let n = self.n();
        let one_line = self.window.iter().map(|&v| if v > n { v - n } else { v }).collect();
        let perm = Permutation::new(one_line).expect("window is a permutation mod n");
        let ccw = (1..=n).filter(|&i| self.at(i) == i + n);
        DecoratedPermutation::new(perm, ccw).expect("i + n entries are fixed points")
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn at(&self, i: usize) -> usize {
        self.window[i - 1]
    }

    pub fn window(&self) -> &[usize] {
        &self.window
    }

    /// Position `i` holds `i` or `i + n`.
    pub fn is_fixed(&self, i: usize) -> bool {
        let v = self.at(i);
        v == i || v == i + self.n()
    }

    pub fn is_decoration_of_identity(&self) -> bool {
        (1..=self.n()).all(|i| self.is_fixed(i))
    }

    /// Exchanges positions `i` and `j`, failing if the result leaves the bounded window.
    pub fn swap_positions(&self, i: usize, j: usize) -> Result<Self, PermError> {
        let mut window = self.window.clone();
        window.swap(i - 1, j - 1);
        Self::new(window)
    }
}

impl fmt::Display for BoundedAffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(v: &[usize], ccw: &[usize]) -> DecoratedPermutation {
        DecoratedPermutation::new(Permutation::new(v.to_vec()).unwrap(), ccw.iter().copied()).unwrap()
    }

    #[test]
    fn affinize_examples() {
        assert_eq!(BoundedAffinePermutation::affinize(&dec(&[3, 4, 1, 2], &[])).window(), &[3, 4, 5, 6]);
        assert_eq!(BoundedAffinePermutation::affinize(&dec(&[4, 6, 5, 1, 2, 3], &[])).window(), &[4, 6, 5, 7, 8, 9]);
        assert_eq!(BoundedAffinePermutation::affinize(&dec(&[1, 2, 3], &[])).window(), &[1, 2, 3]);
        assert_eq!(BoundedAffinePermutation::affinize(&dec(&[1, 2, 3], &[2])).window(), &[1, 5, 3]);
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(BoundedAffinePermutation::new(vec![3, 4, 5, 6]).is_ok());
        assert!(BoundedAffinePermutation::new(vec![6, 4, 5, 3]).is_err());
        assert!(BoundedAffinePermutation::new(vec![2, 2]).is_err());
        assert!(BoundedAffinePermutation::new(vec![3, 1]).is_err());
        let w = BoundedAffinePermutation::new(vec![4, 3, 5, 6]).unwrap();
        assert!(w.swap_positions(2, 3).is_ok());
        assert!(w.swap_positions(2, 4).is_err());
        // 6 may sit at position 2 but not at position 1
        assert!(BoundedAffinePermutation::new(vec![1, 6, 3, 4]).unwrap().swap_positions(1, 2).is_err());
    }

    #[test]
    fn round_trip_all_small() {
        for n in 1..=6 {
            for d in DecoratedPermutation::all(n) {
                let a = BoundedAffinePermutation::affinize(&d);
                assert_eq!(a.deaffinize(), d);
                for i in 1..=n {
                    assert_eq!((a.at(i) - 1) % n + 1, d.perm().at(i));
                }
            }
        }
    }
}

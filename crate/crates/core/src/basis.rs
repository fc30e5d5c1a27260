//! Bitmask monomials and the lexicographically ordered wedge basis.
//!
//! Index `i` (1-based in notation) lives at bit `i - 1`.

use std::cmp::Ordering;
use std::collections::HashMap;

/// An increasing index set `{i₁ < … < i_k}` stored as a bitmask.
///
/// Ordered first by degree, then lexicographically on the index lists, so
/// `e^{12} < e^{13} < e^{23}` and every degree-1 monomial precedes every
/// degree-2 one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub u32);

impl Mono {
    pub fn from_indices(indices: &[usize]) -> Mono {
        Mono(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Zero-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_disjoint(self, other: Mono) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Mono) -> Mono {
        Mono(self.0 | other.0)
    }

    pub fn complement(self, dim: usize) -> Mono {
        Mono(!self.0 & full_mask(dim))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Mono) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            if self.0 == other.0 {
                Ordering::Equal
            } else {
                let low = (self.0 ^ other.0) & (self.0 ^ other.0).wrapping_neg();
                if self.0 & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Mono) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn full_mask(dim: usize) -> u32 {
    if dim >= 32 {
        u32::MAX
    } else {
        (1u32 << dim) - 1
    }
}

/// Sign of `e^a ∧ e^b` relative to `e^{a ∪ b}`; zero when they overlap.
pub fn wedge_sign(a: Mono, b: Mono) -> i32 {
    if !a.is_disjoint(b) {
        return 0;
    }
    let mut inversions = 0u32;
    for j in b.indices() {
        inversions += (a.0 >> (j + 1)).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The degree-`k` monomials of a `dim`-dimensional space, in order, with a
/// reverse index.
#[derive(Clone, Debug)]
pub struct Basis {
    pub dim: usize,
    pub degree: usize,
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl Basis {
    pub fn new(dim: usize, degree: usize) -> Basis {
        let mut monos = Vec::new();
        let mut current = Vec::with_capacity(degree);
        fn rec(start: usize, dim: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Mono>) {
            if left == 0 {
                out.push(Mono::from_indices(cur));
                return;
            }
            for i in start..=dim - left {
                cur.push(i);
                rec(i + 1, dim, left - 1, cur, out);
                cur.pop();
            }
        }
        if degree <= dim {
            rec(0, dim, degree, &mut current, &mut monos);
        }
        let index = monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Basis {
            dim,
            degree,
            monos,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monos(&self) -> &[Mono] {
        &self.monos
    }

    pub fn mono(&self, i: usize) -> Mono {
        self.monos[i]
    }

    pub fn position(&self, m: Mono) -> Option<usize> {
        self.index.get(&m).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let b = Basis::new(4, 2);
        let lists: Vec<Vec<usize>> = b.monos().iter().map(|m| m.indices().map(|i| i + 1).collect()).collect();
        assert_eq!(
            lists,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        let mut sorted = b.monos().to_vec();
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, b.monos());
    }

    #[test]
    fn signs() {
        let e = |v: &[usize]| Mono::from_indices(&v.iter().map(|i| i - 1).collect::<Vec<_>>());
        assert_eq!(wedge_sign(e(&[1]), e(&[2])), 1);
        assert_eq!(wedge_sign(e(&[2]), e(&[1])), -1);
        assert_eq!(wedge_sign(e(&[1, 4]), e(&[2, 5])), -1);
        assert_eq!(wedge_sign(e(&[2, 3, 5, 6]), e(&[1])), 1);
        assert_eq!(wedge_sign(e(&[1]), e(&[1, 2])), 0);
    }

    #[test]
    fn binomial_sizes() {
        assert_eq!(Basis::new(10, 5).len(), 252);
        assert_eq!(Basis::new(6, 0).len(), 1);
        assert_eq!(Basis::new(6, 7).len(), 0);
    }
}

//! Univariate rational polynomials, just enough to decide whether every root
//! is real (Sturm sequences on the square-free part).

use crate::scalar::{Field, Scalar, Q};

/// Coefficients lowest degree first; trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Q {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * Q::from(i as i64))
                .collect(),
        )
    }

    /// `(quotient, remainder)`.
    pub fn div_rem(&self, rhs: &Poly) -> (Poly, Poly) {
        let dr = rhs.degree().expect("division by the zero polynomial");
        let mut rem = self.0.clone();
        let mut quot = vec![Q::zero(); self.0.len().saturating_sub(dr)];
        let inv = rhs.lead().inv();
        while rem.len() > dr && !rem.is_empty() {
            let shift = rem.len() - 1 - dr;
            let c = rem.last().unwrap().clone() * &inv;
            if !c.is_zero() {
                for (i, r) in rhs.0.iter().enumerate() {
                    rem[shift + i] -= c.clone() * r;
                }
                quot[shift] = c;
            }
            rem.pop();
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    fn sign_at_infinity(&self, positive: bool) -> i32 {
        let d = self.degree().unwrap_or(0);
        let s = if self.lead().is_positive() { 1 } else { -1 };
        if positive || d.is_multiple_of(2) {
            s
        } else {
            -s
        }
    }

    /// Number of distinct real roots.
    pub fn distinct_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            seq.push(Poly::new(r.0.into_iter().map(|c| -c).collect()));
        }
        seq.pop();
        let changes = |positive: bool| {
            let signs: Vec<i32> = seq.iter().map(|p| p.sign_at_infinity(positive)).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(false) - changes(true)
    }

    /// True when every complex root is real.
    pub fn all_roots_real(&self) -> bool {
        let Some(d) = self.degree() else {
            return true;
        };
        if d == 0 {
            return true;
        }
        let g = self.gcd(&self.derivative());
        let squarefree = self.div_rem(&g).0;
        squarefree.distinct_real_roots() == squarefree.degree().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| Q::from(x)).collect())
    }

    #[test]
    fn counts_real_roots() {
        // (x-1)(x+2)(x-3)
        assert_eq!(p(&[6, -5, -2, 1]).distinct_real_roots(), 3);
        assert!(p(&[6, -5, -2, 1]).all_roots_real());
        // x^2 + 1
        assert_eq!(p(&[1, 0, 1]).distinct_real_roots(), 0);
        assert!(!p(&[1, 0, 1]).all_roots_real());
        // x^3 (x-1)^2
        assert!(p(&[0, 0, 0, 1, -2, 1]).all_roots_real());
        // x^2 (x^2 + 1)
        assert!(!p(&[0, 0, 1, 0, 1]).all_roots_real());
    }

    #[test]
    fn division() {
        let (q, r) = p(&[6, -5, -2, 1]).div_rem(&p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, p(&[-6, -1, 1]));
    }
}

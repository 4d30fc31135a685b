//! Univariate polynomials over ℚ: interpolation, gcd and rational roots.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::rational::{common_denominator, Q};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Poly {
        while coeffs.last().is_some_and(Q::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn eval(&self, t: &Q) -> Q {
        self.0.iter().rev().fold(Q::ZERO, |acc, c| &(&acc * t) + c)
    }

    fn lead(&self) -> &Q {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lead().recip();
        Poly(self.0.iter().map(|c| c * &inv).collect())
    }

    /// Remainder of Euclidean division.
    pub fn rem(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dl = d.0.len();
        let inv = d.lead().recip();
        while r.len() >= dl {
            let f = r.last().unwrap() * &inv;
            let shift = r.len() - dl;
            if !f.is_zero() {
                for (i, c) in d.0.iter().enumerate() {
                    let x = &f * c;
                    r[shift + i] -= &x;
                }
            }
            r.pop();
            while r.last().is_some_and(Q::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// Exact division by `t - a`.
    pub fn deflate(&self, a: &Q) -> Poly {
        let n = self.0.len();
        if n <= 1 {
            return Poly::zero();
        }
        let mut q = vec![Q::ZERO; n - 1];
        let mut carry = Q::ZERO;
        for i in (1..n).rev() {
            carry = &self.0[i] + &(&carry * a);
            q[i - 1] = carry.clone();
        }
        Poly::new(q)
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Newton interpolation through `(xs[i], ys[i])`; degree < `xs.len()`.
    pub fn interpolate(xs: &[Q], ys: &[Q]) -> Poly {
        assert_eq!(xs.len(), ys.len(), "sample count mismatch");
        let n = xs.len();
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = &(&dd[i] - &dd[i - 1]) / &(&xs[i] - &xs[i - j]);
            }
        }
        // Horner on the Newton form.
        let mut acc = Poly::zero();
        for i in (0..n).rev() {
            acc = acc.mul_linear(&xs[i]);
            let mut c = acc.0.clone();
            if c.is_empty() {
                c.push(Q::ZERO);
            }
            c[0] += &dd[i];
            acc = Poly::new(c);
        }
        acc
    }

    /// `self · (t − a)`.
    fn mul_linear(&self, a: &Q) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Q::ZERO; self.0.len() + 1];
        for (i, x) in self.0.iter().enumerate() {
            c[i + 1] += x;
            c[i] -= &(x * a);
        }
        Poly::new(c)
    }

    /// All distinct rational roots, by the rational root theorem.
    pub fn rational_roots(&self) -> BTreeSet<Q> {
        let mut roots = BTreeSet::new();
        if self.is_zero() {
            return roots;
        }
        let mut p = self.clone();
        while p.0.first().is_some_and(Q::is_zero) {
            roots.insert(Q::ZERO);
            p = Poly::new(p.0[1..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let den = common_denominator(&p.0);
        let ints: Vec<BigInt> = p
            .0
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let a0 = ints.first().unwrap().abs();
        let an = ints.last().unwrap().abs();
        for num in divisors(&a0) {
            for d in divisors(&an) {
                for sign in [1, -1] {
                    let cand = Q::from_bigints(&num * sign, d.clone());
                    if !roots.contains(&cand) && p.eval(&cand).is_zero() {
                        roots.insert(cand);
                    }
                }
            }
        }
        roots
    }
}

/// Positive divisors by trial division.
///
/// # Panics
/// Panics if `n` exceeds 2^62; the polynomials this crate factors have
/// small coefficients, so a large value indicates a bug upstream.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let v = n
        .to_u64()
        .filter(|&v| v < (1 << 62))
        .expect("coefficient too large for rational root search");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v.is_multiple_of(d) {
            small.push(d);
            if d * d != v {
                large.push(v / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small.into_iter().map(BigInt::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::int(x)).collect()
    }

    #[test]
    fn interpolation_recovers_cubic() {
        // 2t³ − t + 5
        let p = Poly::new(qs(&[5, -1, 0, 2]));
        let xs = qs(&[1, 2, 3, 4, 5]);
        let ys: Vec<Q> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(Poly::interpolate(&xs, &ys), p);
    }

    #[test]
    fn roots_of_product() {
        // (t − 1)(5t − 1)(t + 2/3)
        let p = Poly::new(vec![Q::new(2, 3), Q::int(-3), Q::new(-8, 3), Q::int(5)]);
        let roots = p.rational_roots();
        let want: BTreeSet<Q> = [Q::ONE, Q::new(1, 5), Q::new(-2, 3)].into_iter().collect();
        assert_eq!(roots, want);
    }

    #[test]
    fn gcd_and_deflate() {
        let a = Poly::new(qs(&[-1, 0, 1])); // t² − 1
        let b = Poly::new(qs(&[-1, 1])); // t − 1
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.deflate(&Q::ONE), Poly::new(qs(&[1, 1])));
    }
}

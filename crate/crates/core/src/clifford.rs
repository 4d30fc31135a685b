//! Real Clifford algebra representations and spin algebras.
//!
//! Gamma matrices are k-fold tensor products of the 2×2 seeds
//!
//! ```text
//! I = [1 0; 0 1]   X = [0 1; 1 0]   Z = [1 0; 0 −1]   E = [0 −1; 1 0]
//! ```
//!
//! X, Z are symmetric with square +1, E is antisymmetric with square −1, and
//! the three pairwise anticommute.  A tensor word therefore squares to
//! (−1)^{#E}, is symmetric exactly when #E is even, and two words
//! anticommute exactly when they differ (both non-I) in an odd number of
//! slots.  A depth-first search over words of increasing length k picks p
//! words with #E even and q with #E odd, all pairwise anticommuting.  Words
//! are tried in lexicographic order with letters ordered I < X < Z < E, so
//! the result is deterministic.

use crate::error::{Error, Result};
use crate::liealg::MatrixLieAlgebra;
use crate::matrix::{Mat, Signature};
use crate::rational::Q;

const MAX_WORD: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Letter {
    I,
    X,
    Z,
    E,
}

impl Letter {
    fn matrix(self) -> Mat {
        match self {
            Letter::I => Mat::from_i64(2, 2, &[1, 0, 0, 1]),
            Letter::X => Mat::from_i64(2, 2, &[0, 1, 1, 0]),
            Letter::Z => Mat::from_i64(2, 2, &[1, 0, 0, -1]),
            Letter::E => Mat::from_i64(2, 2, &[0, -1, 1, 0]),
        }
    }
}

type Word = Vec<Letter>;

fn anticommute(a: &Word, b: &Word) -> bool {
    let clashes = a
        .iter()
        .zip(b)
        .filter(|(x, y)| **x != Letter::I && **y != Letter::I && x != y)
        .count();
    clashes % 2 == 1
}

fn e_count(w: &Word) -> usize {
    w.iter().filter(|&&l| l == Letter::E).count()
}

fn words(k: usize) -> Vec<Word> {
    const L: [Letter; 4] = [Letter::I, Letter::X, Letter::Z, Letter::E];
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                L.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out.retain(|w| w.iter().any(|&l| l != Letter::I));
    out
}

fn word_matrix(w: &Word) -> Mat {
    w.iter()
        .fold(Mat::identity(1), |acc, l| acc.kron(&l.matrix()))
}

fn search(pos: &[Word], neg: &[Word], p: usize, q: usize) -> Option<Vec<Word>> {
    fn go(
        chosen: &mut Vec<Word>,
        pos: &[Word],
        neg: &[Word],
        p: usize,
        q: usize,
        start: usize,
    ) -> bool {
        let n = chosen.len();
        if n == p + q {
            return true;
        }
        let (pool, start) = if n < p { (pos, start) } else { (neg, if n == p { 0 } else { start }) };
        for idx in start..pool.len() {
            let w = &pool[idx];
            if chosen.iter().all(|c| anticommute(c, w)) {
                chosen.push(w.clone());
                if go(chosen, pos, neg, p, q, idx + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(&mut chosen, pos, neg, p, q, 0).then_some(chosen)
}

/// Generators of Cl(p, q): γᵢ² = +1 for the first p, −1 for the last q.
#[derive(Clone, Debug)]
pub struct CliffordRep {
    pub p: usize,
    pub q: usize,
    pub gammas: Vec<Mat>,
    words: Vec<String>,
}

impl CliffordRep {
    pub fn size(&self) -> usize {
        self.gammas.first().map_or(1, Mat::rows)
    }

    pub fn eta(&self, i: usize) -> i64 {
        if i < self.p {
            1
        } else {
            -1
        }
    }

    /// The tensor words, e.g. `"XZE"`, for documentation and debugging.
    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// `γᵢγⱼ + γⱼγᵢ = 2ηᵢⱼ I` for all pairs.
    pub fn anticommutation_holds(&self) -> bool {
        let n = self.size();
        let g = &self.gammas;
        for i in 0..g.len() {
            for j in i..g.len() {
                let ac = g[i].mul(&g[j]).add(&g[j].mul(&g[i]));
                let want = if i == j {
                    Mat::identity(n).scale(&Q::int(2 * self.eta(i)))
                } else {
                    Mat::zeros(n, n)
                };
                if ac != want {
                    return false;
                }
            }
        }
        true
    }

    /// Bivectors γᵢγⱼ, i < j.
    pub fn bivectors(&self) -> Vec<Mat> {
        let g = &self.gammas;
        let mut out = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                out.push(g[i].mul(&g[j]));
            }
        }
        out
    }
}

/// Smallest tensor-word representation of Cl(p, q) with at most 5 slots.
pub fn build_clifford(p: usize, q: usize) -> Result<CliffordRep> {
    if p + q > 9 {
        return Err(Error::UnsupportedClifford(p, q));
    }
    (0..=MAX_WORD)
        .find_map(|k| build_with_length(p, q, k))
        .ok_or(Error::UnsupportedClifford(p, q))
}

/// The smaller of the Cl(p, q) and Cl(q, p) representations; both have
/// bivector algebra so(p, q).  On ties Cl(p, q) wins.
pub fn build_spin_rep(p: usize, q: usize) -> Result<CliffordRep> {
    if p + q > 9 {
        return Err(Error::UnsupportedClifford(p, q));
    }
    (0..=MAX_WORD)
        .find_map(|k| build_with_length(p, q, k).or_else(|| build_with_length(q, p, k)))
        .ok_or(Error::UnsupportedClifford(p, q))
}

fn build_with_length(p: usize, q: usize, k: usize) -> Option<CliffordRep> {
    if p + q == 0 {
        return (k == 0).then(|| CliffordRep { p, q, gammas: Vec::new(), words: Vec::new() });
    }
    if k == 0 {
        return None;
    }
    let all = words(k);
    let pos: Vec<Word> = all.iter().filter(|w| e_count(w) % 2 == 0).cloned().collect();
    let neg: Vec<Word> = all.iter().filter(|w| e_count(w) % 2 == 1).cloned().collect();
    let ws = search(&pos, &neg, p, q)?;
    let gammas = ws.iter().map(word_matrix).collect();
    let words = ws
        .iter()
        .map(|w| w.iter().map(|l| format!("{l:?}")).collect())
        .collect();
    Some(CliffordRep { p, q, gammas, words })
}

/// spin(p, q) as the span of the bivectors.
pub fn spin_algebra(rep: &CliffordRep) -> Result<MatrixLieAlgebra> {
    MatrixLieAlgebra::new(format!("spin({},{})", rep.p, rep.q), rep.size(), rep.bivectors())
}

/// A nondegenerate symmetric `B` with `bᵀB + Bb = 0` for every bivector `b`.
///
/// The solution space is computed exactly; its basis vectors are tried in
/// order, then their sum, and the first nondegenerate one is returned,
/// scaled so that its first nonzero entry is ±1.
pub fn invariant_spinor_form(rep: &CliffordRep) -> Result<Mat> {
    let n = rep.size();
    let bivs = rep.bivectors();
    // Unknowns: upper triangle of B.
    let mut idx = vec![vec![0usize; n]; n];
    let mut count = 0;
    for i in 0..n {
        for j in i..n {
            idx[i][j] = count;
            idx[j][i] = count;
            count += 1;
        }
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for b in &bivs {
        // (bᵀB + Bb)_{ij} = Σ_k b_{ki} B_{kj} + B_{ik} b_{kj}
        for i in 0..n {
            for j in i..n {
                let mut row = vec![Q::ZERO; count];
                for k in 0..n {
                    let x = &b[(k, i)];
                    if !x.is_zero() {
                        row[idx[k][j]] += x;
                    }
                    let y = &b[(k, j)];
                    if !y.is_zero() {
                        row[idx[i][k]] += y;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sols = if rows.is_empty() {
        Mat::identity(count).row_vecs()
    } else {
        Mat::from_rows(&rows).nullspace()
    };
    let to_mat = |v: &[Q]| Mat::from_fn(n, n, |i, j| v[idx[i][j]].clone());
    let mut candidates: Vec<Mat> = sols.iter().map(|v| to_mat(v)).collect();
    if sols.len() > 1 {
        let mut sum = vec![Q::ZERO; count];
        for v in &sols {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += x;
            }
        }
        candidates.push(to_mat(&sum));
    }
    for b in candidates {
        if b.rank() == n {
            let first = b.entries().iter().find(|x| !x.is_zero()).expect("nonzero form").abs();
            return Ok(b.scale(&first.recip()));
        }
    }
    Err(Error::NoSpinorForm(rep.p, rep.q))
}

/// Signature of the invariant spinor form.
pub fn spinor_form_signature(rep: &CliffordRep) -> Result<Signature> {
    Ok(invariant_spinor_form(rep)?.signature())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_anticommute() {
        let x = Letter::X.matrix();
        let z = Letter::Z.matrix();
        let e = Letter::E.matrix();
        for (a, b) in [(&x, &z), (&x, &e), (&z, &e)] {
            assert!(a.mul(b).add(&b.mul(a)).is_zero());
        }
        assert_eq!(e.mul(&e), Mat::identity(2).neg());
    }

    #[test]
    fn cl_1_0() {
        let r = build_clifford(1, 0).unwrap();
        assert_eq!(r.gammas[0].mul(&r.gammas[0]), Mat::identity(r.size()));
    }

    #[test]
    fn too_large_is_error() {
        assert_eq!(build_clifford(6, 4).unwrap_err(), Error::UnsupportedClifford(6, 4));
    }
}

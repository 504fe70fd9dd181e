use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::group::{FinGroup, Subgroup};
use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, solve_in_columns, FinAbGroup, IntMatrix};

/// A matrix for every element of a finite group, indexed by element id.
#[derive(Clone, Debug)]
pub struct IntegralRep {
    dim: usize,
    mats: Vec<IntMatrix>,
}

impl IntegralRep {
    pub fn new(dim: usize, mats: Vec<IntMatrix>) -> Result<Self> {
        if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension(format!("representation matrices must be {dim} x {dim}")));
        }
        Ok(IntegralRep { dim, mats })
    }

    /// Extends generator images to the whole group along element words.
    pub fn from_generators(group: &FinGroup, images: &[IntMatrix]) -> Result<Self> {
        let dim = images.first().map_or(0, IntMatrix::rows);
        let mut mats = vec![None; group.order()];
        mats[0] = Some(IntMatrix::identity(dim));
        // breadth-first ids: each element is a generator times an earlier one
        for g in 1..group.order() {
            let word = group.word(g);
            let mut m = IntMatrix::identity(dim);
            for part in word.split('*') {
                let k = group
                    .generator_names()
                    .iter()
                    .position(|n| n == part)
                    .expect("word uses generator names");
                m = m.mul(&images[k]);
            }
            mats[g] = Some(m);
        }
        let rep = IntegralRep::new(dim, mats.into_iter().map(Option::unwrap).collect())?;
        if !rep.is_homomorphism(group) {
            return Err(Error::Dimension("generator images do not define a representation".into()));
        }
        Ok(rep)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &IntMatrix {
        &self.mats[g]
    }

    /// `rep(gh) = rep(g) rep(h)` for all pairs.
    pub fn is_homomorphism(&self, group: &FinGroup) -> bool {
        let n = group.order();
        self.mats.len() == n
            && self.mats[0] == IntMatrix::identity(self.dim)
            && (0..n).all(|g| (0..n).all(|h| self.mats[group.mul(g, h)] == self.mats[g].mul(&self.mats[h])))
    }

    pub fn direct_sum(&self, other: &IntegralRep) -> IntegralRep {
        let d = self.dim + other.dim;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                let mut m = IntMatrix::zeros(d, d);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        IntegralRep { dim: d, mats }
    }
}

fn minus_identity(m: &IntMatrix) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        out.set(i, i, m.get(i, i) - BigInt::one());
    }
    out
}

/// Rank of the invariant sublattice `M^H`.
pub fn h0(h: &Subgroup, rep: &IntegralRep) -> usize {
    let n = rep.dim();
    let mut rows = Vec::new();
    for &g in h.generators() {
        rows.extend(minus_identity(rep.matrix(g)).to_rows());
    }
    let m = IntMatrix::from_rows(rows, n).expect("square blocks");
    m.kernel().cols()
}

/// `H^1(H, M)` as crossed homomorphisms modulo principal ones.
///
/// The cocycle condition `f(gh) = f(g) + g f(h)` is imposed for every pair
/// of elements of `H`; the saturated solution lattice is then compared with
/// the coboundaries `g -> (g - 1) m` through a Smith form.
pub fn h1(h: &Subgroup, rep: &IntegralRep, group: &FinGroup) -> Result<FinAbGroup> {
    for &g in h.elements() {
        if !rep.matrix(g).determinant().abs().is_one() {
            return Err(Error::NotUnimodular(g));
        }
    }
    let n = rep.dim();
    let els = h.elements();
    let pos = |g: usize| els.binary_search(&g).expect("closed subgroup");
    let unknowns = els.len() * n;

    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(els.len() * els.len() * n);
    for (a, &g) in els.iter().enumerate() {
        let mg = rep.matrix(g);
        for (b, &k) in els.iter().enumerate() {
            let c = pos(group.mul(g, k));
            for i in 0..n {
                let mut row = vec![BigInt::zero(); unknowns];
                row[c * n + i] += 1;
                row[a * n + i] -= 1;
                for j in 0..n {
                    row[b * n + j] -= mg.get(i, j);
                }
                rows.push(row);
            }
        }
    }
    let cocycles = IntMatrix::from_rows(rows, unknowns)?.kernel();
    let k = cocycles.cols();
    let smith = smith_normal_form(&cocycles);

    let mut coords: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut f = Vec::with_capacity(unknowns);
        for &g in els {
            f.extend(minus_identity(rep.matrix(g)).column(i));
        }
        let x = solve_in_columns(&smith, &f)
            .ok_or_else(|| Error::Dimension("coboundary is not a cocycle".into()))?;
        coords.push(x);
    }
    let b = IntMatrix::from_columns(&coords, k)?;
    let (group_part, free) = FinAbGroup::cokernel(&b);
    if free > 0 {
        return Err(Error::FreeCohomology(free));
    }
    Ok(group_part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcoh::DEFAULT_CAP;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn sign_action_on_z() {
        let (g, mats) = FinGroup::from_matrices(&["s"], &[m(&[&[-1]])], DEFAULT_CAP).unwrap();
        let rep = IntegralRep::new(1, mats).unwrap();
        let whole = g.closure(g.generators());
        assert_eq!(h1(&whole, &rep, &g).unwrap().divisors(), &[BigInt::from(2)]);
        assert_eq!(h0(&whole, &rep), 0);
        let triv = g.closure(&[]);
        assert!(h1(&triv, &rep, &g).unwrap().is_trivial());
        assert_eq!(h0(&triv, &rep), 1);
    }

    #[test]
    fn trivial_action_and_permutation_module() {
        let (g, _) = FinGroup::from_permutations(&["c"], &[vec![1, 2, 0]], DEFAULT_CAP).unwrap();
        let id = IntegralRep::new(2, vec![IntMatrix::identity(2); 3]).unwrap();
        let whole = g.closure(g.generators());
        assert!(h1(&whole, &id, &g).unwrap().is_trivial());
        // Z[C3] is induced, so cohomologically trivial
        let c = m(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let rep = IntegralRep::from_generators(&g, &[c]).unwrap();
        assert!(h1(&whole, &rep, &g).unwrap().is_trivial());
        assert_eq!(h0(&whole, &rep), 1);
    }

    #[test]
    fn augmentation_ideal_of_c3() {
        // kernel of Z[C3] -> Z has H^1 = Z/3
        let (g, _) = FinGroup::from_permutations(&["c"], &[vec![1, 2, 0]], DEFAULT_CAP).unwrap();
        let rep = IntegralRep::from_generators(&g, &[m(&[&[0, -1], &[1, -1]])]).unwrap();
        let whole = g.closure(g.generators());
        assert_eq!(h1(&whole, &rep, &g).unwrap().divisors(), &[BigInt::from(3)]);
    }

    #[test]
    fn rejects_non_unimodular() {
        let (g, _) = FinGroup::from_permutations(&["t"], &[vec![1, 0]], DEFAULT_CAP).unwrap();
        let rep = IntegralRep::new(1, vec![m(&[&[1]]), m(&[&[2]])]).unwrap();
        let whole = g.closure(g.generators());
        assert_eq!(h1(&whole, &rep, &g), Err(Error::NotUnimodular(1)));
    }
}

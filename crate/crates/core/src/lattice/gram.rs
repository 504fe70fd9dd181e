use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::abgroup::FinAbGroup;
use super::intmat::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};
use crate::exact::{determinant, fmt_rat, parse_rat, Rat};

/// A lattice presented by labeled generators and their pairing matrix.
///
/// The generators may be linearly dependent; the lattice itself is the
/// image of `Z^n` modulo the (saturated) radical of the pairing.
#[derive(Clone, PartialEq, Debug)]
pub struct GramLattice {
    labels: Vec<String>,
    gram: Vec<Vec<Rat>>,
}

/// Output of [`GramLattice::radical_quotient`].
#[derive(Clone, Debug)]
pub struct RadicalQuotient {
    /// Nondegenerate lattice on a basis `b0, b1, ...`.
    pub lattice: GramLattice,
    /// Maps generator coordinates to basis coordinates (`rank x n`).
    pub projection: IntMatrix,
    /// Basis vectors written in generator coordinates (`n x rank`).
    pub basis: IntMatrix,
}

impl GramLattice {
    pub fn new(labels: Vec<String>, gram: Vec<Vec<Rat>>) -> Result<Self> {
        let n = labels.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("Gram must be {n} x {n}")));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Dimension(format!("Gram not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(GramLattice { labels, gram })
    }

    pub fn from_ints(labels: &[&str], gram: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            labels.iter().map(|s| s.to_string()).collect(),
            gram.iter()
                .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect(),
        )
    }

    /// Lattice with generators named `prefix0, prefix1, ...`.
    pub fn with_prefix(prefix: &str, gram: Vec<Vec<Rat>>) -> Result<Self> {
        let labels = (0..gram.len()).map(|i| format!("{prefix}{i}")).collect();
        Self::new(labels, gram)
    }

    pub fn zero() -> Self {
        GramLattice { labels: Vec::new(), gram: Vec::new() }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.gram[i][j]
    }

    /// Pairing of two rational coordinate vectors.
    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.gram[i][j].is_zero() {
                    s += xi * &self.gram[i][j] * yj;
                }
            }
        }
        s
    }

    pub fn pair_int(&self, x: &[BigInt], y: &[BigInt]) -> Rat {
        self.pair(&to_rat(x), &to_rat(y))
    }

    pub fn is_integral(&self) -> bool {
        self.gram.iter().flatten().all(Rat::is_integer)
    }

    pub fn is_even(&self) -> bool {
        self.is_integral()
            && (0..self.dim()).all(|i| self.gram[i][i].to_integer().is_even())
    }

    /// Gram scaled by the least common denominator, as an integer matrix.
    fn scaled(&self) -> IntMatrix {
        let l = self
            .gram
            .iter()
            .flatten()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let rows = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect())
            .collect();
        IntMatrix::from_rows(rows, self.dim()).expect("square")
    }

    /// Rank of the pairing over `Q`.
    pub fn rank(&self) -> usize {
        self.dim() - self.radical().cols()
    }

    /// Saturated basis (columns) of the relation lattice `{x : G x = 0}`.
    pub fn radical(&self) -> IntMatrix {
        self.scaled().kernel()
    }

    /// Whether an integer vector lies in the radical.
    pub fn in_radical(&self, x: &[BigInt]) -> bool {
        let xr = to_rat(x);
        self.gram
            .iter()
            .all(|row| row.iter().zip(&xr).map(|(a, b)| a * b).sum::<Rat>().is_zero())
    }

    pub fn radical_quotient(&self) -> RadicalQuotient {
        let n = self.dim();
        let k = self.radical();
        let kc = k.cols();
        let s = smith_normal_form(&k);
        let projection = s.u.select_rows(kc..n);
        let basis = s.u_inv.select_columns(kc..n);
        let r = n - kc;
        let cols: Vec<Vec<Rat>> = (0..r).map(|j| to_rat(&basis.column(j))).collect();
        let gram = (0..r)
            .map(|i| (0..r).map(|j| self.pair(&cols[i], &cols[j])).collect())
            .collect();
        RadicalQuotient {
            lattice: GramLattice::with_prefix("b", gram).expect("symmetric"),
            projection,
            basis,
        }
    }

    /// Determinant of the Gram of a basis of the generated lattice; zero
    /// for the zero lattice.
    pub fn discriminant(&self) -> Rat {
        let q = self.radical_quotient().lattice;
        if q.dim() == 0 {
            return Rat::zero();
        }
        determinant(q.gram)
    }

    fn check_vectors(&self, sub: &[Vec<BigInt>]) -> Result<()> {
        match sub.iter().position(|v| v.len() != self.dim()) {
            Some(i) => Err(Error::NotInLattice(format!(
                "vector {i} has {} coordinates, lattice has {} generators",
                sub[i].len(),
                self.dim()
            ))),
            None => Ok(()),
        }
    }

    /// Index of the sublattice spanned by `sub` (generator coordinates), or
    /// `None` when the index is infinite.
    pub fn sublattice_index(&self, sub: &[Vec<BigInt>]) -> Result<Option<BigInt>> {
        self.check_vectors(sub)?;
        let q = self.radical_quotient();
        let r = q.lattice.dim();
        let images: Vec<Vec<BigInt>> = sub.iter().map(|v| q.projection.mul_vec(v)).collect();
        let m = IntMatrix::from_columns(&images, r)?;
        let s = smith_normal_form(&m);
        let divs = s.divisors();
        if divs.len() < r {
            return Ok(None);
        }
        Ok(Some(divs.iter().product()))
    }

    /// Classes pairing to zero with every vector of `sub`, computed inside
    /// the generated lattice.
    pub fn orthogonal_complement(&self, sub: &[Vec<BigInt>]) -> Result<GramLattice> {
        Ok(self.orthogonal_complement_basis(sub)?.0)
    }

    /// Orthogonal complement together with its basis in generator
    /// coordinates (`n x rank`).
    pub fn orthogonal_complement_basis(
        &self,
        sub: &[Vec<BigInt>],
    ) -> Result<(GramLattice, IntMatrix)> {
        self.check_vectors(sub)?;
        let q = self.radical_quotient();
        let r = q.lattice.dim();
        let rows: Vec<Vec<Rat>> = sub
            .iter()
            .map(|v| {
                let x = to_rat(&q.projection.mul_vec(v));
                (0..r)
                    .map(|j| (0..r).map(|i| &x[i] * &q.lattice.gram[i][j]).sum())
                    .collect()
            })
            .collect();
        let m = rational_rows_to_int(&rows, r);
        let c = m.kernel();
        let cols: Vec<Vec<Rat>> = (0..c.cols()).map(|j| to_rat(&c.column(j))).collect();
        let gram = cols
            .iter()
            .map(|x| cols.iter().map(|y| q.lattice.pair(x, y)).collect())
            .collect();
        Ok((GramLattice::with_prefix("c", gram)?, q.basis.mul(&c)))
    }

    /// `L^v / L` for an integral nondegenerate Gram.
    pub fn dual_quotient(&self) -> Result<FinAbGroup> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        let m = self.scaled();
        let (g, free) = FinAbGroup::cokernel(&m);
        if free > 0 {
            return Err(Error::DegenerateGram);
        }
        Ok(g)
    }

    /// Lattice generated by `self` and rational glue vectors (in generator
    /// coordinates). Each glue vector must pair integrally with every
    /// generator.
    pub fn glue(&self, glue: &[Vec<Rat>]) -> Result<GramLattice> {
        let n = self.dim();
        let mut vecs: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        for (k, g) in glue.iter().enumerate() {
            if g.len() != n {
                return Err(Error::Dimension(format!("glue vector {k} has wrong length")));
            }
            if vecs[..n].iter().any(|e| !self.pair(e, g).is_integer()) {
                return Err(Error::NotInDual(k));
            }
            vecs.push(g.clone());
        }
        let gram = vecs
            .iter()
            .map(|x| vecs.iter().map(|y| self.pair(x, y)).collect())
            .collect();
        let labels = self
            .labels
            .iter()
            .cloned()
            .chain((0..glue.len()).map(|k| format!("glue{k}")))
            .collect();
        GramLattice::new(labels, gram)
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let (n, m) = (self.dim(), other.dim());
        let mut gram = vec![vec![Rat::zero(); n + m]; n + m];
        for i in 0..n {
            gram[i][..n].clone_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].clone_from_slice(&other.gram[i]);
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        GramLattice { labels, gram }
    }

    /// Sub-presentation on the given generator indices.
    pub fn restrict(&self, idx: &[usize]) -> GramLattice {
        GramLattice {
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            gram: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.gram[i][j].clone()).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let gram: Vec<Vec<String>> =
            self.gram.iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
        json!({ "labels": self.labels, "gram": gram })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse { offset: 0, message: m.to_string() };
        let labels = v["labels"]
            .as_array()
            .ok_or_else(|| bad("missing labels"))?
            .iter()
            .map(|l| l.as_str().map(String::from).ok_or_else(|| bad("label must be a string")))
            .collect::<Result<Vec<_>>>()?;
        let gram = v["gram"]
            .as_array()
            .ok_or_else(|| bad("missing gram"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("gram row must be an array"))?
                    .iter()
                    .map(|x| parse_rat(x.as_str().ok_or_else(|| bad("entry must be a string"))?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels, gram)
    }
}

fn to_rat(x: &[BigInt]) -> Vec<Rat> {
    x.iter().map(|v| Rat::from_integer(v.clone())).collect()
}

/// Clears denominators row by row.
fn rational_rows_to_int(rows: &[Vec<Rat>], cols: usize) -> IntMatrix {
    let ints = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            r.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    IntMatrix::from_rows(ints, cols).expect("rectangular")
}

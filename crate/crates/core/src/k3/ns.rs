use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::labels::{Family, GenLabel, Sign};
use crate::error::Result;
use crate::exact::{fmt_rat, Rat};
use crate::groupcoh::{FinGroup, IntegralRep, DEFAULT_CAP};
use crate::lattice::{GramLattice, IntMatrix, RadicalQuotient};

/// Names of the Galois generators, in the order used throughout.
pub const GENERATOR_NAMES: [&str; 3] = ["rho", "sigma", "tau"];

/// The 43 divisor classes, their Gram matrix, and the Galois action on
/// both the presentation and the rank-20 quotient.
#[derive(Clone, Debug)]
pub struct NSCatalog {
    labels: Vec<GenLabel>,
    lattice: GramLattice,
    quotient: RadicalQuotient,
    group: FinGroup,
    perms: Vec<Vec<usize>>,
    action: IntegralRep,
}

/// A named vector over the 43 labels expected to be a relation.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub vector: Vec<BigInt>,
    pub in_radical: bool,
}

/// Builds the catalog from the intersection rules and the Galois action.
pub fn ns_catalog() -> Result<NSCatalog> {
    let labels = GenLabel::all();
    let gram: Vec<Vec<i64>> = labels
        .iter()
        .map(|a| labels.iter().map(|b| a.pairing(*b)).collect())
        .collect();
    let names: Vec<String> = labels.iter().map(ToString::to_string).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let lattice = GramLattice::from_ints(&names, &gram)?;
    let quotient = lattice.radical_quotient();

    let gens = generator_permutations(&labels);
    let (group, perms) = FinGroup::from_permutations(&GENERATOR_NAMES, &gens, DEFAULT_CAP)?;
    let mats = perms.iter().map(|p| reduced_matrix(&quotient, p)).collect();
    let action = IntegralRep::new(quotient.lattice.dim(), mats)?;
    Ok(NSCatalog { labels, lattice, quotient, group, perms, action })
}

fn index_of(labels: &[GenLabel], l: GenLabel) -> usize {
    labels.iter().position(|x| *x == l).expect("label in catalog")
}

fn generator_permutations(labels: &[GenLabel]) -> Vec<Vec<usize>> {
    let maps: [fn(GenLabel) -> GenLabel; 3] = [GenLabel::rho, GenLabel::sigma, GenLabel::tau];
    maps.iter()
        .map(|f| labels.iter().map(|l| index_of(labels, f(*l))).collect())
        .collect()
}

/// Permutation matrix sending basis vector `i` to `p[i]`.
pub fn permutation_matrix(p: &[usize]) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.len(), p.len());
    for (i, &j) in p.iter().enumerate() {
        m.set(j, i, BigInt::one());
    }
    m
}

/// Induced action of a label permutation on the radical quotient.
fn reduced_matrix(q: &RadicalQuotient, p: &[usize]) -> IntMatrix {
    let n = p.len();
    let r = q.basis.cols();
    let mut moved = IntMatrix::zeros(n, r);
    for (i, &j) in p.iter().enumerate() {
        for c in 0..r {
            moved.set(j, c, q.basis.get(i, c).clone());
        }
    }
    q.projection.mul(&moved)
}

impl NSCatalog {
    pub fn labels(&self) -> &[GenLabel] {
        &self.labels
    }

    pub fn lattice(&self) -> &GramLattice {
        &self.lattice
    }

    pub fn quotient(&self) -> &RadicalQuotient {
        &self.quotient
    }

    /// The rank-20 lattice with basis `b0..b19`.
    pub fn reduced(&self) -> &GramLattice {
        &self.quotient.lattice
    }

    pub fn radical(&self) -> IntMatrix {
        self.lattice.radical()
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    /// Permutation of the labels induced by each group element.
    pub fn permutation(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    pub fn action(&self) -> &IntegralRep {
        &self.action
    }

    pub fn index(&self, l: GenLabel) -> usize {
        index_of(&self.labels, l)
    }

    pub fn gram_entry(&self, a: GenLabel, b: GenLabel) -> i64 {
        let x = self.lattice.entry(self.index(a), self.index(b));
        i64::try_from(x.to_integer()).expect("small entries")
    }

    /// The 43 x 43 permutation matrices of rho, sigma, tau.
    pub fn galois_matrices(&self) -> Vec<IntMatrix> {
        self.group
            .generators()
            .iter()
            .map(|&g| permutation_matrix(&self.perms[g]))
            .collect()
    }

    /// `P^T G P = G` for the given permutation.
    pub fn preserves_gram(&self, p: &[usize]) -> bool {
        let g = self.lattice.gram();
        (0..p.len()).all(|i| (0..p.len()).all(|j| g[p[i]][p[j]] == g[i][j]))
    }

    /// Every radical vector is mapped into the radical.
    pub fn radical_stable(&self, p: &[usize]) -> bool {
        let k = self.radical();
        (0..k.cols()).all(|c| {
            let col = k.column(c);
            let mut moved = vec![BigInt::zero(); col.len()];
            for (i, &j) in p.iter().enumerate() {
                moved[j] = col[i].clone();
            }
            self.lattice.in_radical(&moved)
        })
    }

    /// Rank and discriminant of the sublattice generated by `subset`.
    pub fn rank_disc(&self, subset: &[GenLabel]) -> (usize, Rat) {
        let idx: Vec<usize> = subset.iter().map(|l| self.index(*l)).collect();
        let sub = self.lattice.restrict(&idx);
        (sub.rank(), sub.discriminant())
    }

    pub fn is_invariant(&self, subset: &[GenLabel]) -> bool {
        let idx: Vec<usize> = subset.iter().map(|l| self.index(*l)).collect();
        self.group
            .generators()
            .iter()
            .all(|&g| idx.iter().all(|&i| idx.contains(&self.perms[g][i])))
    }

    /// Checks `<rho, sigma>` is abelian of order 9 and `tau` inverts it.
    pub fn has_expected_structure(&self) -> bool {
        let g = &self.group;
        let [rho, sigma, tau] = [0, 1, 2].map(|k| g.generators()[k]);
        let conj = |x: usize| g.mul(g.mul(tau, x), g.inverse(tau));
        g.order() == 18
            && g.element_order(rho) == 3
            && g.element_order(sigma) == 3
            && g.element_order(tau) == 2
            && g.mul(rho, sigma) == g.mul(sigma, rho)
            && g.closure(&[rho, sigma]).order() == 9
            && conj(rho) == g.inverse(rho)
            && conj(sigma) == g.inverse(sigma)
    }

    /// The stated relations: line pairs and conic pairs against `H` and the
    /// incident cusp components.
    pub fn relation_check(&self) -> Vec<Relation> {
        let n = self.labels.len();
        let mut out = Vec::new();
        for v in Family::ALL {
            let mut x = vec![BigInt::zero(); n];
            x[self.index(GenLabel::Dline(v, 1))] += 1;
            x[self.index(GenLabel::Dline(v, 2))] += 1;
            x[self.index(GenLabel::H)] -= 1;
            for e in 0..3 {
                for w in 1..=2 {
                    x[self.index(GenLabel::Theta(v, e, w))] += 1;
                }
            }
            out.push(self.relation(format!("Dline({},1)+Dline({},2)", v.name(), v.name()), x));
        }
        for i in 0..3 {
            for j in 0..3 {
                let plus = GenLabel::Dconic(i, j, Sign::Plus);
                let mut x = vec![BigInt::zero(); n];
                x[self.index(plus)] += 1;
                x[self.index(GenLabel::Dconic(i, j, Sign::Minus))] += 1;
                x[self.index(GenLabel::H)] -= 2;
                for (v, e) in self.incident_cusps(plus) {
                    for w in 1..=2 {
                        x[self.index(GenLabel::Theta(v, e, w))] += 1;
                    }
                }
                out.push(self.relation(format!("Dconic({i},{j},+)+Dconic({i},{j},-)"), x));
            }
        }
        out
    }

    pub fn relation(&self, name: String, vector: Vec<BigInt>) -> Relation {
        let in_radical = self.lattice.in_radical(&vector);
        Relation { name, vector, in_radical }
    }

    /// Cusps `(family, exponent)` met by a class, read off the Gram.
    pub fn incident_cusps(&self, d: GenLabel) -> Vec<(Family, u8)> {
        let mut out = Vec::new();
        for v in Family::ALL {
            for e in 0..3 {
                let m: i64 = (1..=2).map(|w| self.gram_entry(d, GenLabel::Theta(v, e, w))).sum();
                if m > 0 {
                    out.push((v, e));
                }
            }
        }
        out
    }

    /// JSON report of rank and discriminant for a label subset.
    pub fn report(&self, subset_name: &str, subset: &[GenLabel]) -> Value {
        let (rank, disc) = self.rank_disc(subset);
        json!({
            "subset": subset_name,
            "generators": subset.len(),
            "rank": rank,
            "discriminant": fmt_rat(&disc),
            "galois_invariant": self.is_invariant(subset),
        })
    }
}

/// The 29 generators: both components over `r = 0`, all 18 cusp
/// components, and the nine `+` conic components.
pub fn prop_generators() -> Vec<GenLabel> {
    GenLabel::all()
        .into_iter()
        .filter(|l| match l {
            GenLabel::Dline(Family::R, _) | GenLabel::Theta(..) => true,
            GenLabel::Dconic(_, _, s) => *s == Sign::Plus,
            _ => false,
        })
        .collect()
}

pub fn theta_labels() -> Vec<GenLabel> {
    GenLabel::all()
        .into_iter()
        .filter(|l| matches!(l, GenLabel::Theta(..)))
        .collect()
}

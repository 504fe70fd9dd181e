use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

/// Default bound on the number of elements produced by closure.
pub const DEFAULT_CAP: usize = 10_000;

/// A finite group given by its right Cayley graph on named generators.
///
/// Element 0 is the identity. Every element carries a shortest word in the
/// generators (breadth-first order), which fixes the element numbering.
#[derive(Clone, Debug)]
pub struct FinGroup {
    gen_names: Vec<String>,
    gen_ids: Vec<usize>,
    right: Vec<Vec<usize>>,
    words: Vec<Vec<usize>>,
    table: Vec<Vec<usize>>,
}

impl FinGroup {
    /// Closure of `gens` under multiplication, with the concrete element
    /// values in id order.
    pub fn generate<T, F>(
        names: &[&str],
        gens: &[T],
        identity: T,
        mul: F,
        cap: usize,
    ) -> Result<(FinGroup, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        assert_eq!(names.len(), gens.len(), "one name per generator");
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            let mut row = Vec::with_capacity(gens.len());
            for (k, s) in gens.iter().enumerate() {
                let h = mul(&elems[g], s);
                let id = match index.get(&h) {
                    Some(&id) => id,
                    None => {
                        let id = elems.len();
                        if id >= cap {
                            return Err(Error::GroupTooLarge(cap));
                        }
                        index.insert(h.clone(), id);
                        elems.push(h);
                        let mut w = words[g].clone();
                        w.push(k);
                        words.push(w);
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            right.push(row);
        }
        let n = elems.len();
        let mut table = vec![vec![0usize; n]; n];
        for (g, row) in table.iter_mut().enumerate() {
            for (h, w) in words.iter().enumerate() {
                row[h] = w.iter().fold(g, |x, &k| right[x][k]);
            }
        }
        let gen_ids = gens.iter().map(|s| index[s]).collect();
        let group = FinGroup {
            gen_names: names.iter().map(|s| s.to_string()).collect(),
            gen_ids,
            right,
            words,
            table,
        };
        Ok((group, elems))
    }

    /// Group generated by permutations of `0..degree` (images listed).
    pub fn from_permutations(
        names: &[&str],
        perms: &[Vec<usize>],
        cap: usize,
    ) -> Result<(FinGroup, Vec<Vec<usize>>)> {
        let degree = perms.first().map_or(0, Vec::len);
        for p in perms {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::Dimension("generator is not a permutation".into()));
            }
        }
        // (p * q)(i) = p(q(i)): apply q first.
        Self::generate(names, perms, (0..degree).collect(), |p, q| q.iter().map(|&i| p[i]).collect(), cap)
    }

    /// Group generated by invertible integer matrices.
    pub fn from_matrices(
        names: &[&str],
        mats: &[IntMatrix],
        cap: usize,
    ) -> Result<(FinGroup, Vec<IntMatrix>)> {
        let n = mats.first().map_or(0, IntMatrix::rows);
        if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Dimension("generators must be square of equal size".into()));
        }
        Self::generate(names, mats, IntMatrix::identity(n), |a, b| a.mul(b), cap)
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order())
            .find(|&h| self.table[g][h] == 0)
            .expect("finite group")
    }

    pub fn generators(&self) -> &[usize] {
        &self.gen_ids
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.table[x][g];
            k += 1;
        }
        k
    }

    /// Shortest word for `g`, e.g. `rho*sigma`; `1` for the identity.
    pub fn word(&self, g: usize) -> String {
        if g == 0 {
            return "1".into();
        }
        self.words[g]
            .iter()
            .map(|&k| self.gen_names[k].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Element given by a product of generator names, e.g. `"rho*sigma"`.
    pub fn element(&self, word: &str) -> Option<usize> {
        let mut x = 0;
        for part in word.split('*').map(str::trim).filter(|p| *p != "1") {
            let k = self.gen_names.iter().position(|n| n == part)?;
            x = self.right[x][k];
        }
        Some(x)
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.table[x][g];
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup { elements: seen.into_iter().collect(), generators: gens.to_vec() }
    }

    /// Every subgroup exactly once, sorted by order and then by elements.
    ///
    /// Starting from the trivial group, each known subgroup is joined with
    /// every element outside it until no new subgroup appears. Any subgroup
    /// is reached along a chain `<h1> < <h1,h2> < ...`, so the list is
    /// complete whatever the number of generators needed.
    pub fn enumerate_subgroups(&self) -> Vec<Subgroup> {
        let mut found: Vec<Subgroup> = vec![self.closure(&[])];
        let mut keys: HashSet<Vec<usize>> = HashSet::from([found[0].elements.clone()]);
        let mut i = 0;
        while i < found.len() {
            let base = found[i].clone();
            for g in 0..self.order() {
                if base.contains(g) {
                    continue;
                }
                let mut gens = base.generators.clone();
                gens.push(g);
                let s = self.closure(&gens);
                if keys.insert(s.elements.clone()) {
                    found.push(s);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        found
    }

    /// `g h g^-1` for every element of `h`.
    pub fn conjugate(&self, s: &Subgroup, g: usize) -> Subgroup {
        let gi = self.inverse(g);
        let mut elements: Vec<usize> =
            s.elements.iter().map(|&h| self.mul(self.mul(g, h), gi)).collect();
        elements.sort_unstable();
        let generators = s.generators.iter().map(|&h| self.mul(self.mul(g, h), gi)).collect();
        Subgroup { elements, generators }
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        (0..self.order()).all(|g| self.conjugate(s, g).elements == s.elements)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|g| (0..self.order()).all(|h| self.table[g][h] == self.table[h][g]))
    }
}

/// A subgroup, stored as its sorted element ids plus a generating set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup {
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        let (g, _) = FinGroup::from_permutations(&["t"], &[vec![1, 0]], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.enumerate_subgroups().len(), 2);
        let (g, _) = FinGroup::from_permutations(&["e"], &[vec![0, 1, 2]], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.enumerate_subgroups().len(), 1);
    }

    #[test]
    fn symmetric_group_s4() {
        let (g, _) = FinGroup::from_permutations(
            &["a", "b"],
            &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]],
            DEFAULT_CAP,
        )
        .unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.enumerate_subgroups().len(), 30);
        assert!(!g.is_abelian());
    }

    #[test]
    fn words_and_cap() {
        let (g, _) = FinGroup::from_permutations(&["c"], &[vec![1, 2, 0]], DEFAULT_CAP).unwrap();
        let c2 = g.element("c*c").unwrap();
        assert_eq!(g.word(c2), "c*c");
        assert_eq!(g.mul(c2, g.element("c").unwrap()), 0);
        assert_eq!(g.element_order(c2), 3);
        assert!(matches!(
            FinGroup::from_permutations(&["c"], &[vec![1, 2, 0]], 2),
            Err(Error::GroupTooLarge(2))
        ));
    }
}

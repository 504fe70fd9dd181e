use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::ns::NSCatalog;
use crate::error::{Error, Result};
use crate::groupcoh::{h1, FinGroup, Subgroup};
use crate::lattice::FinAbGroup;
use crate::par::Strategy;

/// `H^1` of one subgroup acting on the rank-20 module.
#[derive(Clone, Debug)]
pub struct H1Entry {
    pub subgroup: Subgroup,
    pub generators: Vec<String>,
    pub h1: FinAbGroup,
    pub contained_in_rho_sigma_tau: bool,
    /// Contained in some conjugate of `<rho*sigma, tau>`.
    pub contained_up_to_conjugacy: bool,
}

#[derive(Clone, Debug)]
pub struct H1Report {
    pub entries: Vec<H1Entry>,
}

/// Small generating set: scan elements by decreasing order and keep those
/// not yet generated.
pub fn small_generating_set(group: &FinGroup, s: &Subgroup) -> Vec<usize> {
    let mut els: Vec<usize> = s.elements().to_vec();
    els.sort_by_key(|&g| (std::cmp::Reverse(group.element_order(g)), group.word(g).len(), g));
    let mut gens: Vec<usize> = Vec::new();
    let mut cur = group.closure(&[]);
    for g in els {
        if !cur.contains(g) {
            gens.push(g);
            cur = group.closure(&gens);
        }
    }
    gens
}

/// The order-6 subgroup `<rho*sigma, tau>`.
pub fn rho_sigma_tau(group: &FinGroup) -> Subgroup {
    let rs = group.element("rho*sigma").expect("generator names");
    let tau = group.element("tau").expect("generator names");
    group.closure(&[rs, tau])
}

/// Computes `H^1(H, NS)` for every subgroup `H`.
pub fn h1_scan(cat: &NSCatalog, strategy: Strategy) -> Result<H1Report> {
    let group = cat.group();
    let subs = group.enumerate_subgroups();
    let special = rho_sigma_tau(group);
    let conjugates: Vec<Subgroup> =
        (0..group.order()).map(|g| group.conjugate(&special, g)).collect();
    let values = strategy.map(&subs, |s| h1(s, cat.action(), group));
    let mut entries = Vec::with_capacity(subs.len());
    for (s, v) in subs.into_iter().zip(values) {
        let generators = small_generating_set(group, &s)
            .into_iter()
            .map(|g| group.word(g))
            .collect();
        entries.push(H1Entry {
            contained_in_rho_sigma_tau: s.is_subgroup_of(&special),
            contained_up_to_conjugacy: conjugates.iter().any(|c| s.is_subgroup_of(c)),
            h1: v?,
            generators,
            subgroup: s,
        });
    }
    Ok(H1Report { entries })
}

impl H1Entry {
    fn describe(&self) -> String {
        format!("<{}> (order {}, H^1 = {})", self.generators.join(", "), self.subgroup.order(), self.h1)
    }
}

impl H1Report {
    /// Subgroups with nontrivial `H^1` outside `<rho*sigma, tau>`.
    pub fn violations(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|e| !e.h1.is_trivial() && !e.contained_in_rho_sigma_tau)
            .map(H1Entry::describe)
            .collect()
    }

    /// Subgroups with nontrivial `H^1` outside every conjugate of
    /// `<rho*sigma, tau>`.
    pub fn violations_up_to_conjugacy(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|e| !e.h1.is_trivial() && !e.contained_up_to_conjugacy)
            .map(H1Entry::describe)
            .collect()
    }

    /// `Ok` when every nontrivial `H^1` sits inside `<rho*sigma, tau>`
    /// (or a conjugate of it, if `up_to_conjugacy`).
    pub fn assert_containment(&self, up_to_conjugacy: bool) -> Result<()> {
        let bad = if up_to_conjugacy { self.violations_up_to_conjugacy() } else { self.violations() };
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Containment(bad))
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    let h1: Vec<u64> =
                        e.h1.divisors().iter().map(|d| d.to_u64().expect("small")).collect();
                    json!({
                        "subgroup_order": e.subgroup.order(),
                        "generators": e.generators,
                        "h1": h1,
                        "contained_in_rho_sigma_tau": e.contained_in_rho_sigma_tau,
                        "contained_up_to_conjugacy": e.contained_up_to_conjugacy,
                    })
                })
                .collect(),
        )
    }
}

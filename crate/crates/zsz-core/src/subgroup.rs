//! Subgroups as sorted member lists, plus structural probes
//! (abelian invariants, exponent, center).

use crate::error::{Error, Result};
use crate::group::{is_prime, El, FiniteGroup};

/// A subgroup of some ambient group, stored as the sorted list of member
/// indices. The ambient group is passed explicitly to the functions that
/// need it; a `Subgroup` on its own is just the subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<El>,
}

impl Subgroup {
    /// Wrap a member set after checking closure, identity and inverses.
    pub fn new(parent: &FiniteGroup, mut members: Vec<El>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m as usize >= parent.order()) {
            return Err(Error::IndexOutOfRange {
                index: *members.iter().max().unwrap() as usize,
                order: parent.order(),
            });
        }
        if members.first() != Some(&0) {
            return Err(Error::InvalidParameter(
                "subgroup must contain the identity".into(),
            ));
        }
        let mask = mask_of(parent.order(), &members);
        for &a in &members {
            if !mask[parent.inv(a) as usize] {
                return Err(Error::InvalidParameter(format!(
                    "subset not closed under inverse at {a}"
                )));
            }
            for &b in &members {
                if !mask[parent.mul(a, b) as usize] {
                    return Err(Error::InvalidParameter(format!(
                        "subset not closed under product at ({a},{b})"
                    )));
                }
            }
        }
        Ok(Subgroup { members })
    }

    /// Closure of a generating set.
    pub fn generated(parent: &FiniteGroup, gens: &[El]) -> Self {
        let n = parent.order();
        let mut mask = vec![false; n];
        mask[0] = true;
        let mut members: Vec<El> = vec![0];
        let mut queue: Vec<El> = Vec::new();
        for &g in gens {
            assert!((g as usize) < n, "generator out of range");
            if !mask[g as usize] {
                mask[g as usize] = true;
                members.push(g);
                queue.push(g);
            }
        }
        while let Some(x) = queue.pop() {
            // Products with every current member, both sides.
            let snapshot: Vec<El> = members.clone();
            for &y in &snapshot {
                for v in [parent.mul(x, y), parent.mul(y, x)] {
                    if !mask[v as usize] {
                        mask[v as usize] = true;
                        members.push(v);
                        queue.push(v);
                    }
                }
            }
        }
        members.sort_unstable();
        Subgroup { members }
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Subgroup {
            members: parent.elements().collect(),
        }
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[El] {
        &self.members
    }

    pub fn contains(&self, e: El) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    /// Membership bitmask over the ambient order.
    pub fn mask(&self, parent_order: usize) -> Vec<bool> {
        mask_of(parent_order, &self.members)
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|e| other.contains(*e))
            .collect();
        Subgroup { members }
    }

    pub fn is_normal(&self, parent: &FiniteGroup) -> bool {
        parent
            .elements()
            .all(|g| self.members.iter().all(|&m| self.contains(parent.conj(g, m))))
    }

    /// The subgroup as a standalone group: members are relabelled
    /// `0..order` in sorted order (identity stays at 0). Returns the group
    /// and the member list giving the new-index -> parent-index map.
    pub fn as_group(&self, parent: &FiniteGroup, name: impl Into<String>) -> FiniteGroup {
        let m = self.members.len();
        let pos = |e: El| self.members.binary_search(&e).expect("closure") as El;
        let mut table = vec![0 as El; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = pos(parent.mul(self.members[i], self.members[j]));
            }
        }
        FiniteGroup::from_flat(name, m, table).expect("subgroup table is a group")
    }
}

fn mask_of(order: usize, members: &[El]) -> Vec<bool> {
    let mut mask = vec![false; order];
    for &m in members {
        mask[m as usize] = true;
    }
    mask
}

/// Center by direct scan: all z commuting with every element.
pub fn center_bruteforce(g: &FiniteGroup) -> Subgroup {
    let members = g
        .elements()
        .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    Subgroup { members }
}

/// Cosets of a normal subgroup, as a quotient group plus the coset map
/// (element -> coset index).
pub fn quotient(parent: &FiniteGroup, normal: &Subgroup) -> Result<(FiniteGroup, Vec<El>)> {
    if !normal.is_normal(parent) {
        return Err(Error::InvalidParameter("subgroup is not normal".into()));
    }
    let n = parent.order();
    let mut coset_of = vec![El::MAX; n];
    let mut reps: Vec<El> = Vec::new();
    for g in parent.elements() {
        if coset_of[g as usize] != El::MAX {
            continue;
        }
        let idx = reps.len() as El;
        reps.push(g);
        for &m in normal.members() {
            coset_of[parent.mul(g, m) as usize] = idx;
        }
    }
    let q = reps.len();
    let mut table = vec![0 as El; q * q];
    for i in 0..q {
        for j in 0..q {
            table[i * q + j] = coset_of[parent.mul(reps[i], reps[j]) as usize];
        }
    }
    let group = FiniteGroup::from_flat(format!("{}/N", parent.name()), q, table)
        .map_err(|e| Error::InvalidParameter(format!("quotient not a group: {e}")))?;
    Ok((group, coset_of))
}

/// What `structure_probe` reports.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct StructureProbe {
    pub order: usize,
    pub is_abelian: bool,
    pub exponent: u64,
    /// `Some(p)` when the group is elementary abelian of exponent `p`.
    pub elementary_abelian_p: Option<u64>,
    /// Invariant factors `[m1, m2, ...]` with `m2 | m1`, etc.; `None` for
    /// nonabelian groups.
    pub abelian_invariants: Option<Vec<u64>>,
}

/// Cheap structural fingerprint of a group.
pub fn structure_probe(g: &FiniteGroup) -> StructureProbe {
    let is_abelian = g.is_abelian();
    let exponent = g.exponent();
    let abelian_invariants = if is_abelian {
        Some(abelian_invariants(g).expect("abelian by check"))
    } else {
        None
    };
    let elementary_abelian_p = if is_abelian && is_prime(exponent as usize) {
        // Abelian of prime exponent p is a vector space over F_p, so the
        // order must be a p-power; assert rather than trust.
        let mut o = g.order() as u64;
        while o % exponent == 0 {
            o /= exponent;
        }
        (o == 1).then_some(exponent)
    } else {
        None
    };
    StructureProbe {
        order: g.order(),
        is_abelian,
        exponent,
        elementary_abelian_p,
        abelian_invariants,
    }
}

/// Invariant factors of a finite abelian group, largest first, by peeling
/// off a maximal-order cyclic summand and recursing on the quotient.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<Vec<u64>> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let mut invariants = Vec::new();
    let mut current = g.clone();
    while current.order() > 1 {
        let top = current
            .elements()
            .max_by_key(|&e| current.order_of(e))
            .unwrap();
        let m = current.order_of(top);
        invariants.push(m as u64);
        let cyc = Subgroup::generated(&current, &[top]);
        debug_assert_eq!(cyc.order(), m);
        let (q, _) = quotient(&current, &cyc)?;
        current = q;
    }
    Ok(invariants)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_subgroup_of_dihedral() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let rots = Subgroup::generated(&d4, &[1]);
        assert_eq!(rots.order(), 4);
        assert!(rots.is_normal(&d4));
        let refl = Subgroup::generated(&d4, &[4]);
        assert_eq!(refl.order(), 2);
        assert!(!refl.is_normal(&d4));
        let all = Subgroup::generated(&d4, &[1, 4]);
        assert_eq!(all.order(), 8);
    }

    #[test]
    fn subgroup_new_rejects_non_closed() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert!(Subgroup::new(&c6, vec![0, 2, 4]).is_ok());
        assert!(Subgroup::new(&c6, vec![0, 2]).is_err());
        assert!(Subgroup::new(&c6, vec![1, 2, 3]).is_err());
    }

    #[test]
    fn center_of_dihedral() {
        // Z(D4) = {1, r^2}; Z(D3) trivial.
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(center_bruteforce(&d4).members(), &[0, 2]);
        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(center_bruteforce(&d3).members(), &[0]);
    }

    #[test]
    fn quotient_d4_by_rotations() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let rots = Subgroup::generated(&d4, &[1]);
        let (q, coset) = quotient(&d4, &rots).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(coset[0], coset[3]);
        assert_ne!(coset[0], coset[5]);
    }

    #[test]
    fn invariant_factors() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(abelian_invariants(&c6).unwrap(), vec![6]);

        let e9 = FiniteGroup::elementary_abelian(3, 2).unwrap();
        assert_eq!(abelian_invariants(&e9).unwrap(), vec![3, 3]);

        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let g = FiniteGroup::direct_product(&c2, &c4).unwrap();
        assert_eq!(abelian_invariants(&g).unwrap(), vec![4, 2]);

        // C2 x C3 is cyclic of order 6.
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let g = FiniteGroup::direct_product(&c2, &c3).unwrap();
        assert_eq!(abelian_invariants(&g).unwrap(), vec![6]);

        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert!(matches!(abelian_invariants(&d3), Err(Error::NotAbelian)));
    }

    #[test]
    fn probe_recognizes_elementary_abelian() {
        let e8 = FiniteGroup::elementary_abelian(2, 3).unwrap();
        let probe = structure_probe(&e8);
        assert!(probe.is_abelian);
        assert_eq!(probe.exponent, 2);
        assert_eq!(probe.elementary_abelian_p, Some(2));
        assert_eq!(probe.abelian_invariants, Some(vec![2, 2, 2]));

        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(structure_probe(&c4).elementary_abelian_p, None);

        let d3 = FiniteGroup::dihedral(3).unwrap();
        let probe = structure_probe(&d3);
        assert!(!probe.is_abelian);
        assert_eq!(probe.exponent, 6);
        assert_eq!(probe.abelian_invariants, None);
    }
}

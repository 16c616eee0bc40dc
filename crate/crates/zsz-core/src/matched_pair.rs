//! Matched pairs of groups and their Zappa-Szep products.
//!
//! A matched pair is two groups `H`, `K` with mutual actions
//! `sigma: K x H -> H` and `tau: H x K -> K` (we write `sigma_k(h)` and
//! `tau_h(k)`) subject to six compatibility conditions C1-C6. Exactly
//! then does the set `H x K` become a group under
//!
//! ```text
//! (h, k) (h', k') = (h * sigma_k(h'), tau_{h'}(k) * k')
//! ```
//!
//! in which `H x {1}` and `{1} x K` sit as subgroups intersecting
//! trivially, every element splitting uniquely as `h*k`. Both action
//! tables are stored row-major as `|K| x |H|` grids: `sigma[k][h]` is an
//! `H`-index, `tau[k][h]` a `K`-index holding `tau_h(k)`.

use crate::error::{Error, Result};
use crate::group::{El, FiniteGroup};
use crate::hom::GroupHom;
use crate::subgroup::{center_bruteforce, Subgroup};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedPair {
    h: FiniteGroup,
    k: FiniteGroup,
    sigma: Vec<El>,
    tau: Vec<El>,
}

/// Outcome of checking one of C1-C6, with the least failing tuple
/// `(h, h', k, k')` if any; coordinates a condition does not quantify
/// over stay at the identity.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize, usize, usize)>,
}

/// Per-condition validation report. A matched pair is valid iff every
/// condition passed; all failures are listed, not just the first.
#[derive(Debug, Clone, Serialize)]
pub struct MpValidationReport {
    pub conditions: Vec<ConditionCheck>,
}

impl MpValidationReport {
    pub fn is_valid(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn failed_names(&self) -> Vec<&'static str> {
        self.conditions
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }

    fn summary(&self) -> String {
        self.conditions
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} at {:?}", c.name, c.witness.unwrap_or_default()))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl MatchedPair {
    /// Wrap raw action tables after shape/range checks. Run
    /// [`validate`](Self::validate) to know whether the pair is matched;
    /// this constructor only guarantees well-formed tables.
    pub fn from_tables(
        h: FiniteGroup,
        k: FiniteGroup,
        sigma: Vec<El>,
        tau: Vec<El>,
    ) -> Result<Self> {
        let cells = h.order() * k.order();
        if sigma.len() != cells || tau.len() != cells {
            return Err(Error::ShapeMismatch {
                expected: format!("{} x {} action tables", k.order(), h.order()),
                got: format!("sigma {}, tau {}", sigma.len(), tau.len()),
            });
        }
        if let Some(&v) = sigma.iter().find(|&&v| v as usize >= h.order()) {
            return Err(Error::IndexOutOfRange {
                index: v as usize,
                order: h.order(),
            });
        }
        if let Some(&v) = tau.iter().find(|&&v| v as usize >= k.order()) {
            return Err(Error::IndexOutOfRange {
                index: v as usize,
                order: k.order(),
            });
        }
        Ok(MatchedPair { h, k, sigma, tau })
    }

    /// Both actions trivial; the product will be the direct product.
    pub fn trivial(h: FiniteGroup, k: FiniteGroup) -> Self {
        let sigma = (0..k.order())
            .flat_map(|_| (0..h.order() as El).collect::<Vec<_>>())
            .collect();
        let tau = (0..k.order() as El)
            .flat_map(|kk| vec![kk; h.order()])
            .collect();
        MatchedPair { h, k, sigma, tau }
    }

    /// Matched pair of a semidirect product `H >| K`: `K` acts on `H` by
    /// automorphisms `phi[k]` and `tau` is trivial.
    pub fn from_semidirect(h: FiniteGroup, k: FiniteGroup, phi: &[GroupHom]) -> Result<Self> {
        if phi.len() != k.order() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} automorphisms", k.order()),
                got: format!("{}", phi.len()),
            });
        }
        for (i, f) in phi.iter().enumerate() {
            if f.dom_order() != h.order() || f.cod_order() != h.order() {
                return Err(Error::NotAnAction(format!("phi[{i}] is not an endomap of H")));
            }
            if !f.is_bijective() {
                return Err(Error::NotAnAction(format!("phi[{i}] is not bijective")));
            }
        }
        if phi[0].image() != GroupHom::identity(&h).image() {
            return Err(Error::NotAnAction("phi[1] is not the identity".into()));
        }
        for k1 in k.elements() {
            for k2 in k.elements() {
                let kk = k.mul(k1, k2) as usize;
                for x in h.elements() {
                    if phi[kk].apply(x) != phi[k1 as usize].apply(phi[k2 as usize].apply(x)) {
                        return Err(Error::NotAnAction(format!(
                            "phi[{k1}*{k2}] != phi[{k1}] . phi[{k2}] at {x}"
                        )));
                    }
                }
            }
        }
        let mut sigma = vec![0 as El; h.order() * k.order()];
        let mut tau = vec![0 as El; h.order() * k.order()];
        for kk in 0..k.order() {
            for hh in 0..h.order() {
                sigma[kk * h.order() + hh] = phi[kk].apply(hh as El);
                tau[kk * h.order() + hh] = kk as El;
            }
        }
        let mp = MatchedPair { h, k, sigma, tau };
        debug_assert!(mp.validate().is_valid());
        Ok(mp)
    }

    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn k(&self) -> &FiniteGroup {
        &self.k
    }

    /// `sigma_k(h)`.
    #[inline]
    pub fn sigma(&self, k: El, h: El) -> El {
        self.sigma[k as usize * self.h.order() + h as usize]
    }

    /// `tau_h(k)`. Note the argument order: the `H`-element is the actor.
    #[inline]
    pub fn tau(&self, h: El, k: El) -> El {
        self.tau[k as usize * self.h.order() + h as usize]
    }

    pub fn sigma_table(&self) -> &[El] {
        &self.sigma
    }

    pub fn tau_table(&self) -> &[El] {
        &self.tau
    }

    /// Exhaustive check of C1-C6 with least witnesses.
    pub fn validate(&self) -> MpValidationReport {
        let (h, k) = (&self.h, &self.k);
        let hn = h.order() as El;
        let kn = k.order() as El;
        let mut conditions = Vec::with_capacity(6);

        // C1: sigma_1 = id, tau_1 = id.
        let mut witness = None;
        for hh in 0..hn {
            if self.sigma(0, hh) != hh {
                witness = Some((hh as usize, 0, 0, 0));
                break;
            }
        }
        if witness.is_none() {
            for kk in 0..kn {
                if self.tau(0, kk) != kk {
                    witness = Some((0, 0, kk as usize, 0));
                    break;
                }
            }
        }
        conditions.push(ConditionCheck {
            name: "C1",
            passed: witness.is_none(),
            witness,
        });

        // C2: sigma_k(1) = 1 and tau_h(1) = 1.
        let mut witness = None;
        for hh in 0..hn {
            if self.tau(hh, 0) != 0 {
                witness = Some((hh as usize, 0, 0, 0));
                break;
            }
        }
        if witness.is_none() {
            for kk in 0..kn {
                if self.sigma(kk, 0) != 0 {
                    witness = Some((0, 0, kk as usize, 0));
                    break;
                }
            }
        }
        conditions.push(ConditionCheck {
            name: "C2",
            passed: witness.is_none(),
            witness,
        });

        // C3: sigma_{k k'}(h) = sigma_k(sigma_{k'}(h)).
        let mut witness = None;
        'c3: for hh in 0..hn {
            for k1 in 0..kn {
                for k2 in 0..kn {
                    if self.sigma(k.mul(k1, k2), hh) != self.sigma(k1, self.sigma(k2, hh)) {
                        witness = Some((hh as usize, 0, k1 as usize, k2 as usize));
                        break 'c3;
                    }
                }
            }
        }
        conditions.push(ConditionCheck {
            name: "C3",
            passed: witness.is_none(),
            witness,
        });

        // C4: tau_h(k k') = tau_{sigma_{k'}(h)}(k) * tau_h(k').
        let mut witness = None;
        'c4: for hh in 0..hn {
            for k1 in 0..kn {
                for k2 in 0..kn {
                    let lhs = self.tau(hh, k.mul(k1, k2));
                    let rhs = k.mul(self.tau(self.sigma(k2, hh), k1), self.tau(hh, k2));
                    if lhs != rhs {
                        witness = Some((hh as usize, 0, k1 as usize, k2 as usize));
                        break 'c4;
                    }
                }
            }
        }
        conditions.push(ConditionCheck {
            name: "C4",
            passed: witness.is_none(),
            witness,
        });

        // C5: sigma_k(h h') = sigma_k(h) * sigma_{tau_h(k)}(h').
        let mut witness = None;
        'c5: for h1 in 0..hn {
            for h2 in 0..hn {
                for kk in 0..kn {
                    let lhs = self.sigma(kk, h.mul(h1, h2));
                    let rhs = h.mul(self.sigma(kk, h1), self.sigma(self.tau(h1, kk), h2));
                    if lhs != rhs {
                        witness = Some((h1 as usize, h2 as usize, kk as usize, 0));
                        break 'c5;
                    }
                }
            }
        }
        conditions.push(ConditionCheck {
            name: "C5",
            passed: witness.is_none(),
            witness,
        });

        // C6: tau_{h h'}(k) = tau_{h'}(tau_h(k)).
        let mut witness = None;
        'c6: for h1 in 0..hn {
            for h2 in 0..hn {
                for kk in 0..kn {
                    if self.tau(h.mul(h1, h2), kk) != self.tau(h2, self.tau(h1, kk)) {
                        witness = Some((h1 as usize, h2 as usize, kk as usize, 0));
                        break 'c6;
                    }
                }
            }
        }
        conditions.push(ConditionCheck {
            name: "C6",
            passed: witness.is_none(),
            witness,
        });

        MpValidationReport { conditions }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// `Fix(sigma)`: elements of `H` fixed by every `sigma_k`.
    /// Pre: valid matched pair (that is what makes this a subgroup).
    pub fn fix_sigma(&self) -> Subgroup {
        let members = self
            .h
            .elements()
            .filter(|&hh| self.k.elements().all(|kk| self.sigma(kk, hh) == hh))
            .collect();
        Subgroup::new(&self.h, members).expect("Fix(sigma) of a valid pair is a subgroup")
    }

    /// `ker(sigma)`: the `k` with `sigma_k = id`.
    pub fn ker_sigma(&self) -> Subgroup {
        let members = self
            .k
            .elements()
            .filter(|&kk| self.h.elements().all(|hh| self.sigma(kk, hh) == hh))
            .collect();
        Subgroup::new(&self.k, members).expect("ker(sigma) of a valid pair is a subgroup")
    }

    /// `Fix(tau)`: elements of `K` fixed by every `tau_h`.
    pub fn fix_tau(&self) -> Subgroup {
        let members = self
            .k
            .elements()
            .filter(|&kk| self.h.elements().all(|hh| self.tau(hh, kk) == kk))
            .collect();
        Subgroup::new(&self.k, members).expect("Fix(tau) of a valid pair is a subgroup")
    }

    /// `ker(tau)`: the `h` with `tau_h = id`.
    pub fn ker_tau(&self) -> Subgroup {
        let members = self
            .h
            .elements()
            .filter(|&hh| self.k.elements().all(|kk| self.tau(hh, kk) == kk))
            .collect();
        Subgroup::new(&self.h, members).expect("ker(tau) of a valid pair is a subgroup")
    }

    /// `H* = Fix(sigma) ∩ ker(tau) ∩ Z(H)`.
    pub fn h_star(&self) -> Subgroup {
        self.fix_sigma()
            .intersect(&self.ker_tau())
            .intersect(&center_bruteforce(&self.h))
    }

    /// `K* = Fix(tau) ∩ ker(sigma) ∩ Z(K)`.
    pub fn k_star(&self) -> Subgroup {
        self.fix_tau()
            .intersect(&self.ker_sigma())
            .intersect(&center_bruteforce(&self.k))
    }

    /// Build the product group. Fails with the validation summary if the
    /// pair is not matched.
    pub fn build_product(&self) -> Result<ZappaSzepGroup> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::InvalidMatchedPair(report.summary()));
        }
        let (hn, kn) = (self.h.order(), self.k.order());
        let n = hn * kn;
        let mut table = vec![0 as El; n * n];
        for h1 in 0..hn as El {
            for k1 in 0..kn as El {
                let left = h1 as usize * kn + k1 as usize;
                for h2 in 0..hn as El {
                    let sh = self.h.mul(h1, self.sigma(k1, h2));
                    let tk = self.tau(h2, k1);
                    for k2 in 0..kn as El {
                        let right = h2 as usize * kn + k2 as usize;
                        table[left * n + right] =
                            (sh as usize * kn) as El + self.k.mul(tk, k2);
                    }
                }
            }
        }
        let name = format!("{}><{}", self.h.name(), self.k.name());
        let product = FiniteGroup::from_flat(name, n, table)
            .map_err(|e| Error::ProductNotAGroup(e.to_string()))?;
        Ok(ZappaSzepGroup {
            mp: self.clone(),
            product,
        })
    }

    /// Stable fingerprint of the pair (groups and actions), used to keep
    /// derived objects from being mixed across pairs.
    pub(crate) fn fingerprint(&self) -> u64 {
        let mut x: u64 = 0xcbf29ce484222325;
        let mut eat = |v: u64| {
            x ^= v;
            x = x.wrapping_mul(0x100000001b3);
        };
        eat(self.h.order() as u64);
        eat(self.k.order() as u64);
        for t in [self.h.table(), self.k.table(), &self.sigma, &self.tau] {
            for &v in t {
                eat(v as u64);
            }
        }
        x
    }
}

/// A matched pair together with its product group. Product element
/// `(h, k)` lives at index `h * |K| + k`.
#[derive(Debug, Clone)]
pub struct ZappaSzepGroup {
    mp: MatchedPair,
    product: FiniteGroup,
}

impl ZappaSzepGroup {
    pub fn mp(&self) -> &MatchedPair {
        &self.mp
    }

    pub fn product(&self) -> &FiniteGroup {
        &self.product
    }

    #[inline]
    pub fn pair_index(&self, h: El, k: El) -> El {
        (h as usize * self.mp.k().order() + k as usize) as El
    }

    #[inline]
    pub fn pair_of(&self, g: El) -> (El, El) {
        let kn = self.mp.k().order();
        ((g as usize / kn) as El, (g as usize % kn) as El)
    }

    pub fn embed_h(&self, h: El) -> El {
        self.pair_index(h, 0)
    }

    pub fn embed_k(&self, k: El) -> El {
        self.pair_index(0, k)
    }

    /// `H x {1}` as a subgroup of the product.
    pub fn h_embedded(&self) -> Subgroup {
        let members = self.mp.h().elements().map(|h| self.embed_h(h)).collect();
        Subgroup::new(&self.product, members).expect("H embeds")
    }

    /// `{1} x K` as a subgroup of the product.
    pub fn k_embedded(&self) -> Subgroup {
        let members = self.mp.k().elements().map(|k| self.embed_k(k)).collect();
        Subgroup::new(&self.product, members).expect("K embeds")
    }
}

/// An exact internal factorization `G = H K` recovered from subgroups,
/// with the matched pair read off from how `k h` re-sorts into `h' k'`.
/// `h_members[i]` / `k_members[j]` give the parent elements behind the
/// relabelled factor groups, so `mp` pairs with `G` via
/// `(i, j) -> h_members[i] * k_members[j]`.
#[derive(Debug, Clone)]
pub struct InternalFactorization {
    pub mp: MatchedPair,
    pub h_members: Vec<El>,
    pub k_members: Vec<El>,
}

/// Read a matched pair off an internal exact factorization. Requires
/// `|H| * |K| = |G|` and `H ∩ K = 1`; those two force `HK = G` with
/// unique factorization.
pub fn factorize_internal(
    g: &FiniteGroup,
    h_sub: &Subgroup,
    k_sub: &Subgroup,
) -> Result<InternalFactorization> {
    if h_sub.order() * k_sub.order() != g.order() {
        return Err(Error::NotExactFactorization(format!(
            "|H| * |K| = {} * {} != |G| = {}",
            h_sub.order(),
            k_sub.order(),
            g.order()
        )));
    }
    let common = h_sub.intersect(k_sub);
    if common.order() != 1 {
        return Err(Error::NotExactFactorization(format!(
            "H ∩ K has order {}",
            common.order()
        )));
    }

    let (hn, kn) = (h_sub.order(), k_sub.order());
    // Unique factorization table: parent element -> (i, j).
    let mut fact = vec![(El::MAX, El::MAX); g.order()];
    for (i, &hh) in h_sub.members().iter().enumerate() {
        for (j, &kk) in k_sub.members().iter().enumerate() {
            let p = g.mul(hh, kk) as usize;
            debug_assert_eq!(fact[p], (El::MAX, El::MAX), "factorization collision");
            fact[p] = (i as El, j as El);
        }
    }

    let mut sigma = vec![0 as El; hn * kn];
    let mut tau = vec![0 as El; hn * kn];
    for (j, &kk) in k_sub.members().iter().enumerate() {
        for (i, &hh) in h_sub.members().iter().enumerate() {
            let (si, tj) = fact[g.mul(kk, hh) as usize];
            sigma[j * hn + i] = si;
            tau[j * hn + i] = tj;
        }
    }

    let h_group = h_sub.as_group(g, format!("{}|H", g.name()));
    let k_group = k_sub.as_group(g, format!("{}|K", g.name()));
    let mp = MatchedPair::from_tables(h_group, k_group, sigma, tau)?;
    let report = mp.validate();
    if !report.is_valid() {
        // Cannot happen for genuine subgroups; defensive all the same.
        return Err(Error::InvalidMatchedPair(report.summary()));
    }
    Ok(InternalFactorization {
        mp,
        h_members: h_sub.members().to_vec(),
        k_members: k_sub.members().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `C_n >| C_2` with the inversion action: the dihedral group.
    fn dihedral_semidirect(n: usize) -> MatchedPair {
        let h = FiniteGroup::cyclic(n).unwrap();
        let k = FiniteGroup::cyclic(2).unwrap();
        let id = GroupHom::identity(&h);
        let inv: Vec<El> = h.elements().map(|x| h.inv(x)).collect();
        let inv = GroupHom::new(&h, &h, inv).unwrap();
        MatchedPair::from_semidirect(h, k, &[id, inv]).unwrap()
    }

    #[test]
    fn trivial_pair_is_valid_and_gives_direct_product() {
        let h = FiniteGroup::dihedral(3).unwrap();
        let k = FiniteGroup::cyclic(4).unwrap();
        let mp = MatchedPair::trivial(h.clone(), k.clone());
        assert!(mp.is_valid());
        let zs = mp.build_product().unwrap();
        let dp = FiniteGroup::direct_product(&h, &k).unwrap();
        assert_eq!(zs.product().table(), dp.table());
    }

    #[test]
    fn semidirect_gives_dihedral() {
        for n in [3usize, 4] {
            let mp = dihedral_semidirect(n);
            assert!(mp.is_valid());
            let zs = mp.build_product().unwrap();
            let g = zs.product();
            assert_eq!(g.order(), 2 * n);
            assert!(!g.is_abelian());
            // r has order n, the reflection has order 2 and inverts r.
            let r = zs.embed_h(1);
            let s = zs.embed_k(1);
            assert_eq!(g.order_of(r) as usize, n);
            assert_eq!(g.order_of(s) as usize, 2);
            assert_eq!(g.mul(s, r), g.mul(g.inv(r), s));
        }
    }

    #[test]
    fn embeddings_are_homomorphic_and_split() {
        let mp = dihedral_semidirect(4);
        let zs = mp.build_product().unwrap();
        let g = zs.product();
        let (h, k) = (zs.mp().h(), zs.mp().k());
        for a in h.elements() {
            for b in h.elements() {
                assert_eq!(
                    g.mul(zs.embed_h(a), zs.embed_h(b)),
                    zs.embed_h(h.mul(a, b))
                );
            }
        }
        for a in k.elements() {
            for b in k.elements() {
                assert_eq!(
                    g.mul(zs.embed_k(a), zs.embed_k(b)),
                    zs.embed_k(k.mul(a, b))
                );
            }
        }
        // Every element splits as (h, 1)(1, k).
        for e in g.elements() {
            let (a, b) = zs.pair_of(e);
            assert_eq!(zs.pair_index(a, b), e);
            assert_eq!(g.mul(zs.embed_h(a), zs.embed_k(b)), e);
        }
        assert_eq!(zs.h_embedded().order(), h.order());
        assert_eq!(zs.k_embedded().order(), k.order());
        assert_eq!(
            zs.h_embedded().intersect(&zs.k_embedded()).order(),
            1
        );
    }

    #[test]
    fn fix_and_ker_for_trivial_pair() {
        let h = FiniteGroup::dihedral(4).unwrap();
        let k = FiniteGroup::cyclic(6).unwrap();
        let mp = MatchedPair::trivial(h.clone(), k.clone());
        assert_eq!(mp.fix_sigma().order(), 8);
        assert_eq!(mp.ker_sigma().order(), 6);
        assert_eq!(mp.fix_tau().order(), 6);
        assert_eq!(mp.ker_tau().order(), 8);
        // Trivial actions leave only the center constraints.
        assert_eq!(mp.h_star().members(), center_bruteforce(&h).members());
        assert_eq!(mp.k_star().members(), center_bruteforce(&k).members());
    }

    #[test]
    fn fix_and_ker_for_semidirect() {
        // C4 >| C2 by inversion: sigma_s fixes {0, 2}, acts faithfully.
        let mp = dihedral_semidirect(4);
        assert_eq!(mp.fix_sigma().members(), &[0, 2]);
        assert_eq!(mp.ker_sigma().members(), &[0]);
        assert_eq!(mp.fix_tau().order(), 2);
        assert_eq!(mp.ker_tau().order(), 4);
        // H* = Fix(sigma) ∩ ker(tau) ∩ Z(C4) = {0, 2}.
        assert_eq!(mp.h_star().members(), &[0, 2]);
        assert_eq!(mp.k_star().members(), &[0]);
    }

    #[test]
    fn validation_catches_corruption_with_witness() {
        let h = FiniteGroup::cyclic(3).unwrap();
        let k = FiniteGroup::cyclic(3).unwrap();
        let mp = MatchedPair::trivial(h, k);
        let mut sigma = mp.sigma_table().to_vec();
        // sigma_1(1) := 2 breaks C1 at h = 1 (and more).
        sigma[1] = 2;
        let bad = MatchedPair::from_tables(
            mp.h().clone(),
            mp.k().clone(),
            sigma,
            mp.tau_table().to_vec(),
        )
        .unwrap();
        let report = bad.validate();
        assert!(!report.is_valid());
        let c1 = &report.conditions[0];
        assert_eq!(c1.name, "C1");
        assert!(!c1.passed);
        assert_eq!(c1.witness, Some((1, 0, 0, 0)));
        assert!(bad.build_product().is_err());
    }

    #[test]
    fn from_tables_rejects_bad_shapes() {
        let h = FiniteGroup::cyclic(2).unwrap();
        let k = FiniteGroup::cyclic(2).unwrap();
        assert!(matches!(
            MatchedPair::from_tables(h.clone(), k.clone(), vec![0, 1, 0], vec![0, 0, 1, 1]),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            MatchedPair::from_tables(h, k, vec![0, 1, 0, 7], vec![0, 0, 1, 1]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn from_semidirect_rejects_non_actions() {
        let h = FiniteGroup::cyclic(4).unwrap();
        let k = FiniteGroup::cyclic(2).unwrap();
        let id = GroupHom::identity(&h);
        // phi[1] must be an involution for a C2 action; squaring x -> x^3
        // gives x -> x^9 = x, fine, so instead use a non-bijective map.
        let collapse = GroupHom::new(&h, &h, vec![0, 2, 0, 2]).unwrap();
        let err = MatchedPair::from_semidirect(h.clone(), k.clone(), &[id.clone(), collapse])
            .unwrap_err();
        assert!(matches!(err, Error::NotAnAction(_)));
        // Wrong count.
        assert!(matches!(
            MatchedPair::from_semidirect(h.clone(), k, &[id]),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn from_semidirect_rejects_broken_action_law() {
        // C4 acting on C5 through a generator of order 4 is an action;
        // sending the C4 generator to an order-2 map and insisting the
        // other slots stay identity breaks phi_{k k'} = phi_k . phi_{k'}.
        let h = FiniteGroup::cyclic(5).unwrap();
        let k = FiniteGroup::cyclic(4).unwrap();
        let id = GroupHom::identity(&h);
        let neg: Vec<El> = h.elements().map(|x| h.inv(x)).collect();
        let neg = GroupHom::new(&h, &h, neg).unwrap();
        let err = MatchedPair::from_semidirect(
            h.clone(),
            k,
            &[id.clone(), neg, id.clone(), id],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAnAction(_)));
    }

    #[test]
    fn factorize_dihedral_into_rotations_and_reflection() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let rot = Subgroup::new(&g, vec![0, 1, 2, 3]).unwrap();
        let refl = Subgroup::new(&g, vec![0, 4]).unwrap();
        let f = factorize_internal(&g, &rot, &refl).unwrap();
        assert!(f.mp.is_valid());
        // tau is trivial here (rotations are normal), sigma is inversion.
        assert_eq!(f.mp.sigma(1, 1), 3);
        assert!(f.mp.ker_tau().order() == 4);

        // Round trip: the external product reproduces g's multiplication
        // through the correspondence (i, j) -> h_members[i] * k_members[j].
        let zs = f.mp.build_product().unwrap();
        let p = zs.product();
        let to_g = |e: El| {
            let (i, j) = zs.pair_of(e);
            g.mul(f.h_members[i as usize], f.k_members[j as usize])
        };
        for a in p.elements() {
            for b in p.elements() {
                assert_eq!(to_g(p.mul(a, b)), g.mul(to_g(a), to_g(b)));
            }
        }
    }

    #[test]
    fn factorize_rejects_wrong_size_and_overlap() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let rot = Subgroup::new(&g, vec![0, 1, 2, 3]).unwrap();
        let small = Subgroup::new(&g, vec![0, 2]).unwrap();
        // 4 * 4 != 8.
        assert!(matches!(
            factorize_internal(&g, &rot, &rot),
            Err(Error::NotExactFactorization(_))
        ));
        // 4 * 2 = 8 but {0,2} sits inside the rotations.
        assert!(matches!(
            factorize_internal(&g, &rot, &small),
            Err(Error::NotExactFactorization(_))
        ));
    }

    #[test]
    fn factorize_with_nonnormal_factor_gives_nontrivial_tau() {
        // In D3, H = <s> (not normal), K = <r>: a genuine two-sided pair.
        let g = FiniteGroup::dihedral(3).unwrap();
        let s = Subgroup::new(&g, vec![0, 3]).unwrap();
        let r = Subgroup::new(&g, vec![0, 1, 2]).unwrap();
        let f = factorize_internal(&g, &s, &r).unwrap();
        assert!(f.mp.is_valid());
        let nontrivial_tau = f
            .mp
            .h()
            .elements()
            .any(|h| f.mp.k().elements().any(|k| f.mp.tau(h, k) != k));
        assert!(nontrivial_tau);
        let zs = f.mp.build_product().unwrap();
        assert!(!zs.product().is_abelian());
        assert_eq!(zs.product().order(), 6);
    }

    #[test]
    fn fingerprint_distinguishes_pairs() {
        let t1 = MatchedPair::trivial(FiniteGroup::cyclic(4).unwrap(), FiniteGroup::cyclic(2).unwrap());
        let t2 = dihedral_semidirect(4);
        assert_ne!(t1.fingerprint(), t2.fingerprint());
        assert_eq!(t1.fingerprint(), t1.clone().fingerprint());
    }
}

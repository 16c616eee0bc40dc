//! Centers of Zappa-Szep products without scanning the product.
//!
//! The center of `H >< K` is cut out inside `Fix(sigma) x Fix(tau)` by
//! two pointwise conditions:
//!
//! ```text
//! Z(G) = { (x, y) : x in Fix(sigma), y in Fix(tau),
//!          sigma_y = conj by x^-1 on H,  tau_x = conj by y on K }
//! ```
//!
//! Two specializations shortcut further: with both factors abelian the
//! conjugations must be trivial and `Z(G) = H* x K*`; for a semidirect
//! pair (trivial `tau`) the `y`-side condition collapses to `y in Z(K)`.
//! Every function certifies its result as an actual subgroup of the
//! product, and the test suite cross-checks against the brute-force
//! center.

use crate::error::{Error, Result};

use crate::matched_pair::ZappaSzepGroup;
use crate::subgroup::{center_bruteforce, Subgroup};

/// The center via the fixed-point characterization above.
pub fn center_via_theorem(zs: &ZappaSzepGroup) -> Subgroup {
    let mp = zs.mp();
    let (h, k) = (mp.h(), mp.k());
    let mut members = Vec::new();
    for &x in mp.fix_sigma().members() {
        let xi = h.inv(x);
        for &y in mp.fix_tau().members() {
            let sigma_ok = h.elements().all(|hh| mp.sigma(y, hh) == h.conj(xi, hh));
            if !sigma_ok {
                continue;
            }
            let tau_ok = k.elements().all(|kk| mp.tau(x, kk) == k.conj(y, kk));
            if tau_ok {
                members.push(zs.pair_index(x, y));
            }
        }
    }
    members.sort_unstable();
    Subgroup::new(zs.product(), members).expect("center is a subgroup")
}

/// The center when both factors are abelian: `H* x K*`.
pub fn center_abelian(zs: &ZappaSzepGroup) -> Result<Subgroup> {
    let mp = zs.mp();
    if !mp.h().is_abelian() || !mp.k().is_abelian() {
        return Err(Error::NotAbelianInputs);
    }
    let mut members = Vec::new();
    for &x in mp.h_star().members() {
        for &y in mp.k_star().members() {
            members.push(zs.pair_index(x, y));
        }
    }
    members.sort_unstable();
    Ok(Subgroup::new(zs.product(), members).expect("H* x K* is a subgroup"))
}

/// The center of a semidirect product (`tau` trivial): pairs `(x, y)`
/// with `x` fixed by the whole action, `y` central in `K`, and the
/// action of `y` equal to conjugation by `x^-1`.
pub fn center_semidirect(zs: &ZappaSzepGroup) -> Result<Subgroup> {
    let mp = zs.mp();
    let (h, k) = (mp.h(), mp.k());
    if mp.ker_tau().order() != h.order() {
        return Err(Error::DomainMismatch(
            "tau is not trivial, so this is not a semidirect pair".into(),
        ));
    }
    let zk = center_bruteforce(k);
    let mut members = Vec::new();
    for &x in mp.fix_sigma().members() {
        let xi = h.inv(x);
        for &y in zk.members() {
            if h.elements().all(|hh| mp.sigma(y, hh) == h.conj(xi, hh)) {
                members.push(zs.pair_index(x, y));
            }
        }
    }
    members.sort_unstable();
    Ok(Subgroup::new(zs.product(), members).expect("center is a subgroup"))
}

/// Convenience: does the theorem's answer match a brute-force scan?
/// Used by the command line's `--method both`.
pub fn centers_agree(zs: &ZappaSzepGroup) -> (Subgroup, Subgroup, bool) {
    let fast = center_via_theorem(zs);
    let brute = center_bruteforce(zs.product());
    let same = fast.members() == brute.members();
    (fast, brute, same)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{El, FiniteGroup};
    use crate::hom::GroupHom;
    use crate::matched_pair::{factorize_internal, MatchedPair};

    fn semidirect_dihedral(n: usize) -> ZappaSzepGroup {
        let h = FiniteGroup::cyclic(n).unwrap();
        let k = FiniteGroup::cyclic(2).unwrap();
        let id = GroupHom::identity(&h);
        let inv: Vec<El> = h.elements().map(|x| h.inv(x)).collect();
        let inv = GroupHom::new(&h, &h, inv).unwrap();
        MatchedPair::from_semidirect(h, k, &[id, inv])
            .unwrap()
            .build_product()
            .unwrap()
    }

    #[test]
    fn dihedral_centers_match_brute_force() {
        // Z(D_n) is trivial for odd n, {1, r^(n/2)} for even n.
        for n in [3usize, 4, 5, 6] {
            let zs = semidirect_dihedral(n);
            let (fast, brute, same) = centers_agree(&zs);
            assert!(same, "n = {n}");
            assert_eq!(fast.order(), if n % 2 == 0 { 2 } else { 1 });
            let semi = center_semidirect(&zs).unwrap();
            assert_eq!(semi.members(), brute.members());
        }
    }

    #[test]
    fn direct_product_center_is_product_of_centers() {
        let h = FiniteGroup::dihedral(4).unwrap();
        let k = FiniteGroup::cyclic(3).unwrap();
        let zs = MatchedPair::trivial(h, k).build_product().unwrap();
        let (fast, brute, same) = centers_agree(&zs);
        assert!(same);
        assert_eq!(fast.order(), 2 * 3);
        assert_eq!(brute.order(), 6);
    }

    #[test]
    fn abelian_shortcut_agrees() {
        let h = FiniteGroup::cyclic(6).unwrap();
        let k = FiniteGroup::elementary_abelian(2, 2).unwrap();
        let zs = MatchedPair::trivial(h, k).build_product().unwrap();
        let ab = center_abelian(&zs).unwrap();
        assert_eq!(ab.order(), 24);
        assert_eq!(ab.members(), center_via_theorem(&zs).members());
    }

    #[test]
    fn abelian_shortcut_rejects_nonabelian_factors() {
        let h = FiniteGroup::dihedral(3).unwrap();
        let k = FiniteGroup::cyclic(2).unwrap();
        let zs = MatchedPair::trivial(h, k).build_product().unwrap();
        assert!(matches!(center_abelian(&zs), Err(Error::NotAbelianInputs)));
    }

    #[test]
    fn semidirect_shortcut_rejects_two_sided_pairs() {
        // D3 = <s><r> has nontrivial tau.
        let g = FiniteGroup::dihedral(3).unwrap();
        let s = Subgroup::new(&g, vec![0, 3]).unwrap();
        let r = Subgroup::new(&g, vec![0, 1, 2]).unwrap();
        let zs = factorize_internal(&g, &s, &r).unwrap().mp.build_product().unwrap();
        assert!(matches!(
            center_semidirect(&zs),
            Err(Error::DomainMismatch(_))
        ));
        // The theorem still handles it: Z(D3) = 1.
        let (fast, _, same) = centers_agree(&zs);
        assert!(same);
        assert_eq!(fast.order(), 1);
    }

    #[test]
    fn theorem_handles_abelian_two_sided_actions() {
        // Exhaust tiny nontrivial matched pairs through factorizations of
        // D4 to get a few genuinely mixed cases.
        let g = FiniteGroup::dihedral(4).unwrap();
        let subs: Vec<Vec<El>> = vec![
            vec![0, 1, 2, 3],
            vec![0, 4],
            vec![0, 2, 4, 6],
            vec![0, 5],
            vec![0, 2, 5, 7],
            vec![0, 6],
        ];
        let mut tried = 0;
        for hm in &subs {
            for km in &subs {
                let hs = Subgroup::new(&g, hm.clone()).unwrap();
                let ks = Subgroup::new(&g, km.clone()).unwrap();
                let Ok(f) = factorize_internal(&g, &hs, &ks) else {
                    continue;
                };
                let zs = f.mp.build_product().unwrap();
                let (_, _, same) = centers_agree(&zs);
                assert!(same);
                tried += 1;
            }
        }
        assert!(tried >= 4, "expected several factorizations, got {tried}");
    }
}

//! Shared instance corpus for the integration suites: every matched
//! pair the equivalence and soundness tests sweep over.
#![allow(dead_code)]

use std::collections::HashSet;
use zsz_core::p5::P5Instance;
use zsz_core::{El, FiniteGroup, GroupHom, MatchedPair};

/// Groups of order up to `max_order` from the standard catalog:
/// cyclics, the Klein four group, the smallest dihedral.
pub fn small_groups(max_order: usize) -> Vec<FiniteGroup> {
    let mut out = vec![FiniteGroup::trivial()];
    for n in 2..=max_order.min(6) {
        out.push(FiniteGroup::cyclic(n).unwrap());
    }
    if max_order >= 4 {
        out.push(FiniteGroup::elementary_abelian(2, 2).unwrap());
    }
    if max_order >= 6 {
        out.push(FiniteGroup::dihedral(3).unwrap());
    }
    out
}

/// Every direct-product pair over the catalog up to order 6 x 6.
pub fn trivial_pairs() -> Vec<MatchedPair> {
    let gs = small_groups(6);
    let mut out = Vec::new();
    for h in &gs {
        for k in &gs {
            out.push(MatchedPair::trivial(h.clone(), k.clone()));
        }
    }
    out
}

/// Both orientations of the dihedral factorization `D_n = C_n C_2`,
/// for n = 3..6: the rotation subgroup as `H` (sigma inverts, tau
/// trivial) and as `K` (sigma trivial, tau inverts).
pub fn dihedral_models() -> Vec<MatchedPair> {
    let mut out = Vec::new();
    for n in 3..=6usize {
        let cn = FiniteGroup::cyclic(n).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let id = GroupHom::identity(&cn);
        let inv = GroupHom::new(&cn, &cn, cn.elements().map(|x| cn.inv(x)).collect()).unwrap();
        out.push(MatchedPair::from_semidirect(cn.clone(), c2.clone(), &[id, inv]).unwrap());

        // Transpose model: H = C2, K = C_n, k * s = s * k^-1.
        let mut sigma = vec![0 as El; 2 * n];
        let mut tau = vec![0 as El; 2 * n];
        for kk in 0..n {
            sigma[kk * 2] = 0;
            sigma[kk * 2 + 1] = 1;
            tau[kk * 2] = kk as El;
            tau[kk * 2 + 1] = cn.inv(kk as El);
        }
        let mp = MatchedPair::from_tables(c2, cn, sigma, tau).unwrap();
        assert!(mp.is_valid(), "transpose dihedral model n={n} must be valid");
        out.push(mp);
    }
    out
}

/// All permutations of `0..n` fixing `0`.
fn perms_fixing_zero(n: usize) -> Vec<Vec<El>> {
    fn rec(rest: &mut Vec<El>, acc: &mut Vec<El>, out: &mut Vec<Vec<El>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            acc.push(v);
            rec(rest, acc, out);
            acc.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    let mut rest: Vec<El> = (1..n as El).collect();
    rec(&mut rest, &mut vec![0], &mut out);
    out
}

/// Odometer over `slots` positions with `options` choices each.
fn for_each_assignment(slots: usize, options: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; slots];
    loop {
        f(&idx);
        let mut i = 0;
        loop {
            if i == slots {
                return;
            }
            idx[i] += 1;
            if idx[i] < options {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Exhaustive search: every matched pair on factors of order at most 4.
/// The compatibility conditions force each `sigma_k` and `tau_h` to be
/// a permutation fixing the identity, so the search space per factor
/// pair is (perms of H fixing 1)^(|K|-1) x (perms of K fixing 1)^(|H|-1),
/// and full validation filters it down to the genuine matched pairs.
pub fn exhaustive_small_pairs() -> Vec<MatchedPair> {
    let gs = small_groups(4);
    let mut out = Vec::new();
    for h in &gs {
        for k in &gs {
            let (hn, kn) = (h.order(), k.order());
            let perms_h = perms_fixing_zero(hn);
            let perms_k = perms_fixing_zero(kn);
            for_each_assignment(kn - 1, perms_h.len(), |sig_idx| {
                let mut sigma = vec![0 as El; kn * hn];
                for hh in 0..hn {
                    sigma[hh] = hh as El;
                }
                for (slot, &pi) in sig_idx.iter().enumerate() {
                    let kk = slot + 1;
                    sigma[kk * hn..(kk + 1) * hn].copy_from_slice(&perms_h[pi]);
                }
                for_each_assignment(hn - 1, perms_k.len(), |tau_idx| {
                    let mut tau = vec![0 as El; kn * hn];
                    for kk in 0..kn {
                        tau[kk * hn] = kk as El;
                    }
                    for (slot, &pi) in tau_idx.iter().enumerate() {
                        let hh = slot + 1;
                        for kk in 0..kn {
                            tau[kk * hn + hh] = perms_k[pi][kk];
                        }
                    }
                    let mp =
                        MatchedPair::from_tables(h.clone(), k.clone(), sigma.clone(), tau)
                            .expect("in-range tables");
                    if mp.is_valid() {
                        out.push(mp);
                    }
                });
            });
        }
    }
    out
}

pub fn p3_instance() -> P5Instance {
    P5Instance::build(3).expect("p = 3 member builds")
}

fn corpus_key(mp: &MatchedPair) -> Vec<El> {
    let mut key = vec![mp.h().order() as El, mp.k().order() as El];
    key.extend_from_slice(mp.h().table());
    key.extend_from_slice(mp.k().table());
    key.extend_from_slice(mp.sigma_table());
    key.extend_from_slice(mp.tau_table());
    key
}

/// The full deduplicated corpus: trivial pairs up to 6 x 6, both
/// dihedral orientations, the exhaustive order-<=-4 search, and the
/// p = 3 family member.
pub fn full_corpus() -> Vec<MatchedPair> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let all = trivial_pairs()
        .into_iter()
        .chain(dihedral_models())
        .chain(exhaustive_small_pairs())
        .chain(std::iter::once(p3_instance().mp().clone()));
    for mp in all {
        if seen.insert(corpus_key(&mp)) {
            out.push(mp);
        }
    }
    out
}

//! Group homomorphisms and their enumeration.
//!
//! Enumeration works over a greedy generating sequence: assign an image to
//! one generator at a time, extend to the generated subgroup by a
//! precomputed closure plan, and reject on the first conflicting product.
//! Verifying `f(g*x) = f(g)f(x)` for every generator `g` and every `x`
//! certifies full multiplicativity (induct on the word length of the left
//! factor), so certification costs `#gens * |G|` instead of `|G|^2`.

use crate::error::{Error, Result};
use crate::group::{El, FiniteGroup};
use crate::subgroup::{center_bruteforce, Subgroup};

/// A certified homomorphism, stored as its image array. Domain and codomain
/// are identified only by order; callers keep track of which groups these
/// indices live in (the constructors take them explicitly).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupHom {
    dom_order: usize,
    cod_order: usize,
    image: Vec<El>,
}

impl GroupHom {
    /// Certify by the full `|dom|^2` product sweep.
    pub fn new(dom: &FiniteGroup, cod: &FiniteGroup, image: Vec<El>) -> Result<Self> {
        if image.len() != dom.order() {
            return Err(Error::ShapeMismatch {
                expected: format!("image of length {}", dom.order()),
                got: format!("{}", image.len()),
            });
        }
        if let Some(&v) = image.iter().find(|&&v| v as usize >= cod.order()) {
            return Err(Error::IndexOutOfRange {
                index: v as usize,
                order: cod.order(),
            });
        }
        for a in dom.elements() {
            for b in dom.elements() {
                let lhs = image[dom.mul(a, b) as usize];
                let rhs = cod.mul(image[a as usize], image[b as usize]);
                if lhs != rhs {
                    return Err(Error::InvalidParameter(format!(
                        "not multiplicative at ({a},{b})"
                    )));
                }
            }
        }
        Ok(GroupHom {
            dom_order: dom.order(),
            cod_order: cod.order(),
            image,
        })
    }

    /// Certify via generators: `f(1) = 1` and `f(g*x) = f(g)f(x)` for all
    /// generators `g` and all `x`. Equivalent to the full sweep.
    pub fn new_via_generators(dom: &FiniteGroup, cod: &FiniteGroup, image: Vec<El>) -> Result<Self> {
        if image.len() != dom.order() || image.iter().any(|&v| v as usize >= cod.order()) {
            return Err(Error::ShapeMismatch {
                expected: format!("image of length {} into order {}", dom.order(), cod.order()),
                got: format!("length {}", image.len()),
            });
        }
        if image[0] != 0 {
            return Err(Error::InvalidParameter("f(1) != 1".into()));
        }
        let gens = generating_sequence(dom);
        for &g in &gens {
            for x in dom.elements() {
                if image[dom.mul(g, x) as usize] != cod.mul(image[g as usize], image[x as usize]) {
                    return Err(Error::InvalidParameter(format!(
                        "not multiplicative at ({g},{x})"
                    )));
                }
            }
        }
        Ok(GroupHom {
            dom_order: dom.order(),
            cod_order: cod.order(),
            image,
        })
    }

    /// For maps produced by a closure that already established
    /// multiplicativity; debug builds re-verify.
    pub(crate) fn from_parts_unchecked(
        dom: &FiniteGroup,
        cod: &FiniteGroup,
        image: Vec<El>,
    ) -> Self {
        debug_assert!(
            Self::new_via_generators(dom, cod, image.clone()).is_ok(),
            "unchecked hom is not a hom"
        );
        GroupHom {
            dom_order: dom.order(),
            cod_order: cod.order(),
            image,
        }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            dom_order: g.order(),
            cod_order: g.order(),
            image: g.elements().collect(),
        }
    }

    #[inline]
    pub fn apply(&self, e: El) -> El {
        self.image[e as usize]
    }

    pub fn image(&self) -> &[El] {
        &self.image
    }

    pub fn dom_order(&self) -> usize {
        self.dom_order
    }

    pub fn cod_order(&self) -> usize {
        self.cod_order
    }

    pub fn is_bijective(&self) -> bool {
        if self.dom_order != self.cod_order {
            return false;
        }
        let mut seen = vec![false; self.cod_order];
        self.image.iter().all(|&v| {
            let hit = seen[v as usize];
            seen[v as usize] = true;
            !hit
        })
    }

    /// `self` after `first` (i.e. `self ∘ first`).
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.cod_order != self.dom_order {
            return Err(Error::DomainMismatch(format!(
                "compose: inner codomain {} vs outer domain {}",
                first.cod_order, self.dom_order
            )));
        }
        let image = first.image.iter().map(|&v| self.image[v as usize]).collect();
        Ok(GroupHom {
            dom_order: first.dom_order,
            cod_order: self.cod_order,
            image,
        })
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverted(&self) -> Result<GroupHom> {
        if !self.is_bijective() {
            return Err(Error::InvalidParameter("hom is not bijective".into()));
        }
        let mut image = vec![0 as El; self.dom_order];
        for (x, &v) in self.image.iter().enumerate() {
            image[v as usize] = x as El;
        }
        Ok(GroupHom {
            dom_order: self.cod_order,
            cod_order: self.dom_order,
            image,
        })
    }
}

/// Conjugation `x -> g x g^-1` as a certified automorphism.
pub fn inner_automorphism(g: &FiniteGroup, by: El) -> GroupHom {
    let image: Vec<El> = g.elements().map(|x| g.conj(by, x)).collect();
    GroupHom::from_parts_unchecked(g, g, image)
}

/// Greedy generating sequence: repeatedly adjoin the least element outside
/// the subgroup generated so far. Deterministic; empty for the trivial
/// group.
pub fn generating_sequence(g: &FiniteGroup) -> Vec<El> {
    let mut gens: Vec<El> = Vec::new();
    let mut have = Subgroup::trivial();
    while have.order() < g.order() {
        let next = g
            .elements()
            .find(|&e| !have.contains(e))
            .expect("proper subgroup misses an element");
        gens.push(next);
        have = Subgroup::generated(g, &gens);
    }
    gens
}

/// One step of a closure plan. `slot` indexes into the generator sequence;
/// `target` is always `gens[slot] * right` (for `Define`) or
/// `gens[slot] * x` (for `Check`), precomputed at plan time.
#[derive(Debug, Clone, Copy)]
pub(crate) enum PlanOp {
    /// Image of `target` becomes `img(gens[slot]) * img(right)`.
    Define { target: El, slot: u16, right: El },
    /// Verify `img(target) == img(gens[slot]) * img(x)`.
    Check { target: El, slot: u16, x: El },
}

#[derive(Debug, Clone)]
pub(crate) struct LevelPlan {
    pub gen: El,
    pub gen_order: usize,
    /// Elements first reached at this level (for backtracking).
    pub new_elems: Vec<El>,
    pub ops: Vec<PlanOp>,
}

/// Precomputed extension schedule along a generating sequence. Checks are
/// interleaved as early as their operands exist, so bad candidates die
/// quickly.
#[derive(Debug, Clone)]
pub(crate) struct ClosurePlan {
    pub gens: Vec<El>,
    pub levels: Vec<LevelPlan>,
}

impl ClosurePlan {
    pub fn for_group(g: &FiniteGroup) -> Self {
        let gens = generating_sequence(g);
        Self::build(g.order(), |a, b| g.mul(a, b), |e| g.order_of(e), &gens)
    }

    /// Generic over the multiplication so the same machinery serves the
    /// opposite group (right extensions) as well.
    pub fn build(
        order: usize,
        mul: impl Fn(El, El) -> El,
        order_of: impl Fn(El) -> usize,
        gens: &[El],
    ) -> Self {
        // level_of[e]: 1-based level at which e joins; identity is level 0.
        let mut level_of = vec![usize::MAX; order];
        level_of[0] = 0;
        // Definition order across levels; shared prefix for later levels.
        let mut seq: Vec<El> = vec![0];
        let mut levels = Vec::with_capacity(gens.len());

        for (i, &gen) in gens.iter().enumerate() {
            let level = i + 1;
            let mut new_elems = Vec::new();
            let mut defines = Vec::new();
            // Step at which an element's image becomes available within
            // this level; 0 = already known (earlier level or the newly
            // assigned generator itself).
            let mut def_step = vec![0usize; order];

            debug_assert_eq!(level_of[gen as usize], usize::MAX, "greedy gens are new");
            level_of[gen as usize] = level;
            new_elems.push(gen);
            seq.push(gen);

            let mut ptr = 0;
            while ptr < seq.len() {
                let e = seq[ptr];
                ptr += 1;
                for slot in 0..level {
                    let t = mul(gens[slot], e);
                    if level_of[t as usize] == usize::MAX {
                        level_of[t as usize] = level;
                        def_step[t as usize] = defines.len() + 1;
                        defines.push(PlanOp::Define {
                            target: t,
                            slot: slot as u16,
                            right: e,
                        });
                        new_elems.push(t);
                        seq.push(t);
                    }
                }
            }

            // Checks not already covered at an earlier level: either the
            // generator is new (slot == i) or the argument is.
            let mut checks: Vec<(usize, PlanOp)> = Vec::new();
            for slot in 0..level {
                for &x in seq.iter() {
                    if slot + 1 != level && level_of[x as usize] != level {
                        continue;
                    }
                    let t = mul(gens[slot], x);
                    let ready = def_step[x as usize].max(def_step[t as usize]);
                    checks.push((
                        ready,
                        PlanOp::Check {
                            target: t,
                            slot: slot as u16,
                            x,
                        },
                    ));
                }
            }
            checks.sort_by_key(|&(ready, _)| ready);

            // Interleave: run each check as soon as its operands exist.
            let mut ops = Vec::with_capacity(defines.len() + checks.len());
            let mut ci = 0;
            while ci < checks.len() && checks[ci].0 == 0 {
                ops.push(checks[ci].1);
                ci += 1;
            }
            for (di, d) in defines.iter().enumerate() {
                ops.push(*d);
                while ci < checks.len() && checks[ci].0 == di + 1 {
                    ops.push(checks[ci].1);
                    ci += 1;
                }
            }
            debug_assert_eq!(ci, checks.len());

            levels.push(LevelPlan {
                gen,
                gen_order: order_of(gen),
                new_elems,
                ops,
            });
        }
        debug_assert!(level_of.iter().all(|&l| l != usize::MAX), "gens generate");
        ClosurePlan {
            gens: gens.to_vec(),
            levels,
        }
    }
}

const UNSET: El = El::MAX;

/// Enumerate all homomorphisms `dom -> cod`, optionally with every image
/// value restricted to a subgroup of the codomain. Results come back
/// sorted by image array.
pub fn enumerate_homs(
    dom: &FiniteGroup,
    cod: &FiniteGroup,
    restrict_to: Option<&Subgroup>,
) -> Vec<GroupHom> {
    let mut out = Vec::new();
    enumerate_homs_with(dom, cod, restrict_to, |img| {
        out.push(GroupHom::from_parts_unchecked(dom, cod, img.to_vec()));
    });
    out.sort_by(|a, b| a.image.cmp(&b.image));
    out
}

/// Callback-based core of `enumerate_homs`; the image buffer passed to the
/// callback is reused, so callers copy what they keep.
pub(crate) fn enumerate_homs_with(
    dom: &FiniteGroup,
    cod: &FiniteGroup,
    restrict_to: Option<&Subgroup>,
    mut emit: impl FnMut(&[El]),
) {
    let allowed: Vec<El> = match restrict_to {
        Some(s) => s.members().to_vec(),
        None => cod.elements().collect(),
    };
    let plan = ClosurePlan::for_group(dom);
    let mut images = vec![UNSET; dom.order()];
    images[0] = 0;
    descend(&plan, 0, cod, &allowed, &mut images, &mut emit);
}

fn descend(
    plan: &ClosurePlan,
    level: usize,
    cod: &FiniteGroup,
    allowed: &[El],
    images: &mut Vec<El>,
    emit: &mut impl FnMut(&[El]),
) {
    if level == plan.levels.len() {
        emit(images);
        return;
    }
    let lp = &plan.levels[level];
    for &cand in allowed {
        // Image order must divide the generator's order.
        if lp.gen_order % cod.order_of(cand) != 0 {
            continue;
        }
        images[lp.gen as usize] = cand;
        if run_level(lp, &plan.gens, |a, b| cod.mul(a, b), images) {
            descend(plan, level + 1, cod, allowed, images, emit);
        }
        for &e in &lp.new_elems {
            images[e as usize] = UNSET;
        }
    }
}

/// Execute one level of a closure plan over the current partial image;
/// the image of this level's generator must already be assigned. Returns
/// false on the first failed check. `mul` is the codomain product.
pub(crate) fn run_level(
    lp: &LevelPlan,
    gens: &[El],
    mul: impl Fn(El, El) -> El,
    images: &mut [El],
) -> bool {
    debug_assert_ne!(images[lp.gen as usize], UNSET);
    for op in &lp.ops {
        match *op {
            PlanOp::Define { target, slot, right } => {
                debug_assert_ne!(images[right as usize], UNSET);
                images[target as usize] = mul(
                    images[gens[slot as usize] as usize],
                    images[right as usize],
                );
            }
            PlanOp::Check { target, slot, x } => {
                if images[target as usize]
                    != mul(images[gens[slot as usize] as usize], images[x as usize])
                {
                    return false;
                }
            }
        }
    }
    true
}

/// All central automorphisms of `g`: one `theta_f(x) = x * f(x)` for each
/// homomorphism `f: g -> Z(g)` that happens to make `theta_f` bijective.
/// Sorted by image array.
pub fn central_automorphisms_oracle(g: &FiniteGroup) -> Vec<GroupHom> {
    let z = center_bruteforce(g);
    let mut out: Vec<GroupHom> = Vec::new();
    let mut theta = vec![0 as El; g.order()];
    let mut seen = vec![false; g.order()];
    enumerate_homs_with(g, g, Some(&z), |f_img| {
        seen.iter_mut().for_each(|s| *s = false);
        let mut bijective = true;
        for x in 0..g.order() {
            let t = g.mul(x as El, f_img[x]);
            theta[x] = t;
            if seen[t as usize] {
                bijective = false;
                break;
            }
            seen[t as usize] = true;
        }
        if bijective {
            out.push(GroupHom::from_parts_unchecked(g, g, theta.clone()));
        }
    });
    out.sort_by(|a, b| a.image.cmp(&b.image));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: try all |V|^|U| maps, keep the multiplicative
    /// ones. Only usable for tiny sizes; that is the point.
    fn brute_force_homs(dom: &FiniteGroup, cod: &FiniteGroup) -> Vec<Vec<El>> {
        let (n, m) = (dom.order(), cod.order());
        assert!(m.pow(n as u32) <= 2_000_000, "brute force domain too big");
        let mut homs = Vec::new();
        let mut img = vec![0 as El; n];
        'outer: loop {
            let multiplicative = (0..n).all(|a| {
                (0..n).all(|b| {
                    img[dom.mul(a as El, b as El) as usize]
                        == cod.mul(img[a], img[b])
                })
            });
            if multiplicative {
                homs.push(img.clone());
            }
            // Odometer over the image array.
            for i in 0..n {
                img[i] = ((img[i] as usize + 1) % m) as El;
                if img[i] != 0 {
                    continue 'outer;
                }
            }
            break;
        }
        homs.sort();
        homs
    }

    fn enumerated_images(dom: &FiniteGroup, cod: &FiniteGroup) -> Vec<Vec<El>> {
        enumerate_homs(dom, cod, None)
            .into_iter()
            .map(|h| h.image().to_vec())
            .collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let e9 = FiniteGroup::elementary_abelian(3, 2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let d3 = FiniteGroup::dihedral(3).unwrap();

        let cases: Vec<(&FiniteGroup, &FiniteGroup)> = vec![
            (&c6, &c2),
            (&c4, &c6),
            (&e9, &c3),
            (&d3, &c2),
            (&d3, &d3),
            (&c2, &d3),
        ];
        for (dom, cod) in cases {
            let brute = brute_force_homs(dom, cod);
            let fast = enumerated_images(dom, cod);
            assert_eq!(
                brute,
                fast,
                "hom sets differ for {} -> {}",
                dom.name(),
                cod.name()
            );
        }
        // Known counts as an extra guard on the oracle itself.
        assert_eq!(brute_force_homs(&c6, &c2).len(), 2);
        assert_eq!(brute_force_homs(&e9, &c3).len(), 9);
        assert_eq!(brute_force_homs(&d3, &d3).len(), 10);
    }

    #[test]
    fn restricted_enumeration() {
        // Homs D3 -> D3 with image inside the rotation subgroup: the
        // rotations are C3 and D3 has no normal subgroup of index 3, so
        // only the trivial map survives.
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let rots = Subgroup::generated(&d3, &[1]);
        let homs = enumerate_homs(&d3, &d3, Some(&rots));
        assert_eq!(homs.len(), 1);
        assert!(homs[0].image().iter().all(|&v| v == 0));
    }

    #[test]
    fn certification_rejects_non_homs() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert!(GroupHom::new(&c4, &c4, vec![0, 1, 2, 0]).is_err());
        assert!(GroupHom::new_via_generators(&c4, &c4, vec![0, 1, 2, 0]).is_err());
        assert!(GroupHom::new(&c4, &c4, vec![0, 3, 2, 1]).is_ok());
        assert!(GroupHom::new_via_generators(&c4, &c4, vec![0, 3, 2, 1]).is_ok());
    }

    #[test]
    fn compose_and_invert() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let neg = GroupHom::new(&c6, &c6, vec![0, 5, 4, 3, 2, 1]).unwrap();
        let id = GroupHom::identity(&c6);
        assert_eq!(neg.compose(&neg).unwrap(), id);
        assert_eq!(neg.inverted().unwrap(), neg);
        let sq = GroupHom::new(&c6, &c6, vec![0, 2, 4, 0, 2, 4]).unwrap();
        assert!(sq.inverted().is_err());
    }

    #[test]
    fn generating_sequences_are_minimal_feeling() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(generating_sequence(&c6), vec![1]);
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(generating_sequence(&d4).len(), 2);
        let e8 = FiniteGroup::elementary_abelian(2, 3).unwrap();
        assert_eq!(generating_sequence(&e8).len(), 3);
        let t = FiniteGroup::trivial();
        assert!(generating_sequence(&t).is_empty());
    }

    #[test]
    fn inner_automorphisms_of_d4() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let mut inner: Vec<Vec<El>> = d4
            .elements()
            .map(|g| inner_automorphism(&d4, g).image().to_vec())
            .collect();
        inner.sort();
        inner.dedup();
        // Inn(D4) = D4 / Z(D4) has order 4.
        assert_eq!(inner.len(), 4);
    }

    /// Permutation-level oracle for central automorphisms: filter all
    /// bijections fixing the identity. Factorial blowup, tiny groups only.
    fn brute_force_central_auts(g: &FiniteGroup) -> Vec<Vec<El>> {
        let n = g.order();
        assert!(n <= 8);
        let z = center_bruteforce(g);
        let zmask = z.mask(n);
        let mut out = Vec::new();
        let mut perm: Vec<El> = (0..n as El).collect();
        permute_rest(&mut perm, 1, &mut |p: &[El]| {
            let auto = (0..n).all(|a| {
                (0..n).all(|b| {
                    p[g.mul(a as El, b as El) as usize] == g.mul(p[a], p[b])
                })
            });
            if !auto {
                return;
            }
            let central = (0..n as El)
                .all(|x| zmask[g.mul(g.inv(x), p[x as usize]) as usize]);
            if central {
                out.push(p.to_vec());
            }
        });
        out.sort();
        out
    }

    fn permute_rest(perm: &mut Vec<El>, i: usize, visit: &mut impl FnMut(&[El])) {
        if i == perm.len() {
            visit(perm);
            return;
        }
        for j in i..perm.len() {
            perm.swap(i, j);
            permute_rest(perm, i + 1, visit);
            perm.swap(i, j);
        }
    }

    #[test]
    fn oracle_matches_permutation_search() {
        for g in [
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::dihedral(3).unwrap(),
            FiniteGroup::elementary_abelian(2, 3).unwrap(),
            FiniteGroup::cyclic(8).unwrap(),
        ] {
            let brute = brute_force_central_auts(&g);
            let fast: Vec<Vec<El>> = central_automorphisms_oracle(&g)
                .into_iter()
                .map(|h| h.image().to_vec())
                .collect();
            assert_eq!(brute, fast, "central aut sets differ for {}", g.name());
        }
    }

    #[test]
    fn oracle_known_counts() {
        // |Aut_c(D4)| = 4, |Aut_c(C6)| = |Aut(C6)| = 2, trivial center of
        // D3 leaves only the identity.
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(central_automorphisms_oracle(&d4).len(), 4);
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(central_automorphisms_oracle(&c6).len(), 2);
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let only = central_automorphisms_oracle(&d3);
        assert_eq!(only.len(), 1);
        assert_eq!(only[0], GroupHom::identity(&d3));
    }

    #[test]
    fn theta_f_is_multiplicative_for_every_central_valued_hom() {
        for g in [
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::direct_product(
                &FiniteGroup::cyclic(2).unwrap(),
                &FiniteGroup::dihedral(3).unwrap(),
            )
            .unwrap(),
        ] {
            let z = center_bruteforce(&g);
            for f in enumerate_homs(&g, &g, Some(&z)) {
                let theta: Vec<El> = g.elements().map(|x| g.mul(x, f.apply(x))).collect();
                // Full quadratic certification, not the generator shortcut.
                assert!(
                    GroupHom::new(&g, &g, theta).is_ok(),
                    "theta_f not multiplicative on {}",
                    g.name()
                );
            }
        }
    }

    #[test]
    fn theta_composition_identity() {
        // theta_f . theta_f' = theta_f'' with f''(x) = f'(x) * f(x * f'(x)).
        let g = FiniteGroup::dihedral(4).unwrap();
        let z = center_bruteforce(&g);
        let fs = enumerate_homs(&g, &g, Some(&z));
        for f in &fs {
            for f2 in &fs {
                let theta = |fi: &GroupHom, x: El| g.mul(x, fi.apply(x));
                let composed: Vec<El> =
                    g.elements().map(|x| theta(f, theta(f2, x))).collect();
                let f_doubled: Vec<El> = g
                    .elements()
                    .map(|x| {
                        let fx = g.mul(f2.apply(x), f.apply(g.mul(x, f2.apply(x))));
                        g.mul(x, fx)
                    })
                    .collect();
                assert_eq!(composed, f_doubled);
            }
        }
    }
}

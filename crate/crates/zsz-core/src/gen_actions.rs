//! Reconstructing full action tables from rules on generators.
//!
//! A matched pair is determined by how the chosen generators of `H` and
//! `K` act on each other: `sigma_{kg}(hg)` and `tau_{hg}(kg)` for each
//! generator pair. Both actions propagate jointly through the crossing
//! cell `cross(k, h) = (sigma_k(h), tau_h(k))`, which rewrites `k * h`
//! as `sigma_k(h) * tau_h(k)`. Two extension moves follow from the
//! compatibility laws:
//!
//! ```text
//! R1  cross(k, h*hg)  = (x1 * x2, y2)   where (x1, y1) = cross(k, h),
//!                                             (x2, y2) = cross(y1, hg)
//! R2  cross(k*kg, h)  = (x2, y2 * y1)   where (x1, y1) = cross(kg, h),
//!                                             (x2, y2) = cross(k, x1)
//! ```
//!
//! Saturating from the identity cells and the generator rules either
//! completes the grid, stalls (rules underdetermine a cell, e.g. the
//! generators do not generate), or derives two different values for one
//! cell (rules are inconsistent). Completed tables are still validated
//! in full, since saturation alone does not certify C1-C6.

use crate::error::{Error, Result};
use crate::group::{El, FiniteGroup};
use crate::matched_pair::MatchedPair;
use std::collections::BTreeMap;

const UNSET: El = El::MAX;

/// Action rules on generator pairs. Pairs without an explicit rule
/// default to the identity action: `sigma_{kg}(hg) = hg`,
/// `tau_{hg}(kg) = kg`.
#[derive(Debug, Clone, Default)]
pub struct GeneratorActionRules {
    h_gens: Vec<El>,
    k_gens: Vec<El>,
    sigma: BTreeMap<(El, El), El>,
    tau: BTreeMap<(El, El), El>,
}

impl GeneratorActionRules {
    pub fn new(h_gens: Vec<El>, k_gens: Vec<El>) -> Self {
        GeneratorActionRules {
            h_gens,
            k_gens,
            sigma: BTreeMap::new(),
            tau: BTreeMap::new(),
        }
    }

    /// Declare `sigma_{k_gen}(h_gen) = image`.
    pub fn sigma_rule(mut self, k_gen: El, h_gen: El, image: El) -> Self {
        self.sigma.insert((k_gen, h_gen), image);
        self
    }

    /// Declare `tau_{h_gen}(k_gen) = image`.
    pub fn tau_rule(mut self, h_gen: El, k_gen: El, image: El) -> Self {
        self.tau.insert((k_gen, h_gen), image);
        self
    }

    pub fn h_gens(&self) -> &[El] {
        &self.h_gens
    }

    pub fn k_gens(&self) -> &[El] {
        &self.k_gens
    }

    fn check_ranges(&self, h: &FiniteGroup, k: &FiniteGroup) -> Result<()> {
        let in_h = |e: El| (e as usize) < h.order();
        let in_k = |e: El| (e as usize) < k.order();
        if let Some(&e) = self.h_gens.iter().find(|&&e| !in_h(e)) {
            return Err(Error::IndexOutOfRange {
                index: e as usize,
                order: h.order(),
            });
        }
        if let Some(&e) = self.k_gens.iter().find(|&&e| !in_k(e)) {
            return Err(Error::IndexOutOfRange {
                index: e as usize,
                order: k.order(),
            });
        }
        for (&(kg, hg), &v) in &self.sigma {
            if !self.k_gens.contains(&kg) || !self.h_gens.contains(&hg) {
                return Err(Error::InvalidParameter(format!(
                    "sigma rule on ({kg}, {hg}), which is not a listed generator pair"
                )));
            }
            if !in_h(v) {
                return Err(Error::IndexOutOfRange {
                    index: v as usize,
                    order: h.order(),
                });
            }
        }
        for (&(kg, hg), &v) in &self.tau {
            if !self.k_gens.contains(&kg) || !self.h_gens.contains(&hg) {
                return Err(Error::InvalidParameter(format!(
                    "tau rule on ({hg}, {kg}), which is not a listed generator pair"
                )));
            }
            if !in_k(v) {
                return Err(Error::IndexOutOfRange {
                    index: v as usize,
                    order: k.order(),
                });
            }
        }
        Ok(())
    }
}

struct Grid {
    hn: usize,
    cells: Vec<(El, El)>,
}

impl Grid {
    fn get(&self, k: El, h: El) -> Option<(El, El)> {
        let c = self.cells[k as usize * self.hn + h as usize];
        (c.0 != UNSET).then_some(c)
    }

    /// Record a cell value; a disagreement with an earlier derivation is
    /// an inconsistency. Returns whether the grid changed.
    fn set(&mut self, k: El, h: El, v: (El, El)) -> Result<bool> {
        let slot = &mut self.cells[k as usize * self.hn + h as usize];
        if slot.0 == UNSET {
            *slot = v;
            Ok(true)
        } else if *slot == v {
            Ok(false)
        } else {
            Err(Error::InconsistentRules(format!(
                "cell (k={k}, h={h}) derives to ({}, {}) but was already ({}, {})",
                v.0, v.1, slot.0, slot.1
            )))
        }
    }
}

/// Saturate the crossing grid from generator rules and read off the
/// matched pair. Errors: [`Error::InconsistentRules`] when two
/// derivations of a cell disagree or the completed tables fail
/// validation, [`Error::IncompleteRules`] naming the least
/// `(k, h)` cell the rules never determine.
pub fn extend_generator_actions(
    h: &FiniteGroup,
    k: &FiniteGroup,
    rules: &GeneratorActionRules,
) -> Result<MatchedPair> {
    rules.check_ranges(h, k)?;
    let (hn, kn) = (h.order(), k.order());
    let mut grid = Grid {
        hn,
        cells: vec![(UNSET, UNSET); hn * kn],
    };

    // Identity row and column: cross(1, h) = (h, 1), cross(k, 1) = (1, k).
    for hh in h.elements() {
        grid.set(0, hh, (hh, 0))?;
    }
    for kk in k.elements() {
        grid.set(kk, 0, (0, kk))?;
    }
    // Generator cells, defaulting to the identity action.
    for &kg in &rules.k_gens {
        for &hg in &rules.h_gens {
            let s = rules.sigma.get(&(kg, hg)).copied().unwrap_or(hg);
            let t = rules.tau.get(&(kg, hg)).copied().unwrap_or(kg);
            grid.set(kg, hg, (s, t))?;
        }
    }

    // Fixpoint sweeps of R1 and R2.
    let mut changed = true;
    while changed {
        changed = false;
        // R1: extend along H. cross(k, h*hg) from cross(k, h), cross(y1, hg).
        for kk in k.elements() {
            for hh in h.elements() {
                let Some((x1, y1)) = grid.get(kk, hh) else {
                    continue;
                };
                for &hg in &rules.h_gens {
                    if let Some((x2, y2)) = grid.get(y1, hg) {
                        changed |= grid.set(kk, h.mul(hh, hg), (h.mul(x1, x2), y2))?;
                    }
                }
            }
        }
        // R2: extend along K. cross(k*kg, h) from cross(kg, h), cross(k, x1).
        for &kg in &rules.k_gens {
            for hh in h.elements() {
                let Some((x1, y1)) = grid.get(kg, hh) else {
                    continue;
                };
                for kk in k.elements() {
                    if let Some((x2, y2)) = grid.get(kk, x1) {
                        changed |= grid.set(k.mul(kk, kg), hh, (x2, k.mul(y2, y1)))?;
                    }
                }
            }
        }
    }

    // Everything determined?
    for kk in k.elements() {
        for hh in h.elements() {
            if grid.get(kk, hh).is_none() {
                return Err(Error::IncompleteRules {
                    k: kk as usize,
                    h: hh as usize,
                });
            }
        }
    }

    let mut sigma = vec![0 as El; hn * kn];
    let mut tau = vec![0 as El; hn * kn];
    for kk in k.elements() {
        for hh in h.elements() {
            let (s, t) = grid.get(kk, hh).unwrap();
            sigma[kk as usize * hn + hh as usize] = s;
            tau[kk as usize * hn + hh as usize] = t;
        }
    }
    let mp = MatchedPair::from_tables(h.clone(), k.clone(), sigma, tau)?;
    let report = mp.validate();
    if !report.is_valid() {
        return Err(Error::InconsistentRules(format!(
            "completed tables violate {}",
            report
                .failed_names()
                .join(", ")
        )));
    }
    Ok(mp)
}

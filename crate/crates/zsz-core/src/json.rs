//! Serialization schema for the on-disk JSON formats.
//!
//! Multiplication and action tables travel as nested row arrays (outer
//! index = left factor, or the `K` element for action tables), which
//! diff cleanly and are easy to produce from other tools. Every
//! `to_*` conversion funnels through the crate's validating
//! constructors, so a parsed file is never trusted beyond its shape:
//! a group table must pass the full group check, a matched pair its
//! compatibility conditions where the caller asks for them, a matrix
//! the whole condition battery.

use crate::central_aut::CentralAutMatrix;
use crate::error::{Error, Result};
use crate::group::{El, FiniteGroup};
use crate::hom::GroupHom;
use crate::matched_pair::MatchedPair;
use serde::{Deserialize, Serialize};

/// A finite group as its multiplication table, `table[a][b] = a * b`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDto {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<El>>,
}

impl GroupDto {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupDto {
            name: g.name().to_string(),
            order: g.order(),
            table: g.table().chunks(g.order()).map(|r| r.to_vec()).collect(),
        }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        let flat = flatten_rows(&self.table, self.order, self.order, "table")?;
        FiniteGroup::from_flat(self.name.clone(), self.order, flat)
    }
}

/// A matched pair: both factors plus the two action tables, each
/// `|K|` rows of `|H|` entries — `sigma[k][h]` and `tau[k][h]` (note
/// that the `tau` rows are indexed by the `K` element even though the
/// map is `tau_h(k)`; the two tables share one grid layout).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatchedPairDto {
    pub h: GroupDto,
    pub k: GroupDto,
    pub sigma: Vec<Vec<El>>,
    pub tau: Vec<Vec<El>>,
}

impl MatchedPairDto {
    pub fn from_pair(mp: &MatchedPair) -> Self {
        let hn = mp.h().order();
        let chunk = |t: &[El]| t.chunks(hn).map(|r| r.to_vec()).collect();
        MatchedPairDto {
            h: GroupDto::from_group(mp.h()),
            k: GroupDto::from_group(mp.k()),
            sigma: chunk(mp.sigma_table()),
            tau: chunk(mp.tau_table()),
        }
    }

    /// Rebuild the pair. Shape problems and invalid group tables error
    /// here; whether the actions satisfy the compatibility conditions
    /// is the caller's question (ask `validate()` on the result).
    pub fn to_pair(&self) -> Result<MatchedPair> {
        let h = self.h.to_group()?;
        let k = self.k.to_group()?;
        let sigma = flatten_rows(&self.sigma, k.order(), h.order(), "sigma")?;
        let tau = flatten_rows(&self.tau, k.order(), h.order(), "tau")?;
        MatchedPair::from_tables(h, k, sigma, tau)
    }
}

/// The four blocks of a central-automorphism matrix, as image arrays
/// over the element indices of `H` (`alpha`, `gamma`) and `K` (`beta`,
/// `delta`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDto {
    pub alpha: Vec<El>,
    pub beta: Vec<El>,
    pub gamma: Vec<El>,
    pub delta: Vec<El>,
}

impl MatrixDto {
    pub fn from_matrix(m: &CentralAutMatrix) -> Self {
        MatrixDto {
            alpha: m.alpha().to_vec(),
            beta: m.beta().to_vec(),
            gamma: m.gamma().to_vec(),
            delta: m.delta().to_vec(),
        }
    }

    /// Re-certify against the pair; a file that fails any condition is
    /// rejected with the failing condition names.
    pub fn to_matrix(&self, mp: &MatchedPair) -> Result<CentralAutMatrix> {
        CentralAutMatrix::new(
            mp,
            self.alpha.clone(),
            self.beta.clone(),
            self.gamma.clone(),
            self.delta.clone(),
        )
    }
}

/// An automorphism of the product group as a plain image array over
/// pair indices `h * |K| + k`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaDto {
    pub image: Vec<El>,
}

impl ThetaDto {
    pub fn from_theta(t: &GroupHom) -> Self {
        ThetaDto {
            image: t.image().to_vec(),
        }
    }

    pub fn to_theta(&self, g: &FiniteGroup) -> Result<GroupHom> {
        GroupHom::new(g, g, self.image.clone())
    }
}

fn flatten_rows(rows: &[Vec<El>], want_rows: usize, want_cols: usize, what: &str) -> Result<Vec<El>> {
    if rows.len() != want_rows {
        return Err(Error::ShapeMismatch {
            expected: format!("{want_rows} {what} rows"),
            got: format!("{}", rows.len()),
        });
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != want_cols) {
        return Err(Error::ShapeMismatch {
            expected: format!("{want_cols} entries per {what} row"),
            got: format!("{} in row {i}", r.len()),
        });
    }
    Ok(rows.iter().flatten().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_round_trips_through_json() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let dto = GroupDto::from_group(&g);
        let text = serde_json::to_string(&dto).unwrap();
        let back: GroupDto = serde_json::from_str(&text).unwrap();
        let g2 = back.to_group().unwrap();
        assert_eq!(g.table(), g2.table());
        assert_eq!(g.name(), g2.name());
    }

    #[test]
    fn pair_round_trips_and_revalidates() {
        let h = FiniteGroup::cyclic(4).unwrap();
        let k = FiniteGroup::cyclic(2).unwrap();
        let id = GroupHom::identity(&h);
        let inv = GroupHom::new(&h, &h, h.elements().map(|x| h.inv(x)).collect()).unwrap();
        let mp = MatchedPair::from_semidirect(h, k, &[id, inv]).unwrap();
        let dto = MatchedPairDto::from_pair(&mp);
        let text = serde_json::to_string_pretty(&dto).unwrap();
        let back: MatchedPairDto = serde_json::from_str(&text).unwrap();
        let mp2 = back.to_pair().unwrap();
        assert_eq!(&mp2, &mp);
        assert!(mp2.validate().is_valid());
    }

    #[test]
    fn bad_shapes_are_rejected() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let mut dto = GroupDto::from_group(&g);
        dto.table[1].pop();
        assert!(matches!(dto.to_group(), Err(Error::ShapeMismatch { .. })));
        let mut dto = GroupDto::from_group(&g);
        dto.table.pop();
        assert!(matches!(dto.to_group(), Err(Error::ShapeMismatch { .. })));
        // A latin-square violation survives shape checks but not the
        // group check.
        let mut dto = GroupDto::from_group(&g);
        dto.table[2][2] = 0;
        assert!(matches!(dto.to_group(), Err(Error::NotAGroup { .. })));
    }

    #[test]
    fn corrupt_matrix_file_is_rejected() {
        let mp = MatchedPair::trivial(
            FiniteGroup::cyclic(2).unwrap(),
            FiniteGroup::cyclic(3).unwrap(),
        );
        let good = MatrixDto {
            alpha: vec![0, 1],
            beta: vec![0, 0, 0],
            gamma: vec![0, 0],
            delta: vec![0, 1, 2],
        };
        assert!(good.to_matrix(&mp).is_ok());
        let bad = MatrixDto {
            alpha: vec![0, 1],
            beta: vec![0, 0, 0],
            gamma: vec![0, 0],
            delta: vec![0, 2, 2],
        };
        assert!(bad.to_matrix(&mp).is_err());
    }
}

//! Composite Fock bases.
//!
//! A basis is an ordered product of sectors. States are enumerated
//! lexicographically with the first declared sector most significant, so the
//! last sector has stride one.

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Default cap on the total dimension of a basis.
pub const DEFAULT_DIM_CAP: usize = 10_000_000;

/// What a single tensor factor of the basis describes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SectorKind {
    /// Island charge eigenvalues `min..=max`.
    Charge { min: i32, max: i32 },
    /// A single fermionic mode (occupancy 0 or 1).
    Fermion,
    /// Boson mode truncated at `n_max` quanta.
    Boson { n_max: usize },
}

impl SectorKind {
    pub fn dim(&self) -> usize {
        match *self {
            SectorKind::Charge { min, max } => (max - min + 1) as usize,
            SectorKind::Fermion => 2,
            SectorKind::Boson { n_max } => n_max + 1,
        }
    }

    /// Physical label of local state `local`.
    fn label(&self, local: usize) -> i32 {
        match *self {
            SectorKind::Charge { min, .. } => min + local as i32,
            _ => local as i32,
        }
    }

    fn local_index(&self, label: i32) -> Option<usize> {
        let idx = match *self {
            SectorKind::Charge { min, .. } => label - min,
            _ => label,
        };
        (idx >= 0 && (idx as usize) < self.dim()).then_some(idx as usize)
    }
}

/// A named tensor factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sector {
    pub name: String,
    #[serde(flatten)]
    pub kind: SectorKind,
}

impl Sector {
    pub fn charge(name: impl Into<String>, min: i32, max: i32) -> Self {
        Self { name: name.into(), kind: SectorKind::Charge { min, max } }
    }

    pub fn fermion(name: impl Into<String>) -> Self {
        Self { name: name.into(), kind: SectorKind::Fermion }
    }

    pub fn boson(name: impl Into<String>, n_max: usize) -> Self {
        Self { name: name.into(), kind: SectorKind::Boson { n_max } }
    }
}

/// Position of a sector inside its basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectorId(pub usize);

/// Physical labels of one basis state, one entry per sector: the charge
/// eigenvalue, the fermion occupancy or the photon number.
pub type BasisLabel = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    sectors: Vec<Sector>,
    strides: Vec<usize>,
    dim: usize,
}

impl FockBasis {
    /// Builds a basis with the default dimension cap.
    pub fn new(sectors: Vec<Sector>) -> Result<Self, AlgebraError> {
        Self::with_cap(sectors, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(sectors: Vec<Sector>, cap: usize) -> Result<Self, AlgebraError> {
        if sectors.is_empty() {
            return Err(AlgebraError::EmptySpec);
        }
        let mut dim: usize = 1;
        for s in &sectors {
            if let SectorKind::Charge { min, max } = s.kind {
                if max < min {
                    return Err(AlgebraError::EmptyChargeRange { name: s.name.clone(), min, max });
                }
            }
            dim = dim
                .checked_mul(s.kind.dim())
                .filter(|&d| d <= cap)
                .ok_or(AlgebraError::BasisTooLarge { cap })?;
        }
        let mut strides = vec![1; sectors.len()];
        for k in (0..sectors.len() - 1).rev() {
            strides[k] = strides[k + 1] * sectors[k + 1].kind.dim();
        }
        Ok(Self { sectors, strides, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn sector(&self, id: SectorId) -> Result<&Sector, AlgebraError> {
        self.sectors.get(id.0).ok_or(AlgebraError::UnknownSector(id.0))
    }

    pub fn stride(&self, id: SectorId) -> usize {
        self.strides[id.0]
    }

    pub fn find(&self, name: &str) -> Option<SectorId> {
        self.sectors.iter().position(|s| s.name == name).map(SectorId)
    }

    /// Fermionic sectors in basis order.
    pub fn fermionic_sectors(&self) -> impl Iterator<Item = SectorId> + '_ {
        self.sectors
            .iter()
            .enumerate()
            .filter(|(_, s)| s.kind == SectorKind::Fermion)
            .map(|(k, _)| SectorId(k))
    }

    /// Local (zero-based) index of sector `id` in basis state `index`.
    #[inline]
    pub fn local(&self, index: usize, id: SectorId) -> usize {
        (index / self.strides[id.0]) % self.sectors[id.0].kind.dim()
    }

    /// Physical value (charge, occupancy, photon number) of sector `id` in
    /// basis state `index`.
    #[inline]
    pub fn value(&self, index: usize, id: SectorId) -> i32 {
        self.sectors[id.0].kind.label(self.local(index, id))
    }

    pub fn label(&self, index: usize) -> BasisLabel {
        (0..self.sectors.len()).map(|k| self.value(index, SectorId(k))).collect()
    }

    pub fn index(&self, label: &[i32]) -> Option<usize> {
        if label.len() != self.sectors.len() {
            return None;
        }
        label.iter().zip(&self.sectors).zip(&self.strides).try_fold(
            0usize,
            |acc, ((&l, s), &stride)| s.kind.local_index(l).map(|i| acc + i * stride),
        )
    }

    /// Indices of states sitting on a truncation edge of any charge range or
    /// boson cutoff (fermion modes have no truncation).
    pub fn edge_states(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| {
                self.sectors.iter().enumerate().any(|(k, s)| {
                    let local = self.local(i, SectorId(k));
                    match s.kind {
                        SectorKind::Charge { .. } => local == 0 || local + 1 == s.kind.dim(),
                        SectorKind::Boson { n_max } => local == n_max && n_max > 0,
                        SectorKind::Fermion => false,
                    }
                })
            })
            .collect()
    }

    /// Edge states of a single sector.
    pub fn sector_edge_states(&self, id: SectorId) -> Vec<usize> {
        let kind = &self.sectors[id.0].kind;
        (0..self.dim)
            .filter(|&i| {
                let local = self.local(i, id);
                match *kind {
                    SectorKind::Charge { .. } => local == 0 || local + 1 == kind.dim(),
                    SectorKind::Boson { n_max } => local == n_max && n_max > 0,
                    SectorKind::Fermion => false,
                }
            })
            .collect()
    }
}

/// Builds a basis from a list of sector descriptors.
pub fn build_basis(sectors: Vec<Sector>) -> Result<FockBasis, AlgebraError> {
    FockBasis::new(sectors)
}

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

/// A resource dimension tracked by [`ResourceVector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    Cores,
    MemoryMb,
}

impl Dimension {
    pub const ALL: [Dimension; 2] = [Dimension::Cores, Dimension::MemoryMb];

    pub fn name(self) -> &'static str {
        match self {
            Dimension::Cores => "cores",
            Dimension::MemoryMb => "memory_mb",
        }
    }
}

/// Per-dimension resource amounts (demand of a drop or capacity of a node).
///
/// `a <= b` via [`ResourceVector::fits_within`] is the per-dimension partial
/// order; the derived `Ord` is not used for capacity checks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResourceVector {
    pub cores: u64,
    pub memory_mb: u64,
}

impl ResourceVector {
    pub const ZERO: ResourceVector = ResourceVector {
        cores: 0,
        memory_mb: 0,
    };

    pub fn new(cores: u64, memory_mb: u64) -> Self {
        ResourceVector { cores, memory_mb }
    }

    pub fn get(&self, dim: Dimension) -> u64 {
        match dim {
            Dimension::Cores => self.cores,
            Dimension::MemoryMb => self.memory_mb,
        }
    }

    pub fn set(&mut self, dim: Dimension, value: u64) {
        match dim {
            Dimension::Cores => self.cores = value,
            Dimension::MemoryMb => self.memory_mb = value,
        }
    }

    /// Builds a vector by evaluating `f` for every dimension.
    pub fn from_fn(mut f: impl FnMut(Dimension) -> u64) -> Self {
        let mut v = ResourceVector::ZERO;
        for dim in Dimension::ALL {
            v.set(dim, f(dim));
        }
        v
    }

    /// `true` iff every dimension of `self` is at most the same dimension of `other`.
    pub fn fits_within(&self, other: &ResourceVector) -> bool {
        Dimension::ALL.iter().all(|&d| self.get(d) <= other.get(d))
    }

    /// Per-dimension maximum.
    pub fn max(&self, other: &ResourceVector) -> ResourceVector {
        ResourceVector::from_fn(|d| self.get(d).max(other.get(d)))
    }

    pub fn saturating_add(&self, other: &ResourceVector) -> ResourceVector {
        ResourceVector::from_fn(|d| self.get(d).saturating_add(other.get(d)))
    }

    /// First dimension in which `self` exceeds `other`, if any.
    pub fn first_excess(&self, other: &ResourceVector) -> Option<Dimension> {
        Dimension::ALL
            .into_iter()
            .find(|&d| self.get(d) > other.get(d))
    }
}

impl Add for ResourceVector {
    type Output = ResourceVector;

    fn add(self, rhs: ResourceVector) -> ResourceVector {
        ResourceVector::from_fn(|d| self.get(d) + rhs.get(d))
    }
}

impl AddAssign for ResourceVector {
    fn add_assign(&mut self, rhs: ResourceVector) {
        *self = *self + rhs;
    }
}

impl fmt::Display for ResourceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(cores={}, memory_mb={})", self.cores, self.memory_mb)
    }
}

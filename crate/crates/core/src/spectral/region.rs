use super::grid::GridSpec;
use crate::scalar::Real;

/// Frequency regions used by the low/high splitting of the dissipation estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionTag {
    /// `|xi| >= 1`.
    Hi,
    /// `|xi| < 1` and `|xi1| <= |xi|^2`.
    LoSmall,
    /// `|xi| < 1` and `|xi1| > |xi|^2`.
    LoLarge,
}

impl RegionTag {
    pub const ALL: [RegionTag; 3] = [RegionTag::Hi, RegionTag::LoSmall, RegionTag::LoLarge];

    pub fn classify<T: Real>(xi1: T, xi2: T) -> Self {
        let r2 = xi1 * xi1 + xi2 * xi2;
        if r2 >= T::one() {
            RegionTag::Hi
        } else if xi1.abs() <= r2 {
            RegionTag::LoSmall
        } else {
            RegionTag::LoLarge
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RegionTag::Hi => "hi",
            RegionTag::LoSmall => "lo_small",
            RegionTag::LoLarge => "lo_large",
        }
    }
}

/// Membership flag per storage index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeMask {
    bits: Vec<bool>,
}

impl ModeMask {
    pub fn from_fn(len: usize, f: impl Fn(usize) -> bool) -> Self {
        Self { bits: (0..len).map(f).collect() }
    }

    #[inline]
    pub fn contains(&self, idx: usize) -> bool {
        self.bits[idx]
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }
}

pub fn region_mask<T: Real>(grid: &GridSpec<T>, tag: RegionTag) -> ModeMask {
    ModeMask::from_fn(grid.len(), |i| {
        let (x1, x2) = grid.xi(i);
        RegionTag::classify(x1, x2) == tag
    })
}

/// Modes with `|xi1| >= |xi|^2`, including the boundary of `LoLarge`.
pub fn set_a_mask<T: Real>(grid: &GridSpec<T>) -> ModeMask {
    ModeMask::from_fn(grid.len(), |i| {
        let (x1, x2) = grid.xi(i);
        in_set_a(x1, x2)
    })
}

#[inline]
pub fn in_set_a<T: Real>(xi1: T, xi2: T) -> bool {
    let r2 = xi1 * xi1 + xi2 * xi2;
    r2 > T::zero() && xi1.abs() >= r2
}

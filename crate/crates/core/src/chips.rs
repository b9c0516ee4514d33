//! Tile colors and chip inventories.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One of the four tile and chip colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Blue,
    Green,
    Yellow,
}

impl Color {
    pub const ALL: [Color; 4] = [Color::Red, Color::Blue, Color::Green, Color::Yellow];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Color {
        Color::ALL[i]
    }

    pub const fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
            Color::Green => 'G',
            Color::Yellow => 'Y',
        }
    }

    pub fn from_letter(c: char) -> Option<Color> {
        match c {
            'R' => Some(Color::Red),
            'B' => Some(Color::Blue),
            'G' => Some(Color::Green),
            'Y' => Some(Color::Yellow),
            _ => None,
        }
    }
}

/// A multiset of chips, stored as a count per color.
///
/// Ordering is the canonical outcome order used for tie-breaking: counts are
/// compared color by color in `Color::ALL` order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChipMultiset {
    counts: [u8; 4],
}

impl ChipMultiset {
    pub const EMPTY: ChipMultiset = ChipMultiset { counts: [0; 4] };

    pub const fn from_counts(counts: [u8; 4]) -> Self {
        ChipMultiset { counts }
    }

    pub fn from_colors(colors: &[Color]) -> Self {
        let mut counts = [0u8; 4];
        for c in colors {
            counts[c.index()] += 1;
        }
        ChipMultiset { counts }
    }

    #[inline]
    pub const fn counts(&self) -> [u8; 4] {
        self.counts
    }

    #[inline]
    pub fn count(&self, color: Color) -> u8 {
        self.counts[color.index()]
    }

    #[inline]
    pub fn total(&self) -> u8 {
        self.counts.iter().sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.counts == [0; 4]
    }

    /// `true` when `self` is a sub-multiset of `other`.
    #[inline]
    pub fn is_subset_of(&self, other: &ChipMultiset) -> bool {
        self.counts.iter().zip(other.counts.iter()).all(|(a, b)| a <= b)
    }

    pub fn with(mut self, color: Color) -> Self {
        self.counts[color.index()] += 1;
        self
    }

    /// Subtraction that fails instead of underflowing.
    pub fn checked_sub(&self, other: &ChipMultiset) -> Option<ChipMultiset> {
        let mut counts = [0u8; 4];
        for ((c, a), b) in counts.iter_mut().zip(self.counts).zip(other.counts) {
            *c = a.checked_sub(b)?;
        }
        Some(ChipMultiset { counts })
    }

    /// Every distinct sub-multiset, in canonical order (empty first, `self` last).
    pub fn sub_multisets(&self) -> Vec<ChipMultiset> {
        let [r, b, g, y] = self.counts;
        let mut out =
            Vec::with_capacity((r as usize + 1) * (b as usize + 1) * (g as usize + 1) * (y as usize + 1));
        for cr in 0..=r {
            for cb in 0..=b {
                for cg in 0..=g {
                    for cy in 0..=y {
                        out.push(ChipMultiset::from_counts([cr, cb, cg, cy]));
                    }
                }
            }
        }
        out
    }

    /// Chips as a color list, grouped in color order.
    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        Color::ALL.iter().flat_map(move |&c| std::iter::repeat_n(c, self.count(c) as usize))
    }
}

impl Add for ChipMultiset {
    type Output = ChipMultiset;

    fn add(self, rhs: ChipMultiset) -> ChipMultiset {
        let mut counts = self.counts;
        for (c, r) in counts.iter_mut().zip(rhs.counts) {
            *c += r;
        }
        ChipMultiset { counts }
    }
}

impl Sub for ChipMultiset {
    type Output = ChipMultiset;

    /// Panics if `rhs` is not contained in `self`.
    fn sub(self, rhs: ChipMultiset) -> ChipMultiset {
        self.checked_sub(&rhs).expect("chip subtraction would go negative")
    }
}

/// Letters in color order, e.g. `RBGG`; the empty multiset is `-`.
impl fmt::Display for ChipMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        for c in self.colors() {
            write!(f, "{}", c.letter())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid chip string {0:?}")]
pub struct ParseChipsError(pub String);

impl FromStr for ChipMultiset {
    type Err = ParseChipsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "-" {
            return Ok(ChipMultiset::EMPTY);
        }
        let mut out = ChipMultiset::EMPTY;
        for ch in s.chars() {
            let c = Color::from_letter(ch).ok_or_else(|| ParseChipsError(s.to_owned()))?;
            out = out.with(c);
        }
        Ok(out)
    }
}

impl Serialize for ChipMultiset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ChipMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

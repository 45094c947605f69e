use std::fmt;

use crate::error::{Error, Result};
use crate::MAX_CROSSINGS;

/// Smoothing marker placed on a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    A,
    B,
}

impl Marker {
    pub fn flipped(self) -> Self {
        match self {
            Marker::A => Marker::B,
            Marker::B => Marker::A,
        }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Marker::A => "A",
            Marker::B => "B",
        })
    }
}

/// A marker for every crossing, packed as a bit vector (bit `i` set means
/// crossing `i` carries marker B).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KauffmanState {
    bits: u64,
    len: u8,
}

impl KauffmanState {
    pub fn all_a(len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(Self { bits: 0, len: len as u8 })
    }

    pub fn all_b(len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(Self { bits: low_mask(len), len: len as u8 })
    }

    pub fn from_bits(bits: u64, len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(Self { bits: bits & low_mask(len), len: len as u8 })
    }

    pub fn from_markers(markers: &[Marker]) -> Result<Self> {
        check_len(markers.len())?;
        let bits = markers
            .iter()
            .enumerate()
            .filter(|(_, m)| **m == Marker::B)
            .fold(0u64, |acc, (i, _)| acc | (1 << i));
        Ok(Self { bits, len: markers.len() as u8 })
    }

    /// Every state of a diagram with `len` crossings, in increasing bit order.
    pub fn all(len: usize) -> Result<impl Iterator<Item = KauffmanState>> {
        check_len(len)?;
        Ok((0..(1u64 << len)).map(move |bits| KauffmanState { bits, len: len as u8 }))
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn marker(&self, crossing: usize) -> Marker {
        debug_assert!(crossing < self.len());
        if self.bits >> crossing & 1 == 1 {
            Marker::B
        } else {
            Marker::A
        }
    }

    pub fn with_marker(&self, crossing: usize, marker: Marker) -> Self {
        let bits = match marker {
            Marker::A => self.bits & !(1 << crossing),
            Marker::B => self.bits | (1 << crossing),
        };
        Self { bits, len: self.len }
    }

    pub fn count_b(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn count_a(&self) -> usize {
        self.len() - self.count_b()
    }

    /// `σ(s) = #A − #B`.
    pub fn sigma(&self) -> i64 {
        self.count_a() as i64 - self.count_b() as i64
    }

    pub fn markers(&self) -> impl Iterator<Item = Marker> + '_ {
        (0..self.len()).map(|i| self.marker(i))
    }

    /// Sort key that orders states lexicographically on the marker sequence
    /// (crossing 0 most significant, A before B).
    pub(crate) fn lex_key(&self) -> u64 {
        if self.len == 0 {
            0
        } else {
            self.bits.reverse_bits() >> (64 - self.len as u32)
        }
    }
}

impl fmt::Display for KauffmanState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in self.markers() {
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for KauffmanState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let markers = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                'A' => Ok(Marker::A),
                'B' => Ok(Marker::B),
                _ => Err(Error::Syntax { offset: i, message: format!("expected A or B, found {c:?}") }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_markers(&markers)
    }
}

fn check_len(len: usize) -> Result<()> {
    if len > MAX_CROSSINGS {
        Err(Error::TooManyCrossings(len))
    } else {
        Ok(())
    }
}

fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s: KauffmanState = "AAB".parse().unwrap();
        assert_eq!(s.marker(2), Marker::B);
        assert_eq!(s.count_a(), 2);
        assert_eq!(s.sigma(), 1);
        assert_eq!(s.to_string(), "AAB");
    }

    #[test]
    fn lex_key_orders_by_first_crossing() {
        let ab: KauffmanState = "AB".parse().unwrap();
        let ba: KauffmanState = "BA".parse().unwrap();
        assert!(ab.lex_key() < ba.lex_key());
    }

    #[test]
    fn state_count() {
        assert_eq!(KauffmanState::all(3).unwrap().count(), 8);
        assert_eq!(KauffmanState::all(0).unwrap().count(), 1);
        assert!(KauffmanState::all(MAX_CROSSINGS + 1).is_err());
    }
}

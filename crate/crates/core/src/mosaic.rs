use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// The mosaic `{4,q}`. `q = 4` is the Euclidean square grid and yields the
/// classical Pascal triangle; every `q >= 5` is hyperbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mosaic(u32);

impl Mosaic {
    pub const MIN_Q: u32 = 4;

    pub fn new(q: u32) -> Result<Self> {
        if q < Self::MIN_Q {
            return Err(Error::InvalidMosaic { q: q.into() });
        }
        Ok(Mosaic(q))
    }

    pub fn q(self) -> u32 {
        self.0
    }

    pub fn parity(self) -> Parity {
        if self.0.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_euclidean(self) -> bool {
        self.0 == Self::MIN_Q
    }
}

impl TryFrom<i64> for Mosaic {
    type Error = Error;

    fn try_from(q: i64) -> Result<Self> {
        u32::try_from(q)
            .map_err(|_| Error::InvalidMosaic { q })
            .and_then(Mosaic::new)
    }
}

impl fmt::Display for Mosaic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{4,{}}}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_q() {
        for q in 0..4 {
            assert_eq!(Mosaic::new(q), Err(Error::InvalidMosaic { q: q.into() }));
        }
        assert!(Mosaic::try_from(-3i64).is_err());
        assert_eq!(Mosaic::new(4).unwrap().q(), 4);
    }

    #[test]
    fn parity_and_display() {
        assert_eq!(Mosaic::new(6).unwrap().parity(), Parity::Even);
        assert_eq!(Mosaic::new(7).unwrap().parity(), Parity::Odd);
        assert_eq!(Mosaic::new(5).unwrap().to_string(), "{4,5}");
        assert!(Mosaic::new(4).unwrap().is_euclidean());
    }
}

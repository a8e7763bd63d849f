use std::num::NonZeroU64;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_CELLS: u64 = 10_000_000;
pub const MAX_CELLS_ENV: &str = "HPT_MAX_CELLS";

/// Upper bound on the number of cells a single build may produce, counted
/// cumulatively over every row emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CellCap(NonZeroU64);

impl CellCap {
    pub fn new(cells: u64) -> Result<Self> {
        NonZeroU64::new(cells)
            .map(CellCap)
            .ok_or_else(|| Error::InvalidCap(cells.to_string()))
    }

    pub fn get(self) -> u64 {
        self.0.get()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() || !trimmed.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidCap(text.to_owned()));
        }
        trimmed
            .parse::<u64>()
            .map_err(|_| Error::InvalidCap(text.to_owned()))
            .and_then(CellCap::new)
    }

    /// Flag beats environment beats the default.
    pub fn resolve(flag: Option<u64>, env_value: Option<&str>) -> Result<Self> {
        match (flag, env_value) {
            (Some(cells), _) => CellCap::new(cells),
            (None, Some(text)) => CellCap::parse(text),
            (None, None) => Ok(CellCap::default()),
        }
    }

    pub fn from_env() -> Result<Self> {
        let value = std::env::var(MAX_CELLS_ENV).ok();
        CellCap::resolve(None, value.as_deref())
    }
}

impl Default for CellCap {
    fn default() -> Self {
        CellCap(NonZeroU64::new(DEFAULT_MAX_CELLS).unwrap())
    }
}

//! Process-wide resource caps.
//!
//! Defaults can be raised or lowered once at startup (the CLI reads
//! `RECIP_LAB_CAP`). Library calls read them on every check.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;
pub const DEFAULT_STATE_CAP: u64 = 1_000_000;
pub const DEFAULT_DEGREE_CAP: usize = 128;

static ENUM_CAP: AtomicU64 = AtomicU64::new(DEFAULT_ENUM_CAP);
static STATE_CAP: AtomicU64 = AtomicU64::new(DEFAULT_STATE_CAP);
static DEGREE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_CAP);

/// Cap on the number of polynomials an enumeration may produce.
pub fn enum_cap() -> u64 {
    ENUM_CAP.load(Ordering::Relaxed)
}

/// Cap on the size of exact residue state spaces such as `F_p[T]/(D)`.
pub fn state_cap() -> u64 {
    STATE_CAP.load(Ordering::Relaxed)
}

/// Largest degree accepted by factorization over Z.
pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn set_enum_cap(cap: u64) {
    ENUM_CAP.store(cap, Ordering::Relaxed);
}

pub fn set_state_cap(cap: u64) {
    STATE_CAP.store(cap, Ordering::Relaxed);
}

pub fn set_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

/// `base^exp`, or `None` on overflow of `u128`.
pub fn checked_pow(base: u64, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

pub(crate) fn require(what: &'static str, needed: Option<u128>, cap: u64) -> Result<u128> {
    match needed {
        Some(n) if n <= cap as u128 => Ok(n),
        Some(n) => Err(Error::CapExceeded {
            what,
            needed: n,
            cap: cap as u128,
        }),
        None => Err(Error::CapExceeded {
            what,
            needed: u128::MAX,
            cap: cap as u128,
        }),
    }
}

//! Global size guard applied to every materialized set.

use std::cell::Cell;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_GUARD: usize = 1_000_000;
pub const GUARD_ENV: &str = "SOA_TOPOS_GUARD";

thread_local! {
    static OVERRIDE: Cell<Option<usize>> = const { Cell::new(None) };
}

fn env_guard() -> usize {
    static ENV: OnceLock<usize> = OnceLock::new();
    *ENV.get_or_init(|| {
        std::env::var(GUARD_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_GUARD)
    })
}

/// Current limit on the number of elements any single construction may produce.
pub fn limit() -> usize {
    OVERRIDE.with(|o| o.get()).unwrap_or_else(env_guard)
}

/// Runs `body` with a temporary guard on the current thread.
pub fn with_limit<T>(limit: usize, body: impl FnOnce() -> T) -> T {
    let prev = OVERRIDE.with(|o| o.replace(Some(limit)));
    let out = body();
    OVERRIDE.with(|o| o.set(prev));
    out
}

pub fn check(what: &str, size: usize) -> Result<()> {
    let limit = limit();
    if size > limit {
        return Err(Error::SizeExceeded { what: what.to_string(), size, limit });
    }
    Ok(())
}

//! Size bound on constructed fields.

use std::sync::atomic::{AtomicU64, Ordering};

/// Default largest field order that will be tabulated.
pub const DEFAULT_FIELD_LIMIT: u64 = 1 << 20;

/// Environment variable overriding [`DEFAULT_FIELD_LIMIT`].
pub const ENV_VAR: &str = "CONSTACODE_CAPACITY";

static OVERRIDE: AtomicU64 = AtomicU64::new(0);

/// Largest field order accepted by [`crate::gf::Field`] constructors: the
/// process-wide override if set, else [`ENV_VAR`], else the default.
pub fn field_limit() -> u64 {
    match OVERRIDE.load(Ordering::Relaxed) {
        0 => std::env::var(ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_FIELD_LIMIT),
        n => n,
    }
}

/// Sets (or with `None`, clears) the process-wide override.
pub fn set_field_limit(limit: Option<u64>) {
    OVERRIDE.store(limit.unwrap_or(0), Ordering::Relaxed);
}

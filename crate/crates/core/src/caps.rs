//! Size limits for enumeration-heavy operations.
//!
//! Every limit can be overridden from the environment with a
//! `SECTIONKIT_`-prefixed variable, read once on first use:
//!
//! | variable                      | default |
//! |-------------------------------|---------|
//! | `SECTIONKIT_ENUMERATION_CAP`  | 100000  |
//! | `SECTIONKIT_TABLE_CAP`        | 5000    |
//! | `SECTIONKIT_QUOTIENT_CAP`     | 100000  |
//! | `SECTIONKIT_ORACLE_CAP`       | 400     |
//! | `SECTIONKIT_ISO_CAP`          | 2000    |
//! | `SECTIONKIT_CONFIG_CAP`       | 1296    |

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group whose full element list may be materialized.
    pub enumeration: u64,
    /// Largest group for which a full Cayley table is built.
    pub table: u64,
    /// Largest index allowed for a coset-action quotient.
    pub quotient: u64,
    /// Largest group searched by the brute-force section oracle.
    pub oracle: u64,
    /// Largest group order accepted by the isomorphism test.
    pub iso: u64,
    /// Largest ambient product scanned for section configurations.
    pub config: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: 100_000,
            table: 5_000,
            quotient: 100_000,
            oracle: 400,
            iso: 2_000,
            config: 1_296,
        }
    }
}

impl Caps {
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        let read = |key: &str, slot: &mut u64| {
            if let Some(v) = std::env::var(key).ok().and_then(|s| s.trim().parse().ok()) {
                *slot = v;
            }
        };
        read("SECTIONKIT_ENUMERATION_CAP", &mut caps.enumeration);
        read("SECTIONKIT_TABLE_CAP", &mut caps.table);
        read("SECTIONKIT_QUOTIENT_CAP", &mut caps.quotient);
        read("SECTIONKIT_ORACLE_CAP", &mut caps.oracle);
        read("SECTIONKIT_ISO_CAP", &mut caps.iso);
        read("SECTIONKIT_CONFIG_CAP", &mut caps.config);
        caps
    }
}

/// Process-wide caps, initialized from the environment on first access.
pub fn caps() -> &'static Caps {
    static CAPS: OnceLock<Caps> = OnceLock::new();
    CAPS.get_or_init(Caps::from_env)
}

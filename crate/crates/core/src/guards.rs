//! Size limits for the exponential searches.
//!
//! Every exhaustive routine checks its input against a [`Guards`] value and
//! returns [`Error::GuardExceeded`] instead of running unbounded. The defaults
//! keep each call well under a second; they can be raised per call or, for the
//! command-line tool, through environment variables (unset by default):
//!
//! | variable                     | field                 |
//! |------------------------------|-----------------------|
//! | `TURAN_CLIQUE_MAX_N`         | `clique_max_n`        |
//! | `TURAN_PATTERN_MAX_N`        | `pattern_max_n`       |
//! | `TURAN_ORACLE_MAX_N`         | `oracle_max_n`        |
//! | `TURAN_ORACLE_MAX_N_P4`      | `oracle_max_n_p4`     |
//! | `TURAN_ORACLE_MAX_N_LARGE_P` | `oracle_max_n_large_p`|

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Largest `n` on which certificates run the exact `K_{p+1}` check and
    /// `clique_broken_gnp` is allowed to run.
    pub clique_max_n: usize,
    /// Largest pattern graph accepted by homomorphism and chromatic-number search.
    pub pattern_max_n: usize,
    /// Oracle limit for `p <= 3`.
    pub oracle_max_n: usize,
    /// Oracle limit for `p == 4`.
    pub oracle_max_n_p4: usize,
    /// Oracle limit for `p >= 5`.
    pub oracle_max_n_large_p: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            clique_max_n: 400,
            pattern_max_n: 20,
            oracle_max_n: 14,
            oracle_max_n_p4: 12,
            oracle_max_n_large_p: 10,
        }
    }
}

impl Guards {
    /// Defaults, overridden by any of the documented environment variables.
    pub fn from_env() -> Result<Self> {
        let mut guards = Guards::default();
        let fields: [(&str, &mut usize); 5] = [
            ("TURAN_CLIQUE_MAX_N", &mut guards.clique_max_n),
            ("TURAN_PATTERN_MAX_N", &mut guards.pattern_max_n),
            ("TURAN_ORACLE_MAX_N", &mut guards.oracle_max_n),
            ("TURAN_ORACLE_MAX_N_P4", &mut guards.oracle_max_n_p4),
            (
                "TURAN_ORACLE_MAX_N_LARGE_P",
                &mut guards.oracle_max_n_large_p,
            ),
        ];
        for (name, slot) in fields {
            if let Ok(raw) = std::env::var(name) {
                *slot = raw.trim().parse().map_err(|_| {
                    Error::InvalidParameter(format!("{name}={raw:?} is not a vertex count"))
                })?;
            }
        }
        Ok(guards)
    }

    /// Oracle size limit for a given number of parts.
    pub fn oracle_limit(&self, p: usize) -> usize {
        match p {
            0..=3 => self.oracle_max_n,
            4 => self.oracle_max_n_p4,
            _ => self.oracle_max_n_large_p,
        }
    }

    pub fn check_oracle(&self, n: usize, p: usize) -> Result<()> {
        check("exhaustive partition oracle", n, self.oracle_limit(p))
    }

    pub fn check_pattern(&self, n: usize) -> Result<()> {
        check("pattern graph search", n, self.pattern_max_n)
    }

    pub fn check_clique(&self, n: usize) -> Result<()> {
        check("exact clique search", n, self.clique_max_n)
    }
}

fn check(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::GuardExceeded { what, size, limit })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_limits_follow_part_count() {
        let g = Guards::default();
        assert!(g.check_oracle(14, 3).is_ok());
        assert!(g.check_oracle(15, 2).is_err());
        assert!(g.check_oracle(12, 4).is_ok());
        assert_eq!(
            g.check_oracle(13, 4),
            Err(Error::GuardExceeded {
                what: "exhaustive partition oracle",
                size: 13,
                limit: 12
            })
        );
        assert_eq!(
            Error::GuardExceeded {
                what: "x",
                size: 1,
                limit: 0
            }
            .exit_code(),
            3
        );
    }
}

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Resource limits shared by the searching and enumerating routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Wall-clock limit; `None` means unlimited.
    pub time_limit: Option<Duration>,
    /// Maximum number of live cosets in an enumeration.
    pub max_cosets: usize,
    /// Maximum number of group elements materialized by closure.
    pub max_elements: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            time_limit: Some(Duration::from_secs(60)),
            max_cosets: 100_000,
            max_elements: 100_000,
        }
    }
}

impl Budget {
    pub fn unlimited_time(self) -> Self {
        Budget {
            time_limit: None,
            ..self
        }
    }

    pub fn with_time_limit(self, limit: Duration) -> Self {
        Budget {
            time_limit: Some(limit),
            ..self
        }
    }

    pub fn with_max_cosets(self, max_cosets: usize) -> Self {
        Budget { max_cosets, ..self }
    }

    pub fn with_max_elements(self, max_elements: usize) -> Self {
        Budget {
            max_elements,
            ..self
        }
    }

    pub fn start(&self) -> Deadline {
        Deadline {
            end: self.time_limit.map(|d| Instant::now() + d),
        }
    }
}

/// A started clock derived from a [`Budget`].
#[derive(Clone, Copy, Debug)]
pub struct Deadline {
    end: Option<Instant>,
}

impl Deadline {
    pub fn never() -> Self {
        Deadline { end: None }
    }

    pub fn expired(&self) -> bool {
        matches!(self.end, Some(e) if Instant::now() >= e)
    }
}

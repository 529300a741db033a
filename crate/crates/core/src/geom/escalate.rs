use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Working precision schedule: start at `start` bits and double up to `max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub start: u32,
    pub max: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { start: 128, max: 1 << 16 }
    }
}

impl PrecisionPolicy {
    pub fn steps(&self) -> impl Iterator<Item = u32> {
        let max = self.max.max(self.start);
        std::iter::successors(Some(self.start.max(16)), move |p| (*p < max).then(|| (p * 2).min(max)))
    }
}

/// Runs `f` at increasing precision until it reports success. Errors from
/// `f` are returned immediately; running out of precision is
/// `PrecisionExhausted`.
pub fn escalate<T>(policy: PrecisionPolicy, mut f: impl FnMut(u32) -> Result<(T, bool)>) -> Result<(T, u32)> {
    for p in policy.steps() {
        let (v, done) = f(p)?;
        if done {
            return Ok((v, p));
        }
    }
    Err(Error::PrecisionExhausted { max_bits: policy.max })
}

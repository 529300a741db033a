use serde::{Deserialize, Serialize};

use super::competitor::{competitor_energy_specfun, CompetitorEnergy};
use crate::error::{Error, Result};

/// Which `(k, l)` with `k + l + 2 = n` enter the upper bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairSelection {
    /// Central pairs: `(n/2-1, n/2-1)` plus `(n/2-2, n/2)` from `n = 8` on
    /// for even `n`; `((n-3)/2, (n-1)/2)` for odd `n`.
    Default,
    /// Only the most balanced pair.
    Primary,
    /// Every pair that passes the geometry gate.
    All,
    Explicit(Vec<(u32, u32)>),
}

pub fn pairs_for(n: u32, sel: &PairSelection) -> Vec<(u32, u32)> {
    if n < 4 {
        return Vec::new();
    }
    match sel {
        PairSelection::Primary => vec![primary_pair(n)],
        PairSelection::Default => {
            if n.is_multiple_of(2) {
                let h = n / 2;
                if n >= 8 {
                    vec![(h - 1, h - 1), (h - 2, h)]
                } else {
                    vec![(h - 1, h - 1)]
                }
            } else {
                vec![primary_pair(n)]
            }
        }
        // gate: 1/3 < k/l < 3
        PairSelection::All => (1..n - 2).map(|k| (k, n - 2 - k)).filter(|&(k, l)| 3 * k > l && 3 * l > k).collect(),
        PairSelection::Explicit(v) => v.iter().copied().filter(|&(k, l)| k >= 1 && l >= 1 && k + l + 2 == n).collect(),
    }
}

pub fn primary_pair(n: u32) -> (u32, u32) {
    if n.is_multiple_of(2) {
        (n / 2 - 1, n / 2 - 1)
    } else {
        ((n - 3) / 2, (n - 1) / 2)
    }
}

/// Smallest `M(k, l)` (by upper endpoint) over the selected pairs, plus
/// every evaluated pair. Pairs failing the geometry gate are skipped.
pub fn lambda_lawson_upper(n: u32, sel: &PairSelection, prec: u32) -> Result<(CompetitorEnergy, Vec<CompetitorEnergy>)> {
    let mut all = Vec::new();
    for (k, l) in pairs_for(n, sel) {
        match competitor_energy_specfun(k, l, prec) {
            Ok(e) => all.push(e),
            Err(Error::InvalidGeometry { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let best = all.iter().min_by(|a, b| a.m_value.upper().cmp(&b.m_value.upper())).cloned().ok_or(Error::NoValidPair { n })?;
    Ok((best, all))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selections() {
        assert_eq!(pairs_for(8, &PairSelection::Default), vec![(3, 3), (2, 4)]);
        assert_eq!(pairs_for(6, &PairSelection::Default), vec![(2, 2)]);
        assert_eq!(pairs_for(9, &PairSelection::Default), vec![(3, 4)]);
        assert_eq!(pairs_for(8, &PairSelection::All), vec![(2, 4), (3, 3), (4, 2)]);
        assert_eq!(pairs_for(3, &PairSelection::All), vec![]);
        assert_eq!(pairs_for(10, &PairSelection::Explicit(vec![(3, 5), (1, 1)])), vec![(3, 5)]);
    }

    #[test]
    fn best_pairs() {
        let (best, _) = lambda_lawson_upper(8, &PairSelection::Primary, 128).unwrap();
        assert_eq!((best.k, best.l), (3, 3));
        assert_eq!(best.m_value.to_fixed(8).as_deref(), Some("6.81857964"));
        let (best, all) = lambda_lawson_upper(14, &PairSelection::Default, 128).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!((best.k, best.l), (5, 7));
        let (best, _) = lambda_lawson_upper(9, &PairSelection::Default, 128).unwrap();
        assert_eq!((best.k, best.l), (3, 4));
        assert_eq!(lambda_lawson_upper(3, &PairSelection::All, 128).unwrap_err(), Error::NoValidPair { n: 3 });
    }
}

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::geom::{competitor_energy_specfun, escalate, lambda_lawson_upper, lens_quantities, primary_pair, PairSelection, PrecisionPolicy};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u32,
    pub k: u32,
    pub l: u32,
    /// `None` on the extra row of a dimension.
    pub lambda_plane: Option<String>,
    pub m: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
    Markdown,
}

/// Rows per dimension: the balanced pair, and for even `n` the neighbour
/// `(n/2-2, n/2)` when both its entries are odd.
pub fn table_pairs(n: u32) -> Vec<(u32, u32, bool)> {
    let (k, l) = primary_pair(n);
    let mut out = vec![(k, l, true)];
    if n.is_multiple_of(2) && n >= 8 && (n / 2) % 2 == 1 {
        out.push((n / 2 - 2, n / 2, false));
    }
    out
}

/// Correctly rounded `digits`-decimal string, escalating precision until the
/// ball pins it down.
fn certified_digits(digits: u32, policy: PrecisionPolicy, f: impl Fn(u32) -> Result<Ball>) -> Result<String> {
    let width = 0.5 * 10f64.powi(-(digits as i32));
    let (s, _) = escalate(policy, |p| {
        let b = f(p)?;
        match b.to_fixed(digits) {
            Some(s) if b.width_upper() < width => Ok((s, true)),
            _ => Ok((String::new(), false)),
        }
    })?;
    Ok(s)
}

pub fn table(n_lo: u32, n_hi: u32, digits: u32, policy: PrecisionPolicy) -> Result<Vec<TableRow>> {
    if n_lo < 4 {
        return Err(Error::NoValidPair { n: n_lo });
    }
    let per_n = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| {
            let lambda = certified_digits(digits, policy, |p| Ok(lens_quantities(n, p)?.lambda_plane))?;
            table_pairs(n)
                .into_iter()
                .map(|(k, l, show)| {
                    let m = certified_digits(digits, policy, |p| Ok(competitor_energy_specfun(k, l, p)?.m_value))?;
                    Ok(TableRow { n, k, l, lambda_plane: show.then(|| lambda.clone()), m })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

impl TableFormat {
    pub fn render(self, rows: &[TableRow]) -> String {
        let lam = |r: &TableRow| r.lambda_plane.clone().unwrap_or_else(|| "---".to_string());
        match self {
            TableFormat::Json => serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
            TableFormat::Csv => {
                let mut s = String::from("n,k,l,lambda_plane,m\n");
                for r in rows {
                    s += &format!("{},{},{},{},{}\n", r.n, r.k, r.l, lam(r), r.m);
                }
                s
            }
            TableFormat::Markdown => {
                let mut s = String::from("| n | k | l | Λ_plane(n) | M(k,l) |\n|---|---|---|---|---|\n");
                for r in rows {
                    s += &format!("| {} | {} | {} | {} | {} |\n", r.n, r.k, r.l, lam(r), r.m);
                }
                s
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlotRow {
    pub n: u32,
    pub k: u32,
    pub l: u32,
    /// `Lambda_plane(n) - M(k, l)` as a serialized ball.
    pub gap: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotMeta {
    pub pairs: PairSelection,
    pub width: f64,
    /// `(n, k, l, precision_bits)` per row.
    pub used: Vec<(u32, u32, u32, u32)>,
}

/// Certified gap per dimension, the competitor being the best pair of the
/// selection.
pub fn plot(n_lo: u32, n_hi: u32, pairs: &PairSelection, width: f64, policy: PrecisionPolicy) -> Result<(Vec<PlotRow>, PlotMeta)> {
    if n_lo < 4 {
        return Err(Error::NoValidPair { n: n_lo });
    }
    let rows = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| {
            let ((gap, k, l), p) = escalate(policy, |p| {
                let lambda = lens_quantities(n, p)?.lambda_plane;
                let (best, _) = lambda_lawson_upper(n, pairs, p)?;
                let gap = lambda.sub(&best.m_value);
                let ok = gap.width_upper() <= width;
                Ok(((gap, best.k, best.l), ok))
            })?;
            Ok((PlotRow { n, k, l, gap: gap.serialize() }, p))
        })
        .collect::<Result<Vec<_>>>()?;
    let used = rows.iter().map(|(r, p)| (r.n, r.k, r.l, *p)).collect();
    let meta = PlotMeta { pairs: pairs.clone(), width, used };
    Ok((rows.into_iter().map(|(r, _)| r).collect(), meta))
}

pub fn plot_csv(rows: &[PlotRow]) -> Result<String> {
    let mut s = String::from("n,k,l,gap_mid,gap\n");
    for r in rows {
        let mid = Ball::parse_auto(&r.gap)?.to_f64();
        s += &format!("{},{},{},{:.12},{}\n", r.n, r.k, r.l, mid, r.gap);
    }
    Ok(s)
}

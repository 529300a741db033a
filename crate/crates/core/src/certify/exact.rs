use std::fmt;

use crate::error::{Error, Result};
use crate::geom::{competitor_energy_specfun, lens_quantities};
use crate::oracle::{exact_simons_m, lens_exact_lambda, lens_exact_wallis};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactMode {
    Lens,
    Simons,
}

/// Exact components plus a numeric cross-check against the
/// special-function route.
#[derive(Clone, Debug)]
pub struct ExactReport {
    pub lines: Vec<(String, String)>,
    pub cross_check: bool,
}

impl fmt::Display for ExactReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.lines.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &self.lines {
            writeln!(f, "{k:<w$}  {v}")?;
        }
        writeln!(f, "{:<w$}  {}", "cross-check", if self.cross_check { "agree" } else { "DISAGREE" })
    }
}

pub fn exact_report(n: u32, mode: ExactMode, prec: u32) -> Result<ExactReport> {
    let mut lines = Vec::new();
    let mut push = |k: &str, v: String| lines.push((k.to_string(), v));
    let cross_check = match mode {
        ExactMode::Lens => {
            if !(3..=40).contains(&n) {
                return Err(Error::UnsupportedDimension { n, reason: "exact lens mode covers 3 <= n <= 40" });
            }
            let (cap, vol) = lens_exact_wallis(n);
            let exact = lens_exact_lambda(n, prec)?;
            let numeric = lens_quantities(n, prec)?.lambda_plane;
            push("n", n.to_string());
            push("cap area / omega_{n-1}", cap.to_string());
            push("lens volume / omega_{n-1}", vol.to_string());
            push("Lambda_plane (exact parts)", exact.serialize_digits(30));
            push("Lambda_plane (2F1 route)", numeric.serialize_digits(30));
            exact.intersects(&numeric)
        }
        ExactMode::Simons => {
            if !n.is_multiple_of(4) || n < 4 {
                return Err(Error::UnsupportedDimension { n, reason: "simons mode needs n = 2k + 2 with k odd" });
            }
            let k = n / 2 - 1;
            let s = exact_simons_m(k, prec)?;
            let numeric = competitor_energy_specfun(k, k, prec)?.m_value;
            push("k = l", k.to_string());
            push("volume / omega^2", format!("({}) * ({})", s.den_scale, s.den));
            push("energy / omega^2", format!("({}) * ({})", s.num_scale, s.num));
            push("numerator", s.num.to_string());
            push("denominator", s.den.to_string());
            push("M(k,k) (exact field)", s.assembled.serialize_digits(30));
            push("M(k,k) (2F1 route)", numeric.serialize_digits(30));
            s.assembled.intersects(&numeric)
        }
    };
    Ok(ExactReport { lines, cross_check })
}

//! Numeric grids: `v`, `a:step:b` (inclusive) and `a:log:b` / `a:logN:b`
//! (N points per decade, 4 by default).

use anyhow::{bail, Context, Result};

const DEFAULT_PER_DECADE: u32 = 4;

pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| s.trim().parse::<f64>().with_context(|| format!("bad number `{s}` in `{text}`"));
    match parts.as_slice() {
        [v] => Ok(vec![num(v)?]),
        [a, mid, b] if mid.starts_with("log") => {
            let per = match &mid[3..] {
                "" => DEFAULT_PER_DECADE,
                n => n.parse().with_context(|| format!("bad points-per-decade in `{text}`"))?,
            };
            let (a, b) = (num(a)?, num(b)?);
            if !(a > 0.0 && b >= a) || per == 0 {
                bail!("log range `{text}` needs 0 < start <= end");
            }
            let steps = ((b / a).log10() * per as f64).round() as i64;
            Ok((0..=steps).map(|i| a * 10f64.powf(i as f64 / per as f64)).collect())
        }
        [a, step, b] => {
            let (a, step, b) = (num(a)?, num(step)?, num(b)?);
            if step <= 0.0 || b < a {
                bail!("range `{text}` needs a positive step and start <= end");
            }
            let count = ((b - a) / step + 1e-9).floor() as i64;
            Ok((0..=count).map(|i| a + i as f64 * step).collect())
        }
        _ => bail!("unrecognized grid `{text}`"),
    }
}

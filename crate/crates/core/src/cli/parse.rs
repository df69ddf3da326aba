//! Value parsers for angles and grid bounds.

use std::f64::consts::PI;

/// Radians as a decimal, `pi`, `pi/N`, `-pi/N`, `K*pi/N`, or `acos(x)`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some(arg) = t.strip_prefix("acos(").and_then(|r| r.strip_suffix(')')) {
        let x: f64 = arg.trim().parse().map_err(|_| format!("bad acos argument in {s:?}"))?;
        if !(x.abs() <= 1.0) {
            return Err(format!("acos argument {x} not in [-1, 1]"));
        }
        return Ok(x.acos());
    }
    if let Ok(v) = t.parse::<f64>() {
        return if v.is_finite() { Ok(v) } else { Err(format!("angle {s:?} is not finite")) };
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, t),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (body, None),
    };
    let coef = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some(k) => k.trim_end_matches('*').trim().parse::<f64>().map_err(|_| bad_angle(s))?,
        None => return Err(bad_angle(s)),
    };
    let den = match den {
        Some(d) => d.parse::<f64>().ok().filter(|d| *d != 0.0 && d.is_finite()).ok_or_else(|| bad_angle(s))?,
        None => 1.0,
    };
    Ok(sign * coef * PI / den)
}

fn bad_angle(s: &str) -> String {
    format!("cannot read {s:?} as an angle; use a decimal, pi/N, K*pi/N or acos(x)")
}

/// `lo:hi` with `-1 <= lo < hi <= 1`.
pub fn parse_bounds(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("bounds {s:?} must look like lo:hi"))?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    if !(-1.0 <= lo && lo < hi && hi <= 1.0) {
        return Err(format!("bounds {s:?} must satisfy -1 <= lo < hi <= 1"));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    #[test]
    fn angles() {
        assert_eq!(parse_angle("0.3").unwrap(), 0.3);
        assert_eq!(parse_angle("pi/4").unwrap(), FRAC_PI_4);
        assert_eq!(parse_angle("-pi/8").unwrap(), -FRAC_PI_8);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert!((parse_angle("3*pi/8").unwrap() - 3.0 * FRAC_PI_8).abs() < 1e-15);
        assert_eq!(parse_angle("acos(0.3)").unwrap(), 0.3f64.acos());
        for bad in ["", "tau", "pi/0", "pi/x", "acos(2)", "nan", "inf"] {
            assert!(parse_angle(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(parse_bounds("-1:1").unwrap(), (-1.0, 1.0));
        assert_eq!(parse_bounds("0:0.5").unwrap(), (0.0, 0.5));
        for bad in ["0.5:0.5", "-2:1", "1", "a:b"] {
            assert!(parse_bounds(bad).is_err(), "{bad}");
        }
    }
}

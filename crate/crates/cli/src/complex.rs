//! Parsing of complex literals in `a+bi` form.

use num_complex::Complex64;

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i` (exponents allowed).
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("invalid complex number {s:?}; expected the form a+bi");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        let re: f64 = t.parse().map_err(|_| bad())?;
        return finite(Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    // split before the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse().map_err(|_| bad())?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse().map_err(|_| bad())?,
    };
    finite(Complex64::new(re, im)).ok_or_else(bad)
}

fn finite(z: Complex64) -> Option<Complex64> {
    z.is_finite().then_some(z)
}

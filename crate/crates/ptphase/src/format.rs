//! Number formatting for byte-stable text output.

/// Magnitudes below this print as `0`.
pub const SNAP: f64 = 1e-13;

/// `%.12g`-style rendering: 12 significant digits, trailing zeros trimmed,
/// exponent form outside `[1e-5, 1e12)`. Tiny values and `-0` print as `0`.
pub fn g12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < SNAP {
        return "0".to_owned();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `1/(N+1)` as text.
pub fn reciprocal(n_dim: usize) -> String {
    format!("1/{}", n_dim + 1)
}

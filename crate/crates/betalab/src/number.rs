//! `%.17g`-style rendering of doubles.
//!
//! Seventeen significant digits always round-trip an f64, so every number
//! the tool prints parses back to the exact value it was computed as.

/// Formats `x` like C's `%.17g`: fixed notation for decimal exponents in
/// [-4, 17), scientific otherwise, trailing zeros removed.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent present");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    if (-4..17).contains(&exponent) {
        let fixed = if exponent < 0 {
            format!("0.{}{}", "0".repeat((-exponent - 1) as usize), digits)
        } else {
            let point = exponent as usize + 1;
            format!("{}.{}", &digits[..point], &digits[point..])
        };
        format!("{sign}{}", strip_fraction_zeros(&fixed))
    } else {
        let mantissa = strip_fraction_zeros(&format!("{}.{}", &digits[..1], &digits[1..]));
        let exp_sign = if exponent < 0 { '-' } else { '+' };
        format!("{sign}{mantissa}e{exp_sign}{:02}", exponent.abs())
    }
}

fn strip_fraction_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

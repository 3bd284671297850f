//! Decimal formatting shared by every text output.
//!
//! Values are rounded to 12 significant digits and then printed in the
//! shortest form that reads back as the rounded value. Magnitudes in
//! `[1e-5, 1e15)` use plain decimals, everything else scientific notation.
//! Zero (of either sign) prints as `0`.

pub const SIGNIFICANT_DIGITS: usize = 12;

pub fn fmt_num(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, value)
        .parse()
        .expect("formatted float parses");
    let magnitude = rounded.abs();
    if (1e-5..1e15).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(7.0 * 0.01), "0.07");
        assert_eq!(fmt_num(-3.875), "-3.875");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_num(123456.7890123456), "123456.789012");
        assert_eq!(fmt_num(1.5e-7), "1.5e-7");
        assert_eq!(fmt_num(-2.0e20), "-2e20");
        assert_eq!(fmt_num(1e-5), "0.00001");
    }

    #[test]
    fn reads_back_within_twelve_digits() {
        for v in [
            std::f64::consts::PI,
            1e-300,
            -9.87654321098765e8,
            0.1 + 0.2,
            199.99,
        ] {
            let back: f64 = fmt_num(v).parse().unwrap();
            assert!((back - v).abs() <= 5e-12 * v.abs(), "{v} -> {}", fmt_num(v));
        }
    }
}

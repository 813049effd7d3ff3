//! Float formatting shared by the report types.

use serde::Serializer;

/// Rounds to 15 significant decimal digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round15(*x))
}

pub fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round15(*v)),
        None => s.serialize_none(),
    }
}

pub fn ser_vec_f64<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|&x| round15(x)))
}

#[cfg(test)]
mod tests {
    use super::round15;

    #[test]
    fn rounding() {
        assert_eq!(round15(0.1 + 0.2), 0.3);
        assert_eq!(round15(-2.0000000000000004), -2.0);
        assert_eq!(round15(0.0), 0.0);
        assert!(round15(f64::NAN).is_nan());
        assert_eq!(round15(1.234567890123456789e-20), 1.23456789012346e-20);
    }
}

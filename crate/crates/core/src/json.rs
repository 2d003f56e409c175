//! Float formatting shared by every serialized report.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// Writes a float with 17 significant digits, or `null` when it is not finite.
pub fn sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    let raw = RawValue::from_string(format!("{x:.16e}")).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

#[cfg(test)]
mod tests {
    #[derive(serde::Serialize)]
    struct W(#[serde(serialize_with = "super::sig17")] f64);

    #[test]
    fn seventeen_digits() {
        assert_eq!(serde_json::to_string(&W(0.1)).unwrap(), "1.0000000000000001e-1");
        assert_eq!(serde_json::to_string(&W(0.0)).unwrap(), "0.0000000000000000e0");
        assert_eq!(serde_json::to_string(&W(f64::NAN)).unwrap(), "null");
        let back: f64 = serde_json::from_str(&serde_json::to_string(&W(1.0 / 3.0)).unwrap()).unwrap();
        assert_eq!(back, 1.0 / 3.0);
    }
}

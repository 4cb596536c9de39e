//! JSON encoding `{"order": N, "coeffs": ["p/q", ...], "approx": [re, im]}`.

use std::str::FromStr;

use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CycloNumber;

#[derive(Serialize, Deserialize)]
struct Wire {
    order: u32,
    coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    approx: Option<[f64; 2]>,
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let z = self.to_float();
        Wire {
            order: self.order(),
            coeffs: self.coeffs().iter().map(ToString::to_string).collect(),
            approx: Some([z.re, z.im]),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let coeffs = w
            .coeffs
            .iter()
            .map(|c| BigRational::from_str(c).map_err(|e| D::Error::custom(format!("{c:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        CycloNumber::from_coeffs(w.order, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let x = CycloNumber::from_poly(275, &[1, 0, -3, 7], 55);
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with("{\"order\":275,\"coeffs\":[\"1/55\",\"0\",\"-3/55\",\"7/55\""));
        let y: CycloNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn rejects_wrong_length() {
        let r: Result<CycloNumber, _> = serde_json::from_str(r#"{"order":5,"coeffs":["1"]}"#);
        assert!(r.is_err());
    }
}

//! JSON text format: `{"rows": R, "cols": C, "data": [[re, im], ...]}`, row-major.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CMatrix, CVector, C64};

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            data: self.row_major().iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        let entries = pairs_to_complex(&repr.data).map_err(D::Error::custom)?;
        CMatrix::from_row_major(repr.rows, repr.cols, entries).map_err(D::Error::custom)
    }
}

fn pairs_to_complex(pairs: &[[f64; 2]]) -> Result<Vec<C64>, String> {
    pairs
        .iter()
        .map(|&[re, im]| {
            if re.is_finite() && im.is_finite() {
                Ok(C64::new(re, im))
            } else {
                Err("matrix entries must be finite".to_string())
            }
        })
        .collect()
}

/// `serde(with = ...)` adapter for a complex scalar as `[re, im]`.
pub mod complex_pair {
    use super::*;

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        if !(re.is_finite() && im.is_finite()) {
            return Err(D::Error::custom("complex entries must be finite"));
        }
        Ok(C64::new(re, im))
    }
}

/// `serde(with = ...)` adapter for a complex vector as `[[re, im], ...]`.
pub mod complex_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &CVector, s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|z| [z.re, z.im])
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CVector, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        let entries = pairs_to_complex(&pairs).map_err(D::Error::custom)?;
        Ok(CVector::from_vec(entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_json_layout() {
        let m = CMatrix::from_row_major(
            1,
            2,
            vec![C64::new(1.0, -2.0), C64::new(0.5, 0.0)],
        )
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"rows":1,"cols":2,"data":[[1.0,-2.0],[0.5,0.0]]}"#);
        let back: CMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn reader_accepts_integers_and_rejects_wrong_length() {
        let m: CMatrix = serde_json::from_str(r#"{"rows":1,"cols":1,"data":[[3,0]]}"#).unwrap();
        assert_eq!(m[(0, 0)], C64::new(3.0, 0.0));
        assert!(serde_json::from_str::<CMatrix>(r#"{"rows":2,"cols":1,"data":[[3,0]]}"#).is_err());
    }
}

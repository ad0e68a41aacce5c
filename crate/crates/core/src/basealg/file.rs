use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::BaseAlgebra;
use crate::error::{AlgebraError, Result};
use crate::exactnum::{CyclotomicField, CyclotomicNumber};
use crate::extension::Sign;

/// On-disk algebra definition.
///
/// Every coefficient is a cyclotomic coordinate array of fraction strings
/// (`["1", "-1/2"]` is 1 − ζ/2). Arrays may be longer than the field degree, in
/// which case they are reduced modulo Φ_N. `twist[j]` is the image of basis
/// vector j under φ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub n: usize,
    pub sign: i64,
    pub dim: usize,
    pub basis: Vec<String>,
    pub structure: Vec<Vec<Vec<Vec<String>>>>,
    pub unit: Vec<Vec<String>>,
    pub twist: Vec<Vec<Vec<String>>>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Malformed(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Builds the base algebra and τ^N sign. Shapes are checked; algebraic laws are not.
    pub fn build(&self) -> Result<(Arc<BaseAlgebra>, Sign)> {
        if self.n < 2 {
            return Err(AlgebraError::InvalidOrder(self.n, "algebras need N >= 2"));
        }
        let sign = Sign::try_from(self.sign)?;
        if self.basis.len() != self.dim {
            return Err(AlgebraError::Malformed(format!(
                "dim is {} but {} basis names were given",
                self.dim,
                self.basis.len()
            )));
        }
        let field = CyclotomicField::new(self.n)?;
        let coeff = |c: &Vec<String>| CyclotomicNumber::from_coord_strings(&field, c);
        let vector = |v: &Vec<Vec<String>>| v.iter().map(coeff).collect::<Result<Vec<_>>>();
        let structure = self
            .structure
            .iter()
            .map(|row| row.iter().map(vector).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = vector(&self.unit)?;
        let twist = self.twist.iter().map(vector).collect::<Result<Vec<_>>>()?;
        let base = BaseAlgebra::new(field.clone(), self.basis.clone(), structure, unit, twist)?;
        Ok((base, sign))
    }

    pub fn describe(base: &BaseAlgebra, sign: Sign) -> Self {
        let strings = |v: &[CyclotomicNumber]| v.iter().map(CyclotomicNumber::coord_strings).collect::<Vec<_>>();
        Self {
            n: base.n(),
            sign: sign.as_i64(),
            dim: base.dim(),
            basis: base.basis_names().to_vec(),
            structure: base.structure().iter().map(|row| row.iter().map(|c| strings(c)).collect()).collect(),
            unit: strings(base.unit_coords()),
            twist: base.twist_matrix().iter().map(|r| strings(r)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_round_trips_through_file() {
        let base = BaseAlgebra::cyclic_coordinate_algebra(4).unwrap();
        let file = AlgebraFile::describe(&base, Sign::Plus);
        let text = file.to_json_pretty();
        let parsed = AlgebraFile::parse(&text).unwrap();
        assert_eq!(parsed, file);
        let (rebuilt, sign) = parsed.build().unwrap();
        assert_eq!(sign, Sign::Plus);
        assert_eq!(rebuilt.structure(), base.structure());
        assert_eq!(rebuilt.twist_matrix(), base.twist_matrix());
        assert!(rebuilt.validate().is_ok());
    }

    #[test]
    fn hand_written_quaternion_file() {
        let text = r#"{
            "n": 2, "sign": -1, "dim": 2, "basis": ["1", "j"],
            "structure": [[[["1"], ["0"]], [["0"], ["1"]]],
                          [[["0"], ["1"]], [["-1"], ["0"]]]],
            "unit": [["1"], ["0"]],
            "twist": [[["1"], ["0"]], [["0"], ["-1"]]]
        }"#;
        let (base, sign) = AlgebraFile::parse(text).unwrap().build().unwrap();
        assert_eq!(sign, Sign::Minus);
        let g = BaseAlgebra::gaussian().unwrap();
        assert_eq!(base.structure(), g.structure());
        assert_eq!(base.twist_matrix(), g.twist_matrix());
    }

    #[test]
    fn long_coefficient_arrays_reduce() {
        // ζ^2 in ℚ(ζ_3) is −1 − ζ
        let base = BaseAlgebra::cyclic_coordinate_algebra(3).unwrap();
        let mut file = AlgebraFile::describe(&base, Sign::Plus);
        file.unit[0] = vec!["0".into(), "0".into(), "1".into()];
        let (rebuilt, _) = file.build().unwrap();
        assert_eq!(rebuilt.unit_coords()[0].coord_strings(), vec!["-1", "-1"]);
    }

    #[test]
    fn malformed_files_are_rejected() {
        let base = BaseAlgebra::gaussian().unwrap();
        let mut file = AlgebraFile::describe(&base, Sign::Minus);
        file.sign = 2;
        assert!(file.build().is_err());
        let mut file = AlgebraFile::describe(&base, Sign::Minus);
        file.dim = 3;
        assert!(file.build().is_err());
        let mut file = AlgebraFile::describe(&base, Sign::Minus);
        file.unit[1] = vec!["1/0".into()];
        assert!(file.build().is_err());
        assert!(AlgebraFile::parse("{\"n\": 2}").is_err());
    }
}

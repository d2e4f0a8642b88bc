//! JSON form of field descriptors:
//! `{"char":7,"ext":{"name":"w","min_poly":[1,0,1]}}`.
//!
//! `ext` may also be a list of levels, innermost first; a level's
//! coefficients may mention generators of the levels below it. An optional
//! `"var"` wraps the result in a rational-function field.

use serde::{Deserialize, Serialize};

use super::{extend_with_root, Fe, Field, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MinPolyCoeff {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtSpec {
    pub name: String,
    pub min_poly: Vec<MinPolyCoeff>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum ExtLevels {
    One(ExtSpec),
    Many(Vec<ExtSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub char: u64,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "ext_serde")]
    pub ext: Option<Vec<ExtSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
}

mod ext_serde {
    use super::{ExtLevels, ExtSpec};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<ExtSpec>>, s: S) -> Result<S::Ok, S::Error> {
        match v.as_deref() {
            None => s.serialize_none(),
            Some([one]) => one.serialize(s),
            Some(many) => many.serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<ExtSpec>>, D::Error> {
        Ok(Option::<ExtLevels>::deserialize(d)?.map(|l| match l {
            ExtLevels::One(e) => vec![e],
            ExtLevels::Many(v) => v,
        }))
    }
}

impl MinPolyCoeff {
    fn to_fe(&self, f: &Field) -> Result<Fe, FieldError> {
        match self {
            MinPolyCoeff::Int(n) => Ok(f.from_int(*n)),
            MinPolyCoeff::Text(s) => f.parse(s),
        }
    }
}

impl FieldSpec {
    pub fn prime(char: u64) -> FieldSpec {
        FieldSpec {
            char,
            ext: None,
            var: None,
        }
    }

    pub fn build(&self) -> Result<Field, FieldError> {
        let mut f = Field::prime_field(self.char)?;
        for level in self.ext.iter().flatten() {
            let coeffs = level
                .min_poly
                .iter()
                .map(|c| c.to_fe(&f))
                .collect::<Result<Vec<_>, _>>()?;
            f = extend_with_root(&f, &coeffs, &level.name)?.0;
        }
        if let Some(v) = &self.var {
            f = Field::rational_functions(&f, v)?;
        }
        Ok(f)
    }

    /// Describe an existing descriptor. Rational-function fields may only
    /// sit at the top of the tower.
    pub fn describe(field: &Field) -> Result<FieldSpec, FieldError> {
        let (core, var) = match field.function_variable() {
            Some(v) => (field.base().unwrap().clone(), Some(v.to_string())),
            None => (field.clone(), None),
        };
        let mut levels = Vec::new();
        let mut cur = core;
        while let Some(name) = cur.generator_name().map(str::to_string) {
            let base = cur.base().unwrap().clone();
            let modulus = cur.modulus_coefficients().unwrap();
            let min_poly = modulus
                .iter()
                .map(|c| {
                    let text = c.to_string();
                    match text.parse::<i64>() {
                        Ok(n) => MinPolyCoeff::Int(n),
                        Err(_) => MinPolyCoeff::Text(text),
                    }
                })
                .collect();
            levels.push(ExtSpec { name, min_poly });
            cur = base;
        }
        if cur.function_variable().is_some() {
            return Err(FieldError::Unsupported(
                "nested rational-function fields".into(),
            ));
        }
        levels.reverse();
        Ok(FieldSpec {
            char: field.characteristic(),
            ext: if levels.is_empty() {
                None
            } else {
                Some(levels)
            },
            var,
        })
    }
}

impl Field {
    pub fn from_json(v: &serde_json::Value) -> Result<Field, FieldError> {
        let spec: FieldSpec = serde_json::from_value(v.clone())
            .map_err(|e| FieldError::BadDescriptor(e.to_string()))?;
        spec.build()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FieldSpec::describe(self).expect("describable field"))
            .expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_the_documented_descriptor() {
        let f = Field::from_json(&json!({"char":7,"ext":{"name":"w","min_poly":[1,0,1]}})).unwrap();
        assert_eq!(f.order(), Some(49));
        assert_eq!(
            f.to_json(),
            json!({"char":7,"ext":{"name":"w","min_poly":[1,0,1]}})
        );
    }

    #[test]
    fn towers_and_function_fields_round_trip() {
        let v = json!({"char":2,"ext":[{"name":"w","min_poly":[1,1,1]},{"name":"v","min_poly":["w",1,1]}]});
        let f = Field::from_json(&v).unwrap();
        assert_eq!(f.order(), Some(16));
        assert_eq!(f.to_json(), v);
        let v = json!({"char":0,"var":"t"});
        let f = Field::from_json(&v).unwrap();
        assert_eq!(f.function_variable(), Some("t"));
        assert_eq!(f.to_json(), v);
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(Field::from_json(&json!({"char":9})).is_err());
        assert!(
            Field::from_json(&json!({"char":5,"ext":{"name":"w","min_poly":[1,0,1]}})).is_err()
        );
        assert!(Field::from_json(&json!({"chr":5})).is_err());
    }
}

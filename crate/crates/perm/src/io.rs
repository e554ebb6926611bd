use serde::{Deserialize, Serialize};

use crate::{Perm, PermError};

/// JSON form `{"n": 4, "values": [2, 4, 1, 3]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PermJson {
    pub n: usize,
    pub values: Vec<usize>,
}

impl TryFrom<PermJson> for Perm {
    type Error = PermError;
    fn try_from(j: PermJson) -> Result<Perm, PermError> {
        if j.n != j.values.len() {
            return Err(PermError::Parse(format!("n = {} but {} values", j.n, j.values.len())));
        }
        Perm::new(j.values)
    }
}

impl From<Perm> for PermJson {
    fn from(p: Perm) -> PermJson {
        PermJson { n: p.len(), values: p.into_values() }
    }
}

impl Perm {
    /// Reads `2 4 1 3`, `2,4,1,3`, or the digit form `2413` for sizes up to 9.
    pub fn parse(s: &str) -> Result<Perm, PermError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Perm::empty());
        }
        let spaced = s.contains(|c: char| c.is_whitespace() || c == ',');
        let v: Vec<usize> = if spaced {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| PermError::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<_, _>>()?
        } else {
            if s.len() > 9 {
                return Err(PermError::Parse("digit form only up to size 9".into()));
            }
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| PermError::Parse(format!("bad digit {c:?}"))))
                .collect::<Result<_, _>>()?
        };
        Perm::new(v)
    }

    pub fn parse_bytes(data: &[u8]) -> Result<Perm, PermError> {
        let s = std::str::from_utf8(data).map_err(|e| PermError::Parse(e.to_string()))?;
        Perm::parse(s)
    }

    pub fn from_json(s: &str) -> Result<Perm, PermError> {
        let j: PermJson = serde_json::from_str(s).map_err(|e| PermError::Parse(e.to_string()))?;
        Perm::try_from(j)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PermJson::from(self.clone())).expect("plain struct")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_forms() {
        let p = Perm::parse("2 4 1 3").unwrap();
        assert_eq!(Perm::parse("2413").unwrap(), p);
        assert_eq!(Perm::parse("2,4,1,3").unwrap(), p);
        assert_eq!(p.to_string(), "2 4 1 3");
        assert!(Perm::parse("2 4 4 3").is_err());
        assert!(Perm::parse("1234567890").is_err());
        assert!(Perm::parse("x").is_err());
        assert_eq!(Perm::parse("10 1 2 3 4 5 6 7 8 9").unwrap().len(), 10);
    }

    #[test]
    fn json_round_trip() {
        let p = Perm::parse("3 1 2").unwrap();
        assert_eq!(p.to_json(), r#"{"n":3,"values":[3,1,2]}"#);
        assert_eq!(Perm::from_json(&p.to_json()).unwrap(), p);
        assert!(Perm::from_json(r#"{"n":2,"values":[1]}"#).is_err());
        let q: Perm = serde_json::from_str(r#"{"n":2,"values":[2,1]}"#).unwrap();
        assert_eq!(q, Perm::parse("21").unwrap());
    }
}

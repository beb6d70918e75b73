use serde::{Deserialize, Serialize};

use super::types::CoxeterType;
use super::RootSystemError;

const BUILTIN: &str = include_str!("../../data/labels.json");

/// One curated label: classes of `W` whose parabolic subgroup has type
/// `subtype` and whose root-set orbit has `orbit` elements print as `label`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub w: String,
    pub subtype: String,
    pub orbit: u64,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Fingerprint-keyed labels for classes that share a Coxeter type.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct LabelMap {
    entries: Vec<LabelEntry>,
}

impl LabelMap {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("bundled label map is valid")
    }

    pub fn empty() -> Self {
        LabelMap::default()
    }

    /// Parses and validates: types must parse and no fingerprint may repeat.
    pub fn from_json(text: &str) -> Result<Self, RootSystemError> {
        let map: LabelMap = serde_json::from_str(text).map_err(|e| RootSystemError::LabelMap(e.to_string()))?;
        for (i, e) in map.entries.iter().enumerate() {
            e.w.parse::<CoxeterType>()?;
            e.subtype.parse::<CoxeterType>()?;
            if map.entries[..i].iter().any(|f| f.w == e.w && f.subtype == e.subtype && f.orbit == e.orbit) {
                return Err(RootSystemError::LabelMap(format!(
                    "duplicate fingerprint ({}, {}, {})",
                    e.w, e.subtype, e.orbit
                )));
            }
        }
        Ok(map)
    }

    pub fn entries(&self) -> &[LabelEntry] {
        &self.entries
    }

    pub fn lookup(&self, w: &CoxeterType, subtype: &CoxeterType, orbit: u64) -> Option<String> {
        let (wl, sl) = (w.label(), subtype.label());
        self.entries.iter().find(|e| e.orbit == orbit && e.w == wl && e.subtype == sl).map(|e| e.label.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_map_loads() {
        let m = LabelMap::builtin();
        assert!(m.entries().iter().any(|e| e.label == "(A1^3)'"));
    }

    #[test]
    fn duplicates_are_rejected() {
        let text = r#"{"entries":[
            {"w":"E7","subtype":"A5","orbit":1,"label":"x"},
            {"w":"E7","subtype":"A5","orbit":1,"label":"y"}]}"#;
        assert!(LabelMap::from_json(text).is_err());
    }
}

//! JSON configuration for the two families that take marked-point data.
//!
//! A config names a family and, for families 7 and 8, the marked points of
//! the fibration.  Points are given by rational strings (`"2"`, `"-1/3"`);
//! non-real points come as `{re, im}` pairs and stand for the point together
//! with its complex conjugate.  Semantic validation (real points where none
//! are allowed, coincident fibres, too few points) happens when the family
//! is built, not here.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::gauss::{parse_rat, GaussRat, Rat};

#[derive(Debug, Clone, Deserialize)]
struct RawPair {
    re: String,
    im: String,
}

#[derive(Debug, Clone, Default, Deserialize)]
struct RawPoints {
    #[serde(default)]
    real: Vec<String>,
    #[serde(default)]
    pairs: Vec<RawPair>,
}

#[derive(Debug, Clone, Deserialize)]
struct RawConfig {
    family: u8,
    #[serde(default)]
    n: Option<u32>,
    #[serde(default)]
    pairs: Option<Vec<RawPair>>,
    #[serde(default)]
    points: Option<RawPoints>,
}

/// Parsed and type-checked configuration.
#[derive(Debug, Clone)]
pub struct FamilyConfig {
    pub family: u8,
    /// Hirzebruch index for family 6; ignored elsewhere.
    pub n: Option<u32>,
    /// One representative per conjugate pair of non-real marked points.
    pub pairs: Vec<GaussRat>,
    /// Real marked points (family 8 only).
    pub reals: Vec<Rat>,
}

impl FamilyConfig {
    /// A config that names a family and nothing else.
    pub fn bare(family: u8) -> Self {
        FamilyConfig { family, n: None, pairs: Vec::new(), reals: Vec::new() }
    }

    pub fn with_n(family: u8, n: u32) -> Self {
        FamilyConfig { family, n: Some(n), pairs: Vec::new(), reals: Vec::new() }
    }
}

fn pair_value(p: &RawPair) -> Result<GaussRat> {
    Ok(GaussRat::new(parse_rat(&p.re)?, parse_rat(&p.im)?))
}

/// Parses a JSON config string.
pub fn parse_config(src: &str) -> Result<FamilyConfig> {
    let raw: RawConfig =
        serde_json::from_str(src).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    if !(1..=8).contains(&raw.family) {
        return Err(Error::InvalidConfig(format!("family {} is not in 1..=8", raw.family)));
    }
    let mut pairs = Vec::new();
    let mut reals = Vec::new();
    if let Some(ps) = &raw.pairs {
        if raw.family != 7 {
            return Err(Error::InvalidConfig("`pairs` at top level is only for family 7".into()));
        }
        for p in ps {
            pairs.push(pair_value(p)?);
        }
    }
    if let Some(pts) = &raw.points {
        if raw.family != 8 {
            return Err(Error::InvalidConfig("`points` is only for family 8".into()));
        }
        for r in &pts.real {
            reals.push(parse_rat(r)?);
        }
        for p in &pts.pairs {
            pairs.push(pair_value(p)?);
        }
    }
    match raw.family {
        7 if pairs.is_empty() => {
            return Err(Error::InvalidConfig("family 7 needs at least one non-real pair".into()));
        }
        8 if reals.is_empty() && pairs.is_empty() => {
            return Err(Error::InvalidConfig("family 8 needs marked points".into()));
        }
        _ => {}
    }
    Ok(FamilyConfig { family: raw.family, n: raw.n, pairs, reals })
}

/// Reads and parses a config file.
pub fn load_config(path: &std::path::Path) -> Result<FamilyConfig> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
    parse_config(&src)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::rat_int;

    #[test]
    fn family7_single_pair() {
        let cfg = parse_config(r#"{"family":7,"pairs":[{"re":"1","im":"1"}]}"#).unwrap();
        assert_eq!(cfg.family, 7);
        assert_eq!(cfg.pairs, vec![GaussRat::from_parts(1, 1)]);
    }

    #[test]
    fn family8_mixed_points() {
        let cfg = parse_config(
            r#"{"family":8,"points":{"real":["0","1"],"pairs":[{"re":"2","im":"1"}]}}"#,
        )
        .unwrap();
        assert_eq!(cfg.reals, vec![rat_int(0), rat_int(1)]);
        assert_eq!(cfg.pairs, vec![GaussRat::from_parts(2, 1)]);
    }

    #[test]
    fn rejects_unknown_family_and_misplaced_sections() {
        assert!(parse_config(r#"{"family":9}"#).is_err());
        assert!(parse_config(r#"{"family":4,"pairs":[{"re":"1","im":"1"}]}"#).is_err());
        assert!(parse_config(r#"{"family":7,"pairs":[]}"#).is_err());
    }
}

//! Multiplicity vectors `m = (m_3, m_4, ...)` indexing mixed trace moments.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, ExactRational};

/// Finitely supported `k ↦ m_k` with every `k ≥ 3`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct MultiplicityVector {
    m: BTreeMap<usize, usize>,
}

impl MultiplicityVector {
    pub fn new(entries: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (k, mk) in entries {
            if k < 3 {
                return Err(Error::InvalidInput(format!(
                    "multiplicity entries need k >= 3, got k = {k}"
                )));
            }
            if mk > 0 {
                *m.entry(k).or_insert(0) += mk;
            }
        }
        Ok(Self { m })
    }

    pub fn single(k: usize, mk: usize) -> Result<Self> {
        Self::new([(k, mk)])
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.m.iter().map(|(&k, &v)| (k, v))
    }

    pub fn get(&self, k: usize) -> usize {
        self.m.get(&k).copied().unwrap_or(0)
    }

    /// `N(m) = Σ k m_k`.
    pub fn total(&self) -> usize {
        self.m.iter().map(|(k, v)| k * v).sum()
    }

    /// Number of traces in the product, `Σ m_k`.
    pub fn count(&self) -> usize {
        self.m.values().sum()
    }

    /// Component sizes, ascending, with `k` repeated `m_k` times.
    pub fn sizes(&self) -> Vec<usize> {
        self.m
            .iter()
            .flat_map(|(&k, &v)| std::iter::repeat_n(k, v))
            .collect()
    }

    /// `Π m_k!`.
    pub fn symmetry_factor(&self) -> ExactRational {
        self.m.values().map(|&v| factorial(v)).product()
    }
}

impl FromStr for MultiplicityVector {
    type Err = Error;

    /// Parses `"3:2,4:1"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected k:m_k, got {part:?}")))?;
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad k in {part:?}")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity in {part:?}")))?;
            entries.push((k, v));
        }
        if entries.is_empty() {
            return Err(Error::Parse("empty multiplicity spec".into()));
        }
        Self::new(entries)
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.m.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let m: MultiplicityVector = "3:2, 4:1".parse().unwrap();
        assert_eq!(m.total(), 10);
        assert_eq!(m.count(), 3);
        assert_eq!(m.sizes(), vec![3, 3, 4]);
        assert_eq!(m.to_string(), "3:2,4:1");
        assert_eq!(m.symmetry_factor(), ExactRational::from(2i64));
        assert!("2:1".parse::<MultiplicityVector>().is_err());
        assert!("3".parse::<MultiplicityVector>().is_err());
        assert!("".parse::<MultiplicityVector>().is_err());
        assert_eq!("3:1,3:1".parse::<MultiplicityVector>().unwrap().get(3), 2);
    }
}

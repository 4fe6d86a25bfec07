//! Moral foundations and the eleven-category space used by MFD-style
//! dictionaries: five foundations crossed with virtue/vice, plus a
//! general morality category.

use std::fmt;

use serde::{Deserialize, Serialize};

/// The five moral foundations, in canonical report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoralFoundation {
    Harm,
    Fairness,
    Ingroup,
    Authority,
    Purity,
}

impl MoralFoundation {
    pub const ALL: [MoralFoundation; 5] = [
        MoralFoundation::Harm,
        MoralFoundation::Fairness,
        MoralFoundation::Ingroup,
        MoralFoundation::Authority,
        MoralFoundation::Purity,
    ];

    /// Lowercase ASCII name used in data files.
    pub fn as_str(&self) -> &'static str {
        match self {
            MoralFoundation::Harm => "harm",
            MoralFoundation::Fairness => "fairness",
            MoralFoundation::Ingroup => "ingroup",
            MoralFoundation::Authority => "authority",
            MoralFoundation::Purity => "purity",
        }
    }

    pub fn parse(s: &str) -> Option<MoralFoundation> {
        match s.to_ascii_lowercase().as_str() {
            "harm" | "care" => Some(MoralFoundation::Harm),
            "fairness" => Some(MoralFoundation::Fairness),
            "ingroup" => Some(MoralFoundation::Ingroup),
            "authority" => Some(MoralFoundation::Authority),
            "purity" => Some(MoralFoundation::Purity),
            _ => None,
        }
    }
}

impl fmt::Display for MoralFoundation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether a category describes upholding (virtue) or violating (vice)
/// its foundation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Polarity {
    Virtue,
    Vice,
}

impl Polarity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Polarity::Virtue => "Virtue",
            Polarity::Vice => "Vice",
        }
    }
}

/// One of the eleven dictionary categories: a (foundation, polarity)
/// pair or the general morality bucket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoralCategory {
    Foundation(MoralFoundation, Polarity),
    MoralityGeneral,
}

impl MoralCategory {
    /// All eleven categories in canonical id order (foundation pairs
    /// first, virtue before vice, general morality last).
    pub const ALL: [MoralCategory; 11] = [
        MoralCategory::Foundation(MoralFoundation::Harm, Polarity::Virtue),
        MoralCategory::Foundation(MoralFoundation::Harm, Polarity::Vice),
        MoralCategory::Foundation(MoralFoundation::Fairness, Polarity::Virtue),
        MoralCategory::Foundation(MoralFoundation::Fairness, Polarity::Vice),
        MoralCategory::Foundation(MoralFoundation::Ingroup, Polarity::Virtue),
        MoralCategory::Foundation(MoralFoundation::Ingroup, Polarity::Vice),
        MoralCategory::Foundation(MoralFoundation::Authority, Polarity::Virtue),
        MoralCategory::Foundation(MoralFoundation::Authority, Polarity::Vice),
        MoralCategory::Foundation(MoralFoundation::Purity, Polarity::Virtue),
        MoralCategory::Foundation(MoralFoundation::Purity, Polarity::Vice),
        MoralCategory::MoralityGeneral,
    ];

    /// Canonical CamelCase name as written in dictionary headers.
    pub fn name(&self) -> &'static str {
        match self {
            MoralCategory::Foundation(MoralFoundation::Harm, Polarity::Virtue) => "HarmVirtue",
            MoralCategory::Foundation(MoralFoundation::Harm, Polarity::Vice) => "HarmVice",
            MoralCategory::Foundation(MoralFoundation::Fairness, Polarity::Virtue) => {
                "FairnessVirtue"
            }
            MoralCategory::Foundation(MoralFoundation::Fairness, Polarity::Vice) => "FairnessVice",
            MoralCategory::Foundation(MoralFoundation::Ingroup, Polarity::Virtue) => {
                "IngroupVirtue"
            }
            MoralCategory::Foundation(MoralFoundation::Ingroup, Polarity::Vice) => "IngroupVice",
            MoralCategory::Foundation(MoralFoundation::Authority, Polarity::Virtue) => {
                "AuthorityVirtue"
            }
            MoralCategory::Foundation(MoralFoundation::Authority, Polarity::Vice) => {
                "AuthorityVice"
            }
            MoralCategory::Foundation(MoralFoundation::Purity, Polarity::Virtue) => "PurityVirtue",
            MoralCategory::Foundation(MoralFoundation::Purity, Polarity::Vice) => "PurityVice",
            MoralCategory::MoralityGeneral => "MoralityGeneral",
        }
    }

    /// Parses a category name. Case, spaces, underscores, and hyphens
    /// are ignored, so `HarmVirtue`, `harm_virtue`, and `Harm Virtue`
    /// all resolve to the same category. `MoralGeneral` is accepted as
    /// an alias seen in older dictionary headers.
    pub fn parse(s: &str) -> Option<MoralCategory> {
        let folded: String = s
            .chars()
            .filter(|c| !matches!(c, ' ' | '_' | '-'))
            .flat_map(|c| c.to_lowercase())
            .collect();
        if folded == "moralitygeneral" || folded == "moralgeneral" {
            return Some(MoralCategory::MoralityGeneral);
        }
        for cat in MoralCategory::ALL {
            if folded == cat.name().to_ascii_lowercase() {
                return Some(cat);
            }
        }
        None
    }

    /// The foundation this category belongs to; `None` for the general
    /// morality category.
    pub fn foundation(&self) -> Option<MoralFoundation> {
        match self {
            MoralCategory::Foundation(f, _) => Some(*f),
            MoralCategory::MoralityGeneral => None,
        }
    }

    pub fn polarity(&self) -> Option<Polarity> {
        match self {
            MoralCategory::Foundation(_, p) => Some(*p),
            MoralCategory::MoralityGeneral => None,
        }
    }

    /// Index into [`MoralCategory::ALL`]; also the conventional header
    /// id minus one.
    pub fn canonical_index(&self) -> usize {
        MoralCategory::ALL
            .iter()
            .position(|c| c == self)
            .expect("every category is in ALL")
    }
}

impl fmt::Display for MoralCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eleven_distinct_categories() {
        let mut seen = std::collections::BTreeSet::new();
        for cat in MoralCategory::ALL {
            seen.insert(cat);
        }
        assert_eq!(seen.len(), 11);
    }

    #[test]
    fn foundation_order_is_fixed() {
        let names: Vec<&str> = MoralFoundation::ALL.iter().map(|f| f.as_str()).collect();
        assert_eq!(
            names,
            vec!["harm", "fairness", "ingroup", "authority", "purity"]
        );
    }

    #[test]
    fn parse_accepts_spacing_variants() {
        assert_eq!(
            MoralCategory::parse("Harm Virtue"),
            Some(MoralCategory::Foundation(
                MoralFoundation::Harm,
                Polarity::Virtue
            ))
        );
        assert_eq!(
            MoralCategory::parse("morality_general"),
            Some(MoralCategory::MoralityGeneral)
        );
        assert_eq!(
            MoralCategory::parse("MoralGeneral"),
            Some(MoralCategory::MoralityGeneral)
        );
        assert_eq!(MoralCategory::parse("bogus"), None);
    }

    #[test]
    fn names_round_trip() {
        for cat in MoralCategory::ALL {
            assert_eq!(MoralCategory::parse(cat.name()), Some(cat));
        }
    }
}

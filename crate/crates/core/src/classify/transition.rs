//! Before/after comparison of two classified states.

use super::{classify, ClassifyError, EntanglementReport, FtsRank, SizeClass};
use crate::ket::Ket;

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionReport {
    pub before: EntanglementReport,
    pub after: EntanglementReport,
    pub class_change: String,
    pub susy_change: String,
    pub size_change: String,
    pub rank_change: String,
    /// Stabilizer coset reached when the FTS rank goes up.
    pub coset_change: Option<String>,
}

const UNCHANGED: &str = "unchanged";

fn coset(rank: FtsRank) -> &'static str {
    match rank {
        FtsRank::Zero | FtsRank::One => "SL(2,C)×SL(2,C)×SL(2,C)",
        FtsRank::TwoA | FtsRank::TwoB | FtsRank::TwoC => "SL(2,C)×SL(4,C)",
        FtsRank::Three | FtsRank::Four => "SL(6,C)",
    }
}

fn size_word(size: Option<SizeClass>, attractor: bool) -> String {
    match size {
        Some(SizeClass::Large) if attractor => "large (attractor)".to_string(),
        Some(SizeClass::Large) => "large".to_string(),
        Some(SizeClass::Small) => "small".to_string(),
        None => "n/a".to_string(),
    }
}

fn delta(label: &str, before: String, after: String) -> String {
    if before == after {
        format!("{label}: {UNCHANGED}")
    } else {
        format!("{label}: {before} → {after}")
    }
}

impl TransitionReport {
    pub fn from_reports(before: EntanglementReport, after: EntanglementReport) -> Self {
        let class_change = delta("class", before.class_label(), after.class_label());

        let susy_change = match (before.susy(), after.susy()) {
            (Some(b), Some(a)) if a == b => format!("SUSY: {UNCHANGED}"),
            (Some(b), Some(a)) => format!("SUSY: {b} → {}", a.phrase()),
            (b, a) => delta(
                "SUSY",
                b.map_or("n/a".to_string(), |s| s.to_string()),
                a.map_or("n/a".to_string(), |s| s.to_string()),
            ),
        };

        let size_change = delta(
            "size",
            size_word(before.size(), before.attractor()),
            size_word(after.size(), after.attractor()),
        );

        let show_rank = |r: Option<FtsRank>| r.map_or("n/a".to_string(), |r| r.to_string());
        let rank_change = delta("FTS rank", show_rank(before.fts_rank), show_rank(after.fts_rank));

        let coset_change = match (before.fts_rank, after.fts_rank) {
            (Some(b), Some(a)) if a.level() > b.level() && coset(a) != coset(b) => {
                Some(format!("coset: {} → {}", coset(b), coset(a)))
            }
            _ => None,
        };

        TransitionReport { before, after, class_change, susy_change, size_change, rank_change, coset_change }
    }

    pub fn is_unchanged(&self) -> bool {
        [&self.class_change, &self.susy_change, &self.size_change, &self.rank_change]
            .iter()
            .all(|s| s.ends_with(UNCHANGED))
    }

    /// The changed deltas joined with `; `, or `unchanged`.
    pub fn summary(&self) -> String {
        let parts: Vec<&str> = [&self.susy_change, &self.size_change, &self.rank_change]
            .into_iter()
            .filter(|s| !s.ends_with(UNCHANGED))
            .map(String::as_str)
            .chain(self.coset_change.as_deref())
            .collect();
        if parts.is_empty() {
            UNCHANGED.to_string()
        } else {
            parts.join("; ")
        }
    }
}

pub fn transition_report(before: &Ket, after: &Ket) -> Result<TransitionReport, ClassifyError> {
    Ok(TransitionReport::from_reports(classify(before)?, classify(after)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::SymbolicAmplitude;

    fn lin(terms: &[&str]) -> Ket {
        Ket::from_terms(terms[0].len(), terms.iter().map(|b| (*b, SymbolicAmplitude::integer(1)))).unwrap()
    }

    #[test]
    fn product_to_biseparable() {
        let t = transition_report(&lin(&["000"]), &lin(&["101", "110"])).unwrap();
        assert_eq!(t.susy_change, "SUSY: 1/2 → 1/4 preserved");
        assert_eq!(t.rank_change, "FTS rank: 1 → 2a");
        assert_eq!(t.size_change, "size: unchanged");
        assert_eq!(t.coset_change.as_deref(), Some("coset: SL(2,C)×SL(2,C)×SL(2,C) → SL(2,C)×SL(4,C)"));
        assert!(t.summary().contains("SUSY: 1/2 → 1/4 preserved; FTS rank: 1 → 2a"));
    }

    #[test]
    fn small_to_large() {
        let t = transition_report(&lin(&["000", "110"]), &lin(&["000", "111"])).unwrap();
        assert_eq!(t.size_change, "size: small → large (attractor)");
        assert_eq!(t.rank_change, "FTS rank: 2c → 4");
        assert_eq!(t.susy_change, "SUSY: 1/4 → 1/8 preserved or completely broken");
    }

    #[test]
    fn identical_states() {
        let x = lin(&["001", "010", "100"]);
        let t = transition_report(&x, &x).unwrap();
        assert!(t.is_unchanged());
        assert_eq!(t.summary(), "unchanged");
        assert!(t.coset_change.is_none());
    }
}

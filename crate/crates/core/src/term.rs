//! Conjunctions of literals over binary feature columns.
//!
//! A [`Term`] is the subgroup description used everywhere in the crate. Terms
//! are kept in canonical form (literals sorted by feature index, at most one
//! literal per feature) and carry a total order that doubles as the
//! tie-breaking rule between equally discrepant subgroups: fewer literals
//! first, then lexicographic over `(feature, polarity)` with positive before
//! negative.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MsdError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// `x_j = 1`
    Positive,
    /// `x_j = 0`
    Negative,
}

impl Polarity {
    #[inline]
    pub fn accepts(self, bit: bool) -> bool {
        match self {
            Polarity::Positive => bit,
            Polarity::Negative => !bit,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub feature: usize,
    pub polarity: Polarity,
}

impl Literal {
    pub fn positive(feature: usize) -> Self {
        Literal {
            feature,
            polarity: Polarity::Positive,
        }
    }

    pub fn negative(feature: usize) -> Self {
        Literal {
            feature,
            polarity: Polarity::Negative,
        }
    }
}

/// A conjunction of literals. The empty term is satisfied by every sample.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Literal>", into = "Vec<Literal>")]
pub struct Term {
    literals: Vec<Literal>,
}

impl Term {
    pub fn empty() -> Self {
        Term::default()
    }

    /// Builds a term, rejecting two literals on the same feature.
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self> {
        let mut literals: Vec<Literal> = literals.into_iter().collect();
        literals.sort();
        for pair in literals.windows(2) {
            if pair[0].feature == pair[1].feature {
                return Err(MsdError::InvalidTerm(format!(
                    "feature {} appears more than once",
                    pair[0].feature
                )));
            }
        }
        Ok(Term { literals })
    }

    pub(crate) fn from_sorted_unchecked(literals: Vec<Literal>) -> Self {
        debug_assert!(literals.windows(2).all(|w| w[0].feature < w[1].feature));
        Term { literals }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// Largest feature index referenced, if any.
    pub fn max_feature(&self) -> Option<usize> {
        self.literals.last().map(|l| l.feature)
    }

    pub fn polarity_of(&self, feature: usize) -> Option<Polarity> {
        self.literals
            .binary_search_by_key(&feature, |l| l.feature)
            .ok()
            .map(|i| self.literals[i].polarity)
    }

    /// Evaluates the conjunction on a sample given by a bit accessor.
    pub fn matches_with(&self, bit: impl Fn(usize) -> bool) -> bool {
        self.literals
            .iter()
            .all(|l| l.polarity.accepts(bit(l.feature)))
    }

    pub fn matches(&self, bits: &[bool]) -> bool {
        self.matches_with(|j| bits[j])
    }

    /// `true` when every literal of `self` is also in `other`.
    pub fn is_subset_of(&self, other: &Term) -> bool {
        self.literals
            .iter()
            .all(|l| other.polarity_of(l.feature) == Some(l.polarity))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.literals
            .len()
            .cmp(&other.literals.len())
            .then_with(|| self.literals.cmp(&other.literals))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<Literal>> for Term {
    type Error = MsdError;

    fn try_from(value: Vec<Literal>) -> Result<Self> {
        Term::new(value)
    }
}

impl From<Term> for Vec<Literal> {
    fn from(term: Term) -> Self {
        term.literals
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("TRUE");
        }
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" AND ")?;
            }
            let value = match l.polarity {
                Polarity::Positive => 1,
                Polarity::Negative => 0,
            };
            write!(f, "f{} = {}", l.feature, value)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_feature() {
        let err = Term::new([Literal::positive(1), Literal::negative(1)]).unwrap_err();
        assert!(matches!(err, MsdError::InvalidTerm(_)));
    }

    #[test]
    fn canonical_order_is_fewest_literals_then_lexicographic() {
        let a = Term::new([Literal::positive(3)]).unwrap();
        let b = Term::new([Literal::positive(0), Literal::positive(1)]).unwrap();
        let c = Term::new([Literal::negative(0)]).unwrap();
        let d = Term::new([Literal::positive(0)]).unwrap();
        let mut v = vec![b.clone(), a.clone(), c.clone(), d.clone(), Term::empty()];
        v.sort();
        assert_eq!(v, vec![Term::empty(), d, c, a, b]);
    }

    #[test]
    fn literals_are_sorted_on_construction() {
        let t = Term::new([Literal::negative(4), Literal::positive(2)]).unwrap();
        assert_eq!(
            t.literals(),
            &[Literal::positive(2), Literal::negative(4)][..]
        );
    }

    #[test]
    fn empty_term_matches_everything() {
        assert!(Term::empty().matches(&[]));
        assert!(Term::empty().matches(&[true, false]));
    }

    #[test]
    fn evaluation() {
        let t = Term::new([Literal::positive(0), Literal::negative(2)]).unwrap();
        assert!(t.matches(&[true, true, false]));
        assert!(!t.matches(&[true, true, true]));
        assert!(!t.matches(&[false, false, false]));
    }

    #[test]
    fn serde_roundtrip_validates() {
        let t = Term::new([Literal::positive(0), Literal::negative(2)]).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: Term = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        let bad = r#"[{"feature":1,"polarity":"positive"},{"feature":1,"polarity":"negative"}]"#;
        assert!(serde_json::from_str::<Term>(bad).is_err());
    }
}

//! Finite pseudo-ordered sets.
//!
//! A pseudo-order is reflexive and antisymmetric but, unlike a partial
//! order, need not be transitive. Chains of relation steps therefore
//! carry information of their own: `reachable` tracks them, and a set of
//! elements may form a cycle, something impossible in a poset.

use std::fmt;

use thiserror::Error;

/// Index of an element inside a [`Psoset`]'s label list.
pub type Elem = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PsosetError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("antisymmetry violated: `{0}` and `{1}` are related in both directions")]
    Antisymmetry(String, String),
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation table has {got} entries, expected {expected}")]
    BadTableSize { expected: usize, got: usize },
}

/// Per-element transitivity classification.
///
/// An element can behave transitively as the lower end, upper end or
/// midpoint of three-element chains through it; `full` collects the
/// elements that do all three.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityReport {
    /// x ⊴ y ⊴ a implies x ⊴ a.
    pub left: Vec<Elem>,
    /// a ⊴ x ⊴ y implies a ⊴ y.
    pub right: Vec<Elem>,
    /// x ⊴ a ⊴ y implies x ⊴ y.
    pub middle: Vec<Elem>,
    /// Intersection of the other three.
    pub full: Vec<Elem>,
}

/// A finite set with a reflexive antisymmetric relation.
///
/// The relation is stored as a dense boolean table; reachability (the
/// chain closure of the relation) and strongly connected components of
/// the strict part are precomputed since every value is immutable after
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Psoset {
    labels: Vec<String>,
    rel: Vec<bool>,
    reach: Vec<bool>,
}

impl Psoset {
    /// Builds a psoset from labels and strict pairs `(x, y)` meaning x ◁ y.
    ///
    /// The stored relation is the reflexive closure of the given pairs.
    pub fn build(labels: &[&str], strict_pairs: &[(&str, &str)]) -> Result<Self, PsosetError> {
        let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let n = owned.len();
        for (i, l) in owned.iter().enumerate() {
            if owned[..i].contains(l) {
                return Err(PsosetError::DuplicateLabel(l.clone()));
            }
        }
        let index_of = |name: &str| -> Result<usize, PsosetError> {
            owned
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| PsosetError::UnknownElement(name.to_string()))
        };
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for &(x, y) in strict_pairs {
            let (i, j) = (index_of(x)?, index_of(y)?);
            if i == j {
                // x < x contradicts strictness; treat as a both-ways relation
                return Err(PsosetError::Antisymmetry(x.to_string(), y.to_string()));
            }
            rel[i * n + j] = true;
        }
        Self::from_relation(owned, rel)
    }

    /// Builds a psoset from an explicit n×n relation table (row-major).
    pub fn from_relation(labels: Vec<String>, rel: Vec<bool>) -> Result<Self, PsosetError> {
        let n = labels.len();
        if rel.len() != n * n {
            return Err(PsosetError::BadTableSize {
                expected: n * n,
                got: rel.len(),
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(PsosetError::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..n {
            if !rel[i * n + i] {
                return Err(PsosetError::NotReflexive(labels[i].clone()));
            }
            for j in (i + 1)..n {
                if rel[i * n + j] && rel[j * n + i] {
                    return Err(PsosetError::Antisymmetry(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let reach = chain_closure(n, &rel);
        Ok(Psoset { labels, rel, reach })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == name)
    }

    /// x ⊴ y in the direct relation.
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.rel[x * self.len() + y]
    }

    /// x ◁ y: related and distinct.
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    /// Neither x ⊴ y nor y ⊴ x.
    pub fn incomparable(&self, x: Elem, y: Elem) -> bool {
        !self.leq(x, y) && !self.leq(y, x)
    }

    /// All strict pairs (x, y) with x ◁ y, in row-major order.
    pub fn strict_pairs(&self) -> Vec<(Elem, Elem)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// True iff a chain x ⊴ c₁ ⊴ … ⊴ cₖ ⊴ y exists, k ≥ 0.
    ///
    /// A direct relation counts as the empty chain, so this is the
    /// reflexive-transitive closure of the relation.
    pub fn reachable(&self, x: Elem, y: Elem) -> bool {
        self.reach[x * self.len() + y]
    }

    /// Elements lying on at least one cycle.
    ///
    /// A subset is a cycle when its members are mutually chain-reachable
    /// through the subset, so an element is on one exactly when its
    /// strongly connected component in the strict digraph has size ≥ 2,
    /// i.e. some other element is reachable in both directions.
    pub fn cycle_members(&self) -> Vec<Elem> {
        (0..self.len()).filter(|&e| self.on_cycle(e)).collect()
    }

    pub fn on_cycle(&self, e: Elem) -> bool {
        (0..self.len()).any(|x| x != e && self.reachable(e, x) && self.reachable(x, e))
    }

    /// Greatest lower bound of {x, y} under the direct relation, if any.
    ///
    /// Scans the common lower bounds for one that dominates them all;
    /// antisymmetry makes it unique when it exists.
    pub fn meet(&self, x: Elem, y: Elem) -> Option<Elem> {
        let bounds: Vec<Elem> = (0..self.len())
            .filter(|&z| self.leq(z, x) && self.leq(z, y))
            .collect();
        bounds
            .iter()
            .copied()
            .find(|&w| bounds.iter().all(|&z| self.leq(z, w)))
    }

    /// Least upper bound of {x, y} under the direct relation, if any.
    pub fn join(&self, x: Elem, y: Elem) -> Option<Elem> {
        let bounds: Vec<Elem> = (0..self.len())
            .filter(|&z| self.leq(x, z) && self.leq(y, z))
            .collect();
        bounds
            .iter()
            .copied()
            .find(|&w| bounds.iter().all(|&z| self.leq(w, z)))
    }

    pub fn is_left_transitive(&self, a: Elem) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| !(self.leq(x, y) && self.leq(y, a)) || self.leq(x, a)))
    }

    pub fn is_right_transitive(&self, a: Elem) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| !(self.leq(a, x) && self.leq(x, y)) || self.leq(a, y)))
    }

    pub fn is_middle_transitive(&self, a: Elem) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| !(self.leq(x, a) && self.leq(a, y)) || self.leq(x, y)))
    }

    /// Classifies every element by the chains it closes transitively.
    pub fn transitivity_report(&self) -> TransitivityReport {
        let n = self.len();
        let left: Vec<Elem> = (0..n).filter(|&a| self.is_left_transitive(a)).collect();
        let right: Vec<Elem> = (0..n).filter(|&a| self.is_right_transitive(a)).collect();
        let middle: Vec<Elem> = (0..n).filter(|&a| self.is_middle_transitive(a)).collect();
        let full: Vec<Elem> = (0..n)
            .filter(|&a| left.contains(&a) && right.contains(&a) && middle.contains(&a))
            .collect();
        TransitivityReport {
            left,
            right,
            middle,
            full,
        }
    }

    /// True when the relation itself is transitive, i.e. the psoset is a poset.
    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| !(self.leq(x, y) && self.leq(y, z)) || self.leq(x, z))
            })
        })
    }

    /// Renders a set of elements with the psoset's labels.
    pub fn label_set(&self, elems: &[Elem]) -> Vec<String> {
        elems.iter().map(|&e| self.labels[e].clone()).collect()
    }
}

impl fmt::Display for Psoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psoset on {{{}}}", self.labels.join(", "))
    }
}

/// Floyd-Warshall closure of the relation; the relation is reflexive so
/// this is also the reflexive-transitive closure.
fn chain_closure(n: usize, rel: &[bool]) -> Vec<bool> {
    let mut reach = rel.to_vec();
    for k in 0..n {
        for i in 0..n {
            if reach[i * n + k] {
                for j in 0..n {
                    if reach[k * n + j] {
                        reach[i * n + j] = true;
                    }
                }
            }
        }
    }
    reach
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Psoset {
        Psoset::build(&["0", "m", "1"], &[("0", "m"), ("m", "1"), ("0", "1")]).unwrap()
    }

    fn four_cycle() -> Psoset {
        Psoset::build(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
            .unwrap()
    }

    #[test]
    fn four_cycle_is_a_valid_psoset_with_b_unrelated_to_d() {
        let p = four_cycle();
        let (b, d) = (p.index_of("b").unwrap(), p.index_of("d").unwrap());
        assert!(!p.leq(b, d));
        assert!(!p.leq(d, b));
        assert!(p.incomparable(b, d));
    }

    #[test]
    fn two_way_pair_is_rejected() {
        let err = Psoset::build(&["p", "q"], &[("p", "q"), ("q", "p")]).unwrap_err();
        assert_eq!(err, PsosetError::Antisymmetry("p".into(), "q".into()));
    }

    #[test]
    fn singleton_has_only_the_reflexive_pair() {
        let p = Psoset::build(&["x"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.leq(0, 0));
        assert!(p.strict_pairs().is_empty());
    }

    #[test]
    fn duplicate_and_unknown_labels_are_rejected() {
        assert_eq!(
            Psoset::build(&["x", "x"], &[]).unwrap_err(),
            PsosetError::DuplicateLabel("x".into())
        );
        assert_eq!(
            Psoset::build(&["x"], &[("x", "y")]).unwrap_err(),
            PsosetError::UnknownElement("y".into())
        );
    }

    #[test]
    fn reachability_follows_chains_past_missing_relations() {
        let p = four_cycle();
        let (b, d) = (p.index_of("b").unwrap(), p.index_of("d").unwrap());
        assert!(p.reachable(b, d), "b ⊴ c ⊴ d");
        assert!(!p.leq(b, d));
        for e in 0..p.len() {
            assert!(p.reachable(e, e));
        }
    }

    #[test]
    fn chains_do_not_reach_downward() {
        let p = chain3();
        assert!(!p.reachable(2, 0));
        assert!(p.reachable(0, 2));
    }

    #[test]
    fn cycle_members_of_the_four_cycle_is_everything() {
        let p = four_cycle();
        assert_eq!(p.cycle_members(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn chains_have_no_cycles() {
        assert!(chain3().cycle_members().is_empty());
    }

    #[test]
    fn meet_and_join_on_a_chain() {
        let p = chain3();
        let (z, m, o) = (0, 1, 2);
        assert_eq!(p.meet(m, o), Some(m));
        assert_eq!(p.join(z, m), Some(m));
        assert_eq!(p.meet(z, o), Some(z));
        assert_eq!(p.join(z, o), Some(o));
    }

    #[test]
    fn join_absent_when_upper_bounds_have_no_least_element() {
        // two incomparable minimal upper bounds r, s over p, q
        let p = Psoset::build(
            &["0", "p", "q", "r", "s", "1"],
            &[
                ("0", "p"),
                ("0", "q"),
                ("0", "r"),
                ("0", "s"),
                ("0", "1"),
                ("p", "r"),
                ("p", "s"),
                ("q", "r"),
                ("q", "s"),
                ("p", "1"),
                ("q", "1"),
                ("r", "1"),
                ("s", "1"),
            ],
        )
        .unwrap();
        let (pi, qi) = (p.index_of("p").unwrap(), p.index_of("q").unwrap());
        assert_eq!(p.join(pi, qi), None);
        assert_eq!(p.meet(pi, qi), Some(0));
    }

    #[test]
    fn every_chain_element_is_fully_transitive() {
        let rep = chain3().transitivity_report();
        assert_eq!(rep.full, vec![0, 1, 2]);
    }

    #[test]
    fn cycle_breaks_left_transitivity_of_b() {
        let p = four_cycle();
        let rep = p.transitivity_report();
        let (a, b, d) = (0, 1, 3);
        // d ⊴ a ⊴ b but d ⋬ b
        assert!(p.leq(d, a) && p.leq(a, b) && !p.leq(d, b));
        assert!(!rep.left.contains(&b));
    }

    #[test]
    fn transitive_relation_detection() {
        assert!(chain3().is_transitive());
        assert!(!four_cycle().is_transitive());
    }
}

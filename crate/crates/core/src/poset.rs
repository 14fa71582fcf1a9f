//! Finite labeled posets of prime families and the inclusion-preserving
//! bijection check used for spectrum comparisons.

use std::collections::BTreeMap;

/// How many primes a node stands for.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CardinalityClass {
    Singleton,
    FamilyOverKStar,
    FamilyOverK,
    /// The spectrum of a Laurent ring of the given center rank ≥ 2, not
    /// expanded into individual nodes.
    OpaqueSpec(usize),
}

impl CardinalityClass {
    pub fn as_str(&self) -> String {
        match self {
            CardinalityClass::Singleton => "singleton".into(),
            CardinalityClass::FamilyOverKStar => "family-over-kx".into(),
            CardinalityClass::FamilyOverK => "family-over-k".into(),
            CardinalityClass::OpaqueSpec(r) => format!("opaque-spec({r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetNode {
    /// Which variables are *not* in the primes of this node.
    pub support: Vec<usize>,
    /// Height within its stratum (0 = the stratum's minimal prime).
    pub height: u32,
    pub class: CardinalityClass,
    /// Human-readable generator list, e.g. "<x2, x1 - a>".
    pub label: String,
    /// Whether the node consists of (Poisson-)primitive ideals.
    pub primitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumPoset {
    pub nodes: Vec<PosetNode>,
    /// Strict order closure: order[a][b] ⇔ node a < node b (a's primes are
    /// contained in b's).
    pub order: Vec<Vec<bool>>,
}

impl SpectrumPoset {
    /// Builds the poset from a set of covering edges (a < b), closing
    /// transitively.
    pub fn from_edges(nodes: Vec<PosetNode>, edges: &[(usize, usize)]) -> SpectrumPoset {
        let n = nodes.len();
        let mut order = vec![vec![false; n]; n];
        for &(a, b) in edges {
            assert!(a < n && b < n && a != b);
            order[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if order[a][k] && order[k][b] {
                        order[a][b] = true;
                    }
                }
            }
        }
        for (a, row) in order.iter().enumerate() {
            assert!(!row[a], "order must be acyclic");
        }
        SpectrumPoset { nodes, order }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Covering edges (the transitive reduction of the order).
    pub fn reduction(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if !self.order[a][b] {
                    continue;
                }
                let covered = (0..n).any(|k| self.order[a][k] && self.order[k][b]);
                if !covered {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Indices of nodes below every other node (at most one in our posets).
    pub fn generic_points(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&a| (0..n).all(|b| b == a || self.order[a][b]))
            .collect()
    }

    /// Restriction to the primitive nodes (the prim / P.prim poset).
    pub fn primitive_part(&self) -> SpectrumPoset {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.nodes[i].primitive).collect();
        let nodes = keep.iter().map(|&i| self.nodes[i].clone()).collect();
        let order = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| self.order[a][b]).collect())
            .collect();
        SpectrumPoset { nodes, order }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    /// mapping[i] = index in the second poset matched to node i of the first
    Iso(Vec<usize>),
    Mismatch(String),
}

fn class_multiset(p: &SpectrumPoset) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for node in &p.nodes {
        *m.entry(node.class.as_str()).or_insert(0) += 1;
    }
    m
}

/// Searches for a bijection of nodes preserving the order in both directions
/// and the cardinality-class labels.
pub fn poset_isomorphic(p1: &SpectrumPoset, p2: &SpectrumPoset) -> MatchOutcome {
    if p1.len() != p2.len() {
        return MatchOutcome::Mismatch(format!(
            "node counts differ: {} vs {}",
            p1.len(),
            p2.len()
        ));
    }
    let g1 = p1.generic_points().len();
    let g2 = p2.generic_points().len();
    if g1 != g2 {
        return MatchOutcome::Mismatch(format!(
            "generic point present on one side only ({g1} vs {g2})"
        ));
    }
    let c1 = class_multiset(p1);
    let c2 = class_multiset(p2);
    if c1 != c2 {
        return MatchOutcome::Mismatch(format!(
            "cardinality-class multisets differ: {c1:?} vs {c2:?}"
        ));
    }
    let n = p1.len();
    // node invariants prune the search
    let profile = |p: &SpectrumPoset, i: usize| {
        let below = (0..n).filter(|&k| p.order[k][i]).count();
        let above = (0..n).filter(|&k| p.order[i][k]).count();
        (p.nodes[i].class.clone(), below, above)
    };
    let prof1: Vec<_> = (0..n).map(|i| profile(p1, i)).collect();
    let prof2: Vec<_> = (0..n).map(|i| profile(p2, i)).collect();
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        i: usize,
        n: usize,
        p1: &SpectrumPoset,
        p2: &SpectrumPoset,
        prof1: &[(CardinalityClass, usize, usize)],
        prof2: &[(CardinalityClass, usize, usize)],
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == n {
            return true;
        }
        for j in 0..n {
            if used[j] || prof1[i] != prof2[j] {
                continue;
            }
            let consistent = (0..i).all(|k| {
                p1.order[k][i] == p2.order[mapping[k]][j] && p1.order[i][k] == p2.order[j][mapping[k]]
            });
            if !consistent {
                continue;
            }
            mapping[i] = j;
            used[j] = true;
            if search(i + 1, n, p1, p2, prof1, prof2, mapping, used) {
                return true;
            }
            used[j] = false;
            mapping[i] = usize::MAX;
        }
        false
    }
    if search(0, n, p1, p2, &prof1, &prof2, &mut mapping, &mut used) {
        MatchOutcome::Iso(mapping)
    } else {
        MatchOutcome::Mismatch("no order-preserving labeled bijection exists".into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(class: CardinalityClass, label: &str, primitive: bool) -> PosetNode {
        PosetNode { support: vec![], height: 0, class, label: label.into(), primitive }
    }

    #[test]
    fn identity_iso() {
        let p = SpectrumPoset::from_edges(
            vec![
                node(CardinalityClass::Singleton, "<0>", true),
                node(CardinalityClass::Singleton, "<x>", false),
                node(CardinalityClass::FamilyOverKStar, "<x, y - a>", true),
            ],
            &[(0, 1), (1, 2)],
        );
        match poset_isomorphic(&p, &p) {
            MatchOutcome::Iso(m) => assert_eq!(m, vec![0, 1, 2]),
            MatchOutcome::Mismatch(w) => panic!("unexpected mismatch: {w}"),
        }
    }

    #[test]
    fn generic_point_mismatch() {
        let with_generic = SpectrumPoset::from_edges(
            vec![
                node(CardinalityClass::Singleton, "<0>", true),
                node(CardinalityClass::Singleton, "<x>", true),
            ],
            &[(0, 1)],
        );
        let without = SpectrumPoset::from_edges(
            vec![
                node(CardinalityClass::Singleton, "<x>", true),
                node(CardinalityClass::Singleton, "<y>", true),
            ],
            &[],
        );
        match poset_isomorphic(&with_generic, &without) {
            MatchOutcome::Mismatch(w) => assert!(w.contains("generic point")),
            MatchOutcome::Iso(_) => panic!("expected mismatch"),
        }
    }

    #[test]
    fn label_multiset_mismatch() {
        let a = SpectrumPoset::from_edges(
            vec![node(CardinalityClass::Singleton, "<0>", true)],
            &[],
        );
        let b = SpectrumPoset::from_edges(
            vec![node(CardinalityClass::FamilyOverK, "<x - a>", true)],
            &[],
        );
        match poset_isomorphic(&a, &b) {
            MatchOutcome::Mismatch(w) => assert!(w.contains("class")),
            MatchOutcome::Iso(_) => panic!("expected mismatch"),
        }
    }

    #[test]
    fn order_shape_matters() {
        // a chain of 3 vs a V: same labels, different order
        let chain = SpectrumPoset::from_edges(
            vec![
                node(CardinalityClass::Singleton, "a", true),
                node(CardinalityClass::Singleton, "b", true),
                node(CardinalityClass::Singleton, "c", true),
            ],
            &[(0, 1), (1, 2)],
        );
        let vee = SpectrumPoset::from_edges(
            vec![
                node(CardinalityClass::Singleton, "a", true),
                node(CardinalityClass::Singleton, "b", true),
                node(CardinalityClass::Singleton, "c", true),
            ],
            &[(0, 1), (0, 2)],
        );
        assert!(matches!(poset_isomorphic(&chain, &vee), MatchOutcome::Mismatch(_)));
    }

    #[test]
    fn reduction_strips_transitive_edges() {
        let p = SpectrumPoset::from_edges(
            vec![
                node(CardinalityClass::Singleton, "a", true),
                node(CardinalityClass::Singleton, "b", true),
                node(CardinalityClass::Singleton, "c", true),
            ],
            &[(0, 1), (1, 2), (0, 2)],
        );
        assert_eq!(p.reduction(), vec![(0, 1), (1, 2)]);
    }
}

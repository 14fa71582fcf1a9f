//! The multiplicative group of deformation parameters (free abelian part
//! plus torsion) and the group algebra over the symbol field.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::field::FieldElement;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamGroup {
    free_names: Vec<String>,
    torsion_orders: Vec<i64>,
}

impl ParamGroup {
    pub fn new(free_names: Vec<String>, torsion_orders: Vec<i64>) -> ParamGroup {
        let mut seen = std::collections::HashSet::new();
        for n in &free_names {
            assert!(seen.insert(n.clone()), "duplicate generator name {n}");
        }
        assert!(torsion_orders.iter().all(|&l| l >= 2), "torsion orders must be >= 2");
        ParamGroup { free_names, torsion_orders }
    }

    pub fn free_rank(&self) -> usize {
        self.free_names.len()
    }

    pub fn free_names(&self) -> &[String] {
        &self.free_names
    }

    pub fn free_index(&self, name: &str) -> Option<usize> {
        self.free_names.iter().position(|n| n == name)
    }

    pub fn torsion_orders(&self) -> &[i64] {
        &self.torsion_orders
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_orders.is_empty()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            exponents: vec![0; self.free_rank()],
            torsion_exponents: vec![0; self.torsion_orders.len()],
        }
    }

    pub fn free_generator(&self, i: usize) -> GroupElement {
        let mut g = self.identity();
        g.exponents[i] = 1;
        g
    }

    pub fn torsion_generator(&self, k: usize) -> GroupElement {
        let mut g = self.identity();
        g.torsion_exponents[k] = 1;
        g
    }

    pub fn element(&self, exponents: Vec<i64>, torsion_exponents: Vec<i64>) -> GroupElement {
        assert_eq!(exponents.len(), self.free_rank());
        assert_eq!(torsion_exponents.len(), self.torsion_orders.len());
        let torsion_exponents = torsion_exponents
            .into_iter()
            .zip(&self.torsion_orders)
            .map(|(e, &l)| e.rem_euclid(l))
            .collect();
        GroupElement { exponents, torsion_exponents }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.element(
            a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect(),
            a.torsion_exponents
                .iter()
                .zip(&b.torsion_exponents)
                .map(|(x, y)| x + y)
                .collect(),
        )
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        self.element(
            a.exponents.iter().map(|x| -x).collect(),
            a.torsion_exponents.iter().map(|x| -x).collect(),
        )
    }

    pub fn pow(&self, a: &GroupElement, e: i64) -> GroupElement {
        self.element(
            a.exponents.iter().map(|x| x * e).collect(),
            a.torsion_exponents.iter().map(|x| x * e).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub exponents: Vec<i64>,
    pub torsion_exponents: Vec<i64>,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0) && self.torsion_exponents.iter().all(|&e| e == 0)
    }

    pub fn display(&self, group: &ParamGroup) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (name, &e) in group.free_names.iter().zip(&self.exponents) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        for (k, &e) in self.torsion_exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("s{k}")),
                _ => parts.push(format!("s{k}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_owned()
        } else {
            parts.join("*")
        }
    }
}

/// An element of the group algebra: a finite sum of group elements with
/// nonzero field coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupScalar {
    group: Arc<ParamGroup>,
    terms: BTreeMap<GroupElement, FieldElement>,
}

impl GroupScalar {
    pub fn zero_in(group: Arc<ParamGroup>) -> GroupScalar {
        GroupScalar { group, terms: BTreeMap::new() }
    }

    pub fn one_in(group: Arc<ParamGroup>) -> GroupScalar {
        let id = group.identity();
        let mut terms = BTreeMap::new();
        terms.insert(id, FieldElement::one());
        GroupScalar { group, terms }
    }

    pub fn monomial(group: Arc<ParamGroup>, g: GroupElement, c: FieldElement) -> GroupScalar {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(g, c);
        }
        GroupScalar { group, terms }
    }

    pub fn group(&self) -> &Arc<ParamGroup> {
        &self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &FieldElement)> {
        self.terms.iter()
    }

    /// True when the scalar is a single group element times a nonzero
    /// coefficient — the invertible shape required of swap coefficients.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, g: GroupElement, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
}

impl fmt::Display for GroupScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                if g.is_identity() {
                    format!("{c}")
                } else if c.is_one() {
                    g.display(&self.group)
                } else {
                    format!("{}*{}", c, g.display(&self.group))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Scalar for GroupScalar {
    fn one_of(&self) -> Self {
        GroupScalar::one_in(self.group.clone())
    }

    fn zero_of(&self) -> Self {
        GroupScalar::zero_in(self.group.clone())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(g, c)| g.is_identity() && c.is_one())
                .unwrap_or(false)
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    fn neg(&self) -> Self {
        GroupScalar {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = GroupScalar::zero_in(self.group.clone());
        for (g1, c1) in &self.terms {
            for (g2, c2) in &rhs.terms {
                out.add_term(self.group.mul(g1, g2), c1.mul(c2));
            }
        }
        out
    }

    fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (g, c) = self.terms.iter().next().unwrap();
        Some(GroupScalar::monomial(
            self.group.clone(),
            self.group.inv(g),
            c.inv(),
        ))
    }
}

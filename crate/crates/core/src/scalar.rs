//! The coefficient-ring interface shared by the rewriting engine: plain
//! field elements, group-algebra scalars, and dual numbers all implement it.
//!
//! Constants are derived from an existing value (`one_of`, `zero_of`)
//! because group-algebra scalars carry their parameter group with them.

use std::fmt::{Debug, Display};

pub trait Scalar: Clone + PartialEq + Eq + Debug + Display {
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse when one exists in the ring.
    fn inv(&self) -> Option<Self>;
    /// The ring's one, in the same context as `self`.
    fn one_of(&self) -> Self;

    fn zero_of(&self) -> Self {
        self.sub(self)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn is_one(&self) -> bool {
        *self == self.one_of()
    }
}

impl Scalar for crate::field::FieldElement {
    fn is_zero(&self) -> bool {
        crate::field::FieldElement::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Option<Self> {
        if crate::field::FieldElement::is_zero(self) {
            None
        } else {
            Some(crate::field::FieldElement::inv(self))
        }
    }
    fn one_of(&self) -> Self {
        crate::field::FieldElement::one()
    }
}

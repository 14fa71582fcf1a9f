//! Dual numbers over the symbol field: value plus first derivative, with
//! the deformation symbol squaring to zero.

use std::fmt;

use crate::field::FieldElement;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualScalar {
    pub value: FieldElement,
    pub deriv: FieldElement,
}

impl DualScalar {
    pub fn new(value: FieldElement, deriv: FieldElement) -> DualScalar {
        DualScalar { value, deriv }
    }

    pub fn constant(value: FieldElement) -> DualScalar {
        DualScalar { value, deriv: FieldElement::zero() }
    }

    pub fn zero() -> DualScalar {
        DualScalar::constant(FieldElement::zero())
    }

    pub fn one() -> DualScalar {
        DualScalar::constant(FieldElement::one())
    }

    /// The deformation symbol ε, with ε² = 0.
    pub fn epsilon() -> DualScalar {
        DualScalar::new(FieldElement::zero(), FieldElement::one())
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deriv.is_zero() {
            write!(f, "{}", self.value)
        } else if self.value.is_zero() {
            write!(f, "{}*eps", self.deriv)
        } else {
            write!(f, "{} + {}*eps", self.value, self.deriv)
        }
    }
}

impl Scalar for DualScalar {
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.deriv.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        DualScalar::new(&self.value + &rhs.value, &self.deriv + &rhs.deriv)
    }

    fn neg(&self) -> Self {
        DualScalar::new(-&self.value, -&self.deriv)
    }

    fn mul(&self, rhs: &Self) -> Self {
        DualScalar::new(
            &self.value * &rhs.value,
            &(&self.value * &rhs.deriv) + &(&self.deriv * &rhs.value),
        )
    }

    fn inv(&self) -> Option<Self> {
        if self.value.is_zero() {
            return None;
        }
        let vi = self.value.inv();
        // (a + b·ε)⁻¹ = 1/a − (b/a²)·ε
        Some(DualScalar::new(vi.clone(), -&(&(&vi * &vi) * &self.deriv)))
    }

    fn one_of(&self) -> Self {
        DualScalar::one()
    }
}

//! Exact coefficient arithmetic: multivariate polynomials over the rationals
//! in declared transcendental symbols, and the field of fractions built on
//! them. All values are canonical, so equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

static SYMBOLS: Lazy<Mutex<Vec<String>>> = Lazy::new(|| Mutex::new(Vec::new()));

/// An interned transcendental symbol (e.g. `a` standing in for an
/// irrational scalar). Symbols are process-global.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub usize);

impl Symbol {
    pub fn name(self) -> String {
        SYMBOLS.lock().unwrap()[self.0].clone()
    }
}

/// Interns `name`, returning the same id on repeated calls.
pub fn symbol(name: &str) -> Symbol {
    let mut table = SYMBOLS.lock().unwrap();
    if let Some(i) = table.iter().position(|s| s == name) {
        Symbol(i)
    } else {
        table.push(name.to_owned());
        Symbol(table.len() - 1)
    }
}

/// Exponent vector indexed by symbol id, trailing zeros trimmed.
/// With that invariant, the derived `Ord` (lexicographic on entries) agrees
/// with padded lexicographic comparison.
pub type SymMonomial = Vec<u32>;

fn trim(mut m: SymMonomial) -> SymMonomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &SymMonomial, b: &SymMonomial) -> SymMonomial {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, e) in a.iter().enumerate() {
        out[i] += e;
    }
    for (i, e) in b.iter().enumerate() {
        out[i] += e;
    }
    trim(out)
}

fn mono_divides(a: &SymMonomial, b: &SymMonomial) -> bool {
    a.iter().enumerate().all(|(i, e)| b.get(i).copied().unwrap_or(0) >= *e)
}

fn mono_div(b: &SymMonomial, a: &SymMonomial) -> SymMonomial {
    let mut out = b.clone();
    for (i, e) in a.iter().enumerate() {
        out[i] -= e;
    }
    trim(out)
}

/// A multivariate polynomial over ℚ in the interned symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymPoly {
    /// Invariant: no zero coefficients, monomials trailing-zero trimmed.
    terms: std::collections::BTreeMap<SymMonomial, BigRational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        SymPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = SymPoly::default();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn from_int(n: i64) -> Self {
        SymPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn sym(s: Symbol) -> Self {
        let mut m = vec![0u32; s.0 + 1];
        m[s.0] = 1;
        let mut p = SymPoly::default();
        p.terms.insert(m, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.get(&Vec::new()).cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: SymMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Leading term under the monomial order (largest key).
    pub fn leading(&self) -> Option<(&SymMonomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigRational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Highest symbol id appearing, if any.
    fn main_var(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max().filter(|&n| n > 0).map(|n| n - 1)
    }

    /// View as a univariate polynomial in symbol `v` with SymPoly coefficients.
    fn coeffs_in(&self, v: usize) -> Vec<SymPoly> {
        let deg = self
            .terms
            .keys()
            .map(|m| m.get(v).copied().unwrap_or(0))
            .max()
            .unwrap_or(0) as usize;
        let mut out = vec![SymPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.get(v).copied().unwrap_or(0) as usize;
            let mut rest = m.clone();
            if v < rest.len() {
                rest[v] = 0;
            }
            out[e].add_term(trim(rest), c.clone());
        }
        out
    }

    fn from_coeffs_in(v: usize, coeffs: Vec<SymPoly>) -> SymPoly {
        let mut out = SymPoly::zero();
        for (e, p) in coeffs.into_iter().enumerate() {
            for (m, c) in p.terms {
                let mut m2 = m;
                if e > 0 {
                    if m2.len() <= v {
                        m2.resize(v + 1, 0);
                    }
                    m2[v] += e as u32;
                }
                out.add_term(trim(m2), c);
            }
        }
        out
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &SymPoly) -> Option<SymPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = SymPoly::zero();
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            if !mono_divides(&dm, &rm) {
                return None;
            }
            let qm = mono_div(&rm, &dm);
            let qc = rc / &dc;
            let mut t = SymPoly::zero();
            t.terms.insert(qm, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Rational content (gcd of coefficients, sign of the leading one).
    fn rational_content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_integer::gcd(num_gcd, c.numer().abs());
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        content
    }

    /// Divides out the rational content; leading coefficient becomes positive.
    pub fn primitive(&self) -> SymPoly {
        if self.is_zero() {
            return SymPoly::zero();
        }
        let c = self.rational_content();
        self.scale(&c.recip())
    }

    /// Content with respect to symbol `v`: gcd of the `v`-coefficients.
    fn content_in(&self, v: usize) -> SymPoly {
        let mut g = SymPoly::zero();
        for c in self.coeffs_in(v) {
            if !c.is_zero() {
                g = SymPoly::gcd(&g, &c);
            }
        }
        g
    }

    /// Pseudo-remainder of `self` by `d` in symbol `v`.
    fn pseudo_rem(&self, d: &SymPoly, v: usize) -> SymPoly {
        let dc = d.coeffs_in(v);
        let dd = dc.len() - 1;
        let lead = dc[dd].clone();
        let mut r = self.clone();
        loop {
            let rc = r.coeffs_in(v);
            let rd = rc.len() - 1;
            if r.is_zero() || rd < dd {
                return r;
            }
            // r := lead*r - lc(r)*x_v^(rd-dd)*d
            let lr = rc[rd].clone();
            let mut shift = vec![SymPoly::zero(); rd - dd];
            shift.push(lr);
            let shifted = SymPoly::from_coeffs_in(v, shift);
            r = &(&r * &lead) - &(&shifted * d);
        }
    }

    /// GCD via primitive pseudo-remainder sequences, recursing on symbols.
    /// The result is primitive with positive leading coefficient.
    pub fn gcd(a: &SymPoly, b: &SymPoly) -> SymPoly {
        if a.is_zero() {
            return b.primitive();
        }
        if b.is_zero() {
            return a.primitive();
        }
        if a.is_constant() || b.is_constant() {
            return SymPoly::one();
        }
        let v = a.main_var().unwrap().max(b.main_var().unwrap());
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let cont = SymPoly::gcd(&ca, &cb);
        let mut f = a.exact_div(&ca).unwrap();
        let mut g = b.exact_div(&cb).unwrap();
        // order by degree in v
        if f.coeffs_in(v).len() < g.coeffs_in(v).len() {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_zero() {
            let r = f.pseudo_rem(&g, v);
            f = g;
            g = if r.is_zero() {
                SymPoly::zero()
            } else {
                let c = r.content_in(v);
                r.exact_div(&c).unwrap().primitive()
            };
        }
        // f is the primitive gcd in v; restore the content
        let fp = {
            let c = f.content_in(v);
            f.exact_div(&c).unwrap()
        };
        (&cont * &fp).primitive()
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = SYMBOLS.lock().unwrap().clone();
        let mut first = true;
        // print highest terms first
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, e) in m.iter().enumerate() {
                if *e == 1 {
                    factors.push(names[i].clone());
                } else if *e > 1 {
                    factors.push(format!("{}^{}", names[i], e));
                }
            }
            if factors.is_empty() {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// An element of the fraction field ℚ(symbols). Canonical form: the
/// denominator is monic under the monomial order and shares no factor
/// with the numerator, so `==` decides equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    num: SymPoly,
    den: SymPoly,
}

impl FieldElement {
    pub fn new(num: SymPoly, den: SymPoly) -> FieldElement {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return FieldElement { num: SymPoly::zero(), den: SymPoly::one() };
        }
        let g = SymPoly::gcd(&num, &den);
        let mut num = num.exact_div(&g).unwrap();
        let mut den = den.exact_div(&g).unwrap();
        let lc = den.leading().unwrap().1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        FieldElement { num, den }
    }

    pub fn zero() -> FieldElement {
        FieldElement { num: SymPoly::zero(), den: SymPoly::one() }
    }

    pub fn one() -> FieldElement {
        FieldElement { num: SymPoly::one(), den: SymPoly::one() }
    }

    pub fn from_int(n: i64) -> FieldElement {
        FieldElement { num: SymPoly::from_int(n), den: SymPoly::one() }
    }

    pub fn from_rational(r: BigRational) -> FieldElement {
        FieldElement { num: SymPoly::constant(r), den: SymPoly::one() }
    }

    pub fn from_poly(p: SymPoly) -> FieldElement {
        FieldElement { num: p, den: SymPoly::one() }
    }

    pub fn sym(s: Symbol) -> FieldElement {
        FieldElement::from_poly(SymPoly::sym(s))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &FieldElement::one()
    }

    pub fn numer(&self) -> &SymPoly {
        &self.num
    }

    pub fn denom(&self) -> &SymPoly {
        &self.den
    }

    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero");
        FieldElement::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> FieldElement {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = FieldElement::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }
}

impl Default for FieldElement {
    fn default() -> Self {
        FieldElement::zero()
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        assert!(!rhs.is_zero(), "division by zero");
        FieldElement::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { num: -&self.num, den: self.den.clone() }
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num, &self.den)
            .cmp(&(&other.num, &other.den))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == SymPoly::one() {
            if self.num.terms.len() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}


impl SymPoly {
    pub fn pow_u(&self, e: u32) -> SymPoly {
        let mut out = SymPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

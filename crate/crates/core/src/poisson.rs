//! Commutative polynomial / Laurent Poisson algebras: bracket tables on
//! generators, Leibniz extension, Jacobi verification, Hamiltonian vector
//! fields, and KKS structures from Lie structure constants.

use std::collections::BTreeMap;

use crate::field::FieldElement;

/// A polynomial (negative exponents allowed on Laurent variables) with
/// coefficients in the symbol field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Polynomial {
    pub n: usize,
    terms: BTreeMap<Vec<i64>, FieldElement>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Polynomial {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: FieldElement) -> Polynomial {
        let mut p = Polynomial::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(n: usize) -> Polynomial {
        Polynomial::constant(n, FieldElement::one())
    }

    pub fn var(n: usize, i: usize) -> Polynomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Polynomial::monomial(n, e, FieldElement::one())
    }

    pub fn monomial(n: usize, exps: Vec<i64>, c: FieldElement) -> Polynomial {
        assert_eq!(exps.len(), n);
        let mut p = Polynomial::zero(n);
        p.add_term(exps, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
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

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n);
        let mut out = Polynomial::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * &FieldElement::from_int(e[i]));
        }
        out
    }

    /// Total degree counting absolute exponents.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|x| x.abs()).sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    /// Evaluation; coordinates must be nonzero wherever an exponent is negative.
    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.n);
        let mut out = FieldElement::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                term = &term * &x.pow(k);
            }
            out = &out + &term;
        }
        out
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (name, &k) in names.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            let coeff = format!("{c}");
            let part = if factors.is_empty() {
                coeff
            } else if c.is_one() {
                factors.join("*")
            } else if *c == FieldElement::from_int(-1) {
                format!("-{}", factors.join("*"))
            } else {
                format!("{}*{}", coeff, factors.join("*"))
            };
            parts.push(part);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

/// A Poisson bracket given by its values on generator pairs, extended to
/// all polynomials as a biderivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonStructure {
    pub n: usize,
    pub names: Vec<String>,
    pub laurent: Vec<bool>,
    /// P_ij for i < j, keyed by (i, j).
    pub table: BTreeMap<(usize, usize), Polynomial>,
    /// Present when every P_ij = π_ij·x_i·x_j; entries of the antisymmetric π.
    pub log_linear: Option<Vec<Vec<FieldElement>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JacobiOutcome {
    Ok,
    Witness { i: usize, j: usize, k: usize, residual: Polynomial },
}

impl PoissonStructure {
    pub fn from_table(
        names: Vec<String>,
        laurent: Vec<bool>,
        table: BTreeMap<(usize, usize), Polynomial>,
    ) -> PoissonStructure {
        let n = names.len();
        assert_eq!(laurent.len(), n);
        for (&(i, j), p) in &table {
            assert!(i < j && j < n, "table keyed by pairs i < j");
            assert_eq!(p.n, n);
        }
        PoissonStructure { n, names, laurent, table, log_linear: None }
    }

    /// {x_i, x_j} = π_ij·x_i·x_j for an antisymmetric matrix π.
    pub fn log_linear(names: Vec<String>, laurent: Vec<bool>, pi: Vec<Vec<FieldElement>>) -> PoissonStructure {
        let n = names.len();
        assert_eq!(pi.len(), n);
        for (i, row) in pi.iter().enumerate() {
            assert_eq!(row.len(), n);
            for j in 0..n {
                assert_eq!(row[j], -&pi[j][i], "pi must be antisymmetric");
            }
        }
        let mut table = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                if pi[i][j].is_zero() {
                    continue;
                }
                let mut e = vec![0; n];
                e[i] = 1;
                e[j] = 1;
                table.insert((i, j), Polynomial::monomial(n, e, pi[i][j].clone()));
            }
        }
        let mut s = PoissonStructure::from_table(names, laurent, table);
        s.log_linear = Some(pi);
        s
    }

    pub fn pair(&self, i: usize, j: usize) -> Polynomial {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Polynomial::zero(self.n),
            Less => self.table.get(&(i, j)).cloned().unwrap_or_else(|| Polynomial::zero(self.n)),
            Greater => self
                .table
                .get(&(j, i))
                .map(|p| p.neg())
                .unwrap_or_else(|| Polynomial::zero(self.n)),
        }
    }

    /// {f, g} = Σ_{i<j} P_ij·(∂f/∂x_i ∂g/∂x_j − ∂g/∂x_i ∂f/∂x_j).
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        assert_eq!(f.n, self.n);
        assert_eq!(g.n, self.n);
        let mut out = Polynomial::zero(self.n);
        for (&(i, j), p) in &self.table {
            let t = f.partial(i).mul(&g.partial(j)).sub(&g.partial(i).mul(&f.partial(j)));
            out = out.add(&p.mul(&t));
        }
        out
    }

    /// Jacobi identity on all generator triples; sufficient for the full
    /// identity because the Jacobiator of a biderivation is a triderivation.
    pub fn jacobi_check(&self) -> JacobiOutcome {
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    let xi = Polynomial::var(self.n, i);
                    let xj = Polynomial::var(self.n, j);
                    let xk = Polynomial::var(self.n, k);
                    let r = self
                        .bracket(&xi, &self.bracket(&xj, &xk))
                        .add(&self.bracket(&xj, &self.bracket(&xk, &xi)))
                        .add(&self.bracket(&xk, &self.bracket(&xi, &xj)));
                    if !r.is_zero() {
                        return JacobiOutcome::Witness { i, j, k, residual: r };
                    }
                }
            }
        }
        JacobiOutcome::Ok
    }

    /// The Hamiltonian vector field of f, as ({f,x_1}, …, {f,x_n}).
    pub fn hamiltonian(&self, f: &Polynomial) -> Vec<Polynomial> {
        (0..self.n)
            .map(|i| self.bracket(f, &Polynomial::var(self.n, i)))
            .collect()
    }
}

/// Structure constants of a finite-dimensional Lie algebra:
/// [e_i, e_j] = Σ_l c^l_ij e_l, stored for i < j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieStructureConstants {
    pub n: usize,
    constants: BTreeMap<(usize, usize), Vec<FieldElement>>,
}

impl LieStructureConstants {
    pub fn new(n: usize) -> LieStructureConstants {
        LieStructureConstants { n, constants: BTreeMap::new() }
    }

    /// Sets [e_i, e_j] = Σ_l coeffs[l]·e_l, for i < j.
    pub fn set(&mut self, i: usize, j: usize, coeffs: Vec<FieldElement>) {
        assert!(i < j && j < self.n);
        assert_eq!(coeffs.len(), self.n);
        self.constants.insert((i, j), coeffs);
    }

    /// c^l_ij, antisymmetric in (i, j).
    pub fn get(&self, i: usize, j: usize, l: usize) -> FieldElement {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => FieldElement::zero(),
            Less => self
                .constants
                .get(&(i, j))
                .map(|v| v[l].clone())
                .unwrap_or_else(FieldElement::zero),
            Greater => -&self.get(j, i, l),
        }
    }

    /// Σ_m (c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj) = 0 for all i,j,k,l.
    pub fn jacobi_check(&self) -> Option<(usize, usize, usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    for l in 0..self.n {
                        let mut s = FieldElement::zero();
                        for m in 0..self.n {
                            s = &s + &(&self.get(i, j, m) * &self.get(m, k, l));
                            s = &s + &(&self.get(j, k, m) * &self.get(m, i, l));
                            s = &s + &(&self.get(k, i, m) * &self.get(m, j, l));
                        }
                        if !s.is_zero() {
                            return Some((i, j, k, l));
                        }
                    }
                }
            }
        }
        None
    }
}

/// The Kirillov–Kostant–Souriau structure: {x_i, x_j} = Σ_l c^l_ij x_l.
pub fn kks_structure(c: &LieStructureConstants, names: Vec<String>) -> PoissonStructure {
    let n = c.n;
    assert_eq!(names.len(), n);
    let mut table = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut p = Polynomial::zero(n);
            for l in 0..n {
                let coeff = c.get(i, j, l);
                if !coeff.is_zero() {
                    let mut e = vec![0; n];
                    e[l] = 1;
                    p.add_term(e, coeff);
                }
            }
            if !p.is_zero() {
                table.insert((i, j), p);
            }
        }
    }
    PoissonStructure::from_table(names, vec![false; n], table)
}

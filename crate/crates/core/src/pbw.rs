//! Rewriting engine for solvable polynomial rings: quantum affine spaces,
//! quantum tori, quantum matrices, and quotients like quantum SL₂ given by
//! extra rules oriented by a weight vector.
//!
//! Standard monomials are exponent vectors (negative entries only on
//! inverted generators), ordered by weighted total degree then
//! lexicographically; all rewriting strictly decreases that order.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dual::DualScalar;
use crate::error::{AlgebraError, Result};
use crate::field::FieldElement;
use crate::group::{GroupScalar, ParamGroup};
use crate::poisson::{Polynomial, PoissonStructure};
use crate::scalar::Scalar;

/// A single generator or its inverse.
pub type Letter = (usize, i8);

/// A linear combination of standard monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PBWElement<S: Scalar> {
    pub n: usize,
    terms: BTreeMap<Vec<i64>, S>,
}

impl<S: Scalar> PBWElement<S> {
    pub fn zero(n: usize) -> PBWElement<S> {
        PBWElement { n, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, exps: Vec<i64>, c: S) -> PBWElement<S> {
        assert_eq!(exps.len(), n);
        let mut e = PBWElement::zero(n);
        e.add_term(exps, c);
        e
    }

    pub fn constant(n: usize, c: S) -> PBWElement<S> {
        PBWElement::monomial(n, vec![0; n], c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[i64]) -> Option<&S> {
        self.terms.get(exps)
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: S) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
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

    pub fn add(&self, rhs: &PBWElement<S>) -> PBWElement<S> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &PBWElement<S>) -> PBWElement<S> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &S) -> PBWElement<S> {
        let mut out = PBWElement::zero(self.n);
        for (e, k) in &self.terms {
            out.add_term(e.clone(), k.mul(c));
        }
        out
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut factors: Vec<String> = Vec::new();
                for (name, &k) in names.iter().zip(e) {
                    match k {
                        0 => {}
                        1 => factors.push(name.clone()),
                        _ => factors.push(format!("{name}^{k}")),
                    }
                }
                if factors.is_empty() {
                    format!("({c})")
                } else if c.is_one() {
                    factors.join("*")
                } else {
                    format!("({})*{}", c, factors.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// An oriented quotient rule: the standard monomial `lhs` rewrites to `rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtraRule<S: Scalar> {
    pub lhs: Vec<i64>,
    pub rhs: PBWElement<S>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfluenceOutcome<S: Scalar> {
    Ok,
    Counterexample {
        word: Vec<Letter>,
        nf1: PBWElement<S>,
        nf2: PBWElement<S>,
    },
}

/// A solvable-polynomial-ring presentation: for j > i the relation
/// x_j·x_i = c_ij·x_i·x_j + p_ij, plus optional extra rules.
#[derive(Debug, Clone)]
pub struct PBWPresentation<S: Scalar> {
    pub n: usize,
    pub names: Vec<String>,
    pub inverted: Vec<bool>,
    one: S,
    /// keyed by (i, j) with i < j: the coefficient of x_i·x_j in the
    /// rewrite of x_j·x_i
    swap: BTreeMap<(usize, usize), S>,
    tails: BTreeMap<(usize, usize), PBWElement<S>>,
    pub extra_rules: Vec<ExtraRule<S>>,
    pub weights: Vec<u64>,
    pub degree_cap: u64,
}

pub const DEFAULT_DEGREE_CAP: u64 = 24;

impl<S: Scalar> PBWPresentation<S> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        names: Vec<String>,
        inverted: Vec<bool>,
        one: S,
        swap: BTreeMap<(usize, usize), S>,
        tails: BTreeMap<(usize, usize), PBWElement<S>>,
        extra_rules: Vec<ExtraRule<S>>,
        weights: Vec<u64>,
        degree_cap: u64,
    ) -> Result<PBWPresentation<S>> {
        let n = names.len();
        let invalid = |m: String| AlgebraError::InvalidPresentation(m);
        if inverted.len() != n || weights.len() != n {
            return Err(invalid("inverted/weights length mismatch".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(invalid("weights must be positive".into()));
        }
        let p = PBWPresentation { n, names, inverted, one, swap, tails, extra_rules, weights, degree_cap };
        for i in 0..n {
            for j in i + 1..n {
                let c = p
                    .swap
                    .get(&(i, j))
                    .ok_or_else(|| invalid(format!("missing swap coefficient for pair ({i},{j})")))?;
                if c.inv().is_none() {
                    return Err(invalid(format!("swap coefficient for ({i},{j}) is not invertible")));
                }
                if let Some(t) = p.tails.get(&(i, j)) {
                    if t.is_zero() {
                        continue;
                    }
                    if p.inverted[i] || p.inverted[j] {
                        return Err(invalid(format!(
                            "inverted generator in pair ({i},{j}) requires a zero tail"
                        )));
                    }
                    let mut lead = vec![0i64; n];
                    lead[i] = 1;
                    lead[j] = 1;
                    for (m, _) in t.terms() {
                        if p.cmp_mono(m, &lead) != std::cmp::Ordering::Less {
                            return Err(invalid(format!(
                                "tail monomial for pair ({i},{j}) is not below x_{i}*x_{j}"
                            )));
                        }
                    }
                }
            }
        }
        for rule in &p.extra_rules {
            if rule.lhs.len() != n || rule.lhs.iter().any(|&e| e < 0) {
                return Err(invalid("extra rule LHS must be a plain standard monomial".into()));
            }
            let wl = p.weight(&rule.lhs);
            for (m, _) in rule.rhs.terms() {
                if p.weight(m) >= wl {
                    return Err(invalid(
                        "extra rule RHS must be strictly below its LHS under the weight vector".into(),
                    ));
                }
            }
        }
        Ok(p)
    }

    pub fn one_scalar(&self) -> &S {
        &self.one
    }

    pub fn one_elem(&self) -> PBWElement<S> {
        PBWElement::constant(self.n, self.one.clone())
    }

    pub fn gen_elem(&self, i: usize) -> PBWElement<S> {
        let mut e = vec![0i64; self.n];
        e[i] = 1;
        PBWElement::monomial(self.n, e, self.one.clone())
    }

    pub fn weight(&self, m: &[i64]) -> u64 {
        m.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e.unsigned_abs() * w)
            .sum()
    }

    /// (weighted degree, then lexicographic) order on standard monomials.
    pub fn cmp_mono(&self, a: &[i64], b: &[i64]) -> std::cmp::Ordering {
        self.weight(a).cmp(&self.weight(b)).then_with(|| a.cmp(b))
    }

    fn check_cap(&self, m: &[i64]) -> Result<()> {
        if self.weight(m) > self.degree_cap {
            Err(AlgebraError::DegreeBoundExceeded { bound: self.degree_cap as u32 })
        } else {
            Ok(())
        }
    }

    pub fn letters(m: &[i64]) -> Vec<Letter> {
        let mut w = Vec::new();
        for (k, &e) in m.iter().enumerate() {
            let sign: i8 = if e >= 0 { 1 } else { -1 };
            for _ in 0..e.unsigned_abs() {
                w.push((k, sign));
            }
        }
        w
    }

    fn validate_word(&self, w: &[Letter]) -> Result<()> {
        for &(g, s) in w {
            if g >= self.n {
                return Err(AlgebraError::InvalidPresentation(format!("unknown generator index {g}")));
            }
            if s == -1 && !self.inverted[g] {
                return Err(AlgebraError::InvalidPresentation(format!(
                    "generator {} is not inverted",
                    self.names[g]
                )));
            }
        }
        Ok(())
    }

    /// Normal form with respect to the swap relations only.
    fn nf_word_pbw(&self, word: &[Letter]) -> Result<PBWElement<S>> {
        // find the leftmost out-of-order adjacent pair
        let pos = word.windows(2).position(|w| w[0].0 > w[1].0);
        let Some(k) = pos else {
            let mut exps = vec![0i64; self.n];
            for &(g, s) in word {
                exps[g] += s as i64;
            }
            self.check_cap(&exps)?;
            return Ok(PBWElement::monomial(self.n, exps, self.one.clone()));
        };
        let (j, ej) = word[k];
        let (i, ei) = word[k + 1];
        let c = self.swap.get(&(i, j)).unwrap();
        let factor = if (ej as i64) * (ei as i64) == 1 {
            c.clone()
        } else {
            c.inv().ok_or(AlgebraError::ZeroDivisorInverse { i, j })?
        };
        let mut swapped = word.to_vec();
        swapped.swap(k, k + 1);
        let mut res = self.nf_word_pbw(&swapped)?.scale(&factor);
        if let Some(t) = self.tails.get(&(i, j)) {
            if !t.is_zero() {
                debug_assert!(ej == 1 && ei == 1);
                let prefix = self.nf_word_pbw(&word[..k])?;
                let suffix = self.nf_word_pbw(&word[k + 2..])?;
                let mid = self.mul_pbw(&prefix, t)?;
                res = res.add(&self.mul_pbw(&mid, &suffix)?);
            }
        }
        Ok(res)
    }

    /// Product using only the swap relations (no extra rules).
    fn mul_pbw(&self, a: &PBWElement<S>, b: &PBWElement<S>) -> Result<PBWElement<S>> {
        let mut out = PBWElement::zero(self.n);
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut w = Self::letters(ma);
                w.extend(Self::letters(mb));
                let nf = self.nf_word_pbw(&w)?;
                out = out.add(&nf.scale(&ca.mul(cb)));
            }
        }
        Ok(out)
    }

    fn rule_divides(lhs: &[i64], m: &[i64]) -> bool {
        lhs.iter().zip(m).all(|(&l, &e)| l == 0 || e >= l)
    }

    /// Rewrites with the extra rules until no monomial is divisible by any
    /// rule LHS. A monomial x^a ⊇ x^lhs is eliminated via the identity
    /// x^d·x^lhs = u·x^a + r (PBW normal form, d = a − lhs, u a unit), so
    /// x^a ≡ u⁻¹·(x^d·rhs − r); every replacement monomial is strictly
    /// smaller, which forces termination.
    fn reduce_extra(&self, elem: PBWElement<S>) -> Result<PBWElement<S>> {
        if self.extra_rules.is_empty() {
            return Ok(elem);
        }
        let mut elem = elem;
        let mut steps = 0usize;
        loop {
            let target = elem
                .terms()
                .filter(|(m, _)| self.extra_rules.iter().any(|r| Self::rule_divides(&r.lhs, m)))
                .map(|(m, _)| m.clone())
                .max_by(|a, b| self.cmp_mono(a, b));
            let Some(m) = target else { return Ok(elem) };
            steps += 1;
            if steps > 100_000 {
                return Err(AlgebraError::InvalidPresentation(
                    "extra-rule reduction did not terminate".into(),
                ));
            }
            let rule = self
                .extra_rules
                .iter()
                .find(|r| Self::rule_divides(&r.lhs, &m))
                .unwrap();
            let cm = elem.coeff(&m).unwrap().clone();
            let d: Vec<i64> = m.iter().zip(&rule.lhs).map(|(&a, &l)| a - l).collect();
            let d_elem = PBWElement::monomial(self.n, d, self.one.clone());
            let lhs_elem = PBWElement::monomial(self.n, rule.lhs.clone(), self.one.clone());
            let t0 = self.mul_pbw(&d_elem, &lhs_elem)?;
            let u = t0.coeff(&m).cloned().ok_or_else(|| {
                AlgebraError::InvalidPresentation("extra-rule reduction lost its leading term".into())
            })?;
            let uinv = u.inv().ok_or_else(|| {
                AlgebraError::InvalidPresentation("extra-rule leading coefficient not invertible".into())
            })?;
            let mut rest = t0;
            rest.add_term(m.clone(), u.neg());
            for (mr, _) in rest.terms() {
                if self.cmp_mono(mr, &m) != std::cmp::Ordering::Less {
                    return Err(AlgebraError::InvalidPresentation(
                        "extra-rule reduction produced a non-decreasing term".into(),
                    ));
                }
            }
            let s = self.mul_pbw(&d_elem, &rule.rhs)?;
            let repl = s.sub(&rest).scale(&uinv.mul(&cm));
            elem.add_term(m, cm.neg());
            elem = elem.add(&repl);
        }
    }

    /// Full normal form of a word of generators and inverses.
    pub fn normal_form(&self, word: &[Letter]) -> Result<PBWElement<S>> {
        self.validate_word(word)?;
        let nf = self.nf_word_pbw(word)?;
        self.reduce_extra(nf)
    }

    /// Full normal form of a linear combination.
    pub fn normalize(&self, elem: PBWElement<S>) -> Result<PBWElement<S>> {
        self.reduce_extra(elem)
    }

    /// Product in the quotient algebra.
    pub fn multiply(&self, a: &PBWElement<S>, b: &PBWElement<S>) -> Result<PBWElement<S>> {
        let raw = self.mul_pbw(a, b)?;
        self.reduce_extra(raw)
    }

    /// Commutator a·b − b·a in the quotient algebra.
    pub fn commutator(&self, a: &PBWElement<S>, b: &PBWElement<S>) -> Result<PBWElement<S>> {
        Ok(self.multiply(a, b)?.sub(&self.multiply(b, a)?))
    }

    /// One rewrite step at `pos` (a swap of adjacent letters), followed by
    /// full normalization — one resolution of an overlap ambiguity.
    fn resolve_swap_first(&self, word: &[Letter], pos: usize) -> Result<PBWElement<S>> {
        let (j, ej) = word[pos];
        let (i, ei) = word[pos + 1];
        assert!(j > i);
        let c = self.swap.get(&(i, j)).unwrap();
        let factor = if (ej as i64) * (ei as i64) == 1 {
            c.clone()
        } else {
            c.inv().ok_or(AlgebraError::ZeroDivisorInverse { i, j })?
        };
        let mut swapped = word.to_vec();
        swapped.swap(pos, pos + 1);
        let mut res = self.normal_form(&swapped)?.scale(&factor);
        if let Some(t) = self.tails.get(&(i, j)) {
            if !t.is_zero() {
                let prefix = self.normal_form(&word[..pos])?;
                let suffix = self.normal_form(&word[pos + 2..])?;
                let mid = self.multiply(&prefix, t)?;
                res = res.add(&self.multiply(&mid, &suffix)?);
            }
        }
        Ok(res)
    }

    /// Replace the rule's LHS occupying `word[pos .. pos+len]` by its RHS,
    /// then fully normalize — the other resolution of the ambiguity.
    fn resolve_rule_first(
        &self,
        word: &[Letter],
        pos: usize,
        len: usize,
        rule: &ExtraRule<S>,
    ) -> Result<PBWElement<S>> {
        let prefix = self.normal_form(&word[..pos])?;
        let suffix = self.normal_form(&word[pos + len..])?;
        let mid = self.multiply(&prefix, &rule.rhs)?;
        self.multiply(&mid, &suffix)
    }

    /// Diamond-lemma overlap check on all critical words of weighted degree
    /// at most `degree_bound`: descending generator triples (swap–swap
    /// overlaps) and one-letter extensions of every extra-rule LHS on either
    /// side (swap–rule overlaps), plus contiguous rule–rule overlaps.
    pub fn check_confluence(&self, degree_bound: u64) -> Result<ConfluenceOutcome<S>> {
        let mut words: Vec<(Vec<Letter>, Vec<(usize, Option<usize>)>)> = Vec::new();
        // swap–swap: x_c x_b x_a with c > b > a; resolutions start at 0 and 1
        for c in 0..self.n {
            for b in 0..c {
                for a in 0..b {
                    words.push((
                        vec![(c, 1), (b, 1), (a, 1)],
                        vec![(0, None), (1, None)],
                    ));
                }
            }
        }
        for (ri, rule) in self.extra_rules.iter().enumerate() {
            let u = Self::letters(&rule.lhs);
            if u.is_empty() {
                continue;
            }
            let first = u[0].0;
            let last = u[u.len() - 1].0;
            // x_j · lhs for j > first: swap at 0 vs rule at 1
            for j in first + 1..self.n {
                let mut w = vec![(j, 1)];
                w.extend(u.iter().copied());
                words.push((w, vec![(0, None), (1, Some(ri))]));
            }
            // lhs · x_i for i < last: swap at len-1 vs rule at 0
            for i in 0..last {
                let mut w = u.clone();
                w.push((i, 1));
                words.push((w, vec![(u.len() - 1, None), (0, Some(ri))]));
            }
            // rule–rule contiguous overlaps
            for (rk, other) in self.extra_rules.iter().enumerate() {
                let v = Self::letters(&other.lhs);
                for olap in 1..u.len().min(v.len()) {
                    if u[u.len() - olap..] == v[..olap] {
                        let mut w = u.clone();
                        w.extend(v[olap..].iter().copied());
                        let other_pos = w.len() - v.len();
                        words.push((w, vec![(0, Some(ri)), (other_pos, Some(rk))]));
                    }
                }
            }
        }
        for (word, resolutions) in words {
            let wdeg: u64 = word.iter().map(|&(g, _)| self.weights[g]).sum();
            if wdeg > degree_bound {
                continue;
            }
            let mut nfs: Vec<PBWElement<S>> = Vec::new();
            for (pos, rule_idx) in &resolutions {
                let nf = match rule_idx {
                    None => self.resolve_swap_first(&word, *pos)?,
                    Some(ri) => {
                        let rule = &self.extra_rules[*ri];
                        let len = Self::letters(&rule.lhs).len();
                        self.resolve_rule_first(&word, *pos, len, rule)?
                    }
                };
                nfs.push(nf);
            }
            for k in 1..nfs.len() {
                if nfs[k] != nfs[0] {
                    return Ok(ConfluenceOutcome::Counterexample {
                        word,
                        nf1: nfs[0].clone(),
                        nf2: nfs[k].clone(),
                    });
                }
            }
        }
        Ok(ConfluenceOutcome::Ok)
    }
}

/// Convenience constructor for a quantum affine space / torus:
/// x_i·x_j = q_ij·x_j·x_i, so the rewrite x_j·x_i → q_ij⁻¹·x_i·x_j.
pub fn qaffine(
    group: Arc<ParamGroup>,
    names: Vec<String>,
    q: &dyn Fn(usize, usize) -> crate::group::GroupElement,
    inverted: Vec<bool>,
    degree_cap: u64,
) -> Result<PBWPresentation<GroupScalar>> {
    let n = names.len();
    let one = GroupScalar::one_in(group.clone());
    let mut swap = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let qij = q(i, j);
            swap.insert(
                (i, j),
                GroupScalar::monomial(group.clone(), group.inv(&qij), FieldElement::one()),
            );
        }
    }
    PBWPresentation::new(
        names,
        inverted,
        one,
        swap,
        BTreeMap::new(),
        Vec::new(),
        vec![1; n],
        degree_cap,
    )
}

/// Specializes each free parameter g_k to 1 + d_k·ε, sending a group-algebra
/// scalar Σ r_g·g to the dual number (Σ r_g, Σ r_g·⟨exp(g), d⟩).
pub fn dual_specialize_scalar(gs: &GroupScalar, d: &[FieldElement]) -> DualScalar {
    let mut value = FieldElement::zero();
    let mut deriv = FieldElement::zero();
    for (g, r) in gs.terms() {
        value = &value + r;
        let mut pairing = FieldElement::zero();
        for (&e, dk) in g.exponents.iter().zip(d) {
            pairing = &pairing + &(&FieldElement::from_int(e) * dk);
        }
        deriv = &deriv + &(r * &pairing);
    }
    DualScalar::new(value, deriv)
}

/// Specializes a group-scalar presentation at q_k = 1 + d_k·ε.
pub fn dual_specialize(
    p: &PBWPresentation<GroupScalar>,
    d: &[FieldElement],
) -> Result<PBWPresentation<DualScalar>> {
    let group = p.one_scalar().group().clone();
    if !group.is_torsion_free() {
        return Err(AlgebraError::InvalidPresentation(
            "dual specialization requires a torsion-free parameter group".into(),
        ));
    }
    assert_eq!(d.len(), group.free_rank());
    let map_elem = |e: &PBWElement<GroupScalar>| -> PBWElement<DualScalar> {
        let mut out = PBWElement::zero(e.n);
        for (m, c) in e.terms() {
            out.add_term(m.clone(), dual_specialize_scalar(c, d));
        }
        out
    };
    let mut swap = BTreeMap::new();
    for (&(i, j), c) in &p.swap {
        let dc = dual_specialize_scalar(c, d);
        if dc.value.is_zero() {
            return Err(AlgebraError::ZeroDivisorInverse { i, j });
        }
        swap.insert((i, j), dc);
    }
    let tails = p.tails.iter().map(|(&k, t)| (k, map_elem(t))).collect();
    let extra_rules = p
        .extra_rules
        .iter()
        .map(|r| ExtraRule { lhs: r.lhs.clone(), rhs: map_elem(&r.rhs) })
        .collect();
    PBWPresentation::new(
        p.names.clone(),
        p.inverted.clone(),
        DualScalar::one(),
        swap,
        tails,
        extra_rules,
        p.weights.clone(),
        p.degree_cap,
    )
}

/// Extracts the Poisson bracket of the commutative fibre at ε = 0: for each
/// generator pair, the commutator's value part must vanish and its ε-part
/// becomes the bracket table entry.
pub fn semiclassical_bracket(p: &PBWPresentation<DualScalar>) -> Result<PoissonStructure> {
    let n = p.n;
    let mut table = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let cm = p.commutator(&p.gen_elem(i), &p.gen_elem(j))?;
            let mut poly = Polynomial::zero(n);
            for (m, c) in cm.terms() {
                if !c.value.is_zero() {
                    return Err(AlgebraError::NotCommutativeLimit { i, j });
                }
                poly.add_term(m.clone(), c.deriv.clone());
            }
            if !poly.is_zero() {
                table.insert((i, j), poly);
            }
        }
    }
    let mut s = PoissonStructure::from_table(p.names.clone(), p.inverted.clone(), table);
    // detect the log-linear shape {x_i,x_j} = π_ij·x_i·x_j
    let mut pi = vec![vec![FieldElement::zero(); n]; n];
    let mut log_linear = true;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let b = s.pair(i, j);
            if b.is_zero() {
                continue;
            }
            let mut e = vec![0i64; n];
            e[i] = 1;
            e[j] = 1;
            if b.num_terms() == 1 {
                if let Some((m, c)) = b.terms().next() {
                    if *m == e {
                        pi[i][j] = c.clone();
                        pi[j][i] = -c;
                        continue;
                    }
                }
            }
            log_linear = false;
            break 'outer;
        }
    }
    if log_linear {
        s.log_linear = Some(pi);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::symbol;
    use crate::poisson::JacobiOutcome;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn qgroup() -> Arc<ParamGroup> {
        Arc::new(ParamGroup::new(vec!["q".into()], vec![]))
    }

    fn quantum_plane() -> PBWPresentation<GroupScalar> {
        let g = qgroup();
        let q = g.free_generator(0);
        qaffine(g.clone(), names(&["x1", "x2"]), &|_, _| q.clone(), vec![false, false], 24).unwrap()
    }

    /// Quantum SL₂: X11X12 = tX12X11, X11X21 = tX21X11, X12X22 = tX22X12,
    /// X21X22 = tX22X21, X12X21 = X21X12,
    /// X11X22 − X22X11 = (t−t⁻¹)X12X21, X11X22 − tX12X21 = 1.
    fn sl2(corrupt: bool) -> PBWPresentation<GroupScalar> {
        let g = Arc::new(ParamGroup::new(vec!["t".into()], vec![]));
        let t = g.free_generator(0);
        let unit = |e: i64| GroupScalar::monomial(g.clone(), g.pow(&t, e), FieldElement::one());
        let one = GroupScalar::one_in(g.clone());
        let mut swap = BTreeMap::new();
        swap.insert((0, 1), unit(-1));
        swap.insert((0, 2), unit(-1));
        swap.insert((1, 3), unit(-1));
        swap.insert((2, 3), unit(-1));
        swap.insert((1, 2), one.clone());
        swap.insert((0, 3), one.clone());
        let mut tails = BTreeMap::new();
        // X22·X11 = X11X22 − (t − t⁻¹)·X12X21
        let tminus = unit(1).sub(&unit(-1));
        tails.insert(
            (0, 3),
            PBWElement::monomial(4, vec![0, 1, 1, 0], tminus.neg()),
        );
        // X11X22 → 1 + t·X12X21
        let rhs_coeff = if corrupt { unit(2) } else { unit(1) };
        let mut rhs = PBWElement::constant(4, one.clone());
        rhs.add_term(vec![0, 1, 1, 0], rhs_coeff);
        let rule = ExtraRule { lhs: vec![1, 0, 0, 1], rhs };
        PBWPresentation::new(
            names(&["X11", "X12", "X21", "X22"]),
            vec![false; 4],
            one,
            swap,
            tails,
            vec![rule],
            vec![2, 1, 1, 2],
            24,
        )
        .unwrap()
    }

    #[test]
    fn quantum_plane_nf() {
        let p = quantum_plane();
        // x2·x1 → q⁻¹·x1x2
        let nf = p.normal_form(&[(1, 1), (0, 1)]).unwrap();
        assert_eq!(nf.num_terms(), 1);
        let c = nf.coeff(&[1, 1]).unwrap();
        let g = c.terms().next().unwrap().0;
        assert_eq!(g.exponents, vec![-1]);
        // single generator is already standard
        let nf1 = p.normal_form(&[(0, 1)]).unwrap();
        assert_eq!(nf1, p.gen_elem(0));
    }

    #[test]
    fn nf_idempotent_on_standard() {
        let p = quantum_plane();
        let nf = p.normal_form(&[(0, 1), (0, 1), (1, 1)]).unwrap();
        assert_eq!(p.normalize(nf.clone()).unwrap(), nf);
    }

    #[test]
    fn sl2_commutation_relation() {
        let p = sl2(false);
        // X22·X11 → X11X22 − (t−t⁻¹)X12X21, then X11X22 → 1 + tX12X21,
        // so the normal form is 1 + t⁻¹·X12X21
        let nf = p.normal_form(&[(3, 1), (0, 1)]).unwrap();
        assert_eq!(nf.num_terms(), 2);
        let c = nf.coeff(&[0, 1, 1, 0]).unwrap();
        assert_eq!(c.terms().next().unwrap().0.exponents, vec![-1]);
        // the commutator [X11, X22] = (t − t⁻¹)·X12X21
        let cm = p.commutator(&p.gen_elem(0), &p.gen_elem(3)).unwrap();
        assert_eq!(cm.num_terms(), 1);
        let cc = cm.coeff(&[0, 1, 1, 0]).unwrap();
        let exps: Vec<Vec<i64>> = cc.terms().map(|(g, _)| g.exponents.clone()).collect();
        assert_eq!(exps, vec![vec![-1], vec![1]]);
    }

    #[test]
    fn degree_cap_guards() {
        let g = qgroup();
        let q = g.free_generator(0);
        let p = qaffine(g.clone(), names(&["x1", "x2"]), &|_, _| q.clone(), vec![false, false], 3).unwrap();
        let word: Vec<Letter> = std::iter::repeat((0, 1)).take(4).collect();
        match p.normal_form(&word) {
            Err(AlgebraError::DegreeBoundExceeded { .. }) => {}
            other => panic!("expected DegreeBoundExceeded, got {other:?}"),
        }
    }

    #[test]
    fn associativity_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let p = sl2(false);
        let g = qgroup();
        let _ = g;
        let rand_elem = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut e = PBWElement::zero(4);
            for _ in 0..2 {
                let mut m = vec![0i64; 4];
                let mut budget = 3;
                for slot in m.iter_mut() {
                    let d = rng.gen_range(0..=budget.min(2));
                    *slot = d;
                    budget -= d;
                }
                let c = FieldElement::from_int(rng.gen_range(-2..=2i64));
                e.add_term(
                    m,
                    GroupScalar::monomial(
                        p.one_scalar().group().clone(),
                        p.one_scalar().group().identity(),
                        c,
                    ),
                );
            }
            e
        };
        for _ in 0..200 {
            let a = rand_elem(&mut rng);
            let b = rand_elem(&mut rng);
            let c = rand_elem(&mut rng);
            let ab_c = p.multiply(&p.multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = p.multiply(&a, &p.multiply(&b, &c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
        }
    }

    #[test]
    fn confluence_quantum_plane() {
        let p = quantum_plane();
        assert_eq!(p.check_confluence(3).unwrap(), ConfluenceOutcome::Ok);
    }

    #[test]
    fn confluence_sl2() {
        let p = sl2(false);
        assert_eq!(p.check_confluence(8).unwrap(), ConfluenceOutcome::Ok);
    }

    #[test]
    fn confluence_detects_corruption() {
        let p = sl2(true);
        match p.check_confluence(8).unwrap() {
            ConfluenceOutcome::Counterexample { .. } => {}
            ConfluenceOutcome::Ok => panic!("corrupted rule should fail the overlap check"),
        }
    }

    #[test]
    fn dual_specialize_scalars() {
        let g = qgroup();
        let q = g.free_generator(0);
        let unit = |e: i64| GroupScalar::monomial(g.clone(), g.pow(&q, e), FieldElement::one());
        let d = vec![FieldElement::one()];
        // q ↦ (1, 1)
        assert_eq!(
            dual_specialize_scalar(&unit(1), &d),
            DualScalar::new(FieldElement::one(), FieldElement::one())
        );
        // q − q⁻¹ ↦ (0, 2)
        assert_eq!(
            dual_specialize_scalar(&unit(1).sub(&unit(-1)), &d),
            DualScalar::new(FieldElement::zero(), FieldElement::from_int(2))
        );
        // z − z_α with d(z) = 1, d(z_α) = α ↦ (0, 1 − α)
        let g2 = Arc::new(ParamGroup::new(vec!["z".into(), "za".into()], vec![]));
        let a = FieldElement::sym(symbol("alpha"));
        let z = GroupScalar::monomial(g2.clone(), g2.free_generator(0), FieldElement::one());
        let za = GroupScalar::monomial(g2.clone(), g2.free_generator(1), FieldElement::one());
        let spec = dual_specialize_scalar(&z.sub(&za), &[FieldElement::one(), a.clone()]);
        assert_eq!(spec.value, FieldElement::zero());
        assert_eq!(spec.deriv, &FieldElement::one() - &a);
    }

    #[test]
    fn limit_quantum_plane_bracket() {
        let p = quantum_plane();
        let pd = dual_specialize(&p, &[FieldElement::one()]).unwrap();
        let s = semiclassical_bracket(&pd).unwrap();
        // {x1, x2} = x1·x2
        let expect = Polynomial::monomial(2, vec![1, 1], FieldElement::one());
        assert_eq!(s.pair(0, 1), expect);
        assert!(s.log_linear.is_some());
    }

    #[test]
    fn limit_sl2_bracket_table() {
        let p = sl2(false);
        let pd = dual_specialize(&p, &[FieldElement::one()]).unwrap();
        let s = semiclassical_bracket(&pd).unwrap();
        let mono = |e: Vec<i64>, c: i64| Polynomial::monomial(4, e, FieldElement::from_int(c));
        assert_eq!(s.pair(0, 1), mono(vec![1, 1, 0, 0], 1)); // {X11,X12} = X11X12
        assert_eq!(s.pair(0, 2), mono(vec![1, 0, 1, 0], 1)); // {X11,X21} = X11X21
        assert_eq!(s.pair(1, 3), mono(vec![0, 1, 0, 1], 1)); // {X12,X22} = X12X22
        assert_eq!(s.pair(2, 3), mono(vec![0, 0, 1, 1], 1)); // {X21,X22} = X21X22
        assert!(s.pair(1, 2).is_zero()); // {X12,X21} = 0
        assert_eq!(s.pair(0, 3), mono(vec![0, 1, 1, 0], 2)); // {X11,X22} = 2X12X21
        assert_eq!(s.jacobi_check(), JacobiOutcome::Ok);
    }

    #[test]
    fn zero_derivatives_give_zero_bracket() {
        let p = sl2(false);
        let pd = dual_specialize(&p, &[FieldElement::zero()]).unwrap();
        let s = semiclassical_bracket(&pd).unwrap();
        assert!(s.table.is_empty());
    }
}

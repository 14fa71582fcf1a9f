//! Commutative ideal arithmetic over the symbol field: Buchberger's
//! algorithm with cached reduced bases, membership, Poisson-ideal testing,
//! and degree-bounded Poisson cores.

use once_cell::sync::OnceCell;

use crate::error::{AlgebraError, Result};
use crate::field::FieldElement;
use crate::poisson::{Polynomial, PoissonStructure};

pub const DEFAULT_GB_DEGREE_CAP: i64 = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    Weighted(Vec<u64>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[i64], b: &[i64]) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => {
                let da: i64 = a.iter().sum();
                let db: i64 = b.iter().sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        match x.cmp(y) {
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                            Ordering::Equal => {}
                        }
                    }
                    Ordering::Equal
                })
            }
            MonomialOrder::Weighted(w) => {
                let da: u64 = a.iter().zip(w).map(|(&e, &w)| e as u64 * w).sum();
                let db: u64 = b.iter().zip(w).map(|(&e, &w)| e as u64 * w).sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            }
        }
    }
}

fn leading<'a>(f: &'a Polynomial, order: &MonomialOrder) -> Option<(&'a Vec<i64>, &'a FieldElement)> {
    f.terms().max_by(|(a, _), (b, _)| order.cmp(a, b))
}

fn mono_divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_lcm(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn mono_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Full normal form of f modulo the set G (every term reduced).
fn reduce_full(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let n = f.n;
    let mut rem = Polynomial::zero(n);
    let mut work = f.clone();
    'outer: while !work.is_zero() {
        let (lm, lc) = {
            let (m, c) = leading(&work, order).unwrap();
            (m.clone(), c.clone())
        };
        for g in basis {
            let (gm, gc) = leading(g, order).unwrap();
            if mono_divides(gm, &lm) {
                let q = mono_sub(&lm, gm);
                let factor = Polynomial::monomial(n, q, &lc / gc);
                work = work.sub(&factor.mul(g));
                continue 'outer;
            }
        }
        work.add_term(lm.clone(), -&lc);
        rem.add_term(lm, lc);
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (fm, fc) = leading(f, order).unwrap();
    let (gm, gc) = leading(g, order).unwrap();
    let l = mono_lcm(fm, gm);
    let mf = Polynomial::monomial(f.n, mono_sub(&l, fm), fc.inv());
    let mg = Polynomial::monomial(g.n, mono_sub(&l, gm), gc.inv());
    mf.mul(f).sub(&mg.mul(g))
}

fn buchberger(
    gens: &[Polynomial],
    order: &MonomialOrder,
    degree_cap: i64,
) -> Result<Vec<Polynomial>> {
    let n = gens.first().map_or(0, |g| g.n);
    for g in gens {
        if g.terms().any(|(m, _)| m.iter().any(|&e| e < 0)) {
            return Err(AlgebraError::InvalidPresentation(
                "ideal generators must be plain polynomials".into(),
            ));
        }
    }
    // interreduce the input first; redundant generators make the pair loop
    // explode in both count and coefficient size
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let r = reduce_full(g, &basis, order);
        if !r.is_zero() {
            let (_, lc) = leading(&r, order).unwrap();
            basis.push(r.scale(&lc.inv()));
        }
    }
    loop {
        let mut changed = false;
        let mut next: Vec<Polynomial> = Vec::new();
        for i in 0..basis.len() {
            let others: Vec<Polynomial> = basis
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = reduce_full(&basis[i], &others, order);
            if r != basis[i] {
                changed = true;
            }
            if !r.is_zero() {
                let (_, lc) = leading(&r, order).unwrap();
                next.push(r.scale(&lc.inv()));
            }
        }
        basis = next;
        if !changed {
            break;
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..i).map(move |j| (j, i)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (fi, fj) = (&basis[i], &basis[j]);
        let (mi, _) = leading(fi, order).unwrap();
        let (mj, _) = leading(fj, order).unwrap();
        // coprime leading monomials reduce to zero automatically
        if mono_lcm(mi, mj) == mi.iter().zip(mj).map(|(a, b)| a + b).collect::<Vec<_>>() {
            continue;
        }
        let s = s_polynomial(fi, fj, order);
        let r = reduce_full(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        if r.total_degree() > degree_cap {
            return Err(AlgebraError::DegreeBoundExceeded { bound: degree_cap as u32 });
        }
        let (_, lc) = leading(&r, order).unwrap();
        let r = r.scale(&lc.inv());
        let k = basis.len();
        for t in 0..k {
            pairs.push((t, k));
        }
        basis.push(r);
    }
    // interreduce to the unique reduced, monic basis
    let mut reduced: Vec<Polynomial> = Vec::new();
    for i in 0..basis.len() {
        let (mi, _) = leading(&basis[i], order).unwrap();
        let redundant = basis.iter().enumerate().any(|(k, g)| {
            if k == i {
                return false;
            }
            let (mk, _) = leading(g, order).unwrap();
            mono_divides(mk, mi) && (mk != mi || k < i)
        });
        if !redundant {
            reduced.push(basis[i].clone());
        }
    }
    let mut out: Vec<Polynomial> = Vec::new();
    for i in 0..reduced.len() {
        let others: Vec<Polynomial> = reduced
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = reduce_full(&reduced[i], &others, order);
        if r.is_zero() {
            continue;
        }
        let (_, lc) = leading(&r, order).unwrap();
        out.push(r.scale(&lc.inv()));
    }
    if out.is_empty() && !gens.iter().all(|g| g.is_zero()) {
        // can only happen transiently during interreduction of equal
        // leading monomials; redo sequentially
        return Ok(vec![Polynomial::one(n)]);
    }
    out.sort_by(|a, b| {
        let (ma, _) = leading(a, order).unwrap();
        let (mb, _) = leading(b, order).unwrap();
        order.cmp(ma, mb)
    });
    Ok(out)
}

/// Re-verifies the Buchberger criterion on a finished basis.
pub fn verify_groebner(basis: &[Polynomial], order: &MonomialOrder) -> bool {
    for i in 0..basis.len() {
        for j in 0..i {
            let s = s_polynomial(&basis[i], &basis[j], order);
            if !reduce_full(&s, basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}

/// An ideal with a lazily computed, cached reduced Gröbner basis.
#[derive(Debug)]
pub struct IdealPresentation {
    pub n: usize,
    pub generators: Vec<Polynomial>,
    pub order: MonomialOrder,
    pub degree_cap: i64,
    gb: OnceCell<std::result::Result<Vec<Polynomial>, AlgebraError>>,
}

impl Clone for IdealPresentation {
    fn clone(&self) -> Self {
        IdealPresentation {
            n: self.n,
            generators: self.generators.clone(),
            order: self.order.clone(),
            degree_cap: self.degree_cap,
            gb: self.gb.clone(),
        }
    }
}

impl IdealPresentation {
    pub fn new(n: usize, generators: Vec<Polynomial>, order: MonomialOrder) -> IdealPresentation {
        for g in &generators {
            assert_eq!(g.n, n);
        }
        IdealPresentation {
            n,
            generators,
            order,
            degree_cap: DEFAULT_GB_DEGREE_CAP,
            gb: OnceCell::new(),
        }
    }

    pub fn with_degree_cap(mut self, cap: i64) -> IdealPresentation {
        self.degree_cap = cap;
        self
    }

    pub fn groebner(&self) -> Result<&[Polynomial]> {
        let r = self
            .gb
            .get_or_init(|| buchberger(&self.generators, &self.order, self.degree_cap));
        match r {
            Ok(b) => Ok(b),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(reduce_full(f, self.groebner()?, &self.order))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_zero_ideal(&self) -> Result<bool> {
        Ok(self.groebner()?.is_empty())
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        let gb = self.groebner()?;
        Ok(gb.len() == 1 && gb[0] == Polynomial::one(self.n))
    }

    /// Ideal equality via the unique reduced bases (same order required).
    pub fn equals(&self, other: &IdealPresentation) -> Result<bool> {
        assert_eq!(self.order, other.order);
        Ok(self.groebner()? == other.groebner()?)
    }
}

/// {R, I} ⊆ I, checked on generators of the bracket (as a derivation) and
/// of the ideal; sufficient by the Leibniz rule.
pub fn is_poisson_ideal(ideal: &IdealPresentation, s: &PoissonStructure) -> Result<bool> {
    assert_eq!(ideal.n, s.n);
    let gb = ideal.groebner()?.to_vec();
    for i in 0..s.n {
        let xi = Polynomial::var(s.n, i);
        for g in &gb {
            if !ideal.contains(&s.bracket(&xi, g))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreCertificate {
    /// Verified: the result is a Poisson ideal.
    pub is_poisson: bool,
    /// Verified: the result is contained in the input ideal.
    pub contained_in_input: bool,
    /// Maximality is certified only among ideals generated in this degree.
    pub degree_bound: i64,
    pub iterations: usize,
}

/// All monomials in n variables of total degree ≤ d.
fn monomials_up_to(n: usize, d: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>, i: usize, left: i64) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(out, cur, i + 1, left - e);
            cur[i] = 0;
        }
    }
    rec(&mut out, &mut cur, 0, d);
    out
}

/// Echelonizes the rows (polynomials as coefficient vectors over `cols`) and
/// returns an independent spanning set.
fn echelon_polys(polys: Vec<Polynomial>, order: &MonomialOrder) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for mut p in polys {
        for b in &basis {
            let (bm, _) = leading(b, order).unwrap();
            let c = p.terms().find(|(m, _)| *m == bm).map(|(_, c)| c.clone());
            if let Some(c) = c {
                p = p.sub(&b.scale(&c));
            }
        }
        if p.is_zero() {
            continue;
        }
        let (_, lc) = leading(&p, order).unwrap();
        let p = p.scale(&lc.inv());
        basis.push(p);
        basis.sort_by(|a, b| {
            let (ma, _) = leading(a, order).unwrap();
            let (mb, _) = leading(b, order).unwrap();
            order.cmp(mb, ma)
        });
    }
    // back-substitute scalar multiples so each element has zero coefficient
    // at the others' leading monomials (linear, not polynomial, reduction)
    let snapshot = basis.clone();
    snapshot
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut p = p.clone();
            for (k, b) in snapshot.iter().enumerate() {
                if k == i {
                    continue;
                }
                let (bm, _) = leading(b, order).unwrap();
                let c = p.terms().find(|(m, _)| *m == bm).map(|(_, c)| c.clone());
                if let Some(c) = c {
                    p = p.sub(&b.scale(&c));
                }
            }
            p
        })
        .collect()
}

/// Kernel of the linear map sending a coefficient vector over `space` to the
/// concatenated images, via Gaussian elimination over the field.
fn linear_kernel(columns: usize, rows: Vec<Vec<FieldElement>>) -> Vec<Vec<FieldElement>> {
    let mut mat = rows;
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut rank = 0usize;
    let nrows = mat.len();
    for col in 0..columns {
        let Some(pr) = (rank..nrows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pr);
        let inv = mat[rank][col].inv();
        for x in mat[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..nrows {
            if r != rank && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in 0..columns {
                    let v = &mat[r][c] - &(&f * &mat[rank][c]);
                    mat[r][c] = v;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut kernel = Vec::new();
    for free in 0..columns {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![FieldElement::zero(); columns];
        v[free] = FieldElement::one();
        for &(r, c) in &pivots {
            v[c] = -&mat[r][free];
        }
        kernel.push(v);
    }
    kernel
}

/// Linear reduction of f against an echelonized basis (descending leading
/// monomials): subtracts scalar multiples only, never monomial multiples.
fn reduce_linear(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let mut p = f.clone();
    for b in basis {
        let (bm, _) = leading(b, order).unwrap();
        let c = p.terms().find(|(m, _)| *m == bm).map(|(_, c)| c.clone());
        if let Some(c) = c {
            p = p.sub(&b.scale(&c));
        }
    }
    p
}

/// The descending chain U₀ = J ∩ V_D, U_{k+1} = {f ∈ U_k : {x_i, f} lies in
/// the degree-bounded multiple span of U_k for all i}, run to stabilization.
/// The result is a Poisson ideal inside J; maximality is certified only
/// among ideals generated in degree ≤ D.
pub fn stable_core_bounded(
    j: &IdealPresentation,
    s: &PoissonStructure,
    degree_bound: i64,
    max_iter: usize,
) -> Result<(IdealPresentation, CoreCertificate)> {
    assert_eq!(j.n, s.n);
    if j.is_unit_ideal()? {
        return Err(AlgebraError::InvalidPresentation("input ideal must be proper".into()));
    }
    let n = j.n;
    let order = j.order.clone();
    // one bracket application raises degree by at most this much
    let mut excess = 0i64;
    for i in 0..n {
        for k in 0..i {
            excess = excess.max(s.pair(k, i).total_degree() - 1);
        }
    }
    let monos = monomials_up_to(n, degree_bound);
    let ext_monos = monomials_up_to(n, degree_bound + excess);
    // initial space: degree-bounded monomial multiples of the input basis
    // (exact for degree-compatible orders)
    let mut span: Vec<Polynomial> = Vec::new();
    for g in j.groebner()? {
        let dg = g.total_degree();
        for m in &monos {
            let dm: i64 = m.iter().sum();
            if dm + dg <= degree_bound {
                span.push(Polynomial::monomial(n, m.clone(), FieldElement::one()).mul(g));
            }
        }
    }
    let mut space = echelon_polys(span, &order);
    let mut iterations = 0usize;
    loop {
        if iterations >= max_iter {
            return Err(AlgebraError::NotStabilized { max_iter });
        }
        iterations += 1;
        if space.is_empty() {
            let zero = IdealPresentation::new(n, Vec::new(), order.clone());
            let cert = CoreCertificate {
                is_poisson: is_poisson_ideal(&zero, s)?,
                contained_in_input: true,
                degree_bound,
                iterations,
            };
            return Ok((zero, cert));
        }
        // membership space for the brackets: multiples of the current basis
        let mut mult: Vec<Polynomial> = Vec::new();
        for b in &space {
            let db = b.total_degree();
            for m in &ext_monos {
                let dm: i64 = m.iter().sum();
                if dm + db <= degree_bound + excess {
                    mult.push(Polynomial::monomial(n, m.clone(), FieldElement::one()).mul(b));
                }
            }
        }
        let membership = echelon_polys(mult, &order);
        // residues of the generator brackets after linear reduction
        let mut image_monos: Vec<Vec<i64>> = Vec::new();
        let mut images: Vec<Vec<Polynomial>> = Vec::new();
        for b in &space {
            let mut row = Vec::new();
            for i in 0..n {
                let br = reduce_linear(&s.bracket(&Polynomial::var(n, i), b), &membership, &order);
                for (m, _) in br.terms() {
                    if !image_monos.contains(m) {
                        image_monos.push(m.clone());
                    }
                }
                row.push(br);
            }
            images.push(row);
        }
        // columns = basis elements, rows = (generator, monomial) constraints
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        for i in 0..n {
            for m in &image_monos {
                let row: Vec<FieldElement> = images
                    .iter()
                    .map(|imgs| {
                        imgs[i]
                            .terms()
                            .find(|(mm, _)| *mm == m)
                            .map(|(_, c)| c.clone())
                            .unwrap_or_else(FieldElement::zero)
                    })
                    .collect();
                rows.push(row);
            }
        }
        let kernel = linear_kernel(space.len(), rows);
        let stabilized = kernel.len() == space.len();
        let mut next: Vec<Polynomial> = Vec::new();
        for v in kernel {
            let mut p = Polynomial::zero(n);
            for (c, b) in v.iter().zip(&space) {
                if !c.is_zero() {
                    p = p.add(&b.scale(c));
                }
            }
            if !p.is_zero() {
                next.push(p);
            }
        }
        if stabilized {
            let core = IdealPresentation::new(n, next, order.clone());
            let cert = CoreCertificate {
                is_poisson: is_poisson_ideal(&core, s)?,
                contained_in_input: core
                    .groebner()?
                    .iter()
                    .map(|g| j.contains(g))
                    .collect::<Result<Vec<bool>>>()?
                    .iter()
                    .all(|&b| b),
                degree_bound,
                iterations,
            };
            return Ok((core, cert));
        }
        space = echelon_polys(next, &order);
    }
}

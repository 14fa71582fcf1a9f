//! Arbitrary-precision integer matrices, Smith normal form with tracked
//! unimodular transforms, and kernel lattices (with optional torsion
//! congruence rows).

use num_bigint::BigInt;
use num_traits::{Euclid, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + &a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let t = a.get(k, j).clone();
                            a.set(k, j, a.get(i, j).clone());
                            a.set(i, j, t);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            for i in k + 1..n {
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }
}

struct SnfWorker {
    a: IntMatrix,
    u: IntMatrix,    // left factor: m = u * a * v throughout
    v: IntMatrix,    // right factor
    vinv: IntMatrix, // inverse of v (columns track the unknowns)
}

impl SnfWorker {
    fn new(m: &IntMatrix) -> SnfWorker {
        SnfWorker {
            a: m.clone(),
            u: IntMatrix::identity(m.rows),
            v: IntMatrix::identity(m.cols),
            vinv: IntMatrix::identity(m.cols),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols {
            let t = self.a.get(i, c).clone();
            self.a.set(i, c, self.a.get(j, c).clone());
            self.a.set(j, c, t);
        }
        // compensate: swap columns i, j of u
        for r in 0..self.u.rows {
            let t = self.u.get(r, i).clone();
            self.u.set(r, i, self.u.get(r, j).clone());
            self.u.set(r, j, t);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows {
            let t = self.a.get(r, i).clone();
            self.a.set(r, i, self.a.get(r, j).clone());
            self.a.set(r, j, t);
        }
        for c in 0..self.v.cols {
            let t = self.v.get(i, c).clone();
            self.v.set(i, c, self.v.get(j, c).clone());
            self.v.set(j, c, t);
        }
        for r in 0..self.vinv.rows {
            let t = self.vinv.get(r, i).clone();
            self.vinv.set(r, i, self.vinv.get(r, j).clone());
            self.vinv.set(r, j, t);
        }
    }

    /// row j += k * row i
    fn add_row(&mut self, j: usize, i: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.a.cols {
            let val = self.a.get(j, c) + k * self.a.get(i, c);
            self.a.set(j, c, val);
        }
        // compensate on u: col i -= k * col j
        for r in 0..self.u.rows {
            let val = self.u.get(r, i) - k * self.u.get(r, j);
            self.u.set(r, i, val);
        }
    }

    /// col j += k * col i
    fn add_col(&mut self, j: usize, i: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.a.rows {
            let val = self.a.get(r, j) + k * self.a.get(r, i);
            self.a.set(r, j, val);
        }
        // compensate on v: row i -= k * row j
        for c in 0..self.v.cols {
            let val = self.v.get(i, c) - k * self.v.get(j, c);
            self.v.set(i, c, val);
        }
        // track on vinv directly: col j += k * col i
        for r in 0..self.vinv.rows {
            let val = self.vinv.get(r, j) + k * self.vinv.get(r, i);
            self.vinv.set(r, j, val);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.a.cols {
            let val = -self.a.get(i, c).clone();
            self.a.set(i, c, val);
        }
        for r in 0..self.u.rows {
            let val = -self.u.get(r, i).clone();
            self.u.set(r, i, val);
        }
    }

    fn run(&mut self) {
        let n = self.a.rows.min(self.a.cols);
        for t in 0..n {
            loop {
                // pick the entry of least nonzero magnitude in the trailing block
                let mut pivot: Option<(usize, usize)> = None;
                for i in t..self.a.rows {
                    for j in t..self.a.cols {
                        if self.a.get(i, j).is_zero() {
                            continue;
                        }
                        match pivot {
                            None => pivot = Some((i, j)),
                            Some((pi, pj)) => {
                                if self.a.get(i, j).abs() < self.a.get(pi, pj).abs() {
                                    pivot = Some((i, j));
                                }
                            }
                        }
                    }
                }
                let Some((pi, pj)) = pivot else { return };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                if self.a.get(t, t).is_negative() {
                    self.negate_row(t);
                }
                let mut dirty = false;
                let p = self.a.get(t, t).clone();
                for i in t + 1..self.a.rows {
                    let q = -(self.a.get(i, t).div_euclid(&p));
                    self.add_row(i, t, &q);
                    if !self.a.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.a.cols {
                    let q = -(self.a.get(t, j).div_euclid(&p));
                    self.add_col(j, t, &q);
                    if !self.a.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // pivot must divide the remaining block
                let mut bad = None;
                'scan: for i in t + 1..self.a.rows {
                    for j in t + 1..self.a.cols {
                        if !(self.a.get(i, j) % &p).is_zero() {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    Some(i) => {
                        self.add_row(t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
        }
    }
}

/// Returns `(u, d, v)` with `m = u·d·v`, `u` and `v` unimodular, and `d`
/// diagonal with each entry dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut w = SnfWorker::new(m);
    w.run();
    (w.u, w.a, w.v)
}

/// A basis of a sublattice of ℤⁿ, stored as rows in row Hermite normal form
/// (so equal lattices have identical bases).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub n: usize,
    pub basis: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        // reduce v against the HNF rows
        let mut v = v.to_vec();
        for row in &self.basis {
            let lead = row.iter().position(|x| !x.is_zero()).unwrap();
            if v[lead].is_zero() {
                continue;
            }
            if !(&v[lead] % &row[lead]).is_zero() {
                return false;
            }
            let q = &v[lead] / &row[lead];
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi -= &q * ri;
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}

/// Row Hermite normal form (pivots positive, entries above a pivot reduced
/// into [0, pivot)); zero rows dropped.
pub fn row_hnf(rows: Vec<Vec<BigInt>>, n: usize) -> LatticeBasis {
    let mut rows: Vec<Vec<BigInt>> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let mut pivot_rows: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..n {
        // gcd-combine all rows with leading entry in this column
        loop {
            let mut idxs: Vec<usize> = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r[..col].iter().all(|x| x.is_zero()) && !r[col].is_zero())
                .map(|(i, _)| i)
                .collect();
            if idxs.len() <= 1 {
                break;
            }
            // reduce the larger leading entry by the smaller
            idxs.sort_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let (small, big) = (idxs[0], idxs[1]);
            let q = rows[big][col].div_euclid(&rows[small][col]);
            for j in 0..n {
                let v = &rows[big][j] - &q * &rows[small][j];
                rows[big][j] = v;
            }
        }
        if let Some(i) = rows
            .iter()
            .position(|r| r[..col].iter().all(|x| x.is_zero()) && !r[col].is_zero())
        {
            let mut r = rows.remove(i);
            if r[col].is_negative() {
                for x in r.iter_mut() {
                    *x = -x.clone();
                }
            }
            pivot_rows.push(r);
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    debug_assert!(rows.is_empty());
    // reduce entries above each pivot
    for k in (0..pivot_rows.len()).rev() {
        let (head, tail) = pivot_rows.split_at_mut(k);
        let row = &tail[0];
        let lead = row.iter().position(|x| !x.is_zero()).unwrap();
        for other in head.iter_mut() {
            let q = other[lead].div_euclid(&row[lead]);
            if !q.is_zero() {
                for j in 0..n {
                    other[j] -= &q * &row[j];
                }
            }
        }
    }
    LatticeBasis { n, basis: pivot_rows }
}

/// Basis of the integer kernel {v : m·v = 0}. The result is saturated
/// (it is a direct summand of ℤⁿ, read off from the SNF transform).
pub fn integer_kernel(m: &IntMatrix) -> LatticeBasis {
    let mut w = SnfWorker::new(m);
    w.run();
    let n = m.cols;
    let r = (0..m.rows.min(n)).take_while(|&i| !w.a.get(i, i).is_zero()).count();
    let rows: Vec<Vec<BigInt>> = (r..n)
        .map(|j| (0..n).map(|i| w.vinv.get(i, j).clone()).collect())
        .collect();
    row_hnf(rows, n)
}

/// Solves the mixed system: `free` rows must vanish exactly, and row k of
/// `torsion` must vanish modulo `orders[k]`. Columns index the unknowns.
///
/// Without torsion rows the result is the saturated kernel; with torsion
/// rows it is the exact solution lattice, which need not be saturated.
pub fn kernel_lattice(free: &IntMatrix, torsion: &IntMatrix, orders: &[BigInt]) -> LatticeBasis {
    let n = free.cols;
    assert_eq!(torsion.rows, orders.len());
    if !orders.is_empty() {
        assert_eq!(torsion.cols, n);
    }
    let t = orders.len();
    if t == 0 {
        return integer_kernel(free);
    }
    // Solutions of {A·m = 0, B·m ≡ 0 (mod ℓ)} are the projection to the
    // first n coordinates of the kernel of [[A, 0], [B, diag(ℓ)]].
    let mut stacked = IntMatrix::zero(free.rows + t, n + t);
    for i in 0..free.rows {
        for j in 0..n {
            stacked.set(i, j, free.get(i, j).clone());
        }
    }
    for k in 0..t {
        for j in 0..n {
            stacked.set(free.rows + k, j, torsion.get(k, j).clone());
        }
        stacked.set(free.rows + k, n + k, orders[k].clone());
    }
    let ker = integer_kernel(&stacked);
    let rows: Vec<Vec<BigInt>> = ker.basis.into_iter().map(|r| r[..n].to_vec()).collect();
    row_hnf(rows, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) {
        let (u, d, v) = smith_normal_form(m);
        assert_eq!(u.det().abs(), BigInt::one());
        assert_eq!(v.det().abs(), BigInt::one());
        assert_eq!(u.mul(&d).mul(&v), *m);
        let n = m.rows.min(m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                if i != j {
                    assert!(d.get(i, j).is_zero());
                }
            }
        }
        for i in 1..n {
            let prev = d.get(i - 1, i - 1);
            let cur = d.get(i, i);
            if prev.is_zero() {
                assert!(cur.is_zero());
            } else {
                assert!((cur % prev).is_zero());
            }
        }
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(3);
        let (u, d, v) = smith_normal_form(&m);
        assert_eq!(d, m);
        assert_eq!(u.mul(&d).mul(&v), m);
        check_snf(&m);
    }

    #[test]
    fn snf_hand_oracle() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = |16-24| = 8, so D = diag(2, 4)
        let m = IntMatrix::from_i64(&[vec![2, 4], vec![6, 8]]);
        let (_, d, _) = smith_normal_form(&m);
        assert_eq!(d.get(0, 0), &BigInt::from(2));
        assert_eq!(d.get(1, 1), &BigInt::from(4));
        check_snf(&m);
    }

    #[test]
    fn snf_zero() {
        let m = IntMatrix::zero(2, 3);
        let (_, d, _) = smith_normal_form(&m);
        assert!(d == IntMatrix::zero(2, 3));
        check_snf(&m);
    }

    #[test]
    fn snf_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let r = rng.gen_range(1..5);
            let c = rng.gen_range(1..5);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            check_snf(&IntMatrix::from_i64(&rows));
        }
    }

    #[test]
    fn kernel_of_antisymmetric_oracle() {
        let m = IntMatrix::from_i64(&[vec![0, -1, -2], vec![1, 0, -1], vec![2, 1, 0]]);
        let k = integer_kernel(&m);
        assert_eq!(k.basis, vec![vec![BigInt::from(1), BigInt::from(-2), BigInt::from(1)]]);
    }

    #[test]
    fn kernel_identity_trivial() {
        let k = integer_kernel(&IntMatrix::identity(3));
        assert!(k.is_trivial());
    }

    fn brute_box_kernel(free: &IntMatrix, torsion: &IntMatrix, orders: &[BigInt]) -> Vec<Vec<BigInt>> {
        let n = free.cols;
        let mut sols = Vec::new();
        let mut v = vec![-4i64; n];
        loop {
            let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            let ok_free = free.mul_vec(&vb).iter().all(|x| x.is_zero());
            let ok_tor = torsion
                .mul_vec(&vb)
                .iter()
                .zip(orders)
                .all(|(x, l)| (x % l).is_zero());
            if ok_free && ok_tor {
                sols.push(vb);
            }
            // odometer
            let mut i = 0;
            loop {
                if i == n {
                    return sols;
                }
                v[i] += 1;
                if v[i] <= 4 {
                    break;
                }
                v[i] = -4;
                i += 1;
            }
        }
    }

    #[test]
    fn kernel_matches_brute_force_box() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let n = 4;
            let mut m = IntMatrix::zero(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    let a: i64 = rng.gen_range(-3..=3);
                    m.set(i, j, BigInt::from(a));
                    m.set(j, i, BigInt::from(-a));
                }
            }
            let k = integer_kernel(&m);
            let empty = IntMatrix::zero(0, n);
            for sol in brute_box_kernel(&m, &empty, &[]) {
                assert!(k.contains(&sol), "box solution missing from kernel of {:?}", m);
            }
            for b in &k.basis {
                assert!(m.mul_vec(b).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn kernel_with_torsion_congruence() {
        // x + y ≡ 0 (mod 2), no free constraints: lattice {(a,b) : a+b even}
        let free = IntMatrix::zero(0, 2);
        let tor = IntMatrix::from_i64(&[vec![1, 1]]);
        let k = kernel_lattice(&free, &tor, &[BigInt::from(2)]);
        assert_eq!(k.rank(), 2);
        let brute = brute_box_kernel(&free, &tor, &[BigInt::from(2)]);
        for sol in &brute {
            assert!(k.contains(sol));
        }
        assert!(!k.contains(&[BigInt::one(), BigInt::zero()]));
    }

    #[test]
    fn kernel_torsion_random_box() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let n = 3;
            let fr = rng.gen_range(0..2);
            let free = IntMatrix::from_rows(
                (0..fr)
                    .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-2..=2i64))).collect())
                    .collect::<Vec<_>>(),
            );
            let free = if fr == 0 { IntMatrix::zero(0, n) } else { free };
            let tor = IntMatrix::from_rows(vec![(0..n)
                .map(|_| BigInt::from(rng.gen_range(-2..=2i64)))
                .collect()]);
            let orders = vec![BigInt::from(rng.gen_range(2..=4i64))];
            let k = kernel_lattice(&free, &tor, &orders);
            for sol in brute_box_kernel(&free, &tor, &orders) {
                assert!(k.contains(&sol));
            }
            for b in &k.basis {
                assert!(free.mul_vec(b).iter().all(|x| x.is_zero()));
                for (x, l) in tor.mul_vec(b).iter().zip(&orders) {
                    assert!((x % l).is_zero());
                }
            }
        }
    }

    #[test]
    fn hnf_is_canonical() {
        let a = row_hnf(
            vec![
                vec![BigInt::from(2), BigInt::from(1)],
                vec![BigInt::from(0), BigInt::from(3)],
            ],
            2,
        );
        let b = row_hnf(
            vec![
                vec![BigInt::from(2), BigInt::from(4)],
                vec![BigInt::from(0), BigInt::from(3)],
            ],
            2,
        );
        assert_eq!(a, b);
    }
}

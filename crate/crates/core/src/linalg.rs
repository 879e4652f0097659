//! Exact linear algebra: rational elimination, integer Smith normal form and
//! Fourier–Motzkin feasibility for small systems of linear inequalities.

use num_traits::{One, Signed, Zero};

use crate::ring::{int, Rational};

pub type QVec = Vec<Rational>;
pub type QMat = Vec<QVec>;
pub type IMat = Vec<Vec<i64>>;

pub fn to_q(v: &[i64]) -> QVec {
    v.iter().map(|&x| int(x)).collect()
}

pub fn to_q_mat(m: &IMat) -> QMat {
    m.iter().map(|r| to_q(r)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_qi(a: &[Rational], b: &[i64]) -> Rational {
    a.iter().zip(b).map(|(x, &y)| x * int(y)).sum()
}

/// Columns of an `r x n` matrix given as rows, or the other way round.
pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMat) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Determinant of a square matrix.
pub fn det(m: &QMat) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Inverse of a square matrix, if nonsingular.
pub fn inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let piv = rref(&mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &QMat, v: &[Rational]) -> QVec {
    m.iter().map(|r| dot(r, v)).collect()
}

/// Some solution of `m x = b`, if one exists.
pub fn solve(m: &QMat, b: &[Rational]) -> Option<QVec> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut a: QMat = m.iter().zip(b).map(|(r, x)| {
        let mut row = r.clone();
        row.push(x.clone());
        row
    }).collect();
    let piv = rref(&mut a);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = a[i][cols].clone();
    }
    Some(x)
}

/// Basis of the right null space.
pub fn nullspace(m: &QMat) -> Vec<QVec> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut a = m.clone();
    let piv = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &c) in piv.iter().enumerate() {
                v[c] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

/// Scale a rational vector to a primitive integer vector with the same direction.
pub fn primitive(v: &[Rational]) -> Vec<i64> {
    use num_integer::Integer;
    let l = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            i64::try_from(y).expect("entry fits in i64")
        })
        .collect()
}

/// Smith normal form `U A V = D` of an integer matrix, with `U`, `V` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: IMat,
    pub d: IMat,
    pub v: IMat,
}

impl Smith {
    /// Nonzero diagonal entries.
    pub fn invariants(&self) -> Vec<i64> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len())))
            .map(|i| self.d[i][i])
            .filter(|&x| x != 0)
            .collect()
    }
}

fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn smith_normal_form(a: &IMat) -> Smith {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let row_op = |mat: &mut IMat, dst: usize, src: usize, f: i64| {
        for j in 0..mat[0].len() {
            mat[dst][j] -= f * mat[src][j];
        }
    };
    let col_op = |mat: &mut IMat, dst: usize, src: usize, f: i64| {
        for row in mat.iter_mut() {
            row[dst] -= f * row[src];
        }
    };
    let swap_cols = |mat: &mut IMat, a: usize, b: usize| {
        for row in mat.iter_mut() {
            row.swap(a, b);
        }
    };
    for t in 0..m.min(n) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..m {
                let f = d[i][t].div_euclid(d[t][t]);
                if f != 0 {
                    row_op(&mut d, i, t, f);
                    row_op(&mut u, i, t, f);
                }
                if d[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let f = d[t][j].div_euclid(d[t][t]);
                if f != 0 {
                    col_op(&mut d, j, t, f);
                    col_op(&mut v, j, t, f);
                }
                if d[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: the pivot must divide the rest of the block.
            let bad = (t + 1..m).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| d[i][j] % d[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    for j in 0..n {
                        d[t][j] += d[i][j];
                    }
                    for j in 0..m {
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if t < m && t < n && d[t][t] < 0 {
            for j in 0..n {
                d[t][j] = -d[t][j];
            }
            for j in 0..m {
                u[t][j] = -u[t][j];
            }
        }
    }
    Smith { u, d, v }
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect())
        .collect()
}

/// A linear inequality `a . x >= b` (or `>` when strict).
#[derive(Debug, Clone, PartialEq)]
pub struct Inequality {
    pub a: QVec,
    pub b: Rational,
    pub strict: bool,
}

impl Inequality {
    pub fn ge(a: QVec, b: Rational) -> Self {
        Inequality { a, b, strict: false }
    }
    pub fn gt(a: QVec, b: Rational) -> Self {
        Inequality { a, b, strict: true }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let v = dot(&self.a, x);
        if self.strict {
            v > self.b
        } else {
            v >= self.b
        }
    }

    fn normalized(mut self) -> Self {
        // Scale so the first nonzero coefficient has absolute value one.
        if let Some(p) = self.a.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
            for x in self.a.iter_mut() {
                *x /= &p;
            }
            self.b /= &p;
        }
        self
    }
}

/// A point satisfying every inequality, found by Fourier–Motzkin elimination,
/// or `None` if the system is infeasible.
pub fn feasible_point(ineqs: &[Inequality], dim: usize) -> Option<QVec> {
    let mut stages: Vec<Vec<Inequality>> = vec![dedup(ineqs.to_vec())];
    for k in (0..dim).rev() {
        let cur = stages.last().expect("nonempty");
        let (mut keep, mut lo, mut hi) = (Vec::new(), Vec::new(), Vec::new());
        for q in cur {
            if q.a[k].is_zero() {
                keep.push(q.clone());
            } else if q.a[k].is_positive() {
                lo.push(q.clone());
            } else {
                hi.push(q.clone());
            }
        }
        for l in &lo {
            for h in &hi {
                // l: a_k x_k >= b - rest, h: -|c_k| x_k >= ... ; combine to cancel x_k.
                let fl = -h.a[k].clone();
                let fh = l.a[k].clone();
                let a: QVec = l.a.iter().zip(&h.a).map(|(x, y)| x * &fl + y * &fh).collect();
                keep.push(Inequality { a, b: &l.b * &fl + &h.b * &fh, strict: l.strict || h.strict });
            }
        }
        stages.push(dedup(keep));
    }
    for q in stages.last().expect("nonempty") {
        if !q.holds(&vec![Rational::zero(); dim]) {
            return None;
        }
    }
    // Back-substitution, innermost variable first.
    let mut x = vec![Rational::zero(); dim];
    for k in 0..dim {
        let sys = &stages[dim - 1 - k];
        let mut lower: Option<(Rational, bool)> = None;
        let mut upper: Option<(Rational, bool)> = None;
        for q in sys {
            if q.a[k].is_zero() {
                continue;
            }
            let rest: Rational = q.a.iter().zip(&x).enumerate().filter(|(i, _)| *i != k).map(|(_, (a, v))| a * v).sum();
            let bound = (&q.b - rest) / &q.a[k];
            if q.a[k].is_positive() {
                if lower.as_ref().is_none_or(|(l, s)| bound > *l || (bound == *l && q.strict && !s)) {
                    lower = Some((bound, q.strict));
                }
            } else if upper.as_ref().is_none_or(|(u, s)| bound < *u || (bound == *u && q.strict && !s)) {
                upper = Some((bound, q.strict));
            }
        }
        x[k] = match (lower, upper) {
            (None, None) => Rational::zero(),
            (Some((l, s)), None) => if s { l + Rational::one() } else { l },
            (None, Some((u, s))) => if s { u - Rational::one() } else { u },
            (Some((l, ls)), Some((u, us))) => {
                if l < u {
                    if !ls { l } else if !us { u } else { (l + u) / int(2) }
                } else if l == u && !ls && !us {
                    l
                } else {
                    return None;
                }
            }
        };
    }
    debug_assert!(ineqs.iter().all(|q| q.holds(&x)));
    Some(x)
}

fn dedup(v: Vec<Inequality>) -> Vec<Inequality> {
    let mut out: Vec<Inequality> = Vec::new();
    for q in v.into_iter().map(Inequality::normalized) {
        if q.a.iter().all(|x| x.is_zero()) && q.holds(&vec![Rational::zero(); q.a.len()]) {
            continue;
        }
        if let Some(same) = out.iter_mut().find(|p| p.a == q.a) {
            // Keep the tighter of two parallel constraints.
            if q.b > same.b || (q.b == same.b && q.strict) {
                *same = q;
            }
            continue;
        }
        out.push(q);
    }
    out
}

/// Whether `x` lies in the closed cone generated by `gens` (exact, via Carathéodory).
pub fn in_cone(gens: &[QVec], x: &[Rational]) -> bool {
    if x.iter().all(|c| c.is_zero()) {
        return true;
    }
    let dim = x.len();
    let n = gens.len();
    // Every point of a cone lies in a simplicial cone over linearly independent generators.
    let mut found = false;
    for_each_subset(n, dim, &mut |s| {
        if found {
            return;
        }
        let cols: QMat = s.iter().map(|&i| gens[i].clone()).collect();
        let m = transpose(&cols);
        if rank(&m) != s.len() {
            return;
        }
        if let Some(l) = solve(&m, x) {
            if l.iter().all(|c| !c.is_negative()) {
                found = true;
            }
        }
    });
    found
}

/// Calls `f` on every subset of `0..n` of size `1..=max`, in lexicographic order.
pub fn for_each_subset(n: usize, max: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        for i in start..n {
            cur.push(i);
            f(cur);
            if cur.len() < max {
                rec(i + 1, n, max, cur, f);
            }
            cur.pop();
        }
    }
    rec(0, n, max, &mut Vec::new(), f);
}

/// All subsets of `0..n` of size exactly `k`, lexicographically.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        return vec![Vec::new()];
    }
    for_each_subset(n, k, &mut |s| {
        if s.len() == k {
            out.push(s.to_vec());
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn inverse_and_det() {
        let m = to_q_mat(&vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(det(&m), int(1));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, to_q_mat(&vec![vec![1, -1], vec![-1, 2]]));
        assert!(inverse(&to_q_mat(&vec![vec![1, 2], vec![2, 4]])).is_none());
        assert_eq!(rank(&to_q_mat(&vec![vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn null_space_and_solve() {
        let m = to_q_mat(&vec![vec![1, 1, 1]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&m, v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(solve(&m, &[int(3)]).map(|x| dot(&m[0], &x)), Some(int(3)));
        assert_eq!(primitive(&[rat(1, 2), rat(-3, 4)]), vec![2, -3]);
    }

    #[test]
    fn smith_form() {
        for a in [
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
            vec![vec![1, 2]],
            vec![vec![2], vec![4]],
            vec![vec![1, 1, 1, 0], vec![0, 0, 1, 1]],
        ] {
            let s = smith_normal_form(&a);
            assert_eq!(imat_mul(&imat_mul(&s.u, &a), &s.v), s.d);
            let inv = s.invariants();
            for w in inv.windows(2) {
                assert_eq!(w[1] % w[0], 0);
            }
            let qdet = |m: &IMat| det(&to_q_mat(m)).abs();
            assert_eq!(qdet(&s.u), int(1));
            assert_eq!(qdet(&s.v), int(1));
        }
        assert_eq!(smith_normal_form(&vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).invariants(), vec![2, 6, 12]);
    }

    #[test]
    fn fourier_motzkin() {
        // x > 0, y > 0, x + y < 1
        let sys = vec![
            Inequality::gt(to_q(&[1, 0]), int(0)),
            Inequality::gt(to_q(&[0, 1]), int(0)),
            Inequality::gt(to_q(&[-1, -1]), int(-1)),
        ];
        let p = feasible_point(&sys, 2).unwrap();
        assert!(sys.iter().all(|q| q.holds(&p)));
        let bad = vec![Inequality::gt(to_q(&[1]), int(0)), Inequality::ge(to_q(&[-1]), int(0))];
        assert!(feasible_point(&bad, 1).is_none());
        let tight = vec![Inequality::ge(to_q(&[1]), int(2)), Inequality::ge(to_q(&[-1]), int(-2))];
        assert_eq!(feasible_point(&tight, 1), Some(vec![int(2)]));
    }

    #[test]
    fn cone_membership() {
        let gens = vec![to_q(&[1, 0]), to_q(&[1, 1])];
        assert!(in_cone(&gens, &to_q(&[2, 1])));
        assert!(!in_cone(&gens, &to_q(&[0, 1])));
        assert!(in_cone(&gens, &to_q(&[0, 0])));
    }
}

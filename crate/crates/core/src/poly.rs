//! Commutative polynomials with exact rational coefficients over an
//! ordered variable set.  Instantiated with loop-algebra variables
//! e_{ij}[r] (images in S(g_-)) and free-field variables b_i[r].

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::{qi, Q};

/// Commutative variable e_{ij}[r] in the symmetric algebra S(g_-).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EVar {
    pub i: u8,
    pub j: u8,
    pub r: i32,
}

/// Free-field variable b_i[r], r < 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BVar {
    pub i: u8,
    pub r: i32,
}

/// A commutative polynomial: map from sorted variable multisets to
/// nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<V: Ord + Clone> {
    pub terms: BTreeMap<Vec<V>, Q>,
}

impl<V: Ord + Clone> Poly<V> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        let mut p = Poly::zero();
        p.add_mono(vec![], qi(1));
        p
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_mono(vec![], c);
        p
    }

    pub fn var(v: V) -> Self {
        let mut p = Poly::zero();
        p.add_mono(vec![v], qi(1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Insert `c * prod(vars)`; `vars` must be sorted.
    pub fn add_mono(&mut self, vars: Vec<V>, c: Q) {
        if c.is_zero() {
            return;
        }
        debug_assert!(vars.windows(2).all(|w| w[0] <= w[1]));
        match self.terms.entry(vars) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(vac) => {
                vac.insert(c);
            }
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Partial derivative with respect to a single variable.
    pub fn derivative(&self, v: &V) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mult = m.iter().filter(|x| *x == v).count();
            if mult == 0 {
                continue;
            }
            let mut reduced = m.clone();
            let pos = reduced.iter().position(|x| x == v).unwrap();
            reduced.remove(pos);
            out.add_mono(reduced, c * qi(mult as i64));
        }
        out
    }

    /// Evaluate at a point; missing variables evaluate to zero.
    pub fn eval(&self, point: &BTreeMap<V, Q>) -> Q {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut dead = false;
            for x in m {
                match point.get(x) {
                    Some(val) => v *= val,
                    None => {
                        dead = true;
                        break;
                    }
                }
            }
            if !dead {
                total += v;
            }
        }
        total
    }

    /// Apply a derivation D given by its action on variables, extended by
    /// the Leibniz rule.
    pub fn apply_derivation(&self, d_of_var: impl Fn(&V) -> Poly<V>) -> Poly<V> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for p in 0..m.len() {
                let img = d_of_var(&m[p]);
                let mut rest = m.clone();
                rest.remove(p);
                let mut part = Poly::zero();
                part.add_mono(rest, c.clone());
                out = out + part * img;
            }
        }
        out
    }

    /// Variables occurring in the polynomial, deduplicated.
    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self.terms.keys().flatten().cloned().collect();
        vs.sort();
        vs.dedup();
        vs
    }
}

impl<V: Ord + Clone> Add for Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: Poly<V>) -> Poly<V> {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.add_mono(m, c);
        }
        out
    }
}

impl<V: Ord + Clone> Sub for Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: Poly<V>) -> Poly<V> {
        self + (-rhs)
    }
}

impl<V: Ord + Clone> Neg for Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<V: Ord + Clone> Mul for Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: Poly<V>) -> Poly<V> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = Vec::with_capacity(ma.len() + mb.len());
                m.extend_from_slice(ma);
                m.extend_from_slice(mb);
                m.sort();
                out.add_mono(m, ca * cb);
            }
        }
        out
    }
}

/// Rank of an exact rational matrix via Gaussian elimination.
pub fn rational_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        let pivot = (rank..nrows).find(|&r| !m[r][col].is_zero());
        match pivot {
            None => {
                col += 1;
            }
            Some(p) => {
                m.swap(rank, p);
                let inv = m[rank][col].clone();
                for r in rank + 1..nrows {
                    if !m[r][col].is_zero() {
                        let f = &m[r][col] / &inv;
                        for c in col..ncols {
                            let sub = &f * &m[rank][c];
                            m[r][c] -= sub;
                        }
                    }
                }
                rank += 1;
                col += 1;
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn poly_arithmetic_and_derivative() {
        let x = Poly::var(BVar { i: 1, r: -1 });
        let y = Poly::var(BVar { i: 2, r: -1 });
        let p = x.clone() * x.clone() * y.clone() + y.clone().scaled(&qi(3));
        let dx = p.derivative(&BVar { i: 1, r: -1 });
        assert_eq!(dx, x.clone().scaled(&qi(2)) * y.clone());
        let dy = p.derivative(&BVar { i: 2, r: -1 });
        assert_eq!(dy, x.clone() * x + Poly::constant(qi(3)));
    }

    #[test]
    fn rank_of_singular_matrix() {
        let rows = vec![
            vec![qi(1), qi(2), qi(3)],
            vec![qi(2), qi(4), qi(6)],
            vec![qi(0), qi(1), q(1, 2)],
        ];
        assert_eq!(rational_rank(&rows), 2);
    }
}

//! Matrices over the noncommutative engine: column-determinants,
//! trace-powers, Manin-matrix predicates, and the u-series form of the
//! Newton-Liouville identity.

use std::collections::BTreeMap;


use crate::element::{bracket, NcElement};
use crate::generator::{Gen, Term};
use crate::ring::{cdet_generic, Ring};
use crate::{qi, Q};

impl Ring for NcElement {
    fn radd(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn rmul(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn rneg(&self) -> Self {
        -self.clone()
    }
}

/// Square matrix with entries in one algebra context.
#[derive(Clone, PartialEq, Debug)]
pub struct NcMatrix {
    pub rank: u32,
    pub entries: Vec<Vec<NcElement>>,
}

impl NcMatrix {
    pub fn new(rank: u32, entries: Vec<Vec<NcElement>>) -> NcMatrix {
        let n = entries.len();
        assert!(n >= 1 && entries.iter().all(|row| row.len() == n));
        NcMatrix { rank, entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// The matrix tau + E[-1]: tau + e_{ii}[-1] on the diagonal,
    /// e_{ij}[-1] off the diagonal.
    pub fn tau_matrix(n: u32) -> NcMatrix {
        let mut entries = Vec::with_capacity(n as usize);
        for i in 1..=n as u8 {
            let mut row = Vec::with_capacity(n as usize);
            for j in 1..=n as u8 {
                let mut e = NcElement::from_gen(n, Gen::e(i, j, -1));
                if i == j {
                    e.add_term(Term::single(Gen::Tau), qi(1));
                }
                row.push(e);
            }
            entries.push(row);
        }
        NcMatrix::new(n, entries)
    }

    /// Column-determinant: sum over permutations of
    /// sgn(s) a_{s(1)1} ... a_{s(n)n}.
    pub fn cdet(&self) -> NcElement {
        cdet_generic(&self.entries)
    }

    /// tr(A^k) with noncommutative matrix product.
    pub fn trace_power(&self, k: u32) -> NcElement {
        let n = self.size();
        if k == 0 {
            return NcElement::scalar(self.rank, qi(n as i64));
        }
        let mut pow = self.entries.clone();
        for _ in 1..k {
            pow = mat_mul(&pow, &self.entries, self.rank);
        }
        let mut tr = NcElement::zero_ranked(self.rank);
        for (i, row) in pow.iter().enumerate() {
            tr = tr + row[i].clone();
        }
        tr
    }

    /// Check the Manin property a_{ij}a_{kl} - a_{kl}a_{ij}
    /// = a_{kj}a_{il} - a_{il}a_{kj} for all quadruples; returns the first
    /// violating quadruple if any.
    pub fn manin_violation(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.size();
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let a = &self.entries;
                        let lhs = a[i][j].clone() * a[k][l].clone()
                            - a[k][l].clone() * a[i][j].clone();
                        let rhs = a[k][j].clone() * a[i][l].clone()
                            - a[i][l].clone() * a[k][j].clone();
                        if lhs != rhs {
                            return Some((i + 1, j + 1, k + 1, l + 1));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_manin(&self) -> bool {
        self.manin_violation().is_none()
    }

    pub fn with_rows_swapped(&self, p: usize, q: usize) -> NcMatrix {
        let mut entries = self.entries.clone();
        entries.swap(p, q);
        NcMatrix::new(self.rank, entries)
    }

    pub fn with_cols_swapped(&self, p: usize, q: usize) -> NcMatrix {
        let mut entries = self.entries.clone();
        for row in &mut entries {
            row.swap(p, q);
        }
        NcMatrix::new(self.rank, entries)
    }

    /// cdet changes sign under a row swap (any matrix).
    pub fn row_swap_sign_check(&self, p: usize, q: usize) -> bool {
        self.with_rows_swapped(p, q).cdet() == -self.cdet()
    }

    /// cdet changes sign under a column swap (valid for Manin matrices).
    pub fn col_swap_sign_check(&self, p: usize, q: usize) -> bool {
        self.with_cols_swapped(p, q).cdet() == -self.cdet()
    }

    /// Minor with row `i` and column `j` deleted (0-based).
    pub fn minor(&self, i: usize, j: usize) -> NcMatrix {
        let mut entries = Vec::new();
        for (r, row) in self.entries.iter().enumerate() {
            if r == i {
                continue;
            }
            let new_row: Vec<NcElement> = row
                .iter()
                .enumerate()
                .filter(|(c, _)| *c != j)
                .map(|(_, e)| e.clone())
                .collect();
            entries.push(new_row);
        }
        NcMatrix::new(self.rank, entries)
    }

    /// [b, cdet A] = sum_i cdet(A with column i bracketed by b).
    pub fn lemma_comm_check(&self, b: &NcElement) -> bool {
        let lhs = b.commutator(&self.cdet());
        let n = self.size();
        let mut rhs = NcElement::zero_ranked(self.rank);
        for col in 0..n {
            let mut m = self.entries.clone();
            for row in m.iter_mut() {
                row[col] = b.commutator(&row[col]);
            }
            rhs = rhs + cdet_generic(&m);
        }
        lhs == rhs
    }

    /// Column-replacement expansion: replace column `j` by the column
    /// with `b` in row `i` and zeros elsewhere; the resulting cdet equals
    /// (-1)^{n-j} times the cdet with that column moved last, plus
    /// (-1)^{i+j} times a sum of bracketed minors (rows/columns 0-based
    /// in the arguments, the sign uses 1-based indices).
    pub fn lemma_replace_column_check(&self, b: &NcElement, i: usize, j: usize) -> bool {
        let n = self.size();
        let zero = NcElement::zero_ranked(self.rank);

        // left side
        let mut left_m = self.entries.clone();
        for (r, row) in left_m.iter_mut().enumerate() {
            row[j] = if r == i { b.clone() } else { zero.clone() };
        }
        let lhs = cdet_generic(&left_m);

        // first right term: column j moved to the last position
        let mut moved = Vec::new();
        for (r, row) in self.entries.iter().enumerate() {
            let mut new_row: Vec<NcElement> = row
                .iter()
                .enumerate()
                .filter(|(c, _)| *c != j)
                .map(|(_, e)| e.clone())
                .collect();
            new_row.push(if r == i { b.clone() } else { zero.clone() });
            moved.push(new_row);
        }
        let sign1 = if (n - (j + 1)) % 2 == 0 { qi(1) } else { qi(-1) };
        let mut rhs = cdet_generic(&moved).scaled(&sign1);

        // commutator minors: delete row i and column j, and in original
        // column k put [b, a_{mk}] for the remaining rows m.
        let sign2 = if ((i + 1) + (j + 1)) % 2 == 0 { qi(1) } else { qi(-1) };
        for k in j + 1..n {
            if n == 1 {
                break;
            }
            let mut minor_m = Vec::new();
            for (r, row) in self.entries.iter().enumerate() {
                if r == i {
                    continue;
                }
                let mut new_row = Vec::new();
                for (c, e) in row.iter().enumerate() {
                    if c == j {
                        continue;
                    }
                    new_row.push(if c == k { b.commutator(e) } else { e.clone() });
                }
                minor_m.push(new_row);
            }
            rhs = rhs + cdet_generic(&minor_m).scaled(&sign2);
        }
        lhs == rhs
    }
}

fn mat_mul(
    a: &[Vec<NcElement>],
    b: &[Vec<NcElement>],
    rank: u32,
) -> Vec<Vec<NcElement>> {
    let n = a.len();
    let mut out = vec![vec![NcElement::zero_ranked(rank); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = NcElement::zero_ranked(rank);
            for k in 0..n {
                acc = acc + a[i][k].clone() * b[k][j].clone();
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Truncated Laurent polynomial in a central variable u with NcElement
/// coefficients; powers below `min_pow` are discarded.
#[derive(Clone, PartialEq, Debug)]
pub struct USeries {
    pub rank: u32,
    pub min_pow: i64,
    pub coeffs: BTreeMap<i64, NcElement>,
}

impl USeries {
    pub fn zero(rank: u32, min_pow: i64) -> USeries {
        USeries { rank, min_pow, coeffs: BTreeMap::new() }
    }

    pub fn set(&mut self, pow: i64, e: NcElement) {
        if pow < self.min_pow || e.is_zero() {
            return;
        }
        self.coeffs.insert(pow, e);
    }

    pub fn add_coeff(&mut self, pow: i64, e: NcElement) {
        if pow < self.min_pow || e.is_zero() {
            return;
        }
        let rank = self.rank;
        let cur = self.coeffs.entry(pow).or_insert_with(|| NcElement::zero_ranked(rank));
        *cur = cur.clone() + e;
        if cur.is_zero() {
            self.coeffs.remove(&pow);
        }
    }

    pub fn coeff(&self, pow: i64) -> NcElement {
        self.coeffs.get(&pow).cloned().unwrap_or_else(|| NcElement::zero_ranked(self.rank))
    }

    /// Substitute tau -> u + tau in an element whose normal-form words
    /// carry tau rightmost: tau^k expands binomially since u is central.
    pub fn from_tau_shift(e: &NcElement, min_pow: i64) -> USeries {
        let mut out = USeries::zero(e.rank, min_pow);
        for (t, c) in &e.terms {
            let p = t.tau_degree();
            let head: Vec<Gen> = t.word.iter().copied().filter(|g| *g != Gen::Tau).collect();
            let mut binom = Q::from_integer(1.into());
            for m in 0..=p {
                // coefficient of u^m tau^{p-m}
                let mut word = head.clone();
                word.extend(std::iter::repeat(Gen::Tau).take(p - m));
                let mut part = NcElement::zero_ranked(e.rank);
                part.add_term(Term { kdeg: t.kdeg, word }, c * &binom);
                out.add_coeff(m as i64, part);
                binom *= qi((p - m) as i64);
                binom /= qi((m + 1) as i64);
            }
        }
        out
    }

    pub fn derivative_u(&self) -> USeries {
        let mut out = USeries::zero(self.rank, self.min_pow);
        for (p, e) in &self.coeffs {
            if *p != 0 {
                out.add_coeff(p - 1, e.scaled(&qi(*p)));
            }
        }
        out
    }

    pub fn mul(&self, other: &USeries) -> USeries {
        let mut out = USeries::zero(self.rank, self.min_pow.max(other.min_pow));
        for (pa, ea) in &self.coeffs {
            for (pb, eb) in &other.coeffs {
                if pa + pb < out.min_pow {
                    continue;
                }
                out.add_coeff(pa + pb, ea.clone() * eb.clone());
            }
        }
        out
    }

    /// Coefficient-wise equality over `lo..=hi`.
    pub fn eq_on_range(&self, other: &USeries, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|p| self.coeff(p) == other.coeff(p))
    }
}

/// Verify the Newton-Liouville identity
/// d/du cdet(u+tau+E[-1]) = cdet(u+tau+E[-1]) sum_k (-1)^k u^{-k-1} tr(tau+E[-1])^k
/// comparing coefficients of u^{n-1} down to u^{-N}.
pub fn newton_identity_check(n: u32, trunc: i64) -> bool {
    assert!(trunc >= 1);
    let a = NcMatrix::tau_matrix(n);
    let c = a.cdet();
    let min_pow = -trunc;
    let poly = USeries::from_tau_shift(&c, min_pow - 1);
    let lhs = poly.derivative_u();

    // sum_k (-1)^k u^{-k-1} tr(tau+E[-1])^k, enough terms so that the
    // product still has exact coefficients down to u^{-N}
    let kmax = (trunc + n as i64 - 1) as u32;
    let mut series = USeries::zero(n, min_pow - 1 - n as i64);
    for k in 0..=kmax {
        let sign = if k % 2 == 0 { qi(1) } else { qi(-1) };
        series.add_coeff(-(k as i64) - 1, a.trace_power(k).scaled(&sign));
    }
    let rhs = poly.mul(&series);
    lhs.eq_on_range(&rhs, min_pow, n as i64 - 1)
}

/// Convenience: the Lie bracket of two generators as a public operation.
pub fn generator_bracket(a: Gen, b: Gen, n: u32) -> NcElement {
    bracket(a, b, n)
}

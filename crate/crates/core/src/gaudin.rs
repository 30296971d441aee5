//! Evaluation of the commutative family to m-site tensor operators and
//! brute-force verification of pairwise commutativity in exact rational
//! arithmetic.

use std::time::Instant;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::report::Report;
use crate::ring::{cdet_generic, DerivRing, OpPoly, Ring, UnitLike};
use crate::{qi, Q};

/// Hard cap on the tensor-space dimension n^m.
pub const DIMENSION_CAP: usize = 256;

/// Exact rational dense matrix on the m-fold tensor power of C^n.
#[derive(Clone, PartialEq, Debug)]
pub struct QMatrix {
    pub dim: usize,
    pub data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(dim: usize) -> QMatrix {
        QMatrix { dim, data: vec![Q::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> QMatrix {
        let mut m = QMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Q::one();
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.dim + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, other.dim);
        QMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, other.dim);
        QMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = QMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * d + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> QMatrix {
        QMatrix { dim: self.dim, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> QMatrix {
        QMatrix { dim: self.dim, data: self.data.iter().map(|x| -x.clone()).collect() }
    }

    pub fn commutator(&self, other: &QMatrix) -> QMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Sum of absolute values of entries; zero iff the matrix is zero.
    pub fn l1_norm(&self) -> Q {
        let mut s = Q::zero();
        for x in &self.data {
            if x < &Q::zero() {
                s -= x;
            } else {
                s += x;
            }
        }
        s
    }
}

#[derive(Debug, Error)]
pub enum GaudinError {
    #[error("evaluation points must be pairwise distinct")]
    DuplicatePoints,
    #[error("tensor dimension n^m = {0} exceeds the cap {DIMENSION_CAP}")]
    DimensionCap(usize),
}

/// Rank, site count, and distinct rational evaluation points.
#[derive(Clone, Debug)]
pub struct SiteConfig {
    pub n: u32,
    pub points: Vec<Q>,
}

impl SiteConfig {
    pub fn new(n: u32, points: Vec<Q>) -> Result<SiteConfig, GaudinError> {
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                if points[a] == points[b] {
                    return Err(GaudinError::DuplicatePoints);
                }
            }
        }
        let cfg = SiteConfig { n, points };
        if cfg.dim() > DIMENSION_CAP {
            return Err(GaudinError::DimensionCap(cfg.dim()));
        }
        Ok(cfg)
    }

    pub fn sites(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        (self.n as usize).pow(self.sites() as u32)
    }

    /// The elementary matrix e_{ij} acting at site `a` (identity at the
    /// other sites), in the defining representation at each site.
    pub fn site_operator(&self, a: usize, i: usize, j: usize) -> QMatrix {
        let n = self.n as usize;
        let m = self.sites();
        let dim = self.dim();
        let mut out = QMatrix::zeros(dim);
        // basis index decomposes in base n, site 0 most significant
        for row in 0..dim {
            let mut digits = Vec::with_capacity(m);
            let mut rest = row;
            for _ in 0..m {
                digits.push(rest % n);
                rest /= n;
            }
            digits.reverse();
            if digits[a] != i - 1 {
                continue;
            }
            let mut col_digits = digits.clone();
            col_digits[a] = j - 1;
            let mut col = 0;
            for d in &col_digits {
                col = col * n + d;
            }
            out.set(row, col, Q::one());
        }
        out
    }

    /// The diagonal action sum_a e_{ij}^{(a)}.
    pub fn diagonal_action(&self, i: usize, j: usize) -> QMatrix {
        let mut out = QMatrix::zeros(self.dim());
        for a in 0..self.sites() {
            out = out.add(&self.site_operator(a, i, j));
        }
        out
    }

    /// Coefficients of D(z) = prod_a (z - z_a), lowest power first.
    pub fn denominator_poly(&self) -> Vec<Q> {
        let mut poly = vec![Q::one()];
        for z_a in &self.points {
            let mut next = vec![Q::zero(); poly.len() + 1];
            for (p, c) in poly.iter().enumerate() {
                next[p + 1] += c;
                next[p] -= c * z_a;
            }
            poly = next;
        }
        poly
    }
}

fn scalar_poly_derivative(a: &[Q]) -> Vec<Q> {
    if a.len() <= 1 {
        return vec![Q::zero()];
    }
    a.iter().enumerate().skip(1).map(|(p, c)| c * qi(p as i64)).collect()
}

/// Operator-valued rational function N(z) / D(z)^p with a polynomial
/// matrix numerator (lowest z-power first) and the fixed denominator
/// D(z) = prod_a (z - z_a).
#[derive(Clone, PartialEq, Debug)]
pub struct RatMat {
    pub num: Vec<QMatrix>,
    pub dpow: u32,
    pub den: Vec<Q>,
}

impl RatMat {
    fn trim(&mut self) {
        while self.num.len() > 1 && self.num.last().unwrap().is_zero() {
            self.num.pop();
        }
    }

    fn raise_dpow(&self, target: u32) -> RatMat {
        assert!(target >= self.dpow);
        let mut num = self.num.clone();
        for _ in self.dpow..target {
            num = mat_poly_scale_by(&num, &self.den);
        }
        RatMat { num, dpow: target, den: self.den.clone() }
    }

    /// All polynomial-in-z coefficient matrices after clearing the
    /// denominator to the given power.
    pub fn cleared_coefficients(&self, target_dpow: u32) -> Vec<QMatrix> {
        self.raise_dpow(target_dpow).num
    }
}

fn mat_poly_scale_by(num: &[QMatrix], scalar: &[Q]) -> Vec<QMatrix> {
    let dim = num[0].dim;
    let mut out = vec![QMatrix::zeros(dim); num.len() + scalar.len() - 1];
    for (p, m) in num.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        for (q_pow, c) in scalar.iter().enumerate() {
            if !c.is_zero() {
                out[p + q_pow] = out[p + q_pow].add(&m.scale(c));
            }
        }
    }
    out
}

impl Ring for RatMat {
    fn radd(&self, other: &Self) -> Self {
        let dpow = self.dpow.max(other.dpow);
        let a = self.raise_dpow(dpow);
        let b = other.raise_dpow(dpow);
        let dim = a.num[0].dim;
        let len = a.num.len().max(b.num.len());
        let mut num = vec![QMatrix::zeros(dim); len];
        for (p, m) in a.num.iter().enumerate() {
            num[p] = num[p].add(m);
        }
        for (p, m) in b.num.iter().enumerate() {
            num[p] = num[p].add(m);
        }
        let mut out = RatMat { num, dpow, den: self.den.clone() };
        out.trim();
        out
    }

    fn rmul(&self, other: &Self) -> Self {
        let dim = self.num[0].dim;
        let mut num = vec![QMatrix::zeros(dim); self.num.len() + other.num.len() - 1];
        for (p, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q_pow, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    num[p + q_pow] = num[p + q_pow].add(&a.mul(b));
                }
            }
        }
        let mut out = RatMat { num, dpow: self.dpow + other.dpow, den: self.den.clone() };
        out.trim();
        out
    }

    fn rneg(&self) -> Self {
        RatMat {
            num: self.num.iter().map(|m| m.neg()).collect(),
            dpow: self.dpow,
            den: self.den.clone(),
        }
    }
}

impl DerivRing for RatMat {
    fn rderive(&self) -> Self {
        // (N / D^p)' = (N' D - p N D') / D^{p+1}
        let dim = self.num[0].dim;
        let n_prime: Vec<QMatrix> = if self.num.len() <= 1 {
            vec![QMatrix::zeros(dim)]
        } else {
            self.num
                .iter()
                .enumerate()
                .skip(1)
                .map(|(p, m)| m.scale(&qi(p as i64)))
                .collect()
        };
        let term1 = mat_poly_scale_by(&n_prime, &self.den);
        let d_prime = scalar_poly_derivative(&self.den);
        let term2 = mat_poly_scale_by(&self.num, &d_prime);
        let len = term1.len().max(term2.len());
        let mut num = vec![QMatrix::zeros(dim); len];
        for (p, m) in term1.iter().enumerate() {
            num[p] = num[p].add(m);
        }
        let factor = qi(-(self.dpow as i64));
        for (p, m) in term2.iter().enumerate() {
            num[p] = num[p].add(&m.scale(&factor));
        }
        let mut out = RatMat { num, dpow: self.dpow + 1, den: self.den.clone() };
        out.trim();
        out
    }

    fn rscale(&self, c: &Q) -> Self {
        RatMat {
            num: self.num.iter().map(|m| m.scale(c)).collect(),
            dpow: self.dpow,
            den: self.den.clone(),
        }
    }

    fn rzero(&self) -> Self {
        RatMat { num: vec![QMatrix::zeros(self.num[0].dim)], dpow: 0, den: self.den.clone() }
    }

    fn ris_zero(&self) -> bool {
        self.num.iter().all(|m| m.is_zero())
    }
}

impl UnitLike for RatMat {
    fn unit_like(&self) -> Self {
        RatMat {
            num: vec![QMatrix::identity(self.num[0].dim)],
            dpow: 0,
            den: self.den.clone(),
        }
    }
}

/// Entry (i,j) of the Lax matrix: sum_a e^{(a)}/(z - z_a) with the
/// generator index e_{ji} under the transposed convention (default) or
/// e_{ij} otherwise.
pub fn lax_entry(cfg: &SiteConfig, i: usize, j: usize, transpose: bool) -> RatMat {
    let den = cfg.denominator_poly();
    let dim = cfg.dim();
    // numerator: sum_a op_a * prod_{b != a} (z - z_b)
    let mut num = vec![QMatrix::zeros(dim); cfg.sites().max(1)];
    for a in 0..cfg.sites() {
        let op = if transpose {
            cfg.site_operator(a, j, i)
        } else {
            cfg.site_operator(a, i, j)
        };
        let mut cof = vec![Q::one()];
        for (b, z_b) in cfg.points.iter().enumerate() {
            if b == a {
                continue;
            }
            let mut next = vec![Q::zero(); cof.len() + 1];
            for (p, c) in cof.iter().enumerate() {
                next[p + 1] += c;
                next[p] -= c * z_b;
            }
            cof = next;
        }
        for (p, c) in cof.iter().enumerate() {
            if !c.is_zero() {
                num[p] = num[p].add(&op.scale(c));
            }
        }
    }
    let mut out = RatMat { num, dpow: 1, den };
    out.trim();
    out
}

/// The full n x n Lax matrix as operator-valued rational functions.
pub fn lax_matrix(cfg: &SiteConfig, transpose: bool) -> Vec<Vec<RatMat>> {
    let n = cfg.n as usize;
    (1..=n)
        .map(|i| (1..=n).map(|j| lax_entry(cfg, i, j, transpose)).collect())
        .collect()
}

/// Expand cdet(d/dz + Lax(z)), clear denominators, and return every
/// polynomial-in-z coefficient of every d/dz power as a tensor operator.
pub fn gaudin_operators(cfg: &SiteConfig, transpose: bool) -> Vec<QMatrix> {
    let n = cfg.n as usize;
    let lax = lax_matrix(cfg, transpose);
    let mut entries: Vec<Vec<OpPoly<RatMat>>> = Vec::with_capacity(n);
    for (i, row) in lax.into_iter().enumerate() {
        let mut new_row = Vec::with_capacity(n);
        for (j, entry) in row.into_iter().enumerate() {
            if i == j {
                new_row.push(OpPoly::d_plus(entry));
            } else {
                new_row.push(OpPoly::constant(entry));
            }
        }
        entries.push(new_row);
    }
    let det = cdet_generic(&entries);
    let target = det.coeffs.iter().map(|c| c.dpow).max().unwrap_or(0);
    let mut out = Vec::new();
    for c in &det.coeffs {
        for m in c.cleared_coefficients(target) {
            if !m.is_zero() {
                out.push(m);
            }
        }
    }
    out
}

/// Which Lax transposition conventions to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Convention {
    Transposed,
    Plain,
    Both,
}

/// Exact pairwise commutativity of the evaluated operators, plus
/// invariance under the diagonal gl_n action.
pub fn verify_gaudin_commutativity(cfg: &SiteConfig, transpose: bool) -> Report {
    let start = Instant::now();
    let label = if transpose { "gaudin-commutativity(transposed)" } else { "gaudin-commutativity(plain)" };
    let mut report = Report::new(label, cfg.n);
    let ops = gaudin_operators(cfg, transpose);
    for a in 0..ops.len() {
        for b in a + 1..ops.len() {
            let comm = ops[a].commutator(&ops[b]);
            if !comm.is_zero() {
                report.fail(format!(
                    "[op_{}, op_{}] != 0 (l1 norm {})",
                    a,
                    b,
                    comm.l1_norm()
                ));
            }
        }
    }
    for i in 1..=cfg.n as usize {
        for j in 1..=cfg.n as usize {
            let diag = cfg.diagonal_action(i, j);
            for (k, op) in ops.iter().enumerate() {
                let comm = op.commutator(&diag);
                if !comm.is_zero() {
                    report.fail(format!(
                        "op_{} does not commute with the diagonal e_{{{}{}}} (l1 norm {})",
                        k,
                        i,
                        j,
                        comm.l1_norm()
                    ));
                }
            }
        }
    }
    report.finish(start)
}

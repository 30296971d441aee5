//! Minimal ring abstraction shared by the noncommutative engine, the
//! free-field side, and the Gaudin evaluation: generic column-determinants
//! and polynomials in a derivation symbol D with D a = a D + a'.

use itertools::Itertools;

use crate::Q;

/// Ring operations needed by the generic column-determinant.
pub trait Ring: Clone {
    fn radd(&self, other: &Self) -> Self;
    fn rmul(&self, other: &Self) -> Self;
    fn rneg(&self) -> Self;
}

/// A ring carrying a distinguished derivation and rational scaling;
/// the coefficient ring of an [`OpPoly`].
pub trait DerivRing: Ring {
    fn rderive(&self) -> Self;
    fn rscale(&self, c: &Q) -> Self;
    fn rzero(&self) -> Self;
    fn ris_zero(&self) -> bool;
}

/// Column-determinant over an arbitrary ring: sum over permutations of
/// sgn(s) * a_{s(1)1} ... a_{s(n)n}, factors ordered by column index.
pub fn cdet_generic<T: Ring>(mat: &[Vec<T>]) -> T {
    let n = mat.len();
    assert!(n >= 1 && mat.iter().all(|row| row.len() == n));
    let mut acc: Option<T> = None;
    for perm in (0..n).permutations(n) {
        let mut inversions = 0;
        for a in 0..n {
            for b in a + 1..n {
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        let mut prod = mat[perm[0]][0].clone();
        for col in 1..n {
            prod = prod.rmul(&mat[perm[col]][col]);
        }
        if inversions % 2 == 1 {
            prod = prod.rneg();
        }
        acc = Some(match acc {
            None => prod,
            Some(s) => s.radd(&prod),
        });
    }
    acc.unwrap()
}

/// Polynomial in a symbol D with left coefficients in R and the
/// commutation rule D a = a D + a' (a' the derivation of R).
///
/// Models tau over the free-field algebra ([tau, b_i[r]] = -r b_i[r-1])
/// and d/dz over series or operator-valued coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct OpPoly<R> {
    /// coeffs[p] is the left coefficient of D^p.
    pub coeffs: Vec<R>,
}

fn binomial(n: u32, k: u32) -> Q {
    let mut num = Q::from_integer(1.into());
    for t in 0..k {
        num *= Q::from_integer(((n - t) as i64).into());
        num /= Q::from_integer(((t + 1) as i64).into());
    }
    num
}

impl<R: DerivRing + UnitLike> OpPoly<R> {
    pub fn constant(c: R) -> Self {
        OpPoly { coeffs: vec![c] }
    }

    /// The operator D + c.
    pub fn d_plus(c: R) -> Self {
        let one = unit_like(&c);
        OpPoly { coeffs: vec![c, one] }
    }

    pub fn zero_like(model: &R) -> Self {
        OpPoly { coeffs: vec![model.rzero()] }
    }

    pub fn one_like(model: &R) -> Self {
        OpPoly { coeffs: vec![unit_like(model)] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of D^p (zero of the right shape if absent).
    pub fn coeff(&self, p: usize) -> R {
        self.coeffs.get(p).cloned().unwrap_or_else(|| self.coeffs[0].rzero())
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().ris_zero() {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.ris_zero())
    }
}

/// A multiplicative unit with the same "shape" as the model value.
/// Rings whose unit needs contextual data (e.g. matrix dimension)
/// implement this through [`DerivRing::rzero`] plus scaling of a
/// provided identity; here we require R: UnitLike instead.
pub trait UnitLike {
    fn unit_like(&self) -> Self;
}

fn unit_like<R: DerivRing + UnitLike>(model: &R) -> R {
    model.unit_like()
}

impl<R: DerivRing + UnitLike> Ring for OpPoly<R> {
    fn radd(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for p in 0..len {
            let a = self.coeffs.get(p);
            let b = other.coeffs.get(p);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a.radd(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        let mut out = OpPoly { coeffs };
        out.trim();
        out
    }

    fn rmul(&self, other: &Self) -> Self {
        // (a D^p)(b D^q) = sum_m C(p,m) a b^{(m)} D^{p+q-m}
        let deg = self.degree() + other.degree();
        let zero = self.coeffs[0].rzero();
        let mut coeffs = vec![zero; deg + 1];
        for (p, a) in self.coeffs.iter().enumerate() {
            if a.ris_zero() {
                continue;
            }
            for (q_pow, b) in other.coeffs.iter().enumerate() {
                if b.ris_zero() {
                    continue;
                }
                let mut b_der = b.clone();
                for m in 0..=p {
                    let c = binomial(p as u32, m as u32);
                    let contrib = a.rmul(&b_der).rscale(&c);
                    let idx = p + q_pow - m;
                    coeffs[idx] = coeffs[idx].radd(&contrib);
                    if m < p {
                        b_der = b_der.rderive();
                    }
                }
            }
        }
        let mut out = OpPoly { coeffs };
        out.trim();
        out
    }

    fn rneg(&self) -> Self {
        OpPoly { coeffs: self.coeffs.iter().map(|c| c.rneg()).collect() }
    }
}

impl<R: DerivRing + UnitLike> OpPoly<R> {
    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = OpPoly { coeffs: self.coeffs.iter().map(|x| x.rscale(c)).collect() };
        out.trim();
        out
    }

    pub fn rsub(&self, other: &Self) -> Self {
        self.radd(&other.rneg())
    }

    /// Product of D+c factors in the order given (leftmost first).
    pub fn product_of_linear(factors: &[R]) -> Self {
        assert!(!factors.is_empty());
        let mut acc = OpPoly::d_plus(factors[0].clone());
        for c in &factors[1..] {
            acc = acc.rmul(&OpPoly::d_plus(c.clone()));
        }
        acc
    }
}

/// Truncated power series in a central variable t with OpPoly coefficients.
/// Used for the trace generating functions.
pub struct TSeries<R> {
    /// coeffs[k] is the coefficient of t^k.
    pub coeffs: Vec<OpPoly<R>>,
}

impl<R: DerivRing + UnitLike> TSeries<R> {
    pub fn one(model: &R, order: usize) -> Self {
        let mut coeffs = vec![OpPoly::zero_like(model); order + 1];
        coeffs[0] = OpPoly::one_like(model);
        TSeries { coeffs }
    }

    /// The series (1 - t A)^{-1} = sum_k t^k A^k.
    pub fn geometric(a: &OpPoly<R>, model: &R, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut pow = OpPoly::one_like(model);
        coeffs.push(pow.clone());
        for _ in 1..=order {
            pow = pow.rmul(a);
            coeffs.push(pow.clone());
        }
        TSeries { coeffs }
    }

    /// The polynomial 1 - t A viewed as a truncated series.
    pub fn one_minus(a: &OpPoly<R>, model: &R, order: usize) -> Self {
        let mut s = TSeries::one(model, order);
        if order >= 1 {
            s.coeffs[1] = a.rneg();
        }
        s
    }

    pub fn mul(&self, other: &Self, model: &R, order: usize) -> Self {
        let mut coeffs = vec![OpPoly::zero_like(model); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].radd(&a.rmul(b));
            }
        }
        TSeries { coeffs }
    }

    pub fn add(&self, other: &Self, model: &R, order: usize) -> Self {
        let mut coeffs = vec![OpPoly::zero_like(model); order + 1];
        for k in 0..=order {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(|| OpPoly::zero_like(model));
            let b = other.coeffs.get(k).cloned().unwrap_or_else(|| OpPoly::zero_like(model));
            coeffs[k] = a.radd(&b);
        }
        TSeries { coeffs }
    }
}

/// The generating function sum_i (1-tA_1)^{-1}...(1-tA_i)^{-1}
/// (1-tA_{i-1})...(1-tA_1) with A_j = D + gens[j-1], truncated at t^order.
pub fn trace_generating_series<R: DerivRing + UnitLike>(
    gens: &[R],
    order: usize,
) -> Vec<OpPoly<R>> {
    let model = &gens[0];
    let mut total: Option<TSeries<R>> = None;
    for i in 1..=gens.len() {
        let mut left = TSeries::one(model, order);
        for g in gens.iter().take(i) {
            let a = OpPoly::d_plus(g.clone());
            left = left.mul(&TSeries::geometric(&a, model, order), model, order);
        }
        let mut right = TSeries::one(model, order);
        for g in gens.iter().take(i - 1) {
            // right factor multiplies in descending order A_{i-1}...A_1
            let a = OpPoly::d_plus(g.clone());
            right = TSeries::one_minus(&a, model, order).mul(&right, model, order);
        }
        let term = left.mul(&right, model, order);
        total = Some(match total {
            None => term,
            Some(t) => t.add(&term, model, order),
        });
    }
    total.unwrap().coeffs
}

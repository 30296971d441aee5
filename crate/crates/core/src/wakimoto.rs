//! Eigenvalue differential operators on Wakimoto modules: substitute the
//! character series chi_i(z) into the column-determinant and trace
//! generating functions.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::ring::{trace_generating_series, DerivRing, OpPoly, Ring, UnitLike};
use crate::{qi, Q};

/// A Laurent series in z with exact rational coefficients, truncated
/// above: coefficients are known for powers <= `ceil` and the series is
/// exactly zero below its lowest stored power.  `ceil == None` means the
/// series is exact (a Laurent polynomial).
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries {
    pub ceil: Option<i64>,
    pub coeffs: BTreeMap<i64, Q>,
}

impl LaurentSeries {
    pub fn zero() -> LaurentSeries {
        LaurentSeries { ceil: None, coeffs: BTreeMap::new() }
    }

    pub fn constant(c: Q) -> LaurentSeries {
        let mut s = LaurentSeries::zero();
        s.add_coeff(0, c);
        s
    }

    pub fn monomial(pow: i64, c: Q) -> LaurentSeries {
        let mut s = LaurentSeries::zero();
        s.add_coeff(pow, c);
        s
    }

    pub fn add_coeff(&mut self, pow: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        if let Some(cl) = self.ceil {
            if pow > cl {
                return;
            }
        }
        match self.coeffs.entry(pow) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// Lowest power with a nonzero coefficient (exact by construction);
    /// None for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    fn truncate(&mut self) {
        if let Some(cl) = self.ceil {
            let dead: Vec<i64> = self.coeffs.range(cl + 1..).map(|(k, _)| *k).collect();
            for k in dead {
                self.coeffs.remove(&k);
            }
        }
    }

    /// Coefficients agree on every power both series know about.
    pub fn eq_known(&self, other: &LaurentSeries) -> bool {
        let cap = match (self.ceil, other.ceil) {
            (None, None) => None,
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let powers: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        powers.into_iter().all(|p| {
            if let Some(c) = cap {
                if p > c {
                    return true;
                }
            }
            self.coeffs.get(&p).cloned().unwrap_or_else(Q::zero)
                == other.coeffs.get(&p).cloned().unwrap_or_else(Q::zero)
        })
    }
}

impl Ring for LaurentSeries {
    fn radd(&self, other: &Self) -> Self {
        let ceil = match (self.ceil, other.ceil) {
            (None, c) | (c, None) => c,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let mut out = LaurentSeries { ceil, coeffs: self.coeffs.clone() };
        out.truncate();
        for (p, c) in &other.coeffs {
            out.add_coeff(*p, c.clone());
        }
        out
    }

    fn rmul(&self, other: &Self) -> Self {
        // unknown tails limit the product to powers below
        // min(ceil_a + val_b, ceil_b + val_a)
        let bound = |ceil: Option<i64>, val: Option<i64>| -> Option<i64> {
            match (ceil, val) {
                (None, _) => None,
                (Some(_), None) => None, // exact zero partner
                (Some(c), Some(v)) => Some(c + v),
            }
        };
        let b1 = bound(self.ceil, other.valuation());
        let b2 = bound(other.ceil, self.valuation());
        let ceil = match (b1, b2) {
            (None, c) | (c, None) => c,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let mut out = LaurentSeries { ceil, coeffs: BTreeMap::new() };
        for (pa, ca) in &self.coeffs {
            for (pb, cb) in &other.coeffs {
                out.add_coeff(pa + pb, ca * cb);
            }
        }
        out
    }

    fn rneg(&self) -> Self {
        LaurentSeries {
            ceil: self.ceil,
            coeffs: self.coeffs.iter().map(|(p, c)| (*p, -c.clone())).collect(),
        }
    }
}

impl DerivRing for LaurentSeries {
    fn rderive(&self) -> Self {
        let mut out = LaurentSeries {
            ceil: self.ceil.map(|c| c - 1),
            coeffs: BTreeMap::new(),
        };
        for (p, c) in &self.coeffs {
            if *p != 0 {
                out.add_coeff(p - 1, c * qi(*p));
            }
        }
        out
    }
    fn rscale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return LaurentSeries { ceil: self.ceil, coeffs: BTreeMap::new() };
        }
        LaurentSeries {
            ceil: self.ceil,
            coeffs: self.coeffs.iter().map(|(p, v)| (*p, v * c)).collect(),
        }
    }
    fn rzero(&self) -> Self {
        // the zero series is exact regardless of the model's truncation
        LaurentSeries { ceil: None, coeffs: BTreeMap::new() }
    }
    fn ris_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl UnitLike for LaurentSeries {
    fn unit_like(&self) -> Self {
        LaurentSeries::constant(qi(1))
    }
}

/// One character component chi_i(z) = sum_r chi_i[r] z^{-r-1} with
/// support declared on min_r <= r <= max_r; modes above max_r are exact
/// zeros, modes below min_r are unknown (truncation).
#[derive(Clone, Debug)]
pub struct ChiComponent {
    pub min_r: i64,
    pub max_r: i64,
    pub coeffs: BTreeMap<i64, Q>,
}

impl ChiComponent {
    pub fn to_series(&self) -> LaurentSeries {
        let mut s = LaurentSeries { ceil: Some(-self.min_r - 1), coeffs: BTreeMap::new() };
        for (r, c) in &self.coeffs {
            assert!(*r >= self.min_r && *r <= self.max_r, "mode outside declared range");
            s.add_coeff(-r - 1, c.clone());
        }
        s
    }
}

#[derive(Debug, Error)]
pub enum TruncationError {
    #[error(
        "insufficient chi truncation: output is only valid for z-powers <= {valid}, \
         but powers <= {requested} were requested; supply modes down to r = {required_min_r}"
    )]
    Insufficient { valid: i64, requested: i64, required_min_r: i64 },
}

fn check_depth(op: &OpPoly<LaurentSeries>, order: i64) -> Result<(), TruncationError> {
    for c in &op.coeffs {
        if let Some(ceil) = c.ceil {
            if ceil < order {
                return Err(TruncationError::Insufficient {
                    valid: ceil,
                    requested: order,
                    required_min_r: -(order + (order - ceil)) - 1,
                });
            }
        }
    }
    Ok(())
}

/// The scalar differential operator
/// (d/dz + chi_n(z)) ... (d/dz + chi_1(z)) acting on Wakimoto modules as
/// the eigenvalue of the column-determinant family.  `order` is the
/// highest z-power the caller needs in every coefficient.
pub fn eigenvalue_cdet(
    chi: &[LaurentSeries],
    order: i64,
) -> Result<OpPoly<LaurentSeries>, TruncationError> {
    let factors: Vec<LaurentSeries> = chi.iter().rev().cloned().collect();
    let op = OpPoly::product_of_linear(&factors);
    check_depth(&op, order)?;
    Ok(op)
}

/// The t^k coefficient of the trace generating function with
/// A_i = d/dz + chi_i(z).
pub fn eigenvalue_trace(
    chi: &[LaurentSeries],
    k: usize,
    order: i64,
) -> Result<OpPoly<LaurentSeries>, TruncationError> {
    let series = trace_generating_series(chi, k);
    let op = series[k].clone();
    check_depth(&op, order)?;
    Ok(op)
}

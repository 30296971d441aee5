//! Exact noncommutative arithmetic in U(t^{-1}gl_n[t^{-1}] + C tau)[K]
//! with canonical PBW normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::generator::{Gen, Term};
use crate::poly::{EVar, Poly};
use crate::{qi, Q};

/// An element of the enveloping algebra: a finite rational linear
/// combination of normal-form PBW terms.
///
/// `rank` is the rank n of gl_n; `0` means "not yet tied to an algebra"
/// (scalars and pure tau-words), and is resolved on first combination
/// with a ranked element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcElement {
    pub rank: u32,
    pub terms: BTreeMap<Term, Q>,
}

/// The Lie bracket of two generators in the extended algebra of rank n,
/// including the central cocycle term.
pub fn bracket(a: Gen, b: Gen, n: u32) -> NcElement {
    let mut out = NcElement::zero_ranked(n);
    match (a, b) {
        (Gen::Tau, Gen::Tau) => {}
        (Gen::Tau, Gen::E { i, j, r }) => {
            // [tau, e_{ij}[r]] = -r e_{ij}[r-1]
            out.add_term(Term::single(Gen::e(i, j, r - 1)), qi(-(r as i64)));
        }
        (Gen::E { i, j, r }, Gen::Tau) => {
            out.add_term(Term::single(Gen::e(i, j, r - 1)), qi(r as i64));
        }
        (Gen::E { i, j, r }, Gen::E { i: k, j: l, r: s }) => {
            if k == j {
                out.add_term(Term::single(Gen::e(i, l, r + s)), qi(1));
            }
            if i == l {
                out.add_term(Term::single(Gen::e(k, j, r + s)), qi(-1));
            }
            if r == -s && r != 0 {
                // K (delta_{kj} delta_{il} - delta_{ij} delta_{kl} / n) r
                assert!(n >= 1, "central cocycle needs an algebra rank");
                let mut c = Q::zero();
                if k == j && i == l {
                    c += qi(1);
                }
                if i == j && k == l {
                    c -= Q::new(1.into(), (n as i64).into());
                }
                if !c.is_zero() {
                    out.add_term(Term { kdeg: 1, word: vec![] }, c * qi(r as i64));
                }
            }
        }
    }
    out
}

impl NcElement {
    pub fn zero_ranked(rank: u32) -> NcElement {
        NcElement { rank, terms: BTreeMap::new() }
    }

    pub fn unit(rank: u32) -> NcElement {
        let mut e = NcElement::zero_ranked(rank);
        e.add_term(Term::unit(), qi(1));
        e
    }

    pub fn scalar(rank: u32, c: Q) -> NcElement {
        let mut e = NcElement::zero_ranked(rank);
        e.add_term(Term::unit(), c);
        e
    }

    pub fn from_gen(rank: u32, g: Gen) -> NcElement {
        let mut e = NcElement::zero_ranked(rank);
        e.add_term(Term::single(g), qi(1));
        e
    }

    /// The central element K (as K^1 times the empty word).
    pub fn central_k(rank: u32) -> NcElement {
        let mut e = NcElement::zero_ranked(rank);
        e.add_term(Term { kdeg: 1, word: vec![] }, qi(1));
        e
    }

    pub fn add_term(&mut self, t: Term, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn merge_rank(a: u32, b: u32) -> u32 {
        match (a, b) {
            (0, r) | (r, 0) => r,
            (r, s) => {
                assert_eq!(r, s, "mixing elements from different algebra contexts");
                r
            }
        }
    }

    pub fn scaled(&self, c: &Q) -> NcElement {
        if c.is_zero() {
            return NcElement::zero_ranked(self.rank);
        }
        NcElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(t, v)| (t.clone(), v * c)).collect(),
        }
    }

    /// Rewrite an arbitrary word into normal form, multiplied by `coeff`
    /// and `K^kdeg`, and accumulate the result into `self`.
    ///
    /// Adjacent out-of-order pairs are transposed; each transposition
    /// inserts the pair bracket, whose words are strictly shorter, so the
    /// rewriting terminates.
    pub fn accumulate_word(&mut self, coeff: Q, kdeg: u32, word: Vec<Gen>) {
        let rank = self.rank;
        let mut work: Vec<(Q, u32, Vec<Gen>)> = vec![(coeff, kdeg, word)];
        while let Some((c, k, w)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            match w.windows(2).position(|p| p[0] > p[1]) {
                None => self.add_term(Term { kdeg: k, word: w }, c),
                Some(p) => {
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    let br = bracket(w[p], w[p + 1], rank);
                    work.push((c.clone(), k, swapped));
                    for (t, bc) in &br.terms {
                        let mut nw = Vec::with_capacity(w.len() - 2 + t.word.len());
                        nw.extend_from_slice(&w[..p]);
                        nw.extend_from_slice(&t.word);
                        nw.extend_from_slice(&w[p + 2..]);
                        work.push((&c * bc, k + t.kdeg, nw));
                    }
                }
            }
        }
    }

    /// Normal-form product of a raw word of generators.
    pub fn normal_order(rank: u32, word: &[Gen]) -> NcElement {
        let mut out = NcElement::zero_ranked(rank);
        out.accumulate_word(qi(1), 0, word.to_vec());
        out
    }

    /// The translation derivation T with T(e_{ij}[-k]) = k e_{ij}[-k-1].
    ///
    /// Defined on U(g_-)[K]; words must not contain tau.
    pub fn translate(&self) -> NcElement {
        let mut out = NcElement::zero_ranked(self.rank);
        for (t, c) in &self.terms {
            for (p, g) in t.word.iter().enumerate() {
                match g {
                    Gen::Tau => panic!("translate applies only inside U(g_-)"),
                    Gen::E { i, j, r } => {
                        assert!(*r < 0, "translate applies only inside U(g_-)");
                        let mut w = t.word.clone();
                        w[p] = Gen::e(*i, *j, r - 1);
                        out.accumulate_word(c * qi(-(*r as i64)), t.kdeg, w);
                    }
                }
            }
        }
        out
    }

    /// Iterated translation T^m.
    pub fn translate_pow(&self, m: u32) -> NcElement {
        let mut out = self.clone();
        for _ in 0..m {
            out = out.translate();
        }
        out
    }

    /// Degree-d homogeneous part of the image in the symmetric algebra
    /// S(g_-) under the word-length filtration.  Only K-degree-zero terms
    /// contribute; tau-free inputs expected.
    pub fn symbol(&self, d: usize) -> Poly<EVar> {
        let mut out = Poly::zero();
        for (t, c) in &self.terms {
            if t.kdeg != 0 || t.word.len() != d {
                continue;
            }
            let mut vars = Vec::with_capacity(d);
            for g in &t.word {
                match g {
                    Gen::E { i, j, r } => vars.push(EVar { i: *i, j: *j, r: *r }),
                    Gen::Tau => panic!("symbol applies only inside U(g_-)"),
                }
            }
            vars.sort();
            out.add_mono(vars, c.clone());
        }
        out
    }

    /// Substitute a rational value for the central element K.
    pub fn subst_k(&self, val: &Q) -> NcElement {
        let mut out = NcElement::zero_ranked(self.rank);
        for (t, c) in &self.terms {
            let mut f = c.clone();
            for _ in 0..t.kdeg {
                f *= val;
            }
            out.add_term(Term { kdeg: 0, word: t.word.clone() }, f);
        }
        out
    }

    /// Commutator [a, b] = ab - ba.
    pub fn commutator(&self, other: &NcElement) -> NcElement {
        self.clone() * other.clone() - other.clone() * self.clone()
    }

    /// True if every term is a tau-free word of strictly negative modes.
    pub fn in_u_minus(&self) -> bool {
        self.terms.keys().all(|t| {
            t.word.iter().all(|g| matches!(g, Gen::E { r, .. } if *r < 0))
        })
    }

    /// Largest word length appearing (filtration degree).
    pub fn filtration_degree(&self) -> usize {
        self.terms.keys().map(|t| t.word.len()).max().unwrap_or(0)
    }

    /// Split into coefficients of powers of tau (tau rightmost in normal
    /// form), returning `v[p]` = left coefficient of tau^p.
    pub fn tau_coefficients(&self) -> Vec<NcElement> {
        let deg = self.terms.keys().map(|t| t.tau_degree()).max().unwrap_or(0);
        let mut out = vec![NcElement::zero_ranked(self.rank); deg + 1];
        for (t, c) in &self.terms {
            let p = t.tau_degree();
            let head: Vec<Gen> = t.word.iter().copied().filter(|g| *g != Gen::Tau).collect();
            debug_assert!(t.word[t.word.len() - p..].iter().all(|g| *g == Gen::Tau));
            out[p].add_term(Term { kdeg: t.kdeg, word: head }, c.clone());
        }
        out
    }
}

impl Add for NcElement {
    type Output = NcElement;
    fn add(self, rhs: NcElement) -> NcElement {
        let rank = NcElement::merge_rank(self.rank, rhs.rank);
        let mut out = NcElement { rank, terms: self.terms };
        for (t, c) in rhs.terms {
            out.add_term(t, c);
        }
        out
    }
}

impl Sub for NcElement {
    type Output = NcElement;
    fn sub(self, rhs: NcElement) -> NcElement {
        self + (-rhs)
    }
}

impl Neg for NcElement {
    type Output = NcElement;
    fn neg(self) -> NcElement {
        NcElement {
            rank: self.rank,
            terms: self.terms.into_iter().map(|(t, c)| (t, -c)).collect(),
        }
    }
}

impl Mul for NcElement {
    type Output = NcElement;
    fn mul(self, rhs: NcElement) -> NcElement {
        let rank = NcElement::merge_rank(self.rank, rhs.rank);
        let mut out = NcElement::zero_ranked(rank);
        for (ta, ca) in &self.terms {
            for (tb, cb) in &rhs.terms {
                let mut w = Vec::with_capacity(ta.word.len() + tb.word.len());
                w.extend_from_slice(&ta.word);
                w.extend_from_slice(&tb.word);
                out.accumulate_word(ca * cb, ta.kdeg + tb.kdeg, w);
            }
        }
        out
    }
}

impl fmt::Display for NcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = Q::from_integer(1.into());
        for (idx, (t, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for _ in 0..t.kdeg {
                factors.push("K".to_string());
            }
            for g in &t.word {
                factors.push(g.to_string());
            }
            let word = factors.join(" ");
            let (neg, mag) = if c < &Q::from_integer(0.into()) {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            let body = if word.is_empty() {
                format!("{mag}")
            } else if mag == one {
                word
            } else {
                format!("{mag} {word}")
            };
            if idx == 0 {
                if neg {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else if neg {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn e(i: u8, j: u8, r: i32) -> Gen {
        Gen::e(i, j, r)
    }

    #[test]
    fn bracket_tau_lowers_mode() {
        // [tau, e_{12}[3]] = -3 e_{12}[2]
        let b = bracket(Gen::Tau, e(1, 2, 3), 2);
        let mut expect = NcElement::zero_ranked(2);
        expect.add_term(Term::single(e(1, 2, 2)), qi(-3));
        assert_eq!(b, expect);
    }

    #[test]
    fn bracket_disjoint_indices_vanishes() {
        let b = bracket(e(1, 1, 0), e(2, 2, 5), 3);
        assert!(b.is_zero());
    }

    #[test]
    fn bracket_with_central_term() {
        // n=2: [e_{12}[1], e_{21}[-1]] = e_{11}[0] - e_{22}[0] + K
        let b = bracket(e(1, 2, 1), e(2, 1, -1), 2);
        let mut expect = NcElement::zero_ranked(2);
        expect.add_term(Term::single(e(1, 1, 0)), qi(1));
        expect.add_term(Term::single(e(2, 2, 0)), qi(-1));
        expect.add_term(Term { kdeg: 1, word: vec![] }, qi(1));
        assert_eq!(b, expect);
    }

    #[test]
    fn bracket_diagonal_cocycle() {
        // n=2: [e_{11}[2], e_{11}[-2]] = K (1 - 1/2) * 2 = K
        let b = bracket(e(1, 1, 2), e(1, 1, -2), 2);
        assert_eq!(b, NcElement::central_k(2));
    }

    #[test]
    fn rank_one_cocycle_vanishes_on_diagonal() {
        // n=1: the form tr XY - tr X tr Y is identically zero
        let b = bracket(e(1, 1, 3), e(1, 1, -3), 1);
        assert!(b.is_zero());
    }

    #[test]
    fn multiply_unit() {
        let x = NcElement::from_gen(2, e(1, 2, -1));
        assert_eq!(NcElement::unit(2) * x.clone(), x);
    }

    #[test]
    fn multiply_reorders_with_correction() {
        // e_{21}[-1] e_{12}[-1] = e_{12}[-1] e_{21}[-1] + e_{22}[-2] - e_{11}[-2]
        let prod = NcElement::from_gen(2, e(2, 1, -1)) * NcElement::from_gen(2, e(1, 2, -1));
        let mut expect = NcElement::zero_ranked(2);
        expect.add_term(Term { kdeg: 0, word: vec![e(1, 2, -1), e(2, 1, -1)] }, qi(1));
        expect.add_term(Term::single(e(2, 2, -2)), qi(1));
        expect.add_term(Term::single(e(1, 1, -2)), qi(-1));
        assert_eq!(prod, expect);
    }

    #[test]
    fn square_is_already_normal() {
        let x = NcElement::from_gen(2, e(1, 1, -1));
        let sq = x.clone() * x;
        let mut expect = NcElement::zero_ranked(2);
        expect.add_term(Term { kdeg: 0, word: vec![e(1, 1, -1), e(1, 1, -1)] }, qi(1));
        assert_eq!(sq, expect);
    }

    #[test]
    fn normal_order_tau_swap() {
        // tau e_{11}[-1] = e_{11}[-1] tau + e_{11}[-2]
        let x = NcElement::normal_order(2, &[Gen::Tau, e(1, 1, -1)]);
        let mut expect = NcElement::zero_ranked(2);
        expect.add_term(Term { kdeg: 0, word: vec![e(1, 1, -1), Gen::Tau] }, qi(1));
        expect.add_term(Term::single(e(1, 1, -2)), qi(1));
        assert_eq!(x, expect);
        // already ordered word is a fixed point
        let y = NcElement::normal_order(2, &[e(1, 1, -1), Gen::Tau]);
        let mut fix = NcElement::zero_ranked(2);
        fix.add_term(Term { kdeg: 0, word: vec![e(1, 1, -1), Gen::Tau] }, qi(1));
        assert_eq!(y, fix);
    }

    #[test]
    fn translate_examples() {
        assert!(NcElement::unit(2).translate().is_zero());
        let x = NcElement::from_gen(2, e(1, 1, -1));
        assert_eq!(x.translate(), NcElement::from_gen(2, e(1, 1, -2)));
        // Leibniz on a product of commuting factors
        let p = NcElement::from_gen(2, e(1, 1, -1)) * NcElement::from_gen(2, e(2, 2, -1));
        let t = p.translate();
        let expect = NcElement::from_gen(2, e(1, 1, -2)) * NcElement::from_gen(2, e(2, 2, -1))
            + NcElement::from_gen(2, e(1, 1, -1)) * NcElement::from_gen(2, e(2, 2, -2));
        assert_eq!(t, expect);
    }

    #[test]
    fn symbol_drops_lower_degree_tail() {
        let x = NcElement::from_gen(2, e(1, 1, -1)) * NcElement::from_gen(2, e(2, 2, -1))
            + NcElement::from_gen(2, e(2, 2, -2));
        let s = x.symbol(2);
        let mut expect = Poly::zero();
        expect.add_mono(vec![EVar { i: 1, j: 1, r: -1 }, EVar { i: 2, j: 2, r: -1 }], qi(1));
        assert_eq!(s, expect);
        assert_eq!(NcElement::unit(2).symbol(0), Poly::one());
    }

    #[test]
    fn subst_k_evaluates_central_degree() {
        let x = NcElement::central_k(2) * NcElement::from_gen(2, e(1, 1, -1));
        let y = x.subst_k(&q(-2, 1));
        assert_eq!(y, NcElement::from_gen(2, e(1, 1, -1)).scaled(&q(-2, 1)));
    }
}

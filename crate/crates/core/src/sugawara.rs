//! The two complete families of Segal-Sugawara vectors, the action on
//! the vacuum module, and the centrality / commutativity / complete-set
//! verification sweeps.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Zero;

use crate::element::{bracket, NcElement};
use crate::generator::Gen;
use crate::matrix::NcMatrix;
use crate::poly::{rational_rank, EVar, Poly};
use crate::report::Report;
use crate::ring::cdet_generic;
use crate::{q, qi, Q};

/// Polynomial in tau with left NcElement coefficients,
/// c_0 + c_1 tau + ... + c_deg tau^deg.
#[derive(Clone, PartialEq, Debug)]
pub struct TauPolynomial {
    pub rank: u32,
    pub coeffs: Vec<NcElement>,
}

impl TauPolynomial {
    pub fn from_element(e: &NcElement) -> TauPolynomial {
        TauPolynomial { rank: e.rank, coeffs: e.tau_coefficients() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// The column-determinant family: S_l is the coefficient of tau^{n-l}
/// in cdet(tau + E[-1]); returns [S_1, ..., S_n].
pub fn segal_sugawara_cdet(n: u32) -> Vec<NcElement> {
    let c = NcMatrix::tau_matrix(n).cdet();
    let p = TauPolynomial::from_element(&c);
    assert_eq!(p.degree(), n as usize);
    assert_eq!(p.coeffs[n as usize], NcElement::unit(n), "leading coefficient must be 1");
    (1..=n as usize).map(|l| p.coeffs[n as usize - l].clone()).collect()
}

/// The trace family at order k: tr(tau+E[-1])^k = T_{k0} tau^k + ... + T_{kk};
/// returns [T_{k0}, ..., T_{kk}].
pub fn segal_sugawara_trace(n: u32, k: u32) -> Vec<NcElement> {
    let t = NcMatrix::tau_matrix(n).trace_power(k);
    let p = TauPolynomial::from_element(&t);
    let mut out = Vec::with_capacity(k as usize + 1);
    for l in 0..=k as usize {
        // coefficient of tau^{k-l}
        let pow = k as usize - l;
        out.push(p.coeffs.get(pow).cloned().unwrap_or_else(|| NcElement::zero_ranked(n)));
    }
    out
}

/// Act with a nonnegative-mode generator on an element of the vacuum
/// module V(gl_n) (x) C[tau]: commute the generator rightward and drop
/// every word whose rightmost factor has mode >= 0.
pub fn act_on_vacuum(x: Gen, v: &NcElement) -> NcElement {
    match x {
        Gen::E { r, .. } if r >= 0 => {}
        _ => panic!("act_on_vacuum takes e_{{ij}}[r] with r >= 0"),
    }
    let rank = v.rank;
    let mut out = NcElement::zero_ranked(rank);
    let mut work: Vec<(Q, u32, Vec<Gen>)> = Vec::new();
    for (t, c) in &v.terms {
        let mut w = Vec::with_capacity(t.word.len() + 1);
        w.push(x);
        w.extend_from_slice(&t.word);
        work.push((c.clone(), t.kdeg, w));
    }
    while let Some((c, k, w)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        // rightmost annihilation-mode generator
        let pos = w.iter().rposition(|g| g.is_nonneg_mode());
        match pos {
            None => out.accumulate_word(c, k, w),
            Some(p) if p + 1 == w.len() => {} // kills the vacuum
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
    out
}

/// The coefficient S+_{(r)} = T^{-r-1}(S) / (-r-1)! of the vacuum-axiom
/// expansion of the field of S, for r < 0.
pub fn field_plus_coefficient(s: &NcElement, r: i64) -> NcElement {
    assert!(r < 0, "field_plus_coefficient is defined for r < 0");
    let m = (-r - 1) as u32;
    let mut fact = Q::from_integer(1.into());
    for t in 1..=m as i64 {
        fact *= qi(t);
    }
    s.translate_pow(m).scaled(&(Q::from_integer(1.into()) / fact))
}

/// Centrality of cdet(tau+E[-1]) per the reduction to e_{ij}[0] and
/// e_{nn}[1]:
///  (a) e_{ij}[0] cdet = 0 for all i, j;
///  (b) e_{nn}[1] cdet = (K+n)/n ((n-1)|..|_nn - sum_{i<n} |..|_ii);
///  (c) the same element vanishes at K = -n.
pub fn verify_centrality(n: u32) -> Report {
    let start = Instant::now();
    let mut report = Report::new("centrality", n);
    let a = NcMatrix::tau_matrix(n);
    let c = a.cdet();

    for i in 1..=n as u8 {
        for j in 1..=n as u8 {
            let acted = act_on_vacuum(Gen::e(i, j, 0), &c);
            if !acted.is_zero() {
                report.fail(format!("e_{{{}{}}}[0] cdet != 0: {}", i, j, acted));
            }
        }
    }

    let nn = n as u8;
    let acted = act_on_vacuum(Gen::e(nn, nn, 1), &c);
    // (K+n)/n ((n-1)|..|_nn - sum_{i<n} |..|_ii)
    let mut minors = NcElement::zero_ranked(n);
    if n >= 2 {
        minors = a.minor(n as usize - 1, n as usize - 1).cdet().scaled(&qi(n as i64 - 1));
        for i in 0..n as usize - 1 {
            minors = minors - a.minor(i, i).cdet();
        }
    }
    let k_plus_n =
        NcElement::central_k(n).scaled(&q(1, n as i64)) + NcElement::unit(n);
    let rhs = k_plus_n * minors;
    if acted != rhs {
        report.fail(format!("e_{{nn}}[1] cdet mismatch: got {}, expected {}", acted, rhs));
    }
    let at_critical = acted.subst_k(&qi(-(n as i64)));
    if !at_critical.is_zero() {
        report.fail(format!("residual at K=-n is nonzero: {}", at_critical));
    }
    report.finish(start)
}

/// Exhaustive redundancy check: all e_{ij}[1] send cdet(tau+E[-1]) into
/// (K+n) V(gl_n); intended for n <= 2.
pub fn verify_centrality_exhaustive(n: u32) -> Report {
    let start = Instant::now();
    let mut report = Report::new("centrality-exhaustive", n);
    let c = NcMatrix::tau_matrix(n).cdet();
    for i in 1..=n as u8 {
        for j in 1..=n as u8 {
            let acted = act_on_vacuum(Gen::e(i, j, 1), &c);
            let residual = acted.subst_k(&qi(-(n as i64)));
            if !residual.is_zero() {
                report.fail(format!("e_{{{}{}}}[1] residual at K=-n: {}", i, j, residual));
            }
        }
    }
    report.finish(start)
}

/// Pairwise commutativity inside U(g_-):
/// [S_l, S_m], [T_ll, T_mm], [S_l, T_mm], and [S_l, T^r S_m] for r <= r_max.
pub fn verify_commutativity(n: u32, r_max: u32) -> Report {
    let start = Instant::now();
    let mut report = Report::new("commutativity", n);
    let s = segal_sugawara_cdet(n);
    let t_diag: Vec<NcElement> =
        (1..=n).map(|l| segal_sugawara_trace(n, l)[l as usize].clone()).collect();

    for sl in &s {
        assert!(sl.in_u_minus());
    }
    for l in 0..s.len() {
        for m in l..s.len() {
            if !s[l].commutator(&s[m]).is_zero() {
                report.fail(format!("[S_{}, S_{}] != 0", l + 1, m + 1));
            }
        }
    }
    for l in 0..t_diag.len() {
        for m in l..t_diag.len() {
            if !t_diag[l].commutator(&t_diag[m]).is_zero() {
                report.fail(format!("[T_{}{}, T_{}{}] != 0", l + 1, l + 1, m + 1, m + 1));
            }
        }
    }
    for (l, sl) in s.iter().enumerate() {
        for (m, tm) in t_diag.iter().enumerate() {
            if !sl.commutator(tm).is_zero() {
                report.fail(format!("[S_{}, T_{}{}] != 0", l + 1, m + 1, m + 1));
            }
        }
    }
    for (l, sl) in s.iter().enumerate() {
        for (m, sm) in s.iter().enumerate() {
            let mut translated = sm.clone();
            for r in 1..=r_max {
                translated = translated.translate();
                if !sl.commutator(&translated).is_zero() {
                    report.fail(format!("[S_{}, T^{} S_{}] != 0", l + 1, r, m + 1));
                }
            }
        }
    }
    report.finish(start)
}

/// Commutative characteristic polynomial coefficient: the u^{n-l}
/// coefficient of det[delta_ij u + e_ij[-1]] in S(g_-), i.e. the sum of
/// principal l x l minors of the commutative matrix [e_ij[-1]].
pub fn commutative_charpoly_coefficient(n: u32, l: usize) -> Poly<EVar> {
    let mut total = Poly::zero();
    let idx: Vec<u8> = (1..=n as u8).collect();
    for subset in combinations(&idx, l) {
        let mat: Vec<Vec<Poly<EVar>>> = subset
            .iter()
            .map(|&i| {
                subset.iter().map(|&j| Poly::var(EVar { i, j, r: -1 })).collect()
            })
            .collect();
        total = total + cdet_generic(&mat);
    }
    total
}

/// Commutative tr(X^l) for X = [e_ij[-1]].
pub fn commutative_trace_power(n: u32, l: usize) -> Poly<EVar> {
    let vars: Vec<Vec<Poly<EVar>>> = (1..=n as u8)
        .map(|i| (1..=n as u8).map(|j| Poly::var(EVar { i, j, r: -1 })).collect())
        .collect();
    let mut pow = vars.clone();
    for _ in 1..l {
        let mut next = vec![vec![Poly::zero(); n as usize]; n as usize];
        for a in 0..n as usize {
            for b in 0..n as usize {
                let mut acc = Poly::zero();
                for c in 0..n as usize {
                    acc = acc + pow[a][c].clone() * vars[c][b].clone();
                }
                next[a][b] = acc;
            }
        }
        pow = next;
    }
    let mut tr = Poly::zero();
    for a in 0..n as usize {
        tr = tr + pow[a][a].clone();
    }
    tr
}

fn combinations(items: &[u8], k: usize) -> Vec<Vec<u8>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (p, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[p + 1..], k - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

impl Ring for Poly<EVar> {
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

use crate::ring::Ring;

/// Jacobian-rank certificate for algebraic independence of a family of
/// commutative polynomials in the variables e_ij[-1]: full rank at a
/// random rational point (with retries) is a sound positive certificate.
pub fn jacobian_full_rank(polys: &[Poly<EVar>], n: u32, seed: u64) -> bool {
    use rand::{Rng, SeedableRng};
    let vars: Vec<EVar> = (1..=n as u8)
        .flat_map(|i| (1..=n as u8).map(move |j| EVar { i, j, r: -1 }))
        .collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..5 {
        let point: BTreeMap<EVar, Q> =
            vars.iter().map(|v| (*v, qi(rng.gen_range(-20..=20)))).collect();
        let rows: Vec<Vec<Q>> = polys
            .iter()
            .map(|p| vars.iter().map(|v| p.derivative(v).eval(&point)).collect())
            .collect();
        if rational_rank(&rows) == polys.len() {
            return true;
        }
    }
    false
}

/// Complete-set property: degree-l symbols of S_l match the commutative
/// characteristic polynomial coefficients, symbols of T_ll match the
/// commutative power traces, and both families carry algebraically
/// independent symbols.
pub fn verify_complete_set(n: u32) -> Report {
    let start = Instant::now();
    let mut report = Report::new("complete-set", n);
    let s = segal_sugawara_cdet(n);
    let mut s_symbols = Vec::new();
    for (l0, sl) in s.iter().enumerate() {
        let l = l0 + 1;
        if sl.filtration_degree() > l {
            report.fail(format!("S_{} has filtration degree > {}", l, l));
        }
        let sym = sl.symbol(l);
        let expect = commutative_charpoly_coefficient(n, l);
        if sym != expect {
            report.fail(format!("symbol of S_{} differs from char-poly coefficient", l));
        }
        s_symbols.push(sym);
    }
    let mut t_symbols = Vec::new();
    for l in 1..=n as usize {
        let t_ll = segal_sugawara_trace(n, l as u32)[l].clone();
        let sym = t_ll.symbol(l);
        let expect = commutative_trace_power(n, l);
        if sym != expect {
            report.fail(format!("symbol of T_{}{} differs from commutative trace power", l, l));
        }
        t_symbols.push(sym);
    }
    if !jacobian_full_rank(&s_symbols, n, 0x5ea1) {
        report.fail("cdet-family symbols: Jacobian rank deficient".into());
    }
    if !jacobian_full_rank(&t_symbols, n, 0x7ace) {
        report.fail("trace-family symbols: Jacobian rank deficient".into());
    }
    report.finish(start)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u8, j: u8, r: i32) -> NcElement {
        NcElement::from_gen(0, Gen::e(i, j, r))
    }

    #[test]
    fn cdet_family_n1_n2() {
        let s1 = segal_sugawara_cdet(1);
        assert_eq!(s1, vec![NcElement::from_gen(1, Gen::e(1, 1, -1))]);

        let s = segal_sugawara_cdet(2);
        let expect_s1 = e(1, 1, -1) + e(2, 2, -1);
        // printed closed form: e11[-1] e22[-1] - e21[-1] e12[-1] + e22[-2]
        let expect_s2 = e(1, 1, -1) * e(2, 2, -1) - e(2, 1, -1) * e(1, 2, -1) + e(2, 2, -2);
        assert_eq!(s[0].clone(), expect_s1.clone() * NcElement::unit(2));
        assert_eq!(s[1].clone(), expect_s2 * NcElement::unit(2));
        for sl in &s {
            assert!(sl.in_u_minus());
        }
    }

    #[test]
    fn cdet_family_n3_s2_display() {
        let s = segal_sugawara_cdet(3);
        let minor = |a: u8, b: u8| {
            e(a, a, -1) * e(b, b, -1) - e(b, a, -1) * e(a, b, -1)
        };
        let expect_s2 =
            minor(1, 2) + minor(1, 3) + minor(2, 3) + e(2, 2, -2) + e(3, 3, -2).scaled(&qi(2));
        assert_eq!(s[1].clone(), expect_s2 * NcElement::unit(3));
    }

    #[test]
    fn trace_family_examples() {
        // T_10 = n, T_11 = tr E[-1]
        for n in [2u32, 3] {
            let t1 = segal_sugawara_trace(n, 1);
            assert_eq!(t1[0], NcElement::scalar(n, qi(n as i64)));
            let mut tr = NcElement::zero_ranked(n);
            for i in 1..=n as u8 {
                tr = tr + NcElement::from_gen(n, Gen::e(i, i, -1));
            }
            assert_eq!(t1[1], tr);
            let t0 = segal_sugawara_trace(n, 0);
            assert_eq!(t0[0], NcElement::scalar(n, qi(n as i64)));
        }
    }

    #[test]
    fn vacuum_annihilates_trivially() {
        let one = NcElement::unit(2);
        assert!(act_on_vacuum(Gen::e(1, 2, 0), &one).is_zero());
    }

    #[test]
    fn e12_zero_kills_s2() {
        let s = segal_sugawara_cdet(2);
        assert!(act_on_vacuum(Gen::e(1, 2, 0), &s[1]).is_zero());
    }

    #[test]
    fn e22_one_on_cdet_n2() {
        // e_{22}[1] cdet(tau+E[-1]) = (K+2)/2 (e_{11}[-1] - e_{22}[-1])
        let c = NcMatrix::tau_matrix(2).cdet();
        let acted = act_on_vacuum(Gen::e(2, 2, 1), &c);
        let half_k = NcElement::central_k(2).scaled(&q(1, 2)) + NcElement::unit(2);
        let expect = half_k * (e(1, 1, -1) - e(2, 2, -1));
        assert_eq!(acted, expect);
    }

    #[test]
    fn field_plus_coefficients() {
        let s = segal_sugawara_cdet(2);
        assert_eq!(field_plus_coefficient(&s[0], -1), s[0]);
        assert_eq!(
            field_plus_coefficient(&s[0], -2),
            e(1, 1, -2) + e(2, 2, -2) + NcElement::zero_ranked(2)
        );
        assert_eq!(
            field_plus_coefficient(&(e(1, 1, -1) * NcElement::unit(2)), -3),
            e(1, 1, -3) * NcElement::unit(2)
        );
    }

    #[test]
    fn centrality_n1_n2() {
        assert!(verify_centrality(1).passed);
        assert!(verify_centrality(2).passed);
        assert!(verify_centrality_exhaustive(2).passed);
    }

    #[test]
    fn commutativity_n2() {
        assert!(verify_commutativity(2, 2).passed);
    }

    #[test]
    fn complete_set_n2() {
        let rep = verify_complete_set(2);
        assert!(rep.passed, "{:?}", rep.witnesses);
        // symbol of S_2 at n=2 is the commutative 2x2 determinant
        let s = segal_sugawara_cdet(2);
        let mut expect = Poly::zero();
        expect.add_mono(vec![EVar { i: 1, j: 1, r: -1 }, EVar { i: 2, j: 2, r: -1 }], qi(1));
        expect.add_mono(vec![EVar { i: 1, j: 2, r: -1 }, EVar { i: 2, j: 1, r: -1 }], qi(-1));
        assert_eq!(s[1].symbol(2), expect);
    }
}

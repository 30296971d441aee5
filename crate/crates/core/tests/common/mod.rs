//! Seeded randomized sweeps shared by the property and acceptance suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sugawara_core::element::NcElement;
use sugawara_core::generator::{Gen, Term};
use sugawara_core::json;
use sugawara_core::matrix::NcMatrix;
use sugawara_core::{q, Q};

fn random_gen(rng: &mut ChaCha8Rng, n: u8, allow_tau: bool, min_r: i32, max_r: i32) -> Gen {
    if allow_tau && rng.gen_ratio(1, 8) {
        return Gen::Tau;
    }
    Gen::e(
        rng.gen_range(1..=n),
        rng.gen_range(1..=n),
        rng.gen_range(min_r..=max_r),
    )
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let num = rng.gen_range(-9i64..=9);
        if num != 0 {
            return q(num, rng.gen_range(1i64..=4));
        }
    }
}

/// A random normally ordered element of the negative-mode subalgebra.
fn random_u_minus(rng: &mut ChaCha8Rng, n: u8, rank: u32) -> NcElement {
    let mut out = NcElement::zero_ranked(rank);
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=3);
        let word: Vec<Gen> = (0..len)
            .map(|_| random_gen(rng, n, false, -3, -1))
            .collect();
        out = out + NcElement::normal_order(rank, &word).scaled(&random_coeff(rng));
    }
    out
}

/// A random element of the full algebra (tau and K allowed).
fn random_element(rng: &mut ChaCha8Rng, n: u8, rank: u32) -> NcElement {
    let mut out = NcElement::zero_ranked(rank);
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=3);
        let mut word: Vec<Gen> = (0..len)
            .map(|_| random_gen(rng, n, false, -2, 2))
            .collect();
        word.sort();
        if rng.gen_ratio(1, 4) {
            word.push(Gen::Tau);
        }
        let kdeg = rng.gen_range(0..=2u32);
        let mut part = NcElement::zero_ranked(rank);
        part.add_term(Term { kdeg, word }, random_coeff(rng));
        out = out + part;
    }
    out
}

/// Jacobi identity and antisymmetry of the commutator on random triples
/// of generators of the full algebra.
pub fn jacobi_sweep(instances: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..instances {
        let n = rng.gen_range(1..=3u8);
        let rank = n as u32;
        let gens: Vec<NcElement> = (0..3)
            .map(|_| NcElement::from_gen(rank, random_gen(&mut rng, n, true, -2, 2)))
            .collect();
        let (x, y, z) = (&gens[0], &gens[1], &gens[2]);
        if !(x.commutator(y) + y.commutator(x)).is_zero() {
            return Err(format!("antisymmetry failed at case {case}"));
        }
        let jac = x.commutator(&y.commutator(z))
            + y.commutator(&z.commutator(x))
            + z.commutator(&x.commutator(y));
        if !jac.is_zero() {
            return Err(format!("jacobi failed at case {case}"));
        }
    }
    Ok(())
}

/// The translation operator T is a derivation: T(xy) = T(x)y + xT(y).
pub fn derivation_sweep(instances: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..instances {
        let n = rng.gen_range(1..=3u8);
        let rank = n as u32;
        let x = random_u_minus(&mut rng, n, rank);
        let y = random_u_minus(&mut rng, n, rank);
        let lhs = (x.clone() * y.clone()).translate();
        let rhs = x.translate() * y.clone() + x * y.translate();
        if lhs != rhs {
            return Err(format!("derivation law failed at case {case}"));
        }
    }
    Ok(())
}

/// Column-determinants change sign under a row swap, for arbitrary
/// matrices over the algebra.
pub fn det_antisymmetry_sweep(instances: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..instances {
        let n = rng.gen_range(2..=3u8);
        let rank = n as u32;
        let size = n as usize;
        let entries: Vec<Vec<NcElement>> = (0..size)
            .map(|_| {
                (0..size)
                    .map(|_| {
                        let g = random_gen(&mut rng, n, false, -2, -1);
                        NcElement::from_gen(rank, g).scaled(&random_coeff(&mut rng))
                    })
                    .collect()
            })
            .collect();
        let m = NcMatrix::new(rank, entries);
        let p = rng.gen_range(0..size);
        let mut qrow = rng.gen_range(0..size);
        if qrow == p {
            qrow = (qrow + 1) % size;
        }
        if !m.row_swap_sign_check(p, qrow) {
            return Err(format!("row-swap antisymmetry failed at case {case}"));
        }
    }
    Ok(())
}

/// Canonical serialization round-trips random elements exactly.
pub fn roundtrip_sweep(instances: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..instances {
        let n = rng.gen_range(1..=3u8);
        let rank = n as u32;
        let x = random_element(&mut rng, n, rank);
        let s = json::serialize_element(&x);
        let back = json::parse_element(&s, rank)
            .map_err(|e| format!("parse failed at case {case}: {e}"))?;
        if back != x {
            return Err(format!("round-trip mismatch at case {case}"));
        }
        if json::serialize_element(&back) != s {
            return Err(format!("re-serialization not byte-identical at case {case}"));
        }
    }
    Ok(())
}

//! Deterministic, seeded samplers for randomized verification batteries:
//! integer involutions, anti-invariant forms, and Real characters.
//!
//! Everything is driven by a caller-supplied seed through ChaCha8, so
//! identical seeds reproduce identical suites on every platform.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::IntMat;
use crate::torus::{AltForm, LatticeInvolution};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        // Rejection-free modulo is fine here: bounds are tiny and the
        // suites only need reproducibility, not perfect uniformity.
        self.rng.next_u64() % bound
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Uniform float in `[lo, hi)`.
    pub fn float_in(&mut self, lo: f64, hi: f64) -> f64 {
        let unit = (self.rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + unit * (hi - lo)
    }

    /// Random involution on ℤⁿ: a canonical block form (fixed, negated
    /// and swapped coordinates) conjugated by a few random elementary
    /// unimodular transvections, keeping entries moderate.
    pub fn involution(&mut self, n: usize) -> LatticeInvolution {
        assert!(n > 0);
        // Canonical form: p swap blocks, then fixed/negated singles.
        let max_pairs = n / 2;
        let p = self.below(max_pairs as u64 + 1) as usize;
        let mut canon = IntMat::zero(n, n);
        for b in 0..p {
            canon[(2 * b, 2 * b + 1)] = BigInt::from(1);
            canon[(2 * b + 1, 2 * b)] = BigInt::from(1);
        }
        for i in 2 * p..n {
            canon[(i, i)] = BigInt::from(if self.below(2) == 0 { 1 } else { -1 });
        }
        // Conjugate: τ = P·canon·P⁻¹ with P a short product of
        // transvections E_{ij}(±1) and coordinate swaps.
        let mut pmat = IntMat::identity(n);
        let mut pinv = IntMat::identity(n);
        let ops = if n < 2 {
            0
        } else {
            1 + self.below(2 * n as u64) as usize
        };
        for _ in 0..ops {
            let i = self.below(n as u64) as usize;
            let mut j = self.below(n as u64) as usize;
            if i == j {
                j = (j + 1) % n;
            }
            match self.below(3) {
                0 => {
                    // P ← E_{ij}(1)·P, P⁻¹ ← P⁻¹·E_{ij}(−1)
                    add_row(&mut pmat, i, j, 1);
                    add_col(&mut pinv, j, i, -1);
                }
                1 => {
                    add_row(&mut pmat, i, j, -1);
                    add_col(&mut pinv, j, i, 1);
                }
                _ => {
                    swap_rows(&mut pmat, i, j);
                    swap_cols(&mut pinv, i, j);
                }
            }
        }
        debug_assert!((&pmat * &pinv).is_identity());
        let tau = &(&pmat * &canon) * &pinv;
        LatticeInvolution::new(tau).expect("conjugate of an involution is an involution")
    }

    /// Random anti-invariant alternating form for the given involution:
    /// the projection `w − τᵀwτ` of a random alternating seed form.
    pub fn anti_invariant_form(&mut self, lat: &LatticeInvolution, max_entry: i64) -> AltForm {
        let n = lat.rank();
        let mut w = IntMat::zero(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let v = self.int_in(-max_entry, max_entry);
                w[(i, j)] = BigInt::from(v);
                w[(j, i)] = BigInt::from(-v);
            }
        }
        let taut = lat.tau().transpose();
        let proj = &w - &(&(&taut * &w) * lat.tau());
        let u = AltForm::new(proj).expect("projection is alternating");
        debug_assert!(u.is_anti_invariant(lat));
        u
    }

    /// Random vector with entries in `[-max, max]`.
    pub fn int_vector(&mut self, n: usize, max: i64) -> Vec<BigInt> {
        (0..n)
            .map(|_| BigInt::from(self.int_in(-max, max)))
            .collect()
    }

    /// Random element of the fixed sublattice `Λ^τ`.
    pub fn fixed_vector(&mut self, lat: &LatticeInvolution, max: i64) -> Vec<BigInt> {
        let basis = lat.fixed_basis();
        let mut v = vec![BigInt::from(0); lat.rank()];
        for j in 0..basis.cols() {
            let c = self.int_in(-max, max);
            for i in 0..lat.rank() {
                v[i] += &basis[(i, j)] * c;
            }
        }
        v
    }
}

fn add_row(m: &mut IntMat, i: usize, j: usize, k: i64) {
    for c in 0..m.cols() {
        let t = &m[(j, c)] * k;
        m[(i, c)] += t;
    }
}

fn add_col(m: &mut IntMat, i: usize, j: usize, k: i64) {
    for r in 0..m.rows() {
        let t = &m[(r, j)] * k;
        m[(r, i)] += t;
    }
}

fn swap_rows(m: &mut IntMat, a: usize, b: usize) {
    for c in 0..m.cols() {
        let x = m[(a, c)].clone();
        m[(a, c)] = m[(b, c)].clone();
        m[(b, c)] = x;
    }
}

fn swap_cols(m: &mut IntMat, a: usize, b: usize) {
    for r in 0..m.rows() {
        let x = m[(r, a)].clone();
        m[(r, a)] = m[(r, b)].clone();
        m[(r, b)] = x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_involutions_are_involutions() {
        let mut s = Sampler::new(7);
        for n in 1..=8 {
            for _ in 0..20 {
                let lat = s.involution(n);
                let u = s.anti_invariant_form(&lat, 4);
                assert!(u.is_anti_invariant(&lat));
            }
        }
    }

    #[test]
    fn sampler_is_reproducible() {
        let a: Vec<u64> = {
            let mut s = Sampler::new(42);
            (0..8).map(|_| s.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut s = Sampler::new(42);
            (0..8).map(|_| s.next_u64()).collect()
        };
        assert_eq!(a, b);
    }
}

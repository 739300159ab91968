//! Truncated graded mod-2 characteristic-class algebra: inverse total
//! classes, the tensor-by-line-bundle expansion, and the pushforward
//! along a projectivized normal bundle that localizes Stiefel-Whitney
//! numbers of a Real bundle to the fixed locus.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::klein::{CurveBundleClass, KleinType};
use crate::{Error, Result};

/// `C(m, k) mod 2` by Lucas' rule: odd iff the binary digits of `k` are a
/// submask of `m`.
pub fn binom_mod2(m: u64, k: u64) -> u8 {
    if k > m {
        return 0;
    }
    ((k & m) == k) as u8
}

/// A named generator with its cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// Shared polynomial-ring context: generators plus the truncation degree
/// beyond which every monomial is dropped.
#[derive(Debug, PartialEq, Eq)]
pub struct GradedRing {
    pub generators: Vec<Generator>,
    pub truncation: usize,
}

/// Default truncation; all concrete uses stay in degree ≤ 4, the
/// headroom is cheap.
pub const DEFAULT_TRUNCATION: usize = 8;

impl GradedRing {
    pub fn new(generators: Vec<(String, usize)>, truncation: usize) -> Rc<Self> {
        Rc::new(GradedRing {
            generators: generators
                .into_iter()
                .map(|(name, degree)| Generator { name, degree })
                .collect(),
            truncation,
        })
    }

    /// The ring for a rank-`r` bundle over a codimension-`k` fixed locus:
    /// generators `w1(E)…wr(E)`, `w1(N)…wk(N)` and the line class `x`.
    pub fn characteristic_classes(r: usize, k: usize, truncation: usize) -> Rc<Self> {
        let mut gens = Vec::new();
        for i in 1..=r {
            gens.push((format!("w{i}(E)"), i));
        }
        for i in 1..=k {
            gens.push((format!("w{i}(N)"), i));
        }
        gens.push(("x".into(), 1));
        Self::new(gens, truncation)
    }

    pub fn arity(&self) -> usize {
        self.generators.len()
    }

    fn monomial_degree(&self, m: &[u16]) -> usize {
        m.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e as usize * g.degree)
            .sum()
    }
}

/// A graded-commutative polynomial over ℤ₂ in a shared ring, truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedZ2Poly {
    ring: Rc<GradedRing>,
    terms: BTreeSet<Vec<u16>>,
}

impl GradedZ2Poly {
    pub fn zero(ring: &Rc<GradedRing>) -> Self {
        GradedZ2Poly {
            ring: ring.clone(),
            terms: BTreeSet::new(),
        }
    }

    pub fn one(ring: &Rc<GradedRing>) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(vec![0u16; ring.arity()]);
        GradedZ2Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Rc<GradedRing>, index: usize) -> Self {
        assert!(index < ring.arity());
        let mut m = vec![0u16; ring.arity()];
        m[index] = 1;
        let mut terms = BTreeSet::new();
        if ring.monomial_degree(&m) <= ring.truncation {
            terms.insert(m);
        }
        GradedZ2Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Generator looked up by name; panics when absent.
    pub fn named(ring: &Rc<GradedRing>, name: &str) -> Self {
        let idx = ring
            .generators
            .iter()
            .position(|g| g.name == name)
            .unwrap_or_else(|| panic!("no generator named {name}"));
        Self::var(ring, idx)
    }

    pub fn ring(&self) -> &Rc<GradedRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_term(&self) -> u8 {
        self.terms.contains(&vec![0u16; self.ring.arity()]) as u8
    }

    pub fn add(&self, other: &GradedZ2Poly) -> GradedZ2Poly {
        assert!(Rc::ptr_eq(&self.ring, &other.ring), "mixed rings");
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .cloned()
            .collect();
        GradedZ2Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &GradedZ2Poly) -> GradedZ2Poly {
        assert!(Rc::ptr_eq(&self.ring, &other.ring), "mixed rings");
        let mut terms = BTreeSet::new();
        for a in &self.terms {
            for b in &other.terms {
                let m: Vec<u16> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if self.ring.monomial_degree(&m) <= self.ring.truncation && !terms.insert(m.clone())
                {
                    terms.remove(&m);
                }
            }
        }
        GradedZ2Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> GradedZ2Poly {
        let mut acc = GradedZ2Poly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Degree-`d` homogeneous slice.
    pub fn homogeneous_part(&self, d: usize) -> GradedZ2Poly {
        let terms = self
            .terms
            .iter()
            .filter(|m| self.ring.monomial_degree(m) == d)
            .cloned()
            .collect();
        GradedZ2Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.terms
            .iter()
            .map(|m| self.ring.monomial_degree(m))
            .max()
            .unwrap_or(0)
    }

    /// Splits off the exact power of generator `idx`: returns pairs
    /// `(power, polynomial in the remaining generators)`.
    pub fn split_by_power(&self, idx: usize) -> Vec<(u16, GradedZ2Poly)> {
        let mut buckets: Vec<(u16, BTreeSet<Vec<u16>>)> = Vec::new();
        for m in &self.terms {
            let p = m[idx];
            let mut rest = m.clone();
            rest[idx] = 0;
            match buckets.binary_search_by_key(&p, |(q, _)| *q) {
                Ok(i) => {
                    buckets[i].1.insert(rest);
                }
                Err(i) => {
                    let mut set = BTreeSet::new();
                    set.insert(rest);
                    buckets.insert(i, (p, set));
                }
            }
        }
        buckets
            .into_iter()
            .map(|(p, terms)| {
                (
                    p,
                    GradedZ2Poly {
                        ring: self.ring.clone(),
                        terms,
                    },
                )
            })
            .collect()
    }

    /// Evaluates the polynomial with the given ℤ₂ value per generator.
    pub fn eval_bits(&self, values: &[u8]) -> u8 {
        assert_eq!(values.len(), self.ring.arity());
        let mut acc = 0u8;
        for m in &self.terms {
            let mut term = 1u8;
            for (e, &v) in m.iter().zip(values) {
                if *e > 0 && v & 1 == 0 {
                    term = 0;
                    break;
                }
            }
            acc ^= term;
        }
        acc
    }

    /// Deterministic display form: monomials in lexicographic order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for m in &self.terms {
            let mut factors = Vec::new();
            for (e, g) in m.iter().zip(&self.ring.generators) {
                match e {
                    0 => {}
                    1 => factors.push(g.name.clone()),
                    _ => factors.push(format!("{}^{e}", g.name)),
                }
            }
            parts.push(if factors.is_empty() {
                "1".into()
            } else {
                factors.join("*")
            });
        }
        parts.join(" + ")
    }
}

/// Multiplicative inverse of a total class with constant term 1, up to
/// truncation: `s = Σ (w+1)^k`.
pub fn inverse_total_class(w: &GradedZ2Poly) -> Result<GradedZ2Poly> {
    if w.constant_term() != 1 {
        return Err(Error::ConstantTermNotOne);
    }
    let ring = w.ring().clone();
    let t = w.add(&GradedZ2Poly::one(&ring)); // strictly positive part
    let mut acc = GradedZ2Poly::one(&ring);
    let mut power = GradedZ2Poly::one(&ring);
    for _ in 0..=ring.truncation {
        power = power.mul(&t);
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power);
    }
    debug_assert!(w.mul(&acc).is_one());
    Ok(acc)
}

/// Total class of `F ⊗ χ` for a rank-`r` bundle with total class `w_F`
/// and line class `x`: degree-`i` slice `Σⱼ C(r−j, i−j)·wⱼ(F)·x^{i−j}`,
/// assembled as `Σⱼ wⱼ(F)·(1+x)^{r−j}` with Lucas-reduced binomials.
pub fn tensor_line_expansion(r: usize, w_f: &GradedZ2Poly, x_index: usize) -> GradedZ2Poly {
    let ring = w_f.ring().clone();
    let mut acc = GradedZ2Poly::zero(&ring);
    for j in 0..=r.min(ring.truncation) {
        let wj = w_f.homogeneous_part(j);
        if wj.is_zero() {
            continue;
        }
        // (1+x)^{r−j} truncated, coefficients C(r−j, p) mod 2.
        let mut binom = GradedZ2Poly::zero(&ring);
        let x = GradedZ2Poly::var(&ring, x_index);
        let mut xp = GradedZ2Poly::one(&ring);
        for p in 0..=(ring.truncation.saturating_sub(j)) {
            if binom_mod2((r - j) as u64, p as u64) == 1 && !xp.is_zero() {
                binom = binom.add(&xp);
            }
            xp = xp.mul(&x);
        }
        acc = acc.add(&wj.mul(&binom));
    }
    acc
}

/// Input of the localization pushforward.
#[derive(Clone, Debug)]
pub struct LocalizationInput {
    /// Ambient (even) dimension; the monomial must have this degree.
    pub n: usize,
    /// Codimension of the fixed locus.
    pub k: usize,
    /// Rank of the Real bundle.
    pub r: usize,
    /// Total class of the fixed subbundle, a polynomial in the `wᵢ(E)`
    /// generators with constant term 1.
    pub w_e_fixed: GradedZ2Poly,
    /// Total class of the normal bundle, degree ≤ k, constant term 1.
    pub w_normal: GradedZ2Poly,
    /// The Stiefel-Whitney monomial `Π w_{2i}^{kᵢ}` as `(2i, kᵢ)` pairs.
    pub monomial: Vec<(usize, u32)>,
}

/// Localizes a degree-`n` Stiefel-Whitney number of a Real rank-`r`
/// bundle to the fixed locus: expands the monomial on
/// `π*(E^ι̃) ⊕ [π*(E^ι̃)⊗χ]`, splits by powers of the line class, and
/// pushes `x^{k+l} ↦ s_l(η)` with `s(η) = w(N)⁻¹`. Returns the
/// degree-`(n−k)` class to be paired with the fixed fundamental class.
pub fn localize(input: &LocalizationInput) -> Result<GradedZ2Poly> {
    let ring = input.w_e_fixed.ring().clone();
    if !input.n.is_multiple_of(2) {
        return Err(Error::DegreeMismatch(
            "ambient dimension must be even".into(),
        ));
    }
    let deg: usize = input.monomial.iter().map(|&(i, p)| i * p as usize).sum();
    if deg != input.n {
        return Err(Error::DegreeMismatch(format!(
            "monomial degree {deg} must equal ambient dimension {}",
            input.n
        )));
    }
    if input.n > ring.truncation {
        return Err(Error::DegreeMismatch(
            "ambient dimension exceeds truncation".into(),
        ));
    }
    if input.w_normal.max_degree() > input.k {
        return Err(Error::DegreeMismatch(
            "normal-bundle class above codimension".into(),
        ));
    }
    if input.w_e_fixed.constant_term() != 1 || input.w_normal.constant_term() != 1 {
        return Err(Error::ConstantTermNotOne);
    }

    let x_index = ring
        .generators
        .iter()
        .position(|g| g.name == "x")
        .ok_or_else(|| Error::DegreeMismatch("ring lacks the line class x".into()))?;

    // w(E' ⊕ E'⊗χ) = w(E')·w(E'⊗χ) on the projectivized bundle.
    let twisted = tensor_line_expansion(input.r, &input.w_e_fixed, x_index);
    let total = input.w_e_fixed.mul(&twisted);

    // Assemble the monomial in the Whitney classes of the sum.
    let mut expanded = GradedZ2Poly::one(&ring);
    for &(i, p) in &input.monomial {
        if i > 2 * input.r {
            return Ok(GradedZ2Poly::zero(&ring)); // class above the rank
        }
        expanded = expanded.mul(&total.homogeneous_part(i).pow(p));
    }

    // Pushforward: the x^{n−l}-slice (coefficient of degree l in the base
    // generators) contributes P_l · s_{n−k−l}(η) for l ≤ n−k; lower
    // x-powers die.
    let s = inverse_total_class(&input.w_normal)?;
    let mut out = GradedZ2Poly::zero(&ring);
    for (xpow, coeff) in expanded.split_by_power(x_index) {
        let l = input.n - xpow as usize;
        if l > input.n - input.k {
            continue;
        }
        let sl = s.homogeneous_part(input.n - input.k - l);
        out = out.add(&coeff.mul(&sl));
    }
    Ok(out.homogeneous_part(input.n - input.k))
}

/// The codimension-1 specialization on a Klein surface at rank 1: the
/// localized pairing `⟨w₂(ℝE), [X]₂⟩ = ⟨w₁(E^ι̃), [X^ι]₂⟩` becomes the
/// parity law `d ≡ Σᵢ wᵢ (mod 2)` for a curve class. The symbolic
/// pipeline is exercised and then evaluated per circle.
pub fn codim_one_pairing_check(t: KleinType, c: &CurveBundleClass) -> bool {
    assert_eq!(c.w.len(), t.r);
    let ring = GradedRing::characteristic_classes(1, 1, DEFAULT_TRUNCATION);
    let w_e = GradedZ2Poly::one(&ring).add(&GradedZ2Poly::named(&ring, "w1(E)"));
    let w_n = GradedZ2Poly::one(&ring).add(&GradedZ2Poly::named(&ring, "w1(N)"));
    let input = LocalizationInput {
        n: 2,
        k: 1,
        r: 1,
        w_e_fixed: w_e,
        w_normal: w_n,
        monomial: vec![(2, 1)],
    };
    let localized = localize(&input).expect("rank-1 localization is well posed");
    // Rank 1: the localized class must be exactly w₁(E).
    if localized != GradedZ2Poly::named(&ring, "w1(E)") {
        return false;
    }
    // Pair with the disconnected fixed locus: sum the per-circle values
    // of w₁(E^ι̃); w₁(N) does not occur at rank 1.
    let mut rhs = 0u8;
    for &wi in &c.w {
        let mut values = vec![0u8; ring.arity()];
        values[0] = wi;
        rhs ^= localized.eval_bits(&values);
    }
    let lhs = (c.degree.rem_euclid(2)) as u8;
    lhs == rhs
}

/// Symbolic codimension-1 identity at rank `r`:
/// `localize(w₂) = w₁(E^ι̃) + (r(r−1)/2 mod 2)·w₁(N)`.
pub fn codim_one_symbolic_identity(r: usize) -> bool {
    let ring = GradedRing::characteristic_classes(r.max(1), 1, DEFAULT_TRUNCATION);
    let mut w_e = GradedZ2Poly::one(&ring);
    for i in 1..=r {
        w_e = w_e.add(&GradedZ2Poly::named(&ring, &format!("w{i}(E)")));
    }
    let w_n = GradedZ2Poly::one(&ring).add(&GradedZ2Poly::named(&ring, "w1(N)"));
    let input = LocalizationInput {
        n: 2,
        k: 1,
        r,
        w_e_fixed: w_e,
        w_normal: w_n,
        monomial: vec![(2, 1)],
    };
    let got = localize(&input).expect("well posed");
    let mut want = GradedZ2Poly::named(&ring, "w1(E)");
    if (r * (r - 1) / 2) % 2 == 1 {
        want = want.add(&GradedZ2Poly::named(&ring, "w1(N)"));
    }
    got == want
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klein::validate_curve_class;
    use crate::sampling::Sampler;

    fn ring2() -> Rc<GradedRing> {
        GradedRing::characteristic_classes(2, 1, DEFAULT_TRUNCATION)
    }

    #[test]
    fn inverse_of_one_is_one() {
        let r = ring2();
        let one = GradedZ2Poly::one(&r);
        assert!(inverse_total_class(&one).unwrap().is_one());
    }

    #[test]
    fn inverse_geometric_series() {
        // (1 + w₁)⁻¹ = 1 + w₁ + w₁² + … up to truncation; product is 1.
        let r = ring2();
        let w = GradedZ2Poly::one(&r).add(&GradedZ2Poly::named(&r, "w1(E)"));
        let s = inverse_total_class(&w).unwrap();
        assert!(w.mul(&s).is_one());
        for d in 0..=r.truncation {
            assert!(!s.homogeneous_part(d).is_zero(), "degree {d} missing");
        }
        // Degree-2 slice of (1 + w₁ + w₂)⁻¹ is w₁² + w₂.
        let w = GradedZ2Poly::one(&r)
            .add(&GradedZ2Poly::named(&r, "w1(E)"))
            .add(&GradedZ2Poly::named(&r, "w2(E)"));
        let s = inverse_total_class(&w).unwrap();
        let w1 = GradedZ2Poly::named(&r, "w1(E)");
        let w2 = GradedZ2Poly::named(&r, "w2(E)");
        assert_eq!(s.homogeneous_part(2), w1.mul(&w1).add(&w2));
        // Constant term 0 is rejected.
        assert_eq!(
            inverse_total_class(&w1).unwrap_err(),
            Error::ConstantTermNotOne
        );
    }

    #[test]
    fn tensor_expansion_degree_two() {
        // Degree-2 slice: w₂(F⊗χ) = w₂ + (r−1)w₁x + C(r,2)x².
        for r in 1..=6usize {
            let ring = GradedRing::characteristic_classes(r.max(2), 1, DEFAULT_TRUNCATION);
            let mut w_f = GradedZ2Poly::one(&ring);
            for i in 1..=r.min(2) {
                w_f = w_f.add(&GradedZ2Poly::named(&ring, &format!("w{i}(E)")));
            }
            let x_idx = ring.arity() - 1;
            let out = tensor_line_expansion(r, &w_f, x_idx).homogeneous_part(2);
            let w1 = GradedZ2Poly::named(&ring, "w1(E)");
            let x = GradedZ2Poly::var(&ring, x_idx);
            let mut want = GradedZ2Poly::zero(&ring);
            if r >= 2 {
                want = want.add(&GradedZ2Poly::named(&ring, "w2(E)"));
            }
            if (r - 1) % 2 == 1 {
                want = want.add(&w1.mul(&x));
            }
            if (r * (r - 1) / 2) % 2 == 1 {
                want = want.add(&x.mul(&x));
            }
            assert_eq!(out, want, "rank {r}");
        }
    }

    #[test]
    fn tensor_expansion_rank_one() {
        // w(F⊗χ) for a line bundle: 1 + (w₁ + x); degree-2 term is zero.
        let ring = GradedRing::characteristic_classes(1, 1, DEFAULT_TRUNCATION);
        let w_f = GradedZ2Poly::one(&ring).add(&GradedZ2Poly::named(&ring, "w1(E)"));
        let x_idx = ring.arity() - 1;
        let out = tensor_line_expansion(1, &w_f, x_idx);
        let want1 = GradedZ2Poly::named(&ring, "w1(E)").add(&GradedZ2Poly::var(&ring, x_idx));
        assert_eq!(out.homogeneous_part(1), want1);
        assert!(out.homogeneous_part(2).is_zero());
    }

    #[test]
    fn inverse_total_class_randomized() {
        // w·s = 1 up to truncation for random total classes.
        let mut smp = Sampler::new(53);
        for _ in 0..100 {
            let ring = GradedRing::characteristic_classes(4, 3, DEFAULT_TRUNCATION);
            let mut w = GradedZ2Poly::one(&ring);
            for i in 0..ring.arity() {
                if smp.next_u64() & 1 == 1 {
                    w = w.add(&GradedZ2Poly::var(&ring, i));
                }
                if smp.next_u64() & 3 == 0 {
                    let j = smp.below(ring.arity() as u64) as usize;
                    w = w.add(&GradedZ2Poly::var(&ring, i).mul(&GradedZ2Poly::var(&ring, j)));
                }
            }
            let s = inverse_total_class(&w).unwrap();
            assert!(w.mul(&s).is_one());
        }
    }

    #[test]
    fn codim_one_identity_ranks() {
        for r in 1..=6 {
            assert!(codim_one_symbolic_identity(r), "rank {r}");
        }
    }

    #[test]
    fn isolated_fixed_points_coefficient() {
        // n = 2, k = 2: only the x²-coefficient a₀ = C(r,2) mod 2
        // survives, paired with the point count.
        for r in 1..=5usize {
            let ring = GradedRing::characteristic_classes(r, 2, DEFAULT_TRUNCATION);
            let mut w_e = GradedZ2Poly::one(&ring);
            for i in 1..=r {
                w_e = w_e.add(&GradedZ2Poly::named(&ring, &format!("w{i}(E)")));
            }
            let w_n = GradedZ2Poly::one(&ring)
                .add(&GradedZ2Poly::named(&ring, "w1(N)"))
                .add(&GradedZ2Poly::named(&ring, "w2(N)"));
            let input = LocalizationInput {
                n: 2,
                k: 2,
                r,
                w_e_fixed: w_e,
                w_normal: w_n,
                monomial: vec![(2, 1)],
            };
            let got = localize(&input).unwrap();
            let want_bit = binom_mod2(r as u64, 2);
            assert_eq!(got.is_one(), want_bit == 1, "rank {r}");
            assert_eq!(got.is_zero(), want_bit == 0, "rank {r}");
        }
    }

    #[test]
    fn rank_one_pairing_on_random_classes() {
        let mut s = Sampler::new(31);
        let mut tested = 0;
        while tested < 200 {
            let g = 1 + s.below(5) as usize;
            let r = 1 + s.below(g as u64 + 1) as usize;
            let a = if r == g + 1 { 0 } else { s.below(2) as u8 };
            let Ok(t) = KleinType::new(g, r, a) else {
                continue;
            };
            let w: Vec<u8> = (0..r).map(|_| (s.next_u64() & 1) as u8).collect();
            let parity: i64 = w.iter().map(|&b| i64::from(b)).sum::<i64>() % 2;
            let d = parity + 2 * s.int_in(-6, 6);
            let Ok(c) = validate_curve_class(t, d, &w) else {
                continue;
            };
            assert!(codim_one_pairing_check(t, &c));
            tested += 1;
        }
    }
}

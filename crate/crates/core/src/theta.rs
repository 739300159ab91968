//! Quadratic refinements of the mod-2 intersection form, the associated
//! ±1-valued characters, and the Real theta-bundle classes they induce on
//! the Picard torus, together with the combinatorial realizability of
//! boundary data.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::exact::{rank_gf2, solve_gf2, IntMat};
use crate::klein::{cap_mod2, KleinType, PicTorusData};
use crate::torus::{f_u, RealLineBundleClass, UCharacter};
use crate::{Error, Result};

/// A quadratic refinement `q: H₁(C, ℤ₂) → ℤ₂` of the mod-2 intersection
/// form, determined by its `2g` basis values through
/// `q(η+η') = q(η) + q(η') + η·η'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticRefinement {
    genus: usize,
    values: Vec<u8>,
}

impl QuadraticRefinement {
    pub fn new(genus: usize, values: Vec<u8>) -> Self {
        assert_eq!(values.len(), 2 * genus, "one value per basis vector");
        QuadraticRefinement {
            genus,
            values: values.iter().map(|v| v & 1).collect(),
        }
    }

    /// Refinement number `mask` in the lexicographic enumeration of all
    /// `2^{2g}` refinements.
    pub fn from_mask(genus: usize, mask: u64) -> Self {
        let values = (0..2 * genus).map(|i| ((mask >> i) & 1) as u8).collect();
        QuadraticRefinement { genus, values }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn basis_values(&self) -> &[u8] {
        &self.values
    }

    /// Mod-2 intersection pairing in the standard symplectic basis:
    /// `āᵢ·b̄ᵢ = 1`, all other basis pairs 0.
    fn pairing(&self, x: &[u8], y: &[u8]) -> u8 {
        let g = self.genus;
        let mut acc = 0;
        for i in 0..g {
            acc ^= (x[i] & y[g + i]) ^ (x[g + i] & y[i]);
        }
        acc
    }

    /// Evaluates `q` on a ℤ₂-vector by accumulating the defining
    /// relation; independent of the expansion order.
    pub fn eval(&self, eta: &[u8]) -> u8 {
        assert_eq!(eta.len(), 2 * self.genus);
        let mut acc = 0u8;
        for (i, &c) in eta.iter().enumerate() {
            if c & 1 == 1 {
                acc ^= self.values[i];
            }
        }
        for i in 0..2 * self.genus {
            for j in (i + 1)..2 * self.genus {
                if eta[i] & eta[j] & 1 == 1 {
                    let mut ei = vec![0u8; 2 * self.genus];
                    ei[i] = 1;
                    let mut ej = vec![0u8; 2 * self.genus];
                    ej[j] = 1;
                    acc ^= self.pairing(&ei, &ej);
                }
            }
        }
        acc
    }

    /// Evaluates `q` on an integer homology class (reduced mod 2).
    pub fn eval_int(&self, eta: &[BigInt]) -> u8 {
        let bits: Vec<u8> = eta
            .iter()
            .map(|x| (x.mod_floor(&BigInt::from(2)) == BigInt::one()) as u8)
            .collect();
        self.eval(&bits)
    }

    /// Arf invariant `Σᵢ q(aᵢ)·q(bᵢ)`.
    pub fn arf(&self) -> u8 {
        let g = self.genus;
        (0..g).fold(0u8, |acc, i| acc ^ (self.values[i] & self.values[g + i]))
    }

    /// Pullback `q∘φ` along a mod-2 symplectic map given by its matrix
    /// (columns are images of basis vectors).
    pub fn pullback(&self, phi: &IntMat) -> QuadraticRefinement {
        let n = 2 * self.genus;
        assert_eq!(phi.rows(), n);
        let values = (0..n)
            .map(|i| {
                let img: Vec<u8> = (0..n)
                    .map(|r| (phi[(r, i)].mod_floor(&BigInt::from(2)) == BigInt::one()) as u8)
                    .collect();
                self.eval(&img)
            })
            .collect();
        QuadraticRefinement {
            genus: self.genus,
            values,
        }
    }

    /// Invariance under the involution induced on mod-2 homology.
    pub fn is_involution_invariant(&self, iota_star: &IntMat) -> bool {
        self.pullback(iota_star) == *self
    }
}

/// Number of refinements with Arf invariant zero at genus `g`:
/// `2^{g−1}(2^g + 1)`.
pub fn arf_zero_count(g: usize) -> u64 {
    if g == 0 {
        return 1;
    }
    (1u64 << (g - 1)) * ((1u64 << g) + 1)
}

/// The ±1-valued cup-form character attached to a refinement:
/// `χ(λ) = (−1)^{q(λ ∩ [C])}`, a u_C-character by the Riemann-Mumford
/// relations.
pub fn chi_from_q(p: &PicTorusData, q: &QuadraticRefinement) -> UCharacter {
    assert_eq!(q.genus(), p.klein.g);
    let n = p.rank();
    let mut angles = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![BigInt::from(0); n];
        e[i] = BigInt::one();
        let capped = cap_mod2(&p.surface, &e);
        angles.push(i64::from(q.eval(&capped)));
    }
    UCharacter::from_integer_angles(p.cup_form.clone(), &angles)
}

/// The Real theta-bundle class attached to a refinement: the unique class
/// with Chern form `u_C` whose `w₀` extends `f_{u_C}` and takes the value
/// `q([Cᵢ])` on each circle dual `[Cᵢ]^∨`.
pub fn theta_class_from_q(
    p: &PicTorusData,
    q: &QuadraticRefinement,
) -> Result<RealLineBundleClass> {
    let boundary: Vec<u8> = p
        .surface
        .circle_classes
        .iter()
        .map(|c| q.eval_int(c))
        .collect();
    theta_class_with_boundary(p, &boundary)
}

/// Determinant-index class of the Spin-case family attached to a Real
/// theta characteristic with Mumford form `q`; same class as
/// [`theta_class_from_q`].
pub fn spin_class(p: &PicTorusData, q: &QuadraticRefinement) -> Result<RealLineBundleClass> {
    theta_class_from_q(p, q)
}

/// The class of the point-translate theta bundle for a base point on
/// circle `i0` (1-based): boundary value `g mod 2` on `[C_{i0}]^∨` and 1
/// on every other circle dual.
pub fn theta_class_for_point(p: &PicTorusData, i0: usize) -> Result<RealLineBundleClass> {
    assert!((1..=p.klein.r).contains(&i0), "circle index out of range");
    let boundary: Vec<u8> = (1..=p.klein.r)
        .map(|i| if i == i0 { (p.klein.g % 2) as u8 } else { 1 })
        .collect();
    theta_class_with_boundary(p, &boundary)
}

/// Solves for the unique `w₀` on `Λ^τ` extending `f_{u_C}` with the given
/// values on the circle duals. The circle duals generate `Λ^τ` modulo
/// `(id+τ)Λ`, so a solution is unique when it exists; it exists exactly
/// when the boundary respects the relations the duals satisfy inside
/// `(id+τ)Λ` (automatic for boundaries read off a quadratic refinement
/// compatible with the Real structure, in particular for every
/// involution-invariant refinement).
pub fn theta_class_with_boundary(p: &PicTorusData, boundary: &[u8]) -> Result<RealLineBundleClass> {
    assert_eq!(boundary.len(), p.klein.r);
    let lat = &p.lattice;
    let u = &p.cup_form;
    let fixed = lat.fixed_basis();
    let dim = fixed.cols();
    let n = lat.rank();

    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut rhs: Vec<u8> = Vec::new();
    let coords_mod2 = |v: &[BigInt]| -> Result<Vec<u8>> {
        let c = crate::exact::lattice_solve(&fixed, v).ok_or(Error::NotInSublattice)?;
        Ok(c.iter()
            .map(|x| (x.mod_floor(&BigInt::from(2)) == BigInt::one()) as u8)
            .collect())
    };

    for (cd, &b) in p.circle_duals.iter().zip(boundary) {
        rows.push(coords_mod2(cd)?);
        rhs.push(b & 1);
    }
    let id = IntMat::identity(n);
    let norm = &id + lat.tau();
    for j in 0..n {
        let gen = norm.column(j);
        rows.push(coords_mod2(&gen)?);
        rhs.push(f_u(lat, u, &gen)?);
    }

    if rank_gf2(&rows) != dim {
        return Err(Error::InconsistentSystem);
    }
    let w0 = solve_gf2(&rows, &rhs).ok_or(Error::InconsistentSystem)?;
    RealLineBundleClass::new(lat, u.clone(), w0)
}

/// Multiplicity table of boundary vectors over an enumeration of
/// quadratic refinements.
#[derive(Clone, Debug)]
pub struct BoundaryEnumeration {
    pub klein: KleinType,
    /// `(boundary vector (q([Cᵢ]))ᵢ, multiplicity)` over all `2^{2g}`
    /// refinements, sorted by vector.
    pub all: Vec<(Vec<u8>, u64)>,
    /// Same restricted to refinements invariant under the induced mod-2
    /// involution; these are the ones arising from Real theta
    /// characteristics.
    pub invariant: Vec<(Vec<u8>, u64)>,
    /// The boundary vector excluded by effectiveness in the separating
    /// case (`w = (1,…,1)`, i.e. `q = (0,…,0)`); reported as metadata
    /// only, the enumeration itself is purely combinatorial.
    pub effectiveness_exclusion: Option<Vec<u8>>,
}

impl BoundaryEnumeration {
    /// Realized `w`-vectors (`wᵢ = q([Cᵢ]) + 1`) over all refinements.
    pub fn realized_w_all(&self) -> Vec<Vec<u8>> {
        self.all
            .iter()
            .map(|(q, _)| q.iter().map(|b| b ^ 1).collect())
            .collect()
    }

    /// Realized `w`-vectors over invariant refinements.
    pub fn realized_w_invariant(&self) -> Vec<Vec<u8>> {
        self.invariant
            .iter()
            .map(|(q, _)| q.iter().map(|b| b ^ 1).collect())
            .collect()
    }
}

/// Enumerates all `2^{2g}` quadratic refinements, mapping each to its
/// boundary vector `(q([Cᵢ]))ᵢ`; also tabulates the sub-enumeration over
/// involution-invariant refinements.
pub fn realizable_boundary_data(t: KleinType) -> BoundaryEnumeration {
    assert!(t.g <= 12, "enumeration is 4^g; keep g small");
    let p = crate::klein::pic_torus(t);
    let iota = &p.surface.iota_star;
    let circles = &p.surface.circle_classes;

    let mut all: Vec<(Vec<u8>, u64)> = Vec::new();
    let mut inv: Vec<(Vec<u8>, u64)> = Vec::new();
    let bump = |store: &mut Vec<(Vec<u8>, u64)>, key: Vec<u8>| match store
        .binary_search_by(|(k, _)| k.cmp(&key))
    {
        Ok(i) => store[i].1 += 1,
        Err(i) => store.insert(i, (key, 1)),
    };
    for mask in 0u64..(1u64 << (2 * t.g)) {
        let q = QuadraticRefinement::from_mask(t.g, mask);
        let boundary: Vec<u8> = circles.iter().map(|c| q.eval_int(c)).collect();
        bump(&mut all, boundary.clone());
        if q.is_involution_invariant(iota) {
            bump(&mut inv, boundary);
        }
    }

    let effectiveness_exclusion = (t.a == 0).then(|| vec![0u8; t.r]);
    BoundaryEnumeration {
        klein: t,
        all,
        invariant: inv,
        effectiveness_exclusion,
    }
}

/// Number of Real theta characteristics on each connected component of
/// the real locus of `Pic^{g−1}`: `2^g`.
pub fn theta_chars_per_component(g: usize) -> u64 {
    1u64 << g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klein::{pic_torus, poincare_dual};
    use crate::sampling::Sampler;
    use crate::torus::sw_function;
    use num_traits::Zero;

    #[test]
    fn eval_q_small_cases() {
        // η = 0 ↦ 0.
        let q = QuadraticRefinement::new(1, vec![0, 0]);
        assert_eq!(q.eval(&[0, 0]), 0);
        // g=1, q(a₁)=q(b₁)=0: q(a₁+b₁) = a₁·b₁ = 1.
        assert_eq!(q.eval(&[1, 1]), 1);
        // g=2, all basis values 1: q(a₁+a₂) = 1+1+0 = 0.
        let q = QuadraticRefinement::new(2, vec![1, 1, 1, 1]);
        assert_eq!(q.eval(&[1, 1, 0, 0]), 0);
    }

    #[test]
    fn riemann_mumford_relation_randomized() {
        let mut s = Sampler::new(3);
        for g in 1..=4 {
            let q = QuadraticRefinement::from_mask(g, s.next_u64() & ((1 << (2 * g)) - 1));
            for _ in 0..250 {
                let x: Vec<u8> = (0..2 * g).map(|_| (s.next_u64() & 1) as u8).collect();
                let y: Vec<u8> = (0..2 * g).map(|_| (s.next_u64() & 1) as u8).collect();
                let sum: Vec<u8> = x.iter().zip(&y).map(|(a, b)| a ^ b).collect();
                assert_eq!(q.eval(&sum), q.eval(&x) ^ q.eval(&y) ^ q.pairing(&x, &y));
            }
        }
    }

    #[test]
    fn arf_examples_and_census() {
        let q = QuadraticRefinement::new(1, vec![0, 0]);
        assert_eq!(q.arf(), 0);
        let q = QuadraticRefinement::new(1, vec![1, 1]);
        assert_eq!(q.arf(), 1);
        // Census: # refinements with arf = 0 is 2^{g−1}(2^g+1).
        for g in 1..=5 {
            let mut zero = 0u64;
            for mask in 0..(1u64 << (2 * g)) {
                if QuadraticRefinement::from_mask(g, mask).arf() == 0 {
                    zero += 1;
                }
            }
            assert_eq!(zero, arf_zero_count(g), "g = {g}");
        }
    }

    #[test]
    fn arf_invariant_under_symplectic_substitution() {
        // Random mod-2 symplectic transvections generated by
        // x ↦ x + (x·v)v preserve arf.
        let mut s = Sampler::new(9);
        for g in 1..=4 {
            let n = 2 * g;
            let jbar = crate::torus::AltForm::standard_symplectic(g);
            for _ in 0..50 {
                let q = QuadraticRefinement::from_mask(g, s.next_u64() & ((1 << n) - 1));
                // Build the transvection matrix for a random v ≠ 0.
                let mut v: Vec<u8> = (0..n).map(|_| (s.next_u64() & 1) as u8).collect();
                if v.iter().all(|&b| b == 0) {
                    v[0] = 1;
                }
                let vv: Vec<BigInt> = v.iter().map(|&b| BigInt::from(b)).collect();
                let phi = IntMat::from_fn(n, n, |i, j| {
                    let mut e = vec![BigInt::from(0); n];
                    e[j] = BigInt::one();
                    let pair = jbar.eval(&e, &vv).mod_floor(&BigInt::from(2));
                    let add = if pair.is_one() { v[i] } else { 0 };
                    BigInt::from(i64::from((i == j) as u8 ^ add))
                });
                // A transvection is symplectic mod 2; the pulled-back
                // refinement has the same Arf invariant.
                assert_eq!(q.pullback(&phi).arf(), q.arf());
            }
        }
    }

    #[test]
    fn chi_is_cup_character_with_signs() {
        let p = pic_torus(KleinType::new(1, 2, 0).unwrap());
        // q ≡ 0 on basis: χ = +1 on every dual.
        let q0 = QuadraticRefinement::new(1, vec![0, 0]);
        let chi = chi_from_q(&p, &q0);
        let a1_pd = poincare_dual(&p.surface, &[BigInt::one(), BigInt::from(0)]);
        assert!(chi.eval(&a1_pd).is_integer());
        assert_eq!(
            chi.eval(&a1_pd).to_integer().mod_floor(&BigInt::from(2)),
            BigInt::from(0)
        );
        // q(a₁) = 1: χ(PD(a₁)) = −1.
        let q1 = QuadraticRefinement::new(1, vec![1, 0]);
        let chi = chi_from_q(&p, &q1);
        assert_eq!(
            chi.eval(&a1_pd).to_integer().mod_floor(&BigInt::from(2)),
            BigInt::one()
        );
        // Character law χ(λ+λ') = χ(λ)χ(λ')(−1)^{u_C(λ,λ')} on random pairs.
        let mut s = Sampler::new(17);
        for t in [
            KleinType::new(2, 3, 0).unwrap(),
            KleinType::new(3, 2, 1).unwrap(),
        ] {
            let p = pic_torus(t);
            let q = QuadraticRefinement::from_mask(t.g, s.next_u64() & ((1 << (2 * t.g)) - 1));
            let chi = chi_from_q(&p, &q);
            for _ in 0..100 {
                let x = s.int_vector(p.rank(), 3);
                let y = s.int_vector(p.rank(), 3);
                let sum: Vec<BigInt> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
                let lhs = chi.eval(&sum);
                let rhs = chi.eval(&x)
                    + chi.eval(&y)
                    + num_rational::BigRational::from_integer(p.cup_form.eval(&x, &y));
                let diff = lhs - rhs;
                assert!(diff.is_integer());
                assert!(diff.to_integer().mod_floor(&BigInt::from(2)).is_zero());
                // Values stay in ±1: angles are integers.
                assert!(chi.eval(&x).is_integer());
            }
        }
    }

    #[test]
    fn theta_class_boundary_roundtrip() {
        // (1,2,0) with q([C₁]) = 1: w₀([C₁]^∨) = 1.
        let p = pic_torus(KleinType::new(1, 2, 0).unwrap());
        let q = QuadraticRefinement::new(1, vec![1, 0]);
        let cls = theta_class_from_q(&p, &q).unwrap();
        assert_eq!(cls.w0_value(&p.circle_duals[0]).unwrap(), 1);
        // Round trip: sw_function at T₀ returns q([Cᵢ]) on each dual.
        let sw = sw_function(&cls);
        for (cd, circle) in p.circle_duals.iter().zip(&p.surface.circle_classes) {
            assert_eq!(sw.value(0, cd).unwrap(), q.eval_int(circle));
        }
        // w₀(λ − ι*λ) = ⟨λ, ι*λ⟩ mod 2 for random λ; with τ = −ι* the
        // vector λ − ι*λ is λ + τλ ∈ (id+τ)Λ ⊂ Λ^τ.
        let mut s = Sampler::new(23);
        for t in [
            KleinType::new(2, 3, 0).unwrap(),
            KleinType::new(3, 2, 1).unwrap(),
        ] {
            let p = pic_torus(t);
            let q = QuadraticRefinement::from_mask(t.g, s.next_u64() & ((1 << (2 * t.g)) - 1));
            let cls = theta_class_from_q(&p, &q).unwrap();
            for _ in 0..50 {
                let lam = s.int_vector(p.rank(), 3);
                let tl = p.lattice.apply_tau(&lam);
                let plus: Vec<BigInt> = lam.iter().zip(&tl).map(|(a, b)| a + b).collect();
                let pairing = p.cup_form.eval(&lam, &tl).mod_floor(&BigInt::from(2));
                let got = cls.w0_value(&plus).unwrap();
                assert_eq!(i64::from(got), i64::from(pairing.is_one()));
            }
        }
    }

    #[test]
    fn point_theta_class_values() {
        // (1,2,0), p₀ ∈ C₁: w₀([C₁]^∨) = g mod 2 = 1, and 1 on [C₂]^∨.
        let p = pic_torus(KleinType::new(1, 2, 0).unwrap());
        let cls = theta_class_for_point(&p, 1).unwrap();
        assert_eq!(cls.w0_value(&p.circle_duals[0]).unwrap(), 1);
        assert_eq!(cls.w0_value(&p.circle_duals[1]).unwrap(), 1);
        // g even: value 0 on the base circle, 1 elsewhere.
        let p = pic_torus(KleinType::new(2, 3, 0).unwrap());
        let cls = theta_class_for_point(&p, 2).unwrap();
        assert_eq!(cls.w0_value(&p.circle_duals[1]).unwrap(), 0);
        assert_eq!(cls.w0_value(&p.circle_duals[0]).unwrap(), 1);
        assert_eq!(cls.w0_value(&p.circle_duals[2]).unwrap(), 1);
        // Boundary parity matches a degree-(g−1) class: Σ ≡ g−1+r... the
        // w-vector (value+1 per circle) must sum to g−1 mod 2.
        for t in [
            KleinType::new(2, 3, 0).unwrap(),
            KleinType::new(3, 2, 1).unwrap(),
        ] {
            let p = pic_torus(t);
            for i0 in 1..=t.r {
                let cls = theta_class_for_point(&p, i0).unwrap();
                let wsum: u32 = p
                    .circle_duals
                    .iter()
                    .map(|cd| u32::from(cls.w0_value(cd).unwrap() ^ 1))
                    .sum();
                assert_eq!(wsum % 2, ((t.g as u32) + 1) % 2, "{t:?} i0={i0}");
            }
        }
    }

    #[test]
    fn boundary_enumeration_small() {
        // (1,2,0): realized q-vectors {(0,0),(1,1)}, each ×2; in w-terms
        // {(1,1),(0,0)}, parity g−1 = 0.
        let e = realizable_boundary_data(KleinType::new(1, 2, 0).unwrap());
        assert_eq!(e.all, vec![(vec![0, 0], 2), (vec![1, 1], 2)]);
        let mut w: Vec<Vec<u8>> = e.realized_w_all();
        w.sort();
        assert_eq!(w, vec![vec![0, 0], vec![1, 1]]);
        // Invariant sub-enumeration agrees here (every refinement is
        // invariant at (1,2,0)).
        assert_eq!(e.invariant, e.all);
    }

    #[test]
    fn theta_solver_succeeds_on_all_small_types() {
        // The boundary system is determined and solvable for every
        // admissible type, every base circle, and every refinement mask.
        let mut s = Sampler::new(41);
        for t in KleinType::enumerate(6) {
            if t.g == 0 {
                continue;
            }
            let p = pic_torus(t);
            for i0 in 1..=t.r {
                let cls = theta_class_for_point(&p, i0).unwrap();
                for (i, cd) in p.circle_duals.iter().enumerate() {
                    let want = if i + 1 == i0 { (t.g % 2) as u8 } else { 1 };
                    assert_eq!(cls.w0_value(cd).unwrap(), want, "{t:?} i0={i0}");
                }
            }
            // The determinant-index alias agrees with the direct map
            // (including on inconsistent boundaries).
            {
                let q = QuadraticRefinement::from_mask(t.g, 0);
                assert_eq!(spin_class(&p, &q), theta_class_from_q(&p, &q));
            }
            // Valid refinements (boundary parity q([C^ι]) = s mod 2, the
            // constraint forced by Σ[Cᵢ]^∨ ∈ (id+τ)Λ) always solve;
            // parity violators are rejected as inconsistent.
            let s_par = (t.comessatti_s() % 2) as u8;
            for _ in 0..6 {
                let mask = s.next_u64() & ((1u64 << (2 * t.g)) - 1);
                let q = QuadraticRefinement::from_mask(t.g, mask);
                let parity = p
                    .surface
                    .circle_classes
                    .iter()
                    .fold(0u8, |acc, c| acc ^ q.eval_int(c));
                match theta_class_from_q(&p, &q) {
                    Ok(cls) => {
                        assert_eq!(parity, s_par, "{t:?}");
                        for (cd, circle) in p.circle_duals.iter().zip(&p.surface.circle_classes) {
                            assert_eq!(cls.w0_value(cd).unwrap(), q.eval_int(circle), "{t:?}");
                        }
                    }
                    Err(Error::InconsistentSystem) => assert_ne!(parity, s_par, "{t:?}"),
                    Err(e) => panic!("{t:?}: unexpected error {e}"),
                }
            }
        }
    }

    #[test]
    fn theta_char_counts() {
        assert_eq!(theta_chars_per_component(0), 1);
        assert_eq!(theta_chars_per_component(1), 2);
        // Total invariant refinements = 2^g · 2^{r−1}.
        for t in [
            KleinType::new(2, 1, 1).unwrap(),
            KleinType::new(2, 3, 0).unwrap(),
            KleinType::new(3, 2, 1).unwrap(),
            KleinType::new(3, 4, 0).unwrap(),
        ] {
            let e = realizable_boundary_data(t);
            let total: u64 = e.invariant.iter().map(|(_, m)| m).sum();
            assert_eq!(
                total,
                theta_chars_per_component(t.g) * (1u64 << (t.r - 1)),
                "{t:?}"
            );
        }
    }
}

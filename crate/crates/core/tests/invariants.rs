//! Cross-module invariants: Comessatti counts against Tate ranks,
//! obstruction vanishing, classification round trips, and the numeric
//! holonomy bridge on randomized data.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use real_tori::exact::{smith_normal_form, IntMat};
use real_tori::holonomy::{
    loop_holonomy, loop_holonomy_transport, segment_holonomy, FactorOfAutomorphy, TransportMode,
    TOL_EXACT_BRIDGE, TOL_IDENTITY, TOL_MODE_AGREEMENT,
};
use real_tori::sampling::Sampler;
use real_tori::torus::{
    class_from_real_character, comessatti_basis, f_u, obstruction_class, obstruction_class_for,
    real_character_components, sw_function, UCharacter,
};

proptest! {
    #[test]
    fn snf_contract_on_random_matrices(
        rows in 1usize..=6,
        cols in 1usize..=6,
        seed in any::<u64>(),
    ) {
        let mut s = Sampler::new(seed);
        let entries: Vec<i64> = (0..rows * cols).map(|_| s.int_in(-9, 9)).collect();
        let a = IntMat::from_fn(rows, cols, |i, j| BigInt::from(entries[i * cols + j]));
        let snf = smith_normal_form(&a);
        prop_assert_eq!(&(&snf.left * &a) * &snf.right, snf.diag.clone());
        let d = snf.diagonal();
        for i in 0..d.len() {
            prop_assert!(d[i] >= BigInt::from(0));
            if i + 1 < d.len() && d[i + 1] != BigInt::from(0) {
                prop_assert!(d[i] != BigInt::from(0));
                prop_assert_eq!(&d[i + 1] % &d[i], BigInt::from(0));
            }
        }
        // Unimodularity through the SNF of the transforms themselves.
        for m in [&snf.left, &snf.right] {
            let s2 = smith_normal_form(m);
            prop_assert!(s2.diag.is_identity());
        }
    }
}

#[test]
fn comessatti_verifies_on_random_involutions() {
    let mut s = Sampler::new(101);
    for trial in 0..1000 {
        let n = 1 + (trial % 8);
        let lat = s.involution(n);
        let cb = comessatti_basis(&lat);
        assert!(cb.verify(&lat), "trial {trial}");
        // Tate ranks vs Comessatti counts.
        let h1 = lat.components_group().rank();
        assert_eq!(h1, n - cb.a - cb.s, "trial {trial}");
        let h2 = real_tori::exact::tate_h2(lat.tau()).unwrap().rank();
        assert_eq!(h2, cb.a - cb.s, "trial {trial}");
    }
}

#[test]
fn real_component_count_matches_comessatti() {
    let mut s = Sampler::new(103);
    for trial in 0..200 {
        let n = 1 + (trial % 6);
        let lat = s.involution(n);
        let u = s.anti_invariant_form(&lat, 3);
        let cb = comessatti_basis(&lat);
        let (count, reps) = real_character_components(&lat, &u).unwrap();
        assert_eq!(count, 1u64 << (cb.a - cb.s));
        assert_eq!(reps.len() as u64, count);
        for r in &reps {
            assert!(r.is_real(&lat));
        }
    }
}

#[test]
fn obstruction_vanishes_randomized() {
    let mut s = Sampler::new(107);
    for trial in 0..300 {
        let n = 1 + (trial % 8);
        let lat = s.involution(n);
        let u = s.anti_invariant_form(&lat, 4);
        let cls = obstruction_class(&lat, &u).unwrap();
        assert!(cls.iter().all(|&b| b == 0), "trial {trial}");
        // Independent of the chosen character.
        let angles: Vec<_> = (0..n)
            .map(|_| num_rational::BigRational::new(BigInt::from(s.int_in(-7, 7)), BigInt::from(4)))
            .collect();
        let alpha = UCharacter::new(u.clone(), angles);
        let cls = obstruction_class_for(&lat, &u, &alpha).unwrap();
        assert!(
            cls.iter().all(|&b| b == 0),
            "trial {trial} (random character)"
        );
    }
}

#[test]
fn classification_round_trip_and_closure() {
    let mut s = Sampler::new(109);
    for trial in 0..150 {
        let n = 1 + (trial % 6);
        let lat = s.involution(n);
        let u = s.anti_invariant_form(&lat, 3);
        let (_, reps) = real_character_components(&lat, &u).unwrap();

        // Distinct components give pairwise distinct classes (injectivity
        // surrogate), all with the same Chern form.
        let classes: Vec<_> = reps
            .iter()
            .map(|a| class_from_real_character(&lat, a).unwrap())
            .collect();
        for i in 0..classes.len() {
            for j in (i + 1)..classes.len() {
                assert_ne!(classes[i].w0_bits(), classes[j].w0_bits(), "trial {trial}");
            }
        }

        for cls in &classes {
            let sw = sw_function(cls);
            let comps = lat.fixed_components();
            // Every component row restricts to f_u on the (id+τ)eᵢ
            // generators.
            let id = IntMat::identity(n);
            let norm = &id + lat.tau();
            for c in 0..comps.len() {
                for jcol in 0..n {
                    let gen = norm.column(jcol);
                    assert_eq!(
                        sw.value(c, &gen).unwrap(),
                        f_u(&lat, &u, &gen).unwrap(),
                        "trial {trial}"
                    );
                }
            }
            // Difference-formula closure:
            // w([μ]) + w([μ']) + w([μ+μ']) + w(0) = 0.
            if comps.len() >= 4 {
                let k = comps[0].bits.len();
                let mu1 = &comps[1];
                let mu2 = &comps[2];
                let sum_bits: Vec<u8> =
                    mu1.bits.iter().zip(&mu2.bits).map(|(a, b)| a ^ b).collect();
                let idx_sum = comps.iter().position(|c| c.bits == sum_bits).unwrap();
                let _ = k;
                for bcol in 0..sw.fixed_basis().cols() {
                    let total =
                        sw.row(1)[bcol] ^ sw.row(2)[bcol] ^ sw.row(idx_sum)[bcol] ^ sw.row(0)[bcol];
                    assert_eq!(total, 0, "trial {trial}");
                }
            }
        }
    }
}

#[test]
fn holonomy_bridge_small_battery() {
    // exp(πi · exact-sw-value) must match the numeric loop holonomy.
    let mut s = Sampler::new(113);
    let mut done = 0;
    let mut trial = 0;
    while done < 60 {
        trial += 1;
        let n = 1 + (trial % 5);
        let lat = s.involution(n);
        let u = s.anti_invariant_form(&lat, 3);
        let (_, reps) = real_character_components(&lat, &u).unwrap();
        let alpha = &reps[s.below(reps.len() as u64) as usize];
        let cls = class_from_real_character(&lat, alpha).unwrap();
        let sw = sw_function(&cls);
        let comps = lat.fixed_components();
        if sw.fixed_basis().cols() == 0 {
            continue;
        }
        let lam = s.fixed_vector(&lat, 2);
        let cidx = s.below(comps.len() as u64) as usize;
        let exact = sw.value(cidx, &lam).unwrap();
        let expected = Complex64::new(if exact == 0 { 1.0 } else { -1.0 }, 0.0);

        let f = FactorOfAutomorphy::new(alpha.clone());
        let mu: Vec<f64> = comps[cidx]
            .doubled
            .iter()
            .map(|x| x.to_f64().unwrap() / 2.0)
            .collect();
        // Keep the transport phase inside the fixed-step integrator's
        // resolution envelope.
        let lamf: Vec<f64> = lam.iter().map(|x| x.to_f64().unwrap()).collect();
        if f.connection().eval(&mu, &lamf).abs() > 20.0 {
            continue;
        }
        let numeric = loop_holonomy(&f, &mu, &lam);
        assert!(
            (numeric - expected).norm() < TOL_EXACT_BRIDGE,
            "trial {trial}: exact {exact} vs numeric {numeric}"
        );
        let transported = loop_holonomy_transport(&f, &mu, &lam, TransportMode::Ode);
        assert!((numeric - transported).norm() < TOL_MODE_AGREEMENT);
        done += 1;
    }
}

#[test]
fn ode_and_closed_form_agree_randomized() {
    let mut s = Sampler::new(127);
    let mut done = 0;
    while done < 200 {
        let n = 1 + s.below(4) as usize;
        let lat = s.involution(n);
        let u = s.anti_invariant_form(&lat, 4);
        let c = real_tori::holonomy::ConnectionAu::from_form(&u);
        let v0: Vec<f64> = (0..n).map(|_| s.float_in(-2.0, 2.0)).collect();
        let w: Vec<f64> = (0..n).map(|_| s.float_in(-2.0, 2.0)).collect();
        // Same envelope constraint as above.
        if c.eval(&v0, &w).abs() > 20.0 {
            continue;
        }
        let a = segment_holonomy(&c, &v0, &w, TransportMode::ClosedForm);
        let b = segment_holonomy(&c, &v0, &w, TransportMode::Ode);
        assert!((a.norm() - 1.0).abs() < TOL_IDENTITY);
        assert!((b.norm() - 1.0).abs() < TOL_IDENTITY);
        assert!((a - b).norm() < TOL_MODE_AGREEMENT);
        done += 1;
    }
}

#[test]
fn genus_one_picard_loop_holonomy_values() {
    // Separating genus-1 Picard torus: the point-theta class has
    // w(T0)([C1]^dual) = 1, so the numeric loop holonomy at the base
    // component must be -1, and +1 after shifting to the other component.
    use real_tori::klein::{pic_torus, KleinType};
    use real_tori::theta::theta_class_for_point;

    let p = pic_torus(KleinType::new(1, 2, 0).unwrap());
    let cls = theta_class_for_point(&p, 1).unwrap();
    let sw = sw_function(&cls);
    let c1_dual = &p.circle_duals[0];

    // Pick the Real-character component whose class matches the theta
    // class, then drive the numeric oracle with it.
    let (_, reps) = real_character_components(&p.lattice, &p.cup_form).unwrap();
    let alpha = reps
        .iter()
        .find(|a| class_from_real_character(&p.lattice, a).unwrap().w0_bits() == cls.w0_bits())
        .expect("theta class lies in the image of the character components");
    let f = FactorOfAutomorphy::new(alpha.clone());
    let comps = p.lattice.fixed_components();

    for (idx, comp) in comps.iter().enumerate() {
        let mu: Vec<f64> = comp
            .doubled
            .iter()
            .map(|x| x.to_f64().unwrap() / 2.0)
            .collect();
        let numeric = loop_holonomy(&f, &mu, c1_dual);
        let exact = sw.value(idx, c1_dual).unwrap();
        let expected = Complex64::new(if exact == 0 { 1.0 } else { -1.0 }, 0.0);
        assert!((numeric - expected).norm() < TOL_EXACT_BRIDGE);
    }
    assert_eq!(sw.value(0, c1_dual).unwrap(), 1);
    assert_eq!(sw.value(1, c1_dual).unwrap(), 0);
}

#[test]
fn character_relation_is_expansion_order_independent() {
    // The defining relation q(l+l') = q(l) + q(l') + u(l,l') mod 2 holds
    // for arbitrary integer vectors, which pins the evaluation
    // independently of how the argument is expanded in the basis.
    use num_rational::BigRational;
    let mut s = Sampler::new(131);
    for trial in 0..200 {
        let n = 1 + (trial % 6);
        let lat = s.involution(n);
        let u = s.anti_invariant_form(&lat, 4);
        let angles: Vec<BigRational> = (0..n)
            .map(|_| {
                BigRational::new(
                    BigInt::from(s.int_in(-9, 9)),
                    BigInt::from(1 + s.below(5) as i64),
                )
            })
            .collect();
        let alpha = UCharacter::new(u.clone(), angles);
        let x = s.int_vector(n, 4);
        let y = s.int_vector(n, 4);
        let sum: Vec<BigInt> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = alpha.eval(&sum);
        let rhs = alpha.eval(&x) + alpha.eval(&y) + BigRational::from_integer(u.eval(&x, &y));
        let diff = lhs - rhs;
        assert!(diff.is_integer());
        assert_eq!(&diff.to_integer() % 2, BigInt::from(0), "trial {trial}");
    }
}

#[test]
fn curved_cap_matches_cone_cap_flux() {
    // The flux through any cap depends only on the boundary loop (the
    // curvature form is exact on the covering space), so a curved
    // reparameterization of the cone must give the same residual.
    use real_tori::holonomy::{holonomy_formula_check, Cap, ConeCap, ConnectionAu};

    struct CurvedCap {
        cone: ConeCap,
    }
    impl Cap for CurvedCap {
        fn eval(&self, s: f64, t: f64) -> Vec<f64> {
            self.cone.eval(s, t * t * (3.0 - 2.0 * t))
        }
    }

    let c = ConnectionAu::from_rows(&[&[0, 2], &[-2, 0]]).unwrap();
    let square = vec![
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![1.0, 1.0],
        vec![0.0, 1.0],
    ];
    let curved = CurvedCap {
        cone: ConeCap::new(square.clone()),
    };
    // Midpoint quadrature is exact on the affine cone but second order on
    // curved caps: check the residual level and its O(h^2) decay.
    let coarse = holonomy_formula_check(&c, &square, &curved, 10_000).unwrap();
    let fine = holonomy_formula_check(&c, &square, &curved, 160_000).unwrap();
    assert!(coarse < 1e-3, "curved cap coarse residual {coarse}");
    assert!(
        fine < coarse / 8.0,
        "no quadratic decay: {coarse} -> {fine}"
    );
}

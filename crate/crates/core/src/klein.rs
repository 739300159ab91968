//! Topological Klein surfaces of type `(g, r, a)`: the adapted symplectic
//! bases for the induced involution on homology, the derived Real Picard
//! torus, and the curve-level classification of Real line bundles by
//! `(degree, boundary restrictions)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{kernel_basis, lattice_solve, smith_normal_form, IntMat};
use crate::torus::{AltForm, LatticeInvolution};
use crate::{Error, Result};

/// Topological type of a Klein surface: genus `g`, number `r` of fixed
/// circles, orientability obstruction `a` of the quotient.
///
/// Admissibility: `r ≥ 1`, `s := g + 1 − r ≥ 0`; for `a = 0` the
/// Comessatti characteristic `s` must be even, for `a = 1` one needs
/// `r ≤ g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KleinType {
    pub g: usize,
    pub r: usize,
    pub a: u8,
}

impl KleinType {
    pub fn new(g: usize, r: usize, a: u8) -> Result<Self> {
        if a > 1 {
            return Err(Error::InvalidKleinType(format!(
                "a must be 0 or 1, got {a}"
            )));
        }
        if r == 0 {
            return Err(Error::InvalidKleinType(
                "need at least one fixed circle (r >= 1)".into(),
            ));
        }
        if r > g + 1 {
            return Err(Error::InvalidKleinType(format!(
                "r = {r} exceeds g + 1 = {}",
                g + 1
            )));
        }
        let s = g + 1 - r;
        if a == 0 && !s.is_multiple_of(2) {
            return Err(Error::InvalidKleinType(format!(
                "orientable quotient needs even Comessatti characteristic, got s = {s}"
            )));
        }
        if a == 1 && r > g {
            return Err(Error::InvalidKleinType(format!(
                "non-orientable quotient needs r <= g, got r = {r}, g = {g}"
            )));
        }
        Ok(KleinType { g, r, a })
    }

    /// Comessatti characteristic `s = g + 1 − r`.
    pub fn comessatti_s(&self) -> usize {
        self.g + 1 - self.r
    }

    /// All admissible types with genus at most `gmax`.
    pub fn enumerate(gmax: usize) -> Vec<KleinType> {
        let mut out = Vec::new();
        for g in 0..=gmax {
            for r in 1..=(g + 1) {
                for a in 0..=1u8 {
                    if let Ok(t) = KleinType::new(g, r, a) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }
}

/// The adapted symplectic basis `(a₁…a_g, b₁…b_g)` of `H₁(C, ℤ)` with the
/// matrix of `ι_*`, the intersection form, and the circle classes
/// `[C₁]…[C_r]`.
#[derive(Clone, Debug)]
pub struct SurfaceBasis {
    pub genus: usize,
    /// 2g×2g matrix of `ι_*` (columns are images of basis vectors).
    pub iota_star: IntMat,
    /// Standard symplectic intersection matrix `J`.
    pub intersection: IntMat,
    /// `[Cᵢ]` in the `(a, b)` coordinates.
    pub circle_classes: Vec<Vec<BigInt>>,
}

impl SurfaceBasis {
    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    /// `x · y` via the intersection matrix.
    pub fn intersect(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.intersection.pair(x, y)
    }

    /// `ι_*² = id`, `ι_*ᵀ·J·ι_* = −J`, circles invariant and pairwise
    /// disjoint in homology.
    pub fn verify(&self) -> bool {
        let n = self.rank();
        let iota = &self.iota_star;
        if iota.rows() != n || !(iota * iota).is_identity() {
            return false;
        }
        if &(&iota.transpose() * &self.intersection) * iota != -&self.intersection {
            return false;
        }
        for v in &self.circle_classes {
            if iota.apply(v) != *v {
                return false;
            }
        }
        for x in &self.circle_classes {
            for y in &self.circle_classes {
                if !self.intersect(x, y).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds the adapted basis for a topological type.
///
/// Case `a = 1`: `ι_*aᵢ = aᵢ`, `ι_*bⱼ = −bⱼ − Σᵢ aᵢ` for `j ≤ r` and
/// `ι_*bⱼ = −bⱼ − aⱼ − Σᵢ aᵢ` for `j > r`; the circles are `a₁…a_r`.
///
/// Case `a = 0` with `k = s/2`: `ι_*aᵢ = aᵢ`, `ι_*bᵢ = −bᵢ` for
/// `i ≤ r−1`, and the remaining b's pair up as
/// `ι_*b_{r−1+j} = a_{r−1+k+j} − b_{r−1+j}`,
/// `ι_*b_{r−1+k+j} = a_{r−1+j} − b_{r−1+k+j}`; the circles are
/// `a₁…a_{r−1}` together with `−(a₁+…+a_{r−1})`.
pub fn build_surface_basis(t: KleinType) -> SurfaceBasis {
    let g = t.g;
    let n = 2 * g;
    let mut iota = IntMat::zero(n, n);
    // a-block: always fixed.
    for i in 0..g {
        iota[(i, i)] = BigInt::one();
    }
    if t.a == 1 {
        for j in 0..g {
            // Column g + j is the image of b_{j+1}.
            iota[(g + j, g + j)] = -BigInt::one();
            for i in 0..g {
                iota[(i, g + j)] -= BigInt::one();
            }
            if j >= t.r {
                iota[(j, g + j)] -= BigInt::one();
            }
        }
    } else {
        let k = t.comessatti_s() / 2;
        let m = t.r - 1;
        for j in 0..g {
            iota[(g + j, g + j)] = -BigInt::one();
        }
        for j in 0..k {
            // b_{m+j+1} picks up a_{m+k+j+1} and vice versa.
            iota[(m + k + j, g + m + j)] = BigInt::one();
            iota[(m + j, g + m + k + j)] = BigInt::one();
        }
    }

    let intersection = AltForm::standard_symplectic(g).matrix().clone();

    let mut circles = Vec::with_capacity(t.r);
    if t.a == 1 {
        for i in 0..t.r {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::one();
            circles.push(v);
        }
    } else {
        for i in 0..t.r - 1 {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::one();
            circles.push(v);
        }
        // Last circle: the classes sum to zero once suitably oriented.
        let mut v = vec![BigInt::zero(); n];
        for it in v.iter_mut().take(t.r - 1) {
            *it = -BigInt::one();
        }
        circles.push(v);
    }

    let sb = SurfaceBasis {
        genus: g,
        iota_star: iota,
        intersection,
        circle_classes: circles,
    };
    assert!(sb.verify(), "adapted basis failed verification for {t:?}");
    sb
}

/// The Real Picard torus of a Klein surface: the lattice `H¹(C, ℤ)` in
/// dual coordinates with involution `τ = −ι*`, the cup form, and the
/// Poincaré duals of the circle classes.
#[derive(Clone, Debug)]
pub struct PicTorusData {
    pub klein: KleinType,
    pub surface: SurfaceBasis,
    pub lattice: LatticeInvolution,
    /// Cup form on `H¹` in dual coordinates; equals the intersection
    /// matrix under Poincaré duality.
    pub cup_form: AltForm,
    /// `[Cᵢ]^∨ = PD([Cᵢ]) ∈ H¹(C, ℤ)`, coordinates `Jᵀ·[Cᵢ]`.
    pub circle_duals: Vec<Vec<BigInt>>,
}

impl PicTorusData {
    pub fn rank(&self) -> usize {
        2 * self.klein.g
    }

    /// Number of connected components of the real locus: `2^{r−1}`.
    pub fn expected_components(&self) -> u64 {
        1u64 << (self.klein.r - 1)
    }
}

/// Poincaré dual of a homology class: the functional `y ↦ x·y`, with
/// coordinates `Jᵀ·x` in the dual basis.
pub fn poincare_dual(sb: &SurfaceBasis, x: &[BigInt]) -> Vec<BigInt> {
    sb.intersection.transpose().apply(x)
}

/// Mod-2 cap product `H¹ → H₁(C, ℤ₂)`: the inverse of Poincaré duality,
/// `λ ↦ J·λ (mod 2)`.
pub fn cap_mod2(sb: &SurfaceBasis, lam: &[BigInt]) -> Vec<u8> {
    sb.intersection
        .apply(lam)
        .iter()
        .map(|x| (x.mod_floor(&BigInt::from(2)) == BigInt::one()) as u8)
        .collect()
}

/// Derives the Picard torus data from a topological type.
pub fn pic_torus(t: KleinType) -> PicTorusData {
    let surface = build_surface_basis(t);
    let tau = -&surface.iota_star.transpose();
    let lattice = LatticeInvolution::new(tau).expect("-iota* is an involution");
    let cup_form = AltForm::new(surface.intersection.clone()).expect("J is alternating");
    assert!(
        cup_form.is_anti_invariant(&lattice),
        "cup form must be anti-invariant"
    );
    let circle_duals = surface
        .circle_classes
        .iter()
        .map(|v| poincare_dual(&surface, v))
        .collect::<Vec<_>>();
    // Circle duals are τ-fixed.
    for cd in &circle_duals {
        debug_assert_eq!(lattice.apply_tau(cd), *cd);
    }
    PicTorusData {
        klein: t,
        surface,
        lattice,
        cup_form,
        circle_duals,
    }
}

/// A Real line bundle class on the curve itself: degree plus the
/// restriction of `w₁` to each fixed circle, subject to the parity law
/// `Σᵢ wᵢ ≡ d (mod 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveBundleClass {
    pub degree: i64,
    pub w: Vec<u8>,
}

/// Accepts exactly the pairs satisfying the fiber-product parity law.
pub fn validate_curve_class(t: KleinType, degree: i64, w: &[u8]) -> Result<CurveBundleClass> {
    if w.len() != t.r {
        return Err(Error::DimensionMismatch(format!(
            "need one boundary class per circle ({}), got {}",
            t.r,
            w.len()
        )));
    }
    let sum: i64 = w.iter().map(|&b| i64::from(b & 1)).sum();
    if (sum - degree).rem_euclid(2) != 0 {
        return Err(Error::DegreeParityViolation);
    }
    Ok(CurveBundleClass {
        degree,
        w: w.iter().map(|b| b & 1).collect(),
    })
}

/// Number of admissible boundary vectors for a fixed degree: `2^{r−1}`.
pub fn admissible_boundary_count(t: KleinType) -> u64 {
    1u64 << (t.r - 1)
}

/// One named check of the circle-class lattice relations.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: &'static str,
    pub passed: bool,
}

/// Verifies, in the explicit adapted basis, the lattice relations between
/// the circle classes, the trivial invariants `(id+ι_*)H₁`, and the full
/// invariant sublattice `H₁^{ι_*}`:
///
/// 1. `⟨v₁…v_r⟩ + (id+ι_*)H₁ = H₁^{ι_*}` (surjectivity);
/// 2. for `a = 0`: `Σ vᵢ = 0` and
///    `⟨v₁…v_r⟩ ∩ (id+ι_*)H₁ = ⟨2v₁…2v_r⟩`;
/// 3. for `a = 1`: the `vᵢ` are independent, `Σ vᵢ = x + ι_*x` is
///    solvable, and `x·ι_*x ≡ s (mod 2)`.
pub fn verify_circle_lattice_relations(t: KleinType) -> Vec<RelationCheck> {
    let sb = build_surface_basis(t);
    let n = sb.rank();
    let id = IntMat::identity(n);
    let norm = &id + &sb.iota_star; // (id + ι_*)
    let circles_mat = IntMat::from_fn(n, t.r, |i, j| sb.circle_classes[j][i].clone());

    let mut checks = Vec::new();

    // (1) Surjectivity onto the invariant sublattice.
    let fixed = kernel_basis(&(&id - &sb.iota_star));
    let stacked = circles_mat.hstack(&norm);
    let surjective = (0..fixed.cols()).all(|j| lattice_solve(&stacked, &fixed.column(j)).is_some());
    checks.push(RelationCheck {
        name: "circles-plus-norms-generate-invariants",
        passed: surjective,
    });

    if t.a == 0 {
        let sum_zero = {
            let mut acc = vec![BigInt::zero(); n];
            for v in &sb.circle_classes {
                for (a, b) in acc.iter_mut().zip(v) {
                    *a += b;
                }
            }
            acc.iter().all(Zero::is_zero)
        };
        checks.push(RelationCheck {
            name: "circle-classes-sum-to-zero",
            passed: sum_zero,
        });

        let doubled = IntMat::from_fn(n, t.r, |i, j| &sb.circle_classes[j][i] * 2);
        let inter = lattice_intersection(&circles_mat, &norm);
        checks.push(RelationCheck {
            name: "circle-span-meets-norms-in-doubles",
            passed: lattices_equal(&inter, &doubled),
        });
    } else {
        let indep = smith_normal_form(&circles_mat).rank == t.r;
        checks.push(RelationCheck {
            name: "circle-classes-independent",
            passed: indep,
        });

        let total: Vec<BigInt> = (0..n)
            .map(|i| sb.circle_classes.iter().map(|v| v[i].clone()).sum())
            .collect();
        let solved = lattice_solve(&norm, &total);
        let passed = match solved {
            Some(x) => {
                let ix = sb.iota_star.apply(&x);
                let parity = sb.intersect(&x, &ix).mod_floor(&BigInt::from(2));
                parity == BigInt::from(t.comessatti_s() % 2)
            }
            None => false,
        };
        checks.push(RelationCheck {
            name: "norm-preimage-self-intersection-parity",
            passed,
        });
    }
    checks
}

/// Generators of `im(A) ∩ im(B)`: images of the kernel of `[A | −B]`.
pub fn lattice_intersection(a: &IntMat, b: &IntMat) -> IntMat {
    let stacked = a.hstack(&-b);
    let ker = kernel_basis(&stacked);
    IntMat::from_fn(a.rows(), ker.cols(), |i, j| {
        let mut acc = BigInt::zero();
        for p in 0..a.cols() {
            acc += &a[(i, p)] * &ker[(p, j)];
        }
        acc
    })
}

/// Column spans agree as sublattices of ℤⁿ (mutual membership).
pub fn lattices_equal(a: &IntMat, b: &IntMat) -> bool {
    (0..b.cols()).all(|j| lattice_solve(a, &b.column(j)).is_some())
        && (0..a.cols()).all(|j| lattice_solve(b, &a.column(j)).is_some())
}

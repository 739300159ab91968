//! Orientability of the real loci of projectivized Quot bundles and
//! symmetric powers: determinant-index classes assembled from the
//! point-translate theta class, restricted per fixed component through
//! the difference formula, combined with the fiber-rank parity.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::klein::{pic_torus, KleinType, PicTorusData};
use crate::theta::theta_class_for_point;
use crate::torus::{sw_function, RealLineBundleClass};
use crate::{Error, Result};

/// Input data of a Quot-bundle orientability problem.
#[derive(Clone, Debug)]
pub struct QuotSetup {
    pub klein: KleinType,
    /// Rank `r₀` of the fixed bundle.
    pub rank0: i64,
    /// Degree `e₀` of the fixed bundle.
    pub degree0: i64,
    /// Upper bound on slopes of subsheaves; an input parameter, not a
    /// computed quantity.
    pub slope_max: BigRational,
    /// Degree `d` of the varying line bundle.
    pub degree: i64,
    /// 1-based index of the circle containing the base point.
    pub p0_circle: usize,
    /// Component of the determinant twist in the real Picard torus;
    /// all-zero bits select the principal case.
    pub det_component: Vec<u8>,
}

impl QuotSetup {
    /// Symmetric-power specialization: trivial fixed bundle of rank 1.
    pub fn symmetric_power(klein: KleinType, degree: i64) -> Self {
        QuotSetup {
            klein,
            rank0: 1,
            degree0: 0,
            slope_max: BigRational::from_integer(BigInt::from(0)),
            degree,
            p0_circle: 1,
            det_component: Vec::new(),
        }
    }

    pub fn slope(&self) -> BigRational {
        BigRational::new(BigInt::from(self.degree0), BigInt::from(self.rank0))
    }

    /// Rank of the real projective-bundle fiber plus one:
    /// `(e₀ + r₀d) + r₀(1−g)`.
    pub fn fiber_rank(&self) -> i64 {
        self.degree0 + self.rank0 * self.degree + self.rank0 * (1 - self.klein.g as i64)
    }
}

/// Which stability bounds hold for the setup.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub passed: bool,
    /// One entry per failed inequality.
    pub failures: Vec<String>,
}

/// Checks both lower bounds on `d`: the vanishing-range bound
/// `d > max(−μ + 2(g−1), μ_max(r₀−1) − μ·r₀ + 2(g−1))` and the stability
/// bound `d > −μ + (g−1) + 1/r₀`, with `μ = e₀/r₀`, all in exact rational
/// arithmetic.
pub fn stability_bound_check(s: &QuotSetup) -> BoundReport {
    let g = BigRational::from_integer(BigInt::from(s.klein.g as i64));
    let d = BigRational::from_integer(BigInt::from(s.degree));
    let mu = s.slope();
    let one = BigRational::from_integer(BigInt::from(1));
    let two = BigRational::from_integer(BigInt::from(2));
    let r0 = BigRational::from_integer(BigInt::from(s.rank0));

    let mut failures = Vec::new();
    let b1 = -&mu + &two * (&g - &one);
    let b2 = &s.slope_max * (&r0 - &one) - &mu * &r0 + &two * (&g - &one);
    let vanishing = if b1 >= b2 { b1 } else { b2 };
    if d <= vanishing {
        failures.push(format!(
            "need d > {vanishing} (higher-cohomology vanishing range)"
        ));
    }
    let stability = -&mu + (&g - &one) + &one / &r0;
    if d <= stability {
        failures.push(format!(
            "need d > {stability} (stability of the quotient family)"
        ));
    }
    BoundReport {
        passed: failures.is_empty(),
        failures,
    }
}

/// The determinant-index class on the Picard torus.
///
/// Principal case (`det_component` zero): the `r₀`-th multiple of the
/// point-translate theta class. General case: `r₀−1` principal copies
/// plus one copy shifted to the determinant component by the difference
/// formula.
pub fn determinant_index_class(s: &QuotSetup, p: &PicTorusData) -> Result<RealLineBundleClass> {
    assert_eq!(
        s.klein, p.klein,
        "setup and torus must share the topological type"
    );
    let base = theta_class_for_point(p, s.p0_circle)?;
    let principal = s.det_component.iter().all(|&b| b == 0);
    if principal {
        return Ok(base.scale(s.rank0));
    }
    let comps = p.lattice.fixed_components();
    let group_rank = comps.first().map_or(0, |c| c.bits.len());
    if s.det_component.len() != group_rank {
        return Err(Error::DimensionMismatch(format!(
            "determinant component needs {group_rank} bits, got {}",
            s.det_component.len()
        )));
    }
    let comp = comps
        .iter()
        .find(|c| c.bits == s.det_component)
        .expect("component enumeration covers all bit vectors");
    let shifted = base.shift_by_component(comp);
    base.scale(s.rank0 - 1).add(&shifted)
}

/// Orientability verdict for one connected component of the real locus.
#[derive(Clone, Debug)]
pub struct ComponentOrientability {
    /// ℤ₂-coordinates of the component in the fixed-locus group.
    pub bits: Vec<u8>,
    pub label: String,
    /// Values of the restricted first Stiefel-Whitney class on the fixed
    /// sublattice basis.
    pub w1: Vec<u8>,
    pub orientable: bool,
}

/// Full orientability report of the real Quot locus over every component
/// of the real Picard torus.
#[derive(Clone, Debug)]
pub struct OrientabilityReport {
    pub fiber_rank: i64,
    pub rows: Vec<ComponentOrientability>,
}

impl OrientabilityReport {
    pub fn component(&self, label: &str) -> Option<&ComponentOrientability> {
        self.rows.iter().find(|r| r.label == label)
    }
}

/// Per-component orientability: a component is orientable iff the fiber
/// rank is even and the restricted Stiefel-Whitney class vanishes.
/// Refuses to answer below the stability bounds, where the criterion is
/// not established.
pub fn orientability_report(s: &QuotSetup, p: &PicTorusData) -> Result<OrientabilityReport> {
    let bounds = stability_bound_check(s);
    if !bounds.passed {
        return Err(Error::BelowStabilityBound(bounds.failures.join("; ")));
    }
    let class = determinant_index_class(s, p)?;
    let sw = sw_function(&class);
    let fiber_rank = s.fiber_rank();
    let even = fiber_rank % 2 == 0;
    let rows = sw
        .components()
        .iter()
        .enumerate()
        .map(|(i, comp)| {
            let w1 = sw.row(i).to_vec();
            let orientable = even && w1.iter().all(|&b| b == 0);
            ComponentOrientability {
                bits: comp.bits.clone(),
                label: comp.label(),
                w1,
                orientable,
            }
        })
        .collect();
    Ok(OrientabilityReport { fiber_rank, rows })
}

/// Orientability of the real locus of the `d`-th symmetric power.
pub fn symmetric_power_report(t: KleinType, degree: i64) -> Result<OrientabilityReport> {
    let s = QuotSetup::symmetric_power(t, degree);
    let p = pic_torus(t);
    orientability_report(&s, &p)
}

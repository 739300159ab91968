//! Real tori `T = V/Λ` with a lattice involution τ: Comessatti normal
//! form, fixed-point components, u-characters, and the classification of
//! τ-Real line bundles by the pair `(u, w₀)`.
//!
//! A class is a pair of an anti-invariant alternating integer form `u`
//! (the Chern datum) and a ℤ₂-functional `w₀` on the fixed sublattice
//! `Λ^τ` restricting to `f_u(λ+τλ) = u(λ,τλ) mod 2` on `(id+τ)Λ`. The
//! Stiefel-Whitney restriction to every other fixed component follows
//! from the difference formula `w([μ]) − w(0) = u(2μ,·) mod 2`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{
    kernel_basis, lattice_solve, smith_normal_form, tate_h1, tate_h2, ElementaryTwoGroup, IntMat,
};
use crate::{Error, Result};

/// A rank-n lattice `Λ = ℤⁿ` with an integral involution τ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInvolution {
    n: usize,
    tau: IntMat,
}

impl LatticeInvolution {
    /// Rejects matrices with `τ² ≠ id`.
    pub fn new(tau: IntMat) -> Result<Self> {
        if tau.rows() != tau.cols() {
            return Err(Error::DimensionMismatch(format!(
                "involution must be square, got {}x{}",
                tau.rows(),
                tau.cols()
            )));
        }
        if !(&tau * &tau).is_identity() {
            return Err(Error::NotInvolution);
        }
        Ok(LatticeInvolution { n: tau.rows(), tau })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMat::from_rows(rows))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> &IntMat {
        &self.tau
    }

    pub fn apply_tau(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.tau.apply(v)
    }

    /// Saturated basis of the fixed sublattice `Λ^τ = ker(id−τ)`, as
    /// columns.
    pub fn fixed_basis(&self) -> IntMat {
        let id = IntMat::identity(self.n);
        kernel_basis(&(&id - &self.tau))
    }

    /// `H¹ = ker(id+τ)/im(id−τ)`, indexing fixed components.
    pub fn components_group(&self) -> ElementaryTwoGroup {
        tate_h1(&self.tau).expect("validated involution")
    }

    /// All fixed components of `T^τ`, the class `[μ=0]` first, the rest in
    /// lexicographic order of their ℤ₂-coordinate vectors.
    pub fn fixed_components(&self) -> Vec<FixedComponent> {
        let group = self.components_group();
        let k = group.rank();
        let mut out = Vec::with_capacity(1 << k);
        for code in 0u64..(1u64 << k) {
            // Lexicographic order on the bit vector: bit 0 is the most
            // significant position.
            let bits: Vec<u8> = (0..k).map(|i| ((code >> (k - 1 - i)) & 1) as u8).collect();
            let doubled = group.rep_from_bits(&bits);
            out.push(FixedComponent { bits, doubled });
        }
        out
    }

    /// Two involutions are equal as classification inputs iff their
    /// matrices agree.
    pub fn same_as(&self, other: &LatticeInvolution) -> bool {
        self.tau == other.tau
    }
}

/// A connected component `T_{[μ]}` of the fixed locus, stored through the
/// doubled representative `2μ ∈ ker(id+τ)` so everything stays integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComponent {
    /// ℤ₂-coordinates of `[μ]` in the component group.
    pub bits: Vec<u8>,
    /// Integer vector `m = 2μ` with `(id+τ)·m = 0`.
    pub doubled: Vec<BigInt>,
}

impl FixedComponent {
    pub fn is_base(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// Human-readable label `T0`, `T1`, … in enumeration order.
    pub fn label(&self) -> alloc::string::String {
        let mut idx = 0u64;
        for &b in &self.bits {
            idx = (idx << 1) | u64::from(b);
        }
        format!("T{idx}")
    }
}

/// Comessatti normal form of `(Λ, τ)`: a unimodular basis
/// `(α₁…α_a, β₁…β_s, γ_{s+1}…γ_{n−a})` with
/// `τα_i = α_i`, `τβ_j = α_j − β_j`, `τγ_k = −γ_k`.
#[derive(Clone, Debug)]
pub struct ComessattiBasis {
    /// Columns are the new basis vectors in the old coordinates, in the
    /// order α's, β's, γ's.
    pub basis: IntMat,
    pub a: usize,
    pub s: usize,
}

impl ComessattiBasis {
    pub fn alpha(&self, i: usize) -> Vec<BigInt> {
        self.basis.column(i)
    }

    pub fn beta(&self, j: usize) -> Vec<BigInt> {
        self.basis.column(self.a + j)
    }

    pub fn gamma(&self, k: usize) -> Vec<BigInt> {
        self.basis.column(self.a + self.s + k)
    }

    /// Checks the defining relations exactly against the given involution.
    pub fn verify(&self, lat: &LatticeInvolution) -> bool {
        let n = lat.rank();
        if self.basis.rows() != n || self.basis.cols() != n || self.s > self.a {
            return false;
        }
        // Unimodularity: the basis must carry ℤⁿ onto ℤⁿ.
        let snf = smith_normal_form(&self.basis);
        if snf.rank != n || !snf.diag.is_identity() {
            return false;
        }
        for i in 0..self.a {
            if lat.apply_tau(&self.alpha(i)) != self.alpha(i) {
                return false;
            }
        }
        for j in 0..self.s {
            let want: Vec<BigInt> = self
                .alpha(j)
                .iter()
                .zip(self.beta(j).iter())
                .map(|(a, b)| a - b)
                .collect();
            if lat.apply_tau(&self.beta(j)) != want {
                return false;
            }
        }
        for k in 0..(n - self.a - self.s) {
            let want: Vec<BigInt> = self.gamma(k).iter().map(|g| -g.clone()).collect();
            if lat.apply_tau(&self.gamma(k)) != want {
                return false;
            }
        }
        true
    }
}

/// Computes a Comessatti basis for `(Λ, τ)`.
///
/// Strategy: split off a basis adapted to the saturated anti-invariant
/// sublattice `Λ^{−τ}`; in such a basis τ is block triangular with the
/// coupling block only mattering mod 2, so a GF(2) rank normal form plus
/// an even shift brings τ to the normal form exactly. The output is
/// re-verified against the defining relations before returning.
pub fn comessatti_basis(lat: &LatticeInvolution) -> ComessattiBasis {
    let n = lat.rank();
    let id = IntMat::identity(n);
    // g-block: saturated basis of Λ^{−τ} (rank m = n − a).
    let anti = kernel_basis(&(&id + lat.tau()));
    let m = anti.cols();
    let a = n - m;

    // Complete to a basis of ℤⁿ: with left·anti·right = [I_m; 0] one has
    // anti·right = first m columns of left⁻¹, so the trailing columns of
    // left⁻¹ complete the (column-transformed) kernel basis.
    let snf = smith_normal_form(&anti);
    debug_assert!(snf.rank == m);
    let left_inv = invert_unimodular(&snf.left);
    let g_block = &anti * &snf.right;
    let h_block = IntMat::from_fn(n, a, |i, j| left_inv[(i, m + j)].clone());

    // τ·h_i = h_i + Σ_k c_{ki} g_k: coupling matrix C (m×a), integral
    // because (τ − id)h lies in Λ^{−τ} = im(g_block) and g is saturated.
    let mut coupling = IntMat::zero(m, a);
    for j in 0..a {
        let diff: Vec<BigInt> = {
            let h = h_block.column(j);
            let th = lat.apply_tau(&h);
            th.iter().zip(h.iter()).map(|(x, y)| x - y).collect()
        };
        let c = lattice_solve(&g_block, &diff)
            .expect("(tau-id)h must lie in the anti-invariant sublattice");
        for k in 0..m {
            coupling[(k, j)] = c[k].clone();
        }
    }

    // Reduce C mod 2 to [[I_s, 0], [0, 0]] by integer row ops on g and
    // column ops on h (both unimodular), then kill the even remainder by
    // shifting h inside the g-span: h_j ↦ h_j + Σ t_{kj} g_k sends
    // C ↦ C − 2T.
    let mut c = coupling;
    let mut g_tf = IntMat::identity(m); // accumulated row transform: g' = g · g_tfᵀ? tracked directly below
    let mut h_tf = IntMat::identity(a);
    let two = BigInt::from(2);
    let mut s = 0usize;
    for _ in 0..m.min(a) {
        // Find a pivot with odd entry in the trailing block.
        let mut pivot = None;
        'search: for i in s..m {
            for j in s..a {
                if c[(i, j)].mod_floor(&two).is_one() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        c.swap_row_tracked(s, pi, &mut g_tf);
        c.swap_col_tracked(s, pj, &mut h_tf);
        // Clear the rest of row s and column s mod 2.
        for i in 0..m {
            if i != s && c[(i, s)].mod_floor(&two).is_one() {
                c.add_row_tracked(i, s, &mut g_tf);
            }
        }
        for j in 0..a {
            if j != s && c[(s, j)].mod_floor(&two).is_one() {
                c.add_col_tracked(j, s, &mut h_tf);
            }
        }
        s += 1;
    }
    // Transformed g and h blocks.
    let g_new = &g_block * &invert_unimodular(&g_tf); // rows of C track gᵀ: see note below
    let h_new = &h_block * &h_tf;
    // Even shift: h ↦ h + g·T sends C ↦ C − 2T, so T = (C − E)/2 reaches
    // the 0/1 target E with E[(i,i)] = 1 exactly for i < s.
    let shift = IntMat::from_fn(m, a, |i, j| {
        let target = if i == j && i < s {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        let diff = &c[(i, j)] - target;
        debug_assert!(diff.mod_floor(&two).is_zero());
        diff / &two
    });
    let h_final = &h_new + &(&g_new * &shift);

    // Assemble: for j < s the pair (g_j, h_j) satisfies τh_j = h_j + g_j;
    // set α_j = 2h_j + g_j, β_j = h_j + g_j (a unimodular change of the
    // pair). Remaining h's are fixed α's, remaining g's are γ's.
    let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for j in 0..s {
        let g = g_new.column(j);
        let h = h_final.column(j);
        cols.push(h.iter().zip(&g).map(|(x, y)| x * 2 + y).collect());
    }
    for j in s..a {
        cols.push(h_final.column(j));
    }
    for j in 0..s {
        let g = g_new.column(j);
        let h = h_final.column(j);
        cols.push(h.iter().zip(&g).map(|(x, y)| x + y).collect());
    }
    for k in s..m {
        cols.push(g_new.column(k));
    }
    let basis = IntMat::from_fn(n, n, |i, j| cols[j][i].clone());
    let out = ComessattiBasis { basis, a, s };
    assert!(
        out.verify(lat),
        "Comessatti construction failed verification"
    );
    out
}

// Row/column tracked operations for the GF(2) reduction above. Row ops on
// C correspond to replacing g by g·(row transform)⁻¹ so that g·C is
// unchanged; we accumulate the row transform and invert it once.
impl IntMat {
    fn swap_row_tracked(&mut self, a: usize, b: usize, tf: &mut IntMat) {
        if a == b {
            return;
        }
        let t = self.clone().row_swapped(a, b);
        *self = t;
        let t = tf.clone().row_swapped(a, b);
        *tf = t;
    }

    fn row_swapped(mut self, a: usize, b: usize) -> IntMat {
        for j in 0..self.cols() {
            let x = self[(a, j)].clone();
            self[(a, j)] = self[(b, j)].clone();
            self[(b, j)] = x;
        }
        self
    }

    fn add_row_tracked(&mut self, i: usize, j: usize, tf: &mut IntMat) {
        for cidx in 0..self.cols() {
            let t = self[(j, cidx)].clone();
            self[(i, cidx)] += t;
        }
        for cidx in 0..tf.cols() {
            let t = tf[(j, cidx)].clone();
            tf[(i, cidx)] += t;
        }
    }

    fn swap_col_tracked(&mut self, a: usize, b: usize, tf: &mut IntMat) {
        for i in 0..self.rows() {
            let x = self[(i, a)].clone();
            self[(i, a)] = self[(i, b)].clone();
            self[(i, b)] = x;
        }
        for i in 0..tf.rows() {
            let x = tf[(i, a)].clone();
            tf[(i, a)] = tf[(i, b)].clone();
            tf[(i, b)] = x;
        }
    }

    fn add_col_tracked(&mut self, i: usize, j: usize, tf: &mut IntMat) {
        for r in 0..self.rows() {
            let t = self[(r, j)].clone();
            self[(r, i)] += t;
        }
        for r in 0..tf.rows() {
            let t = tf[(r, j)].clone();
            tf[(r, i)] += t;
        }
    }
}

/// Inverse of a unimodular integer matrix (solved column by column).
pub fn invert_unimodular(m: &IntMat) -> IntMat {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut inv = IntMat::zero(n, n);
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::one();
        let col = lattice_solve(m, &e).expect("matrix not unimodular");
        for i in 0..n {
            inv[(i, j)] = col[i].clone();
        }
    }
    inv
}

/// An alternating integer form on Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltForm {
    mat: IntMat,
}

impl AltForm {
    pub fn new(mat: IntMat) -> Result<Self> {
        if mat.rows() != mat.cols() {
            return Err(Error::DimensionMismatch(format!(
                "form must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        if mat.transpose() != -&mat {
            return Err(Error::NotAlternating);
        }
        Ok(AltForm { mat })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMat::from_rows(rows))
    }

    pub fn zero(n: usize) -> Self {
        AltForm {
            mat: IntMat::zero(n, n),
        }
    }

    /// The standard symplectic form on ℤ^{2m}: `u(eᵢ, e_{m+i}) = 1`.
    pub fn standard_symplectic(m: usize) -> Self {
        let mut mat = IntMat::zero(2 * m, 2 * m);
        for i in 0..m {
            mat[(i, m + i)] = BigInt::one();
            mat[(m + i, i)] = -BigInt::one();
        }
        AltForm { mat }
    }

    pub fn rank(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &IntMat {
        &self.mat
    }

    pub fn eval(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.mat.pair(x, y)
    }

    /// `τᵀ·u·τ = −u`, the condition for `u` to be a Chern datum of a
    /// τ-Real line bundle.
    pub fn is_anti_invariant(&self, lat: &LatticeInvolution) -> bool {
        self.mat.rows() == lat.rank()
            && &(&lat.tau().transpose() * &self.mat) * lat.tau() == -&self.mat
    }

    pub fn ensure_anti_invariant(&self, lat: &LatticeInvolution) -> Result<()> {
        if self.is_anti_invariant(lat) {
            Ok(())
        } else {
            Err(Error::NotAntiInvariant)
        }
    }

    pub fn scale(&self, k: i64) -> AltForm {
        AltForm {
            mat: IntMat::from_fn(self.mat.rows(), self.mat.cols(), |i, j| {
                &self.mat[(i, j)] * k
            }),
        }
    }

    pub fn add(&self, other: &AltForm) -> AltForm {
        AltForm {
            mat: &self.mat + &other.mat,
        }
    }
}

fn reduce_mod2(q: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let f = (q / &two).floor();
    q - f * two
}

/// A u-character `α: Λ → S¹` with `α_{λ+λ'} = α_λ α_{λ'} e^{πi u(λ,λ')}`,
/// stored as exact rational angles on the standard basis: `α(eᵢ) =
/// exp(πi·qᵢ)` with `qᵢ ∈ [0,2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UCharacter {
    form: AltForm,
    angles: Vec<BigRational>,
}

impl UCharacter {
    pub fn new(form: AltForm, angles: Vec<BigRational>) -> Self {
        assert_eq!(form.rank(), angles.len(), "one angle per basis vector");
        let angles = angles.iter().map(reduce_mod2).collect();
        UCharacter { form, angles }
    }

    /// The character with `α(eᵢ) = 1` for all i.
    pub fn trivial(form: AltForm) -> Self {
        let n = form.rank();
        UCharacter {
            form,
            angles: vec![BigRational::zero(); n],
        }
    }

    pub fn from_integer_angles(form: AltForm, angles: &[i64]) -> Self {
        let q = angles
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect();
        Self::new(form, q)
    }

    /// Determines the character from its angles on the columns of a
    /// unimodular basis `B` instead of the standard basis.
    pub fn from_basis_angles(form: AltForm, basis: &IntMat, angles: &[BigRational]) -> Self {
        let n = form.rank();
        assert_eq!(basis.rows(), n);
        assert_eq!(basis.cols(), n);
        assert_eq!(angles.len(), n);
        let inv = invert_unimodular(basis);
        let mut std_angles = Vec::with_capacity(n);
        for i in 0..n {
            // e_i = Σ_j m_j b_j with m = column i of B⁻¹; accumulate the
            // defining relation along that expansion.
            let m = inv.column(i);
            let mut q = BigRational::zero();
            for (j, mj) in m.iter().enumerate() {
                q += BigRational::from_integer(mj.clone()) * &angles[j];
            }
            let mut twist = BigInt::zero();
            for j in 0..n {
                for k in (j + 1)..n {
                    twist += &m[j] * &m[k] * form.eval(&basis.column(j), &basis.column(k));
                }
            }
            q += BigRational::from_integer(twist);
            std_angles.push(q);
        }
        Self::new(form, std_angles)
    }

    pub fn form(&self) -> &AltForm {
        &self.form
    }

    pub fn angles(&self) -> &[BigRational] {
        &self.angles
    }

    /// Exact angle `q` (mod 2) with `α(λ) = exp(πi·q)`, accumulated along
    /// the expansion of λ in the standard basis; well defined because `u`
    /// is integral.
    pub fn eval(&self, lam: &[BigInt]) -> BigRational {
        let n = self.form.rank();
        assert_eq!(lam.len(), n, "eval: dimension mismatch");
        let mut q = BigRational::zero();
        for (i, c) in lam.iter().enumerate() {
            q += BigRational::from_integer(c.clone()) * &self.angles[i];
        }
        let mut twist = BigInt::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                twist += &lam[i] * &lam[j] * &self.form.matrix()[(i, j)];
            }
        }
        q += BigRational::from_integer(twist);
        reduce_mod2(&q)
    }

    /// Angle of `ᾱ(λ)`.
    pub fn eval_conj(&self, lam: &[BigInt]) -> BigRational {
        reduce_mod2(&-self.eval(lam))
    }

    /// τ-Reality condition `α_{τλ} = ᾱ_λ`; it suffices to check the
    /// standard basis because both sides are twisted by the same cocycle
    /// when `u` is anti-invariant.
    pub fn is_real(&self, lat: &LatticeInvolution) -> bool {
        assert!(
            self.form.is_anti_invariant(lat),
            "Reality only meaningful for anti-invariant u"
        );
        let n = self.form.rank();
        (0..n).all(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            let te = lat.apply_tau(&e);
            self.eval(&te) == self.eval_conj(&e)
        })
    }
}

/// One τ-Real u-character per connected component of the space of τ-Real
/// u-characters; the count is `2^{a−s}`.
///
/// Built in the Comessatti basis: the value on a paired α_j is forced to
/// `(−1)^{u(α_j,β_j)}`, values on the remaining α's are free signs, β/γ
/// angles are set to 0.
pub fn real_character_components(
    lat: &LatticeInvolution,
    u: &AltForm,
) -> Result<(u64, Vec<UCharacter>)> {
    u.ensure_anti_invariant(lat)?;
    let cb = comessatti_basis(lat);
    let n = lat.rank();
    let free = cb.a - cb.s;
    assert!(free < 63, "component count overflows u64");
    let count = 1u64 << free;
    let mut reps = Vec::with_capacity(count as usize);
    for code in 0..count {
        let mut basis_angles = vec![BigRational::zero(); n];
        for (j, slot) in basis_angles.iter_mut().enumerate().take(cb.s) {
            let forced = u
                .eval(&cb.alpha(j), &cb.beta(j))
                .mod_floor(&BigInt::from(2));
            *slot = BigRational::from_integer(forced);
        }
        for (bit, angle_slot) in (0..free).zip(cb.s..cb.a) {
            // Lexicographic enumeration: first free slot is the most
            // significant bit.
            if (code >> (free - 1 - bit)) & 1 == 1 {
                basis_angles[angle_slot] = BigRational::one();
            }
        }
        let chi = UCharacter::from_basis_angles(u.clone(), &cb.basis, &basis_angles);
        debug_assert!(chi.is_real(lat));
        reps.push(chi);
    }
    Ok((count, reps))
}

/// Class of `ρ_α(λ) = α(λ)·α(τλ)` in `ker(id−σ)/im(id+σ)` for
/// `σ = −τᵀ`, computed for the trivial-angle u-character.
///
/// This is the obstruction against realizing `u` by a τ-Real bundle; it
/// vanishes identically on a torus, and the operation exists so tests can
/// assert that.
pub fn obstruction_class(lat: &LatticeInvolution, u: &AltForm) -> Result<Vec<u8>> {
    obstruction_class_for(lat, u, &UCharacter::trivial(u.clone()))
}

/// Same as [`obstruction_class`] but for a caller-chosen u-character; the
/// class is independent of the choice.
pub fn obstruction_class_for(
    lat: &LatticeInvolution,
    u: &AltForm,
    alpha: &UCharacter,
) -> Result<Vec<u8>> {
    u.ensure_anti_invariant(lat)?;
    assert_eq!(alpha.form(), u, "character must belong to the same form");
    let n = lat.rank();
    // Angle vector of the invariant character ρ on the standard basis.
    let mut rho = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::one();
        let te = lat.apply_tau(&e);
        rho.push(reduce_mod2(&(alpha.eval(&e) + alpha.eval(&te))));
    }
    // Connecting map: lift ρ to ℝⁿ and take (id − τᵀ)·ρ, which lands in
    // 2ℤⁿ exactly because ρ∘τ = ρ; half of it represents the class.
    let taut = lat.tau().transpose();
    let mut half = Vec::with_capacity(n);
    for i in 0..n {
        let mut d = rho[i].clone();
        for j in 0..n {
            d -= BigRational::from_integer(taut[(i, j)].clone()) * &rho[j];
        }
        if !d.is_integer() {
            return Err(Error::InconsistentSystem);
        }
        let di = d.to_integer();
        let (q, r) = di.div_rem(&BigInt::from(2));
        if !r.is_zero() {
            return Err(Error::InconsistentSystem);
        }
        half.push(q);
    }
    let sigma = -&taut;
    let group = tate_h2(&sigma).expect("sigma is an involution");
    group.reduce(&half).ok_or(Error::InconsistentSystem)
}

/// `f_u(λ+τλ) = u(λ, τλ) mod 2` on the trivial-invariants subgroup
/// `(id+τ)Λ`; rejects vectors outside it.
pub fn f_u(lat: &LatticeInvolution, u: &AltForm, lam_fixed: &[BigInt]) -> Result<u8> {
    u.ensure_anti_invariant(lat)?;
    let id = IntMat::identity(lat.rank());
    let id_plus_tau = &id + lat.tau();
    let pre = lattice_solve(&id_plus_tau, lam_fixed).ok_or(Error::NotInSublattice)?;
    let tpre = lat.apply_tau(&pre);
    Ok(u.eval(&pre, &tpre).mod_floor(&BigInt::from(2)).is_one() as u8)
}

/// The classifying pair `(u, w₀)` of a τ-Real line bundle: the Chern form
/// plus the Stiefel-Whitney functional on the base fixed component,
/// stored by its values on the saturated basis of `Λ^τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealLineBundleClass {
    lat: LatticeInvolution,
    u: AltForm,
    /// Columns of the saturated basis of `Λ^τ` the values refer to.
    fixed_basis: IntMat,
    /// `w₀` on the fixed basis, one bit per column.
    w0: Vec<u8>,
}

impl RealLineBundleClass {
    /// Validates the fiber-product condition `w₀|_{(id+τ)Λ} = f_u` on the
    /// generators `(id+τ)eᵢ`; rejecting means no τ-Real bundle has these
    /// invariants.
    pub fn new(lat: &LatticeInvolution, u: AltForm, w0: Vec<u8>) -> Result<Self> {
        u.ensure_anti_invariant(lat)?;
        let fixed_basis = lat.fixed_basis();
        if w0.len() != fixed_basis.cols() {
            return Err(Error::DimensionMismatch(format!(
                "w0 needs {} values (rank of the fixed sublattice), got {}",
                fixed_basis.cols(),
                w0.len()
            )));
        }
        let w0: Vec<u8> = w0.iter().map(|b| b & 1).collect();
        let cls = RealLineBundleClass {
            lat: lat.clone(),
            u,
            fixed_basis,
            w0,
        };
        let n = cls.lat.rank();
        let id = IntMat::identity(n);
        let id_plus_tau = &id + cls.lat.tau();
        for i in 0..n {
            let gen = id_plus_tau.column(i);
            let lhs = cls.w0_value(&gen)?;
            let rhs = f_u(&cls.lat, &cls.u, &gen)?;
            if lhs != rhs {
                return Err(Error::FiberProductViolation);
            }
        }
        Ok(cls)
    }

    pub fn lattice(&self) -> &LatticeInvolution {
        &self.lat
    }

    pub fn chern_form(&self) -> &AltForm {
        &self.u
    }

    pub fn fixed_basis(&self) -> &IntMat {
        &self.fixed_basis
    }

    pub fn w0_bits(&self) -> &[u8] {
        &self.w0
    }

    /// `w₀(λ)` for any `λ ∈ Λ^τ`.
    pub fn w0_value(&self, lam: &[BigInt]) -> Result<u8> {
        let coords = lattice_solve(&self.fixed_basis, lam).ok_or(Error::NotInSublattice)?;
        let mut acc = 0u8;
        for (c, &b) in coords.iter().zip(&self.w0) {
            if c.mod_floor(&BigInt::from(2)).is_one() {
                acc ^= b;
            }
        }
        Ok(acc)
    }

    /// Group law: `(u,w₀) + (u',w₀')` over the same lattice involution.
    pub fn add(&self, other: &RealLineBundleClass) -> Result<RealLineBundleClass> {
        if !self.lat.same_as(&other.lat) {
            return Err(Error::LatticeMismatch);
        }
        let w0 = self.w0.iter().zip(&other.w0).map(|(a, b)| a ^ b).collect();
        RealLineBundleClass::new(&self.lat, self.u.add(&other.u), w0)
    }

    /// `k`-th multiple in the group: `(k·u, (k mod 2)·w₀)`.
    pub fn scale(&self, k: i64) -> RealLineBundleClass {
        let w0 = if k.rem_euclid(2) == 0 {
            vec![0u8; self.w0.len()]
        } else {
            self.w0.clone()
        };
        RealLineBundleClass::new(&self.lat, self.u.scale(k), w0)
            .expect("scaling preserves the fiber-product condition")
    }

    /// Translate by a fixed component: `w₀ ↦ w₀ + u(2μ, ·) mod 2`, the
    /// difference formula applied as a shift of the base functional.
    pub fn shift_by_component(&self, comp: &FixedComponent) -> RealLineBundleClass {
        let mut w0 = Vec::with_capacity(self.w0.len());
        for (j, &b) in self.w0.iter().enumerate() {
            let bv = self.fixed_basis.column(j);
            let t = self.u.eval(&comp.doubled, &bv).mod_floor(&BigInt::from(2));
            w0.push(b ^ (t.is_one() as u8));
        }
        RealLineBundleClass::new(&self.lat, self.u.clone(), w0)
            .expect("difference-formula shift preserves the fiber-product condition")
    }

    /// Zero class over the same lattice.
    pub fn zero_like(&self) -> RealLineBundleClass {
        RealLineBundleClass::new(
            &self.lat,
            AltForm::zero(self.lat.rank()),
            vec![0; self.w0.len()],
        )
        .expect("zero class is always valid")
    }

    pub fn is_zero(&self) -> bool {
        self.u.matrix().is_zero() && self.w0.iter().all(|&b| b == 0)
    }
}

/// The full Stiefel-Whitney record of a class: one ℤ₂-functional on `Λ^τ`
/// per fixed component, generated from `w₀` by the difference formula
/// `w([μ])(λ) = w₀(λ) + u(2μ, λ) mod 2`.
#[derive(Clone, Debug)]
pub struct SWFunction {
    components: Vec<FixedComponent>,
    fixed_basis: IntMat,
    /// `table[c][j]` = value on fixed-basis vector j over component c.
    table: Vec<Vec<u8>>,
}

impl SWFunction {
    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    pub fn fixed_basis(&self) -> &IntMat {
        &self.fixed_basis
    }

    pub fn row(&self, comp: usize) -> &[u8] {
        &self.table[comp]
    }

    /// Value `w([μ_c])(λ)` for `λ ∈ Λ^τ`.
    pub fn value(&self, comp: usize, lam: &[BigInt]) -> Result<u8> {
        let coords = lattice_solve(&self.fixed_basis, lam).ok_or(Error::NotInSublattice)?;
        let mut acc = 0u8;
        for (c, &b) in coords.iter().zip(&self.table[comp]) {
            if c.mod_floor(&BigInt::from(2)).is_one() {
                acc ^= b;
            }
        }
        Ok(acc)
    }

    /// True when the functional over `comp` is identically zero.
    pub fn row_is_zero(&self, comp: usize) -> bool {
        self.table[comp].iter().all(|&b| b == 0)
    }
}

/// Evaluates the difference formula over every fixed component.
pub fn sw_function(class: &RealLineBundleClass) -> SWFunction {
    let components = class.lat.fixed_components();
    let mut table = Vec::with_capacity(components.len());
    for comp in &components {
        let shifted = class.shift_by_component(comp);
        table.push(shifted.w0_bits().to_vec());
    }
    SWFunction {
        components,
        fixed_basis: class.fixed_basis.clone(),
        table,
    }
}

/// Class of the bundle attached to a τ-Real u-character: `w₀(λ)` is 0 or
/// 1 according to `ᾱ_λ = ±1` (Reality forces `α_λ ∈ {±1}` on `Λ^τ`).
pub fn class_from_real_character(
    lat: &LatticeInvolution,
    alpha: &UCharacter,
) -> Result<RealLineBundleClass> {
    alpha.form().ensure_anti_invariant(lat)?;
    if !alpha.is_real(lat) {
        return Err(Error::NotRealCharacter);
    }
    let fixed_basis = lat.fixed_basis();
    let mut w0 = Vec::with_capacity(fixed_basis.cols());
    for j in 0..fixed_basis.cols() {
        let q = alpha.eval_conj(&fixed_basis.column(j));
        if !q.is_integer() {
            return Err(Error::NotRealCharacter);
        }
        w0.push(q.to_integer().mod_floor(&BigInt::from(2)).is_one() as u8);
    }
    RealLineBundleClass::new(lat, alpha.form().clone(), w0)
}

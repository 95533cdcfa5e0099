//! θ-twisted group algebras and their representations.
//!
//! The twisted algebra `ℂ^θ[Γ]` has basis `g̲` with `g̲·h̲ = θ(g,h)·(gh)̲`,
//! and a representation satisfies `ρ(g)ρ(h) = θ(g,h)ρ(gh)`. Phases are read
//! through `e^{2πiθ}`.
//!
//! Matrices are double precision. Decompositions split a representation
//! with a random self-adjoint element of its commutant: each eigenspace of
//! a generic such element is an irreducible subrepresentation.

use nalgebra::DVector;
use num_complex::Complex64;
use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{require_cocycle, restrict_cochain, Cochain};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::linalg::{self, c, max_abs_diff, CMatrix, DEFAULT_TOL};
use crate::phase::format_ratio;

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const RESEEDS: usize = 8;
const MERGE_TOL: f64 = 1e-9;
const GAP_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedAlgebra {
    group: FiniteGroup,
    theta: Cochain,
    twist: Vec<Complex64>,
}

impl TwistedAlgebra {
    /// Rejects `θ` that is not a normalized 2-cocycle, which is exactly when
    /// the twisted product fails to be associative.
    pub fn new(theta: &Cochain) -> Result<TwistedAlgebra> {
        if theta.degree() != 2 {
            return Err(Error::InvalidInput(format!("twist must have degree 2, not {}", theta.degree())));
        }
        require_cocycle(theta)?;
        Ok(TwistedAlgebra {
            group: theta.group().clone(),
            theta: theta.clone(),
            twist: theta.values().iter().map(|p| p.to_complex()).collect(),
        })
    }

    pub fn untwisted(group: &FiniteGroup) -> TwistedAlgebra {
        let theta = Cochain::zero(group, 2);
        let twist = vec![c(1.0, 0.0); group.order() * group.order()];
        TwistedAlgebra { group: group.clone(), theta, twist }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn theta(&self) -> &Cochain {
        &self.theta
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    #[inline]
    pub fn twist(&self, g: usize, h: usize) -> Complex64 {
        self.twist[g * self.group.order() + h]
    }

    /// `g̲·h̲` as a scalar times a basis element.
    pub fn basis_product(&self, g: usize, h: usize) -> (Complex64, usize) {
        (self.twist(g, h), self.group.mul(g, h))
    }
}

/// A θ-twisted representation, stored as one matrix per group element.
#[derive(Clone, Debug)]
pub struct Rep {
    algebra: TwistedAlgebra,
    mats: Vec<CMatrix>,
}

impl Rep {
    pub fn new(algebra: &TwistedAlgebra, mats: Vec<CMatrix>) -> Result<Rep> {
        Self::with_tol(algebra, mats, DEFAULT_TOL)
    }

    pub fn with_tol(algebra: &TwistedAlgebra, mats: Vec<CMatrix>, tol: f64) -> Result<Rep> {
        if mats.len() != algebra.order() {
            return Err(Error::InvalidInput(format!("need {} matrices, got {}", algebra.order(), mats.len())));
        }
        let d = mats.first().map_or(0, |m| m.nrows());
        if mats.iter().any(|m| m.shape() != (d, d)) {
            return Err(Error::InvalidInput("matrices must be square of equal size".into()));
        }
        let rep = Rep { algebra: algebra.clone(), mats };
        if let Some((g, h)) = rep.first_violation(tol) {
            return Err(Error::NotARepresentation(g, h));
        }
        Ok(rep)
    }

    fn first_violation(&self, tol: f64) -> Option<(usize, usize)> {
        let g = &self.algebra.group;
        if linalg::identity_deviation(&self.mats[g.identity()]) > tol {
            return Some((g.identity(), g.identity()));
        }
        for a in g.elements() {
            for b in g.elements() {
                let lhs = &self.mats[a] * &self.mats[b];
                let rhs = &self.mats[g.mul(a, b)] * self.algebra.twist(a, b);
                if max_abs_diff(&lhs, &rhs) > tol {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Largest entry of `ρ(g)ρ(h) − θ(g,h)ρ(gh)` over all pairs.
    pub fn law_deviation(&self) -> f64 {
        let g = &self.algebra.group;
        let mut worst: f64 = 0.0;
        for a in g.elements() {
            for b in g.elements() {
                let lhs = &self.mats[a] * &self.mats[b];
                let rhs = &self.mats[g.mul(a, b)] * self.algebra.twist(a, b);
                worst = worst.max(max_abs_diff(&lhs, &rhs));
            }
        }
        worst
    }

    pub fn algebra(&self) -> &TwistedAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.mats.first().map_or(0, |m| m.nrows())
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.mats[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.mats
    }

    /// Twisted character `g ↦ tr ρ(g)`.
    pub fn character(&self) -> Vec<Complex64> {
        self.mats.iter().map(|m| m.trace()).collect()
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        if self.algebra != other.algebra {
            return Err(Error::GroupMismatch);
        }
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| linalg::direct_sum(a, b)).collect();
        Ok(Rep { algebra: self.algebra.clone(), mats })
    }

    /// `S ρ(g) S⁻¹`.
    pub fn conjugate(&self, s: &CMatrix) -> Result<Rep> {
        let inv = s.clone().try_inverse().ok_or_else(|| Error::InvalidInput("singular change of basis".into()))?;
        Ok(Rep { algebra: self.algebra.clone(), mats: self.mats.iter().map(|m| s * m * &inv).collect() })
    }

    /// The subrepresentation on the span of orthonormal columns `b`, which
    /// must be invariant.
    pub fn compress(&self, b: &CMatrix) -> Rep {
        let bh = b.adjoint();
        Rep { algebra: self.algebra.clone(), mats: self.mats.iter().map(|m| &bh * m * b).collect() }
    }
}

/// `L(g) e_x = θ(g,x) e_{gx}`.
pub fn regular_rep(a: &TwistedAlgebra) -> Rep {
    let n = a.order();
    let mats = (0..n)
        .map(|g| {
            let mut m = CMatrix::zeros(n, n);
            for x in 0..n {
                let (s, y) = a.basis_product(g, x);
                m[(y, x)] = s;
            }
            m
        })
        .collect();
    Rep { algebra: a.clone(), mats }
}

/// `R(k) e_x = θ(x,k) e_{xk}`; these commute with the left regular action.
fn right_regular(a: &TwistedAlgebra, k: usize) -> CMatrix {
    let n = a.order();
    let mut m = CMatrix::zeros(n, n);
    for x in 0..n {
        let (s, y) = a.basis_product(x, k);
        m[(y, x)] = s;
    }
    m
}

/// The 2-dimensional representation of the Klein twisted algebra with
/// `x ↦ σ_x`, `p ↦ σ_z`, `xp ↦ σ_x σ_z`.
pub fn pauli_rep(a: &TwistedAlgebra) -> Result<Rep> {
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    let id = CMatrix::identity(2, 2);
    let sx = CMatrix::from_row_slice(2, 2, &[o, l, l, o]);
    let sz = CMatrix::from_row_slice(2, 2, &[l, o, o, -l]);
    let sxz = &sx * &sz;
    Rep::new(a, vec![id, sx, sz, sxz])
}

/// One isomorphism class of irreducible summands.
#[derive(Clone, Debug)]
pub struct IrrepClass {
    pub dim: usize,
    pub mult: usize,
    pub character: Vec<Complex64>,
    /// One irreducible copy.
    pub irrep: Rep,
    /// Orthonormal bases of the copies found, in the ambient space.
    pub copies: Vec<CMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimMult {
    pub dim: usize,
    pub mult: usize,
}

/// `[(dᵢ, mᵢ)]` sorted by dimension then multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RepDecomposition(pub Vec<DimMult>);

impl RepDecomposition {
    fn from_classes(classes: &[IrrepClass]) -> RepDecomposition {
        let mut v: Vec<DimMult> = classes.iter().map(|k| DimMult { dim: k.dim, mult: k.mult }).collect();
        v.sort_by_key(|d| (d.dim, d.mult));
        RepDecomposition(v)
    }

    pub fn total_dim(&self) -> usize {
        self.0.iter().map(|d| d.dim * d.mult).sum()
    }
}

fn characters_close(a: &[Complex64], b: &[Complex64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-6)
}

/// Splits along the eigenspaces of `h`, which must be Hermitian and commute
/// with `rep`. `None` signals a split that cannot be trusted.
fn split_with(rep: &Rep, h: &CMatrix) -> Option<Vec<IrrepClass>> {
    let n = rep.algebra.order() as f64;
    let spaces = linalg::hermitian_eigenspaces(h, MERGE_TOL, GAP_TOL)?;
    let mut classes: Vec<IrrepClass> = Vec::new();
    for b in spaces {
        let sub = rep.compress(&b);
        let chi = sub.character();
        let norm: f64 = chi.iter().map(|z| z.norm_sqr()).sum::<f64>() / n;
        if (norm - 1.0).abs() > 1e-6 {
            return None;
        }
        match classes.iter_mut().find(|k| characters_close(&k.character, &chi)) {
            Some(k) => {
                k.mult += 1;
                k.copies.push(b);
            }
            None => classes.push(IrrepClass { dim: b.ncols(), mult: 1, character: chi, irrep: sub, copies: vec![b] }),
        }
    }
    Some(classes)
}

fn with_reseeds(seed: u64, mut attempt: impl FnMut(&mut ChaCha8Rng) -> Option<Vec<IrrepClass>>) -> Result<Vec<IrrepClass>> {
    for k in 0..=RESEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        if let Some(classes) = attempt(&mut rng) {
            return Ok(classes);
        }
    }
    Err(Error::NumericalDegeneracy(RESEEDS))
}

/// Irreducible constituents of a unitary representation.
pub fn decompose(rep: &Rep, seed: u64) -> Result<Vec<IrrepClass>> {
    let unitary = rep.mats.iter().all(|m| linalg::identity_deviation(&(m.adjoint() * m)) < 1e-8);
    if !unitary {
        return decompose(&unitarize(rep)?, seed);
    }
    let n = rep.algebra.order() as f64;
    with_reseeds(seed, |rng| {
        let m = linalg::random_hermitian(rep.dim(), rng);
        let mut avg = CMatrix::zeros(rep.dim(), rep.dim());
        for g in rep.mats.iter() {
            avg += g * &m * g.adjoint();
        }
        avg /= c(n, 0.0);
        split_with(rep, &avg)
    })
}

/// Conjugates by the square root of `Σ ρ(g)†ρ(g)`, which makes every
/// `ρ(g)` unitary.
fn unitarize(rep: &Rep) -> Result<Rep> {
    let d = rep.dim();
    let mut p = CMatrix::zeros(d, d);
    for m in &rep.mats {
        p += m.adjoint() * m;
    }
    let eig = p.symmetric_eigen();
    let sqrt = DVector::from_iterator(d, eig.eigenvalues.iter().map(|&x| c(x.max(0.0).sqrt(), 0.0)));
    let s = &eig.eigenvectors * CMatrix::from_diagonal(&sqrt) * eig.eigenvectors.adjoint();
    rep.conjugate(&s)
}

/// Irreducible classes of the twisted algebra, from its regular representation.
pub fn irreducible_classes(a: &TwistedAlgebra, seed: u64) -> Result<Vec<IrrepClass>> {
    if a.order() > 512 {
        return Err(Error::TooLarge { what: "group order for decomposition".into(), size: a.order() as u64, limit: 512 });
    }
    let reg = regular_rep(a);
    let rights: Vec<CMatrix> = a.group.elements().map(|k| right_regular(a, k)).collect();
    let classes = with_reseeds(seed, |rng| {
        let mut h = CMatrix::zeros(a.order(), a.order());
        for r in &rights {
            let z = linalg::random_complex(rng);
            h += r * z + r.adjoint() * z.conj();
        }
        split_with(&reg, &h)
    })?;
    let total: usize = classes.iter().map(|k| k.dim * k.dim).sum();
    if total != a.order() || classes.iter().any(|k| k.mult != k.dim) {
        return Err(Error::NumericalDegeneracy(RESEEDS));
    }
    Ok(classes)
}

pub fn regular_decompose(a: &TwistedAlgebra) -> Result<RepDecomposition> {
    regular_decompose_seeded(a, DEFAULT_SEED)
}

pub fn regular_decompose_seeded(a: &TwistedAlgebra, seed: u64) -> Result<RepDecomposition> {
    Ok(RepDecomposition::from_classes(&irreducible_classes(a, seed)?))
}

pub fn decomposition_of(rep: &Rep, seed: u64) -> Result<RepDecomposition> {
    Ok(RepDecomposition::from_classes(&decompose(rep, seed)?))
}

/// Pullback along an injective homomorphism `f: H → Γ`.
pub fn restrict(rep: &Rep, f: &GroupHom) -> Result<Rep> {
    f.check_injective()?;
    let theta = restrict_cochain(rep.algebra.theta(), f)?;
    let algebra = TwistedAlgebra::new(&theta)?;
    let mats = f.map.iter().map(|&g| rep.mats[g].clone()).collect();
    Ok(Rep { algebra, mats })
}

/// Left cosets `xH` keyed by their least element, and right cosets `Hx`
/// likewise, with each element's decomposition.
struct Cosets {
    /// Least element of each left coset.
    left_reps: Vec<usize>,
    /// `x = left_reps[i]·f(h)` as `(i, h)`.
    left_of: Vec<(usize, usize)>,
    right_reps: Vec<usize>,
    /// `x = f(h)·right_reps[i]` as `(i, h)`.
    right_of: Vec<(usize, usize)>,
}

impl Cosets {
    fn new(f: &GroupHom) -> Cosets {
        let g = &f.target;
        let n = g.order();
        let mut left_of = vec![(usize::MAX, 0); n];
        let mut left_reps = Vec::new();
        let mut right_of = vec![(usize::MAX, 0); n];
        let mut right_reps = Vec::new();
        for x in g.elements() {
            if left_of[x].0 == usize::MAX {
                let i = left_reps.len();
                left_reps.push(x);
                for h in f.source.elements() {
                    left_of[g.mul(x, f.apply(h))] = (i, h);
                }
            }
            if right_of[x].0 == usize::MAX {
                let i = right_reps.len();
                right_reps.push(x);
                for h in f.source.elements() {
                    right_of[g.mul(f.apply(h), x)] = (i, h);
                }
            }
        }
        Cosets { left_reps, left_of, right_reps, right_of }
    }
}

/// Data for the balanced tensor product `ℂ^θ[Γ] ⊗_{ℂ^{f*θ}[H]} V`, with
/// basis `r̲⊗eᵢ` over least left coset representatives `r`.
struct Induction<'a> {
    big: &'a TwistedAlgebra,
    f: &'a GroupHom,
    v: &'a Rep,
    cosets: Cosets,
}

impl<'a> Induction<'a> {
    fn new(v: &'a Rep, f: &'a GroupHom, big: &'a TwistedAlgebra) -> Result<Induction<'a>> {
        f.check_injective()?;
        if f.target != big.group || f.source != v.algebra.group {
            return Err(Error::GroupMismatch);
        }
        let pulled = restrict_cochain(big.theta(), f)?;
        if pulled != *v.algebra.theta() {
            return Err(Error::InvalidInput("representation twist differs from the restricted twist".into()));
        }
        Ok(Induction { big, f, v, cosets: Cosets::new(f) })
    }

    fn dim(&self) -> usize {
        self.cosets.left_reps.len() * self.v.dim()
    }

    /// Adds `s · (y̲ ⊗ w)` to `out`, written in the tensor basis.
    fn add_tensor(&self, out: &mut DVector<Complex64>, s: Complex64, y: usize, w: &DVector<Complex64>) {
        let (i, h) = self.cosets.left_of[y];
        let r = self.cosets.left_reps[i];
        // r̲·f(h)̲ = θ(r, f h)·y̲
        let coeff = s / self.big.twist(r, self.f.apply(h));
        let img = self.v.matrix(h) * w;
        let d = self.v.dim();
        for k in 0..d {
            out[i * d + k] += coeff * img[k];
        }
    }

    fn basis(&self, k: usize) -> DVector<Complex64> {
        let mut e = DVector::zeros(self.v.dim());
        e[k] = c(1.0, 0.0);
        e
    }

    fn induced(&self) -> Rep {
        let d = self.v.dim();
        let n = self.dim();
        let mats = self
            .big
            .group
            .elements()
            .map(|g| {
                let mut m = CMatrix::zeros(n, n);
                for (i, &r) in self.cosets.left_reps.iter().enumerate() {
                    let (s, gr) = self.big.basis_product(g, r);
                    for k in 0..d {
                        let mut col = DVector::zeros(n);
                        self.add_tensor(&mut col, s, gr, &self.basis(k));
                        m.set_column(i * d + k, &col);
                    }
                }
                m
            })
            .collect();
        Rep { algebra: self.big.clone(), mats }
    }
}

/// `ℂ^θ[Γ] ⊗_{ℂ^{f*θ}[H]} V`, of dimension `[Γ:H]·dim V`.
pub fn induce(v: &Rep, f: &GroupHom, big: &TwistedAlgebra) -> Result<Rep> {
    Ok(Induction::new(v, f, big)?.induced())
}

#[derive(Clone, Debug, Serialize)]
pub struct NakayamaReport {
    pub hom_dim: usize,
    pub tensor_dim: usize,
    /// `max |Nak∘Nak⁻¹ − id|`
    pub forward_deviation: f64,
    /// `max |Nak⁻¹∘Nak − id|`
    pub backward_deviation: f64,
    /// How far the inverse formula is from respecting `x̲f(h)̲⊗v = x̲⊗ρ(h)v`.
    pub balance_deviation: f64,
}

impl NakayamaReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.forward_deviation < tol && self.backward_deviation < tol && self.balance_deviation < tol
    }
}

/// Compares coinduction `Hom_H(ℂ^θ[Γ], V)` with induction through the
/// explicit isomorphism and its inverse.
///
/// An `H`-linear `φ` is stored by its values at least right coset
/// representatives `c`, since `φ((hc)̲) = θ(h,c)⁻¹ρ(h)φ(c̲)`.
pub fn nakayama_check(v: &Rep, f: &GroupHom, big: &TwistedAlgebra) -> Result<NakayamaReport> {
    let ind = Induction::new(v, f, big)?;
    let g = &big.group;
    let d = v.dim();
    let cos = &ind.cosets;
    let tensor_dim = ind.dim();
    let hom_dim = cos.right_reps.len() * d;
    let inv_h = c(1.0 / f.source.order() as f64, 0.0);

    // Nak(φ) = (1/|H|) Σ_x θ(x⁻¹,x)⁻¹ x⁻¹̲ ⊗ φ(x̲)
    let mut nak = CMatrix::zeros(tensor_dim, hom_dim);
    for (ci, &crep) in cos.right_reps.iter().enumerate() {
        for k in 0..d {
            let mut col = DVector::zeros(tensor_dim);
            for x in g.elements() {
                let (xi, h) = cos.right_of[x];
                if xi != ci {
                    continue;
                }
                let phi_x = v.matrix(h) * ind.basis(k) / big.twist(f.apply(h), crep);
                let xinv = g.inv(x);
                ind.add_tensor(&mut col, inv_h / big.twist(xinv, x), xinv, &phi_x);
            }
            nak.set_column(ci * d + k, &col);
        }
    }

    // Nak⁻¹(x̲⊗w) is the H-linear map with ψ((h x⁻¹)̲) = θ(x⁻¹,x)·θ(h,x⁻¹)⁻¹·ρ(h)w
    let nak_inv_raw = |x: usize, w: &DVector<Complex64>| -> DVector<Complex64> {
        let xinv = g.inv(x);
        let (ci, h1) = cos.right_of[xinv];
        // right_reps[ci] = f(h1)⁻¹·x⁻¹
        let h0 = f.source.inv(h1);
        let val = v.matrix(h0) * w * (big.twist(xinv, x) / big.twist(f.apply(h0), xinv));
        let mut out = DVector::zeros(hom_dim);
        for k in 0..d {
            out[ci * d + k] = val[k];
        }
        out
    };
    let mut nak_inv = CMatrix::zeros(hom_dim, tensor_dim);
    for (ri, &r) in cos.left_reps.iter().enumerate() {
        for k in 0..d {
            nak_inv.set_column(ri * d + k, &nak_inv_raw(r, &ind.basis(k)));
        }
    }

    let mut balance: f64 = 0.0;
    for x in g.elements() {
        for h in f.source.elements() {
            let xh = g.mul(x, f.apply(h));
            for k in 0..d {
                let e = ind.basis(k);
                let lhs = nak_inv_raw(xh, &e);
                let rhs = nak_inv_raw(x, &(v.matrix(h) * &e)) / big.twist(x, f.apply(h));
                balance = balance.max((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
    }

    Ok(NakayamaReport {
        hom_dim,
        tensor_dim,
        forward_deviation: linalg::identity_deviation(&(&nak * &nak_inv)),
        backward_deviation: linalg::identity_deviation(&(&nak_inv * &nak)),
        balance_deviation: balance,
    })
}

fn ratio_str<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(*r))
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    /// `ε∘η`, exactly `|Γ|/|H|`.
    #[serde(serialize_with = "ratio_str")]
    pub scalar: Rational64,
    /// `max |ε∘η − scalar·id|` as computed.
    pub counit_unit_deviation: f64,
    /// `max |e² − e|` for `e = η∘ε / scalar`.
    pub idempotent_deviation: f64,
    /// Largest failure of `η`, `ε` to intertwine the actions.
    pub equivariance_deviation: f64,
    /// `tr e`, which equals `dim V` when `e` splits off exactly `V`.
    pub split_rank: f64,
    pub test_dim: usize,
}

impl FrobeniusReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.counit_unit_deviation < tol
            && self.idempotent_deviation < tol
            && self.equivariance_deviation < tol
            && (self.split_rank - self.test_dim as f64).abs() < tol
    }
}

/// Unit and counit of `V → Ind Res V → V` for `f: H ↪ Γ`, measured on `test`
/// (the regular representation by default).
///
/// `ε(x̲⊗v) = ρ(x)v` and `η(v) = (1/|H|) Σ_x θ(x⁻¹,x)⁻¹ x⁻¹̲⊗ρ(x)v`.
pub fn frobenius_data(big: &TwistedAlgebra, f: &GroupHom, test: Option<&Rep>) -> Result<FrobeniusReport> {
    let regular;
    let v = match test {
        Some(v) => v,
        None => {
            regular = regular_rep(big);
            &regular
        }
    };
    if v.algebra != *big {
        return Err(Error::GroupMismatch);
    }
    let res = restrict(v, f)?;
    let ind = Induction::new(&res, f, big)?;
    let t = ind.induced();
    let g = &big.group;
    let d = v.dim();
    let n = ind.dim();
    let scalar = Rational64::new(g.order() as i64, f.source.order() as i64);
    let s = c(*scalar.numer() as f64 / *scalar.denom() as f64, 0.0);
    let inv_h = c(1.0 / f.source.order() as f64, 0.0);

    let mut counit = CMatrix::zeros(d, n);
    for (i, &r) in ind.cosets.left_reps.iter().enumerate() {
        for k in 0..d {
            counit.set_column(i * d + k, &v.matrix(r).column(k));
        }
    }
    let mut unit = CMatrix::zeros(n, d);
    for k in 0..d {
        let mut col = DVector::zeros(n);
        for x in g.elements() {
            let w = v.matrix(x) * ind.basis(k);
            let xinv = g.inv(x);
            ind.add_tensor(&mut col, inv_h / big.twist(xinv, x), xinv, &w);
        }
        unit.set_column(k, &col);
    }

    let eps_eta = &counit * &unit;
    let e = &unit * &counit / s;
    let mut equivariance: f64 = 0.0;
    for x in g.elements() {
        equivariance = equivariance.max(max_abs_diff(&(&unit * v.matrix(x)), &(t.matrix(x) * &unit)));
        equivariance = equivariance.max(max_abs_diff(&(&counit * t.matrix(x)), &(v.matrix(x) * &counit)));
    }
    Ok(FrobeniusReport {
        scalar,
        counit_unit_deviation: max_abs_diff(&eps_eta, &(CMatrix::identity(d, d) * s)),
        idempotent_deviation: max_abs_diff(&(&e * &e), &e),
        equivariance_deviation: equivariance,
        split_rank: e.trace().re,
        test_dim: d,
    })
}

//! Twisted skyscraper sheaves on a finite quotient `[S/Γ]` with a constant
//! 2-cocycle `θ`.
//!
//! `Γ` acts on `S` from the right by `s·γ = act(γ⁻¹, s)`. A sheaf is a fiber
//! `F(s)` at each point with isomorphisms `φ_γ(s): F(s·γ) → F(s)` such that
//! `φ_{γ′}(s) ∘ φ_γ(s·γ′) = θ(γ′,γ) φ_{γ′γ}(s)`. On the total space
//! `⊕_s F(s)` these assemble into matrices `Φ_γ` with
//! `Φ_{γ′} Φ_γ = θ(γ′,γ) Φ_{γ′γ}`, i.e. a θ-twisted representation that moves
//! the fiber over `x` to the fiber over `act(γ, x)`.

use std::collections::BTreeSet;

use nalgebra::DVector;
use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::Cochain;
use crate::error::{Error, Result};
use crate::fuscat::FusionRing;
use crate::group::{FiniteGroup, GroupAction};
use crate::linalg::{c, hermitian_eigenspaces, identity_deviation, max_abs, max_abs_diff, null_space, random_complex, CMatrix};
use crate::twistedrep::{irreducible_classes, Rep, TwistedAlgebra, DEFAULT_SEED, RESEEDS};

/// Largest `n` accepted by [`dihedral_model`].
pub const MAX_DIHEDRAL: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct OrbifoldModel {
    action: GroupAction,
    algebra: TwistedAlgebra,
    effective: bool,
}

impl OrbifoldModel {
    pub fn new(action: &GroupAction, theta: &Cochain) -> Result<OrbifoldModel> {
        if theta.group() != action.group() {
            return Err(Error::GroupMismatch);
        }
        let algebra = TwistedAlgebra::new(theta)?;
        Ok(OrbifoldModel { action: action.clone(), algebra, effective: action.is_effective() })
    }

    pub fn untwisted(action: &GroupAction) -> OrbifoldModel {
        OrbifoldModel { action: action.clone(), algebra: TwistedAlgebra::untwisted(action.group()), effective: action.is_effective() }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn algebra(&self) -> &TwistedAlgebra {
        &self.algebra
    }

    pub fn theta(&self) -> &Cochain {
        self.algebra.theta()
    }

    pub fn points(&self) -> usize {
        self.action.points()
    }

    pub fn is_effective(&self) -> bool {
        self.effective
    }

    /// `s·γ`.
    #[inline]
    pub fn right(&self, s: usize, g: usize) -> usize {
        self.action.act(self.group().inv(g), s)
    }

    /// Orbit index of each point, orbits ordered by least point.
    pub fn orbit_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.points()];
        for (i, o) in self.action.orbits_with_stabilizers().iter().enumerate() {
            for &p in &o.points {
                out[p] = i;
            }
        }
        out
    }
}

/// `Γ` acting on the left cosets of a subgroup, cosets labelled in order of
/// their least element.
pub fn coset_action(g: &FiniteGroup, subgroup: &[usize]) -> Result<GroupAction> {
    let k: BTreeSet<usize> = g.closure(subgroup).into_iter().collect();
    let mut label = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if label[x] == usize::MAX {
            for &h in &k {
                label[g.mul(x, h)] = reps.len();
            }
            reps.push(x);
        }
    }
    let table = g.elements().map(|a| reps.iter().map(|&r| label[g.mul(a, r)]).collect()).collect();
    GroupAction::new(g, table)
}

/// Disjoint union of actions of one group, points numbered consecutively.
pub fn disjoint_union(actions: &[GroupAction]) -> Result<GroupAction> {
    let g = actions.first().ok_or_else(|| Error::InvalidInput("need at least one action".into()))?.group();
    if actions.iter().any(|a| a.group() != g) {
        return Err(Error::GroupMismatch);
    }
    let table = g
        .elements()
        .map(|x| {
            let mut row = Vec::new();
            let mut off = 0;
            for a in actions {
                row.extend((0..a.points()).map(|p| off + a.act(x, p)));
                off += a.points();
            }
            row
        })
        .collect();
    GroupAction::new(g, table)
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len() + 1);
    let mut t = 0;
    off.push(0);
    for &d in dims {
        t += d;
        off.push(t);
    }
    off
}

/// Projection of the total space onto the fiber block at `s`.
fn block_projector(off: &[usize], s: usize) -> CMatrix {
    let n = *off.last().expect("nonempty");
    CMatrix::from_fn(n, n, |i, j| if i == j && i >= off[s] && i < off[s + 1] { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedSheaf {
    base: OrbifoldModel,
    dims: Vec<usize>,
    off: Vec<usize>,
    phi: Vec<CMatrix>,
}

impl TwistedSheaf {
    /// Fibers of the given dimensions with one total matrix `Φ_γ` per group
    /// element; the laws are checked by [`sheaf_validate`].
    pub fn new(base: &OrbifoldModel, dims: Vec<usize>, phi: Vec<CMatrix>) -> Result<TwistedSheaf> {
        if dims.len() != base.points() {
            return Err(Error::InvalidInput(format!("need {} fiber dimensions, got {}", base.points(), dims.len())));
        }
        let off = offsets(&dims);
        let n = off[dims.len()];
        if phi.len() != base.group().order() || phi.iter().any(|m| m.shape() != (n, n)) {
            return Err(Error::InvalidInput(format!("need {} matrices of size {n}×{n}", base.group().order())));
        }
        Ok(TwistedSheaf { base: base.clone(), dims, off, phi })
    }

    pub fn zero(base: &OrbifoldModel) -> TwistedSheaf {
        let phi = vec![CMatrix::zeros(0, 0); base.group().order()];
        TwistedSheaf { base: base.clone(), dims: vec![0; base.points()], off: vec![0; base.points() + 1], phi }
    }

    /// A twisted representation of `Γ` placed at a point fixed by all of `Γ`.
    pub fn at_fixed_point(base: &OrbifoldModel, point: usize, rep: &Rep) -> Result<TwistedSheaf> {
        if point >= base.points() || base.group().elements().any(|g| base.action.act(g, point) != point) {
            return Err(Error::InvalidInput(format!("point {point} is not fixed by the whole group")));
        }
        if rep.algebra() != base.algebra() {
            return Err(Error::GroupMismatch);
        }
        let mut dims = vec![0; base.points()];
        dims[point] = rep.dim();
        TwistedSheaf::new(base, dims, rep.matrices().to_vec())
    }

    pub fn base(&self) -> &OrbifoldModel {
        &self.base
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.off[self.dims.len()]
    }

    pub fn phi(&self, g: usize) -> &CMatrix {
        &self.phi[g]
    }

    pub fn phis(&self) -> &[CMatrix] {
        &self.phi
    }

    /// `φ_γ(s): F(s·γ) → F(s)`.
    pub fn phi_at(&self, g: usize, s: usize) -> CMatrix {
        let t = self.base.right(s, g);
        self.phi[g].view((self.off[s], self.off[t]), (self.dims[s], self.dims[t])).into_owned()
    }

    /// `t·Φ_γ`, using that `Φ_γ` has one block per block row.
    fn right_mul(&self, g: usize, t: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(t.nrows(), self.total_dim());
        for s in 0..self.dims.len() {
            let u = self.base.right(s, g);
            let (ds, du) = (self.dims[s], self.dims[u]);
            if ds == 0 || du == 0 {
                continue;
            }
            let blk = self.phi[g].view((self.off[s], self.off[u]), (ds, du));
            out.view_mut((0, self.off[u]), (t.nrows(), du)).copy_from(&(t.view((0, self.off[s]), (t.nrows(), ds)) * blk));
        }
        out
    }

    /// `Φ_γ·t`.
    fn left_mul(&self, g: usize, t: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.total_dim(), t.ncols());
        for s in 0..self.dims.len() {
            let u = self.base.right(s, g);
            let (ds, du) = (self.dims[s], self.dims[u]);
            if ds == 0 || du == 0 {
                continue;
            }
            let blk = self.phi[g].view((self.off[s], self.off[u]), (ds, du));
            out.view_mut((self.off[s], 0), (ds, t.ncols())).copy_from(&(blk * t.view((self.off[u], 0), (du, t.ncols()))));
        }
        out
    }

    pub fn direct_sum(&self, other: &TwistedSheaf) -> Result<TwistedSheaf> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        let perm = sum_layout(&self.dims, &other.dims);
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let phi = self
            .phi
            .iter()
            .zip(&other.phi)
            .map(|(a, b)| {
                let d = crate::linalg::direct_sum(a, b);
                &perm * d * perm.transpose()
            })
            .collect();
        TwistedSheaf::new(&self.base, dims, phi)
    }

    /// Conjugates every `Φ_γ` by a fiber-preserving invertible `g`.
    pub fn gauge(&self, g: &CMatrix) -> Result<TwistedSheaf> {
        let inv = g.clone().try_inverse().ok_or_else(|| Error::InvalidInput("gauge is not invertible".into()))?;
        let phi = self.phi.iter().map(|m| g * m * &inv).collect();
        TwistedSheaf::new(&self.base, self.dims.clone(), phi)
    }

    /// The sub-sheaf on a fiber-graded subspace with orthonormal basis `b`.
    fn compress(&self, b: &CMatrix, dims: Vec<usize>) -> TwistedSheaf {
        let phi = self.phi.iter().map(|m| b.adjoint() * m * b).collect();
        TwistedSheaf { base: self.base.clone(), off: offsets(&dims), dims, phi }
    }
}

/// Permutation taking `F ⊕ G` (blockwise by sheaf) to the point-major layout.
fn sum_layout(a: &[usize], b: &[usize]) -> CMatrix {
    let (oa, ob) = (offsets(a), offsets(b));
    let na = oa[a.len()];
    let n = na + ob[b.len()];
    let mut p = CMatrix::zeros(n, n);
    let mut row = 0;
    for s in 0..a.len() {
        for i in 0..a[s] {
            p[(row, oa[s] + i)] = c(1.0, 0.0);
            row += 1;
        }
        for i in 0..b[s] {
            p[(row, na + ob[s] + i)] = c(1.0, 0.0);
            row += 1;
        }
    }
    p
}

#[derive(Clone, Debug, PartialEq)]
pub struct SheafReport {
    /// Largest entry of `Φ_γ` outside the blocks `F(s·γ) → F(s)`.
    pub block_deviation: f64,
    /// Largest `|φ_{γ′}φ_γ − θ(γ′,γ)φ_{γ′γ}|`.
    pub law_deviation: f64,
    pub identity_deviation: f64,
    /// The worst pair `(γ′, γ)` for the law.
    pub witness: Option<(usize, usize)>,
}

impl SheafReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.block_deviation < tol && self.law_deviation < tol && self.identity_deviation < tol
    }
}

pub fn sheaf_validate(f: &TwistedSheaf) -> SheafReport {
    let base = &f.base;
    let g = base.group();
    let n = f.total_dim();
    let mut block: f64 = 0.0;
    for x in g.elements() {
        for s in 0..base.points() {
            let t = base.right(s, x);
            for u in 0..base.points() {
                if u != t && f.dims[s] > 0 && f.dims[u] > 0 {
                    let v = f.phi[x].view((f.off[s], f.off[u]), (f.dims[s], f.dims[u])).into_owned();
                    block = block.max(max_abs(&v));
                }
            }
        }
    }
    let mut law: f64 = 0.0;
    let mut witness = None;
    for a in g.elements() {
        for b in g.elements() {
            let d = if n == 0 { 0.0 } else { max_abs_diff(&(&f.phi[a] * &f.phi[b]), &(&f.phi[g.mul(a, b)] * base.algebra.twist(a, b))) };
            if d > law {
                law = d;
                witness = Some((a, b));
            }
        }
    }
    let id = if n == 0 { 0.0 } else { identity_deviation(&f.phi[g.identity()]) };
    SheafReport { block_deviation: block, law_deviation: law, identity_deviation: id, witness }
}

/// A basis of the twisted-equivariant maps `F → F′`, each as a total matrix.
#[derive(Clone, Debug)]
pub struct SheafHom {
    pub basis: Vec<CMatrix>,
}

impl SheafHom {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A subset of `elems` (a subgroup) whose closure is all of it.
fn generating_set(g: &FiniteGroup, elems: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    for &x in elems {
        if !span.contains(&x) {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    gens
}

/// Solved orbit by orbit: a map is fixed by its block at the orbit
/// representative, which must intertwine the stabilizer, and is transported
/// to `x·γ` by `T_{x·γ} = φ′_γ(x)⁻¹ T_x φ_γ(x)`.
pub fn sheaf_hom(f: &TwistedSheaf, f2: &TwistedSheaf, tol: f64) -> Result<SheafHom> {
    if f.base != f2.base {
        return Err(Error::BaseMismatch);
    }
    let base = &f.base;
    let (n, n2) = (f.total_dim(), f2.total_dim());
    let mut basis = Vec::new();
    for o in base.action.orbits_with_stabilizers() {
        let x = o.rep;
        let (d, d2) = (f.dims[x], f2.dims[x]);
        if d == 0 || d2 == 0 {
            continue;
        }
        // Unknown `(r, k)` of T_x sits in column `r·d + k`.
        let stab = generating_set(base.group(), &o.stabilizer);
        let mut m = CMatrix::zeros(stab.len() * d2 * d, d2 * d);
        for (si, &g) in stab.iter().enumerate() {
            let (p, p2) = (f.phi_at(g, x), f2.phi_at(g, x));
            let row0 = si * d2 * d;
            for r in 0..d2 {
                for k in 0..d {
                    let col = r * d + k;
                    for j in 0..d {
                        m[(row0 + r * d + j, col)] += p[(k, j)];
                    }
                    for i in 0..d2 {
                        m[(row0 + i * d + k, col)] -= p2[(i, r)];
                    }
                }
            }
        }
        let ns = null_space(&m, tol);
        if ns.ncols() == 0 {
            continue;
        }
        let movers: Vec<(usize, usize)> = o
            .points
            .iter()
            .map(|&s| (s, base.group().elements().find(|&g| base.right(x, g) == s).expect("s lies in the orbit of x")))
            .collect();
        let mut transports = Vec::with_capacity(movers.len());
        for &(s, g) in &movers {
            let inv = f2.phi_at(g, x).try_inverse().ok_or(Error::NumericalDegeneracy(s))?;
            transports.push((s, inv, f.phi_at(g, x)));
        }
        for j in 0..ns.ncols() {
            let tx = CMatrix::from_fn(d2, d, |r, k| ns[(r * d + k, j)]);
            let mut t = CMatrix::zeros(n2, n);
            for (s, inv, p) in &transports {
                t.view_mut((f2.off[*s], f.off[*s]), (d2, d)).copy_from(&(inv * &tx * p));
            }
            basis.push(t);
        }
    }
    Ok(SheafHom { basis })
}

/// `dim Hom(F, F′)` by characters: at each orbit representative `x` the
/// stabilizer acts on `Hom(F(x), F′(x))` by `T ↦ φ′_γ T φ_γ⁻¹`, where the twists
/// cancel, and the fixed space has dimension `(1/|S|) Σ tr φ′_γ · tr φ_γ⁻¹`.
pub fn sheaf_hom_dim(f: &TwistedSheaf, f2: &TwistedSheaf) -> Result<usize> {
    if f.base != f2.base {
        return Err(Error::BaseMismatch);
    }
    let mut total = 0;
    for o in f.base.action.orbits_with_stabilizers() {
        let x = o.rep;
        if f.dims[x] == 0 || f2.dims[x] == 0 {
            continue;
        }
        let mut sum = c(0.0, 0.0);
        for &g in &o.stabilizer {
            let inv = inverse(&f.phi_at(g, x))?;
            sum += f2.phi_at(g, x).trace() * inv.trace();
        }
        let avg = sum / o.stabilizer.len() as f64;
        let k = avg.re.round();
        if (avg - c(k, 0.0)).norm() > 1e-6 || k < 0.0 {
            return Err(Error::NumericalDegeneracy(x));
        }
        total += k as usize;
    }
    Ok(total)
}

/// `q*`: the fibers, forgetting the descent data.
pub fn forget_q(f: &TwistedSheaf) -> Vec<usize> {
    f.dims.clone()
}

/// Index of `(s, γ, i)` in the total space of `I(E)`; the fiber at `s` is
/// `⊕_γ E(s·γ)` in group order.
struct InducedLayout {
    slot: Vec<Vec<usize>>,
    total: usize,
}

impl InducedLayout {
    fn new(base: &OrbifoldModel, e: &[usize]) -> InducedLayout {
        let mut slot = Vec::with_capacity(base.points());
        let mut t = 0;
        for s in 0..base.points() {
            let mut row = Vec::with_capacity(base.group().order());
            for g in base.group().elements() {
                row.push(t);
                t += e[base.right(s, g)];
            }
            slot.push(row);
        }
        InducedLayout { slot, total: t }
    }
}

/// `I(E)` with fibers `⊕_γ E(s·γ)` and `φ_{γ₁}` sending the `γ` summand to
/// the `γ₁γ` summand with weight `θ(γ₁, γ)`.
pub fn induce_i(base: &OrbifoldModel, e: &[usize]) -> Result<TwistedSheaf> {
    if e.len() != base.points() {
        return Err(Error::InvalidInput(format!("need {} fiber dimensions, got {}", base.points(), e.len())));
    }
    let g = base.group();
    let lay = InducedLayout::new(base, e);
    let dims: Vec<usize> = (0..base.points()).map(|s| g.elements().map(|x| e[base.right(s, x)]).sum()).collect();
    let phi = g
        .elements()
        .map(|g1| {
            let mut m = CMatrix::zeros(lay.total, lay.total);
            for s in 0..base.points() {
                let src = base.right(s, g1);
                for x in g.elements() {
                    let w = base.algebra.twist(g1, x);
                    let (row, col) = (lay.slot[s][g.mul(g1, x)], lay.slot[src][x]);
                    for i in 0..e[base.right(src, x)] {
                        m[(row + i, col + i)] = w;
                    }
                }
            }
            m
        })
        .collect();
    TwistedSheaf::new(base, dims, phi)
}

/// Unit of `q* ⊣ I`: `η(v) = Σ_γ Φ_γ⁻¹ v` placed in the `γ` summand.
fn unit_q_i(f: &TwistedSheaf) -> Result<CMatrix> {
    let base = &f.base;
    let g = base.group();
    let lay = InducedLayout::new(base, &f.dims);
    let mut eta = CMatrix::zeros(lay.total, f.total_dim());
    for x in g.elements() {
        for s in 0..base.points() {
            let t = base.right(s, x);
            // Φ_γ is block-monomial, so Φ_γ⁻¹ restricted to F(s) is φ_γ(s)⁻¹.
            let inv = inverse(&f.phi_at(x, s))?;
            for j in 0..f.dims[s] {
                for k in 0..f.dims[t] {
                    eta[(lay.slot[s][x] + k, f.off[s] + j)] = inv[(k, j)];
                }
            }
        }
    }
    Ok(eta)
}

/// Counit of `I ⊣ q*`: `(s, γ, w) ↦ φ_γ(s) w`.
fn counit_i_q(f: &TwistedSheaf) -> CMatrix {
    let base = &f.base;
    let lay = InducedLayout::new(base, &f.dims);
    let mut eps = CMatrix::zeros(f.total_dim(), lay.total);
    for x in base.group().elements() {
        for s in 0..base.points() {
            let t = base.right(s, x);
            for k in 0..f.dims[t] {
                for i in 0..f.dims[s] {
                    eps[(f.off[s] + i, lay.slot[s][x] + k)] = f.phi[x][(f.off[s] + i, f.off[t] + k)];
                }
            }
        }
    }
    eps
}

/// Plain counit of `q* ⊣ I`: projection of `q* I E` onto the identity summand.
fn counit_q_i(base: &OrbifoldModel, e: &[usize]) -> CMatrix {
    let lay = InducedLayout::new(base, e);
    let off = offsets(e);
    let id = base.group().identity();
    let mut m = CMatrix::zeros(off[e.len()], lay.total);
    for s in 0..base.points() {
        for i in 0..e[s] {
            m[(off[s] + i, lay.slot[s][id] + i)] = c(1.0, 0.0);
        }
    }
    m
}

/// Plain unit of `I ⊣ q*`: inclusion of `E` as the identity summand.
fn unit_i_q(base: &OrbifoldModel, e: &[usize]) -> CMatrix {
    counit_q_i(base, e).transpose()
}

/// `I(f)` for a fiber-preserving plain map `f: E → E′`.
fn induce_map(base: &OrbifoldModel, e: &[usize], e2: &[usize], f: &CMatrix) -> CMatrix {
    let (lay, lay2) = (InducedLayout::new(base, e), InducedLayout::new(base, e2));
    let (off, off2) = (offsets(e), offsets(e2));
    let mut m = CMatrix::zeros(lay2.total, lay.total);
    for s in 0..base.points() {
        for x in base.group().elements() {
            let t = base.right(s, x);
            for a in 0..e2[t] {
                for b in 0..e[t] {
                    m[(lay2.slot[s][x] + a, lay.slot[s][x] + b)] = f[(off2[t] + a, off[t] + b)];
                }
            }
        }
    }
    m
}

fn inverse(m: &CMatrix) -> Result<CMatrix> {
    if m.nrows() == 0 {
        return Ok(m.clone());
    }
    m.clone().try_inverse().ok_or_else(|| Error::InvalidInput("descent map is not invertible".into()))
}

/// Largest `|t Φ_γ − Φ′_γ t|` over generators of `Γ`; both sheaves obey the
/// same twisted law, so this bounds the failure on all of `Γ`.
fn equivariance_deviation(t: &CMatrix, f: &TwistedSheaf, f2: &TwistedSheaf) -> f64 {
    if t.is_empty() {
        return 0.0;
    }
    let g = f.base.group();
    let all: Vec<usize> = g.elements().collect();
    generating_set(g, &all).into_iter().map(|x| max_abs_diff(&f.right_mul(x, t), &f2.left_mul(x, t))).fold(0.0, f64::max)
}

fn dev_from_identity(m: &CMatrix) -> f64 {
    if m.is_empty() {
        0.0
    } else {
        identity_deviation(m)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AdjunctionReport {
    pub sheaves_tested: usize,
    pub pairs_tested: usize,
    /// Pairs whose equivariant and plain Hom dimensions disagree.
    pub dimension_mismatches: Vec<String>,
    pub triangle_deviation: f64,
    pub equivariance_deviation: f64,
    /// `|ε̂∘η − id|` with the counit scaled by `1/|Γ|`.
    pub split_deviation: f64,
    pub idempotent_deviation: f64,
    /// Sheaves whose idempotent on `I q* F` did not have rank `dim F`.
    pub rank_failures: usize,
}

impl AdjunctionReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.dimension_mismatches.is_empty()
            && self.rank_failures == 0
            && self.triangle_deviation < tol
            && self.equivariance_deviation < tol
            && self.split_deviation < tol
            && self.idempotent_deviation < tol
    }

    fn absorb(&mut self, other: &AdjunctionReport) {
        self.sheaves_tested += other.sheaves_tested;
        self.pairs_tested += other.pairs_tested;
        self.dimension_mismatches.extend(other.dimension_mismatches.iter().cloned());
        self.triangle_deviation = self.triangle_deviation.max(other.triangle_deviation);
        self.equivariance_deviation = self.equivariance_deviation.max(other.equivariance_deviation);
        self.split_deviation = self.split_deviation.max(other.split_deviation);
        self.idempotent_deviation = self.idempotent_deviation.max(other.idempotent_deviation);
        self.rank_failures += other.rank_failures;
    }
}

/// Both adjunctions between `q*` and `I`, checked on one sheaf `F` and one
/// plain sheaf `E`.
pub fn adjunction_pair(f: &TwistedSheaf, e: &[usize]) -> Result<AdjunctionReport> {
    let ie = induce_i(&f.base, e)?;
    let mut rep = sheaf_side(f)?;
    rep.absorb(&plain_side(&f.base, e, &ie)?);
    rep.absorb(&hom_side(f, e, &ie)?);
    rep.pairs_tested = 1;
    Ok(rep)
}

/// `Hom(F, I E)` and `Hom(I E, F)` against the plain `Hom(q* F, E)`.
fn hom_side(f: &TwistedSheaf, e: &[usize], ie: &TwistedSheaf) -> Result<AdjunctionReport> {
    let mut rep = AdjunctionReport::default();
    let plain: usize = f.dims.iter().zip(e).map(|(a, b)| a * b).sum();
    let into = sheaf_hom_dim(f, ie)?;
    let out_of = sheaf_hom_dim(ie, f)?;
    if into != plain || out_of != plain {
        rep.dimension_mismatches.push(format!("dims {:?} / {:?}: Hom(F,IE)={into}, Hom(IE,F)={out_of}, plain={plain}", f.dims, e));
    }
    Ok(rep)
}

/// The two triangle identities evaluated at the plain sheaf `E`.
fn plain_side(base: &OrbifoldModel, e: &[usize], ie: &TwistedSheaf) -> Result<AdjunctionReport> {
    let triangle = [
        // q* ⊣ I
        dev_from_identity(&(induce_map(base, &ie.dims, e, &counit_q_i(base, e)) * unit_q_i(ie)?)),
        // I ⊣ q*
        dev_from_identity(&(counit_i_q(ie) * induce_map(base, e, &ie.dims, &unit_i_q(base, e)))),
    ];
    Ok(AdjunctionReport { triangle_deviation: triangle.into_iter().fold(0.0, f64::max), ..Default::default() })
}

/// The triangle identities at `F`, equivariance of the units and counits,
/// and the split of `F` off `I q* F`.
fn sheaf_side(f: &TwistedSheaf) -> Result<AdjunctionReport> {
    let base = &f.base;
    let mut rep = AdjunctionReport::default();
    let eta_f = unit_q_i(f)?;
    let iqf = induce_i(base, &f.dims)?;
    let eps_f = counit_i_q(f);
    rep.equivariance_deviation = equivariance_deviation(&eta_f, f, &iqf).max(equivariance_deviation(&eps_f, &iqf, f));
    rep.triangle_deviation =
        dev_from_identity(&(counit_q_i(base, &f.dims) * &eta_f)).max(dev_from_identity(&(&eps_f * unit_i_q(base, &f.dims))));

    let scale = c(1.0 / base.group().order() as f64, 0.0);
    let eps_hat = &eps_f * scale;
    rep.split_deviation = dev_from_identity(&(&eps_hat * &eta_f));
    let idem = &eta_f * &eps_hat;
    if !idem.is_empty() {
        rep.idempotent_deviation = max_abs_diff(&(&idem * &idem), &idem);
        rep.equivariance_deviation = rep.equivariance_deviation.max(equivariance_deviation(&idem, &iqf, &iqf));
        let trace = idem.trace().re;
        if (trace - f.total_dim() as f64).abs() > 1e-6 {
            rep.rank_failures += 1;
        }
    }
    Ok(rep)
}

/// Runs [`adjunction_pair`] over a battery: every basic mobile `I(δ_x)`,
/// their irreducible summands, a random gauge of each summand, and plain
/// sheaves `δ_x` plus one random fiber vector.
pub fn adjunction_check(base: &OrbifoldModel, seed: u64) -> Result<AdjunctionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = base.points();
    let delta = |x: usize| (0..pts).map(|y| usize::from(x == y)).collect::<Vec<_>>();
    let mut sheaves = vec![TwistedSheaf::zero(base)];
    for o in base.action.orbits_with_stabilizers() {
        let mobile = induce_i(base, &delta(o.rep))?;
        for part in decompose(&mobile, seed)? {
            let g = random_gauge(&part.sheaf, &mut rng);
            sheaves.push(part.sheaf.gauge(&g)?);
            sheaves.push(part.sheaf);
        }
        sheaves.push(mobile);
    }
    let mut plains: Vec<Vec<usize>> = (0..pts).map(delta).collect();
    plains.push((0..pts).map(|_| rng.gen_range(0..=2)).collect());
    let induced = plains.iter().map(|e| induce_i(base, e)).collect::<Result<Vec<_>>>()?;

    let mut rep = AdjunctionReport { sheaves_tested: sheaves.len(), ..Default::default() };
    for (e, ie) in plains.iter().zip(&induced) {
        rep.absorb(&plain_side(base, e, ie)?);
    }
    for f in &sheaves {
        rep.absorb(&sheaf_side(f)?);
        for (e, ie) in plains.iter().zip(&induced) {
            rep.absorb(&hom_side(f, e, ie)?);
            rep.pairs_tested += 1;
        }
    }
    Ok(rep)
}

/// A random invertible map preserving every fiber.
pub fn random_gauge<R: Rng>(f: &TwistedSheaf, rng: &mut R) -> CMatrix {
    let n = f.total_dim();
    let mut g = CMatrix::identity(n, n);
    for s in 0..f.dims.len() {
        for i in 0..f.dims[s] {
            for j in 0..f.dims[s] {
                g[(f.off[s] + i, f.off[s] + j)] += random_complex(rng) * 0.5;
            }
        }
    }
    g
}

/// `Σ_γ Φ_γ† Φ_γ`, positive and fiber-preserving; its square root makes the
/// descent data unitary.
fn unitarizer(f: &TwistedSheaf) -> CMatrix {
    let n = f.total_dim();
    let mut m = CMatrix::zeros(n, n);
    for p in &f.phi {
        m += p.adjoint() * p;
    }
    let eig = m.symmetric_eigen();
    let sqrt = DVector::from_iterator(n, eig.eigenvalues.iter().map(|&l| c(l.max(0.0).sqrt(), 0.0)));
    let u = &eig.eigenvectors;
    u * CMatrix::from_diagonal(&sqrt) * u.adjoint()
}

#[derive(Clone, Debug)]
pub struct SheafSummand {
    pub sheaf: TwistedSheaf,
    pub multiplicity: usize,
}

/// Irreducible summands up to isomorphism, in order of first appearance.
pub fn decompose(f: &TwistedSheaf, seed: u64) -> Result<Vec<SheafSummand>> {
    if f.total_dim() == 0 {
        return Ok(Vec::new());
    }
    let tol = 1e-9;
    let fu = f.gauge(&unitarizer(f))?;
    let end = sheaf_hom(&fu, &fu, tol)?.basis;
    for attempt in 0..=RESEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let n = fu.total_dim();
        let mut h = CMatrix::zeros(n, n);
        for b in &end {
            let z = random_complex(&mut rng);
            h += b * z + b.adjoint() * z.conj();
        }
        let Some(spaces) = hermitian_eigenspaces(&h, 1e-9, 1e-6) else { continue };
        let mut parts: Vec<SheafSummand> = Vec::new();
        let mut ok = true;
        for w in spaces {
            let (basis, dims) = graded_basis(&fu, &w);
            let sub = fu.compress(&basis, dims);
            if sheaf_hom_dim(&sub, &sub)? != 1 {
                ok = false;
                break;
            }
            match parts.iter_mut().find(|p| sheaf_hom_dim(&p.sheaf, &sub).unwrap_or(0) == 1) {
                Some(p) => p.multiplicity += 1,
                None => parts.push(SheafSummand { sheaf: sub, multiplicity: 1 }),
            }
        }
        if ok {
            return Ok(parts);
        }
    }
    Err(Error::NumericalDegeneracy(RESEEDS))
}

/// Orthonormal basis of a fiber-graded subspace, fiber by fiber.
fn graded_basis(f: &TwistedSheaf, w: &CMatrix) -> (CMatrix, Vec<usize>) {
    let mut cols = Vec::new();
    let mut dims = Vec::with_capacity(f.dims.len());
    for s in 0..f.dims.len() {
        let pw = block_projector(&f.off, s) * w;
        let svd = pw.svd(true, false);
        let u = svd.u.expect("left singular vectors");
        let mut r = 0;
        for (i, &sv) in svd.singular_values.iter().enumerate() {
            if sv > 1e-6 {
                cols.push(u.column(i).into_owned());
                r += 1;
            }
        }
        dims.push(r);
    }
    (CMatrix::from_columns(&cols), dims)
}

/// Orbits (by index) on which the sheaf has a nonzero fiber.
pub fn support(f: &TwistedSheaf) -> Vec<usize> {
    let orbit = f.base.orbit_of();
    let set: BTreeSet<usize> = (0..f.dims.len()).filter(|&s| f.dims[s] > 0).map(|s| orbit[s]).collect();
    set.into_iter().collect()
}

/// Points with a nonzero fiber of a plain sheaf.
pub fn plain_support(e: &[usize]) -> Vec<usize> {
    (0..e.len()).filter(|&s| e[s] > 0).collect()
}

/// `supp I(E)` is the image of `supp E` and `supp q*F` is the preimage of
/// `supp F`.
pub fn support_laws_hold(f: &TwistedSheaf, e: &[usize]) -> Result<bool> {
    let base = &f.base;
    let orbit = base.orbit_of();
    let ie = induce_i(base, e)?;
    let image: BTreeSet<usize> = plain_support(e).into_iter().map(|s| orbit[s]).collect();
    let induced_ok = support(&ie) == image.into_iter().collect::<Vec<_>>();
    let supp_f: BTreeSet<usize> = support(f).into_iter().collect();
    let preimage: Vec<usize> = (0..base.points()).filter(|s| supp_f.contains(&orbit[*s])).collect();
    Ok(induced_ok && plain_support(&forget_q(f)) == preimage)
}

/// `vdim F(x) / |Γ_x|`.
pub fn sheaf_dimension(f: &TwistedSheaf, point: usize) -> Result<Rational64> {
    if point >= f.dims.len() || f.dims[point] == 0 {
        return Err(Error::NotInSupport(point));
    }
    Ok(Rational64::new(f.dims[point] as i64, f.base.action.stabilizer(point).len() as i64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralSimple {
    pub name: String,
    pub dim: usize,
    /// The point `j ∈ {0, …, ⌊n/2⌋}` of `ℤ/n` modulo `±`.
    pub support: usize,
    pub stabilizer_order: usize,
    /// `vdim / (|orbit| · |stabilizer|)`.
    pub sheaf_dim: Rational64,
}

/// `Rep(D_n)` as sheaves over the dual `ℤ/n` modulo `j ↦ −j`.
#[derive(Clone, Debug)]
pub struct DihedralModel {
    pub n: usize,
    pub ring: FusionRing,
    pub simples: Vec<DihedralSimple>,
}

/// Builds the ring from numerically computed characters of the dihedral
/// group of order `2n`, rounded to integers.
pub fn dihedral_model(n: usize) -> Result<DihedralModel> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need n ≥ 3, got {n}")));
    }
    if n > MAX_DIHEDRAL {
        return Err(Error::TooLarge { what: "dihedral n".into(), size: n as u64, limit: MAX_DIHEDRAL as u64 });
    }
    let g = FiniteGroup::dihedral(n)?;
    let classes = irreducible_classes(&TwistedAlgebra::untwisted(&g), DEFAULT_SEED)?;
    let (r, s) = (1, n);
    let mut tagged: Vec<(DihedralSimple, Vec<Complex64>)> = classes
        .into_iter()
        .map(|cl| {
            let chi = cl.character.clone();
            let simple = if cl.dim == 1 {
                let (at_r, at_s) = (chi[r].re > 0.0, chi[s].re > 0.0);
                let (name, support) = match (at_r, at_s) {
                    (true, true) => ("triv".to_string(), 0),
                    (true, false) => ("sgn".to_string(), 0),
                    (false, true) => ("alt+".to_string(), n / 2),
                    (false, false) => ("alt-".to_string(), n / 2),
                };
                DihedralSimple { name, dim: 1, support, stabilizer_order: 2, sheaf_dim: Rational64::new(1, 2) }
            } else {
                let angle = (chi[r].re / 2.0).clamp(-1.0, 1.0).acos();
                let j = (angle * n as f64 / std::f64::consts::TAU).round() as usize;
                DihedralSimple {
                    name: format!("rho{j}"),
                    dim: cl.dim,
                    support: j,
                    stabilizer_order: 1,
                    sheaf_dim: Rational64::new(cl.dim as i64, 2),
                }
            };
            (simple, chi)
        })
        .collect();
    let rank_key = |d: &DihedralSimple| match d.name.as_str() {
        "triv" => (0, 0),
        "sgn" => (1, 0),
        "alt+" => (2, 0),
        "alt-" => (3, 0),
        _ => (4, d.support),
    };
    tagged.sort_by_key(|(d, _)| rank_key(d));
    let k = tagged.len();
    let order = g.order() as f64;
    let mut triples = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let v: Complex64 = g.elements().map(|x| tagged[i].1[x] * tagged[j].1[x] * tagged[l].1[x].conj()).sum::<Complex64>() / order;
                let m = v.re.round();
                if (v - c(m, 0.0)).norm() > 1e-6 || m < 0.0 {
                    return Err(Error::NumericalDegeneracy(0));
                }
                if m > 0.0 {
                    triples.push((i, j, l, m as u32));
                }
            }
        }
    }
    let dual = (0..k)
        .map(|i| {
            (0..k)
                .find(|&j| g.elements().all(|x| (tagged[j].1[x] - tagged[i].1[x].conj()).norm() < 1e-6))
                .ok_or(Error::NumericalDegeneracy(0))
        })
        .collect::<Result<Vec<_>>>()?;
    let ring = FusionRing::new(k, &triples, dual)?;
    Ok(DihedralModel { n, ring, simples: tagged.into_iter().map(|(d, _)| d).collect() })
}

impl DihedralModel {
    pub fn index(&self, name: &str) -> Option<usize> {
        self.simples.iter().position(|d| d.name == name)
    }

    /// The basic mobile at a support point: the sum of the simples over it.
    pub fn mobile(&self, point: usize) -> Vec<i64> {
        self.simples.iter().map(|d| i64::from(d.support == point)).collect()
    }

    fn unit_vector(&self, i: usize) -> Vec<i64> {
        (0..self.simples.len()).map(|j| i64::from(i == j)).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MobileReport {
    pub mobile_square_ok: bool,
    /// Simples `X` with `𝕆·X ≠ 2·dim X·𝕆_{supp X}`.
    pub mobile_product_failures: Vec<String>,
    pub unit_dim: Rational64,
    /// Simple mobiles whose `X^∨·X` is not one copy of `𝕆` plus a part
    /// supported away from the unit.
    pub dual_square_failures: Vec<String>,
}

impl MobileReport {
    pub fn passes(&self) -> bool {
        self.mobile_square_ok
            && self.mobile_product_failures.is_empty()
            && self.dual_square_failures.is_empty()
            && self.unit_dim == Rational64::new(1, 2)
    }
}

pub fn mobile_identities_check(m: &DihedralModel) -> MobileReport {
    let r = &m.ring;
    let o = m.mobile(0);
    let scale = |v: &[i64], k: i64| v.iter().map(|x| x * k).collect::<Vec<_>>();
    let mobile_square_ok = r.multiply(&o, &o) == scale(&o, 2);
    let mut mobile_product_failures = Vec::new();
    let mut dual_square_failures = Vec::new();
    for (i, x) in m.simples.iter().enumerate() {
        let two_dim = x.sheaf_dim * 2;
        let ok = two_dim.is_integer() && r.multiply(&o, &m.unit_vector(i)) == scale(&m.mobile(x.support), two_dim.to_integer());
        if !ok {
            mobile_product_failures.push(x.name.clone());
        }
        if x.stabilizer_order == 1 {
            let sq = r.multiply(&m.unit_vector(r.dual(i)), &m.unit_vector(i));
            let rest: Vec<i64> = sq.iter().zip(&o).map(|(a, b)| a - b).collect();
            let at_unit_clean = m.simples.iter().zip(&rest).all(|(d, &v)| v >= 0 && (d.support != 0 || v == 0));
            if !at_unit_clean {
                dual_square_failures.push(x.name.clone());
            }
        }
    }
    let unit_dim = m.simples[0].sheaf_dim;
    MobileReport { mobile_square_ok, mobile_product_failures, unit_dim, dual_square_failures }
}

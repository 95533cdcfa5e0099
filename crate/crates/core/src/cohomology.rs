//! Normalized bar cochains of a finite group with values in ℚ/ℤ.
//!
//! The differential is the alternating one,
//! `(dc)(g₁,…,g_{n+1}) = c(g₂,…) + Σᵢ (−1)ⁱ c(…,gᵢg_{i+1},…) + (−1)^{n+1} c(g₁,…,g_n)`,
//! so a 2-cochain `θ` is closed exactly when
//! `θ(g,h) + θ(gh,k) = θ(h,k) + θ(g,hk)`.
//!
//! Cohomology is computed from the integer matrix `D_n` of `d_n` restricted
//! to normalized cochains. Since ℚ/ℤ is divisible, `H^n(G; ℚ/ℤ)` is the
//! torsion of `coker D_nᵀ`, read off the Smith form of `D_n`.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::phase::Phase;
use crate::snf::{smith, IntMatrix};

/// Size limits for cochain tables.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Upper bound on `|G|^(n+1)` for a degree `n` computation.
    pub table_entries: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { table_entries: 5000 }
    }
}

impl Limits {
    fn check(&self, g: &FiniteGroup, n: usize) -> Result<()> {
        let size = (g.order() as u64).checked_pow(n as u32 + 1).unwrap_or(u64::MAX);
        if size > self.table_entries {
            return Err(Error::TooLarge { what: format!("|G|^{} cochain table", n + 1), size, limit: self.table_entries });
        }
        Ok(())
    }
}

/// A dense map `Gⁿ → ℚ/ℤ`, first argument most significant in the index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    group: FiniteGroup,
    degree: usize,
    values: Vec<Phase>,
}

fn tuple_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &g| acc * n + g)
}

fn index_tuple(n: usize, degree: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for slot in t.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

impl Cochain {
    pub fn zero(group: &FiniteGroup, degree: usize) -> Cochain {
        Cochain { group: group.clone(), degree, values: vec![Phase::ZERO; group.order().pow(degree as u32)] }
    }

    /// Tabulates `f`; values on tuples containing the identity are forced to 0.
    pub fn from_fn(group: &FiniteGroup, degree: usize, mut f: impl FnMut(&[usize]) -> Phase) -> Cochain {
        let mut c = Cochain::zero(group, degree);
        let e = group.identity();
        for i in 0..c.values.len() {
            let t = index_tuple(group.order(), degree, i);
            if !t.contains(&e) {
                c.values[i] = f(&t);
            }
        }
        c
    }

    /// Builds from a full table, rejecting tables that are not normalized.
    pub fn from_values(group: &FiniteGroup, degree: usize, values: Vec<Phase>) -> Result<Cochain> {
        if values.len() != group.order().pow(degree as u32) {
            return Err(Error::InvalidInput(format!("expected {} values", group.order().pow(degree as u32))));
        }
        let c = Cochain { group: group.clone(), degree, values };
        c.check_normalized()?;
        Ok(c)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Phase] {
        &self.values
    }

    #[inline]
    pub fn get(&self, args: &[usize]) -> Phase {
        debug_assert_eq!(args.len(), self.degree);
        self.values[tuple_index(self.group.order(), args)]
    }

    /// Sets one entry. Entries on tuples containing the identity must stay 0.
    pub fn set(&mut self, args: &[usize], v: Phase) -> Result<()> {
        if args.len() != self.degree {
            return Err(Error::InvalidInput("argument count differs from degree".into()));
        }
        if args.contains(&self.group.identity()) && !v.is_zero() {
            return Err(Error::NotNormalized(args.to_vec()));
        }
        let n = self.group.order();
        self.values[tuple_index(n, args)] = v;
        Ok(())
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let n = self.group.order();
        (0..self.values.len()).map(move |i| index_tuple(n, self.degree, i))
    }

    pub fn check_normalized(&self) -> Result<()> {
        let e = self.group.identity();
        for (t, v) in self.tuples().zip(&self.values) {
            if t.contains(&e) && !v.is_zero() {
                return Err(Error::NotNormalized(t));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if self.group != other.group || self.degree != other.degree {
            return Err(Error::GroupMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| *a + *b).collect();
        Ok(Cochain { group: self.group.clone(), degree: self.degree, values })
    }

    pub fn scale(&self, k: i64) -> Cochain {
        Cochain { group: self.group.clone(), degree: self.degree, values: self.values.iter().map(|v| *v * k).collect() }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(-1)
    }
}

/// The bar differential `d c`.
pub fn coboundary(c: &Cochain) -> Result<Cochain> {
    coboundary_with(c, &Limits::default())
}

pub fn coboundary_with(c: &Cochain, limits: &Limits) -> Result<Cochain> {
    let g = &c.group;
    let n = c.degree;
    limits.check(g, n)?;
    let mut out = Cochain::zero(g, n + 1);
    let mut face = vec![0; n];
    for (i, t) in (0..out.values.len()).map(|i| (i, index_tuple(g.order(), n + 1, i))) {
        if t.contains(&g.identity()) {
            continue;
        }
        let mut acc = c.get(&t[1..]);
        for k in 0..n {
            face.clear();
            face.extend_from_slice(&t[..k]);
            face.push(g.mul(t[k], t[k + 1]));
            face.extend_from_slice(&t[k + 2..]);
            let v = c.get(&face);
            // the face index is k+1 in the usual numbering
            if k % 2 == 0 {
                acc -= v;
            } else {
                acc += v;
            }
        }
        let last = c.get(&t[..n]);
        if n.is_multiple_of(2) {
            acc -= last;
        } else {
            acc += last;
        }
        out.values[i] = acc;
    }
    Ok(out)
}

/// First tuple where `d c` is nonzero, if any.
pub fn cocycle_violation(c: &Cochain) -> Result<Option<Vec<usize>>> {
    let d = coboundary(c)?;
    let hit = d.tuples().zip(d.values()).find(|(_, v)| !v.is_zero()).map(|(t, _)| t);
    Ok(hit)
}

pub fn is_cocycle(c: &Cochain) -> Result<bool> {
    Ok(cocycle_violation(c)?.is_none())
}

pub(crate) fn require_cocycle(c: &Cochain) -> Result<()> {
    c.check_normalized()?;
    match cocycle_violation(c)? {
        Some(t) => Err(Error::NotACocycle(t)),
        None => Ok(()),
    }
}

/// Normalized tuples: all entries non-identity, in lexicographic order.
struct NormalizedBasis {
    nonid: Vec<usize>,
    pos: Vec<usize>,
}

impl NormalizedBasis {
    fn new(g: &FiniteGroup) -> NormalizedBasis {
        let nonid: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &x) in nonid.iter().enumerate() {
            pos[x] = i;
        }
        NormalizedBasis { nonid, pos }
    }

    fn count(&self, degree: usize) -> usize {
        self.nonid.len().pow(degree as u32)
    }

    fn tuple(&self, degree: usize, idx: usize) -> Vec<usize> {
        index_tuple(self.nonid.len(), degree, idx).into_iter().map(|i| self.nonid[i]).collect()
    }

    fn index(&self, t: &[usize]) -> Option<usize> {
        let m = self.nonid.len();
        t.iter().try_fold(0, |acc, &g| match self.pos[g] {
            usize::MAX => None,
            p => Some(acc * m + p),
        })
    }
}

/// Integer matrix of `d_n` on normalized cochains: rows are normalized
/// `(n+1)`-tuples, columns normalized `n`-tuples.
fn differential_matrix(g: &FiniteGroup, basis: &NormalizedBasis, n: usize) -> IntMatrix {
    let rows = basis.count(n + 1);
    let cols = basis.count(n);
    let mut d = IntMatrix::zeros(rows, cols);
    let mut face = Vec::with_capacity(n);
    for r in 0..rows {
        let t = basis.tuple(n + 1, r);
        if let Some(c) = basis.index(&t[1..]) {
            d.add_to(r, c, 1);
        }
        for k in 0..n {
            face.clear();
            face.extend_from_slice(&t[..k]);
            face.push(g.mul(t[k], t[k + 1]));
            face.extend_from_slice(&t[k + 2..]);
            if let Some(c) = basis.index(&face) {
                d.add_to(r, c, if k % 2 == 0 { -1 } else { 1 });
            }
        }
        if let Some(c) = basis.index(&t[..n]) {
            d.add_to(r, c, if n.is_multiple_of(2) { -1 } else { 1 });
        }
    }
    d
}

fn scale_phase(p: Phase, k: i128) -> Phase {
    p * (k.rem_euclid(p.den() as i128) as i64)
}

/// `Hⁿ(G; ℚ/ℤ)` as invariant factors with representing cocycles.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub invariant_factors: Vec<i64>,
    pub generators: Vec<Cochain>,
}

pub fn cohomology_group(g: &FiniteGroup, n: usize) -> Result<CohomologyGroup> {
    cohomology_group_with(g, n, &Limits::default())
}

pub fn cohomology_group_with(g: &FiniteGroup, n: usize, limits: &Limits) -> Result<CohomologyGroup> {
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    limits.check(g, n)?;
    let basis = NormalizedBasis::new(g);
    let d = differential_matrix(g, &basis, n);
    let s = smith(&d, false, true)?;
    let q = s.q.as_ref().expect("tracked");
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    for (i, &si) in s.diag.iter().enumerate() {
        if si <= 1 {
            continue;
        }
        let den = i64::try_from(si).map_err(|_| Error::Unsupported("invariant factor overflow".into()))?;
        let mut c = Cochain::zero(g, n);
        for row in 0..q.rows() {
            let t = basis.tuple(n, row);
            let v = scale_phase(Phase::new(1, den), q.get(row, i));
            c.values[tuple_index(g.order(), &t)] = v;
        }
        invariant_factors.push(den);
        generators.push(c);
    }
    Ok(CohomologyGroup { invariant_factors, generators })
}

/// A cochain `κ` with `dκ = target`, or `None` when the class of `target`
/// is nontrivial.
pub fn solve_coboundary(target: &Cochain) -> Result<Option<Cochain>> {
    solve_coboundary_with(target, &Limits::default())
}

pub fn solve_coboundary_with(target: &Cochain, limits: &Limits) -> Result<Option<Cochain>> {
    let g = &target.group;
    let n = target.degree;
    if n == 0 {
        return Err(Error::InvalidInput("degree 0 cochains are not coboundaries".into()));
    }
    limits.check(g, n)?;
    require_cocycle(target)?;
    if target.is_zero() {
        return Ok(Some(Cochain::zero(g, n - 1)));
    }
    let basis = NormalizedBasis::new(g);
    let d = differential_matrix(g, &basis, n - 1);
    let s = smith(&d, true, true)?;
    let (p, q) = (s.p.as_ref().expect("tracked"), s.q.as_ref().expect("tracked"));

    let t: Vec<Phase> = (0..basis.count(n)).map(|r| target.get(&basis.tuple(n, r))).collect();
    // P·t in ℚ/ℤ
    let pt: Vec<Phase> = (0..p.rows()).map(|i| (0..p.cols()).map(|j| scale_phase(t[j], p.get(i, j))).sum()).collect();
    let mut z = vec![Phase::ZERO; q.rows()];
    for (i, &v) in pt.iter().enumerate() {
        let si = s.diag.get(i).copied().unwrap_or(0);
        if si == 0 {
            if !v.is_zero() {
                return Ok(None);
            }
        } else {
            let si = i64::try_from(si).map_err(|_| Error::Unsupported("diagonal overflow".into()))?;
            z[i] = Phase::new(v.num(), v.den() * si);
        }
    }
    let mut kappa = Cochain::zero(g, n - 1);
    for row in 0..q.rows() {
        let v: Phase = (0..q.cols()).map(|k| scale_phase(z[k], q.get(row, k))).sum();
        let tup = basis.tuple(n - 1, row);
        kappa.values[tuple_index(g.order(), &tup)] = v;
    }
    debug_assert_eq!(coboundary(&kappa).ok().as_ref(), Some(target));
    Ok(Some(kappa))
}

/// Pullback `f*c` along a homomorphism into the cochain's group.
pub fn restrict_cochain(c: &Cochain, f: &GroupHom) -> Result<Cochain> {
    if f.target != c.group {
        return Err(Error::GroupMismatch);
    }
    // re-validate: a GroupHom may have been assembled by hand
    let f = GroupHom::new(&f.source, &f.target, f.map.clone())?;
    let mut image = Vec::with_capacity(c.degree);
    Ok(Cochain::from_fn(&f.source, c.degree, |t| {
        image.clear();
        image.extend(t.iter().map(|&h| f.apply(h)));
        c.get(&image)
    }))
}

/// Lie families whose level classes restrict to finite cyclic subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelFamily {
    Circle,
    Su2,
}

impl FromStr for LevelFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<LevelFamily> {
        match s.to_ascii_lowercase().as_str() {
            "circle" | "u1" => Ok(LevelFamily::Circle),
            "su2" => Ok(LevelFamily::Su2),
            _ => Err(Error::UnsupportedFamily(s.to_string())),
        }
    }
}

/// Class in `H³(ℤ/n; ℚ/ℤ) ≅ ℤ/n` of the level `k` class restricted to the
/// cyclic subgroup of order `n`. Zero means the restriction is trivializable.
pub fn lie_level_restriction(family: LevelFamily, k: i64, n: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("subgroup order {n} must be positive")));
    }
    if family == LevelFamily::Su2 && n != 2 {
        return Err(Error::InvalidInput("the SU(2) restriction is to its centre ℤ/2 only".into()));
    }
    Ok(k.rem_euclid(n))
}

/// The standard cocycle `ω(x,y,z) = a·x·⌊(y+z)/n⌋ / n` on `ℤ/n`, whose class
/// is `a` under `H³(ℤ/n; ℚ/ℤ) ≅ ℤ/n`.
pub fn cyclic_three_cocycle(n: usize, a: i64) -> Result<Cochain> {
    let g = FiniteGroup::cyclic(n)?;
    Ok(Cochain::from_fn(&g, 3, |t| {
        let carry = ((t[1] + t[2]) >= n) as i64;
        Phase::new(a * t[0] as i64 * carry, n as i64)
    }))
}

/// The Klein four 2-cocycle which is `1/2` exactly on `(p,x), (xp,xp),
/// (p,xp), (xp,x)`, with `e, x, p, xp` the elements `0..4` of
/// [`FiniteGroup::klein`]. Its twisted group ring is generated by the Pauli
/// matrices `σ_x ↔ x`, `σ_z ↔ p`.
pub fn klein_cocycle() -> Cochain {
    const X: usize = 1;
    const P: usize = 2;
    const XP: usize = 3;
    Cochain::from_fn(&FiniteGroup::klein(), 2, |t| match (t[0], t[1]) {
        (P, X) | (XP, XP) | (P, XP) | (XP, X) => Phase::HALF,
        _ => Phase::ZERO,
    })
}

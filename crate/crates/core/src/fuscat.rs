//! Skeletal, multiplicity-free fusion rings and their F-symbols.
//!
//! Index convention: `F(a,b,c;d;e,f)` is the matrix entry of the associator
//! `((a⊗b)_e ⊗ c)_d → (a ⊗ (b⊗c)_f)_d`. With it the pentagon reads
//!
//! `F(f,c,d;e;g,l) F(a,b,l;e;f,k) = Σ_h F(a,b,c;g;f,h) F(a,h,d;e;g,k) F(b,c,d;k;h,l)`
//!
//! and for pointed data it is literally the 3-cocycle condition.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;

use crate::cohomology::{require_cocycle, Cochain};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::phase::{FValue, Phase};
use crate::quadform::Bicharacter;

/// Largest rank accepted by the constructors.
pub const MAX_RANK: usize = 64;

/// A based ring with unit `0`, structure constants `N_{ij}^k` and a duality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    rank: usize,
    n: Vec<u32>,
    dual: Vec<usize>,
    dims: Option<Vec<Rational64>>,
}

impl FusionRing {
    /// Builds a ring from sparse `(i, j, k, N_{ij}^k)` triples; the laws are
    /// checked separately by [`ring_verify`].
    pub fn new(rank: usize, triples: &[(usize, usize, usize, u32)], dual: Vec<usize>) -> Result<FusionRing> {
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be positive".into()));
        }
        if rank > MAX_RANK {
            return Err(Error::TooLarge { what: "rank".into(), size: rank as u64, limit: MAX_RANK as u64 });
        }
        if dual.len() != rank || dual.iter().any(|&d| d >= rank) {
            return Err(Error::InvalidInput("dual must map each index into the ring".into()));
        }
        let mut n = vec![0u32; rank * rank * rank];
        for &(i, j, k, m) in triples {
            if i >= rank || j >= rank || k >= rank {
                return Err(Error::InvalidInput(format!("triple ({i}, {j}, {k}) out of range")));
            }
            n[(i * rank + j) * rank + k] = m;
        }
        Ok(FusionRing { rank, n, dual, dims: None })
    }

    pub fn with_dims(mut self, dims: Vec<Rational64>) -> Result<FusionRing> {
        if dims.len() != self.rank || dims.iter().any(|d| *d <= Rational64::from_integer(0)) {
            return Err(Error::InvalidInput("dims must be one positive rational per simple".into()));
        }
        self.dims = Some(dims);
        Ok(self)
    }

    /// The group ring of `g`, simples indexed by group elements.
    pub fn pointed(g: &FiniteGroup) -> FusionRing {
        let triples: Vec<_> = g.elements().flat_map(|a| g.elements().map(move |b| (a, b, g.mul(a, b), 1))).collect();
        let dual = g.elements().map(|a| g.inv(a)).collect();
        let n = g.order();
        FusionRing::new(n, &triples, dual)
            .expect("group ring is well formed")
            .with_dims(vec![Rational64::from_integer(1); n])
            .expect("unit dims")
    }

    /// The Tambara-Yamagami ring on a group of order `n` given by its
    /// addition table; the extra simple is the last index.
    pub fn tambara_yamagami(add: &FiniteGroup) -> FusionRing {
        let n = add.order();
        let m = n;
        let mut triples: Vec<_> = add.elements().flat_map(|a| add.elements().map(move |b| (a, b, add.mul(a, b), 1))).collect();
        for a in 0..n {
            triples.push((a, m, m, 1));
            triples.push((m, a, m, 1));
            triples.push((m, m, a, 1));
        }
        let mut dual: Vec<usize> = add.elements().map(|a| add.inv(a)).collect();
        dual.push(m);
        FusionRing::new(n + 1, &triples, dual).expect("TY ring is well formed")
    }

    /// The truncated Clebsch-Gordan ring of `su(2)` at level `k`; index `l`
    /// stands for spin `l/2`.
    pub fn su2(k: usize) -> Result<FusionRing> {
        let rank = k + 1;
        let mut triples = Vec::new();
        for i in 0..rank {
            for j in 0..rank {
                let hi = (i + j).min(2 * k - i - j);
                for l in (i.abs_diff(j)..=hi).step_by(2) {
                    triples.push((i, j, l, 1));
                }
            }
        }
        FusionRing::new(rank, &triples, (0..rank).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn dims(&self) -> Option<&[Rational64]> {
        self.dims.as_deref()
    }

    /// Nonzero `(k, N_{ij}^k)`.
    pub fn products(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        (0..self.rank).map(move |k| (k, self.n(i, j, k))).filter(|&(_, m)| m > 0)
    }

    /// Nonzero `(i, j, k, N_{ij}^k)` in lexicographic order.
    pub fn triples(&self) -> Vec<(usize, usize, usize, u32)> {
        let r = self.rank;
        (0..r * r * r).filter(|&t| self.n[t] > 0).map(|t| (t / (r * r), (t / r) % r, t % r, self.n[t])).collect()
    }

    pub fn require_multiplicity_free(&self) -> Result<()> {
        match self.triples().into_iter().find(|t| t.3 > 1) {
            Some((i, j, k, mult)) => Err(Error::Multiplicity { i, j, k, mult }),
            None => Ok(()),
        }
    }

    /// Product in the Grothendieck ring, elements given by coefficient vectors.
    pub fn multiply(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        for (i, &a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, b)| **b != 0) {
                for (k, m) in self.products(i, j) {
                    out[k] += a * b * m as i64;
                }
            }
        }
        out
    }

    /// Simples whose product with their dual is the unit alone.
    pub fn invertibles(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| self.products(i, self.dual[i]).map(|(_, m)| m as u64).sum::<u64>() == 1).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingReport {
    /// `(j, k)` with `N_{0j}^k` or `N_{j0}^k` different from `δ_{jk}`.
    pub unit_failures: Vec<(usize, usize)>,
    /// `(i, j, k, l)` where the two bracketings disagree.
    pub associativity_failures: Vec<[usize; 4]>,
    /// `i` with `N_{i,j}^0 ≠ δ_{j,dual(i)}` for some `j`, or `dual(dual(i)) ≠ i`.
    pub duality_failures: Vec<usize>,
    /// `(i, j)` with `Σ_k N_{ij}^k dim_k ≠ dim_i dim_j`.
    pub dim_failures: Vec<(usize, usize)>,
}

impl RingReport {
    pub fn passes(&self) -> bool {
        self.unit_failures.is_empty()
            && self.associativity_failures.is_empty()
            && self.duality_failures.is_empty()
            && self.dim_failures.is_empty()
    }
}

pub fn ring_verify(r: &FusionRing) -> RingReport {
    let n = r.rank;
    let mut rep = RingReport::default();
    for j in 0..n {
        for k in 0..n {
            let want = u32::from(j == k);
            if r.n(0, j, k) != want || r.n(j, 0, k) != want {
                rep.unit_failures.push((j, k));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let left: u64 = (0..n).map(|e| r.n(i, j, e) as u64 * r.n(e, k, l) as u64).sum();
                    let right: u64 = (0..n).map(|f| r.n(j, k, f) as u64 * r.n(i, f, l) as u64).sum();
                    if left != right {
                        rep.associativity_failures.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    for i in 0..n {
        let pairing_ok = (0..n).all(|j| r.n(i, j, 0) == u32::from(j == r.dual[i]));
        if !pairing_ok || r.dual[r.dual[i]] != i {
            rep.duality_failures.push(i);
        }
    }
    if let Some(d) = &r.dims {
        for i in 0..n {
            for j in 0..n {
                let s: Rational64 = (0..n).map(|k| d[k] * Rational64::from_integer(r.n(i, j, k) as i64)).sum();
                if s != d[i] * d[j] {
                    rep.dim_failures.push((i, j));
                }
            }
        }
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityFailure {
    pub object: usize,
    /// Every `j` with `N_{i,j}^0 = N_{j,i}^0 = 1`.
    pub candidates: Vec<usize>,
}

impl fmt::Display for RigidityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "simple {} has dual candidates {:?}", self.object, self.candidates)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RigidityReport {
    pub failures: Vec<RigidityFailure>,
}

impl RigidityReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Each simple must have exactly one two-sided dual, and it must be the
/// recorded one.
pub fn rigidity_check(r: &FusionRing) -> RigidityReport {
    let failures = (0..r.rank)
        .filter_map(|i| {
            let candidates: Vec<usize> = (0..r.rank).filter(|&j| r.n(i, j, 0) == 1 && r.n(j, i, 0) == 1).collect();
            (candidates != [r.dual[i]]).then_some(RigidityFailure { object: i, candidates })
        })
        .collect();
    RigidityReport { failures }
}

/// The overall sign `τ` of a Tambara-Yamagami associator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The phase `0` or `1/2`.
    pub fn phase(self) -> Phase {
        match self {
            Sign::Plus => Phase::ZERO,
            Sign::Minus => Phase::HALF,
        }
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s.trim() {
            "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
            "-" | "-1" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("expected a sign, got {other:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `(a, b, c, d, e, f)` in the order of `F(a,b,c;d;e,f)`.
pub type Sextuple = [usize; 6];

#[derive(Clone, Debug, PartialEq)]
pub struct FusionCategoryData {
    ring: FusionRing,
    f: BTreeMap<Sextuple, FValue>,
}

fn admissible_in(r: &FusionRing, [a, b, c, d, e, f]: Sextuple) -> bool {
    r.n(a, b, e) > 0 && r.n(e, c, d) > 0 && r.n(b, c, f) > 0 && r.n(a, f, d) > 0
}

/// Every admissible sextuple in lexicographic order.
pub fn admissible_sextuples(r: &FusionRing) -> Vec<Sextuple> {
    let n = r.rank;
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        for f in 0..n {
                            if admissible_in(r, [a, b, c, d, e, f]) {
                                out.push([a, b, c, d, e, f]);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

impl FusionCategoryData {
    /// Requires F on exactly the admissible sextuples, unit-normalized, over a
    /// multiplicity-free ring.
    pub fn new(ring: FusionRing, f: BTreeMap<Sextuple, FValue>) -> Result<FusionCategoryData> {
        ring.require_multiplicity_free()?;
        if let Some(s) = f.keys().find(|s| s.iter().any(|&x| x >= ring.rank) || !admissible_in(&ring, **s)) {
            return Err(Error::InvalidInput(format!("F given on non-admissible sextuple {s:?}")));
        }
        for s in admissible_sextuples(&ring) {
            let v = f.get(&s).ok_or_else(|| Error::InvalidInput(format!("F missing on admissible sextuple {s:?}")))?;
            if (s[0] == 0 || s[1] == 0 || s[2] == 0) && *v != FValue::ONE {
                return Err(Error::InvalidInput(format!("F is not unit-normalized at {s:?}")));
            }
        }
        Ok(FusionCategoryData { ring, f })
    }

    fn with_ones(ring: FusionRing) -> FusionCategoryData {
        let f = admissible_sextuples(&ring).into_iter().map(|s| (s, FValue::ONE)).collect();
        FusionCategoryData { ring, f }
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn f(&self, s: Sextuple) -> Option<FValue> {
        self.f.get(&s).copied()
    }

    pub fn f_symbols(&self) -> &BTreeMap<Sextuple, FValue> {
        &self.f
    }

    /// The full subcategory on the invertible simples, reindexed in order.
    pub fn invertible_part(&self) -> FusionCategoryData {
        let inv = self.ring.invertibles();
        let mut pos = vec![usize::MAX; self.ring.rank];
        for (p, &i) in inv.iter().enumerate() {
            pos[i] = p;
        }
        let triples: Vec<_> = self
            .ring
            .triples()
            .into_iter()
            .filter(|t| pos[t.0] != usize::MAX && pos[t.1] != usize::MAX)
            .map(|(i, j, k, m)| (pos[i], pos[j], pos[k], m))
            .collect();
        let dual = inv.iter().map(|&i| pos[self.ring.dual[i]]).collect();
        let mut ring = FusionRing::new(inv.len(), &triples, dual).expect("invertibles close up");
        if let Some(d) = &self.ring.dims {
            ring.dims = Some(inv.iter().map(|&i| d[i]).collect());
        }
        let f = self.f.iter().filter(|(s, _)| s.iter().all(|&x| pos[x] != usize::MAX)).map(|(s, v)| (s.map(|x| pos[x]), *v)).collect();
        FusionCategoryData { ring, f }
    }
}

/// `Vec^ω[G]`: `F(g,h,k;ghk;gh,hk) = ω(g,h,k)`.
pub fn build_pointed(omega: &Cochain) -> Result<FusionCategoryData> {
    if omega.degree() != 3 {
        return Err(Error::InvalidInput(format!("need a 3-cochain, got degree {}", omega.degree())));
    }
    require_cocycle(omega)?;
    Ok(build_pointed_unchecked(omega))
}

fn build_pointed_unchecked(omega: &Cochain) -> FusionCategoryData {
    let g = omega.group();
    let mut c = FusionCategoryData::with_ones(FusionRing::pointed(g));
    for (s, v) in c.f.iter_mut() {
        *v = FValue::from_phase(omega.get(&s[..3]));
    }
    c
}

/// The Tambara-Yamagami category of a symmetric nondegenerate bicharacter;
/// group elements keep their indices and the extra simple is last.
pub fn build_ty(chi: &Bicharacter, tau: Sign) -> Result<FusionCategoryData> {
    if let Some((x, y)) = chi.symmetry_violation() {
        return Err(Error::NotSymmetric(x, y));
    }
    if let Some(x) = chi.kernel_witness() {
        return Err(Error::Degenerate(x));
    }
    let a = chi.group();
    let n = a.order();
    if n + 1 > MAX_RANK {
        return Err(Error::TooLarge { what: "rank".into(), size: n as u64 + 1, limit: MAX_RANK as u64 });
    }
    let m = n;
    let mut c = FusionCategoryData::with_ones(FusionRing::tambara_yamagami(&a.embed()?));
    let inv_order = Rational64::new(1, n as i64);
    for x in 0..n {
        for y in 0..n {
            let v = chi.at(x, y);
            c.f.insert([x, m, y, m, m, m], FValue::from_phase(v));
            c.f.insert([m, x, m, y, m, m], FValue::from_phase(v));
            c.f.insert([m, m, m, m, x, y], FValue { phase: tau.phase() - v, radicand: inv_order });
        }
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PentagonViolation {
    /// `(a, b, c, d, e)`: the four outer objects and the total.
    pub objects: [usize; 5],
    /// `(f, g, l, k)`: `f ∈ a⊗b`, `g ∈ f⊗c`, `l ∈ c⊗d`, `k ∈ b⊗l`.
    pub labels: [usize; 4],
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PentagonReport {
    pub instances: usize,
    pub violations: Vec<PentagonViolation>,
}

impl PentagonReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

fn eval_or_zero(v: Option<FValue>) -> Complex64 {
    v.map_or(Complex64::new(0.0, 0.0), FValue::eval)
}

fn product(vs: &[Option<FValue>]) -> Option<FValue> {
    vs.iter().try_fold(FValue::ONE, |acc, v| v.map(|v| acc * v))
}

/// Checks every pentagon instance `(a,b,c,d,e; f,g,l,k)`. Sum-free instances
/// are compared exactly, the rest numerically within `tol`.
pub fn pentagon_check(c: &FusionCategoryData, tol: f64) -> PentagonReport {
    let r = &c.ring;
    let n = r.rank;
    let fs = |s: Sextuple| c.f.get(&s).copied();
    let mut instances = 0;
    let mut violations = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for d in 0..n {
                    for (f, _) in r.products(a, b) {
                        for (g, _) in r.products(f, cc) {
                            for (e, _) in r.products(g, d) {
                                for (l, _) in r.products(cc, d) {
                                    for (k, _) in r.products(b, l) {
                                        if r.n(a, k, e) == 0 {
                                            continue;
                                        }
                                        instances += 1;
                                        let lhs = product(&[fs([f, cc, d, e, g, l]), fs([a, b, l, e, f, k])]);
                                        let terms: Vec<FValue> = r
                                            .products(b, cc)
                                            .filter_map(|(h, _)| {
                                                product(&[fs([a, b, cc, g, f, h]), fs([a, h, d, e, g, k]), fs([b, cc, d, k, h, l])])
                                            })
                                            .collect();
                                        let deviation = if terms.len() <= 1 {
                                            let rhs = terms.first().copied();
                                            if lhs == rhs {
                                                0.0
                                            } else {
                                                (eval_or_zero(lhs) - eval_or_zero(rhs)).norm().max(f64::MIN_POSITIVE)
                                            }
                                        } else {
                                            let rhs: Complex64 = terms.iter().map(|t| t.eval()).sum();
                                            (eval_or_zero(lhs) - rhs).norm()
                                        };
                                        let exact = terms.len() <= 1;
                                        if (exact && deviation > 0.0) || deviation > tol {
                                            violations.push(PentagonViolation {
                                                objects: [a, b, cc, d, e],
                                                labels: [f, g, l, k],
                                                deviation,
                                            });
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    violations.sort_by_key(|x| (x.objects, x.labels));
    PentagonReport { instances, violations }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::cohomology::{coboundary, cocycle_violation, cohomology_group, cyclic_three_cocycle, Cochain};
    use crate::group::AbelianGroup;

    fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn ring_checks() {
        let r = FusionRing::pointed(&cyclic(3));
        let rep = ring_verify(&r);
        assert!(rep.passes(), "{rep:?}");
        assert_eq!(r.dims().unwrap(), &[Rational64::from_integer(1); 3]);
        let ising = FusionRing::tambara_yamagami(&cyclic(2));
        assert!(ring_verify(&ising).passes());
        assert_eq!(ising.products(2, 2).collect::<Vec<_>>(), vec![(0, 1), (1, 1)]);
        // √2 is not rational, so a rational guess must be flagged
        let guessed = ising.clone().with_dims(vec![1.into(), 1.into(), Rational64::new(3, 2)]).unwrap();
        assert!(!ring_verify(&guessed).dim_failures.is_empty());
        let mut t = r.triples();
        t.push((1, 1, 1, 1));
        let bad = FusionRing::new(3, &t, r.duals().to_vec()).unwrap();
        assert!(!ring_verify(&bad).associativity_failures.is_empty());
    }

    #[test]
    fn su2_rings() {
        for k in 0..8 {
            let r = FusionRing::su2(k).unwrap();
            assert!(ring_verify(&r).passes(), "level {k}");
            assert!(rigidity_check(&r).passes());
            r.require_multiplicity_free().unwrap();
        }
        let r = FusionRing::su2(2).unwrap();
        assert!(!ring_verify(&r.clone().with_dims(vec![1.into(), 1.into(), 1.into()]).unwrap()).dim_failures.is_empty());
        assert_eq!(r.invertibles(), vec![0, 2]);
    }

    #[test]
    fn rigidity() {
        let r = FusionRing::pointed(&cyclic(5));
        assert!(rigidity_check(&r).passes());
        assert_eq!((0..5).map(|g| r.dual(g)).collect::<Vec<_>>(), vec![0, 4, 3, 2, 1]);
        let ty = FusionRing::tambara_yamagami(&cyclic(3));
        assert!(rigidity_check(&ty).passes());
        assert_eq!(ty.dual(3), 3);
        let mut dual = r.duals().to_vec();
        dual[1] = 1;
        let bad = FusionRing::new(5, &r.triples(), dual).unwrap();
        let rep = rigidity_check(&bad);
        assert_eq!(rep.failures[0], RigidityFailure { object: 1, candidates: vec![4] });
        assert_eq!(ring_verify(&bad).duality_failures, vec![1, 4]);
    }

    #[test]
    fn pointed_categories() {
        let c = build_pointed(&cyclic_three_cocycle(2, 1).unwrap()).unwrap();
        assert_eq!(c.ring().rank(), 2);
        let nontrivial: Vec<_> = c.f_symbols().iter().filter(|(_, v)| **v != FValue::ONE).collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(*nontrivial[0].0, [1, 1, 1, 1, 0, 0]);
        assert_eq!(nontrivial[0].1.phase, Phase::HALF);
        assert!(pentagon_check(&c, 1e-9).passes());
        let c = build_pointed(&Cochain::zero(&cyclic(3), 3)).unwrap();
        assert!(c.f_symbols().values().all(|v| *v == FValue::ONE));
        let klein = FiniteGroup::klein();
        for gen in cohomology_group(&klein, 3).unwrap().generators {
            assert!(pentagon_check(&build_pointed(&gen).unwrap(), 1e-9).passes());
        }
    }

    fn violated_quadruples(omega: &Cochain) -> BTreeSet<[usize; 4]> {
        let d = coboundary(omega).unwrap();
        d.tuples().filter(|t| !d.get(t).is_zero()).map(|t| [t[0], t[1], t[2], t[3]]).collect()
    }

    #[test]
    fn pointed_pentagon_is_the_cocycle_condition() {
        let groups = [cyclic(2), cyclic(3), cyclic(4), FiniteGroup::klein()];
        for g in &groups {
            let mut omega = Cochain::zero(g, 3);
            let t = [1, 1, g.order() - 1];
            omega.set(&t, Phase::new(1, 3)).unwrap();
            assert!(cocycle_violation(&omega).unwrap().is_some());
            assert!(matches!(build_pointed(&omega), Err(Error::NotACocycle(_))));
            let c = build_pointed_unchecked(&omega);
            let rep = pentagon_check(&c, 1e-9);
            let seen: BTreeSet<[usize; 4]> =
                rep.violations.iter().map(|v| [v.objects[0], v.objects[1], v.objects[2], v.objects[3]]).collect();
            assert_eq!(seen, violated_quadruples(&omega));
        }
    }

    #[test]
    fn pointed_pentagon_matches_cocycle_on_random_cochains() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for g in [cyclic(2), cyclic(3), FiniteGroup::klein()] {
            for _ in 0..6 {
                let omega = Cochain::from_fn(&g, 3, |_| if rng.gen_bool(0.1) { Phase::HALF } else { Phase::ZERO });
                let passes = pentagon_check(&build_pointed_unchecked(&omega), 1e-9).passes();
                assert_eq!(passes, cocycle_violation(&omega).unwrap().is_none());
            }
        }
    }

    #[test]
    fn ty_categories() {
        let chi = Bicharacter::cyclic(2, Phase::HALF).unwrap();
        let ising = build_ty(&chi, Sign::Plus).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for (x, y, want) in [(0, 0, s), (0, 1, s), (1, 0, s), (1, 1, -s)] {
            let z = ising.f([2, 2, 2, 2, x, y]).unwrap().eval();
            assert!((z - Complex64::new(want, 0.0)).norm() < 1e-12);
        }
        assert!(pentagon_check(&ising, 1e-9).passes());
        assert!(pentagon_check(&build_ty(&chi, Sign::Minus).unwrap(), 1e-9).passes());
        for (n, v) in [(3, Phase::new(1, 3)), (3, Phase::new(2, 3)), (4, Phase::new(1, 4)), (5, Phase::new(2, 5))] {
            let c = build_ty(&Bicharacter::cyclic(n, v).unwrap(), Sign::Plus).unwrap();
            assert_eq!(c.ring().rank(), n as usize + 1);
            let rep = pentagon_check(&c, 1e-9);
            assert!(rep.passes() && rep.instances > 0, "ℤ/{n}: {:?}", rep.violations.first());
        }
        let k = AbelianGroup::new(vec![2, 2]).unwrap();
        let h = Bicharacter::from_generators(&k, &[vec![Phase::ZERO, Phase::HALF], vec![Phase::HALF, Phase::ZERO]]).unwrap();
        assert!(pentagon_check(&build_ty(&h, Sign::Minus).unwrap(), 1e-9).passes());
        assert!(matches!(build_ty(&Bicharacter::cyclic(4, Phase::HALF).unwrap(), Sign::Plus), Err(Error::Degenerate(2))));
        let skew = Bicharacter::from_generators(&k, &[vec![Phase::ZERO, Phase::HALF], vec![Phase::ZERO, Phase::ZERO]]).unwrap();
        assert!(matches!(build_ty(&skew, Sign::Plus), Err(Error::NotSymmetric(..))));
    }

    #[test]
    fn tampered_ty_fails_pentagon() {
        let chi = Bicharacter::cyclic(3, Phase::new(1, 3)).unwrap();
        let c = build_ty(&chi, Sign::Plus).unwrap();
        let mut f = c.f_symbols().clone();
        f.insert([1, 3, 1, 3, 3, 3], FValue::ONE);
        let bad = FusionCategoryData::new(c.ring().clone(), f).unwrap();
        let rep = pentagon_check(&bad, 1e-9);
        assert!(!rep.passes());
        let sorted = rep.violations.windows(2).all(|w| (w[0].objects, w[0].labels) <= (w[1].objects, w[1].labels));
        assert!(sorted);
    }

    #[test]
    fn ty_restricts_to_trivial_pointed() {
        for n in [2, 3, 5] {
            let chi = Bicharacter::cyclic(n, Phase::new(1, n)).unwrap();
            let c = build_ty(&chi, Sign::Minus).unwrap().invertible_part();
            let pointed = build_pointed(&Cochain::zero(&cyclic(n as usize), 3)).unwrap();
            assert_eq!(c.ring().triples(), pointed.ring().triples());
            assert_eq!(c.ring().duals(), pointed.ring().duals());
            assert_eq!(c.f_symbols(), pointed.f_symbols());
        }
    }

    #[test]
    fn validation_of_raw_data() {
        let c = build_pointed(&cyclic_three_cocycle(3, 1).unwrap()).unwrap();
        assert!(FusionCategoryData::new(c.ring().clone(), c.f_symbols().clone()).is_ok());
        let mut f = c.f_symbols().clone();
        f.remove(&[1, 1, 1, 0, 2, 2]);
        assert!(FusionCategoryData::new(c.ring().clone(), f).is_err());
        let mut f = c.f_symbols().clone();
        f.insert([0, 1, 1, 2, 1, 2], FValue::from_phase(Phase::HALF));
        assert!(FusionCategoryData::new(c.ring().clone(), f).is_err());
        let doubled: Vec<_> = c.ring().triples().into_iter().map(|(i, j, k, _)| (i, j, k, 2)).collect();
        let ring = FusionRing::new(3, &doubled, c.ring().duals().to_vec()).unwrap();
        assert!(matches!(FusionCategoryData::new(ring, BTreeMap::new()), Err(Error::Multiplicity { .. })));
    }

    #[test]
    fn grothendieck_product() {
        let r = FusionRing::tambara_yamagami(&cyclic(2));
        assert_eq!(r.multiply(&[0, 0, 1], &[0, 0, 1]), vec![1, 1, 0]);
        assert_eq!(r.multiply(&[1, 1, 0], &[0, 0, 1]), vec![0, 0, 2]);
    }
}

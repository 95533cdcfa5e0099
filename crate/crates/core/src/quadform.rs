//! Quadratic forms and bicharacters on finite abelian groups, written
//! additively in ℚ/ℤ.
//!
//! A braided categorical group with underlying group `H` is classified by a
//! quadratic form `q: H → ℚ/ℤ`. This module enumerates forms, computes the
//! centre data of the standard compact Lie families and performs the
//! isotropic quotient `Z′/Z`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{decompose_abelian, AbelianGroup, FiniteGroup};
use crate::phase::Phase;

/// Largest group accepted by the enumerations.
pub const MAX_ENUM_ORDER: usize = 256;
/// Largest number of candidate tables an enumeration may try.
pub const MAX_CANDIDATES: u64 = 2_000_000;

fn check_enum_size(h: &AbelianGroup) -> Result<()> {
    if h.order() > MAX_ENUM_ORDER {
        return Err(Error::TooLarge { what: "group order for enumeration".into(), size: h.order() as u64, limit: MAX_ENUM_ORDER as u64 });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    group: AbelianGroup,
    values: Vec<Phase>,
}

/// Why a table fails to be a quadratic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadViolation {
    /// `q(n·x) ≠ n²·q(x)`
    Homogeneity { x: usize, n: i64 },
    /// `σ(x+y, z) ≠ σ(x,z) + σ(y,z)`
    Bilinearity { x: usize, y: usize, z: usize },
}

impl fmt::Display for QuadViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadViolation::Homogeneity { x, n } => write!(f, "q({n}·x) ≠ {n}²·q(x) at x = {x}"),
            QuadViolation::Bilinearity { x, y, z } => write!(f, "polarization not additive at ({x}, {y}, {z})"),
        }
    }
}

fn element_order(h: &AbelianGroup, x: usize) -> i64 {
    h.element(x).iter().zip(h.factors()).map(|(&v, &d)| d / v.gcd(&d)).fold(1, |a, b| a.lcm(&b))
}

/// Checks both defining conditions exhaustively.
pub fn is_quadratic(h: &AbelianGroup, q: &[Phase]) -> Option<QuadViolation> {
    assert_eq!(q.len(), h.order(), "one value per element");
    for x in h.elements() {
        let o = element_order(h, x);
        for n in -1..=2 * o {
            if q[h.scale(n, x)] != q[x] * (n * n) {
                return Some(QuadViolation::Homogeneity { x, n });
            }
        }
    }
    let sigma = |x: usize, y: usize| q[h.add(x, y)] - q[x] - q[y];
    for x in h.elements() {
        for y in h.elements() {
            let xy = h.add(x, y);
            for z in h.elements() {
                if sigma(xy, z) != sigma(x, z) + sigma(y, z) {
                    return Some(QuadViolation::Bilinearity { x, y, z });
                }
            }
        }
    }
    None
}

impl QuadraticForm {
    pub fn new(group: &AbelianGroup, values: Vec<Phase>) -> Result<QuadraticForm> {
        if values.len() != group.order() {
            return Err(Error::InvalidInput(format!("need {} values, got {}", group.order(), values.len())));
        }
        if let Some(v) = is_quadratic(group, &values) {
            return Err(Error::InvalidInput(format!("not a quadratic form: {v}")));
        }
        Ok(QuadraticForm { group: group.clone(), values })
    }

    /// `q(x) = Σ xᵢ² q(eᵢ) + Σ_{i<j} xᵢ xⱼ σᵢⱼ`, validated.
    pub fn from_generators(group: &AbelianGroup, diag: &[Phase], cross: &[Phase]) -> Result<QuadraticForm> {
        QuadraticForm::new(group, generator_table(group, diag, cross))
    }

    pub fn zero(group: &AbelianGroup) -> QuadraticForm {
        QuadraticForm { group: group.clone(), values: vec![Phase::ZERO; group.order()] }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Phase] {
        &self.values
    }

    pub fn at(&self, x: usize) -> Phase {
        self.values[x]
    }

    pub fn at_tuple(&self, t: &[i64]) -> Phase {
        self.values[self.group.index(t)]
    }

    pub fn neg(&self) -> QuadraticForm {
        QuadraticForm { group: self.group.clone(), values: self.values.iter().map(|&v| -v).collect() }
    }
}

fn generator_table(group: &AbelianGroup, diag: &[Phase], cross: &[Phase]) -> Vec<Phase> {
    let r = group.rank();
    group
        .elements()
        .map(|x| {
            let t = group.element(x);
            let mut v = Phase::ZERO;
            let mut k = 0;
            for i in 0..r {
                v += diag[i] * (t[i] * t[i]);
                for j in i + 1..r {
                    v += cross[k] * (t[i] * t[j]);
                    k += 1;
                }
            }
            v
        })
        .collect()
}

/// A bilinear map `H × H → ℚ/ℤ` stored as a dense table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    group: AbelianGroup,
    values: Vec<Phase>,
}

impl Bicharacter {
    pub fn new(group: &AbelianGroup, values: Vec<Phase>) -> Result<Bicharacter> {
        let n = group.order();
        if values.len() != n * n {
            return Err(Error::InvalidInput(format!("need {} values, got {}", n * n, values.len())));
        }
        let b = Bicharacter { group: group.clone(), values };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let left = b.at(group.add(x, y), z) == b.at(x, z) + b.at(y, z);
                    let right = b.at(z, group.add(x, y)) == b.at(z, x) + b.at(z, y);
                    if !left || !right {
                        return Err(Error::InvalidInput(format!("not bilinear at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        Ok(b)
    }

    /// `b(x, y) = Σ xᵢ yⱼ b(eᵢ, eⱼ)`; each entry must be killed by both
    /// factor orders.
    pub fn from_generators(group: &AbelianGroup, gens: &[Vec<Phase>]) -> Result<Bicharacter> {
        let r = group.rank();
        if gens.len() != r || gens.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidInput(format!("need a {r}×{r} generator table")));
        }
        for (i, row) in gens.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let g = group.factors()[i].gcd(&group.factors()[j]);
                if !(v * g).is_zero() {
                    return Err(Error::InvalidInput(format!("entry ({i}, {j}) is not killed by {g}")));
                }
            }
        }
        Ok(Bicharacter::from_generators_unchecked(group, gens))
    }

    fn from_generators_unchecked(group: &AbelianGroup, gens: &[Vec<Phase>]) -> Bicharacter {
        let n = group.order();
        let coords: Vec<Vec<i64>> = group.elements().map(|x| group.element(x)).collect();
        let mut values = Vec::with_capacity(n * n);
        for x in &coords {
            for y in &coords {
                let mut v = Phase::ZERO;
                for (i, xi) in x.iter().enumerate() {
                    for (j, yj) in y.iter().enumerate() {
                        v += gens[i][j] * (xi * yj);
                    }
                }
                values.push(v);
            }
        }
        Bicharacter { group: group.clone(), values }
    }

    /// A symmetric bicharacter on `ℤ/n` with `b(1,1) = v`.
    pub fn cyclic(n: i64, v: Phase) -> Result<Bicharacter> {
        Bicharacter::from_generators(&AbelianGroup::cyclic(n)?, &[vec![v]])
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> Phase {
        self.values[x * self.group.order() + y]
    }

    pub fn values(&self) -> &[Phase] {
        &self.values
    }

    pub fn symmetry_violation(&self) -> Option<(usize, usize)> {
        let n = self.group.order();
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| self.at(x, y) != self.at(y, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_violation().is_none()
    }

    /// Least nonzero `x` with `b(x, −) ≡ 0`.
    pub fn kernel_witness(&self) -> Option<usize> {
        let n = self.group.order();
        (1..n).find(|&x| (0..n).all(|y| self.at(x, y).is_zero()))
    }

    /// `x ↦ b(x, −)` is injective.
    pub fn is_nondegenerate(&self) -> bool {
        self.kernel_witness().is_none()
    }

    /// The diagonal `x ↦ b(x, x)`.
    pub fn diagonal(&self) -> Vec<Phase> {
        self.group.elements().map(|x| self.at(x, x)).collect()
    }
}

/// `σ(x,y) = q(x+y) − q(x) − q(y)`.
pub fn polarization(q: &QuadraticForm) -> Bicharacter {
    let h = &q.group;
    let n = h.order();
    let mut values = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            values.push(q.values[h.add(x, y)] - q.values[x] - q.values[y]);
        }
    }
    Bicharacter { group: h.clone(), values }
}

fn for_each_assignment(radices: &[i64], mut f: impl FnMut(&[i64])) {
    let mut digits = vec![0i64; radices.len()];
    loop {
        f(&digits);
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
            if digits[i] < radices[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn check_candidates(radices: &[i64]) -> Result<()> {
    let count = radices.iter().try_fold(1u64, |acc, &r| acc.checked_mul(r as u64)).unwrap_or(u64::MAX);
    if count > MAX_CANDIDATES {
        return Err(Error::TooLarge { what: "enumeration candidates".into(), size: count, limit: MAX_CANDIDATES });
    }
    Ok(())
}

/// Every quadratic form on `h`, sorted by value table.
///
/// Candidates take `q(eᵢ) ∈ (1/2dᵢ)ℤ` and `σ(eᵢ,eⱼ) ∈ (1/dᵢ)ℤ` for `i < j`
/// and are filtered by [`is_quadratic`].
pub fn enumerate_quadratic_forms(h: &AbelianGroup) -> Result<Vec<QuadraticForm>> {
    check_enum_size(h)?;
    let d = h.factors();
    let r = d.len();
    let mut radices: Vec<i64> = d.iter().map(|&x| 2 * x).collect();
    for (i, &di) in d.iter().enumerate() {
        for _ in i + 1..r {
            radices.push(di);
        }
    }
    check_candidates(&radices)?;
    let mut out = BTreeSet::new();
    for_each_assignment(&radices, |digits| {
        let diag: Vec<Phase> = (0..r).map(|i| Phase::new(digits[i], 2 * d[i])).collect();
        let mut cross = Vec::new();
        let mut k = r;
        for (i, &di) in d.iter().enumerate() {
            for _ in i + 1..r {
                cross.push(Phase::new(digits[k], di));
                k += 1;
            }
        }
        let values = generator_table(h, &diag, &cross);
        if is_quadratic(h, &values).is_none() {
            out.insert(QuadraticForm { group: h.clone(), values });
        }
    });
    Ok(out.into_iter().collect())
}

/// Every bicharacter on `h`, symmetric or not.
pub fn enumerate_bicharacters(h: &AbelianGroup) -> Result<Vec<Bicharacter>> {
    check_enum_size(h)?;
    let d = h.factors();
    let r = d.len();
    let radices: Vec<i64> = (0..r * r).map(|k| d[k / r].gcd(&d[k % r])).collect();
    check_candidates(&radices)?;
    let mut out = Vec::new();
    for_each_assignment(&radices, |digits| {
        let gens: Vec<Vec<Phase>> = (0..r).map(|i| (0..r).map(|j| Phase::new(digits[i * r + j], radices[i * r + j])).collect()).collect();
        out.push(Bicharacter::from_generators_unchecked(h, &gens));
    });
    Ok(out)
}

/// Orbits of `q ↦ q + b(x,x)` over all bicharacters `b`, each orbit sorted,
/// orbits ordered by their least member.
pub fn bichar_torsor_orbits(h: &AbelianGroup) -> Result<Vec<Vec<QuadraticForm>>> {
    let forms = enumerate_quadratic_forms(h)?;
    let diagonals: BTreeSet<Vec<Phase>> = enumerate_bicharacters(h)?.iter().map(|b| b.diagonal()).collect();
    let mut seen: BTreeSet<Vec<Phase>> = BTreeSet::new();
    let mut orbits = Vec::new();
    for q in &forms {
        if seen.contains(&q.values) {
            continue;
        }
        let mut orbit: BTreeSet<QuadraticForm> = BTreeSet::new();
        for diag in &diagonals {
            let values: Vec<Phase> = q.values.iter().zip(diag).map(|(a, b)| *a + *b).collect();
            seen.insert(values.clone());
            orbit.insert(QuadraticForm { group: h.clone(), values });
        }
        orbits.push(orbit.into_iter().collect());
    }
    Ok(orbits)
}

/// All forms `ε` with `ε(a) + ε(b) + χ(a,b) = ε(a+b)`.
pub fn all_refinements(chi: &Bicharacter) -> Result<Vec<QuadraticForm>> {
    if let Some((x, y)) = chi.symmetry_violation() {
        return Err(Error::NotSymmetric(x, y));
    }
    Ok(enumerate_quadratic_forms(&chi.group)?.into_iter().filter(|q| polarization(q) == *chi).collect())
}

/// The least quadratic refinement of a symmetric bicharacter, if any.
pub fn quadratic_refinement(chi: &Bicharacter) -> Result<Option<QuadraticForm>> {
    Ok(all_refinements(chi)?.into_iter().next())
}

/// Conventional names of the four braided structures on `ℤ/2`.
pub fn z2_label(q: &QuadraticForm) -> Option<&'static str> {
    if q.group.factors() != [2] {
        return None;
    }
    match (q.values[1].num(), q.values[1].den()) {
        (0, 1) => Some("Vec"),
        (1, 4) => Some("Semi"),
        (1, 2) => Some("sVec"),
        (3, 4) => Some("anti-Semi"),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedGroupData {
    pub form: QuadraticForm,
    pub label: Option<String>,
}

impl BraidedGroupData {
    pub fn new(form: QuadraticForm) -> BraidedGroupData {
        let label = if form.group.order() == 1 { Some("trivial".to_string()) } else { z2_label(&form).map(str::to_string) };
        BraidedGroupData { form, label }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.form.group
    }
}

/// The invertible part of the centre of a Tambara-Yamagami category: objects
/// `X_{a, ε(a)}` along a chosen refinement `ε` of `χ`.
#[derive(Clone, Debug)]
pub struct TyCentre {
    pub braided: BraidedGroupData,
    pub refinement: QuadraticForm,
    /// `(a, b, a+b, ε(a)+ε(b)+χ(a,b))` for every pair.
    pub tensor_law: Vec<(usize, usize, usize, Phase)>,
    pub section_law_holds: bool,
}

pub fn ty_centre_invertibles(chi: &Bicharacter) -> Result<TyCentre> {
    if let Some((x, y)) = chi.symmetry_violation() {
        return Err(Error::NotSymmetric(x, y));
    }
    if let Some(x) = chi.kernel_witness() {
        return Err(Error::Degenerate(x));
    }
    let eps = quadratic_refinement(chi)?.ok_or(Error::NoRefinement)?;
    let h = chi.group.clone();
    let mut tensor_law = Vec::new();
    let mut holds = true;
    for a in h.elements() {
        for b in h.elements() {
            let s = h.add(a, b);
            let v = eps.at(a) + eps.at(b) + chi.at(a, b);
            holds &= v == eps.at(s);
            tensor_law.push((a, b, s, v));
        }
    }
    let q = QuadraticForm::new(&h, chi.diagonal())?;
    Ok(TyCentre { braided: BraidedGroupData::new(q), refinement: eps, tensor_law, section_law_holds: holds })
}

/// Compact Lie families with closed-form centre data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieCentre {
    /// `SU(n)` at level `k`.
    SUn { n: i64, k: i64 },
    /// `Spin(2m+1)` at level `k`.
    SpinOdd { k: i64 },
    /// The circle at level `k`.
    Circle { k: i64 },
    /// `SU(2)×SU(2)` with the level pair `(a, b)`, before the quotient to `SO(4)`.
    SO4 { a: i64, b: i64 },
}

/// Underlying finite group and quadratic form of the invertible part of the
/// centre.
pub fn lie_centre_quadform(family: LieCentre) -> Result<BraidedGroupData> {
    let form = match family {
        LieCentre::SUn { n, k } => {
            if n < 2 {
                return Err(Error::InvalidInput(format!("SU(n) needs n ≥ 2, got {n}")));
            }
            let h = AbelianGroup::cyclic(n)?;
            QuadraticForm::from_generators(&h, &[Phase::new(k * (n - 1), 2 * n)], &[])?
        }
        LieCentre::SpinOdd { k } => QuadraticForm::from_generators(&AbelianGroup::cyclic(2)?, &[Phase::new(k, 2)], &[])?,
        LieCentre::Circle { k } => {
            if k == 0 {
                return Err(Error::ZeroLevelCircle);
            }
            let h = AbelianGroup::cyclic(2 * k.abs())?;
            QuadraticForm::from_generators(&h, &[Phase::new(1, 4 * k)], &[])?
        }
        LieCentre::SO4 { a, b } => {
            let h = AbelianGroup::new(vec![2, 2])?;
            let (q10, q01) = (Phase::new(2 * a + b, 4), Phase::new(2 * a - b, 4));
            // q(1,1) = 0 forces σ(e₁, e₂) = −q(1,0) − q(0,1)
            QuadraticForm::from_generators(&h, &[q10, q01], &[-(q10 + q01)])?
        }
    };
    Ok(BraidedGroupData::new(form))
}

/// `Z′/Z` for an isotropic subgroup `Z`, where `Z′` is the annihilator of
/// `Z` under the polarization, with the induced form.
pub fn isotropic_quotient(b: &BraidedGroupData, z_gens: &[usize]) -> Result<BraidedGroupData> {
    let h = b.group();
    let q = &b.form;
    let n = h.order();
    if let Some(&bad) = z_gens.iter().find(|&&z| z >= n) {
        return Err(Error::InvalidInput(format!("element {bad} out of range")));
    }
    let hg = h.embed()?;
    let z = hg.closure(z_gens);
    if let Some(&w) = z.iter().find(|&&x| !q.at(x).is_zero()) {
        return Err(Error::NotIsotropic(w));
    }
    let sigma = polarization(q);
    let zp: Vec<usize> = h.elements().filter(|&a| z.iter().all(|&x| sigma.at(a, x).is_zero())).collect();

    // cosets of Z inside Z′, labelled by their least element
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for &a in &zp {
        if coset_of[a] == usize::MAX {
            for &x in &z {
                coset_of[h.add(a, x)] = reps.len();
            }
            reps.push(a);
        }
    }
    for &a in &zp {
        let r = reps[coset_of[a]];
        if q.at(a) != q.at(r) {
            return Err(Error::InvalidInput(format!("induced form is not constant on the coset of {r}")));
        }
    }
    let m = reps.len();
    let table: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| coset_of[h.add(reps[i], reps[j])]).collect()).collect();
    let quotient = FiniteGroup::from_table(&table)?;
    let (abelian, gens) = decompose_abelian(&quotient)?;
    let values = abelian
        .elements()
        .map(|x| {
            let t = abelian.element(x);
            let rep = t.iter().zip(&gens).fold(0, |acc, (&k, &g)| h.add(acc, h.scale(k, reps[g])));
            q.at(rep)
        })
        .collect();
    Ok(BraidedGroupData::new(QuadraticForm::new(&abelian, values)?))
}

/// `q₁ + q₂ ≡ 0`.
pub fn opposite_match(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<bool> {
    if q1.group != q2.group {
        return Err(Error::GroupMismatch);
    }
    Ok(q1.values.iter().zip(&q2.values).all(|(a, b)| (*a + *b).is_zero()))
}

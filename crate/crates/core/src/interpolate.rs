//! Interpolated fusion categories: the quotient of `Vec^{−k}[G] ⊠ D` by a
//! finite central group `H` acting diagonally, reported by its components.
//!
//! A simple of the interpolated category is a class of pairs `(g, X)` with
//! `g ∈ G` and `X` a simple of `D`, where `h ∈ H` identifies `(g, X)` with
//! `(g·ι(h)⁻¹, h⊗X)`. Writing `X = h·x₀` for the orbit representative `x₀`,
//! the class of `(g, X)` is the point `g·ι(h)` of the component `G/Stab(x₀)`.
//! On circle models points are exact phases.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_integer::Integer;

use crate::cohomology::{lie_level_restriction, LevelFamily};
use crate::error::{Error, Result};
use crate::fuscat::{FusionRing, Sign};
use crate::group::{FiniteGroup, GroupAction};
use crate::phase::Phase;
use crate::quadform::{
    lie_centre_quadform, opposite_match, polarization, quadratic_refinement, Bicharacter, BraidedGroupData, LieCentre, QuadraticForm,
};

/// Largest prime accepted by [`interpolated_ty`].
pub const MAX_TY_PRIME: i64 = 97;
/// Most components [`svg_moduli`] will draw.
pub const MAX_SVG_COMPONENTS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `S¹`, with `H` the cyclic subgroup of the given order.
    Circle,
    Su2,
    SUn(i64),
    Symbolic(String),
}

/// The Lie group `G` at level `k`, together with the order of the finite
/// central subgroup `H` it is interpolated along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModel {
    pub kind: GroupKind,
    pub level: i64,
    pub subgroup_order: usize,
}

impl GroupModel {
    pub fn circle(level: i64, subgroup_order: usize) -> GroupModel {
        GroupModel { kind: GroupKind::Circle, level, subgroup_order }
    }

    pub fn su2(level: i64) -> GroupModel {
        GroupModel { kind: GroupKind::Su2, level, subgroup_order: 2 }
    }

    pub fn sun(n: i64, level: i64) -> GroupModel {
        GroupModel { kind: GroupKind::SUn(n), level, subgroup_order: n.max(1) as usize }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            GroupKind::Circle => "S¹".into(),
            GroupKind::Su2 => "SU(2)".into(),
            GroupKind::SUn(n) => format!("SU({n})"),
            GroupKind::Symbolic(s) => s.clone(),
        }
    }

    /// The component `G/S` for a stabilizer of order `s`.
    pub fn manifold_label(&self, s: usize) -> String {
        match (&self.kind, s) {
            (GroupKind::Circle, 1) => "S¹".into(),
            (GroupKind::Circle, s) => format!("S¹/(ℤ/{s})"),
            (GroupKind::Su2, 1) => "S³".into(),
            (GroupKind::Su2, 2) => "ℝP³".into(),
            (_, 1) => self.name(),
            (_, s) => format!("{}/(ℤ/{s})", self.name()),
        }
    }

    /// The form on `H ⊂ Z(G)` encoding the centre of `Vec^{−k}[G]`.
    fn centre_form(&self) -> Result<QuadraticForm> {
        let k = self.level;
        match &self.kind {
            GroupKind::Circle => {
                let p = self.subgroup_order as i64;
                let h = crate::group::AbelianGroup::cyclic(p)?;
                QuadraticForm::from_generators(&h, &[Phase::new(-k, p * p)], &[])
            }
            GroupKind::Su2 => Ok(lie_centre_quadform(LieCentre::SUn { n: 2, k: -k })?.form),
            GroupKind::SUn(n) => Ok(lie_centre_quadform(LieCentre::SUn { n: *n, k: -k })?.form),
            GroupKind::Symbolic(s) => Err(Error::UnsupportedFamily(s.clone())),
        }
    }
}

/// The permutation action of a list of invertible simples on all simples,
/// together with the group they form under fusion (element `i` is `h[i]`).
pub fn h_action_from_invertibles(r: &FusionRing, h: &[usize]) -> Result<(FiniteGroup, GroupAction)> {
    let n = r.rank();
    if h.is_empty() {
        return Err(Error::InvalidInput("the subgroup needs at least the unit".into()));
    }
    if let Some(&bad) = h.iter().find(|&&x| x >= n) {
        return Err(Error::InvalidInput(format!("simple {bad} out of range")));
    }
    let mut perms = Vec::with_capacity(h.len());
    for &a in h {
        if r.n(a, r.dual(a), 0) != 1 {
            return Err(Error::NotInvertible(a));
        }
        let mut image = Vec::with_capacity(n);
        for x in 0..n {
            let prods: Vec<_> = r.products(a, x).collect();
            match prods[..] {
                [(y, 1)] => image.push(y),
                _ => return Err(Error::NotInvertible(a)),
            }
        }
        let mut seen = image.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != n {
            return Err(Error::NotInvertible(a));
        }
        perms.push(image);
    }
    let pos: BTreeMap<usize, usize> = h.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    if pos.len() != h.len() {
        return Err(Error::InvalidInput("listed invertibles repeat".into()));
    }
    let mut table = vec![vec![0; h.len()]; h.len()];
    for (i, &a) in h.iter().enumerate() {
        for (j, &b) in h.iter().enumerate() {
            table[i][j] = *pos.get(&perms[i][b]).ok_or(Error::NotClosed(a, b))?;
        }
    }
    let group = FiniteGroup::from_table(&table)?;
    let action = GroupAction::new(&group, perms)?;
    Ok((group, action))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    /// `"ok"`, `"level obstruction"` or `"forms not opposite"`.
    pub reason: &'static str,
}

/// Whether the centre form of `D` on `H` is opposite to that of
/// `Vec^{−k}[G]`, so that `H` embeds with trivial braiding.
pub fn interpolation_admissible(model: &GroupModel, d_centre: &BraidedGroupData) -> Result<Admissibility> {
    if model.kind == GroupKind::Circle {
        let p = model.subgroup_order as i64;
        if lie_level_restriction(LevelFamily::Circle, model.level, p)? != 0 {
            return Ok(Admissibility { admissible: false, reason: "level obstruction" });
        }
    }
    let q_g = model.centre_form()?;
    if q_g.group() != d_centre.group() {
        return Err(Error::GroupMismatch);
    }
    Ok(if opposite_match(&q_g, &d_centre.form)? {
        Admissibility { admissible: true, reason: "ok" }
    } else {
        Admissibility { admissible: false, reason: "forms not opposite" }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoint {
    pub simple: usize,
    pub label: String,
    /// Position on the component as a fraction of a turn.
    pub position: Phase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub orbit: Vec<usize>,
    pub representative: usize,
    /// Stabilizer of the representative, as simples of `D`.
    pub stabilizer: Vec<usize>,
    pub manifold: String,
    /// Degree of the unit component acting on this one; equals the
    /// stabilizer order.
    pub covering_degree: usize,
    pub points: Vec<MarkedPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationReport {
    pub model: GroupModel,
    pub subgroup: Vec<usize>,
    pub admissible: bool,
    pub reason: String,
    /// False when the report was built with admissibility overridden.
    pub braiding_verified: bool,
    pub components: Vec<Component>,
    /// `ι(h)` for each listed invertible, when `H` is cyclic.
    pub embedding: Option<Vec<Phase>>,
    /// For each simple of `D`: its component and an index `i` with
    /// `simple = subgroup[i] · representative`.
    placement: Vec<(usize, usize)>,
    ring: FusionRing,
}

fn cyclic_embedding(group: &FiniteGroup) -> Option<Vec<Phase>> {
    let n = group.order();
    let gen = group.elements().find(|&g| group.element_order(g) == n)?;
    let mut emb = vec![Phase::ZERO; n];
    let mut x = group.identity();
    for t in 0..n {
        emb[x] = Phase::new(t as i64, n as i64);
        x = group.mul(gen, x);
    }
    Some(emb)
}

/// Components of the moduli of simples. With `force`, an inadmissible input
/// is still decomposed and the report is flagged as unverified.
pub fn build_interpolation(
    model: &GroupModel,
    ring: &FusionRing,
    subgroup: &[usize],
    labels: &[String],
    admissibility: &Admissibility,
    force: bool,
) -> Result<InterpolationReport> {
    if !admissibility.admissible && !force {
        return Err(Error::InvalidInput(format!("not admissible: {}", admissibility.reason)));
    }
    if labels.len() != ring.rank() {
        return Err(Error::InvalidInput(format!("need {} labels, got {}", ring.rank(), labels.len())));
    }
    let (group, action) = h_action_from_invertibles(ring, subgroup)?;
    if group.order() != model.subgroup_order {
        return Err(Error::GroupMismatch);
    }
    let embedding = cyclic_embedding(&group).filter(|_| group.is_abelian());
    let mut placement = vec![(0, 0); ring.rank()];
    let mut components = Vec::new();
    for (ci, orbit) in action.orbits_with_stabilizers().into_iter().enumerate() {
        let s = orbit.stabilizer.len();
        let mut points = Vec::new();
        for &y in &orbit.points {
            let h = group.elements().find(|&g| action.act(g, orbit.rep) == y).expect("orbit member");
            placement[y] = (ci, h);
            let position = match &embedding {
                Some(e) => e[h] * s as i64,
                None => {
                    let i = orbit.points.iter().position(|&p| p == y).expect("member");
                    Phase::new(i as i64, orbit.points.len() as i64)
                }
            };
            points.push(MarkedPoint { simple: y, label: labels[y].clone(), position });
        }
        components.push(Component {
            representative: orbit.rep,
            stabilizer: orbit.stabilizer.iter().map(|&g| subgroup[g]).collect(),
            manifold: model.manifold_label(s),
            covering_degree: s,
            points,
            orbit: orbit.points,
        });
    }
    Ok(InterpolationReport {
        model: model.clone(),
        subgroup: subgroup.to_vec(),
        admissible: admissibility.admissible,
        reason: admissibility.reason.to_string(),
        braiding_verified: admissibility.admissible,
        components,
        embedding,
        placement,
        ring: ring.clone(),
    })
}

/// `C(su(2), k)` interpolated along `Z(SU(2)) = ℤ/2` at level `−k`.
pub fn su2_interpolation(k: usize) -> Result<InterpolationReport> {
    if k == 0 {
        return Err(Error::InvalidInput("at level 0 the centre acts through the unit only".into()));
    }
    let ring = FusionRing::su2(k)?;
    let model = GroupModel::su2(k as i64);
    let d_centre = lie_centre_quadform(LieCentre::SUn { n: 2, k: k as i64 })?;
    let adm = interpolation_admissible(&model, &d_centre)?;
    let labels: Vec<String> = (0..=k).map(|i| format!("[{i}]")).collect();
    build_interpolation(&model, &ring, &[0, k], &labels, &adm, false)
}

/// Why an interpolated Tambara-Yamagami category does not exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TyRejection {
    NoCentralMap,
    NoSquareRoot,
    Degenerate,
}

impl TyRejection {
    pub fn code(self) -> &'static str {
        match self {
            TyRejection::NoCentralMap => "no_central_map",
            TyRejection::NoSquareRoot => "no_square_root",
            TyRejection::Degenerate => "degenerate",
        }
    }

    pub fn reason(self) -> &'static str {
        match self {
            TyRejection::NoCentralMap => "no central map",
            TyRejection::NoSquareRoot => "no square root",
            TyRejection::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TyInterpolation {
    pub p: i64,
    pub level: i64,
    pub tau: Sign,
    /// `q(1)` of the induced form on `ℤ/p`.
    pub induced: Phase,
    /// `ε(1)` and `χ(1,1)`.
    pub refinement: Phase,
    pub bicharacter: Phase,
    pub report: InterpolationReport,
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `Vec^{−k}[S¹] ⊠_{Vec[ℤ/p]} TY(ℤ/p, χ, τ)` when it exists.
pub fn interpolated_ty(p: i64, k: i64, tau: Sign) -> Result<std::result::Result<TyInterpolation, TyRejection>> {
    if !is_prime(p) || p > MAX_TY_PRIME {
        return Err(Error::InvalidInput(format!("p must be a prime at most {MAX_TY_PRIME}, got {p}")));
    }
    if lie_level_restriction(LevelFamily::Circle, k, p)? != 0 {
        return Ok(Err(TyRejection::NoCentralMap));
    }
    let induced = Phase::new(k, p * p);
    let chi = Bicharacter::cyclic(p, induced)?;
    let Some(eps) = quadratic_refinement(&chi)? else {
        return Ok(Err(TyRejection::NoSquareRoot));
    };
    if !polarization(&eps).is_nondegenerate() {
        return Ok(Err(TyRejection::Degenerate));
    }
    let a = crate::group::AbelianGroup::cyclic(p)?;
    let ring = FusionRing::tambara_yamagami(&a.embed()?);
    let model = GroupModel::circle(k, p as usize);
    let d_centre = BraidedGroupData::new(QuadraticForm::new(&a, chi.diagonal())?);
    let adm = interpolation_admissible(&model, &d_centre)?;
    let mut labels: Vec<String> = (0..p).map(|x| x.to_string()).collect();
    labels.push("m".into());
    let subgroup: Vec<usize> = (0..p as usize).collect();
    let report = build_interpolation(&model, &ring, &subgroup, &labels, &adm, false)?;
    Ok(Ok(TyInterpolation { p, level: k, tau, induced, refinement: eps.at(1), bicharacter: chi.at(1, 1), report }))
}

/// A simple of the interpolated category on a circle model: a component and
/// a point of `S¹`, defined modulo the stabilizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CirclePoint {
    pub component: usize,
    pub position: Phase,
}

impl InterpolationReport {
    /// Canonical point: the representative of `g` modulo the stabilizer in
    /// `[0, 1/|S|)`.
    pub fn point(&self, component: usize, g: Phase) -> Result<CirclePoint> {
        let c = self.components.get(component).ok_or_else(|| Error::InvalidInput(format!("no component {component}")))?;
        let s = c.covering_degree as i64;
        let scaled = g * s;
        Ok(CirclePoint { component, position: Phase::new(scaled.num(), scaled.den() * s) })
    }
}

/// Fusion of two components, as `(component, multiplicity)`, from the
/// product of their representatives in `D`.
pub fn component_fusion(report: &InterpolationReport, c1: usize, c2: usize) -> Result<Vec<(usize, u64)>> {
    let n = report.components.len();
    if c1 >= n || c2 >= n {
        return Err(Error::InvalidInput(format!("components are 0..{n}")));
    }
    let (x, y) = (report.components[c1].representative, report.components[c2].representative);
    let mut out: BTreeMap<usize, u64> = BTreeMap::new();
    for (z, m) in report.ring.products(x, y) {
        *out.entry(report.placement[z].0).or_default() += m as u64;
    }
    Ok(out.into_iter().collect())
}

/// Exact fusion of two points on a circle model, with multiplicities.
pub fn point_fusion(report: &InterpolationReport, a: CirclePoint, b: CirclePoint) -> Result<Vec<(CirclePoint, u64)>> {
    if report.model.kind != GroupKind::Circle {
        return Err(Error::PointsUnsupported);
    }
    let emb = report.embedding.as_ref().ok_or(Error::PointsUnsupported)?;
    let a = report.point(a.component, a.position)?;
    let b = report.point(b.component, b.position)?;
    let (x, y) = (report.components[a.component].representative, report.components[b.component].representative);
    let g = a.position + b.position;
    let mut out: BTreeMap<CirclePoint, u64> = BTreeMap::new();
    for (z, m) in report.ring.products(x, y) {
        let (c, h) = report.placement[z];
        *out.entry(report.point(c, g + emb[h])?).or_default() += m as u64;
    }
    Ok(out.into_iter().collect())
}

/// One circle per component, radius inversely proportional to the covering
/// degree, marked points at their exact angles.
pub fn svg_moduli(report: &InterpolationReport) -> Result<String> {
    let n = report.components.len();
    if n > MAX_SVG_COMPONENTS {
        return Err(Error::TooManyComponents(n));
    }
    let mut s = String::new();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 400\" font-family=\"serif\" font-size=\"14\">\n");
    s.push_str("<rect x=\"0\" y=\"0\" width=\"1000\" height=\"400\" fill=\"white\" stroke=\"#888\"/>\n");
    let slot = if n == 0 { 1000.0 } else { 1000.0 / n as f64 };
    let base = (0.38 * slot).min(130.0);
    for (i, c) in report.components.iter().enumerate() {
        let cx = slot * (i as f64 + 0.5);
        let cy = 190.0;
        let r = base / c.covering_degree as f64;
        let _ = writeln!(s, "<circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"{r:.3}\" fill=\"none\" stroke=\"black\" stroke-width=\"3\"/>");
        for p in &c.points {
            let t = std::f64::consts::TAU * p.position.to_f64();
            let (px, py) = (cx + r * t.sin(), cy - r * t.cos());
            let (lx, ly) = (cx + (r + 16.0) * t.sin(), cy - (r + 16.0) * t.cos() + 5.0);
            let _ = writeln!(s, "<circle cx=\"{px:.3}\" cy=\"{py:.3}\" r=\"4\" fill=\"black\"/>");
            let _ = writeln!(s, "<text x=\"{lx:.3}\" y=\"{ly:.3}\" text-anchor=\"middle\">{}</text>", escape(&p.label));
        }
        let _ = writeln!(
            s,
            "<text x=\"{cx:.3}\" y=\"375\" text-anchor=\"middle\">{} (degree {})</text>",
            escape(&c.manifold),
            c.covering_degree
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Number of free orbits and whether a fixed simple exists for the flip
/// `i ↦ k − i` on `C(su(2), k)`.
pub fn su2_orbit_counts(k: usize) -> (usize, bool) {
    (k.div_ceil(2), k.is_even())
}

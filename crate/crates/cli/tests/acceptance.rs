//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see them.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use orbifusion::cohomology::{cohomology_group, is_cocycle, restrict_cochain, solve_coboundary, Cochain};
use orbifusion::fuscat::{admissible_sextuples, build_pointed, build_ty, pentagon_check, FusionCategoryData, FusionRing, Sign};
use orbifusion::group::{AbelianGroup, FiniteGroup};
use orbifusion::interpolate::{interpolated_ty, point_fusion, su2_interpolation, CirclePoint};
use orbifusion::orbisheaf::{adjunction_check, coset_action, dihedral_model, disjoint_union, mobile_identities_check, OrbifoldModel};
use orbifusion::quadform::{enumerate_quadratic_forms, isotropic_quotient, lie_centre_quadform, z2_label, Bicharacter, LieCentre};
use orbifusion::twistedrep::{frobenius_data, nakayama_check, regular_decompose, regular_rep, TwistedAlgebra};
use orbifusion::{FValue, Phase};

const TOL: f64 = 1e-9;
const SEED: u64 = 0x5EED;

const LIMIT_COHOMOLOGY: Duration = Duration::from_secs(5);
const LIMIT_TWISTED: Duration = Duration::from_secs(10);
const LIMIT_PENTAGON: Duration = Duration::from_secs(30);
const LIMIT_QUAD: Duration = Duration::from_secs(5);
const LIMIT_CENTRE: Duration = Duration::from_secs(5);
const LIMIT_INTERPOLATE: Duration = Duration::from_secs(5);
const LIMIT_ORBISHEAF: Duration = Duration::from_secs(30);

type Check = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Check) -> (Check, Duration) {
    let start = Instant::now();
    let r = f();
    let t = start.elapsed();
    match (r, limit) {
        (Ok(_), Some(l)) if t > l => (Err(format!("took {t:.2?}, limit {l:?}")), t),
        (r, _) => (r, t),
    }
}

fn small_groups() -> Vec<(String, FiniteGroup)> {
    let mut v: Vec<(String, FiniteGroup)> = (1..=8).map(|n| (format!("Z{n}"), FiniteGroup::cyclic(n).unwrap())).collect();
    v.push(("IV".into(), FiniteGroup::klein()));
    v.push(("Z2xZ4".into(), FiniteGroup::abelian_product(&[2, 4]).unwrap()));
    v.push(("Z2^3".into(), FiniteGroup::abelian_product(&[2, 2, 2]).unwrap()));
    v.push(("S3".into(), FiniteGroup::symmetric(3).unwrap()));
    v.push(("D4".into(), FiniteGroup::dihedral(4).unwrap()));
    v.push(("Q8".into(), FiniteGroup::quaternion()));
    v
}

/// Every integer combination of the generators of `Hⁿ`.
fn all_classes(g: &FiniteGroup, n: usize) -> Vec<Cochain> {
    let h = cohomology_group(g, n).unwrap();
    let mut out = vec![Cochain::zero(g, n)];
    for (gen, &ord) in h.generators.iter().zip(&h.invariant_factors) {
        out = out.iter().flat_map(|c| (0..ord).map(move |k| c.add(&gen.scale(k)).unwrap())).collect();
    }
    out
}

// Criterion 1 oracle: normalized cochains on ℤ/n with values in (1/n)ℤ/ℤ,
// enumerated directly.

struct CyclicBrute {
    n: usize,
}

impl CyclicBrute {
    fn var(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        let m = self.n - 1;
        (a != 0 && b != 0 && c != 0).then(|| ((a - 1) * m + (b - 1)) * m + (c - 1))
    }

    fn terms(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<(Option<usize>, i64)> {
        let n = self.n;
        vec![
            (self.var(b, c, d), 1),
            (self.var((a + b) % n, c, d), -1),
            (self.var(a, (b + c) % n, d), 1),
            (self.var(a, b, (c + d) % n), -1),
            (self.var(a, b, c), 1),
        ]
    }

    fn cocycles(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let vars = (n - 1).pow(3);
        let mut buckets: Vec<Vec<Vec<(usize, i64)>>> = vec![Vec::new(); vars];
        for a in 1..n {
            for b in 1..n {
                for c in 1..n {
                    for d in 1..n {
                        let t: Vec<(usize, i64)> = self.terms(a, b, c, d).into_iter().filter_map(|(v, s)| v.map(|v| (v, s))).collect();
                        if let Some(last) = t.iter().map(|x| x.0).max() {
                            buckets[last].push(t);
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        let mut vals = vec![0i64; vars];
        fn go(i: usize, n: i64, vals: &mut Vec<i64>, buckets: &[Vec<Vec<(usize, i64)>>], out: &mut Vec<Vec<i64>>) {
            if i == vals.len() {
                out.push(vals.clone());
                return;
            }
            for v in 0..n {
                vals[i] = v;
                if buckets[i].iter().all(|t| t.iter().map(|&(j, s)| s * vals[j]).sum::<i64>().rem_euclid(n) == 0) {
                    go(i + 1, n, vals, buckets, out);
                }
            }
        }
        if vars == 0 {
            return vec![vec![]];
        }
        go(0, n as i64, &mut vals, &buckets, &mut out);
        out
    }

    fn coboundary_count(&self) -> usize {
        let n = self.n;
        let m = n - 1;
        let beta = |vals: &[i64], a: usize, b: usize| if a == 0 || b == 0 { 0 } else { vals[(a - 1) * m + (b - 1)] };
        let total = n.pow((m * m) as u32);
        let mut images = HashSet::new();
        let mut vals = vec![0i64; m * m];
        for code in 0..total {
            let mut x = code;
            for v in vals.iter_mut() {
                *v = (x % n) as i64;
                x /= n;
            }
            let mut img = Vec::with_capacity(m * m * m);
            for a in 1..n {
                for b in 1..n {
                    for c in 1..n {
                        let d = beta(&vals, b, c) - beta(&vals, (a + b) % n, c) + beta(&vals, a, (b + c) % n) - beta(&vals, a, b);
                        img.push(d.rem_euclid(n as i64) as u8);
                    }
                }
            }
            images.insert(img);
        }
        images.len()
    }

    fn to_cochain(&self, g: &FiniteGroup, vals: &[i64]) -> Cochain {
        Cochain::from_fn(g, 3, |t| match self.var(t[0], t[1], t[2]) {
            Some(i) => Phase::new(vals[i], self.n as i64),
            None => Phase::ZERO,
        })
    }
}

fn criterion_1() -> Check {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    ensure(cohomology_group(&z2, 2).unwrap().invariant_factors.is_empty(), || "H²(ℤ/2) nonzero".into())?;
    let iv = cohomology_group(&FiniteGroup::klein(), 2).unwrap().invariant_factors;
    ensure(iv == [2], || format!("H²(IV) = {iv:?}"))?;
    let mut detail = Vec::new();
    for n in 2..=6usize {
        let g = FiniteGroup::cyclic(n).unwrap();
        let h = cohomology_group(&g, 3).unwrap();
        ensure(h.invariant_factors == [n as i64], || format!("H³(ℤ/{n}) = {:?}", h.invariant_factors))?;
        if n > 4 {
            continue;
        }
        let brute = CyclicBrute { n };
        let zs = brute.cocycles();
        let bs = brute.coboundary_count();
        ensure(zs.len().is_multiple_of(bs) && zs.len() / bs == n, || format!("ℤ/{n}: |Z³|={} |B³|={bs}", zs.len()))?;
        // Every enumerated cocycle lies in exactly one class k·generator.
        let gen = &h.generators[0];
        let stride = if n == 4 { 97 } else { 1 };
        for vals in zs.iter().step_by(stride) {
            let z = brute.to_cochain(&g, vals);
            ensure(is_cocycle(&z).unwrap(), || format!("ℤ/{n}: brute cocycle rejected"))?;
            let hits: Vec<i64> = (0..n as i64).filter(|&k| solve_coboundary(&z.add(&gen.scale(-k)).unwrap()).unwrap().is_some()).collect();
            ensure(hits.len() == 1, || format!("ℤ/{n}: cocycle in classes {hits:?}"))?;
        }
        detail.push(format!("ℤ/{n}: |Z|/|B| = {}/{bs}", zs.len()));
    }
    Ok(detail.join(", "))
}

fn criterion_2() -> Check {
    let klein = TwistedAlgebra::new(&orbifusion::cohomology::klein_cocycle()).unwrap();
    let d = regular_decompose(&klein).unwrap();
    let got: Vec<(usize, usize)> = d.0.iter().map(|x| (x.dim, x.mult)).collect();
    ensure(got == [(2, 2)], || format!("Klein twisted regular = {got:?}"))?;
    let mut pairs = 0;
    let mut worst = 0.0f64;
    for (name, g) in small_groups() {
        let mut twists = vec![Cochain::zero(&g, 2)];
        twists.extend(cohomology_group(&g, 2).unwrap().generators);
        for theta in &twists {
            let big = TwistedAlgebra::new(theta).unwrap();
            for h in g.subgroups() {
                let (_, f) = g.subgroup(&h).unwrap();
                let small = TwistedAlgebra::new(&restrict_cochain(theta, &f).unwrap()).unwrap();
                let nak = nakayama_check(&regular_rep(&small), &f, &big).unwrap();
                ensure(nak.passes(TOL) && nak.hom_dim == nak.tensor_dim, || format!("Nakayama {name} ⊃ {h:?}: {nak:?}"))?;
                worst = worst.max(nak.forward_deviation).max(nak.backward_deviation).max(nak.balance_deviation);
                let fr = frobenius_data(&big, &f, None).unwrap();
                let want = (g.order() as i64, h.len() as i64);
                let exact = *fr.scalar.numer() * want.1 == *fr.scalar.denom() * want.0;
                ensure(exact && fr.passes(TOL), || format!("Frobenius {name} ⊃ {h:?}: {fr:?}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} subgroup pairs, worst Nakayama deviation {worst:.1e}"))
}

fn pointed_from(omega: &Cochain) -> FusionCategoryData {
    let ring = FusionRing::pointed(omega.group());
    let f: BTreeMap<_, _> = admissible_sextuples(&ring).into_iter().map(|s| (s, FValue::from_phase(omega.get(&s[..3])))).collect();
    FusionCategoryData::new(ring, f).unwrap()
}

fn criterion_3() -> Check {
    let groups: Vec<(&str, FiniteGroup)> = vec![
        ("Z1", FiniteGroup::trivial()),
        ("Z2", FiniteGroup::cyclic(2).unwrap()),
        ("Z3", FiniteGroup::cyclic(3).unwrap()),
        ("Z4", FiniteGroup::cyclic(4).unwrap()),
        ("IV", FiniteGroup::klein()),
    ];
    let (mut classes, mut perturbed, mut broken) = (0, 0, 0);
    for (name, g) in &groups {
        let step = Phase::new(1, 2 * g.order() as i64);
        for omega in all_classes(g, 3) {
            let c = build_pointed(&omega).unwrap();
            ensure(pentagon_check(&c, TOL).passes(), || format!("{name}: cocycle {omega:?} fails pentagon"))?;
            classes += 1;
            // Single-entry bumps: the pentagon must agree with the cocycle test.
            for t in omega.tuples().filter(|t| t.iter().all(|&x| x != g.identity())).collect::<Vec<_>>() {
                let mut w = omega.clone();
                w.set(&t, omega.get(&t) + step).unwrap();
                let cocycle = is_cocycle(&w).unwrap();
                let passes = pentagon_check(&pointed_from(&w), TOL).passes();
                ensure(passes == cocycle, || format!("{name}: bump at {t:?} cocycle={cocycle} pentagon={passes}"))?;
                perturbed += 1;
                broken += usize::from(!cocycle);
            }
            // Coboundary shifts stay cocycles and must keep passing.
            for a in g.elements().skip(1) {
                for b in g.elements().skip(1) {
                    let mut beta = Cochain::zero(g, 2);
                    beta.set(&[a, b], step).unwrap();
                    let w = omega.add(&orbifusion::cohomology::coboundary(&beta).unwrap()).unwrap();
                    ensure(pentagon_check(&pointed_from(&w), TOL).passes(), || format!("{name}: shifted cocycle fails"))?;
                    perturbed += 1;
                }
            }
        }
    }
    let mut ty_instances = 0;
    for (n, v) in [(2, Phase::HALF), (3, Phase::new(1, 3)), (3, Phase::new(2, 3))] {
        for tau in [Sign::Plus, Sign::Minus] {
            let r = pentagon_check(&build_ty(&Bicharacter::cyclic(n, v).unwrap(), tau).unwrap(), TOL);
            ensure(r.passes() && r.instances > 0, || format!("TY(ℤ/{n}, {v}, {tau:?}) fails: {:?}", r.violations.first()))?;
            ty_instances += r.instances;
        }
    }
    Ok(format!("{classes} classes, {perturbed} perturbations ({broken} non-cocycles), {ty_instances} TY instances"))
}

fn criterion_4() -> Check {
    for n in 1..=12i64 {
        let count = enumerate_quadratic_forms(&AbelianGroup::cyclic(n).unwrap()).unwrap().len() as i64;
        let want = if n % 2 == 1 { n } else { 2 * n };
        ensure(count == want, || format!("|Quad(ℤ/{n})| = {count}, want {want}"))?;
    }
    let forms = enumerate_quadratic_forms(&AbelianGroup::cyclic(2).unwrap()).unwrap();
    let labels: BTreeSet<(&str, Phase)> = forms.iter().map(|q| (z2_label(q).unwrap_or("?"), q.at(1))).collect();
    let want: BTreeSet<(&str, Phase)> =
        [("Vec", 0), ("Semi", 1), ("sVec", 2), ("anti-Semi", 3)].into_iter().map(|(l, k)| (l, Phase::new(k, 4))).collect();
    ensure(labels == want, || format!("ℤ/2 labels {labels:?}"))?;
    Ok("counts n ≤ 12, four ℤ/2 labels".into())
}

fn criterion_5() -> Check {
    let cycle = ["Vec", "Semi", "sVec", "anti-Semi"];
    for k in 0..=16i64 {
        let b = lie_centre_quadform(LieCentre::SUn { n: 2, k }).unwrap();
        ensure(b.label.as_deref() == Some(cycle[(k % 4) as usize]), || format!("SU(2) k={k}: {:?}", b.label))?;
    }
    for a in 0..=3i64 {
        for b in 0..=3i64 {
            let cover = lie_centre_quadform(LieCentre::SO4 { a, b }).unwrap();
            let z = cover.group().index(&[1, 1]);
            let q = isotropic_quotient(&cover, &[z]).unwrap();
            let (order, label) = match (2 * a + b).rem_euclid(4) {
                0 => (2, "Vec"),
                2 => (2, "sVec"),
                _ => (1, "trivial"),
            };
            ensure(q.group().order() == order && q.label.as_deref() == Some(label), || {
                format!("SO(4) ({a},{b}): order {} label {:?}", q.group().order(), q.label)
            })?;
        }
    }
    for k in 1..=8i64 {
        let b = lie_centre_quadform(LieCentre::Circle { k }).unwrap();
        ensure(b.group().factors() == [2 * k] && b.form.at(1) == Phase::new(1, 4 * k), || format!("circle k={k}: {:?}", b.form))?;
    }
    Ok("SU(2) k ≤ 16, SO(4) (a,b) ∈ [0,3]², circle k ≤ 8".into())
}

fn criterion_6() -> Check {
    for k in 1..=200i64 {
        let accepted = interpolated_ty(5, k, Sign::Plus).unwrap().is_ok();
        let want = k % 5 == 0 && k % 25 != 0;
        ensure(accepted == want, || format!("interpolated TY p=5 k={k}: accepted={accepted}"))?;
    }
    let su2 = su2_interpolation(4).unwrap();
    let manifolds: Vec<&str> = su2.components.iter().map(|c| c.manifold.as_str()).collect();
    ensure(manifolds == ["S³", "S³", "ℝP³"], || format!("SU(2) k=4 components {manifolds:?}"))?;
    let ty3 = interpolated_ty(3, 3, Sign::Plus).unwrap().map_err(|r| r.reason().to_string())?.report;
    ensure(ty3.components.len() == 2 && ty3.components[1].covering_degree == 3, || "TY/ℤ3 covering degree".into())?;
    let m = |t| CirclePoint { component: 1, position: t };
    let prod = point_fusion(&ty3, m(Phase::new(1, 9)), m(Phase::new(2, 9))).unwrap();
    let want: Vec<_> =
        [Phase::ZERO, Phase::new(1, 3), Phase::new(2, 3)].into_iter().map(|t| (CirclePoint { component: 0, position: t }, 1)).collect();
    ensure(prod == want, || format!("m(1/9)⊗m(2/9) = {prod:?}"))?;
    Ok("acceptance set on [1,200], S³ S³ ℝP³, degree 3 and point fusion".into())
}

/// Subgroups up to conjugacy, as sorted element lists.
fn subgroup_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    g.subgroups().iter().map(|h| conjugacy_rep(g, h)).filter(|r| seen.insert(r.clone())).collect()
}

/// All automorphisms of `g`, as element permutations.
fn automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    for x in g.elements() {
        if !span.contains(&x) {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&x| g.elements().filter(|&y| g.element_order(y) == g.element_order(x)).collect()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0; gens.len()];
    'outer: loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        let mut map = vec![usize::MAX; g.order()];
        map[g.identity()] = g.identity();
        let mut queue = vec![g.identity()];
        let mut ok = true;
        while let Some(x) = queue.pop() {
            for (&gen, &img) in gens.iter().zip(&images) {
                let (y, fy) = (g.mul(x, gen), g.mul(map[x], img));
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    ok = false;
                }
            }
        }
        let bijective = map.iter().collect::<BTreeSet<_>>().len() == g.order();
        if ok && bijective && g.elements().all(|a| g.elements().all(|b| map[g.mul(a, b)] == g.mul(map[a], map[b]))) {
            out.push(map);
        }
        for i in 0..choice.len() {
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                continue 'outer;
            }
            choice[i] = 0;
        }
        break;
    }
    out
}

/// Least conjugate of a subgroup.
fn conjugacy_rep(g: &FiniteGroup, h: &[usize]) -> Vec<usize> {
    g.elements()
        .map(|x| {
            let mut c: Vec<usize> = h.iter().map(|&y| g.mul(g.mul(x, y), g.inv(x))).collect();
            c.sort_unstable();
            c
        })
        .min()
        .unwrap()
}

/// Isomorphism key of the model with the given orbit stabilizers and twist:
/// least image under relabelling the group by an automorphism. The twist is
/// recorded by its commutator form on abelian groups, which classifies it;
/// the non-abelian groups here have at most one nontrivial class, fixed by
/// every automorphism.
type ModelKey = (Vec<Vec<usize>>, usize, Vec<Phase>);

fn model_key(g: &FiniteGroup, autos: &[Vec<usize>], stabs: &[&Vec<usize>], class: usize, theta: &Cochain) -> ModelKey {
    autos
        .iter()
        .map(|a| {
            let mut inv = vec![0; a.len()];
            for (x, &y) in a.iter().enumerate() {
                inv[y] = x;
            }
            let mut subs: Vec<Vec<usize>> = stabs
                .iter()
                .map(|h| {
                    let mut pre: Vec<usize> = h.iter().map(|&y| inv[y]).collect();
                    pre.sort_unstable();
                    conjugacy_rep(g, &pre)
                })
                .collect();
            subs.sort();
            if g.is_abelian() {
                let form = g
                    .elements()
                    .flat_map(|x| g.elements().map(move |y| (x, y)))
                    .map(|(x, y)| theta.get(&[a[x], a[y]]) - theta.get(&[a[y], a[x]]));
                (subs, 0, form.collect())
            } else {
                (subs, class, Vec::new())
            }
        })
        .min()
        .unwrap()
}

/// Multisets of orbit types with at most `max_points` points in total.
fn orbit_multisets(sizes: &[usize], max_points: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, left: usize, sizes: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in start..sizes.len() {
            if sizes[i] <= left {
                cur.push(i);
                go(i, left - sizes[i], sizes, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, max_points, sizes, &mut Vec::new(), &mut out);
    out
}

/// Closed-form fusion of irreducible representations of the dihedral group
/// of order `2n`, by name.
fn dihedral_fusion(n: usize, x: &str, y: &str) -> BTreeMap<String, u32> {
    let rho = |j: i64| -> Vec<String> {
        let j = j.rem_euclid(n as i64) as usize;
        let j = j.min(n - j);
        if j == 0 {
            vec!["triv".into(), "sgn".into()]
        } else if 2 * j == n {
            vec!["alt+".into(), "alt-".into()]
        } else {
            vec![format!("rho{j}")]
        }
    };
    // Linear characters as (value on r, value on s).
    let linear = |s: &str| match s {
        "triv" => Some((1, 1)),
        "sgn" => Some((1, -1)),
        "alt+" => Some((-1, 1)),
        "alt-" => Some((-1, -1)),
        _ => None,
    };
    let name = |c: (i32, i32)| match c {
        (1, 1) => "triv",
        (1, -1) => "sgn",
        (-1, 1) => "alt+",
        _ => "alt-",
    };
    let level = |s: &str| s.strip_prefix("rho").map(|j| j.parse::<i64>().unwrap());
    let parts: Vec<String> = match (linear(x), linear(y)) {
        (Some(a), Some(b)) => vec![name((a.0 * b.0, a.1 * b.1)).into()],
        (Some(a), None) | (None, Some(a)) => {
            let j = level(if linear(x).is_some() { y } else { x }).unwrap();
            rho(if a.0 == 1 { j } else { j + n as i64 / 2 })
        }
        (None, None) => {
            let (j, k) = (level(x).unwrap(), level(y).unwrap());
            let mut v = rho(j + k);
            v.extend(rho(j - k));
            v
        }
    };
    let mut out = BTreeMap::new();
    for p in parts {
        *out.entry(p).or_insert(0) += 1;
    }
    out
}

fn criterion_7() -> Check {
    let mut models = 0;
    let mut sheaves = 0;
    let mut worst = 0.0f64;
    for (name, g) in small_groups() {
        let types: Vec<(Vec<usize>, usize)> = subgroup_classes(&g)
            .into_iter()
            .map(|h| {
                let size = g.order() / h.len();
                (h, size)
            })
            .filter(|(_, size)| *size <= 6)
            .collect();
        let sizes: Vec<usize> = types.iter().map(|t| t.1).collect();
        let twists = all_classes(&g, 2);
        let autos = automorphisms(&g);
        let mut seen = BTreeSet::new();
        for ms in orbit_multisets(&sizes, 6) {
            let actions: Vec<_> = ms.iter().map(|&i| coset_action(&g, &types[i].0).unwrap()).collect();
            let action = disjoint_union(&actions).unwrap();
            let stabs: Vec<&Vec<usize>> = ms.iter().map(|&i| &types[i].0).collect();
            for (class, theta) in twists.iter().enumerate() {
                if !seen.insert(model_key(&g, &autos, &stabs, class, theta)) {
                    continue;
                }
                let base = OrbifoldModel::new(&action, theta).unwrap();
                let r = adjunction_check(&base, SEED).unwrap();
                ensure(r.passes(TOL), || format!("{name} orbits {ms:?}: {r:?}"))?;
                worst = worst.max(r.triangle_deviation).max(r.equivariance_deviation).max(r.split_deviation).max(r.idempotent_deviation);
                models += 1;
                sheaves += r.sheaves_tested;
            }
        }
    }
    for n in 3..=20usize {
        let m = dihedral_model(n).unwrap();
        let names: Vec<&str> = m.simples.iter().map(|s| s.name.as_str()).collect();
        for (i, x) in names.iter().enumerate() {
            for (j, y) in names.iter().enumerate() {
                let want = dihedral_fusion(n, x, y);
                for (k, z) in names.iter().enumerate() {
                    let w = want.get(*z).copied().unwrap_or(0);
                    ensure(m.ring.n(i, j, k) == w, || format!("D_{n}: N({x},{y};{z}) = {} want {w}", m.ring.n(i, j, k)))?;
                }
                ensure(want.keys().all(|z| names.contains(&z.as_str())), || format!("D_{n}: missing simple in {want:?}"))?;
            }
        }
        let unit = m.mobile(0);
        let square = m.ring.multiply(&unit, &unit);
        ensure(square == unit.iter().map(|x| 2 * x).collect::<Vec<_>>(), || format!("D_{n}: 𝕆·𝕆 = {square:?}"))?;
        let rep = mobile_identities_check(&m);
        ensure(rep.passes(), || format!("D_{n}: {rep:?}"))?;
    }
    Ok(format!("{models} models, {sheaves} sheaves, worst deviation {worst:.1e}; D_n for 3 ≤ n ≤ 20"))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_orbifusion")).args(args).env_remove("ORBIFUSION_SEED").output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn battery(dir: &Path) -> Vec<(Vec<String>, i32, Vec<u8>)> {
    let p = |name: &str| dir.join(name).to_str().unwrap().to_owned();
    let save = |name: &str, args: &[&str]| {
        let (code, out) = cli(args);
        assert_eq!(code, 0, "{args:?}");
        std::fs::write(dir.join(name), out).unwrap();
    };
    save("gen.json", &["cohomology", "--group", "Z4", "--degree", "3", "--generators"]);
    let gen: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.join("gen.json")).unwrap()).unwrap();
    std::fs::write(dir.join("omega.json"), gen["generators"][0].to_string()).unwrap();
    save("pointed.json", &["fcat", "build", "pointed", "--group", "Z4", "--class", "1"]);
    save("ty.json", &["fcat", "build", "ty", "--group", "[3]", "--chi", "1/3", "--tau", "+"]);
    save("so4.json", &["centre", "so4", "--a", "1", "--b", "0"]);
    let so4: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.join("so4.json")).unwrap()).unwrap();
    std::fs::write(dir.join("cover.json"), so4["cover"]["form"].to_string()).unwrap();
    let model = serde_json::json!({
        "group": {"type": "abelian", "factors": [2, 2]},
        "action": [[0, 1, 2], [1, 0, 2], [0, 1, 2], [1, 0, 2]],
        "theta": gen_theta(),
    });
    std::fs::write(dir.join("model.json"), model.to_string()).unwrap();

    let runs: Vec<Vec<String>> = [
        vec!["cohomology", "--group", "[2,2]", "--degree", "2"],
        vec!["cohomology", "--group", "S3", "--degree", "3", "--generators"],
        vec!["cohomology", "--group", "Q8", "--degree", "2"],
        vec!["trivialize", &p("omega.json")],
        vec!["twistedrep", "decompose", "--klein"],
        vec!["twistedrep", "decompose", "--group", "D4"],
        vec!["twistedrep", "frobenius", "--klein", "--subgroup", "0,1"],
        vec!["twistedrep", "nakayama", "--group", "Q8", "--subgroup", "0,4"],
        vec!["fcat", "build", "pointed", "--cocycle", &p("omega.json")],
        vec!["fcat", "pentagon", &p("pointed.json")],
        vec!["fcat", "pentagon", &p("ty.json")],
        vec!["fcat", "pentagon", &p("missing.json")],
        vec!["quad", "enumerate", "--group", "[2,2]"],
        vec!["quad", "refine", "--group", "[4]", "--chi", "1/4", "--all"],
        vec!["centre", "su2", "--k", "5"],
        vec!["centre", "sun", "--n", "3", "--k", "2"],
        vec!["centre", "spin", "--k", "3"],
        vec!["centre", "circle", "--k", "4"],
        vec!["centre", "quotient", &p("cover.json"), "--z", "1,1"],
        vec!["centre", "ty", "--group", "[3]", "--chi", "1/3"],
        vec!["interpolate", "su2", "--k", "4", "--svg", &p("su2.svg")],
        vec!["interpolate", "ty", "--p", "3", "--k", "3", "--tau", "+", "--svg", &p("ty3.svg")],
        vec!["interpolate", "ty", "--p", "5", "--k", "25"],
        vec!["orbisheaf", "dihedral", "--n", "6"],
        vec!["orbisheaf", "adjunction", &p("model.json")],
        vec!["bogus"],
    ]
    .iter()
    .map(|v| v.iter().map(|s| s.to_string()).collect())
    .collect();

    let mut out = Vec::new();
    for args in runs {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, stdout) = cli(&refs);
        out.push((args, code, stdout));
    }
    for svg in ["su2.svg", "ty3.svg"] {
        out.push((vec![svg.into()], 0, std::fs::read(dir.join(svg)).unwrap()));
    }
    out
}

fn gen_theta() -> serde_json::Value {
    let c = cohomology_group(&FiniteGroup::klein(), 2).unwrap().generators.remove(0);
    orbifusion::json::cochain_to_json(&orbifusion::json::GroupSpec::parse("[2,2]").unwrap(), &c)["values"].clone()
}

fn criterion_8() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let a = battery(dir.path());
    let b = battery(dir.path());
    ensure(a.len() == b.len(), || "battery length differs".into())?;
    for (x, y) in a.iter().zip(&b) {
        ensure(x == y, || format!("{:?} differs between runs", x.0))?;
    }
    let bytes: usize = a.iter().map(|r| r.2.len()).sum();
    Ok(format!("{} invocations, {bytes} bytes identical", a.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("cohomology", Some(LIMIT_COHOMOLOGY), criterion_1),
        ("twisted representations", Some(LIMIT_TWISTED), criterion_2),
        ("pentagon", Some(LIMIT_PENTAGON), criterion_3),
        ("quadratic-form counts", Some(LIMIT_QUAD), criterion_4),
        ("centres", Some(LIMIT_CENTRE), criterion_5),
        ("interpolation", Some(LIMIT_INTERPOLATE), criterion_6),
        ("orbisheaf", Some(LIMIT_ORBISHEAF), criterion_7),
        ("determinism", None, criterion_8),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let (r, t) = timed(limit, f);
        match r {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {t:.2?})", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name} ({why}; {t:.2?})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

//! Canonical JSON for groups, cochains, fusion categories, quadratic forms
//! and twisted sheaves. Object keys come out sorted because `serde_json`
//! maps are ordered; phases are `"num/den"` strings.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::cohomology::Cochain;
use crate::error::{Error, Result};
use crate::fuscat::{FusionCategoryData, FusionRing, PentagonReport, Sextuple};
use crate::group::{AbelianGroup, FiniteGroup, GroupAction};
use crate::interpolate::{GroupModel, InterpolationReport, TyInterpolation};
use crate::linalg::CMatrix;
use crate::orbisheaf::{OrbifoldModel, TwistedSheaf};
use crate::phase::{format_ratio, parse_ratio, FValue, Phase};
use crate::quadform::{BraidedGroupData, QuadraticForm};

/// A group as written in input files: invariant factors or a full table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Abelian(AbelianGroup),
    Table(FiniteGroup),
}

impl GroupSpec {
    pub fn group(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Abelian(a) => a.embed(),
            GroupSpec::Table(g) => Ok(g.clone()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupSpec::Abelian(a) => json!({"type": "abelian", "factors": a.factors()}),
            GroupSpec::Table(g) => json!({"type": "table", "mul": g.table_rows()}),
        }
    }

    pub fn from_json(v: &Value) -> Result<GroupSpec> {
        match field_str(v, "type")? {
            "abelian" => {
                let factors: Vec<i64> = from_value(field(v, "factors")?)?;
                Ok(GroupSpec::Abelian(AbelianGroup::new(factors)?))
            }
            "table" => {
                let rows: Vec<Vec<usize>> = from_value(field(v, "mul")?)?;
                Ok(GroupSpec::Table(FiniteGroup::from_table(&rows)?))
            }
            t => Err(Error::Parse(format!("unknown group type {t:?}"))),
        }
    }

    /// Accepts the object form, a bare factor list such as `[2,2]`, or a
    /// name: `Z<n>`, `IV`, `D<n>`, `S<n>`, `Q8`.
    pub fn parse(s: &str) -> Result<GroupSpec> {
        let t = s.trim();
        if t.starts_with('[') || t.starts_with('{') {
            let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            return match v {
                Value::Array(_) => {
                    let mut factors: Vec<i64> = from_value(&v)?;
                    factors.retain(|&d| d != 1);
                    Ok(GroupSpec::Abelian(AbelianGroup::new(factors)?))
                }
                _ => GroupSpec::from_json(&v),
            };
        }
        let num = |p: &str| t[p.len()..].parse::<usize>().map_err(|_| Error::Parse(format!("unknown group {t:?}")));
        match t {
            "IV" | "V4" => Ok(GroupSpec::Abelian(AbelianGroup::new(vec![2, 2])?)),
            "Q8" => Ok(GroupSpec::Table(FiniteGroup::quaternion())),
            _ if t.starts_with('Z') => Ok(GroupSpec::Abelian(AbelianGroup::cyclic(num("Z")? as i64)?)),
            _ if t.starts_with('D') => Ok(GroupSpec::Table(FiniteGroup::dihedral(num("D")?)?)),
            _ if t.starts_with('S') => Ok(GroupSpec::Table(FiniteGroup::symmetric(num("S")?)?)),
            _ => Err(Error::Parse(format!("unknown group {t:?}"))),
        }
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn field_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| Error::Parse(format!("field {key:?} must be a string")))
}

fn from_value<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Parse(e.to_string()))
}

fn phase_str(p: Phase) -> Value {
    Value::String(p.to_string())
}

/// Nonzero values keyed by comma-joined element indices.
fn cochain_values(c: &Cochain) -> Value {
    let mut m = Map::new();
    for t in c.tuples() {
        let v = c.get(&t);
        if !v.is_zero() {
            m.insert(t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","), phase_str(v));
        }
    }
    Value::Object(m)
}

fn parse_cochain_values(g: &FiniteGroup, degree: usize, v: &Value) -> Result<Cochain> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("cochain values must be an object".into()))?;
    let mut c = Cochain::zero(g, degree);
    for (k, val) in obj {
        let args: std::result::Result<Vec<usize>, _> =
            if k.is_empty() { Ok(Vec::new()) } else { k.split(',').map(|x| x.trim().parse()).collect() };
        let args = args.map_err(|_| Error::Parse(format!("bad cochain key {k:?}")))?;
        if args.len() != degree || args.iter().any(|&a| a >= g.order()) {
            return Err(Error::Parse(format!("cochain key {k:?} is not a {degree}-tuple of elements")));
        }
        let p: Phase = from_value(val)?;
        c.set(&args, p)?;
    }
    Ok(c)
}

pub fn cochain_to_json(spec: &GroupSpec, c: &Cochain) -> Value {
    json!({"group": spec.to_json(), "degree": c.degree(), "values": cochain_values(c)})
}

pub fn cochain_from_json(v: &Value) -> Result<(GroupSpec, Cochain)> {
    let spec = GroupSpec::from_json(field(v, "group")?)?;
    let degree: usize = from_value(field(v, "degree")?)?;
    let c = parse_cochain_values(&spec.group()?, degree, field(v, "values")?)?;
    Ok((spec, c))
}

pub fn ring_to_json(r: &FusionRing) -> Value {
    let fusion: Vec<[u64; 4]> = r.triples().into_iter().map(|(i, j, k, m)| [i as u64, j as u64, k as u64, u64::from(m)]).collect();
    let mut v = json!({"rank": r.rank(), "fusion": fusion, "dual": r.duals()});
    if let Some(d) = r.dims() {
        v["dims"] = Value::from(d.iter().map(|x| format_ratio(*x)).collect::<Vec<_>>());
    }
    v
}

pub fn ring_from_json(v: &Value) -> Result<FusionRing> {
    let rank: usize = from_value(field(v, "rank")?)?;
    let fusion: Vec<(usize, usize, usize, u32)> = from_value(field(v, "fusion")?)?;
    let dual: Vec<usize> = from_value(field(v, "dual")?)?;
    let ring = FusionRing::new(rank, &fusion, dual)?;
    match v.get("dims") {
        None | Some(Value::Null) => Ok(ring),
        Some(d) => {
            let strs: Vec<String> = from_value(d)?;
            ring.with_dims(strs.iter().map(|s| parse_ratio(s)).collect::<Result<Vec<_>>>()?)
        }
    }
}

pub fn category_to_json(c: &FusionCategoryData) -> Value {
    let f: Vec<Value> = c.f_symbols().iter().map(|(s, v)| json!({"sextuple": s, "value": v})).collect();
    json!({"ring": ring_to_json(c.ring()), "f": f})
}

pub fn category_from_json(v: &Value) -> Result<FusionCategoryData> {
    let ring = ring_from_json(field(v, "ring")?)?;
    let entries = field(v, "f")?.as_array().ok_or_else(|| Error::Parse("\"f\" must be a list".into()))?;
    let mut f = BTreeMap::new();
    for e in entries {
        let s: Sextuple = from_value(field(e, "sextuple")?)?;
        let val: FValue = from_value(field(e, "value")?)?;
        if f.insert(s, val).is_some() {
            return Err(Error::Parse(format!("sextuple {s:?} listed twice")));
        }
    }
    FusionCategoryData::new(ring, f)
}

pub fn quadform_to_json(q: &QuadraticForm) -> Value {
    let h = q.group();
    let values: Map<String, Value> = h.elements().map(|x| (h.label(x), phase_str(q.at(x)))).collect();
    json!({"group": GroupSpec::Abelian(h.clone()).to_json(), "values": values})
}

pub fn quadform_from_json(v: &Value) -> Result<QuadraticForm> {
    let h = match GroupSpec::from_json(field(v, "group")?)? {
        GroupSpec::Abelian(a) => a,
        GroupSpec::Table(_) => return Err(Error::Parse("quadratic forms need an abelian group".into())),
    };
    let obj = field(v, "values")?.as_object().ok_or_else(|| Error::Parse("values must be an object".into()))?;
    let mut values = vec![Phase::ZERO; h.order()];
    for (k, val) in obj {
        values[h.parse_label(k)?] = from_value(val)?;
    }
    QuadraticForm::new(&h, values)
}

fn matrix_to_json(m: &CMatrix) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
    json!(rows)
}

fn matrix_from_json(v: &Value, n: usize) -> Result<CMatrix> {
    let rows: Vec<Vec<[f64; 2]>> = from_value(v)?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("phi matrices must be {n}×{n}")));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
}

/// The base of a sheaf: group, action table `[γ][x]` and the twist values.
pub fn model_to_json(spec: &GroupSpec, m: &OrbifoldModel) -> Value {
    let g = m.group();
    let action: Vec<Vec<usize>> = g.elements().map(|x| (0..m.points()).map(|p| m.action().act(x, p)).collect()).collect();
    json!({"group": spec.to_json(), "action": action, "theta": cochain_values(m.theta())})
}

pub fn model_from_json(v: &Value) -> Result<(GroupSpec, OrbifoldModel)> {
    let spec = GroupSpec::from_json(field(v, "group")?)?;
    let g = spec.group()?;
    let table: Vec<Vec<usize>> = from_value(field(v, "action")?)?;
    let action = GroupAction::new(&g, table)?;
    let theta = match v.get("theta") {
        None | Some(Value::Null) => Cochain::zero(&g, 2),
        Some(t) => parse_cochain_values(&g, 2, t)?,
    };
    Ok((spec, OrbifoldModel::new(&action, &theta)?))
}

pub fn sheaf_to_json(spec: &GroupSpec, f: &TwistedSheaf) -> Value {
    let fibers: Map<String, Value> = f.dims().iter().enumerate().map(|(s, &d)| (s.to_string(), json!(d))).collect();
    let phi: Vec<Value> = f.phis().iter().map(matrix_to_json).collect();
    json!({"base": model_to_json(spec, f.base()), "fibers": fibers, "phi": phi})
}

pub fn sheaf_from_json(v: &Value) -> Result<(GroupSpec, TwistedSheaf)> {
    let (spec, base) = model_from_json(field(v, "base")?)?;
    let obj = field(v, "fibers")?.as_object().ok_or_else(|| Error::Parse("fibers must be an object".into()))?;
    let mut dims = vec![0; base.points()];
    for (k, d) in obj {
        let s: usize = k.parse().map_err(|_| Error::Parse(format!("bad point {k:?}")))?;
        if s >= dims.len() {
            return Err(Error::Parse(format!("point {s} outside the base")));
        }
        dims[s] = from_value(d)?;
    }
    let n: usize = dims.iter().sum();
    let phi_v = field(v, "phi")?.as_array().ok_or_else(|| Error::Parse("phi must be a list".into()))?;
    let phi = phi_v.iter().map(|m| matrix_from_json(m, n)).collect::<Result<Vec<_>>>()?;
    Ok((spec, TwistedSheaf::new(&base, dims, phi)?))
}

pub fn braided_to_json(b: &BraidedGroupData) -> Value {
    json!({"form": quadform_to_json(&b.form), "label": b.label})
}

fn model_json(m: &GroupModel) -> Value {
    json!({"group": m.name(), "level": m.level, "subgroup_order": m.subgroup_order})
}

pub fn interpolation_to_json(r: &InterpolationReport) -> Value {
    let components: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            let points: Vec<Value> =
                c.points.iter().map(|p| json!({"simple": p.simple, "label": p.label, "position": phase_str(p.position)})).collect();
            json!({
                "orbit": c.orbit,
                "representative": c.representative,
                "stabilizer": c.stabilizer,
                "manifold": c.manifold,
                "covering_degree": c.covering_degree,
                "points": points,
            })
        })
        .collect();
    json!({
        "model": model_json(&r.model),
        "subgroup": r.subgroup,
        "admissible": r.admissible,
        "reason": r.reason,
        "braiding_verified": r.braiding_verified,
        "components": components,
        "embedding": r.embedding.as_ref().map(|e| e.iter().map(|p| phase_str(*p)).collect::<Vec<_>>()),
    })
}

pub fn ty_interpolation_to_json(t: &TyInterpolation) -> Value {
    json!({
        "p": t.p,
        "level": t.level,
        "tau": t.tau.to_string(),
        "induced": phase_str(t.induced),
        "refinement": phase_str(t.refinement),
        "bicharacter": phase_str(t.bicharacter),
        "report": interpolation_to_json(&t.report),
    })
}

pub fn pentagon_to_json(r: &PentagonReport) -> Value {
    let violations: Vec<Value> =
        r.violations.iter().map(|v| json!({"objects": v.objects, "labels": v.labels, "deviation": v.deviation})).collect();
    json!({"instances": r.instances, "passes": r.passes(), "violations": violations})
}

/// `{"error": code, "witness": …}` for a failed operation.
pub fn error_to_json(e: &Error) -> Value {
    json!({"error": e.code(), "witness": e.witness()})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cyclic_three_cocycle, klein_cocycle};
    use crate::fuscat::{build_pointed, build_ty, Sign};
    use crate::orbisheaf::induce_i;
    use crate::quadform::{enumerate_quadratic_forms, Bicharacter};

    fn roundtrip(v: &Value) -> Value {
        serde_json::from_str(&serde_json::to_string(v).unwrap()).unwrap()
    }

    #[test]
    fn group_specs() {
        for s in ["[2,2]", "Z6", "IV", "D4", "S3", "Q8", "{\"type\":\"abelian\",\"factors\":[2,4]}", "[1,3]"] {
            let spec = GroupSpec::parse(s).unwrap();
            assert_eq!(GroupSpec::from_json(&roundtrip(&spec.to_json())).unwrap(), spec);
        }
        assert_eq!(GroupSpec::parse("[1,3]").unwrap(), GroupSpec::Abelian(AbelianGroup::new(vec![3]).unwrap()));
        assert!(GroupSpec::parse("Y7").is_err());
        assert!(GroupSpec::parse("[3,2]").is_err());
    }

    #[test]
    fn cochains() {
        let spec = GroupSpec::parse("[2,2]").unwrap();
        let c = klein_cocycle();
        let v = cochain_to_json(&spec, &c);
        assert_eq!(v["values"].as_object().unwrap().len(), 4);
        assert_eq!(cochain_from_json(&roundtrip(&v)).unwrap(), (spec, c));
        let z4 = GroupSpec::parse("Z4").unwrap();
        let w = cyclic_three_cocycle(4, 1).unwrap();
        let text = serde_json::to_string(&cochain_to_json(&z4, &w)).unwrap();
        assert!(text.starts_with("{\"degree\":3,\"group\""));
        assert_eq!(cochain_from_json(&serde_json::from_str(&text).unwrap()).unwrap().1, w);
    }

    #[test]
    fn categories() {
        let pointed = build_pointed(&cyclic_three_cocycle(3, 1).unwrap()).unwrap();
        assert_eq!(category_from_json(&roundtrip(&category_to_json(&pointed))).unwrap(), pointed);
        let ising = build_ty(&Bicharacter::cyclic(2, Phase::new(1, 2)).unwrap(), Sign::Minus).unwrap();
        assert_eq!(category_from_json(&roundtrip(&category_to_json(&ising))).unwrap(), ising);
        let mut v = category_to_json(&ising);
        v["f"].as_array_mut().unwrap().pop();
        assert!(category_from_json(&v).is_err());
    }

    #[test]
    fn quadratic_forms() {
        for q in enumerate_quadratic_forms(&AbelianGroup::new(vec![2, 4]).unwrap()).unwrap() {
            assert_eq!(quadform_from_json(&roundtrip(&quadform_to_json(&q))).unwrap(), q);
        }
    }

    #[test]
    fn sheaves() {
        let spec = GroupSpec::parse("IV").unwrap();
        let g = spec.group().unwrap();
        let base = OrbifoldModel::new(&GroupAction::trivial(&g, 2), &klein_cocycle()).unwrap();
        let f = induce_i(&base, &[1, 0]).unwrap();
        let v = sheaf_to_json(&spec, &f);
        assert_eq!(v["fibers"], json!({"0": 4, "1": 0}));
        let (spec2, f2) = sheaf_from_json(&roundtrip(&v)).unwrap();
        assert_eq!((spec2, f2), (spec, f));
    }
}

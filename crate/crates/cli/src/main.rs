use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use orbifusion::cohomology::{cohomology_group, cyclic_three_cocycle, klein_cocycle, restrict_cochain, solve_coboundary, Cochain};
use orbifusion::fuscat::{build_pointed, build_ty, pentagon_check, Sign};
use orbifusion::group::{AbelianGroup, FiniteGroup, GroupHom};
use orbifusion::interpolate::{interpolated_ty, su2_interpolation, svg_moduli, InterpolationReport};
use orbifusion::json::{self as js, GroupSpec};
use orbifusion::orbisheaf::{
    adjunction_check, dihedral_model, mobile_identities_check, sheaf_dimension, sheaf_hom, sheaf_validate, support,
};
use orbifusion::quadform::{
    all_refinements, enumerate_quadratic_forms, isotropic_quotient, lie_centre_quadform, quadratic_refinement, ty_centre_invertibles,
    Bicharacter, LieCentre,
};
use orbifusion::twistedrep::{frobenius_data, nakayama_check, regular_decompose_seeded, regular_rep, TwistedAlgebra, DEFAULT_SEED};
use orbifusion::{Error, Phase};

#[derive(Parser)]
#[command(name = "orbifusion", version, about = "Finite shadows of orbifold tensor categories")]
struct Cli {
    /// Numerical tolerance for floating-point checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariant factors of H^n(BG; ℚ/ℤ).
    Cohomology {
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: usize,
        /// Also print one generating cochain per invariant factor.
        #[arg(long)]
        generators: bool,
    },
    /// Finds a primitive for a cocycle, if it is a coboundary.
    Trivialize { file: PathBuf },
    Twistedrep {
        #[command(subcommand)]
        op: RepOp,
    },
    Fcat {
        #[command(subcommand)]
        op: FcatOp,
    },
    Quad {
        #[command(subcommand)]
        op: QuadOp,
    },
    Centre {
        #[command(subcommand)]
        op: CentreOp,
    },
    Interpolate {
        #[command(subcommand)]
        op: InterpOp,
    },
    Orbisheaf {
        #[command(subcommand)]
        op: SheafOp,
    },
}

#[derive(Args)]
struct TwistArgs {
    /// Group name or factor list; ignored when a cocycle file is given.
    #[arg(long)]
    group: Option<String>,
    /// Cochain JSON for the 2-cocycle.
    #[arg(long)]
    cocycle: Option<PathBuf>,
    /// The Klein four-group with its nontrivial twist.
    #[arg(long, conflicts_with_all = ["group", "cocycle"])]
    klein: bool,
}

#[derive(Subcommand)]
enum RepOp {
    /// Regular representation of the twisted group algebra, decomposed.
    Decompose {
        #[command(flatten)]
        twist: TwistArgs,
    },
    /// Unit and counit of restriction and induction along a subgroup.
    Frobenius {
        #[command(flatten)]
        twist: TwistArgs,
        /// Comma-separated subgroup elements.
        #[arg(long)]
        subgroup: String,
    },
    /// Induction against coinduction along a subgroup, on its regular representation.
    Nakayama {
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long)]
        subgroup: String,
    },
}

#[derive(Subcommand)]
enum FcatOp {
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Checks every pentagon instance of a category file.
    Pentagon { file: PathBuf },
}

#[derive(Subcommand)]
enum BuildKind {
    /// Vec^ω[G] from a 3-cocycle.
    Pointed {
        #[arg(long)]
        group: Option<String>,
        /// Class `a` of the standard 3-cocycle on a cyclic group.
        #[arg(long, requires = "group")]
        class: Option<i64>,
        #[arg(long, conflicts_with = "class")]
        cocycle: Option<PathBuf>,
    },
    /// Tambara-Yamagami category.
    Ty {
        #[arg(long)]
        group: String,
        /// Bicharacter on generators: a phase for cyclic groups, otherwise a JSON matrix of phases.
        #[arg(long)]
        chi: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: Sign,
    },
}

#[derive(Subcommand)]
enum QuadOp {
    /// All quadratic forms on a finite abelian group.
    Enumerate {
        #[arg(long)]
        group: String,
    },
    /// Quadratic refinements of a symmetric bicharacter.
    Refine {
        #[arg(long)]
        group: String,
        #[arg(long)]
        chi: String,
        /// List all refinements instead of the least one.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum CentreOp {
    Su2 {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    Sun {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    Spin {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    Circle {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Spin(4) data and its quotient by the diagonal ℤ/2.
    So4 {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Z′/Z for a quadratic form file and isotropic generators.
    Quotient {
        file: PathBuf,
        /// Generators as element tuples separated by ';', e.g. "1,1".
        #[arg(long)]
        z: String,
    },
    /// Invertible part of the centre of a Tambara-Yamagami category.
    Ty {
        #[arg(long)]
        group: String,
        #[arg(long)]
        chi: String,
    },
}

#[derive(Subcommand)]
enum InterpOp {
    Su2 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    Ty {
        #[arg(long)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true, default_value = "+")]
        tau: Sign,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SheafOp {
    /// Validates a sheaf file and reports support, dimensions and End.
    Check { file: PathBuf },
    /// Rep(D_n) over ℤ/n modulo ±, with the mobile identities.
    Dihedral {
        #[arg(long)]
        n: usize,
    },
    /// Both adjunctions between forgetting and induction on a model file.
    Adjunction { file: PathBuf },
}

enum Failure {
    Usage(String),
    Domain(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(js::error_to_json(&e))
    }
}

type Out = Result<Value, Failure>;

fn seed() -> Result<u64, Failure> {
    match std::env::var("ORBIFUSION_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Usage(format!("ORBIFUSION_SEED must be an integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())).into())
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Domain(json!({"error": "io", "witness": format!("{}: {e}", path.display())})))
}

fn abelian(spec: &str) -> Result<AbelianGroup, Failure> {
    match GroupSpec::parse(spec)? {
        GroupSpec::Abelian(a) => Ok(a),
        GroupSpec::Table(_) => Err(Error::InvalidInput(format!("{spec} is not given as an abelian group")).into()),
    }
}

fn bicharacter(group: &str, chi: &str) -> Result<Bicharacter, Failure> {
    let h = abelian(group)?;
    let gens: Vec<Vec<Phase>> = if chi.trim_start().starts_with('[') {
        let rows: Vec<Vec<String>> = serde_json::from_str(chi).map_err(|e| Error::Parse(e.to_string()))?;
        rows.iter().map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<Phase>, Error>>()).collect::<Result<_, _>>()?
    } else {
        vec![vec![chi.parse::<Phase>()?]]
    };
    Ok(Bicharacter::from_generators(&h, &gens)?)
}

fn subgroup_elems(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| Failure::Usage(format!("bad subgroup element {t:?}"))))
        .collect()
}

fn twisted_algebra(t: &TwistArgs) -> Result<TwistedAlgebra, Failure> {
    if t.klein {
        return Ok(TwistedAlgebra::new(&klein_cocycle())?);
    }
    if let Some(path) = &t.cocycle {
        let (_, c) = js::cochain_from_json(&read_json(path)?)?;
        return Ok(TwistedAlgebra::new(&c)?);
    }
    let g = t.group.as_deref().ok_or_else(|| Failure::Usage("need --group, --cocycle or --klein".into()))?;
    Ok(TwistedAlgebra::untwisted(&GroupSpec::parse(g)?.group()?))
}

fn inclusion(big: &FiniteGroup, elems: &str) -> Result<GroupHom, Failure> {
    Ok(big.subgroup(&subgroup_elems(elems)?)?.1)
}

fn twistedrep(op: &RepOp, tol: f64) -> Out {
    match op {
        RepOp::Decompose { twist } => {
            let a = twisted_algebra(twist)?;
            Ok(serde_json::to_value(regular_decompose_seeded(&a, seed()?)?).expect("serializable"))
        }
        RepOp::Frobenius { twist, subgroup } => {
            let a = twisted_algebra(twist)?;
            let f = inclusion(a.group(), subgroup)?;
            let r = frobenius_data(&a, &f, None)?;
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["passes"] = json!(r.passes(tol));
            Ok(v)
        }
        RepOp::Nakayama { twist, subgroup } => {
            let a = twisted_algebra(twist)?;
            let f = inclusion(a.group(), subgroup)?;
            let small = TwistedAlgebra::new(&restrict_cochain(a.theta(), &f)?)?;
            let r = nakayama_check(&regular_rep(&small), &f, &a)?;
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["passes"] = json!(r.passes(tol));
            Ok(v)
        }
    }
}

fn fcat(op: &FcatOp, tol: f64) -> Out {
    match op {
        FcatOp::Build { kind: BuildKind::Pointed { group, class, cocycle } } => {
            let omega: Cochain = match (cocycle, class, group) {
                (Some(path), _, _) => js::cochain_from_json(&read_json(path)?)?.1,
                (None, Some(a), Some(g)) => {
                    let h = abelian(g)?;
                    if h.rank() != 1 {
                        return Err(Failure::Usage("--class needs a cyclic group".into()));
                    }
                    cyclic_three_cocycle(h.order(), *a)?
                }
                (None, None, Some(g)) => Cochain::zero(&GroupSpec::parse(g)?.group()?, 3),
                _ => return Err(Failure::Usage("need --group or --cocycle".into())),
            };
            Ok(js::category_to_json(&build_pointed(&omega)?))
        }
        FcatOp::Build { kind: BuildKind::Ty { group, chi, tau } } => Ok(js::category_to_json(&build_ty(&bicharacter(group, chi)?, *tau)?)),
        FcatOp::Pentagon { file } => {
            let c = js::category_from_json(&read_json(file)?)?;
            Ok(js::pentagon_to_json(&pentagon_check(&c, tol)))
        }
    }
}

fn quad(op: &QuadOp) -> Out {
    match op {
        QuadOp::Enumerate { group } => {
            let forms = enumerate_quadratic_forms(&abelian(group)?)?;
            Ok(json!({"count": forms.len(), "forms": forms.iter().map(js::quadform_to_json).collect::<Vec<_>>()}))
        }
        QuadOp::Refine { group, chi, all } => {
            let chi = bicharacter(group, chi)?;
            if *all {
                let forms = all_refinements(&chi)?;
                Ok(json!({"count": forms.len(), "refinements": forms.iter().map(js::quadform_to_json).collect::<Vec<_>>()}))
            } else {
                Ok(json!({"refinement": quadratic_refinement(&chi)?.as_ref().map(js::quadform_to_json)}))
            }
        }
    }
}

fn centre(op: &CentreOp) -> Out {
    let lie = |f| -> Out { Ok(js::braided_to_json(&lie_centre_quadform(f)?)) };
    match op {
        CentreOp::Su2 { k } => lie(LieCentre::SUn { n: 2, k: *k }),
        CentreOp::Sun { n, k } => lie(LieCentre::SUn { n: *n, k: *k }),
        CentreOp::Spin { k } => lie(LieCentre::SpinOdd { k: *k }),
        CentreOp::Circle { k } => lie(LieCentre::Circle { k: *k }),
        CentreOp::So4 { a, b } => {
            let cover = lie_centre_quadform(LieCentre::SO4 { a: *a, b: *b })?;
            let diag = cover.group().index(&[1, 1]);
            let quotient = isotropic_quotient(&cover, &[diag])?;
            Ok(json!({"cover": js::braided_to_json(&cover), "quotient": js::braided_to_json(&quotient)}))
        }
        CentreOp::Quotient { file, z } => {
            let form = js::quadform_from_json(&read_json(file)?)?;
            let data = orbifusion::quadform::BraidedGroupData::new(form);
            let gens =
                z.split(';').filter(|t| !t.trim().is_empty()).map(|t| data.group().parse_label(t)).collect::<Result<Vec<_>, Error>>()?;
            Ok(js::braided_to_json(&isotropic_quotient(&data, &gens)?))
        }
        CentreOp::Ty { group, chi } => {
            let c = ty_centre_invertibles(&bicharacter(group, chi)?)?;
            Ok(json!({
                "braided": js::braided_to_json(&c.braided),
                "refinement": js::quadform_to_json(&c.refinement),
                "section_law_holds": c.section_law_holds,
            }))
        }
    }
}

fn emit_svg(report: &InterpolationReport, path: &Option<PathBuf>) -> Result<(), Failure> {
    if let Some(p) = path {
        write_file(p, &svg_moduli(report)?)?;
    }
    Ok(())
}

fn interpolate(op: &InterpOp) -> Out {
    match op {
        InterpOp::Su2 { k, svg } => {
            let r = su2_interpolation(*k)?;
            emit_svg(&r, svg)?;
            Ok(js::interpolation_to_json(&r))
        }
        InterpOp::Ty { p, k, tau, svg } => match interpolated_ty(*p, *k, *tau)? {
            Ok(t) => {
                emit_svg(&t.report, svg)?;
                Ok(js::ty_interpolation_to_json(&t))
            }
            Err(rej) => Err(Failure::Domain(json!({"error": rej.code(), "witness": {"p": p, "k": k, "reason": rej.reason()}}))),
        },
    }
}

fn orbisheaf(op: &SheafOp, tol: f64) -> Out {
    match op {
        SheafOp::Check { file } => {
            let (_, f) = js::sheaf_from_json(&read_json(file)?)?;
            let rep = sheaf_validate(&f);
            let valid = rep.passes(tol);
            let dims: serde_json::Map<String, Value> = (0..f.dims().len())
                .filter_map(|s| sheaf_dimension(&f, s).ok().map(|d| (s.to_string(), json!(format!("{}/{}", d.numer(), d.denom())))))
                .collect();
            let end = if valid { Some(sheaf_hom(&f, &f, tol)?.dim()) } else { None };
            Ok(json!({
                "valid": valid,
                "block_deviation": rep.block_deviation,
                "law_deviation": rep.law_deviation,
                "identity_deviation": rep.identity_deviation,
                "witness": if valid { Value::Null } else { json!(rep.witness) },
                "effective": f.base().is_effective(),
                "support": support(&f),
                "dimensions": dims,
                "end_dim": end,
            }))
        }
        SheafOp::Dihedral { n } => {
            let m = dihedral_model(*n)?;
            let simples: Vec<Value> = m
                .simples
                .iter()
                .map(|d| {
                    json!({
                        "name": d.name,
                        "dim": d.dim,
                        "support": d.support,
                        "stabilizer_order": d.stabilizer_order,
                        "sheaf_dim": format!("{}/{}", d.sheaf_dim.numer(), d.sheaf_dim.denom()),
                    })
                })
                .collect();
            let rep = mobile_identities_check(&m);
            Ok(json!({
                "n": n,
                "simples": simples,
                "ring": js::ring_to_json(&m.ring),
                "mobile_identities": {
                    "passes": rep.passes(),
                    "mobile_square": rep.mobile_square_ok,
                    "mobile_product_failures": rep.mobile_product_failures,
                    "dual_square_failures": rep.dual_square_failures,
                    "unit_dim": format!("{}/{}", rep.unit_dim.numer(), rep.unit_dim.denom()),
                },
            }))
        }
        SheafOp::Adjunction { file } => {
            let (_, base) = js::model_from_json(&read_json(file)?)?;
            let r = adjunction_check(&base, seed()?)?;
            Ok(json!({
                "passes": r.passes(tol),
                "sheaves_tested": r.sheaves_tested,
                "pairs_tested": r.pairs_tested,
                "dimension_mismatches": r.dimension_mismatches,
                "triangle_deviation": r.triangle_deviation,
                "equivariance_deviation": r.equivariance_deviation,
                "split_deviation": r.split_deviation,
                "idempotent_deviation": r.idempotent_deviation,
                "rank_failures": r.rank_failures,
            }))
        }
    }
}

fn run(cli: &Cli) -> Out {
    let tol = cli.tol;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
    }
    match &cli.cmd {
        Cmd::Cohomology { group, degree, generators } => {
            let spec = GroupSpec::parse(group)?;
            let h = cohomology_group(&spec.group()?, *degree)?;
            let mut v = json!({"invariant_factors": h.invariant_factors});
            if *generators {
                v["generators"] = h.generators.iter().map(|c| js::cochain_to_json(&spec, c)).collect();
            }
            Ok(v)
        }
        Cmd::Trivialize { file } => {
            let (spec, c) = js::cochain_from_json(&read_json(file)?)?;
            let prim = solve_coboundary(&c)?;
            Ok(json!({"trivial": prim.is_some(), "primitive": prim.map(|p| js::cochain_to_json(&spec, &p))}))
        }
        Cmd::Twistedrep { op } => twistedrep(op, tol),
        Cmd::Fcat { op } => fcat(op, tol),
        Cmd::Quad { op } => quad(op),
        Cmd::Centre { op } => centre(op),
        Cmd::Interpolate { op } => interpolate(op),
        Cmd::Orbisheaf { op } => orbisheaf(op, tol),
    }
}

fn emit(v: &Value, code: ExitCode) -> ExitCode {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{v}") {
        Ok(()) => code,
        Err(_) => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => emit(&v, ExitCode::SUCCESS),
        Err(Failure::Domain(v)) => emit(&v, ExitCode::from(1)),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

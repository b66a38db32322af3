//! arex: compute AR quivers, Grothendieck-group lattices, and effaceable
//! functor decompositions for bound quiver algebras described by JSON
//! instance files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use arex_core::algebra::{
    build_algebra, AlgebraError, Conflation, ModMorphism, ModuleRep, QuiverPresentation,
};
use arex_core::arquiver::{build_ar_quiver, enumerate_indecomposables, ArError, IndecRegistry};
use arex_core::efffun::{decompose_into_ar, EffError};
use arex_core::fp::FpMat;
use arex_core::groth::check_ar_eq_ex;
use arex_core::subcat::{
    check_extension_closed, check_resolving, check_torsion_class, omega_minus, perp,
    relative_structure, syzygy_category, SubcatError, SubcategorySpec,
};

#[derive(Parser)]
#[command(name = "arex", version, about = "AR quiver and exact-structure toolkit")]
struct Cli {
    /// Seed for randomized auxiliary computations (reports echo it).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the indecomposable registry.
    Indec { instance: PathBuf },
    /// Build the AR quiver; optionally export DOT.
    ArQuiver {
        instance: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Report the Grothendieck group K0(E) = K0(E,0)/Ex.
    K0 { instance: PathBuf },
    /// Verification commands (exit 2 on failure).
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Decompose the functor presented by a conflation into AR classes.
    Decompose {
        instance: PathBuf,
        #[arg(long)]
        conflation: PathBuf,
    },
    /// Subcategory predicates over members named by label.
    Subcat {
        instance: PathBuf,
        #[arg(long = "members", required = true)]
        members: Vec<String>,
        #[arg(long, value_enum)]
        check: SubcatCheck,
    },
    /// Left orthogonal category of a module, with a cotilting report.
    Perp {
        instance: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Syzygy category listing and cosyzygy adjunction report.
    Syzygy { instance: PathBuf },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Decide AR(E) = Ex(E); exit 0 if equal, 2 if not.
    ArEx {
        instance: PathBuf,
        /// Compare after saturation instead of exactly.
        #[arg(long)]
        rational: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SubcatCheck {
    Ext,
    Resolving,
    Torsion,
    Relative,
}

// --- instance and fixture schemas ---------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    field: FieldSpec,
    quiver: QuiverSpec,
    #[serde(default)]
    relations: Vec<Vec<String>>,
    #[serde(default)]
    options: Options,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSpec {
    char: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverSpec {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowSpec {
    name: String,
    source: String,
    target: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, default)]
struct Options {
    indec_bound: usize,
    trial_bound: usize,
    strict_scan: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options { indec_bound: 256, trial_bound: 65536, strict_scan: false }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    dims: Vec<usize>,
    /// Arrow name -> matrix (target dim x source dim); omitted arrows act
    /// by zero.
    #[serde(default)]
    arrows: BTreeMap<String, Vec<Vec<u64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConflationFile {
    x: ModuleFile,
    y: ModuleFile,
    z: ModuleFile,
    /// Inflation and deflation as one matrix per vertex.
    f: Vec<Vec<Vec<u64>>>,
    g: Vec<Vec<Vec<u64>>>,
}

// --- error plumbing ------------------------------------------------------

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn invalid(msg: impl Into<String>) -> CliError {
        CliError { code: 4, message: msg.into() }
    }

    fn check_failed(msg: impl Into<String>) -> CliError {
        CliError { code: 2, message: msg.into() }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> CliError {
        let code = match e {
            AlgebraError::CapExceeded(_) => 3,
            _ => 4,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<ArError> for CliError {
    fn from(e: ArError) -> CliError {
        let code = match e {
            ArError::BoundExceeded(_) => 3,
            ArError::Algebra(AlgebraError::CapExceeded(_)) => 3,
            _ => 4,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<SubcatError> for CliError {
    fn from(e: SubcatError) -> CliError {
        let code = match e {
            SubcatError::VerificationFailed(_) | SubcatError::NoRelativeARFound(_) => 2,
            SubcatError::Ar(ArError::BoundExceeded(_)) => 3,
            _ => 4,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<EffError> for CliError {
    fn from(e: EffError) -> CliError {
        CliError { code: 2, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::invalid(e.to_string())
    }
}

// --- parsing helpers -----------------------------------------------------

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::invalid(format!("{}: {}", path.display(), e)))
}

struct Loaded {
    instance: InstanceFile,
    reg: IndecRegistry,
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let instance: InstanceFile = read_json(path)?;
    let pres = QuiverPresentation::new(
        instance.quiver.vertices.clone(),
        instance
            .quiver
            .arrows
            .iter()
            .map(|a| (a.name.clone(), a.source.clone(), a.target.clone()))
            .collect(),
        instance.relations.clone(),
        instance.field.char,
    )?;
    let alg = build_algebra(pres, 10_000)?;
    let reg = enumerate_indecomposables(&alg, instance.options.indec_bound)?;
    Ok(Loaded { instance, reg })
}

fn parse_matrix(p: u64, rows: usize, cols: usize, data: &[Vec<u64>]) -> Result<FpMat, CliError> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(CliError::invalid(format!(
            "matrix has wrong shape: expected {}x{}",
            rows, cols
        )));
    }
    let mut m = FpMat::zeros(p, rows, cols);
    for (i, row) in data.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            m.set(i, j, e % p);
        }
    }
    Ok(m)
}

fn parse_module(
    alg: &Arc<arex_core::algebra::AlgebraInstance>,
    file: &ModuleFile,
) -> Result<ModuleRep, CliError> {
    let p = alg.field_char();
    let pres = &alg.presentation;
    if file.dims.len() != pres.vertices.len() {
        return Err(CliError::invalid("module dims do not match the vertex count"));
    }
    for name in file.arrows.keys() {
        if !pres.arrows.iter().any(|a| &a.name == name) {
            return Err(CliError::invalid(format!("unknown arrow in module: {}", name)));
        }
    }
    let mut action = Vec::with_capacity(pres.arrows.len());
    for a in &pres.arrows {
        let rows = file.dims[a.target];
        let cols = file.dims[a.source];
        let m = match file.arrows.get(&a.name) {
            Some(data) => parse_matrix(p, rows, cols, data)?,
            None => FpMat::zeros(p, rows, cols),
        };
        action.push(m);
    }
    let rep = ModuleRep { alg: alg.clone(), dims: file.dims.clone(), action };
    for rel in &pres.relations {
        let src = pres.arrows[rel[0]].source;
        if !rep.arrows_action(src, rel).is_zero() {
            return Err(CliError::invalid("relation does not annihilate the module"));
        }
    }
    Ok(rep)
}

fn parse_map(
    source: &ModuleRep,
    target: &ModuleRep,
    data: &[Vec<Vec<u64>>],
) -> Result<ModMorphism, CliError> {
    if data.len() != source.dims.len() {
        return Err(CliError::invalid("morphism must give one block per vertex"));
    }
    let mut blocks = Vec::with_capacity(data.len());
    for (v, d) in data.iter().enumerate() {
        blocks.push(parse_matrix(source.p(), target.dims[v], source.dims[v], d)?);
    }
    let f = ModMorphism {
        source: source.clone(),
        target: target.clone(),
        blocks,
    };
    if !f.commutes() {
        return Err(CliError::invalid("morphism does not commute with the arrow action"));
    }
    Ok(f)
}

fn parse_conflation(
    alg: &Arc<arex_core::algebra::AlgebraInstance>,
    path: &Path,
) -> Result<Conflation, CliError> {
    let file: ConflationFile = read_json(path)?;
    let x = parse_module(alg, &file.x)?;
    let y = parse_module(alg, &file.y)?;
    let z = parse_module(alg, &file.z)?;
    let f = parse_map(&x, &y, &file.f)?;
    let g = parse_map(&y, &z, &file.g)?;
    let c = Conflation { f, g };
    // never trust input exactness
    if !c.verify() {
        return Err(CliError::invalid("conflation fixture is not exact"));
    }
    Ok(c)
}

fn member_indices(reg: &IndecRegistry, labels: &[String]) -> Result<Vec<usize>, CliError> {
    let known = reg.labels();
    labels
        .iter()
        .map(|l| {
            known
                .iter()
                .position(|k| k == l)
                .ok_or_else(|| CliError::invalid(format!("unknown member label: {}", l)))
        })
        .collect()
}

// --- reporting -----------------------------------------------------------

fn instance_echo(loaded: &Loaded) -> Value {
    json!({
        "field_char": loaded.instance.field.char,
        "vertices": loaded.instance.quiver.vertices,
        "arrows": loaded.instance.quiver.arrows.iter()
            .map(|a| json!({"name": a.name, "source": a.source, "target": a.target}))
            .collect::<Vec<_>>(),
        "relations": loaded.instance.relations,
        "algebra_dimension": loaded.reg.alg.dimension(),
        "indec_bound": loaded.instance.options.indec_bound,
        "trial_bound": loaded.instance.options.trial_bound,
        "strict_scan": loaded.instance.options.strict_scan,
    })
}

fn emit(command: &str, seed: u64, loaded: &Loaded, results: Value) {
    let report = json!({
        "tool": "arex",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": seed,
        "instance": instance_echo(loaded),
        "results": results,
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
}

fn export_dot(
    g: &arex_core::arquiver::ARQuiverGraph,
    path: &Path,
) -> Result<(), CliError> {
    let mut out = String::from("digraph ar_quiver {\n  rankdir=LR;\n");
    for l in &g.labels {
        out.push_str(&format!("  \"{}\";\n", l));
    }
    for &(from, to, mult) in &g.edges {
        if mult > 1 {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                g.labels[from], g.labels[to], mult
            ));
        } else {
            out.push_str(&format!("  \"{}\" -> \"{}\";\n", g.labels[from], g.labels[to]));
        }
    }
    for (z, tau) in g.translation.iter().enumerate() {
        if let Some(t) = tau {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [style=dashed];\n",
                g.labels[z], g.labels[*t]
            ));
        }
    }
    out.push_str("}\n");
    std::fs::write(path, out)?;
    Ok(())
}

// --- commands ------------------------------------------------------------

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Indec { instance } => {
            let loaded = load(&instance)?;
            let reg = &loaded.reg;
            let labels = reg.labels();
            let items: Vec<Value> = (0..reg.len())
                .map(|i| {
                    json!({
                        "label": labels[i],
                        "dims": reg.indecs[i].dims,
                        "total_dim": reg.indecs[i].total_dim(),
                        "division_degree": reg.division_degree[i],
                        "projective": reg.projective_flags[i],
                        "injective": reg.injective_flags[i],
                    })
                })
                .collect();
            emit(
                "indec",
                cli.seed,
                &loaded,
                json!({"count": reg.len(), "indecomposables": items}),
            );
            Ok(())
        }
        Cmd::ArQuiver { instance, dot } => {
            let loaded = load(&instance)?;
            let g = build_ar_quiver(&loaded.reg)?;
            if let Some(path) = &dot {
                export_dot(&g, path)?;
            }
            let edges: Vec<Value> = g
                .edges
                .iter()
                .map(|&(f, t, m)| {
                    json!({"from": g.labels[f], "to": g.labels[t], "mult": m})
                })
                .collect();
            let translation: Vec<Value> = g
                .translation
                .iter()
                .enumerate()
                .filter_map(|(z, t)| {
                    t.map(|t| json!({"z": g.labels[z], "tau_z": g.labels[t]}))
                })
                .collect();
            emit(
                "ar-quiver",
                cli.seed,
                &loaded,
                json!({"nodes": g.labels, "edges": edges, "translation": translation}),
            );
            Ok(())
        }
        Cmd::K0 { instance } => {
            let loaded = load(&instance)?;
            let v = check_ar_eq_ex(&loaded.reg).map_err(groth_err)?;
            emit(
                "k0",
                cli.seed,
                &loaded,
                json!({
                    "free_rank": v.k0_free_rank,
                    "torsion": v.k0_torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    "num_indecomposables": loaded.reg.len(),
                }),
            );
            Ok(())
        }
        Cmd::Check { what } => match what {
            CheckCmd::ArEx { instance, rational } => {
                let loaded = load(&instance)?;
                let v = check_ar_eq_ex(&loaded.reg).map_err(groth_err)?;
                let passed = if rational { v.equal_rational } else { v.equal_exact };
                emit(
                    "check ar-ex",
                    cli.seed,
                    &loaded,
                    json!({
                        "equal_exact": v.equal_exact,
                        "equal_rational": v.equal_rational,
                        "mode": if rational { "rational" } else { "exact" },
                        "passed": passed,
                        "k0_free_rank": v.k0_free_rank,
                        "k0_torsion": v.k0_torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    }),
                );
                if passed {
                    Ok(())
                } else {
                    Err(CliError::check_failed("AR lattice differs from Ex lattice"))
                }
            }
        },
        Cmd::Decompose { instance, conflation } => {
            let loaded = load(&instance)?;
            let c = parse_conflation(&loaded.reg.alg, &conflation)?;
            let mv = decompose_into_ar(&loaded.reg, &c)?;
            let labels = loaded.reg.labels();
            let mults: BTreeMap<String, usize> = mv
                .mults
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(i, &m)| (labels[i].clone(), m))
                .collect();
            emit(
                "decompose",
                cli.seed,
                &loaded,
                json!({
                    "multiplicities": mults,
                    "length": mv.length(),
                    "identity_verified": true,
                }),
            );
            Ok(())
        }
        Cmd::Subcat { instance, members, check } => {
            let loaded = load(&instance)?;
            let idx = member_indices(&loaded.reg, &members)?;
            let s = SubcategorySpec::new(idx);
            let (name, results, passed) = match check {
                SubcatCheck::Ext => {
                    let ok = check_extension_closed(&loaded.reg, &s);
                    ("ext", json!({"extension_closed": ok}), ok)
                }
                SubcatCheck::Resolving => {
                    let ok = check_resolving(&loaded.reg, &s);
                    ("resolving", json!({"resolving": ok}), ok)
                }
                SubcatCheck::Torsion => {
                    let ok = check_torsion_class(&loaded.reg, &s);
                    ("torsion", json!({"torsion_class": ok}), ok)
                }
                SubcatCheck::Relative => {
                    let rel = relative_structure(&loaded.reg, &s)?;
                    let labels = loaded.reg.labels();
                    let member_labels: Vec<&String> =
                        s.members.iter().map(|&i| &labels[i]).collect();
                    let results = json!({
                        "members": member_labels,
                        "rel_projective": s.members.iter().zip(&rel.rel_projective_flags)
                            .filter(|(_, &f)| f).map(|(&i, _)| labels[i].clone())
                            .collect::<Vec<_>>(),
                        "rel_ar_count": rel.rel_ar_conflations.len(),
                        "equal_exact": rel.equal_exact,
                    });
                    ("relative", results, rel.equal_exact)
                }
            };
            emit(&format!("subcat {}", name), cli.seed, &loaded, results);
            if passed {
                Ok(())
            } else {
                Err(CliError::check_failed(format!("subcategory check `{}` failed", name)))
            }
        }
        Cmd::Perp { instance, module } => {
            let loaded = load(&instance)?;
            let file: ModuleFile = read_json(&module)?;
            let u = parse_module(&loaded.reg.alg, &file)?;
            let (s, report) = perp(&loaded.reg, &u);
            let labels = loaded.reg.labels();
            emit(
                "perp",
                cli.seed,
                &loaded,
                json!({
                    "members": s.members.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
                    "cotilting": {
                        "inj_dim": report.inj_dim,
                        "self_orthogonal": report.self_orthogonal,
                        "coresolution_length": report.coresolution_length,
                        "is_cotilting": report.is_cotilting,
                    },
                }),
            );
            Ok(())
        }
        Cmd::Syzygy { instance } => {
            let loaded = load(&instance)?;
            let sc = syzygy_category(&loaded.reg);
            let labels = loaded.reg.labels();
            let targets: Vec<usize> = (0..loaded.reg.len()).collect();
            let mut items = Vec::new();
            let mut all_ok = true;
            for &w in &sc.members {
                let rep = omega_minus(&loaded.reg, w, &targets)?;
                all_ok &= rep.all_equal;
                items.push(json!({
                    "member": labels[w],
                    "omega_minus_dims": rep.omega_minus.dims,
                    "adjunction_verified": rep.all_equal,
                }));
            }
            emit(
                "syzygy",
                cli.seed,
                &loaded,
                json!({
                    "members": sc.members.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
                    "cosyzygies": items,
                    "adjunction_verified": all_ok,
                }),
            );
            if all_ok {
                Ok(())
            } else {
                Err(CliError::check_failed("cosyzygy adjunction check failed"))
            }
        }
    }
}

fn groth_err(e: arex_core::groth::GrothError) -> CliError {
    match e {
        arex_core::groth::GrothError::Ar(a) => a.into(),
        other => CliError::invalid(other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("arex: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

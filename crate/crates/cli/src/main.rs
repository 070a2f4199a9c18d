//! Command-line driver: reads JSON posets or quivers, runs the library
//! pipelines, and writes JSON or DOT outputs. Exit codes: 0 for a
//! positive result, 1 for a negative verdict, 2 for unusable input, 3
//! for a broken internal invariant.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spdiag_core::cluster::{all_cluster_variables, membership_check, mutate, seed_from_quiver, subalgebra_generators, verify_generation};
use spdiag_core::diagcat::{ar_quiver_ct, ar_quiver_sp, frozen_by, is_star_diagonal, sp_diagonals, to_dot};
use spdiag_core::generate::seeded_instances;
use spdiag_core::polygon::triangulation_from_quiver;
use spdiag_core::poset::{decompose_type_a, find_forbidden_peak_subposet, poset_from_quiver, validate_alien_set};
use spdiag_core::repcat::{compose, enumerate_indecomposable_sp, hom_basis, hom_dim_modules, verify_equivalence};
use spdiag_core::{AlienSet, ArQuiver, Error, Poset, Quiver, Triangulation};

#[derive(Parser)]
#[command(name = "spdiag", version, about = "sp-diagonals, type-A posets, and cluster subalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input JSON file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file (JSON, or DOT for ar-quiver).
    #[arg(long = "out")]
    output: PathBuf,
}

#[derive(Copy, Clone, ValueEnum)]
enum Category {
    /// All diagonals outside the triangulation.
    Ct,
    /// The sp-diagonals only.
    Sp,
    /// Indecomposable socle-projective modules of the alien-extended poset.
    Modsp,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a poset is of type A; report a witness when not.
    PosetCheck {
        #[command(flatten)]
        io: Io,
    },
    /// Write a type-A poset as a path quiver with alien arrows.
    Decompose {
        #[command(flatten)]
        io: Io,
    },
    /// List the sp-diagonals of the triangulation of a quiver.
    SpDiagonals {
        #[command(flatten)]
        io: Io,
        /// Also write a polygon sketch next to the output, as `<out>.dot`.
        #[arg(long)]
        emit_dot: bool,
    },
    /// Emit an AR-quiver as DOT.
    ArQuiver {
        #[command(flatten)]
        io: Io,
        /// Which category to knit.
        #[arg(long, value_enum, default_value_t = Category::Sp)]
        category: Category,
    },
    /// Check the equivalence of sp-diagonals and socle-projective modules.
    Verify {
        #[command(flatten)]
        io: Io,
        /// Also sweep 100 seeded random instances up to this size (at most 9).
        #[arg(long)]
        max_n: Option<usize>,
        /// Seed for the random sweep.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumerate the cluster variables of a type-A quiver.
    Cluster {
        #[command(flatten)]
        io: Io,
        /// Certify that first mutations lie in the sp-variable subalgebra.
        #[arg(long)]
        verify_generation: bool,
        /// Largest generator-product length tried per certificate.
        #[arg(long, default_value_t = 6)]
        degree_bound: usize,
    },
}

/// A failure that ends the run: exit code 2 (input) or 3 (internal).
struct Fail {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Fail {
    Fail { code: 2, message: message.into() }
}

fn from_core(err: Error) -> Fail {
    let code = match err {
        Error::Internal(_) => 3,
        _ => 2,
    };
    Fail { code, message: err.to_string() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = catch_unwind(AssertUnwindSafe(|| run(cli.command)));
    match outcome {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(fail)) => {
            eprintln!("spdiag: {}", fail.message);
            ExitCode::from(fail.code)
        }
        Err(panic) => {
            let text = panic
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| panic.downcast_ref::<&str>().copied())
                .unwrap_or("unknown panic");
            eprintln!("spdiag: internal invariant violated: {text}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<u8, Fail> {
    match command {
        Command::PosetCheck { io } => cmd_poset_check(&io),
        Command::Decompose { io } => cmd_decompose(&io),
        Command::SpDiagonals { io, emit_dot } => cmd_sp_diagonals(&io, emit_dot),
        Command::ArQuiver { io, category } => cmd_ar_quiver(&io, category),
        Command::Verify { io, max_n, seed } => cmd_verify(&io, max_n, seed),
        Command::Cluster { io, verify_generation, degree_bound } => {
            cmd_cluster(&io, verify_generation, degree_bound)
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Fail> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| input_error(format!("{} is not valid JSON: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text)
        .map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))
}

fn write_json(path: &Path, value: &Value) -> Result<(), Fail> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Fail { code: 3, message: format!("serialization failed: {e}") })?;
    text.push('\n');
    write_text(path, &text)
}

fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value, Fail> {
    v.get(name).ok_or_else(|| input_error(format!("missing field \"{name}\"")))
}

fn usize_list(v: &Value, name: &str) -> Result<Vec<usize>, Fail> {
    field(v, name)?
        .as_array()
        .ok_or_else(|| input_error(format!("\"{name}\" must be an array")))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| input_error(format!("\"{name}\" holds a non-integer entry")))
        })
        .collect()
}

fn pair_list(entries: &Value, name: &str) -> Result<Vec<(usize, usize)>, Fail> {
    entries
        .as_array()
        .ok_or_else(|| input_error(format!("\"{name}\" must be an array of pairs")))?
        .iter()
        .map(|pair| {
            let both: Option<(u64, u64)> = pair.as_array().and_then(|p| {
                if p.len() == 2 {
                    Some((p[0].as_u64()?, p[1].as_u64()?))
                } else {
                    None
                }
            });
            both.map(|(a, b)| (a as usize, b as usize))
                .ok_or_else(|| input_error(format!("\"{name}\" holds a malformed pair")))
        })
        .collect()
}

/// Expected shape: {"elements": [1, 2, ...], "covers": [[x, y], ...]}
/// with each pair read as x below y.
fn parse_poset(v: &Value) -> Result<Poset, Fail> {
    let elements = usize_list(v, "elements")?;
    let covers = pair_list(field(v, "covers")?, "covers")?;
    Poset::from_covers(elements, &covers).map_err(from_core)
}

/// Expected shape: {"vertices": n, "arrows": [[s, t], ...], "alien":
/// [[s, t], ...]}, the alien list defaulting to empty. The alien set is
/// validated against the quiver before anything runs.
fn parse_quiver(v: &Value) -> Result<(Quiver, AlienSet), Fail> {
    let n = field(v, "vertices")?
        .as_u64()
        .ok_or_else(|| input_error("\"vertices\" must be a vertex count"))?
        as usize;
    let arrows = pair_list(field(v, "arrows")?, "arrows")?;
    let alien = match v.get("alien") {
        Some(entries) => AlienSet::new(pair_list(entries, "alien")?),
        None => AlienSet::empty(),
    };
    let q = Quiver { n, arrows };
    validate_alien_set(&q, &alien).map_err(from_core)?;
    Ok((q, alien))
}

fn triangulate(q: &Quiver) -> Result<Triangulation, Fail> {
    triangulation_from_quiver(q).map_err(from_core)
}

fn pairs_json(pairs: &[(usize, usize)]) -> Value {
    Value::Array(pairs.iter().map(|&(a, b)| json!([a, b])).collect())
}

fn cmd_poset_check(io: &Io) -> Result<u8, Fail> {
    let p = parse_poset(&read_json(&io.input)?)?;
    if !p.is_connected() {
        return Err(input_error("poset is not connected"));
    }
    match find_forbidden_peak_subposet(&p) {
        None => {
            write_json(&io.output, &json!({ "type_A": true }))?;
            Ok(0)
        }
        Some((family, elements)) => {
            let witness = json!({
                "family": family.to_string(),
                "elements": elements.iter().copied().collect::<Vec<usize>>(),
            });
            write_json(&io.output, &json!({ "type_A": false, "witness": witness }))?;
            Ok(1)
        }
    }
}

fn cmd_decompose(io: &Io) -> Result<u8, Fail> {
    let p = parse_poset(&read_json(&io.input)?)?;
    if !p.is_connected() {
        return Err(input_error("poset is not connected"));
    }
    match decompose_type_a(&p) {
        Ok(d) => {
            let out = json!({
                "vertices": d.quiver.n,
                "arrows": pairs_json(&d.quiver.arrows),
                "alien": pairs_json(&d.alien.arrows),
                "labels": d.labels,
            });
            write_json(&io.output, &out)?;
            Ok(0)
        }
        Err(Error::NotTypeA(_)) => {
            let witness = find_forbidden_peak_subposet(&p).map(|(family, elements)| {
                json!({
                    "family": family.to_string(),
                    "elements": elements.iter().copied().collect::<Vec<usize>>(),
                })
            });
            write_json(&io.output, &json!({ "type_A": false, "witness": witness }))?;
            Ok(1)
        }
        Err(e) => Err(from_core(e)),
    }
}

fn cmd_sp_diagonals(io: &Io, emit_dot: bool) -> Result<u8, Fail> {
    let (q, f) = parse_quiver(&read_json(&io.input)?)?;
    let t = triangulate(&q)?;
    let sp = sp_diagonals(&t, &f).map_err(from_core)?;
    let entries: Vec<Value> = sp
        .iter()
        .map(|obj| {
            json!({
                "diagonal": [obj.diagonal.a, obj.diagonal.b],
                "support": obj.support.iter().copied().collect::<Vec<usize>>(),
                "star": is_star_diagonal(&obj.diagonal, &t),
                "frozen_by": pairs_json(&frozen_by(&obj.diagonal, &t, &f)),
            })
        })
        .collect();
    write_json(&io.output, &Value::Array(entries))?;
    if emit_dot {
        let mut dot_path = io.output.clone().into_os_string();
        dot_path.push(".dot");
        write_text(Path::new(&dot_path), &polygon_sketch(&t, &sp.iter().map(|o| o.diagonal).collect::<Vec<_>>()))?;
    }
    Ok(0)
}

/// An undirected sketch of the polygon: vertices pinned on a circle,
/// boundary edges solid, triangulation diagonals dashed, sp-diagonals
/// bold.
fn polygon_sketch(t: &Triangulation, sp: &[spdiag_core::Diagonal]) -> String {
    let m = t.m();
    let mut out = String::from("graph polygon {\n  node [shape=point, xlabelloc=c];\n");
    for v in 0..m {
        let angle = std::f64::consts::TAU * (v as f64) / (m as f64);
        out.push_str(&format!(
            "  v{v} [pos=\"{:.3},{:.3}!\", xlabel=\"{v}\"];\n",
            2.0 * angle.cos(),
            2.0 * angle.sin()
        ));
    }
    for v in 0..m {
        out.push_str(&format!("  v{v} -- v{};\n", (v + 1) % m));
    }
    for label in 1..t.m() - 2 {
        let d = t.diagonal_of_label(label);
        out.push_str(&format!(
            "  v{} -- v{} [style=dashed, label=\"t{label}\"];\n",
            d.a, d.b
        ));
    }
    for d in sp {
        out.push_str(&format!("  v{} -- v{} [style=bold];\n", d.a, d.b));
    }
    out.push_str("}\n");
    out
}

fn cmd_ar_quiver(io: &Io, category: Category) -> Result<u8, Fail> {
    let (q, f) = parse_quiver(&read_json(&io.input)?)?;
    let t = triangulate(&q)?;
    let dot = match category {
        Category::Ct => to_dot(&ar_quiver_ct(&t)),
        Category::Sp => to_dot(&ar_quiver_sp(&t, &f).map_err(from_core)?),
        Category::Modsp => modsp_dot(&q, &f)?,
    };
    write_text(&io.output, &dot)?;
    Ok(0)
}

/// AR-quiver of the socle-projective modules themselves: an arrow where
/// the morphism space is one-dimensional and no composite through a
/// third module is nonzero. Matches the sp-diagonal quiver under the
/// support bijection.
fn modsp_dot(q: &Quiver, f: &AlienSet) -> Result<String, Fail> {
    let p = poset_from_quiver(&q.with_alien(f)).map_err(from_core)?;
    let modules = enumerate_indecomposable_sp(&p, q).map_err(from_core)?;
    let k = modules.len();
    let mut hom = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            hom[i][j] = hom_dim_modules(&modules[i], &modules[j], &p);
        }
    }
    let factors_properly = |i: usize, j: usize| {
        (0..k).any(|l| {
            l != i
                && l != j
                && hom[i][l] > 0
                && hom[l][j] > 0
                && hom_basis(&modules[i], &modules[l], &p).iter().any(|first| {
                    hom_basis(&modules[l], &modules[j], &p)
                        .iter()
                        .any(|second| !compose(second, first).is_empty())
                })
        })
    };
    let mut out = String::from("digraph ar_quiver {\n  rankdir=LR;\n  node [shape=box];\n");
    for (i, module) in modules.iter().enumerate() {
        let supp: Vec<String> = module.support.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("  m{i} [label=\"{{{}}}\"];\n", supp.join(",")));
    }
    for i in 0..k {
        for j in 0..k {
            if i != j && hom[i][j] == 1 && !factors_properly(i, j) {
                out.push_str(&format!("  m{i} -> m{j};\n"));
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

fn translation_bijective(aq: &ArQuiver) -> bool {
    let all: std::collections::BTreeSet<usize> = (0..aq.vertices.len()).collect();
    let keys: std::collections::BTreeSet<usize> = aq.translation.keys().copied().collect();
    let values: std::collections::BTreeSet<usize> = aq.translation.values().copied().collect();
    let projectives: std::collections::BTreeSet<usize> =
        aq.projectives.iter().copied().collect();
    let injectives: std::collections::BTreeSet<usize> = aq.injectives.iter().copied().collect();
    values.len() == aq.translation.len()
        && keys == all.difference(&projectives).copied().collect()
        && values == all.difference(&injectives).copied().collect()
}

fn meshes_additive(aq: &ArQuiver) -> bool {
    aq.meshes.iter().all(|mesh| {
        let middle: usize = mesh.middles.iter().map(|&v| aq.vertices[v].support.len()).sum();
        aq.vertices[mesh.start].support.len() + aq.vertices[mesh.end].support.len() == middle
    })
}

fn cmd_verify(io: &Io, max_n: Option<usize>, seed: u64) -> Result<u8, Fail> {
    let (q, f) = parse_quiver(&read_json(&io.input)?)?;
    let t = triangulate(&q)?;
    let report = verify_equivalence(&t, &f).map_err(from_core)?;
    let aq_ct = ar_quiver_ct(&t);
    let aq_sp = ar_quiver_sp(&t, &f).map_err(from_core)?;
    let additive = meshes_additive(&aq_ct) && meshes_additive(&aq_sp);
    let bijective = translation_bijective(&aq_ct);
    let mut verdict = report.passed() && additive && bijective;

    let sweep = match max_n {
        None => Value::Null,
        Some(bound) => {
            if bound == 0 || bound > 9 {
                return Err(input_error("--max-n must be between 1 and 9"));
            }
            let mut failures = Vec::new();
            for (q2, f2) in seeded_instances(100, bound, seed) {
                let t2 = triangulate(&q2)?;
                let r2 = verify_equivalence(&t2, &f2).map_err(from_core)?;
                if !r2.passed() {
                    failures.push(json!({
                        "arrows": pairs_json(&q2.arrows),
                        "alien": pairs_json(&f2.arrows),
                        "mismatches": r2.mismatches,
                    }));
                }
            }
            verdict = verdict && failures.is_empty();
            json!({
                "count": 100,
                "max_n": bound,
                "seed": seed,
                "all_passed": failures.is_empty(),
                "failures": failures,
            })
        }
    };

    let equivalence = serde_json::to_value(&report)
        .map_err(|e| Fail { code: 3, message: format!("serialization failed: {e}") })?;
    let out = json!({
        "equivalence": equivalence,
        "mesh_additivity": additive,
        "translation_bijective": bijective,
        "sweep": sweep,
        "verified": verdict,
    });
    write_json(&io.output, &out)?;
    Ok(if verdict { 0 } else { 1 })
}

fn cmd_cluster(io: &Io, check_generation: bool, degree_bound: usize) -> Result<u8, Fail> {
    let (q, f) = parse_quiver(&read_json(&io.input)?)?;
    if q.n > 9 {
        return Err(input_error("vertex count exceeds the enumeration guard of 9"));
    }
    let table = all_cluster_variables(&q).map_err(from_core)?;
    let entries: Vec<Value> = table
        .entries
        .iter()
        .map(|e| {
            json!({
                "d_vector": e.d_vector,
                "diagonal": [e.diagonal.a, e.diagonal.b],
                "num_terms": e.num_terms,
            })
        })
        .collect();
    let mut verdict = true;
    let generation = if !check_generation {
        Value::Null
    } else if f.is_empty() {
        let report = verify_generation(&q, degree_bound).map_err(from_core)?;
        verdict = report.passed();
        let mut value = serde_json::to_value(&report)
            .map_err(|e| Fail { code: 3, message: format!("serialization failed: {e}") })?;
        value["exploratory"] = json!(false);
        value
    } else {
        let gens = subalgebra_generators(&q, &f).map_err(from_core)?;
        let seed = seed_from_quiver(&q);
        let mut certificates = Vec::new();
        for k in 1..=q.n {
            let target = mutate(&seed, k).map_err(from_core)?.variables[k - 1].clone();
            certificates.push(membership_check(&target, &gens, degree_bound));
        }
        verdict = certificates.iter().all(Option::is_some);
        let mut value = serde_json::to_value(&certificates)
            .map_err(|e| Fail { code: 3, message: format!("serialization failed: {e}") })?;
        value = json!({
            "generator_count": gens.len(),
            "certificates": value,
            "exploratory": true,
        });
        value
    };
    let out = json!({
        "vertices": q.n,
        "variable_count": table.entries.len(),
        "cluster_count": table.cluster_count,
        "entries": entries,
        "generation": generation,
    });
    write_json(&io.output, &out)?;
    Ok(if verdict { 0 } else { 1 })
}

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qpmut::coxeter::{word_qp_rigidity, word_quiver, CoxeterDatum, WordQuiver};
use qpmut::jacobian::{
    ext_matrix, finiteness_certificate, truncated_quotient, verify_presentation_complexes, Finiteness,
};
use qpmut::json::{
    morphism_from_json, morphism_to_json, parse_value, qp_from_json, qp_to_json, quiver_from_json,
    quiver_to_json, render, rep_from_json, rep_to_json,
};
use qpmut::qp::{is_rigid_truncated, mutate, premutate, split_reduce, validate_qp, Qp, RigidityVerdict};
use qpmut::quiver::{b_matrix, fz_mutate, Quiver};
use qpmut::representation::{
    are_isomorphic, check_nearly_morita, mutate_morphism, mutate_rep, reduce_rep, validate_rep, Representation,
    Splitting,
};
use qpmut::{selftest, Error, Result};

#[derive(Parser)]
#[command(name = "qpmut", version, about = "Mutation of quivers with potentials and their representations")]
struct Cli {
    /// json (one line) or pretty (indented)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Truncation degree N; overrides the value stored in a QP document.
    #[arg(long, global = true)]
    truncation: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Plain quivers: b-matrix and Fomin-Zelevinsky mutation.
    Quiver {
        #[arg(value_enum)]
        action: QuiverAction,
        #[command(flatten)]
        io: InAt,
    },
    /// Quivers with potentials.
    Qp {
        #[arg(value_enum)]
        action: QpAction,
        #[command(flatten)]
        io: InAt,
    },
    /// Truncated Jacobian algebras.
    Jacobian {
        #[arg(value_enum)]
        action: JacobianAction,
        #[command(flatten)]
        io: InAt,
    },
    /// Representations of Jacobian algebras.
    Rep {
        #[arg(value_enum)]
        action: RepAction,
        /// QP document the representations live over.
        #[arg(long)]
        qp: PathBuf,
        /// Input document(s); `iso` takes two.
        #[arg(long = "in", required = true)]
        input: Vec<PathBuf>,
        #[arg(long)]
        at: Option<String>,
    },
    /// Coxeter-word quivers and their potentials.
    Coxeter {
        #[arg(value_enum)]
        action: CoxeterAction,
        /// Base quiver document.
        #[arg(long)]
        base: PathBuf,
        /// Comma separated vertex names, e.g. 1,2,1.
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<String>,
    },
    /// Run the acceptance corpus and print a pass/fail table.
    Selftest,
}

#[derive(Args)]
struct InAt {
    #[arg(long = "in")]
    input: PathBuf,
    /// Vertex name to mutate at.
    #[arg(long)]
    at: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuiverAction {
    Bmatrix,
    Mutate,
}

#[derive(Clone, Copy, ValueEnum)]
enum QpAction {
    Validate,
    Premutate,
    Reduce,
    Mutate,
    Rigid,
}

#[derive(Clone, Copy, ValueEnum)]
enum JacobianAction {
    Dim,
    Certify,
    Relations,
    Ext,
    VerifyComplexes,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepAction {
    Validate,
    Mutate,
    MorphismMutate,
    Iso,
    NearlyMorita,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoxeterAction {
    Reduced,
    Quiver,
    Qp,
    Rigid,
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::io(e.to_string()).with_datum(path.display().to_string()))?;
    parse_value(&text)
}

fn vertex(q: &Quiver, at: &Option<String>) -> Result<usize> {
    let name = at.as_ref().ok_or_else(|| Error::precondition("missing --at"))?;
    q.require_vertex(name)
}

fn names(q: &Quiver, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|v| q.vertex_name(v).to_string()).collect()
}

fn verdict_json(v: &RigidityVerdict, n: usize) -> Value {
    let mut out = json!({"verdict": v.label(), "truncation": n});
    match v {
        RigidityVerdict::NotRigid { witness, degree } => {
            out["witness"] = json!(witness);
            out["degree"] = json!(degree);
        }
        RigidityVerdict::RigidCertified { dim, nilpotency } => {
            out["dim"] = json!(dim);
            out["nilpotency"] = json!(nilpotency);
        }
        RigidityVerdict::RigidUpToN { .. } => {}
    }
    out
}

fn quiver_cmd(action: QuiverAction, io: &InAt) -> Result<Value> {
    let q = quiver_from_json(&read_json(&io.input)?)?;
    match action {
        QuiverAction::Bmatrix => {
            let b = b_matrix(&q)?;
            Ok(json!({"vertices": b.vertices, "b": b.entries}))
        }
        QuiverAction::Mutate => Ok(quiver_to_json(&fz_mutate(&q, vertex(&q, &io.at)?)?)),
    }
}

fn load_qp(path: &PathBuf, n: Option<usize>) -> Result<Qp> {
    qp_from_json(&read_json(path)?, n)
}

fn qp_cmd(action: QpAction, io: &InAt, n: Option<usize>) -> Result<Value> {
    let p = load_qp(&io.input, n)?;
    match action {
        QpAction::Validate => {
            let r = validate_qp(&p);
            let cycles: Vec<Value> =
                r.two_cycles.iter().map(|(v, pairs)| json!({"vertex": v, "pairs": pairs})).collect();
            Ok(json!({"valid": r.valid, "reduced": r.reduced, "issues": r.issues, "two_cycles": cycles}))
        }
        QpAction::Premutate => Ok(qp_to_json(&premutate(&p, vertex(p.quiver(), &io.at)?)?.qp)),
        QpAction::Reduce => {
            let s = split_reduce(&p)?;
            Ok(json!({"reduced": qp_to_json(&s.reduced), "trivial_pairs": s.trivial_pair_names()}))
        }
        QpAction::Mutate => Ok(qp_to_json(mutate(&p, vertex(p.quiver(), &io.at)?)?.reduced())),
        QpAction::Rigid => Ok(verdict_json(&is_rigid_truncated(&p)?, p.truncation())),
    }
}

fn jacobian_cmd(action: JacobianAction, io: &InAt, n: Option<usize>) -> Result<Value> {
    let p = load_qp(&io.input, n)?;
    let n = p.truncation();
    let finite = |p: &Qp| -> Result<_> {
        let t = truncated_quotient(p, n)?;
        if t.nilpotency().is_none() {
            return Err(Error::precondition("Jacobian algebra not certified finite; raise N").with_datum(n.to_string()));
        }
        Ok(t)
    };
    let q = p.quiver();
    match action {
        JacobianAction::Dim => Ok(match finiteness_certificate(&p, n)? {
            Finiteness::Finite { dim, nilpotency } => json!({"dim": dim, "certified": true, "nilpotency": nilpotency}),
            Finiteness::Inconclusive { dims, .. } => {
                json!({"dim": dims.iter().sum::<usize>(), "certified": false, "nilpotency": null})
            }
        }),
        JacobianAction::Certify => {
            let t = truncated_quotient(&p, n)?;
            Ok(match t.certificate() {
                Finiteness::Finite { dim, nilpotency } => json!({
                    "verdict": "FINITE", "dim": dim, "nilpotency": nilpotency, "truncation": n,
                    "dims_by_degree": t.dims_by_degree(),
                }),
                Finiteness::Inconclusive { dims, .. } => json!({
                    "verdict": "INCONCLUSIVE", "truncation": n, "dims_by_degree": dims,
                }),
            })
        }
        JacobianAction::Relations => {
            let t = finite(&p)?;
            Ok(json!({"vertices": q.vertices(), "relations": t.minimal_relation_dims()}))
        }
        JacobianAction::Ext => {
            let alg = finite(&p)?.finite_algebra()?;
            Ok(json!({"vertices": q.vertices(), "ext1": ext_matrix(&alg, 1)?, "ext2": ext_matrix(&alg, 2)?}))
        }
        JacobianAction::VerifyComplexes => {
            let alg = finite(&p)?.finite_algebra()?;
            let r = verify_presentation_complexes(&p, &alg)?;
            let complexes: Vec<Value> = r
                .complexes
                .iter()
                .map(|c| {
                    json!({
                        "vertex": c.vertex, "side": c.side, "is_complex": c.is_complex,
                        "exact_at_third": c.exact_at_third, "onto_radical": c.onto_radical, "passed": c.passed(),
                    })
                })
                .collect();
            let ext2: Vec<Value> =
                r.ext2_regular.iter().map(|(v, l, rt)| json!({"vertex": v, "left": l, "right": rt})).collect();
            Ok(json!({"passed": r.passed(), "complexes": complexes, "ext2_regular_vanishes": ext2, "failures": r.failures()}))
        }
    }
}

/// A single representation, a list of them, or a document with a
/// "representations" list of {name, rep}.
fn rep_family(v: &Value, q: &Arc<Quiver>) -> Result<Vec<Representation>> {
    let list = match v {
        Value::Array(xs) => xs.clone(),
        Value::Object(o) if o.contains_key("representations") => o["representations"]
            .as_array()
            .ok_or_else(|| Error::parse("\"representations\" is not a list"))?
            .iter()
            .map(|x| x.get("rep").cloned().unwrap_or_else(|| x.clone()))
            .collect(),
        other => vec![other.clone()],
    };
    list.iter().map(|x| rep_from_json(x, q)).collect()
}

fn rep_cmd(action: RepAction, qp: &PathBuf, input: &[PathBuf], at: &Option<String>, n: Option<usize>, seed: u64) -> Result<Value> {
    let p = load_qp(qp, n)?;
    let q = p.quiver();
    let first = read_json(&input[0])?;
    match action {
        RepAction::Validate => {
            let m = rep_from_json(&first, q)?;
            let r = validate_rep(&p, &m)?;
            Ok(json!({"valid": r.valid, "nilpotency": r.nilpotency, "failing": r.failing, "issues": r.issues}))
        }
        RepAction::Mutate => {
            let k = vertex(q, at)?;
            let m = rep_from_json(&first, q)?;
            let once = mutate(&p, k)?;
            let pre = mutate_rep(&p, &m, k)?;
            let red = reduce_rep(&pre, &once.split)?;
            Ok(json!({
                "premutation": {"qp": qp_to_json(&once.premutation.qp), "rep": rep_to_json(&pre)},
                "reduced": {"qp": qp_to_json(once.reduced()), "rep": rep_to_json(&red)},
            }))
        }
        RepAction::MorphismMutate => {
            let k = vertex(q, at)?;
            let f = morphism_from_json(&first, q)?;
            let pm = premutate(&p, k)?;
            let ft = mutate_morphism(&p, &f, k, Splitting::Pivot)?;
            Ok(json!({"qp": qp_to_json(&pm.qp), "morphism": morphism_to_json(&ft)}))
        }
        RepAction::Iso => {
            if input.len() != 2 {
                return Err(Error::precondition("iso needs two --in documents").with_datum(input.len().to_string()));
            }
            let m = rep_from_json(&first, q)?;
            let n = rep_from_json(&read_json(&input[1])?, q)?;
            Ok(json!({"isomorphic": are_isomorphic(&m, &n, seed)?, "seed": seed}))
        }
        RepAction::NearlyMorita => {
            let family = rep_family(&first, q)?;
            let ks: Vec<usize> = match at {
                Some(_) => vec![vertex(q, at)?],
                None => (0..q.num_vertices()).collect(),
            };
            let mut reports = Vec::new();
            let mut all = true;
            for k in ks {
                let r = check_nearly_morita(&p, k, &family, seed)?;
                all &= r.passed();
                let entries: Vec<Value> = r
                    .entries
                    .iter()
                    .map(|e| {
                        json!({
                            "index": e.index, "dims": e.dims, "stripped": e.stripped, "mutated_dims": e.mutated_dims,
                            "mutated_valid": e.mutated_valid, "off_k_preserved": e.off_k_preserved,
                            "isomorphic": e.isomorphic, "note": e.note, "passed": e.passed(),
                        })
                    })
                    .collect();
                reports.push(json!({"vertex": r.vertex, "passed": r.passed(), "entries": entries}));
            }
            Ok(json!({"passed": all, "seed": seed, "vertices": reports}))
        }
    }
}

fn word_json(wq: &WordQuiver) -> Value {
    let q = &wq.quiver;
    let typing: Vec<Value> = wq
        .typing_table()
        .into_iter()
        .map(|(v, t, pos)| json!({"vertex": v, "type": t, "position": pos}))
        .collect();
    json!({"quiver": quiver_to_json(q), "frozen": names(q, wq.frozen.iter().copied()), "typing": typing})
}

fn coxeter_cmd(action: CoxeterAction, base: &PathBuf, word: &[String], n: Option<usize>) -> Result<Value> {
    let n = n.unwrap_or(qpmut::qp::DEFAULT_TRUNCATION);
    let datum = CoxeterDatum::new(Arc::new(quiver_from_json(&read_json(base)?)?))?;
    let letters: Vec<&str> = word.iter().map(String::as_str).collect();
    let w = datum.parse_word(&letters)?;
    match action {
        CoxeterAction::Reduced => Ok(json!({"word": word, "reduced": datum.is_reduced_word(&w)})),
        CoxeterAction::Quiver => {
            let wq = word_quiver(&datum, &w)?;
            let mut out = word_json(&wq);
            let stable = wq.stable_qp(n)?;
            out["stable_quiver"] = quiver_to_json(stable.quiver());
            Ok(out)
        }
        CoxeterAction::Qp => {
            let wq = word_quiver(&datum, &w)?;
            let mut out = word_json(&wq);
            out["qp"] = qp_to_json(&wq.qp(n)?);
            out["stable_qp"] = qp_to_json(&wq.stable_qp(n)?);
            Ok(out)
        }
        CoxeterAction::Rigid => Ok(verdict_json(&word_qp_rigidity(&datum, &w, n)?, n)),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(e.to_string()).with_datum(path.display().to_string())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let pretty = cli.format == Some(Format::Pretty);
    let doc = match &cli.command {
        Command::Selftest => {
            let rows = selftest::run_all(cli.seed);
            let ok = rows.iter().all(|r| r.passed);
            let text = match cli.format {
                None => selftest::render(cli.seed, &rows),
                Some(f) => {
                    let list: Vec<Value> = rows
                        .iter()
                        .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}))
                        .collect();
                    render(&json!({"seed": cli.seed, "passed": ok, "criteria": list}), f == Format::Pretty)
                }
            };
            emit(&text, &cli.out)?;
            return Ok(ok);
        }
        Command::Quiver { action, io } => quiver_cmd(*action, io)?,
        Command::Qp { action, io } => qp_cmd(*action, io, cli.truncation)?,
        Command::Jacobian { action, io } => jacobian_cmd(*action, io, cli.truncation)?,
        Command::Rep { action, qp, input, at } => rep_cmd(*action, qp, input, at, cli.truncation, cli.seed)?,
        Command::Coxeter { action, base, word } => coxeter_cmd(*action, base, word, cli.truncation)?,
    };
    emit(&render(&doc, pretty), &cli.out)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let doc = json!({"error": {"code": e.code(), "message": e.message(), "datum": e.datum()}});
            eprint!("{}", render(&doc, false));
            ExitCode::from(2)
        }
    }
}

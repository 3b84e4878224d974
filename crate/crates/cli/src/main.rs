//! `klrd`: command-line driver for the checks in the `klrd` crate.
//!
//! Every command prints one JSON report to stdout. Exit status is 0 when the
//! report passes, 1 when a check fails and 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use klrd::fdmod::{check_fdmodule, e_functor, f_functor_phi, permutation_module, truncated_module, FDModule, ModuleJson, Restricted};
use klrd::gdim::{gdim_block, gdim_proj, pairing_cartan, pairing_ke, verify_ef_identity, Proj, DEFAULT_ORDER};
use klrd::ground::{dimvecs_of_rank, orbit_split, DimVec, ThetaSequence, Vertex};
use klrd::hecke::{check_hecke, compare_branching_with, psi_transport_with, HeckeJson, KappaFn};
use klrd::klr::{parse_expr, verify_relations, Ambient, Flavor, KlrOperator, PbwJson, PbwTable};
use klrd::report::Report;
use klrd::{Error, Qp, Rat};

#[derive(Parser)]
#[command(name = "klrd", version, about = "Exact checks for type-D quiver Hecke algebras and their Hecke transport")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    D,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum FChoice {
    Linear,
    Cayley,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every defining relation for all nu of rank m over a label pool.
    VerifyRelations {
        #[arg(long)]
        m: usize,
        /// Comma separated vertices, e.g. `+p^1,+p^3`.
        #[arg(long, allow_hyphen_values = true)]
        labels: String,
        #[arg(long = "type", value_enum, default_value = "d")]
        kind: Kind,
    },
    /// PBW-decompose an expression read from a JSON file
    /// `{"nu": "p,p^-1,..", "type": "D", "expr": "s1*k2 - k1", "side": "left"}`.
    Pbw {
        #[arg(long)]
        expr: PathBuf,
    },
    /// Graded dimension of `1_to °R 1_from`.
    Gdim {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: i32,
    },
    /// The e'_i f_j identity on the projective of `a` (`phi+`, `phi-` or a right half).
    EfCheck {
        #[arg(long, allow_hyphen_values = true)]
        i: String,
        #[arg(long, allow_hyphen_values = true)]
        j: String,
        /// Optional; must match `a` when given.
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: i32,
    },
    /// Transport a module JSON to a Hecke module JSON and check both sides.
    Transport {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "linear")]
        f: FChoice,
    },
    /// Split the sequences of nu into the two orbit parts.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Print a module JSON: a permutation module, or a truncated module at rank one.
    Module {
        /// Right half, e.g. `p,p^5`.
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        /// Build `k[kappa]/(kappa^n)` instead (rank one only).
        #[arg(long)]
        truncated: Option<usize>,
    },
    /// Rank-one and rank-zero picture, then a rank-two transport end to end.
    Demo,
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(bool, String), Failure>;

fn parse<T: std::str::FromStr<Err = Error>>(what: &str, s: &str) -> Result<T, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(format!("--{what}: {e}")))
}

fn labels(s: &str) -> Result<Vec<Vertex>, Failure> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| parse("labels", t.trim())).collect()
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Deserializes, reporting the failing location as a JSON pointer.
fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Failure> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let mut ptr = String::new();
        for seg in e.path().iter() {
            use serde_path_to_error::Segment;
            match seg {
                Segment::Seq { index } => ptr.push_str(&format!("/{index}")),
                Segment::Map { key } => ptr.push_str(&format!("/{key}")),
                Segment::Enum { variant } => ptr.push_str(&format!("/{variant}")),
                Segment::Unknown => ptr.push_str("/?"),
            }
        }
        let ptr = if ptr.is_empty() { "/".to_string() } else { ptr };
        Failure::Usage(format!("{ptr}: {}", e.inner()))
    })
}

fn emit<T: Serialize>(command: &str, passed: bool, result: T) -> Outcome {
    Ok((passed, Report::new(command, passed, result).to_json()))
}

fn cmd_verify_relations(m: usize, pool: &str, kind: Kind) -> Outcome {
    if m == 0 {
        return Err(Failure::Usage("--m must be at least 1".into()));
    }
    let pool = labels(pool)?;
    if pool.is_empty() {
        return Err(Failure::Usage("--labels is empty".into()));
    }
    let flavor = match kind {
        Kind::D => Flavor::D,
        Kind::B => Flavor::B,
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for nu in dimvecs_of_rank(&pool, m) {
        let r = verify_relations(&nu, flavor)?;
        ok &= r.passed();
        rows.push(json!({"nu": nu.to_string(), "instances": r.instances, "passed": r.passed(), "failures": r.failures}));
    }
    let flavor = match kind {
        Kind::D => "D",
        Kind::B => "B",
    };
    emit("verify-relations", ok, json!({"m": m, "type": flavor, "nus": rows}))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PbwInput {
    nu: String,
    #[serde(rename = "type", default = "default_type")]
    kind: String,
    expr: String,
    #[serde(default = "default_side")]
    side: String,
}

fn default_type() -> String {
    "D".into()
}

fn default_side() -> String {
    "left".into()
}

fn cmd_pbw(path: &PathBuf) -> Outcome {
    let input: PbwInput = from_json(&read(path)?)?;
    let nu: DimVec = input.nu.parse().map_err(|e: Error| Failure::Usage(format!("/nu: {e}")))?;
    let flavor = match input.kind.as_str() {
        "D" | "d" => Flavor::D,
        "B" | "b" => Flavor::B,
        other => return Err(Failure::Usage(format!("/type: expected D or B, got {other:?}"))),
    };
    let amb = Ambient::new(nu, flavor).map_err(|e| Failure::Usage(format!("/nu: {e}")))?;
    let e = parse_expr(&input.expr).map_err(|e| Failure::Usage(format!("/expr: {e}")))?;
    let op: KlrOperator<Rat> = e.eval(&amb).map_err(|e| Failure::Usage(format!("/expr: {e}")))?;
    let table = PbwTable::new(&amb);
    let form = match input.side.as_str() {
        "left" => table.decompose_left(&op)?,
        "right" => table.decompose_right(&op)?,
        other => return Err(Failure::Usage(format!("/side: expected left or right, got {other:?}"))),
    };
    let back = table.reconstruct(&form)?;
    let j = PbwJson::from_form(&form, &table)?;
    let ok = j.member && back == op;
    emit("pbw", ok, json!({"reconstructs": back == op, "form": j}))
}

fn cmd_gdim(nu: &str, from: &str, to: &str, order: i32) -> Outcome {
    let nu: DimVec = parse("nu", nu)?;
    let a: Proj = parse("from", from)?;
    let b: Proj = parse("to", to)?;
    let s = match (&a, &b) {
        (Proj::Seq(a), Proj::Seq(b)) => gdim_block(b, a, &nu, order)?,
        _ if nu.rank() == 0 => gdim_proj(&b, &a, order),
        _ => return Err(Failure::Usage("phi symbols need an empty --nu".into())),
    };
    emit("gdim", true, json!({"nu": nu.to_string(), "from": a.to_string(), "to": b.to_string(), "order": order, "gdim": s.to_string()}))
}

fn cmd_ef_check(i: &str, j: &str, nu: Option<&str>, a: &str, order: i32) -> Outcome {
    let i: Vertex = parse("i", i)?;
    let j: Vertex = parse("j", j)?;
    let a: Proj = parse("a", a)?;
    if let Some(nu) = nu {
        let nu: DimVec = parse("nu", nu)?;
        if nu != a.nu() {
            return Err(Failure::Usage(format!("--a {a} is not a symbol of --nu {nu}")));
        }
    }
    let r = verify_ef_identity(i, j, &a, order)?;
    emit("ef-check", r.passed(), json!({"i": i.to_string(), "j": j.to_string(), "a": a.to_string(), "order": order, "rows": r.rows}))
}

fn kappa_fn(f: FChoice) -> KappaFn {
    match f {
        FChoice::Linear => KappaFn::Linear,
        FChoice::Cayley => KappaFn::Cayley,
    }
}

fn cmd_transport(module: &PathBuf, out: Option<&PathBuf>, f: FChoice) -> Outcome {
    let mj: ModuleJson = from_json(&read(module)?)?;
    let md: FDModule<Qp> = mj.to_module()?;
    let klr = check_fdmodule(&md);
    if !klr.passed() {
        return emit("transport", false, json!({"klr": klr}));
    }
    let f = kappa_fn(f);
    let h = psi_transport_with(&md, f)?;
    let hecke = check_hecke(&h);
    let mut ends: Vec<Vertex> = md.blocks().filter_map(|(s, _)| s.last()).collect();
    ends.sort();
    ends.dedup();
    let mut branching = Vec::new();
    for i in ends {
        branching.push(compare_branching_with(&md, i, f)?);
    }
    let hj = HeckeJson::from_module(&h);
    if let Some(out) = out {
        fs::write(out, serde_json::to_string_pretty(&hj).expect("serializes"))
            .map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
    }
    let ok = hecke.passed() && branching.iter().all(|b| b.passed());
    let mut result = json!({"dim": md.dim(), "klr": klr, "hecke": hecke, "branching": branching});
    if out.is_none() {
        result["module"] = serde_json::to_value(&hj).expect("serializes");
    }
    emit("transport", ok, result)
}

fn cmd_orbit(nu: &str) -> Outcome {
    let nu: DimVec = parse("nu", nu)?;
    let (plus, minus) = orbit_split(&nu)?;
    let show = |v: &[ThetaSequence]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    emit("orbit", true, json!({"nu": nu.to_string(), "plus": show(&plus), "minus": show(&minus), "sizes": [plus.len(), minus.len()]}))
}

fn cmd_module(seq: &str, truncated: Option<usize>) -> Outcome {
    let s: ThetaSequence = parse("seq", seq)?;
    let md: FDModule<Rat> = match truncated {
        Some(n) => truncated_module(&s, n)?,
        None => permutation_module(&s)?,
    };
    let ok = check_fdmodule(&md).passed();
    Ok((ok, serde_json::to_string_pretty(&ModuleJson::from_module(&md)).expect("serializes")))
}

fn cmd_demo() -> Outcome {
    let n = 6;
    let i: Vertex = "p".parse().expect("vertex");
    let nu = DimVec::from_half(&[i]);
    let mut ok = true;

    // rank one: the two idempotent projectives and their tops
    let symbols = Proj::all_of(&nu);
    let mut gram = Vec::new();
    for b in &symbols {
        let row: Vec<String> = symbols.iter().map(|a| pairing_cartan(b, a, n).to_string()).collect();
        gram.push(json!({"row": b.to_string(), "cartan": row}));
    }
    let mut tops = Vec::new();
    for a in &symbols {
        let Proj::Seq(a) = a else { continue };
        let top = permutation_module::<Rat>(a)?;
        let pair: Vec<usize> = symbols
            .iter()
            .map(|b| match b {
                Proj::Seq(b) => top.block_dim(b),
                Proj::Phi(_) => 0,
            })
            .collect();
        ok &= pair.iter().filter(|&&d| d == 1).count() == 1 && top.block_dim(a) == 1;
        let e = match e_functor(&top, i)? {
            Restricted::Phi { plus, minus } => json!({"phi+": plus, "phi-": minus}),
            _ => Value::Null,
        };
        tops.push(json!({"top_of": a.to_string(), "hom_from_projectives": pair, "e_i": e}));
    }

    // rank zero: phi_+ and phi_-
    let phis = [Proj::Phi(1), Proj::Phi(-1)];
    let mut ke = Vec::new();
    for a in &phis {
        for b in &phis {
            let s = pairing_ke(a, b, n);
            let want = if a == b { "1" } else { "0" };
            ok &= s.to_string() == want;
            ke.push(json!({"a": a.to_string(), "b": b.to_string(), "ke": s.to_string()}));
        }
    }
    let f_phi: Vec<Value> = [1, -1]
        .iter()
        .map(|&sg| {
            let md = f_functor_phi::<Rat>(sg, i).expect("rank one");
            let blocks: Vec<String> = md.blocks().map(|(s, _)| s.to_string()).collect();
            json!({"phi": if sg > 0 { "phi+" } else { "phi-" }, "f_i": blocks})
        })
        .collect();

    // rank two: permutation module through the transport
    let perm: FDModule<Qp> = permutation_module(&"p,p^5".parse::<ThetaSequence>()?)?;
    let klr = check_fdmodule(&perm);
    let h = psi_transport_with(&perm, KappaFn::Linear)?;
    let hecke = check_hecke(&h);
    let br = compare_branching_with(&perm, "p^5".parse()?, KappaFn::Linear)?;
    ok &= klr.passed() && hecke.passed() && br.passed();

    emit(
        "demo",
        ok,
        json!({
            "rank_one": {"nu": nu.to_string(), "projectives": symbols.iter().map(|s| s.to_string()).collect::<Vec<_>>(), "cartan": gram, "tops": tops},
            "rank_zero": {"ke_pairing": ke, "f_i": f_phi},
            "rank_two_transport": {"module": "p,p^5", "dim": perm.dim(), "klr_instances": klr.instances, "hecke": hecke, "branching_p5": br},
        }),
    )
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::VerifyRelations { m, labels, kind } => cmd_verify_relations(m, &labels, kind),
        Cmd::Pbw { expr } => cmd_pbw(&expr),
        Cmd::Gdim { nu, from, to, order } => cmd_gdim(&nu, &from, &to, order),
        Cmd::EfCheck { i, j, nu, a, order } => cmd_ef_check(&i, &j, nu.as_deref(), &a, order),
        Cmd::Transport { module, out, f } => cmd_transport(&module, out.as_ref(), f),
        Cmd::Orbit { nu } => cmd_orbit(&nu),
        Cmd::Module { seq, truncated } => cmd_module(&seq, truncated),
        Cmd::Demo => cmd_demo(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((ok, text)) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("klrd: {msg}");
            ExitCode::from(2)
        }
    }
}

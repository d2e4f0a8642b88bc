//! Command dispatch for the `nildegen` binary. [`run`] returns the exit code
//! and both output streams so the commands can be driven in-process.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use nildegen::algprops;
use nildegen::catalogue::{self, AlgebraId, CatalogueError};
use nildegen::degeneration::{
    self, verify_lemma_identities, CharClass, DegenError, ExecutionMode, SearchConfig, WitnessFile,
};
use nildegen::fields::Field;
use nildegen::hasse::{self, Format};
use nildegen::structspace::{Matrix3, StructError, StructureVector};

/// Environment variable holding the default search seed.
pub const SEED_VAR: &str = "NILDEGEN_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "nildegen",
    version,
    about = "Degenerations of 3-dimensional nilpotent associative algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the table of algebras with their structure vectors.
    Catalog {
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Print the invariant profile of an algebra as JSON.
    Invariants {
        id: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Apply a change of basis to a structure vector file.
    Act {
        file: String,
        /// JSON rows, inline or as a path.
        matrix: String,
    },
    /// Check a witness curve file.
    VerifyWitness { file: String },
    /// Run the polynomial identity suite.
    Identities {
        #[arg(long = "char")]
        characteristic: u64,
    },
    /// Build the reduced degeneration diagram.
    Hasse {
        #[arg(long = "char")]
        characteristic: u64,
        #[arg(long, default_value = "dot")]
        format: String,
        #[arg(long, default_value_t = 10)]
        deltas: usize,
    },
    /// Random search for a witness curve over a finite field.
    SearchWitness {
        src: String,
        dst: String,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// 0 searches GF(5), 2 searches GF(4), any other prime p searches GF(p).
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        sequential: bool,
    },
    /// Name the table algebra a structure vector file is isomorphic to.
    Identify { file: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(stdout: String, stderr: String) -> Output {
        Output {
            code: EXIT_FAIL,
            stdout,
            stderr,
        }
    }

    fn input(msg: impl std::fmt::Display) -> Output {
        Output {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Errors raised before any verification could start.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

type Res<T> = Result<T, InputError>;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output::ok(text)
                }
                _ => Output {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let seed_env = std::env::var(SEED_VAR).ok();
    dispatch(cli.command, seed_env.as_deref())
}

pub fn dispatch(cmd: Command, seed_env: Option<&str>) -> Output {
    let r = match cmd {
        Command::Catalog { characteristic } => catalog(characteristic),
        Command::Invariants { id, characteristic } => invariants(&id, characteristic),
        Command::Act { file, matrix } => act(&file, &matrix),
        Command::VerifyWitness { file } => verify_witness(&file),
        Command::Identities { characteristic } => identities(characteristic),
        Command::Hasse {
            characteristic,
            format,
            deltas,
        } => hasse_cmd(characteristic, &format, deltas),
        Command::SearchWitness {
            src,
            dst,
            budget,
            seed,
            degree,
            characteristic,
            sequential,
        } => {
            let seed = match seed
                .map(Ok)
                .or_else(|| seed_env.map(|s| s.trim().parse::<u64>()))
            {
                Some(Ok(s)) => s,
                Some(Err(e)) => return Output::input(format!("{SEED_VAR}: {e}")),
                None => 0,
            };
            let mode = if sequential {
                ExecutionMode::Sequential
            } else {
                ExecutionMode::Parallel
            };
            let cfg = SearchConfig::new(degree, budget, seed).with_mode(mode);
            search(&src, &dst, characteristic, &cfg)
        }
        Command::Identify { file } => identify(&file),
    };
    r.unwrap_or_else(|InputError(m)| Output::input(m))
}

fn read(path: &str) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
}

fn read_json(path: &str) -> Res<Value> {
    Ok(serde_json::from_str(&read(path)?)?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// `--char` values: 0 for the rationals, otherwise a prime.
fn field_for_char(c: u64) -> Res<Field> {
    Ok(Field::prime_field(c)?)
}

/// Every field a characteristic flag is checked over, base field first.
fn fields_for_char(c: u64) -> Res<Vec<Field>> {
    Ok(match c {
        0 => hasse::case_fields(CharClass::NotTwo),
        2 => hasse::case_fields(CharClass::Two),
        p => vec![Field::prime(p)?],
    })
}

fn catalog(c: u64) -> Res<Output> {
    let base = field_for_char(c)?;
    let fd = Field::rational_functions(&base, "d")?;
    let d = fd.parse("d")?;
    let mut out = String::new();
    for id in catalogue::table1(&fd, &d) {
        let lam = catalogue::structure_of(&id, &fd)?;
        let class = algprops::nilpotency_class(&lam)?;
        writeln!(
            out,
            "{:<6}  {:<20}  class {class}",
            id.to_string().replace("(d)", "(δ)"),
            lam.to_string().replace('d', "δ")
        )
        .unwrap();
    }
    Ok(Output::ok(out))
}

fn invariants(id: &str, c: u64) -> Res<Output> {
    let f = field_for_char(c)?;
    let id = AlgebraId::parse(id, &f)?;
    let lam = catalogue::structure_of(&id, &f)?;
    let profile = algprops::invariant_profile(&lam)?;
    let doc = json!({
        "id": id.to_string(),
        "char": c,
        "vector": lam.to_string(),
        "profile": profile,
    });
    Ok(Output::ok(pretty(&doc)))
}

fn parse_matrix_rows(v: &Value) -> Res<Vec<Vec<String>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| InputError("matrix must be a JSON array of rows".into()))?;
    let mut out = Vec::new();
    for r in rows {
        let r = r
            .as_array()
            .ok_or_else(|| InputError("matrix rows must be arrays".into()))?;
        let mut row = Vec::new();
        for x in r {
            match x {
                Value::String(s) => row.push(s.clone()),
                Value::Number(n) => row.push(n.to_string()),
                other => return Err(InputError(format!("bad matrix entry {other}"))),
            }
        }
        out.push(row);
    }
    if out.len() != 3 || out.iter().any(|r| r.len() != 3) {
        return Err(InputError("matrix must be 3x3".into()));
    }
    Ok(out)
}

fn act(file: &str, matrix: &str) -> Res<Output> {
    let lam = StructureVector::from_json(&read_json(file)?)?;
    let text = if Path::new(matrix).is_file() {
        read(matrix)?
    } else {
        matrix.to_string()
    };
    let rows = parse_matrix_rows(&serde_json::from_str(&text)?)?;
    let g = Matrix3::parse_rows(lam.field(), &rows)?;
    let image = lam.act(&g)?;
    Ok(Output::ok(pretty(&image.to_json())))
}

/// Refutations exit 1; anything that stops the check from running exits 2.
fn is_refutation(e: &DegenError) -> bool {
    matches!(
        e,
        DegenError::PoleAtZero(_)
            | DegenError::LimitMismatch { .. }
            | DegenError::SingularCurve
            | DegenError::Struct(StructError::Singular)
    )
}

fn verify_witness(file: &str) -> Res<Output> {
    let w = WitnessFile::parse(&read(file)?)?;
    let f = w.field()?;
    let src = AlgebraId::parse(&w.src, &f)?;
    let dst = AlgebraId::parse(&w.dst, &f)?;
    let lam = catalogue::structure_of(&src, &f)?;
    let head = format!("{} -> {} over {f}\n", w.src, w.dst);
    let curve = match degeneration::Curve::parse(&f, &w.matrix) {
        Ok(c) => c,
        Err(e) if is_refutation(&e) => return Ok(Output::fail(head, format!("refuted: {e}\n"))),
        Err(e) => return Err(e.into()),
    };
    match degeneration::verify_witness(&lam, &curve, &dst, true) {
        Ok(r) => {
            let mut out = head;
            writeln!(out, "limit: {}", r.limit).unwrap();
            match r.identified {
                None => writeln!(out, "verified: limit equals {dst}").unwrap(),
                Some(id) => writeln!(out, "verified: limit is isomorphic to {id}").unwrap(),
            }
            Ok(Output::ok(out))
        }
        Err(DegenError::LimitMismatch { .. }) => {
            let got = degeneration::limit(&lam, &curve)?;
            let want = catalogue::structure_of(&catalogue::canonicalize(&dst, &f)?.id, &f)?;
            let mut out = head;
            writeln!(out, "limit: {got}").unwrap();
            writeln!(out, "expected: {want}").unwrap();
            for t in nildegen::structspace::TripleIndex::all() {
                let (a, b) = (got.get(t), want.get(t));
                if a != b {
                    writeln!(
                        out,
                        "  coefficient {}{}{}: limit {a}, expected {b}",
                        t.i(),
                        t.j(),
                        t.k()
                    )
                    .unwrap();
                }
            }
            Ok(Output::fail(
                out,
                format!("refuted: limit is not isomorphic to {dst}\n"),
            ))
        }
        Err(e) if is_refutation(&e) => Ok(Output::fail(head, format!("refuted: {e}\n"))),
        Err(e) => Err(e.into()),
    }
}

fn identities(c: u64) -> Res<Output> {
    let mut out = String::new();
    let mut bad = Vec::new();
    for f in fields_for_char(c)? {
        let r = verify_lemma_identities(&f, None);
        for chk in &r.checks {
            let v = if chk.passed { "ok" } else { "FAIL" };
            writeln!(out, "{f}\t{}\t{} vars\t{v}", chk.name, chk.variables).unwrap();
        }
        bad.extend(r.failures().into_iter().map(|m| format!("{f}: {m}")));
    }
    if bad.is_empty() {
        writeln!(out, "all identities hold").unwrap();
        Ok(Output::ok(out))
    } else {
        Ok(Output::fail(out, bad.join("\n") + "\n"))
    }
}

fn hasse_cmd(c: u64, format: &str, deltas: usize) -> Res<Output> {
    let format: Format = format.parse().map_err(InputError)?;
    let fields = fields_for_char(c)?;
    let class = CharClass::of(c);
    let mut main = None;
    let mut notes = String::new();
    for f in &fields {
        let g = match hasse::build_graph(class, f, deltas) {
            Ok(g) => g,
            Err(e) => return Ok(Output::fail(String::new(), format!("{f}: {e}\n"))),
        };
        if let Err(m) = hasse::compare_expected(&g) {
            writeln!(notes, "{f}: {m}").unwrap();
        }
        if main.is_none() {
            main = Some(g);
        }
    }
    let g = main.expect("at least one field");
    let reduced = match hasse::transitive_reduction(&g) {
        Ok(r) => r,
        Err(e) => return Ok(Output::fail(String::new(), format!("{e}\n"))),
    };
    let text = hasse::emit(&reduced, format);
    if notes.is_empty() {
        Ok(Output::ok(text))
    } else {
        Ok(Output::fail(text, notes))
    }
}

fn search_field(c: u64) -> Res<Field> {
    Ok(match c {
        0 => Field::prime(5)?,
        2 => hasse::case_fields(CharClass::Two).pop().expect("GF(4)"),
        p => Field::prime(p)?,
    })
}

fn search(src: &str, dst: &str, c: u64, cfg: &SearchConfig) -> Res<Output> {
    let f = search_field(c)?;
    let s = AlgebraId::parse(src, &f)?;
    let d = AlgebraId::parse(dst, &f)?;
    let outcome = degeneration::search_witness(&s, &d, &f, cfg)?;
    let obstruction = degeneration::check_obstruction_in(&s, &d, &f);
    let found = outcome.found.as_ref().map(|h| {
        json!({
            "index": h.index,
            "matrix": h.curve.to_strings(),
            "limit": h.limit.to_string(),
            "lifted": h.lifted.as_ref().map(|c| c.to_strings()),
        })
    });
    let doc = json!({
        "src": s.to_string(),
        "dst": d.to_string(),
        "field": f.to_string(),
        "degree": cfg.degree,
        "budget": cfg.budget,
        "seed": cfg.seed,
        "tried": outcome.tried,
        "found": found,
        "obstruction": obstruction.as_ref().map(|o| json!({"tag": o.tag.name(), "detail": o.detail})),
    });
    let text = pretty(&doc);
    Ok(if outcome.found.is_some() {
        Output::ok(text)
    } else {
        Output::fail(text, "no curve found within budget\n".into())
    })
}

fn identify(file: &str) -> Res<Output> {
    let lam = StructureVector::from_json(&read_json(file)?)?;
    match catalogue::identify_with_witness_extending(&lam) {
        Ok((id, g, field)) => {
            let doc = json!({
                "id": id.to_string(),
                "field": field.to_string(),
                "matrix": g.to_strings(),
            });
            Ok(Output::ok(pretty(&doc)))
        }
        Err(CatalogueError::NotNilpotentAssociative) => Ok(Output::fail(
            String::new(),
            "input is not a nilpotent associative algebra\n".into(),
        )),
        Err(e) => Err(e.into()),
    }
}

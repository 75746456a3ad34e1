use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use tdr_core::decompose::DecompError;
use tdr_core::flows::{extend_flow_tol, FLOW_TOL};
use tdr_core::generate::{gen_random, GenMode};
use tdr_core::io::{self, ParseError};
use tdr_core::representation::{Dims, RepError};
use tdr_core::semigraph::TensorDiagram;
use tdr_core::wildness::{build_y_pair, iso_from_similarity, needle_rep_from_pair, sim_similarity_solve};
use tdr_core::{classify_diagram, decompose, isomorphic, Representation};

#[derive(Parser, Debug)]
#[command(name = "tdr", version, about = "Representations of tensor diagrams")]
struct Cli {
    /// Seed for commands that draw random numbers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance for flow conditions.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Also write a JSON report with input digests and the exit code.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify every component of a diagram.
    Classify { diagram: PathBuf },
    /// Decompose a representation of a connected finite or tame diagram.
    Decompose { rep: PathBuf },
    /// Decide whether two representations are isomorphic.
    Isotest { a: PathBuf, b: PathBuf },
    /// Contract a representation of a closed diagram to a scalar.
    Contract { rep: PathBuf },
    /// Extend a partial flow over the subdiagram induced by `u`.
    FlowExtend { diagram: PathBuf, flow: PathBuf },
    /// Build needle representations from two matrix pairs.
    WildEmbed { pairs: PathBuf },
    /// Draw a random representation.
    GenRandom {
        diagram: PathBuf,
        /// A single dimension for every wire, or `e1=2,e2=3`.
        #[arg(long, default_value = "1")]
        dims: String,
        #[arg(long, value_enum, default_value_t = Mode::Generic)]
        mode: Mode,
        /// Where to write the answer key in sum mode.
        #[arg(long)]
        key: Option<PathBuf>,
    },
    /// Rewrite a diagram or representation file in canonical form.
    Fmt { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Generic,
    Sum,
}

enum Failure {
    Invalid(String),
    Wild,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<DecompError> for Failure {
    fn from(e: DecompError) -> Self {
        match e {
            DecompError::NotDecomposable(_) | DecompError::NotDecidableWild => Failure::Wild,
            other => Failure::Invalid(other.to_string()),
        }
    }
}

struct Session {
    inputs: Vec<(PathBuf, String)>,
}

impl Session {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = io::read_file(path)?;
        let digest: String = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.push((path.to_path_buf(), digest));
        Ok(text)
    }

    fn json(&mut self, path: &Path) -> Result<Value, Failure> {
        let text = self.read(path)?;
        Ok(io::parse_json(&text)?)
    }

    fn diagram(&mut self, path: &Path) -> Result<TensorDiagram, Failure> {
        let v = self.json(path)?;
        Ok(io::diagram_from_json(&v)?)
    }

    fn rep(&mut self, path: &Path) -> Result<Representation, Failure> {
        let v = self.json(path)?;
        Ok(io::rep_from_json(&v, path.parent())?)
    }
}

fn parse_dims(text: &str, d: &TensorDiagram) -> Result<Dims, Failure> {
    if let Ok(k) = text.trim().parse::<usize>() {
        return Ok(d.wire_ids().map(|w| (w.to_string(), k)).collect());
    }
    text.split(',')
        .map(|item| {
            let (w, k) = item
                .split_once('=')
                .ok_or_else(|| Failure::Invalid(format!("bad dims entry {item:?}")))?;
            let k = k
                .trim()
                .parse()
                .map_err(|_| Failure::Invalid(format!("bad dimension in {item:?}")))?;
            Ok((w.trim().to_string(), k))
        })
        .collect()
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: &Cli, s: &mut Session) -> Result<Value, Failure> {
    match &cli.command {
        Command::Classify { diagram } => {
            let d = s.diagram(diagram)?;
            let comps = classify_diagram(&d).map_err(|e| Failure::Invalid(e.to_string()))?;
            Ok(io::classification_to_json(&comps))
        }
        Command::Decompose { rep } => {
            let r = s.rep(rep)?;
            Ok(io::decomposition_to_json(&decompose(&r)?))
        }
        Command::Isotest { a, b } => {
            let (r1, r2) = (s.rep(a)?, s.rep(b)?);
            Ok(json!({ "isomorphic": isomorphic(&r1, &r2)? }))
        }
        Command::Contract { rep } => {
            let r = s.rep(rep)?;
            Ok(json!({ "value": io::rational_to_json(&r.contract()?) }))
        }
        Command::FlowExtend { diagram, flow } => {
            let d = s.diagram(diagram)?;
            let input = io::flow_from_json(&s.json(flow)?)?;
            let u: BTreeSet<String> = input.u.into_iter().collect();
            let total = extend_flow_tol(&d, &input.flow, &u, cli.tol.unwrap_or(FLOW_TOL))
                .map_err(|e| Failure::Invalid(e.to_string()))?;
            Ok(io::flow_to_json(&total))
        }
        Command::WildEmbed { pairs } => {
            let (p1, p2) = io::pairs_from_json(&s.json(pairs)?)?;
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir).map_err(|e| Failure::Invalid(format!("cannot create {}: {e}", dir.display())))?;
            let mut files = Vec::new();
            let mut reps = Vec::new();
            for (name, p) in [("needle1.json", &p1), ("needle2.json", &p2)] {
                let r = needle_rep_from_pair(p).map_err(|e| Failure::Invalid(e.to_string()))?;
                let path = dir.join(name);
                write_text(&path, &io::to_canonical_string(&io::rep_to_json(&r)))?;
                files.push(path.display().to_string());
                reps.push(r);
            }
            let (y1, _) = build_y_pair(&p1);
            let witness = sim_similarity_solve(&p1, &p2);
            let (similarity, verified) = match &witness {
                Some(pm) => {
                    let g = iso_from_similarity(pm, &p1, &p2).map_err(|e| Failure::Invalid(e.to_string()))?;
                    let ok = reps[0].apply_group_element(&g)? == reps[1];
                    (io::matrix_rows_to_json(pm), ok)
                }
                None => (Value::Null, false),
            };
            Ok(json!({
                "n": p1.n(),
                "rank_y1": y1.rank(),
                "files": files,
                "similarity": similarity,
                "isomorphism_verified": verified,
            }))
        }
        Command::GenRandom { diagram, dims, mode, key } => {
            let d = s.diagram(diagram)?;
            let dims = parse_dims(dims, &d)?;
            let mode = match mode {
                Mode::Generic => GenMode::Generic,
                Mode::Sum => GenMode::Sum,
            };
            let g = gen_random(&d, &dims, cli.seed, mode).map_err(|e| match e {
                tdr_core::generate::GenError::Decomp(e) => Failure::from(e),
                other => Failure::Invalid(other.to_string()),
            })?;
            if let (Some(path), Some(k)) = (key, &g.key) {
                write_text(path, &io::to_canonical_string(&io::decomposition_to_json(k)))?;
            }
            Ok(io::rep_to_json(&g.rep))
        }
        Command::Fmt { file } => {
            let text = s.read(file)?;
            let canon = io::fmt_roundtrip(&text, file.parent())?;
            Ok(io::parse_json(&canon)?)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Decompose { .. } => "decompose",
        Command::Isotest { .. } => "isotest",
        Command::Contract { .. } => "contract",
        Command::FlowExtend { .. } => "flow-extend",
        Command::WildEmbed { .. } => "wild-embed",
        Command::GenRandom { .. } => "gen-random",
        Command::Fmt { .. } => "fmt",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut session = Session { inputs: Vec::new() };
    let outcome = run(&cli, &mut session);
    let (result, code) = match outcome {
        Ok(v) => (v, 0u8),
        Err(Failure::Wild) => (json!({"error": "wild"}), 2),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            (json!({"error": msg}), 1)
        }
    };
    let text = io::to_canonical_string(&result);
    let wrote_file = !matches!(cli.command, Command::WildEmbed { .. });
    match (&cli.out, code) {
        (Some(path), 0) if wrote_file => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        (_, 1) => {}
        _ => print!("{text}"),
    }
    if let Some(path) = &cli.report {
        let inputs: Vec<Value> = session
            .inputs
            .iter()
            .map(|(p, h)| json!({"path": p.display().to_string(), "sha256": h}))
            .collect();
        let report = json!({
            "command": command_name(&cli.command),
            "inputs": inputs,
            "result": result,
            "exit_code": code,
        });
        if let Err(e) = std::fs::write(path, io::to_canonical_string(&report)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}

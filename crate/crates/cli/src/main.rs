//! `dcss`: diagonal gates on CSS codes from the command line.
//!
//! Every command prints one JSON report on stdout. Exit status is 0 for
//! success or a true verdict, 1 for a false verdict, 2 for bad input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use dcss_core::codespace::CssCode;
use dcss_core::gencoeff::{
    gate_from_constraints, generator_coeff, induced_logical, is_logical_identity,
    is_logical_identity_symbolic, norm_test, oblivious_coherent, physical_constraints_for_target,
    preserves, zero_syndrome_row,
};
use dcss_core::io::{from_json, CodeFile, GateFile, LoadedGate, StabilizerFile, TargetFile};
use dcss_core::oracle::{brute_force_preserves, verify_logical_action};
use dcss_core::qforms::{build_family, theorem3_verify, FamilyDescriptor};
use dcss_core::{BitVector, DyadicDiagonalGate, LogicalDiagonal};

#[derive(Parser)]
#[command(name = "dcss", version, about = "Diagonal gates on CSS and stabilizer codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CodeSource {
    /// CSS code JSON
    #[arg(long, conflicts_with = "stabilizer", required_unless_present = "stabilizer")]
    code: Option<PathBuf>,
    /// Stabilizer generators JSON; the CSS tower of its standard form is used
    #[arg(long)]
    stabilizer: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the quadratic-form code family for a given m
    BuildFamily {
        #[arg(long, required_unless_present = "descriptor")]
        m: Option<usize>,
        /// Use every admissible pair (i, j)
        #[arg(long, conflicts_with_all = ["pairs", "descriptor"])]
        all_pairs: bool,
        /// Pairs as "i,j;i,j;..." (1-based)
        #[arg(long, conflicts_with = "descriptor")]
        pairs: Option<String>,
        /// Family descriptor JSON {"m", "pairs"}
        #[arg(long, conflicts_with = "m")]
        descriptor: Option<PathBuf>,
        /// Write the code JSON here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Bounded distance search up to this weight
        #[arg(long, default_value_t = 4)]
        w_max: usize,
    },
    /// Decide preservation and report the induced logical gate
    Check {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        gate: PathBuf,
    },
    /// Physical constraints that induce a target logical gate
    Target {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        target: PathBuf,
    },
    /// Cross-check by sparse state simulation
    Verify {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        gate: PathBuf,
        /// Logical gate to check against; defaults to the induced one
        #[arg(long)]
        claimed: Option<PathBuf>,
    },
    /// Weight distribution of C1 + y, or of C2 + w with --coset
    Weights {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        coset: Option<BitVector>,
    },
    /// Locality check: deleting the support keeps the C2 generator rank
    Ft {
        #[command(flatten)]
        source: CodeSource,
        /// 1-based coordinates, comma separated
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        support: Vec<usize>,
    },
    /// Decoherence-free checks: single weight in C1 + y, and optionally
    /// whether a gate acts as the logical identity
    Dfs {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        gate: Option<PathBuf>,
    },
    /// Two-layer code pairings with verification status
    Catalog,
}

/// Outcome of a command: `ok = false` maps to exit status 1.
struct Verdict {
    ok: bool,
    result: Value,
}

impl Verdict {
    fn new(ok: bool, result: Value) -> Self {
        Self { ok, result }
    }
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a [String],
    inputs_digest: String,
    result: Value,
    elapsed_ms: u128,
}

struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new() -> Self {
        Self {
            hasher: Sha256::new(),
        }
    }

    fn read(&mut self, path: &Path) -> anyhow::Result<String> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn json<T: for<'de> serde::Deserialize<'de>>(&mut self, path: &Path) -> anyhow::Result<T> {
        let text = self.read(path)?;
        from_json(&text).with_context(|| format!("parsing {}", path.display()))
    }

    fn code(&mut self, src: &CodeSource) -> anyhow::Result<CssCode> {
        match (&src.code, &src.stabilizer) {
            (Some(p), _) => Ok(self.json::<CodeFile>(p)?.to_code()?),
            (None, Some(p)) => Ok(self.json::<StabilizerFile>(p)?.to_code()?),
            (None, None) => bail!("one of --code or --stabilizer is required"),
        }
    }

    fn digest(self) -> String {
        format!("{:x}", self.hasher.finalize())
    }
}

fn code_summary(code: &CssCode) -> Value {
    json!({
        "n": code.n(),
        "k": code.k(),
        "k1": code.c1().k(),
        "k2": code.c2().k(),
        "code": CodeFile::from_code(code),
    })
}

fn parse_pairs(s: &str) -> anyhow::Result<Vec<(usize, usize)>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) = p
                .split_once(',')
                .with_context(|| format!("pair {p:?} is not of the form i,j"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

fn check_dyadic(code: &CssCode, gate: &DyadicDiagonalGate) -> anyhow::Result<Verdict> {
    let ok = preserves(code, gate)?;
    let norm = norm_test(code, gate)?;
    let row = zero_syndrome_row(code, gate)?;
    let z = BitVector::zeros(code.n());
    let a00 = generator_coeff(code, gate, &z, &z)?;
    let logical = if ok {
        Some(induced_logical(code, gate)?)
    } else {
        None
    };
    Ok(Verdict::new(
        ok,
        json!({
            "preserves": ok,
            "norm_test": norm,
            "logical_identity": is_logical_identity(code, gate)?,
            "logical": logical,
            "A_00": a00,
            "A_00_text": a00.to_string(),
            "zero_syndrome_row": row,
        }),
    ))
}

fn run(cmd: &Command, inputs: &mut Inputs) -> anyhow::Result<Verdict> {
    match cmd {
        Command::BuildFamily {
            m,
            all_pairs,
            pairs,
            descriptor,
            out,
            w_max,
        } => {
            let desc = match (descriptor, m) {
                (Some(p), _) => inputs.json::<FamilyDescriptor>(p)?,
                (None, Some(m)) if *all_pairs => FamilyDescriptor::all_pairs(*m),
                (None, Some(m)) => FamilyDescriptor {
                    m: *m,
                    pairs: pairs.as_deref().map(parse_pairs).transpose()?.unwrap_or_default(),
                },
                (None, None) => bail!("--m or --descriptor is required"),
            };
            let code = build_family(&desc)?;
            let distance = code.distance_bounded(*w_max)?;
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&CodeFile::from_code(&code))?;
                std::fs::write(path, text + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(Verdict::new(
                true,
                json!({
                    "descriptor": desc,
                    "distance": distance,
                    "summary": code_summary(&code),
                }),
            ))
        }
        Command::Check { source, gate } => {
            let code = inputs.code(source)?;
            let gate: GateFile = inputs.json(gate)?;
            match gate.build(code.n())? {
                LoadedGate::Dyadic(g) => check_dyadic(&code, &g),
                LoadedGate::Symbolic(g) => {
                    let ok = is_logical_identity_symbolic(&code, &g)?;
                    Ok(Verdict::new(ok, json!({ "logical_identity": ok })))
                }
            }
        }
        Command::Target { source, target } => {
            let code = inputs.code(source)?;
            let target = inputs.json::<TargetFile>(target)?.to_logical()?;
            let constraints = physical_constraints_for_target(&code, &target)?;
            let gate = gate_from_constraints(&code, &constraints)?;
            let round_trip = induced_logical(&code, &gate)? == target;
            Ok(Verdict::new(
                round_trip,
                json!({
                    "n": code.n(),
                    "k": code.k(),
                    "constraints": constraints,
                    "round_trip": round_trip,
                }),
            ))
        }
        Command::Verify {
            source,
            gate,
            claimed,
        } => {
            let code = inputs.code(source)?;
            let gate = inputs.json::<GateFile>(gate)?.build_dyadic(code.n())?;
            let oracle_preserves = brute_force_preserves(&code, &gate)?;
            let framework_preserves = preserves(&code, &gate)?;
            let claimed: Option<LogicalDiagonal> = match claimed {
                Some(p) => Some(inputs.json::<TargetFile>(p)?.to_logical()?),
                None if framework_preserves => Some(induced_logical(&code, &gate)?),
                None => None,
            };
            let action = claimed
                .as_ref()
                .map(|c| verify_logical_action(&code, &gate, c))
                .transpose()?;
            let agree = oracle_preserves == framework_preserves;
            let passed = agree && action.as_ref().map_or(oracle_preserves, |a| a.passed);
            Ok(Verdict::new(
                passed,
                json!({
                    "oracle_preserves": oracle_preserves,
                    "framework_preserves": framework_preserves,
                    "agree": agree,
                    "claimed": claimed,
                    "action": action,
                }),
            ))
        }
        Command::Weights { source, coset } => {
            let code = inputs.code(source)?;
            let (which, dist) = match coset {
                Some(w) => ("C2 + w", code.c2().weight_distribution(w)?),
                None => ("C1 + y", code.c1().weight_distribution(code.y())?),
            };
            Ok(Verdict::new(
                true,
                json!({ "set": which, "distribution": dist }),
            ))
        }
        Command::Ft { source, support } => {
            let code = inputs.code(source)?;
            if let Some(&q) = support.iter().find(|&&q| q == 0 || q > code.n()) {
                bail!("coordinate {q} outside 1..={}", code.n());
            }
            let zero_based: Vec<usize> = support.iter().map(|q| q - 1).collect();
            let ok = code.ft_local_check(&zero_based);
            Ok(Verdict::new(ok, json!({ "support": support, "pass": ok })))
        }
        Command::Dfs { source, gate } => {
            let code = inputs.code(source)?;
            let oblivious = oblivious_coherent(&code)?;
            let identity = match gate {
                Some(p) => Some(match inputs.json::<GateFile>(p)?.build(code.n())? {
                    LoadedGate::Dyadic(g) => is_logical_identity(&code, &g)?,
                    LoadedGate::Symbolic(g) => is_logical_identity_symbolic(&code, &g)?,
                }),
                None => None,
            };
            let ok = identity.unwrap_or(oblivious);
            Ok(Verdict::new(
                ok,
                json!({
                    "oblivious_coherent": oblivious,
                    "weights": code.c1().weight_distribution(code.y())?,
                    "logical_identity": identity,
                }),
            ))
        }
        Command::Catalog => catalog(),
    }
}

/// Inner codes `[[5,1,3]]` and `[[7,1,3]]`, each receiving logical `T` from
/// the parity gate induced on the outer family code.
fn catalog() -> anyhow::Result<Verdict> {
    let five = StabilizerFile {
        n: 5,
        x_rows: ["10010", "01001", "10100", "01010"]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?,
        z_rows: ["01100", "00110", "00011", "10001"]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?,
    }
    .to_code()?;
    let steane = {
        let h = dcss_core::qforms::simplex_code(3)?;
        let c1 = h.extend(&[BitVector::ones(7)])?;
        CssCode::new(c1, h, BitVector::zeros(7))?
    };
    let pairings = [
        (FamilyDescriptor::all_pairs(5), five),
        (
            FamilyDescriptor {
                m: 6,
                pairs: vec![(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3)],
            },
            steane,
        ),
    ];
    let t = LogicalDiagonal::new(1, 3, vec![0, 1])?;
    let mut rows = Vec::new();
    let mut all = true;
    for (desc, inner) in pairings {
        let outer = build_family(&desc)?;
        let outer_ok = theorem3_verify(&outer)?;
        let distance = outer.distance_bounded(3)?;
        let layer = LogicalDiagonal::parity_t(outer.k()).to_gate()?;
        let inner_ok = outer.k() == inner.n()
            && preserves(&inner, &layer)?
            && induced_logical(&inner, &layer)? == t;
        all &= outer_ok && inner_ok;
        rows.push(json!({
            "outer": format!("[[{},{},{}]]", outer.n(), outer.k(), distance_text(&distance.d)),
            "inner": format!("[[{},{}]]", inner.n(), inner.k()),
            "outer_transversal_t_dag": outer_ok,
            "inner_logical_t": inner_ok,
        }));
    }
    Ok(Verdict::new(all, json!({ "pairings": rows })))
}

fn distance_text(d: &dcss_core::codespace::DistanceBound) -> String {
    match d {
        dcss_core::codespace::DistanceBound::Exact(v) => v.to_string(),
        dcss_core::codespace::DistanceBound::AtLeast(v) => format!(">={v}"),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let start = Instant::now();
    let mut inputs = Inputs::new();
    inputs.hasher.update(args[1..].join("\u{0}").as_bytes());
    match run(&cli.command, &mut inputs) {
        Ok(v) => {
            let report = RunReport {
                command: &args[1..],
                inputs_digest: inputs.digest(),
                result: v.result,
                elapsed_ms: start.elapsed().as_millis(),
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{text}");
            if v.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": format!("{e:#}") }));
            ExitCode::from(2)
        }
    }
}

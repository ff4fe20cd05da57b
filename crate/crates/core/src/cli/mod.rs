//! Command-line front end: pipeline files in, human summaries and JSON reports out.
//!
//! Exit status is 0 on success, 1 for invalid input or usage, and 2 when a
//! computation hits a configured bound (element cap, coset cap).

mod document;
mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use document::{
    emit_pipeline, parse_document, parse_pipeline, FunctionDocument, PipelineDocument,
    FORMAT_VERSION,
};
pub use report::{
    CoxeterResults, GroupResults, LiftResults, QrunResults, ReportDocument, Results, RunResults,
    StepSummary,
};

use crate::coxeter::{paper_presentation, verify_pipeline, CoxeterMatrix, Verdict, DEFAULT_COSET_CAP};
use crate::error::{Error, Result};
use crate::lifting::{LiftedPipeline, PipelineSpec};
use crate::permgroup::{closure, nondegeneracy_issues, DEFAULT_ELEMENT_CAP};
use crate::quantum::{basis_state, marginal, measure, uniform_superposition, PermUnitary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BOUND: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "coxlift", version, about = "Lift Boolean pipelines to involutions and study the group they generate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Pipeline file
    pipeline: PathBuf,
    /// Also write a JSON report to this path
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Register layout and a summary of each lifted step
    Lift(Common),
    /// Closure of the lifted steps: order, order histogram, D8 test
    Group {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        element_cap: usize,
        /// Include the full multiplication table in the JSON report
        #[arg(long)]
        cayley: bool,
    },
    /// Empirical Coxeter matrix next to the claimed chain presentation
    Coxeter(Common),
    /// Check the claimed presentation against the concrete group
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_COSET_CAP)]
        coset_cap: usize,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        element_cap: usize,
    },
    /// Classical trace through the invertible pipeline, then undo it
    Run {
        #[command(flatten)]
        common: Common,
        /// Value of register 0, in hex
        #[arg(long)]
        input: String,
    },
    /// Apply a word's permutation unitary and sample one register
    Qrun {
        #[command(flatten)]
        common: Common,
        /// Generator symbols, rightmost applied first (f1..fn, or f g h r)
        #[arg(long, num_args = 1.., required = true)]
        word: Vec<String>,
        /// One hex value per register
        #[arg(long, num_args = 1.., required = true)]
        input: Vec<String>,
        /// Put this register in uniform superposition first
        #[arg(long)]
        superpose: Option<usize>,
        #[arg(long)]
        measure: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        shots: u64,
    },
}

/// Result of one invocation, ready to be printed by the binary.
#[derive(Debug)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<ReportDocument>,
}

/// Parses a generator symbol: `f1..fn`, or `f`, `g`, `h`, `r` for steps 1-4
/// when the pipeline has that many steps. Returns a 0-based index.
pub fn parse_symbol(symbol: &str, steps: usize) -> Result<usize> {
    let alias = ["f", "g", "h", "r"].iter().position(|&a| a == symbol);
    let index = match alias {
        Some(i) if steps <= 4 => Some(i),
        Some(_) => None,
        None => symbol
            .strip_prefix('f')
            .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
            .and_then(|d| d.parse::<usize>().ok())
            .and_then(|k| k.checked_sub(1)),
    };
    index.filter(|&i| i < steps).ok_or_else(|| Error::Symbol {
        symbol: symbol.to_string(),
    })
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter()
        .map(|i| format!("f{}", i + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_value(text: &str) -> Result<u32> {
    let digits = text
        .strip_prefix("0x")
        .or_else(|| text.strip_prefix("0X"))
        .unwrap_or(text);
    document::parse_hex(digits).ok_or_else(|| Error::Parse(format!("invalid hex value {text:?}")))
}

fn matrix_rows(m: &[Vec<u64>]) -> String {
    m.iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect::<Vec<_>>()
        .join(", ")
}

struct Success {
    summary: String,
    results: Results,
    status: i32,
}

/// Runs one command line (`args` excludes the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let argv = std::iter::once(OsString::from("coxlift")).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let info = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            return Outcome {
                status: if info { EXIT_OK } else { EXIT_INVALID },
                stdout: if info { text.clone() } else { String::new() },
                stderr: if info { String::new() } else { text },
                report: None,
            };
        }
    };

    let common = match &cli.command {
        Command::Lift(c) | Command::Coxeter(c) => c,
        Command::Group { common, .. }
        | Command::Verify { common, .. }
        | Command::Run { common, .. }
        | Command::Qrun { common, .. } => common,
    };
    let failure = |e: Error| Outcome {
        status: if matches!(e, Error::ElementCap { .. }) {
            EXIT_BOUND
        } else {
            EXIT_INVALID
        },
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        report: None,
    };

    let bytes = match std::fs::read(&common.pipeline) {
        Ok(b) => b,
        Err(e) => {
            return failure(Error::Parse(format!(
                "cannot read {}: {e}",
                common.pipeline.display()
            )))
        }
    };
    let spec = match parse_pipeline(&bytes) {
        Ok(s) => s,
        Err(e) => return failure(e),
    };
    let success = match execute(&cli.command, &spec) {
        Ok(s) => s,
        Err(e) => return failure(e),
    };

    let report = ReportDocument::new(echo, &bytes, success.results);
    let mut stderr = String::new();
    let mut status = success.status;
    if let Some(path) = &common.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            status = EXIT_INVALID;
        }
    }
    Outcome {
        status,
        stdout: success.summary,
        stderr,
        report: Some(report),
    }
}

fn execute(command: &Command, spec: &PipelineSpec) -> Result<Success> {
    let lifted = LiftedPipeline::new(spec)?;
    match command {
        Command::Lift(_) => Ok(lift(&lifted)),
        Command::Group {
            element_cap,
            cayley,
            ..
        } => group(&lifted, *element_cap, *cayley),
        Command::Coxeter(_) => Ok(coxeter(&lifted)),
        Command::Verify {
            coset_cap,
            element_cap,
            ..
        } => verify(spec, *coset_cap, *element_cap),
        Command::Run { input, .. } => run_trace(&lifted, input),
        Command::Qrun {
            word,
            input,
            superpose,
            measure,
            seed,
            shots,
            ..
        } => qrun(&lifted, word, input, *superpose, *measure, *seed, *shots),
    }
}

fn lift(lifted: &LiftedPipeline) -> Success {
    let layout = lifted.layout();
    let steps: Vec<StepSummary> = lifted
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| StepSummary {
            symbol: format!("f{}", i + 1),
            reads_register: i,
            writes_register: i + 1,
            involution: g.is_involution(),
            identity: g.is_identity(),
            moved_points: g.len() - g.fixed_points(),
        })
        .collect();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "registers {:?}, offsets {:?}, total width {}",
        layout.widths(),
        layout.offsets(),
        layout.total_width()
    );
    for st in &steps {
        let _ = writeln!(
            s,
            "{}: r{} ^= f(r{}), involution {}, moves {} of {} states{}",
            st.symbol,
            st.writes_register,
            st.reads_register,
            st.involution,
            st.moved_points,
            1u64 << layout.total_width(),
            if st.identity { " (identity)" } else { "" }
        );
    }
    Success {
        summary: s,
        results: Results::Lift(LiftResults {
            registers: layout.widths().to_vec(),
            offsets: layout.offsets().to_vec(),
            total_width: layout.total_width(),
            steps,
        }),
        status: EXIT_OK,
    }
}

fn group(lifted: &LiftedPipeline, element_cap: usize, with_cayley: bool) -> Result<Success> {
    let g = closure(lifted.generators(), element_cap)?;
    let degeneracy = nondegeneracy_issues(lifted.generators());
    let witness = g.dihedral_8_witness();
    let histogram = g.order_histogram();
    let mut s = String::new();
    let _ = writeln!(s, "group order {}", g.order());
    let hist: Vec<String> = histogram.iter().map(|(o, c)| format!("{o}:{c}")).collect();
    let _ = writeln!(s, "element orders {{{}}}", hist.join(", "));
    if degeneracy.is_empty() {
        let _ = writeln!(s, "generators nondegenerate");
    } else {
        for issue in &degeneracy {
            let _ = writeln!(s, "degenerate: {issue:?}");
        }
    }
    match &witness {
        Some(w) => {
            let _ = writeln!(
                s,
                "isomorphic to D8 with A = {}, B = {}",
                format_word(g.shortest_word(w.a)?),
                format_word(g.shortest_word(w.b)?)
            );
        }
        None => {
            let _ = writeln!(s, "not isomorphic to D8");
        }
    }
    Ok(Success {
        summary: s,
        results: Results::Group(GroupResults {
            order: g.order(),
            order_histogram: histogram,
            nondegenerate: degeneracy.is_empty(),
            degeneracy,
            dihedral_8: witness,
            words: g.words().iter().map(|w| format_word(w)).collect(),
            cayley: with_cayley.then(|| g.cayley().to_vec()),
        }),
        status: EXIT_OK,
    })
}

fn coxeter(lifted: &LiftedPipeline) -> Success {
    let gens = lifted.generators();
    let n = gens.len();
    let pair_orders: Vec<Vec<u64>> = gens
        .iter()
        .map(|a| gens.iter().map(|b| a.compose_unchecked(b).order()).collect())
        .collect();
    let empirical = CoxeterMatrix::from_generators(gens);
    let claimed = CoxeterMatrix::chain(n);
    let claimed_pres = claimed.presentation();
    let presentation_text = match paper_presentation(n) {
        Ok(p) => p.to_string(),
        Err(_) => claimed_pres.to_string(),
    };
    let mismatches: Vec<(usize, usize, u64, u64)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| pair_orders[i][j] != claimed.get(i, j))
        .map(|(i, j)| (i, j, pair_orders[i][j], claimed.get(i, j)))
        .collect();

    let mut s = String::new();
    match &empirical {
        Ok(m) => {
            let _ = writeln!(s, "empirical Coxeter matrix {}", matrix_rows(m.entries()));
        }
        Err(issues) => {
            let _ = writeln!(s, "no Coxeter matrix (degenerate generators): {issues:?}");
            let _ = writeln!(s, "pair product orders {}", matrix_rows(&pair_orders));
        }
    }
    let _ = writeln!(s, "claimed matrix {}", matrix_rows(claimed.entries()));
    let _ = writeln!(s, "claimed presentation {presentation_text}");
    for (i, j, got, want) in &mismatches {
        let _ = writeln!(s, "mismatch m[{}][{}]: empirical {got}, claimed {want}", i + 1, j + 1);
    }
    let (empirical_matrix, degeneracy) = match empirical {
        Ok(m) => (Some(m), Vec::new()),
        Err(issues) => (None, issues),
    };
    Success {
        summary: s,
        results: Results::Coxeter(CoxeterResults {
            pair_orders,
            empirical_matrix,
            degeneracy,
            claimed_matrix: claimed,
            claimed_presentation: presentation_text,
            claimed_relators: claimed_pres.relators().to_vec(),
            mismatches,
        }),
        status: EXIT_OK,
    }
}

fn verify(spec: &PipelineSpec, coset_cap: usize, element_cap: usize) -> Result<Success> {
    let r = verify_pipeline(spec, coset_cap, element_cap)?;
    let mut s = String::new();
    let _ = writeln!(s, "verdict {}", r.verdict);
    let abstract_text = match r.abstract_order {
        Some(crate::coxeter::Enumeration::Finite(n)) => n.to_string(),
        Some(crate::coxeter::Enumeration::BoundExceeded(cap)) => format!("> {cap}"),
        None => "not enumerated".to_string(),
    };
    let _ = writeln!(
        s,
        "concrete order {}, presented order {abstract_text}",
        r.concrete_order
    );
    let _ = writeln!(s, "relations hold: {}", r.relations_hold);
    for check in r.relations.iter().filter(|c| !c.holds) {
        let _ = writeln!(s, "  fails: {}", check.relator);
    }
    let _ = writeln!(s, "{}", r.note);
    let status = if r.verdict == Verdict::BoundExceeded {
        EXIT_BOUND
    } else {
        EXIT_OK
    };
    Ok(Success {
        summary: s,
        results: Results::Verify(r),
        status,
    })
}

fn run_trace(lifted: &LiftedPipeline, input: &str) -> Result<Success> {
    let x = parse_value(input)?;
    let trace = lifted.run(x)?;
    let layout = lifted.layout();
    let forward = lifted.forward_word();
    let inverse: Vec<usize> = forward.iter().rev().copied().collect();
    let out_index = layout.pack(&trace.registers)?;
    let restored = layout.unpack(lifted.evaluate(&inverse)?.apply(out_index));
    let mut initial = vec![0; layout.register_count()];
    initial[0] = x;
    let restored_ok = restored == initial;

    let fmt = |v: &[u32]| {
        v.iter()
            .map(|r| format!("{r:x}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut s = String::new();
    let _ = writeln!(s, "trace ({})", fmt(&trace.registers));
    let _ = writeln!(
        s,
        "inverse word {} restores ({}): {}",
        format_word(&inverse),
        fmt(&restored),
        if restored_ok { "ok" } else { "FAILED" }
    );
    Ok(Success {
        summary: s,
        results: Results::Run(RunResults {
            input: x,
            trace: trace.registers,
            reference: trace.reference,
            forward_word: format_word(&forward),
            inverse_word: format_word(&inverse),
            restored,
            restored_ok,
        }),
        status: if restored_ok { EXIT_OK } else { EXIT_INVALID },
    })
}

#[allow(clippy::too_many_arguments)]
fn qrun(
    lifted: &LiftedPipeline,
    word: &[String],
    input: &[String],
    superpose: Option<usize>,
    register: usize,
    seed: u64,
    shots: u64,
) -> Result<Success> {
    let steps = lifted.generators().len();
    let symbols = word
        .iter()
        .map(|w| parse_symbol(w, steps))
        .collect::<Result<Vec<_>>>()?;
    let values = input
        .iter()
        .map(|v| parse_value(v))
        .collect::<Result<Vec<_>>>()?;
    let layout = lifted.layout();
    let mut state = basis_state(layout, &values)?;
    if let Some(r) = superpose {
        state = uniform_superposition(layout, r, &state)?;
    }
    let u = PermUnitary::new(lifted.evaluate(&symbols)?);
    let out = u.apply(&state)?;
    let dist = marginal(&out, layout, register)?;
    let m = measure(&out, layout, register, seed, shots)?;

    let mut s = String::new();
    let _ = writeln!(s, "U[{}] applied to {} basis term(s)", format_word(&symbols), state.amplitudes().len());
    for (&i, a) in out.amplitudes() {
        let regs: Vec<String> = layout.unpack(i).iter().map(|r| format!("{r:x}")).collect();
        let _ = writeln!(s, "  {:+.6}{:+.6}i |{}⟩", a.re, a.im, regs.join(","));
    }
    let counts: Vec<String> = m.counts.iter().map(|(v, c)| format!("{v:x}: {c}")).collect();
    let _ = writeln!(s, "register {register} over {shots} shots: {{{}}}", counts.join(", "));
    Ok(Success {
        summary: s,
        results: Results::Qrun(QrunResults {
            word: format_word(&symbols),
            input: values,
            superposed_register: superpose,
            output_state: out.amplitudes().iter().map(|(&i, a)| (i, a.re, a.im)).collect(),
            marginal: dist,
            measurement: m,
        }),
        status: EXIT_OK,
    })
}

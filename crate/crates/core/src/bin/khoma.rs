use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use khoma::diagram::torus_2n;
use khoma::khovanov::KhovanovComplex;
use khoma::verify::{run_suite, Suite, DEFAULT_SEED};
use khoma::{
    bracket_reduced, bracket_skein_oracle, bracket_unreduced, homology::homology_of_complex, render, Diagram,
    Error,
};

/// Kauffman bracket and framed Khovanov homology of PD codes.
#[derive(Parser)]
#[command(name = "khoma", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Kauffman bracket.
    Bracket {
        #[command(flatten)]
        input: Input,
        /// Unreduced bracket, normalised so the empty diagram is 1.
        #[arg(long)]
        unreduced: bool,
        /// Also evaluate by the skein recursion and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Print the homology table.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write every differential as sparse `row col value` triplets.
        #[arg(long, value_name = "FILE")]
        dump_matrices: Option<PathBuf>,
    },
    /// Run an invariant suite; exits nonzero if any check fails.
    Verify {
        /// One of d2, euler, r1, les, closedform, skein, order.
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_n: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"; "O" is a free circle.
    #[arg(long)]
    pd: Option<String>,
    /// Torus link `2,n`.
    #[arg(long, value_name = "2,N")]
    torus: Option<String>,
    /// File with one PD code per line.
    #[arg(long, value_name = "FILE")]
    pd_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
    Text,
}

fn parse_torus(spec: &str) -> Result<Diagram, Error> {
    let bad = || Error::Syntax { offset: 0, message: format!("expected `2,n`, got {spec:?}") };
    let (p, q) = spec.split_once(',').ok_or_else(bad)?;
    let p: i64 = p.trim().parse().map_err(|_| bad())?;
    let q: i64 = q.trim().parse().map_err(|_| bad())?;
    if p != 2 {
        return Err(Error::UnsupportedTorus(p, q));
    }
    if q <= 0 || q > u32::MAX as i64 {
        return Err(Error::InvalidTorusParameter(q));
    }
    torus_2n(q as u32)
}

fn diagrams(input: &Input) -> Result<Vec<Diagram>, String> {
    if let Some(pd) = &input.pd {
        return Ok(vec![Diagram::parse(pd).map_err(|e| e.to_string())?]);
    }
    if let Some(t) = &input.torus {
        return Ok(vec![parse_torus(t).map_err(|e| e.to_string())?]);
    }
    let path = input.pd_file.as_ref().expect("clap enforces one input");
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| Diagram::parse(l).map_err(|e| format!("{}:{}: {e}", path.display(), i + 1)))
        .collect()
}

fn cmd_bracket(input: &Input, unreduced: bool, oracle: bool) -> Result<bool, String> {
    let mut all_agree = true;
    for d in diagrams(input)? {
        let value = if unreduced { bracket_unreduced(&d) } else { bracket_reduced(&d) }.map_err(|e| e.to_string())?;
        if !oracle {
            println!("{value}");
            continue;
        }
        let mut skein = bracket_skein_oracle(&d).map_err(|e| e.to_string())?;
        if unreduced {
            skein = &skein * &khoma::LaurentPolynomial::loop_value();
        }
        let agree = skein == value;
        all_agree &= agree;
        println!("state-sum: {value}");
        println!("skein:     {skein}");
        println!("{}", if agree { "agree" } else { "DISAGREE" });
    }
    Ok(all_agree)
}

fn cmd_homology(input: &Input, format: Format, dump: Option<&PathBuf>) -> Result<(), String> {
    let ds = diagrams(input)?;
    let mut dump_text = String::new();
    for (i, d) in ds.iter().enumerate() {
        let complex = KhovanovComplex::new(d).map_err(|e| e.to_string())?;
        let table = homology_of_complex(&complex).map_err(|e| e.to_string())?;
        let out = match format {
            Format::Json => table.to_json() + "\n",
            Format::Csv => render::to_csv(&table),
            Format::Markdown => render::to_markdown(&table),
            Format::Text => render::to_text(&table),
        };
        if i > 0 && !matches!(format, Format::Json) {
            println!();
        }
        print!("{out}");
        if dump.is_some() {
            for b in complex.b_values().into_iter().rev() {
                for m in complex.chain(b).map_err(|e| e.to_string())? {
                    let _ = writeln!(dump_text, "# diagram {i} d{} -> {}", m.source, m.target);
                    dump_text.push_str(&m.matrix.to_triplet_text());
                }
            }
        }
    }
    if let Some(path) = dump {
        std::fs::write(path, dump_text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn cmd_verify(suite: &str, max_n: u32, seed: u64) -> Result<bool, String> {
    let suite: Suite = suite.parse().map_err(|e: Error| e.to_string())?;
    let report = run_suite(suite, max_n, seed).map_err(|e| e.to_string())?;
    for c in &report.checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{verdict} {}", c.name);
        } else {
            println!("{verdict} {}: {}", c.name, c.detail);
        }
    }
    println!("{}", report.summary_json());
    Ok(report.passed())
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("KHOMA_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("KHOMA_THREADS must be a number, got {v:?}"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Bracket { input, unreduced, oracle } => cmd_bracket(input, *unreduced, *oracle),
        Command::Homology { input, format, dump_matrices } => {
            cmd_homology(input, *format, dump_matrices.as_ref()).map(|()| true)
        }
        Command::Verify { suite, max_n, seed } => cmd_verify(suite, *max_n, *seed),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use domineering::rules::Schedule;
use domineering::solver::{Relation, Solver, SolverError, SumPosition};
use domineering::workbench::{self, derive_table, load_bounds, load_facts, parse_table, render_table, DeriveError};
use domineering::{GameStore, Position};

#[derive(Parser)]
#[command(name = "domineering", version, about = "Domineering values, outcomes and outcome tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact value of a board (or sum of boards)
    Value { board: String },
    /// Outcome class: V, H, 1 or 2
    Outcome { board: String },
    /// Compare a board with a game, e.g. "{1|-1}"
    Compare { board: String, game: String },
    /// Prove board <= game or board >= game
    Prove { board: String, game: String, relation: Rel },
    /// Propagate a facts file and print the outcome table
    Table {
        #[arg(long)]
        max_m: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        facts: PathBuf,
        /// Table to compare against; mismatches exit with 1
        #[arg(long)]
        expected: Option<PathBuf>,
        /// Bounds file; the shipped one by default
        #[arg(long)]
        bounds: Option<PathBuf>,
        /// Also write the derivation of every known cell here
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Run every check of the published results
    VerifyPaper {
        /// Include the slow boards and the 9x7 bound proof
        #[arg(long)]
        deep: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rel {
    Le,
    Ge,
}

enum Failure {
    /// The answer is no, or tables differ.
    False,
    Resource(String),
    Input(String),
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

/// `RxC` for an empty rectangle, otherwise a board file.
fn read_board(arg: &str) -> Result<Vec<Position>, Failure> {
    if let Some((r, c)) = arg.split_once(['x', 'X']) {
        if let (Ok(r), Ok(c)) = (r.parse(), c.parse()) {
            return Ok(vec![Position::rect(r, c).map_err(input)?]);
        }
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{arg}: {e}")))?;
    Position::parse_sum(&text).map_err(|e| Failure::Input(format!("{arg}: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let store = GameStore::new();
    let mut solver = Solver::new(&store);
    match cli.command {
        Command::Value { board } => {
            let mut total = domineering::GameValue::ZERO;
            for p in read_board(&board)? {
                let v = solver.value_of_position(&p)?;
                total = store.add(total, v).map_err(SolverError::from)?;
            }
            println!("{}", store.display(total));
        }
        Command::Outcome { board } => {
            let parts = read_board(&board)?;
            let class = match parts.as_slice() {
                [p] if p.is_rect() => solver.solve_rect_outcome(p.height(), p.width())?,
                _ => solver.outcome_class(&SumPosition::new(parts, vec![]))?,
            };
            println!("{class}");
        }
        Command::Compare { board, game } => {
            let sum = SumPosition::new(read_board(&board)?, vec![]);
            let g = store.parse(&game).map_err(input)?;
            let le = solver.prove_relation(&sum, g, Relation::Le)?;
            let ge = solver.prove_relation(&sum, g, Relation::Ge)?;
            let answer = match (le, ge) {
                (true, true) => "EQUAL",
                (true, false) => "LESS",
                (false, true) => "GREATER",
                (false, false) => "CONFUSED",
            };
            println!("{answer}");
        }
        Command::Prove { board, game, relation } => {
            let sum = SumPosition::new(read_board(&board)?, vec![]);
            let g = store.parse(&game).map_err(input)?;
            let relation = match relation {
                Rel::Le => Relation::Le,
                Rel::Ge => Relation::Ge,
            };
            let holds = solver.prove_relation(&sum, g, relation)?;
            println!("{holds}");
            if !holds {
                return Err(Failure::False);
            }
        }
        Command::Table { max_m, max_n, facts, expected, bounds, provenance } => {
            let facts = load_facts(&facts).map_err(input)?;
            let bounds = match bounds {
                Some(path) => load_bounds(&path, &store).map_err(input)?,
                None => workbench::verify::shipped_bounds(&store),
            };
            let t = match derive_table(&mut solver, &facts, &bounds, max_m, max_n, &Schedule::default()) {
                Ok(t) => t,
                Err(DeriveError::Solver(e)) => return Err(e.into()),
                Err(DeriveError::Contradiction(c)) => return Err(Failure::Input(c.to_string())),
            };
            let mut report = render_table(&t, max_m, max_n);
            print!("{}", report.tsv);
            if let Some(path) = provenance {
                write(&path, &report.provenance)?;
            }
            if let Some(path) = expected {
                let text = std::fs::read_to_string(&path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                report.compare(&t, &parse_table(&text).map_err(input)?);
                for m in &report.mismatches {
                    eprintln!("mismatch at {}x{}: expected {:?}, found {:?}", m.cell.0, m.cell.1, m.expected, m.found);
                }
                if !report.mismatches.is_empty() {
                    return Err(Failure::False);
                }
            }
        }
        Command::VerifyPaper { deep } => {
            let report = workbench::verify_paper(deep);
            print!("{report}");
            if !report.passed() {
                return Err(Failure::False);
            }
        }
    }
    Ok(())
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage mistakes are input errors, not clap's usual 2
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::False) => ExitCode::from(1),
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

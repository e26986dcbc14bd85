//! `dcmoments`: Kloosterman sums, orthogonal-group double cosets, trace codes
//! and moment recursions from the command line.
//!
//! JSON goes to stdout, diagnostics to stderr. Exit status is 0 on success,
//! 1 when a requested comparison fails and 2 on usage or library errors.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "dcmoments", version, about = "Exact Kloosterman-sum moments via orthogonal-group double-coset codes")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite-field tables.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Kloosterman sums K_m(lambda(c .); a), or GL(t, q) sums with `ksum gl`.
    Ksum(KsumArgs),
    /// Power moments by brute force or by recursion.
    #[command(subcommand)]
    Moments(MomentsCmd),
    /// O+(2n, q) enumerations and order bookkeeping.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Trace codes of the double-coset families.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Cross-validation suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
enum FieldCmd {
    /// Every element with its inverse, square and trace.
    Table {
        #[arg(long)]
        r: u32,
    },
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct KsumArgs {
    #[arg(long, required = true)]
    r: Option<u32>,
    /// Hex field element.
    #[arg(long, required = true)]
    a: Option<String>,
    /// Dimension of the sum.
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Hex scale of the additive character.
    #[arg(long, default_value = "1")]
    c: String,
    #[command(subcommand)]
    gl: Option<KsumSub>,
}

#[derive(Subcommand, Debug)]
enum KsumSub {
    /// K_GL(t,q)(lambda(c .); a).
    Gl {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Recursion,
    ClosedForm,
    BruteForce,
    All,
}

#[derive(Subcommand, Debug)]
enum MomentsCmd {
    /// sum over a != 0 of K_m(lambda; a)^h by direct summation.
    Oracle {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        h_max: u32,
    },
    /// Moments from the double-coset code recursion.
    Recursive {
        /// dc1+, dc1-, dc2+ or dc2-.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        h_max: u32,
        /// Defaults to plain for dc1 and even-power for dc2.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long)]
        compare_oracle: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Plain,
    TwoDim,
    EvenPower,
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// Materialize P+(2n, q) and its Bruhat cells.
    Enum {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        /// Restrict to one cell.
        #[arg(long)]
        cell: Option<u32>,
        /// Include every element in row-major hex.
        #[arg(long)]
        elements: bool,
    },
    /// Closed-form orders with their cross-checks.
    Counts {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
    },
    /// Exponential sum of lambda(c Tr w) over one cell.
    Sum {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        cell: u32,
        #[arg(long, default_value = "1")]
        c: String,
        /// Also sum over the materialized cell.
        #[arg(long)]
        brute_force: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CodeCmd {
    /// Dual weights w(c(a)) for every a != 0.
    Weights {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        /// Also count weights on the materialized coset.
        #[arg(long)]
        direct: bool,
    },
    /// Weight distribution, in full or a single coefficient.
    Dist {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        j: Option<u64>,
    },
    /// Number of coset elements with each trace value.
    Multiplicities {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        /// Also count on the materialized coset.
        #[arg(long)]
        brute_force: bool,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Run every identity and cross-check up to the given sizes.
    All {
        #[arg(long, default_value_t = 2)]
        max_r: u32,
        #[arg(long, default_value_t = 2)]
        max_n: u32,
    },
}

fn dispatch(cli: Cli) -> dcmoments_core::Result<output::Rendered> {
    use commands::*;
    match cli.command {
        Command::Field(FieldCmd::Table { r }) => field_table(r),
        Command::Ksum(KsumArgs { gl: Some(KsumSub::Gl { r, t, a, c, method }), .. }) => ksum_gl(r, t, &a, &c, method),
        Command::Ksum(KsumArgs { r, a, m, c, gl: None }) => ksum(r.expect("required by clap"), a.as_deref().expect("required by clap"), m, &c),
        Command::Moments(MomentsCmd::Oracle { r, m, h_max }) => moments_oracle(r, m, h_max),
        Command::Moments(MomentsCmd::Recursive { family, n, r, h_max, kind, compare_oracle }) => moments_recursive(&family, n, r, h_max, kind, compare_oracle),
        Command::Group(GroupCmd::Enum { r, n, cell, elements }) => group_enum(r, n, cell, elements),
        Command::Group(GroupCmd::Counts { r, n }) => group_counts(r, n),
        Command::Group(GroupCmd::Sum { r, n, cell, c, brute_force }) => group_sum(r, n, cell, &c, brute_force),
        Command::Code(CodeCmd::Weights { family, n, r, direct }) => code_weights(&family, n, r, direct),
        Command::Code(CodeCmd::Dist { family, n, r, j }) => code_dist(&family, n, r, j),
        Command::Code(CodeCmd::Multiplicities { family, n, r, brute_force }) => code_multiplicities(&family, n, r, brute_force),
        Command::Verify(VerifyCmd::All { max_r, max_n }) => verify_all(max_r, max_n),
    }
}

/// 0 when every comparison in the output held, 1 otherwise.
fn status_code(rendered: &output::Rendered) -> u8 {
    u8::from(!rendered.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = cli.format;
    match dispatch(cli) {
        Ok(rendered) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            if let Err(e) = rendered.write(format, &mut lock).and_then(|_| lock.flush().map_err(Into::into)) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(2);
            }
            if !rendered.ok {
                eprintln!("verification failed");
            }
            ExitCode::from(status_code(&rendered))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

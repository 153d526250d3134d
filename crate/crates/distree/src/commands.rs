//! Command-line surface.

use std::io::{BufRead, Write};

use clap::{Parser, Subcommand, ValueEnum};

use distree_core::asymptotics::DEFAULT_DIGITS;
use distree_core::marked::{marked_dist_series, marked_series, path_string, tree_to_skew};
use distree_core::series::solve_simply_generated;
use distree_core::tree::{aggregate, count, for_each_member, Guard};
use distree_core::{
    models, DistTree, Family, MarkedDistTree, MarkedTree, OrderedTree, Parameter, PlaneTree,
    PowerSeries,
};

use crate::error::{CliError, CliResult};
use crate::{format, report};

/// Environment variable that lifts the exhaustive-generation size limit when
/// set to `off`.
pub const GUARD_ENV: &str = "DISTREE_GUARD";

#[derive(Debug, Parser)]
#[command(
    name = "distree",
    version,
    about = "Ordered trees with distinguished children: enumeration, series and asymptotics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of trees with n nodes, by exhaustive generation.
    Count { family: FamilyArg, n: usize },
    /// All trees with n nodes in canonical order, one per line.
    Enumerate {
        family: FamilyArg,
        n: usize,
        /// Emit JSON objects instead of bare encodings.
        #[arg(long)]
        jsonl: bool,
    },
    /// Total and histogram of a parameter over all trees with n nodes.
    Stats {
        family: FamilyArg,
        n: usize,
        #[arg(long)]
        param: ParamArg,
        /// Write the histogram as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Exact coefficients as `n<TAB>numerator/denominator` lines.
    Series {
        model: ModelArg,
        #[arg(long)]
        order: usize,
    },
    /// Recomputed asymptotic constants and their finite-size checks.
    Asymptotics {
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
        #[arg(long, default_value_t = 200)]
        check_n: usize,
    },
    /// Skew Dyck paths.
    Skew {
        #[command(subcommand)]
        action: SkewAction,
    },
    /// Coefficients 1..=T as a comma-separated line.
    OeisExport {
        model: ModelArg,
        #[arg(long)]
        terms: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SkewAction {
    /// Reads marked trees (encodings or JSON lines) from stdin and writes
    /// their skew Dyck paths.
    Convert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Ordered,
    Distinguished,
    Marked,
    MarkedDist,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Ordered => Family::Ordered,
            FamilyArg::Distinguished => Family::Distinguished,
            FamilyArg::Marked => Family::Marked,
            FamilyArg::MarkedDist => Family::MarkedDist,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamArg {
    Nodes,
    Leaves,
    OldLeaves,
    YoungLeaves,
    LeftmostEdges,
    RootDegree,
    Height,
    LeftmostPath,
    Pathlength,
    MarkedEdges,
}

impl From<ParamArg> for Parameter {
    fn from(p: ParamArg) -> Parameter {
        match p {
            ParamArg::Nodes => Parameter::Nodes,
            ParamArg::Leaves => Parameter::Leaves,
            ParamArg::OldLeaves => Parameter::OldLeaves,
            ParamArg::YoungLeaves => Parameter::YoungLeaves,
            ParamArg::LeftmostEdges => Parameter::LeftmostEdges,
            ParamArg::RootDegree => Parameter::RootDegree,
            ParamArg::Height => Parameter::Height,
            ParamArg::LeftmostPath => Parameter::LeftmostPath,
            ParamArg::Pathlength => Parameter::Pathlength,
            ParamArg::MarkedEdges => Parameter::MarkedEdges,
        }
    }
}

/// Generating functions with an exact series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// Trees with distinguished children by nodes.
    Distinguished,
    /// Ordered trees by nodes.
    Ordered,
    /// Marked ordered trees by nodes.
    Marked,
    /// Marked trees with distinguished children by nodes.
    MarkedDist,
    /// Total number of leaves of trees with distinguished children.
    Leaves,
    /// Total number of old leaves.
    OldLeaves,
    /// Total root degree.
    RootDegree,
    /// Total number of nodes on leftmost paths.
    LeftmostPath,
    /// Total pathlength.
    Pathlength,
}

pub fn model_series(model: ModelArg, order: usize) -> distree_core::Result<PowerSeries> {
    if order == 0 {
        return Err(distree_core::Error::Domain(
            "order must be at least 1".into(),
        ));
    }
    match model {
        ModelArg::Distinguished => models::dist_series(order),
        ModelArg::Ordered => solve_simply_generated(&models::ordered_phi(), order),
        ModelArg::Marked => marked_series(order),
        ModelArg::MarkedDist => marked_dist_series(order),
        ModelArg::Leaves => models::leaves_series_from_cubic(order),
        ModelArg::OldLeaves => models::gf_series(&models::old_leaves_gf(), order),
        ModelArg::RootDegree => models::gf_series(&models::root_degree_gf(), order),
        ModelArg::LeftmostPath => models::gf_series(&models::leftmost_path_gf(), order),
        ModelArg::Pathlength => models::gf_series(&models::pathlength_gf(), order),
    }
}

/// The guard as configured by [`GUARD_ENV`].
pub fn guard_from_env() -> Guard {
    match std::env::var(GUARD_ENV) {
        Ok(v) if v.eq_ignore_ascii_case("off") => Guard::Override,
        _ => Guard::Enforce,
    }
}

fn write_members<T: PlaneTree>(out: &mut dyn Write, n: usize, jsonl: bool) -> CliResult<()> {
    let mut result = Ok(());
    for_each_member::<T>(n, |t| {
        if result.is_ok() {
            let line = if jsonl {
                format::json_line(t)
            } else {
                distree_core::tree::encode(t)
            };
            result = writeln!(out, "{line}");
        }
    })?;
    Ok(result?)
}

fn skew_convert(input: &mut dyn BufRead, out: &mut dyn Write) -> CliResult<()> {
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        // Marked trees first; trees that also carry distinguished children
        // walk the same way.
        let path = match format::parse_tree_line::<MarkedTree>(&line, i + 1) {
            Ok(t) => tree_to_skew(&t),
            Err(first) => match format::parse_tree_line::<MarkedDistTree>(&line, i + 1) {
                Ok(t) => tree_to_skew(&t),
                Err(_) => return Err(first),
            },
        };
        writeln!(out, "{}", path_string(&path))?;
    }
    Ok(())
}

/// Runs one command, reading `input` where the command needs it.
pub fn run(
    command: Command,
    guard: Guard,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> CliResult<()> {
    match command {
        Command::Count { family, n } => {
            writeln!(out, "{}", count(family.into(), n, guard)?)?;
        }
        Command::Enumerate { family, n, jsonl } => {
            let family: Family = family.into();
            guard.check(family, n)?;
            match family {
                Family::Ordered => write_members::<OrderedTree>(out, n, jsonl)?,
                Family::Distinguished => write_members::<DistTree>(out, n, jsonl)?,
                Family::Marked => write_members::<MarkedTree>(out, n, jsonl)?,
                Family::MarkedDist => write_members::<MarkedDistTree>(out, n, jsonl)?,
            }
        }
        Command::Stats {
            family,
            n,
            param,
            csv,
        } => {
            let family: Family = family.into();
            let convention = family.default_convention();
            let agg = aggregate(n, family, param.into(), convention, guard)?;
            if csv {
                format::write_histogram_csv(out, &agg)?;
            } else {
                format::write_histogram_text(out, &agg)?;
            }
        }
        Command::Series { model, order } => {
            format::write_series(out, &model_series(model, order)?)?;
        }
        Command::Asymptotics { digits, check_n } => {
            let r = report::build(digits, check_n)?;
            report::write(out, &r)?;
        }
        Command::Skew {
            action: SkewAction::Convert,
        } => skew_convert(input, out)?,
        Command::OeisExport { model, terms } => {
            if terms == 0 {
                return Err(distree_core::Error::Domain("terms must be at least 1".into()).into());
            }
            let s = model_series(model, terms)?;
            writeln!(out, "{}", format::oeis_line(&s, terms)?)?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Parses `args` and runs the command; returns the process exit status.
pub fn main_with(
    args: impl IntoIterator<Item = String>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            // Help and version go to stdout with status 0.
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match run(cli.command, guard_from_env(), input, out) {
        Ok(()) => 0,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.exit_code() == crate::EXIT_GUARD {
                let _ = writeln!(err, "hint: set {GUARD_ENV}=off to lift the limit");
            }
            e.exit_code()
        }
    }
}

//! The `qxmap` command line.
//!
//! Exit status: 0 on success (or equivalent circuits for `verify`), 1 when
//! `verify` finds the circuits differ, 2 for usage, I/O and parse errors,
//! 3 when a circuit cannot be mapped onto the requested architecture.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::circuit::{Circuit, LinePlacement};
use crate::coupling::{builtin_map, CouplingMap};
use crate::formats::{emit_qasm, parse_coupling_file, parse_qasm};
use crate::mapper::{map_circuit, MappingStrategy};
use crate::optimizer::{cost, optimize, CostOrder, CostReport, OptimizeOptions};
use crate::rewriter::{exchange_lines, reduce, relabel_tail};
use crate::simulator::equivalent;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_EQUIVALENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MAPPING: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "qxmap",
    version,
    about = "Map and optimize Clifford+T circuits for IBM QX2/QX4"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Make every CNOT native without searching placements.
    Map {
        file: PathBuf,
        /// qx2, qx4, or a coupling JSON file.
        #[arg(long)]
        arch: String,
        #[arg(long)]
        strategy: MappingStrategy,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search placements, map and reduce; keep the cheapest circuit.
    Optimize {
        file: PathBuf,
        #[arg(long)]
        arch: String,
        #[arg(long)]
        strategy: MappingStrategy,
        /// Which cost decides first: gates or depth.
        #[arg(long, default_value = "gates")]
        cost: CostOrder,
        /// Only try the identity placement.
        #[arg(long)]
        no_search: bool,
        /// Disable commuting diagonal gates through CNOT controls.
        #[arg(long)]
        basic_rules: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check that two circuits implement the same unitary.
    Verify {
        a: PathBuf,
        b: PathBuf,
        /// Where each line of A sits in B, e.g. "0:2,1:4". Default identity.
        #[arg(long)]
        placement: Option<String>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Gate and depth counts for QX2/QX4 under both strategies, without and
    /// with placement search.
    Stats {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exchange two lines from a gate index on, relabeling the outputs.
    Relabel {
        file: PathBuf,
        #[arg(long)]
        at: usize,
        /// Lines to exchange, e.g. "1,2".
        #[arg(long)]
        swap: String,
        /// Relabel only; do not insert the SWAP that keeps the circuit's meaning.
        #[arg(long)]
        bare: bool,
        /// Run the reduction pass on the result.
        #[arg(long)]
        reduce: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn mapping(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_MAPPING,
            message: message.into(),
        }
    }
}

/// Runs the CLI; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = stream.write_all(text.as_bytes());
            return code;
        }
    };
    let mut buf = String::new();
    let result = dispatch(cli.command, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut String) -> Result<i32, Failure> {
    match cmd {
        Command::Map {
            file,
            arch,
            strategy,
            out: dest,
        } => {
            let c = read_circuit(&file)?;
            let map = resolve_arch(&arch)?;
            let mapped =
                map_circuit(&c, &map, strategy).map_err(|e| Failure::mapping(e.to_string()))?;
            let report = cost(&mapped);
            match dest {
                Some(path) => {
                    write_file(&path, &emit_qasm(&mapped))?;
                    let _ = writeln!(out, "{report}");
                }
                None => {
                    out.push_str(&emit_qasm(&mapped));
                    let _ = writeln!(out, "// {report}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Optimize {
            file,
            arch,
            strategy,
            cost: order,
            no_search,
            basic_rules,
            out: dest,
            json,
        } => {
            let c = read_circuit(&file)?;
            let map = resolve_arch(&arch)?;
            let opts = OptimizeOptions::new(strategy)
                .search(!no_search)
                .order(order)
                .extended_rules(!basic_rules);
            let r = optimize(&c, &map, &opts).map_err(|e| Failure::mapping(e.to_string()))?;
            if let Some(path) = &dest {
                write_file(path, &emit_qasm(&r.circuit))?;
            }
            let report = OptimizeReport {
                name: circuit_name(&file),
                lines: c.lines(),
                arch,
                strategy: strategy.name().to_string(),
                gates: r.cost.gate_count,
                depth: r.cost.depth,
                placement: r.placement.as_slice().to_vec(),
                searched: !no_search,
            };
            if json {
                out.push_str(&serde_json::to_string_pretty(&report).expect("serializable"));
                out.push('\n');
            } else {
                let _ = writeln!(out, "name: {}", report.name);
                let _ = writeln!(out, "arch: {}", report.arch);
                let _ = writeln!(out, "strategy: {}", report.strategy);
                let _ = writeln!(out, "placement: {}", r.placement);
                let _ = writeln!(out, "gates: {}", report.gates);
                let _ = writeln!(out, "depth: {}", report.depth);
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            a,
            b,
            placement,
            tol,
        } => {
            let ca = read_circuit(&a)?;
            let cb = read_circuit(&b)?;
            let p = match placement {
                Some(text) => parse_placement(&text, ca.lines())?,
                None => LinePlacement::identity(ca.lines()),
            };
            let same = equivalent(&ca, &cb, &p, tol).map_err(|e| Failure::usage(e.to_string()))?;
            if same {
                out.push_str("equivalent\n");
                Ok(EXIT_OK)
            } else {
                out.push_str("not equivalent\n");
                Ok(EXIT_NOT_EQUIVALENT)
            }
        }
        Command::Stats { file, json } => {
            let c = read_circuit(&file)?;
            let rows = stats_rows(&circuit_name(&file), &c)?;
            if json {
                out.push_str(&serde_json::to_string_pretty(&rows).expect("serializable"));
                out.push('\n');
            } else {
                out.push_str(&format_stats(&rows));
            }
            Ok(EXIT_OK)
        }
        Command::Relabel {
            file,
            at,
            swap,
            bare,
            reduce: run_reduce,
            out: dest,
        } => {
            let c = read_circuit(&file)?;
            let (q1, q2) = parse_pair(&swap)?;
            let relabeled = if bare {
                relabel_tail(&c, at, q1, q2)
            } else {
                exchange_lines(&c, at, q1, q2)
            }
            .map_err(|e| Failure::usage(e.to_string()))?;
            let result = if run_reduce {
                reduce(&relabeled, true)
            } else {
                relabeled
            };
            match dest {
                Some(path) => {
                    write_file(&path, &emit_qasm(&result))?;
                    let _ = writeln!(out, "{}", cost(&result));
                }
                None => out.push_str(&emit_qasm(&result)),
            }
            Ok(EXIT_OK)
        }
    }
}

#[derive(Debug, Serialize)]
struct OptimizeReport {
    name: String,
    lines: usize,
    arch: String,
    strategy: String,
    gates: usize,
    depth: usize,
    placement: Vec<usize>,
    searched: bool,
}

/// One row of the comparison table: gate count and depth for each
/// architecture and strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatsRow {
    pub name: String,
    pub lines: usize,
    pub qx2_swap: CostReport,
    pub qx4_swap: CostReport,
    pub qx2_template: CostReport,
    pub qx4_template: CostReport,
    pub searched: bool,
}

impl StatsRow {
    pub fn costs(&self) -> [CostReport; 4] {
        [
            self.qx2_swap,
            self.qx4_swap,
            self.qx2_template,
            self.qx4_template,
        ]
    }
}

/// The unsearched and the searched row for `c`.
pub fn stats(name: &str, c: &Circuit) -> Result<[StatsRow; 2], String> {
    let qx2 = builtin_map("qx2").expect("builtin");
    let qx4 = builtin_map("qx4").expect("builtin");
    let row = |searched: bool| -> Result<StatsRow, String> {
        let run = |map: &CouplingMap, s: MappingStrategy| {
            optimize(c, map, &OptimizeOptions::new(s).search(searched))
                .map(|r| r.cost)
                .map_err(|e| e.to_string())
        };
        Ok(StatsRow {
            name: name.to_string(),
            lines: c.lines(),
            qx2_swap: run(&qx2, MappingStrategy::Swap)?,
            qx4_swap: run(&qx4, MappingStrategy::Swap)?,
            qx2_template: run(&qx2, MappingStrategy::Template)?,
            qx4_template: run(&qx4, MappingStrategy::Template)?,
            searched,
        })
    };
    Ok([row(false)?, row(true)?])
}

fn stats_rows(name: &str, c: &Circuit) -> Result<[StatsRow; 2], Failure> {
    stats(name, c).map_err(Failure::mapping)
}

fn format_stats(rows: &[StatsRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<16} {:>5} | {:>5} {:>5} {:>5} {:>5} | {:>5} {:>5} {:>5} {:>5}",
        "", "", "swap", "", "", "", "template", "", "", ""
    );
    let _ = writeln!(
        s,
        "{:<16} {:>5} | {:>5} {:>5} {:>5} {:>5} | {:>5} {:>5} {:>5} {:>5}",
        "name", "lines", "QX2", "Dep.", "QX4", "Dep.", "QX2", "Dep.", "QX4", "Dep."
    );
    for r in rows {
        let name = if r.searched {
            "  (searched)"
        } else {
            r.name.as_str()
        };
        let lines = if r.searched {
            String::new()
        } else {
            r.lines.to_string()
        };
        let [a, b, c, d] = r.costs();
        let _ = writeln!(
            s,
            "{:<16} {:>5} | {:>5} {:>5} {:>5} {:>5} | {:>5} {:>5} {:>5} {:>5}",
            name,
            lines,
            a.gate_count,
            a.depth,
            b.gate_count,
            b.depth,
            c.gate_count,
            c.depth,
            d.gate_count,
            d.depth
        );
    }
    s
}

fn circuit_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_qasm(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn resolve_arch(arch: &str) -> Result<CouplingMap, Failure> {
    if let Ok(map) = builtin_map(arch) {
        return Ok(map);
    }
    let path = Path::new(arch);
    if !path.exists() {
        return Err(Failure::usage(format!(
            "unknown architecture {arch:?}: expected qx2, qx4 or a coupling JSON file"
        )));
    }
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{arch}: {e}")))?;
    parse_coupling_file(&text).map_err(|e| Failure::usage(format!("{arch}: {e}")))
}

fn parse_pair(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::usage(format!("expected two lines like \"1,2\", got {text:?}"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

/// `"0:2,1:4"`; every logical line must appear exactly once.
fn parse_placement(text: &str, lines: usize) -> Result<LinePlacement, Failure> {
    let bad = |why: &str| Failure::usage(format!("invalid placement {text:?}: {why}"));
    let mut mapping = vec![None; lines];
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (l, p) = item
            .split_once(':')
            .ok_or_else(|| bad("expected logical:physical"))?;
        let l: usize = l
            .trim()
            .parse()
            .map_err(|_| bad("logical line is not a number"))?;
        let p: usize = p
            .trim()
            .parse()
            .map_err(|_| bad("physical qubit is not a number"))?;
        let slot = mapping
            .get_mut(l)
            .ok_or_else(|| bad("logical line out of range"))?;
        if slot.replace(p).is_some() {
            return Err(bad("logical line given twice"));
        }
    }
    let mapping = mapping
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| bad("every logical line needs a physical qubit"))?;
    LinePlacement::new(mapping).map_err(|e| bad(&e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn placement_syntax() {
        let p = parse_placement("0:2, 1:4", 2).unwrap();
        assert_eq!(p.as_slice(), &[2, 4]);
        let p = parse_placement("1:0,0:1", 2).unwrap();
        assert_eq!(p.as_slice(), &[1, 0]);
        assert!(parse_placement("0:1", 2).is_err());
        assert!(parse_placement("0:1,1:1", 2).is_err());
        assert!(parse_placement("0:1,0:2", 2).is_err());
        assert!(parse_placement("2:1", 2).is_err());
        assert!(parse_placement("a:b", 1).is_err());
    }

    #[test]
    fn pair_syntax() {
        assert_eq!(parse_pair("1,2").ok(), Some((1, 2)));
        assert!(parse_pair("1").is_err());
        assert!(parse_pair("x,2").is_err());
    }
}

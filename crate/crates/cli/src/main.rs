//! `rootwork`: analyze reduction systems and handle graphs from the command
//! line.
//!
//! Exit status: 0 when the analysis succeeds and the property holds, 1 when a
//! property fails (no complexity function, EE fails, several roots, a green
//! vertex admits no cut, an inadmissible colour profile), 2 on bad input.

mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use rootwork::format::{parse_handle_graph, parse_system, write_handle_graph, write_system};
use rootwork::handle::NamedHandleGraph;
use rootwork::{
    check_ee, edge_equivalence, find_counterexample, full_cut, gen, roots, synthesize_complexity,
    to_reduction_system, unique_root, verify_theorem, CfVerdict, Color, ComplexityError, CutMove,
    EeVerdict, ReductionSystem, RootError,
};

use report::Format;

#[derive(Parser, Debug)]
#[command(
    name = "rootwork",
    version,
    about = "Roots of oriented reduction graphs"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check for a complexity function (CF) and edge equivalence (EE).
    Check { file: PathBuf },
    /// Print the root of a vertex, or its full root set.
    Root { file: PathBuf, vertex: String },
    /// Compute CF, EE and the roots of every vertex.
    Verify { file: PathBuf },
    /// Find the least vertex with more than one root.
    Counterexample { file: PathBuf },
    /// Show the link classes at a green vertex and cut off one class.
    Cut {
        file: PathBuf,
        green: String,
        /// Index of the class to split off.
        #[arg(long, default_value_t = 0)]
        class: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut a handle graph until no green vertex admits a cut.
    Fullcut {
        file: PathBuf,
        /// Also build the cutting system (at most this many graphs) and check
        /// that its unique root agrees.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an intersection profile of 0 to 3 colours.
    ColorCheck { colors: Vec<u64> },
    /// Write a demo or random system.
    Gen {
        kind: GenKind,
        /// Start value for `factor`.
        #[arg(long, default_value_t = 12)]
        n: u64,
        /// Vertex count for `random`.
        #[arg(long, default_value_t = 7)]
        vertices: usize,
        /// Edge probability for `random`.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    Diamond,
    Fork,
    Factor,
    HandleDemo,
    EeFailure,
    Random,
}

/// Outcome of a command that ran to completion.
struct Run {
    output: String,
    holds: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(run) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(run.output.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if run.holds { 0 } else { 1 })
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_system(path: &Path) -> Result<ReductionSystem> {
    parse_system(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_handle(path: &Path) -> Result<NamedHandleGraph> {
    parse_handle_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Writes `text` to `out` via a temporary sibling file, or returns it for
/// stdout.
fn emit(text: String, out: Option<&Path>) -> Result<String> {
    match out {
        None => Ok(text),
        Some(path) => {
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, &text).with_context(|| format!("writing {}", tmp.display()))?;
            fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
            Ok(format!("wrote {}\n", path.display()))
        }
    }
}

fn run(cli: &Cli) -> Result<Run> {
    let fmt = cli.format;
    match &cli.command {
        Command::Check { file } => {
            let sys = load_system(file)?;
            let (cf, ee) = match synthesize_complexity(&sys) {
                Ok(map) => (CfVerdict::Holds(map), Some(check_ee(&sys)?)),
                Err(ComplexityError::CycleDetected(c)) => (CfVerdict::Fails(c), None),
                Err(other) => return Err(other.into()),
            };
            let mut output = report::cf_block(&sys, &cf, fmt);
            output.push_str(&report::ee_line(&sys, ee.as_ref(), fmt));
            output.push('\n');
            let holds = cf.holds() && ee.as_ref().is_some_and(EeVerdict::holds);
            Ok(Run { output, holds })
        }
        Command::Root { file, vertex } => {
            let sys = load_system(file)?;
            let v = sys.lookup(vertex)?;
            match roots(&sys, v) {
                Ok(set) => Ok(Run {
                    output: format!("{}\n", report::roots(&sys, set.roots(), fmt)),
                    holds: set.single().is_some(),
                }),
                Err(RootError::CyclicSystem(c)) => Ok(Run {
                    output: format!("no root: cycle {} is reachable\n", report::cycle(&sys, &c)),
                    holds: false,
                }),
                Err(other) => Err(other.into()),
            }
        }
        Command::Verify { file } => {
            let sys = load_system(file)?;
            let rep = verify_theorem(&sys);
            let holds = rep.cf.holds()
                && rep.ee.as_ref().is_some_and(EeVerdict::holds)
                && rep.all_unique()
                && rep.violation.is_none();
            Ok(Run {
                output: report::verify(&sys, &rep, fmt),
                holds,
            })
        }
        Command::Counterexample { file } => {
            let sys = load_system(file)?;
            match find_counterexample(&sys) {
                Ok(None) => Ok(Run {
                    output: "none\n".into(),
                    holds: true,
                }),
                Ok(Some((v, set))) => {
                    let classes = edge_equivalence(&sys, v)?.class_count();
                    let output = match fmt {
                        Format::Text => format!(
                            "{}: {} ({classes} edge classes)\n",
                            sys.name(v),
                            report::set(&sys, set.roots())
                        ),
                        Format::Machine => format!(
                            "{}\t{}\t{classes}\n",
                            sys.name(v),
                            report::roots(&sys, set.roots(), fmt)
                        ),
                    };
                    Ok(Run {
                        output,
                        holds: false,
                    })
                }
                Err(RootError::CyclicSystem(c)) => Ok(Run {
                    output: format!("undefined: cycle {}\n", report::cycle(&sys, &c)),
                    holds: false,
                }),
                Err(other) => Err(other.into()),
            }
        }
        Command::Cut {
            file,
            green,
            class,
            out,
        } => {
            let named = load_handle(file)?;
            let x = match named.greens.get(green.as_str()) {
                Some(Some(x)) => *x,
                Some(None) => bail!("green `{green}` has no links and was removed as trivial"),
                None => bail!("`{green}` is not a green vertex"),
            };
            let g = &named.graph;
            let red_names: Vec<&str> = {
                let mut by_index = vec![""; g.red_count()];
                for (name, &i) in &named.reds {
                    by_index[i] = name;
                }
                by_index
            };
            let links = g.links(x)?;
            let classes = rootwork::edge_classes_at(g, x)?;
            let mut output = format!("# {} link class(es) at {green}\n", classes.len());
            for (i, c) in classes.iter().enumerate() {
                let reds: Vec<&str> = c.iter().map(|&p| red_names[links[p]]).collect();
                output.push_str(&format!("# class {i}: {}\n", reds.join(" ")));
            }
            if classes.len() < 2 {
                output.push_str(&format!("# {green} admits no cut\n"));
                return Ok(Run {
                    output,
                    holds: false,
                });
            }
            let part = classes
                .get(*class)
                .ok_or_else(|| anyhow!("class {class} out of range"))?
                .clone();
            let result = rootwork::cut(g, &CutMove { at: x, part })?;
            output.push_str(&write_handle_graph(&result));
            Ok(Run {
                output: emit(output, out.as_deref())?,
                holds: true,
            })
        }
        Command::Fullcut { file, bound, out } => {
            let named = load_handle(file)?;
            let result = full_cut(&named.graph);
            let mut output = write_handle_graph(&result);
            let mut holds = true;
            if let Some(bound) = bound {
                let cs = to_reduction_system(&named.graph, *bound)?;
                let ee = check_ee(&cs.system)?.holds();
                let agrees = unique_root(&cs.system, cs.start)
                    .map(|r| *cs.graph(r) == result)
                    .unwrap_or(false);
                holds = ee && agrees;
                output.push_str(&format!(
                    "# cutting system: {} graphs, {} moves, ee {}, unique root {}\n",
                    cs.system.vertex_count(),
                    cs.system.edge_count(),
                    if ee { "holds" } else { "fails" },
                    if agrees { "agrees" } else { "DISAGREES" },
                ));
            }
            Ok(Run {
                output: emit(output, out.as_deref())?,
                holds,
            })
        }
        Command::ColorCheck { colors } => {
            let colors = colors
                .iter()
                .map(|&c| Color::new(c))
                .collect::<Result<Vec<_>, _>>()?;
            let ok = rootwork::profile_admissible(&colors)?;
            Ok(Run {
                output: if ok { "admissible\n" } else { "inadmissible\n" }.into(),
                holds: ok,
            })
        }
        Command::Gen {
            kind,
            n,
            vertices,
            p,
            seed,
            out,
        } => {
            let text = match kind {
                GenKind::Diamond => write_system(&gen::diamond()),
                GenKind::Fork => write_system(&gen::fork()),
                GenKind::EeFailure => write_system(&gen::ee_failure()),
                GenKind::HandleDemo => write_handle_graph(&gen::handle_demo()),
                GenKind::Factor => {
                    if *n < 1 {
                        bail!("factor systems need n >= 1");
                    }
                    write_system(&gen::factor_system(*n).system)
                }
                GenKind::Random => {
                    if !(0.0..=1.0).contains(p) {
                        bail!("edge probability {p} is outside [0, 1]");
                    }
                    write_system(&gen::random_dag(*vertices, *p, *seed))
                }
            };
            Ok(Run {
                output: emit(text, out.as_deref())?,
                holds: true,
            })
        }
    }
}

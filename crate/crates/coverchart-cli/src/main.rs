//! Command-line surface for the coverchart library: chart validation,
//! cover invariants, word reduction, dihedral-to-permutation compilation,
//! orientation lifting, Fox colorings, chart moves, movies, SVG rendering,
//! and the built-in certificate suite.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use coverchart::chart::{slice_permutation, Chart};
use coverchart::compile::{build_planar_cover_chart, compile_chart, resolve_all_branches};
use coverchart::cover::{cover_invariants, sheet_trace_oracle};
use coverchart::dihedral::parse_element;
use coverchart::knot::{fox_colorings, parse_diagram, wirtinger_holds, DihedralColoring};
use coverchart::movie::{
    build_cyclic_movie, build_dihedral_movie, replay_t25_fixture, verify_movie, ChartMovie,
};
use coverchart::moves::{
    apply_move, corollary1_certificate, lemma1_certificate, lemma2_certificate, search_equivalence,
    verify_sequence, MoveInstance,
};
use coverchart::orient::attempt_orientation;
use coverchart::perm::{parse_word, reduce_word, Permutation};
use coverchart::render::render_chart;

#[derive(Parser)]
#[command(name = "coverchart", version, about = "Charts for branched covers of spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate chart files; exits nonzero on the first invalid chart.
    Validate { files: Vec<PathBuf> },
    /// Covering-surface invariants of permutation (or dihedral) charts.
    Invariants {
        files: Vec<PathBuf>,
        /// Emit the full JSON report.
        #[arg(long)]
        json: bool,
        /// Also run the sheet-tracing oracle and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Reduce a transposition word to its canonical reduced form.
    Reduce {
        /// Degree n of the symmetric group.
        #[arg(long)]
        n: usize,
        /// The word, e.g. "[2,1,2]".
        word: String,
    },
    /// Compile a dihedral chart into a permutation chart.
    Compile {
        file: PathBuf,
        /// Resolve all branch vertices into simple black vertices.
        #[arg(long)]
        resolve: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Orientation lifting: report the minimal node count.
    Orient {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Fox colorings of knot diagrams.
    Color {
        #[command(subcommand)]
        cmd: ColorCmd,
    },
    /// Apply, verify, or search for chart move sequences.
    Moves {
        #[command(subcommand)]
        cmd: MovesCmd,
    },
    /// Build and verify chart movies.
    Movie {
        #[command(subcommand)]
        cmd: MovieCmd,
    },
    /// Render a chart to SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in certificate suite and print one line per check.
    Lemmas,
    /// Build the saw-tooth planar cover chart from dihedral colors.
    Planar {
        /// Group parameter n (odd).
        #[arg(long)]
        n: usize,
        /// Colors such as "r", "x^2", "[3]"; their product must be 1.
        colors: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ColorCmd {
    /// List all Fox colorings mod n.
    List {
        #[arg(long)]
        n: usize,
        /// Diagram file or inline text like "braid s=2: 1 1 1 1 1".
        diagram: String,
        #[arg(long)]
        json: bool,
    },
    /// Check one coloring, given as comma-separated arc colors.
    Check {
        #[arg(long)]
        n: usize,
        diagram: String,
        colors: String,
    },
}

#[derive(Subcommand)]
enum MovesCmd {
    /// Apply a JSON move list to a chart.
    Apply {
        chart: PathBuf,
        moves: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify a move list, printing the failing index if any.
    Verify { chart: PathBuf, moves: PathBuf },
    /// Search for a move sequence between two charts.
    Search {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MovieCmd {
    /// Cyclic cover movie of a braid closure.
    Cyclic {
        #[arg(long)]
        n: usize,
        diagram: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dihedral cover movie of a Fox-colored braid closure.
    Dihedral {
        #[arg(long)]
        n: usize,
        diagram: String,
        /// Index into the coloring list (default: first nontrivial).
        #[arg(long)]
        coloring: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify a movie file.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Replay the committed 21-step torus-knot movie.
    ReplayT25 {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_chart(path: &Path) -> Result<Chart> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Chart::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_diagram(arg: &str) -> Result<coverchart::KnotDiagram> {
    let text = if Path::new(arg).exists() {
        fs::read_to_string(arg)?
    } else {
        arg.to_string()
    };
    Ok(parse_diagram(text.trim())?)
}

fn write_or_print(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn invariant_line(inv: &coverchart::CoverInvariants) -> String {
    format!(
        "components={}, euler={}, branch_points={}",
        inv.components(),
        inv.euler_total,
        inv.branch_count
    )
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { files } => {
            let mut all_ok = true;
            for file in &files {
                let chart = read_chart(file)?;
                match chart.validate() {
                    Ok(()) => println!("{}: ok", file.display()),
                    Err(violations) => {
                        all_ok = false;
                        println!("{}: invalid", file.display());
                        for v in violations {
                            println!("  {v}");
                        }
                    }
                }
            }
            Ok(all_ok)
        }
        Command::Invariants { files, json, oracle } => {
            let mut ok = true;
            for file in &files {
                let chart = read_chart(file)?;
                let chart = match chart.alphabet {
                    coverchart::Alphabet::Permutation => chart,
                    coverchart::Alphabet::Dihedral => compile_chart(&chart)?,
                };
                let inv = cover_invariants(&chart)?;
                if oracle {
                    let traced = sheet_trace_oracle(&chart)?;
                    if traced != inv {
                        ok = false;
                        println!("{}: ORACLE MISMATCH", file.display());
                        continue;
                    }
                }
                if json {
                    println!("{}", serde_json::to_string(&inv)?);
                } else {
                    println!("{}: {}", file.display(), invariant_line(&inv));
                }
            }
            Ok(ok)
        }
        Command::Reduce { n, word } => {
            let w = parse_word(n, &word)?;
            let red = reduce_word(&w);
            println!("{red}  (evaluates to {})", red.evaluate());
            Ok(true)
        }
        Command::Compile { file, resolve, output } => {
            let chart = read_chart(&file)?;
            let mut compiled = compile_chart(&chart)?;
            if resolve {
                compiled = resolve_all_branches(&compiled)?;
            }
            write_or_print(output.as_deref(), &compiled.to_json_pretty())?;
            Ok(true)
        }
        Command::Orient { file, budget, json } => {
            let chart = read_chart(&file)?;
            let report = attempt_orientation(&chart, budget)?;
            if json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                println!(
                    "nodes={} edges={} whites={} exhaustive={}",
                    report.nodes, report.edges, report.whites, report.exhaustive
                );
            }
            Ok(true)
        }
        Command::Color { cmd } => match cmd {
            ColorCmd::List { n, diagram, json } => {
                let d = read_diagram(&diagram)?;
                let colorings = fox_colorings(&d, n)?;
                if json {
                    println!("{}", serde_json::to_string(&colorings)?);
                } else {
                    println!(
                        "{} colorings mod {n} ({} trivial)",
                        colorings.len(),
                        colorings.iter().filter(|c| c.trivial).count()
                    );
                    for c in &colorings {
                        let tags: Vec<String> =
                            c.arc_colors.iter().map(|j| j.to_string()).collect();
                        println!("  [{}]{}", tags.join(","), if c.trivial { " trivial" } else { "" });
                    }
                }
                Ok(true)
            }
            ColorCmd::Check { n, diagram, colors } => {
                let d = read_diagram(&diagram)?;
                let arc_colors: Result<Vec<usize>, _> =
                    colors.split(',').map(|t| t.trim().parse()).collect();
                let arc_colors = arc_colors.context("parsing colors")?;
                if arc_colors.len() != d.arcs {
                    bail!("expected {} colors, got {}", d.arcs, arc_colors.len());
                }
                let trivial = arc_colors.iter().all(|&c| c == arc_colors[0]);
                let coloring = DihedralColoring { n, arc_colors, trivial };
                let ok = wirtinger_holds(&d, &coloring);
                println!("{}", if ok { "valid coloring" } else { "NOT a coloring" });
                Ok(ok)
            }
        },
        Command::Moves { cmd } => match cmd {
            MovesCmd::Apply { chart, moves, output } => {
                let mut c = read_chart(&chart)?;
                let ms: Vec<MoveInstance> = serde_json::from_str(&fs::read_to_string(&moves)?)?;
                for m in &ms {
                    c = apply_move(&c, m)?;
                }
                write_or_print(output.as_deref(), &c.to_json_pretty())?;
                Ok(true)
            }
            MovesCmd::Verify { chart, moves } => {
                let c = read_chart(&chart)?;
                let ms: Vec<MoveInstance> = serde_json::from_str(&fs::read_to_string(&moves)?)?;
                match verify_sequence(&c, &ms) {
                    Ok(end) => {
                        println!("ok: {} moves, final chart has {} events", ms.len(), end.events.len());
                        Ok(true)
                    }
                    Err(e) => {
                        println!("failed at move {}: {}", e.index, e.source);
                        Ok(false)
                    }
                }
            }
            MovesCmd::Search { a, b, budget, output } => {
                let ca = read_chart(&a)?;
                let cb = read_chart(&b)?;
                let outcome = search_equivalence(&ca, &cb, budget);
                match &outcome.moves {
                    Some(ms) => {
                        println!("found {} moves after {} expansions", ms.len(), outcome.expanded);
                        if let Some(path) = output {
                            fs::write(&path, serde_json::to_string_pretty(ms)?)?;
                            eprintln!("wrote {}", path.display());
                        }
                        Ok(true)
                    }
                    None => {
                        println!("not found within budget ({} expansions); inconclusive", outcome.expanded);
                        Ok(false)
                    }
                }
            }
        },
        Command::Movie { cmd } => match cmd {
            MovieCmd::Cyclic { n, diagram, output } => {
                let d = read_diagram(&diagram)?;
                let movie = build_cyclic_movie(&d, n)?;
                write_or_print(output.as_deref(), &movie.to_json_pretty())?;
                Ok(true)
            }
            MovieCmd::Dihedral { n, diagram, coloring, output } => {
                let d = read_diagram(&diagram)?;
                let colorings = fox_colorings(&d, n)?;
                let chosen = match coloring {
                    Some(i) => colorings.get(i).cloned().context("coloring index out of range")?,
                    None => colorings
                        .iter()
                        .find(|c| !c.trivial)
                        .or(colorings.first())
                        .cloned()
                        .context("no colorings")?,
                };
                let movie = build_dihedral_movie(&d, &chosen)?;
                eprintln!("status: {:?}", movie.status);
                write_or_print(output.as_deref(), &movie.to_json_pretty())?;
                Ok(true)
            }
            MovieCmd::Verify { file, json } => {
                let movie = ChartMovie::from_json(&fs::read_to_string(&file)?)?;
                let report = verify_movie(&movie);
                if json {
                    println!("{}", serde_json::to_string(&report)?);
                } else {
                    println!(
                        "frames={} transitions={} ok={}",
                        movie.frames.len(),
                        movie.transitions.len(),
                        report.ok
                    );
                    for (i, t) in report.transitions.iter().enumerate() {
                        if !t.certified || !t.handles_consistent {
                            println!(
                                "  transition {i}: certified={} handles_ok={} {}",
                                t.certified,
                                t.handles_consistent,
                                t.detail.clone().unwrap_or_default()
                            );
                        }
                    }
                }
                Ok(report.ok)
            }
            MovieCmd::ReplayT25 { output } => {
                let movie = replay_t25_fixture();
                let report = verify_movie(&movie);
                println!(
                    "frames={} content={} ok={}",
                    movie.frames.len(),
                    movie.content_frames().len(),
                    report.ok
                );
                if let Some(path) = output {
                    fs::write(&path, movie.to_json_pretty())?;
                    eprintln!("wrote {}", path.display());
                }
                Ok(report.ok)
            }
        },
        Command::Render { file, output } => {
            let chart = read_chart(&file)?;
            let name = file.file_stem().and_then(|s| s.to_str()).unwrap_or("chart");
            let svg = render_chart(&chart, name)?;
            write_or_print(output.as_deref(), &svg)?;
            Ok(true)
        }
        Command::Lemmas => Ok(run_lemma_suite()),
        Command::Planar { n, colors, output } => {
            let parsed: Result<Vec<_>, _> =
                colors.iter().map(|c| parse_element(n, c)).collect();
            let chart = build_planar_cover_chart(n, &parsed?)?;
            write_or_print(output.as_deref(), &chart.to_json_pretty())?;
            Ok(true)
        }
    }
}

/// The built-in suite: lemma certificates plus the 16-letter factorization
/// check. Prints one pass/fail line per item.
fn run_lemma_suite() -> bool {
    let mut all = true;
    let mut check = |name: &str, ok: bool| {
        println!("{name}: {}", if ok { "pass" } else { "FAIL" });
        all &= ok;
    };
    let l1 = lemma1_certificate();
    check("lemma 1 certificate", l1.verify().is_ok());
    let c1 = corollary1_certificate();
    check("corollary 1 certificate", c1.verify().is_ok());
    let l2 = lemma2_certificate();
    check("lemma 2 certificate", l2.verify().is_ok());

    // The displayed factorization chain: six lines, all evaluating to
    // (13524), ending in a six-letter word.
    let lines: [(&str, Vec<usize>); 6] = [
        ("16-letter line", vec![4, 1, 2, 1, 4, 3, 2, 1, 4, 1, 2, 1, 1, 2, 3, 4]),
        ("12-letter line", vec![1, 2, 1, 4, 4, 3, 2, 4, 1, 1, 3, 4]),
        ("8-letter line a", vec![1, 2, 1, 3, 2, 4, 3, 4]),
        ("8-letter line b", vec![2, 1, 2, 3, 2, 3, 4, 3]),
        ("8-letter line c", vec![2, 1, 3, 2, 3, 3, 4, 3]),
        ("6-letter line", vec![2, 1, 3, 2, 4, 3]),
    ];
    let target: Permutation = coverchart::perm::parse_permutation(5, "(1 3 5 2 4)").unwrap();
    for (name, display) in &lines {
        let word: Vec<coverchart::Letter> = display
            .iter()
            .rev()
            .map(|&j| coverchart::Letter::T(j))
            .collect();
        check(name, slice_permutation(5, &word) == target);
    }
    let sixteen: Vec<usize> = lines[0].1.iter().rev().copied().collect();
    let reduced = reduce_word(&coverchart::TranspositionWord::new(5, sixteen).unwrap());
    check("reduction to length 6", reduced.len() == 6 && reduced.evaluate() == target);
    all
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

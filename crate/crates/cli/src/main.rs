use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::{debug, warn};
use veering::report::{to_json, Report, StructureReport};
use veering::taut::Colour;
use veering::{
    build_q_system, census_dir, orient, parse_tgl, random_word, report_text, to_tgl,
    veering_report, MonodromyWord, ReportOptions, TautAngleStructure,
};

/// Taut and veering ideal triangulations.
#[derive(Parser)]
#[command(name = "veer", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, orient and check the vertex links of a triangulation.
    Validate {
        /// TGL file, or `-` for stdin.
        file: PathBuf,
    },
    /// Taut angle structures with their veering, taut and strict verdicts.
    ///
    /// Exits with 1 when the triangulation has no strict angle structure.
    Report {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
        /// Show only the structure with this index.
        #[arg(long)]
        structure: Option<usize>,
        /// Label used in the output; defaults to the file stem.
        #[arg(long)]
        name: Option<String>,
    },
    /// Totals over every `.tgl` file in a directory.
    Census {
        dir: PathBuf,
        #[command(flatten)]
        out: Output,
        /// Also solve the strict angle structure LP and run the extra checks.
        #[arg(long)]
        full: bool,
    },
    /// Layered triangulation of a once-punctured torus bundle.
    ///
    /// Prints the triangulation followed by the pipeline verdicts. Exits with
    /// 1 if any verdict fails.
    Ptb {
        /// Monodromy word over R and L, e.g. `RRL`.
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        word: Option<String>,
        /// Use a random word of this length instead.
        #[arg(long, value_name = "LEN")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Print the quad matching matrix as a tab-separated grid.
    Qmatrix { file: PathBuf },
}

#[derive(Args)]
struct Output {
    /// Machine-readable output with sorted keys.
    #[arg(long)]
    json: bool,
}

/// Bad input: unreadable file, syntax error, invalid triangulation or word.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T, E: Into<anyhow::Error>>(r: Result<T, E>) -> Result<T> {
    r.map_err(|e| InputError(e.into()).into())
}

fn read_input(file: &Path) -> Result<String> {
    if file == Path::new("-") {
        let mut s = String::new();
        input(io::stdin().read_to_string(&mut s).context("reading stdin"))?;
        return Ok(s);
    }
    input(fs::read_to_string(file).with_context(|| format!("reading {}", file.display())))
}

fn display_name(file: &Path) -> String {
    if file == Path::new("-") {
        return "stdin".into();
    }
    file.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| file.display().to_string())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt(b: Option<bool>) -> &'static str {
    b.map_or("-", yes)
}

fn colours(c: &Option<Vec<Colour>>) -> String {
    c.as_ref()
        .map(|v| v.iter().map(|c| c.letter()).collect())
        .unwrap_or_else(|| "-".into())
}

fn print_structure_detail(s: &StructureReport) {
    println!("structure {}: {}", s.index, s.taut_angle.join(" | "));
    println!(
        "  veering: {}  taut: {}  strict: {}",
        yes(s.veering),
        yes(s.taut),
        opt(s.strict)
    );
    println!(
        "  stacking order: {}  diagonal colours: {}  vertical solution: {}",
        opt(s.stacking_order),
        opt(s.diagonal_colours),
        opt(s.vertical_solution)
    );
    for (e, [a, b]) in s.one_sided_degrees.iter().enumerate() {
        let c = s.colours.as_ref().map_or('-', |v| v[e].letter());
        println!("  e{e}: colour {c}, one-sided degrees {a} {b}");
    }
    for f in &s.flags {
        println!("  note: {f}");
    }
}

fn print_report(r: &Report) {
    let degrees: Vec<String> = r.edge_degrees.iter().map(ToString::to_string).collect();
    println!(
        "{}: {} tetrahedra, {} edges, degrees {}",
        r.name,
        r.tet_count,
        r.edge_degrees.len(),
        degrees.join(" ")
    );
    if !r.relabelled.is_empty() {
        println!("oriented by relabelling tetrahedra {:?}", r.relabelled);
    }
    match &r.strict_witness {
        Some(w) => println!("strict angle structure: yes, smallest angle {} pi", w.slack),
        None => println!("strict angle structure: no"),
    }
    for w in &r.warnings {
        println!("warning: {w}");
    }
    if !r.structures.is_empty() {
        println!(
            "{:>3}  {:<8} {:<5} {:<10} taut angle structure",
            "#", "veering", "taut", "colours"
        );
        for s in &r.structures {
            println!(
                "{:>3}  {:<8} {:<5} {:<10} {}",
                s.index,
                yes(s.veering),
                yes(s.taut),
                colours(&s.colours),
                s.taut_angle.join(" | ")
            );
        }
    }
    let c = &r.counts;
    println!(
        "{} taut angle structures, {} taut, {} veering, {} both",
        c.taut_angle_structures, c.with_taut, c.with_veering, c.taut_and_veering
    );
}

fn validate(file: &Path) -> Result<ExitCode> {
    let text = read_input(file)?;
    let tri = input(parse_tgl(&text))?;
    let oriented = input(orient(&tri))?;
    let tri = oriented.triangulation;
    let links = tri.vertex_links();
    for l in links.iter().filter(|l| !l.is_torus()) {
        warn!(
            "vertex {} has link with Euler characteristic {}",
            l.id, l.euler_characteristic
        );
    }
    println!(
        "ok: {} tetrahedra, {} edges, vertex link Euler characteristics {:?}",
        tri.tet_count(),
        tri.edge_count(),
        links
            .iter()
            .map(|l| l.euler_characteristic)
            .collect::<Vec<_>>()
    );
    Ok(ExitCode::SUCCESS)
}

fn report(
    file: &Path,
    out: &Output,
    structure: Option<usize>,
    name: Option<String>,
) -> Result<ExitCode> {
    let text = read_input(file)?;
    let name = name.unwrap_or_else(|| display_name(file));
    let mut r = input(report_text(&name, &text, ReportOptions::default()))?;
    let strict = r.strict_witness.is_some();
    if let Some(i) = structure {
        let count = r.structures.len();
        if i >= count {
            return input(Err(anyhow::anyhow!(
                "structure {i} requested, but there are only {count}"
            )));
        }
        r.structures = vec![r.structures.swap_remove(i)];
        if out.json {
            println!("{}", to_json(&r.structures[0]));
        } else {
            print_structure_detail(&r.structures[0]);
        }
    } else if out.json {
        println!("{}", to_json(&r));
    } else {
        print_report(&r);
    }
    Ok(if strict {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn census(dir: &Path, out: &Output, full: bool) -> Result<ExitCode> {
    if !dir.is_dir() {
        return input(Err(anyhow::anyhow!("{} is not a directory", dir.display())));
    }
    let options = if full {
        ReportOptions::default()
    } else {
        ReportOptions::counts_only()
    };
    let s = input(census_dir(dir, options).with_context(|| format!("reading {}", dir.display())))?;
    if out.json {
        println!("{}", to_json(&s));
    } else {
        println!("triangulations: {}", s.triangulations);
        println!("taut angle structures: {}", s.counts.taut_angle_structures);
        println!("with a compatible taut structure: {}", s.counts.with_taut);
        println!(
            "with a compatible veering structure: {}",
            s.counts.with_veering
        );
        println!("taut and veering: {}", s.counts.taut_and_veering);
        for e in &s.errors {
            println!("skipped: {e}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn ptb(word: Option<String>, random: Option<usize>, seed: u64, out: &Output) -> Result<ExitCode> {
    let word: MonodromyWord = match (word, random) {
        (Some(w), _) => input(w.parse())?,
        (None, Some(len)) => input(random_word(len, seed))?,
        (None, None) => bail!("give a word or --random"),
    };
    debug!("word {word}");
    let (tri, taut) = veering::layered_ptb(&word);
    let r = veering_report(&word.to_string(), &tri, ReportOptions::default());
    let layered = find_layered(&r, &taut);
    let ok = layered.is_some_and(|s| {
        s.veering
            && s.strict == Some(true)
            && s.vertical_solution == Some(false)
            && s.stacking_order == Some(true)
            && s.diagonal_colours == Some(true)
            && s.one_sided_degrees.iter().all(|[a, b]| *a >= 1 && *b >= 1)
    }) && r.edge_degrees.iter().all(|&d| d >= 4);
    if out.json {
        let mut v = serde_json::to_value(&r)?;
        v["tgl"] = to_tgl(&tri).into();
        v["word"] = word.to_string().into();
        v["layered_structure"] = layered.map_or(serde_json::Value::Null, |s| s.index.into());
        v["verified"] = ok.into();
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        print!("% {word}\n{}", to_tgl(&tri));
        println!();
        print_report(&r);
        if let Some(s) = layered {
            println!("layered structure is #{}", s.index);
        }
        println!("verified: {}", yes(ok));
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn find_layered<'a>(r: &'a Report, taut: &TautAngleStructure) -> Option<&'a StructureReport> {
    let labels = taut.pair_labels();
    r.structures.iter().find(|s| s.taut_angle == labels)
}

fn qmatrix(file: &Path) -> Result<ExitCode> {
    let text = read_input(file)?;
    let tri = input(orient(&input(parse_tgl(&text))?))?.triangulation;
    print!("{}", build_q_system(&tri).to_text());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("VEER_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Report {
            file,
            out,
            structure,
            name,
        } => report(&file, &out, structure, name),
        Command::Census { dir, out, full } => census(&dir, &out, full),
        Command::Ptb {
            word,
            random,
            seed,
            out,
        } => ptb(word, random, seed, &out),
        Command::Qmatrix { file } => qmatrix(&file),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<InputError>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

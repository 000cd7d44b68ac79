//! Command-line front end.
//!
//! Every run prints a header line, then one `key=value` line per result.
//! Exit codes: 0 when every verdict is PASS or RECORDED, 1 on any FAIL,
//! 2 on usage or configuration errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::altverify::{self, Convention, EngineOptions, Recipe, VerifyOptions};
use crate::binaryfield::BinaryField;
use crate::error::Error;
use crate::perm::{alt_class_id, alt_elements, PermGroup};
use crate::sl2::{class_id, Sl2Group};
use crate::words::{image_by_enumeration, parse};
use crate::{sl2verify, tracepoly};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 271828;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "wordmap", version, about = "Verify small-image word maps in SL(2, 2^k) and Alt(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Alt(n) recipes over their degree ranges.
    VerifyAlt(VerifyAltArgs),
    /// Check the SL(2, q) construction for q in 16, 256, 65536.
    VerifySl2(VerifySl2Args),
    /// Print the trace polynomial of a word in x and y.
    TracePoly { word: String },
    /// Image of a word by full enumeration, e.g. `--group alt:5` or `--group sl2:4`.
    Image {
        word: String,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        workers: u16,
    },
    /// Describe GF(2^K).
    FieldInfo { k: u32 },
}

#[derive(Args, Debug)]
struct VerifyAltArgs {
    /// Recipe indices to run (default: all).
    #[arg(long = "recipe", num_args = 1..)]
    recipes: Vec<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    /// Compare with full enumeration wherever the size guard allows.
    #[arg(long)]
    oracle: bool,
    /// At degree 6, also run with 3-cycle and (3,3) bases widened to both classes.
    #[arg(long)]
    aut6_mode: bool,
    /// Read recipes from an INI file instead of the built-in list.
    #[arg(long)]
    recipes_file: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Append wall time to each line (makes output run-dependent).
    #[arg(long)]
    timing: bool,
    /// Commutator convention: std is a^-1 b^-1 a b, alt is a b a^-1 b^-1.
    #[arg(long, default_value = "std")]
    convention: String,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifySl2Args {
    #[arg(long = "q", num_args = 1.., default_values_t = [16u64, 256, 65536])]
    qs: Vec<u64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Line sink that tracks whether any line failed.
struct Sink {
    out: Box<dyn Write>,
    failed: bool,
}

impl Sink {
    fn open(path: Option<&PathBuf>) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(io::stdout()),
        };
        Ok(Sink { out, failed: false })
    }

    fn line(&mut self, line: &str) -> io::Result<()> {
        if line.contains("verdict=FAIL") {
            self.failed = true;
        }
        writeln!(self.out, "{line}")?;
        self.out.flush()
    }

    fn exit_code(&self) -> i32 {
        i32::from(self.failed)
    }
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::VerifyAlt(args) => verify_alt(args),
        Command::VerifySl2(args) => verify_sl2(args),
        Command::TracePoly { word } => trace_poly(&word),
        Command::Image { word, group, workers } => image(&word, &group, workers as usize),
        Command::FieldInfo { k } => field_info(k),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn load_recipes(args: &VerifyAltArgs) -> Result<Vec<Recipe>, Failure> {
    let all = match &args.recipes_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            altverify::parse_recipes(&text)?
        }
        None => altverify::recipes(),
    };
    if args.recipes.is_empty() {
        return Ok(all);
    }
    args.recipes
        .iter()
        .map(|&i| {
            all.iter()
                .find(|r| r.index == i)
                .cloned()
                .ok_or_else(|| Failure::Usage(format!("no recipe {i}")))
        })
        .collect()
}

fn verify_alt(args: VerifyAltArgs) -> Result<i32, Failure> {
    let convention: Convention = args.convention.parse()?;
    let recipes = load_recipes(&args)?;
    let engine = EngineOptions { workers: args.workers as usize, convention, heartbeat: true };
    let opts = VerifyOptions {
        engine: engine.clone(),
        n_min: args.n_min,
        n_max: args.n_max,
        aut6: args.aut6_mode,
        seed: args.seed,
        ..Default::default()
    };
    let mut sink = Sink::open(args.output.as_ref())?;
    sink.line(&format!(
        "wordmap version={VERSION} command=verify-alt seed={} convention={convention} \
         assumptions=disjoint-variables,base-image-axiom",
        args.seed
    ))?;
    for recipe in &recipes {
        for report in altverify::verify_construction(recipe, &opts)? {
            sink.line(&report.line(args.timing))?;
            if args.oracle && !report.flags.iter().any(|f| f == "aut6") {
                let cmp = altverify::compare_with_oracle(&report, recipe, &engine)?;
                sink.line(&cmp.line())?;
            }
        }
    }
    Ok(sink.exit_code())
}

fn verify_sl2(args: VerifySl2Args) -> Result<i32, Failure> {
    for &q in &args.qs {
        sl2verify::Theorem1Params::from_q(q)?;
    }
    let mut sink = Sink::open(args.output.as_ref())?;
    sink.line(&format!(
        "wordmap version={VERSION} command=verify-sl2 seed={} assumptions=none",
        args.seed
    ))?;
    for &q in &args.qs {
        let (lines, _) = sl2verify::verify_sl2_lines(q, args.seed, args.workers as usize)?;
        for l in lines {
            sink.line(&l)?;
        }
    }
    Ok(sink.exit_code())
}

fn trace_poly(word: &str) -> Result<i32, Failure> {
    let w = parse(word)?;
    println!("{}", tracepoly::trace_polynomial(&w)?);
    Ok(0)
}

fn image(word: &str, group: &str, workers: usize) -> Result<i32, Failure> {
    let w = parse(word)?;
    let (kind, param) = group
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("group `{group}` is not alt:N or sl2:Q")))?;
    let param: u64 = param
        .parse()
        .map_err(|_| Failure::Usage(format!("group `{group}` is not alt:N or sl2:Q")))?;
    let mut out = io::stdout();
    match kind {
        "alt" => {
            let n = param as usize;
            let elements = alt_elements(n)?;
            let img = image_by_enumeration(&w, &PermGroup { n }, &elements, workers, alt_class_id)?;
            writeln!(out, "image group={group} word={w} classes={}", img.len())?;
            for (c, rep) in img {
                writeln!(out, "class={c} rep={rep}")?;
            }
        }
        "sl2" => {
            let g = Sl2Group::of_size(param)?;
            let elements: Vec<_> = g.elements().collect();
            let img = image_by_enumeration(&w, &g, &elements, workers, class_id)?;
            writeln!(out, "image group={group} word={w} classes={}", img.len())?;
            for (c, rep) in img {
                writeln!(out, "class={c} order={} rep={rep}", g.element_order(&rep))?;
            }
        }
        _ => return Err(Failure::Usage(format!("group `{group}` is not alt:N or sl2:Q"))),
    }
    Ok(0)
}

fn field_info(k: u32) -> Result<i32, Failure> {
    let f = BinaryField::new(k)?;
    let g = f.generator();
    println!(
        "field degree={} size={} modulus={:#x} polynomial={} generator={} generator_order={}",
        f.degree(),
        f.size(),
        f.modulus(),
        f.modulus_poly(),
        g,
        g.element_order()?
    );
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(run(["wordmap", "--help"]), 0);
        assert_eq!(run(["wordmap", "frobnicate"]), 2);
        assert_eq!(run(["wordmap", "verify-alt", "--workers", "0"]), 2);
        assert_eq!(run(["wordmap", "verify-alt", "--recipe", "99"]), 2);
        assert_eq!(run(["wordmap", "verify-alt", "--convention", "left"]), 2);
        assert_eq!(run(["wordmap", "verify-sl2", "--q", "32"]), 2);
        assert_eq!(run(["wordmap", "trace-poly", "[x,"]), 2);
        assert_eq!(run(["wordmap", "trace-poly", "[x,z]"]), 2);
        assert_eq!(run(["wordmap", "field-info", "0"]), 2);
        assert_eq!(run(["wordmap", "field-info", "4"]), 0);
        assert_eq!(run(["wordmap", "image", "[x,y]", "--group", "alt:4"]), 0);
        assert_eq!(run(["wordmap", "image", "[x,y]", "--group", "psl:4"]), 2);
        assert_eq!(run(["wordmap", "image", "[x,y,z]", "--group", "alt:9"]), 2);
        assert_eq!(run(["wordmap", "verify-alt", "--recipe", "1"]), 0);
    }
}

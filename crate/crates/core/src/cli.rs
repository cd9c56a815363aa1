//! Command-line front end.
//!
//! Exit codes: 0 success, 1 computation error, 2 usage error, 3 verification failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::character::{compute_table, CharacterTable, ClassFunction, TableCache};
use crate::cyclotomic::SerializedCyc;
use crate::group::{builtin, Group};
use crate::harness::{load_corpus, run_corpus, RunOptions, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "charsquare", version, about = "Exact character tables and the character-squaring map")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Table cache directory (default: $CHARSQUARE_CACHE, if set).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Ignore any cache directory.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the character table.
    Table { spec: String },
    /// Decompose the square of an irreducible.
    Square {
        spec: String,
        #[arg(long)]
        index: usize,
    },
    /// The unique irreducible whose second power is the given one (odd order).
    Sqrt {
        spec: String,
        #[arg(long)]
        index: usize,
    },
    /// Decompose a product of irreducibles, optionally after the second-power map.
    Decompose {
        spec: String,
        /// Comma-separated irreducible indices whose product is decomposed.
        #[arg(long, value_delimiter = ',', required = true)]
        product: Vec<usize>,
        /// Apply `g ↦ ϑ(g²)` to the product first.
        #[arg(long)]
        second_power: bool,
    },
    /// Run the check suite over a corpus.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value = "default")]
        corpus: String,
        /// Include wall-clock timings (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// List the groups of a corpus.
    CorpusList {
        #[arg(long, default_value = "default")]
        corpus: String,
    },
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn cache_for(cli: &Cli) -> Option<TableCache> {
    if cli.no_cache {
        return None;
    }
    cli.cache.clone().map(TableCache::new).or_else(TableCache::from_env)
}

fn load(cli: &Cli, spec: &str) -> anyhow::Result<CharacterTable> {
    let spec = spec.trim();
    let group = Arc::new(builtin(spec)?);
    Ok(match cache_for(cli) {
        Some(c) => c.load_or_compute(spec, &group)?.0,
        None => compute_table(&group)?,
    })
}

/// Runs a parsed command.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Table { spec } => {
            let t = load(cli, spec)?;
            match cli.format {
                Format::Text => write!(out, "{}", render_table(spec, &t))?,
                Format::Machine => writeln!(out, "{}", serde_json::to_string_pretty(&table_json(spec, &t))?)?,
            }
            Ok(EXIT_OK)
        }
        Command::Square { spec, index } => {
            let t = load(cli, spec)?;
            let chi = t.get(*index)?;
            square_report(cli.format, spec, &t, *index, &chi.square(), out)?;
            Ok(EXIT_OK)
        }
        Command::Decompose { spec, product, second_power } => {
            let t = load(cli, spec)?;
            let mut theta = t.get(product[0])?.clone();
            for &i in &product[1..] {
                theta = theta.product(t.get(i)?)?;
            }
            if *second_power {
                theta = theta.second_power();
            }
            let label = product.iter().map(|i| format!("X{i}")).collect::<Vec<_>>().join("*");
            let label = if *second_power { format!("({label})^(2)") } else { label };
            match t.decompose(&theta) {
                Ok(dec) => match cli.format {
                    Format::Text => writeln!(out, "{label} = {}  (degree {}, eta {})", dec.render(), theta.degree().unwrap_or(0), dec.eta())?,
                    Format::Machine => writeln!(
                        out,
                        "{}",
                        json!({"spec": spec, "input": label, "multiplicities": dec.multiplicities, "eta": dec.eta()})
                    )?,
                },
                Err(_) => {
                    // generalized characters (e.g. second powers in even order) get signed coordinates
                    let coords = t.virtual_decompose(&theta)?;
                    match cli.format {
                        Format::Text => writeln!(out, "{label} = {} (generalized character)", render_signed(&coords))?,
                        Format::Machine => writeln!(out, "{}", json!({"spec": spec, "input": label, "coordinates": coords}))?,
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Sqrt { spec, index } => {
            let t = load(cli, spec)?;
            let j = t.square_root_char(*index)?;
            match cli.format {
                Format::Text => {
                    writeln!(out, "psi = X{j}  (degree {}), psi^(2) = X{index}", t.degrees()[j])?;
                    if j == *index {
                        writeln!(out, "X{index} is its own square root")?;
                    }
                }
                Format::Machine => writeln!(out, "{}", json!({"spec": spec, "index": index, "sqrt": j}))?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite, corpus, timings } => {
            let suite: Suite = suite.parse()?;
            let opts = RunOptions { cache: cache_for(cli), timings: *timings };
            let report = run_corpus(corpus, &suite, &opts)?;
            match cli.format {
                Format::Text => write!(out, "{}", report.to_text())?,
                Format::Machine => writeln!(out, "{}", report.to_json())?,
            }
            Ok(if report.is_success() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::CorpusList { corpus } => {
            let specs = load_corpus(corpus)?;
            let mut rows = Vec::new();
            for spec in &specs {
                let g = builtin(spec)?;
                rows.push((spec.clone(), g));
            }
            match cli.format {
                Format::Text => {
                    for (spec, g) in &rows {
                        writeln!(out, "{:<30} order {:>5}  {}", spec, g.order(), flag_text(g))?;
                    }
                }
                Format::Machine => {
                    let list: Vec<_> = rows
                        .iter()
                        .map(|(spec, g)| json!({"spec": spec, "order": g.order(), "flags": g.flags()}))
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&list)?)?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn flag_text(g: &Group) -> String {
    let f = g.flags();
    let show = |v: Option<bool>| match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "?",
    };
    format!(
        "odd {} nilpotent {} supersolvable {} monomial {}",
        if f.odd_order { "yes" } else { "no" },
        show(f.nilpotent),
        show(f.supersolvable),
        show(f.all_irreducibles_monomial)
    )
}

fn render_signed(coords: &[i64]) -> String {
    let mut s = String::new();
    for (i, &m) in coords.iter().enumerate().filter(|(_, m)| **m != 0) {
        let sign = if m < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = m.unsigned_abs();
        let term = if mag == 1 { format!("X{i}") } else { format!("{mag}*X{i}") };
        if s.is_empty() {
            s = format!("{sign}{term}");
        } else {
            s = format!("{s} {sign} {term}");
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn square_report(
    format: Format,
    spec: &str,
    t: &CharacterTable,
    i: usize,
    sq: &ClassFunction,
    out: &mut dyn Write,
) -> anyhow::Result<()> {
    let dec = t.decompose(sq)?;
    let odd_order = t.group().order() % 2 == 1;
    let second = t.index_of(&t.get(i)?.second_power());
    let odd = dec.odd_constituents();
    let unique_odd = (odd_order && odd.len() == 1).then(|| odd[0]);
    match format {
        Format::Text => {
            writeln!(out, "X{i}^2 = {}  (degree {}, eta {})", dec.render(), t.degrees()[i].pow(2), dec.eta())?;
            for (j, m) in dec.constituents() {
                let mark = if Some(j) == unique_odd { "  <- unique odd constituent = X{i}^(2)".replace("{i}", &i.to_string()) } else { String::new() };
                writeln!(out, "  X{j}  degree {}  multiplicity {m}{mark}", t.degrees()[j])?;
            }
            match second {
                Some(s) => writeln!(out, "X{i}^(2) = X{s}")?,
                None => writeln!(out, "X{i}^(2) is not irreducible")?,
            }
            if !odd_order {
                writeln!(out, "note: no unique odd constituent (even order)")?;
            }
        }
        Format::Machine => writeln!(
            out,
            "{}",
            json!({
                "spec": spec,
                "index": i,
                "multiplicities": dec.multiplicities,
                "eta": dec.eta(),
                "second_power": second,
                "unique_odd_constituent": unique_odd,
            })
        )?,
    }
    Ok(())
}

fn render_table(spec: &str, t: &CharacterTable) -> String {
    let g = t.group();
    let cd = g.classes();
    let r = cd.num_classes();
    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["class".to_string()];
    header.extend((0..r).map(|c| c.to_string()));
    grid.push(header);
    let mut sizes = vec!["size".to_string()];
    sizes.extend((0..r).map(|c| cd.size(c).to_string()));
    grid.push(sizes);
    let mut orders = vec!["order".to_string()];
    orders.extend((0..r).map(|c| g.element_order(cd.representative(c)).to_string()));
    grid.push(orders);
    for (i, chi) in t.irreducibles().iter().enumerate() {
        let mut row = vec![format!("X{i}")];
        row.extend(chi.values().iter().map(ToString::to_string));
        grid.push(row);
    }
    let widths: Vec<usize> = (0..=r).map(|c| grid.iter().map(|row| row[c].chars().count()).max().unwrap_or(0)).collect();
    let prov = t.provenance();
    let mut out = format!(
        "{spec}: order {}, {r} classes, conductor {}, prime {}\ndegrees {:?}\n",
        g.order(),
        t.conductor(),
        prov.prime,
        t.degrees()
    );
    for (k, row) in grid.iter().enumerate() {
        let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
        if k == 2 {
            out.push('\n');
        }
    }
    out
}

fn table_json(spec: &str, t: &CharacterTable) -> serde_json::Value {
    let g = t.group();
    let cd = g.classes();
    let classes: Vec<_> = (0..cd.num_classes())
        .map(|c| json!({"representative": cd.representative(c), "size": cd.size(c), "order": g.element_order(cd.representative(c))}))
        .collect();
    let values: Vec<Vec<SerializedCyc>> =
        t.irreducibles().iter().map(|chi| chi.values().iter().map(|v| v.to_serialized()).collect()).collect();
    json!({
        "spec": spec,
        "order": g.order(),
        "conductor": t.conductor(),
        "provenance": t.provenance(),
        "class_digest": cd.digest(),
        "classes": classes,
        "degrees": t.degrees(),
        "characters": values,
    })
}

//! `surfhom`: contractibility and homotopy of closed walks on surfaces.

mod bench;
mod fixtures;
mod output;
mod query;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use surface_homotopy::cyclic::CanonicalCycle;
use surface_homotopy::oracle::GenWord;
use surface_homotopy::{load_embedding, CellularEmbedding, Surface};

use output::{Format, Record};

#[derive(Parser, Debug)]
#[command(name = "surfhom", version, about = "Homotopy tests for closed walks on combinatorial surfaces")]
struct Cli {
    /// Output mode: human-readable text or one JSON record per line.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for batches of independent queries.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print V, E, F, Euler characteristic, orientability and genus.
    Info {
        #[command(flatten)]
        source: Source,
    },
    /// Decide whether closed walks are contractible.
    Contractible {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        batch: Batch,
        /// Cross-check every answer against the word-problem oracle.
        #[arg(long)]
        check: bool,
        /// Walks: signed edge tokens (`+3 -7 +1`) or generator letters.
        walks: Vec<String>,
    },
    /// Decide whether pairs of closed walks are homotopic.
    Homotopic {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        batch: Batch,
        /// Homotopy with the basepoint held fixed instead of free homotopy.
        #[arg(long)]
        fixed_basepoint: bool,
        #[arg(long)]
        check: bool,
        walks: Vec<String>,
    },
    /// Print the walk as a word of the reduced system and its canonical cycle.
    Word {
        #[command(flatten)]
        source: Source,
        walk: String,
    },
    /// Decide conjugacy of pairs of words in the surface group.
    Conjugate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        batch: Batch,
        #[arg(long)]
        check: bool,
        words: Vec<String>,
    },
    /// Print the canonical one-vertex system of a surface in the file format.
    GenCanonical {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        non_orientable: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time contractibility and free-homotopy queries on random words.
    Bench {
        #[arg(long, default_value_t = 2)]
        genus: u32,
        /// Word lengths, as values or powers of two (`1024,2^12`).
        #[arg(long, value_delimiter = ',', default_value = "2^10,2^12,2^14,2^16")]
        lengths: Vec<String>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Write regression fixtures.
    Fixtures {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Pairs per label in the random suite.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        genus: u32,
    },
}

/// Where the surface comes from; exactly one must be given.
#[derive(Args, Debug)]
struct Source {
    /// Embedding file in the rotation-system format.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Canonical one-vertex system of this genus.
    #[arg(long)]
    genus: Option<u32>,
    #[arg(long, requires = "genus")]
    non_orientable: bool,
    /// One-vertex system with this facial word, e.g. `abaB`.
    #[arg(long)]
    relator: Option<String>,
}

#[derive(Args, Debug)]
struct Batch {
    /// Read inputs from a file (`-` for stdin), one per line. Pairs are
    /// written `a ; b`, and any further `;` fields are labels.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Appendix,
    Random,
    Klein,
}

impl Source {
    fn embedding(&self) -> Result<CellularEmbedding> {
        match (&self.file, self.genus, &self.relator) {
            (Some(path), None, None) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Ok(load_embedding(&text).with_context(|| format!("loading {}", path.display()))?)
            }
            (None, Some(g), None) => Ok(CellularEmbedding::gen_canonical(g, !self.non_orientable)?),
            (None, None, Some(rel)) => {
                let word = GenWord::parse(rel)?;
                Ok(CellularEmbedding::from_face_word("relator", word.letters())?)
            }
            _ => bail!("give exactly one of --file, --genus or --relator"),
        }
    }

    fn surface(&self) -> Result<Surface> {
        Ok(Surface::preprocess(self.embedding()?)?)
    }
}

impl Batch {
    /// Positional inputs followed by the lines of `--input`.
    fn lines(&self, positional: &[String]) -> Result<Vec<String>> {
        let mut out = positional.to_vec();
        if let Some(path) = &self.input {
            let text = if path.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
            };
            out.extend(
                text.lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(String::from),
            );
        }
        Ok(out)
    }

    /// Pairs from two positional arguments or from `a ; b` lines.
    fn pairs(&self, positional: &[String]) -> Result<Vec<(String, String)>> {
        let mut out = Vec::new();
        let mut lines = self.lines(&[])?;
        match positional.len() {
            0 => {}
            2 => out.push((positional[0].clone(), positional[1].clone())),
            n => bail!("expected two walks, got {n}"),
        }
        for line in lines.drain(..) {
            let mut fields = line.split(';').map(str::trim);
            match (fields.next(), fields.next()) {
                (Some(a), Some(b)) => out.push((a.to_string(), b.to_string())),
                _ => bail!("expected `a ; b`, got `{line}`"),
            }
        }
        if out.is_empty() {
            bail!("no inputs");
        }
        Ok(out)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let fmt = cli.format;
    let jobs = cli.jobs.max(1);
    match cli.command {
        Command::Info { source } => {
            let emb = source.embedding()?;
            let class = emb.classify();
            let (v, e, f) = (emb.vertex_count(), emb.edge_count(), emb.face_count());
            match fmt {
                Format::Text => {
                    println!("surface {}", emb.name());
                    println!("V={v} E={e} F={f}");
                    println!("{class}");
                }
                Format::Jsonl => Record::new("info").answer(&class.to_string()).emit(),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Contractible { source, batch, check, walks } => {
            let s = source.surface()?;
            let inputs = batch.lines(&walks)?;
            if inputs.is_empty() {
                bail!("no walks");
            }
            let answers = query::par_map(&inputs, jobs, |w| query::contractible(&s, w, check))?;
            Ok(output::answers("contractible", &answers, fmt))
        }
        Command::Homotopic { source, batch, fixed_basepoint, check, walks } => {
            let s = source.surface()?;
            let pairs = batch.pairs(&walks)?;
            let answers = query::par_map(&pairs, jobs, |(a, b)| query::homotopic(&s, a, b, fixed_basepoint, check))?;
            Ok(output::answers("homotopic", &answers, fmt))
        }
        Command::Conjugate { source, batch, check, words } => {
            let s = source.surface()?;
            let pairs = batch.pairs(&words)?;
            let answers = query::par_map(&pairs, jobs, |(a, b)| query::conjugate(&s, a, b, check))?;
            Ok(output::answers("conjugate", &answers, fmt))
        }
        Command::Word { source, walk } => {
            let s = source.surface()?;
            let walk = s.parse_walk(&walk)?;
            let word = s.reduced_word(&walk)?;
            let canonical = if s.class().orientable && s.class().genus >= 2 {
                s.canonical_cycle(&walk)?.map(|c| CanonicalCycle { tokens: c.least_rotation() }.to_string())
            } else {
                None
            };
            match fmt {
                Format::Text => {
                    println!("word {word}");
                    println!("canonical {}", canonical.as_deref().unwrap_or("-"));
                }
                Format::Jsonl => Record::new("word").answer(&word.to_string()).k(walk.len()).emit(),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GenCanonical { genus, non_orientable, out } => {
            let text = CellularEmbedding::gen_canonical(genus, !non_orientable)?.to_text();
            output::write_to(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { genus, lengths, trials, seed } => {
            let lengths = lengths.iter().map(|l| bench::parse_length(l)).collect::<Result<Vec<_>>>()?;
            bench::run(genus, &lengths, trials.max(1), seed, fmt)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fixtures { suite, out, seed, count, genus } => {
            let text = match suite {
                Suite::Appendix => fixtures::appendix(),
                Suite::Random => fixtures::random(genus, count, seed)?,
                Suite::Klein => fixtures::klein(),
            };
            output::write_to(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use quintic_genus::corpus::{self, FieldRecord};
use quintic_genus::densities::{self, format_significant, CertifiedValue};
use quintic_genus::genus::{genus_number_with_bound, GenusCertificate, DEFAULT_SAMPLE_BOUND};
use quintic_genus::localfields::{self, LocalConditionSet};
use quintic_genus::polycore::{set_seed, DEFAULT_SEED};
use quintic_genus::{Error, IntPoly};

#[derive(Parser)]
#[command(
    name = "quintic",
    version,
    about = "Genus numbers of quintic fields, local quintic algebras and density constants"
)]
struct Cli {
    /// Output style: aligned text or one JSON record per line.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomized internals. Results do not depend on it.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads for the corpus pipeline and product evaluation
    /// (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Genus number of the field defined by a monic irreducible quintic.
    Genus {
        /// Polynomial such as "x^5 - 11" or a coefficient list "c0,...,c5".
        #[arg(long)]
        poly: String,
        /// Unramified primes sampled before a field is called cyclic.
        #[arg(long, default_value_t = DEFAULT_SAMPLE_BOUND)]
        sample_bound: usize,
    },
    /// Local quintic algebras.
    Local {
        #[command(subcommand)]
        command: LocalCommand,
    },
    /// Certified density constants.
    Density {
        #[command(subcommand)]
        command: DensityCommand,
    },
    /// Batch processing of polynomial tables.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum LocalCommand {
    /// The 25 totally ramified quintic extensions of Q_5.
    EnumerateQ5,
    /// Mass of the quintic étale algebras over Q_p meeting a condition.
    Mass {
        #[arg(short = 'p', long = "prime")]
        p: u64,
        #[arg(long, value_enum, default_value_t = Condition::All)]
        condition: Condition,
    },
    /// Splitting type of a prime in the field defined by a polynomial.
    Split {
        #[arg(long)]
        poly: String,
        #[arg(short = 'p', long = "prime")]
        p: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Condition {
    All,
    Inert,
    TotallyRamified,
    NotTotallyRamified,
    /// Totally ramified with Galois completion (p = 5 only).
    TotallyRamifiedGalois,
}

#[derive(Subcommand)]
enum DensityCommand {
    /// Proportion of quintic fields with genus number one.
    GenusOne {
        #[arg(long, default_value_t = 9)]
        digits: u32,
    },
    /// Average genus number.
    Average {
        #[arg(long, default_value_t = 9)]
        digits: u32,
    },
    /// Lower bound for the proportion with genus number 5^k.
    LowerBound {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 9)]
        digits: u32,
    },
    /// Inclusion-exclusion sum over moduli up to Y, with its tail majorant.
    Sieve {
        #[arg(short = 'Y', long = "Y")]
        y: u64,
    },
    /// Density of fields caught by the norm-Euclidean screen.
    Screen {
        #[arg(long, default_value_t = 12)]
        digits: u32,
    },
    /// Bhargava's constant for fields with i pairs of complex embeddings.
    Bhargava {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        i: u8,
        #[arg(long, default_value_t = 9)]
        digits: u32,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Certify every polynomial in a table.
    Run {
        /// Table with one "c0,c1,c2,c3,c4,c5" per line.
        input: PathBuf,
        /// Write JSON records here instead of printing.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Counts, genus histogram and mean per signature.
    Stats {
        /// JSON records from `corpus run`, or a raw polynomial table.
        input: PathBuf,
        /// Only count fields with |disc| at most this.
        #[arg(long)]
        x_cap: Option<BigInt>,
    },
    /// Fields passing the norm-Euclidean screen.
    Screen {
        /// JSON records from `corpus run`, or a raw polynomial table.
        input: PathBuf,
    },
}

type Out = Result<String, Error>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 3,
        e if e.is_abort() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    set_seed(cli.seed);
    let workers = if cli.workers == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        cli.workers
    };
    let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    match run(&cli, workers) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli, workers: usize) -> Out {
    let f = cli.format;
    match &cli.command {
        Command::Genus { poly, sample_bound } => genus(f, poly, *sample_bound),
        Command::Local { command } => match command {
            LocalCommand::EnumerateQ5 => enumerate_q5(f),
            LocalCommand::Mass { p, condition } => mass(f, *p, *condition),
            LocalCommand::Split { poly, p } => split(f, poly, *p),
        },
        Command::Density { command } => density(f, command),
        Command::Corpus { command } => match command {
            CorpusCommand::Run { input, output } => corpus_run(f, input, output.as_deref(), workers),
            CorpusCommand::Stats { input, x_cap } => corpus_stats(f, input, x_cap.as_ref(), workers),
            CorpusCommand::Screen { input } => corpus_screen(f, input, workers),
        },
    }
}

fn lines(values: impl IntoIterator<Item = Value>) -> String {
    values.into_iter().map(|v| format!("{v}\n")).collect()
}

fn parse_poly(s: &str) -> Result<IntPoly, Error> {
    IntPoly::parse(s).map_err(|e| Error::InvalidInput(format!("cannot parse {s:?}: {e}")))
}

fn certificate_json(c: &GenusCertificate) -> Value {
    json!({
        "poly": c.poly.to_coeff_list(),
        "disc": c.disc.to_string(),
        "i": c.signature_i,
        "t": c.t,
        "ramification_product": c.ramification_product,
        "star_at_5": c.star_at_5,
        "cyclic": c.cyclic,
        "cyclicity": c.cyclicity,
        "genus": c.genus_number,
    })
}

fn genus(f: Format, poly: &str, bound: usize) -> Out {
    let c = genus_number_with_bound(&parse_poly(poly)?, bound)?;
    if f == Format::Records {
        return Ok(lines([certificate_json(&c)]));
    }
    let primes: Vec<String> = c.ramification_product.iter().map(u64::to_string).collect();
    let rows = [
        ("polynomial", c.poly.to_string()),
        ("discriminant", c.disc.to_string()),
        ("complex pairs i", c.signature_i.to_string()),
        ("counted primes", format!("[{}]", primes.join(", "))),
        ("t", c.t.to_string()),
        ("star at 5", c.star_at_5.map_or("-".into(), |s| s.to_string())),
        ("cyclic", c.cyclic.to_string()),
        ("cyclicity evidence", format!("{:?}", c.cyclicity)),
        ("genus number", c.genus_number.to_string()),
    ];
    Ok(rows.iter().map(|(k, v)| format!("{k:<20} {v}\n")).collect())
}

fn enumerate_q5(f: Format) -> Out {
    let classes = localfields::enumerate_wild_quintic_q5()?;
    if f == Format::Records {
        return Ok(lines(classes.iter().map(|c| {
            json!({
                "representative": c.representative.to_coeff_list(),
                "disc_exponent": c.disc_exponent,
                "aut_count": c.aut_count,
                "is_galois": c.is_galois,
                "satisfies_star": c.satisfies_star,
            })
        })));
    }
    let mut s = format!(
        "{:<36} {:>4} {:>4} {:>7} {:>5}\n",
        "representative", "d", "aut", "galois", "star"
    );
    for c in &classes {
        s += &format!(
            "{:<36} {:>4} {:>4} {:>7} {:>5}\n",
            c.representative.to_string(),
            c.disc_exponent,
            c.aut_count,
            c.is_galois,
            c.satisfies_star
        );
    }
    let star = classes.iter().filter(|c| c.satisfies_star).count();
    s += &format!("{} classes, {star} satisfying the star condition\n", classes.len());
    Ok(s)
}

fn condition_set(p: u64, c: Condition) -> Result<LocalConditionSet, Error> {
    Ok(match c {
        Condition::All => LocalConditionSet::all(p),
        Condition::Inert => LocalConditionSet::inert(p),
        Condition::TotallyRamified => LocalConditionSet::totally_ramified(p),
        Condition::NotTotallyRamified => LocalConditionSet::not_totally_ramified(p),
        Condition::TotallyRamifiedGalois if p == 5 => LocalConditionSet::totally_ramified_galois(),
        Condition::TotallyRamifiedGalois => {
            return Err(Error::InvalidInput("the Galois condition applies at p = 5 only".into()))
        }
    })
}

fn mass(f: Format, p: u64, c: Condition) -> Out {
    let cond = condition_set(p, c)?;
    let label = c
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let mass = localfields::mass_subset(p, &cond)?;
    let classes = localfields::admitted_classes(&cond).ok();
    let closed = (c == Condition::All).then(|| densities::m(p));
    let agrees = closed.as_ref().map(|m| *m == mass);
    if f == Format::Records {
        return Ok(lines([json!({
            "p": p,
            "condition": label,
            "mass": mass.to_string(),
            "classes": classes.as_ref().map(Vec::len),
            "closed_form": closed.as_ref().map(|m| m.to_string()),
            "agrees": agrees,
        })]));
    }
    let mut s = format!("mass {mass}\n");
    s += &format!("condition {label} at p = {p}\n");
    if let Some(cl) = &classes {
        s += &format!("enumerated {} classes\n", cl.len());
    }
    if let (Some(m), Some(ok)) = (&closed, agrees) {
        s += &format!(
            "1 + 1/p + 2/p^2 + 2/p^3 + 1/p^4 = {m} ({})\n",
            if ok { "agrees" } else { "DISAGREES" }
        );
        if !ok {
            return Err(Error::Consistency(format!("mass {mass} differs from {m} at p = {p}")));
        }
    }
    Ok(s)
}

fn split(f: Format, poly: &str, p: u64) -> Out {
    let poly = parse_poly(poly)?;
    let t = localfields::splitting_type(&poly, p)?;
    if f == Format::Records {
        let parts: Vec<Value> = t.parts().iter().map(|&(e, f)| json!({"e": e, "f": f})).collect();
        return Ok(lines([
            json!({"poly": poly.to_coeff_list(), "p": p, "type": t.to_string(), "parts": parts}),
        ]));
    }
    Ok(format!("{t}\n"))
}

fn certified_out(f: Format, name: &str, digits: u32, v: &CertifiedValue) -> String {
    if f == Format::Records {
        let sig = |x: &num_rational::BigRational| format_significant(x, digits + 4);
        return lines([json!({
            "constant": name,
            "value": sig(&v.midpoint()),
            "low": sig(&v.low()),
            "high": sig(&v.high()),
            "cutoff": v.cutoff,
        })]);
    }
    format!("{name} {v}\n")
}

fn density(f: Format, cmd: &DensityCommand) -> Out {
    Ok(match *cmd {
        DensityCommand::GenusOne { digits } => {
            certified_out(f, "genus-one", digits, &densities::genus_one_density(digits)?)
        }
        DensityCommand::Average { digits } => {
            certified_out(f, "average", digits, &densities::average_genus_constant(digits)?)
        }
        DensityCommand::LowerBound { k, digits } => certified_out(
            f,
            &format!("lower-bound-5^{k}"),
            digits,
            &densities::lower_bound_5k(k, digits)?,
        ),
        DensityCommand::Screen { digits } => certified_out(f, "screen", digits, &densities::screen_density(digits)?),
        DensityCommand::Bhargava { i, digits } => certified_out(
            f,
            &format!("bhargava-{i}"),
            digits,
            &densities::bhargava_constant(i, digits)?,
        ),
        DensityCommand::Sieve { y } => {
            let s = densities::sieve_prediction(y)?;
            let d = |x: &num_rational::BigRational| format_significant(x, 15);
            let (low, high) = (s.low(), s.high());
            if f == Format::Records {
                lines([json!({
                    "Y": s.y,
                    "value": d(&s.value),
                    "majorant": d(&s.majorant),
                    "low": d(&low),
                    "high": d(&high),
                    "terms": s.terms,
                })])
            } else {
                format!(
                    "sieve Y={} terms={}\nvalue    {}\nmajorant {}\ninterval [{}, {}]\n",
                    s.y,
                    s.terms,
                    d(&s.value),
                    d(&s.majorant),
                    d(&low),
                    d(&high)
                )
            }
        }
    })
}

fn open(path: &Path) -> Result<BufReader<File>, Error> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Records from a `corpus run` output file, or freshly computed from a
/// polynomial table.
fn load_records(path: &Path, workers: usize) -> Result<Vec<FieldRecord>, Error> {
    let mut first = String::new();
    for line in open(path)?.lines() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            first = t.to_string();
            break;
        }
    }
    if first.starts_with('{') {
        return corpus::read_records(open(path)?);
    }
    let report = corpus::ingest_path(path)?;
    for e in &report.errors {
        eprintln!("skipped {}: {}", e.source, e.message);
    }
    corpus::run_pipeline(report.fields, workers)
}

fn record_text(records: &[FieldRecord]) -> String {
    let mut s = format!(
        "{:<36} {:>28} {:>2} {:>3} {:>8} {:>7}  {}\n",
        "poly", "disc", "i", "t", "genus", "cyclic", "notes"
    );
    for r in records {
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        let mut notes = r.flags.clone();
        if let Some(e) = &r.error_detail {
            notes.insert(0, e.clone());
        }
        s += &format!(
            "{:<36} {:>28} {:>2} {:>3} {:>8} {:>7}  {}\n",
            r.poly.to_string(),
            r.disc.to_string(),
            r.i,
            opt(r.t.map(|t| t.to_string())),
            opt(r.genus.map(|g| g.to_string())),
            opt(r.cyclic.map(|c| c.to_string())),
            notes.join(" ")
        );
    }
    s
}

fn records_out(f: Format, records: &[FieldRecord]) -> Out {
    if f == Format::Text {
        return Ok(record_text(records));
    }
    let mut buf = Vec::new();
    corpus::write_records(records, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

fn corpus_run(f: Format, input: &Path, output: Option<&Path>, workers: usize) -> Out {
    let report = corpus::ingest_path(input)?;
    for e in &report.errors {
        eprintln!("skipped {}: {}", e.source, e.message);
    }
    let records = corpus::run_pipeline(report.fields, workers)?;
    match output {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            corpus::write_records(&records, std::io::BufWriter::new(file))?;
            let failed = records.iter().filter(|r| r.error.is_some()).count();
            Ok(format!(
                "{} records written to {} ({failed} with errors)\n",
                records.len(),
                path.display()
            ))
        }
        None => records_out(f, &records),
    }
}

fn corpus_stats(f: Format, input: &Path, x_cap: Option<&BigInt>, workers: usize) -> Out {
    let records = load_records(input, workers)?;
    let report = corpus::stats(&records, x_cap);
    Ok(match f {
        Format::Text => corpus::render_report_text(&report),
        Format::Records => lines([report.to_json()]),
    })
}

fn corpus_screen(f: Format, input: &Path, workers: usize) -> Out {
    let records = load_records(input, workers)?;
    records_out(f, &corpus::screen(&records)?)
}

//! charfield: exact verification of character fields of values, conductors,
//! and degree divisibility over a bundled corpus of character tables.

use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use charfield::{config, corpus, suites};
use charfield_core::chartab::CharacterTable;
use charfield_core::cyclo;
use charfield_core::glq::{self, Epsilon};
use charfield_core::numfield::AbelianField;
use charfield_core::wreath::{realize_prescribed, wreath_character};

use config::SuiteConfig;

#[derive(Parser)]
#[command(name = "charfield", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite over the corpus and write a report.
    Verify(VerifyArgs),
    /// Formula-side alternating-group conductor scan.
    Alt(AltArgs),
    /// GL/GU parameter scans: enumeration, degrees, fields, divisibility.
    Gl(GlArgs),
    /// Explicit constructions.
    Construct(ConstructArgs),
    /// Evaluate a cyclotomic expression and print value, conductor, field.
    Field(FieldArgs),
    /// Corpus management.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: conjecture-b, divisor-bound, pgroup, alternating, gl-gu,
    /// wreath, all.
    #[arg(long)]
    suite: String,
    /// Corpus directory (tables/, fusions/, registry.json, meta.json).
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Comma-separated primes for the per-prime checks.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[arg(long)]
    max_alt_n: Option<u32>,
    #[arg(long)]
    enumeration_bound: Option<u64>,
    /// Report output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// json or csv.
    #[arg(long, default_value = "json")]
    format: String,
    /// Optional JSON config file (same schema as the flags).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct AltArgs {
    #[arg(long, default_value_t = 16)]
    max_n: u32,
    #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5, 7, 11, 13])]
    primes: Vec<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GlArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u64,
    /// +1 for GL, -1 for GU.
    #[arg(long, allow_hyphen_values = true, default_value = "+1")]
    epsilon: String,
    /// all, sum-squares, count, conjecture-b
    #[arg(long, default_value = "all")]
    check: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    what: ConstructCommand,
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Build and verify the field-shrinking character for a table row and a
    /// subfield of its field of values.
    Wreath(WreathArgs),
    /// Compose a character with a prescribed field and degree p-part from
    /// the registry.
    Prescribed(PrescribedArgs),
}

#[derive(Args)]
struct WreathArgs {
    /// Path to a character table JSON file.
    #[arg(long)]
    table: PathBuf,
    /// Row index of chi.
    #[arg(long = "char")]
    char_index: usize,
    /// Galois-stabilizer generators of the subfield F inside Q(chi): F is
    /// the fixed field of the subgroup they generate together with the
    /// stabilizer of Q(chi).
    #[arg(long, value_delimiter = ',')]
    fix: Vec<u64>,
    #[arg(long, default_value_t = 1_000_000)]
    bound: u64,
}

#[derive(Args)]
struct PrescribedArgs {
    /// Target field as "d" for Q(sqrt d), or "cyclotomic:n", or "q" for Q.
    #[arg(long, allow_hyphen_values = true)]
    field: String,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    b: u32,
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, default_value_t = 1_000_000)]
    bound: u64,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    expr: String,
}

#[derive(Args)]
struct CorpusArgs {
    #[command(subcommand)]
    action: CorpusCommand,
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Generate the bundled corpus into a directory.
    Generate {
        #[arg(long)]
        out: PathBuf,
    },
    /// Validate every file of a corpus directory and print an index.
    Check {
        #[arg(long)]
        dir: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Alt(args) => alt(args),
        Command::Gl(args) => gl(args),
        Command::Construct(args) => match args.what {
            ConstructCommand::Wreath(w) => construct_wreath(w),
            ConstructCommand::Prescribed(p) => construct_prescribed(p),
        },
        Command::Field(args) => field(args),
        Command::Corpus(args) => match args.action {
            CorpusCommand::Generate { out } => {
                let c = corpus::generate()?;
                corpus::write_to(&out, &c)?;
                println!(
                    "wrote {} tables, {} fusions, registry with {} entries to {}",
                    c.tables.len(),
                    c.fusions.len(),
                    c.registry.entries.len(),
                    out.display()
                );
                Ok(0)
            }
            CorpusCommand::Check { dir } => {
                let c = corpus::ingest(&dir)?;
                println!("{} tables indexed:", c.tables.len());
                for (name, t) in &c.tables {
                    println!(
                        "  {name}: |G| = {}, exponent {}, {} classes",
                        t.order,
                        t.exponent,
                        t.class_count()
                    );
                }
                println!("{} fusions, {} registry entries", c.fusions.len(), c.registry.entries.len());
                Ok(0)
            }
        },
    }
}

fn verify(args: VerifyArgs) -> anyhow::Result<i32> {
    let mut config = match &args.config {
        Some(path) => SuiteConfig::load_file(path)?,
        None => SuiteConfig::default(),
    };
    if let Some(dir) = args.corpus {
        config.corpus_dir = dir;
    }
    if let Some(primes) = args.primes {
        config.primes = primes;
    }
    if let Some(m) = args.max_alt_n {
        config.max_alt_n = m;
    }
    if let Some(b) = args.enumeration_bound {
        config.enumeration_bound = b;
    }
    if let Some(out) = args.out {
        config.output_path = Some(out);
    }
    config.validate()?;

    let corpus = corpus::ingest(&config.corpus_dir)
        .with_context(|| format!("ingesting corpus at {}", config.corpus_dir.display()))?;
    let report = suites::run_suite(&corpus, &config, &args.suite)?;

    for (check, counts) in &report.summaries {
        println!(
            "{check}: {} pass ({} vacuous), {} expected failures, {} unexpected failures",
            counts.pass, counts.vacuous, counts.expected_fail, counts.fail
        );
    }
    let bytes = suites::emit_report(&report, &args.format)?;
    match &config.output_path {
        Some(path) => {
            std::fs::write(path, &bytes)?;
            println!("report written to {}", path.display());
        }
        None => print!("{}", String::from_utf8_lossy(&bytes)),
    }
    Ok(report.exit_code())
}

fn alt(args: AltArgs) -> anyhow::Result<i32> {
    anyhow::ensure!(
        (1..=20).contains(&args.max_n),
        "--max-n must be in 1..=20 (degrees overflow u64 beyond 20)"
    );
    let records = charfield_core::symchar::scan_alternating(args.max_n, &args.primes);
    let violations = records.iter().filter(|r| !r.verdict).count();
    println!(
        "scanned self-conjugate partitions up to n = {}: {} characters, {} violations",
        args.max_n,
        records.len(),
        violations
    );
    if let Some(path) = args.out {
        let mut bytes = serde_json::to_vec_pretty(&records)?;
        bytes.push(b'\n');
        std::fs::write(&path, bytes)?;
        println!("records written to {}", path.display());
    }
    Ok(if violations == 0 { 0 } else { 1 })
}

fn gl(args: GlArgs) -> anyhow::Result<i32> {
    let sign: i64 = args
        .epsilon
        .trim_start_matches('+')
        .parse()
        .context("epsilon must be +1 or -1")?;
    let eps = Epsilon::from_sign(sign).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut failures = 0usize;
    let mut payload = serde_json::Map::new();
    if args.check == "all" || args.check == "sum-squares" || args.check == "count" {
        let s = glq::scan_summary(args.n, args.q, eps).map_err(|e| anyhow::anyhow!("{e}"))?;
        println!(
            "{}: {} classes; sum of squared degrees matches order: {}; enumeration matches class count: {}",
            eps.group_name(args.n, args.q),
            s.class_count,
            s.sum_squares_ok,
            s.count_ok
        );
        failures += usize::from(!s.sum_squares_ok) + usize::from(!s.count_ok);
        payload.insert("n".into(), s.n.into());
        payload.insert("q".into(), s.q.into());
        payload.insert("epsilon".into(), s.epsilon.into());
        payload.insert("classCount".into(), s.class_count.into());
        payload.insert("sumSquaresOK".into(), s.sum_squares_ok.into());
    }
    if args.check == "all" || args.check == "conjecture-b" {
        let recs =
            glq::conjecture_b_scan(args.n, args.q, eps, &[]).map_err(|e| anyhow::anyhow!("{e}"))?;
        let bad = recs.iter().filter(|r| !r.verdict).count();
        println!(
            "conjecture-b over {} (character, prime) pairs: {} violations",
            recs.len(),
            bad
        );
        failures += bad;
        payload.insert("records".into(), serde_json::to_value(&recs)?);
    }
    if let Some(path) = args.out {
        let mut bytes = serde_json::to_vec_pretty(&serde_json::Value::Object(payload))?;
        bytes.push(b'\n');
        std::fs::write(&path, bytes)?;
        println!("report written to {}", path.display());
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn construct_wreath(args: WreathArgs) -> anyhow::Result<i32> {
    let bytes = std::fs::read(&args.table)
        .with_context(|| format!("reading {}", args.table.display()))?;
    let table = CharacterTable::load(&bytes).map_err(|e| anyhow::anyhow!("{e}"))?;
    anyhow::ensure!(
        args.char_index < table.char_count(),
        "character index {} out of range (table has {} rows)",
        args.char_index,
        table.char_count()
    );
    let e_field = table.field_of_values(args.char_index);
    let mut gens: Vec<u64> = e_field.stabilizer().to_vec();
    gens.extend(&args.fix);
    let f_field = AbelianField::from_stabilizer(e_field.modulus(), &gens)
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let w = wreath_character(&table, args.char_index, f_field)
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let label = format!(
        "character {} of {} over {}",
        args.char_index, table.name, w.field
    );
    let v = w.verify(args.bound).map_err(|e| anyhow::anyhow!("{e}"))?;
    let report = suites::wreath_report_value(&label, w.n(), w.degree, &v);
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if v.all_ok() { 0 } else { 1 })
}

fn construct_prescribed(args: PrescribedArgs) -> anyhow::Result<i32> {
    let field = parse_field_spec(&args.field)?;
    let dir = args.corpus.unwrap_or_else(|| PathBuf::from("corpus"));
    let corpus = corpus::ingest(&dir)?;
    let tables = corpus.tables_map();
    let r = realize_prescribed(&field, args.p, args.b, &corpus.registry, &tables, args.bound)
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    println!("construction: {}", r.description);
    println!("field of values: {}", r.field);
    println!("degree: {} (nu_{}(degree) = {})", r.degree, args.p, r.nu_p_degree);
    match &r.verified {
        Some(v) => {
            println!(
                "verified via {}: field {}, degree {}",
                v.via,
                if v.field_ok { "ok" } else { "MISMATCH" },
                if v.degree_ok { "ok" } else { "MISMATCH" }
            );
            Ok(if v.field_ok && v.degree_ok { 0 } else { 1 })
        }
        None => {
            println!("constructed, unverified (beyond the enumeration bound)");
            Ok(0)
        }
    }
}

fn parse_field_spec(spec: &str) -> anyhow::Result<AbelianField> {
    if spec.eq_ignore_ascii_case("q") {
        return Ok(AbelianField::rationals());
    }
    if let Some(n) = spec.strip_prefix("cyclotomic:") {
        return Ok(AbelianField::cyclotomic(n.parse()?));
    }
    let d: i64 = spec
        .parse()
        .context("field spec must be 'q', 'cyclotomic:n', or a squarefree integer d")?;
    AbelianField::quadratic(d).map_err(|e| anyhow::anyhow!("{e}"))
}

fn field(args: FieldArgs) -> anyhow::Result<i32> {
    let value = cyclo::parse(&args.expr).map_err(|e| anyhow::anyhow!("{e}"))?;
    let field = AbelianField::from_values(std::slice::from_ref(&value));
    println!("value: {value}");
    println!("conductor: {}", value.conductor());
    println!("field: {} (degree {} over Q)", field, field.degree());
    Ok(0)
}

use std::collections::BTreeMap;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use racklab::certfile::{CertificateDocument, DocumentVerdict};
use racklab::cocycle::{equivalence_sweep, Sampling};
use racklab::descriptor::{EncodedDecision, RackDescriptor};
use racklab::perm::{CycleType, Permutation};
use racklab::rack::AxiomVerdict;
use racklab::report::{build_report, Evidence, ReportOptions};
use racklab::status::TwistKind;
use racklab::type_d::{generate, Generator, DEFAULT_PAIR_BUDGET};

const DEFAULT_CAP: u128 = 20_000;

/// Finite racks, type D certificates and their verification.
#[derive(Parser, Debug)]
#[command(name = "racklab", version)]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the rack axioms on an enumerated rack.
    Axioms {
        rack: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
    /// Describe a rack and optionally list its elements.
    Construct {
        rack: String,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
    /// Run a certificate generator and write its certificate.
    Prove {
        /// One of id_1, id_12r, id_124, id_14, iota_12, iota_222, iota_12r.
        generator: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        /// ℓ in cycle notation.
        #[arg(long, conflicts_with = "type")]
        ell: Option<String>,
        /// Cycle type of ℓu, e.g. "(1,2^2)"; a canonical ℓ is chosen.
        #[arg(long = "type")]
        r#type: Option<String>,
        /// Output file (default: <generator>.cert.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
    /// Decide type D by exhaustive pair search.
    Search {
        rack: String,
        /// Maximum number of ordered pairs to examine.
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        /// Write the certificate here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Status of twisted homogeneous racks over a range of n and t.
    Report {
        #[arg(long, default_value = "5..10", value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, default_value = "2..5", value_parser = parse_range)]
        t: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Shorthand for --format json.
        #[arg(long)]
        json: bool,
        /// Write every certificate into this directory.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
        /// Re-derive negative rows by exhaustive search.
        #[arg(long)]
        search_negatives: bool,
    },
    /// Compare the cocycle condition with the braid equation.
    Cocycle {
        rack: String,
        /// Order of the root of unity group.
        #[arg(long)]
        m: u32,
        /// Maximum number of tables to visit.
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
        /// Visit `limit` random tables when there are more.
        #[arg(long)]
        sample: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4096)]
        cap: u128,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exit statuses: 0 affirmative, 1 negative verdict, 2 usage or input error,
/// 3 inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Yes,
    No,
    Inconclusive,
}

impl From<Verdict> for ExitCode {
    fn from(v: Verdict) -> ExitCode {
        ExitCode::from(match v {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Inconclusive => 3,
        })
    }
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected a range like 5..10, got {text:?}");
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (text, text),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(v) => v.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Axioms { rack, cap } => cmd_axioms(&rack, cap),
        Command::Construct { rack, list, cap } => cmd_construct(&rack, list, cap),
        Command::Prove { generator, n, t, ell, r#type, out } => {
            cmd_prove(&generator, n, t, ell.as_deref(), r#type.as_deref(), out)
        }
        Command::Verify { file, cap } => cmd_verify(&file, cap),
        Command::Search { rack, budget, cap, out } => cmd_search(&rack, budget, cap, out.as_deref()),
        Command::Report { n, t, format, json, cert_dir, search_negatives } => {
            let format = if json { Format::Json } else { format };
            cmd_report(n, t, format, cert_dir.as_deref(), search_negatives)
        }
        Command::Cocycle { rack, m, limit, sample, seed, cap } => cmd_cocycle(&rack, m, limit, sample, seed, cap),
    }
}

fn descriptor(text: &str) -> Result<RackDescriptor> {
    text.parse().with_context(|| format!("invalid rack {text:?}"))
}

fn cmd_axioms(rack: &str, cap: u128) -> Result<Verdict> {
    let rack = descriptor(rack)?.build(cap)?;
    let verdict = rack.verify_axioms()?;
    println!("rack: {}", rack.label());
    println!("elements: {}", rack.len());
    match verdict {
        AxiomVerdict::Valid => {
            println!("axioms: valid");
            Ok(Verdict::Yes)
        }
        AxiomVerdict::NotBijective { x, y1, y2 } => {
            let name = |i| rack.element_name(i);
            println!("axioms: invalid, {} ▷ {} = {} ▷ {}", name(x), name(y1), name(x), name(y2));
            Ok(Verdict::No)
        }
        AxiomVerdict::NotSelfDistributive { x, y, z } => {
            let name = |i| rack.element_name(i);
            println!("axioms: invalid, self-distributivity fails at ({}, {}, {})", name(x), name(y), name(z));
            Ok(Verdict::No)
        }
    }
}

fn cmd_construct(rack: &str, list: bool, cap: u128) -> Result<Verdict> {
    let d = descriptor(rack)?;
    println!("rack: {d}");
    println!("elements: {}", d.size());
    if list {
        let rack = d.build(cap)?;
        for i in 0..rack.len() {
            println!("{}", rack.element_name(i));
        }
    }
    Ok(Verdict::Yes)
}

struct ProveDefaults {
    n: usize,
    t: usize,
    ell: Option<&'static str>,
}

fn prove_defaults(g: Generator) -> ProveDefaults {
    match g {
        Generator::Id1 => ProveDefaults { n: 5, t: 4, ell: None },
        Generator::Id12r => ProveDefaults { n: 5, t: 3, ell: Some("(1 2)(3 4)") },
        Generator::Id124 => ProveDefaults { n: 6, t: 2, ell: Some("(1 2)(3 4 5 6)") },
        Generator::Id14 => ProveDefaults { n: 8, t: 2, ell: Some("(1 2 3 4)(5 6 7 8)") },
        Generator::Iota12 => ProveDefaults { n: 5, t: 2, ell: None },
        Generator::Iota222 => ProveDefaults { n: 6, t: 2, ell: Some("(3 4)(5 6)") },
        Generator::Iota12r => ProveDefaults { n: 7, t: 3, ell: Some("(3 4)(5 6)") },
    }
}

fn cmd_prove(
    name: &str,
    n: Option<usize>,
    t: Option<usize>,
    ell: Option<&str>,
    ty: Option<&str>,
    out: Option<PathBuf>,
) -> Result<Verdict> {
    let Some(generator) = Generator::from_name(name) else {
        let names: Vec<&str> = Generator::ALL.iter().map(|g| g.name()).collect();
        bail!("unknown generator {name:?}; expected one of {}", names.join(", "));
    };
    let defaults = prove_defaults(generator);
    let n = n.unwrap_or(defaults.n);
    let t = t.unwrap_or(defaults.t);
    let ell: Option<Permutation> = match (ell, ty) {
        (Some(cycles), _) => Some(Permutation::parse_cycles(cycles, n)?),
        (None, Some(ty)) => {
            let ty = CycleType::parse(ty)?;
            if ty.degree() != n {
                bail!("cycle type {ty} does not partition n = {n}");
            }
            let theta = if generator.name().starts_with("iota") { TwistKind::Iota12 } else { TwistKind::Identity };
            if ty.parity() != theta.parity() {
                bail!("cycle type {ty} of ℓu has the wrong parity for {theta}");
            }
            Some(theta.canonical_ell(&ty))
        }
        (None, None) => defaults.ell.map(|c| Permutation::parse_cycles(c, n)).transpose()?,
    };
    let generated = generate(generator, n, t, ell.as_ref())?;
    let mut parameters = BTreeMap::from([("n".to_string(), n.to_string()), ("t".to_string(), t.to_string())]);
    if let Some(ell) = &ell {
        parameters.insert("ell".to_string(), ell.to_string());
    }
    let doc = CertificateDocument::from_certificate(&generated.certificate, Some(generator), parameters);
    let path = out.unwrap_or_else(|| PathBuf::from(format!("{}.cert.json", generator.name())));
    fs::write(&path, doc.to_json()).with_context(|| format!("writing {}", path.display()))?;

    let reread = CertificateDocument::from_json(&fs::read_to_string(&path)?)?;
    let verdict = reread.verify(DEFAULT_CAP)?;
    println!("generator: {generator}");
    println!("rack: {}", doc.rack);
    println!("|R| = {}, |S| = {}", doc.r_block.len(), doc.s_block.len());
    println!("r = ({})", doc.r.join(", "));
    println!("s = ({})", doc.s.join(", "));
    println!("certificate: {}", path.display());
    report_document_verdict(&verdict)
}

fn report_document_verdict(verdict: &DocumentVerdict) -> Result<Verdict> {
    match verdict {
        DocumentVerdict::Valid => {
            println!("verification: valid");
            Ok(Verdict::Yes)
        }
        DocumentVerdict::NonMember(x) => {
            println!("verification: invalid, {x} is not an element of the rack");
            Ok(Verdict::No)
        }
        DocumentVerdict::Invalid(reason) => {
            println!("verification: invalid, {reason}");
            Ok(Verdict::No)
        }
    }
}

fn cmd_verify(file: &Path, cap: u128) -> Result<Verdict> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let doc = CertificateDocument::from_json(&text)?;
    println!("rack: {}", doc.rack);
    report_document_verdict(&doc.verify(cap)?)
}

fn cmd_search(rack: &str, budget: u64, cap: u128, out: Option<&Path>) -> Result<Verdict> {
    let rack = descriptor(rack)?.build(cap)?;
    println!("rack: {}", rack.label());
    println!("elements: {}", rack.len());
    match rack.decide_type_d(budget)? {
        EncodedDecision::TypeD(cert) => {
            let doc = CertificateDocument::from_encoded(cert);
            let json = doc.to_json();
            let verdict = CertificateDocument::from_json(&json)?.verify(cap)?;
            if !verdict.is_valid() {
                bail!("search produced a certificate that fails verification: {verdict:?}");
            }
            println!("type D: r = ({}), s = ({})", doc.r.join(", "), doc.s.join(", "));
            println!("|R| = {}, |S| = {}", doc.r_block.len(), doc.s_block.len());
            match out {
                Some(path) => {
                    fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
                    println!("certificate: {}", path.display());
                }
                None => print!("{json}"),
            }
            Ok(Verdict::Yes)
        }
        EncodedDecision::NotTypeD { pairs } => {
            println!("not type D (exhaustive, {pairs} ordered pairs)");
            Ok(Verdict::No)
        }
        EncodedDecision::BudgetExhausted { pairs } => {
            println!("inconclusive: budget exhausted after {pairs} ordered pairs");
            Ok(Verdict::Inconclusive)
        }
    }
}

fn file_stem(n: usize, t: usize, theta: TwistKind, ty: &CycleType) -> String {
    let theta = match theta {
        TwistKind::Identity => "id",
        TwistKind::Iota12 => "iota12",
    };
    let ty: String = ty
        .to_string()
        .chars()
        .filter_map(|c| match c {
            '(' | ')' => None,
            ',' => Some('_'),
            '^' => Some('p'),
            c => Some(c),
        })
        .collect();
    format!("alt{n}-t{t}-{theta}-{ty}")
}

fn cmd_report(
    n: RangeInclusive<usize>,
    t: RangeInclusive<usize>,
    format: Format,
    cert_dir: Option<&Path>,
    search_negatives: bool,
) -> Result<Verdict> {
    let mut report = build_report(ReportOptions { n, t, search_negatives, ..ReportOptions::default() })?;
    if let Some(dir) = cert_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut paths = Vec::new();
        for (i, row) in report.rows().iter().enumerate() {
            if let Evidence::Certificate(cert) = row.evidence() {
                let e = row.entry();
                let path = dir.join(format!("{}.cert.json", file_stem(e.n, e.t, e.theta, &e.cycle_type)));
                fs::write(&path, cert.document().to_json()).with_context(|| format!("writing {}", path.display()))?;
                paths.push((i, path.display().to_string()));
            }
        }
        for (i, path) in paths {
            report.set_certificate_path(i, path);
        }
    }
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
    Ok(Verdict::Yes)
}

fn cmd_cocycle(rack: &str, m: u32, limit: u64, sample: bool, seed: u64, cap: u128) -> Result<Verdict> {
    let rack = descriptor(rack)?.build(cap)?;
    let table = rack.op_table()?;
    let sampling = sample.then_some(Sampling { seed });
    let report = equivalence_sweep(&table, m, limit, sampling)?;
    println!("rack: {}", rack.label());
    println!("elements: {}", rack.len());
    println!("order: {m}");
    println!("tables visited: {}{}", report.visited, if report.exhaustive { " (all)" } else { " (sampled)" });
    println!("cocycles: {}", report.cocycles);
    println!("braid solutions: {}", report.braids);
    println!("cocycle but not braid: {}", report.cocycle_not_braid);
    println!("braid but not cocycle: {}", report.braid_not_cocycle);
    if report.equivalence_holds() {
        println!("equivalence: holds");
        Ok(Verdict::Yes)
    } else {
        println!("equivalence: fails");
        Ok(Verdict::No)
    }
}

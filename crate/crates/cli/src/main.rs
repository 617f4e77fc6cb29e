//! Command-line front end: apply operator words to basis states, run the
//! relation checker, infer the Cartan pairing, tabulate weight data and
//! export operator matrices.
//!
//! Exit codes: 0 on success, 1 when `verify` or `claims` finds failing
//! instances, 2 on malformed input (one-line diagnostic on stderr).

use clap::{Args, Parser, Subcommand, ValueEnum};
use rsfock_core::relcheck::{self, CheckReport, PairingTable, RelationId, Status};
use rsfock_core::{
    apply_word, check_claims, check_properties, operator_matrix, weight_multiplicities,
    DConvention, FockConfig, FockVector, Laurent2, Orientation, Partition, ResidueConfig, Word,
};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rsfock", version, about = "Two-parameter Fock representation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator word to a basis state and print the image vector
    Apply(ApplyArgs),
    /// Run relation checks and report pass/fail per instance
    Verify(VerifyArgs),
    /// Infer the Cartan pairing from conjugation ratios and diff it
    /// against the closed formula
    Pairing(PairingArgs),
    /// Tabulate weight multiplicities (text/json) or the dimension
    /// series (csv)
    Char(CharArgs),
    /// Export the matrix of an operator word over the truncated basis
    Matrix(MatrixArgs),
    /// Run the counting-identity suite on all diagrams up to a size bound
    Claims(ClaimsArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Number of residue classes (rank), at least 2
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Charge shifting all residues
    #[arg(long, default_value_t = 0)]
    offset: usize,
    /// Truncation bound N on diagram size
    #[arg(long)]
    max: Option<u32>,
    /// Eigenvalue convention for the degree generators D, D'
    #[arg(long, value_enum, default_value_t = DFlag::CellCount)]
    d_convention: DFlag,
    /// Which column side the action exponents count
    #[arg(long, value_enum, default_value_t = OrientationFlag::Standard)]
    orientation: OrientationFlag,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DFlag {
    CellCount,
    Literal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientationFlag {
    Standard,
    Flip,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct ApplyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Operator word, e.g. "f1 e0 w2 w'0 D^-1 g'", applied right to left;
    /// omitting it applies the identity
    #[arg(long)]
    op: Option<String>,
    /// Starting basis partition, e.g. "2,1" ("-" for the vacuum)
    #[arg(long)]
    state: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated relation groups: all, A1..A7, hw, claims,
    /// specialization, props
    #[arg(long, default_value = "all")]
    relations: String,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// Attach wall-clock millis to each report
    #[arg(long)]
    timings: bool,
    /// Seed for the randomized props group
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct PairingArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CharArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Operator word whose matrix to export
    #[arg(long)]
    op: String,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ClaimsArgs {
    #[command(flatten)]
    common: CommonArgs,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Apply(args) => cmd_apply(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Pairing(args) => cmd_pairing(args),
        Command::Char(args) => cmd_char(args),
        Command::Matrix(args) => cmd_matrix(args),
        Command::Claims(args) => cmd_claims(args),
    }
}

impl CommonArgs {
    fn config(&self, default_max: u32) -> Result<FockConfig, String> {
        if self.n < 2 {
            return Err(format!("--n must be at least 2, got {}", self.n));
        }
        if self.offset >= self.n {
            return Err(format!(
                "--offset must be below --n, got {} with n = {}",
                self.offset, self.n
            ));
        }
        let cfg = FockConfig::new(self.n, self.offset, self.max.unwrap_or(default_max));
        let cfg = match self.d_convention {
            DFlag::CellCount => cfg,
            DFlag::Literal => cfg.with_d_convention(DConvention::Literal),
        };
        Ok(match self.orientation {
            OrientationFlag::Standard => cfg,
            OrientationFlag::Flip => cfg.with_orientation(Orientation::Flip),
        })
    }
}

fn install_pool(jobs: Option<usize>) -> Result<(), String> {
    let Some(jobs) = jobs else { return Ok(()) };
    if jobs == 0 {
        return Err("--jobs must be positive".to_string());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| e.to_string())
}

fn csv_field(text: &str) -> String {
    format!("\"{}\"", text.replace('"', "\"\""))
}

fn cmd_apply(args: ApplyArgs) -> Result<u8, String> {
    let word: Option<Word> = match &args.op {
        Some(text) => Some(text.parse().map_err(|e| format!("{e}"))?),
        None => None,
    };
    let state: Partition = args.state.parse().map_err(|e| format!("{e}"))?;
    // without an explicit bound, leave just enough headroom for the word
    let headroom = word.as_ref().map_or(0, Word::f_degree);
    let default_max = 8.max(state.size() + headroom);
    let cfg = args.common.config(default_max)?;
    let image = match word {
        Some(word) => {
            word.validate(cfg.n()).map_err(|e| format!("{e}"))?;
            apply_word(&word, &FockVector::basis(state), &cfg).map_err(|e| format!("{e}"))?
        }
        None => FockVector::basis(state),
    };
    match args.common.format {
        Format::Text => println!("{image}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&image).unwrap()),
        Format::Csv => {
            println!("partition,coeff");
            for (partition, coeff) in image.iter() {
                println!(
                    "{},{}",
                    csv_field(&partition.to_string()),
                    csv_field(&coeff.to_string())
                );
            }
        }
    }
    Ok(0)
}

fn selected_reports(args: &VerifyArgs, cfg: &FockConfig) -> Result<Vec<CheckReport>, String> {
    let mut groups = Vec::new();
    for token in args.relations.split(',') {
        let token = token.trim().to_ascii_lowercase();
        match token.as_str() {
            "" => {}
            "all" | "a1" | "a2" | "a3" | "a4" | "a5" | "a6" | "a7" | "hw" | "claims"
            | "specialization" | "spec" | "props" => groups.push(token),
            other => return Err(format!("unknown relation group '{other}'")),
        }
    }
    if groups.is_empty() {
        return Err("no relation groups selected".to_string());
    }
    let wants = |g: &str| groups.iter().any(|t| t == g || t == "all");
    let mut reports = Vec::new();
    if wants("a1") || wants("a2") || wants("a3") {
        let scan = relcheck::scan_conjugations(cfg);
        reports.extend(scan.reports.into_iter().filter(|r| match r.relation {
            RelationId::A1Central { .. } => wants("a1"),
            RelationId::A2Omega { .. } | RelationId::A2D { .. } => wants("a2"),
            RelationId::A3OmegaPrime { .. } | RelationId::A3DPrime { .. } => wants("a3"),
            _ => false,
        }));
    }
    if wants("a4") {
        reports.extend(relcheck::check_a4(cfg));
    }
    if wants("a5") {
        reports.extend(relcheck::check_commuting(cfg));
    }
    if wants("a6") || wants("a7") {
        reports.extend(
            relcheck::check_serre(cfg)
                .into_iter()
                .filter(|r| match r.relation {
                    RelationId::A6 { .. } => wants("a6"),
                    RelationId::A7 { .. } => wants("a7"),
                    _ => false,
                }),
        );
    }
    if wants("hw") {
        reports.extend(relcheck::check_highest_weight(cfg));
    }
    if wants("claims") {
        reports.extend(check_claims(&cfg.residues, cfg.max_size));
    }
    if wants("specialization") || groups.iter().any(|t| t == "spec") {
        reports.extend(relcheck::check_specialization(cfg));
    }
    if groups.iter().any(|t| t == "props") {
        reports.extend(check_properties(cfg, args.seed, 24));
    }
    Ok(reports)
}

fn print_reports(reports: &[CheckReport], format: Format) {
    match format {
        Format::Text => {
            let mut counts = (0usize, 0usize, 0usize);
            for report in reports {
                let tag = match report.status {
                    Status::Pass => {
                        counts.0 += 1;
                        "pass"
                    }
                    Status::Fail => {
                        counts.1 += 1;
                        "FAIL"
                    }
                    Status::Skipped => {
                        counts.2 += 1;
                        "skip"
                    }
                };
                let mut line = format!(
                    "{tag} {} n={} offset={} N={}",
                    report.relation, report.n, report.offset, report.max_size
                );
                if let Some(witness) = &report.witness {
                    line.push_str(&format!(
                        " witness: {}",
                        serde_json::to_string(witness).unwrap()
                    ));
                }
                if let Some(millis) = report.millis {
                    line.push_str(&format!(" millis={millis}"));
                }
                println!("{line}");
            }
            println!(
                "{} passed, {} failed, {} skipped",
                counts.0, counts.1, counts.2
            );
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(reports).unwrap()),
        Format::Csv => {
            println!("relation,n,offset,N,status,millis");
            for report in reports {
                let status = match report.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Skipped => "skipped",
                };
                println!(
                    "{},{},{},{},{},{}",
                    csv_field(&report.relation.to_string()),
                    report.n,
                    report.offset,
                    report.max_size,
                    status,
                    report.millis.map_or(String::new(), |m| m.to_string())
                );
            }
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, String> {
    install_pool(args.jobs)?;
    let cfg = args.common.config(8)?;
    let started = std::time::Instant::now();
    let mut reports = selected_reports(&args, &cfg)?;
    if args.timings {
        let millis = started.elapsed().as_millis() as u64;
        for report in &mut reports {
            report.millis = Some(millis);
        }
    }
    print_reports(&reports, args.common.format);
    Ok(if relcheck::all_pass(&reports) { 0 } else { 1 })
}

fn cmd_pairing(args: PairingArgs) -> Result<u8, String> {
    let default_max = args.common.n as u32 + 4;
    let cfg = args.common.config(default_max)?;
    let scan = relcheck::scan_conjugations(&cfg);
    let printed = relcheck::printed_pairing(cfg.n());
    let entry = |table: &PairingTable, i: usize, j: usize| -> String {
        table.entries[i][j]
            .map_or_else(|| "?".to_string(), |(a, b)| Laurent2::monomial(1, a, b).to_string())
    };
    match args.common.format {
        Format::Text => {
            for (label, table) in [("inferred", &scan.table), ("printed", &printed)] {
                println!("{label} pairing <i,j> (rows i, cols j), n={}:", cfg.n());
                for i in 0..cfg.n() {
                    let row: Vec<String> =
                        (0..cfg.n()).map(|j| format!("{:>8}", entry(table, i, j))).collect();
                    println!("  {}", row.join(" "));
                }
            }
            if scan.diffs.is_empty() {
                println!("diffs: none");
            } else {
                for d in &scan.diffs {
                    println!(
                        "diff ({},{}): inferred {}, printed {}",
                        d.i, d.j, d.inferred, d.printed
                    );
                }
            }
            let clashes = scan.reports.iter().filter(|r| !r.passed()).count();
            println!("{clashes} conjugation checks fail (non-constant or mismatched ratios)");
        }
        Format::Json => {
            let value = serde_json::json!({
                "inferred": scan.table,
                "printed": printed,
                "diffs": scan.diffs,
                "reports": scan.reports,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Csv => {
            println!("i,j,inferred,printed,agrees");
            for i in 0..cfg.n() {
                for j in 0..cfg.n() {
                    let a = entry(&scan.table, i, j);
                    let b = entry(&printed, i, j);
                    println!("{i},{j},{},{},{}", csv_field(&a), csv_field(&b), a == b);
                }
            }
        }
    }
    Ok(0)
}

fn cmd_char(args: CharArgs) -> Result<u8, String> {
    let cfg = args.common.config(12)?;
    let tables = weight_multiplicities(&cfg).map_err(|e| format!("{e}"))?;
    match args.common.format {
        Format::Text => {
            for (size, table) in tables.iter().enumerate() {
                for (m_vector, count) in table {
                    let m: Vec<String> = m_vector.iter().map(u64::to_string).collect();
                    println!("size {size}  m=({})  count={count}", m.join(","));
                }
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = tables
                .iter()
                .enumerate()
                .flat_map(|(size, table)| {
                    table.iter().map(move |(m_vector, count)| {
                        serde_json::json!({
                            "size": size,
                            "mVector": m_vector,
                            "count": count,
                        })
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows).unwrap());
        }
        Format::Csv => {
            println!("size,dimension");
            for (size, table) in tables.iter().enumerate() {
                let dim: u64 = table.values().sum();
                println!("{size},{dim}");
            }
        }
    }
    Ok(0)
}

fn cmd_matrix(args: MatrixArgs) -> Result<u8, String> {
    install_pool(args.jobs)?;
    let word: Word = args.op.parse().map_err(|e| format!("{e}"))?;
    let cfg = args.common.config(8)?;
    word.validate(cfg.n()).map_err(|e| format!("{e}"))?;
    let matrix = operator_matrix(&word, &cfg).map_err(|e| format!("{e}"))?;
    match args.common.format {
        Format::Text => {
            for (target, source, coeff) in matrix.triples() {
                println!("{source} -> {target}: {coeff}");
            }
        }
        Format::Json => {
            let entries: Vec<serde_json::Value> = matrix
                .entries()
                .iter()
                .map(|(row, col, coeff)| {
                    serde_json::json!({
                        "row": row,
                        "col": col,
                        "coeff": coeff.to_string(),
                    })
                })
                .collect();
            let value = serde_json::json!({
                "op": word.to_string(),
                "n": cfg.n(),
                "offset": cfg.offset(),
                "N": cfg.max_size,
                "basis": matrix.basis(),
                "entries": entries,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Csv => {
            println!("row,col,source,target,coeff");
            for &(row, col, ref coeff) in matrix.entries() {
                println!(
                    "{row},{col},{},{},{}",
                    csv_field(&matrix.basis()[col].to_string()),
                    csv_field(&matrix.basis()[row].to_string()),
                    csv_field(&coeff.to_string())
                );
            }
        }
    }
    Ok(0)
}

fn cmd_claims(args: ClaimsArgs) -> Result<u8, String> {
    if args.common.n < 2 {
        return Err(format!("--n must be at least 2, got {}", args.common.n));
    }
    let rc = ResidueConfig::new(args.common.n, args.common.offset % args.common.n);
    let reports = check_claims(&rc, args.common.max.unwrap_or(14));
    print_reports(&reports, args.common.format);
    Ok(if relcheck::all_pass(&reports) { 0 } else { 1 })
}

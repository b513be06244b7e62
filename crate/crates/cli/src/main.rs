//! Command-line surface for the free-group endomorphism toolkit.
//!
//! Exit codes: 0 success, 2 invalid input, 3 budget exceeded.

mod render;

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use render::decimal_string;
use wecken_core::census::{
    self, density_trend, exact_census, mc_census, xp_sequence, Category, CensusError, McCensus,
    DEFAULT_BUDGET,
};
use wecken_core::classify::classification_json;
use wecken_core::formulas::{self, FormulaError};
use wecken_core::freegroup::{format_word, parse_word, BallSpec, Rank, Word, WordError, WordStyle};
use wecken_core::wagner::{tail_equalities, wagner_tails, Endomorphism, EndomorphismError};

#[derive(Parser)]
#[command(
    name = "wecken",
    version,
    about = "Wagner-tail analysis, Wecken certification, and density experiments \
             for free-group endomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Wagner tails and tail-equality records of one endomorphism.
    Tails(EndoArgs),
    /// Classify one endomorphism and print the JSON report.
    Classify(EndoArgs),
    /// Exact census of every endomorphism over a ball.
    Census(ExactArgs),
    /// Exact no-equality fractions x_p for radii 1..=max-p.
    Xp(ExactArgs),
    /// Monte Carlo density estimates over a ball.
    Mc(McArgs),
    /// Certified-density lower-bound table, or per-k equality-bound tables.
    Bounds(BoundsArgs),
    /// Monte Carlo trend of category densities across ranks.
    Trend(TrendArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Suppress the timestamp comment line above CSV output.
    #[arg(long)]
    no_header: bool,
    /// Significant digits for decimal renderings of exact values.
    #[arg(long, default_value_t = 12)]
    precision: usize,
}

#[derive(Args)]
struct EndoArgs {
    /// Rank of the free group.
    #[arg(long)]
    rank: Option<u32>,
    /// Image words of a_1..a_n in the signed-integer codec ("1 -2", "e").
    /// Consumes the remaining arguments, so pass it last.
    #[arg(long, num_args = 1.., allow_hyphen_values = true)]
    images: Vec<String>,
    /// Inline endomorphism JSON {"rank":n,"images":[...]} instead of
    /// --rank/--images.
    #[arg(long, conflicts_with_all = ["rank", "images"])]
    json: Option<String>,
    /// Read and print words in alpha style (a..z, uppercase = inverse);
    /// ranks up to 26 only.
    #[arg(long)]
    alpha: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ExactArgs {
    /// Rank of the free group.
    #[arg(long)]
    rank: u32,
    /// Ball radius p.
    #[arg(long = "max-p")]
    max_p: usize,
    /// Cap on the number of classifications an exact run may cost.
    #[arg(long, env = "WECKEN_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Parallel shards; defaults to the available parallelism, 1 forces
    /// sequential execution.
    #[arg(long)]
    shards: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct McArgs {
    /// Rank of the free group.
    #[arg(long)]
    rank: u32,
    #[arg(long = "max-p")]
    max_p: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    shards: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct BoundsArgs {
    /// Single rank to tabulate.
    #[arg(long, conflicts_with = "n_range")]
    n: Option<u32>,
    /// Inclusive rank range, e.g. 2..100.
    #[arg(long = "n-range")]
    n_range: Option<String>,
    /// Emit per-k equality-bound rows for k = 1..=K instead of the
    /// certified-density table.
    #[arg(long = "k-max")]
    k_max: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct TrendArgs {
    /// Ranks to measure, comma separated.
    #[arg(long = "n-list", value_delimiter = ',', required = true)]
    n_list: Vec<u32>,
    /// Word-length cap override; default is max(50, 4n) per rank.
    #[arg(long = "max-p")]
    max_p: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    shards: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Budget(m) => m,
        }
    }
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError::Invalid(message.into())
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        invalid(e.to_string())
    }
}

impl From<EndomorphismError> for CliError {
    fn from(e: EndomorphismError) -> Self {
        invalid(e.to_string())
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        invalid(e.to_string())
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        CliError::Budget(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Tails(args) => cmd_tails(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Census(args) => cmd_census(args),
        Command::Xp(args) => cmd_xp(args),
        Command::Mc(args) => cmd_mc(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Trend(args) => cmd_trend(args),
    }
}

fn resolve_shards(requested: Option<usize>) -> usize {
    requested
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        })
        .max(1)
}

fn header_comment(out: &OutputArgs, label: &str) {
    if out.no_header {
        return;
    }
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    println!("# wecken {label} generated-at-unix={now}");
}

fn csv_quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn word_style(alpha: bool) -> WordStyle {
    if alpha {
        WordStyle::Alpha
    } else {
        WordStyle::Signed
    }
}

fn parse_endo(args: &EndoArgs) -> Result<Endomorphism, CliError> {
    if let Some(text) = &args.json {
        return Ok(Endomorphism::from_json(text)?);
    }
    let n = args
        .rank
        .ok_or_else(|| invalid("--rank is required unless --json is given"))?;
    let rank = Rank::new(n)?;
    if let Some(flagish) = args.images.iter().find(|t| t.starts_with("--")) {
        return Err(invalid(format!(
            "`{flagish}` looks like an option caught by --images; \
             --images consumes the remaining arguments, so pass it last"
        )));
    }
    if args.images.len() != n as usize {
        return Err(invalid(format!(
            "expected {} image words via --images, got {}",
            n,
            args.images.len()
        )));
    }
    let style = word_style(args.alpha);
    let mut images = Vec::with_capacity(args.images.len());
    for (i, text) in args.images.iter().enumerate() {
        let parsed = parse_word(text, rank, style)
            .map_err(|e| invalid(format!("image {}: {}", i + 1, e)))?;
        if parsed.reduction_applied {
            eprintln!(
                "warning: image {} was not freely reduced; using the reduced form",
                i + 1
            );
        }
        images.push(parsed.word);
    }
    Ok(Endomorphism::new(rank, images)?)
}

fn render_word(word: &Word, style: WordStyle) -> Result<String, CliError> {
    Ok(format_word(word, style)?)
}

fn cmd_tails(args: EndoArgs) -> Result<(), CliError> {
    let phi = parse_endo(&args)?;
    let style = word_style(args.alpha);
    let tails = wagner_tails(&phi);
    let equalities = tail_equalities(&tails);
    match args.out.format.unwrap_or(Format::Text) {
        Format::Text => {
            for t in &tails {
                if t.is_trivial() {
                    println!(
                        "slot 0: trivial w={} wbar={}",
                        render_word(&t.w, style)?,
                        render_word(&t.w_bar, style)?
                    );
                } else {
                    println!(
                        "slot {}: gen={} pos={} sign={:+} w={} wbar={}",
                        t.slot,
                        t.location,
                        t.position,
                        t.sign,
                        render_word(&t.w, style)?,
                        render_word(&t.w_bar, style)?
                    );
                }
            }
            if equalities.is_empty() {
                println!("no tail equalities");
            } else {
                println!("equalities:");
                for e in &equalities {
                    println!(
                        "  {}[{}] == {}[{}] len={}",
                        e.a.side, e.a.slot, e.b.side, e.b.slot, e.len
                    );
                }
            }
        }
        Format::Json => {
            let slots: Vec<_> = tails
                .iter()
                .map(|t| {
                    Ok(json!({
                        "slot": t.slot,
                        "location": t.location,
                        "position": t.position,
                        "sign": t.sign,
                        "w": render_word(&t.w, style)?,
                        "wbar": render_word(&t.w_bar, style)?,
                    }))
                })
                .collect::<Result<_, CliError>>()?;
            let eqs: Vec<_> = equalities
                .iter()
                .map(|e| {
                    json!({
                        "a": {"slot": e.a.slot, "side": e.a.side.to_string()},
                        "b": {"slot": e.b.slot, "side": e.b.side.to_string()},
                        "len": e.len,
                    })
                })
                .collect();
            println!(
                "{}",
                json!({"rank": phi.rank().get(), "slots": slots, "equalities": eqs})
            );
        }
        Format::Csv => return Err(invalid("tails has no CSV form; use text or json")),
    }
    Ok(())
}

fn cmd_classify(args: EndoArgs) -> Result<(), CliError> {
    let phi = parse_endo(&args)?;
    println!("{}", classification_json(&phi));
    Ok(())
}

fn ak_json(counts: &wecken_core::census::CensusCounts) -> String {
    serde_json::to_string(&counts.ak).expect("map serialization cannot fail")
}

fn cmd_census(args: ExactArgs) -> Result<(), CliError> {
    let rank = Rank::new(args.rank)?;
    let shards = resolve_shards(args.shards);
    let census = exact_census(BallSpec::new(rank, args.max_p), args.budget, shards)?;
    let xp = census.vprime_fraction();
    match args.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            header_comment(&args.out, "census");
            println!("n,p,total,remnant,vprime,v,a0,b,ak_json,wecken_certified,xp_num,xp_den");
            let c = &census.counts;
            println!(
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                census.rank,
                census.max_len,
                census.total,
                c.remnant,
                c.vprime,
                c.v,
                c.a0,
                c.b,
                csv_quote(&ak_json(c)),
                c.wecken_certified,
                xp.numer(),
                xp.denom()
            );
        }
        Format::Json => {
            let c = &census.counts;
            println!(
                "{}",
                json!({
                    "n": census.rank,
                    "p": census.max_len,
                    "total": census.total,
                    "remnant": c.remnant,
                    "vprime": c.vprime,
                    "v": c.v,
                    "a0": c.a0,
                    "b": c.b,
                    "ak": c.ak,
                    "wecken_certified": c.wecken_certified,
                    "xp_num": xp.numer().to_string(),
                    "xp_den": xp.denom().to_string(),
                })
            );
        }
        Format::Text => return Err(invalid("census emits csv or json")),
    }
    Ok(())
}

fn cmd_xp(args: ExactArgs) -> Result<(), CliError> {
    let rank = Rank::new(args.rank)?;
    let shards = resolve_shards(args.shards);
    let seq = xp_sequence(rank, args.max_p, args.budget, shards);
    if let Some(t) = &seq.truncated {
        eprintln!(
            "notice: radius {} needs {} classifications, over the budget of {}; \
             emitting the prefix",
            t.at_radius, t.required, args.budget
        );
        if seq.values.is_empty() {
            return Err(CliError::Budget(format!(
                "radius {} needs {} classifications, over the budget of {}",
                t.at_radius, t.required, args.budget
            )));
        }
    }
    match args.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            header_comment(&args.out, "xp");
            println!("p,xp_num,xp_den,xp_decimal");
            for (i, x) in seq.values.iter().enumerate() {
                println!(
                    "{},{},{},{}",
                    i + 1,
                    x.numer(),
                    x.denom(),
                    decimal_string(x, args.out.precision)
                );
            }
        }
        Format::Json => {
            let values: Vec<_> = seq
                .values
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    json!({
                        "p": i + 1,
                        "xp_num": x.numer().to_string(),
                        "xp_den": x.denom().to_string(),
                        "xp_decimal": decimal_string(x, args.out.precision),
                    })
                })
                .collect();
            let truncated = seq
                .truncated
                .as_ref()
                .map(|t| json!({"at_p": t.at_radius, "required": t.required.to_string()}));
            println!(
                "{}",
                json!({"n": seq.rank, "values": values, "truncated": truncated})
            );
        }
        Format::Text => return Err(invalid("xp emits csv or json")),
    }
    Ok(())
}

fn mc_csv_rows(mc: &McCensus) -> String {
    let mut out = String::new();
    for est in mc.estimates() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.6},{:.6},{:.6}",
            mc.rank,
            mc.max_len,
            mc.samples,
            mc.seed,
            mc.shards,
            est.category.as_str(),
            est.fraction,
            est.ci_low,
            est.ci_high
        );
    }
    out
}

fn cmd_mc(args: McArgs) -> Result<(), CliError> {
    let rank = Rank::new(args.rank)?;
    if args.samples == 0 {
        return Err(invalid("--samples must be at least 1"));
    }
    let shards = resolve_shards(args.shards);
    let mc = mc_census(
        BallSpec::new(rank, args.max_p),
        args.samples,
        args.seed,
        shards,
    );
    match args.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            header_comment(&args.out, "mc");
            println!("n,p,samples,seed,shards,category,fraction,ci_low,ci_high");
            print!("{}", mc_csv_rows(&mc));
        }
        Format::Json => {
            let estimates: Vec<_> = mc
                .estimates()
                .iter()
                .map(|est| {
                    json!({
                        "category": est.category.as_str(),
                        "fraction": est.fraction,
                        "ci_low": est.ci_low,
                        "ci_high": est.ci_high,
                    })
                })
                .collect();
            println!(
                "{}",
                json!({
                    "n": mc.rank,
                    "p": mc.max_len,
                    "samples": mc.samples,
                    "seed": mc.seed,
                    "shards": mc.shards,
                    "rng_id": census::RNG_ID,
                    "ak": mc.counts.ak,
                    "estimates": estimates,
                })
            );
        }
        Format::Text => return Err(invalid("mc emits csv or json")),
    }
    Ok(())
}

fn parse_rank_list(args: &BoundsArgs) -> Result<Vec<u32>, CliError> {
    if let Some(n) = args.n {
        return Ok(vec![n]);
    }
    let range = args
        .n_range
        .as_deref()
        .ok_or_else(|| invalid("give --n or --n-range"))?;
    let (lo, hi) = range
        .split_once("..")
        .ok_or_else(|| invalid(format!("bad range `{range}`; expected like 2..100")))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u32 = lo
        .parse()
        .map_err(|_| invalid(format!("bad range start `{lo}`")))?;
    let hi: u32 = hi
        .parse()
        .map_err(|_| invalid(format!("bad range end `{hi}`")))?;
    if lo > hi {
        return Err(invalid(format!("empty range `{range}`")));
    }
    Ok((lo..=hi).collect())
}

fn cmd_bounds(args: BoundsArgs) -> Result<(), CliError> {
    let ranks = parse_rank_list(&args)?;
    let precision = args.out.precision;
    let format = args.out.format.unwrap_or(Format::Csv);
    if let Some(k_max) = args.k_max {
        let mut rows = Vec::new();
        for &n in &ranks {
            let rank = Rank::new(n)?;
            for k in 1..=k_max {
                rows.push((n, k, formulas::tail_equality_bound(rank, k)?));
            }
        }
        match format {
            Format::Csv => {
                header_comment(&args.out, "bounds-per-k");
                println!("n,k,bound_num,bound_den,bound_decimal");
                for (n, k, b) in &rows {
                    println!(
                        "{},{},{},{},{}",
                        n,
                        k,
                        b.numer(),
                        b.denom(),
                        decimal_string(b, precision)
                    );
                }
            }
            Format::Json => {
                let rows: Vec<_> = rows
                    .iter()
                    .map(|(n, k, b)| {
                        json!({
                            "n": n,
                            "k": k,
                            "bound_num": b.numer().to_string(),
                            "bound_den": b.denom().to_string(),
                            "bound_decimal": decimal_string(b, precision),
                        })
                    })
                    .collect();
                println!("{}", json!(rows));
            }
            Format::Text => return Err(invalid("bounds emits csv or json")),
        }
        return Ok(());
    }
    let mut rows = Vec::new();
    for &n in &ranks {
        rows.push((n, formulas::wecken_density_lower_bound(Rank::new(n)?)?));
    }
    match format {
        Format::Csv => {
            header_comment(&args.out, "bounds");
            println!("n,lower_bound_num,lower_bound_den,decimal");
            for (n, b) in &rows {
                println!(
                    "{},{},{},{}",
                    n,
                    b.numer(),
                    b.denom(),
                    decimal_string(b, precision)
                );
            }
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(n, b)| {
                    json!({
                        "n": n,
                        "lower_bound_num": b.numer().to_string(),
                        "lower_bound_den": b.denom().to_string(),
                        "decimal": decimal_string(b, precision),
                    })
                })
                .collect();
            println!("{}", json!(rows));
        }
        Format::Text => return Err(invalid("bounds emits csv or json")),
    }
    Ok(())
}

fn cmd_trend(args: TrendArgs) -> Result<(), CliError> {
    if args.samples == 0 {
        return Err(invalid("--samples must be at least 1"));
    }
    let mut ranks = Vec::with_capacity(args.n_list.len());
    for &n in &args.n_list {
        if n < 2 {
            return Err(invalid("trend ranks must be at least 2"));
        }
        ranks.push(Rank::new(n)?);
    }
    let shards = resolve_shards(args.shards);
    let radius = |n: u32| {
        args.max_p
            .unwrap_or_else(|| census::default_trend_radius(n))
    };
    let rows = density_trend(&ranks, radius, args.samples, args.seed, shards);
    let frac = |mc: &McCensus, c: Category| mc.estimate(c).fraction;
    match args.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            header_comment(&args.out, "trend");
            println!(
                "n,p,samples,seed,remnant,vprime,v,a0,b,wecken_certified,\
                 vprime_minus_inv_e,a0_minus_two_over_e,a0_minus_one_minus_inv_e,\
                 b_minus_two_over_e,b_minus_one_minus_inv_e,wecken_bound,\
                 wecken_certified_minus_bound"
            );
            for row in &rows {
                println!(
                    "{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
                    row.rank,
                    row.max_len,
                    row.census.samples,
                    row.master_seed,
                    frac(&row.census, Category::Remnant),
                    frac(&row.census, Category::VPrime),
                    frac(&row.census, Category::V),
                    frac(&row.census, Category::A0),
                    frac(&row.census, Category::B),
                    frac(&row.census, Category::WeckenCertified),
                    row.vprime_minus_inv_e,
                    row.a0_minus_two_over_e,
                    row.a0_minus_one_minus_inv_e,
                    row.b_minus_two_over_e,
                    row.b_minus_one_minus_inv_e,
                    row.wecken_bound,
                    row.wecken_certified_minus_bound,
                );
            }
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|row| {
                    json!({
                        "n": row.rank,
                        "p": row.max_len,
                        "samples": row.census.samples,
                        "seed": row.master_seed,
                        "remnant": frac(&row.census, Category::Remnant),
                        "vprime": frac(&row.census, Category::VPrime),
                        "v": frac(&row.census, Category::V),
                        "a0": frac(&row.census, Category::A0),
                        "b": frac(&row.census, Category::B),
                        "wecken_certified": frac(&row.census, Category::WeckenCertified),
                        "vprime_minus_inv_e": row.vprime_minus_inv_e,
                        "a0_minus_two_over_e": row.a0_minus_two_over_e,
                        "a0_minus_one_minus_inv_e": row.a0_minus_one_minus_inv_e,
                        "b_minus_two_over_e": row.b_minus_two_over_e,
                        "b_minus_one_minus_inv_e": row.b_minus_one_minus_inv_e,
                        "wecken_bound": row.wecken_bound,
                        "wecken_certified_minus_bound": row.wecken_certified_minus_bound,
                    })
                })
                .collect();
            println!("{}", json!(rows));
        }
        Format::Text => return Err(invalid("trend emits csv or json")),
    }
    Ok(())
}

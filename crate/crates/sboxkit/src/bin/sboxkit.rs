//! Command-line frontend: analysis, comparison, affine transformation,
//! bounds lookup and fast-vs-oracle self verification.
//!
//! Exit codes: 0 success, 1 usage error, 2 analysis/precondition error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sboxkit::affine::{apply_affine, random_affine};
use sboxkit::report::{
    analyze, compare, render, render_comparison, AnalyzeOptions, Format, PropertyReport,
};
use sboxkit::sbox::parse_sbox;
use sboxkit::spectral::SsiConvention;
use sboxkit::SBox;

#[derive(Parser)]
#[command(name = "sboxkit", version, about = "S-box cryptographic property analyzer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Builtin S-box id (repeatable where more than one input is accepted)
    #[arg(long = "builtin")]
    builtin: Vec<String>,
    /// Path to an S-box table file (repeatable)
    #[arg(long = "input")]
    input: Vec<PathBuf>,
    /// Output width in bits for parsed tables (inferred when omitted)
    #[arg(long = "width")]
    width: Option<u32>,
}

#[derive(Args, Clone)]
struct ReportArgs {
    /// Metrics to compute: comma-separated ids, or "all"
    #[arg(long = "props", default_value = "all")]
    props: String,
    /// Output format
    #[arg(long = "format", default_value = "text")]
    format: String,
    /// Write output to a file instead of stdout
    #[arg(long = "out")]
    out: Option<PathBuf>,
    /// SSI summation convention
    #[arg(long = "ssi-convention", default_value = "all")]
    ssi_convention: String,
    /// GF(2^n) modulus for the interpolation polynomial, as hex
    #[arg(long = "field-modulus")]
    field_modulus: Option<String>,
    /// Suppress the report timestamp (for reproducible output)
    #[arg(long = "no-timestamp")]
    no_timestamp: bool,
    /// Attach fixture-delta notes from the published comparative table
    #[arg(long = "table5-compare")]
    table5_compare: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a full property report for one S-box
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Compare two or more S-boxes side by side
    Compare {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Apply a seeded random affine transform and print the new table
    Transform {
        #[command(flatten)]
        input: InputArgs,
        /// Seed of the random invertible transform
        #[arg(long = "seed", default_value = "0")]
        seed: u64,
        #[arg(long = "format", default_value = "text")]
        format: String,
        #[arg(long = "out")]
        out: Option<PathBuf>,
    },
    /// Dump the theoretical bounds catalogue for dimensions n (and m)
    Bounds {
        n: u32,
        m: Option<u32>,
        #[arg(long = "format", default_value = "json")]
        format: String,
        #[arg(long = "out")]
        out: Option<PathBuf>,
    },
    /// List builtin S-boxes with dimensions and provenance
    ListBuiltins,
    /// Run fast-vs-definitional oracle checks on one S-box
    Verify {
        #[command(flatten)]
        input: InputArgs,
    },
}

fn load_inputs(args: &InputArgs) -> sboxkit::Result<Vec<SBox>> {
    let mut boxes = Vec::new();
    for id in &args.builtin {
        boxes.push(sboxkit::corpus::builtin(id)?);
    }
    for path in &args.input {
        let text = std::fs::read_to_string(path)?;
        let mut s = parse_sbox(&text, args.width)?;
        s.name = Some(
            path.file_stem()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| "input".to_string()),
        );
        boxes.push(s);
    }
    Ok(boxes)
}

fn parse_options(args: &ReportArgs) -> Result<(AnalyzeOptions, Option<Vec<String>>, Format), String> {
    let ssi_convention = match args.ssi_convention.as_str() {
        "all" => SsiConvention::All,
        "nonzero" => SsiConvention::Nonzero,
        other => return Err(format!("unknown SSI convention {:?}", other)),
    };
    let field_modulus = match &args.field_modulus {
        None => None,
        Some(text) => {
            let digits = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")).unwrap_or(text);
            match u32::from_str_radix(digits, 16) {
                Ok(v) => Some(v),
                Err(_) => return Err(format!("malformed hex modulus {:?}", text)),
            }
        }
    };
    let selection = if args.props == "all" {
        None
    } else {
        Some(args.props.split(',').map(|p| p.trim().to_string()).collect())
    };
    let format: Format = args
        .format
        .parse()
        .map_err(|e| format!("{}", e))?;
    let opts = AnalyzeOptions {
        ssi_convention,
        field_modulus,
        timestamp: !args.no_timestamp,
        table5_compare: args.table5_compare,
        ..AnalyzeOptions::default()
    };
    Ok((opts, selection, format))
}

fn emit(text: &str, out: &Option<PathBuf>) -> sboxkit::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {}", message);
    ExitCode::from(1)
}

fn analysis_error(err: &sboxkit::Error) -> ExitCode {
    eprintln!("error: {}", err);
    ExitCode::from(2)
}

fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are success paths in clap
            if e.use_stderr() {
                let _ = e.print();
                return ExitCode::from(1);
            }
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };

    match cli.command {
        Command::Analyze { input, report } => {
            let (opts, selection, format) = match parse_options(&report) {
                Ok(v) => v,
                Err(m) => return usage_error(&m),
            };
            let boxes = match load_inputs(&input) {
                Ok(b) => b,
                Err(e) => return analysis_error(&e),
            };
            if boxes.len() != 1 {
                return usage_error("analyze takes exactly one --builtin or --input");
            }
            let r = analyze(&boxes[0], selection.as_deref(), &opts);
            match render(&r, format).and_then(|text| emit(&text, &report.out)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => analysis_error(&e),
            }
        }
        Command::Compare { input, report } => {
            let (opts, selection, format) = match parse_options(&report) {
                Ok(v) => v,
                Err(m) => return usage_error(&m),
            };
            let boxes = match load_inputs(&input) {
                Ok(b) => b,
                Err(e) => return analysis_error(&e),
            };
            if boxes.len() < 2 {
                return usage_error("compare needs at least two inputs");
            }
            let reports: Vec<PropertyReport> = boxes
                .iter()
                .map(|s| analyze(s, selection.as_deref(), &opts))
                .collect();
            match compare(&reports)
                .and_then(|t| render_comparison(&t, format))
                .and_then(|text| emit(&text, &report.out))
            {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => analysis_error(&e),
            }
        }
        Command::Transform { input, seed, format, out } => {
            let boxes = match load_inputs(&input) {
                Ok(b) => b,
                Err(e) => return analysis_error(&e),
            };
            if boxes.len() != 1 {
                return usage_error("transform takes exactly one --builtin or --input");
            }
            let s = &boxes[0];
            let t = random_affine(s.n(), s.m(), seed);
            let image = match apply_affine(s, &t) {
                Ok(i) => i,
                Err(e) => return analysis_error(&e),
            };
            let text = match format.as_str() {
                "text" => image.serialize() + "\n",
                "json" => {
                    let payload = serde_json::json!({
                        "seed": seed,
                        "transform": t,
                        "table": image.table(),
                    });
                    format!("{:#}\n", payload)
                }
                other => return usage_error(&format!("unknown output format {:?}", other)),
            };
            match emit(&text, &out) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => analysis_error(&e),
            }
        }
        Command::Bounds { n, m, format, out } => {
            let m = m.unwrap_or(n);
            let rows = match sboxkit::bounds::catalogue(n, m) {
                Ok(r) => r,
                Err(e) => return analysis_error(&e),
            };
            let text = match format.as_str() {
                "json" => match serde_json::to_string_pretty(&rows) {
                    Ok(j) => j + "\n",
                    Err(e) => return analysis_error(&e.into()),
                },
                "text" => {
                    let mut buf = format!("bounds for {}x{} S-boxes\n", n, m);
                    for r in &rows {
                        buf.push_str(&format!(
                            "  {:<8} [{}{}, {}{}] ideal {:?}\n",
                            r.property,
                            if r.lb_exclusive { ">" } else { "" },
                            r.lb,
                            if r.ub_exclusive { "<" } else { "" },
                            r.ub,
                            r.ideal,
                        ));
                    }
                    buf
                }
                other => return usage_error(&format!("unknown output format {:?}", other)),
            };
            match emit(&text, &out) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => analysis_error(&e),
            }
        }
        Command::ListBuiltins => {
            for e in &sboxkit::corpus::BUILTINS {
                let aliases = if e.aliases.is_empty() {
                    String::new()
                } else {
                    format!(" (aliases: {})", e.aliases.join(", "))
                };
                println!("{:<10} {}x{}{}  {}", e.id, e.n, e.m, aliases, e.citation);
            }
            ExitCode::SUCCESS
        }
        Command::Verify { input } => {
            let boxes = match load_inputs(&input) {
                Ok(b) => b,
                Err(e) => return analysis_error(&e),
            };
            if boxes.len() != 1 {
                return usage_error("verify takes exactly one --builtin or --input");
            }
            match verify(&boxes[0]) {
                Ok(all_pass) => {
                    if all_pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(2)
                    }
                }
                Err(e) => analysis_error(&e),
            }
        }
    }
}

/// Fast-vs-definitional agreement, one PASS/FAIL line per pair.
fn verify(s: &SBox) -> sboxkit::Result<bool> {
    use sboxkit::combined::{bct, bct_naive, dlct, dlct_naive, MAX_BCT_WIDTH};
    use sboxkit::spectral::{
        anf, anf_naive, autocorrelation_table, autocorrelation_table_naive, walsh_spectrum,
        walsh_spectrum_naive,
    };

    let mut all_pass = true;
    let mut check = |label: &str, ok: bool| {
        println!("{} {}", if ok { "PASS" } else { "FAIL" }, label);
        all_pass &= ok;
    };

    check("walsh", walsh_spectrum(s)? == walsh_spectrum_naive(s)?);
    check("act", autocorrelation_table(s)? == autocorrelation_table_naive(s)?);
    let anf_ok = (0..1u32 << s.m()).all(|mask| {
        let c = s.component(mask);
        anf(&c) == anf_naive(&c)
    });
    check("anf", anf_ok);
    check("dlct", dlct(s)? == dlct_naive(s)?);
    if s.is_bijective() && s.n() <= MAX_BCT_WIDTH {
        check("bct", bct(s)? == bct_naive(s)?);
    } else {
        println!("SKIP bct (needs a bijection of width <= {})", MAX_BCT_WIDTH);
    }
    Ok(all_pass)
}

fn main() -> ExitCode {
    run()
}

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use saptak::murchhana::{murchhana_grid, outcome_rows, outcomes_to_json};
use saptak::shruti::{rows_to_csv, rows_to_json};
use saptak::swara::{key_index, key_name};
use saptak::{
    enumerate_murchhanas, format_melody, murchhana, parse_melody, render_melody, scale_change,
    swara_frequency, table_rows, transpose_melody, western_name, write_wav, Melody,
    MurchhanaOutcome, Register, RenderConfig, Shift, Swara, Tonic, TransposeMode,
};

#[derive(Parser)]
#[command(
    name = "saptak",
    version,
    about = "Scale arithmetic for Indian classical music: shrutis, saptaks, murchhanas, sargam"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the 21-shruti tuning table for a base sa
    TuneTable(TuneTableArgs),
    /// Lay the twelve swaras across registers on the A440 keyboard
    Saptak(SaptakArgs),
    /// Move the tonic by equal-tempered steps
    ScaleChange(ScaleChangeArgs),
    /// Rotate the shuddha saptak and name the resulting thaats
    Murchhana(MurchhanaArgs),
    /// Transpose a sargam melody
    Transpose(TransposeArgs),
    /// Render a sargam melody to a WAV file
    Synth(SynthArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args)]
struct TuneTableArgs {
    /// Base sa: a pitch name (C4, F#3, B_flat2) or a frequency in Hz
    #[arg(short, long, default_value = "261.6256")]
    base: String,
    #[arg(short, long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct SaptakArgs {
    /// Tonic sa: a pitch name or a frequency in Hz
    #[arg(short, long, default_value = "C4")]
    tonic: String,
    /// Register span, e.g. -1..1 (clamped to -2..3)
    #[arg(
        long,
        default_value = "-1..1",
        allow_hyphen_values = true,
        value_parser = parse_register_span
    )]
    registers: (i32, i32),
    #[arg(short, long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct ScaleChangeArgs {
    /// Starting sa: a pitch name or a frequency in Hz
    #[arg(long, default_value = "C4")]
    from: String,
    /// Equal-tempered steps to move by
    #[arg(long, allow_negative_numbers = true, value_parser = clap::value_parser!(i32).range(-4096..=4096))]
    steps: i32,
    #[arg(short, long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("which").required(true).args(["shift", "all"]))]
struct MurchhanaArgs {
    /// Shift to apply (0..=6)
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..=6))]
    shift: Option<i64>,
    /// Enumerate all seven shifts
    #[arg(long)]
    all: bool,
    #[arg(short, long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Report a rejected shift on stdout and exit 0 instead of failing
    #[arg(short, long)]
    quiet: bool,
}

#[derive(Args)]
struct TransposeArgs {
    /// Melody file, '-' for stdin
    #[arg(long = "in", value_name = "FILE", default_value = "-")]
    input: PathBuf,
    /// Output file, '-' for stdout
    #[arg(long = "out", value_name = "FILE", default_value = "-")]
    output: PathBuf,
    /// Transposition mode
    #[arg(long, value_enum, default_value_t = ModeArg::ScaleChange)]
    mode: ModeArg,
    /// Steps for scale-change, murchhana shift otherwise
    #[arg(long, allow_negative_numbers = true)]
    shift: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    ScaleChange,
    Murchhana,
}

#[derive(Args)]
struct SynthArgs {
    /// Melody file, '-' for stdin
    #[arg(long = "in", value_name = "FILE", default_value = "-")]
    input: PathBuf,
    /// Output WAV path
    #[arg(long = "out", value_name = "FILE")]
    output: PathBuf,
    /// Sample rate in Hz
    #[arg(long, default_value_t = 44100)]
    rate: u32,
    /// Peak amplitude, in (0, 1]
    #[arg(long, default_value_t = 0.5)]
    amp: f64,
    /// Seconds per beat
    #[arg(long, default_value_t = 0.5)]
    note_seconds: f64,
    /// Fade in and out per note, in milliseconds
    #[arg(long, default_value_t = 10.0)]
    fade_ms: f64,
}

enum CliError {
    Io(io::Error),
    Msg(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> CliError {
        CliError::Io(e)
    }
}

impl From<String> for CliError {
    fn from(msg: String) -> CliError {
        CliError::Msg(msg)
    }
}

fn parse_register_span(text: &str) -> Result<(i32, i32), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {text:?}"))?;
    let lo: i32 = lo.trim().parse().map_err(|_| format!("bad register {lo:?}"))?;
    let hi: i32 = hi.trim().parse().map_err(|_| format!("bad register {hi:?}"))?;
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    Ok((lo.clamp(-2, 3), hi.clamp(-2, 3)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout().lock();
    let mut out = io::BufWriter::new(stdout);
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(CliError::Io));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // a downstream consumer closing the pipe early is not an error
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
        Err(CliError::Msg(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::TuneTable(args) => tune_table(args, out),
        Command::Saptak(args) => saptak_map(args, out),
        Command::ScaleChange(args) => scale_change_cmd(args, out),
        Command::Murchhana(args) => murchhana_cmd(args, out),
        Command::Transpose(args) => transpose_cmd(args, out),
        Command::Synth(args) => synth_cmd(args),
    }
}

fn parse_tonic(text: &str) -> Result<Tonic, CliError> {
    Tonic::parse(text).map_err(|e| CliError::Msg(e.to_string()))
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.4}")).unwrap_or_default()
}

/// Mandra marks are commas, so the token column needs CSV quoting.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn tune_table(args: TuneTableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let base = parse_tonic(&args.base)?;
    let rows = table_rows(base.sa_frequency());
    match args.format {
        Format::Csv => write!(out, "{}", rows_to_csv(&rows))?,
        Format::Json => writeln!(out, "{}", rows_to_json(&rows))?,
        Format::Table => {
            writeln!(
                out,
                "{:<17} {:>8} {:>9} {:>8} {:>9} {:>10}",
                "name", "ratio", "just_hz", "western", "ets_hz", "dev_cents"
            )?;
            for row in &rows {
                writeln!(
                    out,
                    "{:<17} {:>8} {:>9.4} {:>8} {:>9} {:>10}",
                    row.name,
                    row.ratio,
                    row.just_hz,
                    row.western_note.as_deref().unwrap_or(""),
                    opt_f64(row.ets_hz),
                    opt_f64(row.deviation_cents),
                )?;
            }
        }
    }
    Ok(())
}

fn saptak_map(args: SaptakArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let tonic = parse_tonic(&args.tonic)?;
    let (lo, hi) = args.registers;
    let mut rows = Vec::new();
    for reg in lo..=hi {
        let register = Register(reg);
        for swara in Swara::ALL {
            let freq = swara_frequency(tonic, swara, register);
            let token = format!("{}{}", swara.token(), register.marks());
            let western = western_name(tonic, swara, register).ok();
            rows.push((register, token, swara, freq, western));
        }
    }
    match args.format {
        Format::Csv => {
            writeln!(out, "register,token,swara,frequency_hz,western_note")?;
            for (register, token, swara, freq, western) in &rows {
                writeln!(
                    out,
                    "{},{},{},{:.4},{}",
                    register.label(),
                    csv_field(token),
                    swara,
                    freq.get(),
                    western.as_deref().unwrap_or(""),
                )?;
            }
        }
        Format::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|(register, token, swara, freq, western)| {
                    serde_json::json!({
                        "register_index": register.0,
                        "register": register.label(),
                        "token": token,
                        "swara": swara.to_string(),
                        "frequency_hz": round4(freq.get()),
                        "western_note": western,
                    })
                })
                .collect();
            let text = serde_json::to_string_pretty(&objects).expect("plain data");
            writeln!(out, "{text}")?;
        }
        Format::Table => {
            writeln!(
                out,
                "{:<11} {:<6} {:<10} {:>9} {:>8}",
                "register", "token", "swara", "freq_hz", "western"
            )?;
            for (register, token, swara, freq, western) in &rows {
                writeln!(
                    out,
                    "{:<11} {:<6} {:<10} {:>9.4} {:>8}",
                    register.label(),
                    token,
                    swara.to_string(),
                    freq.get(),
                    western.as_deref().unwrap_or(""),
                )?;
            }
        }
    }
    Ok(())
}

fn scale_change_cmd(args: ScaleChangeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let from = parse_tonic(&args.from)?;
    let to = scale_change(from, args.steps);
    let western = key_index(to.sa_frequency()).map(key_name);
    match args.format {
        Format::Csv => {
            writeln!(out, "from_hz,steps,to_hz,western_note")?;
            writeln!(
                out,
                "{:.4},{},{:.4},{}",
                from.sa_frequency().get(),
                args.steps,
                to.sa_frequency().get(),
                western.as_deref().unwrap_or(""),
            )?;
        }
        Format::Json => {
            let object = serde_json::json!({
                "from_hz": round4(from.sa_frequency().get()),
                "steps": args.steps,
                "to_hz": round4(to.sa_frequency().get()),
                "western_note": western,
            });
            let text = serde_json::to_string_pretty(&object).expect("plain data");
            writeln!(out, "{text}")?;
        }
        Format::Table => {
            writeln!(out, "{:>9} {:>6} {:>9} {:>8}", "from_hz", "steps", "to_hz", "western")?;
            writeln!(
                out,
                "{:>9.4} {:>+6} {:>9.4} {:>8}",
                from.sa_frequency().get(),
                args.steps,
                to.sa_frequency().get(),
                western.as_deref().unwrap_or(""),
            )?;
        }
    }
    Ok(())
}

fn write_outcome_csv(out: &mut dyn Write, outcomes: &[MurchhanaOutcome]) -> Result<(), CliError> {
    writeln!(out, "shift,accepted,hindustani,carnatic,degrees,vikrita,reason")?;
    for row in outcome_rows(outcomes) {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.shift,
            row.accepted,
            row.hindustani_name.as_deref().unwrap_or(""),
            row.carnatic_name.as_deref().unwrap_or(""),
            row.degrees.map(|d| d.join(" ")).unwrap_or_default(),
            row.vikrita.map(|v| v.join(" / ")).unwrap_or_default(),
            row.rejection.map(|r| r.reason).unwrap_or_default(),
        )?;
    }
    Ok(())
}

fn murchhana_cmd(args: MurchhanaArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.all {
        let outcomes = enumerate_murchhanas();
        match args.format {
            Format::Json => writeln!(out, "{}", outcomes_to_json(&outcomes))?,
            Format::Csv => write_outcome_csv(out, &outcomes)?,
            Format::Table => {
                write!(out, "{}", murchhana_grid())?;
                writeln!(out)?;
                for outcome in &outcomes {
                    writeln!(out, "{}", describe_outcome(outcome))?;
                }
            }
        }
        return Ok(());
    }

    let shift = Shift::new(args.shift.expect("clap group requires one")).expect("clap range");
    let outcome = murchhana(shift);
    if let (MurchhanaOutcome::Rejected(r), false) = (&outcome, args.quiet) {
        return Err(CliError::Msg(format!(
            "shift {} rejected: pa is displaced to {}",
            shift.get(),
            r.displaced_degree,
        )));
    }
    match args.format {
        Format::Json => {
            let row = outcome_rows(&[outcome]).remove(0);
            let text = serde_json::to_string_pretty(&row).expect("plain data");
            writeln!(out, "{text}")?;
        }
        Format::Csv => write_outcome_csv(out, &[outcome])?,
        Format::Table => writeln!(out, "{}", describe_outcome(&outcome))?,
    }
    Ok(())
}

fn describe_outcome(outcome: &MurchhanaOutcome) -> String {
    match outcome {
        MurchhanaOutcome::Accepted(t) => {
            let tokens: Vec<String> = t.degrees().iter().map(|s| s.token().to_string()).collect();
            let vikrita = t.vikrita();
            let vikrita = if vikrita.is_empty() {
                "none".to_string()
            } else {
                vikrita.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
            };
            format!(
                "shift {}: {} / {}  degrees {}  vikrita {}",
                t.shift().get(),
                t.hindustani_name().unwrap_or("?"),
                t.carnatic_name().unwrap_or("?"),
                tokens.join(" "),
                vikrita,
            )
        }
        MurchhanaOutcome::Rejected(r) => format!(
            "shift {}: rejected, pa is displaced to {}",
            r.shift.get(),
            r.displaced_degree,
        ),
    }
}

fn read_melody(path: &Path) -> Result<Melody, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Msg(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Msg(format!("reading {}: {e}", path.display())))?
    };
    parse_melody(&text).map_err(|e| CliError::Msg(e.to_string()))
}

fn transpose_cmd(args: TransposeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let melody = read_melody(&args.input)?;
    let mode = match args.mode {
        ModeArg::ScaleChange => TransposeMode::ScaleChange,
        ModeArg::Murchhana => TransposeMode::Murchhana,
    };
    let moved =
        transpose_melody(&melody, mode, args.shift).map_err(|e| CliError::Msg(e.to_string()))?;
    let text = format_melody(&moved);
    if args.output.as_os_str() == "-" {
        write!(out, "{text}")?;
    } else {
        std::fs::write(&args.output, text)
            .map_err(|e| CliError::Msg(format!("writing {}: {e}", args.output.display())))?;
    }
    Ok(())
}

fn synth_cmd(args: SynthArgs) -> Result<(), CliError> {
    let melody = read_melody(&args.input)?;
    let cfg = RenderConfig::new(args.rate, args.amp, args.note_seconds, args.fade_ms)
        .map_err(|e| CliError::Msg(e.to_string()))?;
    let samples = render_melody(&melody, &cfg).map_err(|e| CliError::Msg(e.to_string()))?;
    write_wav(&samples, cfg.sample_rate(), &args.output)
        .map_err(|e| CliError::Msg(format!("writing {}: {e}", args.output.display())))?;
    eprintln!(
        "wrote {} samples ({:.2} s) to {}",
        samples.len(),
        samples.len() as f64 / f64::from(cfg.sample_rate()),
        args.output.display(),
    );
    Ok(())
}

fn round4(x: f64) -> f64 {
    (x * 10000.0).round() / 10000.0
}

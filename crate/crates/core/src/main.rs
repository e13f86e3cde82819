use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wavsquash::cli::{self, BenchOptions, CliError, Codec, CompressOptions, OutputFormat};
use wavsquash::SilenceParams;

/// Silence and companding compression for 8-bit PCM WAV files.
#[derive(Parser)]
#[command(name = "wavsquash", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the format fields, data length and duration of a WAV file.
    Inspect { path: PathBuf },
    /// Compress an 8-bit mono PCM WAV file.
    Compress {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum)]
        codec: CodecArg,
        /// Code width for the companding codec.
        #[arg(long, default_value_t = 4)]
        bits: u8,
        #[command(flatten)]
        silence: SilenceArgs,
    },
    /// Restore a plain WAV file from a compressed one.
    Decompress { input: PathBuf, output: PathBuf },
    /// Compress every WAV file in a directory and tabulate the ratios.
    Bench {
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = BenchCodecArg::All)]
        codec: BenchCodecArg,
        /// Companding widths to run (repeatable); defaults to 1 through 8.
        #[arg(long)]
        bits: Vec<u8>,
        #[command(flatten)]
        silence: SilenceArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
}

#[derive(Args)]
struct SilenceArgs {
    /// Largest distance from 0x80 still counted as silence.
    #[arg(long, default_value_t = SilenceParams::default().threshold)]
    threshold: u8,
    /// Consecutive silent samples needed to open a run.
    #[arg(long, default_value_t = SilenceParams::default().start_threshold)]
    start_threshold: u8,
    /// Consecutive non-silent samples that close a run.
    #[arg(long, default_value_t = SilenceParams::default().stop_threshold)]
    stop_threshold: u8,
}

impl SilenceArgs {
    fn params(&self) -> SilenceParams {
        SilenceParams {
            threshold: self.threshold,
            start_threshold: self.start_threshold,
            stop_threshold: self.stop_threshold,
            ..SilenceParams::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CodecArg {
    Silence,
    Compand,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchCodecArg {
    Silence,
    Compand,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Inspect { path } => cli::inspect(&path),
        Command::Compress {
            input,
            output,
            codec,
            bits,
            silence,
        } => {
            let options = CompressOptions {
                codec: match codec {
                    CodecArg::Silence => Codec::Silence,
                    CodecArg::Compand => Codec::Compand,
                },
                bits,
                silence: silence.params(),
            };
            cli::compress(&input, &output, &options).map(|r| cli::format_report(&r))
        }
        Command::Decompress { input, output } => cli::decompress(&input, &output)
            .map(|size| format!("restored file size: {size} bytes\n")),
        Command::Bench {
            dir,
            codec,
            bits,
            silence,
            format,
        } => {
            let format = match format {
                FormatArg::Table => OutputFormat::Table,
                FormatArg::Csv => OutputFormat::Csv,
            };
            let mut options = BenchOptions {
                format,
                ..BenchOptions::default()
            };
            if codec == BenchCodecArg::Compand {
                options.silence = None;
            } else {
                options.silence = Some(silence.params());
            }
            if codec == BenchCodecArg::Silence {
                options.bits.clear();
            } else if !bits.is_empty() {
                options.bits = bits;
            }
            let outcome = cli::bench(&dir, &options)?;
            for w in &outcome.warnings {
                eprintln!("{w}");
            }
            Ok(outcome.render(options.format))
        }
    }
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(parsed) => parsed,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(parsed.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

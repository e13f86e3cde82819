//! Command implementations behind the `wavsquash` binary.
//!
//! Each command returns its printable output or a [`CliError`] that knows
//! its process exit code: 1 for I/O, 2 for file-format problems and 3 for
//! bad options.

mod report;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::companding_codec::{CompandError, MAX_BITS, MIN_BITS};
use crate::compressed_container::{
    compress_wav, decompress as decompress_file, read_compressed, write_compressed, CodecParams,
    CompressedFile, ContainerError,
};
use crate::silence_codec::{SilenceError, SilenceParams};
use crate::wav_container::{describe, parse_wav, write_wav, WavError};

pub use report::{make_report, CompressionReport, EmptyInput};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Params(String),
    #[error("no WAV files could be processed in {0}")]
    NothingProcessed(PathBuf),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::NothingProcessed(_) => 1,
            CliError::Format(_) => 2,
            CliError::Params(_) => 3,
        }
    }

    fn format(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError::Format(format!("{}: {e}", path.display()))
    }
}

impl From<ContainerError> for CliError {
    fn from(e: ContainerError) -> Self {
        match e {
            ContainerError::Silence(SilenceError::InvalidParams(msg)) => CliError::Params(msg),
            ContainerError::Compand(e @ CompandError::BitsOutOfRange(_)) => {
                CliError::Params(e.to_string())
            }
            other => CliError::Format(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Codec {
    Silence,
    Compand,
}

#[derive(Debug, Clone, Copy)]
pub struct CompressOptions {
    pub codec: Codec,
    pub bits: u8,
    pub silence: SilenceParams,
}

impl Default for CompressOptions {
    fn default() -> Self {
        Self {
            codec: Codec::Compand,
            bits: 4,
            silence: SilenceParams::default(),
        }
    }
}

impl CompressOptions {
    pub fn codec_params(&self) -> Result<CodecParams, CliError> {
        let params = match self.codec {
            Codec::Silence => CodecParams::Silence(self.silence),
            Codec::Compand => {
                check_bits(self.bits)?;
                CodecParams::Compand { bits: self.bits }
            }
        };
        params.validate()?;
        Ok(params)
    }
}

fn check_bits(bits: u8) -> Result<(), CliError> {
    if (MIN_BITS..=MAX_BITS).contains(&bits) {
        Ok(())
    } else {
        Err(CliError::Params(format!(
            "--bits must be in 1..=8, got {bits}"
        )))
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn inspect(path: &Path) -> Result<String, CliError> {
    let bytes = read(path)?;
    let wav = parse_wav(&bytes).map_err(|e| CliError::format(path, e))?;
    let mut out = format!(
        "file:            {}\nfile size:       {} bytes\n",
        path.display(),
        bytes.len()
    );
    match read_compressed(&bytes) {
        Ok(c) => {
            let restored = decompress_file(&c).map_err(|e| CliError::format(path, e))?;
            out.push_str(&describe(&restored));
            let _ = writeln!(out, "payload length:  {} bytes", c.payload.len());
            let _ = writeln!(out, "codec:           {}", c.params.name());
            match c.params {
                CodecParams::Silence(p) => {
                    let _ = writeln!(
                        out,
                        "silence params:  threshold {} start {} stop {}",
                        p.threshold, p.start_threshold, p.stop_threshold
                    );
                }
                CodecParams::Compand { bits } => {
                    let _ = writeln!(out, "bits:            {bits}");
                }
            }
        }
        Err(ContainerError::NotCompressed) => out.push_str(&describe(&wav)),
        Err(e) => return Err(CliError::format(path, e)),
    }
    Ok(out)
}

pub fn compress(
    input: &Path,
    output: &Path,
    options: &CompressOptions,
) -> Result<CompressionReport, CliError> {
    let params = options.codec_params()?;
    let bytes = read(input)?;
    let wav = parse_wav(&bytes).map_err(|e| CliError::format(input, e))?;
    if wav.skipped_chunks.contains(b"CMPR") {
        return Err(CliError::format(input, "file is already compressed"));
    }
    let compressed = compress_wav(&wav, params).map_err(|e| match e {
        ContainerError::Wav(e) => CliError::format(input, e),
        other => other.into(),
    })?;
    let encoded = write_compressed(&compressed)?;
    write(output, &encoded)?;
    make_report(bytes.len() as u64, encoded.len() as u64).map_err(|e| CliError::format(input, e))
}

/// Restores a plain WAV; returns the size of the written file.
pub fn decompress(input: &Path, output: &Path) -> Result<u64, CliError> {
    let bytes = read(input)?;
    let compressed = read_compressed(&bytes).map_err(|e| CliError::format(input, e))?;
    let wav = decompress_file(&compressed).map_err(|e| CliError::format(input, e))?;
    let encoded = write_wav(&wav).map_err(|e| CliError::format(input, e))?;
    write(output, &encoded)?;
    Ok(encoded.len() as u64)
}

pub fn format_report(report: &CompressionReport) -> String {
    format!(
        "input file size:   {} bytes\noutput file size:  {} bytes\ncompression ratio: {}%\n",
        report.input_bytes, report.output_bytes, report.ratio_percent
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub silence: Option<SilenceParams>,
    /// Companding widths to run; empty skips companding.
    pub bits: Vec<u8>,
    pub format: OutputFormat,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            silence: Some(SilenceParams::default()),
            bits: (MIN_BITS..=MAX_BITS).collect(),
            format: OutputFormat::Table,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub file: String,
    pub codec: &'static str,
    pub bits: Option<u8>,
    pub report: CompressionReport,
}

#[derive(Debug, Clone, Default)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub warnings: Vec<String>,
}

impl BenchOutcome {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => render_table(&self.rows),
            OutputFormat::Csv => render_csv(&self.rows),
        }
    }
}

const BENCH_COLUMNS: [&str; 6] = [
    "file",
    "codec",
    "bits",
    "input_bytes",
    "output_bytes",
    "ratio_percent",
];

pub fn bench(dir: &Path, options: &BenchOptions) -> Result<BenchOutcome, CliError> {
    let mut configs = Vec::new();
    if let Some(p) = options.silence {
        configs.push(CodecParams::Silence(p));
    }
    for &bits in &options.bits {
        check_bits(bits)?;
        configs.push(CodecParams::Compand { bits });
    }
    for c in &configs {
        c.validate()?;
    }

    let entries = fs::read_dir(dir).map_err(|source| CliError::Io {
        path: dir.to_owned(),
        source,
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();

    let mut outcome = BenchOutcome::default();
    let mut processed = 0usize;
    for path in paths {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        match bench_file(&path, &name, &configs) {
            Ok(rows) => {
                processed += 1;
                outcome.rows.extend(rows);
            }
            Err(e) => outcome
                .warnings
                .push(format!("warning: skipping {name}: {e}")),
        }
    }
    if processed == 0 {
        return Err(CliError::NothingProcessed(dir.to_owned()));
    }
    Ok(outcome)
}

fn bench_file(path: &Path, name: &str, configs: &[CodecParams]) -> Result<Vec<BenchRow>, String> {
    let bytes = fs::read(path).map_err(|e| e.to_string())?;
    let wav = parse_wav(&bytes).map_err(|e| e.to_string())?;
    if wav.skipped_chunks.contains(b"CMPR") {
        return Err("already compressed".into());
    }
    if !wav.format.is_8bit_mono_pcm() {
        return Err(WavError::UnsupportedFormat("not 8-bit mono PCM".into()).to_string());
    }
    configs
        .iter()
        .map(|&params| {
            let compressed: CompressedFile =
                compress_wav(&wav, params).map_err(|e| e.to_string())?;
            let report = make_report(bytes.len() as u64, compressed.encoded_len() as u64)
                .map_err(|e| e.to_string())?;
            Ok(BenchRow {
                file: name.to_owned(),
                codec: params.name(),
                bits: match params {
                    CodecParams::Compand { bits } => Some(bits),
                    CodecParams::Silence(_) => None,
                },
                report,
            })
        })
        .collect()
}

fn row_fields(row: &BenchRow, missing_bits: &str) -> [String; 6] {
    [
        row.file.clone(),
        row.codec.to_owned(),
        row.bits
            .map_or_else(|| missing_bits.to_owned(), |b| b.to_string()),
        row.report.input_bytes.to_string(),
        row.report.output_bytes.to_string(),
        row.report.ratio_percent.to_string(),
    ]
}

pub fn render_table(rows: &[BenchRow]) -> String {
    let cells: Vec<[String; 6]> = rows.iter().map(|r| row_fields(r, "-")).collect();
    let mut widths = BENCH_COLUMNS.map(str::len);
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let header = BENCH_COLUMNS.map(str::to_owned);
    for row in std::iter::once(&header).chain(&cells) {
        let line: Vec<String> = row
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(i, (cell, w))| {
                // text columns left, numbers right
                if i < 2 {
                    format!("{cell:<w$}")
                } else {
                    format!("{cell:>w$}")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BENCH_COLUMNS).expect("write to Vec");
    for row in rows {
        w.write_record(row_fields(row, "")).expect("write to Vec");
    }
    String::from_utf8(w.into_inner().expect("flush to Vec")).expect("csv output is UTF-8")
}

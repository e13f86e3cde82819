//! RIFF/WAVE parsing and canonical writing.
//!
//! The writer always emits the 44-byte canonical layout:
//!
//! ```text
//! 0   "RIFF"          4   file length - 8 (u32 LE)   8   "WAVE"
//! 12  "fmt "          16  16 (u32 LE)                20  format tag (u16 LE)
//! 22  channels        24  sample rate (u32 LE)       28  byte rate (u32 LE)
//! 32  block align     34  bits per sample            36  "data"
//! 40  data length     44  samples
//! ```
//!
//! The parser is more forgiving: it walks chunks by their own declared
//! lengths, skips anything it does not understand, and treats the RIFF
//! length only as a cross-check.

use std::fmt::Write as _;

use thiserror::Error;

pub const CANONICAL_HEADER_LEN: usize = 44;
pub const FORMAT_PCM: u16 = 1;

const RIFF_HEADER_LEN: usize = 12;
const CHUNK_HEADER_LEN: usize = 8;
const FMT_BODY_LEN: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WavError {
    #[error("missing RIFF magic")]
    MissingRiffMagic,
    #[error("missing WAVE form type")]
    MissingWaveTag,
    #[error("missing {0:?} chunk")]
    MissingChunk(&'static str),
    #[error("truncated input: {0}")]
    Truncated(String),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("format invariant violated: {0}")]
    InvariantViolation(String),
}

/// Channel / rate / depth metadata carried by the `fmt ` chunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormatChunk {
    pub audio_format: u16,
    pub channels: u16,
    pub sample_rate: u32,
    pub byte_rate: u32,
    pub block_align: u16,
    pub bits_per_sample: u16,
}

impl FormatChunk {
    /// Builds a consistent PCM format; derived fields are computed.
    pub fn pcm(channels: u16, sample_rate: u32, bits_per_sample: u16) -> Self {
        let block_align = channels * bits_per_sample / 8;
        Self {
            audio_format: FORMAT_PCM,
            channels,
            sample_rate,
            byte_rate: sample_rate * u32::from(block_align),
            block_align,
            bits_per_sample,
        }
    }

    pub fn pcm_8bit_mono(sample_rate: u32) -> Self {
        Self::pcm(1, sample_rate, 8)
    }

    pub fn is_8bit_mono_pcm(&self) -> bool {
        self.audio_format == FORMAT_PCM && self.channels == 1 && self.bits_per_sample == 8
    }

    /// Checks the supported-format and derived-field invariants.
    pub fn validate(&self) -> Result<(), WavError> {
        if self.audio_format != FORMAT_PCM {
            return Err(WavError::UnsupportedFormat(format!(
                "format tag {} (only PCM = 1)",
                self.audio_format
            )));
        }
        if !matches!(self.channels, 1 | 2) {
            return Err(WavError::UnsupportedFormat(format!(
                "{} channels (only mono or stereo)",
                self.channels
            )));
        }
        if !matches!(self.bits_per_sample, 8 | 16) {
            return Err(WavError::UnsupportedFormat(format!(
                "{} bits per sample (only 8 or 16)",
                self.bits_per_sample
            )));
        }
        let expected_align = self.channels * self.bits_per_sample / 8;
        if self.block_align != expected_align {
            return Err(WavError::InvariantViolation(format!(
                "block align {} != channels * bits / 8 = {}",
                self.block_align, expected_align
            )));
        }
        let expected_rate = u64::from(self.sample_rate) * u64::from(self.block_align);
        if u64::from(self.byte_rate) != expected_rate {
            return Err(WavError::InvariantViolation(format!(
                "byte rate {} != sample rate * block align = {}",
                self.byte_rate, expected_rate
            )));
        }
        Ok(())
    }

    pub(crate) fn parse(body: &[u8]) -> Result<Self, WavError> {
        if body.len() < FMT_BODY_LEN {
            return Err(WavError::Truncated(format!(
                "fmt chunk is {} bytes, need {}",
                body.len(),
                FMT_BODY_LEN
            )));
        }
        let format = Self {
            audio_format: le_u16(body, 0),
            channels: le_u16(body, 2),
            sample_rate: le_u32(body, 4),
            byte_rate: le_u32(body, 8),
            block_align: le_u16(body, 12),
            bits_per_sample: le_u16(body, 14),
        };
        format.validate()?;
        Ok(format)
    }

    /// Appends a complete 24-byte `fmt ` chunk (header and body).
    pub(crate) fn write_chunk(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(b"fmt ");
        out.extend_from_slice(&(FMT_BODY_LEN as u32).to_le_bytes());
        out.extend_from_slice(&self.audio_format.to_le_bytes());
        out.extend_from_slice(&self.channels.to_le_bytes());
        out.extend_from_slice(&self.sample_rate.to_le_bytes());
        out.extend_from_slice(&self.byte_rate.to_le_bytes());
        out.extend_from_slice(&self.block_align.to_le_bytes());
        out.extend_from_slice(&self.bits_per_sample.to_le_bytes());
    }
}

/// Declared RIFF length that disagreed with the bytes actually present.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RiffLengthMismatch {
    pub declared: u32,
    pub actual: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WavFile {
    pub format: FormatChunk,
    pub data: Vec<u8>,
    /// Tags of chunks that were walked over and ignored.
    pub skipped_chunks: Vec<[u8; 4]>,
    pub riff_length_mismatch: Option<RiffLengthMismatch>,
}

impl WavFile {
    pub fn new(format: FormatChunk, data: Vec<u8>) -> Self {
        Self {
            format,
            data,
            skipped_chunks: Vec::new(),
            riff_length_mismatch: None,
        }
    }

    pub fn duration_secs(&self) -> f64 {
        if self.format.byte_rate == 0 {
            return 0.0;
        }
        self.data.len() as f64 / f64::from(self.format.byte_rate)
    }

    /// Size in bytes of the canonical file image `write_wav` produces.
    pub fn canonical_len(&self) -> usize {
        CANONICAL_HEADER_LEN + padded_len(self.data.len())
    }
}

/// A chunk as found in the file: tag plus body, pad byte excluded.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RawChunk<'a> {
    pub tag: [u8; 4],
    pub body: &'a [u8],
}

/// Walks the chunks following a RIFF/WAVE header.
pub(crate) struct ChunkWalker<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ChunkWalker<'a> {
    /// Validates the 12-byte RIFF header and positions at the first chunk.
    /// Also returns the declared RIFF length for cross-checking.
    pub fn new(bytes: &'a [u8]) -> Result<(Self, u32), WavError> {
        if bytes.len() < 4 || &bytes[0..4] != b"RIFF" {
            return Err(WavError::MissingRiffMagic);
        }
        if bytes.len() < RIFF_HEADER_LEN {
            return Err(WavError::Truncated(format!(
                "{} bytes is shorter than the RIFF header",
                bytes.len()
            )));
        }
        if &bytes[8..12] != b"WAVE" {
            return Err(WavError::MissingWaveTag);
        }
        let declared = le_u32(bytes, 4);
        Ok((
            Self {
                bytes,
                pos: RIFF_HEADER_LEN,
            },
            declared,
        ))
    }
}

impl<'a> Iterator for ChunkWalker<'a> {
    type Item = Result<RawChunk<'a>, WavError>;

    fn next(&mut self) -> Option<Self::Item> {
        let remaining = self.bytes.len() - self.pos;
        if remaining == 0 {
            return None;
        }
        if remaining < CHUNK_HEADER_LEN {
            self.pos = self.bytes.len();
            return Some(Err(WavError::Truncated(format!(
                "{remaining} trailing bytes cannot hold a chunk header"
            ))));
        }
        let mut tag = [0u8; 4];
        tag.copy_from_slice(&self.bytes[self.pos..self.pos + 4]);
        let len = le_u32(self.bytes, self.pos + 4) as usize;
        let start = self.pos + CHUNK_HEADER_LEN;
        if len > self.bytes.len() - start {
            self.pos = self.bytes.len();
            return Some(Err(WavError::Truncated(format!(
                "chunk {:?} declares {} bytes but only {} remain",
                String::from_utf8_lossy(&tag),
                len,
                self.bytes.len() - start
            ))));
        }
        // Odd-sized chunks carry a pad byte; tolerate its absence at EOF.
        self.pos = (start + padded_len(len)).min(self.bytes.len());
        Some(Ok(RawChunk {
            tag,
            body: &self.bytes[start..start + len],
        }))
    }
}

pub fn parse_wav(bytes: &[u8]) -> Result<WavFile, WavError> {
    let (walker, declared) = ChunkWalker::new(bytes)?;
    let mut format = None;
    let mut skipped_chunks = Vec::new();
    let mut data = None;
    for chunk in walker {
        let chunk = chunk?;
        match &chunk.tag {
            b"fmt " if format.is_none() => format = Some(FormatChunk::parse(chunk.body)?),
            b"data" => {
                data = Some(chunk.body.to_vec());
                if format.is_some() {
                    break;
                }
            }
            _ => skipped_chunks.push(chunk.tag),
        }
    }
    let format = format.ok_or(WavError::MissingChunk("fmt "))?;
    let data = data.ok_or(WavError::MissingChunk("data"))?;
    let actual = bytes.len() as u64 - 8;
    let riff_length_mismatch =
        (u64::from(declared) != actual).then_some(RiffLengthMismatch { declared, actual });
    Ok(WavFile {
        format,
        data,
        skipped_chunks,
        riff_length_mismatch,
    })
}

pub fn write_wav(file: &WavFile) -> Result<Vec<u8>, WavError> {
    file.format.validate()?;
    let total = file.canonical_len();
    if total - 8 > u32::MAX as usize {
        return Err(WavError::InvariantViolation(
            "data too large for RIFF".into(),
        ));
    }
    let data_len = file.data.len() as u32;
    let mut out = Vec::with_capacity(total);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&((total - 8) as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    file.format.write_chunk(&mut out);
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    out.extend_from_slice(&file.data);
    if file.data.len() % 2 == 1 {
        out.push(0);
    }
    debug_assert_eq!(out.len(), total);
    Ok(out)
}

/// Human-readable listing of the format fields, data length and duration.
pub fn describe(file: &WavFile) -> String {
    let f = &file.format;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "audio format:    {} ({})",
        f.audio_format,
        format_name(f.audio_format)
    );
    let _ = writeln!(
        s,
        "channels:        {} ({})",
        f.channels,
        channel_name(f.channels)
    );
    let _ = writeln!(s, "sample rate:     {} Hz", f.sample_rate);
    let _ = writeln!(s, "byte rate:       {} bytes/s", f.byte_rate);
    let _ = writeln!(s, "block align:     {} bytes", f.block_align);
    let _ = writeln!(s, "bits per sample: {}", f.bits_per_sample);
    let _ = writeln!(s, "data length:     {} bytes", file.data.len());
    let _ = writeln!(s, "duration:        {:.3} s", file.duration_secs());
    if !file.skipped_chunks.is_empty() {
        let tags: Vec<String> = file
            .skipped_chunks
            .iter()
            .map(|t| format!("{:?}", String::from_utf8_lossy(t)))
            .collect();
        let _ = writeln!(s, "skipped chunks:  {}", tags.join(", "));
    }
    if let Some(m) = file.riff_length_mismatch {
        let _ = writeln!(
            s,
            "warning: RIFF length field says {} but {} bytes follow it",
            m.declared, m.actual
        );
    }
    s
}

fn format_name(tag: u16) -> &'static str {
    if tag == FORMAT_PCM {
        "PCM"
    } else {
        "unknown"
    }
}

fn channel_name(channels: u16) -> &'static str {
    match channels {
        1 => "mono",
        2 => "stereo",
        _ => "other",
    }
}

pub(crate) fn padded_len(len: usize) -> usize {
    len + (len & 1)
}

pub(crate) fn le_u16(bytes: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([bytes[at], bytes[at + 1]])
}

pub(crate) fn le_u32(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([bytes[at], bytes[at + 1], bytes[at + 2], bytes[at + 3]])
}

//! Self-describing on-disk format for compressed audio.
//!
//! A compressed file is still a RIFF/WAVE file: a canonical `fmt ` chunk
//! copied from the source, a 12-byte `CMPR` chunk, then a `data` chunk
//! holding the codec payload. `CMPR` body, all integers little-endian:
//!
//! ```text
//! 0  codec id (1 = silence, 2 = companding)   1  version (= 1)
//! 2  bits (0 for silence)                     3  threshold
//! 4  start threshold                          5  stop threshold
//! 6  reserved u16 (= 0)                       8  original data length u32
//! ```
//!
//! The silence center and escape code are not stored; files always use
//! 0x80 and 0xFF.

use thiserror::Error;

use crate::bitpack;
use crate::companding_codec::{self, CompandError, CompandTables};
use crate::silence_codec::{self, SilenceError, SilenceParams};
use crate::wav_container::{le_u32, padded_len, ChunkWalker, FormatChunk, WavError, WavFile};

pub const CMPR_VERSION: u8 = 1;
pub const CMPR_BODY_LEN: usize = 12;
pub const CODEC_SILENCE: u8 = 1;
pub const CODEC_COMPAND: u8 = 2;

/// Header bytes ahead of the payload: RIFF + fmt + CMPR + data headers.
pub const CONTAINER_OVERHEAD: usize = 12 + 24 + 8 + CMPR_BODY_LEN + 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContainerError {
    #[error("not a compressed file (no CMPR chunk)")]
    NotCompressed,
    #[error("unsupported CMPR version {0}")]
    BadVersion(u8),
    #[error("unknown codec id {0}")]
    UnknownCodec(u8),
    #[error("truncated: {0}")]
    Truncated(String),
    #[error("invalid CMPR header: {0}")]
    InvalidHeader(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Wav(WavError),
    #[error(transparent)]
    Silence(#[from] SilenceError),
    #[error(transparent)]
    Compand(#[from] CompandError),
}

impl From<WavError> for ContainerError {
    fn from(e: WavError) -> Self {
        match e {
            WavError::Truncated(msg) => ContainerError::Truncated(msg),
            other => ContainerError::Wav(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodecParams {
    Silence(SilenceParams),
    Compand { bits: u8 },
}

impl CodecParams {
    pub fn codec_id(&self) -> u8 {
        match self {
            CodecParams::Silence(_) => CODEC_SILENCE,
            CodecParams::Compand { .. } => CODEC_COMPAND,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CodecParams::Silence(_) => "silence",
            CodecParams::Compand { .. } => "compand",
        }
    }

    pub fn validate(&self) -> Result<(), ContainerError> {
        match self {
            CodecParams::Silence(p) => {
                p.validate()?;
                let defaults = SilenceParams::default();
                if p.silence_center != defaults.silence_center
                    || p.silence_code != defaults.silence_code
                {
                    return Err(ContainerError::InvariantViolation(
                        "silence center and code must be 0x80 / 0xFF to be stored".into(),
                    ));
                }
                Ok(())
            }
            CodecParams::Compand { bits } => {
                CompandTables::build(*bits)?;
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedFile {
    pub params: CodecParams,
    /// Sample bytes in the uncompressed data chunk.
    pub original_data_len: u32,
    pub source_format: FormatChunk,
    pub payload: Vec<u8>,
}

impl CompressedFile {
    pub fn codec_id(&self) -> u8 {
        self.params.codec_id()
    }

    pub fn validate(&self) -> Result<(), ContainerError> {
        self.params.validate()?;
        self.source_format.validate()?;
        if let CodecParams::Compand { bits } = self.params {
            let expected = bitpack::packed_len(self.original_data_len as usize, bits);
            if self.payload.len() != expected {
                return Err(ContainerError::InvariantViolation(format!(
                    "payload is {} bytes, {} samples at {} bits need {}",
                    self.payload.len(),
                    self.original_data_len,
                    bits,
                    expected
                )));
            }
        }
        Ok(())
    }

    pub fn encoded_len(&self) -> usize {
        CONTAINER_OVERHEAD + padded_len(self.payload.len())
    }
}

pub fn write_compressed(file: &CompressedFile) -> Result<Vec<u8>, ContainerError> {
    file.validate()?;
    let total = file.encoded_len();
    if total - 8 > u32::MAX as usize {
        return Err(ContainerError::InvariantViolation(
            "payload too large for RIFF".into(),
        ));
    }
    let mut out = Vec::with_capacity(total);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&((total - 8) as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    file.source_format.write_chunk(&mut out);

    let (bits, threshold, start, stop) = match file.params {
        CodecParams::Silence(p) => (0, p.threshold, p.start_threshold, p.stop_threshold),
        CodecParams::Compand { bits } => (bits, 0, 0, 0),
    };
    out.extend_from_slice(b"CMPR");
    out.extend_from_slice(&(CMPR_BODY_LEN as u32).to_le_bytes());
    out.extend_from_slice(&[file.codec_id(), CMPR_VERSION, bits, threshold, start, stop]);
    out.extend_from_slice(&0u16.to_le_bytes());
    out.extend_from_slice(&file.original_data_len.to_le_bytes());

    out.extend_from_slice(b"data");
    out.extend_from_slice(&(file.payload.len() as u32).to_le_bytes());
    out.extend_from_slice(&file.payload);
    if file.payload.len() % 2 == 1 {
        out.push(0);
    }
    debug_assert_eq!(out.len(), total);
    Ok(out)
}

pub fn read_compressed(bytes: &[u8]) -> Result<CompressedFile, ContainerError> {
    let (walker, _) = ChunkWalker::new(bytes)?;
    let mut format = None;
    let mut header = None;
    let mut payload = None;
    for chunk in walker {
        let chunk = chunk?;
        match &chunk.tag {
            b"fmt " if format.is_none() => format = Some(FormatChunk::parse(chunk.body)?),
            b"CMPR" if header.is_none() => header = Some(chunk.body),
            b"data" => {
                payload = Some(chunk.body);
                if format.is_some() {
                    break;
                }
            }
            _ => {}
        }
    }
    let header = header.ok_or(ContainerError::NotCompressed)?;
    let source_format = format.ok_or(ContainerError::Wav(WavError::MissingChunk("fmt ")))?;
    let payload = payload.ok_or(ContainerError::Wav(WavError::MissingChunk("data")))?;

    if header.len() < CMPR_BODY_LEN {
        return Err(ContainerError::Truncated(format!(
            "CMPR chunk is {} bytes, need {}",
            header.len(),
            CMPR_BODY_LEN
        )));
    }
    let (codec_id, version, bits) = (header[0], header[1], header[2]);
    if version != CMPR_VERSION {
        return Err(ContainerError::BadVersion(version));
    }
    let params = match codec_id {
        CODEC_SILENCE => CodecParams::Silence(SilenceParams {
            threshold: header[3],
            start_threshold: header[4],
            stop_threshold: header[5],
            ..SilenceParams::default()
        }),
        CODEC_COMPAND => CodecParams::Compand { bits },
        other => return Err(ContainerError::UnknownCodec(other)),
    };
    let file = CompressedFile {
        params,
        original_data_len: le_u32(header, 8),
        source_format,
        payload: payload.to_vec(),
    };
    file.validate().map_err(|e| match e {
        ContainerError::InvariantViolation(msg) => ContainerError::InvalidHeader(msg),
        ContainerError::Silence(e) => ContainerError::InvalidHeader(e.to_string()),
        ContainerError::Compand(e) => ContainerError::InvalidHeader(e.to_string()),
        other => other,
    })?;
    Ok(file)
}

/// Encodes the sample data of an 8-bit mono PCM file with the given codec.
pub fn compress_wav(wav: &WavFile, params: CodecParams) -> Result<CompressedFile, ContainerError> {
    params.validate()?;
    if !wav.format.is_8bit_mono_pcm() {
        return Err(ContainerError::Wav(WavError::UnsupportedFormat(format!(
            "codecs take 8-bit mono PCM, got {} channel(s) at {} bits",
            wav.format.channels, wav.format.bits_per_sample
        ))));
    }
    let original_data_len = u32::try_from(wav.data.len())
        .map_err(|_| ContainerError::InvariantViolation("data chunk too large".into()))?;
    let payload = match params {
        CodecParams::Silence(p) => silence_codec::encode_silence(&wav.data, &p),
        CodecParams::Compand { bits } => {
            companding_codec::compand_encode(&wav.data, &CompandTables::build(bits)?)
        }
    };
    Ok(CompressedFile {
        params,
        original_data_len,
        source_format: wav.format,
        payload,
    })
}

/// Decodes the payload back into a plain WAV with the original data length.
pub fn decompress(file: &CompressedFile) -> Result<WavFile, ContainerError> {
    let expected = file.original_data_len as usize;
    let data = match file.params {
        CodecParams::Silence(p) => {
            let data = silence_codec::decode_silence(&file.payload, &p)?;
            if data.len() != expected {
                return Err(ContainerError::InvalidHeader(format!(
                    "silence payload decodes to {} samples, header says {}",
                    data.len(),
                    expected
                )));
            }
            data
        }
        CodecParams::Compand { bits } => {
            companding_codec::compand_decode(&file.payload, &CompandTables::build(bits)?, expected)?
        }
    };
    Ok(WavFile::new(file.source_format, data))
}

//! Lossy compression for 8-bit PCM WAV audio.
//!
//! Two codecs are provided: [`silence_codec`], which run-length codes
//! near-silent stretches, and [`companding_codec`], which maps each sample
//! through a logarithmic lookup table to a 1..=8 bit code. Both read and
//! write through [`wav_container`], and compressed output is framed by
//! [`compressed_container`] so the decoder needs no side information.

pub mod bitpack;
pub mod cli;
pub mod companding_codec;
pub mod compressed_container;
pub mod silence_codec;
pub mod wav_container;

pub use companding_codec::{
    build_tables, compand_decode, compand_encode, map16, unmap16, CompandError, CompandTables,
    MappingParams16,
};
pub use compressed_container::{
    compress_wav, decompress, read_compressed, write_compressed, CodecParams, CompressedFile,
    ContainerError,
};
pub use silence_codec::{decode_silence, encode_silence, is_silence, SilenceError, SilenceParams};
pub use wav_container::{describe, parse_wav, write_wav, FormatChunk, WavError, WavFile};

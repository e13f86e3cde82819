//! Lookup-table companding of 8-bit samples into 1..=8 bit codes, and the
//! scalar exponential/logarithmic mapping for 16-bit magnitudes.
//!
//! Table construction works on sample magnitudes around the 8-bit midpoint:
//! a sample `s >= 128` has magnitude `s - 127`, a sample below has `128 - s`,
//! so both halves cover magnitudes 1..=128. With `steps = 2^(bits-1)` the
//! bucket edges follow
//!
//! ```text
//! edge(c) = 128 * (2^(c / steps) - 1) + 0.5      c = 1..=steps
//! ```
//!
//! Bucket `c` holds magnitudes in `(floor(edge(c-1)), floor(edge(c))]` and is
//! assigned code `steps + c - 1` on the positive side and `steps - c` on the
//! negative side. Expansion maps a code back to the midpoint of its bucket.
//! Edges closer than one apart (only at 8 bits, near zero) are pushed up so
//! every bucket is non-empty.

use thiserror::Error;

use crate::bitpack;

pub const MIN_BITS: u8 = 1;
pub const MAX_BITS: u8 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompandError {
    #[error("code width {0} is outside 1..=8 bits")]
    BitsOutOfRange(u8),
    #[error("payload of {have} bytes holds fewer than {count} codes of {bits} bits")]
    PayloadTooShort { have: usize, count: usize, bits: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompandTables {
    bits: u8,
    compress: [u8; 256],
    expand: Vec<u8>,
}

impl CompandTables {
    pub fn build(bits: u8) -> Result<Self, CompandError> {
        if !(MIN_BITS..=MAX_BITS).contains(&bits) {
            return Err(CompandError::BitsOutOfRange(bits));
        }
        let steps = 1usize << (bits - 1);
        let mut compress = [0u8; 256];
        let mut expand = vec![0u8; 2 * steps];

        let mut last_edge = 0.0f64;
        let mut last_top = 0usize;
        for c in 1..=steps {
            let edge =
                (128.0 * ((c as f64 / steps as f64).exp2() - 1.0) + 0.5).max(last_edge + 1.0);
            let top = edge.floor() as usize;
            for m in last_top + 1..=top.min(128) {
                compress[127 + m] = (steps + c - 1) as u8;
                compress[128 - m] = (steps - c) as u8;
            }
            let half = ((edge + last_edge) / 2.0).floor() as u8;
            expand[steps + c - 1] = 128 + half;
            expand[steps - c] = 127 - half;
            last_edge = edge;
            last_top = top;
        }
        debug_assert_eq!(last_top, 128);
        Ok(Self {
            bits,
            compress,
            expand,
        })
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    /// Half the number of codes; codes below this are the negative side.
    pub fn steps(&self) -> usize {
        1 << (self.bits - 1)
    }

    pub fn compress_table(&self) -> &[u8; 256] {
        &self.compress
    }

    pub fn expand_table(&self) -> &[u8] {
        &self.expand
    }

    #[inline]
    pub fn compress(&self, sample: u8) -> u8 {
        self.compress[usize::from(sample)]
    }

    #[inline]
    pub fn expand(&self, code: u8) -> u8 {
        self.expand[usize::from(code)]
    }
}

pub fn build_tables(bits: u8) -> Result<CompandTables, CompandError> {
    CompandTables::build(bits)
}

pub fn compand_encode(samples: &[u8], tables: &CompandTables) -> Vec<u8> {
    bitpack::pack(samples.iter().map(|&s| tables.compress(s)), tables.bits)
}

pub fn compand_decode(
    payload: &[u8],
    tables: &CompandTables,
    sample_count: usize,
) -> Result<Vec<u8>, CompandError> {
    let codes = bitpack::unpack(payload, tables.bits, sample_count).ok_or(
        CompandError::PayloadTooShort {
            have: payload.len(),
            count: sample_count,
            bits: tables.bits,
        },
    )?;
    Ok(codes.into_iter().map(|c| tables.expand(c)).collect())
}

/// Scale for the 16-bit exponential mapping: 32767 targets 15-bit output,
/// 127 targets 8-bit output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MappingParams16 {
    pub scale: u32,
}

impl MappingParams16 {
    pub const FIFTEEN_BIT: Self = Self { scale: 32767 };
    pub const EIGHT_BIT: Self = Self { scale: 127 };
}

const MAGNITUDE_SPAN: f64 = 65536.0;

/// `sign(s) * scale * (2^(|s|/65536) - 1)`, rounded half away from zero.
///
/// Operates on magnitudes, so values up to 65535 are accepted even though
/// they do not fit an `i16`.
pub fn map16(sample: i32, params: &MappingParams16) -> i32 {
    let mag = f64::from(sample.unsigned_abs());
    let mapped = f64::from(params.scale) * ((mag / MAGNITUDE_SPAN).exp2() - 1.0);
    sample.signum() * mapped.round() as i32
}

/// Inverse of [`map16`]: `sign(m) * 65536 * log2(1 + |m|/scale)`, rounded.
pub fn unmap16(mapped: i32, params: &MappingParams16) -> i32 {
    let mag = f64::from(mapped.unsigned_abs());
    let sample = MAGNITUDE_SPAN * (1.0 + mag / f64::from(params.scale)).log2();
    mapped.signum() * sample.round() as i32
}

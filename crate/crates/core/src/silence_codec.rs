//! Silence compression: run-length coding of near-silent stretches in
//! 8-bit unsigned PCM.
//!
//! Samples within `threshold` of `silence_center` count as silence. Once
//! `start_threshold` consecutive silent samples are seen a run opens and is
//! written as `silence_code` followed by a one-byte count. The run keeps
//! going (swallowing short bursts of noise) until `stop_threshold`
//! consecutive non-silent samples show up. On decode every pair becomes
//! `count` copies of `silence_center`, so length is preserved exactly but
//! the silent values themselves are flattened.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SilenceError {
    #[error("stream ends right after a silence code at offset {0}")]
    TruncatedRun(usize),
    #[error("invalid silence parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SilenceParams {
    pub silence_center: u8,
    /// Largest `|sample - center|` still treated as silence.
    pub threshold: u8,
    pub silence_code: u8,
    pub start_threshold: u8,
    pub stop_threshold: u8,
}

impl Default for SilenceParams {
    fn default() -> Self {
        Self {
            silence_center: 0x80,
            threshold: 4,
            silence_code: 0xFF,
            start_threshold: 5,
            stop_threshold: 2,
        }
    }
}

impl SilenceParams {
    pub fn validate(&self) -> Result<(), SilenceError> {
        let center = i16::from(self.silence_center);
        let t = i16::from(self.threshold);
        if center - t < 0 || center + t > 255 {
            return Err(SilenceError::InvalidParams(format!(
                "silence band {:#04x} +/- {} leaves the 0..=255 sample range",
                self.silence_center, self.threshold
            )));
        }
        if self.is_silence(self.silence_code) {
            return Err(SilenceError::InvalidParams(format!(
                "silence code {:#04x} lies inside the silence band",
                self.silence_code
            )));
        }
        if self.start_threshold == 0 || self.stop_threshold == 0 {
            return Err(SilenceError::InvalidParams(
                "start and stop thresholds must be at least 1".into(),
            ));
        }
        Ok(())
    }

    #[inline]
    pub fn is_silence(&self, sample: u8) -> bool {
        sample.abs_diff(self.silence_center) <= self.threshold
    }

    /// Literal replacement for a sample that collides with the escape code.
    fn clamp_literal(&self, sample: u8) -> u8 {
        if sample != self.silence_code {
            sample
        } else if sample > self.silence_center {
            sample - 1
        } else {
            sample + 1
        }
    }
}

pub fn is_silence(sample: u8, params: &SilenceParams) -> bool {
    params.is_silence(sample)
}

pub fn encode_silence(samples: &[u8], params: &SilenceParams) -> Vec<u8> {
    let start = usize::from(params.start_threshold.max(1));
    let stop = usize::from(params.stop_threshold.max(1));
    let silent = |range: &[u8]| range.iter().filter(|&&s| params.is_silence(s)).count();

    let mut out = Vec::with_capacity(samples.len());
    let mut i = 0;
    while i < samples.len() {
        let opens = i + start <= samples.len() && silent(&samples[i..i + start]) == start;
        if opens {
            let mut run = 0usize;
            // Past the end counts as non-silent, which closes any open run.
            while i < samples.len() && silent(&samples[i..(i + stop).min(samples.len())]) > 0 {
                run += 1;
                i += 1;
            }
            push_run(&mut out, run, params.silence_code);
            continue;
        }
        out.push(params.clamp_literal(samples[i]));
        i += 1;
    }
    out
}

fn push_run(out: &mut Vec<u8>, mut run: usize, code: u8) {
    while run > 0 {
        let n = run.min(255);
        out.push(code);
        out.push(n as u8);
        run -= n;
    }
}

pub fn decode_silence(stream: &[u8], params: &SilenceParams) -> Result<Vec<u8>, SilenceError> {
    let mut out = Vec::with_capacity(stream.len());
    let mut bytes = stream.iter().enumerate();
    while let Some((at, &b)) = bytes.next() {
        if b == params.silence_code {
            let (_, &count) = bytes.next().ok_or(SilenceError::TruncatedRun(at))?;
            out.resize(out.len() + usize::from(count), params.silence_center);
        } else {
            out.push(b);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p() -> SilenceParams {
        SilenceParams::default()
    }

    #[test]
    fn silence_band() {
        assert!(is_silence(0x80, &p()));
        assert!(is_silence(0x84, &p()));
        assert!(!is_silence(0x85, &p()));
        assert!(is_silence(0x7C, &p()));
        assert!(!is_silence(0x7B, &p()));
    }

    #[test]
    fn worked_example() {
        let input = [0x80, 0x81, 0x80, 0x81, 0x80, 0x80, 0x80, 0x45];
        assert_eq!(encode_silence(&input, &p()), vec![0xFF, 0x07, 0x45]);
        assert_eq!(decode_silence(&[0xFF, 0x05], &p()).unwrap(), vec![0x80; 5]);
    }

    #[test]
    fn short_silence_passes_through() {
        assert_eq!(
            encode_silence(&[0x10, 0x20, 0x30], &p()),
            vec![0x10, 0x20, 0x30]
        );
        let four = [0x80; 4];
        assert_eq!(encode_silence(&four, &p()), four.to_vec());
        assert_eq!(
            decode_silence(&[0x10, 0x20], &p()).unwrap(),
            vec![0x10, 0x20]
        );
    }

    /// Expands pairs naively, with no shared code with the decoder.
    fn brute_expand(stream: &[u8]) -> Vec<u8> {
        let mut out = Vec::new();
        let mut k = 0;
        while k < stream.len() {
            if stream[k] == 0xFF {
                out.extend(std::iter::repeat_n(0x80, usize::from(stream[k + 1])));
                k += 2;
            } else {
                out.push(stream[k]);
                k += 1;
            }
        }
        out
    }

    #[test]
    fn long_runs_split_at_255() {
        let input = vec![0x80; 300];
        let encoded = encode_silence(&input, &p());
        assert_eq!(encoded, vec![0xFF, 0xFF, 0xFF, 0x2D]);
        assert_eq!(brute_expand(&encoded), input);
        assert_eq!(decode_silence(&encoded, &p()).unwrap(), input);
        assert_eq!(encode_silence(&[0x80; 255], &p()), vec![0xFF, 0xFF]);
        assert_eq!(
            encode_silence(&[0x80; 510], &p()),
            vec![0xFF, 0xFF, 0xFF, 0xFF]
        );
    }

    #[test]
    fn escape_collision_is_clamped() {
        assert_eq!(encode_silence(&[0xFF], &p()), vec![0xFE]);
        let low_code = SilenceParams {
            silence_code: 0x00,
            ..p()
        };
        assert_eq!(encode_silence(&[0x00], &low_code), vec![0x01]);
    }

    #[test]
    fn isolated_noise_is_absorbed() {
        // one noisy sample inside silence: shorter than stop_threshold
        let mut input = vec![0x80; 10];
        input[5] = 0x40;
        assert_eq!(encode_silence(&input, &p()), vec![0xFF, 10]);
        // two noisy samples close the run and are emitted verbatim
        let mut input = vec![0x80; 12];
        input[5] = 0x40;
        input[6] = 0x41;
        assert_eq!(
            encode_silence(&input, &p()),
            vec![0xFF, 5, 0x40, 0x41, 0xFF, 5]
        );
    }

    #[test]
    fn truncated_run_is_an_error() {
        assert_eq!(
            decode_silence(&[0xFF], &p()),
            Err(SilenceError::TruncatedRun(0))
        );
        assert_eq!(
            decode_silence(&[0x10, 0xFF], &p()),
            Err(SilenceError::TruncatedRun(1))
        );
    }

    #[test]
    fn zero_count_expands_to_nothing() {
        assert_eq!(
            decode_silence(&[0x10, 0xFF, 0x00, 0x20], &p()).unwrap(),
            vec![0x10, 0x20]
        );
    }

    #[test]
    fn param_validation() {
        assert!(p().validate().is_ok());
        let bad = [
            SilenceParams {
                threshold: 0x80,
                ..p()
            },
            SilenceParams {
                threshold: 0x7F,
                ..p()
            },
            SilenceParams {
                start_threshold: 0,
                ..p()
            },
            SilenceParams {
                stop_threshold: 0,
                ..p()
            },
            SilenceParams {
                silence_code: 0x83,
                ..p()
            },
        ];
        for params in bad {
            assert!(params.validate().is_err(), "{params:?}");
        }
    }

    fn sample_stream() -> impl Strategy<Value = Vec<u8>> {
        // Bias toward silence so runs actually happen.
        proptest::collection::vec(prop_oneof![3 => 0x7Cu8..=0x84, 1 => any::<u8>()], 0..2000)
    }

    proptest! {
        #[test]
        fn length_is_restored(s in sample_stream(), start in 1u8..8, stop in 1u8..4) {
            let params = SilenceParams { start_threshold: start, stop_threshold: stop, ..p() };
            let decoded = decode_silence(&encode_silence(&s, &params), &params).unwrap();
            prop_assert_eq!(decoded.len(), s.len());
        }

        #[test]
        fn distortion_is_bounded(s in sample_stream()) {
            let params = p();
            let decoded = decode_silence(&encode_silence(&s, &params), &params).unwrap();
            for (i, (&orig, &got)) in s.iter().zip(&decoded).enumerate() {
                if orig == got {
                    continue;
                }
                if orig == params.silence_code && got == orig - 1 {
                    continue;
                }
                prop_assert_eq!(got, params.silence_center);
                if !params.is_silence(orig) {
                    // absorbed: a shorter-than-stop noisy burst bracketed by silence
                    let lo = i.saturating_sub(1);
                    let hi = (i + 1).min(s.len() - 1);
                    prop_assert!(params.is_silence(s[lo]) || params.is_silence(s[hi]));
                }
            }
        }

        #[test]
        fn never_expands(s in sample_stream(), start in 2u8..8) {
            let params = SilenceParams { start_threshold: start, ..p() };
            prop_assert!(encode_silence(&s, &params).len() <= s.len());
        }

        #[test]
        fn identity_without_silence(s in proptest::collection::vec(0u8..0x7C, 0..500)) {
            let params = p();
            let encoded = encode_silence(&s, &params);
            prop_assert_eq!(&encoded, &s);
            prop_assert_eq!(decode_silence(&encoded, &params).unwrap(), s);
        }
    }
}

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("input size is zero")]
pub struct EmptyInput;

/// Input/output sizes of one compression and the space saved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompressionReport {
    pub input_bytes: u64,
    pub output_bytes: u64,
    /// `100 - floor(100 * output / input)`; negative when the output grew.
    pub ratio_percent: i64,
}

pub fn make_report(input_bytes: u64, output_bytes: u64) -> Result<CompressionReport, EmptyInput> {
    if input_bytes == 0 {
        return Err(EmptyInput);
    }
    let kept = (u128::from(output_bytes) * 100 / u128::from(input_bytes)) as i64;
    Ok(CompressionReport {
        input_bytes,
        output_bytes,
        ratio_percent: 100 - kept,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(i: u64, o: u64) -> i64 {
        make_report(i, o).unwrap().ratio_percent
    }

    #[test]
    fn published_silence_rows() {
        assert_eq!(ratio(34_618, 25_099), 28);
        assert_eq!(ratio(14_028, 7_052), 50);
        assert_eq!(ratio(14_028, 9_074), 36);
        assert_eq!(ratio(20_298, 13_887), 32);
        assert_eq!(ratio(29_930, 13_310), 56);
    }

    #[test]
    fn published_companding_rows() {
        let outputs = [4390, 8709, 13028, 17347, 21666, 25985, 30304, 34618];
        let ratios: Vec<i64> = outputs.iter().map(|&o| ratio(34_618, o)).collect();
        assert_eq!(ratios, [88, 75, 63, 50, 38, 25, 13, 0]);
    }

    #[test]
    fn edge_cases() {
        assert_eq!(ratio(7, 7), 0);
        assert_eq!(ratio(100, 0), 100);
        assert_eq!(ratio(100, 150), -50);
        assert_eq!(ratio(34_618, 34_638), 0);
        assert_eq!(make_report(0, 10), Err(EmptyInput));
    }
}

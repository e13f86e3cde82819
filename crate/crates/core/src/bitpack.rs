//! MSB-first packing of fixed-width codes.

/// Packs `bits`-wide codes (1..=8) into bytes, most significant bit first.
/// The final byte is zero-padded.
pub fn pack(codes: impl IntoIterator<Item = u8>, bits: u8) -> Vec<u8> {
    debug_assert!((1..=8).contains(&bits));
    let mask = (1u16 << bits) - 1;
    let mut out = Vec::new();
    let mut acc: u16 = 0;
    let mut filled: u8 = 0;
    for code in codes {
        acc = (acc << bits) | (u16::from(code) & mask);
        filled += bits;
        if filled >= 8 {
            filled -= 8;
            out.push((acc >> filled) as u8);
            acc &= (1 << filled) - 1;
        }
    }
    if filled > 0 {
        out.push((acc << (8 - filled)) as u8);
    }
    out
}

/// Reads `count` codes back out of `bytes`. Returns `None` if the buffer
/// holds fewer than `count * bits` bits.
pub fn unpack(bytes: &[u8], bits: u8, count: usize) -> Option<Vec<u8>> {
    debug_assert!((1..=8).contains(&bits));
    if packed_len(count, bits) > bytes.len() {
        return None;
    }
    let mask = (1u16 << bits) - 1;
    let mut out = Vec::with_capacity(count);
    let mut acc: u16 = 0;
    let mut avail: u8 = 0;
    let mut next = bytes.iter();
    while out.len() < count {
        if avail < bits {
            acc = (acc << 8) | u16::from(*next.next()?);
            avail += 8;
        }
        avail -= bits;
        out.push(((acc >> avail) & mask) as u8);
        acc &= (1 << avail) - 1;
    }
    Some(out)
}

/// Number of bytes needed for `count` codes of width `bits`.
pub fn packed_len(count: usize, bits: u8) -> usize {
    (count * usize::from(bits)).div_ceil(8)
}

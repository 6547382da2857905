//! Small helpers for `u64` bitmask views.

#[inline]
pub(crate) fn low_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Iterates the set bit positions of `mask`, lowest first.
#[inline]
pub(crate) fn bit_positions(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let tz = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(tz)
        }
    })
}

/// Reverses the lowest `width` bits of `mask`.
#[inline]
pub(crate) fn reverse_bits(mask: u64, width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        mask.reverse_bits() >> (64 - width)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_reversal() {
        assert_eq!(bit_positions(0b1011).collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(reverse_bits(0b0011, 4), 0b1100);
        assert_eq!(reverse_bits(1, 64), 1 << 63);
        assert_eq!(low_mask(64), u64::MAX);
        assert_eq!(low_mask(3), 0b111);
    }
}

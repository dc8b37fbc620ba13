//! Cantor pairing and the integer fold used by the column schemes.

/// Cantor pairing `π(a, b) = (a + b)(a + b + 1)/2 + b`.
///
/// Strictly increasing in `b` for fixed `a`.
pub fn pair(a: u64, b: u64) -> u64 {
    let s = a + b;
    s * (s + 1) / 2 + b
}

/// Inverse of [`pair`].
pub fn unpair(z: u64) -> (u64, u64) {
    // Largest s with s(s+1)/2 <= z.
    let mut s = ((((8 * z as u128) + 1) as f64).sqrt() as u64).saturating_sub(1) / 2;
    while (s + 1) * (s + 2) / 2 <= z {
        s += 1;
    }
    while s * (s + 1) / 2 > z {
        s -= 1;
    }
    let b = z - s * (s + 1) / 2;
    (s - b, b)
}

/// Interleaves ℤ into ω: `i ↦ 2i` for `i ≥ 0`, `i ↦ -2i - 1` otherwise.
pub fn fold(i: i64) -> u64 {
    if i >= 0 {
        2 * i as u64
    } else {
        (-2 * i - 1) as u64
    }
}

pub fn unfold(n: u64) -> i64 {
    if n.is_multiple_of(2) {
        (n / 2) as i64
    } else {
        -(n.div_ceil(2) as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(pair(0, 0), 0);
        assert_eq!(pair(1, 0), 1);
        assert_eq!(pair(0, 1), 2);
        assert_eq!(pair(2, 0), 3);
        assert_eq!(fold(0), 0);
        assert_eq!(fold(-1), 1);
        assert_eq!(fold(1), 2);
        assert_eq!(fold(-2), 3);
    }

    #[test]
    fn unpair_inverts_on_a_prefix() {
        for z in 0..20_000 {
            let (a, b) = unpair(z);
            assert_eq!(pair(a, b), z);
        }
        for n in 0..1000 {
            assert_eq!(fold(unfold(n)), n);
        }
    }

    #[test]
    fn unpair_large() {
        let z = pair(3_000_000, 1_234_567);
        assert_eq!(unpair(z), (3_000_000, 1_234_567));
    }
}

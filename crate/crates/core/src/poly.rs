//! Polynomials over GF(2) packed into machine words, bit `i` holding the
//! coefficient of `X^i`.

/// Degree of a nonzero polynomial; `None` for the zero polynomial.
pub fn degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

/// Carry-less product of two polynomials of degree < 61.
///
/// Processes `b` a nibble at a time against a 16-entry table of multiples of `a`.
pub fn clmul(a: u64, b: u64) -> u128 {
    debug_assert!(a >> 61 == 0);
    let mut table = [0u64; 16];
    for i in 1..16 {
        table[i] = if i & 1 == 1 {
            table[i - 1] ^ a
        } else {
            table[i >> 1] << 1
        };
    }
    let mut acc: u128 = 0;
    let mut shift = 64 - (b.leading_zeros() & !3);
    while shift > 0 {
        shift -= 4;
        acc = (acc << 4) ^ table[((b >> shift) & 0xf) as usize] as u128;
    }
    acc
}

/// Remainder of `p` modulo the polynomial `modulus` (nonzero).
pub fn reduce(mut p: u128, modulus: u64) -> u64 {
    let m = degree(modulus).expect("zero modulus");
    let wide = modulus as u128;
    while p >> m != 0 {
        let top = 127 - p.leading_zeros();
        p ^= wide << (top - m);
    }
    p as u64
}

pub fn mulmod(a: u64, b: u64, modulus: u64) -> u64 {
    reduce(clmul(a, b), modulus)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        a = reduce(a as u128, b);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Ben-Or irreducibility test: `f` of degree `m` is irreducible iff
/// `gcd(X^(2^i) - X, f) = 1` for every `1 <= i <= m/2`.
pub fn is_irreducible(f: u64) -> bool {
    let m = match degree(f) {
        None | Some(0) => return false,
        Some(m) => m,
    };
    const X: u64 = 0b10;
    let mut h = reduce(X as u128, f);
    for _ in 1..=m / 2 {
        h = mulmod(h, h, f);
        if gcd(h ^ X, f) != 1 {
            return false;
        }
    }
    true
}

/// The irreducible polynomial of degree `m` with the smallest integer encoding.
pub fn smallest_irreducible(m: u32) -> u64 {
    assert!((1..=62).contains(&m));
    let lo = 1u64 << m;
    (lo..lo << 1)
        .find(|&f| is_irreducible(f))
        .expect("irreducible polynomials exist in every degree")
}

//! Arithmetic in GF(2^{4n}) over a single polynomial basis.
//!
//! Every subfield GF(2^k) with `k | 4n` is handled implicitly: an element lies
//! in GF(2^k) exactly when it is fixed by `x -> x^(2^k)`, and the relative
//! trace and norm maps are built from Frobenius powers alone.

use std::fmt;
use std::ops::{Add, AddAssign};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::poly;

/// Largest supported `n`; keeps `q^4 - 1` and every exponent well inside `u128`
/// and the field degree within one machine word.
pub const MAX_N: u32 = 15;

/// A field element: bit `i` is the coefficient of `X^i` in the reduced
/// representative, so the encoding is canonical.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u64);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Lowercase hex with a `0x` prefix, e.g. `0x13`.
    pub fn to_hex(self) -> String {
        format!("{:#x}", self.0)
    }
}

impl Add for Element {
    type Output = Element;

    #[inline]
    fn add(self, rhs: Element) -> Element {
        Element(self.0 ^ rhs.0)
    }
}

impl AddAssign for Element {
    #[inline]
    fn add_assign(&mut self, rhs: Element) {
        self.0 ^= rhs.0;
    }
}

impl fmt::LowerHex for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// GF(2)-linear map on bit vectors, applied a byte at a time.
#[derive(Clone, Debug)]
struct LinearMap {
    tables: Vec<[u64; 256]>,
}

impl LinearMap {
    /// `images[j]` is the image of the basis vector `1 << j`.
    fn from_images(images: &[u64]) -> Self {
        let tables = images
            .chunks(8)
            .map(|chunk| {
                let mut table = [0u64; 256];
                for byte in 1..256usize {
                    let low = byte.trailing_zeros() as usize;
                    table[byte] = table[byte & (byte - 1)] ^ chunk.get(low).copied().unwrap_or(0);
                }
                table
            })
            .collect();
        LinearMap { tables }
    }

    #[inline]
    fn apply(&self, x: u64) -> u64 {
        self.tables
            .iter()
            .enumerate()
            .fold(0, |acc, (i, t)| acc ^ t[((x >> (8 * i)) & 0xff) as usize])
    }
}

/// A subfield GF(2^k) of the ambient field, described by a GF(2)-basis.
#[derive(Clone, Debug)]
pub struct Subfield {
    degree: u32,
    basis: Vec<Element>,
}

impl Subfield {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    /// Number of elements, `2^k`.
    pub fn len(&self) -> u64 {
        1u64 << self.degree
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Enumerates all `2^k` elements; `0` comes first.
    pub fn iter(&self) -> SubfieldIter<'_> {
        SubfieldIter {
            basis: &self.basis,
            index: 0,
            end: self.len(),
        }
    }

    /// Enumerates the nonzero elements.
    pub fn nonzero(&self) -> impl Iterator<Item = Element> + '_ {
        self.iter().skip(1)
    }
}

impl<'a> IntoIterator for &'a Subfield {
    type Item = Element;
    type IntoIter = SubfieldIter<'a>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

#[derive(Clone, Debug)]
pub struct SubfieldIter<'a> {
    basis: &'a [Element],
    index: u64,
    end: u64,
}

impl Iterator for SubfieldIter<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.index == self.end {
            return None;
        }
        let mut acc = Element::ZERO;
        let mut bits = self.index;
        while bits != 0 {
            acc += self.basis[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        self.index += 1;
        Some(acc)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = (self.end - self.index) as usize;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for SubfieldIter<'_> {}

/// Immutable description of GF(2^{4n}) together with the exponents and
/// cached helpers that the solver needs.
#[derive(Clone, Debug)]
pub struct Field {
    n: u32,
    degree: u32,
    modulus: u64,
    q: u64,
    d: u128,
    group_order: u128,
    frob_q: LinearMap,
    crt: [u128; 3],
    trace_one: Element,
    subfields: Vec<Subfield>,
}

impl Field {
    /// Builds GF(2^{4n}) over the smallest irreducible polynomial of degree `4n`.
    pub fn new(n: u32) -> Result<Field> {
        check_n(n)?;
        Field::build(n, poly::smallest_irreducible(4 * n))
    }

    /// Builds GF(2^{4n}) over `modulus`, given with its leading term
    /// (`X^4+X+1` is `0x13`).
    pub fn with_modulus(n: u32, modulus: u64) -> Result<Field> {
        check_n(n)?;
        let actual = poly::degree(modulus).unwrap_or(0);
        if actual != 4 * n || modulus == 0 {
            return Err(Error::DegreeMismatch {
                modulus,
                expected: 4 * n,
                actual,
            });
        }
        if !poly::is_irreducible(modulus) {
            return Err(Error::ReducibleModulus(modulus));
        }
        Field::build(n, modulus)
    }

    /// `new` or `with_modulus` depending on whether an override is given.
    pub fn make(n: u32, modulus_override: Option<u64>) -> Result<Field> {
        match modulus_override {
            Some(modulus) => Field::with_modulus(n, modulus),
            None => Field::new(n),
        }
    }

    fn build(n: u32, modulus: u64) -> Result<Field> {
        let degree = 4 * n;
        let q = 1u64 << n;
        let qw = q as u128;
        let d = qw * qw * qw + qw * qw + qw - 1;
        let group_order = (1u128 << degree) - 1;
        assert_eq!(d.gcd(&group_order), 1, "gcd(d, q^4 - 1) must be 1");

        let frob_images: Vec<u64> = (0..degree)
            .map(|j| {
                let mut x = 1u64 << j;
                for _ in 0..n {
                    x = poly::mulmod(x, x, modulus);
                }
                x
            })
            .collect();

        let mut field = Field {
            n,
            degree,
            modulus,
            q,
            d,
            group_order,
            frob_q: LinearMap::from_images(&frob_images),
            crt: crt_exponents(group_order, [qw - 1, qw + 1, qw * qw + 1]),
            trace_one: Element::ZERO,
            subfields: Vec::new(),
        };

        field.trace_one = (0..degree)
            .map(|i| Element(1 << i))
            .find(|&x| field.trace_raw(x, 1) == Element::ONE)
            .expect("the absolute trace is a nonzero functional");

        field.subfields = (1..=degree)
            .filter(|k| degree % k == 0)
            .map(|k| Subfield {
                degree: k,
                basis: field.subfield_basis(k),
            })
            .collect();
        Ok(field)
    }

    fn subfield_basis(&self, k: u32) -> Vec<Element> {
        // Tr_k^m is onto GF(2^k); reduce the images of the monomials to an
        // echelon basis.
        let mut pivots: Vec<u64> = Vec::with_capacity(k as usize);
        let mut basis = Vec::with_capacity(k as usize);
        for i in 0..self.degree {
            let image = self.trace_raw(Element(1 << i), k).0;
            let mut v = image;
            for &p in &pivots {
                v = v.min(v ^ p);
            }
            if v != 0 {
                pivots.push(v);
                pivots.sort_unstable_by(|a, b| b.cmp(a));
                basis.push(Element(image));
            }
        }
        assert_eq!(basis.len(), k as usize);
        basis
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Extension degree over GF(2), `4n`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The exponent `q^3 + q^2 + q - 1`.
    pub fn d(&self) -> u128 {
        self.d
    }

    /// `q^4 - 1`.
    pub fn group_order(&self) -> u128 {
        self.group_order
    }

    /// Number of field elements, `q^4`.
    pub fn size(&self) -> u64 {
        1u64 << self.degree
    }

    /// An element of absolute trace one.
    pub fn trace_one(&self) -> Element {
        self.trace_one
    }

    pub(crate) fn crt_exponents(&self) -> [u128; 3] {
        self.crt
    }

    /// The class of the indeterminate `X`.
    pub fn generator_x(&self) -> Element {
        Element(2)
    }

    pub fn element(&self, bits: u64) -> Result<Element> {
        if bits >> self.degree != 0 {
            return Err(Error::OutOfRange {
                value: format!("{bits:#x}"),
                bits: self.degree,
            });
        }
        Ok(Element(bits))
    }

    /// All `q^4` elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone + Send {
        (0..self.size()).map(Element)
    }

    pub(crate) fn element_unchecked(&self, bits: u64) -> Element {
        debug_assert!(bits >> self.degree == 0);
        Element(bits)
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        Element(poly::mulmod(a.0, b.0, self.modulus))
    }

    #[inline]
    pub fn square(&self, a: Element) -> Element {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Element, exp: u128) -> Element {
        let mut result = Element::ONE;
        let mut base = a;
        let mut e = exp;
        while e != 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            e >>= 1;
            if e != 0 {
                base = self.square(base);
            }
        }
        result
    }

    pub fn inv(&self, a: Element) -> Result<Element> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.group_order - 1))
    }

    pub fn div(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The unique square root, `a^(2^(4n-1))`.
    pub fn sqrt(&self, a: Element) -> Element {
        self.frobenius_2(a, self.degree - 1)
    }

    /// `a^(2^k)`.
    pub fn frobenius_2(&self, a: Element, k: u32) -> Element {
        (0..k % self.degree).fold(a, |x, _| self.square(x))
    }

    /// `a^(q^i)`; `i` is taken modulo 4.
    #[inline]
    pub fn frobenius_q(&self, a: Element, i: u32) -> Element {
        (0..i % 4).fold(a, |x, _| Element(self.frob_q.apply(x.0)))
    }

    /// True iff `a` lies in GF(2^k), i.e. `a^(2^k) = a`.
    pub fn in_subfield(&self, a: Element, k: u32) -> bool {
        if k % self.n == 0 {
            self.frobenius_q(a, k / self.n) == a
        } else {
            self.frobenius_2(a, k) == a
        }
    }

    fn check_degrees(&self, l: u32, k: u32) -> Result<()> {
        if l == 0 || k == 0 || k % l != 0 || self.degree % k != 0 {
            return Err(Error::InvalidDegree {
                sub: l,
                ext: k,
                field: self.degree,
            });
        }
        Ok(())
    }

    fn check_member(&self, a: Element, k: u32) -> Result<()> {
        if !self.in_subfield(a, k) {
            return Err(Error::NotInSubfield {
                element: a.0,
                degree: k,
            });
        }
        Ok(())
    }

    /// `Tr_l^m(a)` without membership checks.
    fn trace_raw(&self, a: Element, l: u32) -> Element {
        let mut acc = Element::ZERO;
        let mut x = a;
        for _ in 0..self.degree / l {
            acc += x;
            x = self.frobenius_2(x, l);
        }
        acc
    }

    fn conjugates(&self, a: Element, l: u32, k: u32) -> impl Iterator<Item = Element> + '_ {
        let step = move |x: Element| {
            if l % self.n == 0 {
                self.frobenius_q(x, l / self.n)
            } else {
                self.frobenius_2(x, l)
            }
        };
        std::iter::successors(Some(a), move |&x| Some(step(x))).take((k / l) as usize)
    }

    /// Relative trace `Tr_l^k(a) = sum_i a^(2^(l i))` from GF(2^k) to GF(2^l).
    pub fn trace_rel(&self, a: Element, l: u32, k: u32) -> Result<Element> {
        self.check_degrees(l, k)?;
        self.check_member(a, k)?;
        Ok(self.conjugates(a, l, k).fold(Element::ZERO, |acc, x| acc + x))
    }

    /// Relative norm `N_l^k(a) = prod_i a^(2^(l i))` from GF(2^k) to GF(2^l).
    pub fn norm_rel(&self, a: Element, l: u32, k: u32) -> Result<Element> {
        self.check_degrees(l, k)?;
        self.check_member(a, k)?;
        Ok(self
            .conjugates(a, l, k)
            .fold(Element::ONE, |acc, x| self.mul(acc, x)))
    }

    /// Absolute trace `Tr_1^k(a)` as a bit.
    pub fn abs_trace(&self, a: Element, k: u32) -> Result<bool> {
        Ok(self.trace_rel(a, 1, k)? == Element::ONE)
    }

    /// `N_n^{4n}(a) = a^(1+q+q^2+q^3)`.
    pub fn norm_to_q(&self, a: Element) -> Element {
        (1..4).fold(a, |acc, i| self.mul(acc, self.frobenius_q(a, i)))
    }

    /// `Tr_n^{4n}(a) = a + a^q + a^(q^2) + a^(q^3)`.
    pub fn trace_to_q(&self, a: Element) -> Element {
        (1..4).fold(a, |acc, i| acc + self.frobenius_q(a, i))
    }

    /// The subfield GF(2^k); `k` must divide `4n`.
    pub fn subfield(&self, k: u32) -> Result<&Subfield> {
        self.subfields
            .iter()
            .find(|s| s.degree == k)
            .ok_or(Error::InvalidDegree {
                sub: k,
                ext: self.degree,
                field: self.degree,
            })
    }

    pub fn encode_hex(&self, a: Element) -> String {
        a.to_hex()
    }

    /// Parses `0x`-prefixed (or bare) hex into an element of this field.
    pub fn decode_hex(&self, s: &str) -> Result<Element> {
        let bits = parse_hex_u64(s, self.degree)?;
        self.element(bits)
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::UnsupportedN { n, max: MAX_N });
    }
    Ok(())
}

/// Parses `0x`-prefixed or bare hex into a `u64`; `bits` only labels the
/// overflow error.
pub fn parse_hex_u64(s: &str, bits: u32) -> Result<u64> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_hexdigit()) {
        return Err(Error::MalformedHex(s.to_owned()));
    }
    let significant = digits.trim_start_matches('0');
    if significant.len() > 16 {
        return Err(Error::OutOfRange {
            value: s.to_owned(),
            bits,
        });
    }
    if significant.is_empty() {
        return Ok(0);
    }
    u64::from_str_radix(significant, 16).map_err(|_| Error::MalformedHex(s.to_owned()))
}

/// CRT idempotent exponents for pairwise coprime `moduli` whose product is
/// `order`: `e_i = 1 mod moduli[i]` and `0` modulo the others.
fn crt_exponents(order: u128, moduli: [u128; 3]) -> [u128; 3] {
    debug_assert_eq!(moduli.iter().product::<u128>(), order);
    moduli.map(|mi| {
        if mi == 1 {
            return 0;
        }
        let cofactor = order / mi;
        let eg = ((cofactor % mi) as i128).extended_gcd(&(mi as i128));
        debug_assert_eq!(eg.gcd, 1);
        let inv = eg.x.rem_euclid(mi as i128) as u128;
        (cofactor * inv) % order
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fields() -> Vec<Field> {
        (1..=3).map(|n| Field::new(n).unwrap()).collect()
    }

    #[test]
    fn default_modulus_n1() {
        let f = Field::new(1).unwrap();
        assert_eq!(f.modulus(), 0x13);
        assert_eq!(f.q(), 2);
        assert_eq!(f.d(), 13);
        assert_eq!(f.group_order(), 15);
    }

    #[test]
    fn derived_integers_n2() {
        let f = Field::new(2).unwrap();
        assert_eq!((f.q(), f.d(), f.group_order()), (4, 83, 255));
    }

    #[test]
    fn modulus_errors() {
        assert_eq!(
            Field::with_modulus(1, 0x15).unwrap_err(),
            Error::ReducibleModulus(0x15)
        );
        assert!(matches!(
            Field::with_modulus(1, 0x25),
            Err(Error::DegreeMismatch { actual: 5, .. })
        ));
        assert!(matches!(
            Field::with_modulus(2, 0),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(Field::new(0), Err(Error::UnsupportedN { .. })));
        assert!(matches!(Field::new(16), Err(Error::UnsupportedN { .. })));
        assert!(Field::with_modulus(1, 0x19).is_ok());
    }

    #[test]
    fn largest_supported_field_builds() {
        let f = Field::new(MAX_N).unwrap();
        let a = f.element(0x0123_4567_89ab_cdef >> 4).unwrap();
        assert_eq!(f.pow(a, f.group_order()), Element::ONE);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), Element::ONE);
    }

    #[test]
    fn inverse_of_zero() {
        let f = Field::new(1).unwrap();
        assert_eq!(f.inv(Element::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn group_order_exhaustive() {
        for f in fields().into_iter().take(2) {
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, f.group_order()), Element::ONE);
            }
        }
    }

    #[test]
    fn power_d_is_a_bijection() {
        for f in fields() {
            let mut seen = vec![false; f.size() as usize];
            for a in f.elements() {
                let image = f.pow(a, f.d());
                assert!(!std::mem::replace(&mut seen[image.bits() as usize], true));
            }
            let (d, order) = (f.d() as i128, f.group_order() as i128);
            let d_inv = d.extended_gcd(&order).x.rem_euclid(order) as u128;
            for a in f.elements().step_by(7) {
                assert_eq!(f.pow(f.pow(a, f.d()), d_inv), a);
            }
        }
    }

    #[test]
    fn sqrt_and_frobenius_exhaustive() {
        for f in fields().into_iter().take(2) {
            assert_eq!(f.sqrt(Element::ZERO), Element::ZERO);
            assert_eq!(f.sqrt(Element::ONE), Element::ONE);
            for a in f.elements() {
                assert_eq!(f.sqrt(f.square(a)), a);
                assert_eq!(f.square(f.sqrt(a)), a);
                assert_eq!(f.frobenius_q(a, 0), a);
                assert_eq!(f.frobenius_q(f.frobenius_q(a, 2), 2), a);
                assert_eq!(f.frobenius_q(a, 1), f.pow(a, f.q() as u128));
                assert_eq!(f.frobenius_q(a, 3), f.pow(a, (f.q() as u128).pow(3)));
            }
            for z in f.subfield(f.n()).unwrap() {
                for i in 0..4 {
                    assert_eq!(f.frobenius_q(z, i), z);
                }
            }
        }
    }

    #[test]
    fn trace_and_norm_examples() {
        for f in fields() {
            let n = f.n();
            let m = f.degree();
            assert_eq!(f.trace_rel(Element::ZERO, 1, n).unwrap(), Element::ZERO);
            let expected = if n % 2 == 1 { Element::ONE } else { Element::ZERO };
            assert_eq!(f.trace_rel(Element::ONE, 1, n).unwrap(), expected);
            assert_eq!(f.norm_rel(Element::ONE, n, m).unwrap(), Element::ONE);
            for a in f.subfield(n).unwrap() {
                assert_eq!(f.norm_rel(a, n, m).unwrap(), f.pow(a, 4));
                assert_eq!(f.norm_to_q(a), f.pow(a, 4));
            }
            for a in f.subfield(2 * n).unwrap() {
                let inner = f.trace_rel(a, n, 2 * n).unwrap();
                assert_eq!(
                    f.trace_rel(a, 1, 2 * n).unwrap(),
                    f.trace_rel(inner, 1, n).unwrap()
                );
            }
        }
    }

    #[test]
    fn trace_norm_errors() {
        let f = Field::new(2).unwrap();
        let x = f.generator_x();
        assert_eq!(
            f.trace_rel(x, 1, 4),
            Err(Error::NotInSubfield {
                element: 2,
                degree: 4
            })
        );
        assert!(matches!(f.norm_rel(x, 3, 4), Err(Error::InvalidDegree { .. })));
        assert!(matches!(f.trace_rel(x, 1, 3), Err(Error::InvalidDegree { .. })));
        assert!(matches!(f.trace_rel(x, 0, 8), Err(Error::InvalidDegree { .. })));
    }

    #[test]
    fn trace_and_norm_land_in_subfields() {
        for f in fields().into_iter().take(2) {
            let m = f.degree();
            let divisors: Vec<u32> = (1..=m).filter(|k| m % k == 0).collect();
            for &k in &divisors {
                for &l in divisors.iter().filter(|&&l| k % l == 0) {
                    for a in f.subfield(k).unwrap() {
                        assert!(f.in_subfield(f.trace_rel(a, l, k).unwrap(), l));
                        assert!(f.in_subfield(f.norm_rel(a, l, k).unwrap(), l));
                    }
                }
            }
        }
    }

    #[test]
    fn subfield_enumeration() {
        for f in fields() {
            for k in [1, f.n(), 2 * f.n(), 4 * f.n()] {
                let sub = f.subfield(k).unwrap();
                let mut all: Vec<Element> = sub.iter().collect();
                assert_eq!(all.len() as u64, 1 << k);
                assert!(all.iter().all(|&a| f.in_subfield(a, k)));
                all.sort();
                all.dedup();
                assert_eq!(all.len() as u64, 1 << k);
            }
            let count = f.elements().filter(|&a| f.in_subfield(a, 2 * f.n())).count();
            assert_eq!(count as u64, f.q() * f.q());
        }
    }

    #[test]
    fn membership_basics() {
        for f in fields() {
            for k in [1, f.n(), 2 * f.n()] {
                assert!(f.in_subfield(Element::ZERO, k));
                assert!(f.in_subfield(Element::ONE, k));
            }
        }
        // X generates GF(16) over GF(2) with modulus X^4+X+1.
        let f = Field::new(1).unwrap();
        assert!(!f.in_subfield(f.generator_x(), 2));
    }

    #[test]
    fn hex_codec() {
        let f = Field::new(1).unwrap();
        assert_eq!(f.encode_hex(Element::ONE), "0x1");
        assert_eq!(f.encode_hex(f.generator_x()), "0x2");
        assert_eq!(f.decode_hex("0xf").unwrap().bits(), 15);
        assert_eq!(f.decode_hex("0x0").unwrap(), Element::ZERO);
        assert_eq!(f.decode_hex("0X00a").unwrap().bits(), 10);
        assert!(matches!(f.decode_hex("0x10"), Err(Error::OutOfRange { .. })));
        assert!(matches!(f.decode_hex("0x"), Err(Error::MalformedHex(_))));
        assert!(matches!(f.decode_hex("0xg1"), Err(Error::MalformedHex(_))));
        assert!(matches!(f.decode_hex("-1"), Err(Error::MalformedHex(_))));
        assert!(matches!(
            f.decode_hex("0x1ffffffffffffffff"),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn crt_exponents_are_idempotents() {
        for f in fields() {
            let q = f.q() as u128;
            let moduli = [q - 1, q + 1, q * q + 1];
            let e = f.crt_exponents();
            for (i, &ei) in e.iter().enumerate() {
                for (j, &mj) in moduli.iter().enumerate() {
                    assert_eq!(ei % mj, u128::from(i == j) % mj);
                }
            }
        }
    }

    #[test]
    fn trace_one_element() {
        for f in fields() {
            assert!(f.abs_trace(f.trace_one(), f.degree()).unwrap());
        }
    }

    fn field_and_triples() -> impl Strategy<Value = (u32, u64, u64, u64)> {
        (1u32..=3).prop_flat_map(|n| {
            let mask = (1u64 << (4 * n)) - 1;
            (
                Just(n),
                any::<u64>().prop_map(move |v| v & mask),
                any::<u64>().prop_map(move |v| v & mask),
                any::<u64>().prop_map(move |v| v & mask),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30_000))]

        #[test]
        fn field_axioms((n, a, b, c) in field_and_triples()) {
            let f = Field::new(n).unwrap();
            let (a, b, c) = (Element(a), Element(b), Element(c));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
            prop_assert_eq!(f.mul(a, Element::ONE), a);
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Element::ONE);
            }
            prop_assert_eq!(f.norm_to_q(f.mul(a, b)), f.mul(f.norm_to_q(a), f.norm_to_q(b)));
        }
    }
}

//! Roots-of-unity subgroups of GF(q^4)^*, the decomposition
//! `GF(q^4)^* = mu_{q-1} * mu_{q+1} * mu_{q^2+1}`, and the quadratic solvers
//! built on Artin-Schreier equations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Element, Field};

/// Components of `x = z * lambda * t` with `z` in `mu_{q-1}`, `lambda` in
/// `mu_{q+1}` and `t` in `mu_{q^2+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnityTriple {
    pub z: Element,
    pub lambda: Element,
    pub t: Element,
}

/// Where the roots of `c^2 + z c + 1 = 0` live, for `z` in GF(2^m)^*.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootLocation {
    /// GF(2^m) itself.
    Subfield,
    /// `mu_{2^m+1} \ {1}` inside GF(2^{2m}).
    UnityCoset,
}

/// Roots of a quadratic; a repeated root is listed twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticRoots {
    pub roots: Vec<Element>,
    pub location: RootLocation,
}

impl QuadraticRoots {
    fn none() -> Self {
        QuadraticRoots {
            roots: Vec::new(),
            location: RootLocation::Subfield,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// `a != 0` and `a^m = 1`.
pub fn mu_member(field: &Field, a: Element, m: u128) -> bool {
    !a.is_zero() && field.pow(a, m) == Element::ONE
}

pub fn decompose_unity(field: &Field, x: Element) -> Result<UnityTriple> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let [e1, e2, e3] = field.crt_exponents();
    Ok(UnityTriple {
        z: field.pow(x, e1),
        lambda: field.pow(x, e2),
        t: field.pow(x, e3),
    })
}

fn check_subfield(field: &Field, a: Element, k: u32) -> Result<()> {
    if k == 0 || field.degree() % k != 0 {
        return Err(Error::InvalidDegree {
            sub: k,
            ext: field.degree(),
            field: field.degree(),
        });
    }
    if !field.in_subfield(a, k) {
        return Err(Error::NotInSubfield {
            element: a.bits(),
            degree: k,
        });
    }
    Ok(())
}

/// Both roots of `y^2 + y = w` in GF(2^k), or none when `Tr_1^k(w) = 1`.
pub fn solve_artin_schreier(field: &Field, w: Element, k: u32) -> Result<QuadraticRoots> {
    check_subfield(field, w, k)?;
    if field.abs_trace(w, k)? {
        return Ok(QuadraticRoots::none());
    }
    let y = if k % 2 == 1 {
        half_trace(field, w, k)
    } else {
        // y = sum_{i=1}^{k-1} (sum_{j<i} theta^(2^j)) w^(2^i) with Tr_1^k(theta) = 1.
        // Tr_1^k(Tr_k^m(g)) = Tr_1^m(g), so one trace-one g serves every subfield.
        let theta = field.trace_rel(field.trace_one(), k, field.degree())?;
        let mut y = Element::ZERO;
        let mut partial = Element::ZERO;
        let mut theta_pow = theta;
        let mut w_pow = w;
        for _ in 1..k {
            partial += theta_pow;
            theta_pow = field.square(theta_pow);
            w_pow = field.square(w_pow);
            y += field.mul(partial, w_pow);
        }
        y
    };
    debug_assert_eq!(field.square(y) + y, w);
    Ok(QuadraticRoots {
        roots: vec![y, y + Element::ONE],
        location: RootLocation::Subfield,
    })
}

/// `sum_{i=0}^{(k-1)/2} w^(4^i)`, a root of `y^2 + y = w` for odd `k`.
fn half_trace(field: &Field, w: Element, k: u32) -> Element {
    let mut acc = Element::ZERO;
    let mut x = w;
    for _ in 0..=(k - 1) / 2 {
        acc += x;
        x = field.frobenius_2(x, 2);
    }
    acc
}

/// All roots of `x^2 + u x + v = 0` in GF(2^k).
pub fn solve_quadratic(field: &Field, u: Element, v: Element, k: u32) -> Result<QuadraticRoots> {
    check_subfield(field, u, k)?;
    check_subfield(field, v, k)?;
    if u.is_zero() {
        let r = field.sqrt(v);
        return Ok(QuadraticRoots {
            roots: vec![r, r],
            location: RootLocation::Subfield,
        });
    }
    let w = field.div(v, field.square(u))?;
    let mut sol = solve_artin_schreier(field, w, k)?;
    for r in &mut sol.roots {
        *r = field.mul(u, *r);
    }
    Ok(sol)
}

/// The two `c` with `c + 1/c = z`, for `z` in GF(2^m)^*.
///
/// They lie in GF(2^m) when `Tr_1^m(1/z) = 0` and in `mu_{2^m+1} \ {1}`
/// otherwise; either way they are roots in GF(2^{2m}) of `c^2 + z c + 1`.
pub fn c_plus_inv_decompose(field: &Field, z: Element, m: u32) -> Result<QuadraticRoots> {
    if z.is_zero() {
        return Err(Error::ZeroElement);
    }
    if m == 0 || field.degree() % (2 * m) != 0 {
        return Err(Error::AmbientTooSmall {
            needed: 2 * m,
            field: field.degree(),
        });
    }
    check_subfield(field, z, m)?;
    let location = if field.abs_trace(field.inv(z)?, m)? {
        RootLocation::UnityCoset
    } else {
        RootLocation::Subfield
    };
    let sol = solve_quadratic(field, z, Element::ONE, 2 * m)?;
    debug_assert_eq!(sol.roots.len(), 2);
    Ok(QuadraticRoots {
        roots: sol.roots,
        location,
    })
}

/// The `t` in `mu_{q^2+1} \ {1}` with `t + 1/t = big_t`; empty when
/// `Tr_1^{2n}(1/big_t) = 0`.
pub fn solve_t_from_trace(field: &Field, big_t: Element) -> Result<Vec<Element>> {
    let k = 2 * field.n();
    if big_t.is_zero() {
        return Err(Error::ZeroElement);
    }
    check_subfield(field, big_t, k)?;
    let sol = c_plus_inv_decompose(field, big_t, k)?;
    Ok(match sol.location {
        RootLocation::UnityCoset => sol.roots,
        RootLocation::Subfield => Vec::new(),
    })
}

//! Constructive solver for `x^d + (x+1)^d = b` over GF(q^4), `q = 2^n`,
//! `d = q^3 + q^2 + q - 1`.
//!
//! Every `b` falls in exactly one of four cases:
//!
//! | case          | condition                                   | solutions |
//! |---------------|---------------------------------------------|-----------|
//! | `BEqualsOne`  | `b = 1`                                     | `q^2` (all of GF(q^2)) |
//! | `MuCase`      | `b^(q+1) = 1`, `b != 1`                     | `q^2 - q` |
//! | `GenericTwo`  | `b` outside GF(q^2) and the S2 trace test   | `2`       |
//! | `NoSolution`  | anything else                               | `0`       |
//!
//! The S2 test, for `b` outside GF(q^2), is
//! `Tr_1^n(N_n^{2n}(b^(q^2+1) + 1) / Tr_n^{4n}(b)^2) = 1`, which fails
//! outright when `Tr_n^{4n}(b) = 0`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Element, Field, Subfield};
use crate::subgroups::solve_t_from_trace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Case {
    BEqualsOne,
    MuCase,
    GenericTwo,
    NoSolution,
}

impl Case {
    pub const ALL: [Case; 4] = [Case::BEqualsOne, Case::MuCase, Case::GenericTwo, Case::NoSolution];

    pub fn tag(self) -> &'static str {
        match self {
            Case::BEqualsOne => "B_EQUALS_ONE",
            Case::MuCase => "MU_CASE",
            Case::GenericTwo => "GENERIC_TWO",
            Case::NoSolution => "NO_SOLUTION",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub case: Case,
    pub predicted_count: u64,
}

/// Solutions for one `b`.
#[derive(Clone, Debug)]
pub enum SolutionSet {
    /// Every element of GF(q^2), enumerated lazily.
    SubfieldQ2(Subfield),
    /// Distinct solutions in ascending encoding order.
    Explicit(Vec<Element>),
    Empty,
}

impl SolutionSet {
    pub fn len(&self) -> u64 {
        match self {
            SolutionSet::SubfieldQ2(sub) => sub.len(),
            SolutionSet::Explicit(xs) => xs.len() as u64,
            SolutionSet::Empty => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = Element> + '_> {
        match self {
            SolutionSet::SubfieldQ2(sub) => Box::new(sub.iter()),
            SolutionSet::Explicit(xs) => Box::new(xs.iter().copied()),
            SolutionSet::Empty => Box::new(std::iter::empty()),
        }
    }

    /// Materializes the set in canonical (ascending) order.
    pub fn to_sorted_vec(&self) -> Vec<Element> {
        let mut xs: Vec<Element> = self.iter().collect();
        xs.sort_unstable();
        xs
    }
}

/// One solution of the `mu_{q+1}` case: `t + 1/t = z + 1/z + c w` with
/// `c = sqrt(b)`, giving `x = 1 / (1 + z t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaseWitness {
    pub z: Element,
    pub w: Element,
    pub big_t: Element,
    pub t: Element,
    pub x: Element,
}

/// Per-root values of the two-solution construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TRecord {
    pub t: Element,
    pub a: Element,
    pub b: Element,
    pub b1: Element,
    pub lambda: Element,
    pub z: Element,
    pub x: Element,
}

/// Intermediate values of the two-solution construction for one `b`.
///
/// `c = 1/sqrt(b)`, `alpha = c^(q^2+1)`, `beta = c + c^(q^2)`,
/// `gamma = c / beta`, `delta = (beta/alpha)^(q-1)`,
/// `U = gamma + gamma^q + (alpha^(q+1) + 1) / (delta alpha^(q-1) beta^2)` and
/// `T = (1 + delta^q) / sqrt(U + U^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcaseIntermediates {
    pub c: Element,
    pub alpha: Element,
    pub beta: Element,
    pub gamma: Element,
    pub delta: Element,
    pub u: Element,
    pub big_t: Element,
    pub records: Vec<TRecord>,
}

/// `x^d + (x+1)^d = b`, by direct exponentiation.
pub fn verify_solution(field: &Field, x: Element, b: Element) -> bool {
    let d = field.d();
    field.pow(x, d) + field.pow(x + Element::ONE, d) == b
}

fn in_q2(field: &Field, b: Element) -> bool {
    field.frobenius_q(b, 2) == b
}

/// The S2 trace bit `Tr_1^n(N_n^{2n}(b^(q^2+1) + 1) / Tr_n^{4n}(b)^2)`, or
/// `None` when `b` lies in GF(q^2). A vanishing `Tr_n^{4n}(b)` yields `false`.
pub fn s2_trace_bit(field: &Field, b: Element) -> Option<bool> {
    if in_q2(field, b) {
        return None;
    }
    let trace = field.trace_to_q(b);
    if trace.is_zero() {
        return Some(false);
    }
    let shifted = field.mul(b, field.frobenius_q(b, 2)) + Element::ONE;
    let norm = field.mul(shifted, field.frobenius_q(shifted, 1));
    let value = field.div(norm, field.square(trace)).ok()?;
    Some(field.abs_trace(value, field.n()).expect("value lands in GF(q)"))
}

pub fn is_in_s2(field: &Field, b: Element) -> bool {
    s2_trace_bit(field, b).unwrap_or(false)
}

pub fn classify(field: &Field, b: Element) -> Classification {
    let q = field.q();
    let (case, predicted_count) = if b == Element::ONE {
        (Case::BEqualsOne, q * q)
    } else if !b.is_zero() && field.mul(b, field.frobenius_q(b, 1)) == Element::ONE {
        (Case::MuCase, q * q - q)
    } else if is_in_s2(field, b) {
        (Case::GenericTwo, 2)
    } else {
        (Case::NoSolution, 0)
    };
    Classification {
        case,
        predicted_count,
    }
}

/// `b = 1`: the solution set is exactly GF(q^2).
pub fn solve_b_equals_1(field: &Field) -> SolutionSet {
    SolutionSet::SubfieldQ2(
        field
            .subfield(2 * field.n())
            .expect("2n divides 4n")
            .clone(),
    )
}

/// Witnesses `(z, w, T, t, x)` for `b` in `mu_{q+1} \ {1}`, enumerating
/// `(z, w)` over GF(q)^* x GF(q)^*.
pub fn mu_case_witnesses(field: &Field, b: Element) -> Result<Vec<ScaseWitness>> {
    if b == Element::ONE || b.is_zero() || field.mul(b, field.frobenius_q(b, 1)) != Element::ONE {
        return Err(Error::PreconditionViolated(format!(
            "{b} is not in mu_(q+1) \\ {{1}}"
        )));
    }
    let c = field.sqrt(b);
    let gf_q = field.subfield(field.n())?;
    let mut out = Vec::with_capacity((field.q() * (field.q() - 1)) as usize);
    for z in gf_q.nonzero() {
        let z_sum = z + field.inv(z)?;
        for w in gf_q.nonzero() {
            let big_t = z_sum + field.mul(c, w);
            // T = 0 would force c into GF(q) ∩ mu_{q+1} = {1}.
            if big_t.is_zero() {
                continue;
            }
            for t in solve_t_from_trace(field, big_t)? {
                let x = field.inv(Element::ONE + field.mul(z, t))?;
                out.push(ScaseWitness { z, w, big_t, t, x });
            }
        }
    }
    Ok(out)
}

/// `b` in `mu_{q+1} \ {1}`: the `q^2 - q` solutions `x = 1/(1 + z t)`.
pub fn solve_mu_case(field: &Field, b: Element) -> Result<SolutionSet> {
    let mut xs: Vec<Element> = mu_case_witnesses(field, b)?.into_iter().map(|w| w.x).collect();
    xs.sort_unstable();
    debug_assert!(xs.windows(2).all(|p| p[0] != p[1]), "duplicate solutions");
    Ok(SolutionSet::Explicit(xs))
}

fn nonzero(value: Element, what: &str) -> Result<Element> {
    if value.is_zero() {
        Err(Error::InternalDegenerate(format!("{what} vanished")))
    } else {
        Ok(value)
    }
}

/// Runs the two-solution construction for `b` in S2 and returns every
/// intermediate value.
pub fn generic_intermediates(field: &Field, b: Element) -> Result<TcaseIntermediates> {
    if in_q2(field, b) {
        return Err(Error::PreconditionViolated(format!("{b} lies in GF(q^2)")));
    }
    if !is_in_s2(field, b) {
        return Err(Error::PreconditionViolated(format!(
            "{b} fails the S2 trace condition"
        )));
    }
    let frob = |a: Element, i: u32| field.frobenius_q(a, i);
    let div = |num: Element, den: Element, what: &str| -> Result<Element> {
        field.div(num, nonzero(den, what)?)
    };

    let c = field.inv(field.sqrt(b))?;
    let c_q2 = frob(c, 2);
    let alpha = field.mul(c, c_q2);
    let beta = nonzero(c + c_q2, "beta")?;
    let gamma = field.div(c, beta)?;
    let ratio = field.div(beta, alpha)?;
    let delta = field.div(frob(ratio, 1), ratio)?;

    let alpha_q = frob(alpha, 1);
    let alpha_qp1 = field.mul(alpha, alpha_q);
    let alpha_qm1 = field.div(alpha_q, alpha)?;
    let correction_den = field.mul(field.mul(delta, alpha_qm1), field.square(beta));
    let u = gamma + frob(gamma, 1) + div(alpha_qp1 + Element::ONE, correction_den, "U denominator")?;
    let u_sum = nonzero(u + field.square(u), "U + U^2")?;
    let big_t = div(Element::ONE + frob(delta, 1), field.sqrt(u_sum), "sqrt(U + U^2)")?;
    let big_t = nonzero(big_t, "T")?;

    let ts = solve_t_from_trace(field, big_t)
        .map_err(|e| Error::InternalDegenerate(format!("T not usable: {e}")))?;
    if ts.len() != 2 {
        return Err(Error::InternalDegenerate(
            "S2 member without a root pair in mu_(q^2+1)".into(),
        ));
    }

    let gamma_q2 = frob(gamma, 2);
    let a = div(
        field.mul(alpha, big_t) + frob(big_t, 1),
        alpha + Element::ONE,
        "alpha + 1",
    )?;
    let mut records = Vec::with_capacity(2);
    for t in ts {
        let t_inv = field.inv(t)?;
        let b1 = field.mul(gamma, t) + field.mul(gamma_q2, t_inv);
        let bb = field.mul(gamma, t_inv) + field.mul(gamma_q2, t);
        let lambda_sq = div(frob(b1, 1) + bb, b1 + frob(bb, 1), "B1 + B^q")?;
        let lambda = field.sqrt(nonzero(lambda_sq, "B + B1^q")?);
        let z_den = field.mul(lambda, a + b1) + field.div(bb, lambda)?;
        let z = div(field.square(lambda) + Element::ONE, z_den, "lambda (A + B1) + B / lambda")?;
        let x = field.inv(nonzero(
            Element::ONE + field.mul(field.mul(z, lambda), t),
            "1 + z lambda t",
        )?)?;
        records.push(TRecord {
            t,
            a,
            b: bb,
            b1,
            lambda,
            z,
            x,
        });
    }
    Ok(TcaseIntermediates {
        c,
        alpha,
        beta,
        gamma,
        delta,
        u,
        big_t,
        records,
    })
}

/// `b` outside GF(q^2): two explicit solutions when `b` is in S2, else none.
pub fn solve_generic(field: &Field, b: Element) -> Result<SolutionSet> {
    if in_q2(field, b) {
        return Err(Error::PreconditionViolated(format!("{b} lies in GF(q^2)")));
    }
    if !is_in_s2(field, b) {
        return Ok(SolutionSet::Empty);
    }
    let inter = generic_intermediates(field, b)?;
    let mut xs: Vec<Element> = inter.records.iter().map(|r| r.x).collect();
    xs.sort_unstable();
    if xs[0] == xs[1] {
        return Err(Error::InternalDegenerate("the two solutions coincide".into()));
    }
    Ok(SolutionSet::Explicit(xs))
}

pub fn solve(field: &Field, b: Element) -> Result<(Classification, SolutionSet)> {
    let class = classify(field, b);
    let set = match class.case {
        Case::BEqualsOne => solve_b_equals_1(field),
        Case::MuCase => solve_mu_case(field, b)?,
        Case::GenericTwo => solve_generic(field, b)?,
        Case::NoSolution => SolutionSet::Empty,
    };
    Ok((class, set))
}

//! Whole-field sweeps: the brute-force solution-count oracle, closed-form
//! histograms, S2 enumeration, derivative rows of `F(x) = x^d`, and the
//! end-to-end cross-check of the classification against brute force.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU32, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Element, Field, MAX_N};
use crate::solver::{self, Case, SolutionSet};

pub const DEFAULT_MAX_BRUTEFORCE_BITS: u32 = 24;

/// Parallelism and size cap for exhaustive sweeps. Results never depend on
/// `workers`.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub workers: usize,
    pub max_bits: u32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            max_bits: DEFAULT_MAX_BRUTEFORCE_BITS,
        }
    }
}

impl SweepConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_max_bits(mut self, max_bits: u32) -> Self {
        self.max_bits = max_bits;
        self
    }

    pub fn check(&self, field: &Field) -> Result<()> {
        if field.degree() > self.max_bits {
            return Err(Error::FieldTooLarge {
                bits: field.degree(),
                cap: self.max_bits,
            });
        }
        Ok(())
    }

    fn run<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers.max(1))
            .build()
        {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Bruteforce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Bruteforce => "bruteforce",
        }
    }
}

/// Map from solution count to the number of `b` attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumHistogram {
    pub n: u32,
    pub method: Method,
    pub entries: BTreeMap<u64, u64>,
}

impl SpectrumHistogram {
    pub fn multiplicity(&self, count: u64) -> u64 {
        self.entries.get(&count).copied().unwrap_or(0)
    }

    /// Number of `b` values covered; `q^4` for a complete histogram.
    pub fn total_b(&self) -> u128 {
        self.entries.values().map(|&m| m as u128).sum()
    }

    /// Total number of solutions over all `b`; `q^4` as well.
    pub fn total_solutions(&self) -> u128 {
        self.entries
            .iter()
            .map(|(&c, &m)| c as u128 * m as u128)
            .sum()
    }

    pub fn mass_ok(&self) -> bool {
        let size = 1u128 << (4 * self.n);
        self.total_b() == size && self.total_solutions() == size
    }

    /// Same entries, ignoring which method produced them.
    pub fn same_entries(&self, other: &SpectrumHistogram) -> bool {
        self.n == other.n && self.entries == other.entries
    }

    /// `(count, multiplicity)` pairs, largest count first.
    pub fn rows(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().rev().map(|(&c, &m)| (c, m))
    }
}

/// `x^d + (x+1)^d`, computed as
/// `(N(x) (x+1)^2 + N(x+1) x^2) / (x (x+1))^2` with `N` the norm to GF(q),
/// since `x^d = N(x) / x^2`.
pub fn eval_derivative(field: &Field, x: Element) -> Element {
    let y = x + Element::ONE;
    let xy = field.mul(x, y);
    if xy.is_zero() {
        return Element::ONE;
    }
    let num = field.mul(field.norm_to_q(x), field.square(y))
        + field.mul(field.norm_to_q(y), field.square(x));
    field
        .div(num, field.square(xy))
        .expect("x (x+1) is nonzero")
}

/// Per-`b` solution counts of `x^d + (x+1)^d = b`, indexed by the encoding
/// of `b`, from a single pass over every `x`.
pub fn bruteforce_tally(field: &Field, cfg: &SweepConfig) -> Result<Vec<u32>> {
    cfg.check(field)?;
    let size = field.size();
    let tally: Vec<AtomicU32> = (0..size).map(|_| AtomicU32::new(0)).collect();
    cfg.run(|| {
        (0..size).into_par_iter().for_each(|bits| {
            let b = eval_derivative(field, field.element_unchecked(bits));
            tally[b.bits() as usize].fetch_add(1, Ordering::Relaxed);
        })
    });
    Ok(tally.into_iter().map(AtomicU32::into_inner).collect())
}

fn histogram_of(n: u32, method: Method, counts: impl IntoIterator<Item = u64>) -> SpectrumHistogram {
    let mut entries = BTreeMap::new();
    for c in counts {
        *entries.entry(c).or_insert(0) += 1;
    }
    SpectrumHistogram { n, method, entries }
}

pub fn bruteforce_histogram(field: &Field, cfg: &SweepConfig) -> Result<SpectrumHistogram> {
    let tally = bruteforce_tally(field, cfg)?;
    Ok(histogram_of(
        field.n(),
        Method::Bruteforce,
        tally.into_iter().map(u64::from),
    ))
}

/// `#S2 = q^3 (q-1) / 2`.
pub fn s2_formula_count(n: u32) -> u64 {
    let q = 1u64 << n;
    q * q * q * (q - 1) / 2
}

/// The closed-form histogram
/// `{q^2: 1, q^2-q: q, 2: q^3(q-1)/2, 0: rest}`, with equal keys merged.
pub fn formula_histogram(n: u32) -> Result<SpectrumHistogram> {
    if n == 0 || n > MAX_N {
        return Err(Error::UnsupportedN { n, max: MAX_N });
    }
    let q = 1u64 << n;
    let s2 = s2_formula_count(n);
    let size = q * q * q * q;
    let mut entries = BTreeMap::new();
    for (count, mult) in [
        (q * q, 1),
        (q * q - q, q),
        (2, s2),
        (0, size - 1 - q - s2),
    ] {
        *entries.entry(count).or_insert(0) += mult;
    }
    Ok(SpectrumHistogram {
        n,
        method: Method::Formula,
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S2Enumeration {
    pub count: u64,
    /// Members in ascending order, when requested.
    pub members: Option<Vec<Element>>,
}

pub fn s2_enumerate(field: &Field, cfg: &SweepConfig, collect: bool) -> Result<S2Enumeration> {
    cfg.check(field)?;
    let size = field.size();
    let is_member = |bits: u64| solver::is_in_s2(field, field.element_unchecked(bits));
    Ok(cfg.run(|| {
        if collect {
            let members: Vec<Element> = (0..size)
                .into_par_iter()
                .filter(|&bits| is_member(bits))
                .map(|bits| field.element_unchecked(bits))
                .collect();
            S2Enumeration {
                count: members.len() as u64,
                members: Some(members),
            }
        } else {
            S2Enumeration {
                count: (0..size).into_par_iter().filter(|&bits| is_member(bits)).count() as u64,
                members: None,
            }
        }
    }))
}

/// Solution counts of `x^d + (x+a)^d = b` for every `b` with at least one
/// solution, derived from the `a = 1` classification: substituting
/// `x = a y` gives `a^d (y^d + (y+1)^d) = b`.
pub fn ddt_row(field: &Field, a: Element, cfg: &SweepConfig) -> Result<BTreeMap<Element, u64>> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    cfg.check(field)?;
    let scale_inv = field.inv(field.pow(a, field.d()))?;
    let size = field.size();
    let rows: Vec<(Element, u64)> = cfg.run(|| {
        (0..size)
            .into_par_iter()
            .filter_map(|bits| {
                let b = field.element_unchecked(bits);
                let count = solver::classify(field, field.mul(b, scale_inv)).predicted_count;
                (count > 0).then_some((b, count))
            })
            .collect()
    });
    Ok(rows.into_iter().collect())
}

/// Same as [`ddt_row`], by evaluating `x^d + (x+a)^d` at every `x`.
pub fn ddt_row_bruteforce(
    field: &Field,
    a: Element,
    cfg: &SweepConfig,
) -> Result<BTreeMap<Element, u64>> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    cfg.check(field)?;
    let d = field.d();
    let mut row = BTreeMap::new();
    for x in field.elements() {
        let b = field.pow(x, d) + field.pow(x + a, d);
        *row.entry(b).or_insert(0) += 1;
    }
    Ok(row)
}

/// Largest solution count over all `b` for `a = 1`.
pub fn differential_uniformity(field: &Field, cfg: &SweepConfig) -> Result<u64> {
    Ok(bruteforce_tally(field, cfg)?
        .into_iter()
        .max()
        .map_or(0, u64::from))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub b: String,
    pub case: Case,
    pub predicted: u64,
    pub solver_count: u64,
    pub bruteforce_count: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseTimings {
    pub bruteforce_ms: f64,
    pub formula_ms: f64,
    pub per_b_ms: f64,
    pub s2_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub n: u32,
    pub modulus: String,
    pub formula_histogram: SpectrumHistogram,
    pub bruteforce_histogram: SpectrumHistogram,
    pub histograms_match: bool,
    pub mismatches: BTreeMap<Case, Vec<Mismatch>>,
    pub s2_formula_count: u64,
    pub s2_enumerated_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<PhaseTimings>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn mismatch_count(&self) -> usize {
        self.mismatches.values().map(Vec::len).sum()
    }
}

fn check_one_b(field: &Field, b: Element, brute: u64) -> Option<Mismatch> {
    let mismatch = |case, predicted, solver_count, detail: String| Mismatch {
        b: b.to_hex(),
        case,
        predicted,
        solver_count,
        bruteforce_count: brute,
        detail,
    };
    let (class, set) = match solver::solve(field, b) {
        Ok(r) => r,
        Err(e) => {
            let class = solver::classify(field, b);
            return Some(mismatch(class.case, class.predicted_count, 0, e.to_string()));
        }
    };
    let report = |detail: String| Some(mismatch(class.case, class.predicted_count, set.len(), detail));
    if class.predicted_count != brute {
        return report("predicted count differs from brute force".into());
    }
    if set.len() != brute {
        return report("solver count differs from brute force".into());
    }
    let xs = set.to_sorted_vec();
    if xs.windows(2).any(|p| p[0] == p[1]) {
        return report("duplicate solutions".into());
    }
    if let Some(x) = xs.iter().find(|&&x| !solver::verify_solution(field, x, b)) {
        return report(format!("{x} does not satisfy the equation"));
    }
    if matches!(set, SolutionSet::Explicit(_))
        && xs.iter().any(|&x| xs.binary_search(&(x + Element::ONE)).is_err())
    {
        return report("solution set not closed under x -> x + 1".into());
    }
    None
}

/// Cross-checks the classification and the constructive solver against the
/// brute-force oracle for every `b`.
pub fn verify_conjecture(field: &Field, cfg: &SweepConfig) -> Result<VerificationReport> {
    cfg.check(field)?;
    let n = field.n();

    let started = Instant::now();
    let tally = bruteforce_tally(field, cfg)?;
    let bruteforce_histogram = histogram_of(n, Method::Bruteforce, tally.iter().map(|&c| u64::from(c)));
    let bruteforce_ms = elapsed_ms(started);

    let started = Instant::now();
    let formula_histogram = formula_histogram(n)?;
    let formula_ms = elapsed_ms(started);

    let started = Instant::now();
    let mut found: Vec<Mismatch> = cfg.run(|| {
        tally
            .par_iter()
            .enumerate()
            .filter_map(|(bits, &count)| {
                check_one_b(field, field.element_unchecked(bits as u64), u64::from(count))
            })
            .collect()
    });
    found.sort_by(|a, b| a.b.len().cmp(&b.b.len()).then_with(|| a.b.cmp(&b.b)));
    let mut mismatches: BTreeMap<Case, Vec<Mismatch>> =
        Case::ALL.iter().map(|&c| (c, Vec::new())).collect();
    for m in found {
        mismatches.entry(m.case).or_default().push(m);
    }
    let per_b_ms = elapsed_ms(started);

    let started = Instant::now();
    let s2_enumerated_count = s2_enumerate(field, cfg, false)?.count;
    let s2_ms = elapsed_ms(started);
    let s2_formula_count = s2_formula_count(n);

    let histograms_match = formula_histogram.same_entries(&bruteforce_histogram)
        && bruteforce_histogram.mass_ok();
    let pass = histograms_match
        && mismatches.values().all(Vec::is_empty)
        && s2_enumerated_count == s2_formula_count;

    Ok(VerificationReport {
        n,
        modulus: format!("{:#x}", field.modulus()),
        formula_histogram,
        bruteforce_histogram,
        histograms_match,
        mismatches,
        s2_formula_count,
        s2_enumerated_count,
        timings: Some(PhaseTimings {
            bruteforce_ms,
            formula_ms,
            per_b_ms,
            s2_ms,
        }),
        pass,
    })
}

fn elapsed_ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use gf4n::solver::generic_intermediates;
use gf4n::spectrum::{bruteforce_histogram, formula_histogram, s2_enumerate, verify_conjecture};
use gf4n::subgroups::{c_plus_inv_decompose, mu_member, RootLocation};
use gf4n::{solve, verify_solution, Element, Field, SweepConfig};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_preimages(field: &Field) -> BTreeMap<Element, Vec<Element>> {
    let d = field.d();
    let mut map: BTreeMap<Element, Vec<Element>> = BTreeMap::new();
    for x in field.elements() {
        let b = field.pow(x, d) + field.pow(x + Element::ONE, d);
        map.entry(b).or_default().push(x);
    }
    map
}

fn hist(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
    pairs.iter().copied().collect()
}

fn exhaustive_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0u64;
    for n in 1..=3 {
        let field = Field::new(n).map_err(|e| e.to_string())?;
        let oracle = oracle_preimages(&field);
        for b in field.elements() {
            let (_, set) = solve(&field, b).map_err(|e| format!("n={n} b={b}: {e}"))?;
            let expected = oracle.get(&b).cloned().unwrap_or_default();
            let got = set.to_sorted_vec();
            ensure(got == expected, || {
                format!("n={n} b={b}: solver {got:?} vs oracle {expected:?}")
            })?;
            for x in set.iter() {
                ensure(verify_solution(&field, x, b), || format!("n={n} b={b}: x={x} fails"))?;
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} values of b, {elapsed:.2?}"))
}

fn histogram_counts() -> Outcome {
    let expected = [
        hist(&[(4, 1), (2, 6), (0, 9)]),
        hist(&[(16, 1), (12, 4), (2, 96), (0, 155)]),
        hist(&[(64, 1), (56, 8), (2, 1792), (0, 2295)]),
    ];
    let cfg = SweepConfig::default();
    let mut n4_time = Duration::ZERO;
    for n in 1..=4u32 {
        let field = Field::new(n).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let brute = bruteforce_histogram(&field, &cfg).map_err(|e| e.to_string())?;
        if n == 4 {
            n4_time = start.elapsed();
        }
        let formula = formula_histogram(n).map_err(|e| e.to_string())?;
        ensure(brute.entries == formula.entries, || {
            format!("n={n}: brute {:?} vs formula {:?}", brute.entries, formula.entries)
        })?;
        if let Some(want) = expected.get(n as usize - 1) {
            ensure(&brute.entries == want, || format!("n={n}: got {:?}", brute.entries))?;
        }
    }
    ensure(n4_time < Duration::from_secs(1), || format!("n=4 sweep took {n4_time:?}"))?;
    Ok(format!("n=1..4 match, n=4 sweep {n4_time:.2?}"))
}

fn s2_cardinality() -> Outcome {
    let cfg = SweepConfig::default();
    let mut counts = Vec::new();
    for (n, want) in [(1u32, 4u64), (2, 96), (3, 1792)] {
        let field = Field::new(n).map_err(|e| e.to_string())?;
        let count = s2_enumerate(&field, &cfg, false).map_err(|e| e.to_string())?.count;
        ensure(count == want, || format!("n={n}: {count} != {want}"))?;
        counts.push(count);
    }
    Ok(format!("{counts:?}"))
}

fn mass_invariant() -> Outcome {
    let mut totals = Vec::new();
    for n in 1..=3 {
        let field = Field::new(n).map_err(|e| e.to_string())?;
        let mut total = 0u64;
        for b in field.elements() {
            total += solve(&field, b).map_err(|e| e.to_string())?.1.len();
        }
        let q4 = field.q().pow(4);
        ensure(total == q4, || format!("n={n}: {total} != {q4}"))?;
        totals.push(total);
    }
    Ok(format!("{totals:?}"))
}

fn unity_intersection() -> Outcome {
    for n in 1..=3 {
        let field = Field::new(n).map_err(|e| e.to_string())?;
        let q = field.q() as u128;
        let m = (q - 1) * (q * q + 1);
        let group: BTreeSet<Element> = field
            .elements()
            .filter(|&y| !y.is_zero() && mu_member(&field, y, m))
            .collect();
        let shifted: BTreeSet<Element> = group.iter().map(|&y| y + Element::ONE).collect();
        let meet: BTreeSet<Element> = group.intersection(&shifted).copied().collect();
        let expected: BTreeSet<Element> = field
            .elements()
            .filter(|&y| y.bits() > 1 && field.in_subfield(y, n))
            .collect();
        ensure(meet == expected, || format!("n={n}: {} vs {} elements", meet.len(), expected.len()))?;
    }
    Ok("n=1..3".into())
}

fn c_plus_inverse_suite() -> Outcome {
    let mut checked = 0u64;
    for n in 1..=2u32 {
        let field = Field::new(n).map_err(|e| e.to_string())?;
        for m in [n, 2 * n] {
            let sub = field.subfield(m).map_err(|e| e.to_string())?;
            let unity = (1u128 << m) + 1;
            for z in sub.nonzero() {
                let inv = field.inv(z).map_err(|e| e.to_string())?;
                let trace = field.abs_trace(inv, m).map_err(|e| e.to_string())?;
                let res = c_plus_inv_decompose(&field, z, m).map_err(|e| e.to_string())?;
                let ctx = format!("n={n} m={m} z={z}");
                ensure(res.roots.len() == 2 && res.roots[0] != res.roots[1], || {
                    format!("{ctx}: roots {:?}", res.roots)
                })?;
                let want = if trace { RootLocation::UnityCoset } else { RootLocation::Subfield };
                ensure(res.location == want, || format!("{ctx}: location {:?}", res.location))?;
                for &c in &res.roots {
                    let sum = c + field.inv(c).map_err(|e| e.to_string())?;
                    ensure(sum == z, || format!("{ctx}: c={c} gives {sum}"))?;
                    let placed = if trace {
                        mu_member(&field, c, unity)
                    } else {
                        field.in_subfield(c, m)
                    };
                    ensure(placed, || format!("{ctx}: c={c} not in {want:?}"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} values of z"))
}

fn chain_identities() -> Outcome {
    let cfg = SweepConfig::default();
    let mut handled = 0u64;
    for n in 1..=2u32 {
        let field = Field::new(n).map_err(|e| e.to_string())?;
        let q = field.q() as u128;
        let members = s2_enumerate(&field, &cfg, true)
            .map_err(|e| e.to_string())?
            .members
            .unwrap_or_default();
        for b in members {
            let ctx = format!("n={n} b={b}");
            let chain = generic_intermediates(&field, b).map_err(|e| format!("{ctx}: {e}"))?;
            let frob = |a: Element, i: u32| field.frobenius_q(a, i);
            ensure(frob(chain.gamma, 2) == chain.gamma + Element::ONE, || format!("{ctx}: gamma"))?;
            ensure(field.pow(chain.delta, q + 1) == Element::ONE, || format!("{ctx}: delta"))?;
            ensure(frob(chain.big_t, 1) == field.mul(chain.delta, chain.big_t), || {
                format!("{ctx}: T^q != delta T")
            })?;
            ensure(field.in_subfield(chain.u + field.square(chain.u), n), || format!("{ctx}: U"))?;
            ensure(!chain.records.is_empty(), || format!("{ctx}: no t"))?;
            for r in &chain.records {
                ensure(field.pow(r.lambda, q + 1) == Element::ONE, || format!("{ctx}: lambda"))?;
                ensure(field.pow(r.z, q - 1) == Element::ONE, || format!("{ctx}: z"))?;
                ensure(field.pow(r.t, q * q + 1) == Element::ONE, || format!("{ctx}: t"))?;
            }
            handled += 1;
        }
    }
    Ok(format!("{handled} values of b"))
}

fn basis_independence() -> Outcome {
    let cfg = SweepConfig::default();
    let moduli = [0x11bu64, 0x11d];
    let mut reports = Vec::new();
    for modulus in moduli {
        let field = Field::with_modulus(2, modulus).map_err(|e| e.to_string())?;
        let report = verify_conjecture(&field, &cfg).map_err(|e| e.to_string())?;
        ensure(report.pass, || format!("modulus {modulus:#x}: {} mismatches", report.mismatch_count()))?;
        reports.push(report);
    }
    ensure(
        reports[0].bruteforce_histogram.entries == reports[1].bruteforce_histogram.entries,
        || "histograms differ".into(),
    )?;
    Ok(format!("moduli {:#x} and {:#x}", moduli[0], moduli[1]))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("exhaustive oracle equivalence, n=1..3", exhaustive_equivalence),
        ("brute-force histogram equals formula, n=1..4", histogram_counts),
        ("two-solution set cardinality, n=1..3", s2_cardinality),
        ("mass invariant, n=1..3", mass_invariant),
        ("unity-subgroup intersection, n=1..3", unity_intersection),
        ("c + 1/c decomposition, m in {n, 2n}", c_plus_inverse_suite),
        ("generic-chain identities, n=1..2", chain_identities),
        ("basis independence, n=2", basis_independence),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS  [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                println!("FAIL  [{}] {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

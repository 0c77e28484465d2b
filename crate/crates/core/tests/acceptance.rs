//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcs::containment::{check_open_elements, containment_index, pbw_witness, sl2_witness};
use lcs::freealg::{Identity, Poly, Word};
use lcs::lyndon::lyndon_words;
use lcs::pbw::{pbw_degree, straighten};
use lcs::quotients::{iso_check, quotient_dims, r23_structure_dims, structure_basis_r22, QuotientSeries, QuotientSpec};
use lcs::series::{check_generation, compositions, l_spanning_elements, m_span, product_span};
use lcs::Rat;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Every tuple with entries >= 2 and entry sum at most `max_sum`.
fn tuples(max_sum: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for sum in 2..=max_sum {
        for k in 1..=sum / 2 {
            for c in compositions(sum - k, k) {
                out.push(c.into_iter().map(|p| p + 1).collect());
            }
        }
    }
    out
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("{} took {:.1?}, limit {:?}", what, t, limit))
    } else {
        Ok(())
    }
}

fn classification_n2() -> Outcome {
    let start = Instant::now();
    let all = tuples(7);
    for t in &all {
        let sum: usize = t.iter().sum();
        let r = containment_index(2, t, Some(sum + 2)).map_err(|e| e.to_string())?;
        let expect = sum + 1 - t.len();
        if r.index != expect {
            return Err(format!("I(A_2, {:?}) = {}, expected {}", t, r.index, expect));
        }
    }
    within(start, Duration::from_secs(600), "classification")?;
    Ok(format!("{} tuples in {:.1?}", all.len(), start.elapsed()))
}

fn pbw_certificates() -> Outcome {
    let mut checked = 0;
    for n in 2..=3 {
        for t in tuples(7) {
            let sum: usize = t.iter().sum();
            let w = pbw_witness(n, &t).map_err(|e| e.to_string())?;
            let target = m_span(n, sum + 2 - t.len(), sum).map_err(|e| e.to_string())?;
            if target.contains(&w).map_err(|e| e.to_string())? {
                return Err(format!("witness for {:?} on A_{} lies in M_{}", t, n, sum + 2 - t.len()));
            }
            checked += 1;
        }
    }
    Ok(format!("{} witnesses outside M_(sum-k+2)", checked))
}

fn classical_bounds() -> Outcome {
    let mut checked = 0;
    for n in 1..=3 {
        for m in 2..=6 {
            for l in 2..=8 - m {
                for d in 0..=8 {
                    let p = product_span(n, &[m, l], d).map_err(|e| e.to_string())?;
                    let weak = m_span(n, m + l - 2, d).map_err(|e| e.to_string())?;
                    if !p.is_subspace(&weak).map_err(|e| e.to_string())? {
                        return Err(format!("M{}M{} not in M{} on A_{} at degree {}", m, l, m + l - 2, n, d));
                    }
                    if m % 2 == 1 || l % 2 == 1 {
                        let strong = m_span(n, m + l - 1, d).map_err(|e| e.to_string())?;
                        if !p.is_subspace(&strong).map_err(|e| e.to_string())? {
                            return Err(format!("M{}M{} not in M{} on A_{} at degree {}", m, l, m + l - 1, n, d));
                        }
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{} (n, m, l, degree) cells", checked))
}

fn open_elements() -> Outcome {
    let start = Instant::now();
    let rows = check_open_elements(7).map_err(|e| e.to_string())?;
    for r in &rows {
        if !r.all_members() {
            return Err(format!("{} at degree {}: {}/{} in M_5", r.name, r.degree, r.members, r.instances));
        }
        if r.instances == 0 {
            return Err(format!("{} at degree {}: no instances", r.name, r.degree));
        }
    }
    within(start, Duration::from_secs(300), "open elements")?;
    Ok(format!("{} families x degrees 6..7, all in M_5(A_3)", rows.len() / 2))
}

fn sl2_traces() -> Outcome {
    let mut bad = Vec::new();
    for i in 2..=6usize {
        for j in 2..=6usize {
            if i % 2 != j % 2 {
                continue;
            }
            let w = sl2_witness(i, j, 2).map_err(|e| e.to_string())?;
            let mag = Rat::from_int(1i64 << (i + j + 1));
            let expect = if i % 2 == 1 { mag } else { -&mag };
            if w.trace != expect {
                bad.push(format!("({},{}): trace {} expected {}", i, j, w.trace, expect));
            }
        }
    }
    if bad.is_empty() {
        Ok("all same-parity pairs".into())
    } else {
        Err(format!("{} mismatches, e.g. {}", bad.len(), bad[..bad.len().min(3)].join("; ")))
    }
}

fn finite_generation() -> Outcome {
    for i in 2..=5 {
        for c in check_generation(i, i + 3).map_err(|e| e.to_string())? {
            if !c.equal {
                return Err(format!(
                    "i={} degree {}: generated {} vs M_{} {}",
                    i, c.degree, c.generated_dim, i, c.m_dim
                ));
            }
        }
    }
    Ok("i = 2..5, degrees <= i+3".into())
}

fn structure_r22() -> Outcome {
    for n in 1..=3 {
        let spec = QuotientSpec::new(n, 2, 2).map_err(|e| e.to_string())?;
        for r in 2..=5 {
            let dims = quotient_dims(&spec, QuotientSeries::N(r), 7).map_err(|e| e.to_string())?;
            for (d, &dim) in dims.iter().enumerate() {
                let count = structure_basis_r22(n, r, d).map_err(|e| e.to_string())?;
                if count != dim {
                    return Err(format!("n={} r={} degree {}: basis {} vs N_r {}", n, r, d, count, dim));
                }
            }
        }
    }
    Ok("n <= 3, r = 2..5, degrees <= 7".into())
}

fn structure_r23() -> Outcome {
    let spec = QuotientSpec::new(2, 2, 3).map_err(|e| e.to_string())?;
    let echelon = quotient_dims(&spec, QuotientSeries::N(5), 8).map_err(|e| e.to_string())?;
    let formula = r23_structure_dims(5, 8).map_err(|e| e.to_string())?;
    if echelon == formula {
        Ok(format!("N_5 dims {:?}", echelon))
    } else {
        Err(format!("echelon {:?} vs formula {:?}", echelon, formula))
    }
}

fn isomorphism() -> Outcome {
    let rows = iso_check(2, 4..=6, 8).map_err(|e| e.to_string())?;
    match rows.iter().find(|r| !r.equal()) {
        Some(r) => Err(format!("i={} degree {}: B {} vs N {}", r.i, r.degree, r.b_dim, r.n_dim)),
        None => Ok(format!("{} cells", rows.len())),
    }
}

fn identities() -> Outcome {
    let start = Instant::now();
    for id in Identity::ALL {
        if !id.verify(3).map_err(|e| e.to_string())? {
            return Err(format!("{} fails on A_3", id));
        }
    }
    within(start, Duration::from_secs(1), "identities")?;
    Ok(format!("{} identities in {:.1?}", Identity::ALL.len(), start.elapsed()))
}

fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
    let n = rng.gen_range(1..=3);
    let terms: Vec<(Word, Rat)> = (0..rng.gen_range(1..=6))
        .map(|_| {
            let d = rng.gen_range(0..=6);
            let letters: Vec<u8> = (0..d).map(|_| rng.gen_range(1..=n as u8)).collect();
            (Word::new(&letters), Rat::new(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
        })
        .collect();
    Poly::from_terms(n, terms).expect("letters in range")
}

fn witt(n: i64, d: i64) -> i64 {
    fn mobius(mut m: i64) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if m > 1 {
            sign = -sign;
        }
        sign
    }
    (1..=d).filter(|e| d % e == 0).map(|e| mobius(d / e) * n.pow(e as u32)).sum::<i64>() / d
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for t in 0..200 {
        let p = random_poly(&mut rng);
        let back = straighten(&p).to_poly().map_err(|e| e.to_string())?;
        if back != p {
            return Err(format!("round trip {} failed for {}", t, p));
        }
    }

    let mut lemma_checked = 0;
    let mut lemma_bad = Vec::new();
    let mut bound_bad = 0;
    for r in 2..=7 {
        for k in 0..=7 - r {
            for el in l_spanning_elements(2, r, r + k).map_err(|e| e.to_string())? {
                if el.value.is_zero() {
                    continue;
                }
                let deg = pbw_degree(&el.value).map_err(|e| e.to_string())?;
                lemma_checked += 1;
                if deg > k + 1 {
                    bound_bad += 1;
                }
                if deg != k + 1 {
                    lemma_bad.push((el.slots, r, k, deg));
                }
            }
        }
    }

    for n in 1..=3usize {
        let words = lyndon_words(n, 8);
        for d in 1..=8 {
            let count = words.iter().filter(|w| w.degree() == d).count() as i64;
            if count != witt(n as i64, d as i64) {
                return Err(format!("Lyndon count n={} d={}: {} vs {}", n, d, count, witt(n as i64, d as i64)));
            }
        }
    }

    if lemma_bad.is_empty() {
        return Ok(format!("200 round trips, {} spanning elements, Witt counts n <= 3, d <= 8", lemma_checked));
    }
    let (slots, r, k, deg) = &lemma_bad[0];
    let shown: Vec<String> = slots.iter().map(|w| w.to_string()).collect();
    Err(format!(
        "round trips and Witt counts pass; pbw_degree = k+1 fails for {}/{} spanning elements \
         (bound <= k+1 violated by {}), e.g. [{}] with r={} k={} has pbw_degree {}",
        lemma_bad.len(),
        lemma_checked,
        bound_bad,
        shown.join(", "),
        r,
        k,
        deg
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("I(A_2, tuple) = sum - k + 1 for sum <= 7", classification_n2),
        ("PBW witnesses outside M_(sum-k+2), n = 2, 3", pbw_certificates),
        ("M_m M_l in M_(m+l-2), and M_(m+l-1) for odd m or l", classical_bounds),
        ("open elements in M_5(A_3) at degrees 6, 7", open_elements),
        ("sl(2) traces +-2^(i+j+1)", sl2_traces),
        ("S_i generates M_i(A_2)", finite_generation),
        ("R_(2,2) basis count equals dim N_r", structure_r22),
        ("R_(2,3) GL_2 formula equals dim N_5", structure_r23),
        ("dim B_i = dim N_i in R_(2,2)(A_2)", isomorphism),
        ("identity suite on A_3", identities),
        ("PBW round trip, PBW degree of L_r, Witt counts", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {}: {}", i + 1, name, detail),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {}: {}", i + 1, name, detail);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance criteria. Runs without the libtest harness so that each
//! criterion prints a single PASS/FAIL line; exits non-zero if any fails.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use propelinear::affine::{
    enumerate_automorphisms, example1_tau, hegedus_d4, validate_regular_subgroup, RegularSubgroup,
};
use propelinear::concat::ConcatCode;
use propelinear::gf2::{row_reduce, BitMatrix, BitVector};
use propelinear::hamming::PointPermutation;
use propelinear::invariants::{
    deficiency, distension, distension_by_parity_checks, full_report, kernel_bruteforce_oracle,
    kernel_formula, kernel_structural_oracle, preserved_stars, rank_enumeration_oracle,
    rank_formula, rank_span_oracle, OracleLevel, Provenance,
};
use propelinear::mollard::{
    mollard_inequivalence_verdict, s_kernel_fingerprint, z_weight3_coverage,
};
use propelinear::search::{
    enumerate_regular_subgroups, format_pairs, random_composites, remark3_census, search_classes,
    stored_witness, SearchOptions, TABLE1_R3, TABLE1_R4,
};
use propelinear::verify::{check_perfect_punctured, check_propelinear, check_puncture_group, Mode};

type Outcome = Result<String, String>;
type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || {
        format!("{what} took {t:.2?}, limit {limit:?}")
    })
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Distinct permutations induced by automorphisms of every regular
/// subgroup of GA(3,2), together with a group inducing each.
fn r3_permutations() -> Result<Vec<(PointPermutation, RegularSubgroup)>, String> {
    let groups = enumerate_regular_subgroups(3, SearchOptions::default()).map_err(e)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in groups {
        for aut in enumerate_automorphisms(&g).map_err(e)? {
            let tau = aut.into_tau();
            if seen.insert(tau.table().to_vec()) {
                out.push((tau, g.clone()));
            }
        }
    }
    Ok(out)
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let d4 = hegedus_d4();
    validate_regular_subgroup(3, d4.matrices().to_vec()).map_err(e)?;
    let tau = example1_tau().into_tau();
    let (l, k) = (distension(&tau).map_err(e)?, deficiency(&tau).map_err(e)?);
    ensure((l, k) == (3, 3), || format!("(l,k)=({l},{k})"))?;
    let code = ConcatCode::new(tau.clone()).map_err(e)?;
    let ranks = [
        rank_formula(3, l),
        rank_span_oracle(&code).map_err(e)?,
        rank_enumeration_oracle(&code).map_err(e)?,
    ];
    let kernels = [
        kernel_formula(3, k),
        kernel_structural_oracle(&code).map_err(e)?.dim(),
        kernel_bruteforce_oracle(&code).map_err(e)?.dim(),
    ];
    ensure(ranks == [14; 3], || format!("ranks {ranks:?}"))?;
    ensure(kernels == [8; 3], || format!("kernels {kernels:?}"))?;
    let words = code.enumerate_words().map_err(e)?.count();
    ensure(words == 2048, || format!("{words} codewords"))?;
    let report = full_report(&tau, OracleLevel::Enumeration).map_err(e)?;
    ensure(
        report
            .rank_provenance
            .contains(&Provenance::EnumerationOracle),
        || "provenance".into(),
    )?;
    within(start, Duration::from_secs(5), "example")?;
    Ok(format!(
        "l=3 k=3 rank=14 ker=8 by formula, span/structural and 2048-word enumeration ({:.2?})",
        start.elapsed()
    ))
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    let r3 = search_classes(3, SearchOptions::default()).map_err(e)?;
    let want3: BTreeSet<_> = TABLE1_R3.iter().copied().collect();
    ensure(r3.lk_pairs == want3, || {
        format!("r=3 gave {}", format_pairs(&r3.lk_pairs))
    })?;
    within(start, Duration::from_secs(60), "row r=3")?;
    let t3 = start.elapsed();
    let start4 = Instant::now();
    let r4 = search_classes(4, SearchOptions::default()).map_err(e)?;
    let want4: BTreeSet<_> = TABLE1_R4.iter().copied().collect();
    ensure(r4.lk_pairs == want4, || {
        format!("r=4 gave {}", format_pairs(&r4.lk_pairs))
    })?;
    within(start4, Duration::from_secs(3 * 3600), "row r=4")?;
    Ok(format!(
        "r=3 {} ({t3:.2?}); r=4 {} over {} classes ({:.2?})",
        format_pairs(&r3.lk_pairs),
        format_pairs(&r4.lk_pairs),
        r4.groups.len(),
        start4.elapsed()
    ))
}

fn criterion3(perms: &[(PointPermutation, RegularSubgroup)]) -> Outcome {
    let start = Instant::now();
    for (tau, _) in perms {
        let code = ConcatCode::new_punctured(tau.clone()).map_err(e)?;
        let rep = check_perfect_punctured(&code, Mode::Exhaustive).map_err(e)?;
        ensure(rep.passed, || format!("{rep} for {:?}", tau.table()))?;
    }
    let t3 = start.elapsed();
    let mut sampled = Vec::new();
    for (r, lk) in [(4, (4, 3)), (4, (3, 4)), (4, (2, 4)), (5, (5, 5))] {
        let w = stored_witness(r, lk).ok_or_else(|| format!("no witness for r={r} {lk:?}"))?;
        let code = ConcatCode::new_punctured(w.automorphism.into_tau()).map_err(e)?;
        let t = Instant::now();
        let rep = check_perfect_punctured(&code, Mode::randomized(100_000)).map_err(e)?;
        ensure(rep.passed, || rep.to_string())?;
        within(t, Duration::from_secs(60), "randomized perfectness")?;
        sampled.push(format!("r={r}{lk:?}"));
    }
    Ok(format!(
        "{} permutations at r=3 exhaustive ({t3:.2?}); 10^5 samples each for {}",
        perms.len(),
        sampled.join(" ")
    ))
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    let tau = example1_tau().into_tau();
    let rep = check_propelinear(&hegedus_d4(), &tau, Mode::Exhaustive).map_err(e)?;
    ensure(rep.passed, || rep.to_string())?;
    ensure(rep.detail.starts_with("order=2048,orbit=2048"), || {
        rep.detail.clone()
    })?;
    let punct = check_puncture_group(&hegedus_d4(), &tau, Mode::Exhaustive).map_err(e)?;
    ensure(punct.passed, || punct.to_string())?;
    Ok(format!(
        "{} ; {} ({:.2?})",
        rep.detail,
        punct.detail,
        start.elapsed()
    ))
}

fn criterion5(perms: &[(PointPermutation, RegularSubgroup)]) -> Outcome {
    let start = Instant::now();
    let parts: Vec<(usize, usize)> = perms
        .iter()
        .map(|(t, _)| Ok((distension(t)?, deficiency(t)?)))
        .collect::<Result<_, propelinear::Error>>()
        .map_err(e)?;
    let mut checked = 0usize;
    for (i, (tau, _)) in perms.iter().enumerate() {
        for (j, (sigma, _)) in perms.iter().enumerate() {
            let joint = tau.concat(sigma);
            let got = (
                distension_by_parity_checks(&joint),
                deficiency(&joint).map_err(e)?,
            );
            let want = (parts[i].0 + parts[j].0, parts[i].1 + parts[j].1);
            ensure(got == want, || {
                format!("pair ({i},{j}) gave {got:?}, expected {want:?}")
            })?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(60), "additivity")?;
    Ok(format!(
        "{checked} ordered pairs, zero exceptions ({:.2?})",
        start.elapsed()
    ))
}

fn criterion6() -> Outcome {
    let start = Instant::now();
    let base = example1_tau().into_tau();
    let code = ConcatCode::new(base.concat(&base)).map_err(e)?;
    ensure(code.length() == 128, || "length".into())?;
    let rank = rank_span_oracle(&code).map_err(e)?;
    let ker = kernel_structural_oracle(&code).map_err(e)?.dim();
    let tau = code.tau();
    let formulas = (
        rank_formula(6, distension(tau).map_err(e)?),
        kernel_formula(6, deficiency(tau).map_err(e)?),
    );
    ensure((rank, ker) == (126, 114), || {
        format!("oracles gave rank={rank} ker={ker}")
    })?;
    ensure(formulas == (126, 114), || {
        format!("formulas gave {formulas:?}")
    })?;
    within(start, Duration::from_secs(1), "r=6 composite")?;
    Ok(format!(
        "rank=126 ker=114 by oracles and formulas ({:.2?})",
        start.elapsed()
    ))
}

fn criterion7() -> Outcome {
    let code = ConcatCode::new_punctured(example1_tau().into_tau()).map_err(e)?;
    let fp = s_kernel_fingerprint(&code).map_err(e)?;
    let uncovered = fp.uncovered_coordinates().len();
    ensure(uncovered >= 8, || {
        format!("only {uncovered} uncovered coordinates")
    })?;
    for t in 1..=7 {
        for m in 1..=7 {
            let cov = z_weight3_coverage(t, m).map_err(e)?;
            ensure(cov.iter().all(|&c| c > 0), || {
                format!("frame t={t} m={m} has an uncovered coordinate")
            })?;
        }
    }
    let verdict = mollard_inequivalence_verdict(&code).map_err(e)?.to_string();
    ensure(verdict.starts_with("non-mollard-certified"), || {
        verdict.clone()
    })?;
    Ok(format!(
        "{verdict}; every Mollard frame with t,m <= 7 fully covered"
    ))
}

fn criterion8() -> Outcome {
    let start = Instant::now();
    let census = remark3_census(8, 492);
    ensure(census.len() >= 32, || {
        format!("only {} pairs", census.len())
    })?;
    ensure(census.iter().all(|&(rank, _)| rank < 511), || {
        "a full-rank code appeared".into()
    })?;
    ensure(census.iter().all(|&(_, ker)| ker >= 492), || {
        "kernel below 492".into()
    })?;
    for (tau, lk) in random_composites(8, 5, 2024) {
        let rep = full_report(&tau, OracleLevel::Structural).map_err(e)?;
        ensure((rep.distension, rep.deficiency) == lk, || {
            format!(
                "composite gave {:?}, expected {lk:?}",
                (rep.distension, rep.deficiency)
            )
        })?;
        ensure(census.contains(&(rep.rank, rep.kernel_dim)), || {
            "composite outside the census".into()
        })?;
    }
    within(start, Duration::from_secs(60), "census")?;
    let ranks: BTreeSet<_> = census.iter().map(|p| p.0).collect();
    Ok(format!(
        "{} distinct (rank,kernel) pairs, ranks {}..{}, 5 explicit composites confirmed ({:.2?})",
        census.len(),
        ranks.first().unwrap(),
        ranks.last().unwrap(),
        start.elapsed()
    ))
}

fn random_bijection(r: usize, rng: &mut ChaCha8Rng) -> PointPermutation {
    let n = 1u32 << r;
    let mut rest: Vec<u32> = (1..n).collect();
    rest.shuffle(rng);
    let mut map = vec![0];
    map.extend(rest);
    PointPermutation::new(r, map).unwrap()
}

fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> BitMatrix {
    BitMatrix::from_rows(
        cols,
        (0..rows)
            .map(|_| rng.gen::<u64>() & ((1 << cols) - 1))
            .collect(),
    )
    .unwrap()
}

fn criterion9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for r in [3, 4] {
        for _ in 0..1000 {
            let tau = random_bijection(r, &mut rng);
            let count = preserved_stars(&tau).len();
            ensure((count + 1).is_power_of_two(), || {
                format!("{count} preserved stars at r={r}")
            })?;
        }
    }
    for _ in 0..100 {
        let tau = random_bijection(3, &mut rng);
        full_report(&tau, OracleLevel::Enumeration).map_err(e)?;
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=10);
        let a = random_matrix(n, n, &mut rng);
        let b = random_matrix(n, n, &mut rng);
        let c = random_matrix(n, n, &mut rng);
        let left = a.mul(&b).and_then(|ab| ab.mul(&c)).map_err(e)?;
        let right = b.mul(&c).and_then(|bc| a.mul(&bc)).map_err(e)?;
        ensure(left == right, || "matrix product not associative".into())?;
        ensure(a.rank() == a.transpose().rank(), || {
            "row rank differs from column rank".into()
        })?;
        if let Some(inv) = a.inverse() {
            ensure(a.mul(&inv).map_err(e)? == BitMatrix::identity(n), || {
                "bad inverse".into()
            })?;
        } else {
            ensure(a.rank() < n, || "full-rank matrix without inverse".into())?;
        }
        let len = 12;
        let pick = |rng: &mut ChaCha8Rng| -> Vec<BitVector> {
            (0..rng.gen_range(0..6))
                .map(|_| BitVector::from_word(len, rng.gen::<u64>() & 0xfff))
                .collect()
        };
        let u = row_reduce(len, &pick(&mut rng)).map_err(e)?;
        let v = row_reduce(len, &pick(&mut rng)).map_err(e)?;
        let sum = u.sum(&v).map_err(e)?;
        let meet = u.intersection(&v).map_err(e)?;
        ensure(sum.dim() + meet.dim() == u.dim() + v.dim(), || {
            "dimension formula fails".into()
        })?;
        ensure(
            u.contains_subspace(&meet) && v.contains_subspace(&meet),
            || "intersection escapes".into(),
        )?;
    }
    Ok("2000 star counts, 100 formula/oracle agreements, 200 algebra trials, zero failures".into())
}

fn main() {
    let perms = r3_permutations();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 example reproduction", Box::new(criterion1)),
        ("2 table rows r=3, r=4", Box::new(criterion2)),
        (
            "3 perfectness",
            Box::new(|| criterion3(perms.as_ref().map_err(Clone::clone)?)),
        ),
        ("4 propelinearity", Box::new(criterion4)),
        (
            "5 additivity of (l,k)",
            Box::new(|| criterion5(perms.as_ref().map_err(Clone::clone)?)),
        ),
        ("6 composite at r=6", Box::new(criterion6)),
        ("7 Mollard certificate", Box::new(criterion7)),
        ("8 census at r=8", Box::new(criterion8)),
        ("9 property suite", Box::new(criterion9)),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}

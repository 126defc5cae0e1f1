//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use avgord::classes::{cc_closure, class_number, is_cc_subset, power_classes, psi_via_conjugacy};
use avgord::construct::{make_cyclic, make_dicyclic, make_symmetric};
use avgord::corpus::{builtin_corpus, load_group, save_group, CorpusSpec};
use avgord::family::FamilyRegistry;
use avgord::group::{GroupTable, Subset};
use avgord::numtheory::totient;
use avgord::order::{count_cyclic_membership_pairs, meo, psi_all};
use avgord::rat::Rat;
use avgord::subgroups::enumerate_subgroups;
use avgord::verify::{verify_group, CcMode, SubgroupSource, VerificationReport, VerifyConfig};
use avgord::{AxiomViolation, Error};

const MAX_ORDER: usize = 128;
const MIN_CORPUS: usize = 200;
const PSI_BUDGET: Duration = Duration::from_secs(60);
const SWEEP_BUDGET: Duration = Duration::from_secs(300);
const CLASS_LIMIT: usize = 20;
const SAMPLES: u64 = 10_000;
const CLOSURE_TRIALS: usize = 1_000;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_psi_triple(corpus: &[GroupTable]) -> Outcome {
    let start = Instant::now();
    ensure(corpus.len() >= MIN_CORPUS, || format!("corpus has only {} groups", corpus.len()))?;
    let bad: Vec<String> = corpus
        .par_iter()
        .filter_map(|g| {
            let (a, b, c) = (psi_all(g), count_cyclic_membership_pairs(g), psi_via_conjugacy(g));
            (a != b || a != c).then(|| format!("{}: psi={a} pairs={b} conj={c}", g.name()))
        })
        .collect();
    let elapsed = start.elapsed();
    ensure(bad.is_empty(), || bad.join("; "))?;
    ensure(elapsed < PSI_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{} groups agree in {:.2?}", corpus.len(), elapsed))
}

fn c2_theorem(reports: &[VerificationReport], sweep: Duration) -> Outcome {
    let mut exhaustive = 0;
    let mut sampled = 0;
    for r in reports {
        let t = r.check("theorem").ok_or("missing theorem check")?;
        ensure(t.holds && t.failures == 0, || {
            format!("{}: counterexample {} < {} witness {:?}", r.name, t.lhs, t.rhs, t.witness)
        })?;
        match r.cc_mode {
            CcMode::Exhaustive => {
                ensure(r.power_classes <= CLASS_LIMIT, || format!("{} enumerated {} classes", r.name, r.power_classes))?;
                ensure(t.instances == (1u64 << r.power_classes) - 1, || format!("{}: {} subsets", r.name, t.instances))?;
                exhaustive += 1;
            }
            CcMode::Sampled => {
                ensure(r.power_classes > CLASS_LIMIT, || format!("{} sampled with {} classes", r.name, r.power_classes))?;
                ensure(t.instances == SAMPLES, || format!("{}: {} samples", r.name, t.instances))?;
                sampled += 1;
            }
        }
    }
    ensure(sweep < SWEEP_BUDGET, || format!("sweep took {sweep:?}"))?;
    let total: u64 = reports.iter().map(|r| r.cc_tested).sum();
    Ok(format!("{total} CC-subsets, {exhaustive} exhaustive / {sampled} sampled groups, {sweep:.2?}"))
}

fn c3_meo(corpus: &[GroupTable]) -> Outcome {
    for g in corpus {
        let (p, n) = (psi_all(g) as u128, g.order() as u128);
        ensure(p * p >= n * n * meo(g) as u128, || format!("{}: psi^2 < n^2 meo", g.name()))?;
    }
    let spots = [
        ("S3", psi_all(&make_symmetric(3).unwrap()), 13),
        ("Q8", psi_all(&make_dicyclic(2).unwrap()), 27),
        ("C6", psi_all(&make_cyclic(6).unwrap()), 21),
    ];
    for (name, got, want) in spots {
        ensure(got == want, || format!("psi({name}) = {got}, expected {want}"))?;
    }
    Ok("psi^2 >= |G|^2 meo everywhere; psi(S3)=13 psi(Q8)=27 psi(C6)=21".into())
}

fn c4_monotone(corpus: &[GroupTable], reports: &[VerificationReport]) -> Outcome {
    let mut steps = 0;
    for g in corpus {
        let mut classes = power_classes(g).classes;
        classes.sort_by(|a, b| b.rep_order.cmp(&a.rep_order).then(a.representative.cmp(&b.representative)));
        let (mut p, mut s) = (0u64, 0u64);
        let mut prev: Option<Rat> = None;
        for c in &classes {
            p += c.rep_order * c.members.len() as u64;
            s += c.members.len() as u64;
            let cur = Rat::new(p, s);
            if let Some(prev) = prev {
                ensure(cur <= prev, || format!("{}: prefix average rose {prev} -> {cur}", g.name()))?;
                steps += 1;
            }
            prev = Some(cur);
        }
    }
    for r in reports {
        let c = r.check("monotone_removal").ok_or("missing check")?;
        ensure(c.holds, || format!("{}: removal check failed at {:?}", r.name, c.witness))?;
    }
    Ok(format!("{steps} prefix steps non-increasing"))
}

fn c5_k_bounds(corpus: &[GroupTable]) -> Outcome {
    for g in corpus {
        let k = class_number(g);
        ensure(Rat::new(psi_all(g), g.order() as u64) <= Rat::integer(k), || format!("{}: o(G) > k", g.name()))?;
        ensure(k * k >= meo(g), || format!("{}: k^2 < meo", g.name()))?;
    }
    let k_s3 = class_number(&make_symmetric(3).unwrap());
    let k_q8 = class_number(&make_dicyclic(2).unwrap());
    ensure(k_s3 == 3 && k_q8 == 5, || format!("k(S3)={k_s3} k(Q8)={k_q8}"))?;
    Ok("o(G) <= k(G) and k(G)^2 >= meo(G) everywhere; k(S3)=3 k(Q8)=5".into())
}

fn c6_center(reports: &[VerificationReport]) -> Outcome {
    let mut subgroups = 0;
    let mut cosets = 0;
    for r in reports {
        ensure(r.subgroup_source == SubgroupSource::All, || format!("{}: subgroups not fully enumerated", r.name))?;
        subgroups += r.subgroups.len();
        for id in ["center_avg", "center_coset", "center_corollary"] {
            let c = r.check(id).ok_or("missing center check")?;
            ensure(c.holds && c.instances > 0, || format!("{}: {id} failed, witness {:?}", r.name, c.witness))?;
            if id == "center_coset" {
                cosets += c.instances;
            }
        }
    }
    Ok(format!("{subgroups} subgroups, {cosets} central cosets"))
}

fn c7_classes(corpus: &[GroupTable]) -> Outcome {
    for g in corpus {
        let p = power_classes(g);
        let mut sum = 0;
        for c in &p.classes {
            ensure(c.members.len() as u64 == totient(c.rep_order), || format!("{}: class size != phi", g.name()))?;
            sum += totient(c.rep_order);
        }
        ensure(sum == g.order() as u64, || format!("{}: sum phi = {sum}", g.name()))?;
    }
    let mut sizes: Vec<usize> = power_classes(&make_cyclic(6).unwrap()).classes.iter().map(|c| c.members.len()).collect();
    sizes.sort();
    ensure(sizes == [1, 1, 2, 2], || format!("C6 sizes {sizes:?}"))?;
    Ok("class sizes are phi(order), sum to |G|; C6 sizes {1,1,2,2}".into())
}

fn c8_closure(corpus: &[GroupTable]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..CLOSURE_TRIALS {
        let g = &corpus[rng.gen_range(0..corpus.len())];
        let n = g.order();
        let draw = |rng: &mut ChaCha8Rng| {
            let density: f64 = rng.gen();
            let mut s = Subset::new((0..n).filter(|_| rng.gen_bool(density)));
            if s.is_empty() {
                s = Subset::new([rng.gen_range(0..n)]);
            }
            s
        };
        let s = draw(&mut rng);
        let t = s.union(&draw(&mut rng));
        let cs = cc_closure(g, &s).map_err(|e| e.to_string())?;
        let ct = cc_closure(g, &t).map_err(|e| e.to_string())?;
        ensure(s.is_subset_of(&cs), || format!("{}: not extensive", g.name()))?;
        ensure(cs.is_subset_of(&ct), || format!("{}: not monotone", g.name()))?;
        ensure(cc_closure(g, &cs).unwrap() == cs, || format!("{}: not idempotent", g.name()))?;
    }
    let mut subgroups = 0;
    for g in corpus {
        for h in enumerate_subgroups(g).map_err(|e| e.to_string())? {
            ensure(is_cc_subset(g, &h).unwrap(), || format!("{}: subgroup not CC", g.name()))?;
            subgroups += 1;
        }
    }
    Ok(format!("{CLOSURE_TRIALS} random subsets; {subgroups} subgroups are CC-subsets"))
}

fn run_verify(dir: &Path, tag: &str, extra: &[&str]) -> Result<Vec<u8>, String> {
    let out = dir.join(tag);
    let status = Command::new(env!("CARGO_BIN_EXE_avgord"))
        .args(["verify", "--max-order", "64", "--seed", "0", "--out"])
        .arg(&out)
        .args(extra)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.success(), || format!("{tag}: exit {:?}", status.status.code()))?;
    std::fs::read(&out).map_err(|e| e.to_string())
}

fn c9_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for fmt in ["csv", "json"] {
        let a = run_verify(dir.path(), &format!("a.{fmt}"), &["--format", fmt])?;
        let b = run_verify(dir.path(), &format!("b.{fmt}"), &["--format", fmt])?;
        ensure(a == b, || format!("{fmt} differs between runs"))?;
        let j1 = run_verify(dir.path(), &format!("j1.{fmt}"), &["--format", fmt, "--jobs", "1"])?;
        let j8 = run_verify(dir.path(), &format!("j8.{fmt}"), &["--format", fmt, "--jobs", "8"])?;
        ensure(j1 == j8, || format!("{fmt} differs between --jobs 1 and --jobs 8"))?;
        ensure(a == j1, || format!("{fmt} default jobs differs from --jobs 1"))?;
    }
    Ok("byte-identical CSV and JSON across runs and job counts".into())
}

fn expect_violation(path: &Path, pick: impl Fn(&AxiomViolation) -> bool, check: impl Fn(&AxiomViolation) -> bool) -> Result<(), String> {
    match load_group(path) {
        Err(Error::Validation(v)) => {
            let hit = v.iter().find(|x| pick(x)).ok_or_else(|| format!("{}: wrong violations {v:?}", path.display()))?;
            ensure(check(hit), || format!("{}: witness {hit:?} does not violate the axiom", path.display()))
        }
        other => Err(format!("{}: expected validation error, got {other:?}", path.display())),
    }
}

fn c10_ingestion(corpus: &[GroupTable]) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (i, g) in corpus.iter().enumerate() {
        let p = dir.path().join(format!("g{i}.json"));
        save_group(g, &p).map_err(|e| e.to_string())?;
        let back = load_group(&p).map_err(|e| e.to_string())?;
        ensure(back.rows() == g.rows() && back.name() == g.name(), || format!("{} changed on reload", g.name()))?;
    }

    // identity broken: S3 with rows 0 and 1 swapped
    let mut rows = make_symmetric(3).unwrap().rows();
    rows.swap(0, 1);
    let broken_identity = dir.path().join("identity.json");
    std::fs::write(&broken_identity, serde_json::json!({"name": "bad", "order": 6, "table": rows}).to_string()).unwrap();
    expect_violation(
        &broken_identity,
        |v| matches!(v, AxiomViolation::IdentityNotAtZero { .. }),
        |v| matches!(*v, AxiomViolation::IdentityNotAtZero { g, left, right } if (rows[0][g] != g || rows[g][0] != g) && left == rows[0][g] && right == rows[g][0]),
    )?;

    let latin = dir.path().join("latin.json");
    let bad_rows = vec![vec![0, 1], vec![1, 1]];
    std::fs::write(&latin, serde_json::json!({"name": "bad", "order": 2, "table": bad_rows}).to_string()).unwrap();
    expect_violation(
        &latin,
        |v| matches!(v, AxiomViolation::RowNotPermutation { .. }),
        |v| matches!(*v, AxiomViolation::RowNotPermutation { row, value, first_col, second_col }
            if bad_rows[row][first_col] == value && bad_rows[row][second_col] == value && first_col != second_col),
    )?;

    // a Latin square loop of order 5 with identity at 0 that is not a group
    let loop5 = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    let assoc = dir.path().join("assoc.json");
    std::fs::write(&assoc, serde_json::json!({"name": "loop5", "order": 5, "table": loop5}).to_string()).unwrap();
    expect_violation(
        &assoc,
        |v| matches!(v, AxiomViolation::NotAssociative { .. }),
        |v| matches!(*v, AxiomViolation::NotAssociative { a, b, c } if loop5[loop5[a][b]][c] != loop5[a][loop5[b][c]]),
    )?;
    Ok(format!("{} groups round-trip; 3 invalid files rejected with witnesses", corpus.len()))
}

fn main() {
    let registry = FamilyRegistry::builtin();
    let spec = CorpusSpec::all(MAX_ORDER, &registry);
    let corpus = builtin_corpus(&spec).expect("corpus builds");
    let cfg = VerifyConfig { class_limit: CLASS_LIMIT, samples: SAMPLES as usize, seed: 0, ..VerifyConfig::default() };

    let start = Instant::now();
    let reports: Vec<VerificationReport> =
        corpus.par_iter().map(|g| verify_group(g, &cfg).expect("verification runs")).collect();
    let sweep = start.elapsed();

    let results: Vec<(&str, Outcome)> = vec![
        ("psi triple agreement", c1_psi_triple(&corpus)),
        ("theorem sweep over CC-subsets", c2_theorem(&reports, sweep)),
        ("meo bound", c3_meo(&corpus)),
        ("class-removal monotonicity", c4_monotone(&corpus, &reports)),
        ("o(G) <= k(G), k(G)^2 >= meo(G)", c5_k_bounds(&corpus)),
        ("center lemmas", c6_center(&reports)),
        ("power-class structure", c7_classes(&corpus)),
        ("closure-operator laws", c8_closure(&corpus)),
        ("determinism and reproducibility", c9_determinism()),
        ("ingestion round-trip", c10_ingestion(&corpus)),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

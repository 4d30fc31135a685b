//! Acceptance run: one line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pseudo_einstein::algebra::{AlgebraElement, AlgebraTag};
use pseudo_einstein::clifford::build_spin_rep;
use pseudo_einstein::duality::{table3_minimal_params, verify_table3, TABLE3_LEN};
use pseudo_einstein::einstein::*;
use pseudo_einstein::groups::build;
use pseudo_einstein::transitivity::*;
use pseudo_einstein::Q;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scan(id: FibrationId, p: Params) -> Result<BTreeSet<Q>, String> {
    let f = build_fibration(id, p).map_err(|e| e.to_string())?;
    einstein_scan(&f, None).map_err(|e| e.to_string())
}

fn set(xs: &[Q]) -> BTreeSet<Q> {
    xs.iter().cloned().collect()
}

fn show(s: &BTreeSet<Q>) -> String {
    let v: Vec<String> = s.iter().map(Q::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() <= limit, || format!("took {:?}, limit {:?}", start.elapsed(), limit))
}

fn quaternionic_scans() -> Outcome {
    let start = Instant::now();
    for (m, s) in [(1, 0), (1, 1), (2, 0)] {
        let got = scan(FibrationId::PiH, Params::MS { m, s })?;
        let want = set(&[Q::ONE, Q::new(1, 2 * m as i64 + 3)]);
        ensure(got == want, || format!("m={m},s={s}: {}", show(&got)))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok("piH at (1,0), (1,1), (2,0)".into())
}

fn octonionic_scans() -> Outcome {
    let start = Instant::now();
    let want = set(&[Q::ONE, Q::new(3, 11)]);
    for id in [FibrationId::PiO1, FibrationId::PiO2, FibrationId::PiOPrime] {
        let got = scan(id, Params::Fixed)?;
        ensure(got == want, || format!("{id}: {}", show(&got)))?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{} for all three", show(&want)))
}

fn twistor_scans() -> Outcome {
    let want = set(&[Q::ONE, Q::new(1, 2)]);
    for (id, p) in [
        (FibrationId::PiCH, Params::MS { m: 1, s: 0 }),
        (FibrationId::PiCH, Params::MS { m: 1, s: 1 }),
        (FibrationId::PiCB, Params::M { m: 1 }),
        (FibrationId::PiAB, Params::M { m: 1 }),
    ] {
        let got = scan(id, p)?;
        ensure(got == want, || format!("{id} {p}: {}", show(&got)))?;
    }
    Ok(show(&want))
}

fn circle_scans() -> Outcome {
    let want = set(&[Q::ONE]);
    for m in 1..=2 {
        for p in [Params::MS { m, s: 0 }, Params::MS { m, s: m }] {
            let got = scan(FibrationId::PiC, p)?;
            ensure(got == want, || format!("piC {p}: {}", show(&got)))?;
        }
        let got = scan(FibrationId::PiA, Params::M { m })?;
        ensure(got == want, || format!("piA m={m}: {}", show(&got)))?;
    }
    Ok("only the canonical metric".into())
}

fn enumeration() -> Outcome {
    let cases = [
        ("H:15:7", 5),
        ("H:15:15", 3),
        ("H:23:11", 3),
        ("H:11:11", 2),
        ("H:7:7", 2),
        ("H:4:1", 1),
        ("CH:7:3", 3),
        ("CH:5:2", 2),
        ("CH:4:2", 1),
        ("AP:3", 2),
        ("AP:2", 1),
        ("BP:1", 1),
    ];
    let results: Vec<Result<(), String>> = cases
        .par_iter()
        .map(|&(tag, want)| {
            let e = enumerate_einstein_metrics(tag).map_err(|e| e.to_string())?;
            ensure(e.count == want && e.theorem_count == Some(want), || {
                format!("{tag}: count {} theorem {:?}, expected {want}", e.count, e.theorem_count)
            })
        })
        .collect();
    results.into_iter().collect::<Result<(), String>>()?;
    Ok(format!("{} tags", cases.len()))
}

fn table1() -> Outcome {
    let start = Instant::now();
    let rows: Vec<Result<RowReport, String>> = (1..=table_len(1))
        .into_par_iter()
        .map(|row| {
            let p = minimal_params(1, row).map_err(|e| e.to_string())?;
            verify_table_row(1, row, p).map_err(|e| e.to_string())
        })
        .collect();
    let mut passed = 0;
    for r in rows {
        let r = r?;
        ensure(r.pass, || format!("row {} failed {:?}", r.row, r.failures))?;
        passed += 1;
    }
    ensure(passed == 20, || format!("{passed} rows"))?;
    let controls = negative_controls().map_err(|e| e.to_string())?;
    for c in &controls {
        let rep = check_transitive(&c.instance).map_err(|e| e.to_string())?;
        ensure(!rep.transitive, || format!("control {} is transitive", c.name))?;
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{passed} rows transitive, {} controls not", controls.len()))
}

fn table3() -> Outcome {
    let rows: Vec<Result<(), String>> = (1..=TABLE3_LEN as u8)
        .into_par_iter()
        .map(|row| {
            let p = table3_minimal_params(row).map_err(|e| e.to_string())?;
            let r = verify_table3(row, p).map_err(|e| e.to_string())?;
            ensure(r.pass, || format!("row {row} failed {:?}", r.failures))
        })
        .collect();
    rows.into_iter().collect::<Result<(), String>>()?;
    Ok(format!("{TABLE3_LEN} rows"))
}

fn ricci_agreement() -> Outcome {
    let mut spaces = Vec::new();
    for row in 1..=table_len(1) {
        let spec = table_row(1, row, minimal_params(1, row).unwrap()).unwrap();
        let a = ActionInstance::from_embedded(&build(&spec.g).unwrap()).unwrap();
        let s = canonical_space(&a).map_err(|e| e.to_string())?;
        let n = s.dim() as i64;
        let ric = ricci(&s);
        ensure(ric == s.metric().scale(&Q::int(1 - n)), || format!("{} is not −(n−1)g", s.name()))?;
        spaces.push(s);
    }
    for id in FibrationId::ALL {
        let p = match id.takes() {
            ParamKind::Fixed => Params::Fixed,
            ParamKind::MS => Params::MS { m: 1, s: 0 },
            ParamKind::M => Params::M { m: 1 },
        };
        let f = build_fibration(id, p).map_err(|e| e.to_string())?;
        spaces.push(f.canonical().clone());
        spaces.push(f.variation(&Q::new(2, 7)).map_err(|e| e.to_string())?);
        spaces.push(f.base().map_err(|e| e.to_string())?);
        spaces.push(f.fibre_space().map_err(|e| e.to_string())?);
    }
    spaces.retain(|s| s.dim() <= 15);
    let bad: Vec<String> = spaces
        .par_iter()
        .filter(|s| ricci(s) != ricci_from_curvature(s))
        .map(|s| s.name().to_string())
        .collect();
    ensure(bad.is_empty(), || format!("disagree on {bad:?}"))?;
    Ok(format!("{} spaces", spaces.len()))
}

fn structural_invariants() -> Outcome {
    let mut algebras = 0;
    for table in [1u8, 2] {
        for row in 1..=table_len(table) {
            let spec = table_row(table, row, minimal_params(table, row).unwrap()).unwrap();
            for fam in [&spec.g, &spec.h] {
                let e = build(fam).map_err(|e| e.to_string())?;
                let l = e.algebra.abstract_algebra();
                ensure(l.jacobi_holds(), || format!("Jacobi fails for {fam}"))?;
                ensure(l.killing_is_invariant(), || format!("Killing form not invariant for {fam}"))?;
                ensure(e.preserves_form(), || format!("{fam} does not preserve its form"))?;
                algebras += 1;
            }
        }
    }
    // Norm multiplicativity on a fixed grid of small integer elements.
    let coeff = |seed: i64, i: i64| Q::int((seed * 7 + i * 3 + seed * i) % 5 - 2);
    for tag in AlgebraTag::ALL {
        let d = tag.kind().dim as i64;
        for a in 0..12 {
            for b in 0..12 {
                let x = AlgebraElement::new(tag, (0..d).map(|i| coeff(a, i)).collect()).unwrap();
                let y = AlgebraElement::new(tag, (0..d).map(|i| coeff(b + 13, i)).collect()).unwrap();
                let xy = x.multiply(&y).map_err(|e| e.to_string())?;
                ensure(xy.norm() == &x.norm() * &y.norm(), || format!("{tag:?}: N(xy) ≠ N(x)N(y)"))?;
            }
        }
    }
    for (p, q) in [(7, 0), (4, 3), (9, 0), (8, 1), (5, 4), (3, 1), (2, 2)] {
        let rep = build_spin_rep(p, q).map_err(|e| e.to_string())?;
        ensure(rep.anticommutation_holds(), || format!("Cl({p},{q}) anticommutation"))?;
    }
    Ok(format!("{algebras} algebras, 7 composition algebras, 7 Clifford reps"))
}

fn witt() -> Outcome {
    for (n, r) in [(3, 1), (5, 2), (7, 3)] {
        let w = WittBasis::new(n, r).map_err(|e| e.to_string())?;
        ensure(w.gram() == w.expected_gram(), || format!("({n},{r}) gram"))?;
        let z: Vec<Q> = (0..=r).map(|i| Q::new(i as i64 + 1, 2)).collect();
        let v = w.point_value(&z).map_err(|e| e.to_string())?;
        ensure(v == -Q::ONE, || format!("({n},{r}) point value {v}"))?;
    }
    Ok("(3,1), (5,2), (7,3)".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("quaternionic Hopf scan", quaternionic_scans),
        ("octonionic Hopf scan", octonionic_scans),
        ("twistor fibration scan", twistor_scans),
        ("circle fibrations give no new metric", circle_scans),
        ("metric enumeration matches the classification", enumeration),
        ("transitive actions and negative controls", table1),
        ("compact duals", table3),
        ("Ricci implementations agree", ricci_agreement),
        ("structural invariants", structural_invariants),
        ("Witt basis", witt),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} ({t:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} ({t:.2?})", i + 1);
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

//! The acceptance gate: nine numbered criteria, each printing a single
//! "criterion N: PASS/FAIL" line before asserting (run with
//! `-- --nocapture` to see the lines for passing tests too).
//!
//! Criterion 1 pins the reference parameters to exactly three
//! solutions. The four-relation system at those parameters in fact has
//! four, and the fourth generates a fully valid table, so that
//! criterion fails; its output names the extra solution. The other
//! eight criteria hold.

use std::collections::BTreeSet;
use std::time::Instant;

use mubs::document::TableDocument;
use mubs::galois::FieldCtx;
use mubs::pauli::{matrices_commute, verify_mub, PauliOp};
use mubs::phase_space::{commutes, MubTable, Point};
use mubs::solver::{independence_check, scan_all, solve_system, FixedFive, Solution};

fn report(criterion: usize, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn el(bits: u8) -> mubs::galois::FieldElement {
    FieldCtx::gf4().element(bits).unwrap()
}

fn triple_str(s: &Solution) -> String {
    format!("({},{},{})", s.triple.a12, s.triple.a22, s.triple.b22)
}

fn solution_with_triple(sols: &[Solution], bits: (u8, u8, u8)) -> &Solution {
    sols.iter()
        .find(|s| {
            (s.triple.a12, s.triple.a22, s.triple.b22) == (el(bits.0), el(bits.1), el(bits.2))
        })
        .expect("expected solution present")
}

fn fixture(name: &str) -> MubTable {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    let (table, _) = TableDocument::from_json(&text).unwrap().to_table().unwrap();
    table
}

const ONE: u8 = 1;
const U: u8 = 2;
const U2: u8 = 3;

#[test]
fn criterion_1_reference_solution_set() {
    let sols = solve_system(&FixedFive::reference());
    let got: BTreeSet<String> = sols.iter().map(triple_str).collect();
    let want: BTreeSet<String> = ["(1,u2,u2)", "(1,1,u)", "(u,1,u)"]
        .into_iter()
        .map(str::to_owned)
        .collect();
    let extra: Vec<&String> = got.difference(&want).collect();
    let missing: Vec<&String> = want.difference(&got).collect();
    let pass = got == want;
    let detail = if pass {
        "reference parameters yield exactly the three pinned solutions".to_owned()
    } else {
        format!(
            "expected exactly 3 solutions {{(1,u2,u2), (1,1,u), (u,1,u)}}, got {} (extra: {extra:?}, missing: {missing:?})",
            got.len()
        )
    };
    report(1, pass, &detail);
    assert!(
        pass,
        "the system at the reference parameters has {} solutions, not 3; the extra \
         solution {:?} generates a valid table (see the decision record for the analysis)",
        got.len(),
        extra
    );
}

#[test]
fn criterion_2_standard_set_reproduced() {
    let sols = solve_system(&FixedFive::reference());
    let sol = solution_with_triple(&sols, (ONE, U2, U2));
    let standard = fixture("standard_set.json");
    let pass = sol.table.canonicalize() == standard.canonicalize();
    report(
        2,
        pass,
        "solution (1,u2,u2) canonicalizes to the standard set",
    );
    assert!(pass);
}

#[test]
fn criterion_3_reference_table_b_matched() {
    let sols = solve_system(&FixedFive::reference());
    let sol = solution_with_triple(&sols, (ONE, ONE, U));
    let reference = fixture("table_b.json");
    let points_match = sol.table.canonicalize() == reference.canonicalize();

    // operator names must agree cell by cell with the stored document
    let path = format!("{}/tests/data/table_b.json", env!("CARGO_MANIFEST_DIR"));
    let doc = TableDocument::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    let names_match = reference
        .rows()
        .iter()
        .zip(&doc.operators)
        .all(|(row, ops)| {
            row.iter()
                .zip(ops)
                .all(|(p, op)| PauliOp::at_point(*p).name() == *op)
        });

    let pass = points_match && names_match;
    report(
        3,
        pass,
        "solution (1,1,u) equals the reference arrangement, points and names",
    );
    assert!(
        points_match,
        "point sets must agree up to row and column order"
    );
    assert!(
        names_match,
        "operator names must agree with the stored arrangement"
    );
}

#[test]
fn criterion_4_misprint_audit() {
    let sols = solve_system(&FixedFive::reference());
    let generated = solution_with_triple(&sols, (U, ONE, U)).table;
    let printed = fixture("misprint_variant.json");

    let mut overlap = 0;
    for (gen_row, printed_row) in generated.rows().iter().zip(printed.rows()) {
        let gen_set: BTreeSet<Point> = gen_row.iter().copied().collect();
        overlap += printed_row.iter().filter(|p| gen_set.contains(p)).count();
    }

    let printed_report = verify_mub(&printed);
    let row3 = &printed_report.rows[2];
    let pair_named = row3
        .noncommuting
        .iter()
        .any(|(p, q)| (p.to_string(), q.to_string()) == ("(0,1)".to_owned(), "(u,1)".to_owned()));
    let duplicate_named = printed_report
        .partition
        .duplicates
        .iter()
        .any(|(p, rows)| p.to_string() == "(0,1)" && rows == &vec![3, 4]);
    let generated_report = verify_mub(&generated);

    let pass = overlap == 14
        && pair_named
        && duplicate_named
        && !printed_report.valid
        && generated_report.valid;
    report(
        4,
        pass,
        &format!(
            "variant shares {overlap}/15 points; its audit names the row-3 pair and the duplicate; the generated table verifies"
        ),
    );
    assert_eq!(
        overlap, 14,
        "generated and transcribed tables must agree on 14 of 15 points"
    );
    assert!(pair_named, "row-3 report must name the pair (0,1),(u,1)");
    assert!(
        duplicate_named,
        "partition report must name (0,1) duplicated in rows 3 and 4"
    );
    assert!(!printed_report.valid);
    assert!(
        generated_report.valid,
        "the generated variant must pass full verification"
    );
}

#[test]
fn criterion_5_relation_independence() {
    let start = Instant::now();
    let rep = independence_check();
    let elapsed = start.elapsed();

    let witnesses_ok = rep.witnesses.len() == 4
        && rep.witnesses.iter().map(|w| w.dropped).collect::<Vec<_>>() == vec![1, 4, 7, 10];
    let in_time = elapsed.as_secs_f64() < 5.0;
    let pass = rep.assignments_checked == 65536 && rep.implication_holds && witnesses_ok && in_time;
    report(
        5,
        pass,
        &format!(
            "65536 assignments, implication {}, 4 witnesses, {:.2}s",
            if rep.implication_holds {
                "holds"
            } else {
                "fails"
            },
            elapsed.as_secs_f64()
        ),
    );
    assert!(
        rep.implication_holds,
        "the four relations must imply all fifteen"
    );
    assert!(
        witnesses_ok,
        "every three-relation subset must admit a counterexample"
    );
    assert!(in_time, "sweep took {elapsed:?}, budget is 5s");
}

#[test]
fn criterion_6_unbiasedness_exact() {
    let sols = solve_system(&FixedFive::reference());
    let tables = [
        ("standard set", fixture("standard_set.json")),
        (
            "solution (1,1,u)",
            solution_with_triple(&sols, (ONE, ONE, U)).table,
        ),
        (
            "solution (u,1,u)",
            solution_with_triple(&sols, (U, ONE, U)).table,
        ),
    ];
    let mut pass = true;
    for (name, table) in &tables {
        let report = verify_mub(table);
        let overlaps_ok =
            report.overlaps.len() == 10 && report.overlaps.iter().all(|o| o.all_quarter);
        let ortho_ok = report.rows.iter().all(|r| r.orthonormal);
        if !(overlaps_ok && ortho_ok) {
            pass = false;
            eprintln!("unbiasedness failed for {name}");
        }
    }
    report(
        6,
        pass,
        "all 160 cross overlaps equal 1/4 and all bases are orthonormal, 3 tables",
    );
    assert!(pass);
}

#[test]
fn criterion_7_separability_signature() {
    let catalog = scan_all();
    let mut pass = catalog.distinct_valid_tables == 6;
    for table in &catalog.valid_canonical {
        let report = verify_mub(table);
        if (
            report.signature.separable,
            report.signature.entangled,
            report.signature.anomalous,
        ) != (3, 2, 0)
        {
            pass = false;
            eprintln!("bad signature for table:\n{table}");
        }
    }
    report(
        7,
        pass,
        &format!(
            "{} distinct valid tables, every signature is 3 separable / 2 entangled",
            catalog.valid_canonical.len()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_8_predicate_matches_matrices() {
    let ctx = FieldCtx::gf4();
    let points: Vec<Point> = ctx
        .elements()
        .flat_map(|a| ctx.elements().map(move |b| Point { a, b }))
        .collect();
    let mut pass = true;
    for &p in &points {
        for &q in &points {
            if commutes(p, q) != matrices_commute(p, q) {
                pass = false;
            }
        }
    }
    report(
        8,
        pass,
        "trace predicate agrees with matrix commutators on all 256 pairs",
    );
    assert!(pass);
}

#[test]
fn criterion_9_scan_integrity() {
    let start = Instant::now();
    let catalog = scan_all();
    let elapsed = start.elapsed();

    let all_verify = catalog.valid_canonical.iter().all(|t| verify_mub(t).valid);
    let counts_ok = catalog.fixed_count == 1024
        && catalog.total_solutions == 5536
        && catalog.valid_tables == 2160
        && catalog.distinct_tables == 52
        && catalog.distinct_valid_tables == 6;
    let in_time = elapsed.as_secs_f64() < 10.0;
    let pass = all_verify && counts_ok && in_time;
    report(
        9,
        pass,
        &format!(
            "{} solutions, {} valid, {} distinct, {} distinct valid, all re-verify, {:.2}s",
            catalog.total_solutions,
            catalog.valid_tables,
            catalog.distinct_tables,
            catalog.distinct_valid_tables,
            elapsed.as_secs_f64()
        ),
    );
    assert!(
        all_verify,
        "every table the scan flags valid must pass full verification"
    );
    assert!(counts_ok, "raw and deduplicated counts changed");
    assert!(in_time, "scan took {elapsed:?}, budget is 10s");
}

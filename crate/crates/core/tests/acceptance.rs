//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with its runtime. All comparisons are exact; the runtime bounds
//! are asserted as stated. The M23 check is opt-in:
//! `cargo test --test acceptance -- --ignored`.

use std::time::{Duration, Instant};
use sylowgraph::arith::{self, LieFamily, LieTypeSpec, Sign};
use sylowgraph::{catalog, graph, subgrp, verify, Ctx};
use num_bigint::BigUint;
use num_traits::One;

fn ctx() -> Ctx {
    Ctx::default()
}

fn report(criterion: &str, pass: bool, elapsed: Duration, bound: Duration, detail: &str) {
    println!(
        "{} {}: {} in {:.2?} (bound {:.0?})",
        if pass { "PASS" } else { "FAIL" },
        criterion,
        detail,
        elapsed,
        bound
    );
    assert!(pass, "{}: {}", criterion, detail);
    assert!(
        elapsed < bound,
        "{}: runtime {:.2?} exceeded the bound {:.2?}",
        criterion,
        elapsed,
        bound
    );
}

#[test]
fn c01_a8_arrow_set_and_diameter() {
    let start = Instant::now();
    let sg = graph::sylow_graph(&catalog::alternating(8).unwrap(), "A8", &ctx()).unwrap();
    let pass = sg.arrow_pairs() == vec![(3, 2), (5, 2), (7, 3)] && sg.diameter() == Some(3);
    report(
        "criterion 1 (A8 arrows {7->3, 3->2, 5->2}, diameter 3)",
        pass,
        start.elapsed(),
        Duration::from_secs(1),
        &format!("arrows {:?}, diameter {:?}", sg.arrow_pairs(), sg.diameter()),
    );
}

#[test]
fn c02_symmetric_diameters() {
    let start = Instant::now();
    let suite = verify::symmetric_suite(&ctx(), 3, 12);
    print!("{}", suite.render());
    report(
        "criterion 2 (S_n connected, diameter <= 2, 3..=12)",
        suite.all_pass(),
        start.elapsed(),
        Duration::from_secs(30),
        &format!("{} checks", suite.checks.len()),
    );
}

#[test]
fn c03_alternating_diameters() {
    let start = Instant::now();
    let suite = verify::alternating_suite(&ctx(), 5, 12);
    print!("{}", suite.render());
    report(
        "criterion 3 (A_n diameters, 5..=12)",
        suite.all_pass(),
        start.elapsed(),
        Duration::from_secs(60),
        &format!("{} checks", suite.checks.len()),
    );
}

#[test]
fn c04_psl2_sylow_normalizer_orders() {
    let start = Instant::now();
    let c = ctx();
    let mut pass = true;
    let mut detail = String::new();
    for q in [7u64, 11, 19, 23, 27] {
        let g = catalog::psl2(q, &c).unwrap();
        let (r, _) = arith::prime_power_split(q, &c).unwrap();
        let syl = subgrp::sylow(&g, r, &c).unwrap();
        let n = subgrp::normalizer(&g, &syl, &c).unwrap();
        let expected = BigUint::from(q * (q - 1) / 2);
        pass &= n.group().order() == &expected;
        detail.push_str(&format!("q={}: |N|={} ", q, n.group().order()));
    }
    report(
        "criterion 4 (|N_PSL2(q)(Syl_r)| = q(q-1)/2)",
        pass,
        start.elapsed(),
        Duration::from_secs(30),
        &detail,
    );
}

#[test]
fn c05_psl2_27_extension() {
    let start = Instant::now();
    let c = ctx();
    let g = catalog::psl2_field_extension(27, 3, &c).unwrap();
    let syl3 = subgrp::sylow(&g, 3, &c).unwrap();
    let n = subgrp::normalizer(&g, &syl3, &c).unwrap();
    let self_normalizing = n.group().order() == syl3.group().order();
    let sg = graph::sylow_graph(&g, "PSL2(27):3", &c).unwrap();
    let pass = self_normalizing && sg.has_arrow(2, 3) && sg.diameter() == Some(2);
    report(
        "criterion 5 (PSL2(27):3 self-normalizing Syl_3, 2->3, diameter 2)",
        pass,
        start.elapsed(),
        Duration::from_secs(60),
        &format!(
            "|Syl_3|={} |N|={} arrows {:?} diameter {:?}",
            syl3.group().order(),
            n.group().order(),
            sg.arrow_pairs(),
            sg.diameter()
        ),
    );
}

#[test]
fn c06_small_mathieu_graphs() {
    let start = Instant::now();
    let suite = verify::sporadic_suite(&ctx(), false);
    print!("{}", suite.render());
    report(
        "criterion 6 (M11, M12, M22 connected, diameter <= 5)",
        suite.all_pass(),
        start.elapsed(),
        Duration::from_secs(300),
        &format!("{} checks", suite.checks.len()),
    );
}

#[test]
#[ignore = "opt-in M23 check: run with --ignored (about a minute)"]
fn c07_m23_diameter_exactly_5() {
    let start = Instant::now();
    let sg = graph::sylow_graph(&catalog::mathieu(23).unwrap(), "M23", &ctx()).unwrap();
    report(
        "criterion 7 (M23 diameter exactly 5)",
        sg.diameter() == Some(5),
        start.elapsed(),
        Duration::from_secs(900),
        &format!("arrows {:?}, diameter {:?}", sg.arrow_pairs(), sg.diameter()),
    );
}

#[test]
fn c08_zsigmondy_exhaustive() {
    let start = Instant::now();
    let c = ctx();
    let mut pass = true;
    let mut pairs = 0;
    for p in 2u64..=50 {
        for n in 2u32..=30 {
            let exists = arith::zsigmondy_exists(p, n).unwrap();
            pass &= exists != arith::is_zsigmondy_exception(p, n);
            if exists {
                let part = arith::primitive_part(p, n);
                pass &= &part % BigUint::from(n) == BigUint::one();
            }
            pairs += 1;
        }
    }
    // Spot values pinned from the statement and a brute-force pass.
    pass &= arith::zsigmondy(2, 6, &c).unwrap().is_none();
    pass &= arith::zsigmondy(3, 2, &c).unwrap().is_none();
    pass &= arith::zsigmondy(2, 4, &c).unwrap() == Some(BigUint::from(5u32));
    report(
        "criterion 8 (zsigmondy exhaustive, 2<=p<=50, 2<=n<=30)",
        pass,
        start.elapsed(),
        Duration::from_secs(10),
        &format!("{} pairs", pairs),
    );
}

#[test]
fn c09_e6_order_formula() {
    let start = Instant::now();
    let mut pass = true;
    let mut d_values_plus = std::collections::BTreeSet::new();
    let mut d_values_minus = std::collections::BTreeSet::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let qb = BigUint::from(q);
        let plus: BigUint = [2u32, 5, 6, 8, 9, 12].iter().map(|&d| qb.pow(d) - 1u32).product();
        let d_plus = if (q - 1) % 3 == 0 { 3u32 } else { 1 };
        d_values_plus.insert(d_plus);
        pass &= arith::order_e6(q, Sign::Plus) == qb.pow(36) * plus / BigUint::from(d_plus);
        let minus: BigUint = [
            qb.pow(2) - 1u32,
            qb.pow(5) + 1u32,
            qb.pow(6) - 1u32,
            qb.pow(8) - 1u32,
            qb.pow(9) + 1u32,
            qb.pow(12) - 1u32,
        ]
        .into_iter()
        .product();
        let d_minus = if (q + 1) % 3 == 0 { 3u32 } else { 1 };
        d_values_minus.insert(d_minus);
        pass &= arith::order_e6(q, Sign::Minus) == qb.pow(36) * minus / BigUint::from(d_minus);
    }
    // Both d = 1 and d = 3 must occur for each sign across the range.
    pass &= d_values_plus.len() == 2 && d_values_minus.len() == 2;
    report(
        "criterion 9 (E6 order formula vs degree-product oracle)",
        pass,
        start.elapsed(),
        Duration::from_secs(1),
        "q in {2,3,4,5,7,8,9}, both signs, both d values",
    );
}

#[test]
fn c10_predictor_soundness() {
    let start = Instant::now();
    let c = ctx();
    let a8 = graph::sylow_graph(&catalog::alternating(8).unwrap(), "A8", &c).unwrap();
    let l42 = LieTypeSpec::new(LieFamily::A, 4, 2, &c).unwrap();
    let mut pass = true;
    for a in arith::predicted_edges(&l42, &c).unwrap() {
        pass &= a8.has_arrow(a.from, a.to);
    }
    let psl32 = graph::sylow_graph(&catalog::psl(3, 2, &c).unwrap(), "PSL3(2)", &c).unwrap();
    let l32 = LieTypeSpec::new(LieFamily::A, 3, 2, &c).unwrap();
    for a in arith::predicted_edges(&l32, &c).unwrap() {
        pass &= psl32.has_arrow(a.from, a.to);
    }
    report(
        "criterion 10 (predictor arrows subset of computed graphs)",
        pass,
        start.elapsed(),
        Duration::from_secs(10),
        &format!(
            "L4(2) into A8 {:?}; L3(2) into PSL3(2) {:?}",
            a8.arrow_pairs(),
            psl32.arrow_pairs()
        ),
    );
}

#[test]
fn c11_property_suites() {
    let start = Instant::now();
    let suite = verify::lemmas_suite(&ctx());
    print!("{}", suite.render());
    report(
        "criterion 11 (lemma property suites, zero violations)",
        suite.all_pass(),
        start.elapsed(),
        Duration::from_secs(300),
        &format!("{} checks", suite.checks.len()),
    );
}

#[test]
fn c12_formation_suite() {
    let start = Instant::now();
    let suite = verify::formations_suite(&ctx());
    print!("{}", suite.render());
    report(
        "criterion 12 (formation equivalences, zero violations)",
        suite.all_pass(),
        start.elapsed(),
        Duration::from_secs(300),
        &format!("{} checks", suite.checks.len()),
    );
}

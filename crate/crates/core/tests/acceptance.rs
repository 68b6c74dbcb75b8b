//! Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fail.

use chowver::verifier::{self, parse_perturbations, FaultInjection, Status, SuiteConfig, SuiteReport};

const GENERA: [u32; 5] = [3, 5, 7, 9, 11];

fn check_line(reports: &[SuiteReport], suite: &str, budget_ms: Option<u64>) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for r in reports {
        let c = r.check(suite).expect("suite ran");
        let in_time = budget_ms.is_none_or(|b| c.elapsed_ms < b);
        if c.status != Status::Pass || !in_time {
            ok = false;
            notes.push(format!(
                "g={} {} ({} ms): {}",
                r.genus, c.status, c.elapsed_ms, c.detail
            ));
        } else {
            notes.push(format!("g={} {} ms", r.genus, c.elapsed_ms));
        }
    }
    (ok, notes.join(", "))
}

fn controls() -> (bool, String) {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/perturbations.txt");
    let perturbations =
        parse_perturbations(&std::fs::read_to_string(path).expect("corpus present")).expect("corpus parses");
    let mut ok = perturbations.len() == 5;
    let mut notes = Vec::new();
    for p in perturbations {
        let mut cfg = SuiteConfig::new(3);
        cfg.max_degree = 8;
        cfg.suites = vec!["thm14-ideal".into()];
        cfg.perturbation = Some(p.clone());
        let r = verifier::run_suite_with(&cfg).expect("suite runs");
        let failed = r.status() == Status::Fail;
        ok &= failed;
        notes.push(format!(
            "bullet {} +{}*{} {}",
            p.bullet, p.delta, p.monomial, r.checks[0].status
        ));
    }
    let mut cfg = SuiteConfig::new(3);
    cfg.fault = FaultInjection::FlipGroebner;
    let r = verifier::run_suite_with(&cfg).expect("suite runs");
    let flagged: Vec<&str> = r
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail && c.detail.contains("disagree"))
        .map(|c| c.name.as_str())
        .collect();
    ok &= r.status() == Status::Fail && !flagged.is_empty();
    notes.push(format!("fault injection flagged {}", flagged.join(" ")));
    (ok, notes.join(", "))
}

fn main() {
    let reports: Vec<SuiteReport> = GENERA
        .iter()
        .map(|&g| verifier::run_suite(g, 12, &verifier::SUITES).expect("suite runs"))
        .collect();
    let rows = [
        ("thm14-ideal", Some(60_000)),
        ("thm14-rewrites", None),
        ("mod2beta1-consistency", None),
        ("transfer", None),
        ("cor-H11", None),
        ("w-identity", None),
        ("f-constants", None),
        ("rh-ring", Some(30_000)),
    ];
    let mut all = true;
    for (i, (suite, budget)) in rows.iter().enumerate() {
        let (ok, detail) = check_line(&reports, suite, *budget);
        all &= ok;
        println!(
            "criterion {} {} {suite}: {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    let (ok, detail) = controls();
    all &= ok;
    println!("criterion 9 {} controls: {detail}", if ok { "PASS" } else { "FAIL" });
    if !all {
        std::process::exit(1);
    }
}

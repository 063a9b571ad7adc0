//! Acceptance campaign. Prints one line per criterion and exits nonzero if
//! any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use geocrystal::cartan::{Family, TypeLabel};
use geocrystal::harness::mutate::{e0_exponent_control, geometry_campaign, ud_campaign};
use geocrystal::harness::{run_check, HarnessError, Settings};
use geocrystal::report::{Mode, Report};

struct Outcome {
    pass: bool,
    detail: String,
}

fn labels(families: &[Family], extra: usize) -> Vec<TypeLabel> {
    let mut out = Vec::new();
    for &f in families {
        for n in f.min_rank()..=f.min_rank() + extra {
            out.push(TypeLabel::new(f, n).unwrap());
        }
    }
    out
}

fn charted() -> Vec<Family> {
    Family::ALL.into_iter().filter(|f| f.has_chart()).collect()
}

fn campaign(check: &str, types: &[TypeLabel], s: Settings) -> Outcome {
    let mut runs = 0;
    let mut points = 0;
    let mut bad = Vec::new();
    for &t in types {
        match run_check(check, t, &s) {
            Ok(r) => {
                runs += 1;
                points += r.sample_size;
                if !r.pass {
                    bad.push(describe(t, &r));
                }
            }
            Err(e) => bad.push(format!("{t}: {e}")),
        }
    }
    let detail = if bad.is_empty() {
        format!("{runs} runs, {points} cases")
    } else {
        bad.join("; ")
    };
    Outcome { pass: bad.is_empty(), detail }
}

fn describe(t: TypeLabel, r: &Report) -> String {
    match r.first_failure() {
        Some(f) => format!("{t}: {} failures, first {} [{} vs {}]", r.failure_count, f.element, f.lhs, f.rhs),
        None => format!("{t}: failed"),
    }
}

fn symbolic() -> Settings {
    Settings { mode: Mode::Symbolic, ..Settings::default() }
}

fn lattice(samples: usize) -> Settings {
    Settings { mode: Mode::Sampled, samples, lattice_box: 8, ..Settings::default() }
}

fn negative_controls() -> Outcome {
    let mut bad = Vec::new();
    let (mut tried, mut neutral, mut killed, mut fixed) = (0, 0, 0, 0);
    for f in charted() {
        let t = TypeLabel::new(f, f.min_rank()).unwrap();
        for (name, o) in [("geometry", geometry_campaign(t, 20, 11)), ("ud", ud_campaign(t, 20, 11))] {
            let o = o.expect("charted type");
            tried += o.tried;
            neutral += o.neutral;
            killed += o.killed;
            for s in &o.report.failures {
                bad.push(format!("{t} {name} survivor {}", s.element));
            }
        }
    }
    for f in Family::ALL {
        let t = TypeLabel::new(f, f.min_rank()).unwrap();
        match e0_exponent_control(t, Mode::Symbolic, 3) {
            Ok(r) if !r.pass && r.first_failure().is_some() => fixed += 1,
            Ok(_) => bad.push(format!("{t}: e0 exponent bump not detected")),
            Err(HarnessError::NoChart(_)) => {}
            Err(e) => bad.push(format!("{t}: {e}")),
        }
    }
    let detail = if bad.is_empty() {
        format!("{tried} random mutants: {killed} killed with a witness, {neutral} neutral; e0 exponent bump caught for {fixed} types")
    } else {
        bad.join("; ")
    };
    Outcome { pass: bad.is_empty(), detail }
}

fn main() -> ExitCode {
    let all = Family::ALL;
    let ch = charted();
    let binf: Vec<Family> = all.into_iter().filter(|f| *f != Family::A2dag).collect();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("verma relations", Box::new(move || campaign("verma", &labels(&all, 1), symbolic()))),
        ("geometric axioms", Box::new(move || campaign("axioms", &labels(&all, 1), symbolic()))),
        ("sigma-bar involution", {
            let ch = ch.clone();
            Box::new(move || campaign("sigma", &labels(&ch, 1), symbolic()))
        }),
        ("chart consistency", {
            let ch = ch.clone();
            Box::new(move || campaign("chart", &labels(&ch, 1), symbolic()))
        }),
        ("schubert cross-check", {
            let ch = ch.clone();
            Box::new(move || campaign("schubert", &labels(&ch, 1), symbolic()))
        }),
        ("ud matching", {
            let ch = ch.clone();
            Box::new(move || campaign("ud", &labels(&ch, 1), lattice(2000)))
        }),
        ("mu isomorphism", {
            let ch = ch.clone();
            Box::new(move || campaign("mu", &labels(&ch, 1), lattice(2000)))
        }),
        ("b-infinity axioms", Box::new(move || campaign("binf", &labels(&binf, 1), lattice(1000)))),
        ("negative controls", Box::new(negative_controls)),
    ];
    let mut ok = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let o = run();
        ok &= o.pass;
        println!(
            "criterion {} {name}: {} ({}; {:.1?})",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t0.elapsed()
        );
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

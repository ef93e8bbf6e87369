//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use fanshift::experiments::{self, RunParams};
use fanshift::render::{render, Figure, RenderOptions};
use fanshift::report::Report;

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took > limit {
            o.pass = false;
        }
        o.detail = format!("{}; {:.2}s (limit {}s)", o.detail, took.as_secs_f64(), limit.as_secs());
    } else {
        o.detail = format!("{}; {:.2}s", o.detail, took.as_secs_f64());
    }
    o
}

fn run(name: &str, p: &RunParams) -> Report {
    experiments::run(name, p).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn c1() -> Outcome {
    timed(secs(5), || {
        let p = RunParams {
            kmax: Some(20),
            samples: Some(1000),
            ..Default::default()
        };
        let r = run("decomposition", &p);
        Outcome {
            pass: r.pass,
            detail: format!("{} points, image and preimage sections", r.witnesses["points_checked"]),
        }
    })
}

fn c2() -> Outcome {
    timed(secs(10), || {
        let p = RunParams {
            kmax: Some(20),
            samples: Some(1000),
            window: Some(8),
            ..Default::default()
        };
        let r = run("diam", &p);
        let exact = r.witnesses["intervals_exact"] == true;
        let over: Vec<String> = r.witnesses["slices"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|s| s["within_bound"] == false)
            .map(|s| format!("k={} max={:.4} bound={:.4}", s["k"], s["max_dist_window"].as_f64().unwrap(), s["bound"].as_f64().unwrap()))
            .collect();
        Outcome {
            pass: r.pass,
            detail: format!(
                "intervals exact: {exact}; slices over bound: {}",
                if over.is_empty() { "none".into() } else { over.join(", ") }
            ),
        }
    })
}

fn c3() -> Outcome {
    timed(secs(60), || {
        let p = RunParams {
            eps: Some(1.0 / 16.0),
            depth: Some(40),
            kmax: Some(8),
            ..Default::default()
        };
        let r = run("impression", &p);
        let seeds = r.witnesses.as_array().unwrap();
        let uncovered: u64 = seeds.iter().map(|s| s["density"]["uncovered_count"].as_u64().unwrap_or(u64::MAX)).sum();
        Outcome {
            pass: r.pass && seeds.len() == 10 && uncovered == 0,
            detail: format!("{} seeds, {uncovered} uncovered net points", seeds.len()),
        }
    })
}

fn c4() -> Outcome {
    timed(None, || {
        let p = RunParams {
            kmax: Some(5),
            depth: Some(12),
            ..Default::default()
        };
        let r = run("cantor", &p);
        let certs = r.witnesses.as_array().unwrap();
        let words: u64 = certs.iter().map(|c| c["words_checked"].as_u64().unwrap()).sum();
        let counts = certs.iter().all(|c| c["counts_match"] == true);
        Outcome {
            pass: r.pass && counts,
            detail: format!("{words} words, counts match recurrence: {counts}"),
        }
    })
}

fn c5() -> Outcome {
    timed(None, || {
        let p = RunParams {
            samples: Some(10_000),
            kmax: Some(6),
            ..Default::default()
        };
        let r = run("product", &p);
        Outcome {
            pass: r.pass,
            detail: format!(
                "10000 round trips; failures: round trip {}, parity {}",
                !r.witnesses["round_trip_failure"].is_null(),
                !r.witnesses["parity_failure"].is_null()
            ),
        }
    })
}

fn c6() -> Outcome {
    timed(None, || {
        let p = RunParams {
            a: Some("1,4,5".parse().unwrap()),
            samples: Some(1000),
            ..Default::default()
        };
        let r = run("quotient", &p);
        Outcome {
            pass: r.pass,
            detail: format!(
                "{} pairs, {} arc points checked",
                r.witnesses["pairs"], r.witnesses["arc_points_checked"]
            ),
        }
    })
}

fn c7() -> Outcome {
    timed(secs(120), || {
        let p = RunParams {
            eps: Some(1.0 / 8.0),
            window: Some(2),
            ..Default::default()
        };
        let r = run("orbit", &p);
        let w = &r.witnesses;
        let full = w["covered"] == w["net_size"] && w["replayed"] == w["net_size"];
        Outcome {
            pass: r.pass && full,
            detail: format!(
                "covered {}/{}, replayed {}, orbit length {}",
                w["covered"], w["net_size"], w["replayed"], w["orbit_length"]
            ),
        }
    })
}

fn c8() -> Outcome {
    timed(None, || {
        let r = run("hlavna", &RunParams::default());
        let w = &r.witnesses;
        Outcome {
            pass: r.pass && w["identity"]["pass"] == true && w["product"]["pass"] == true && w["violating_rejected"] == true,
            detail: format!(
                "identity {}, product {}, violating map rejected {}",
                w["identity"]["pass"], w["product"]["pass"], w["violating_rejected"]
            ),
        }
    })
}

fn c9() -> Outcome {
    timed(secs(300), || {
        let p = RunParams {
            kmax: Some(6),
            depth: Some(4),
            ..Default::default()
        };
        let d = run("distinguish", &p);
        let j = run(
            "juma",
            &RunParams {
                grid: Some(1.0 / 1024.0),
                ..Default::default()
            },
        );
        let agree = j.witnesses.as_array().unwrap().iter().filter(|f| f["oracle"]["agree"] == true).count();
        Outcome {
            pass: d.pass && d.witnesses["pairs"] == 2016 && j.pass && agree == 10,
            detail: format!(
                "{}/{} pairs certified; oracle agrees on {agree}/10 fans",
                d.witnesses["certified"], d.witnesses["pairs"]
            ),
        }
    })
}

fn c10() -> Outcome {
    timed(None, || {
        let mut mismatches = Vec::new();
        let seeded = RunParams {
            seed: Some(12345),
            samples: Some(200),
            ..Default::default()
        };
        for name in ["diam", "product", "quotient", "hlavna", "distinguish"] {
            let p = if name == "distinguish" {
                RunParams {
                    a: Some("1,4,5".parse().unwrap()),
                    b: Some("2,4,5".parse().unwrap()),
                    ..Default::default()
                }
            } else {
                seeded.clone()
            };
            if run(name, &p).to_json() != run(name, &p).to_json() {
                mismatches.push(name.to_string());
            }
        }
        for f in Figure::ALL {
            let o = RenderOptions::default();
            if render(f, &o).unwrap() != render(f, &o).unwrap() {
                mismatches.push(f.id().to_string());
            }
        }
        Outcome {
            pass: mismatches.is_empty(),
            detail: if mismatches.is_empty() {
                "5 reports and 7 figures byte-identical".into()
            } else {
                format!("differing: {}", mismatches.join(", "))
            },
        }
    })
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("relation decomposition", c1),
        ("diameter bounds", c2),
        ("forward-impression density", c3),
        ("Cantor structure of K_k", c4),
        ("product structure", c5),
        ("shift/quotient compatibility", c6),
        ("orbit density", c7),
        ("lift properties", c8),
        ("JuMa distinguishability", c9),
        ("determinism", c10),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("{} criterion {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}

//! Development probe for the verification suites.

use mink_core::body::ConvexBody;
use mink_core::verify::{self, VerifyConfig};

fn show(report: &mink_core::verify::SuiteReport) {
    for c in &report.checks {
        println!(
            "   [{}] {}: expected {}, actual {}",
            if c.pass { "ok" } else { "FAIL" },
            c.name,
            c.expected,
            c.actual
        );
    }
}

fn main() {
    let cfg = VerifyConfig::<f64>::default();
    let t0 = std::time::Instant::now();

    for tag in ["lp:2", "lp:1.5", "cube", "cross", "halfdisk:256"] {
        let body = ConvexBody::<f64>::from_tag(tag, 3).unwrap();
        let x = body.boundary_point(&[1.0, 0.0, 0.0]).unwrap();
        let rep = verify::prop1(&body, &x, &cfg).unwrap();
        println!("prop1 {tag}: all_pass={}", rep.all_pass());
        if !rep.all_pass() {
            show(&rep);
        }
    }
    println!("prop1 done at {:.1}s", t0.elapsed().as_secs_f64());

    for tag in ["cube", "lp:1.5"] {
        let body = ConvexBody::<f64>::from_tag(tag, 3).unwrap();
        let x = body.boundary_point(&[1.0, 0.0, 0.0]).unwrap();
        let rep = verify::lemma1(&body, &x, &cfg).unwrap();
        println!("lemma1 {tag}: all_pass={}", rep.all_pass());
        show(&rep);
    }
    println!("lemma1 done at {:.1}s", t0.elapsed().as_secs_f64());

    let rep = verify::corollary1(&cfg);
    println!("corollary1: all_pass={}", rep.all_pass());
    show(&rep);

    for tag in ["lp:2", "lp:1.5", "cube", "halfdisk:256"] {
        let body = ConvexBody::<f64>::from_tag(tag, 3).unwrap();
        let x = body.boundary_point(&[1.0, 0.0, 0.0]).unwrap();
        let r26 = verify::mw26(&body, &x, &cfg).unwrap();
        let r29 = verify::mw29(&body, &x, &cfg).unwrap();
        println!("mw26 {tag}: {}", r26.all_pass());
        if !r26.all_pass() {
            show(&r26);
        }
        println!(
            "mw29 {tag}: {} ({})",
            r29.all_pass(),
            r29.checks[0].actual
        );
    }

    let mut cfg2 = VerifyConfig::<f64>::default();
    cfg2.level = 8;
    for tag in ["lp:2", "lp:1.5", "lp:inf", "lp:1"] {
        let body = ConvexBody::<f64>::from_tag(tag, 2).unwrap();
        let x = body.boundary_point(&[1.0, 0.0]).unwrap();
        let rep = verify::mw210(&body, &x, &cfg2).unwrap();
        println!("mw210 {tag}: {}", rep.all_pass());
        show(&rep);
    }

    let rep = verify::example1(&cfg);
    println!("example1: all_pass={}", rep.all_pass());
    show(&rep);
    println!("total {:.1}s", t0.elapsed().as_secs_f64());
}

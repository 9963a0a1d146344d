use curvelab::corpus;
use curvelab::report::{analyze, AnalyzeOptions};

fn run(name: &str) {
    let e = corpus::entry(name).unwrap();
    let t = std::time::Instant::now();
    let a = analyze(&e.curve().unwrap(), AnalyzeOptions::default()).unwrap();
    eprintln!("{name}: {:?}\n{}", t.elapsed(), a.render_text());
    assert!(e.check(&a).is_empty(), "{name}: {:?}", e.check(&a));
    assert_eq!(a.findings().count(), 0, "{name}");
}

#[test]
fn fermat13() {
    run("fermat13-f27");
}

#[test]
fn c2() {
    run("c2-f27");
}

#[test]
fn dls() {
    run("dls-q8");
}

use domatic_cli::generate::{generate, Family, WeightSpec};
use domatic_cli::{run, Instance, Outcome};
use proptest::prelude::*;

fn run_on(args: &[&str], input: &str) -> Outcome {
    let owned = input.to_string();
    let mut argv = vec!["domatic"];
    argv.extend_from_slice(args);
    argv.push("-");
    run(argv, move || Ok(owned))
}

const P3: &str = "nodes 3\nnode 0 1 1\nnode 1 1 1\nnode 2 1 1\nedge 0 1\nedge 1 2\n";

#[test]
fn separator_json() {
    let out = run_on(&["separator"], P3);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["k"], "1");
    assert_eq!(v["separator"], serde_json::json!([1]));
    assert_eq!(v["sides"], serde_json::json!([[0], [2]]));
}

#[test]
fn exit_codes() {
    assert_eq!(run_on(&["separator"], "nodes 1\nedge 0 0\n").code, 1);
    assert_eq!(run_on(&["cds"], "nodes 2\nnode 0 1 1\nnode 1 1 1\n").code, 2);
    let k3 = "nodes 3\nnode 0 1 1\nnode 1 1 1\nnode 2 1 1\nedge 0 1\nedge 0 2\nedge 1 2\n";
    assert_eq!(run_on(&["pack"], k3).code, 2);
    let singletons = run_on(&["pack", "--complete-singletons"], k3);
    assert_eq!(singletons.code, 0);
    assert!(singletons.stdout.contains("\"size\": \"3\""));
    let zero = "nodes 3\nnode 0 1 1\nnode 1 0 1\nnode 2 1 1\nedge 0 1\nedge 1 2\n";
    assert_eq!(run_on(&["pack"], zero).code, 2);
    let c5 = generate(
        &Family::Cycle(5),
        &WeightSpec::Constant(domatic_core::rational::one()),
        &WeightSpec::Constant(domatic_core::rational::one()),
        0,
    );
    assert_eq!(run_on(&["pack", "--rho-cap", "1"], &c5.to_text()).code, 3);
    assert_eq!(run_on(&["pack", "--max-rounds", "0"], &c5.to_text()).code, 3);
    assert_eq!(run_on(&["exact", "--what", "ds", "--max-vertices", "2"], P3).code, 3);
    assert_eq!(run_on(&["pack", "--bogus"], P3).code, 1);
    assert_eq!(run(["domatic", "--help"], || unreachable!()).code, 0);
}

#[test]
fn certificate_failure_is_loud() {
    // On unit C4 the output is {0, 1}, which hits the four active vertices
    // six times: ratio 3/2 against the bound 1 + 4c' = 1 when c' = 0.
    let c4 = "nodes 4\nnode 0 1 1\nnode 1 1 1\nnode 2 1 1\nnode 3 1 1\nedge 0 1\nedge 0 3\nedge 1 2\nedge 2 3\n";
    let ok = run_on(&["ds", "--check-certificates"], c4);
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    let bad = run_on(&["ds", "--check-certificates", "--c-prime", "0"], c4);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("gamma_bound"));
    assert!(!bad.stdout.is_empty());
}

#[test]
fn generated_files_parse_back() {
    for args in [
        vec!["generate", "grid", "2", "3"],
        vec!["generate", "star", "3", "--capacity", "5/2"],
        vec!["generate", "grid-subgraph", "3", "3", "--cost", "0:4", "--seed", "8"],
    ] {
        let mut argv = vec!["domatic"];
        argv.extend(args);
        let out = run(argv, || unreachable!());
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(Instance::parse(&out.stdout).unwrap().to_text(), out.stdout);
    }
    assert_eq!(run(["domatic", "generate", "grid", "3"], || unreachable!()).code, 1);
    assert_eq!(run(["domatic", "generate", "cycle", "2"], || unreachable!()).code, 1);
}

proptest! {
    #[test]
    fn canonical_round_trip(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>(), p in 0u32..4) {
        let fam = Family::GridSubgraph { rows, cols, keep_num: p, keep_den: 3 };
        let inst = generate(&fam, &WeightSpec::Range(0, 7), &WeightSpec::Constant(domatic_core::rational::frac(6, 4)), seed);
        let text = inst.to_text();
        let back = Instance::parse(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.to_text(), text);
    }
}

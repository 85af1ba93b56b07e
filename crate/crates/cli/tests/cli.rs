use multisupp_cli::{run, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn invoke_with_stdin(args: &[&str], input: &str) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("multisupp").chain(args.iter().copied());
    let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn invoke(args: &[&str]) -> Run {
    invoke_with_stdin(args, "")
}

#[test]
fn polytope_of_worked_example() {
    let r = invoke(&["polytope", &fixture("worked_example.rankfn")]);
    assert_eq!(r.code, EXIT_OK);
    let expected = std::fs::read_to_string(fixture("worked_example.points")).unwrap();
    let body: String = expected
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(r.stdout, body);
}

#[test]
fn msupp_formats() {
    let r = invoke(&["msupp", &fixture("worked_example.chowclass")]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.starts_with("points 3 5 8\n"));
    let t = invoke(&["msupp", &fixture("worked_example.chowclass"), "--format", "table"]);
    assert_eq!(t.stdout.lines().count(), 9);
    assert!(t.stdout.contains("\n1 2 2 3\n"));
}

#[test]
fn verify_support_accepts_class_and_points() {
    for f in ["worked_example.chowclass", "worked_example.points"] {
        let r = invoke(&["verify-support", &fixture(f)]);
        assert_eq!(r.code, EXIT_OK, "{f}");
        assert!(r.stdout.starts_with("verdict: M = Q\n"));
        assert!(r.stdout.contains("u{2,3} = 3\n"));
    }
    let hole = "points 2 2 2\n2 0\n0 2\n";
    let r = invoke_with_stdin(&["verify-support", "-"], hole);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.stdout.contains("witness: 1 1\n"));
}

#[test]
fn check_rank_verdicts() {
    let r = invoke(&["check-rank", &fixture("worked_example.rankfn")]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("polymatroid: yes\nmatroid: no\n"));
    let bad = "rankfn 2\n0 0\n1 2\n2 1\n3 1\n";
    let r = invoke_with_stdin(&["check-rank", "-"], bad);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.stdout.contains("polymatroid: no"));
}

#[test]
fn vamos_ingleton_and_frontier() {
    let elements = invoke(&["ingleton", &fixture("vamos.rankfn")]);
    assert_eq!(elements.code, EXIT_OK);
    let subsets = invoke(&["ingleton", &fixture("vamos.rankfn"), "--subsets"]);
    assert_eq!(subsets.code, EXIT_FAIL);
    assert!(subsets.stdout.contains("lhs=16 rhs=15"));
    let fr = invoke(&["frontier", &fixture("vamos.rankfn")]);
    assert_eq!(
        (fr.code, fr.stdout.as_str()),
        (EXIT_FAIL, "necessary-conditions-fail\n")
    );
    let small = invoke(&["frontier", &fixture("worked_example.rankfn")]);
    assert_eq!(
        (small.code, small.stdout.as_str()),
        (EXIT_OK, "consistent-representable\n")
    );
}

#[test]
fn arrangement_verbs() {
    let arr = fixture("three_planes.arr");
    let r = invoke(&["rank-from-arrangement", &arr]);
    assert_eq!(r.stdout, "rankfn 3\n0 0\n1 2\n2 2\n3 3\n4 2\n5 3\n6 3\n7 3\n");
    let li = invoke(&["rank-from-arrangement", &arr, "--li"]);
    assert_eq!(li.stdout, "rankfn 3\n0 0\n1 1\n2 1\n3 2\n4 1\n5 2\n6 2\n7 2\n");
    let class = invoke(&["li-class", &arr, "--dims", "2,2,2"]);
    assert_eq!(class.stdout, "chowclass 3 2 2 2\n1 1 1 2\n1 1 2 1\n1 2 1 1\n");
    for (point, c) in [("1,1,0", "1\n"), ("2,0,0", "0\n")] {
        let o = invoke(&["li-oracle", &arr, "--point", point, "--seed", "9"]);
        assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, c), "{point}");
    }
    let emb = invoke(&["embed", &arr, "--seed", "4"]);
    assert_eq!(emb.code, EXIT_OK);
    assert!(emb.stdout.contains("assignment 3\n1 1 2\n2 3 4\n3 5 6\n"));
}

#[test]
fn ab_lift_recovers_column_matroid() {
    let lift = invoke(&["ab-lift", &fixture("rank2.matrix")]);
    assert_eq!(lift.code, EXIT_OK);
    let li = invoke_with_stdin(&["rank-from-arrangement", "-", "--li"], &lift.stdout);
    assert_eq!(li.stdout, "rankfn 3\n0 0\n1 1\n2 1\n3 2\n4 1\n5 2\n6 2\n7 2\n");
}

#[test]
fn flag_verbs() {
    let t = invoke(&["flag-degrees", "3"]);
    assert_eq!(t.code, EXIT_OK);
    assert_eq!(t.stdout.lines().count(), 9);
    assert!(t.stdout.contains("\n2 2 2 2\n"));
    let p = invoke(&["flag-degrees", "2", "--format", "points"]);
    assert_eq!(p.stdout, "points 2 3 2\n1 2\n2 1\n");
    let v = invoke(&["flag-verify", "2"]);
    assert_eq!(v.code, EXIT_OK);
    assert!(v.stdout.contains("oracle disagreements: 0 of 4\n"));
    assert_eq!(invoke(&["flag-degrees", "9"]).code, EXIT_USAGE);
}

#[test]
fn malformed_input_and_usage() {
    let r = invoke_with_stdin(&["polytope", "-"], "rankfn 2\n0 0\n1 1\n");
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.starts_with("error: -: "));
    assert_eq!(invoke(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(invoke(&["embed", &fixture("three_planes.arr")]).code, EXIT_USAGE);
    assert_eq!(
        invoke(&[
            "li-oracle",
            &fixture("three_planes.arr"),
            "--point",
            "1,1",
            "--seed",
            "1"
        ])
        .code,
        EXIT_USAGE
    );
    assert_eq!(invoke(&["polytope", "/nonexistent/file"]).code, EXIT_USAGE);
    let help = invoke(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("flag-verify"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["embed", "ARR", "--seed", "11"],
        vec!["li-oracle", "ARR", "--point", "0,1,1", "--seed", "5"],
        vec!["flag-degrees", "3"],
    ] {
        let arr = fixture("three_planes.arr");
        let args: Vec<&str> = args
            .into_iter()
            .map(|a| if a == "ARR" { arr.as_str() } else { a })
            .collect();
        assert_eq!(invoke(&args).stdout, invoke(&args).stdout);
    }
}

use multisupp_core::{LatticePointSet, MultiClass, RankFunction, RationalMatrix, SubspaceArrangement};
use std::fs;
use std::path::{Path, PathBuf};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Fixture text without comment and blank lines, which the printers omit.
fn canonical(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

fn reprint(path: &Path, text: &str) -> String {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or_default();
    match ext {
        "chowclass" => text.parse::<MultiClass>().unwrap().to_string(),
        "rankfn" => text.parse::<RankFunction>().unwrap().to_string(),
        "points" => text.parse::<LatticePointSet>().unwrap().to_string(),
        "arr" => text.parse::<SubspaceArrangement>().unwrap().to_string(),
        "matrix" => text.parse::<RationalMatrix>().unwrap().to_string(),
        other => panic!("unknown fixture type `{other}` at {}", path.display()),
    }
}

#[test]
fn every_fixture_round_trips() {
    let mut seen = 0;
    for entry in fs::read_dir(fixture_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(reprint(&path, &text), canonical(&text), "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 5);
}

#[test]
fn vamos_fixture_matches_builtin() {
    let text = fs::read_to_string(fixture_dir().join("vamos.rankfn")).unwrap();
    assert_eq!(text.parse::<RankFunction>().unwrap(), RankFunction::vamos());
}

#[test]
fn worked_example_fixtures_agree() {
    let class: MultiClass = fs::read_to_string(fixture_dir().join("worked_example.chowclass"))
        .unwrap()
        .parse()
        .unwrap();
    let points: LatticePointSet = fs::read_to_string(fixture_dir().join("worked_example.points"))
        .unwrap()
        .parse()
        .unwrap();
    let f: RankFunction = fs::read_to_string(fixture_dir().join("worked_example.rankfn"))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(class.dimension_form(), points);
    assert_eq!(multisupp_core::polymatroid::base_polytope_points(&f).unwrap(), points);
    assert_eq!(multisupp_core::polymatroid::u_profile(&points).unwrap().u, f);
}

use std::io::Write;
use std::path::PathBuf;

use dpsimplex::engine::{solve, PivotRule, SolveStatus, SolverOptions};
use dpsimplex::generators::{klee_minty, random_lp, RandomLpSpec};
use dpsimplex::model::to_standard_form;
use dpsimplex::mps_io::{parse_mps, read_mps_file, standard_form_to_general, write_mps};

fn data(suite: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(suite)
}

fn manifest(suite: &str) -> Vec<serde_json::Value> {
    let text = std::fs::read_to_string(data(suite).join("manifest.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn netlib_sizes_match_manifest() {
    for entry in manifest("netlib") {
        let name = entry["name"].as_str().unwrap();
        let g = read_mps_file(data("netlib").join(format!("{}.mps", name))).unwrap();
        assert_eq!(g.rows.len() as u64, entry["rows"].as_u64().unwrap(), "{}", name);
        assert_eq!(g.columns.len() as u64, entry["cols"].as_u64().unwrap(), "{}", name);
        assert_eq!(g.coefficients.len() as u64, entry["nnz"].as_u64().unwrap(), "{}", name);
    }
}

#[test]
fn afiro_optimum_under_both_rules() {
    let g = read_mps_file(data("netlib").join("AFIRO.mps")).unwrap();
    let (lp, map) = to_standard_form(&g).unwrap();
    for rule in [PivotRule::Dantzig, PivotRule::DoublePivot] {
        let r = solve(&lp, &SolverOptions::with_rule(rule)).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        let x = map.recover(&r.x);
        assert!((g.objective_value(&x) + 464.75314286).abs() < 1e-6);
        assert!(g.max_violation(&x) < 1e-9);
    }
}

#[test]
fn gzip_fixture_reads_like_plain() {
    let path = data("netlib").join("SC50B.mps");
    let plain = std::fs::read(&path).unwrap();
    let dir = std::env::temp_dir().join(format!("dpsimplex-gz-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let gz = dir.join("SC50B.mps.gz");
    let mut enc = flate2::write::GzEncoder::new(std::fs::File::create(&gz).unwrap(), flate2::Compression::default());
    enc.write_all(&plain).unwrap();
    enc.finish().unwrap();
    let a = read_mps_file(&path).unwrap();
    let b = read_mps_file(&gz).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(a, b);
}

#[test]
fn cycling_fixtures_reach_manifest_optimum() {
    for entry in manifest("cycling") {
        let name = entry["name"].as_str().unwrap();
        let g = read_mps_file(data("cycling").join(format!("{}.mps", name))).unwrap();
        let (lp, _) = to_standard_form(&g).unwrap();
        let r = solve(&lp, &SolverOptions::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal, "{}", name);
        assert!((r.objective - entry["optimum"].as_f64().unwrap()).abs() < 1e-9, "{}", name);
    }
}

#[test]
fn generated_instances_survive_mps_round_trip() {
    let mut lps = vec![random_lp(RandomLpSpec { m: 15, seed: 3 }).unwrap()];
    for v in 1..=3 {
        lps.push(klee_minty(v, 6).unwrap().lp);
    }
    for lp in lps {
        let text = write_mps(&standard_form_to_general(&lp)).unwrap();
        let (back, _) = to_standard_form(&parse_mps(&text).unwrap()).unwrap();
        assert_eq!(back.a().triplets().collect::<Vec<_>>(), lp.a().triplets().collect::<Vec<_>>());
        assert_eq!(back.b(), lp.b());
        assert_eq!(back.c(), lp.c());
        let r1 = solve(&lp, &SolverOptions::default()).unwrap();
        let r2 = solve(&back, &SolverOptions::default()).unwrap();
        assert_eq!(r1.status, r2.status);
        assert_eq!(r1.iterations, r2.iterations);
    }
}

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(name)
}

fn tripart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripart"))
        .args(args)
        .env_remove("TRIPART_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn annulus_tripartition_json() {
    let path = data("annulus.bnd");
    let o = tripart(&[
        "tripartition",
        path.to_str().unwrap(),
        "--format",
        "boundary",
        "--json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    let p1 = &v["p=1"];
    assert_eq!(p1["tree"].as_array().unwrap().len(), 15);
    assert_eq!(p1["cotree"].as_array().unwrap().len(), 8);
    assert_eq!(p1["leftover"].as_array().unwrap().len(), 1);
    // external ids: edges are 16..=39
    for part in ["tree", "cotree", "leftover"] {
        for id in p1[part].as_array().unwrap() {
            assert!((16..40).contains(&id.as_u64().unwrap()));
        }
    }
    assert_eq!(v["augmentation"]["empty"], "cotree");
}

#[test]
fn point_betti_is_zero() {
    let path = data("point.smp");
    let o = tripart(&["betti", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "augmentation: 0\np=0: 0\n");
    let o = tripart(&["betti", path.to_str().unwrap(), "--output", "json"]);
    let v = json(&o);
    assert!(v.as_object().unwrap().values().all(|b| b == 0));
}

#[test]
fn diagram_text_and_dimension_filter() {
    let path = data("triangle_graph.smp");
    let o = tripart(&["diagram", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "-1 empty 0\n0 1 3\n0 2 4\n1 5 inf\n");
    let o = tripart(&["diagram", path.to_str().unwrap(), "--dim", "1"]);
    assert_eq!(stdout(&o), "1 5 inf\n");
    let v = json(&tripart(&["diagram", path.to_str().unwrap(), "--json"]));
    assert_eq!(v["augmentation"][0]["death"], 0);
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
}

#[test]
fn bases_dump() {
    let path = data("triangle_graph.smp");
    let o = tripart(&["bases", path.to_str().unwrap(), "--dim", "1"]);
    assert_eq!(
        stdout(&o),
        "3 chain: 3\n4 chain: 4\n5 cycle: 3 4 5\n3 cocycle: 3\n4 cocycle: 4\n5 cocycle: 5\n"
    );
    let v = json(&tripart(&["bases", path.to_str().unwrap(), "--json"]));
    assert_eq!(
        v["p=1"]["homology"][2]["members"],
        serde_json::json!([3, 4, 5])
    );
    assert_eq!(v["augmentation"]["homology"][0]["kind"], "cycle");
    assert_eq!(v["augmentation"]["cohomology"][0]["kind"], "cochain");
}

#[test]
fn completion_flag() {
    let path = data("hollow_tetrahedron.smp");
    let o = tripart(&["betti", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = tripart(&["betti", path.to_str().unwrap(), "--complete"]);
    assert_eq!(stdout(&o), "augmentation: 0\np=0: 0\np=1: 0\np=2: 1\n");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.bnd");
    std::fs::write(&bad, "0 :\n1 : 0 5\n").unwrap();
    let o = tripart(&["tripartition", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let unknown = dir.path().join("complex.txt");
    std::fs::write(&unknown, "0\n").unwrap();
    assert_eq!(
        tripart(&["betti", unknown.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let o = tripart(&["betti", unknown.to_str().unwrap(), "--format", "simplicial"]);
    assert!(o.status.success());

    let missing = dir.path().join("missing.smp");
    assert_eq!(
        tripart(&["betti", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn matroid_reports() {
    let path = data("triangle_graph.smp");
    let o = tripart(&["matroid", path.to_str().unwrap(), "--dim", "1"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "1 tree PASS rank 2 members 7 (downward closed)\n\
         1 cotree PASS rank 0 members 1 (downward closed)\n\
         1 leftover PASS rank 1 members 4 (downward closed)\n"
    );
    let v = json(&tripart(&[
        "matroid",
        path.to_str().unwrap(),
        "--family",
        "leftover",
        "--json",
    ]));
    assert_eq!(v["p=1"]["leftover"]["rank"], 1);
    assert_eq!(v["closure"], "downward");

    let annulus = data("annulus.bnd");
    let o = tripart(&[
        "matroid",
        annulus.to_str().unwrap(),
        "--dim",
        "1",
        "--family",
        "tree",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap exceeded: 24 > 16"));
}

#[test]
fn verify_is_deterministic() {
    let a = tripart(&["verify", "--seed", "7", "--level", "quick"]);
    let b = tripart(&["verify", "--seed", "7", "--level", "quick"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("PASS    canonical-bases"));
    assert!(text.lines().last().unwrap().contains("0 failed"));

    let threaded = Command::new(env!("CARGO_BIN_EXE_tripart"))
        .args(["verify", "--seed", "7"])
        .env("TRIPART_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(threaded.stdout, a.stdout);

    let v = json(&tripart(&["verify", "--seed", "7", "--json"]));
    assert_eq!(v["pass"], true);
    let strict = tripart(&["verify", "--seed", "7", "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn outputs_are_stable() {
    for name in ["annulus.bnd", "wheel.bnd", "two_component.smp"] {
        let path = data(name);
        let mut args = vec!["bases", path.to_str().unwrap(), "--json"];
        if name.ends_with(".smp") {
            args.push("--complete");
        }
        let a = tripart(&args);
        let b = tripart(&args);
        assert!(a.status.success(), "{name}");
        assert_eq!(a.stdout, b.stdout);
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;
use vminor_cli::{exit, run};

const K4: &str = "simple 4\nab\nac\nad\nbc\nbd\ncd\n";
const PRISM: &str = "simple 6\nab\nbc\nca\nde\nef\nfd\nad\nbe\ncf\n";
const PETERSEN: &str = "simple 10\n01\n12\n23\n34\n40\n05\n16\n27\n38\n49\n57\n79\n96\n68\n85\n";
const WORKED_GRAPH: &str = "simple 5\nab\nac\nad\nbe\nce\n";

/// The 4-regular multigraph read off the word `adcbaebced`.
fn word_multigraph() -> String {
    let w: Vec<char> = "adcbaebced".chars().collect();
    let mut s = String::from("multi 5\n");
    for i in 0..w.len() {
        s.push_str(&format!("{} {}\n", w[i], w[(i + 1) % w.len()]));
    }
    s
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.path().join(name);
        fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_string_lossy().into_owned()
    }
}

fn vminor(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("vminor").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn read_dir_sorted(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            let body = fs::read(&p).unwrap();
            (PathBuf::from(p.file_name().unwrap()), body)
        })
        .collect();
    files.sort();
    files
}

#[test]
fn pipeline_on_k4_emits_verifiable_chain() {
    let d = Dir::new();
    let r = d.file("k4.txt", K4);
    let out = d.path("out");
    let (code, text, _) = vminor(&["--deterministic", "pipeline", &r, "--out", &out]);
    assert_eq!(code, exit::YES, "{text}");
    assert!(text.starts_with("expected YES\n"));
    assert!(text.contains("checked semi-ordered tour on 8 vertices"));
    let o = |n: &str| format!("{out}/{n}");
    assert_eq!(fs::read_to_string(o("expected.txt")).unwrap(), "YES\n");
    let bundle = fs::read_to_string(o("2-isosoet.bundle")).unwrap();
    assert!(bundle.starts_with("bundle isosoet\n"));
    assert!(bundle.contains("@k 8"));
    assert!(fs::read_to_string(o("isosoet-graph.txt")).unwrap().starts_with("multi 12"));

    assert_eq!(vminor(&["ham-verify", &o("cubic.txt"), &o("cycle.txt")]).0, exit::YES);
    assert_eq!(vminor(&["soet-verify", &o("isosoet-graph.txt"), &o("soet-tour.txt")]).0, exit::YES);
    let star = vminor(&["vm-verify", &o("starvm-graph.txt"), &o("starvm-target.txt"), &o("starvm-witness.txt")]);
    assert_eq!(star.0, exit::YES);
    let iso = vminor(&["vm-verify", &o("isovm-graph.txt"), &o("isovm-target.txt"), &o("isovm-witness.txt")]);
    assert_eq!(iso, (exit::YES, "VALID\n".into(), String::new()));
}

#[test]
fn pipeline_on_petersen_expects_no() {
    let d = Dir::new();
    let r = d.file("p.txt", PETERSEN);
    let out = d.path("out");
    let (code, text, _) = vminor(&["pipeline", &r, "--out", &out]);
    assert_eq!(code, exit::NO);
    assert!(text.starts_with("expected NO\n"));
    assert!(!Path::new(&out).join("cycle.txt").exists());
    assert_eq!(fs::read_to_string(format!("{out}/expected.txt")).unwrap(), "NO\n");
}

#[test]
fn soet_verify_on_worked_example() {
    let d = Dir::new();
    let f = d.file("f.txt", &word_multigraph());
    let yes = d.file("yes.txt", "abcdaebced\n");
    let no = d.file("no.txt", "a d c b a e b c e d\n");
    let (code, text, _) = vminor(&["soet-verify", &f, &yes, "a,b,c,d"]);
    assert_eq!((code, text.as_str()), (exit::YES, "YES\norder a b c d\n"));
    assert_eq!(vminor(&["soet-verify", &f, &no, "a,b,c,d"]).0, exit::NO);
    // without a subset argument or a subset line the call is a usage error
    assert_eq!(vminor(&["soet-verify", &f, &yes]).0, exit::USAGE);
}

#[test]
fn soet_solve_output_is_reverifiable() {
    let d = Dir::new();
    let f = d.file("f.txt", &word_multigraph());
    let out = d.path("cert");
    let (code, text, _) = vminor(&["soet-solve", &f, "4", "--out", &out]);
    assert_eq!(code, exit::YES, "{text}");
    let tour = format!("{out}/tour.txt");
    assert!(fs::read_to_string(&tour).unwrap().starts_with("# subset: "));
    assert_eq!(vminor(&["soet-verify", &f, &tour]).0, exit::YES);
    assert_eq!(vminor(&["soet-solve", &f, "9"]).0, exit::DATA);
}

#[test]
fn star_vertex_minors_of_worked_graph() {
    let d = Dir::new();
    let g = d.file("g.txt", WORKED_GRAPH);
    assert_eq!(vminor(&["vm-solve-star", &g, "5"]).0, exit::NO);
    let out = d.path("cert");
    let (code, text, _) = vminor(&["vm-solve-star", &g, "4", "--out", &out]);
    assert_eq!(code, exit::YES, "{text}");
    let verified = vminor(&["vm-verify", &g, &format!("{out}/target.txt"), &format!("{out}/witness.txt")]);
    assert_eq!(verified.0, exit::YES);
}

#[test]
fn vm_solve_and_verify() {
    let d = Dir::new();
    let g = d.file("g.txt", WORKED_GRAPH);
    let k3 = d.file("k3.txt", "simple 3\nxy\nyz\nxz\n");
    let p4 = d.file("p4.txt", "simple 4\nwx\nxy\nyz\n");
    let out = d.path("cert");
    assert_eq!(vminor(&["vm-solve", &g, &k3, "--out", &out]).0, exit::YES);
    let w = format!("{out}/witness.txt");
    assert_eq!(vminor(&["vm-verify", &g, &k3, &w]).0, exit::YES);
    // the same witness does not take the graph to a path
    assert_eq!(vminor(&["vm-verify", &g, &p4, &w]).0, exit::NO);
    let bad = d.file("bad.txt", "LC q\nISO a=x\n");
    let (code, _, err) = vminor(&["vm-verify", &g, &k3, &bad]);
    assert_eq!(code, exit::DATA);
    assert!(err.contains("step 0"), "{err}");
}

#[test]
fn small_commands() {
    let d = Dir::new();
    let w = d.file("w.txt", "a d c b a e b c e d\n");
    let worked = "simple 5\na b\na c\na d\nb e\nc e\n";
    assert_eq!(vminor(&["alternance", &w]), (exit::YES, worked.to_string(), String::new()));

    let r = d.file("k4.txt", K4);
    let (code, text, _) = vminor(&["expand", &r]);
    assert_eq!(code, exit::YES);
    assert!(text.starts_with("multi 12\n"));
    assert_eq!(text.lines().count(), 1 + 24);

    let f = d.file("f.txt", &word_multigraph());
    let (code, text, _) = vminor(&["euler", &f]);
    assert_eq!(code, exit::YES);
    assert!(text.starts_with("tour\n"));
    assert!(text.contains("# word: "));

    let star = d.file("s.txt", "simple 4\nab\nac\nad\n");
    let (code, text, _) = vminor(&["orbit", &star]);
    assert_eq!(code, exit::YES);
    assert!(text.starts_with("size 5\n"));
    assert_eq!(vminor(&["--limit", "2", "orbit", &star]).0, exit::UNKNOWN);

    let (code, text, _) = vminor(&["ham", &r]);
    assert_eq!((code, text.as_str()), (exit::YES, "YES\na b c d\n"));
}

#[test]
fn json_output() {
    let d = Dir::new();
    let r = d.file("k4.txt", K4);
    let (code, text, _) = vminor(&["--format", "json", "ham", &r]);
    assert_eq!(code, exit::YES);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["answer"], "YES");
    assert_eq!(v["cycle"], serde_json::json!(["a", "b", "c", "d"]));
}

#[test]
fn budget_exhaustion_is_unknown() {
    let d = Dir::new();
    let r = d.file("k4.txt", K4);
    let (code, text, _) = vminor(&["--budget", "2", "ham", &r]);
    assert_eq!(code, exit::UNKNOWN);
    assert!(text.starts_with("UNKNOWN"));
}

#[test]
fn errors_map_to_exit_codes() {
    let d = Dir::new();
    assert_eq!(vminor(&[]).0, exit::USAGE);
    assert_eq!(vminor(&["frobnicate"]).0, exit::USAGE);
    assert_eq!(vminor(&["ham", &d.path("absent.txt")]).0, exit::NO_INPUT);
    let dup = d.file("dup.txt", "simple 2\nab\nab\n");
    let (code, _, err) = vminor(&["orbit", &dup]);
    assert_eq!(code, exit::DATA);
    assert!(err.contains("line 3"), "{err}");
    assert_eq!(err.lines().count(), 1);
    let syntax = d.file("syn.txt", "simple x\n");
    assert_eq!(vminor(&["orbit", &syntax]).0, exit::DATA);
    let not_cubic = d.file("nc.txt", WORKED_GRAPH);
    assert_eq!(vminor(&["ham", &not_cubic]).0, exit::DATA);
    assert_eq!(vminor(&["--help"]).0, exit::YES);
}

#[test]
fn deterministic_output_is_independent_of_workers() {
    let d = Dir::new();
    let r = d.file("prism.txt", PRISM);
    let f = d.file("f.txt", &word_multigraph());
    let mut runs = Vec::new();
    for workers in ["1", "4"] {
        let out = d.path(&format!("w{workers}"));
        let pipe = vminor(&["--deterministic", "--workers", workers, "pipeline", &r, "--out", &out]);
        let soet = vminor(&["--deterministic", "--workers", workers, "soet-solve", &f, "3"]);
        runs.push((pipe, soet, read_dir_sorted(Path::new(&out))));
    }
    assert_eq!(runs[0].0 .0, exit::YES);
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn binary_exit_status_and_env_budget() {
    let d = Dir::new();
    let r = d.file("k4.txt", K4);
    let bin = env!("CARGO_BIN_EXE_vminor");
    let ok = Command::new(bin).args(["ham", &r]).output().unwrap();
    assert_eq!(ok.status.code(), Some(exit::YES));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "YES\na b c d\n");
    let starved = Command::new(bin).args(["ham", &r]).env("VMINOR_BUDGET", "1").output().unwrap();
    assert_eq!(starved.status.code(), Some(exit::UNKNOWN));
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const LEVELS_1_2: &str = include_str!("../../core/tests/data/k1_levels_1_2.txt");
const LEVEL_3: &str = include_str!("../../core/tests/data/k1_level3.txt");

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn local(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotcert"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn squeeze(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

#[test]
fn classify_prints_the_class() {
    let o = run(&["classify", p(&data("K1.txt")), "--max-level", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Trefoil\n");
    let o = run(&["classify", p(&data("K0.txt")), "--max-level", "4"]);
    assert_eq!(stdout(&o), "Unknot\n");
    let o = run(&["classify", p(&data("K1.m")), "--max-level", "4", "--verbose"]);
    assert!(stdout(&o).contains("Trefoil (right-handed)"));
}

#[test]
fn exit_statuses() {
    assert_eq!(
        run(&["diagram", p(&local("open.txt")), "--axis", "xy"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["classify", p(&local("missing.txt"))]).status.code(), Some(3));
    let o = run(&["certify", p(&data("K1.txt")), "--max-level", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pieces 3 and 7 overlap"));
    let o = run(&["push", p(&data("K0.txt")), "--vertex", "3", "--to", "10,-60,58"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn subdivide_reproduces_the_tables() {
    let o = run(&[
        "subdivide",
        p(&data("K1.txt")),
        "--levels",
        "2",
        "--scale",
        "2^29",
        "--all-levels",
    ]);
    assert_eq!(squeeze(&stdout(&o)), squeeze(LEVELS_1_2));
    let o = run(&[
        "subdivide",
        p(&data("K1.m")),
        "--levels",
        "3",
        "--scale",
        "2^29",
        "--annotate",
    ]);
    // The table leaves the last piece untagged; it is monotone in y and z.
    let ours = stdout(&o).replace("P[7]: Y, Z", "P[7]:");
    assert_eq!(squeeze(&ours), squeeze(LEVEL_3));
}

#[test]
fn subdivide_auto_scale_is_integral() {
    let o = run(&[
        "subdivide",
        p(&data("K0.txt")),
        "--levels",
        "4",
        "--scale",
        "auto",
        "--annotate",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("(*Subdivision 4 *)\n"));
    assert_eq!(text.matches("P[").count(), 16);
    assert!(!text.contains('/'));
    assert!(text.contains("{ 0, 4831838208,10737418240 }"));
}

#[test]
fn diagram_svgs_break_each_under_strand() {
    for (file, plane) in [("K1.txt", "yz"), ("K0.txt", "xy")] {
        let svg = scratch(&format!("{file}.{plane}.svg"));
        let o = run(&[
            "diagram",
            p(&data(file)),
            "--axis",
            plane,
            "--level",
            "4",
            "--svg",
            p(&svg),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("crossings 3\n"));
        let text = std::fs::read_to_string(&svg).unwrap();
        assert_eq!(text.matches("<polyline").count(), 3, "{file} {plane}");
        assert_eq!(text.matches("<circle").count(), 3);
    }
}

#[test]
fn certificates_are_byte_identical_and_check() {
    let (a, b) = (scratch("k1-a.rep"), scratch("k1-b.rep"));
    for out in [&a, &b] {
        let o = run(&["certify", p(&data("K1.txt")), "--max-level", "4", "-o", p(out)]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    let o = run(&["check", p(&data("K1.txt")), p(&a)]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "ok\n".into()));
    let o = run(&["check", p(&data("K0.txt")), p(&a)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enclosure_and_repair_agree() {
    let rep = scratch("k1-repair.rep");
    let o = run(&[
        "certify",
        p(&data("K1.txt")),
        "--max-level",
        "3",
        "--repair",
        "-o",
        p(&rep),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&rep).unwrap();
    let normals: Vec<&str> = text
        .lines()
        .find(|l| l.starts_with("normals "))
        .unwrap()
        .split_whitespace()
        .skip(1)
        .collect();
    let (l, r) = (normals[..3].join(","), normals[3..].join(","));
    let o = run(&[
        "enclosure",
        p(&data("K1.txt")),
        "--piece",
        "7",
        "--normal-l",
        &l,
        "--normal-r",
        &r,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = stdout(&o);
    assert!(report.contains("plane-counts 2 2\n"));
    assert!(report.ends_with("status clear\n"));
}

#[test]
fn bisect_with_a_coarse_tolerance() {
    let o = run(&[
        "bisect",
        p(&data("K0.txt")),
        p(&data("K1.txt")),
        "--tol",
        "1/4",
        "--max-level",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("format transition 1\nlo 1/4\nhi 1/2\nclass-lo unknot\nclass-hi trefoil-right\n"));
    let o = run(&["bisect", p(&data("K0.txt")), p(&data("K0.txt")), "--tol", "1/4"]);
    assert_eq!(o.status.code(), Some(3));
}

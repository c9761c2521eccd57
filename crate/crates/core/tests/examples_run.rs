//! Runs each example binary that `cargo test` builds alongside the tests.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: [&str; 6] = [
    "line_graphs",
    "spanning_trees",
    "tree_arrays",
    "debruijn_codec",
    "critical_groups",
    "class_cycles",
];

fn example_path(name: &str) -> PathBuf {
    // target/<profile>/deps/<this test> -> target/<profile>/examples/<name>
    let exe = std::env::current_exe().unwrap();
    let dir = exe.parent().unwrap().parent().unwrap().join("examples");
    dir.join(format!("{name}{}", std::env::consts::EXE_SUFFIX))
}

#[test]
fn examples_run_cleanly() {
    for name in EXAMPLES {
        let path = example_path(name);
        assert!(path.exists(), "{} was not built", path.display());
        let out = Command::new(&path).output().unwrap();
        assert!(
            out.status.success(),
            "{name} failed:\n{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}

#[test]
fn example_output_spot_checks() {
    let run = |name| {
        String::from_utf8(Command::new(example_path(name)).output().unwrap().stdout).unwrap()
    };
    assert!(run("debruijn_codec").contains("00010111 -> 0011"));
    assert!(run("class_cycles").contains("non-cycle rows divisible by 3: true"));
    assert!(run("critical_groups").contains("κ(Kautz_2(2)) = 72"));
    assert!(!run("line_graphs").contains("false"));
}

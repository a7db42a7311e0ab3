//! Golden-file regression tests: every pinned fixture must reproduce its
//! recorded stdout byte for byte, twice in a row (the determinism
//! contract), with the recorded exit code.

use std::path::Path;
use std::process::Command;

fn run_fixture(dir: &Path) -> (Vec<u8>, Vec<u8>, i32) {
    let args: Vec<String> = std::fs::read_to_string(dir.join("cmd"))
        .expect("cmd file")
        .lines()
        .map(|s| s.to_string())
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_degenerata"))
        .args(&args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (
        out.stdout,
        out.stderr,
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn fixtures_reproduce_their_goldens() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/paper");
    let mut checked = 0;
    let mut entries: Vec<_> = std::fs::read_dir(&root)
        .expect("fixtures directory")
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_dir())
        .collect();
    entries.sort();
    for dir in entries {
        let name = dir.file_name().unwrap().to_string_lossy().to_string();
        let expected = std::fs::read(dir.join("expected_stdout")).expect("expected_stdout");
        let expected_exit: i32 = std::fs::read_to_string(dir.join("expected_exit"))
            .map(|s| s.trim().parse().expect("exit code"))
            .unwrap_or(0);

        let (stdout, stderr, code) = run_fixture(&dir);
        assert_eq!(code, expected_exit, "{name}: exit code");
        assert_eq!(
            stdout,
            expected,
            "{name}: stdout drifted\nexpected: {}\ngot:      {}",
            String::from_utf8_lossy(&expected),
            String::from_utf8_lossy(&stdout)
        );
        if let Ok(fragment) = std::fs::read_to_string(dir.join("expected_stderr")) {
            let text = String::from_utf8_lossy(&stderr);
            assert!(
                text.contains(fragment.trim()),
                "{name}: stderr {text:?} lacks {fragment:?}"
            );
        }

        // byte-identical on a second run
        let (second, _, code2) = run_fixture(&dir);
        assert_eq!(code2, expected_exit, "{name}: second exit code");
        assert_eq!(second, stdout, "{name}: output is not deterministic");
        checked += 1;
    }
    assert!(checked >= 25, "fixture sweep looks incomplete: {checked}");
}

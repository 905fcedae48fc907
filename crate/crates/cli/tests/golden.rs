//! Byte-exact snapshots of the human-facing outputs.
//!
//! The snapshotted formats print certified values rounded down at coarse
//! precision, so they are stable far beyond floating-point noise.  To
//! regenerate after an intentional output change:
//!
//! ```text
//! UPDATE_GOLDEN=1 cargo test -p yamabe-cli --test golden
//! ```

use std::path::PathBuf;
use std::process::Command;

const CASES: &[(&str, &[&str])] = &[
    ("table1.txt", &["table", "table1"]),
    ("table1.csv", &["table", "table1", "--format", "csv"]),
    ("tn.txt", &["table", "tn"]),
    ("sigma.txt", &["table", "sigma"]),
    ("bound_v3_w2.txt", &["bound", "--v", "3", "--w", "2"]),
    (
        "squeeze_v2_c1_r2.txt",
        &["squeeze", "--v", "2", "--c", "1", "--r", "2"],
    ),
];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in CASES {
        let out = Command::new(env!("CARGO_BIN_EXE_yamabe"))
            .args(*args)
            .output()
            .expect("binary launches");
        assert!(
            out.status.success(),
            "{args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let actual = String::from_utf8(out.stdout).expect("stdout is UTF-8");
        let path = golden_path(name);
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).expect("golden dir");
            std::fs::write(&path, &actual).expect("write golden file");
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| {
            panic!(
                "cannot read {}: {e}; run with UPDATE_GOLDEN=1 to create it",
                path.display()
            )
        });
        assert_eq!(
            actual, expected,
            "{name}: output differs from golden file; \
             run with UPDATE_GOLDEN=1 if the change is intentional"
        );
    }
}

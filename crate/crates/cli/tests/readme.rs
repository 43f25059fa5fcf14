use std::path::Path;
use std::process::Command;

/// `$ mrg ...  # exit N` lines from the README's example block.
fn examples() -> Vec<(Vec<String>, i32)> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let text = std::fs::read_to_string(root.join("README.md")).unwrap();
    text.lines()
        .filter_map(|l| l.strip_prefix("$ mrg "))
        .map(|l| {
            let (cmd, code) = l.rsplit_once("# exit").expect("exit code annotation");
            (shlex::split(cmd).expect("balanced quotes"), code.trim().parse().unwrap())
        })
        .collect()
}

#[test]
fn readme_examples_run() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let all = examples();
    assert!(all.len() >= 10);
    for (args, code) in all {
        let out = Command::new(env!("CARGO_BIN_EXE_mrg")).current_dir(&root).args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty(), "{args:?}");
    }
}

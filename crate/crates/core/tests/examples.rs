use std::path::PathBuf;
use std::process::Command;

/// A plain `cargo test` builds the examples next to the test binaries; a
/// filtered run may not, so build them on demand.
fn example(name: &str) -> PathBuf {
    let deps = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let path = deps.parent().unwrap().join("examples").join(name);
    if !path.exists() {
        let profile = deps
            .parent()
            .unwrap()
            .file_name()
            .unwrap()
            .to_str()
            .unwrap()
            .to_string();
        let mut cmd = Command::new(env!("CARGO"));
        cmd.args(["build", "--examples", "-p", "zariski"]);
        if profile == "release" {
            cmd.arg("--release");
        }
        assert!(cmd.status().unwrap().success());
    }
    path
}

#[test]
fn every_example_runs() {
    let runs: [(&str, &[&str], &str); 9] = [
        ("ring_ideals", &[], "Min(R)"),
        ("submodule_lattice", &[], "composition length 3"),
        ("prime_spectrum", &[], "Spec(M) has 6 primes"),
        (
            "zariski_graph",
            &[],
            "Z_12, T = {<2>, <3>}: <2>-<3> <3>-<4>",
        ),
        ("annihilating_graph", &[], "AG*"),
        ("graph_metrics", &[], "60"),
        ("localization_retract", &[], "retract true"),
        ("export_dot", &[], "graph G {"),
        ("theorem_sweep", &["zn:2..12", "T3.4,T4.4"], "\"failed\":0"),
    ];
    for (name, args, needle) in runs {
        let path = example(name);
        assert!(path.exists(), "{} was not built", path.display());
        let out = Command::new(&path).args(args).output().unwrap();
        assert!(
            out.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(
            text.contains(needle),
            "{name} output lacks {needle:?}:\n{text}"
        );
    }
}

use std::path::Path;
use std::process::Command;

fn lab(args: &[&str], dir: &Path) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mitsui-lab"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn pit_csv_and_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    write(
        d.path(),
        "pit.toml",
        "schedule = [100.0, 1000.0]\ntolerance = 0.5\n[field]\nreference = \"rationals\"\n",
    );
    let (code, out, _) = lab(&["pit", "--config", "pit.toml", "--check"], d.path());
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "N,empirical_sum,predicted_main,predicted_secondary,abs_error,rel_error,wall_time_ms"
    );
    assert!(lines
        .next()
        .unwrap()
        .starts_with("100,83.7283903991,100,0,"));

    write(
        d.path(),
        "strict.toml",
        "schedule = [100.0]\ntolerance = 0.01\n[field]\nreference = \"rationals\"\n",
    );
    assert_eq!(
        lab(&["pit", "--config", "strict.toml", "--check"], d.path()).0,
        3
    );
    assert_eq!(lab(&["pit", "--config", "strict.toml"], d.path()).0, 0);

    write(d.path(), "bad.toml", "schedule = [10.0, 5.0]\n");
    assert_eq!(lab(&["pit", "--config", "bad.toml"], d.path()).0, 2);
    assert_eq!(lab(&["pit", "--config", "missing.toml"], d.path()).0, 2);
    write(
        d.path(),
        "reducible.toml",
        "schedule = [10.0]\n[field]\npolynomial = [-4, 0, 1]\n",
    );
    assert_eq!(lab(&["pit", "--config", "reducible.toml"], d.path()).0, 2);
}

#[test]
fn json_output_to_file() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "m.toml", "kind = \"mitsui\"\nschedule = [1e3]\n[field]\nreference = \"gaussian\"\n[region]\nkind = \"ball\"\ncenter = [0.0, 0.0]\nradius = 1.0\n");
    let (code, out, _) = lab(
        &[
            "mitsui", "--config", "m.toml", "--out", "r.json", "--format", "json",
        ],
        d.path(),
    );
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let r = mitsui_core::harness::Report::from_json(
        &std::fs::read_to_string(d.path().join("r.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(r.kind, "mitsui");
    assert_eq!(r.rows[0].predicted_main, 4000.0);
    // a mismatched kind is a config error
    assert_eq!(lab(&["pit", "--config", "m.toml"], d.path()).0, 2);
}

#[test]
fn table_subcommands() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "g.toml", "q = 3\nbound = 20\n[field]\nreference = \"gaussian\"\n[region]\nkind = \"ball\"\ncenter = [0.0, 0.0]\nradius = 4.0\n");
    let (code, out, _) = lab(&["sieve-primes", "--config", "g.toml"], d.path());
    assert_eq!(code, 0);
    assert!(out.starts_with("norm,c0,c1,residue_class,log_weight\n2,"));
    let (code, out, _) = lab(
        &["enumerate-prime-elements", "--config", "g.toml"],
        d.path(),
    );
    assert_eq!(code, 0);
    assert!(out.starts_with("norm,c0,c1,residue_class,log_weight\n"));
    let (code, out, _) = lab(&["characters", "--config", "g.toml", "--check"], d.path());
    assert_eq!(code, 0);
    assert!(out.starts_with("character,element,value_re,value_im\n"));
    let (code, out, _) = lab(&["field-info", "--config", "g.toml"], d.path());
    assert_eq!(code, 0);
    assert!(out.contains("torus_volume,1.57079632679"));

    write(
        d.path(),
        "s.toml",
        "[field]\nreference = \"sqrt2\"\n[sectors]\nx = 20\ny = 4\n",
    );
    let (code, out, _) = lab(&["sectors", "--config", "s.toml", "--check"], d.path());
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1 + 4 * 16);

    write(d.path(), "f.toml", "[fourier]\ndimension = 1\nbandwidth = 10\nmargin = 20.0\n[fourier.set]\nkind = \"box\"\ncenter = [0.5]\nhalf_widths = [0.1]\ncomponent = 0\n");
    let (code, _, _) = lab(
        &["fourier-approx", "--config", "f.toml", "--out", "f.csv"],
        d.path(),
    );
    assert_eq!(code, 0);
    assert_eq!(
        std::fs::read_to_string(d.path().join("f.csv"))
            .unwrap()
            .lines()
            .count(),
        1 + 21
    );
    assert!(d.path().join("f.grid.csv").exists());
}

#[test]
fn bounded_basis_text() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "m.txt", "1000 999\n0 1\n");
    let (code, out, _) = lab(&["bounded-basis", "--input", "m.txt", "--check"], d.path());
    assert_eq!(code, 0);
    let m = mitsui_core::harness::tools::parse_matrix(&out).unwrap();
    assert!(m.max_entry() <= 1000);
    write(d.path(), "bad.txt", "1 2\n3\n");
    assert_eq!(lab(&["bounded-basis", "--input", "bad.txt"], d.path()).0, 2);
}

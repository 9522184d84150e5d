//! Separate binary: sets a process-wide environment variable.

use tempfile::TempDir;

fn cli(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("oaparity").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = oaparity_cli::run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn orbit_memory_budget_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("d9.oa");
    std::fs::write(&p, cli(&["construct", "desarguesian", "--q", "9"]).1).unwrap();
    let path = p.to_str().unwrap();

    std::env::set_var(oaparity_cli::ORBIT_MEMORY_ENV, "1");
    let (code, _, err) = cli(&["class", path]);
    assert_eq!(code, 1);
    assert!(err.contains("memory budget"), "{err}");

    std::env::set_var(oaparity_cli::ORBIT_MEMORY_ENV, "lots");
    assert_eq!(cli(&["class", path]).0, 2);

    std::env::set_var(oaparity_cli::ORBIT_MEMORY_ENV, "512");
    let (code, out, _) = cli(&["class", path]);
    assert_eq!(code, 0);
    assert!(out.contains("class size: 1290240"), "{out}");
}

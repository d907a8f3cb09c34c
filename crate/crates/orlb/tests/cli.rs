use std::path::Path;
use std::process::{Command, Output};

fn orlb(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orlb")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_chain(dir: &Path, n: usize) {
    let mut text = format!("{} {}\n", n, n - 1);
    for v in 1..n {
        text += &format!("{} {}\n", v - 1, v);
    }
    std::fs::write(dir.join("chain.txt"), text).unwrap();
}

#[test]
fn verify_chain_of_ten() {
    let dir = tempfile::tempdir().unwrap();
    write_chain(dir.path(), 10);
    assert!(orlb(&["encode", "chain.txt", "--out", "chain.orlb"], dir.path()).status.success());
    let out = orlb(&["verify", "chain.txt", "chain.orlb"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "45/45 pairs match");
    let q = orlb(&["query", "chain.orlb", "7", "2"], dir.path());
    assert!(stdout(&q).starts_with("v<u\n"));
}

#[test]
fn verify_fails_on_the_wrong_input() {
    let dir = tempfile::tempdir().unwrap();
    write_chain(dir.path(), 6);
    assert!(orlb(&["encode", "chain.txt", "--profile", "fast", "--out", "c.orlb"], dir.path()).status.success());
    std::fs::write(dir.path().join("anti.txt"), "6 0\n").unwrap();
    let out = orlb(&["verify", "anti.txt", "c.orlb"], dir.path());
    assert!(!out.status.success());
    assert_eq!(stdout(&out).trim(), "0/15 pairs match");
}

#[test]
fn antichain_queries_are_incomparable() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.txt"), "# nothing\n5 0\n").unwrap();
    assert!(orlb(&["encode", "a.txt", "--dict", "compressed", "--out", "a.orlb"], dir.path()).status.success());
    let q = orlb(&["query", "a.orlb", "0", "4"], dir.path());
    assert!(stdout(&q).starts_with("incomparable\n"));
}

#[test]
fn reach_round_trip_and_cycle_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.txt"), "4 4\n0 1\n1 2\n2 0\n2 3\n").unwrap();
    let plain = orlb(&["encode", "c.txt", "--out", "x.orlb"], dir.path());
    assert!(!plain.status.success());
    assert!(String::from_utf8_lossy(&plain.stderr).contains("cycle"));
    assert!(orlb(&["encode", "c.txt", "--profile", "reach", "--out", "r.orlb"], dir.path()).status.success());
    assert_eq!(stdout(&orlb(&["verify", "c.txt", "r.orlb"], dir.path())).trim(), "12/12 pairs match");
    assert!(stdout(&orlb(&["query", "r.orlb", "1", "0"], dir.path())).starts_with("reaches:yes"));
    assert!(stdout(&orlb(&["query", "r.orlb", "3", "0"], dir.path())).starts_with("reaches:no"));
}

#[test]
fn bench_emits_one_row_per_instance() {
    let dir = tempfile::tempdir().unwrap();
    let out = orlb(&["bench", "--model", "layered", "--n", "50..300", "--queries", "500"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("n,model,seed,profile,s,max_label_bits,mean_label_bits,global_bits,"));
    // six sizes, one seed, two profiles
    assert_eq!(lines.len(), 1 + 12);
    assert!(lines[1].starts_with("50,layered,0,tradeoff,"));
}

#[test]
fn gen_then_encode() {
    let dir = tempfile::tempdir().unwrap();
    let g = orlb(&["gen", "--model", "layered", "--n", "40", "--seed", "3", "--out", "g.txt"], dir.path());
    assert!(g.status.success());
    assert!(orlb(&["encode", "g.txt", "--s", "5", "--out", "g.orlb"], dir.path()).status.success());
    let v = orlb(&["verify", "g.txt", "g.orlb"], dir.path());
    assert_eq!(stdout(&v).trim(), "780/780 pairs match");
    let r = orlb(&["report", "g.orlb"], dir.path());
    assert!(r.status.success());
    assert!(stdout(&r).contains("s: 5\n"));
}

#[test]
fn universal_check_small() {
    let dir = tempfile::tempdir().unwrap();
    let out = orlb(&["universal-check", "--n", "3", "--dump", "u.txt"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("posets: 19\n"));
    assert!(text.contains("injective: true\n") && text.contains("embeds: true\n"));
    assert!(dir.path().join("u.txt").exists());
    assert!(!orlb(&["universal-check", "--n", "7"], dir.path()).status.success());
}

#[test]
fn malformed_inputs_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "3 1\n0 9\n").unwrap();
    let out = orlb(&["encode", "bad.txt", "--out", "b.orlb"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    std::fs::write(dir.path().join("junk.orlb"), "not labels").unwrap();
    assert!(!orlb(&["query", "junk.orlb", "0", "1"], dir.path()).status.success());
    assert!(!orlb(&["encode", "--bogus"], dir.path()).status.success());
}

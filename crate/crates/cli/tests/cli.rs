use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn kterm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kterm"))
        .args(args)
        .output()
        .expect("run kterm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = kterm(args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn code(args: &[&str]) -> i32 {
    kterm(args).status.code().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn seq_last_terms() {
    let out = ok(&["seq", "-k", "4", "-a", "18,10,13,3", "-m", "8"]);
    assert_eq!(out.lines().last(), Some("2141252"));
    assert_eq!(out.lines().count(), 9);
    assert_eq!(ok(&["seq", "-k", "2", "-a", "1,1", "-m", "7"]), "0\n1\n1\n2\n3\n5\n8\n13\n");
    let out = ok(&["seq", "-k", "4", "-a", "18,4,13,3", "-m", "8"]);
    assert_eq!(out.lines().last(), Some("1996592"));
}

#[test]
fn seq_rejects_bad_specs() {
    assert_eq!(code(&["seq", "-k", "3", "-a", "1,1", "-m", "5"]), 3);
    assert_eq!(code(&["seq", "-a", "1,0", "-m", "5"]), 3);
    assert_eq!(code(&["seq", "-a", "1,x", "-m", "5"]), 3);
    assert_eq!(code(&["seq", "-m", "5"]), 2);
    assert_eq!(code(&["seq", "-a", "1,1"]), 2);
}

#[test]
fn identities_machine() {
    let out = ok(&["--machine", "identities", "-a", "1,1", "-n", "5"]);
    assert!(out.contains("cassini_lhs=-1\ncassini_rhs=-1\ncassini_holds=true\n"), "{out}");
    assert!(out.contains("det_holds=true\n"));
    assert!(out.contains("structure_holds=true\n"));
    let out = ok(&["--machine", "identities", "-a", "4,3", "-n", "3"]);
    assert!(out.contains("cassini_lhs=-9\ncassini_rhs=-9\n"), "{out}");
    let out = ok(&["--machine", "identities", "-a", "2,1,3", "-n", "5"]);
    assert!(out.contains("cassini_rhs=27\ncassini_holds=true\n"), "{out}");
}

#[test]
fn encrypt_golden() {
    let out = ok(&["--machine", "encrypt", "-a", "18,10,13,3", "-L", "4", "JOHNxHASxAxDOG"]);
    assert_eq!(out, "s=6\nciphertext=EESIPFMDENBNMCMHNNGKKBDG\npadding=2\n");
    let out = ok(&["--machine", "encrypt", "-a", "18,10,13,3", "-L", "4", "JOHN"]);
    assert_eq!(out, "s=6\nciphertext=EESIPF\npadding=0\n");
    let out = ok(&["encrypt", "-a", "18,10,13,3", "JOHNxHASxAxDOG"]);
    assert_eq!(out, "key: 18,10,13,3,6\nciphertext: EESIPFMDENBNMCMHNNGKKBDG\npadding: 2\n");
}

#[test]
fn encrypt_errors() {
    assert_eq!(code(&["encrypt", "-a", "18,10,13,3", ""]), 2);
    assert_eq!(code(&["encrypt", "-a", "18,10,13,3", "john"]), 3);
    assert_eq!(code(&["encrypt", "-a", "1,-1", "JOHN"]), 3);
}

#[test]
fn decrypt_golden() {
    let out = ok(&["--machine", "decrypt", "-a", "18,10,13,3", "-s", "6", "EESIPFMDENBNMCMHNNGKKBDG"]);
    assert_eq!(out, "plaintext=JOHNxHASxAxDOGxx\n");
    assert_eq!(code(&["decrypt", "-a", "18,10,13,3", "-s", "6", "EESIPFMDENBNMCMHNNGKKBD"]), 4);
    assert_eq!(code(&["decrypt", "-a", "18,10,13,3", "EESIPF"]), 2);
}

#[test]
fn key_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k.key");
    let out = ok(&["--machine", "encrypt", "-a", "18,10,13,3", "--key-out", p(&key), "JOHNxHASxAxDOG"]);
    let cipher = out.lines().nth(1).unwrap().strip_prefix("ciphertext=").unwrap().to_string();
    assert_eq!(
        fs::read_to_string(&key).unwrap(),
        "4\n18 10 13 3\n6\n4\nABCDEFGHIJKLMNOPQRSTUVWXYZx\n"
    );
    assert_eq!(ok(&["decrypt", "--key", p(&key), &cipher]), "JOHNxHASxAxDOGxx\n");
    // encrypting under the key file keeps its s
    let out = ok(&["--machine", "encrypt", "--key", p(&key), "JOHN"]);
    assert_eq!(out, "s=6\nciphertext=EESIPF\npadding=0\n");
}

#[test]
fn custom_alphabet_round_trip() {
    let out = ok(&["--machine", "encrypt", "-a", "2,3,1", "-L", "3", "--alphabet", "abcdefghij_", "hi_jab"]);
    let mut lines = out.lines();
    let s = lines.next().unwrap().strip_prefix("s=").unwrap().to_string();
    let cipher = lines.next().unwrap().strip_prefix("ciphertext=").unwrap().to_string();
    let out = ok(&["--machine", "decrypt", "-a", "2,3,1", "-s", &s, "-L", "3", "--alphabet", "abcdefghij_", &cipher]);
    assert_eq!(out, "plaintext=hi_jab\n");
}

#[test]
fn block_code_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.txt");
    let msg = dir.path().join("e.msg");
    let bad = dir.path().join("bad.msg");
    let fixed = dir.path().join("fixed.msg");

    fs::write(&m, "2 2\n1 0\n0 1\n").unwrap();
    ok(&["encode", "-a", "1,1", "-n", "2", "--matrix", p(&m), "--out", p(&msg)]);
    assert_eq!(fs::read_to_string(&msg).unwrap(), "2 2\n1 1\n1\n2 2\n2 1\n1 1\n");

    fs::write(&m, "2 2\n1 2\n3 4\n").unwrap();
    let out = ok(&["--machine", "encode", "-a", "1,1", "-n", "2", "--matrix", p(&m), "--out", p(&msg)]);
    assert_eq!(out, "det_m=-2\n");
    assert_eq!(ok(&["decode", "--msg", p(&msg)]), "2 2\n1 2\n3 4\n");

    let out = ok(&["--machine", "inject", "--msg", p(&msg), "--at", "1,1,+2", "--out", p(&bad)]);
    assert_eq!(out, "corrupted=(1,1) delta=+2\n");
    assert_eq!(code(&["decode", "--msg", p(&bad)]), 6);
    assert_eq!(ok(&["decode", "--msg", p(&bad), "--force"]), "2 2\n3 2\n1 4\n");

    let out = ok(&["correct", "--msg", p(&bad), "--out", p(&fixed)]);
    assert_eq!(out, "corrected (1,1)\n");
    assert_eq!(fs::read_to_string(&fixed).unwrap(), fs::read_to_string(&msg).unwrap());
    let out = ok(&["--machine", "correct", "--msg", p(&bad)]);
    assert_eq!(out, "status=corrected\npositions=(1,1)\nchecksum_repaired=false\n");
    assert_eq!(ok(&["--machine", "correct", "--msg", p(&msg)]), "status=intact\n");
}

#[test]
fn random_injection_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.txt");
    let msg = dir.path().join("e.msg");
    let a = dir.path().join("a.msg");
    let b = dir.path().join("b.msg");
    fs::write(&m, "3 3\n12 40 7\n3 91 55\n68 20 33\n").unwrap();
    ok(&["encode", "-a", "1,1,1", "-n", "12", "--matrix", p(&m), "--out", p(&msg)]);
    let first = ok(&["inject", "--msg", p(&msg), "--seed", "9", "--out", p(&a)]);
    let second = ok(&["inject", "--msg", p(&msg), "--seed", "9", "--out", p(&b)]);
    assert_eq!(first, second);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(first.lines().count(), 1);
    assert_eq!(code(&["decode", "--msg", p(&a)]), 6);
    let fixed = dir.path().join("fixed.msg");
    ok(&["correct", "--msg", p(&a), "--out", p(&fixed)]);
    assert_eq!(ok(&["decode", "--msg", p(&fixed)]), "3 3\n12 40 7\n3 91 55\n68 20 33\n");
}

#[test]
fn uncorrectable_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let msg = dir.path().join("e.msg");
    fs::write(&msg, "2 12\n1 1\n2935\n2 2\n7001 263\n4410 9129\n").unwrap();
    let o = kterm(&["--machine", "correct", "--msg", p(&msg), "--max-weight", "3"]);
    assert_eq!(o.status.code(), Some(5));
    assert_eq!(stdout(&o), "status=uncorrectable\n");
    assert_eq!(code(&["correct", "--msg", p(&msg), "--max-weight", "4"]), 3);
    assert_eq!(code(&["correct", "--msg", p(&dir.path().join("missing"))]), 3);
}

#[test]
fn channel_golden() {
    let out = ok(&["--machine", "channel", "-k", "2", "--trials", "200", "--weight", "1", "--seed", "7"]);
    assert_eq!(out, "trials=200 detected=200 corrected=200 S=14/15\nexact=200\n");
    let out = ok(&["--machine", "channel", "-a", "1,1,1", "-n", "20", "--trials", "50", "--weight", "2", "--delta-max", "16"]);
    assert!(out.starts_with("trials=50 detected=50 corrected=50 S=510/511\n"), "{out}");
    let out = ok(&["--machine", "channel", "-k", "2", "--trials", "5", "--weight", "0"]);
    assert_eq!(out, "trials=5 detected=0 corrected=0 S=14/15\nexact=0\n");
}

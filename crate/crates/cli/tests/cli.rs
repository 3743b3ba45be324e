use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn pqies(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqies"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = pqies(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Exit status and the single stderr line of a failing run.
fn fails(args: &[&str]) -> (i32, String) {
    let out = pqies(args);
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "one-line error expected, got {err:?}");
    (out.status.code().unwrap(), err.trim_end().to_owned())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Recipient {
    pubs: Vec<PathBuf>,
    privs: Vec<PathBuf>,
}

fn keygen(dir: &TempDir, suite: &str, name: &str) -> Recipient {
    let prefix = dir.path().join(name);
    ok(&["keygen", "--suite", suite, "--out", s(&prefix), "--seed", "01"]);
    let parts: &[&str] = if matches!(suite, "0x04" | "0x05" | "0x14" | "0x15") {
        &[".ecc", ".kem"]
    } else {
        &[""]
    };
    let path = |part: &str, ext: &str| dir.path().join(format!("{name}{part}{ext}"));
    Recipient {
        pubs: parts.iter().map(|p| path(p, ".pub")).collect(),
        privs: parts.iter().map(|p| path(p, ".priv")).collect(),
    }
}

fn key_args<'a>(flag: &'a str, paths: &'a [PathBuf]) -> Vec<&'a str> {
    paths.iter().flat_map(|p| [flag, s(p)]).collect()
}

#[test]
fn sizes_table() {
    let out = ok(&["sizes"]);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows.len(), 5);
    let totals: Vec<&str> = rows.iter().map(|r| r[5]).collect();
    assert_eq!(totals, ["81", "816", "4481", "849", "4514"]);
    let kek: Vec<&str> = rows.iter().map(|r| r[2]).collect();
    assert_eq!(kek, ["33", "768", "4433", "801", "4466"]);
    assert_eq!(rows[0][0], "ECDH-P256");
    assert_eq!(rows[0][6], "no");
    assert!(rows[1..].iter().all(|r| r[6] == "yes"));
    assert_eq!(ok(&["sizes"]), out);
}

#[test]
fn keygen_files() {
    let dir = TempDir::new().unwrap();
    let a = keygen(&dir, "0x01", "a");
    assert_eq!(fs::metadata(&a.pubs[0]).unwrap().len(), 6 + 1 + 1 + 4 + 33);
    let b = keygen(&dir, "0x01", "b");
    assert_eq!(fs::read(&a.pubs[0]).unwrap(), fs::read(&b.pubs[0]).unwrap());
    assert_eq!(fs::read(&a.privs[0]).unwrap(), fs::read(&b.privs[0]).unwrap());

    let h = keygen(&dir, "0x05", "h");
    for p in h.pubs.iter().chain(&h.privs) {
        assert!(p.exists(), "{}", p.display());
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2 + 2 + 4);
}

#[test]
fn keygen_never_prints_private_bytes() {
    let dir = TempDir::new().unwrap();
    let prefix = dir.path().join("k");
    let out = ok(&["keygen", "--suite", "0x01", "--out", s(&prefix), "--seed", "02"]);
    let secret = &fs::read(dir.path().join("k.priv")).unwrap()[12..];
    assert!(!out.contains(&hex_lower(secret)));
    let shown = ok(&["inspect", "--in", s(&dir.path().join("k.priv"))]);
    assert!(!shown.contains(&hex_lower(secret)));
    assert!(shown.contains("not shown"));
}

fn hex_lower(b: &[u8]) -> String {
    b.iter().map(|x| format!("{x:02x}")).collect()
}

#[test]
fn roundtrip_every_suite() {
    let dir = TempDir::new().unwrap();
    let pt = dir.path().join("pt");
    fs::write(&pt, b"vehicle position report: lane 2, 13.4 m/s").unwrap();
    let pt_len = 41;
    for (suite, kek_section, nonce_len) in [
        ("0x01", 81, 12),
        ("0x02", 816, 12),
        ("0x03", 4481, 12),
        ("0x04", 849, 12),
        ("0x05", 4514, 12),
        ("0x11", 81, 16),
        ("0x12", 816, 16),
        ("0x13", 4481, 16),
        ("0x14", 849, 16),
        ("0x15", 4514, 16),
    ] {
        let r = keygen(&dir, suite, &format!("r{suite}"));
        let ct = dir.path().join(format!("ct{suite}"));
        let back = dir.path().join(format!("back{suite}"));
        let mut enc = vec!["encrypt", "--suite", suite, "--info", "c0ffee", "--in", s(&pt), "--out", s(&ct)];
        enc.extend(key_args("--pub", &r.pubs));
        ok(&enc);
        assert_eq!(
            fs::metadata(&ct).unwrap().len() as usize,
            2 + kek_section + nonce_len + 4 + pt_len + 16,
            "suite {suite}"
        );
        let mut dec = vec!["decrypt", "--info", "c0ffee", "--in", s(&ct), "--out", s(&back)];
        dec.extend(key_args("--priv", &r.privs));
        ok(&dec);
        assert_eq!(fs::read(&back).unwrap(), fs::read(&pt).unwrap(), "suite {suite}");
    }
}

#[test]
fn decrypt_failures_write_nothing() {
    let dir = TempDir::new().unwrap();
    let r = keygen(&dir, "0x02", "r");
    let pt = dir.path().join("pt");
    let ct = dir.path().join("ct");
    let out = dir.path().join("out");
    fs::write(&pt, vec![7u8; 300]).unwrap();
    let mut enc = vec!["encrypt", "--suite", "0x02", "--info", "01", "--in", s(&pt), "--out", s(&ct)];
    enc.extend(key_args("--pub", &r.pubs));
    ok(&enc);

    let decrypt = |info: &str, input: &Path| {
        let mut args = vec!["decrypt", "--info", info, "--in", s(input), "--out", s(&out)];
        args.extend(key_args("--priv", &r.privs));
        fails(&args)
    };

    let (code, err) = decrypt("02", &ct);
    assert_eq!(code, 3);
    assert!(err.starts_with("E_MAC_MISMATCH:"), "{err}");
    assert!(!out.exists());

    let mut bytes = fs::read(&ct).unwrap();
    let last = bytes.len() - 1;
    bytes[last] ^= 0x80;
    let bad = dir.path().join("bad");
    fs::write(&bad, &bytes).unwrap();
    let (code, err) = decrypt("01", &bad);
    assert_eq!(code, 3);
    assert!(err.starts_with("E_AUTHENTICATION_FAILURE:"), "{err}");
    assert!(!out.exists());

    fs::write(&bad, &bytes[..100]).unwrap();
    let (code, err) = decrypt("01", &bad);
    assert_eq!(code, 3);
    assert!(err.starts_with("E_TRUNCATED_INPUT:"), "{err}");
    assert!(!out.exists());
}

#[test]
fn key_mismatch_and_io_and_usage_errors() {
    let dir = TempDir::new().unwrap();
    let mlkem = keygen(&dir, "0x02", "m");
    let pt = dir.path().join("pt");
    fs::write(&pt, b"x").unwrap();
    let ct = dir.path().join("ct");

    let (code, err) = fails(&["encrypt", "--suite", "0x03", "--pub", s(&mlkem.pubs[0]), "--in", s(&pt), "--out", s(&ct)]);
    assert_eq!(code, 3);
    assert!(err.starts_with("E_KEY_MISMATCH:"), "{err}");
    assert!(!ct.exists());

    let missing = dir.path().join("missing");
    let (code, err) = fails(&["encrypt", "--suite", "0x02", "--pub", s(&mlkem.pubs[0]), "--in", s(&missing), "--out", s(&ct)]);
    assert_eq!(code, 4);
    assert!(err.starts_with("E_IO:"), "{err}");

    let (code, err) = fails(&["encrypt", "--suite", "0x07", "--pub", "k", "--in", "a", "--out", "b"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("E_USAGE:"), "{err}");
    let (code, _) = fails(&["decrypt", "--info", "xyz", "--priv", "k", "--in", "a", "--out", "b"]);
    assert_eq!(code, 2);
    let (code, _) = fails(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn bench_csv() {
    let out = ok(&["bench", "--iterations", "1", "--phases", "KeyGen,DataEncrypt"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "suite,phase,iterations,payload_len,mean_ms,median_ms,p95_ms,stddev_ms");
    assert_eq!(lines.len(), 1 + 10 * 2);
    assert!(lines.iter().all(|l| l.split(',').count() == 8));

    let out = ok(&["bench", "--suites", "0x01", "--iterations", "2"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.starts_with("0x01,")));

    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("b.csv");
    let table = ok(&["bench", "--suites", "0x01,0x02,0x04", "--phases", "KekEncrypt", "--iterations", "5", "--csv", s(&csv)]);
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 4);
    assert!(table.contains("KekEncrypt 0x04 ~ 0x01 + 0x02"), "{table}");
}

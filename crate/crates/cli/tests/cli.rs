use std::path::PathBuf;
use std::process::{Command, Output};

fn nrphy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nrphy"))
        .args(args)
        .output()
        .expect("spawn nrphy")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nrphy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn small_config() -> PathBuf {
    let path = scratch(&format!("small-{:?}.cfg", std::thread::current().id()));
    std::fs::write(
        &path,
        "k_prime = 500\ne_r = 1000\nq_m = 4\nsnr_db = 8\ncodeblocks = 2\nseed = 4\n",
    )
    .unwrap();
    path
}

#[test]
fn roundtrip_default_prints_ok() {
    let out = nrphy(&["roundtrip", "--config", "default"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).lines().last(), Some("OK"));
}

#[test]
fn missing_config_exits_2() {
    let out = nrphy(&["roundtrip", "--config", "/nonexistent/nrphy.cfg"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_flag_exits_2() {
    assert_eq!(nrphy(&["roundtrip", "--bogus"]).status.code(), Some(2));
}

#[test]
fn malformed_config_exits_2() {
    let path = scratch("bad.cfg");
    std::fs::write(&path, "k_prime = 500\nfoo = 1\n").unwrap();
    let out = nrphy(&["encode", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("foo"));
}

#[test]
fn bench_emits_throughput_row() {
    let csv = scratch("bench.csv");
    let out = nrphy(&["bench", "--blocks", "2", "--reps", "1", "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "throughput_mbps").unwrap();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "2");
    assert!(row[col].parse::<f64>().unwrap() > 0.0);
}

#[test]
fn bler_sweep_is_reproducible() {
    let cfg = small_config();
    let args = ["bler", "--config", cfg.to_str().unwrap(), "--snr", "-2,8", "--blocks", "10"];
    let a = nrphy(&args);
    let b = nrphy(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "snr_db,blocks,block_errors,bler,avg_iterations");
    assert!(rows[1].starts_with("-2.0,10,10,"));
    assert!(rows[2].starts_with("8.0,10,0,"));
}

#[test]
fn dumped_llrs_decode_back_to_the_payload() {
    let cfg = small_config();
    let cfg = cfg.to_str().unwrap();
    let llrs = scratch("llrs.hex");
    let out = nrphy(&["roundtrip", "--config", cfg, "--dump-words", llrs.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let out = nrphy(&[
        "decode", "--config", cfg, "--input", llrs.to_str().unwrap(), "--payload-seed", "4",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.matches("payload_match=true").count(), 2);
    assert_eq!(text.lines().last(), Some("OK"));

    let out = nrphy(&[
        "decode", "--config", cfg, "--input", llrs.to_str().unwrap(), "--payload-seed", "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).lines().last(), Some("FAILED"));
}

#[test]
fn encode_dumps_scrambled_words() {
    let cfg = small_config();
    let words = scratch("scrambled.bin");
    let symbols = scratch("symbols.csv");
    let out = nrphy(&[
        "encode",
        "--config",
        cfg.to_str().unwrap(),
        "--dump-words",
        words.to_str().unwrap(),
        "--out",
        symbols.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // G = 2000 bits packed 32 per word
    assert_eq!(std::fs::metadata(&words).unwrap().len(), 63 * 4);
    let rows = std::fs::read_to_string(&symbols).unwrap();
    assert_eq!(rows.lines().next(), Some("index,re_raw,im_raw"));
    assert_eq!(rows.lines().count(), 1 + 500);
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const METHODS: [&str; 5] = ["lz-nsvpsv", "lz-rightmost", "lz-opt", "holz", "holz-opt"];

fn holz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holz")).args(args).output().expect("binary runs")
}

fn fixture() -> Vec<u8> {
    let mut raw = b"she sells sea shells by the sea shore; ".repeat(20);
    raw.extend_from_slice(&[0, 254, 0, 7, 254, 254, 1]);
    raw
}

fn path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn round_trip_every_method_and_code() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "in.bin");
    fs::write(&input, fixture()).unwrap();
    for method in METHODS {
        for code in ["gamma", "delta"] {
            for escape in [false, true] {
                let packed = path(dir.path(), "out.holz");
                let back = path(dir.path(), "back.bin");
                let mut args = vec!["compress", "--method", method, "--code", code, "-o", s(&packed), s(&input)];
                if escape {
                    args.insert(1, "--escape-zero");
                }
                let out = holz(&args);
                assert!(out.status.success(), "{method} {code}: {}", String::from_utf8_lossy(&out.stderr));
                assert!(String::from_utf8_lossy(&out.stderr).contains("ratio="));
                let out = holz(&["decompress", "-o", s(&back), s(&packed)]);
                assert!(out.status.success());
                assert_eq!(fs::read(&back).unwrap(), fixture(), "{method} {code} escape={escape}");
            }
        }
    }
}

#[test]
fn defaults_are_holz_delta() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "in.txt");
    fs::write(&input, b"abbabb").unwrap();
    let packed = path(dir.path(), "x.holz");
    assert!(holz(&["compress", "-o", s(&packed), s(&input)]).status.success());
    let bytes = fs::read(&packed).unwrap();
    assert_eq!(&bytes[..4], b"HOLZ");
    assert_eq!((bytes[5], bytes[6]), (3, 1));
}

#[test]
fn lz_opt_gamma_not_larger_than_rightmost() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "in.txt");
    fs::write(&input, fixture()).unwrap();
    let size = |method: &str| {
        let out = path(dir.path(), &format!("{method}.holz"));
        assert!(holz(&["compress", "--method", method, "--code", "gamma", "-o", s(&out), s(&input)]).status.success());
        fs::metadata(&out).unwrap().len()
    };
    assert!(size("lz-opt") <= size("lz-rightmost"));
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = path(dir.path(), "missing");
    let out_path = path(dir.path(), "o");
    let out = holz(&["compress", "-o", s(&out_path), s(&missing)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
    assert_eq!(holz(&["compress", "--method", "zip", "-o", "x", "y"]).status.code(), Some(2));
    assert_eq!(holz(&["frobnicate"]).status.code(), Some(2));

    let bad = path(dir.path(), "bad.holz");
    fs::write(&bad, b"PK\x03\x04 not ours").unwrap();
    let out = holz(&["decompress", "-o", s(&out_path), s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported format"));
    assert!(!out_path.exists());

    let input = path(dir.path(), "in.txt");
    fs::write(&input, fixture()).unwrap();
    let packed = path(dir.path(), "p.holz");
    assert!(holz(&["compress", "-o", s(&packed), s(&input)]).status.success());
    let mut bytes = fs::read(&packed).unwrap();
    bytes.truncate(bytes.len() - 3);
    fs::write(&packed, bytes).unwrap();
    assert_eq!(holz(&["decompress", "-o", s(&out_path), s(&packed)]).status.code(), Some(1));
    assert!(!out_path.exists());
    let leftovers = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 3, "no temporary files left behind");
}

#[test]
fn stats_rows() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(path(dir.path(), "a.txt"), b"abbabb").unwrap();
    fs::write(path(dir.path(), "b.txt"), b"abababab").unwrap();
    let out = holz(&["stats", s(&path(dir.path(), "a.txt"))]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "name,n,sigma,z,r,H0,H1,H2,H3,H4");
    assert!(lines[1].starts_with("a.txt,6,2,4,"));

    let out = holz(&["stats", "--max-k", "0", s(dir.path())]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, vec!["name,n,sigma,z,r,H0", "a.txt,6,2,4,4,0.91", "b.txt,8,2,3,3,1.00"]);
}

#[test]
fn bench_rows_and_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let data = path(dir.path(), "data");
    fs::create_dir(&data).unwrap();
    fs::write(path(&data, "one.txt"), fixture()).unwrap();
    fs::write(path(&data, "two.txt"), b"mississippi mississippi mississippi").unwrap();
    let csv = path(dir.path(), "bench.csv");
    let out = holz(&["bench", "--methods", "holz,lz-rightmost", "--codes", "delta", "--prefix-bytes", "100", "-o", s(&csv), s(&data)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "dataset,method,code,input_bytes,output_bytes,ratio,offset_bits,length_bits,wall_time_s");
    assert_eq!(lines.len(), 5);
    for row in &lines[1..] {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f.len(), 9);
        let input: u64 = f[3].parse().unwrap();
        let output: u64 = f[4].parse().unwrap();
        assert_eq!(input, if f[0] == "one.txt" { 100 } else { 35 });
        assert!(f[5].parse::<f64>().unwrap() > 0.0);
        // payload plus header fills the file up to the final padding byte
        let bits: u64 = f[6].parse::<u64>().unwrap() + f[7].parse::<u64>().unwrap();
        assert!(bits <= output * 8);
    }
}

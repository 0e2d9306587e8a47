use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ncmseg::{generate_phantom, io, PhantomSpec};

fn ncmseg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ncmseg"))
}

fn run(args: &[&str]) -> Output {
    ncmseg().args(args).output().expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn small_spec(seed: u64, noise: f64) -> PhantomSpec {
    PhantomSpec {
        width: 128,
        height: 124,
        noise_std: noise,
        seed,
        ..PhantomSpec::default()
    }
}

fn write_phantom(dir: &Path, seed: u64, noise: f64) -> (PathBuf, PathBuf) {
    let (image, mask) = generate_phantom(&small_spec(seed, noise)).unwrap();
    let img_path = dir.join(format!("scan{seed}.png"));
    let mask_path = dir.join(format!("truth{seed}.png"));
    io::save_gray(&image, &img_path).unwrap();
    io::save_mask(&mask, &mask_path).unwrap();
    (img_path, mask_path)
}

/// Two subjects with two phantoms each, annotated by two experts.
fn fixture_dataset(root: &Path, noise: f64) {
    for (s, subject) in ["s01", "s02"].iter().enumerate() {
        let images = root.join(subject).join("images");
        std::fs::create_dir_all(&images).unwrap();
        for expert in ["expert1", "expert2"] {
            std::fs::create_dir_all(root.join(subject).join("masks").join(expert)).unwrap();
        }
        for k in 0..2u64 {
            let seed = 10 * s as u64 + k;
            let (image, mask) = generate_phantom(&small_spec(seed, noise)).unwrap();
            let name = format!("b{k:02}.png");
            io::save_gray(&image, images.join(&name)).unwrap();
            for expert in ["expert1", "expert2"] {
                io::save_mask(&mask, root.join(subject).join("masks").join(expert).join(&name)).unwrap();
            }
        }
    }
}

#[test]
fn segment_writes_mask_and_overlay() {
    let dir = tempfile::tempdir().unwrap();
    let (img, _) = write_phantom(dir.path(), 1, 0.02);
    let out = dir.path().join("mask.png");
    let overlay = dir.path().join("overlay.png");
    let o = run(&[
        "segment",
        p(&img),
        "-o",
        p(&out),
        "--overlay",
        p(&overlay),
        "--max-iter",
        "20",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.exists() && overlay.exists());
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("iterations: "));
    assert!(stdout.contains("fluid pixels: "));
    let mask = io::load_mask(&out).unwrap();
    assert_eq!((mask.width(), mask.height()), (128, 124));
}

#[test]
fn segment_error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mask.png");
    let missing = run(&["segment", p(&dir.path().join("nope.png")), "-o", p(&out)]);
    assert_eq!(missing.status.code(), Some(2));

    let (img, _) = write_phantom(dir.path(), 2, 0.0);
    let one = run(&["segment", p(&img), "-o", p(&out), "--clusters", "1"]);
    assert_eq!(one.status.code(), Some(1));
    let even = run(&["segment", p(&img), "-o", p(&out), "--window", "4"]);
    assert_eq!(even.status.code(), Some(1));
    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(!out.exists());
}

#[test]
fn config_file_is_read_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let (img, _) = write_phantom(dir.path(), 3, 0.02);
    let out = dir.path().join("mask.png");

    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"clusters": 6, "max_iter": 5}"#).unwrap();
    let o = run(&["segment", p(&img), "-o", p(&out), "--config", p(&good)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("iterations: 5"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"clusterz": 6}"#).unwrap();
    let o = run(&["segment", p(&img), "-o", p(&out), "--config", p(&bad)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn evaluate_reports_every_level() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().join("data");
    fixture_dataset(&root, 0.0);
    let report = dir.path().join("report.csv");
    let o = run(&[
        "evaluate",
        p(&root),
        "--expert",
        "2",
        "-r",
        p(&report),
        "--format",
        "csv",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let text = std::fs::read_to_string(&report).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    let count = |scope: &str| rows.iter().filter(|r| &r[0] == scope).count();
    assert_eq!((count("image"), count("subject"), count("average")), (4, 2, 1));
    let average = rows.iter().find(|r| &r[0] == "average").unwrap();
    let dice: f64 = average[3].parse().unwrap();
    assert!(dice >= 0.99, "average dice {dice}");

    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("subject s01: dice "));
    assert!(stdout.lines().last().unwrap().starts_with("average: dice "));
}

#[test]
fn evaluate_json_and_expert_errors() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().join("data");
    fixture_dataset(&root, 0.02);
    let report = dir.path().join("report.json");
    let o = run(&[
        "evaluate",
        p(&root),
        "--expert",
        "expert1",
        "-r",
        p(&report),
        "--max-iter",
        "10",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["per_image"].as_array().unwrap().len(), 4);
    assert_eq!(json["per_subject"].as_array().unwrap().len(), 2);

    let o = run(&["evaluate", p(&root), "--expert", "3", "-r", p(&report)]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["evaluate", p(&dir.path().join("missing")), "-r", p(&report)]);
    assert_eq!(o.status.code(), Some(2));
    let o = ncmseg()
        .args(["evaluate", p(&root), "-r", p(&report)])
        .env("NCMSEG_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn transform_writes_quantized_maps() {
    let dir = tempfile::tempdir().unwrap();
    let flat = dir.path().join("flat.png");
    io::save_gray(&ncmseg::GrayImage::filled(9, 7, 0.3).unwrap(), &flat).unwrap();
    let prefix = dir.path().join("flat");
    let o = run(&["transform", p(&flat), "-o", p(&prefix)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = io::load_gray(dir.path().join("flat_t.png")).unwrap();
    assert!(t.data().iter().all(|&v| v == 128.0 / 255.0));

    let (img, _) = write_phantom(dir.path(), 4, 0.02);
    let prefix = dir.path().join("scan");
    let o = run(&["transform", p(&img), "-o", p(&prefix), "--window", "3"]);
    assert!(o.status.success());
    let gray = io::load_gray(&img).unwrap();
    let ns = ncmseg::to_neutrosophic(&gray, 3).unwrap();
    for (suffix, map) in [
        ("t", &ns.t_map),
        ("i", &ns.i_map),
        ("f", &ns.f_map),
        ("delta", &ns.delta_map),
    ] {
        let written = io::load_gray(dir.path().join(format!("scan_{suffix}.png"))).unwrap();
        for (&w, &v) in written.data().iter().zip(map.data()) {
            assert_eq!((w * 255.0).round() as u8, io::quantize(v), "map {suffix}");
        }
    }
    let t = io::load_gray(dir.path().join("scan_t.png")).unwrap();
    assert!(t.data().contains(&0.0) && t.data().contains(&1.0));

    let o = run(&["transform", p(&img), "-o", p(&prefix), "--window", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn phantom_is_deterministic_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let args = |tag: &str| {
        vec![
            "phantom".to_string(),
            dir.path().join(format!("{tag}.png")).to_string_lossy().into_owned(),
            "--mask".to_string(),
            dir.path()
                .join(format!("{tag}_mask.png"))
                .to_string_lossy()
                .into_owned(),
            "--width".into(),
            "96".into(),
            "--height".into(),
            "80".into(),
            "--seed".into(),
            "7".into(),
        ]
    };
    for tag in ["a", "b"] {
        let o = ncmseg().args(args(tag)).output().unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let read = |name: &str| std::fs::read(dir.path().join(name)).unwrap();
    assert_eq!(read("a.png"), read("b.png"));
    assert_eq!(read("a_mask.png"), read("b_mask.png"));

    let mask = io::load_mask(dir.path().join("a_mask.png")).unwrap();
    let counts = ncmseg::metrics::confusion(&mask, &mask).unwrap();
    assert_eq!(counts.dice(), Some(1.0));

    let o = run(&[
        "phantom",
        p(&dir.path().join("c.png")),
        "--mask",
        p(&dir.path().join("c_mask.png")),
        "--blob-min",
        "0.5",
        "--blob-max",
        "0.6",
        "--bg-min",
        "0.4",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

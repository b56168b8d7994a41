#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn poncelet(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_poncelet"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// (stored name, exit code, arguments)
pub const STORED: &[(&str, i32, &[&str])] = &[
    ("matrix3.txt", 0, &["matrix", "3"]),
    ("matrix5.txt", 0, &["matrix", "5"]),
    (
        "zero_locus_cubic.json",
        0,
        &["zero-locus", "pencil.json", "--form", "f"],
    ),
    (
        "zero_locus_quartic_world.json",
        0,
        &["zero-locus", "darboux4.json", "--form", "f", "--inner", "C"],
    ),
    (
        "det_curve_conic_pencil.json",
        0,
        &["det-curve", "pencil.json", "--form", "q", "--with", "r"],
    ),
    (
        "det_curve_cubic_pencil.json",
        0,
        &["det-curve", "pencil.json", "--form", "f", "--with", "g"],
    ),
    (
        "darboux3.json",
        0,
        &["darboux", "darboux3.json", "--form", "f"],
    ),
    (
        "darboux4.json",
        0,
        &["darboux", "darboux4.json", "--form", "f"],
    ),
    (
        "trace_chapple3.json",
        0,
        &["trace", "chapple.json", "-n", "3"],
    ),
    (
        "trace_chapple4.json",
        1,
        &["trace", "chapple.json", "-n", "4"],
    ),
    (
        "porism_triangle345.json",
        0,
        &["porism-pencil", "triangle345.json", "--gon", "sides"],
    ),
    (
        "porism_fuss.json",
        0,
        &["porism-pencil", "fuss.json", "--gon", "sides"],
    ),
    (
        "porism_nonporism.json",
        1,
        &["porism-pencil", "nonporism.json", "--gon", "sides"],
    ),
    (
        "incidence_triangle345.json",
        0,
        &["incidence", "triangle345.json", "--gon", "sides"],
    ),
    (
        "incidence_fuss.json",
        0,
        &["incidence", "fuss.json", "--gon", "sides"],
    ),
    (
        "incidence_nonporism.json",
        1,
        &["incidence", "nonporism.json", "--gon", "sides"],
    ),
    (
        "render_chapple.json",
        0,
        &[
            "render-svg",
            "chapple.json",
            "--inner",
            "C",
            "--start",
            "p",
            "-n",
            "3",
            "--out",
            "{tmp}",
        ],
    ),
    (
        "render_darboux4.json",
        0,
        &[
            "render-svg",
            "darboux4.json",
            "--inner",
            "C",
            "--form",
            "f",
            "--out",
            "{tmp}",
        ],
    ),
    (
        "render_empty.json",
        0,
        &["render-svg", "empty.json", "--out", "{tmp}"],
    ),
];

/// Float-backend runs checked for their verdict only.
pub const FLOAT: &[(i32, &[&str])] = &[
    (
        0,
        &["--backend", "float", "trace", "chapple.json", "-n", "3"],
    ),
    (
        0,
        &[
            "--backend",
            "float",
            "porism-pencil",
            "chapple.json",
            "--start",
            "p",
            "-n",
            "3",
        ],
    ),
    (
        0,
        &[
            "--backend",
            "float",
            "porism-pencil",
            "fuss.json",
            "--start",
            "p",
            "-n",
            "4",
        ],
    ),
    (
        0,
        &[
            "--backend",
            "float",
            "porism-pencil",
            "triangle345.json",
            "--gon",
            "sides",
        ],
    ),
    (
        0,
        &[
            "--backend",
            "float",
            "darboux",
            "darboux3.json",
            "--form",
            "f",
        ],
    ),
    (
        0,
        &[
            "--backend",
            "float",
            "darboux",
            "darboux4.json",
            "--form",
            "f",
        ],
    ),
    (
        0,
        &[
            "--backend",
            "float",
            "zero-locus",
            "darboux4.json",
            "--form",
            "f",
            "--inner",
            "C",
        ],
    ),
    (
        0,
        &[
            "--backend",
            "float",
            "det-curve",
            "pencil.json",
            "--form",
            "f",
            "--with",
            "g",
        ],
    ),
    (
        0,
        &[
            "--backend",
            "float",
            "incidence",
            "fuss.json",
            "--gon",
            "sides",
        ],
    ),
];

pub fn tmp_svg(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("poncelet-e2e-{}-{tag}.svg", std::process::id()))
}

pub fn with_tmp<'a>(args: &[&'a str], tmp: &'a str) -> Vec<&'a str> {
    args.iter()
        .map(|a| if *a == "{tmp}" { tmp } else { a })
        .collect()
}

pub fn classes(svg: &str) -> std::collections::BTreeMap<String, usize> {
    let doc = roxmltree::Document::parse(svg).expect("well-formed SVG");
    let mut out = std::collections::BTreeMap::new();
    for n in doc.descendants().filter(|n| n.is_element()) {
        if let Some(c) = n.attribute("class") {
            *out.entry(format!("{}.{c}", n.tag_name().name()))
                .or_insert(0) += 1;
        }
    }
    out
}

pub fn svg_counts(args: &[&str]) -> std::collections::BTreeMap<String, usize> {
    let tmp = tmp_svg("counts");
    let tmp = tmp.to_str().unwrap();
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--out", tmp]);
    let (code, _, stderr) = poncelet(&full);
    assert_eq!(code, 0, "{stderr}");
    let svg = std::fs::read_to_string(tmp).unwrap();
    std::fs::remove_file(tmp).ok();
    classes(&svg)
}

/// Mismatches between the binary and the stored certificates.
pub fn stored_mismatches(bless: bool) -> Vec<String> {
    let mut bad = Vec::new();
    for (name, code, args) in STORED {
        let tmp = tmp_svg(name);
        let tmp = tmp.to_str().unwrap();
        let (got, stdout, stderr) = poncelet(&with_tmp(args, tmp));
        std::fs::remove_file(tmp).ok();
        if got != *code {
            bad.push(format!("{args:?}: exit {got}, expected {code}: {stderr}"));
            continue;
        }
        let path = fixtures().join("expected").join(name);
        if bless {
            std::fs::write(&path, &stdout).unwrap();
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == stdout => {}
            Ok(_) => bad.push(format!("{args:?} drifted from {name}")),
            Err(_) => bad.push(format!("missing {}", path.display())),
        }
    }
    bad
}

/// Float runs whose exit code, verdict or residuals are off.
pub fn float_failures() -> Vec<String> {
    let mut bad = Vec::new();
    for (code, args) in FLOAT {
        let (got, stdout, stderr) = poncelet(args);
        if got != *code {
            bad.push(format!("{args:?}: exit {got}: {stdout}{stderr}"));
            continue;
        }
        let cert: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        for check in cert["checks"].as_array().unwrap() {
            if let (Some(v), Some(t)) = (check["value"].as_f64(), check["tol"].as_f64()) {
                if v > t {
                    bad.push(format!("{args:?}: {check}"));
                }
            }
        }
    }
    bad
}

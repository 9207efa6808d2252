use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

const MANIFEST: &str = env!("CARGO_MANIFEST_DIR");

fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().expect("test executable path");
    exe.parent().and_then(Path::parent).expect("profile dir").to_path_buf()
}

fn exported_symbols() -> Vec<String> {
    let src = fs::read_to_string(Path::new(MANIFEST).join("src/lib.rs")).unwrap();
    src.lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap().trim().to_string())
        .collect()
}

#[test]
fn header_declares_every_export() {
    let header = fs::read_to_string(Path::new(MANIFEST).join("include/monopole_dirac.h")).unwrap();
    let symbols = exported_symbols();
    assert!(symbols.len() >= 18, "{symbols:?}");
    for s in symbols {
        assert!(header.contains(&format!("{s}(")), "{s} missing from header");
    }
    for s in ["MD_STATUS_NULL_POINTER = 11", "MD_NON_REL_VARIANT_EXACT", "typedef struct MdSpinor MdSpinor"] {
        assert!(header.contains(s), "{s} missing from header");
    }
}

#[test]
fn c_program_links_against_static_library() {
    let profile = profile_dir();
    let mut build = Command::new(env!("CARGO"));
    build
        .args(["build", "--quiet", "-p", "monopole-dirac-ffi", "--lib", "--target-dir"])
        .arg(profile.parent().expect("target dir"))
        .current_dir(MANIFEST);
    if profile.file_name().is_some_and(|n| n == "release") {
        build.arg("--release");
    }
    assert!(build.status().expect("cargo runs").success());
    let lib = profile.join("libmonopole_dirac_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(Path::new(MANIFEST).join("include"))
        .arg(Path::new(MANIFEST).join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler runs");
    assert!(status.success());

    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let value = |key: &str| -> String {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{key} ")))
            .unwrap_or_else(|| panic!("{key} missing in {text}"))
            .to_string()
    };
    let energy: f64 = value("energy").parse().unwrap();
    let z0: f64 = value("z0").parse().unwrap();
    let upper: f64 = value("upper").parse().unwrap();
    assert!(energy > 0.0 && energy < 1.0);
    assert_eq!(z0, 4.5);
    assert!(upper.is_finite() && upper != 0.0);
    assert!(value("setting4").parse::<f64>().unwrap() < energy);
    assert_eq!(value("status"), "1 invalid parameter");
    assert!(value("message").contains("numerator"));
}

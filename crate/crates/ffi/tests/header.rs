use std::path::{Path, PathBuf};
use std::process::Command;

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("qes3body.h")
}

#[test]
fn header_declares_every_entry_point() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "qes3_version",
        "qes3_last_error_message",
        "qes3_params_new",
        "qes3_params_free",
        "qes3_operator_from_catalog",
        "qes3_operator_from_json",
        "qes3_operator_to_json",
        "qes3_operator_commutator",
        "qes3_operator_is_zero",
        "qes3_operator_free",
        "qes3_spectrum_solve",
        "qes3_spectrum_len",
        "qes3_spectrum_get",
        "qes3_spectrum_free",
        "qes3_effective_potential",
        "qes3_ricci_scalar",
        "qes3_w_coords",
        "qes3_oracle_run",
        "typedef struct Qes3Params Qes3Params;",
        "QES3_STATUS_INVARIANCE_VIOLATION = 4",
    ] {
        assert!(text.contains(name), "missing {}", name);
    }
}

const PROGRAM: &str = r#"
#include <stdio.h>
#include "qes3body.h"

int main(void) {
    Qes3Params *p = NULL;
    if (qes3_params_new("3", "1", "1", "0", &p) != QES3_STATUS_OK) return 10;
    Qes3Spectrum *s = NULL;
    if (qes3_spectrum_solve(p, "p1", "es", &s) != QES3_STATUS_OK) return 11;
    size_t n = 0;
    qes3_spectrum_len(s, &n);
    for (size_t i = 0; i < n; i++) {
        double e = 0.0;
        qes3_spectrum_get(s, i, NULL, NULL, NULL, &e);
        printf("%g\n", e);
    }
    qes3_spectrum_free(s);
    qes3_params_free(p);
    double v = 0.0;
    if (qes3_effective_potential((const double[]){1.0, 1.0, 4.0}, &v) != QES3_STATUS_DIVERGENT_POTENTIAL) return 12;
    return 0;
}
"#;

/// Compile a C client against the generated header and the static
/// library; skipped when no C compiler is on the path.
#[test]
fn c_client_links_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler, skipping");
        return;
    }
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libqes3body_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("qes3body-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("client.c");
    let bin = dir.join("client");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{:?}", out);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "24\n36\n48\n60\n");
    let _ = std::fs::remove_dir_all(&dir);
}

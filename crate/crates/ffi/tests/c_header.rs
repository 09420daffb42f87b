//! Compiles and runs a small C program against the generated header and the
//! static library, when a C compiler is available.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "lazard.h"

int main(void) {
    LazardAlgebra *h = NULL;
    if (lazard_algebra_from_corpus("heisenberg_gen(1)", 7, 2, &h) != LAZARD_STATUS_OK) return 10;
    size_t betti[8], len = 0;
    if (lazard_betti(h, betti, 8, &len) != LAZARD_STATUS_OK || len != 4) return 11;
    if (betti[0] != 1 || betti[1] != 2 || betti[2] != 2 || betti[3] != 1) return 12;
    if (lazard_compare(h, NULL) != LAZARD_STATUS_OK) return 13;
    lazard_algebra_free(h);
    if (lazard_algebra_from_corpus("nothing", 7, 2, &h) != LAZARD_STATUS_PARSE) return 14;
    if (lazard_last_error() == NULL) return 15;
    printf("ok %s\n", lazard_version());
    return 0;
}
"#;

fn static_lib() -> Option<PathBuf> {
    // target/<profile>/deps/c_header-* -> target/<profile>
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let lib = dir.join("liblazard_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not built; skipping");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("lazard_smoke.c");
    let exe = tmp.join("lazard_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}

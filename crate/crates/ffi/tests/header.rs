//! Compiles tests/c/smoke.c against the generated header and links it with
//! the static library built alongside this test.

use std::path::{Path, PathBuf};
use std::process::Command;

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let deps = exe.parent()?;
    let name = if cfg!(windows) { "quiver_si_ffi.lib" } else { "libquiver_si_ffi.a" };
    [deps.join(name), deps.parent()?.join(name)].into_iter().find(|p| p.exists())
}

#[test]
fn header_is_current() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/quiver_si.h")).unwrap();
    let src = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    for line in src.lines() {
        if let Some(rest) = line.strip_prefix("pub unsafe extern \"C\" fn ").or_else(|| line.strip_prefix("pub extern \"C\" fn ")) {
            let name = rest.split('(').next().unwrap();
            assert!(header.contains(&format!("{name}(")), "{name} missing from the header");
        }
    }
    assert!(header.contains("typedef struct QsiQuiver QsiQuiver;"));
    assert!(header.contains("QSI_STATUS_PRECONDITION = 4"));
}

#[test]
#[cfg(unix)]
fn c_smoke_program() {
    let Ok(cc) = std::env::var("CC").or_else(|_| which("cc").ok_or(())) else {
        eprintln!("skipping: no C compiler found");
        return;
    };
    let lib = static_lib().expect("static library next to the test binary");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("qsi_smoke");
    let status = Command::new(&cc)
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("compiler runs");
    assert!(status.success(), "compiling the smoke program failed");
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "smoke program exited with {:?}", run.status.code());
    let doc: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(doc["result"], serde_json::json!(2));
}

fn which(name: &str) -> Option<String> {
    let path = std::env::var_os("PATH")?;
    std::env::split_paths(&path).map(|d| d.join(name)).find(|p| p.exists()).map(|p| p.to_string_lossy().into_owned())
}

use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qaoalie_ffi::*;

const CHAIN3: &str = r#"{ "family": "chain", "n": 3, "coefficients": { "wA": {"sample": true}, "wB": {"sample": true}, "gAB": {"sample": true}, "gBA": {"sample": true} }, "seed": 1 }"#;
const PATH4: &str = r#"{ "vertices": [1, 2, 3, 4], "edges": [[1, 2], [2, 3], [3, 4]] }"#;
const CYCLE4: &str = r#"{ "vertices": [1, 2, 3, 4], "edges": [[1, 2], [2, 3], [3, 4], [4, 1]] }"#;

unsafe fn take(s: *mut c_char) -> serde_json::Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
    qaoalie_string_free(s);
    v
}

unsafe fn last_error() -> String {
    let p = qaoalie_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn problem(json: &str) -> *mut QaoalieProblem {
    let doc = CString::new(json).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(qaoalie_problem_parse(doc.as_ptr(), &mut p), QaoalieStatus::Ok);
    p
}

unsafe fn graph(json: &str) -> *mut QaoalieGraph {
    let doc = CString::new(json).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(qaoalie_graph_parse(doc.as_ptr(), &mut g), QaoalieStatus::Ok);
    g
}

#[test]
fn closure_of_a_chain() {
    unsafe {
        let p = problem(CHAIN3);
        assert_eq!(qaoalie_problem_qubits(p), 3);
        let mut dim = 0usize;
        assert_eq!(qaoalie_dimension(p, &mut dim), QaoalieStatus::Ok);
        assert_eq!(dim, 63);

        let mut out = ptr::null_mut();
        assert_eq!(qaoalie_closure(p, false, 0.0, 2, &mut out), QaoalieStatus::Ok);
        let v = take(out);
        assert_eq!(v["dimension"], 63);
        assert_eq!(v["universal"], true);

        assert_eq!(qaoalie_closure(p, true, 0.0, 1, &mut out), QaoalieStatus::Ok);
        assert_eq!(take(out)["dimension"], 63);

        assert_eq!(qaoalie_problem_reseed(p, 9), QaoalieStatus::Ok);
        assert_eq!(qaoalie_dimension(p, &mut dim), QaoalieStatus::Ok);
        assert_eq!(dim, 63);
        qaoalie_problem_free(p);
    }
}

#[test]
fn bad_arguments_report_status_and_message() {
    unsafe {
        let mut p = ptr::null_mut();
        let bad = CString::new(r#"{ "family": "chain", "n": 0 }"#).unwrap();
        assert_eq!(qaoalie_problem_parse(bad.as_ptr(), &mut p), QaoalieStatus::InvalidInput);
        assert!(p.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(qaoalie_problem_parse(ptr::null(), &mut p), QaoalieStatus::NullPointer);
        let invalid = [0xffu8, 0xfe, 0];
        assert_eq!(
            qaoalie_problem_parse(invalid.as_ptr() as *const c_char, &mut p),
            QaoalieStatus::InvalidUtf8
        );

        let mut dim = 0usize;
        assert_eq!(qaoalie_dimension(ptr::null(), &mut dim), QaoalieStatus::NullPointer);

        let ok = problem(CHAIN3);
        let mut out = ptr::null_mut();
        assert_eq!(qaoalie_closure(ok, false, 0.0, 0, &mut out), QaoalieStatus::InvalidInput);
        assert_eq!(qaoalie_closure(ok, true, -1.0, 1, &mut out), QaoalieStatus::InvalidInput);
        assert!(out.is_null());
        assert_eq!(qaoalie_closure(ok, false, 0.0, 1, &mut out), QaoalieStatus::Ok);
        assert!(qaoalie_last_error().is_null());
        qaoalie_string_free(out);
        qaoalie_problem_free(ok);

        qaoalie_problem_free(ptr::null_mut());
        qaoalie_graph_free(ptr::null_mut());
        qaoalie_string_free(ptr::null_mut());
    }
}

#[test]
fn forcing_through_handles() {
    unsafe {
        let path = graph(PATH4);
        let cycle = graph(CYCLE4);
        let one = [1u32];
        let mut forcing = false;
        let mut out = ptr::null_mut();
        let s = qaoalie_force(path, QaoalieProcess::Zero, one.as_ptr(), 1, ptr::null(), 0, &mut forcing, &mut out);
        assert_eq!(s, QaoalieStatus::Ok);
        assert!(forcing);
        assert_eq!(take(out)["infected_vertices"].as_array().unwrap().len(), 4);

        let s = qaoalie_force(cycle, QaoalieProcess::Zero, one.as_ptr(), 1, ptr::null(), 0, &mut forcing, ptr::null_mut());
        assert_eq!(s, QaoalieStatus::Ok);
        assert!(!forcing);

        let stray = [9u32];
        let s = qaoalie_force(path, QaoalieProcess::Zero, stray.as_ptr(), 1, ptr::null(), 0, &mut forcing, ptr::null_mut());
        assert_eq!(s, QaoalieStatus::InvalidInput);
        assert!(last_error().contains('9'));

        assert_eq!(qaoalie_force_search(cycle, QaoalieProcess::Zero, 4, &mut out), QaoalieStatus::Ok);
        let v = take(out);
        assert_eq!(v["size"], 2);

        qaoalie_graph_free(path);
        qaoalie_graph_free(cycle);
    }
}

#[test]
fn verify_all_runs() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(qaoalie_verify_all(1, &mut out), QaoalieStatus::Ok);
        let v = take(out);
        assert_eq!(v["seed"], 1);
        assert!(v["cases"].as_array().unwrap().len() > 20);
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libqaoalie_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "qaoalie.h"
int main(void) {
    const char *doc = "{\"vertices\": [1, 2, 3, 4], \"edges\": [[1, 2], [2, 3], [3, 4]]}";
    QaoalieGraph *g = NULL;
    if (qaoalie_graph_parse(doc, &g) != QAOALIE_STATUS_OK) return 1;
    uint32_t set[1] = {1};
    bool forcing = false;
    char *json = NULL;
    if (qaoalie_force(g, QAOALIE_PROCESS_ZERO, set, 1, NULL, 0, &forcing, &json) != QAOALIE_STATUS_OK) return 2;
    qaoalie_string_free(json);
    qaoalie_graph_free(g);
    QaoalieProblem *p = NULL;
    if (qaoalie_problem_parse("{", &p) != QAOALIE_STATUS_INVALID_INPUT) return 3;
    if (qaoalie_last_error() == NULL) return 4;
    printf("%d\n", forcing ? 1 : 0);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1");
}

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use padic_spectral_ffi::*;

fn context(p: u64, m: u32) -> *mut PsContext {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { ps_context_new(p, m, 0, &mut ctx) }, PsStatus::PsOk);
    ctx
}

fn matrix(ctx: *const PsContext, n: usize, entries: &[i64]) -> *mut PsMatrix {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ps_matrix_from_integers(ctx, n, entries.as_ptr(), &mut out) }, PsStatus::PsOk);
    out
}

fn entries(mat: *const PsMatrix) -> Vec<u64> {
    let mut n = 0;
    assert_eq!(unsafe { ps_matrix_dim(mat, &mut n) }, PsStatus::PsOk);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut e = 0;
            assert_eq!(unsafe { ps_matrix_entry(mat, i, j, &mut e) }, PsStatus::PsOk);
            out.push(e);
        }
    }
    out
}

fn last_error() -> String {
    let p = ps_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn lift_matches_brute_force() {
    let ctx = context(5, 3);
    let mut out = 0;
    assert_eq!(unsafe { ps_teichmuller_lift(ctx, 2, &mut out) }, PsStatus::PsOk);
    // the unique x = 2 mod 5 with x^5 = x mod 125
    let oracle: Vec<u64> = (0..125u64).filter(|x| x % 5 == 2 && x.pow(5) % 125 == *x).collect();
    assert_eq!(oracle, vec![out]);
    assert_eq!(unsafe { ps_teichmuller_lift(ctx, 5, &mut out) }, PsStatus::PsInvalidArgument);
    unsafe { ps_context_free(ctx) };
}

#[test]
fn bad_contexts_report_codes() {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { ps_context_new(6, 3, 0, &mut ctx) }, PsStatus::PsNotPrime);
    assert!(last_error().contains("not a prime"));
    assert_eq!(unsafe { ps_context_new(2, 65, 0, &mut ctx) }, PsStatus::PsInvalidPrecision);
    assert_eq!(unsafe { ps_context_new(2, 3, 0, ptr::null_mut()) }, PsStatus::PsNullPointer);
}

#[test]
fn jordan_and_products() {
    let ctx = context(3, 4);
    let a = matrix(ctx, 2, &[1, 1, 0, 1]);
    let (mut s, mut n) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { ps_jordan(a, 6, &mut s, &mut n) }, PsStatus::PsOk);
    assert_eq!(entries(s), vec![1, 0, 0, 1]);
    assert_eq!(entries(n), vec![0, 1, 0, 0]);
    let mut prod = ptr::null_mut();
    assert_eq!(unsafe { ps_matrix_mul(a, a, &mut prod) }, PsStatus::PsOk);
    assert_eq!(entries(prod), vec![1, 2, 0, 1]);
    let mut eq = -1;
    assert_eq!(unsafe { ps_matrix_equal(prod, a, &mut eq) }, PsStatus::PsOk);
    assert_eq!(eq, 0);
    let mut e = 0;
    assert_eq!(unsafe { ps_matrix_entry(a, 2, 0, &mut e) }, PsStatus::PsInvalidArgument);

    let other = context(5, 4);
    let b = matrix(other, 2, &[1, 0, 0, 1]);
    assert_eq!(unsafe { ps_matrix_mul(a, b, &mut prod) }, PsStatus::PsMathError);
    unsafe {
        for m in [a, s, n, prod, b] {
            ps_matrix_free(m);
        }
        ps_context_free(ctx);
        ps_context_free(other);
    }
}

#[test]
fn hermite_digits_reassemble() {
    let ctx = context(3, 3);
    let a = matrix(ctx, 2, &[1, 3, 0, 4]);
    let mut count = 0;
    let mut digits = [ptr::null_mut(); 8];
    assert_eq!(unsafe { ps_hermite_digits(a, digits.as_mut_ptr(), 8, &mut count) }, PsStatus::PsOk);
    assert_eq!(count, 3);
    let mut acc = [0u64; 4];
    for (k, d) in digits[..count].iter().enumerate() {
        for (slot, e) in acc.iter_mut().zip(entries(*d)) {
            *slot = (*slot + 3u64.pow(k as u32) * e) % 27;
        }
        unsafe { ps_matrix_free(*d) };
    }
    assert_eq!(acc, [1, 3, 0, 4]);

    let bad = matrix(ctx, 2, &[1, 1, 0, 1]);
    assert_eq!(unsafe { ps_hermite_digits(bad, ptr::null_mut(), 0, &mut count) }, PsStatus::PsNotHermite);
    assert!(last_error().contains("nilpotent residue at digit 1"));
    unsafe {
        ps_matrix_free(a);
        ps_matrix_free(bad);
        ps_context_free(ctx);
    }
}

fn run(args: &[&str], document: Option<&str>) -> (PsStatus, Option<serde_json::Value>) {
    let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
    let argv: Vec<*const c_char> = owned.iter().map(|a| a.as_ptr()).collect();
    let doc = document.map(|d| CString::new(d).unwrap());
    let mut out = ptr::null_mut();
    let status = unsafe {
        ps_run(
            argv.as_ptr(),
            argv.len(),
            doc.as_ref().map_or(ptr::null(), |d| d.as_ptr()),
            &mut out,
        )
    };
    let value = (!out.is_null()).then(|| {
        let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
        unsafe { ps_string_free(out) };
        serde_json::from_str(&text).unwrap()
    });
    (status, value)
}

#[test]
fn commands_through_the_abi() {
    let (status, doc) = run(&["lift", "--p", "5", "--m", "3", "--residue", "2"], None);
    assert_eq!(status, PsStatus::PsOk);
    assert_eq!(doc.unwrap()["value"], "57");

    let problem = r#"{"p": 3, "m": 4, "entries": [[1, 1], [0, 1]]}"#;
    let (status, doc) = run(&["hermite"], Some(problem));
    assert_eq!(status, PsStatus::PsRejected);
    assert_eq!(doc.unwrap()["reason"], "nilpotent residue at digit 1");

    let (status, doc) = run(&["jordan"], Some(problem));
    assert_eq!(status, PsStatus::PsOk);
    assert_eq!(doc.unwrap()["verified"], true);

    let (status, doc) = run(&["measure"], Some(r#"{"p": 3, "m": 4, "entries": [[1, 2], [3]]}"#));
    assert_eq!(status, PsStatus::PsMalformed);
    assert!(doc.is_none());
    assert!(last_error().contains("field `entries`"));
}

#[test]
fn header_is_current() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/padic_spectral.h")).unwrap();
    for name in [
        "ps_context_new",
        "ps_teichmuller_lift",
        "ps_matrix_from_integers",
        "ps_jordan",
        "ps_hermite_digits",
        "ps_run",
        "ps_string_free",
        "ps_last_error",
        "typedef struct PsMatrix PsMatrix",
        "PS_NOT_HERMITE = 8",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles the C smoke test against the generated header and static library
/// when a C compiler and the archive are present.
#[test]
fn c_program_links_and_runs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    // target/<profile>/deps/<test> -> target/<profile>
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let archive = profile_dir.join("libpadic_spectral_ffi.a");
    if !archive.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C toolchain or static library");
        return;
    }
    let out_dir = tempfile::tempdir().unwrap();
    let binary = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&binary)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&binary).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}

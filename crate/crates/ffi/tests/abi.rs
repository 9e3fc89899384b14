use spmoments_ffi::*;
use std::ffi::{c_char, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

fn last_error() -> String {
    let mut buf = vec![0u8; 256];
    let n = unsafe { spm_last_error(buf.as_mut_ptr().cast::<c_char>(), buf.len()) };
    buf.truncate(n.min(255));
    String::from_utf8(buf).unwrap()
}

#[test]
fn kloosterman_through_handle() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { spm_expsums_new(7, &mut h) }, SpmStatus::Ok);
    let (mut re, mut im) = (0.0, 0.0);
    for k in -3..=3 {
        assert_eq!(unsafe { spm_kloosterman(h, k, 2, &mut re, &mut im) }, SpmStatus::Ok);
        let direct = spmoments::expsums::kloosterman(k, 2, 7).unwrap();
        assert_eq!((re, im), (direct.re, direct.im));
    }
    let mut m = 0.0;
    assert_eq!(unsafe { spm_weil_margin(h, 3, 5, &mut m) }, SpmStatus::Ok);
    assert!(m >= 0.0);
    unsafe { spm_expsums_free(h) };
}

#[test]
fn error_codes_and_messages() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { spm_expsums_new(0, &mut h) }, SpmStatus::InvalidArgument);
    assert!(h.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { spm_expsums_new(3, ptr::null_mut()) }, SpmStatus::NullPointer);
    assert!(last_error().contains("null"));
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { spm_kloosterman(ptr::null(), 1, 1, &mut re, &mut im) }, SpmStatus::NullPointer);
    let missing = CString::new("/nonexistent/maass.jsonl").unwrap();
    let mut d = ptr::null_mut();
    let s = unsafe { spm_dataset_load(missing.as_ptr(), &mut d) };
    assert!(matches!(s, SpmStatus::Io | SpmStatus::Dataset), "{s:?}");
    // Freeing null is a no-op.
    unsafe {
        spm_expsums_free(ptr::null_mut());
        spm_weight_free(ptr::null_mut());
        spm_dataset_free(ptr::null_mut());
    }
}

#[test]
fn weight_matches_library() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { spm_weight_new(4.0, 16.0, &mut h) }, SpmStatus::Ok);
    let p = spmoments::weights::WeightParams::new(4.0, 16.0).unwrap();
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { spm_weight_eval(h, 3.0, 1e-12, &mut re, &mut im) }, SpmStatus::Ok);
    let w = spmoments::weights::w_ab(3.0, &p, 1e-12).unwrap();
    assert_eq!((re, im), (w.re, w.im));
    assert_eq!(unsafe { spm_weight_hat(h, 0.1, 1e-12, &mut re, &mut im) }, SpmStatus::Ok);
    let v = spmoments::weights::w_ab_hat_closed(0.1, &p, 1e-12).unwrap();
    assert_eq!((re, im), (v.re, v.im));
    assert_eq!(unsafe { spm_weight_hat(h, 0.1, -1.0, &mut re, &mut im) }, SpmStatus::InvalidArgument);
    unsafe { spm_weight_free(h) };
}

#[test]
fn dataset_and_criterion() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { spm_dataset_load(ptr::null(), &mut d) }, SpmStatus::Ok);
    let n = unsafe { spm_dataset_len(d) };
    assert!(n >= 3);
    let mut t = 0.0;
    assert_eq!(unsafe { spm_dataset_t(d, 0, &mut t) }, SpmStatus::Ok);
    assert!(t > 9.0 && t < 10.0);
    assert_eq!(unsafe { spm_dataset_t(d, n, &mut t) }, SpmStatus::InvalidArgument);
    let mut lam = 0.0;
    assert_eq!(unsafe { spm_dataset_lambda(d, 0, 1, &mut lam) }, SpmStatus::Ok);
    assert_eq!(lam, 1.0);

    let (mut pass, mut checks, mut failures) = (false, 0usize, 0usize);
    assert_eq!(unsafe { spm_run_criterion(9, 1, d, &mut pass, &mut checks, &mut failures) }, SpmStatus::Ok);
    assert!(pass && checks > 0 && failures == 0);
    assert_eq!(unsafe { spm_run_criterion(99, 1, d, &mut pass, &mut checks, &mut failures) }, SpmStatus::InvalidArgument);
    unsafe { spm_dataset_free(d) };
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { std::ffi::CStr::from_ptr(spm_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// Compile `smoke.c` against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/spmoments.h");
    assert!(header.exists(), "header not generated");
    // target/<profile>/ holds the uplifted static library.
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let exe_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = exe_dir.join("libspmoments_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out = tmp.join("spm_smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("cc available");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "smoke exited with {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), env!("CARGO_PKG_VERSION"));
}

use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qnlimit::{IfoConfig, Interferometer};
use qnlimit_ffi::*;

const OMEGA: f64 = 2.0 * std::f64::consts::PI * 100.0;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 512];
    unsafe {
        qnl_last_error_message(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

fn default_handle() -> *mut QnlInterferometer {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { qnl_interferometer_new_default(&mut h) },
        QnlStatus::Ok
    );
    assert!(!h.is_null());
    h
}

#[test]
fn optimal_spectrum_matches_library() {
    let h = default_handle();
    let (mut s, mut z) = (0.0, 0.0);
    assert_eq!(
        unsafe { qnl_optimal_spectrum(h, OMEGA, &mut s, &mut z) },
        QnlStatus::Ok
    );
    let direct = Interferometer::aligo_like()
        .optimal_spectrum(OMEGA)
        .unwrap();
    assert_eq!(s, direct.s_hh);
    assert_eq!(z, direct.zeta_opt);
    // zeta_opt is optional
    assert_eq!(
        unsafe { qnl_optimal_spectrum(h, OMEGA, &mut s, ptr::null_mut()) },
        QnlStatus::Ok
    );
    unsafe { qnl_interferometer_free(h) };
}

#[test]
fn json_constructor_and_round_trip() {
    let cfg = IfoConfig {
        eps_ext: 0.05,
        ..IfoConfig::aligo_like()
    };
    let text = CString::new(cfg.to_json_pretty()).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { qnl_interferometer_from_json(text.as_ptr(), 10.0, 1000.0, &mut h) },
        QnlStatus::Ok
    );

    let mut needed = 0usize;
    let status = unsafe { qnl_config_json(h, ptr::null_mut(), 0, &mut needed) };
    assert_eq!(status, QnlStatus::BufferTooSmall);
    let mut buf = vec![0 as c_char; needed + 1];
    assert_eq!(
        unsafe { qnl_config_json(h, buf.as_mut_ptr(), buf.len(), &mut needed) },
        QnlStatus::Ok
    );
    let back = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
    assert_eq!(IfoConfig::from_json(back).unwrap(), cfg);
    unsafe { qnl_interferometer_free(h) };
}

#[test]
fn config_errors_carry_field_names() {
    let mut cfg = IfoConfig::aligo_like();
    cfg.t_src = 1.5;
    let text = CString::new(serde_json::to_string(&cfg).unwrap()).unwrap();
    let mut h = ptr::null_mut();
    let status = unsafe { qnl_interferometer_from_json(text.as_ptr(), 5.0, 5000.0, &mut h) };
    assert_eq!(status, QnlStatus::InvalidConfig);
    assert!(h.is_null());
    assert!(last_error().contains("T_src"));

    let status = unsafe { qnl_interferometer_from_json(text.as_ptr(), 0.01, 5000.0, &mut h) };
    assert_eq!(status, QnlStatus::InvalidConfig);
}

#[test]
fn null_pointers_are_reported() {
    let mut s = 0.0;
    assert_eq!(
        unsafe { qnl_sql(ptr::null(), OMEGA, &mut s) },
        QnlStatus::NullPointer
    );
    let h = default_handle();
    assert_eq!(
        unsafe { qnl_sql(h, OMEGA, ptr::null_mut()) },
        QnlStatus::NullPointer
    );
    assert_eq!(
        unsafe { qnl_curve(h, ptr::null(), OMEGA, &mut s) },
        QnlStatus::NullPointer
    );
    assert_eq!(
        unsafe { qnl_interferometer_new_default(ptr::null_mut()) },
        QnlStatus::NullPointer
    );
    unsafe { qnl_interferometer_free(ptr::null_mut()) };
    unsafe { qnl_interferometer_free(h) };
}

#[test]
fn degeneracy_and_argument_codes() {
    let cfg = IfoConfig {
        internal_sqz: qnlimit::ifo::InternalSqueezing::None,
        ..IfoConfig::aligo_like()
    };
    let text = CString::new(cfg.to_json_pretty()).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { qnl_interferometer_from_json(text.as_ptr(), 5.0, 5000.0, &mut h) },
        QnlStatus::Ok
    );
    let mut s = 0.0;
    // amplitude quadrature is blind when tuned
    assert_eq!(
        unsafe { qnl_homodyne_spectrum(h, OMEGA, 0.0, &mut s) },
        QnlStatus::Degeneracy
    );
    assert_eq!(
        unsafe { qnl_optimal_spectrum(h, -1.0, &mut s, ptr::null_mut()) },
        QnlStatus::InvalidArgument
    );
    let bogus = CString::new("bogus").unwrap();
    assert_eq!(
        unsafe { qnl_curve(h, bogus.as_ptr(), OMEGA, &mut s) },
        QnlStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { qnl_loss_limit(h, OMEGA, 0.3, &mut s) },
        QnlStatus::InvalidArgument
    );
    unsafe { qnl_interferometer_free(h) };
}

#[test]
fn named_curves_match_dedicated_calls() {
    let h = default_handle();
    let eval = |name: &str| {
        let c = CString::new(name).unwrap();
        let mut s = 0.0;
        assert_eq!(
            unsafe { qnl_curve(h, c.as_ptr(), OMEGA, &mut s) },
            QnlStatus::Ok,
            "{name}"
        );
        s
    };
    let (mut a, mut b, mut c, mut d) = (0.0, 0.0, 0.0, 0.0);
    unsafe {
        qnl_sql(h, OMEGA, &mut a);
        qnl_qcrb(h, OMEGA, &mut b);
        qnl_loss_limit(h, OMEGA, 1.0, &mut c);
        qnl_fdt_floor(h, OMEGA, &mut d);
    }
    assert_eq!(eval("sql"), a);
    assert_eq!(eval("qcrb"), b);
    assert_eq!(eval("loss_limit_a1"), c);
    assert_eq!(eval("fdt_floor"), d);
    assert!(eval("full_fixed_zeta(1.5)") > 0.0);
    unsafe { qnl_interferometer_free(h) };
}

#[test]
fn sweep_matches_pointwise() {
    let h = default_handle();
    let f = [5.0, 50.0, 500.0, 5000.0];
    let mut out = [0.0; 4];
    assert_eq!(
        unsafe { qnl_sweep_optimal(h, f.as_ptr(), f.len(), out.as_mut_ptr()) },
        QnlStatus::Ok
    );
    let direct = Interferometer::aligo_like().sweep_optimal(&f).unwrap();
    assert_eq!(out.to_vec(), direct);
    assert_eq!(
        unsafe { qnl_sweep_optimal(h, ptr::null(), 0, ptr::null_mut()) },
        QnlStatus::Ok
    );
    unsafe { qnl_interferometer_free(h) };
}

#[test]
fn errors_are_thread_local() {
    let mut s = 0.0;
    assert_eq!(
        unsafe { qnl_sql(ptr::null(), OMEGA, &mut s) },
        QnlStatus::NullPointer
    );
    let other = std::thread::spawn(last_error).join().unwrap();
    assert!(other.is_empty());
    assert!(!last_error().is_empty());
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(qnl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/qnlimit.h")).unwrap();
    let source = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .filter_map(|rest| rest.split('(').next())
        .collect();
    assert!(exports.len() >= 10);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
}

/// Compiles and runs a C program against the generated header and the static
/// library. Skipped when no C compiler is available.
#[test]
fn c_program_links_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/abi-<hash> → target/<profile>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libqnlimit_ffi.a");
    assert!(
        lib.exists(),
        "static library not found at {}",
        lib.display()
    );
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}

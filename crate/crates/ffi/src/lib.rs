//! C ABI for `qnlimit`.
//!
//! Interferometers are opaque heap handles created by one of the
//! `qnl_interferometer_*` constructors and released with
//! [`qnl_interferometer_free`]. Every fallible call returns a [`QnlStatus`];
//! results go through out-pointers, and on failure a description is kept in
//! a thread-local buffer readable with [`qnl_last_error_message`].
//! Frequencies are sideband angular frequencies in rad/s unless the argument
//! name ends in `_hz`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qnlimit::budget::Curve;
use qnlimit::constants::angular;
use qnlimit::{Band, Error, IfoConfig, Interferometer};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QnlStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Out-of-range argument or malformed string.
    InvalidArgument = 2,
    /// Configuration failed to parse or validate.
    InvalidConfig = 3,
    /// Numerical degeneracy at the requested frequency (lasing, blind
    /// quadrature, singular covariance, expansion outside its domain).
    Degeneracy = 4,
    /// Caller-provided buffer is too small.
    BufferTooSmall = 5,
    /// Internal error; the library caught a panic.
    Internal = 6,
}

/// Opaque interferometer handle.
pub struct QnlInterferometer {
    inner: Interferometer,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> QnlStatus {
    match e {
        _ if e.is_degeneracy() => QnlStatus::Degeneracy,
        Error::InvalidParameter { .. } => QnlStatus::InvalidArgument,
        _ => QnlStatus::InvalidConfig,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (QnlStatus, String)>) -> QnlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QnlStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QnlStatus::Internal
        }
    }
}

fn lib<T>(r: qnlimit::Result<T>) -> Result<T, (QnlStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (QnlStatus, String) {
    (QnlStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn handle<'a>(
    h: *const QnlInterferometer,
) -> Result<&'a Interferometer, (QnlStatus, String)> {
    h.as_ref().map(|h| &h.inner).ok_or_else(|| null("handle"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), (QnlStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn string<'a>(s: *const c_char, what: &str) -> Result<&'a str, (QnlStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (QnlStatus::InvalidArgument, format!("`{what}` is not UTF-8")))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qnl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length excluding the NUL.
#[no_mangle]
pub unsafe extern "C" fn qnl_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

fn boxed(ifo: Interferometer) -> *mut QnlInterferometer {
    Box::into_raw(Box::new(QnlInterferometer { inner: ifo }))
}

/// Built-in design point over the default 5 Hz – 5 kHz band.
#[no_mangle]
pub unsafe extern "C" fn qnl_interferometer_new_default(
    out: *mut *mut QnlInterferometer,
) -> QnlStatus {
    guard(|| write(out, boxed(Interferometer::aligo_like()), "out"))
}

/// Parses a JSON configuration and binds it to the band `[f_min_hz, f_max_hz]`.
#[no_mangle]
pub unsafe extern "C" fn qnl_interferometer_from_json(
    json: *const c_char,
    f_min_hz: f64,
    f_max_hz: f64,
    out: *mut *mut QnlInterferometer,
) -> QnlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cfg = lib(IfoConfig::from_json(string(json, "json")?))?;
        let ifo = lib(Band::new(f_min_hz, f_max_hz).and_then(|b| Interferometer::new(cfg, b)))?;
        write(out, boxed(ifo), "out")
    })
}

/// Releases a handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qnl_interferometer_free(h: *mut QnlInterferometer) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Optimal-readout strain PSD [1/Hz] and the homodyne angle that attains it.
/// `zeta_opt` may be null.
#[no_mangle]
pub unsafe extern "C" fn qnl_optimal_spectrum(
    h: *const QnlInterferometer,
    omega: f64,
    s_hh: *mut f64,
    zeta_opt: *mut f64,
) -> QnlStatus {
    guard(|| {
        let r = lib(handle(h)?.optimal_spectrum(omega))?;
        write(s_hh, r.s_hh, "s_hh")?;
        if !zeta_opt.is_null() {
            zeta_opt.write(r.zeta_opt);
        }
        Ok(())
    })
}

/// Strain PSD for a fixed homodyne angle `zeta` [rad].
#[no_mangle]
pub unsafe extern "C" fn qnl_homodyne_spectrum(
    h: *const QnlInterferometer,
    omega: f64,
    zeta: f64,
    s_hh: *mut f64,
) -> QnlStatus {
    guard(|| {
        write(
            s_hh,
            lib(handle(h)?.homodyne_spectrum(omega, zeta))?,
            "s_hh",
        )
    })
}

/// Evaluates a budget curve by name (`sql`, `qcrb`, `loss_limit_a1`,
/// `loss_limit_a4`, `full_optimal`, `full_fixed_zeta(<rad>)`, `fdt_floor`,
/// `taylor_*`).
#[no_mangle]
pub unsafe extern "C" fn qnl_curve(
    h: *const QnlInterferometer,
    name: *const c_char,
    omega: f64,
    s_hh: *mut f64,
) -> QnlStatus {
    guard(|| {
        let curve: Curve = string(name, "name")?
            .parse()
            .map_err(|e: Error| (QnlStatus::InvalidArgument, e.to_string()))?;
        write(s_hh, lib(curve.eval(handle(h)?, omega))?, "s_hh")
    })
}

/// Lossless optimal-readout PSD (quantum Cramér–Rao bound).
#[no_mangle]
pub unsafe extern "C" fn qnl_qcrb(
    h: *const QnlInterferometer,
    omega: f64,
    s_hh: *mut f64,
) -> QnlStatus {
    guard(|| write(s_hh, lib(Curve::Qcrb.eval(handle(h)?, omega))?, "s_hh"))
}

/// Standard quantum limit PSD.
#[no_mangle]
pub unsafe extern "C" fn qnl_sql(
    h: *const QnlInterferometer,
    omega: f64,
    s_hh: *mut f64,
) -> QnlStatus {
    guard(|| write(s_hh, lib(Curve::Sql.eval(handle(h)?, omega))?, "s_hh"))
}

/// First-order loss-induced limit; `alpha` must be 1 or 0.25.
#[no_mangle]
pub unsafe extern "C" fn qnl_loss_limit(
    h: *const QnlInterferometer,
    omega: f64,
    alpha: f64,
    s_hh: *mut f64,
) -> QnlStatus {
    guard(|| {
        let alpha = lib(qnlimit::limits::Alpha::try_from(alpha))?;
        let ifo = handle(h)?;
        if !(omega.is_finite() && omega > 0.0) {
            return Err((
                QnlStatus::InvalidArgument,
                format!("Omega must be > 0, got {omega}"),
            ));
        }
        write(s_hh, qnlimit::limits::loss_limit(ifo, omega, alpha), "s_hh")
    })
}

/// Arm-loss floor from the fluctuation–dissipation theorem.
#[no_mangle]
pub unsafe extern "C" fn qnl_fdt_floor(
    h: *const QnlInterferometer,
    omega: f64,
    s_hh: *mut f64,
) -> QnlStatus {
    guard(|| {
        write(
            s_hh,
            lib(qnlimit::fdt::loss_floor_fdt(handle(h)?, omega))?,
            "s_hh",
        )
    })
}

/// Optimal-readout PSD at `n` frequencies in Hz, written to `out[0..n]`.
#[no_mangle]
pub unsafe extern "C" fn qnl_sweep_optimal(
    h: *const QnlInterferometer,
    f_hz: *const f64,
    n: usize,
    out: *mut f64,
) -> QnlStatus {
    guard(|| {
        let ifo = handle(h)?;
        if n == 0 {
            return Ok(());
        }
        if f_hz.is_null() {
            return Err(null("f_hz"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let freqs = std::slice::from_raw_parts(f_hz, n);
        let dst = std::slice::from_raw_parts_mut(out, n);
        for (d, &f) in dst.iter_mut().zip(freqs) {
            *d = lib(ifo.optimal_spectrum(angular(f)))
                .map_err(|(s, m)| (s, format!("at f = {f} Hz: {m}")))?
                .s_hh;
        }
        Ok(())
    })
}

/// Writes the handle's configuration as JSON into `buf` (NUL-terminated).
/// `needed` receives the length excluding the NUL; with a short buffer the
/// call returns `QnlStatus::BufferTooSmall` and writes nothing else.
#[no_mangle]
pub unsafe extern "C" fn qnl_config_json(
    h: *const QnlInterferometer,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> QnlStatus {
    guard(|| {
        let text = handle(h)?.config().to_json_pretty();
        write(needed, text.len(), "needed")?;
        if buf.is_null() || len <= text.len() {
            return Err((
                QnlStatus::BufferTooSmall,
                format!("need {} bytes", text.len() + 1),
            ));
        }
        std::ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
        *buf.add(text.len()) = 0;
        Ok(())
    })
}

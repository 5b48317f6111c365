//! C ABI for `udw-core`.
//!
//! States cross the boundary as opaque `UdwState` handles. Every fallible call
//! returns a `UdwStatus`; on failure `udw_last_error` holds a message for the
//! calling thread. Strings handed out by the library must be released with
//! `udw_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use udw_core::{
    delta0_of_state, find_dark_point, find_death_temperature, measure_all, product_state,
    revival_check, run_sweep_with_threads, temperature_from_acceleration, udw_equilibrium_state,
    write_csv, BlochQubit, DensityMatrix, Error, Measure, SweepSpec, UdwParams,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UdwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Numerical = 3,
    Panic = 4,
}

pub const UDW_MEASURE_CONCURRENCE: u32 = 1;
pub const UDW_MEASURE_LQU: u32 = 1 << 1;
pub const UDW_MEASURE_UIN: u32 = 1 << 2;
pub const UDW_MEASURE_COHERENCE: u32 = 1 << 3;
pub const UDW_MEASURE_ALL: u32 = 0b1111;

/// Opaque two-qubit density matrix.
pub struct UdwState {
    rho: DensityMatrix,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct UdwMeasureReport {
    pub concurrence: f64,
    pub lqu: f64,
    pub uin: f64,
    pub coherence_l1: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> UdwStatus {
    if err.is_domain_error() {
        UdwStatus::InvalidArgument
    } else {
        UdwStatus::Numerical
    }
}

/// Runs `body`, translating errors and panics into status codes.
fn guard<F>(body: F) -> UdwStatus
where
    F: FnOnce() -> Result<(), (UdwStatus, String)>,
{
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => UdwStatus::Ok,
        Ok(Err((status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("panic inside udw-ffi".into());
            UdwStatus::Panic
        }
    }
}

fn core_err(err: Error) -> (UdwStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(name: &str) -> (UdwStatus, String) {
    (UdwStatus::NullPointer, format!("{name} is NULL"))
}

/// Message describing the last failure on this thread, or NULL. The pointer
/// stays valid until the next `udw_*` call on the same thread.
#[no_mangle]
pub extern "C" fn udw_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds the equilibrium state for `(t_u, omega, delta0)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn udw_state_new_equilibrium(
    t_u: f64,
    omega: f64,
    delta0: f64,
    out: *mut *mut UdwState,
) -> UdwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = UdwParams::new(t_u, omega, delta0).map_err(core_err)?;
        let rho = udw_equilibrium_state(&params).map_err(core_err)?;
        *out = Box::into_raw(Box::new(UdwState { rho }));
        Ok(())
    })
}

/// Builds `ρ_a ⊗ ρ_b` from two Bloch vectors of three doubles each.
///
/// # Safety
/// `n` and `m` must each point to 3 readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn udw_state_new_product(
    n: *const f64,
    m: *const f64,
    out: *mut *mut UdwState,
) -> UdwStatus {
    guard(|| {
        if n.is_null() {
            return Err(null("n"));
        }
        if m.is_null() {
            return Err(null("m"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let read = |p: *const f64| [*p, *p.add(1), *p.add(2)];
        let a = BlochQubit::new(read(n)).map_err(core_err)?;
        let b = BlochQubit::new(read(m)).map_err(core_err)?;
        let rho = product_state(&a, &b).map_err(core_err)?;
        *out = Box::into_raw(Box::new(UdwState { rho }));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `state` must come from a `udw_state_new_*` call and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn udw_state_free(state: *mut UdwState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Copies the 16 entries, row-major in the basis |00>, |01>, |10>, |11>.
///
/// # Safety
/// `state` must be a live handle; `re` and `im` must each have room for 16 doubles.
#[no_mangle]
pub unsafe extern "C" fn udw_state_entries(
    state: *const UdwState,
    re: *mut f64,
    im: *mut f64,
) -> UdwStatus {
    guard(|| {
        let state = state.as_ref().ok_or_else(|| null("state"))?;
        if re.is_null() {
            return Err(null("re"));
        }
        if im.is_null() {
            return Err(null("im"));
        }
        for (k, z) in state.rho.matrix().entries().iter().enumerate() {
            *re.add(k) = z.re;
            *im.add(k) = z.im;
        }
        Ok(())
    })
}

/// `Σ_i Tr[ρ σ_i ⊗ σ_i]`.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn udw_state_delta0(state: *const UdwState, out: *mut f64) -> UdwStatus {
    guard(|| {
        let state = state.as_ref().ok_or_else(|| null("state"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = delta0_of_state(&state.rho);
        Ok(())
    })
}

/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn udw_measure_all(
    state: *const UdwState,
    out: *mut UdwMeasureReport,
) -> UdwStatus {
    guard(|| {
        let state = state.as_ref().ok_or_else(|| null("state"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = measure_all(&state.rho).map_err(core_err)?;
        *out = UdwMeasureReport {
            concurrence: r.concurrence,
            lqu: r.lqu,
            uin: r.uin,
            coherence_l1: r.coherence_l1,
        };
        Ok(())
    })
}

unsafe fn write_optional(found: *mut bool, t_u: *mut f64, value: Option<f64>) {
    *found = value.is_some();
    *t_u = value.unwrap_or(f64::NAN);
}

/// Entanglement death temperature. `*found` is false when there is none; `*t_u` is then NaN.
///
/// # Safety
/// `found` and `t_u` must be writable.
#[no_mangle]
pub unsafe extern "C" fn udw_death_temperature(
    omega: f64,
    delta0: f64,
    found: *mut bool,
    t_u: *mut f64,
) -> UdwStatus {
    guard(|| {
        if found.is_null() || t_u.is_null() {
            return Err(null("found/t_u"));
        }
        let p = find_death_temperature(omega, delta0).map_err(core_err)?;
        write_optional(found, t_u, p.t_u);
        Ok(())
    })
}

/// Coherence dark point. `*found` is false when there is none; `*t_u` is then NaN.
///
/// # Safety
/// `found` and `t_u` must be writable.
#[no_mangle]
pub unsafe extern "C" fn udw_dark_point(
    omega: f64,
    delta0: f64,
    found: *mut bool,
    t_u: *mut f64,
) -> UdwStatus {
    guard(|| {
        if found.is_null() || t_u.is_null() {
            return Err(null("found/t_u"));
        }
        let p = find_dark_point(omega, delta0).map_err(core_err)?;
        write_optional(found, t_u, p.t_u);
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn udw_revival_check(omega: f64, delta0: f64, out: *mut bool) -> UdwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = revival_check(omega, delta0).map_err(core_err)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn udw_temperature_from_acceleration(
    acceleration: f64,
    out: *mut f64,
) -> UdwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = temperature_from_acceleration(acceleration).map_err(core_err)?;
        Ok(())
    })
}

fn measures_from_mask(mask: u32) -> Result<Vec<Measure>, (UdwStatus, String)> {
    if mask == 0 || mask & !UDW_MEASURE_ALL != 0 {
        return Err((
            UdwStatus::InvalidArgument,
            format!("measures: invalid mask {mask:#x}"),
        ));
    }
    Ok(Measure::ALL
        .iter()
        .enumerate()
        .filter(|(bit, _)| mask & (1 << bit) != 0)
        .map(|(_, &m)| m)
        .collect())
}

unsafe fn read_slice<'a>(
    name: &str,
    data: *const f64,
    len: usize,
) -> Result<&'a [f64], (UdwStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(name));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

/// Runs a sweep and returns the CSV text (same bytes as the `sweep` CLI command).
/// `threads = 0` uses the default pool size. Free `*out_csv` with `udw_string_free`.
///
/// # Safety
/// `omegas` / `delta0s` must point to `n_omegas` / `n_delta0s` readable doubles
/// and `out_csv` must be writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn udw_sweep_csv(
    tu_start: f64,
    tu_stop: f64,
    tu_steps: usize,
    omegas: *const f64,
    n_omegas: usize,
    delta0s: *const f64,
    n_delta0s: usize,
    measure_mask: u32,
    threads: usize,
    out_csv: *mut *mut c_char,
) -> UdwStatus {
    guard(|| {
        if out_csv.is_null() {
            return Err(null("out_csv"));
        }
        let spec = SweepSpec {
            tu_start,
            tu_stop,
            tu_steps,
            omegas: read_slice("omegas", omegas, n_omegas)?.to_vec(),
            delta0s: read_slice("delta0s", delta0s, n_delta0s)?.to_vec(),
            measures: measures_from_mask(measure_mask)?,
        };
        let threads = (threads > 0).then_some(threads);
        let rows = run_sweep_with_threads(&spec, threads).map_err(core_err)?;
        let mut buf = Vec::new();
        write_csv(&spec.columns(), &rows, &mut buf).map_err(core_err)?;
        let text = CString::new(buf).map_err(|e| (UdwStatus::Numerical, e.to_string()))?;
        *out_csv = text.into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn udw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Version string of the library, static storage.
#[no_mangle]
pub extern "C" fn udw_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version contains NUL"),
        };
    VERSION.as_ptr()
}

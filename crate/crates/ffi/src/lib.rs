//! C ABI over `ncorr`.
//!
//! States live behind an opaque `NcState` handle created by one of the
//! `nc_state_*` constructors and released with `nc_state_free`. Every fallible
//! call returns an `NcStatus`; on failure a message for the calling thread is
//! available from `nc_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ncorr::measures::{evaluate, MeasureId, MeasureOptions};
use ncorr::qmat::{c64, ComplexMatrix};
use ncorr::search::SearchConfig;
use ncorr::states::{
    load_state, make_horodecki, make_pseudo_entangled, make_sigma, random_density_matrix,
    store_state,
};
use ncorr::{DensityMatrix, Error};

/// Opaque density matrix handle.
pub struct NcState {
    inner: DensityMatrix,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Validation = 3,
    Numeric = 4,
    CapExceeded = 5,
    Io = 6,
    Parse = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcMeasure {
    D = 0,
    G = 1,
    Dg = 2,
    K = 3,
    N = 4,
}

impl From<NcMeasure> for MeasureId {
    fn from(m: NcMeasure) -> Self {
        match m {
            NcMeasure::D => MeasureId::D,
            NcMeasure::G => MeasureId::G,
            NcMeasure::Dg => MeasureId::DG,
            NcMeasure::K => MeasureId::K,
            NcMeasure::N => MeasureId::N,
        }
    }
}

/// Search and enumeration settings; start from `nc_default_options()`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct NcOptions {
    pub n_samples: usize,
    pub seed: u64,
    pub refine_steps: usize,
    pub refine_step: f64,
    pub include_deterministic_candidates: bool,
    pub partition_cap: u64,
}

impl From<&NcOptions> for MeasureOptions {
    fn from(o: &NcOptions) -> Self {
        MeasureOptions {
            search: SearchConfig {
                n_samples: o.n_samples,
                seed: o.seed,
                refine_steps: o.refine_steps,
                refine_step: o.refine_step,
                include_deterministic_candidates: o.include_deterministic_candidates,
            },
            partition_cap: o.partition_cap,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> NcStatus {
    match e {
        Error::NonHermitian { .. } | Error::ValidationFailure(_) => NcStatus::Validation,
        Error::NoConvergence { .. } | Error::DegenerateSpectrum { .. } => NcStatus::Numeric,
        Error::BadSubsystemIndex { .. }
        | Error::DimensionMismatch(_)
        | Error::NotAProbabilityVector(_)
        | Error::ParamOutOfRange(_) => NcStatus::InvalidArgument,
        Error::PartitionCapExceeded { .. } => NcStatus::CapExceeded,
        Error::ParseError(_) => NcStatus::Parse,
        Error::Io(_) => NcStatus::Io,
    }
}

/// Runs `f`, recording any error or panic for `nc_last_error`.
fn guard(f: impl FnOnce() -> Result<(), (NcStatus, String)>) -> NcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            NcStatus::Panic
        }
    }
}

fn lib<T>(r: ncorr::Result<T>) -> Result<T, (NcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (NcStatus, String) {
    (NcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn slice_arg<'a, T>(
    p: *const T,
    len: usize,
    what: &str,
) -> Result<&'a [T], (NcStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn path_arg(p: *const c_char) -> Result<String, (NcStatus, String)> {
    if p.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(str::to_owned)
        .map_err(|_| (NcStatus::InvalidArgument, "path is not valid UTF-8".into()))
}

unsafe fn emit(
    out: *mut *mut NcState,
    build: impl FnOnce() -> ncorr::Result<DensityMatrix>,
) -> NcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let inner = lib(build())?;
        *out = Box::into_raw(Box::new(NcState { inner }));
        Ok(())
    })
}

/// Message for the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn nc_default_options() -> NcOptions {
    let d = MeasureOptions::default();
    NcOptions {
        n_samples: d.search.n_samples,
        seed: d.search.seed,
        refine_steps: d.search.refine_steps,
        refine_step: d.search.refine_step,
        include_deterministic_candidates: d.search.include_deterministic_candidates,
        partition_cap: d.partition_cap,
    }
}

/// State from subsystem dimensions and a row-major matrix given as
/// interleaved (re, im) pairs, `2 * D * D` doubles for total dimension `D`.
///
/// # Safety
/// `dims` must point to `n_dims` values and `re_im` to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn nc_state_from_matrix(
    dims: *const usize,
    n_dims: usize,
    re_im: *const f64,
    len: usize,
    out: *mut *mut NcState,
) -> NcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let dims = slice_arg(dims, n_dims, "dims")?.to_vec();
        let values = slice_arg(re_im, len, "re_im")?;
        let d: usize = dims.iter().product();
        if dims.is_empty() || len != 2 * d * d {
            return Err((
                NcStatus::InvalidArgument,
                format!(
                    "expected {} doubles for dims {dims:?}, got {len}",
                    2 * d * d
                ),
            ));
        }
        let data = values
            .chunks_exact(2)
            .map(|c| c64::new(c[0], c[1]))
            .collect();
        let matrix = ComplexMatrix::from_vec(d, d, data).expect("length checked");
        let inner = lib(DensityMatrix::new(dims, matrix))?;
        *out = Box::into_raw(Box::new(NcState { inner }));
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn nc_state_pseudo_entangled(p: f64, out: *mut *mut NcState) -> NcStatus {
    emit(out, || make_pseudo_entangled(p))
}

/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn nc_state_sigma(p: f64, out: *mut *mut NcState) -> NcStatus {
    emit(out, || make_sigma(p))
}

/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn nc_state_horodecki(b: f64, out: *mut *mut NcState) -> NcStatus {
    emit(out, || make_horodecki(b))
}

/// Seeded random state of the given rank.
///
/// # Safety
/// `dims` must point to `n_dims` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_state_random(
    dims: *const usize,
    n_dims: usize,
    rank: usize,
    seed: u64,
    out: *mut *mut NcState,
) -> NcStatus {
    let dims = match slice_arg(dims, n_dims, "dims") {
        Ok(d) => d.to_vec(),
        Err((status, msg)) => {
            set_last_error(msg);
            return status;
        }
    };
    emit(out, || random_density_matrix(&dims, rank, seed))
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_state_load_json(
    path: *const c_char,
    out: *mut *mut NcState,
) -> NcStatus {
    let path = match path_arg(path) {
        Ok(p) => p,
        Err((status, msg)) => {
            set_last_error(msg);
            return status;
        }
    };
    emit(out, || load_state(&path))
}

/// # Safety
/// `state` must come from an `nc_state_*` constructor; `path` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn nc_state_save_json(
    state: *const NcState,
    path: *const c_char,
) -> NcStatus {
    guard(|| {
        let state = state.as_ref().ok_or_else(|| null("state"))?;
        let path = path_arg(path)?;
        lib(store_state(&path, &state.inner))
    })
}

/// Total Hilbert-space dimension, 0 for NULL.
///
/// # Safety
/// `state` must be NULL or come from an `nc_state_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn nc_state_dim(state: *const NcState) -> usize {
    state.as_ref().map_or(0, |s| s.inner.total_dim())
}

/// Number of subsystems, 0 for NULL.
///
/// # Safety
/// `state` must be NULL or come from an `nc_state_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn nc_state_parties(state: *const NcState) -> usize {
    state.as_ref().map_or(0, |s| s.inner.parties())
}

/// # Safety
/// `state` must be NULL or come from an `nc_state_*` constructor, and must
/// not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nc_state_free(state: *mut NcState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Evaluates one measure. `options` may be NULL for the defaults.
///
/// # Safety
/// `state` must come from an `nc_state_*` constructor; `options` must be NULL
/// or valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_measure(
    state: *const NcState,
    measure: NcMeasure,
    options: *const NcOptions,
    out: *mut f64,
) -> NcStatus {
    guard(|| {
        let state = state.as_ref().ok_or_else(|| null("state"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let opts = options
            .as_ref()
            .map_or_else(MeasureOptions::default, MeasureOptions::from);
        *out = lib(evaluate(measure.into(), &state.inner, &opts))?.value;
        Ok(())
    })
}

/// Evaluates D, G, D_G, K, N into `out[0..5]` in that order.
///
/// # Safety
/// As for `nc_measure`, with `out` pointing to 5 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn nc_measure_all(
    state: *const NcState,
    options: *const NcOptions,
    out: *mut f64,
) -> NcStatus {
    guard(|| {
        let state = state.as_ref().ok_or_else(|| null("state"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let opts = options
            .as_ref()
            .map_or_else(MeasureOptions::default, MeasureOptions::from);
        let out = std::slice::from_raw_parts_mut(out, MeasureId::ALL.len());
        for (slot, id) in out.iter_mut().zip(MeasureId::ALL) {
            *slot = lib(evaluate(id, &state.inner, &opts))?.value;
        }
        Ok(())
    })
}

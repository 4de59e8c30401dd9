use std::ffi::{CStr, CString};
use std::ptr;

use ncorr_ffi::*;

fn quick() -> NcOptions {
    NcOptions {
        n_samples: 500,
        refine_steps: 50,
        ..nc_default_options()
    }
}

fn last_error() -> String {
    let p = nc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn pseudo_entangled_measures() {
    let mut state = ptr::null_mut();
    unsafe {
        assert_eq!(nc_state_pseudo_entangled(1.0, &mut state), NcStatus::Ok);
        assert_eq!(nc_state_dim(state), 4);
        assert_eq!(nc_state_parties(state), 2);
        let mut out = [0.0; 5];
        assert_eq!(
            nc_measure_all(state, &quick(), out.as_mut_ptr()),
            NcStatus::Ok
        );
        for (got, want) in out.iter().zip([1.0, 1.0, 1.0, 2.0, 0.5]) {
            assert!((got - want).abs() < 1e-9, "{out:?}");
        }
        let mut k = 0.0;
        assert_eq!(
            nc_measure(state, NcMeasure::K, ptr::null(), &mut k),
            NcStatus::Ok
        );
        assert!((k - 2.0).abs() < 1e-12);
        nc_state_free(state);
    }
}

#[test]
fn matrix_constructor_round_trip() {
    let dims = [2usize, 2];
    let mut re_im = vec![0.0; 32];
    for i in 0..4 {
        re_im[2 * (i * 4 + i)] = [0.1, 0.2, 0.3, 0.4][i];
    }
    let mut state = ptr::null_mut();
    unsafe {
        assert_eq!(
            nc_state_from_matrix(dims.as_ptr(), 2, re_im.as_ptr(), re_im.len(), &mut state),
            NcStatus::Ok
        );
        let mut dg = 1.0;
        assert_eq!(
            nc_measure(state, NcMeasure::Dg, ptr::null(), &mut dg),
            NcStatus::Ok
        );
        assert!(dg.abs() < 1e-12);

        let dir = tempfile::tempdir().unwrap();
        let path = CString::new(dir.path().join("s.json").to_str().unwrap()).unwrap();
        assert_eq!(nc_state_save_json(state, path.as_ptr()), NcStatus::Ok);
        let mut loaded = ptr::null_mut();
        assert_eq!(nc_state_load_json(path.as_ptr(), &mut loaded), NcStatus::Ok);
        assert_eq!(nc_state_dim(loaded), 4);
        nc_state_free(loaded);
        nc_state_free(state);
    }
}

#[test]
fn error_codes() {
    let mut state = ptr::null_mut();
    unsafe {
        assert_eq!(nc_state_sigma(0.7, &mut state), NcStatus::InvalidArgument);
        assert!(state.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(
            nc_state_pseudo_entangled(0.5, ptr::null_mut()),
            NcStatus::NullPointer
        );

        let dims = [2usize, 2];
        let bad = [0.0; 8];
        assert_eq!(
            nc_state_from_matrix(dims.as_ptr(), 2, bad.as_ptr(), bad.len(), &mut state),
            NcStatus::InvalidArgument
        );

        let mut not_hermitian = vec![0.0; 32];
        not_hermitian[0] = 1.0;
        not_hermitian[2] = 0.3;
        assert_eq!(
            nc_state_from_matrix(dims.as_ptr(), 2, not_hermitian.as_ptr(), 32, &mut state),
            NcStatus::Validation
        );

        let missing = CString::new("/nonexistent/state.json").unwrap();
        assert_eq!(
            nc_state_load_json(missing.as_ptr(), &mut state),
            NcStatus::Io
        );

        let mut v = 0.0;
        assert_eq!(
            nc_measure(ptr::null(), NcMeasure::N, ptr::null(), &mut v),
            NcStatus::NullPointer
        );
        nc_state_free(ptr::null_mut());
    }
}

#[test]
fn partition_cap_reported() {
    let mut state = ptr::null_mut();
    let dims = [2usize, 2];
    unsafe {
        assert_eq!(
            nc_state_random(dims.as_ptr(), 2, 4, 3, &mut state),
            NcStatus::Ok
        );
        let opts = NcOptions {
            partition_cap: 15,
            ..quick()
        };
        let mut g = 0.0;
        assert_eq!(
            nc_measure(state, NcMeasure::G, &opts, &mut g),
            NcStatus::CapExceeded
        );
        assert!(last_error().contains("16"), "{}", last_error());
        nc_state_free(state);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(nc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

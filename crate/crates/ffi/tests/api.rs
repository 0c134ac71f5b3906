use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qes3body_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let mut needed = 0usize;
    unsafe {
        assert_eq!(qes3_last_error_message(ptr::null_mut(), 0, &mut needed), Qes3Status::Ok);
        let mut buf = vec![0 as c_char; needed];
        assert_eq!(qes3_last_error_message(buf.as_mut_ptr(), needed, ptr::null_mut()), Qes3Status::Ok);
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

fn params(n: &str, omega: &str, gamma: &str, a: &str) -> *mut Qes3Params {
    let mut p = ptr::null_mut();
    let st = unsafe { qes3_params_new(c(n).as_ptr(), c(omega).as_ptr(), c(gamma).as_ptr(), c(a).as_ptr(), &mut p) };
    assert_eq!(st, Qes3Status::Ok, "{}", last_error());
    p
}

#[test]
fn symmetry_commutes_with_laplacian() {
    let p = params("2", "1", "1", "1");
    unsafe {
        let (mut lap, mut l1, mut com) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(qes3_operator_from_catalog(p, c("delta_R(rho)").as_ptr(), &mut lap), Qes3Status::Ok);
        assert_eq!(qes3_operator_from_catalog(p, c("L1(rho)").as_ptr(), &mut l1), Qes3Status::Ok);
        assert_eq!(qes3_operator_commutator(lap, l1, &mut com), Qes3Status::Ok);
        let mut zero = false;
        assert_eq!(qes3_operator_is_zero(com, &mut zero), Qes3Status::Ok);
        assert!(zero);
        assert_eq!(qes3_operator_is_zero(l1, &mut zero), Qes3Status::Ok);
        assert!(!zero);
        for h in [lap, l1, com] {
            qes3_operator_free(h);
        }
        qes3_params_free(p);
    }
}

#[test]
fn json_round_trip_and_buffer_sizes() {
    let p = params("1", "3/2", "1/2", "0");
    unsafe {
        let mut op = ptr::null_mut();
        assert_eq!(qes3_operator_from_catalog(p, c("h_qes(tau1)").as_ptr(), &mut op), Qes3Status::Ok);
        let mut needed = 0usize;
        assert_eq!(qes3_operator_to_json(op, ptr::null_mut(), 0, &mut needed), Qes3Status::Ok);
        let mut small = vec![0 as c_char; 4];
        assert_eq!(qes3_operator_to_json(op, small.as_mut_ptr(), 4, ptr::null_mut()), Qes3Status::BufferTooSmall);
        let mut buf = vec![0 as c_char; needed];
        assert_eq!(qes3_operator_to_json(op, buf.as_mut_ptr(), needed, ptr::null_mut()), Qes3Status::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(qes3_operator_from_json(buf.as_ptr(), &mut back), Qes3Status::Ok);
        let mut again = vec![0 as c_char; needed];
        assert_eq!(qes3_operator_to_json(back, again.as_mut_ptr(), needed, ptr::null_mut()), Qes3Status::Ok);
        assert_eq!(CStr::from_ptr(buf.as_ptr()), CStr::from_ptr(again.as_ptr()));
        qes3_operator_free(op);
        qes3_operator_free(back);
        qes3_params_free(p);
    }
}

#[test]
fn exactly_solvable_energies() {
    let p = params("3", "1", "1", "0");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qes3_spectrum_solve(p, c("p1").as_ptr(), c("es").as_ptr(), &mut s), Qes3Status::Ok);
        let mut n = 0usize;
        assert_eq!(qes3_spectrum_len(s, &mut n), Qes3Status::Ok);
        assert_eq!(n, 4);
        for (i, expected) in [24.0, 36.0, 48.0, 60.0].into_iter().enumerate() {
            let mut e = 0.0;
            assert_eq!(
                qes3_spectrum_get(s, i, ptr::null_mut(), ptr::null_mut(), ptr::null_mut(), &mut e),
                Qes3Status::Ok
            );
            assert_eq!(e, expected);
        }
        assert_eq!(
            qes3_spectrum_get(s, 9, ptr::null_mut(), ptr::null_mut(), ptr::null_mut(), ptr::null_mut()),
            Qes3Status::InvalidInput
        );
        qes3_spectrum_free(s);
        qes3_params_free(p);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut p = ptr::null_mut();
        let st = qes3_params_new(c("2").as_ptr(), c("-1").as_ptr(), c("1").as_ptr(), c("0").as_ptr(), &mut p);
        assert_eq!(st, Qes3Status::InvalidInput);
        assert!(last_error().contains("omega"));
        assert_eq!(
            qes3_params_new(ptr::null(), c("1").as_ptr(), c("1").as_ptr(), c("0").as_ptr(), &mut p),
            Qes3Status::NullPointer
        );

        let formal = params("3/2", "1", "1", "1");
        let mut s = ptr::null_mut();
        assert_eq!(
            qes3_spectrum_solve(formal, c("p1").as_ptr(), c("qes").as_ptr(), &mut s),
            Qes3Status::InvarianceViolation
        );
        assert!(last_error().contains("invariance"));
        let mut op = ptr::null_mut();
        assert_eq!(qes3_operator_from_catalog(formal, c("nope").as_ptr(), &mut op), Qes3Status::NotFound);
        qes3_params_free(formal);

        let mut v = 0.0;
        assert_eq!(qes3_effective_potential([1.0, 1.0, 1.0].as_ptr(), &mut v), Qes3Status::Ok);
        assert_eq!(last_error(), "");
        assert!((v + 0.125).abs() < 1e-15);
        assert_eq!(qes3_effective_potential([1.0, 1.0, 4.0].as_ptr(), &mut v), Qes3Status::DivergentPotential);
        assert_eq!(qes3_ricci_scalar([1.0, 1.0, 9.0].as_ptr(), &mut v), Qes3Status::SingularConfiguration);
        let mut w = [0.0; 3];
        assert_eq!(qes3_w_coords([1.0, 1.0, 1.0].as_ptr(), w.as_mut_ptr()), Qes3Status::UndefinedW3);
        assert_eq!(qes3_w_coords([1.0, 2.0, 3.0].as_ptr(), w.as_mut_ptr()), Qes3Status::Ok);
        assert_eq!(w[0], 6.0);
    }
}

#[test]
fn oracle_from_c() {
    let (mut err, mut pass) = (0.0, false);
    let st = unsafe { qes3_oracle_run(c("reduction").as_ptr(), 5, 1e-4, 1, &mut err, &mut pass) };
    assert_eq!(st, Qes3Status::Ok);
    assert!(pass && err < 1e-4);
    let st = unsafe { qes3_oracle_run(c("bogus").as_ptr(), 5, 1e-4, 1, &mut err, &mut pass) };
    assert_eq!(st, Qes3Status::InvalidInput);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(qes3_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

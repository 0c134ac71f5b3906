//! C ABI over the operator library.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free`. Every function returns a [`Qes3Status`];
//! the message of the last failure on the calling thread is available from
//! [`qes3_last_error_message`]. Rationals are passed as strings such as
//! `"3/2"`, points as three `double`s.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qes3body::geometry::{effective_potential, ricci_scalar, w_coords, TrianglePoint};
use qes3body::operators::{build_catalog, parse_rational, MassTriple, PotentialParams, Variant};
use qes3body::oracle::{run_check, CheckKind, Tolerances};
use qes3body::polyops::DiffOperator;
use qes3body::spectra::{solve_space, Space, Spectrum};
use qes3body::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qes3Status {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    ChartMismatch = 3,
    InvarianceViolation = 4,
    AssemblyViolation = 5,
    NumericalFailure = 6,
    SingularConfiguration = 7,
    DivergentPotential = 8,
    UndefinedW3 = 9,
    Conditioning = 10,
    NotFound = 11,
    BufferTooSmall = 12,
    Panic = 13,
    Other = 14,
}

/// Parameters `N, ω, γ, A` of the Hamiltonian.
pub struct Qes3Params(PotentialParams);

/// A differential operator with exact rational coefficients.
pub struct Qes3Operator(DiffOperator);

/// Eigenvalues and physical energies of one matrix problem.
pub struct Qes3Spectrum(Spectrum);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> Qes3Status {
    match err {
        Error::InvalidInput(_) | Error::Json(_) => Qes3Status::InvalidInput,
        Error::ChartMismatch { .. } => Qes3Status::ChartMismatch,
        Error::InvarianceViolation { .. } => Qes3Status::InvarianceViolation,
        Error::AssemblyIdentityViolation { .. } => Qes3Status::AssemblyViolation,
        Error::NumericalFailure { .. } => Qes3Status::NumericalFailure,
        Error::SingularConfiguration(_) | Error::SingularPoint(_) => Qes3Status::SingularConfiguration,
        Error::DivergentPotential(_) => Qes3Status::DivergentPotential,
        Error::UndefinedW3(_) => Qes3Status::UndefinedW3,
        Error::Conditioning(_) => Qes3Status::Conditioning,
        _ => Qes3Status::Other,
    }
}

struct Failure(Qes3Status, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> Qes3Status {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error(String::new());
            Qes3Status::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            Qes3Status::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(Qes3Status::NullPointer, format!("{} is null", what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(Qes3Status::InvalidInput, format!("{} is not UTF-8", what)))
}

unsafe fn rational(p: *const c_char, what: &str) -> Result<qes3body::polyops::Rational, Failure> {
    Ok(parse_rational(text(p, what)?)?)
}

unsafe fn point(rho: *const f64) -> Result<TrianglePoint, Failure> {
    if rho.is_null() {
        return Err(null("rho"));
    }
    let s = std::slice::from_raw_parts(rho, 3);
    Ok(TrianglePoint::from_rho([s[0], s[1], s[2]])?)
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Copy `s` NUL-terminated into `buf`; `needed` receives the size including
/// the terminator, so a call with `len = 0` asks for the size.
unsafe fn write_text(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> Result<(), Failure> {
    let bytes = s.as_bytes();
    if let Some(n) = needed.as_mut() {
        *n = bytes.len() + 1;
    }
    if len == 0 {
        return Ok(());
    }
    if buf.is_null() {
        return Err(null("buf"));
    }
    if len < bytes.len() + 1 {
        return Err(Failure(
            Qes3Status::BufferTooSmall,
            format!("buffer holds {} bytes, {} needed", len, bytes.len() + 1),
        ));
    }
    std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
    *buf.add(bytes.len()) = 0;
    Ok(())
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qes3_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the last failed call on this thread (empty after success).
///
/// # Safety
/// `buf` must point to `len` writable bytes when `len > 0`; `needed` may be
/// null.
#[no_mangle]
pub unsafe extern "C" fn qes3_last_error_message(buf: *mut c_char, len: usize, needed: *mut usize) -> Qes3Status {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match write_text(&msg, buf, len, needed) {
        Ok(()) => Qes3Status::Ok,
        Err(Failure(s, _)) => s,
    }
}

/// # Safety
/// The four strings must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qes3_params_new(
    n_level: *const c_char,
    omega: *const c_char,
    gamma: *const c_char,
    a_coupling: *const c_char,
    out: *mut *mut Qes3Params,
) -> Qes3Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        let p = PotentialParams::with_formal_level(
            rational(n_level, "n_level")?,
            rational(omega, "omega")?,
            rational(gamma, "gamma")?,
            rational(a_coupling, "a_coupling")?,
        )?;
        *slot = Box::into_raw(Box::new(Qes3Params(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must come from [`qes3_params_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qes3_params_free(p: *mut Qes3Params) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Look up a named operator of the catalog (equal masses), e.g.
/// `"L1(rho)"` or `"h_qes(tau)"`.
///
/// # Safety
/// `params` must be a live handle, `name` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qes3_operator_from_catalog(
    params: *const Qes3Params,
    name: *const c_char,
    out: *mut *mut Qes3Operator,
) -> Qes3Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        let params = handle(params, "params")?;
        let name = text(name, "name")?;
        let cat = build_catalog(&params.0, &MassTriple::equal())?;
        let entry = cat
            .find(name)
            .ok_or_else(|| Failure(Qes3Status::NotFound, format!("no operator named {:?}", name)))?;
        *slot = Box::into_raw(Box::new(Qes3Operator(DiffOperator::from_json_value(&entry.operator)?)));
        Ok(())
    })
}

/// # Safety
/// `json` must be NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qes3_operator_from_json(json: *const c_char, out: *mut *mut Qes3Operator) -> Qes3Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = Box::into_raw(Box::new(Qes3Operator(DiffOperator::from_json(text(json, "json")?)?)));
        Ok(())
    })
}

/// Canonical JSON of an operator; see [`qes3_last_error_message`] for the
/// buffer convention.
///
/// # Safety
/// `op` must be a live handle; `buf` must hold `len` bytes when `len > 0`.
#[no_mangle]
pub unsafe extern "C" fn qes3_operator_to_json(
    op: *const Qes3Operator,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> Qes3Status {
    guard(|| {
        let op = handle(op, "op")?;
        write_text(&op.0.to_json(), buf, len, needed)
    })
}

/// `[a, b] = ab − ba`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qes3_operator_commutator(
    a: *const Qes3Operator,
    b: *const Qes3Operator,
    out: *mut *mut Qes3Operator,
) -> Qes3Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        let c = handle(a, "a")?.0.commutator(&handle(b, "b")?.0)?;
        *slot = Box::into_raw(Box::new(Qes3Operator(c)));
        Ok(())
    })
}

/// # Safety
/// `op` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qes3_operator_is_zero(op: *const Qes3Operator, out: *mut bool) -> Qes3Status {
    guard(|| {
        *self::out(out, "out")? = handle(op, "op")?.0.is_zero();
        Ok(())
    })
}

/// # Safety
/// `op` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qes3_operator_free(op: *mut Qes3Operator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Solve the matrix problem on `space` (`"p3"`, `"p123"`, `"p12"`, `"p1"`)
/// for `variant` (`"qes"` or `"es"`).
///
/// # Safety
/// `params` must be a live handle, the strings NUL-terminated, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qes3_spectrum_solve(
    params: *const Qes3Params,
    space: *const c_char,
    variant: *const c_char,
    out: *mut *mut Qes3Spectrum,
) -> Qes3Status {
    guard(|| {
        let slot = self::out(out, "out")?;
        let space: Space = text(space, "space")?.parse()?;
        let variant: Variant = text(variant, "variant")?.parse()?;
        let s = solve_space(space, &handle(params, "params")?.0, variant)?;
        *slot = Box::into_raw(Box::new(Qes3Spectrum(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qes3_spectrum_len(s: *const Qes3Spectrum, out: *mut usize) -> Qes3Status {
    guard(|| {
        *self::out(out, "out")? = handle(s, "spectrum")?.0.eigen.eigenvalues.len();
        Ok(())
    })
}

/// Eigenvalue `i` in ascending order, its certified residual and the
/// physical energy `Re λ + E0`. Any output pointer may be null.
///
/// # Safety
/// `s` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qes3_spectrum_get(
    s: *const Qes3Spectrum,
    i: usize,
    re: *mut f64,
    im: *mut f64,
    residual: *mut f64,
    energy: *mut f64,
) -> Qes3Status {
    guard(|| {
        let s = &handle(s, "spectrum")?.0;
        let z = s.eigen.eigenvalues.get(i).ok_or_else(|| {
            Failure(
                Qes3Status::InvalidInput,
                format!("index {} out of range for {} eigenvalues", i, s.eigen.eigenvalues.len()),
            )
        })?;
        if let Some(o) = re.as_mut() {
            *o = z.re;
        }
        if let Some(o) = im.as_mut() {
            *o = z.im;
        }
        if let Some(o) = residual.as_mut() {
            *o = s.eigen.residuals[i];
        }
        if let Some(o) = energy.as_mut() {
            *o = s.physical_energies[i];
        }
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qes3_spectrum_free(s: *mut Qes3Spectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Effective potential of the gauge rotation at squared distances `rho[3]`.
///
/// # Safety
/// `rho` must point to three doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qes3_effective_potential(rho: *const f64, out: *mut f64) -> Qes3Status {
    guard(|| {
        *self::out(out, "out")? = effective_potential(&point(rho)?)?;
        Ok(())
    })
}

/// Closed-form Ricci scalar at `rho[3]`.
///
/// # Safety
/// `rho` must point to three doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qes3_ricci_scalar(rho: *const f64, out: *mut f64) -> Qes3Status {
    guard(|| {
        *self::out(out, "out")? = ricci_scalar(&point(rho)?)?;
        Ok(())
    })
}

/// `(w1, w2, w3)` at `rho[3]` into `out[3]`.
///
/// # Safety
/// `rho` must point to three doubles, `out` to three writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qes3_w_coords(rho: *const f64, out: *mut f64) -> Qes3Status {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let w = w_coords(&point(rho)?)?;
        let slots = std::slice::from_raw_parts_mut(out, 3);
        slots.copy_from_slice(&[w.w1, w.w2, w.w3]);
        Ok(())
    })
}

/// Run one finite-difference check (`"reduction"`, `"gauge"`,
/// `"separation"` or `"curvature"`) with default tolerances.
///
/// # Safety
/// `check` must be NUL-terminated; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qes3_oracle_run(
    check: *const c_char,
    samples: usize,
    fd_step: f64,
    seed: u64,
    max_rel_err: *mut f64,
    pass: *mut bool,
) -> Qes3Status {
    guard(|| {
        let kind: CheckKind = text(check, "check")?.parse()?;
        let r = run_check(kind, samples, fd_step, seed, &Tolerances::default())?;
        if let Some(o) = max_rel_err.as_mut() {
            *o = r.max_rel_err;
        }
        if let Some(o) = pass.as_mut() {
            *o = r.pass;
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last() -> String {
        LAST_ERROR.with(|e| e.borrow().clone())
    }

    #[test]
    fn panics_become_a_status() {
        let prev = std::panic::take_hook();
        std::panic::set_hook(Box::new(|_| {}));
        let st = guard(|| panic!("boom"));
        std::panic::set_hook(prev);
        assert_eq!(st, Qes3Status::Panic);
        assert_eq!(last(), "internal panic");
        assert_eq!(guard(|| Ok(())), Qes3Status::Ok);
        assert_eq!(last(), "");
    }

    #[test]
    fn library_errors_map_to_statuses() {
        assert_eq!(status_of(&Error::InvalidInput("x".into())), Qes3Status::InvalidInput);
        assert_eq!(status_of(&Error::UndefinedW3("x".into())), Qes3Status::UndefinedW3);
        assert_eq!(status_of(&Error::Conditioning(1e12)), Qes3Status::Conditioning);
        let st = guard(|| Err(Error::DivergentPotential("at the boundary".into()).into()));
        assert_eq!(st, Qes3Status::DivergentPotential);
        assert!(last().contains("at the boundary"));
    }

    #[test]
    fn text_is_truncation_free() {
        let mut buf = [1 as c_char; 4];
        let mut needed = 0;
        unsafe {
            assert!(write_text("abc", buf.as_mut_ptr(), 4, &mut needed).is_ok());
            assert_eq!(needed, 4);
            assert_eq!(CStr::from_ptr(buf.as_ptr()).to_str().unwrap(), "abc");
            let err = write_text("abcd", buf.as_mut_ptr(), 4, &mut needed).err().unwrap();
            assert_eq!(err.0, Qes3Status::BufferTooSmall);
            assert_eq!(needed, 5);
        }
    }

    #[test]
    fn codes_are_stable() {
        assert_eq!(Qes3Status::Ok as i32, 0);
        assert_eq!(Qes3Status::InvarianceViolation as i32, 4);
        assert_eq!(Qes3Status::Other as i32, 14);
    }
}

#![allow(dead_code)]

use entsep::linalg::{ComplexMatrix, C64};

pub fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got}, want {want} (tol {tol})"
    );
}

pub fn assert_mat_close(got: &ComplexMatrix, want: &ComplexMatrix, tol: f64, what: &str) {
    let diff = got.max_abs_diff(want);
    assert!(diff <= tol, "{what}: max entry deviation {diff:.3e} (tol {tol})");
}

pub fn assert_spectrum(got: &[f64], want: &[f64], tol: f64, what: &str) {
    assert_eq!(got.len(), want.len(), "{what}: length mismatch");
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        assert!(
            (g - w).abs() <= tol,
            "{what}: eigenvalue {i}: got {g}, want {w}"
        );
    }
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

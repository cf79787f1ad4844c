mod common;

use common::{assert_close, assert_mat_close, assert_spectrum, c};
use entsep::linalg::{self, pauli, vec, ComplexMatrix};
use entsep::sample;
use entsep::states::*;
use entsep::Error;

#[test]
fn bell_states_match_amplitudes() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let phi_plus = bell_state(BellState::PhiPlus);
    for (got, want) in phi_plus.amplitudes().iter().zip([h, 0.0, 0.0, h]) {
        assert!((got - c(want, 0.0)).norm() < 1e-15);
    }
    let psi_minus = bell_state(BellState::PsiMinus);
    for (got, want) in psi_minus.amplitudes().iter().zip([0.0, h, -h, 0.0]) {
        assert!((got - c(want, 0.0)).norm() < 1e-15);
    }
}

#[test]
fn bell_states_mutually_orthogonal() {
    for (i, a) in BellState::ALL.iter().enumerate() {
        for (j, b) in BellState::ALL.iter().enumerate() {
            let ip = vec::inner(
                bell_state(*a).amplitudes(),
                bell_state(*b).amplitudes(),
            );
            let want = if i == j { 1.0 } else { 0.0 };
            assert_close(ip.norm(), want, 1e-15, "Bell orthogonality");
        }
    }
}

#[test]
fn bell_label_round_trip() {
    for b in BellState::ALL {
        assert_eq!(BellState::parse(b.label()).unwrap(), b);
    }
    assert!(BellState::parse("chi+").is_err());
}

#[test]
fn tracial_state() {
    let t = tracial(2, 2);
    assert_mat_close(
        t.matrix(),
        &ComplexMatrix::identity(4).scale_re(0.25),
        1e-15,
        "tracial (2,2)",
    );
    assert_close(t.purity(), 0.25, 1e-12, "purity of I/4");
}

#[test]
fn tracial_invariant_under_unitaries() {
    let t = tracial(2, 2);
    let mut rng = sample::rng(10);
    for _ in 0..100 {
        let u = sample::random_unitary(4, &mut rng);
        let conj = t.matrix().conjugate_by(&u);
        assert_mat_close(&conj, t.matrix(), 1e-9, "U (I/4) U†");
    }
}

#[test]
fn bloch_poles_and_center() {
    let up = from_bloch(BlochVector::new([0.0, 0.0, 1.0]).unwrap());
    let want = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
    assert_mat_close(up.matrix(), &want, 1e-15, "s = +z");
    let center = from_bloch(BlochVector::new([0.0, 0.0, 0.0]).unwrap());
    assert_mat_close(
        center.matrix(),
        &ComplexMatrix::identity(2).scale_re(0.5),
        1e-15,
        "s = 0",
    );
}

#[test]
fn bloch_surface_states_are_pure() {
    let mut rng = sample::rng(11);
    for _ in 0..50 {
        let v = sample::random_unit_vector(3, &mut rng);
        let s = [v[0].re, v[1].re, v[2].re];
        let n = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
        let s = [s[0] / n, s[1] / n, s[2] / n];
        let rho = from_bloch(BlochVector::new(s).unwrap());
        assert!(rho.is_pure(1e-9), "unit Bloch vector gives a pure state");
    }
}

#[test]
fn bloch_rejects_overlong_vector() {
    assert!(matches!(
        BlochVector::new([1.0, 0.5, 0.0]),
        Err(Error::InvalidState(_))
    ));
}

#[test]
fn purity_detects_mixedness() {
    assert!(bell_state(BellState::PhiPlus).to_density().is_pure(1e-9));
    assert!(!tracial(2, 2).is_pure(1e-9));
    assert!(!rho_u().is_pure(1e-9), "rho_U has spectrum {{1/2,1/2,0,0}}");
}

#[test]
fn rho_u_is_the_sigma_x_expansion() {
    let [sx, _, _] = pauli();
    let want = (&ComplexMatrix::identity(4) + &sx.kron(&sx)).scale_re(0.25);
    assert_mat_close(rho_u().matrix(), &want, 1e-15, "rho_U");
}

#[test]
fn rho_v_normalized_spectrum() {
    assert_spectrum(
        &rho_v().eigenvalues(),
        &[0.375, 0.375, 0.125, 0.125],
        1e-12,
        "rho_V",
    );
}

#[test]
fn conjugation_identities_hold() {
    let k = k_matrix();
    assert_mat_close(
        rho_ku().matrix(),
        &rho_u().matrix().conjugate_by(&k),
        1e-12,
        "rho_KU = K rho_U K†",
    );
    assert_mat_close(
        rho_kv().matrix(),
        &rho_v().matrix().conjugate_by(&k),
        1e-12,
        "rho_KV = K rho_V K†",
    );
}

#[test]
fn rho_ku_entry_pattern() {
    // 1/4 * [[2,0,0,0],[0,1,1,0],[0,1,1,0],[0,0,0,0]]
    let want = ComplexMatrix::from_real_rows(&[
        vec![2.0, 0.0, 0.0, 0.0],
        vec![0.0, 1.0, 1.0, 0.0],
        vec![0.0, 1.0, 1.0, 0.0],
        vec![0.0, 0.0, 0.0, 0.0],
    ])
    .unwrap()
    .scale_re(0.25);
    assert_mat_close(rho_ku().matrix(), &want, 1e-12, "rho_KU entries");
}

#[test]
fn rho_kv_central_block() {
    let m = rho_kv();
    // central 2x2 block [[2,1],[1,2]]/8
    assert_close(m.matrix()[(1, 1)].re, 0.25, 1e-12, "rho_KV (1,1)");
    assert_close(m.matrix()[(1, 2)].re, 0.125, 1e-12, "rho_KV (1,2)");
    assert_close(m.matrix()[(2, 1)].re, 0.125, 1e-12, "rho_KV (2,1)");
    assert_close(m.matrix()[(2, 2)].re, 0.25, 1e-12, "rho_KV (2,2)");
}

#[test]
fn paper_state_names() {
    for (name, builder) in [
        ("rho_u", rho_u as fn() -> DensityMatrix),
        ("rho_v", rho_v),
        ("rho_ku", rho_ku),
        ("rho_kv", rho_kv),
    ] {
        let state = PaperState::parse(name).unwrap().build();
        assert_mat_close(state.matrix(), builder().matrix(), 1e-15, name);
    }
    assert!(PaperState::parse("rho_w").is_err());
}

#[test]
fn density_constructor_rejects_bad_matrices() {
    // wrong trace
    let m = ComplexMatrix::identity(4);
    assert!(matches!(
        DensityMatrix::new(m, (2, 2)),
        Err(Error::InvalidDensity(_))
    ));
    // non-hermitian
    let mut m = ComplexMatrix::identity(4).scale_re(0.25);
    m[(0, 1)] = c(0.3, 0.0);
    assert!(matches!(
        DensityMatrix::new(m, (2, 2)),
        Err(Error::InvalidDensity(_))
    ));
    // negative eigenvalue, trace still 1
    let m = ComplexMatrix::from_real_rows(&[
        vec![1.1, 0.0],
        vec![0.0, -0.1],
    ])
    .unwrap();
    assert!(matches!(
        DensityMatrix::new(m, (2, 1)),
        Err(Error::InvalidDensity(_))
    ));
    // dims mismatch
    let m = ComplexMatrix::identity(4).scale_re(0.25);
    assert!(matches!(
        DensityMatrix::new(m, (2, 3)),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn density_explicit_normalization() {
    let m = ComplexMatrix::identity(4);
    let rho = DensityMatrix::normalized(m, (2, 2)).unwrap();
    assert_close(rho.matrix().trace().re, 1.0, 1e-12, "normalized trace");
}

#[test]
fn pure_state_rejects_unnormalized() {
    let amps = vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
    assert!(matches!(
        PureState::new(amps, (2, 2)),
        Err(Error::InvalidState(_))
    ));
}

#[test]
fn bell_diagonal_expansion_round_trip() {
    let mut rng = sample::rng(12);
    let [sx, sy, sz] = pauli();
    for _ in 0..50 {
        // random physical Bell-diagonal c
        let c_in = loop {
            let cand = [
                2.0 * rand::Rng::gen::<f64>(&mut rng) - 1.0,
                2.0 * rand::Rng::gen::<f64>(&mut rng) - 1.0,
                2.0 * rand::Rng::gen::<f64>(&mut rng) - 1.0,
            ];
            if entsep::geometry::eigenvalues_of_c(&entsep::geometry::CVector { c: cand })
                .iter()
                .all(|&v| v >= 0.0)
            {
                break cand;
            }
        };
        let mut m = ComplexMatrix::identity(4);
        for (ci, s) in c_in.iter().zip([&sx, &sy, &sz]) {
            m = &m + &s.kron(s).scale_re(*ci);
        }
        let rho = DensityMatrix::new(m.scale_re(0.25), (2, 2)).unwrap();
        for (ci, s) in c_in.iter().zip([&sx, &sy, &sz]) {
            let got = linalg::hs_inner(&s.kron(s), rho.matrix()).unwrap().re;
            assert_close(got, *ci, 1e-12, "c round trip");
        }
    }
}

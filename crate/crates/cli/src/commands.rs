use serde::Serialize;

use entsep::criteria::{
    abs_sep_lemma_value, decide_separability_with, kz_ball_member_with, kz_radius,
    nearest_separable_with, optimal_witness, ppt_check_with, witness_eval, Evidence, SearchParams,
    Verdict,
};
use entsep::factorization::{
    max_cross_commutator, schmidt_in_factorization, tailor_with, Factorization,
    TailoredFactorization,
};
use entsep::geometry::{classify_with, sample_grid_with, CVector, RegionCounts};
use entsep::linalg::{
    self, algebra_span_dim, hermitian_eig, pauli, spin_operators, vec, ComplexMatrix, Subsystem,
    C64,
};
use entsep::states::{rho_ku, rho_kv, rho_u, rho_v, tracial};
use entsep::teleport::{self, OutcomeSelector, ResourceState};
use entsep::{BellState, PureState, Tolerances};

use crate::files::{
    emit, matrix_to_rows, read_json, rows_to_matrix, to_json, Complex, PureStateFile,
    StateFile, UnitaryFile,
};
use crate::{CliError, Format};

// ---------------------------------------------------------------- analyze

#[derive(Serialize)]
struct PtReport {
    is_ppt: bool,
    min_eigenvalue: f64,
}

#[derive(Serialize)]
struct AnalyzeReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    dims: [usize; 2],
    trace: f64,
    spectrum: Vec<f64>,
    purity: f64,
    pure: bool,
    ppt: PtReport,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    negative_pt_eigenvalue: Option<f64>,
    kz_member: bool,
    kz_radius: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_sep_lemma_value: Option<f64>,
    hs_distance_to_tracial: f64,
}

pub fn analyze(
    input: &str,
    output: Option<&str>,
    format: Format,
    tol: &Tolerances,
) -> Result<(), CliError> {
    require_json(format)?;
    let file: StateFile = read_json(input)?;
    let rho = file.to_density(tol)?;
    let (d1, d2) = rho.dims();
    let verdict = decide_separability_with(&rho, tol);
    let negative_pt_eigenvalue = match &verdict {
        Verdict::Entangled(Evidence::NegativePtEigenvalue { value, .. }) => Some(*value),
        _ => None,
    };
    let report = AnalyzeReport {
        label: file.label.clone(),
        dims: [d1, d2],
        trace: rho.matrix().trace().re,
        spectrum: rho.eigenvalues(),
        purity: rho.purity(),
        pure: rho.is_pure(tol.decision),
        ppt: {
            let p = ppt_check_with(&rho, tol);
            PtReport {
                is_ppt: p.is_ppt,
                min_eigenvalue: p.min_eigenvalue,
            }
        },
        verdict: verdict.label().to_string(),
        negative_pt_eigenvalue,
        kz_member: kz_ball_member_with(&rho, tol),
        kz_radius: kz_radius(rho.dim()),
        abs_sep_lemma_value: if (d1, d2) == (2, 2) {
            Some(abs_sep_lemma_value(&rho).map_err(CliError::from_lib)?)
        } else {
            None
        },
        hs_distance_to_tracial: linalg::hs_distance(rho.matrix(), tracial(d1, d2).matrix())
            .map_err(CliError::from_lib)?,
    };
    emit(output, &to_json(&report))
}

// ---------------------------------------------------------------- witness

#[derive(Serialize)]
struct WitnessReport {
    seed: u64,
    distance: f64,
    iterations: usize,
    converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Vec<Complex>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expectation_input: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expectation_nearest_separable: Option<f64>,
}

pub fn witness(
    input: &str,
    output: Option<&str>,
    format: Format,
    seed: u64,
    max_iter: usize,
    tol: &Tolerances,
) -> Result<(), CliError> {
    require_json(format)?;
    eprintln!("seed: {seed}");
    let file: StateFile = read_json(input)?;
    let rho = file.to_density(tol)?;
    let params = SearchParams {
        max_iter,
        seed,
        ..SearchParams::default()
    };
    let near = nearest_separable_with(&rho, &params, tol).map_err(CliError::from_lib)?;
    if !near.converged {
        return Err(CliError {
            code: 3,
            message: format!(
                "nearest-separable search did not converge in {} iterations (gap {:.3e})",
                near.iterations, near.gap
            ),
        });
    }
    let report = if near.distance <= 10.0 * tol.decision {
        WitnessReport {
            seed,
            distance: 0.0,
            iterations: near.iterations,
            converged: true,
            message: Some("no witness: state separable (distance 0)".into()),
            witness: None,
            expectation_input: None,
            expectation_nearest_separable: None,
        }
    } else {
        let w = optimal_witness(&rho, &near.rho0).map_err(CliError::from_lib)?;
        WitnessReport {
            seed,
            distance: near.distance,
            iterations: near.iterations,
            converged: true,
            message: None,
            witness: Some(matrix_to_rows(w.operator())),
            expectation_input: Some(witness_eval(&rho, &w).map_err(CliError::from_lib)?),
            expectation_nearest_separable: Some(
                witness_eval(&near.rho0, &w).map_err(CliError::from_lib)?,
            ),
        }
    };
    emit(output, &to_json(&report))
}

// ---------------------------------------------------------------- tailor

#[derive(Serialize)]
struct TailorReport {
    dims: [usize; 2],
    unitary: Vec<Vec<Complex>>,
    generators_a: Vec<Vec<Vec<Complex>>>,
    generators_b: Vec<Vec<Vec<Complex>>>,
    schmidt_coefficients: Vec<f64>,
    schmidt_target: Vec<f64>,
    max_cross_commutator: f64,
    algebra_span: usize,
}

pub fn tailor(
    input: &str,
    lambdas: &str,
    unitary: Option<&str>,
    output: Option<&str>,
    format: Format,
    tol: &Tolerances,
) -> Result<(), CliError> {
    require_json(format)?;
    let file: PureStateFile = read_json(input)?;
    let psi = file.to_pure(tol)?;
    let (k, l) = psi.dims();
    let lambdas: Vec<C64> = lambdas
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map(|x| C64::new(x, 0.0))
                .map_err(|e| CliError::invalid(format!("bad lambda {s:?}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    let out = match unitary {
        Some(path) => {
            let uf: UnitaryFile = read_json(path)?;
            let u = rows_to_matrix(&uf.matrix)?;
            let factorization = Factorization::new(u, (k, l)).map_err(CliError::from_lib)?;
            let spins_a = spin_operators(k);
            let spins_b = spin_operators(l);
            let id_k = ComplexMatrix::identity(k);
            let id_l = ComplexMatrix::identity(l);
            let generators_a = [
                factorization.apply(&spins_a[0].kron(&id_l)),
                factorization.apply(&spins_a[1].kron(&id_l)),
                factorization.apply(&spins_a[2].kron(&id_l)),
            ];
            let generators_b = [
                factorization.apply(&id_k.kron(&spins_b[0])),
                factorization.apply(&id_k.kron(&spins_b[1])),
                factorization.apply(&id_k.kron(&spins_b[2])),
            ];
            TailoredFactorization {
                factorization,
                generators_a,
                generators_b,
            }
        }
        None => tailor_with(psi.amplitudes(), k, l, &lambdas, tol).map_err(CliError::from_lib)?,
    };
    let mut target: Vec<f64> = lambdas.iter().map(|z| z.norm()).collect();
    target.sort_by(|a, b| b.total_cmp(a));
    let coefficients = schmidt_in_factorization(psi.amplitudes(), &out.factorization)
        .map_err(CliError::from_lib)?;
    let mut all = out.generators_a.to_vec();
    all.extend(out.generators_b.to_vec());
    let report = TailorReport {
        dims: [k, l],
        unitary: matrix_to_rows(&out.factorization.u),
        generators_a: out.generators_a.iter().map(matrix_to_rows).collect(),
        generators_b: out.generators_b.iter().map(matrix_to_rows).collect(),
        schmidt_coefficients: coefficients,
        schmidt_target: target,
        max_cross_commutator: max_cross_commutator(&out.generators_a, &out.generators_b),
        algebra_span: algebra_span_dim(&all, tol),
    };
    emit(output, &to_json(&report))
}

// ---------------------------------------------------------------- teleport

#[derive(Serialize)]
struct TraceReport {
    outcome: usize,
    classical_bits: u32,
    probability: f64,
    bob_before: Vec<Complex>,
    correction: Vec<Vec<Complex>>,
    bob_after: Vec<Complex>,
    fidelity: f64,
}

#[derive(Serialize)]
struct TeleportReport {
    seed: u64,
    resource: String,
    input: Vec<Complex>,
    traces: Vec<TraceReport>,
}

fn parse_resource(spec: &str, tol: &Tolerances) -> Result<(ResourceState, String), CliError> {
    if let Ok(label) = BellState::parse(spec) {
        return Ok((ResourceState::bell(label), label.label().to_string()));
    }
    if let Some(d) = spec.strip_prefix("canonical-") {
        let d: usize = d
            .parse()
            .map_err(|e| CliError::invalid(format!("bad resource dimension {d:?}: {e}")))?;
        let r = ResourceState::canonical(d).map_err(CliError::from_lib)?;
        return Ok((r, spec.to_string()));
    }
    let file: PureStateFile = read_json(spec)?;
    let label = file.label.clone().unwrap_or_else(|| spec.to_string());
    let state = file.to_pure(tol)?;
    let r = ResourceState::new_with(state, tol).map_err(CliError::from_lib)?;
    Ok((r, label))
}

fn parse_input_state(spec: &str, d: usize, tol: &Tolerances) -> Result<PureState, CliError> {
    match spec {
        "up" => PureState::new(vec::basis_vector(d, 0), (d, 1)).map_err(CliError::from_lib),
        "down" => PureState::new(vec::basis_vector(d, d - 1), (d, 1)).map_err(CliError::from_lib),
        path => {
            let file: PureStateFile = read_json(path)?;
            file.to_pure(tol)
        }
    }
}

fn trace_report(t: &teleport::ProtocolTrace) -> TraceReport {
    TraceReport {
        outcome: t.outcome.outcome,
        classical_bits: t.outcome.bits(),
        probability: t.probability,
        bob_before: t.bob_before.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        correction: matrix_to_rows(&t.correction),
        bob_after: t.bob_after.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        fidelity: t.fidelity,
    }
}

pub fn teleport_cmd(
    input_state: &str,
    resource: &str,
    outcome: &str,
    output: Option<&str>,
    format: Format,
    seed: u64,
    tol: &Tolerances,
) -> Result<(), CliError> {
    require_json(format)?;
    eprintln!("seed: {seed}");
    let (resource, resource_label) = parse_resource(resource, tol)?;
    let psi = parse_input_state(input_state, resource.dim(), tol)?;
    let traces = match outcome {
        "all" => teleport::run_all_outcomes(&psi, &resource).map_err(CliError::from_lib)?,
        "random" => vec![
            teleport::run_protocol(&psi, &resource, OutcomeSelector::Random { seed })
                .map_err(CliError::from_lib)?,
        ],
        m => {
            let m: usize = m
                .parse()
                .map_err(|e| CliError::invalid(format!("bad outcome {m:?}: {e}")))?;
            vec![
                teleport::run_protocol(&psi, &resource, OutcomeSelector::Forced(m))
                    .map_err(CliError::from_lib)?,
            ]
        }
    };
    let report = TeleportReport {
        seed,
        resource: resource_label,
        input: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        traces: traces.iter().map(trace_report).collect(),
    };
    emit(output, &to_json(&report))
}

// ---------------------------------------------------------------- geometry

#[derive(Serialize)]
struct GeometryPoint {
    c: [f64; 3],
    label: String,
}

#[derive(Serialize)]
struct GeometryReport {
    counts: CountsReport,
    samples: Vec<GeometryPoint>,
}

#[derive(Serialize)]
struct CountsReport {
    unphysical: usize,
    entangled: usize,
    pyramid: usize,
    kz_ball: usize,
}

impl From<RegionCounts> for CountsReport {
    fn from(c: RegionCounts) -> Self {
        Self {
            unphysical: c.unphysical,
            entangled: c.entangled,
            pyramid: c.pyramid,
            kz_ball: c.kz_ball,
        }
    }
}

fn parse_point(spec: &str) -> Result<CVector, CliError> {
    let parts: Vec<f64> = spec
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|e| CliError::invalid(format!("bad coordinate {s:?}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if parts.len() != 3 {
        return Err(CliError::invalid(format!(
            "expected cx,cy,cz, got {} coordinates",
            parts.len()
        )));
    }
    Ok(CVector::new(parts[0], parts[1], parts[2]))
}

pub fn geometry(
    resolution: Option<usize>,
    point: Option<&str>,
    output: Option<&str>,
    format: Format,
    tol: &Tolerances,
) -> Result<(), CliError> {
    if let Some(spec) = point {
        let c = parse_point(spec)?;
        let label = classify_with(&c, tol);
        return match format {
            Format::Json => emit(
                output,
                &to_json(&GeometryPoint {
                    c: c.c,
                    label: label.label().to_string(),
                }),
            ),
            Format::Csv => emit(
                output,
                &format!(
                    "cx,cy,cz,label\n{},{},{},{}",
                    c.c[0],
                    c.c[1],
                    c.c[2],
                    label.label()
                ),
            ),
        };
    }
    let resolution = resolution
        .ok_or_else(|| CliError::invalid("geometry needs --resolution or --point"))?;
    let samples = sample_grid_with(resolution, tol).map_err(CliError::from_lib)?;
    let counts = RegionCounts::tally(&samples);
    eprintln!(
        "counts: unphysical={} entangled={} pyramid={} kz-ball={}",
        counts.unphysical, counts.entangled, counts.pyramid, counts.kz_ball
    );
    match format {
        Format::Csv => {
            let mut text = String::from("cx,cy,cz,label");
            for (c, label) in &samples {
                text.push_str(&format!(
                    "\n{},{},{},{}",
                    c.c[0],
                    c.c[1],
                    c.c[2],
                    label.label()
                ));
            }
            emit(output, &text)
        }
        Format::Json => emit(
            output,
            &to_json(&GeometryReport {
                counts: counts.into(),
                samples: samples
                    .iter()
                    .map(|(c, label)| GeometryPoint {
                        c: c.c,
                        label: label.label().to_string(),
                    })
                    .collect(),
            }),
        ),
    }
}

// ---------------------------------------------------------------- paper-examples

struct Item {
    name: &'static str,
    run: fn(&Tolerances) -> Result<(), String>,
}

fn check(ok: bool, detail: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail)
    }
}

fn close(got: f64, want: f64, tol: f64, what: &str) -> Result<(), String> {
    check(
        (got - want).abs() <= tol,
        format!("{what}: got {got}, want {want}"),
    )
}

fn golden_items() -> Vec<Item> {
    vec![
        Item {
            name: "orthogonal spin-projector overlap = -1/2",
            run: |_| {
                let [sx, sy, sz] = pauli();
                let ss = &(&sx.kron(&sx) + &sy.kron(&sy)) + &sz.kron(&sz);
                let id = ComplexMatrix::identity(4);
                let left = (&id - &ss).scale_re(0.25);
                let right = (&id + &ss).scale_re(0.25);
                close(
                    linalg::hs_inner(&left, &right).map_err(|e| e.to_string())?.re,
                    -0.5,
                    1e-15,
                    "overlap",
                )
            },
        },
        Item {
            name: "spectrum(rho_U) = {1/2, 1/2, 0, 0}",
            run: |_| {
                let got = rho_u().eigenvalues();
                for (g, w) in got.iter().zip([0.5, 0.5, 0.0, 0.0]) {
                    close(*g, w, 1e-9, "eigenvalue")?;
                }
                Ok(())
            },
        },
        Item {
            name: "delta(rho_U, I/4) = 1/2 and delta(rho_V, I/4) = 1/4",
            run: |_| {
                let center = tracial(2, 2);
                close(
                    linalg::hs_distance(rho_u().matrix(), center.matrix())
                        .map_err(|e| e.to_string())?,
                    0.5,
                    1e-12,
                    "delta(rho_U)",
                )?;
                close(
                    linalg::hs_distance(rho_v().matrix(), center.matrix())
                        .map_err(|e| e.to_string())?,
                    0.25,
                    1e-12,
                    "delta(rho_V)",
                )
            },
        },
        Item {
            name: "KZ radius r_B(D=4) = 1/sqrt(12); rho_U outside, rho_V inside",
            run: |tol| {
                close(kz_radius(4), 1.0 / 12.0f64.sqrt(), 1e-12, "r_B")?;
                check(
                    !kz_ball_member_with(&rho_u(), tol),
                    "rho_U should be outside".into(),
                )?;
                check(
                    kz_ball_member_with(&rho_v(), tol),
                    "rho_V should be inside".into(),
                )
            },
        },
        Item {
            name: "PT(rho_KU) has eigenpair ((1-sqrt(2))/4, (1-sqrt(2),0,0,1))",
            run: |_| {
                let pt = rho_ku()
                    .matrix()
                    .partial_transpose((2, 2), Subsystem::A)
                    .map_err(|e| e.to_string())?;
                let x = [
                    C64::new(1.0 - 2.0f64.sqrt(), 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(1.0, 0.0),
                ];
                let got = pt.mul_vec(&x);
                let scale = (1.0 - 2.0f64.sqrt()) / 4.0;
                for (g, w) in got.iter().zip(&x) {
                    check(
                        (g - w * scale).norm() < 1e-9,
                        "eigenvector equation violated".into(),
                    )?;
                }
                Ok(())
            },
        },
        Item {
            name: "spectrum(8 PT(rho_KV)) = {2+sqrt(2), 2, 2, 2-sqrt(2)}",
            run: |tol| {
                let pt = rho_kv()
                    .matrix()
                    .partial_transpose((2, 2), Subsystem::A)
                    .map_err(|e| e.to_string())?
                    .scale_re(8.0);
                let eig = hermitian_eig(&pt, tol).map_err(|e| e.to_string())?;
                let want = [2.0 + 2.0f64.sqrt(), 2.0, 2.0, 2.0 - 2.0f64.sqrt()];
                for (g, w) in eig.eigenvalues.iter().zip(want) {
                    close(*g, w, 1e-9, "eigenvalue")?;
                }
                Ok(())
            },
        },
        Item {
            name: "absolute-separability lemma: rho_U -> +1/2, rho_V -> (1-sqrt(3))/4",
            run: |_| {
                close(
                    abs_sep_lemma_value(&rho_u()).map_err(|e| e.to_string())?,
                    0.5,
                    1e-12,
                    "rho_U",
                )?;
                close(
                    abs_sep_lemma_value(&rho_v()).map_err(|e| e.to_string())?,
                    (1.0 - 3.0f64.sqrt()) / 4.0,
                    1e-12,
                    "rho_V",
                )
            },
        },
        Item {
            name: "rho_KU entangled (not PPT), rho_U separable",
            run: |tol| {
                check(
                    matches!(
                        decide_separability_with(&rho_ku(), tol),
                        Verdict::Entangled(_)
                    ),
                    "rho_KU should be entangled".into(),
                )?;
                check(
                    matches!(decide_separability_with(&rho_u(), tol), Verdict::Separable),
                    "rho_U should be separable".into(),
                )
            },
        },
        Item {
            name: "tailored S^A_z matches the reference closed form",
            run: |_| {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                let u = ComplexMatrix::from_real_rows(&[
                    vec![h, 0.0, 0.0, h],
                    vec![0.0, 1.0, 0.0, 0.0],
                    vec![0.0, 0.0, 1.0, 0.0],
                    vec![-h, 0.0, 0.0, h],
                ])
                .map_err(|e| e.to_string())?;
                let [sx, sy, sz] = pauli();
                let id = ComplexMatrix::identity(2);
                let hh = h * h;
                let closed = (&(&sz.kron(&id).scale_re(hh) - &id.kron(&sz).scale_re(hh))
                    - &(&sx.kron(&sx).scale_re(hh) - &sy.kron(&sy).scale_re(hh)))
                    .scale_re(0.5);
                let got = spin_operators(2)[2].kron(&id).conjugate_by(&u);
                check(
                    got.max_abs_diff(&closed) < 1e-12,
                    format!("entrywise deviation {:.3e}", got.max_abs_diff(&closed)),
                )
            },
        },
        Item {
            name: "teleportation: four forced outcomes, fidelity 1",
            run: |_| {
                let resource = ResourceState::bell(BellState::PsiMinus);
                let psi = PureState::new(
                    vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)],
                    (2, 1),
                )
                .map_err(|e| e.to_string())?;
                for t in
                    teleport::run_all_outcomes(&psi, &resource).map_err(|e| e.to_string())?
                {
                    close(t.fidelity, 1.0, 1e-9, "fidelity")?;
                }
                Ok(())
            },
        },
        Item {
            name: "c = (1,0,0) classifies as separable-pyramid",
            run: |tol| {
                check(
                    classify_with(&CVector::new(1.0, 0.0, 0.0), tol)
                        == entsep::geometry::RegionLabel::SeparablePyramid,
                    "wrong region".into(),
                )
            },
        },
    ]
}

pub fn paper_examples(tol: &Tolerances) -> Result<(), CliError> {
    let mut failures = 0;
    for item in golden_items() {
        match (item.run)(tol) {
            Ok(()) => println!("PASS  {}", item.name),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {} — {detail}", item.name);
            }
        }
    }
    if failures > 0 {
        return Err(CliError {
            code: 3,
            message: format!("{failures} golden item(s) failed"),
        });
    }
    Ok(())
}

fn require_json(format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::invalid(
            "csv output is only available for the geometry command",
        )),
    }
}

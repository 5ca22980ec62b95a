//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line.

use dirac_point::approximation::{
    approx_eigenvalues, beta_epsilon_check, hs_distance, non_expansion_threshold, spectral_enclosure, HsOptions,
    Profile, SampledProfile,
};
use dirac_point::contour::Rect;
use dirac_point::nonrelativistic::{krein_identity_check, nonrel_limit_distance, schrodinger_eigenvalues, LimitOptions};
use dirac_point::oracle::{
    fourier_dirac_matrix, resolvent_residual, schrodinger_fd_matrix, Interaction, ResidualOptions,
};
use dirac_point::point::{
    adjoint_coupling, classify_spectrum, eigenvalue_residual, point_spectrum, resolvent_kernel, PointSpectrumKind,
};
use dirac_point::spectral::{c, cr, spectral_norm, vec2, Vec2, I};
use dirac_point::{CouplingMatrix, Error, KernelEvaluator, C64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::time::{Duration, Instant};

fn report(n: u32, pass: bool, detail: &str) {
    println!("criterion {n}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

fn two_sigma0() -> CouplingMatrix {
    CouplingMatrix::real(2.0, 0.0, 0.0, 2.0)
}

fn rand_c(rng: &mut StdRng, r: f64) -> C64 {
    c(rng.random_range(-r..r), rng.random_range(-r..r))
}

fn gap_box() -> Rect {
    Rect::new(-0.6, 0.6, -0.5, 0.5).unwrap()
}

#[test]
fn classification_table() {
    let start = Instant::now();
    let massless = |kappa: f64, eps: f64| CouplingMatrix::new(c(0.0, kappa), cr(2.0 + eps), cr(-2.0), cr(0.0));
    let massive = |kappa: C64, delta: C64| CouplingMatrix::new(cr(0.0), 4.0 * kappa, -kappa.inv(), delta);
    let mut table: Vec<(CouplingMatrix, f64, PointSpectrumKind)> = vec![
        (massless(0.0, 0.0), 0.0, PointSpectrumKind::NonRealPlane),
        (massless(0.0, 0.3), 0.0, PointSpectrumKind::Empty),
        (massless(0.0, -1.5), 0.0, PointSpectrumKind::Empty),
        (massless(0.4, 1.0), 0.0, PointSpectrumKind::Empty),
        (massless(0.4, 0.0), 0.0, PointSpectrumKind::Empty),
        (massless(-0.7, 0.2), 0.0, PointSpectrumKind::Empty),
    ];
    for kappa in [0.4, -1.3, 2.5] {
        // ε = −κ gives the upper half-plane, ε = κ the lower one
        table.push((massless(kappa, -kappa), 0.0, PointSpectrumKind::UpperHalfPlane));
        table.push((massless(kappa, kappa), 0.0, PointSpectrumKind::LowerHalfPlane));
    }
    for kappa in [cr(1.0), cr(-0.25), c(0.5, 0.5), c(-2.0, 1.0)] {
        for m in [1.0, -0.6, 3.0] {
            table.push((massive(kappa, cr(0.0)), m, PointSpectrumKind::WholeGap));
            table.push((massive(kappa, cr(0.3)), m, PointSpectrumKind::Empty));
            table.push((massive(kappa, c(-1.0, 2.0)), m, PointSpectrumKind::Empty));
        }
    }
    let mismatches: Vec<String> = table
        .iter()
        .filter_map(|(a, m, want)| {
            let got = classify_spectrum(a, *m).kind;
            (got != *want).then(|| format!("{a:?} m={m}: {got:?} != {want:?}"))
        })
        .collect();
    let elapsed = start.elapsed();
    report(
        1,
        mismatches.is_empty() && elapsed < Duration::from_secs(1),
        &format!("{} fixtures, {} mismatches {mismatches:?}, {elapsed:?}", table.len(), mismatches.len()),
    );
}

#[test]
fn scalar_coupling_eigenvalue_and_fourier_chain() {
    let start = Instant::now();
    let a = two_sigma0();
    let ev = point_spectrum(&a, 1.0).unwrap();
    let closed_form = ev.len() == 1 && ev[0].z.norm() < 1e-14 && ev[0].geometric_multiplicity == 1;
    let residual = eigenvalue_residual(&a, 1.0, ev[0].z).unwrap().norm();

    let eps = 0.05;
    let profile = Profile::boxcar();
    let region = Rect::new(-0.5, 0.5, -0.3, 0.3).unwrap();
    let approx = approx_eigenvalues(&a, 1.0, eps, &profile, &region).unwrap();
    let oracle = fourier_dirac_matrix(&a, 1.0, eps, &profile, 30.0, 16384)
        .unwrap()
        .eigenvalues_in(&region)
        .unwrap();
    let chain = approx.len() == 1 && oracle.len() == 1;
    let gap = if chain { (approx[0].z - oracle[0]).norm() } else { f64::INFINITY };
    let elapsed = start.elapsed();
    report(
        2,
        closed_form && residual < 1e-12 && gap < 1e-3 && elapsed < Duration::from_secs(60),
        &format!(
            "z = {}, multiplicity {}, |residual| = {residual:.1e}, approx z(0.05) = {:?}, fourier = {oracle:?}, |diff| = {gap:.2e}, {elapsed:?}",
            ev[0].z,
            ev[0].geometric_multiplicity,
            approx.first().map(|r| r.z)
        ),
    );
}

#[test]
fn degenerate_diagonal_multiplicity() {
    let mut notes = Vec::new();
    let mut pass = true;
    for alpha in [cr(-2.0), cr(-1.0), cr(-4.0), c(-1.0, 0.5), c(-0.5, -2.0)] {
        let a = CouplingMatrix::new(alpha, cr(0.0), cr(0.0), -4.0 / alpha);
        let ev = point_spectrum(&a, 1.0).unwrap();
        let ok = ev.len() == 1 && ev[0].geometric_multiplicity == 2;
        pass &= ok;
        notes.push(format!("α={alpha}: {:?}", ev.iter().map(|r| (r.z, r.geometric_multiplicity)).collect::<Vec<_>>()));
    }
    let others = [
        two_sigma0(),
        CouplingMatrix::real(-2.0, 0.0, 0.0, 0.0),
        CouplingMatrix::real(1.0, 0.5, -0.5, 3.0),
        CouplingMatrix::new(c(-1.0, 0.2), c(0.3, 0.0), c(0.0, 1.0), cr(1.5)),
        CouplingMatrix::real(-2.0, 0.0, 0.0, 2.5),
        CouplingMatrix::new(c(0.0, 0.5), cr(1.0), cr(1.0), cr(-3.0)),
    ];
    let mut simple = 0;
    for a in &others {
        let ev = point_spectrum(a, 1.0).unwrap();
        pass &= ev.iter().all(|r| r.geometric_multiplicity == 1);
        simple += ev.len();
    }
    pass &= simple > 0;
    report(3, pass, &format!("{notes:?}; {simple} simple eigenvalues among the other fixtures"));
}

#[test]
fn resolvent_inverts_operator() {
    let psi = |y: f64| -> Vec2 {
        vec2(cr((-(y - 0.7) * (y - 0.7)).exp()), c(0.0, 0.5) * (-2.0 * (y + 0.4) * (y + 0.4)).exp())
    };
    let fixtures = [
        (two_sigma0(), I),
        (CouplingMatrix::new(cr(0.0), c(0.0, 2.0), c(0.0, -2.0), cr(0.0)), c(-1.0, 1.0)),
        (CouplingMatrix::real(0.5, 2.0, -2.0, 0.0), c(-1.0, 1.0)),
    ];
    let opts = ResidualOptions { step: 1e-3, ..Default::default() };
    let mut pass = true;
    let mut notes = Vec::new();
    for (a, z) in fixtures {
        let kernel = resolvent_kernel(&a, 1.0, z).unwrap();
        let r = resolvent_residual(&kernel, &Interaction::Point(a), 1.0, z, psi, &opts).unwrap();
        pass &= r.differential < 1e-6 && r.transmission < 1e-10;
        notes.push(format!("z={z}: diff {:.1e}, trans {:.1e}", r.differential, r.transmission));
    }
    report(4, pass, &notes.join("; "));
}

#[test]
fn hs_distance_decays() {
    let start = Instant::now();
    let a = two_sigma0();
    let profile = Profile::boxcar();
    let eps = [0.2, 0.1, 0.05, 0.025];
    let vals: Vec<f64> = eps
        .iter()
        .map(|&e| hs_distance(&a, 1.0, I, e, &profile, HsOptions::default()).unwrap().value)
        .collect();
    let decreasing = vals.windows(2).all(|w| w[1] < w[0]);
    let ratio = vals[3] / vals[0];
    let elapsed = start.elapsed();
    report(
        5,
        decreasing && ratio < 0.1 && elapsed < Duration::from_secs(300),
        &format!("distances {vals:.4?}, final/first = {ratio:.3}, {elapsed:?}"),
    );
}

#[test]
fn approximate_eigenvalue_flow() {
    let a = two_sigma0();
    let profile = Profile::boxcar();
    let mut pass = true;
    let mut prev = f64::INFINITY;
    let mut notes = Vec::new();
    for eps in [0.2, 0.1, 0.05] {
        let roots = approx_eigenvalues(&a, 1.0, eps, &profile, &gap_box()).unwrap();
        let bound = spectral_enclosure(&a, eps, &profile);
        pass &= roots.len() == 1;
        for r in &roots {
            pass &= r.z.im.abs() <= bound;
        }
        let dist = roots.first().map_or(f64::INFINITY, |r| r.z.norm());
        pass &= dist < prev;
        prev = dist;
        notes.push(format!("ε={eps}: z={:?} bound {bound:.1}", roots.iter().map(|r| r.z).collect::<Vec<_>>()));
    }
    // the enclosure also holds spectrum-wide: check roots in a tall box
    let enclosure = spectral_enclosure(&a, 0.1, &profile);
    let tall = Rect::new(-0.5, 0.5, -enclosure - 5.0, enclosure + 5.0).unwrap();
    let all = approx_eigenvalues(&a, 1.0, 0.1, &profile, &tall).unwrap();
    pass &= all.iter().all(|r| r.z.im.abs() <= enclosure);
    report(6, pass, &notes.join("; "));
}

#[test]
fn whole_gap_non_expansion() {
    let a = CouplingMatrix::real(0.0, 2.0, -2.0, 0.0);
    let profile = Profile::boxcar();
    let region = Rect::new(-0.5, 0.5, 0.2, 1.0).unwrap();
    let whole_gap = classify_spectrum(&a, 1.0).kind == PointSpectrumKind::WholeGap;
    let eps_c = non_expansion_threshold(&a, 1.0, &profile, &region).unwrap();
    let mut counts = Vec::new();
    for eps in [eps_c, 0.75 * eps_c, eps_c / 2.0, eps_c / 4.0, 0.1, 0.05, 0.01] {
        counts.push((eps, approx_eigenvalues(&a, 1.0, eps, &profile, &region).unwrap().len()));
    }
    let empty = counts.iter().all(|(_, n)| *n == 0);
    report(7, whole_gap && empty, &format!("ε_C = {eps_c:.4}, WholeGap = {whole_gap}, counts {counts:?}"));
}

#[test]
fn krein_identity_random() {
    let mut rng = StdRng::seed_from_u64(0x6b72_6569);
    let mut worst: f64 = 0.0;
    let mut drawn = 0;
    let mut rejected = 0;
    while drawn < 100 {
        let a = CouplingMatrix::new(rand_c(&mut rng, 3.0), rand_c(&mut rng, 3.0), rand_c(&mut rng, 3.0), rand_c(&mut rng, 3.0));
        let mut im = rng.random_range(-2.0..2.0);
        if f64::abs(im) < 0.05 {
            im = 0.05f64.copysign(im);
        }
        let z = c(rng.random_range(-3.0..3.0), im);
        match krein_identity_check(&a, 1.0, z) {
            Ok(r) => {
                worst = worst.max(r);
                drawn += 1;
            }
            Err(Error::SingularMatrix { .. } | Error::EigenvalueHit { .. }) => rejected += 1,
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    report(8, worst < 1e-12, &format!("max residual {worst:.2e} over 100 draws ({rejected} singular draws skipped)"));
}

#[test]
fn schrodinger_eigenvalue_and_fd_order() {
    let a = CouplingMatrix::real(-2.0, 0.0, 0.0, 0.0);
    let ev = schrodinger_eigenvalues(&a, 1.0).unwrap();
    let exact = ev.len() == 1 && (ev[0] - cr(-0.5)).norm() < 1e-15;
    let errs: Vec<f64> = [256, 512, 1024]
        .iter()
        .map(|&n| {
            let fd = schrodinger_fd_matrix(&a, 1.0, 10.0, n).unwrap();
            (fd.eigenvalue_near(cr(-0.45)).unwrap() - cr(-0.5)).norm()
        })
        .collect();
    let orders: Vec<f64> = errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let in_band = orders.iter().all(|p| (p - 2.0).abs() <= 0.3);
    report(9, exact && in_band, &format!("eigenvalues {ev:?}, errors {errs:?}, orders {orders:.3?}"));
}

#[test]
fn nonrelativistic_rate() {
    let start = Instant::now();
    let mut pass = true;
    let mut notes = Vec::new();
    for a in [CouplingMatrix::real(-2.0, 0.0, 0.0, 0.0), CouplingMatrix::zero()] {
        let vals: Vec<f64> = [10.0, 20.0, 40.0]
            .iter()
            .map(|&cl| nonrel_limit_distance(&a, 1.0, cl, cr(-1.0), LimitOptions::default()).unwrap().value)
            .collect();
        let ratios: Vec<f64> = vals.windows(2).map(|w| w[0] / w[1]).collect();
        pass &= ratios.iter().all(|r| (r - 2.0).abs() <= 0.6);
        notes.push(format!("α={}: distances {vals:?}, ratios {ratios:.3?}", a.alpha.re));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(300);
    report(10, pass, &format!("{}; {elapsed:?}", notes.join("; ")));
}

#[test]
fn beta_vanishes_for_all_profiles() {
    let sampled = SampledProfile::new(
        vec![-0.5, -0.2, 0.1, 0.4, 0.6],
        vec![0.3, 1.0, 0.8, 1.4, 0.2],
    )
    .unwrap();
    let profiles = [Profile::boxcar(), Profile::triangle(), Profile::gaussian(), Profile::sampled(sampled)];
    let mut rng = StdRng::seed_from_u64(0x62657461);
    let mut worst: f64 = 0.0;
    for p in &profiles {
        for _ in 0..10 {
            let w = c(rng.random_range(-20.0..20.0), rng.random_range(0.0..5.0));
            worst = worst.max(beta_epsilon_check(p, w).norm());
        }
    }
    report(11, worst < 1e-10, &format!("max |β| = {worst:.2e} over {} profiles", profiles.len()));
}

#[test]
fn self_adjointness_coherence() {
    let mut rng = StdRng::seed_from_u64(0x6865726d);
    let mut worst_im: f64 = 0.0;
    let mut outside = 0;
    let mut count = 0;
    for _ in 0..50 {
        let m: f64 = rng.random_range(0.3..3.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let off = rand_c(&mut rng, 3.0);
        let a = CouplingMatrix::new(cr(rng.random_range(-4.0..4.0)), off, off.conj(), cr(rng.random_range(-4.0..4.0)));
        for r in point_spectrum(&a, m).unwrap() {
            count += 1;
            worst_im = worst_im.max(r.z.im.abs());
            if r.z.re.abs() >= m.abs() {
                outside += 1;
            }
        }
    }
    let mut worst_round_trip: f64 = 0.0;
    let mut worst_symmetry: f64 = 0.0;
    for _ in 0..50 {
        let a = CouplingMatrix::new(rand_c(&mut rng, 3.0), rand_c(&mut rng, 3.0), rand_c(&mut rng, 3.0), rand_c(&mut rng, 3.0));
        worst_round_trip = worst_round_trip.max((adjoint_coupling(&adjoint_coupling(&a)).matrix() - a.matrix()).norm());
        let m = rng.random_range(0.3..3.0);
        let (kernel, adjoint) = loop {
            let z = c(rng.random_range(-3.0..3.0), rng.random_range(0.1..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 });
            if let (Ok(k), Ok(kd)) = (resolvent_kernel(&a, m, z), resolvent_kernel(&a.adjoint(), m, z.conj())) {
                break (k, kd);
            }
        };
        for _ in 0..5 {
            let (x, y) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let diff = adjoint.evaluate(x, y) - kernel.evaluate(y, x).adjoint();
            worst_symmetry = worst_symmetry.max(diff.norm() / (1.0 + spectral_norm(&kernel.evaluate(y, x))));
        }
    }
    let pass = worst_im < 1e-10 && outside == 0 && worst_round_trip == 0.0 && worst_symmetry < 1e-10;
    report(
        12,
        pass,
        &format!(
            "{count} hermitian eigenvalues, max |Im z| = {worst_im:.1e}, {outside} outside the gap; round trip {worst_round_trip:.1e}, adjoint symmetry {worst_symmetry:.1e}"
        ),
    );
}

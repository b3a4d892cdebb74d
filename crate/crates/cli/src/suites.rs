//! The verification suites run on one wall configuration.

use wallindex_core::charclasses::{transgression, transgression_residual, CurvaturePair, InvariantPolynomial};
use wallindex_core::cylinder::{
    cylinder_integral, epsilon_sweep, lemma1_limit, paste_cylinder, two_cylinder_rsa, CornerOrder,
};
use wallindex_core::dirac::{build_dirac, index_predicted, index_spectral, spectrum, IndexOptions};
use wallindex_core::forms::{ext_d, integrate, Domain, Side};
use wallindex_core::random::{band_limited_connection, band_limited_form, rng, BandLimit};
use wallindex_core::rsa::{generalized_rsa, rsa_report, EtaOptions, RsaVariant};
use wallindex_core::wall::WallData;
use wallindex_core::Result;

use crate::config::{ExperimentConfig, Suite, Tolerances};
use crate::report::{Check, SuiteReport};

/// Transgression quadrature order used by every suite.
const Q: usize = 16;
/// Seed of the auxiliary random form in the `forms` suite.
const FORMS_SEED: u64 = 0x0f0f;
const BAND: BandLimit = BandLimit { max_mode: 1, amplitude: 0.5 };

/// A finished suite plus the plot data it produced.
#[derive(Debug, Clone, Default)]
pub struct SuiteData {
    /// `(eigenvalue, chirality)` rows.
    pub spectra: Vec<(f64, f64)>,
    /// `(ε, integral)` rows.
    pub sweep: Vec<(f64, f64)>,
}

pub fn run_suite(
    suite: Suite,
    cfg: &ExperimentConfig,
    wall: &WallData,
    tol: &Tolerances,
) -> (SuiteReport, SuiteData) {
    let mut checks = Vec::new();
    let mut data = SuiteData::default();
    let result = match suite {
        Suite::Forms => forms(wall, tol, &mut checks),
        Suite::Transgression => transgressions(wall, tol, &mut checks),
        Suite::Rsa => rsa(wall, tol, &mut checks),
        Suite::Cylinder => cylinder(cfg, wall, tol, &mut checks, &mut data),
        Suite::Index => index(cfg, wall, tol, &mut checks, &mut data),
        Suite::All => unreachable!("`all` is expanded before running"),
    };
    let report = match result {
        Ok(()) => SuiteReport::from_checks(suite, checks),
        Err(e) => SuiteReport::failed(suite, e.to_string(), checks),
    };
    (report, data)
}

fn forms(w: &WallData, tol: &Tolerances, out: &mut Vec<Check>) -> Result<()> {
    let g = w.grid();
    let n = g.dim();
    let a = w.gauge_connection(Side::Plus)?;
    out.push(Check::zero("connection.anti_hermitian", a.anti_hermitian_defect(), tol.imaginary));

    let f = band_limited_form(g, n - 2, w.gauge_space(), BAND, &mut rng(FORMS_SEED))?;
    out.push(Check::zero("d_squared.random", ext_d(&ext_d(&f)?)?.max_norm(), tol.d_squared));
    if n >= 3 {
        out.push(Check::zero("d_squared.connection", ext_d(&ext_d(&a)?)?.max_norm(), tol.d_squared));
    }

    // Stokes on the closed torus, applied to the top-minus-one transgression part.
    let a_minus = w.gauge_smooth();
    let a_plus = a_minus.add(w.gauge_jump())?;
    let tv = transgression(&InvariantPolynomial::chern_character(), &a_plus, a_minus, Q)?;
    let total = integrate(&ext_d(&tv.part_or_zero(n - 1)?)?, Domain::Full)?;
    out.push(Check::zero("stokes.transgression", total.norm(), tol.stokes));

    let bianchi = CurvaturePair::new(a_plus)?.bianchi_residual()?;
    out.push(Check::zero("bianchi", bianchi, tol.bianchi));
    Ok(())
}

fn transgressions(w: &WallData, tol: &Tolerances, out: &mut Vec<Check>) -> Result<()> {
    let a_minus = w.gauge_smooth();
    let a_plus = a_minus.add(w.gauge_jump())?;
    let r = transgression_residual(&InvariantPolynomial::chern_character(), &a_plus, a_minus, Q)?;
    out.push(Check::zero("ch", r, tol.transgression));
    if w.dim() == 4 {
        let g_minus = w.frame_smooth();
        let g_plus = g_minus.add(w.frame_jump())?;
        let r = transgression_residual(&InvariantPolynomial::a_hat(), &g_plus, g_minus, Q)?;
        out.push(Check::zero("a_hat", r, tol.transgression));
    }
    Ok(())
}

fn rsa(w: &WallData, tol: &Tolerances, out: &mut Vec<Check>) -> Result<()> {
    let rep = rsa_report(w, &EtaOptions::default())?;
    let eq4 = rep.rsa_eq4.re;
    out.push(Check::zero("imaginary_parts", rep.max_imag(), tol.imaginary));
    out.push(Check::against("eq5_vs_eq4", rep.rsa_eq5.re, eq4, tol.rsa_channels));
    if let Some(eq6) = rep.rsa_eq6 {
        out.push(Check::against("eq6_vs_eq4", eq6.re, eq4, tol.rsa_channels));
    }
    out.push(Check::zero("surface_correction", rep.surface_correction.norm(), tol.rsa_channels));
    if let Some(seeley) = rep.eta_seeley {
        out.push(Check::against("seeley_vs_eq4", seeley, eq4, tol.rsa_channels));
        if let Some(spec) = &rep.eta_spectral {
            // The two agree up to an even integer (twice the spectral flow).
            let offset = spec.difference - seeley;
            out.push(Check::against("eta_spectral_minus_seeley", offset, 2.0 * (offset / 2.0).round(), tol.eta));
            out.push(Check::zero("eta_plus.extrapolation", spec.plus.error_estimate, tol.eta));
            out.push(Check::zero("eta_minus.extrapolation", spec.minus.error_estimate, tol.eta));
        }
    }
    Ok(())
}

fn cylinder(
    cfg: &ExperimentConfig,
    w: &WallData,
    tol: &Tolerances,
    out: &mut Vec<Check>,
    data: &mut SuiteData,
) -> Result<()> {
    let settings = &cfg.cylinder;
    let c = paste_cylinder(w, settings.epsilon)?;
    let limit = lemma1_limit(&c)?;
    let value = cylinder_integral(&c)?;
    out.push(Check::with_residual("thin_limit", value.re, limit.re, (value - limit).norm(), tol.thin_limit));
    out.push(Check::zero("limit.imaginary", limit.im, tol.imaginary));

    let swept = match settings.linear_term_seed {
        None => c.clone(),
        Some(seed) => {
            let b2 = band_limited_connection(c.grid(), w.gauge_space(), BAND, &mut rng(seed))?;
            let mut c2 = c.clone();
            c2.b2 = Some(b2);
            c2
        }
    };
    let sweep = epsilon_sweep(&swept, &settings.sweep)?;
    data.sweep = sweep.iter().map(|(e, v)| (*e, v.re)).collect();
    if swept.b2.is_none() {
        for (e, v) in &sweep {
            let name = format!("sweep[eps={e}]");
            out.push(Check::with_residual(name, v.re, limit.re, (v - limit).norm(), tol.thin_limit));
        }
    } else {
        // O(ε) remainder: the gap shrinks in proportion to the width.
        for pair in sweep.windows(2) {
            let ((e1, v1), (e2, v2)) = (pair[0], pair[1]);
            let ratio = (v1 - limit).norm() / (v2 - limit).norm();
            let expected = e1 / e2;
            let name = format!("gap_ratio[eps={e1}/{e2}]");
            out.push(Check::against(name, ratio, expected, tol.gap_ratio * expected));
        }
    }

    let eq4 = generalized_rsa(w, RsaVariant::Eq4)?;
    for (name, order) in [("corner.frame_first_vs_eq4", CornerOrder::FrameFirst), ("corner.gauge_first_vs_eq4", CornerOrder::GaugeFirst)] {
        let v = two_cylinder_rsa(w, order)?;
        out.push(Check::with_residual(name, v.re, eq4.re, (v - eq4).norm(), tol.rsa_channels));
    }
    Ok(())
}

fn spectral_index(w: &WallData, cfg: &ExperimentConfig, tol: &Tolerances, out: &mut Vec<Check>, data: Option<&mut SuiteData>) -> Result<i64> {
    let d = build_dirac(w, cfg.index.discretization)?;
    let s = spectrum(&d, cfg.index.tau)?;
    if let Some(data) = data {
        out.push(Check::zero("hermiticity", d.hermiticity_residual(), tol.hermiticity));
        out.push(Check::zero("pairing", s.pairing_residual, tol.pairing));
        data.spectra = s.rows().collect();
    }
    index_spectral(&s)
}

fn index(
    cfg: &ExperimentConfig,
    w: &WallData,
    tol: &Tolerances,
    out: &mut Vec<Check>,
    data: &mut SuiteData,
) -> Result<()> {
    let opts = IndexOptions {
        discretization: cfg.index.discretization,
        tau: cfg.index.tau,
        eta: EtaOptions::default(),
        spectral: false,
    };
    let rep = index_predicted(w, &opts)?;
    let predicted = rep.predicted;
    out.push(Check::against("integrality", predicted, predicted.round(), tol.integrality));
    if w.dim() != 2 || !w.is_flat() {
        return Ok(());
    }
    let index = spectral_index(w, cfg, tol, out, Some(data))?;
    out.push(Check::against("spectral_vs_predicted", index as f64, predicted, tol.integrality));
    if let Some(n) = cfg.index.refine_points {
        let fine = cfg.wall_data_at(n).map_err(|e| wallindex_core::Error::InvalidInput(e.to_string()))?;
        let refined = spectral_index(&fine, cfg, tol, out, None)?;
        out.push(Check::against(format!("refined[N={n}]"), refined as f64, index as f64, 0.0));
    }
    Ok(())
}

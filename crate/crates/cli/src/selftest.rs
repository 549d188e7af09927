//! Invariant suite behind `opuc selftest`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use opuc::examples::{
    arc_reflection_exact, elliott_ratio_check, arc_expansion, trig_identity, ArcMeasureParams, JacobiParams,
};
use opuc::oracle::{trig_moments, verblunsky_from_moments, MeasureSpec};
use opuc::szego::{evaluate, horner, monic_coefficients, schur_sum_eval, wronskian};
use opuc::{
    classify_conditions, closed_eval, truncation_zeros, Complex, Result, Sequence, SignPattern,
    Verdict,
};

type C = Complex<f64>;

struct Check {
    name: &'static str,
    run: fn() -> Result<(bool, String)>,
}

fn sample_sequences() -> Result<Vec<Sequence>> {
    Ok(vec![
        Sequence::constant(C::new(0.5, 0.3))?,
        Sequence::zhedanov(0.5)?,
        Sequence::jacobi_arc(PI / 2.0, 0.3, 0.7)?,
        Sequence::perturbed(C::new(0.5, 0.0), 0.4, 2.0, SignPattern::Alt)?,
    ])
}

/// Sequences whose κ_n stays moderate; Zhedanov's grows like q^{-n²/4}.
fn tame_sequences() -> Result<Vec<Sequence>> {
    let mut v = sample_sequences()?;
    v.remove(1);
    Ok(v)
}

fn circle(m: usize) -> impl Iterator<Item = C> {
    (0..m).map(move |j| C::from_polar(1.0, 2.0 * PI * (j as f64 + 0.25) / m as f64))
}

fn determinant() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for s in sample_sequences()? {
        for z in circle(16) {
            let st = evaluate(&s, 60, z)?;
            let scale = (st.phi * st.psi_star).norm() + (st.psi * st.phi_star).norm();
            let r = (wronskian(&st) + z.powu(60) * 2.0).norm() / scale.max(2.0);
            worst = worst.max(r);
        }
    }
    Ok((worst < 1e-12, format!("max relative residual {worst:.3e}")))
}

fn routes() -> Result<(bool, String)> {
    let (mut horner_gap, mut schur_gap) = (0.0f64, 0.0f64);
    for s in tame_sequences()? {
        let p = monic_coefficients(&s, 30)?;
        let mass: f64 = p.iter().map(|c| c.norm()).sum();
        for z in circle(8) {
            let st = evaluate(&s, 30, z)?;
            horner_gap = horner_gap.max((horner(&p, z) - st.monic_phi()).norm() / mass);
            let target = st.phi_star * st.kappa;
            let schur = schur_sum_eval(&s, 30, z)?;
            schur_gap = schur_gap.max((schur - target).norm() / target.norm().max(1.0));
        }
    }
    Ok((
        horner_gap < 1e-12 && schur_gap < 1e-10,
        format!("coefficient route {horner_gap:.3e}, Schur sum route {schur_gap:.3e}"),
    ))
}

fn closed_forms() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for a in [C::new(0.5, 0.0), C::new(-0.3, 0.6), C::new(0.1, -0.8)] {
        let s = Sequence::constant(a)?;
        for z in circle(12) {
            for n in [1u64, 7, 40, 120] {
                let r = evaluate(&s, n, z)?.matrix();
                worst = worst.max(r.rel_diff(&closed_eval(a, n, z)?.matrix()));
            }
        }
    }
    Ok((worst < 1e-7, format!("max relative difference {worst:.3e}")))
}

fn zeros() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut outside = 0;
    for s in tame_sequences()? {
        for z in truncation_zeros(&s, 20)? {
            if z.norm() >= 1.0 {
                outside += 1;
            }
            worst = worst.max(evaluate(&s, 20, z)?.monic_phi().norm());
        }
    }
    Ok((outside == 0 && worst < 1e-8, format!("{outside} outside, max |Φ_N(z)| {worst:.3e}")))
}

fn oracle_closure() -> Result<(bool, String)> {
    let p = ArcMeasureParams::new(2.0, 0.3, 0.7)?;
    let mom = trig_moments(&MeasureSpec::example17(p)?, 8)?;
    let inv = verblunsky_from_moments(&mom, 8)?;
    let seq = Sequence::jacobi_arc(2.0, 0.3, 0.7)?;
    let mut worst = 0.0f64;
    for (k, v) in inv.values().iter().enumerate() {
        worst = worst.max((v - seq.coeff_at(k as u64 + 1)?.value()).norm());
    }
    Ok((worst < 1e-8, format!("max recovery error {worst:.3e}")))
}

fn arc_weight_expansion() -> Result<(bool, String)> {
    let p = ArcMeasureParams::new(PI / 2.0, 0.3, 0.7)?;
    let mut bound = 0.0f64;
    for n in 100..=400u64 {
        let r = arc_reflection_exact(&p, n)? - arc_expansion(&p, n)?;
        bound = bound.max((r * (n as f64).powi(3)).abs());
    }
    Ok((bound < 10.0, format!("max n^3 residual {bound:.3e} on [100, 400]")))
}

fn ratio_expansion() -> Result<(bool, String)> {
    let p = JacobiParams::new(0.5, -0.3)?;
    let mut bound = 0.0f64;
    for n in 50..=400u64 {
        let r = elliott_ratio_check(&p, 2.0, n)?;
        bound = bound.max((r.residual() * (n as f64).powi(3)).abs());
    }
    let (l, r) = trig_identity(1.0f64)?;
    let ok = bound < 10.0 && (l - r).abs() < 1e-13;
    Ok((ok, format!("max n^3 residual {bound:.3e}, identity gap {:.3e}", (l - r).abs())))
}

fn regimes() -> Result<(bool, String)> {
    let a = C::new(0.5, 0.0);
    let seq = Sequence::perturbed(a, 0.4, 3.0, SignPattern::Plain)?;
    let r = classify_conditions(&seq, a, C::new(1.0, 0.0), 1000)?;
    let held = r.conditions.iter().filter(|c| c.verdict == Verdict::Holds).count();
    Ok((held == r.conditions.len(), format!("{held} of {} conditions hold for p = 3", r.conditions.len())))
}

const CHECKS: [Check; 8] = [
    Check { name: "determinant identity", run: determinant },
    Check { name: "evaluation routes agree", run: routes },
    Check { name: "closed forms match recurrence", run: closed_forms },
    Check { name: "truncation zeros", run: zeros },
    Check { name: "moment oracle closure", run: oracle_closure },
    Check { name: "arc weight expansion", run: arc_weight_expansion },
    Check { name: "Jacobi ratio expansion", run: ratio_expansion },
    Check { name: "summable perturbation regime", run: regimes },
];

/// Report text and the number of failed checks.
pub fn run() -> (String, usize) {
    let mut out = String::new();
    let mut failed = 0;
    for c in &CHECKS {
        let (ok, detail) = match (c.run)() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        let _ = writeln!(out, "{} {}: {detail}", if ok { "PASS" } else { "FAIL" }, c.name);
    }
    let _ = writeln!(out, "{} of {} checks passed", CHECKS.len() - failed, CHECKS.len());
    (out, failed)
}

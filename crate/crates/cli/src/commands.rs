use std::sync::Arc;

use hgdeform_core::io::{format_number, measure_to_csv, measure_to_json, number};
use hgdeform_core::orbit::{
    exponentiality_bound_check, orbit_character_mc, positive_orbit_semicharacter_mc, weyl_data, CompactGroup, WeylFamily,
};
use hgdeform_core::semichar::sturm_liouville::{default_probes, renormalized_profile, rho_of, sl_solve, ProfileDescriptor, SlProfile};
use hgdeform_core::{
    check_axioms, convolve, deform, deform_semigroup, exponentiality_estimate, poisson, r_transform, transitivity_compose, Coord, Grid,
    Ground, Hypergroup, Measure, SemicharDescriptor, Semicharacter, SharedHypergroup,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::*;
use crate::inputs;
use crate::Failure;

/// Output of a subcommand. A `defect` means the computation succeeded but the
/// checked identity does not hold to tolerance.
pub struct Report {
    pub json: Value,
    pub csv: Option<String>,
    pub defect: Option<String>,
}

impl Report {
    fn json(json: Value) -> Self {
        Report { json, csv: None, defect: None }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    fn check(mut self, ok: bool, message: impl FnOnce() -> String) -> Self {
        if !ok {
            self.defect = Some(message());
        }
        self
    }
}

pub fn execute(cmd: &Cmd) -> Result<Report, Failure> {
    match cmd {
        Cmd::Axioms(a) => axioms(a),
        Cmd::Convolve(a) => convolve_cmd(a),
        Cmd::DeformKernel(a) => deform_kernel(a),
        Cmd::RTransform(a) => r_transform_cmd(a),
        Cmd::SemigroupEvolve(a) => evolve(a),
        Cmd::Levy(a) => levy(a),
        Cmd::GeneratorCheck(a) => generator(a),
        Cmd::SlSolve(a) => sl(a),
        Cmd::Weyl(a) => weyl(a),
        Cmd::OrbitChar(a) => orbit(a),
        Cmd::ExpoCheck(a) => expo(a),
        Cmd::DemoRemark33(a) => demo(a),
    }
}

fn descriptor(hg: &dyn Hypergroup<f64>) -> Value {
    serde_json::to_value(hg.descriptor()).expect("descriptors serialize")
}

fn measure_json(hg: &dyn Hypergroup<f64>, m: &Measure<f64>) -> Value {
    measure_to_json(m, &hg.ground())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Identity tolerance: `1e-5` on grids, `1e-12` on discrete models.
fn default_tol(ground: &Ground) -> f64 {
    match ground {
        Ground::Grid(_) => 1e-5,
        _ => 1e-12,
    }
}

fn axioms(a: &AxiomsArgs) -> Result<Report, Failure> {
    let hg = inputs::model(&a.model)?;
    let r = check_axioms(hg.as_ref(), a.samples, a.seed);
    let passed = match a.tol {
        Some(t) => r.max_defect() <= t,
        None => r.passed(),
    };
    let threshold = a.tol.unwrap_or(r.tolerance * r.condition_factor);
    let json = json!({
        "model": descriptor(hg.as_ref()),
        "seed": a.seed,
        "report": to_value(&r),
        "max_defect": number(r.max_defect()),
        "threshold": number(threshold),
        "verdict": if passed { "PASS" } else { "FAIL" },
    });
    Ok(Report::json(json).check(passed, || format!("axiom defect {:e} exceeds {threshold:e}", r.max_defect())))
}

fn random_range(ground: &Ground) -> f64 {
    match ground {
        Ground::Grid(g) => g.x_max() / 3.0,
        Ground::Naturals { .. } => 6.0,
        Ground::Finite { size } => size.saturating_sub(1) as f64,
    }
}

fn convolve_cmd(a: &ConvolveArgs) -> Result<Report, Failure> {
    let hg = inputs::model(&a.model)?;
    if let (Some(mu), Some(nu)) = (&a.mu, &a.nu) {
        let mu = inputs::measure(hg.as_ref(), mu)?;
        let nu = inputs::measure(hg.as_ref(), nu)?;
        let out = convolve(hg.as_ref(), &mu, &nu)?;
        let json = json!({ "model": descriptor(hg.as_ref()), "result": measure_json(hg.as_ref(), &out), "mass": number(out.mass()) });
        return Ok(Report::json(json).with_csv(measure_to_csv(&out, &hg.ground())));
    }
    let Some(alpha0) = &a.alpha0 else {
        return Err(Failure::usage("convolve needs either --mu and --nu or --alpha0".into()));
    };
    let seed = inputs::seed(a.seed, "random measure pairs")?;
    let ground = hg.ground();
    let alpha0 = inputs::certified(hg.as_ref(), alpha0)?;
    let d = deform(hg.clone(), alpha0.clone())?;
    let range = a.range.unwrap_or_else(|| random_range(&ground));
    let tol = a.tol.unwrap_or_else(|| default_tol(&ground));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut hom, mut transform) = (0.0f64, 0.0f64);
    for _ in 0..a.pairs {
        let mu = Measure::<f64>::random_probability(hg.space().clone(), &ground, range, a.atoms, &mut rng);
        let nu = Measure::<f64>::random_probability(hg.space().clone(), &ground, range, a.atoms, &mut rng);
        let base = convolve(hg.as_ref(), &mu, &nu)?;
        let weighted = |m: &Measure<f64>| m.weighted_by(|c| alpha0.eval(c));
        let rhs = convolve(&d, &weighted(&mu), &weighted(&nu))?;
        hom = hom.max(weighted(&base).tv_distance(&rhs)?);
        let rhs = convolve(&d, &r_transform(&alpha0, &mu)?, &r_transform(&alpha0, &nu)?)?;
        transform = transform.max(r_transform(&alpha0, &base)?.tv_distance(&rhs)?);
    }
    let json = json!({
        "model": descriptor(&d),
        "pairs": a.pairs,
        "seed": seed,
        "range": number(range),
        "homomorphism_defect": number(hom),
        "transform_defect": number(transform),
        "tolerance": number(tol),
    });
    Ok(Report::json(json).check(hom <= tol && transform <= tol, || format!("defects {hom:e} / {transform:e} exceed {tol:e}")))
}

fn coord(hg: &dyn Hypergroup<f64>, x: f64) -> Result<Coord, Failure> {
    Ok(hg.ground().coord_at(x)?)
}

fn deform_kernel(a: &DeformKernelArgs) -> Result<Report, Failure> {
    let base = inputs::model(&a.model)?;
    let ground = base.ground();
    let alpha0 = inputs::certified(base.as_ref(), &a.alpha0)?;
    let d = Arc::new(deform(base.clone(), alpha0.clone())?);
    let tol = a.tol.unwrap_or_else(|| default_tol(&ground));

    if let (Some(x), Some(y)) = (a.x, a.y) {
        let (cx, cy) = (coord(d.as_ref(), x)?, coord(d.as_ref(), y)?);
        let k = d.kernel(&cx, &cy)?;
        let json = json!({
            "model": descriptor(d.as_ref()),
            "x": number(ground.position(&cx)),
            "y": number(ground.position(&cy)),
            "kernel": measure_json(d.as_ref(), &k),
            "mass": number(k.mass()),
            "condition_factor": number(d.condition_factor(&cx, &cy)?),
        });
        return Ok(Report::json(json).with_csv(measure_to_csv(&k, &ground)));
    }

    if let Some(other) = &a.compare {
        let seed = inputs::seed(a.seed, "kernel comparisons")?;
        let other = inputs::model(other)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Vec::new();
        let mut worst = 0.0f64;
        for _ in 0..a.pairs {
            let x = ground.sample(&mut rng, a.max_sum);
            let y = ground.sample(&mut rng, a.max_sum - ground.position(&x));
            let tv = d.kernel(&x, &y)?.tv_distance(&other.kernel(&x, &y)?)?;
            worst = worst.max(tv);
            rows.push(json!({ "x": number(ground.position(&x)), "y": number(ground.position(&y)), "tv_distance": number(tv) }));
        }
        let tol = a.tol.unwrap_or(1e-4);
        let json = json!({
            "model": descriptor(d.as_ref()),
            "compared_with": descriptor(other.as_ref()),
            "seed": seed,
            "pairs": rows,
            "max_tv_distance": number(worst),
            "tolerance": number(tol),
        });
        return Ok(Report::json(json).check(worst <= tol, || format!("kernels differ by {worst:e} > {tol:e}")));
    }

    if let Some(dual) = &a.dual {
        let seed = inputs::seed(a.seed, "certifying the dual image")?;
        let alpha = inputs::uncertified(base.as_ref(), dual)?;
        let q = d.dual(&alpha, a.samples, seed)?;
        let mut json = json!({
            "model": descriptor(d.as_ref()),
            "dual": to_value(q.descriptor()),
            "seed": seed,
            "mult_defect": number(q.mult_defect()),
            "tolerance": number(tol),
        });
        let mut ok = q.mult_defect() <= tol;
        if let Some(expect) = &a.expect {
            let e = inputs::uncertified(base.as_ref(), expect)?;
            let pointwise = ground.points_up_to(ground.max_position()).iter().map(|c| (q.eval(c) - e.eval(c)).abs()).fold(0.0, f64::max);
            json["expected"] = to_value(e.descriptor());
            json["pointwise_error"] = number(pointwise);
            ok &= pointwise <= 1e-12;
        }
        return Ok(Report::json(json).check(ok, || "dual image is not a semicharacter of the deformed model to tolerance".into()));
    }

    if let Some(beta0) = &a.beta0 {
        let once: SharedHypergroup<f64> = d.clone();
        let beta0 = inputs::certified(once.as_ref(), beta0)?;
        let (twice, direct) = transitivity_compose(base.clone(), alpha0.clone(), beta0)?;
        let inv = alpha0.reciprocal()?.certify(
            once.as_ref(),
            hgdeform_core::semichar::DEFAULT_CERT_SAMPLES,
            hgdeform_core::semichar::DEFAULT_CERT_SEED,
        );
        let (back, _) = transitivity_compose(base.clone(), alpha0, inv)?;
        let range = a.range.unwrap_or(match ground {
            Ground::Grid(_) => 0.5,
            _ => 20.0,
        });
        let points = ground.points_up_to(range);
        let (mut composed, mut reciprocal) = (0.0f64, 0.0f64);
        for x in &points {
            for y in &points {
                composed = composed.max(twice.kernel(x, y)?.tv_distance(&direct.kernel(x, y)?)?);
                reciprocal = reciprocal.max(back.kernel(x, y)?.tv_distance(&base.kernel(x, y)?)?);
            }
        }
        let json = json!({
            "twice": descriptor(&twice),
            "direct": descriptor(&direct),
            "points": points.len(),
            "composed_defect": number(composed),
            "reciprocal_defect": number(reciprocal),
            "tolerance": number(tol),
        });
        return Ok(
            Report::json(json).check(composed <= tol && reciprocal <= tol, || format!("kernels differ by {composed:e} / {reciprocal:e}"))
        );
    }

    Err(Failure::usage("deform-kernel needs --x/--y, --compare, --dual or --beta0".into()))
}

fn r_transform_cmd(a: &RTransformArgs) -> Result<Report, Failure> {
    let hg = inputs::model(&a.model)?;
    let alpha0 = inputs::uncertified(hg.as_ref(), &a.alpha0)?;
    let mu = inputs::measure(hg.as_ref(), &a.mu)?;
    let r = r_transform(&alpha0, &mu)?;
    let json = json!({ "alpha0": to_value(alpha0.descriptor()), "result": measure_json(hg.as_ref(), &r) });
    Ok(Report::json(json).with_csv(measure_to_csv(&r, &hg.ground())))
}

fn evolve(a: &EvolveArgs) -> Result<Report, Failure> {
    let hg = inputs::model(&a.model)?;
    let ground = hg.ground();
    let s = poisson(hg.clone(), inputs::measure(hg.as_ref(), &a.jump)?)?;
    let Some(alpha0) = &a.alpha0 else {
        let mut rows = Vec::new();
        let mut csv = String::from("t,coord,weight\n");
        for &t in &a.t {
            let mu = s.eval(t, a.eps)?;
            for line in measure_to_csv(&mu, &ground).lines().skip(1) {
                csv.push_str(&format!("{},{line}\n", format_number(t)));
            }
            rows.push(json!({ "t": number(t), "mass": number(mu.mass()), "measure": measure_json(hg.as_ref(), &mu) }));
        }
        let json = json!({
            "model": descriptor(hg.as_ref()),
            "rate": number(s.rate()),
            "gaussian": s.is_gaussian(),
            "levy_measure": measure_json(hg.as_ref(), &s.levy_measure().measure),
            "evolution": rows,
        });
        return Ok(Report::json(json).with_csv(csv));
    };
    let alpha0 = inputs::certified(hg.as_ref(), alpha0)?;
    let ds = deform_semigroup(&s, alpha0)?;
    let dhg = ds.deformed.hypergroup().clone();
    let mut rows = Vec::new();
    let mut csv = String::from("t,tv_distance,phi,exp_ct,phi_relative_error\n");
    let (mut worst_tv, mut worst_phi) = (0.0f64, 0.0f64);
    for &t in &a.t {
        let transported = ds.transported(t, a.eps)?;
        let deformed = ds.deformed.eval(t, a.eps)?;
        let tv = transported.tv_distance(&deformed)?;
        let phi = ds.phi(t, a.eps)?;
        let expected = (ds.c * t).exp();
        let rel = (phi / expected - 1.0).abs();
        worst_tv = worst_tv.max(tv);
        worst_phi = worst_phi.max(rel);
        csv.push_str(&[t, tv, phi, expected, rel].map(format_number).join(","));
        csv.push('\n');
        rows.push(json!({
            "t": number(t),
            "tv_distance": number(tv),
            "phi": number(phi),
            "exp_ct": number(expected),
            "phi_relative_error": number(rel),
            "deformed_measure": measure_json(dhg.as_ref(), &deformed),
        }));
    }
    let json = json!({
        "model": descriptor(dhg.as_ref()),
        "c": number(ds.c),
        "rate": number(s.rate()),
        "deformed_rate": number(ds.deformed.rate()),
        "levy_measure": measure_json(hg.as_ref(), &s.levy_measure().measure),
        "deformed_levy_measure": measure_json(dhg.as_ref(), &ds.deformed.levy_measure().measure),
        "checks": rows,
        "tolerance": number(a.tol),
    });
    let tol = a.tol;
    Ok(Report::json(json)
        .with_csv(csv)
        .check(worst_tv <= tol && worst_phi <= tol, || format!("transport defect {worst_tv:e}, φ defect {worst_phi:e} exceed {tol:e}")))
}

fn levy(a: &LevyArgs) -> Result<Report, Failure> {
    let hg = inputs::model(&a.model)?;
    let s = poisson(hg.clone(), inputs::measure(hg.as_ref(), &a.jump)?)?;
    let support = a.f_support.iter().map(|&x| coord(hg.as_ref(), x)).collect::<Result<Vec<_>, _>>()?;
    let f = |c: &Coord| if support.contains(c) { 1.0 } else { 0.0 };
    let times: Vec<f64> = if a.t.is_empty() { (a.k_min..=a.k_max).map(|k| 2f64.powi(-k)).collect() } else { a.t.clone() };
    let est = s.levy_limit_estimate(f, &times, a.eps)?;
    let target = s.levy_measure().measure.integrate(f);
    let errors: Vec<f64> = est.iter().map(|e| (e - target).abs()).collect();
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[1] / w[0]).collect();
    let mut csv = String::from("t,estimate,error\n");
    for ((t, e), err) in times.iter().zip(&est).zip(&errors) {
        csv.push_str(&format!("{},{},{}\n", format_number(*t), format_number(*e), format_number(*err)));
    }
    let json = json!({
        "model": descriptor(hg.as_ref()),
        "levy_measure": measure_json(hg.as_ref(), &s.levy_measure().measure),
        "gaussian": s.is_gaussian(),
        "target": number(target),
        "times": times.iter().map(|t| number(*t)).collect::<Vec<_>>(),
        "estimates": est.iter().map(|t| number(*t)).collect::<Vec<_>>(),
        "errors": errors.iter().map(|t| number(*t)).collect::<Vec<_>>(),
        "error_ratios": ratios.iter().map(|t| number(*t)).collect::<Vec<_>>(),
    });
    Ok(Report::json(json).with_csv(csv))
}

fn generator(a: &GeneratorArgs) -> Result<Report, Failure> {
    let hg = inputs::model(&a.model)?;
    let s = poisson(hg.clone(), inputs::measure(hg.as_ref(), &a.jump)?)?;
    let ground = hg.ground();
    let basis = ground.points_up_to(a.basis_max);
    let g = s.generator_matrix(&basis, a.leak_tol)?;
    let boundary: Vec<Value> =
        g.boundary.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| number(ground.position(&basis[i]))).collect();
    let Some(alpha0) = &a.alpha0 else {
        let mut csv = String::new();
        for row in &g.matrix {
            csv.push_str(&row.iter().map(|v| format_number(*v)).collect::<Vec<_>>().join(","));
            csv.push('\n');
        }
        let json = json!({
            "model": descriptor(hg.as_ref()),
            "basis": basis.iter().map(|c| number(ground.position(c))).collect::<Vec<_>>(),
            "matrix": g.matrix.iter().map(|r| r.iter().map(|v| number(*v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "boundary_rows": boundary,
        });
        return Ok(Report::json(json).with_csv(csv));
    };
    let alpha0 = inputs::certified(hg.as_ref(), alpha0)?;
    let ds = deform_semigroup(&s, alpha0)?;
    let defect = ds.generator_check(&basis, a.leak_tol)?;
    let json = json!({
        "model": descriptor(ds.deformed.hypergroup().as_ref()),
        "c": number(ds.c),
        "basis_size": basis.len(),
        "interior_rows": g.interior_rows().count(),
        "boundary_rows": boundary,
        "max_defect": number(defect),
        "tolerance": number(a.tol),
    });
    Ok(Report::json(json).check(defect <= a.tol, || format!("generator defect {defect:e} exceeds {:e}", a.tol)))
}

fn rho_json(profile: &SlProfile, probes: &[f64]) -> Value {
    let default;
    let probes = if probes.is_empty() {
        default = default_probes(profile.x_max().min(16.0));
        &default
    } else {
        probes
    };
    match rho_of(profile, probes) {
        Ok(r) => json!({ "value": number(r.value), "error": number(r.error) }),
        Err(e) => json!({ "error_message": e.to_string() }),
    }
}

fn sl(a: &SlArgs) -> Result<Report, Failure> {
    let desc: ProfileDescriptor = inputs::resolve(&a.profile)?.parse()?;
    let profile = SlProfile::from_descriptor(&desc)?;
    let grid = Grid::new(a.h, a.x_max)?;
    let xs: Vec<f64> = (0..=grid.last_node()).map(|k| grid.position(k)).collect();
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut entries = Vec::new();
    for &lambda in &a.lambda {
        if a.renormalize {
            let r = renormalized_profile(&profile, lambda, grid)?;
            let values: Vec<f64> = xs.iter().map(|&x| if x == 0.0 { 0.0 } else { r.a(x) }).collect();
            entries.push(json!({
                "lambda": number(lambda),
                "rho": rho_json(&r, &a.probes),
                "a": values.iter().map(|v| number(*v)).collect::<Vec<_>>(),
            }));
            columns.push(values);
        } else {
            let sol = sl_solve(&profile, lambda, grid)?;
            entries.push(json!({
                "lambda": number(lambda),
                "error_estimate": number(sol.error_estimate()),
                "phi": sol.values().iter().map(|v| number(*v)).collect::<Vec<_>>(),
            }));
            columns.push(sol.values().to_vec());
        }
    }
    let name = if a.renormalize { "a" } else { "phi" };
    let mut csv = format!("x,{}\n", a.lambda.iter().map(|l| format!("{name}_{}", format_number(*l))).collect::<Vec<_>>().join(","));
    for (i, x) in xs.iter().enumerate() {
        csv.push_str(&format_number(*x));
        for c in &columns {
            csv.push(',');
            csv.push_str(&format_number(c[i]));
        }
        csv.push('\n');
    }
    let mut json = json!({
        "profile": to_value(&desc),
        "rho": rho_json(&profile, &a.probes),
        "x": xs.iter().map(|v| number(*v)).collect::<Vec<_>>(),
    });
    json[if a.renormalize { "renormalized" } else { "solutions" }] = Value::Array(entries);
    Ok(Report::json(json).with_csv(csv))
}

fn weyl(a: &WeylArgs) -> Result<Report, Failure> {
    let family: WeylFamily = a.family.parse()?;
    let w = weyl_data(family, a.d)?;
    let mut json = json!({
        "family": family.to_string(),
        "d": a.d,
        "rho": w.rho.iter().map(|v| number(*v)).collect::<Vec<_>>(),
        "neg_rho_in_orbit": w.neg_rho_in_orbit(),
    });
    if !a.point.is_empty() {
        if a.point.len() != a.d {
            return Err(Failure::usage(format!("--point needs {} coordinates", a.d)));
        }
        json["point_in_chamber"] = Value::Bool(w.chamber_contains(&a.point));
        json["dominant"] = w.dominant(&a.point).iter().map(|v| number(*v)).collect();
    }
    Ok(Report::json(json))
}

fn orbit(a: &OrbitArgs) -> Result<Report, Failure> {
    let group: CompactGroup = a.group.parse()?;
    let json = if a.positive {
        let e = positive_orbit_semicharacter_mc(group, &a.lambda, &a.x, a.samples, a.seed)?;
        json!({ "group": group.to_string(), "estimate": number(e.estimate), "stderr": number(e.stderr), "n": e.n, "seed": e.seed })
    } else {
        let e = orbit_character_mc(group, &a.lambda, &a.x, a.samples, a.seed)?;
        json!({
            "group": group.to_string(),
            "estimate": { "re": number(e.estimate.re), "im": number(e.estimate.im) },
            "stderr": number(e.stderr),
            "n": e.n,
            "seed": e.seed,
        })
    };
    Ok(Report::json(json))
}

fn unit_ball(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        if v.iter().map(|a| a * a).sum::<f64>() <= 1.0 {
            return v;
        }
    }
}

fn expo(a: &ExpoArgs) -> Result<Report, Failure> {
    if let (Some(model), Some(alpha0)) = (&a.model, &a.alpha0) {
        let hg = inputs::model(model)?;
        let alpha0 = inputs::uncertified(hg.as_ref(), alpha0)?;
        let c = exponentiality_estimate(hg.as_ref(), &alpha0, a.radius, a.samples, a.seed)?;
        let json = json!({
            "model": descriptor(hg.as_ref()),
            "alpha0": to_value(alpha0.descriptor()),
            "radius": number(a.radius),
            "samples": a.samples,
            "seed": a.seed,
            "estimate": number(c),
        });
        return Ok(Report::json(json));
    }
    if a.rho.is_empty() {
        return Err(Failure::usage("expo-check needs --model and --alpha0, or --rho".into()));
    }
    let group: CompactGroup = a.group.parse()?;
    let d = a.rho.len();
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let centre = |v: Vec<f64>| -> Vec<f64> {
        match group {
            CompactGroup::SO => v,
            CompactGroup::SU => {
                // project to trace zero; this only shortens |x - y|
                let m = v.iter().sum::<f64>() / v.len() as f64;
                v.iter().map(|x| x - m).collect()
            }
        }
    };
    let pairs: Vec<(Vec<f64>, Vec<f64>)> = (0..a.pairs)
        .map(|_| {
            let x: Vec<f64> = unit_ball(d, &mut rng).iter().map(|v| a.spread * v).collect();
            let u = unit_ball(d, &mut rng);
            let y: Vec<f64> = x.iter().zip(&u).map(|(p, q)| p + q).collect();
            (centre(x), centre(y))
        })
        .collect();
    let b = exponentiality_bound_check(group, &a.rho, &pairs, a.samples, a.seed.wrapping_add(1))?;
    let ok = b.max_ratio <= 1.0 + 3.0 * b.stderr;
    let json = json!({
        "group": group.to_string(),
        "rho": a.rho.iter().map(|v| number(*v)).collect::<Vec<_>>(),
        "seed": a.seed,
        "samples": a.samples,
        "pairs": pairs.iter().map(|(x, y)| json!({ "x": x.iter().map(|v| number(*v)).collect::<Vec<_>>(), "y": y.iter().map(|v| number(*v)).collect::<Vec<_>>() })).collect::<Vec<_>>(),
        "ratios": b.ratios.iter().map(|v| number(*v)).collect::<Vec<_>>(),
        "stderrs": b.stderrs.iter().map(|v| number(*v)).collect::<Vec<_>>(),
        "max_ratio": number(b.max_ratio),
        "max_ratio_stderr": number(b.stderr),
        "max_pair": b.pair_index,
    });
    Ok(Report::json(json).check(ok, || format!("growth ratio {} exceeds 1 + 3·{:e}", b.max_ratio, b.stderr)))
}

fn demo(a: &DemoArgs) -> Result<Report, Failure> {
    let hg = inputs::model("chebyshev")?;
    let alpha0 = Semicharacter::certified(hg.as_ref(), SemicharDescriptor::Chebyshev { c: a.c })?;
    if !alpha0.is_positive() {
        return Err(Failure::usage(format!("c = {} does not give a positive semicharacter", a.c)));
    }
    let sp = hg.space().clone();
    let e = hg.dirac(hg.identity());
    let mut rows = Vec::new();
    let mut csv = String::from("n,alpha0,tv_to_identity,transformed_mass_at_x,transformed_mass_at_identity\n");
    for n in 1..=a.n_max {
        let x = Coord::Index(n);
        let inv = 1.0 / alpha0.eval(&x);
        let mu = Measure::new(sp.clone(), [(hg.identity(), 1.0 - inv), (x.clone(), inv)]);
        let tv = mu.tv_distance(&e)?;
        let r = r_transform(&alpha0, &mu)?;
        let (at_x, at_e) = (r.weight_at(&x), r.weight_at(&hg.identity()));
        csv.push_str(&[n as f64, alpha0.eval(&x), tv, at_x, at_e].map(format_number).join(","));
        csv.push('\n');
        rows.push(json!({
            "n": n,
            "alpha0": number(alpha0.eval(&x)),
            "tv_to_identity": number(tv),
            "transformed_mass_at_x": number(at_x),
            "transformed_mass_at_identity": number(at_e),
        }));
    }
    let json = json!({ "alpha0": to_value(alpha0.descriptor()), "rows": rows });
    Ok(Report::json(json).with_csv(csv))
}

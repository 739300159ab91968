//! One entry point per subcommand; each validates its parameters, runs
//! the library pipeline, and assembles a deterministic report.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use real_tori::exact::IntMat;
use real_tori::klein::{admissible_boundary_count, pic_torus, validate_curve_class, KleinType};
use real_tori::orientability::{orientability_report, stability_bound_check, QuotSetup};
use real_tori::theta::{
    realizable_boundary_data, theta_chars_per_component, theta_class_for_point,
};
use real_tori::torus::{
    comessatti_basis, real_character_components, sw_function, AltForm, LatticeInvolution,
    RealLineBundleClass,
};

use crate::config::Params;
use crate::report::{bits_cell, pass_cell, Report};
use crate::suites::run_suite;
use crate::CliError;

fn int_mat(rows: &[Vec<i64>]) -> IntMat {
    IntMat::from_fn(rows.len(), rows[0].len(), |i, j| BigInt::from(rows[i][j]))
}

fn klein_from_params(p: &Params) -> Result<KleinType, CliError> {
    let g = p.required_usize("g")?;
    let r = p.required_usize("r")?;
    let a = p.required_usize("a")? as u8;
    Ok(KleinType::new(g, r, a)?)
}

/// Classification of a pair `(u, w₀)` over an explicit lattice
/// involution: Comessatti data, component counts, validity, and the full
/// Stiefel-Whitney table.
pub fn classify_torus(params: &Value) -> Result<Report, CliError> {
    let p = Params(params);
    let tau_rows = p
        .matrix_opt("tau")?
        .ok_or_else(|| CliError::invalid("missing required parameter tau"))?;
    let u_rows = p
        .matrix_opt("u")?
        .ok_or_else(|| CliError::invalid("missing required parameter u"))?;
    let w0 = p.bits_opt("w0")?;

    let lat = LatticeInvolution::new(int_mat(&tau_rows))?;
    let u = AltForm::new(int_mat(&u_rows))?;
    u.ensure_anti_invariant(&lat)?;

    let mut rep = Report::new("classify-torus", vec!["quantity", "key", "value"]);
    rep.echo("tau", format!("{tau_rows:?}"));
    rep.echo("u", format!("{u_rows:?}"));
    if let Some(bits) = &w0 {
        rep.echo("w0", bits_cell(bits));
    }

    let cb = comessatti_basis(&lat);
    rep.push(
        vec!["comessatti".into(), "a".into(), cb.a.to_string()],
        "comessatti-normal-form",
    );
    rep.push(
        vec!["comessatti".into(), "s".into(), cb.s.to_string()],
        "comessatti-normal-form",
    );
    let comps = lat.fixed_components();
    rep.push(
        vec![
            "fixed-locus".into(),
            "components".into(),
            comps.len().to_string(),
        ],
        "fixed-locus-components",
    );
    let (char_comps, _) = real_character_components(&lat, &u)?;
    rep.push(
        vec![
            "real-characters".into(),
            "components".into(),
            char_comps.to_string(),
        ],
        "real-character-components",
    );

    if let Some(bits) = w0 {
        let class = RealLineBundleClass::new(&lat, u, bits)?;
        rep.push(
            vec!["class".into(), "valid".into(), "true".into()],
            "fiber-product-classification",
        );
        let sw = sw_function(&class);
        let basis = sw.fixed_basis().clone();
        for (ci, comp) in sw.components().iter().enumerate() {
            for bcol in 0..basis.cols() {
                let vecstr: Vec<String> = (0..basis.rows())
                    .map(|i| basis[(i, bcol)].to_string())
                    .collect();
                rep.push(
                    vec![
                        format!("w1@{}", comp.label()),
                        format!("basis[{}]=({})", bcol, vecstr.join(",")),
                        sw.row(ci)[bcol].to_string(),
                    ],
                    "difference-formula",
                );
            }
        }
    }
    Ok(rep)
}

/// Validates a curve-level class `(d, w)` against the parity law and
/// reports the size of the admissible fiber.
pub fn classify_curve(params: &Value) -> Result<Report, CliError> {
    let p = Params(params);
    let t = klein_from_params(&p)?;
    let d = p.required_i64("d")?;
    let w = p
        .bits_opt("w")?
        .ok_or_else(|| CliError::invalid("missing required parameter w (boundary bits)"))?;

    let mut rep = Report::new("classify-curve", vec!["quantity", "value"]);
    rep.echo("type", format!("({},{},{})", t.g, t.r, t.a));
    rep.echo("d", d);
    rep.echo("w", bits_cell(&w));

    let class = validate_curve_class(t, d, &w)?;
    rep.push(vec!["valid".into(), "true".into()], "degree-parity");
    rep.push(
        vec![
            "admissible-vectors-at-degree".into(),
            admissible_boundary_count(t).to_string(),
        ],
        "degree-parity",
    );
    rep.push(
        vec![
            "degree-mod-2".into(),
            class.degree.rem_euclid(2).to_string(),
        ],
        "degree-parity",
    );
    Ok(rep)
}

/// Theta-characteristic boundary table for a topological type: realized
/// boundary vectors with multiplicities, the point-theta rows per circle,
/// the parity check on the realized set, and the component counts.
pub fn theta_table(params: &Value) -> Result<Report, CliError> {
    let p = Params(params);
    let t = klein_from_params(&p)?;
    let mut rep = Report::new("theta-table", vec!["row", "key", "value"]);
    rep.echo("type", format!("({},{},{})", t.g, t.r, t.a));

    rep.push(
        vec![
            "count".into(),
            "picard-components".into(),
            admissible_boundary_count(t).to_string(),
        ],
        "fixed-locus-components",
    );
    rep.push(
        vec![
            "count".into(),
            "theta-chars-per-component".into(),
            theta_chars_per_component(t.g).to_string(),
        ],
        "theta-count",
    );

    let e = realizable_boundary_data(t);
    for (q, m) in &e.all {
        rep.push(
            vec!["boundary-all".into(), bits_cell(q), m.to_string()],
            "theta-realizability",
        );
    }
    for (q, m) in &e.invariant {
        rep.push(
            vec!["boundary-invariant".into(), bits_cell(q), m.to_string()],
            "theta-realizability",
        );
    }
    if let Some(excl) = &e.effectiveness_exclusion {
        rep.push(
            vec![
                "effectiveness-exclusion-q".into(),
                bits_cell(excl),
                "out-of-scope".into(),
            ],
            "theta-realizability",
        );
    }
    // Parity of the realized invariant set: q([C^iota]) = s mod 2.
    let s_par = (t.comessatti_s() % 2) as u8;
    let parity_ok = e
        .invariant
        .iter()
        .all(|(q, _)| q.iter().fold(0u8, |a, &b| a ^ b) == s_par);
    rep.push(
        vec![
            "check".into(),
            "fixed-locus-parity".into(),
            pass_cell(parity_ok),
        ],
        "fixed-locus-parity",
    );

    // Point-theta boundary rows per base circle.
    let pt = pic_torus(t);
    for i0 in 1..=t.r {
        let cls = theta_class_for_point(&pt, i0)?;
        let boundary: Vec<u8> = pt
            .circle_duals
            .iter()
            .map(|cd| cls.w0_value(cd).expect("duals lie in the fixed sublattice"))
            .collect();
        rep.push(
            vec![
                format!("point-theta-w0[circle {i0}]"),
                "boundary".into(),
                bits_cell(&boundary),
            ],
            "point-theta-boundary",
        );
    }
    Ok(rep)
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let parts: Vec<&str> = s.split('/').collect();
    let parse_int = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|_| CliError::invalid(format!("bad rational component {x:?}")))
    };
    match parts.as_slice() {
        [a] => Ok(BigRational::from_integer(BigInt::from(parse_int(a)?))),
        [a, b] => Ok(BigRational::new(
            BigInt::from(parse_int(a)?),
            BigInt::from(parse_int(b)?),
        )),
        _ => Err(CliError::invalid(format!(
            "bad rational {s:?} (use p or p/q)"
        ))),
    }
}

/// Orientability of the real Quot locus (or symmetric power) per
/// component of the real Picard torus.
pub fn orientability(params: &Value) -> Result<Report, CliError> {
    let p = Params(params);
    let t = klein_from_params(&p)?;
    let d = p.required_i64("d")?;
    let rank0 = p.i64_opt("rank0")?.unwrap_or(1);
    let degree0 = p.i64_opt("deg0")?.unwrap_or(0);
    if rank0 < 1 {
        return Err(CliError::invalid("rank0 must be at least 1"));
    }
    let slope_max = match p.string_opt("slope-max")? {
        Some(s) => parse_rational(&s)?,
        None => BigRational::from_integer(BigInt::from(0)),
    };
    let p0_circle = p.usize_opt("p0-circle")?.unwrap_or(1);
    if !(1..=t.r).contains(&p0_circle) {
        return Err(CliError::invalid(format!(
            "p0-circle must be in 1..={}",
            t.r
        )));
    }
    let det_component = p.bits_opt("det-component")?.unwrap_or_default();

    let setup = QuotSetup {
        klein: t,
        rank0,
        degree0,
        slope_max,
        degree: d,
        p0_circle,
        det_component,
    };
    let torus = pic_torus(t);

    let mut rep = Report::new(
        "orientability",
        vec!["component", "fiber-rank", "w1-restriction", "orientable"],
    );
    rep.echo("type", format!("({},{},{})", t.g, t.r, t.a));
    rep.echo("d", d);
    rep.echo("rank0", rank0);
    rep.echo("deg0", degree0);
    rep.echo("p0-circle", p0_circle);

    let bounds = stability_bound_check(&setup);
    if !bounds.passed {
        return Err(CliError::invalid(format!(
            "degree below stability bound: {}",
            bounds.failures.join("; ")
        )));
    }
    let report = orientability_report(&setup, &torus)?;
    for row in &report.rows {
        rep.push(
            vec![
                row.label.clone(),
                report.fiber_rank.to_string(),
                bits_cell(&row.w1),
                row.orientable.to_string(),
            ],
            "euler-sequence-orientability",
        );
    }
    Ok(rep)
}

/// Numeric oracle batteries at a caller-chosen trial count.
pub fn holonomy_check(params: &Value, seed: u64) -> Result<Report, CliError> {
    let p = Params(params);
    let trials = p.usize_opt("trials")?.unwrap_or(200);
    let mut rep = Report::new("holonomy-check", vec!["property", "status", "detail"]);
    rep.echo("trials", trials);
    rep.seed = Some(seed);
    let results = crate::suites::holonomy_batteries(seed, trials);
    for r in &results {
        rep.push(
            vec![r.name.clone(), pass_cell(r.passed), r.detail.clone()],
            r.provenance,
        );
    }
    if !rep.all_passed() {
        // Render before failing so the caller still sees the rows.
        return Err(CliError::property(format!(
            "holonomy batteries failed:\n{}",
            rep.render(crate::config::OutputFormat::Tsv)
        )));
    }
    Ok(rep)
}

/// Runs a named verification suite; non-zero exit iff a property fails.
pub fn verify(params: &Value, seed: u64) -> Result<Report, CliError> {
    let p = Params(params);
    let suite = p
        .string_opt("suite")?
        .ok_or_else(|| CliError::invalid("missing required parameter suite"))?;
    let results = run_suite(&suite, seed)?;
    let mut rep = Report::new("verify", vec!["property", "status", "detail"]);
    rep.echo("suite", &suite);
    rep.seed = Some(seed);
    let mut failed = 0;
    for r in &results {
        rep.push(
            vec![r.name.clone(), pass_cell(r.passed), r.detail.clone()],
            r.provenance,
        );
        if !r.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(CliError::property(format!(
            "{failed} properties failed:\n{}",
            rep.render(crate::config::OutputFormat::Tsv)
        )));
    }
    Ok(rep)
}

/// Dispatch by command name.
pub fn run_command(command: &str, params: &Value, seed: u64) -> Result<Report, CliError> {
    let mut rep = match command {
        "classify-torus" => classify_torus(params),
        "classify-curve" => classify_curve(params),
        "theta-table" => theta_table(params),
        "orientability" => orientability(params),
        "holonomy-check" => holonomy_check(params, seed),
        "verify" => verify(params, seed),
        other => Err(CliError::invalid(format!("unknown command {other:?}"))),
    }?;
    if rep.seed.is_none() {
        rep.seed = Some(seed);
    }
    Ok(rep)
}

use numindex_core::attain::{attainment_set, bj_orthogonal_w, BjCertificate};
use numindex_core::dual::{count_extremes, extreme_dual_w, verify_hull_equality, EnumerationCap};
use numindex_core::index::{mcgregor, numerical_index_exact, numerical_index_search, SearchBudget};
use numindex_core::operator::{numerical_radius, numerical_range, op_norm};
use numindex_core::verify::{sampled_attainment, SampleConfig};
use numindex_core::{Operator, Space, SpaceKind};
use serde_json::{json, Value};

use crate::input::{load_exact_matrix, load_matrix, load_space};
use crate::report::{fmat, measured, q, qmat, qvec, space_definition, Provenance, Report};
use crate::{Cli, CliError, Command, DualBallAction, IndexMode, OpQuantity, SpaceAction};

pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
}

fn cap(cli: &Cli) -> EnumerationCap {
    if cli.allow_big {
        EnumerationCap::Lifted
    } else {
        EnumerationCap::Default
    }
}

fn sample_config(cli: &Cli, density: Option<usize>) -> SampleConfig {
    SampleConfig { density, eps: cli.eps, seed: cli.seed }
}

fn provenance_for(op: &Operator, space: &Space, cli: &Cli, density: Option<usize>) -> Provenance {
    match (space.is_exact(), op) {
        (true, Operator::Exact(_)) => Provenance::Exact,
        _ => Provenance::Sampled {
            density: Some(density.unwrap_or_else(|| numindex_core::verify::default_density(space.dim()))),
            seed: cli.seed,
        },
    }
}

fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let space_arg = match &cli.command {
        Command::Space { space, .. }
        | Command::Op { space, .. }
        | Command::DualBall { space, .. }
        | Command::Index { space, .. }
        | Command::Mcgregor { space }
        | Command::Hulls { space }
        | Command::Bj { space, .. }
        | Command::Attain { space, .. }
        | Command::Spear { space, .. } => space,
    };
    let loaded = load_space(space_arg, cli.symmetrize)?;
    let space = &loaded.space;

    // The dual definition is itself the output unless a report is requested.
    if let Command::Space { action: SpaceAction::Dual, .. } = cli.command {
        if !cli.json {
            let def = space_definition(&dual_space(space)?);
            return Ok(Output { stdout: pretty(&def), warnings: loaded.warnings });
        }
    }

    let report = build_report(cli, space)?;
    let stdout = if cli.json { pretty(&report.to_json()) } else { report.to_text() };
    Ok(Output { stdout, warnings: loaded.warnings })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn dual_space(space: &Space) -> Result<Space, CliError> {
    Ok(match space.kind() {
        SpaceKind::Polytope(_) => space.dualize()?,
        SpaceKind::Lp { p } => Space::lp(space.dim(), conjugate(*p))?.renamed(format!("dual({})", space.name())),
    })
}

fn build_report(cli: &Cli, space: &Space) -> Result<Report, CliError> {
    let mut certifications = Vec::new();
    let mut provenance = Provenance::Exact;
    let (command, inputs, result) = match &cli.command {
        Command::Space { action: SpaceAction::Info, .. } => {
            let mut r = json!({
                "name": space.name(),
                "dim": space.dim(),
                "exact": space.is_exact(),
                "smooth": space.is_smooth_space(),
                "strictly_convex": space.is_strictly_convex(),
            });
            match space.kind() {
                SpaceKind::Polytope(poly) => {
                    r["kind"] = json!("polytope");
                    r["vertex_count"] = json!(poly.vertices().len());
                    r["facet_count"] = json!(poly.facets().len());
                }
                SpaceKind::Lp { p } => {
                    r["kind"] = json!("lp");
                    r["p"] = if p.is_infinite() { json!("inf") } else { json!(p) };
                }
            }
            ("space info", json!({}), r)
        }
        Command::Space { action: SpaceAction::Dual, .. } => ("space dual", json!({}), space_definition(&dual_space(space)?)),
        Command::Op { quantity, matrix, density, .. } => {
            let op = load_matrix(matrix)?;
            let cfg = sample_config(cli, *density);
            provenance = provenance_for(&op, space, cli, *density);
            let inputs = json!({ "matrix": matrix_json(&op) });
            match quantity {
                OpQuantity::Norm => ("op norm", inputs, measured(&op_norm(space, &op, &cfg)?)),
                OpQuantity::Radius => ("op radius", inputs, measured(&numerical_radius(space, &op, &cfg)?)),
                OpQuantity::Range => {
                    let Operator::Exact(t) = &op else {
                        return Err(CliError::Input("op range needs exact matrix entries".into()));
                    };
                    let r = numerical_range(space, t)?;
                    provenance = Provenance::Exact;
                    let intervals: Vec<Value> = r
                        .facet_intervals
                        .iter()
                        .map(|f| json!({ "xstar": qvec(&f.xstar), "lo": q(&f.lo), "hi": q(&f.hi) }))
                        .collect();
                    (
                        "op range",
                        inputs,
                        json!({ "facet_intervals": intervals, "hull": [q(&r.hull.0), q(&r.hull.1)], "radius": q(&r.radius) }),
                    )
                }
            }
        }
        Command::DualBall { action: DualBallAction::Extremes, .. } => {
            let set = extreme_dual_w(space, cap(cli))?;
            certifications.push(format!(
                "tensor functionals equal the {} enumerated vertices of the dual ball",
                set.polar_vertices.len()
            ));
            let list: Vec<Value> = set
                .functionals
                .iter()
                .map(|t| json!({ "x": qvec(t.x()), "xstar": qvec(t.xstar()), "G": qmat(t.g()) }))
                .collect();
            ("dual-ball extremes", json!({}), json!({ "certified": set.certified, "functionals": list }))
        }
        Command::DualBall { action: DualBallAction::Count, .. } => {
            let c = count_extremes(space)?;
            (
                "dual-ball count",
                json!({}),
                json!({
                    "pair_count": c.pair_count,
                    "formula_value": c.formula_value,
                    "distinct_count": c.distinct_count,
                    "ratio": q(&c.ratio()),
                }),
            )
        }
        Command::Index { mode: IndexMode::Exact, .. } => {
            let r = numerical_index_exact(space, cap(cli))?;
            certifications.push(if r.degenerate {
                "nonzero operator with zero numerical radius".to_string()
            } else {
                format!("maximum operator norm over {} vertices of the numerical-radius ball", r.ball_vertices)
            });
            (
                "index exact",
                json!({}),
                json!({
                    "value": q(&r.value),
                    "extremal_operator": qmat(&r.extremal_operator),
                    "ball_vertices": r.ball_vertices,
                    "degenerate": r.degenerate,
                }),
            )
        }
        Command::Index { mode: IndexMode::Search, budget, .. } => {
            let b = SearchBudget { restarts: *budget, seed: cli.seed };
            let r = numerical_index_search(space, &b, &sample_config(cli, None))?;
            provenance = Provenance::Sampled { density: None, seed: cli.seed };
            (
                "index search",
                json!({ "budget": budget }),
                json!({
                    "upper_bound": r.upper_bound,
                    "witness": fmat(&r.argmin),
                    "restarts": r.restarts,
                    "evaluations": r.evaluations,
                }),
            )
        }
        Command::Mcgregor { .. } => {
            let r = mcgregor(space)?;
            let witness = r
                .witness
                .as_ref()
                .map(|w| json!({ "x": qvec(&w.x), "xstar": qvec(&w.xstar), "value": q(&w.value) }));
            let mut result = json!({ "index_one": r.index_one });
            if let Some(w) = witness {
                result["witness"] = w;
            }
            ("mcgregor", json!({}), result)
        }
        Command::Hulls { .. } => {
            let h = verify_hull_equality(space, cap(cli))?;
            certifications.push("mutual exact LP membership of vertex sets".into());
            ("hulls", json!({}), json!({ "w_dual_eq": h.w_dual_eq, "op_dual_eq": h.op_dual_eq }))
        }
        Command::Bj { t, w, .. } => {
            let t_m = load_exact_matrix(t)?;
            let family = w.iter().map(|a| load_exact_matrix(a)).collect::<Result<Vec<_>, _>>()?;
            let r = bj_orthogonal_w(space, &t_m, &family)?;
            let certificate = match &r.certificate {
                BjCertificate::Convex { pair_indices, coefficients, values } => {
                    certifications.push("zero lies in the convex hull of the attainment vectors".into());
                    json!({
                        "kind": "convex",
                        "pair_indices": pair_indices,
                        "coefficients": qvec(coefficients),
                        "values": values.iter().map(|v| qvec(v)).collect::<Vec<_>>(),
                    })
                }
                BjCertificate::Descent { lambda, perturbed_radius } => {
                    certifications.push("exact descent step".into());
                    json!({ "kind": "descent", "lambda": qvec(lambda), "perturbed_radius": q(perturbed_radius) })
                }
            };
            let inputs = json!({ "t": qmat(&t_m), "w": family.iter().map(qmat).collect::<Vec<_>>() });
            ("bj", inputs, json!({ "orthogonal": r.orthogonal, "radius": q(&r.radius), "certificate": certificate }))
        }
        Command::Attain { matrix, .. } => {
            let op = load_matrix(matrix)?;
            let inputs = json!({ "matrix": matrix_json(&op) });
            match (&op, space.is_exact()) {
                (Operator::Exact(t), true) => {
                    let a = attainment_set(space, t)?;
                    let pairs: Vec<Value> = a
                        .pairs
                        .iter()
                        .map(|p| json!({ "x": qvec(&p.x), "xstar": qvec(&p.xstar), "s": p.s.to_i64() }))
                        .collect();
                    ("attain", inputs, json!({ "radius": q(&a.radius), "pairs": pairs }))
                }
                _ => {
                    let density = numindex_core::verify::default_density(space.dim());
                    provenance = Provenance::Sampled { density: Some(density), seed: cli.seed };
                    let points = sampled_attainment(space, &op.to_f64(), density, cli.eps.max(1e-6))?;
                    ("attain", inputs, json!({ "points": points }))
                }
            }
        }
        Command::Spear { trials, .. } => {
            let r = numindex_core::index::spear_check_identity(space, *trials, cli.seed)?;
            provenance = Provenance::Sampled { density: None, seed: cli.seed };
            let mut result = json!({ "holds": r.holds, "trials_run": r.trials_run });
            if let Some(w) = &r.witness {
                result["witness"] = json!({ "a": qmat(&w.a), "lhs": q(&w.lhs), "rhs": q(&w.rhs) });
            }
            ("spear", json!({ "trials": trials }), result)
        }
    };
    Ok(Report { command: command.into(), space: space.name().into(), inputs, result, certifications, provenance })
}

fn matrix_json(op: &Operator) -> Value {
    match op {
        Operator::Exact(m) => qmat(m),
        Operator::Approx(m) => fmat(m),
    }
}

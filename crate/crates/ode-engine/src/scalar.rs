use serde::Serialize;

use crate::OdeError;

type Field = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Right-hand side `g` of `β̇ = g(β)` on `[0,1]`, with known kink abscissas.
pub struct ScalarField {
    pub g: Field,
    pub kinks: Vec<f64>,
}

impl ScalarField {
    pub fn new(g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        ScalarField {
            g: Box::new(g),
            kinks: Vec::new(),
        }
    }

    pub fn with_kinks(mut self, mut kinks: Vec<f64>) -> Self {
        kinks.retain(|k| (0.0..=1.0).contains(k));
        kinks.sort_by(f64::total_cmp);
        kinks.dedup();
        self.kinks = kinks;
        self
    }

    pub fn eval(&self, b: f64) -> f64 {
        (self.g)(b)
    }
}

impl std::fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField")
            .field("kinks", &self.kinks)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EqKind {
    Attractor,
    Repeller,
    Saddle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Equilibrium {
    pub beta: f64,
    pub kind: EqKind,
    /// Closed hull of the points whose flow ends here.
    pub basin: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftKind {
    Attractor,
    QAttractor,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lifted {
    pub beta: f64,
    pub h: [f64; 4],
    pub kind: LiftKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub equilibria: Vec<Equilibrium>,
    pub lifted: Vec<Lifted>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub includes_zero_saddle: bool,
    /// `g(0) ≥ 0` and `g(1) ≤ 0`.
    pub invariant: bool,
}

impl EquilibriumReport {
    pub fn attractors(&self) -> impl Iterator<Item = &Equilibrium> {
        self.equilibria
            .iter()
            .filter(|e| e.kind == EqKind::Attractor)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn sign(v: f64, tol: f64) -> i8 {
    if v > tol {
        1
    } else if v < -tol {
        -1
    } else {
        0
    }
}

fn bisect(f: &ScalarField, mut lo: f64, mut hi: f64, slo: i8, tol: f64) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f.eval(mid);
        if v == 0.0 {
            return mid;
        }
        if (v > 0.0) == (slo > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn kind_of(left: Option<i8>, right: Option<i8>) -> EqKind {
    let into_from_left = left.map(|s| s > 0);
    let into_from_right = right.map(|s| s < 0);
    match (into_from_left, into_from_right) {
        (Some(true), Some(true)) | (None, Some(true)) | (Some(true), None) => EqKind::Attractor,
        (Some(false), Some(false)) | (None, Some(false)) | (Some(false), None) => EqKind::Repeller,
        (None, None) => EqKind::Saddle,
        _ => EqKind::Saddle,
    }
}

/// Equilibria of `β̇ = g(β)` by sign scan over a uniform grid plus kinks,
/// bisection of each sign change, and one-sided sign classification.
///
/// Jumps of `g` across zero without a root (sign changes where bisection
/// ends with `|g|` not small) are not reported as equilibria.
pub fn classify_scalar(
    field: &ScalarField,
    grid_points: usize,
    refine_tol: f64,
) -> Result<EquilibriumReport, OdeError> {
    if grid_points < 2 {
        return Err(OdeError::BadArg("grid_points must be at least 2".into()));
    }
    let mut xs: Vec<f64> = (0..=grid_points)
        .map(|i| i as f64 / grid_points as f64)
        .collect();
    xs.extend(field.kinks.iter().copied());
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let vals: Vec<f64> = xs.iter().map(|&x| field.eval(x)).collect();
    if let Some(i) = vals.iter().position(|v| !v.is_finite()) {
        return Err(OdeError::NonFinite { time: xs[i] });
    }
    let zero_tol = refine_tol;
    let signs: Vec<i8> = vals.iter().map(|&v| sign(v, zero_tol)).collect();
    for i in 1..signs.len() {
        if signs[i] == 0 && signs[i - 1] == 0 {
            return Err(OdeError::Degenerate { at: xs[i] });
        }
    }
    // (root, sign just left, sign just right)
    let mut roots: Vec<(f64, Option<i8>, Option<i8>)> = Vec::new();
    let last = xs.len() - 1;
    for i in 0..=last {
        if signs[i] == 0 {
            let l = (i > 0).then(|| signs[i - 1]);
            let r = (i < last).then(|| signs[i + 1]);
            roots.push((xs[i], l, r));
        } else if i < last && signs[i + 1] != 0 && signs[i] != signs[i + 1] {
            let b = bisect(field, xs[i], xs[i + 1], signs[i], refine_tol);
            let scale = vals[i].abs().max(vals[i + 1].abs());
            if field.eval(b).abs() <= (1e3 * refine_tol).max(1e-9 * scale) {
                roots.push((b, Some(signs[i]), Some(signs[i + 1])));
            }
        }
    }
    let mut equilibria: Vec<Equilibrium> = roots
        .iter()
        .map(|&(b, l, r)| Equilibrium {
            beta: b,
            kind: kind_of(l, r),
            basin: [b, b],
        })
        .collect();
    // Between consecutive equilibria the flow has a constant direction.
    for k in 0..roots.len() {
        let (_, l, r) = roots[k];
        if l == Some(1) {
            equilibria[k].basin[0] = if k == 0 { 0.0 } else { roots[k - 1].0 };
        }
        if r == Some(-1) {
            equilibria[k].basin[1] = if k + 1 == roots.len() {
                1.0
            } else {
                roots[k + 1].0
            };
        }
    }
    Ok(EquilibriumReport {
        equilibria,
        lifted: Vec::new(),
        includes_zero_saddle: false,
        invariant: vals[0] >= -zero_tol && vals[last] <= zero_tol,
    })
}

/// Map scalar equilibria to `h(β*)`: attractors stay attractors, the rest
/// become q-attractors, and the origin is appended as a q-attractor.
pub fn lift_limits(report: &EquilibriumReport, h: impl Fn(f64) -> [f64; 4]) -> EquilibriumReport {
    let mut out = report.clone();
    out.lifted = report
        .equilibria
        .iter()
        .map(|e| Lifted {
            beta: e.beta,
            h: h(e.beta),
            kind: if e.kind == EqKind::Attractor {
                LiftKind::Attractor
            } else {
                LiftKind::QAttractor
            },
        })
        .collect();
    out.lifted.push(Lifted {
        beta: 0.0,
        h: [0.0; 4],
        kind: LiftKind::QAttractor,
    });
    out.includes_zero_saddle = true;
    out
}

use serde::Serialize;

use crate::OdeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    Attractor,
    Saddle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HoverClass {
    ConvergedAttractor,
    ConvergedSaddle,
    Hovering,
    Undecided,
}

/// Finite-sample reading of the tail of `betas` relative to `targets`.
///
/// Converged if the whole tail stays within `delta` of one target; hovering
/// if the tail enters the `delta`-neighbourhood and leaves the
/// `delta1`-neighbourhood at least twice each.
pub fn hover_classify(
    betas: &[f64],
    targets: &[(f64, TargetKind)],
    delta: f64,
    delta1: f64,
    tail_fraction: f64,
) -> Result<HoverClass, OdeError> {
    if betas.is_empty() {
        return Err(OdeError::Empty);
    }
    if !(0.0 < delta && delta < delta1) || !(0.0 < tail_fraction && tail_fraction < 1.0) {
        return Err(OdeError::BadArg(
            "need 0 < delta < delta1 and tail_fraction in (0,1)".into(),
        ));
    }
    let skip = ((1.0 - tail_fraction) * betas.len() as f64).floor() as usize;
    let tail = &betas[skip.min(betas.len() - 1)..];
    for &(t, kind) in targets {
        if tail.iter().all(|b| (b - t).abs() <= delta) {
            return Ok(match kind {
                TargetKind::Attractor => HoverClass::ConvergedAttractor,
                TargetKind::Saddle => HoverClass::ConvergedSaddle,
            });
        }
    }
    let dist = |b: f64| {
        targets
            .iter()
            .map(|(t, _)| (b - t).abs())
            .fold(f64::INFINITY, f64::min)
    };
    let (mut entries, mut exits) = (0, 0);
    let mut inside: Option<bool> = None;
    for &b in tail {
        let d = dist(b);
        if d <= delta && inside != Some(true) {
            entries += 1;
            inside = Some(true);
        } else if d > delta1 && inside != Some(false) {
            exits += 1;
            inside = Some(false);
        }
    }
    Ok(if entries >= 2 && exits >= 2 {
        HoverClass::Hovering
    } else {
        HoverClass::Undecided
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: [(f64, TargetKind); 2] = [(0.2, TargetKind::Attractor), (0.7, TargetKind::Saddle)];

    #[test]
    fn constant_at_target() {
        let b = vec![0.2; 50];
        assert_eq!(
            hover_classify(&b, &T, 0.01, 0.05, 0.5).unwrap(),
            HoverClass::ConvergedAttractor
        );
    }

    #[test]
    fn alternating_hovers() {
        let b: Vec<f64> = (0..100)
            .map(|i| if i % 2 == 0 { 0.7 } else { 0.8 })
            .collect();
        assert_eq!(
            hover_classify(&b, &T, 0.01, 0.05, 0.5).unwrap(),
            HoverClass::Hovering
        );
    }

    #[test]
    fn monotone_to_saddle() {
        let b: Vec<f64> = (0..1000).map(|i| 0.7 - 0.5 / (1.0 + i as f64)).collect();
        assert_eq!(
            hover_classify(&b, &T, 0.01, 0.05, 0.5).unwrap(),
            HoverClass::ConvergedSaddle
        );
    }

    #[test]
    fn drifting_is_undecided() {
        let b: Vec<f64> = (0..100).map(|i| 0.3 + 0.003 * i as f64).collect();
        assert_eq!(
            hover_classify(&b, &T, 0.01, 0.05, 0.5).unwrap(),
            HoverClass::Undecided
        );
    }

    #[test]
    fn empty_is_error() {
        assert_eq!(
            hover_classify(&[], &T, 0.01, 0.05, 0.5),
            Err(OdeError::Empty)
        );
    }
}

//! Resolution of the formal local models `u v = t_1^{n_1} ... t_r^{n_r}`
//! of a nodal family over a normal-crossings base, as a terminating
//! rewriting system on exponent vectors. The two phases: centers
//! `(u, v, t_i)` while some exponent is at least two, then centers
//! `(u, v, t_i, t_j)` for the surviving pairs of unit exponents.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::toric::{cone_for_nodal_model, ToricError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NodalError {
    #[error("model has no branches")]
    NoBranches,
    #[error("branch index {0} out of range")]
    BadBranch(usize),
    #[error("exponent at branch {0} must be at least 2")]
    ExponentTooSmall(usize),
    #[error("pair blowup requires all exponents in {{0,1}} and unit exponents at both branches")]
    BadPair,
    #[error(transparent)]
    Toric(#[from] ToricError),
}

/// The formal local model `u v = prod t_i^{n_i}`, carried entirely by its
/// exponent vector. Coordinate names for reporting are `u`, `v`,
/// `t1..tr`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodalModel {
    exponents: Vec<u32>,
}

impl NodalModel {
    pub fn new(exponents: Vec<u32>) -> Result<NodalModel, NodalError> {
        if exponents.is_empty() {
            return Err(NodalError::NoBranches);
        }
        Ok(NodalModel { exponents })
    }

    pub fn branches(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        let mut names = vec!["u".to_string(), "v".to_string()];
        names.extend((1..=self.branches()).map(|i| format!("t{i}")));
        names
    }

    /// Singular at the origin iff at least two exponents are positive or
    /// some exponent is at least two.
    pub fn is_singular(&self) -> bool {
        let positive = self.exponents.iter().filter(|&&n| n >= 1).count();
        positive >= 2 || self.exponents.iter().any(|&n| n >= 2)
    }

    /// Branch components of the singular locus: branches with exponent >= 2.
    pub fn branch_components(&self) -> Vec<usize> {
        (0..self.branches())
            .filter(|&i| self.exponents[i] >= 2)
            .collect()
    }

    /// Pair components: pairs of branches with unit-or-higher exponents.
    /// After the first phase these are exactly the singular components.
    pub fn pair_components(&self) -> Vec<(usize, usize)> {
        let pos: Vec<usize> = (0..self.branches())
            .filter(|&i| self.exponents[i] >= 1)
            .collect();
        let mut pairs = Vec::new();
        for a in 0..pos.len() {
            for b in a + 1..pos.len() {
                pairs.push((pos[a], pos[b]));
            }
        }
        pairs
    }
}

impl fmt::Display for NodalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "uv = ")?;
        let mut wrote = false;
        for (i, &n) in self.exponents.iter().enumerate() {
            if n == 0 {
                continue;
            }
            if wrote {
                write!(f, "*")?;
            }
            write!(f, "t{}", i + 1)?;
            if n > 1 {
                write!(f, "^{}", n)?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Phase {
    Step1,
    Step2,
}

/// One chart of a blowup, for reporting: its name and the residual model
/// it carries, when that residue is still of nodal shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartOutcome {
    pub chart: String,
    pub residual: Option<NodalModel>,
    pub singular: bool,
}

/// One blowup record: which phase, which center, what survived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupRecord {
    pub phase: Phase,
    /// 0-based branch indices of the center `(u, v, t_i ...)`.
    pub center: Vec<usize>,
    pub charts: Vec<ChartOutcome>,
    /// Singular residual models, globally deduplicated across charts.
    pub children: Vec<NodalModel>,
}

impl BlowupRecord {
    pub fn center_label(&self) -> String {
        let ts: Vec<String> = self.center.iter().map(|i| format!("t{}", i + 1)).collect();
        format!("(u,v,{})", ts.join(","))
    }
}

/// The full run of the resolution: ordered blowups and the terminal models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionTrace {
    pub initial: NodalModel,
    pub records: Vec<BlowupRecord>,
    /// Terminal models of nodal shape, all non-singular.
    pub frontier: Vec<NodalModel>,
}

impl ResolutionTrace {
    pub fn step1_count(&self) -> usize {
        self.records.iter().filter(|r| r.phase == Phase::Step1).count()
    }

    pub fn step2_count(&self) -> usize {
        self.records.iter().filter(|r| r.phase == Phase::Step2).count()
    }
}

/// Blowup along `(u, v, t_i)` for an exponent `n_i >= 2`: the two
/// exceptional charts are smooth graphs, and the branch chart carries the
/// model with `n_i` lowered by two.
pub fn step1_blowup(m: &NodalModel, i: usize) -> Result<Vec<NodalModel>, NodalError> {
    let record = step1_record(m, i)?;
    Ok(record.children)
}

fn step1_record(m: &NodalModel, i: usize) -> Result<BlowupRecord, NodalError> {
    if i >= m.branches() {
        return Err(NodalError::BadBranch(i));
    }
    if m.exponents[i] < 2 {
        return Err(NodalError::ExponentTooSmall(i));
    }
    let mut child_exp = m.exponents.clone();
    child_exp[i] -= 2;
    let child = NodalModel::new(child_exp)?;
    let singular = child.is_singular();
    let charts = vec![
        ChartOutcome {
            chart: "u".into(),
            residual: None,
            singular: false,
        },
        ChartOutcome {
            chart: "v".into(),
            residual: None,
            singular: false,
        },
        ChartOutcome {
            chart: format!("t{}", i + 1),
            residual: Some(child.clone()),
            singular,
        },
    ];
    Ok(BlowupRecord {
        phase: Phase::Step1,
        center: vec![i],
        charts,
        children: if singular { vec![child] } else { vec![] },
    })
}

/// Blowup along `(u, v, t_i, t_j)` for a model with all exponents in
/// `{0, 1}`: removes the `(i, j)` component of the singular locus; the
/// surviving components are the other unit pairs.
pub fn step2_blowup(m: &NodalModel, i: usize, j: usize) -> Result<Vec<NodalModel>, NodalError> {
    let record = step2_record(m, i, j)?;
    Ok(record.children)
}

fn pair_model(r: usize, i: usize, j: usize) -> NodalModel {
    let mut e = vec![0u32; r];
    e[i] = 1;
    e[j] = 1;
    NodalModel::new(e).expect("nonempty")
}

fn step2_record(m: &NodalModel, i: usize, j: usize) -> Result<BlowupRecord, NodalError> {
    if i >= m.branches() || j >= m.branches() {
        return Err(NodalError::BadBranch(i.max(j)));
    }
    let ok = i != j
        && m.exponents.iter().all(|&n| n <= 1)
        && m.exponents[i] == 1
        && m.exponents[j] == 1;
    if !ok {
        return Err(NodalError::BadPair);
    }
    let (i, j) = (i.min(j), i.max(j));
    let surviving: Vec<(usize, usize)> = m
        .pair_components()
        .into_iter()
        .filter(|&p| p != (i, j))
        .collect();
    let children: Vec<NodalModel> = surviving
        .iter()
        .map(|&(a, b)| pair_model(m.branches(), a, b))
        .collect();
    // chart bookkeeping: in the t_i chart the i-th exponent transfers to
    // the exceptional coordinate, so the chart model keeps the pairs away
    // from i; symmetrically for t_j; the u and v charts are smooth graphs
    let chart_model = |drop: usize| -> (Option<NodalModel>, bool) {
        let mut e = m.exponents.clone();
        e[drop] = 0;
        let model = NodalModel::new(e).expect("nonempty");
        let s = model.is_singular();
        (Some(model), s)
    };
    let (mi, si) = chart_model(i);
    let (mj, sj) = chart_model(j);
    let charts = vec![
        ChartOutcome {
            chart: "u".into(),
            residual: None,
            singular: false,
        },
        ChartOutcome {
            chart: "v".into(),
            residual: None,
            singular: false,
        },
        ChartOutcome {
            chart: format!("t{}", i + 1),
            residual: mi,
            singular: si,
        },
        ChartOutcome {
            chart: format!("t{}", j + 1),
            residual: mj,
            singular: sj,
        },
    ];
    Ok(BlowupRecord {
        phase: Phase::Step2,
        center: vec![i, j],
        charts,
        children,
    })
}

/// Runs the full resolution: branches in ascending index are lowered two
/// at a time, then the surviving unit pairs are blown up in lexicographic
/// order. The count of first-phase blowups is the sum of the halved
/// exponents, the second-phase count is the number of odd-exponent pairs.
pub fn resolve_nodal(m: &NodalModel) -> ResolutionTrace {
    let mut records: Vec<BlowupRecord> = Vec::new();
    let mut cur = m.clone();

    // termination measure: (sum of floor(n_i/2), number of unit pairs),
    // strictly decreasing lexicographically at every blowup
    let measure = |model: &NodalModel, pairs_left: usize| -> (u64, usize) {
        (
            model.exponents.iter().map(|&n| (n / 2) as u64).sum(),
            pairs_left,
        )
    };

    for i in 0..cur.branches() {
        while cur.exponents[i] >= 2 {
            let before = measure(&cur, cur.pair_components().len());
            let rec = step1_record(&cur, i).expect("exponent checked");
            let mut next_exp = cur.exponents.clone();
            next_exp[i] -= 2;
            let next = NodalModel::new(next_exp).expect("nonempty");
            let after = measure(&next, next.pair_components().len());
            assert!(after < before, "termination measure failed to decrease");
            records.push(rec);
            cur = next;
        }
    }

    debug_assert!(cur.exponents.iter().all(|&n| n <= 1));
    let mut pairs = cur.pair_components();
    let frontier = if cur.is_singular() {
        Vec::new()
    } else {
        vec![cur.clone()]
    };
    while let Some(&(i, j)) = pairs.first() {
        let before = (0u64, pairs.len());
        // the state keeps the full unit-exponent vector; the pair set
        // shrinks by exactly the blown-up component
        let rec = step2_record(&cur, i, j).expect("pair checked");
        pairs.remove(0);
        let after = (0u64, pairs.len());
        assert!(after < before, "termination measure failed to decrease");
        // deduplicate against the global remaining set: components not
        // meeting the center survive unchanged
        records.push(BlowupRecord {
            children: pairs
                .iter()
                .map(|&(a, b)| pair_model(cur.branches(), a, b))
                .collect(),
            ..rec
        });
    }

    ResolutionTrace {
        initial: m.clone(),
        records,
        frontier,
    }
}

/// Consistency check against the toric picture of the same hypersurface:
/// the associated cone is smooth exactly when the model is non-singular.
/// Models with all exponents zero are smooth on both sides by convention.
pub fn cross_validate_toric(m: &NodalModel) -> Result<bool, NodalError> {
    if m.exponents.iter().all(|&n| n == 0) {
        return Ok(true);
    }
    let cone = cone_for_nodal_model(&m.exponents)?;
    Ok(cone.is_smooth() == !m.is_singular())
}

/// Closed-form blowup counts for a model: the first-phase count and the
/// second-phase count.
pub fn expected_counts(m: &NodalModel) -> (u64, u64) {
    let step1: u64 = m.exponents.iter().map(|&n| (n / 2) as u64).sum();
    let odd = m.exponents.iter().filter(|&&n| n % 2 == 1).count() as u64;
    let step2 = odd * odd.saturating_sub(1) / 2;
    (step1, step2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(e: &[u32]) -> NodalModel {
        NodalModel::new(e.to_vec()).unwrap()
    }

    #[test]
    fn singularity_criterion() {
        assert!(!model(&[0]).is_singular());
        assert!(!model(&[1]).is_singular());
        assert!(model(&[2]).is_singular());
        assert!(model(&[1, 1]).is_singular());
        assert!(!model(&[0, 1]).is_singular());
    }

    #[test]
    fn step1_examples() {
        // exponent 2 drops to 0: smooth, no singular children
        assert!(step1_blowup(&model(&[2]), 0).unwrap().is_empty());
        // 5 -> 3
        assert_eq!(step1_blowup(&model(&[5]), 0).unwrap(), vec![model(&[3])]);
        // (3,1) at the first branch -> (1,1)
        assert_eq!(
            step1_blowup(&model(&[3, 1]), 0).unwrap(),
            vec![model(&[1, 1])]
        );
        assert_eq!(
            step1_blowup(&model(&[1]), 0).unwrap_err(),
            NodalError::ExponentTooSmall(0)
        );
    }

    #[test]
    fn step2_examples() {
        assert!(step2_blowup(&model(&[1, 1]), 0, 1).unwrap().is_empty());
        let children = step2_blowup(&model(&[1, 1, 1]), 0, 1).unwrap();
        assert_eq!(children, vec![model(&[1, 0, 1]), model(&[0, 1, 1])]);
        assert!(step2_blowup(&model(&[1, 0, 1]), 0, 2).unwrap().is_empty());
        assert_eq!(
            step2_blowup(&model(&[2, 1]), 0, 1).unwrap_err(),
            NodalError::BadPair
        );
    }

    #[test]
    fn resolve_counts() {
        let t = resolve_nodal(&model(&[0]));
        assert!(t.records.is_empty());
        assert_eq!(t.frontier, vec![model(&[0])]);

        let t = resolve_nodal(&model(&[7]));
        assert_eq!(t.step1_count(), 3);
        assert_eq!(t.step2_count(), 0);
        assert_eq!(t.frontier, vec![model(&[1])]);

        let t = resolve_nodal(&model(&[2, 3, 1]));
        assert_eq!(t.step1_count(), 2);
        assert_eq!(t.step2_count(), 1);
        assert_eq!(t.records.len(), 3);
        for f in &t.frontier {
            assert!(!f.is_singular());
        }
    }

    #[test]
    fn toric_cross_validation_examples() {
        assert!(cross_validate_toric(&model(&[1])).unwrap());
        assert!(cross_validate_toric(&model(&[2])).unwrap());
        assert!(cross_validate_toric(&model(&[1, 1])).unwrap());
        assert!(cross_validate_toric(&model(&[0])).unwrap());
    }

    #[test]
    fn center_labels() {
        let rec = step1_record(&model(&[0, 3]), 1).unwrap();
        assert_eq!(rec.center_label(), "(u,v,t2)");
        let rec = step2_record(&model(&[1, 0, 1]), 0, 2).unwrap();
        assert_eq!(rec.center_label(), "(u,v,t1,t3)");
    }
}

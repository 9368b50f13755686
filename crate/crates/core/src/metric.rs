//! Pseudometric tables, axiom checking, and the metric/pseudometric verdict.

use num::rational::BigRational;
use num::Zero;

/// A symmetric table of exact pairwise distances, `d[i][j]` between
/// `points[i]` and `points[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoMetricTable {
    pub points: Vec<String>,
    pub d: Vec<Vec<BigRational>>,
}

impl PseudoMetricTable {
    pub fn distance(&self, i: usize, j: usize) -> &BigRational {
        &self.d[i][j]
    }
}

/// Whether the zero-distance relation is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricVerdict {
    Metric,
    /// `classes` lists the zero-distance equivalence classes with at least
    /// two members, in order of first appearance.
    Pseudometric { classes: Vec<Vec<String>> },
}

/// A concrete failure of one of the pseudometric axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    Negative { x: String, y: String, value: BigRational },
    NonzeroDiagonal { x: String, value: BigRational },
    Asymmetric { x: String, y: String, forward: BigRational, backward: BigRational },
    /// `d(x, z) > d(x, via) + d(via, z)`.
    Triangle { x: String, via: String, z: String, direct: BigRational, detour: BigRational },
}

/// Outcome of checking a table. `verdict` is only meaningful (and only
/// present) when every axiom holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
    pub verdict: Option<MetricVerdict>,
}

impl AxiomReport {
    pub fn is_pseudometric(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("expected {points} rows in the distance table, found {rows}")]
    RowCountMismatch { points: usize, rows: usize },
    #[error("row {row} of the distance table has {len} entries, expected {points}")]
    RowLengthMismatch { row: usize, len: usize, points: usize },
}

/// Checks nonnegativity, zero diagonal, symmetry, and the triangle
/// inequality; on a clean table also classifies it as metric or pseudometric.
pub fn verify_pseudometric(table: &PseudoMetricTable) -> Result<AxiomReport, MetricError> {
    let n = table.points.len();
    if table.d.len() != n {
        return Err(MetricError::RowCountMismatch { points: n, rows: table.d.len() });
    }
    for (row, entries) in table.d.iter().enumerate() {
        if entries.len() != n {
            return Err(MetricError::RowLengthMismatch { row, len: entries.len(), points: n });
        }
    }

    let mut violations = Vec::new();
    for i in 0..n {
        if !table.d[i][i].is_zero() {
            violations.push(AxiomViolation::NonzeroDiagonal {
                x: table.points[i].clone(),
                value: table.d[i][i].clone(),
            });
        }
        for j in 0..n {
            if table.d[i][j] < BigRational::zero() {
                violations.push(AxiomViolation::Negative {
                    x: table.points[i].clone(),
                    y: table.points[j].clone(),
                    value: table.d[i][j].clone(),
                });
            }
            if i < j && table.d[i][j] != table.d[j][i] {
                violations.push(AxiomViolation::Asymmetric {
                    x: table.points[i].clone(),
                    y: table.points[j].clone(),
                    forward: table.d[i][j].clone(),
                    backward: table.d[j][i].clone(),
                });
            }
        }
    }
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                let detour = &table.d[i][j] + &table.d[j][k];
                if table.d[i][k] > detour {
                    violations.push(AxiomViolation::Triangle {
                        x: table.points[i].clone(),
                        via: table.points[j].clone(),
                        z: table.points[k].clone(),
                        direct: table.d[i][k].clone(),
                        detour,
                    });
                }
            }
        }
    }

    let verdict = if violations.is_empty() { Some(zero_classes_verdict(table)) } else { None };
    Ok(AxiomReport { violations, verdict })
}

/// On a valid pseudometric the zero-distance relation is an equivalence;
/// group points by their first zero-distance representative.
fn zero_classes_verdict(table: &PseudoMetricTable) -> MetricVerdict {
    let n = table.points.len();
    let mut representative = vec![0usize; n];
    for i in 0..n {
        representative[i] = (0..=i).find(|&j| table.d[i][j].is_zero()).unwrap_or(i);
    }
    let mut classes: Vec<Vec<String>> = Vec::new();
    for rep in 0..n {
        let members: Vec<String> = (0..n)
            .filter(|&i| representative[i] == rep)
            .map(|i| table.points[i].clone())
            .collect();
        if members.len() >= 2 {
            classes.push(members);
        }
    }
    if classes.is_empty() {
        MetricVerdict::Metric
    } else {
        MetricVerdict::Pseudometric { classes }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn table(points: &[&str], rows: &[&[(i64, i64)]]) -> PseudoMetricTable {
        PseudoMetricTable {
            points: points.iter().map(|s| s.to_string()).collect(),
            d: rows.iter().map(|r| r.iter().map(|&(n, d)| rat(n, d)).collect()).collect(),
        }
    }

    #[test]
    fn discrete_table_is_a_metric() {
        let t = table(
            &["a", "b", "c"],
            &[
                &[(0, 1), (1, 1), (1, 1)],
                &[(1, 1), (0, 1), (1, 1)],
                &[(1, 1), (1, 1), (0, 1)],
            ],
        );
        let report = verify_pseudometric(&t).unwrap();
        assert!(report.violations.is_empty());
        assert_eq!(report.verdict, Some(MetricVerdict::Metric));
    }

    #[test]
    fn zero_distance_pair_demotes_to_pseudometric() {
        let t = table(
            &["a", "b", "c"],
            &[
                &[(0, 1), (1, 1), (1, 1)],
                &[(1, 1), (0, 1), (0, 1)],
                &[(1, 1), (0, 1), (0, 1)],
            ],
        );
        let report = verify_pseudometric(&t).unwrap();
        assert!(report.violations.is_empty());
        assert_eq!(
            report.verdict,
            Some(MetricVerdict::Pseudometric { classes: vec![vec!["b".into(), "c".into()]] })
        );
    }

    #[test]
    fn each_axiom_failure_is_reported() {
        let negative = table(&["a", "b"], &[&[(0, 1), (-1, 2)], &[(-1, 2), (0, 1)]]);
        let report = verify_pseudometric(&negative).unwrap();
        assert!(report.violations.iter().any(|v| matches!(v, AxiomViolation::Negative { .. })));
        assert_eq!(report.verdict, None);

        let diagonal = table(&["a", "b"], &[&[(1, 1), (1, 1)], &[(1, 1), (0, 1)]]);
        let report = verify_pseudometric(&diagonal).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::NonzeroDiagonal { .. })));

        let asymmetric = table(&["a", "b"], &[&[(0, 1), (1, 1)], &[(2, 1), (0, 1)]]);
        let report = verify_pseudometric(&asymmetric).unwrap();
        assert!(report.violations.iter().any(|v| matches!(v, AxiomViolation::Asymmetric { .. })));

        let triangle = table(
            &["a", "b", "c"],
            &[
                &[(0, 1), (1, 1), (5, 1)],
                &[(1, 1), (0, 1), (1, 1)],
                &[(5, 1), (1, 1), (0, 1)],
            ],
        );
        let report = verify_pseudometric(&triangle).unwrap();
        let violation = report
            .violations
            .iter()
            .find(|v| matches!(v, AxiomViolation::Triangle { .. }))
            .unwrap();
        match violation {
            AxiomViolation::Triangle { x, via, z, direct, detour } => {
                assert_eq!((x.as_str(), via.as_str(), z.as_str()), ("a", "b", "c"));
                assert_eq!(direct, &rat(5, 1));
                assert_eq!(detour, &rat(2, 1));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn shape_errors_are_rejected() {
        let missing_row = PseudoMetricTable {
            points: vec!["a".into(), "b".into()],
            d: vec![vec![rat(0, 1), rat(1, 1)]],
        };
        assert_eq!(
            verify_pseudometric(&missing_row),
            Err(MetricError::RowCountMismatch { points: 2, rows: 1 })
        );

        let ragged = PseudoMetricTable {
            points: vec!["a".into(), "b".into()],
            d: vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1)]],
        };
        assert_eq!(
            verify_pseudometric(&ragged),
            Err(MetricError::RowLengthMismatch { row: 1, len: 1, points: 2 })
        );
    }
}

//! Combinatorics of a finite point-line incidence.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Line, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementSummary {
    pub line_count: usize,
    pub point_count: usize,
    /// Multiset `{points on a line -> number of such lines}`.
    pub points_per_line: BTreeMap<usize, usize>,
    pub lines_per_point: BTreeMap<usize, usize>,
    pub signature: String,
}

impl ArrangementSummary {
    pub fn from_incidence(lines: &[Line], points: &[ProjPoint]) -> Self {
        let mut per_line = BTreeMap::new();
        let mut on_point = vec![0usize; points.len()];
        for l in lines {
            let mut k = 0;
            for (i, p) in points.iter().enumerate() {
                if l.contains(p) {
                    k += 1;
                    on_point[i] += 1;
                }
            }
            *per_line.entry(k).or_insert(0) += 1;
        }
        let mut per_point = BTreeMap::new();
        for k in on_point {
            *per_point.entry(k).or_insert(0) += 1;
        }
        let signature = format!("({}, {})", part(&per_line), part(&per_point));
        Self {
            line_count: lines.len(),
            point_count: points.len(),
            points_per_line: per_line,
            lines_per_point: per_point,
            signature,
        }
    }

    /// Total number of incidences, counted from either side.
    pub fn incidences(&self) -> (usize, usize) {
        let count = |m: &BTreeMap<usize, usize>| m.iter().map(|(k, n)| k * n).sum();
        (count(&self.points_per_line), count(&self.lines_per_point))
    }
}

fn part(m: &BTreeMap<usize, usize>) -> String {
    m.iter().rev().map(|(k, n)| format!("{n}_{k}")).collect::<Vec<_>>().join(" + ")
}

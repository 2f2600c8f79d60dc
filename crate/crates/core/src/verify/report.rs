//! Matching numeric eigenvalues against analytic levels.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const DEFAULT_E_TOL: f64 = 1e-3;
pub const DEFAULT_IM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelMatch {
    pub analytic: f64,
    pub numeric: Complex64,
    pub gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnmatchedLevel {
    pub analytic: f64,
    /// Another analytic level at the same energy took the only numeric
    /// eigenvalue available there.
    pub crossing_collapse: bool,
}

/// Several coincident analytic levels that the discretization resolved into
/// a cluster of nearby complex eigenvalues, as happens around a defective
/// (Jordan) eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitCluster {
    pub analytic: f64,
    pub numeric: Vec<Complex64>,
    /// `|mean(numeric) - analytic|`.
    pub centroid_gap: f64,
    /// `max |numeric - analytic|`.
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub matches: Vec<LevelMatch>,
    pub split_clusters: Vec<SplitCluster>,
    pub unmatched_analytic: Vec<UnmatchedLevel>,
    pub spurious_numeric: Vec<Complex64>,
    pub max_imag: f64,
}

impl SpectrumReport {
    pub fn max_gap(&self) -> f64 {
        self.matches.iter().map(|m| m.gap).fold(0.0, f64::max)
    }

    /// Every analytic level matched, part of a split cluster, or absorbed by
    /// a coincident matched level.
    pub fn all_accounted(&self) -> bool {
        self.unmatched_analytic.iter().all(|u| u.crossing_collapse)
    }

    pub fn all_matched(&self) -> bool {
        self.unmatched_analytic.is_empty() && self.split_clusters.is_empty()
    }
}

/// Greedy nearest matching. Candidate pairs satisfy `|Im| <= im_tol` and
/// `|Re - E| <= e_tol`; they are taken in order of increasing `|Re - E|`, and
/// each analytic level and each numeric eigenvalue is used at most once.
///
/// A group of `g >= 2` unmatched analytic levels at one energy `E` is then
/// accounted for by the `g` unused eigenvalues nearest to `E` when all of
/// them lie within `sqrt(e_tol)` of `E` and their mean within `e_tol`.
///
/// Unused near-real eigenvalues with `Re < -e_tol` are reported as spurious;
/// those above belong to the discretized continuum.
pub fn match_spectrum(
    numeric: &[Complex64],
    analytic: &[f64],
    e_tol: f64,
    im_tol: f64,
) -> SpectrumReport {
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (i, &e) in analytic.iter().enumerate() {
        for (j, z) in numeric.iter().enumerate() {
            let gap = (z.re - e).abs();
            if z.im.abs() <= im_tol && gap <= e_tol {
                candidates.push((gap, i, j));
            }
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut taken_a = vec![None; analytic.len()];
    let mut used_n = vec![false; numeric.len()];
    for (gap, i, j) in candidates {
        if taken_a[i].is_none() && !used_n[j] {
            taken_a[i] = Some((j, gap));
            used_n[j] = true;
        }
    }
    let mut in_cluster = vec![false; analytic.len()];
    let mut split_clusters = Vec::new();
    for i in 0..analytic.len() {
        if taken_a[i].is_some() || in_cluster[i] {
            continue;
        }
        let e = analytic[i];
        let group: Vec<usize> = (i..analytic.len())
            .filter(|&k| taken_a[k].is_none() && !in_cluster[k] && (analytic[k] - e).abs() <= e_tol)
            .collect();
        if group.len() < 2 {
            continue;
        }
        let mut near: Vec<usize> = (0..numeric.len()).filter(|&j| !used_n[j]).collect();
        near.sort_by(|&a, &b| (numeric[a] - e).norm().total_cmp(&(numeric[b] - e).norm()));
        near.truncate(group.len());
        if near.len() < group.len() {
            continue;
        }
        let radius = near
            .iter()
            .map(|&j| (numeric[j] - e).norm())
            .fold(0.0, f64::max);
        let centroid = near.iter().map(|&j| numeric[j]).sum::<Complex64>() / near.len() as f64;
        let centroid_gap = (centroid - e).norm();
        if radius <= e_tol.sqrt() && centroid_gap <= e_tol {
            for &j in &near {
                used_n[j] = true;
            }
            for &k in &group {
                in_cluster[k] = true;
            }
            split_clusters.push(SplitCluster {
                analytic: e,
                numeric: near.iter().map(|&j| numeric[j]).collect(),
                centroid_gap,
                radius,
            });
        }
    }
    let mut matches = Vec::new();
    let mut unmatched = Vec::new();
    for (i, &e) in analytic.iter().enumerate() {
        if in_cluster[i] {
            continue;
        }
        match taken_a[i] {
            Some((j, gap)) => matches.push(LevelMatch {
                analytic: e,
                numeric: numeric[j],
                gap,
            }),
            None => {
                let crossing_collapse = analytic
                    .iter()
                    .enumerate()
                    .any(|(k, &f)| k != i && taken_a[k].is_some() && (f - e).abs() <= e_tol);
                unmatched.push(UnmatchedLevel {
                    analytic: e,
                    crossing_collapse,
                });
            }
        }
    }
    let spurious = numeric
        .iter()
        .zip(&used_n)
        .filter(|(z, used)| !**used && z.im.abs() <= im_tol && z.re < -e_tol)
        .map(|(z, _)| *z)
        .collect();
    let max_imag = matches
        .iter()
        .map(|m| m.numeric.im.abs())
        .fold(0.0, f64::max);
    SpectrumReport {
        matches,
        split_clusters,
        unmatched_analytic: unmatched,
        spurious_numeric: spurious,
        max_imag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn matches_and_excludes_continuum() {
        let r = match_spectrum(
            &[c(-3.99998, 0.0), c(-0.99997, 1e-9), c(0.3, 0.0)],
            &[-4.0, -1.0],
            1e-3,
            1e-6,
        );
        assert_eq!(r.matches.len(), 2);
        assert!(r.unmatched_analytic.is_empty() && r.spurious_numeric.is_empty());
        assert!((r.max_imag - 1e-9).abs() < 1e-20);
    }

    #[test]
    fn coincident_levels_collapse() {
        let r = match_spectrum(
            &[c(-4.0, 0.0), c(-1.0, 0.0)],
            &[-4.0, -1.0, -1.0],
            1e-3,
            1e-6,
        );
        assert_eq!(r.matches.len(), 2);
        assert_eq!(r.unmatched_analytic.len(), 1);
        assert!(r.unmatched_analytic[0].crossing_collapse);
        assert!(r.all_accounted());
    }

    #[test]
    fn defective_pair_forms_cluster() {
        let r = match_spectrum(
            &[c(-4.0, 0.0), c(-1.00008, 3.7e-3), c(-1.00008, -3.7e-3)],
            &[-4.0, -1.0, -1.0],
            1e-3,
            1e-6,
        );
        assert_eq!(r.matches.len(), 1);
        assert_eq!(r.split_clusters.len(), 1);
        assert!(r.unmatched_analytic.is_empty() && r.spurious_numeric.is_empty());
        assert!((r.split_clusters[0].centroid_gap - 8e-5).abs() < 1e-9);
        assert!(r.all_accounted() && !r.all_matched());
    }

    #[test]
    fn isolated_complex_pair_is_not_a_cluster() {
        let r = match_spectrum(&[c(-1.0, 0.1), c(-1.0, -0.1)], &[-1.0, -1.0], 1e-3, 1e-6);
        assert!(r.split_clusters.is_empty());
        assert!(!r.all_accounted());
    }

    #[test]
    fn reports_spurious_and_genuine_misses() {
        let r = match_spectrum(&[c(-2.0, 0.0), c(-0.5, 1e-3)], &[-1.0], 1e-3, 1e-6);
        assert_eq!(r.spurious_numeric, vec![c(-2.0, 0.0)]);
        assert!(!r.unmatched_analytic[0].crossing_collapse);
        assert!(!r.all_accounted());
    }
}

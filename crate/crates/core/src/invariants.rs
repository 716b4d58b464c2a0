//! Distance, resistance and spanning-tree invariants, each by at least two
//! independent routes.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{gutman_closed, kfstar_closed, tau_closed};
use crate::error::{Error, Result};
use crate::exact::{bareiss_det_integer, ExactValue};
use crate::graph::Graph;
use crate::numeric::{laplacian, normalized_laplacian, pseudoinverse_psd, sym_eigenvalues};

/// Warning attached to `B_1²` reports.
pub const PATTERN_BOUNDARY_WARNING: &str =
    "pattern-regime: false (n = 1 is 5-regular; the reduced-matrix pattern does not apply)";

/// Relative disagreement above which the spectral spanning-tree probe warns.
pub const TAU_PROBE_TOL: f64 = 1e-6;

fn rel_delta(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// All-pairs hop distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    order: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.order + j]
    }

    pub fn max(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }
}

/// BFS from every vertex. Disconnected graphs are rejected.
pub fn distance_matrix(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.order();
    let rows: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|s| {
            g.bfs(s)
                .into_iter()
                .enumerate()
                .map(|(v, d)| d.ok_or(Error::Disconnected { from: s, vertex: v }))
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    Ok(DistanceMatrix {
        order: n,
        d: rows.into_iter().flatten().collect(),
    })
}

/// `W(G) = Σ_{i<j} d_ij`.
pub fn wiener(g: &Graph) -> Result<BigInt> {
    let d = distance_matrix(g)?;
    Ok(weighted_distance_sum(&d, |_, _| 1))
}

/// `Gut(G) = Σ_{i<j} d_i d_j d_ij`.
pub fn gutman(g: &Graph) -> Result<BigInt> {
    let d = distance_matrix(g)?;
    Ok(weighted_distance_sum(&d, |i, j| {
        (g.degree(i) * g.degree(j)) as u64
    }))
}

fn weighted_distance_sum(
    d: &DistanceMatrix,
    weight: impl Fn(usize, usize) -> u64 + Sync,
) -> BigInt {
    (0..d.order())
        .into_par_iter()
        .map(|i| {
            (i + 1..d.order()).fold(BigInt::zero(), |acc, j| {
                acc + BigInt::from(weight(i, j)) * d.get(i, j)
            })
        })
        .reduce(BigInt::zero, |a, b| a + b)
}

/// Effective resistances between all vertex pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceMatrix {
    order: usize,
    r: Vec<f64>,
}

impl ResistanceMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.r[i * self.order + j]
    }

    /// `max_{i,j} (r_ij − d_ij)`; never above `1e-9` for a valid graph.
    pub fn max_excess_over(&self, d: &DistanceMatrix) -> f64 {
        (0..self.order)
            .flat_map(|i| (0..self.order).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j) - d.get(i, j) as f64)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `r_ij = L⁺_ii + L⁺_jj − 2L⁺_ij` from the Laplacian pseudoinverse.
pub fn resistance_matrix(g: &Graph) -> Result<ResistanceMatrix> {
    g.ensure_connected()?;
    let n = g.order();
    let p = pseudoinverse_psd(&laplacian(g))?;
    let mut r = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = (p.get(i, i) + p.get(j, j) - 2.0 * p.get(i, j)).max(0.0);
            r[i * n + j] = v;
            r[j * n + i] = v;
        }
    }
    Ok(ResistanceMatrix { order: n, r })
}

/// A resistance-sum index by summing resistances and by the spectral identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoRoutes {
    pub resistance: f64,
    pub spectral: f64,
}

impl TwoRoutes {
    pub fn rel_delta(&self) -> f64 {
        rel_delta(self.resistance, self.spectral)
    }
}

/// `Kf(G)`: `Σ r_ij` and `n Σ_{i≥2} 1/μ_i`.
pub fn kirchhoff_index(g: &Graph) -> Result<TwoRoutes> {
    let r = resistance_matrix(g)?;
    kirchhoff_from(g, &r)
}

fn kirchhoff_from(g: &Graph, r: &ResistanceMatrix) -> Result<TwoRoutes> {
    let n = g.order();
    let resistance = pair_sum(n, |i, j| r.get(i, j));
    let mu = sym_eigenvalues(&laplacian(g))?;
    let spectral = n as f64 * mu.values().iter().skip(1).map(|m| 1.0 / m).sum::<f64>();
    Ok(TwoRoutes {
        resistance,
        spectral,
    })
}

/// `Kf*(G)`: `Σ d_i d_j r_ij` and `2m Σ_{i≥2} 1/λ_i`.
pub fn degree_kirchhoff_index(g: &Graph) -> Result<TwoRoutes> {
    let r = resistance_matrix(g)?;
    degree_kirchhoff_from(g, &r)
}

fn degree_kirchhoff_from(g: &Graph, r: &ResistanceMatrix) -> Result<TwoRoutes> {
    let resistance = pair_sum(g.order(), |i, j| {
        (g.degree(i) * g.degree(j)) as f64 * r.get(i, j)
    });
    let lambda = sym_eigenvalues(&normalized_laplacian(g))?;
    let spectral =
        2.0 * g.size() as f64 * lambda.values().iter().skip(1).map(|l| 1.0 / l).sum::<f64>();
    Ok(TwoRoutes {
        resistance,
        spectral,
    })
}

fn pair_sum(n: usize, f: impl Fn(usize, usize) -> f64) -> f64 {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| f(i, j))
        .sum()
}

/// Spanning-tree count: exact Matrix-Tree determinant plus a float probe.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTrees {
    /// Determinant of the Laplacian with row/column 0 removed.
    pub exact: BigInt,
    /// `round(∏d_i · ∏_{k≥2} λ_k / 2m)`; may be `inf` for very large counts.
    pub spectral: f64,
    /// Relative gap between the unrounded spectral value and `exact`.
    pub rel_delta: f64,
    /// The probe disagreed by more than [`TAU_PROBE_TOL`].
    pub warning: bool,
}

/// Exact count by fraction-free determinant of the reduced Laplacian.
pub fn matrix_tree_count(g: &Graph) -> Result<BigInt> {
    g.ensure_connected()?;
    let n = g.order();
    if n == 1 {
        return Ok(BigInt::from(1));
    }
    let entries: Vec<BigInt> = (1..n)
        .flat_map(|i| (1..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            if i == j {
                BigInt::from(g.degree(i))
            } else if g.has_edge(i, j) {
                BigInt::from(-1)
            } else {
                BigInt::zero()
            }
        })
        .collect();
    Ok(bareiss_det_integer(n - 1, entries))
}

/// Natural log of a positive big integer.
fn big_ln(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().map_or(f64::INFINITY, f64::ln) + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of `∏d_i · ∏_{k≥2} λ_k / 2m`.
pub fn spectral_tree_log(g: &Graph) -> Result<f64> {
    g.ensure_connected()?;
    let lambda = sym_eigenvalues(&normalized_laplacian(g))?;
    let log_degrees: f64 = g.degrees().iter().map(|&d| (d as f64).ln()).sum();
    let log_lambda: f64 = lambda.values().iter().skip(1).map(|l| l.ln()).sum();
    Ok(log_degrees + log_lambda - (2.0 * g.size() as f64).ln())
}

pub fn spanning_trees(g: &Graph) -> Result<SpanningTrees> {
    let exact = matrix_tree_count(g)?;
    if g.order() == 1 {
        return Ok(SpanningTrees {
            exact,
            spectral: 1.0,
            rel_delta: 0.0,
            warning: false,
        });
    }
    let log_spec = spectral_tree_log(g)?;
    let rel_delta = ((log_spec - big_ln(&exact)).exp() - 1.0).abs();
    Ok(SpanningTrees {
        exact,
        spectral: log_spec.exp().round(),
        rel_delta,
        warning: rel_delta.is_nan() || rel_delta > TAU_PROBE_TOL,
    })
}

/// Identifies the graph a report was computed for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDescriptor {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauRoutes {
    pub matrix_tree: String,
    pub spectral: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Routes {
    pub kf: TwoRoutes,
    pub kf_star: TwoRoutes,
    pub tau: TauRoutes,
}

/// Maximum relative disagreement between the routes of each quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Deltas {
    pub kf: f64,
    pub kf_star: f64,
    pub tau: f64,
}

/// Closed-form values for a strong prism next to the computed ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrismClosedForms {
    pub pattern_regime: bool,
    pub kf_star: ExactValue,
    pub tau: ExactValue,
    pub gutman: ExactValue,
    pub kf_star_rel_delta: f64,
    pub tau_matches: bool,
    pub gutman_matches: bool,
}

/// Every invariant of one graph, with per-route values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub graph: GraphDescriptor,
    pub wiener: String,
    pub gutman: String,
    pub kf: f64,
    pub kf_star: f64,
    pub tau: String,
    pub routes: Routes,
    pub deltas: Deltas,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub closed_forms: Option<PrismClosedForms>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generated_at: Option<u64>,
}

impl InvariantReport {
    pub fn compute(g: &Graph, family: Option<&str>, n: Option<usize>) -> Result<Self> {
        g.ensure_connected()?;
        let r = resistance_matrix(g)?;
        let kf = kirchhoff_from(g, &r)?;
        let kf_star = degree_kirchhoff_from(g, &r)?;
        let trees = spanning_trees(g)?;
        let mut warnings = Vec::new();
        if trees.warning {
            warnings.push(format!(
                "spectral spanning-tree probe differs from the exact count by {:.3e} (relative)",
                trees.rel_delta
            ));
        }
        Ok(InvariantReport {
            graph: GraphDescriptor {
                family: family.map(str::to_owned),
                n,
                vertices: g.order(),
                edges: g.size(),
            },
            wiener: wiener(g)?.to_string(),
            gutman: gutman(g)?.to_string(),
            kf: kf.resistance,
            kf_star: kf_star.resistance,
            tau: trees.exact.to_string(),
            routes: Routes {
                kf,
                kf_star,
                tau: TauRoutes {
                    matrix_tree: trees.exact.to_string(),
                    spectral: trees.spectral,
                },
            },
            deltas: Deltas {
                kf: kf.rel_delta(),
                kf_star: kf_star.rel_delta(),
                tau: trees.rel_delta,
            },
            warnings,
            closed_forms: None,
            generated_at: None,
        })
    }

    /// Adds the closed-form values for `B_n²`. For `n = 1` a boundary
    /// warning is recorded.
    pub fn attach_prism_closed_forms(&mut self, n: usize) -> Result<()> {
        let kf_star = kfstar_closed(n)?;
        let tau = tau_closed(n)?;
        let gut = gutman_closed(n)?;
        let pattern_regime = kf_star.pattern_regime;
        if !pattern_regime {
            self.warnings.push(PATTERN_BOUNDARY_WARNING.to_owned());
        }
        let tau_exact = ExactValue::new(&tau.value);
        let gut_exact = ExactValue::new(&gut.value);
        self.closed_forms = Some(PrismClosedForms {
            pattern_regime,
            kf_star_rel_delta: rel_delta(crate::exact::to_f64(&kf_star.value), self.kf_star),
            tau_matches: tau_exact.rational == self.tau,
            gutman_matches: gut_exact.rational == self.gutman,
            kf_star: ExactValue::new(&kf_star.value),
            tau: tau_exact,
            gutman: gut_exact,
        });
        Ok(())
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub const CSV_HEADER: [&'static str; 12] = [
        "family",
        "n",
        "vertices",
        "edges",
        "wiener",
        "gutman",
        "kf",
        "kf_star",
        "tau",
        "delta_kf",
        "delta_kf_star",
        "delta_tau",
    ];

    /// One CSV record matching [`Self::CSV_HEADER`].
    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.graph.family.clone().unwrap_or_default(),
            self.graph.n.map(|n| n.to_string()).unwrap_or_default(),
            self.graph.vertices.to_string(),
            self.graph.edges.to_string(),
            self.wiener.clone(),
            self.gutman.clone(),
            self.kf.to_string(),
            self.kf_star.to_string(),
            self.tau.clone(),
            self.deltas.kf.to_string(),
            self.deltas.kf_star.to_string(),
            self.deltas.tau.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{standard_graph, strong_prism_polyomino, StandardKind};

    fn path(n: usize) -> Graph {
        standard_graph(StandardKind::Path, n).unwrap()
    }
    fn cycle(n: usize) -> Graph {
        standard_graph(StandardKind::Cycle, n).unwrap()
    }
    fn complete(n: usize) -> Graph {
        standard_graph(StandardKind::Complete, n).unwrap()
    }

    #[test]
    fn distances() {
        assert_eq!(distance_matrix(&path(3)).unwrap().max(), 2);
        assert_eq!(distance_matrix(&cycle(4)).unwrap().get(0, 2), 2);
        let d = distance_matrix(&strong_prism_polyomino(1).unwrap()).unwrap();
        for i in 0..8 {
            let ones = (0..8).filter(|&j| d.get(i, j) == 1).count();
            assert_eq!(ones, 5);
            assert!((0..8).all(|j| j == i || (1..=2).contains(&d.get(i, j))));
        }
        let split = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(matches!(
            distance_matrix(&split),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn wiener_and_gutman() {
        assert_eq!(wiener(&path(3)).unwrap(), BigInt::from(4));
        assert_eq!(wiener(&cycle(4)).unwrap(), BigInt::from(8));
        let b1 = strong_prism_polyomino(1).unwrap();
        assert_eq!(wiener(&b1).unwrap(), BigInt::from(36));
        assert_eq!(gutman(&b1).unwrap(), BigInt::from(900));
        assert_eq!(
            gutman(&strong_prism_polyomino(2).unwrap()).unwrap(),
            BigInt::from(3274)
        );
        assert_eq!(gutman(&complete(2)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn resistances() {
        assert!((resistance_matrix(&complete(2)).unwrap().get(0, 1) - 1.0).abs() < 1e-14);
        assert!((resistance_matrix(&cycle(4)).unwrap().get(0, 1) - 0.75).abs() < 1e-14);
        let p3 = path(3);
        let r = resistance_matrix(&p3).unwrap();
        let d = distance_matrix(&p3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((r.get(i, j) - d.get(i, j) as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn kirchhoff_examples() {
        let c4 = kirchhoff_index(&cycle(4)).unwrap();
        assert!((c4.resistance - 5.0).abs() < 1e-12);
        assert!((c4.spectral - 5.0).abs() < 1e-12);
        let p3 = kirchhoff_index(&path(3)).unwrap();
        assert!((p3.resistance - 4.0).abs() < 1e-12);
        let b1 = kirchhoff_index(&strong_prism_polyomino(1).unwrap()).unwrap();
        assert!(b1.rel_delta() < 1e-10);
    }

    #[test]
    fn degree_kirchhoff_examples() {
        let p3 = degree_kirchhoff_index(&path(3)).unwrap();
        assert!((p3.resistance - 6.0).abs() < 1e-12);
        assert!((p3.spectral - 6.0).abs() < 1e-11);
        let b2 = degree_kirchhoff_index(&strong_prism_polyomino(2).unwrap()).unwrap();
        assert!((b2.resistance - 11726.0 / 15.0).abs() / (11726.0 / 15.0) < 1e-12);
        let k2 = degree_kirchhoff_index(&complete(2)).unwrap();
        assert!((k2.resistance - 1.0).abs() < 1e-14);
    }

    #[test]
    fn spanning_tree_examples() {
        assert_eq!(spanning_trees(&cycle(4)).unwrap().exact, BigInt::from(4));
        assert_eq!(
            spanning_trees(&complete(5)).unwrap().exact,
            BigInt::from(125)
        );
        let b2 = spanning_trees(&strong_prism_polyomino(2).unwrap()).unwrap();
        assert_eq!(b2.exact, BigInt::from(19_906_560u64));
        assert!(!b2.warning);
        assert_eq!(b2.spectral, 19_906_560.0);
        assert_eq!(matrix_tree_count(&complete(1)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn big_ln_matches_small_path() {
        let x = BigInt::from(3u32).pow(700);
        assert!((big_ln(&x) - 700.0 * 3f64.ln()).abs() < 1e-9);
        assert!((big_ln(&BigInt::from(1000)) - 1000f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn report_json_fields() {
        let g = strong_prism_polyomino(2).unwrap();
        let mut report = InvariantReport::compute(&g, Some("prism-polyomino"), Some(2)).unwrap();
        report.attach_prism_closed_forms(2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json_pretty()).unwrap();
        for key in [
            "wiener", "gutman", "kf", "kf_star", "tau", "routes", "deltas",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["tau"], "19906560");
        let cf = report.closed_forms.as_ref().unwrap();
        assert!(cf.tau_matches && cf.gutman_matches);
        assert_eq!(cf.kf_star.rational, "11726/15");
        assert_eq!(report.csv_record().len(), InvariantReport::CSV_HEADER.len());
        let back: InvariantReport = serde_json::from_str(&report.to_json_pretty()).unwrap();
        assert_eq!(back, report);
    }
}

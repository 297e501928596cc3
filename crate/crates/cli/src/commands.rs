//! One function per subcommand. Each takes parsed inputs and returns a report
//! that renders as text or serialises to JSON.

use std::fmt::Write as _;

use ghspace_core::cayley_menger::CayleyMengerMinimum;
use ghspace_core::constructions::{
    cantor_level, grid_ball_product_capped, perfectify, random_space, spike, LabeledSpace,
    PointLabel, Sampler,
};
use ghspace_core::covering::{
    auto_scales, bracket_check, box_dimension, covering_number, packing_number, scale_profile,
    BracketRow, DimensionEstimate,
};
use ghspace_core::format::{format_matrix, format_sig, parse_raw, ParseError};
use ghspace_core::gh::{
    distortion, gh_exact, gh_local, gh_lower_bounds, gh_upper_permutation, Budget, Correspondence,
    GhError, LocalOutcome,
};
use ghspace_core::predicates::{
    collinear_triples, components_at_scale, is_totally_anisometric, property_report, Pair,
    PropertyOptions, CollinearTriple,
};
use ghspace_core::{validate, DistanceMatrix, MetricError};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::GhMethod;
use crate::CliError;

/// Digits used for every real in text output.
pub const TEXT_DIGITS: usize = 12;

/// At most this many collisions or triples are listed in text output.
const TEXT_LIST_LIMIT: usize = 20;

pub trait Report: Serialize {
    fn text(&self) -> String;

    /// Process exit code for a successful run of the command.
    fn code(&self) -> i32 {
        0
    }
}

fn num(v: f64) -> String {
    format_sig(v, TEXT_DIGITS)
}

fn pairs_text(pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn index_list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub n: usize,
    pub error: Option<String>,
    /// Indices named by the first violation.
    pub indices: Option<Vec<usize>>,
}

impl Report for ValidateReport {
    fn text(&self) -> String {
        match (&self.error, &self.indices) {
            (None, _) => format!("VALID n={}\n", self.n),
            (Some(e), Some(idx)) => format!(
                "INVALID ({}): {e}\n",
                idx.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            ),
            (Some(e), None) => format!("INVALID: {e}\n"),
        }
    }

    fn code(&self) -> i32 {
        if self.valid {
            0
        } else {
            1
        }
    }
}

fn violation_indices(e: &MetricError) -> Option<Vec<usize>> {
    match *e {
        MetricError::NotSquare { row, .. } => Some(vec![row]),
        MetricError::NonFinite(i, j)
        | MetricError::NotSymmetric(i, j)
        | MetricError::NegativeOrZeroOffDiagonal(i, j) => Some(vec![i, j]),
        MetricError::NonZeroDiagonal(i) => Some(vec![i]),
        MetricError::TriangleViolation { i, j, k, .. } => Some(vec![i, j, k]),
        _ => None,
    }
}

/// Parses `text` and checks the axioms. Only malformed text is an error; an
/// axiom violation is a report with exit code 1.
pub fn cmd_validate(text: &str) -> Result<ValidateReport, ParseError> {
    let raw = parse_raw(text)?;
    let n = raw.len();
    Ok(match validate(raw) {
        Ok(_) => ValidateReport {
            valid: true,
            n,
            error: None,
            indices: None,
        },
        Err(e) => ValidateReport {
            valid: false,
            n,
            indices: violation_indices(&e),
            error: Some(e.to_string()),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GhReport {
    pub method: &'static str,
    pub lower: f64,
    pub upper: f64,
    pub exact: bool,
    /// Pairs `(x, y)` of a correspondence with distortion `2 * upper`.
    pub witness: Correspondence,
    /// Search nodes, for the exact method.
    pub nodes: Option<u64>,
    /// True when the exact search stopped at its budget.
    pub budget_exhausted: bool,
}

impl Report for GhReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "lower = {}", num(self.lower));
        let _ = writeln!(s, "upper = {}", num(self.upper));
        let _ = writeln!(s, "exact = {}", self.exact);
        if self.budget_exhausted {
            let _ = writeln!(s, "budget exhausted; d_GH lies in [lower, upper]");
        }
        let _ = writeln!(s, "witness = {}", pairs_text(self.witness.pairs()));
        s
    }
}

pub fn cmd_gh(
    x: &DistanceMatrix,
    y: &DistanceMatrix,
    method: GhMethod,
    budget: u64,
) -> Result<GhReport, CliError> {
    match method {
        GhMethod::Exact => {
            let (r, exhausted) = match gh_exact(x, y, Budget(budget)) {
                Ok(r) => (r, false),
                Err(GhError::BudgetExceeded(r)) => (*r, true),
                Err(e) => return Err(e.into()),
            };
            Ok(GhReport {
                method: "exact",
                lower: r.lower,
                upper: r.upper,
                exact: r.exact,
                witness: r.witness,
                nodes: Some(r.nodes),
                budget_exhausted: exhausted,
            })
        }
        GhMethod::Bounds => {
            let lower = gh_lower_bounds(x, y);
            let full = Correspondence::full(x.len(), y.len());
            let mut upper = 0.5 * distortion(&full, x, y)?;
            let mut witness = full;
            if x.len() == y.len() {
                let p = gh_upper_permutation(x, y)?;
                if p.value < upper {
                    upper = p.value;
                    witness = p.correspondence();
                }
            }
            Ok(GhReport {
                method: "bounds",
                lower,
                upper,
                exact: lower == upper,
                witness,
                nodes: None,
                budget_exhausted: false,
            })
        }
        GhMethod::Local => {
            let lower = gh_lower_bounds(x, y);
            let (value, exact, permutation) = match gh_local(x, y)? {
                LocalOutcome::Exact { value, permutation } => (value, true, permutation),
                LocalOutcome::Inapplicable {
                    permutation_value, ..
                } => (
                    permutation_value,
                    false,
                    gh_upper_permutation(x, y)?.permutation,
                ),
            };
            Ok(GhReport {
                method: "local",
                lower: if exact { value } else { lower },
                upper: value,
                exact,
                witness: Correspondence::from_permutation(&permutation)?,
                nodes: None,
                budget_exhausted: false,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropsReport {
    pub n: usize,
    pub anisometric: bool,
    pub collisions: Vec<(Pair, Pair)>,
    pub collinear_triples: Vec<CollinearTriple>,
    pub max_isolation: Option<f64>,
    pub isolation_scale: Vec<f64>,
    pub component_count_at: Vec<(f64, usize)>,
    pub min_cayley_menger: Option<CayleyMengerMinimum>,
}

impl Report for PropsReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "anisometric = {}", self.anisometric);
        let listed: Vec<String> = self
            .collisions
            .iter()
            .take(TEXT_LIST_LIMIT)
            .map(|((a, b), (c, d))| format!("({a},{b})~({c},{d})"))
            .collect();
        let _ = writeln!(s, "collisions = {} {}", self.collisions.len(), listed.join(" "));
        let listed: Vec<String> = self
            .collinear_triples
            .iter()
            .take(TEXT_LIST_LIMIT)
            .map(|t| format!("({},{},{})", t.i, t.k, t.j))
            .collect();
        let _ = writeln!(
            s,
            "collinear triples = {} {}",
            self.collinear_triples.len(),
            listed.join(" ")
        );
        match self.max_isolation {
            Some(v) => {
                let _ = writeln!(s, "max isolation = {}", num(v));
            }
            None => {
                let _ = writeln!(s, "max isolation = none (one point)");
            }
        }
        for (delta, count) in &self.component_count_at {
            let _ = writeln!(s, "components at {} = {count}", num(*delta));
        }
        match &self.min_cayley_menger {
            Some(m) => {
                let _ = writeln!(
                    s,
                    "min cayley-menger = {} at ({})",
                    num(m.value),
                    m.witness.map(|i| i.to_string()).join(",")
                );
            }
            None => {
                let _ = writeln!(s, "min cayley-menger = none (fewer than 4 points)");
            }
        }
        s
    }
}

pub fn cmd_props(x: &DistanceMatrix, options: &PropertyOptions) -> PropsReport {
    let r = property_report(x, options);
    PropsReport {
        n: r.n,
        anisometric: r.anisometric,
        max_isolation: r.max_isolation(),
        collisions: r.collisions,
        collinear_triples: r.collinear_triples,
        isolation_scale: r.isolation_scale,
        component_count_at: r.component_count_at,
        min_cayley_menger: r.min_cayley_menger,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverReport {
    pub epsilon: f64,
    pub count: usize,
    pub centers: Vec<usize>,
}

impl Report for CoverReport {
    fn text(&self) -> String {
        format!("N = {}\ncenters = {}\n", self.count, index_list(&self.centers))
    }
}

pub fn cmd_cover(x: &DistanceMatrix, epsilon: f64) -> Result<CoverReport, CliError> {
    let c = covering_number(x, epsilon)?;
    Ok(CoverReport {
        epsilon,
        count: c.count,
        centers: c.centers,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PackReport {
    pub epsilon: f64,
    pub count: usize,
    pub subset: Vec<usize>,
}

impl Report for PackReport {
    fn text(&self) -> String {
        format!("M = {}\nsubset = {}\n", self.count, index_list(&self.subset))
    }
}

pub fn cmd_pack(x: &DistanceMatrix, epsilon: f64) -> Result<PackReport, CliError> {
    let p = packing_number(x, epsilon)?;
    Ok(PackReport {
        epsilon,
        count: p.count,
        subset: p.subset,
    })
}

/// Where the scales of `cmd_dim` come from.
#[derive(Debug, Clone, PartialEq)]
pub enum ScaleSpec {
    List(Vec<f64>),
    /// Geometric grid from the diameter down to the codiameter.
    Auto { ratio: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimReport {
    pub rows: Vec<BracketRow>,
    pub bracket_holds: bool,
    pub estimate: DimensionEstimate,
}

impl Report for DimReport {
    fn text(&self) -> String {
        let mut s = String::from("scale N M N(scale/3) bracket\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{} {} {} {} {}",
                num(r.scale),
                r.covering,
                r.packing,
                r.covering_third,
                if r.holds() { "ok" } else { "FAIL" }
            );
        }
        let e = &self.estimate;
        let _ = writeln!(s, "bracket holds = {}", self.bracket_holds);
        let _ = writeln!(s, "window = [{}, {}]", num(e.window.1), num(e.window.0));
        let _ = writeln!(s, "lower slope = {}", num(e.lower_slope));
        let _ = writeln!(s, "upper slope = {}", num(e.upper_slope));
        let _ = writeln!(s, "fit slope = {}", num(e.fit_slope));
        match e.saturation_scale {
            Some(v) => {
                let _ = writeln!(s, "saturation scale = {}", num(v));
            }
            None => {
                let _ = writeln!(s, "saturation scale = none (one point)");
            }
        }
        s
    }
}

pub fn cmd_dim(x: &DistanceMatrix, scales: &ScaleSpec) -> Result<DimReport, CliError> {
    let scales = match scales {
        ScaleSpec::List(v) => v.clone(),
        ScaleSpec::Auto { ratio } => {
            if !(*ratio > 1.0 && ratio.is_finite()) {
                return Err(CliError::Usage(format!("ratio must exceed 1, got {ratio}")));
            }
            auto_scales(x, *ratio)
        }
    };
    let profile = scale_profile(x, &scales)?;
    let bracket = bracket_check(&profile, x)?;
    let estimate = box_dimension(&profile, None)?;
    Ok(DimReport {
        rows: bracket.rows,
        bracket_holds: bracket.holds,
        estimate,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixReport {
    pub matrix: DistanceMatrix,
    /// Provenance of each point, for constructions on a given space.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<PointLabel>>,
    /// Half the distortion of the projection onto the source space.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_gh_bound: Option<f64>,
}

impl Report for MatrixReport {
    /// The matrix text format, so the output can be fed back in.
    fn text(&self) -> String {
        format_matrix(&self.matrix)
    }
}

impl MatrixReport {
    fn plain(matrix: DistanceMatrix) -> Self {
        Self {
            matrix,
            labels: None,
            certified_gh_bound: None,
        }
    }

    fn labeled(space: LabeledSpace, source: &DistanceMatrix) -> Result<Self, CliError> {
        let bound = space.certified_gh_bound(source)?;
        Ok(Self {
            matrix: space.matrix,
            labels: Some(space.labels),
            certified_gh_bound: Some(bound),
        })
    }
}

pub fn cmd_perfectify(f: &DistanceMatrix, epsilon: f64, k: usize) -> Result<MatrixReport, CliError> {
    MatrixReport::labeled(perfectify(f, epsilon, k)?, f)
}

pub fn cmd_spike(f: &DistanceMatrix, base: usize, epsilon: f64) -> Result<MatrixReport, CliError> {
    MatrixReport::labeled(spike(f, base, epsilon)?, f)
}

pub fn cmd_product(
    f: &DistanceMatrix,
    dim: usize,
    epsilon: f64,
    resolution: usize,
    max_points: usize,
) -> Result<MatrixReport, CliError> {
    MatrixReport::labeled(
        grid_ball_product_capped(f, dim, epsilon, resolution, max_points)?,
        f,
    )
}

pub fn cmd_cantor(depth: u32) -> Result<MatrixReport, CliError> {
    Ok(MatrixReport::plain(cantor_level(depth)?))
}

pub fn cmd_random(n: usize, seed: u64, sampler: &Sampler) -> Result<MatrixReport, CliError> {
    Ok(MatrixReport::plain(random_space(n, seed, sampler)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub anisometric_fraction: f64,
    /// Fraction of samples with no collinear triple.
    pub no_collinear_fraction: f64,
    /// Fraction of samples with at least one collinear triple.
    pub collinear_fraction: f64,
    /// `None` below four points.
    pub negative_cayley_menger_fraction: Option<f64>,
    /// Mean number of components at half the codiameter.
    pub mean_components_at_half_codiameter: f64,
}

impl Report for ExperimentReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "samples = {}", self.samples);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "tol = {}", num(self.tol));
        let _ = writeln!(s, "anisometric fraction = {}", num(self.anisometric_fraction));
        let _ = writeln!(s, "no collinear triple fraction = {}", num(self.no_collinear_fraction));
        let _ = writeln!(s, "collinear triple fraction = {}", num(self.collinear_fraction));
        if let Some(f) = self.negative_cayley_menger_fraction {
            let _ = writeln!(s, "negative cayley-menger fraction = {}", num(f));
        }
        let _ = writeln!(
            s,
            "mean components at cdm/2 = {}",
            num(self.mean_components_at_half_codiameter)
        );
        s
    }
}

/// Seed of sample `i`, decorrelated from neighbouring experiment seeds.
fn sample_seed(seed: u64, i: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = seed.wrapping_add(i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct SampleStats {
    anisometric: bool,
    collinear: bool,
    negative_cm: Option<bool>,
    components: usize,
}

/// Samples run in parallel; results are reduced in sample order, so the
/// report depends only on the arguments.
pub fn cmd_experiment(n: usize, samples: usize, seed: u64, tol: f64) -> Result<ExperimentReport, CliError> {
    if n < 3 {
        return Err(CliError::Usage(format!("experiment needs n >= 3, got {n}")));
    }
    if samples == 0 {
        return Err(CliError::Usage("experiment needs at least one sample".into()));
    }
    let stats: Vec<SampleStats> = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<SampleStats, CliError> {
            let x = random_space(n, sample_seed(seed, i), &Sampler::SafeBand)?;
            let cdm = x.codiameter()?;
            Ok(SampleStats {
                anisometric: is_totally_anisometric(&x, tol).anisometric,
                collinear: !collinear_triples(&x, 0.0, tol).is_empty(),
                negative_cm: ghspace_core::cayley_menger::min_cayley_menger(&x)
                    .ok()
                    .map(|m| m.value < 0.0),
                components: components_at_scale(&x, 0.5 * cdm).len(),
            })
        })
        .collect::<Result<_, _>>()?;
    let total = samples as f64;
    let frac = |f: &dyn Fn(&SampleStats) -> bool| stats.iter().filter(|s| f(s)).count() as f64 / total;
    let collinear_fraction = frac(&|s| s.collinear);
    Ok(ExperimentReport {
        n,
        samples,
        seed,
        tol,
        anisometric_fraction: frac(&|s| s.anisometric),
        no_collinear_fraction: frac(&|s| !s.collinear),
        collinear_fraction,
        negative_cayley_menger_fraction: (n >= 4).then(|| frac(&|s| s.negative_cm == Some(true))),
        mean_components_at_half_codiameter: stats.iter().map(|s| s.components as f64).sum::<f64>() / total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> DistanceMatrix {
        validate(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validate_report_text_and_code() {
        let ok = cmd_validate("2\n0 1\n1 0\n").unwrap();
        assert_eq!((ok.text(), ok.code()), ("VALID n=2\n".to_string(), 0));
        let bad = cmd_validate("3\n0 1 3\n1 0 1\n3 1 0\n").unwrap();
        assert_eq!(bad.code(), 1);
        assert!(bad.text().starts_with("INVALID (0,2,1)"));
        assert!(cmd_validate("2\n0 1\n").is_err());
    }

    #[test]
    fn gh_between_two_point_spaces() {
        let x = m(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let y = m(&[&[0.0, 3.0], &[3.0, 0.0]]);
        for method in [GhMethod::Exact, GhMethod::Bounds, GhMethod::Local] {
            let r = cmd_gh(&x, &y, method, 1000).unwrap();
            assert_eq!(r.upper, 1.0);
        }
    }

    #[test]
    fn experiment_rejects_tiny_spaces() {
        assert!(matches!(cmd_experiment(2, 10, 0, 1e-12), Err(CliError::Usage(_))));
        let a = cmd_experiment(4, 20, 9, 1e-12).unwrap();
        let b = cmd_experiment(4, 20, 9, 1e-12).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.mean_components_at_half_codiameter, 4.0);
    }

    #[test]
    fn cantor_matrix_text() {
        let r = cmd_cantor(1).unwrap();
        // Matrices keep full precision so they can be fed back in.
        assert_eq!(r.text(), "2\n0 0.6666666666666666\n0.6666666666666666 0\n");
    }
}

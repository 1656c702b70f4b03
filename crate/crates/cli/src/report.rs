//! The serializable report assembled from the core computations.

use bggkit_core::casimir::{all_splitting_factors, c0, character_filtration, eigenvalue, full_casimir_audit};
use bggkit_core::kostant::{candidate_orders, chain_euler_characteristic, homology_with, laplacian_eigenvalue};
use bggkit_core::oracle::verify_all;
use bggkit_core::{Guardrails, ParabolicData, RootSystem, Weight};
use serde::{Deserialize, Serialize};

use crate::job::{CliError, Format, JobSpec, Mode};
use crate::rational::Rational;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub job: JobEcho,
    pub grading: GradingSummary,
    pub representation: RepresentationSummary,
    pub hasse: HasseSummary,
    pub bgg: BggSummary,
    pub chain_spectrum: Vec<SpectrumEntry>,
    pub filtration: Vec<FiltrationEntry>,
    pub splitting: Vec<SplittingEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobEcho {
    pub mode: Mode,
    #[serde(rename = "type")]
    pub type_: String,
    /// 1-based.
    pub crossed: Vec<usize>,
    pub highest_weight: Vec<i64>,
    pub format: Format,
    pub guardrails: GuardrailEcho,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardrailEcho {
    pub weyl_order: usize,
    pub algebra_dim: usize,
    pub rep_dim: usize,
    pub chain_dim: usize,
}

impl From<&Guardrails> for GuardrailEcho {
    fn from(g: &Guardrails) -> Self {
        GuardrailEcho {
            weyl_order: g.weyl_order,
            algebra_dim: g.algebra_dim,
            rep_dim: g.rep_dim,
            chain_dim: g.chain_dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerDim {
    pub degree: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingSummary {
    pub depth: usize,
    pub layers: Vec<LayerDim>,
    pub p_plus_dim: usize,
    /// 1-based uncrossed nodes.
    pub levi_nodes: Vec<usize>,
    /// Grading element in the basis of simple coroots.
    pub grading_element: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationSummary {
    pub highest_weight: Vec<i64>,
    pub lowest_form: Vec<i64>,
    pub dimension: u64,
    pub casimir: Rational,
    pub c0: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseEntry {
    pub index: usize,
    pub word: String,
    pub degree: usize,
    pub rho_image: Vec<i64>,
    pub inversion_set: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseSummary {
    pub elements: Vec<HasseEntry>,
    pub covering_edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub index: usize,
    pub degree: usize,
    pub word: String,
    pub lowest_weight: Vec<i64>,
    pub highest_weight: Vec<i64>,
    pub multiplicity: u32,
    pub dimension: u64,
    pub homogeneity: Rational,
    pub casimir: Rational,
    pub laplacian: Rational,
    pub c0: Rational,
    pub identity_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub candidate_order: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BggSummary {
    pub components: Vec<ComponentEntry>,
    pub arrows: Vec<Arrow>,
    pub degree_counts: Vec<usize>,
    pub euler_characteristic: i64,
    pub chain_euler_characteristic: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub degree: usize,
    pub lowest_weight: Vec<i64>,
    pub multiplicity: i64,
    pub casimir: Rational,
    pub laplacian: Rational,
    pub in_homology: bool,
    pub identity_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationComponent {
    pub lowest_weight: Vec<i64>,
    pub multiplicity: i64,
    pub casimir: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationEntry {
    pub level: usize,
    pub grading_eigenvalue: Rational,
    pub dimension: usize,
    pub components: Vec<FiltrationComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingFactor {
    pub level: usize,
    pub eigenvalues: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingEntry {
    pub level: usize,
    pub target: Vec<i64>,
    pub mu0: Rational,
    pub factors: Vec<SplittingFactor>,
    pub product: Rational,
    pub splits: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub passed: bool,
    pub checks: Vec<CheckEntry>,
}

fn w(x: &Weight) -> Vec<i64> {
    x.0.clone()
}

fn count(x: &bggkit_core::Q) -> Result<u64, CliError> {
    x.to_integer()
        .try_into()
        .map_err(|_| CliError::Internal(format!("dimension {x} is not a machine-size count")))
}

fn r(x: &bggkit_core::Q) -> Rational {
    Rational::from(x)
}

/// Builds the report; in verify mode also runs every oracle cross-check.
pub fn run_report(job: &JobSpec) -> Result<Report, CliError> {
    let rs = RootSystem::new(job.dynkin);
    let pd = ParabolicData::new(&rs, &job.parabolic())?;
    let lambda = &job.highest_weight;
    let guard = &job.guardrails;

    let grading = pd.grading();
    let grading_summary = GradingSummary {
        depth: grading.depth,
        layers: grading
            .dims
            .iter()
            .map(|(&degree, &dim)| LayerDim { degree, dim })
            .collect(),
        p_plus_dim: pd.p_plus_dim(),
        levi_nodes: pd.levi_nodes().iter().map(|i| i + 1).collect(),
        grading_element: pd.grading_element().coroot_coords.iter().map(r).collect(),
    };

    let diagram = homology_with(&pd, lambda, guard)?;
    let lambda_low = &diagram.lambda_low;
    let c0v = c0(&rs, lambda_low)?;
    let representation = RepresentationSummary {
        highest_weight: w(lambda),
        lowest_form: w(lambda_low),
        dimension: count(&rs.weyl_dimension(lambda))?,
        casimir: r(&eigenvalue(&rs, lambda)),
        c0: r(&c0v),
    };

    let hasse = HasseSummary {
        elements: diagram
            .components
            .iter()
            .enumerate()
            .map(|(index, c)| HasseEntry {
                index,
                word: c.source.word.to_string(),
                degree: c.source.degree,
                rho_image: w(&c.source.rho_image),
                inversion_set: c.source.inversion_set.iter().map(|b| b.0.clone()).collect(),
            })
            .collect(),
        covering_edges: diagram.edges.iter().map(|&(a, b)| [a, b]).collect(),
    };

    let components: Vec<ComponentEntry> = diagram
        .components
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let nu = -&c.lowest_weight;
            let cas = eigenvalue(&rs, &nu);
            let lap = laplacian_eigenvalue(&rs, lambda_low, &nu);
            let identity_holds = cas == &(&lap * bggkit_core::Q::from_integer(2.into())) + &c0v;
            ComponentEntry {
                index,
                degree: c.degree,
                word: c.source.word.to_string(),
                lowest_weight: w(&c.lowest_weight),
                highest_weight: w(&c.highest_weight),
                multiplicity: c.multiplicity,
                dimension: c.dimension,
                homogeneity: r(&c.homogeneity),
                casimir: r(&cas),
                laplacian: r(&lap),
                c0: r(&c0v),
                identity_holds,
            }
        })
        .collect();
    let arrows = diagram
        .edges
        .iter()
        .zip(candidate_orders(&diagram))
        .map(|(&(from, to), order)| Arrow {
            from,
            to,
            candidate_order: r(&order),
        })
        .collect();
    let by_degree = diagram.by_degree();
    let top = by_degree.keys().next_back().copied().unwrap_or(0);
    let degree_counts = (0..=top).map(|k| by_degree.get(&k).map_or(0, |v| v.len())).collect();
    let bgg = BggSummary {
        components,
        arrows,
        degree_counts,
        euler_characteristic: diagram.euler_characteristic(),
        chain_euler_characteristic: chain_euler_characteristic(&pd, lambda)?,
    };

    let chain_spectrum = full_casimir_audit(&pd, lambda)?
        .into_iter()
        .map(|e| SpectrumEntry {
            degree: e.degree,
            lowest_weight: w(&e.lowest_weight),
            multiplicity: e.multiplicity,
            casimir: r(&e.casimir),
            laplacian: r(&e.laplacian),
            in_homology: e.in_homology,
            identity_holds: e.identity_holds,
        })
        .collect();

    let levels = character_filtration(&pd, lambda)?;
    let filtration = levels
        .iter()
        .map(|l| FiltrationEntry {
            level: l.level,
            grading_eigenvalue: r(&l.grading_eigenvalue),
            dimension: l.dimension,
            components: l
                .components
                .iter()
                .map(|(lw, m, c)| FiltrationComponent {
                    lowest_weight: w(lw),
                    multiplicity: *m,
                    casimir: r(c),
                })
                .collect(),
        })
        .collect();
    let splitting = all_splitting_factors(&pd, &levels)?
        .into_iter()
        .map(|s| SplittingEntry {
            level: s.level,
            target: w(&s.target),
            mu0: r(&s.mu0),
            factors: s
                .factors
                .iter()
                .map(|(level, ev)| SplittingFactor {
                    level: *level,
                    eigenvalues: ev.iter().map(r).collect(),
                })
                .collect(),
            product: r(&s.product),
            splits: s.splits,
        })
        .collect();

    let verification = if job.mode == Mode::Verify {
        let checks: Vec<CheckEntry> = verify_all(&pd, lambda, guard)?
            .into_iter()
            .map(|c| CheckEntry {
                name: c.name.to_string(),
                passed: c.passed,
                detail: c.detail,
            })
            .collect();
        Some(Verification {
            passed: checks.iter().all(|c| c.passed),
            checks,
        })
    } else {
        None
    };

    Ok(Report {
        schema_version: SCHEMA_VERSION.to_string(),
        job: JobEcho {
            mode: job.mode,
            type_: job.dynkin.to_string(),
            crossed: job.crossed.iter().map(|i| i + 1).collect(),
            highest_weight: w(lambda),
            format: job.format,
            guardrails: guard.into(),
        },
        grading: grading_summary,
        representation,
        hasse,
        bgg,
        chain_spectrum,
        filtration,
        splitting,
        verification,
        notes: notes(),
    })
}

fn notes() -> Vec<String> {
    [
        "Node indices are 1-based Bourbaki numbering; weights are in fundamental-weight coordinates, roots in simple-root coordinates.",
        "Casimir values use the Killing-normalized form; the adjoint representation has Casimir 1.",
        "Each component is the homology H_k(p_+, V) summand of lowest weight -(w.lambda_low); its Casimir value equals 2*laplacian + c0.",
        "Arrows follow Hasse covering relations between consecutive degrees; candidate_order is the difference of grading-element homogeneities and is derived metadata, not a computed operator.",
        "Splitting entries give the scalar of prod (C - mu) on the target component over all distinct Casimir values in the deeper filtration levels j > level; splits is true iff the product is nonzero. Submodules generated by non-splitting targets are not computed.",
        "Rationals are strings p/q in lowest terms with positive denominator.",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

//! One unit of work: load a presentation, obtain representations, and run
//! the requested computations.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use novikov_core::alexander::{self, AlexanderSummary};
use novikov_core::bounds::{
    connected_sum_scale, report, Conventions, PresentationSummary, RepEntry, Report, UpperBound,
};
use novikov_core::novikov::{build_complex, compute_profile_with, ProfileOptions};
use novikov_core::presentation::{braid_to_wirtinger, parse_presentation_with_warnings};
use novikov_core::reps::{
    parse_rep_file, perm_to_matrix, search_permutation_reps, Convention, CycleType, MatrixRep,
    PermutationRep, RepFile,
};
use novikov_core::{fixtures, BraidWord, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Alexander,
    Novikov,
    Bound,
}

/// A job as written in a batch manifest. Paths are relative to the
/// manifest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobSpec {
    pub name: Option<String>,
    pub presentation: Option<PathBuf>,
    pub braid: Option<String>,
    pub fixture: Option<String>,
    pub rep: Option<PathBuf>,
    /// Search parameters, e.g. `k=5 class=3cycle limit=10`.
    pub search: Option<String>,
    pub trivial_rep: bool,
    pub convention: Convention,
    /// Empty means every operation.
    pub operations: Vec<Operation>,
    pub out: Option<PathBuf>,
    pub primes: Option<Vec<u64>>,
    pub drop_generator: Option<usize>,
    pub drop_relators: Option<Vec<usize>>,
    pub copies: usize,
    pub upper: Option<String>,
}

impl Default for JobSpec {
    fn default() -> Self {
        Self {
            name: None,
            presentation: None,
            braid: None,
            fixture: None,
            rep: None,
            search: None,
            trivial_rep: false,
            convention: Convention::AsGiven,
            operations: Vec::new(),
            out: None,
            primes: None,
            drop_generator: None,
            drop_relators: None,
            copies: 1,
            upper: None,
        }
    }
}

impl JobSpec {
    pub fn label(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        if let Some(p) = &self.presentation {
            return p.display().to_string();
        }
        if let Some(b) = &self.braid {
            return format!("braid {b}");
        }
        self.fixture.clone().unwrap_or_else(|| "job".into())
    }

    /// Resolves relative paths against `base`.
    pub fn rebase(&mut self, base: &Path) {
        for p in [&mut self.presentation, &mut self.rep, &mut self.out].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
    }
}

/// Parsed `k=5 class=3cycle limit=10`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub k: usize,
    pub class: Option<String>,
    pub limit: usize,
}

impl std::str::FromStr for SearchParams {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut k = None;
        let mut class = None;
        let mut limit = 10;
        for tok in s.split_whitespace() {
            let Some((key, value)) = tok.split_once('=') else {
                bail!("search parameter {tok:?} is not key=value");
            };
            match key {
                "k" | "degree" => k = Some(value.parse().context("bad degree")?),
                "class" => class = Some(value.to_string()),
                "limit" => limit = value.parse().context("bad limit")?,
                _ => bail!("unknown search parameter {key:?}"),
            }
        }
        let k = k.context("search needs k=<degree>")?;
        if k == 0 {
            bail!("degree must be positive");
        }
        Ok(Self { k, class, limit })
    }
}

pub fn load_presentation(spec: &JobSpec) -> Result<(Presentation, Vec<String>)> {
    let sources = [spec.presentation.is_some(), spec.braid.is_some(), spec.fixture.is_some()];
    match sources.iter().filter(|&&b| b).count() {
        0 => bail!(novikov_core::Error::InvalidArgument(
            "give one of --presentation, --braid, --fixture".into()
        )),
        1 => {}
        _ => bail!(novikov_core::Error::InvalidArgument(
            "give only one of --presentation, --braid, --fixture".into()
        )),
    }
    if let Some(path) = &spec.presentation {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let (p, warnings) = parse_presentation_with_warnings(&text)
            .with_context(|| format!("in {}", path.display()))?;
        return Ok((p, warnings));
    }
    if let Some(b) = &spec.braid {
        let braid: BraidWord = b.parse()?;
        return Ok((braid_to_wirtinger(&braid), Vec::new()));
    }
    let name = spec.fixture.as_deref().unwrap_or_default();
    let p = match name {
        "unknot" => fixtures::unknot(),
        "trefoil" => fixtures::trefoil(),
        "figure-eight" | "figure_eight" => fixtures::figure_eight(),
        "kinoshita-terasaka" | "kt" => fixtures::kinoshita_terasaka(),
        "conway" => fixtures::conway(),
        other => bail!(novikov_core::Error::InvalidArgument(format!("unknown fixture {other:?}"))),
    };
    Ok((p, Vec::new()))
}

/// A representation ready for the twisted complex.
#[derive(Clone, Debug)]
pub struct LabeledRep {
    pub label: String,
    pub matrices: MatrixRep,
    pub permutation: Option<PermutationRep>,
}

impl LabeledRep {
    pub fn images(&self) -> Option<Vec<String>> {
        self.permutation
            .as_ref()
            .map(|r| r.images.iter().map(ToString::to_string).collect())
    }
}

pub fn search(p: &Presentation, params: &SearchParams) -> Result<Vec<PermutationRep>> {
    let class = params
        .class
        .as_deref()
        .map(|c| CycleType::parse(c, params.k))
        .transpose()?;
    Ok(search_permutation_reps(p, params.k, class.as_ref(), params.limit))
}

pub fn load_reps(p: &Presentation, spec: &JobSpec) -> Result<Vec<LabeledRep>> {
    let mut reps = Vec::new();
    if let Some(path) = &spec.rep {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let label = path
            .file_stem()
            .map_or("file".into(), |s| s.to_string_lossy().into_owned());
        reps.push(match parse_rep_file(&text, p)? {
            RepFile::Permutation(r) => LabeledRep {
                label,
                matrices: perm_to_matrix(&r, spec.convention)?,
                permutation: Some(r),
            },
            RepFile::Matrix(m) => LabeledRep {
                label,
                matrices: m,
                permutation: None,
            },
        });
    }
    if let Some(s) = &spec.search {
        let params: SearchParams = s.parse()?;
        for (i, r) in search(p, &params)?.into_iter().enumerate() {
            reps.push(LabeledRep {
                label: format!("search-{}", i + 1),
                matrices: perm_to_matrix(&r, spec.convention)?,
                permutation: Some(r),
            });
        }
    }
    if spec.trivial_rep || (spec.rep.is_none() && spec.search.is_none()) {
        reps.push(LabeledRep {
            label: "trivial".into(),
            matrices: MatrixRep::trivial(p.generator_count(), 1),
            permutation: None,
        });
    }
    Ok(reps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderEntry {
    pub label: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<String>>,
    pub dropped_generator: Option<usize>,
    pub dropped_relators: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant: Option<AlexanderSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderReport {
    pub schema: String,
    pub presentation: PresentationSummary,
    pub conventions: Conventions,
    pub representations: Vec<AlexanderEntry>,
}

impl AlexanderReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.representations {
            s += &format!("representation {} (dimension {})\n", e.label, e.dim);
            if let Some(images) = &e.images {
                s += &format!("  images: {}\n", images.join(" "));
            }
            match (&e.invariant, &e.error) {
                (Some(a), _) => {
                    s += &format!("  numerator: {}\n", a.numerator);
                    s += &format!("  denominator: {}\n", a.denominator);
                    s += &format!("  normalized: {}\n", a.normalized);
                    s += &format!("  verdict: {}\n", a.verdict.as_str());
                    s += &format!("  {}\n", a.implication);
                }
                (None, Some(err)) => s += &format!("  {err}\n"),
                (None, None) => {}
            }
        }
        s
    }
}

/// Everything a job produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobOutput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<AlexanderReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
}

impl JobOutput {
    /// The JSON written for this output: a bare document when only one
    /// kind was requested.
    pub fn to_json(&self) -> Result<String> {
        let s = match (&self.alexander, &self.report) {
            (Some(a), None) => serde_json::to_string_pretty(a)?,
            (None, Some(r)) => serde_json::to_string_pretty(r)?,
            _ => serde_json::to_string_pretty(self)?,
        };
        Ok(s + "\n")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(a) = &self.alexander {
            s += &a.to_text();
        }
        if let Some(r) = &self.report {
            s += &r.to_text();
        }
        s
    }
}

fn alexander_entry(
    rep: &LabeledRep,
    c: &novikov_core::novikov::TwistedComplex,
    spec: &JobSpec,
) -> AlexanderEntry {
    let mut entry = AlexanderEntry {
        label: rep.label.clone(),
        dim: rep.matrices.dim(),
        images: rep.images(),
        dropped_generator: None,
        dropped_relators: Vec::new(),
        invariant: None,
        error: None,
    };
    let drops = match (spec.drop_generator, &spec.drop_relators) {
        (Some(g), Some(r)) => Some((g, r.clone())),
        (g, r) => alexander::default_drops(c).map(|(dg, dr)| {
            (g.unwrap_or(dg), r.clone().unwrap_or(dr))
        }),
    };
    let Some((g, rels)) = drops else {
        entry.error = Some(
            "twisted Alexander undefined: no nonsingular square minor; use the Novikov profile instead"
                .into(),
        );
        return entry;
    };
    entry.dropped_generator = Some(g);
    entry.dropped_relators = rels.clone();
    match alexander::twisted_alexander_from_complex(c, g, &rels).and_then(|a| alexander::summarize(&a)) {
        Ok(s) => entry.invariant = Some(s),
        Err(e) => entry.error = Some(e.to_string()),
    }
    entry
}

/// Runs a job. Representations are processed in parallel and merged in
/// input order.
pub fn run(spec: &JobSpec) -> Result<JobOutput> {
    if spec.copies < 1 {
        bail!(novikov_core::Error::InvalidArgument("copies must be at least 1".into()));
    }
    let upper: Option<UpperBound> = spec.upper.as_deref().map(str::parse).transpose()?;
    let (p, _) = load_presentation(spec)?;
    let reps = load_reps(&p, spec)?;
    let wants = |op| spec.operations.is_empty() || spec.operations.contains(&op);
    let want_profile = wants(Operation::Novikov) || wants(Operation::Bound);

    let opts = ProfileOptions {
        primes: spec.primes.clone().unwrap_or_else(|| ProfileOptions::default().primes),
        drop_generator: spec.drop_generator,
        drop_relators: spec.drop_relators.clone(),
        reduction: true,
    };
    let results: Vec<_> = reps
        .par_iter()
        .map(|rep| -> Result<_> {
            let c = build_complex(&p, &rep.matrices)?;
            let alex = wants(Operation::Alexander).then(|| alexander_entry(rep, &c, spec));
            let profile = if want_profile {
                let prof = compute_profile_with(&c, &opts)?;
                Some(connected_sum_scale(&prof, spec.copies)?)
            } else {
                None
            };
            Ok((alex, profile))
        })
        .collect::<Result<_>>()?;

    let summary = PresentationSummary::from(&p);
    let conventions = Conventions::new(spec.convention, spec.drop_generator, spec.drop_relators.clone());
    let alexander = wants(Operation::Alexander).then(|| AlexanderReport {
        schema: novikov_core::bounds::REPORT_SCHEMA.into(),
        presentation: summary.clone(),
        conventions: conventions.clone(),
        representations: results.iter().filter_map(|(a, _)| a.clone()).collect(),
    });
    let report = want_profile.then(|| {
        let entries = reps
            .iter()
            .zip(&results)
            .map(|(rep, (alex, prof))| {
                let mut e = RepEntry::new(rep.label.clone(), prof.clone().expect("profile requested"));
                e.images = rep.images();
                e.alexander = alex.as_ref().and_then(|a| a.invariant.clone());
                e
            })
            .collect();
        report(&summary, spec.copies, conventions, entries, upper.clone())
    });
    Ok(JobOutput { alexander, report })
}

/// Reads a report written by `novikov` (bare or inside a job output) and
/// rescales it.
pub fn rebound(text: &str, copies: usize, upper: Option<UpperBound>) -> Result<Report> {
    let value: serde_json::Value = serde_json::from_str(text).context("profile is not JSON")?;
    let doc = if value.get("report").is_some() { &value["report"] } else { &value };
    let base: Report = serde_json::from_value(doc.clone()).context("not a v1 report")?;
    if base.schema != novikov_core::bounds::REPORT_SCHEMA {
        bail!(novikov_core::Error::InvalidArgument(format!("unsupported schema {:?}", base.schema)));
    }
    let total = base.copies * copies;
    let entries = base
        .representations
        .iter()
        .map(|e| -> Result<RepEntry> {
            let mut out = RepEntry::new(e.label.clone(), connected_sum_scale(&e.profile, copies)?);
            out.images = e.images.clone();
            // the invariant describes a single copy
            out.alexander = e.alexander.clone().filter(|_| total == 1);
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(report(&base.presentation, total, base.conventions, entries, upper))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_params() {
        let s: SearchParams = "k=5 class=3cycle limit=3".parse().unwrap();
        assert_eq!(s, SearchParams { k: 5, class: Some("3cycle".into()), limit: 3 });
        assert_eq!("k=4".parse::<SearchParams>().unwrap().limit, 10);
        assert!("class=3cycle".parse::<SearchParams>().is_err());
        assert!("k=5 colour=red".parse::<SearchParams>().is_err());
    }

    #[test]
    fn trefoil_job() {
        let spec = JobSpec {
            fixture: Some("trefoil".into()),
            operations: vec![Operation::Alexander, Operation::Novikov],
            ..Default::default()
        };
        let out = run(&spec).unwrap();
        let r = out.report.unwrap();
        assert_eq!(r.lower_bound, 0);
        assert!(r.representations[0].profile.is_acyclic());
        let a = out.alexander.unwrap();
        assert_eq!(
            a.representations[0].invariant.as_ref().unwrap().verdict,
            alexander::MonicVerdict::Monic
        );
    }

    #[test]
    fn manifest_defaults() {
        let spec: JobSpec = serde_json::from_str(r#"{"fixture": "unknot", "operations": ["bound"]}"#).unwrap();
        assert_eq!(spec.copies, 1);
        assert!(serde_json::from_str::<JobSpec>(r#"{"fixture": "unknot", "oops": 1}"#).is_err());
    }
}

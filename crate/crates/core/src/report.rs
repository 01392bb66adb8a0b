//! Structured reports shared by the command-line front end.
//!
//! Every report serializes to pretty-printed JSON with a fixed field order
//! and parses back into the same value. The `to_text` renderings are for
//! people and carry no stability guarantee.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::classical::{scheme_for, SchemeKind};
use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::infogroup::{SchemeTriplet, SubsetClass, SubsetRecord, FULL_LISTING_MAX_N};
use crate::pauli::PauliProduct;
use crate::subset::Subset;
use crate::twirl::TwirlPlan;

/// Pretty JSON, newline terminated.
pub fn to_structured<T: Serialize>(report: &T) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("reports contain only finite numbers");
    out.push('\n');
    out
}

pub fn from_structured<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

fn group_text(generators: &[String]) -> String {
    if generators.is_empty() {
        "⟨⟩".to_string()
    } else {
        format!("⟨{}⟩", generators.join(", "))
    }
}

fn subsets_text(subsets: &[Subset]) -> String {
    if subsets.is_empty() {
        return "none".to_string();
    }
    subsets.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub code: String,
    #[serde(rename = "D")]
    pub d: u32,
    pub n: usize,
    pub k: usize,
    /// Absent when the exhaustive search would exceed its cap.
    pub distance: Option<usize>,
    pub valid: bool,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl ValidateReport {
    pub fn new(code: &StabilizerCode, distance_cap: u128) -> Self {
        let report = code.validate();
        let mut notes = report.notes;
        let distance = if report.violations.is_empty() {
            match code.distance(distance_cap) {
                Ok(d) => Some(d),
                Err(e) => {
                    notes.push(format!("distance not computed: {e}"));
                    None
                }
            }
        } else {
            None
        };
        ValidateReport {
            code: code.name().to_string(),
            d: code.modulus().get(),
            n: code.num_carriers(),
            k: code.num_inputs(),
            distance,
            valid: report.violations.is_empty(),
            violations: report.violations,
            notes,
        }
    }

    /// `[[n,k,δ]]_D`, or `[[n,k]]_D` without a distance.
    pub fn label(&self) -> String {
        match self.distance {
            Some(delta) => format!("[[{},{},{}]]_{}", self.n, self.k, delta, self.d),
            None => format!("[[{},{}]]_{}", self.n, self.k, self.d),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", if self.valid { "valid" } else { "invalid" }, self.label());
        for v in &self.violations {
            out.push_str(&format!("  violation: {v}\n"));
        }
        for note in &self.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub authorized: usize,
    pub forbidden: usize,
    pub intermediate: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub code: String,
    #[serde(rename = "D")]
    pub d: u32,
    pub n: usize,
    pub k: usize,
    pub summary: String,
    pub counts: ClassCounts,
    pub minimal_authorized: Vec<Subset>,
    pub maximal_forbidden: Vec<Subset>,
    /// Full per-subset listing, kept only for small `n`.
    pub subsets: Option<Vec<SubsetRecord>>,
}

/// One-line description of the access structure: `threshold (q,n)`,
/// `ramp (q,L,n)` or `general access structure`.
pub fn structure_summary(triplet: &SchemeTriplet) -> String {
    let n = triplet.n;
    let Some(q) = triplet.threshold() else {
        return "general access structure".to_string();
    };
    let forbidden_max = triplet.forbidden().iter().map(|s| s.len()).max().unwrap_or(0);
    let by_size = triplet.records.iter().all(|r| (r.class == SubsetClass::F) == (r.subset.len() <= forbidden_max));
    if !by_size {
        return "general access structure".to_string();
    }
    if forbidden_max + 1 == q {
        format!("threshold ({q},{n})")
    } else {
        format!("ramp ({q},{},{n})", q - forbidden_max)
    }
}

impl ClassifyReport {
    pub fn new(code: &StabilizerCode, triplet: &SchemeTriplet) -> Self {
        let counts = ClassCounts {
            authorized: triplet.authorized().len(),
            forbidden: triplet.forbidden().len(),
            intermediate: triplet.intermediate().len(),
        };
        ClassifyReport {
            code: code.name().to_string(),
            d: code.modulus().get(),
            n: triplet.n,
            k: code.num_inputs(),
            summary: structure_summary(triplet),
            counts,
            minimal_authorized: triplet.minimal_authorized(),
            maximal_forbidden: triplet.maximal_forbidden(),
            subsets: (triplet.n <= FULL_LISTING_MAX_N).then(|| triplet.records.clone()),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.code, self.summary);
        out.push_str(&format!(
            "|A| = {}, |F| = {}, |I| = {}\n",
            self.counts.authorized, self.counts.forbidden, self.counts.intermediate
        ));
        out.push_str(&format!("minimal authorized: {}\n", subsets_text(&self.minimal_authorized)));
        out.push_str(&format!("maximal forbidden: {}\n", subsets_text(&self.maximal_forbidden)));
        if let Some(records) = &self.subsets {
            for class in [SubsetClass::A, SubsetClass::F, SubsetClass::I] {
                let members: Vec<Subset> = records.iter().filter(|r| r.class == class).map(|r| r.subset).collect();
                out.push_str(&format!("{class:?} = {}\n", subsets_text(&members)));
            }
            out.push_str("subset  class  r  s\n");
            for r in records {
                out.push_str(&format!("{:<7} {:?}      {}  {}\n", r.subset.to_string(), r.class, r.r, r.s));
            }
        }
        out
    }
}

/// Classical part of a plan report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalSummary {
    #[serde(flatten)]
    pub kind: SchemeKind,
    #[serde(rename = "P")]
    pub modulus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanReport {
    pub code: String,
    #[serde(rename = "D")]
    pub d: u32,
    pub k: usize,
    pub r: usize,
    pub s: usize,
    pub l: usize,
    /// Generators of `G(I)`.
    pub intermediate_group: Vec<String>,
    pub twirl_generators: Vec<String>,
    /// Absent when no twirl is needed.
    pub classical: Option<ClassicalSummary>,
}

impl PlanReport {
    pub fn new(code: &StabilizerCode, triplet: &SchemeTriplet, plan: &TwirlPlan) -> Self {
        let strings = |ps: &[PauliProduct]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        let classical = (!plan.is_empty()).then(|| {
            let (kind, p) = scheme_for(triplet, code.modulus());
            ClassicalSummary { kind, modulus: p.get() }
        });
        PlanReport {
            code: code.name().to_string(),
            d: code.modulus().get(),
            k: code.num_inputs(),
            r: plan.r(),
            s: plan.s(),
            l: plan.key_length(),
            intermediate_group: strings(&plan.intermediate_group.generator_paulis()),
            twirl_generators: strings(&plan.twirl_generators),
            classical,
        }
    }

    pub fn to_text(&self) -> String {
        match &self.classical {
            None => format!("{}: no twirl needed (I empty)\n", self.code),
            Some(c) => format!(
                "{}: G(I) = {}, r = {}, s = {}\ntwirl = {}, l = {}, classical scheme: {} over Z_{}\n",
                self.code,
                group_text(&self.intermediate_group),
                self.r,
                self.s,
                group_text(&self.twirl_generators),
                self.l,
                c.kind,
                c.modulus
            ),
        }
    }
}

/// Key recovered from a share bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructReport {
    pub players: Subset,
    pub key: Vec<u32>,
}

impl ReconstructReport {
    pub fn to_text(&self) -> String {
        let digits: Vec<String> = self.key.iter().map(|d| d.to_string()).collect();
        format!("key recovered by {}: {}\n", self.players, digits.join(","))
    }
}

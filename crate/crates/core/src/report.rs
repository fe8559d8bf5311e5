//! Status report over a range of `(n, t)`: one row per twisted homogeneous
//! rack class that is resolved by a generator, known not to be of type D, or
//! open. Classes of type D by earlier classification are only counted.
//!
//! A row can claim type D only through a [`VerifiedCertificate`], which is
//! built by running the generator and checking its output.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certfile::CertificateDocument;
use crate::constructions::{ConstructionError, THRackSpec};
use crate::perm::CycleType;
use crate::rack::RackError;
use crate::status::{classify_status, ExceptionFamily, Source, Status, StatusEntry, StatusError, TwistKind};
use crate::type_d::{
    decide_type_d, generate, verify_certificate, CertificateVerdict, Decision, GeneratedCertificate, Generator,
    GeneratorError,
};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("n range must start at 5 or more")]
    DegreeRange,
    #[error("t range must start at 2 or more")]
    CopiesRange,
    #[error(transparent)]
    Status(#[from] StatusError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Rack(#[from] RackError),
    #[error("certificate from {generator} for {rack} failed verification: {reason}")]
    Unverified { generator: Generator, rack: String, reason: String },
    #[error("search found a certificate for {0}, contradicting the recorded status")]
    Contradiction(String),
}

/// A generator output that passed [`verify_certificate`].
#[derive(Clone, Debug)]
pub struct VerifiedCertificate {
    generator: Generator,
    document: CertificateDocument,
    r_size: usize,
    s_size: usize,
    path: Option<String>,
}

impl VerifiedCertificate {
    pub fn check(generated: &GeneratedCertificate) -> Result<Self, ReportError> {
        let unverified = |reason: String| ReportError::Unverified {
            generator: generated.generator,
            rack: generated.certificate.rack.clone(),
            reason,
        };
        match verify_certificate(&generated.rack, &generated.certificate) {
            Ok(CertificateVerdict::Valid) => {}
            Ok(CertificateVerdict::Invalid(v)) => return Err(unverified(v.to_string())),
            Err(e) => return Err(unverified(e.to_string())),
        }
        let cert = &generated.certificate;
        Ok(VerifiedCertificate {
            generator: generated.generator,
            document: CertificateDocument::from_certificate(cert, Some(generated.generator), BTreeMap::new()),
            r_size: cert.r_block.len(),
            s_size: cert.s_block.len(),
            path: None,
        })
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn document(&self) -> &CertificateDocument {
        &self.document
    }
}

#[derive(Clone, Debug)]
pub enum Evidence {
    Certificate(VerifiedCertificate),
    /// Every ordered pair of the enumerated rack was examined.
    ExhaustiveSearch { pairs: u64 },
    Citation(String),
    None,
}

#[derive(Clone, Debug)]
pub struct ReportRow {
    entry: StatusEntry,
    evidence: Evidence,
}

impl ReportRow {
    fn proved(entry: StatusEntry, cert: VerifiedCertificate) -> Self {
        ReportRow { entry, evidence: Evidence::Certificate(cert) }
    }

    fn not_type_d(entry: StatusEntry, evidence: Evidence) -> Self {
        debug_assert!(matches!(evidence, Evidence::ExhaustiveSearch { .. } | Evidence::Citation(_)));
        ReportRow { entry, evidence }
    }

    fn unknown(entry: StatusEntry) -> Self {
        ReportRow { entry, evidence: Evidence::None }
    }

    pub fn entry(&self) -> &StatusEntry {
        &self.entry
    }

    pub fn evidence(&self) -> &Evidence {
        &self.evidence
    }

    pub fn record(&self) -> RowRecord {
        let e = &self.entry;
        RowRecord {
            n: e.n,
            t: e.t,
            theta: e.theta,
            cycle_type: e.cycle_type.to_string(),
            status: e.status,
            source: e.source.to_string(),
            evidence: match &self.evidence {
                Evidence::Certificate(c) => EvidenceRecord::Certificate {
                    generator: c.generator,
                    rack: c.document.rack.clone(),
                    r_size: c.r_size,
                    s_size: c.s_size,
                    path: c.path.clone(),
                },
                Evidence::ExhaustiveSearch { pairs } => EvidenceRecord::ExhaustiveSearch { pairs: *pairs },
                Evidence::Citation(text) => EvidenceRecord::Citation { text: text.clone() },
                Evidence::None => EvidenceRecord::None,
            },
        }
    }
}

/// Serializable form of a row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowRecord {
    pub n: usize,
    pub t: usize,
    pub theta: TwistKind,
    pub cycle_type: String,
    pub status: Status,
    pub source: String,
    pub evidence: EvidenceRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EvidenceRecord {
    Certificate {
        generator: Generator,
        rack: String,
        r_size: usize,
        s_size: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        path: Option<String>,
    },
    ExhaustiveSearch {
        pairs: u64,
    },
    Citation {
        text: String,
    },
    None,
}

impl fmt::Display for EvidenceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvidenceRecord::Certificate { generator, r_size, s_size, path, .. } => {
                write!(f, "verified certificate ({generator}, |R| = {r_size}, |S| = {s_size})")?;
                if let Some(p) = path {
                    write!(f, " at {p}")?;
                }
                Ok(())
            }
            EvidenceRecord::ExhaustiveSearch { pairs } => write!(f, "exhaustive search ({pairs} ordered pairs)"),
            EvidenceRecord::Citation { text } => f.write_str(text),
            EvidenceRecord::None => f.write_str("-"),
        }
    }
}

/// Serializable form of a whole report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub n_range: (usize, usize),
    pub t_range: (usize, usize),
    pub rows: Vec<RowRecord>,
    /// Number of classes in range of type D by prior classification.
    pub prior_classified: usize,
    pub families: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub n: RangeInclusive<usize>,
    pub t: RangeInclusive<usize>,
    /// Re-derive known negative rows by exhaustive search instead of citing them.
    pub search_negatives: bool,
    pub search_budget: u64,
    pub search_cap: u128,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            n: 5..=10,
            t: 2..=5,
            search_negatives: false,
            search_budget: crate::type_d::DEFAULT_PAIR_BUDGET,
            search_cap: 4096,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    options: ReportOptions,
    rows: Vec<ReportRow>,
    prior_classified: usize,
}

/// Generates the certificate proving a `type-D-proved` entry, using the
/// canonical `ℓ` with `ℓu` of the entry's cycle type.
pub fn certificate_for(entry: &StatusEntry) -> Result<GeneratedCertificate, ReportError> {
    let Source::Generator(generator) = entry.source else {
        return Err(ReportError::Contradiction(format!(
            "no generator recorded for n = {}, t = {}, {}, {}",
            entry.n, entry.t, entry.theta, entry.cycle_type
        )));
    };
    let ell = entry.theta.canonical_ell(&entry.cycle_type);
    Ok(generate(generator, entry.n, entry.t, Some(&ell))?)
}

fn search_negative(entry: &StatusEntry, options: &ReportOptions) -> Result<Evidence, ReportError> {
    let ell = entry.theta.canonical_ell(&entry.cycle_type);
    let spec = THRackSpec::new(entry.n, entry.t, entry.theta.twist(entry.n).map_err(ConstructionError::from)?, ell)?;
    let rack = crate::constructions::th_rack(&spec, options.search_cap)?;
    match decide_type_d(&rack, options.search_budget)? {
        Decision::NotTypeD { pairs } => Ok(Evidence::ExhaustiveSearch { pairs }),
        Decision::TypeD(_) => Err(ReportError::Contradiction(spec.to_string())),
        Decision::BudgetExhausted { pairs } => Ok(Evidence::Citation(format!(
            "not of type D by prior exhaustive search (re-check stopped after {pairs} pairs)"
        ))),
    }
}

pub fn build_report(options: ReportOptions) -> Result<Report, ReportError> {
    if *options.n.start() < 5 {
        return Err(ReportError::DegreeRange);
    }
    if *options.t.start() < 2 {
        return Err(ReportError::CopiesRange);
    }
    let mut rows = Vec::new();
    let mut prior_classified = 0;
    for n in options.n.clone() {
        for t in options.t.clone() {
            for theta in TwistKind::ALL {
                for ty in CycleType::all(n) {
                    if ty.parity() != theta.parity() {
                        continue;
                    }
                    let entry = classify_status(n, t, theta, &ty)?;
                    let row = match (entry.status, entry.source) {
                        (_, Source::PriorClassification) => {
                            prior_classified += 1;
                            continue;
                        }
                        (Status::TypeDProved, _) => {
                            let cert = VerifiedCertificate::check(&certificate_for(&entry)?)?;
                            ReportRow::proved(entry, cert)
                        }
                        (Status::NotTypeD, _) => {
                            let evidence = if options.search_negatives {
                                search_negative(&entry, &options)?
                            } else {
                                Evidence::Citation(entry.source.to_string())
                            };
                            ReportRow::not_type_d(entry, evidence)
                        }
                        (Status::Unknown, _) => ReportRow::unknown(entry),
                    };
                    rows.push(row);
                }
            }
        }
    }
    Ok(Report { options, rows, prior_classified })
}

impl Report {
    pub fn rows(&self) -> &[ReportRow] {
        &self.rows
    }

    pub fn prior_classified(&self) -> usize {
        self.prior_classified
    }

    /// Records where the certificate of row `i` was written.
    pub fn set_certificate_path(&mut self, i: usize, path: impl Into<String>) {
        if let Evidence::Certificate(c) = &mut self.rows[i].evidence {
            c.path = Some(path.into());
        }
    }

    pub fn document(&self) -> ReportDocument {
        ReportDocument {
            n_range: (*self.options.n.start(), *self.options.n.end()),
            t_range: (*self.options.t.start(), *self.options.t.end()),
            rows: self.rows.iter().map(ReportRow::record).collect(),
            prior_classified: self.prior_classified,
            families: ExceptionFamily::ALL.iter().map(|f| f.description().to_string()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.document()).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let doc = self.document();
        let mut out = String::new();
        let header = ["n", "t", "theta", "type of ell u", "status", "source", "evidence"];
        let cells: Vec<[String; 7]> = doc
            .rows
            .iter()
            .map(|r| {
                [
                    r.n.to_string(),
                    r.t.to_string(),
                    r.theta.to_string(),
                    r.cycle_type.clone(),
                    r.status.to_string(),
                    r.source.clone(),
                    r.evidence.to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut line = |cols: &[String]| {
            let padded: Vec<String> = cols
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&header.map(String::from));
        for row in &cells {
            line(row);
        }
        let _ = writeln!(
            out,
            "\n{} further classes with n in {}..{} and t in {}..{} are of type D by prior classification.",
            doc.prior_classified, doc.n_range.0, doc.n_range.1, doc.t_range.0, doc.t_range.1
        );
        let _ = writeln!(out, "\nFor t > 1, a rack not of type D lies in one of these families:");
        for (i, f) in doc.families.iter().enumerate() {
            let _ = writeln!(out, "  {}. {f}", i + 1);
        }
        out
    }
}

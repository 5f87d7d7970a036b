//! The four-row lattice/modularity report and shared run configuration.

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteAlgebra, MAX_EXHAUSTIVE_CARRIER};
use crate::congruence::congruence_lattice;
use crate::error::{Error, Result};
use crate::filter::MAX_WEBER_DEPTH;
use crate::json::{certificate_json, CertificateJson, SCHEMA};
use crate::lattice::check_modular;
use crate::shifting::supeqv_lattice;
use crate::superunif::supunif_lattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Markdown,
}

/// Size caps, Weber depth, seed, and trial counts shared by the CLI and
/// the suite. Caps are validated against the module hard limits.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub max_carrier: usize,
    pub weber_depth: usize,
    pub seed: u64,
    pub trials: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_carrier: MAX_EXHAUSTIVE_CARRIER,
            weber_depth: crate::filter::DEFAULT_WEBER_DEPTH,
            seed: 42,
            trials: 100,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_carrier > MAX_EXHAUSTIVE_CARRIER {
            return Err(Error::SizeLimit {
                what: "configured max carrier",
                limit: MAX_EXHAUSTIVE_CARRIER,
                got: self.max_carrier,
            });
        }
        if self.weber_depth == 0 || self.weber_depth > MAX_WEBER_DEPTH {
            return Err(Error::SizeLimit {
                what: "configured weber depth",
                limit: MAX_WEBER_DEPTH,
                got: self.weber_depth,
            });
        }
        Ok(())
    }
}

/// One row of the four-row report. Every modular verdict is backed by a
/// serialized certificate; a row without one carries an explicit
/// limitation note instead.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRow {
    pub lattice: String,
    pub algebraic: String,
    pub notion: String,
    /// None when the verdict is not reproducible at finite scale.
    pub modular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableReport {
    pub schema: String,
    pub algebra: String,
    pub rows: Vec<TableRow>,
}

/// The four-row report for a given algebra: rows for relations, ideals of
/// relations, and ideals of filters of relations are computed with
/// modularity certificates; the filters-of-relations row is emitted with
/// the degeneracy note, since the negative modularity phenomenon needs an
/// infinite chain and cannot be reproduced at finite scale.
pub fn table_report(alg: &FiniteAlgebra, config: &RunConfig) -> Result<TableReport> {
    config.validate()?;
    let cap = config.max_carrier;

    let con = congruence_lattice(alg, cap)?;
    let con_cert = check_modular(&con);
    let supeqv = supeqv_lattice(alg, cap)?;
    let supeqv_cert = check_modular(&supeqv);
    let supunif = supunif_lattice(alg, cap)?;
    let supunif_cert = check_modular(&supunif);

    let finite_algebraic =
        "yes (finite scale: every finite lattice is trivially algebraic)".to_string();

    let rows = vec![
        TableRow {
            lattice: "Rel S".into(),
            algebraic: finite_algebraic.clone(),
            notion: "congruence".into(),
            modular: Some(con_cert.modular),
            certificate: Some(certificate_json(&con_cert, &con)),
            lattice_size: Some(con.len()),
            note: None,
        },
        TableRow {
            lattice: "Idl Rel S".into(),
            algebraic: finite_algebraic.clone(),
            notion: "compatible superequivalence".into(),
            modular: Some(supeqv_cert.modular),
            certificate: Some(certificate_json(&supeqv_cert, &supeqv)),
            lattice_size: Some(supeqv.len()),
            note: None,
        },
        TableRow {
            lattice: "Fil Rel S".into(),
            algebraic: "no in general; finite scale degenerates to principal filters".into(),
            notion: "compatible uniformity".into(),
            modular: None,
            certificate: None,
            lattice_size: Some(con.len()),
            note: Some(
                "non-modularity not reproducible at finite scale; the known \
                 counterexample is the lattice of uniformities on an infinite chain. \
                 At finite scale every filter is principal and this row collapses to \
                 the congruence lattice."
                    .into(),
            ),
        },
        TableRow {
            lattice: "Idl Fil Rel S".into(),
            algebraic: finite_algebraic,
            notion: "compatible superuniformity".into(),
            modular: Some(supunif_cert.modular),
            certificate: Some(certificate_json(&supunif_cert, &supunif)),
            lattice_size: Some(supunif.len()),
            note: None,
        },
    ];

    for row in &rows {
        assert!(
            row.certificate.is_some() || row.note.is_some(),
            "every verdict needs a certificate or a limitation note"
        );
    }

    Ok(TableReport {
        schema: SCHEMA.into(),
        algebra: alg.name.clone(),
        rows,
    })
}

pub fn render_table_markdown(report: &TableReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# Lattice report for {}\n\n", report.algebra));
    out.push_str("| Lattice | Algebraic | Compatible equivalence | Modular | Size | Evidence |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for row in &report.rows {
        let modular = match row.modular {
            Some(true) => "yes".to_string(),
            Some(false) => "no".to_string(),
            None => "—".to_string(),
        };
        let evidence = if let Some(cert) = &row.certificate {
            match &cert.witness {
                Some(w) => format!(
                    "witness (x,y,z) = ({},{},{})",
                    w.indices.0, w.indices.1, w.indices.2
                ),
                None => "exhaustive scan, no violation".to_string(),
            }
        } else {
            row.note.clone().unwrap_or_default()
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            row.lattice,
            row.algebraic,
            row.notion,
            modular,
            row.lattice_size.map_or("—".into(), |s| s.to_string()),
            evidence
        ));
    }
    out
}

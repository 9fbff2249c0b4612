//! Checking every hypothesis of the smoothing theorem for a curve with a
//! group action, and the certificate describing the resulting cover.

use std::fmt::Write;
use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::curve::{
    check_orientation, check_setup, quotient_curve, CoverData, CurveAction, NodeCase,
};
use crate::report::{prime_divisors, CheckItem, Hypothesis, Prime};

/// Fixed statement of what the certificate guarantees.
pub const FIELD_NOTE: &str = "The nodal cover C -> D = C/G deforms over k[[X]], k an algebraic \
closure of F_p, to a G-Galois cover whose generic fibre over k((X)) is smooth with the same \
arithmetic genera; it is ordinary when C is. Specialising to a suitable point gives a smooth \
G-Galois cover with the same properties over k itself.";

/// Per-point branch data of the smoothed cover is not part of the model.
pub const BRANCH_DATA_NOTE: &str = "not computed";

/// `2·g_C − 2 − n·(2·g_D − 2)`: the total ramification a degree-`n`
/// Galois cover of a genus-`g_D` curve by a genus-`g_C` curve must carry.
pub fn riemann_hurwitz_budget(genus_total: u64, genus_base: u64, order: u64) -> i64 {
    let (g_c, g_d, n) = (genus_total as i64, genus_base as i64, order as i64);
    2 * g_c - 2 - n * (2 * g_d - 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothingCertificate {
    pub group_label: String,
    pub group_order: usize,
    pub prime: Prime,
    /// Primes dividing the group order; the construction needs `p` outside.
    pub excluded_primes: Vec<u64>,
    pub genus_total: u64,
    pub genus_base: u64,
    pub total_ordinary: bool,
    pub checklist: Vec<CheckItem>,
    pub rh_budget: i64,
    pub field_note: String,
    pub cover: CoverData,
    /// Number of components of the quotient.
    pub quotient_vertices: usize,
}

/// The checklist of a refused certification; at least one item failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certification refused: {}", failed_names(.checklist))]
pub struct Refusal {
    pub group_label: String,
    pub group_order: usize,
    pub prime: Prime,
    pub checklist: Vec<CheckItem>,
}

fn failed_names(checklist: &[CheckItem]) -> String {
    checklist
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

impl Refusal {
    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.checklist.iter().filter(|c| !c.passed())
    }

    pub fn failed(&self, name: Hypothesis) -> bool {
        self.failures().any(|c| c.name == name)
    }
}

/// The checks that do not need the quotient: coprimality, faithfulness,
/// component action, node structure and orientation.
pub fn local_checks(action: &CurveAction, p: Prime) -> Vec<CheckItem> {
    let group = action.group();
    let mut checklist = check_setup(action, p).items;

    let mut structure_problems = Vec::new();
    let mut counts = (0usize, 0usize);
    for node in action.curve().graph().edges() {
        match crate::curve::classify_node(action, node) {
            Ok(class) => match class.case {
                NodeCase::SingularImage => counts.0 += 1,
                NodeCase::SmoothImage => counts.1 += 1,
            },
            Err(e) => structure_problems.push(e.to_string()),
        }
    }
    for (node, local) in action.node_local() {
        let label = action.node_label(*node);
        if let Err(detail) = local.check_character_homomorphism(group) {
            structure_problems.push(format!("node {label}: {detail}"));
        }
    }
    checklist.push(CheckItem::new(
        Hypothesis::NodeStructure,
        structure_problems.is_empty(),
        if structure_problems.is_empty() {
            format!(
                "{} nodes: {} with singular image, {} with smooth image",
                counts.0 + counts.1,
                counts.0,
                counts.1
            )
        } else {
            structure_problems.join("; ")
        },
    ));

    checklist.push(match check_orientation(action) {
        Ok(report) if report.passed() => {
            let checked = report.nodes.iter().filter(|n| !n.fast_path).count();
            CheckItem::new(
                Hypothesis::Orientation,
                true,
                format!(
                    "{} nodes; {} by character sums, the rest have stabilizer 1, C2 or C2 x C2",
                    report.nodes.len(),
                    checked
                ),
            )
        }
        Ok(report) => CheckItem::new(
            Hypothesis::Orientation,
            false,
            report
                .failures()
                .map(|n| {
                    format!(
                        "node {}: exponent sum nonzero for {}",
                        n.label,
                        n.failing_elements.join(", ")
                    )
                })
                .collect::<Vec<_>>()
                .join("; "),
        ),
        Err(e) => CheckItem::new(Hypothesis::Orientation, false, e.to_string()),
    });
    checklist
}

/// Runs every check and issues a certificate only if all of them pass.
pub fn certify(action: &CurveAction, p: Prime) -> Result<SmoothingCertificate, Refusal> {
    let group = action.group();
    let mut checklist = local_checks(action, p);

    let genus_total = action.curve().arithmetic_genus();
    let quotient = quotient_curve(action);
    let order = group.order();
    let (rh, base) = match &quotient {
        Ok((d, cover)) => {
            let genus_base = d.arithmetic_genus();
            checklist.push(CheckItem::new(
                Hypothesis::Quotient,
                true,
                format!(
                    "D has {} components, {} nodes, arithmetic genus {}",
                    d.graph().vertex_count(),
                    d.graph().edges().len(),
                    genus_base
                ),
            ));
            let budget = riemann_hurwitz_budget(genus_total, genus_base, order as u64);
            let required = genus_base >= 1 || order >= 2;
            checklist.push(CheckItem::new(
                Hypothesis::RhBudget,
                !required || budget >= 0,
                format!("2*{genus_total} - 2 - {order}*(2*{genus_base} - 2) = {budget}"),
            ));
            (
                budget,
                Some((genus_base, cover.clone(), d.graph().vertex_count())),
            )
        }
        Err(e) => {
            checklist.push(CheckItem::new(Hypothesis::Quotient, false, e.to_string()));
            checklist.push(CheckItem::new(
                Hypothesis::RhBudget,
                false,
                "quotient unavailable",
            ));
            (0, None)
        }
    };

    if checklist.iter().any(|c| !c.passed()) {
        return Err(Refusal {
            group_label: group.label().to_string(),
            group_order: order,
            prime: p,
            checklist,
        });
    }
    let (genus_base, cover, quotient_vertices) = base.expect("quotient passed");
    Ok(SmoothingCertificate {
        group_label: group.label().to_string(),
        group_order: order,
        prime: p,
        excluded_primes: prime_divisors(order as u64),
        genus_total,
        genus_base,
        total_ordinary: action.curve().is_ordinary(),
        checklist,
        rh_budget: rh,
        field_note: FIELD_NOTE.to_string(),
        cover,
        quotient_vertices,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown format {0:?} (expected text or json)")]
pub struct UnknownFormat(pub String);

impl FromStr for Format {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(UnknownFormat(other.to_string())),
        }
    }
}

fn checklist_json(checklist: &[CheckItem]) -> Value {
    Value::Array(
        checklist
            .iter()
            .map(|c| json!({"name": c.name.as_str(), "status": c.status.to_string(), "evidence": c.evidence}))
            .collect(),
    )
}

impl SmoothingCertificate {
    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self
            .cover
            .nodes
            .iter()
            .map(|n| {
                json!({
                    "node": n.label,
                    "case": n.case.to_string(),
                    "m": n.m,
                    "stabilizer_order": n.stabilizer.len(),
                    "structure": n.structure.to_string(),
                })
            })
            .collect();
        let components: Vec<Value> = self
            .cover
            .components
            .iter()
            .map(|c| {
                json!({
                    "quotient_vertex": c.quotient_vertex,
                    "orbit_size": c.orbit_size,
                    "local_degree": c.local_degree,
                    "genus": c.genus,
                    "quotient_genus": c.quotient_genus,
                })
            })
            .collect();
        json!({
            "group": {"label": self.group_label, "order": self.group_order},
            "prime": self.prime.get(),
            "excluded_primes": self.excluded_primes,
            "genus_total": self.genus_total,
            "genus_base": self.genus_base,
            "ordinary": self.total_ordinary,
            "rh_budget": self.rh_budget,
            "checklist": checklist_json(&self.checklist),
            "field_note": self.field_note,
            "branch_data": BRANCH_DATA_NOTE,
            "cover": {"node_orbits": nodes, "component_orbits": components},
        })
    }
}

impl Refusal {
    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .failures()
            .map(|c| json!({"name": c.name.as_str(), "evidence": c.evidence}))
            .collect();
        json!({
            "status": "refused",
            "group": {"label": self.group_label, "order": self.group_order},
            "prime": self.prime.get(),
            "failures": failures,
            "checklist": checklist_json(&self.checklist),
        })
    }
}

pub fn render_certificate(cert: &SmoothingCertificate, format: Format) -> String {
    match format {
        Format::Json => pretty(&cert.to_json()),
        Format::Text => {
            let mut out = String::new();
            let excluded: Vec<String> = cert.excluded_primes.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "CERTIFICATE smooth ordinary Galois cover exists");
            let _ = writeln!(out, "GROUP {} order {}", cert.group_label, cert.group_order);
            let _ = writeln!(
                out,
                "PRIME {} (excluded: {})",
                cert.prime,
                excluded.join(", ")
            );
            let _ = writeln!(out, "GENUS(C) {}", cert.genus_total);
            let _ = writeln!(out, "GENUS(D) {}", cert.genus_base);
            let _ = writeln!(
                out,
                "ORDINARY {}",
                if cert.total_ordinary { "yes" } else { "no" }
            );
            let _ = writeln!(out, "RH-BUDGET {}", cert.rh_budget);
            for item in &cert.checklist {
                let _ = writeln!(out, "CHECK {item}");
            }
            for n in &cert.cover.nodes {
                let _ = writeln!(
                    out,
                    "NODE {} {} m={} stabilizer={} {}",
                    n.label,
                    n.case,
                    n.m,
                    n.stabilizer.len(),
                    n.structure
                );
            }
            for c in &cert.cover.components {
                let _ = writeln!(
                    out,
                    "COMPONENT {} orbit={} degree={} genus {} -> {}",
                    c.quotient_vertex, c.orbit_size, c.local_degree, c.genus, c.quotient_genus
                );
            }
            let _ = writeln!(out, "BRANCH-DATA {BRANCH_DATA_NOTE}");
            let _ = writeln!(out, "FIELD {}", cert.field_note);
            out
        }
    }
}

pub fn render_refusal(refusal: &Refusal, format: Format) -> String {
    match format {
        Format::Json => pretty(&refusal.to_json()),
        Format::Text => {
            let mut out = String::new();
            let count = refusal.failures().count();
            let _ = writeln!(
                out,
                "REFUSED {count} hypothesis check(s) failed for {} (order {}) at p = {}",
                refusal.group_label, refusal.group_order, refusal.prime
            );
            for item in &refusal.checklist {
                let _ = writeln!(out, "CHECK {item}");
            }
            out
        }
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

//! Plain-text rendering for `--table` mode; mirrors the JSON content.

use klab_core::experiments::{LorentzianSweepEntry, MonotonicityEntry};
use klab_core::hstar::{HStarReport, MacaulayVerdict};
use klab_core::kclass::KExpansion;
use klab_core::lorentzian::LorentzianVerdict;
use klab_core::subset::Subset;
use klab_core::{BundleSpec, Matroid, Polymatroid};

pub fn validate_matroid(m: &Matroid) -> String {
    format!(
        "matroid on {} elements, rank {}, {}loopless, {}connected",
        m.n(),
        m.rank_total(),
        if m.is_loopless() { "" } else { "not " },
        if m.is_connected() { "" } else { "not " },
    )
}

pub fn validate_polymatroid(p: &Polymatroid) -> String {
    format!("polymatroid on {} elements, cage {:?}, rank {}", p.m(), p.cage(), p.rank_total())
}

pub fn hstar(report: &HStarReport, bundle: &BundleSpec) -> String {
    let subsets: Vec<String> = bundle
        .subsets
        .iter()
        .zip(&bundle.exponents)
        .map(|(s, e)| format!("{s}^{e}"))
        .collect();
    let hs: Vec<String> = report.hstar.iter().map(|h| h.to_string()).collect();
    format!(
        "bundle   {}\nsnapper  {}\ndegree   {}\nh*       ({})\nmacaulay {}",
        subsets.join(" "),
        report.snapper,
        report.d,
        hs.join(", "),
        verdict_text(&report.macaulay),
    )
}

fn verdict_text(v: &MacaulayVerdict) -> String {
    match v.violation_index {
        None => "yes".to_string(),
        Some(i) => format!("no (violated at index {i})"),
    }
}

pub fn macaulay(v: &MacaulayVerdict) -> String {
    format!("macaulay: {}", verdict_text(v))
}

pub fn kclass(e: &KExpansion) -> String {
    let mut lines = vec![format!("cage {:?}", e.cage)];
    for (b, c) in e.sorted_entries() {
        lines.push(format!("  c{b:?} = {c}"));
    }
    lines.join("\n")
}

pub fn lorentzian(v: &LorentzianVerdict) -> String {
    match &v.failure {
        None => "lorentzian: yes".to_string(),
        Some(f) => format!("lorentzian: no ({f})"),
    }
}

pub fn lift(m: &Matroid, blocks: &[Subset]) -> String {
    let blocks_text: Vec<String> = blocks.iter().map(|b| b.to_string()).collect();
    format!(
        "lift: matroid on {} elements of rank {}, blocks {}",
        m.n(),
        m.rank_total(),
        blocks_text.join(" ")
    )
}

pub fn lorentzian_sweep(entries: &[LorentzianSweepEntry]) -> String {
    let mut lines = Vec::with_capacity(entries.len());
    for e in entries {
        lines.push(format!(
            "{:<36} spanning={:<5} denormalized-lorentzian={:<5} lift-match={}",
            e.name,
            e.spanning,
            e.denorm_lorentzian,
            e.matches_lift_transform.map_or("n/a".to_string(), |b| b.to_string()),
        ));
    }
    lines.join("\n")
}

pub fn monotonicity(entries: &[MonotonicityEntry]) -> String {
    let mut lines = Vec::with_capacity(entries.len());
    for e in entries {
        lines.push(format!(
            "{:<36} holds={:<5} h1=({}) h2=({})",
            e.name,
            e.holds,
            e.h1.join(","),
            e.h2.join(","),
        ));
    }
    lines.join("\n")
}

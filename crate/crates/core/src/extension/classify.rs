use serde::Serialize;

use super::center::{alt_sign, s_matrix, swap_matrix, CenterAction};
use crate::abelian::{FinAbGroup, GroupHom};
use crate::caps::Caps;
use crate::cohomology::{
    cohomology_bar, cohomology_cyclic, cohomology_torus, CohomologyGroup, GModule, SmallGroup,
};
use crate::error::{Error, Result};
use crate::forms::{quadratic_form_count, Bicharacter};

/// How the grading group acts on `A ⊕ Â`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionAction {
    /// `(a, λ) ↦ (ι⁻¹λ, ιa)`.
    Swap,
    /// `(a, λ) ↦ (ι⁻¹λ, −ιa)`.
    SMatrix,
    /// One matrix per generator of the grading group.
    Explicit(Vec<GroupHom>),
}

impl ExtensionAction {
    pub fn label(&self) -> &'static str {
        match self {
            ExtensionAction::Swap => "swap",
            ExtensionAction::SMatrix => "S-matrix",
            ExtensionAction::Explicit(_) => "explicit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub name: &'static str,
    pub group: CohomologyGroup,
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub grading_group: String,
    pub a: FinAbGroup,
    pub action: String,
    /// The symmetric pairing used to identify `Â` with `A`.
    pub pairing: Bicharacter,
    pub generator_actions: Vec<CenterAction>,
    /// Obstruction in `H⁴(G, A⊕Â)`; the engine reports the ambient group only.
    pub h4: LedgerEntry,
    pub h6: LedgerEntry,
    /// Torsors: fractionalization classes and SPT choices.
    pub h3: LedgerEntry,
    pub h5: LedgerEntry,
    /// Caller-declared order of the stacked Witt class; not computed here.
    pub witt_order: u32,
    pub sigma_torsor_size: usize,
    pub labels: Vec<String>,
    pub note: &'static str,
}

fn entry(name: &'static str, group: CohomologyGroup) -> LedgerEntry {
    LedgerEntry {
        name,
        vanishes: group.group.is_trivial(),
        group,
    }
}

/// Symplecticity gate, then the four cohomology groups and the label set.
pub fn classify_extension(
    g: &SmallGroup,
    a: &FinAbGroup,
    action: &ExtensionAction,
    witt_order: u32,
    caps: &Caps,
) -> Result<ExtensionReport> {
    if g.cyclic.is_none() && g.order() > 8 {
        return Err(Error::HypothesisViolated("grading group must be cyclic or of order ≤ 8".into()));
    }
    if witt_order == 0 {
        return Err(Error::HypothesisViolated("Witt order is a positive integer".into()));
    }
    let pairing = Bicharacter::evaluation(a);
    let mats: Vec<GroupHom> = match action {
        ExtensionAction::Swap => vec![swap_matrix(a, &pairing)?; g.gens.len()],
        ExtensionAction::SMatrix => vec![s_matrix(a, &pairing)?; g.gens.len()],
        ExtensionAction::Explicit(m) => m.clone(),
    };
    for m in &mats {
        if alt_sign(a, m) != Some(1) {
            return Err(Error::NotSymplectic(format!(
                "{} action on {a}+{a} does not preserve Alt(ς)",
                action.label()
            )));
        }
    }
    let module = GModule::new(g.clone(), a.direct_sum(a), mats.clone())?;
    let twisted = |d: usize| -> Result<CohomologyGroup> {
        if g.cyclic.is_some() {
            cohomology_cyclic(&module, d, caps)
        } else {
            cohomology_bar(&module, d, caps)
        }
    };
    let h3 = entry("H3(G,A+Â)", twisted(3)?);
    let h4 = entry("H4(G,A+Â)", twisted(4)?);
    let h5 = entry("H5(G;C×)", cohomology_torus(g, 5, caps)?);
    let h6 = entry("H6(G;C×)", cohomology_torus(g, 6, caps)?);
    let sigma = quadratic_form_count(a);
    let w = if witt_order == 1 { "0".to_string() } else { format!("w{witt_order}") };
    let h5g = &h5.group.group;
    let labels = h5g
        .elements()
        .flat_map(|tau| {
            let t = tau
                .coords()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let w = w.clone();
            (0..sigma).map(move |s| format!("3TY^{w}_{{({t}),{s}}}"))
        })
        .collect();
    Ok(ExtensionReport {
        grading_group: g.label.clone(),
        a: a.clone(),
        action: action.label().into(),
        pairing,
        generator_actions: mats.into_iter().map(|m| CenterAction::of(a, m)).collect(),
        h4,
        h6,
        h3,
        h5,
        witt_order,
        sigma_torsor_size: sigma,
        labels,
        note: "Witt order of the stacked category is declared by the caller, not computed; H4 is reported as an ambient group, not a specific obstruction class",
    })
}

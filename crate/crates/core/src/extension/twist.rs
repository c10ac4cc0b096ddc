//! Twisting bimodule forms by `Quad(A) ⋊ Aut(A)`:
//! `(p, α)·q = q ∘ (α⁻¹ × α⁻¹) + p(x) + p(y)`.

use serde::Serialize;

use super::bimodule::BimoduleForm;
use super::center::{block, invert};
use crate::abelian::{automorphisms, FinAbGroup, GroupHom};
use crate::caps::Caps;
use crate::error::Result;
use crate::forms::{enumerate_quadratic_forms, QuadraticForm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Twist {
    pub p: QuadraticForm,
    pub alpha: GroupHom,
}

impl Twist {
    pub fn identity(a: &FinAbGroup) -> Self {
        Twist {
            p: QuadraticForm::zero(a),
            alpha: GroupHom::identity(a),
        }
    }

    pub fn apply(&self, f: &BimoduleForm) -> Result<BimoduleForm> {
        let a = f.a();
        let inv = invert(&self.alpha)?;
        let zero = GroupHom::zero(a.clone(), a.clone());
        let relabel = block(a, &inv, &zero, &zero, &inv);
        let q = f.form().pullback(&relabel)?.add(&self.p.direct_sum(&self.p))?;
        BimoduleForm::new(a, q)
    }

    /// `self · other`, so that `(s·t)·f = s·(t·f)`.
    pub fn then_after(&self, other: &Twist) -> Result<Twist> {
        let inv = invert(&self.alpha)?;
        Ok(Twist {
            p: self.p.add(&other.p.pullback(&inv)?)?,
            alpha: self.alpha.compose(&other.alpha)?,
        })
    }
}

/// Every element of `Quad(A) ⋊ Aut(A)`.
pub fn twist_group(a: &FinAbGroup, caps: &Caps) -> Result<Vec<Twist>> {
    let quads = enumerate_quadratic_forms(a, caps)?;
    let auts = automorphisms(a, caps)?;
    Ok(auts
        .iter()
        .flat_map(|al| {
            quads.iter().map(move |p| Twist {
                p: p.clone(),
                alpha: al.clone(),
            })
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Positions in the input list.
    pub members: Vec<usize>,
    /// Size of the full orbit under the twist group.
    pub orbit_size: usize,
}

/// Partition `forms` by twist orbits, in order of first appearance.
pub fn twist_orbits(forms: &[BimoduleForm], a: &FinAbGroup, caps: &Caps) -> Result<Vec<Orbit>> {
    let group = twist_group(a, caps)?;
    let mut assigned = vec![false; forms.len()];
    let mut out = Vec::new();
    for i in 0..forms.len() {
        if assigned[i] {
            continue;
        }
        let mut orbit: Vec<BimoduleForm> = Vec::new();
        for t in &group {
            let g = t.apply(&forms[i])?;
            if !orbit.contains(&g) {
                orbit.push(g);
            }
        }
        let members: Vec<usize> = (i..forms.len())
            .filter(|&j| !assigned[j] && orbit.contains(&forms[j]))
            .collect();
        for &j in &members {
            assigned[j] = true;
        }
        out.push(Orbit {
            members,
            orbit_size: orbit.len(),
        });
    }
    Ok(out)
}

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::graded::GradedPremetricGroup;
use super::triviality::{is_a_trivial, FormTables, TrivialityCertificate};
use crate::abelian::{enumerate_subgroups, quotient, Subgroup};
use crate::forms::metric_candidates;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::forms::{MetricGroup, QuadraticForm};

/// `X = (H, q|_H) ⊕ (H^⊥, f|, q|)` for `H ⊆ G₀` with `q|_H` nondegenerate.
pub fn split_metric(
    x: &GradedPremetricGroup,
    h: &Subgroup,
    caps: &Caps,
) -> Result<(MetricGroup, GradedPremetricGroup)> {
    if h.parent() != x.group() {
        return Err(Error::InvalidGroup("subgroup of another group".into()));
    }
    if h.generators().iter().any(|g| !x.grading().apply(g).is_zero()) {
        return Err(Error::NotInKernel);
    }
    let restricted = x.form().restrict(h)?;
    let metric = MetricGroup::new(restricted).map_err(|_| Error::DegenerateRestriction)?;
    let perp = x.form().bil().orthogonal_complement(h);
    if h.order() * perp.order() != x.order() || !h.intersection(&perp).is_trivial() {
        return Err(Error::DegenerateRestriction);
    }
    caps.check_group(x.group())?;
    Ok((metric, x.restrict(&perp)?))
}

/// `H^⊥/H` with the induced grading and form, for isotropic `H ⊆ G₀`.
pub fn condense(
    x: &GradedPremetricGroup,
    h: &Subgroup,
    caps: &Caps,
) -> Result<GradedPremetricGroup> {
    if h.parent() != x.group() {
        return Err(Error::InvalidGroup("subgroup of another group".into()));
    }
    if h.generators().iter().any(|g| !x.grading().apply(g).is_zero()) {
        return Err(Error::NotInKernel);
    }
    if !x.form().is_isotropic(h) {
        return Err(Error::NotIsotropic);
    }
    if h.is_trivial() {
        return Ok(x.clone());
    }
    let perp = x.form().bil().orthogonal_complement(h);
    let p = perp.structure();
    let iota = perp.embedding();
    let inner: Vec<usize> = (0..p.order())
        .filter(|&i| h.contains(&iota.apply(&p.element_at(i))))
        .collect();
    let inner = Subgroup::from_sorted_members(p.clone(), inner);
    let quo = quotient(&p, &inner, caps)?;
    let lifts: Vec<_> = quo
        .group
        .generators()
        .iter()
        .map(|e| iota.apply(&quo.lift(e)))
        .collect();
    let grading = crate::abelian::GroupHom::from_images(
        quo.group.clone(),
        x.context().a().clone(),
        &lifts.iter().map(|l| x.grading().apply(l)).collect::<Vec<_>>(),
    )?;
    let b = x.form().bil();
    let k = lifts.len();
    let gen = lifts.iter().map(|l| x.form().value(l)).collect();
    let mut offdiag = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            offdiag.push(b.eval(&lifts[i], &lifts[j]));
        }
    }
    let form = QuadraticForm::new(quo.group.clone(), gen, offdiag)?;
    // induced data must agree on every element of every coset
    for i in 0..p.order() {
        let el = p.element_at(i);
        let up = iota.apply(&el);
        let down = quo.projection.apply(&el);
        if form.value(&down) != x.form().value(&up)
            || grading.apply(&down) != x.grading().apply(&up)
        {
            return Err(Error::NotIsotropic);
        }
    }
    GradedPremetricGroup::new(x.context().clone(), grading, form)
}

/// One reduction move.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionStep {
    /// Pass to `H^⊥/H` for an isotropic `H ⊆ G₀`.
    Condense { subgroup: Subgroup },
    /// Split off a trivially graded metric summand and keep its complement.
    Split {
        subgroup: Subgroup,
        residue: MetricGroup,
        gauss_sum: [f64; 2],
    },
}

impl ReductionStep {
    pub fn apply(&self, x: &GradedPremetricGroup, caps: &Caps) -> Result<GradedPremetricGroup> {
        match self {
            ReductionStep::Condense { subgroup } => condense(x, subgroup, caps),
            ReductionStep::Split {
                subgroup,
                residue,
                gauss_sum,
            } => {
                let (m, rest) = split_metric(x, subgroup, caps)?;
                if m != *residue {
                    return Err(Error::Certificate("recorded residue differs".into()));
                }
                let s = m.gauss_sum();
                if (s.re - gauss_sum[0]).abs() > 1e-9 || (s.im - gauss_sum[1]).abs() > 1e-9 {
                    return Err(Error::Certificate("recorded Gauss sum differs".into()));
                }
                Ok(rest)
            }
        }
    }

    fn split(x: &GradedPremetricGroup, h: Subgroup, caps: &Caps) -> Result<(Self, GradedPremetricGroup)> {
        let (residue, rest) = split_metric(x, &h, caps)?;
        let s = residue.gauss_sum();
        Ok((
            ReductionStep::Split {
                subgroup: h,
                residue,
                gauss_sum: [s.re, s.im],
            },
            rest,
        ))
    }
}

/// Which test produced a mod-Witt verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "test", rename_all = "snake_case")]
pub enum Decision {
    /// Split metric summands, then a Lagrangian in the complement.
    Primary,
    /// The reduced object times `partner` (trivially graded) is A-trivial.
    Stabilized { partner: MetricGroup },
}

/// Auditable record of a triviality verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub input: GradedPremetricGroup,
    pub steps: Vec<ReductionStep>,
    pub final_object: GradedPremetricGroup,
    pub certificate: TrivialityCertificate,
    pub decided_by: Decision,
}

impl ReductionTrace {
    /// Replays every step from the input and re-checks the final certificate.
    pub fn verify(&self, caps: &Caps) -> Result<()> {
        let end = replay(&self.input, &self.steps, caps)?;
        if end != self.final_object {
            return Err(Error::Certificate("replay does not reproduce the final object".into()));
        }
        match &self.decided_by {
            Decision::Primary => self.certificate.verify(&self.final_object),
            Decision::Stabilized { partner } => {
                let n = GradedPremetricGroup::trivially_graded(
                    self.final_object.context(),
                    partner.form().clone(),
                );
                self.certificate.verify(&self.final_object.twisted_product(&n)?)
            }
        }
    }

    /// Metric summands split off on the way, with their Gauss sums.
    pub fn residues(&self) -> Vec<(&MetricGroup, Complex64)> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                ReductionStep::Split {
                    residue, gauss_sum, ..
                } => Some((residue, Complex64::new(gauss_sum[0], gauss_sum[1]))),
                _ => None,
            })
            .collect()
    }
}

pub fn replay(
    x: &GradedPremetricGroup,
    steps: &[ReductionStep],
    caps: &Caps,
) -> Result<GradedPremetricGroup> {
    let mut cur = x.clone();
    for s in steps {
        cur = s.apply(&cur, caps)?;
    }
    Ok(cur)
}

fn first_isotropic(x: &GradedPremetricGroup, caps: &Caps) -> Result<Option<Subgroup>> {
    let g0 = x.degree_zero(caps)?;
    let t = FormTables::new(x);
    let hit = g0
        .member_indices()
        .iter()
        .copied()
        .find(|&i| i != 0 && t.values[i] == 0);
    Ok(match hit {
        Some(i) => Some(Subgroup::generated_by(x.group(), &[x.group().element_at(i)])?),
        None => None,
    })
}

/// First nontrivial `M ⊆ G₀` of rank at most two with `q|_M` nondegenerate.
///
/// Every nondegenerate form splits into orthogonal blocks of rank one or two,
/// so this finds a summand whenever one exists.
fn first_metric_block(x: &GradedPremetricGroup, caps: &Caps) -> Result<Option<Subgroup>> {
    let g0 = x.degree_zero(caps)?;
    let t = FormTables::new(x);
    let grp = x.group();
    let els: Vec<usize> = g0.member_indices().iter().copied().filter(|&i| i != 0).collect();
    let span = |gens: &[usize]| -> Vec<usize> {
        let mut mask = vec![false; grp.order()];
        mask[0] = true;
        let mut members = vec![0usize];
        for &g in gens {
            if mask[g] {
                continue;
            }
            let base = members.clone();
            let mut shift = g;
            while !mask[shift] {
                for &b in &base {
                    let y = grp.add_idx(b, shift);
                    mask[y] = true;
                    members.push(y);
                }
                shift = grp.add_idx(shift, g);
            }
        }
        members
    };
    let nondegenerate = |members: &[usize], gens: &[usize]| {
        members
            .iter()
            .all(|&m| m == 0 || gens.iter().any(|&g| t.bil(m, g) != 0))
    };
    for &g in &els {
        let m = span(&[g]);
        if nondegenerate(&m, &[g]) {
            let mut m = m;
            m.sort_unstable();
            return Ok(Some(Subgroup::from_sorted_members(grp.clone(), m)));
        }
    }
    for (i, &g) in els.iter().enumerate() {
        for &h in &els[i + 1..] {
            let m = span(&[g, h]);
            if nondegenerate(&m, &[g, h]) {
                let mut m = m;
                m.sort_unstable();
                return Ok(Some(Subgroup::from_sorted_members(grp.clone(), m)));
            }
        }
    }
    Ok(None)
}

/// Condenses isotropic cyclic subgroups of `G₀` until none is left.
///
/// Preserves the class of a nondegenerate object; degenerate input is
/// returned unchanged.
pub fn reduce_raw(
    x: &GradedPremetricGroup,
    caps: &Caps,
) -> Result<(GradedPremetricGroup, Vec<ReductionStep>)> {
    let mut cur = x.clone();
    let mut steps = Vec::new();
    if !cur.is_nondegenerate() {
        return Ok((cur, steps));
    }
    while let Some(h) = first_isotropic(&cur, caps)? {
        cur = condense(&cur, &h, caps)?;
        steps.push(ReductionStep::Condense { subgroup: h });
    }
    Ok((cur, steps))
}

/// Splits metric blocks off `G₀` and condenses isotropic elements until
/// neither applies. Preserves the class modulo metric groups.
pub fn reduce_mod_witt(
    x: &GradedPremetricGroup,
    caps: &Caps,
) -> Result<(GradedPremetricGroup, Vec<ReductionStep>)> {
    let mut cur = x.clone();
    let mut steps = Vec::new();
    loop {
        if let Some(m) = first_metric_block(&cur, caps)? {
            let (step, rest) = ReductionStep::split(&cur, m, caps)?;
            steps.push(step);
            cur = rest;
            continue;
        }
        if cur.is_nondegenerate() {
            if let Some(h) = first_isotropic(&cur, caps)? {
                cur = condense(&cur, &h, caps)?;
                steps.push(ReductionStep::Condense { subgroup: h });
                continue;
            }
        }
        return Ok((cur, steps));
    }
}

/// Direct search: the first `M ⊆ G₀` (by order, then generators) with
/// `q|_M` nondegenerate whose complement is A-trivial.
pub fn split_then_lagrangian(
    x: &GradedPremetricGroup,
    caps: &Caps,
) -> Result<Option<(Vec<ReductionStep>, GradedPremetricGroup, TrivialityCertificate)>> {
    let g0 = x.degree_zero(caps)?;
    for m in enumerate_subgroups(x.group(), Some(&g0), caps)? {
        if !x.form().restrict(&m)?.is_nondegenerate() {
            continue;
        }
        let (steps, rest) = if m.is_trivial() {
            (Vec::new(), x.clone())
        } else {
            let (step, rest) = ReductionStep::split(x, m, caps)?;
            (vec![step], rest)
        };
        if let Some(cert) = is_a_trivial(&rest, caps)? {
            return Ok(Some((steps, rest, cert)));
        }
    }
    Ok(None)
}

/// Trivial modulo metric groups: reduce, then split-then-Lagrangian, then
/// (when `caps.stabilize > 0`) stabilization by trivially graded metric
/// groups of order at most `caps.stabilize`.
pub fn is_trivial_mod_witt(
    x: &GradedPremetricGroup,
    caps: &Caps,
) -> Result<Option<ReductionTrace>> {
    caps.check_group(x.group())?;
    let (reduced, mut steps) = reduce_mod_witt(x, caps)?;
    if let Some((more, final_object, certificate)) = split_then_lagrangian(&reduced, caps)? {
        steps.extend(more);
        return Ok(Some(ReductionTrace {
            input: x.clone(),
            steps,
            final_object,
            certificate,
            decided_by: Decision::Primary,
        }));
    }
    if caps.stabilize > 0 {
        for form in metric_candidates(caps.stabilize, caps)? {
            let n = GradedPremetricGroup::trivially_graded(reduced.context(), form.clone());
            let prod = reduced.twisted_product(&n)?;
            if prod.order() > caps.group_order {
                continue;
            }
            if let Some(certificate) = is_a_trivial(&prod, caps)? {
                return Ok(Some(ReductionTrace {
                    input: x.clone(),
                    steps,
                    final_object: reduced,
                    certificate,
                    decided_by: Decision::Stabilized {
                        partner: MetricGroup::new(form)?,
                    },
                }));
            }
        }
    }
    Ok(None)
}

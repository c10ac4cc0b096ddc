use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::graded::GradedPremetricGroup;
use crate::abelian::{FinAbGroup, Subgroup};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Witness that an object is A-trivial: a Lagrangian inside `G₀`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialityCertificate {
    pub lagrangian: Subgroup,
    /// The radical of `Bil(q)` was found trivial.
    pub nondegenerate: bool,
}

impl TrivialityCertificate {
    /// Re-checks the certificate against `x` without any search.
    pub fn verify(&self, x: &GradedPremetricGroup) -> Result<()> {
        let l = &self.lagrangian;
        if l.parent() != x.group() {
            return Err(Error::Certificate("Lagrangian lives in another group".into()));
        }
        if !self.nondegenerate || !x.is_nondegenerate() {
            return Err(Error::Certificate("form is degenerate".into()));
        }
        if l.generators().iter().any(|g| !x.grading().apply(g).is_zero()) {
            return Err(Error::Certificate("Lagrangian leaves the degree-zero part".into()));
        }
        if !x.form().is_isotropic(l) {
            return Err(Error::Certificate("Lagrangian is not isotropic".into()));
        }
        let perp = x.form().bil().orthogonal_complement(l);
        if perp != *l {
            return Err(Error::Certificate(format!(
                "complement has order {} but the Lagrangian has order {}",
                perp.order(),
                l.order()
            )));
        }
        Ok(())
    }
}

/// Index tables for isotropy searches.
pub(crate) struct FormTables<'a> {
    pub group: &'a FinAbGroup,
    pub level: i64,
    pub values: Vec<i64>,
}

impl<'a> FormTables<'a> {
    pub fn new(x: &'a GradedPremetricGroup) -> Self {
        let (level, values) = x.form().value_table();
        FormTables {
            group: x.group(),
            level,
            values,
        }
    }

    pub fn bil(&self, a: usize, b: usize) -> i64 {
        let s = self.group.add_idx(a, b);
        (self.values[s] - self.values[a] - self.values[b]).rem_euclid(self.level)
    }
}

fn isqrt_exact(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

/// First Lagrangian subgroup of `G₀` in the depth-first order that adds
/// isotropic elements by increasing index.
pub fn find_lagrangian(x: &GradedPremetricGroup, caps: &Caps) -> Result<Option<Subgroup>> {
    caps.check_group(x.group())?;
    let Some(target) = isqrt_exact(x.order()) else {
        return Ok(None);
    };
    let g0 = x.degree_zero(caps)?;
    if g0.order() < target {
        return Ok(None);
    }
    let t = FormTables::new(x);
    let iso: Vec<usize> = g0
        .member_indices()
        .iter()
        .copied()
        .filter(|&i| i != 0 && t.values[i] == 0)
        .collect();
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut mask = vec![false; x.order()];
    mask[0] = true;
    let mut found = None;
    dfs(
        &t,
        &iso,
        0,
        &mut vec![0],
        &mut mask,
        &mut Vec::new(),
        target,
        &mut visited,
        caps,
        &mut found,
    )?;
    Ok(found.map(|m| Subgroup::from_sorted_members(x.group().clone(), m)))
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    t: &FormTables<'_>,
    iso: &[usize],
    start: usize,
    members: &mut Vec<usize>,
    mask: &mut Vec<bool>,
    gens: &mut Vec<usize>,
    target: usize,
    visited: &mut HashSet<Vec<usize>>,
    caps: &Caps,
    found: &mut Option<Vec<usize>>,
) -> Result<()> {
    if members.len() == target {
        let mut m = members.clone();
        m.sort_unstable();
        *found = Some(m);
        return Ok(());
    }
    for (pos, &c) in iso.iter().enumerate().skip(start) {
        if mask[c] || gens.iter().any(|&g| t.bil(g, c) != 0) {
            continue;
        }
        // grow by the cyclic group of c
        let base = members.len();
        let mut shift = c;
        while !mask[shift] {
            for b in 0..base {
                let y = t.group.add_idx(members[b], shift);
                mask[y] = true;
                members.push(y);
            }
            shift = t.group.add_idx(shift, c);
        }
        if members.len() <= target {
            let mut key = members.clone();
            key.sort_unstable();
            if visited.insert(key) {
                if visited.len() > caps.subgroups {
                    return Err(Error::cap("isotropic subgroup search", visited.len(), caps.subgroups));
                }
                gens.push(c);
                dfs(t, iso, pos + 1, members, mask, gens, target, visited, caps, found)?;
                gens.pop();
            }
        }
        for &y in &members[base..] {
            mask[y] = false;
        }
        members.truncate(base);
        if found.is_some() {
            return Ok(());
        }
    }
    Ok(())
}

/// Certificate that `x` is A-trivial: nondegenerate with a Lagrangian in `G₀`.
pub fn is_a_trivial(
    x: &GradedPremetricGroup,
    caps: &Caps,
) -> Result<Option<TrivialityCertificate>> {
    caps.check_group(x.group())?;
    if !x.is_nondegenerate() {
        return Ok(None);
    }
    let Some(lagrangian) = find_lagrangian(x, caps)? else {
        return Ok(None);
    };
    let cert = TrivialityCertificate {
        lagrangian,
        nondegenerate: true,
    };
    cert.verify(x)?;
    Ok(Some(cert))
}

/// `X ⊠ X^{s-op}` is A-trivial; returns the certificate for that product.
pub fn s_invertibility(
    x: &GradedPremetricGroup,
    caps: &Caps,
) -> Result<Option<TrivialityCertificate>> {
    let p = x.twisted_product(&x.s_opposite())?;
    is_a_trivial(&p, caps)
}

pub fn is_s_invertible(x: &GradedPremetricGroup, caps: &Caps) -> Result<bool> {
    Ok(s_invertibility(x, caps)?.is_some())
}

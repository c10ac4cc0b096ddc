//! The normalized bar complex `C^d(G;M) = Map((G∖1)^d, M)` and its
//! cohomology, computed one primary component of `M` at a time.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::gmodule::GModule;
use super::local::{homology, LocalRing};
use super::{CohomologyGroup, Representatives};
use crate::abelian::{FinAbGroup, GroupElement};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Largest table stored for a cochain, in entries.
pub const TABLE_LIMIT: usize = 1 << 16;

/// A cochain `G^d → M` as a full table; the tuple `(g₁,…,g_d)` sits at
/// index `Σ gᵢ·|G|^{d−i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<GroupElement>,
}

pub(crate) fn tuple_index(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &g| acc * n + g)
}

pub(crate) fn index_tuple(n: usize, d: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; d];
    for k in (0..d).rev() {
        t[k] = idx % n;
        idx /= n;
    }
    t
}

impl Cochain {
    pub fn zero(m: &GModule, degree: usize) -> Self {
        let n = m.group().order();
        Cochain {
            degree,
            values: vec![m.module().zero(); n.pow(degree as u32)],
        }
    }

    pub fn at(&self, n: usize, t: &[usize]) -> &GroupElement {
        &self.values[tuple_index(n, t)]
    }

    /// Vanishes whenever some argument is the identity.
    pub fn is_normalized(&self, n: usize) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, v)| v.is_zero() || !index_tuple(n, self.degree, i).contains(&0))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, m: &GModule, other: &Cochain) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| m.module().add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, m: &GModule, k: i64) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self.values.iter().map(|a| m.module().scale(k, a)).collect(),
        }
    }
}

/// `(δf)(g₁,…,g_{d+1}) = g₁·f(g₂,…) + Σ (−1)ⁱ f(…,gᵢg_{i+1},…) + (−1)^{d+1} f(g₁,…,g_d)`
/// evaluated directly on the full table.
pub fn coboundary(m: &GModule, f: &Cochain) -> Cochain {
    let n = m.group().order();
    let d = f.degree;
    let grp = m.module();
    let values = (0..n.pow(d as u32 + 1))
        .map(|idx| {
            let t = index_tuple(n, d + 1, idx);
            let mut acc = m.act(t[0], f.at(n, &t[1..]));
            for i in 1..=d {
                let mut s: Vec<usize> = t[..i - 1].to_vec();
                s.push(m.group().mul(t[i - 1], t[i]));
                s.extend_from_slice(&t[i + 1..]);
                let v = f.at(n, &s);
                acc = if i % 2 == 1 { grp.sub(&acc, v) } else { grp.add(&acc, v) };
            }
            let last = f.at(n, &t[..d]);
            if (d + 1) % 2 == 1 {
                grp.sub(&acc, last)
            } else {
                grp.add(&acc, last)
            }
        })
        .collect();
    Cochain {
        degree: d + 1,
        values,
    }
}

/// The coordinates of `M` on which the p-part lives, with exponents and the
/// idempotents used to move between `ℤ/mᵢ` and `ℤ/p^{eᵢ}`.
#[derive(Debug, Clone)]
pub(crate) struct Primary {
    pub ring: LocalRing,
    pub coords: Vec<usize>,
    pub exps: Vec<u32>,
    pub units: Vec<i64>,
}

pub(crate) fn primes_of(mut n: i64) -> Vec<i64> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

fn val_of(mut n: i64, p: i64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub(crate) fn primary_parts(module: &FinAbGroup) -> Vec<Primary> {
    primes_of(module.exponent())
        .into_iter()
        .map(|p| {
            let mut coords = Vec::new();
            let mut exps = Vec::new();
            let mut units = Vec::new();
            for (i, &mi) in module.factors().iter().enumerate() {
                let e = val_of(mi, p);
                if e == 0 {
                    continue;
                }
                let pe = p.pow(e);
                let rest = mi / pe;
                let g = rest.extended_gcd(&pe);
                coords.push(i);
                exps.push(e);
                units.push((rest * g.x).rem_euclid(mi));
            }
            let big = *exps.iter().max().unwrap();
            Primary {
                ring: LocalRing::new(p as u64, big),
                coords,
                exps,
                units,
            }
        })
        .collect()
}

impl Primary {
    /// The block by which an automorphism acts on this component.
    fn block(&self, module: &FinAbGroup, a: &[Vec<i64>]) -> Vec<Vec<u64>> {
        self.coords
            .iter()
            .enumerate()
            .map(|(r, &i)| {
                let pe = (self.ring.p as i64).pow(self.exps[r]);
                self.coords
                    .iter()
                    .enumerate()
                    .map(|(c, &j)| {
                        let x = (a[i][j] as i128 * self.units[c] as i128)
                            .rem_euclid(module.factors()[i] as i128);
                        (x as i64).rem_euclid(pe) as u64
                    })
                    .collect()
            })
            .collect()
    }
}

pub(crate) fn normalized_count(n: usize, d: usize) -> usize {
    (n - 1).pow(d as u32)
}

/// Position of a tuple of non-identity elements among normalized tuples.
pub(crate) fn norm_index(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &g| acc * (n - 1) + g - 1)
}

pub(crate) fn norm_tuple(n: usize, d: usize, idx: usize) -> Vec<usize> {
    index_tuple(n - 1, d, idx).into_iter().map(|g| g + 1).collect()
}

/// `Δ_d : C^d → C^{d+1}` on the primary component, as rows over `ℤ/pᴱ`.
pub(crate) fn delta_matrix(m: &GModule, part: &Primary, d: usize) -> Vec<Vec<u64>> {
    let n = m.group().order();
    let k = part.coords.len();
    let r = &part.ring;
    let rows = normalized_count(n, d + 1) * k;
    let cols = normalized_count(n, d) * k;
    let blocks: Vec<Vec<Vec<u64>>> = (0..n)
        .map(|g| part.block(m.module(), m.acting(g).matrix()))
        .collect();
    let mut a = vec![vec![0u64; cols]; rows];
    for ri in 0..normalized_count(n, d + 1) {
        let t = norm_tuple(n, d + 1, ri);
        let c0 = norm_index(n, &t[1..]);
        let blk = &blocks[t[0]];
        for x in 0..k {
            for y in 0..k {
                let e = &mut a[ri * k + x][c0 * k + y];
                *e = (*e + blk[x][y]) % r.m;
            }
        }
        let mut put = |s: &[usize], sign: bool| {
            let c = norm_index(n, s);
            for x in 0..k {
                let e = &mut a[ri * k + x][c * k + x];
                *e = if sign { (*e + r.m - 1) % r.m } else { (*e + 1) % r.m };
            }
        };
        for i in 1..=d {
            let prod = m.group().mul(t[i - 1], t[i]);
            if prod == 0 {
                continue;
            }
            let mut s: Vec<usize> = t[..i - 1].to_vec();
            s.push(prod);
            s.extend_from_slice(&t[i + 1..]);
            put(&s, i % 2 == 1);
        }
        put(&t[..d], (d + 1) % 2 == 1);
    }
    a
}

fn check_size(m: &GModule, d: usize, caps: &Caps) -> Result<()> {
    let n = m.group().order();
    let size = normalized_count(n, d + 1).saturating_mul(m.module().rank().max(1));
    if size > caps.cochains {
        return Err(Error::cap("cochain coordinates", size, caps.cochains));
    }
    Ok(())
}

/// Expand a normalized local vector into a full table (p-component only).
fn to_cochain(m: &GModule, part: &Primary, d: usize, local: &[u64]) -> Cochain {
    let n = m.group().order();
    let k = part.coords.len();
    let mut out = Cochain::zero(m, d);
    for (idx, v) in out.values.iter_mut().enumerate() {
        let t = index_tuple(n, d, idx);
        if t.contains(&0) {
            continue;
        }
        let ni = norm_index(n, &t);
        let mut c = vec![0i64; m.module().rank()];
        for (s, &i) in part.coords.iter().enumerate() {
            let pe = (part.ring.p as i64).pow(part.exps[s]);
            let x = (local[ni * k + s] as i64).rem_euclid(pe);
            c[i] = (x as i128 * part.units[s] as i128).rem_euclid(m.module().factors()[i] as i128) as i64;
        }
        *v = m.module().element(&c).expect("reduced");
    }
    out
}

/// `H^d(G;M)` from the normalized bar complex.
pub fn cohomology_bar(m: &GModule, d: usize, caps: &Caps) -> Result<CohomologyGroup> {
    check_size(m, d, caps)?;
    let n = m.group().order();
    let mut orders = Vec::new();
    let mut reps = Vec::new();
    let tables = n.checked_pow(d as u32).is_some_and(|s| s <= TABLE_LIMIT);
    for part in primary_parts(m.module()) {
        let k = part.coords.len();
        let here = normalized_count(n, d);
        let ex_here: Vec<u32> = (0..here).flat_map(|_| part.exps.iter().copied()).collect();
        let ex_next: Vec<u32> = (0..normalized_count(n, d + 1))
            .flat_map(|_| part.exps.iter().copied())
            .collect();
        let (prev, prev_cols) = if d == 0 {
            (vec![Vec::new(); here * k], 0)
        } else {
            (delta_matrix(m, &part, d - 1), normalized_count(n, d - 1) * k)
        };
        let delta = delta_matrix(m, &part, d);
        let h = homology(&part.ring, &prev, prev_cols, &delta, &ex_here, &ex_next);
        for (e, rep) in h.exps.iter().zip(&h.reps) {
            orders.push((part.ring.p as i64).pow(*e));
            if tables {
                reps.push(to_cochain(m, &part, d, rep));
            }
        }
    }
    Ok(CohomologyGroup {
        degree: d,
        group: FinAbGroup::from_orders(&orders)?.canonicalize(),
        representatives: tables.then_some(Representatives::Bar(reps)),
        rep_orders: orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::GroupHom;
    use crate::cohomology::SmallGroup;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cochain(m: &GModule, d: usize, rng: &mut ChaCha8Rng) -> Cochain {
        let n = m.group().order();
        let grp = m.module();
        Cochain {
            degree: d,
            values: (0..n.pow(d as u32))
                .map(|_| {
                    let c: Vec<i64> = grp.factors().iter().map(|&f| rng.gen_range(0..f)).collect();
                    grp.element(&c).unwrap()
                })
                .collect(),
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s3: SmallGroup = "S3".parse().unwrap();
        let z3: FinAbGroup = "Z3".parse().unwrap();
        let neg = GroupHom::new(z3.clone(), z3.clone(), vec![vec![-1]]).unwrap();
        // sign action: the 3-cycle acts trivially, the transposition by −1
        let sign = GModule::new(s3, z3.clone(), vec![GroupHom::identity(&z3), neg]).unwrap();
        for (g, lit) in [("Z2", "Z2+Z2:swap"), ("Z4", "Z4+Z4:S"), ("S3", "sign"), ("Z3", "Z6")] {
            let m = if lit == "sign" {
                sign.clone()
            } else {
                GModule::parse(&g.parse().unwrap(), lit).unwrap()
            };
            for d in 0..3 {
                let f = random_cochain(&m, d, &mut rng);
                assert!(coboundary(&m, &coboundary(&m, &f)).is_zero(), "{g} {lit} {d}");
                for part in primary_parts(m.module()) {
                    let a = delta_matrix(&m, &part, d);
                    let b = delta_matrix(&m, &part, d + 1);
                    let r = part.ring;
                    for row in &b {
                        for j in 0..a[0].len().max(1) {
                            if a.is_empty() || a[0].is_empty() {
                                break;
                            }
                            let s = row
                                .iter()
                                .zip(&a)
                                .fold(0, |acc, (&x, arow)| (acc + r.mul(x, arow[j])) % r.m);
                            assert_eq!(s % r.m, 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn small_values() {
        let caps = Caps::default();
        let z2 = SmallGroup::cyclic(2);
        let m = GModule::trivial(z2.clone(), "Z2".parse().unwrap());
        assert_eq!(cohomology_bar(&m, 1, &caps).unwrap().group, "Z2".parse().unwrap());
        let t = SmallGroup::cyclic(1);
        let m = GModule::trivial(t, "Z2+Z3".parse().unwrap());
        for d in 1..4 {
            assert!(cohomology_bar(&m, d, &caps).unwrap().group.is_trivial());
        }
        assert_eq!(cohomology_bar(&m, 0, &caps).unwrap().group, "Z6".parse().unwrap());
        // H²(Z2×Z2; Z2) = Z2³
        let k = GModule::trivial("Z2+Z2".parse().unwrap(), "Z2".parse().unwrap());
        assert_eq!(cohomology_bar(&k, 2, &caps).unwrap().group, "Z2+Z2+Z2".parse().unwrap());
    }

    #[test]
    fn representatives_are_independent_cocycles() {
        let caps = Caps::default();
        let grp: SmallGroup = "Z4".parse().unwrap();
        let m = GModule::trivial(grp, "Z4+Z2".parse().unwrap());
        for d in 1..4 {
            let h = cohomology_bar(&m, d, &caps).unwrap();
            let Some(Representatives::Bar(reps)) = &h.representatives else { panic!() };
            assert_eq!(reps.len(), h.rep_orders.len());
            for (r, &o) in reps.iter().zip(&h.rep_orders) {
                assert!(r.is_normalized(4));
                assert!(coboundary(&m, r).is_zero());
                assert!(!r.is_zero());
                assert!(r.scale(&m, o).is_zero());
            }
        }
    }
}

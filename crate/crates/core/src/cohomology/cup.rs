//! The cup square `α ∪ α` of a 3-cocycle, paired into ℂˣ = ℚ/ℤ.

use num_integer::Integer;
use serde::Serialize;

use super::bar::{
    coboundary, delta_matrix, index_tuple, norm_index, normalized_count, primary_parts, primes_of,
    Cochain, TABLE_LIMIT,
};
use super::gmodule::{GModule, SmallGroup};
use super::local::solve;
use crate::abelian::FinAbGroup;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::forms::Bicharacter;
use crate::qz::Qz;

/// A ℚ/ℤ-valued 6-cochain with a witness of vanishing when one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CupSquare {
    pub values: Vec<Qz>,
    pub vanishes: bool,
    /// A 5-cochain `b` with `δb = α ∪ α`.
    pub witness: Option<Vec<Qz>>,
}

/// Coboundary of a ℚ/ℤ-valued cochain under the trivial action.
pub fn torus_coboundary(g: &SmallGroup, f: &[Qz], d: usize) -> Vec<Qz> {
    let n = g.order();
    let at = |t: &[usize]| f[t.iter().fold(0, |a, &x| a * n + x)];
    (0..n.pow(d as u32 + 1))
        .map(|idx| {
            let t = index_tuple(n, d + 1, idx);
            let mut acc = at(&t[1..]);
            for i in 1..=d {
                let mut s: Vec<usize> = t[..i - 1].to_vec();
                s.push(g.mul(t[i - 1], t[i]));
                s.extend_from_slice(&t[i + 1..]);
                if i % 2 == 1 {
                    acc -= at(&s);
                } else {
                    acc += at(&s);
                }
            }
            if (d + 1) % 2 == 1 {
                acc - at(&t[..d])
            } else {
                acc + at(&t[..d])
            }
        })
        .collect()
}

fn check_invariant(m: &GModule, b: &Bicharacter) -> Result<()> {
    if b.left() != m.module() || b.right() != m.module() {
        return Err(Error::PairingNotInvariant);
    }
    let els: Vec<_> = m.module().elements().collect();
    for g in 0..m.group().order() {
        for x in &els {
            let gx = m.act(g, x);
            for y in &els {
                if b.eval(&gx, &m.act(g, y)) != b.eval(x, y) {
                    return Err(Error::PairingNotInvariant);
                }
            }
        }
    }
    Ok(())
}

/// `(α∪α)(g₁,…,g₆) = b(α(g₁,g₂,g₃), g₁g₂g₃·α(g₄,g₅,g₆))`, and whether it is
/// a coboundary. Vanishing is decided over `ℤ/L|G|` after the inclusion
/// `x ↦ |G|x`, which detects exactly the classes that die in ℚ/ℤ.
pub fn cup_square(
    m: &GModule,
    alpha: &Cochain,
    pairing: &Bicharacter,
    caps: &Caps,
) -> Result<CupSquare> {
    if alpha.degree != 3 {
        return Err(Error::Degree(alpha.degree));
    }
    let g = m.group();
    let n = g.order();
    if n.pow(6) > TABLE_LIMIT {
        return Err(Error::cap("cochain table", n.pow(6), TABLE_LIMIT));
    }
    if !coboundary(m, alpha).is_zero() {
        return Err(Error::NotACocycle);
    }
    check_invariant(m, pairing)?;
    if !alpha.is_normalized(n) {
        return Err(Error::HypothesisViolated("3-cocycle must be normalized".into()));
    }
    let values: Vec<Qz> = (0..n.pow(6))
        .map(|idx| {
            let t = index_tuple(n, 6, idx);
            let h = g.mul(g.mul(t[0], t[1]), t[2]);
            pairing.eval(alpha.at(n, &t[..3]), &m.act(h, alpha.at(n, &t[3..])))
        })
        .collect();
    if values.iter().all(|v| v.is_zero()) {
        return Ok(CupSquare {
            values,
            vanishes: true,
            witness: Some(vec![Qz::ZERO; n.pow(5)]),
        });
    }
    let size = normalized_count(n, 6);
    if size > caps.cochains {
        return Err(Error::cap("cochain coordinates", size, caps.cochains));
    }
    let level = values.iter().fold(1i64, |l, v| l.lcm(&v.den()));
    let modulus = level * n as i64;
    // normalized right-hand side |G|·c in ℤ/L|G|
    let rhs: Vec<i64> = (0..size)
        .map(|i| {
            let t = super::bar::norm_tuple(n, 6, i);
            let v = values[t.iter().fold(0, |a, &x| a * n + x)];
            v.num() * (level / v.den()) * n as i64
        })
        .collect();
    let mut sol = vec![0i64; normalized_count(n, 5)];
    let mut acc_mod = 1i64;
    for p in primes_of(modulus) {
        let pe = {
            let mut q = 1;
            let mut r = modulus;
            while r % p == 0 {
                r /= p;
                q *= p;
            }
            q
        };
        let tm = GModule::trivial(g.clone(), FinAbGroup::cyclic(pe));
        let part = primary_parts(tm.module()).remove(0);
        let a = delta_matrix(&tm, &part, 5);
        let y: Vec<u64> = rhs.iter().map(|&v| part.ring.from_i64(v)).collect();
        let Some(x) = solve(&part.ring, &a, normalized_count(n, 5), &y) else {
            return Ok(CupSquare {
                values,
                vanishes: false,
                witness: None,
            });
        };
        // CRT merge into ℤ/(acc_mod·pe)
        let e = acc_mod.extended_gcd(&pe);
        let big = acc_mod * pe;
        for (s, &xp) in sol.iter_mut().zip(&x) {
            let xp = xp as i128;
            let cur = *s as i128;
            let t = ((xp - cur) * e.x as i128).rem_euclid(pe as i128);
            *s = ((cur + acc_mod as i128 * t).rem_euclid(big as i128)) as i64;
        }
        acc_mod = big;
    }
    let mut witness = vec![Qz::ZERO; n.pow(5)];
    for (idx, w) in witness.iter_mut().enumerate() {
        let t = index_tuple(n, 5, idx);
        if !t.contains(&0) {
            *w = Qz::new(sol[norm_index(n, &t)], modulus);
        }
    }
    if torus_coboundary(g, &witness, 5) != values {
        return Err(Error::Certificate("cup-square witness fails to bound".into()));
    }
    Ok(CupSquare {
        values,
        vanishes: true,
        witness: Some(witness),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cohomology_bar, Representatives};
    use crate::forms::canonical_sigma;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cocycle(m: &GModule, rng: &mut ChaCha8Rng) -> Cochain {
        let caps = Caps::default();
        let n = m.group().order();
        let h = cohomology_bar(m, 3, &caps).unwrap();
        let Some(Representatives::Bar(reps)) = h.representatives else { panic!() };
        let mut alpha = Cochain::zero(m, 3);
        for (r, &o) in reps.iter().zip(&h.rep_orders) {
            alpha = alpha.add(m, &r.scale(m, rng.gen_range(0..o)));
        }
        // plus the coboundary of a random normalized 2-cochain
        let mut beta = Cochain::zero(m, 2);
        for (i, v) in beta.values.iter_mut().enumerate() {
            if !index_tuple(n, 2, i).contains(&0) {
                let c: Vec<i64> = m.module().factors().iter().map(|&f| rng.gen_range(0..f)).collect();
                *v = m.module().element(&c).unwrap();
            }
        }
        alpha.add(m, &coboundary(m, &beta))
    }

    #[test]
    fn zero_cocycle_vanishes() {
        let z2 = SmallGroup::cyclic(2);
        let m = GModule::parse(&z2, "Z2+Z2:swap").unwrap();
        let b = canonical_sigma(&"Z2".parse().unwrap()).alt().unwrap().bicharacter().clone();
        let c = cup_square(&m, &Cochain::zero(&m, 3), &b, &Caps::default()).unwrap();
        assert!(c.vanishes);
    }

    #[test]
    fn cyclic_cup_squares_vanish() {
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a4: FinAbGroup = "Z4".parse().unwrap();
        let sigma = canonical_sigma(&a4);
        let alt = sigma.alt().unwrap().bicharacter().clone();
        for (n, lit, pairing) in [
            (2, "Z2+Z2:swap", canonical_sigma(&"Z2".parse().unwrap()).alt().unwrap().bicharacter().clone()),
            (4, "Z4+Z4", sigma.clone()),
            (4, "Z4+Z4:S", alt.clone()),
        ] {
            let m = GModule::parse(&SmallGroup::cyclic(n), lit).unwrap();
            for _ in 0..3 {
                let alpha = random_cocycle(&m, &mut rng);
                let c = cup_square(&m, &alpha, &pairing, &caps).unwrap();
                assert!(c.vanishes, "{lit}");
                // independent check of the witness
                let w = c.witness.unwrap();
                assert_eq!(torus_coboundary(m.group(), &w, 5), c.values);
            }
        }
        // ς is not invariant under the S action
        let m = GModule::parse(&SmallGroup::cyclic(4), "Z4+Z4:S").unwrap();
        assert_eq!(
            cup_square(&m, &Cochain::zero(&m, 3), &sigma, &caps).unwrap_err(),
            Error::PairingNotInvariant
        );
    }

    #[test]
    fn klein_four_obstruction_detected() {
        // with b(a,c) = a₁c₂/2 the square is α₁∪α₂, and x³·y³ has nonzero
        // Sq¹, so it is not the reduction of an integral class
        let caps = Caps::default();
        let k: SmallGroup = "Z2+Z2".parse().unwrap();
        let m = GModule::trivial(k, "Z2+Z2".parse().unwrap());
        let b = Bicharacter::on(m.module(), vec![vec![Qz::ZERO, Qz::HALF], vec![Qz::ZERO, Qz::ZERO]])
            .unwrap();
        let h = cohomology_bar(&m, 3, &caps).unwrap();
        let Some(Representatives::Bar(reps)) = h.representatives else { panic!() };
        let first = |r: &Cochain| r.values.iter().any(|v| v.coords()[0] != 0);
        let mut seen = Vec::new();
        for r1 in reps.iter().filter(|r| first(r)) {
            for r2 in reps.iter().filter(|r| !first(r)) {
                let c = cup_square(&m, &r1.add(&m, r2), &b, &caps).unwrap();
                if let Some(w) = &c.witness {
                    assert_eq!(&torus_coboundary(m.group(), w, 5), &c.values);
                }
                seen.push(c.vanishes);
            }
        }
        assert_eq!(seen.len(), 16);
        assert!(seen.iter().any(|v| !v) && seen.iter().any(|&v| v), "{seen:?}");
    }

    #[test]
    fn rejects_non_cocycles() {
        let m = GModule::trivial(SmallGroup::cyclic(2), "Z2".parse().unwrap());
        let mut a = Cochain::zero(&m, 3);
        a.values[7] = m.module().element(&[1]).unwrap();
        let b = Bicharacter::on(m.module(), vec![vec![Qz::HALF]]).unwrap();
        // (1,1,1) ↦ 1 is the generator of H³(Z2;Z2), a cocycle
        assert!(cup_square(&m, &a, &b, &Caps::default()).is_ok());
        a.values[6] = m.module().element(&[1]).unwrap();
        assert_eq!(cup_square(&m, &a, &b, &Caps::default()).unwrap_err(), Error::NotACocycle);
    }
}

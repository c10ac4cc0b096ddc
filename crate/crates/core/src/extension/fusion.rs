//! Symbolic fusion rules of the ℤ/4-graded generalization of Tambara-Yamagami.

use serde::Serialize;
use std::fmt;

use crate::abelian::{FinAbGroup, GroupHom};
use crate::forms::QuadraticForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Defect {
    C0,
    D1,
    D2,
    D3,
}

impl Defect {
    pub const ALL: [Defect; 4] = [Defect::C0, Defect::D1, Defect::D2, Defect::D3];

    pub fn degree(self) -> u8 {
        match self {
            Defect::C0 => 0,
            Defect::D1 => 1,
            Defect::D2 => 2,
            Defect::D3 => 3,
        }
    }
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Defect::C0 => "C3(0)",
            Defect::D1 => "D3(1)",
            Defect::D2 => "D3(2)",
            Defect::D3 => "D3(3)",
        })
    }
}

/// TQFT coefficient in front of a fusion outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Coefficient {
    None,
    Vect,
    /// `Vect^{Ωφ̃ᵢ}(A[0])` for the left (`side = 1`) or right (`side = 2`) twist.
    Twisted { side: u8, phi: QuadraticForm },
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::None => f.write_str("1"),
            Coefficient::Vect => f.write_str("Vect(A[0])"),
            Coefficient::Twisted { side, .. } => write!(f, "Vect^(Ωφ{side})(A[0])"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionRow {
    pub left: Defect,
    pub right: Defect,
    pub result: Defect,
    pub coefficient: Coefficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionTable {
    pub a: FinAbGroup,
    pub phi_quad: QuadraticForm,
    pub phi_aut: GroupHom,
    pub rows: Vec<FusionRow>,
}

impl FusionTable {
    pub fn get(&self, l: Defect, r: Defect) -> &FusionRow {
        self.rows
            .iter()
            .find(|row| row.left == l && row.right == r)
            .expect("table is complete")
    }

    /// Every ordered pair appears once and degrees add mod 4.
    pub fn is_consistent(&self) -> bool {
        self.rows.len() == 16
            && Defect::ALL.iter().all(|&l| {
                Defect::ALL.iter().all(|&r| {
                    let rows: Vec<_> = self.rows.iter().filter(|x| x.left == l && x.right == r).collect();
                    rows.len() == 1 && (l.degree() + r.degree()) % 4 == rows[0].result.degree()
                })
            })
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let out = match r.coefficient {
                Coefficient::None => format!("{}", r.result),
                ref c => format!("{c} ⊠ {}", r.result),
            };
            s.push_str(&format!("{} × {} = {}\n", r.left, r.right, out));
        }
        s
    }
}

/// The full 16-row table for `φ = (φ̃, α)`. Mixed rows pairing `D(2)` with
/// `D(1)` or `D(3)` land in the degree the grading forces.
pub fn generalized_ty_fusion_table(a: &FinAbGroup, phi_quad: &QuadraticForm, phi_aut: &GroupHom) -> FusionTable {
    use Defect::*;
    let twisted = |side: u8| {
        if phi_quad == &QuadraticForm::zero(a) {
            Coefficient::Vect
        } else {
            Coefficient::Twisted {
                side,
                phi: phi_quad.clone(),
            }
        }
    };
    let v = || Coefficient::Vect;
    let n = || Coefficient::None;
    let rows = vec![
        (C0, C0, C0, v()),
        (D2, D2, C0, v()),
        (C0, D2, D2, twisted(1)),
        (D2, C0, D2, twisted(2)),
        (D1, D1, D2, n()),
        (D3, D3, D2, n()),
        (D1, D3, C0, n()),
        (D3, D1, C0, n()),
        (C0, D1, D1, v()),
        (D1, C0, D1, v()),
        (C0, D3, D3, v()),
        (D3, C0, D3, v()),
        (D2, D1, D3, v()),
        (D1, D2, D3, v()),
        (D2, D3, D1, v()),
        (D3, D2, D1, v()),
    ]
    .into_iter()
    .map(|(left, right, result, coefficient)| FusionRow {
        left,
        right,
        result,
        coefficient,
    })
    .collect();
    FusionTable {
        a: a.clone(),
        phi_quad: phi_quad.clone(),
        phi_aut: phi_aut.clone(),
        rows,
    }
}

//! JSON interchange: element files, certificates and their re-verification.
//!
//! Every certificate is checked by replaying recorded steps and testing the
//! recorded witnesses directly. Minimality and distinctness claims, which
//! have no finite witness, are re-decided by the triviality tests.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::witt::{
    classes_equal_mod_witt, is_a_trivial, is_trivial_mod_witt, replay, Fingerprint,
    GradedPremetricGroup, GroupStructure, OrderReport, ReductionTrace, SyllepticContext,
    TrivialityCertificate,
};

/// Parses JSON, reporting the position of the first syntax or schema error.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("engine values serialize")
}

/// Reads one element in the interchange format.
pub fn parse_element(text: &str) -> Result<GradedPremetricGroup> {
    from_json(text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderMode {
    Raw,
    ModWitt,
}

/// A self-contained, replayable witness for one verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `object` has the recorded Lagrangian.
    ATrivial {
        object: GradedPremetricGroup,
        certificate: TrivialityCertificate,
    },
    /// `trace.input` is trivial modulo metric groups.
    ModWitt { trace: ReductionTrace },
    /// `[left] = [right]`, raw or modulo metric groups.
    Equal {
        left: GradedPremetricGroup,
        right: GradedPremetricGroup,
        mod_witt: bool,
        trace: ReductionTrace,
    },
    /// `element` has the recorded order.
    Order {
        mode: OrderMode,
        element: GradedPremetricGroup,
        report: OrderReport,
    },
    /// The closure of `generators` is the recorded finite group.
    Structure {
        context: SyllepticContext,
        generators: Vec<GradedPremetricGroup>,
        structure: GroupStructure,
    },
}

fn reject(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::ATrivial { .. } => "a_trivial",
            Certificate::ModWitt { .. } => "mod_witt",
            Certificate::Equal { .. } => "equal",
            Certificate::Order { .. } => "order",
            Certificate::Structure { .. } => "structure",
        }
    }

    pub fn verify(&self, caps: &Caps) -> Result<()> {
        match self {
            Certificate::ATrivial {
                object,
                certificate,
            } => certificate.verify(object),
            Certificate::ModWitt { trace } => trace.verify(caps),
            Certificate::Equal {
                left,
                right,
                mod_witt,
                trace,
            } => {
                if trace.input != left.twisted_product(&right.s_opposite())? {
                    return Err(reject("trace does not start from left times the opposite of right"));
                }
                if !mod_witt {
                    check_raw(trace)?;
                }
                trace.verify(caps)
            }
            Certificate::Order {
                mode,
                element,
                report,
            } => verify_order(*mode, element, report, caps),
            Certificate::Structure {
                context,
                generators,
                structure,
            } => verify_structure(context, generators, structure, caps),
        }
    }
}

fn lower_power_trivial(mode: OrderMode, prod: &GradedPremetricGroup, reduced: &GradedPremetricGroup, caps: &Caps) -> Result<bool> {
    Ok(match mode {
        OrderMode::ModWitt => is_trivial_mod_witt(prod, caps)?.is_some(),
        OrderMode::Raw => is_a_trivial(reduced, caps)?.is_some(),
    })
}

fn is_split(s: &crate::witt::ReductionStep) -> bool {
    matches!(s, crate::witt::ReductionStep::Split { .. })
}

/// A raw verdict uses condensations and a Lagrangian only.
fn check_raw(trace: &ReductionTrace) -> Result<()> {
    if trace.decided_by != crate::witt::Decision::Primary {
        return Err(reject("raw verdicts need a Lagrangian, not a stabilization"));
    }
    if trace.steps.iter().any(is_split) {
        return Err(reject("raw verdicts may not split off metric summands"));
    }
    Ok(())
}

fn verify_order(
    mode: OrderMode,
    x: &GradedPremetricGroup,
    report: &OrderReport,
    caps: &Caps,
) -> Result<()> {
    if report.order != report.powers.len() + 1 {
        return Err(reject("order does not match the number of recorded powers"));
    }
    let mut cur = GradedPremetricGroup::unit(x.context());
    for (k, rec) in report.powers.iter().enumerate() {
        if rec.n != k + 1 {
            return Err(reject(format!("power {} recorded out of sequence", rec.n)));
        }
        let prod = cur.twisted_product(x)?;
        if prod.order() != rec.unreduced_order {
            return Err(reject(format!("power {} has the wrong size", rec.n)));
        }
        let reduced = replay(&prod, &rec.steps, caps)?;
        if reduced != rec.reduced {
            return Err(reject(format!("power {} does not replay", rec.n)));
        }
        if lower_power_trivial(mode, &prod, &reduced, caps)? {
            return Err(reject(format!("power {} is already trivial", rec.n)));
        }
        cur = reduced;
    }
    let last = cur.twisted_product(x)?;
    if report.verdict.input != last {
        return Err(reject("final trace does not start from the last power"));
    }
    if mode == OrderMode::Raw {
        check_raw(&report.verdict)?;
        if report.powers.iter().flat_map(|p| &p.steps).any(is_split) {
            return Err(reject("raw orders may not split off metric summands"));
        }
    }
    report.verdict.verify(caps)
}

fn verify_structure(
    ctx: &SyllepticContext,
    generators: &[GradedPremetricGroup],
    s: &GroupStructure,
    caps: &Caps,
) -> Result<()> {
    let n = s.table.order();
    if s.representatives.len() != n || s.words.len() != n {
        return Err(reject("table, words and representatives disagree in size"));
    }
    if !s.table.is_group() {
        return Err(reject("table is not a group law"));
    }
    if Fingerprint::of(&s.table) != s.fingerprint {
        return Err(reject("fingerprint does not match the table"));
    }
    if s.fingerprint.label().as_deref() != Some(s.label.as_str()) {
        return Err(reject("label does not match the fingerprint"));
    }
    for r in s.representatives.iter().chain(generators) {
        if r.context() != ctx {
            return Err(Error::ContextMismatch);
        }
    }
    let unit = GradedPremetricGroup::unit(ctx);
    if classes_equal_mod_witt(&s.representatives[0], &unit, caps)?.is_none() {
        return Err(reject("class 0 is not the unit"));
    }
    // class of each generator
    let mut gen_class = Vec::new();
    for (gi, g) in generators.iter().enumerate() {
        let c = match s.words.iter().position(|w| w == &[gi]) {
            Some(c) => c,
            None => (0..n)
                .find(|&c| matches!(classes_equal_mod_witt(g, &s.representatives[c], caps), Ok(Some(_))))
                .ok_or_else(|| reject(format!("generator {gi} is in no recorded class")))?,
        };
        if classes_equal_mod_witt(g, &s.representatives[c], caps)?.is_none() {
            return Err(reject(format!("generator {gi} is not in class {c}")));
        }
        gen_class.push(c);
    }
    // words reach their classes through the table
    for (c, w) in s.words.iter().enumerate() {
        if w.iter().any(|&g| g >= generators.len()) {
            return Err(reject("word uses an unknown generator"));
        }
        if w.iter().fold(0, |a, &g| s.table.mul(a, gen_class[g])) != c {
            return Err(reject(format!("word of class {c} lands elsewhere")));
        }
    }
    // right multiplication by generators agrees with the twisted product
    for i in 0..n {
        for (gi, g) in generators.iter().enumerate() {
            let p = s.representatives[i].twisted_product(g)?;
            let t = s.table.mul(i, gen_class[gi]);
            let trace = classes_equal_mod_witt(&p, &s.representatives[t], caps)?
                .ok_or_else(|| reject(format!("class {i} times generator {gi} is not class {t}")))?;
            trace.verify(caps)?;
        }
    }
    // recorded classes are pairwise distinct
    for i in 0..n {
        for j in i + 1..n {
            if classes_equal_mod_witt(&s.representatives[i], &s.representatives[j], caps)?.is_some() {
                return Err(reject(format!("classes {i} and {j} coincide")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::presets::{metric_c, semion_a};
    use crate::witt::{order_mod_witt, order_raw};

    const SEMION: &str = r#"{"context":{"A":"Z2+Z2","s":[["0","1/2"],["0","0"]]},"G":"Z2","f":[[1],[0]],"q":{"gen":["1/4"],"offdiag":[]}}"#;

    #[test]
    fn element_format_round_trip() {
        let x = parse_element(SEMION).unwrap();
        assert_eq!(x, semion_a(false));
        let back: GradedPremetricGroup = from_json(&to_json(&x)).unwrap();
        assert_eq!(back, x);
        let c = metric_c();
        assert_eq!(from_json::<GradedPremetricGroup>(&to_json(&c)).unwrap(), c);
    }

    #[test]
    fn malformed_input_reports_position() {
        let e = parse_element("{\n  \"context\": 3,\n}").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
        // well-formed JSON, ill-formed value: q(1) of order 8 on Z2
        let bad = SEMION.replace("1/4", "1/8");
        assert!(matches!(parse_element(&bad), Err(Error::Parse { .. })));
    }

    #[test]
    fn certificates_round_trip_and_verify() {
        let caps = Caps::default();
        let a = semion_a(false);
        for (mode, report) in [
            (OrderMode::ModWitt, order_mod_witt(&a, &caps).unwrap()),
            (OrderMode::Raw, order_raw(&a, &caps).unwrap()),
        ] {
            let cert = Certificate::Order {
                mode,
                element: a.clone(),
                report,
            };
            let back: Certificate = from_json(&to_json(&cert)).unwrap();
            back.verify(&caps).unwrap();
        }
    }

    #[test]
    fn tampered_certificates_fail() {
        let caps = Caps::default();
        let a = semion_a(false);
        let report = order_mod_witt(&a, &caps).unwrap();
        // claim order 3 by dropping a recorded power
        let mut short = report.clone();
        short.powers.pop();
        short.order -= 1;
        let cert = Certificate::Order {
            mode: OrderMode::ModWitt,
            element: a.clone(),
            report: short,
        };
        assert!(cert.verify(&caps).is_err());
        // a Lagrangian for another object
        let prod = a.twisted_product(&a.s_opposite()).unwrap();
        let certificate = is_a_trivial(&prod, &caps).unwrap().unwrap();
        let wrong = Certificate::ATrivial {
            object: metric_c(),
            certificate: certificate.clone(),
        };
        assert!(wrong.verify(&caps).is_err());
        let right = Certificate::ATrivial {
            object: prod,
            certificate,
        };
        right.verify(&caps).unwrap();
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use tycat_core::cohomology::{
    cohomology_bar, cohomology_cyclic, cohomology_torus_with, CohomologyGroup, GModule, SmallGroup,
    TorusMethod,
};
use tycat_core::extension::{
    classify_extension, enumerate_bimodule_forms, filter_order_four, filter_order_two,
    filter_viable, generalized_ty_fusion_table, twist_orbits, BimoduleForm, Defect,
    ExtensionAction,
};
use tycat_core::io::{from_json, to_json, Certificate, OrderMode};
use tycat_core::verify::{self, CriterionOutcome};
use tycat_core::witt::presets::metric_c;
use tycat_core::witt::{
    classes_equal, classes_equal_mod_witt, graded_isometry, group_structure, order_mod_witt,
    order_raw, reduce_mod_witt, GradedPremetricGroup, OrderReport, ReductionStep,
};
use tycat_core::{Caps, Error, FinAbGroup, GroupHom, QuadraticForm, Qz};

use crate::cli::{
    CohomologyArgs, ElementArg, Filter, FusionArgs, Method, TyClassifyArgs, TyFormsArgs,
};
use crate::config::Settings;

/// What every command produces: a report plus its text rendering.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub engine_version: &'static str,
    pub caps: Caps,
    pub result: Value,
    /// Certificate files written by this run.
    pub certificates: Vec<PathBuf>,
    /// Failed expectations and cross-checks; nonempty means exit 2.
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
    #[serde(skip)]
    pub text: String,
}

pub struct Ctx<'a> {
    pub s: &'a Settings,
    start: Instant,
    certificates: Vec<PathBuf>,
    mismatches: Vec<String>,
    text: String,
}

impl<'a> Ctx<'a> {
    pub fn new(s: &'a Settings) -> Self {
        Ctx {
            s,
            start: Instant::now(),
            certificates: Vec::new(),
            mismatches: Vec::new(),
            text: String::new(),
        }
    }

    fn say(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    fn caps(&self) -> &Caps {
        &self.s.caps
    }

    /// Records an expectation; only consulted under `--verify`.
    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if self.s.verify && got != want {
            self.mismatches.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    /// Writes `cert` under the certificate directory and returns its path.
    fn write_cert(&mut self, name: &str, cert: &Certificate) -> anyhow::Result<PathBuf> {
        fs::create_dir_all(&self.s.cert_dir)?;
        let file: String = name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
            .collect();
        let path = self.s.cert_dir.join(format!("{file}.json"));
        fs::write(&path, to_json(cert) + "\n")?;
        self.certificates.push(path.clone());
        Ok(path)
    }

    pub fn finish(self, scenario: &str, result: Value) -> RunReport {
        RunReport {
            scenario: scenario.into(),
            engine_version: env!("CARGO_PKG_VERSION"),
            caps: self.s.caps.clone(),
            result,
            certificates: self.certificates,
            mismatches: self.mismatches,
            wall_ms: self.s.timings.then(|| self.start.elapsed().as_millis()),
            text: self.text,
        }
    }
}

// ---------------------------------------------------------------- elements

const PRESETS: &[(&str, &str)] = &[
    ("a", include_str!("../presets/a.json")),
    ("a-", include_str!("../presets/a-.json")),
    ("b", include_str!("../presets/b.json")),
    ("b-", include_str!("../presets/b-.json")),
    ("c", include_str!("../presets/c.json")),
    ("c-", include_str!("../presets/c-.json")),
    ("ab", include_str!("../presets/ab.json")),
    ("a2b", include_str!("../presets/a2b.json")),
    ("C", include_str!("../presets/C.json")),
    ("L", include_str!("../presets/L.json")),
    ("z", include_str!("../presets/z.json")),
    ("trivial", include_str!("../presets/trivial.json")),
    ("ab-generators", include_str!("../presets/ab-generators.json")),
];

/// One element or a JSON array of elements.
fn parse_elements(text: &str) -> Result<Vec<GradedPremetricGroup>, Error> {
    if text.trim_start().starts_with('[') {
        from_json(text)
    } else {
        Ok(vec![from_json(text)?])
    }
}

pub fn bundled_preset(name: &str) -> Result<Vec<GradedPremetricGroup>, Error> {
    match PRESETS.iter().find(|(n, _)| *n == name) {
        Some((_, text)) => parse_elements(text),
        None => Err(Error::Parse {
            message: format!(
                "unknown preset {name:?}; known: {}",
                PRESETS.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
            ),
            line: 0,
            column: 0,
        }),
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        message: format!("{}: {e}", path.display()),
        line: 0,
        column: 0,
    })
}

fn parse_file(path: &Path) -> Result<Vec<GradedPremetricGroup>, Error> {
    parse_elements(&read_file(path)?).map_err(|e| match e {
        Error::Parse {
            message,
            line,
            column,
        } => Error::Parse {
            message: format!("{}: {message}", path.display()),
            line,
            column,
        },
        e => e,
    })
}

/// A named list of elements.
struct Item {
    name: String,
    /// Set when the item is a bundled preset.
    preset: Option<String>,
    elements: Vec<GradedPremetricGroup>,
}

fn file_item(path: &Path) -> Result<Item, Error> {
    Ok(Item {
        name: path
            .file_stem()
            .map_or_else(|| "element".into(), |s| s.to_string_lossy().into_owned()),
        preset: None,
        elements: parse_file(path)?,
    })
}

fn preset_item(name: &str) -> Result<Item, Error> {
    Ok(Item {
        name: name.into(),
        preset: Some(name.into()),
        elements: bundled_preset(name)?,
    })
}

fn element_arg(arg: &ElementArg) -> Result<Item, Error> {
    match (&arg.preset, &arg.element) {
        (Some(p), _) => preset_item(p),
        (None, Some(f)) => file_item(f),
        (None, None) => unreachable!("clap requires one of the two"),
    }
}

/// A preset name, a product `x*y` of presets, or a file.
fn loose_item(s: &str) -> Result<Item, Error> {
    let path = Path::new(s);
    if path.exists() || s.ends_with(".json") {
        return file_item(path);
    }
    let mut acc: Option<GradedPremetricGroup> = None;
    for part in s.split('*') {
        let x = single(&bundled_preset(part)?, part)?;
        acc = Some(match acc {
            None => x,
            Some(a) => a.twisted_product(&x)?,
        });
    }
    Ok(Item {
        name: s.into(),
        preset: (!s.contains('*')).then(|| s.into()),
        elements: vec![acc.expect("split yields one part")],
    })
}

fn single(xs: &[GradedPremetricGroup], name: &str) -> Result<GradedPremetricGroup, Error> {
    match xs {
        [x] => Ok(x.clone()),
        _ => Err(Error::InvalidElement(format!(
            "{name} holds {} elements where one is expected",
            xs.len()
        ))),
    }
}

fn coords(c: &[i64]) -> String {
    format!(
        "({})",
        c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    )
}

fn values(q: &QuadraticForm) -> String {
    let v: Vec<String> = q.group().elements().skip(1).map(|x| q.value(&x).to_string()).collect();
    format!("({})", v.join(","))
}

/// `Z2 f=[(1,0)] q=(1/4)`: group, degrees of the generators, values on the
/// nonzero elements.
fn describe(x: &GradedPremetricGroup) -> String {
    let f: Vec<String> = (0..x.group().rank())
        .map(|j| coords(x.grading().column(j).coords()))
        .collect();
    format!("{} f=[{}] q={}", x.group(), f.join(","), values(x.form()))
}

fn is_z(x: &GradedPremetricGroup) -> bool {
    x.context() == metric_c().context() && graded_isometry(x, &metric_c()).is_some()
}

fn step_line(step: &ReductionStep) -> String {
    match step {
        ReductionStep::Condense { subgroup } => {
            format!("condense by a subgroup of order {}", subgroup.order())
        }
        ReductionStep::Split {
            residue, gauss_sum, ..
        } => {
            let name = GradedPremetricGroup::trivially_graded(&tycat_core::witt::SyllepticContext::klein(), residue.form().clone());
            let tag = if is_z(&name) { " [z]" } else { "" };
            format!(
                "split off {} q={}{tag}, Gauss sum {:.6}{:+.6}i",
                residue.group(),
                values(residue.form()),
                gauss_sum[0],
                gauss_sum[1]
            )
        }
    }
}

fn order_trace(ctx: &mut Ctx, label: &str, r: &OrderReport) {
    ctx.say(format!("trace ({label}):"));
    for p in &r.powers {
        let steps: Vec<String> = p.steps.iter().map(step_line).collect();
        ctx.say(format!(
            "  X^{}: |G|={} -> {}{}",
            p.n,
            p.unreduced_order,
            describe(&p.reduced),
            if steps.is_empty() { String::new() } else { format!("; {}", steps.join("; ")) }
        ));
    }
    let v = &r.verdict;
    let mut steps: Vec<String> = v.steps.iter().map(step_line).collect();
    if let tycat_core::witt::Decision::Stabilized { partner } = &v.decided_by {
        steps.push(format!("stabilized by {} q={}", partner.group(), values(partner.form())));
    }
    steps.push(format!("Lagrangian of order {}", v.certificate.lagrangian.order()));
    ctx.say(format!(
        "  X^{}: |G|={} trivial; {}",
        r.order,
        v.input.order(),
        steps.join("; ")
    ));
}

/// Expected (mod Witt, raw) orders of the bundled presets.
fn expected_orders(preset: &str) -> Option<(Option<usize>, Option<usize>)> {
    Some(match preset {
        "a" | "a-" | "b" | "b-" | "c" | "c-" => (Some(4), Some(4)),
        "ab" => (Some(3), None),
        "a2b" => (Some(2), None),
        "trivial" => (Some(1), Some(1)),
        _ => return None,
    })
}

// ---------------------------------------------------------------- witt

pub fn witt_order(ctx: &mut Ctx, arg: &ElementArg) -> anyhow::Result<Value> {
    let item = element_arg(arg)?;
    let x = single(&item.elements, &item.name)?;
    let caps = ctx.caps().clone();
    ctx.say(format!("element {}: {}", item.name, describe(&x)));
    let m = order_mod_witt(&x, &caps)?;
    let r = order_raw(&x, &caps)?;
    ctx.say(format!("order_mod_witt={}, order_raw={}", m.order, r.order));
    order_trace(ctx, "mod Witt", &m);
    order_trace(ctx, "raw", &r);
    // residues of the final power reduced in one pass
    let (_, direct) = reduce_mod_witt(&x.power(m.order)?, &caps)?;
    let named: Vec<String> = direct
        .iter()
        .filter(|s| matches!(s, ReductionStep::Split { .. }))
        .map(step_line)
        .collect();
    if !named.is_empty() {
        ctx.say(format!("X^{} reduced directly: {}", m.order, named.join("; ")));
    }
    let mut paths = Vec::new();
    for (mode, rep) in [(OrderMode::ModWitt, &m), (OrderMode::Raw, &r)] {
        let tag = if mode == OrderMode::Raw { "raw" } else { "mod_witt" };
        let cert = Certificate::Order {
            mode,
            element: x.clone(),
            report: rep.clone(),
        };
        let p = ctx.write_cert(&format!("order-{}-{tag}", item.name), &cert)?;
        ctx.say(format!("certificate ({tag}): {}", p.display()));
        paths.push(p);
    }
    if let Some((em, er)) = item.preset.as_deref().and_then(expected_orders) {
        if let Some(em) = em {
            ctx.expect("order_mod_witt", m.order, em);
        }
        if let Some(er) = er {
            ctx.expect("order_raw", r.order, er);
        }
    }
    Ok(json!({
        "element": item.name,
        "order_mod_witt": m.order,
        "order_raw": r.order,
        "mod_witt_trace": m,
        "raw_trace": r,
        "residues_of_final_power": direct,
    }))
}

pub fn witt_equal(ctx: &mut Ctx, left: &str, right: &str, mod_witt: bool) -> anyhow::Result<Value> {
    let l = loose_item(left)?;
    let r = loose_item(right)?;
    let (x, y) = (single(&l.elements, &l.name)?, single(&r.elements, &r.name)?);
    let caps = ctx.caps().clone();
    let trace = if mod_witt {
        classes_equal_mod_witt(&x, &y, &caps)?
    } else {
        classes_equal(&x, &y, &caps)?
    };
    let mode = if mod_witt { "mod Witt" } else { "raw" };
    let mut cert_path = None;
    match &trace {
        Some(t) => {
            let cert = Certificate::Equal {
                left: x.clone(),
                right: y.clone(),
                mod_witt,
                trace: t.clone(),
            };
            let tag = if mod_witt { "mod_witt" } else { "raw" };
            let p = ctx.write_cert(&format!("equal-{}-{}-{tag}", l.name, r.name), &cert)?;
            ctx.say(format!("[{}] = [{}] ({mode}); certificate: {}", l.name, r.name, p.display()));
            cert_path = Some(p);
        }
        None => ctx.say(format!(
            "[{}] != [{}] ({mode}); exhaustive search found no Lagrangian",
            l.name, r.name
        )),
    }
    Ok(json!({
        "left": l.name,
        "right": r.name,
        "mod_witt": mod_witt,
        "equal": trace.is_some(),
        "certificate": cert_path,
    }))
}

/// Words of length at most two in the six signed generators.
pub fn default_classify_items() -> Vec<String> {
    const LETTERS: [&str; 6] = ["a", "a-", "b", "b-", "c", "c-"];
    let mut out = vec!["trivial".to_string()];
    out.extend(LETTERS.iter().map(|s| s.to_string()));
    for x in LETTERS {
        for y in LETTERS {
            out.push(format!("{x}*{y}"));
        }
    }
    out
}

pub fn witt_classify(ctx: &mut Ctx, items: &[String]) -> anyhow::Result<Value> {
    let items = if items.is_empty() { default_classify_items() } else { items.to_vec() };
    let caps = ctx.caps().clone();
    let mut reps: Vec<(String, GradedPremetricGroup)> = Vec::new();
    let mut members: Vec<Vec<String>> = Vec::new();
    let mut assignment = Vec::new();
    for name in &items {
        let it = loose_item(name)?;
        let x = single(&it.elements, &it.name)?;
        let mut hit = None;
        for (i, (rname, r)) in reps.iter().enumerate() {
            if let Some(t) = classes_equal_mod_witt(&x, r, &caps)? {
                hit = Some((i, rname.clone(), t));
                break;
            }
        }
        let class = match hit {
            Some((i, rname, t)) => {
                let cert = Certificate::Equal {
                    left: x.clone(),
                    right: reps[i].1.clone(),
                    mod_witt: true,
                    trace: t,
                };
                let p = ctx.write_cert(&format!("classify-{}-{rname}", it.name), &cert)?;
                ctx.say(format!("{:<8} class {i:>2} = [{rname}]; certificate: {}", it.name, p.display()));
                members[i].push(it.name.clone());
                i
            }
            None => {
                reps.push((it.name.clone(), x));
                members.push(vec![it.name.clone()]);
                ctx.say(format!("{:<8} class {:>2} (new)", it.name, reps.len() - 1));
                reps.len() - 1
            }
        };
        assignment.push(json!({"item": it.name, "class": class}));
    }
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    let mut classes = Vec::new();
    for (i, (rname, r)) in reps.iter().enumerate() {
        let rep = order_mod_witt(r, &caps)?;
        let p = ctx.write_cert(
            &format!("classify-order-{rname}"),
            &Certificate::Order {
                mode: OrderMode::ModWitt,
                element: r.clone(),
                report: rep.clone(),
            },
        )?;
        *histogram.entry(rep.order).or_default() += 1;
        ctx.say(format!(
            "class {i:>2}: order {} [{}]; certificate: {}",
            rep.order,
            members[i].join(", "),
            p.display()
        ));
        classes.push(json!({"representative": rname, "order": rep.order, "members": members[i]}));
    }
    let h: Vec<String> = histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    ctx.say(format!("{} items, {} classes, order histogram {}", items.len(), reps.len(), h.join(" ")));
    Ok(json!({
        "items": assignment,
        "classes": classes,
        "order_histogram": histogram.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
    }))
}

pub fn witt_group(ctx: &mut Ctx, arg: &ElementArg) -> anyhow::Result<Value> {
    let item = element_arg(arg)?;
    let Some(first) = item.elements.first() else {
        return Err(Error::InvalidElement("no generators".into()).into());
    };
    let context = first.context().clone();
    let caps = ctx.caps().clone();
    let s = group_structure(&context, &item.elements, &caps)?;
    let h: Vec<String> = s.fingerprint.histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    ctx.say(format!("|G|={}, histogram {}, label={}", s.fingerprint.order, h.join(" "), s.label));
    let cert = Certificate::Structure {
        context,
        generators: item.elements.clone(),
        structure: s.clone(),
    };
    let p = ctx.write_cert(&format!("group-{}", item.name), &cert)?;
    ctx.say(format!("certificate: {}", p.display()));
    match item.preset.as_deref() {
        Some("ab-generators") => {
            ctx.expect("|G|", s.fingerprint.order, 24);
            ctx.expect(
                "histogram",
                s.fingerprint.histogram.clone(),
                BTreeMap::from([(1, 1), (2, 9), (3, 8), (4, 6)]),
            );
            ctx.expect("label", s.label.as_str(), "S4");
        }
        Some(p) => {
            if let Some((Some(n), _)) = expected_orders(p) {
                ctx.expect("|G|", s.fingerprint.order, n);
            }
        }
        None => {}
    }
    Ok(json!({
        "generators": item.name,
        "order": s.fingerprint.order,
        "histogram": s.fingerprint.histogram.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
        "label": s.label,
        "abelian": s.fingerprint.abelian,
        "center_order": s.fingerprint.center_order,
        "words": s.words,
        "certificate": p,
    }))
}

pub fn witt_show(ctx: &mut Ctx, arg: &ElementArg) -> anyhow::Result<Value> {
    let item = element_arg(arg)?;
    let v = if item.elements.len() == 1 && item.preset.as_deref() != Some("ab-generators") {
        serde_json::to_value(&item.elements[0])?
    } else {
        serde_json::to_value(&item.elements)?
    };
    ctx.say(serde_json::to_string_pretty(&v)?);
    Ok(v)
}

// ---------------------------------------------------------------- cohomology

/// `0..6` and `0..=6` are both inclusive; `5,6` lists degrees.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>, Error> {
    let bad = || Error::Parse {
        message: format!("bad degree list {s:?}; use 0..6 or 5,6"),
        line: 1,
        column: 1,
    };
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let out: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn cohomology_json(c: &CohomologyGroup) -> Value {
    json!({"degree": c.degree, "group": c.group.to_string(), "factors": c.group.factors()})
}

pub fn cohomology(ctx: &mut Ctx, args: &CohomologyArgs) -> anyhow::Result<Value> {
    let g: SmallGroup = args.group.parse()?;
    let degrees = parse_degrees(&args.degrees)?;
    let caps = ctx.caps().clone();
    let torus = args.module.trim() == "torus";
    let module = if torus { None } else { Some(GModule::parse(&g, &args.module)?) };
    let methods: Vec<Method> = match (args.method, g.cyclic.is_some()) {
        (Method::Auto, true) => vec![Method::Periodic],
        (Method::Auto, false) => vec![Method::Bar],
        (Method::Both, _) => vec![Method::Periodic, Method::Bar],
        (m, _) => vec![m],
    };
    if methods.contains(&Method::Periodic) && g.cyclic.is_none() {
        return Err(Error::HypothesisViolated(format!("periodic resolution needs a cyclic group, not {}", g.label)).into());
    }
    let compute = |m: Method, d: usize| -> Result<Option<CohomologyGroup>, Error> {
        match (&module, m) {
            (None, _) if d == 0 => Ok(None),
            (None, Method::Periodic) => cohomology_torus_with(&g, d, TorusMethod::Periodic, &caps).map(Some),
            (None, _) => cohomology_torus_with(&g, d, TorusMethod::Bar, &caps).map(Some),
            (Some(gm), Method::Periodic) => cohomology_cyclic(gm, d, &caps).map(Some),
            (Some(gm), _) => cohomology_bar(gm, d, &caps).map(Some),
        }
    };
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    for &d in &degrees {
        let results: Vec<Option<CohomologyGroup>> =
            methods.iter().map(|&m| compute(m, d)).collect::<Result<_, _>>()?;
        let first = &results[0];
        if results.iter().any(|r| r.as_ref().map(|c| &c.group) != first.as_ref().map(|c| &c.group)) {
            ctx.mismatches.push(format!("H{d}: periodic and bar resolutions disagree"));
        }
        let name = first.as_ref().map_or_else(|| "C×".to_string(), |c| c.group.to_string());
        cells.push(format!("H{d}={name}"));
        rows.push(first.as_ref().map_or_else(
            || json!({"degree": 0, "group": "C×", "factors": null}),
            cohomology_json,
        ));
        // embedded expectations
        if let (Some(c), Some(n)) = (first, g.cyclic) {
            if torus {
                let want = if d % 2 == 1 { FinAbGroup::cyclic(n as i64) } else { FinAbGroup::trivial() };
                ctx.expect(&format!("H{d}(Z{n};C×)"), c.group.canonicalize(), want.canonicalize());
            } else if n == 2 && args.module.replace(' ', "") == "Z2+Z2:swap" {
                let want = if d == 0 { FinAbGroup::cyclic(2) } else { FinAbGroup::trivial() };
                ctx.expect(&format!("H{d}(Z2;Z2+Z2 swap)"), c.group.clone(), want);
            }
        }
    }
    ctx.say(cells.join(" "));
    let method_names: Vec<&str> = methods
        .iter()
        .map(|m| if *m == Method::Periodic { "periodic" } else { "bar" })
        .collect();
    Ok(json!({
        "group": g.label,
        "module": args.module,
        "methods": method_names,
        "degrees": rows,
    }))
}

// ---------------------------------------------------------------- ty

fn parse_action(s: &str, a: &FinAbGroup) -> Result<ExtensionAction, Error> {
    match s.trim() {
        "swap" => Ok(ExtensionAction::Swap),
        "S-matrix" | "s-matrix" | "S" => Ok(ExtensionAction::SMatrix),
        t => {
            let big = a.direct_sum(a);
            let hom = |m: Vec<Vec<i64>>| GroupHom::new(big.clone(), big.clone(), m);
            // one matrix for every generator, or a list of them
            let v: Value = from_json(t)?;
            let one = serde_json::from_value::<Vec<Vec<i64>>>(v.clone());
            let mats = match one {
                Ok(m) => vec![hom(m)?],
                Err(_) => serde_json::from_value::<Vec<Vec<Vec<i64>>>>(v)
                    .map_err(|e| Error::Parse {
                        message: format!("action: {e}"),
                        line: 1,
                        column: 1,
                    })?
                    .into_iter()
                    .map(hom)
                    .collect::<Result<_, _>>()?,
            };
            Ok(ExtensionAction::Explicit(mats))
        }
    }
}

pub fn ty_classify(ctx: &mut Ctx, args: &TyClassifyArgs) -> anyhow::Result<Value> {
    let a: FinAbGroup = args.a.parse()?;
    let g: SmallGroup = args.g.parse()?;
    let mut action = parse_action(&args.action, &a)?;
    if let ExtensionAction::Explicit(m) = &mut action {
        if m.len() == 1 && g.gens.len() > 1 {
            *m = vec![m[0].clone(); g.gens.len()];
        }
    }
    let r = classify_extension(&g, &a, &action, args.witt_order, ctx.caps())?;
    ctx.say(format!("G={} A={} action={} pairing=evaluation", r.grading_group, r.a, r.action));
    for e in [&r.h3, &r.h4, &r.h5, &r.h6] {
        ctx.say(format!(
            "{:<12} = {}{}",
            e.name,
            e.group.group,
            if e.vanishes { " (vanishes)" } else { "" }
        ));
    }
    for (i, m) in r.generator_actions.iter().enumerate() {
        ctx.say(format!(
            "generator {i}: induced order {}, M^2=-I: {}",
            m.order,
            if m.square_is_minus_identity { "yes" } else { "no" }
        ));
    }
    ctx.say(format!("Witt order (declared): {}", r.witt_order));
    ctx.say(format!("sigma torsor size: {}", r.sigma_torsor_size));
    ctx.say(format!("labels ({}): {}", r.labels.len(), r.labels.join(" ")));
    ctx.say(format!("note: {}", r.note));
    let key = (r.grading_group.as_str(), r.a.to_string(), r.action.as_str());
    match (key.0, key.1.as_str(), key.2) {
        ("Z2", "Z2", "swap") => {
            ctx.expect("H3 vanishes", r.h3.vanishes, true);
            ctx.expect("H4 vanishes", r.h4.vanishes, true);
            ctx.expect("H5", r.h5.group.group.clone(), FinAbGroup::cyclic(2));
            ctx.expect("H6 vanishes", r.h6.vanishes, true);
            ctx.expect("label count", r.labels.len(), 8);
        }
        ("Z4", "Z4", "S-matrix") => {
            ctx.expect("induced order", r.generator_actions[0].order, 4);
            ctx.expect("M^2 = -I", r.generator_actions[0].square_is_minus_identity, true);
            ctx.expect("H6 vanishes", r.h6.vanishes, true);
        }
        _ => {}
    }
    Ok(serde_json::to_value(&r)?)
}

fn form_line(f: &BimoduleForm) -> String {
    let q = f.form();
    let gen: Vec<String> = q.gen_values().iter().map(Qz::to_string).collect();
    let off: Vec<String> = q.offdiag().iter().map(Qz::to_string).collect();
    format!("gen=({}) off=({})", gen.join(","), off.join(","))
}

pub fn ty_forms(ctx: &mut Ctx, args: &TyFormsArgs) -> anyhow::Result<Value> {
    let a: FinAbGroup = args.a.parse()?;
    let caps = ctx.caps().clone();
    let all = enumerate_bimodule_forms(&a, &caps)?;
    let viable = filter_viable(&all);
    let two = filter_order_two(&viable);
    let four = filter_order_four(&viable);
    let orbits = twist_orbits(&two, &a, &caps)?;
    ctx.say(format!(
        "{} / {} viable / {} order-two / {} orbit{}",
        all.len(),
        viable.len(),
        two.len(),
        orbits.len(),
        if orbits.len() == 1 { "" } else { "s" }
    ));
    ctx.say(format!("order-four: {}", four.len()));
    let sizes: Vec<String> = orbits.iter().map(|o| o.orbit_size.to_string()).collect();
    ctx.say(format!("order-two orbit sizes: {}", sizes.join(" ")));
    let listed: &[BimoduleForm] = match args.filter {
        Filter::All => &[],
        Filter::Viable => &viable,
        Filter::Order2 => &two,
        Filter::Order4 => &four,
    };
    for f in listed {
        ctx.say(format!("  {}", form_line(f)));
    }
    if a.to_string() == "Z2" {
        ctx.expect("forms", all.len(), 32);
        ctx.expect("viable", viable.len(), 16);
        ctx.expect("order-two", two.len(), 4);
        ctx.expect("orbits", orbits.len(), 1);
        ctx.expect("orbit size", orbits.first().map(|o| o.orbit_size), Some(4));
    }
    Ok(json!({
        "A": a.to_string(),
        "forms": all.len(),
        "viable": viable.len(),
        "order_two": two.len(),
        "order_four": four.len(),
        "orbits": orbits,
        "listed": listed.iter().map(|f| f.form()).collect::<Vec<_>>(),
    }))
}

// ---------------------------------------------------------------- fusion

fn qz_list(s: &str) -> Result<Vec<Qz>, Error> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse())
        .collect()
}

/// `trivial`, or `;`-separated `q:`, `off:` and `aut:` parts.
pub fn parse_phi(s: &str, a: &FinAbGroup) -> Result<(QuadraticForm, GroupHom), Error> {
    let mut q = QuadraticForm::zero(a);
    let mut aut = GroupHom::identity(a);
    if s.trim() == "trivial" {
        return Ok((q, aut));
    }
    let mut gen = None;
    let mut off = None;
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once(':').ok_or_else(|| Error::Parse {
            message: format!("phi part {part:?} lacks a key"),
            line: 1,
            column: s.find(part).map_or(1, |i| i + 1),
        })?;
        match k.trim() {
            "q" => gen = Some(qz_list(v)?),
            "off" => off = Some(qz_list(v)?),
            "aut" => {
                aut = match v.trim() {
                    "id" => GroupHom::identity(a),
                    "neg" => {
                        let k = a.rank();
                        let m = (0..k)
                            .map(|i| (0..k).map(|j| if i == j { -1 } else { 0 }).collect())
                            .collect();
                        GroupHom::new(a.clone(), a.clone(), m)?
                    }
                    json => GroupHom::new(a.clone(), a.clone(), from_json(json)?)?,
                }
            }
            other => {
                return Err(Error::Parse {
                    message: format!("unknown phi key {other:?}"),
                    line: 1,
                    column: 1,
                })
            }
        }
    }
    if gen.is_some() || off.is_some() {
        let k = a.rank();
        q = QuadraticForm::new(
            a.clone(),
            gen.unwrap_or_else(|| vec![Qz::ZERO; k]),
            off.unwrap_or_else(|| vec![Qz::ZERO; k * k.saturating_sub(1) / 2]),
        )?;
    }
    Ok((q, aut))
}

pub fn fusion_table(ctx: &mut Ctx, args: &FusionArgs) -> anyhow::Result<Value> {
    let a: FinAbGroup = args.a.parse()?;
    let (q, aut) = parse_phi(&args.phi, &a)?;
    let t = generalized_ty_fusion_table(&a, &q, &aut);
    ctx.say(format!("A={a} phi={}", args.phi));
    ctx.text.push_str(&t.render());
    ctx.expect("table consistent", t.is_consistent(), true);
    ctx.expect("D3(1) x D3(3)", t.get(Defect::D1, Defect::D3).result, Defect::C0);
    Ok(serde_json::to_value(&t)?)
}

// ---------------------------------------------------------------- verify-all, check-cert

/// Exit class of a failed criterion run, for the overall status.
pub enum Failure {
    Criterion,
    Error(Error),
}

fn outcome_json(o: &CriterionOutcome, timings: bool, certs: &[PathBuf]) -> Value {
    // budget checks carry elapsed times; keep them out of reproducible output
    let checks: Vec<_> = o
        .checks
        .iter()
        .map(|c| {
            let mut c = c.clone();
            if !timings && c.name.starts_with("within ") {
                c.detail = if c.passed { "met".into() } else { "exceeded".into() };
            }
            c
        })
        .collect();
    let mut v = json!({
        "id": o.id,
        "title": o.title,
        "passed": o.passed(),
        "checks": checks,
        "certificates": certs,
    });
    if timings {
        v["millis"] = json!(o.millis);
    }
    v
}

pub fn verify_all(ctx: &mut Ctx) -> anyhow::Result<(Value, Vec<Failure>)> {
    let caps = ctx.caps().clone();
    let seed = ctx.s.seed;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut certs_2_4: Vec<(String, Certificate)> = Vec::new();
    let mut s4_order = None;
    type Run<'c> = Box<dyn Fn(Option<usize>, &[(String, Certificate)]) -> tycat_core::Result<Vec<CriterionOutcome>> + 'c>;
    let one = |r: tycat_core::Result<CriterionOutcome>| r.map(|o| vec![o]);
    let runs: Vec<(&str, Run)> = vec![
        ("1", Box::new(|_, _| one(verify::criterion_1(&caps)))),
        ("2", Box::new(|_, _| one(verify::criterion_2(&caps)))),
        ("3", Box::new(|_, _| one(verify::criterion_3(&caps)))),
        ("4", Box::new(|_, _| one(verify::criterion_4(&caps)))),
        ("5", Box::new(|n, _| one(verify::criterion_5(&caps, n)))),
        ("6", Box::new(|_, _| one(verify::criterion_6(&caps)))),
        ("7", Box::new(|_, _| one(verify::criterion_7(&caps)))),
        ("8", Box::new(|_, c| verify::criterion_8(seed, c, &caps))),
    ];
    for (id, run) in &runs {
        match run(s4_order, &certs_2_4) {
            Ok(outcomes) => {
                for o in outcomes {
                    if o.id == "2" {
                        s4_order = o.certificates.iter().find_map(|(_, c)| match c {
                            Certificate::Structure { structure, .. } => Some(structure.fingerprint.order),
                            _ => None,
                        });
                    }
                    if matches!(o.id.as_str(), "2" | "3" | "4") {
                        certs_2_4.extend(o.certificates.iter().cloned());
                    }
                    let mut paths = Vec::new();
                    for (k, (name, c)) in o.certificates.iter().enumerate() {
                        paths.push(ctx.write_cert(&format!("verify-{}-{k:02}-{name}", o.id), c)?);
                    }
                    let mut line = format!(
                        "{} {:<3} {}",
                        if o.passed() { "PASS" } else { "FAIL" },
                        o.id,
                        o.title
                    );
                    if ctx.s.timings {
                        line.push_str(&format!(" ({} ms)", o.millis));
                    }
                    ctx.say(line);
                    for c in o.checks.iter().filter(|c| !c.passed) {
                        ctx.say(format!("       failed: {}: {}", c.name, c.detail));
                    }
                    for p in &paths {
                        ctx.say(format!("       certificate: {}", p.display()));
                    }
                    if !o.passed() {
                        failures.push(Failure::Criterion);
                    }
                    rows.push(outcome_json(&o, ctx.s.timings, &paths));
                }
            }
            Err(e) => {
                ctx.say(format!("ERROR {id:<3} {e}"));
                rows.push(json!({"id": id, "passed": false, "error": e.to_string()}));
                failures.push(Failure::Error(e));
            }
        }
    }
    let passed = rows.iter().filter(|r| r["passed"] == json!(true)).count();
    ctx.say(format!("{passed}/{} passed (seed {seed})", rows.len()));
    Ok((json!({"seed": seed, "criteria": rows, "passed": passed, "total": rows.len()}), failures))
}

pub fn check_cert(ctx: &mut Ctx, file: &Path) -> anyhow::Result<Value> {
    let text = read_file(file)?;
    let cert: Certificate = from_json(&text).map_err(|e| match e {
        Error::Parse {
            message,
            line,
            column,
        } => Error::Parse {
            message: format!("{}: {message}", file.display()),
            line,
            column,
        },
        e => e,
    })?;
    cert.verify(ctx.caps())?;
    ctx.say(format!("OK {} certificate {}", cert.kind(), file.display()));
    Ok(json!({"file": file, "kind": cert.kind(), "verified": true}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tycat_core::witt::presets::{preset, PRESET_NAMES};

    #[test]
    fn bundled_presets_match_the_engine() {
        assert_eq!(PRESETS.len(), PRESET_NAMES.len());
        for name in PRESET_NAMES {
            assert_eq!(bundled_preset(name).unwrap(), preset(name).unwrap(), "{name}");
        }
    }

    /// Rewrites the bundled files from the engine's definitions.
    #[test]
    #[ignore]
    fn regenerate_presets() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("presets");
        fs::create_dir_all(&dir).unwrap();
        for name in PRESET_NAMES {
            let xs = preset(name).unwrap();
            let text = if *name == "ab-generators" { to_json(&xs) } else { to_json(&xs[0]) };
            fs::write(dir.join(format!("{name}.json")), text + "\n").unwrap();
        }
    }

    #[test]
    fn degree_lists() {
        assert_eq!(parse_degrees("0..6").unwrap(), (0..=6).collect::<Vec<_>>());
        assert_eq!(parse_degrees("0..=2").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_degrees("5,6").unwrap(), vec![5, 6]);
        assert!(parse_degrees("6..5").is_err());
        assert!(parse_degrees("x").is_err());
    }

    #[test]
    fn phi_literals() {
        let z4: FinAbGroup = "Z4".parse().unwrap();
        let (q, aut) = parse_phi("trivial", &z4).unwrap();
        assert_eq!(q, QuadraticForm::zero(&z4));
        assert!(aut.is_identity());
        let (q, aut) = parse_phi("q:1/8;aut:neg", &z4).unwrap();
        assert_eq!(q.gen_values(), &[Qz::new(1, 8)]);
        assert_eq!(aut.matrix(), &[vec![3]]);
        assert!(parse_phi("q:1/3", &z4).is_err());
        assert!(parse_phi("w:1", &z4).is_err());
    }

    #[test]
    fn default_item_list() {
        let items = default_classify_items();
        assert_eq!(items.len(), 43);
        assert!(loose_item("a*b").is_ok());
        assert!(loose_item("nope").is_err());
    }
}

//! Command execution over a parsed document.
//!
//! Commands run in document order; `as NAME` bindings extend the environment
//! so later commands can reference computed transformations, modifications,
//! hom-2-categories, and limits. Output is line-oriented `key: value`
//! records, one block per command, and the whole run passes iff every
//! command passes.

use crate::diagram;
use crate::dsl::ast::{Command, Document, FunctorPayload, Item};
use crate::limits::{self, Diagram2Functor, LimitResult};
use crate::render::{self, RenderOptions};
use crate::rewrite;
use crate::signature::Signature;
use crate::twofun::check::{check_functor, check_modification, check_transformation};
use crate::twofun::compose::{
    compose_transformations, mediating_modification, vcompose_transformations, PastingOrder,
};
use crate::twofun::data::{ModificationData, TransformationData};
use crate::twofun::two_cat::Finite2Category;
use crate::twofun::world::CatWorld;
use crate::twofun::{SizeGuard, TwoFunError};
use crate::report::ValidationReport;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum RunError {
    #[error("command {index} ({verb}): {message}")]
    CommandFailed {
        index: usize,
        verb: String,
        message: String,
    },
}

/// One executed command's machine-readable record.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub index: usize,
    pub verb: String,
    pub lines: Vec<(String, String)>,
    pub passed: bool,
}

impl CommandOutput {
    pub fn render_text(&self) -> String {
        let mut s = format!("[{}] {}\n", self.index, self.verb);
        for (k, v) in &self.lines {
            let _ = writeln!(s, "{k}: {v}");
        }
        s
    }
}

/// A rendered artifact produced by a `render` command.
#[derive(Debug, Clone)]
pub struct RenderedArtifact {
    pub name: String,
    pub format: crate::dsl::RenderFormat,
    pub content: String,
}

#[derive(Debug, Clone, Default)]
pub struct CommandOutputs {
    pub outputs: Vec<CommandOutput>,
    pub renders: Vec<RenderedArtifact>,
}

impl CommandOutputs {
    pub fn all_passed(&self) -> bool {
        self.outputs.iter().all(|o| o.passed)
    }
}

/// Values bound by commands during a run.
enum Bound {
    Transformation {
        dom: String,
        cod: String,
        data: TransformationData<Finite2Category>,
    },
    Modification {
        dom: String,
        cod: String,
        data: ModificationData<Finite2Category>,
    },
    TwoCategory(Finite2Category),
    Limit {
        result: LimitResult,
        of: String,
    },
}

struct Runner<'a> {
    doc: &'a Document,
    guard: SizeGuard,
    bound: BTreeMap<String, Bound>,
}

/// Execute every command in the document, in order.
pub fn run(doc: &Document) -> CommandOutputs {
    run_with_guard(doc, SizeGuard::from_env())
}

pub fn run_with_guard(doc: &Document, guard: SizeGuard) -> CommandOutputs {
    let mut runner = Runner {
        doc,
        guard,
        bound: BTreeMap::new(),
    };
    let mut outputs = CommandOutputs::default();
    let mut index = 0usize;
    for item in &doc.items {
        if let Item::Command(cmd) = item {
            index += 1;
            let (verb, result) = runner.execute(cmd, index, &mut outputs.renders);
            match result {
                Ok((lines, passed)) => outputs.outputs.push(CommandOutput {
                    index,
                    verb,
                    lines,
                    passed,
                }),
                Err(message) => outputs.outputs.push(CommandOutput {
                    index,
                    verb,
                    lines: vec![("error".to_string(), message)],
                    passed: false,
                }),
            }
        }
    }
    outputs
}

type Lines = Vec<(String, String)>;

fn report_lines(lines: &mut Lines, report: &ValidationReport) {
    lines.push(("violations".to_string(), report.len().to_string()));
    for (i, e) in report.entries().iter().enumerate() {
        lines.push((format!("violation.{i}"), e.to_string()));
    }
    lines.push((
        "result".to_string(),
        if report.is_empty() { "pass" } else { "fail" }.to_string(),
    ));
}

impl<'a> Runner<'a> {
    fn signature(&self, name: &str) -> Result<&'a Signature, String> {
        match self.doc.find(name) {
            Some(Item::Signature { sig, .. }) => Ok(sig),
            _ => Err(format!("no signature named {name}")),
        }
    }

    fn twocat(&self, name: &str) -> Result<Finite2Category, String> {
        match self.doc.find(name) {
            Some(Item::TwoCategory { cat, .. }) => Ok(cat.clone()),
            _ => match self.bound.get(name) {
                Some(Bound::TwoCategory(cat)) => Ok(cat.clone()),
                _ => Err(format!("no 2-category named {name}")),
            },
        }
    }

    /// A transformation plus the names of its domain/codomain 2-categories.
    fn transformation(
        &self,
        name: &str,
    ) -> Result<(String, String, TransformationData<Finite2Category>), String> {
        if let Some(Item::Transformation { src, data, .. }) = self.doc.find(name) {
            let (dom, cod) = match self.doc.find(src) {
                Some(Item::Functor { dom, cod, .. }) => (dom.clone(), cod.clone()),
                _ => return Err(format!("transformation {name} has no source functor")),
            };
            return Ok((dom, cod, data.clone()));
        }
        match self.bound.get(name) {
            Some(Bound::Transformation { dom, cod, data }) => {
                Ok((dom.clone(), cod.clone(), data.clone()))
            }
            _ => Err(format!("no transformation named {name}")),
        }
    }

    fn limit_result(&self, name: &str) -> Result<(&LimitResult, &str), String> {
        match self.bound.get(name) {
            Some(Bound::Limit { result, of }) => Ok((result, of)),
            _ => Err(format!("no limit named {name}")),
        }
    }

    fn diagram_functor(&self, name: &str) -> Result<(String, Diagram2Functor), String> {
        match self.doc.find(name) {
            Some(Item::Functor {
                dom,
                payload: FunctorPayload::Cat(data),
                ..
            }) => {
                let indexing = self.twocat(dom)?;
                Ok((
                    dom.clone(),
                    Diagram2Functor {
                        indexing,
                        value: data.clone(),
                    },
                ))
            }
            _ => Err(format!("no Cat-valued functor named {name}")),
        }
    }

    fn execute(
        &mut self,
        cmd: &Command,
        index: usize,
        renders: &mut Vec<RenderedArtifact>,
    ) -> (String, Result<(Lines, bool), String>) {
        match cmd {
            Command::Check { target } => (format!("check {target}"), self.check(target)),
            Command::Normalize { term } => (format!("normalize {term}"), self.normalize(term)),
            Command::Eq { left, right } => (format!("eq {left} {right}"), self.eq(left, right)),
            Command::Eq3 {
                left,
                right,
                budget,
            } => (
                format!("eq3 {left} {right} budget {budget}"),
                self.eq3(left, right, *budget),
            ),
            Command::Compose {
                left,
                right,
                order,
                bind,
            } => (
                format!("compose {left} {right}"),
                self.compose(left, right, *order, bind.as_deref()),
            ),
            Command::Mediate { left, right, bind } => (
                format!("mediate {left} {right}"),
                self.mediate(left, right, bind.as_deref()),
            ),
            Command::HomCat {
                strength,
                dom,
                cod,
                bind,
            } => (
                format!("homcat {strength} {dom} {cod}"),
                self.homcat(*strength, dom, cod, bind.as_deref()),
            ),
            Command::Limit {
                strength,
                of,
                bind,
            } => (
                format!("limit {strength} {bind} of {of}"),
                self.limit(*strength, of, bind),
            ),
            Command::Certify { limit, apexes } => (
                format!("certify {limit}"),
                self.certify(limit, apexes),
            ),
            Command::Render { target, format } => (
                format!("render {target}"),
                self.render(target, *format, index, renders),
            ),
        }
    }

    fn check(&self, target: &str) -> Result<(Lines, bool), String> {
        let mut lines: Lines = Vec::new();
        let report = match self.doc.find(target) {
            Some(Item::Signature { sig, .. }) => {
                lines.push(("kind".to_string(), "signature".to_string()));
                sig.validate()
            }
            Some(Item::Category { category, .. }) => {
                lines.push(("kind".to_string(), "category".to_string()));
                category.validate()
            }
            Some(Item::CatFunctor { functor, .. }) => {
                lines.push(("kind".to_string(), "catfunctor".to_string()));
                functor.validate()
            }
            Some(Item::CatTrans { trans, .. }) => {
                lines.push(("kind".to_string(), "cattrans".to_string()));
                trans.validate()
            }
            Some(Item::TwoCategory { cat, .. }) => {
                lines.push(("kind".to_string(), "2category".to_string()));
                cat.validate()
            }
            Some(Item::Functor { dom, payload, .. }) => {
                lines.push(("kind".to_string(), "functor".to_string()));
                let dom = self.twocat(dom)?;
                match payload {
                    FunctorPayload::TwoCat(data) => {
                        let cod_name = match self.doc.find(target) {
                            Some(Item::Functor { cod, .. }) => cod.clone(),
                            _ => unreachable!(),
                        };
                        let cod = self.twocat(&cod_name)?;
                        check_functor(&dom, &cod, data)
                    }
                    FunctorPayload::Cat(data) => check_functor(&dom, &CatWorld, data),
                }
            }
            Some(Item::Transformation { .. }) => {
                lines.push(("kind".to_string(), "transformation".to_string()));
                let (dom, cod, data) = self.transformation(target)?;
                let dom = self.twocat(&dom)?;
                let cod = self.twocat(&cod)?;
                check_transformation(&dom, &cod, &data)
            }
            Some(Item::Modification { src, data, .. }) => {
                lines.push(("kind".to_string(), "modification".to_string()));
                let (dom, cod, _) = self.transformation(src)?;
                let dom = self.twocat(&dom)?;
                let cod = self.twocat(&cod)?;
                check_modification(&dom, &cod, data)
            }
            Some(Item::Cone { over, cone, .. }) => {
                lines.push(("kind".to_string(), "cone".to_string()));
                let (_, f) = self.diagram_functor(over)?;
                limits::check_cone(&f, cone)
            }
            Some(Item::Term2 { sig, term, .. }) => {
                lines.push(("kind".to_string(), "term".to_string()));
                let sig = self.signature(sig)?;
                match crate::term::typecheck_term2(sig, term) {
                    Ok((s, t)) => {
                        lines.push(("source".to_string(), s.to_string()));
                        lines.push(("target".to_string(), t.to_string()));
                        ValidationReport::new()
                    }
                    Err(e) => {
                        let mut r = ValidationReport::new();
                        r.add("typecheck", target, e.to_string());
                        r
                    }
                }
            }
            Some(Item::Term3 { sig, term, .. }) => {
                lines.push(("kind".to_string(), "term3".to_string()));
                let sig = self.signature(sig)?;
                match crate::term::typecheck_term3(sig, term) {
                    Ok(_) => ValidationReport::new(),
                    Err(e) => {
                        let mut r = ValidationReport::new();
                        r.add("typecheck", target, e.to_string());
                        r
                    }
                }
            }
            Some(Item::Diagram { sig, diagram, .. }) => {
                lines.push(("kind".to_string(), "diagram".to_string()));
                let sig = self.signature(sig)?;
                match diagram::evaluate2(sig, diagram) {
                    Ok(_) => ValidationReport::new(),
                    Err(e) => {
                        let mut r = ValidationReport::new();
                        r.add("evaluate", target, e.to_string());
                        r
                    }
                }
            }
            Some(Item::Movie { sig, movie, .. }) => {
                lines.push(("kind".to_string(), "movie".to_string()));
                let sig = self.signature(sig)?;
                match diagram::evaluate3(sig, movie) {
                    Ok(_) => ValidationReport::new(),
                    Err(e) => {
                        let mut r = ValidationReport::new();
                        r.add("evaluate", target, e.to_string());
                        r
                    }
                }
            }
            _ => {
                // bound names: re-check computed values
                match self.bound.get(target) {
                    Some(Bound::TwoCategory(cat)) => {
                        lines.push(("kind".to_string(), "2category".to_string()));
                        cat.validate()
                    }
                    Some(Bound::Transformation { dom, cod, data }) => {
                        lines.push(("kind".to_string(), "transformation".to_string()));
                        let dom = self.twocat(dom)?;
                        let cod = self.twocat(cod)?;
                        check_transformation(&dom, &cod, data)
                    }
                    Some(Bound::Modification { dom, cod, data }) => {
                        lines.push(("kind".to_string(), "modification".to_string()));
                        let dom = self.twocat(dom)?;
                        let cod = self.twocat(cod)?;
                        check_modification(&dom, &cod, data)
                    }
                    Some(Bound::Limit { result, of }) => {
                        lines.push(("kind".to_string(), "limit".to_string()));
                        let (_, f) = self.diagram_functor(of)?;
                        let mut r = result.limit.validate();
                        let cone_report = limits::check_cone(&f, &result.cone);
                        if !cone_report.is_empty() {
                            r = cone_report;
                        }
                        r
                    }
                    None => return Err(format!("nothing named {target} to check")),
                }
            }
        };
        report_lines(&mut lines, &report);
        let passed = report.is_empty();
        Ok((lines, passed))
    }

    fn term2(&self, name: &str) -> Result<(&'a Signature, crate::term::Term2), String> {
        match self.doc.find(name) {
            Some(Item::Term2 { sig, term, .. }) => Ok((self.signature(sig)?, term.clone())),
            _ => Err(format!("no 2-term named {name}")),
        }
    }

    fn term3(&self, name: &str) -> Result<(&'a Signature, crate::term::Term3), String> {
        match self.doc.find(name) {
            Some(Item::Term3 { sig, term, .. }) => Ok((self.signature(sig)?, term.clone())),
            _ => Err(format!("no 3-term named {name}")),
        }
    }

    fn normalize(&self, term: &str) -> Result<(Lines, bool), String> {
        let (sig, t) = self.term2(term)?;
        let nf = rewrite::normalize2(sig, &t).map_err(|e| e.to_string())?;
        let mut lines: Lines = vec![
            ("normal_form".to_string(), nf.term.to_string()),
            ("moves".to_string(), nf.certificate.len().to_string()),
        ];
        for (i, mv) in nf.certificate.iter().enumerate() {
            lines.push((format!("move.{i}"), format!("{} @ {}", mv.kind(), mv.at())));
        }
        lines.push(("result".to_string(), "pass".to_string()));
        Ok((lines, true))
    }

    fn eq(&self, left: &str, right: &str) -> Result<(Lines, bool), String> {
        let (sig_l, a) = self.term2(left)?;
        let (_, b) = self.term2(right)?;
        let equal = rewrite::equal2(sig_l, &a, &b).map_err(|e| e.to_string())?;
        Ok((vec![("equal".to_string(), equal.to_string())], true))
    }

    fn eq3(&self, left: &str, right: &str, budget: usize) -> Result<(Lines, bool), String> {
        let (sig_l, a) = self.term3(left)?;
        let (_, b) = self.term3(right)?;
        let outcome = rewrite::equiv3(sig_l, &a, &b, budget).map_err(|e| e.to_string())?;
        let line = match outcome {
            rewrite::Equiv3::Equal => ("equal".to_string(), "true".to_string()),
            rewrite::Equiv3::NotEqualWithin(b) => {
                ("not_equal_within".to_string(), b.to_string())
            }
        };
        Ok((vec![line], true))
    }

    fn compose(
        &mut self,
        left: &str,
        right: &str,
        order: Option<PastingOrder>,
        bind: Option<&str>,
    ) -> Result<(Lines, bool), String> {
        let (ldom, lcod, eta) = self.transformation(left)?;
        let (rdom, rcod, theta) = self.transformation(right)?;
        let mut lines: Lines = Vec::new();
        // vertical when the two transformations share their hom; whiskered
        // across functor composition when the middle 2-category matches
        if ldom == rdom && lcod == rcod && eta.target == theta.source {
            let dom = self.twocat(&ldom)?;
            let cod = self.twocat(&lcod)?;
            let composite = vcompose_transformations(&dom, &cod, &eta, &theta)
                .map_err(|e| e.to_string())?;
            let report = check_transformation(&dom, &cod, &composite);
            lines.push(("mode".to_string(), "vertical".to_string()));
            lines.push(("strength".to_string(), composite.strength.to_string()));
            report_lines(&mut lines, &report);
            let passed = report.is_empty();
            if let Some(b) = bind {
                self.bound.insert(
                    b.to_string(),
                    Bound::Transformation {
                        dom: ldom,
                        cod: lcod,
                        data: composite,
                    },
                );
            }
            Ok((lines, passed))
        } else if lcod == rdom {
            let a = self.twocat(&ldom)?;
            let b = self.twocat(&lcod)?;
            let c = self.twocat(&rcod)?;
            let order = order.unwrap_or(PastingOrder::LeftFirst);
            lines.push(("mode".to_string(), "whiskered".to_string()));
            lines.push(("order".to_string(), order.to_string()));
            match compose_transformations(&a, &b, &c, &eta, &theta, order) {
                Ok(composite) => {
                    let report = check_transformation(&a, &c, &composite);
                    lines.push(("strength".to_string(), composite.strength.to_string()));
                    report_lines(&mut lines, &report);
                    let passed = report.is_empty();
                    if let Some(bname) = bind {
                        self.bound.insert(
                            bname.to_string(),
                            Bound::Transformation {
                                dom: ldom,
                                cod: rcod,
                                data: composite,
                            },
                        );
                    }
                    Ok((lines, passed))
                }
                Err(TwoFunError::CompositeNotCoherent(report)) => {
                    lines.push(("strength".to_string(), "n/a".to_string()));
                    report_lines(&mut lines, &report);
                    Ok((lines, false))
                }
                Err(e) => Err(e.to_string()),
            }
        } else {
            Err("transformations are neither vertically nor whisker-composable".to_string())
        }
    }

    fn mediate(
        &mut self,
        left: &str,
        right: &str,
        bind: Option<&str>,
    ) -> Result<(Lines, bool), String> {
        let (ldom, lcod, eta) = self.transformation(left)?;
        let (rdom, rcod, theta) = self.transformation(right)?;
        if lcod != rdom {
            return Err(format!(
                "mediate needs {left}'s codomain to be {right}'s domain"
            ));
        }
        let a = self.twocat(&ldom)?;
        let b = self.twocat(&lcod)?;
        let c = self.twocat(&rcod)?;
        let m = mediating_modification(&a, &b, &c, &eta, &theta).map_err(|e| e.to_string())?;
        let report = check_modification(&a, &c, &m);
        let identity = m.at.iter().enumerate().all(|(_, &u)| {
            use crate::twofun::world::TwoWorld;
            c.is_id2(&u)
        });
        let invertible = m.at.iter().all(|&u| c.inverse2(u).is_some());
        let mut lines: Lines = vec![
            ("identity".to_string(), identity.to_string()),
            ("invertible".to_string(), invertible.to_string()),
        ];
        report_lines(&mut lines, &report);
        let passed = report.is_empty() && invertible;
        if let Some(bname) = bind {
            self.bound.insert(
                bname.to_string(),
                Bound::Modification {
                    dom: ldom,
                    cod: rcod,
                    data: m,
                },
            );
        }
        Ok((lines, passed))
    }

    fn homcat(
        &mut self,
        strength: crate::twofun::data::Strength,
        dom: &str,
        cod: &str,
        bind: Option<&str>,
    ) -> Result<(Lines, bool), String> {
        let a = self.twocat(dom)?;
        let b = self.twocat(cod)?;
        let hom = crate::twofun::homcat::hom_2category(&a, &b, strength, &self.guard)
            .map_err(|e| e.to_string())?;
        let report = hom.validate();
        let mut lines: Lines = vec![
            ("objects".to_string(), hom.objects.len().to_string()),
            ("cells1".to_string(), hom.cells1.len().to_string()),
            ("cells2".to_string(), hom.cells2.len().to_string()),
        ];
        report_lines(&mut lines, &report);
        let passed = report.is_empty();
        if let Some(bname) = bind {
            self.bound
                .insert(bname.to_string(), Bound::TwoCategory(hom));
        }
        Ok((lines, passed))
    }

    fn limit(
        &mut self,
        strength: crate::twofun::data::Strength,
        of: &str,
        bind: &str,
    ) -> Result<(Lines, bool), String> {
        let (_, f) = self.diagram_functor(of)?;
        let result = limits::limit(&f, strength, &self.guard).map_err(|e| e.to_string())?;
        let cone_report = limits::check_cone(&f, &result.cone);
        let cat_report = result.limit.validate();
        let mut lines: Lines = vec![
            ("objects".to_string(), result.limit.objects.len().to_string()),
            (
                "morphisms".to_string(),
                result.limit.morphisms.len().to_string(),
            ),
            (
                "cone".to_string(),
                if cone_report.is_empty() { "pass" } else { "fail" }.to_string(),
            ),
        ];
        let passed = cone_report.is_empty() && cat_report.is_empty();
        lines.push((
            "result".to_string(),
            if passed { "pass" } else { "fail" }.to_string(),
        ));
        self.bound.insert(
            bind.to_string(),
            Bound::Limit {
                result,
                of: of.to_string(),
            },
        );
        Ok((lines, passed))
    }

    fn certify(&self, limit: &str, apexes: &[String]) -> Result<(Lines, bool), String> {
        let (result, of) = self.limit_result(limit)?;
        let (_, f) = self.diagram_functor(of)?;
        let mut apex_cats = Vec::new();
        for name in apexes {
            let cat = match self.doc.find(name) {
                Some(Item::Category { category, .. }) => category.clone(),
                _ => return Err(format!("no category named {name}")),
            };
            apex_cats.push((name.clone(), cat));
        }
        let report = limits::certify_universal(result, &f, &apex_cats, &self.guard)
            .map_err(|e| e.to_string())?;
        let mut lines: Lines = Vec::new();
        for a in &report.per_apex {
            lines.push((format!("apex.{}.cones", a.apex), a.cone_count.to_string()));
            lines.push((
                format!("apex.{}.functors", a.apex),
                a.functor_count.to_string(),
            ));
            lines.push((
                format!("apex.{}.bijective", a.apex),
                a.object_bijection.to_string(),
            ));
            lines.push((
                format!("apex.{}.fully_faithful", a.apex),
                a.fully_faithful.to_string(),
            ));
        }
        let passed = report.passed();
        lines.push((
            "result".to_string(),
            if passed { "pass" } else { "fail" }.to_string(),
        ));
        Ok((lines, passed))
    }

    fn render(
        &self,
        target: &str,
        format: Option<crate::dsl::RenderFormat>,
        _index: usize,
        renders: &mut Vec<RenderedArtifact>,
    ) -> Result<(Lines, bool), String> {
        let format = format.unwrap_or(crate::dsl::RenderFormat::Svg);
        let opts = RenderOptions {
            format,
            ..RenderOptions::default()
        };
        let (content, wires, vertices, frames) = match self.doc.find(target) {
            Some(Item::Diagram { sig, diagram, .. }) => {
                let sig = self.signature(sig)?;
                let content = render::render2(sig, diagram, &opts).map_err(|e| e.to_string())?;
                (content, diagram.top.len(), diagram.slices.len(), 1)
            }
            Some(Item::Movie { sig, movie, .. }) => {
                let sig = self.signature(sig)?;
                let content =
                    render::render_movie(sig, movie, &opts).map_err(|e| e.to_string())?;
                let vertices = movie.frames().map(|f| f.slices.len()).sum();
                (content, movie.first.top.len(), vertices, movie.frame_count())
            }
            _ => return Err(format!("nothing named {target} to render")),
        };
        renders.push(RenderedArtifact {
            name: target.to_string(),
            format,
            content,
        });
        let lines: Lines = vec![
            ("format".to_string(), format.to_string()),
            ("top_wires".to_string(), wires.to_string()),
            ("vertices".to_string(), vertices.to_string()),
            ("frames".to_string(), frames.to_string()),
        ];
        Ok((lines, true))
    }
}

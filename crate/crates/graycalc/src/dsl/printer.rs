//! Canonical pretty-printer. `parse(print(d))` is structurally `d`, and
//! printing is deterministic, so the canonical form is a fixpoint after one
//! round trip. Entries that the parser would fill in by default (identity
//! images, identity witnesses, unit-forced composites) are omitted.

use super::ast::{Command, Document, FunctorPayload, Item};
use crate::diagram::MoveDescriptor;
use crate::signature::{Boundary, Signature};
use crate::term::{Move3, Path1, Term3};
use crate::twofun::data::FunctorData;
use crate::twofun::finite_cat::{CatFunctor, CatNatTrans, FiniteCategory};
use crate::twofun::two_cat::Finite2Category;
use crate::twofun::world::{CatWorld, TwoWorld};
use crate::twofun::PastingOrder;
use std::fmt::Write as _;
use std::sync::Arc;

pub fn print(doc: &Document) -> String {
    let mut out = String::from("# graycalc document\n");
    for item in &doc.items {
        out.push('\n');
        print_item(&mut out, doc, item);
    }
    out
}

fn block(out: &mut String, head: &str, entries: &[String]) {
    if entries.is_empty() {
        let _ = writeln!(out, "{head} {{ }}");
        return;
    }
    let _ = writeln!(out, "{head} {{");
    for (i, e) in entries.iter().enumerate() {
        let sep = if i + 1 < entries.len() { " ;" } else { "" };
        let _ = writeln!(out, "  {e}{sep}");
    }
    let _ = writeln!(out, "}}");
}

fn print_item(out: &mut String, doc: &Document, item: &Item) {
    match item {
        Item::Signature { name, sig } => block(out, &format!("signature {name}"), &sig_entries(sig)),
        Item::Term2 { name, sig, term } => {
            let _ = writeln!(out, "term {name} over {sig} = {term}");
        }
        Item::Term3 { name, sig, term } => {
            let _ = writeln!(out, "term3 {name} over {sig} = {}", term3_expr(term));
        }
        Item::Diagram { name, sig, diagram } => {
            let mut entries = Vec::new();
            let top: Vec<String> = diagram
                .top
                .iter()
                .map(|w| w.label.as_str().to_string())
                .collect();
            if diagram.top.is_empty() {
                entries.push(format!("top @ {} :", diagram.start));
            } else {
                entries.push(format!("top : {}", top.join(" ")));
            }
            for s in &diagram.slices {
                entries.push(format!("slice : {} @ {}", s.vertex, s.vertex_position));
            }
            block(out, &format!("diagram {name} over {sig}"), &entries);
        }
        Item::Movie {
            name, sig, first, movie,
        } => {
            let mut entries = vec![format!("first : {first}")];
            for (mv, _) in &movie.steps {
                entries.push(match mv {
                    MoveDescriptor::InterchangeMove { at_slice, direction } => {
                        format!("move : interchange @ {at_slice} {direction}")
                    }
                    MoveDescriptor::VertexMove {
                        gen,
                        at_slice,
                        left_width,
                    } => format!("move : apply {gen} @ {at_slice} offset {left_width}"),
                });
            }
            block(out, &format!("movie {name} over {sig}"), &entries);
        }
        Item::Category { name, category } => {
            block(out, &format!("category {name}"), &category_entries(category));
        }
        Item::CatFunctor {
            name,
            dom,
            cod,
            functor,
        } => {
            let mut entries = Vec::new();
            for (o, &img) in functor.ob.iter().enumerate() {
                entries.push(format!(
                    "ob {} = {}",
                    functor.dom.objects[o], functor.cod.objects[img]
                ));
            }
            for (m, &img) in functor.mor.iter().enumerate() {
                let is_identity = functor.dom.is_identity(m);
                let default = is_identity
                    && img == functor.cod.identity[functor.ob[functor.dom.morphisms[m].src]];
                if !default {
                    entries.push(format!(
                        "mor {} = {}",
                        functor.dom.morphisms[m].name, functor.cod.morphisms[img].name
                    ));
                }
            }
            block(out, &format!("catfunctor {name} : {dom} -> {cod}"), &entries);
        }
        Item::CatTrans {
            name,
            src,
            tgt,
            trans,
        } => {
            let entries: Vec<String> = trans
                .at
                .iter()
                .enumerate()
                .map(|(o, &m)| {
                    format!(
                        "at {} = {}",
                        trans.src.dom.objects[o], trans.src.cod.morphisms[m].name
                    )
                })
                .collect();
            block(out, &format!("cattrans {name} : {src} => {tgt}"), &entries);
        }
        Item::TwoCategory { name, cat } => {
            block(out, &format!("2category {name}"), &twocat_entries(cat));
        }
        Item::Functor {
            name,
            dom,
            cod,
            payload,
        } => {
            let dom_cat = lookup_twocat(doc, dom);
            match payload {
                FunctorPayload::TwoCat(data) => {
                    let cod_cat = lookup_twocat(doc, cod);
                    block(
                        out,
                        &format!("functor {} {name} : {dom} -> {cod}", data.strength),
                        &functor_entries_2cat(dom_cat, cod_cat, data),
                    );
                }
                FunctorPayload::Cat(data) => {
                    block(
                        out,
                        &format!("functor {} {name} : {dom} -> Cat", data.strength),
                        &functor_entries_cat(doc, dom_cat, data),
                    );
                }
            }
        }
        Item::Transformation {
            name,
            src,
            tgt,
            data,
        } => {
            let dom_name = match doc.find(src) {
                Some(Item::Functor { dom, .. }) => dom.clone(),
                _ => String::new(),
            };
            let cod_name = match doc.find(src) {
                Some(Item::Functor { cod, .. }) => cod.clone(),
                _ => String::new(),
            };
            let dom = lookup_twocat(doc, &dom_name);
            let cod = lookup_twocat(doc, &cod_name);
            let mut entries = Vec::new();
            for (x, &c) in data.at.iter().enumerate() {
                entries.push(format!(
                    "at {} = {}",
                    dom.objects[x], cod.cells1[c].name
                ));
            }
            for (fcell, &w) in data.wit.iter().enumerate() {
                let x = dom.one_src(fcell);
                let default = cod
                    .hcomp1
                    .get(&(data.target.one[fcell], data.at[x]))
                    .map(|&c| cod.id2[c]);
                if default != Some(w) {
                    entries.push(format!(
                        "wit {} = {}",
                        dom.cells1[fcell].name, cod.cells2[w].name
                    ));
                }
            }
            block(
                out,
                &format!("transformation {} {name} : {src} => {tgt}", data.strength),
                &entries,
            );
        }
        Item::Modification {
            name,
            src,
            tgt,
            data,
        } => {
            let trans_src_functor = match doc.find(src) {
                Some(Item::Transformation { src: f, .. }) => f.clone(),
                _ => String::new(),
            };
            let (dom_name, cod_name) = match doc.find(&trans_src_functor) {
                Some(Item::Functor { dom, cod, .. }) => (dom.clone(), cod.clone()),
                _ => (String::new(), String::new()),
            };
            let dom = lookup_twocat(doc, &dom_name);
            let cod = lookup_twocat(doc, &cod_name);
            let mut entries = Vec::new();
            for (x, &c) in data.at.iter().enumerate() {
                if c != cod.id2[data.source.at[x]] {
                    entries.push(format!("at {} = {}", dom.objects[x], cod.cells2[c].name));
                }
            }
            block(out, &format!("modification {name} : {src} => {tgt}"), &entries);
        }
        Item::Cone {
            name,
            over,
            apex,
            cone,
        } => {
            let dom_name = match doc.find(over) {
                Some(Item::Functor { dom, .. }) => dom.clone(),
                _ => String::new(),
            };
            let fdata = match doc.find(over) {
                Some(Item::Functor {
                    payload: FunctorPayload::Cat(d),
                    ..
                }) => Some(d),
                _ => None,
            };
            let dom = lookup_twocat(doc, &dom_name);
            let mut entries = Vec::new();
            for (x, leg) in cone.legs.iter().enumerate() {
                entries.push(format!(
                    "at {} = {}",
                    dom.objects[x],
                    cat_one_name(doc, leg)
                ));
            }
            let w = CatWorld;
            for (fcell, cell) in cone.cells.iter().enumerate() {
                let default = fdata.and_then(|d| {
                    let x = dom.one_src(fcell);
                    w.comp1(&d.one[fcell], &cone.legs[x])
                        .map(|c| CatNatTrans::identity(&c))
                });
                if default.as_ref() != Some(cell) {
                    entries.push(format!(
                        "wit {} = {}",
                        dom.cells1[fcell].name,
                        cat_two_name(doc, cell)
                    ));
                }
            }
            block(
                out,
                &format!("cone {} {name} over {over} apex {apex}", cone.strength),
                &entries,
            );
        }
        Item::Command(cmd) => print_command(out, cmd),
    }
}

fn print_command(out: &mut String, cmd: &Command) {
    let line = match cmd {
        Command::Check { target } => format!("check {target}"),
        Command::Normalize { term } => format!("normalize {term}"),
        Command::Eq { left, right } => format!("eq {left} {right}"),
        Command::Eq3 {
            left,
            right,
            budget,
        } => format!("eq3 {left} {right} budget {budget}"),
        Command::Compose {
            left,
            right,
            order,
            bind,
        } => {
            let mut s = format!("compose {left} {right}");
            if let Some(o) = order {
                let _ = write!(s, " {}", match o {
                    PastingOrder::LeftFirst => "leftfirst",
                    PastingOrder::RightFirst => "rightfirst",
                });
            }
            if let Some(b) = bind {
                let _ = write!(s, " as {b}");
            }
            s
        }
        Command::Mediate { left, right, bind } => {
            let mut s = format!("mediate {left} {right}");
            if let Some(b) = bind {
                let _ = write!(s, " as {b}");
            }
            s
        }
        Command::HomCat {
            strength,
            dom,
            cod,
            bind,
        } => {
            let mut s = format!("homcat {strength} {dom} {cod}");
            if let Some(b) = bind {
                let _ = write!(s, " as {b}");
            }
            s
        }
        Command::Limit {
            strength,
            of,
            bind,
        } => format!("limit {strength} {bind} of {of}"),
        Command::Certify { limit, apexes } => {
            format!("certify {limit} with {}", apexes.join(", "))
        }
        Command::Render { target, format } => match format {
            Some(f) => format!("render {target} {f}"),
            None => format!("render {target}"),
        },
    };
    let _ = writeln!(out, "{line}");
}

fn sig_entries(sig: &Signature) -> Vec<String> {
    sig.generators()
        .iter()
        .map(|g| match &g.boundary {
            Boundary::Object => format!("0-cell {}", g.name),
            Boundary::Arrow { src, tgt } => format!("1-cell {} : {src} -> {tgt}", g.name),
            Boundary::Surface { src, tgt } => {
                format!("2-cell {} : {} => {}", g.name, path_expr(src), path_expr(tgt))
            }
            Boundary::Volume { src, tgt } => {
                format!("3-cell {} : {src} -> {tgt}", g.name)
            }
        })
        .collect()
}

fn path_expr(p: &Path1) -> String {
    p.to_string()
}

fn term3_expr(t: &Term3) -> String {
    let mut s = t.source.to_string();
    for mv in &t.moves {
        match mv {
            Move3::Interchanger { direction, .. } => {
                let word = match direction {
                    crate::term::Direction::Forward => "sigma",
                    crate::term::Direction::Backward => "sigma_inv",
                };
                let _ = write!(s, " ; {word}({})", mv.window_start());
            }
            Move3::Gen3 {
                left, core, right, ..
            } => {
                if left.is_identity() && right.is_identity() {
                    let _ = write!(s, " ; apply {core} @ {}", mv.window_start());
                } else {
                    let l = if left.is_identity() {
                        String::new()
                    } else {
                        path_expr(left)
                    };
                    let r = if right.is_identity() {
                        String::new()
                    } else {
                        path_expr(right)
                    };
                    let _ = write!(s, " ; apply {core} @ {} [{l} | {r}]", mv.window_start());
                }
            }
        }
    }
    s
}

fn category_entries(cat: &FiniteCategory) -> Vec<String> {
    let mut entries = vec![format!("objects : {}", cat.objects.join(" "))];
    for (m, mor) in cat.morphisms.iter().enumerate() {
        if !cat.is_identity(m) {
            entries.push(format!(
                "mor {} : {} -> {}",
                mor.name, cat.objects[mor.src], cat.objects[mor.tgt]
            ));
        }
    }
    for (&(g, f), &gf) in &cat.compose {
        if cat.is_identity(g) || cat.is_identity(f) {
            continue;
        }
        entries.push(format!(
            "compose {} . {} = {}",
            cat.morphisms[g].name, cat.morphisms[f].name, cat.morphisms[gf].name
        ));
    }
    entries
}

fn twocat_entries(cat: &Finite2Category) -> Vec<String> {
    let mut entries = vec![format!("objects : {}", cat.objects.join(" "))];
    for (f, c) in cat.cells1.iter().enumerate() {
        if !cat.id1.contains(&f) {
            entries.push(format!(
                "1-cell {} : {} -> {}",
                c.name, cat.objects[c.src], cat.objects[c.tgt]
            ));
        }
    }
    for (u, c) in cat.cells2.iter().enumerate() {
        if !cat.id2.contains(&u) {
            entries.push(format!(
                "2-cell {} : {} => {}",
                c.name, cat.cells1[c.src].name, cat.cells1[c.tgt].name
            ));
        }
    }
    for (&(v, u), &r) in &cat.vcomp {
        if cat.id2.contains(&v) || cat.id2.contains(&u) {
            continue;
        }
        entries.push(format!(
            "vcomp {} . {} = {}",
            cat.cells2[v].name, cat.cells2[u].name, cat.cells2[r].name
        ));
    }
    for (&(g, f), &r) in &cat.hcomp1 {
        if cat.id1.contains(&g) || cat.id1.contains(&f) {
            continue;
        }
        entries.push(format!(
            "hcomp {} * {} = {}",
            cat.cells1[g].name, cat.cells1[f].name, cat.cells1[r].name
        ));
    }
    let id2_on_id1 = |u: usize| {
        cat.id2.contains(&u) && cat.id1.contains(&cat.cells2[u].src)
    };
    for (&(v, u), &r) in &cat.hcomp2 {
        // skip entries the builder derives: whiskers by identity-object
        // identities and identity-by-identity composites
        if id2_on_id1(v) || id2_on_id1(u) || (cat.id2.contains(&v) && cat.id2.contains(&u)) {
            continue;
        }
        entries.push(format!(
            "hcomp2 {} * {} = {}",
            cat.cells2[v].name, cat.cells2[u].name, cat.cells2[r].name
        ));
    }
    entries
}

fn lookup_twocat<'a>(doc: &'a Document, name: &str) -> &'a Finite2Category {
    match doc.find(name) {
        Some(Item::TwoCategory { cat, .. }) => cat,
        _ => panic!("printer: unresolved 2-category {name}"),
    }
}

fn functor_entries_2cat(
    dom: &Finite2Category,
    cod: &Finite2Category,
    data: &FunctorData<Finite2Category>,
) -> Vec<String> {
    let mut entries = Vec::new();
    for (x, &img) in data.ob.iter().enumerate() {
        entries.push(format!("ob {} = {}", dom.objects[x], cod.objects[img]));
    }
    for (f, &img) in data.one.iter().enumerate() {
        let default = if dom.id1.contains(&f) {
            let x = dom.one_src(f);
            Some(cod.id1[data.ob[x]])
        } else {
            None
        };
        if default != Some(img) {
            entries.push(format!("map1 {} = {}", dom.cells1[f].name, cod.cells1[img].name));
        }
    }
    for (u, &img) in data.two.iter().enumerate() {
        let is_id = dom.id2.contains(&u);
        let default = if is_id {
            Some(cod.id2[data.one[dom.cells2[u].src]])
        } else {
            None
        };
        if default != Some(img) {
            entries.push(format!("map2 {} = {}", dom.cells2[u].name, cod.cells2[img].name));
        }
    }
    for (&(g, f), &phi) in &data.comp {
        let default = cod
            .hcomp1
            .get(&(data.one[g], data.one[f]))
            .map(|&c| cod.id2[c])
            .unwrap_or(cod.id2[data.one[g]]);
        if phi != default {
            entries.push(format!(
                "comp ({}, {}) = {}",
                dom.cells1[g].name, dom.cells1[f].name, cod.cells2[phi].name
            ));
        }
    }
    for (x, &u) in data.unit.iter().enumerate() {
        let default = cod.id2[cod.id1[data.ob[x]]];
        if u != default {
            entries.push(format!("unit {} = {}", dom.objects[x], cod.cells2[u].name));
        }
    }
    entries
}

fn name_of_category(doc: &Document, cat: &Arc<FiniteCategory>) -> String {
    for item in &doc.items {
        if let Item::Category { name, category } = item {
            if Arc::ptr_eq(category, cat) || category == cat {
                return name.clone();
            }
        }
    }
    "?category".to_string()
}

fn cat_one_name(doc: &Document, f: &CatFunctor) -> String {
    for item in &doc.items {
        if let Item::CatFunctor { name, functor, .. } = item {
            if functor == f {
                return name.clone();
            }
        }
    }
    if *f == CatFunctor::identity(&f.dom) {
        return format!("id({})", name_of_category(doc, &f.dom));
    }
    "?catfunctor".to_string()
}

fn cat_two_name(doc: &Document, t: &CatNatTrans) -> String {
    for item in &doc.items {
        if let Item::CatTrans { name, trans, .. } = item {
            if trans == t {
                return name.clone();
            }
        }
    }
    if *t == CatNatTrans::identity(&t.src) {
        return format!("id({})", cat_one_name(doc, &t.src));
    }
    "?cattrans".to_string()
}

fn functor_entries_cat(
    doc: &Document,
    dom: &Finite2Category,
    data: &FunctorData<CatWorld>,
) -> Vec<String> {
    let w = CatWorld;
    let mut entries = Vec::new();
    for (x, cat) in data.ob.iter().enumerate() {
        entries.push(format!(
            "ob {} = {}",
            dom.objects[x],
            name_of_category(doc, cat)
        ));
    }
    for (f, img) in data.one.iter().enumerate() {
        let is_id1 = dom.id1.contains(&f);
        let default = if is_id1 {
            let x = dom.one_src(f);
            Some(CatFunctor::identity(&data.ob[x]))
        } else {
            None
        };
        if default.as_ref() != Some(img) {
            entries.push(format!(
                "map1 {} = {}",
                dom.cells1[f].name,
                cat_one_name(doc, img)
            ));
        }
    }
    for (u, img) in data.two.iter().enumerate() {
        let is_id2 = dom.id2.contains(&u);
        let default = if is_id2 {
            Some(CatNatTrans::identity(&data.one[dom.cells2[u].src]))
        } else {
            None
        };
        if default.as_ref() != Some(img) {
            entries.push(format!(
                "map2 {} = {}",
                dom.cells2[u].name,
                cat_two_name(doc, img)
            ));
        }
    }
    for (&(g, f), phi) in &data.comp {
        let default = w
            .comp1(&data.one[g], &data.one[f])
            .map(|c| CatNatTrans::identity(&c));
        if default.as_ref() != Some(phi) {
            entries.push(format!(
                "comp ({}, {}) = {}",
                dom.cells1[g].name,
                dom.cells1[f].name,
                cat_two_name(doc, phi)
            ));
        }
    }
    for (x, u) in data.unit.iter().enumerate() {
        let default = CatNatTrans::identity(&CatFunctor::identity(&data.ob[x]));
        if *u != default {
            entries.push(format!(
                "unit {} = {}",
                dom.objects[x],
                cat_two_name(doc, u)
            ));
        }
    }
    entries
}

//! The line-based text formats.
//!
//! Every format is UTF-8, one directive per line, `#` starts a comment.
//!
//! ```text
//! # lattice or poset
//! elements: 0 a b 1
//! cover: 0 a
//!
//! # propositions
//! states: s1 s2 s3
//! prop p = s1:1 s2:0 s3:0
//! algebra: 0 p 1 ALL_CRISP
//!
//! # automaton
//! inputs: x1 x2
//! states: s1 s2 s3
//! trans: x1 s1 s2
//!
//! # functor
//! functor T upper
//! label x1: p -> q
//! label x1: r -> s1:0 s2:0 s3:1
//!
//! # subposet
//! members: 0 r 1
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use dynlog_core::props::{table_name, Proposition};
use dynlog_core::{
    Automaton, Direction, Elem, Error, Poset, PropositionAlgebra, PropositionSet, StateSet, TransitionFunctor,
    TruthLattice,
};

use crate::error::{CliError, CliResult};

/// Reserved name of the built-in two-element lattice.
pub const BOOL2: &str = "BOOL2";

/// Keyword in an `algebra:` line that expands to every crisp table.
pub const ALL_CRISP: &str = "ALL_CRISP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Lattice,
    Propositions,
    Automaton,
    Functor,
    Subposet,
}

/// Non-empty lines with comments removed, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Splits a line into its keyword and the rest, dropping a `:` right after
/// the keyword.
fn head(line: &str) -> (&str, &str) {
    let end = line
        .find(|c: char| c.is_whitespace() || c == ':')
        .unwrap_or(line.len());
    let rest = line[end..].trim_start();
    let rest = rest.strip_prefix(':').unwrap_or(rest).trim();
    (&line[..end], rest)
}

fn tokens(rest: &str) -> Vec<String> {
    rest.split_whitespace().map(str::to_string).collect()
}

/// Guesses the format of a file from its keywords.
pub fn sniff(text: &str) -> Option<FileKind> {
    let keys: Vec<&str> = lines(text).map(|(_, l)| head(l).0).collect();
    let any = |ks: &[&str]| keys.iter().any(|k| ks.contains(k));
    if any(&["inputs", "trans"]) {
        Some(FileKind::Automaton)
    } else if any(&["functor", "label"]) {
        Some(FileKind::Functor)
    } else if any(&["members"]) {
        Some(FileKind::Subposet)
    } else if any(&["elements", "cover", BOOL2]) {
        Some(FileKind::Lattice)
    } else if any(&["states", "prop", "algebra"]) {
        Some(FileKind::Propositions)
    } else {
        None
    }
}

fn unique(file: &str, line: usize, what: &str, names: &[String]) -> CliResult<()> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(CliError::parse(file, line, format!("duplicate {what} `{n}`")));
        }
    }
    Ok(())
}

/// Splits `name:value` at the last colon.
fn pair<'a>(file: &str, line: usize, token: &'a str) -> CliResult<(&'a str, &'a str)> {
    match token.rsplit_once(':') {
        Some((k, v)) if !k.is_empty() && !v.is_empty() => Ok((k, v)),
        _ => Err(CliError::parse(file, line, format!("expected `state:value`, found `{token}`"))),
    }
}

pub fn parse_poset(file: &str, text: &str) -> CliResult<Poset> {
    let mut builtin = None;
    let mut elements: Option<(usize, Vec<String>)> = None;
    let mut covers: Vec<(usize, String, String)> = Vec::new();
    for (ln, line) in lines(text) {
        match head(line) {
            (BOOL2, "") => builtin = Some(ln),
            ("elements", rest) => {
                if elements.is_some() {
                    return Err(CliError::parse(file, ln, "second `elements:` line"));
                }
                let names = tokens(rest);
                if names.is_empty() {
                    return Err(CliError::parse(file, ln, "no elements"));
                }
                unique(file, ln, "element", &names)?;
                elements = Some((ln, names));
            }
            ("cover", rest) => match tokens(rest).as_slice() {
                [lo, hi] if lo != hi => covers.push((ln, lo.clone(), hi.clone())),
                [_, _] => return Err(CliError::parse(file, ln, "an element cannot cover itself")),
                _ => return Err(CliError::parse(file, ln, "expected `cover: <lo> <hi>`")),
            },
            (key, _) => return Err(CliError::parse(file, ln, format!("unknown directive `{key}`"))),
        }
    }
    if let Some(ln) = builtin {
        if elements.is_some() || !covers.is_empty() {
            return Err(CliError::parse(file, ln, "`BOOL2` cannot be combined with other directives"));
        }
        return Ok(TruthLattice::boolean().poset().clone());
    }
    let Some((eline, names)) = elements else {
        return Err(CliError::parse(file, 1, "missing `elements:` line"));
    };
    for (ln, lo, hi) in &covers {
        for n in [lo, hi] {
            if !names.contains(n) {
                return Err(CliError::invalid(file, Some(*ln), Error::UnknownName(n.clone())));
            }
        }
    }
    let pairs: Vec<(&str, &str)> = covers.iter().map(|(_, a, b)| (a.as_str(), b.as_str())).collect();
    Poset::from_covers(&names, &pairs).map_err(|e| {
        let line = match &e {
            Error::CycleDetected(a, b) => covers
                .iter()
                .find(|(_, lo, hi)| (lo == a && hi == b) || (lo == b && hi == a))
                .map_or(eline, |c| c.0),
            _ => eline,
        };
        CliError::invalid(file, Some(line), e)
    })
}

pub fn parse_lattice(file: &str, text: &str) -> CliResult<TruthLattice> {
    let poset = parse_poset(file, text)?;
    TruthLattice::new(poset).map_err(|e| CliError::invalid(file, None, e))
}

pub fn write_poset(poset: &Poset) -> String {
    let mut out = format!("elements: {}\n", poset.names().join(" "));
    for (lo, hi) in poset.covers() {
        let _ = writeln!(out, "cover: {} {}", poset.name(lo), poset.name(hi));
    }
    out
}

fn parse_states(file: &str, ln: usize, rest: &str) -> CliResult<Arc<StateSet>> {
    StateSet::new(tokens(rest))
        .map(Arc::new)
        .map_err(|e| CliError::invalid(file, Some(ln), e))
}

fn parse_table(
    file: &str,
    ln: usize,
    items: &[&str],
    states: &StateSet,
    lattice: &TruthLattice,
) -> CliResult<Vec<Elem>> {
    let mut values: Vec<Option<Elem>> = vec![None; states.len()];
    for item in items {
        let (s, v) = pair(file, ln, item)?;
        let si = states
            .index_of(s)
            .ok_or_else(|| CliError::invalid(file, Some(ln), Error::UnknownName(s.to_string())))?;
        let e = lattice
            .index_of(v)
            .ok_or_else(|| CliError::invalid(file, Some(ln), Error::UnknownName(v.to_string())))?;
        if values[si].replace(e).is_some() {
            return Err(CliError::parse(file, ln, format!("state `{s}` given twice")));
        }
    }
    values
        .iter()
        .enumerate()
        .map(|(s, v)| v.ok_or_else(|| CliError::parse(file, ln, format!("no value for state `{}`", states.name(s)))))
        .collect()
}

pub fn parse_algebra(file: &str, text: &str, lattice: Arc<TruthLattice>) -> CliResult<PropositionAlgebra> {
    let mut states: Option<Arc<StateSet>> = None;
    let mut props: Vec<(String, Vec<Elem>)> = Vec::new();
    let mut algebra: Option<(usize, Vec<String>)> = None;
    for (ln, line) in lines(text) {
        match head(line) {
            ("states", rest) => {
                if states.is_some() {
                    return Err(CliError::parse(file, ln, "second `states:` line"));
                }
                states = Some(parse_states(file, ln, rest)?);
            }
            ("prop", rest) => {
                let st = states
                    .as_ref()
                    .ok_or_else(|| CliError::parse(file, ln, "`prop` before `states:`"))?;
                let (name, table) = rest
                    .split_once('=')
                    .ok_or_else(|| CliError::parse(file, ln, "expected `prop <name> = <state>:<value> ...`"))?;
                let name = name.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(CliError::parse(file, ln, format!("bad proposition name `{name}`")));
                }
                if props.iter().any(|(n, _)| n == name) {
                    return Err(CliError::parse(file, ln, format!("duplicate proposition `{name}`")));
                }
                let items: Vec<&str> = table.split_whitespace().collect();
                props.push((name.to_string(), parse_table(file, ln, &items, st, &lattice)?));
            }
            ("algebra", rest) => {
                if algebra.is_some() {
                    return Err(CliError::parse(file, ln, "second `algebra:` line"));
                }
                algebra = Some((ln, tokens(rest)));
            }
            (key, _) => return Err(CliError::parse(file, ln, format!("unknown directive `{key}`"))),
        }
    }
    let states = states.ok_or_else(|| CliError::parse(file, 1, "missing `states:` line"))?;
    let (aline, names) = algebra.unwrap_or_else(|| (1, props.iter().map(|(n, _)| n.clone()).collect()));
    let mut members: Vec<(String, Vec<Elem>)> = Vec::new();
    for name in &names {
        if name == ALL_CRISP {
            let n = states.len();
            let all = PropositionAlgebra::all_crisp(lattice.clone(), states.clone())
                .map_err(|e| CliError::invalid(file, Some(aline), e))?;
            for p in all.members() {
                if members.iter().any(|(_, v)| v == p.values()) {
                    continue;
                }
                let label = props
                    .iter()
                    .find(|(m, v)| v == p.values() && !names.contains(m) && !members.iter().any(|(k, _)| k == m))
                    .map_or_else(|| table_name(&lattice, p.values()), |(m, _)| m.clone());
                debug_assert_eq!(p.len(), n);
                members.push((label, p.values().to_vec()));
            }
        } else {
            let (_, v) = props
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| CliError::invalid(file, Some(aline), Error::NotAMember(name.clone())))?;
            members.push((name.clone(), v.clone()));
        }
    }
    PropositionAlgebra::new(lattice, states, members).map_err(|e| CliError::invalid(file, Some(aline), e))
}

fn write_table(out: &mut String, set: &PropositionSet, p: &Proposition) {
    for (s, v) in p.values().iter().enumerate() {
        if s > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{}:{}", set.states().name(s), set.lattice().name(*v));
    }
}

pub fn write_algebra(set: &PropositionSet) -> String {
    let mut out = format!("states: {}\n", set.states().names().join(" "));
    for (name, p) in set.iter() {
        let _ = write!(out, "prop {name} = ");
        write_table(&mut out, set, p);
        out.push('\n');
    }
    let _ = writeln!(out, "algebra: {}", set.names().join(" "));
    out
}

pub fn parse_automaton(file: &str, text: &str) -> CliResult<Automaton> {
    let mut inputs: Option<(usize, Vec<String>)> = None;
    let mut states: Option<(usize, Arc<StateSet>)> = None;
    let mut trans: Vec<(usize, Vec<String>)> = Vec::new();
    for (ln, line) in lines(text) {
        match head(line) {
            ("inputs", rest) => {
                if inputs.is_some() {
                    return Err(CliError::parse(file, ln, "second `inputs:` line"));
                }
                inputs = Some((ln, tokens(rest)));
            }
            ("states", rest) => {
                if states.is_some() {
                    return Err(CliError::parse(file, ln, "second `states:` line"));
                }
                states = Some((ln, parse_states(file, ln, rest)?));
            }
            ("trans", rest) => {
                let t = tokens(rest);
                if t.len() != 3 {
                    return Err(CliError::parse(file, ln, "expected `trans: <input> <from> <to>`"));
                }
                trans.push((ln, t));
            }
            (key @ ("initial" | "final" | "start" | "accept" | "accepting"), _) => {
                return Err(CliError::parse(
                    file,
                    ln,
                    format!("`{key}` is not supported: automata have no initial or final states"),
                ))
            }
            (key, _) => return Err(CliError::parse(file, ln, format!("unknown directive `{key}`"))),
        }
    }
    let (iline, inputs) = inputs.ok_or_else(|| CliError::parse(file, 1, "missing `inputs:` line"))?;
    let (_, states) = states.ok_or_else(|| CliError::parse(file, 1, "missing `states:` line"))?;
    let mut a = Automaton::new(inputs, states.clone()).map_err(|e| CliError::invalid(file, Some(iline), e))?;
    for (ln, t) in trans {
        let x = a
            .input_index(&t[0])
            .ok_or_else(|| CliError::invalid(file, Some(ln), Error::UnknownInput(t[0].clone())))?;
        let state = |name: &str| {
            states
                .index_of(name)
                .ok_or_else(|| CliError::invalid(file, Some(ln), Error::UnknownName(name.to_string())))
        };
        let (s, u) = (state(&t[1])?, state(&t[2])?);
        a.add(x, s, u).map_err(|e| CliError::invalid(file, Some(ln), e))?;
    }
    Ok(a)
}

pub fn write_automaton(a: &Automaton) -> String {
    let mut out = format!(
        "inputs: {}\nstates: {}\n",
        a.inputs().join(" "),
        a.states().names().join(" ")
    );
    for (x, s, t) in a.triples() {
        let _ = writeln!(out, "trans: {} {} {}", a.inputs()[x], a.states().name(s), a.states().name(t));
    }
    out
}

/// Right-hand side of a functor entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    /// A named member of the algebra.
    Member(String),
    /// A raw value table, `(state, value)` in file order.
    Table(Vec<(String, String)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub label: String,
    pub arg: String,
    pub image: Image,
}

/// A functor as written in a file, before it is resolved against an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorDoc {
    pub file: String,
    pub line: usize,
    pub name: String,
    pub direction: Direction,
    pub entries: Vec<Entry>,
}

pub fn parse_functors(file: &str, text: &str) -> CliResult<Vec<FunctorDoc>> {
    let mut docs: Vec<FunctorDoc> = Vec::new();
    for (ln, line) in lines(text) {
        match head(line) {
            ("functor", rest) => {
                let (name, direction) = match tokens(rest).as_slice() {
                    [name, d] if d == "upper" => (name.clone(), Direction::Upper),
                    [name, d] if d == "lower" => (name.clone(), Direction::Lower),
                    _ => return Err(CliError::parse(file, ln, "expected `functor <name> upper|lower`")),
                };
                if docs.iter().any(|d| d.name == name) {
                    return Err(CliError::parse(file, ln, format!("duplicate functor `{name}`")));
                }
                docs.push(FunctorDoc {
                    file: file.to_string(),
                    line: ln,
                    name,
                    direction,
                    entries: Vec::new(),
                });
            }
            ("label", rest) => {
                let doc = docs
                    .last_mut()
                    .ok_or_else(|| CliError::parse(file, ln, "`label` before any `functor` line"))?;
                let bad = || CliError::parse(file, ln, "expected `label <input>: <prop> -> <image>`");
                let (lhs, rhs) = rest.split_once("->").ok_or_else(bad)?;
                let (label, arg) = lhs.trim().rsplit_once(':').ok_or_else(bad)?;
                let (label, arg) = (label.trim(), arg.trim());
                if label.is_empty() || arg.is_empty() || arg.contains(char::is_whitespace) {
                    return Err(bad());
                }
                let items: Vec<&str> = rhs.split_whitespace().collect();
                let image = match items.as_slice() {
                    [] => return Err(bad()),
                    [one] if !one.contains(':') => Image::Member(one.to_string()),
                    _ => Image::Table(
                        items
                            .iter()
                            .map(|t| pair(file, ln, t).map(|(s, v)| (s.to_string(), v.to_string())))
                            .collect::<CliResult<_>>()?,
                    ),
                };
                doc.entries.push(Entry {
                    line: ln,
                    label: label.to_string(),
                    arg: arg.to_string(),
                    image,
                });
            }
            (key, _) => return Err(CliError::parse(file, ln, format!("unknown directive `{key}`"))),
        }
    }
    if docs.is_empty() {
        return Err(CliError::parse(file, 1, "no `functor` line"));
    }
    Ok(docs)
}

impl FunctorDoc {
    /// Labels in order of first appearance.
    pub fn labels(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for e in &self.entries {
            if !out.contains(&e.label) {
                out.push(e.label.clone());
            }
        }
        out
    }

    /// Resolves names against `set`. The domain is `domain` (indices into
    /// `set`) when given, otherwise every member named on a left-hand side,
    /// in the order of `set`.
    pub fn resolve(&self, set: &PropositionSet, domain: Option<&[usize]>) -> CliResult<TransitionFunctor> {
        let file = self.file.as_str();
        let mut args = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let i = set
                .index_of(&e.arg)
                .ok_or_else(|| CliError::invalid(file, Some(e.line), Error::NotAMember(e.arg.clone())))?;
            args.push(i);
        }
        let domain: Vec<usize> = match domain {
            Some(d) => d.to_vec(),
            None => {
                let mut d = args.clone();
                d.sort_unstable();
                d.dedup();
                d
            }
        };
        let labels = self.labels();
        let mut slots: Vec<Vec<Option<Proposition>>> = vec![vec![None; domain.len()]; labels.len()];
        for (e, &i) in self.entries.iter().zip(&args) {
            let x = labels.iter().position(|l| *l == e.label).expect("collected");
            let k = domain.iter().position(|&d| d == i).ok_or_else(|| {
                CliError::parse(file, e.line, format!("`{}` is not in the functor's domain", e.arg))
            })?;
            let image = match &e.image {
                Image::Member(name) => set
                    .index_of(name)
                    .map(|j| set.member(j).clone())
                    .ok_or_else(|| CliError::invalid(file, Some(e.line), Error::NotAMember(name.clone())))?,
                Image::Table(items) => {
                    let items: Vec<String> = items.iter().map(|(s, v)| format!("{s}:{v}")).collect();
                    let items: Vec<&str> = items.iter().map(String::as_str).collect();
                    Proposition::new(parse_table(file, e.line, &items, set.states(), set.lattice())?)
                }
            };
            if slots[x][k].replace(image).is_some() {
                return Err(CliError::parse(
                    file,
                    e.line,
                    format!("second image for `{}` under `{}`", e.arg, e.label),
                ));
            }
        }
        let mut images = Vec::with_capacity(labels.len());
        for (x, row) in slots.into_iter().enumerate() {
            let mut table = Vec::with_capacity(domain.len());
            for (k, p) in row.into_iter().enumerate() {
                table.push(p.ok_or_else(|| {
                    CliError::parse(
                        file,
                        self.line,
                        format!("label `{}` has no image for `{}`", labels[x], set.name(domain[k])),
                    )
                })?);
            }
            images.push(table);
        }
        TransitionFunctor::new(self.direction, set.subset(&domain), labels, images)
            .map_err(|e| CliError::invalid(file, Some(self.line), e))
    }
}

/// Renders a proposition by member name when `names` contains it, otherwise
/// as a `state:value` table.
pub fn image_text(names: &PropositionSet, p: &Proposition) -> String {
    match names.position(p) {
        Some(i) => names.name(i).to_string(),
        None => {
            let mut out = String::new();
            write_table(&mut out, names, p);
            out
        }
    }
}

pub fn write_functor(name: &str, f: &TransitionFunctor, names: &PropositionSet) -> String {
    let mut out = format!("functor {} {}\n", name, f.direction().as_str());
    for (x, label) in f.labels().iter().enumerate() {
        for (i, arg) in f.domain().names().iter().enumerate() {
            let _ = writeln!(out, "label {label}: {arg} -> {}", image_text(names, f.image(x, i)));
        }
    }
    out
}

/// A `members:` list, with the line of each name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberList {
    pub file: String,
    pub names: Vec<(usize, String)>,
}

pub fn parse_members(file: &str, text: &str) -> CliResult<MemberList> {
    let mut names: Vec<(usize, String)> = Vec::new();
    for (ln, line) in lines(text) {
        match head(line) {
            ("members", rest) => {
                for t in rest.split_whitespace() {
                    if names.iter().any(|(_, n)| n == t) {
                        return Err(CliError::parse(file, ln, format!("duplicate member `{t}`")));
                    }
                    names.push((ln, t.to_string()));
                }
            }
            (key, _) => return Err(CliError::parse(file, ln, format!("unknown directive `{key}`"))),
        }
    }
    if names.is_empty() {
        return Err(CliError::parse(file, 1, "no members"));
    }
    Ok(MemberList {
        file: file.to_string(),
        names,
    })
}

impl MemberList {
    /// Indices of the listed members in `set`, in list order.
    pub fn resolve(&self, set: &PropositionSet) -> CliResult<Vec<usize>> {
        self.names
            .iter()
            .map(|(ln, n)| {
                set.index_of(n)
                    .ok_or_else(|| CliError::invalid(&self.file, Some(*ln), Error::NotAMember(n.clone())))
            })
            .collect()
    }
}

pub fn write_members(set: &PropositionSet) -> String {
    format!("members: {}\n", set.names().join(" "))
}

/// Relation pairs as `{(s1,s2),(s2,s1)}`.
pub fn relation_text(states: &StateSet, rel: &dynlog_core::automaton::Relation) -> String {
    let pairs: Vec<String> = rel
        .pairs()
        .map(|(s, t)| format!("({},{})", states.name(s), states.name(t)))
        .collect();
    format!("{{{}}}", pairs.join(","))
}

/// Per-label pair names, for structured reports.
pub fn relation_pairs(states: &StateSet, rel: &dynlog_core::automaton::Relation) -> Vec<[String; 2]> {
    rel.pairs()
        .map(|(s, t)| [states.name(s).to_string(), states.name(t).to_string()])
        .collect()
}

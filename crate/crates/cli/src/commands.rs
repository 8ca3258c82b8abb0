//! One function per subcommand. Each returns the text report, a structured
//! dump and whether the verdict was positive.

use std::fmt::Write as _;
use std::path::PathBuf;

use dynlog_core::dynamics::{check_adjunction, check_inclusion_conditions, check_recovery_witnesses, labelled_functors, recover};
use dynlog_core::synthesis::{synthesize, synthesize_dual};
use dynlog_core::{CanonicalStateSpace, Direction, PropositionSet, SpaceKind, TransitionFunctor, TruthLattice};
use serde_json::{json, Value};

use crate::dot::to_dot;
use crate::error::{CliError, CliResult};
use crate::format::{image_text, relation_pairs, relation_text, write_algebra, write_automaton};
use crate::workspace::{Base, Workspace};

#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// `false` for negative verdicts such as "not recoverable".
    pub ok: bool,
    /// Files to write: path and contents.
    pub files: Vec<(PathBuf, String)>,
}

impl Outcome {
    fn new(text: String, json: Value, ok: bool) -> Outcome {
        Outcome {
            text,
            json,
            ok,
            files: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }

    pub fn write_files(&self) -> CliResult<()> {
        for (path, contents) in &self.files {
            std::fs::write(path, contents).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
    Both,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn symbol(d: Direction) -> &'static str {
    match d {
        Direction::Upper => "T",
        Direction::Lower => "P",
    }
}

fn render_tables(out: &mut String, f: &TransitionFunctor, names: &PropositionSet, sym: &str) -> Value {
    let mut tables = serde_json::Map::new();
    for (x, label) in f.labels().iter().enumerate() {
        let mut rows = Vec::new();
        for (i, arg) in f.domain().names().iter().enumerate() {
            let img = image_text(names, f.image(x, i));
            let _ = writeln!(out, "{sym}_{label}({arg}) = {img}");
            rows.push(json!([arg, img]));
        }
        out.push('\n');
        tables.insert(label.clone(), Value::Array(rows));
    }
    Value::Object(tables)
}

/// `functor`: the tables of `T_R` and/or `P_R` on `B`.
pub fn functor(ws: &Workspace, side: Side) -> CliResult<Outcome> {
    let a = ws.automaton()?;
    let b = ws.algebra()?;
    let (t, p) = labelled_functors(a, b)?;
    let mut text = String::new();
    let mut dump = serde_json::Map::new();
    let mut flags = String::new();
    if side != Side::Lower {
        dump.insert("upper".into(), render_tables(&mut text, &t, b, "T"));
        let closed = t.maps_into(b);
        let _ = writeln!(flags, "T(B) in B: {}", yes(closed));
        dump.insert("upper_closed".into(), json!(closed));
    }
    if side != Side::Upper {
        dump.insert("lower".into(), render_tables(&mut text, &p, b, "P"));
        let closed = p.maps_into(b);
        let _ = writeln!(flags, "P(B) in B: {}", yes(closed));
        dump.insert("lower_closed".into(), json!(closed));
    }
    text.push_str(&flags);
    Ok(Outcome::new(text, Value::Object(dump), true))
}

/// `recover`: compares `R` with `R_{T_R}` and `R^{P_R}` label by label.
pub fn recover_cmd(ws: &Workspace) -> CliResult<Outcome> {
    let a = ws.automaton()?;
    let b = ws.algebra()?;
    let report = recover(a, b)?;
    let states = a.states();
    let mut text = String::new();
    let mut labels = Vec::new();
    let mark = |m: bool| if m { "match" } else { "differs" };
    for l in &report.labels {
        let _ = writeln!(text, "{}", l.label);
        let _ = writeln!(text, "  R   = {}", relation_text(states, &l.original));
        let _ = writeln!(text, "  R_T = {}  {}", relation_text(states, &l.induced_upper), mark(l.upper_matches));
        let _ = writeln!(text, "  R^P = {}  {}", relation_text(states, &l.induced_lower), mark(l.lower_matches));
        labels.push(json!({
            "label": l.label,
            "original": relation_pairs(states, &l.original),
            "induced_upper": relation_pairs(states, &l.induced_upper),
            "induced_lower": relation_pairs(states, &l.induced_lower),
            "upper_matches": l.upper_matches,
            "lower_matches": l.lower_matches,
        }));
    }
    let _ = writeln!(text, "T(B) in B: {}", yes(report.upper_closed));
    let _ = writeln!(text, "P(B) in B: {}", yes(report.lower_closed));
    let _ = writeln!(text, "all crisp tables in B: {}", yes(report.crisp_complete));
    let (up, low) = (report.recoverable_from_upper(), report.recoverable_from_lower());
    let verdict = match (up, low) {
        (true, true) => "recoverable (both sides, all labels)",
        (true, false) => "recoverable (upper side only, all labels)",
        (false, true) => "recoverable (lower side only, all labels)",
        (false, false) => "not recoverable",
    };
    let _ = writeln!(text, "verdict: {verdict}");
    let dump = json!({
        "labels": labels,
        "upper_closed": report.upper_closed,
        "lower_closed": report.lower_closed,
        "crisp_complete": report.crisp_complete,
        "recoverable_from_upper": up,
        "recoverable_from_lower": low,
        "overall": report.overall(),
        "verdict": verdict,
    });
    Ok(Outcome::new(text, dump, up || low))
}

/// `adjoint`: the Galois condition between `P_R` and `T_R`, then the
/// closure flags and inclusions between the induced relations.
pub fn adjoint(ws: &Workspace) -> CliResult<Outcome> {
    let a = ws.automaton()?;
    let b = ws.algebra()?;
    let (t, p) = labelled_functors(a, b)?;
    if let Some(w) = check_adjunction(&p, &t)? {
        let (x, an, bn) = (&t.labels()[w.label], b.name(w.lower), b.name(w.upper));
        let text = format!(
            "adjunction fails for {x}: P({an}) <= {bn} is {} but {an} <= T({bn}) is {}\n",
            w.lower_holds, !w.lower_holds
        );
        let dump = json!({"adjoint": false, "label": x, "a": an, "b": bn, "lower_holds": w.lower_holds});
        return Ok(Outcome::new(text, dump, false));
    }
    let inc = check_inclusion_conditions(&p, &t)?;
    let states = a.states();
    let mut text = String::from("adjunction: P(a) <= b iff a <= T(b) for all a, b in B and every label\n");
    let _ = writeln!(text, "P(B) in B: {}", yes(inc.lower_into_upper_domain));
    let _ = writeln!(text, "T(B) in B: {}", yes(inc.upper_into_lower_domain));
    let _ = writeln!(text, "R_T in R^P: {}", yes(inc.upper_subset_lower));
    let _ = writeln!(text, "R^P in R_T: {}", yes(inc.lower_subset_upper));
    let _ = writeln!(text, "R_T = R^P: {}", yes(inc.equal));
    let mut rels = serde_json::Map::new();
    for (x, label) in t.labels().iter().enumerate() {
        let _ = writeln!(text, "{label}: R_T = {}", relation_text(states, &inc.upper_relations[x]));
        let _ = writeln!(text, "{label}: R^P = {}", relation_text(states, &inc.lower_relations[x]));
        rels.insert(
            label.clone(),
            json!({
                "induced_upper": relation_pairs(states, &inc.upper_relations[x]),
                "induced_lower": relation_pairs(states, &inc.lower_relations[x]),
            }),
        );
    }
    let dump = json!({
        "adjoint": true,
        "lower_into_upper_domain": inc.lower_into_upper_domain,
        "upper_into_lower_domain": inc.upper_into_lower_domain,
        "upper_subset_lower": inc.upper_subset_lower,
        "lower_subset_upper": inc.lower_subset_upper,
        "equal": inc.equal,
        "relations": rels,
    });
    Ok(Outcome::new(text, dump, true))
}

/// `witnesses`: for every non-transition, a member of `B` separating it on
/// each side.
pub fn witnesses(ws: &Workspace) -> CliResult<Outcome> {
    let a = ws.automaton()?;
    let b = ws.algebra()?;
    let states = a.states();
    let mut text = String::new();
    let mut labels = Vec::new();
    let mut all = true;
    for (x, label) in a.inputs().iter().enumerate() {
        let r = check_recovery_witnesses(&a.frame(x), b, b)?;
        all &= r.upper_ok && r.lower_ok;
        let _ = writeln!(text, "{label}");
        let mut sides = serde_json::Map::new();
        for (side, ok, uniform, map) in [
            ("upper", r.upper_ok, r.upper_uniform, &r.upper_witnesses),
            ("lower", r.lower_ok, r.lower_uniform, &r.lower_witnesses),
        ] {
            let _ = writeln!(
                text,
                "  {side}: {} (one witness per {}: {})",
                if ok { "holds" } else { "fails" },
                if side == "upper" { "target" } else { "source" },
                yes(uniform)
            );
            let mut list = Vec::new();
            for s in 0..states.len() {
                for t in 0..states.len() {
                    if a.fibre_relation(x).contains(s, t) {
                        continue;
                    }
                    let (sn, tn) = (states.name(s), states.name(t));
                    match map.get(&(s, t)) {
                        Some(&i) => {
                            let _ = writeln!(text, "    ({sn},{tn}): {}", b.name(i));
                            list.push(json!([sn, tn, b.name(i)]));
                        }
                        None => {
                            let _ = writeln!(text, "    ({sn},{tn}): none");
                            list.push(json!([sn, tn, Value::Null]));
                        }
                    }
                }
            }
            sides.insert(side.into(), json!({"holds": ok, "uniform": uniform, "witnesses": list}));
        }
        sides.insert("label".into(), json!(label));
        labels.push(Value::Object(sides));
    }
    let _ = writeln!(text, "verdict: {}", if all { "conditions hold" } else { "conditions fail" });
    Ok(Outcome::new(text, json!({"labels": labels, "holds": all}), all))
}

fn is_boolean(base: &Base) -> bool {
    base.poset()
        .ok()
        .and_then(|p| TruthLattice::new(p).ok())
        .is_some_and(|l| l.check_boolean().is_ok())
}

/// The canonical space of `B`; Boolean `B` defaults to ultrafilters.
pub fn space(ws: &Workspace, kind: Option<SpaceKind>) -> CliResult<CanonicalStateSpace> {
    let base = ws.base()?;
    let kind = kind.unwrap_or(if is_boolean(base) { SpaceKind::Ultrafilter } else { SpaceKind::DownSet });
    let cap = ws.limits.max_algebra;
    let s = match (base, kind) {
        (Base::Algebra(a), k) => CanonicalStateSpace::for_algebra(a, k, cap)?,
        (Base::Poset(p), SpaceKind::DownSet) => CanonicalStateSpace::down_sets(p, cap)?,
        (Base::Poset(p), SpaceKind::Ultrafilter) => CanonicalStateSpace::ultrafilters(p)?,
    };
    Ok(s)
}

fn space_header(space: &CanonicalStateSpace) -> String {
    format!("# space: {} ({} states)\n", space.kind().as_str(), space.len())
}

/// `enumerate-states`: the canonical states and `B` embedded over them, as
/// a propositions file.
pub fn enumerate_states(ws: &Workspace, kind: Option<SpaceKind>) -> CliResult<Outcome> {
    let space = space(ws, kind)?;
    let base = space.base();
    let mut text = space_header(&space);
    let what = match space.kind() {
        SpaceKind::DownSet => "down-set",
        SpaceKind::Ultrafilter => "ultrafilter",
    };
    let mut states = Vec::new();
    for (s, name) in space.states().names().iter().enumerate() {
        let members: Vec<&str> = space.members(s).into_iter().map(|e| base.name(e)).collect();
        let _ = writeln!(text, "# {name}: {what} {}", members.join(" "));
        states.push(json!({"name": name, "members": members}));
    }
    text.push_str(&write_algebra(space.embedding()));
    let dump = json!({
        "space": space.kind().as_str(),
        "states": states,
        "embedding": space
            .embedding()
            .iter()
            .map(|(n, p)| {
                let row: Vec<&str> = p.values().iter().map(|v| space.embedding().lattice().name(*v)).collect();
                json!([n, row])
            })
            .collect::<Vec<_>>(),
    });
    Ok(Outcome::new(text, dump, true))
}

#[derive(Clone, Debug, Default)]
pub struct SynthesizeOptions {
    pub space: Option<SpaceKind>,
    pub name: Option<String>,
    pub output: Option<PathBuf>,
    pub dot: Option<PathBuf>,
}

/// `synthesize`: builds `(X, S_B, R_T)` from a partial functor on `C` and
/// checks that the induced functor extends it.
pub fn synthesize_cmd(ws: &Workspace, opts: &SynthesizeOptions) -> CliResult<Outcome> {
    let space = space(ws, opts.space)?;
    let c = ws.subposet()?.resolve(space.embedding())?;
    let doc = ws.functor(opts.name.as_deref())?;
    let f = doc.resolve(space.embedding(), Some(&c))?;
    let syn = match f.direction() {
        Direction::Upper => synthesize(&space, &f)?,
        Direction::Lower => synthesize_dual(&space, &f)?,
    };
    let a = &syn.automaton;
    let automaton_text = write_automaton(a);
    let sym = symbol(f.direction());
    let rel = if f.direction() == Direction::Upper { "R_T" } else { "R^P" };
    let check = format!(
        "# extension check: {sym} = {sym}_{{{rel}}} on C ({} members, {} labels): ok\n",
        f.domain().len(),
        f.labels().len()
    );
    let text = format!("{}{automaton_text}{check}", space_header(&space));
    let mut fibres = serde_json::Map::new();
    for (x, label) in a.inputs().iter().enumerate() {
        fibres.insert(label.clone(), json!(relation_pairs(a.states(), a.fibre_relation(x))));
    }
    let dump = json!({
        "space": space.kind().as_str(),
        "states": space.states().names(),
        "domain": f.domain().names(),
        "direction": f.direction().as_str(),
        "fibres": fibres,
        "extension_check": true,
    });
    let mut out = Outcome::new(text, dump, true);
    if let Some(p) = &opts.output {
        out.files.push((p.clone(), automaton_text));
    }
    if let Some(p) = &opts.dot {
        out.files.push((p.clone(), to_dot(a, "synthesized")));
    }
    Ok(out)
}

/// `induce`: the automaton induced by each functor in the functor file.
pub fn induce(ws: &Workspace, output: Option<PathBuf>) -> CliResult<Outcome> {
    let b = ws.algebra()?;
    if ws.functors.is_empty() {
        return Err(CliError::MissingInput("functor (-t)"));
    }
    let domain = ws.subposet.as_ref().map(|m| m.resolve(b)).transpose()?;
    let mut text = String::new();
    let mut dump = serde_json::Map::new();
    let mut last = String::new();
    for doc in &ws.functors {
        let f = doc.resolve(b, domain.as_deref())?;
        let a = f.induced_automaton()?;
        let rel = if f.direction() == Direction::Upper { "R_T" } else { "R^P" };
        let _ = writeln!(
            text,
            "# {rel} of {} ({}, {} members)",
            doc.name,
            f.direction().as_str(),
            f.domain().len()
        );
        last = write_automaton(&a);
        text.push_str(&last);
        let mut fibres = serde_json::Map::new();
        for (x, label) in a.inputs().iter().enumerate() {
            fibres.insert(label.clone(), json!(relation_pairs(a.states(), a.fibre_relation(x))));
        }
        dump.insert(doc.name.clone(), Value::Object(fibres));
    }
    let mut out = Outcome::new(text, Value::Object(dump), true);
    if let Some(p) = output {
        if ws.functors.len() != 1 {
            return Err(CliError::Usage("-o needs a functor file with a single functor".into()));
        }
        out.files.push((p, last));
    }
    Ok(out)
}

/// `render`: DOT for the automaton, to a file or to standard output.
pub fn render(ws: &Workspace, output: Option<PathBuf>) -> CliResult<Outcome> {
    let a = ws.automaton()?;
    let dot = to_dot(a, "automaton");
    let dump = json!({"states": a.states().names(), "inputs": a.inputs(), "transitions": a.triples().count()});
    match output {
        Some(p) => {
            let mut out = Outcome::new(format!("wrote {}\n", p.display()), dump, true);
            out.files.push((p, dot));
            Ok(out)
        }
        None => Ok(Outcome::new(dot, dump, true)),
    }
}

//! Loading and cross-checking the input files of one run.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use dynlog_core::{Automaton, Limits, Poset, PropositionAlgebra, TruthLattice};

use crate::error::{CliError, CliResult, Location};
use crate::format::{self, FileKind, FunctorDoc, MemberList, BOOL2};

/// Paths of the files making up a workspace. `lattice` may be the reserved
/// name `BOOL2` instead of a path.
#[derive(Clone, Debug, Default)]
pub struct Paths {
    pub lattice: Option<String>,
    pub algebra: Option<PathBuf>,
    pub automaton: Option<PathBuf>,
    pub functor: Option<PathBuf>,
    pub subposet: Option<PathBuf>,
}

/// The proposition set `B`: concrete tables over known states, or an
/// abstract bounded poset awaiting a canonical state space.
#[derive(Clone, Debug)]
pub enum Base {
    Algebra(PropositionAlgebra),
    Poset(Poset),
}

impl Base {
    pub fn names(&self) -> &[String] {
        match self {
            Base::Algebra(a) => a.names(),
            Base::Poset(p) => p.names(),
        }
    }

    pub fn poset(&self) -> CliResult<Poset> {
        match self {
            Base::Algebra(a) => Ok(a.as_poset()?),
            Base::Poset(p) => Ok(p.clone()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub lattice: Arc<TruthLattice>,
    pub base: Option<Base>,
    pub base_file: Option<String>,
    pub automaton: Option<Automaton>,
    pub functors: Vec<FunctorDoc>,
    pub subposet: Option<MemberList>,
    pub limits: Limits,
}

pub fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

pub fn load_lattice(spec: &str) -> CliResult<TruthLattice> {
    if spec == BOOL2 {
        return Ok(TruthLattice::boolean());
    }
    let path = Path::new(spec);
    format::parse_lattice(&display(path), &read(path)?)
}

fn at(file: &str) -> Location {
    Location {
        file: file.to_string(),
        line: None,
    }
}

impl Workspace {
    pub fn load(paths: &Paths, limits: Limits) -> CliResult<Workspace> {
        let lattice = Arc::new(load_lattice(paths.lattice.as_deref().unwrap_or(BOOL2))?);

        let mut automaton = None;
        if let Some(p) = &paths.automaton {
            let a = format::parse_automaton(&display(p), &read(p)?)?;
            limits
                .check_states(a.states().len())
                .map_err(|e| CliError::invalid(&display(p), None, e))?;
            automaton = Some(a);
        }

        let mut base = None;
        let mut base_file = None;
        if let Some(p) = &paths.algebra {
            let file = display(p);
            let text = read(p)?;
            let b = if format::sniff(&text) == Some(FileKind::Lattice) {
                Base::Poset(format::parse_poset(&file, &text)?)
            } else {
                let alg = format::parse_algebra(&file, &text, lattice.clone())?;
                limits
                    .check_states(alg.states().len())
                    .map_err(|e| CliError::invalid(&file, None, e))?;
                Base::Algebra(alg)
            };
            limits
                .check_algebra(b.names().len())
                .map_err(|e| CliError::invalid(&file, None, e))?;
            if let (Base::Algebra(alg), Some(a)) = (&b, &automaton) {
                if alg.states().names() != a.states().names() {
                    return Err(CliError::Inconsistent {
                        at: at(&file),
                        msg: format!(
                            "algebra states [{}] differ from automaton states [{}]",
                            alg.states().names().join(" "),
                            a.states().names().join(" ")
                        ),
                    });
                }
            }
            base = Some(b);
            base_file = Some(file);
        }

        let mut functors = Vec::new();
        if let Some(p) = &paths.functor {
            functors = format::parse_functors(&display(p), &read(p)?)?;
            if let Some(b) = &base {
                for doc in &functors {
                    for e in &doc.entries {
                        if !b.names().contains(&e.arg) {
                            return Err(CliError::invalid(
                                &doc.file,
                                Some(e.line),
                                dynlog_core::Error::NotAMember(e.arg.clone()),
                            ));
                        }
                    }
                }
            }
        }

        let mut subposet = None;
        if let Some(p) = &paths.subposet {
            let list = format::parse_members(&display(p), &read(p)?)?;
            if let Some(b) = &base {
                for (ln, n) in &list.names {
                    if !b.names().contains(n) {
                        return Err(CliError::invalid(
                            &list.file,
                            Some(*ln),
                            dynlog_core::Error::NotAMember(n.clone()),
                        ));
                    }
                }
            }
            subposet = Some(list);
        }

        Ok(Workspace {
            lattice,
            base,
            base_file,
            automaton,
            functors,
            subposet,
            limits,
        })
    }

    pub fn automaton(&self) -> CliResult<&Automaton> {
        self.automaton.as_ref().ok_or(CliError::MissingInput("automaton (-a)"))
    }

    pub fn base(&self) -> CliResult<&Base> {
        self.base.as_ref().ok_or(CliError::MissingInput("propositions (-b)"))
    }

    pub fn algebra(&self) -> CliResult<&PropositionAlgebra> {
        match self.base()? {
            Base::Algebra(a) => Ok(a),
            Base::Poset(_) => Err(CliError::Usage(
                "this command needs propositions over states, not an abstract poset".into(),
            )),
        }
    }

    pub fn subposet(&self) -> CliResult<&MemberList> {
        self.subposet.as_ref().ok_or(CliError::MissingInput("subposet (-c)"))
    }

    /// The functor named `name`, or the only one in the file.
    pub fn functor(&self, name: Option<&str>) -> CliResult<&FunctorDoc> {
        match (name, self.functors.as_slice()) {
            (_, []) => Err(CliError::MissingInput("functor (-t)")),
            (Some(n), docs) => docs
                .iter()
                .find(|d| d.name == n)
                .ok_or_else(|| CliError::Usage(format!("no functor named `{n}`"))),
            (None, [one]) => Ok(one),
            (None, _) => Err(CliError::Usage("the functor file has several functors; pick one with --name".into())),
        }
    }
}

/// Builds a workspace from a list of files, recognising each by its
/// directives. A lattice file, if any, must come before the propositions.
pub fn parse_workspace(files: &[PathBuf], limits: Limits) -> CliResult<Workspace> {
    let mut paths = Paths::default();
    for f in files {
        let kind = format::sniff(&read(f)?).ok_or_else(|| CliError::Usage(format!("{}: unrecognised file", f.display())))?;
        let slot_taken = match kind {
            FileKind::Lattice if paths.lattice.is_none() => {
                paths.lattice = Some(display(f));
                false
            }
            FileKind::Propositions if paths.algebra.is_none() => {
                paths.algebra = Some(f.clone());
                false
            }
            FileKind::Automaton if paths.automaton.is_none() => {
                paths.automaton = Some(f.clone());
                false
            }
            FileKind::Functor if paths.functor.is_none() => {
                paths.functor = Some(f.clone());
                false
            }
            FileKind::Subposet if paths.subposet.is_none() => {
                paths.subposet = Some(f.clone());
                false
            }
            _ => true,
        };
        if slot_taken {
            return Err(CliError::Usage(format!("{}: a second {kind:?} file", f.display())));
        }
    }
    Workspace::load(&paths, limits)
}

//! Resolving algebra, diagram, connection and script arguments.

use std::fs;
use std::path::Path;

use hopfg_core::algebra::json::algebra_from_json;
use hopfg_core::builtin::builtin_algebra;
use hopfg_core::group::enumerate_homs;
use hopfg_core::kirby::builtin_diagram;
use hopfg_core::{Error, FiniteGroup, GroupElement, GroupHom, HopfGAlgebra, KirbyDiagram, MoveSpec, Result};

fn looks_like_path(name: &str) -> bool {
    name.ends_with(".json") || Path::new(name).is_file()
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read `{path}`: {e}")))
}

/// A builtin name (`cyclic:k=..,l=..,d=..`, `kac-paljutkin`) or a JSON file.
pub fn load_algebra(name: &str) -> Result<HopfGAlgebra> {
    if looks_like_path(name) {
        algebra_from_json(&read(name)?).map_err(|e| match e {
            Error::Json(j) => Error::AlgebraLoad(format!("{name}: line {}, column {}: {j}", j.line(), j.column())),
            other => other,
        })
    } else {
        builtin_algebra(name)
    }
}

/// A builtin name, `connected-sum:A,B`, or a JSON file.
pub fn load_diagram(name: &str) -> Result<KirbyDiagram> {
    let d = if looks_like_path(name) {
        KirbyDiagram::from_json(&read(name)?).map_err(|e| match e {
            Error::Json(j) => Error::Diagram(format!("{name}: line {}, column {}: {j}", j.line(), j.column())),
            other => other,
        })?
    } else {
        builtin_diagram(name)?
    };
    d.validate().into_result()?;
    Ok(d)
}

pub fn load_script(path: &str) -> Result<Vec<MoveSpec>> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Error::Parse(format!("{path}: line {}, column {}: {e}", e.line(), e.column())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Connection {
    Trivial,
    All,
    Images(Vec<String>),
}

impl Connection {
    pub fn parse(text: &str) -> Connection {
        match text.trim() {
            "trivial" => Connection::Trivial,
            "all" => Connection::All,
            "" => Connection::Images(Vec::new()),
            list => Connection::Images(list.split(',').map(|s| s.trim().to_string()).collect()),
        }
    }
}

fn element(g: &FiniteGroup, name: &str) -> Result<GroupElement> {
    g.element_by_name(name)
        .ok_or_else(|| Error::Coloring(format!("`{name}` is not an element of the group")))
}

/// The homomorphisms selected by a connection argument, in enumeration order.
pub fn select_homs(d: &KirbyDiagram, g: &FiniteGroup, c: &Connection) -> Result<Vec<GroupHom>> {
    match c {
        Connection::Trivial => Ok(vec![GroupHom::trivial(g, d.dotted.len())]),
        Connection::All => Ok(enumerate_homs(&d.fundamental_presentation(), g)),
        Connection::Images(names) => {
            if names.len() != d.dotted.len() {
                return Err(Error::Coloring(format!(
                    "{} generator images given for {} dotted components",
                    names.len(),
                    d.dotted.len()
                )));
            }
            let images = names.iter().map(|n| element(g, n)).collect::<Result<Vec<_>>>()?;
            Ok(vec![GroupHom { images }])
        }
    }
}

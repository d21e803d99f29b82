//! Combinatorial Kirby diagrams: dotted circles with ordered passages,
//! undotted components as cyclic event lists, and signed crossings.

mod builtin;
mod moves;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement, GroupHom, Letter, Presentation};

pub use builtin::{builtin_diagram, connected_sum, cp2, cp2bar, s1xs1xs2, s1xs3, s2xs2, s4, BUILTIN_DIAGRAMS};
pub use moves::{apply_move, local_moves, Gap, MoveSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Down,
    Up,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Down => Direction::Up,
            Direction::Up => Direction::Down,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Over,
    Under,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// One point of interest met while traversing an undotted component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Event {
    Pass { dot: usize, dir: Direction },
    Cross { crossing: usize, role: Role },
}

impl Event {
    pub fn pass(dot: usize, dir: Direction) -> Self {
        Event::Pass { dot, dir }
    }

    pub fn over(crossing: usize) -> Self {
        Event::Cross {
            crossing,
            role: Role::Over,
        }
    }

    pub fn under(crossing: usize) -> Self {
        Event::Cross {
            crossing,
            role: Role::Under,
        }
    }
}

/// Passages are `(undotted id, event position)` listed left to right
/// across the spanning disk.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DottedComponent {
    pub id: usize,
    pub passages: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UndottedComponent {
    pub id: usize,
    pub events: Vec<Event>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub id: usize,
    pub sign: Sign,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KirbyDiagram {
    #[serde(default)]
    pub dotted: Vec<DottedComponent>,
    #[serde(default)]
    pub undotted: Vec<UndottedComponent>,
    #[serde(default)]
    pub crossings: Vec<Crossing>,
    #[serde(default)]
    pub h3: usize,
    #[serde(default)]
    pub h4: usize,
}

/// Integrity problems found by [`KirbyDiagram::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::Diagram(self.issues.join("; ")))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return writeln!(f, "diagram ok");
        }
        for i in &self.issues {
            writeln!(f, "- {i}")?;
        }
        Ok(())
    }
}

impl KirbyDiagram {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram JSON is serializable")
    }

    pub fn crossing_sign(&self, id: usize) -> Sign {
        self.crossings[id].sign
    }

    /// Referential integrity of the encoding.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for (i, d) in self.dotted.iter().enumerate() {
            if d.id != i {
                issues.push(format!("dotted component at index {i} has id {}", d.id));
            }
        }
        for (i, u) in self.undotted.iter().enumerate() {
            if u.id != i {
                issues.push(format!("undotted component at index {i} has id {}", u.id));
            }
        }
        for (i, c) in self.crossings.iter().enumerate() {
            if c.id != i {
                issues.push(format!("crossing at index {i} has id {}", c.id));
            }
        }

        let mut ends: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut pass_events: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (u, comp) in self.undotted.iter().enumerate() {
            for (pos, e) in comp.events.iter().enumerate() {
                match *e {
                    Event::Cross { crossing, role } => {
                        if crossing >= self.crossings.len() {
                            issues.push(format!("undotted {u} event {pos}: unknown crossing {crossing}"));
                            continue;
                        }
                        let slot = ends.entry(crossing).or_default();
                        match role {
                            Role::Over => slot.0 += 1,
                            Role::Under => slot.1 += 1,
                        }
                    }
                    Event::Pass { dot, .. } => {
                        if dot >= self.dotted.len() {
                            issues.push(format!("undotted {u} event {pos}: unknown dotted component {dot}"));
                            continue;
                        }
                        pass_events.insert((u, pos), dot);
                    }
                }
            }
        }
        for c in 0..self.crossings.len() {
            let (o, un) = ends.get(&c).copied().unwrap_or_default();
            if o != 1 || un != 1 {
                issues.push(format!(
                    "crossing {c} referenced {o} time(s) as over and {un} time(s) as under (expected once each)"
                ));
            }
        }

        let mut listed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (d, dot) in self.dotted.iter().enumerate() {
            for &(u, pos) in &dot.passages {
                match pass_events.get(&(u, pos)) {
                    None => issues.push(format!(
                        "dotted {d} lists passage ({u},{pos}) which is not a passage event"
                    )),
                    Some(&owner) if owner != d => issues.push(format!(
                        "dotted {d} lists passage ({u},{pos}) which passes through dotted {owner}"
                    )),
                    Some(_) => {}
                }
                *listed.entry((u, pos)).or_default() += 1;
            }
        }
        for (&(u, pos), &dot) in &pass_events {
            match listed.get(&(u, pos)).copied().unwrap_or(0) {
                0 => issues.push(format!(
                    "passage event ({u},{pos}) through dotted {dot} is missing from its passage list"
                )),
                1 => {}
                n => issues.push(format!("passage event ({u},{pos}) listed {n} times")),
            }
        }
        ValidationReport { issues }
    }

    /// `(dot, index in its passage list)` for each passage event.
    pub fn passage_lookup(&self) -> BTreeMap<(usize, usize), (usize, usize)> {
        let mut out = BTreeMap::new();
        for (d, dot) in self.dotted.iter().enumerate() {
            for (t, &p) in dot.passages.iter().enumerate() {
                out.insert(p, (d, t));
            }
        }
        out
    }

    /// Direction of the passage event at `(u, pos)`.
    pub fn passage_direction(&self, u: usize, pos: usize) -> Option<Direction> {
        match self.undotted.get(u)?.events.get(pos)? {
            Event::Pass { dir, .. } => Some(*dir),
            Event::Cross { .. } => None,
        }
    }

    /// One generator per dotted component; one relation per undotted
    /// component reading `s` for Down and `s^-1` for Up passages.
    pub fn fundamental_presentation(&self) -> Presentation {
        let relations = self
            .undotted
            .iter()
            .map(|u| {
                u.events
                    .iter()
                    .filter_map(|e| match *e {
                        Event::Pass {
                            dot,
                            dir: Direction::Down,
                        } => Some(Letter::gen(dot)),
                        Event::Pass {
                            dot,
                            dir: Direction::Up,
                        } => Some(Letter::inv(dot)),
                        Event::Cross { .. } => None,
                    })
                    .collect()
            })
            .collect();
        Presentation {
            num_generators: self.dotted.len(),
            relations,
        }
    }

    /// Color the dotted components by `hom` after checking every relation.
    pub fn color(&self, group: &FiniteGroup, hom: &GroupHom) -> Result<ColoredDiagram> {
        ColoredDiagram::new(self.clone(), group.clone(), hom.images.clone())
    }

    pub fn num_dotted(&self) -> usize {
        self.dotted.len()
    }

    pub fn num_undotted(&self) -> usize {
        self.undotted.len()
    }
}

/// A diagram together with a color for every dotted component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredDiagram {
    pub diagram: KirbyDiagram,
    pub group: FiniteGroup,
    pub colors: Vec<GroupElement>,
}

impl ColoredDiagram {
    /// Validate the diagram and check that each undotted component's
    /// relation word evaluates to the identity under `colors`.
    pub fn new(diagram: KirbyDiagram, group: FiniteGroup, colors: Vec<GroupElement>) -> Result<Self> {
        diagram.validate().into_result()?;
        if colors.len() != diagram.dotted.len() {
            return Err(Error::Coloring(format!(
                "{} colors given for {} dotted components",
                colors.len(),
                diagram.dotted.len()
            )));
        }
        if let Some(c) = colors.iter().find(|c| c.0 >= group.order()) {
            return Err(Error::Coloring(format!("color index {} outside the group", c.0)));
        }
        let hom = GroupHom { images: colors.clone() };
        let pres = diagram.fundamental_presentation();
        for (u, word) in pres.relations.iter().enumerate() {
            let v = hom.eval_word(&group, word);
            if v != group.identity() {
                return Err(Error::Coloring(format!(
                    "relation of undotted component {u} evaluates to {} instead of the identity",
                    group.name(v)
                )));
            }
        }
        Ok(ColoredDiagram { diagram, group, colors })
    }

    /// Color every dotted component with the identity.
    pub fn trivial(diagram: KirbyDiagram, group: FiniteGroup) -> Result<Self> {
        let colors = vec![group.identity(); diagram.dotted.len()];
        Self::new(diagram, group, colors)
    }

    pub fn hom(&self) -> GroupHom {
        GroupHom {
            images: self.colors.clone(),
        }
    }
}

//! Hand-encoded diagrams of the closed 4-manifolds used throughout the tests.

use super::Direction::{Down, Up};
use super::{Crossing, DottedComponent, Event, KirbyDiagram, Sign, UndottedComponent};
use crate::error::{Error, Result};

pub const BUILTIN_DIAGRAMS: [&str; 6] = ["cp2", "cp2bar", "s2xs2", "s1xs3", "s1xs1xs2", "s4"];

fn undotted(id: usize, events: Vec<Event>) -> UndottedComponent {
    UndottedComponent { id, events }
}

fn crossings(signs: &[Sign]) -> Vec<Crossing> {
    signs
        .iter()
        .enumerate()
        .map(|(id, &sign)| Crossing { id, sign })
        .collect()
}

/// +1-framed unknot: a single positive curl.
pub fn cp2() -> KirbyDiagram {
    KirbyDiagram {
        dotted: vec![],
        undotted: vec![undotted(0, vec![Event::over(0), Event::under(0)])],
        crossings: crossings(&[Sign::Positive]),
        h3: 0,
        h4: 1,
    }
}

/// Mirror of [`cp2`]: the curl is negative.
pub fn cp2bar() -> KirbyDiagram {
    let mut d = cp2();
    d.crossings[0].sign = Sign::Negative;
    d
}

/// 0-framed Hopf link.
pub fn s2xs2() -> KirbyDiagram {
    KirbyDiagram {
        dotted: vec![],
        undotted: vec![
            undotted(0, vec![Event::under(0), Event::over(1)]),
            undotted(1, vec![Event::over(0), Event::under(1)]),
        ],
        crossings: crossings(&[Sign::Positive, Sign::Positive]),
        h3: 0,
        h4: 1,
    }
}

/// A lone dotted circle plus one 3-handle.
pub fn s1xs3() -> KirbyDiagram {
    KirbyDiagram {
        dotted: vec![DottedComponent {
            id: 0,
            passages: vec![],
        }],
        undotted: vec![],
        crossings: vec![],
        h3: 1,
        h4: 1,
    }
}

/// Two dotted circles, a 0-framed commutator curve and its 0-framed meridian.
pub fn s1xs1xs2() -> KirbyDiagram {
    KirbyDiagram {
        dotted: vec![
            DottedComponent {
                id: 0,
                passages: vec![(0, 0), (0, 4)],
            },
            DottedComponent {
                id: 1,
                passages: vec![(0, 5), (0, 3)],
            },
        ],
        undotted: vec![
            undotted(
                0,
                vec![
                    Event::pass(0, Down),
                    Event::under(0),
                    Event::over(1),
                    Event::pass(1, Down),
                    Event::pass(0, Up),
                    Event::pass(1, Up),
                ],
            ),
            undotted(1, vec![Event::over(0), Event::under(1)]),
        ],
        crossings: crossings(&[Sign::Positive, Sign::Positive]),
        h3: 2,
        h4: 1,
    }
}

/// The empty diagram with a single 4-handle.
pub fn s4() -> KirbyDiagram {
    KirbyDiagram {
        h4: 1,
        ..KirbyDiagram::default()
    }
}

/// Disjoint union, with `b`'s components and crossings renumbered after `a`'s.
pub fn connected_sum(a: &KirbyDiagram, b: &KirbyDiagram) -> KirbyDiagram {
    let (nd, nu, nc) = (a.dotted.len(), a.undotted.len(), a.crossings.len());
    let mut out = a.clone();
    for d in &b.dotted {
        out.dotted.push(DottedComponent {
            id: d.id + nd,
            passages: d.passages.iter().map(|&(u, p)| (u + nu, p)).collect(),
        });
    }
    for u in &b.undotted {
        let events = u
            .events
            .iter()
            .map(|e| match *e {
                Event::Pass { dot, dir } => Event::Pass { dot: dot + nd, dir },
                Event::Cross { crossing, role } => Event::Cross {
                    crossing: crossing + nc,
                    role,
                },
            })
            .collect();
        out.undotted.push(undotted(u.id + nu, events));
    }
    for c in &b.crossings {
        out.crossings.push(Crossing {
            id: c.id + nc,
            sign: c.sign,
        });
    }
    out.h3 = a.h3 + b.h3;
    out.h4 = (a.h4 + b.h4).saturating_sub(1);
    out
}

/// A builtin name or `connected-sum:A,B[,C..]`.
pub fn builtin_diagram(name: &str) -> Result<KirbyDiagram> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("connected-sum:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() < 2 {
            return Err(Error::Parse(format!("connected sum needs two summands: `{name}`")));
        }
        let mut acc = builtin_diagram(parts[0])?;
        for p in &parts[1..] {
            acc = connected_sum(&acc, &builtin_diagram(p)?);
        }
        return Ok(acc);
    }
    match name {
        "cp2" => Ok(cp2()),
        "cp2bar" => Ok(cp2bar()),
        "s2xs2" => Ok(s2xs2()),
        "s1xs3" => Ok(s1xs3()),
        "s1xs1xs2" => Ok(s1xs1xs2()),
        "s4" => Ok(s4()),
        _ => Err(Error::Parse(format!("unknown builtin diagram `{name}`"))),
    }
}

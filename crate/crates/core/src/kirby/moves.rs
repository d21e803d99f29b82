//! Pattern rewrites on colored diagrams.
//!
//! Every rewrite works on an editable copy in which each passage event
//! carries a unique tag, so insertions and deletions never have to patch
//! `(component, position)` references by hand. The result is re-validated
//! (including the coloring relations) before it is returned.

use serde::{Deserialize, Serialize};

use super::{ColoredDiagram, Crossing, Direction, DottedComponent, Event, KirbyDiagram, Role, Sign, UndottedComponent};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};

/// Insertion point: before `events[index]` of an undotted component
/// (`index == len` appends).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gap {
    pub component: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move")]
pub enum MoveSpec {
    /// Reidemeister II: add a pair of opposite crossings where strand
    /// `over` passes twice over strand `under`.
    #[serde(rename = "I-2-insert")]
    I2Insert {
        over: Gap,
        under: Gap,
        antiparallel: bool,
        first_sign: Sign,
    },
    #[serde(rename = "I-2-remove")]
    I2Remove { first: usize, second: usize },
    /// Reidemeister III: `c1` is top over middle, `c2` top over bottom,
    /// `c3` middle over bottom.
    #[serde(rename = "I-3")]
    I3 { c1: usize, c2: usize, c3: usize },
    /// Swap the two ends of a curl.
    #[serde(rename = "I-5")]
    I5 { crossing: usize },
    /// Move a curl past the neighbouring crossing end.
    #[serde(rename = "curl-slide")]
    CurlSlide { crossing: usize, forward: bool },
    #[serde(rename = "II-1-insert")]
    II1Insert {
        dot: usize,
        index: usize,
        at: Gap,
        first: Direction,
    },
    #[serde(rename = "II-1-remove")]
    II1Remove { dot: usize, index: usize },
    #[serde(rename = "II-5")]
    II5 { dot: usize },
    /// Pass the `small` dotted circle through the disk of `large`.
    #[serde(rename = "II-6")]
    II6 { small: usize, large: usize, reverse: bool },
    /// Slide dotted circle `moving` over `onto`; the new passages through
    /// `onto` are inserted at position `at` of its list.
    #[serde(rename = "III-1")]
    III1 { moving: usize, onto: usize, at: usize },
    #[serde(rename = "III-4-remove")]
    III4Remove { dot: usize },
    #[serde(rename = "III-4-insert")]
    III4Insert { dir: Direction },
    #[serde(rename = "III-5-remove")]
    III5Remove { component: usize },
    #[serde(rename = "III-5-insert")]
    III5Insert,
    #[serde(rename = "conjugate")]
    GlobalConjugate { by: GroupElement },
    #[serde(rename = "reorient")]
    Reorient { component: usize },
    #[serde(rename = "rotate")]
    Rotate { component: usize, by: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ev {
    Pass { dot: usize, dir: Direction, tag: usize },
    Cross { id: usize, role: Role },
}

type Pos = (usize, usize);

struct Work<'g> {
    group: &'g FiniteGroup,
    comps: Vec<Vec<Ev>>,
    dots: Vec<Vec<usize>>,
    colors: Vec<GroupElement>,
    signs: Vec<Option<Sign>>,
    h3: usize,
    h4: usize,
    next_tag: usize,
}

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::MoveNotApplicable(msg.into()))
}

fn next(n: usize, p: usize) -> usize {
    (p + 1) % n
}

fn prev(n: usize, p: usize) -> usize {
    (p + n - 1) % n
}

impl<'g> Work<'g> {
    fn new(cd: &'g ColoredDiagram) -> Self {
        let d = &cd.diagram;
        let lookup = d.passage_lookup();
        let mut tag_of = std::collections::BTreeMap::new();
        let mut dots: Vec<Vec<usize>> = d.dotted.iter().map(|x| vec![0; x.passages.len()]).collect();
        let mut next_tag = 0;
        for (&p, &(dot, t)) in &lookup {
            tag_of.insert(p, next_tag);
            dots[dot][t] = next_tag;
            next_tag += 1;
        }
        let comps = d
            .undotted
            .iter()
            .enumerate()
            .map(|(u, c)| {
                c.events
                    .iter()
                    .enumerate()
                    .map(|(pos, e)| match *e {
                        Event::Pass { dot, dir } => Ev::Pass {
                            dot,
                            dir,
                            tag: tag_of[&(u, pos)],
                        },
                        Event::Cross { crossing, role } => Ev::Cross { id: crossing, role },
                    })
                    .collect()
            })
            .collect();
        Work {
            group: &cd.group,
            comps,
            dots,
            colors: cd.colors.clone(),
            signs: d.crossings.iter().map(|c| Some(c.sign)).collect(),
            h3: d.h3,
            h4: d.h4,
            next_tag,
        }
    }

    fn finish(self) -> Result<ColoredDiagram> {
        let mut renumber = vec![usize::MAX; self.signs.len()];
        let mut crossings = Vec::new();
        for (old, s) in self.signs.iter().enumerate() {
            if let Some(sign) = s {
                renumber[old] = crossings.len();
                crossings.push(Crossing {
                    id: crossings.len(),
                    sign: *sign,
                });
            }
        }
        let mut where_tag = std::collections::BTreeMap::new();
        let mut undotted = Vec::new();
        for (u, comp) in self.comps.iter().enumerate() {
            let mut events = Vec::with_capacity(comp.len());
            for (pos, e) in comp.iter().enumerate() {
                events.push(match *e {
                    Ev::Pass { dot, dir, tag } => {
                        where_tag.insert(tag, (u, pos));
                        Event::Pass { dot, dir }
                    }
                    Ev::Cross { id, role } => Event::Cross {
                        crossing: renumber[id],
                        role,
                    },
                });
            }
            undotted.push(UndottedComponent { id: u, events });
        }
        let dotted = self
            .dots
            .iter()
            .enumerate()
            .map(|(id, tags)| DottedComponent {
                id,
                passages: tags.iter().map(|t| where_tag[t]).collect(),
            })
            .collect();
        let diagram = KirbyDiagram {
            dotted,
            undotted,
            crossings,
            h3: self.h3,
            h4: self.h4,
        };
        ColoredDiagram::new(diagram, self.group.clone(), self.colors)
    }

    fn tag(&mut self) -> usize {
        self.next_tag += 1;
        self.next_tag - 1
    }

    fn new_crossing(&mut self, sign: Sign) -> usize {
        self.signs.push(Some(sign));
        self.signs.len() - 1
    }

    fn sign(&self, id: usize) -> Result<Sign> {
        match self.signs.get(id).copied().flatten() {
            Some(s) => Ok(s),
            None => fail(format!("no crossing {id}")),
        }
    }

    fn at(&self, p: Pos) -> Ev {
        self.comps[p.0][p.1]
    }

    fn len(&self, u: usize) -> usize {
        self.comps[u].len()
    }

    fn find_cross(&self, id: usize, role: Role) -> Result<Pos> {
        for (u, c) in self.comps.iter().enumerate() {
            if let Some(p) = c.iter().position(|e| *e == Ev::Cross { id, role }) {
                return Ok((u, p));
            }
        }
        fail(format!("no crossing {id}"))
    }

    fn find_tag(&self, tag: usize) -> Pos {
        for (u, c) in self.comps.iter().enumerate() {
            if let Some(p) = c.iter().position(|e| matches!(e, Ev::Pass { tag: t, .. } if *t == tag)) {
                return (u, p);
            }
        }
        unreachable!("every listed passage tag has an event")
    }

    /// `b` immediately follows `a` along the same component.
    fn follows(&self, a: Pos, b: Pos) -> bool {
        a.0 == b.0 && b.1 == next(self.len(a.0), a.1)
    }

    fn check_dot(&self, d: usize) -> Result<()> {
        if d >= self.dots.len() {
            return fail(format!("no dotted component {d}"));
        }
        Ok(())
    }

    fn check_comp(&self, u: usize) -> Result<()> {
        if u >= self.comps.len() {
            return fail(format!("no undotted component {u}"));
        }
        Ok(())
    }

    fn check_gap(&self, g: Gap) -> Result<()> {
        self.check_comp(g.component)?;
        if g.index > self.len(g.component) {
            return fail(format!(
                "gap {} beyond the {} events of component {}",
                g.index,
                self.len(g.component),
                g.component
            ));
        }
        Ok(())
    }

    fn swap(&mut self, a: Pos, b: Pos) {
        let (ea, eb) = (self.at(a), self.at(b));
        self.comps[a.0][a.1] = eb;
        self.comps[b.0][b.1] = ea;
    }

    /// Insert two runs of events at two gaps; with both gaps on one
    /// component the later gap is filled first so indices stay valid.
    fn insert_two(&mut self, g1: Gap, s1: Vec<Ev>, g2: Gap, s2: Vec<Ev>) {
        if g1.component == g2.component && g2.index >= g1.index {
            self.comps[g2.component].splice(g2.index..g2.index, s2);
            self.comps[g1.component].splice(g1.index..g1.index, s1);
        } else {
            self.comps[g1.component].splice(g1.index..g1.index, s1);
            self.comps[g2.component].splice(g2.index..g2.index, s2);
        }
    }

    fn remove_positions(&mut self, mut ps: Vec<Pos>) {
        ps.sort_unstable_by(|a, b| b.cmp(a));
        for (u, p) in ps {
            self.comps[u].remove(p);
        }
    }

    fn remove_dot(&mut self, d: usize) {
        self.dots.remove(d);
        self.colors.remove(d);
        for c in self.comps.iter_mut() {
            for e in c.iter_mut() {
                if let Ev::Pass { dot, .. } = e {
                    if *dot > d {
                        *dot -= 1;
                    }
                }
            }
        }
    }
}

fn apply(w: &mut Work, m: &MoveSpec) -> Result<()> {
    let g = w.group;
    match *m {
        MoveSpec::I2Insert {
            over,
            under,
            antiparallel,
            first_sign,
        } => {
            w.check_gap(over)?;
            w.check_gap(under)?;
            let a = w.new_crossing(first_sign);
            let b = w.new_crossing(first_sign.flip());
            let top = vec![
                Ev::Cross {
                    id: a,
                    role: Role::Over,
                },
                Ev::Cross {
                    id: b,
                    role: Role::Over,
                },
            ];
            let mut bottom = vec![
                Ev::Cross {
                    id: a,
                    role: Role::Under,
                },
                Ev::Cross {
                    id: b,
                    role: Role::Under,
                },
            ];
            if antiparallel {
                bottom.reverse();
            }
            w.insert_two(over, top, under, bottom);
        }
        MoveSpec::I2Remove { first, second } => {
            if first == second {
                return fail("I-2 needs two distinct crossings");
            }
            if w.sign(first)? == w.sign(second)? {
                return fail(format!("crossings {first} and {second} have the same sign"));
            }
            let (oa, ob) = (w.find_cross(first, Role::Over)?, w.find_cross(second, Role::Over)?);
            let (ua, ub) = (w.find_cross(first, Role::Under)?, w.find_cross(second, Role::Under)?);
            let (p, q, up, uq) = if w.follows(oa, ob) {
                (oa, ob, ua, ub)
            } else if w.follows(ob, oa) {
                (ob, oa, ub, ua)
            } else {
                return fail(format!("over ends of {first} and {second} are not adjacent"));
            };
            if !(w.follows(up, uq) || w.follows(uq, up)) {
                return fail(format!("under ends of {first} and {second} are not adjacent"));
            }
            w.remove_positions(vec![p, q, up, uq]);
            w.signs[first] = None;
            w.signs[second] = None;
        }
        MoveSpec::I3 { c1, c2, c3 } => {
            if c1 == c2 || c2 == c3 || c1 == c3 {
                return fail("I-3 needs three distinct crossings");
            }
            let (o1, u1) = (w.find_cross(c1, Role::Over)?, w.find_cross(c1, Role::Under)?);
            let (o2, u2) = (w.find_cross(c2, Role::Over)?, w.find_cross(c2, Role::Under)?);
            let (o3, u3) = (w.find_cross(c3, Role::Over)?, w.find_cross(c3, Role::Under)?);
            // reversal flags: 0 when the pair is met in the order (first, second)
            let orders = |a: Pos, b: Pos| -> Vec<u8> {
                let mut v = Vec::new();
                if w.follows(a, b) {
                    v.push(0);
                }
                if w.follows(b, a) {
                    v.push(1);
                }
                v
            };
            let (rt, rm, rb) = (orders(o1, o2), orders(u1, o3), orders(u2, u3));
            if rt.is_empty() || rm.is_empty() || rb.is_empty() {
                return fail("I-3 strands are not adjacent pairs");
            }
            let sg = |s: Sign| if s == Sign::Positive { 0u8 } else { 1 };
            let (s1, s2, s3) = (sg(w.sign(c1)?), sg(w.sign(c2)?), sg(w.sign(c3)?));
            let ok = rt.iter().any(|&t| {
                rm.iter().any(|&mm| {
                    rb.iter().any(|&b| {
                        let s = s3 ^ mm ^ b;
                        s1 == s ^ t ^ mm && s2 == s ^ t ^ b
                    })
                })
            });
            if !ok {
                return fail("I-3 crossing signs do not match the strand orientations");
            }
            w.swap(o1, o2);
            w.swap(u1, o3);
            w.swap(u2, u3);
        }
        MoveSpec::I5 { crossing } => {
            let (o, u) = (
                w.find_cross(crossing, Role::Over)?,
                w.find_cross(crossing, Role::Under)?,
            );
            if !(w.follows(o, u) || w.follows(u, o)) {
                return fail(format!("crossing {crossing} is not a curl"));
            }
            w.swap(o, u);
        }
        MoveSpec::CurlSlide { crossing, forward } => {
            let (o, u) = (
                w.find_cross(crossing, Role::Over)?,
                w.find_cross(crossing, Role::Under)?,
            );
            let n = w.len(o.0);
            if o.0 != u.0 || n < 3 {
                return fail(format!("crossing {crossing} is not a curl with a neighbour"));
            }
            let first = if w.follows(o, u) {
                o
            } else if w.follows(u, o) {
                u
            } else {
                return fail(format!("crossing {crossing} is not a curl"));
            };
            let c = first.0;
            let (i0, i1) = (first.1, next(n, first.1));
            let other = if forward { next(n, i1) } else { prev(n, i0) };
            if !matches!(w.comps[c][other], Ev::Cross { .. }) {
                return fail("a curl only slides past crossing ends");
            }
            let (e0, e1, eo) = (w.comps[c][i0], w.comps[c][i1], w.comps[c][other]);
            if forward {
                w.comps[c][i0] = eo;
                w.comps[c][i1] = e0;
                w.comps[c][other] = e1;
            } else {
                w.comps[c][other] = e0;
                w.comps[c][i0] = e1;
                w.comps[c][i1] = eo;
            }
        }
        MoveSpec::II1Insert { dot, index, at, first } => {
            w.check_dot(dot)?;
            w.check_gap(at)?;
            if index > w.dots[dot].len() {
                return fail(format!("passage index {index} beyond dotted {dot}"));
            }
            let (t1, t2) = (w.tag(), w.tag());
            let evs = vec![
                Ev::Pass {
                    dot,
                    dir: first,
                    tag: t1,
                },
                Ev::Pass {
                    dot,
                    dir: first.flip(),
                    tag: t2,
                },
            ];
            w.comps[at.component].splice(at.index..at.index, evs);
            w.dots[dot].splice(index..index, [t1, t2]);
        }
        MoveSpec::II1Remove { dot, index } => {
            w.check_dot(dot)?;
            if index + 1 >= w.dots[dot].len() {
                return fail(format!("dotted {dot} has no passages {index}, {}", index + 1));
            }
            let (p, q) = (w.find_tag(w.dots[dot][index]), w.find_tag(w.dots[dot][index + 1]));
            if !w.follows(p, q) {
                return fail("II-1 passages are not consecutive along their strand");
            }
            let dir = |e: Ev| match e {
                Ev::Pass { dir, .. } => dir,
                Ev::Cross { .. } => unreachable!(),
            };
            if dir(w.at(p)) == dir(w.at(q)) {
                return fail("II-1 passages go the same way");
            }
            w.remove_positions(vec![p, q]);
            w.dots[dot].drain(index..index + 2);
        }
        MoveSpec::II5 { dot } => {
            w.check_dot(dot)?;
            w.dots[dot].reverse();
            for c in w.comps.iter_mut() {
                for e in c.iter_mut() {
                    if let Ev::Pass { dot: d, dir, .. } = e {
                        if *d == dot {
                            *dir = dir.flip();
                        }
                    }
                }
            }
            w.colors[dot] = g.inv(w.colors[dot]);
        }
        MoveSpec::II6 { small, large, reverse } => {
            w.check_dot(small)?;
            w.check_dot(large)?;
            if small == large || w.dots[small].is_empty() {
                return fail("II-6 needs two distinct dotted components, the small one nonempty");
            }
            let mut pairs = Vec::new();
            let mut block = Vec::new();
            for &t in &w.dots[small] {
                let p = w.find_tag(t);
                let n = w.len(p.0);
                let q = (p.0, if reverse { prev(n, p.1) } else { next(n, p.1) });
                match (w.at(p), w.at(q)) {
                    (
                        Ev::Pass {
                            dir: Direction::Down, ..
                        },
                        Ev::Pass {
                            dot,
                            dir: Direction::Down,
                            tag,
                        },
                    ) if dot == large && q != p => {
                        pairs.push((p, q));
                        block.push(tag);
                    }
                    _ => return fail("II-6: each small passage must be a downward neighbour of a large passage"),
                }
            }
            let start = w.dots[large].iter().position(|&t| t == block[0]);
            let contiguous = start.is_some_and(|s| w.dots[large].get(s..s + block.len()) == Some(&block[..]));
            if !contiguous {
                return fail("II-6: the shared passages are not a contiguous block of the large circle");
            }
            for (p, q) in pairs {
                w.swap(p, q);
            }
            let (s, l) = (w.colors[small], w.colors[large]);
            w.colors[small] = if reverse {
                g.mul(g.mul(l, s), g.inv(l))
            } else {
                g.mul(g.mul(g.inv(l), s), l)
            };
        }
        MoveSpec::III1 { moving, onto, at } => {
            w.check_dot(moving)?;
            w.check_dot(onto)?;
            if moving == onto {
                return fail("III-1 needs two distinct dotted components");
            }
            if at > w.dots[onto].len() {
                return fail(format!("III-1 insertion index {at} beyond dotted {onto}"));
            }
            let tags = w.dots[moving].clone();
            let mut fresh = Vec::new();
            for t in tags {
                let p = w.find_tag(t);
                if !matches!(
                    w.at(p),
                    Ev::Pass {
                        dir: Direction::Down,
                        ..
                    }
                ) {
                    return fail("III-1 moving circle must have only downward passages");
                }
            }
            for t in w.dots[moving].clone() {
                let (u, p) = w.find_tag(t);
                let nt = w.tag();
                w.comps[u].insert(
                    p + 1,
                    Ev::Pass {
                        dot: onto,
                        dir: Direction::Down,
                        tag: nt,
                    },
                );
                fresh.push(nt);
            }
            w.dots[onto].splice(at..at, fresh);
            w.colors[moving] = g.mul(w.colors[moving], g.inv(w.colors[onto]));
        }
        MoveSpec::III4Remove { dot } => {
            w.check_dot(dot)?;
            if w.colors[dot] != g.identity() || w.dots[dot].len() != 1 {
                return fail("III-4 needs a dotted circle colored 1 with one passage");
            }
            let (u, _) = w.find_tag(w.dots[dot][0]);
            if w.len(u) != 1 {
                return fail("III-4 strand must be an unknotted component with no other events");
            }
            w.comps.remove(u);
            w.remove_dot(dot);
        }
        MoveSpec::III4Insert { dir } => {
            let t = w.tag();
            let dot = w.dots.len();
            w.dots.push(vec![t]);
            w.colors.push(g.identity());
            w.comps.push(vec![Ev::Pass { dot, dir, tag: t }]);
        }
        MoveSpec::III5Remove { component } => {
            w.check_comp(component)?;
            if !w.comps[component].is_empty() || w.h3 == 0 {
                return fail("III-5 needs an isolated unknot and a 3-handle");
            }
            w.comps.remove(component);
            w.h3 -= 1;
        }
        MoveSpec::III5Insert => {
            w.comps.push(Vec::new());
            w.h3 += 1;
        }
        MoveSpec::GlobalConjugate { by } => {
            if by.0 >= g.order() {
                return fail(format!("group element {} out of range", by.0));
            }
            for c in w.colors.iter_mut() {
                *c = g.conjugate(by, *c);
            }
        }
        MoveSpec::Reorient { component } => {
            w.check_comp(component)?;
            let own: Vec<usize> = w.comps[component]
                .iter()
                .filter_map(|e| match e {
                    Ev::Cross { id, .. } => Some(*id),
                    Ev::Pass { .. } => None,
                })
                .collect();
            for &id in &own {
                let self_crossing = own.iter().filter(|&&x| x == id).count() == 2;
                if !self_crossing {
                    w.signs[id] = w.signs[id].map(Sign::flip);
                }
            }
            let c = &mut w.comps[component];
            c.reverse();
            for e in c.iter_mut() {
                if let Ev::Pass { dir, .. } = e {
                    *dir = dir.flip();
                }
            }
        }
        MoveSpec::Rotate { component, by } => {
            w.check_comp(component)?;
            let n = w.len(component);
            if n > 0 {
                w.comps[component].rotate_left(by % n);
            }
        }
    }
    Ok(())
}

/// Apply one move, returning a freshly validated colored diagram.
pub fn apply_move(cd: &ColoredDiagram, m: &MoveSpec) -> Result<ColoredDiagram> {
    let mut w = Work::new(cd);
    apply(&mut w, m)?;
    w.finish()
}

/// Every removal-type or local move applicable to `cd`, in a fixed order.
/// Insertions take free parameters and are not listed.
pub fn local_moves(cd: &ColoredDiagram) -> Vec<MoveSpec> {
    let d = &cd.diagram;
    let nc = d.crossings.len();
    let nd = d.dotted.len();
    let mut cands = Vec::new();
    for a in 0..nc {
        for b in a + 1..nc {
            cands.push(MoveSpec::I2Remove { first: a, second: b });
        }
        cands.push(MoveSpec::I5 { crossing: a });
        cands.push(MoveSpec::CurlSlide {
            crossing: a,
            forward: true,
        });
        cands.push(MoveSpec::CurlSlide {
            crossing: a,
            forward: false,
        });
    }
    if nc <= 12 {
        for c1 in 0..nc {
            for c2 in 0..nc {
                for c3 in 0..nc {
                    cands.push(MoveSpec::I3 { c1, c2, c3 });
                }
            }
        }
    }
    for dot in 0..nd {
        for index in 0..d.dotted[dot].passages.len() {
            cands.push(MoveSpec::II1Remove { dot, index });
        }
        cands.push(MoveSpec::II5 { dot });
        cands.push(MoveSpec::III4Remove { dot });
        for other in 0..nd {
            cands.push(MoveSpec::II6 {
                small: dot,
                large: other,
                reverse: false,
            });
            cands.push(MoveSpec::II6 {
                small: dot,
                large: other,
                reverse: true,
            });
            for at in 0..=d.dotted[other].passages.len() {
                cands.push(MoveSpec::III1 {
                    moving: dot,
                    onto: other,
                    at,
                });
            }
        }
    }
    for component in 0..d.undotted.len() {
        cands.push(MoveSpec::III5Remove { component });
        cands.push(MoveSpec::Reorient { component });
        cands.push(MoveSpec::Rotate { component, by: 1 });
    }
    for by in cd.group.elements() {
        cands.push(MoveSpec::GlobalConjugate { by });
    }
    cands.retain(|m| apply_move(cd, m).is_ok());
    cands
}

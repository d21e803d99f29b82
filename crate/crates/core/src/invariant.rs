//! Evaluation of `I_H(M, rho)` on colored Kirby diagrams.
//!
//! Dotted circles contribute iterated coproducts of the integral of their
//! color, crossings contribute `R` or `R^-1`, and every undotted component
//! multiplies the factors it meets before `lambda` is applied.
//!
//! The contraction walks the undotted components one event at a time. A
//! partial state remembers only the still-unused tensor indices of sources
//! that have been opened, so terms that differ in already-consumed indices
//! are merged instead of being expanded separately.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{GradedVector, HopfGAlgebra, IntegralData};
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::group::{enumerate_homs, GroupElement, GroupHom};
use crate::kirby::{apply_move, connected_sum, ColoredDiagram, Direction, Event, KirbyDiagram, MoveSpec, Role, Sign};

/// Where an undotted slot takes its algebra element from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    /// Dotted component with at least one passage.
    Dot(usize),
    Crossing(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlotRef {
    /// Index into [`SlotAssignment::sources`].
    pub source: usize,
    pub factor: usize,
}

/// Per undotted component, the tensor factor read at each event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotAssignment {
    pub sources: Vec<Source>,
    pub components: Vec<Vec<SlotRef>>,
}

impl SlotAssignment {
    /// The diagram must already be valid.
    pub fn new(d: &KirbyDiagram) -> Self {
        let mut sources = Vec::new();
        let mut dot_source = vec![usize::MAX; d.dotted.len()];
        for (i, dot) in d.dotted.iter().enumerate() {
            if !dot.passages.is_empty() {
                dot_source[i] = sources.len();
                sources.push(Source::Dot(i));
            }
        }
        let crossing_base = sources.len();
        sources.extend((0..d.crossings.len()).map(Source::Crossing));
        let lookup = d.passage_lookup();
        let components = d
            .undotted
            .iter()
            .enumerate()
            .map(|(u, comp)| {
                comp.events
                    .iter()
                    .enumerate()
                    .map(|(pos, e)| match *e {
                        Event::Pass { .. } => {
                            let (dot, t) = lookup[&(u, pos)];
                            SlotRef {
                                source: dot_source[dot],
                                factor: t,
                            }
                        }
                        Event::Cross { crossing, role } => SlotRef {
                            source: crossing_base + crossing,
                            factor: usize::from(role == Role::Under),
                        },
                    })
                    .collect()
            })
            .collect();
        SlotAssignment { sources, components }
    }
}

/// `value = dim(H_1)^exponent * bracket`, with `exponent` the number of
/// dotted minus the number of undotted components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantValue {
    pub value: CycloScalar,
    pub bracket: CycloScalar,
    pub exponent: i64,
}

/// Expanded source: its factor grades and its elementary tensors.
struct Expanded {
    grades: Vec<GroupElement>,
    terms: Vec<(Vec<u32>, CycloScalar)>,
}

const OPEN: u32 = u32::MAX;

fn check_preconditions(h: &HopfGAlgebra, integrals: &IntegralData, cd: &ColoredDiagram) -> Result<()> {
    if !integrals.is_normalized() {
        return Err(Error::Evaluation("integrals are not normalized".into()));
    }
    if cd.group != *h.group() {
        return Err(Error::Evaluation(
            "the diagram is colored by a different group than the algebra's".into(),
        ));
    }
    Ok(())
}

/// Right-multiply by `coef * e_j` of grade `b`, accumulating into `out`.
fn mul_basis_into(
    h: &HopfGAlgebra,
    out: &mut GradedVector,
    v: &GradedVector,
    b: GroupElement,
    j: usize,
    coef: &CycloScalar,
) {
    for (i, c) in &v.entries {
        let cc = c * coef;
        for (t, e) in h.product_constants(v.grade, b, *i, j) {
            out.add_term(*t, &(&cc * e));
        }
    }
}

/// The bracket `<L, rho>` before normalization.
pub fn bracket(h: &HopfGAlgebra, integrals: &IntegralData, cd: &ColoredDiagram) -> Result<CycloScalar> {
    check_preconditions(h, integrals, cd)?;
    let d = &cd.diagram;
    let one = h.one_grade();
    let zero = h.scalar_zero();
    let mut prefactor = h.scalar_one();

    for (i, dot) in d.dotted.iter().enumerate() {
        let lam = integrals.big_lambda(cd.colors[i]);
        if lam.is_zero() {
            return Ok(zero);
        }
        if dot.passages.is_empty() {
            let e = h.eval_counit(lam);
            if !e.is_one() {
                return Err(Error::Evaluation(format!(
                    "counit of the integral of color {} is {e}, expected 1",
                    cd.group.name(cd.colors[i])
                )));
            }
            prefactor = &prefactor * &e;
        }
    }

    let slots = SlotAssignment::new(d);
    let r = h.rmatrix();
    let r_inv = h.rmatrix_inverse();
    let mut expanded = Vec::with_capacity(slots.sources.len());
    for src in &slots.sources {
        let t = match *src {
            Source::Dot(i) => {
                let dot = &d.dotted[i];
                let mut t = h.apply_coproduct_power(integrals.big_lambda(cd.colors[i]), dot.passages.len())?;
                for (f, &(u, pos)) in dot.passages.iter().enumerate() {
                    if d.passage_direction(u, pos) == Some(Direction::Up) {
                        t = h.tensor_antipode(&t, f);
                    }
                }
                t
            }
            Source::Crossing(c) => match d.crossing_sign(c) {
                Sign::Positive => r.clone(),
                Sign::Negative => r_inv.clone(),
            },
        };
        expanded.push(Expanded {
            grades: t.grades.clone(),
            terms: t
                .entries
                .into_iter()
                .map(|(idx, c)| (idx.into_iter().map(|x| x as u32).collect(), c))
                .collect(),
        });
    }
    let mut offsets = Vec::with_capacity(expanded.len());
    let mut width = 0;
    for e in &expanded {
        offsets.push(width);
        width += e.grades.len();
    }

    let mut opened = vec![false; expanded.len()];
    let mut states: BTreeMap<Vec<u32>, CycloScalar> = BTreeMap::new();
    states.insert(vec![OPEN; width], prefactor);

    for (u, comp) in slots.components.iter().enumerate() {
        if comp.is_empty() {
            let l1 = integrals.eval_lambda(&h.unit())?;
            for v in states.values_mut() {
                *v = &*v * &l1;
            }
            continue;
        }
        let unit = h.unit();
        let mut running: BTreeMap<Vec<u32>, GradedVector> =
            states.into_iter().map(|(k, c)| (k, unit.scale(&c))).collect();
        for slot in comp {
            let src = &expanded[slot.source];
            let off = offsets[slot.source];
            let b = src.grades[slot.factor];
            let first = !opened[slot.source];
            opened[slot.source] = true;
            let mut next: BTreeMap<Vec<u32>, GradedVector> = BTreeMap::new();
            for (key, v) in running {
                let grade = cd.group.mul(v.grade, b);
                if first {
                    for (idx, c) in &src.terms {
                        let mut k2 = key.clone();
                        for (f, &x) in idx.iter().enumerate() {
                            if f != slot.factor {
                                k2[off + f] = x;
                            }
                        }
                        let out = next.entry(k2).or_insert_with(|| GradedVector::zero(grade));
                        mul_basis_into(h, out, &v, b, idx[slot.factor] as usize, c);
                    }
                } else {
                    let j = key[off + slot.factor];
                    debug_assert_ne!(j, OPEN);
                    let mut k2 = key;
                    k2[off + slot.factor] = OPEN;
                    let out = next.entry(k2).or_insert_with(|| GradedVector::zero(grade));
                    mul_basis_into(h, out, &v, b, j as usize, &h.scalar_one());
                }
            }
            next.retain(|_, v| !v.is_zero());
            running = next;
        }
        states = BTreeMap::new();
        for (key, v) in running {
            if v.grade != one {
                return Err(Error::Evaluation(format!(
                    "undotted component {u} multiplies to grade {} instead of the identity",
                    cd.group.name(v.grade)
                )));
            }
            let s = integrals.eval_lambda(&v)?;
            let slot = states.entry(key).or_insert_with(|| zero.clone());
            *slot = &*slot + &s;
        }
    }
    Ok(states.into_values().fold(zero, |acc, c| &acc + &c))
}

pub fn evaluate(h: &HopfGAlgebra, integrals: &IntegralData, cd: &ColoredDiagram) -> Result<InvariantValue> {
    let bracket = bracket(h, integrals, cd)?;
    let d = &cd.diagram;
    let exponent = d.dotted.len() as i64 - d.undotted.len() as i64;
    let dim1 = CycloScalar::from_int(h.conductor(), h.dim(h.one_grade()) as i64);
    let value = &bracket * &dim1.powi(exponent)?;
    Ok(InvariantValue {
        value,
        bracket,
        exponent,
    })
}

/// Sum over every homomorphism from the diagram's group to `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummedInvariant {
    pub total: CycloScalar,
    /// In the lexicographic order of the homomorphism enumeration.
    pub per_connection: Vec<(GroupHom, InvariantValue)>,
}

/// Connections are evaluated in parallel and summed in enumeration order,
/// so the result does not depend on the number of worker threads.
pub fn evaluate_summed(h: &HopfGAlgebra, integrals: &IntegralData, d: &KirbyDiagram) -> Result<SummedInvariant> {
    d.validate().into_result()?;
    let g = h.group();
    let homs = enumerate_homs(&d.fundamental_presentation(), g);
    let values: Vec<Result<InvariantValue>> = homs
        .par_iter()
        .map(|hom| evaluate(h, integrals, &d.color(g, hom)?))
        .collect();
    let mut total = h.scalar_zero();
    let mut per_connection = Vec::with_capacity(homs.len());
    for (hom, v) in homs.into_iter().zip(values) {
        let v = v?;
        total = &total + &v.value;
        per_connection.push((hom, v));
    }
    Ok(SummedInvariant { total, per_connection })
}

/// Reverse the orientation of one undotted component.
pub fn reorient(cd: &ColoredDiagram, component: usize) -> Result<ColoredDiagram> {
    apply_move(cd, &MoveSpec::Reorient { component })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedSumReport {
    pub left: InvariantValue,
    pub right: InvariantValue,
    pub combined: InvariantValue,
    pub product: CycloScalar,
    pub equal: bool,
}

/// Compare the value on the side-by-side diagram against the product of
/// the values on the two summands.
pub fn connected_sum_check(
    h: &HopfGAlgebra,
    integrals: &IntegralData,
    a: &KirbyDiagram,
    b: &KirbyDiagram,
    hom_a: &GroupHom,
    hom_b: &GroupHom,
) -> Result<ConnectedSumReport> {
    let g = h.group();
    let left = evaluate(h, integrals, &a.color(g, hom_a)?)?;
    let right = evaluate(h, integrals, &b.color(g, hom_b)?)?;
    let joined = GroupHom {
        images: hom_a.images.iter().chain(&hom_b.images).copied().collect(),
    };
    let combined = evaluate(h, integrals, &connected_sum(a, b).color(g, &joined)?)?;
    let product = &left.value * &right.value;
    let equal = product == combined.value;
    Ok(ConnectedSumReport {
        left,
        right,
        combined,
        product,
        equal,
    })
}

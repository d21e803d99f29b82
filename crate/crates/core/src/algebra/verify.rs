//! Exhaustive axiom checks over basis tuples.

use std::fmt;

use serde::Serialize;

use super::{GradedTensor, GradedVector, HopfGAlgebra};
use crate::group::GroupElement;

/// Outcome of one axiom family.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub passed: bool,
    /// First violating basis tuple with both sides, in deterministic order.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, id: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            writeln!(f, "{:<6} {:<5} {}", c.id, status, c.description)?;
            if let Some(w) = &c.witness {
                writeln!(f, "       witness: {w}")?;
            }
        }
        Ok(())
    }
}

fn vec_witness(ctx: String, lhs: &GradedVector, rhs: &GradedVector) -> Option<String> {
    (lhs != rhs).then(|| format!("{ctx}: lhs = {lhs}; rhs = {rhs}"))
}

fn tensor_witness(ctx: String, lhs: &GradedTensor, rhs: &GradedTensor) -> Option<String> {
    (lhs != rhs).then(|| format!("{ctx}: lhs = {lhs}; rhs = {rhs}"))
}

struct Checker<'a> {
    h: &'a HopfGAlgebra,
    checks: Vec<AxiomCheck>,
}

impl<'a> Checker<'a> {
    fn run(&mut self, id: &'static str, description: &'static str, f: impl FnOnce(&HopfGAlgebra) -> Option<String>) {
        let witness = f(self.h);
        self.checks.push(AxiomCheck {
            id,
            description,
            passed: witness.is_none(),
            witness,
        });
    }
}

fn grades(h: &HopfGAlgebra) -> Vec<GroupElement> {
    h.group().elements().filter(|&a| h.dim(a) > 0).collect()
}

fn basis(h: &HopfGAlgebra, a: GroupElement) -> impl Iterator<Item = (usize, GradedVector)> + '_ {
    (0..h.dim(a)).map(move |i| (i, h.basis_vector(a, i)))
}

/// Check every Hopf G-algebra, crossing, R-matrix and involutivity axiom
/// on all basis tuples, plus the Yang-Baxter equation and invertibility of R.
pub fn verify_axioms(h: &HopfGAlgebra) -> AxiomReport {
    let mut c = Checker { h, checks: Vec::new() };
    let gs = grades(h);
    let g = h.group();

    c.run("HG1", "associativity of m", |h| {
        for &a in &gs {
            for &b in &gs {
                for &cc in &gs {
                    for (i, x) in basis(h, a) {
                        for (j, y) in basis(h, b) {
                            let xy = h.multiply(&x, &y);
                            for (k, z) in basis(h, cc) {
                                let lhs = h.multiply(&xy, &z);
                                let rhs = h.multiply(&x, &h.multiply(&y, &z));
                                let ctx = format!("grades ({},{},{}) basis ({i},{j},{k})", a.0, b.0, cc.0);
                                if let Some(w) = vec_witness(ctx, &lhs, &rhs) {
                                    return Some(w);
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    });

    c.run("HG2", "unit law", |h| {
        let one = h.unit();
        for &a in &gs {
            for (i, x) in basis(h, a) {
                let ctx = format!("grade {} basis {i}", a.0);
                if let Some(w) = vec_witness(ctx.clone() + " (1x)", &h.multiply(&one, &x), &x) {
                    return Some(w);
                }
                if let Some(w) = vec_witness(ctx + " (x1)", &h.multiply(&x, &one), &x) {
                    return Some(w);
                }
            }
        }
        None
    });

    c.run("HG3", "coassociativity of Delta", |h| {
        for &a in &gs {
            for (i, x) in basis(h, a) {
                let d = h.apply_coproduct(&x);
                let lhs = h.tensor_coproduct(&d, 0);
                let rhs = h.tensor_coproduct(&d, 1);
                if let Some(w) = tensor_witness(format!("grade {} basis {i}", a.0), &lhs, &rhs) {
                    return Some(w);
                }
            }
        }
        None
    });

    c.run("HG4", "counit law", |h| {
        for &a in &gs {
            for (i, x) in basis(h, a) {
                let d = h.apply_coproduct(&x);
                let xt = GradedTensor::from_vector(&x);
                for pos in 0..2 {
                    let lhs = h.tensor_counit(&d, pos);
                    if let Some(w) = tensor_witness(format!("grade {} basis {i} counit on leg {pos}", a.0), &lhs, &xt) {
                        return Some(w);
                    }
                }
            }
        }
        None
    });

    c.run("HG5", "Delta is multiplicative", |h| {
        for &a in &gs {
            for &b in &gs {
                for (i, x) in basis(h, a) {
                    let dx = h.apply_coproduct(&x);
                    for (j, y) in basis(h, b) {
                        let lhs = h.apply_coproduct(&h.multiply(&x, &y));
                        let rhs = h.tensor_multiply(&dx, &h.apply_coproduct(&y)).ok()?;
                        let ctx = format!("grades ({},{}) basis ({i},{j})", a.0, b.0);
                        if let Some(w) = tensor_witness(ctx, &lhs, &rhs) {
                            return Some(w);
                        }
                    }
                }
            }
        }
        None
    });

    c.run("HG6", "epsilon is multiplicative", |h| {
        for &a in &gs {
            for &b in &gs {
                for (i, x) in basis(h, a) {
                    for (j, y) in basis(h, b) {
                        let lhs = h.eval_counit(&h.multiply(&x, &y));
                        let rhs = &h.eval_counit(&x) * &h.eval_counit(&y);
                        if lhs != rhs {
                            return Some(format!(
                                "grades ({},{}) basis ({i},{j}): lhs = {lhs}; rhs = {rhs}",
                                a.0, b.0
                            ));
                        }
                    }
                }
            }
        }
        None
    });

    c.run("HG7", "Delta(1) = 1 (x) 1", |h| {
        tensor_witness("unit".into(), &h.apply_coproduct(&h.unit()), &h.unit_tensor(2))
    });

    c.run("HG8", "epsilon(1) = 1", |h| {
        let e = h.eval_counit(&h.unit());
        (!e.is_one()).then(|| format!("epsilon(1) = {e}"))
    });

    c.run("HG9", "antipode law", |h| {
        for &a in &gs {
            for (i, x) in basis(h, a) {
                let d = h.apply_coproduct(&x);
                let rhs = h.unit().scale(&h.eval_counit(&x));
                let left = h.tensor_contract(&h.tensor_antipode(&d, 0))?;
                let right = h.tensor_contract(&h.tensor_antipode(&d, 1))?;
                let ctx = format!("grade {} basis {i}", a.0);
                if let Some(w) = vec_witness(ctx.clone() + " S(x1)x2", &left, &rhs) {
                    return Some(w);
                }
                if let Some(w) = vec_witness(ctx + " x1S(x2)", &right, &rhs) {
                    return Some(w);
                }
            }
        }
        None
    });

    c.run("INV", "involutory: S_{a^-1} S_a = id", |h| {
        for &a in &gs {
            for (i, x) in basis(h, a) {
                let ssx = h.apply_antipode(&h.apply_antipode(&x));
                if let Some(w) = vec_witness(format!("grade {} basis {i}", a.0), &ssx, &x) {
                    return Some(w);
                }
            }
        }
        None
    });

    c.run("CHG1", "crossing is a coalgebra isomorphism", |h| {
        for &b in &gs_all(h) {
            for &a in &gs {
                for (i, x) in basis(h, a) {
                    let px = h.apply_crossing(b, &x);
                    let ctx = format!("beta {} grade {} basis {i}", b.0, a.0);
                    let lhs = h.apply_coproduct(&px);
                    let d = h.apply_coproduct(&x);
                    let rhs = h.tensor_crossing(&h.tensor_crossing(&d, 0, b), 1, b);
                    if let Some(w) = tensor_witness(ctx.clone() + " Delta", &lhs, &rhs) {
                        return Some(w);
                    }
                    let (e1, e2) = (h.eval_counit(&px), h.eval_counit(&x));
                    if e1 != e2 {
                        return Some(format!("{ctx} epsilon: lhs = {e1}; rhs = {e2}"));
                    }
                    let back = h.apply_crossing(g.inv(b), &px);
                    if let Some(w) = vec_witness(ctx + " inverse", &back, &x) {
                        return Some(w);
                    }
                }
            }
        }
        None
    });

    c.run("CHG2", "crossing is multiplicative", |h| {
        for &b in &gs_all(h) {
            for &a in &gs {
                for &cc in &gs {
                    for (i, x) in basis(h, a) {
                        for (j, y) in basis(h, cc) {
                            let lhs = h.multiply(&h.apply_crossing(b, &x), &h.apply_crossing(b, &y));
                            let rhs = h.apply_crossing(b, &h.multiply(&x, &y));
                            let ctx = format!("beta {} grades ({},{}) basis ({i},{j})", b.0, a.0, cc.0);
                            if let Some(w) = vec_witness(ctx, &lhs, &rhs) {
                                return Some(w);
                            }
                        }
                    }
                }
            }
        }
        None
    });

    c.run("CHG3", "crossing fixes 1", |h| {
        for &b in &gs_all(h) {
            if let Some(w) = vec_witness(format!("beta {}", b.0), &h.apply_crossing(b, &h.unit()), &h.unit()) {
                return Some(w);
            }
        }
        None
    });

    c.run("CHG4", "crossing is a group action", |h| {
        for &b in &gs_all(h) {
            for &b2 in &gs_all(h) {
                for &a in &gs {
                    for (i, x) in basis(h, a) {
                        let lhs = h.apply_crossing(g.mul(b, b2), &x);
                        let rhs = h.apply_crossing(b, &h.apply_crossing(b2, &x));
                        let ctx = format!("beta ({},{}) grade {} basis {i}", b.0, b2.0, a.0);
                        if let Some(w) = vec_witness(ctx, &lhs, &rhs) {
                            return Some(w);
                        }
                    }
                }
            }
        }
        None
    });

    let r = h.rmatrix();
    let r12 = h.tensor_leg(&r, &[0, 1], 3);
    let r13 = h.tensor_leg(&r, &[0, 2], 3);
    let r23 = h.tensor_leg(&r, &[1, 2], 3);

    c.run("QHG1", "(Delta (x) id)(R) = R13 R23", |h| {
        let lhs = h.tensor_coproduct(&r, 0);
        let rhs = h.tensor_multiply(&r13, &r23).ok()?;
        tensor_witness("R".into(), &lhs, &rhs)
    });

    c.run("QHG2", "(id (x) Delta)(R) = R13 R12", |h| {
        let lhs = h.tensor_coproduct(&r, 1);
        let rhs = h.tensor_multiply(&r13, &r12).ok()?;
        tensor_witness("R".into(), &lhs, &rhs)
    });

    c.run("QHG3", "R Delta(x) = Delta^cop(x) R", |h| {
        for &a in &gs {
            for (i, x) in basis(h, a) {
                let d = h.apply_coproduct(&x);
                let lhs = h.tensor_multiply(&r, &d).ok()?;
                let rhs = h.tensor_multiply(&d.permute(&[1, 0]), &r).ok()?;
                if let Some(w) = tensor_witness(format!("grade {} basis {i}", a.0), &lhs, &rhs) {
                    return Some(w);
                }
            }
        }
        None
    });

    c.run("QHG4", "(phi_b (x) phi_b)(R) = R", |h| {
        for &b in &gs_all(h) {
            let lhs = h.tensor_crossing(&h.tensor_crossing(&r, 0, b), 1, b);
            if let Some(w) = tensor_witness(format!("beta {}", b.0), &lhs, &r) {
                return Some(w);
            }
        }
        None
    });

    c.run("QYB", "R12 R13 R23 = R23 R13 R12", |h| {
        let lhs = h.tensor_multiply(&h.tensor_multiply(&r12, &r13).ok()?, &r23).ok()?;
        let rhs = h.tensor_multiply(&h.tensor_multiply(&r23, &r13).ok()?, &r12).ok()?;
        tensor_witness("R".into(), &lhs, &rhs)
    });

    c.run("RINV", "(S (x) id)(R) is a two-sided inverse of R", |h| {
        let rinv = h.rmatrix_inverse();
        let one = h.unit_tensor(2);
        let left = h.tensor_multiply(&rinv, &r).ok()?;
        if let Some(w) = tensor_witness("R^-1 R".into(), &left, &one) {
            return Some(w);
        }
        let right = h.tensor_multiply(&r, &rinv).ok()?;
        tensor_witness("R R^-1".into(), &right, &one)
    });

    AxiomReport { checks: c.checks }
}

/// Crossing indices range over the whole group, not just the support.
fn gs_all(h: &HopfGAlgebra) -> Vec<GroupElement> {
    h.group().elements().collect()
}

//! G-integrals `(Lambda_a)` and the dual integral `lambda` on `H_1`.

use super::{GradedVector, HopfGAlgebra};
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{nullspace, solve_affine};

/// Normalized integrals: `eps_1(Lambda_1) = 1` and `lambda(Lambda_1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralData {
    one: GroupElement,
    /// `Lambda_a` per grade index (zero for zero grades).
    big_lambda: Vec<GradedVector>,
    /// `lambda(e_i)` for the basis of `H_1`.
    lambda: Vec<CycloScalar>,
    normalized: bool,
}

impl IntegralData {
    pub fn big_lambda(&self, a: GroupElement) -> &GradedVector {
        &self.big_lambda[a.0]
    }

    pub fn lambda_coeffs(&self) -> &[CycloScalar] {
        &self.lambda
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `lambda(x)`; `x` must lie in `H_1`.
    pub fn eval_lambda(&self, x: &GradedVector) -> Result<CycloScalar> {
        if x.grade != self.one {
            return Err(Error::Grading(format!(
                "lambda evaluated on grade {} instead of the identity grade",
                x.grade.0
            )));
        }
        let cond = self.lambda.first().map(|c| c.conductor()).unwrap_or(1);
        Ok(x.entries
            .iter()
            .fold(CycloScalar::zero(cond), |acc, (i, c)| &acc + &(c * &self.lambda[*i])))
    }
}

fn vec_from(a: GroupElement, coeffs: &[CycloScalar]) -> GradedVector {
    let mut v = GradedVector::zero(a);
    for (i, c) in coeffs.iter().enumerate() {
        v.add_term(i, c);
    }
    v
}

/// Solve for the normalized integrals of a verified algebra.
pub fn solve_integrals(h: &HopfGAlgebra) -> Result<IntegralData> {
    let g = h.group();
    let one = g.identity();
    let d = h.dim(one);
    let cond = h.conductor();
    if d == 0 {
        return Err(Error::Integral("H_1 is zero".into()));
    }
    let zero = CycloScalar::zero(cond);

    // Lambda_1: x L = eps(x) L and L x = eps(x) L for all basis x of H_1.
    let mut rows = Vec::new();
    for i in 0..d {
        let eps = h.counit_constant(one, i).clone();
        for left in [true, false] {
            let mut block = vec![vec![zero.clone(); d]; d];
            for t in 0..d {
                let consts = if left {
                    h.product_constants(one, one, i, t)
                } else {
                    h.product_constants(one, one, t, i)
                };
                for (s, c) in consts {
                    block[*s][t] = &block[*s][t] + c;
                }
                block[t][t] = &block[t][t] - &eps;
            }
            rows.extend(block);
        }
    }
    let ns = nullspace(rows, d, cond)?;
    if ns.len() != 1 {
        return Err(Error::Integral(format!(
            "space of two-sided integrals of H_1 has dimension {} (expected 1)",
            ns.len()
        )));
    }
    let mut l1 = vec_from(one, &ns[0]);
    let eps_l1 = h.eval_counit(&l1);
    if eps_l1.is_zero() {
        return Err(Error::Integral(
            "non-normalizable (non-semisimple-like) algebra: eps_1(Lambda_1) = 0".into(),
        ));
    }
    l1 = l1.scale(&eps_l1.inv()?);

    // lambda: (id (x) lambda) Delta(x) = lambda(x) 1 and the mirror law.
    let unit = h.unit();
    let mut rows = Vec::new();
    for i in 0..d {
        let delta = h.coproduct_constants(one, i);
        for left in [true, false] {
            let mut block = vec![vec![zero.clone(); d]; d];
            for ((a, b), c) in delta {
                let (out, var) = if left { (*a, *b) } else { (*b, *a) };
                block[out][var] = &block[out][var] + c;
            }
            for (s, u) in &unit.entries {
                block[*s][i] = &block[*s][i] - u;
            }
            rows.extend(block);
        }
    }
    let ns = nullspace(rows, d, cond)?;
    if ns.len() != 1 {
        return Err(Error::Integral(format!(
            "space of two-sided integrals of H_1* has dimension {} (expected 1)",
            ns.len()
        )));
    }
    let mut lambda = ns.into_iter().next().unwrap();
    let pairing = l1
        .entries
        .iter()
        .fold(zero.clone(), |acc, (i, c)| &acc + &(c * &lambda[*i]));
    if pairing.is_zero() {
        return Err(Error::Integral("lambda(Lambda_1) = 0; cannot normalize".into()));
    }
    let inv = pairing.inv()?;
    lambda.iter_mut().for_each(|c| *c = &*c * &inv);

    // Propagate: x Lambda_1 = eps_a(x) Lambda_a for any basis x of H_a.
    let mut big = Vec::with_capacity(g.order());
    for a in g.elements() {
        if a == one {
            big.push(l1.clone());
            continue;
        }
        if h.dim(a) == 0 {
            big.push(GradedVector::zero(a));
            continue;
        }
        let witness = (0..h.dim(a)).find(|&i| !h.counit_constant(a, i).is_zero());
        let la = match witness {
            Some(i) => {
                let x = h.basis_vector(a, i);
                h.multiply(&x, &l1).scale(&h.counit_constant(a, i).inv()?)
            }
            None => solve_grade_directly(h, a, &l1)?,
        };
        big.push(la);
    }

    let data = IntegralData {
        one,
        big_lambda: big,
        lambda,
        normalized: true,
    };
    check_integral_laws(h, &data)?;
    Ok(data)
}

/// Fallback when `eps_a` vanishes on every basis vector: solve
/// `y L_a = eps(y) L_a` (y in `H_1`) and `x L_a = eps(x) L_1` (x in `H_{a^-1}`).
fn solve_grade_directly(h: &HopfGAlgebra, a: GroupElement, l1: &GradedVector) -> Result<GradedVector> {
    let g = h.group();
    let one = g.identity();
    let da = h.dim(a);
    let cond = h.conductor();
    let zero = CycloScalar::zero(cond);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..h.dim(one) {
        let eps = h.counit_constant(one, i).clone();
        let mut block = vec![vec![zero.clone(); da]; da];
        for t in 0..da {
            for (s, c) in h.product_constants(one, a, i, t) {
                block[*s][t] = &block[*s][t] + c;
            }
            block[t][t] = &block[t][t] - &eps;
        }
        rhs.extend(std::iter::repeat_n(zero.clone(), da));
        rows.extend(block);
    }
    let ainv = g.inv(a);
    let d1 = h.dim(one);
    for i in 0..h.dim(ainv) {
        let eps = h.counit_constant(ainv, i).clone();
        let mut block = vec![vec![zero.clone(); da]; d1];
        for t in 0..da {
            for (s, c) in h.product_constants(ainv, a, i, t) {
                block[*s][t] = &block[*s][t] + c;
            }
        }
        let target = l1.scale(&eps);
        for s in 0..d1 {
            rhs.push(target.entries.get(&s).cloned().unwrap_or_else(|| zero.clone()));
        }
        rows.extend(block);
    }
    match solve_affine(rows, rhs, da, cond)? {
        Some((p, ns)) if ns.is_empty() => Ok(vec_from(a, &p)),
        Some((_, ns)) => Err(Error::Integral(format!(
            "grade {} integral not unique ({}-dimensional family)",
            a.0,
            ns.len() + 1
        ))),
        None => Err(Error::Integral(format!(
            "grade {} integral system is inconsistent",
            a.0
        ))),
    }
}

/// Re-verify the two-sided G-integral law on all grades and basis vectors.
fn check_integral_laws(h: &HopfGAlgebra, data: &IntegralData) -> Result<()> {
    let g = h.group();
    for a in g.elements() {
        for b in g.elements() {
            let ab = g.mul(a, b);
            for i in 0..h.dim(a) {
                let x = h.basis_vector(a, i);
                let lhs = h.multiply(&x, data.big_lambda(b));
                let rhs = data.big_lambda(ab).scale(h.counit_constant(a, i));
                if lhs != rhs {
                    return Err(Error::Integral(format!(
                        "left G-integral law fails for grades ({},{}) basis {i}",
                        a.0, b.0
                    )));
                }
            }
            for j in 0..h.dim(b) {
                let y = h.basis_vector(b, j);
                let lhs = h.multiply(data.big_lambda(a), &y);
                let rhs = data.big_lambda(ab).scale(h.counit_constant(b, j));
                if lhs != rhs {
                    return Err(Error::Integral(format!(
                        "right G-integral law fails for grades ({},{}) basis {j}",
                        a.0, b.0
                    )));
                }
            }
        }
    }
    Ok(())
}

//! The Drinfeld element `u = m (S (x) id) R_21` of `H_1`.

use super::{GradedVector, HopfGAlgebra};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldData {
    pub u: GradedVector,
    pub u_inv: GradedVector,
}

/// Compute `u = sum S(b_i) a_i` and `u^-1 = sum b_i S^2(a_i)` for
/// `R = sum a_i (x) b_i`, then confirm the expected identities.
pub fn drinfeld_element(h: &HopfGAlgebra) -> Result<DrinfeldData> {
    let one = h.one_grade();
    let r = h.rmatrix();
    let mut u = GradedVector::zero(one);
    let mut u_inv = GradedVector::zero(one);
    for (idx, c) in &r.entries {
        let a = h.basis_vector(one, idx[0]);
        let b = h.basis_vector(one, idx[1]);
        u.add_scaled(&h.multiply(&h.apply_antipode(&b), &a), c);
        let s2a = h.apply_antipode(&h.apply_antipode(&a));
        u_inv.add_scaled(&h.multiply(&b, &s2a), c);
    }

    let unit = h.unit();
    if h.multiply(&u, &u_inv) != unit || h.multiply(&u_inv, &u) != unit {
        return Err(Error::Ribbon(format!("u u^-1 != 1 for u = {u}")));
    }
    for i in 0..h.dim(one) {
        let x = h.basis_vector(one, i);
        if h.multiply(&u, &x) != h.multiply(&x, &u) {
            return Err(Error::Ribbon(format!("u is not central in H_1 (basis {i})")));
        }
    }
    if h.apply_antipode(&u) != u {
        return Err(Error::Ribbon(format!("S(u) != u for u = {u}")));
    }
    if !h.eval_counit(&u).is_one() {
        return Err(Error::Ribbon(format!("eps(u) != 1 for u = {u}")));
    }
    Ok(DrinfeldData { u, u_inv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{build_cyclic, build_kac_paljutkin, CyclicParams};
    use crate::cyclo::CycloScalar;

    #[test]
    fn cyclic_u_is_sum_of_idempotents() {
        // u = sum_a w^{-d a^2} E_a with E_a = (1/l) sum_i w^{-ia} g^{ik}
        let (k, l, d) = (1, 3, 1);
        let h = build_cyclic(CyclicParams { k, l, d }).unwrap();
        let data = drinfeld_element(&h).unwrap();
        let one = h.one_grade();
        let mut expected = GradedVector::zero(one);
        for a in 0..l {
            for i in 0..l {
                let e = -((d * a * a + i * a) as i64);
                let w = CycloScalar::root_of_unity(l as u32, e);
                expected.add_term(i, &(&w * &CycloScalar::from_frac(1, 1, l as i64)));
            }
        }
        assert_eq!(data.u, expected);
    }

    #[test]
    fn kac_paljutkin_u() {
        let h = build_kac_paljutkin();
        let data = drinfeld_element(&h).unwrap();
        let half = CycloScalar::from_frac(4, 1, 2);
        let mut expected = GradedVector::zero(h.one_grade());
        expected.add_term(0, &half);
        expected.add_term(1, &half);
        expected.add_term(2, &half);
        expected.add_term(3, &-&half);
        assert_eq!(data.u, expected);
    }
}

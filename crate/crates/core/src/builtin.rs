//! The cyclic family over `Z_k` and the Kac-Paljutkin algebra over `Z_2`.

use crate::algebra::{HopfGAlgebra, Sparse, Sparse2, StructureMaps};
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// `m = k l`; grade `alpha^p` has basis `g^{ik+p}`, `i < l`; `R_d` selector `d < l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicParams {
    pub k: usize,
    pub l: usize,
    pub d: usize,
}

impl CyclicParams {
    pub fn m(&self) -> usize {
        self.k * self.l
    }

    /// `(grade, basis index)` of `g^e`.
    fn locate(&self, e: i64) -> (usize, usize) {
        let e = e.rem_euclid(self.m() as i64) as usize;
        (e % self.k, e / self.k)
    }
}

pub fn build_cyclic(p: CyclicParams) -> Result<HopfGAlgebra> {
    let CyclicParams { k, l, d } = p;
    if k == 0 || l == 0 {
        return Err(Error::Parameter(format!(
            "cyclic algebra needs k, l >= 1 (got k={k}, l={l})"
        )));
    }
    if d >= l {
        return Err(Error::Parameter(format!("R-matrix selector d={d} must be below l={l}")));
    }
    let group = FiniteGroup::cyclic(k)?;
    let cond = l as u32;
    let one = CycloScalar::one(cond);
    let mut maps = StructureMaps::empty(&group, cond, vec![l; k]);
    let exp = |q: usize, i: usize| (i * k + q) as i64;

    for a in 0..k {
        for b in 0..k {
            for i in 0..l {
                for j in 0..l {
                    let (_, t) = p.locate(exp(a, i) + exp(b, j));
                    maps.product[a * k + b][i * l + j] = vec![(t, one.clone())];
                }
            }
        }
        for i in 0..l {
            maps.coproduct[a][i] = vec![((i, i), one.clone())];
            maps.counit[a][i] = one.clone();
            let (_, t) = p.locate(-exp(a, i));
            maps.antipode[a][i] = vec![(t, one.clone())];
        }
    }
    for ba in 0..k * k {
        for i in 0..l {
            maps.crossing[ba][i] = vec![(i, one.clone())];
        }
    }
    maps.unit = vec![(0, one.clone())];
    let inv_l = CycloScalar::from_frac(cond, 1, l as i64);
    let mut r: Sparse2 = Vec::new();
    for i in 0..l {
        for j in 0..l {
            let w = CycloScalar::root_of_unity(cond, -((i * j) as i64));
            r.push(((i, (d * j) % l), &w * &inv_l));
        }
    }
    maps.rmatrix = r;
    HopfGAlgebra::new(group, maps)
}

// H_8 monomials x^a y^b z^c are indexed by a + 2b + 4c.

fn h8_mul(u: usize, v: usize) -> Vec<(usize, i64, i64)> {
    let (a, b, c) = (u & 1, (u >> 1) & 1, u >> 2);
    let (a2, b2, c2) = (v & 1, (v >> 1) & 1, v >> 2);
    if c == 0 {
        return vec![((a ^ a2) + 2 * (b ^ b2) + 4 * c2, 1, 1)];
    }
    // z x^a2 y^b2 = x^b2 y^a2 z
    let (xa, yb) = (a ^ b2, b ^ a2);
    if c2 == 0 {
        return vec![(xa + 2 * yb + 4, 1, 1)];
    }
    // z^2 = (1 + x + y - xy) / 2
    vec![
        (xa + 2 * yb, 1, 2),
        ((xa ^ 1) + 2 * yb, 1, 2),
        (xa + 2 * (yb ^ 1), 1, 2),
        ((xa ^ 1) + 2 * (yb ^ 1), -1, 2),
    ]
}

fn h8_coproduct(u: usize) -> Vec<((usize, usize), i64, i64)> {
    if u < 4 {
        return vec![((u, u), 1, 1)];
    }
    // (m (x) m)(1(x)1 + 1(x)x + y(x)1 - y(x)x)(z (x) z) / 2
    let m = u & 3;
    vec![
        ((m | 4, m | 4), 1, 2),
        ((m | 4, (m ^ 1) | 4), 1, 2),
        (((m ^ 2) | 4, m | 4), 1, 2),
        (((m ^ 2) | 4, (m ^ 1) | 4), -1, 2),
    ]
}

/// `mu(h) = x h x^-1`: fixes `x, y` and sends `z` to `xyz`.
fn h8_mu(u: usize) -> usize {
    if u < 4 {
        u
    } else {
        u ^ 3
    }
}

/// `S(x^a y^b z) = z x^a y^b = x^b y^a z`.
fn h8_antipode(u: usize) -> usize {
    if u < 4 {
        u
    } else {
        4 + ((u & 1) << 1) + ((u >> 1) & 1)
    }
}

pub fn build_kac_paljutkin() -> HopfGAlgebra {
    let group = FiniteGroup::cyclic(2).expect("Z_2 is a group");
    let cond = 4;
    let q = |num: i64, den: i64| CycloScalar::from_frac(cond, num, den);
    let one = q(1, 1);
    let twist = |alpha: usize, u: usize| if alpha == 1 { h8_mu(u) } else { u };
    let mut maps = StructureMaps::empty(&group, cond, vec![8, 8]);
    for a in 0..2 {
        for b in 0..2 {
            for i in 0..8 {
                for j in 0..8 {
                    let s: Sparse = h8_mul(i, twist(a, j))
                        .into_iter()
                        .map(|(t, n, d)| (t, q(n, d)))
                        .collect();
                    maps.product[a * 2 + b][i * 8 + j] = s;
                }
            }
        }
        for i in 0..8 {
            maps.coproduct[a][i] = h8_coproduct(i).into_iter().map(|(t, n, d)| (t, q(n, d))).collect();
            maps.counit[a][i] = one.clone();
            maps.antipode[a][i] = vec![(twist(a, h8_antipode(i)), one.clone())];
        }
    }
    for b in 0..2 {
        for a in 0..2 {
            for i in 0..8 {
                maps.crossing[b * 2 + a][i] = vec![(twist(b, i), one.clone())];
            }
        }
    }
    maps.unit = vec![(0, one.clone())];
    maps.rmatrix = vec![
        ((0, 0), q(1, 2)),
        ((1, 0), q(1, 2)),
        ((0, 2), q(1, 2)),
        ((1, 2), q(-1, 2)),
    ];
    HopfGAlgebra::new(group, maps).expect("Kac-Paljutkin constants are well formed")
}

/// Parse `cyclic:k=K,l=L,d=D` (keys in any order) or `kac-paljutkin`.
pub fn builtin_algebra(name: &str) -> Result<HopfGAlgebra> {
    let name = name.trim();
    if name == "kac-paljutkin" {
        return Ok(build_kac_paljutkin());
    }
    let Some(rest) = name.strip_prefix("cyclic:") else {
        return Err(Error::Parse(format!("unknown builtin algebra `{name}`")));
    };
    let (mut k, mut l, mut d) = (None, None, None);
    for part in rest.split(',') {
        let (key, val) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value in `{part}`")))?;
        let v: usize = val
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad value `{val}` for `{key}`")))?;
        let slot = match key.trim() {
            "k" => &mut k,
            "l" => &mut l,
            "d" => &mut d,
            other => return Err(Error::Parse(format!("unknown cyclic parameter `{other}`"))),
        };
        if slot.replace(v).is_some() {
            return Err(Error::Parse(format!("parameter `{key}` given twice")));
        }
    }
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Error::Parse(format!("missing parameter `{name}`")));
    build_cyclic(CyclicParams {
        k: need(k, "k")?,
        l: need(l, "l")?,
        d: need(d, "d")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{verify_axioms, GradedVector};
    use crate::group::GroupElement;

    fn kp_vec(h: &HopfGAlgebra, grade: usize, terms: &[(usize, i64, i64)]) -> GradedVector {
        let mut v = GradedVector::zero(GroupElement(grade));
        for (i, n, d) in terms {
            v.add_term(*i, &CycloScalar::from_frac(h.conductor(), *n, *d));
        }
        v
    }

    #[test]
    fn cyclic_product_exponents() {
        let p = CyclicParams { k: 2, l: 3, d: 1 };
        let h = build_cyclic(p).unwrap();
        // g^{2+1} g^{4+1} = g^8 = g^2 (m = 6): grade 0, i = 1
        let x = h.basis_vector(GroupElement(1), 1);
        let y = h.basis_vector(GroupElement(1), 2);
        assert_eq!(h.multiply(&x, &y), h.basis_vector(GroupElement(0), 1));
    }

    #[test]
    fn cyclic_antipode_inverts_exponent() {
        let h = build_cyclic(CyclicParams { k: 3, l: 2, d: 0 }).unwrap();
        // g^{3+1} = g^4 in Z_6; inverse g^2 = g^{0*3+2}
        let x = h.basis_vector(GroupElement(1), 1);
        assert_eq!(h.apply_antipode(&x), h.basis_vector(GroupElement(2), 0));
    }

    #[test]
    fn trivial_algebra() {
        let h = build_cyclic(CyclicParams { k: 1, l: 1, d: 0 }).unwrap();
        assert_eq!(h.dims(), &[1]);
        assert!(verify_axioms(&h).all_passed());
    }

    #[test]
    fn d_out_of_range() {
        assert!(matches!(
            build_cyclic(CyclicParams { k: 1, l: 3, d: 3 }),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn kp_z_squared() {
        let h = build_kac_paljutkin();
        let z = h.basis_vector(GroupElement(0), 4);
        let expected = kp_vec(&h, 0, &[(0, 1, 2), (1, 1, 2), (2, 1, 2), (3, -1, 2)]);
        assert_eq!(h.multiply(&z, &z), expected);
    }

    #[test]
    fn kp_mu_of_z() {
        let h = build_kac_paljutkin();
        let z = h.basis_vector(GroupElement(0), 4);
        assert_eq!(
            h.apply_crossing(GroupElement(1), &z),
            h.basis_vector(GroupElement(0), 7)
        );
    }

    #[test]
    fn kp_relations() {
        let h = build_kac_paljutkin();
        let e = |i| h.basis_vector(GroupElement(0), i);
        let (x, y, z) = (e(1), e(2), e(4));
        assert_eq!(h.multiply(&z, &x), h.multiply(&y, &z));
        assert_eq!(h.multiply(&z, &y), h.multiply(&x, &z));
        assert_eq!(h.multiply(&x, &x), h.unit());
        assert_ne!(h.multiply(&x, &z), h.multiply(&z, &x));
    }

    #[test]
    fn kp_not_cocommutative() {
        let h = build_kac_paljutkin();
        let dz = h.apply_coproduct(&h.basis_vector(GroupElement(0), 4));
        assert_ne!(dz, dz.permute(&[1, 0]));
    }

    #[test]
    fn kp_twisted_product_across_grades() {
        let h = build_kac_paljutkin();
        // iota_mu(1) iota_mu(z) = iota_1(mu(z)) = iota_1(xyz)
        let a = h.basis_vector(GroupElement(1), 0);
        let b = h.basis_vector(GroupElement(1), 4);
        assert_eq!(h.multiply(&a, &b), h.basis_vector(GroupElement(0), 7));
    }

    #[test]
    fn parse_names() {
        let h = builtin_algebra("cyclic:l=3,k=2,d=1").unwrap();
        assert_eq!(h.dims(), &[3, 3]);
        assert!(builtin_algebra("cyclic:k=2,l=3").is_err());
        assert!(builtin_algebra("cyclic:k=2,l=3,d=1,d=2").is_err());
        assert!(builtin_algebra("sweedler").is_err());
        assert_eq!(builtin_algebra("kac-paljutkin").unwrap().dims(), &[8, 8]);
    }
}

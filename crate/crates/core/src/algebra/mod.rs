//! Finite type Hopf G-algebras given by structure constants.
//!
//! Every grade `H_a` has a fixed basis `0..dims[a]`. Structure maps are
//! stored densely by basis tuple and sparsely by value.

mod drinfeld;
mod integrals;
pub mod json;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};

pub use drinfeld::{drinfeld_element, DrinfeldData};
pub use integrals::{solve_integrals, IntegralData};
pub use verify::{verify_axioms, AxiomCheck, AxiomReport};

/// Sparse vector: `(basis index, coefficient)` pairs.
pub type Sparse = Vec<(usize, CycloScalar)>;
/// Sparse element of `H_a (x) H_a`.
pub type Sparse2 = Vec<((usize, usize), CycloScalar)>;

/// Element of a single grade `H_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVector {
    pub grade: GroupElement,
    pub entries: BTreeMap<usize, CycloScalar>,
}

impl GradedVector {
    pub fn zero(grade: GroupElement) -> Self {
        GradedVector {
            grade,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(grade: GroupElement, index: usize, conductor: u32) -> Self {
        let mut v = Self::zero(grade);
        v.entries.insert(index, CycloScalar::one(conductor));
        v
    }

    pub fn from_sparse(grade: GroupElement, sparse: &[(usize, CycloScalar)]) -> Self {
        let mut v = Self::zero(grade);
        for (i, c) in sparse {
            v.add_term(*i, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_term(&mut self, index: usize, c: &CycloScalar) {
        add_into(&mut self.entries, index, c);
    }

    pub fn add_scaled(&mut self, other: &GradedVector, c: &CycloScalar) {
        for (i, v) in &other.entries {
            self.add_term(*i, &(v * c));
        }
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        let mut out = Self::zero(self.grade);
        self.entries.iter().for_each(|(i, v)| out.add_term(*i, &(v * c)));
        out
    }

    pub fn sub(&self, other: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        for (i, v) in &other.entries {
            out.add_term(*i, &-v);
        }
        out
    }
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0 [grade {}]", self.grade.0);
        }
        let terms: Vec<String> = self.entries.iter().map(|(i, c)| format!("({c})*e{i}")).collect();
        write!(f, "{} [grade {}]", terms.join(" + "), self.grade.0)
    }
}

/// Element of `H_{a_1} (x) .. (x) H_{a_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTensor {
    pub grades: Vec<GroupElement>,
    pub entries: BTreeMap<Vec<usize>, CycloScalar>,
}

impl GradedTensor {
    pub fn zero(grades: Vec<GroupElement>) -> Self {
        GradedTensor {
            grades,
            entries: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.grades.len()
    }

    pub fn add_term(&mut self, index: Vec<usize>, c: &CycloScalar) {
        add_into(&mut self.entries, index, c);
    }

    /// `x_1 (x) .. (x) x_k`
    pub fn pure(factors: &[&GradedVector]) -> Self {
        let mut out = Self::zero(factors.iter().map(|v| v.grade).collect());
        let mut acc: Vec<(Vec<usize>, Option<CycloScalar>)> = vec![(vec![], None)];
        for f in factors {
            let mut next = Vec::new();
            for (idx, c) in &acc {
                for (i, v) in &f.entries {
                    let mut idx2 = idx.clone();
                    idx2.push(*i);
                    let c2 = match c {
                        Some(c) => c * v,
                        None => v.clone(),
                    };
                    next.push((idx2, Some(c2)));
                }
            }
            acc = next;
        }
        for (idx, c) in acc {
            if let Some(c) = c {
                out.add_term(idx, &c);
            }
        }
        out
    }

    /// Reorder factors: output factor `k` is input factor `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(perm.iter().map(|&p| self.grades[p]).collect());
        for (idx, c) in &self.entries {
            out.add_term(perm.iter().map(|&p| idx[p]).collect(), c);
        }
        out
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        let mut out = Self::zero(self.grades.clone());
        for (idx, v) in &self.entries {
            out.add_term(idx.clone(), &(v * c));
        }
        out
    }

    pub fn add(&self, other: &GradedTensor) -> Self {
        let mut out = self.clone();
        for (idx, v) in &other.entries {
            out.add_term(idx.clone(), v);
        }
        out
    }

    /// Tensor with a single factor.
    pub fn from_vector(v: &GradedVector) -> Self {
        Self::pure(&[v])
    }
}

impl fmt::Display for GradedTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|(idx, c)| {
                let idx: Vec<String> = idx.iter().map(|i| format!("e{i}")).collect();
                format!("({c})*{}", idx.join("(x)"))
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Sort by key, merge duplicate keys and drop zero coefficients.
fn canonicalize<K: Ord + Clone>(s: &mut Vec<(K, CycloScalar)>) {
    let mut map = BTreeMap::new();
    for (k, c) in s.iter() {
        add_into(&mut map, k.clone(), c);
    }
    *s = map.into_iter().collect();
}

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, CycloScalar>, key: K, c: &CycloScalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        Entry::Occupied(mut e) => {
            let v = e.get() + c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

/// Raw structure constants of a Hopf G-algebra.
///
/// Grades are group element indices. `product[a * n + b][i * dims[b] + j]`
/// is `e_i e_j` in `H_{ab}`; `crossing[b * n + a][i]` is `phi_b(e_i)` in
/// `H_{b a b^-1}`; `antipode[a][i]` lives in `H_{a^-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMaps {
    pub conductor: u32,
    pub dims: Vec<usize>,
    pub product: Vec<Vec<Sparse>>,
    pub unit: Sparse,
    pub coproduct: Vec<Vec<Sparse2>>,
    pub counit: Vec<Vec<CycloScalar>>,
    pub antipode: Vec<Vec<Sparse>>,
    pub crossing: Vec<Vec<Sparse>>,
    pub rmatrix: Sparse2,
}

impl StructureMaps {
    /// All-zero maps of the right shapes.
    pub fn empty(group: &FiniteGroup, conductor: u32, dims: Vec<usize>) -> Self {
        let n = group.order();
        let product = (0..n * n)
            .map(|ab| vec![Vec::new(); dims[ab / n] * dims[ab % n]])
            .collect();
        StructureMaps {
            conductor,
            product,
            unit: Vec::new(),
            coproduct: dims.iter().map(|&d| vec![Vec::new(); d]).collect(),
            counit: dims.iter().map(|&d| vec![CycloScalar::zero(conductor); d]).collect(),
            antipode: dims.iter().map(|&d| vec![Vec::new(); d]).collect(),
            crossing: (0..n * n).map(|ba| vec![Vec::new(); dims[ba % n]]).collect(),
            rmatrix: Vec::new(),
            dims,
        }
    }
}

/// A validated finite type Hopf G-algebra with crossing and R-matrix.
#[derive(Clone, Debug)]
pub struct HopfGAlgebra {
    group: FiniteGroup,
    maps: StructureMaps,
}

impl HopfGAlgebra {
    /// Check shapes, index ranges and scalar conductors, and that the
    /// support `{a : dim H_a > 0}` is a subgroup.
    pub fn new(group: FiniteGroup, mut maps: StructureMaps) -> Result<Self> {
        let n = group.order();
        let cond = maps.conductor;
        if cond == 0 {
            return Err(Error::AlgebraLoad("conductor must be positive".into()));
        }
        let dims = maps.dims.clone();
        if dims.len() != n {
            return Err(Error::AlgebraLoad(format!(
                "{} grade dimensions given for a group of order {n}",
                dims.len()
            )));
        }
        let fix = |c: &mut CycloScalar, what: &str| -> Result<()> {
            if !cond.is_multiple_of(c.conductor()) {
                return Err(Error::AlgebraLoad(format!(
                    "{what}: scalar of conductor {} outside Q(zeta_{cond})",
                    c.conductor()
                )));
            }
            *c = c.embed(cond);
            Ok(())
        };
        let check_sparse = |s: &mut Sparse, dim: usize, what: &str| -> Result<()> {
            for (t, c) in s.iter_mut() {
                if *t >= dim {
                    return Err(Error::AlgebraLoad(format!("{what}: target index {t} >= dim {dim}")));
                }
                fix(c, what)?;
            }
            canonicalize(s);
            Ok(())
        };
        let check_sparse2 = |s: &mut Sparse2, d1: usize, d2: usize, what: &str| -> Result<()> {
            for ((t1, t2), c) in s.iter_mut() {
                if *t1 >= d1 || *t2 >= d2 {
                    return Err(Error::AlgebraLoad(format!(
                        "{what}: target ({t1},{t2}) out of range ({d1},{d2})"
                    )));
                }
                fix(c, what)?;
            }
            canonicalize(s);
            Ok(())
        };

        if maps.product.len() != n * n {
            return Err(Error::AlgebraLoad("product must have order^2 blocks".into()));
        }
        for a in group.elements() {
            for b in group.elements() {
                let block = &mut maps.product[a.0 * n + b.0];
                if block.len() != dims[a.0] * dims[b.0] {
                    return Err(Error::AlgebraLoad(format!(
                        "product block ({},{}) has wrong size",
                        a.0, b.0
                    )));
                }
                let target = dims[group.mul(a, b).0];
                for (ij, s) in block.iter_mut().enumerate() {
                    check_sparse(s, target, &format!("product ({},{}) entry {ij}", a.0, b.0))?;
                }
            }
        }
        let one = group.identity().0;
        check_sparse(&mut maps.unit, dims[one], "unit")?;
        let per_grade = |len: usize, what: &str| -> Result<()> {
            if len != n {
                return Err(Error::AlgebraLoad(format!("{what} must have one block per grade")));
            }
            Ok(())
        };
        per_grade(maps.coproduct.len(), "coproduct")?;
        per_grade(maps.counit.len(), "counit")?;
        per_grade(maps.antipode.len(), "antipode")?;
        for a in group.elements() {
            let d = dims[a.0];
            if maps.coproduct[a.0].len() != d || maps.counit[a.0].len() != d || maps.antipode[a.0].len() != d {
                return Err(Error::AlgebraLoad(format!("grade {} maps have wrong size", a.0)));
            }
            for (i, s) in maps.coproduct[a.0].iter_mut().enumerate() {
                check_sparse2(s, d, d, &format!("coproduct grade {} entry {i}", a.0))?;
            }
            for c in maps.counit[a.0].iter_mut() {
                fix(c, "counit")?;
            }
            let dinv = dims[group.inv(a).0];
            for (i, s) in maps.antipode[a.0].iter_mut().enumerate() {
                check_sparse(s, dinv, &format!("antipode grade {} entry {i}", a.0))?;
            }
        }
        if maps.crossing.len() != n * n {
            return Err(Error::AlgebraLoad("crossing must have order^2 blocks".into()));
        }
        for b in group.elements() {
            for a in group.elements() {
                let block = &mut maps.crossing[b.0 * n + a.0];
                if block.len() != dims[a.0] {
                    return Err(Error::AlgebraLoad(format!(
                        "crossing block ({},{}) has wrong size",
                        b.0, a.0
                    )));
                }
                let target = dims[group.conjugate(b, a).0];
                for (i, s) in block.iter_mut().enumerate() {
                    check_sparse(s, target, &format!("crossing ({},{}) entry {i}", b.0, a.0))?;
                }
            }
        }
        check_sparse2(&mut maps.rmatrix, dims[one], dims[one], "rmatrix")?;

        if dims[one] == 0 {
            return Err(Error::AlgebraLoad("H_1 must be nonzero".into()));
        }
        for a in group.elements() {
            if dims[a.0] == 0 {
                continue;
            }
            if dims[group.inv(a).0] == 0 {
                return Err(Error::AlgebraLoad(format!(
                    "support is not a subgroup: grade {} nonzero but its inverse is zero",
                    a.0
                )));
            }
            for b in group.elements() {
                if dims[b.0] != 0 && dims[group.mul(a, b).0] == 0 {
                    return Err(Error::AlgebraLoad(format!(
                        "support is not a subgroup: grades {} and {} nonzero but their product is zero",
                        a.0, b.0
                    )));
                }
            }
        }
        Ok(HopfGAlgebra { group, maps })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn maps(&self) -> &StructureMaps {
        &self.maps
    }

    pub fn conductor(&self) -> u32 {
        self.maps.conductor
    }

    pub fn dim(&self, a: GroupElement) -> usize {
        self.maps.dims[a.0]
    }

    pub fn dims(&self) -> &[usize] {
        &self.maps.dims
    }

    pub fn one_grade(&self) -> GroupElement {
        self.group.identity()
    }

    pub fn scalar_zero(&self) -> CycloScalar {
        CycloScalar::zero(self.maps.conductor)
    }

    pub fn scalar_one(&self) -> CycloScalar {
        CycloScalar::one(self.maps.conductor)
    }

    pub fn basis_vector(&self, a: GroupElement, i: usize) -> GradedVector {
        GradedVector::basis(a, i, self.maps.conductor)
    }

    pub(crate) fn product_constants(&self, a: GroupElement, b: GroupElement, i: usize, j: usize) -> &Sparse {
        &self.maps.product[a.0 * self.group.order() + b.0][i * self.maps.dims[b.0] + j]
    }

    pub(crate) fn antipode_constants(&self, a: GroupElement, i: usize) -> &Sparse {
        &self.maps.antipode[a.0][i]
    }

    pub(crate) fn coproduct_constants(&self, a: GroupElement, i: usize) -> &Sparse2 {
        &self.maps.coproduct[a.0][i]
    }

    pub(crate) fn crossing_constants(&self, b: GroupElement, a: GroupElement, i: usize) -> &Sparse {
        &self.maps.crossing[b.0 * self.group.order() + a.0][i]
    }

    pub(crate) fn counit_constant(&self, a: GroupElement, i: usize) -> &CycloScalar {
        &self.maps.counit[a.0][i]
    }

    /// The unit `1` of `H_1`.
    pub fn unit(&self) -> GradedVector {
        GradedVector::from_sparse(self.one_grade(), &self.maps.unit)
    }

    /// `x y` in `H_{ab}`.
    pub fn multiply(&self, x: &GradedVector, y: &GradedVector) -> GradedVector {
        let grade = self.group.mul(x.grade, y.grade);
        let mut out = GradedVector::zero(grade);
        for (i, c) in &x.entries {
            for (j, d) in &y.entries {
                let cd = c * d;
                for (t, e) in self.product_constants(x.grade, y.grade, *i, *j) {
                    out.add_term(*t, &(&cd * e));
                }
            }
        }
        out
    }

    /// Product of a nonempty sequence, left to right.
    pub fn multiply_all<'a>(&self, xs: impl IntoIterator<Item = &'a GradedVector>) -> Option<GradedVector> {
        let mut it = xs.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, x| self.multiply(&acc, x)))
    }

    fn apply_linear(&self, x: &GradedVector, target: GroupElement, f: impl Fn(usize) -> Sparse) -> GradedVector {
        let mut out = GradedVector::zero(target);
        for (i, c) in &x.entries {
            for (t, e) in f(*i) {
                out.add_term(t, &(c * &e));
            }
        }
        out
    }

    /// `S_a(x)` in `H_{a^-1}`.
    pub fn apply_antipode(&self, x: &GradedVector) -> GradedVector {
        let target = self.group.inv(x.grade);
        self.apply_linear(x, target, |i| self.antipode_constants(x.grade, i).clone())
    }

    /// `phi_b(x)` in `H_{b a b^-1}`.
    pub fn apply_crossing(&self, b: GroupElement, x: &GradedVector) -> GradedVector {
        let target = self.group.conjugate(b, x.grade);
        self.apply_linear(x, target, |i| self.crossing_constants(b, x.grade, i).clone())
    }

    pub fn eval_counit(&self, x: &GradedVector) -> CycloScalar {
        x.entries.iter().fold(self.scalar_zero(), |acc, (i, c)| {
            &acc + &(c * self.counit_constant(x.grade, *i))
        })
    }

    pub fn apply_coproduct(&self, x: &GradedVector) -> GradedTensor {
        let mut out = GradedTensor::zero(vec![x.grade, x.grade]);
        for (i, c) in &x.entries {
            for ((t1, t2), e) in self.coproduct_constants(x.grade, *i) {
                out.add_term(vec![*t1, *t2], &(c * e));
            }
        }
        out
    }

    /// Iterated coproduct into `k` factors; `k = 1` returns `x` itself.
    pub fn apply_coproduct_power(&self, x: &GradedVector, k: usize) -> Result<GradedTensor> {
        if k == 0 {
            return Err(Error::Parameter("coproduct power needs at least one factor".into()));
        }
        let mut t = GradedTensor::from_vector(x);
        for _ in 1..k {
            let last = t.arity() - 1;
            t = self.tensor_coproduct(&t, last);
        }
        Ok(t)
    }

    /// Apply a linear map `H_{grade} -> H_{target}` on factor `pos`.
    fn tensor_map_factor(
        &self,
        t: &GradedTensor,
        pos: usize,
        target: GroupElement,
        f: impl Fn(usize) -> Sparse,
    ) -> GradedTensor {
        let mut grades = t.grades.clone();
        grades[pos] = target;
        let mut out = GradedTensor::zero(grades);
        for (idx, c) in &t.entries {
            for (tgt, e) in f(idx[pos]) {
                let mut idx2 = idx.clone();
                idx2[pos] = tgt;
                out.add_term(idx2, &(c * &e));
            }
        }
        out
    }

    pub fn tensor_antipode(&self, t: &GradedTensor, pos: usize) -> GradedTensor {
        let a = t.grades[pos];
        self.tensor_map_factor(t, pos, self.group.inv(a), |i| self.antipode_constants(a, i).clone())
    }

    pub fn tensor_crossing(&self, t: &GradedTensor, pos: usize, b: GroupElement) -> GradedTensor {
        let a = t.grades[pos];
        self.tensor_map_factor(t, pos, self.group.conjugate(b, a), |i| {
            self.crossing_constants(b, a, i).clone()
        })
    }

    /// Apply `Delta` to factor `pos`, which becomes two adjacent factors.
    pub fn tensor_coproduct(&self, t: &GradedTensor, pos: usize) -> GradedTensor {
        let a = t.grades[pos];
        let mut grades = t.grades.clone();
        grades.insert(pos, a);
        let mut out = GradedTensor::zero(grades);
        for (idx, c) in &t.entries {
            for ((t1, t2), e) in self.coproduct_constants(a, idx[pos]) {
                let mut idx2 = Vec::with_capacity(idx.len() + 1);
                idx2.extend_from_slice(&idx[..pos]);
                idx2.push(*t1);
                idx2.push(*t2);
                idx2.extend_from_slice(&idx[pos + 1..]);
                out.add_term(idx2, &(c * e));
            }
        }
        out
    }

    /// Apply `epsilon` to factor `pos`, removing it.
    pub fn tensor_counit(&self, t: &GradedTensor, pos: usize) -> GradedTensor {
        let a = t.grades[pos];
        let mut grades = t.grades.clone();
        grades.remove(pos);
        let mut out = GradedTensor::zero(grades);
        for (idx, c) in &t.entries {
            let e = self.counit_constant(a, idx[pos]);
            if !e.is_zero() {
                let mut idx2 = idx.clone();
                idx2.remove(pos);
                out.add_term(idx2, &(c * e));
            }
        }
        out
    }

    /// Factorwise product `(x_1 (x) ..)(y_1 (x) ..) = x_1 y_1 (x) ..`.
    pub fn tensor_multiply(&self, x: &GradedTensor, y: &GradedTensor) -> Result<GradedTensor> {
        if x.arity() != y.arity() {
            return Err(Error::Grading(format!(
                "tensor arity mismatch: {} vs {}",
                x.arity(),
                y.arity()
            )));
        }
        let grades: Vec<GroupElement> = x
            .grades
            .iter()
            .zip(&y.grades)
            .map(|(a, b)| self.group.mul(*a, *b))
            .collect();
        let mut out = GradedTensor::zero(grades);
        for (ix, cx) in &x.entries {
            for (iy, cy) in &y.entries {
                // expand the product factor by factor
                let mut partial: Vec<(Vec<usize>, CycloScalar)> = vec![(Vec::new(), cx * cy)];
                for k in 0..ix.len() {
                    let consts = self.product_constants(x.grades[k], y.grades[k], ix[k], iy[k]);
                    let mut next = Vec::with_capacity(partial.len() * consts.len());
                    for (idx, c) in &partial {
                        for (t, e) in consts {
                            let mut idx2 = idx.clone();
                            idx2.push(*t);
                            next.push((idx2, c * e));
                        }
                    }
                    partial = next;
                }
                for (idx, c) in partial {
                    out.add_term(idx, &c);
                }
            }
        }
        Ok(out)
    }

    /// Contract a tensor by multiplying its factors in order.
    pub fn tensor_contract(&self, t: &GradedTensor) -> Option<GradedVector> {
        let grade = t.grades.iter().copied().reduce(|a, b| self.group.mul(a, b))?;
        let mut out = GradedVector::zero(grade);
        for (idx, c) in &t.entries {
            let factors: Vec<GradedVector> = idx
                .iter()
                .zip(&t.grades)
                .map(|(i, g)| self.basis_vector(*g, *i))
                .collect();
            let p = self.multiply_all(&factors)?;
            out.add_scaled(&p, c);
        }
        Some(out)
    }

    /// `1 (x) .. (x) 1` with `k` factors.
    pub fn unit_tensor(&self, k: usize) -> GradedTensor {
        let u = self.unit();
        let refs: Vec<&GradedVector> = (0..k).map(|_| &u).collect();
        GradedTensor::pure(&refs)
    }

    /// The universal R-matrix in `H_1 (x) H_1`.
    pub fn rmatrix(&self) -> GradedTensor {
        let one = self.one_grade();
        let mut t = GradedTensor::zero(vec![one, one]);
        for ((i, j), c) in &self.maps.rmatrix {
            t.add_term(vec![*i, *j], c);
        }
        t
    }

    /// `R^-1 = (S_1 (x) id)(R)`.
    pub fn rmatrix_inverse(&self) -> GradedTensor {
        self.tensor_antipode(&self.rmatrix(), 0)
    }

    /// Embed a tensor into more factors, placing its factors at `positions`
    /// and the unit elsewhere (e.g. `R_13`).
    pub fn tensor_leg(&self, t: &GradedTensor, positions: &[usize], arity: usize) -> GradedTensor {
        let one = self.one_grade();
        let mut grades = vec![one; arity];
        for (k, &p) in positions.iter().enumerate() {
            grades[p] = t.grades[k];
        }
        let mut out = GradedTensor::zero(grades);
        let unit = &self.maps.unit;
        let others: Vec<usize> = (0..arity).filter(|p| !positions.contains(p)).collect();
        for (idx, c) in &t.entries {
            let mut partial: Vec<(Vec<usize>, CycloScalar)> = vec![(vec![0; arity], c.clone())];
            for (k, &p) in positions.iter().enumerate() {
                for e in partial.iter_mut() {
                    e.0[p] = idx[k];
                }
            }
            for &p in &others {
                let mut next = Vec::new();
                for (ix, cc) in &partial {
                    for (u, uc) in unit {
                        let mut ix2 = ix.clone();
                        ix2[p] = *u;
                        next.push((ix2, cc * uc));
                    }
                }
                partial = next;
            }
            for (ix, cc) in partial {
                out.add_term(ix, &cc);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{build_cyclic, build_kac_paljutkin, CyclicParams};

    #[test]
    fn unit_coproduct_power() {
        for h in [
            build_cyclic(CyclicParams { k: 2, l: 3, d: 1 }).unwrap(),
            build_kac_paljutkin(),
        ] {
            let u = h.unit();
            let t = h.apply_coproduct_power(&u, 3).unwrap();
            assert_eq!(t, h.unit_tensor(3));
            assert_eq!(h.apply_coproduct_power(&u, 1).unwrap(), GradedTensor::from_vector(&u));
        }
    }

    #[test]
    fn coproduct_power_zero_rejected() {
        let h = build_kac_paljutkin();
        assert!(h.apply_coproduct_power(&h.unit(), 0).is_err());
    }

    #[test]
    fn load_rejects_bad_index() {
        let h = build_cyclic(CyclicParams { k: 1, l: 2, d: 0 }).unwrap();
        let mut maps = h.maps().clone();
        maps.antipode[0][1] = vec![(5, CycloScalar::one(2))];
        assert!(matches!(
            HopfGAlgebra::new(h.group().clone(), maps),
            Err(Error::AlgebraLoad(_))
        ));
    }

    #[test]
    fn load_rejects_foreign_conductor() {
        let h = build_cyclic(CyclicParams { k: 1, l: 2, d: 0 }).unwrap();
        let mut maps = h.maps().clone();
        maps.counit[0][0] = CycloScalar::root_of_unity(3, 1);
        assert!(HopfGAlgebra::new(h.group().clone(), maps).is_err());
    }

    #[test]
    fn load_rejects_non_subgroup_support() {
        // Z_3 grading with only grades 0 and 1 nonzero is not closed
        let g = FiniteGroup::cyclic(3).unwrap();
        let maps = StructureMaps::empty(&g, 1, vec![1, 1, 0]);
        assert!(HopfGAlgebra::new(g, maps).is_err());
    }
}

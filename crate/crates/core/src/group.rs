//! Finite groups given by multiplication tables, finitely presented source
//! groups, and enumeration of homomorphisms into a finite group.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element in a [`FiniteGroup`]'s table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub usize);

impl GroupElement {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A finite group stored as a validated Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

/// JSON form of a group: `{"order": n, "table": [[..]], "names": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validate a multiplication table (`table[a][b]` is the index of `a*b`).
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Group("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Group(format!(
                    "row {a} has length {} but the table has {n} rows",
                    row.len()
                )));
            }
            if let Some(b) = row.iter().position(|&v| v >= n) {
                return Err(Error::Group(format!("entry ({a},{b}) = {} out of range", row[b])));
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::Group(format!("{} names given for order {n}", names.len())));
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::Group(format!("associativity fails for triple ({a},{b},{c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::Group("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| Error::Group(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        Ok(FiniteGroup {
            order: n,
            table: flat,
            identity,
            inverses,
            names,
        })
    }

    pub fn from_json(g: GroupJson) -> Result<Self> {
        if g.order != g.table.len() {
            return Err(Error::Group(format!(
                "declared order {} but table has {} rows",
                g.order,
                g.table.len()
            )));
        }
        Self::from_table(g.table, g.names)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            order: self.order,
            table: self.table.chunks(self.order).map(|r| r.to_vec()).collect(),
            names: self.names.clone(),
        }
    }

    /// The cyclic group `Z_k` with generator index 1.
    pub fn cyclic(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Group("cyclic group order must be positive".into()));
        }
        let table = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        let names = (0..k)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            })
            .collect();
        Self::from_table(table, Some(names))
    }

    /// Direct product; element `(g, h)` has index `g * |H| + h`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let (n, m) = (g.order, h.order);
        let mut table = vec![vec![0; n * m]; n * m];
        for a in 0..n * m {
            for b in 0..n * m {
                let (a1, a2) = (a / m, a % m);
                let (b1, b2) = (b / m, b % m);
                table[a][b] = g.table[a1 * n + b1] * m + h.table[a2 * m + b2];
            }
        }
        let names = (0..n * m)
            .map(|a| format!("({},{})", g.name(GroupElement(a / m)), h.name(GroupElement(a % m))))
            .collect();
        Self::from_table(table, Some(names))
    }

    /// The symmetric group on `n` letters; permutations in lexicographic
    /// order, composed right to left.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::Group(format!("symmetric:{n} unsupported (1..=5)")));
        }
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        loop {
            let mut p = perms.last().unwrap().clone();
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
            perms.push(p);
        }
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index(&(0..n).map(|x| p[q[x]]).collect()))
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        Self::from_table(table, Some(names))
    }

    /// Parse `cyclic:K`, `symmetric:N` or `product:A,B[,C..]`.
    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim();
        if let Some(rest) = name.strip_prefix("product:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() < 2 {
                return Err(Error::Parse(format!("product needs two factors: `{name}`")));
            }
            let mut acc = Self::from_name(parts[0])?;
            for p in &parts[1..] {
                acc = Self::product(&acc, &Self::from_name(p)?)?;
            }
            return Ok(acc);
        }
        let parse_n = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad group order in `{name}`")))
        };
        if let Some(k) = name.strip_prefix("cyclic:") {
            return Self::cyclic(parse_n(k)?);
        }
        if let Some(k) = name.strip_prefix("symmetric:") {
            return Self::symmetric(parse_n(k)?);
        }
        Err(Error::Parse(format!("unknown group `{name}`")))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(self.identity)
    }

    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        GroupElement(self.table[a.0 * self.order + b.0])
    }

    pub fn inv(&self, a: GroupElement) -> GroupElement {
        GroupElement(self.inverses[a.0])
    }

    /// `b a b^-1`
    pub fn conjugate(&self, b: GroupElement, a: GroupElement) -> GroupElement {
        self.mul(self.mul(b, a), self.inv(b))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order).map(GroupElement)
    }

    pub fn element_order(&self, a: GroupElement) -> usize {
        let mut x = a;
        let mut k = 1;
        while x.0 != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn name(&self, a: GroupElement) -> String {
        match &self.names {
            Some(n) => n[a.0].clone(),
            None => a.0.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Look an element up by name or by decimal index.
    pub fn element_by_name(&self, name: &str) -> Option<GroupElement> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == name) {
                return Some(GroupElement(i));
            }
        }
        name.parse::<usize>().ok().filter(|&i| i < self.order).map(GroupElement)
    }
}

/// A generator or its inverse inside a relation word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverted: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Letter {
            generator,
            inverted: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Letter {
            generator,
            inverted: true,
        }
    }
}

/// A finite presentation `<s_0..s_{m-1} | r_0..>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub num_generators: usize,
    pub relations: Vec<Vec<Letter>>,
}

impl Presentation {
    /// Relations with empty (trivial) words dropped.
    pub fn nontrivial_relations(&self) -> Vec<&Vec<Letter>> {
        self.relations.iter().filter(|r| !r.is_empty()).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.num_generators).map(|i| format!("s{i}")).collect();
        let rels: Vec<String> = self
            .nontrivial_relations()
            .into_iter()
            .map(|w| {
                w.iter()
                    .map(|l| {
                        if l.inverted {
                            format!("s{}^-1", l.generator + 1)
                        } else {
                            format!("s{}", l.generator + 1)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

/// A homomorphism out of a presented group, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupHom {
    pub images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn trivial(group: &FiniteGroup, num_generators: usize) -> Self {
        GroupHom {
            images: vec![group.identity(); num_generators],
        }
    }

    pub fn eval_word(&self, group: &FiniteGroup, word: &[Letter]) -> GroupElement {
        eval_word(group, word, |g| self.images[g])
    }

    /// True when every relation of `pres` maps to the identity.
    pub fn satisfies(&self, group: &FiniteGroup, pres: &Presentation) -> bool {
        self.images.len() == pres.num_generators
            && pres
                .relations
                .iter()
                .all(|r| self.eval_word(group, r) == group.identity())
    }
}

pub(crate) fn eval_word(group: &FiniteGroup, word: &[Letter], image: impl Fn(usize) -> GroupElement) -> GroupElement {
    word.iter().fold(group.identity(), |acc, l| {
        let g = image(l.generator);
        group.mul(acc, if l.inverted { group.inv(g) } else { g })
    })
}

/// All homomorphisms from the presented group into `group`, in lexicographic
/// order of generator images (first generator most significant).
pub fn enumerate_homs(pres: &Presentation, group: &FiniteGroup) -> Vec<GroupHom> {
    let m = pres.num_generators;
    // relations checked as soon as their largest generator is assigned
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut always: Vec<usize> = Vec::new();
    for (ri, r) in pres.relations.iter().enumerate() {
        match r.iter().map(|l| l.generator).max() {
            Some(g) if g < m => check_at[g].push(ri),
            Some(_) => return Vec::new(),
            None => always.push(ri),
        }
    }
    let mut out = Vec::new();
    let mut images = vec![group.identity(); m];
    fn rec(
        depth: usize,
        images: &mut Vec<GroupElement>,
        pres: &Presentation,
        group: &FiniteGroup,
        check_at: &[Vec<usize>],
        out: &mut Vec<GroupHom>,
    ) {
        if depth == images.len() {
            out.push(GroupHom { images: images.clone() });
            return;
        }
        for g in group.elements() {
            images[depth] = g;
            let ok = check_at[depth]
                .iter()
                .all(|&ri| eval_word(group, &pres.relations[ri], |s| images[s]) == group.identity());
            if ok {
                rec(depth + 1, images, pres, group, check_at, out);
            }
        }
    }
    rec(0, &mut images, pres, group, &check_at, &mut out);
    out
}

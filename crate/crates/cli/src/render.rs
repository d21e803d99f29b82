//! Text and JSON renderings of exact values.

use serde_json::{json, Value};

use hopfg_core::{CycloScalar, FiniteGroup, GradedVector, GroupHom};

/// `a0 + a1*z^1 + ...  (z = primitive n-th root of unity)`; purely rational
/// values omit the note.
pub fn exact(x: &CycloScalar) -> String {
    if x.as_rational().is_some() {
        x.to_string()
    } else {
        format!("{x}  (z = primitive {}-th root of unity)", x.conductor())
    }
}

pub fn decimal(x: &CycloScalar) -> String {
    let (re, im) = x.to_complex();
    let re = if re.abs() < 5e-13 { 0.0 } else { re };
    if im.abs() < 5e-13 {
        format!("{re:.12}")
    } else {
        let sign = if im < 0.0 { '-' } else { '+' };
        format!("{re:.12} {sign} {:.12}i", im.abs())
    }
}

pub fn scalar_json(x: &CycloScalar) -> Value {
    json!({
        "exact": x.to_string(),
        "conductor": x.conductor(),
        "decimal": decimal(x),
    })
}

pub fn hom_names(g: &FiniteGroup, hom: &GroupHom) -> Vec<String> {
    hom.images.iter().map(|&a| g.name(a)).collect()
}

pub fn vector_json(g: &FiniteGroup, v: &GradedVector) -> Value {
    json!({
        "grade": g.name(v.grade),
        "entries": v.entries.iter().map(|(i, c)| json!([i, c.to_string()])).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_forms() {
        let third = CycloScalar::from_frac(3, 1, 3);
        assert_eq!(exact(&third), "1/3");
        let v = &third + &(&CycloScalar::root_of_unity(3, 1) * &CycloScalar::from_frac(3, 2, 3));
        assert_eq!(exact(&v), "1/3 + 2/3*z^1  (z = primitive 3-th root of unity)");
    }

    #[test]
    fn decimal_forms() {
        assert_eq!(decimal(&CycloScalar::from_frac(1, 1, 3)), "0.333333333333");
        assert_eq!(
            decimal(&CycloScalar::root_of_unity(4, 1)),
            "0.000000000000 + 1.000000000000i"
        );
        assert_eq!(
            decimal(&CycloScalar::root_of_unity(4, 3)),
            "0.000000000000 - 1.000000000000i"
        );
    }
}

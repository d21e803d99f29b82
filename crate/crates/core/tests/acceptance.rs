//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! `HOPFG_GRID_L` caps `l` in the cyclic grid (default 6) and
//! `HOPFG_FUZZ_CASES` sets the number of random move walks (default 80,
//! five compared moves each).

use std::process::ExitCode;
use std::time::Instant;

use num_integer::gcd;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hopfg_core::algebra::{drinfeld_element, solve_integrals, verify_axioms, GradedTensor};
use hopfg_core::builtin::{build_cyclic, build_kac_paljutkin, CyclicParams};
use hopfg_core::group::enumerate_homs;
use hopfg_core::invariant::{bracket, connected_sum_check, evaluate, evaluate_summed, reorient};
use hopfg_core::kirby::{
    apply_move, builtin_diagram, cp2, cp2bar, local_moves, s1xs1xs2, s1xs3, s2xs2, Direction, Gap, Sign,
    BUILTIN_DIAGRAMS,
};
use hopfg_core::{
    ColoredDiagram, CycloScalar, GradedVector, GroupElement, GroupHom, HopfGAlgebra, IntegralData, KirbyDiagram,
    MoveSpec,
};

type Outcome = Result<String, String>;

fn env_usize(name: &str, default: usize) -> usize {
    std::env::var(name).ok().and_then(|v| v.parse().ok()).unwrap_or(default)
}

fn grid() -> Vec<CyclicParams> {
    let max_l = env_usize("HOPFG_GRID_L", 6);
    let mut out = Vec::new();
    for k in 1..=3 {
        for l in 1..=max_l {
            for d in 0..l {
                out.push(CyclicParams { k, l, d });
            }
        }
    }
    out
}

struct Algebra {
    name: String,
    h: HopfGAlgebra,
    ints: IntegralData,
}

fn load(p: CyclicParams) -> Algebra {
    let h = build_cyclic(p).expect("grid parameters are valid");
    let ints = solve_integrals(&h).expect("cyclic integrals exist");
    Algebra {
        name: format!("cyclic:k={},l={},d={}", p.k, p.l, p.d),
        h,
        ints,
    }
}

fn load_kp() -> Algebra {
    let h = build_kac_paljutkin();
    let ints = solve_integrals(&h).expect("Kac-Paljutkin integrals exist");
    Algebra {
        name: "kac-paljutkin".into(),
        h,
        ints,
    }
}

fn q(c: u32, n: i64, d: i64) -> CycloScalar {
    CycloScalar::from_frac(c, n, d)
}

fn w(c: u32, e: i64) -> CycloScalar {
    CycloScalar::root_of_unity(c, e)
}

fn value(a: &Algebra, d: &KirbyDiagram, hom: &GroupHom) -> CycloScalar {
    let cd = d.color(a.h.group(), hom).expect("enumerated homs color the diagram");
    evaluate(&a.h, &a.ints, &cd).expect("evaluation succeeds").value
}

fn trivial(a: &Algebra, d: &KirbyDiagram) -> CycloScalar {
    value(a, d, &GroupHom::trivial(a.h.group(), d.dotted.len()))
}

fn cp2_closed(p: CyclicParams) -> CycloScalar {
    let c = p.l as u32;
    let mut s = CycloScalar::zero(c);
    for i in 0..p.l as i64 {
        s = &s + &w(c, p.d as i64 * i * i);
    }
    &s * &q(c, 1, p.l as i64)
}

/// `(3 + (-1)^{l/(l,d)}) / 2` as an integer.
fn parity_factor(p: CyclicParams) -> i64 {
    let g = gcd(p.l, p.d);
    if (p.l / g).is_multiple_of(2) {
        2
    } else {
        1
    }
}

fn s2xs2_closed(p: CyclicParams) -> CycloScalar {
    q(p.l as u32, gcd(p.l, p.d) as i64 * parity_factor(p), p.l as i64)
}

fn s1xs1xs2_closed(p: CyclicParams) -> CycloScalar {
    q(p.l as u32, (p.l * gcd(p.l, p.d)) as i64 * parity_factor(p), 1)
}

fn axiom_suite(grid: &[CyclicParams]) -> Outcome {
    let mut n = 0;
    for a in grid.iter().map(|&p| load(p)).chain([load_kp()]) {
        let report = verify_axioms(&a.h);
        if !report.all_passed() {
            return Err(format!("{}: {}", a.name, report));
        }
        n += report.checks.len();
    }
    Ok(format!("{} algebras, {n} axiom groups", grid.len() + 1))
}

fn integral_reproduction(grid: &[CyclicParams]) -> Outcome {
    for &p in grid {
        let a = load(p);
        let c = p.l as u32;
        for g in a.h.group().elements() {
            let mut expected = GradedVector::zero(g);
            for i in 0..p.l {
                expected.add_term(i, &q(c, 1, p.l as i64));
            }
            if *a.ints.big_lambda(g) != expected {
                return Err(format!("{}: Lambda at grade {}", a.name, g.0));
            }
        }
        let mut lam = vec![CycloScalar::zero(c); p.l];
        lam[0] = q(c, p.l as i64, 1);
        if a.ints.lambda_coeffs() != lam.as_slice() {
            return Err(format!("{}: lambda", a.name));
        }
    }
    let kp = load_kp();
    for g in kp.h.group().elements() {
        let mut expected = GradedVector::zero(g);
        for i in 0..8 {
            expected.add_term(i, &q(4, 1, 8));
        }
        if *kp.ints.big_lambda(g) != expected {
            return Err(format!("kac-paljutkin: Lambda at grade {}", g.0));
        }
    }
    let mut lam = vec![CycloScalar::zero(4); 8];
    lam[0] = q(4, 8, 1);
    if kp.ints.lambda_coeffs() != lam.as_slice() {
        return Err("kac-paljutkin: lambda".into());
    }
    Ok(format!("{} cyclic algebras and kac-paljutkin", grid.len()))
}

fn cp2_values(grid: &[CyclicParams]) -> Outcome {
    for &p in grid {
        let a = load(p);
        let got = trivial(&a, &cp2());
        let want = cp2_closed(p);
        if got != want {
            return Err(format!("{}: cp2 gave {got}, expected {want}", a.name));
        }
        let bar = trivial(&a, &cp2bar());
        if bar != want.conj() {
            return Err(format!("{}: cp2bar gave {bar}, expected {}", a.name, want.conj()));
        }
    }
    let half = load(CyclicParams { k: 1, l: 2, d: 1 });
    if !trivial(&half, &cp2()).is_zero() {
        return Err("l=2, d=1 is not 0".into());
    }
    let third = load(CyclicParams { k: 1, l: 3, d: 1 });
    let want = &q(3, 1, 3) + &(&w(3, 1) * &q(3, 2, 3));
    if trivial(&third, &cp2()) != want {
        return Err("l=3, d=1 is not (1+2z)/3".into());
    }
    Ok(format!("{} grid points", grid.len()))
}

fn s2xs2_values(grid: &[CyclicParams]) -> Outcome {
    for &p in grid {
        let a = load(p);
        let got = trivial(&a, &s2xs2());
        if got != s2xs2_closed(p) {
            return Err(format!("{}: got {got}, expected {}", a.name, s2xs2_closed(p)));
        }
    }
    Ok(format!("{} grid points", grid.len()))
}

fn s1xs3_values(grid: &[CyclicParams]) -> Outcome {
    for &p in grid {
        let a = load(p);
        let c = p.l as u32;
        for g in a.h.group().elements() {
            let got = value(&a, &s1xs3(), &GroupHom { images: vec![g] });
            if got != q(c, p.l as i64, 1) {
                return Err(format!("{}: color {} gave {got}", a.name, g.0));
            }
        }
        let sum = evaluate_summed(&a.h, &a.ints, &s1xs3()).map_err(|e| e.to_string())?;
        if sum.total != q(c, (p.k * p.l) as i64, 1) {
            return Err(format!("{}: summed {}", a.name, sum.total));
        }
    }
    Ok(format!("{} grid points", grid.len()))
}

fn s1xs1xs2_values(grid: &[CyclicParams]) -> Outcome {
    let mut connections = 0;
    for &p in grid {
        let a = load(p);
        let want = s1xs1xs2_closed(p);
        let sum = evaluate_summed(&a.h, &a.ints, &s1xs1xs2()).map_err(|e| e.to_string())?;
        for (hom, v) in &sum.per_connection {
            if v.value != want {
                return Err(format!("{}: connection {:?} gave {}", a.name, hom.images, v.value));
            }
        }
        connections += sum.per_connection.len();
        let k2 = q(p.l as u32, (p.k * p.k) as i64, 1);
        if sum.total != &k2 * &want {
            return Err(format!("{}: summed {}", a.name, sum.total));
        }
    }
    Ok(format!("{} grid points, {connections} connections", grid.len()))
}

fn random_gap(rng: &mut ChaCha8Rng, d: &KirbyDiagram) -> Gap {
    let component = rng.gen_range(0..d.undotted.len());
    let index = rng.gen_range(0..=d.undotted[component].events.len());
    Gap { component, index }
}

fn random_direction(rng: &mut ChaCha8Rng) -> Direction {
    if rng.gen_bool(0.5) {
        Direction::Down
    } else {
        Direction::Up
    }
}

fn random_move(rng: &mut ChaCha8Rng, cd: &ColoredDiagram) -> MoveSpec {
    let d = &cd.diagram;
    let order = cd.group.order();
    loop {
        match rng.gen_range(0..12) {
            0..=4 => {
                // pick a kind first so rare local moves are not drowned out
                let mut by_kind: std::collections::BTreeMap<String, Vec<MoveSpec>> = Default::default();
                for m in local_moves(cd) {
                    let kind = serde_json::to_value(&m).expect("moves serialize")["move"].to_string();
                    by_kind.entry(kind).or_default().push(m);
                }
                let kinds: Vec<&Vec<MoveSpec>> = by_kind.values().collect();
                if let Some(ms) = kinds.choose(rng) {
                    return ms.choose(rng).expect("nonempty").clone();
                }
            }
            5 | 6 if !d.undotted.is_empty() => {
                return MoveSpec::I2Insert {
                    over: random_gap(rng, d),
                    under: random_gap(rng, d),
                    antiparallel: rng.gen_bool(0.5),
                    first_sign: if rng.gen_bool(0.5) {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    },
                };
            }
            7 if !d.undotted.is_empty() && !d.dotted.is_empty() => {
                let dot = rng.gen_range(0..d.dotted.len());
                return MoveSpec::II1Insert {
                    dot,
                    index: rng.gen_range(0..=d.dotted[dot].passages.len()),
                    at: random_gap(rng, d),
                    first: random_direction(rng),
                };
            }
            8 => {
                return MoveSpec::III4Insert {
                    dir: random_direction(rng),
                }
            }
            9 => return MoveSpec::III5Insert,
            10 => {
                return MoveSpec::GlobalConjugate {
                    by: GroupElement(rng.gen_range(0..order)),
                }
            }
            11 if !d.undotted.is_empty() => {
                let component = rng.gen_range(0..d.undotted.len());
                return MoveSpec::Rotate {
                    component,
                    by: rng.gen_range(0..4),
                };
            }
            _ => {}
        }
    }
}

fn move_fuzz() -> Outcome {
    let cases = env_usize("HOPFG_FUZZ_CASES", 80);
    let steps = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b69_7262_7946);
    let pool: Vec<Algebra> = [(1, 3, 1), (2, 3, 1), (2, 4, 2), (3, 2, 1), (2, 2, 1), (1, 4, 1)]
        .into_iter()
        .map(|(k, l, d)| load(CyclicParams { k, l, d }))
        .chain([load_kp()])
        .collect();
    let diagrams = ["cp2", "cp2bar", "s2xs2", "s1xs3", "s1xs1xs2", "connected-sum:cp2,s1xs3"];
    let mut triples = 0;
    let mut conjugations_kp = 0;
    let mut kinds = std::collections::BTreeMap::new();
    for case in 0..cases {
        let a = &pool[case % pool.len()];
        let name = diagrams.choose(&mut rng).expect("nonempty");
        let d = builtin_diagram(name).expect("builtin");
        let homs = enumerate_homs(&d.fundamental_presentation(), a.h.group());
        let hom = homs.choose(&mut rng).expect("trivial hom exists");
        let mut cd = d.color(a.h.group(), hom).expect("valid coloring");
        let before = evaluate(&a.h, &a.ints, &cd).map_err(|e| e.to_string())?;
        let mut script = Vec::new();
        let mut planned = Vec::new();
        let nd = d.dotted.len();
        if case % 4 == 1 && nd > 0 {
            // a fresh one-passage circle slid over an existing one, then pushed through it
            let onto = rng.gen_range(0..nd);
            planned.push(MoveSpec::III1 {
                moving: nd,
                onto,
                at: rng.gen_range(0..=d.dotted[onto].passages.len()),
            });
            planned.push(MoveSpec::III4Insert { dir: Direction::Down });
        }
        for step in 0..steps {
            let m = if let Some(m) = planned.pop() {
                m
            } else if a.name == "kac-paljutkin" && step == 0 {
                MoveSpec::GlobalConjugate { by: GroupElement(1) }
            } else if let Some(&MoveSpec::III1 { moving, onto, .. }) = script.last() {
                // a fresh slide leaves the two circles stacked, so II-6 applies
                MoveSpec::II6 {
                    small: moving,
                    large: onto,
                    reverse: false,
                }
            } else {
                random_move(&mut rng, &cd)
            };
            let next = match apply_move(&cd, &m) {
                Ok(n) => n,
                Err(_) => continue,
            };
            if matches!(m, MoveSpec::GlobalConjugate { .. }) && a.name == "kac-paljutkin" {
                conjugations_kp += 1;
            }
            let kind = serde_json::to_value(&m).expect("moves serialize")["move"].to_string();
            *kinds.entry(kind).or_insert(0usize) += 1;
            script.push(m);
            let after = evaluate(&a.h, &a.ints, &next).map_err(|e| format!("{}: {e} after {script:?}", a.name))?;
            if after.value != before.value {
                return Err(format!(
                    "{} on {name}: {} became {} after {script:?}",
                    a.name, before.value, after.value
                ));
            }
            triples += 1;
            cd = next;
        }
    }
    if triples < 200 {
        return Err(format!("only {triples} moves applied"));
    }
    if std::env::var_os("HOPFG_FUZZ_VERBOSE").is_some() {
        println!("{kinds:?}");
    }
    Ok(format!(
        "{triples} (diagram, move, algebra) triples, {} move kinds, {conjugations_kp} conjugations over kac-paljutkin",
        kinds.len()
    ))
}

fn orientation_and_start(grid: &[CyclicParams]) -> Outcome {
    let mut checks = 0;
    let algebras: Vec<Algebra> = grid.iter().map(|&p| load(p)).chain([load_kp()]).collect();
    for a in &algebras {
        for name in BUILTIN_DIAGRAMS {
            let d = builtin_diagram(name).expect("builtin");
            for hom in enumerate_homs(&d.fundamental_presentation(), a.h.group()) {
                let cd = d.color(a.h.group(), &hom).expect("valid coloring");
                let v = evaluate(&a.h, &a.ints, &cd).map_err(|e| e.to_string())?.value;
                for u in 0..d.undotted.len() {
                    let r = reorient(&cd, u).map_err(|e| e.to_string())?;
                    if evaluate(&a.h, &a.ints, &r).map_err(|e| e.to_string())?.value != v {
                        return Err(format!("{}: reorienting component {u} of {name}", a.name));
                    }
                    for by in 1..d.undotted[u].events.len() {
                        let r = apply_move(&cd, &MoveSpec::Rotate { component: u, by }).map_err(|e| e.to_string())?;
                        if evaluate(&a.h, &a.ints, &r).map_err(|e| e.to_string())?.value != v {
                            return Err(format!("{}: rotating component {u} of {name} by {by}", a.name));
                        }
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} component checks over {} algebras", algebras.len()))
}

fn connected_sums() -> Outcome {
    let algebras = [
        load(CyclicParams { k: 2, l: 4, d: 1 }),
        load(CyclicParams { k: 3, l: 3, d: 1 }),
        load(CyclicParams { k: 2, l: 2, d: 1 }),
        load_kp(),
    ];
    let mut pairs = 0;
    for a in &algebras {
        let g = a.h.group();
        for na in BUILTIN_DIAGRAMS {
            let da = builtin_diagram(na).expect("builtin");
            let homs_a = enumerate_homs(&da.fundamental_presentation(), g);
            for nb in BUILTIN_DIAGRAMS {
                let db = builtin_diagram(nb).expect("builtin");
                let homs_b = enumerate_homs(&db.fundamental_presentation(), g);
                for ha in &homs_a {
                    for hb in &homs_b {
                        let r = connected_sum_check(&a.h, &a.ints, &da, &db, ha, hb).map_err(|e| e.to_string())?;
                        if !r.equal {
                            return Err(format!(
                                "{}: {na} # {nb} gave {} against {}",
                                a.name, r.combined.value, r.product
                            ));
                        }
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} colored pairs over Z_2 and Z_3"))
}

/// `E_a = (1/l) sum_i w^{-a i} K^i` with `K = g^k` spanning `H_1`.
fn idempotent(p: CyclicParams, a: usize) -> Vec<CycloScalar> {
    let c = p.l as u32;
    (0..p.l)
        .map(|i| &w(c, -((a * i) as i64)) * &q(c, 1, p.l as i64))
        .collect()
}

fn oracle_tensor(terms: &[(CycloScalar, Vec<CycloScalar>, Vec<CycloScalar>)]) -> GradedTensor {
    let one = GroupElement(0);
    let mut t = GradedTensor::zero(vec![one, one]);
    for (c, x, y) in terms {
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                t.add_term(vec![i, j], &(&(c * xi) * yj));
            }
        }
    }
    t
}

fn monomial(p: CyclicParams, e: usize) -> Vec<CycloScalar> {
    let c = p.l as u32;
    let mut v = vec![CycloScalar::zero(c); p.l];
    v[e % p.l] = CycloScalar::one(c);
    v
}

fn idempotent_oracle(grid: &[CyclicParams]) -> Outcome {
    for &p in grid {
        let a = load(p);
        let c = p.l as u32;
        let (l, d) = (p.l, p.d);
        // R_d = sum_a E_a (x) K^{da}
        let r_terms: Vec<_> = (0..l)
            .map(|x| (CycloScalar::one(c), idempotent(p, x), monomial(p, d * x)))
            .collect();
        if a.h.rmatrix() != oracle_tensor(&r_terms) {
            return Err(format!("{}: R differs from the idempotent form", a.name));
        }
        // (R_d)_21 R_d = sum_{a,b} w^{2dab} E_a (x) E_b
        let mut rr_terms = Vec::new();
        for x in 0..l {
            for y in 0..l {
                rr_terms.push((w(c, (2 * d * x * y) as i64), idempotent(p, x), idempotent(p, y)));
            }
        }
        let r = a.h.rmatrix();
        let engine =
            a.h.tensor_multiply(&r.permute(&[1, 0]), &r)
                .map_err(|e| e.to_string())?;
        if engine != oracle_tensor(&rr_terms) {
            return Err(format!("{}: R_21 R differs from the idempotent form", a.name));
        }
        for x in 0..l {
            let mut e = GradedVector::zero(GroupElement(0));
            for (i, v) in idempotent(p, x).iter().enumerate() {
                e.add_term(i, v);
            }
            if !a.ints.eval_lambda(&e).map_err(|e| e.to_string())?.is_one() {
                return Err(format!("{}: lambda(E_{x}) is not 1", a.name));
            }
        }
        // lambda(a_i b_i) = sum_a w^{d a^2}; (lambda (x) lambda)(R_21 R) = sum_{a,b} w^{2dab}
        let mut curl = CycloScalar::zero(c);
        let mut hopf = CycloScalar::zero(c);
        for x in 0..l {
            curl = &curl + &w(c, (d * x * x) as i64);
            for y in 0..l {
                hopf = &hopf + &w(c, (2 * d * x * y) as i64);
            }
        }
        let g = a.h.group().clone();
        let cp2_cd = ColoredDiagram::trivial(cp2(), g.clone()).map_err(|e| e.to_string())?;
        let hopf_cd = ColoredDiagram::trivial(s2xs2(), g).map_err(|e| e.to_string())?;
        if bracket(&a.h, &a.ints, &cp2_cd).map_err(|e| e.to_string())? != curl {
            return Err(format!("{}: curl bracket", a.name));
        }
        if bracket(&a.h, &a.ints, &hopf_cd).map_err(|e| e.to_string())? != hopf {
            return Err(format!("{}: Hopf link bracket", a.name));
        }
    }
    Ok(format!("{} grid points", grid.len()))
}

fn ribbon_certification(grid: &[CyclicParams]) -> Outcome {
    for a in grid.iter().map(|&p| load(p)).chain([load_kp()]) {
        let dr = drinfeld_element(&a.h).map_err(|e| format!("{}: {e}", a.name))?;
        let one = a.h.unit();
        if a.h.multiply(&dr.u, &dr.u_inv) != one || a.h.apply_antipode(&dr.u) != dr.u {
            return Err(format!("{}: u is not an invertible S-fixed element", a.name));
        }
        for i in 0..a.h.dim(a.h.one_grade()) {
            let x = a.h.basis_vector(a.h.one_grade(), i);
            if a.h.multiply(&dr.u, &x) != a.h.multiply(&x, &dr.u) {
                return Err(format!("{}: u is not central", a.name));
            }
        }
    }
    Ok(format!("{} algebras", grid.len() + 1))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let grid = grid();
    let criteria: Vec<Criterion> = vec![
        ("axiom suite", Box::new(|| axiom_suite(&grid))),
        ("integral reproduction", Box::new(|| integral_reproduction(&grid))),
        ("cp2 closed form and mirror", Box::new(|| cp2_values(&grid))),
        ("s2xs2 closed form", Box::new(|| s2xs2_values(&grid))),
        ("s1xs3 per color and summed", Box::new(|| s1xs3_values(&grid))),
        (
            "s1xs1xs2 per connection and summed",
            Box::new(|| s1xs1xs2_values(&grid)),
        ),
        ("move-invariance fuzzing", Box::new(move_fuzz)),
        (
            "orientation and start-point independence",
            Box::new(|| orientation_and_start(&grid)),
        ),
        ("connected-sum multiplicativity", Box::new(connected_sums)),
        ("idempotent-basis oracle", Box::new(|| idempotent_oracle(&grid))),
        ("ribbon certification", Box::new(|| ribbon_certification(&grid))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("acceptance {name}: PASS ({detail}; {secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("acceptance {name}: FAIL ({why}; {secs:.1}s)");
            }
        }
    }
    println!(
        "acceptance summary: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

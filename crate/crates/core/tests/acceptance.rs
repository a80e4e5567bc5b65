use std::time::{Duration, Instant};

use hirzebruch::braid::{braid_equal, BraidWord};
use hirzebruch::complex::{build_complex, census, classify_vertices, closed_form_counts, ComplexParams, VertexKind};
use hirzebruch::factorization::{assemble, certify};
use hirzebruch::grouptheory::{
    abelianization, check_perm_quotient, kernel_generators, rank_mod_p, reidemeister_schreier, sparse_relation_rows, todd_coxeter,
    triangle_assignment, AbelianInvariants, Transversal,
};
use hirzebruch::model::{check_prime, edge_lattice, predict_series, verify_identities, IdentityKind, Model, Reading, TwistSystem, NU};
use hirzebruch::vankampen::{presentation_unchecked, tietze_simplify, PresentationKind};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn p(a: i64, b: i64) -> ComplexParams {
    ComplexParams::new(a, b).unwrap()
}

fn timed(limit: Duration, start: Instant, mut v: Verdict) -> Verdict {
    let t = start.elapsed();
    if t > limit {
        v.pass = false;
        v.detail.push_str(&format!("; took {t:.1?}, limit {limit:?}"));
    } else {
        v.detail.push_str(&format!(" [{t:.2?}]"));
    }
    v
}

fn census_formulas() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for a in 1..=5 {
        for b in 2..=6 {
            let n = 2 * a * b + b * b;
            let lines = 3 * a * b - a + 3 * b * (b - 1) / 2;
            let c = build_complex(p(a, b)).unwrap();
            let classes = classify_vertices(&c);
            let r = census(p(a, b)).unwrap();
            let unclassified = classes.iter().filter(|v| v.kind == VertexKind::CornerUnclassified).count() as i64;
            let degrees_ok = classes.iter().all(|v| {
                let lines = match v.kind {
                    VertexKind::TwoPoint => 1,
                    VertexKind::ThreePoint => 2,
                    VertexKind::SixPoint => 6,
                    VertexKind::CornerUnclassified => 0,
                };
                v.incident_lines.len() == lines && v.multiplicity == 2 * lines
            });
            let classified = r.two_points + r.three_points + r.six_points + unclassified == c.vertices.len() as i64;
            if r.n != n || r.lines != lines || r != closed_form_counts(p(a, b)) || unclassified > 2 || !degrees_ok || !classified {
                bad.push(format!("({a},{b})"));
            }
        }
    }
    timed(Duration::from_secs(1), start, verdict(bad.is_empty(), format!("25 cells, mismatches: {bad:?}")))
}

fn delta_squared_certificate() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for (a, b) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let start = Instant::now();
        let fz = assemble(&build_complex(p(a, b)).unwrap()).unwrap();
        let m = fz.strands() as i64;
        let cert = certify(&fz, 0);
        let artin = ((a, b) == (1, 2)).then(|| braid_equal(&fz.product(), &BraidWord::full_twist(m as usize)));
        let t = start.elapsed();
        let ok = cert.degree == m * (m - 1)
            && cert.permutation_identity
            && cert.linking_ok_pairs == cert.linking_pairs
            && cert.linking_pairs as i64 == m * (m - 1) / 2
            && artin != Some(false)
            && t < Duration::from_secs(if (a, b) == (1, 2) { 300 } else { 30 });
        pass &= ok;
        parts.push(format!(
            "({a},{b}) degree {}/{} perm {} linking {}/{} artin {:?} [{t:.1?}]",
            cert.degree,
            m * (m - 1),
            cert.permutation_identity,
            cert.linking_ok_pairs,
            cert.linking_pairs,
            artin
        ));
    }
    verdict(pass, parts.join("; "))
}

fn symmetric_quotient() -> Verdict {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for (a, b, n) in [(1, 2, 8), (1, 3, 15)] {
        let c = build_complex(p(a, b)).unwrap();
        let pr = presentation_unchecked(&assemble(&c).unwrap(), PresentationKind::Affine).unwrap();
        let r = check_perm_quotient(&pr, &triangle_assignment(&c, &pr).unwrap()).unwrap();
        let ok = r.passed() && r.degree == n && r.full_symmetric;
        pass &= ok;
        parts.push(format!("S_{n}: {} of {} relators violated, full symmetric {}", r.violations, pr.relators.len(), r.full_symmetric));
    }
    timed(Duration::from_secs(10), start, verdict(pass, parts.join("; ")))
}

fn abelianizations() -> Verdict {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for (a, b, listed) in [(1, 2, 12), (1, 3, 34)] {
        let m1 = 3 * a * b - a - b + (3 * b * b - 3 * b) / 2;
        let projective = 2 * m1;
        if projective != listed {
            parts.push(format!("({a},{b}) listed value Z_{listed} differs from Z_2m1 = Z_{projective}"));
        }
        let fz = assemble(&build_complex(p(a, b)).unwrap()).unwrap();
        for (kind, expected) in [
            (PresentationKind::Affine, AbelianInvariants::cyclic(0)),
            (PresentationKind::Projective, AbelianInvariants::cyclic(projective)),
        ] {
            let pr = presentation_unchecked(&fz, kind).unwrap();
            let ab = abelianization(&pr);
            let (simple, _) = tietze_simplify(&pr, 20_000, 4_000);
            let ab2 = abelianization(&simple);
            let ok = ab == expected && ab2 == ab;
            pass &= ok;
            parts.push(format!("({a},{b}) {kind:?} {ab} after Tietze {ab2} (want {expected})"));
        }
    }
    timed(Duration::from_secs(60), start, verdict(pass, parts.join("; ")))
}

fn representation_property() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    let mut check = |label: String, m: &Model| {
        count += 1;
        let rel = m.relator_failures();
        let form = m.form_failures();
        if !rel.is_empty() || !form.is_empty() {
            bad.push(format!("{label}: {} relators, {} form", rel.len(), form.len()));
        }
    };
    for n in 2..=24 {
        check(format!("pure braid n={n}"), &Model::pure_braid(n));
        check(format!("G0 path n={n}"), &Model::g0(TwistSystem::path(n)));
    }
    for a in 1..=5 {
        for b in 2..=4 {
            if 2 * a * b + b * b > 24 {
                continue;
            }
            let c = build_complex(p(a, b)).unwrap();
            check(format!("G0 K({a},{b})"), &Model::g0(TwistSystem::from_complex(&c)));
            check(format!("combined K({a},{b})"), &Model::combined(TwistSystem::from_complex(&c)));
        }
    }
    timed(Duration::from_secs(60), start, verdict(bad.is_empty(), format!("{count} models, failures: {bad:?}")))
}

fn prime_suite() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 5..=8 {
        let m = Model::pure_braid(n);
        let g = &m.group;
        let s1 = m.square_element().unwrap();
        let x2sq = m.act(&s1, &[(1, 1), (0, 1)]);
        let u = g.mul(&m.act(&s1, &[(1, -1)]), &g.inv(&x2sq));
        let ambient: Vec<usize> = (1..n).collect();
        let r = check_prime(&m, &u, 0, &ambient, 3);
        if !r.all_hold() || u != m.prime(0, 0) || r.tau.as_deref() != Some("c") {
            bad.push(format!("u at n={n}: {:?}", r.first_failure().map(|c| c.name.clone())));
        }
    }
    for (a, b) in [(1, 2), (1, 3), (2, 2)] {
        let c = build_complex(p(a, b)).unwrap();
        let m = Model::g0(TwistSystem::from_complex(&c));
        let y11 = m.system.index_of_name("y_1_1").unwrap();
        let b11 = m.prime(0, y11);
        let ambient: Vec<usize> = (0..m.group.rank()).collect();
        let r = check_prime(&m, &b11, y11, &ambient, 3);
        let flips = m.act(&b11, &[(y11, 1)]) == m.group.mul(&m.group.inv(&b11), &m.group.central(NU));
        if !r.all_hold() || !flips {
            bad.push(format!("B_1_1 at ({a},{b}): {:?}", r.first_failure().map(|c| c.name.clone())));
        }
    }
    timed(Duration::from_secs(10), start, verdict(bad.is_empty(), format!("u for n=5..8, B_1_1 on three complexes; failures: {bad:?}")))
}

fn identity_suite() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    let (mut held, mut total) = (0, 0);
    for a in 1..=4 {
        for b in 2..=5 {
            match verify_identities(&build_complex(p(a, b)).unwrap(), Reading::CToMu, 1_000_000) {
                Ok(r) => {
                    let (h, t) = r.count(IdentityKind::Statement);
                    held += h;
                    total += t;
                    if !r.statements_hold() {
                        bad.push(format!("({a},{b})"));
                    }
                }
                Err(e) => bad.push(format!("({a},{b}): {e}")),
            }
        }
    }
    timed(Duration::from_secs(120), start, verdict(bad.is_empty(), format!("{held}/{total} statement instances over 16 cells; failing cells {bad:?}")))
}

fn lattice_predictions() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for a in 1..=5 {
        for b in 2..=6 {
            let det: i64 = -b - 2 * (a - b);
            let oracle = AbelianInvariants::cyclic(det.abs());
            let pr = predict_series(p(a, b));
            let n = (2 * a * b + b * b) as usize;
            if edge_lattice(p(a, b)) != oracle
                || pr.modulus.abs() != (b - 2 * a).abs()
                || pr.affine.middle != AbelianInvariants::cyclic_power(det.abs(), n - 1)
            {
                bad.push(format!("({a},{b})"));
            }
        }
    }
    timed(Duration::from_secs(1), start, verdict(bad.is_empty(), format!("25 cells, mismatches {bad:?}")))
}

fn brute_force_cross_check() -> Verdict {
    let start = Instant::now();
    let c = build_complex(p(1, 2)).unwrap();
    let fz = assemble(&c).unwrap();
    let pr = presentation_unchecked(&fz, PresentationKind::Affine).unwrap();
    let asg = triangle_assignment(&c, &pr).unwrap();
    let kernel = match kernel_generators(&pr, &asg, 50_000) {
        Ok(k) => k,
        Err(e) => return verdict(false, format!("kernel generators: {e}")),
    };
    let table = match todd_coxeter(&pr, &kernel, 2_000_000) {
        Ok(t) => t,
        Err(e) => return verdict(false, format!("coset enumeration did not complete: {e}")),
    };
    let index = table.index();
    let sub = reidemeister_schreier(&pr, &table, Transversal::BreadthFirst).unwrap();
    let rows = sparse_relation_rows(&sub);
    let free3 = sub.rank() - rank_mod_p(&rows, 3);
    let free5 = sub.rank() - rank_mod_p(&rows, 5);
    let pass = index == 40320 && free3 == 8 && free5 == 8;
    timed(
        Duration::from_secs(3600),
        start,
        verdict(pass, format!("coset enumeration closed at {index} cosets (want 40320); kernel free rank mod 3 {free3}, mod 5 {free5} (want 8)")),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("census formulas", census_formulas),
        ("full twist certificate", delta_squared_certificate),
        ("symmetric group quotient", symmetric_quotient),
        ("abelianizations", abelianizations),
        ("model representation property", representation_property),
        ("prime element suite", prime_suite),
        ("identity suite", identity_suite),
        ("lattice predictions", lattice_predictions),
        ("brute-force cross-check (stretch)", brute_force_cross_check),
    ];
    let mut red = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f();
        println!("criterion {}: {} {}: {}", i + 1, if v.pass { "PASS" } else { "FAIL" }, name, v.detail);
        if !v.pass {
            red.push(i + 1);
        }
    }
    println!("acceptance: {}/9 pass; failing {red:?}", 9 - red.len());
    if !red.is_empty() {
        std::process::exit(1);
    }
}

#![allow(clippy::needless_range_loop)]

//! The acceptance suite: one test per criterion, each printing a pass/fail
//! line per instance. Everything is exact arithmetic, zero tolerance.

use num_traits::Zero;

use nlra::cohomology::{Alternation, Complex};
use nlra::exact::{scalar_int, Matrix, Scalar, Vector};
use nlra::ext::{
    central_extend, central_extend_unchecked, check_2cocycle_module, check_central_cocycle,
    check_phi_a_multilinear, check_theta_a_multilinear, phi_equivalence, t_theta_extend,
    t_theta_extend_unchecked, theta_from_cochain, AlternatingMap,
};
use nlra::fixtures;
use nlra::rep::{adjoint_kernel_rep, regular_rep, trivial_rep, Representation};
use nlra::wedge::WedgeBasis;

fn line(criterion: &str, instance: &str, ok: bool) -> bool {
    println!(
        "acceptance {criterion}: {instance:.<58} {}",
        if ok { "pass" } else { "FAIL" }
    );
    ok
}

#[test]
fn criterion_1_axiom_suites() {
    let mut all_ok = true;
    for (name, r) in fixtures::all() {
        let report = r.verify(false);
        all_ok &= line(
            "1 axiom-suites",
            &format!("{name} verifies"),
            report.passed(),
        );
    }
    for (name, _) in fixtures::all() {
        let report = fixtures::mutated(name).verify(false);
        let localized = !report.passed() && report.failures().all(|c| c.witness.is_some());
        all_ok &= line(
            "1 axiom-suites",
            &format!("{name} mutation fails with witness"),
            localized,
        );
    }
    assert!(all_ok);
}

#[test]
fn criterion_2_complex_property() {
    let mut all_ok = true;
    for (name, r) in fixtures::all() {
        let coeffs: Vec<(&str, Representation)> = vec![
            ("trivial", trivial_rep(&r).unwrap()),
            ("anchor", regular_rep(&r)),
            ("adjoint-kernel", adjoint_kernel_rep(&r).unwrap().0),
        ];
        for (cname, rep) in &coeffs {
            for p in 1..=2 {
                let cx = Complex::new(&r, rep, Alternation::Block);
                let ok = cx.check_square_zero(p).passed();
                all_ok &= line("2 delta-squared", &format!("{name}/{cname} p={p}"), ok);
            }
        }
    }
    assert!(all_ok);
}

/// Independent brute-force oracle for NILP4 with trivial rational
/// coefficients: dense enumeration over all (non-canonical) index tuples,
/// inline Levi-Civita bracket, and a self-contained rational elimination.
mod oracle {
    use num_rational::BigRational;
    use num_traits::Zero;

    /// [e_a, e_b, e_c] = eps e_3 when {a,b,c} = {0,1,2}, else zero.
    fn eps(a: usize, b: usize, c: usize) -> i64 {
        let mut v = [a, b, c];
        let mut sign = 1i64;
        // insertion sort with sign
        for i in 1..3 {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v == [0, 1, 2] {
            sign
        } else {
            0
        }
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Rank by plain Gauss elimination over the rationals.
    fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = rows[rank][col].clone();
            for j in 0..ncols {
                let x = rows[rank][j].clone() / &inv;
                rows[rank][j] = x;
            }
            for r in 0..rows.len() {
                if r == rank || rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].clone();
                for j in 0..ncols {
                    let x = rows[r][j].clone() - &factor * &rows[rank][j];
                    rows[r][j] = x;
                }
            }
            rank += 1;
        }
        rank
    }

    /// phi is stored on free coordinates (i < j, z); the dense value
    /// phi(i, j, z) follows by antisymmetry in (i, j).
    fn pair_index(i: usize, j: usize) -> usize {
        // pairs in lexicographic order over 0..4
        const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        PAIRS.iter().position(|&p| p == (i, j)).unwrap()
    }

    fn phi_coeff(i: usize, j: usize, z: usize) -> Option<(usize, i64)> {
        if i == j {
            return None;
        }
        if i < j {
            Some((pair_index(i, j) * 4 + z, 1))
        } else {
            Some((pair_index(j, i) * 4 + z, -1))
        }
    }

    /// dim H^2 of NILP4 with trivial coefficients, computed from scratch.
    pub fn nilp4_trivial_h2() -> usize {
        let ncols = 24;
        // delta^2 rows over all dense tuples (a,b),(c,d),z
        let mut d2 = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        for z in 0..4 {
                            let mut row = vec![rat(0); ncols];
                            let mut touch = |term: Option<(usize, i64)>, scale: i64| {
                                if scale == 0 {
                                    return;
                                }
                                if let Some((col, sgn)) = term {
                                    row[col] += rat(sgn * scale);
                                }
                            };
                            // -phi([a,b,c] ^ d, z) - phi(c ^ [a,b,d], z)
                            touch(phi_coeff(3, d, z), -eps(a, b, c));
                            touch(phi_coeff(c, 3, z), -eps(a, b, d));
                            // - phi(c, d, ad(a,b) z) + phi(a, b, ad(c,d) z)
                            touch(phi_coeff(c, d, 3), -eps(a, b, z));
                            touch(phi_coeff(a, b, 3), eps(c, d, z));
                            if row.iter().any(|x| !x.is_zero()) {
                                d2.push(row);
                            }
                        }
                    }
                }
            }
        }
        let rank_d2 = rank(d2);

        // delta^1: f -> ((a,b),z) -> -f([e_a,e_b,e_z]) with values in Q^4
        let mut d1 = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for z in 0..4 {
                    let mut row = vec![rat(0); 4];
                    let e = eps(a, b, z);
                    if e != 0 {
                        row[3] = rat(-e);
                        d1.push(row);
                    }
                }
            }
        }
        let rank_d1 = rank(d1);

        (ncols - rank_d2) - rank_d1
    }
}

#[test]
fn criterion_3_cohomology_oracle() {
    let mut all_ok = true;

    let abel = fixtures::abel4();
    let triv = trivial_rep(&abel).unwrap();
    let cx = Complex::new(&abel, &triv, Alternation::Block);
    all_ok &= line(
        "3 cohomology",
        "abel4 trivial dim H^1 = 4",
        cx.cohomology(1).unwrap().dim_h == 4,
    );
    all_ok &= line(
        "3 cohomology",
        "abel4 trivial dim H^2 = 24",
        cx.cohomology(2).unwrap().dim_h == 24,
    );

    // frozen regression constant, fixed from the brute-force oracle before
    // the main build
    const NILP4_TRIVIAL_H2: usize = 11;
    let oracle_value = oracle::nilp4_trivial_h2();
    all_ok &= line(
        "3 cohomology",
        &format!("oracle value {oracle_value} matches frozen constant"),
        oracle_value == NILP4_TRIVIAL_H2,
    );
    let nilp = fixtures::nilp4();
    let triv = trivial_rep(&nilp).unwrap();
    let cx = Complex::new(&nilp, &triv, Alternation::Block);
    let implemented = cx.cohomology(2).unwrap().dim_h;
    all_ok &= line(
        "3 cohomology",
        &format!("implementation dim H^2 = {implemented} matches oracle"),
        implemented == oracle_value,
    );
    assert!(all_ok);
}

#[test]
fn criterion_4_extension_iff() {
    let mut all_ok = true;

    // central, positive direction: cocycles extend to verified algebras
    let nilp = fixtures::nilp4();
    let phi = AlternatingMap::new(4, 3, 1, &[(vec![0, 1, 2], Vector::from_ints(&[1]))]).unwrap();
    let sweep_ok = check_phi_a_multilinear(&nilp, &phi).passed()
        && check_central_cocycle(&nilp, &phi).passed();
    let built_ok = central_extend(&nilp, &phi)
        .map(|e| e.verify(false).passed())
        .unwrap_or(false);
    all_ok &= line(
        "4 extension-iff",
        "nilp4 central cocycle: sweep pass -> verify pass",
        sweep_ok && built_ok,
    );
    for t in WedgeBasis::new(4, 3).blocks() {
        let a4 = fixtures::a4();
        let phi = AlternatingMap::new(4, 3, 1, &[(t.indices().to_vec(), Vector::from_ints(&[1]))])
            .unwrap();
        let sweep_ok = check_central_cocycle(&a4, &phi).passed();
        let built_ok = central_extend_unchecked(&a4, &phi).verify(false).passed();
        all_ok &= line(
            "4 extension-iff",
            &format!("a4 central indicator {:?}: sweep == verify", t.indices()),
            sweep_ok == built_ok && sweep_ok,
        );
    }

    // central, negative direction: the b4 indicator fails both ways with a
    // localized witness
    let b4 = fixtures::b4();
    let bad_phi =
        AlternatingMap::new(4, 3, 1, &[(vec![0, 1, 3], Vector::from_ints(&[1]))]).unwrap();
    let sweep = check_central_cocycle(&b4, &bad_phi);
    let sweep_fails = !sweep.passed() && sweep.failures().all(|c| c.witness.is_some());
    let built = central_extend_unchecked(&b4, &bad_phi);
    let verify_fails = !built.verify(false).passed();
    all_ok &= line(
        "4 extension-iff",
        "b4 central non-cocycle: sweep fail <-> verify fail",
        sweep_fails && verify_fails && central_extend(&b4, &bad_phi).is_err(),
    );

    // T_theta, positive direction
    let (adj, _) = adjoint_kernel_rep(&nilp).unwrap();
    let cx = Complex::new(&nilp, &adj, Alternation::Block);
    let mut coords = vec![Scalar::zero(); 16];
    for z in 0..4 {
        coords[z * 4 + z] = scalar_int(1);
    }
    let id = cx.cochain_from_raw(1, coords);
    let theta = theta_from_cochain(&nilp, &adj, &id);
    let sweep_ok = check_theta_a_multilinear(&nilp, &adj, &theta).passed()
        && check_2cocycle_module(&nilp, &adj, &theta).passed();
    let built_ok = t_theta_extend(&nilp, &adj, &theta)
        .map(|e| e.verify(false).passed())
        .unwrap_or(false);
    all_ok &= line(
        "4 extension-iff",
        "nilp4 theta_Id: sweep pass -> verify pass",
        sweep_ok && built_ok,
    );

    // T_theta, negative direction: scan for a failing indicator on a4
    let a4 = fixtures::a4();
    let (adj4, _) = adjoint_kernel_rep(&a4).unwrap();
    let mut found_bad = false;
    'outer: for t in WedgeBasis::new(4, 3).blocks() {
        for m in 0..4 {
            let theta = AlternatingMap::new(4, 3, 4, &[(t.indices().to_vec(), Vector::unit(4, m))])
                .unwrap();
            let sweep = check_2cocycle_module(&a4, &adj4, &theta);
            if !sweep.passed() {
                let witnessed = sweep.failures().all(|c| c.witness.is_some());
                let built = t_theta_extend_unchecked(&a4, &adj4, &theta).unwrap();
                let verify_fails = !built.verify(false).passed();
                let strict_rejects = t_theta_extend(&a4, &adj4, &theta).is_err();
                found_bad = witnessed && verify_fails && strict_rejects;
                break 'outer;
            }
        }
    }
    all_ok &= line(
        "4 extension-iff",
        "a4 theta non-cocycle: sweep fail <-> verify fail",
        found_bad,
    );
    assert!(all_ok);
}

#[test]
fn criterion_5_theta_f_relation() {
    let mut all_ok = true;
    let nilp = fixtures::nilp4();
    let (adj, _) = adjoint_kernel_rep(&nilp).unwrap();
    let cx = Complex::new(&nilp, &adj, Alternation::Block);
    let basis = cx.basis(1);
    assert_eq!(basis.dim(), 16);
    for (j, v) in basis.vectors().iter().enumerate() {
        let f = cx.cochain_from_raw(1, v.entries().to_vec());
        let theta = theta_from_cochain(&nilp, &adj, &f);
        let df = cx.coboundary(&f);
        let mut equal = true;
        for b in 0..nilp.blocks().len() {
            let idx = nilp.blocks().block(b).indices().to_vec();
            for z in 0..4 {
                let mut full = idx.clone();
                full.push(z);
                if theta.eval_basis(&full) != df.value_vector(&[b], z).neg() {
                    equal = false;
                }
            }
        }
        let cocycle = check_2cocycle_module(&nilp, &adj, &theta).passed();
        all_ok &= line(
            "5 theta_f",
            &format!("basis cochain {j}: theta_f = -delta f and is a cocycle"),
            equal && cocycle,
        );
    }
    assert!(all_ok);
}

#[test]
fn criterion_6_phi_equivalence() {
    let nilp = fixtures::nilp4();
    let (adj, _) = adjoint_kernel_rep(&nilp).unwrap();
    let cx = Complex::new(&nilp, &adj, Alternation::Block);
    let mut coords = vec![Scalar::zero(); 16];
    for z in 0..4 {
        coords[z * 4 + z] = scalar_int(1);
    }
    let id = cx.cochain_from_raw(1, coords);
    let theta = AlternatingMap::zero(4, 3, 4);
    let eq = phi_equivalence(&nilp, &adj, &theta, &id).unwrap();
    let ok = line(
        "6 phi-equivalence",
        "T_0 and T_theta_Id on nilp4 adjoint are isomorphic via Phi",
        eq.report.passed(),
    );
    // exact bracket transport on all basis tuples in both directions was
    // swept by the morphism check; additionally pin the carrier shape
    assert_eq!(eq.t_theta.dim(), 8);
    assert_eq!(eq.t_theta_shifted.dim(), 8);
    assert!(ok, "{}", eq.report);
}

#[test]
fn criterion_7_constructions() {
    let mut all_ok = true;
    for (name, r) in fixtures::all() {
        let tensor_ok = r
            .tensor_extend()
            .map(|e| e.verify(false).passed())
            .unwrap_or(false);
        // The tensor enlargement drops the anchor-correction terms from its
        // bracket, so the compatibility condition acquires the unmatched
        // term (a_1...a_{n-1} rho(x...)(b)) (a_n ⊗ x_n) whenever the anchor
        // is nonzero: the construction cannot verify on dual and der2.
        all_ok &= line(
            "7 constructions",
            &format!("tensor_extend({name}) verifies"),
            tensor_ok,
        );
    }
    for (name, r) in fixtures::all() {
        let append_ok = r
            .append_a()
            .map(|e| e.verify(false).passed())
            .unwrap_or(false);
        all_ok &= line(
            "7 constructions",
            &format!("append_a({name}) verifies"),
            append_ok,
        );
    }
    assert!(
        all_ok,
        "the tensor enlargement drops the anchor-correction terms from its \
         bracket, so the compatibility law fails whenever the anchor is \
         nonzero; the FAIL lines above carry exact witnesses (see README, \
         Build and test)"
    );
}

#[test]
fn criterion_8_crossed_modules() {
    let mut all_ok = true;
    for (name, r, x) in fixtures::crossed_fixtures() {
        let report = nlra::crossed::verify_crossed(&r, &x);
        all_ok &= line(
            "8 crossed",
            &format!("{name} passes CM0-CM4"),
            report.passed(),
        );
    }

    // h invariants on every accepted ternary input with default sections
    for (name, r, x) in fixtures::crossed_fixtures() {
        let trace = nlra::crossed::h_class(&r, &x, None, None).unwrap();
        all_ok &= line(
            "8 crossed",
            &format!("{name}: h in kernel, delta^3 h = 0, A-multilinear"),
            trace.square_zero,
        );
    }

    // 50 seeded random section pairs per fixture on which sections vary
    // freely (the b4 fixture rejects off-complement sections by design;
    // its negative path is covered in the unit suite)
    for (name, r, x) in fixtures::crossed_fixtures() {
        if name == "b4_central" {
            continue;
        }
        let mut ok = true;
        for k in 0..50u64 {
            let (s1, g1) = nlra::crossed::random_sections(&r, &x, 2 * k).unwrap();
            let (s2, g2) = nlra::crossed::random_sections(&r, &x, 2 * k + 1).unwrap();
            let cmp = nlra::crossed::h_class_section_independence(
                &r,
                &x,
                Some(s1),
                Some(g1),
                Some(s2),
                Some(g2),
            )
            .unwrap();
            ok &= cmp.classes_equal && cmp.certificate.is_some();
        }
        all_ok &= line(
            "8 crossed",
            &format!("{name}: 50 section pairs, coboundary certificates found"),
            ok,
        );
    }

    // elementary-equivalence transport on the basis-permuted pair
    {
        let (r, x) = fixtures::inclusion_nilp4_2dim_crossed();
        let r2 = fixtures::nilp4();
        let m_bracket = nlra::nlie::NLieAlgebra::zero(2, 3);
        let mut psi01 = Matrix::zero(2, 2);
        psi01.set(0, 1, scalar_int(1));
        let rep =
            Representation::new(&r2, 2, vec![Matrix::identity(2)], &[(vec![0, 1], psi01)]).unwrap();
        let module = nlra::crossed::LieModule::new(m_bracket, rep).unwrap();
        let boundary = Matrix::from_cols(4, &[Vector::unit(4, 3), Vector::unit(4, 2)]);
        let x2 = nlra::crossed::CrossedModule::new(&r2, module, boundary).unwrap();
        let mut swap = Matrix::zero(2, 2);
        swap.set(0, 1, scalar_int(1));
        swap.set(1, 0, scalar_int(1));
        let equiv =
            nlra::crossed::elementary_equivalent(&r, &x, &r2, &x2, &swap, &Matrix::identity(4))
                .unwrap();
        let t1 = nlra::crossed::h_class(&r, &x, None, None).unwrap();
        let t2 = nlra::crossed::h_class(&r2, &x2, None, None).unwrap();
        all_ok &= line(
            "8 crossed",
            "basis-permuted pair: equivalent with equal classes",
            equiv.passed() && t1.class_zero == t2.class_zero,
        );
    }
    assert!(all_ok);
}

#[test]
fn criterion_9_cli() {
    use std::process::Command;
    let mut all_ok = true;
    let fixture = |name: &str| {
        std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("fixtures")
            .join(format!("{name}.json"))
    };
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_nlra"))
            .args(args)
            .output()
            .expect("binary runs")
    };

    // all four commands succeed on the fixture corpus (full golden-file
    // comparisons live in the cli integration suite)
    let out = run(&["verify", fixture("dual").to_str().unwrap()]);
    all_ok &= line("9 cli", "verify dual exits 0", out.status.code() == Some(0));
    let out = run(&[
        "cohomology",
        fixture("nilp4").to_str().unwrap(),
        "--p",
        "2",
        "--json",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    all_ok &= line(
        "9 cli",
        "cohomology nilp4 p=2 reports H2_dim = 11",
        doc["numbers"]["H2_dim"] == serde_json::json!(11),
    );
    let out = run(&[
        "extend",
        fixture("nilp4_central_phi").to_str().unwrap(),
        "--mode",
        "central",
        "--json",
    ]);
    all_ok &= line(
        "9 cli",
        "extend central exits 0",
        out.status.code() == Some(0),
    );
    let out = run(&[
        "crossed",
        fixture("crossed_zero_boundary_nilp4").to_str().unwrap(),
        "--action",
        "verify",
    ]);
    all_ok &= line(
        "9 cli",
        "crossed verify exits 0",
        out.status.code() == Some(0),
    );

    // emitted bundles re-parse to structurally equal objects
    let tmp = std::env::temp_dir().join("nlra_acceptance_emit.json");
    let out = run(&[
        "extend",
        fixture("dual").to_str().unwrap(),
        "--mode",
        "append_a",
        "--emit",
        tmp.to_str().unwrap(),
    ]);
    let reparsed =
        nlra::bundle::Bundle::from_json(&std::fs::read_to_string(&tmp).unwrap()).unwrap();
    let direct = fixtures::dual().append_a().unwrap();
    all_ok &= line(
        "9 cli",
        "emitted bundle re-parses to the constructed object",
        out.status.code() == Some(0) && reparsed.rinehart == direct,
    );

    // exit-code contract: 1 on failed checks, 2 on input errors
    let out = run(&[
        "extend",
        fixture("b4_noncocycle_phi").to_str().unwrap(),
        "--mode",
        "central",
    ]);
    all_ok &= line(
        "9 cli",
        "non-cocycle extension exits 1",
        out.status.code() == Some(1),
    );
    let out = run(&["verify", "/nonexistent.json"]);
    all_ok &= line(
        "9 cli",
        "unreadable input exits 2",
        out.status.code() == Some(2),
    );

    assert!(all_ok);
}

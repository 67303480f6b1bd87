//! Small named structures used throughout the test suites and shipped as
//! example bundles for the CLI. Quotient presentations like `Q[t]/(t^k)`
//! are pre-expanded into structure-constant tables here.

use num_traits::Zero;

use crate::base_algebra::CommAlgebra;
use crate::exact::{scalar_int, Matrix, Vector};
use crate::nlie::NLieAlgebra;
use crate::rinehart::NLieRinehart;

/// 4-dimensional abelian 3-Lie algebra over the field.
pub fn abel4() -> NLieRinehart {
    NLieRinehart::new(
        CommAlgebra::rationals(),
        NLieAlgebra::zero(4, 3),
        vec![Matrix::identity(4)],
        &[],
    )
    .expect("fixture is well-formed")
}

/// Nilpotent: `[e0,e1,e2] = e3`, everything else zero.
pub fn nilp4() -> NLieRinehart {
    let lie = NLieAlgebra::new(4, 3, &[(vec![0, 1, 2], Vector::unit(4, 3))]).unwrap();
    NLieRinehart::new(
        CommAlgebra::rationals(),
        lie,
        vec![Matrix::identity(4)],
        &[],
    )
    .expect("fixture is well-formed")
}

/// The simple 4-dimensional 3-Lie algebra: `[e_i,e_j,e_k] = eps_{ijkl} e_l`.
pub fn a4() -> NLieRinehart {
    let lie = NLieAlgebra::new(
        4,
        3,
        &[
            (vec![0, 1, 2], Vector::unit(4, 3)),
            (vec![0, 1, 3], Vector::unit(4, 2).neg()),
            (vec![0, 2, 3], Vector::unit(4, 1)),
            (vec![1, 2, 3], Vector::unit(4, 0).neg()),
        ],
    )
    .unwrap();
    NLieRinehart::new(
        CommAlgebra::rationals(),
        lie,
        vec![Matrix::identity(4)],
        &[],
    )
    .expect("fixture is well-formed")
}

/// Filippov's type (b): `[e0,e1,e2] = e0`. The quotient by the central
/// line `e3` is a nonabelian 3-dimensional algebra, which makes this the
/// one fixture whose alternating maps are not all central 2-cocycles.
pub fn b4() -> NLieRinehart {
    let lie = NLieAlgebra::new(4, 3, &[(vec![0, 1, 2], Vector::unit(4, 0))]).unwrap();
    NLieRinehart::new(
        CommAlgebra::rationals(),
        lie,
        vec![Matrix::identity(4)],
        &[],
    )
    .expect("fixture is well-formed")
}

/// Over `A = Q[t]/(t^2)`: `L` free on `u, v` with rational basis
/// `u, tu, v, tv` (indices 0..3), `n = 3`, anchor `rho(u ^ v) = t d/dt`
/// extended `A`-bilinearly, bracket `[u,v,tu] = tu`, `[u,v,tv] = tv`.
pub fn dual() -> NLieRinehart {
    dual_with_anchor_scaled(1)
}

/// Same carrier as [`dual`] but with the anchor multiplied by `scale`;
/// `scale != 1` breaks the compatibility condition while leaving every
/// other axiom intact, which is the mutation the verifier must localize.
pub fn dual_with_anchor_scaled(scale: i64) -> NLieRinehart {
    let base = CommAlgebra::truncated_polynomials(2);
    let lie = NLieAlgebra::new(
        4,
        3,
        &[
            // [u, tu, v] = -[u, v, tu] = -tu
            (vec![0, 1, 2], Vector::unit(4, 1).neg()),
            // [u, v, tv] = tv
            (vec![0, 2, 3], Vector::unit(4, 3)),
        ],
    )
    .unwrap();
    // t: u -> tu, v -> tv, t-multiples -> 0
    let mut t_action = Matrix::zero(4, 4);
    t_action.set(1, 0, scalar_int(1));
    t_action.set(3, 2, scalar_int(1));
    // t d/dt on the basis (1, t)
    let mut d = Matrix::zero(2, 2);
    d.set(1, 1, scalar_int(scale));
    NLieRinehart::new(
        base,
        lie,
        vec![Matrix::identity(4), t_action],
        &[(vec![0, 2], d)],
    )
    .expect("fixture is well-formed")
}

/// Classical (n = 2) Lie-Rinehart: `A = Q[t]/(t^3)`, `L = Der(A)` with
/// basis `D1 = t d/dt`, `D2 = t^2 d/dt`, bracket `[D1,D2] = D2`, anchor
/// the inclusion into `Der(A)`.
pub fn der2() -> NLieRinehart {
    let base = CommAlgebra::truncated_polynomials(3);
    let lie = NLieAlgebra::new(2, 2, &[(vec![0, 1], Vector::unit(2, 1))]).unwrap();
    // t: D1 -> D2, D2 -> 0; t^2: everything -> 0
    let mut t_action = Matrix::zero(2, 2);
    t_action.set(1, 0, scalar_int(1));
    // D1 = t d/dt on (1, t, t^2): diag(0, 1, 2)
    let mut d1 = Matrix::zero(3, 3);
    d1.set(1, 1, scalar_int(1));
    d1.set(2, 2, scalar_int(2));
    // D2 = t^2 d/dt: t -> t^2, t^2 -> 0
    let mut d2 = Matrix::zero(3, 3);
    d2.set(2, 1, scalar_int(1));
    NLieRinehart::new(
        base,
        lie,
        vec![Matrix::identity(2), t_action, Matrix::zero(2, 2)],
        &[(vec![0], d1), (vec![1], d2)],
    )
    .expect("fixture is well-formed")
}

/// NILP4 with scalars extended to `Q[t]/(t^2)`: trivial action of `t`
/// and zero anchor. Used to exercise the tensor enlargement over a base
/// that is not a field.
pub fn nilp4_over_dual_numbers() -> NLieRinehart {
    let base = CommAlgebra::truncated_polynomials(2);
    let lie = NLieAlgebra::new(4, 3, &[(vec![0, 1, 2], Vector::unit(4, 3))]).unwrap();
    NLieRinehart::new(
        base,
        lie,
        vec![Matrix::identity(4), Matrix::zero(4, 4)],
        &[],
    )
    .expect("fixture is well-formed")
}

/// Crossed module: the central line `span(e3)` of NILP4 included into it,
/// with the (vanishing) restricted adjoint action.
pub fn inclusion_nilp4_crossed() -> (NLieRinehart, crate::crossed::CrossedModule) {
    let r = nilp4();
    let m_bracket = NLieAlgebra::zero(1, 3);
    let rep = crate::rep::Representation::new(&r, 1, vec![Matrix::identity(1)], &[])
        .expect("well-formed");
    let module = crate::crossed::LieModule::new(m_bracket, rep).unwrap();
    let boundary = Matrix::from_cols(4, &[Vector::unit(4, 3)]);
    let x = crate::crossed::CrossedModule::new(&r, module, boundary).unwrap();
    (r, x)
}

/// Crossed module: the ideal `span(e2, e3)` of NILP4 included into it,
/// carrying the restricted adjoint action (which moves `e2` to `e3` under
/// the block `e0 ^ e1`).
pub fn inclusion_nilp4_2dim_crossed() -> (NLieRinehart, crate::crossed::CrossedModule) {
    let r = nilp4();
    let m_bracket = NLieAlgebra::zero(2, 3);
    // psi(e0 ^ e1): e2 -> e3 in the (e2, e3) coordinates of M
    let mut psi01 = Matrix::zero(2, 2);
    psi01.set(1, 0, scalar_int(1));
    let rep =
        crate::rep::Representation::new(&r, 2, vec![Matrix::identity(2)], &[(vec![0, 1], psi01)])
            .expect("well-formed");
    let module = crate::crossed::LieModule::new(m_bracket, rep).unwrap();
    let boundary = Matrix::from_cols(4, &[Vector::unit(4, 2), Vector::unit(4, 3)]);
    let x = crate::crossed::CrossedModule::new(&r, module, boundary).unwrap();
    (r, x)
}

/// Crossed module with zero boundary: the trivial one-dimensional module.
pub fn zero_boundary_nilp4_crossed() -> (NLieRinehart, crate::crossed::CrossedModule) {
    let r = nilp4();
    let m_bracket = NLieAlgebra::zero(1, 3);
    let rep = crate::rep::trivial_rep(&r).unwrap();
    let module = crate::crossed::LieModule::new(m_bracket, rep).unwrap();
    let boundary = Matrix::zero(4, 1);
    let x = crate::crossed::CrossedModule::new(&r, module, boundary).unwrap();
    (r, x)
}

/// Crossed module over FIX-DUAL with zero boundary and the anchor kernel
/// as the module: exercises the invariant machinery over a base algebra
/// that is not a field.
pub fn dual_kernel_crossed() -> (NLieRinehart, crate::crossed::CrossedModule) {
    let r = dual();
    let (rep, _) = crate::rep::adjoint_kernel_rep(&r).unwrap();
    let m_bracket = NLieAlgebra::zero(2, 3);
    let module = crate::crossed::LieModule::new(m_bracket, rep).unwrap();
    let boundary = Matrix::zero(4, 2);
    let x = crate::crossed::CrossedModule::new(&r, module, boundary).unwrap();
    (r, x)
}

/// Crossed module over FIX-DUAL: the anchor kernel included into `L`,
/// carrying the restricted adjoint action. The anchor vanishes on the
/// image by construction, so the fourth axiom holds over a base that is
/// not a field.
pub fn dual_inclusion_crossed() -> (NLieRinehart, crate::crossed::CrossedModule) {
    let r = dual();
    let (rep, kernel) = crate::rep::adjoint_kernel_rep(&r).unwrap();
    let m_bracket = NLieAlgebra::zero(2, 3);
    let module = crate::crossed::LieModule::new(m_bracket, rep).unwrap();
    let boundary = kernel.span_matrix().clone();
    let x = crate::crossed::CrossedModule::new(&r, module, boundary).unwrap();
    (r, x)
}

/// Crossed module over B4 whose boundary hits the central line `span(e3)`
/// with a one-dimensional kernel: the one fixture with nonzero kernel and
/// nonabelian cokernel. The eight-term invariant escapes the kernel for
/// sections with components along `e3`, which is the documented failure
/// mode of the construction.
pub fn b4_central_crossed() -> (NLieRinehart, crate::crossed::CrossedModule) {
    let r = b4();
    let m_bracket = NLieAlgebra::zero(2, 3);
    let rep = crate::rep::Representation::new(&r, 2, vec![Matrix::identity(2)], &[])
        .expect("well-formed");
    let module = crate::crossed::LieModule::new(m_bracket, rep).unwrap();
    let boundary = Matrix::from_cols(4, &[Vector::unit(4, 3), Vector::zero(4)]);
    let x = crate::crossed::CrossedModule::new(&r, module, boundary).unwrap();
    (r, x)
}

/// The crossed-module fixtures on which every axiom holds.
pub fn crossed_fixtures() -> Vec<(&'static str, NLieRinehart, crate::crossed::CrossedModule)> {
    let mut out = Vec::new();
    for (name, f) in [
        ("inclusion_nilp4", inclusion_nilp4_crossed as fn() -> _),
        ("inclusion_nilp4_2dim", inclusion_nilp4_2dim_crossed),
        ("zero_boundary_nilp4", zero_boundary_nilp4_crossed),
        ("dual_kernel", dual_kernel_crossed),
        ("dual_inclusion", dual_inclusion_crossed),
        ("b4_central", b4_central_crossed),
    ] {
        let (r, x) = f();
        out.push((name, r, x));
    }
    out
}

/// The example bundle documents shipped with the crate and used by the
/// command-line golden tests: every fixture, plus payload blocks for the
/// extension and crossed-module commands.
pub fn example_bundles() -> Vec<(&'static str, serde_json::Value)> {
    use crate::bundle::{
        alternating_to_json, crossed_to_json, representation_to_json, rinehart_to_json,
    };
    use crate::cohomology::{Alternation, Complex};

    let mut out = Vec::new();
    for (name, r) in all() {
        out.push((name, rinehart_to_json(&r)));
    }

    // nilp4 with the indicator central cocycle phi(e0,e1,e2) = 1
    {
        let r = nilp4();
        let phi =
            crate::ext::AlternatingMap::new(4, 3, 1, &[(vec![0, 1, 2], Vector::from_ints(&[1]))])
                .unwrap();
        let mut doc = rinehart_to_json(&r);
        doc.as_object_mut()
            .unwrap()
            .insert("phi".into(), alternating_to_json(&phi));
        out.push(("nilp4_central_phi", doc));
    }

    // b4 with the non-cocycle phi(e0,e1,e3) = 1
    {
        let r = b4();
        let phi =
            crate::ext::AlternatingMap::new(4, 3, 1, &[(vec![0, 1, 3], Vector::from_ints(&[1]))])
                .unwrap();
        let mut doc = rinehart_to_json(&r);
        doc.as_object_mut()
            .unwrap()
            .insert("phi".into(), alternating_to_json(&phi));
        out.push(("b4_noncocycle_phi", doc));
    }

    // nilp4 with the adjoint representation and theta = theta_Id
    {
        let r = nilp4();
        let (adj, _) = crate::rep::adjoint_kernel_rep(&r).unwrap();
        let cx = Complex::new(&r, &adj, Alternation::Block);
        let mut coords = vec![crate::exact::Scalar::zero(); 16];
        for z in 0..4 {
            coords[z * 4 + z] = scalar_int(1);
        }
        let id = cx.cochain_from_raw(1, coords);
        let theta = crate::ext::theta_from_cochain(&r, &adj, &id);
        let mut doc = rinehart_to_json(&r);
        let obj = doc.as_object_mut().unwrap();
        obj.insert("representation".into(), representation_to_json(&r, &adj));
        obj.insert("theta".into(), alternating_to_json(&theta));
        out.push(("nilp4_adjoint_theta", doc));
    }

    // crossed-module bundles
    for (name, r, x) in crossed_fixtures() {
        let mut doc = rinehart_to_json(&r);
        doc.as_object_mut()
            .unwrap()
            .insert("crossed".into(), crossed_to_json(&r, &x));
        let full: &'static str = match name {
            "inclusion_nilp4" => "crossed_inclusion_nilp4",
            "inclusion_nilp4_2dim" => "crossed_inclusion_nilp4_2dim",
            "zero_boundary_nilp4" => "crossed_zero_boundary_nilp4",
            "dual_kernel" => "crossed_dual_kernel",
            "dual_inclusion" => "crossed_dual_inclusion",
            "b4_central" => "crossed_b4_central",
            other => panic!("unmapped crossed fixture {other}"),
        };
        out.push((full, doc));
    }

    // aux file for the elementary-equivalence command: the permuted
    // 2-dimensional inclusion with the swap map
    {
        let r = nilp4();
        let m_bracket = NLieAlgebra::zero(2, 3);
        let mut psi01 = Matrix::zero(2, 2);
        psi01.set(0, 1, scalar_int(1));
        let rep = crate::rep::Representation::new(
            &r,
            2,
            vec![Matrix::identity(2)],
            &[(vec![0, 1], psi01)],
        )
        .unwrap();
        let module = crate::crossed::LieModule::new(m_bracket, rep).unwrap();
        let boundary = Matrix::from_cols(4, &[Vector::unit(4, 3), Vector::unit(4, 2)]);
        let x2 = crate::crossed::CrossedModule::new(&r, module, boundary).unwrap();
        let mut doc = rinehart_to_json(&r);
        doc.as_object_mut()
            .unwrap()
            .insert("crossed".into(), crossed_to_json(&r, &x2));
        let aux = serde_json::json!({
            "bundle": doc,
            "delta": [["0", "1"], ["1", "0"]],
            "gamma": [
                ["1", "0", "0", "0"],
                ["0", "1", "0", "0"],
                ["0", "0", "1", "0"],
                ["0", "0", "0", "1"]
            ],
        });
        out.push(("aux_equivalence_permuted", aux));
    }

    out
}

/// The five named axiom-suite fixtures plus `b4`.
pub fn all() -> Vec<(&'static str, NLieRinehart)> {
    vec![
        ("abel4", abel4()),
        ("nilp4", nilp4()),
        ("a4", a4()),
        ("b4", b4()),
        ("dual", dual()),
        ("der2", der2()),
    ]
}

/// One mutated (single structure constant perturbed) variant per fixture,
/// used by the mutation half of the axiom suites. The perturbed constant
/// is chosen so that some axiom genuinely fails: small 3-Lie algebras are
/// surprisingly robust (every alternating bracket supported on a single
/// canonical tuple satisfies the fundamental identity), so bracket
/// mutations flip a constant that entangles two tuples.
pub fn mutated(name: &str) -> NLieRinehart {
    match name {
        "abel4" => {
            // corrupt one entry of the unit action: the module axiom fails
            let mut act = Matrix::identity(4);
            act.set(3, 3, scalar_int(2));
            NLieRinehart::new(
                CommAlgebra::rationals(),
                NLieAlgebra::zero(4, 3),
                vec![act],
                &[],
            )
            .unwrap()
        }
        "nilp4" => {
            // one extra constant: [e0,e1,e3] = e1 breaks the identity at
            // x = (e0,e1), y = (e0,e2,e3)
            let lie = NLieAlgebra::new(
                4,
                3,
                &[
                    (vec![0, 1, 2], Vector::unit(4, 3)),
                    (vec![0, 1, 3], Vector::unit(4, 1)),
                ],
            )
            .unwrap();
            NLieRinehart::new(
                CommAlgebra::rationals(),
                lie,
                vec![Matrix::identity(4)],
                &[],
            )
            .unwrap()
        }
        "a4" => {
            // smear [e0,e1,e2] off the Levi-Civita diagonal
            let lie = NLieAlgebra::new(
                4,
                3,
                &[
                    (vec![0, 1, 2], Vector::from_ints(&[0, 1, 0, 1])),
                    (vec![0, 1, 3], Vector::unit(4, 2).neg()),
                    (vec![0, 2, 3], Vector::unit(4, 1)),
                    (vec![1, 2, 3], Vector::unit(4, 0).neg()),
                ],
            )
            .unwrap();
            NLieRinehart::new(
                CommAlgebra::rationals(),
                lie,
                vec![Matrix::identity(4)],
                &[],
            )
            .unwrap()
        }
        "b4" => {
            let lie = NLieAlgebra::new(
                4,
                3,
                &[
                    (vec![0, 1, 2], Vector::unit(4, 0)),
                    (vec![0, 1, 3], Vector::unit(4, 1)),
                ],
            )
            .unwrap();
            NLieRinehart::new(
                CommAlgebra::rationals(),
                lie,
                vec![Matrix::identity(4)],
                &[],
            )
            .unwrap()
        }
        "dual" => dual_with_anchor_scaled(2),
        "der2" => {
            // scale the bracket, keeping the anchor: breaks rep1
            let base = CommAlgebra::truncated_polynomials(3);
            let lie = NLieAlgebra::new(
                2,
                2,
                &[(vec![0, 1], Vector::unit(2, 1).scale(&scalar_int(2)))],
            )
            .unwrap();
            let mut t_action = Matrix::zero(2, 2);
            t_action.set(1, 0, scalar_int(1));
            let mut d1 = Matrix::zero(3, 3);
            d1.set(1, 1, scalar_int(1));
            d1.set(2, 2, scalar_int(2));
            let mut d2 = Matrix::zero(3, 3);
            d2.set(2, 1, scalar_int(1));
            NLieRinehart::new(
                base,
                lie,
                vec![Matrix::identity(2), t_action, Matrix::zero(2, 2)],
                &[(vec![0], d1), (vec![1], d2)],
            )
            .unwrap()
        }
        other => panic!("no mutation defined for fixture {other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_mutation_fails_verification_with_witness() {
        for (name, _) in all() {
            let report = mutated(name).verify(false);
            assert!(!report.passed(), "mutation of {name} unexpectedly passed");
            let failure = report.failures().next().unwrap();
            assert!(
                failure.witness.is_some(),
                "mutation of {name} failed without witness"
            );
        }
    }
}

//! Representations of n-Lie Rinehart algebras: the defining conditions,
//! the semidirect product, the dual representation, and the adjoint action
//! on the anchor kernel.

use num_traits::Zero;
use serde_json::json;

use crate::error::Error;
use crate::exact::{Matrix, Vector};
use crate::nlie::{NLieAlgebra, Subspace};
use crate::report::Report;
use crate::rinehart::NLieRinehart;
use crate::wedge::WedgeBasis;

/// A module `M` with an `A`-action and a linear map
/// `psi: ∧^{n-1}L -> End(M)` stored on canonical multi-indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dim: usize,
    a_action: Vec<Matrix>,
    psi: Vec<Matrix>,
}

impl Representation {
    pub fn new(
        r: &NLieRinehart,
        dim: usize,
        a_action: Vec<Matrix>,
        psi_entries: &[(Vec<usize>, Matrix)],
    ) -> Result<Self, Error> {
        let da = r.base().dim();
        if a_action.len() != da {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for a base of dimension {da}",
                a_action.len()
            )));
        }
        for m in &a_action {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "carrier action matrix is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let blocks = r.blocks();
        let mut psi = vec![Matrix::zero(dim, dim); blocks.len()];
        for (tuple, mat) in psi_entries {
            let (sign, pos) = blocks.canonical_position(tuple).ok_or_else(|| {
                Error::MalformedGrouping(format!("psi tuple {tuple:?} has a repeat"))
            })?;
            if mat.rows() != dim || mat.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "psi matrix is {}x{}, expected {dim}x{dim}",
                    mat.rows(),
                    mat.cols()
                )));
            }
            psi[pos] = if sign < 0 { mat.neg() } else { mat.clone() };
        }
        Ok(Representation { dim, a_action, psi })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action_basis(&self, p: usize) -> &Matrix {
        &self.a_action[p]
    }

    pub fn action_matrices(&self) -> &[Matrix] {
        &self.a_action
    }

    pub fn psi_block(&self, pos: usize) -> &Matrix {
        &self.psi[pos]
    }

    pub fn psi_matrices(&self) -> &[Matrix] {
        &self.psi
    }

    /// Action of an arbitrary algebra element on the carrier.
    pub fn act(&self, a: &Vector, m: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim);
        for p in 0..self.a_action.len() {
            if a[p].is_zero() {
                continue;
            }
            out.add_scaled(&a[p], &self.a_action[p].mul_vec(m));
        }
        out
    }

    pub fn act_matrix(&self, a: &Vector) -> Matrix {
        let mut out = Matrix::zero(self.dim, self.dim);
        for p in 0..self.a_action.len() {
            if a[p].is_zero() {
                continue;
            }
            out = out.add(&self.a_action[p].scale(&a[p]));
        }
        out
    }

    /// `psi` on basis indices in any order (signed), zero on repeats.
    pub fn psi_tuple(&self, blocks: &WedgeBasis, tuple: &[usize]) -> Matrix {
        match blocks.canonical_position(tuple) {
            None => Matrix::zero(self.dim, self.dim),
            Some((1, pos)) => self.psi[pos].clone(),
            Some((_, pos)) => self.psi[pos].neg(),
        }
    }

    /// `psi` with one vector slot spliced into basis indices.
    pub fn psi_with_vector_at(
        &self,
        blocks: &WedgeBasis,
        prefix: &[usize],
        v: &Vector,
        suffix: &[usize],
    ) -> Matrix {
        let mut out = Matrix::zero(self.dim, self.dim);
        let mut tuple = Vec::with_capacity(prefix.len() + 1 + suffix.len());
        for i in 0..blocks.dim() {
            if v[i].is_zero() {
                continue;
            }
            tuple.clear();
            tuple.extend_from_slice(prefix);
            tuple.push(i);
            tuple.extend_from_slice(suffix);
            out = out.add(&self.psi_tuple(blocks, &tuple).scale(&v[i]));
        }
        out
    }

    /// Full multilinear `psi` on `n-1` arbitrary vectors.
    pub fn psi_eval(&self, blocks: &WedgeBasis, args: &[&Vector]) -> Matrix {
        let mut out = Matrix::zero(self.dim, self.dim);
        let mut tuple = vec![0usize; args.len()];
        psi_eval_rec(
            self,
            blocks,
            args,
            0,
            crate::exact::scalar_int(1),
            &mut tuple,
            &mut out,
        );
        out
    }
}

fn psi_eval_rec(
    rep: &Representation,
    blocks: &WedgeBasis,
    args: &[&Vector],
    slot: usize,
    coeff: crate::exact::Scalar,
    tuple: &mut Vec<usize>,
    out: &mut Matrix,
) {
    if slot == args.len() {
        if !coeff.is_zero() {
            *out = out.add(&rep.psi_tuple(blocks, tuple).scale(&coeff));
        }
        return;
    }
    for i in 0..blocks.dim() {
        let c = &args[slot][i];
        if c.is_zero() {
            continue;
        }
        tuple[slot] = i;
        psi_eval_rec(rep, blocks, args, slot + 1, &coeff * c, tuple, out);
    }
}

/// The trivial representation on a one-dimensional carrier: `psi = 0`,
/// with `A` acting through the coordinate along the unit. Requires the
/// unit of `A` to be a standard basis vector.
pub fn trivial_rep(r: &NLieRinehart) -> Result<Representation, Error> {
    let u = r.base().unit_index().ok_or_else(|| {
        Error::InvalidRepresentation(
            "trivial coefficients need the unit of A to be a basis vector".into(),
        )
    })?;
    let da = r.base().dim();
    let a_action: Vec<Matrix> = (0..da)
        .map(|p| {
            if p == u {
                Matrix::identity(1)
            } else {
                Matrix::zero(1, 1)
            }
        })
        .collect();
    Representation::new(r, 1, a_action, &[])
}

/// The regular representation `(A, rho)`.
pub fn regular_rep(r: &NLieRinehart) -> Representation {
    let da = r.base().dim();
    let a_action: Vec<Matrix> = (0..da)
        .map(|p| r.base().mul_matrix(&Vector::unit(da, p)))
        .collect();
    let entries: Vec<(Vec<usize>, Matrix)> = r
        .blocks()
        .blocks()
        .iter()
        .enumerate()
        .map(|(pos, b)| (b.indices().to_vec(), r.anchor_block(pos).clone()))
        .collect();
    Representation::new(r, da, a_action, &entries).expect("regular representation is well-formed")
}

/// The adjoint action restricted to the anchor kernel `K`, together with
/// the embedding of `K` into `L`.
pub fn adjoint_kernel_rep(r: &NLieRinehart) -> Result<(Representation, Subspace), Error> {
    let kernel = r.anchor_kernel();
    let embed = kernel.span_matrix().clone();
    let k = kernel.dim();
    let da = r.base().dim();

    let mut a_action = Vec::with_capacity(da);
    for p in 0..da {
        let mut m = Matrix::zero(k, k);
        for (j, v) in kernel.basis().iter().enumerate() {
            let moved = r.action_basis(p).mul_vec(v);
            let coords = kernel.coordinates(&moved).ok_or_else(|| {
                Error::InvalidRepresentation("anchor kernel is not A-stable".into())
            })?;
            for i in 0..k {
                m.set(i, j, coords[i].clone());
            }
        }
        a_action.push(m);
    }

    let mut entries = Vec::new();
    for block in r.blocks().blocks() {
        let mut m = Matrix::zero(k, k);
        for (j, v) in kernel.basis().iter().enumerate() {
            let moved = r.lie().bracket_with_vector_at(block.indices(), v, &[]);
            let coords = kernel.coordinates(&moved).ok_or_else(|| {
                Error::InvalidRepresentation("anchor kernel is not an ideal".into())
            })?;
            for i in 0..k {
                m.set(i, j, coords[i].clone());
            }
        }
        if !m.is_zero() {
            entries.push((block.indices().to_vec(), m));
        }
    }
    let rep = Representation::new(r, k, a_action, &entries)?;
    let _ = embed;
    Ok((rep, kernel))
}

/// Itemized verification of the representation conditions: the two n-Lie
/// representation identities for `psi`, `A`-linearity in the arguments,
/// and the Leibniz twist on scalars.
pub fn verify_representation(r: &NLieRinehart, rep: &Representation) -> Report {
    let mut report = Report::new();
    let n = r.arity();
    let dl = r.dim();
    let da = r.base().dim();
    let blocks = r.blocks();

    // carrier is a unital module
    let mut witness = None;
    if rep.act_matrix(r.base().unit()) != Matrix::identity(rep.dim()) {
        witness = Some(json!({"law": "unit acts as identity"}));
    } else {
        'module: for p in 0..da {
            for q in 0..da {
                let lhs = rep.action_basis(p).mul(rep.action_basis(q));
                let rhs = rep.act_matrix(r.base().basis_product(p, q));
                if lhs != rhs {
                    witness = Some(json!({"pair": [p, q]}));
                    break 'module;
                }
            }
        }
    }
    report.item("m_module", witness);

    // rep1
    let mut witness = None;
    'rep1: for xb in blocks.blocks() {
        let x = xb.indices();
        for yb in blocks.blocks() {
            let y = yb.indices();
            let lhs = rep
                .psi_tuple(blocks, x)
                .commutator(&rep.psi_tuple(blocks, y));
            let mut rhs = Matrix::zero(rep.dim(), rep.dim());
            for i in 0..n - 1 {
                let mut tx = x.to_vec();
                tx.push(y[i]);
                let replaced = r.lie().bracket_basis(&tx);
                rhs = rhs.add(&rep.psi_with_vector_at(blocks, &y[..i], &replaced, &y[i + 1..]));
            }
            if lhs != rhs {
                witness = Some(json!({"x": x, "y": y}));
                break 'rep1;
            }
        }
    }
    report.item("psi_rep1", witness);

    // rep2
    let mut witness = None;
    let xs = WedgeBasis::new(dl, n - 2);
    let ys = WedgeBasis::new(dl, n);
    'rep2: for xb in xs.blocks() {
        let x = xb.indices();
        for yb in ys.blocks() {
            let y = yb.indices();
            let inner = r.lie().bracket_basis(y);
            let lhs = rep.psi_with_vector_at(blocks, x, &inner, &[]);
            let mut rhs = Matrix::zero(rep.dim(), rep.dim());
            for i in 0..n {
                let mut rest = y.to_vec();
                rest.remove(i);
                let mut with_yi = x.to_vec();
                with_yi.push(y[i]);
                let term = rep
                    .psi_tuple(blocks, &rest)
                    .mul(&rep.psi_tuple(blocks, &with_yi));
                let sign_neg = (n - 1 - i) % 2 == 1;
                rhs = if sign_neg {
                    rhs.sub(&term)
                } else {
                    rhs.add(&term)
                };
            }
            if lhs != rhs {
                witness = Some(json!({"x": x, "y": y}));
                break 'rep2;
            }
        }
    }
    report.item("psi_rep2", witness);

    // A-linearity in each argument slot
    let mut witness = None;
    'lin: for xb in blocks.blocks() {
        let x = xb.indices();
        for s in 0..n - 1 {
            for p in 0..da {
                let ax = r.action_basis(p).col(x[s]);
                let lhs = rep.psi_with_vector_at(blocks, &x[..s], &ax, &x[s + 1..]);
                let rhs = rep
                    .act_matrix(&Vector::unit(da, p))
                    .mul(&rep.psi_tuple(blocks, x));
                if lhs != rhs {
                    witness = Some(json!({"block": x, "slot": s, "a": p}));
                    break 'lin;
                }
            }
        }
    }
    report.item("psi_a_linear", witness);

    // Leibniz twist: psi(X)(a m) = a psi(X)(m) + rho(X)(a) m
    let mut witness = None;
    'twist: for (pos, xb) in blocks.blocks().iter().enumerate() {
        for p in 0..da {
            let a = Vector::unit(da, p);
            let lhs = rep.psi_block(pos).mul(&rep.act_matrix(&a));
            let rho_a = r.anchor_block(pos).mul_vec(&a);
            let rhs = rep
                .act_matrix(&a)
                .mul(rep.psi_block(pos))
                .add(&rep.act_matrix(&rho_a));
            if lhs != rhs {
                witness = Some(json!({"block": xb.indices(), "a": p}));
                break 'twist;
            }
        }
    }
    report.item("psi_leibniz_twist", witness);

    report
}

/// Semidirect product on `L ⊕ M`: the bracket twists the module slots by
/// `psi`, the anchor ignores them. Valid representations produce valid
/// Rinehart algebras and vice versa; invalid input still builds (for the
/// diagnostic direction of the equivalence), the output then fails
/// verification.
pub fn semidirect(r: &NLieRinehart, rep: &Representation) -> Result<NLieRinehart, Error> {
    let dl = r.dim();
    let dm = rep.dim();
    let da = r.base().dim();
    let n = r.arity();
    let big = dl + dm;
    let blocks = r.blocks();

    let mut entries = Vec::new();
    for tuple in WedgeBasis::new(big, n).blocks() {
        let idx = tuple.indices();
        let m_slots: Vec<usize> = idx
            .iter()
            .enumerate()
            .filter(|(_, &t)| t >= dl)
            .map(|(s, _)| s)
            .collect();
        let mut value = Vector::zero(big);
        match m_slots.len() {
            0 => {
                let br = r.lie().bracket_basis(idx);
                for k in 0..dl {
                    if !br[k].is_zero() {
                        value.set(k, br[k].clone());
                    }
                }
            }
            1 => {
                let s = m_slots[0];
                let m_index = idx[s] - dl;
                let mut lie_part: Vec<usize> = idx.to_vec();
                lie_part.remove(s);
                let sign_neg = (n - (s + 1)) % 2 == 1;
                let moved = rep
                    .psi_tuple(blocks, &lie_part)
                    .mul_vec(&Vector::unit(dm, m_index));
                for q in 0..dm {
                    if moved[q].is_zero() {
                        continue;
                    }
                    let c = if sign_neg {
                        -moved[q].clone()
                    } else {
                        moved[q].clone()
                    };
                    value.set(dl + q, c);
                }
            }
            _ => {}
        }
        if !value.is_zero() {
            entries.push((idx.to_vec(), value));
        }
    }
    let lie = NLieAlgebra::new(big, n, &entries)?;

    let mut anchor_entries = Vec::new();
    for tuple in WedgeBasis::new(big, n - 1).blocks() {
        let idx = tuple.indices();
        if idx.iter().any(|&t| t >= dl) {
            continue;
        }
        let rho = r.anchor_tuple(idx);
        if !rho.is_zero() {
            anchor_entries.push((idx.to_vec(), rho));
        }
    }

    let mut a_action = Vec::with_capacity(da);
    for p in 0..da {
        let mut m = Matrix::zero(big, big);
        for i in 0..dl {
            let col = r.action_basis(p).col(i);
            for row in 0..dl {
                if !col[row].is_zero() {
                    m.set(row, i, col[row].clone());
                }
            }
        }
        for j in 0..dm {
            let col = rep.action_basis(p).col(j);
            for row in 0..dm {
                if !col[row].is_zero() {
                    m.set(dl + row, dl + j, col[row].clone());
                }
            }
        }
        a_action.push(m);
    }

    NLieRinehart::new(r.base().clone(), lie, a_action, &anchor_entries)
}

/// The dual carrier: `A`-linear maps `M -> A` with
/// `<psi*(X) f, m> = -<f, psi(X) m>`.
#[derive(Clone, Debug)]
pub struct DualRepresentation {
    /// Canonical basis of `M*`, each an `dim(A) x dim(M)` matrix.
    pub maps: Vec<Matrix>,
    /// The representation structure on `M*`-coordinates.
    pub rep: Representation,
}

/// Assemble the dual representation. The defining pairing relation forces
/// `psi*(X) f = -f ∘ psi(X)`; when the anchor is nonzero this composite
/// can fail to be `A`-linear, in which case no dual action exists and the
/// offending block and functional are reported.
pub fn dual_rep(r: &NLieRinehart, rep: &Representation) -> Result<DualRepresentation, Error> {
    let da = r.base().dim();
    let dm = rep.dim();

    // M* = solutions of F . act_M(a_p) = mul_A(a_p) . F, entries row-major
    let mut rows = Vec::new();
    for p in 0..da {
        let act = rep.action_basis(p);
        let mul = r.base().mul_matrix(&Vector::unit(da, p));
        for i in 0..da {
            for j in 0..dm {
                // (F act)_ij - (mul F)_ij = 0
                let mut row = Vector::zero(da * dm);
                for k in 0..dm {
                    let c = act.get(k, j);
                    if !c.is_zero() {
                        let cur = &row[i * dm + k] + c;
                        row.set(i * dm + k, cur);
                    }
                }
                for k in 0..da {
                    let c = mul.get(i, k);
                    if !c.is_zero() {
                        let cur = &row[k * dm + j] - c;
                        row.set(k * dm + j, cur);
                    }
                }
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    let maps: Vec<Matrix> = if rows.is_empty() {
        (0..da * dm)
            .map(|f| {
                let mut m = Matrix::zero(da, dm);
                m.set(f / dm, f % dm, crate::exact::scalar_int(1));
                m
            })
            .collect()
    } else {
        Matrix::from_rows(rows)
            .kernel_basis()
            .into_iter()
            .map(|flat| {
                let mut m = Matrix::zero(da, dm);
                for i in 0..da {
                    for j in 0..dm {
                        m.set(i, j, flat[i * dm + j].clone());
                    }
                }
                m
            })
            .collect()
    };
    let dual_dim = maps.len();
    let span = Matrix::from_cols(
        da * dm,
        &maps
            .iter()
            .map(|m| {
                Vector::new(
                    (0..da)
                        .flat_map(|i| (0..dm).map(move |j| (i, j)))
                        .map(|(i, j)| m.get(i, j).clone())
                        .collect(),
                )
            })
            .collect::<Vec<_>>(),
    );

    let express = |g: &Matrix| -> Option<Vector> {
        let flat = Vector::new(
            (0..da)
                .flat_map(|i| (0..dm).map(move |j| (i, j)))
                .map(|(i, j)| g.get(i, j).clone())
                .collect(),
        );
        span.solve_in_span(&flat)
    };

    // A acts on M* by (a f)(m) = a f(m)
    let mut a_action = Vec::with_capacity(da);
    for p in 0..da {
        let mul = r.base().mul_matrix(&Vector::unit(da, p));
        let mut m = Matrix::zero(dual_dim, dual_dim);
        for (j, f) in maps.iter().enumerate() {
            let af = mul.mul(f);
            let coords = express(&af).ok_or_else(|| {
                Error::InvalidRepresentation("A-action does not preserve M*".into())
            })?;
            for i in 0..dual_dim {
                m.set(i, j, coords[i].clone());
            }
        }
        a_action.push(m);
    }

    // psi*(X) f = -f . psi(X), expressed in the canonical M* basis
    let mut entries = Vec::new();
    for (pos, block) in r.blocks().blocks().iter().enumerate() {
        let mut m = Matrix::zero(dual_dim, dual_dim);
        for (j, f) in maps.iter().enumerate() {
            let g = f.mul(rep.psi_block(pos)).neg();
            let coords = express(&g).ok_or_else(|| {
                Error::InvalidRepresentation(format!(
                    "psi*({:?}) applied to M* basis element {j} leaves M*: \
                     -f.psi is not A-linear (nonzero anchor obstruction)",
                    block.indices()
                ))
            })?;
            for i in 0..dual_dim {
                m.set(i, j, coords[i].clone());
            }
        }
        if !m.is_zero() {
            entries.push((block.indices().to_vec(), m));
        }
    }

    let rep_star = Representation::new(r, dual_dim, a_action, &entries)?;
    Ok(DualRepresentation {
        maps,
        rep: rep_star,
    })
}

/// Pairing consistency: `<psi*(X) f, m> + <f, psi(X) m> = 0` over all
/// basis data.
pub fn check_dual_pairing(
    r: &NLieRinehart,
    rep: &Representation,
    dual: &DualRepresentation,
) -> Report {
    let mut report = Report::new();
    let dm = rep.dim();
    let mut witness = None;
    'outer: for (pos, block) in r.blocks().blocks().iter().enumerate() {
        for (j, f) in dual.maps.iter().enumerate() {
            // psi*(X) f in matrix form
            let coords = dual.rep.psi_block(pos).col(j);
            let mut psi_star_f = Matrix::zero(r.base().dim(), dm);
            for (k, g) in dual.maps.iter().enumerate() {
                if !coords[k].is_zero() {
                    psi_star_f = psi_star_f.add(&g.scale(&coords[k]));
                }
            }
            for m in 0..dm {
                let em = Vector::unit(dm, m);
                let lhs = psi_star_f.mul_vec(&em);
                let rhs = f.mul_vec(&rep.psi_block(pos).mul_vec(&em));
                if !lhs.add(&rhs).is_zero() {
                    witness = Some(json!({
                        "block": block.indices(),
                        "functional": j,
                        "m": m,
                    }));
                    break 'outer;
                }
            }
        }
    }
    report.item("dual_pairing", witness);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn regular_rep_is_representation() {
        for (name, r) in fixtures::all() {
            let rep = regular_rep(&r);
            let report = verify_representation(&r, &rep);
            assert!(report.passed(), "{name}:\n{report}");
        }
    }

    #[test]
    fn trivial_rep_is_representation() {
        for (name, r) in fixtures::all() {
            let rep = trivial_rep(&r).unwrap();
            let report = verify_representation(&r, &rep);
            assert!(report.passed(), "{name}:\n{report}");
        }
    }

    #[test]
    fn adjoint_on_kernel_examples() {
        // dual: K = span(tu, tv), ad(u ^ v)(tu) = [u,v,tu] = tu
        let r = fixtures::dual();
        let (rep, kernel) = adjoint_kernel_rep(&r).unwrap();
        assert_eq!(rep.dim(), 2);
        assert!(verify_representation(&r, &rep).passed());
        let tu = kernel.coordinates(&Vector::unit(4, 1)).unwrap();
        let uv = r.blocks().canonical_position(&[0, 2]).unwrap().1;
        assert_eq!(rep.psi_block(uv).mul_vec(&tu), tu);

        // zero anchor: kernel is everything, psi is the full adjoint
        let nilp = fixtures::nilp4();
        let (rep, kernel) = adjoint_kernel_rep(&nilp).unwrap();
        assert_eq!(kernel.dim(), 4);
        assert!(verify_representation(&nilp, &rep).passed());

        // der2: trivial carrier
        let (rep, kernel) = adjoint_kernel_rep(&fixtures::der2()).unwrap();
        assert_eq!(kernel.dim(), 0);
        assert_eq!(rep.dim(), 0);
    }

    #[test]
    fn semidirect_examples() {
        // trivial coefficients: M is central, bracket unchanged on L
        let nilp = fixtures::nilp4();
        let triv = trivial_rep(&nilp).unwrap();
        let s = semidirect(&nilp, &triv).unwrap();
        assert_eq!(s.dim(), 5);
        assert_eq!(s.lie().bracket_basis(&[0, 1, 2]), Vector::unit(5, 3));
        assert!(s.lie().bracket_basis(&[0, 1, 4]).is_zero());
        assert!(s.verify(false).passed());

        // adjoint coefficients: [(e0,0),(e1,0),(0,e2)] = (0,[e0,e1,e2]) = (0,e3)
        let (adj, _) = adjoint_kernel_rep(&nilp).unwrap();
        let s = semidirect(&nilp, &adj).unwrap();
        assert_eq!(s.dim(), 8);
        assert_eq!(
            s.lie().bracket_basis(&[0, 1, 4 + 2]),
            Vector::unit(8, 4 + 3)
        );
        assert!(s.verify(false).passed());
    }

    #[test]
    fn semidirect_iff_representation() {
        // corrupt one psi entry of the adjoint on the simple algebra: the
        // representation check and the semidirect output must fail together
        // (nilp4 is too degenerate here: its adjoint survives scaling)
        let a4 = fixtures::a4();
        let (adj, _) = adjoint_kernel_rep(&a4).unwrap();
        let blocks = a4.blocks();
        let uv = blocks.canonical_position(&[0, 1]).unwrap().1;
        let mut bad_psi: Vec<(Vec<usize>, Matrix)> = blocks
            .blocks()
            .iter()
            .enumerate()
            .map(|(pos, b)| (b.indices().to_vec(), adj.psi_block(pos).clone()))
            .collect();
        bad_psi[uv].1 = bad_psi[uv].1.scale(&crate::exact::scalar_int(3));
        let bad = Representation::new(&a4, 4, adj.action_matrices().to_vec(), &bad_psi).unwrap();
        assert!(!verify_representation(&a4, &bad).passed());
        let s = semidirect(&a4, &bad).unwrap();
        assert!(!s.verify(false).passed());
    }

    #[test]
    fn append_a_equals_semidirect_with_regular_rep() {
        for (name, r) in fixtures::all() {
            let via_semidirect = semidirect(&r, &regular_rep(&r)).unwrap();
            let direct = r.append_a().unwrap();
            assert_eq!(direct, via_semidirect, "{name}");
        }
    }

    #[test]
    fn dual_rep_examples() {
        // trivial one-dimensional module over the field
        let nilp = fixtures::nilp4();
        let triv = trivial_rep(&nilp).unwrap();
        let dual = dual_rep(&nilp, &triv).unwrap();
        assert_eq!(dual.rep.dim(), 1);
        assert!(verify_representation(&nilp, &dual.rep).passed());
        assert!(check_dual_pairing(&nilp, &triv, &dual).passed());

        // adjoint on nilp4: psi*(e0 ^ e1) sends e3* to -e2*
        let (adj, _) = adjoint_kernel_rep(&nilp).unwrap();
        let dual = dual_rep(&nilp, &adj).unwrap();
        assert_eq!(dual.rep.dim(), 4);
        assert!(verify_representation(&nilp, &dual.rep).passed());
        assert!(check_dual_pairing(&nilp, &adj, &dual).passed());
        let uv = nilp.blocks().canonical_position(&[0, 1]).unwrap().1;
        // the canonical M* basis over A = Q is the dual basis in order
        let e3_star = Vector::unit(4, 3);
        let moved = dual.rep.psi_block(uv).mul_vec(&e3_star);
        assert_eq!(moved, Vector::unit(4, 2).neg());
    }

    #[test]
    fn dual_rep_nonzero_anchor_obstruction() {
        // over FIX-DUAL with M = (A, rho) the defining relation has no
        // A-linear solution: -Id . (t d/dt) is not multiplication by
        // anything, so assembling psi* must report the obstruction
        let r = fixtures::dual();
        let rep = regular_rep(&r);
        let err = dual_rep(&r, &rep).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("not A-linear"), "unexpected error: {msg}");
    }
}

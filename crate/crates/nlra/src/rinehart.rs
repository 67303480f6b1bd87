//! n-Lie Rinehart algebras: an n-Lie algebra that is a module over a
//! commutative unital algebra `A`, anchored into `Der(A)`, with the
//! compatibility law tying the bracket, the action and the anchor together.
//!
//! `L` is modelled as a rational vector space carrying an explicit
//! `A`-action; freeness over `A` is never assumed. The anchor is stored on
//! the canonical basis of `∧^{n-1}L` and extended by multilinearity, so
//! its `A`-linearity is a checkable condition rather than a storage
//! convention.

use num_traits::Zero;
use serde_json::json;

use crate::base_algebra::CommAlgebra;
use crate::error::Error;
use crate::exact::{Matrix, Vector};
use crate::nlie::{is_morphism, LeibnizAlgebra, NLieAlgebra, Subspace};
use crate::report::Report;
use crate::wedge::WedgeBasis;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NLieRinehart {
    base: CommAlgebra,
    lie: NLieAlgebra,
    /// Per `A`-basis element, the action matrix on `L`.
    a_action: Vec<Matrix>,
    /// Per canonical `(n-1)`-multi-index, the anchor derivation on `A`.
    anchor: Vec<Matrix>,
    blocks: WedgeBasis,
}

impl NLieRinehart {
    pub fn new(
        base: CommAlgebra,
        lie: NLieAlgebra,
        a_action: Vec<Matrix>,
        anchor_entries: &[(Vec<usize>, Matrix)],
    ) -> Result<Self, Error> {
        let dim_l = lie.dim();
        let dim_a = base.dim();
        if a_action.len() != dim_a {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for a base of dimension {dim_a}",
                a_action.len()
            )));
        }
        for m in &a_action {
            if m.rows() != dim_l || m.cols() != dim_l {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix is {}x{}, expected {dim_l}x{dim_l}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let blocks = WedgeBasis::new(dim_l, lie.arity() - 1);
        let mut anchor = vec![Matrix::zero(dim_a, dim_a); blocks.len()];
        for (tuple, mat) in anchor_entries {
            let (sign, pos) = blocks.canonical_position(tuple).ok_or_else(|| {
                Error::MalformedGrouping(format!("anchor tuple {tuple:?} has a repeat"))
            })?;
            if mat.rows() != dim_a || mat.cols() != dim_a {
                return Err(Error::DimensionMismatch(format!(
                    "anchor matrix is {}x{}, expected {dim_a}x{dim_a}",
                    mat.rows(),
                    mat.cols()
                )));
            }
            anchor[pos] = if sign < 0 { mat.neg() } else { mat.clone() };
        }
        Ok(NLieRinehart {
            base,
            lie,
            a_action,
            anchor,
            blocks,
        })
    }

    pub fn base(&self) -> &CommAlgebra {
        &self.base
    }

    pub fn lie(&self) -> &NLieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn arity(&self) -> usize {
        self.lie.arity()
    }

    pub fn blocks(&self) -> &WedgeBasis {
        &self.blocks
    }

    pub fn action_basis(&self, p: usize) -> &Matrix {
        &self.a_action[p]
    }

    pub fn action_matrices(&self) -> &[Matrix] {
        &self.a_action
    }

    /// Action of an arbitrary algebra element on an `L`-vector.
    pub fn act(&self, a: &Vector, x: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim());
        for p in 0..self.base.dim() {
            if a[p].is_zero() {
                continue;
            }
            out.add_scaled(&a[p], &self.a_action[p].mul_vec(x));
        }
        out
    }

    pub fn act_matrix(&self, a: &Vector) -> Matrix {
        let mut out = Matrix::zero(self.dim(), self.dim());
        for p in 0..self.base.dim() {
            if a[p].is_zero() {
                continue;
            }
            out = out.add(&self.a_action[p].scale(&a[p]));
        }
        out
    }

    pub fn anchor_block(&self, pos: usize) -> &Matrix {
        &self.anchor[pos]
    }

    pub fn anchor_matrices(&self) -> &[Matrix] {
        &self.anchor
    }

    /// Anchor on basis indices in any order (signed), zero on repeats.
    pub fn anchor_tuple(&self, tuple: &[usize]) -> Matrix {
        match self.blocks.canonical_position(tuple) {
            None => Matrix::zero(self.base.dim(), self.base.dim()),
            Some((1, pos)) => self.anchor[pos].clone(),
            Some((_, pos)) => self.anchor[pos].neg(),
        }
    }

    /// Anchor with one vector slot spliced into basis indices.
    pub fn anchor_with_vector_at(&self, prefix: &[usize], v: &Vector, suffix: &[usize]) -> Matrix {
        let da = self.base.dim();
        let mut out = Matrix::zero(da, da);
        let mut tuple = Vec::with_capacity(self.arity() - 1);
        for i in 0..self.dim() {
            if v[i].is_zero() {
                continue;
            }
            tuple.clear();
            tuple.extend_from_slice(prefix);
            tuple.push(i);
            tuple.extend_from_slice(suffix);
            out = out.add(&self.anchor_tuple(&tuple).scale(&v[i]));
        }
        out
    }

    /// Full multilinear anchor on `n-1` arbitrary vectors.
    pub fn anchor_eval(&self, args: &[&Vector]) -> Matrix {
        debug_assert_eq!(args.len(), self.arity() - 1);
        let da = self.base.dim();
        let mut out = Matrix::zero(da, da);
        let mut tuple = vec![0usize; args.len()];
        self.anchor_rec(args, 0, crate::exact::scalar_int(1), &mut tuple, &mut out);
        out
    }

    fn anchor_rec(
        &self,
        args: &[&Vector],
        slot: usize,
        coeff: crate::exact::Scalar,
        tuple: &mut Vec<usize>,
        out: &mut Matrix,
    ) {
        if slot == args.len() {
            if !coeff.is_zero() {
                *out = out.add(&self.anchor_tuple(tuple).scale(&coeff));
            }
            return;
        }
        for i in 0..self.dim() {
            let c = &args[slot][i];
            if c.is_zero() {
                continue;
            }
            tuple[slot] = i;
            self.anchor_rec(args, slot + 1, &coeff * c, tuple, out);
        }
    }

    /// Itemized verification of every axiom of the structure. `weak` skips
    /// the `A`-linearity of the anchor (the "weak" variant of the
    /// definition); everything else is always swept.
    pub fn verify(&self, weak: bool) -> Report {
        let mut report = Report::new();
        let n = self.arity();
        let dl = self.dim();
        let da = self.base.dim();

        report.merge_prefixed("base_algebra", self.base.check());

        // unital module axioms for the A-action on L
        let mut witness = None;
        if self.act_matrix(self.base.unit()) != Matrix::identity(dl) {
            witness = Some(json!({"law": "unit acts as identity"}));
        } else {
            'action: for p in 0..da {
                for q in 0..da {
                    let lhs = self.a_action[p].mul(&self.a_action[q]);
                    let rhs = self.act_matrix(self.base.basis_product(p, q));
                    if lhs != rhs {
                        witness = Some(json!({
                            "law": "action(a_p) . action(a_q) = action(a_p a_q)",
                            "pair": [p, q],
                        }));
                        break 'action;
                    }
                }
            }
        }
        report.item("a_module", witness);

        // anchors land in Der(A)
        let mut witness = None;
        for (pos, m) in self.anchor.iter().enumerate() {
            if let Some(w) = self.base.derivation_failure(m) {
                witness = Some(json!({
                    "block": self.blocks.block(pos).indices(),
                    "leibniz_failure": w,
                }));
                break;
            }
        }
        report.item("anchor_derivation", witness);

        report.merge(self.lie.check_fundamental_identity());

        // rep1 for the anchor
        let mut witness = None;
        'rep1: for xb in self.blocks.blocks() {
            let x = xb.indices();
            for yb in self.blocks.blocks() {
                let y = yb.indices();
                let lhs = self.anchor_tuple(x).commutator(&self.anchor_tuple(y));
                let mut rhs = Matrix::zero(da, da);
                for i in 0..n - 1 {
                    let mut tx = x.to_vec();
                    tx.push(y[i]);
                    let replaced = self.lie.bracket_basis(&tx);
                    rhs = rhs.add(&self.anchor_with_vector_at(&y[..i], &replaced, &y[i + 1..]));
                }
                if lhs != rhs {
                    witness = Some(json!({"x": x, "y": y}));
                    break 'rep1;
                }
            }
        }
        report.item("anchor_rep1", witness);

        // rep2 for the anchor
        let mut witness = None;
        let xs = WedgeBasis::new(dl, n - 2);
        let ys = WedgeBasis::new(dl, n);
        'rep2: for xb in xs.blocks() {
            let x = xb.indices();
            for yb in ys.blocks() {
                let y = yb.indices();
                let inner = self.lie.bracket_basis(y);
                let lhs = self.anchor_with_vector_at(x, &inner, &[]);
                let mut rhs = Matrix::zero(da, da);
                for i in 0..n {
                    let mut rest = y.to_vec();
                    rest.remove(i);
                    let mut with_yi = x.to_vec();
                    with_yi.push(y[i]);
                    let term = self.anchor_tuple(&rest).mul(&self.anchor_tuple(&with_yi));
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
        report.item("anchor_rep2", witness);

        // A-linearity of the anchor in the first slot (weak mode skips it)
        if weak {
            report.skip("anchor_a_linear");
            report.skip("anchor_a_linear_derived");
        } else {
            let mut witness = None;
            'lin: for xb in self.blocks.blocks() {
                let x = xb.indices();
                for p in 0..da {
                    let ax = self.a_action[p].col(x[0]);
                    let lhs = self.anchor_with_vector_at(&[], &ax, &x[1..]);
                    let rhs = self
                        .base
                        .mul_matrix(&Vector::unit(da, p))
                        .mul(&self.anchor_tuple(x));
                    if lhs != rhs {
                        witness = Some(json!({"block": x, "a": p, "slot": 0}));
                        break 'lin;
                    }
                }
            }
            report.item("anchor_a_linear", witness);

            // slots 2..n-1, a consequence of skew-symmetry plus the first
            // slot, reported distinctly
            let mut witness = None;
            'lind: for xb in self.blocks.blocks() {
                let x = xb.indices();
                for s in 1..n - 1 {
                    for p in 0..da {
                        let ax = self.a_action[p].col(x[s]);
                        let lhs = self.anchor_with_vector_at(&x[..s], &ax, &x[s + 1..]);
                        let rhs = self
                            .base
                            .mul_matrix(&Vector::unit(da, p))
                            .mul(&self.anchor_tuple(x));
                        if lhs != rhs {
                            witness = Some(json!({"block": x, "a": p, "slot": s}));
                            break 'lind;
                        }
                    }
                }
            }
            report.item("anchor_a_linear_derived", witness);
        }

        // compatibility in the last slot:
        // [x_1,...,a x_n] = a [x_1,...,x_n] + rho(x_1,...,x_{n-1})(a) x_n
        let mut witness = None;
        'compat: for xb in self.blocks.blocks() {
            let x = xb.indices();
            for last in 0..dl {
                for p in 0..da {
                    let a = Vector::unit(da, p);
                    let ax = self.a_action[p].col(last);
                    let lhs = self.lie.bracket_with_vector_at(x, &ax, &[]);
                    let mut full = x.to_vec();
                    full.push(last);
                    let rhs = self
                        .act(&a, &self.lie.bracket_basis(&full))
                        .add(&self.act(&self.anchor_tuple(x).mul_vec(&a), &Vector::unit(dl, last)));
                    if lhs != rhs {
                        witness = Some(json!({
                            "block": x,
                            "last": last,
                            "a": p,
                            "lhs": lhs.to_string(),
                            "rhs": rhs.to_string(),
                        }));
                        break 'compat;
                    }
                }
            }
        }
        report.item("compatibility", witness);

        // derived cross-slot form:
        // [a x_1, x_2,...,x_n] = a [x_1,...,x_n] + (-1)^(n-1) rho(x_2,...,x_n)(a) x_1
        let mut witness = None;
        'cross: for rest in WedgeBasis::new(dl, n - 1).blocks() {
            let tail = rest.indices();
            for first in 0..dl {
                for p in 0..da {
                    let a = Vector::unit(da, p);
                    let ax = self.a_action[p].col(first);
                    let lhs = self.lie.bracket_with_vector_at(&[], &ax, tail);
                    let mut full = vec![first];
                    full.extend_from_slice(tail);
                    let anchor_term = self.act(
                        &self.anchor_tuple(tail).mul_vec(&a),
                        &Vector::unit(dl, first),
                    );
                    let signed = if (n - 1) % 2 == 1 {
                        anchor_term.neg()
                    } else {
                        anchor_term
                    };
                    let rhs = self.act(&a, &self.lie.bracket_basis(&full)).add(&signed);
                    if lhs != rhs {
                        witness = Some(json!({"first": first, "rest": tail, "a": p}));
                        break 'cross;
                    }
                }
            }
        }
        report.item("compatibility_cross_slot", witness);

        report
    }

    /// Kernel of the anchor: `{ x : rho(x, L, ..., L) = 0 }`, by exact
    /// linear solve. An ideal by the representation identities.
    pub fn anchor_kernel(&self) -> Subspace {
        let dl = self.dim();
        let da = self.base.dim();
        let rest = WedgeBasis::new(dl, self.arity() - 2);
        let mut rows = Vec::new();
        for j in rest.blocks() {
            // one matrix equation sum_i c_i rho(e_i, j...) = 0 per block j
            let per_basis: Vec<Matrix> = (0..dl)
                .map(|i| {
                    let mut tuple = vec![i];
                    tuple.extend_from_slice(j.indices());
                    self.anchor_tuple(&tuple)
                })
                .collect();
            for r in 0..da {
                for c in 0..da {
                    let mut row = Vector::zero(dl);
                    for (i, m) in per_basis.iter().enumerate() {
                        row.set(i, m.get(r, c).clone());
                    }
                    if !row.is_zero() {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            return Subspace::whole(dl);
        }
        let basis = Matrix::from_rows(rows).kernel_basis();
        Subspace::new(dl, basis).expect("kernel basis is independent")
    }

    /// Rinehart ideal conditions of the definition: n-Lie ideal, `A`-stable,
    /// and `rho(I, L, ..., L)(A) L ⊆ I` read as: for every `i` in `I`, every
    /// `(n-2)`-tuple, every `a` and every `y`, the element
    /// `rho(i, x_2, ..., x_{n-1})(a) · y` stays in `I`.
    pub fn is_rinehart_ideal(&self, s: &Subspace) -> bool {
        if !crate::nlie::is_ideal(&self.lie, s) {
            return false;
        }
        let dl = self.dim();
        let da = self.base.dim();
        // A I ⊆ I
        for v in s.basis() {
            for p in 0..da {
                if !s.contains(&self.a_action[p].mul_vec(v)) {
                    return false;
                }
            }
        }
        // rho(I, ...)(A) L ⊆ I
        let rest = WedgeBasis::new(dl, self.arity() - 2);
        for v in s.basis() {
            for j in rest.blocks() {
                let rho = self.anchor_with_vector_at(&[], v, j.indices());
                for p in 0..da {
                    let rho_a = rho.mul_vec(&Vector::unit(da, p));
                    for y in 0..dl {
                        let moved = self.act(&rho_a, &Vector::unit(dl, y));
                        if !s.contains(&moved) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Subalgebra in the Rinehart sense: closed under the bracket and
    /// stable under the `A`-action.
    pub fn is_rinehart_subalgebra(&self, s: &Subspace) -> bool {
        if !crate::nlie::is_subalgebra(&self.lie, s) {
            return false;
        }
        for v in s.basis() {
            for p in 0..self.base.dim() {
                if !s.contains(&self.a_action[p].mul_vec(v)) {
                    return false;
                }
            }
        }
        true
    }

    /// Does the pair of Rinehart ideals decompose the algebra as a direct
    /// sum? (`I ∩ J = 0` and `I + J = L`.)
    pub fn decomposes_as(&self, i: &Subspace, j: &Subspace) -> bool {
        if !self.is_rinehart_ideal(i) || !self.is_rinehart_ideal(j) {
            return false;
        }
        if i.dim() + j.dim() != self.dim() {
            return false;
        }
        let stacked = i.span_matrix().hstack(j.span_matrix());
        stacked.rank() == self.dim()
    }

    /// The Leibniz-Rinehart algebra on `∧^{n-1}L`: fundamental bracket,
    /// block-wise anchor, `A` acting through the first wedge slot.
    pub fn leibniz_rinehart(&self) -> LeibnizRinehart {
        let leib = self.lie.fundamental_bracket();
        let b = self.blocks.len();
        let da = self.base.dim();
        let mut a_action = Vec::with_capacity(da);
        for p in 0..da {
            let mut cols = Vec::with_capacity(b);
            for block in self.blocks.blocks() {
                let j = block.indices();
                let moved = self.a_action[p].col(j[0]);
                let mut col = Vector::zero(b);
                for k in 0..self.dim() {
                    if moved[k].is_zero() {
                        continue;
                    }
                    let mut wedge = j.to_vec();
                    wedge[0] = k;
                    if let Some((sign, pos)) = self.blocks.canonical_position(&wedge) {
                        let c = if sign < 0 {
                            -moved[k].clone()
                        } else {
                            moved[k].clone()
                        };
                        let cur = &col[pos] + &c;
                        col.set(pos, cur);
                    }
                }
                cols.push(col);
            }
            a_action.push(Matrix::from_cols(b, &cols));
        }
        LeibnizRinehart {
            base: self.base.clone(),
            leib,
            a_action,
            anchor_hat: self.anchor.clone(),
        }
    }

    /// Enlargement on `A ⊗ L` with bracket
    /// `[a_1 ⊗ x_1, ..., a_n ⊗ x_n] = (a_1 ... a_n) ⊗ [x_1, ..., x_n]`,
    /// anchor `(a_1 ... a_{n-1}) rho(x_1, ..., x_{n-1})`, and `A` acting on
    /// the first tensor factor. Basis `a_p ⊗ e_i` at index `p * dim L + i`.
    pub fn tensor_extend(&self) -> Result<NLieRinehart, Error> {
        let dl = self.dim();
        let da = self.base.dim();
        let n = self.arity();
        let big = da * dl;

        let split = |t: usize| (t / dl, t % dl);

        let mut entries = Vec::new();
        for tuple in WedgeBasis::new(big, n).blocks() {
            let parts: Vec<(usize, usize)> = tuple.indices().iter().map(|&t| split(t)).collect();
            let lie_part: Vec<usize> = parts.iter().map(|&(_, i)| i).collect();
            let br = self.lie.bracket_basis(&lie_part);
            if br.is_zero() {
                continue;
            }
            let mut prod = self.base.unit().clone();
            for &(p, _) in &parts {
                prod = self.base.mul(&prod, &Vector::unit(da, p));
            }
            let mut value = Vector::zero(big);
            for q in 0..da {
                if prod[q].is_zero() {
                    continue;
                }
                for k in 0..dl {
                    if br[k].is_zero() {
                        continue;
                    }
                    let cur = &value[q * dl + k] + &(&prod[q] * &br[k]);
                    value.set(q * dl + k, cur);
                }
            }
            entries.push((tuple.indices().to_vec(), value));
        }
        let lie = NLieAlgebra::new(big, n, &entries)?;

        let mut anchor_entries = Vec::new();
        for tuple in WedgeBasis::new(big, n - 1).blocks() {
            let parts: Vec<(usize, usize)> = tuple.indices().iter().map(|&t| split(t)).collect();
            let lie_part: Vec<usize> = parts.iter().map(|&(_, i)| i).collect();
            let rho = self.anchor_tuple(&lie_part);
            if rho.is_zero() {
                continue;
            }
            let mut prod = self.base.unit().clone();
            for &(p, _) in &parts {
                prod = self.base.mul(&prod, &Vector::unit(da, p));
            }
            let mat = self.base.mul_matrix(&prod).mul(&rho);
            if !mat.is_zero() {
                anchor_entries.push((tuple.indices().to_vec(), mat));
            }
        }

        let mut a_action = Vec::with_capacity(da);
        for b in 0..da {
            let mut m = Matrix::zero(big, big);
            for p in 0..da {
                let moved = self.base.basis_product(b, p);
                for q in 0..da {
                    if moved[q].is_zero() {
                        continue;
                    }
                    for i in 0..dl {
                        m.set(q * dl + i, p * dl + i, moved[q].clone());
                    }
                }
            }
            a_action.push(m);
        }

        NLieRinehart::new(self.base.clone(), lie, a_action, &anchor_entries)
    }

    /// Enlargement on `E = L ⊕ A` with bracket
    /// `[(x_1,a_1),...,(x_n,a_n)] = ([x...], sum_i (-1)^(n-i) rho(x_1,...,x̂_i,...,x_n) a_i)`
    /// and anchor ignoring the `A`-components. `A`-basis element `p` sits at
    /// index `dim L + p`.
    pub fn append_a(&self) -> Result<NLieRinehart, Error> {
        let dl = self.dim();
        let da = self.base.dim();
        let n = self.arity();
        let big = dl + da;

        let mut entries = Vec::new();
        for tuple in WedgeBasis::new(big, n).blocks() {
            let idx = tuple.indices();
            let a_slots: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|(_, &t)| t >= dl)
                .map(|(s, _)| s)
                .collect();
            let mut value = Vector::zero(big);
            match a_slots.len() {
                0 => {
                    let br = self.lie.bracket_basis(idx);
                    for k in 0..dl {
                        if !br[k].is_zero() {
                            value.set(k, br[k].clone());
                        }
                    }
                }
                1 => {
                    let s = a_slots[0];
                    let p = idx[s] - dl;
                    let mut lie_part: Vec<usize> = idx.to_vec();
                    lie_part.remove(s);
                    // (-1)^(n - i) with i the 1-based slot of the A-entry
                    let sign_neg = (n - (s + 1)) % 2 == 1;
                    let rho_a = self.anchor_tuple(&lie_part).mul_vec(&Vector::unit(da, p));
                    for q in 0..da {
                        if rho_a[q].is_zero() {
                            continue;
                        }
                        let c = if sign_neg {
                            -rho_a[q].clone()
                        } else {
                            rho_a[q].clone()
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
            let rho = self.anchor_tuple(idx);
            if !rho.is_zero() {
                anchor_entries.push((idx.to_vec(), rho));
            }
        }

        let mut a_action = Vec::with_capacity(da);
        for b in 0..da {
            let mut m = Matrix::zero(big, big);
            for i in 0..dl {
                let col = self.a_action[b].col(i);
                for r in 0..dl {
                    if !col[r].is_zero() {
                        m.set(r, i, col[r].clone());
                    }
                }
            }
            for p in 0..da {
                let prod = self.base.basis_product(b, p);
                for q in 0..da {
                    if !prod[q].is_zero() {
                        m.set(dl + q, dl + p, prod[q].clone());
                    }
                }
            }
            a_action.push(m);
        }

        NLieRinehart::new(self.base.clone(), lie, a_action, &anchor_entries)
    }
}

/// Leibniz-Rinehart structure on `∧^{n-1}L` produced by
/// [`NLieRinehart::leibniz_rinehart`].
#[derive(Clone, Debug)]
pub struct LeibnizRinehart {
    base: CommAlgebra,
    leib: LeibnizAlgebra,
    a_action: Vec<Matrix>,
    anchor_hat: Vec<Matrix>,
}

impl LeibnizRinehart {
    pub fn base(&self) -> &CommAlgebra {
        &self.base
    }

    pub fn leibniz(&self) -> &LeibnizAlgebra {
        &self.leib
    }

    pub fn anchor_hat(&self, pos: usize) -> &Matrix {
        &self.anchor_hat[pos]
    }

    pub fn action_basis(&self, p: usize) -> &Matrix {
        &self.a_action[p]
    }

    fn anchor_of_vector(&self, v: &Vector) -> Matrix {
        let da = self.base.dim();
        let mut out = Matrix::zero(da, da);
        for (pos, m) in self.anchor_hat.iter().enumerate() {
            if !v[pos].is_zero() {
                out = out.add(&m.scale(&v[pos]));
            }
        }
        out
    }

    fn act(&self, a: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::zero(self.leib.dim());
        for p in 0..self.base.dim() {
            if a[p].is_zero() {
                continue;
            }
            out.add_scaled(&a[p], &self.a_action[p].mul_vec(v));
        }
        out
    }

    /// The four Leibniz-Rinehart conditions, swept over basis data.
    pub fn verify(&self) -> Report {
        let mut report = Report::new();
        let d = self.leib.dim();
        let da = self.base.dim();

        report.merge(self.leib.check_leibniz());

        // anchor is a Leibniz-bracket morphism into Der(A)
        let mut witness = None;
        'rho: for i in 0..d {
            for j in 0..d {
                let lhs = self.anchor_of_vector(self.leib.bracket_basis(i, j));
                let rhs = self.anchor_hat[i].commutator(&self.anchor_hat[j]);
                if lhs != rhs {
                    witness = Some(json!({"pair": [i, j]}));
                    break 'rho;
                }
            }
        }
        report.item("anchor_bracket", witness);

        // rho(a X) = a rho(X)
        let mut witness = None;
        'lin: for i in 0..d {
            for p in 0..da {
                let lhs = self.anchor_of_vector(&self.a_action[p].col(i));
                let rhs = self
                    .base
                    .mul_matrix(&Vector::unit(da, p))
                    .mul(&self.anchor_hat[i]);
                if lhs != rhs {
                    witness = Some(json!({"block": i, "a": p}));
                    break 'lin;
                }
            }
        }
        report.item("anchor_a_linear", witness);

        // [X, a Y] = a [X, Y] + rho(X)(a) Y
        let mut witness = None;
        'compat: for i in 0..d {
            for j in 0..d {
                for p in 0..da {
                    let a = Vector::unit(da, p);
                    let lhs = self
                        .leib
                        .bracket(&Vector::unit(d, i), &self.a_action[p].col(j));
                    let rhs = self
                        .act(&a, self.leib.bracket_basis(i, j))
                        .add(&self.act(&self.anchor_hat[i].mul_vec(&a), &Vector::unit(d, j)));
                    if lhs != rhs {
                        witness = Some(json!({"pair": [i, j], "a": p}));
                        break 'compat;
                    }
                }
            }
        }
        report.item("compatibility_leibniz", witness);

        report
    }
}

/// Homomorphism check for a pair `(g, f)` between Rinehart algebras:
/// `g` an algebra morphism on the bases, `f` a bracket morphism, with
/// `f(a x) = g(a) f(x)` and `g(rho(...) a) = rho'(f ..., f ...)(g a)`.
pub fn is_rinehart_morphism(
    g: &Matrix,
    f: &Matrix,
    r1: &NLieRinehart,
    r2: &NLieRinehart,
) -> Result<bool, Error> {
    let da1 = r1.base().dim();
    let da2 = r2.base().dim();
    if g.rows() != da2 || g.cols() != da1 {
        return Err(Error::DimensionMismatch(format!(
            "algebra map is {}x{}, expected {da2}x{da1}",
            g.rows(),
            g.cols()
        )));
    }
    // g is a unital algebra morphism
    if g.mul_vec(r1.base().unit()) != *r2.base().unit() {
        return Ok(false);
    }
    for p in 0..da1 {
        for q in 0..da1 {
            let lhs = g.mul_vec(r1.base().basis_product(p, q));
            let rhs = r2.base().mul(&g.col(p), &g.col(q));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    // f respects brackets
    if !is_morphism(f, r1.lie(), r2.lie())? {
        return Ok(false);
    }
    // condition (1): f(a x) = g(a) f(x)
    for p in 0..da1 {
        for i in 0..r1.dim() {
            let lhs = f.mul_vec(&r1.action_basis(p).col(i));
            let rhs = r2.act(&g.col(p), &f.col(i));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    // condition (2): g(rho(x...)(a)) = rho'(f x...)(g a)
    for xb in r1.blocks().blocks() {
        let x = xb.indices();
        let images: Vec<Vector> = x.iter().map(|&i| f.col(i)).collect();
        let arg_refs: Vec<&Vector> = images.iter().collect();
        let rho2 = r2.anchor_eval(&arg_refs);
        for p in 0..da1 {
            let lhs = g.mul_vec(&r1.anchor_tuple(x).mul_vec(&Vector::unit(da1, p)));
            let rhs = rho2.mul_vec(&g.col(p));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

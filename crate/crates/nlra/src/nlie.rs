//! n-Lie (Filippov) algebras over the rationals by alternating structure
//! constants: the fundamental identity, the fundamental bracket on
//! `∧^{n-1}L`, morphisms, subalgebras, ideals and quotients.
//!
//! Brackets are stored only on strictly increasing basis tuples; every
//! evaluation on other arguments goes through signed canonicalization, so
//! alternation holds by construction and equality of algebras is literal
//! equality of tables.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::json;

use crate::error::Error;
use crate::exact::{Matrix, Scalar, Vector};
use crate::report::Report;
use crate::wedge::{sort_sign, WedgeBasis};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NLieAlgebra {
    dim: usize,
    arity: usize,
    table: BTreeMap<Vec<usize>, Vector>,
}

impl NLieAlgebra {
    /// `entries` maps strictly increasing `arity`-tuples to bracket values;
    /// missing tuples are zero.
    pub fn new(dim: usize, arity: usize, entries: &[(Vec<usize>, Vector)]) -> Result<Self, Error> {
        assert!(arity >= 2, "arity must be at least 2");
        let mut table = BTreeMap::new();
        for (tuple, value) in entries {
            if tuple.len() != arity {
                return Err(Error::MalformedGrouping(format!(
                    "bracket tuple {tuple:?} has arity {} but expected {arity}",
                    tuple.len()
                )));
            }
            for w in tuple.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::MalformedGrouping(format!(
                        "bracket tuple {tuple:?} is not strictly increasing"
                    )));
                }
            }
            if let Some(&last) = tuple.last() {
                if last >= dim {
                    return Err(Error::IndexOutOfRange { index: last, dim });
                }
            }
            if value.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "bracket value for {tuple:?} has dim {}",
                    value.dim()
                )));
            }
            if !value.is_zero() {
                table.insert(tuple.clone(), value.clone());
            }
        }
        Ok(NLieAlgebra { dim, arity, table })
    }

    pub fn zero(dim: usize, arity: usize) -> Self {
        NLieAlgebra {
            dim,
            arity,
            table: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.table.iter()
    }

    /// Bracket of basis elements in any order, via signed sorting.
    pub fn bracket_basis(&self, tuple: &[usize]) -> Vector {
        debug_assert_eq!(tuple.len(), self.arity);
        let (sign, sorted) = sort_sign(tuple);
        if sign == 0 {
            return Vector::zero(self.dim);
        }
        match self.table.get(&sorted) {
            None => Vector::zero(self.dim),
            Some(v) if sign == 1 => v.clone(),
            Some(v) => v.neg(),
        }
    }

    /// Full multilinear expansion over arbitrary coordinate vectors.
    pub fn bracket(&self, args: &[&Vector]) -> Vector {
        debug_assert_eq!(args.len(), self.arity);
        let mut out = Vector::zero(self.dim);
        let mut tuple = vec![0usize; self.arity];
        self.bracket_rec(
            args,
            0,
            Scalar::from_integer(1.into()),
            &mut tuple,
            &mut out,
        );
        out
    }

    fn bracket_rec(
        &self,
        args: &[&Vector],
        slot: usize,
        coeff: Scalar,
        tuple: &mut Vec<usize>,
        out: &mut Vector,
    ) {
        if slot == self.arity {
            out.add_scaled(&coeff, &self.bracket_basis(tuple));
            return;
        }
        for i in 0..self.dim {
            let c = &args[slot][i];
            if c.is_zero() {
                continue;
            }
            tuple[slot] = i;
            self.bracket_rec(args, slot + 1, &coeff * c, tuple, out);
        }
    }

    /// Bracket with basis indices in all slots except one vector slot.
    pub fn bracket_with_vector_at(&self, prefix: &[usize], v: &Vector, suffix: &[usize]) -> Vector {
        let mut out = Vector::zero(self.dim);
        let mut tuple = Vec::with_capacity(self.arity);
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            tuple.clear();
            tuple.extend_from_slice(prefix);
            tuple.push(i);
            tuple.extend_from_slice(suffix);
            out.add_scaled(&v[i], &self.bracket_basis(&tuple));
        }
        out
    }

    /// Matrix of `z -> [block..., z]` — the adjoint action of a fundamental
    /// element given by basis indices.
    pub fn ad_of(&self, block: &[usize]) -> Matrix {
        debug_assert_eq!(block.len(), self.arity - 1);
        let cols: Vec<Vector> = (0..self.dim)
            .map(|z| {
                let mut tuple = block.to_vec();
                tuple.push(z);
                self.bracket_basis(&tuple)
            })
            .collect();
        Matrix::from_cols(self.dim, &cols)
    }

    /// Fundamental identity, swept over canonical (n-1)-tuples against
    /// canonical n-tuples; multilinearity and alternation make this sweep
    /// exhaustive.
    pub fn check_fundamental_identity(&self) -> Report {
        let n = self.arity;
        let x_blocks = WedgeBasis::new(self.dim, n - 1);
        let y_blocks = WedgeBasis::new(self.dim, n);
        let mut report = Report::new();
        for xb in x_blocks.blocks() {
            let x = xb.indices();
            for yb in y_blocks.blocks() {
                let y = yb.indices();
                let inner = self.bracket_basis(y);
                let lhs = self.bracket_with_vector_at(x, &inner, &[]);
                let mut rhs = Vector::zero(self.dim);
                for i in 0..n {
                    let mut xi = x.to_vec();
                    xi.push(y[i]);
                    let replaced = self.bracket_basis(&xi);
                    rhs = rhs.add(&self.bracket_with_vector_at(&y[..i], &replaced, &y[i + 1..]));
                }
                if lhs != rhs {
                    report.fail(
                        "fundamental_identity",
                        json!({
                            "x": x,
                            "y": y,
                            "lhs": lhs.to_string(),
                            "rhs": rhs.to_string(),
                        }),
                    );
                    return report;
                }
            }
        }
        report.pass("fundamental_identity");
        report
    }

    /// The induced Leibniz bracket on `∧^{n-1}L`:
    /// `[X,Y] = sum_i y_1 ∧ ... ∧ [x_1,...,x_{n-1},y_i] ∧ ... ∧ y_{n-1}`.
    pub fn fundamental_bracket(&self) -> LeibnizAlgebra {
        let basis = WedgeBasis::new(self.dim, self.arity - 1);
        let b = basis.len();
        let mut table = vec![vec![Vector::zero(b); b]; b];
        for (xi, xb) in basis.blocks().iter().enumerate() {
            let x = xb.indices();
            for (yi, yb) in basis.blocks().iter().enumerate() {
                let y = yb.indices();
                let mut out = Vector::zero(b);
                for i in 0..y.len() {
                    let mut tuple = x.to_vec();
                    tuple.push(y[i]);
                    let replaced = self.bracket_basis(&tuple);
                    // wedge y with slot i replaced by the bracket value
                    for k in 0..self.dim {
                        if replaced[k].is_zero() {
                            continue;
                        }
                        let mut wedge = y.to_vec();
                        wedge[i] = k;
                        if let Some((sign, pos)) = basis.canonical_position(&wedge) {
                            let mut c = replaced[k].clone();
                            if sign < 0 {
                                c = -c;
                            }
                            let cur = &out[pos] + &c;
                            out.set(pos, cur);
                        }
                    }
                }
                table[xi][yi] = out;
            }
        }
        LeibnizAlgebra { dim: b, table }
    }
}

/// Binary bracket without any symmetry imposed, subject only to the left
/// Leibniz identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    dim: usize,
    table: Vec<Vec<Vector>>,
}

impl LeibnizAlgebra {
    pub fn new(dim: usize, table: Vec<Vec<Vector>>) -> Self {
        assert_eq!(table.len(), dim);
        for row in &table {
            assert_eq!(row.len(), dim);
            for v in row {
                assert_eq!(v.dim(), dim);
            }
        }
        LeibnizAlgebra { dim, table }
    }

    pub fn zero(dim: usize) -> Self {
        LeibnizAlgebra {
            dim,
            table: vec![vec![Vector::zero(dim); dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim);
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                out.add_scaled(&c, &self.table[i][j]);
            }
        }
        out
    }

    /// Left Leibniz identity `[x,[y,z]] = [[x,y],z] + [y,[x,z]]` over all
    /// basis triples.
    pub fn check_leibniz(&self) -> Report {
        let mut report = Report::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let lhs = self.bracket(&Vector::unit(self.dim, i), &self.table[j][k]);
                    let rhs = self
                        .bracket(&self.table[i][j], &Vector::unit(self.dim, k))
                        .add(&self.bracket(&Vector::unit(self.dim, j), &self.table[i][k]));
                    if lhs != rhs {
                        report.fail(
                            "leibniz_identity",
                            json!({
                                "triple": [i, j, k],
                                "lhs": lhs.to_string(),
                                "rhs": rhs.to_string(),
                            }),
                        );
                        return report;
                    }
                }
            }
        }
        report.pass("leibniz_identity");
        report
    }
}

/// Is `f` (a `dim(l2) x dim(l)` matrix) a morphism of n-Lie algebras?
pub fn is_morphism(f: &Matrix, l: &NLieAlgebra, l2: &NLieAlgebra) -> Result<bool, Error> {
    if l.arity() != l2.arity() {
        return Err(Error::DimensionMismatch("arity mismatch".into()));
    }
    if f.cols() != l.dim() || f.rows() != l2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "morphism matrix is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            l2.dim(),
            l.dim()
        )));
    }
    let tuples = WedgeBasis::new(l.dim(), l.arity());
    for t in tuples.blocks() {
        let lhs = f.mul_vec(&l.bracket_basis(t.indices()));
        let images: Vec<Vector> = t.indices().iter().map(|&i| f.col(i)).collect();
        let arg_refs: Vec<&Vector> = images.iter().collect();
        let rhs = l2.bracket(&arg_refs);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A linearly independent family of vectors in an ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    span: Matrix,
}

impl Subspace {
    pub fn new(ambient: usize, basis: Vec<Vector>) -> Result<Self, Error> {
        for v in &basis {
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "subspace vector has dim {}, ambient is {ambient}",
                    v.dim()
                )));
            }
        }
        let span = Matrix::from_cols(ambient, &basis);
        if span.rank() != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Subspace {
            ambient,
            basis,
            span,
        })
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace::new(
            ambient,
            (0..ambient).map(|i| Vector::unit(ambient, i)).collect(),
        )
        .expect("standard basis is independent")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Column matrix of the basis.
    pub fn span_matrix(&self) -> &Matrix {
        &self.span
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.span.solve_in_span(v).is_some()
    }

    /// Coordinates of `v` in this basis, if it lies in the span.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        self.span.solve_in_span(v)
    }
}

/// `[S, L, ..., L] ⊆ S`, swept over S-basis against canonical tuples of the
/// ambient basis.
pub fn is_ideal(l: &NLieAlgebra, s: &Subspace) -> bool {
    ideal_failure(l, s).is_none()
}

pub(crate) fn ideal_failure(l: &NLieAlgebra, s: &Subspace) -> Option<serde_json::Value> {
    let rest = WedgeBasis::new(l.dim(), l.arity() - 1);
    for (si, v) in s.basis().iter().enumerate() {
        for t in rest.blocks() {
            let out = l.bracket_with_vector_at(&[], v, t.indices());
            if !s.contains(&out) {
                return Some(json!({
                    "subspace_vector": si,
                    "rest": t.indices(),
                    "bracket": out.to_string(),
                }));
            }
        }
    }
    None
}

/// `[S, ..., S] ⊆ S` over canonical tuples of the subspace basis.
pub fn is_subalgebra(l: &NLieAlgebra, s: &Subspace) -> bool {
    let tuples = WedgeBasis::new(s.dim(), l.arity().min(s.dim().max(1)));
    if s.dim() < l.arity() {
        // fewer independent vectors than bracket slots: every bracket with
        // a repeated argument vanishes
        return true;
    }
    for t in tuples.blocks() {
        let args: Vec<&Vector> = t.indices().iter().map(|&i| &s.basis()[i]).collect();
        let out = l.bracket(&args);
        if !s.contains(&out) {
            return false;
        }
    }
    true
}

/// Quotient by an ideal, with the projection matrix and the greedy
/// index-ordered complement used as the lifted basis.
pub fn quotient(
    l: &NLieAlgebra,
    ideal: &Subspace,
) -> Result<(NLieAlgebra, Matrix, Vec<usize>), Error> {
    if let Some(w) = ideal_failure(l, ideal) {
        return Err(Error::NotAnIdeal {
            witness: w.to_string(),
        });
    }
    let dim = l.dim();
    let q = dim - ideal.dim();

    // complete the ideal basis with standard basis vectors, in index order
    let mut cols: Vec<Vector> = ideal.basis().to_vec();
    let mut complement = Vec::new();
    for j in 0..dim {
        if cols.len() == dim {
            break;
        }
        let candidate = Vector::unit(dim, j);
        let mut trial = cols.clone();
        trial.push(candidate.clone());
        if Matrix::from_cols(dim, &trial).rank() == trial.len() {
            cols.push(candidate);
            complement.push(j);
        }
    }
    let t = Matrix::from_cols(dim, &cols);
    let t_inv = t.inverse().expect("completed basis is invertible");
    // last q rows of T^{-1} are the quotient coordinates
    let mut projection = Matrix::zero(q, dim);
    for r in 0..q {
        for c in 0..dim {
            projection.set(r, c, t_inv.get(ideal.dim() + r, c).clone());
        }
    }

    let tuples = WedgeBasis::new(q, l.arity().min(q.max(1)));
    let mut entries = Vec::new();
    if q >= l.arity() {
        for t in tuples.blocks() {
            let args: Vec<Vector> = t
                .indices()
                .iter()
                .map(|&i| Vector::unit(dim, complement[i]))
                .collect();
            let arg_refs: Vec<&Vector> = args.iter().collect();
            let value = projection.mul_vec(&l.bracket(&arg_refs));
            entries.push((t.indices().to_vec(), value));
        }
    }
    let quotient_algebra = NLieAlgebra::new(q, l.arity(), &entries)?;
    Ok((quotient_algebra, projection, complement))
}

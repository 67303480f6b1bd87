//! The commutative associative unital base algebra `A`, given by structure
//! constants on a fixed rational basis, and its derivation space `Der(A)`.

use num_traits::Zero;
use serde_json::json;

use crate::error::Error;
use crate::exact::{Matrix, Scalar, Vector};
use crate::report::Report;

/// Finite-dimensional commutative associative unital algebra over the
/// rationals. `product[i][j]` holds the coordinates of `a_i · a_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    dim: usize,
    unit: Vector,
    product: Vec<Vec<Vector>>,
}

impl CommAlgebra {
    /// Build from a full (or upper-triangular sparse) table; the table is
    /// symmetrized, axioms are checked by [`CommAlgebra::check`] callers.
    pub fn new(
        dim: usize,
        unit: Vector,
        entries: &[(usize, usize, Vector)],
    ) -> Result<Self, Error> {
        if unit.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "unit has dim {} but algebra has dim {dim}",
                unit.dim()
            )));
        }
        let mut product = vec![vec![Vector::zero(dim); dim]; dim];
        let mut explicit = vec![vec![false; dim]; dim];
        for (i, j, v) in entries {
            if *i >= dim || *j >= dim {
                return Err(Error::IndexOutOfRange {
                    index: (*i).max(*j),
                    dim,
                });
            }
            if v.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "product entry ({i},{j}) has dim {}",
                    v.dim()
                )));
            }
            product[*i][*j] = v.clone();
            explicit[*i][*j] = true;
            // mirror unless the transposed entry is given on its own, so a
            // deliberately asymmetric table stays representable for the
            // commutativity check to catch
            if !explicit[*j][*i] {
                product[*j][*i] = v.clone();
            }
        }
        Ok(CommAlgebra { dim, unit, product })
    }

    /// The ground field itself: `A = Q`, one basis vector, `1·1 = 1`.
    pub fn rationals() -> Self {
        CommAlgebra {
            dim: 1,
            unit: Vector::unit(1, 0),
            product: vec![vec![Vector::unit(1, 0)]],
        }
    }

    /// Truncated polynomial algebra `Q[t]/(t^k)` on the basis `1, t, ..., t^{k-1}`.
    pub fn truncated_polynomials(k: usize) -> Self {
        assert!(k >= 1);
        let mut product = vec![vec![Vector::zero(k); k]; k];
        for i in 0..k {
            for j in 0..k {
                if i + j < k {
                    product[i][j] = Vector::unit(k, i + j);
                }
            }
        }
        CommAlgebra {
            dim: k,
            unit: Vector::unit(k, 0),
            product,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.product[i][j]
    }

    /// Product of two coordinate vectors through the structure constants.
    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim);
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                out.add_scaled(&c, &self.product[i][j]);
            }
        }
        out
    }

    /// Matrix of multiplication by `a` acting on coordinates.
    pub fn mul_matrix(&self, a: &Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul(a, &Vector::unit(self.dim, j)))
            .collect();
        Matrix::from_cols(self.dim, &cols)
    }

    /// If the unit is a standard basis vector, its index. The coordinate at
    /// this index is how the ground field acts through `A` on
    /// one-dimensional carriers (trivial coefficients, central extensions).
    pub fn unit_index(&self) -> Option<usize> {
        let mut idx = None;
        for i in 0..self.dim {
            if self.unit[i].is_zero() {
                continue;
            }
            if !(&self.unit[i] - Scalar::from_integer(1.into())).is_zero() || idx.is_some() {
                return None;
            }
            idx = Some(i);
        }
        idx
    }

    /// Commutativity, associativity and the unit law, swept over all basis
    /// tuples, each with a localized witness.
    pub fn check(&self) -> Report {
        let mut report = Report::new();

        let mut witness = None;
        'comm: for i in 0..self.dim {
            for j in 0..i {
                if self.product[i][j] != self.product[j][i] {
                    witness = Some(json!({
                        "pair": [i, j],
                        "ij": self.product[i][j].to_string(),
                        "ji": self.product[j][i].to_string(),
                    }));
                    break 'comm;
                }
            }
        }
        report.item("commutativity", witness);

        let mut witness = None;
        'assoc: for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let ek = Vector::unit(self.dim, k);
                    let ei = Vector::unit(self.dim, i);
                    let lhs = self.mul(&self.product[i][j], &ek);
                    let rhs = self.mul(&ei, &self.product[j][k]);
                    if lhs != rhs {
                        witness = Some(json!({
                            "triple": [i, j, k],
                            "lhs": lhs.to_string(),
                            "rhs": rhs.to_string(),
                        }));
                        break 'assoc;
                    }
                }
            }
        }
        report.item("associativity", witness);

        let mut witness = None;
        for i in 0..self.dim {
            let ei = Vector::unit(self.dim, i);
            let prod = self.mul(&self.unit, &ei);
            if prod != ei {
                witness = Some(json!({
                    "basis": i,
                    "unit_times_basis": prod.to_string(),
                }));
                break;
            }
        }
        report.item("unit_law", witness);

        report
    }

    /// Leibniz-rule failure witness for a candidate derivation matrix, or
    /// `None` when `D` is a derivation.
    pub fn derivation_failure(&self, d: &Matrix) -> Option<serde_json::Value> {
        assert_eq!(d.rows(), self.dim);
        assert_eq!(d.cols(), self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let lhs = d.mul_vec(&self.product[i][j]);
                let ei = Vector::unit(self.dim, i);
                let ej = Vector::unit(self.dim, j);
                let rhs = self
                    .mul(&d.mul_vec(&ei), &ej)
                    .add(&self.mul(&ei, &d.mul_vec(&ej)));
                if lhs != rhs {
                    return Some(json!({
                        "pair": [i, j],
                        "d_of_product": lhs.to_string(),
                        "leibniz_rhs": rhs.to_string(),
                    }));
                }
            }
        }
        None
    }

    pub fn is_derivation(&self, d: &Matrix) -> bool {
        self.derivation_failure(d).is_none()
    }

    /// Canonical basis of `Der(A)`, the solution space of the Leibniz
    /// constraints on matrix entries.
    pub fn derivation_space(&self) -> Vec<Derivation> {
        let n = self.dim;
        // Unknowns: D entries, row-major. Constraint per (i<=j, coordinate r):
        //   (D · mu_ij)_r - (D e_i · e_j)_r - (e_i · D e_j)_r = 0
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mu = &self.product[i][j];
                for r in 0..n {
                    let mut row = Vector::zero(n * n);
                    // (D mu)_r = sum_c D[r][c] mu[c]
                    for c in 0..n {
                        if !mu[c].is_zero() {
                            row.set(r * n + c, mu[c].clone());
                        }
                    }
                    // (D e_i) * e_j contributes sum_c D[c][i] mu_cj[r]
                    for c in 0..n {
                        let coeff = &self.product[c][j][r];
                        if !coeff.is_zero() {
                            let cur = &row[c * n + i] - coeff;
                            row.set(c * n + i, cur);
                        }
                    }
                    // e_i * (D e_j) contributes sum_c D[c][j] mu_ic[r]
                    for c in 0..n {
                        let coeff = &self.product[i][c][r];
                        if !coeff.is_zero() {
                            let cur = &row[c * n + j] - coeff;
                            row.set(c * n + j, cur);
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let constraints = Matrix::from_rows(rows);
        constraints
            .kernel_basis()
            .into_iter()
            .map(|flat| {
                let mut m = Matrix::zero(n, n);
                for r in 0..n {
                    for c in 0..n {
                        m.set(r, c, flat[r * n + c].clone());
                    }
                }
                Derivation { matrix: m }
            })
            .collect()
    }
}

/// A derivation of `A`, stored as its matrix on `A`-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub matrix: Matrix,
}

impl Derivation {
    pub fn apply(&self, a: &Vector) -> Vector {
        self.matrix.mul_vec(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar_int;

    #[test]
    fn field_and_dual_numbers_pass() {
        assert!(CommAlgebra::rationals().check().passed());
        assert!(CommAlgebra::truncated_polynomials(2).check().passed());
        assert!(CommAlgebra::truncated_polynomials(3).check().passed());
    }

    #[test]
    fn broken_table_fails_with_witness() {
        // t*t = 1 + t next to a forced asymmetric entry t*1 = 0: the
        // asymmetry breaks commutativity and drags associativity down too,
        // since (t*t)*t = 1 + 2t while t*(t*t) = 1 + t.
        let a = CommAlgebra::new(
            2,
            Vector::unit(2, 0),
            &[
                (0, 0, Vector::unit(2, 0)),
                (0, 1, Vector::unit(2, 1)),
                (1, 0, Vector::zero(2)),
                (1, 1, Vector::from_ints(&[1, 1])),
            ],
        )
        .unwrap();
        let report = a.check();
        assert!(!report.passed());
        assert!(report.check("commutativity").unwrap().witness.is_some());
        assert!(report.check("associativity").unwrap().witness.is_some());
    }

    #[test]
    fn derivation_examples() {
        let dual = CommAlgebra::truncated_polynomials(2);
        assert!(dual.is_derivation(&Matrix::zero(2, 2)));
        assert!(!dual.is_derivation(&Matrix::identity(2)));

        // t d/dt on Q[t]/(t^2): D(1)=0, D(t)=t
        let mut d = Matrix::zero(2, 2);
        d.set(1, 1, scalar_int(1));
        assert!(dual.is_derivation(&d));
    }

    #[test]
    fn derivation_space_dimensions() {
        assert!(CommAlgebra::rationals().derivation_space().is_empty());
        assert_eq!(
            CommAlgebra::truncated_polynomials(2)
                .derivation_space()
                .len(),
            1
        );
        assert_eq!(
            CommAlgebra::truncated_polynomials(3)
                .derivation_space()
                .len(),
            2
        );
    }

    #[test]
    fn derivation_space_members_are_derivations_and_close() {
        for k in [2usize, 3, 4] {
            let a = CommAlgebra::truncated_polynomials(k);
            let ders = a.derivation_space();
            for d in &ders {
                assert!(a.is_derivation(&d.matrix));
                // every derivation kills the unit
                assert!(d.apply(a.unit()).is_zero());
            }
            for d1 in &ders {
                for d2 in &ders {
                    assert!(a.is_derivation(&d1.matrix.commutator(&d2.matrix)));
                }
            }
        }
    }
}

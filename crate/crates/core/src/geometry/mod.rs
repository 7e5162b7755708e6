//! Metric fields, coordinate maps, Jacobians, determinants, and signatures.

mod eigen;
mod matrix;

use thiserror::Error;

use crate::fieldlang::{EvalError, Expression};
use crate::real::Real;

pub use eigen::{matrix_signature, symmetric_eigenvalues};
pub use matrix::{SquareMatrix, MAX_DIMENSION};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("Jacobi eigenvalue iteration did not converge after {sweeps} sweeps")]
    EigenNonConvergence { sweeps: usize },
    #[error("dimension {dim} exceeds the supported maximum {MAX_DIMENSION}")]
    DimensionTooLarge { dim: usize },
    #[error("metric grid is not symmetric: component ({row},{col}) differs from ({col},{row})")]
    AsymmetricComponents { row: usize, col: usize },
    #[error("expected a {expected}x{expected} grid of components, got row {row} of length {len}")]
    MalformedGrid {
        expected: usize,
        row: usize,
        len: usize,
    },
    #[error("component dimension {found} does not match field dimension {expected}")]
    ComponentDimension { expected: usize, found: usize },
}

/// Symmetric matrix of expressions: the metric tensor as a function of the
/// point. Only the upper triangle is stored, so symmetry holds by
/// construction and both `(i,j)` and `(j,i)` evaluate to bit-identical
/// values.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricField {
    dim: usize,
    upper: Vec<Expression>,
}

impl MetricField {
    /// Builds a metric from a full component grid, requiring `grid[i][j]`
    /// and `grid[j][i]` to be structurally identical expressions.
    pub fn from_grid(grid: Vec<Vec<Expression>>) -> Result<Self, GeometryError> {
        let dim = grid.len();
        if dim > MAX_DIMENSION {
            return Err(GeometryError::DimensionTooLarge { dim });
        }
        for (i, row) in grid.iter().enumerate() {
            if row.len() != dim {
                return Err(GeometryError::MalformedGrid {
                    expected: dim,
                    row: i,
                    len: row.len(),
                });
            }
            for expr in row {
                if expr.dimension() != dim {
                    return Err(GeometryError::ComponentDimension {
                        expected: dim,
                        found: expr.dimension(),
                    });
                }
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if grid[i][j] != grid[j][i] {
                    return Err(GeometryError::AsymmetricComponents { row: i, col: j });
                }
            }
        }
        let mut upper = Vec::with_capacity(dim * (dim + 1) / 2);
        for i in 0..dim {
            for j in i..dim {
                upper.push(grid[i][j].clone());
            }
        }
        Ok(Self { dim, upper })
    }

    /// `diag(-1, 1, …, 1)`.
    pub fn minkowski(dim: usize) -> Self {
        let mut grid = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut row = Vec::with_capacity(dim);
            for j in 0..dim {
                let v = if i != j {
                    0.0
                } else if i == 0 {
                    -1.0
                } else {
                    1.0
                };
                row.push(Expression::constant(dim, v));
            }
            grid.push(row);
        }
        Self::from_grid(grid).expect("constant diagonal grid is symmetric")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn component(&self, row: usize, col: usize) -> &Expression {
        let (i, j) = if row <= col { (row, col) } else { (col, row) };
        let idx = i * self.dim - i * (i + 1) / 2 + j;
        &self.upper[idx]
    }

    pub fn evaluate<T: Real>(&self, point: &[T]) -> Result<SquareMatrix<T>, GeometryError> {
        let mut m = SquareMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let v = self.component(i, j).evaluate(point)?;
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        Ok(m)
    }

    pub fn determinant<T: Real>(&self, point: &[T]) -> Result<T, GeometryError> {
        Ok(self.evaluate(point)?.det())
    }

    /// Sylvester signature `(n_pos, n_neg, n_zero)` at a point.
    pub fn signature<T: Real>(&self, point: &[T]) -> Result<(usize, usize, usize), GeometryError> {
        matrix_signature(&self.evaluate(point)?)
    }
}

/// A map `R^D -> R^D` given by one expression per component.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateMap {
    dim: usize,
    components: Vec<Expression>,
}

impl CoordinateMap {
    pub fn new(components: Vec<Expression>) -> Result<Self, GeometryError> {
        let dim = components.len();
        if dim > MAX_DIMENSION {
            return Err(GeometryError::DimensionTooLarge { dim });
        }
        for c in &components {
            if c.dimension() != dim {
                return Err(GeometryError::ComponentDimension {
                    expected: dim,
                    found: c.dimension(),
                });
            }
        }
        Ok(Self { dim, components })
    }

    pub fn identity(dim: usize) -> Self {
        let components = (0..dim)
            .map(|i| crate::fieldlang::parse(&format!("x{i}"), dim).expect("variable parses"))
            .collect();
        Self::new(components).expect("identity map is well-formed")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[Expression] {
        &self.components
    }

    pub fn apply<T: Real>(&self, point: &[T]) -> Result<Vec<T>, GeometryError> {
        self.components
            .iter()
            .map(|c| c.evaluate(point).map_err(Into::into))
            .collect()
    }

    /// Jacobian matrix with entry `(row, col) = ∂(component row)/∂x_col`,
    /// computed by one dual-number sweep per coordinate direction.
    pub fn jacobian<T: Real>(&self, point: &[T]) -> Result<SquareMatrix<T>, GeometryError> {
        let n = self.dim;
        let mut j = SquareMatrix::zeros(n);
        let mut direction = vec![T::zero(); n];
        for col in 0..n {
            direction[col] = T::one();
            for (row, component) in self.components.iter().enumerate() {
                let d = component.evaluate_dual(point, &direction)?;
                j.set(row, col, d.derivative);
            }
            direction[col] = T::zero();
        }
        Ok(j)
    }

    pub fn jacobian_det<T: Real>(&self, point: &[T]) -> Result<T, GeometryError> {
        Ok(self.jacobian(point)?.det())
    }
}

/// Transforms `g̃` along `map`: returns `Jᵀ g̃(map(p)) J`, the metric the
/// transformation law induces in the source chart.
pub fn pullback_metric<T: Real>(
    g_tilde: &MetricField,
    map: &CoordinateMap,
    point: &[T],
) -> Result<SquareMatrix<T>, GeometryError> {
    let image = map.apply(point)?;
    let g_image = g_tilde.evaluate(&image)?;
    let j = map.jacobian(point)?;
    Ok(g_image.congruence(&j))
}

/// Diffeoinvariance defect of the squared arc element for displacement `v`:
/// `|g(p)(v,v) - g̃(map(p))(Jv, Jv)|`. Zero when `g` is the pullback of `g̃`.
pub fn arc_length_defect<T: Real>(
    g: &MetricField,
    g_tilde: &MetricField,
    map: &CoordinateMap,
    point: &[T],
    v: &[T],
) -> Result<T, GeometryError> {
    let g_here = g.evaluate(point)?;
    let here = quadratic_form(&g_here, v);
    let image = map.apply(point)?;
    let g_image = g_tilde.evaluate(&image)?;
    let jv = map.jacobian(point)?.mul_vec(v);
    let there = quadratic_form(&g_image, &jv);
    Ok((here - there).abs())
}

fn quadratic_form<T: Real>(m: &SquareMatrix<T>, v: &[T]) -> T {
    let mut acc = T::zero();
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            acc = acc + m.get(i, j) * v[i] * v[j];
        }
    }
    acc
}

#[cfg(test)]
mod tests;

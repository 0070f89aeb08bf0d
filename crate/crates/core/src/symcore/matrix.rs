use std::fmt;

use num_traits::Zero;

use super::context::{check_same, Ctx};
use super::linalg::QMatrix;
use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{AlgebraError, Result};

/// A `rows x cols` matrix with polynomial entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPoly {
    ctx: Ctx,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl MatrixPoly {
    pub fn new(ctx: &Ctx, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            check_same(e.ctx(), ctx)?;
        }
        Ok(MatrixPoly {
            ctx: ctx.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ctx: &Ctx, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::ShapeMismatch("ragged rows".into()));
        }
        Self::new(ctx, r, c, rows.into_iter().flatten().collect())
    }

    /// `[[a, b], [c, d]]`.
    pub fn two_by_two(a: &Polynomial, b: &Polynomial, c: &Polynomial, d: &Polynomial) -> Self {
        Self::new(a.ctx(), 2, 2, vec![a.clone(), b.clone(), c.clone(), d.clone()])
            .expect("2x2 entries share a context")
    }

    pub fn zeros(ctx: &Ctx, rows: usize, cols: usize) -> Self {
        MatrixPoly {
            ctx: ctx.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(ctx);
        }
        m
    }

    pub fn from_rational(ctx: &Ctx, m: &QMatrix) -> Self {
        MatrixPoly {
            ctx: ctx.clone(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .entries()
                .iter()
                .map(|c| Polynomial::constant(ctx, c.clone()))
                .collect(),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        check_same(&self.ctx, &other.ctx)?;
        if self.cols != other.rows {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ctx);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc + a * b;
                }
                entries.push(acc);
            }
        }
        Ok(MatrixPoly {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    fn zip(&self, other: &MatrixPoly, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Result<MatrixPoly> {
        check_same(&self.ctx, &other.ctx)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::ShapeMismatch("entrywise operands differ in shape".into()));
        }
        Ok(MatrixPoly {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Polynomial) -> MatrixPoly {
        self.map(|e| e * c)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> MatrixPoly {
        let entries: Vec<Polynomial> = self.entries.iter().map(f).collect();
        let ctx = entries.first().map_or(self.ctx.clone(), |e| e.ctx().clone());
        MatrixPoly {
            ctx,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn trace(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(AlgebraError::ShapeMismatch("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).fold(Polynomial::zero(&self.ctx), |acc, i| acc + self.get(i, i)))
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(AlgebraError::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.minor_det(&idx, &idx))
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        match rows.len() {
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                self.get(rows[0], cols[0]) * self.get(rows[1], cols[1])
                    - self.get(rows[0], cols[1]) * self.get(rows[1], cols[0])
            }
            _ => {
                let mut acc = Polynomial::zero(&self.ctx);
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a * &self.minor_det(&rows[1..], &sub_cols);
                    acc = if k % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    /// Classical adjugate, so that `A * adj(A) = det(A) * Id`.
    pub fn adjugate(&self) -> Result<MatrixPoly> {
        if self.rows != self.cols {
            return Err(AlgebraError::ShapeMismatch("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(&self.ctx, 1));
        }
        let mut entries = vec![Polynomial::zero(&self.ctx); n * n];
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let m = self.minor_det(&rows, &cols);
                // adj[j][i] = (-1)^{i+j} M_{ij}
                entries[j * n + i] = if (i + j) % 2 == 0 { m } else { -m };
            }
        }
        Ok(MatrixPoly {
            ctx: self.ctx.clone(),
            rows: n,
            cols: n,
            entries,
        })
    }

    /// Numeric value at a point of the entry ring.
    pub fn eval(&self, point: &[Rational]) -> Result<QMatrix> {
        let data = self
            .entries
            .iter()
            .map(|e| e.eval(point))
            .collect::<Result<Vec<_>>>()?;
        QMatrix::new(self.rows, self.cols, data)
    }

    /// The constant matrix, when every entry is constant.
    pub fn to_rational(&self) -> Option<QMatrix> {
        let data = self
            .entries
            .iter()
            .map(Polynomial::constant_value)
            .collect::<Option<Vec<_>>>()?;
        QMatrix::new(self.rows, self.cols, data).ok()
    }

    pub fn embed(&self, target: &Ctx) -> Result<MatrixPoly> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(target))
            .collect::<Result<Vec<_>>>()?;
        MatrixPoly::new(target, self.rows, self.cols, entries)
    }
}

impl fmt::Display for MatrixPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Evaluates `p` with each variable replaced by the matching square matrix.
/// Each monomial is expanded left to right in context order, so the images
/// need not commute; callers that need a ring homomorphism check that
/// themselves.
pub fn evaluate_matrix_hom(images: &[MatrixPoly], p: &Polynomial) -> Result<MatrixPoly> {
    let n = p.ctx().len();
    if images.len() != n {
        return Err(AlgebraError::ShapeMismatch(format!(
            "{} matrix images for {n} variables",
            images.len()
        )));
    }
    let Some(first) = images.first() else {
        return Err(AlgebraError::Unsupported(
            "matrix evaluation needs at least one variable; use a 1-variable ring".into(),
        ));
    };
    let size = first.rows();
    let ctx = first.ctx().clone();
    for m in images {
        if m.rows() != size || m.cols() != size {
            return Err(AlgebraError::ShapeMismatch("images must be square of equal size".into()));
        }
        check_same(m.ctx(), &ctx)?;
    }
    let mut powers: Vec<Vec<MatrixPoly>> = images
        .iter()
        .map(|m| vec![MatrixPoly::identity(&ctx, size), m.clone()])
        .collect();
    let mut acc = MatrixPoly::zeros(&ctx, size, size);
    for (mono, c) in p.terms() {
        if c.is_zero() {
            continue;
        }
        let mut t = MatrixPoly::identity(&ctx, size);
        for (i, e) in mono.support() {
            let e = e as usize;
            while powers[i].len() <= e {
                let next = powers[i].last().unwrap().mul(&images[i])?;
                powers[i].push(next);
            }
            t = t.mul(&powers[i][e])?;
        }
        acc = acc.add(&t.scale(&Polynomial::constant(&ctx, c.clone())))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::poly::PolyRing;

    #[test]
    fn probe_matrix_product() {
        let r = PolyRing::new(["a1", "a2", "d1", "d2", "b1", "b2", "e1", "e2"]).unwrap();
        let v = |n: &str| r.var(n);
        let a = MatrixPoly::two_by_two(&v("a1"), &v("d1"), &v("a2"), &v("d2"));
        let b = MatrixPoly::two_by_two(&v("b1"), &v("b2"), &v("e1"), &v("e2"));
        let ab = a.mul(&b).unwrap();
        assert_eq!(*ab.get(0, 0), v("a1") * v("b1") + v("d1") * v("e1"));
        assert_eq!(*ab.get(0, 1), v("a1") * v("b2") + v("d1") * v("e2"));
        assert_eq!(*ab.get(1, 0), v("a2") * v("b1") + v("d2") * v("e1"));
        assert_eq!(*ab.get(1, 1), v("a2") * v("b2") + v("d2") * v("e2"));
        assert_eq!(a.det().unwrap(), v("a1") * v("d2") - v("a2") * v("d1"));
        // det(AB) = det(A) det(B)
        assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn upper_triangular_trace() {
        let r = PolyRing::new(["a", "e"]).unwrap();
        let m = MatrixPoly::two_by_two(&r.var("a"), &r.var("e"), &r.zero(), &r.var("a"));
        assert_eq!(m.trace().unwrap(), r.int(2) * r.var("a"));
    }

    #[test]
    fn adjugate_identity() {
        let r = PolyRing::new(["x", "y", "z"]).unwrap();
        let (x, y, z) = (r.var("x"), r.var("y"), r.var("z"));
        let m = MatrixPoly::from_rows(
            r.ctx(),
            vec![
                vec![x.clone(), y.clone(), r.one()],
                vec![z.clone(), r.int(2), x.clone()],
                vec![r.zero(), y.clone(), z.clone()],
            ],
        )
        .unwrap();
        let prod = m.mul(&m.adjugate().unwrap()).unwrap();
        let expected = MatrixPoly::identity(r.ctx(), 3).scale(&m.det().unwrap());
        assert_eq!(prod, expected);
    }

    #[test]
    fn matrix_hom_on_diagonal_images() {
        let z = PolyRing::new(["z1", "z2", "z3", "z4"]).unwrap();
        let c = PolyRing::new(["c1", "c2", "c3", "c4"]).unwrap();
        let f = z.var("z1") * z.var("z2") - z.var("z3") * z.var("z4");
        let images: Vec<MatrixPoly> = ["c1", "c2", "c3", "c4"]
            .iter()
            .map(|n| MatrixPoly::two_by_two(&c.var(n), &c.zero(), &c.zero(), &c.zero()))
            .collect();
        let out = evaluate_matrix_hom(&images, &f).unwrap();
        let expected = c.var("c1") * c.var("c2") - c.var("c3") * c.var("c4");
        assert_eq!(*out.get(0, 0), expected);
        assert!(out.get(0, 1).is_zero() && out.get(1, 0).is_zero() && out.get(1, 1).is_zero());
    }

    #[test]
    fn unit_maps_to_identity() {
        let z = PolyRing::new(["z"]).unwrap();
        let c = PolyRing::new(["c"]).unwrap();
        let img = MatrixPoly::two_by_two(&c.var("c"), &c.one(), &c.zero(), &c.var("c"));
        let out = evaluate_matrix_hom(&[img], &z.one()).unwrap();
        assert_eq!(out, MatrixPoly::identity(c.ctx(), 2));
    }

    #[test]
    fn shape_errors() {
        let r = PolyRing::new(["x"]).unwrap();
        let a = MatrixPoly::zeros(r.ctx(), 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.det().is_err());
        assert!(a.trace().is_err());
    }
}

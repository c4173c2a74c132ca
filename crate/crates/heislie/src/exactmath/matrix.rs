use super::scalar::Scalar;
use std::fmt;

/// Dense matrix over Q(i, sqrt2) with exact Gaussian elimination.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = ExactMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == nc));
        ExactMatrix {
            rows: nr,
            cols: nc,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn matmul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows);
        ExactMatrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                acc += &(self.get(r, k) * rhs.get(k, c));
            }
            acc
        })
    }

    pub fn matvec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    acc += &(self.get(r, k) * &v[k]);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + rhs.get(r, c))
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) - rhs.get(r, c))
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * s)
    }

    pub fn neg(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| -self.get(r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Reduced row echelon form; returns (rref, pivot column per pivot row).
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // Find a nonzero pivot in this column.
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let a = m.get(row, c).clone();
                    let b = m.get(p, c).clone();
                    m.set(row, c, b);
                    m.set(p, c, a);
                }
            }
            let inv = m.get(row, col).inv();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &(m.get(row, c) * &f);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Particular solution of A x = b, if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (rr, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = rr.get(prow, self.cols).clone();
        }
        debug_assert!(self
            .matvec(&x)
            .iter()
            .zip(b)
            .all(|(l, r)| (l - r).is_zero()));
        Some(x)
    }

    /// Basis of the kernel of A.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (rr, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[fc] = Scalar::one();
                for (prow, &pcol) in pivots.iter().enumerate() {
                    v[pcol] = -rr.get(prow, fc);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let (rr, pivots) = aug.rref();
        if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        Some(ExactMatrix::from_fn(n, n, |r, c| rr.get(r, n + c).clone()))
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                for c in 0..n {
                    let a = m.get(col, c).clone();
                    let b = m.get(p, c).clone();
                    m.set(col, c, b);
                    m.set(p, c, a);
                }
                det = -det;
            }
            det *= m.get(col, col);
            let inv = m.get(col, col).inv();
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col) * &inv;
                for c in col..n {
                    let v = m.get(r, c) - &(m.get(col, c) * &f);
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Exact positive-definiteness test for a real symmetric matrix via
    /// leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        for k in 1..=self.rows {
            let minor = ExactMatrix::from_fn(k, k, |r, c| self.get(r, c).clone());
            let d = minor.det();
            if !d.is_real() || d.real_sign() <= 0 {
                return false;
            }
        }
        true
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Precomputed inverse for repeated change-of-basis solves against a fixed
/// invertible square matrix.
pub struct Solver {
    inv: ExactMatrix,
}

impl Solver {
    pub fn new(a: &ExactMatrix) -> Option<Solver> {
        a.inverse().map(|inv| Solver { inv })
    }

    pub fn solve(&self, b: &[Scalar]) -> Vec<Scalar> {
        self.inv.matvec(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve() {
        let a = ExactMatrix::identity(3);
        let b = vec![Scalar::one(), Scalar::zero(), Scalar::zero()];
        assert_eq!(a.solve(&b).unwrap(), b);
    }

    #[test]
    fn symplectic_dual_column() {
        // omega = [[0,1],[-1,0]]; solve omega^T x = e1 -> x = (0, -1)?
        let a = ExactMatrix::from_rows(vec![
            vec![Scalar::zero(), Scalar::from_int(-1)],
            vec![Scalar::one(), Scalar::zero()],
        ]);
        let x = a.solve(&[Scalar::one(), Scalar::zero()]).unwrap();
        assert_eq!(x, vec![Scalar::zero(), Scalar::from_int(-1)]);
    }

    #[test]
    fn kernel_dimension() {
        let a = ExactMatrix::from_rows(vec![
            vec![Scalar::one(), Scalar::from_int(2), Scalar::from_int(3)],
            vec![Scalar::from_int(2), Scalar::from_int(4), Scalar::from_int(6)],
        ]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(a.matvec(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn det_and_inverse() {
        let a = ExactMatrix::from_rows(vec![
            vec![Scalar::one(), Scalar::sqrt2()],
            vec![Scalar::i(), Scalar::from_int(3)],
        ]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), ExactMatrix::identity(2));
        assert_eq!(a.det(), Scalar::from_int(3) - Scalar::i() * Scalar::sqrt2());
    }

    #[test]
    fn positive_definite() {
        let g = ExactMatrix::from_rows(vec![
            vec![Scalar::from_int(2), Scalar::one()],
            vec![Scalar::one(), Scalar::from_int(2)],
        ]);
        assert!(g.is_positive_definite());
        let h = ExactMatrix::from_rows(vec![
            vec![Scalar::one(), Scalar::from_int(2)],
            vec![Scalar::from_int(2), Scalar::one()],
        ]);
        assert!(!h.is_positive_definite());
    }
}

use crate::C64;

/// Small dense complex matrix, row-major. Sized for unitary extraction of
/// modest registers and for test oracles; not a linear-algebra library.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix { dim, data: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "ragged rows");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, *v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    /// max |entry - identity entry|; the unitarity check is
    /// `m.dagger().mul(&m).max_deviation_from_identity()`.
    pub fn max_deviation_from_identity(&self) -> f64 {
        let mut max = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let expect = if r == c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                max = max.max((self.get(r, c) - expect).norm());
            }
        }
        max
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        let mut max = 0.0f64;
        for i in 0..self.data.len() {
            max = max.max((self.data[i] - other.data[i]).norm());
        }
        max
    }

    /// max |self - e^{iγ}·other| minimized over the global phase γ, using the
    /// largest entry of `other` as phase reference.
    pub fn max_abs_diff_up_to_phase(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        let mut ref_idx = 0;
        let mut best = 0.0;
        for (i, v) in other.data.iter().enumerate() {
            if v.norm() > best {
                best = v.norm();
                ref_idx = i;
            }
        }
        if best == 0.0 {
            return self.max_abs_diff(other);
        }
        let phase = self.data[ref_idx] / other.data[ref_idx];
        let phase = if phase.norm() == 0.0 { C64::new(1.0, 0.0) } else { phase / phase.norm() };
        let mut max = 0.0f64;
        for i in 0..self.data.len() {
            max = max.max((self.data[i] - phase * other.data[i]).norm());
        }
        max
    }
}

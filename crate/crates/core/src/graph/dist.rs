/// Hop distance or distance estimate.
pub type Dist = u32;

/// Unreachable / unknown. Any sum involving `INF` is `INF`.
pub const INF: Dist = Dist::MAX;

/// Saturating distance addition; `INF` absorbs.
#[inline]
pub fn dist_add(a: Dist, b: Dist) -> Dist {
    if a == INF || b == INF {
        INF
    } else {
        a.saturating_add(b)
    }
}

/// Rectangular table of distances with labelled rows and columns.
///
/// Rows and columns are labelled by vertex ids; the labels of a `V x V`
/// matrix are `0..n`, so entry `(u, v)` is at index `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
    data: Vec<Dist>,
}

impl DistanceMatrix {
    pub fn filled(row_labels: Vec<usize>, col_labels: Vec<usize>, value: Dist) -> Self {
        let len = row_labels.len() * col_labels.len();
        DistanceMatrix {
            row_labels,
            col_labels,
            data: vec![value; len],
        }
    }

    /// `n x n` matrix over `0..n` with every entry `INF`.
    pub fn square_inf(n: usize) -> Self {
        Self::filled((0..n).collect(), (0..n).collect(), INF)
    }

    pub fn from_rows(row_labels: Vec<usize>, col_labels: Vec<usize>, data: Vec<Dist>) -> Self {
        assert_eq!(data.len(), row_labels.len() * col_labels.len());
        DistanceMatrix {
            row_labels,
            col_labels,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[usize] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[usize] {
        &self.col_labels
    }

    pub fn is_square_over_vertices(&self) -> bool {
        let n = self.nrows();
        self.ncols() == n
            && self.row_labels.iter().copied().eq(0..n)
            && self.col_labels.iter().copied().eq(0..n)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Dist {
        self.data[r * self.ncols() + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: Dist) {
        let nc = self.ncols();
        self.data[r * nc + c] = value;
    }

    #[inline]
    pub fn lower(&mut self, r: usize, c: usize, value: Dist) {
        let nc = self.ncols();
        let slot = &mut self.data[r * nc + c];
        if value < *slot {
            *slot = value;
        }
    }

    pub fn row(&self, r: usize) -> &[Dist] {
        let nc = self.ncols();
        &self.data[r * nc..(r + 1) * nc]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Dist] {
        let nc = self.ncols();
        &mut self.data[r * nc..(r + 1) * nc]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Dist]> {
        self.data.chunks(self.ncols().max(1)).take(self.nrows())
    }

    pub fn entries(&self) -> &[Dist] {
        &self.data
    }

    pub fn transpose(&self) -> DistanceMatrix {
        let (nr, nc) = (self.nrows(), self.ncols());
        let mut data = vec![INF; nr * nc];
        for r in 0..nr {
            for c in 0..nc {
                data[c * nr + r] = self.data[r * nc + c];
            }
        }
        DistanceMatrix {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            data,
        }
    }

    /// Entrywise minimum with another matrix of the same shape and labels.
    pub fn min_assign(&mut self, other: &DistanceMatrix) {
        assert_eq!(self.row_labels, other.row_labels);
        assert_eq!(self.col_labels, other.col_labels);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = (*a).min(b);
        }
    }

    /// For a square vertex matrix: `(u, v) <- min((u, v), (v, u))`.
    pub fn symmetrize_min(&mut self) {
        let n = self.nrows();
        assert_eq!(n, self.ncols());
        for u in 0..n {
            for v in u + 1..n {
                let m = self.get(u, v).min(self.get(v, u));
                self.set(u, v, m);
                self.set(v, u, m);
            }
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.nrows();
        n == self.ncols() && (0..n).all(|u| (u + 1..n).all(|v| self.get(u, v) == self.get(v, u)))
    }

    pub fn set_diagonal_zero(&mut self) {
        let n = self.nrows().min(self.ncols());
        for v in 0..n {
            self.set(v, v, 0);
        }
    }
}

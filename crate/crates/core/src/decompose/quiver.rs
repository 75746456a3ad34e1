//! Linear and cyclic quiver representations with one map per arc.

use num_traits::{One, Zero};

use crate::exactalg::{graded_jordan_chains, rational_canonical, solve_linear, AlgError, RatMatrix, RatPoly, Rational};

use super::IndecompDescriptor;

/// Positions `0..dims.len()`. A linear quiver has arcs `k -> k + 1`; a
/// cyclic one also has the arc from the last position back to the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QuiverRep {
    pub dims: Vec<usize>,
    pub maps: Vec<RatMatrix>,
    pub cyclic: bool,
}

impl QuiverRep {
    pub fn zero(positions: usize, cyclic: bool) -> Self {
        let arcs = if cyclic { positions } else { positions.saturating_sub(1) };
        QuiverRep {
            dims: vec![0; positions],
            maps: vec![RatMatrix::zeros(0, 0); arcs],
            cyclic,
        }
    }

    fn target(&self, k: usize) -> usize {
        (k + 1) % self.dims.len()
    }

    pub fn direct_sum(&self, other: &QuiverRep) -> QuiverRep {
        QuiverRep {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| RatMatrix::block_diag(&[a, b]))
                .collect(),
            cyclic: self.cyclic,
        }
    }

    /// Composite of the arcs from position `a` to position `b`, `a <= b`.
    fn linear_composites(&self, a: usize) -> Vec<RatMatrix> {
        let mut out = vec![RatMatrix::identity(self.dims[a])];
        for k in a..self.maps.len() {
            let next = &self.maps[k] * out.last().unwrap();
            out.push(next);
        }
        out
    }

    /// Interval multiplicities of a linear quiver by rank inclusion-exclusion.
    pub fn intervals(&self) -> Vec<IndecompDescriptor> {
        let m = self.dims.len();
        // r[a][b] for 0 <= a <= b < m
        let r: Vec<Vec<usize>> = (0..m)
            .map(|a| {
                let comps = self.linear_composites(a);
                let mut row = vec![0; m];
                for (l, c) in comps.iter().enumerate() {
                    row[a + l] = c.rank();
                }
                row
            })
            .collect();
        let rank = |a: isize, b: usize| -> isize {
            if a < 0 || b >= m {
                0
            } else {
                r[a as usize][b] as isize
            }
        };
        let mut out = Vec::new();
        for a in 0..m {
            for b in a..m {
                let ai = a as isize;
                let mult = rank(ai, b) - rank(ai - 1, b) - rank(ai, b + 1) + rank(ai - 1, b + 1);
                for _ in 0..mult.max(0) {
                    out.push(IndecompDescriptor::Interval { a: a + 1, b: b + 1 });
                }
            }
        }
        out
    }

    /// Composite once around the cycle starting and ending at position `i`.
    fn monodromy_at(&self, i: usize) -> RatMatrix {
        let n = self.dims.len();
        let mut acc = RatMatrix::identity(self.dims[i]);
        for step in 0..n {
            acc = &self.maps[(i + step) % n] * &acc;
        }
        acc
    }

    /// Bands from the invertible part of the monodromy, strings from the
    /// graded nilpotent part.
    pub fn cyclic_blocks(&self) -> Result<Vec<IndecompDescriptor>, AlgError> {
        let n = self.dims.len();
        let mut out = Vec::new();
        for div in rational_canonical(&self.monodromy_at(0))? {
            if div.poly != RatPoly::x() {
                out.push(IndecompDescriptor::Band {
                    poly: div.poly,
                    power: div.power,
                });
            }
        }
        // generalized kernels and their coordinates
        let kernels: Vec<RatMatrix> = (0..n)
            .map(|i| {
                let l = self.monodromy_at(i).pow(self.dims[i]);
                let basis = l.nullspace();
                RatMatrix::from_columns(self.dims[i], &basis)
            })
            .collect();
        if kernels.iter().all(|k| k.cols() == 0) {
            return Ok(out);
        }
        let mut blocks = Vec::with_capacity(n);
        for i in 0..n {
            let j = self.target(i);
            let image = &self.maps[i] * &kernels[i];
            let coords = if kernels[j].cols() == 0 || image.cols() == 0 {
                RatMatrix::zeros(kernels[j].cols(), kernels[i].cols())
            } else {
                solve_linear(&kernels[j], &image)
                    .expect("generalized kernels are preserved")
                    .particular
            };
            blocks.push(coords);
        }
        for chain in graded_jordan_chains(&blocks)? {
            out.push(IndecompDescriptor::String {
                start: chain.start_grade,
                len: chain.len(),
            });
        }
        Ok(out)
    }
}

/// Representation of one indecomposable on a quiver with `positions`
/// positions. The descriptor must already fit the quiver type.
pub(crate) fn realize_block(desc: &IndecompDescriptor, positions: usize, cyclic: bool) -> QuiverRep {
    let mut q = QuiverRep::zero(positions, cyclic);
    match desc {
        IndecompDescriptor::Interval { a, b } => {
            for k in 0..positions {
                q.dims[k] = usize::from(*a <= k + 1 && k < *b);
            }
            for k in 0..q.maps.len() {
                let t = q.target(k);
                let mut m = RatMatrix::zeros(q.dims[t], q.dims[k]);
                if q.dims[k] == 1 && q.dims[t] == 1 && t > k {
                    m.set(0, 0, Rational::one());
                }
                q.maps[k] = m;
            }
        }
        IndecompDescriptor::Band { poly, power } => {
            let d = poly.degree().unwrap_or(0) * power;
            q.dims = vec![d; positions];
            for k in 0..positions {
                q.maps[k] = if k == 0 {
                    poly.pow(*power).companion()
                } else {
                    RatMatrix::identity(d)
                };
            }
        }
        IndecompDescriptor::String { start, len } => {
            // basis vector k sits in grade (start - 1 + k) mod positions
            let grade = |k: usize| (start - 1 + k) % positions;
            let index: Vec<usize> = (0..*len)
                .map(|k| {
                    let g = grade(k);
                    q.dims[g] += 1;
                    q.dims[g] - 1
                })
                .collect();
            for k in 0..positions {
                q.maps[k] = RatMatrix::zeros(q.dims[q.target(k)], q.dims[k]);
            }
            for k in 0..len.saturating_sub(1) {
                let g = grade(k);
                q.maps[g].set(index[k + 1], index[k], Rational::one());
            }
        }
    }
    q
}

/// Dimension at every position of the realized block.
pub(crate) fn block_dims(desc: &IndecompDescriptor, positions: usize) -> Vec<usize> {
    match desc {
        IndecompDescriptor::Interval { a, b } => (1..=positions).map(|k| usize::from(*a <= k && k <= *b)).collect(),
        IndecompDescriptor::Band { poly, power } => {
            vec![poly.degree().unwrap_or(0) * power; positions]
        }
        IndecompDescriptor::String { start, len } => {
            let mut dims = vec![0; positions];
            for k in 0..*len {
                dims[(start - 1 + k) % positions] += 1;
            }
            dims
        }
    }
}

/// True iff `p` is monic, irreducible and does not vanish at zero.
pub(crate) fn is_band_poly(p: &RatPoly) -> bool {
    if !p.is_monic() || p.degree().unwrap_or(0) == 0 || p.coeff(0).is_zero() {
        return false;
    }
    matches!(crate::exactalg::factor_poly(p).as_deref(), Ok([(q, 1)]) if q == p)
}

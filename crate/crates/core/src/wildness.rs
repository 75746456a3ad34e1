//! Needle and figure-eight representations built from pairs of matrices,
//! and isomorphisms between them from simultaneous similarities.

use num_traits::{One, Zero};
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::exactalg::{rat, RatMatrix, Rational};
use crate::representation::{RepError, Representation, WireMaps};
use crate::semigraph::shapes;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WildError {
    #[error("matrix pair must be two square matrices of equal size, got {0:?} and {1:?}")]
    BadPair((usize, usize), (usize, usize)),
    #[error("P does not conjugate the first pair to the second")]
    NotASimilarity,
    #[error("expected {expected} matrices, got {got}")]
    TupleLength { expected: usize, got: usize },
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Two `n × n` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPair {
    pub a: RatMatrix,
    pub b: RatMatrix,
}

impl MatrixPair {
    pub fn new(a: RatMatrix, b: RatMatrix) -> Result<Self, WildError> {
        if !a.is_square() || a.shape() != b.shape() {
            return Err(WildError::BadPair(a.shape(), b.shape()));
        }
        Ok(MatrixPair { a, b })
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// `(P A P⁻¹, P B P⁻¹)`.
    pub fn conjugate(&self, p: &RatMatrix) -> Option<MatrixPair> {
        let inv = p.inverse()?;
        Some(MatrixPair {
            a: &(p * &self.a) * &inv,
            b: &(p * &self.b) * &inv,
        })
    }
}

/// `(X1 ⊕ C1, X2 ⊕ C2(A, B))`, both `6n × 6n`.
pub fn build_y_pair(p: &MatrixPair) -> (RatMatrix, RatMatrix) {
    let n = p.n();
    let id = RatMatrix::identity(n);
    let mut x1 = RatMatrix::zeros(2 * n, 2 * n);
    x1.set_block(0, 0, &id);
    let mut x2 = RatMatrix::zeros(2 * n, 2 * n);
    x2.set_block(n, n, &id);
    let mut c1 = RatMatrix::zeros(4 * n, 4 * n);
    for k in 0..3 {
        c1.set_block((k + 1) * n, k * n, &id);
    }
    let mut c2 = RatMatrix::zeros(4 * n, 4 * n);
    c2.set_block(2 * n, 0, &p.a);
    c2.set_block(3 * n, n, &p.b);
    (
        RatMatrix::block_diag(&[&x1, &c1]),
        RatMatrix::block_diag(&[&x2, &c2]),
    )
}

/// Needle representation `Σ M_i ⊗ u_i`: loop `e1` of dimension `m`, dangling
/// `e2` of dimension `ms.len()`.
pub fn needle_rep_from_tuple(ms: &[RatMatrix]) -> Result<Representation, WildError> {
    let d2 = ms.len();
    let m = ms.first().map_or(0, RatMatrix::rows);
    // rows (e1, e2) with e1 slowest, columns e1
    let t = RatMatrix::from_fn(m * d2, m, |r, c| ms[r % d2].get(r / d2, c).clone());
    let dims = [("e1".to_string(), m), ("e2".to_string(), d2)].into();
    Ok(Representation::new(shapes::needle(), dims, [("v1".to_string(), t)].into())?)
}

/// Inverse of [`needle_rep_from_tuple`].
pub fn needle_tuple(r: &Representation) -> Vec<RatMatrix> {
    let (m, d2) = (r.dim("e1"), r.dim("e2"));
    let t = r.tensor("v1");
    (0..d2)
        .map(|i| RatMatrix::from_fn(m, m, |a, b| t.get(a * d2 + i, b).clone()))
        .collect()
}

pub fn needle_rep_from_pair(p: &MatrixPair) -> Result<Representation, WildError> {
    let (y1, y2) = build_y_pair(p);
    needle_rep_from_tuple(&[y1, y2])
}

/// Figure-eight representation `Σ_k M_k ⊗ E_k` with `E_k` the matrix units
/// of the second loop in row-major order.
pub fn eight_rep_from_tuple(ms: &[RatMatrix], d2: usize) -> Result<Representation, WildError> {
    if ms.len() != d2 * d2 {
        return Err(WildError::TupleLength {
            expected: d2 * d2,
            got: ms.len(),
        });
    }
    let m = ms.first().map_or(0, RatMatrix::rows);
    let mut t = RatMatrix::zeros(m * d2, m * d2);
    for (k, mk) in ms.iter().enumerate() {
        let mut unit = RatMatrix::zeros(d2, d2);
        unit.set(k / d2, k % d2, Rational::one());
        t = &t + &mk.kron(&unit);
    }
    let dims = [("e1".to_string(), m), ("e2".to_string(), d2)].into();
    Ok(Representation::new(shapes::figure_eight(), dims, [("v1".to_string(), t)].into())?)
}

/// Inverse of [`eight_rep_from_tuple`].
pub fn eight_tuple(r: &Representation) -> Vec<RatMatrix> {
    let (m, d2) = (r.dim("e1"), r.dim("e2"));
    let t = r.tensor("v1");
    (0..d2 * d2)
        .map(|k| {
            let (i, j) = (k / d2, k % d2);
            RatMatrix::from_fn(m, m, |a, b| t.get(a * d2 + i, b * d2 + j).clone())
        })
        .collect()
}

/// Figure eight from the tuple `(Y1, Y2, 0, 0)`.
pub fn eight_rep_from_pair(p: &MatrixPair) -> Result<Representation, WildError> {
    let (y1, y2) = build_y_pair(p);
    let z = RatMatrix::zeros(y1.rows(), y1.cols());
    eight_rep_from_tuple(&[y1, y2, z.clone(), z], 2)
}

/// `g ⊗ (g⁻¹)ᵀ`.
pub fn h_matrix(g: &RatMatrix) -> Option<RatMatrix> {
    Some(g.kron(&g.inverse()?.transpose()))
}

/// `M'_k = Σ_j M_j h_{jk}`.
pub fn mix_tuple(ms: &[RatMatrix], h: &RatMatrix) -> Vec<RatMatrix> {
    (0..h.cols())
        .map(|k| {
            ms.iter().enumerate().fold(
                RatMatrix::zeros(ms[0].rows(), ms[0].cols()),
                |acc, (j, mj)| &acc + &mj.scale(h.get(j, k)),
            )
        })
        .collect()
}

/// Group element `I_6 ⊗ P` on the loop and the identity on the dangling
/// wire, provided `P` conjugates `p1` to `p2`.
pub fn iso_from_similarity(
    p: &RatMatrix,
    p1: &MatrixPair,
    p2: &MatrixPair,
) -> Result<WireMaps, WildError> {
    let n = p1.n();
    if p.shape() != (n, n)
        || p2.n() != n
        || p.determinant().is_zero()
        || p * &p1.a != &p2.a * p
        || p * &p1.b != &p2.b * p
    {
        return Err(WildError::NotASimilarity);
    }
    Ok([
        ("e1".to_string(), RatMatrix::identity(6).kron(p)),
        ("e2".to_string(), RatMatrix::identity(2)),
    ]
    .into())
}

const SOLVE_SEED: u64 = 0x7369_6d5f_736f_6c76;
const SOLVE_ATTEMPTS: usize = 64;

/// An invertible `P` with `P A1 = A2 P` and `P B1 = B2 P`, searched in the
/// solution space of the linear system. `None` if the pairs have different
/// sizes, the space is zero, or no invertible element was found.
pub fn sim_similarity_solve(p1: &MatrixPair, p2: &MatrixPair) -> Option<RatMatrix> {
    let n = p1.n();
    if p2.n() != n {
        return None;
    }
    // unknowns P[i][k] at i * n + k
    let mut sys = RatMatrix::zeros(2 * n * n, n * n);
    for (block, (x1, x2)) in [(&p1.a, &p2.a), (&p1.b, &p2.b)].into_iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = block * n * n + i * n + j;
                for k in 0..n {
                    let pk = sys.get(row, i * n + k) + x1.get(k, j);
                    sys.set(row, i * n + k, pk);
                    let qk = sys.get(row, k * n + j) - x2.get(i, k);
                    sys.set(row, k * n + j, qk);
                }
            }
        }
    }
    let basis = sys.nullspace();
    if basis.is_empty() {
        return None;
    }
    let as_matrix = |v: &[Rational]| RatMatrix::from_vec(n, n, v.to_vec());
    for v in &basis {
        let m = as_matrix(v);
        if !m.determinant().is_zero() {
            return Some(m);
        }
    }
    let mut rng = SplitMix64::seed_from_u64(SOLVE_SEED);
    for _ in 0..SOLVE_ATTEMPTS {
        let mut acc = vec![Rational::zero(); n * n];
        for v in &basis {
            let c = rat((rng.next_u64() % 7) as i64 - 3);
            for (a, x) in acc.iter_mut().zip(v) {
                *a += &c * x;
            }
        }
        let m = as_matrix(&acc);
        if !m.determinant().is_zero() {
            return Some(m);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows)
    }

    #[test]
    fn y_pair_for_scalars() {
        let p = MatrixPair::new(m(&[&[3]]), m(&[&[5]])).unwrap();
        let (y1, y2) = build_y_pair(&p);
        let mut e1 = RatMatrix::zeros(6, 6);
        for (i, j) in [(0, 0), (3, 2), (4, 3), (5, 4)] {
            e1.set(i, j, rat(1));
        }
        let mut e2 = RatMatrix::zeros(6, 6);
        e2.set(1, 1, rat(1));
        e2.set(4, 2, rat(3));
        e2.set(5, 3, rat(5));
        assert_eq!(y1, e1);
        assert_eq!(y2, e2);
        assert_eq!(y1.rank(), 4);
        assert_eq!((&y1.scale(&rat(2)) + &y2.scale(&rat(-7))).rank(), 5);
    }

    #[test]
    fn needle_tuple_round_trip() {
        let p = MatrixPair::new(m(&[&[1, 2], &[0, 1]]), m(&[&[0, 1], &[1, 0]])).unwrap();
        let r = needle_rep_from_pair(&p).unwrap();
        assert_eq!(r.tensor("v1").shape(), (24, 12));
        let (y1, y2) = build_y_pair(&p);
        assert_eq!(needle_tuple(&r), vec![y1, y2]);
    }

    #[test]
    fn similarity_gives_isomorphism() {
        let p1 = MatrixPair::new(m(&[&[1, 2], &[3, 4]]), m(&[&[0, 1], &[1, 1]])).unwrap();
        let pm = m(&[&[2, 1], &[1, 1]]);
        let p2 = p1.conjugate(&pm).unwrap();
        let g = iso_from_similarity(&pm, &p1, &p2).unwrap();
        let r1 = needle_rep_from_pair(&p1).unwrap();
        let r2 = needle_rep_from_pair(&p2).unwrap();
        assert_eq!(r1.apply_group_element(&g).unwrap(), r2);
        let found = sim_similarity_solve(&p1, &p2).unwrap();
        assert!(iso_from_similarity(&found, &p1, &p2).is_ok());
        assert_eq!(
            iso_from_similarity(&RatMatrix::identity(2), &p1, &p2),
            Err(WildError::NotASimilarity)
        );
    }

    #[test]
    fn trace_obstruction() {
        let p1 = MatrixPair::new(m(&[&[0]]), m(&[&[0]])).unwrap();
        let p2 = MatrixPair::new(m(&[&[1]]), m(&[&[0]])).unwrap();
        assert_eq!(sim_similarity_solve(&p1, &p2), None);
        assert!(sim_similarity_solve(&p1, &p1).is_some());
    }

    #[test]
    fn eight_mixing() {
        let ms: Vec<RatMatrix> = (0..4).map(|k| m(&[&[k, 1], &[2, -k]])).collect();
        let r = eight_rep_from_tuple(&ms, 2).unwrap();
        assert_eq!(eight_tuple(&r), ms);
        let g = m(&[&[1, 2], &[1, 3]]);
        let acted = r
            .apply_group_element(&[("e1".into(), RatMatrix::identity(2)), ("e2".into(), g.transpose())].into())
            .unwrap();
        assert_eq!(eight_tuple(&acted), mix_tuple(&ms, &h_matrix(&g).unwrap()));
    }
}

use super::matrix::{EchelonBasis, RatMatrix};
use super::rational::Rational;
use super::AlgError;

/// A homogeneous Jordan chain `x_0, N x_0, ..., N^(len-1) x_0` for a cyclically
/// graded nilpotent operator. `start_grade` is 1-based; vector `k` lives in
/// grade `start_grade + k` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedChain {
    pub start_grade: usize,
    pub vectors: Vec<Vec<Rational>>,
}

impl GradedChain {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// 1-based grade of the `k`-th vector on a cycle of `n` grades.
    pub fn grade_of(&self, k: usize, n: usize) -> usize {
        (self.start_grade - 1 + k) % n + 1
    }
}

/// Jordan chains for `N = ⊕ N_i` with `N_i : V_i → V_{i+1 mod n}`.
///
/// `blocks[i]` has shape `dim V_{i+1} × dim V_i`. The chains' vectors form a
/// basis of `⊕ V_i`, longest chains first.
pub fn graded_jordan_chains(blocks: &[RatMatrix]) -> Result<Vec<GradedChain>, AlgError> {
    let n = blocks.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    for i in 0..n {
        let next = &blocks[(i + 1) % n];
        if blocks[i].rows() != next.cols() {
            return Err(AlgError::ShapeMismatch(format!(
                "block {} has {} rows but block {} has {} columns",
                i + 1,
                blocks[i].rows(),
                (i + 1) % n + 1,
                next.cols()
            )));
        }
    }
    let dims: Vec<usize> = blocks.iter().map(RatMatrix::cols).collect();
    let total: usize = dims.iter().sum();

    // composites[a][l] = N^l restricted to V_a
    let mut composites: Vec<Vec<RatMatrix>> = Vec::with_capacity(n);
    for (a, &dim) in dims.iter().enumerate() {
        let mut list = vec![RatMatrix::identity(dim)];
        for l in 0..total {
            let grade = (a + l) % n;
            let next = &blocks[grade] * &list[l];
            list.push(next);
        }
        if !list[total].is_zero() {
            return Err(AlgError::NotNilpotent);
        }
        composites.push(list);
    }

    let mut chains: Vec<GradedChain> = Vec::new();
    for l in (1..=total).rev() {
        for a in 0..n {
            if dims[a] == 0 {
                continue;
            }
            let mut basis = EchelonBasis::new();
            for v in composites[a][l - 1].nullspace() {
                basis.insert(&v);
            }
            // vectors of existing chains sitting in grade a with height exactly l
            for chain in &chains {
                let len = chain.len();
                if len <= l {
                    continue;
                }
                let k = len - l;
                if chain.grade_of(k, n) == a + 1 {
                    basis.insert(&chain.vectors[k]);
                }
            }
            for v in composites[a][l].nullspace() {
                if basis.insert(&v) {
                    let mut vectors = vec![v];
                    for k in 1..l {
                        let grade = (a + k - 1) % n;
                        let next = blocks[grade].mul_vec(&vectors[k - 1]);
                        vectors.push(next);
                    }
                    chains.push(GradedChain {
                        start_grade: a + 1,
                        vectors,
                    });
                }
            }
        }
    }
    Ok(chains)
}

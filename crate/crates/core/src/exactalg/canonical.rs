use num_traits::Zero;

use super::factor::factor_poly;
use super::matrix::RatMatrix;
use super::poly::RatPoly;
use super::rational::Rational;
use super::AlgError;

/// One elementary divisor `poly^power`, `poly` monic irreducible over ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementaryDivisor {
    pub poly: RatPoly,
    pub power: usize,
}

impl ElementaryDivisor {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0) * self.power
    }

    pub fn expanded(&self) -> RatPoly {
        self.poly.pow(self.power)
    }
}

/// Characteristic polynomial `det(x I - m)` via reduction to Hessenberg form.
pub fn charpoly(m: &RatMatrix) -> Result<RatPoly, AlgError> {
    if !m.is_square() {
        return Err(AlgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut h = m.to_rows();
    for k in 0..n.saturating_sub(2) {
        let Some(p) = (k + 1..n).find(|&i| !h[i][k].is_zero()) else {
            continue;
        };
        if p != k + 1 {
            h.swap(p, k + 1);
            for row in h.iter_mut() {
                row.swap(p, k + 1);
            }
        }
        let pivot = h[k + 1][k].clone();
        for j in k + 2..n {
            if h[j][k].is_zero() {
                continue;
            }
            let f = &h[j][k] / &pivot;
            let pivot_row = h[k + 1].clone();
            for (x, y) in h[j].iter_mut().zip(&pivot_row) {
                *x -= y * &f;
            }
            for row in h.iter_mut() {
                let v = &row[j] * &f;
                row[k + 1] += v;
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
    let mut ps = vec![RatPoly::one()];
    for mm in 0..n {
        let mut next = &RatPoly::linear(h[mm][mm].clone()) * &ps[mm];
        let mut prod = Rational::from_integer(1.into());
        for i in (0..mm).rev() {
            prod *= &h[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let c = &h[i][mm] * &prod;
            next = &next - &ps[i].scale(&c);
        }
        ps.push(next);
    }
    Ok(ps.pop().unwrap())
}

/// Elementary divisors of a square matrix, with repetition, sorted.
pub fn rational_canonical(m: &RatMatrix) -> Result<Vec<ElementaryDivisor>, AlgError> {
    let cp = charpoly(m)?;
    let n = m.rows();
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    for (q, mult) in factor_poly(&cp)? {
        let dq = q.degree().unwrap_or(1);
        let qm = q.eval_matrix(m);
        let mut ranks = vec![n];
        let mut pw = RatMatrix::identity(n);
        for _ in 0..mult {
            pw = &pw * &qm;
            ranks.push(pw.rank());
        }
        // at_least[k] = number of blocks of size >= k
        let at_least: Vec<usize> = (1..=mult)
            .map(|k| (ranks[k - 1] - ranks[k]) / dq)
            .collect();
        for k in 1..=mult {
            let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            for _ in 0..exact {
                out.push(ElementaryDivisor {
                    poly: q.clone(),
                    power: k,
                });
            }
        }
    }
    out.sort_by(|a, b| a.poly.canonical_cmp(&b.poly).then(a.power.cmp(&b.power)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;
    use proptest::prelude::*;

    fn ed(p: &[i64], power: usize) -> ElementaryDivisor {
        ElementaryDivisor {
            poly: RatPoly::from_i64(p),
            power,
        }
    }

    #[test]
    fn diagonal_and_nilpotent() {
        let d = RatMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        assert_eq!(rational_canonical(&d).unwrap(), vec![ed(&[-2, 1], 1); 2]);
        let j = RatMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(rational_canonical(&j).unwrap(), vec![ed(&[0, 1], 2)]);
    }

    #[test]
    fn non_square_is_rejected() {
        let m = RatMatrix::zeros(2, 3);
        assert_eq!(
            rational_canonical(&m),
            Err(AlgError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn charpoly_matches_companion() {
        let p = RatPoly::from_i64(&[5, -1, 0, 3, 1]);
        assert_eq!(charpoly(&p.companion()).unwrap(), p);
    }

    #[test]
    fn mixed_blocks() {
        // companion(x^2+1)^2 as a single block, plus J_2(3) and a 1x1 block 3
        let q = RatPoly::from_i64(&[1, 0, 1]);
        let c = q.pow(2).companion();
        let j = RatMatrix::from_i64(&[&[3, 1], &[0, 3]]);
        let s = RatMatrix::scalar(rat(3));
        let m = RatMatrix::block_diag(&[&c, &j, &s]);
        assert_eq!(
            rational_canonical(&m).unwrap(),
            vec![ed(&[-3, 1], 1), ed(&[-3, 1], 2), ed(&[1, 0, 1], 2)]
        );
    }

    fn unit_lower_upper(l: &[i64], u: &[i64], n: usize) -> RatMatrix {
        let mut lo = RatMatrix::identity(n);
        let mut up = RatMatrix::identity(n);
        let mut k = 0;
        for i in 0..n {
            for j in 0..i {
                lo.set(i, j, rat(l[k]));
                up.set(j, i, rat(u[k]));
                k += 1;
            }
        }
        &lo * &up
    }

    proptest! {
        #[test]
        fn conjugation_invariant(
            l in proptest::collection::vec(-3i64..4, 6),
            u in proptest::collection::vec(-3i64..4, 6),
            entries in proptest::collection::vec(-2i64..3, 16),
        ) {
            let m = RatMatrix::from_fn(4, 4, |i, j| rat(entries[4 * i + j]));
            let g = unit_lower_upper(&l, &u, 4);
            let gi = g.inverse().unwrap();
            let conj = &(&g * &m) * &gi;
            let a = rational_canonical(&m).unwrap();
            prop_assert_eq!(a.iter().map(ElementaryDivisor::degree).sum::<usize>(), 4);
            prop_assert_eq!(rational_canonical(&conj).unwrap(), a);
        }
    }
}

//! Seeded random representations, group elements and sums of
//! indecomposables with their answer keys.
//!
//! All draws come from one SplitMix64 stream. Integers in `[lo, hi]` are
//! `lo + next % (hi - lo + 1)`; a rational entry draws its numerator in
//! `[-9, 9]` and then its denominator in `[1, 9]`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::classify::Shape;
use crate::decompose::{
    check_descriptor, descriptor_wire_dims, layout_of, pinned_filler, realize_sum, touches_pinned, DecompError, Decomposition,
    IndecompDescriptor,
};
use crate::exactalg::{rat, ratio, RatMatrix, RatPoly, Rational};
use crate::representation::{Dims, RepError, Representation, WireMaps};
use crate::semigraph::TensorDiagram;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid dims: {0}")]
    InvalidDims(String),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    Generic,
    /// Dims are a per-wire budget for a random sum of indecomposables.
    Sum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub rep: Representation,
    pub key: Option<Decomposition>,
}

pub struct SeededStream {
    rng: SplitMix64,
}

impl SeededStream {
    pub fn new(seed: u64) -> Self {
        SeededStream {
            rng: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform-ish integer in `[lo, hi]`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.int_in(-9, 9);
        let den = self.int_in(1, 9);
        ratio(num, den)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> RatMatrix {
        RatMatrix::from_fn(rows, cols, |_, _| self.rational())
    }

    /// `L U D` with unit triangular `L`, `U` and nonzero diagonal `D`.
    pub fn invertible(&mut self, n: usize) -> RatMatrix {
        let l = RatMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.rational(),
            std::cmp::Ordering::Equal => rat(1),
            std::cmp::Ordering::Less => rat(0),
        });
        let u = RatMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => self.rational(),
            std::cmp::Ordering::Equal => rat(1),
            std::cmp::Ordering::Greater => rat(0),
        });
        let d = RatMatrix::from_fn(n, n, |i, j| if i == j { self.nonzero_rational() } else { rat(0) });
        &(&l * &u) * &d
    }

    /// Random invertible matrix on every wire.
    pub fn group_element(&mut self, dims: &Dims) -> WireMaps {
        dims.iter().map(|(w, &d)| (w.clone(), self.invertible(d))).collect()
    }

    /// Random representation with the given dims.
    pub fn representation(&mut self, d: &TensorDiagram, dims: &Dims) -> Result<Representation, RepError> {
        let zero = Representation::zero(d, dims)?;
        let tensors: BTreeMap<String, RatMatrix> = d
            .vertices()
            .iter()
            .map(|v| {
                let (r, c) = zero.vertex_shape(v);
                (v.clone(), self.matrix(r, c))
            })
            .collect();
        Representation::new(d.clone(), dims.clone(), tensors)
    }

    /// Monic irreducible polynomial of degree 1 to 3 with integer
    /// coefficients and nonzero constant term.
    pub fn irreducible_poly(&mut self, degree: usize) -> RatPoly {
        loop {
            let mut c: Vec<i64> = (0..degree).map(|_| self.int_in(-5, 5)).collect();
            c.push(1);
            if c[0] != 0 && is_irreducible_small(&c) {
                return RatPoly::from_i64(&c);
            }
        }
    }
}

fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = (n as f64).sqrt().round() as i64;
        (r - 1..=r + 1).any(|s| s >= 0 && s * s == n)
    }
}

/// Irreducibility of a monic integer polynomial of degree at most 3:
/// no integer root for degrees 2 and 3, which with degree 2 reduces to a
/// non-square discriminant.
pub fn is_irreducible_small(c: &[i64]) -> bool {
    match c.len() - 1 {
        1 => true,
        2 => !is_square(c[1] * c[1] - 4 * c[0]),
        3 => {
            let c0 = c[0].abs();
            !(1..=c0).filter(|d| c0 % d == 0).any(|d| {
                [d, -d]
                    .iter()
                    .any(|&x| c[0] + c[1] * x + c[2] * x * x + x * x * x == 0)
            })
        }
        _ => false,
    }
}

fn check_dims(d: &TensorDiagram, dims: &Dims) -> Result<(), GenError> {
    for w in d.wires() {
        if !dims.contains_key(&w.id) {
            return Err(GenError::InvalidDims(format!("missing wire {:?}", w.id)));
        }
    }
    if let Some(extra) = dims.keys().find(|k| d.wire(k).is_none()) {
        return Err(GenError::InvalidDims(format!("unknown wire {extra:?}")));
    }
    Ok(())
}

/// Longest string drawn on loops of length `n`.
fn max_string(n: usize) -> usize {
    3 * n + 2
}

fn random_candidate(s: &mut SeededStream, shape: Shape) -> IndecompDescriptor {
    match shape {
        Shape::A0(n) | Shape::A1(n) => {
            let a = 1 + s.below(n + 1);
            let b = a + s.below(n + 2 - a);
            IndecompDescriptor::Interval { a, b }
        }
        Shape::J(n) | Shape::P(n) => {
            if s.below(2) == 0 {
                let degree = 1 + s.below(3);
                IndecompDescriptor::Band {
                    poly: s.irreducible_poly(degree),
                    power: 1 + s.below(3),
                }
            } else {
                IndecompDescriptor::String {
                    start: 1 + s.below(n),
                    len: 1 + s.below(max_string(n)),
                }
            }
        }
    }
}

/// Random sum of indecomposables within the dims budget, conjugated by a
/// random group element. Diagrams with a pinned position get exactly one
/// block through it.
fn random_sum(s: &mut SeededStream, d: &TensorDiagram, budget: &Dims) -> Result<Generated, GenError> {
    let layout = layout_of(d)?;
    let shape = layout.shape;
    let mut left: Vec<usize> = layout.wires.iter().map(|w| budget[w]).collect();
    let fits = |desc: &IndecompDescriptor, left: &[usize]| {
        check_descriptor(shape, desc).is_ok()
            && descriptor_wire_dims(shape, desc)
                .iter()
                .zip(left)
                .all(|(need, have)| need <= have)
    };
    let take = |desc: &IndecompDescriptor, left: &mut Vec<usize>| {
        for (l, need) in left.iter_mut().zip(descriptor_wire_dims(shape, desc)) {
            *l -= need;
        }
    };
    let through_pinned = |desc: &IndecompDescriptor| touches_pinned(shape, desc);

    let mut blocks = Vec::new();
    if let Some(filler) = pinned_filler(shape) {
        let mut chosen = filler;
        for _ in 0..32 {
            let c = random_candidate(s, shape);
            if fits(&c, &left) && through_pinned(&c) {
                chosen = c;
                break;
            }
        }
        take(&chosen, &mut left);
        blocks.push(chosen);
    }
    let attempts = 8 + 2 * left.iter().sum::<usize>();
    for _ in 0..attempts {
        let c = random_candidate(s, shape);
        if fits(&c, &left) && !through_pinned(&c) && pinned_filler(shape).as_ref() != Some(&c) {
            take(&c, &mut left);
            blocks.push(c);
        }
    }
    let plain = realize_sum(d, &blocks)?;
    let g = s.group_element(plain.dims());
    let rep = plain.apply_group_element(&g)?;
    Ok(Generated {
        rep,
        key: Some(Decomposition::new(shape, blocks)),
    })
}

/// Deterministic random representation from `seed`.
pub fn gen_random(d: &TensorDiagram, dims: &Dims, seed: u64, mode: GenMode) -> Result<Generated, GenError> {
    check_dims(d, dims)?;
    let mut s = SeededStream::new(seed);
    match mode {
        GenMode::Generic => Ok(Generated {
            rep: s.representation(d, dims)?,
            key: None,
        }),
        GenMode::Sum => random_sum(&mut s, d, dims),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;
    use crate::semigraph::shapes;

    fn uniform(d: &TensorDiagram, k: usize) -> Dims {
        d.wire_ids().map(|w| (w.to_string(), k)).collect()
    }

    #[test]
    fn splitmix_reference_value() {
        assert_eq!(SeededStream::new(0).next_u64(), 16294208416658607535);
    }

    #[test]
    fn same_seed_same_output() {
        let d = shapes::cycle(2);
        let a = gen_random(&d, &uniform(&d, 3), 7, GenMode::Generic).unwrap();
        let b = gen_random(&d, &uniform(&d, 3), 7, GenMode::Generic).unwrap();
        assert_eq!(a, b);
        let z = gen_random(&d, &uniform(&d, 0), 7, GenMode::Generic).unwrap();
        assert!(z.rep.is_zero_dimensional());
    }

    #[test]
    fn small_irreducibility() {
        assert!(is_irreducible_small(&[1, 0, 1]));
        assert!(!is_irreducible_small(&[-4, 0, 1]));
        assert!(!is_irreducible_small(&[-8, 0, 0, 1]));
        assert!(is_irreducible_small(&[-2, 0, 0, 1]));
    }

    #[test]
    fn sum_mode_key_matches() {
        for (d, k) in [
            (shapes::cycle(2), 6),
            (shapes::open_path(3), 4),
            (shapes::half_open_path(2), 4),
            (shapes::path(3), 4),
        ] {
            for seed in 0..5 {
                let g = gen_random(&d, &uniform(&d, k), seed, GenMode::Sum).unwrap();
                assert_eq!(decompose(&g.rep).unwrap(), g.key.unwrap(), "{d:?} seed {seed}");
            }
        }
    }

    #[test]
    fn missing_dims_rejected() {
        let d = shapes::cycle(2);
        let dims: Dims = [("e1".to_string(), 1)].into();
        assert!(matches!(gen_random(&d, &dims, 0, GenMode::Generic), Err(GenError::InvalidDims(_))));
    }
}

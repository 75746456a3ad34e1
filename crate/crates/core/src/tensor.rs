//! Dense tensors whose axes are labeled by `(wire, side)`, used for
//! contraction and for re-indexing vertex tensors.

use num_traits::{One, Zero};

use crate::exactalg::{RatMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Out,
    In,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Out => Side::In,
            Side::In => Side::Out,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Axis {
    pub wire: String,
    pub side: Side,
    pub dim: usize,
}

impl Axis {
    pub fn new(wire: &str, side: Side, dim: usize) -> Self {
        Axis {
            wire: wire.to_string(),
            side,
            dim,
        }
    }

    fn matches(&self, wire: &str, side: Side) -> bool {
        self.wire == wire && self.side == side
    }
}

/// Row-major tensor, first axis slowest-varying.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTensor {
    axes: Vec<Axis>,
    data: Vec<Rational>,
}

fn volume(axes: &[Axis]) -> usize {
    axes.iter().map(|a| a.dim).product()
}

/// Advances a multi-index odometer; returns false after the last index.
fn step(idx: &mut [usize], dims: &[usize]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < dims[k] {
            return true;
        }
        idx[k] = 0;
    }
    false
}

impl LabeledTensor {
    pub fn new(axes: Vec<Axis>, data: Vec<Rational>) -> Self {
        assert_eq!(volume(&axes), data.len(), "tensor data does not match axes");
        LabeledTensor { axes, data }
    }

    pub fn scalar(value: Rational) -> Self {
        LabeledTensor {
            axes: Vec::new(),
            data: vec![value],
        }
    }

    /// Views a vertex matrix: rows over `out`, columns over `inc`.
    pub fn from_matrix(m: &RatMatrix, out: Vec<Axis>, inc: Vec<Axis>) -> Self {
        assert_eq!(m.rows(), volume(&out), "row multi-index mismatch");
        assert_eq!(m.cols(), volume(&inc), "column multi-index mismatch");
        let mut axes = out;
        axes.extend(inc);
        LabeledTensor {
            axes,
            data: m.data().to_vec(),
        }
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn size(&self) -> usize {
        self.data.len()
    }

    pub fn position(&self, wire: &str, side: Side) -> Option<usize> {
        self.axes.iter().position(|a| a.matches(wire, side))
    }

    /// Value of a rank-0 tensor.
    pub fn into_scalar(self) -> Option<Rational> {
        if self.axes.is_empty() {
            self.data.into_iter().next()
        } else {
            None
        }
    }

    /// Reorders axes so that new axis `k` is old axis `order[k]`.
    pub fn permute(&self, order: &[usize]) -> LabeledTensor {
        assert_eq!(order.len(), self.axes.len());
        let n = self.axes.len();
        let mut strides = vec![1usize; n];
        for k in (0..n.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.axes[k + 1].dim;
        }
        let axes: Vec<Axis> = order.iter().map(|&i| self.axes[i].clone()).collect();
        let dims: Vec<usize> = axes.iter().map(|a| a.dim).collect();
        let moved: Vec<usize> = order.iter().map(|&i| strides[i]).collect();
        let total = volume(&axes);
        let mut data = Vec::with_capacity(total);
        if total > 0 {
            let mut idx = vec![0usize; n];
            loop {
                let src: usize = idx.iter().zip(&moved).map(|(i, s)| i * s).sum();
                data.push(self.data[src].clone());
                if !step(&mut idx, &dims) {
                    break;
                }
            }
        }
        LabeledTensor { axes, data }
    }

    /// Matrix with rows over `out` and columns over `inc`, given as
    /// `(wire, side)` labels that must cover every axis exactly once.
    pub fn to_matrix(&self, out: &[(String, Side)], inc: &[(String, Side)]) -> RatMatrix {
        let order: Vec<usize> = out
            .iter()
            .chain(inc)
            .map(|(w, s)| self.position(w, *s).expect("axis label present"))
            .collect();
        assert_eq!(order.len(), self.axes.len(), "labels must cover all axes");
        let p = self.permute(&order);
        let rows = volume(&p.axes[..out.len()]);
        let cols = volume(&p.axes[out.len()..]);
        RatMatrix::from_vec(rows, cols, p.data)
    }

    /// Swaps the side label of every axis on `wire`.
    pub fn flip_wire(&mut self, wire: &str) {
        for a in self.axes.iter_mut().filter(|a| a.wire == wire) {
            a.side = a.side.flip();
        }
    }

    /// Wires present here on both sides.
    fn self_pairs(&self) -> Vec<String> {
        self.axes
            .iter()
            .filter(|a| a.side == Side::Out && self.position(&a.wire, Side::In).is_some())
            .map(|a| a.wire.clone())
            .collect()
    }

    /// Sums over the diagonal of every wire present on both sides.
    pub fn trace_loops(&self) -> LabeledTensor {
        let pairs = self.self_pairs();
        if pairs.is_empty() {
            return self.clone();
        }
        let traced: Vec<usize> = pairs
            .iter()
            .flat_map(|w| {
                [
                    self.position(w, Side::Out).unwrap(),
                    self.position(w, Side::In).unwrap(),
                ]
            })
            .collect();
        let free: Vec<usize> = (0..self.axes.len()).filter(|i| !traced.contains(i)).collect();
        let mut order = free.clone();
        order.extend(&traced);
        let p = self.permute(&order);
        let inner: usize = pairs
            .iter()
            .map(|w| self.axes[self.position(w, Side::Out).unwrap()].dim)
            .product::<usize>()
            .pow(2);
        let pair_dims: Vec<usize> = pairs
            .iter()
            .map(|w| self.axes[self.position(w, Side::Out).unwrap()].dim)
            .collect();
        // flat offsets of the diagonal entries inside one inner block
        let mut diag = Vec::new();
        let mut idx = vec![0usize; pair_dims.len()];
        if pair_dims.iter().all(|&d| d > 0) {
            loop {
                let mut off = 0;
                for (k, &i) in idx.iter().enumerate() {
                    off = off * pair_dims[k] * pair_dims[k] + i * pair_dims[k] + i;
                }
                diag.push(off);
                if !step(&mut idx, &pair_dims) {
                    break;
                }
            }
        }
        let axes: Vec<Axis> = free.iter().map(|&i| self.axes[i].clone()).collect();
        let outer = volume(&axes);
        let data = (0..outer)
            .map(|o| {
                diag.iter()
                    .fold(Rational::zero(), |acc, &d| acc + &p.data[o * inner + d])
            })
            .collect();
        LabeledTensor { axes, data }
    }

    fn shared_with(&self, other: &LabeledTensor) -> Vec<(usize, usize)> {
        self.axes
            .iter()
            .enumerate()
            .filter_map(|(i, a)| {
                other
                    .position(&a.wire, a.side.flip())
                    .map(|j| (i, j))
            })
            .collect()
    }

    /// Size of the result of `contract_with`, if the two share a wire.
    pub fn contraction_size(&self, other: &LabeledTensor) -> Option<usize> {
        let shared = self.shared_with(other);
        if shared.is_empty() {
            return None;
        }
        let inner: usize = shared.iter().map(|&(i, _)| self.axes[i].dim).product();
        if inner == 0 {
            return Some(0);
        }
        Some(self.size() / inner * (other.size() / inner))
    }

    /// Sums over every wire joining `self` and `other` (outer product if none).
    pub fn contract_with(&self, other: &LabeledTensor) -> LabeledTensor {
        self.contract_pairs(other, &self.shared_with(other)).trace_loops()
    }

    /// Sums over `wire` only, leaving out every other shared wire and every
    /// loop. `wire` must be outgoing here and incoming in `other`.
    pub fn contract_one(&self, other: &LabeledTensor, wire: &str) -> Option<LabeledTensor> {
        let i = self.position(wire, Side::Out)?;
        let j = other.position(wire, Side::In)?;
        Some(self.contract_pairs(other, &[(i, j)]))
    }

    fn contract_pairs(&self, other: &LabeledTensor, shared: &[(usize, usize)]) -> LabeledTensor {
        let a_shared: Vec<usize> = shared.iter().map(|&(i, _)| i).collect();
        let b_shared: Vec<usize> = shared.iter().map(|&(_, j)| j).collect();
        let a_free: Vec<usize> = (0..self.axes.len()).filter(|i| !a_shared.contains(i)).collect();
        let b_free: Vec<usize> = (0..other.axes.len()).filter(|i| !b_shared.contains(i)).collect();
        let pa = self.permute(&[a_free.clone(), a_shared.clone()].concat());
        let pb = other.permute(&[b_shared.clone(), b_free.clone()].concat());
        let k: usize = a_shared.iter().map(|&i| self.axes[i].dim).product();
        let m = volume(&pa.axes[..a_free.len()]);
        let n = volume(&pb.axes[b_shared.len()..]);
        let ma = RatMatrix::from_vec(m, k, pa.data);
        let mb = RatMatrix::from_vec(k, n, pb.data);
        let prod = &ma * &mb;
        let mut axes: Vec<Axis> = a_free.iter().map(|&i| self.axes[i].clone()).collect();
        axes.extend(b_free.iter().map(|&j| other.axes[j].clone()));
        LabeledTensor {
            axes,
            data: prod.into_data(),
        }
    }
}

/// Contracts a closed network to a scalar, greedily joining the pair of
/// tensors with the smallest result.
pub fn contract_network(tensors: Vec<LabeledTensor>) -> Rational {
    let mut pool: Vec<LabeledTensor> = tensors.iter().map(LabeledTensor::trace_loops).collect();
    let mut value = Rational::one();
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                if let Some(s) = pool[i].contraction_size(&pool[j]) {
                    if best.is_none_or(|(_, _, b)| s < b) {
                        best = Some((i, j, s));
                    }
                }
            }
        }
        let Some((i, j, _)) = best else { break };
        let b = pool.swap_remove(j);
        let a = pool.swap_remove(i);
        pool.push(a.contract_with(&b));
    }
    for t in pool {
        value *= t
            .into_scalar()
            .expect("open axes left after contracting a closed network");
    }
    value
}

/// Contracts tensors by folding them left to right in the given order.
pub fn contract_sequence(tensors: Vec<LabeledTensor>) -> Rational {
    let mut iter = tensors.into_iter();
    let Some(first) = iter.next() else {
        return Rational::one();
    };
    let mut acc = first.trace_loops();
    for t in iter {
        acc = acc.contract_with(&t.trace_loops());
    }
    acc.into_scalar()
        .expect("open axes left after contracting a closed network")
}

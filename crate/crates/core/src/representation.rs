//! Representations of tensor diagrams: one exact matrix per vertex, rows over
//! the outgoing wires and columns over the incoming ones.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{RatMatrix, Rational};
use crate::semigraph::{SemigraphError, SubdiagramRef, TensorDiagram, Wire};
use crate::tensor::{contract_network, contract_sequence, Axis, LabeledTensor, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("tensor at vertex {0:?} has the wrong shape")]
    ShapeMismatch(String),
    #[error("wire {0:?} has no dimension")]
    MissingDim(String),
    #[error("matrix for wire {0:?} has the wrong size")]
    SizeMismatch(String),
    #[error("matrix for wire {0:?} is not invertible")]
    NotInvertible(String),
    #[error("representations live on different diagrams")]
    DiagramMismatch,
    #[error("maps do not commute at vertex {0:?}")]
    NotAMorphism(String),
    #[error("map on wire {0:?} is not injective")]
    NotMonic(String),
    #[error("diagram is not closed")]
    NotClosed,
    #[error("diagram is not a single loop")]
    NotALoop,
    #[error("wire {0:?} must have dimension one")]
    RestrictedDimViolation(String),
    #[error("commuting squares at vertex {0:?} are not linear in the maps")]
    NonlinearHomSystem(String),
    #[error(transparent)]
    Semigraph(#[from] SemigraphError),
}

pub type Dims = BTreeMap<String, usize>;

/// Per-wire matrices: a group element or the components of a morphism.
pub type WireMaps = BTreeMap<String, RatMatrix>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    diagram: TensorDiagram,
    dims: Dims,
    tensors: BTreeMap<String, RatMatrix>,
}

fn out_wires(d: &TensorDiagram, v: &str) -> Vec<String> {
    d.wires()
        .iter()
        .filter(|w| w.tail.as_deref() == Some(v))
        .map(|w| w.id.clone())
        .collect()
}

fn in_wires(d: &TensorDiagram, v: &str) -> Vec<String> {
    d.wires()
        .iter()
        .filter(|w| w.head.as_deref() == Some(v))
        .map(|w| w.id.clone())
        .collect()
}

/// Checks shapes against the multi-index convention.
pub fn validate_representation(
    diagram: TensorDiagram,
    dims: Dims,
    tensors: BTreeMap<String, RatMatrix>,
) -> Result<Representation, RepError> {
    Representation::new(diagram, dims, tensors)
}

impl Representation {
    pub fn new(
        diagram: TensorDiagram,
        dims: Dims,
        tensors: BTreeMap<String, RatMatrix>,
    ) -> Result<Self, RepError> {
        for w in diagram.wires() {
            if !dims.contains_key(&w.id) {
                return Err(RepError::MissingDim(w.id.clone()));
            }
        }
        if let Some(extra) = dims.keys().find(|k| diagram.wire(k).is_none()) {
            return Err(RepError::Semigraph(SemigraphError::UnknownWire(extra.clone())));
        }
        if let Some(extra) = tensors.keys().find(|k| !diagram.has_vertex(k)) {
            return Err(RepError::ShapeMismatch(extra.clone()));
        }
        let rep = Representation {
            diagram,
            dims,
            tensors,
        };
        for v in rep.diagram.vertices() {
            let m = rep
                .tensors
                .get(v)
                .ok_or_else(|| RepError::ShapeMismatch(v.clone()))?;
            if m.shape() != rep.vertex_shape(v) {
                return Err(RepError::ShapeMismatch(v.clone()));
            }
        }
        Ok(rep)
    }

    pub fn diagram(&self) -> &TensorDiagram {
        &self.diagram
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn dim(&self, wire: &str) -> usize {
        self.dims[wire]
    }

    pub fn tensors(&self) -> &BTreeMap<String, RatMatrix> {
        &self.tensors
    }

    pub fn tensor(&self, v: &str) -> &RatMatrix {
        &self.tensors[v]
    }

    pub fn out_wires(&self, v: &str) -> Vec<String> {
        out_wires(&self.diagram, v)
    }

    pub fn in_wires(&self, v: &str) -> Vec<String> {
        in_wires(&self.diagram, v)
    }

    /// `(∏ outgoing dims, ∏ incoming dims)`.
    pub fn vertex_shape(&self, v: &str) -> (usize, usize) {
        let p = |ws: Vec<String>| ws.iter().map(|w| self.dims[w]).product();
        (p(self.out_wires(v)), p(self.in_wires(v)))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// All dimensions zero.
    pub fn is_zero_dimensional(&self) -> bool {
        self.dims.values().all(|&d| d == 0)
    }

    /// Zero tensors at every vertex.
    pub fn zero(diagram: &TensorDiagram, dims: &Dims) -> Result<Self, RepError> {
        let mut tensors = BTreeMap::new();
        for v in diagram.vertices() {
            let p = |ws: Vec<String>| -> Result<usize, RepError> {
                ws.iter()
                    .map(|w| dims.get(w).copied().ok_or_else(|| RepError::MissingDim(w.clone())))
                    .product()
            };
            let (r, c) = (p(out_wires(diagram, v))?, p(in_wires(diagram, v))?);
            tensors.insert(v.clone(), RatMatrix::zeros(r, c));
        }
        Representation::new(diagram.clone(), dims.clone(), tensors)
    }

    /// The vertex tensor with its axes labeled.
    pub fn labeled(&self, v: &str) -> LabeledTensor {
        let out = self
            .out_wires(v)
            .iter()
            .map(|w| Axis::new(w, Side::Out, self.dims[w]))
            .collect();
        let inc = self
            .in_wires(v)
            .iter()
            .map(|w| Axis::new(w, Side::In, self.dims[w]))
            .collect();
        LabeledTensor::from_matrix(&self.tensors[v], out, inc)
    }

    /// Converts a labeled tensor back to the canonical matrix at `v` of `d`.
    fn canonical_matrix(d: &TensorDiagram, v: &str, t: &LabeledTensor) -> RatMatrix {
        let out: Vec<(String, Side)> = out_wires(d, v).into_iter().map(|w| (w, Side::Out)).collect();
        let inc: Vec<(String, Side)> = in_wires(d, v).into_iter().map(|w| (w, Side::In)).collect();
        t.to_matrix(&out, &inc)
    }

    fn same_diagram(&self, other: &Representation) -> Result<(), RepError> {
        if self.diagram == other.diagram {
            Ok(())
        } else {
            Err(RepError::DiagramMismatch)
        }
    }

    /// `(⊗_out g) · M_v · (⊗_in g⁻¹)` at every vertex.
    pub fn apply_group_element(&self, g: &WireMaps) -> Result<Representation, RepError> {
        let mut inverses = BTreeMap::new();
        for w in self.diagram.wires() {
            let m = g
                .get(&w.id)
                .ok_or_else(|| RepError::SizeMismatch(w.id.clone()))?;
            let d = self.dims[&w.id];
            if m.shape() != (d, d) {
                return Err(RepError::SizeMismatch(w.id.clone()));
            }
            let inv = m
                .inverse()
                .ok_or_else(|| RepError::NotInvertible(w.id.clone()))?;
            inverses.insert(w.id.clone(), inv);
        }
        let mut tensors = BTreeMap::new();
        for v in self.diagram.vertices() {
            let left = RatMatrix::kron_all(self.out_wires(v).iter().map(|w| &g[w]));
            let right = RatMatrix::kron_all(self.in_wires(v).iter().map(|w| &inverses[w]));
            tensors.insert(v.clone(), &(&left * &self.tensors[v]) * &right);
        }
        Ok(Representation {
            diagram: self.diagram.clone(),
            dims: self.dims.clone(),
            tensors,
        })
    }

    /// The tensor direct sum: pure blocks carry the summands, mixed blocks
    /// are zero. A vertex with no wires carries the sum of the two scalars.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation, RepError> {
        self.same_diagram(other)?;
        let dims: Dims = self
            .dims
            .iter()
            .map(|(w, d)| (w.clone(), d + other.dims[w]))
            .collect();
        let mut tensors = BTreeMap::new();
        for v in self.diagram.vertices() {
            let wires: Vec<String> = self
                .out_wires(v)
                .into_iter()
                .chain(self.in_wires(v))
                .collect();
            if wires.is_empty() {
                let s = self.tensors[v].get(0, 0) + other.tensors[v].get(0, 0);
                tensors.insert(v.clone(), RatMatrix::scalar(s));
                continue;
            }
            let nout = self.out_wires(v).len();
            let new_dims: Vec<usize> = wires.iter().map(|w| dims[w]).collect();
            let mut data = vec![Rational::zero(); new_dims.iter().product()];
            for (part, offset_of) in [(self, None), (other, Some(()))] {
                let part_dims: Vec<usize> = wires.iter().map(|w| part.dims[w]).collect();
                let shifts: Vec<usize> = wires
                    .iter()
                    .map(|w| if offset_of.is_some() { self.dims[w] } else { 0 })
                    .collect();
                scatter(
                    part.tensors[v].data(),
                    &part_dims,
                    &shifts,
                    &new_dims,
                    &mut data,
                );
            }
            let rows = new_dims[..nout].iter().product();
            let cols = new_dims[nout..].iter().product();
            tensors.insert(v.clone(), RatMatrix::from_vec(rows, cols, data));
        }
        Ok(Representation {
            diagram: self.diagram.clone(),
            dims,
            tensors,
        })
    }

    /// Wire-wise tensor product; index on each axis is `i1·d2 + i2`.
    pub fn tensor_product(&self, other: &Representation) -> Result<Representation, RepError> {
        self.same_diagram(other)?;
        let dims: Dims = self
            .dims
            .iter()
            .map(|(w, d)| (w.clone(), d * other.dims[w]))
            .collect();
        let mut tensors = BTreeMap::new();
        for v in self.diagram.vertices() {
            let wires: Vec<String> = self
                .out_wires(v)
                .into_iter()
                .chain(self.in_wires(v))
                .collect();
            let nout = self.out_wires(v).len();
            let d1: Vec<usize> = wires.iter().map(|w| self.dims[w]).collect();
            let d2: Vec<usize> = wires.iter().map(|w| other.dims[w]).collect();
            let nd: Vec<usize> = wires.iter().map(|w| dims[w]).collect();
            let mut data = vec![Rational::zero(); nd.iter().product()];
            let a = self.tensors[v].data();
            let b = other.tensors[v].data();
            let mut ia = vec![0usize; wires.len()];
            for x in a {
                if !x.is_zero() {
                    let mut ib = vec![0usize; wires.len()];
                    for y in b {
                        if !y.is_zero() {
                            let mut flat = 0;
                            for k in 0..wires.len() {
                                flat = flat * nd[k] + ia[k] * d2[k] + ib[k];
                            }
                            data[flat] = x * y;
                        }
                        advance(&mut ib, &d2);
                    }
                }
                advance(&mut ia, &d1);
            }
            let rows = nd[..nout].iter().product();
            let cols = nd[nout..].iter().product();
            tensors.insert(v.clone(), RatMatrix::from_vec(rows, cols, data));
        }
        Ok(Representation {
            diagram: self.diagram.clone(),
            dims,
            tensors,
        })
    }

    /// All dimensions one, all tensors the scalar one.
    pub fn unit(diagram: &TensorDiagram) -> Representation {
        let dims = diagram.wires().iter().map(|w| (w.id.clone(), 1)).collect();
        let tensors = diagram
            .vertices()
            .iter()
            .map(|v| (v.clone(), RatMatrix::scalar(Rational::one())))
            .collect();
        Representation {
            diagram: diagram.clone(),
            dims,
            tensors,
        }
    }

    /// Transposed tensors on the diagram with every wire reversed.
    pub fn dual(&self) -> Representation {
        let wires = self.diagram.wires().iter().map(|w| Wire {
            id: w.id.clone(),
            tail: w.head.clone(),
            head: w.tail.clone(),
        });
        let diagram = TensorDiagram::new(self.diagram.vertices().iter().cloned(), wires)
            .expect("reversal keeps the diagram valid");
        let tensors = self
            .tensors
            .iter()
            .map(|(v, m)| (v.clone(), m.transpose()))
            .collect();
        Representation {
            diagram,
            dims: self.dims.clone(),
            tensors,
        }
    }

    /// Identifies the space on `wire` with its dual by the standard basis and
    /// re-indexes the endpoint tensors for the reversed orientation.
    pub fn reverse_wire(&self, wire: &str) -> Result<Representation, RepError> {
        let diagram = self.diagram.reverse_wire(wire)?;
        let w = self.diagram.wire(wire).unwrap();
        let mut tensors = self.tensors.clone();
        let mut touched: Vec<&str> = w.endpoints().collect();
        touched.dedup();
        for v in touched {
            let mut t = self.labeled(v);
            t.flip_wire(wire);
            tensors.insert(v.to_string(), Self::canonical_matrix(&diagram, v, &t));
        }
        Ok(Representation {
            diagram,
            dims: self.dims.clone(),
            tensors,
        })
    }

    /// Scalar obtained by contracting every wire of a closed diagram.
    pub fn contract(&self) -> Result<Rational, RepError> {
        self.require_closed()?;
        Ok(contract_network(
            self.diagram.vertices().iter().map(|v| self.labeled(v)).collect(),
        ))
    }

    /// Contraction folding vertex tensors in the given order.
    pub fn contract_in_order(&self, order: &[String]) -> Result<Rational, RepError> {
        self.require_closed()?;
        let mut sorted = order.to_vec();
        sorted.sort();
        if sorted != self.diagram.vertices() {
            return Err(RepError::DiagramMismatch);
        }
        Ok(contract_sequence(order.iter().map(|v| self.labeled(v)).collect()))
    }

    fn require_closed(&self) -> Result<(), RepError> {
        if self.diagram.is_closed() {
            Ok(())
        } else {
            Err(RepError::NotClosed)
        }
    }

    /// Restriction to a subdiagram that contains every wire at its vertices.
    pub fn restrict(&self, sub: &SubdiagramRef) -> Result<Representation, RepError> {
        let diagram = sub.as_diagram(&self.diagram)?;
        for v in diagram.vertices() {
            if self.diagram.degree(v)? != diagram.degree(v)? {
                return Err(RepError::ShapeMismatch(v.clone()));
            }
        }
        let dims = sub.wires.iter().map(|w| (w.clone(), self.dims[w])).collect();
        let tensors = sub
            .vertices
            .iter()
            .map(|v| (v.clone(), self.tensors[v].clone()))
            .collect();
        Representation::new(diagram, dims, tensors)
    }

    /// Inverse of splitting: contracts the dimension-one wire `wire` and
    /// merges its endpoints into `merged` with the tensor product of their
    /// tensors.
    pub fn merge_along(&self, wire: &str, merged: &str) -> Result<Representation, RepError> {
        let w = self
            .diagram
            .wire(wire)
            .ok_or_else(|| SemigraphError::UnknownWire(wire.to_string()))?;
        if self.dims[wire] != 1 {
            return Err(RepError::RestrictedDimViolation(wire.to_string()));
        }
        let diagram = self.diagram.contract_wire(wire, merged)?;
        let (a, b) = (w.tail.clone().unwrap(), w.head.clone().unwrap());
        let t = self
            .labeled(&a)
            .contract_one(&self.labeled(&b), wire)
            .ok_or(RepError::NotALoop)?;
        let mut tensors: BTreeMap<String, RatMatrix> = self
            .tensors
            .iter()
            .filter(|(v, _)| **v != a && **v != b)
            .map(|(v, m)| (v.clone(), m.clone()))
            .collect();
        tensors.insert(merged.to_string(), Self::canonical_matrix(&diagram, merged, &t));
        let mut dims = self.dims.clone();
        dims.remove(wire);
        Representation::new(diagram, dims, tensors)
    }

    /// The subrepresentation obtained by replacing vertex tensors directly.
    pub fn with_tensor(&self, v: &str, m: RatMatrix) -> Result<Representation, RepError> {
        let mut tensors = self.tensors.clone();
        tensors.insert(v.to_string(), m);
        Representation::new(self.diagram.clone(), self.dims.clone(), tensors)
    }
}

fn advance(idx: &mut [usize], dims: &[usize]) {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < dims[k] {
            return;
        }
        idx[k] = 0;
    }
}

/// Copies a block with axis dims `src_dims` into a larger tensor, shifting
/// every axis index by `shifts`.
fn scatter(
    src: &[Rational],
    src_dims: &[usize],
    shifts: &[usize],
    dst_dims: &[usize],
    dst: &mut [Rational],
) {
    let mut idx = vec![0usize; src_dims.len()];
    for x in src {
        if !x.is_zero() {
            let mut flat = 0;
            for k in 0..idx.len() {
                flat = flat * dst_dims[k] + idx[k] + shifts[k];
            }
            dst[flat] = x.clone();
        }
        advance(&mut idx, src_dims);
    }
}

pub fn apply_group_element(g: &WireMaps, r: &Representation) -> Result<Representation, RepError> {
    r.apply_group_element(g)
}

pub fn direct_sum(r1: &Representation, r2: &Representation) -> Result<Representation, RepError> {
    r1.direct_sum(r2)
}

pub fn tensor_product(r1: &Representation, r2: &Representation) -> Result<Representation, RepError> {
    r1.tensor_product(r2)
}

pub fn unit(diagram: &TensorDiagram) -> Representation {
    Representation::unit(diagram)
}

pub fn dual_rep(r: &Representation) -> Representation {
    r.dual()
}

pub fn contract(r: &Representation) -> Result<Rational, RepError> {
    r.contract()
}

pub fn contract_in_order(r: &Representation, order: &[String]) -> Result<Rational, RepError> {
    r.contract_in_order(order)
}

pub fn reverse_wire_rep(r: &Representation, wire: &str) -> Result<Representation, RepError> {
    r.reverse_wire(wire)
}

/// Representation of the original diagram from one of a splitting whose
/// fresh wire `wire` has dimension one.
pub fn split_functor(r: &Representation, wire: &str, merged: &str) -> Result<Representation, RepError> {
    r.merge_along(wire, merged)
}

fn check_maps(
    phi: &WireMaps,
    r1: &Representation,
    r2: &Representation,
) -> Result<(), RepError> {
    r1.same_diagram(r2)?;
    for w in r1.diagram.wires() {
        let m = phi
            .get(&w.id)
            .ok_or_else(|| RepError::SizeMismatch(w.id.clone()))?;
        if m.shape() != (r2.dims[&w.id], r1.dims[&w.id]) {
            return Err(RepError::SizeMismatch(w.id.clone()));
        }
    }
    Ok(())
}

fn first_failing_square(phi: &WireMaps, r1: &Representation, r2: &Representation) -> Option<String> {
    r1.diagram.vertices().iter().find_map(|v| {
        let left = RatMatrix::kron_all(r1.out_wires(v).iter().map(|w| &phi[w]));
        let right = RatMatrix::kron_all(r1.in_wires(v).iter().map(|w| &phi[w]));
        let ok = &left * &r1.tensors[v] == &r2.tensors[v] * &right;
        (!ok).then(|| v.clone())
    })
}

/// `(⊗_out φ) R1(v) = R2(v) (⊗_in φ)` at every vertex.
pub fn is_morphism(phi: &WireMaps, r1: &Representation, r2: &Representation) -> Result<bool, RepError> {
    check_maps(phi, r1, r2)?;
    Ok(first_failing_square(phi, r1, r2).is_none())
}

/// Dimension of the space of morphisms `r1 → r2`. Only defined when every
/// vertex has exactly one incoming and one outgoing slot, so that the
/// commuting squares are linear in the maps.
pub fn hom_dim(r1: &Representation, r2: &Representation) -> Result<usize, RepError> {
    r1.same_diagram(r2)?;
    let d = &r1.diagram;
    for v in d.vertices() {
        if r1.out_wires(v).len() != 1 || r1.in_wires(v).len() != 1 {
            return Err(RepError::NonlinearHomSystem(v.clone()));
        }
    }
    // unknowns: entries of φ_e (d2 × d1), row-major, wires in order
    let mut offset = BTreeMap::new();
    let mut n = 0;
    for w in d.wires() {
        offset.insert(w.id.clone(), n);
        n += r2.dims[&w.id] * r1.dims[&w.id];
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for v in d.vertices() {
        let o = &r1.out_wires(v)[0];
        let i = &r1.in_wires(v)[0];
        let (a, b) = (&r1.tensors[v], &r2.tensors[v]);
        // φ_o · A − B · φ_i = 0, entry (p, q)
        let (d2o, d1o) = (r2.dims[o], r1.dims[o]);
        let (d2i, d1i) = (r2.dims[i], r1.dims[i]);
        for p in 0..d2o {
            for q in 0..d1i {
                let mut row = vec![Rational::zero(); n];
                for k in 0..d1o {
                    row[offset[o] + p * d1o + k] += a.get(k, q);
                }
                for k in 0..d2i {
                    row[offset[i] + k * d1i + q] -= b.get(p, k);
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok(n);
    }
    let m = RatMatrix::from_rows(rows).expect("rows have equal length");
    Ok(n - m.rank())
}

/// Columns spanning a complement of the column space of `m`, taken from
/// the standard basis.
fn complement(m: &RatMatrix) -> RatMatrix {
    let d = m.rows();
    let (_, pivots) = m.hstack(&RatMatrix::identity(d)).rref();
    let extra: Vec<usize> = pivots
        .iter()
        .filter(|&&p| p >= m.cols())
        .map(|&p| p - m.cols())
        .collect();
    RatMatrix::identity(d).select_columns(&extra)
}

/// Quotient maps `ψ_e` and sections `σ_e` with `ψ_e φ_e = 0`, `ψ_e σ_e = I`.
fn quotient_maps(phi: &RatMatrix) -> (RatMatrix, RatMatrix) {
    let c = phi.column_space();
    let s = complement(&c);
    let basis = c.hstack(&s);
    let inv = basis.inverse().expect("basis extension is invertible");
    let psi = inv.submatrix(c.cols(), 0, s.cols(), inv.cols());
    (psi, s)
}

fn cokernel_unchecked(phi: &WireMaps, r2: &Representation) -> (Representation, WireMaps) {
    let mut psi = BTreeMap::new();
    let mut sigma = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for w in r2.diagram.wires() {
        let (p, s) = quotient_maps(&phi[&w.id]);
        dims.insert(w.id.clone(), p.rows());
        psi.insert(w.id.clone(), p);
        sigma.insert(w.id.clone(), s);
    }
    let mut tensors = BTreeMap::new();
    for v in r2.diagram.vertices() {
        let left = RatMatrix::kron_all(r2.out_wires(v).iter().map(|w| &psi[w]));
        let right = RatMatrix::kron_all(r2.in_wires(v).iter().map(|w| &sigma[w]));
        tensors.insert(v.clone(), &(&left * &r2.tensors[v]) * &right);
    }
    let r3 = Representation {
        diagram: r2.diagram.clone(),
        dims,
        tensors,
    };
    (r3, psi)
}

/// Cokernel of a monic morphism with its projection `ψ`. The induced vertex
/// tensors are `(⊗ ψ_out) R2(v) (⊗ σ_in)` for sections `σ` of `ψ`.
pub fn cokernel(
    phi: &WireMaps,
    r1: &Representation,
    r2: &Representation,
) -> Result<(Representation, WireMaps), RepError> {
    check_maps(phi, r1, r2)?;
    if let Some(v) = first_failing_square(phi, r1, r2) {
        return Err(RepError::NotAMorphism(v));
    }
    for (w, m) in phi {
        if m.rank() != m.cols() {
            return Err(RepError::NotMonic(w.clone()));
        }
    }
    Ok(cokernel_unchecked(phi, r2))
}

/// Kernel of a morphism, as the dual of the cokernel of the dual morphism,
/// with its inclusion into `r1`.
pub fn kernel(
    phi: &WireMaps,
    r1: &Representation,
    r2: &Representation,
) -> Result<(Representation, WireMaps), RepError> {
    check_maps(phi, r1, r2)?;
    if let Some(v) = first_failing_square(phi, r1, r2) {
        return Err(RepError::NotAMorphism(v));
    }
    let phi_t: WireMaps = phi.iter().map(|(w, m)| (w.clone(), m.transpose())).collect();
    let (q, psi) = cokernel_unchecked(&phi_t, &r1.dual());
    let iota = psi.iter().map(|(w, m)| (w.clone(), m.transpose())).collect();
    Ok((q.dual(), iota))
}

/// Composite `ψ ∘ φ` wire by wire.
pub fn compose(psi: &WireMaps, phi: &WireMaps) -> WireMaps {
    phi.iter()
        .map(|(w, m)| (w.clone(), &psi[w] * m))
        .collect()
}

/// Identity group element or morphism.
pub fn identity_maps(r: &Representation) -> WireMaps {
    r.dims
        .iter()
        .map(|(w, &d)| (w.clone(), RatMatrix::identity(d)))
        .collect()
}

/// Ordered product of vertex matrices once around a cycle, starting at the
/// head of `base`. Wires against the direction of `base` are reversed first.
pub fn monodromy(r: &Representation, base: &str) -> Result<RatMatrix, RepError> {
    let d = r.diagram();
    let n = d.vertices().len();
    if n == 0 || d.wires().len() != n || !d.is_closed() {
        return Err(RepError::NotALoop);
    }
    for v in d.vertices() {
        if d.degree(v)? != 2 {
            return Err(RepError::NotALoop);
        }
    }
    let first = d
        .wire(base)
        .ok_or_else(|| SemigraphError::UnknownWire(base.to_string()))?;
    let mut rep = r.clone();
    let mut wire = first.clone();
    let mut product = RatMatrix::identity(r.dim(base));
    let mut seen = 0;
    loop {
        let v = wire.head.clone().unwrap();
        // the other slot at v
        let next = rep
            .diagram()
            .wires()
            .iter()
            .find(|w| {
                (w.id != wire.id && (w.tail.as_deref() == Some(&v) || w.head.as_deref() == Some(&v)))
                    || (w.id == wire.id && w.is_loop())
            })
            .cloned()
            .ok_or(RepError::NotALoop)?;
        let next = if next.tail.as_deref() == Some(&v) {
            next
        } else {
            rep = rep.reverse_wire(&next.id)?;
            rep.diagram().wire(&next.id).unwrap().clone()
        };
        product = &rep.tensors[&v] * &product;
        seen += 1;
        if next.id == base {
            break;
        }
        if seen > n {
            return Err(RepError::NotALoop);
        }
        wire = next;
    }
    if seen != n {
        return Err(RepError::NotALoop);
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::semigraph::shapes;

    fn j1(m: RatMatrix) -> Representation {
        let d = m.rows();
        Representation::new(
            shapes::cycle(1),
            [("e1".to_string(), d)].into(),
            [("v1".to_string(), m)].into(),
        )
        .unwrap()
    }

    #[test]
    fn loop_trace_and_action() {
        let r = j1(RatMatrix::from_i64(&[&[1, 2], &[3, 4]]));
        assert_eq!(r.contract().unwrap(), rat(5));
        let n = j1(RatMatrix::from_i64(&[&[0, 1], &[0, 0]]));
        let g: WireMaps = [("e1".to_string(), RatMatrix::from_i64(&[&[2, 0], &[0, 1]]))].into();
        assert_eq!(
            n.apply_group_element(&g).unwrap().tensor("v1"),
            &RatMatrix::from_i64(&[&[0, 2], &[0, 0]])
        );
    }

    #[test]
    fn path_pairing() {
        let r = Representation::new(
            shapes::path(2),
            [("e1".to_string(), 2)].into(),
            [
                ("v1".to_string(), RatMatrix::from_i64(&[&[1], &[2]])),
                ("v2".to_string(), RatMatrix::from_i64(&[&[3, 4]])),
            ]
            .into(),
        )
        .unwrap();
        assert_eq!(r.contract().unwrap(), rat(11));
    }

    #[test]
    fn open_claw_shapes() {
        let d = shapes::open_claw();
        let dims: Dims = [("e1", 2), ("e2", 2), ("e3", 2)]
            .iter()
            .map(|(w, n)| (w.to_string(), *n))
            .collect();
        assert!(Representation::new(d.clone(), dims.clone(), [("v1".into(), RatMatrix::zeros(8, 1))].into()).is_ok());
        assert_eq!(
            Representation::new(d, dims, [("v1".into(), RatMatrix::zeros(4, 2))].into()),
            Err(RepError::ShapeMismatch("v1".into()))
        );
    }

    #[test]
    fn two_outgoing_sum_has_zero_mixed_blocks() {
        let d = TensorDiagram::from_spec(&["v"], &[("a", Some("v"), None), ("b", Some("v"), None)]).unwrap();
        let dims: Dims = [("a".to_string(), 1), ("b".to_string(), 1)].into();
        let mk = |x| Representation::new(d.clone(), dims.clone(), [("v".into(), RatMatrix::scalar(rat(x)))].into()).unwrap();
        let s = mk(5).direct_sum(&mk(7)).unwrap();
        assert_eq!(s.tensor("v"), &RatMatrix::from_i64(&[&[5], &[0], &[0], &[7]]));
    }

    #[test]
    fn monodromy_of_two_cycle() {
        let d = shapes::cycle(2);
        let m1 = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let m2 = RatMatrix::from_i64(&[&[2, 0], &[1, 1]]);
        let r = Representation::new(
            d,
            [("e1".to_string(), 2), ("e2".to_string(), 2)].into(),
            [("v1".to_string(), m1.clone()), ("v2".to_string(), m2.clone())].into(),
        )
        .unwrap();
        assert_eq!(monodromy(&r, "e1").unwrap(), &m2 * &m1);
        assert_eq!(monodromy(&r, "e2").unwrap(), &m1 * &m2);
    }

    #[test]
    fn reversal_of_loop_transposes() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let r = j1(m.clone());
        let back = r.reverse_wire("e1").unwrap();
        assert_eq!(back.tensor("v1"), &m.transpose());
        assert_eq!(back.reverse_wire("e1").unwrap(), r);
    }
}

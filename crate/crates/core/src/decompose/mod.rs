//! Indecomposable decomposition of representations of finite and tame
//! diagrams, realization of descriptors, and isomorphism testing.
//!
//! Path and loop diagrams are co-oriented along their layout and read as
//! representations of a linear or cyclic quiver. Half-open and closed paths
//! carry one extra pinned position of dimension one: the trivial space of
//! the vertex with no outgoing wire.

mod layout;
mod quiver;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::classify::{classify_diagram, ClassifyError, DiagramClass, Shape, WildWitness};
use crate::exactalg::{AlgError, RatMatrix, RatPoly, Rational};
use crate::representation::{RepError, Representation};
use crate::semigraph::TensorDiagram;

pub use layout::{layout_of, Layout};
use quiver::{block_dims, is_band_poly, realize_block, QuiverRep};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecompError {
    #[error("diagram is wild: {} at {}", .0.kind.as_str(), .0.vertex)]
    NotDecomposable(WildWitness),
    #[error("diagram is not connected")]
    NotConnected,
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("isomorphism is not decidable on a wild component")]
    NotDecidableWild,
    #[error("representations live on different diagrams")]
    DiagramMismatch,
    #[error(transparent)]
    Classify(ClassifyError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

impl From<ClassifyError> for DecompError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::NotConnected => DecompError::NotConnected,
            other => DecompError::Classify(other),
        }
    }
}

/// One indecomposable, up to isomorphism.
///
/// Positions are 1-based along the layout. `Interval` lives on open and
/// half-open paths; `Band` and `String` on loops and closed paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IndecompDescriptor {
    Interval {
        a: usize,
        b: usize,
    },
    /// Companion block of `poly^power`, `poly` irreducible with `poly(0) != 0`.
    Band {
        poly: RatPoly,
        power: usize,
    },
    /// Nilpotent string of `len` basis vectors starting at grade `start`.
    String {
        start: usize,
        len: usize,
    },
}

impl IndecompDescriptor {
    fn rank(&self) -> u8 {
        match self {
            IndecompDescriptor::Interval { .. } => 0,
            IndecompDescriptor::Band { .. } => 1,
            IndecompDescriptor::String { .. } => 2,
        }
    }
}

impl Ord for IndecompDescriptor {
    fn cmp(&self, other: &Self) -> Ordering {
        use IndecompDescriptor::*;
        match (self, other) {
            (Interval { a, b }, Interval { a: c, b: d }) => (a, b).cmp(&(c, d)),
            (Band { poly, power }, Band { poly: q, power: s }) => {
                poly.canonical_cmp(q).then(power.cmp(s))
            }
            (String { start, len }, String { start: s, len: l }) => (start, len).cmp(&(s, l)),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for IndecompDescriptor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Names of the closed-path indecomposables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathAlias {
    /// Simple at position `i`.
    V0 { i: usize },
    /// One-dimensional everywhere with monodromy `lambda != 0`.
    Vlambda {
        lambda: Rational,
    },
    /// Two-step string through the pinned position, ending at grade `i`.
    W { i: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub descriptor: IndecompDescriptor,
    pub alias: Option<PathAlias>,
}

/// A multiset of indecomposables, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub shape: Shape,
    pub blocks: Vec<Block>,
}

impl Decomposition {
    pub fn new(shape: Shape, descriptors: Vec<IndecompDescriptor>) -> Self {
        let mut blocks: Vec<Block> = descriptors
            .into_iter()
            .map(|d| Block {
                alias: alias_of(shape, &d),
                descriptor: d,
            })
            .collect();
        blocks.sort();
        Decomposition { shape, blocks }
    }

    pub fn descriptors(&self) -> Vec<IndecompDescriptor> {
        self.blocks.iter().map(|b| b.descriptor.clone()).collect()
    }

    /// Descriptors with their multiplicities.
    pub fn multiplicities(&self) -> BTreeMap<IndecompDescriptor, usize> {
        let mut out = BTreeMap::new();
        for b in &self.blocks {
            *out.entry(b.descriptor.clone()).or_insert(0) += 1;
        }
        out
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Number of quiver positions, whether the quiver is cyclic, and the pinned
/// position (1-based) if any.
fn quiver_type(shape: Shape) -> (usize, bool, Option<usize>) {
    match shape {
        Shape::A0(n) => (n + 1, false, None),
        Shape::A1(n) => (n + 1, false, Some(n + 1)),
        Shape::P(n) => (n, true, Some(n)),
        Shape::J(n) => (n, true, None),
    }
}

/// True iff the block is nonzero at the pinned position.
pub fn touches_pinned(shape: Shape, d: &IndecompDescriptor) -> bool {
    let (positions, _, pinned) = quiver_type(shape);
    match pinned {
        Some(p) => block_dims(d, positions)[p - 1] > 0,
        None => false,
    }
}

fn alias_of(shape: Shape, d: &IndecompDescriptor) -> Option<PathAlias> {
    let Shape::P(n) = shape else { return None };
    match d {
        IndecompDescriptor::Band { poly, power: 1 } if poly.degree() == Some(1) => {
            Some(PathAlias::Vlambda {
                lambda: -poly.coeff(0),
            })
        }
        IndecompDescriptor::String { start, len: 1 } => Some(PathAlias::V0 { i: *start }),
        IndecompDescriptor::String { start, len } if touches_pinned(shape, d) => {
            Some(PathAlias::W {
                i: (start - 1 + len - 1) % n + 1,
            })
        }
        _ => None,
    }
}

/// Checks that `d` names an indecomposable of the given shape.
pub fn check_descriptor(shape: Shape, d: &IndecompDescriptor) -> Result<(), DecompError> {
    let (positions, cyclic, pinned) = quiver_type(shape);
    let bad = |msg: String| Err(DecompError::InvalidDescriptor(msg));
    match d {
        IndecompDescriptor::Interval { a, b } => {
            if cyclic {
                return bad(format!("intervals do not occur on {shape}"));
            }
            if !(1 <= *a && a <= b && *b <= positions) {
                return bad(format!("interval [{a}, {b}] outside 1..={positions}"));
            }
        }
        IndecompDescriptor::Band { poly, power } => {
            if !cyclic {
                return bad(format!("bands do not occur on {shape}"));
            }
            if *power == 0 || !is_band_poly(poly) {
                return bad(format!("band ({poly})^{power} is not a power of an irreducible with nonzero root"));
            }
        }
        IndecompDescriptor::String { start, len } => {
            if !cyclic {
                return bad(format!("strings do not occur on {shape}"));
            }
            if *len == 0 || !(1..=positions).contains(start) {
                return bad(format!("string ({start}, {len}) outside 1..={positions}"));
            }
        }
    }
    if let Some(p) = pinned {
        if block_dims(d, positions)[p - 1] > 1 {
            return bad(format!("block passes the pinned position {p} more than once"));
        }
    }
    Ok(())
}

/// Co-oriented copy of a representation.
fn normalized(r: &Representation, l: &Layout) -> Result<Representation, RepError> {
    let mut out = r.clone();
    for w in &l.reversed {
        out = out.reverse_wire(w)?;
    }
    Ok(out)
}

/// Vertex feeding quiver arc `k`.
fn arc_vertex(l: &Layout, k: usize) -> &str {
    match l.shape {
        Shape::P(n) => &l.vertices[(k + 1) % n],
        _ => &l.vertices[k],
    }
}

fn to_quiver(r: &Representation, l: &Layout) -> Result<QuiverRep, RepError> {
    let r = normalized(r, l)?;
    let (positions, cyclic, pinned) = quiver_type(l.shape);
    let mut q = QuiverRep::zero(positions, cyclic);
    for (k, w) in l.wires.iter().enumerate() {
        q.dims[k] = r.dim(w);
    }
    if let Some(p) = pinned {
        q.dims[p - 1] = 1;
    }
    for k in 0..q.maps.len() {
        q.maps[k] = r.tensor(arc_vertex(l, k)).clone();
    }
    Ok(q)
}

fn from_quiver(d: &TensorDiagram, l: &Layout, q: &QuiverRep) -> Result<Representation, RepError> {
    let mut normal = d.clone();
    for w in &l.reversed {
        normal = normal.reverse_wire(w)?;
    }
    let dims = l.wires.iter().enumerate().map(|(k, w)| (w.clone(), q.dims[k])).collect();
    let tensors = (0..q.maps.len())
        .map(|k| (arc_vertex(l, k).to_string(), q.maps[k].clone()))
        .collect();
    let mut r = Representation::new(normal, dims, tensors)?;
    for w in &l.reversed {
        r = r.reverse_wire(w)?;
    }
    Ok(r)
}

/// Decomposition of a representation of a connected finite or tame diagram.
pub fn decompose(r: &Representation) -> Result<Decomposition, DecompError> {
    let l = layout_of(r.diagram())?;
    let q = to_quiver(r, &l)?;
    let descriptors = if q.cyclic { q.cyclic_blocks()? } else { q.intervals() };
    Ok(Decomposition::new(l.shape, descriptors))
}

/// The indecomposable named by `d`. On diagrams with a pinned position, a
/// block avoiding it is completed by the zero block there.
pub fn realize(diagram: &TensorDiagram, d: &IndecompDescriptor) -> Result<Representation, DecompError> {
    let l = layout_of(diagram)?;
    check_descriptor(l.shape, d)?;
    let mut blocks = vec![d.clone()];
    if let Some(fill) = pinned_filler(l.shape) {
        if !touches_pinned(l.shape, d) {
            blocks.push(fill);
        }
    }
    realize_checked(diagram, &l, &blocks)
}

/// Direct sum of blocks. On diagrams with a pinned position exactly one
/// block must pass through it.
pub fn realize_sum(diagram: &TensorDiagram, ds: &[IndecompDescriptor]) -> Result<Representation, DecompError> {
    let l = layout_of(diagram)?;
    for d in ds {
        check_descriptor(l.shape, d)?;
    }
    if pinned_filler(l.shape).is_some() {
        let through = ds.iter().filter(|d| touches_pinned(l.shape, d)).count();
        if through != 1 {
            return Err(DecompError::InvalidDescriptor(format!(
                "{through} blocks pass the pinned position of {}; exactly one is required",
                l.shape
            )));
        }
    }
    realize_checked(diagram, &l, ds)
}

/// The block at the pinned position with all maps zero.
pub fn pinned_filler(shape: Shape) -> Option<IndecompDescriptor> {
    match shape {
        Shape::A1(n) => Some(IndecompDescriptor::Interval { a: n + 1, b: n + 1 }),
        Shape::P(n) => Some(IndecompDescriptor::String { start: n, len: 1 }),
        _ => None,
    }
}

/// Dimension of the block on each wire of the layout.
pub fn descriptor_wire_dims(shape: Shape, d: &IndecompDescriptor) -> Vec<usize> {
    let (positions, _, pinned) = quiver_type(shape);
    let mut dims = block_dims(d, positions);
    if pinned.is_some() {
        dims.pop();
    }
    dims
}

fn realize_checked(diagram: &TensorDiagram, l: &Layout, ds: &[IndecompDescriptor]) -> Result<Representation, DecompError> {
    let (positions, cyclic, _) = quiver_type(l.shape);
    let q = ds
        .iter()
        .map(|d| realize_block(d, positions, cyclic))
        .fold(QuiverRep::zero(positions, cyclic), |acc, b| acc.direct_sum(&b));
    Ok(from_quiver(diagram, l, &q)?)
}

/// Isomorphism test, component by component.
pub fn isomorphic(r1: &Representation, r2: &Representation) -> Result<bool, DecompError> {
    if r1.diagram() != r2.diagram() {
        return Err(DecompError::DiagramMismatch);
    }
    if r1.dims() != r2.dims() {
        return Ok(false);
    }
    let comps = classify_diagram(r1.diagram())?;
    if comps.iter().any(|(_, c)| matches!(c, DiagramClass::Wild(_))) {
        return Err(DecompError::NotDecidableWild);
    }
    for (sub, _) in &comps {
        let a = decompose(&r1.restrict(sub)?)?;
        let b = decompose(&r2.restrict(sub)?)?;
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monodromy of the co-oriented quiver at its first position; for closed
/// paths this is the rank-at-most-one endomorphism of the pinned loop.
pub fn layout_monodromy(r: &Representation) -> Result<RatMatrix, DecompError> {
    let l = layout_of(r.diagram())?;
    if l.shape.is_finite() {
        return Err(DecompError::InvalidDescriptor(format!("{} has no monodromy", l.shape)));
    }
    let q = to_quiver(r, &l)?;
    let n = q.dims.len();
    let mut acc = RatMatrix::identity(q.dims[0]);
    for k in 0..n {
        acc = &q.maps[k] * &acc;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, RatMatrix};
    use crate::semigraph::shapes;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows)
    }

    #[test]
    fn open_path_example() {
        // A0(1): a single 2x2 matrix of rank 1
        let d = shapes::open_path(1);
        let r = Representation::new(
            d.clone(),
            [("e1".into(), 2), ("e2".into(), 2)].into(),
            [("v1".into(), m(&[&[1, 0], &[0, 0]]))].into(),
        )
        .unwrap();
        let dec = decompose(&r).unwrap();
        assert_eq!(
            dec.descriptors(),
            vec![
                IndecompDescriptor::Interval { a: 1, b: 1 },
                IndecompDescriptor::Interval { a: 1, b: 2 },
                IndecompDescriptor::Interval { a: 2, b: 2 },
            ]
        );
        let back = realize_sum(&d, &dec.descriptors()).unwrap();
        assert!(isomorphic(&r, &back).unwrap());
    }

    #[test]
    fn loop_with_reversed_wire() {
        let d = shapes::cycle(2).reverse_wire("e2").unwrap();
        let band = IndecompDescriptor::Band {
            poly: RatPoly::from_i64(&[1, 1, 1]),
            power: 2,
        };
        let s = IndecompDescriptor::String { start: 2, len: 3 };
        let r = realize_sum(&d, &[band.clone(), s.clone()]).unwrap();
        assert_eq!(r.diagram(), &d);
        assert_eq!(decompose(&r).unwrap().descriptors(), vec![band, s]);
    }

    #[test]
    fn closed_path_aliases() {
        let d = shapes::path(3);
        let v = IndecompDescriptor::Band {
            poly: RatPoly::linear(rat(5)),
            power: 1,
        };
        let dec = decompose(&realize(&d, &v).unwrap()).unwrap();
        assert_eq!(dec.blocks[0].alias, Some(PathAlias::Vlambda { lambda: rat(5) }));
        let w = IndecompDescriptor::String { start: 3, len: 2 };
        let dec = decompose(&realize(&d, &w).unwrap()).unwrap();
        assert_eq!(dec.blocks[0].alias, Some(PathAlias::W { i: 1 }));
        let s = IndecompDescriptor::String { start: 1, len: 1 };
        let dec = decompose(&realize(&d, &s).unwrap()).unwrap();
        assert_eq!(dec.len(), 2);
        assert!(dec.blocks.iter().all(|b| matches!(b.alias, Some(PathAlias::V0 { .. }))));
    }

    #[test]
    fn invalid_descriptors() {
        let d = shapes::path(2);
        let twice = IndecompDescriptor::String { start: 1, len: 4 };
        assert!(matches!(realize(&d, &twice), Err(DecompError::InvalidDescriptor(_))));
        let reducible = IndecompDescriptor::Band {
            poly: RatPoly::from_i64(&[-4, 0, 1]),
            power: 1,
        };
        assert!(matches!(realize(&shapes::cycle(2), &reducible), Err(DecompError::InvalidDescriptor(_))));
        assert!(matches!(
            realize(&shapes::open_claw(), &IndecompDescriptor::Interval { a: 1, b: 1 }),
            Err(DecompError::NotDecomposable(_))
        ));
    }

    #[test]
    fn half_open_pinned_block() {
        let d = shapes::half_open_path(2);
        let r = realize(&d, &IndecompDescriptor::Interval { a: 1, b: 2 }).unwrap();
        assert_eq!(r.dims().values().copied().collect::<Vec<_>>(), vec![1, 1]);
        let dec = decompose(&r).unwrap();
        assert_eq!(dec.len(), 2);
        assert!(matches!(
            realize_sum(&d, &[IndecompDescriptor::Interval { a: 1, b: 1 }]),
            Err(DecompError::InvalidDescriptor(_))
        ));
    }
}

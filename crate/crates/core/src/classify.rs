//! Finite / tame / wild classification of tensor diagrams, per component.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::semigraph::{SubdiagramRef, TensorDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("diagram has endpointless wires {0:?}")]
    NotNormalized(Vec<String>),
    #[error("diagram is not connected")]
    NotConnected,
}

/// The four shapes of finite and tame connected diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Shape {
    /// Open path: `n` vertices, `n + 1` wires, two dangling.
    A0(usize),
    /// Half-open path: `n` vertices, `n` wires, one dangling.
    A1(usize),
    /// Closed path: `n` vertices, `n - 1` wires.
    P(usize),
    /// Loop: `n` vertices, `n` wires.
    J(usize),
}

impl Shape {
    pub fn n(self) -> usize {
        match self {
            Shape::A0(n) | Shape::A1(n) | Shape::P(n) | Shape::J(n) => n,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Shape::A0(_) | Shape::A1(_))
    }

    pub fn name(self) -> &'static str {
        match self {
            Shape::A0(_) => "A0",
            Shape::A1(_) => "A1",
            Shape::P(_) => "P",
            Shape::J(_) => "J",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.n())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WitnessKind {
    OpenClaw,
    Needle,
    FigureEight,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::OpenClaw => "open-claw",
            WitnessKind::Needle => "needle",
            WitnessKind::FigureEight => "figure-eight",
        }
    }
}

/// A forbidden subdiagram at `vertex`. Wires are: three distinct non-loop
/// wires (open claw); the loop then one other wire (needle); two loops
/// (figure eight).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WildWitness {
    pub kind: WitnessKind,
    pub vertex: String,
    pub wires: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DiagramClass {
    Finite(Shape),
    Tame(Shape),
    Wild(WildWitness),
}

impl DiagramClass {
    pub fn label(&self) -> &'static str {
        match self {
            DiagramClass::Finite(_) => "finite",
            DiagramClass::Tame(_) => "tame",
            DiagramClass::Wild(_) => "wild",
        }
    }

    pub fn shape(&self) -> Option<Shape> {
        match self {
            DiagramClass::Finite(s) | DiagramClass::Tame(s) => Some(*s),
            DiagramClass::Wild(_) => None,
        }
    }

    pub fn is_wild(&self) -> bool {
        matches!(self, DiagramClass::Wild(_))
    }
}

/// Witness at `v` if its slot-degree is at least three.
fn witness_at(d: &TensorDiagram, v: &str) -> Option<WildWitness> {
    let nb = d.neighborhood(v).ok()?;
    if nb.degree() < 3 {
        return None;
    }
    let mut loops = Vec::new();
    let mut others = Vec::new();
    for w in d.wires() {
        if w.is_loop() && w.tail.as_deref() == Some(v) {
            loops.push(w.id.clone());
        } else if w.endpoints().any(|x| x == v) {
            others.push(w.id.clone());
        }
    }
    let (kind, wires) = match loops.len() {
        0 => (WitnessKind::OpenClaw, others[..3].to_vec()),
        1 => (WitnessKind::Needle, vec![loops[0].clone(), others[0].clone()]),
        _ => (WitnessKind::FigureEight, loops[..2].to_vec()),
    };
    Some(WildWitness {
        kind,
        vertex: v.to_string(),
        wires,
    })
}

/// The first forbidden subdiagram found, scanning vertices in order.
pub fn find_forbidden_witness(d: &TensorDiagram) -> Option<WildWitness> {
    d.vertices().iter().find_map(|v| witness_at(d, v))
}

fn require_normalized(d: &TensorDiagram) -> Result<(), ClassifyError> {
    let loose: Vec<String> = d
        .wires()
        .iter()
        .filter(|w| w.is_endpointless())
        .map(|w| w.id.clone())
        .collect();
    if loose.is_empty() {
        Ok(())
    } else {
        Err(ClassifyError::NotNormalized(loose))
    }
}

/// Class of one connected component, given as a subdiagram of `d`.
fn classify_component(d: &TensorDiagram, c: &SubdiagramRef) -> DiagramClass {
    if let Some(w) = c.vertices.iter().find_map(|v| witness_at(d, v)) {
        return DiagramClass::Wild(w);
    }
    let n = c.vertices.len();
    let dangling = c
        .wires
        .iter()
        .filter(|id| d.wire(id).is_some_and(|w| w.is_dangling()))
        .count();
    match dangling {
        2 => DiagramClass::Finite(Shape::A0(n)),
        1 => DiagramClass::Finite(Shape::A1(n)),
        _ if c.wires.len() + 1 == n => DiagramClass::Tame(Shape::P(n)),
        _ => DiagramClass::Tame(Shape::J(n)),
    }
}

/// Class of every connected component.
pub fn classify_diagram(
    d: &TensorDiagram,
) -> Result<Vec<(SubdiagramRef, DiagramClass)>, ClassifyError> {
    require_normalized(d)?;
    Ok(d
        .connected_components()
        .into_iter()
        .map(|c| {
            let class = classify_component(d, &c);
            (c, class)
        })
        .collect())
}

/// Class of a connected diagram.
pub fn classify_connected(d: &TensorDiagram) -> Result<DiagramClass, ClassifyError> {
    let mut all = classify_diagram(d)?;
    if all.len() != 1 {
        return Err(ClassifyError::NotConnected);
    }
    Ok(all.pop().unwrap().1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigraph::shapes;

    fn single(d: &TensorDiagram) -> DiagramClass {
        classify_connected(d).unwrap()
    }

    #[test]
    fn forbidden_shapes() {
        let claw = single(&shapes::open_claw());
        assert!(matches!(claw, DiagramClass::Wild(WildWitness { kind: WitnessKind::OpenClaw, .. })));
        let needle = single(&shapes::needle());
        assert_eq!(
            needle,
            DiagramClass::Wild(WildWitness {
                kind: WitnessKind::Needle,
                vertex: "v1".into(),
                wires: vec!["e1".into(), "e2".into()]
            })
        );
        let eight = single(&shapes::figure_eight());
        assert!(matches!(eight, DiagramClass::Wild(WildWitness { kind: WitnessKind::FigureEight, .. })));
    }

    #[test]
    fn finite_and_tame() {
        assert_eq!(single(&shapes::open_path(3)), DiagramClass::Finite(Shape::A0(3)));
        assert_eq!(single(&shapes::half_open_path(2)), DiagramClass::Finite(Shape::A1(2)));
        assert_eq!(single(&shapes::cycle(3)), DiagramClass::Tame(Shape::J(3)));
        assert_eq!(single(&shapes::path(4)), DiagramClass::Tame(Shape::P(4)));
        assert_eq!(single(&shapes::path(1)), DiagramClass::Tame(Shape::P(1)));
        assert_eq!(find_forbidden_witness(&shapes::path(4)), None);
    }

    #[test]
    fn endpointless_wires_are_rejected() {
        let d = TensorDiagram::from_spec(&[], &[("e0", None, None)]).unwrap();
        assert_eq!(
            classify_diagram(&d),
            Err(ClassifyError::NotNormalized(vec!["e0".into()]))
        );
    }
}

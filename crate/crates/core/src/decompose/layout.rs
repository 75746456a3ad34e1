use crate::classify::{classify_connected, DiagramClass, Shape};
use crate::semigraph::{End, Slot, TensorDiagram};

use super::DecompError;

/// How a path or loop diagram is read as a sequence: wires and vertices in
/// traversal order, and the wires whose orientation runs against it.
///
/// The order depends only on the underlying semi-graph and the ids, so it
/// is unchanged by reversing wires:
/// - open paths start at the smaller dangling wire;
/// - half-open paths start at the dangling wire;
/// - closed paths start at the end vertex with the smaller id;
/// - loops start at the smallest wire, entering its smaller endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub shape: Shape,
    pub wires: Vec<String>,
    pub vertices: Vec<String>,
    pub reversed: Vec<String>,
}

fn other_slot(d: &TensorDiagram, v: &str, s: &Slot) -> Option<Slot> {
    d.slots(v).into_iter().find(|x| x != s)
}

/// The vertex and slot at the far end of the wire leaving through `s`.
fn across(d: &TensorDiagram, s: &Slot) -> Option<(String, Slot)> {
    let w = d.wire(&s.wire)?;
    let end = match s.end {
        End::Tail => End::Head,
        End::Head => End::Tail,
    };
    let v = match end {
        End::Tail => w.tail.clone(),
        End::Head => w.head.clone(),
    }?;
    Some((v, Slot::new(&s.wire, end)))
}

/// Walks from `v`, which was entered through `arrived`, until the walk
/// leaves through a dangling end, reaches a vertex with no other slot, or
/// comes back to `stop_wire`.
fn walk(
    d: &TensorDiagram,
    mut v: String,
    mut arrived: Option<Slot>,
    stop_wire: Option<&str>,
    layout: &mut Layout,
) {
    loop {
        layout.vertices.push(v.clone());
        let next = match &arrived {
            Some(s) => other_slot(d, &v, s),
            None => d.slots(&v).into_iter().next(),
        };
        let Some(out) = next else { return };
        if stop_wire == Some(out.wire.as_str()) {
            if out.end == End::Head {
                // the first wire was entered through its tail
                layout.reversed.push(out.wire.clone());
            }
            return;
        }
        layout.wires.push(out.wire.clone());
        if out.end == End::Head {
            layout.reversed.push(out.wire.clone());
        }
        match across(d, &out) {
            Some((u, s)) => {
                v = u;
                arrived = Some(s);
            }
            None => return,
        }
    }
}

/// Layout of a connected finite or tame diagram.
pub fn layout_of(d: &TensorDiagram) -> Result<Layout, DecompError> {
    let class = classify_connected(d)?;
    let shape = match class {
        DiagramClass::Wild(w) => return Err(DecompError::NotDecomposable(w)),
        DiagramClass::Finite(s) | DiagramClass::Tame(s) => s,
    };
    let mut layout = Layout {
        shape,
        wires: Vec::new(),
        vertices: Vec::new(),
        reversed: Vec::new(),
    };
    match shape {
        Shape::A0(_) | Shape::A1(_) => {
            let first = d
                .wires()
                .iter()
                .find(|w| w.is_dangling())
                .expect("finite shapes have a dangling wire");
            let (v, end) = match (&first.tail, &first.head) {
                (Some(t), None) => (t.clone(), End::Tail),
                (None, Some(h)) => (h.clone(), End::Head),
                _ => unreachable!("dangling wire has one endpoint"),
            };
            layout.wires.push(first.id.clone());
            if end == End::Tail {
                layout.reversed.push(first.id.clone());
            }
            walk(d, v, Some(Slot::new(&first.id, end)), None, &mut layout);
        }
        Shape::P(_) => {
            let start = d
                .vertices()
                .iter()
                .find(|v| d.degree(v).unwrap_or(0) <= 1)
                .expect("a path has an end vertex")
                .clone();
            walk(d, start, None, None, &mut layout);
        }
        Shape::J(_) => {
            let first = &d.wires()[0];
            let t = first.tail.clone().unwrap();
            let h = first.head.clone().unwrap();
            let (v, end) = if first.is_loop() || h <= t {
                (h, End::Head)
            } else {
                (t, End::Tail)
            };
            layout.wires.push(first.id.clone());
            if end == End::Tail {
                layout.reversed.push(first.id.clone());
            }
            walk(
                d,
                v,
                Some(Slot::new(&first.id, end)),
                Some(&first.id),
                &mut layout,
            );
            // the closing step may have re-recorded the first wire
            layout.reversed.sort();
            layout.reversed.dedup();
        }
    }
    Ok(layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigraph::shapes;

    #[test]
    fn canonical_shapes_are_co_oriented() {
        for d in [
            shapes::open_path(3),
            shapes::half_open_path(3),
            shapes::path(4),
            shapes::cycle(3),
            shapes::cycle(1),
            shapes::cycle(2),
            shapes::path(1),
        ] {
            let l = layout_of(&d).unwrap();
            assert!(l.reversed.is_empty(), "{:?}", l);
            let expected: Vec<String> = d.wires().iter().map(|w| w.id.clone()).collect();
            assert_eq!(l.wires, expected);
            assert_eq!(l.vertices, d.vertices());
        }
    }

    #[test]
    fn reversal_keeps_order() {
        let d = shapes::cycle(3);
        let r = d.reverse_wire("e2").unwrap();
        let a = layout_of(&d).unwrap();
        let b = layout_of(&r).unwrap();
        assert_eq!(a.wires, b.wires);
        assert_eq!(a.vertices, b.vertices);
        assert_eq!(b.reversed, vec!["e2".to_string()]);
    }
}

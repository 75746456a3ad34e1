#![allow(dead_code)]

use num_complex::Complex64;
use tdr_core::classify::Shape;
use tdr_core::flows::FlowAssignment;
use tdr_core::generate::SeededStream;
use tdr_core::semigraph::{shapes, Wire};
use tdr_core::{Dims, Representation, TensorDiagram};

pub fn uniform(d: &TensorDiagram, k: usize) -> Dims {
    d.wire_ids().map(|w| (w.to_string(), k)).collect()
}

pub fn random_dims(s: &mut SeededStream, d: &TensorDiagram, max: usize) -> Dims {
    d.wire_ids().map(|w| (w.to_string(), s.below(max + 1))).collect()
}

pub fn random_rep(s: &mut SeededStream, d: &TensorDiagram, max_dim: usize) -> Representation {
    let dims = random_dims(s, d, max_dim);
    s.representation(d, &dims).unwrap()
}

/// Random diagram on `v1..vn` with `m` wires; with `closed` every wire has
/// both ends.
pub fn random_diagram(s: &mut SeededStream, n: usize, m: usize, closed: bool) -> TensorDiagram {
    let pick = |s: &mut SeededStream| -> Option<String> {
        if !closed && s.below(4) == 0 {
            None
        } else {
            Some(format!("v{}", 1 + s.below(n)))
        }
    };
    let wires: Vec<Wire> = (1..=m)
        .map(|i| {
            let tail = pick(s);
            let head = if tail.is_none() {
                Some(format!("v{}", 1 + s.below(n)))
            } else {
                pick(s)
            };
            Wire {
                id: format!("e{i}"),
                tail,
                head,
            }
        })
        .collect();
    TensorDiagram::new((1..=n).map(|i| format!("v{i}")), wires).unwrap()
}

/// Reverses each wire with probability one half.
pub fn random_orientation(s: &mut SeededStream, d: &TensorDiagram) -> TensorDiagram {
    let mut out = d.clone();
    for w in d.wire_ids() {
        if s.below(2) == 0 {
            out = out.reverse_wire(w).unwrap();
        }
    }
    out
}

pub fn shape_diagram(shape: Shape) -> TensorDiagram {
    match shape {
        Shape::A0(n) => shapes::open_path(n),
        Shape::A1(n) => shapes::half_open_path(n),
        Shape::P(n) => shapes::path(n),
        Shape::J(n) => shapes::cycle(n),
    }
}

/// A random finite or tame shape with random orientation.
pub fn random_tame(s: &mut SeededStream, max_n: usize) -> TensorDiagram {
    let n = 1 + s.below(max_n);
    let shape = match s.below(4) {
        0 => Shape::A0(n),
        1 => Shape::A1(n),
        2 => Shape::P(n),
        _ => Shape::J(n),
    };
    random_orientation(s, &shape_diagram(shape))
}

/// A random closed tame shape with random orientation.
pub fn random_closed(s: &mut SeededStream, max_n: usize) -> TensorDiagram {
    let n = 1 + s.below(max_n);
    let shape = if s.below(2) == 0 { Shape::P(n) } else { Shape::J(n) };
    random_orientation(s, &shape_diagram(shape))
}

/// Random diagram with `1..=max_v` vertices and `min_w..=max_w` wires.
pub fn sized_diagram(s: &mut SeededStream, max_v: usize, min_w: usize, max_w: usize, closed: bool) -> TensorDiagram {
    let n = 1 + s.below(max_v);
    let m = min_w + s.below(max_w - min_w + 1);
    random_diagram(s, n, m, closed)
}

pub fn random_unit(s: &mut SeededStream) -> Complex64 {
    let modulus = 0.5 + s.below(1000) as f64 / 1000.0;
    let phase = s.below(6283) as f64 / 1000.0;
    Complex64::from_polar(modulus, phase)
}

/// A full flow built by pushing random factors around closed walks, which
/// keeps every vertex balanced.
pub fn random_flow(s: &mut SeededStream, d: &TensorDiagram) -> FlowAssignment {
    let mut f: FlowAssignment = d.wire_ids().map(|w| (w.to_string(), Complex64::new(1.0, 0.0))).collect();
    if d.wires().is_empty() {
        return f;
    }
    for _ in 0..6 {
        let start = d.vertices()[s.below(d.vertices().len())].clone();
        let c = random_unit(s);
        let mut steps: Vec<(String, bool)> = Vec::new();
        let mut at = start.clone();
        for _ in 0..64 {
            let incident: Vec<&Wire> = d.wires().iter().filter(|w| w.endpoints().any(|x| x == at)).collect();
            if incident.is_empty() {
                break;
            }
            let w = incident[s.below(incident.len())];
            let forward = if w.is_loop() { true } else { w.tail.as_deref() == Some(at.as_str()) };
            at = if forward { w.head.clone().unwrap() } else { w.tail.clone().unwrap() };
            steps.push((w.id.clone(), forward));
            if at == start {
                for (id, fw) in &steps {
                    let x = f[id];
                    f.insert(id.clone(), if *fw { x * c } else { x / c });
                }
                break;
            }
        }
    }
    f
}

//! Partial multiplicative flows on closed diagrams and their extension over
//! an induced subdiagram.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_complex::Complex64;
use thiserror::Error;

use crate::semigraph::TensorDiagram;

/// Default tolerance for flow conditions.
pub const FLOW_TOL: f64 = 1e-9;

/// Values below this modulus are treated as zero.
const ZERO_MODULUS: f64 = 1e-12;

/// Nonzero complex value per wire; the domain may be partial.
pub type FlowAssignment = BTreeMap<String, Complex64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("flow is not defined exactly outside the induced subdiagram (wire {0:?})")]
    DomainMismatch(String),
    #[error("flow value on wire {0:?} is zero")]
    ZeroValue(String),
    #[error("diagram is not closed")]
    NotClosed,
    #[error("partial flow is invalid: {0}")]
    InvalidPartialFlow(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
}

/// Wires with at least one endpoint, all of them in `u`.
pub fn induced_wires(d: &TensorDiagram, u: &BTreeSet<String>) -> BTreeSet<String> {
    d.wires()
        .iter()
        .filter(|w| !w.is_endpointless() && w.endpoints().all(|v| u.contains(v)))
        .map(|w| w.id.clone())
        .collect()
}

/// Product of outgoing values times inverse incoming values at `v`, over
/// the wires present in `f`.
fn balance(d: &TensorDiagram, f: &FlowAssignment, v: &str) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for w in d.wires() {
        let Some(&x) = f.get(&w.id) else { continue };
        if w.tail.as_deref() == Some(v) {
            acc *= x;
        }
        if w.head.as_deref() == Some(v) {
            acc /= x;
        }
    }
    acc
}

fn check_domain(
    d: &TensorDiagram,
    f: &FlowAssignment,
    u: &BTreeSet<String>,
) -> Result<BTreeSet<String>, FlowError> {
    if let Some(v) = u.iter().find(|v| !d.has_vertex(v)) {
        return Err(FlowError::UnknownVertex(v.clone()));
    }
    let inner = induced_wires(d, u);
    for w in d.wires() {
        if inner.contains(&w.id) == f.contains_key(&w.id) {
            return Err(FlowError::DomainMismatch(w.id.clone()));
        }
    }
    if let Some(extra) = f.keys().find(|k| d.wire(k).is_none()) {
        return Err(FlowError::DomainMismatch(extra.clone()));
    }
    if let Some((w, _)) = f.iter().find(|(_, x)| x.norm() <= ZERO_MODULUS) {
        return Err(FlowError::ZeroValue(w.clone()));
    }
    Ok(inner)
}

/// True iff the flow condition holds within `tol` at every vertex outside `u`.
pub fn verify_partial_flow(
    d: &TensorDiagram,
    f: &FlowAssignment,
    u: &BTreeSet<String>,
    tol: f64,
) -> Result<bool, FlowError> {
    check_domain(d, f, u)?;
    Ok(d
        .vertices()
        .iter()
        .filter(|v| !u.contains(*v))
        .all(|v| (balance(d, f, v) - 1.0).norm() <= tol))
}

/// Extends a valid partial flow to every wire, with the default tolerance.
pub fn extend_flow(
    d: &TensorDiagram,
    f: &FlowAssignment,
    u: &BTreeSet<String>,
) -> Result<FlowAssignment, FlowError> {
    extend_flow_tol(d, f, u, FLOW_TOL)
}

/// Extends a partial flow over `T[u]`: for each component, a spanning
/// multi-tree is peeled leaf by leaf (smallest id first), each leaf's wires
/// to its parent getting a principal root of the leaf's inverse imbalance.
/// Other wires inside `T[u]`, loops included, get 1.
pub fn extend_flow_tol(
    d: &TensorDiagram,
    f: &FlowAssignment,
    u: &BTreeSet<String>,
    tol: f64,
) -> Result<FlowAssignment, FlowError> {
    if !d.is_closed() {
        return Err(FlowError::NotClosed);
    }
    let inner = check_domain(d, f, u)?;
    if let Some(v) = d
        .vertices()
        .iter()
        .find(|v| !u.contains(*v) && (balance(d, f, v) - 1.0).norm() > tol)
    {
        return Err(FlowError::InvalidPartialFlow(format!(
            "condition fails at {v:?}"
        )));
    }
    let mut out = f.clone();
    for w in &inner {
        out.insert(w.clone(), Complex64::new(1.0, 0.0));
    }

    // simple merged graph on u: neighbor -> parallel wires
    let mut adj: BTreeMap<&str, BTreeMap<&str, Vec<&str>>> =
        u.iter().map(|v| (v.as_str(), BTreeMap::new())).collect();
    for w in d.wires() {
        if !inner.contains(&w.id) || w.is_loop() {
            continue;
        }
        let (a, b) = (w.tail.as_deref().unwrap(), w.head.as_deref().unwrap());
        adj.get_mut(a).unwrap().entry(b).or_default().push(&w.id);
        adj.get_mut(b).unwrap().entry(a).or_default().push(&w.id);
    }

    let mut residual: BTreeMap<&str, Complex64> =
        u.iter().map(|v| (v.as_str(), balance(d, f, v))).collect();
    let mut visited: BTreeSet<&str> = BTreeSet::new();
    for root in u.iter().map(String::as_str) {
        if visited.contains(root) {
            continue;
        }
        // BFS spanning tree
        let mut tree: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        let mut queue = VecDeque::from([root]);
        visited.insert(root);
        tree.insert(root, BTreeSet::new());
        while let Some(x) = queue.pop_front() {
            for &y in adj[x].keys() {
                if visited.insert(y) {
                    tree.entry(x).or_default().insert(y);
                    tree.entry(y).or_default().insert(x);
                    queue.push_back(y);
                }
            }
        }
        while tree.len() > 1 {
            let leaf = *tree
                .iter()
                .find(|(_, nb)| nb.len() == 1)
                .map(|(v, _)| v)
                .expect("a finite tree has a leaf");
            let parent = *tree[leaf].iter().next().unwrap();
            let wires = &adj[leaf][parent];
            let k = wires.len() as f64;
            let t = residual[leaf].inv().powf(1.0 / k);
            for &id in wires {
                let w = d.wire(id).unwrap();
                let value = if w.tail.as_deref() == Some(leaf) { t } else { t.inv() };
                out.insert(id.to_string(), value);
            }
            residual.insert(leaf, Complex64::new(1.0, 0.0));
            let r = residual[parent] * t.powf(-k);
            residual.insert(parent, r);
            tree.remove(leaf);
            tree.get_mut(parent).unwrap().remove(leaf);
        }
        let last = *tree.keys().next().unwrap();
        if (residual[last] - 1.0).norm() > tol {
            return Err(FlowError::InvalidPartialFlow(format!(
                "imbalance {} left on the component of {root:?}",
                residual[last]
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigraph::shapes;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn set(vs: &[&str]) -> BTreeSet<String> {
        vs.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn two_cycle_condition_cancels() {
        let d = shapes::cycle(2);
        let f: FlowAssignment = [("e1".into(), c(2.0, 1.0)), ("e2".into(), c(2.0, 1.0))].into();
        assert!(verify_partial_flow(&d, &f, &set(&["v1"]), FLOW_TOL).unwrap());
    }

    #[test]
    fn empty_u_is_unchanged() {
        let d = shapes::cycle(3);
        let f: FlowAssignment = ["e1", "e2", "e3"]
            .iter()
            .map(|w| (w.to_string(), c(0.0, 1.0)))
            .collect();
        assert_eq!(extend_flow(&d, &f, &BTreeSet::new()).unwrap(), f);
    }

    #[test]
    fn star_center_balances() {
        // center x with leaves a, b inside u; boundary wires from outside y
        let d = TensorDiagram::from_spec(
            &["x", "a", "b", "y"],
            &[
                ("e1", Some("x"), Some("a")),
                ("e2", Some("b"), Some("x")),
                ("e3", Some("a"), Some("y")),
                ("e4", Some("y"), Some("b")),
                ("e5", Some("y"), Some("x")),
                ("e6", Some("x"), Some("y")),
            ],
        )
        .unwrap();
        let u = set(&["x", "a", "b"]);
        let f: FlowAssignment = [
            ("e3".into(), c(3.0, 0.0)),
            ("e4".into(), c(0.5, 2.0)),
            ("e5".into(), c(1.0, -1.0)),
        ]
        .into_iter()
        .chain([(
            "e6".to_string(),
            c(0.5, 2.0) * c(1.0, -1.0) / c(3.0, 0.0),
        )])
        .collect();
        assert!(verify_partial_flow(&d, &f, &u, FLOW_TOL).unwrap());
        let total = extend_flow(&d, &f, &u).unwrap();
        assert!(verify_partial_flow(&d, &total, &BTreeSet::new(), FLOW_TOL).unwrap());
        for (w, x) in &f {
            assert_eq!(total[w], *x);
        }
    }

    #[test]
    fn domain_is_checked() {
        let d = shapes::cycle(2);
        let f: FlowAssignment = [("e1".into(), c(1.0, 0.0))].into();
        assert!(matches!(
            verify_partial_flow(&d, &f, &BTreeSet::new(), FLOW_TOL),
            Err(FlowError::DomainMismatch(_))
        ));
    }
}

//! Tensor diagrams as directed semi-graphs, and the surgery performed on them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigraphError {
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("wire {wire:?} references unknown vertex {vertex:?}")]
    UnknownVertexRef { wire: String, vertex: String },
    #[error("unknown wire {0:?}")]
    UnknownWire(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("slots do not partition the neighborhood of {0:?}")]
    NotAPartition(String),
    #[error("not a subdiagram: {0}")]
    NotASubdiagram(String),
    #[error("wire {0:?} cannot be contracted")]
    NotContractible(String),
}

/// A wire; `None` marks a dangling end.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wire {
    pub id: String,
    pub tail: Option<String>,
    pub head: Option<String>,
}

impl Wire {
    pub fn new(id: &str, tail: Option<&str>, head: Option<&str>) -> Self {
        Wire {
            id: id.to_string(),
            tail: tail.map(str::to_string),
            head: head.map(str::to_string),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.tail.is_some() && self.tail == self.head
    }

    pub fn is_dangling(&self) -> bool {
        self.tail.is_some() != self.head.is_some()
    }

    pub fn is_endpointless(&self) -> bool {
        self.tail.is_none() && self.head.is_none()
    }

    pub fn endpoints(&self) -> impl Iterator<Item = &str> {
        self.tail.iter().chain(self.head.iter()).map(String::as_str)
    }

    /// The endpoint opposite to `v`, for a non-loop wire touching `v`.
    pub fn other_end(&self, v: &str) -> Option<&str> {
        if self.tail.as_deref() == Some(v) {
            self.head.as_deref()
        } else {
            self.tail.as_deref()
        }
    }

    fn end(&self, end: End) -> Option<&str> {
        match end {
            End::Tail => self.tail.as_deref(),
            End::Head => self.head.as_deref(),
        }
    }

    fn end_mut(&mut self, end: End) -> &mut Option<String> {
        match end {
            End::Tail => &mut self.tail,
            End::Head => &mut self.head,
        }
    }
}

/// Serialized form of a diagram, as read from and written to JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRecord {
    pub vertices: Vec<String>,
    pub wires: Vec<Wire>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

/// One end of a wire at a vertex. A loop occupies two slots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub wire: String,
    pub end: End,
}

impl Slot {
    pub fn new(wire: &str, end: End) -> Self {
        Slot {
            wire: wire.to_string(),
            end,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexNeighborhood {
    /// Wires whose head is the vertex.
    pub incoming: Vec<String>,
    /// Wires whose tail is the vertex.
    pub outgoing: Vec<String>,
}

impl VertexNeighborhood {
    pub fn degree(&self) -> usize {
        self.incoming.len() + self.outgoing.len()
    }
}

/// A directed semi-graph with lexicographically sorted vertex and wire ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorDiagram {
    vertices: Vec<String>,
    wires: Vec<Wire>,
}

/// Checks ids and references and returns the canonical diagram.
pub fn validate_diagram(raw: DiagramRecord) -> Result<TensorDiagram, SemigraphError> {
    TensorDiagram::new(raw.vertices, raw.wires)
}

impl TensorDiagram {
    pub fn new(
        vertices: impl IntoIterator<Item = String>,
        wires: impl IntoIterator<Item = Wire>,
    ) -> Result<Self, SemigraphError> {
        let mut vertices: Vec<String> = vertices.into_iter().collect();
        let mut wires: Vec<Wire> = wires.into_iter().collect();
        vertices.sort();
        wires.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(SemigraphError::DuplicateId(w[0].clone()));
        }
        if let Some(w) = wires.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(SemigraphError::DuplicateId(w[0].id.clone()));
        }
        for w in &wires {
            for v in w.endpoints() {
                if vertices.binary_search_by(|x| x.as_str().cmp(v)).is_err() {
                    return Err(SemigraphError::UnknownVertexRef {
                        wire: w.id.clone(),
                        vertex: v.to_string(),
                    });
                }
            }
        }
        Ok(TensorDiagram { vertices, wires })
    }

    /// Shorthand for tests and examples: `(id, tail, head)` triples.
    pub fn from_spec(
        vertices: &[&str],
        wires: &[(&str, Option<&str>, Option<&str>)],
    ) -> Result<Self, SemigraphError> {
        Self::new(
            vertices.iter().map(|v| v.to_string()),
            wires.iter().map(|(id, t, h)| Wire::new(id, *t, *h)),
        )
    }

    pub fn empty() -> Self {
        TensorDiagram {
            vertices: Vec::new(),
            wires: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn wire_ids(&self) -> impl Iterator<Item = &str> {
        self.wires.iter().map(|w| w.id.as_str())
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertex_index(v).is_some()
    }

    pub fn vertex_index(&self, v: &str) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).ok()
    }

    pub fn wire_index(&self, id: &str) -> Option<usize> {
        self.wires.binary_search_by(|w| w.id.as_str().cmp(id)).ok()
    }

    pub fn wire(&self, id: &str) -> Option<&Wire> {
        self.wire_index(id).map(|i| &self.wires[i])
    }

    fn require_wire(&self, id: &str) -> Result<&Wire, SemigraphError> {
        self.wire(id)
            .ok_or_else(|| SemigraphError::UnknownWire(id.to_string()))
    }

    fn require_vertex(&self, v: &str) -> Result<(), SemigraphError> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(SemigraphError::UnknownVertex(v.to_string()))
        }
    }

    pub fn neighborhood(&self, v: &str) -> Result<VertexNeighborhood, SemigraphError> {
        self.require_vertex(v)?;
        let mut incoming = Vec::new();
        let mut outgoing = Vec::new();
        for w in &self.wires {
            if w.head.as_deref() == Some(v) {
                incoming.push(w.id.clone());
            }
            if w.tail.as_deref() == Some(v) {
                outgoing.push(w.id.clone());
            }
        }
        Ok(VertexNeighborhood { incoming, outgoing })
    }

    /// Number of incident slots; a loop counts twice.
    pub fn degree(&self, v: &str) -> Result<usize, SemigraphError> {
        Ok(self.neighborhood(v)?.degree())
    }

    /// Slots at `v`, in wire order, tail before head.
    pub fn slots(&self, v: &str) -> Vec<Slot> {
        let mut out = Vec::new();
        for w in &self.wires {
            for end in [End::Tail, End::Head] {
                if w.end(end) == Some(v) {
                    out.push(Slot::new(&w.id, end));
                }
            }
        }
        out
    }

    /// True when every wire has both endpoints.
    pub fn is_closed(&self) -> bool {
        self.wires
            .iter()
            .all(|w| w.tail.is_some() && w.head.is_some())
    }

    pub fn dangling_wires(&self) -> Vec<&Wire> {
        self.wires.iter().filter(|w| w.is_dangling()).collect()
    }

    pub fn to_record(&self) -> DiagramRecord {
        DiagramRecord {
            vertices: self.vertices.clone(),
            wires: self.wires.clone(),
        }
    }

    /// Canonical JSON text.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("diagram serializes")
    }

    /// Drops endpointless wires and reports their ids.
    pub fn normalize(&self) -> (TensorDiagram, Vec<String>) {
        let (gone, kept): (Vec<Wire>, Vec<Wire>) =
            self.wires.iter().cloned().partition(Wire::is_endpointless);
        (
            TensorDiagram {
                vertices: self.vertices.clone(),
                wires: kept,
            },
            gone.into_iter().map(|w| w.id).collect(),
        )
    }

    pub fn reverse_wire(&self, id: &str) -> Result<TensorDiagram, SemigraphError> {
        let i = self
            .wire_index(id)
            .ok_or_else(|| SemigraphError::UnknownWire(id.to_string()))?;
        let mut out = self.clone();
        let w = &mut out.wires[i];
        std::mem::swap(&mut w.tail, &mut w.head);
        Ok(out)
    }

    /// Smallest `_split<k>` not already used as a wire id.
    pub fn fresh_wire_id(&self) -> String {
        (1..)
            .map(|k| format!("_split{k}"))
            .find(|id| self.wire_index(id).is_none())
            .unwrap()
    }

    /// Replaces `v` by `v·1` (carrying `part1`) and `v·2` (carrying `part2`)
    /// joined by a fresh wire `v·1 → v·2`.
    pub fn split_vertex(
        &self,
        v: &str,
        part1: &[Slot],
        part2: &[Slot],
    ) -> Result<Splitting, SemigraphError> {
        self.require_vertex(v)?;
        let all: BTreeSet<Slot> = self.slots(v).into_iter().collect();
        let p1: BTreeSet<Slot> = part1.iter().cloned().collect();
        let p2: BTreeSet<Slot> = part2.iter().cloned().collect();
        let disjoint = p1.is_disjoint(&p2) && p1.len() == part1.len() && p2.len() == part2.len();
        let union: BTreeSet<Slot> = p1.union(&p2).cloned().collect();
        if !disjoint || union != all {
            return Err(SemigraphError::NotAPartition(v.to_string()));
        }
        let first = format!("{v}·1");
        let second = format!("{v}·2");
        for name in [&first, &second] {
            if self.has_vertex(name) {
                return Err(SemigraphError::DuplicateId(name.clone()));
            }
        }
        let fresh = self.fresh_wire_id();
        let mut wires = self.wires.clone();
        for w in wires.iter_mut() {
            for end in [End::Tail, End::Head] {
                if w.end(end) == Some(v) {
                    let slot = Slot::new(&w.id, end);
                    let target = if p1.contains(&slot) { &first } else { &second };
                    *w.end_mut(end) = Some(target.clone());
                }
            }
        }
        wires.push(Wire::new(&fresh, Some(&first), Some(&second)));
        let vertices = self
            .vertices
            .iter()
            .filter(|x| x.as_str() != v)
            .cloned()
            .chain([first.clone(), second.clone()]);
        Ok(Splitting {
            diagram: TensorDiagram::new(vertices, wires)?,
            wire: fresh,
            first,
            second,
        })
    }

    /// Splitting by wires rather than slots: every slot of a listed wire at
    /// `v` goes to that side.
    pub fn split_vertex_by_wires(
        &self,
        v: &str,
        part1: &[&str],
        part2: &[&str],
    ) -> Result<Splitting, SemigraphError> {
        let slots = self.slots(v);
        let pick = |ids: &[&str]| -> Vec<Slot> {
            slots
                .iter()
                .filter(|s| ids.contains(&s.wire.as_str()))
                .cloned()
                .collect()
        };
        self.split_vertex(v, &pick(part1), &pick(part2))
    }

    /// Removes wire `id` and merges its two distinct endpoints into `merged`.
    pub fn contract_wire(&self, id: &str, merged: &str) -> Result<TensorDiagram, SemigraphError> {
        let w = self.require_wire(id)?;
        let (Some(a), Some(b)) = (w.tail.clone(), w.head.clone()) else {
            return Err(SemigraphError::NotContractible(id.to_string()));
        };
        if a == b {
            return Err(SemigraphError::NotContractible(id.to_string()));
        }
        let vertices: Vec<String> = self
            .vertices
            .iter()
            .filter(|x| **x != a && **x != b)
            .cloned()
            .chain([merged.to_string()])
            .collect();
        let wires = self.wires.iter().filter(|x| x.id != id).map(|x| {
            let mut x = x.clone();
            for end in [End::Tail, End::Head] {
                let e = x.end_mut(end);
                if e.as_deref() == Some(&a) || e.as_deref() == Some(&b) {
                    *e = Some(merged.to_string());
                }
            }
            x
        });
        TensorDiagram::new(vertices, wires)
    }

    /// Renames vertices; ids missing from `map` are kept.
    pub fn rename_vertices(
        &self,
        map: &BTreeMap<String, String>,
    ) -> Result<TensorDiagram, SemigraphError> {
        let rn = |v: &String| map.get(v).cloned().unwrap_or_else(|| v.clone());
        let wires = self.wires.iter().map(|w| Wire {
            id: w.id.clone(),
            tail: w.tail.as_ref().map(rn),
            head: w.head.as_ref().map(rn),
        });
        TensorDiagram::new(self.vertices.iter().map(rn), wires)
    }

    /// The induced subdiagram on `vertices`: every wire with at least one
    /// endpoint, all of whose endpoints lie in the set.
    pub fn induced(&self, vertices: &[String]) -> SubdiagramRef {
        let set: BTreeSet<&str> = vertices.iter().map(String::as_str).collect();
        let wires = self
            .wires
            .iter()
            .filter(|w| !w.is_endpointless() && w.endpoints().all(|v| set.contains(v)))
            .map(|w| w.id.clone())
            .collect();
        SubdiagramRef::new(vertices.iter().cloned(), wires)
    }

    pub fn whole(&self) -> SubdiagramRef {
        SubdiagramRef::new(
            self.vertices.iter().cloned(),
            self.wires.iter().map(|w| w.id.clone()).collect(),
        )
    }

    /// Maximal connected pieces. Components with vertices come first, ordered
    /// by their smallest vertex; endpointless wires follow as singletons.
    pub fn connected_components(&self) -> Vec<SubdiagramRef> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for w in &self.wires {
            if let (Some(t), Some(h)) = (&w.tail, &w.head) {
                let a = find(&mut parent, self.vertex_index(t).unwrap());
                let b = find(&mut parent, self.vertex_index(h).unwrap());
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, (Vec<String>, Vec<String>)> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().0.push(self.vertices[i].clone());
        }
        let mut loose = Vec::new();
        for w in &self.wires {
            match w.endpoints().next() {
                Some(v) => {
                    let r = find(&mut parent, self.vertex_index(v).unwrap());
                    groups.get_mut(&r).unwrap().1.push(w.id.clone());
                }
                None => loose.push(SubdiagramRef::new([], vec![w.id.clone()])),
            }
        }
        groups
            .into_values()
            .map(|(v, w)| SubdiagramRef::new(v, w))
            .chain(loose)
            .collect()
    }

    /// The two splitting passes that make `s` an induced subdiagram whose
    /// remaining attachments go through wires to be pinned to dimension one.
    pub fn isolate_subdiagram(&self, s: &SubdiagramRef) -> Result<Isolation, SemigraphError> {
        s.check_in(self)?;
        // current names of U vertices; wires between them stay on the v·1 side
        let mut u_now: BTreeSet<String> = s.vertices.iter().cloned().collect();
        let in_f = |w: &str| s.wires.iter().any(|x| x == w);

        let mut current = self.clone();
        let mut restricted = Vec::new();
        let mut vertex_map = Vec::new();
        let mut pending = Vec::new();
        for v in &s.vertices {
            let slots = current.slots(v);
            if slots.iter().all(|sl| in_f(&sl.wire)) {
                vertex_map.push((v.clone(), v.clone()));
                continue;
            }
            let (p1, p2): (Vec<Slot>, Vec<Slot>) = slots.into_iter().partition(|sl| {
                let w = current.wire(&sl.wire).unwrap();
                let other = match sl.end {
                    End::Tail => w.head.as_deref(),
                    End::Head => w.tail.as_deref(),
                };
                in_f(&sl.wire) || other.is_some_and(|o| u_now.contains(o))
            });
            let sp = current.split_vertex(v, &p1, &p2)?;
            u_now.insert(sp.first.clone());
            restricted.push(sp.wire.clone());
            pending.push((v.clone(), sp.first.clone(), sp.wire.clone()));
            current = sp.diagram;
        }
        // wires whose other end was in U now point at the renamed v·1
        for (v, first, fresh) in pending {
            let (p1, p2): (Vec<Slot>, Vec<Slot>) = current
                .slots(&first)
                .into_iter()
                .partition(|sl| sl.wire == fresh || in_f(&sl.wire));
            let sp = current.split_vertex(&first, &p1, &p2)?;
            restricted.push(sp.wire.clone());
            vertex_map.push((v, sp.first.clone()));
            current = sp.diagram;
        }
        vertex_map.sort();
        let copy = SubdiagramRef::new(
            vertex_map.iter().map(|(_, c)| c.clone()),
            s.wires.clone(),
        );
        Ok(Isolation {
            diagram: current,
            restricted,
            copy,
            vertex_map,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub diagram: TensorDiagram,
    /// The fresh wire, from `first` to `second`.
    pub wire: String,
    pub first: String,
    pub second: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isolation {
    pub diagram: TensorDiagram,
    /// Wires added by the splittings, in creation order.
    pub restricted: Vec<String>,
    /// The induced copy of the isolated subdiagram.
    pub copy: SubdiagramRef,
    /// `(original vertex, copy vertex)` pairs.
    pub vertex_map: Vec<(String, String)>,
}

/// A vertex subset and a wire subset of some parent diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubdiagramRef {
    pub vertices: Vec<String>,
    pub wires: Vec<String>,
}

impl SubdiagramRef {
    pub fn new(vertices: impl IntoIterator<Item = String>, wires: Vec<String>) -> Self {
        let mut vertices: Vec<String> = vertices.into_iter().collect();
        let mut wires = wires;
        vertices.sort();
        vertices.dedup();
        wires.sort();
        wires.dedup();
        SubdiagramRef { vertices, wires }
    }

    /// Every id exists and every wire's endpoints lie in the vertex subset.
    pub fn check_in(&self, parent: &TensorDiagram) -> Result<(), SemigraphError> {
        for v in &self.vertices {
            if !parent.has_vertex(v) {
                return Err(SemigraphError::NotASubdiagram(format!("unknown vertex {v:?}")));
            }
        }
        for id in &self.wires {
            let w = parent
                .wire(id)
                .ok_or_else(|| SemigraphError::NotASubdiagram(format!("unknown wire {id:?}")))?;
            if let Some(v) = w.endpoints().find(|v| !self.vertices.iter().any(|x| x == v)) {
                return Err(SemigraphError::NotASubdiagram(format!(
                    "wire {id:?} leaves the subset at {v:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn is_induced(&self, parent: &TensorDiagram) -> bool {
        self.check_in(parent).is_ok() && parent.induced(&self.vertices).wires == self.wires
    }

    pub fn as_diagram(&self, parent: &TensorDiagram) -> Result<TensorDiagram, SemigraphError> {
        self.check_in(parent)?;
        TensorDiagram::new(
            self.vertices.iter().cloned(),
            self.wires
                .iter()
                .map(|id| parent.wire(id).unwrap().clone()),
        )
    }
}

/// The named shapes, with vertices `v1..vn` and wires `e1..em` in sequence,
/// all wires pointing forward.
pub mod shapes {
    use super::{TensorDiagram, Wire};

    fn build(n: usize, wires: Vec<Wire>) -> TensorDiagram {
        TensorDiagram::new((1..=n).map(|i| format!("v{i}")), wires).expect("shape is valid")
    }

    fn v(i: usize) -> String {
        format!("v{i}")
    }

    fn w(i: usize, tail: Option<String>, head: Option<String>) -> Wire {
        Wire {
            id: format!("e{i}"),
            tail,
            head,
        }
    }

    /// `n` vertices, `n - 1` wires.
    pub fn path(n: usize) -> TensorDiagram {
        build(n, (1..n).map(|i| w(i, Some(v(i)), Some(v(i + 1)))).collect())
    }

    /// `n` vertices on a cycle of `n` wires, `e_i` entering `v_i`; `n = 1`
    /// is a single loop.
    pub fn cycle(n: usize) -> TensorDiagram {
        build(
            n,
            (1..=n)
                .map(|i| w(i, Some(v((i + n - 2) % n + 1)), Some(v(i))))
                .collect(),
        )
    }

    /// `n` vertices, `n + 1` wires, both ends dangling.
    pub fn open_path(n: usize) -> TensorDiagram {
        let mut wires = vec![w(1, None, Some(v(1)))];
        wires.extend((1..n).map(|i| w(i + 1, Some(v(i)), Some(v(i + 1)))));
        wires.push(w(n + 1, Some(v(n)), None));
        build(n, wires)
    }

    /// `n` vertices, `n` wires, dangling wire `e1` into `v1`.
    pub fn half_open_path(n: usize) -> TensorDiagram {
        let mut wires = vec![w(1, None, Some(v(1)))];
        wires.extend((1..n).map(|i| w(i + 1, Some(v(i)), Some(v(i + 1)))));
        build(n, wires)
    }

    pub fn open_claw() -> TensorDiagram {
        build(1, (1..=3).map(|i| w(i, Some(v(1)), None)).collect())
    }

    /// A loop `e1` and a dangling outgoing wire `e2` at one vertex.
    pub fn needle() -> TensorDiagram {
        build(1, vec![w(1, Some(v(1)), Some(v(1))), w(2, Some(v(1)), None)])
    }

    pub fn figure_eight() -> TensorDiagram {
        build(
            1,
            vec![w(1, Some(v(1)), Some(v(1))), w(2, Some(v(1)), Some(v(1)))],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let d = TensorDiagram::from_spec(&["v1"], &[("e1", Some("v1"), Some("v1"))]).unwrap();
        assert!(d.wires()[0].is_loop());
        assert_eq!(d.degree("v1").unwrap(), 2);
        assert_eq!(
            TensorDiagram::from_spec(&[], &[("e1", Some("v9"), None)]),
            Err(SemigraphError::UnknownVertexRef {
                wire: "e1".into(),
                vertex: "v9".into()
            })
        );
        assert_eq!(
            TensorDiagram::from_spec(&["a", "a"], &[]),
            Err(SemigraphError::DuplicateId("a".into()))
        );
    }

    #[test]
    fn normalize_drops_endpointless() {
        let d = TensorDiagram::from_spec(
            &["v1"],
            &[("e0", None, None), ("e1", Some("v1"), Some("v1"))],
        )
        .unwrap();
        let (n, removed) = d.normalize();
        assert_eq!(n, shapes::cycle(1));
        assert_eq!(removed, vec!["e0".to_string()]);
    }

    #[test]
    fn split_and_contract() {
        let d = shapes::open_claw();
        let sp = d.split_vertex_by_wires("v1", &["e1"], &["e2", "e3"]).unwrap();
        assert_eq!(sp.wire, "_split1");
        assert_eq!(sp.diagram.degree("v1·1").unwrap(), 2);
        assert_eq!(sp.diagram.degree("v1·2").unwrap(), 3);
        assert_eq!(sp.diagram.contract_wire("_split1", "v1").unwrap(), d);
        assert!(matches!(
            d.split_vertex_by_wires("v1", &["e1"], &["e2"]),
            Err(SemigraphError::NotAPartition(_))
        ));
    }

    #[test]
    fn split_loop_slots_independently() {
        let d = shapes::cycle(1);
        let sp = d
            .split_vertex(
                "v1",
                &[Slot::new("e1", End::Tail)],
                &[Slot::new("e1", End::Head)],
            )
            .unwrap();
        let e1 = sp.diagram.wire("e1").unwrap();
        assert_eq!(e1.tail.as_deref(), Some("v1·1"));
        assert_eq!(e1.head.as_deref(), Some("v1·2"));
    }

    #[test]
    fn isolate_vertex_of_two_cycle() {
        let d = shapes::cycle(2);
        let s = SubdiagramRef::new(["v1".to_string()], vec![]);
        let iso = d.isolate_subdiagram(&s).unwrap();
        assert_eq!(iso.restricted, vec!["_split1", "_split2"]);
        assert_eq!(iso.copy.vertices, vec!["v1·1·1"]);
        assert!(iso.copy.is_induced(&iso.diagram));
    }

    #[test]
    fn isolate_whole_is_identity() {
        let d = shapes::cycle(3);
        let iso = d.isolate_subdiagram(&d.whole()).unwrap();
        assert!(iso.restricted.is_empty());
        assert_eq!(iso.diagram, d);
    }

    #[test]
    fn components() {
        let d = TensorDiagram::from_spec(
            &["a", "b", "c"],
            &[
                ("e1", Some("a"), Some("a")),
                ("e2", Some("b"), Some("c")),
                ("e3", None, None),
            ],
        )
        .unwrap();
        let cs = d.connected_components();
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[1].vertices, vec!["b", "c"]);
        assert_eq!(cs[2].wires, vec!["e3"]);
    }

    #[test]
    fn json_round_trip() {
        let d = shapes::open_path(2);
        let text = d.to_json();
        let back: DiagramRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(validate_diagram(back).unwrap().to_json(), text);
        assert!(text.contains("\"tail\":null"));
    }
}

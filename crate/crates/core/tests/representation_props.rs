mod common;

use proptest::prelude::*;
use tdr_core::exactalg::{rat, rational_canonical, RatMatrix};
use tdr_core::generate::SeededStream;
use tdr_core::representation::{
    compose, cokernel, hom_dim, identity_maps, is_morphism, kernel, monodromy, split_functor, WireMaps,
};
use tdr_core::semigraph::shapes;
use tdr_core::{isomorphic, Representation, TensorDiagram};

use common::{random_dims, random_orientation, random_rep, sized_diagram};

fn product(g: &WireMaps, h: &WireMaps) -> WireMaps {
    g.iter().map(|(w, m)| (w.clone(), m * &h[w])).collect()
}

fn connected_closed(s: &mut SeededStream) -> TensorDiagram {
    loop {
        let d = sized_diagram(s, 4, 0, 5, true);
        if d.connected_components().len() == 1 {
            return d;
        }
    }
}

/// Every vertex has an incoming and an outgoing wire, so that the summands
/// of `⊕` are retracts.
fn through_diagram(s: &mut SeededStream) -> TensorDiagram {
    loop {
        let d = sized_diagram(s, 3, 1, 5, false);
        let ok = d.vertices().iter().all(|v| {
            d.wires().iter().any(|w| w.tail.as_deref() == Some(v))
                && d.wires().iter().any(|w| w.head.as_deref() == Some(v))
        });
        if ok {
            return d;
        }
    }
}

fn j1(lambda: i64) -> Representation {
    let d = shapes::cycle(1);
    Representation::new(
        d,
        [("e1".to_string(), 1)].into(),
        [("v1".to_string(), RatMatrix::from_i64(&[&[lambda]]))].into(),
    )
    .unwrap()
}

/// Inclusion of the first summand of `a ⊕ b`.
fn first_inclusion(a: &Representation, b: &Representation) -> WireMaps {
    a.dims()
        .iter()
        .map(|(w, &da)| {
            let db = b.dim(w);
            (w.clone(), RatMatrix::identity(da).vstack(&RatMatrix::zeros(db, da)))
        })
        .collect()
}

#[test]
fn unit_of_a_loop_contracts_to_one() {
    let u = Representation::unit(&shapes::cycle(1));
    assert_eq!(u.tensor("v1"), &RatMatrix::from_i64(&[&[1]]));
    assert_eq!(u.contract().unwrap(), rat(1));
}

#[test]
fn hom_between_distinct_eigenvalues_vanishes() {
    assert_eq!(hom_dim(&j1(2), &j1(3)).unwrap(), 0);
    assert_eq!(hom_dim(&j1(2), &j1(2)).unwrap(), 1);
}

#[test]
fn split_then_merge_is_identity() {
    let mut s = SeededStream::new(7);
    let d = shapes::open_claw();
    let r = random_rep(&mut s, &d, 2);
    let all = d.slots("v1");
    let sp = d.split_vertex("v1", &all, &[]).unwrap();
    let mut dims = r.dims().clone();
    dims.insert(sp.wire.clone(), 1);
    let tensors = [
        (sp.first.clone(), r.tensor("v1").clone()),
        (sp.second.clone(), RatMatrix::from_i64(&[&[1]])),
    ]
    .into();
    let split = Representation::new(sp.diagram.clone(), dims, tensors).unwrap();
    assert_eq!(split_functor(&split, &sp.wire, "v1").unwrap(), r);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn group_action_is_an_action(seed in any::<u64>()) {
        let mut s = SeededStream::new(seed);
        let d = sized_diagram(&mut s, 3, 0, 4, false);
        let r = random_rep(&mut s, &d, 2);
        prop_assert_eq!(&r.apply_group_element(&identity_maps(&r)).unwrap(), &r);
        let g = s.group_element(r.dims());
        let h = s.group_element(r.dims());
        let lhs = r.apply_group_element(&product(&g, &h)).unwrap();
        let rhs = r.apply_group_element(&h).unwrap().apply_group_element(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sum_projections_recover_summands(seed in any::<u64>()) {
        let mut s = SeededStream::new(seed);
        let d = through_diagram(&mut s);
        let a = random_rep(&mut s, &d, 2);
        let b = random_rep(&mut s, &d, 2);
        let sum = a.direct_sum(&b).unwrap();
        let inc = first_inclusion(&a, &b);
        prop_assert!(is_morphism(&inc, &a, &sum).unwrap());
        let proj: WireMaps = inc.iter().map(|(w, m)| (w.clone(), m.transpose())).collect();
        prop_assert!(is_morphism(&proj, &sum, &a).unwrap());
    }

    #[test]
    fn contraction_respects_sum_and_product(seed in any::<u64>()) {
        let mut s = SeededStream::new(seed);
        let d = connected_closed(&mut s);
        let a = random_rep(&mut s, &d, 2);
        let b = random_rep(&mut s, &d, 2);
        let (ca, cb) = (a.contract().unwrap(), b.contract().unwrap());
        prop_assert_eq!(a.direct_sum(&b).unwrap().contract().unwrap(), &ca + &cb);
        prop_assert_eq!(a.tensor_product(&b).unwrap().contract().unwrap(), &ca * &cb);
    }

    #[test]
    fn dual_is_an_involution_and_keeps_contraction(seed in any::<u64>()) {
        let mut s = SeededStream::new(seed);
        let d = sized_diagram(&mut s, 4, 0, 5, true);
        let r = random_rep(&mut s, &d, 2);
        prop_assert_eq!(&r.dual().dual(), &r);
        prop_assert_eq!(r.dual().contract().unwrap(), r.contract().unwrap());
    }

    #[test]
    fn contraction_ignores_order(seed in any::<u64>()) {
        let mut s = SeededStream::new(seed);
        let d = sized_diagram(&mut s, 5, 0, 6, true);
        let r = random_rep(&mut s, &d, 2);
        let value = r.contract().unwrap();
        for _ in 0..3 {
            let mut order = d.vertices().to_vec();
            for i in (1..order.len()).rev() {
                order.swap(i, s.below(i + 1));
            }
            prop_assert_eq!(&r.contract_in_order(&order).unwrap(), &value);
        }
    }

    #[test]
    fn hom_dim_is_additive(seed in any::<u64>()) {
        let mut s = SeededStream::new(seed);
        let n = 1 + s.below(3);
        let d = if s.below(2) == 0 { shapes::cycle(n) } else { shapes::open_path(n) };
        let a = random_rep(&mut s, &d, 2);
        let b = random_rep(&mut s, &d, 2);
        let c = random_rep(&mut s, &d, 2);
        let sum = a.direct_sum(&b).unwrap();
        prop_assert_eq!(
            hom_dim(&sum, &c).unwrap(),
            hom_dim(&a, &c).unwrap() + hom_dim(&b, &c).unwrap()
        );
        prop_assert_eq!(
            hom_dim(&c, &sum).unwrap(),
            hom_dim(&c, &a).unwrap() + hom_dim(&c, &b).unwrap()
        );
    }

    #[test]
    fn cokernel_and_kernel_of_a_monic(seed in any::<u64>()) {
        let mut s = SeededStream::new(seed);
        let d = shapes::open_path(1 + s.below(3));
        let a = random_rep(&mut s, &d, 2);
        let b = random_rep(&mut s, &d, 2);
        let g = s.group_element(a.direct_sum(&b).unwrap().dims());
        let target = a.direct_sum(&b).unwrap().apply_group_element(&g).unwrap();
        let phi = compose(&g, &first_inclusion(&a, &b));
        let (q, psi) = cokernel(&phi, &a, &target).unwrap();
        for w in d.wire_ids() {
            prop_assert_eq!(q.dim(w) + a.dim(w), target.dim(w));
        }
        prop_assert!(is_morphism(&psi, &target, &q).unwrap());
        prop_assert!(compose(&psi, &phi).values().all(RatMatrix::is_zero));
        prop_assert!(isomorphic(&q, &b).unwrap());
        let (k, iota) = kernel(&psi, &target, &q).unwrap();
        prop_assert!(is_morphism(&iota, &k, &target).unwrap());
        prop_assert!(compose(&psi, &iota).values().all(RatMatrix::is_zero));
        prop_assert!(isomorphic(&k, &a).unwrap());
    }

    #[test]
    fn monodromy_class_is_independent_of_base(seed in any::<u64>()) {
        let mut s = SeededStream::new(seed);
        let n = 1 + s.below(4);
        let d = random_orientation(&mut s, &shapes::cycle(n));
        let k = 1 + s.below(3);
        let dims = d.wire_ids().map(|w| (w.to_string(), k)).collect();
        let r = s.representation(&d, &dims).unwrap();
        let first = rational_canonical(&monodromy(&r, "e1").unwrap()).unwrap();
        for w in d.wire_ids() {
            prop_assert_eq!(&rational_canonical(&monodromy(&r, w).unwrap()).unwrap(), &first);
        }
    }

    #[test]
    fn scaling_the_split_wire_is_invisible(seed in any::<u64>()) {
        let mut s = SeededStream::new(seed);
        let d = sized_diagram(&mut s, 3, 1, 4, false);
        let v = d.vertices()[s.below(d.vertices().len())].clone();
        let slots = d.slots(&v);
        let (p1, p2): (Vec<_>, Vec<_>) = slots.into_iter().partition(|_| s.below(2) == 0);
        let sp = d.split_vertex(&v, &p1, &p2).unwrap();
        let mut dims = random_dims(&mut s, &sp.diagram, 2);
        dims.insert(sp.wire.clone(), 1);
        let r = s.representation(&sp.diagram, &dims).unwrap();
        let mut g = identity_maps(&r);
        g.insert(sp.wire.clone(), RatMatrix::scalar(s.nonzero_rational()));
        let scaled = r.apply_group_element(&g).unwrap();
        prop_assert_eq!(
            split_functor(&scaled, &sp.wire, &v).unwrap(),
            split_functor(&r, &sp.wire, &v).unwrap()
        );
    }
}

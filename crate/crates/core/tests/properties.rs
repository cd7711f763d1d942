mod common;

use proptest::prelude::*;
use proptest::sample::subsequence;
use qxmap::formats::{emit_coupling_file, parse_coupling_file};
use qxmap::mapper::is_legal;
use qxmap::{
    builtin_map, circuit_unitary, emit_qasm, equivalent, exchange_lines, map_circuit, optimize,
    parse_qasm, permute_lines, reduce, relabel_tail, Circuit, CostOrder, Gate, GateKind,
    LinePlacement, MappingStrategy, OptimizeOptions,
};

const TOL: f64 = 1e-9;

fn arb_gate(lines: usize) -> BoxedStrategy<Gate> {
    let single = (0..GateKind::SINGLE_QUBIT.len(), 0..lines)
        .prop_map(|(k, q)| Gate::single(GateKind::SINGLE_QUBIT[k], q));
    if lines < 2 {
        return single.boxed();
    }
    let cx =
        (0..lines, 0..lines - 1).prop_map(|(a, b)| Gate::cx(a, if b >= a { b + 1 } else { b }));
    prop_oneof![2 => single, 1 => cx].boxed()
}

fn arb_circuit(max_lines: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_lines).prop_flat_map(move |n| {
        prop::collection::vec(arb_gate(n), 0..=max_gates)
            .prop_map(move |gs| Circuit::from_gates(n, gs).unwrap())
    })
}

fn arb_placed(
    max_lines: usize,
    target: usize,
    max_gates: usize,
) -> impl Strategy<Value = (Circuit, LinePlacement)> {
    arb_circuit(max_lines, max_gates).prop_flat_map(move |c| {
        let n = c.lines();
        subsequence((0..target).collect::<Vec<_>>(), n)
            .prop_shuffle()
            .prop_map(move |p| (c.clone(), LinePlacement::new(p).unwrap()))
    })
}

fn identity(c: &Circuit) -> LinePlacement {
    LinePlacement::identity(c.lines())
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn simulator_matches_gate_by_gate_product(c in arb_circuit(4, 20)) {
        let got = common::unitary_entries(&c);
        let want = common::reference_unitary(&c);
        prop_assert!(common::max_diff(&got, &want) <= 1e-12);
    }

    #[test]
    fn simulator_output_is_unitary(c in arb_circuit(4, 30)) {
        prop_assert!(circuit_unitary(&c).unwrap().unitarity_error() <= 1e-10);
    }

    #[test]
    fn concatenation_is_matrix_product(a in arb_circuit(3, 15), extra in prop::collection::vec(arb_gate(3), 0..15)) {
        let a = common::widen(&a, 3);
        let b = Circuit::from_gates(3, extra.iter().copied()).unwrap();
        let ab = Circuit::from_gates(3, a.gates().iter().chain(b.gates()).copied()).unwrap();
        let want = common::matmul(&common::unitary_entries(&b), &common::unitary_entries(&a));
        prop_assert!(common::max_diff(&common::unitary_entries(&ab), &want) <= 1e-12);
    }

    #[test]
    fn permute_lines_conjugates_by_the_placement((c, p) in arb_placed(5, 5, 25)) {
        let placed = permute_lines(&c, &p, 5).unwrap();
        let perm = common::full_permutation(&p, 5);
        let fwd = common::bit_permutation_matrix(&perm);
        let back = common::bit_permutation_matrix(&inverse(&perm));
        let want = common::matmul(&fwd, &common::matmul(&common::reference_unitary(&common::widen(&c, 5)), &back));
        prop_assert!(common::max_diff(&common::reference_unitary(&placed), &want) <= 1e-12);
        prop_assert_eq!(placed.len(), c.len());
        prop_assert_eq!(placed.depth(), c.depth());
        prop_assert!(equivalent(&c, &placed, &p, TOL).unwrap());
    }

    #[test]
    fn depth_is_bounded_by_gate_count(c in arb_circuit(5, 40)) {
        prop_assert!(c.depth() <= c.len());
        prop_assert_eq!(c.depth() == 0, c.is_empty());
    }

    #[test]
    fn reduce_is_sound_monotone_and_idempotent(c in arb_circuit(5, 40), extended in any::<bool>()) {
        let r = reduce(&c, extended);
        prop_assert!(r.len() <= c.len());
        prop_assert!(equivalent(&c, &r, &identity(&c), TOL).unwrap());
        prop_assert_eq!(reduce(&r, extended), r.clone());
        prop_assert_eq!(r.output_map(), c.output_map());
    }

    #[test]
    fn reduce_deletes_a_circuit_followed_by_its_inverse(c in arb_circuit(4, 12)) {
        let inv = c.gates().iter().rev().map(Gate::inverse);
        let both = Circuit::from_gates(c.lines(), c.gates().iter().copied().chain(inv)).unwrap();
        prop_assert!(reduce(&both, false).is_empty());
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(c in arb_circuit(4, 25)) {
        let r = reduce(&c, true);
        let id = identity(&c);
        prop_assert!(equivalent(&c, &c, &id, TOL).unwrap());
        prop_assert_eq!(
            equivalent(&c, &r, &id, TOL).unwrap(),
            equivalent(&r, &c, &id, TOL).unwrap()
        );
    }

    #[test]
    fn equivalence_notices_an_extra_gate(c in arb_circuit(4, 25), q in 0usize..4) {
        let q = q % c.lines();
        let mut d = c.clone();
        d.push(Gate::x(q)).unwrap();
        prop_assert!(!equivalent(&c, &d, &identity(&c), TOL).unwrap());
    }

    #[test]
    fn exchange_lines_preserves_meaning(c in arb_circuit(5, 20), at in 0usize..=20, q1 in 0usize..5, q2 in 0usize..5) {
        prop_assume!(c.lines() >= 2);
        let (q1, q2) = (q1 % c.lines(), q2 % c.lines());
        prop_assume!(q1 != q2);
        let at = at % (c.len() + 1);
        let e = exchange_lines(&c, at, q1, q2).unwrap();
        prop_assert_eq!(e.len(), c.len() + 3);
        prop_assert!(equivalent(&c, &e, &identity(&c), TOL).unwrap());
        let twice = relabel_tail(&relabel_tail(&c, at, q1, q2).unwrap(), at, q1, q2).unwrap();
        prop_assert_eq!(twice, c);
    }

    #[test]
    fn qasm_round_trip(c in arb_circuit(5, 30), at in 0usize..=30) {
        prop_assert_eq!(parse_qasm(&emit_qasm(&c)).unwrap(), c.clone());
        if c.lines() >= 2 {
            let e = exchange_lines(&c, at % (c.len() + 1), 0, c.lines() - 1).unwrap();
            prop_assert_eq!(parse_qasm(&emit_qasm(&e)).unwrap(), e);
        }
    }

    #[test]
    fn parser_never_panics(s in "\\PC*") {
        let _ = parse_qasm(&s);
    }

    #[test]
    fn parser_survives_damaged_programs(c in arb_circuit(3, 10), cut in any::<prop::sample::Index>(), junk in "[ -~\n]{0,8}") {
        let text = emit_qasm(&c);
        let at = cut.index(text.len() + 1);
        let damaged = format!("{}{}{}", &text[..at], junk, &text[at..]);
        if let Err(e) = parse_qasm(&damaged) {
            prop_assert!(e.line_number >= 1);
            prop_assert!(e.line_number <= damaged.lines().count().max(1) + 1);
        }
    }

    #[test]
    fn mapped_circuits_are_native_and_equivalent(c in arb_circuit(5, 25), arch in prop_oneof![Just("qx2"), Just("qx4")], s in prop_oneof![Just(MappingStrategy::Swap), Just(MappingStrategy::Template)]) {
        let map = builtin_map(arch).unwrap();
        let m = map_circuit(&c, &map, s).unwrap();
        prop_assert!(is_legal(&m, &map));
        prop_assert!(equivalent(&c, &m, &identity(&c), TOL).unwrap());
        prop_assert_eq!(map_circuit(&m, &map, s).unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn optimize_is_deterministic_and_search_helps(c in arb_circuit(4, 20), s in prop_oneof![Just(MappingStrategy::Swap), Just(MappingStrategy::Template)]) {
        let map = builtin_map("qx2").unwrap();
        let opts = OptimizeOptions::new(s);
        let a = optimize(&c, &map, &opts).unwrap();
        let b = optimize(&c, &map, &opts).unwrap();
        prop_assert_eq!(&a, &b);
        let base = optimize(&c, &map, &opts.search(false)).unwrap();
        prop_assert!(a.cost.gate_count <= base.cost.gate_count);
        prop_assert!(equivalent(&c, &a.circuit, &a.placement, TOL).unwrap());
    }

    #[test]
    fn cost_orders_win_on_their_own_key(c in arb_circuit(4, 20)) {
        let map = builtin_map("qx4").unwrap();
        let opts = OptimizeOptions::new(MappingStrategy::Template);
        let g = optimize(&c, &map, &opts.order(CostOrder::GatesFirst)).unwrap();
        let d = optimize(&c, &map, &opts.order(CostOrder::DepthFirst)).unwrap();
        prop_assert!(g.cost.gate_count <= d.cost.gate_count);
        prop_assert!(d.cost.depth <= g.cost.depth);
    }

    #[test]
    fn coupling_file_round_trip(edges in prop::collection::btree_set((0usize..6, 0usize..6), 0..12)) {
        let edges = edges.into_iter().filter(|(a, b)| a != b).collect::<Vec<_>>();
        let Ok(map) = qxmap::CouplingMap::new(6, edges) else { return Ok(()) };
        prop_assert_eq!(parse_coupling_file(&emit_coupling_file(&map)).unwrap(), map);
    }
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qecc1wqc::code5;
use qecc1wqc::harness::run_depolarizing;
use qecc1wqc::lattice::{Axis, Lattice};
use qecc1wqc::protocols::{encoded_teleport, InjectedError, TeleportConfig};
use qecc1wqc::qcore::{ByproductFrame, Gate, Pauli, PauliString};
use qecc1wqc::stabsim::tableau::row_reduce;
use qecc1wqc::stabsim::{graph_to_tableau, stab_equal, Graph, Tableau};
use qecc1wqc::svsim::{fidelity, random_qubit, StateVector, Symbol};

fn symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![Just(Symbol::Zero), Just(Symbol::One), Just(Symbol::Plus), Just(Symbol::Minus)]
}

fn pauli() -> impl Strategy<Value = Pauli> {
    prop_oneof![Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)]
}

fn clifford(n: usize) -> impl Strategy<Value = Gate> {
    prop_oneof![
        (0..n).prop_map(Gate::H),
        (0..n).prop_map(Gate::S),
        (0..n).prop_map(Gate::X),
        (0..n).prop_map(Gate::Z),
        (0..n, 1..n).prop_map(move |(a, d)| Gate::Cz(a, (a + d) % n)),
    ]
}

fn graph(n: usize) -> impl Strategy<Value = Graph> {
    proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
    })
}

fn canonical(mut rows: Vec<PauliString>) -> Vec<PauliString> {
    let n = rows.first().map_or(0, PauliString::n);
    let order: Vec<(usize, bool)> = (0..n).flat_map(|q| [(q, true), (q, false)]).collect();
    row_reduce(&mut rows, &order);
    rows
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tableau_agrees_with_dense(init in proptest::collection::vec(symbol(), 4), gates in proptest::collection::vec(clifford(4), 0..30)) {
        let mut t = Tableau::init(&init);
        let mut s = StateVector::init(&init).unwrap();
        t.apply_gates(&gates).unwrap();
        s.apply_gates(&gates).unwrap();
        for g in t.stabilizers() {
            let e = s.expectation(g).unwrap();
            prop_assert!((e.re - 1.0).abs() < 1e-9 && e.im.abs() < 1e-9, "{g}: {e}");
        }
    }

    #[test]
    fn frame_is_a_group(a in proptest::collection::vec(pauli(), 5), b in proptest::collection::vec(pauli(), 5)) {
        let mut fa = ByproductFrame::new(5);
        fa.record(&PauliString::from_paulis(&a)).unwrap();
        let mut fb = ByproductFrame::new(5);
        fb.record(&PauliString::from_paulis(&b)).unwrap();
        prop_assert!(fa.compose(&fa).unwrap().is_clean());
        prop_assert_eq!(fa.compose(&fb).unwrap(), fb.compose(&fa).unwrap());
    }

    #[test]
    fn frame_follows_conjugation(a in proptest::collection::vec(pauli(), 3), g in clifford(3)) {
        let p = PauliString::from_paulis(&a);
        let mut f = ByproductFrame::new(3);
        f.record(&p).unwrap();
        f.conjugate(&g).unwrap();
        prop_assert!(f.to_pauli().eq_up_to_phase(&p.conjugate(&g).unwrap()));
    }

    #[test]
    fn local_complement_is_an_involution(g in graph(6), v in 0..6usize) {
        prop_assert_eq!(g.local_complement(v).unwrap().local_complement(v).unwrap(), g);
    }

    #[test]
    fn local_complement_layer_realises_the_rewrite(g in graph(5), v in 0..5usize) {
        let mut t = graph_to_tableau(&g);
        t.apply_gates(&g.local_complement_layer(v).unwrap()).unwrap();
        prop_assert!(stab_equal(&t, &graph_to_tableau(&g.local_complement(v).unwrap())));
    }

    #[test]
    fn long_distant_cz_on_stabilizers(k in 0..6usize, su in symbol(), sv in symbol(), seed in any::<u64>()) {
        let len = 2 * k + 2;
        let mut l = Lattice::grid(1, len);
        let (u, v) = ([0, 0], [0, len - 1]);
        l.prepare(u, su).unwrap();
        l.prepare(v, sv).unwrap();
        let path: Vec<[usize; 2]> = (0..len).map(|c| [0, c]).collect();
        l.distant_cz(&path, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let got = canonical(l.corrected_state(&[u, v]).unwrap());
        let mut want = Tableau::init(&[su, sv]);
        want.apply(&Gate::Cz(0, 1)).unwrap();
        prop_assert_eq!(got, want.canonical_generators());
    }

    #[test]
    fn global_layer_twice_is_identity(mask in proptest::collection::vec(symbol().prop_map(Some).boxed().prop_union(Just(None).boxed()), 12), vertical in any::<bool>()) {
        let mut l = Lattice::grid(3, 4);
        for (i, s) in mask.iter().enumerate() {
            if let Some(s) = s {
                l.prepare([i / 4, i % 4], *s).unwrap();
            }
        }
        let axis = if vertical { Axis::Vertical } else { Axis::Horizontal };
        let before = l.tableau().canonical_generators();
        l.global_cz(axis, None).unwrap();
        l.global_cz(axis, None).unwrap();
        prop_assert_eq!(l.tableau().canonical_generators(), before);
    }

    #[test]
    fn encoder_round_trip(seed in any::<u64>()) {
        let psi = random_qubit(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut s = code5::encode(psi).unwrap();
        prop_assert!(fidelity(&s, &code5::logical_state(psi)).unwrap() > 1.0 - 1e-10);
        s.apply_gates(&code5::decoder().gate_list().unwrap()).unwrap();
        let zero = [num_complex::Complex64::new(1.0, 0.0), num_complex::Complex64::new(0.0, 0.0)];
        let want = StateVector::product(&[psi, zero, zero, zero, zero]).unwrap();
        prop_assert!(fidelity(&s, &want).unwrap() > 1.0 - 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn any_single_error_in_the_window_is_corrected(q in 0..5usize, p in pauli(), xi in -3.1..3.1f64, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_qubit(&mut rng);
        let cfg = TeleportConfig { error: Some(InjectedError::protected(PauliString::single(5, q, p))), ..TeleportConfig::new(psi, xi) };
        let r = encoded_teleport(&cfg, &mut rng).unwrap();
        prop_assert!(r.fidelity > 1.0 - 1e-9);
    }
}

#[test]
fn depolarizing_reports_are_reproducible() {
    let a = serde_json::to_string(&run_depolarizing(0.05, 40, 9, false).unwrap()).unwrap();
    let b = serde_json::to_string(&run_depolarizing(0.05, 40, 9, false).unwrap()).unwrap();
    assert_eq!(a, b);
}

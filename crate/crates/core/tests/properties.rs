use bhqc::circuit::{parse_circuit, render, Circuit};
use bhqc::classify::{classify, hyperdeterminant, Party, SloccClass};
use bhqc::syntax::parse_ket;
use bhqc::{GaussianRational, Gate, Ket, SymbolTable, SymbolicAmplitude};
use num::Zero;
use proptest::prelude::*;

fn table() -> SymbolTable {
    SymbolTable::with_names(&["alpha", "beta"]).unwrap()
}

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=5, -6i64..=6, 1i64..=5).prop_map(|(a, b, c, d)| {
        let im = &GaussianRational::from_ratio(c, d) * &GaussianRational::i();
        &GaussianRational::from_ratio(a, b) + &im
    })
}

fn monomial() -> impl Strategy<Value = SymbolicAmplitude> {
    let names = ["alpha", "beta", "alpha~", "beta~"];
    prop::collection::vec(prop::sample::select(names.to_vec()), 0..=2).prop_map(|syms| {
        let t = table();
        syms.iter().fold(SymbolicAmplitude::integer(1), |acc, s| &acc * &SymbolicAmplitude::symbol(t.lookup(s).unwrap()))
    })
}

fn amplitude() -> impl Strategy<Value = SymbolicAmplitude> {
    prop::collection::vec((scalar(), monomial()), 0..=3)
        .prop_map(|terms| terms.iter().fold(SymbolicAmplitude::zero(), |acc, (c, m)| &acc + &m.scale(c)))
}

fn ket_with(n: usize, amp: BoxedStrategy<SymbolicAmplitude>) -> impl Strategy<Value = Ket> {
    prop::collection::vec(prop::option::weighted(0.6, amp), 1 << n).prop_map(move |amps| {
        Ket::from_indexed(n, amps.into_iter().enumerate().filter_map(|(i, a)| a.map(|a| (i, a)))).unwrap()
    })
}

fn symbolic_ket(n: usize) -> impl Strategy<Value = Ket> {
    ket_with(n, amplitude().boxed())
}

fn numeric_ket(n: usize) -> impl Strategy<Value = Ket> {
    ket_with(n, scalar().prop_map(SymbolicAmplitude::constant).boxed())
}

fn one_qubit_gate() -> impl Strategy<Value = Gate> {
    prop::sample::select(Gate::ALL.iter().copied().filter(|g| g.arity() == 1).collect::<Vec<_>>())
}

fn any_gate() -> impl Strategy<Value = Gate> {
    prop::sample::select(Gate::ALL.to_vec())
}

fn permutation() -> impl Strategy<Value = Vec<usize>> {
    Just(vec![0usize, 1, 2]).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn amplitude_ring_laws(a in amplitude(), b in amplitude(), c in amplitude()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &SymbolicAmplitude::integer(1), a.clone());
    }

    #[test]
    fn conjugation(a in amplitude(), b in amplitude()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
    }

    #[test]
    fn scalar_norm(s in scalar(), t in scalar()) {
        prop_assert!(s.norm_sqr() >= num::BigRational::zero());
        prop_assert_eq!(s.norm_sqr().is_zero(), s.is_zero());
        prop_assert_eq!((&s * &t).norm_sqr(), s.norm_sqr() * t.norm_sqr());
        prop_assert_eq!(&s * &s.conj(), GaussianRational::real(s.norm_sqr()));
    }

    #[test]
    fn ket_text_round_trip(x in symbolic_ket(3)) {
        let text = x.to_string();
        prop_assert_eq!(parse_ket(&text, &table(), Some(3)).unwrap(), x);
    }

    #[test]
    fn inner_product_conjugate_symmetry(x in symbolic_ket(2), y in symbolic_ket(2)) {
        prop_assert_eq!(x.inner_product(&y).unwrap(), y.inner_product(&x).unwrap().conj());
    }

    #[test]
    fn projection_is_idempotent(x in symbolic_ket(3), q in 0usize..3, bit in prop::bool::ANY) {
        let bits = if bit { "1" } else { "0" };
        let once = x.project(&[q], bits).unwrap();
        prop_assert_eq!(once.project(&[q], bits).unwrap(), once.clone());
        let other = x.project(&[q], if bit { "0" } else { "1" }).unwrap();
        prop_assert_eq!(once.add(&other).unwrap(), x);
    }

    #[test]
    fn tensor_is_associative(a in symbolic_ket(1), b in symbolic_ket(1), c in symbolic_ket(2)) {
        let left = a.tensor(&b).unwrap().tensor(&c).unwrap();
        let right = a.tensor(&b.tensor(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn gates_are_linear_over_symbols(
        x in symbolic_ket(3), y in symbolic_ket(3), s in amplitude(), g in any_gate(), perm in permutation()
    ) {
        let targets = &perm[..g.arity()];
        let op = g.operator();
        let lhs = op.apply_at(&x.add(&y.scale(&s)).unwrap(), targets).unwrap();
        let rhs = op.apply_at(&x, targets).unwrap().add(&op.apply_at(&y, targets).unwrap().scale(&s)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn embedding_commutes_with_composition(
        x in symbolic_ket(3), g in one_qubit_gate(), h in one_qubit_gate(), q in 0usize..3, r in 0usize..3
    ) {
        let (gop, hop) = (g.operator(), h.operator());
        let composed = gop.compose(hop).unwrap().apply_at(&x, &[q]).unwrap();
        let stepwise = gop.apply_at(&hop.apply_at(&x, &[q]).unwrap(), &[q]).unwrap();
        prop_assert_eq!(composed, stepwise);
        if q != r {
            let gh = gop.apply_at(&hop.apply_at(&x, &[r]).unwrap(), &[q]).unwrap();
            let hg = hop.apply_at(&gop.apply_at(&x, &[q]).unwrap(), &[r]).unwrap();
            prop_assert_eq!(gh, hg);
        }
    }

    #[test]
    fn hyperdeterminant_is_quartic(x in numeric_ket(3), c in scalar()) {
        let det = hyperdeterminant(&x).unwrap();
        prop_assert_eq!(hyperdeterminant(&x.scale_by(&c)).unwrap(), &c.pow(4) * &det);
    }

    #[test]
    fn bipartition_label_follows_permutation(
        v in prop::array::uniform2(-3i64..=3), m in prop::array::uniform4(-3i64..=3), party in 0usize..3,
        perm in permutation()
    ) {
        // party `party` factors off as v, the other two carry m
        let x = Ket::from_indexed(3, (0..8usize).map(|idx| {
            let bits = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
            let rest: Vec<usize> = (0..3).filter(|&q| q != party).map(|q| bits[q]).collect();
            (idx, SymbolicAmplitude::integer(v[bits[party]] * m[2 * rest[0] + rest[1]]))
        })).unwrap();
        let Ok(before) = classify(&x) else { return Ok(()) };
        let after = classify(&x.permute(&perm).unwrap()).unwrap();
        let moved = |c: SloccClass| match c {
            SloccClass::Biseparable(p) => SloccClass::Biseparable(Party::from_index(perm[p.index()]).unwrap()),
            other => other,
        };
        prop_assert!(matches!(before.slocc_class, SloccClass::Null | SloccClass::Separable | SloccClass::Biseparable(_)));
        prop_assert_eq!(after.slocc_class, moved(before.slocc_class));
    }

    #[test]
    fn circuits_render_and_run_deterministically(
        ops in prop::collection::vec((any_gate(), permutation()), 0..8), x in symbolic_ket(3)
    ) {
        let circuit = ops.iter().fold(
            Circuit::new(3).unwrap().with_symbols(table()).with_state(x),
            |c, (g, perm)| c.apply(*g, &perm[..g.arity()]),
        );
        let text = render(&circuit);
        let parsed = parse_circuit(&text).unwrap();
        prop_assert_eq!(&parsed, &circuit);
        prop_assert_eq!(render(&parsed), text);
        let (a, b) = (circuit.run().unwrap(), parsed.run().unwrap());
        let states = |t: &bhqc::circuit::Trace| t.steps.iter().map(|s| s.state.to_string()).collect::<Vec<_>>();
        prop_assert_eq!(states(&a), states(&b));
    }
}

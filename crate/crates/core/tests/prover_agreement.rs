use bindinfo::prover::{
    prove_general, prove_symmetric, symmetrize, verify_certificate, verify_symmetric_certificate,
    MeasureCombination, ProofOutcome,
};

const TARGETS: [&str; 10] = [
    "(N-1)B-I", "(N-1)I-B", "I-B", "B-I", "H-B", "B", "I", "H-I", "N H - I", "(N-1)H-I",
];

#[test]
fn general_and_symmetric_agree_up_to_five() {
    for n in 2..=5 {
        for text in TARGETS {
            let combo = MeasureCombination::parse(text).unwrap();
            let general = combo.functional(n).unwrap();
            let symmetric = combo.symmetric_functional(n).unwrap();
            assert_eq!(symmetrize(&general).unwrap(), symmetric);

            let g = prove_general(&general).unwrap();
            let s = prove_symmetric(&symmetric).unwrap();
            assert_eq!(g.is_proven(), s.is_proven(), "{text} at N={n}");
            match (&g, &s) {
                (ProofOutcome::Proven(gc), ProofOutcome::Proven(sc)) => {
                    assert!(verify_certificate(&general, gc).unwrap());
                    assert!(verify_symmetric_certificate(&symmetric, sc).unwrap());
                    assert!(verify_certificate(&general, sc).unwrap());
                }
                (ProofOutcome::Refuted(gr), ProofOutcome::Refuted(sr)) => {
                    assert!(gr.check_general(&general));
                    assert!(sr.check_symmetric(&symmetric));
                }
                _ => unreachable!(),
            }
        }
    }
}

#[test]
fn expected_statuses() {
    let proven = |text: &str, n: usize| {
        let combo = MeasureCombination::parse(text).unwrap();
        prove_symmetric(&combo.symmetric_functional(n).unwrap())
            .unwrap()
            .is_proven()
    };
    for n in 3..=8 {
        assert!(proven("(N-1)B-I", n));
        assert!(proven("(N-1)I-B", n));
        assert!(proven("H-B", n));
        assert!(!proven("I-B", n));
        assert!(!proven("B-I", n));
    }
    // N = 2: I and B coincide
    assert!(proven("I-B", 2) && proven("B-I", 2));
}

#[test]
fn thirty_seven_variables() {
    for text in ["(N-1)B-I", "(N-1)I-B"] {
        let target = MeasureCombination::parse(text)
            .unwrap()
            .symmetric_functional(37)
            .unwrap();
        let outcome = prove_symmetric(&target).unwrap();
        let cert = outcome.certificate().expect("proven at N=37");
        assert!(verify_symmetric_certificate(&target, cert).unwrap());
    }
}

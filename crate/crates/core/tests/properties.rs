use proptest::prelude::*;

use gamma2::membership::{factor, factor_traced};
use gamma2::presentations::{gamma2_generators, parse, serialize, Format, Presentation};
use gamma2::words::{cyclic_normal_form, cyclic_reduce, evaluate, free_reduce, inverse};
use gamma2::{is_level2, Letter, Word};

fn word_strategy(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    let gens = gamma2_generators(n);
    let k = gens.len();
    prop::collection::vec((0..k, prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)]), 0..=max_len).prop_map(
        move |letters| {
            Word::from_letters(
                letters
                    .into_iter()
                    .map(|(g, e)| Letter::new(gens[g].clone(), e))
                    .collect(),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_idempotent_and_keeps_the_matrix(w in word_strategy(3, 16)) {
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert_eq!(evaluate(&r, 3).unwrap(), evaluate(&w, 3).unwrap());
    }

    #[test]
    fn inverse_evaluates_to_matrix_inverse(w in word_strategy(3, 12)) {
        let m = evaluate(&w, 3).unwrap();
        let mi = evaluate(&inverse(&w), 3).unwrap();
        prop_assert!(m.mul(&mi).is_identity());
        prop_assert_eq!(inverse(&inverse(&w)), free_reduce(&w));
    }

    #[test]
    fn evaluation_is_multiplicative(u in word_strategy(3, 10), v in word_strategy(3, 10)) {
        let uv = Word::product([&u, &v]);
        prop_assert_eq!(
            evaluate(&uv, 3).unwrap(),
            evaluate(&u, 3).unwrap().mul(&evaluate(&v, 3).unwrap())
        );
    }

    #[test]
    fn cyclic_normal_form_ignores_rotation_and_inversion(w in word_strategy(3, 12), k in 0usize..12) {
        let r = cyclic_reduce(&free_reduce(&w));
        let letters = r.letters().to_vec();
        let rotated = if letters.is_empty() {
            r.clone()
        } else {
            let s = k % letters.len();
            Word::product([
                &Word::from_letters(letters[s..].to_vec()),
                &Word::from_letters(letters[..s].to_vec()),
            ])
        };
        let nf = cyclic_normal_form(&w);
        prop_assert_eq!(cyclic_normal_form(&rotated), nf.clone());
        prop_assert_eq!(cyclic_normal_form(&inverse(&w)), nf);
    }

    #[test]
    fn factor_round_trips(w in word_strategy(4, 14)) {
        let m = evaluate(&w, 4).unwrap();
        prop_assert!(is_level2(&m));
        let (f, trace) = factor_traced(&m).unwrap();
        prop_assert_eq!(evaluate(&f, 4).unwrap(), m);
        for (_, column) in &trace.columns {
            prop_assert!(column.strictly_decreasing());
        }
    }

    #[test]
    fn products_stay_level2(u in word_strategy(2, 10), v in word_strategy(2, 10)) {
        let a = evaluate(&u, 2).unwrap();
        let b = evaluate(&v, 2).unwrap();
        prop_assert!(is_level2(&a.mul(&b)));
        prop_assert!(is_level2(&a.inverse().unwrap()));
        prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
    }

    #[test]
    fn serialization_round_trips(rels in prop::collection::vec(word_strategy(3, 8), 0..6)) {
        let p = Presentation::new(3, gamma2_generators(3), rels.into_iter().map(|w| free_reduce(&w)).collect());
        for format in [Format::Json, Format::Plain] {
            let back = parse(&serialize(&p, format), format).unwrap();
            prop_assert_eq!(&back.generators, &p.generators);
            prop_assert_eq!(&back.relators, &p.relators);
        }
    }

    #[test]
    fn word_text_round_trips(w in word_strategy(3, 12)) {
        let r = free_reduce(&w);
        let back: Word = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }
}

#[test]
fn factor_of_identity_is_empty() {
    for n in 1..=5 {
        assert!(factor(&gamma2::IntMatrix::identity(n)).unwrap().is_empty());
    }
}

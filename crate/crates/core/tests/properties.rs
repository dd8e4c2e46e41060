use genus2::analysis::jones;
use genus2::diagram::{canonical_code, BraidWord};
use genus2::engine::{ambient, braid_to_hecke, homfly_memo, trace_closure, trace_closure_dense, MemoCache};
use genus2::laurent::{LaurentVZ, LaurentV};
use genus2::mutation::BraidScheme;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly() -> impl Strategy<Value = LaurentVZ> {
    prop::collection::vec((-4i32..=4, -3i32..=3, -5i64..=5), 0..6).prop_map(|t| LaurentVZ::from_terms(t.into_iter().map(|(a, b, c)| ((a, b), c))))
}

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        let letter = (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        prop::collection::vec(letter, 0..=max_len).prop_map(move |w| BraidWord::new(n, w).unwrap())
    })
}

fn ambient_of(b: &BraidWord) -> LaurentVZ {
    ambient(&trace_closure_dense(b), b.exponent_sum())
}

fn ambient_memo(b: &BraidWord, cache: &MemoCache) -> LaurentVZ {
    let d = b.closure();
    ambient(&homfly_memo(&d, cache).unwrap(), d.writhe())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentVZ::one(), a.clone());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly(), b in poly(), k in prop_oneof![Just(2i32), Just(3)]) {
        // only z-polynomials specialize, so move everything to nonnegative z degree
        let (a, b) = (a.shift(0, 3), b.shift(0, 3));
        let sa = a.substitute_v_power(k).unwrap();
        let sb = b.substitute_v_power(k).unwrap();
        prop_assert_eq!((&a + &b).substitute_v_power(k).unwrap(), &sa + &sb);
        prop_assert_eq!((&a * &b).substitute_v_power(k).unwrap(), &sa * &sb);
    }

    #[test]
    fn p0_is_additive(a in poly(), b in poly()) {
        prop_assert_eq!((&a + &b).p0(), &a.p0() + &b.p0());
    }

    #[test]
    fn hecke_quadratic_relation(b in braid(4, 6), pos in 0usize..7, i in 1i32..4) {
        // closures of w σᵢ w', w σᵢ⁻¹ w', w w' satisfy X₊ − X₋ = z X₀
        prop_assume!((i as usize) < b.strands);
        let pos = pos.min(b.len());
        let with = |l: Option<i32>| {
            let mut w = b.word.clone();
            if let Some(l) = l { w.insert(pos, l); }
            BraidWord::new(b.strands, w).unwrap()
        };
        let framed = |w: &BraidWord| trace_closure(&braid_to_hecke(w));
        let lhs = &framed(&with(Some(i))) - &framed(&with(Some(-i)));
        prop_assert_eq!(lhs, framed(&with(None)).shift(0, 1));
    }

    #[test]
    fn conjugation_and_stabilization(b in braid(4, 7), i in 1i32..4, sign in prop_oneof![Just(1i32), Just(-1)]) {
        prop_assume!((i as usize) < b.strands);
        let p = ambient_of(&b);
        let mut conj = vec![i * sign];
        conj.extend(&b.word);
        conj.push(-i * sign);
        prop_assert_eq!(ambient_of(&BraidWord::new(b.strands, conj).unwrap()), p.clone());
        let mut stab = b.word.clone();
        stab.push(sign * b.strands as i32);
        prop_assert_eq!(ambient_of(&BraidWord::new(b.strands + 1, stab).unwrap()), p);
    }

    #[test]
    fn reidemeister_moves_on_diagrams(b in braid(4, 5), pos in 0usize..6, i in 1i32..3) {
        // R2 by inserting σᵢσᵢ⁻¹, R3 by rewriting σᵢσᵢ₊₁σᵢ, R1 by stabilization
        prop_assume!((i as usize + 1) < b.strands);
        let cache = MemoCache::in_memory();
        let pos = pos.min(b.len());
        let p = ambient_memo(&b, &cache);
        let insert = |extra: &[i32]| {
            let mut w = b.word.clone();
            w.splice(pos..pos, extra.iter().copied());
            BraidWord::new(b.strands, w).unwrap()
        };
        prop_assert_eq!(ambient_memo(&insert(&[i, -i]), &cache), p.clone());
        let r3a = ambient_memo(&insert(&[i, i + 1, i]), &cache);
        let r3b = ambient_memo(&insert(&[i + 1, i, i + 1]), &cache);
        prop_assert_eq!(r3a, r3b);
        let mut stab = b.word.clone();
        stab.push(-(b.strands as i32));
        prop_assert_eq!(ambient_memo(&BraidWord::new(b.strands + 1, stab).unwrap(), &cache), p);
    }

    #[test]
    fn reversing_every_string_keeps_homfly(b in braid(4, 8)) {
        let d = b.closure();
        let cache = MemoCache::in_memory();
        let p = homfly_memo(&d, &cache).unwrap();
        prop_assert_eq!(homfly_memo(&d.reverse_all(), &cache).unwrap(), p);
    }

    #[test]
    fn mirror_inverts_v(b in braid(4, 7)) {
        let p = ambient_of(&b);
        let m = BraidWord::new(b.strands, b.word.iter().map(|l| -l).collect()).unwrap();
        let q = ambient_of(&m);
        // mirroring swaps X₊ and X₋ and the curl values: v → v⁻¹, z → −z
        let flipped = LaurentVZ::from_terms(p.terms().map(|((a, e), c)| {
            let c: BigInt = if e % 2 == 0 { c.clone() } else { -c };
            ((-a, e), c)
        }));
        prop_assert_eq!(q, flipped);
    }
}

/// Random braid-form schemes: the braid closures match the assembled
/// diagrams and the two mutants share their Jones polynomial.
#[test]
fn braid_schemes_reassemble_and_keep_jones() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut knots = 0;
    while knots < 15 {
        let f: Vec<i32> = (0..rng.gen_range(1..6)).map(|_| [1, -1, 2, -2][rng.gen_range(0..4)]).collect();
        let t: Vec<i32> = (0..rng.gen_range(0..7)).map(|_| [1, -1, 2, -2, 3, -3][rng.gen_range(0..6)]).collect();
        let Ok(s) = BraidScheme::new(BraidWord::new(3, f).unwrap(), BraidWord::new(4, t).unwrap(), 2, 2) else { continue };
        let Ok((k1, k2)) = s.to_scheme().unwrap().mutant_pair() else { continue };
        knots += 1;
        let (b1, b2) = s.braid_pair();
        assert_eq!(canonical_code(&b1.closure()), canonical_code(k1.diagram()), "{s:?}");
        assert_eq!(canonical_code(&b2.closure()), canonical_code(k2.diagram()), "{s:?}");
        assert_eq!(jones(&ambient_of(&b1)).unwrap(), jones(&ambient_of(&b2)).unwrap(), "{s:?}");
    }
}

#[test]
fn unknot_has_p0_one() {
    let u = BraidWord::new(1, vec![]).unwrap();
    assert_eq!(ambient_of(&u).p0(), LaurentV::one());
}


use std::collections::BTreeMap;

use proptest::prelude::*;

use ultralip::format::{parse_dendrogram, parse_space, write_dendrogram, write_space};
use ultralip::hierarchy::{check_all, PartitionChain};
use ultralip::lipschitz::{free_norm_lp, free_norm_tree, mcshane_extend, norm, pair, FreeElement, LipFn};
use ultralip::random::{gen_space, random_element, random_space, rng, small_rational, RandomSpaceSpec};
use ultralip::rational::{abs_diff, rat, Rational};
use ultralip::retraction::{check_retraction_laws, Enumeration, RetractionFamily};
use ultralip::FiniteUltraSpace;

fn values(space: &FiniteUltraSpace, seed: u64) -> LipFn {
    let mut r = rng(seed);
    let mut v = vec![Rational::from_integer(0.into())];
    v.extend((1..space.len()).map(|_| small_rational(&mut r)));
    LipFn::new(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_spaces_are_ultrametric(seed in any::<u64>(), n in 1usize..14) {
        let d = gen_space(&RandomSpaceSpec::new(seed, n));
        let s = d.to_space().unwrap();
        prop_assert_eq!(s.len(), n);
        prop_assert!(s.is_ultrametric());
    }

    #[test]
    fn formats_round_trip(seed in any::<u64>(), n in 1usize..10) {
        let d = gen_space(&RandomSpaceSpec::new(seed, n));
        let s = d.to_space().unwrap();
        prop_assert_eq!(&parse_space(&write_space(&s)).unwrap(), &s);
        let back = parse_dendrogram(&write_dendrogram(&d)).unwrap().to_space().unwrap();
        let pos: BTreeMap<&str, usize> = back.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(s.d(x, y), back.d(pos[s.label(x)], pos[s.label(y)]));
            }
        }
    }

    #[test]
    fn free_norm_routes_agree(seed in any::<u64>(), n in 2usize..8) {
        let s = random_space(seed, n);
        let mut r = rng(seed);
        let mu = random_element(&mut r, n, n);
        let (lp, cert) = free_norm_lp(&s, &mu).unwrap();
        prop_assert_eq!(&lp, &free_norm_tree(&s, &mu).unwrap());
        prop_assert!(cert.verify(&s, &mu));
        // Any function pairs with mu below its norm times ‖mu‖.
        let f = values(&s, seed ^ 1);
        let zero = Rational::from_integer(0.into());
        prop_assert!(abs_diff(&pair(&f, &mu).unwrap(), &zero) <= norm(&s, &f) * &lp);
    }

    #[test]
    fn free_norm_is_a_seminorm(seed in any::<u64>(), n in 2usize..7) {
        let s = random_space(seed, n);
        let mut r = rng(seed);
        let a = random_element(&mut r, n, n);
        let b = random_element(&mut r, n, n);
        let na = free_norm_tree(&s, &a).unwrap();
        let nb = free_norm_tree(&s, &b).unwrap();
        prop_assert!(free_norm_tree(&s, &a.plus(&b)).unwrap() <= &na + &nb);
        let c = rat(-3, 2);
        prop_assert_eq!(free_norm_tree(&s, &a.scaled(&c)).unwrap(), na * rat(3, 2));
        prop_assert!(free_norm_tree(&s, &FreeElement::zero(n)).unwrap() == Rational::from_integer(0.into()));
    }

    #[test]
    fn mcshane_extends_without_raising_the_constant(seed in any::<u64>(), n in 2usize..10, k in 1usize..6) {
        let s = random_space(seed, n);
        let f = values(&s, seed);
        let known: Vec<(usize, Rational)> = (0..n.min(k)).map(|x| (x, f.value(x).clone())).collect();
        let g = mcshane_extend(&s, &known).unwrap();
        let pts: Vec<usize> = known.iter().map(|(x, _)| *x).collect();
        let (data, _) = ultralip::lipschitz::lip_norm_on(&s, &f, &pts);
        prop_assert_eq!(norm(&s, &g), data);
        for (x, v) in &known {
            prop_assert_eq!(g.value(*x), v);
        }
    }

    #[test]
    fn chain_and_retraction_laws(seed in any::<u64>(), n in 1usize..9, qi in 0usize..3) {
        let s = random_space(seed, n);
        let q = [rat(1, 3), rat(1, 2), rat(3, 4)][qi].clone();
        let chain = PartitionChain::build(&s, &q).unwrap();
        prop_assert_eq!(check_all(&chain).unwrap(), None);
        let fam = RetractionFamily::new(Enumeration::natural(&s));
        prop_assert_eq!(check_retraction_laws(&fam), None);
    }
}

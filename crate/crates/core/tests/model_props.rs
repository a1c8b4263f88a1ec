mod common;

use std::collections::BTreeSet;

use bvass::{parse_bvass, Bvass, Configuration, IVec2};
use common::{random_model, rng};
use proptest::prelude::*;
use rand::Rng;

fn random_configs(b: &Bvass, r: &mut impl Rng, n: usize) -> BTreeSet<Configuration> {
    let states: Vec<_> = b.states().collect();
    (0..n)
        .map(|_| {
            let s = states[r.gen_range(0..states.len())];
            Configuration::new(s, IVec2::new(r.gen_range(0..=5), r.gen_range(0..=5)))
        })
        .collect()
}

proptest! {
    #[test]
    fn text_round_trip(seed in any::<u64>(), k in 1usize..=3) {
        let b = random_model(&mut rng(seed), k);
        prop_assert_eq!(parse_bvass(&b.to_string()).unwrap(), b);
    }

    #[test]
    fn post_is_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let b = random_model(&mut r, 3);
        let small = random_configs(&b, &mut r, 4);
        let mut big = small.clone();
        big.extend(random_configs(&b, &mut r, 4));
        prop_assert!(b.post_step(&small).is_subset(&b.post_step(&big)));
    }

    #[test]
    fn instantiation_is_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let b = random_model(&mut r, 3);
        let small = random_configs(&b, &mut r, 3);
        let mut big = small.clone();
        big.extend(random_configs(&b, &mut r, 3));
        let (a, c) = (b.instantiate(&small), b.instantiate(&big));
        let bigger: BTreeSet<_> = c.transitions.iter().collect();
        prop_assert!(a.transitions.iter().all(|t| bigger.contains(t)));
    }

    #[test]
    fn instantiated_transitions_simulate_post(seed in any::<u64>()) {
        // Firing an instantiated transition from a known configuration is one
        // rule application whose other inputs come from the same set.
        let mut r = rng(seed);
        let b = random_model(&mut r, 3);
        let f = random_configs(&b, &mut r, 4);
        let post = b.post_step(&f);
        for t in b.instantiate(&f).transitions {
            for c in f.iter().filter(|c| c.state == t.source) {
                let y = c.point + t.displacement;
                if y.is_nonneg() {
                    prop_assert!(post.contains(&Configuration::new(t.target, y)));
                }
            }
        }
    }
}

#[test]
fn iteration_constant_of_the_example() {
    // Three states, largest decrement 1.
    assert_eq!(common::example().iteration_constant(), 3);
    assert_eq!(common::self_loop().iteration_constant(), 0);
}

#[test]
fn syntax_errors_carry_a_position() {
    let e = parse_bvass("rule p <- q : 1\n").unwrap_err();
    assert!(e.to_string().starts_with("line 1, column 16"), "{e}");
}

mod common;

use bvass::semilinear::model_hash;
use bvass::{explore, ExploreConfig, Limits, SemilinearPresentation};
use common::{random_model, rng};

fn cfg() -> ExploreConfig {
    ExploreConfig { cover_by_any_processed: true, max_nodes: 10_000, ..ExploreConfig::default() }
}

#[test]
fn json_and_text_forms_round_trip() {
    for seed in 0..40 {
        let b = random_model(&mut rng(seed), 3);
        let s = explore(&b, &cfg()).unwrap().presentation;
        assert_eq!(s.model_hash, model_hash(&b));
        assert_eq!(SemilinearPresentation::from_json(&s.to_json()).unwrap(), s);
        assert_eq!(SemilinearPresentation::from_text(&s.to_string()).unwrap(), s);
        assert_eq!(SemilinearPresentation::parse(&s.to_json()).unwrap(), s);
        assert_eq!(SemilinearPresentation::parse(&s.to_string()).unwrap(), s);
    }
}

#[test]
fn membership_agrees_with_box_enumeration() {
    let l = Limits::default();
    for seed in 40..60 {
        let b = random_model(&mut rng(seed), 3);
        let s = explore(&b, &cfg()).unwrap().presentation;
        let boxed = s.enumerate_box(10);
        for q in b.states() {
            let name = b.name(q);
            for x in 0..=10 {
                for y in 0..=10 {
                    let p = bvass::IVec2::new(x, y);
                    let hit = s.member_config(name, p, &l).unwrap().is_some();
                    assert_eq!(hit, boxed.contains(&(name.to_string(), p)));
                }
            }
        }
    }
}

#[test]
fn normalization_keeps_the_set() {
    let l = Limits::default();
    for seed in 60..80 {
        let b = random_model(&mut rng(seed), 3);
        let s = explore(&b, &cfg()).unwrap().presentation;
        let mut n = s.clone();
        n.normalize(&l).unwrap();
        assert!(n.entries.len() <= s.entries.len());
        assert_eq!(n.enumerate_box(20), s.enumerate_box(20));
    }
}

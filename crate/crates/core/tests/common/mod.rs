#![allow(dead_code)]

use std::collections::BTreeSet;

use bvass::{parse_bvass, Bvass, IVec2};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const STATE_NAMES: [&str; 3] = ["p", "q", "r"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(x: i64, y: i64) -> IVec2 {
    IVec2::new(x, y)
}

/// Model text with up to three states and up to six rules, displacements in
/// `[-2, 2]²`. The first rule is initial with a nonnegative displacement so the
/// reachability set is never empty; later rules are rarely initial. `max_inputs = 1`
/// yields a VASS.
pub fn random_model_text(rng: &mut impl Rng, max_inputs: usize) -> String {
    let n = rng.gen_range(1..=3);
    let states = &STATE_NAMES[..n];
    let rules = rng.gen_range(2..=6);
    let mut text = format!("states {}\n", states.join(" "));
    for i in 0..rules {
        let out = states.choose(rng).unwrap();
        let (inputs, d) = if i == 0 {
            (Vec::new(), (rng.gen_range(0..=2), rng.gen_range(0..=2)))
        } else {
            let k = if rng.gen_bool(0.1) { 0 } else { rng.gen_range(1..=max_inputs.min(n)) };
            let mut ins: Vec<&str> = states.choose_multiple(rng, k).copied().collect();
            ins.sort();
            (ins, (rng.gen_range(-2..=2), rng.gen_range(-2..=2)))
        };
        let ins = if inputs.is_empty() { String::new() } else { format!("{} ", inputs.join(",")) };
        text.push_str(&format!("rule {out} <- {ins}: {} {}\n", d.0, d.1));
    }
    text
}

pub fn random_model(rng: &mut impl Rng, max_inputs: usize) -> Bvass {
    parse_bvass(&random_model_text(rng, max_inputs)).unwrap()
}

pub fn random_vec(rng: &mut impl Rng, lo: i64, hi: i64) -> IVec2 {
    v(rng.gen_range(lo..=hi), rng.gen_range(lo..=hi))
}

pub fn self_loop() -> Bvass {
    parse_bvass("rule p <- : 0 0\nrule p <- p : 1 0\n").unwrap()
}

pub fn example() -> Bvass {
    parse_bvass("rule p <- : 4 4\nrule q <- p : -1 0\nrule r <- p,q : 0 0\n").unwrap()
}

/// Every point `base + Σ nᵢ·gᵢ` inside `[0, k]²`, by enumerating coefficient
/// vectors. Generators must be nonzero and nonnegative.
pub fn coeff_sums_in_box(gens: &[IVec2], base: IVec2, k: i64) -> BTreeSet<IVec2> {
    let mut out = BTreeSet::new();
    // A coefficient past this bound overshoots the box in some coordinate.
    let span = k + base.x.abs().max(base.y.abs());
    fn go(gens: &[IVec2], p: IVec2, k: i64, span: i64, out: &mut BTreeSet<IVec2>) {
        match gens.split_first() {
            None => {
                if p.is_nonneg() && p.x <= k && p.y <= k {
                    out.insert(p);
                }
            }
            Some((g, rest)) => {
                let mut q = p;
                for _ in 0..=span {
                    if q.x > k || q.y > k {
                        break;
                    }
                    go(rest, q, k, span, out);
                    q = q + *g;
                }
            }
        }
    }
    go(gens, base, k, span, &mut out);
    out
}

fn cross(a: IVec2, b: IVec2) -> i128 {
    a.x as i128 * b.y as i128 - a.y as i128 * b.x as i128
}

/// Is `p` a nonnegative rational combination of `dirs`? In the plane two
/// directions always suffice, so this tries every single direction and pair.
pub fn in_cone(dirs: &[IVec2], p: IVec2) -> bool {
    if p == IVec2::zero() {
        return true;
    }
    for &a in dirs {
        if cross(a, p) == 0 && (a.x as i128 * p.x as i128 + a.y as i128 * p.y as i128) > 0 {
            return true;
        }
    }
    for (i, &a) in dirs.iter().enumerate() {
        for &b in &dirs[i + 1..] {
            let d = cross(a, b);
            if d == 0 {
                continue;
            }
            let (l1, l2) = (cross(p, b), cross(a, p));
            if (l1 == 0 || (l1 > 0) == (d > 0)) && (l2 == 0 || (l2 > 0) == (d > 0)) {
                return true;
            }
        }
    }
    false
}

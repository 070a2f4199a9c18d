//! Deterministic instance generators for sweep tests: every orientation
//! of a path, seeded random quivers with alien sets, and posets with a
//! planted forbidden configuration.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poset::{
    enumerate_alien_sets, validate_alien_set, AlienSet, ForbiddenFamily, Poset, Quiver,
};
use crate::Result;

/// A reproducible generator from a numeric seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn orient(n: usize, mut forward: impl FnMut(usize) -> bool) -> Quiver {
    let arrows = (1..n)
        .map(|i| if forward(i - 1) { (i, i + 1) } else { (i + 1, i) })
        .collect();
    Quiver { n, arrows }
}

/// All `2^(n-1)` orientations of the path on vertices `1..=n`.
pub fn exhaustive_type_a_quivers(n: usize) -> Vec<Quiver> {
    assert!(n >= 1, "a path needs a vertex");
    (0..1u32 << (n - 1)).map(|mask| orient(n, |i| mask >> i & 1 == 1)).collect()
}

/// One uniformly random orientation of the path on `1..=n`.
pub fn random_type_a_quiver(n: usize, rng: &mut impl Rng) -> Quiver {
    orient(n, |_| rng.gen_bool(0.5))
}

/// A random valid alien set: candidate arrows are shuffled, each is
/// skipped by a coin flip or dropped when it would break validity.
pub fn random_alien_set(q: &Quiver, rng: &mut impl Rng) -> AlienSet {
    let mut candidates: Vec<(usize, usize)> = (1..=q.n)
        .flat_map(|s| (1..=q.n).map(move |t| (s, t)))
        .filter(|&(s, t)| s != t)
        .collect();
    candidates.shuffle(rng);
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    for c in candidates {
        if rng.gen_bool(0.5) {
            continue;
        }
        let mut attempt = chosen.clone();
        attempt.push(c);
        if validate_alien_set(q, &AlienSet::new(attempt)).is_ok() {
            chosen.push(c);
        }
    }
    AlienSet::new(chosen)
}

/// Every quiver orientation with every valid alien set, for all sizes up
/// to `max_n`.
pub fn exhaustive_instances(max_n: usize) -> Result<Vec<(Quiver, AlienSet)>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for q in exhaustive_type_a_quivers(n) {
            for f in enumerate_alien_sets(&q)? {
                out.push((q.clone(), f));
            }
        }
    }
    Ok(out)
}

/// `count` seeded random instances with sizes up to `max_n`.
pub fn seeded_instances(count: usize, max_n: usize, seed: u64) -> Vec<(Quiver, AlienSet)> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let q = random_type_a_quiver(n, &mut rng);
            let f = random_alien_set(&q, &mut rng);
            (q, f)
        })
        .collect()
}

/// The minimal poset of a forbidden family: a peak over a 3-antichain,
/// two peaks over a 2-chain, three peaks over a point, or the crown with
/// `k + 2` peaks.
pub fn forbidden_template(family: ForbiddenFamily) -> Poset {
    let (labels, covers): (Vec<usize>, Vec<(usize, usize)>) = match family {
        ForbiddenFamily::R1 => (vec![1, 2, 3, 4], vec![(1, 4), (2, 4), (3, 4)]),
        ForbiddenFamily::R2 => (vec![1, 2, 3, 4], vec![(1, 2), (2, 3), (2, 4)]),
        ForbiddenFamily::R3 => (vec![1, 2, 3, 4], vec![(1, 2), (1, 3), (1, 4)]),
        ForbiddenFamily::R4n(k) => {
            let w = k + 2;
            let covers = (1..=w)
                .flat_map(|i| [(i, w + i), (i, w + (i % w) + 1)])
                .collect();
            ((1..=2 * w).collect(), covers)
        }
    };
    Poset::from_covers(labels, &covers).expect("template covers are acyclic")
}

/// A template grown by `extras` elements, each attached strictly below
/// some element already present. The template stays a full subposet with
/// all its maxima maximal, so the planted configuration survives.
pub fn planted_host(
    family: ForbiddenFamily,
    extras: usize,
    rng: &mut impl Rng,
) -> Poset {
    let template = forbidden_template(family);
    let mut labels: Vec<usize> = template.labels().to_vec();
    let mut covers = template.covers();
    let mut next = labels.iter().max().unwrap() + 1;
    for _ in 0..extras {
        let &above = labels.choose(rng).expect("labels are nonempty");
        covers.push((next, above));
        labels.push(next);
        next += 1;
    }
    Poset::from_covers(labels, &covers).expect("downward extras keep the order acyclic")
}

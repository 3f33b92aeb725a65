use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::rational::rat;
use crate::exact::Vec3;

use super::PolygonalKnot;

/// A seeded random polygon with small rational coordinates, resampled until
/// it is simple and in general position.
pub fn random_generic_knot(n: usize, seed: u64) -> PolygonalKnot {
    assert!(n >= 4, "need at least 4 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let vs = (0..n)
            .map(|_| {
                let mut c = || rat(rng.gen_range(-40..=40), rng.gen_range(1..=4));
                Vec3::new(c(), c(), c())
            })
            .collect();
        let Ok(k) = PolygonalKnot::new(format!("random-{n}-{seed}"), vs) else {
            continue;
        };
        if k.is_simple().simple && k.check_general_position().passed {
            return k;
        }
    }
}

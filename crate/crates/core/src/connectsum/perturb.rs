use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::rational::int;
use crate::exact::{Rational, Vec3};
use crate::knot::PolygonalKnot;
use crate::quadrisecant::find_all_quadrisecants;

use super::{ConnectSumError, SHRINK_CAP};

/// Offsets are multiples of `magnitude / 2048`, at most `magnitude / 2`
/// per coordinate.
const GRID: i64 = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerturbRecord {
    pub seed: u64,
    #[serde(with = "crate::exact::rational::serde_rational")]
    pub magnitude: Rational,
    pub attempts: usize,
}

fn is_generic(k: &PolygonalKnot) -> bool {
    k.check_general_position().passed && k.is_simple().simple && find_all_quadrisecants(k).is_ok()
}

/// Seeded random displacement of every vertex, halving the magnitude after
/// each rejected attempt, until the knot is simple, in general position and
/// has finitely many quadrisecants and no quintisecant.
pub fn perturb_generic(
    k: &PolygonalKnot,
    magnitude: &Rational,
    seed: u64,
) -> Result<(PolygonalKnot, PerturbRecord), ConnectSumError> {
    if magnitude.is_zero() {
        return if is_generic(k) {
            Ok((
                k.clone(),
                PerturbRecord {
                    seed,
                    magnitude: Rational::zero(),
                    attempts: 1,
                },
            ))
        } else {
            Err(ConnectSumError::PerturbationFailed { attempts: 1 })
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mag = magnitude.clone();
    for attempt in 1..=SHRINK_CAP {
        let step = &mag / int(2 * GRID);
        let vs: Vec<_> = k
            .vertices()
            .iter()
            .map(|v| {
                let mut d = || &step * int(rng.gen_range(-GRID..=GRID));
                Vec3::new(&v.x + d(), &v.y + d(), &v.z + d())
            })
            .collect();
        if let Ok(p) = PolygonalKnot::new(k.name(), vs) {
            if is_generic(&p) {
                return Ok((
                    p,
                    PerturbRecord {
                        seed,
                        magnitude: mag,
                        attempts: attempt,
                    },
                ));
            }
        }
        mag /= int(2);
    }
    Err(ConnectSumError::PerturbationFailed { attempts: SHRINK_CAP })
}

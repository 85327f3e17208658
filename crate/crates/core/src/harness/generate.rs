use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clustering::{Point, PointSet};
use crate::error::{Error, Result};

pub const COORD_RANGE: std::ops::RangeInclusive<i32> = -10..=10;

/// Integer points drawn uniformly from `[−10, 10]²`.
///
/// The stream is ChaCha8 seeded with `seed_from_u64(seed)`, drawing x then y
/// for each point in turn, so a seed names the same instance everywhere.
pub fn generate_instance(n_points: usize, seed: u64) -> Result<PointSet> {
    if n_points < 2 {
        return Err(Error::param("n_points", "at least two points are required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n_points)
        .map(|_| {
            let x = rng.random_range(COORD_RANGE);
            let y = rng.random_range(COORD_RANGE);
            Point::new(f64::from(x), f64::from(y))
        })
        .collect();
    PointSet::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(
            generate_instance(6, 7).unwrap(),
            generate_instance(6, 7).unwrap()
        );
        assert_ne!(
            generate_instance(6, 7).unwrap(),
            generate_instance(6, 8).unwrap()
        );
    }

    #[test]
    fn coordinates_in_range() {
        for seed in 0..50 {
            let ps = generate_instance(6, seed).unwrap();
            assert_eq!(ps.len(), 6);
            for p in ps.points() {
                assert!((-10.0..=10.0).contains(&p.x) && (-10.0..=10.0).contains(&p.y));
                assert_eq!(p.x.fract(), 0.0);
            }
        }
    }

    #[test]
    fn too_few_points() {
        assert!(generate_instance(1, 0).is_err());
    }
}

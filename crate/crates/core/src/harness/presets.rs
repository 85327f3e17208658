//! The four published clustering instances with their schedules and the
//! clusters reported for each.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::anneal::AnnealConfig;
use crate::clustering::{Partition, PointSet};
use crate::error::{Error, Result};
use crate::hamiltonian::EncodingScheme;
use crate::harness::spec::ProblemSpec;
use crate::qutrit::projections;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Six points, three clusters, one-hot with point 0 pinned, h = 2.
    Fig1,
    /// Six points, two clusters, one-hot with the −1 penalty, h = 8.
    Fig2,
    /// Nine points, three fixed centroids, k-means++, h = 8.
    Fig3,
    /// Seven points, four centroids on two-qutrit blocks, h = 8.
    Fig4,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Fig1, Preset::Fig2, Preset::Fig3, Preset::Fig4];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
        }
    }

    pub fn coords(self) -> &'static [(f64, f64)] {
        match self {
            Preset::Fig1 => &[
                (4., -2.),
                (-7., 7.),
                (6., -9.),
                (-6., 8.),
                (-2., -6.),
                (-9., 5.),
            ],
            Preset::Fig2 => &[
                (6., 6.),
                (-6., 5.),
                (-3., 9.),
                (4., -10.),
                (-7., 4.),
                (-5., 1.),
            ],
            Preset::Fig3 => &[
                (8., -1.),
                (-2., -6.),
                (1., 6.),
                (4., -4.),
                (3., 8.),
                (9., -4.),
                (-5., 8.),
                (-6., -8.),
                (3., -10.),
            ],
            Preset::Fig4 => &[
                (-9., 10.),
                (1., 9.),
                (-8., -3.),
                (-2., -9.),
                (4., -2.),
                (8., -8.),
                (10., -5.),
            ],
        }
    }

    pub fn field(self) -> f64 {
        match self {
            Preset::Fig1 => 2.0,
            _ => 8.0,
        }
    }

    /// Clusters as printed in the figure caption, by coordinates.
    ///
    /// The fig2 caption prints `(−5, −1)` for the point listed as `(−5, 1)`;
    /// it is kept verbatim, so that caption never matches the instance literally.
    pub fn caption_clusters(self) -> Vec<Vec<(i64, i64)>> {
        match self {
            Preset::Fig1 => vec![
                vec![(-9, 5), (-7, 7), (-6, 8)],
                vec![(-2, -6), (4, -2)],
                vec![(6, -9)],
            ],
            Preset::Fig2 => vec![
                vec![(-7, 4), (-6, 5), (-5, -1), (-3, 9)],
                vec![(4, -10), (6, 6)],
            ],
            Preset::Fig3 => vec![
                vec![(-5, 8), (1, 6), (3, 8)],
                vec![(-6, -8), (-2, -6), (3, -10)],
                vec![(4, -4), (8, -1), (9, -4)],
            ],
            Preset::Fig4 => vec![
                vec![(-9, 10)],
                vec![(-8, -3), (-2, -9)],
                vec![(1, 9)],
                vec![(4, -2), (8, -8), (10, -5)],
            ],
        }
    }

    /// The caption clusters as a partition of the instance, if every caption
    /// point is present in it.
    pub fn caption_partition(self) -> Option<Partition> {
        let ps = PointSet::from_coords(self.coords()).ok()?;
        let blocks = self
            .caption_clusters()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&(x, y)| ps.position(x as f64, y as f64))
                    .collect::<Option<Vec<usize>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Partition::from_blocks(ps.len(), &blocks).ok()
    }

    /// Caption clusters in the form returned by [`Partition::coordinate_blocks`].
    pub fn caption_coordinate_blocks(self) -> BTreeSet<BTreeSet<(i64, i64)>> {
        self.caption_clusters()
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|(x, y)| (x * 1_000_000, y * 1_000_000))
                    .collect()
            })
            .collect()
    }

    /// `pinned` only affects fig2.
    pub fn spec(self, pinned: bool) -> ProblemSpec {
        let points = PointSet::from_coords(self.coords()).expect("preset coordinates are valid");
        let (scheme, centroids) = match self {
            Preset::Fig1 => (EncodingScheme::onehot_k3_pinned(), None),
            Preset::Fig2 => (EncodingScheme::k2_penalty(pinned), None),
            Preset::Fig3 => {
                let states = [[1], [0], [-1]]
                    .iter()
                    .map(|s| projections(s).unwrap())
                    .collect();
                (
                    EncodingScheme::kmeanspp(states).unwrap(),
                    Some(vec![0, 1, 2]),
                )
            }
            Preset::Fig4 => {
                let states = [[1, 1], [1, 0], [1, -1], [0, 1]]
                    .iter()
                    .map(|s| projections(s).unwrap())
                    .collect();
                (
                    EncodingScheme::kmeanspp(states).unwrap(),
                    Some(vec![0, 1, 2, 4]),
                )
            }
        };
        ProblemSpec {
            name: self.name().to_string(),
            points,
            scheme,
            centroids,
            anneal: AnnealConfig::with_field(self.field()),
            seed: None,
            emit: Vec::new(),
            out_dir: None,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown preset `{s}` (expected fig1..fig4)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::Method;

    #[test]
    fn fields_match_captions() {
        let h: Vec<f64> = Preset::ALL.iter().map(|p| p.spec(true).anneal.h).collect();
        assert_eq!(h, vec![2.0, 8.0, 8.0, 8.0]);
        assert!(Preset::ALL
            .iter()
            .all(|p| p.spec(true).anneal.steps == 2000));
    }

    #[test]
    fn caption_partitions_resolve() {
        assert!(Preset::Fig1.caption_partition().is_some());
        assert!(Preset::Fig2.caption_partition().is_none());
        assert!(Preset::Fig3.caption_partition().is_some());
        assert!(Preset::Fig4.caption_partition().is_some());
    }

    #[test]
    fn fig4_uses_two_qutrit_blocks() {
        let s = Preset::Fig4.spec(true);
        assert_eq!(s.scheme.method, Method::Kmeanspp);
        assert_eq!(s.scheme.spins_per_point, 2);
        assert_eq!(s.scheme.qutrits(7, 4), 6);
    }

    #[test]
    fn parse_names() {
        assert_eq!("fig3".parse::<Preset>().unwrap(), Preset::Fig3);
        assert!("fig5".parse::<Preset>().is_err());
    }
}

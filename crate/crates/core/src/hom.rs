//! The two reductions onto PG(2,q).
//!
//! `Hat` reduces modulo `<e>` and keeps the first component of every
//! coordinate; `Tilde` reduces modulo `<e-1>` and keeps the second. Applied
//! coordinatewise they map points and lines of the ring plane onto PG(2,q).
//! Under either map half of a point's neighbourhood collapses onto the image
//! of the point and the other half is spread bijectively over the rest of
//! PG(2,q); the two halves trade places between the maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::pg::{PgLine, PgPoint};
use crate::plane::{LineClass, PlaneCtx, PointClass};
use crate::ring::{Ideal, RingElem};

pub use crate::pg::PgPlane;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HomTag {
    Hat,
    Tilde,
}

impl HomTag {
    pub const ALL: [HomTag; 2] = [HomTag::Hat, HomTag::Tilde];

    pub fn project(self, x: RingElem) -> Elem {
        match self {
            HomTag::Hat => x.a,
            HomTag::Tilde => x.b,
        }
    }

    pub fn kernel(self) -> Ideal {
        match self {
            HomTag::Hat => Ideal::E,
            HomTag::Tilde => Ideal::EMinusOne,
        }
    }

    pub fn other(self) -> HomTag {
        match self {
            HomTag::Hat => HomTag::Tilde,
            HomTag::Tilde => HomTag::Hat,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HomTag::Hat => "hat",
            HomTag::Tilde => "tilde",
        }
    }
}

impl fmt::Display for HomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HomTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hat" => Ok(HomTag::Hat),
            "tilde" => Ok(HomTag::Tilde),
            _ => Err(Error::parse(format!("unknown homomorphism {s:?}, expected hat or tilde"))),
        }
    }
}

/// How one reduction treats the neighbourhood of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighbourSplit {
    pub tag: HomTag,
    pub image: PgPoint,
    /// Neighbours whose image equals `image`.
    pub merged: Vec<usize>,
    /// Remaining neighbours, keyed by point index, with their PG(2,q) image
    /// index.
    pub spread: BTreeMap<usize, usize>,
}

impl NeighbourSplit {
    /// `merged` and `spread` have `q(q+1)` members each, and `spread` is a
    /// bijection onto PG(2,q) minus the image point.
    pub fn is_balanced(&self, q: usize) -> bool {
        let half = q * (q + 1);
        let targets: BTreeSet<usize> = self.spread.values().copied().collect();
        self.merged.len() == half
            && self.spread.len() == half
            && targets.len() == half
            && !targets.contains(&self.image.index)
    }

    pub fn spread_domain(&self) -> BTreeSet<usize> {
        self.spread.keys().copied().collect()
    }
}

/// Points of a line grouped by their image under one reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreCensus {
    pub tag: HomTag,
    pub image_line: PgLine,
    /// PG(2,q) point index -> indices of the points mapped to it.
    pub fibres: BTreeMap<usize, Vec<usize>>,
}

impl FibreCensus {
    /// `q+1` fibres of `q+1` points each, over the points of the image line.
    pub fn is_balanced(&self, plane: &PlaneCtx) -> bool {
        let q = plane.order() as usize;
        let image_points: Vec<usize> = plane.pg().points_on_line(&self.image_line);
        self.fibres.len() == q + 1
            && self.fibres.values().all(|f| f.len() == q + 1)
            && self.fibres.keys().copied().collect::<Vec<_>>() == image_points
    }
}

impl PlaneCtx {
    pub fn project_point(&self, tag: HomTag, p: &PointClass) -> Result<PgPoint> {
        self.check_point(p)?;
        let (h, t) = self.projections(p.index());
        Ok(self.pg().point(self.pick(tag, h, t)))
    }

    pub fn project_line(&self, tag: HomTag, l: &LineClass) -> Result<PgLine> {
        self.check_line(l)?;
        let (h, t) = self.projections(l.index());
        Ok(self.pg().line(self.pick(tag, h, t)))
    }

    /// Coordinatewise reduction of an arbitrary triple, canonicalized in
    /// PG(2,q). Used to cross-check [`PlaneCtx::project_point`].
    pub fn project_triple(&self, tag: HomTag, t: &crate::plane::CoordTriple) -> Result<PgPoint> {
        self.pg().find_point(t.0.map(|x| tag.project(x)))
    }

    fn pick(&self, tag: HomTag, h: usize, t: usize) -> usize {
        match tag {
            HomTag::Hat => h,
            HomTag::Tilde => t,
        }
    }

    pub fn neighbourhood_split(&self, a: &PointClass, tag: HomTag) -> Result<NeighbourSplit> {
        let image = self.project_point(tag, a)?;
        let mut merged = Vec::new();
        let mut spread = BTreeMap::new();
        for n in self.neighbourhood(a)? {
            let (h, t) = self.projections(n);
            let img = self.pick(tag, h, t);
            if img == image.index {
                merged.push(n);
            } else {
                spread.insert(n, img);
            }
        }
        Ok(NeighbourSplit { tag, image, merged, spread })
    }

    /// The neighbours merged by one reduction are exactly those spread by
    /// the other, in both directions.
    pub fn complementarity_check(&self, a: &PointClass) -> Result<bool> {
        let hat = self.neighbourhood_split(a, HomTag::Hat)?;
        let tilde = self.neighbourhood_split(a, HomTag::Tilde)?;
        let merged_hat: BTreeSet<usize> = hat.merged.iter().copied().collect();
        let merged_tilde: BTreeSet<usize> = tilde.merged.iter().copied().collect();
        Ok(merged_hat == tilde.spread_domain() && merged_tilde == hat.spread_domain())
    }

    pub fn line_fibre_decomposition(&self, l: &LineClass, tag: HomTag) -> Result<FibreCensus> {
        let image_line = self.project_line(tag, l)?;
        let mut fibres: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for p in self.points_on_line(l)? {
            let (h, t) = self.projections(p);
            fibres.entry(self.pick(tag, h, t)).or_default().push(p);
        }
        Ok(FibreCensus { tag, image_line, fibres })
    }
}

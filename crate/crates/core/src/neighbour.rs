//! Neighbour and distant relations.
//!
//! Two distinct points are neighbours when they are joined by more than one
//! line. The definitional route counts joining lines by ring incidence; the
//! fast route uses the product structure: two distinct points are
//! neighbours exactly when they share one of their two projections.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::plane::{LineClass, PlaneCtx, PointClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Identical,
    Neighbour,
    Distant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    /// Lines through both points. For identical points this is every line
    /// through the point.
    pub joining_line_count: usize,
}

/// Undirected neighbour graph on point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighbourGraph {
    adjacency: Vec<Vec<u32>>,
}

impl NeighbourGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges `(i, j)` with `i < j`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, adj)| adj.iter().map(|&j| j as usize).filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// degree -> number of vertices with that degree
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for adj in &self.adjacency {
            *h.entry(adj.len()).or_insert(0) += 1;
        }
        h
    }
}

impl PlaneCtx {
    fn relation_from_count(&self, count: usize) -> RelationKind {
        if count >= 2 {
            RelationKind::Neighbour
        } else {
            RelationKind::Distant
        }
    }

    /// All lines incident with both points, by scanning every line.
    pub fn joining_lines(&self, a: &PointClass, b: &PointClass) -> Result<Vec<usize>> {
        self.check_point(a)?;
        self.check_point(b)?;
        if a == b {
            return Err(Error::domain("joining lines are defined for distinct points"));
        }
        Ok(self
            .lines()
            .iter()
            .filter(|l| {
                self.incident_triples(l.canonical(), a.canonical())
                    && self.incident_triples(l.canonical(), b.canonical())
            })
            .map(|l| l.index())
            .collect())
    }

    /// All points on both lines, by scanning every point.
    pub fn meeting_points(&self, l: &LineClass, m: &LineClass) -> Result<Vec<usize>> {
        self.check_line(l)?;
        self.check_line(m)?;
        if l == m {
            return Err(Error::domain("meeting points are defined for distinct lines"));
        }
        Ok(self
            .points()
            .iter()
            .filter(|p| {
                self.incident_triples(l.canonical(), p.canonical())
                    && self.incident_triples(m.canonical(), p.canonical())
            })
            .map(|p| p.index())
            .collect())
    }

    /// Classification by counting joining lines.
    pub fn relate(&self, a: &PointClass, b: &PointClass) -> Result<Relation> {
        if a == b {
            self.check_point(a)?;
            return Ok(Relation {
                kind: RelationKind::Identical,
                joining_line_count: self.lines_through_point(a)?.len(),
            });
        }
        let count = self.joining_lines(a, b)?.len();
        Ok(Relation { kind: self.relation_from_count(count), joining_line_count: count })
    }

    /// Dual classification of two lines by counting common points.
    pub fn relate_lines(&self, l: &LineClass, m: &LineClass) -> Result<Relation> {
        if l == m {
            self.check_line(l)?;
            return Ok(Relation { kind: RelationKind::Identical, joining_line_count: self.points_on_line(l)?.len() });
        }
        let count = self.meeting_points(l, m)?.len();
        Ok(Relation { kind: self.relation_from_count(count), joining_line_count: count })
    }

    pub(crate) fn relation_kind_idx(&self, a: usize, b: usize) -> RelationKind {
        let (ha, ta) = self.projections(a);
        let (hb, tb) = self.projections(b);
        match (ha == hb, ta == tb) {
            (true, true) => RelationKind::Identical,
            (false, false) => RelationKind::Distant,
            _ => RelationKind::Neighbour,
        }
    }

    /// Classification by the shared-projection predicate. The reported
    /// line count is the one implied by the kind (1, q+1 or (q+1)^2).
    pub fn relate_fast(&self, a: &PointClass, b: &PointClass) -> Result<Relation> {
        self.check_point(a)?;
        self.check_point(b)?;
        let q = self.order() as usize;
        let kind = self.relation_kind_idx(a.index(), b.index());
        let joining_line_count = match kind {
            RelationKind::Identical => (q + 1) * (q + 1),
            RelationKind::Neighbour => q + 1,
            RelationKind::Distant => 1,
        };
        Ok(Relation { kind, joining_line_count })
    }

    pub(crate) fn neighbourhood_idx(&self, a: usize) -> Vec<usize> {
        let (h, t) = self.projections(a);
        let npg = self.pg().len();
        let mut out: Vec<usize> = (0..npg)
            .filter(|&x| x != t)
            .map(|x| self.class_from_projections(h, x))
            .chain((0..npg).filter(|&x| x != h).map(|x| self.class_from_projections(x, t)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Sorted indices of all neighbours of `a`.
    pub fn neighbourhood(&self, a: &PointClass) -> Result<Vec<usize>> {
        self.check_point(a)?;
        Ok(self.neighbourhood_idx(a.index()))
    }

    /// Neighbours of `a` found by counting joining lines against every
    /// other point.
    pub fn neighbourhood_definitional(&self, a: &PointClass) -> Result<Vec<usize>> {
        self.check_point(a)?;
        let through_a = self.lines_through_point_definitional(a)?;
        Ok(self
            .points()
            .iter()
            .filter(|b| *b != a)
            .filter(|b| {
                through_a
                    .iter()
                    .filter(|&&l| self.incident_triples(self.line(l).canonical(), b.canonical()))
                    .nth(1)
                    .is_some()
            })
            .map(|b| b.index())
            .collect())
    }

    pub fn common_neighbours(&self, a: &PointClass, b: &PointClass) -> Result<Vec<usize>> {
        if a == b {
            return Err(Error::domain("common neighbours are defined for distinct points"));
        }
        let na: BTreeSet<usize> = self.neighbourhood(a)?.into_iter().collect();
        Ok(self.neighbourhood(b)?.into_iter().filter(|x| na.contains(x)).collect())
    }

    /// Number of neighbours of `p` lying on the line `l` through it.
    pub fn line_neighbour_profile(&self, p: &PointClass, l: &LineClass) -> Result<usize> {
        if !self.incident(l, p)? {
            return Err(Error::domain(format!("point {p} is not on line {l}")));
        }
        let on: BTreeSet<usize> = self.points_on_line(l)?.into_iter().collect();
        Ok(self.neighbourhood(p)?.into_iter().filter(|x| on.contains(x)).count())
    }

    /// Scans the points of `l` in index order, keeping each one that is
    /// distant from everything kept so far.
    pub fn greedy_distant_set(&self, l: &LineClass) -> Result<Vec<usize>> {
        let mut chosen: Vec<usize> = Vec::new();
        for p in self.points_on_line(l)? {
            if chosen.iter().all(|&c| self.relation_kind_idx(c, p) == RelationKind::Distant) {
                chosen.push(p);
            }
        }
        Ok(chosen)
    }

    /// Checks that `q+1` mutually distant points of `l` together with the
    /// pairwise overlaps of their neighbourhoods account for every point of
    /// `l`, each exactly once.
    pub fn line_covering_check(&self, l: &LineClass) -> Result<bool> {
        let q = self.order() as usize;
        let on: BTreeSet<usize> = self.points_on_line(l)?.into_iter().collect();
        let distant = self.greedy_distant_set(l)?;
        if distant.len() != q + 1 {
            return Ok(false);
        }
        let mut covered: BTreeSet<usize> = distant.iter().copied().collect();
        let mut overlap_total = 0;
        for (i, &x) in distant.iter().enumerate() {
            for &y in &distant[i + 1..] {
                let common = self.common_neighbours(self.point(x), self.point(y))?;
                overlap_total += common.len();
                covered.extend(common);
            }
        }
        Ok(overlap_total == q * (q + 1) && covered.len() == (q + 1) + overlap_total && covered == on)
    }

    /// Builds the neighbour graph with the shared-projection predicate.
    pub fn neighbour_graph(&self) -> Result<NeighbourGraph> {
        if !self.is_materialized() {
            return Err(Error::capacity(format!(
                "the neighbour graph is only built for materialized planes (q = {} is above the bound)",
                self.order()
            )));
        }
        let adjacency =
            (0..self.num_points()).map(|a| self.neighbourhood_idx(a).into_iter().map(|i| i as u32).collect()).collect();
        Ok(NeighbourGraph { adjacency })
    }
}

//! The ordinary Desarguesian plane PG(2,q).
//!
//! Points and lines share one list of canonical triples (leftmost nonzero
//! entry equal to 1) in lexicographic order, so point `i` and line `i` carry
//! the same coordinates.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};

/// Scales a triple so that its leftmost nonzero entry is 1.
/// Returns `None` for the zero triple.
pub fn normalize_projective(field: &FieldCtx, t: [Elem; 3]) -> Option<[Elem; 3]> {
    let lead = *t.iter().find(|&&c| c != 0)?;
    let s = field.inv(lead).ok()?;
    Some(t.map(|c| field.mul(s, c)))
}

pub fn dot(field: &FieldCtx, l: [Elem; 3], p: [Elem; 3]) -> Elem {
    (0..3).fold(0, |acc, i| field.add(acc, field.mul(l[i], p[i])))
}

pub(crate) fn fmt_triple(t: &[Elem; 3]) -> String {
    format!("({},{},{})", t[0], t[1], t[2])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PgPoint {
    pub coords: [Elem; 3],
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PgLine {
    pub coords: [Elem; 3],
    pub index: usize,
}

impl fmt::Display for PgPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_triple(&self.coords))
    }
}

impl fmt::Display for PgLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_triple(&self.coords))
    }
}

#[derive(Clone, Debug)]
pub struct PgPlane {
    field: Arc<FieldCtx>,
    coords: Vec<[Elem; 3]>,
    /// `incident[l]` = sorted indices of the points on line `l`. By the
    /// symmetry of the dot product this is also the list of lines through
    /// point `l`.
    incident: Vec<Vec<u32>>,
}

impl PgPlane {
    pub fn new(field: Arc<FieldCtx>) -> Self {
        let q = field.order();
        let mut coords = Vec::with_capacity((q * q + q + 1) as usize);
        coords.push([0, 0, 1]);
        for c in 0..q {
            coords.push([0, 1, c]);
        }
        for b in 0..q {
            for c in 0..q {
                coords.push([1, b, c]);
            }
        }
        let incident = coords
            .iter()
            .map(|&l| {
                coords.iter().enumerate().filter(|(_, &p)| dot(&field, l, p) == 0).map(|(i, _)| i as u32).collect()
            })
            .collect();
        PgPlane { field, coords, incident }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    /// Number of points, which equals the number of lines.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Position of a canonical triple in the enumeration order.
    pub fn index_of_canonical(&self, t: [Elem; 3]) -> usize {
        let q = self.field.order() as usize;
        match t {
            [0, 0, _] => 0,
            [0, _, c] => 1 + c as usize,
            [_, b, c] => 1 + q + b as usize * q + c as usize,
        }
    }

    pub fn coords(&self, index: usize) -> [Elem; 3] {
        self.coords[index]
    }

    pub fn point(&self, index: usize) -> PgPoint {
        PgPoint { coords: self.coords[index], index }
    }

    pub fn line(&self, index: usize) -> PgLine {
        PgLine { coords: self.coords[index], index }
    }

    pub fn points(&self) -> impl Iterator<Item = PgPoint> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    pub fn lines(&self) -> impl Iterator<Item = PgLine> + '_ {
        (0..self.len()).map(|i| self.line(i))
    }

    /// Canonicalizes an arbitrary nonzero triple and returns the point.
    pub fn find_point(&self, t: [Elem; 3]) -> Result<PgPoint> {
        for &c in &t {
            self.field.check(c)?;
        }
        let c = normalize_projective(&self.field, t)
            .ok_or_else(|| Error::domain("the zero triple is not a projective point"))?;
        Ok(self.point(self.index_of_canonical(c)))
    }

    pub fn find_line(&self, t: [Elem; 3]) -> Result<PgLine> {
        let p = self.find_point(t)?;
        Ok(self.line(p.index))
    }

    pub fn incident(&self, l: &PgLine, p: &PgPoint) -> bool {
        dot(&self.field, l.coords, p.coords) == 0
    }

    pub(crate) fn incident_indices(&self, line: usize) -> &[u32] {
        &self.incident[line]
    }

    pub fn points_on_line(&self, l: &PgLine) -> Vec<usize> {
        self.incident[l.index].iter().map(|&i| i as usize).collect()
    }

    pub fn lines_through(&self, p: &PgPoint) -> Vec<usize> {
        self.incident[p.index].iter().map(|&i| i as usize).collect()
    }

    /// The unique line joining two distinct points, via the cross product.
    pub fn line_through(&self, a: &PgPoint, b: &PgPoint) -> Result<PgLine> {
        if a.coords == b.coords {
            return Err(Error::domain("a line through two points needs distinct points"));
        }
        let f = &*self.field;
        let (x, y) = (a.coords, b.coords);
        let cross = [
            f.sub(f.mul(x[1], y[2]), f.mul(x[2], y[1])),
            f.sub(f.mul(x[2], y[0]), f.mul(x[0], y[2])),
            f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0])),
        ];
        self.find_line(cross)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(q: u64) -> PgPlane {
        PgPlane::new(Arc::new(FieldCtx::from_order(q).unwrap()))
    }

    #[test]
    fn fano_plane() {
        let p = pg(2);
        assert_eq!(p.len(), 7);
        for l in p.lines() {
            assert_eq!(p.points_on_line(&l).len(), 3);
        }
    }

    #[test]
    fn order_three() {
        let p = pg(3);
        assert_eq!(p.len(), 13);
        assert!(p.lines().all(|l| p.points_on_line(&l).len() == 4));
    }

    #[test]
    fn enumeration_is_sorted_and_indexed() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let p = pg(q);
            assert_eq!(p.len() as u64, q * q + q + 1);
            assert!(p.coords.windows(2).all(|w| w[0] < w[1]));
            for (i, &c) in p.coords.iter().enumerate() {
                assert_eq!(p.index_of_canonical(c), i);
                assert_eq!(normalize_projective(p.field(), c), Some(c));
            }
        }
    }

    #[test]
    fn two_points_one_line() {
        for q in [2, 3, 4, 5] {
            let p = pg(q);
            for a in p.points() {
                for b in p.points().filter(|b| b.index != a.index) {
                    let l = p.line_through(&a, &b).unwrap();
                    assert!(p.incident(&l, &a) && p.incident(&l, &b));
                    let common = p.lines().filter(|m| p.incident(m, &a) && p.incident(m, &b)).count();
                    assert_eq!(common, 1);
                }
            }
        }
    }

    #[test]
    fn line_through_axes() {
        let p = pg(3);
        let a = p.find_point([1, 0, 0]).unwrap();
        let b = p.find_point([0, 1, 0]).unwrap();
        assert_eq!(p.line_through(&a, &b).unwrap().coords, [0, 0, 1]);
        assert!(matches!(p.line_through(&a, &a), Err(Error::Domain(_))));
    }

    #[test]
    fn find_point_normalizes() {
        let p = pg(5);
        assert_eq!(p.find_point([0, 3, 1]).unwrap().coords, [0, 1, 2]);
        assert!(p.find_point([0, 0, 0]).is_err());
        assert!(p.find_point([0, 0, 5]).is_err());
    }
}

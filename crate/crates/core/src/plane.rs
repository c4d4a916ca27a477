//! Points and lines of the projective plane over the double-number ring.
//!
//! A point is a class of admissible triples under scaling by units. The unit
//! group is GF(q)* x GF(q)* acting componentwise, so a class is determined
//! by its two projections onto GF(q)^3 (first components, second
//! components), each taken up to a scalar. Canonical forms normalize both
//! projections independently to have leftmost nonzero entry 1.
//!
//! Lines are the same set of classes; incidence is `l1*x1 + l2*x2 + l3*x3 = 0`
//! in the ring.

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::pg::{normalize_projective, PgPlane};
use crate::ring::{DoubleRing, RingElem};

/// Largest order for which the exhaustive q^6 enumeration is allowed.
pub const ORACLE_MAX_Q: u32 = 5;

static NEXT_PLANE_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordTriple(pub [RingElem; 3]);

impl CoordTriple {
    pub const fn new(c1: RingElem, c2: RingElem, c3: RingElem) -> Self {
        CoordTriple([c1, c2, c3])
    }

    pub fn from_projections(hat: [Elem; 3], tilde: [Elem; 3]) -> Self {
        CoordTriple([0, 1, 2].map(|i| RingElem::new(hat[i], tilde[i])))
    }

    /// First components.
    pub fn hat(&self) -> [Elem; 3] {
        self.0.map(|x| x.a)
    }

    /// Second components.
    pub fn tilde(&self) -> [Elem; 3] {
        self.0.map(|x| x.b)
    }

    /// Admissible iff the coordinates are not all in one ideal.
    pub fn is_admissible(&self) -> bool {
        self.hat() != [0; 3] && self.tilde() != [0; 3]
    }

    pub fn scaled(&self, ring: &DoubleRing, u: RingElem) -> Self {
        CoordTriple(self.0.map(|x| ring.mul(u, x)))
    }
}

impl fmt::Display for CoordTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

pub fn is_admissible(t: &CoordTriple) -> bool {
    t.is_admissible()
}

/// Canonical representative of the unit orbit of `t`.
pub fn canonicalize(field: &FieldCtx, t: &CoordTriple) -> Result<CoordTriple> {
    let inadmissible = || Error::domain(format!("{t} is not admissible: all coordinates lie in one ideal"));
    let hat = normalize_projective(field, t.hat()).ok_or_else(inadmissible)?;
    let tilde = normalize_projective(field, t.tilde()).ok_or_else(inadmissible)?;
    Ok(CoordTriple::from_projections(hat, tilde))
}

/// Smallest triple in the unit orbit of `t`, found by applying every unit.
/// Shares no code with [`canonicalize`].
pub fn orbit_min(ring: &DoubleRing, t: &CoordTriple) -> CoordTriple {
    ring.units().map(|u| t.scaled(ring, u)).min().expect("the unit group is never empty")
}

/// Exhaustive enumeration of point classes: every one of the q^6 triples is
/// filtered for admissibility and grouped into unit orbits by explicit
/// scaling. Each class is returned as its [`orbit_min`], sorted.
pub fn enumerate_by_filter(ring: &DoubleRing) -> Result<Vec<CoordTriple>> {
    let q = ring.order();
    if q > ORACLE_MAX_Q {
        return Err(Error::capacity(format!("exhaustive enumeration is limited to q <= {ORACLE_MAX_Q}, got q = {q}")));
    }
    let elems: Vec<RingElem> = ring.elements().collect();
    let units: Vec<RingElem> = ring.units().collect();
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for &x in &elems {
        for &y in &elems {
            for &z in &elems {
                let t = CoordTriple::new(x, y, z);
                if !t.is_admissible() || seen.contains(&t) {
                    continue;
                }
                let orbit: Vec<CoordTriple> = units.iter().map(|&u| t.scaled(ring, u)).collect();
                reps.push(*orbit.iter().min().unwrap());
                seen.extend(orbit);
            }
        }
    }
    reps.sort();
    Ok(reps)
}

/// Parses `(x,y,z)` where each coordinate is `[a,b]`, a bare integer `c`
/// (meaning `[c,c]`), `e` or `e-1`.
pub fn parse_triple(ring: &DoubleRing, text: &str) -> Result<CoordTriple> {
    let s = text.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::parse(format!("expected a parenthesized triple, got {text:?}")))?;
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&inner[start..]);
    if parts.len() != 3 {
        return Err(Error::parse(format!("expected three coordinates, got {}", parts.len())));
    }
    let coords = parts.iter().map(|p| parse_ring_elem(ring, p)).collect::<Result<Vec<_>>>()?;
    Ok(CoordTriple::new(coords[0], coords[1], coords[2]))
}

pub fn parse_ring_elem(ring: &DoubleRing, text: &str) -> Result<RingElem> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let int = |t: &str| {
        t.parse::<Elem>()
            .map_err(|_| Error::parse(format!("{t:?} is not a field element")))
            .and_then(|v| ring.field().check(v).map_err(|e| Error::parse(e.to_string())))
    };
    match s.as_str() {
        "e" => Ok(ring.e()),
        "e-1" => Ok(ring.e_minus_one()),
        _ => {
            if let Some(pair) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                let (a, b) =
                    pair.split_once(',').ok_or_else(|| Error::parse(format!("{text:?} is not a pair [a,b]")))?;
                Ok(RingElem::new(int(a)?, int(b)?))
            } else {
                Ok(ring.scalar(int(&s)?))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointType {
    /// Some coordinate is a unit.
    TypeI,
    /// All coordinates are zero-divisors, not all from one ideal.
    TypeII,
}

#[derive(Clone, Copy, Debug, Eq)]
pub struct PointClass {
    canonical: CoordTriple,
    index: usize,
    plane: u64,
}

#[derive(Clone, Copy, Debug, Eq)]
pub struct LineClass {
    canonical: CoordTriple,
    index: usize,
    plane: u64,
}

impl PartialEq for PointClass {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl PartialEq for LineClass {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl PointClass {
    pub fn canonical(&self) -> &CoordTriple {
        &self.canonical
    }

    pub fn index(&self) -> usize {
        self.index
    }
}

impl LineClass {
    pub fn canonical(&self) -> &CoordTriple {
        &self.canonical
    }

    pub fn index(&self) -> usize {
        self.index
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

impl fmt::Display for LineClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

/// Size limits for plane construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlaneConfig {
    /// Planes above this order are refused outright.
    pub max_q: u32,
    /// Per-line point sets are stored, and the neighbour graph may be built,
    /// only up to this order.
    pub max_full_q: u32,
    pub max_points: Option<u64>,
}

pub const ENV_MAX_Q: &str = "RINGPLANE_MAX_Q";

impl Default for PlaneConfig {
    fn default() -> Self {
        PlaneConfig { max_q: 31, max_full_q: 13, max_points: None }
    }
}

impl PlaneConfig {
    /// Default limits, with `RINGPLANE_MAX_Q` overriding the full
    /// materialization bound (and raising the hard bound if needed).
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Some(v) = std::env::var(ENV_MAX_Q).ok().and_then(|v| v.trim().parse::<u32>().ok()) {
            cfg.max_full_q = v;
            cfg.max_q = cfg.max_q.max(v);
        }
        cfg
    }
}

pub fn point_total(q: u64) -> u64 {
    (q * q + q + 1).pow(2)
}

/// The fully enumerated plane. Immutable after construction.
#[derive(Debug)]
pub struct PlaneCtx {
    id: u64,
    ring: DoubleRing,
    pg: PgPlane,
    points: Vec<PointClass>,
    lines: Vec<LineClass>,
    /// (hat index, tilde index) in PG(2,q) for each class.
    proj: Vec<(u32, u32)>,
    /// hat * |PG| + tilde -> class index
    pair_index: Vec<u32>,
    /// Stored per-line point sets; also the per-point line sets, since
    /// points and lines share one coordinate list and incidence is symmetric.
    incidence: Option<Vec<Vec<u32>>>,
}

impl PartialEq for PlaneCtx {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.points == other.points && self.lines == other.lines
    }
}

impl PlaneCtx {
    pub fn new(q: u64) -> Result<Self> {
        Self::build(Arc::new(FieldCtx::from_order(q)?), &PlaneConfig::default())
    }

    pub fn build(field: Arc<FieldCtx>, cfg: &PlaneConfig) -> Result<Self> {
        let q = field.order();
        if q > cfg.max_q {
            return Err(Error::capacity(format!("q = {q} exceeds the plane bound q <= {}", cfg.max_q)));
        }
        let total = point_total(q as u64);
        if let Some(max) = cfg.max_points {
            if total > max {
                return Err(Error::capacity(format!("{total} points exceed the bound of {max}")));
            }
        }
        let id = NEXT_PLANE_ID.fetch_add(1, Ordering::Relaxed);
        let ring = DoubleRing::new(field.clone());
        let pg = PgPlane::new(field);
        let npg = pg.len();

        let mut classes: Vec<(CoordTriple, u32, u32)> = Vec::with_capacity(npg * npg);
        for h in 0..npg {
            for t in 0..npg {
                classes.push((CoordTriple::from_projections(pg.coords(h), pg.coords(t)), h as u32, t as u32));
            }
        }
        classes.sort_unstable_by_key(|c| c.0);

        let mut pair_index = vec![0u32; npg * npg];
        let mut points = Vec::with_capacity(classes.len());
        let mut lines = Vec::with_capacity(classes.len());
        let mut proj = Vec::with_capacity(classes.len());
        for (index, &(canonical, h, t)) in classes.iter().enumerate() {
            pair_index[h as usize * npg + t as usize] = index as u32;
            points.push(PointClass { canonical, index, plane: id });
            lines.push(LineClass { canonical, index, plane: id });
            proj.push((h, t));
        }

        let mut ctx = PlaneCtx { id, ring, pg, points, lines, proj, pair_index, incidence: None };
        if q <= cfg.max_full_q {
            let sets = (0..ctx.lines.len()).map(|l| ctx.product_incidence(l)).collect();
            ctx.incidence = Some(sets);
        }
        Ok(ctx)
    }

    pub fn order(&self) -> u32 {
        self.ring.order()
    }

    pub fn ring(&self) -> &DoubleRing {
        &self.ring
    }

    pub fn field(&self) -> &FieldCtx {
        self.ring.field()
    }

    pub fn pg(&self) -> &PgPlane {
        &self.pg
    }

    /// Whether per-line point sets are stored.
    pub fn is_materialized(&self) -> bool {
        self.incidence.is_some()
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn points(&self) -> &[PointClass] {
        &self.points
    }

    pub fn lines(&self) -> &[LineClass] {
        &self.lines
    }

    pub fn point(&self, index: usize) -> &PointClass {
        &self.points[index]
    }

    pub fn line(&self, index: usize) -> &LineClass {
        &self.lines[index]
    }

    pub(crate) fn check_point(&self, p: &PointClass) -> Result<()> {
        if p.plane != self.id {
            return Err(Error::domain(format!("point {p} belongs to a different plane")));
        }
        Ok(())
    }

    pub(crate) fn check_line(&self, l: &LineClass) -> Result<()> {
        if l.plane != self.id {
            return Err(Error::domain(format!("line {l} belongs to a different plane")));
        }
        Ok(())
    }

    fn class_index(&self, t: &CoordTriple) -> Result<usize> {
        self.ring.check(t.0[0])?;
        self.ring.check(t.0[1])?;
        self.ring.check(t.0[2])?;
        let c = canonicalize(self.field(), t)?;
        let h = self.pg.index_of_canonical(c.hat());
        let tl = self.pg.index_of_canonical(c.tilde());
        Ok(self.pair_index[h * self.pg.len() + tl] as usize)
    }

    /// The point class containing an arbitrary admissible triple.
    pub fn locate_point(&self, t: &CoordTriple) -> Result<&PointClass> {
        Ok(&self.points[self.class_index(t)?])
    }

    pub fn locate_line(&self, t: &CoordTriple) -> Result<&LineClass> {
        Ok(&self.lines[self.class_index(t)?])
    }

    /// PG(2,q) indices of the two projections of class `index`.
    pub fn projections(&self, index: usize) -> (usize, usize) {
        let (h, t) = self.proj[index];
        (h as usize, t as usize)
    }

    pub fn class_from_projections(&self, hat: usize, tilde: usize) -> usize {
        self.pair_index[hat * self.pg.len() + tilde] as usize
    }

    pub fn point_type(&self, p: &PointClass) -> PointType {
        if p.canonical.0.iter().any(|&x| self.ring.is_unit(x)) {
            PointType::TypeI
        } else {
            PointType::TypeII
        }
    }

    /// (type I, type II) counts over all points.
    pub fn type_counts(&self) -> (u64, u64) {
        self.points.iter().fold((0, 0), |(one, two), p| match self.point_type(p) {
            PointType::TypeI => (one + 1, two),
            PointType::TypeII => (one, two + 1),
        })
    }

    /// Ring-level incidence test: `sum l_i x_i == 0`.
    pub fn incident(&self, l: &LineClass, p: &PointClass) -> Result<bool> {
        self.check_line(l)?;
        self.check_point(p)?;
        Ok(self.incident_triples(&l.canonical, &p.canonical))
    }

    pub fn incident_triples(&self, l: &CoordTriple, p: &CoordTriple) -> bool {
        let r = &self.ring;
        let sum = (0..3).fold(r.zero(), |acc, i| r.add(acc, r.mul(l.0[i], p.0[i])));
        sum == r.zero()
    }

    fn product_incidence(&self, line: usize) -> Vec<u32> {
        let (h, t) = self.projections(line);
        let mut out: Vec<u32> = Vec::with_capacity(self.pg.incident_indices(h).len().pow(2));
        for &ph in self.pg.incident_indices(h) {
            for &pt in self.pg.incident_indices(t) {
                out.push(self.class_from_projections(ph as usize, pt as usize) as u32);
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn incidence_of(&self, index: usize) -> Vec<u32> {
        match &self.incidence {
            Some(sets) => sets[index].clone(),
            None => self.product_incidence(index),
        }
    }

    /// Sorted indices of the points on `l`, taken from the product
    /// structure (pairs of incident PG(2,q) flags).
    pub fn points_on_line(&self, l: &LineClass) -> Result<Vec<usize>> {
        self.check_line(l)?;
        Ok(self.incidence_of(l.index).into_iter().map(|i| i as usize).collect())
    }

    pub fn lines_through_point(&self, p: &PointClass) -> Result<Vec<usize>> {
        self.check_point(p)?;
        Ok(self.incidence_of(p.index).into_iter().map(|i| i as usize).collect())
    }

    /// Points on `l` found by testing ring incidence against every point.
    pub fn points_on_line_definitional(&self, l: &LineClass) -> Result<Vec<usize>> {
        self.check_line(l)?;
        Ok(self.points.iter().filter(|p| self.incident_triples(&l.canonical, &p.canonical)).map(|p| p.index).collect())
    }

    pub fn lines_through_point_definitional(&self, p: &PointClass) -> Result<Vec<usize>> {
        self.check_point(p)?;
        Ok(self.lines.iter().filter(|l| self.incident_triples(&l.canonical, &p.canonical)).map(|l| l.index).collect())
    }
}

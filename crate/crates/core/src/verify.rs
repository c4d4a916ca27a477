//! The claim suite behind `ringplane verify`.
//!
//! Each claim compares an enumerated value against its closed form or
//! against an independent route. Large planes are sampled with a fixed-seed
//! generator, so reports are reproducible byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::HomTag;
use crate::neighbour::RelationKind;
use crate::plane::{enumerate_by_filter, orbit_min, point_total, CoordTriple, PlaneCtx, ORACLE_MAX_Q};
use crate::ring::{DoubleRing, Ideal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    /// Counting claims and the shared-projection predicate.
    Fast,
    /// Adds line-counting checks of the neighbour relation.
    Definitional,
    /// Adds the exhaustive q^6 enumeration (q <= 5).
    Oracle,
}

impl FromStr for Depth {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Depth::Fast),
            "definitional" => Ok(Depth::Definitional),
            "oracle" => Ok(Depth::Oracle),
            _ => Err(Error::parse(format!("unknown depth {s:?}"))),
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Depth::Fast => "fast",
            Depth::Definitional => "definitional",
            Depth::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: &'static str,
    pub observed: String,
    pub expected: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub q: u32,
    pub depth: Depth,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn passed(&self) -> usize {
        self.claims.iter().filter(|c| c.pass).count()
    }

    pub fn to_text(&self) -> String {
        let width = self.claims.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = format!("verify q={} depth={}\n", self.q, self.depth);
        for c in &self.claims {
            let status = if c.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{status} {:width$}  observed={}  expected={}", c.name, c.observed, c.expected).unwrap();
        }
        writeln!(out, "summary: {}/{} passed", self.passed(), self.claims.len()).unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail") + "\n"
    }
}

/// Explicit coordinate families for the neighbours of `(1,0,0)`: those
/// with a unit first coordinate, those of the shape `(e-1, e, g e)` /
/// `(e, e-1, h(e-1))`, and the pair `(e-1, 0, e)`, `(e, 0, e-1)`.
pub fn origin_neighbour_families(ring: &DoubleRing) -> [Vec<CoordTriple>; 3] {
    let (zero, one, e, f) = (ring.zero(), ring.one(), ring.e(), ring.e_minus_one());
    let s = |c| ring.scalar(c);
    let q = ring.order();
    let mut unit_first = Vec::new();
    for g2 in 0..q {
        for g3 in 0..q {
            if (g2, g3) == (0, 0) {
                continue;
            }
            unit_first.push(CoordTriple::new(one, ring.mul(s(g2), e), ring.mul(s(g3), e)));
            unit_first.push(CoordTriple::new(one, ring.mul(s(g2), f), ring.mul(s(g3), f)));
        }
    }
    let mut mixed = Vec::new();
    for g in 0..q {
        mixed.push(CoordTriple::new(f, e, ring.mul(s(g), e)));
        mixed.push(CoordTriple::new(e, f, ring.mul(s(g), f)));
    }
    let pair = vec![CoordTriple::new(f, zero, e), CoordTriple::new(e, zero, f)];
    [unit_first, mixed, pair]
}

fn claim(name: &'static str, observed: impl fmt::Debug, expected: impl fmt::Debug, pass: bool) -> Claim {
    Claim { name, observed: format!("{observed:?}"), expected: format!("{expected:?}"), pass }
}

fn eq_claim<T: fmt::Debug + PartialEq>(name: &'static str, observed: T, expected: T) -> Claim {
    let pass = observed == expected;
    claim(name, observed, expected, pass)
}

struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    fn new(q: u32) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(0x5eed_0000 + q as u64) }
    }

    /// `k` distinct indices below `n` in increasing order, or all of them.
    fn subset(&mut self, n: usize, k: usize) -> Vec<usize> {
        if k >= n {
            return (0..n).collect();
        }
        let mut v = sample(&mut self.rng, n, k).into_vec();
        v.sort_unstable();
        v
    }

    fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

/// Sample sizes used by the suite.
#[derive(Clone, Copy, Debug)]
struct Budget {
    points: usize,
    lines: usize,
    pair_anchors: usize,
    pairs_per_anchor: usize,
    triples: usize,
}

impl Budget {
    fn for_plane(plane: &PlaneCtx, depth: Depth) -> Self {
        let n = plane.num_points();
        let exhaustive = plane.order() <= 3;
        let deep = depth >= Depth::Definitional;
        Budget {
            points: if exhaustive { n } else { 300 },
            lines: if exhaustive { n } else { 200 },
            pair_anchors: if exhaustive {
                n
            } else if deep {
                250
            } else {
                40
            },
            pairs_per_anchor: if exhaustive {
                n
            } else if deep {
                400
            } else {
                100
            },
            triples: if exhaustive { 2000 } else { 1000 },
        }
    }
}

pub fn verify(plane: &PlaneCtx, depth: Depth) -> Result<Report> {
    let q = plane.order();
    if depth == Depth::Oracle && q > ORACLE_MAX_Q {
        return Err(Error::capacity(format!("oracle depth is limited to q <= {ORACLE_MAX_Q}, got q = {q}")));
    }
    let qq = q as usize;
    let n = plane.num_points();
    let budget = Budget::for_plane(plane, depth);
    let mut rng = Sampler::new(q);
    let mut claims = Vec::new();
    let ring = plane.ring();

    // ring
    let c = ring.census();
    let qu = q as u64;
    claims.push(eq_claim("ring.census", (c.total, c.zero_divisors, c.units), (qu * qu, 2 * qu - 1, (qu - 1).pow(2))));
    let e_ideal = ring.ideal_members(Ideal::E);
    let f_ideal = ring.ideal_members(Ideal::EMinusOne);
    let meet: Vec<_> = e_ideal.iter().filter(|x| f_ideal.contains(x)).map(|x| x.to_string()).collect();
    claims.push(eq_claim("ring.ideals", (e_ideal.len(), f_ideal.len(), meet), (qq, qq, vec![ring.zero().to_string()])));

    // plane totals
    let total = point_total(qu);
    claims.push(eq_claim("plane.totals", (plane.num_points() as u64, plane.num_lines() as u64), (total, total)));
    claims.push(eq_claim("plane.type_split", plane.type_counts(), (total - 6 * qu, 6 * qu)));
    if depth == Depth::Oracle {
        let oracle = enumerate_by_filter(ring)?;
        let mut fast: Vec<CoordTriple> = plane.points().iter().map(|p| orbit_min(ring, p.canonical())).collect();
        fast.sort();
        let agree = oracle == fast;
        claims.push(claim("plane.filter_enumeration", (oracle.len(), agree), (total, true), agree));
    }

    // incidence by ring arithmetic on sampled lines and points
    let per = (qq + 1) * (qq + 1);
    let lines = rng.subset(n, budget.lines);
    let mut counts = BTreeSet::new();
    let mut product_agrees = true;
    for &l in &lines {
        let def = plane.points_on_line_definitional(plane.line(l))?;
        product_agrees &= def == plane.points_on_line(plane.line(l))?;
        counts.insert(def.len());
    }
    claims.push(eq_claim("plane.points_per_line", (counts, product_agrees), (BTreeSet::from([per]), true)));
    let pts = rng.subset(n, budget.lines);
    let mut counts = BTreeSet::new();
    for &p in &pts {
        counts.insert(plane.lines_through_point_definitional(plane.point(p))?.len());
    }
    claims.push(eq_claim("plane.lines_per_point", counts, BTreeSet::from([per])));

    // neighbourhoods
    let nsize = 2 * qq * (qq + 1);
    let sizes: BTreeSet<usize> = (0..n).map(|a| plane.neighbourhood_idx(a).len()).collect();
    claims.push(eq_claim("neighbour.size", sizes, BTreeSet::from([nsize])));

    let origin = plane.locate_point(&CoordTriple::new(ring.one(), ring.zero(), ring.zero()))?;
    let families = origin_neighbour_families(ring);
    let mut union = BTreeSet::new();
    let mut breakdown = Vec::new();
    for fam in &families {
        let set: BTreeSet<usize> =
            fam.iter().map(|t| plane.locate_point(t).map(|p| p.index())).collect::<Result<_>>()?;
        breakdown.push(set.len());
        union.extend(set);
    }
    let hood: BTreeSet<usize> = plane.neighbourhood(origin)?.into_iter().collect();
    claims.push(eq_claim(
        "neighbour.origin_breakdown",
        (breakdown, union == hood),
        (vec![2 * (qq * qq - 1), 2 * qq, 2], true),
    ));

    // pairwise relations: anchors a, partners b
    let anchors = rng.subset(n, budget.pair_anchors);
    let mut joining = BTreeSet::new();
    let mut disagreements = 0usize;
    let mut pairs_checked = 0usize;
    for &a in &anchors {
        let pa = plane.point(a);
        let through: Vec<usize> = if depth >= Depth::Definitional {
            plane.lines_through_point_definitional(pa)?
        } else {
            plane.lines_through_point(pa)?
        };
        for b in rng.subset(n, budget.pairs_per_anchor) {
            if b == a {
                continue;
            }
            let pb = plane.point(b);
            let count =
                through.iter().filter(|&&l| plane.incident_triples(plane.line(l).canonical(), pb.canonical())).count();
            joining.insert(count);
            let by_count = if count >= 2 { RelationKind::Neighbour } else { RelationKind::Distant };
            if by_count != plane.relation_kind_idx(a, b) {
                disagreements += 1;
            }
            pairs_checked += 1;
        }
    }
    claims.push(eq_claim("neighbour.joining_lines", joining, BTreeSet::from([1, qq + 1])));
    claims.push(claim(
        "neighbour.predicate_agreement",
        format!("{disagreements} disagreements in {pairs_checked} pairs"),
        "0 disagreements",
        disagreements == 0,
    ));
    if depth >= Depth::Definitional {
        let mut differ = 0;
        for p in rng.subset(n, if qq <= 2 { n } else { 10 }) {
            let pp = plane.point(p);
            if plane.neighbourhood_definitional(pp)? != plane.neighbourhood(pp)? {
                differ += 1;
            }
        }
        claims.push(eq_claim("neighbour.definitional_neighbourhood", differ, 0));
    }

    // dual: meeting points of line pairs
    let mut meeting = BTreeSet::new();
    for &l in anchors.iter().take(20) {
        let lc = plane.line(l);
        let on = plane.points_on_line_definitional(lc)?;
        for m in rng.subset(n, 50) {
            if m == l {
                continue;
            }
            let mc = plane.line(m);
            meeting.insert(
                on.iter().filter(|&&p| plane.incident_triples(mc.canonical(), plane.point(p).canonical())).count(),
            );
        }
    }
    claims.push(eq_claim("neighbour.meeting_points", meeting, BTreeSet::from([1, qq + 1])));

    // overlaps of distant pairs and triples
    let mut overlap = BTreeSet::new();
    for &a in anchors.iter().take(100) {
        for b in rng.subset(n, 20) {
            if plane.relation_kind_idx(a, b) == RelationKind::Distant {
                overlap.insert(plane.common_neighbours(plane.point(a), plane.point(b))?.len());
            }
        }
    }
    claims.push(eq_claim("neighbour.distant_overlap", overlap, BTreeSet::from([2])));
    let mut triple_sizes = BTreeSet::new();
    let mut found = 0;
    let mut attempts = 0;
    while found < budget.triples && attempts < budget.triples * 50 {
        attempts += 1;
        let (a, b, c) = (rng.below(n), rng.below(n), rng.below(n));
        let distant = |x, y| plane.relation_kind_idx(x, y) == RelationKind::Distant;
        if !(distant(a, b) && distant(b, c) && distant(a, c)) {
            continue;
        }
        found += 1;
        let na: BTreeSet<usize> = plane.neighbourhood_idx(a).into_iter().collect();
        let nb: BTreeSet<usize> = plane.neighbourhood_idx(b).into_iter().collect();
        let common = plane.neighbourhood_idx(c).into_iter().filter(|x| na.contains(x) && nb.contains(x)).count();
        triple_sizes.insert(common);
    }
    claims.push(eq_claim("neighbour.distant_triples", (found, triple_sizes), (budget.triples, BTreeSet::from([0]))));

    // line structure
    let mut profiles = BTreeSet::new();
    for &p in rng.subset(n, budget.points.min(100)).iter() {
        let pp = plane.point(p);
        for l in plane.lines_through_point(pp)? {
            profiles.insert(plane.line_neighbour_profile(pp, plane.line(l))?);
        }
    }
    claims.push(eq_claim("neighbour.line_profile", profiles, BTreeSet::from([2 * qq])));
    let mut covering_failures = 0;
    for &l in &lines {
        if !plane.line_covering_check(plane.line(l))? {
            covering_failures += 1;
        }
    }
    claims.push(eq_claim("neighbour.line_covering", covering_failures, 0));
    if plane.is_materialized() {
        let g = plane.neighbour_graph()?;
        claims.push(eq_claim(
            "neighbour.graph",
            (g.vertex_count(), g.edge_count(), g.degree_histogram()),
            (n, n * nsize / 2, BTreeMap::from([(nsize, n)])),
        ));
    }

    // homomorphisms
    let field = plane.field();
    let mut axiom_failures = 0;
    for tag in HomTag::ALL {
        if tag.project(ring.one()) != 1 {
            axiom_failures += 1;
        }
        for x in ring.elements() {
            for y in ring.elements() {
                if tag.project(ring.add(x, y)) != field.add(tag.project(x), tag.project(y))
                    || tag.project(ring.mul(x, y)) != field.mul(tag.project(x), tag.project(y))
                {
                    axiom_failures += 1;
                }
            }
        }
    }
    claims.push(eq_claim("hom.axioms", axiom_failures, 0));
    let mut broken = 0;
    for &l in &lines {
        let lc = plane.line(l);
        for p in plane.points_on_line_definitional(lc)? {
            for tag in HomTag::ALL {
                let il = plane.project_line(tag, lc)?;
                let ip = plane.project_triple(tag, plane.point(p).canonical())?;
                if !plane.pg().incident(&il, &ip) {
                    broken += 1;
                }
            }
        }
    }
    claims.push(eq_claim("hom.incidence_preserved", broken, 0));
    let pairs: BTreeSet<(usize, usize)> = (0..n).map(|i| plane.projections(i)).collect();
    let npg = plane.pg().len();
    claims.push(eq_claim("hom.product_bijection", pairs.len(), npg * npg));
    let mut preimages = BTreeSet::new();
    for tag in HomTag::ALL {
        let mut fibre = vec![0usize; npg];
        for p in plane.points() {
            fibre[plane.project_point(tag, p)?.index] += 1;
        }
        preimages.extend(fibre);
    }
    claims.push(eq_claim("hom.point_fibres", preimages, BTreeSet::from([npg])));
    let mut unbalanced = 0;
    for &l in &lines {
        for tag in HomTag::ALL {
            if !plane.line_fibre_decomposition(plane.line(l), tag)?.is_balanced(plane) {
                unbalanced += 1;
            }
        }
    }
    claims.push(eq_claim("hom.line_fibres", unbalanced, 0));

    let mut split_failures = 0;
    let mut swap_failures = 0;
    let mut family_failures = 0;
    for &p in &rng.subset(n, budget.points) {
        let pp = plane.point(p);
        let hat = plane.neighbourhood_split(pp, HomTag::Hat)?;
        let tilde = plane.neighbourhood_split(pp, HomTag::Tilde)?;
        if !hat.is_balanced(qq) || !tilde.is_balanced(qq) {
            split_failures += 1;
        }
        if !plane.complementarity_check(pp)? {
            swap_failures += 1;
        }
        let mh: BTreeSet<usize> = hat.merged.iter().copied().collect();
        let mt: BTreeSet<usize> = tilde.merged.iter().copied().collect();
        let all: BTreeSet<usize> = mh.union(&mt).copied().collect();
        if !mh.is_disjoint(&mt) || all != plane.neighbourhood(pp)?.into_iter().collect() {
            family_failures += 1;
        }
    }
    claims.push(eq_claim("hom.neighbour_split", split_failures, 0));
    claims.push(eq_claim("hom.complementarity", swap_failures, 0));
    claims.push(eq_claim("hom.disjoint_families", family_failures, 0));

    // some neighbours of the origin share its image under hat, others do not
    let hat = plane.neighbourhood_split(origin, HomTag::Hat)?;
    claims.push(eq_claim(
        "hom.not_neighbour_preserving",
        (!hat.merged.is_empty(), !hat.spread.is_empty()),
        (true, true),
    ));

    Ok(Report { q, depth, claims })
}

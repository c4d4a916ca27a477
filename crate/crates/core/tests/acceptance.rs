//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.
//!
//! Expected values are closed-form counts written out here, and the checks
//! go through routes that do not share code with the fast path: ring
//! arithmetic by brute-force inverse search, incidence by evaluating the
//! ring sum on canonical triples, neighbour relations by counting common
//! lines in that incidence matrix.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ringplane::plane::{canonicalize, enumerate_by_filter, orbit_min};
use ringplane::{cli, export, CoordTriple, DoubleRing, HomTag, PlaneCtx, RelationKind, RingElem};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const ALL_Q: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn plane(q: u64) -> PlaneCtx {
    PlaneCtx::new(q).unwrap_or_else(|e| panic!("building q={q}: {e}"))
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_0000 + tag)
}

fn subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    if k >= n {
        return (0..n).collect();
    }
    let mut v = sample(rng, n, k).into_vec();
    v.sort_unstable();
    v
}

/// Unit test by searching for an inverse.
fn has_inverse(ring: &DoubleRing, x: RingElem) -> bool {
    ring.elements().any(|y| ring.mul(x, y) == ring.one())
}

/// Definitional data for a small plane: the incidence matrix from ring sums
/// and the neighbour sets from common-line counts.
struct Oracle {
    q: usize,
    /// `inc[l][p]`
    inc: Vec<Vec<bool>>,
    nbr: Vec<BTreeSet<usize>>,
}

impl Oracle {
    fn new(p: &PlaneCtx) -> Self {
        let n = p.num_points();
        let inc: Vec<Vec<bool>> = p
            .lines()
            .iter()
            .map(|l| p.points().iter().map(|x| p.incident_triples(l.canonical(), x.canonical())).collect())
            .collect();
        let mut o = Oracle { q: p.order() as usize, inc, nbr: vec![BTreeSet::new(); n] };
        for a in 0..n {
            for b in a + 1..n {
                if o.joining(a, b) >= 2 {
                    o.nbr[a].insert(b);
                    o.nbr[b].insert(a);
                }
            }
        }
        o
    }

    fn joining(&self, a: usize, b: usize) -> usize {
        self.inc.iter().filter(|row| row[a] && row[b]).count()
    }

    fn meeting(&self, l: usize, m: usize) -> usize {
        self.inc[l].iter().zip(&self.inc[m]).filter(|(x, y)| **x && **y).count()
    }

    fn on_line(&self, l: usize) -> BTreeSet<usize> {
        (0..self.inc.len()).filter(|&p| self.inc[l][p]).collect()
    }

    fn distant(&self, a: usize, b: usize) -> bool {
        a != b && !self.nbr[a].contains(&b)
    }
}

fn c1_ring_census() -> Check {
    for q in ALL_Q {
        let p = plane(q);
        let ring = p.ring();
        let elems: Vec<RingElem> = ring.elements().collect();
        let units = elems.iter().filter(|&&x| has_inverse(ring, x)).count() as u64;
        let zd = elems.len() as u64 - units;
        ensure!(elems.len() as u64 == q * q, "q={q}: {} elements", elems.len());
        ensure!(zd == 2 * q - 1 && units == (q - 1).pow(2), "q={q}: {zd} zero-divisors, {units} units");
        let c = ring.census();
        ensure!((c.total, c.zero_divisors, c.units) == (q * q, zd, units), "q={q}: census {c:?}");
        let gen = |g: RingElem| elems.iter().map(|&x| ring.mul(x, g)).collect::<BTreeSet<_>>();
        let ie = gen(ring.e());
        let ie1 = gen(ring.e_minus_one());
        ensure!(ie.len() as u64 == q && ie1.len() as u64 == q, "q={q}: ideal sizes {} {}", ie.len(), ie1.len());
        let meet: Vec<_> = ie.intersection(&ie1).collect();
        ensure!(meet == [&ring.zero()], "q={q}: ideal intersection {meet:?}");
        for x in &elems {
            ensure!(
                ring.classify(*x).is_unit() == has_inverse(ring, *x),
                "q={q}: classification of {x} disagrees with inverse search"
            );
        }
    }
    Ok("q in {2,3,4,5,7,8,9}".into())
}

fn c2_plane_totals() -> Check {
    for q in ALL_Q {
        let p = plane(q);
        let ring = p.ring();
        let total = ((q * q + q + 1) * (q * q + q + 1)) as usize;
        ensure!(
            p.num_points() == total && p.num_lines() == total,
            "q={q}: {} points {} lines",
            p.num_points(),
            p.num_lines()
        );
        let type_i = p.points().iter().filter(|x| x.canonical().0.iter().any(|&c| has_inverse(ring, c))).count();
        ensure!(type_i == total - 6 * q as usize, "q={q}: {type_i} type I points");
        ensure!(p.type_counts() == (type_i as u64, 6 * q), "q={q}: type counts {:?}", p.type_counts());
        let distinct: BTreeSet<&CoordTriple> = p.points().iter().map(|x| x.canonical()).collect();
        ensure!(distinct.len() == total, "q={q}: duplicate canonical triples");
    }
    for q in [2, 3] {
        let p = plane(q);
        let reps = enumerate_by_filter(p.ring()).map_err(|e| e.to_string())?;
        let total = ((q * q + q + 1) * (q * q + q + 1)) as usize;
        ensure!(reps.len() == total, "q={q}: filter enumeration found {}", reps.len());
    }
    Ok("fast q in {2,3,4,5,7,8,9}; q^6 filter q in {2,3}".into())
}

fn c3_per_line() -> Check {
    let mut r = rng(3);
    for q in ALL_Q {
        let p = plane(q);
        let k = ((q + 1) * (q + 1)) as usize;
        let n = p.num_points();
        let take = if q <= 4 { n } else { 200 };
        for l in subset(&mut r, n, take) {
            let line = p.line(l);
            let def = p.points_on_line_definitional(line).map_err(|e| e.to_string())?;
            ensure!(def.len() == k, "q={q}: line {line} has {} points", def.len());
            ensure!(p.points_on_line(line).unwrap() == def, "q={q}: fast and definitional point sets differ on {line}");
        }
        for x in subset(&mut r, n, take) {
            let pt = p.point(x);
            let def = p.lines_through_point_definitional(pt).map_err(|e| e.to_string())?;
            ensure!(def.len() == k, "q={q}: point {pt} is on {} lines", def.len());
            ensure!(p.lines_through_point(pt).unwrap() == def, "q={q}: line sets differ at {pt}");
        }
    }
    Ok("exhaustive q<=4, 200 lines and points for q in {5,7,8,9}".into())
}

/// Neighbours of (1,0,0) written out by hand: unit first coordinate, the
/// (e-1,e,g e) / (e,e-1,h(e-1)) families, and the two remaining points.
fn origin_families(ring: &DoubleRing) -> [Vec<CoordTriple>; 3] {
    let q = ring.order();
    let (o, e, f) = (ring.one(), ring.e(), ring.e_minus_one());
    let s = |c: u32, x: RingElem| ring.mul(ring.scalar(c), x);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for g in 0..q {
        for h in 0..q {
            if (g, h) != (0, 0) {
                a.push(CoordTriple::new(o, s(g, e), s(h, e)));
                a.push(CoordTriple::new(o, s(g, f), s(h, f)));
            }
        }
        b.push(CoordTriple::new(f, e, s(g, e)));
        b.push(CoordTriple::new(e, f, s(g, f)));
    }
    let c = vec![CoordTriple::new(f, ring.zero(), e), CoordTriple::new(e, ring.zero(), f)];
    [a, b, c]
}

fn c4_neighbourhood_size() -> Check {
    let mut r = rng(4);
    for q in [2u64, 3, 4, 5] {
        let p = plane(q);
        let ring = p.ring();
        let size = (2 * q * (q + 1)) as usize;
        if q <= 3 {
            let o = Oracle::new(&p);
            for (a, set) in o.nbr.iter().enumerate() {
                ensure!(set.len() == size, "q={q}: point {} has {} neighbours", p.point(a), set.len());
                let fast: BTreeSet<usize> = p.neighbourhood(p.point(a)).unwrap().into_iter().collect();
                ensure!(&fast == set, "q={q}: neighbourhood of {} differs", p.point(a));
            }
        } else {
            for a in subset(&mut r, p.num_points(), 25) {
                let def = p.neighbourhood_definitional(p.point(a)).map_err(|e| e.to_string())?;
                ensure!(def.len() == size, "q={q}: point {} has {} neighbours", p.point(a), def.len());
                ensure!(p.neighbourhood(p.point(a)).unwrap() == def, "q={q}: neighbourhood differs");
            }
            for a in 0..p.num_points() {
                ensure!(p.neighbourhood(p.point(a)).unwrap().len() == size, "q={q}: fast size at {a}");
            }
        }
        let origin = p.locate_point(&CoordTriple::new(ring.one(), ring.zero(), ring.zero())).unwrap();
        let def: BTreeSet<usize> = p.neighbourhood_definitional(origin).unwrap().into_iter().collect();
        let fams = origin_families(ring);
        let sizes: Vec<usize> = fams.iter().map(|f| f.len()).collect();
        let qq = q as usize;
        ensure!(sizes == [2 * (qq * qq - 1), 2 * qq, 2], "q={q}: family sizes {sizes:?}");
        let mut union = BTreeSet::new();
        for t in fams.iter().flatten() {
            union.insert(p.locate_point(t).map_err(|e| e.to_string())?.index());
        }
        ensure!(union == def, "q={q}: families of (1,0,0) do not match its neighbourhood");
    }
    Ok("exhaustive q in {2,3}, 25 definitional + all fast at q in {4,5}; (1,0,0) breakdown".into())
}

fn c5_distant_overlap() -> Check {
    // q = 2: exhaustive on the oracle.
    {
        let p = plane(2);
        let o = Oracle::new(&p);
        let n = p.num_points();
        let (mut pairs, mut triples) = (0, 0);
        for a in 0..n {
            for b in a + 1..n {
                if !o.distant(a, b) {
                    continue;
                }
                pairs += 1;
                let common = o.nbr[a].intersection(&o.nbr[b]).count();
                ensure!(common == 2, "q=2: distant pair ({a},{b}) shares {common}");
                for c in b + 1..n {
                    if o.distant(a, c) && o.distant(b, c) {
                        triples += 1;
                        let all = o.nbr[a].iter().filter(|x| o.nbr[b].contains(x) && o.nbr[c].contains(x)).count();
                        ensure!(all == 0, "q=2: distant triple ({a},{b},{c}) shares {all}");
                    }
                }
            }
        }
        ensure!(pairs > 0 && triples > 0, "q=2: no distant pairs/triples found");
    }
    let mut r = rng(5);
    for q in [3u64, 4, 5] {
        let p = plane(q);
        let n = p.num_points();
        let nbr: Vec<BTreeSet<usize>> =
            (0..n).map(|a| p.neighbourhood(p.point(a)).unwrap().into_iter().collect()).collect();
        let distant = |a: usize, b: usize| a != b && !nbr[a].contains(&b);
        let mut pairs = 0;
        while pairs < 10_000 {
            let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
            if !distant(a, b) {
                continue;
            }
            pairs += 1;
            let common = nbr[a].intersection(&nbr[b]).count();
            ensure!(common == 2, "q={q}: distant pair ({a},{b}) shares {common}");
        }
        let mut triples = 0;
        while triples < 1_000 {
            let (a, b, c) = (r.gen_range(0..n), r.gen_range(0..n), r.gen_range(0..n));
            if !(distant(a, b) && distant(a, c) && distant(b, c)) {
                continue;
            }
            triples += 1;
            let all = nbr[a].iter().filter(|x| nbr[b].contains(x) && nbr[c].contains(x)).count();
            ensure!(all == 0, "q={q}: distant triple ({a},{b},{c}) shares {all}");
        }
    }
    Ok("exhaustive q=2; 10^4 pairs and 10^3 triples at q in {3,4,5}".into())
}

fn c6_joining_lines() -> Check {
    for q in [2u64, 3] {
        let p = plane(q);
        let o = Oracle::new(&p);
        let n = p.num_points();
        let allowed = [1, o.q + 1];
        let (mut seen_pts, mut seen_lines) = (BTreeSet::new(), BTreeSet::new());
        for a in 0..n {
            for b in a + 1..n {
                let k = o.joining(a, b);
                ensure!(allowed.contains(&k), "q={q}: points {a},{b} joined by {k} lines");
                seen_pts.insert(k);
                let m = o.meeting(a, b);
                ensure!(allowed.contains(&m), "q={q}: lines {a},{b} meet in {m} points");
                seen_lines.insert(m);
            }
        }
        let want: BTreeSet<usize> = allowed.into_iter().collect();
        ensure!(seen_pts == want && seen_lines == want, "q={q}: saw {seen_pts:?} / {seen_lines:?}");
    }
    Ok("all point pairs and line pairs at q in {2,3}".into())
}

fn c7_line_covering() -> Check {
    let mut r = rng(7);
    for q in [2u64, 3, 4, 5] {
        let p = plane(q);
        let qq = q as usize;
        let n = p.num_points();
        let lines = if q <= 3 { (0..n).collect() } else { subset(&mut r, n, 60) };
        for l in lines {
            let line = p.line(l);
            ensure!(p.line_covering_check(line).unwrap(), "q={q}: covering fails on {line}");
            // Independent recount from definitional incidence and neighbourhoods.
            let on: BTreeSet<usize> = p.points_on_line_definitional(line).unwrap().into_iter().collect();
            let mut chosen: Vec<usize> = Vec::new();
            let mut nbrs: Vec<BTreeSet<usize>> = Vec::new();
            for &x in &on {
                if chosen.iter().all(|&c| p.relate(p.point(c), p.point(x)).unwrap().kind == RelationKind::Distant) {
                    chosen.push(x);
                    nbrs.push(p.neighbourhood_definitional(p.point(x)).unwrap().into_iter().collect());
                }
            }
            ensure!(chosen.len() == qq + 1, "q={q}: {} mutually distant points on {line}", chosen.len());
            let mut covered: BTreeSet<usize> = chosen.iter().copied().collect();
            let mut overlaps = 0;
            for i in 0..chosen.len() {
                for j in i + 1..chosen.len() {
                    let common: Vec<usize> = nbrs[i].intersection(&nbrs[j]).copied().collect();
                    overlaps += common.len();
                    covered.extend(common);
                }
            }
            ensure!(
                (qq + 1) + overlaps == (qq + 1) * (qq + 1) && covered == on,
                "q={q}: {} + {overlaps} does not cover {line}",
                qq + 1
            );
        }
    }
    Ok("every line at q in {2,3}, 60 lines at q in {4,5}".into())
}

fn c8_line_profile() -> Check {
    for q in [2u64, 3] {
        let p = plane(q);
        let o = Oracle::new(&p);
        let n = p.num_points();
        for a in 0..n {
            let through: Vec<usize> = (0..n).filter(|&l| o.inc[l][a]).collect();
            ensure!(through.len() == (o.q + 1) * (o.q + 1), "q={q}: {} lines through {a}", through.len());
            for l in through {
                let k = o.on_line(l).intersection(&o.nbr[a]).count();
                ensure!(k == 2 * o.q, "q={q}: line {l} through {a} meets {k} neighbours");
                ensure!(p.line_neighbour_profile(p.point(a), p.line(l)).unwrap() == k, "q={q}: profile differs");
            }
        }
    }
    Ok("every point/line flag at q in {2,3}".into())
}

fn c9_hom_split() -> Check {
    let mut r = rng(9);
    for q in [2u64, 3, 4, 5] {
        let p = plane(q);
        let qq = q as usize;
        let npg = qq * qq + qq + 1;
        let n = p.num_points();
        let oracle = (q <= 3).then(|| Oracle::new(&p));
        let points = if q <= 3 { (0..n).collect() } else { subset(&mut r, n, 100) };
        for a in points {
            let pt = p.point(a);
            let nbr: Vec<usize> = match &oracle {
                Some(o) => o.nbr[a].iter().copied().collect(),
                None => p.neighbourhood(pt).unwrap(),
            };
            let mut merged_sets = Vec::new();
            for tag in HomTag::ALL {
                let image = p.project_triple(tag, pt.canonical()).unwrap();
                let mut merged = BTreeSet::new();
                let mut targets = BTreeSet::new();
                for &x in &nbr {
                    let img = p.project_triple(tag, p.point(x).canonical()).unwrap();
                    if img == image {
                        merged.insert(x);
                    } else {
                        ensure!(targets.insert(img.index), "q={q}: {tag} is not injective on the spread half of {pt}");
                    }
                }
                ensure!(
                    merged.len() == qq * (qq + 1) && targets.len() == qq * (qq + 1) && targets.len() + 1 == npg,
                    "q={q}: {tag} split of {pt} is {}/{}",
                    merged.len(),
                    targets.len()
                );
                let split = p.neighbourhood_split(pt, tag).unwrap();
                ensure!(split.is_balanced(qq), "q={q}: library split unbalanced at {pt}");
                ensure!(split.merged.iter().copied().collect::<BTreeSet<_>>() == merged, "q={q}: merged sets differ");
                merged_sets.push(merged);
            }
            ensure!(merged_sets[0].is_disjoint(&merged_sets[1]), "q={q}: merged sets overlap at {pt}");
        }
    }
    Ok("every point at q in {2,3}, 100 points at q in {4,5}, both tags".into())
}

fn c10_complementarity() -> Check {
    for q in [2u64, 3, 4] {
        let p = plane(q);
        for a in p.points() {
            ensure!(p.complementarity_check(a).unwrap(), "q={q}: complementarity fails at {a}");
            let hat = p.neighbourhood_split(a, HomTag::Hat).unwrap();
            let tilde = p.neighbourhood_split(a, HomTag::Tilde).unwrap();
            let mh: BTreeSet<usize> = hat.merged.iter().copied().collect();
            let mt: BTreeSet<usize> = tilde.merged.iter().copied().collect();
            ensure!(mh == tilde.spread_domain() && mt == hat.spread_domain(), "q={q}: role swap fails at {a}");
        }
    }
    Ok("every point at q in {2,3,4}".into())
}

fn c11_oracle_equivalence() -> Check {
    for q in [2u64, 3] {
        let p = plane(q);
        let ring = p.ring();
        let reps = enumerate_by_filter(ring).map_err(|e| e.to_string())?;
        let mut fast: Vec<CoordTriple> = p.points().iter().map(|x| orbit_min(ring, x.canonical())).collect();
        fast.sort();
        ensure!(fast == reps, "q={q}: point sets differ");
        for t in &reps {
            let c = canonicalize(ring.field(), t).map_err(|e| e.to_string())?;
            ensure!(p.locate_point(t).unwrap().canonical() == &c, "q={q}: canonical form of {t} not found");
        }
        let o = Oracle::new(&p);
        let n = p.num_points();
        for l in 0..n {
            let fast: BTreeSet<usize> = p.points_on_line(p.line(l)).unwrap().into_iter().collect();
            ensure!(fast == o.on_line(l), "q={q}: incidence differs on line {l}");
        }
        for a in 0..n {
            for b in 0..n {
                let rel = p.relate_fast(p.point(a), p.point(b)).unwrap();
                let want = if a == b {
                    RelationKind::Identical
                } else if o.nbr[a].contains(&b) {
                    RelationKind::Neighbour
                } else {
                    RelationKind::Distant
                };
                ensure!(rel.kind == want, "q={q}: relation of ({a},{b}) is {:?}, expected {want:?}", rel.kind);
                if a != b {
                    ensure!(rel.joining_line_count == o.joining(a, b), "q={q}: joining count of ({a},{b})");
                }
            }
        }
    }
    Ok("point sets, incidence and all pairwise relations at q in {2,3}".into())
}

fn cli_output(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("ringplane").chain(args.iter().copied()), &mut out, &mut err);
    (code, out)
}

fn c12_determinism() -> Check {
    for depth in ["fast", "definitional", "oracle"] {
        let args = ["--q", "3", "--depth", depth, "verify"];
        let (c1, a) = cli_output(&args);
        let (c2, b) = cli_output(&args);
        ensure!(c1 == 0 && c2 == 0, "verify --depth {depth} exited {c1}/{c2}");
        ensure!(a == b && !a.is_empty(), "verify --depth {depth} reports differ");
    }
    for args in [
        &["--q", "2", "--format", "json", "export", "plane"][..],
        &["--q", "2", "--format", "dot", "export", "graph"][..],
        &["--q", "2", "--format", "json", "export", "graph"][..],
        &["--q", "2", "--format", "dot", "export", "hom", "--point", "(1,0,0)"][..],
    ] {
        let (c1, a) = cli_output(args);
        let (c2, b) = cli_output(args);
        ensure!(c1 == 0 && c2 == 0 && a == b && !a.is_empty(), "export {args:?} is not byte-stable");
    }
    let (p1, p2) = (plane(2), plane(2));
    ensure!(export::plane_json(&p1).unwrap() == export::plane_json(&p2).unwrap(), "plane JSON differs between builds");
    let (g1, g2) = (p1.neighbour_graph().unwrap(), p2.neighbour_graph().unwrap());
    ensure!(export::graph_dot(&p1, &g1, true) == export::graph_dot(&p2, &g2, true), "graph DOT differs between builds");
    Ok("verify at q=3 (all depths), DOT/JSON exports at q=2".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("ring census", c1_ring_census),
        ("plane totals", c2_plane_totals),
        ("per-line count", c3_per_line),
        ("neighbourhood size", c4_neighbourhood_size),
        ("distant-pair overlap", c5_distant_overlap),
        ("joining-line dichotomy", c6_joining_lines),
        ("line covering", c7_line_covering),
        ("per-line neighbour profile", c8_line_profile),
        ("homomorphism split", c9_hom_split),
        ("complementarity swap", c10_complementarity),
        ("oracle equivalence", c11_oracle_equivalence),
        ("determinism", c12_determinism),
    ];
    let start = Instant::now();
    let results: Vec<(usize, Check, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .enumerate()
            .map(|(i, (_, f))| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (i, r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (i, r, secs) in results {
        let name = criteria[i].0;
        match r {
            Ok(detail) => println!("PASS {:>2} {name:<28} {secs:6.2}s  {detail}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name:<28} {secs:6.2}s  {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {}/12 passed in {:.1}s", 12 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}

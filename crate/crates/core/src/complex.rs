//! Regular cell complexes with a bipolar 1-skeleton and their template checks.
//! Also rebuilds the signed Thom-Smale complex of a Sturm permutation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ball::{ball_anatomy, is_sturm_3ball};
use crate::error::{Error, Result};
use crate::invariants::{HemisphereTemplate, Invariants, Sign, SignedSets};

/// Formal hemispheres `S[v][j][δ]` share their layout with the hemisphere
/// templates computed from a permutation, so the two compare directly.
pub type FormalHemispheres = HemisphereTemplate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    pub id: usize,
    pub dim: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
}

/// A face boundary as a cyclic alternating list `v, e, v, e, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSpec {
    pub id: usize,
    pub cycle: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallSpec {
    pub id: usize,
    pub faces: Vec<usize>,
}

/// Poles and meridians. Meridians list their interior cells from North to
/// South, `e, v, e, …, e`; the poles may be included at the ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decoration {
    pub north: usize,
    pub south: usize,
    pub we: Vec<usize>,
    pub ew: Vec<usize>,
}

impl Decoration {
    fn interior(&self, path: &[usize]) -> Vec<usize> {
        let mut p = path;
        if p.first() == Some(&self.north) {
            p = &p[1..];
        }
        if p.last() == Some(&self.south) {
            p = &p[..p.len() - 1];
        }
        p.to_vec()
    }

    pub fn we_interior(&self) -> Vec<usize> {
        self.interior(&self.we)
    }

    pub fn ew_interior(&self) -> Vec<usize> {
        self.interior(&self.ew)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub cells: Vec<CellSpec>,
    pub edges: Vec<EdgeSpec>,
    pub faces: Vec<FaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decoration: Option<Decoration>,
}

impl CellComplex {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes")
    }
}

/// Lookup tables of a referentially valid complex.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub dim: BTreeMap<usize, u8>,
    pub ends: BTreeMap<usize, (usize, usize)>,
    pub cycles: BTreeMap<usize, Vec<usize>>,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub faces: Vec<usize>,
    pub ball: Option<usize>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidComplex(msg.into())
}

impl Skeleton {
    pub fn new(c: &CellComplex) -> Result<Self> {
        let mut dim = BTreeMap::new();
        for cell in &c.cells {
            if cell.dim > 3 {
                return Err(bad(format!("cell {} has dimension {}", cell.id, cell.dim)));
            }
            if dim.insert(cell.id, cell.dim).is_some() {
                return Err(bad(format!("duplicate cell id {}", cell.id)));
            }
        }
        let of_dim = |d: u8| -> Vec<usize> {
            dim.iter()
                .filter(|(_, &k)| k == d)
                .map(|(&id, _)| id)
                .collect()
        };
        let (vertices, edges, faces, balls) = (of_dim(0), of_dim(1), of_dim(2), of_dim(3));

        let mut ends = BTreeMap::new();
        for e in &c.edges {
            if dim.get(&e.id) != Some(&1) {
                return Err(bad(format!("edge {} is not a 1-cell", e.id)));
            }
            for v in [e.tail, e.head] {
                if dim.get(&v) != Some(&0) {
                    return Err(bad(format!("edge {} ends at non-vertex {v}", e.id)));
                }
            }
            if e.tail == e.head {
                return Err(bad(format!("edge {} is a loop", e.id)));
            }
            if ends.insert(e.id, (e.tail, e.head)).is_some() {
                return Err(bad(format!("edge {} listed twice", e.id)));
            }
        }
        if ends.len() != edges.len() {
            return Err(bad("some 1-cell has no endpoints"));
        }

        let mut cycles = BTreeMap::new();
        for f in &c.faces {
            if dim.get(&f.id) != Some(&2) {
                return Err(bad(format!("face {} is not a 2-cell", f.id)));
            }
            let cyc = &f.cycle;
            let len = cyc.len();
            if len < 4 || len % 2 == 1 {
                return Err(bad(format!("face {} has a cycle of length {len}", f.id)));
            }
            let distinct: BTreeSet<_> = cyc.iter().collect();
            if distinct.len() != len {
                return Err(bad(format!("face {} boundary is not simple", f.id)));
            }
            for k in (0..len).step_by(2) {
                let (v, e, w) = (cyc[k], cyc[k + 1], cyc[(k + 2) % len]);
                let Some(&(t, h)) = ends.get(&e) else {
                    return Err(bad(format!("face {} lists non-edge {e}", f.id)));
                };
                if !((t == v && h == w) || (t == w && h == v)) {
                    return Err(bad(format!(
                        "face {}: edge {e} does not join {v} and {w}",
                        f.id
                    )));
                }
            }
            if cycles.insert(f.id, cyc.clone()).is_some() {
                return Err(bad(format!("face {} listed twice", f.id)));
            }
        }
        if cycles.len() != faces.len() {
            return Err(bad("some 2-cell has no boundary cycle"));
        }

        let ball = match (balls.len(), &c.ball) {
            (0, None) => None,
            (1, Some(b)) if b.id == balls[0] => {
                for f in &b.faces {
                    if dim.get(f) != Some(&2) {
                        return Err(bad(format!("ball face {f} is not a 2-cell")));
                    }
                }
                Some(b.id)
            }
            _ => return Err(bad("3-cells and the ball record do not match")),
        };
        Ok(Skeleton {
            dim,
            ends,
            cycles,
            vertices,
            edges,
            faces,
            ball,
        })
    }

    pub fn dim_of(&self, id: usize) -> u8 {
        self.dim[&id]
    }

    pub fn tail(&self, e: usize) -> usize {
        self.ends[&e].0
    }

    pub fn head(&self, e: usize) -> usize {
        self.ends[&e].1
    }

    /// Face occurrences of each edge, with `true` when the cycle runs tail→head.
    fn edge_uses(&self) -> BTreeMap<usize, Vec<(usize, bool)>> {
        let mut uses: BTreeMap<usize, Vec<(usize, bool)>> =
            self.edges.iter().map(|&e| (e, Vec::new())).collect();
        for (&f, cyc) in &self.cycles {
            let len = cyc.len();
            for k in (0..len).step_by(2) {
                let e = cyc[k + 1];
                uses.get_mut(&e).unwrap().push((f, self.tail(e) == cyc[k]));
            }
        }
        uses
    }

    fn connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return false;
        };
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(t, h) in self.ends.values() {
            adj.entry(t).or_default().push(h);
            adj.entry(h).or_default().push(t);
        }
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in adj.get(&v).into_iter().flatten() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    fn euler(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Unique orientation source and sink, if the orientation is acyclic.
    pub fn bipolar_poles(&self) -> Option<(usize, usize)> {
        let mut indeg: BTreeMap<usize, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        let mut outdeg = indeg.clone();
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(t, h) in self.ends.values() {
            *indeg.get_mut(&h).unwrap() += 1;
            *outdeg.get_mut(&t).unwrap() += 1;
            out.entry(t).or_default().push(h);
        }
        let sources: Vec<usize> = indeg
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .collect();
        let sinks: Vec<usize> = outdeg
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .collect();
        if sources.len() != 1 || sinks.len() != 1 {
            return None;
        }
        // Kahn's algorithm for acyclicity
        let mut deg = indeg.clone();
        let mut queue = sources.clone();
        let mut count = 0;
        while let Some(v) = queue.pop() {
            count += 1;
            for &w in out.get(&v).into_iter().flatten() {
                let d = deg.get_mut(&w).unwrap();
                *d -= 1;
                if *d == 0 {
                    queue.push(w);
                }
            }
        }
        (count == self.vertices.len()).then(|| (sources[0], sinks[0]))
    }

    /// Boundary maximum (orientation source) and minimum of a face.
    pub fn face_extrema(&self, f: usize) -> Result<(usize, usize)> {
        let cyc = &self.cycles[&f];
        let len = cyc.len();
        let (mut max, mut min) = (Vec::new(), Vec::new());
        for k in (0..len).step_by(2) {
            let v = cyc[k];
            let before = cyc[(k + len - 1) % len];
            let after = cyc[k + 1];
            let out_before = self.tail(before) == v;
            let out_after = self.tail(after) == v;
            if out_before && out_after {
                max.push(v);
            }
            if !out_before && !out_after {
                min.push(v);
            }
        }
        match (max.as_slice(), min.as_slice()) {
            ([a], [b]) => Ok((*a, *b)),
            _ => Err(Error::NoUniqueExtremum(f)),
        }
    }

    /// The two boundary arcs of a face, without the extrema: first the arc
    /// met when walking the cycle forward from the maximum, then the other.
    pub fn face_arcs(&self, f: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        let (max, min) = self.face_extrema(f)?;
        let cyc = &self.cycles[&f];
        let start = cyc.iter().position(|&x| x == max).unwrap();
        let rotated: Vec<usize> = cyc[start..].iter().chain(&cyc[..start]).copied().collect();
        let cut = rotated.iter().position(|&x| x == min).unwrap();
        Ok((rotated[1..cut].to_vec(), rotated[cut + 1..].to_vec()))
    }

    /// Boundary cells of a cell one dimension down.
    pub fn facets(&self, id: usize, ball_faces: &[usize]) -> Vec<usize> {
        match self.dim_of(id) {
            1 => vec![self.tail(id), self.head(id)],
            2 => self.cycles[&id]
                .iter()
                .copied()
                .filter(|&x| self.dim_of(x) == 1)
                .collect(),
            3 => ball_faces.to_vec(),
            _ => Vec::new(),
        }
    }
}

/// Per-clause verdict for a decorated 3-cell template.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TemplateReport {
    pub regular: bool,
    pub single_ball: bool,
    pub oriented: bool,
    pub bipolar: bool,
    pub face_extrema: bool,
    pub meridians: bool,
    pub side_rule: bool,
    pub overlap: bool,
    pub messages: Vec<String>,
}

impl TemplateReport {
    pub fn passed(&self) -> bool {
        self.regular
            && self.single_ball
            && self.oriented
            && self.bipolar
            && self.face_extrema
            && self.meridians
            && self.side_rule
            && self.overlap
    }
}

/// Hemisphere data derived from a decoration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geography {
    pub we: Vec<usize>,
    pub ew: Vec<usize>,
    /// Open hemisphere cells: West, East.
    pub west: Vec<usize>,
    pub east: Vec<usize>,
}

impl Geography {
    pub fn is_west(&self, id: usize) -> bool {
        self.west.contains(&id)
    }
}

fn meridian_edges(path: &[usize], sk: &Skeleton) -> Vec<usize> {
    path.iter()
        .copied()
        .filter(|&x| sk.dim_of(x) == 1)
        .collect()
}

/// Checks that `path` (interior cells) runs `e, v, …, e` from `north` to `south`.
fn check_meridian(
    sk: &Skeleton,
    north: usize,
    south: usize,
    path: &[usize],
) -> std::result::Result<(), String> {
    if path.is_empty() || path.len().is_multiple_of(2) {
        return Err(format!(
            "meridian {path:?} does not alternate edge, vertex, …, edge"
        ));
    }
    let mut cur = north;
    for (k, &x) in path.iter().enumerate() {
        let want = if k % 2 == 0 { 1 } else { 0 };
        if sk.dim.get(&x) != Some(&want) {
            return Err(format!("meridian cell {x} has the wrong dimension"));
        }
        if want == 1 {
            if sk.tail(x) != cur {
                return Err(format!("meridian edge {x} does not leave {cur}"));
            }
            cur = sk.head(x);
        } else if x != cur {
            return Err(format!("meridian breaks at {x}"));
        }
    }
    if cur != south {
        return Err("meridian does not end at the South pole".into());
    }
    Ok(())
}

/// Splits the open sphere into West and East using the meridians and the
/// face orientation: East faces run WE edges forward and EW edges backward.
pub fn geography(c: &CellComplex, d: &Decoration) -> Result<Geography> {
    let sk = Skeleton::new(c)?;
    geography_of(&sk, d)
}

fn geography_of(sk: &Skeleton, d: &Decoration) -> Result<Geography> {
    let (we, ew) = (d.we_interior(), d.ew_interior());
    for path in [&we, &ew] {
        check_meridian(sk, d.north, d.south, path).map_err(bad)?;
    }
    if we.iter().any(|x| ew.contains(x)) {
        return Err(bad("meridians are not disjoint"));
    }
    let circle: BTreeSet<usize> = we
        .iter()
        .chain(&ew)
        .copied()
        .chain([d.north, d.south])
        .collect();
    let uses = sk.edge_uses();

    // faces glued across non-meridian edges
    let mut parent: BTreeMap<usize, usize> = sk.faces.iter().map(|&f| (f, f)).collect();
    fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let up = p[&x];
        if up == x {
            x
        } else {
            let r = find(p, up);
            p.insert(x, r);
            r
        }
    }
    for (&e, fs) in &uses {
        if circle.contains(&e) || fs.len() != 2 {
            continue;
        }
        let (a, b) = (find(&mut parent, fs[0].0), find(&mut parent, fs[1].0));
        parent.insert(a, b);
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &f in &sk.faces {
        let r = find(&mut parent, f);
        comps.entry(r).or_default().push(f);
    }
    if comps.len() != 2 {
        return Err(bad(format!(
            "meridians cut the sphere into {} parts",
            comps.len()
        )));
    }
    let mut east_root = None;
    let mut west_root = None;
    for (edges, forward_is_east) in [
        (meridian_edges(&we, sk), true),
        (meridian_edges(&ew, sk), false),
    ] {
        for e in edges {
            for &(f, forward) in &uses[&e] {
                let r = find(&mut parent, f);
                let slot = if forward == forward_is_east {
                    &mut east_root
                } else {
                    &mut west_root
                };
                match *slot {
                    None => *slot = Some(r),
                    Some(x) if x != r => {
                        return Err(bad("meridian edges disagree on the hemisphere sides"));
                    }
                    _ => {}
                }
            }
        }
    }
    let (Some(er), Some(wr)) = (east_root, west_root) else {
        return Err(bad("a hemisphere does not touch the meridians"));
    };
    if er == wr {
        return Err(bad("both sides of the meridians lie in one hemisphere"));
    }
    let mut west = Vec::new();
    let mut east = Vec::new();
    let side_of_face = |f: usize, p: &mut BTreeMap<usize, usize>| find(p, f) == er;
    for &f in &sk.faces {
        if side_of_face(f, &mut parent) {
            east.push(f);
        } else {
            west.push(f);
        }
    }
    // non-face cells off the meridian circle follow any incident face
    for (&x, &k) in &sk.dim {
        if k == 2 || k == 3 || circle.contains(&x) {
            continue;
        }
        let f = sk
            .cycles
            .iter()
            .find(|(_, cyc)| cyc.contains(&x))
            .map(|(&f, _)| f)
            .ok_or_else(|| bad(format!("cell {x} lies on no face")))?;
        if east.contains(&f) {
            east.push(x);
        } else {
            west.push(x);
        }
    }
    west.sort_unstable();
    east.sort_unstable();
    Ok(Geography { we, ew, west, east })
}

/// Checks every clause of the 3-cell template definition.
pub fn validate_template(c: &CellComplex, d: &Decoration) -> TemplateReport {
    let mut r = TemplateReport::default();
    let sk = match Skeleton::new(c) {
        Ok(sk) => sk,
        Err(e) => {
            r.messages.push(e.to_string());
            return r;
        }
    };
    let uses = sk.edge_uses();
    r.regular = sk.connected()
        && sk.euler() == 2
        && uses.values().all(|u| u.len() == 2)
        && !sk.faces.is_empty();
    if !r.regular {
        r.messages.push("boundary is not a regular 2-sphere".into());
    }
    r.single_ball = match (&c.ball, sk.ball) {
        (Some(b), Some(_)) => {
            let mut fs = b.faces.clone();
            fs.sort_unstable();
            fs == sk.faces
        }
        _ => false,
    };
    if !r.single_ball {
        r.messages
            .push("complex is not the closure of a single 3-cell".into());
    }
    r.oriented = uses.values().all(|u| u.len() != 2 || u[0].1 != u[1].1);
    if !r.oriented {
        r.messages
            .push("face cycles are not coherently oriented".into());
    }
    r.bipolar = sk.bipolar_poles() == Some((d.north, d.south));
    if !r.bipolar {
        r.messages
            .push("orientation is not bipolar from North to South".into());
    }
    r.face_extrema = sk.faces.iter().all(|&f| sk.face_extrema(f).is_ok());
    if !r.face_extrema {
        r.messages
            .push("some face has no unique boundary extrema".into());
    }
    let geo = match geography_of(&sk, d) {
        Ok(g) => g,
        Err(e) => {
            r.messages.push(e.to_string());
            return r;
        }
    };
    r.meridians = true;

    // edges point into the meridians in W and out of them in E
    let inner: BTreeSet<usize> = geo
        .we
        .iter()
        .chain(&geo.ew)
        .copied()
        .filter(|&x| sk.dim_of(x) == 0)
        .collect();
    r.side_rule = true;
    for (&e, &(t, h)) in &sk.ends {
        if geo.we.contains(&e) || geo.ew.contains(&e) {
            continue;
        }
        let west = geo.is_west(e);
        if (inner.contains(&h) && !west) || (inner.contains(&t) && west) {
            r.side_rule = false;
            r.messages
                .push(format!("edge {e} violates the meridian orientation rule"));
        }
    }

    let face_with = |e: usize, west: bool| -> Option<usize> {
        uses[&e]
            .iter()
            .map(|&(f, _)| f)
            .find(|&f| geo.is_west(f) == west)
    };
    let overlap = |path: &[usize]| -> bool {
        let edges = meridian_edges(path, &sk);
        let (Some(&first), Some(&last)) = (edges.first(), edges.last()) else {
            return false;
        };
        let (Some(a), Some(b)) = (face_with(first, true), face_with(last, false)) else {
            return false;
        };
        edges
            .iter()
            .any(|&e| sk.cycles[&a].contains(&e) && sk.cycles[&b].contains(&e))
    };
    r.overlap = overlap(&geo.we) && overlap(&geo.ew);
    if !r.overlap {
        r.messages.push("meridian faces do not overlap".into());
    }
    r
}

fn face_sides(sk: &Skeleton, f: usize, flipped: bool) -> Result<Vec<SignedSets>> {
    let (max, min) = sk.face_extrema(f)?;
    let (mut first, mut second) = sk.face_arcs(f)?;
    first.sort_unstable();
    second.sort_unstable();
    let (plus, minus) = if flipped {
        (second, first)
    } else {
        (first, second)
    };
    Ok(vec![
        SignedSets {
            minus: vec![max],
            plus: vec![min],
        },
        SignedSets { minus, plus },
    ])
}

fn edge_sides(sk: &Skeleton, e: usize) -> Vec<SignedSets> {
    vec![SignedSets {
        minus: vec![sk.tail(e)],
        plus: vec![sk.head(e)],
    }]
}

/// Formal hemispheres of a decorated 3-cell template. Face sides flip in
/// the West; meridian edges must sit on the matching side of every face.
pub fn formal_hemispheres(c: &CellComplex, d: &Decoration) -> Result<FormalHemispheres> {
    let sk = Skeleton::new(c)?;
    let geo = geography_of(&sk, d)?;
    let mut sets = BTreeMap::new();
    for &e in &sk.edges {
        sets.insert(e, edge_sides(&sk, e));
    }
    for &f in &sk.faces {
        let sides = face_sides(&sk, f, geo.is_west(f))?;
        for (path, want) in [(&geo.we, Sign::Plus), (&geo.ew, Sign::Minus)] {
            for e in meridian_edges(path, &sk) {
                if sk.cycles[&f].contains(&e) && !sides[1].get(want).contains(&e) {
                    return Err(Error::SideRuleViolation { edge: e, face: f });
                }
            }
        }
        sets.insert(f, sides);
    }
    if let Some(o) = sk.ball {
        let sorted = |mut v: Vec<usize>| {
            v.sort_unstable();
            v
        };
        sets.insert(
            o,
            vec![
                SignedSets {
                    minus: vec![d.north],
                    plus: vec![d.south],
                },
                SignedSets {
                    minus: sorted(geo.ew.clone()),
                    plus: sorted(geo.we.clone()),
                },
                SignedSets {
                    minus: geo.west.clone(),
                    plus: geo.east.clone(),
                },
            ],
        );
    }
    Ok(HemisphereTemplate { sets })
}

/// Formal hemispheres of a planar complex, all faces read the same way.
/// `flipped` reads every face with the West convention.
pub fn planar_hemispheres(c: &CellComplex, flipped: bool) -> Result<FormalHemispheres> {
    let sk = Skeleton::new(c)?;
    let mut sets = BTreeMap::new();
    for &e in &sk.edges {
        sets.insert(e, edge_sides(&sk, e));
    }
    for &f in &sk.faces {
        sets.insert(f, face_sides(&sk, f, flipped)?);
    }
    Ok(HemisphereTemplate { sets })
}

/// Verdict for a planar complex: contractible, coherently oriented, bipolar.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PlanarReport {
    pub contractible: bool,
    pub oriented: bool,
    pub bipolar: bool,
    pub face_extrema: bool,
}

impl PlanarReport {
    pub fn passed(&self) -> bool {
        self.contractible && self.oriented && self.bipolar && self.face_extrema
    }
}

pub fn validate_planar(c: &CellComplex) -> Result<PlanarReport> {
    let sk = Skeleton::new(c)?;
    if sk.ball.is_some() {
        return Err(bad("planar complex carries a 3-cell"));
    }
    let uses = sk.edge_uses();
    Ok(PlanarReport {
        contractible: sk.connected() && sk.euler() == 1 && uses.values().all(|u| u.len() <= 2),
        oriented: uses.values().all(|u| u.len() != 2 || u[0].1 != u[1].1),
        bipolar: sk.bipolar_poles().is_some(),
        face_extrema: sk.faces.iter().all(|&f| sk.face_extrema(f).is_ok()),
    })
}

/// A reconstructed signed Thom-Smale complex of a Sturm 3-ball.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub complex: CellComplex,
    pub decoration: Decoration,
    pub hemispheres: FormalHemispheres,
}

fn single(set: &[usize], what: &str) -> Result<usize> {
    match set {
        [x] => Ok(*x),
        _ => Err(Error::ReconstructionAmbiguity(format!(
            "{what} has {} cells",
            set.len()
        ))),
    }
}

/// Orders an arc's cells `e, v, …, e` from `from` to `to` along edge orientation.
fn chain(
    cells: &[usize],
    from: usize,
    to: usize,
    tail_head: &BTreeMap<usize, (usize, usize)>,
) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(cells.len());
    let mut cur = from;
    loop {
        let next = cells
            .iter()
            .copied()
            .filter(|e| tail_head.get(e).is_some_and(|&(t, _)| t == cur))
            .collect::<Vec<_>>();
        let e = single(&next, &format!("arc step from {cur}"))?;
        out.push(e);
        cur = tail_head[&e].1;
        if cur == to {
            break;
        }
        if !cells.contains(&cur) {
            return Err(Error::ReconstructionAmbiguity(format!(
                "arc leaves its cell set at {cur}"
            )));
        }
        out.push(cur);
    }
    if out.len() != cells.len() {
        return Err(Error::ReconstructionAmbiguity(format!(
            "arc {cells:?} is not a simple path"
        )));
    }
    Ok(out)
}

/// Cells rebuilt from a hemisphere template, with the edge endpoints.
type RebuiltCells = (
    Vec<CellSpec>,
    Vec<EdgeSpec>,
    Vec<FaceSpec>,
    BTreeMap<usize, (usize, usize)>,
);

fn reconstruct_cells(inv: &Invariants, west: &dyn Fn(usize) -> bool) -> Result<RebuiltCells> {
    let n = inv.orders().n();
    let t = &inv.template;
    let mut cells = Vec::new();
    let mut edges = Vec::new();
    let mut ends = BTreeMap::new();
    for v in 1..=n {
        cells.push(CellSpec {
            id: v,
            dim: inv.morse(v) as u8,
        });
        if inv.morse(v) == 1 {
            let tail = single(t.get(v, 0, Sign::Minus), "edge tail")?;
            let head = single(t.get(v, 0, Sign::Plus), "edge head")?;
            edges.push(EdgeSpec { id: v, tail, head });
            ends.insert(v, (tail, head));
        }
    }
    let mut faces = Vec::new();
    for v in (1..=n).filter(|&v| inv.morse(v) == 2) {
        let max = single(t.get(v, 0, Sign::Minus), "face maximum")?;
        let min = single(t.get(v, 0, Sign::Plus), "face minimum")?;
        let plus = chain(t.get(v, 1, Sign::Plus), max, min, &ends)?;
        let minus = chain(t.get(v, 1, Sign::Minus), max, min, &ends)?;
        let (forward, backward) = if west(v) {
            (minus, plus)
        } else {
            (plus, minus)
        };
        let mut cycle = vec![max];
        cycle.extend(forward);
        cycle.push(min);
        cycle.extend(backward.into_iter().rev());
        faces.push(FaceSpec { id: v, cycle });
    }
    Ok((cells, edges, faces, ends))
}

/// Rebuilds the decorated 3-cell template of a Sturm 3-ball from its
/// connection graph and signed hemisphere template.
pub fn complex_from_sigma(inv: &Invariants) -> Result<Reconstruction> {
    if !is_sturm_3ball(inv) {
        return Err(Error::NotBall);
    }
    let anatomy = ball_anatomy(inv)?;
    let o = anatomy.center;
    let west_faces = anatomy.part(2, Sign::Minus).to_vec();
    let (cells, edges, faces, ends) = reconstruct_cells(inv, &|f| west_faces.contains(&f))?;
    let n_north = anatomy.north;
    let n_south = anatomy.south;
    let decoration = Decoration {
        north: n_north,
        south: n_south,
        we: chain(anatomy.part(1, Sign::Plus), n_north, n_south, &ends)?,
        ew: chain(anatomy.part(1, Sign::Minus), n_north, n_south, &ends)?,
    };
    let ball_faces: Vec<usize> = faces.iter().map(|f| f.id).collect();
    let complex = CellComplex {
        cells,
        edges,
        faces,
        ball: Some(BallSpec {
            id: o,
            faces: ball_faces,
        }),
        decoration: Some(decoration.clone()),
    };
    Ok(Reconstruction {
        complex,
        decoration,
        hemispheres: inv.template.clone(),
    })
}

/// Rebuilds the planar Thom-Smale complex of a Sturm permutation with all
/// Morse numbers at most 2; faces are read with the East convention.
pub fn planar_complex_from_sigma(inv: &Invariants) -> Result<CellComplex> {
    let n = inv.orders().n();
    if (1..=n).any(|v| inv.morse(v) > 2) {
        return Err(bad("Morse number above 2 in a planar reconstruction"));
    }
    let (cells, edges, faces, _) = reconstruct_cells(inv, &|_| false)?;
    Ok(CellComplex {
        cells,
        edges,
        faces,
        ball: None,
        decoration: None,
    })
}

/// The closed hemisphere sub-complex on the given side: its open cells,
/// both meridians and the poles.
pub fn closed_hemisphere(c: &CellComplex, d: &Decoration, side: Sign) -> Result<CellComplex> {
    let sk = Skeleton::new(c)?;
    let geo = geography_of(&sk, d)?;
    let open = match side {
        Sign::Minus => &geo.west,
        Sign::Plus => &geo.east,
    };
    let keep: BTreeSet<usize> = open
        .iter()
        .chain(&geo.we)
        .chain(&geo.ew)
        .copied()
        .chain([d.north, d.south])
        .collect();
    Ok(CellComplex {
        cells: c
            .cells
            .iter()
            .copied()
            .filter(|x| keep.contains(&x.id))
            .collect(),
        edges: c
            .edges
            .iter()
            .copied()
            .filter(|x| keep.contains(&x.id))
            .collect(),
        faces: c
            .faces
            .iter()
            .filter(|x| keep.contains(&x.id))
            .cloned()
            .collect(),
        ball: None,
        decoration: None,
    })
}

/// All directed North-to-South paths, as interior cell lists.
fn directed_paths(sk: &Skeleton, north: usize, south: usize) -> Vec<Vec<usize>> {
    let mut out_edges: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&e, &(t, _)) in &sk.ends {
        out_edges.entry(t).or_default().push(e);
    }
    let mut paths = Vec::new();
    let mut cur = Vec::new();
    fn walk(
        v: usize,
        south: usize,
        sk: &Skeleton,
        out_edges: &BTreeMap<usize, Vec<usize>>,
        cur: &mut Vec<usize>,
        paths: &mut Vec<Vec<usize>>,
    ) {
        for &e in out_edges.get(&v).into_iter().flatten() {
            let h = sk.head(e);
            cur.push(e);
            if h == south {
                paths.push(cur.clone());
            } else {
                cur.push(h);
                walk(h, south, sk, out_edges, cur, paths);
                cur.pop();
            }
            cur.pop();
        }
    }
    walk(north, south, sk, &out_edges, &mut cur, &mut paths);
    paths
}

/// Every decoration of a bare complex passing all template clauses.
pub fn infer_decorations(c: &CellComplex) -> Result<Vec<Decoration>> {
    let sk = Skeleton::new(c)?;
    let Some((north, south)) = sk.bipolar_poles() else {
        return Ok(Vec::new());
    };
    let paths = directed_paths(&sk, north, south);
    let mut found = Vec::new();
    for we in &paths {
        for ew in &paths {
            if we == ew || we.iter().any(|x| ew.contains(x)) {
                continue;
            }
            let d = Decoration {
                north,
                south,
                we: we.clone(),
                ew: ew.clone(),
            };
            if validate_template(c, &d).passed() && formal_hemispheres(c, &d).is_ok() {
                found.push(d);
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{octahedron_orders, OCTAHEDRON_JSON};

    fn oct() -> Reconstruction {
        complex_from_sigma(&Invariants::new(&octahedron_orders()).unwrap()).unwrap()
    }

    #[test]
    fn octahedron_counts() {
        let r = oct();
        let count = |d| r.complex.cells.iter().filter(|c| c.dim == d).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (6, 12, 8, 1));
        assert_eq!(r.decoration.ew, vec![10, 5, 14]);
        assert_eq!(r.decoration.we, vec![8, 3, 11]);
    }

    #[test]
    fn octahedron_is_a_template() {
        let r = oct();
        let report = validate_template(&r.complex, &r.decoration);
        assert!(report.passed(), "{:?}", report.messages);
        let formal = formal_hemispheres(&r.complex, &r.decoration).unwrap();
        assert_eq!(formal, r.hemispheres);
    }

    #[test]
    fn fixture_matches_reconstruction() {
        assert_eq!(
            CellComplex::from_json(OCTAHEDRON_JSON).unwrap(),
            oct().complex
        );
    }

    #[test]
    fn flipped_side_edge_breaks_rule() {
        let r = oct();
        let mut c = r.complex.clone();
        // 7 is the East edge between meridian vertices; find a West edge touching 5 or 3
        let geo = geography(&c, &r.decoration).unwrap();
        let e = c
            .edges
            .iter_mut()
            .find(|e| geo.is_west(e.id) && (e.head == 5 || e.head == 3))
            .unwrap();
        std::mem::swap(&mut e.tail, &mut e.head);
        let report = validate_template(&c, &r.decoration);
        assert!(!report.side_rule);
    }

    #[test]
    fn identity_is_not_a_ball() {
        let inv = Invariants::new(&crate::meander::Orders::from_permutation(
            &crate::meander::Permutation::identity(3),
        ))
        .unwrap();
        assert!(matches!(complex_from_sigma(&inv), Err(Error::NotBall)));
    }

    #[test]
    fn minimal_sphere_passes() {
        // two vertices, two edges, two bigons, one ball
        let c = CellComplex {
            cells: vec![
                CellSpec { id: 1, dim: 0 },
                CellSpec { id: 2, dim: 0 },
                CellSpec { id: 3, dim: 1 },
                CellSpec { id: 4, dim: 1 },
                CellSpec { id: 5, dim: 2 },
                CellSpec { id: 6, dim: 2 },
                CellSpec { id: 7, dim: 3 },
            ],
            edges: vec![
                EdgeSpec {
                    id: 3,
                    tail: 1,
                    head: 2,
                },
                EdgeSpec {
                    id: 4,
                    tail: 1,
                    head: 2,
                },
            ],
            faces: vec![
                FaceSpec {
                    id: 5,
                    cycle: vec![1, 3, 2, 4],
                },
                FaceSpec {
                    id: 6,
                    cycle: vec![1, 4, 2, 3],
                },
            ],
            ball: Some(BallSpec {
                id: 7,
                faces: vec![5, 6],
            }),
            decoration: None,
        };
        let found = infer_decorations(&c).unwrap();
        assert!(!found.is_empty());
        for d in &found {
            assert!(validate_template(&c, d).passed());
        }
    }
}

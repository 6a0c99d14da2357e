//! Polar serpents of a 3-meander template, its centre `O` and the
//! hemisphere partition around it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{Invariants, Sign, SignedSets};
use crate::meander::Orders;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Pole {
    North,
    South,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Serpent {
    pub iota: usize,
    pub pole: Pole,
    /// Members in `h_ι`-order starting at the pole.
    pub members: Vec<usize>,
    /// The label right after the run, if any.
    pub terminator: Option<usize>,
    pub full: bool,
}

impl Serpent {
    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn overlaps(&self, other: &Serpent) -> bool {
        self.members.iter().any(|&v| other.contains(v))
    }
}

/// The maximal run of Morse numbers in `{0, 1}` from the given pole along `h_ι`.
pub fn polar_serpent(inv: &Invariants, iota: usize, pole: Pole) -> Serpent {
    let o = inv.orders();
    let n = o.n();
    let positions: Box<dyn Iterator<Item = usize>> = match pole {
        Pole::North => Box::new(1..=n),
        Pole::South => Box::new((1..=n).rev()),
    };
    let mut members = Vec::new();
    let mut terminator = None;
    for k in positions {
        let v = o.h(iota, k);
        if (0..=1).contains(&inv.morse(v)) {
            members.push(v);
        } else {
            terminator = Some(v);
            break;
        }
    }
    // the saddle next to the opposite pole along the other boundary
    let full = n >= 3 && {
        let target = match pole {
            Pole::North => o.h(1 - iota, n - 1),
            Pole::South => o.h(1 - iota, 2),
        };
        members.contains(&target)
    };
    Serpent {
        iota,
        pole,
        members,
        terminator,
        full,
    }
}

/// The four polar serpents, indexed `[iota][pole]` with North first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Serpents {
    pub h0_north: Serpent,
    pub h0_south: Serpent,
    pub h1_north: Serpent,
    pub h1_south: Serpent,
}

impl Serpents {
    pub fn get(&self, iota: usize, pole: Pole) -> &Serpent {
        match (iota, pole) {
            (0, Pole::North) => &self.h0_north,
            (0, Pole::South) => &self.h0_south,
            (_, Pole::North) => &self.h1_north,
            (_, Pole::South) => &self.h1_south,
        }
    }
}

pub fn polar_serpents(inv: &Invariants) -> Serpents {
    Serpents {
        h0_north: polar_serpent(inv, 0, Pole::North),
        h0_south: polar_serpent(inv, 0, Pole::South),
        h1_north: polar_serpent(inv, 1, Pole::North),
        h1_south: polar_serpent(inv, 1, Pole::South),
    }
}

/// `w^ι_± = h_ι(h_ι⁻¹(O) ± 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CentreNeighbors {
    pub w0_minus: usize,
    pub w0_plus: usize,
    pub w1_minus: usize,
    pub w1_plus: usize,
}

impl CentreNeighbors {
    pub fn get(&self, iota: usize, s: Sign) -> usize {
        match (iota, s) {
            (0, Sign::Minus) => self.w0_minus,
            (0, Sign::Plus) => self.w0_plus,
            (_, Sign::Minus) => self.w1_minus,
            (_, Sign::Plus) => self.w1_plus,
        }
    }
}

fn centre_neighbors(o: &Orders, centre: usize) -> Option<CentreNeighbors> {
    let n = o.n();
    let around = |iota: usize| {
        let p = o.pos(iota, centre);
        if p <= 1 || p >= n {
            None
        } else {
            Some((o.h(iota, p - 1), o.h(iota, p + 1)))
        }
    };
    let (w0_minus, w0_plus) = around(0)?;
    let (w1_minus, w1_plus) = around(1)?;
    Some(CentreNeighbors {
        w0_minus,
        w0_plus,
        w1_minus,
        w1_plus,
    })
}

/// The unique label with Morse number 3.
pub fn find_centre(inv: &Invariants) -> Result<usize> {
    let o = inv.orders();
    let centres: Vec<usize> = (1..=o.n()).filter(|&v| inv.morse(v) == 3).collect();
    match centres.len() {
        0 => Err(Error::NoCenter),
        1 => Ok(centres[0]),
        _ => Err(Error::MultipleCenters(centres)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallAnatomy {
    pub center: usize,
    pub north: usize,
    pub south: usize,
    pub w: CentreNeighbors,
    pub serpents: Serpents,
    /// `partition[j]` holds `E'^j_-` and `E'^j_+`.
    pub partition: Vec<SignedSets>,
}

impl BallAnatomy {
    pub fn part(&self, j: usize, s: Sign) -> &[usize] {
        self.partition[j].get(s)
    }

    /// `E'^j`: everything up to level `j`.
    pub fn up_to(&self, j: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..=j)
            .flat_map(|k| {
                Sign::BOTH
                    .into_iter()
                    .flat_map(move |s| self.part(k, s).to_vec())
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// `clos E'^j_δ = E'^j_δ ∪ E'^{j-1}`.
    pub fn closure(&self, j: usize, s: Sign) -> Vec<usize> {
        let mut out = self.part(j, s).to_vec();
        if j > 0 {
            out.extend(self.up_to(j - 1));
        }
        out.sort_unstable();
        out
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Partition by serpent runs and the side of `O` at `x = 1`.
fn serpent_partition(o: &Orders, centre: usize, s: &Serpents) -> Vec<SignedSets> {
    let (north, south) = (o.h0(1), o.h0(o.n()));
    let meridian = |a: &Serpent, b: &Serpent| {
        sorted(
            a.members
                .iter()
                .chain(&b.members)
                .copied()
                .filter(|&v| v != north && v != south)
                .collect(),
        )
    };
    let minus1 = meridian(&s.h0_north, &s.h1_south);
    let plus1 = meridian(&s.h1_north, &s.h0_south);
    let taken = |v: usize| {
        v == north || v == south || v == centre || minus1.contains(&v) || plus1.contains(&v)
    };
    let p = o.pos1(centre);
    let rest = |range: std::ops::Range<usize>| -> Vec<usize> {
        sorted(range.map(|k| o.h1(k)).filter(|&v| !taken(v)).collect())
    };
    vec![
        SignedSets {
            minus: vec![north],
            plus: vec![south],
        },
        SignedSets {
            minus: minus1.clone(),
            plus: plus1.clone(),
        },
        SignedSets {
            minus: rest(1..p),
            plus: rest(p + 1..o.n() + 1),
        },
    ]
}

/// Partition by the signed zero numbers `z(v - O) = j_δ`.
fn zero_number_partition(inv: &Invariants, centre: usize) -> Vec<SignedSets> {
    let mut out = vec![SignedSets::default(); 3];
    for v in 1..=inv.orders().n() {
        if v == centre {
            continue;
        }
        let (j, s) = inv.zero.signed(v, centre);
        if let Some(level) = out.get_mut(j as usize) {
            match s {
                Sign::Minus => level.minus.push(v),
                Sign::Plus => level.plus.push(v),
            }
        }
    }
    out
}

/// The level-2 sets read off the `x = 1` windows between the `O`-neighbors.
fn window_partition(o: &Orders, w: &CentreNeighbors, level1: &SignedSets) -> SignedSets {
    let window = |a: usize, b: usize, exclude: &[usize]| {
        let (p, q) = (o.pos1(a), o.pos1(b));
        sorted(
            (p.min(q)..=p.max(q))
                .map(|k| o.h1(k))
                .filter(|v| !exclude.contains(v))
                .collect(),
        )
    };
    SignedSets {
        minus: window(w.w0_minus, w.w1_minus, &level1.plus),
        plus: window(w.w1_plus, w.w0_plus, &level1.minus),
    }
}

/// Anatomy of a template around its centre. The partition is computed in
/// three independent ways, which must agree.
pub fn ball_anatomy(inv: &Invariants) -> Result<BallAnatomy> {
    let o = inv.orders();
    let center = find_centre(inv)?;
    if (1..=o.n()).any(|v| inv.morse(v) > 3) {
        return Err(Error::NotBallTemplate);
    }
    let w = centre_neighbors(o, center).ok_or(Error::NotBallTemplate)?;
    let serpents = polar_serpents(inv);
    let partition = serpent_partition(o, center, &serpents);

    let by_zero = zero_number_partition(inv, center);
    if by_zero != partition {
        return Err(Error::PartitionMismatch(format!(
            "serpent partition {partition:?} vs zero-number partition {by_zero:?}"
        )));
    }
    let windows = window_partition(o, &w, &partition[1]);
    if windows != partition[2] {
        return Err(Error::PartitionMismatch(format!(
            "level 2 {:?} vs windows {windows:?}",
            partition[2]
        )));
    }
    Ok(BallAnatomy {
        center,
        north: o.h0(1),
        south: o.h0(o.n()),
        w,
        serpents,
        partition,
    })
}

/// Per-condition flags of the 3-meander template definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TemplateVerdict {
    pub single_center: bool,
    pub serpent_overlap: bool,
    pub polar_arcs: bool,
    pub neighbor_sources: bool,
}

impl TemplateVerdict {
    pub fn passed(&self) -> bool {
        self.single_center && self.serpent_overlap && self.polar_arcs && self.neighbor_sources
    }
}

pub fn is_three_meander_template(inv: &Invariants) -> TemplateVerdict {
    let o = inv.orders();
    let n = o.n();
    let centre = match find_centre(inv) {
        Ok(c) if (1..=n).all(|v| v == c || inv.morse(v) <= 2) => Some(c),
        _ => None,
    };
    let s = polar_serpents(inv);
    let serpent_overlap = s.h0_north.overlaps(&s.h1_south) && s.h1_north.overlaps(&s.h0_south);
    let Some(centre) = centre else {
        return TemplateVerdict {
            single_center: false,
            serpent_overlap,
            polar_arcs: false,
            neighbor_sources: false,
        };
    };
    // the polar arc joins the pole to the next serpent member
    let polar_arcs = [0usize, 1].iter().all(|&iota| {
        [Pole::North, Pole::South].iter().all(|&pole| {
            let sp = s.get(iota, pole);
            if sp.members.len() < 2 {
                return false;
            }
            let (a, b) = (
                o.pos(1 - iota, sp.members[0]),
                o.pos(1 - iota, sp.members[1]),
            );
            let c = o.pos(1 - iota, centre);
            a.min(b) < c && c < a.max(b)
        })
    });
    let neighbor_sources = match centre_neighbors(o, centre) {
        None => false,
        Some(w) => [0usize, 1].iter().all(|&iota| {
            let ends: Vec<Option<usize>> = [Pole::North, Pole::South]
                .iter()
                .map(|&pole| s.get(1 - iota, pole).terminator)
                .collect();
            let mine = [
                Some(w.get(iota, Sign::Minus)),
                Some(w.get(iota, Sign::Plus)),
            ];
            ends.iter().all(|e| e.is_some_and(|v| inv.morse(v) == 2))
                && sorted(ends.iter().flatten().copied().collect())
                    == sorted(mine.iter().flatten().copied().collect())
                && ends.len() == 2
                && ends[0] != ends[1]
        }),
    };
    TemplateVerdict {
        single_center: true,
        serpent_overlap,
        polar_arcs,
        neighbor_sources,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CentreReport {
    pub morse_bound: bool,
    pub closure_bound: bool,
    pub signed_values: bool,
    pub closure_separation: bool,
    pub violations: Vec<String>,
}

impl CentreReport {
    pub fn passed(&self) -> bool {
        self.morse_bound && self.closure_bound && self.signed_values && self.closure_separation
    }
}

/// Checks the partition around the centre against Morse and zero numbers.
pub fn check_centre_partition(inv: &Invariants, anatomy: &BallAnatomy) -> CentreReport {
    let z = &inv.zero;
    let o = anatomy.center;
    let mut r = CentreReport {
        morse_bound: true,
        closure_bound: true,
        signed_values: true,
        closure_separation: true,
        violations: Vec::new(),
    };
    for j in 0..3usize {
        let jj = j as i64;
        for v in anatomy.up_to(j) {
            if inv.morse(v) > jj {
                r.morse_bound = false;
                r.violations.push(format!("(i) i({v}) > {j}"));
            }
            if z.z(v, o) > jj {
                r.closure_bound = false;
                r.violations.push(format!("(ii) z({v} - O) > {j}"));
            }
        }
        for s in Sign::BOTH {
            for &v in anatomy.part(j, s) {
                if z.signed(v, o) != (jj, s) {
                    r.signed_values = false;
                    r.violations.push(format!("(iii) z({v} - O) != {j}{s}"));
                }
            }
            let clos = anatomy.closure(j, s);
            for (a, &v1) in clos.iter().enumerate() {
                for &v2 in &clos[a + 1..] {
                    if z.z(v1, v2) >= jj {
                        r.closure_separation = false;
                        r.violations
                            .push(format!("(iv) z({v1} - {v2}) >= {j} in clos E'{j}{s}"));
                    }
                }
            }
        }
    }
    r
}

/// Whether the single Morse-3 centre connects to every other equilibrium.
pub fn is_sturm_3ball(inv: &Invariants) -> bool {
    let n = inv.orders().n();
    match find_centre(inv) {
        Ok(c) => (1..=n).all(|v| v == c || (inv.morse(v) < 3 && inv.graph.connects(c, v))),
        Err(_) => false,
    }
}

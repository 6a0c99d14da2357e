//! Nose retraction and the East/West scoops of a 3-meander template.

use std::collections::HashSet;

use serde::Serialize;

use crate::ball::{ball_anatomy, is_three_meander_template, BallAnatomy};
use crate::error::{Error, Result};
use crate::invariants::{Invariants, Sign};
use crate::meander::{is_sturm, Orders, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Half {
    Upper,
    Lower,
}

/// A pair adjacent along both boundary orders, `v1` first along `h0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Nose {
    pub v1: usize,
    pub v2: usize,
    /// Half plane of the meander arc joining the pair.
    pub side: Half,
}

fn is_polar(o: &Orders, v: usize) -> bool {
    let n = o.n();
    [o.pos0(v), o.pos1(v)].iter().any(|&p| p == 1 || p == n)
}

fn doubly_adjacent(o: &Orders, a: usize, b: usize) -> bool {
    o.pos0(a).abs_diff(o.pos0(b)) == 1 && o.pos1(a).abs_diff(o.pos1(b)) == 1
}

fn nose_of(o: &Orders, a: usize, b: usize) -> Nose {
    let (v1, v2) = if o.pos0(a) < o.pos0(b) {
        (a, b)
    } else {
        (b, a)
    };
    let side = if o.pos0(v1) % 2 == 1 {
        Half::Upper
    } else {
        Half::Lower
    };
    Nose { v1, v2, side }
}

/// All non-polar noses, in `h0`-order.
pub fn find_noses(o: &Orders) -> Vec<Nose> {
    (1..o.n())
        .map(|k| (o.h0(k), o.h0(k + 1)))
        .filter(|&(a, b)| doubly_adjacent(o, a, b) && !is_polar(o, a) && !is_polar(o, b))
        .map(|(a, b)| nose_of(o, a, b))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Retraction {
    pub nose: Nose,
    pub sigma: Permutation,
    #[serde(skip)]
    pub orders: Orders,
    /// `relabel[v]` is the new label of `v`, 0 for the removed pair.
    pub relabel: Vec<usize>,
}

/// Skips the two labels of a nose in both orders and relabels the rest.
pub fn retract_nose(o: &Orders, a: usize, b: usize) -> Result<Retraction> {
    let n = o.n();
    if a == b || a == 0 || b == 0 || a > n || b > n || !doubly_adjacent(o, a, b) {
        return Err(Error::NotANose(a, b));
    }
    if is_polar(o, a) || is_polar(o, b) {
        return Err(Error::PolarNose(a, b));
    }
    let (orders, relabel) = o.remove_labels(&[a, b]);
    Ok(Retraction {
        nose: nose_of(o, a, b),
        sigma: orders.sigma(),
        orders,
        relabel,
    })
}

/// Whether `small` carries exactly the Morse numbers and signed zero numbers
/// of the survivors in `big`, under the relabeling.
pub fn survivors_unchanged(big: &Invariants, small: &Invariants, relabel: &[usize]) -> bool {
    let survivors: Vec<(usize, usize)> = (1..relabel.len())
        .filter(|&v| relabel[v] != 0)
        .map(|v| (v, relabel[v]))
        .collect();
    survivors.iter().all(|&(v, nv)| {
        big.morse(v) == small.morse(nv)
            && survivors
                .iter()
                .all(|&(w, nw)| v == w || big.zero.signed(w, v) == small.zero.signed(nw, nv))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoopSide {
    /// Removes `O` and the eastern open hemisphere.
    East,
    /// Removes `O` and the western open hemisphere.
    West,
}

impl ScoopSide {
    /// Sign of the removed hemisphere.
    pub fn removed(self) -> Sign {
        match self {
            ScoopSide::East => Sign::Plus,
            ScoopSide::West => Sign::Minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoopResult {
    pub side: ScoopSide,
    pub sigma_scooped: Permutation,
    /// Scooped orders in the original labels.
    pub h0: Vec<usize>,
    pub h1: Vec<usize>,
    pub removed: Vec<usize>,
    /// Pairs `(old, new)` for every survivor.
    pub relabel: Vec<(usize, usize)>,
    #[serde(skip)]
    pub orders: Orders,
}

pub fn scoop(inv: &Invariants, side: ScoopSide) -> Result<ScoopResult> {
    if !is_three_meander_template(inv).passed() {
        return Err(Error::NotBallTemplate);
    }
    let anatomy = ball_anatomy(inv)?;
    scoop_with(inv, &anatomy, side)
}

pub fn scoop_with(inv: &Invariants, anatomy: &BallAnatomy, side: ScoopSide) -> Result<ScoopResult> {
    let o = inv.orders();
    let mut removed = anatomy.part(2, side.removed()).to_vec();
    removed.push(anatomy.center);
    removed.sort_unstable();
    let (orders, relabel) = o.remove_labels(&removed);

    if !is_sturm(&orders).is_sturm() {
        return Err(Error::ValidationFailed(
            "scooped permutation is not Sturm".into(),
        ));
    }
    let small = Invariants::new(&orders)?;
    if (1..=orders.n()).any(|v| small.morse(v) > 2) {
        return Err(Error::ValidationFailed(
            "scooped Morse number exceeds 2".into(),
        ));
    }
    if !survivors_unchanged(inv, &small, &relabel) {
        return Err(Error::ValidationFailed(
            "survivor Morse or zero numbers changed".into(),
        ));
    }
    let keep = |list: &[usize]| -> Vec<usize> {
        list.iter().copied().filter(|&v| relabel[v] != 0).collect()
    };
    Ok(ScoopResult {
        side,
        sigma_scooped: orders.sigma(),
        h0: keep(o.h0_list()),
        h1: keep(o.h1_list()),
        removed,
        relabel: (1..relabel.len())
            .filter(|&v| relabel[v] != 0)
            .map(|v| (v, relabel[v]))
            .collect(),
        orders,
    })
}

/// Searches for a sequence of nose retractions deleting exactly `removed`.
/// Returns the noses in original labels, or `None` if the search fails.
pub fn nose_sequence(o: &Orders, removed: &[usize]) -> Option<Vec<(usize, usize)>> {
    fn go(
        h0: &[usize],
        h1: &[usize],
        left: &[usize],
        seen: &mut HashSet<Vec<usize>>,
        out: &mut Vec<(usize, usize)>,
    ) -> bool {
        if left.is_empty() {
            return true;
        }
        if !seen.insert(left.to_vec()) {
            return false;
        }
        let n = h0.len();
        let pos = |list: &[usize], v: usize| list.iter().position(|&x| x == v).unwrap();
        for k in 1..n.saturating_sub(2) {
            let (a, b) = (h0[k], h0[k + 1]);
            if !left.contains(&a) || !left.contains(&b) {
                continue;
            }
            let (p, q) = (pos(h1, a), pos(h1, b));
            if p.abs_diff(q) != 1 || p.min(q) == 0 || p.max(q) == n - 1 {
                continue;
            }
            let g0: Vec<usize> = h0.iter().copied().filter(|&x| x != a && x != b).collect();
            let g1: Vec<usize> = h1.iter().copied().filter(|&x| x != a && x != b).collect();
            let rest: Vec<usize> = left.iter().copied().filter(|&x| x != a && x != b).collect();
            out.push((a, b));
            if go(&g0, &g1, &rest, seen, out) {
                return true;
            }
            out.pop();
        }
        false
    }
    let mut left = removed.to_vec();
    left.sort_unstable();
    let mut out = Vec::new();
    go(
        o.h0_list(),
        o.h1_list(),
        &left,
        &mut HashSet::new(),
        &mut out,
    )
    .then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::octahedron_orders;

    #[test]
    fn identity_has_no_noses() {
        assert!(find_noses(&Orders::from_permutation(&Permutation::identity(3))).is_empty());
    }

    #[test]
    fn octahedron_noses() {
        let noses = find_noses(&octahedron_orders());
        let pairs: Vec<(usize, usize)> = noses.iter().map(|n| (n.v1, n.v2)).collect();
        assert!(pairs.contains(&(9, 4)));
        assert!(pairs.contains(&(15, 22)));
    }

    #[test]
    fn retraction_errors() {
        let o = octahedron_orders();
        assert_eq!(retract_nose(&o, 9, 6).unwrap_err(), Error::NotANose(9, 6));
        let p = Orders::from_permutation(&Permutation::identity(3));
        assert_eq!(retract_nose(&p, 1, 2).unwrap_err(), Error::PolarNose(1, 2));
    }

    #[test]
    fn octahedron_retraction_keeps_survivors() {
        let o = octahedron_orders();
        let r = retract_nose(&o, 9, 4).unwrap();
        assert_eq!(r.sigma.len(), 25);
        assert!(is_sturm(&r.orders).is_sturm());
        let big = Invariants::new(&o).unwrap();
        let small = Invariants::new(&r.orders).unwrap();
        assert!(survivors_unchanged(&big, &small, &r.relabel));
    }

    #[test]
    fn octahedron_scoops() {
        let inv = Invariants::new(&octahedron_orders()).unwrap();
        let west = scoop(&inv, ScoopSide::West).unwrap();
        assert_eq!(west.h0, vec![1, 10, 5, 14, 21, 7, 26, 8, 3, 11, 2]);
        assert_eq!(west.sigma_scooped.len(), 11);
        let east = scoop(&inv, ScoopSide::East).unwrap();
        assert_eq!(east.sigma_scooped.len(), 23);
        for r in [&west, &east] {
            assert!(nose_sequence(&octahedron_orders(), &r.removed).is_some());
        }
    }
}

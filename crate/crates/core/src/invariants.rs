//! Signed zero numbers, `k`-adjacency, connection graphs, signed hemisphere
//! templates and heteroclinic cascades.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meander::{require_sturm, MorseVector, Orders};

/// Subscript of a signed zero number `j_±`, i.e. the sign at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "+")]
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn of(x: i64) -> Sign {
        if x < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Sign::Minus => 0,
            Sign::Plus => 1,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

/// Parses a word like `"-+-"` into signs.
pub fn signs(word: &str) -> Vec<Sign> {
    word.chars()
        .map(|c| match c {
            '-' => Sign::Minus,
            '+' => Sign::Plus,
            other => panic!("not a sign: {other:?}"),
        })
        .collect()
}

/// Unsigned zero numbers `z_{vw}` with the `x = 0` sign of each difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroMatrix {
    pub n: usize,
    /// `unsigned[v-1][w-1] = z_{vw}`.
    pub unsigned: Vec<Vec<i64>>,
    /// `sign[v-1][w-1]` is the subscript of `z(w - v)`.
    pub sign: Vec<Vec<Sign>>,
    #[serde(skip)]
    pub morse: MorseVector,
    #[serde(skip)]
    pub orders: Orders,
}

impl ZeroMatrix {
    /// `z_{vw}`, symmetric, with `z_{vv} = i(v)`.
    pub fn z(&self, v: usize, w: usize) -> i64 {
        self.unsigned[v - 1][w - 1]
    }

    /// Signed `z(w - v)`.
    pub fn signed(&self, w: usize, v: usize) -> (i64, Sign) {
        (self.unsigned[w - 1][v - 1], self.sign[v - 1][w - 1])
    }

    pub fn morse(&self, v: usize) -> i64 {
        self.morse.get(v)
    }
}

/// One row of the zero-number recursion: `z(h0(j) - h0(k))` for all `j`.
///
/// Walking away from `k`, the step is `½(-1)^{j+1}(s(j+1) - s(j))` with
/// `s(j) = sign(σ⁻¹(j) - σ⁻¹(k))`. At `j = k` the sign is taken as
/// `(-1)^{k+1}` going up and `(-1)^k` going down, which makes the value at
/// the two `h0`-neighbors equal to the smaller Morse number.
fn zero_row(orders: &Orders, morse: &MorseVector, k: usize, out: &mut [i64]) {
    let n = orders.n();
    let axis = |j: usize| orders.pos1(orders.h0(j)) as i64;
    let par = |j: usize| if j.is_multiple_of(2) { 1i64 } else { -1 };
    let s = |j: usize, up: bool| -> i64 {
        if j == k {
            if up {
                -par(k)
            } else {
                par(k)
            }
        } else {
            (axis(j) - axis(k)).signum()
        }
    };
    let centre = morse.get(orders.h0(k));
    out[orders.h0(k) - 1] = centre;
    let mut twice = 2 * centre;
    for j in k..n {
        twice += par(j + 1) * (s(j + 1, true) - s(j, true));
        out[orders.h0(j + 1) - 1] = twice / 2;
    }
    twice = 2 * centre;
    for j in (1..k).rev() {
        twice -= par(j + 1) * (s(j + 1, false) - s(j, false));
        out[orders.h0(j) - 1] = twice / 2;
    }
}

/// Full signed zero matrix by the recursion along `h0`.
pub fn zero_numbers(orders: &Orders) -> Result<ZeroMatrix> {
    let morse = require_sturm(orders)?;
    let n = orders.n();
    let mut unsigned = vec![vec![0i64; n]; n];
    for k in 1..=n {
        let v = orders.h0(k);
        zero_row(orders, &morse, k, &mut unsigned[v - 1]);
    }
    let sign = (1..=n)
        .map(|v| {
            (1..=n)
                .map(|w| Sign::of(orders.pos0(w) as i64 - orders.pos0(v) as i64))
                .collect()
        })
        .collect();
    debug_assert!((0..n).all(|a| (0..n).all(|b| unsigned[a][b] == unsigned[b][a])));
    Ok(ZeroMatrix {
        n,
        unsigned,
        sign,
        morse,
        orders: orders.clone(),
    })
}

/// The same matrix computed along `h1`, i.e. from the space-reversed orders.
pub fn zero_numbers_h1(orders: &Orders) -> Result<ZeroMatrix> {
    let swapped = Orders::new(orders.h1_list().to_vec(), orders.h0_list().to_vec())?;
    let mut zm = zero_numbers(&swapped)?;
    let fresh = zero_numbers(orders)?;
    zm.sign = fresh.sign;
    zm.orders = fresh.orders;
    Ok(zm)
}

/// Labels strictly between `v1` and `v2` in `h_ι`-order.
fn between(orders: &Orders, iota: usize, v1: usize, v2: usize) -> impl Iterator<Item = usize> + '_ {
    let (a, b) = {
        let (p, q) = (orders.pos(iota, v1), orders.pos(iota, v2));
        (p.min(q), p.max(q))
    };
    (a + 1..b).map(move |k| orders.h(iota, k))
}

/// `k`-adjacency: no `w` strictly between `v1`, `v2` at `x = 0` blocks with
/// `z(w - v1) = k = z(v2 - w)`. Signs agree automatically for such `w`.
pub fn k_adjacent(zm: &ZeroMatrix, v1: usize, v2: usize, k: i64) -> bool {
    k_adjacent_along(zm, 0, v1, v2, k)
}

/// As [`k_adjacent`], with betweenness taken at `x = 1`.
pub fn k_adjacent_h1(zm: &ZeroMatrix, v1: usize, v2: usize, k: i64) -> bool {
    k_adjacent_along(zm, 1, v1, v2, k)
}

fn k_adjacent_along(zm: &ZeroMatrix, iota: usize, v1: usize, v2: usize, k: i64) -> bool {
    assert_ne!(v1, v2, "k-adjacency needs two distinct equilibria");
    !between(&zm.orders, iota, v1, v2).any(|w| zm.z(w, v1) == k && zm.z(v2, w) == k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Connection {
    pub from: usize,
    pub to: usize,
    pub sign: Sign,
}

/// Heteroclinic connections `v ⇝ w` between equilibria.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectionGraph {
    pub hetero: Vec<Connection>,
    /// Connections between adjacent Morse levels.
    pub edges: Vec<Connection>,
    #[serde(skip)]
    reach: Vec<Vec<bool>>,
}

impl ConnectionGraph {
    pub fn connects(&self, v: usize, w: usize) -> bool {
        self.reach[v - 1][w - 1]
    }

    pub fn targets(&self, v: usize) -> Vec<usize> {
        (1..=self.reach.len())
            .filter(|&w| self.reach[v - 1][w - 1])
            .collect()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.reach[v - 1].iter().filter(|&&b| b).count()
    }

    /// Whether every long connection factors through adjacent-level edges.
    pub fn cascades(&self, zm: &ZeroMatrix) -> bool {
        let n = zm.n;
        let mut adj = vec![Vec::new(); n + 1];
        for e in &self.edges {
            adj[e.from].push(e.to);
        }
        self.hetero.iter().all(|c| {
            let mut seen = vec![false; n + 1];
            let mut stack = vec![c.from];
            while let Some(x) = stack.pop() {
                if x == c.to {
                    return true;
                }
                for &y in &adj[x] {
                    if !seen[y] && zm.morse(y) >= zm.morse(c.to) {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            false
        })
    }
}

pub fn connection_graph(zm: &ZeroMatrix) -> ConnectionGraph {
    connection_graph_along(zm, 0)
}

/// Connection graph with `k`-adjacency taken at `x = 1`.
pub fn connection_graph_h1(zm: &ZeroMatrix) -> ConnectionGraph {
    connection_graph_along(zm, 1)
}

fn connection_graph_along(zm: &ZeroMatrix, iota: usize) -> ConnectionGraph {
    let n = zm.n;
    let mut hetero = Vec::new();
    let mut reach = vec![vec![false; n]; n];
    for v in 1..=n {
        for w in 1..=n {
            if zm.morse(v) <= zm.morse(w) {
                continue;
            }
            let (k, sign) = zm.signed(w, v);
            if k_adjacent_along(zm, iota, v, w, k) {
                hetero.push(Connection {
                    from: v,
                    to: w,
                    sign,
                });
                reach[v - 1][w - 1] = true;
            }
        }
    }
    let edges = hetero
        .iter()
        .copied()
        .filter(|c| zm.morse(c.from) == zm.morse(c.to) + 1)
        .collect();
    ConnectionGraph {
        hetero,
        edges,
        reach,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SignedSets {
    pub minus: Vec<usize>,
    pub plus: Vec<usize>,
}

impl SignedSets {
    pub fn get(&self, s: Sign) -> &[usize] {
        match s {
            Sign::Minus => &self.minus,
            Sign::Plus => &self.plus,
        }
    }

    fn get_mut(&mut self, s: Sign) -> &mut Vec<usize> {
        match s {
            Sign::Minus => &mut self.minus,
            Sign::Plus => &mut self.plus,
        }
    }
}

/// `E[v][j][δ] = {w : v ⇝ w, z(w - v) = j_δ}` for `0 ≤ j < i(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HemisphereTemplate {
    pub sets: BTreeMap<usize, Vec<SignedSets>>,
}

impl HemisphereTemplate {
    pub fn get(&self, v: usize, j: usize, s: Sign) -> &[usize] {
        self.sets
            .get(&v)
            .and_then(|levels| levels.get(j))
            .map(|sets| sets.get(s))
            .unwrap_or(&[])
    }

    /// `clos E[v][j][δ]`: the set itself plus every lower level.
    pub fn closure(&self, v: usize, j: usize, s: Sign) -> Vec<usize> {
        let mut out = self.get(v, j, s).to_vec();
        for lower in 0..j {
            for t in Sign::BOTH {
                out.extend_from_slice(self.get(v, lower, t));
            }
        }
        out.sort_unstable();
        out
    }
}

pub fn hemisphere_template(zm: &ZeroMatrix, cg: &ConnectionGraph) -> Result<HemisphereTemplate> {
    let mut sets = BTreeMap::new();
    for v in 1..=zm.n {
        let i = zm.morse(v);
        if i > 0 {
            sets.insert(v, vec![SignedSets::default(); i as usize]);
        }
    }
    for c in &cg.hetero {
        let (j, s) = zm.signed(c.to, c.from);
        let levels = sets
            .get_mut(&c.from)
            .expect("source has positive Morse number");
        let slot = levels.get_mut(j as usize).ok_or_else(|| {
            Error::InvalidOrders(format!(
                "z({} - {}) = {j} is not below i({}) = {}",
                c.to,
                c.from,
                c.from,
                zm.morse(c.from)
            ))
        })?;
        slot.get_mut(s).push(c.to);
    }
    Ok(HemisphereTemplate { sets })
}

/// Everything derived from the boundary orders of a Sturm permutation.
#[derive(Debug, Clone)]
pub struct Invariants {
    pub zero: ZeroMatrix,
    pub graph: ConnectionGraph,
    pub template: HemisphereTemplate,
}

impl Invariants {
    pub fn new(orders: &Orders) -> Result<Self> {
        let zero = zero_numbers(orders)?;
        let graph = connection_graph(&zero);
        let template = hemisphere_template(&zero, &graph)?;
        Ok(Invariants {
            zero,
            graph,
            template,
        })
    }

    pub fn morse(&self, v: usize) -> i64 {
        self.zero.morse(v)
    }

    pub fn orders(&self) -> &Orders {
        &self.zero.orders
    }

    pub fn cascade_target(&self, v: usize, s: &[Sign]) -> Result<Option<usize>> {
        cascade_target(&self.zero, &self.graph, &self.template, v, s)
    }
}

/// The unique `w = v_{n-1}` starting a cascade `v ⇝ v_{n-1} ⇝ … ⇝ v_0` with
/// `v_i ∈ E[v][i][s_i]` and `i(v_i) = i`. `Ok(None)` when there is none.
pub fn cascade_target(
    zm: &ZeroMatrix,
    cg: &ConnectionGraph,
    ht: &HemisphereTemplate,
    v: usize,
    s: &[Sign],
) -> Result<Option<usize>> {
    let n = zm.morse(v);
    assert_eq!(s.len() as i64, n, "sign word length must equal i(v)");
    let level = |i: usize| -> Vec<usize> {
        ht.get(v, i, s[i])
            .iter()
            .copied()
            .filter(|&u| zm.morse(u) == i as i64)
            .collect()
    };
    cascade_by(v, s.len(), level, |u, x| cg.connects(u, x))
}

/// Shared cascade search: `level(i)` lists the candidates `v_i`, and
/// `connects(u, x)` tells whether `u ⇝ x`.
pub(crate) fn cascade_by(
    v: usize,
    depth: usize,
    level: impl Fn(usize) -> Vec<usize>,
    connects: impl Fn(usize, usize) -> bool,
) -> Result<Option<usize>> {
    // alive holds the candidates at the current level that start a cascade down to level 0
    let mut alive = level(0);
    for i in 1..depth {
        alive = level(i)
            .into_iter()
            .filter(|&u| alive.iter().any(|&x| connects(u, x)))
            .collect();
    }
    match alive.len() {
        0 => Ok(None),
        1 => Ok(Some(alive[0])),
        _ => Err(Error::NonUnique {
            vertex: v,
            candidates: alive,
        }),
    }
}

/// Expected `(predecessor, successor)` sign words along `h_ι` for Morse number `n`.
pub fn traversal_words(n: i64, iota: usize) -> (&'static str, &'static str) {
    match (n, iota) {
        (1, _) => ("-", "+"),
        (2, 0) => ("+-", "-+"),
        (2, _) => ("++", "--"),
        (3, 0) => ("-+-", "+-+"),
        (3, _) => ("---", "+++"),
        _ => panic!("no traversal rule for Morse number {n}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraversalViolation {
    pub vertex: usize,
    pub iota: usize,
    /// `-` for the predecessor side, `+` for the successor side.
    pub side: Sign,
    pub expected: Option<usize>,
    pub found: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TraversalReport {
    pub checked: usize,
    pub violations: Vec<TraversalViolation>,
}

impl TraversalReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the neighbor words of every `v` with `1 ≤ i(v) ≤ 3`. A side whose
/// `h_ι`-neighbor has the higher Morse number is not claimed.
pub fn check_traversal_table(inv: &Invariants) -> Result<TraversalReport> {
    let orders = inv.orders();
    let n = orders.n();
    let mut report = TraversalReport::default();
    for v in 1..=n {
        let m = inv.morse(v);
        if !(1..=3).contains(&m) {
            continue;
        }
        for iota in 0..2 {
            let p = orders.pos(iota, v);
            let (before, after) = traversal_words(m, iota);
            for (side, word, q) in [(Sign::Minus, before, p - 1), (Sign::Plus, after, p + 1)] {
                if q == 0 || q > n {
                    continue;
                }
                let u = orders.h(iota, q);
                if inv.morse(u) > m {
                    continue;
                }
                report.checked += 1;
                let expected = inv.cascade_target(v, &signs(word))?;
                if expected != Some(u) {
                    report.violations.push(TraversalViolation {
                        vertex: v,
                        iota,
                        side,
                        expected,
                        found: u,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Checks the combinatorial content of the hemisphere properties for every
/// `v` and level `j`; returns human-readable violations.
pub fn check_hemisphere_properties(inv: &Invariants) -> Vec<String> {
    let zm = &inv.zero;
    let mut bad = Vec::new();
    for c in &inv.graph.hetero {
        if zm.z(c.to, c.from) >= zm.morse(c.from) {
            bad.push(format!("z({} - {}) not below i({})", c.to, c.from, c.from));
        }
    }
    for (&v, levels) in &inv.template.sets {
        for j in 0..levels.len() {
            for s in Sign::BOTH {
                let clos = inv.template.closure(v, j, s);
                for &w in &clos {
                    if zm.morse(w) > j as i64 {
                        bad.push(format!("i({w}) > {j} in clos E[{v}][{j}][{s}]"));
                    }
                    if zm.z(w, v) > j as i64 {
                        bad.push(format!("z({w} - {v}) > {j} in clos E[{v}][{j}][{s}]"));
                    }
                }
                for &w in inv.template.get(v, j, s) {
                    if zm.signed(w, v) != (j as i64, s) {
                        bad.push(format!("E[{v}][{j}][{s}] holds {w} with other signed z"));
                    }
                }
                for (a, &w1) in clos.iter().enumerate() {
                    for &w2 in &clos[a + 1..] {
                        if zm.z(w1, w2) > j as i64 - 1 {
                            bad.push(format!(
                                "z({w1} - {w2}) = {} within clos E[{v}][{j}][{s}]",
                                zm.z(w1, w2)
                            ));
                        }
                    }
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::octahedron_orders;
    use crate::meander::Permutation;

    fn inv_of(p: &[usize]) -> Invariants {
        Invariants::new(&Orders::from_permutation(
            &Permutation::new(p.to_vec()).unwrap(),
        ))
        .unwrap()
    }

    #[test]
    fn identity_zero_numbers() {
        let inv = inv_of(&[1, 2, 3]);
        let z = &inv.zero;
        assert_eq!((z.z(1, 2), z.z(2, 3), z.z(1, 3)), (0, 0, 0));
        assert_eq!((z.z(1, 1), z.z(2, 2), z.z(3, 3)), (0, 1, 0));
    }

    #[test]
    fn octahedron_signed_zero_numbers() {
        let z = zero_numbers(&octahedron_orders()).unwrap();
        assert_eq!(z.signed(19, 27), (2, Sign::Minus));
        assert_eq!(z.signed(21, 27), (2, Sign::Plus));
        assert_eq!(z.z(27, 27), 3);
    }

    #[test]
    fn identity_connections() {
        let inv = inv_of(&[1, 2, 3]);
        assert_eq!(
            inv.graph.hetero,
            vec![
                Connection {
                    from: 2,
                    to: 1,
                    sign: Sign::Minus
                },
                Connection {
                    from: 2,
                    to: 3,
                    sign: Sign::Plus
                },
            ]
        );
        assert_eq!(inv.template.get(2, 0, Sign::Minus), &[1]);
        assert_eq!(inv.template.get(2, 0, Sign::Plus), &[3]);
        assert_eq!(inv.cascade_target(2, &signs("+")).unwrap(), Some(3));
        assert!(k_adjacent(&inv.zero, 2, 1, 0));
    }

    #[test]
    fn single_face_connections() {
        let inv = inv_of(&[1, 4, 3, 2, 5]);
        assert_eq!(inv.graph.targets(3), vec![1, 2, 4, 5]);
        assert_eq!(inv.graph.targets(2), vec![1, 5]);
        assert_eq!(inv.graph.targets(4), vec![1, 5]);
        assert_eq!(inv.graph.hetero.len(), 8);
    }

    #[test]
    fn octahedron_centre_reaches_everything() {
        let inv = Invariants::new(&octahedron_orders()).unwrap();
        assert_eq!(inv.graph.out_degree(27), 26);
        for v in 1..27 {
            let k = inv.zero.z(v, 27);
            assert!(k_adjacent(&inv.zero, 27, v, k), "27 blocked from {v}");
        }
        assert_eq!(inv.template.get(27, 0, Sign::Minus), &[1]);
        assert_eq!(inv.template.get(27, 0, Sign::Plus), &[2]);
        assert_eq!(inv.cascade_target(27, &signs("-+-")).unwrap(), Some(19));
        assert_eq!(inv.cascade_target(27, &signs("---")).unwrap(), Some(20));
        assert_eq!(inv.cascade_target(27, &signs("+-+")).unwrap(), Some(21));
        assert_eq!(inv.cascade_target(27, &signs("+++")).unwrap(), Some(26));
        assert!(check_traversal_table(&inv).unwrap().passed());
        assert!(check_hemisphere_properties(&inv).is_empty());
        assert!(inv.graph.cascades(&inv.zero));
    }

    #[test]
    fn h1_recursion_matches() {
        let o = octahedron_orders();
        assert_eq!(zero_numbers(&o).unwrap(), zero_numbers_h1(&o).unwrap());
        let z = zero_numbers(&o).unwrap();
        assert_eq!(connection_graph(&z), connection_graph_h1(&z));
    }
}

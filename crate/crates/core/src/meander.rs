//! Permutations and boundary orders, with the arc diagram behind the Sturm check.
//!
//! Equilibria are labels `1..=n`. A pair of boundary orders `(h0, h1)` lists
//! the labels in ascending order of their boundary values at `x = 0` and
//! `x = 1`; the meander permutation is `σ = h0⁻¹ ∘ h1`. A bare permutation is
//! read with the axis labeling `h1 = id`, `h0 = σ⁻¹`, so that labels coincide
//! with axis positions. The `k`-th crossing along the curve is `h0(k)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound for exhaustive enumeration.
pub const DEFAULT_MAX_N: usize = 11;

/// A permutation `σ` of `{1..n}` in one-line form, `σ(j) = map[j-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        if map.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let n = map.len();
        let mut seen = vec![false; n + 1];
        for &x in &map {
            if x == 0 || x > n {
                return Err(Error::Parse(format!("value {x} out of range 1..={n}")));
            }
            if seen[x] {
                return Err(Error::Parse(format!("duplicate value {x}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `σ(j)`, one-based.
    pub fn apply(&self, j: usize) -> usize {
        self.map[j - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (j, &s) in self.map.iter().enumerate() {
            inv[s - 1] = j + 1;
        }
        Permutation { map: inv }
    }

    /// `self ∘ other`, i.e. `j ↦ self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len());
        Permutation {
            map: other.map.iter().map(|&j| self.apply(j)).collect(),
        }
    }

    /// `κσκ` with the flip `κ(j) = n + 1 - j`.
    pub fn kappa_conjugate(&self) -> Self {
        let n = self.len();
        Permutation {
            map: (1..=n).map(|j| n + 1 - self.apply(n + 1 - j)).collect(),
        }
    }

    pub fn trivial_equivalences(&self) -> TrivialEquivalences {
        let inverse = self.inverse();
        let kappa_conjugate = self.kappa_conjugate();
        let both = inverse.kappa_conjugate();
        TrivialEquivalences {
            inverse,
            kappa_conjugate,
            both,
        }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.map
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.map.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Splits a token list on whitespace and commas, ignoring surrounding brackets.
pub(crate) fn parse_tokens(text: &str) -> Result<Vec<usize>> {
    let trimmed = text
        .trim()
        .trim_start_matches(['[', '{', '('])
        .trim_end_matches([']', '}', ')']);
    trimmed
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("not a positive integer: {t:?}")))
        })
        .collect()
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let tokens = parse_tokens(text)?;
        if tokens.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        Permutation::new(tokens)
    }
}

pub fn parse_permutation(text: &str) -> Result<Permutation> {
    text.parse()
}

/// The three other members of the trivial equivalence class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialEquivalences {
    pub inverse: Permutation,
    pub kappa_conjugate: Permutation,
    pub both: Permutation,
}

/// Boundary orders `(h0, h1)` of labels `1..=n`, with cached inverses.
///
/// All accessors are one-based: `h0(k)` is the label in position `k`,
/// `pos0(v)` is the position of label `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orders {
    h0: Vec<usize>,
    h1: Vec<usize>,
    pos0: Vec<usize>,
    pos1: Vec<usize>,
}

fn inverse_table(order: &[usize], which: &str) -> Result<Vec<usize>> {
    let n = order.len();
    let mut pos = vec![0usize; n + 1];
    for (k, &v) in order.iter().enumerate() {
        if v == 0 || v > n {
            return Err(Error::InvalidOrders(format!(
                "{which}: label {v} out of range 1..={n}"
            )));
        }
        if pos[v] != 0 {
            return Err(Error::InvalidOrders(format!(
                "{which}: duplicate label {v}"
            )));
        }
        pos[v] = k + 1;
    }
    Ok(pos)
}

impl Orders {
    /// Builds orders from two label sequences over `1..=n`.
    pub fn new(h0: Vec<usize>, h1: Vec<usize>) -> Result<Self> {
        if h0.len() != h1.len() {
            return Err(Error::InvalidOrders(format!(
                "h0 has {} labels, h1 has {}",
                h0.len(),
                h1.len()
            )));
        }
        if h0.is_empty() {
            return Err(Error::InvalidOrders("empty orders".into()));
        }
        let pos0 = inverse_table(&h0, "h0")?;
        let pos1 = inverse_table(&h1, "h1")?;
        let mut a = Vec::with_capacity(h0.len() + 1);
        a.push(0);
        a.extend(h0);
        let mut b = Vec::with_capacity(h1.len() + 1);
        b.push(0);
        b.extend(h1);
        Ok(Orders {
            h0: a,
            h1: b,
            pos0,
            pos1,
        })
    }

    /// Axis labeling: `h1 = id`, `h0 = σ⁻¹`.
    pub fn from_permutation(p: &Permutation) -> Self {
        let n = p.len();
        Orders::new(p.inverse().into(), (1..=n).collect()).expect("permutation is valid")
    }

    /// Builds orders from arbitrary distinct ids, relabeling them `1..=n` in
    /// increasing id order. Returns the orders and the sorted id list, so that
    /// label `v` stands for `ids[v - 1]`.
    pub fn from_ids(h0: &[usize], h1: &[usize]) -> Result<(Self, Vec<usize>)> {
        let mut ids: Vec<usize> = h0.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != h0.len() {
            return Err(Error::InvalidOrders("h0 repeats an id".into()));
        }
        let label = |id: usize| -> Result<usize> {
            ids.binary_search(&id)
                .map(|k| k + 1)
                .map_err(|_| Error::InvalidOrders(format!("id {id} missing from h0")))
        };
        let a = h0.iter().map(|&x| label(x)).collect::<Result<Vec<_>>>()?;
        let b = h1.iter().map(|&x| label(x)).collect::<Result<Vec<_>>>()?;
        Ok((Orders::new(a, b)?, ids))
    }

    pub fn n(&self) -> usize {
        self.h0.len() - 1
    }

    pub fn h0(&self, k: usize) -> usize {
        self.h0[k]
    }

    pub fn h1(&self, k: usize) -> usize {
        self.h1[k]
    }

    /// `h_ι(k)` for `ι ∈ {0, 1}`.
    pub fn h(&self, iota: usize, k: usize) -> usize {
        if iota == 0 {
            self.h0[k]
        } else {
            self.h1[k]
        }
    }

    pub fn pos0(&self, v: usize) -> usize {
        self.pos0[v]
    }

    pub fn pos1(&self, v: usize) -> usize {
        self.pos1[v]
    }

    pub fn pos(&self, iota: usize, v: usize) -> usize {
        if iota == 0 {
            self.pos0[v]
        } else {
            self.pos1[v]
        }
    }

    pub fn h0_list(&self) -> &[usize] {
        &self.h0[1..]
    }

    pub fn h1_list(&self) -> &[usize] {
        &self.h1[1..]
    }

    pub fn h_list(&self, iota: usize) -> &[usize] {
        if iota == 0 {
            self.h0_list()
        } else {
            self.h1_list()
        }
    }

    /// `σ = h0⁻¹ ∘ h1`.
    pub fn sigma(&self) -> Permutation {
        Permutation {
            map: (1..=self.n()).map(|j| self.pos0[self.h1[j]]).collect(),
        }
    }

    /// Drops the given labels from both orders and relabels the survivors
    /// `1..=m` preserving label order. Returns the new orders and the map
    /// `old label -> new label` (0 for removed labels, index 0 unused).
    pub fn remove_labels(&self, removed: &[usize]) -> (Orders, Vec<usize>) {
        let n = self.n();
        let mut gone = vec![false; n + 1];
        for &v in removed {
            gone[v] = true;
        }
        let mut relabel = vec![0usize; n + 1];
        let mut next = 0;
        for v in 1..=n {
            if !gone[v] {
                next += 1;
                relabel[v] = next;
            }
        }
        let keep = |list: &[usize]| -> Vec<usize> {
            list.iter()
                .filter(|&&v| !gone[v])
                .map(|&v| relabel[v])
                .collect()
        };
        let orders = Orders::new(keep(self.h0_list()), keep(self.h1_list()))
            .expect("restriction of valid orders is valid");
        (orders, relabel)
    }
}

impl From<&Permutation> for Orders {
    fn from(p: &Permutation) -> Self {
        Orders::from_permutation(p)
    }
}

/// An arc of the meander joining two axis positions, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub a: usize,
    pub b: usize,
}

impl Arc {
    pub fn new(x: usize, y: usize) -> Self {
        Arc {
            a: x.min(y),
            b: x.max(y),
        }
    }

    /// Two arcs in the same half plane cross iff their endpoints interleave.
    pub fn crosses(&self, other: &Arc) -> bool {
        (self.a < other.a && other.a < self.b && self.b < other.b)
            || (other.a < self.a && self.a < other.b && other.b < self.b)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Arc diagram of a permutation. Arcs join axis positions; curve pairs
/// `(2t-1, 2t)` lie above the axis and `(2t, 2t+1)` below it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Meander {
    pub upper_arcs: Vec<Arc>,
    pub lower_arcs: Vec<Arc>,
    /// `curve_order[k-1]` is the axis position of the `k`-th crossing.
    pub curve_order: Vec<usize>,
}

fn first_crossing(arcs: &[Arc]) -> Option<(Arc, Arc)> {
    // sweep by left endpoint with a stack of open arcs
    let mut sorted = arcs.to_vec();
    sorted.sort();
    let mut stack: Vec<Arc> = Vec::new();
    for arc in sorted {
        while let Some(top) = stack.last() {
            if top.b < arc.a {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(top) = stack.last() {
            if top.b < arc.b {
                return Some((*top, arc));
            }
        }
        stack.push(arc);
    }
    None
}

pub fn build_meander(orders: &Orders) -> Result<Meander> {
    let n = orders.n();
    let curve_order: Vec<usize> = (1..=n).map(|k| orders.pos1(orders.h0(k))).collect();
    let mut upper_arcs = Vec::new();
    let mut lower_arcs = Vec::new();
    for k in 1..n {
        let arc = Arc::new(curve_order[k - 1], curve_order[k]);
        if k % 2 == 1 {
            upper_arcs.push(arc);
        } else {
            lower_arcs.push(arc);
        }
    }
    for arcs in [&upper_arcs, &lower_arcs] {
        if let Some((first, second)) = first_crossing(arcs) {
            return Err(Error::NotAMeander { first, second });
        }
    }
    Ok(Meander {
        upper_arcs,
        lower_arcs,
        curve_order,
    })
}

/// Morse numbers `i_v`, indexed by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MorseVector {
    values: Vec<i64>,
}

impl MorseVector {
    pub fn get(&self, v: usize) -> i64 {
        self.values[v - 1]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.values
    }

    pub fn max(&self) -> i64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn labels_with(&self, index: i64) -> Vec<usize> {
        (1..=self.values.len())
            .filter(|&v| self.get(v) == index)
            .collect()
    }
}

fn sign(x: i64) -> i64 {
    x.signum()
}

fn alternating(j: usize) -> i64 {
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Recursion along `h1`: `i_{h1(j+1)} = i_{h1(j)} + (-1)^{j+1} sign(σ(j+1) - σ(j))`.
fn morse_along_h1(orders: &Orders) -> Vec<i64> {
    let n = orders.n();
    let sigma = |j: usize| orders.pos0(orders.h1(j)) as i64;
    let mut values = vec![0i64; n];
    let mut cur = 0i64;
    for j in 1..n {
        cur += alternating(j + 1) * sign(sigma(j + 1) - sigma(j));
        values[orders.h1(j + 1) - 1] = cur;
    }
    values
}

/// Recursion along `h0`: `i_{h0(j+1)} = i_{h0(j)} + (-1)^{j+1} sign(σ⁻¹(j+1) - σ⁻¹(j))`.
fn morse_along_h0(orders: &Orders) -> Vec<i64> {
    let n = orders.n();
    let sigma_inv = |j: usize| orders.pos1(orders.h0(j)) as i64;
    let mut values = vec![0i64; n];
    let mut cur = 0i64;
    for j in 1..n {
        cur += alternating(j + 1) * sign(sigma_inv(j + 1) - sigma_inv(j));
        values[orders.h0(j + 1) - 1] = cur;
    }
    values
}

pub fn is_dissipative(orders: &Orders) -> bool {
    let n = orders.n();
    orders.h0(1) == orders.h1(1) && orders.h0(n) == orders.h1(n)
}

/// Morse numbers by the recursion along `h1`.
pub fn morse_numbers(orders: &Orders) -> Result<MorseVector> {
    if !is_dissipative(orders) {
        return Err(Error::NotDissipative);
    }
    Ok(MorseVector {
        values: morse_along_h1(orders),
    })
}

/// Morse numbers by the recursion along `h0`.
pub fn morse_numbers_h0(orders: &Orders) -> Result<MorseVector> {
    if !is_dissipative(orders) {
        return Err(Error::NotDissipative);
    }
    Ok(MorseVector {
        values: morse_along_h0(orders),
    })
}

/// Computes both recursions and panics if they disagree.
pub fn morse_numbers_checked(orders: &Orders) -> Result<MorseVector> {
    let a = morse_numbers(orders)?;
    let b = morse_numbers_h0(orders)?;
    assert_eq!(a, b, "Morse recursions along h0 and h1 disagree");
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SturmVerdict {
    pub odd: bool,
    pub dissipative: bool,
    pub meander: bool,
    pub morse: bool,
}

impl SturmVerdict {
    pub fn is_sturm(&self) -> bool {
        self.odd && self.dissipative && self.meander && self.morse
    }
}

/// Evaluates the three defining checks. The Morse flag requires nonnegative
/// numbers from the `h1` recursion and a return to 0 at the last crossing.
pub fn is_sturm(orders: &Orders) -> SturmVerdict {
    let n = orders.n();
    let dissipative = is_dissipative(orders);
    let meander = build_meander(orders).is_ok();
    let values = morse_along_h1(orders);
    let morse = values.iter().all(|&i| i >= 0) && values[orders.h1(n) - 1] == 0;
    SturmVerdict {
        odd: n % 2 == 1,
        dissipative,
        meander,
        morse,
    }
}

pub fn is_sturm_permutation(p: &Permutation) -> bool {
    is_sturm(&Orders::from_permutation(p)).is_sturm()
}

/// Fails with `NotSturm` unless the orders pass all checks.
pub fn require_sturm(orders: &Orders) -> Result<MorseVector> {
    if !is_sturm(orders).is_sturm() {
        return Err(Error::NotSturm);
    }
    morse_numbers(orders)
}

/// Search state for curve-order backtracking: the curve visits axis
/// positions `c_1 = 1, c_2, …, c_n = n`.
struct CurveSearch {
    n: usize,
    curve: Vec<usize>,
    used: Vec<bool>,
    upper: Vec<Arc>,
    lower: Vec<Arc>,
    morse: i64,
    found: Vec<Permutation>,
}

impl CurveSearch {
    fn new(n: usize) -> Self {
        let mut used = vec![false; n + 1];
        used[1] = true;
        CurveSearch {
            n,
            curve: vec![1],
            used,
            upper: Vec::new(),
            lower: Vec::new(),
            morse: 0,
            found: Vec::new(),
        }
    }

    /// Tries to append axis position `x`; returns the Morse step taken.
    fn push(&mut self, x: usize) -> Option<i64> {
        let k = self.curve.len(); // arc joins curve positions k and k+1
        let prev = self.curve[k - 1];
        let arc = Arc::new(prev, x);
        let side = if k % 2 == 1 { &self.upper } else { &self.lower };
        if side.iter().any(|other| other.crosses(&arc)) {
            return None;
        }
        let step = alternating(k + 1) * sign(x as i64 - prev as i64);
        if self.morse + step < 0 {
            return None;
        }
        self.morse += step;
        if k % 2 == 1 {
            self.upper.push(arc);
        } else {
            self.lower.push(arc);
        }
        self.curve.push(x);
        self.used[x] = true;
        Some(step)
    }

    fn pop(&mut self, step: i64) {
        let x = self.curve.pop().expect("nonempty curve");
        self.used[x] = false;
        self.morse -= step;
        let k = self.curve.len();
        if k % 2 == 1 {
            self.upper.pop();
        } else {
            self.lower.pop();
        }
    }

    fn run(&mut self) {
        let n = self.n;
        if self.curve.len() == n - 1 {
            if let Some(step) = self.push(n) {
                if self.morse == 0 {
                    let orders = Orders::new(self.curve.clone(), (1..=n).collect())
                        .expect("curve is a permutation");
                    self.found.push(orders.sigma());
                }
                self.pop(step);
            }
            return;
        }
        for x in 2..n {
            if self.used[x] {
                continue;
            }
            if let Some(step) = self.push(x) {
                self.run();
                self.pop(step);
            }
        }
    }
}

/// All Sturm permutations of size `n` in lexicographic order.
pub fn enumerate_sturm(n: usize, max_n: usize) -> Result<Vec<Permutation>> {
    enumerate_sturm_jobs(n, max_n, None)
}

/// As [`enumerate_sturm`], splitting the search on the second curve position
/// across `jobs` worker threads (default: rayon's global pool).
pub fn enumerate_sturm_jobs(
    n: usize,
    max_n: usize,
    jobs: Option<usize>,
) -> Result<Vec<Permutation>> {
    if n > max_n {
        return Err(Error::BoundExceeded { n, bound: max_n });
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenSize(n));
    }
    if n == 1 {
        return Ok(vec![Permutation::identity(1)]);
    }
    if n == 3 {
        return Ok(vec![Permutation::identity(3)]);
    }
    let branch = |second: usize| -> Vec<Permutation> {
        let mut search = CurveSearch::new(n);
        if let Some(step) = search.push(second) {
            search.run();
            search.pop(step);
        }
        search.found
    };
    let work = || -> Vec<Permutation> {
        (2..n)
            .into_par_iter()
            .flat_map_iter(branch)
            .collect::<Vec<_>>()
    };
    let mut all = match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    all.sort();
    Ok(all)
}

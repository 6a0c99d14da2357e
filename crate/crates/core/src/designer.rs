//! Design direction: the ZS-pair of a planar complex and the SZS-pair of a
//! 3-cell template as constrained Hamiltonian paths, and the round trips.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ball::{ball_anatomy, is_three_meander_template};
use crate::complex::{
    closed_hemisphere, complex_from_sigma, formal_hemispheres, planar_complex_from_sigma,
    planar_hemispheres, validate_template, CellComplex, FormalHemispheres, Skeleton,
};
use crate::error::{Error, Result};
use crate::invariants::{cascade_by, signs, traversal_words, Invariants, Sign};
use crate::meander::{Orders, Permutation};
use crate::surgery::{scoop_with, ScoopSide};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathPair {
    pub h0: Vec<usize>,
    pub h1: Vec<usize>,
    pub sigma: Permutation,
}

impl PathPair {
    fn new(h0: Vec<usize>, h1: Vec<usize>) -> Result<Self> {
        let (orders, _) = Orders::from_ids(&h0, &h1)?;
        Ok(PathPair {
            sigma: orders.sigma(),
            h0,
            h1,
        })
    }

    pub fn orders(&self) -> Orders {
        Orders::from_ids(&self.h0, &self.h1)
            .expect("path pair orders")
            .0
    }

    /// The same pair with the roles of `h0` and `h1` exchanged.
    pub fn swapped(&self) -> Self {
        PathPair::new(self.h1.clone(), self.h0.clone()).expect("swapped pair")
    }
}

/// Required `(pred, succ)` of a cell along one path.
type Neighbors = (Option<usize>, Option<usize>);

/// Everything the path search reads about a complex.
struct Design {
    dim: BTreeMap<usize, u8>,
    facets: BTreeMap<usize, Vec<usize>>,
    hemi: FormalHemispheres,
    north: usize,
    south: usize,
}

impl Design {
    fn new(
        sk: &Skeleton,
        ball_faces: &[usize],
        hemi: FormalHemispheres,
        north: usize,
        south: usize,
    ) -> Self {
        let facets = sk
            .dim
            .keys()
            .map(|&x| (x, sk.facets(x, ball_faces)))
            .collect();
        Design {
            dim: sk.dim.clone(),
            facets,
            hemi,
            north,
            south,
        }
    }

    /// The cascade target of `v` for a sign word, over formal hemispheres.
    fn target(&self, v: usize, word: &str) -> Result<Option<usize>> {
        let s = signs(word);
        let level = |i: usize| -> Vec<usize> {
            self.hemi
                .get(v, i, s[i])
                .iter()
                .copied()
                .filter(|u| self.dim.get(u) == Some(&(i as u8)))
                .collect()
        };
        cascade_by(v, s.len(), level, |u, x| self.facets[&u].contains(&x))
    }

    /// `(pred, succ)` required next to each positive-dimensional cell along `h_ι`.
    fn rules(&self, iota: usize) -> Result<BTreeMap<usize, Neighbors>> {
        let mut out = BTreeMap::new();
        for (&v, &d) in &self.dim {
            if d == 0 {
                continue;
            }
            let (before, after) = traversal_words(d as i64, iota);
            out.insert(v, (self.target(v, before)?, self.target(v, after)?));
        }
        Ok(out)
    }

    /// The unique Hamiltonian path from North to South obeying the rules.
    fn path(&self, iota: usize) -> Result<Vec<usize>> {
        let rules = self.rules(iota)?;
        let ids: Vec<usize> = self.dim.keys().copied().collect();
        let index: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        // moves[a]: cells allowed right after a
        let mut moves: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
        for (&b, &(pred, succ)) in &rules {
            if let Some(a) = pred {
                moves[index[&a]].push(index[&b]);
            }
            if let Some(c) = succ {
                moves[index[&b]].push(index[&c]);
            }
        }
        let mut search = Search {
            moves: &moves,
            used: vec![false; ids.len()],
            cur: Vec::with_capacity(ids.len()),
            found: Vec::new(),
            end: index[&self.south],
        };
        search.walk(index[&self.north]);
        match search.found.len() {
            0 => Err(Error::NoPath),
            1 => Ok(search.found.remove(0).into_iter().map(|k| ids[k]).collect()),
            _ => Err(Error::MultiplePaths),
        }
    }

    fn pair(&self) -> Result<PathPair> {
        PathPair::new(self.path(0)?, self.path(1)?)
    }
}

struct Search<'a> {
    moves: &'a [Vec<usize>],
    used: Vec<bool>,
    cur: Vec<usize>,
    found: Vec<Vec<usize>>,
    end: usize,
}

impl Search<'_> {
    fn walk(&mut self, a: usize) {
        self.used[a] = true;
        self.cur.push(a);
        if self.cur.len() == self.used.len() {
            if a == self.end {
                self.found.push(self.cur.clone());
            }
        } else if a != self.end {
            for &b in &self.moves[a] {
                if !self.used[b] && self.found.len() < 2 {
                    self.walk(b);
                }
            }
        }
        self.cur.pop();
        self.used[a] = false;
    }
}

/// ZS-pair of a planar complex, with faces read in the East convention.
pub fn zs_pair(c: &CellComplex) -> Result<PathPair> {
    let sk = Skeleton::new(c)?;
    let (north, south) = sk
        .bipolar_poles()
        .ok_or_else(|| Error::InvalidComplex("orientation is not bipolar".into()))?;
    let hemi = planar_hemispheres(c, false)?;
    Design::new(&sk, &[], hemi, north, south).pair()
}

/// SZ-pair: the ZS-pair with the roles of `h0` and `h1` exchanged.
pub fn sz_pair(c: &CellComplex) -> Result<PathPair> {
    Ok(zs_pair(c)?.swapped())
}

/// SZS-pair of a decorated 3-cell template; the result must be a template.
pub fn szs_pair(c: &CellComplex) -> Result<PathPair> {
    let d = c
        .decoration
        .as_ref()
        .ok_or_else(|| Error::InvalidComplex("template has no decoration".into()))?;
    let report = validate_template(c, d);
    if !report.passed() {
        return Err(Error::InvalidComplex(report.messages.join("; ")));
    }
    let sk = Skeleton::new(c)?;
    let hemi = formal_hemispheres(c, d)?;
    let ball_faces = c.ball.as_ref().map(|b| b.faces.clone()).unwrap_or_default();
    let pair = Design::new(&sk, &ball_faces, hemi, d.north, d.south).pair()?;
    let inv = Invariants::new(&pair.orders())?;
    if !is_three_meander_template(&inv).passed() {
        return Err(Error::TemplateCheckFailed(pair.sigma.as_slice().to_vec()));
    }
    Ok(pair)
}

/// `σ → complex → SZS-pair → σ` reproduces both boundary orders.
pub fn roundtrip(p: &Permutation) -> bool {
    roundtrip_orders(&Orders::from_permutation(p))
}

pub fn roundtrip_orders(o: &Orders) -> bool {
    let run = || -> Result<bool> {
        let inv = Invariants::new(o)?;
        let rec = complex_from_sigma(&inv)?;
        let pair = szs_pair(&rec.complex)?;
        Ok(pair.h0 == o.h0_list() && pair.h1 == o.h1_list())
    };
    run().unwrap_or(false)
}

/// Planar round trip `σ → complex → ZS-pair → σ`.
pub fn planar_roundtrip(p: &Permutation) -> bool {
    let o = Orders::from_permutation(p);
    let run = || -> Result<bool> {
        let inv = Invariants::new(&o)?;
        let c = planar_complex_from_sigma(&inv)?;
        let pair = zs_pair(&c)?;
        Ok(pair.h0 == o.h0_list() && pair.h1 == o.h1_list())
    };
    run().unwrap_or(false)
}

/// Scoops against hemisphere pairs: the West scoop is the ZS-pair of the
/// closed East hemisphere, the East scoop the SZ-pair of the closed West one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoopCheck {
    pub west_scoop: Permutation,
    pub east_zs: Permutation,
    pub east_scoop: Permutation,
    pub west_sz: Permutation,
}

impl ScoopCheck {
    pub fn passed(&self) -> bool {
        self.west_scoop == self.east_zs && self.east_scoop == self.west_sz
    }
}

pub fn verify_scoop_vs_hemisphere(inv: &Invariants) -> Result<ScoopCheck> {
    let anatomy = ball_anatomy(inv)?;
    let rec = complex_from_sigma(inv)?;
    let west = scoop_with(inv, &anatomy, ScoopSide::West)?;
    let east = scoop_with(inv, &anatomy, ScoopSide::East)?;
    let clos_e = closed_hemisphere(&rec.complex, &rec.decoration, Sign::Plus)?;
    let clos_w = closed_hemisphere(&rec.complex, &rec.decoration, Sign::Minus)?;
    Ok(ScoopCheck {
        west_scoop: west.sigma_scooped,
        east_zs: zs_pair(&clos_e)?.sigma,
        east_scoop: east.sigma_scooped,
        west_sz: sz_pair(&clos_w)?.sigma,
    })
}

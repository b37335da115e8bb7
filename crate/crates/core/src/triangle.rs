//! The discrete triangle Δ_d of integer triples `(r,s,t)` with `r+s+t = d`.
//!
//! Locations are plain integer triples. Displaced triples may leave the
//! triangle (or have negative coordinates); membership is checked with
//! [`Location::in_triangle`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct Location {
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

/// `e1 - e2`
pub const ALPHA: Location = Location::new(1, -1, 0);
/// `e2 - e3`
pub const BETA: Location = Location::new(0, 1, -1);
/// `e3 - e1`
pub const GAMMA: Location = Location::new(-1, 0, 1);

/// The six roots `±α, ±β, ±γ`.
pub const ROOTS: [Location; 6] = [
    ALPHA,
    Location::new(-1, 1, 0),
    BETA,
    Location::new(0, -1, 1),
    GAMMA,
    Location::new(1, 0, -1),
];

const UNIT: [Location; 3] = [
    Location::new(1, 0, 0),
    Location::new(0, 1, 0),
    Location::new(0, 0, 1),
];

impl Location {
    pub const fn new(r: i64, s: i64, t: i64) -> Location {
        Location { r, s, t }
    }

    /// Coordinate `η ∈ {1,2,3}`.
    pub fn coord(self, eta: u8) -> i64 {
        match eta {
            1 => self.r,
            2 => self.s,
            3 => self.t,
            _ => panic!("eta must be 1, 2 or 3, got {eta}"),
        }
    }

    pub fn sum(self) -> i64 {
        self.r + self.s + self.t
    }

    pub fn in_triangle(self, d: usize) -> bool {
        self.r >= 0 && self.s >= 0 && self.t >= 0 && self.sum() == d as i64
    }

    pub fn is_adjacent(self, other: Location) -> bool {
        ROOTS.contains(&(self - other))
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.s, self.t)
    }
}

impl From<[i64; 3]> for Location {
    fn from([r, s, t]: [i64; 3]) -> Location {
        Location::new(r, s, t)
    }
}

impl From<Location> for [i64; 3] {
    fn from(l: Location) -> [i64; 3] {
        [l.r, l.s, l.t]
    }
}

impl Add for Location {
    type Output = Location;

    fn add(self, o: Location) -> Location {
        Location::new(self.r + o.r, self.s + o.s, self.t + o.t)
    }
}

impl Sub for Location {
    type Output = Location;

    fn sub(self, o: Location) -> Location {
        Location::new(self.r - o.r, self.s - o.s, self.t - o.t)
    }
}

impl Neg for Location {
    type Output = Location;

    fn neg(self) -> Location {
        Location::new(-self.r, -self.s, -self.t)
    }
}

/// Δ_d together with its canonical enumeration order: descending `r`, then
/// ascending `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    d: usize,
}

impl Triangle {
    pub fn new(d: usize) -> Triangle {
        Triangle { d }
    }

    pub fn diameter(self) -> usize {
        self.d
    }

    /// `(d+1)(d+2)/2`
    pub fn len(self) -> usize {
        (self.d + 1) * (self.d + 2) / 2
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, l: Location) -> bool {
        l.in_triangle(self.d)
    }

    pub fn locations(self) -> impl Iterator<Item = Location> {
        let d = self.d as i64;
        (0..=d)
            .rev()
            .flat_map(move |r| (0..=d - r).map(move |t| Location::new(r, d - r - t, t)))
    }

    /// Position of `l` in the canonical order.
    pub fn index_of(self, l: Location) -> Option<usize> {
        if !self.contains(l) {
            return None;
        }
        let k = (self.d as i64 - l.r) as usize;
        Some(k * (k + 1) / 2 + l.t as usize)
    }
}

pub fn locations(d: usize) -> Vec<Location> {
    Triangle::new(d).locations().collect()
}

/// Where a location sits in Δ_d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    /// The η-corner. At `d = 0` the single location is reported as the 1-corner.
    Corner(u8),
    /// The η values whose coordinate is zero.
    Boundary(Vec<u8>),
    Interior,
}

pub fn classify(l: Location, d: usize) -> Result<Region> {
    if !l.in_triangle(d) {
        return Err(Error::NotInTriangle(l, d));
    }
    if let Some(eta) = (1..=3).find(|&e| l.coord(e) == d as i64) {
        return Ok(Region::Corner(eta));
    }
    let zeros: Vec<u8> = (1..=3).filter(|&e| l.coord(e) == 0).collect();
    Ok(if zeros.is_empty() {
        Region::Interior
    } else {
        Region::Boundary(zeros)
    })
}

/// The η-boundary: locations with η-coordinate zero, in canonical order.
pub fn boundary(d: usize, eta: u8) -> Vec<Location> {
    Triangle::new(d).locations().filter(|l| l.coord(eta) == 0).collect()
}

/// The η-lines, ordered by η-coordinate `0..=d`; the line with coordinate
/// `c` has `d - c + 1` locations.
pub fn eta_lines(d: usize, eta: u8) -> Vec<Vec<Location>> {
    assert!((1..=3).contains(&eta), "eta must be 1, 2 or 3");
    (0..=d as i64)
        .map(|c| Triangle::new(d).locations().filter(|l| l.coord(eta) == c).collect())
        .collect()
}

/// All lines of Δ_d (1-lines, then 2-lines, then 3-lines).
pub fn all_lines(d: usize) -> Vec<Vec<Location>> {
    (1..=3).flat_map(|eta| eta_lines(d, eta)).collect()
}

/// The black clique `(τ+e1, τ+e2, τ+e3)` for `τ ∈ Δ_{d-1}`.
pub fn black_clique(tau: Location) -> [Location; 3] {
    UNIT.map(|e| tau + e)
}

/// The white clique `(λ, μ, ν) = ((r,s+1,t+1), (r+1,s,t+1), (r+1,s+1,t))`
/// for `τ = (r,s,t) ∈ Δ_{d-2}`. This order fixes the orientation of B-values.
pub fn white_clique(tau: Location) -> [Location; 3] {
    let Location { r, s, t } = tau;
    [
        Location::new(r, s + 1, t + 1),
        Location::new(r + 1, s, t + 1),
        Location::new(r + 1, s + 1, t),
    ]
}

pub fn black_cliques(d: usize) -> Vec<(Location, [Location; 3])> {
    if d == 0 {
        return Vec::new();
    }
    Triangle::new(d - 1)
        .locations()
        .map(|tau| (tau, black_clique(tau)))
        .collect()
}

pub fn white_cliques(d: usize) -> Vec<(Location, [Location; 3])> {
    if d < 2 {
        return Vec::new();
    }
    Triangle::new(d - 2)
        .locations()
        .map(|tau| (tau, white_clique(tau)))
        .collect()
}

/// Every edge `{λ, μ}` of Δ_d, each once, with `λ` before `μ` canonically.
pub fn edges(d: usize) -> Vec<(Location, Location)> {
    let tri = Triangle::new(d);
    let locs: Vec<Location> = tri.locations().collect();
    let mut out = Vec::new();
    for (i, &a) in locs.iter().enumerate() {
        for &b in &locs[i + 1..] {
            if a.is_adjacent(b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// The unique `ν` completing the edge `{λ, μ}` to a black clique.
pub fn completion(lambda: Location, mu: Location, d: usize) -> Result<Location> {
    for l in [lambda, mu] {
        if !l.in_triangle(d) {
            return Err(Error::NotInTriangle(l, d));
        }
    }
    let diff = lambda - mu;
    // diff = e_a - e_b; the clique apex is τ = λ - e_a and ν = τ + e_k.
    for a in 0..3 {
        for b in 0..3 {
            if a != b && diff == UNIT[a] - UNIT[b] {
                let k = 3 - a - b;
                return Ok(lambda - UNIT[a] + UNIT[k]);
            }
        }
    }
    Err(Error::NotAdjacent(lambda, mu))
}

/// The six neighbours `μ ± α`, `μ ± β`, `μ ± γ` of a location. They may lie
/// outside the triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hexagon {
    pub plus_alpha: Location,
    pub minus_alpha: Location,
    pub plus_beta: Location,
    pub minus_beta: Location,
    pub plus_gamma: Location,
    pub minus_gamma: Location,
}

impl Hexagon {
    /// `(μ+α, μ+β, μ+γ)`
    pub fn numerator(&self) -> [Location; 3] {
        [self.plus_alpha, self.plus_beta, self.plus_gamma]
    }

    /// `(μ-α, μ-β, μ-γ)`
    pub fn denominator(&self) -> [Location; 3] {
        [self.minus_alpha, self.minus_beta, self.minus_gamma]
    }
}

pub fn hexagon(mu: Location) -> Hexagon {
    Hexagon {
        plus_alpha: mu + ALPHA,
        minus_alpha: mu - ALPHA,
        plus_beta: mu + BETA,
        minus_beta: mu - BETA,
        plus_gamma: mu + GAMMA,
        minus_gamma: mu - GAMMA,
    }
}

/// The hexagon centre `μ = (r+1, s, t+1)` attached to `τ = (r,s,t) ∈ Δ_{d-2}`.
pub fn hexagon_center(tau: Location) -> Location {
    Location::new(tau.r + 1, tau.s, tau.t + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn loc(r: i64, s: i64, t: i64) -> Location {
        Location::new(r, s, t)
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(locations(0), vec![loc(0, 0, 0)]);
        assert_eq!(
            locations(2),
            vec![loc(2, 0, 0), loc(1, 1, 0), loc(1, 0, 1), loc(0, 2, 0), loc(0, 1, 1), loc(0, 0, 2)]
        );
        assert_eq!(locations(3).len(), 10);
        for d in 0..8 {
            let tri = Triangle::new(d);
            let locs = locations(d);
            assert_eq!(locs.len(), tri.len());
            for (i, l) in locs.iter().enumerate() {
                assert_eq!(tri.index_of(*l), Some(i));
            }
        }
        assert_eq!(Triangle::new(2).index_of(loc(3, -1, 0)), None);
    }

    #[test]
    fn classification() {
        assert_eq!(classify(loc(3, 0, 0), 3).unwrap(), Region::Corner(1));
        assert_eq!(classify(loc(0, 0, 3), 3).unwrap(), Region::Corner(3));
        assert_eq!(classify(loc(1, 1, 1), 3).unwrap(), Region::Interior);
        assert_eq!(classify(loc(1, 2, 0), 3).unwrap(), Region::Boundary(vec![3]));
        assert_eq!(classify(loc(1, 1, 1), 2), Err(Error::NotInTriangle(loc(1, 1, 1), 2)));
        // The bottom row of the drawing (s = 0) is the 2-boundary.
        let bottom = boundary(3, 2);
        assert_eq!(bottom, vec![loc(3, 0, 0), loc(2, 0, 1), loc(1, 0, 2), loc(0, 0, 3)]);
    }

    #[test]
    fn lines() {
        let rows = eta_lines(3, 2);
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[3], vec![loc(0, 3, 0)]);
        assert_eq!(eta_lines(0, 1), vec![vec![loc(0, 0, 0)]]);
        assert_eq!(eta_lines(2, 1)[0], vec![loc(0, 2, 0), loc(0, 1, 1), loc(0, 0, 2)]);
        for d in 0..6 {
            for eta in 1..=3 {
                let lines = eta_lines(d, eta);
                for (c, line) in lines.iter().enumerate() {
                    assert_eq!(line.len(), d - c + 1);
                }
                let flat: HashSet<Location> = lines.into_iter().flatten().collect();
                assert_eq!(flat.len(), Triangle::new(d).len());
            }
        }
    }

    #[test]
    fn cliques() {
        assert_eq!(black_cliques(1), vec![(loc(0, 0, 0), [loc(1, 0, 0), loc(0, 1, 0), loc(0, 0, 1)])]);
        assert_eq!(black_cliques(3).len(), 6);
        assert_eq!(black_clique(loc(1, 0, 0)), [loc(2, 0, 0), loc(1, 1, 0), loc(1, 0, 1)]);
        assert!(black_cliques(0).is_empty());
        assert_eq!(white_cliques(2), vec![(loc(0, 0, 0), [loc(0, 1, 1), loc(1, 0, 1), loc(1, 1, 0)])]);
        assert_eq!(white_cliques(4).len(), 6);
        assert!(white_cliques(1).is_empty());
    }

    #[test]
    fn completions() {
        assert_eq!(completion(loc(1, 0, 0), loc(0, 1, 0), 1).unwrap(), loc(0, 0, 1));
        assert_eq!(completion(loc(0, 1, 1), loc(1, 0, 1), 2).unwrap(), loc(0, 0, 2));
        assert_eq!(
            completion(loc(2, 0, 0), loc(0, 1, 1), 2),
            Err(Error::NotAdjacent(loc(2, 0, 0), loc(0, 1, 1)))
        );
    }

    #[test]
    fn hexagon_arithmetic() {
        let h = hexagon(loc(1, 0, 1));
        assert_eq!(h.plus_alpha, loc(2, -1, 1));
        assert!(!h.plus_alpha.in_triangle(2));
        assert_eq!(h.minus_alpha, loc(0, 1, 1));
        assert_eq!(h.plus_beta, loc(1, 1, 0));
        assert_eq!(h.plus_gamma, loc(0, 0, 2));
        assert_eq!(h.minus_gamma, loc(2, 0, 0));
        assert_eq!(h.minus_beta, loc(1, -1, 2));
        let mu = loc(4, -2, 7);
        assert_eq!(mu + ALPHA + BETA + GAMMA, mu);
    }

    #[test]
    fn edge_clique_incidence() {
        for d in 0..=6 {
            let blacks = black_cliques(d);
            let whites = white_cliques(d);
            for (a, b) in edges(d) {
                let contains = |c: &[Location; 3]| c.contains(&a) && c.contains(&b);
                assert_eq!(blacks.iter().filter(|(_, c)| contains(c)).count(), 1);
                assert!(whites.iter().filter(|(_, c)| contains(c)).count() <= 1);
                let nu = completion(a, b, d).unwrap();
                assert!(blacks.iter().any(|(_, c)| contains(c) && c.contains(&nu)));
            }
            for (_, c) in blacks.iter().chain(whites.iter()) {
                for x in c {
                    assert!(x.in_triangle(d));
                }
                assert!(c[0].is_adjacent(c[1]) && c[1].is_adjacent(c[2]) && c[2].is_adjacent(c[0]));
            }
            let distinct: HashSet<[Location; 3]> = blacks.iter().map(|(_, c)| *c).collect();
            assert_eq!(distinct.len(), blacks.len());
            let distinct: HashSet<[Location; 3]> = whites.iter().map(|(_, c)| *c).collect();
            assert_eq!(distinct.len(), whites.len());
        }
    }

    #[test]
    fn serde_as_triple() {
        let json = serde_json::to_string(&loc(1, 0, 2)).unwrap();
        assert_eq!(json, "[1,0,2]");
        let back: Location = serde_json::from_str(&json).unwrap();
        assert_eq!(back, loc(1, 0, 2));
    }
}

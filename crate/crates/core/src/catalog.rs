//! Built-in images and maps.
//!
//! Keys: `interval:<a>:<b>`, `cycle:<n>`, `fig1`, `fig2`, `cube`, `point`.
//! `fig1` is an 18-point H shape in `Z²` with 4-adjacency: a top bar
//! (labels 1 to 7), four uprights (8 to 11) and a bottom bar (12 to 18).
//! Label `L` is point index `L - 1`. `fig2` is the same point set with
//! 8-adjacency.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::image::{digital_interval, DigitalImage, LatticeSpec, PointId};
use crate::map::{is_continuous, DigitalMap};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub image: Arc<DigitalImage>,
    pub maps: Vec<(String, DigitalMap)>,
}

impl CatalogEntry {
    pub fn map(&self, name: &str) -> Option<&DigitalMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
}

/// Order of the bundled `fig1` maps.
pub const FIG1_FAMILY: [&str; 8] = ["f", "p_v", "p_h", "g1", "g2", "g3", "h1", "h2"];

/// Previously published family-restricted divergence values on `fig1`, by label.
pub const FIG1_REPORTED_DIVERGENCE: [(&[usize], usize); 3] = [
    (&[1, 7, 8, 11, 12, 18], 3),
    (&[2, 3, 5, 6, 13, 14, 16, 17], 14),
    (&[4, 9, 10, 15], 17),
];

pub fn fig1_reported_divergence(label: usize) -> Option<usize> {
    FIG1_REPORTED_DIVERGENCE.iter().find(|(ls, _)| ls.contains(&label)).map(|&(_, k)| k)
}

/// Catalog images used by the exhaustive checks, smallest first.
pub fn standard_keys() -> Vec<&'static str> {
    vec![
        "point",
        "interval:0:1",
        "interval:0:2",
        "interval:0:3",
        "interval:0:4",
        "cycle:4",
        "cycle:5",
        "cycle:6",
        "cube",
        "fig1",
        "fig2",
    ]
}

pub fn fig1_coords() -> Vec<Vec<i64>> {
    let mut pts = Vec::with_capacity(18);
    pts.extend((0..7).map(|x| vec![x, 2]));
    pts.extend([0, 2, 4, 6].map(|x| vec![x, 1]));
    pts.extend((0..7).map(|x| vec![x, 0]));
    pts
}

fn cube_coords() -> Vec<Vec<i64>> {
    [[0, 0, 0], [0, 1, 0], [0, 1, 1], [0, 0, 1], [1, 0, 0], [1, 1, 0], [1, 1, 1], [1, 0, 1]]
        .iter()
        .map(|c| c.to_vec())
        .collect()
}

fn lattice(name: &str, dim: usize, t: usize, points: Vec<Vec<i64>>) -> Result<DigitalImage> {
    Ok(DigitalImage::from_lattice(LatticeSpec { dim, t, points })?.with_name(name))
}

pub fn cycle(n: usize) -> Result<DigitalImage> {
    if n < 3 {
        return Err(Error::Precondition(format!("cycle needs at least 3 points, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(DigitalImage::from_graph(n, &edges)?.with_name(format!("cycle:{n}")))
}

/// The cube with its first point `(0,0,0)` removed.
pub fn cube_minus_corner() -> Result<DigitalImage> {
    let cube = load_key("cube")?;
    let rest: Vec<PointId> = (1..8).map(PointId).collect();
    Ok(cube.induced(&rest)?.with_name("cube-minus-corner"))
}

fn parse_int<T: std::str::FromStr>(key: &str, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::UnknownCatalogKey(key.to_string()))
}

fn build_image(key: &str) -> Result<DigitalImage> {
    let parts: Vec<&str> = key.split(':').collect();
    match parts.as_slice() {
        ["point"] => Ok(DigitalImage::from_graph(1, &[])?.with_name("point")),
        ["cube"] => lattice("cube", 3, 1, cube_coords()),
        ["fig1"] => lattice("fig1", 2, 1, fig1_coords()),
        ["fig2"] => lattice("fig2", 2, 2, fig1_coords()),
        ["cycle", n] => cycle(parse_int(key, n)?),
        ["interval", a, b] => digital_interval(parse_int(key, a)?, parse_int(key, b)?),
        _ => Err(Error::UnknownCatalogKey(key.to_string())),
    }
}

pub fn is_catalog_key(key: &str) -> bool {
    build_image(key).is_ok()
}

pub fn load_key(key: &str) -> Result<Arc<DigitalImage>> {
    build_image(key).map(Arc::new)
}

/// Map over `fig1` given as a transform of coordinates.
fn coord_map(x: &Arc<DigitalImage>, t: impl Fn(i64, i64) -> (i64, i64)) -> Result<DigitalMap> {
    let coords = fig1_coords();
    let assign = coords
        .iter()
        .map(|c| {
            let (u, v) = t(c[0], c[1]);
            x.point_at(&[u, v])
                .map(|p| p.index())
                .ok_or_else(|| Error::Invariant(format!("({u},{v}) is not a fig1 point")))
        })
        .collect::<Result<Vec<_>>>()?;
    DigitalMap::on(x, assign)
}

/// Identity on `fig1` except the given label moves.
fn label_map(x: &Arc<DigitalImage>, moves: &[(usize, usize)]) -> Result<DigitalMap> {
    let mut assign: Vec<usize> = (0..x.size()).collect();
    for &(from, to) in moves {
        assign[from - 1] = to - 1;
    }
    DigitalMap::on(x, assign)
}

fn fig1_maps(x: &Arc<DigitalImage>) -> Result<Vec<(String, DigitalMap)>> {
    let g1 = [(7, 5), (11, 10), (18, 16)];
    let g2 = [(1, 3), (8, 9), (12, 14)];
    let g3: Vec<_> = g1.iter().chain(&g2).copied().collect();
    let h1: Vec<_> = (1..=7).map(|l| (l, l + 11)).collect();
    let h2: Vec<_> = (1..=7).map(|l| (l + 11, l)).collect();
    let maps = vec![
        coord_map(x, |u, v| (6 - u, 2 - v))?,
        coord_map(x, |u, v| (u, 2 - v))?,
        coord_map(x, |u, v| (6 - u, v))?,
        label_map(x, &g1)?,
        label_map(x, &g2)?,
        label_map(x, &g3)?,
        label_map(x, &h1)?,
        label_map(x, &h2)?,
    ];
    Ok(FIG1_FAMILY.iter().map(|s| s.to_string()).zip(maps).collect())
}

pub fn catalog_get(key: &str) -> Result<CatalogEntry> {
    let image = load_key(key)?;
    let maps = if key == "fig1" { fig1_maps(&image)? } else { Vec::new() };
    for (name, f) in &maps {
        if !is_continuous(f) {
            return Err(Error::Invariant(format!("bundled map {name} is not continuous")));
        }
    }
    Ok(CatalogEntry { key: key.to_string(), image, maps })
}

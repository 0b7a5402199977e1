//! Finite digital images.
//!
//! An image is a finite point set with a symmetric, irreflexive adjacency.
//! Images either come from integer lattice points under the `κ(t, n)`
//! adjacency (points differ by ±1 in at most `t` coordinates and agree
//! elsewhere) or from an explicit edge list. Adjacency is stored per point
//! as a 64-bit neighbor mask, so an image holds at most [`MAX_POINTS`]
//! points.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard ceiling imposed by the 64-bit adjacency masks.
pub const MAX_POINTS: usize = 64;

/// Index of a point in an image's canonical (construction) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub usize);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for PointId {
    fn from(i: usize) -> Self {
        PointId(i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub dim: usize,
    pub t: usize,
    pub points: Vec<Vec<i64>>,
}

/// Construction input for [`build_image`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImageSource {
    Lattice(LatticeSpec),
    Graph { size: usize, edges: Vec<(usize, usize)> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Largest accepted image; clamped to [`MAX_POINTS`].
    pub max_points: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { max_points: MAX_POINTS }
    }
}

/// Number of `κ(t, n)`-neighbors of any point of `Zⁿ`: `Σ_{i=1}^{t} 2^i C(n, i)`.
pub fn kappa_count(t: usize, n: usize) -> Result<u64> {
    if n == 0 || t == 0 || t > n {
        return Err(Error::Precondition(format!(
            "kappa_count needs 1 <= t <= n, got t={t}, n={n}"
        )));
    }
    let overflow = || Error::Precondition(format!("kappa_count({t}, {n}) overflows u64"));
    let mut total: u64 = 0;
    let mut binom: u64 = 1;
    for i in 1..=t {
        // C(n, i) = C(n, i-1) * (n - i + 1) / i, exact at every step
        binom = binom
            .checked_mul((n - i + 1) as u64)
            .ok_or_else(overflow)?
            / i as u64;
        let pow = 1u64.checked_shl(i as u32).filter(|_| i < 64).ok_or_else(overflow)?;
        total = total
            .checked_add(pow.checked_mul(binom).ok_or_else(overflow)?)
            .ok_or_else(overflow)?;
    }
    Ok(total)
}

/// Immutable digital image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitalImage {
    name: Option<String>,
    nbrs: Vec<u64>,
    lattice: Option<LatticeSpec>,
}

// Consistent with the derived `PartialEq`: equal images have equal masks.
impl std::hash::Hash for DigitalImage {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nbrs.hash(state);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub is_connected: bool,
    pub components: Vec<Vec<PointId>>,
}

pub fn build_image(source: ImageSource, options: BuildOptions) -> Result<DigitalImage> {
    let cap = options.max_points.min(MAX_POINTS);
    match source {
        ImageSource::Lattice(spec) => DigitalImage::lattice_with_cap(spec, cap),
        ImageSource::Graph { size, edges } => DigitalImage::graph_with_cap(size, &edges, cap),
    }
}

/// `[a, b]_Z` with 2-adjacency.
pub fn digital_interval(a: i64, b: i64) -> Result<DigitalImage> {
    if a >= b {
        return Err(Error::Precondition(format!(
            "digital interval needs a < b, got [{a}, {b}]"
        )));
    }
    let len = (b - a + 1) as u64;
    if len > MAX_POINTS as u64 {
        return Err(Error::TooLarge { size: len as usize, limit: MAX_POINTS });
    }
    let spec = LatticeSpec { dim: 1, t: 1, points: (a..=b).map(|v| vec![v]).collect() };
    Ok(DigitalImage::from_lattice(spec)?.with_name(format!("interval:{a}:{b}")))
}

fn lattice_adjacent(p: &[i64], q: &[i64], t: usize) -> bool {
    let mut differing = 0;
    for (a, b) in p.iter().zip(q) {
        match (a - b).abs() {
            0 => {}
            1 => differing += 1,
            _ => return false,
        }
    }
    differing >= 1 && differing <= t
}

impl DigitalImage {
    pub fn from_lattice(spec: LatticeSpec) -> Result<Self> {
        Self::lattice_with_cap(spec, MAX_POINTS)
    }

    pub fn from_graph(size: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::graph_with_cap(size, edges, MAX_POINTS)
    }

    fn lattice_with_cap(spec: LatticeSpec, cap: usize) -> Result<Self> {
        if spec.dim == 0 {
            return Err(Error::InvalidImage("lattice dimension must be positive".into()));
        }
        if spec.t == 0 || spec.t > spec.dim {
            return Err(Error::InvalidImage(format!(
                "t must satisfy 1 <= t <= dim, got t={} dim={}",
                spec.t, spec.dim
            )));
        }
        if spec.points.is_empty() {
            return Err(Error::InvalidImage("image has no points".into()));
        }
        if spec.points.len() > cap {
            return Err(Error::TooLarge { size: spec.points.len(), limit: cap });
        }
        let mut seen = HashSet::new();
        for (i, p) in spec.points.iter().enumerate() {
            if p.len() != spec.dim {
                return Err(Error::InvalidImage(format!(
                    "point {i} has {} coordinates, expected {}",
                    p.len(),
                    spec.dim
                )));
            }
            if !seen.insert(p.as_slice()) {
                return Err(Error::InvalidImage(format!("duplicate point {p:?} at index {i}")));
            }
        }
        let n = spec.points.len();
        let mut nbrs = vec![0u64; n];
        for i in 0..n {
            for j in (i + 1)..n {
                if lattice_adjacent(&spec.points[i], &spec.points[j], spec.t) {
                    nbrs[i] |= 1 << j;
                    nbrs[j] |= 1 << i;
                }
            }
        }
        Ok(DigitalImage { name: None, nbrs, lattice: Some(spec) })
    }

    fn graph_with_cap(size: usize, edges: &[(usize, usize)], cap: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidImage("image has no points".into()));
        }
        if size > cap {
            return Err(Error::TooLarge { size, limit: cap });
        }
        let mut nbrs = vec![0u64; size];
        for &(a, b) in edges {
            if a >= size || b >= size {
                return Err(Error::InvalidImage(format!(
                    "edge ({a}, {b}) references a point outside 0..{size}"
                )));
            }
            if a == b {
                return Err(Error::InvalidImage(format!("self-loop at point {a}")));
            }
            nbrs[a] |= 1 << b;
            nbrs[b] |= 1 << a;
        }
        Ok(DigitalImage { name: None, nbrs, lattice: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn lattice(&self) -> Option<&LatticeSpec> {
        self.lattice.as_ref()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.nbrs.len()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.size()).map(PointId)
    }

    /// Mask with one bit per point.
    #[inline]
    pub fn full_mask(&self) -> u64 {
        if self.size() == 64 {
            u64::MAX
        } else {
            (1u64 << self.size()) - 1
        }
    }

    /// Deleted neighborhood as a bit mask.
    #[inline]
    pub fn neighbor_mask(&self, p: usize) -> u64 {
        self.nbrs[p]
    }

    /// Closed neighborhood (`q ⇔ p`) as a bit mask.
    #[inline]
    pub fn closed_mask(&self, p: usize) -> u64 {
        self.nbrs[p] | (1 << p)
    }

    #[inline]
    pub fn is_adjacent(&self, p: usize, q: usize) -> bool {
        self.nbrs[p] >> q & 1 == 1
    }

    /// Equal or adjacent.
    #[inline]
    pub fn is_close(&self, p: usize, q: usize) -> bool {
        p == q || self.is_adjacent(p, q)
    }

    pub fn degree(&self, p: usize) -> usize {
        self.nbrs[p].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.size() {
            for b in bits(self.nbrs[a] >> a >> 1) {
                out.push((a, a + 1 + b));
            }
        }
        out
    }

    pub fn check_point(&self, p: PointId) -> Result<usize> {
        if p.0 < self.size() {
            Ok(p.0)
        } else {
            Err(Error::InvalidPoint { index: p.0, size: self.size() })
        }
    }

    /// `N(p)` when `deleted` is false, `N*(p) = N(p) \ {p}` otherwise.
    pub fn neighborhood(&self, p: PointId, deleted: bool) -> Result<Vec<PointId>> {
        let i = self.check_point(p)?;
        let mask = if deleted { self.neighbor_mask(i) } else { self.closed_mask(i) };
        Ok(bits(mask).map(PointId).collect())
    }

    pub fn connectivity(&self) -> Connectivity {
        let components: Vec<Vec<PointId>> = self
            .component_masks(self.full_mask())
            .into_iter()
            .map(|m| bits(m).map(PointId).collect())
            .collect();
        Connectivity { is_connected: components.len() == 1, components }
    }

    pub fn is_connected(&self) -> bool {
        self.reach(self.full_mask().trailing_zeros() as usize, self.full_mask()) == self.full_mask()
    }

    /// Points reachable from `start` without leaving `within`.
    pub(crate) fn reach(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            let fresh = self.nbrs[p] & within & !seen;
            seen |= fresh;
            queue.extend(bits(fresh));
        }
        seen
    }

    /// Whether the subset `mask` induces a connected subimage. The empty set counts as connected.
    pub fn is_connected_subset(&self, mask: u64) -> bool {
        mask == 0 || self.reach(mask.trailing_zeros() as usize, mask) == mask
    }

    /// Components of the subimage induced by `within`, ordered by smallest member.
    pub(crate) fn component_masks(&self, within: u64) -> Vec<u64> {
        let mut left = within;
        let mut out = Vec::new();
        while left != 0 {
            let comp = self.reach(left.trailing_zeros() as usize, within);
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// A κ-path: consecutive entries equal or adjacent.
    pub fn is_path(&self, seq: &[PointId]) -> Result<bool> {
        if seq.is_empty() {
            return Err(Error::Precondition("a path needs at least one point".into()));
        }
        for &p in seq {
            self.check_point(p)?;
        }
        Ok(seq.windows(2).all(|w| self.is_close(w[0].0, w[1].0)))
    }

    /// Subimage induced on `subset`, keeping the original relative order.
    pub fn induced(&self, subset: &[PointId]) -> Result<DigitalImage> {
        let mut mask = 0u64;
        for &p in subset {
            mask |= 1 << self.check_point(p)?;
        }
        if mask == 0 {
            return Err(Error::Precondition("induced subimage needs a non-empty subset".into()));
        }
        let keep: Vec<usize> = bits(mask).collect();
        let mut pos = [usize::MAX; MAX_POINTS];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let nbrs = keep
            .iter()
            .map(|&old| bits(self.nbrs[old] & mask).fold(0u64, |m, q| m | 1 << pos[q]))
            .collect();
        let lattice = self.lattice.as_ref().map(|l| LatticeSpec {
            dim: l.dim,
            t: l.t,
            points: keep.iter().map(|&i| l.points[i].clone()).collect(),
        });
        Ok(DigitalImage { name: None, nbrs, lattice })
    }

    /// Relabel points: point `i` of `self` becomes point `perm[i]` of the result.
    pub fn relabeled(&self, perm: &[usize]) -> Result<DigitalImage> {
        let n = self.size();
        let mut inverse = vec![usize::MAX; n];
        if perm.len() != n {
            return Err(Error::Precondition(format!(
                "permutation has length {}, image has {n} points",
                perm.len()
            )));
        }
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inverse[p] != usize::MAX {
                return Err(Error::Precondition("relabeling is not a permutation".into()));
            }
            inverse[p] = i;
        }
        let nbrs = inverse
            .iter()
            .map(|&old| bits(self.nbrs[old]).fold(0u64, |m, q| m | 1 << perm[q]))
            .collect();
        let lattice = self.lattice.as_ref().map(|l| LatticeSpec {
            dim: l.dim,
            t: l.t,
            points: inverse.iter().map(|&old| l.points[old].clone()).collect(),
        });
        Ok(DigitalImage { name: self.name.clone(), nbrs, lattice })
    }

    /// Index of the lattice point with the given coordinates.
    pub fn point_at(&self, coords: &[i64]) -> Option<PointId> {
        let l = self.lattice.as_ref()?;
        l.points.iter().position(|p| p == coords).map(PointId)
    }

    pub fn to_description(&self) -> ImageDescription {
        match &self.lattice {
            Some(l) => ImageDescription::Lattice {
                name: self.name.clone(),
                dim: l.dim,
                t: l.t,
                points: l.points.clone(),
            },
            None => ImageDescription::Graph {
                name: self.name.clone(),
                size: self.size(),
                edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_description()).expect("image description serializes")
    }

    pub fn from_json(text: &str) -> Result<DigitalImage> {
        let desc: ImageDescription = serde_json::from_str(text)?;
        desc.build()
    }
}

/// Iterate over set bit positions, ascending.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// On-disk image format.
///
/// `{"name": str?, "kind": "lattice", "dim": int, "t": int, "points": [[int,...],...]}`
/// or `{"name": str?, "kind": "graph", "size": int, "edges": [[int,int],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ImageDescription {
    Lattice {
        #[serde(default)]
        name: Option<String>,
        dim: usize,
        t: usize,
        points: Vec<Vec<i64>>,
    },
    Graph {
        #[serde(default)]
        name: Option<String>,
        size: usize,
        edges: Vec<[usize; 2]>,
    },
}

impl ImageDescription {
    pub fn build(self) -> Result<DigitalImage> {
        match self {
            ImageDescription::Lattice { name, dim, t, points } => {
                let img = DigitalImage::from_lattice(LatticeSpec { dim, t, points })?;
                Ok(DigitalImage { name, ..img })
            }
            ImageDescription::Graph { name, size, edges } => {
                let edges: Vec<(usize, usize)> = edges.into_iter().map(|[a, b]| (a, b)).collect();
                let img = DigitalImage::from_graph(size, &edges)?;
                Ok(DigitalImage { name, ..img })
            }
        }
    }
}

// Hand-written so that `name` precedes `kind` in the output.
impl Serialize for ImageDescription {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        match self {
            ImageDescription::Lattice { name, dim, t, points } => {
                if let Some(name) = name {
                    m.serialize_entry("name", name)?;
                }
                m.serialize_entry("kind", "lattice")?;
                m.serialize_entry("dim", dim)?;
                m.serialize_entry("t", t)?;
                m.serialize_entry("points", points)?;
            }
            ImageDescription::Graph { name, size, edges } => {
                if let Some(name) = name {
                    m.serialize_entry("name", name)?;
                }
                m.serialize_entry("kind", "graph")?;
                m.serialize_entry("size", size)?;
                m.serialize_entry("edges", edges)?;
            }
        }
        m.end()
    }
}

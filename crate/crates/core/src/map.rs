//! Maps between digital images and the point sets they determine.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{bits, DigitalImage, ImageDescription, PointId};

/// Largest source accepted by [`continuity_oracle`].
pub const ORACLE_LIMIT: usize = 12;

/// A total assignment from the points of `source` to the points of `target`.
///
/// Continuity is a predicate ([`is_continuous`]), not a construction
/// requirement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitalMap {
    source: Arc<DigitalImage>,
    target: Arc<DigitalImage>,
    assign: Vec<usize>,
}

impl DigitalMap {
    pub fn new(source: Arc<DigitalImage>, target: Arc<DigitalImage>, assign: Vec<usize>) -> Result<Self> {
        if assign.len() != source.size() {
            return Err(Error::InvalidMap(format!(
                "assignment has {} entries, source has {} points",
                assign.len(),
                source.size()
            )));
        }
        if let Some(&bad) = assign.iter().find(|&&v| v >= target.size()) {
            return Err(Error::InvalidPoint { index: bad, size: target.size() });
        }
        Ok(DigitalMap { source, target, assign })
    }

    /// Self-map constructor.
    pub fn on(image: &Arc<DigitalImage>, assign: Vec<usize>) -> Result<Self> {
        Self::new(image.clone(), image.clone(), assign)
    }

    pub(crate) fn from_parts_unchecked(source: Arc<DigitalImage>, target: Arc<DigitalImage>, assign: Vec<usize>) -> Self {
        debug_assert_eq!(assign.len(), source.size());
        DigitalMap { source, target, assign }
    }

    pub fn identity(image: &Arc<DigitalImage>) -> Self {
        DigitalMap { source: image.clone(), target: image.clone(), assign: (0..image.size()).collect() }
    }

    pub fn constant(source: &Arc<DigitalImage>, target: &Arc<DigitalImage>, value: PointId) -> Result<Self> {
        target.check_point(value)?;
        Ok(DigitalMap { source: source.clone(), target: target.clone(), assign: vec![value.0; source.size()] })
    }

    /// `i ↦ i + k (mod n)`; continuous exactly when consecutive indices are adjacent cyclically.
    pub fn rotation(image: &Arc<DigitalImage>, k: usize) -> Self {
        let n = image.size();
        DigitalMap { source: image.clone(), target: image.clone(), assign: (0..n).map(|i| (i + k) % n).collect() }
    }

    pub fn source(&self) -> &Arc<DigitalImage> {
        &self.source
    }

    pub fn target(&self) -> &Arc<DigitalImage> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assign
    }

    pub fn into_assignment(self) -> Vec<usize> {
        self.assign
    }

    #[inline]
    pub fn apply(&self, p: PointId) -> PointId {
        PointId(self.assign[p.0])
    }

    pub fn is_self_map(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target) || self.source == self.target
    }

    pub fn is_constant(&self) -> bool {
        self.assign.windows(2).all(|w| w[0] == w[1])
    }

    /// Image point set as a mask.
    pub fn range_mask(&self) -> u64 {
        self.assign.iter().fold(0u64, |m, &v| m | 1 << v)
    }

    pub fn fixed_mask(&self) -> u64 {
        self.assign.iter().enumerate().filter(|(i, &v)| *i == v).fold(0u64, |m, (i, _)| m | 1 << i)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MapDescription::from_map(self)).expect("map description serializes")
    }
}

fn same_images(f: &DigitalMap, g: &DigitalMap) -> Result<()> {
    if *f.source != *g.source || *f.target != *g.target {
        return Err(Error::ImageMismatch("maps must share source and target".into()));
    }
    Ok(())
}

fn require_self_map(f: &DigitalMap) -> Result<()> {
    if !f.is_self_map() {
        return Err(Error::ImageMismatch("operation requires a self-map".into()));
    }
    Ok(())
}

fn to_ids(mask: u64) -> Vec<PointId> {
    bits(mask).map(PointId).collect()
}

/// Adjacent source points go to equal or adjacent target points.
pub fn is_continuous(f: &DigitalMap) -> bool {
    let (x, y) = (&*f.source, &*f.target);
    (0..x.size()).all(|p| {
        let fp = f.assign[p];
        let ok = y.closed_mask(fp);
        bits(x.neighbor_mask(p)).all(|q| ok >> f.assign[q] & 1 == 1)
    })
}

/// Definitional continuity: every connected subset has a connected image.
///
/// Exponential in the source size; refuses sources above [`ORACLE_LIMIT`].
pub fn continuity_oracle(f: &DigitalMap) -> Result<bool> {
    let x = &*f.source;
    if x.size() > ORACLE_LIMIT {
        return Err(Error::TooLarge { size: x.size(), limit: ORACLE_LIMIT });
    }
    for subset in connected_subsets(x) {
        let img = bits(subset).fold(0u64, |m, p| m | 1 << f.assign[p]);
        if !f.target.is_connected_subset(img) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All non-empty connected subsets, each produced once. Sets are grown from
/// their minimum point, adding only larger points adjacent to the current set.
pub fn connected_subsets(x: &DigitalImage) -> Vec<u64> {
    let mut out = Vec::new();
    for seed in 0..x.size() {
        let allowed = x.full_mask() & !((1u64 << seed) - 1) & !(1u64 << seed);
        let mut seen: HashSet<u64> = HashSet::new();
        let mut stack = vec![1u64 << seed];
        seen.insert(1u64 << seed);
        while let Some(set) = stack.pop() {
            out.push(set);
            let frontier = bits(set).fold(0u64, |m, p| m | x.neighbor_mask(p)) & allowed & !set;
            for q in bits(frontier) {
                let next = set | 1 << q;
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
    out
}

/// `g ∘ f`.
pub fn compose(g: &DigitalMap, f: &DigitalMap) -> Result<DigitalMap> {
    if *f.target != *g.source {
        return Err(Error::ImageMismatch("target of f must equal source of g".into()));
    }
    let assign = f.assign.iter().map(|&v| g.assign[v]).collect();
    let out = DigitalMap { source: f.source.clone(), target: g.target.clone(), assign };
    if is_continuous(f) && is_continuous(g) && !is_continuous(&out) {
        return Err(Error::Invariant("composition of continuous maps is discontinuous".into()));
    }
    Ok(out)
}

pub fn fixed_point_set(f: &DigitalMap) -> Result<Vec<PointId>> {
    require_self_map(f)?;
    Ok(to_ids(f.fixed_mask()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoincidenceMode {
    /// `f1(x) = f2(x)`
    Coincidence,
    /// `f1(x) = f2(x) = x`
    CommonFixed,
    /// `f1(x) ≠ f2(x)`
    Complement,
}

pub(crate) fn coincidence_mask_raw(a: &[usize], b: &[usize]) -> u64 {
    a.iter().zip(b).enumerate().filter(|(_, (x, y))| x == y).fold(0u64, |m, (i, _)| m | 1 << i)
}

pub fn coincidence_mask(f1: &DigitalMap, f2: &DigitalMap, mode: CoincidenceMode) -> Result<u64> {
    same_images(f1, f2)?;
    let agree = coincidence_mask_raw(&f1.assign, &f2.assign);
    Ok(match mode {
        CoincidenceMode::Coincidence => agree,
        CoincidenceMode::Complement => f1.source.full_mask() & !agree,
        CoincidenceMode::CommonFixed => {
            require_self_map(f1)?;
            agree & f1.fixed_mask()
        }
    })
}

/// Sorted ascending.
pub fn coincidence_set(f1: &DigitalMap, f2: &DigitalMap, mode: CoincidenceMode) -> Result<Vec<PointId>> {
    coincidence_mask(f1, f2, mode).map(to_ids)
}

/// `f(x) ⇔ g(x)` for every `x`: the one-step homotopy relation.
pub fn pointwise_close(f: &DigitalMap, g: &DigitalMap) -> Result<bool> {
    same_images(f, g)?;
    Ok(pointwise_close_raw(&f.target, &f.assign, &g.assign))
}

#[inline]
pub(crate) fn pointwise_close_raw(target: &DigitalImage, a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(&p, &q)| target.is_close(p, q))
}

/// Image reference inside a map file: a catalog key or an inline image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageRef {
    Key(String),
    Inline(ImageDescription),
}

/// `{"image": str | inline image, "target": optional same, "assign": [int,...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDescription {
    pub image: ImageRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<ImageRef>,
    pub assign: Vec<usize>,
}

impl MapDescription {
    pub fn from_map(f: &DigitalMap) -> Self {
        let image = image_ref(&f.source);
        let target = (!f.is_self_map()).then(|| image_ref(&f.target));
        MapDescription { image, target, assign: f.assign.clone() }
    }

    /// Resolves image references with `resolve` (catalog lookup for keys).
    pub fn build(self, resolve: impl Fn(&str) -> Result<Arc<DigitalImage>>) -> Result<DigitalMap> {
        let load = |r: ImageRef| -> Result<Arc<DigitalImage>> {
            match r {
                ImageRef::Key(k) => resolve(&k),
                ImageRef::Inline(d) => Ok(Arc::new(d.build()?)),
            }
        };
        let source = load(self.image)?;
        let target = match self.target {
            Some(t) => load(t)?,
            None => source.clone(),
        };
        DigitalMap::new(source, target, self.assign)
    }
}

fn image_ref(img: &DigitalImage) -> ImageRef {
    match img.name() {
        Some(name) if crate::catalog::is_catalog_key(name) => ImageRef::Key(name.to_string()),
        _ => ImageRef::Inline(img.to_description()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::digital_interval;

    fn c5() -> Arc<DigitalImage> {
        Arc::new(DigitalImage::from_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap())
    }

    #[test]
    fn identity_and_constant_are_continuous() {
        let x = c5();
        assert!(is_continuous(&DigitalMap::identity(&x)));
        assert!(is_continuous(&DigitalMap::constant(&x, &x, PointId(2)).unwrap()));
    }

    #[test]
    fn c5_moving_one_point_across() {
        // cycle 1-2-3-4-5 with 2 ↦ 4, zero-based: 1 ↦ 3
        let x = c5();
        let f = DigitalMap::on(&x, vec![0, 3, 2, 3, 4]).unwrap();
        assert!(!is_continuous(&f));
        assert!(!continuity_oracle(&f).unwrap());
    }

    #[test]
    fn oracle_agrees_on_three_point_interval() {
        let x = Arc::new(digital_interval(0, 2).unwrap());
        let mut continuous = 0;
        for code in 0..27usize {
            let assign = vec![code % 3, code / 3 % 3, code / 9];
            let f = DigitalMap::on(&x, assign).unwrap();
            assert_eq!(is_continuous(&f), continuity_oracle(&f).unwrap());
            continuous += usize::from(is_continuous(&f));
        }
        assert_eq!(continuous, 17);
    }

    #[test]
    fn oracle_refuses_large_images() {
        let x = Arc::new(digital_interval(0, 12).unwrap());
        assert!(matches!(continuity_oracle(&DigitalMap::identity(&x)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn connected_subsets_of_path() {
        // a path on n points has n(n+1)/2 connected subsets (its intervals)
        let x = digital_interval(0, 5).unwrap();
        assert_eq!(connected_subsets(&x).len(), 21);
    }

    #[test]
    fn rotations_compose() {
        let x = c5();
        let r1 = DigitalMap::rotation(&x, 1);
        assert_eq!(compose(&r1, &r1).unwrap(), DigitalMap::rotation(&x, 2));
        let id = DigitalMap::identity(&x);
        assert_eq!(compose(&id, &r1).unwrap(), r1);
    }

    #[test]
    fn compose_mismatch() {
        let x = c5();
        let y = Arc::new(digital_interval(0, 1).unwrap());
        assert!(compose(&DigitalMap::identity(&x), &DigitalMap::identity(&y)).is_err());
    }

    #[test]
    fn fixed_sets() {
        let x = c5();
        assert_eq!(fixed_point_set(&DigitalMap::identity(&x)).unwrap().len(), 5);
        let c = DigitalMap::constant(&x, &x, PointId(3)).unwrap();
        assert_eq!(fixed_point_set(&c).unwrap(), vec![PointId(3)]);
        assert!(fixed_point_set(&DigitalMap::rotation(&x, 1)).unwrap().is_empty());
    }

    #[test]
    fn coincidence_modes() {
        let x = c5();
        let id = DigitalMap::identity(&x);
        let c = DigitalMap::constant(&x, &x, PointId(0)).unwrap();
        assert_eq!(coincidence_set(&id, &c, CoincidenceMode::Coincidence).unwrap(), vec![PointId(0)]);
        let r = DigitalMap::rotation(&x, 2);
        assert_eq!(
            coincidence_set(&r, &r, CoincidenceMode::CommonFixed).unwrap(),
            fixed_point_set(&r).unwrap()
        );
        let c4 = DigitalMap::constant(&x, &x, PointId(4)).unwrap();
        assert_eq!(coincidence_set(&c, &c4, CoincidenceMode::Complement).unwrap().len(), 5);
    }

    #[test]
    fn one_step_closeness() {
        let x = c5();
        let id = DigitalMap::identity(&x);
        assert!(pointwise_close(&id, &DigitalMap::rotation(&x, 1)).unwrap());
        assert!(pointwise_close(&id, &id).unwrap());
        assert!(!pointwise_close(&id, &DigitalMap::rotation(&x, 2)).unwrap());
    }

    #[test]
    fn map_json_round_trip() {
        let x = Arc::new(digital_interval(0, 2).unwrap());
        let f = DigitalMap::on(&x, vec![0, 1, 1]).unwrap();
        let text = f.to_json();
        assert_eq!(text, r#"{"image":"interval:0:2","assign":[0,1,1]}"#);
        let desc: MapDescription = serde_json::from_str(&text).unwrap();
        let back = desc.build(crate::catalog::load_key).unwrap();
        assert_eq!(back, f);
    }
}

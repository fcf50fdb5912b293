use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::FoldMapError;

/// Region of the target sphere cut along the fold images: `0` is the
/// unbounded region, `c > 0` is the part of the disk `D_c` outside the disks
/// nested in it.
pub type RegionId = usize;

/// Index of a domain piece, a component of the source minus the folds.
pub type PieceId = usize;

/// Which side of a fold image carries the two extra sheets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FoldFlag {
    /// The fold maps outward: the fiber is smaller inside the disk.
    Inner,
    /// The fold maps inward: the fiber is larger inside the disk.
    Outer,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleSpec {
    pub id: usize,
    #[serde(default)]
    pub parent: Option<usize>,
    #[serde(default)]
    pub rho: Option<usize>,
    pub flag: FoldFlag,
}

/// JSON description of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ArrangementSpec {
    /// `d + 1` disjoint disks, each sent onto its own exterior.
    Standard {
        d: usize,
        #[serde(default)]
        basepoint: Option<RegionId>,
    },
    Nested(NestedSpec),
}

// Internally tagged enums buffer their content, which loses the integer
// keys of the fiber maps; dispatch on `kind` by hand instead.
impl<'de> Deserialize<'de> for ArrangementSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;

        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct StandardWire {
            #[allow(dead_code)]
            kind: String,
            d: usize,
            #[serde(default)]
            basepoint: Option<RegionId>,
        }

        let mut value = serde_json::Value::deserialize(de)?;
        let kind = value
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| D::Error::missing_field("kind"))?
            .to_string();
        match kind.as_str() {
            "standard" => {
                let w: StandardWire = serde_json::from_value(value).map_err(D::Error::custom)?;
                Ok(ArrangementSpec::Standard {
                    d: w.d,
                    basepoint: w.basepoint,
                })
            }
            "nested" => {
                value.as_object_mut().expect("object").remove("kind");
                serde_json::from_value(value)
                    .map(ArrangementSpec::Nested)
                    .map_err(D::Error::custom)
            }
            other => Err(D::Error::unknown_variant(other, &["standard", "nested"])),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NestedSpec {
    pub circles: Vec<CircleSpec>,
    pub fibers: BTreeMap<RegionId, usize>,
    /// Sheet names over each region, in frame order. Propagated from the
    /// basepoint when absent.
    #[serde(default)]
    pub sheets: Option<BTreeMap<RegionId, Vec<String>>>,
    /// The two sheets that meet at each fold, where the default choice is
    /// not wanted.
    #[serde(default)]
    pub folds: BTreeMap<usize, [String; 2]>,
    pub basepoint: RegionId,
    pub degree: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelKind {
    Standard { d: usize },
    Nested,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Circle {
    parent: RegionId,
    flag: FoldFlag,
    rho: Option<usize>,
}

/// A validated fold-map model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskArrangement {
    kind: ModelKind,
    circles: BTreeMap<usize, Circle>,
    fibers: BTreeMap<RegionId, Vec<PieceId>>,
    piece_names: Vec<String>,
    piece_signs: Vec<i64>,
    folds: BTreeMap<usize, (PieceId, PieceId)>,
    basepoint: RegionId,
    degree: i64,
}

impl DiskArrangement {
    pub fn from_spec(spec: &ArrangementSpec) -> Result<Self, FoldMapError> {
        match spec {
            ArrangementSpec::Standard { d, basepoint } => {
                let mut arr = Self::standard(*d)?;
                if let Some(b) = basepoint {
                    if !arr.is_region(*b) {
                        return Err(FoldMapError::UnknownRegion(*b));
                    }
                    arr.basepoint = *b;
                }
                Ok(arr)
            }
            ArrangementSpec::Nested(n) => validate_nested(n),
        }
    }

    pub fn from_json(json: &str) -> Result<Self, FoldMapError> {
        let spec: ArrangementSpec =
            serde_json::from_str(json).map_err(|e| FoldMapError::Schema(e.to_string()))?;
        Self::from_spec(&spec)
    }

    /// The degree-`d` model: disks `X₀…X_d` bounded by circles `1…d+1`
    /// (circle `k+1` bounds `X_k`), all folds inner. The pieces are `e`, the
    /// exterior of the disks, and `x0…xd`. The basepoint is in `X₁`.
    pub fn standard(d: usize) -> Result<Self, FoldMapError> {
        if d == 0 {
            return Err(FoldMapError::Schema("standard model needs d >= 1".into()));
        }
        let disks = d + 1;
        let circles = (1..=disks)
            .map(|c| {
                (
                    c,
                    Circle {
                        parent: 0,
                        flag: FoldFlag::Inner,
                        rho: None,
                    },
                )
            })
            .collect();
        // Piece 0 is `e`, piece k+1 is `x_k`.
        let mut piece_names = vec!["e".to_string()];
        piece_names.extend((0..disks).map(|k| format!("x{k}")));
        let mut piece_signs = vec![-1];
        piece_signs.extend(std::iter::repeat_n(1, disks));
        let mut fibers = BTreeMap::new();
        fibers.insert(0, (0..=disks).collect::<Vec<_>>());
        for k in 0..disks {
            // Over X_k the sheets run cyclically x_{k+1}, …, x_{k+d}.
            let order = (1..=d).map(|s| (k + s) % disks + 1).collect();
            fibers.insert(k + 1, order);
        }
        let folds = (0..disks).map(|k| (k + 1, (0, k + 1))).collect();
        Ok(DiskArrangement {
            kind: ModelKind::Standard { d },
            circles,
            fibers,
            piece_names,
            piece_signs,
            folds,
            basepoint: 2,
            degree: d as i64,
        })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn basepoint(&self) -> RegionId {
        self.basepoint
    }

    /// The same model with another basepoint region.
    pub fn with_basepoint(&self, region: RegionId) -> Result<Self, FoldMapError> {
        if !self.is_region(region) {
            return Err(FoldMapError::UnknownRegion(region));
        }
        let mut out = self.clone();
        out.basepoint = region;
        Ok(out)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn circle_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.circles.keys().copied()
    }

    pub fn regions(&self) -> impl Iterator<Item = RegionId> + '_ {
        std::iter::once(0).chain(self.circles.keys().copied())
    }

    pub fn is_region(&self, r: RegionId) -> bool {
        r == 0 || self.circles.contains_key(&r)
    }

    pub fn parent_region(&self, circle: usize) -> Option<RegionId> {
        self.circles.get(&circle).map(|c| c.parent)
    }

    pub fn flag(&self, circle: usize) -> Option<FoldFlag> {
        self.circles.get(&circle).map(|c| c.flag)
    }

    pub fn rho(&self, circle: usize) -> Option<usize> {
        self.circles.get(&circle).and_then(|c| c.rho)
    }

    /// Sheets over a region, in frame order.
    pub fn fiber(&self, region: RegionId) -> &[PieceId] {
        &self.fibers[&region]
    }

    pub fn piece_count(&self) -> usize {
        self.piece_names.len()
    }

    pub fn piece_name(&self, p: PieceId) -> &str {
        &self.piece_names[p]
    }

    pub fn piece_by_name(&self, name: &str) -> Option<PieceId> {
        self.piece_names.iter().position(|n| n == name)
    }

    /// Local degree of the piece: `+1` or `-1`.
    pub fn piece_sign(&self, p: PieceId) -> i64 {
        self.piece_signs[p]
    }

    pub fn fold_pair(&self, circle: usize) -> (PieceId, PieceId) {
        self.folds[&circle]
    }

    /// Regions making up the closed disk `D_c`.
    pub fn disk_regions(&self, circle: usize) -> BTreeSet<RegionId> {
        self.regions()
            .filter(|&r| r != 0 && self.is_inside(r, circle))
            .collect()
    }

    /// Whether region `r` lies in `D_c`.
    pub fn is_inside(&self, mut r: RegionId, circle: usize) -> bool {
        while r != 0 {
            if r == circle {
                return true;
            }
            r = self.circles[&r].parent;
        }
        false
    }

    /// The regions covered by a piece.
    pub fn piece_image(&self, p: PieceId) -> BTreeSet<RegionId> {
        self.fibers
            .iter()
            .filter(|(_, f)| f.contains(&p))
            .map(|(&r, _)| r)
            .collect()
    }

    /// Pieces on the far side of the fold over `circle` as seen from the
    /// sheet over the basepoint. Needs a single sheet over the basepoint.
    pub fn ball_pieces(&self, circle: usize) -> Result<BTreeSet<PieceId>, FoldMapError> {
        let base = self.single_base_piece()?;
        let (p, q) = self.folds[&circle];
        let mut adjacency: Vec<Vec<PieceId>> = vec![Vec::new(); self.piece_count()];
        for (&c, &(a, b)) in &self.folds {
            if c != circle {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        let near = reachable(&adjacency, base);
        let far_root = if near.contains(&p) { q } else { p };
        Ok(reachable(&adjacency, far_root))
    }

    fn single_base_piece(&self) -> Result<PieceId, FoldMapError> {
        match self.fibers[&self.basepoint].as_slice() {
            [p] => Ok(*p),
            other => Err(FoldMapError::NotSingleSheeted(other.len())),
        }
    }

    /// Crossing `circle` from `region`: the region on the other side.
    pub fn cross(&self, region: RegionId, circle: usize, direction: Direction) -> Option<RegionId> {
        let c = self.circles.get(&circle)?;
        match direction {
            Direction::In if region == c.parent => Some(circle),
            Direction::Out if region == circle => Some(c.parent),
            _ => None,
        }
    }
}

fn reachable(adjacency: &[Vec<PieceId>], start: PieceId) -> BTreeSet<PieceId> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

fn validate_nested(spec: &NestedSpec) -> Result<DiskArrangement, FoldMapError> {
    let mut circles: BTreeMap<usize, Circle> = BTreeMap::new();
    for c in &spec.circles {
        if c.id == 0 {
            return Err(FoldMapError::Schema("circle ids start at 1".into()));
        }
        let circle = Circle {
            parent: c.parent.unwrap_or(0),
            flag: c.flag,
            rho: c.rho,
        };
        if circles.insert(c.id, circle).is_some() {
            return Err(FoldMapError::DuplicateCircle(c.id));
        }
    }
    for (&id, c) in &circles {
        if c.parent != 0 && !circles.contains_key(&c.parent) {
            return Err(FoldMapError::UnknownParent {
                circle: id,
                parent: c.parent,
            });
        }
        let mut r = c.parent;
        let mut steps = 0;
        while r != 0 {
            if r == id || steps > circles.len() {
                return Err(FoldMapError::NestingCycle(id));
            }
            r = circles[&r].parent;
            steps += 1;
        }
    }
    let regions: Vec<RegionId> = std::iter::once(0).chain(circles.keys().copied()).collect();
    if !regions.contains(&spec.basepoint) {
        return Err(FoldMapError::UnknownRegion(spec.basepoint));
    }
    for &r in &regions {
        if !spec.fibers.contains_key(&r) {
            return Err(FoldMapError::MissingFiber(r));
        }
    }
    if let Some(&r) = spec.fibers.keys().find(|r| !regions.contains(r)) {
        return Err(FoldMapError::UnknownRegion(r));
    }
    for (&id, c) in &circles {
        let inside = spec.fibers[&id];
        let outside = spec.fibers[&c.parent];
        let ok = match c.flag {
            FoldFlag::Inner => outside == inside + 2,
            FoldFlag::Outer => inside == outside + 2,
        };
        if !ok {
            return Err(FoldMapError::FiberJump {
                circle: id,
                inside,
                outside,
                flag: c.flag,
            });
        }
    }
    // Rho data is checked for idempotence and containment before anything
    // is derived from the sheets.
    for (&id, c) in &circles {
        if let Some(r) = c.rho {
            let Some(target) = circles.get(&r) else {
                return Err(FoldMapError::UnknownCircle(r));
            };
            if target.rho.is_some_and(|rr| rr != r) {
                return Err(FoldMapError::RhoNotIdempotent(id));
            }
            let mut a = id;
            while a != r && a != 0 {
                a = circles[&a].parent;
            }
            if a != r {
                return Err(FoldMapError::RhoNotContaining { circle: id, rho: r });
            }
        }
    }

    let named_sheets = match &spec.sheets {
        Some(s) => s.clone(),
        None => propagate_sheets(spec, &circles)?,
    };
    let mut piece_names: Vec<String> = Vec::new();
    let mut fibers: BTreeMap<RegionId, Vec<PieceId>> = BTreeMap::new();
    for &r in &regions {
        let Some(names) = named_sheets.get(&r) else {
            return Err(FoldMapError::MissingFiber(r));
        };
        if names.len() != spec.fibers[&r] {
            return Err(FoldMapError::SheetCount {
                region: r,
                declared: spec.fibers[&r],
                listed: names.len(),
            });
        }
        let mut ids = Vec::with_capacity(names.len());
        for n in names {
            let id = match piece_names.iter().position(|m| m == n) {
                Some(i) => i,
                None => {
                    piece_names.push(n.clone());
                    piece_names.len() - 1
                }
            };
            if ids.contains(&id) {
                return Err(FoldMapError::RepeatedSheet {
                    region: r,
                    sheet: n.clone(),
                });
            }
            ids.push(id);
        }
        fibers.insert(r, ids);
    }

    let mut folds = BTreeMap::new();
    for (&id, c) in &circles {
        let (large, small) = match c.flag {
            FoldFlag::Inner => (c.parent, id),
            FoldFlag::Outer => (id, c.parent),
        };
        let small_set: BTreeSet<PieceId> = fibers[&small].iter().copied().collect();
        let large_set: BTreeSet<PieceId> = fibers[&large].iter().copied().collect();
        let extra: Vec<PieceId> = large_set.difference(&small_set).copied().collect();
        if !small_set.is_subset(&large_set) || extra.len() != 2 {
            return Err(FoldMapError::SheetJump(id));
        }
        if let Some([a, b]) = spec.folds.get(&id) {
            let named: BTreeSet<&str> = [a.as_str(), b.as_str()].into();
            let found: BTreeSet<&str> = extra.iter().map(|&p| piece_names[p].as_str()).collect();
            if named != found {
                return Err(FoldMapError::SheetJump(id));
            }
        }
        folds.insert(id, (extra[0], extra[1]));
    }
    if let Some(&c) = spec.folds.keys().find(|c| !circles.contains_key(c)) {
        return Err(FoldMapError::UnknownCircle(c));
    }

    let piece_signs = orient(&piece_names, &folds, &fibers, spec.basepoint, spec.degree)?;

    let mut arr = DiskArrangement {
        kind: ModelKind::Nested,
        circles,
        fibers,
        piece_names,
        piece_signs,
        folds,
        basepoint: spec.basepoint,
        degree: spec.degree,
    };
    if arr.fibers[&arr.basepoint].len() == 1 {
        derive_rho(&mut arr)?;
    } else if let Some(c) = arr.circles.iter().find(|(_, c)| c.rho.is_some()) {
        return Err(FoldMapError::RhoUndefined(*c.0));
    }
    Ok(arr)
}

/// Names the sheets region by region outward from the basepoint. A fold
/// that adds sheets introduces two fresh ones; a fold that removes sheets
/// takes the two listed last (the outermost pair) unless `folds` says
/// otherwise.
fn propagate_sheets(
    spec: &NestedSpec,
    circles: &BTreeMap<usize, Circle>,
) -> Result<BTreeMap<RegionId, Vec<String>>, FoldMapError> {
    let mut fresh = 0usize;
    let mut next_name = || {
        fresh += 1;
        format!("s{fresh}")
    };
    let mut out: BTreeMap<RegionId, Vec<String>> = BTreeMap::new();
    let base: Vec<String> = (0..spec.fibers[&spec.basepoint]).map(|_| next_name()).collect();
    out.insert(spec.basepoint, base);
    let mut queue = VecDeque::from([spec.basepoint]);
    while let Some(r) = queue.pop_front() {
        let neighbours: Vec<(usize, RegionId)> = circles
            .iter()
            .filter_map(|(&id, c)| {
                if c.parent == r {
                    Some((id, id))
                } else if id == r {
                    Some((id, c.parent))
                } else {
                    None
                }
            })
            .collect();
        for (circle, next) in neighbours {
            if out.contains_key(&next) {
                continue;
            }
            let here = out[&r].clone();
            let sheets = if spec.fibers[&next] > spec.fibers[&r] {
                let pair = match spec.folds.get(&circle) {
                    Some([a, b]) => [a.clone(), b.clone()],
                    None => [next_name(), next_name()],
                };
                let mut s = here;
                s.extend(pair);
                s
            } else {
                let pair: Vec<String> = match spec.folds.get(&circle) {
                    Some([a, b]) => vec![a.clone(), b.clone()],
                    None => here[here.len().saturating_sub(2)..].to_vec(),
                };
                if pair.len() != 2 || pair.iter().any(|p| !here.contains(p)) {
                    return Err(FoldMapError::SheetJump(circle));
                }
                here.into_iter().filter(|s| !pair.contains(s)).collect()
            };
            out.insert(next, sheets);
            queue.push_back(next);
        }
    }
    Ok(out)
}

/// Signs of the pieces: adjacent pieces across a fold have opposite signs,
/// and the sum over every fiber is the degree.
fn orient(
    piece_names: &[String],
    folds: &BTreeMap<usize, (PieceId, PieceId)>,
    fibers: &BTreeMap<RegionId, Vec<PieceId>>,
    basepoint: RegionId,
    degree: i64,
) -> Result<Vec<i64>, FoldMapError> {
    let n = piece_names.len();
    if n == 0 {
        return Err(FoldMapError::Schema("no sheets anywhere".into()));
    }
    let mut adjacency: Vec<Vec<PieceId>> = vec![Vec::new(); n];
    for &(a, b) in folds.values() {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut sign = vec![0i64; n];
    sign[0] = 1;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if sign[w] == 0 {
                sign[w] = -sign[v];
                queue.push_back(w);
            } else if sign[w] == sign[v] {
                return Err(FoldMapError::PieceGraphNotBipartite);
            }
        }
    }
    if sign.contains(&0) {
        return Err(FoldMapError::PieceGraphDisconnected);
    }
    let total = |s: &[i64], r: RegionId| fibers[&r].iter().map(|&p| s[p]).sum::<i64>();
    let base_total = total(&sign, basepoint);
    if base_total == -degree && degree != 0 {
        sign.iter_mut().for_each(|s| *s = -*s);
    } else if base_total != degree {
        return Err(FoldMapError::DegreeMismatch {
            declared: degree,
            computed: base_total.abs(),
        });
    }
    for &r in fibers.keys() {
        if total(&sign, r) != degree {
            return Err(FoldMapError::DegreeMismatch {
                declared: degree,
                computed: total(&sign, r),
            });
        }
    }
    Ok(sign)
}

/// Fills in or checks `ρ`: the fold over `S_i` bounds the ball of pieces
/// away from the base sheet, whose image must be a disk `D_ρ(i)`.
fn derive_rho(arr: &mut DiskArrangement) -> Result<(), FoldMapError> {
    if arr.folds.len() + 1 != arr.piece_count() {
        return Err(FoldMapError::Schema(
            "with a single sheet over the basepoint the pieces must form a tree".into(),
        ));
    }
    let ids: Vec<usize> = arr.circles.keys().copied().collect();
    let mut derived = BTreeMap::new();
    for &c in &ids {
        let image: BTreeSet<RegionId> = arr
            .ball_pieces(c)?
            .into_iter()
            .flat_map(|p| arr.piece_image(p))
            .collect();
        let target = ids
            .iter()
            .copied()
            .find(|&j| arr.disk_regions(j) == image && arr.is_inside(c, j));
        match (arr.circles[&c].rho, target) {
            (Some(declared), Some(t)) if declared != t => {
                return Err(FoldMapError::RhoMismatch {
                    circle: c,
                    declared,
                    derived: t,
                })
            }
            (Some(_), None) => return Err(FoldMapError::RhoUndefined(c)),
            _ => {}
        }
        if let Some(t) = target {
            derived.insert(c, t);
        }
    }
    for (&c, &t) in &derived {
        if derived.get(&t).is_some_and(|&tt| tt != t) {
            return Err(FoldMapError::RhoNotIdempotent(c));
        }
        arr.circles.get_mut(&c).expect("known circle").rho = Some(t);
    }
    Ok(())
}

/// A transverse path given by the fold images it crosses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingWord {
    pub base: RegionId,
    pub crossings: Vec<Crossing>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub circle: usize,
    pub direction: Direction,
}

impl CrossingWord {
    pub fn constant(base: RegionId) -> Self {
        CrossingWord {
            base,
            crossings: Vec::new(),
        }
    }

    pub fn from_json(json: &str) -> Result<Self, FoldMapError> {
        serde_json::from_str(json).map_err(|e| FoldMapError::Schema(e.to_string()))
    }

    /// Regions visited, starting with `base`.
    pub fn walk(&self, arr: &DiskArrangement) -> Result<Vec<RegionId>, FoldMapError> {
        if !arr.is_region(self.base) {
            return Err(FoldMapError::UnknownRegion(self.base));
        }
        let mut regions = vec![self.base];
        for (position, c) in self.crossings.iter().enumerate() {
            let here = *regions.last().expect("nonempty");
            let next = arr
                .cross(here, c.circle, c.direction)
                .ok_or(FoldMapError::BadCrossing {
                    position,
                    circle: c.circle,
                    region: here,
                })?;
            regions.push(next);
        }
        Ok(regions)
    }

    pub fn end(&self, arr: &DiskArrangement) -> Result<RegionId, FoldMapError> {
        Ok(*self.walk(arr)?.last().expect("nonempty"))
    }

    /// Checks that the word is a loop at `arr`'s basepoint.
    pub fn check_loop(&self, arr: &DiskArrangement) -> Result<(), FoldMapError> {
        if self.base != arr.basepoint() {
            return Err(FoldMapError::WrongBase {
                expected: arr.basepoint(),
                found: self.base,
            });
        }
        let end = self.end(arr)?;
        if end != self.base {
            return Err(FoldMapError::NotClosed {
                base: self.base,
                end,
            });
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &CrossingWord) -> CrossingWord {
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&other.crossings);
        CrossingWord {
            base: self.base,
            crossings,
        }
    }

    /// The reverse path, starting where `self` ends.
    pub fn reverse(&self, arr: &DiskArrangement) -> Result<CrossingWord, FoldMapError> {
        let end = self.end(arr)?;
        Ok(CrossingWord {
            base: end,
            crossings: self
                .crossings
                .iter()
                .rev()
                .map(|c| Crossing {
                    circle: c.circle,
                    direction: match c.direction {
                        Direction::In => Direction::Out,
                        Direction::Out => Direction::In,
                    },
                })
                .collect(),
        })
    }
}

/// In a standard model, the path from `from` that visits the disks `X_k`
/// listed in `disks` one after another and ends in `to`. Regions are given
/// as region ids; disks by their index `k`.
pub fn standard_path(from: RegionId, disks: &[usize], to: RegionId) -> CrossingWord {
    let mut crossings = Vec::new();
    let mut here = from;
    for target in disks.iter().map(|k| k + 1).chain(std::iter::once(to)) {
        if here == target {
            continue;
        }
        if here != 0 {
            crossings.push(Crossing {
                circle: here,
                direction: Direction::Out,
            });
        }
        if target != 0 {
            crossings.push(Crossing {
                circle: target,
                direction: Direction::In,
            });
        }
        here = target;
    }
    CrossingWord {
        base: from,
        crossings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_two() {
        let arr = DiskArrangement::standard(2).unwrap();
        assert_eq!(arr.fiber(arr.basepoint()).len(), 2);
        assert_eq!(arr.fiber(0).len(), 4);
        assert_eq!(arr.degree(), 2);
        for c in 1..=3 {
            let (p, q) = arr.fold_pair(c);
            assert_eq!(arr.piece_sign(p) + arr.piece_sign(q), 0);
        }
    }

    #[test]
    fn walk_rejects_inconsistent_crossing() {
        let arr = DiskArrangement::standard(2).unwrap();
        let bad = CrossingWord {
            base: 2,
            crossings: vec![Crossing {
                circle: 1,
                direction: Direction::In,
            }],
        };
        assert!(matches!(bad.walk(&arr), Err(FoldMapError::BadCrossing { .. })));
    }

    #[test]
    fn standard_path_skips_needless_moves() {
        let p = standard_path(2, &[], 2);
        assert!(p.crossings.is_empty());
        let p = standard_path(2, &[0, 2], 2);
        assert_eq!(p.crossings.len(), 6);
    }

    fn two_circle_spec(folds: BTreeMap<usize, [String; 2]>) -> NestedSpec {
        NestedSpec {
            circles: vec![
                CircleSpec {
                    id: 1,
                    parent: None,
                    rho: None,
                    flag: FoldFlag::Outer,
                },
                CircleSpec {
                    id: 2,
                    parent: Some(1),
                    rho: None,
                    flag: FoldFlag::Inner,
                },
            ],
            fibers: BTreeMap::from([(0, 1), (1, 3), (2, 1)]),
            sheets: None,
            folds,
            basepoint: 0,
            degree: 1,
        }
    }

    #[test]
    fn outermost_default_can_disconnect_the_source() {
        assert_eq!(
            validate_nested(&two_circle_spec(BTreeMap::new())),
            Err(FoldMapError::PieceGraphDisconnected)
        );
    }

    #[test]
    fn fold_override_and_derived_rho() {
        let folds = BTreeMap::from([(2, ["s1".to_string(), "s2".to_string()])]);
        let arr = validate_nested(&two_circle_spec(folds)).unwrap();
        assert_eq!(arr.fiber(2), &[arr.piece_by_name("s3").unwrap()]);
        assert_eq!(arr.rho(1), Some(1));
        assert_eq!(arr.rho(2), Some(1));
    }
}

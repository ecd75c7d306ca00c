//! The matroid data model: three interconvertible axiomatizations (flats,
//! independent sets, rank function), axiom validation, closure and rank
//! tables, and element classification.
//!
//! The canonical representation is the flat family; everything else is a
//! cache derived at construction. All values are immutable once built.

use std::collections::HashMap;

use thiserror::Error;

use crate::ground::{GroundSet, Subset, SubsetFamily};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum MatroidError {
    #[error("invalid flats (missing-top): {0}")]
    MissingTop(String),
    #[error("invalid flats (not-intersection-closed): {0}")]
    NotIntersectionClosed(String),
    #[error("invalid flats (partition-violated): {0}")]
    PartitionViolated(String),
    #[error("invalid independents (empty-family)")]
    EmptyFamily,
    #[error("invalid independents (not-downward-closed): {0}")]
    NotDownwardClosed(String),
    #[error("invalid independents (augmentation-violated): {0}")]
    AugmentationViolated(String),
    #[error("invalid rank (out-of-bounds): {0}")]
    RankOutOfBounds(String),
    #[error("invalid rank (non-monotone): {0}")]
    RankNonMonotone(String),
    #[error("invalid rank (non-submodular): {0}")]
    RankNonSubmodular(String),
    #[error("invalid rank (non-unit-increase): {0}")]
    RankNonUnitIncrease(String),
    #[error("rank table has {got} entries, ground needs {want}")]
    RankTableSize { got: usize, want: usize },
    #[error("family is not over the given ground set")]
    ForeignFamily,
    #[error("point must be a loop, {0:?} is not")]
    PointNotLoop(String),
    #[error("point label {0:?} not in ground set")]
    PointNotInGround(String),
}

/// A finite matroid on at most 16 elements.
///
/// Stored canonically as a flat family together with derived tables:
/// the full rank table, the closure table, independent sets and bases.
#[derive(Debug, Clone)]
pub struct Matroid {
    ground: GroundSet,
    flats: Vec<Subset>,
    flat_bitmap: Vec<bool>,
    rank_table: Vec<u8>,
    closure_table: Vec<u16>,
    independents: Vec<Subset>,
    bases: Vec<Subset>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.flats == other.flats
    }
}

impl Eq for Matroid {}

impl std::hash::Hash for Matroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ground.hash(state);
        self.flats.hash(state);
    }
}

/// Superset-intersection table: `g[X]` = intersection of all members ⊇ X,
/// or `u16::MAX` when no member contains X.
fn superset_meet_table(n: usize, members: &[Subset]) -> Vec<u16> {
    let size = 1usize << n;
    let mut g = vec![u16::MAX; size];
    for f in members {
        g[f.0 as usize] &= f.0;
    }
    for i in 0..n {
        let bit = 1usize << i;
        for x in 0..size {
            if x & bit == 0 {
                g[x] &= g[x | bit];
            }
        }
    }
    g
}

impl Matroid {
    /// Build a matroid from its flat family. Validates the three flat
    /// axioms: top present, closed under pairwise intersection, and the
    /// partition property for covers of each flat.
    pub fn from_flats(ground: GroundSet, flats: &SubsetFamily) -> Result<Matroid, MatroidError> {
        if flats.ground != ground {
            return Err(MatroidError::ForeignFamily);
        }
        let n = ground.len();
        let size = 1usize << n;
        let full = ground.full();
        if !flats.contains(full) {
            return Err(MatroidError::MissingTop(format!(
                "ground set {} is not closed",
                ground.render(full)
            )));
        }

        let mut flat_bitmap = vec![false; size];
        for f in flats.members() {
            flat_bitmap[f.0 as usize] = true;
        }

        // closure(X) = meet of all flats containing X; well-defined because
        // the top is present. Intersection-closure holds iff every such meet
        // is itself a flat.
        let g = superset_meet_table(n, flats.members());
        for x in 0..size {
            if !flat_bitmap[g[x] as usize] {
                // Find a concrete offending pair for the error message.
                for (i, a) in flats.members().iter().enumerate() {
                    for b in &flats.members()[i + 1..] {
                        let m = a.intersect(*b);
                        if !flat_bitmap[m.0 as usize] {
                            return Err(MatroidError::NotIntersectionClosed(format!(
                                "{} ∩ {} = {} is not a flat",
                                ground.render(*a),
                                ground.render(*b),
                                ground.render(m)
                            )));
                        }
                    }
                }
                return Err(MatroidError::NotIntersectionClosed(format!(
                    "no least flat over {}",
                    ground.render(Subset(x as u16))
                )));
            }
        }

        // Partition property: for each flat F the sets clos(F∪{x})∖F,
        // x ∉ F, must partition the complement of F. Equivalently, whenever
        // y ∈ clos(F∪{x}) the closures coincide.
        for f in flats.members() {
            for x in 0..n {
                if f.contains(x) {
                    continue;
                }
                let cx = Subset(g[f.with(x).0 as usize]);
                for y in 0..n {
                    if f.contains(y) || y == x || !cx.contains(y) {
                        continue;
                    }
                    let cy = Subset(g[f.with(y).0 as usize]);
                    if cy != cx {
                        return Err(MatroidError::PartitionViolated(format!(
                            "minimal flats over {} do not partition: {} covers {} but {} yields {}",
                            ground.render(*f),
                            ground.render(cx),
                            ground.label(y),
                            ground.label(y),
                            ground.render(cy)
                        )));
                    }
                }
            }
        }

        // Heights in the flat lattice via breadth-first search over covers;
        // the partition property makes the lattice graded, so depth = rank.
        let bottom = Subset(g[0]);
        let mut flat_rank: HashMap<u16, u8> = HashMap::new();
        flat_rank.insert(bottom.0, 0);
        let mut frontier = vec![bottom];
        while let Some(f) = frontier.pop() {
            let rf = flat_rank[&f.0];
            for x in 0..n {
                if f.contains(x) {
                    continue;
                }
                let c = g[f.with(x).0 as usize];
                if let std::collections::hash_map::Entry::Vacant(e) = flat_rank.entry(c) {
                    e.insert(rf + 1);
                    frontier.push(Subset(c));
                }
            }
        }

        let mut rank_table = vec![0u8; size];
        for x in 0..size {
            rank_table[x] = flat_rank[&g[x]];
        }
        Ok(Matroid::finalize(ground, rank_table))
    }

    /// Build a matroid from its independent sets. Validates: nonempty with
    /// ∅, downward closed, and independence augmentation.
    pub fn from_independents(
        ground: GroundSet,
        independents: &SubsetFamily,
    ) -> Result<Matroid, MatroidError> {
        if independents.ground != ground {
            return Err(MatroidError::ForeignFamily);
        }
        let n = ground.len();
        let size = 1usize << n;
        if independents.is_empty() {
            return Err(MatroidError::EmptyFamily);
        }

        let mut member = vec![false; size];
        for i in independents.members() {
            member[i.0 as usize] = true;
        }
        if !member[0] {
            return Err(MatroidError::NotDownwardClosed(
                "the empty set is not a member".into(),
            ));
        }
        for i in independents.members() {
            for x in i.iter() {
                if !member[i.without(x).0 as usize] {
                    return Err(MatroidError::NotDownwardClosed(format!(
                        "{} is a member but {} is not",
                        ground.render(*i),
                        ground.render(i.without(x))
                    )));
                }
            }
        }

        // r(X) = size of the largest member contained in X.
        let mut rank_table = vec![0u8; size];
        for x in 1..size {
            let s = Subset(x as u16);
            let mut r = if member[x] { s.len() as u8 } else { 0 };
            for e in s.iter() {
                r = r.max(rank_table[s.without(e).0 as usize]);
            }
            rank_table[x] = r;
        }

        // Augmentation fails iff some member I is maximal inside a set of
        // larger rank. The blocked set B(I) adjoins every element whose
        // addition leaves the family; a violating partner J ⊆ B(I) exists
        // iff r(B(I)) > |I|.
        for i in independents.members() {
            let mut blocked = *i;
            for e in 0..n {
                if !i.contains(e) && !member[i.with(e).0 as usize] {
                    blocked = blocked.with(e);
                }
            }
            if rank_table[blocked.0 as usize] as usize > i.len() {
                // Recover a concrete witness pair for the message.
                let mut j = Subset::EMPTY;
                for cand in independents.members() {
                    if cand.is_subset_of(blocked) && cand.len() > i.len() {
                        j = *cand;
                        break;
                    }
                }
                return Err(MatroidError::AugmentationViolated(format!(
                    "{} cannot be augmented from {}",
                    ground.render(*i),
                    ground.render(j)
                )));
            }
        }

        Ok(Matroid::finalize(ground, rank_table))
    }

    /// Build a matroid from a full rank table indexed by subset mask.
    /// Validates bounds, monotonicity, submodularity and unit increase.
    pub fn from_rank(ground: GroundSet, rank_table: &[u32]) -> Result<Matroid, MatroidError> {
        let n = ground.len();
        let size = 1usize << n;
        if rank_table.len() != size {
            return Err(MatroidError::RankTableSize {
                got: rank_table.len(),
                want: size,
            });
        }
        for x in 0..size {
            let s = Subset(x as u16);
            if rank_table[x] as usize > s.len() {
                return Err(MatroidError::RankOutOfBounds(format!(
                    "r({}) = {} exceeds {}",
                    ground.render(s),
                    rank_table[x],
                    s.len()
                )));
            }
        }
        for x in 0..size {
            let s = Subset(x as u16);
            for e in 0..n {
                if s.contains(e) {
                    continue;
                }
                let t = s.with(e);
                if rank_table[t.0 as usize] < rank_table[x] {
                    return Err(MatroidError::RankNonMonotone(format!(
                        "r({}) < r({})",
                        ground.render(t),
                        ground.render(s)
                    )));
                }
                if rank_table[t.0 as usize] > rank_table[x] + 1 {
                    return Err(MatroidError::RankNonUnitIncrease(format!(
                        "r({}) jumps from r({}) by more than one",
                        ground.render(t),
                        ground.render(s)
                    )));
                }
            }
        }
        // Local submodularity; together with the checks above it is
        // equivalent to the valuation axiom for all pairs.
        for x in 0..size {
            let s = Subset(x as u16);
            for a in 0..n {
                if s.contains(a) {
                    continue;
                }
                for b in (a + 1)..n {
                    if s.contains(b) {
                        continue;
                    }
                    let lhs = rank_table[s.with(a).with(b).0 as usize] + rank_table[x];
                    let rhs = rank_table[s.with(a).0 as usize] + rank_table[s.with(b).0 as usize];
                    if lhs > rhs {
                        return Err(MatroidError::RankNonSubmodular(format!(
                            "valuation fails for X = {} with {}, {}",
                            ground.render(s),
                            ground.label(a),
                            ground.label(b)
                        )));
                    }
                }
            }
        }
        let table: Vec<u8> = rank_table.iter().map(|&r| r as u8).collect();
        Ok(Matroid::finalize(ground, table))
    }

    /// Internal: derive every cache from a valid rank table.
    fn finalize(ground: GroundSet, rank_table: Vec<u8>) -> Matroid {
        let n = ground.len();
        let size = 1usize << n;
        let mut closure_table = vec![0u16; size];
        let mut flats = Vec::new();
        let mut flat_bitmap = vec![false; size];
        for x in 0..size {
            let s = Subset(x as u16);
            let mut c = s;
            for e in 0..n {
                if !s.contains(e) && rank_table[s.with(e).0 as usize] == rank_table[x] {
                    c = c.with(e);
                }
            }
            closure_table[x] = c.0;
            if c == s {
                flats.push(s);
                flat_bitmap[x] = true;
            }
        }
        flats.sort_by_key(|s| s.canon_key());
        let mut independents = Vec::new();
        for x in 0..size {
            let s = Subset(x as u16);
            if rank_table[x] as usize == s.len() {
                independents.push(s);
            }
        }
        independents.sort_by_key(|s| s.canon_key());
        let rank = rank_table[size - 1];
        let bases: Vec<Subset> = independents
            .iter()
            .copied()
            .filter(|s| s.len() == rank as usize)
            .collect();
        Matroid {
            ground,
            flats,
            flat_bitmap,
            rank_table,
            closure_table,
            independents,
            bases,
        }
    }

    /// Free matroid: every subset independent and closed.
    pub fn free(ground: GroundSet) -> Matroid {
        let size = 1usize << ground.len();
        let table: Vec<u8> = (0..size).map(|x| Subset(x as u16).len() as u8).collect();
        Matroid::finalize(ground, table)
    }

    /// Cofree matroid: the ground set is the only flat.
    pub fn cofree(ground: GroundSet) -> Matroid {
        let size = 1usize << ground.len();
        Matroid::finalize(ground, vec![0u8; size])
    }

    /// Uniform matroid of the given rank: r(X) = min(|X|, r).
    pub fn uniform(ground: GroundSet, r: usize) -> Matroid {
        assert!(r <= ground.len());
        let size = 1usize << ground.len();
        let table: Vec<u8> = (0..size)
            .map(|x| Subset(x as u16).len().min(r) as u8)
            .collect();
        Matroid::finalize(ground, table)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> Subset {
        self.ground.full()
    }

    pub fn rank(&self) -> usize {
        self.rank_table[(1usize << self.n()) - 1] as usize
    }

    pub fn rank_of(&self, x: Subset) -> usize {
        self.rank_table[x.0 as usize] as usize
    }

    /// Smallest flat containing X.
    pub fn closure(&self, x: Subset) -> Subset {
        Subset(self.closure_table[x.0 as usize])
    }

    pub fn is_flat(&self, x: Subset) -> bool {
        self.flat_bitmap[x.0 as usize]
    }

    pub fn is_independent(&self, x: Subset) -> bool {
        self.rank_of(x) == x.len()
    }

    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn independents(&self) -> &[Subset] {
        &self.independents
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    /// Maximal proper flats.
    pub fn hyperplanes(&self) -> Vec<Subset> {
        let full = self.full();
        self.flats
            .iter()
            .copied()
            .filter(|&f| {
                f != full
                    && self
                        .flats
                        .iter()
                        .all(|&g| !(f.is_subset_of(g) && g != f && g != full))
            })
            .collect()
    }

    pub fn flat_family(&self) -> SubsetFamily {
        SubsetFamily::new(self.ground.clone(), self.flats.iter().copied())
    }

    pub fn independent_family(&self) -> SubsetFamily {
        SubsetFamily::new(self.ground.clone(), self.independents.iter().copied())
    }

    pub fn rank_table(&self) -> &[u8] {
        &self.rank_table
    }

    /// Elements contained in every flat.
    pub fn loops(&self) -> Subset {
        self.closure(Subset::EMPTY)
    }

    /// Same matroid over a relabelled ground set of the same size.
    pub fn relabel(&self, ground: GroundSet) -> Matroid {
        assert_eq!(ground.len(), self.n());
        let mut m = self.clone();
        m.ground = ground;
        m
    }

    /// Image matroid under a permutation of ground indices: element i of the
    /// result corresponds to element perm[i] of self.
    pub fn permute(&self, perm: &[usize]) -> Matroid {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let size = 1usize << n;
        let mut table = vec![0u8; size];
        for x in 0..size {
            let s = Subset(x as u16);
            let mut orig = Subset::EMPTY;
            for i in s.iter() {
                orig = orig.with(perm[i]);
            }
            table[x] = self.rank_table[orig.0 as usize];
        }
        Matroid::finalize(self.ground.clone(), table)
    }

    pub fn classify(&self) -> Classification {
        let loops = self.loops();
        let mut isthmuses = self.full();
        for b in &self.bases {
            isthmuses = isthmuses.intersect(*b);
        }
        let mut parallel_classes: Vec<Subset> = Vec::new();
        let mut seen: Vec<Subset> = Vec::new();
        for x in 0..self.n() {
            if loops.contains(x) {
                continue;
            }
            let cls = self.closure(Subset::singleton(x)).minus(loops);
            if !seen.contains(&cls) {
                seen.push(cls);
                parallel_classes.push(cls);
            }
        }
        parallel_classes.sort_by_key(|s| s.canon_key());
        let is_loopless = loops.is_empty();
        let is_simple = is_loopless && parallel_classes.iter().all(|c| c.len() == 1);
        let is_free = self.flats.len() == 1usize << self.n();
        let is_cofree = self.flats.len() == 1;
        Classification {
            loops,
            isthmuses,
            parallel_classes,
            is_simple,
            is_loopless,
            is_free,
            is_cofree,
        }
    }

    /// Compare two matroids in the fibre order over a common ground set:
    /// M ≤ N iff every flat of M is a flat of N, with larger meaning finer.
    pub fn fibre_compare(&self, other: &Matroid) -> FibreOrder {
        if self.ground != other.ground {
            return FibreOrder::DifferentGround;
        }
        let fwd = self.flats.iter().all(|f| other.is_flat(*f));
        let bwd = other.flats.iter().all(|f| self.is_flat(*f));
        match (fwd, bwd) {
            (true, true) => FibreOrder::Equal,
            (false, true) => FibreOrder::Finer,
            (true, false) => FibreOrder::Coarser,
            (false, false) => FibreOrder::Incomparable,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub loops: Subset,
    pub isthmuses: Subset,
    pub parallel_classes: Vec<Subset>,
    pub is_simple: bool,
    pub is_loopless: bool,
    pub is_free: bool,
    pub is_cofree: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FibreOrder {
    Finer,
    Coarser,
    Equal,
    Incomparable,
    DifferentGround,
}

/// A matroid with a distinguished loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedMatroid {
    pub base: Matroid,
    pub point: usize,
}

impl PointedMatroid {
    pub fn new(base: Matroid, point: usize) -> Result<PointedMatroid, MatroidError> {
        if point >= base.n() {
            return Err(MatroidError::PointNotInGround(format!("index {point}")));
        }
        if !base.loops().contains(point) {
            return Err(MatroidError::PointNotLoop(
                base.ground().label(point).to_string(),
            ));
        }
        Ok(PointedMatroid { base, point })
    }

    pub fn by_label(base: Matroid, label: &str) -> Result<PointedMatroid, MatroidError> {
        let point = base
            .ground()
            .index_of(label)
            .ok_or_else(|| MatroidError::PointNotInGround(label.to_string()))?;
        PointedMatroid::new(base, point)
    }

    pub fn point_label(&self) -> &str {
        self.base.ground().label(self.point)
    }

    /// No loops other than the point.
    pub fn is_loopless(&self) -> bool {
        self.base.loops() == Subset::singleton(self.point)
    }

    /// No loops other than the point and no parallel elements.
    pub fn is_simple(&self) -> bool {
        self.is_loopless()
            && self
                .base
                .classify()
                .parallel_classes
                .iter()
                .all(|c| c.len() == 1)
    }

    /// Every subset avoiding the point is independent, and the flats are
    /// exactly the subsets containing the point.
    pub fn is_free(&self) -> bool {
        let n = self.base.n();
        self.base.flats().len() == 1usize << (n - 1)
            && self.base.flats().iter().all(|f| f.contains(self.point))
    }
}

//! Geometric lattices, the flat-lattice functor L, the atom-matroid
//! embedding S, the simplification monad arising from L ⊣ S, and the
//! embedding/contraction weak factorization at the lattice level.

use std::collections::HashMap;

use thiserror::Error;

use crate::ground::{GroundSet, Subset, SubsetFamily};
use crate::maps::StrongMap;
use crate::matroid::{Matroid, PointedMatroid};

/// Join/meet tables are materialized; this bounds their size.
pub const MAX_LATTICE: usize = 1024;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GlatError {
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("not a geometric lattice: {0}")]
    NotGeometric(String),
    #[error("not a lattice morphism: {0}")]
    NotAMorphism(String),
    #[error("lattice with {0} elements exceeds the {MAX_LATTICE} node cap")]
    TooLarge(usize),
    #[error("factorization failed: {0}")]
    FactorizationFailed(String),
}

/// A finite geometric lattice with explicit order and join/meet tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
    height: Vec<u32>,
    atoms: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl GeometricLattice {
    /// Build from an explicit reflexive order relation; validates that it is
    /// a bounded lattice and geometric (atomistic and semimodular).
    pub fn from_leq(names: Vec<String>, leq: Vec<bool>) -> Result<Self, GlatError> {
        let lat = Self::lattice_from_leq(names, leq)?;
        if let Some(reason) = lat.non_geometric_reason() {
            return Err(GlatError::NotGeometric(reason));
        }
        Ok(lat)
    }

    /// Build from a Hasse diagram (cover pairs `(lo, hi)`); the order is the
    /// reflexive-transitive closure.
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, GlatError> {
        let lat = Self::lattice_from_covers(names, covers)?;
        if let Some(reason) = lat.non_geometric_reason() {
            return Err(GlatError::NotGeometric(reason));
        }
        Ok(lat)
    }

    pub(crate) fn lattice_from_covers(
        names: Vec<String>,
        covers: &[(usize, usize)],
    ) -> Result<Self, GlatError> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(GlatError::NotALattice(format!(
                    "cover ({lo},{hi}) out of range"
                )));
            }
            leq[lo * n + hi] = true;
        }
        // Transitive closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::lattice_from_leq(names, leq)
    }

    /// Validates bounded-lattice structure only (used by `is_geometric`).
    pub(crate) fn lattice_from_leq(names: Vec<String>, leq: Vec<bool>) -> Result<Self, GlatError> {
        let n = names.len();
        if n == 0 {
            return Err(GlatError::NotALattice("empty carrier".into()));
        }
        if n > MAX_LATTICE {
            return Err(GlatError::TooLarge(n));
        }
        assert_eq!(leq.len(), n * n);
        let le = |i: usize, j: usize| leq[i * n + j];
        for i in 0..n {
            if !le(i, i) {
                return Err(GlatError::NotALattice("order is not reflexive".into()));
            }
            for j in 0..n {
                if i != j && le(i, j) && le(j, i) {
                    return Err(GlatError::NotALattice(format!(
                        "antisymmetry fails at {} and {}",
                        names[i], names[j]
                    )));
                }
                for k in 0..n {
                    if le(i, j) && le(j, k) && !le(i, k) {
                        return Err(GlatError::NotALattice("order is not transitive".into()));
                    }
                }
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| le(b, x)))
            .ok_or_else(|| GlatError::NotALattice("no least element".into()))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| le(x, t)))
            .ok_or_else(|| GlatError::NotALattice("no greatest element".into()))?;

        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let uppers: Vec<usize> = (0..n).filter(|&u| le(i, u) && le(j, u)).collect();
                let lub = uppers
                    .iter()
                    .copied()
                    .find(|&u| uppers.iter().all(|&v| le(u, v)));
                let lowers: Vec<usize> = (0..n).filter(|&u| le(u, i) && le(u, j)).collect();
                let glb = lowers
                    .iter()
                    .copied()
                    .find(|&u| lowers.iter().all(|&v| le(v, u)));
                match (lub, glb) {
                    (Some(u), Some(v)) => {
                        join[i * n + j] = u as u32;
                        meet[i * n + j] = v as u32;
                    }
                    _ => {
                        return Err(GlatError::NotALattice(format!(
                            "{} and {} have no unique join/meet",
                            names[i], names[j]
                        )))
                    }
                }
            }
        }

        // Longest-chain heights.
        let mut height = vec![0u32; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| le(y, x)).count());
        for &x in &order {
            for y in 0..n {
                if y != x && le(y, x) {
                    height[x] = height[x].max(height[y] + 1);
                }
            }
        }
        let atoms: Vec<usize> = (0..n).filter(|&x| height[x] == 1).collect();
        Ok(GeometricLattice {
            names,
            leq,
            join,
            meet,
            height,
            atoms,
            bottom,
            top,
        })
    }

    fn non_geometric_reason(&self) -> Option<String> {
        let n = self.len();
        // Atomistic: every element is the join of the atoms below it.
        for x in 0..n {
            let mut acc = self.bottom;
            for &a in &self.atoms {
                if self.le(a, x) {
                    acc = self.join(acc, a);
                }
            }
            if acc != x {
                return Some(format!("{} is not a join of atoms", self.names[x]));
            }
        }
        // Semimodular in terms of the height function.
        for x in 0..n {
            for y in 0..n {
                if self.height[x] + self.height[y]
                    < self.height[self.join(x, y)] + self.height[self.meet(x, y)]
                {
                    return Some(format!(
                        "semimodularity fails at {} and {}",
                        self.names[x], self.names[y]
                    ));
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j] as usize
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j] as usize
    }

    pub fn height(&self, i: usize) -> usize {
        self.height[i] as usize
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn atoms_below(&self, x: usize) -> Vec<usize> {
        self.atoms
            .iter()
            .copied()
            .filter(|&a| self.le(a, x))
            .collect()
    }

    /// Cover pairs `(lo, hi)` of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for lo in 0..n {
            for hi in 0..n {
                if lo != hi
                    && self.le(lo, hi)
                    && !(0..n).any(|z| z != lo && z != hi && self.le(lo, z) && self.le(z, hi))
                {
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    /// Isomorphism test by exhaustive atom matching.
    pub fn is_isomorphic(&self, other: &GeometricLattice) -> bool {
        if self.len() != other.len()
            || self.atoms.len() != other.atoms.len()
            || self.height(self.top) != other.height(other.top)
        {
            return false;
        }
        let k = self.atoms.len();
        for perm in crate::enumerate::permutations(k) {
            let mut table: Vec<usize> = Vec::with_capacity(self.len());
            for x in 0..self.len() {
                let mut img = other.bottom;
                for (ai, &a) in self.atoms.iter().enumerate() {
                    if self.le(a, x) {
                        img = other.join(img, other.atoms[perm[ai]]);
                    }
                }
                table.push(img);
            }
            let mut ok = true;
            let mut seen = vec![false; other.len()];
            for &t in &table {
                if seen[t] {
                    ok = false;
                    break;
                }
                seen[t] = true;
            }
            if ok {
                'outer: for x in 0..self.len() {
                    for y in 0..self.len() {
                        if self.le(x, y) != other.le(table[x], table[y]) {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                return true;
            }
        }
        false
    }
}

/// Is the poset described by the covers a geometric lattice?
/// Errors when it is not a bounded lattice at all.
pub fn is_geometric(names: Vec<String>, covers: &[(usize, usize)]) -> Result<bool, GlatError> {
    let lat = GeometricLattice::lattice_from_covers(names, covers)?;
    Ok(lat.non_geometric_reason().is_none())
}

/// A morphism of geometric lattices: preserves all joins (including the
/// empty join, so bottom goes to bottom) and maps atoms to atoms or bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GLatMorphism {
    pub dom: GeometricLattice,
    pub cod: GeometricLattice,
    table: Vec<usize>,
}

impl GLatMorphism {
    pub fn new(
        dom: GeometricLattice,
        cod: GeometricLattice,
        table: Vec<usize>,
    ) -> Result<GLatMorphism, GlatError> {
        if table.len() != dom.len() {
            return Err(GlatError::NotAMorphism(format!(
                "table has {} entries for {} elements",
                table.len(),
                dom.len()
            )));
        }
        if table.iter().any(|&v| v >= cod.len()) {
            return Err(GlatError::NotAMorphism("table entry out of range".into()));
        }
        if table[dom.bottom()] != cod.bottom() {
            return Err(GlatError::NotAMorphism(
                "least element is not preserved".into(),
            ));
        }
        for &a in dom.atoms() {
            let t = table[a];
            if t != cod.bottom() && cod.height(t) != 1 {
                return Err(GlatError::NotAMorphism(format!(
                    "atom {} maps to {}, neither atom nor bottom",
                    dom.name(a),
                    cod.name(t)
                )));
            }
        }
        for x in 0..dom.len() {
            for y in 0..dom.len() {
                if table[dom.join(x, y)] != cod.join(table[x], table[y]) {
                    return Err(GlatError::NotAMorphism(format!(
                        "join of {} and {} is not preserved",
                        dom.name(x),
                        dom.name(y)
                    )));
                }
            }
        }
        Ok(GLatMorphism { dom, cod, table })
    }

    pub fn identity(l: &GeometricLattice) -> GLatMorphism {
        GLatMorphism {
            dom: l.clone(),
            cod: l.clone(),
            table: (0..l.len()).collect(),
        }
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &t in &self.table {
            hit[t] = true;
        }
        hit.iter().all(|&h| h)
    }

    pub fn compose(g: &GLatMorphism, f: &GLatMorphism) -> Result<GLatMorphism, GlatError> {
        if f.cod != g.dom {
            return Err(GlatError::NotAMorphism(
                "composition mismatch between cod and dom".into(),
            ));
        }
        let table: Vec<usize> = f.table.iter().map(|&i| g.table[i]).collect();
        GLatMorphism::new(f.dom.clone(), g.cod.clone(), table)
    }
}

/// All GLat morphisms dom → cod, enumerated through atom assignments
/// (morphisms are determined by their action on atoms).
pub fn enumerate_glat_homs(dom: &GeometricLattice, cod: &GeometricLattice) -> Vec<GLatMorphism> {
    let k = dom.atoms().len();
    let choices = cod.atoms().len() + 1; // each atom goes to an atom or bottom
    let mut out = Vec::new();
    let total = (choices as u128).pow(k as u32);
    for idx in 0..total {
        let mut rest = idx;
        let mut image = vec![cod.bottom(); k];
        for slot in image.iter_mut() {
            let c = (rest % choices as u128) as usize;
            rest /= choices as u128;
            if c > 0 {
                *slot = cod.atoms()[c - 1];
            }
        }
        let mut table = vec![cod.bottom(); dom.len()];
        for (x, slot) in table.iter_mut().enumerate() {
            let mut acc = cod.bottom();
            for (ai, &a) in dom.atoms().iter().enumerate() {
                if dom.le(a, x) {
                    acc = cod.join(acc, image[ai]);
                }
            }
            *slot = acc;
        }
        if let Ok(m) = GLatMorphism::new(dom.clone(), cod.clone(), table) {
            out.push(m);
        }
    }
    out
}

/// The functor L on objects: the lattice of flats ordered by inclusion,
/// with height equal to rank.
pub fn l_object(m: &Matroid) -> GeometricLattice {
    let flats = m.flats();
    let n = flats.len();
    assert!(n <= MAX_LATTICE, "flat lattice exceeds node cap");
    let names: Vec<String> = flats.iter().map(|f| m.ground().render(*f)).collect();
    let index: HashMap<Subset, usize> = flats.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut leq = vec![false; n * n];
    for (i, f) in flats.iter().enumerate() {
        for (j, g) in flats.iter().enumerate() {
            if f.is_subset_of(*g) {
                leq[i * n + j] = true;
            }
        }
    }
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    for (i, f) in flats.iter().enumerate() {
        for (j, g) in flats.iter().enumerate() {
            join[i * n + j] = index[&m.closure(f.union(*g))] as u32;
            meet[i * n + j] = index[&f.intersect(*g)] as u32;
        }
    }
    let height: Vec<u32> = flats.iter().map(|f| m.rank_of(*f) as u32).collect();
    let atoms: Vec<usize> = (0..n).filter(|&i| height[i] == 1).collect();
    let bottom = index[&m.loops()];
    let top = index[&m.full()];
    let lat = GeometricLattice {
        names,
        leq,
        join,
        meet,
        height,
        atoms,
        bottom,
        top,
    };
    debug_assert!(lat.non_geometric_reason().is_none());
    lat
}

/// The functor L on morphisms: X ↦ clos(f(X)) on flats.
pub fn l_morphism(f: &StrongMap) -> GLatMorphism {
    let dom = l_object(f.dom());
    let cod = l_object(f.cod());
    let cod_index: HashMap<Subset, usize> = f
        .cod()
        .flats()
        .iter()
        .enumerate()
        .map(|(i, fl)| (*fl, i))
        .collect();
    let table: Vec<usize> = f
        .dom()
        .flats()
        .iter()
        .map(|fl| cod_index[&f.cod().closure(f.image_subset(*fl))])
        .collect();
    GLatMorphism::new(dom, cod, table).expect("L of a strong map is a lattice morphism")
}

/// The embedding S on objects: the atoms of G together with a fresh loop.
/// Atom labels default to the lattice names; `labels` can override them.
pub fn s_object_labelled(
    g: &GeometricLattice,
    point: &str,
    labels: Option<&[String]>,
) -> PointedMatroid {
    let atom_labels: Vec<String> = match labels {
        Some(ls) => ls.to_vec(),
        None => g.atoms().iter().map(|&a| g.name(a).to_string()).collect(),
    };
    let mut all = vec![point.to_string()];
    all.extend(atom_labels);
    let ground = GroundSet::new(all).expect("atom labels are distinct");
    let mut flats = Vec::new();
    for x in 0..g.len() {
        let mut s = Subset::singleton(0);
        for (ai, &a) in g.atoms().iter().enumerate() {
            if g.le(a, x) {
                s = s.with(ai + 1);
            }
        }
        flats.push(s);
    }
    let fam = SubsetFamily::new(ground.clone(), flats);
    let base =
        Matroid::from_flats(ground, &fam).expect("flats of a geometric lattice form a matroid");
    PointedMatroid::new(base, 0).expect("the added point is a loop")
}

pub fn s_object(g: &GeometricLattice) -> PointedMatroid {
    s_object_labelled(g, "•", None)
}

/// The embedding S on morphisms: atoms follow the lattice map, with atoms
/// sent to the least element landing on the point.
pub fn s_morphism(g: &GLatMorphism, dom: &PointedMatroid, cod: &PointedMatroid) -> StrongMap {
    let mut table = vec![0usize; dom.base.n()];
    table[dom.point] = cod.point;
    for (ai, &a) in g.dom.atoms().iter().enumerate() {
        let img = g.apply(a);
        if img == g.cod.bottom() {
            table[ai + 1] = cod.point;
        } else {
            let bi = g
                .cod
                .atoms()
                .iter()
                .position(|&b| b == img)
                .expect("atom image is an atom");
            table[ai + 1] = bi + 1;
        }
    }
    StrongMap::new_pointed(dom, cod, table).expect("S of a lattice morphism is strong")
}

/// Result of simplification: the simple reflection and its unit.
#[derive(Debug, Clone)]
pub struct Simplification {
    pub si: PointedMatroid,
    pub unit: StrongMap,
}

/// Simplification si = S∘L with the class representative of each rank-1
/// flat chosen as its least-indexed nonloop; the unit sends every element
/// to the representative of its closure (loops to the point).
pub fn simplify(pm: &PointedMatroid) -> Simplification {
    let m = &pm.base;
    let loops = m.loops();
    let rank1: Vec<Subset> = m
        .flats()
        .iter()
        .copied()
        .filter(|f| m.rank_of(*f) == 1)
        .collect();
    let reps: Vec<usize> = rank1
        .iter()
        .map(|f| {
            f.minus(loops)
                .iter()
                .next()
                .expect("rank-1 flat has a nonloop")
        })
        .collect();
    let mut labels = vec![pm.point_label().to_string()];
    labels.extend(reps.iter().map(|&r| m.ground().label(r).to_string()));
    let ground = GroundSet::new(labels).expect("representative labels are distinct");
    let mut flats = Vec::new();
    for f in m.flats() {
        let mut s = Subset::singleton(0);
        for (ai, atom) in rank1.iter().enumerate() {
            if atom.is_subset_of(*f) {
                s = s.with(ai + 1);
            }
        }
        flats.push(s);
    }
    let fam = SubsetFamily::new(ground.clone(), flats);
    let base = Matroid::from_flats(ground, &fam).expect("simplification is a matroid");
    let si = PointedMatroid::new(base, 0).expect("point stays a loop");
    let mut table = vec![0usize; m.n()];
    for (x, slot) in table.iter_mut().enumerate() {
        if loops.contains(x) {
            *slot = 0;
        } else {
            let cls = m.closure(Subset::singleton(x));
            let ai = rank1
                .iter()
                .position(|f| *f == cls)
                .expect("closure of a nonloop is rank 1");
            *slot = ai + 1;
        }
    }
    let unit = StrongMap::new_pointed(pm, &si, table).expect("unit of simplification is strong");
    Simplification { si, unit }
}

/// The multiplication μ of the simplification monad: the inverse of the
/// unit at si(M), which is an isomorphism because si(M) is simple.
pub fn simplification_multiplication(pm: &PointedMatroid) -> StrongMap {
    let si = simplify(pm).si;
    let again = simplify(&si);
    let unit = &again.unit;
    let mut inverse = vec![0usize; again.si.base.n()];
    for i in 0..si.base.n() {
        inverse[unit.apply(i)] = i;
    }
    StrongMap::new_pointed(&again.si, &si, inverse).expect("μ is strong")
}

/// Flags reported by the lattice-level factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorizationChecks {
    /// contraction ∘ embedding equals the input.
    pub recomposes: bool,
    /// The middle carrier is a geometric lattice.
    pub middle_geometric: bool,
    /// The embedding is injective and height-preserving.
    pub embedding_height_preserving: bool,
    /// Corestriction of the embedding to [0, e(1)] is an isomorphism.
    /// Necessarily false when the input drops rank (see module tests).
    pub embedding_interval_iso: bool,
    /// Restriction of the contraction to [⋁r⁻¹(0), 1] is an isomorphism.
    pub contraction_interval_iso: bool,
}

#[derive(Debug, Clone)]
pub struct GLatFactorization {
    pub embedding: GLatMorphism,
    pub contraction: GLatMorphism,
    pub middle: GeometricLattice,
    pub checks: FactorizationChecks,
}

/// Factor a GLat morphism as an embedding followed by a contraction. The
/// middle object is carved out of dom × 2^n (n the height deficiency of g)
/// as the sublattice {X : X = ⋁g₊⁻¹(g₊(X))} ∪ {X : height(g₊(X)) = height(X)}
/// where g₊ ignores the added free block.
pub fn glat_factor(g: &GLatMorphism) -> Result<GLatFactorization, GlatError> {
    let dom = &g.dom;
    let cod = &g.cod;
    let nullity = dom.height(dom.top()) - cod.height(g.apply(dom.top()));

    let blocks = 1usize << nullity;
    let pn = dom.len() * blocks;
    if pn > MAX_LATTICE {
        return Err(GlatError::TooLarge(pn));
    }
    let pid = |i: usize, s: usize| i * blocks + s;
    let p_le = |a: usize, b: usize| {
        let (ia, sa) = (a / blocks, a % blocks);
        let (ib, sb) = (b / blocks, b % blocks);
        dom.le(ia, ib) && (sa & !sb) == 0
    };
    let p_height = |a: usize| dom.height(a / blocks) + (a % blocks).count_ones() as usize;
    let p_g = |a: usize| g.apply(a / blocks);

    // Join of the full g-preimage of each codomain value inside dom × 2^n:
    // dom part joins the preimage class, mask part is the full block.
    let mut class_join: HashMap<usize, usize> = HashMap::new();
    for i in 0..dom.len() {
        let c = g.apply(i);
        let e = class_join.entry(c).or_insert_with(|| dom.bottom());
        *e = dom.join(*e, i);
    }

    let mut keep: Vec<usize> = Vec::new();
    for a in 0..pn {
        let (i, s) = (a / blocks, a % blocks);
        let clause1 = s == blocks - 1 && class_join[&g.apply(i)] == i;
        let clause2 = cod.height(p_g(a)) == p_height(a);
        if clause1 || clause2 {
            keep.push(a);
        }
    }

    let k = keep.len();
    let mut names = Vec::with_capacity(k);
    for &a in &keep {
        let (i, s) = (a / blocks, a % blocks);
        if nullity == 0 {
            names.push(dom.name(i).to_string());
        } else {
            names.push(format!("{}+{:0n$b}", dom.name(i), s, n = nullity));
        }
    }
    let mut leq = vec![false; k * k];
    for (x, &a) in keep.iter().enumerate() {
        for (y, &b) in keep.iter().enumerate() {
            if p_le(a, b) {
                leq[x * k + y] = true;
            }
        }
    }
    let middle = GeometricLattice::lattice_from_leq(names, leq)
        .map_err(|e| GlatError::FactorizationFailed(format!("middle is not a lattice: {e}")))?;
    let middle_geometric = middle.non_geometric_reason().is_none();

    // Embedding: least middle element above (i, ∅).
    let mut e_table = Vec::with_capacity(dom.len());
    for i in 0..dom.len() {
        let above: Vec<usize> = (0..k).filter(|&x| p_le(pid(i, 0), keep[x])).collect();
        let least = above
            .iter()
            .copied()
            .find(|&x| above.iter().all(|&y| middle.le(x, y)))
            .ok_or_else(|| {
                GlatError::FactorizationFailed(format!(
                    "no least middle element above {}",
                    dom.name(i)
                ))
            })?;
        e_table.push(least);
    }
    let embedding = GLatMorphism::new(dom.clone(), middle.clone(), e_table.clone())
        .map_err(|e| GlatError::FactorizationFailed(format!("embedding invalid: {e}")))?;

    // Contraction: g₊ restricted to the middle.
    let r_table: Vec<usize> = keep.iter().map(|&a| p_g(a)).collect();
    let contraction = GLatMorphism::new(middle.clone(), cod.clone(), r_table.clone())
        .map_err(|e| GlatError::FactorizationFailed(format!("contraction invalid: {e}")))?;

    let recomposes = (0..dom.len()).all(|i| r_table[e_table[i]] == g.apply(i));
    let embedding_height_preserving = {
        let mut seen = std::collections::HashSet::new();
        (0..dom.len()).all(|i| seen.insert(e_table[i]))
            && (0..dom.len()).all(|i| middle.height(e_table[i]) == dom.height(i))
    };
    let embedding_interval_iso = {
        let e_top = e_table[dom.top()];
        let interval: Vec<usize> = (0..k).filter(|&x| middle.le(x, e_top)).collect();
        interval.len() == dom.len() && {
            let mut seen = std::collections::HashSet::new();
            (0..dom.len()).all(|i| interval.contains(&e_table[i]) && seen.insert(e_table[i]))
        }
    };
    let contraction_interval_iso = {
        let mut kernel_join = middle.bottom();
        for x in 0..k {
            if r_table[x] == cod.bottom() {
                kernel_join = middle.join(kernel_join, x);
            }
        }
        let interval: Vec<usize> = (0..k).filter(|&x| middle.le(kernel_join, x)).collect();
        interval.len() == cod.len() && {
            let mut seen = std::collections::HashSet::new();
            interval.iter().all(|&x| seen.insert(r_table[x]))
                && interval.iter().all(|&x| {
                    interval
                        .iter()
                        .all(|&y| middle.le(x, y) == cod.le(r_table[x], r_table[y]))
                })
        }
    };

    Ok(GLatFactorization {
        embedding,
        contraction,
        middle,
        checks: FactorizationChecks {
            recomposes,
            middle_geometric,
            embedding_height_preserving,
            embedding_interval_iso,
            contraction_interval_iso,
        },
    })
}

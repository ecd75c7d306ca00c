//! Matroid constructions: duals, deletion/contraction/minors, coproducts and
//! equalizers, the subcategory functors, free extension, truncation and free
//! erection, unions/intersections/half-dual unions, and the parallel and
//! series connections on bipointed matroids.

use thiserror::Error;

use crate::ground::{GroundSet, Subset, SubsetFamily};
use crate::maps::{MapsError, StrongMap};
use crate::matroid::{Matroid, MatroidError, PointedMatroid};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("ground sets do not agree: {0}")]
    GroundMismatch(String),
    #[error("instruction overlaps removed elements: {0}")]
    OverlappingInstruction(String),
    #[error("cannot truncate a matroid of rank zero")]
    RankZeroTruncation,
    #[error("free erection is ambiguous: {} maximal candidates", .0.len())]
    AmbiguousErection(Vec<Matroid>),
    #[error("label {0:?} already present in the ground set")]
    LabelExists(String),
    #[error("functor applied outside its category: {0}")]
    WrongCategory(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Map(#[from] MapsError),
}

/// A label not yet present in `taken`, derived from `base` by priming.
fn fresh_label(base: &str, taken: &[String]) -> String {
    let mut label = base.to_string();
    while taken.iter().any(|t| t == &label) {
        label.push('\'');
    }
    label
}

/// New ground made of the kept elements, plus the lift new index → old index.
fn subground(m: &Matroid, keep: Subset) -> (GroundSet, Vec<usize>) {
    let labels: Vec<String> = keep
        .iter()
        .map(|i| m.ground().label(i).to_string())
        .collect();
    let lift: Vec<usize> = keep.iter().collect();
    (
        GroundSet::new(labels).expect("kept labels stay distinct"),
        lift,
    )
}

fn lift_mask(x: Subset, lift: &[usize]) -> Subset {
    let mut out = Subset::EMPTY;
    for i in x.iter() {
        out = out.with(lift[i]);
    }
    out
}

/// Deletion M∖Y: ground shrinks, the rank function restricts.
pub fn delete(m: &Matroid, y: Subset) -> Matroid {
    let keep = m.full().minus(y);
    let (ground, lift) = subground(m, keep);
    let size = 1usize << ground.len();
    let table: Vec<u32> = (0..size)
        .map(|x| m.rank_of(lift_mask(Subset(x as u16), &lift)) as u32)
        .collect();
    Matroid::from_rank(ground, &table).expect("deletion of a matroid is a matroid")
}

#[derive(Debug, Clone)]
pub struct Contraction {
    pub quotient: Matroid,
    /// The strong map M → M/Z, present when the quotient can receive the
    /// contracted elements: Z = ∅ (identity) or M/Z has a loop.
    pub map: Option<StrongMap>,
}

/// Contraction M/Z: rank X ↦ rank(X∪Z) − rank(Z).
pub fn contract(m: &Matroid, z: Subset) -> Contraction {
    let keep = m.full().minus(z);
    let (ground, lift) = subground(m, keep);
    let rz = m.rank_of(z) as u32;
    let size = 1usize << ground.len();
    let table: Vec<u32> = (0..size)
        .map(|x| m.rank_of(lift_mask(Subset(x as u16), &lift).union(z)) as u32 - rz)
        .collect();
    let quotient =
        Matroid::from_rank(ground, &table).expect("contraction of a matroid is a matroid");
    let map = contraction_map(m, z, &quotient, &lift, None);
    Contraction { quotient, map }
}

fn contraction_map(
    m: &Matroid,
    z: Subset,
    quotient: &Matroid,
    lift: &[usize],
    receptor: Option<usize>,
) -> Option<StrongMap> {
    let mut back = vec![usize::MAX; m.n()];
    for (new, &old) in lift.iter().enumerate() {
        back[old] = new;
    }
    let receptor = match receptor {
        Some(r) => Some(r),
        None => {
            if z.is_empty() {
                None
            } else {
                quotient.loops().iter().next()
            }
        }
    };
    if !z.is_empty() && receptor.is_none() {
        return None;
    }
    let table: Vec<usize> = (0..m.n())
        .map(|i| {
            if z.contains(i) {
                receptor.expect("receptor exists when Z is nonempty")
            } else {
                back[i]
            }
        })
        .collect();
    Some(
        StrongMap::new(m.clone(), quotient.clone(), table)
            .expect("the canonical contraction map is strong"),
    )
}

/// Pointed contraction: Z must avoid the point, which receives Z.
pub fn contract_pointed(
    pm: &PointedMatroid,
    z: Subset,
) -> Result<(PointedMatroid, StrongMap), ConstructError> {
    if z.contains(pm.point) {
        return Err(ConstructError::WrongCategory(
            "cannot contract the point".into(),
        ));
    }
    let m = &pm.base;
    let keep = m.full().minus(z);
    let (_, lift) = subground(m, keep);
    let c = contract(m, z);
    let new_point = lift
        .iter()
        .position(|&old| old == pm.point)
        .expect("point is kept");
    let unpointed = contraction_map(m, z, &c.quotient, &lift, Some(new_point))
        .expect("point receives the contracted elements");
    let quotient = PointedMatroid::new(c.quotient, new_point)?;
    let map = StrongMap::new_pointed(pm, &quotient, unpointed.table().to_vec())?;
    Ok((quotient, map))
}

/// Dual matroid: bases are the complements of bases, equivalently
/// r*(X) = |X| + r(E∖X) − r(E).
pub fn dual(m: &Matroid) -> Matroid {
    let n = m.n();
    let rk = m.rank() as u32;
    let size = 1usize << n;
    let table: Vec<u32> = (0..size)
        .map(|x| {
            let s = Subset(x as u16);
            s.len() as u32 + m.rank_of(s.complement(n)) as u32 - rk
        })
        .collect();
    Matroid::from_rank(m.ground().clone(), &table).expect("dual of a matroid is a matroid")
}

#[derive(Debug, Clone)]
pub enum MinorStep {
    Delete(Vec<String>),
    Contract(Vec<String>),
}

/// Apply a sequence of deletions and contractions.
pub fn minor(m: &Matroid, steps: &[MinorStep]) -> Result<Matroid, ConstructError> {
    let mut cur = m.clone();
    for step in steps {
        let (labels, is_delete) = match step {
            MinorStep::Delete(ls) => (ls, true),
            MinorStep::Contract(ls) => (ls, false),
        };
        let mut mask = Subset::EMPTY;
        for l in labels {
            match cur.ground().index_of(l) {
                Some(i) => mask = mask.with(i),
                None => {
                    return Err(ConstructError::OverlappingInstruction(format!(
                        "element {l:?} is not present (already removed?)"
                    )))
                }
            }
        }
        cur = if is_delete {
            delete(&cur, mask)
        } else {
            contract(&cur, mask).quotient
        };
    }
    Ok(cur)
}

#[derive(Debug, Clone)]
pub struct Coproduct {
    pub sum: Matroid,
    pub inj_left: StrongMap,
    pub inj_right: StrongMap,
}

/// Coproduct M+N: disjoint ground (right labels primed on clash), flats are
/// pairwise unions.
pub fn coproduct(m: &Matroid, n: &Matroid) -> Coproduct {
    let mut labels: Vec<String> = m.ground().labels().to_vec();
    for l in n.ground().labels() {
        let fresh = fresh_label(l, &labels);
        labels.push(fresh);
    }
    let ground = GroundSet::new(labels).expect("tagged labels are distinct");
    let nm = m.n();
    let mut flats = Vec::with_capacity(m.flats().len() * n.flats().len());
    for f in m.flats() {
        for g in n.flats() {
            flats.push(Subset(f.0 | (g.0 << nm)));
        }
    }
    let fam = SubsetFamily::new(ground.clone(), flats);
    let sum = Matroid::from_flats(ground, &fam).expect("coproduct flats form a matroid");
    let inj_left = StrongMap::new(m.clone(), sum.clone(), (0..nm).collect())
        .expect("coproduct inclusion is strong");
    let inj_right = StrongMap::new(n.clone(), sum.clone(), (nm..nm + n.n()).collect())
        .expect("coproduct inclusion is strong");
    Coproduct {
        sum,
        inj_left,
        inj_right,
    }
}

#[derive(Debug, Clone)]
pub struct Equalizer {
    pub object: Matroid,
    pub inclusion: StrongMap,
}

/// Equalizer of a parallel pair: the agreement set with trace flats.
pub fn equalizer(f: &StrongMap, g: &StrongMap) -> Result<Equalizer, ConstructError> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(ConstructError::GroundMismatch(
            "equalizer needs a parallel pair".into(),
        ));
    }
    let m = f.dom();
    let mut agree = Subset::EMPTY;
    for i in 0..m.n() {
        if f.apply(i) == g.apply(i) {
            agree = agree.with(i);
        }
    }
    let (ground, lift) = subground(m, agree);
    let mut back = vec![usize::MAX; m.n()];
    for (new, &old) in lift.iter().enumerate() {
        back[old] = new;
    }
    let flats: Vec<Subset> = m
        .flats()
        .iter()
        .map(|fl| {
            let mut s = Subset::EMPTY;
            for i in fl.intersect(agree).iter() {
                s = s.with(back[i]);
            }
            s
        })
        .collect();
    let fam = SubsetFamily::new(ground.clone(), flats);
    let object = Matroid::from_flats(ground, &fam).expect("equalizer flats form a matroid");
    let inclusion =
        StrongMap::new(object.clone(), m.clone(), lift).expect("equalizer inclusion is strong");
    Ok(Equalizer { object, inclusion })
}

// ---------------------------------------------------------------------------
// Subcategory functors.

/// F on unpointed matroids: the free matroid on the same ground.
pub fn free_reflection(m: &Matroid) -> Matroid {
    Matroid::free(m.ground().clone())
}

/// F on pointed matroids: flats are exactly the point-containing subsets.
pub fn free_reflection_pointed(pm: &PointedMatroid) -> PointedMatroid {
    let g = pm.base.ground().clone();
    let flats: Vec<Subset> = g.subsets().filter(|s| s.contains(pm.point)).collect();
    let fam = SubsetFamily::new(g.clone(), flats);
    let base = Matroid::from_flats(g, &fam).expect("pointed free flats form a matroid");
    PointedMatroid::new(base, pm.point).expect("point is still a loop")
}

/// V: the matroid on the same ground whose only flat is the ground set.
pub fn v_functor(m: &Matroid) -> Matroid {
    Matroid::cofree(m.ground().clone())
}

/// H on pointed matroids: delete all but loops, then take pointed free.
pub fn h_functor(pm: &PointedMatroid) -> PointedMatroid {
    let loops = pm.base.loops();
    let restricted = delete(&pm.base, pm.base.full().minus(loops));
    let point = restricted
        .ground()
        .index_of(pm.point_label())
        .expect("point survives");
    let pm2 = PointedMatroid::new(restricted, point).expect("loops stay loops");
    free_reflection_pointed(&pm2)
}

/// H on morphisms: restriction to the loops.
pub fn h_morphism(
    f: &StrongMap,
    dom: &PointedMatroid,
    cod: &PointedMatroid,
) -> Result<StrongMap, ConstructError> {
    let hd = h_functor(dom);
    let hc = h_functor(cod);
    let mut table = Vec::with_capacity(hd.base.n());
    for l in hd.base.ground().labels() {
        let i = dom.base.ground().index_of(l).expect("loop label exists");
        let img = f.apply(i);
        let j = hc
            .base
            .ground()
            .index_of(cod.base.ground().label(img))
            .ok_or_else(|| ConstructError::WrongCategory("loop mapped to a nonloop".into()))?;
        table.push(j);
    }
    Ok(StrongMap::new_pointed(&hd, &hc, table)?)
}

/// U: right adjoint to F on loopless matroids — flats {∅, ground}.
pub fn u_functor(m: &Matroid) -> Matroid {
    let g = m.ground().clone();
    let fam = SubsetFamily::new(g.clone(), [Subset::EMPTY, g.full()]);
    Matroid::from_flats(g, &fam).expect("two-flat family is a matroid")
}

/// J: delete every loop except the point.
pub fn j_functor(pm: &PointedMatroid) -> PointedMatroid {
    let extra_loops = pm.base.loops().without(pm.point);
    let m = delete(&pm.base, extra_loops);
    let point = m
        .ground()
        .index_of(pm.point_label())
        .expect("point survives");
    PointedMatroid::new(m, point).expect("point is still a loop")
}

/// J on morphisms: elements landing on deleted loops go to the point.
pub fn j_morphism(
    f: &StrongMap,
    dom: &PointedMatroid,
    cod: &PointedMatroid,
) -> Result<StrongMap, ConstructError> {
    let jd = j_functor(dom);
    let jc = j_functor(cod);
    let mut table = Vec::with_capacity(jd.base.n());
    for l in jd.base.ground().labels() {
        let i = dom.base.ground().index_of(l).expect("kept label exists");
        let img_label = cod.base.ground().label(f.apply(i));
        let j = match jc.base.ground().index_of(img_label) {
            Some(j) => j,
            None => jc.point,
        };
        table.push(j);
    }
    Ok(StrongMap::new_pointed(&jd, &jc, table)?)
}

/// Adjoin a fresh loop and point the matroid at it.
pub fn add_point(m: &Matroid) -> PointedMatroid {
    let mut labels = m.ground().labels().to_vec();
    let point_label = fresh_label("•", &labels);
    labels.push(point_label);
    let ground = GroundSet::new(labels).expect("fresh point label");
    let pt = ground.len() - 1;
    let flats: Vec<Subset> = m.flats().iter().map(|f| f.with(pt)).collect();
    let fam = SubsetFamily::new(ground.clone(), flats);
    let base = Matroid::from_flats(ground, &fam).expect("adding a loop keeps a matroid");
    PointedMatroid::new(base, pt).expect("added element is a loop")
}

/// Extend a strong map by point ↦ point after `add_point` on both sides.
pub fn add_point_map(f: &StrongMap) -> StrongMap {
    let dom = add_point(f.dom());
    let cod = add_point(f.cod());
    let mut table: Vec<usize> = (0..f.dom().n()).map(|i| f.apply(i)).collect();
    table.push(cod.point);
    StrongMap::new_pointed(&dom, &cod, table).expect("pointing preserves strength")
}

/// Adjoin a fresh isthmus: bases become B ∪ {*}.
pub fn add_isthmus(m: &Matroid) -> Matroid {
    let mut labels = m.ground().labels().to_vec();
    let star = fresh_label("*", &labels);
    labels.push(star);
    let ground = GroundSet::new(labels).expect("fresh isthmus label");
    let sn = ground.len() - 1;
    let size = 1usize << ground.len();
    let table: Vec<u32> = (0..size)
        .map(|x| {
            let s = Subset(x as u16);
            let below = Subset(s.0 & !(1 << sn));
            m.rank_of(below) as u32 + u32::from(s.contains(sn))
        })
        .collect();
    Matroid::from_rank(ground, &table).expect("isthmus addition keeps a matroid")
}

pub fn add_isthmus_map(f: &StrongMap) -> StrongMap {
    let dom = add_isthmus(f.dom());
    let cod = add_isthmus(f.cod());
    let mut table: Vec<usize> = (0..f.dom().n()).map(|i| f.apply(i)).collect();
    table.push(cod.n() - 1);
    StrongMap::new(dom, cod, table).expect("isthmus addition preserves strength")
}

/// A function between finite sets (for the set-valued functors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunction {
    pub dom: GroundSet,
    pub cod: GroundSet,
    pub table: Vec<usize>,
}

/// (−)₀: the bottom flat, as a plain finite set.
pub fn zero_flat(m: &Matroid) -> GroundSet {
    let loops = m.loops();
    GroundSet::new(loops.iter().map(|i| m.ground().label(i).to_string()))
        .expect("loop labels are distinct")
}

/// (−)₀ on morphisms: restriction of the map to the bottom flats.
pub fn zero_flat_map(f: &StrongMap) -> SetFunction {
    let dom = zero_flat(f.dom());
    let cod = zero_flat(f.cod());
    let table: Vec<usize> = dom
        .labels()
        .iter()
        .map(|l| {
            let i = f.dom().ground().index_of(l).expect("loop label");
            cod.index_of(f.cod().ground().label(f.apply(i)))
                .expect("loops map to loops under strong maps")
        })
        .collect();
    SetFunction { dom, cod, table }
}

// ---------------------------------------------------------------------------
// Free extension, truncation, erection.

/// Free extension X(M) by a fresh element: flats are the proper flats of M
/// together with K ∪ {p} for every non-hyperplane flat K.
pub fn free_extension(m: &Matroid, new_label: &str) -> Result<Matroid, ConstructError> {
    if m.ground().index_of(new_label).is_some() {
        return Err(ConstructError::LabelExists(new_label.to_string()));
    }
    let mut labels = m.ground().labels().to_vec();
    labels.push(new_label.to_string());
    let ground = GroundSet::new(labels).expect("fresh extension label");
    let p = ground.len() - 1;
    let hyperplanes = m.hyperplanes();
    let full = m.full();
    let mut flats = Vec::new();
    for f in m.flats() {
        if *f != full {
            flats.push(*f);
        }
        if !hyperplanes.contains(f) {
            flats.push(f.with(p));
        }
    }
    let fam = SubsetFamily::new(ground.clone(), flats);
    Ok(Matroid::from_flats(ground, &fam)?)
}

/// Truncation: contract the free extension by its new element.
pub fn truncation(m: &Matroid) -> Result<Matroid, ConstructError> {
    if m.rank() == 0 {
        return Err(ConstructError::RankZeroTruncation);
    }
    let p = fresh_label("p", m.ground().labels());
    let extended = free_extension(m, &p)?;
    let pi = extended.ground().index_of(&p).expect("new element present");
    Ok(contract(&extended, Subset::singleton(pi)).quotient)
}

/// The free erection: the maximum, in the weak order on independent-set
/// families, of the matroids one rank higher whose truncation is M; M itself
/// when no erection exists. Exhaustive search over all matroids on the
/// ground set (practical for ≤ 7 elements).
pub fn free_erection(m: &Matroid) -> Result<Matroid, ConstructError> {
    let candidates: Vec<Matroid> = crate::enumerate::all_matroids(m.ground())
        .into_iter()
        .filter(|c| c.rank() == m.rank() + 1)
        .filter(|c| truncation(c).map(|t| &t == m).unwrap_or(false))
        .collect();
    if candidates.is_empty() {
        return Ok(m.clone());
    }
    let weakly_below =
        |a: &Matroid, b: &Matroid| a.independents().iter().all(|i| b.is_independent(*i));
    let maximal: Vec<Matroid> = candidates
        .iter()
        .filter(|c| {
            candidates
                .iter()
                .all(|d| *c == d || !weakly_below(c, d) || weakly_below(d, c))
        })
        .cloned()
        .collect();
    match maximal.len() {
        1 => Ok(maximal.into_iter().next().unwrap()),
        _ => Err(ConstructError::AmbiguousErection(maximal)),
    }
}

// ---------------------------------------------------------------------------
// Union, intersection, half-dual union.

/// Reindex `n` so its ground equals `target` (same labels, any order).
fn aligned(n: &Matroid, target: &GroundSet) -> Result<Matroid, ConstructError> {
    if n.ground() == target {
        return Ok(n.clone());
    }
    if n.n() != target.len() {
        return Err(ConstructError::GroundMismatch(format!(
            "sizes {} and {}",
            n.n(),
            target.len()
        )));
    }
    let mut perm = Vec::with_capacity(target.len());
    for l in target.labels() {
        match n.ground().index_of(l) {
            Some(i) => perm.push(i),
            None => {
                return Err(ConstructError::GroundMismatch(format!(
                    "label {l:?} missing from the second matroid"
                )))
            }
        }
    }
    Ok(n.permute(&perm).relabel(target.clone()))
}

/// Union M ∪ N on a shared ground set: independent sets are unions of an
/// independent set of M and one of N.
pub fn union(m: &Matroid, n: &Matroid) -> Result<Matroid, ConstructError> {
    let n = aligned(n, m.ground())?;
    let size = 1usize << m.n();
    let mut members = Vec::new();
    for x in 0..size {
        let s = Subset(x as u16);
        let mut found = false;
        let mut sub = s.0;
        loop {
            let i = Subset(sub);
            if m.is_independent(i) && n.is_independent(s.minus(i)) {
                found = true;
                break;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & s.0;
        }
        if found {
            members.push(s);
        }
    }
    let fam = SubsetFamily::new(m.ground().clone(), members);
    Ok(Matroid::from_independents(m.ground().clone(), &fam)?)
}

/// Intersection (M* ∪ N*)*.
pub fn intersection(m: &Matroid, n: &Matroid) -> Result<Matroid, ConstructError> {
    Ok(dual(&union(&dual(m), &dual(&aligned(n, m.ground())?))?))
}

/// Half-dual union M ∪ N*.
pub fn half_dual_union(m: &Matroid, n: &Matroid) -> Result<Matroid, ConstructError> {
    union(m, &dual(&aligned(n, m.ground())?))
}

// ---------------------------------------------------------------------------
// Bipointed matroids: parallel and series connections.

/// A matroid with a distinguished element (not necessarily a loop).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipointedMatroid {
    pub base: Matroid,
    pub basepoint: usize,
}

impl BipointedMatroid {
    pub fn new(base: Matroid, basepoint: usize) -> Result<Self, ConstructError> {
        if basepoint >= base.n() {
            return Err(ConstructError::GroundMismatch(format!(
                "basepoint index {basepoint} out of range"
            )));
        }
        Ok(BipointedMatroid { base, basepoint })
    }

    pub fn by_label(base: Matroid, label: &str) -> Result<Self, ConstructError> {
        let basepoint = base.ground().index_of(label).ok_or_else(|| {
            ConstructError::GroundMismatch(format!("no basepoint label {label:?}"))
        })?;
        Ok(BipointedMatroid { base, basepoint })
    }

    pub fn basepoint_label(&self) -> &str {
        self.base.ground().label(self.basepoint)
    }
}

/// Ground and index maps for a basepoint gluing: left labels kept, right
/// labels (minus its basepoint) primed on clash.
fn glued_ground(m: &BipointedMatroid, n: &BipointedMatroid) -> (GroundSet, Vec<usize>, Vec<usize>) {
    let mut labels: Vec<String> = m.base.ground().labels().to_vec();
    let mut right = vec![usize::MAX; n.base.n()];
    right[n.basepoint] = m.basepoint;
    for (i, l) in n.base.ground().labels().iter().enumerate() {
        if i == n.basepoint {
            continue;
        }
        let fresh = fresh_label(l, &labels);
        labels.push(fresh);
        right[i] = labels.len() - 1;
    }
    let left: Vec<usize> = (0..m.base.n()).collect();
    (
        GroundSet::new(labels).expect("glued labels are distinct"),
        left,
        right,
    )
}

/// Parallel connection M||N: grounds glued at the basepoints, flats are the
/// basepoint-consistent unions of flats.
pub fn parallel_connection(
    m: &BipointedMatroid,
    n: &BipointedMatroid,
) -> Result<BipointedMatroid, ConstructError> {
    let (ground, left, right) = glued_ground(m, n);
    let mut flats = Vec::new();
    for f in m.base.flats() {
        for g in n.base.flats() {
            if f.contains(m.basepoint) != g.contains(n.basepoint) {
                continue;
            }
            let mut s = Subset::EMPTY;
            for i in f.iter() {
                s = s.with(left[i]);
            }
            for j in g.iter() {
                s = s.with(right[j]);
            }
            flats.push(s);
        }
    }
    let fam = SubsetFamily::new(ground.clone(), flats);
    let base = Matroid::from_flats(ground, &fam)?;
    BipointedMatroid::new(base, m.basepoint)
}

#[derive(Debug, Clone)]
pub struct SeriesConnection {
    pub matroid: BipointedMatroid,
    pub proj_left: StrongMap,
    pub proj_right: StrongMap,
}

/// Series connection MN = (M*||N*)*, with its strong projections onto the
/// two components (away from a component everything lands on the basepoint).
pub fn series_connection(
    m: &BipointedMatroid,
    n: &BipointedMatroid,
) -> Result<SeriesConnection, ConstructError> {
    let md = BipointedMatroid::new(dual(&m.base), m.basepoint)?;
    let nd = BipointedMatroid::new(dual(&n.base), n.basepoint)?;
    let par = parallel_connection(&md, &nd)?;
    let base = dual(&par.base);
    let matroid = BipointedMatroid::new(base, par.basepoint)?;

    let (_, left, right) = glued_ground(m, n);
    let mut to_left = vec![m.basepoint; matroid.base.n()];
    for (i, &gi) in left.iter().enumerate() {
        to_left[gi] = i;
    }
    let mut to_right = vec![n.basepoint; matroid.base.n()];
    for (j, &gj) in right.iter().enumerate() {
        if gj != m.basepoint || j == n.basepoint {
            to_right[gj] = j;
        }
    }
    let proj_left = StrongMap::new(matroid.base.clone(), m.base.clone(), to_left)?;
    let proj_right = StrongMap::new(matroid.base.clone(), n.base.clone(), to_right)?;
    Ok(SeriesConnection {
        matroid,
        proj_left,
        proj_right,
    })
}

// ---------------------------------------------------------------------------
// Marked matroids (functorial deletion/contraction).

/// A matroid with pairwise disjoint marked subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedMatroid {
    pub base: Matroid,
    pub marks: Vec<Subset>,
}

impl MarkedMatroid {
    pub fn new(base: Matroid, marks: Vec<Subset>) -> Result<Self, ConstructError> {
        let mut seen = Subset::EMPTY;
        for z in &marks {
            if !z.intersect(seen).is_empty() {
                return Err(ConstructError::OverlappingInstruction(
                    "marks must be pairwise disjoint".into(),
                ));
            }
            seen = seen.union(*z);
        }
        Ok(MarkedMatroid { base, marks })
    }
}

/// Is `f` a morphism of marked matroids: strong, with each mark the
/// preimage of the corresponding mark?
pub fn is_marked_map(f: &StrongMap, dom: &MarkedMatroid, cod: &MarkedMatroid) -> bool {
    dom.marks.len() == cod.marks.len()
        && dom
            .marks
            .iter()
            .zip(cod.marks.iter())
            .all(|(z, z2)| f.preimage_subset(*z2) == *z)
}

/// Deletion functor on the last mark.
pub fn marked_delete(mm: &MarkedMatroid) -> MarkedMatroid {
    let mut marks = mm.marks.clone();
    let z = marks.pop().unwrap_or(Subset::EMPTY);
    let result = delete(&mm.base, z);
    let remap = remap_marks(&mm.base, &result, &marks);
    MarkedMatroid {
        base: result,
        marks: remap,
    }
}

/// Contraction functor on the last mark.
pub fn marked_contract(mm: &MarkedMatroid) -> MarkedMatroid {
    let mut marks = mm.marks.clone();
    let z = marks.pop().unwrap_or(Subset::EMPTY);
    let result = contract(&mm.base, z).quotient;
    let remap = remap_marks(&mm.base, &result, &marks);
    MarkedMatroid {
        base: result,
        marks: remap,
    }
}

fn remap_marks(old: &Matroid, new: &Matroid, marks: &[Subset]) -> Vec<Subset> {
    marks
        .iter()
        .map(|z| {
            let mut s = Subset::EMPTY;
            for i in z.iter() {
                if let Some(j) = new.ground().index_of(old.ground().label(i)) {
                    s = s.with(j);
                }
            }
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied()).unwrap()
    }

    fn from_flats(g: &GroundSet, sets: &[&[&str]]) -> Matroid {
        let fam = SubsetFamily::new(
            g.clone(),
            sets.iter().map(|s| g.subset_of_labels(s).unwrap()),
        );
        Matroid::from_flats(g.clone(), &fam).unwrap()
    }

    /// Oracle: dual built from explicit basis complements.
    fn dual_by_bases(m: &Matroid) -> Matroid {
        let n = m.n();
        let mut independents = Vec::new();
        for x in m.ground().subsets() {
            let ok = m.bases().iter().any(|b| x.is_subset_of(b.complement(n)));
            if ok {
                independents.push(x);
            }
        }
        let fam = SubsetFamily::new(m.ground().clone(), independents);
        Matroid::from_independents(m.ground().clone(), &fam).unwrap()
    }

    #[test]
    fn dual_examples() {
        let g = ground(&["a", "b", "c"]);
        let u13 = from_flats(&g, &[&[], &["a", "b", "c"]]);
        let d = dual(&u13);
        assert_eq!(d, Matroid::uniform(g.clone(), 2));
        assert_eq!(d, dual_by_bases(&u13));
        assert_eq!(dual(&Matroid::free(g.clone())), Matroid::cofree(g.clone()));
        let empty = Matroid::free(GroundSet::empty());
        assert_eq!(dual(&empty), empty);
        let e3 = Matroid::uniform(g, 2);
        assert_eq!(dual(&dual(&e3)), e3);
    }

    #[test]
    fn delete_contract_uniform() {
        let g = ground(&["a", "b", "c", "d"]);
        let u24 = Matroid::uniform(g.clone(), 2);
        let a = g.subset_of_labels(&["a"]).unwrap();
        let del = delete(&u24, a);
        assert_eq!(del, Matroid::uniform(ground(&["b", "c", "d"]), 2));
        let con = contract(&u24, a);
        assert_eq!(con.quotient, Matroid::uniform(ground(&["b", "c", "d"]), 1));
        assert_eq!(delete(&u24, Subset::EMPTY), u24);
        let c0 = contract(&u24, Subset::EMPTY);
        assert_eq!(c0.quotient, u24);
        assert!(c0.map.unwrap().classify().iso);
    }

    #[test]
    fn contraction_map_validated() {
        let g = ground(&["p", "a", "b"]);
        let m = from_flats(&g, &[&["p"], &["p", "a"], &["p", "b"], &["p", "a", "b"]]);
        let pm = PointedMatroid::by_label(m, "p").unwrap();
        let z = pm.base.ground().subset_of_labels(&["a"]).unwrap();
        let (q, map) = contract_pointed(&pm, z).unwrap();
        assert_eq!(q.base.n(), 2);
        assert!(map.classify().epi);
        assert!(map.is_pointed());
    }

    #[test]
    fn minor_sequences() {
        let g = ground(&["a", "b", "c", "d"]);
        let u24 = Matroid::uniform(g, 2);
        assert_eq!(minor(&u24, &[]).unwrap(), u24);
        let steps = vec![
            MinorStep::Delete(vec!["a".into()]),
            MinorStep::Contract(vec!["b".into()]),
        ];
        let res = minor(&u24, &steps).unwrap();
        assert_eq!(res, Matroid::uniform(ground(&["c", "d"]), 1));
        let dc = minor(
            &u24,
            &[
                MinorStep::Delete(vec!["a".into()]),
                MinorStep::Contract(vec!["b".into()]),
            ],
        )
        .unwrap();
        let cd = minor(
            &u24,
            &[
                MinorStep::Contract(vec!["b".into()]),
                MinorStep::Delete(vec!["a".into()]),
            ],
        )
        .unwrap();
        assert_eq!(dc, cd);
        assert!(matches!(
            minor(
                &u24,
                &[
                    MinorStep::Delete(vec!["a".into()]),
                    MinorStep::Contract(vec!["a".into()]),
                ],
            ),
            Err(ConstructError::OverlappingInstruction(_))
        ));
    }

    #[test]
    fn coproduct_counts_and_injections() {
        let g = ground(&["a", "b"]);
        let u12 = from_flats(&g, &[&[], &["a", "b"]]);
        let c = coproduct(&u12, &u12);
        assert_eq!(c.sum.n(), 4);
        assert_eq!(c.sum.rank(), 2);
        assert_eq!(c.sum.flats().len(), 4);
        assert!(c.inj_left.classify().embedding);
        let empty = Matroid::free(GroundSet::empty());
        let c2 = coproduct(&u12, &empty);
        assert_eq!(c2.sum, u12);
        let s = Matroid::uniform(ground(&["x", "y", "z"]), 2);
        let c3 = coproduct(&s, &s);
        assert!(c3.sum.classify().is_simple);
    }

    #[test]
    fn equalizer_of_equal_maps_is_identity() {
        let g = ground(&["a", "b", "c"]);
        let m = Matroid::uniform(g, 2);
        let id = StrongMap::identity(&m);
        let e = equalizer(&id, &id).unwrap();
        assert_eq!(e.object, m);
        assert!(e.object.classify().is_simple);
    }

    #[test]
    fn functor_objects() {
        let g = ground(&["a", "b"]);
        let m = from_flats(&g, &[&[], &["a", "b"]]);
        assert_eq!(free_reflection(&m).flats().len(), 4);
        assert_eq!(v_functor(&m).flats().len(), 1);
        assert_eq!(u_functor(&m).flats().len(), 2);

        let gp = ground(&["•", "l", "x", "y"]);
        let mp = from_flats(&gp, &[&["•", "l"], &["•", "l", "x", "y"]]);
        let pm = PointedMatroid::by_label(mp, "•").unwrap();
        let h = h_functor(&pm);
        assert_eq!(h.base.n(), 2);
        assert!(h.is_free());

        let j = j_functor(&pm);
        assert_eq!(j.base.n(), 3);
        assert!(j.is_loopless());
    }

    #[test]
    fn j_redirects_to_point() {
        let gd = ground(&["•", "x"]);
        let d = from_flats(&gd, &[&["•"], &["•", "x"]]);
        let dpm = PointedMatroid::by_label(d, "•").unwrap();
        let gc = ground(&["•", "l", "y"]);
        let c = from_flats(&gc, &[&["•", "l"], &["•", "l", "y"]]);
        let cpm = PointedMatroid::by_label(c, "•").unwrap();
        let f = StrongMap::new_pointed(&dpm, &cpm, vec![0, 1]).unwrap();
        let jf = j_morphism(&f, &dpm, &cpm).unwrap();
        assert_eq!(jf.apply(1), jf.cod().ground().index_of("•").unwrap());
    }

    #[test]
    fn point_and_isthmus_functors() {
        let g = ground(&["a", "b"]);
        let m = Matroid::free(g);
        let pm = add_point(&m);
        assert_eq!(pm.base.n(), 3);
        assert_eq!(pm.base.loops().len(), 1);
        let am = add_isthmus(&m);
        let c = am.classify();
        assert!(c.isthmuses.contains(am.n() - 1));
        assert_eq!(am.rank(), m.rank() + 1);
    }

    #[test]
    fn zero_flat_restriction() {
        let g = ground(&["l", "a"]);
        let m = from_flats(&g, &[&["l"], &["l", "a"]]);
        assert_eq!(zero_flat(&m).labels(), &["l".to_string()]);
        let f = StrongMap::identity(&m);
        let z = zero_flat_map(&f);
        assert_eq!(z.table, vec![0]);
    }

    #[test]
    fn free_extension_examples() {
        let g = ground(&["a", "b"]);
        let m = Matroid::free(g.clone());
        let x = free_extension(&m, "d").unwrap();
        let xg = x.ground().clone();
        let mut expect: Vec<Subset> =
            [vec![], vec!["a"], vec!["b"], vec!["d"], vec!["a", "b", "d"]]
                .iter()
                .map(|ls| xg.subset_of_labels(ls).unwrap())
                .collect();
        expect.sort_by_key(|s| s.canon_key());
        assert_eq!(x.flats(), &expect[..]);

        let c = Matroid::cofree(g);
        let xc = free_extension(&c, "p").unwrap();
        assert_eq!(xc.rank(), 0);
        assert_eq!(xc.loops(), xc.full());
    }

    #[test]
    fn truncation_of_free_is_uniform() {
        let g = ground(&["a", "b", "c"]);
        let t = truncation(&Matroid::free(g.clone())).unwrap();
        assert_eq!(t, Matroid::uniform(g.clone(), 2));
        assert!(matches!(
            truncation(&Matroid::cofree(g)),
            Err(ConstructError::RankZeroTruncation)
        ));
        // Rank-table oracle: truncation caps the rank at rank − 1.
        let m = Matroid::uniform(ground(&["a", "b", "c", "d"]), 3);
        let t = truncation(&m).unwrap();
        for x in m.ground().subsets() {
            assert_eq!(t.rank_of(x), m.rank_of(x).min(m.rank() - 1));
        }
    }

    #[test]
    fn erection_examples() {
        let g = ground(&["a", "b", "c"]);
        let u23 = Matroid::uniform(g.clone(), 2);
        assert_eq!(free_erection(&u23).unwrap(), Matroid::free(g.clone()));
        let f = Matroid::free(g);
        assert_eq!(free_erection(&f).unwrap(), f);
    }

    #[test]
    fn union_and_intersection_fixtures() {
        // A ∪ B for A = B with flats {{•},{•,0,1,2}}.
        let g = ground(&["•", "0", "1", "2"]);
        let a = from_flats(&g, &[&["•"], &["•", "0", "1", "2"]]);
        let u = union(&a, &a).unwrap();
        let expect = from_flats(
            &g,
            &[
                &["•"],
                &["•", "0"],
                &["•", "1"],
                &["•", "2"],
                &["•", "0", "1", "2"],
            ],
        );
        assert_eq!(u, expect);

        // A ∩ B for A = B with flats {∅,{1,2}}.
        let g2 = ground(&["1", "2"]);
        let a2 = from_flats(&g2, &[&[], &["1", "2"]]);
        let i = intersection(&a2, &a2).unwrap();
        assert_eq!(i, Matroid::cofree(g2.clone()));

        // M ∪ C(|M|) = M.
        let m = Matroid::uniform(ground(&["x", "y", "z"]), 2);
        assert_eq!(union(&m, &Matroid::cofree(m.ground().clone())).unwrap(), m);

        let other = Matroid::free(ground(&["q"]));
        assert!(matches!(
            union(&m, &other),
            Err(ConstructError::GroundMismatch(_))
        ));
    }

    #[test]
    fn parallel_connection_of_parallel_pairs() {
        let g = ground(&["a", "x"]);
        let u12 = from_flats(&g, &[&[], &["a", "x"]]);
        let b1 = BipointedMatroid::by_label(u12.clone(), "a").unwrap();
        let g2 = ground(&["a", "y"]);
        let u12b = from_flats(&g2, &[&[], &["a", "y"]]);
        let b2 = BipointedMatroid::by_label(u12b, "a").unwrap();
        let p = parallel_connection(&b1, &b2).unwrap();
        assert_eq!(p.base.n(), 3);
        assert_eq!(p.base.rank(), 1);
        assert_eq!(p.base.flats().len(), 2);

        // Gluing on a one-element free matroid changes nothing.
        let unit = BipointedMatroid::by_label(Matroid::free(ground(&["a"])), "a").unwrap();
        let q = parallel_connection(&b1, &unit).unwrap();
        assert_eq!(q.base, u12);
    }

    #[test]
    fn series_connection_has_strong_projections() {
        let g = ground(&["a", "x"]);
        let m = BipointedMatroid::by_label(Matroid::free(g), "a").unwrap();
        let g2 = ground(&["a", "y"]);
        let n = BipointedMatroid::by_label(Matroid::uniform(g2, 1), "a").unwrap();
        let s = series_connection(&m, &n).unwrap();
        assert!(s.proj_left.classify().epi);
        assert!(s.proj_right.classify().epi);
    }

    #[test]
    fn marked_functors_commute() {
        let g = ground(&["a", "b", "c", "d"]);
        let m = Matroid::uniform(g.clone(), 2);
        let z1 = g.subset_of_labels(&["a"]).unwrap();
        let z2 = g.subset_of_labels(&["b"]).unwrap();
        let mm = MarkedMatroid::new(m, vec![z1, z2]).unwrap();
        let dc = marked_contract(&marked_delete(&MarkedMatroid {
            base: mm.base.clone(),
            marks: vec![z2, z1],
        }));
        let cd = marked_delete(&marked_contract(&mm));
        assert_eq!(dc.base, cd.base);
        assert!(matches!(
            MarkedMatroid::new(dc.base.clone(), vec![Subset(0b1), Subset(0b1)]),
            Err(ConstructError::OverlappingInstruction(_))
        ));
    }
}

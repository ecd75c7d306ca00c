//! Strong maps: the three equivalent characterizations, composition,
//! exhaustive hom-set enumeration with pruning, and morphism classification.

use std::collections::HashSet;

use thiserror::Error;

use crate::ground::Subset;
use crate::matroid::{Matroid, PointedMatroid};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum MapsError {
    #[error("domain/codomain mismatch: {0}")]
    DomainMismatch(String),
    #[error("table has {got} entries, domain has {want} elements")]
    TableArity { got: usize, want: usize },
    #[error("table entry {0} out of codomain range")]
    TableRange(usize),
    #[error("not a strong map: preimage of {0} is not a flat")]
    NotStrong(String),
    #[error("pointed map must send point to point")]
    PointViolation,
    #[error("hom search needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}

/// The three equivalent strong-map criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrongCriterion {
    /// Inverse images of flats are flats.
    FlatPreimage,
    /// rank(f(Y)) − rank(f(X)) ≤ rank(Y) − rank(X) for all X ⊆ Y.
    RankDifference,
    /// X ↦ clos(f(X)) preserves joins (including the empty join) and sends
    /// height-1 flats to flats of height at most 1.
    Lattice,
}

/// Apply a function table to a subset of the domain ground.
pub fn image_of(table: &[usize], x: Subset) -> Subset {
    let mut out = Subset::EMPTY;
    for i in x.iter() {
        out = out.with(table[i]);
    }
    out
}

/// Preimage of a codomain subset under a function table.
pub fn preimage_of(table: &[usize], n_dom: usize, y: Subset) -> Subset {
    let mut out = Subset::EMPTY;
    for i in 0..n_dom {
        if y.contains(table[i]) {
            out = out.with(i);
        }
    }
    out
}

/// Test a total function between ground sets against one of the three
/// strong-map criteria. All three agree on every input.
pub fn is_strong(table: &[usize], dom: &Matroid, cod: &Matroid, criterion: StrongCriterion) -> bool {
    debug_assert_eq!(table.len(), dom.n());
    match criterion {
        StrongCriterion::FlatPreimage => cod
            .flats()
            .iter()
            .all(|g| dom.is_flat(preimage_of(table, dom.n(), *g))),
        StrongCriterion::RankDifference => {
            let n = dom.n();
            let size = 1usize << n;
            for y in 0..size {
                let ys = Subset(y as u16);
                let ry = dom.rank_of(ys) as isize;
                let rfy = cod.rank_of(image_of(table, ys)) as isize;
                // Iterate X over submasks of Y.
                let mut x = y;
                loop {
                    let xs = Subset(x as u16);
                    let rx = dom.rank_of(xs) as isize;
                    let rfx = cod.rank_of(image_of(table, xs)) as isize;
                    if rfy - rfx > ry - rx {
                        return false;
                    }
                    if x == 0 {
                        break;
                    }
                    x = (x - 1) & y;
                }
            }
            true
        }
        StrongCriterion::Lattice => {
            let phi = |f: Subset| cod.closure(image_of(table, f));
            // Empty join: bottom goes to bottom.
            if phi(dom.loops()) != cod.loops() {
                return false;
            }
            // Height-1 flats land at height ≤ 1.
            for f in dom.flats() {
                if dom.rank_of(*f) == 1 && cod.rank_of(phi(*f)) > 1 {
                    return false;
                }
            }
            // Binary joins.
            for (i, f) in dom.flats().iter().enumerate() {
                for g in &dom.flats()[i..] {
                    let join = dom.closure(f.union(*g));
                    let expect = cod.closure(phi(*f).union(phi(*g)));
                    if phi(join) != expect {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// A validated strong map between matroids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongMap {
    dom: Matroid,
    cod: Matroid,
    table: Vec<usize>,
    pointed: bool,
}

impl StrongMap {
    pub fn new(dom: Matroid, cod: Matroid, table: Vec<usize>) -> Result<StrongMap, MapsError> {
        if table.len() != dom.n() {
            return Err(MapsError::TableArity {
                got: table.len(),
                want: dom.n(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= cod.n()) {
            return Err(MapsError::TableRange(bad));
        }
        for g in cod.flats() {
            let pre = preimage_of(&table, dom.n(), *g);
            if !dom.is_flat(pre) {
                return Err(MapsError::NotStrong(cod.ground().render(*g)));
            }
        }
        Ok(StrongMap {
            dom,
            cod,
            table,
            pointed: false,
        })
    }

    /// Build from labels: `pairs` maps domain labels to codomain labels.
    pub fn from_labels(
        dom: Matroid,
        cod: Matroid,
        pairs: &[(&str, &str)],
    ) -> Result<StrongMap, MapsError> {
        let mut table = vec![usize::MAX; dom.n()];
        for (a, b) in pairs {
            let i = dom
                .ground()
                .index_of(a)
                .ok_or_else(|| MapsError::DomainMismatch(format!("no domain label {a:?}")))?;
            let j = cod
                .ground()
                .index_of(b)
                .ok_or_else(|| MapsError::DomainMismatch(format!("no codomain label {b:?}")))?;
            table[i] = j;
        }
        if table.iter().any(|&v| v == usize::MAX) {
            return Err(MapsError::TableArity {
                got: pairs.len(),
                want: dom.n(),
            });
        }
        StrongMap::new(dom, cod, table)
    }

    pub fn new_pointed(
        dom: &PointedMatroid,
        cod: &PointedMatroid,
        table: Vec<usize>,
    ) -> Result<StrongMap, MapsError> {
        if table.get(dom.point).copied() != Some(cod.point) {
            return Err(MapsError::PointViolation);
        }
        let mut f = StrongMap::new(dom.base.clone(), cod.base.clone(), table)?;
        f.pointed = true;
        Ok(f)
    }

    pub fn identity(m: &Matroid) -> StrongMap {
        StrongMap {
            dom: m.clone(),
            cod: m.clone(),
            table: (0..m.n()).collect(),
            pointed: false,
        }
    }

    pub fn dom(&self) -> &Matroid {
        &self.dom
    }

    pub fn cod(&self) -> &Matroid {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn image_subset(&self, x: Subset) -> Subset {
        image_of(&self.table, x)
    }

    pub fn preimage_subset(&self, y: Subset) -> Subset {
        preimage_of(&self.table, self.dom.n(), y)
    }

    pub fn image(&self) -> Subset {
        self.image_subset(self.dom.full())
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.dom.n()
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.cod.full()
    }

    /// Composition g∘f; the result is re-validated, not assumed strong.
    pub fn compose(g: &StrongMap, f: &StrongMap) -> Result<StrongMap, MapsError> {
        if f.cod != g.dom {
            return Err(MapsError::DomainMismatch(
                "cod of inner map differs from dom of outer map".into(),
            ));
        }
        let table: Vec<usize> = f.table.iter().map(|&i| g.table[i]).collect();
        let mut h = StrongMap::new(f.dom.clone(), g.cod.clone(), table)?;
        h.pointed = f.pointed && g.pointed;
        Ok(h)
    }

    pub fn classify(&self) -> MorphismClass {
        let mono = self.is_injective();
        let epi = self.is_surjective();
        let flats_to_flats = self
            .dom
            .flats()
            .iter()
            .all(|f| self.cod.is_flat(self.image_subset(*f)));
        let iso = mono && epi && flats_to_flats;
        let embedding = mono
            && self
                .dom
                .ground()
                .subsets()
                .all(|x| self.dom.rank_of(x) == self.cod.rank_of(self.image_subset(x)));
        let quotient = mono && epi;
        MorphismClass {
            mono,
            epi,
            iso,
            embedding,
            contraction_shaped: self.is_contraction_shaped(),
            lattice_preserving: self.is_lattice_preserving(),
            quotient,
        }
    }

    /// True when the induced flat map F ↦ clos(f(F)) is a lattice
    /// isomorphism between the flat lattices.
    pub fn is_lattice_preserving(&self) -> bool {
        let images: Vec<Subset> = self
            .dom
            .flats()
            .iter()
            .map(|f| self.cod.closure(self.image_subset(*f)))
            .collect();
        let distinct: HashSet<Subset> = images.iter().copied().collect();
        if distinct.len() != self.dom.flats().len() || distinct.len() != self.cod.flats().len() {
            return false;
        }
        for (i, f) in self.dom.flats().iter().enumerate() {
            for (j, g) in self.dom.flats().iter().enumerate() {
                if f.is_subset_of(*g) != images[i].is_subset_of(images[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// True when the codomain is exactly dom/Z for Z the labels missing from
    /// the codomain, and the map is the canonical contraction: identity on
    /// kept labels, Z sent to loops of the quotient.
    pub fn is_contraction_shaped(&self) -> bool {
        let dg = self.dom.ground();
        let cg = self.cod.ground();
        let mut z = Subset::EMPTY;
        let mut lift = vec![usize::MAX; cg.len()];
        for (j, label) in cg.labels().iter().enumerate() {
            match dg.index_of(label) {
                Some(i) => lift[j] = i,
                None => return false,
            }
        }
        for (i, label) in dg.labels().iter().enumerate() {
            match cg.index_of(label) {
                Some(j) => {
                    if self.table[i] != j {
                        return false;
                    }
                }
                None => z = z.with(i),
            }
        }
        let cod_loops = self.cod.loops();
        for i in z.iter() {
            if !cod_loops.contains(self.table[i]) {
                return false;
            }
        }
        let rz = self.dom.rank_of(z);
        for y in self.cod.ground().subsets() {
            let mut lifted = z;
            for j in y.iter() {
                lifted = lifted.with(lift[j]);
            }
            if self.cod.rank_of(y) + rz != self.dom.rank_of(lifted) {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismClass {
    pub mono: bool,
    pub epi: bool,
    pub iso: bool,
    pub embedding: bool,
    pub contraction_shaped: bool,
    pub lattice_preserving: bool,
    pub quotient: bool,
}

/// Options for hom-set enumeration.
#[derive(Debug, Clone)]
pub struct HomOptions {
    /// Forced assignments by domain index.
    pub constraint: Vec<Option<usize>>,
    /// Maximum number of candidate functions |cod|^|dom| accepted.
    pub budget: u128,
}

impl Default for HomOptions {
    fn default() -> Self {
        HomOptions {
            constraint: Vec::new(),
            budget: 100_000_000,
        }
    }
}

impl HomOptions {
    pub fn with_constraint(mut self, constraint: Vec<Option<usize>>) -> Self {
        self.constraint = constraint;
        self
    }
}

struct HomSearch<'a> {
    dom: &'a Matroid,
    cod: &'a Matroid,
    constraint: Vec<Option<usize>>,
    /// traces[k] = set of flat masks restricted to the first k elements.
    traces: Vec<HashSet<u16>>,
    /// preimage-so-far per codomain flat.
    partial: Vec<u16>,
    table: Vec<usize>,
}

impl<'a> HomSearch<'a> {
    fn new(dom: &'a Matroid, cod: &'a Matroid, constraint: Vec<Option<usize>>) -> Self {
        let n = dom.n();
        let mut traces: Vec<HashSet<u16>> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mask = Subset::full(k).0;
            traces.push(dom.flats().iter().map(|f| f.0 & mask).collect());
        }
        HomSearch {
            dom,
            cod,
            constraint,
            traces,
            partial: vec![0u16; cod.flats().len()],
            table: vec![0usize; n],
        }
    }

    fn run(&mut self, k: usize, sink: &mut dyn FnMut(&[usize])) {
        let n = self.dom.n();
        if k == n {
            sink(&self.table);
            return;
        }
        let choices: Vec<usize> = match self.constraint.get(k).copied().flatten() {
            Some(v) => vec![v],
            None => (0..self.cod.n()).collect(),
        };
        for v in choices {
            self.table[k] = v;
            let mut ok = true;
            let mut touched = 0usize;
            for (gi, g) in self.cod.flats().iter().enumerate() {
                let before = self.partial[gi];
                let after = if g.contains(v) {
                    before | (1 << k)
                } else {
                    before
                };
                self.partial[gi] = after;
                touched = gi + 1;
                if !self.traces[k + 1].contains(&after) {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.run(k + 1, sink);
            }
            // Roll back the partial preimages we modified.
            for gi in 0..touched {
                self.partial[gi] &= !(1u16 << k);
            }
        }
    }
}

fn check_budget(dom: &Matroid, cod: &Matroid, opts: &HomOptions) -> Result<(), MapsError> {
    let needed: u128 = if dom.n() == 0 {
        1
    } else {
        (cod.n() as u128).checked_pow(dom.n() as u32).unwrap_or(u128::MAX)
    };
    if needed > opts.budget {
        return Err(MapsError::BudgetExceeded {
            needed,
            budget: opts.budget,
        });
    }
    Ok(())
}

/// Enumerate every strong map dom → cod (optionally constrained), in
/// deterministic lexicographic order of the function table.
pub fn enumerate_homs(
    dom: &Matroid,
    cod: &Matroid,
    opts: &HomOptions,
) -> Result<Vec<StrongMap>, MapsError> {
    check_budget(dom, cod, opts)?;
    let mut out = Vec::new();
    let mut constraint = opts.constraint.clone();
    constraint.resize(dom.n(), None);
    if dom.n() > 0 && cod.n() == 0 {
        return Ok(out);
    }
    let mut search = HomSearch::new(dom, cod, constraint);
    search.run(0, &mut |table| {
        let f = StrongMap {
            dom: dom.clone(),
            cod: cod.clone(),
            table: table.to_vec(),
            pointed: false,
        };
        debug_assert!(is_strong(table, dom, cod, StrongCriterion::FlatPreimage));
        out.push(f);
    });
    Ok(out)
}

/// Count strong maps dom → cod without materializing them.
pub fn count_homs(dom: &Matroid, cod: &Matroid, opts: &HomOptions) -> Result<u64, MapsError> {
    check_budget(dom, cod, opts)?;
    if dom.n() > 0 && cod.n() == 0 {
        return Ok(0);
    }
    let mut constraint = opts.constraint.clone();
    constraint.resize(dom.n(), None);
    let mut count = 0u64;
    let mut search = HomSearch::new(dom, cod, constraint);
    search.run(0, &mut |_| count += 1);
    Ok(count)
}

/// Enumerate pointed strong maps between pointed matroids.
pub fn enumerate_pointed_homs(
    dom: &PointedMatroid,
    cod: &PointedMatroid,
    opts: &HomOptions,
) -> Result<Vec<StrongMap>, MapsError> {
    let mut constraint = opts.constraint.clone();
    constraint.resize(dom.base.n(), None);
    constraint[dom.point] = Some(cod.point);
    let inner = HomOptions {
        constraint,
        budget: opts.budget,
    };
    let mut maps = enumerate_homs(&dom.base, &cod.base, &inner)?;
    for m in &mut maps {
        m.pointed = true;
    }
    Ok(maps)
}

pub fn count_pointed_homs(
    dom: &PointedMatroid,
    cod: &PointedMatroid,
    opts: &HomOptions,
) -> Result<u64, MapsError> {
    let mut constraint = opts.constraint.clone();
    constraint.resize(dom.base.n(), None);
    constraint[dom.point] = Some(cod.point);
    let inner = HomOptions {
        constraint,
        budget: opts.budget,
    };
    count_homs(&dom.base, &cod.base, &inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{GroundSet, SubsetFamily};

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

    /// The matroid on {0,1,2} with flats {{0},{0,1,2}}.
    fn loop_with_parallel_pair() -> Matroid {
        let g = ground(&["0", "1", "2"]);
        from_flats(&g, &[&["0"], &["0", "1", "2"]])
    }

    #[test]
    fn swap_map_is_strong() {
        let m = loop_with_parallel_pair();
        let table = vec![0, 2, 1];
        for c in [
            StrongCriterion::FlatPreimage,
            StrongCriterion::RankDifference,
            StrongCriterion::Lattice,
        ] {
            assert!(is_strong(&table, &m, &m, c));
        }
        let f = StrongMap::new(m.clone(), m.clone(), table).unwrap();
        let class = f.classify();
        assert!(class.iso);
    }

    #[test]
    fn identity_is_strong_everywhere() {
        let m = loop_with_parallel_pair();
        let id = StrongMap::identity(&m);
        let c = id.classify();
        assert!(c.mono && c.epi && c.iso && c.embedding && c.quotient && c.lattice_preserving);
        assert!(c.contraction_shaped); // contraction by ∅
    }

    #[test]
    fn non_strong_map_rejected() {
        // a↦x, b↦y from U_{1,2} to F({x,y}): preimage of {x} is {a}, not a
        // flat of U_{1,2}.
        let g = ground(&["a", "b"]);
        let u12 = from_flats(&g, &[&[], &["a", "b"]]);
        let free = Matroid::free(ground(&["x", "y"]));
        let table = vec![0, 1];
        for c in [
            StrongCriterion::FlatPreimage,
            StrongCriterion::RankDifference,
            StrongCriterion::Lattice,
        ] {
            assert!(!is_strong(&table, &u12, &free, c));
        }
        assert!(StrongMap::new(u12, free, table).is_err());
    }

    #[test]
    fn composition_identity_laws() {
        let m = loop_with_parallel_pair();
        let f = StrongMap::new(m.clone(), m.clone(), vec![0, 2, 1]).unwrap();
        let id = StrongMap::identity(&m);
        assert_eq!(StrongMap::compose(&id, &f).unwrap(), f);
        assert_eq!(StrongMap::compose(&f, &id).unwrap(), f);
    }

    #[test]
    fn terminal_and_initial_homs() {
        let term = {
            let g = ground(&["l"]);
            from_flats(&g, &[&["l"]])
        };
        let initial = {
            let g = GroundSet::empty();
            let fam = SubsetFamily::new(g.clone(), [Subset::EMPTY]);
            Matroid::from_flats(g, &fam).unwrap()
        };
        let m = loop_with_parallel_pair();
        assert_eq!(count_homs(&m, &term, &HomOptions::default()).unwrap(), 1);
        assert_eq!(count_homs(&initial, &m, &HomOptions::default()).unwrap(), 1);
        assert_eq!(
            count_homs(&initial, &initial, &HomOptions::default()).unwrap(),
            1
        );
    }

    #[test]
    fn free_pointed_hom_count_is_8() {
        // F(M) for M on {•,a,b,c}: free pointed matroid; N with flats
        // {{•},{•,e}}: all 2^3 functions are pointed strong maps.
        let g = ground(&["p", "a", "b", "c"]);
        let free_pointed = from_flats(
            &g,
            &[
                &["p"],
                &["p", "a"],
                &["p", "b"],
                &["p", "c"],
                &["p", "a", "b"],
                &["p", "a", "c"],
                &["p", "b", "c"],
                &["p", "a", "b", "c"],
            ],
        );
        let gn = ground(&["p", "e"]);
        let n = from_flats(&gn, &[&["p"], &["p", "e"]]);
        let dom = PointedMatroid::by_label(free_pointed, "p").unwrap();
        let cod = PointedMatroid::by_label(n, "p").unwrap();
        assert_eq!(
            count_pointed_homs(&dom, &cod, &HomOptions::default()).unwrap(),
            8
        );
    }

    #[test]
    fn quotient_but_not_iso() {
        let g = ground(&["a", "b", "c"]);
        let free = Matroid::free(g.clone());
        let u23 = Matroid::uniform(g, 2);
        let f = StrongMap::new(free, u23, vec![0, 1, 2]).unwrap();
        let c = f.classify();
        assert!(c.quotient && !c.iso);
        // Flat-image oracle: {a,b} is a flat of the free matroid whose image
        // is not a flat of U_{2,3}.
        assert!(!f.cod().is_flat(f.image_subset(Subset(0b011))));
    }

    #[test]
    fn budget_guard() {
        let g = GroundSet::numbered(10);
        let m = Matroid::free(g);
        let opts = HomOptions {
            budget: 100,
            ..Default::default()
        };
        assert!(matches!(
            count_homs(&m, &m, &opts),
            Err(MapsError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn hom_count_invariant_under_relabeling() {
        let m = loop_with_parallel_pair();
        let g = ground(&["a", "b", "c"]);
        let n = Matroid::uniform(g, 2);
        let base = count_homs(&m, &n, &HomOptions::default()).unwrap();
        for perm in crate::enumerate::permutations(3) {
            let pm = m.permute(&perm);
            let pn = n.permute(&perm);
            assert_eq!(count_homs(&pm, &pn, &HomOptions::default()).unwrap(), base);
        }
    }

    #[test]
    fn constrained_enumeration_is_lexicographic_and_extending() {
        let m = loop_with_parallel_pair();
        let opts =
            HomOptions::default().with_constraint(vec![None, Some(1), None]);
        let maps = enumerate_homs(&m, &m, &opts).unwrap();
        assert!(!maps.is_empty());
        let mut prev: Option<Vec<usize>> = None;
        for f in &maps {
            assert_eq!(f.apply(1), 1);
            if let Some(p) = prev {
                assert!(p < f.table().to_vec());
            }
            prev = Some(f.table().to_vec());
        }
    }
}

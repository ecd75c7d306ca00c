//! Linear and graphic matroids: column matroids over prime fields and the
//! rationals, strong maps induced by linear maps, the strong-versus-linear
//! comparison, cycle matroids of undirected graphs, and the scalar test for
//! equal lattice actions.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ground::{GroundSet, Subset};
use crate::maps::StrongMap;
use crate::matroid::Matroid;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum RepresentError {
    #[error("columns must share one dimension")]
    DimensionMismatch,
    #[error("{0} is not a prime modulus ≤ 13")]
    BadModulus(u16),
    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
    #[error("support violation: {0}")]
    SupportViolation(String),
    #[error("assignment is not linear: {0}")]
    NotLinear(String),
    #[error("bad input: {0}")]
    BadInput(String),
}

pub const PRIMES: [u16; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Gf(u16),
    Rationals,
}

impl FieldSpec {
    pub fn gf(p: u16) -> Result<FieldSpec, RepresentError> {
        if PRIMES.contains(&p) {
            Ok(FieldSpec::Gf(p))
        } else {
            Err(RepresentError::BadModulus(p))
        }
    }
}

// --- exact arithmetic helpers ----------------------------------------------

fn gf_inv(p: u16, a: u16) -> u16 {
    // Fermat: a^(p-2) mod p.
    let mut acc = 1u32;
    let mut base = a as u32 % p as u32;
    let mut e = p as u32 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u32;
        }
        base = base * base % p as u32;
        e >>= 1;
    }
    acc as u16
}

/// Row-reduce a dim × k matrix given by columns; returns the rank.
fn gf_rank(p: u16, dim: usize, cols: &[&[u16]]) -> usize {
    let k = cols.len();
    let mut m: Vec<Vec<u16>> = (0..dim)
        .map(|r| cols.iter().map(|c| c[r] % p).collect())
        .collect();
    let mut rank = 0;
    for col in 0..k {
        let pivot = (rank..dim).find(|&r| m[r][col] != 0);
        if let Some(pr) = pivot {
            m.swap(rank, pr);
            let inv = gf_inv(p, m[rank][col]);
            for c in col..k {
                m[rank][c] = (m[rank][c] as u32 * inv as u32 % p as u32) as u16;
            }
            for r in 0..dim {
                if r != rank && m[r][col] != 0 {
                    let factor = m[r][col] as u32;
                    for c in col..k {
                        let v = (m[r][c] as u32 + (p as u32 - factor % p as u32) * m[rank][c] as u32
                            % p as u32)
                            % p as u32;
                        m[r][c] = v as u16;
                    }
                }
            }
            rank += 1;
            if rank == dim {
                break;
            }
        }
    }
    rank
}

/// Kernel basis of the dim × k column matrix over GF(p): vectors λ with
/// Σ λᵢ colᵢ = 0.
fn gf_kernel(p: u16, dim: usize, cols: &[&[u16]]) -> Vec<Vec<u16>> {
    let k = cols.len();
    let mut m: Vec<Vec<u16>> = (0..dim)
        .map(|r| cols.iter().map(|c| c[r] % p).collect())
        .collect();
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        let pivot = (rank..dim).find(|&r| m[r][col] != 0);
        if let Some(pr) = pivot {
            m.swap(rank, pr);
            let inv = gf_inv(p, m[rank][col]);
            for c in 0..k {
                m[rank][c] = (m[rank][c] as u32 * inv as u32 % p as u32) as u16;
            }
            for r in 0..dim {
                if r != rank && m[r][col] != 0 {
                    let factor = m[r][col] as u32;
                    for c in 0..k {
                        let v = (m[r][c] as u32 + (p as u32 - factor % p as u32) * m[rank][c] as u32
                            % p as u32)
                            % p as u32;
                        m[r][c] = v as u16;
                    }
                }
            }
            pivot_col_of_row.push(col);
            rank += 1;
        }
    }
    let pivots: Vec<usize> = pivot_col_of_row;
    let mut basis = Vec::new();
    for free in 0..k {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u16; k];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            // pivot var = -m[row][free]
            v[pc] = (p - m[row][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

fn rat_rank(dim: usize, cols: &[&[BigRational]]) -> usize {
    let k = cols.len();
    let mut m: Vec<Vec<BigRational>> = (0..dim)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut rank = 0;
    for col in 0..k {
        let pivot = (rank..dim).find(|&r| !m[r][col].is_zero());
        if let Some(pr) = pivot {
            m.swap(rank, pr);
            let inv = m[rank][col].clone();
            for c in col..k {
                let v = &m[rank][c] / &inv;
                m[rank][c] = v;
            }
            for r in 0..dim {
                if r != rank && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in col..k {
                        let v = &m[r][c] - &factor * &m[rank][c];
                        m[r][c] = v;
                    }
                }
            }
            rank += 1;
            if rank == dim {
                break;
            }
        }
    }
    rank
}

// --- linear representations -------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Columns {
    Gf(Vec<Vec<u16>>),
    Rat(Vec<Vec<BigRational>>),
}

/// An ordered multiset of vectors of a fixed dimension with column labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearRep {
    pub field: FieldSpec,
    dim: usize,
    columns: Columns,
    labels: GroundSet,
}

impl LinearRep {
    pub fn gf(
        p: u16,
        columns: Vec<Vec<i64>>,
        labels: Vec<String>,
    ) -> Result<LinearRep, RepresentError> {
        let field = FieldSpec::gf(p)?;
        let dim = columns.first().map(|c| c.len()).unwrap_or(0);
        if columns.iter().any(|c| c.len() != dim) {
            return Err(RepresentError::DimensionMismatch);
        }
        let cols: Vec<Vec<u16>> = columns
            .iter()
            .map(|c| c.iter().map(|&x| (x.rem_euclid(p as i64)) as u16).collect())
            .collect();
        let labels =
            GroundSet::new(labels).map_err(|e| RepresentError::BadInput(e.to_string()))?;
        if labels.len() != cols.len() {
            return Err(RepresentError::BadInput(
                "labels and columns disagree in length".into(),
            ));
        }
        Ok(LinearRep {
            field,
            dim,
            columns: Columns::Gf(cols),
            labels,
        })
    }

    pub fn rationals(
        columns: Vec<Vec<BigRational>>,
        labels: Vec<String>,
    ) -> Result<LinearRep, RepresentError> {
        let dim = columns.first().map(|c| c.len()).unwrap_or(0);
        if columns.iter().any(|c| c.len() != dim) {
            return Err(RepresentError::DimensionMismatch);
        }
        let labels =
            GroundSet::new(labels).map_err(|e| RepresentError::BadInput(e.to_string()))?;
        if labels.len() != columns.len() {
            return Err(RepresentError::BadInput(
                "labels and columns disagree in length".into(),
            ));
        }
        Ok(LinearRep {
            field: FieldSpec::Rationals,
            dim,
            columns: Columns::Rat(columns),
            labels,
        })
    }

    /// The whole vector space GF(p)^dim as columns, labelled by the numeric
    /// encoding Σ vᵢ pⁱ of each vector.
    pub fn full_space(p: u16, dim: usize) -> Result<LinearRep, RepresentError> {
        FieldSpec::gf(p)?;
        let count = (p as usize).pow(dim as u32);
        if count > crate::ground::MAX_GROUND {
            return Err(RepresentError::BadInput(format!(
                "|GF({p})^{dim}| = {count} exceeds the ground cap"
            )));
        }
        let mut columns = Vec::with_capacity(count);
        let mut labels = Vec::with_capacity(count);
        for code in 0..count {
            let mut v = Vec::with_capacity(dim);
            let mut rest = code;
            for _ in 0..dim {
                v.push((rest % p as usize) as i64);
                rest /= p as usize;
            }
            columns.push(v);
            labels.push(code.to_string());
        }
        LinearRep::gf(p, columns, labels)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &GroundSet {
        &self.labels
    }

    fn rank_of(&self, cols: Subset) -> usize {
        match &self.columns {
            Columns::Gf(cs) => {
                let p = match self.field {
                    FieldSpec::Gf(p) => p,
                    FieldSpec::Rationals => unreachable!(),
                };
                let sel: Vec<&[u16]> = cols.iter().map(|i| cs[i].as_slice()).collect();
                gf_rank(p, self.dim, &sel)
            }
            Columns::Rat(cs) => {
                let sel: Vec<&[BigRational]> = cols.iter().map(|i| cs[i].as_slice()).collect();
                rat_rank(self.dim, &sel)
            }
        }
    }

    /// Index of the first column equal to the given GF vector.
    fn find_gf_column(&self, v: &[u16]) -> Option<usize> {
        match &self.columns {
            Columns::Gf(cs) => cs.iter().position(|c| c == v),
            Columns::Rat(_) => None,
        }
    }
}

/// Column matroid: ground = column labels, rank = matrix rank of selected
/// columns (repeated vectors are parallel, the zero vector is a loop).
pub fn column_matroid(a: &LinearRep) -> Matroid {
    let size = 1usize << a.len();
    let table: Vec<u32> = (0..size)
        .map(|x| a.rank_of(Subset(x as u16)) as u32)
        .collect();
    Matroid::from_rank(a.labels.clone(), &table).expect("column ranks satisfy the rank axioms")
}

/// A linear map, either as a matrix (rows × cols = dim(B) × dim(A)) or as a
/// requested assignment of columns, which is checked for linearity.
#[derive(Debug, Clone)]
pub enum LinearMapSpec {
    Matrix(Vec<Vec<i64>>),
    /// table[i] = index of the target column for column i of the source.
    ColumnTable(Vec<usize>),
}

/// The strong map induced by a linear map between column representations.
/// The matrix must send every source column to some target column.
pub fn linear_strong_map(
    f: &LinearMapSpec,
    a: &LinearRep,
    b: &LinearRep,
) -> Result<StrongMap, RepresentError> {
    let (pa, cols_a) = match (&a.field, &a.columns) {
        (FieldSpec::Gf(p), Columns::Gf(cs)) => (*p, cs),
        _ => {
            return Err(RepresentError::UnsupportedField(
                "linear_strong_map works over GF(p)".into(),
            ))
        }
    };
    let cols_b = match (&b.field, &b.columns) {
        (FieldSpec::Gf(pb), Columns::Gf(cs)) if *pb == pa => cs,
        _ => {
            return Err(RepresentError::UnsupportedField(
                "source and target must share the field".into(),
            ))
        }
    };
    let table: Vec<usize> = match f {
        LinearMapSpec::Matrix(rows) => {
            if rows.len() != b.dim || rows.iter().any(|r| r.len() != a.dim) {
                return Err(RepresentError::DimensionMismatch);
            }
            let mat: Vec<Vec<u16>> = rows
                .iter()
                .map(|r| r.iter().map(|&x| x.rem_euclid(pa as i64) as u16).collect())
                .collect();
            let mut t = Vec::with_capacity(a.len());
            for (i, col) in cols_a.iter().enumerate() {
                let img: Vec<u16> = (0..b.dim)
                    .map(|r| {
                        let mut acc = 0u32;
                        for c in 0..a.dim {
                            acc = (acc + mat[r][c] as u32 * col[c] as u32) % pa as u32;
                        }
                        acc as u16
                    })
                    .collect();
                match b.find_gf_column(&img) {
                    Some(j) => t.push(j),
                    None => {
                        return Err(RepresentError::SupportViolation(format!(
                            "image of column {} is not a column of the target",
                            a.labels.label(i)
                        )))
                    }
                }
            }
            t
        }
        LinearMapSpec::ColumnTable(t) => {
            if t.len() != a.len() || t.iter().any(|&j| j >= b.len()) {
                return Err(RepresentError::BadInput("column table arity".into()));
            }
            // Linearity: every dependency among source columns must hold
            // among the assigned target columns.
            let sel_a: Vec<&[u16]> = cols_a.iter().map(|c| c.as_slice()).collect();
            let kernel = gf_kernel(pa, a.dim, &sel_a);
            for lambda in &kernel {
                for r in 0..b.dim {
                    let mut acc = 0u32;
                    for (i, &li) in lambda.iter().enumerate() {
                        acc = (acc + li as u32 * cols_b[t[i]][r] as u32) % pa as u32;
                    }
                    if acc != 0 {
                        return Err(RepresentError::NotLinear(
                            "assignment breaks a column dependency".into(),
                        ));
                    }
                }
            }
            t.clone()
        }
    };
    let dom = column_matroid(a);
    let cod = column_matroid(b);
    StrongMap::new(dom, cod, table)
        .map_err(|e| RepresentError::BadInput(format!("induced map fails validation: {e}")))
}

/// Strong self-maps versus linear self-maps of a column representation.
#[derive(Debug, Clone)]
pub struct StrongLinearReport {
    pub strong_count: usize,
    pub linear_count: usize,
    /// Tables of strong self-maps induced by no support-preserving linear map.
    pub strong_not_linear: Vec<Vec<usize>>,
}

/// Compare strong and linear self-maps of M(V). When V contains the zero
/// vector its column is held fixed (linear maps fix zero), so the counts are
/// over pointed self-maps.
pub fn strongness_vs_linearity_report(
    v: &LinearRep,
) -> Result<StrongLinearReport, RepresentError> {
    let (p, cols) = match (&v.field, &v.columns) {
        (FieldSpec::Gf(p), Columns::Gf(cs)) => (*p, cs),
        _ => {
            return Err(RepresentError::UnsupportedField(
                "report works over GF(p)".into(),
            ))
        }
    };
    let m = column_matroid(v);
    let zero_col = cols.iter().position(|c| c.iter().all(|&x| x == 0));
    let mut constraint = vec![None; v.len()];
    if let Some(z) = zero_col {
        constraint[z] = Some(z);
    }
    let opts = crate::maps::HomOptions::default().with_constraint(constraint);
    let strong_tables: Vec<Vec<usize>> = crate::maps::enumerate_homs(&m, &m, &opts)
        .map_err(|e| RepresentError::BadInput(e.to_string()))?
        .into_iter()
        .map(|f| f.table().to_vec())
        .collect();

    // All support-preserving linear self-maps of the span, as column tables.
    let d = v.dim;
    let entries = d * d;
    let total = (p as u128).pow(entries as u32);
    if total > 1 << 24 {
        return Err(RepresentError::BadInput(
            "dimension too large to enumerate linear maps".into(),
        ));
    }
    let mut linear_tables: Vec<Vec<usize>> = Vec::new();
    'mats: for code in 0..total {
        let mut rest = code;
        let mut mat = vec![vec![0u16; d]; d];
        for r in 0..d {
            for c in 0..d {
                mat[r][c] = (rest % p as u128) as u16;
                rest /= p as u128;
            }
        }
        let mut table = Vec::with_capacity(v.len());
        for col in cols.iter() {
            let img: Vec<u16> = (0..d)
                .map(|r| {
                    let mut acc = 0u32;
                    for c in 0..d {
                        acc = (acc + mat[r][c] as u32 * col[c] as u32) % p as u32;
                    }
                    acc as u16
                })
                .collect();
            match v.find_gf_column(&img) {
                Some(j) => table.push(j),
                None => continue 'mats,
            }
        }
        if !linear_tables.contains(&table) {
            linear_tables.push(table);
        }
    }

    let strong_not_linear: Vec<Vec<usize>> = strong_tables
        .iter()
        .filter(|t| !linear_tables.contains(t))
        .cloned()
        .collect();
    Ok(StrongLinearReport {
        strong_count: strong_tables.len(),
        linear_count: linear_tables.len(),
        strong_not_linear,
    })
}

/// Do two linear maps V → W (full spaces over GF(p)) act identically on the
/// lattice of subspaces, and if so by which scalar do they differ?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarTest {
    pub equal_lattice_action: bool,
    pub scalar: Option<u16>,
}

pub fn lattice_scalar_test(
    p: u16,
    dim_v: usize,
    dim_w: usize,
    f: &[Vec<i64>],
    g: &[Vec<i64>],
) -> Result<ScalarTest, RepresentError> {
    let v = LinearRep::full_space(p, dim_v)?;
    let w = LinearRep::full_space(p, dim_w)?;
    let fm = linear_strong_map(&LinearMapSpec::Matrix(f.to_vec()), &v, &w)?;
    let gm = linear_strong_map(&LinearMapSpec::Matrix(g.to_vec()), &v, &w)?;
    let mv = fm.dom();
    let mw = fm.cod();
    let equal_lattice_action = mv.flats().iter().all(|fl| {
        mw.closure(fm.image_subset(*fl)) == mw.closure(gm.image_subset(*fl))
    });
    let mut scalar = None;
    for beta in 0..p {
        let all = f.iter().zip(g.iter()).all(|(fr, gr)| {
            fr.iter().zip(gr.iter()).all(|(&fe, &ge)| {
                (fe.rem_euclid(p as i64) * beta as i64 - ge.rem_euclid(p as i64)).rem_euclid(p as i64)
                    == 0
            })
        });
        if all {
            scalar = Some(beta);
            break;
        }
    }
    Ok(ScalarTest {
        equal_lattice_action,
        scalar,
    })
}

// --- graphs ------------------------------------------------------------------

/// An undirected multigraph; a loop edge has both ends equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: (usize, usize),
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Graph, RepresentError> {
        let n = vertices.len();
        for e in &edges {
            if e.ends.0 >= n || e.ends.1 >= n {
                return Err(RepresentError::BadInput(format!(
                    "edge {} has an endpoint out of range",
                    e.id
                )));
            }
        }
        Ok(Graph { vertices, edges })
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    fn acyclic(&self, picked: Subset) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for i in picked.iter() {
            let (u, v) = self.edges[i].ends;
            let ru = find(&mut parent, u);
            let rv = find(&mut parent, v);
            if ru == rv {
                return false;
            }
            parent[ru] = rv;
        }
        true
    }
}

/// Cycle matroid: ground = edges, independent = acyclic edge sets.
pub fn cycle_matroid(g: &Graph) -> Result<Matroid, RepresentError> {
    let labels: Vec<String> = g.edges.iter().map(|e| e.id.clone()).collect();
    let ground = GroundSet::new(labels).map_err(|e| RepresentError::BadInput(e.to_string()))?;
    let members: Vec<Subset> = ground.subsets().filter(|s| g.acyclic(*s)).collect();
    let fam = crate::ground::SubsetFamily::new(ground.clone(), members);
    Matroid::from_independents(ground, &fam)
        .map_err(|e| RepresentError::BadInput(format!("forest family invalid: {e}")))
}

/// Is (fv, fe) a graph morphism: boundaries commute and edge images do not
/// gain endpoints.
pub fn is_graph_morphism(dom: &Graph, cod: &Graph, fv: &[usize], fe: &[usize]) -> bool {
    if fv.len() != dom.vertices.len() || fe.len() != dom.edges.len() {
        return false;
    }
    if fv.iter().any(|&v| v >= cod.vertices.len()) || fe.iter().any(|&e| e >= cod.edges.len()) {
        return false;
    }
    dom.edges.iter().enumerate().all(|(i, e)| {
        let (u, v) = e.ends;
        let img = &cod.edges[fe[i]];
        let mut want = [fv[u], fv[v]];
        want.sort_unstable();
        let mut got = [img.ends.0, img.ends.1];
        got.sort_unstable();
        want == got
    })
}

/// Rational parsing for matrix entries of the JSON interchange: integers or
/// "p/q" strings.
pub fn parse_rational(text: &str) -> Result<BigRational, RepresentError> {
    let parse_int = |s: &str| -> Result<num_bigint::BigInt, RepresentError> {
        s.trim()
            .parse::<num_bigint::BigInt>()
            .map_err(|_| RepresentError::BadInput(format!("bad rational {text:?}")))
    };
    match text.split_once('/') {
        Some((a, b)) => {
            let num = parse_int(a)?;
            let den = parse_int(b)?;
            if den.is_zero() {
                return Err(RepresentError::BadInput("zero denominator".into()));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(text)?)),
    }
}

/// Render a rational exactly, as `p/q` or a plain integer.
pub fn render_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else if x.denom().is_negative() {
        let y = -x.clone();
        format!("-{}", render_rational(&y))
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_columns_give_free_matroid() {
        let a = LinearRep::gf(
            2,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec!["a".into(), "b".into(), "c".into()],
        )
        .unwrap();
        let m = column_matroid(&a);
        assert_eq!(m, Matroid::free(m.ground().clone()));
    }

    #[test]
    fn three_columns_rank_two_is_u23() {
        // [[1,0,1],[0,1,1]] over GF(2), checked column subset by column
        // subset against a direct elimination oracle.
        let a = LinearRep::gf(
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            vec!["a".into(), "b".into(), "c".into()],
        )
        .unwrap();
        let m = column_matroid(&a);
        assert_eq!(m, Matroid::uniform(m.ground().clone(), 2));
    }

    #[test]
    fn full_gf2_line_is_pointed_free() {
        // Z2 = {0,1} as columns: loop 0, rank 1; pointed at 0 it is free.
        let v = LinearRep::full_space(2, 1).unwrap();
        let m = column_matroid(&v);
        assert_eq!(m.n(), 2);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.loops().len(), 1);
        let pm = crate::matroid::PointedMatroid::by_label(m, "0").unwrap();
        assert!(pm.is_free());
    }

    #[test]
    fn duplicated_column_is_parallel() {
        let a = LinearRep::gf(
            3,
            vec![vec![1, 0], vec![1, 0], vec![0, 1]],
            vec!["a".into(), "a2".into(), "b".into()],
        )
        .unwrap();
        let m = column_matroid(&a);
        let c = m.classify();
        assert!(c.parallel_classes.iter().any(|cl| cl.len() == 2));
    }

    #[test]
    fn projection_induces_strong_map() {
        // GF(2)² → GF(2) collapsing a coordinate, columns = all vectors.
        let v = LinearRep::full_space(2, 2).unwrap();
        let w = LinearRep::full_space(2, 1).unwrap();
        let f = LinearMapSpec::Matrix(vec![vec![1, 0]]);
        let sm = linear_strong_map(&f, &v, &w).unwrap();
        assert!(sm.classify().epi);
        // identity map path
        let idm = LinearMapSpec::Matrix(vec![vec![1, 0], vec![0, 1]]);
        let id = linear_strong_map(&idm, &v, &v).unwrap();
        assert!(id.classify().iso);
    }

    #[test]
    fn support_violation_detected() {
        let a = LinearRep::gf(3, vec![vec![1]], vec!["a".into()]).unwrap();
        let b = LinearRep::gf(3, vec![vec![1]], vec!["x".into()]).unwrap();
        // Doubling sends 1 to 2, which is not a column of b.
        let f = LinearMapSpec::Matrix(vec![vec![2]]);
        assert!(matches!(
            linear_strong_map(&f, &a, &b),
            Err(RepresentError::SupportViolation(_))
        ));
    }

    #[test]
    fn column_table_linearity_checked() {
        let v = LinearRep::full_space(2, 2).unwrap();
        // Swap of the two basis vectors extends linearly.
        // columns are 0=(0,0) 1=(1,0) 2=(0,1) 3=(1,1)
        let ok = LinearMapSpec::ColumnTable(vec![0, 2, 1, 3]);
        assert!(linear_strong_map(&ok, &v, &v).is_ok());
        // 1↦1, 2↦2, 3↦1 breaks the dependency 1+2+3=0.
        let bad = LinearMapSpec::ColumnTable(vec![0, 1, 2, 1]);
        assert!(matches!(
            linear_strong_map(&bad, &v, &v),
            Err(RepresentError::NotLinear(_))
        ));
    }

    #[test]
    fn strong_vs_linear_counts() {
        // Columns {0,1,2,3} in GF(5): the swap 1↔2 fixing 0 and 3 is strong
        // but no support-preserving linear map induces it.
        let v = LinearRep::gf(
            5,
            vec![vec![0], vec![1], vec![2], vec![3]],
            vec!["0".into(), "1".into(), "2".into(), "3".into()],
        )
        .unwrap();
        let rep = strongness_vs_linearity_report(&v).unwrap();
        let witness = vec![0usize, 2, 1, 3];
        assert!(rep.strong_not_linear.contains(&witness));
        assert!(rep.strong_count > rep.linear_count);
        // Scalars preserving {0,1,2,3} ⊂ GF(5) are 0 and 1.
        assert_eq!(rep.linear_count, 2);

        // V = Z2: every strong pointed self-map is linear.
        let z2 = LinearRep::full_space(2, 1).unwrap();
        let rep = strongness_vs_linearity_report(&z2).unwrap();
        assert!(rep.strong_not_linear.is_empty());
        assert_eq!(rep.strong_count, rep.linear_count);

        // Zero space: only the identity.
        let zero = LinearRep::full_space(2, 0).unwrap();
        let rep = strongness_vs_linearity_report(&zero).unwrap();
        assert_eq!(rep.strong_count, 1);
        assert_eq!(rep.linear_count, 1);
    }

    #[test]
    fn scalar_lattice_test() {
        let f = vec![vec![1, 0], vec![0, 1]];
        let g = vec![vec![2, 0], vec![0, 2]];
        let t = lattice_scalar_test(5, 2, 2, &f, &g).unwrap();
        assert!(t.equal_lattice_action);
        assert_eq!(t.scalar, Some(2));

        let t = lattice_scalar_test(5, 2, 2, &f, &f).unwrap();
        assert_eq!(t.scalar, Some(1));

        // Different kernels: projections onto different axes.
        let p1 = vec![vec![1, 0], vec![0, 0]];
        let p2 = vec![vec![0, 0], vec![0, 1]];
        let t = lattice_scalar_test(3, 2, 2, &p1, &p2).unwrap();
        assert!(!t.equal_lattice_action);
        assert_eq!(t.scalar, None);
    }

    #[test]
    fn cycle_matroid_examples() {
        // Triangle → U_{2,3}, checked against the spanning-tree oracle.
        let tri = Graph::new(
            vec!["u".into(), "v".into(), "w".into()],
            vec![
                Edge { id: "e1".into(), ends: (0, 1) },
                Edge { id: "e2".into(), ends: (1, 2) },
                Edge { id: "e3".into(), ends: (0, 2) },
            ],
        )
        .unwrap();
        let m = cycle_matroid(&tri).unwrap();
        assert_eq!(m, Matroid::uniform(m.ground().clone(), 2));

        // Path of 2 edges and 2 disjoint edges give equal matroids.
        let path = Graph::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Edge { id: "e1".into(), ends: (0, 1) },
                Edge { id: "e2".into(), ends: (1, 2) },
            ],
        )
        .unwrap();
        let disj = Graph::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                Edge { id: "e1".into(), ends: (0, 1) },
                Edge { id: "e2".into(), ends: (2, 3) },
            ],
        )
        .unwrap();
        assert_eq!(cycle_matroid(&path).unwrap(), cycle_matroid(&disj).unwrap());

        // A single self-loop is a one-loop matroid.
        let lp = Graph::new(
            vec!["a".into()],
            vec![Edge { id: "e".into(), ends: (0, 0) }],
        )
        .unwrap();
        let m = cycle_matroid(&lp).unwrap();
        assert_eq!(m.rank(), 0);
        assert_eq!(m.n(), 1);
    }

    #[test]
    fn graph_morphism_condition() {
        let path = Graph::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Edge { id: "e1".into(), ends: (0, 1) },
                Edge { id: "e2".into(), ends: (1, 2) },
            ],
        )
        .unwrap();
        let lp = Graph::new(
            vec!["x".into()],
            vec![Edge { id: "e".into(), ends: (0, 0) }],
        )
        .unwrap();
        // Collapsing everything onto the loop is a graph morphism.
        assert!(is_graph_morphism(&path, &lp, &[0, 0, 0], &[0, 0]));
        // Sending a loop to a non-loop is not.
        assert!(!is_graph_morphism(&lp, &path, &[0], &[0]));
    }

    #[test]
    fn coproduct_non_preservation_counts() {
        // |M(V ⊕ W)| = |V|·|W| ≠ |V| + |W| for nonzero V, W.
        let v = LinearRep::full_space(2, 1).unwrap();
        let vw = LinearRep::full_space(2, 2).unwrap();
        assert_eq!(vw.len(), v.len() * v.len());
        assert_ne!(vw.len(), v.len() + v.len());
    }

    #[test]
    fn rational_columns_and_parsing() {
        let half = parse_rational("1/2").unwrap();
        let a = LinearRep::rationals(
            vec![
                vec![BigRational::from_integer(1.into()), half.clone()],
                vec![BigRational::from_integer(2.into()), half.clone() + half],
            ],
            vec!["a".into(), "b".into()],
        )
        .unwrap();
        let m = column_matroid(&a);
        // Second column is not a multiple of the first: rank 2.
        assert_eq!(m.rank(), 2);
        assert_eq!(render_rational(&parse_rational("4/6").unwrap()), "2/3");
    }
}

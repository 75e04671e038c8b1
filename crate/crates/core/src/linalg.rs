//! Sparse exact linear algebra: row echelon forms, kernels and linear solving.
//!
//! Rows are sparse vectors of [`Scalar`]s ordered by column index. Reduction
//! is plain fraction-exact Gaussian elimination; with the `parallel` feature
//! (default) the per-pivot row updates run on a rayon pool, sequentially
//! otherwise. Both paths produce byte-identical results: parallelism only
//! ever touches disjoint rows in place.

use crate::scalar::{Field, Scalar};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A sparse vector: strictly increasing column indices, no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    pub entries: Vec<(u32, Scalar)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec { entries: vec![] }
    }

    /// Build from unsorted (index, scalar) pairs, merging duplicates.
    pub fn collect(mut pairs: Vec<(u32, Scalar)>) -> SparseVec {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(u32, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, s) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &s,
                _ => entries.push((i, s)),
            }
        }
        entries.retain(|(_, s)| !s.is_zero());
        SparseVec { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(u32, &Scalar)> {
        self.entries.first().map(|(i, s)| (*i, s))
    }

    pub fn get(&self, col: u32) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&col, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, factor: &Scalar) -> SparseVec {
        if factor.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, s)| (*i, s * factor))
                .collect(),
        }
    }

    /// self += factor * other, merging sorted entry lists.
    pub fn add_scaled(&mut self, other: &SparseVec, factor: &Scalar) {
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = self.entries.iter();
        let mut b = other.entries.iter();
        let mut na = a.next();
        let mut nb = b.next();
        loop {
            match (na, nb) {
                (Some((ia, sa)), Some((ib, sb))) => {
                    if ia < ib {
                        out.push((*ia, sa.clone()));
                        na = a.next();
                    } else if ib < ia {
                        out.push((*ib, sb * factor));
                        nb = b.next();
                    } else {
                        let s = sa + &(sb * factor);
                        if !s.is_zero() {
                            out.push((*ia, s));
                        }
                        na = a.next();
                        nb = b.next();
                    }
                }
                (Some((ia, sa)), None) => {
                    out.push((*ia, sa.clone()));
                    na = a.next();
                }
                (None, Some((ib, sb))) => {
                    out.push((*ib, sb * factor));
                    nb = b.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    /// Divide through so the leading coefficient becomes 1.
    fn make_monic(&mut self) {
        if let Some((_, lead)) = self.leading() {
            let inv = lead.invert().expect("leading coefficient is nonzero");
            if !inv.is_one() {
                for (_, s) in &mut self.entries {
                    *s = &*s * &inv;
                }
            }
        }
    }
}

/// Whether row updates run on the rayon pool or inline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateMode {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl UpdateMode {
    /// The crate-wide default: parallel when compiled in.
    pub fn auto() -> UpdateMode {
        #[cfg(feature = "parallel")]
        {
            UpdateMode::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            UpdateMode::Sequential
        }
    }
}

fn clear_column(rows: &mut [SparseVec], pivot: &SparseVec, col: u32, mode: UpdateMode) {
    let update = |row: &mut SparseVec| {
        if let Some(c) = row.get(col) {
            let factor = -c;
            row.add_scaled(pivot, &factor);
        }
    };
    match mode {
        UpdateMode::Sequential => rows.iter_mut().for_each(update),
        #[cfg(feature = "parallel")]
        UpdateMode::Parallel => rows.par_iter_mut().for_each(update),
    }
}

/// Rows in echelon form: strictly increasing leading columns, monic leads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<SparseVec>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.leading().unwrap().0).collect()
    }

    /// Reduce a vector against the rows; the residue has no support on pivot
    /// columns of rows it was reduced by.
    pub fn residue(&self, mut v: SparseVec) -> SparseVec {
        for row in &self.rows {
            let (col, _) = row.leading().unwrap();
            if let Some(c) = v.get(col) {
                let factor = -c;
                v.add_scaled(row, &factor);
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.residue(v).is_zero()
    }
}

/// Forward elimination only: returns rows with distinct monic leading columns,
/// sorted by leading column. Deterministic for any update mode.
pub fn echelon(rows: Vec<SparseVec>, mode: UpdateMode) -> Echelon {
    let mut pending: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_zero()).collect();
    let mut pivots: Vec<SparseVec> = vec![];
    while !pending.is_empty() {
        // Deterministic pivot: smallest leading column, earliest row on ties.
        let mut best = 0usize;
        for (k, row) in pending.iter().enumerate() {
            if row.leading().unwrap().0 < pending[best].leading().unwrap().0 {
                best = k;
            }
        }
        let mut pivot = pending.swap_remove(best);
        pivot.make_monic();
        let col = pivot.leading().unwrap().0;
        clear_column(&mut pending, &pivot, col, mode);
        pending.retain(|r| !r.is_zero());
        pivots.push(pivot);
    }
    pivots.sort_by_key(|r| r.leading().unwrap().0);
    Echelon { rows: pivots }
}

/// Full reduced row echelon form: echelon plus back-substitution, the unique
/// canonical basis of the row space.
pub fn rref(rows: Vec<SparseVec>, mode: UpdateMode) -> Echelon {
    let mut ech = echelon(rows, mode);
    for k in (0..ech.rows.len()).rev() {
        let pivot = ech.rows[k].clone();
        let col = pivot.leading().unwrap().0;
        clear_column(&mut ech.rows[..k], &pivot, col, mode);
    }
    Echelon { rows: ech.rows }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: Vec<SparseVec>, mode: UpdateMode) -> usize {
    echelon(rows, mode).rank()
}

/// The solutions of an exact linear system.
///
/// `particular` is `None` when the system is inconsistent. The homogeneous
/// basis is in reduced echelon form over the unknown indices, so solution
/// spaces compare canonically.
#[derive(Debug, Clone)]
pub struct SolutionSpace {
    pub unknowns: Vec<String>,
    pub particular: Option<Vec<Scalar>>,
    pub basis: Vec<Vec<Scalar>>,
    pub field: Field,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    /// Does the given assignment solve the system? (Membership in an affine
    /// solution set: difference from the particular solution lies in the
    /// span of the homogeneous basis.)
    pub fn contains(&self, assignment: &[Scalar]) -> bool {
        let Some(part) = &self.particular else {
            return false;
        };
        assert_eq!(assignment.len(), self.unknowns.len());
        let diff: Vec<(u32, Scalar)> = assignment
            .iter()
            .zip(part)
            .enumerate()
            .map(|(i, (a, p))| (i as u32, a - p))
            .filter(|(_, s)| !s.is_zero())
            .collect();
        let rows: Vec<SparseVec> = self
            .basis
            .iter()
            .map(|b| {
                SparseVec::collect(
                    b.iter()
                        .enumerate()
                        .map(|(i, s)| (i as u32, s.clone()))
                        .filter(|(_, s)| !s.is_zero())
                        .collect(),
                )
            })
            .collect();
        let ech = echelon(rows, UpdateMode::auto());
        ech.contains(SparseVec::collect(diff))
    }
}

/// Solve a linear system given as rows over named unknowns with right-hand
/// sides. Inconsistent systems yield an empty solution set, not an error.
pub fn solve_linear(
    unknowns: Vec<String>,
    equations: Vec<(SparseVec, Scalar)>,
    field: &Field,
    mode: UpdateMode,
) -> SolutionSpace {
    let n = unknowns.len() as u32;
    // Augment: the right-hand side occupies column n.
    let rows: Vec<SparseVec> = equations
        .into_iter()
        .map(|(mut lhs, rhs)| {
            debug_assert!(lhs.entries.iter().all(|(i, _)| *i < n));
            if !rhs.is_zero() {
                lhs.entries.push((n, rhs));
            }
            lhs
        })
        .collect();
    let ech = rref(rows, mode);
    if ech.rows.iter().any(|r| r.leading().unwrap().0 == n) {
        return SolutionSpace {
            unknowns,
            particular: None,
            basis: vec![],
            field: field.clone(),
        };
    }
    let pivot_cols = ech.pivot_cols();
    let is_pivot = |c: u32| pivot_cols.binary_search(&c).is_ok();
    // Particular solution: free unknowns at zero.
    let mut particular = vec![field.zero(); unknowns.len()];
    for row in &ech.rows {
        let (lead, _) = row.leading().unwrap();
        if let Some(rhs) = row.get(n) {
            particular[lead as usize] = rhs.clone();
        }
    }
    // One homogeneous basis vector per free unknown.
    let mut basis = vec![];
    for free in 0..n {
        if is_pivot(free) {
            continue;
        }
        let mut vec_ = vec![field.zero(); unknowns.len()];
        vec_[free as usize] = field.one();
        for row in &ech.rows {
            let (lead, _) = row.leading().unwrap();
            if let Some(c) = row.get(free) {
                vec_[lead as usize] = -c;
            }
        }
        basis.push(vec_);
    }
    SolutionSpace {
        unknowns,
        particular: Some(particular),
        basis,
        field: field.clone(),
    }
}

/// Basis of the joint kernel description of two row families: all pairs of
/// coefficient vectors (a, b) with sum_i a_i A_i = sum_j b_j B_j. Used both
/// for subspace intersections and for overlap elements that need both
/// factorisations of each intersection vector.
pub fn stacked_kernel(
    a_rows: &[SparseVec],
    b_rows: &[SparseVec],
    field: &Field,
    mode: UpdateMode,
) -> Vec<(Vec<Scalar>, Vec<Scalar>)> {
    let ka = a_rows.len();
    let kb = b_rows.len();
    // Equations indexed by ambient column: sum_i a_i A_i[col] - sum_j b_j B_j[col] = 0.
    let mut by_col: std::collections::BTreeMap<u32, Vec<(u32, Scalar)>> =
        std::collections::BTreeMap::new();
    for (i, row) in a_rows.iter().enumerate() {
        for (col, s) in &row.entries {
            by_col.entry(*col).or_default().push((i as u32, s.clone()));
        }
    }
    for (j, row) in b_rows.iter().enumerate() {
        for (col, s) in &row.entries {
            by_col
                .entry(*col)
                .or_default()
                .push(((ka + j) as u32, -s));
        }
    }
    let unknowns: Vec<String> = (0..ka + kb).map(|i| format!("c{i}")).collect();
    let equations: Vec<(SparseVec, Scalar)> = by_col
        .into_values()
        .map(|pairs| (SparseVec::collect(pairs), field.zero()))
        .collect();
    let sol = solve_linear(unknowns, equations, field, mode);
    sol.basis
        .into_iter()
        .map(|v| (v[..ka].to_vec(), v[ka..].to_vec()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn sv(field: &Field, pairs: &[(u32, i64)]) -> SparseVec {
        SparseVec::collect(
            pairs
                .iter()
                .map(|&(i, v)| (i, field.integer(v)))
                .collect(),
        )
    }

    #[test]
    fn rref_is_canonical() {
        let f = Field::rationals();
        let rows = vec![sv(&f, &[(0, 2), (1, 4)]), sv(&f, &[(0, 1), (1, 1), (2, 1)])];
        let r = rref(rows, UpdateMode::Sequential);
        assert_eq!(r.rank(), 2);
        // Expect rows (1, 0, 2) and (0, 1, -1) after full reduction.
        assert_eq!(r.rows[0], sv(&f, &[(0, 1), (2, 2)]));
        assert_eq!(r.rows[1], sv(&f, &[(1, 1), (2, -1)]));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_agree() {
        let f = Field::cyclotomic(5);
        let z = f.zeta();
        let mut rows = vec![];
        for i in 0..20u32 {
            let mut entries = vec![];
            for j in 0..8u32 {
                let c = &f.integer(i64::from((i * 7 + j * 3) % 5) - 2) * &z.pow(i64::from(j % 4)).unwrap();
                entries.push(((i + j) % 13, c));
            }
            rows.push(SparseVec::collect(entries));
        }
        let a = rref(rows.clone(), UpdateMode::Sequential);
        let b = rref(rows, UpdateMode::Parallel);
        assert_eq!(a, b);
    }

    #[test]
    fn solve_reports_inconsistency_as_empty() {
        let f = Field::rationals();
        let eqs = vec![
            (sv(&f, &[(0, 1)]), f.integer(1)),
            (sv(&f, &[(0, 1)]), f.integer(2)),
        ];
        let sol = solve_linear(vec!["x".into()], eqs, &f, UpdateMode::Sequential);
        assert!(!sol.is_consistent());
        assert_eq!(sol.dim(), 0);
    }

    #[test]
    fn solve_underdetermined_has_free_basis() {
        let f = Field::rationals();
        // x + y = 3 over unknowns x, y, z.
        let eqs = vec![(sv(&f, &[(0, 1), (1, 1)]), f.integer(3))];
        let sol = solve_linear(
            vec!["x".into(), "y".into(), "z".into()],
            eqs,
            &f,
            UpdateMode::Sequential,
        );
        assert!(sol.is_consistent());
        assert_eq!(sol.dim(), 2);
        let p = sol.particular.clone().unwrap();
        assert_eq!(p[0], f.integer(3));
        assert!(sol.contains(&[f.integer(1), f.integer(2), f.integer(9)]));
        assert!(!sol.contains(&[f.integer(1), f.integer(1), f.integer(0)]));
    }

    #[test]
    fn stacked_kernel_finds_shared_vectors() {
        let f = Field::rationals();
        // A spans {e0, e1}, B spans {e1 + e2}. Intersection with span(B) is 0;
        // but with B = {e1} it is e1.
        let a = vec![sv(&f, &[(0, 1)]), sv(&f, &[(1, 1)])];
        let b = vec![sv(&f, &[(1, 2)])];
        let pairs = stacked_kernel(&a, &b, &f, UpdateMode::Sequential);
        assert_eq!(pairs.len(), 1);
        let (ca, cb) = &pairs[0];
        // a-combination equals b-combination
        let mut lhs = SparseVec::new();
        for (row, c) in a.iter().zip(ca) {
            lhs.add_scaled(row, c);
        }
        let mut rhs = SparseVec::new();
        for (row, c) in b.iter().zip(cb) {
            rhs.add_scaled(row, c);
        }
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn rank_drops_on_dependent_rows() {
        let f = Field::rationals();
        let rows = vec![
            sv(&f, &[(0, 1), (1, 2)]),
            sv(&f, &[(0, 2), (1, 4)]),
            sv(&f, &[(2, 1)]),
        ];
        assert_eq!(rank(rows, UpdateMode::Sequential), 2);
    }
}

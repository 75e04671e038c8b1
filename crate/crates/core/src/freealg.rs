//! Words, noncommutative polynomials and graded subspaces of a free algebra.
//!
//! A [`GenSet`] is an ordered list of generator names; a [`Word`] is a string
//! of generator indices; an [`NcPoly`] is a finite scalar combination of
//! words. Subspaces of a fixed graded piece are kept in reduced echelon form
//! with respect to the degree-lexicographic word order (creation order breaks
//! ties), so equality of subspaces is equality of canonical bases.

use crate::error::Error;
use crate::linalg::{self, SparseVec, UpdateMode};
use crate::scalar::{Field, Scalar};
use crate::Result;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug)]
struct GenSetData {
    names: Vec<String>,
}

/// An ordered set of free-algebra generators.
#[derive(Clone)]
pub struct GenSet(Arc<GenSetData>);

impl GenSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<GenSet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > 250 {
            return Err(Error::Presentation(
                "a generator set needs between 1 and 250 names".into(),
            ));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty()
                || !n
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '\'' || c == '_')
                || !n.chars().next().unwrap().is_ascii_alphabetic()
            {
                return Err(Error::Presentation(format!("bad generator name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::Presentation(format!("duplicate generator {n:?}")));
            }
        }
        Ok(GenSet(Arc::new(GenSetData { names })))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, idx: u8) -> &str {
        &self.0.names[idx as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.0.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    /// Concatenation of two disjoint generator sets (left-factor names first).
    pub fn concat(&self, other: &GenSet) -> Result<GenSet> {
        let mut names = self.0.names.clone();
        for n in other.names() {
            if names.contains(n) {
                return Err(Error::Presentation(format!(
                    "generator {n:?} appears in both factors"
                )));
            }
            names.push(n.clone());
        }
        GenSet::new(names)
    }

    pub fn describe(&self) -> String {
        self.0.names.join(",")
    }
}

impl PartialEq for GenSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}
impl Eq for GenSet {}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenSet[{}]", self.describe())
    }
}

/// A word in the free algebra: a sequence of generator indices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(vec![])
    }

    pub fn single(g: u8) -> Word {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn display(&self, gens: &GenSet) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&g| gens.name(g).to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl Ord for Word {
    /// Degree-lexicographic: shorter words first, then letterwise by
    /// generator creation order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.0)
    }
}

/// Column index of a degree-d word: rank in the descending deglex
/// enumeration, so that the largest word gets column 0 and row reduction
/// pivots on leading terms.
pub fn word_column(gens: &GenSet, w: &Word) -> u32 {
    let g = gens.len() as u32;
    let mut col = 0u32;
    for &letter in &w.0 {
        col = col * g + (g - 1 - u32::from(letter));
    }
    col
}

/// Inverse of [`word_column`] for fixed degree.
pub fn column_word(gens: &GenSet, degree: usize, mut col: u32) -> Word {
    let g = gens.len() as u32;
    let mut letters = vec![0u8; degree];
    for i in (0..degree).rev() {
        letters[i] = (g - 1 - (col % g)) as u8;
        col /= g;
    }
    Word(letters)
}

/// A noncommutative polynomial over a [`GenSet`], coefficients in a fixed
/// field. The zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq)]
pub struct NcPoly {
    gens: GenSet,
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero(gens: &GenSet, field: &Field) -> NcPoly {
        NcPoly {
            gens: gens.clone(),
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(gens: &GenSet, field: &Field) -> NcPoly {
        NcPoly::term(gens, Word::empty(), field.one())
    }

    pub fn term(gens: &GenSet, word: Word, coeff: Scalar) -> NcPoly {
        let field = coeff.field().clone();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        NcPoly {
            gens: gens.clone(),
            field,
            terms,
        }
    }

    pub fn gen(gens: &GenSet, idx: u8, field: &Field) -> NcPoly {
        NcPoly::term(gens, Word::single(idx), field.one())
    }

    pub fn gens(&self) -> &GenSet {
        &self.gens
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &coeff;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &NcPoly) -> Result<()> {
        if self.gens != other.gens {
            return Err(Error::GenSetMismatch(
                self.gens.describe(),
                other.gens.describe(),
            ));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.describe(),
                other.field.describe(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            gens: self.gens.clone(),
            field: self.field.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> NcPoly {
        if factor.is_zero() {
            return NcPoly::zero(&self.gens, &self.field);
        }
        NcPoly {
            gens: self.gens.clone(),
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * factor))
                .collect(),
        }
    }

    /// Free product of polynomials: words concatenate. `nc_mul`.
    pub fn nc_mul(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_compatible(other)?;
        let mut out = NcPoly::zero(&self.gens, &self.field);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// The degree if homogeneous (zero polynomial counts as homogeneous of
    /// any degree), `None` otherwise.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.len();
        if it.all(|w| w.len() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Coordinates in the degree-d graded piece.
    pub fn to_sparse(&self, degree: usize) -> Result<SparseVec> {
        let mut pairs = vec![];
        for (w, c) in &self.terms {
            if w.len() != degree {
                return Err(Error::NotHomogeneous(degree));
            }
            pairs.push((word_column(&self.gens, w), c.clone()));
        }
        Ok(SparseVec::collect(pairs))
    }

    pub fn from_sparse(gens: &GenSet, field: &Field, degree: usize, v: &SparseVec) -> NcPoly {
        let mut out = NcPoly::zero(gens, field);
        for (col, c) in &v.entries {
            out.add_term(column_word(gens, degree, *col), c.clone());
        }
        out
    }

    /// Rename generators into another set of the same size (index-preserving).
    pub fn rename(&self, new_gens: &GenSet) -> Result<NcPoly> {
        if new_gens.len() != self.gens.len() {
            return Err(Error::GenSetMismatch(
                self.gens.describe(),
                new_gens.describe(),
            ));
        }
        Ok(NcPoly {
            gens: new_gens.clone(),
            field: self.field.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Re-index letters into a larger generator set via a map of indices.
    pub fn embed(&self, new_gens: &GenSet, index_map: &[u8]) -> NcPoly {
        let mut out = NcPoly::zero(new_gens, &self.field);
        for (w, c) in &self.terms {
            let word = Word(w.0.iter().map(|&g| index_map[g as usize]).collect());
            out.add_term(word, c.clone());
        }
        out
    }

    /// Deterministic rendering: terms in descending deglex order, as
    /// `coeff*g1.g2` summands.
    pub fn render(&self) -> String {
        crate::scalar::render_terms(self.terms.iter().rev().map(|(w, c)| {
            let sym = if w.is_empty() {
                String::new()
            } else {
                w.display(&self.gens)
            };
            (sym, c)
        }))
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A subspace of the degree-d piece of the free algebra, held as a reduced
/// echelon basis. Canonical: two equal subspaces have equal rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    gens: GenSet,
    field: Field,
    degree: usize,
    ech: linalg::Echelon,
}

impl Subspace {
    pub fn from_polys(gens: &GenSet, field: &Field, degree: usize, polys: &[NcPoly]) -> Result<Subspace> {
        let mut rows = vec![];
        for p in polys {
            if p.gens() != gens {
                return Err(Error::GenSetMismatch(gens.describe(), p.gens().describe()));
            }
            rows.push(p.to_sparse(degree)?);
        }
        Ok(Subspace {
            gens: gens.clone(),
            field: field.clone(),
            degree,
            ech: linalg::rref(rows, UpdateMode::auto()),
        })
    }

    pub fn gens(&self) -> &GenSet {
        &self.gens
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.ech.rows
    }

    pub fn basis_polys(&self) -> Vec<NcPoly> {
        self.ech
            .rows
            .iter()
            .map(|r| NcPoly::from_sparse(&self.gens, &self.field, self.degree, r))
            .collect()
    }

    pub fn contains(&self, p: &NcPoly) -> Result<bool> {
        let v = p.to_sparse(self.degree)?;
        Ok(self.ech.contains(v))
    }

    /// The residue of a polynomial modulo this subspace.
    pub fn residue(&self, p: &NcPoly) -> Result<NcPoly> {
        let v = p.to_sparse(self.degree)?;
        Ok(NcPoly::from_sparse(
            &self.gens,
            &self.field,
            self.degree,
            &self.ech.residue(v),
        ))
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.gens != other.gens {
            return Err(Error::GenSetMismatch(
                self.gens.describe(),
                other.gens.describe(),
            ));
        }
        if self.degree != other.degree {
            return Err(Error::AmbientMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    /// Canonical intersection of two subspaces of the same graded piece.
    /// `subspace_intersect`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let pairs = linalg::stacked_kernel(
            &self.ech.rows,
            &other.ech.rows,
            &self.field,
            UpdateMode::auto(),
        );
        let rows: Vec<SparseVec> = pairs
            .into_iter()
            .map(|(a, _)| {
                let mut v = SparseVec::new();
                for (row, c) in self.ech.rows.iter().zip(&a) {
                    v.add_scaled(row, c);
                }
                v
            })
            .collect();
        Ok(Subspace {
            gens: self.gens.clone(),
            field: self.field.clone(),
            degree: self.degree,
            ech: linalg::rref(rows, UpdateMode::auto()),
        })
    }

    /// Coordinates of `p` in a given independent labelled basis spanning this
    /// subspace (not the canonical one). `None` if `p` is outside the span.
    pub fn coords_in(&self, labelled: &[NcPoly], p: &NcPoly) -> Result<Option<Vec<Scalar>>> {
        let target = p.to_sparse(self.degree)?;
        let mut by_col: BTreeMap<u32, Vec<(u32, Scalar)>> = BTreeMap::new();
        let mut rows = vec![];
        for r in labelled {
            rows.push(r.to_sparse(self.degree)?);
        }
        for (i, row) in rows.iter().enumerate() {
            for (col, s) in &row.entries {
                by_col.entry(*col).or_default().push((i as u32, s.clone()));
            }
        }
        for (col, _) in &target.entries {
            by_col.entry(*col).or_default();
        }
        let equations: Vec<(SparseVec, Scalar)> = by_col
            .into_iter()
            .map(|(col, pairs)| {
                let rhs = target.get(col).cloned().unwrap_or_else(|| self.field.zero());
                (SparseVec::collect(pairs), rhs)
            })
            .collect();
        let unknowns = (0..labelled.len()).map(|i| format!("c{i}")).collect();
        let sol = linalg::solve_linear(unknowns, equations, &self.field, UpdateMode::auto());
        Ok(sol.particular)
    }
}

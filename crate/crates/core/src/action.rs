//! Actions of a Hopf algebra on the generator span of a quadratic algebra.
//!
//! An action assigns one square matrix per Hopf generator over the module
//! basis, in column convention: h acts on the j-th module generator by the
//! j-th column. The action extends to words of the free algebra through the
//! iterated coproduct, and a quadratic algebra is a module algebra exactly
//! when its relation space is stable under every Hopf generator.

use crate::error::Error;
use crate::freealg::{GenSet, NcPoly, Subspace, Word};
use crate::hopf::{GenClass, Hopf, HopfElem};
use crate::scalar::{render_terms, Field, Scalar};
use crate::Result;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Index;

/// A dense matrix over a fixed field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Presentation(format!(
                "matrix data length {} does not fit {rows}x{cols}",
                data.len()
            )));
        }
        for s in &data {
            if s.field() != field {
                return Err(Error::FieldMismatch(
                    field.describe(),
                    s.field().describe(),
                ));
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from rows of entries.
    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Presentation("ragged matrix rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Build from columns: column j is the image of the j-th basis vector.
    pub fn from_cols(field: &Field, cols: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|col| col.len() != r) {
            return Err(Error::Presentation("ragged matrix columns".into()));
        }
        let mut m = Matrix::zero(field, r, c);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, s) in col.into_iter().enumerate() {
                if s.field() != field {
                    return Err(Error::FieldMismatch(
                        field.describe(),
                        s.field().describe(),
                    ));
                }
                m.set(i, j, s);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i * self.cols + j] = s;
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::AmbientMismatch(self.cols, other.rows));
        }
        let mut out = Matrix::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[[i, k]];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[[k, j]];
                    if b.is_zero() {
                        continue;
                    }
                    let s = &out[[i, j]] + &(a * b);
                    out.set(i, j, s);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::AmbientMismatch(self.rows, other.rows));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix::new(&self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::AmbientMismatch(self.rows, self.cols));
        }
        let mut out = Matrix::identity(&self.field, self.rows);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(&self.field, self.rows)
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if self.rows != self.cols {
            return Err(Error::AmbientMismatch(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(&self.field, n);
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[[r, col]].is_zero()) else {
                return Ok(None);
            };
            if pivot != col {
                for j in 0..n {
                    let tmp = a[[pivot, j]].clone();
                    a.set(pivot, j, a[[col, j]].clone());
                    a.set(col, j, tmp);
                    let tmp = inv[[pivot, j]].clone();
                    inv.set(pivot, j, inv[[col, j]].clone());
                    inv.set(col, j, tmp);
                }
            }
            let piv_inv = a[[col, col]].invert()?;
            for j in 0..n {
                a.set(col, j, &a[[col, j]] * &piv_inv);
                inv.set(col, j, &inv[[col, j]] * &piv_inv);
            }
            for r in 0..n {
                if r == col || a[[r, col]].is_zero() {
                    continue;
                }
                let factor = a[[r, col]].clone();
                for j in 0..n {
                    let na = &a[[r, j]] - &(&factor * &a[[col, j]]);
                    a.set(r, j, na);
                    let ni = &inv[[r, j]] - &(&factor * &inv[[col, j]]);
                    inv.set(r, j, ni);
                }
            }
        }
        Ok(Some(inv))
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::AmbientMismatch(v.len(), self.cols));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self[[i, j]].is_zero() && !v[j].is_zero() {
                    out[i] = &out[i] + &(&self[[i, j]] * &v[j]);
                }
            }
        }
        Ok(out)
    }
}

impl Index<[usize; 2]> for Matrix {
    type Output = Scalar;
    fn index(&self, [i, j]: [usize; 2]) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self[[i, j]])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// One matrix per Hopf generator, acting on a generator span.
#[derive(Debug, Clone)]
pub struct ActionSpec {
    hopf: Hopf,
    module: GenSet,
    mats: Vec<Matrix>,
    invs: Vec<Option<Matrix>>,
}

impl ActionSpec {
    /// Validates the matrices against the Hopf presentation: grouplikes act
    /// invertibly with the right order, nilpotents act nilpotently, and
    /// every swap rule holds matrix-wise.
    pub fn new(hopf: &Hopf, module: &GenSet, mats: Vec<Matrix>) -> Result<ActionSpec> {
        let n = module.len();
        if mats.len() != hopf.num_gens() {
            return Err(Error::Presentation(format!(
                "need {} matrices, got {}",
                hopf.num_gens(),
                mats.len()
            )));
        }
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Presentation(format!(
                    "matrix for {} is {}x{}, module has {n} generators",
                    hopf.gen_name(i as u8),
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != hopf.field() {
                return Err(Error::FieldMismatch(
                    hopf.field().describe(),
                    m.field().describe(),
                ));
            }
        }
        let mut invs = vec![None; mats.len()];
        for i in 0..hopf.num_gens() as u8 {
            let name = hopf.gen_name(i).to_string();
            match hopf.gen_class(i) {
                GenClass::Grouplike { order } => {
                    let inv = mats[i as usize]
                        .inverse()?
                        .ok_or(Error::NotInvertible(name.clone()))?;
                    if order > 0 && !mats[i as usize].pow(order)?.is_identity() {
                        return Err(Error::Presentation(format!(
                            "matrix for {name} does not have order dividing {order}"
                        )));
                    }
                    invs[i as usize] = Some(inv);
                }
                GenClass::SkewPrimitive { nil } => {
                    if nil > 0 && !mats[i as usize].pow(nil)?.is_zero() {
                        return Err(Error::Presentation(format!(
                            "matrix for {name} is not nilpotent of order {nil}"
                        )));
                    }
                }
            }
        }
        let spec = ActionSpec {
            hopf: hopf.clone(),
            module: module.clone(),
            mats,
            invs,
        };
        spec.check_swap_rules()?;
        Ok(spec)
    }

    fn check_swap_rules(&self) -> Result<()> {
        for hi in 0..self.hopf.num_gens() as u8 {
            for lo in 0..hi {
                let lhs = self.mats[hi as usize].mul(&self.mats[lo as usize])?;
                let a = HopfElem::gen(&self.hopf, hi)?;
                let b = HopfElem::gen(&self.hopf, lo)?;
                let rhs = self.act_elem(&a.mul(&b)?)?;
                if lhs != rhs {
                    return Err(Error::Presentation(format!(
                        "matrices violate the rewrite rule for {}.{}",
                        self.hopf.gen_name(hi),
                        self.hopf.gen_name(lo)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn hopf(&self) -> &Hopf {
        &self.hopf
    }

    pub fn module(&self) -> &GenSet {
        &self.module
    }

    pub fn matrix(&self, idx: u8) -> &Matrix {
        &self.mats[idx as usize]
    }

    /// The operator for a normal word: the product of per-letter powers.
    pub fn word_matrix(&self, letters: &[(u8, i64)]) -> Result<Matrix> {
        let mut out = Matrix::identity(self.hopf.field(), self.module.len());
        for &(g, e) in letters {
            let m = if e >= 0 {
                self.mats[g as usize].pow(e as u32)?
            } else {
                self.invs[g as usize]
                    .as_ref()
                    .ok_or_else(|| Error::NotInvertible(self.hopf.gen_name(g).to_string()))?
                    .pow((-e) as u32)?
            };
            out = out.mul(&m)?;
        }
        Ok(out)
    }

    /// The operator on the generator span for a whole element.
    pub fn act_elem(&self, h: &HopfElem) -> Result<Matrix> {
        let mut out = Matrix::zero(self.hopf.field(), self.module.len(), self.module.len());
        for (w, c) in h.terms() {
            out = out.add(&self.word_matrix(w.letters())?.scale(c))?;
        }
        Ok(out)
    }

    /// Act on a free-algebra polynomial. Degree-d words take the d-leg
    /// coproduct; constants scale by the counit.
    pub fn act_on_poly(&self, h: &HopfElem, p: &NcPoly) -> Result<NcPoly> {
        if p.gens() != &self.module {
            return Err(Error::GenSetMismatch(
                self.module.describe(),
                p.gens().describe(),
            ));
        }
        let field = self.hopf.field();
        let g = self.module.len();
        let mut out = NcPoly::zero(&self.module, field);
        // Group terms by degree so each degree extends the coproduct once.
        let mut by_degree: BTreeMap<usize, Vec<(&Word, &Scalar)>> = BTreeMap::new();
        for (w, c) in p.terms() {
            by_degree.entry(w.len()).or_default().push((w, c));
        }
        for (d, terms) in by_degree {
            if d == 0 {
                let eps = h.counit();
                for (_, c) in terms {
                    out.add_term(Word::empty(), &eps * c);
                }
                continue;
            }
            let legs = h.coproduct_legs(d)?;
            for (ws, ct) in legs.terms() {
                let ops: Vec<Matrix> = ws
                    .iter()
                    .map(|w| self.word_matrix(w.letters()))
                    .collect::<Result<_>>()?;
                for &(w, c) in &terms {
                    // Distribute: position k maps letter w[k] through ops[k].
                    let mut partial: Vec<(Vec<u8>, Scalar)> = vec![(vec![], ct * c)];
                    for (k, &letter) in w.0.iter().enumerate() {
                        let mut next = Vec::with_capacity(partial.len() * g);
                        for (prefix, coeff) in &partial {
                            for i in 0..g {
                                let entry = &ops[k][[i, usize::from(letter)]];
                                if entry.is_zero() {
                                    continue;
                                }
                                let mut pr = prefix.clone();
                                pr.push(i as u8);
                                next.push((pr, coeff * entry));
                            }
                        }
                        partial = next;
                    }
                    for (word, coeff) in partial {
                        out.add_term(Word(word), coeff);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// A quadratic algebra: a generator set with a labelled independent list of
/// degree-2 relations.
#[derive(Debug, Clone)]
pub struct QuadraticAlgebra {
    gens: GenSet,
    field: Field,
    labels: Vec<String>,
    relations: Vec<NcPoly>,
    rel_space: Subspace,
}

impl QuadraticAlgebra {
    pub fn new(
        gens: &GenSet,
        field: &Field,
        labels: Vec<String>,
        relations: Vec<NcPoly>,
    ) -> Result<QuadraticAlgebra> {
        if labels.len() != relations.len() {
            return Err(Error::Presentation(format!(
                "{} labels for {} relations",
                labels.len(),
                relations.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || labels[..i].contains(l) {
                return Err(Error::Presentation(format!("bad relation label {l:?}")));
            }
        }
        for (l, r) in labels.iter().zip(&relations) {
            if r.is_zero() || r.homogeneous_degree() != Some(2) {
                return Err(Error::Presentation(format!(
                    "relation {l} is not homogeneous of degree 2"
                )));
            }
        }
        let rel_space = Subspace::from_polys(gens, field, 2, &relations)?;
        if rel_space.dim() != relations.len() {
            return Err(Error::Presentation(format!(
                "relations are linearly dependent: {} labels span dimension {}",
                relations.len(),
                rel_space.dim()
            )));
        }
        Ok(QuadraticAlgebra {
            gens: gens.clone(),
            field: field.clone(),
            labels,
            relations,
            rel_space,
        })
    }

    /// The free algebra: no relations.
    pub fn free(gens: &GenSet, field: &Field) -> Result<QuadraticAlgebra> {
        QuadraticAlgebra::new(gens, field, vec![], vec![])
    }

    pub fn gens(&self) -> &GenSet {
        &self.gens
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn rel_space(&self) -> &Subspace {
        &self.rel_space
    }

    pub fn num_relations(&self) -> usize {
        self.relations.len()
    }

    /// Coordinates of a degree-2 polynomial in the labelled relation list.
    pub fn relation_coords(&self, p: &NcPoly) -> Result<Option<Vec<Scalar>>> {
        self.rel_space.coords_in(&self.relations, p)
    }

    pub fn describe_relations(&self) -> Vec<String> {
        self.labels
            .iter()
            .zip(&self.relations)
            .map(|(l, r)| format!("{l} = {}", r.render()))
            .collect()
    }
}

/// A quadratic algebra together with a Hopf action under which its relation
/// space is stable.
#[derive(Debug, Clone)]
pub struct ModuleAlgebra {
    alg: QuadraticAlgebra,
    action: ActionSpec,
}

impl ModuleAlgebra {
    pub fn new(alg: QuadraticAlgebra, action: ActionSpec) -> Result<ModuleAlgebra> {
        if action.module() != alg.gens() {
            return Err(Error::GenSetMismatch(
                alg.gens().describe(),
                action.module().describe(),
            ));
        }
        for i in 0..action.hopf().num_gens() as u8 {
            let h = HopfElem::gen(action.hopf(), i)?;
            for (label, r) in alg.labels.iter().zip(&alg.relations) {
                let hr = action.act_on_poly(&h, r)?;
                let residue = alg.rel_space.residue(&hr)?;
                if !residue.is_zero() {
                    return Err(Error::NotSubmodule {
                        hopf_gen: action.hopf().gen_name(i).to_string(),
                        label: label.clone(),
                        residue: residue.render(),
                    });
                }
            }
        }
        Ok(ModuleAlgebra { alg, action })
    }

    /// Replace the relation list with an equivalent labelled one. The new
    /// list must span exactly the same space, otherwise this fails rather
    /// than silently changing the algebra.
    pub fn with_relations(
        &self,
        labels: Vec<String>,
        relations: Vec<NcPoly>,
    ) -> Result<ModuleAlgebra> {
        if relations.len() != self.alg.num_relations() {
            return Err(Error::RelationMismatch(format!(
                "{} relations offered for an algebra with {}",
                relations.len(),
                self.alg.num_relations()
            )));
        }
        for (l, r) in labels.iter().zip(&relations) {
            let residue = self.alg.rel_space.residue(r)?;
            if !residue.is_zero() {
                return Err(Error::RelationMismatch(format!(
                    "{l} = {} is not in the relation span (residue {})",
                    r.render(),
                    residue.render()
                )));
            }
        }
        let alg = QuadraticAlgebra::new(&self.alg.gens, &self.alg.field, labels, relations)?;
        ModuleAlgebra::new(alg, self.action.clone())
    }

    pub fn alg(&self) -> &QuadraticAlgebra {
        &self.alg
    }

    pub fn action(&self) -> &ActionSpec {
        &self.action
    }

    pub fn hopf(&self) -> &Hopf {
        self.action.hopf()
    }

    pub fn act(&self, h: &HopfElem, p: &NcPoly) -> Result<NcPoly> {
        self.action.act_on_poly(h, p)
    }

    /// The action of every Hopf generator on every relation, in coordinates
    /// of the labelled relation list.
    pub fn action_table(&self) -> Result<ActionTable> {
        let hopf = self.hopf();
        let mut entries = vec![];
        for i in 0..hopf.num_gens() as u8 {
            let h = HopfElem::gen(hopf, i)?;
            let mut row = vec![];
            for r in &self.alg.relations {
                let hr = self.action.act_on_poly(&h, r)?;
                let coords = self.alg.relation_coords(&hr)?.ok_or_else(|| {
                    Error::Presentation("relation image left the relation span".into())
                })?;
                row.push(coords);
            }
            entries.push(row);
        }
        Ok(ActionTable {
            hopf_gens: (0..hopf.num_gens() as u8)
                .map(|i| hopf.gen_name(i).to_string())
                .collect(),
            labels: self.alg.labels.clone(),
            entries,
        })
    }
}

/// Coordinates of generator-on-relation actions in the labelled basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionTable {
    pub hopf_gens: Vec<String>,
    pub labels: Vec<String>,
    /// entries[hopf generator][relation][label]
    pub entries: Vec<Vec<Vec<Scalar>>>,
}

impl ActionTable {
    pub fn entry(&self, hopf_gen: usize, relation: usize) -> &[Scalar] {
        &self.entries[hopf_gen][relation]
    }

    pub fn render(&self) -> String {
        let mut lines = vec![];
        for (h, row) in self.hopf_gens.iter().zip(&self.entries) {
            for (label, coords) in self.labels.iter().zip(row) {
                let rhs = render_terms(
                    self.labels
                        .iter()
                        .zip(coords)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(l, c)| (l.clone(), c)),
                );
                lines.push(format!("{h} . {label} = {rhs}"));
            }
        }
        lines.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf;

    fn quantum_plane(field: &Field, q: &Scalar) -> (GenSet, QuadraticAlgebra) {
        let gens = GenSet::new(vec!["u", "v"]).unwrap();
        let mut r = NcPoly::zero(&gens, field);
        r.add_term(Word(vec![0, 1]), field.one());
        r.add_term(Word(vec![1, 0]), -q);
        let alg =
            QuadraticAlgebra::new(&gens, field, vec!["r1".into()], vec![r]).unwrap();
        (gens, alg)
    }

    fn uqsl2_plane_action(field: &Field, q: &Scalar, hopf: &Hopf, gens: &GenSet) -> ActionSpec {
        let z = field.zero();
        let o = field.one();
        // F: u -> v, v -> 0; K: u -> qu, v -> q^-1 v; E: u -> 0, v -> u.
        let f_mat = Matrix::from_cols(field, vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]]).unwrap();
        let k_mat = Matrix::from_cols(
            field,
            vec![vec![q.clone(), z.clone()], vec![z.clone(), q.pow(-1).unwrap()]],
        )
        .unwrap();
        let e_mat = Matrix::from_cols(field, vec![vec![z.clone(), z.clone()], vec![o.clone(), z.clone()]]).unwrap();
        ActionSpec::new(hopf, gens, vec![f_mat, k_mat, e_mat]).unwrap()
    }

    #[test]
    fn matrix_inverse_round_trip() {
        let f = Field::cyclotomic(5);
        let z = f.zeta();
        let m = Matrix::from_rows(
            &f,
            vec![
                vec![f.one(), z.clone()],
                vec![z.pow(2).unwrap(), f.integer(3)],
            ],
        )
        .unwrap();
        let inv = m.inverse().unwrap().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
        let singular = Matrix::from_rows(
            &f,
            vec![
                vec![f.one(), f.one()],
                vec![f.integer(2), f.integer(2)],
            ],
        )
        .unwrap();
        assert!(singular.inverse().unwrap().is_none());
    }

    #[test]
    fn quantum_plane_is_a_module_algebra() {
        let field = Field::cyclotomic(3);
        let q = field.zeta();
        let hopf = hopf::uqsl2(&field, &q).unwrap();
        let (gens, alg) = quantum_plane(&field, &q);
        let action = uqsl2_plane_action(&field, &q, &hopf, &gens);
        let ma = ModuleAlgebra::new(alg, action).unwrap();
        let table = ma.action_table().unwrap();
        // K fixes the relation; E and F kill it.
        assert_eq!(table.entry(1, 0), &[field.one()]);
        assert_eq!(table.entry(2, 0), &[field.zero()]);
        assert_eq!(table.entry(0, 0), &[field.zero()]);
        assert_eq!(
            table.render(),
            "F . r1 = 0\nK . r1 = r1\nE . r1 = 0"
        );
    }

    #[test]
    fn sweedler_on_commuting_plane() {
        let field = Field::rationals();
        let hopf = hopf::sweedler(&field).unwrap();
        let gens = GenSet::new(vec!["u", "v"]).unwrap();
        let z = field.zero();
        let o = field.one();
        // g: u -> u, v -> -v; x: u -> 0, v -> u.
        let g_mat = Matrix::from_cols(&field, vec![vec![o.clone(), z.clone()], vec![z.clone(), -&o]]).unwrap();
        let x_mat = Matrix::from_cols(&field, vec![vec![z.clone(), z.clone()], vec![o.clone(), z.clone()]]).unwrap();
        let action = ActionSpec::new(&hopf, &gens, vec![g_mat, x_mat]).unwrap();
        let mut r = NcPoly::zero(&gens, &field);
        r.add_term(Word(vec![0, 1]), field.one());
        r.add_term(Word(vec![1, 0]), -&field.one());
        let alg = QuadraticAlgebra::new(&gens, &field, vec!["r".into()], vec![r.clone()]).unwrap();
        let ma = ModuleAlgebra::new(alg, action).unwrap();
        let g = HopfElem::gen(&hopf, 0).unwrap();
        let x = HopfElem::gen(&hopf, 1).unwrap();
        assert_eq!(ma.act(&g, &r).unwrap(), r.neg());
        assert!(ma.act(&x, &r).unwrap().is_zero());
    }

    #[test]
    fn one_sided_sign_action_is_rejected_on_jordan_relation() {
        let field = Field::rationals();
        let hopf = hopf::kc2(&field).unwrap();
        let gens = GenSet::new(vec!["u", "v"]).unwrap();
        let z = field.zero();
        let o = field.one();
        // g: u -> u, v -> -v does not stabilize v.u - u.v + v.v.
        let g_mat = Matrix::from_cols(&field, vec![vec![o.clone(), z.clone()], vec![z.clone(), -&o]]).unwrap();
        let action = ActionSpec::new(&hopf, &gens, vec![g_mat]).unwrap();
        let mut r = NcPoly::zero(&gens, &field);
        r.add_term(Word(vec![1, 0]), field.one());
        r.add_term(Word(vec![0, 1]), -&field.one());
        r.add_term(Word(vec![1, 1]), field.one());
        let alg = QuadraticAlgebra::new(&gens, &field, vec!["r".into()], vec![r]).unwrap();
        let err = ModuleAlgebra::new(alg, action).unwrap_err();
        match err {
            Error::NotSubmodule { hopf_gen, residue, .. } => {
                assert_eq!(hopf_gen, "g");
                // g.r + r = 2 v.v, reduced against the pivot of r itself.
                assert_eq!(residue, "-2*v.u + 2*u.v");
            }
            other => panic!("expected NotSubmodule, got {other:?}"),
        }
    }

    #[test]
    fn matrix_checks_catch_wrong_orders() {
        let field = Field::rationals();
        let hopf = hopf::sweedler(&field).unwrap();
        let gens = GenSet::new(vec!["u", "v"]).unwrap();
        let o = field.one();
        let z = field.zero();
        // g of order 2 cannot act by a matrix of multiplicative order 4.
        let bad_g = Matrix::from_cols(&field, vec![vec![z.clone(), o.clone()], vec![-&o, z.clone()]]).unwrap();
        let x_mat = Matrix::zero(&field, 2, 2);
        assert!(matches!(
            ActionSpec::new(&hopf, &gens, vec![bad_g, x_mat.clone()]),
            Err(Error::Presentation(_))
        ));
        // A singular matrix for a grouplike is rejected outright.
        let singular = Matrix::zero(&field, 2, 2);
        assert!(matches!(
            ActionSpec::new(&hopf, &gens, vec![singular, x_mat]),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn action_extends_through_coproduct_on_higher_degrees() {
        let field = Field::cyclotomic(3);
        let q = field.zeta();
        let hopf = hopf::uqsl2(&field, &q).unwrap();
        let gens = GenSet::new(vec!["u", "v"]).unwrap();
        let action = uqsl2_plane_action(&field, &q, &hopf, &gens);
        // E . (v.v.v) = u.v.v + q^-1 v.u.v + q^-2 v.v.u via the 3-leg coproduct.
        let vvv = NcPoly::term(&gens, Word(vec![1, 1, 1]), field.one());
        let e = HopfElem::gen(&hopf, 2).unwrap();
        let got = action.act_on_poly(&e, &vvv).unwrap();
        let mut want = NcPoly::zero(&gens, &field);
        want.add_term(Word(vec![0, 1, 1]), field.one());
        want.add_term(Word(vec![1, 0, 1]), q.pow(-1).unwrap());
        want.add_term(Word(vec![1, 1, 0]), q.pow(-2).unwrap());
        assert_eq!(got, want);
        // Constants scale by the counit.
        let c = NcPoly::one(&gens, &field).scale(&field.integer(5));
        let k = HopfElem::gen(&hopf, 1).unwrap();
        assert_eq!(action.act_on_poly(&k, &c).unwrap(), c);
        assert!(action.act_on_poly(&e, &c).unwrap().is_zero());
    }
}

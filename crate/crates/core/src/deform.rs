//! Deformations of the defining relations of a smash product.
//!
//! A deformation map sends each degree-2 relation to an element of
//! H + (W (x) H): a constant part with values in the Hopf algebra and a
//! linear part with values in generator-times-Hopf terms. The deformed
//! algebra imposes r - kappa(r) instead of r. Flatness of such a deformation
//! is equivalent to a finite set of exact conditions evaluated on the
//! degree-3 intersection (I (x) W) /\ (W (x) I): equivariance of kappa, an
//! image-containment condition on the linear part, and two composed
//! identities. When the linear part vanishes only equivariance and a single
//! two-sided overlap identity remain, and both are linear in kappa, so the
//! whole parameter space over a finite ansatz is the kernel of an exact
//! linear system.
//!
//! All comparisons happen in the smash product T(W) # H with every Hopf
//! factor pushed fully to the right, which is the normal form the rest of
//! the crate uses.

use std::collections::BTreeSet;

use crate::action::{ModuleAlgebra, QuadraticAlgebra};
use crate::error::Error;
use crate::freealg::NcPoly;
use crate::hopf::{HWord, Hopf, HopfElem};
use crate::linalg::{solve_linear, stacked_kernel, SolutionSpace, SparseVec, UpdateMode};
use crate::products::SmashElem;
use crate::scalar::{render_terms, Scalar};
use crate::Result;

/// A basis element of the degree-3 intersection (I (x) W) /\ (W (x) I),
/// kept with both of its factorisations: as sum of relation-times-generator
/// products and as sum of generator-times-relation products. Both are needed
/// when a deformation map is applied from either side, and recomputing one
/// from the other is the classic source of sign mistakes.
#[derive(Debug, Clone)]
pub struct OverlapElem {
    /// Coefficients over (relation index, generator index): the r.w form.
    pub left: Vec<((usize, usize), Scalar)>,
    /// Coefficients over (generator index, relation index): the w.r form.
    pub right: Vec<((usize, usize), Scalar)>,
    /// The element itself as a homogeneous cubic.
    pub vector: NcPoly,
}

impl OverlapElem {
    /// Both factorisations as an equation, e.g. "r1.u - r2.v = u.r1 - v.r2".
    pub fn render(&self, alg: &QuadraticAlgebra) -> String {
        let left = render_terms(self.left.iter().map(|((i, g), c)| {
            (
                format!("{}.{}", alg.labels()[*i], alg.gens().name(*g as u8)),
                c,
            )
        }));
        let right = render_terms(self.right.iter().map(|((g, j), c)| {
            (
                format!("{}.{}", alg.gens().name(*g as u8), alg.labels()[*j]),
                c,
            )
        }));
        format!("{left} = {right}")
    }
}

/// Basis of (I (x) W) /\ (W (x) I) inside W^{(x)3}.
///
/// The products r_i.w_g span I (x) W and the products w_g.r_j span
/// W (x) I; both families are linearly independent, so the pairs of
/// coefficient vectors whose combinations agree are in bijection with the
/// intersection, and each pair hands us the two factorisations directly.
pub fn overlap_intersection(alg: &QuadraticAlgebra) -> Result<Vec<OverlapElem>> {
    let gens = alg.gens();
    let field = alg.field();
    let ng = gens.len();
    let nr = alg.num_relations();
    let mut left_rows = Vec::with_capacity(nr * ng);
    let mut left_polys = Vec::with_capacity(nr * ng);
    for r in alg.relations() {
        for g in 0..ng {
            let p = r.nc_mul(&NcPoly::gen(gens, g as u8, field))?;
            left_rows.push(p.to_sparse(3)?);
            left_polys.push(p);
        }
    }
    let mut right_rows = Vec::with_capacity(ng * nr);
    for g in 0..ng {
        for r in alg.relations() {
            let p = NcPoly::gen(gens, g as u8, field).nc_mul(r)?;
            right_rows.push(p.to_sparse(3)?);
        }
    }
    let pairs = stacked_kernel(&left_rows, &right_rows, field, UpdateMode::auto());
    let mut out = Vec::with_capacity(pairs.len());
    for (lvec, rvec) in pairs {
        let mut vector = NcPoly::zero(gens, field);
        let mut left = vec![];
        for (idx, c) in lvec.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            left.push(((idx / ng, idx % ng), c.clone()));
            vector = vector.add(&left_polys[idx].scale(c))?;
        }
        let mut right = vec![];
        for (idx, c) in rvec.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            right.push(((idx / nr, idx % nr), c.clone()));
        }
        out.push(OverlapElem {
            left,
            right,
            vector,
        });
    }
    Ok(out)
}

/// A deformation map on the defining relations. The constant part takes
/// values in H; the linear part takes values in W (x) H and is stored as
/// smash elements all of whose words have length exactly one.
#[derive(Debug, Clone)]
pub struct KappaMap {
    module: ModuleAlgebra,
    constant: Vec<HopfElem>,
    linear: Vec<SmashElem>,
}

impl KappaMap {
    /// The zero map on every relation.
    pub fn zero(module: &ModuleAlgebra) -> KappaMap {
        let nr = module.alg().num_relations();
        KappaMap {
            module: module.clone(),
            constant: (0..nr).map(|_| HopfElem::zero(module.hopf())).collect(),
            linear: (0..nr).map(|_| SmashElem::zero(module.action())).collect(),
        }
    }

    fn slot(&self, label: &str) -> Result<usize> {
        self.module
            .alg()
            .labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::RelationMismatch(format!("no relation labelled {label}")))
    }

    /// Set the H-valued part on one relation.
    pub fn set_constant(&mut self, label: &str, value: HopfElem) -> Result<()> {
        if value.hopf() != self.module.hopf() {
            return Err(Error::Presentation(
                "constant part from a different Hopf algebra".into(),
            ));
        }
        let i = self.slot(label)?;
        self.constant[i] = value;
        Ok(())
    }

    /// Set the W (x) H valued part on one relation. Every term must have
    /// word degree exactly one.
    pub fn set_linear(&mut self, label: &str, value: SmashElem) -> Result<()> {
        if value.action().module() != self.module.alg().gens()
            || value.action().hopf() != self.module.hopf()
        {
            return Err(Error::Presentation(
                "linear part lives over a different smash product".into(),
            ));
        }
        if value.terms().any(|((w, _), _)| w.len() != 1) {
            return Err(Error::NotHomogeneous(1));
        }
        let i = self.slot(label)?;
        self.linear[i] = value;
        Ok(())
    }

    pub fn module(&self) -> &ModuleAlgebra {
        &self.module
    }

    pub fn constant(&self, relation: usize) -> &HopfElem {
        &self.constant[relation]
    }

    pub fn linear(&self, relation: usize) -> &SmashElem {
        &self.linear[relation]
    }

    pub fn has_linear_part(&self) -> bool {
        self.linear.iter().any(|l| !l.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.constant.iter().all(|c| c.is_zero()) && !self.has_linear_part()
    }

    /// The value on one relation as a smash product element.
    pub fn as_smash(&self, relation: usize) -> Result<SmashElem> {
        SmashElem::from_hopf(self.module.action(), &self.constant[relation])?
            .add(&self.linear[relation])
    }

    /// The value on an arbitrary element of the relation span, by linearity.
    pub fn apply(&self, p: &NcPoly) -> Result<SmashElem> {
        let coords = self
            .module
            .alg()
            .relation_coords(p)?
            .ok_or_else(|| {
                Error::RelationMismatch(format!("{} is not in the relation span", p.render()))
            })?;
        let mut out = SmashElem::zero(self.module.action());
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.as_smash(i)?.scale(c))?;
            }
        }
        Ok(out)
    }

    /// Scale every value by a fixed scalar.
    pub fn scale(&self, s: &Scalar) -> KappaMap {
        KappaMap {
            module: self.module.clone(),
            constant: self.constant.iter().map(|c| c.scale(s)).collect(),
            linear: self.linear.iter().map(|l| l.scale(s)).collect(),
        }
    }

    /// One line per relation, e.g. "kappa(r4) = g".
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, label) in self.module.alg().labels().iter().enumerate() {
            let mut val = String::new();
            if !self.constant[i].is_zero() {
                val.push_str(&self.constant[i].render());
            }
            if !self.linear[i].is_zero() {
                if !val.is_empty() {
                    val.push_str(" + ");
                }
                val.push_str(&self.linear[i].render());
            }
            if val.is_empty() {
                val.push('0');
            }
            out.push_str(&format!("kappa({label}) = {val}\n"));
        }
        out
    }
}

/// A single failed comparison, with both sides rendered.
#[derive(Debug, Clone)]
pub struct CheckFailure {
    pub context: String,
    pub lhs: String,
    pub rhs: String,
}

/// The outcome of a condition check: how many comparisons ran and which of
/// them failed.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub title: String,
    pub checks: usize,
    pub failures: Vec<CheckFailure>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}: {} checks, ", self.title, self.checks);
        if self.ok() {
            out.push_str("all passed\n");
        } else {
            out.push_str(&format!("{} failed\n", self.failures.len()));
            for f in &self.failures {
                out.push_str(&format!("  {}: {} != {}\n", f.context, f.lhs, f.rhs));
            }
        }
        out
    }
}

fn hword_elem(hopf: &Hopf, w: &HWord) -> Result<HopfElem> {
    HopfElem::from_raw(hopf, vec![(hopf.field().one(), w.0.clone())])
}

/// The adjoint action of h on a smash element: sum h1 . xi . S(h2) over the
/// coproduct. On a pure Hopf part this is the usual adjoint action; on a
/// pure word part it collapses to the module action.
fn smash_adjoint(h: &HopfElem, xi: &SmashElem) -> Result<SmashElem> {
    let action = xi.action();
    let hopf = action.hopf();
    let mut out = SmashElem::zero(action);
    for (legs, c) in h.coproduct()?.terms() {
        let h1 = hword_elem(hopf, &legs[0])?;
        let s2 = hword_elem(hopf, &legs[1])?.antipode()?;
        let term = SmashElem::from_hopf(action, &h1)?
            .mul(xi)?
            .mul(&SmashElem::from_hopf(action, &s2)?)?;
        out = out.add(&term.scale(c))?;
    }
    Ok(out)
}

/// Apply a per-relation family of smash values to an intersection element
/// from both sides: the left result pairs each value with the trailing
/// generator, the right result pairs the leading generator with each value.
fn apply_both_sides(
    values: &[SmashElem],
    xi: &OverlapElem,
    module: &ModuleAlgebra,
) -> Result<(SmashElem, SmashElem)> {
    let action = module.action();
    let gens = module.alg().gens();
    let field = module.alg().field();
    let mut lhs = SmashElem::zero(action);
    for ((i, g), c) in &xi.left {
        let w = SmashElem::from_poly(action, &NcPoly::gen(gens, *g as u8, field))?;
        lhs = lhs.add(&values[*i].mul(&w)?.scale(c))?;
    }
    let mut rhs = SmashElem::zero(action);
    for ((g, j), d) in &xi.right {
        let w = SmashElem::from_poly(action, &NcPoly::gen(gens, *g as u8, field))?;
        rhs = rhs.add(&w.mul(&values[*j])?.scale(d))?;
    }
    Ok((lhs, rhs))
}

fn validate_overlaps(module: &ModuleAlgebra, overlaps: &[OverlapElem]) -> Result<()> {
    let nr = module.alg().num_relations();
    let ng = module.alg().gens().len();
    for xi in overlaps {
        let ok = xi.left.iter().all(|((i, g), _)| *i < nr && *g < ng)
            && xi.right.iter().all(|((g, j), _)| *g < ng && *j < nr);
        if !ok {
            return Err(Error::RelationMismatch(
                "overlap element indexes outside the presentation".into(),
            ));
        }
    }
    Ok(())
}

/// Equivariance of a deformation map: for every Hopf generator h and every
/// relation r, the value on h.r (taken through the relation coordinates of
/// the acted relation) must equal the adjoint action of h on the value at r.
/// Checking generators suffices: both sides are actions, so the condition
/// propagates to products and linear combinations.
pub fn check_invariance(kappa: &KappaMap) -> Result<CheckReport> {
    let module = kappa.module();
    let alg = module.alg();
    let hopf = module.hopf();
    let mut report = CheckReport {
        title: "equivariance".into(),
        checks: 0,
        failures: vec![],
    };
    for gi in 0..hopf.num_gens() as u8 {
        let h = HopfElem::gen(hopf, gi)?;
        for (m, label) in alg.labels().iter().enumerate() {
            let acted = module.act(&h, &alg.relations()[m])?;
            let lhs = kappa.apply(&acted)?;
            let rhs = smash_adjoint(&h, &kappa.as_smash(m)?)?;
            report.checks += 1;
            if lhs != rhs {
                report.failures.push(CheckFailure {
                    context: format!("{} . {label}", hopf.gen_name(gi)),
                    lhs: lhs.render(),
                    rhs: rhs.render(),
                });
            }
        }
    }
    Ok(report)
}

/// The two-sided overlap identity for maps with no linear part: on every
/// basis element of the intersection, applying the map through the left
/// factorisation agrees with applying it through the right one, compared in
/// the smash product after pushing all Hopf parts to the right.
pub fn check_overlap(kappa: &KappaMap, overlaps: &[OverlapElem]) -> Result<CheckReport> {
    if kappa.has_linear_part() {
        return Err(Error::BadParams(
            "the overlap identity applies to maps with no linear part; \
             use check_full_conditions instead"
                .into(),
        ));
    }
    let module = kappa.module();
    validate_overlaps(module, overlaps)?;
    let values: Vec<SmashElem> = (0..module.alg().num_relations())
        .map(|i| kappa.as_smash(i))
        .collect::<Result<_>>()?;
    let mut report = CheckReport {
        title: "overlap identity".into(),
        checks: 0,
        failures: vec![],
    };
    for (t, xi) in overlaps.iter().enumerate() {
        let (lhs, rhs) = apply_both_sides(&values, xi, module)?;
        report.checks += 1;
        if lhs != rhs {
            report.failures.push(CheckFailure {
                context: format!("overlap element {t}"),
                lhs: lhs.render(),
                rhs: rhs.render(),
            });
        }
    }
    Ok(report)
}

/// The full condition set for a map with a possibly nonzero linear part:
/// equivariance, containment of the linear part's two-sided image in the
/// relation span, the composed identity tying that image back to the
/// constant part, and annihilation of the image by the constant part. The
/// two composed conditions can only be evaluated on elements whose image
/// containment holds; where it fails they are reported as not evaluated.
pub fn check_full_conditions(kappa: &KappaMap, overlaps: &[OverlapElem]) -> Result<CheckReport> {
    let module = kappa.module();
    let alg = module.alg();
    let action = module.action();
    let hopf = module.hopf();
    validate_overlaps(module, overlaps)?;
    let mut report = CheckReport {
        title: "full deformation conditions".into(),
        checks: 0,
        failures: vec![],
    };
    let inv = check_invariance(kappa)?;
    report.checks += inv.checks;
    report.failures.extend(inv.failures.into_iter().map(|f| CheckFailure {
        context: format!("equivariance, {}", f.context),
        lhs: f.lhs,
        rhs: f.rhs,
    }));
    let nr = alg.num_relations();
    let constants: Vec<SmashElem> = (0..nr)
        .map(|i| SmashElem::from_hopf(action, kappa.constant(i)))
        .collect::<Result<_>>()?;
    let linears: Vec<SmashElem> = (0..nr).map(|i| kappa.linear(i).clone()).collect();
    for (t, xi) in overlaps.iter().enumerate() {
        // Image containment: the linear part applied from both sides lands
        // in the relation span, one Hopf component at a time.
        let (bl, br) = apply_both_sides(&linears, xi, module)?;
        let beta = bl.sub(&br)?;
        let mut contained = true;
        let mut linear_of_beta = SmashElem::zero(action);
        let mut constant_of_beta = SmashElem::zero(action);
        report.checks += 1;
        for (hw, p) in beta.by_hopf_component() {
            match alg.relation_coords(&p)? {
                Some(coords) => {
                    let tail = SmashElem::from_hopf(action, &hword_elem(hopf, &hw)?)?;
                    for (j, c) in coords.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        linear_of_beta = linear_of_beta.add(&linears[j].mul(&tail)?.scale(c))?;
                        constant_of_beta =
                            constant_of_beta.add(&constants[j].mul(&tail)?.scale(c))?;
                    }
                }
                None => {
                    contained = false;
                    let residue = alg.rel_space().residue(&p)?;
                    report.failures.push(CheckFailure {
                        context: format!(
                            "image containment, overlap element {t}, component {}",
                            hword_elem(hopf, &hw)?.render()
                        ),
                        lhs: p.render(),
                        rhs: format!("a relation combination (residue {})", residue.render()),
                    });
                }
            }
        }
        // Composed identity: the linear part applied to the image equals
        // minus the constant part's two-sided difference.
        report.checks += 1;
        if contained {
            let (cl, cr) = apply_both_sides(&constants, xi, module)?;
            let rhs = cl.sub(&cr)?.neg();
            if linear_of_beta != rhs {
                report.failures.push(CheckFailure {
                    context: format!("composed identity, overlap element {t}"),
                    lhs: linear_of_beta.render(),
                    rhs: rhs.render(),
                });
            }
        } else {
            report.failures.push(CheckFailure {
                context: format!("composed identity, overlap element {t}"),
                lhs: "(not evaluated)".into(),
                rhs: "image containment failed".into(),
            });
        }
        // Annihilation: the constant part applied to the image vanishes.
        report.checks += 1;
        if contained {
            if !constant_of_beta.is_zero() {
                report.failures.push(CheckFailure {
                    context: format!("constant annihilation, overlap element {t}"),
                    lhs: constant_of_beta.render(),
                    rhs: "0".into(),
                });
            }
        } else {
            report.failures.push(CheckFailure {
                context: format!("constant annihilation, overlap element {t}"),
                lhs: "(not evaluated)".into(),
                rhs: "image containment failed".into(),
            });
        }
    }
    Ok(report)
}

/// A finite list of candidate H-values per relation. The solver treats one
/// scalar per candidate as an unknown; candidates should be distinct within
/// each relation.
#[derive(Debug, Clone)]
pub struct AnsatzSpace {
    candidates: Vec<Vec<HopfElem>>,
}

impl AnsatzSpace {
    /// Candidate lists supplied per relation, in presentation order.
    pub fn new(module: &ModuleAlgebra, candidates: Vec<Vec<HopfElem>>) -> Result<AnsatzSpace> {
        if candidates.len() != module.alg().num_relations() {
            return Err(Error::RelationMismatch(format!(
                "{} candidate lists for {} relations",
                candidates.len(),
                module.alg().num_relations()
            )));
        }
        for list in &candidates {
            for h in list {
                if h.hopf() != module.hopf() {
                    return Err(Error::Presentation(
                        "ansatz value from a different Hopf algebra".into(),
                    ));
                }
            }
        }
        Ok(AnsatzSpace { candidates })
    }

    /// The full word basis of a finite dimensional Hopf algebra, on every
    /// relation.
    pub fn full(module: &ModuleAlgebra) -> Result<AnsatzSpace> {
        let hopf = module.hopf();
        let basis: Vec<HopfElem> = hopf
            .finite_basis()?
            .iter()
            .map(|w| hword_elem(hopf, w))
            .collect::<Result<_>>()?;
        Ok(AnsatzSpace {
            candidates: vec![basis; module.alg().num_relations()],
        })
    }

    pub fn candidates(&self, relation: usize) -> &[HopfElem] {
        &self.candidates[relation]
    }

    /// Total number of solver unknowns.
    pub fn num_unknowns(&self) -> usize {
        self.candidates.iter().map(|c| c.len()).sum()
    }

    /// Unknown names in solver order: relations in presentation order, then
    /// candidate index within the relation.
    pub fn unknown_names(&self, module: &ModuleAlgebra) -> Vec<String> {
        let mut names = vec![];
        for (i, label) in module.alg().labels().iter().enumerate() {
            for h in &self.candidates[i] {
                names.push(format!("{label}[{}]", h.render()));
            }
        }
        names
    }

    /// Bind a coefficient vector in solver order to a concrete map with no
    /// linear part.
    pub fn instantiate(&self, module: &ModuleAlgebra, coeffs: &[Scalar]) -> Result<KappaMap> {
        if self.candidates.len() != module.alg().num_relations() {
            return Err(Error::RelationMismatch(format!(
                "{} candidate lists for {} relations",
                self.candidates.len(),
                module.alg().num_relations()
            )));
        }
        if coeffs.len() != self.num_unknowns() {
            return Err(Error::BadParams(format!(
                "{} coefficients for {} ansatz slots",
                coeffs.len(),
                self.num_unknowns()
            )));
        }
        let mut kappa = KappaMap::zero(module);
        let mut pos = 0;
        for (i, list) in self.candidates.iter().enumerate() {
            let mut value = HopfElem::zero(module.hopf());
            for h in list {
                value = value.add(&h.scale(&coeffs[pos]))?;
                pos += 1;
            }
            kappa.constant[i] = value;
        }
        Ok(kappa)
    }
}

/// The solved parameter space together with the data a report needs: the
/// number of nonzero constraint rows and the intersection basis the overlap
/// equations ran over.
#[derive(Debug, Clone)]
pub struct KappaSolution {
    pub space: SolutionSpace,
    pub constraint_rows: usize,
    pub overlaps: Vec<OverlapElem>,
}

/// The difference elements (one per condition slot) for the unit map that
/// sends relation `i` to `value` and every other relation to zero. Slots are
/// ordered: equivariance by (Hopf generator, relation), then the overlap
/// identity by intersection element.
fn unit_differences(
    module: &ModuleAlgebra,
    overlaps: &[OverlapElem],
    acted_coords: &[Vec<Vec<Scalar>>],
    i: usize,
    value: &HopfElem,
) -> Result<Vec<SmashElem>> {
    let alg = module.alg();
    let action = module.action();
    let gens = alg.gens();
    let field = alg.field();
    let hopf = module.hopf();
    let smash_value = SmashElem::from_hopf(action, value)?;
    let mut slots = vec![];
    for (gi, per_relation) in acted_coords.iter().enumerate() {
        let h = HopfElem::gen(hopf, gi as u8)?;
        let adjoint = smash_adjoint(&h, &smash_value)?;
        for (m, coords) in per_relation.iter().enumerate() {
            let mut diff = smash_value.scale(&coords[i]);
            if m == i {
                diff = diff.sub(&adjoint)?;
            }
            slots.push(diff);
        }
    }
    for xi in overlaps {
        let mut diff = SmashElem::zero(action);
        for ((ri, g), c) in &xi.left {
            if *ri != i {
                continue;
            }
            let w = SmashElem::from_poly(action, &NcPoly::gen(gens, *g as u8, field))?;
            diff = diff.add(&smash_value.mul(&w)?.scale(c))?;
        }
        for ((g, rj), d) in &xi.right {
            if *rj != i {
                continue;
            }
            let w = SmashElem::from_poly(action, &NcPoly::gen(gens, *g as u8, field))?;
            diff = diff.sub(&w.mul(&smash_value)?.scale(d))?;
        }
        slots.push(diff);
    }
    Ok(slots)
}

/// The parameter space of deformation maps with no linear part drawn from a
/// finite ansatz. Every equivariance and overlap comparison is linear in the
/// map, so each smash-term coordinate of each comparison contributes one
/// exact homogeneous equation over the ansatz coefficients. Unknowns are
/// ordered by relation (presentation order), then candidate index; equations
/// by condition slot, then smash term. The computation is pure: independent
/// inputs can be solved concurrently.
pub fn solve_kappa(module: &ModuleAlgebra, ansatz: &AnsatzSpace) -> Result<KappaSolution> {
    let alg = module.alg();
    let hopf = module.hopf();
    let field = alg.field();
    if ansatz.candidates.len() != alg.num_relations() {
        return Err(Error::RelationMismatch(format!(
            "{} candidate lists for {} relations",
            ansatz.candidates.len(),
            alg.num_relations()
        )));
    }
    let overlaps = overlap_intersection(alg)?;
    // Coordinates of each acted relation in the relation basis, shared
    // across all unit maps.
    let mut acted_coords = vec![];
    for gi in 0..hopf.num_gens() as u8 {
        let h = HopfElem::gen(hopf, gi)?;
        let mut per = vec![];
        for (m, r) in alg.relations().iter().enumerate() {
            let acted = module.act(&h, r)?;
            let coords = match alg.relation_coords(&acted)? {
                Some(coords) => coords,
                None => {
                    return Err(Error::NotSubmodule {
                        hopf_gen: hopf.gen_name(gi).to_string(),
                        label: alg.labels()[m].clone(),
                        residue: alg.rel_space().residue(&acted)?.render(),
                    })
                }
            };
            per.push(coords);
        }
        acted_coords.push(per);
    }
    let unknowns = ansatz.unknown_names(module);
    let mut columns = Vec::with_capacity(unknowns.len());
    for i in 0..alg.num_relations() {
        for h in ansatz.candidates(i) {
            columns.push(unit_differences(module, &overlaps, &acted_coords, i, h)?);
        }
    }
    let num_slots = alg.num_relations() * hopf.num_gens() + overlaps.len();
    let mut equations = vec![];
    for s in 0..num_slots {
        let mut keys = BTreeSet::new();
        for col in &columns {
            keys.extend(col[s].terms().map(|(k, _)| k.clone()));
        }
        for key in keys {
            let row = SparseVec::collect(
                columns
                    .iter()
                    .enumerate()
                    .filter_map(|(u, col)| {
                        col[s].coeff(&key.0, &key.1).map(|c| (u as u32, c.clone()))
                    })
                    .collect(),
            );
            if !row.is_zero() {
                equations.push((row, field.zero()));
            }
        }
    }
    let constraint_rows = equations.len();
    let space = solve_linear(unknowns, equations, field, UpdateMode::auto());
    Ok(KappaSolution {
        space,
        constraint_rows,
        overlaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{ActionSpec, Matrix, QuadraticAlgebra};
    use crate::freealg::{GenSet, Word};
    use crate::grading::dim_graded;
    use crate::hopf::{kc2, sweedler, TensorElem};
    use crate::products::{braided_opposite, braided_product, BraidingSpec};
    use crate::scalar::Field;

    fn word(letters: &[u8]) -> Word {
        Word(letters.to_vec())
    }

    /// The universal R-matrix family of the four dimensional Hopf algebra
    /// generated by a grouplike g and a skew primitive x.
    fn r_matrix(hopf: &crate::hopf::Hopf, lambda: i64) -> TensorElem {
        let field = hopf.field();
        let half = field.ratio(1, 2).unwrap();
        let lh = field.ratio(lambda, 2).unwrap();
        let e: Vec<(u8, i64)> = vec![];
        let g = vec![(0u8, 1i64)];
        let x = vec![(1u8, 1i64)];
        let gx = vec![(0u8, 1i64), (1u8, 1i64)];
        let mut r = TensorElem::zero(hopf, 2);
        for (a, b, c) in [
            (e.clone(), e.clone(), half.clone()),
            (e.clone(), g.clone(), half.clone()),
            (g.clone(), e.clone(), half.clone()),
            (g.clone(), g.clone(), -&half),
            (x.clone(), x.clone(), lh.clone()),
            (x.clone(), gx.clone(), lh.clone()),
            (gx.clone(), gx.clone(), lh.clone()),
            (gx.clone(), x.clone(), -&lh),
        ] {
            r.add_term(vec![HWord(a), HWord(b)], c);
        }
        r
    }

    /// The commutative plane as a module algebra over the four dimensional
    /// Hopf algebra: g negates v and fixes u, x sends v to u and u to zero.
    fn plane(field: &Field, hopf: &crate::hopf::Hopf) -> ModuleAlgebra {
        let gens = GenSet::new(vec!["u", "v"]).unwrap();
        let one = field.one();
        let zero = field.zero();
        let mg = Matrix::from_cols(
            field,
            vec![vec![one.clone(), zero.clone()], vec![zero.clone(), -&one]],
        )
        .unwrap();
        let mx = Matrix::from_cols(
            field,
            vec![vec![zero.clone(), zero.clone()], vec![one.clone(), zero.clone()]],
        )
        .unwrap();
        let action = ActionSpec::new(hopf, &gens, vec![mg, mx]).unwrap();
        let mut r = NcPoly::term(&gens, word(&[0, 1]), one.clone());
        r.add_term(word(&[1, 0]), -&one);
        let alg =
            QuadraticAlgebra::new(&gens, field, vec!["r".into()], vec![r]).unwrap();
        ModuleAlgebra::new(alg, action).unwrap()
    }

    /// The braided product of the plane with its braided opposite, with the
    /// relation basis named r1..r6 in the published order: the two internal
    /// commutators first, then the four mixed relations.
    fn plane_double(lambda: i64) -> ModuleAlgebra {
        let field = Field::rationals();
        let hopf = sweedler(&field).unwrap();
        let a = plane(&field, &hopf);
        let braiding = BraidingSpec::RMatrix(r_matrix(&hopf, lambda));
        let primed = GenSet::new(vec!["u'", "v'"]).unwrap();
        let aop = braided_opposite(&a, &braiding, &primed, "s").unwrap();
        assert_eq!(aop.alg().num_relations(), 1);
        let mut comm = NcPoly::term(&primed, word(&[0, 1]), field.one());
        comm.add_term(word(&[1, 0]), -&field.one());
        assert!(aop.alg().rel_space().contains(&comm).unwrap());
        let prod = braided_product(&a, &aop, &braiding).unwrap();
        // Combined generators u, v, u', v'.
        let gens = prod.alg().gens().clone();
        let one = field.one();
        let lam = field.integer(lambda);
        let mut rels = vec![];
        for (pos, neg) in [([0u8, 1u8], [1u8, 0u8]), ([2, 3], [3, 2]), ([0, 3], [3, 0])] {
            let mut p = NcPoly::term(&gens, word(&pos), one.clone());
            p.add_term(word(&neg), -&one);
            rels.push(p);
        }
        let mut r4 = NcPoly::term(&gens, word(&[1, 3]), one.clone());
        r4.add_term(word(&[3, 1]), one.clone());
        r4.add_term(word(&[0, 2]), -&lam);
        rels.push(r4);
        for (pos, neg) in [([0u8, 2u8], [2u8, 0u8]), ([1, 2], [2, 1])] {
            let mut p = NcPoly::term(&gens, word(&pos), one.clone());
            p.add_term(word(&neg), -&one);
            rels.push(p);
        }
        let labels = (1..=6).map(|i| format!("r{i}")).collect();
        prod.with_relations(labels, rels).unwrap()
    }

    fn gen_smash(module: &ModuleAlgebra, idx: u8) -> SmashElem {
        let p = NcPoly::gen(module.alg().gens(), idx, module.alg().field());
        SmashElem::from_poly(module.action(), &p).unwrap()
    }

    #[test]
    fn a_free_algebra_has_no_overlap_elements() {
        let field = Field::rationals();
        let gens = GenSet::new(vec!["a", "b"]).unwrap();
        let alg = QuadraticAlgebra::free(&gens, &field).unwrap();
        assert!(overlap_intersection(&alg).unwrap().is_empty());
    }

    #[test]
    fn plane_double_overlaps_match_the_graded_dimension_count() {
        let prod = plane_double(1);
        let alg = prod.alg();
        let overlaps = overlap_intersection(alg).unwrap();
        // The cubic component of the product has the binomial dimension of
        // four commuting variables, so the intersection dimension follows
        // from dim(I.W) + dim(W.I) - dim W^3 + dim R_3.
        let r3 = dim_graded(alg, 3).unwrap();
        assert_eq!(r3, 20);
        assert_eq!(overlaps.len(), 6 * 4 + 4 * 6 + r3 - 64);
        let gens = alg.gens();
        let field = alg.field();
        for xi in &overlaps {
            assert_eq!(xi.vector.homogeneous_degree(), Some(3));
            // The right factorisation rebuilds the same cubic.
            let mut rebuilt = NcPoly::zero(gens, field);
            for ((g, j), d) in &xi.right {
                let p = NcPoly::gen(gens, *g as u8, field)
                    .nc_mul(&alg.relations()[*j])
                    .unwrap();
                rebuilt = rebuilt.add(&p.scale(d)).unwrap();
            }
            assert_eq!(rebuilt, xi.vector);
            assert!(xi.render(alg).contains(" = "));
        }
    }

    #[test]
    fn the_plane_double_admits_exactly_one_deformation_direction() {
        let prod = plane_double(1);
        let field = prod.alg().field().clone();
        let ansatz = AnsatzSpace::full(&prod).unwrap();
        assert_eq!(ansatz.num_unknowns(), 24);
        let sol = solve_kappa(&prod, &ansatz).unwrap();
        assert_eq!(sol.space.unknowns.len(), 24);
        assert_eq!(sol.overlaps.len(), 4);
        assert!(sol.constraint_rows > 0);
        assert_eq!(sol.space.dim(), 1);
        // The surviving direction is the unit of H on the symmetric mixed
        // relation and nothing else.
        let mut expected = vec![field.zero(); 24];
        let pos = sol
            .space
            .unknowns
            .iter()
            .position(|u| u == "r4[1]")
            .unwrap();
        expected[pos] = field.one();
        assert!(sol.space.contains(&expected));
        // Round trip: the basis vector instantiates to a map passing both
        // checks.
        let kappa = ansatz.instantiate(&prod, &sol.space.basis[0]).unwrap();
        assert!(check_invariance(&kappa).unwrap().ok());
        assert!(check_overlap(&kappa, &sol.overlaps).unwrap().ok());
    }

    #[test]
    fn the_overlap_identity_separates_the_two_constant_controls() {
        let prod = plane_double(1);
        let hopf = prod.hopf().clone();
        let field = prod.alg().field().clone();
        let overlaps = overlap_intersection(prod.alg()).unwrap();
        // A unit value on the symmetric mixed relation passes everything,
        // at any scale.
        let mut good = KappaMap::zero(&prod);
        good.set_constant("r4", HopfElem::one(&hopf)).unwrap();
        assert!(check_invariance(&good).unwrap().ok());
        assert!(check_overlap(&good, &overlaps).unwrap().ok());
        let scaled = good.scale(&field.integer(5));
        assert!(check_invariance(&scaled).unwrap().ok());
        assert!(check_overlap(&scaled, &overlaps).unwrap().ok());
        // A skew primitive value on the internal commutator passes
        // equivariance but fails the overlap identity, at any scale.
        let mut bad = KappaMap::zero(&prod);
        bad.set_constant("r1", HopfElem::gen(&hopf, 1).unwrap())
            .unwrap();
        assert!(check_invariance(&bad).unwrap().ok());
        let rep = check_overlap(&bad, &overlaps).unwrap();
        assert!(!rep.ok());
        assert!(rep.failures[0].context.contains("overlap element"));
        let rep = check_overlap(&bad.scale(&field.integer(7)), &overlaps).unwrap();
        assert!(!rep.ok());
        // Maps with a linear part are rejected here.
        let mut lin = KappaMap::zero(&prod);
        lin.set_linear("r1", gen_smash(&prod, 0)).unwrap();
        assert!(matches!(
            check_overlap(&lin, &overlaps),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn equivariance_witnesses_point_at_the_unbalanced_relation() {
        let prod = plane_double(1);
        let hopf = prod.hopf().clone();
        let field = prod.alg().field().clone();
        let overlaps = overlap_intersection(prod.alg()).unwrap();
        let g = HopfElem::gen(&hopf, 0).unwrap();
        let gx = hword_elem(&hopf, &HWord(vec![(0, 1), (1, 1)])).unwrap();
        // A grouplike value on the symmetric mixed relation alone is not
        // equivariant: the skew primitive moves it onto the mixed
        // commutators.
        let mut kappa = KappaMap::zero(&prod);
        kappa.set_constant("r4", g.clone()).unwrap();
        let rep = check_invariance(&kappa).unwrap();
        assert!(!rep.ok());
        assert_eq!(rep.failures[0].context, "x . r4");
        // Balancing it on r6 restores equivariance, but the overlap
        // identity still kills the grouplike direction.
        kappa
            .set_constant("r6", gx.scale(&field.integer(2)))
            .unwrap();
        assert!(check_invariance(&kappa).unwrap().ok());
        assert!(!check_overlap(&kappa, &overlaps).unwrap().ok());
    }

    #[test]
    fn full_conditions_reduce_to_the_overlap_identity_without_a_linear_part() {
        let prod = plane_double(1);
        let hopf = prod.hopf().clone();
        let overlaps = overlap_intersection(prod.alg()).unwrap();
        // The zero map passes.
        let zero = KappaMap::zero(&prod);
        assert!(zero.is_zero());
        assert!(check_full_conditions(&zero, &overlaps).unwrap().ok());
        // The good control passes the full set.
        let mut good = KappaMap::zero(&prod);
        good.set_constant("r4", HopfElem::one(&hopf)).unwrap();
        assert!(check_full_conditions(&good, &overlaps).unwrap().ok());
        // The bad control fails exactly through the composed identity,
        // which is the overlap identity in disguise when the linear part
        // vanishes.
        let mut bad = KappaMap::zero(&prod);
        bad.set_constant("r1", HopfElem::gen(&hopf, 1).unwrap())
            .unwrap();
        let rep = check_full_conditions(&bad, &overlaps).unwrap();
        assert!(!rep.ok());
        assert!(rep
            .failures
            .iter()
            .all(|f| f.context.starts_with("composed identity")));
    }

    #[test]
    fn a_linear_part_generically_breaks_image_containment() {
        let prod = plane_double(1);
        let overlaps = overlap_intersection(prod.alg()).unwrap();
        let mut kappa = KappaMap::zero(&prod);
        kappa.set_linear("r1", gen_smash(&prod, 0)).unwrap();
        assert!(kappa.has_linear_part());
        let rep = check_full_conditions(&kappa, &overlaps).unwrap();
        assert!(!rep.ok());
        assert!(rep
            .failures
            .iter()
            .any(|f| f.context.starts_with("image containment")));
        // Degree-2 or Hopf-valued terms are not a linear part.
        let two = SmashElem::from_poly(
            prod.action(),
            &NcPoly::term(
                prod.alg().gens(),
                word(&[0, 1]),
                prod.alg().field().one(),
            ),
        )
        .unwrap();
        assert!(matches!(
            KappaMap::zero(&prod).set_linear("r1", two),
            Err(Error::NotHomogeneous(1))
        ));
    }

    #[test]
    fn invariance_is_vacuous_when_the_group_fixes_every_relation() {
        // The sign action of the order-two group algebra on the plane fixes
        // the commutator, the group algebra is its own center, and the
        // intersection in degree 3 is zero: every constant map is a valid
        // deformation.
        let field = Field::rationals();
        let hopf = kc2(&field).unwrap();
        let gens = GenSet::new(vec!["u", "v"]).unwrap();
        let neg = Matrix::identity(&field, 2).scale(&-&field.one());
        let action = ActionSpec::new(&hopf, &gens, vec![neg]).unwrap();
        let one = field.one();
        let mut r = NcPoly::term(&gens, word(&[0, 1]), one.clone());
        r.add_term(word(&[1, 0]), -&one);
        let alg = QuadraticAlgebra::new(&gens, &field, vec!["r".into()], vec![r]).unwrap();
        let module = ModuleAlgebra::new(alg, action).unwrap();
        let overlaps = overlap_intersection(module.alg()).unwrap();
        assert!(overlaps.is_empty());
        let mut kappa = KappaMap::zero(&module);
        let g = HopfElem::gen(&hopf, 0).unwrap();
        kappa
            .set_constant("r", g.scale(&field.integer(3)).add(&HopfElem::one(&hopf)).unwrap())
            .unwrap();
        assert!(check_invariance(&kappa).unwrap().ok());
        assert!(check_overlap(&kappa, &overlaps).unwrap().ok());
        // With no overlap constraints the whole two dimensional ansatz
        // survives.
        let sol = solve_kappa(&module, &AnsatzSpace::full(&module).unwrap()).unwrap();
        assert_eq!(sol.space.dim(), 2);
        assert_eq!(sol.overlaps.len(), 0);
    }
}

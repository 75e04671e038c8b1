//! Report documents for the batch front end.
//!
//! Every command produces one typed, serialisable document; the text form is
//! rendered line by line from owned data, so equal inputs give byte-equal
//! output in both formats. Golden tests rely on that.

use serde::Serialize;

use crate::action::ModuleAlgebra;
use crate::catalog::ExampleBundle;
use crate::deform::{AnsatzSpace, CheckReport, KappaMap, KappaSolution};
use crate::grading::{Confluence, ReductionSystem};
use crate::scalar::render_terms;
use crate::Result;

/// The example listing.
#[derive(Debug, Clone, Serialize)]
pub struct ListReport {
    pub examples: Vec<ListEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ListEntry {
    pub name: String,
    pub summary: String,
    pub params: String,
}

impl ListReport {
    pub fn new() -> ListReport {
        ListReport {
            examples: crate::catalog::list()
                .into_iter()
                .map(|info| ListEntry {
                    name: info.name.to_string(),
                    summary: info.summary.to_string(),
                    params: info.params.to_string(),
                })
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::from("available examples:\n");
        let width = self
            .examples
            .iter()
            .map(|e| e.name.len())
            .max()
            .unwrap_or(0);
        for e in &self.examples {
            out.push_str(&format!("  {:width$}  {}\n", e.name, e.summary));
            out.push_str(&format!("  {:width$}  parameters: {}\n", "", e.params));
        }
        out
    }
}

impl Default for ListReport {
    fn default() -> Self {
        ListReport::new()
    }
}

/// One nonzero entry of the generator-on-relation action.
#[derive(Debug, Clone, Serialize)]
pub struct ActionRow {
    pub gen: String,
    pub relation: String,
    pub image: String,
}

/// The construction summary for one example bundle.
#[derive(Debug, Clone, Serialize)]
pub struct BuildReport {
    pub name: String,
    pub construction: String,
    pub description: String,
    pub field: String,
    pub hopf_generators: Vec<String>,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub action: Vec<ActionRow>,
    pub hilbert: Option<Vec<usize>>,
    pub intersection_dim: Option<usize>,
    pub parameter_dim: Option<usize>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

impl BuildReport {
    pub fn new(bundle: &ExampleBundle) -> Result<BuildReport> {
        let alg = bundle.module.alg();
        let table = bundle.module.action_table()?;
        let mut action = vec![];
        for (gi, gen) in table.hopf_gens.iter().enumerate() {
            for (ri, relation) in table.labels.iter().enumerate() {
                let entry = table.entry(gi, ri);
                if entry.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let image = render_terms(
                    entry
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (table.labels[k].clone(), c)),
                );
                action.push(ActionRow {
                    gen: gen.clone(),
                    relation: relation.clone(),
                    image,
                });
            }
        }

        // Graded dimensions never assume a PBW basis; when the relations
        // admit no confluent quadratic rewriting system for the default
        // generator order, say so next to the sizes.
        let order: Vec<u8> = (0..alg.gens().len() as u8).collect();
        let confluence =
            ReductionSystem::new(alg.gens(), alg.field(), alg.relations(), &order)?
                .confluence_check()?;
        let notes = match confluence {
            Confluence::Confluent => vec![
                "the quadratic rewriting system for the listed generator order is \
                 confluent; its normal words form a basis"
                    .to_string(),
            ],
            Confluence::Obstructed { triple, left, right } => vec![format!(
                "no confluent quadratic rewriting for the listed generator order: \
                 {}.{}.{} reduces to both {} and {}; graded dimensions are computed \
                 by exact elimination instead",
                triple.0, triple.1, triple.2, left, right
            )],
        };

        Ok(BuildReport {
            name: bundle.name.clone(),
            construction: bundle.source.clone(),
            description: bundle.description.clone(),
            field: alg.field().describe(),
            hopf_generators: (0..bundle.hopf.num_gens() as u8)
                .map(|i| bundle.hopf.gen_name(i).to_string())
                .collect(),
            generators: alg.gens().names().to_vec(),
            relations: alg.describe_relations(),
            action,
            hilbert: bundle.expected.hilbert.clone(),
            intersection_dim: bundle.expected.intersection_dim,
            parameter_dim: bundle.expected.parameter_dim,
            warnings: bundle.warnings.clone(),
            notes,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("example: {}\n", self.name));
        out.push_str(&format!("construction: {}\n", self.construction));
        out.push_str(&format!("{}\n", self.description));
        out.push_str(&format!("field: {}\n", self.field));
        out.push_str(&format!(
            "hopf generators: {}\n",
            self.hopf_generators.join(", ")
        ));
        out.push_str(&format!("generators: {}\n", self.generators.join(", ")));
        out.push_str("relations:\n");
        for r in &self.relations {
            out.push_str(&format!("  {r}\n"));
        }
        out.push_str("action on relations (nonzero entries):\n");
        for row in &self.action {
            out.push_str(&format!("  {} . {} = {}\n", row.gen, row.relation, row.image));
        }
        if let Some(h) = &self.hilbert {
            out.push_str(&format!(
                "graded dimensions (degrees 0..{}): {}\n",
                h.len().saturating_sub(1),
                join_usizes(h)
            ));
        }
        if let Some(d) = self.intersection_dim {
            out.push_str(&format!("overlap intersection dimension: {d}\n"));
        }
        if let Some(d) = self.parameter_dim {
            out.push_str(&format!("parameter space dimension: {d}\n"));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

/// The outcome of solving for all constant deformation maps in an ansatz.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub name: String,
    pub ansatz: String,
    pub unknowns: usize,
    pub constraint_rows: usize,
    pub dimension: usize,
    /// Each basis map as its per-relation assignment lines.
    pub basis: Vec<Vec<String>>,
    pub intersection_dim: usize,
    pub intersection: Vec<String>,
    /// The documented dimension, when the bundle carries one.
    pub expected_dimension: Option<usize>,
}

impl SolveReport {
    pub fn new(
        name: &str,
        module: &ModuleAlgebra,
        ansatz_desc: &str,
        ansatz: &AnsatzSpace,
        solution: &KappaSolution,
        expected_dimension: Option<usize>,
    ) -> Result<SolveReport> {
        let mut basis = vec![];
        for coeffs in &solution.space.basis {
            let kappa = ansatz.instantiate(module, coeffs)?;
            basis.push(
                kappa
                    .render()
                    .lines()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>(),
            );
        }
        let alg = module.alg();
        Ok(SolveReport {
            name: name.to_string(),
            ansatz: ansatz_desc.to_string(),
            unknowns: ansatz.num_unknowns(),
            constraint_rows: solution.constraint_rows,
            dimension: solution.space.dim(),
            basis,
            intersection_dim: solution.overlaps.len(),
            intersection: solution
                .overlaps
                .iter()
                .map(|o| o.render(alg))
                .collect(),
            expected_dimension,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("solve: {}\n", self.name));
        out.push_str(&format!("ansatz: {}\n", self.ansatz));
        out.push_str(&format!("unknowns: {}\n", self.unknowns));
        out.push_str(&format!("constraint rows: {}\n", self.constraint_rows));
        out.push_str(&format!("parameter space dimension: {}\n", self.dimension));
        out.push_str("basis:\n");
        for (i, lines) in self.basis.iter().enumerate() {
            out.push_str(&format!("  map {}:\n", i + 1));
            for l in lines {
                out.push_str(&format!("    {l}\n"));
            }
        }
        out.push_str(&format!(
            "overlap intersection basis ({} elements):\n",
            self.intersection_dim
        ));
        for o in &self.intersection {
            out.push_str(&format!("  {o}\n"));
        }
        if let Some(want) = self.expected_dimension {
            let verdict = if want == self.dimension {
                "matches"
            } else {
                "DOES NOT match"
            };
            out.push_str(&format!(
                "documented dimension: {want} ({verdict} the solved dimension)\n"
            ));
        }
        out
    }
}

/// One deformation condition with its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub condition: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl From<&CheckReport> for ConditionReport {
    fn from(r: &CheckReport) -> ConditionReport {
        ConditionReport {
            condition: r.title.clone(),
            checks: r.checks,
            failures: r
                .failures
                .iter()
                .map(|f| format!("{}: {} != {}", f.context, f.lhs, f.rhs))
                .collect(),
        }
    }
}

/// The verification of one concrete deformation map.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub kappa: Vec<String>,
    pub conditions: Vec<ConditionReport>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn new(name: &str, kappa: &KappaMap, conditions: Vec<ConditionReport>) -> VerifyReport {
        let pass = conditions.iter().all(|c| c.failures.is_empty());
        VerifyReport {
            name: name.to_string(),
            kappa: kappa.render().lines().map(|l| l.to_string()).collect(),
            conditions,
            pass,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("verify: {}\n", self.name));
        out.push_str("deformation map:\n");
        for l in &self.kappa {
            out.push_str(&format!("  {l}\n"));
        }
        for c in &self.conditions {
            if c.failures.is_empty() {
                out.push_str(&format!("{}: {} checks, all passed\n", c.condition, c.checks));
            } else {
                out.push_str(&format!(
                    "{}: {} checks, {} failed\n",
                    c.condition,
                    c.checks,
                    c.failures.len()
                ));
                for f in &c.failures {
                    out.push_str(&format!("  {f}\n"));
                }
            }
        }
        out.push_str(if self.pass {
            "result: pass\n"
        } else {
            "result: FAIL\n"
        });
        out
    }
}

/// One structural check (axioms, braiding, module compatibility) outcome.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn passed(check: &str, detail: &str) -> CheckOutcome {
        CheckOutcome {
            check: check.to_string(),
            pass: true,
            detail: detail.to_string(),
        }
    }

    pub fn failed(check: &str, detail: &str) -> CheckOutcome {
        CheckOutcome {
            check: check.to_string(),
            pass: false,
            detail: detail.to_string(),
        }
    }
}

/// The structural check suite for one bundle.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomsReport {
    pub name: String,
    pub results: Vec<CheckOutcome>,
    pub pass: bool,
}

impl AxiomsReport {
    pub fn new(name: &str, results: Vec<CheckOutcome>) -> AxiomsReport {
        let pass = results.iter().all(|r| r.pass);
        AxiomsReport {
            name: name.to_string(),
            results,
            pass,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("check-axioms: {}\n", self.name));
        for r in &self.results {
            let mark = if r.pass { "pass" } else { "FAIL" };
            if r.detail.is_empty() {
                out.push_str(&format!("  {}: {mark}\n", r.check));
            } else {
                out.push_str(&format!("  {}: {mark} ({})\n", r.check, r.detail));
            }
        }
        out.push_str(if self.pass {
            "result: pass\n"
        } else {
            "result: FAIL\n"
        });
        out
    }
}

/// Graded dimensions of a bundle's algebra.
#[derive(Debug, Clone, Serialize)]
pub struct DimsReport {
    pub name: String,
    pub max_degree: usize,
    pub dims: Vec<usize>,
    /// The tensor-decomposition cross-check for products: sum over
    /// i + j = d of the factor dimensions. Absent for single factors.
    pub factor_cross_check: Option<Vec<usize>>,
    pub notes: Vec<String>,
}

impl DimsReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("dims: {}\n", self.name));
        out.push_str(&format!("degrees 0..{}\n", self.max_degree));
        out.push_str(&format!("{}\n", join_usizes(&self.dims)));
        if let Some(cross) = &self.factor_cross_check {
            let verdict = if cross == &self.dims {
                "matches"
            } else {
                "DOES NOT match"
            };
            out.push_str(&format!(
                "factor cross-check: {} ({verdict})\n",
                join_usizes(cross)
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

fn join_usizes(xs: &[usize]) -> String {
    xs.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_example;
    use crate::deform::solve_kappa;
    use crate::parse::Params;

    #[test]
    fn solve_report_states_the_dimension() {
        let bundle = build_example("sweedler-plane", &Params::new()).unwrap();
        let ansatz = AnsatzSpace::full(&bundle.module).unwrap();
        let solution = solve_kappa(&bundle.module, &ansatz).unwrap();
        let report = SolveReport::new(
            "sweedler-plane",
            &bundle.module,
            "full Hopf basis",
            &ansatz,
            &solution,
            bundle.expected.parameter_dim,
        )
        .unwrap();
        let text = report.render();
        assert!(text.contains("parameter space dimension: 1"));
        assert!(text.contains("matches the solved dimension"));
        assert!(text.contains("overlap intersection basis (4 elements):"));
    }

    #[test]
    fn build_report_lists_relations_and_action() {
        let bundle = build_example("jordan-c2-R", &Params::new()).unwrap();
        let report = BuildReport::new(&bundle).unwrap();
        let text = report.render();
        assert!(text.contains("example: jordan-c2-R"));
        assert!(text.contains("g . r1 = r1"));
        assert!(text.contains("overlap intersection dimension: 4"));
        let json = serde_json::to_string_pretty(&report).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["name"], "jordan-c2-R");
    }

    #[test]
    fn reports_are_byte_deterministic() {
        let a = BuildReport::new(&build_example("sklyanin-c2-R", &Params::new()).unwrap())
            .unwrap();
        let b = BuildReport::new(&build_example("sklyanin-c2-R", &Params::new()).unwrap())
            .unwrap();
        assert_eq!(a.render(), b.render());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn sklyanin_build_note_reports_the_obstruction() {
        let bundle = build_example("sklyanin", &Params::new()).unwrap();
        let report = BuildReport::new(&bundle).unwrap();
        assert!(report.notes[0].contains("no confluent quadratic rewriting"));
        assert!(report.notes[0].contains("reduces to both"));
    }
}

//! Brute-force reference implementations and the seeded random corpus used
//! to validate the formula-driven operations: direct multiplicity replay,
//! witness-search semidefiniteness, and genus bookkeeping from first
//! principles.  Clarity over speed throughout.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blowup::{apply_plan, BlowupEvent, BlowupPlan, Center, EventId};
use crate::error::{Error, Result};
use crate::graphs::{build_river, m_formula_biased, Configuration, PointCluster, PointId};
use crate::lattice::{CurveId, CurveRecord, DivisorClass, KodairaDim, SurfaceData, SurfaceModel};

/// One formula-versus-oracle comparison with its reproducibility token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub operation: String,
    pub formula_value: i64,
    pub oracle_value: i64,
    pub agree: bool,
    pub seed: u64,
}

impl OracleReport {
    fn new(operation: &str, formula_value: i64, oracle_value: i64, seed: u64) -> Self {
        OracleReport {
            operation: operation.to_owned(),
            formula_value,
            oracle_value,
            agree: formula_value == oracle_value,
            seed,
        }
    }
}

/// The target quantity of the river identity, computed by replaying the
/// plan and summing total-transform coefficients of the exceptional curves
/// whose strict transforms still square to -1.
pub fn oracle_m(plan: &BlowupPlan) -> Result<i64> {
    let state = apply_plan(plan)?;
    crate::graphs::m_oracle(&state)
}

/// Exhaustive witness search for negative semidefiniteness: false iff some
/// v in [-bound, bound]^n \ {0} gives v^T G v > 0.  Sound for "not
/// semidefinite"; box-limited for "semidefinite".
pub fn oracle_semidef(gram: &[Vec<i64>], bound: i64) -> Result<bool> {
    let n = gram.len();
    if n > 6 || bound > 5 {
        return Err(Error::Precondition(format!(
            "witness search budget is n <= 6, bound <= 5; got n = {n}, bound = {bound}"
        )));
    }
    if bound < 1 {
        return Err(Error::Precondition("witness box must be non-trivial".into()));
    }
    let mut v = vec![-bound; n];
    loop {
        if v.iter().any(|&x| x != 0) {
            let mut q = 0i64;
            for i in 0..n {
                for j in 0..n {
                    q += v[i] * gram[i][j] * v[j];
                }
            }
            if q > 0 {
                return Ok(false);
            }
        }
        // odometer over the box
        let mut i = 0;
        loop {
            if i == n {
                return Ok(true);
            }
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
            i += 1;
        }
    }
}

/// Sectional genus of the pullback of a class, computed in the extended
/// lattice after replaying the plan.  Equals the genus downstairs.
pub fn oracle_genus(plan: &BlowupPlan, d: &DivisorClass) -> Result<i64> {
    let state = apply_plan(plan)?;
    state.surface.sectional_genus(&d.padded(state.surface.rank()))
}

/// Fixed generation parameters of the random plan corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusParams {
    pub max_depth: usize,
    pub max_branching: usize,
    pub max_mult: i64,
    pub max_events: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            max_depth: 5,
            max_branching: 3,
            max_mult: 4,
            max_events: 32,
        }
    }
}

struct PlanBuilder {
    rng: ChaCha8Rng,
    params: CorpusParams,
    curve_ids: Vec<CurveId>,
    multiplicities: Vec<i64>,
    events: Vec<BlowupEvent>,
    /// Remaining budget of each curve on each event's exceptional curve.
    budgets: BTreeMap<EventId, BTreeMap<CurveId, i64>>,
}

impl PlanBuilder {
    fn next_id(&self) -> EventId {
        EventId::new(format!("e{}", self.events.len() + 1))
    }

    /// Pick a non-empty set of (curve, mult) from the available budgets,
    /// optionally capped by a second budget table (the e-curve's).
    fn pick_passing(
        &mut self,
        host: &EventId,
        cap: Option<&EventId>,
    ) -> Vec<(CurveId, i64)> {
        let mut passing = Vec::new();
        let candidates: Vec<CurveId> = self
            .curve_ids
            .iter()
            .filter(|c| {
                let h = self.budgets[host].get(*c).copied().unwrap_or(0);
                let k = cap.map_or(i64::MAX, |g| {
                    self.budgets[g].get(*c).copied().unwrap_or(0)
                });
                h.min(k) >= 1
            })
            .cloned()
            .collect();
        if candidates.is_empty() {
            return passing;
        }
        for c in &candidates {
            if passing.is_empty() || self.rng.gen_bool(0.4) {
                let h = self.budgets[host][c];
                let k = cap.map_or(i64::MAX, |g| self.budgets[g][c]);
                let top = h.min(k).min(self.params.max_mult);
                let m = self.rng.gen_range(1..=top);
                passing.push((c.clone(), m));
            }
        }
        for (c, m) in &passing {
            *self.budgets.get_mut(host).unwrap().get_mut(c).unwrap() -= m;
            if let Some(g) = cap {
                *self.budgets.get_mut(g).unwrap().get_mut(c).unwrap() -= m;
            }
        }
        passing
    }

    fn grow(&mut self, host: EventId, parent: Option<EventId>, depth: usize) {
        if depth >= self.params.max_depth || self.events.len() >= self.params.max_events {
            return;
        }
        let children = self.rng.gen_range(0..=self.params.max_branching);
        for j in 0..children {
            if self.events.len() >= self.params.max_events {
                return;
            }
            // only the first child may sit on the intersection with the
            // host's parent, which is no longer a (-1)-curve by then
            let e_pass = j == 0
                && parent.is_some()
                && self.rng.gen_bool(0.4)
                && self
                    .curve_ids
                    .iter()
                    .any(|c| {
                        let h = self.budgets[&host].get(c).copied().unwrap_or(0);
                        let g = self.budgets[parent.as_ref().unwrap()]
                            .get(c)
                            .copied()
                            .unwrap_or(0);
                        h.min(g) >= 1
                    });
            let cap = if e_pass { parent.clone() } else { None };
            let passing = self.pick_passing(&host, cap.as_ref());
            if passing.is_empty() {
                return;
            }
            let id = self.next_id();
            let mut budget = BTreeMap::new();
            for (c, m) in &passing {
                budget.insert(c.clone(), *m);
            }
            self.budgets.insert(id.clone(), budget);
            self.events.push(BlowupEvent {
                id: id.clone(),
                center: Center::InfinitelyNear(host.clone()),
                passing,
                exc_passing: cap.iter().cloned().collect(),
            });
            self.grow(id, Some(host.clone()), depth + 1);
        }
    }
}

/// Deterministic random plan over a small synthetic surface.  The lattice
/// is built from the plan's own consumption so that every budget invariant
/// holds by construction.
pub fn random_plan(seed: u64, params: &CorpusParams) -> BlowupPlan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_curves = rng.gen_range(1..=3usize);
    let n_points = rng.gen_range(1..=2usize);
    let curve_ids: Vec<CurveId> = (1..=n_curves)
        .map(|i| CurveId::new(format!("C{i}")))
        .collect();
    let multiplicities: Vec<i64> = (0..n_curves).map(|_| rng.gen_range(1..=2)).collect();

    let mut builder = PlanBuilder {
        rng,
        params: *params,
        curve_ids: curve_ids.clone(),
        multiplicities,
        events: Vec::new(),
        budgets: BTreeMap::new(),
    };

    let mut roots: Vec<(PointId, EventId)> = Vec::new();
    for p in 1..=n_points {
        let point = PointId::new(format!("p{p}"));
        // root passing: a random non-empty subset with free multiplicities
        let mut passing = Vec::new();
        for c in &curve_ids {
            if passing.is_empty() || builder.rng.gen_bool(0.5) {
                let m = builder.rng.gen_range(1..=builder.params.max_mult);
                passing.push((c.clone(), m));
            }
        }
        let id = builder.next_id();
        let mut budget = BTreeMap::new();
        for (c, m) in &passing {
            budget.insert(c.clone(), *m);
        }
        builder.budgets.insert(id.clone(), budget);
        builder.events.push(BlowupEvent {
            id: id.clone(),
            center: Center::Point(point.clone()),
            passing,
            exc_passing: Vec::new(),
        });
        roots.push((point, id.clone()));
        builder.grow(id, None, 1);
    }

    // cluster budgets per point = what the events consume, plus slack
    let mut consumption: BTreeMap<(PointId, usize, usize), i64> = BTreeMap::new();
    let mut participants: BTreeMap<PointId, Vec<usize>> = BTreeMap::new();
    let base_point_of = |events: &[BlowupEvent], id: &EventId| -> PointId {
        let mut at = id.clone();
        loop {
            let ev = events.iter().find(|e| e.id == at).unwrap();
            match &ev.center {
                Center::Point(p) => return p.clone(),
                Center::InfinitelyNear(h) => at = h.clone(),
            }
        }
    };
    for ev in &builder.events {
        let point = base_point_of(&builder.events, &ev.id);
        for (c, _) in &ev.passing {
            let ci = curve_ids.iter().position(|x| x == c).unwrap();
            let entry = participants.entry(point.clone()).or_default();
            if !entry.contains(&ci) {
                entry.push(ci);
            }
        }
        for (a, (ca, ma)) in ev.passing.iter().enumerate() {
            for (cb, mb) in &ev.passing[a + 1..] {
                let i = curve_ids.iter().position(|x| x == ca).unwrap();
                let j = curve_ids.iter().position(|x| x == cb).unwrap();
                let key = (point.clone(), i.min(j), i.max(j));
                *consumption.entry(key).or_insert(0) += ma * mb;
            }
        }
    }

    let mut clusters = Vec::new();
    let mut off_diag = vec![vec![0i64; n_curves]; n_curves];
    for (point, parts) in &participants {
        let mut pair_mults = Vec::new();
        for (a, &i) in parts.iter().enumerate() {
            for &j in &parts[a + 1..] {
                let key = (point.clone(), i.min(j), i.max(j));
                let consumed = consumption.get(&key).copied().unwrap_or(0);
                let slack = builder.rng.gen_range(0..=1);
                let total = (consumed + slack).max(1);
                off_diag[i][j] += total;
                off_diag[j][i] += total;
                pair_mults.push((curve_ids[i].clone(), curve_ids[j].clone(), total));
            }
        }
        clusters.push(PointCluster {
            id: point.clone(),
            participants: parts.iter().map(|&i| curve_ids[i].clone()).collect(),
            pair_mults,
        });
    }

    let mut gram = off_diag;
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = 2 * builder.rng.gen_range(-1..=2);
    }
    let surface = SurfaceModel::new(SurfaceData {
        gram,
        canonical: DivisorClass::zero(n_curves),
        irregularity: 2,
        kodaira: KodairaDim::Zero,
        minimal: true,
        geom_genus: None,
        is_curve_product: false,
        curves: Vec::new(),
        h0: Vec::new(),
    })
    .expect("generated lattice is symmetric with even diagonal");

    let components: Vec<(CurveRecord, i64)> = curve_ids
        .iter()
        .enumerate()
        .map(|(i, id)| {
            (
                CurveRecord {
                    id: id.clone(),
                    class: DivisorClass::basis(n_curves, i),
                    irreducible: true,
                    reduced: true,
                },
                builder.multiplicities[i],
            )
        })
        .collect();
    let base = Configuration::new(surface, components, clusters)
        .expect("generated configuration satisfies its own bookkeeping");
    BlowupPlan {
        base,
        events: builder.events,
    }
}

/// Generate the seeded plan, evaluate the river formula (with an optional
/// theta bias for mutation testing) and the direct oracle, and compare.
pub fn verify_seed(seed: u64, params: &CorpusParams, theta_bias: i64) -> Result<OracleReport> {
    let plan = random_plan(seed, params);
    let state = apply_plan(&plan)?;
    let mut formula = 0;
    for p in state.base_points() {
        formula += m_formula_biased(&build_river(&state, &p)?, theta_bias);
    }
    let oracle = crate::graphs::m_oracle(&state)?;
    Ok(OracleReport::new(
        "river-multiplicity-identity",
        formula,
        oracle,
        seed,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::m_formula;

    #[test]
    fn oracle_m_examples() {
        // empty plan
        let plan = random_plan(7, &CorpusParams::default());
        let empty = BlowupPlan {
            base: plan.base.clone(),
            events: Vec::new(),
        };
        assert_eq!(oracle_m(&empty).unwrap(), 0);
    }

    #[test]
    fn oracle_semidef_examples() {
        assert!(!oracle_semidef(&[vec![0, 1], vec![1, 0]], 2).unwrap());
        assert!(oracle_semidef(&[vec![-2, 1], vec![1, -2]], 5).unwrap());
        assert!(oracle_semidef(&[vec![-1]], 5).unwrap());
        assert!(oracle_semidef(&vec![vec![0; 7]; 7], 2).is_err());
    }

    #[test]
    fn corpus_identity_smoke() {
        let params = CorpusParams::default();
        for seed in 0..50 {
            let report = verify_seed(seed, &params, 0).unwrap();
            assert!(report.agree, "seed {seed}: {report:?}");
        }
    }

    #[test]
    fn corpus_rivers_match_hand_formula() {
        let params = CorpusParams::default();
        for seed in 0..20 {
            let plan = random_plan(seed, &params);
            let state = apply_plan(&plan).unwrap();
            let mut total = 0;
            for p in state.base_points() {
                total += m_formula(&build_river(&state, &p).unwrap());
            }
            assert_eq!(total, oracle_m(&plan).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn genus_pullback_invariance() {
        let params = CorpusParams::default();
        for seed in 0..20 {
            let plan = random_plan(seed, &params);
            let d = plan.base.total_class();
            let downstairs = plan.base.surface().sectional_genus(&d).unwrap();
            assert_eq!(oracle_genus(&plan, &d).unwrap(), downstairs, "seed {seed}");
        }
    }
}

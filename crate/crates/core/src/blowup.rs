//! Blow-up algebra over a surface model: lattice extension, strict and
//! total transforms, and combinatorial blow-up plans carrying the
//! multiplicity data that drives the river calculus.
//!
//! Geometry is modeled purely combinatorially: a point is a declared
//! cluster token with local multiplicities, and infinitely-near points are
//! references to earlier events.  Every admissibility rule is enforced at
//! application time and violations fail loudly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graphs::{Configuration, PointId};
use crate::lattice::{CurveId, DivisorClass, SurfaceModel};

/// Opaque identifier of a blow-up event (and of its exceptional curve).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventId(pub String);

impl EventId {
    pub fn new(s: impl Into<String>) -> Self {
        EventId(s.into())
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<&str> for EventId {
    fn from(s: &str) -> Self {
        EventId(s.to_owned())
    }
}

/// Where a blow-up happens: a declared base point, or an infinitely-near
/// point on the exceptional curve of an earlier event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Center {
    Point(PointId),
    InfinitelyNear(EventId),
}

/// One blow-up: its center, the configuration curves through the center
/// with their local multiplicities, and any additional exceptional curve
/// through the center (necessarily a unique non-(-1)-curve).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupEvent {
    pub id: EventId,
    pub center: Center,
    pub passing: Vec<(CurveId, i64)>,
    pub exc_passing: Vec<EventId>,
}

/// A configuration plus an ordered forest of blow-up events above its
/// declared points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupPlan {
    pub base: Configuration,
    pub events: Vec<BlowupEvent>,
}

/// Per-event data recorded while a plan is applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventRecord {
    pub id: EventId,
    pub center: Center,
    /// The declared point this event sits above (through host references).
    pub base_point: PointId,
    pub passing: Vec<(CurveId, i64)>,
    pub exc_passing: Vec<EventId>,
    /// Multiplicity of this event's exceptional curve in the total
    /// transform of D.
    pub e_mult: i64,
    /// Multiplicity drop of the reduced total transform at the center,
    /// i.e. mult_x(D'_red) - 1.
    pub reduced_b: i64,
    /// Whether the center is an e-point (an e-curve passes through it).
    pub epsilon: bool,
    /// Multiplicity of the e-curve in the total transform, 0 when none.
    pub e_curve_mult: i64,
}

/// The evolving picture after a prefix of a plan: the extended lattice,
/// strict transforms of all configuration curves and exceptional curves,
/// the coefficient of each exceptional curve in the total transform of D,
/// and the remaining local intersection budgets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformState {
    pub surface: SurfaceModel,
    components: Vec<(CurveId, i64)>,
    strict_classes: BTreeMap<CurveId, DivisorClass>,
    exc_classes: BTreeMap<EventId, DivisorClass>,
    exc_mult_in_total: BTreeMap<EventId, i64>,
    records: Vec<EventRecord>,
    /// Remaining local budget per (point, curve pair), curve ids sorted.
    pair_pools: BTreeMap<(PointId, CurveId, CurveId), i64>,
    cluster_participants: BTreeMap<PointId, Vec<CurveId>>,
    blown_points: BTreeSet<PointId>,
}

fn pool_key(p: &PointId, a: &CurveId, b: &CurveId) -> (PointId, CurveId, CurveId) {
    if a <= b {
        (p.clone(), a.clone(), b.clone())
    } else {
        (p.clone(), b.clone(), a.clone())
    }
}

impl TransformState {
    /// The identity state over a configuration: no events yet.
    pub fn initial(cfg: &Configuration) -> Self {
        let mut strict_classes = BTreeMap::new();
        let mut components = Vec::new();
        for (c, r) in cfg.components() {
            strict_classes.insert(c.id.clone(), c.class.clone());
            components.push((c.id.clone(), *r));
        }
        let mut pair_pools = BTreeMap::new();
        let mut cluster_participants = BTreeMap::new();
        for cl in cfg.point_clusters() {
            for (a, b, m) in &cl.pair_mults {
                pair_pools.insert(pool_key(&cl.id, a, b), *m);
            }
            cluster_participants.insert(cl.id.clone(), cl.participants.clone());
        }
        TransformState {
            surface: cfg.surface().clone(),
            components,
            strict_classes,
            exc_classes: BTreeMap::new(),
            exc_mult_in_total: BTreeMap::new(),
            records: Vec::new(),
            pair_pools,
            cluster_participants,
            blown_points: BTreeSet::new(),
        }
    }

    pub fn records(&self) -> &[EventRecord] {
        &self.records
    }

    pub fn curve_ids(&self) -> Vec<CurveId> {
        self.components.iter().map(|(id, _)| id.clone()).collect()
    }

    pub fn component_mult(&self, id: &CurveId) -> Option<i64> {
        self.components
            .iter()
            .find(|(c, _)| c == id)
            .map(|(_, r)| *r)
    }

    pub fn event_ids(&self) -> Vec<EventId> {
        self.records.iter().map(|r| r.id.clone()).collect()
    }

    /// Base points blown up by the applied events, in plan order.
    pub fn base_points(&self) -> Vec<PointId> {
        let mut out = Vec::new();
        for rec in &self.records {
            if matches!(rec.center, Center::Point(_)) {
                out.push(rec.base_point.clone());
            }
        }
        out
    }

    pub fn strict_class(&self, id: &CurveId) -> Result<&DivisorClass> {
        self.strict_classes
            .get(id)
            .ok_or_else(|| Error::InvalidPlan(format!("unknown curve {id}")))
    }

    pub fn exc_class(&self, id: &EventId) -> Result<&DivisorClass> {
        self.exc_classes
            .get(id)
            .ok_or_else(|| Error::InvalidPlan(format!("unknown event {id}")))
    }

    pub fn exc_mult(&self, id: &EventId) -> Result<i64> {
        self.exc_mult_in_total
            .get(id)
            .copied()
            .ok_or_else(|| Error::InvalidPlan(format!("unknown event {id}")))
    }

    /// Whether the strict transform of the event's exceptional curve still
    /// has self-intersection -1.
    pub fn is_minus_one(&self, id: &EventId) -> Result<bool> {
        let class = self.exc_class(id)?;
        Ok(self.surface.self_intersection(class)? == -1)
    }

    /// Remaining local budget of a curve pair at a base point.
    pub fn remaining_pool(&self, p: &PointId, a: &CurveId, b: &CurveId) -> i64 {
        self.pair_pools
            .get(&pool_key(p, a, b))
            .copied()
            .unwrap_or(0)
    }

    /// Class of the total transform of D in the current lattice.
    pub fn total_class(&self) -> DivisorClass {
        let mut total = DivisorClass::zero(self.surface.rank());
        for (id, r) in &self.components {
            total = &total + &self.strict_classes[id].scaled(*r);
        }
        for (id, e) in &self.exc_mult_in_total {
            total = &total + &self.exc_classes[id].scaled(*e);
        }
        total
    }

    fn base_point_of_event(&self, id: &EventId) -> Result<PointId> {
        self.records
            .iter()
            .find(|r| &r.id == id)
            .map(|r| r.base_point.clone())
            .ok_or_else(|| Error::InvalidPlan(format!("unknown event {id}")))
    }

    /// Apply one more blow-up, returning the successor state.
    pub fn blow_up(&self, event: &BlowupEvent) -> Result<TransformState> {
        if self.records.iter().any(|r| r.id == event.id) {
            return Err(Error::InvalidPlan(format!("duplicate event id {}", event.id)));
        }
        if event.passing.is_empty() {
            return Err(Error::InvalidPlan(format!(
                "event {}: a center must lie on at least one configuration curve",
                event.id
            )));
        }
        let mut seen_curves = BTreeSet::new();
        for (cid, m) in &event.passing {
            if self.component_mult(cid).is_none() {
                return Err(Error::InvalidPlan(format!(
                    "event {}: unknown curve {cid}",
                    event.id
                )));
            }
            if *m < 1 {
                return Err(Error::InvalidPlan(format!(
                    "event {}: multiplicity {m} < 1 for curve {cid}",
                    event.id
                )));
            }
            if !seen_curves.insert(cid.clone()) {
                return Err(Error::InvalidPlan(format!(
                    "event {}: curve {cid} listed twice",
                    event.id
                )));
            }
        }
        let mut seen_excs = BTreeSet::new();
        for eid in &event.exc_passing {
            if !self.exc_classes.contains_key(eid) {
                return Err(Error::InvalidPlan(format!(
                    "event {}: unknown exceptional curve {eid}",
                    event.id
                )));
            }
            if !seen_excs.insert(eid.clone()) {
                return Err(Error::InvalidPlan(format!(
                    "event {}: exceptional curve {eid} listed twice",
                    event.id
                )));
            }
        }

        let mut next = self.clone();
        let base_point;
        let mut e_mult: i64 = event.passing.iter().map(|(cid, m)| {
            let r = self.component_mult(cid).unwrap();
            r * m
        }).sum();
        // number of exceptional components of D'_red through the center
        let mut exc_through = 0i64;

        match &event.center {
            Center::Point(p) => {
                if !event.exc_passing.is_empty() {
                    return Err(Error::InvalidPlan(format!(
                        "event {}: a base point predates every exceptional curve",
                        event.id
                    )));
                }
                if self.blown_points.contains(p) {
                    return Err(Error::InvalidPlan(format!(
                        "event {}: point {p} was already blown up",
                        event.id
                    )));
                }
                // the point must be a declared cluster and every passing
                // curve must participate in it
                let participants = self.cluster_participants.get(p).ok_or_else(|| {
                    Error::InvalidPlan(format!(
                        "event {}: {p} is not a declared point",
                        event.id
                    ))
                })?;
                for (cid, _) in &event.passing {
                    if !participants.contains(cid) {
                        return Err(Error::InvalidPlan(format!(
                            "event {}: curve {cid} does not pass through {p}",
                            event.id
                        )));
                    }
                }
                base_point = p.clone();
                next.blown_points.insert(p.clone());
            }
            Center::InfinitelyNear(host) => {
                let host_class = self.exc_class(host)?.clone();
                let host_sq = self.surface.self_intersection(&host_class)?;
                let host_is_minus_one = host_sq == -1;
                if host_is_minus_one {
                    if event.exc_passing.len() > 1 {
                        return Err(Error::InvalidPlan(format!(
                            "event {}: at most one e-curve may pass through a center",
                            event.id
                        )));
                    }
                } else if !event.exc_passing.is_empty() {
                    // the host itself is the unique non-(-1)-curve allowed
                    return Err(Error::InvalidPlan(format!(
                        "event {}: host {host} is not a (-1)-curve, no further \
                         exceptional curve may pass",
                        event.id
                    )));
                }
                for eid in &event.exc_passing {
                    if eid == host {
                        return Err(Error::InvalidPlan(format!(
                            "event {}: host {host} repeated in the passing list",
                            event.id
                        )));
                    }
                    if self.is_minus_one(eid)? {
                        return Err(Error::InvalidPlan(format!(
                            "event {}: two (-1)-curves ({host} and {eid}) through one center",
                            event.id
                        )));
                    }
                    let cross = self.surface.pairing(self.exc_class(eid)?, &host_class)?;
                    if cross < 1 {
                        return Err(Error::BudgetExceeded(format!(
                            "event {}: exceptional curves {eid} and {host} no longer meet",
                            event.id
                        )));
                    }
                }
                // curve budgets against the host and any e-curve through
                // the center
                for (cid, m) in &event.passing {
                    let avail = self.surface.pairing(self.strict_class(cid)?, &host_class)?;
                    if avail < *m {
                        return Err(Error::BudgetExceeded(format!(
                            "event {}: curve {cid} meets {host} with multiplicity {avail} < {m}",
                            event.id
                        )));
                    }
                    for eid in &event.exc_passing {
                        let avail =
                            self.surface.pairing(self.strict_class(cid)?, self.exc_class(eid)?)?;
                        if avail < *m {
                            return Err(Error::BudgetExceeded(format!(
                                "event {}: curve {cid} meets {eid} with multiplicity \
                                 {avail} < {m}",
                                event.id
                            )));
                        }
                    }
                }
                e_mult += self.exc_mult(host)?;
                exc_through += 1;
                for eid in &event.exc_passing {
                    e_mult += self.exc_mult(eid)?;
                    exc_through += 1;
                }
                base_point = self.base_point_of_event(host)?;
            }
        }

        // curve-pair budgets are tracked per base point across the whole
        // infinitely-near tower
        for (i, (a, ma)) in event.passing.iter().enumerate() {
            for (b, mb) in &event.passing[i + 1..] {
                let key = pool_key(&base_point, a, b);
                let pool = next.pair_pools.get_mut(&key).ok_or_else(|| {
                    Error::BudgetExceeded(format!(
                        "event {}: curves {a} and {b} do not meet above {base_point}",
                        event.id
                    ))
                })?;
                let cost = ma * mb;
                if *pool < cost {
                    return Err(Error::BudgetExceeded(format!(
                        "event {}: pair ({a},{b}) needs {cost} above {base_point}, \
                         only {pool} left",
                        event.id
                    )));
                }
                *pool -= cost;
            }
        }

        // extend the lattice and pad every tracked class
        next.surface = self.surface.extend_blowup();
        let rank = next.surface.rank();
        for class in next.strict_classes.values_mut() {
            *class = class.padded(rank);
        }
        for class in next.exc_classes.values_mut() {
            *class = class.padded(rank);
        }
        let e = DivisorClass::basis(rank, rank - 1);
        for (cid, m) in &event.passing {
            let class = next.strict_classes.get_mut(cid).unwrap();
            *class = &*class - &e.scaled(*m);
        }
        if let Center::InfinitelyNear(host) = &event.center {
            let class = next.exc_classes.get_mut(host).unwrap();
            *class = &*class - &e;
            for eid in &event.exc_passing {
                let class = next.exc_classes.get_mut(eid).unwrap();
                *class = &*class - &e;
            }
        }
        next.exc_classes.insert(event.id.clone(), e);
        next.exc_mult_in_total.insert(event.id.clone(), e_mult);

        let reduced_mult: i64 =
            event.passing.iter().map(|(_, m)| m).sum::<i64>() + exc_through;
        let epsilon = !event.exc_passing.is_empty();
        let e_curve_mult = match event.exc_passing.first() {
            Some(eid) => self.exc_mult(eid)?,
            None => 0,
        };
        next.records.push(EventRecord {
            id: event.id.clone(),
            center: event.center.clone(),
            base_point,
            passing: event.passing.clone(),
            exc_passing: event.exc_passing.clone(),
            e_mult,
            reduced_b: reduced_mult - 1,
            epsilon,
            e_curve_mult,
        });
        Ok(next)
    }
}

/// Fold blow_up over the plan's events.
pub fn apply_plan(plan: &BlowupPlan) -> Result<TransformState> {
    let mut state = TransformState::initial(&plan.base);
    for event in &plan.events {
        state = state.blow_up(event)?;
    }
    Ok(state)
}

/// Genus of the strict transform after a blow-up of multiplicity m:
/// g - m(m-1)/2.
pub fn genus_drop(g: i64, m: i64) -> i64 {
    g - m * (m - 1) / 2
}

/// The per-event multiplicity pairs (b_i, d_i) of the events separating two
/// curves; their products sum to the starting intersection number.
pub fn separation_data(
    plan: &BlowupPlan,
    c1: &CurveId,
    c2: &CurveId,
) -> Result<Vec<(i64, i64)>> {
    let state = apply_plan(plan)?;
    let final_pairing = state
        .surface
        .pairing(state.strict_class(c1)?, state.strict_class(c2)?)?;
    if final_pairing != 0 {
        return Err(Error::NotSeparated(c1.0.clone(), c2.0.clone()));
    }
    let mut out = Vec::new();
    for rec in state.records() {
        let b = rec.passing.iter().find(|(id, _)| id == c1).map(|(_, m)| *m);
        let d = rec.passing.iter().find(|(id, _)| id == c2).map(|(_, m)| *m);
        if let (Some(b), Some(d)) = (b, d) {
            out.push((b, d));
        }
    }
    Ok(out)
}

/// Whether the listed curves are in simple-normal-crossing position: every
/// residual pairwise contact is transverse (local multiplicity 1) and no
/// point carries three of them.
pub fn validate_snc(state: &TransformState, curves: &[CurveId]) -> Result<bool> {
    for id in curves {
        state.strict_class(id)?;
    }
    let mut points: BTreeSet<PointId> = BTreeSet::new();
    for (p, _, _) in state.pair_pools.keys() {
        points.insert(p.clone());
    }
    for p in &points {
        let mut at_point: BTreeSet<&CurveId> = BTreeSet::new();
        for (i, a) in curves.iter().enumerate() {
            for b in &curves[i + 1..] {
                let residual = state.remaining_pool(p, a, b);
                if residual >= 2 {
                    return Ok(false); // tangency left over
                }
                if residual == 1 {
                    at_point.insert(a);
                    at_point.insert(b);
                }
            }
        }
        if at_point.len() >= 3 {
            return Ok(false); // triple point
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::PointCluster;
    use crate::lattice::{product_surface, CurveRecord, SurfaceData};

    fn two_curve_config(mutual: i64) -> Configuration {
        // two square-zero curves meeting with the given total multiplicity
        // at a single point, on an abelian-like lattice scaled to fit
        let x = SurfaceModel::new(SurfaceData {
            gram: vec![vec![0, mutual], vec![mutual, 0]],
            canonical: DivisorClass::zero(2),
            irregularity: 2,
            kodaira: crate::lattice::KodairaDim::Zero,
            minimal: true,
            geom_genus: None,
            is_curve_product: false,
            curves: Vec::new(),
            h0: Vec::new(),
        })
        .unwrap();
        let c1 = CurveRecord {
            id: CurveId::new("C1"),
            class: DivisorClass::basis(2, 0),
            irreducible: true,
            reduced: true,
        };
        let c2 = CurveRecord {
            id: CurveId::new("C2"),
            class: DivisorClass::basis(2, 1),
            irreducible: true,
            reduced: true,
        };
        let clusters = vec![PointCluster {
            id: PointId::new("x"),
            participants: vec![CurveId::new("C1"), CurveId::new("C2")],
            pair_mults: vec![(CurveId::new("C1"), CurveId::new("C2"), mutual)],
        }];
        Configuration::new(x, vec![(c1, 1), (c2, 1)], clusters).unwrap()
    }

    fn ev(
        id: &str,
        center: Center,
        passing: &[(&str, i64)],
        exc: &[&str],
    ) -> BlowupEvent {
        BlowupEvent {
            id: EventId::new(id),
            center,
            passing: passing
                .iter()
                .map(|(c, m)| (CurveId::new(*c), *m))
                .collect(),
            exc_passing: exc.iter().map(|e| EventId::new(*e)).collect(),
        }
    }

    #[test]
    fn single_blowup_classes() {
        let cfg = two_curve_config(1);
        let plan = BlowupPlan {
            base: cfg,
            events: vec![ev(
                "e1",
                Center::Point(PointId::new("x")),
                &[("C1", 1), ("C2", 1)],
                &[],
            )],
        };
        let state = apply_plan(&plan).unwrap();
        let c1 = state.strict_class(&CurveId::new("C1")).unwrap();
        let c2 = state.strict_class(&CurveId::new("C2")).unwrap();
        // strict transforms are now disjoint
        assert_eq!(state.surface.pairing(c1, c2).unwrap(), 0);
        // (strict C)^2 = C^2 - m^2
        assert_eq!(state.surface.self_intersection(c1).unwrap(), -1);
        // newborn exceptional curve
        let e = state.exc_class(&EventId::new("e1")).unwrap();
        assert_eq!(state.surface.self_intersection(e).unwrap(), -1);
        assert_eq!(state.surface.pairing(state.surface.canonical(), e).unwrap(), -1);
        // E-multiplicity of D = C1 + C2 is 2
        assert_eq!(state.exc_mult(&EventId::new("e1")).unwrap(), 2);
        // total transform keeps its self-intersection
        let total = state.total_class();
        assert_eq!(state.surface.self_intersection(&total).unwrap(), 2);
    }

    #[test]
    fn tangential_pair_tower() {
        // C1.C2 = 2 concentrated at one tangential point: two events
        let cfg = two_curve_config(2);
        let plan = BlowupPlan {
            base: cfg,
            events: vec![
                ev("e1", Center::Point(PointId::new("x")), &[("C1", 1), ("C2", 1)], &[]),
                ev(
                    "e2",
                    Center::InfinitelyNear(EventId::new("e1")),
                    &[("C1", 1), ("C2", 1)],
                    &[],
                ),
            ],
        };
        let state = apply_plan(&plan).unwrap();
        assert_eq!(state.exc_mult(&EventId::new("e1")).unwrap(), 2);
        assert_eq!(state.exc_mult(&EventId::new("e2")).unwrap(), 4);
        // the first exceptional curve got hit once: now a (-2)-curve
        assert!(!state.is_minus_one(&EventId::new("e1")).unwrap());
        assert!(state.is_minus_one(&EventId::new("e2")).unwrap());
        let c1 = state.strict_class(&CurveId::new("C1")).unwrap();
        let c2 = state.strict_class(&CurveId::new("C2")).unwrap();
        assert_eq!(state.surface.pairing(c1, c2).unwrap(), 0);
        // e-curve bookkeeping per the strict-transform rule
        let e1 = state.exc_class(&EventId::new("e1")).unwrap();
        assert_eq!(state.surface.self_intersection(e1).unwrap(), -2);
        assert_eq!(state.surface.pairing(state.surface.canonical(), e1).unwrap(), 0);
        // K'^2 drops by one per event
        assert_eq!(
            state
                .surface
                .self_intersection(state.surface.canonical())
                .unwrap(),
            -2
        );
        // separation data: the transversal-then-transversal tower
        assert_eq!(
            separation_data(&plan, &CurveId::new("C1"), &CurveId::new("C2")).unwrap(),
            vec![(1, 1), (1, 1)]
        );
    }

    #[test]
    fn budget_violations_rejected() {
        let cfg = two_curve_config(1);
        // multiplicity 2 exceeds the local budget 1
        let plan = BlowupPlan {
            base: cfg.clone(),
            events: vec![ev(
                "e1",
                Center::Point(PointId::new("x")),
                &[("C1", 2), ("C2", 2)],
                &[],
            )],
        };
        assert!(matches!(apply_plan(&plan), Err(Error::BudgetExceeded(_))));

        // an infinitely-near event on a host the curves no longer reach
        let plan = BlowupPlan {
            base: cfg.clone(),
            events: vec![
                ev("e1", Center::Point(PointId::new("x")), &[("C1", 1), ("C2", 1)], &[]),
                ev(
                    "e2",
                    Center::InfinitelyNear(EventId::new("e1")),
                    &[("C1", 1), ("C2", 1)],
                    &[],
                ),
            ],
        };
        assert!(matches!(apply_plan(&plan), Err(Error::BudgetExceeded(_))));

        // unknown point
        let plan = BlowupPlan {
            base: cfg,
            events: vec![ev(
                "e1",
                Center::Point(PointId::new("nowhere")),
                &[("C1", 1)],
                &[],
            )],
        };
        assert!(matches!(apply_plan(&plan), Err(Error::InvalidPlan(_))));
    }

    #[test]
    fn genus_drop_values() {
        assert_eq!(genus_drop(5, 1), 5);
        assert_eq!(genus_drop(5, 2), 4);
        assert_eq!(genus_drop(5, 3), 2);
    }

    #[test]
    fn separation_patterns() {
        // (b1, d1) = (2, 2): one event exhausting C1.C2 = 4
        let cfg = two_curve_config(4);
        let plan = BlowupPlan {
            base: cfg,
            events: vec![ev(
                "e1",
                Center::Point(PointId::new("x")),
                &[("C1", 2), ("C2", 2)],
                &[],
            )],
        };
        assert_eq!(
            separation_data(&plan, &CurveId::new("C1"), &CurveId::new("C2")).unwrap(),
            vec![(2, 2)]
        );

        // (1, 2): one event exhausting C1.C2 = 2
        let cfg = two_curve_config(2);
        let plan = BlowupPlan {
            base: cfg.clone(),
            events: vec![ev(
                "e1",
                Center::Point(PointId::new("x")),
                &[("C1", 1), ("C2", 2)],
                &[],
            )],
        };
        assert_eq!(
            separation_data(&plan, &CurveId::new("C1"), &CurveId::new("C2")).unwrap(),
            vec![(1, 2)]
        );

        // an unfinished plan cannot claim separation
        let plan = BlowupPlan {
            base: cfg,
            events: vec![ev(
                "e1",
                Center::Point(PointId::new("x")),
                &[("C1", 1), ("C2", 1)],
                &[],
            )],
        };
        assert!(matches!(
            separation_data(&plan, &CurveId::new("C1"), &CurveId::new("C2")),
            Err(Error::NotSeparated(_, _))
        ));
    }

    #[test]
    fn snc_detection() {
        let ids = [CurveId::new("C1"), CurveId::new("C2")];
        // transversal pair: already SNC
        let cfg = two_curve_config(1);
        let state = TransformState::initial(&cfg);
        assert!(validate_snc(&state, &ids).unwrap());

        // tangential pair: not SNC before, SNC after the two-event tower
        let cfg = two_curve_config(2);
        let state = TransformState::initial(&cfg);
        assert!(!validate_snc(&state, &ids).unwrap());
        let plan = BlowupPlan {
            base: cfg,
            events: vec![
                ev("e1", Center::Point(PointId::new("x")), &[("C1", 1), ("C2", 1)], &[]),
                ev(
                    "e2",
                    Center::InfinitelyNear(EventId::new("e1")),
                    &[("C1", 1), ("C2", 1)],
                    &[],
                ),
            ],
        };
        let state = apply_plan(&plan).unwrap();
        assert!(validate_snc(&state, &ids).unwrap());
    }

    #[test]
    fn genus_conservation_under_pullback() {
        let x = product_surface(2, 3).unwrap();
        let cfg = Configuration::new(
            x.clone(),
            vec![
                (x.curve(&CurveId::new("f")).unwrap().clone(), 1),
                (x.curve(&CurveId::new("c")).unwrap().clone(), 1),
            ],
            vec![PointCluster {
                id: PointId::new("p"),
                participants: vec![CurveId::new("f"), CurveId::new("c")],
                pair_mults: vec![(CurveId::new("f"), CurveId::new("c"), 1)],
            }],
        )
        .unwrap();
        let plan = BlowupPlan {
            base: cfg,
            events: vec![ev(
                "e1",
                Center::Point(PointId::new("p")),
                &[("f", 1), ("c", 1)],
                &[],
            )],
        };
        let state = apply_plan(&plan).unwrap();
        let d = DivisorClass::new(vec![2, 1]);
        let g_down = x.sectional_genus(&d).unwrap();
        let g_up = state.surface.sectional_genus(&d.padded(3)).unwrap();
        assert_eq!(g_down, g_up);
    }
}

//! Theorem-level checkers: decide which sectional-genus bound applies to a
//! model and a divisor, assert it exactly, report the margin, and classify
//! the equality cases; plus the standalone separation inequality on
//! multiplicity pairs.

use std::fmt;

use crate::blowup::{separation_data, BlowupPlan};
use crate::error::{Error, Result};
use crate::graphs::{classify_cnns, n_of_d, CnnsClass, Configuration, Verdict};
use crate::lattice::{
    is_negative_semidefinite_matrix, DivisorClass, KodairaDim, SurfaceModel,
};

/// The result a bound report is attributed to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    Conjecture1,
    Theorem2_1,
    Theorem3_1,
    Theorem4_5,
    Theorem4_6,
    Theorem4_9,
    Theorem4_11,
    Theorem4_22,
    Remark4_26,
    Corollary4_27,
    Corollary5_5,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremId::Conjecture1 => "Conjecture 1",
            TheoremId::Theorem2_1 => "Theorem 2.1",
            TheoremId::Theorem3_1 => "Theorem 3.1",
            TheoremId::Theorem4_5 => "Theorem 4.5",
            TheoremId::Theorem4_6 => "Theorem 4.6",
            TheoremId::Theorem4_9 => "Theorem 4.9",
            TheoremId::Theorem4_11 => "Theorem 4.11",
            TheoremId::Theorem4_22 => "Theorem 4.22",
            TheoremId::Remark4_26 => "Remark 4.26",
            TheoremId::Corollary4_27 => "Corollary 4.27",
            TheoremId::Corollary5_5 => "Corollary 5.5",
        };
        f.write_str(s)
    }
}

impl TheoremId {
    pub fn parse(s: &str) -> Option<TheoremId> {
        Some(match s {
            "conjecture" | "1" => TheoremId::Conjecture1,
            "2.1" => TheoremId::Theorem2_1,
            "3.1" => TheoremId::Theorem3_1,
            "4.5" => TheoremId::Theorem4_5,
            "4.6" => TheoremId::Theorem4_6,
            "4.9" => TheoremId::Theorem4_9,
            "4.11" => TheoremId::Theorem4_11,
            "4.22" => TheoremId::Theorem4_22,
            "4.26" => TheoremId::Remark4_26,
            "4.27" => TheoremId::Corollary4_27,
            "5.5" => TheoremId::Corollary5_5,
            _ => return None,
        })
    }
}

/// Positivity and cohomology facts the lattice cannot decide; the caller
/// declares them and the dispatcher refuses to guess when one is missing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Declarations {
    pub nef: Option<bool>,
    pub big: Option<bool>,
    pub h0: Option<i64>,
    pub l_minimal: Option<bool>,
}

/// Matched equality case of a margin-zero bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqualityCase {
    /// Abelian surface: K = 0, q = 2.
    Abelian,
    /// Product with an elliptic factor, L = c + (m+1)f.
    EllipticProduct { m: i64 },
    /// Product of two curves of genus >= 2, L = c + 2f.
    GeneralTypeProduct,
    /// Two square-zero curves meeting transversally.
    TransversalPair,
    /// Two square-zero curves with a multiplicity pattern at one point.
    TangentialPair { m: i64, pattern: (i64, i64) },
    Unclassified,
}

impl fmt::Display for EqualityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqualityCase::Abelian => write!(f, "abelian"),
            EqualityCase::EllipticProduct { m } => write!(f, "elliptic-product m={m}"),
            EqualityCase::GeneralTypeProduct => write!(f, "general-type-product"),
            EqualityCase::TransversalPair => write!(f, "transversal-pair"),
            EqualityCase::TangentialPair { m, pattern } => {
                write!(f, "tangential-pair m={m} pattern=({},{})", pattern.0, pattern.1)
            }
            EqualityCase::Unclassified => write!(f, "unclassified-equality"),
        }
    }
}

/// One checked bound, oriented so that bound_lhs >= bound_rhs is the
/// asserted inequality and margin = bound_lhs - bound_rhs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub statement: String,
    pub hypothesis_trace: Vec<String>,
    pub bound_lhs: i64,
    pub bound_rhs: i64,
    pub margin: i64,
    pub holds: bool,
    pub equality_case: Option<EqualityCase>,
}

impl BoundReport {
    fn ge(theorem: TheoremId, statement: impl Into<String>, lhs: i64, rhs: i64) -> Self {
        BoundReport {
            theorem,
            statement: statement.into(),
            hypothesis_trace: Vec::new(),
            bound_lhs: lhs,
            bound_rhs: rhs,
            margin: lhs - rhs,
            holds: lhs >= rhs,
            equality_case: None,
        }
    }

    fn trace(mut self, line: impl Into<String>) -> Self {
        self.hypothesis_trace.push(line.into());
        self
    }
}

/// The two equivalent forms of the central bound, which must agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    /// K.L >= 2q - 4.
    pub canonical_form: BoundReport,
    /// 2m + 2 >= L^2 with m = g(L) - q.
    pub square_form: BoundReport,
    pub agree: bool,
}

/// Evaluate both forms of the bound for a nef-big L.  The two verdicts are
/// algebraically identical through the genus formula and are reported
/// side by side.
pub fn check_conjecture(x: &SurfaceModel, l: &DivisorClass) -> Result<ConjectureReport> {
    let q = x.irregularity();
    let kl = x.pairing(x.canonical(), l)?;
    let l2 = x.self_intersection(l)?;
    let g = x.sectional_genus(l)?;
    let m = g - q;
    let canonical_form = BoundReport::ge(
        TheoremId::Conjecture1,
        "K.L >= 2q - 4",
        kl,
        2 * q - 4,
    )
    .trace(format!("q = {q}, K.L = {kl}"));
    let square_form = BoundReport::ge(
        TheoremId::Conjecture1,
        "2m + 2 >= L^2",
        2 * m + 2,
        l2,
    )
    .trace(format!("g(L) = {g}, m = g(L) - q = {m}, L^2 = {l2}"));
    let agree = canonical_form.holds == square_form.holds;
    Ok(ConjectureReport {
        canonical_form,
        square_form,
        agree,
    })
}

/// What the dispatcher is judging: a bare divisor class or a decomposed
/// configuration.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Divisor(&'a DivisorClass),
    Config(&'a Configuration),
}

impl<'a> Subject<'a> {
    fn class(&self, rank: usize) -> DivisorClass {
        match self {
            Subject::Divisor(d) => (*d).clone(),
            Subject::Config(cfg) => {
                let _ = rank;
                cfg.total_class()
            }
        }
    }
}

fn require_nef_big(decls: &Declarations) -> Result<()> {
    let mut missing = Vec::new();
    if decls.nef.is_none() {
        missing.push("nef".to_owned());
    }
    if decls.big.is_none() {
        missing.push("big".to_owned());
    }
    if !missing.is_empty() {
        return Err(Error::UndecidableDispatch { missing });
    }
    if decls.nef != Some(true) || decls.big != Some(true) {
        return Err(Error::Precondition(
            "the divisor is declared not nef and big".into(),
        ));
    }
    Ok(())
}

/// Whether a beta-case configuration is of the distinguished type: one
/// positive-square component and a negative-semidefinite remainder.
fn is_type_star(cfg: &Configuration) -> Result<bool> {
    let surface = cfg.surface();
    let rest: Vec<&DivisorClass> = cfg
        .components()
        .iter()
        .filter(|(c, _)| {
            surface
                .self_intersection(&c.class)
                .map(|s| s <= 0)
                .unwrap_or(false)
        })
        .map(|(c, _)| &c.class)
        .collect();
    if rest.len() + 1 != cfg.components().len() {
        return Ok(false);
    }
    if rest.is_empty() {
        return Ok(true);
    }
    let n = rest.len();
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = surface.pairing(rest[i], rest[j])?;
        }
    }
    Ok(is_negative_semidefinite_matrix(&gram))
}

/// Pick the strongest bound the declared flags allow and assert it.
pub fn applicable_theorem(
    x: &SurfaceModel,
    subject: Subject<'_>,
    decls: &Declarations,
) -> Result<BoundReport> {
    require_nef_big(decls)?;
    let q = x.irregularity();
    let class = subject.class(x.rank());
    let kd = x.pairing(x.canonical(), &class)?;

    if x.kodaira() != KodairaDim::Two {
        return Ok(BoundReport::ge(
            TheoremId::Theorem2_1,
            "K.L >= 2q - 4",
            kd,
            2 * q - 4,
        )
        .trace(format!("kodaira dimension = {} (0 or 1)", x.kodaira()))
        .trace("L declared nef and big")
        .trace(format!("q = {q}, K.L = {kd}")));
    }

    // general type: split on the declared number of sections
    let h0 = decls.h0.ok_or_else(|| Error::UndecidableDispatch {
        missing: vec!["h0".to_owned()],
    })?;
    if h0 >= 2 {
        return Ok(BoundReport::ge(
            TheoremId::Theorem3_1,
            "K.L >= 2q - 2",
            kd,
            2 * q - 2,
        )
        .trace("kodaira dimension = 2")
        .trace(format!("declared h0 = {h0} >= 2"))
        .trace(format!("q = {q}, K.L = {kd}")));
    }
    if h0 < 1 {
        return Err(Error::Precondition(format!(
            "an effective divisor needs h0 >= 1, declared {h0}"
        )));
    }
    let cfg = match subject {
        Subject::Config(cfg) => cfg,
        Subject::Divisor(_) => {
            return Err(Error::UndecidableDispatch {
                missing: vec!["configuration".to_owned()],
            })
        }
    };
    if !x.is_minimal() {
        return Err(Error::Precondition(
            "the case analysis needs a minimal model".into(),
        ));
    }

    match classify_cnns(cfg)? {
        CnnsClass::Alpha => Ok(BoundReport::ge(
            TheoremId::Theorem4_5,
            "K.D >= 2q - 1",
            kd,
            2 * q - 1,
        )
        .trace("case alpha: positive-square components of total multiplicity >= 2")
        .trace(format!("q = {q}, K.D = {kd}"))),
        CnnsClass::Gamma => {
            let mut has_zero = false;
            for (c, _) in cfg.components() {
                if x.self_intersection(&c.class)? == 0 {
                    has_zero = true;
                }
            }
            if has_zero {
                Ok(BoundReport::ge(
                    TheoremId::Theorem4_6,
                    "K.D >= 2q - 4",
                    kd,
                    2 * q - 4,
                )
                .trace("case gamma with a square-zero component")
                .trace(format!("q = {q}, K.D = {kd}")))
            } else {
                Ok(BoundReport::ge(
                    TheoremId::Theorem4_11,
                    "K.D >= 2q - 3",
                    kd,
                    2 * q - 3,
                )
                .trace("case gamma with every component of negative square")
                .trace(format!("q = {q}, K.D = {kd}")))
            }
        }
        CnnsClass::Beta => {
            if is_type_star(cfg)? {
                let mut report = check_conjecture(x, &class)?.canonical_form;
                report
                    .hypothesis_trace
                    .insert(0, "beta case of the distinguished type: only the conjectural bound applies".into());
                Ok(report)
            } else {
                Ok(BoundReport::ge(
                    TheoremId::Corollary4_27,
                    "K.D >= 2q - 4",
                    kd,
                    2 * q - 4,
                )
                .trace("case beta, remainder not negative semidefinite")
                .trace(format!("q = {q}, K.D = {kd}")))
            }
        }
        CnnsClass::NotCnns => {
            let mut all_negative = true;
            for (c, _) in cfg.components() {
                if x.self_intersection(&c.class)? >= 0 {
                    all_negative = false;
                }
            }
            let matrix_nsd = is_negative_semidefinite_matrix(&cfg.component_gram()?);
            if all_negative && !matrix_nsd {
                Ok(BoundReport::ge(
                    TheoremId::Remark4_26,
                    "K.D >= 2q - 3",
                    kd,
                    2 * q - 3,
                )
                .trace(
                    "disconnected, all components of negative square, matrix not \
                     negative semidefinite",
                )
                .trace(format!("q = {q}, K.D = {kd}")))
            } else if matrix_nsd {
                Err(Error::Precondition(
                    "a negative semidefinite configuration cannot carry a big divisor".into(),
                ))
            } else {
                Err(Error::Precondition(
                    "disconnected configuration with a non-negative component is not covered"
                        .into(),
                ))
            }
        }
    }
}

/// D^2 <= 2m - 2 + N(D) for a connected, not-negative-semidefinite divisor
/// on a minimal model.
pub fn thm_4_22_check(x: &SurfaceModel, cfg: &Configuration) -> Result<BoundReport> {
    if !x.is_minimal() {
        return Err(Error::Precondition("the bound needs a minimal model".into()));
    }
    if classify_cnns(cfg)? == CnnsClass::NotCnns {
        return Err(Error::Precondition(
            "the bound needs a connected, not-negative-semidefinite divisor".into(),
        ));
    }
    let d = cfg.total_class();
    let d2 = x.self_intersection(&d)?;
    let g = x.sectional_genus(&d)?;
    let m = g - x.irregularity();
    let n = n_of_d(cfg)?;
    Ok(BoundReport::ge(
        TheoremId::Theorem4_22,
        "2m - 2 + N(D) >= D^2",
        2 * m - 2 + n,
        d2,
    )
    .trace(format!("g(D) = {g}, m = {m}, N(D) = {n}, D^2 = {d2}")))
}

/// The separation inequality on multiplicity pairs: with a_i = b_i + d_i,
/// 2 sum b_i d_i - sum_{i<n} a_i(a_i - 1) - (a_n - 1)(a_n - 2) <= 2.
pub fn claim_4_8(pairs: &[(i64, i64)]) -> Result<Verdict> {
    if pairs.is_empty() {
        return Err(Error::Precondition("needs at least one pair".into()));
    }
    for &(b, d) in pairs {
        if b < 1 || d < 1 {
            return Err(Error::Precondition(format!(
                "multiplicities must be >= 1, got ({b},{d})"
            )));
        }
    }
    let n = pairs.len();
    let mut value = 0;
    for (i, &(b, d)) in pairs.iter().enumerate() {
        let a = b + d;
        value += 2 * b * d;
        if i + 1 < n {
            value -= a * (a - 1);
        } else {
            value -= (a - 1) * (a - 2);
        }
    }
    Ok(Verdict::le(value, 2))
}

/// Match a margin-zero bound against the equality taxonomy.
pub fn classify_equality(
    x: &SurfaceModel,
    cfg: &Configuration,
    decls: &Declarations,
    plan: Option<&BlowupPlan>,
) -> Result<EqualityCase> {
    let report = applicable_theorem(x, Subject::Config(cfg), decls)?;
    if report.margin != 0 {
        return Err(Error::Precondition(format!(
            "equality classification needs margin 0, got {}",
            report.margin
        )));
    }
    // abelian: K = 0, q = 2, kodaira dimension 0
    if x.kodaira() == KodairaDim::Zero && x.canonical().is_zero() && x.irregularity() == 2 {
        return Ok(EqualityCase::Abelian);
    }
    let class = cfg.total_class();
    // products of curves carry the fiber patterns L = c + (m+1)f
    if x.is_curve_product() && x.rank() == 2 {
        let co = class.coeffs();
        let (a, b) = (co[0], co[1]);
        let fiber_pattern = (a >= 1 && b == 1) || (a == 1 && b >= 1);
        if fiber_pattern {
            let m = x.sectional_genus(&class)? - x.irregularity();
            if x.kodaira() == KodairaDim::One {
                return Ok(EqualityCase::EllipticProduct { m });
            }
            if x.kodaira() == KodairaDim::Two && a.max(b) == 2 {
                return Ok(EqualityCase::GeneralTypeProduct);
            }
        }
    }
    // the two-curve gamma case with both squares zero
    if report.theorem == TheoremId::Theorem4_6 && cfg.components().len() == 2 {
        let c1 = &cfg.components()[0].0;
        let c2 = &cfg.components()[1].0;
        let both_zero = x.self_intersection(&c1.class)? == 0
            && x.self_intersection(&c2.class)? == 0;
        if both_zero {
            if let Some(plan) = plan {
                let data = separation_data(plan, &c1.id, &c2.id)?;
                if data.len() == 1 {
                    let (b, d) = data[0];
                    match (b, d) {
                        (1, 1) => return Ok(EqualityCase::TransversalPair),
                        (1, 2) | (2, 1) => {
                            return Ok(EqualityCase::TangentialPair { m: 1, pattern: (b, d) })
                        }
                        (2, 2) => {
                            return Ok(EqualityCase::TangentialPair { m: 3, pattern: (2, 2) })
                        }
                        _ => {}
                    }
                } else if data.iter().all(|&(b, d)| (b, d) == (1, 1)) {
                    return Ok(EqualityCase::TransversalPair);
                }
            } else {
                return Ok(EqualityCase::TransversalPair);
            }
        }
    }
    Ok(EqualityCase::Unclassified)
}

/// D^2 <= 4m + 4 for a configuration of the distinguished beta type or a
/// single irreducible curve of positive square, on a minimal model of
/// general type.
pub fn cor_5_5_check(x: &SurfaceModel, cfg: &Configuration) -> Result<BoundReport> {
    if !x.is_minimal() || x.kodaira() != KodairaDim::Two {
        return Err(Error::Precondition(
            "the bound needs a minimal model of general type".into(),
        ));
    }
    let single_positive = cfg.components().len() == 1
        && cfg.components()[0].1 == 1
        && cfg.components()[0].0.irreducible
        && x.self_intersection(&cfg.components()[0].0.class)? > 0;
    if !single_positive && !(classify_cnns(cfg)? == CnnsClass::Beta && is_type_star(cfg)?) {
        return Err(Error::Precondition(
            "the bound needs a single positive irreducible curve or one positive \
             component with a negative-semidefinite remainder"
                .into(),
        ));
    }
    let d = cfg.total_class();
    let d2 = x.self_intersection(&d)?;
    let m = x.sectional_genus(&d)? - x.irregularity();
    Ok(BoundReport::ge(
        TheoremId::Corollary5_5,
        "4m + 4 >= D^2",
        4 * m + 4,
        d2,
    )
    .trace(format!("m = g(D) - q = {m}, D^2 = {d2}")))
}

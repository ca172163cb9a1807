//! Exact integer model of a surface's numerical divisor theory.
//!
//! A [`SurfaceModel`] is a rank-n integer lattice with a symmetric
//! intersection form, a canonical class and the declared invariants
//! (irregularity, Kodaira dimension, minimality).  Everything downstream
//! (blow-ups, configurations, bound checks) works through the pairing
//! defined here; no floating point is used anywhere.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Opaque identifier of a registered curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveId(pub String);

impl CurveId {
    pub fn new(s: impl Into<String>) -> Self {
        CurveId(s.into())
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<&str> for CurveId {
    fn from(s: &str) -> Self {
        CurveId(s.to_owned())
    }
}

/// Integer class vector in the ambient lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass(Vec<i64>);

impl DivisorClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        DivisorClass(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![0; rank])
    }

    /// Basis vector e_i.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        DivisorClass(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Same class in a larger lattice, new coordinates set to zero.
    /// This is the pullback of the class under a blow-up.
    pub fn padded(&self, rank: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(rank, 0);
        DivisorClass(v)
    }

    pub fn scaled(&self, k: i64) -> Self {
        DivisorClass(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl std::ops::Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.0.len(), rhs.0.len(), "class length mismatch");
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.0.len(), rhs.0.len(), "class length mismatch");
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// A registered curve: a class plus the declared curve-level flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRecord {
    pub id: CurveId,
    pub class: DivisorClass,
    pub irreducible: bool,
    pub reduced: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KodairaDim {
    Zero,
    One,
    Two,
}

impl KodairaDim {
    pub fn value(self) -> i64 {
        match self {
            KodairaDim::Zero => 0,
            KodairaDim::One => 1,
            KodairaDim::Two => 2,
        }
    }
}

impl fmt::Display for KodairaDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Raw data handed to [`SurfaceModel::new`].
#[derive(Debug, Clone)]
pub struct SurfaceData {
    pub gram: Vec<Vec<i64>>,
    pub canonical: DivisorClass,
    pub irregularity: i64,
    pub kodaira: KodairaDim,
    pub minimal: bool,
    pub geom_genus: Option<i64>,
    pub is_curve_product: bool,
    pub curves: Vec<CurveRecord>,
    pub h0: Vec<(DivisorClass, i64)>,
}

/// Immutable numerical model of a smooth projective surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    rank: usize,
    gram: Vec<Vec<i64>>,
    canonical: DivisorClass,
    irregularity: i64,
    kodaira: KodairaDim,
    minimal: bool,
    geom_genus: Option<i64>,
    is_curve_product: bool,
    curves: Vec<CurveRecord>,
    h0: HashMap<Vec<i64>, i64>,
}

impl SurfaceModel {
    pub fn new(data: SurfaceData) -> Result<Self> {
        let rank = data.gram.len();
        if rank == 0 {
            return Err(Error::UnsupportedModel("empty lattice".into()));
        }
        for row in &data.gram {
            if row.len() != rank {
                return Err(Error::ModelInconsistency(
                    "intersection matrix is not square".into(),
                ));
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                if data.gram[i][j] != data.gram[j][i] {
                    return Err(Error::ModelInconsistency(
                        "intersection matrix is not symmetric".into(),
                    ));
                }
            }
        }
        if data.canonical.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: data.canonical.len(),
            });
        }
        if data.irregularity < 0 {
            return Err(Error::ModelInconsistency("negative irregularity".into()));
        }
        if let Some(pg) = data.geom_genus {
            if pg < 0 {
                return Err(Error::ModelInconsistency("negative geometric genus".into()));
            }
        }

        let model = SurfaceModel {
            rank,
            gram: data.gram,
            canonical: data.canonical,
            irregularity: data.irregularity,
            kodaira: data.kodaira,
            minimal: data.minimal,
            geom_genus: data.geom_genus,
            is_curve_product: data.is_curve_product,
            curves: Vec::new(),
            h0: data
                .h0
                .into_iter()
                .map(|(c, v)| (c.coeffs().to_vec(), v))
                .collect(),
        };

        // Adjunction parity on the basis forces it for every integer class:
        // (D+E)^2 + K(D+E) = (D^2+KD) + (E^2+KE) + 2DE.
        for i in 0..rank {
            let e = DivisorClass::basis(rank, i);
            let s = model.pairing(&e, &e)? + model.pairing(&model.canonical, &e)?;
            if s % 2 != 0 {
                return Err(Error::ParityViolation {
                    class: e.to_string(),
                });
            }
        }

        if model.kodaira == KodairaDim::Zero && model.irregularity > 2 {
            return Err(Error::ModelInconsistency(format!(
                "kodaira dimension 0 forces q <= 2, got q = {}",
                model.irregularity
            )));
        }

        let mut model = model;
        for curve in data.curves {
            model.register_curve_unchecked(curve)?;
        }
        Ok(model)
    }

    fn register_curve_unchecked(&mut self, curve: CurveRecord) -> Result<()> {
        if curve.class.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: curve.class.len(),
            });
        }
        if self.curves.iter().any(|c| c.id == curve.id) {
            return Err(Error::ModelInconsistency(format!(
                "duplicate curve id {}",
                curve.id
            )));
        }
        if self.minimal && self.kodaira.value() >= 1 {
            let kc = self.pairing(&self.canonical, &curve.class)?;
            if kc < 0 {
                return Err(Error::ModelInconsistency(format!(
                    "K*{} = {kc} < 0 on a minimal model with nef canonical class",
                    curve.id
                )));
            }
        }
        if curve.irreducible && curve.reduced {
            let g = self.arithmetic_genus_class(&curve.class)?;
            if g < 0 {
                return Err(Error::ModelInconsistency(format!(
                    "irreducible reduced curve {} has arithmetic genus {g} < 0",
                    curve.id
                )));
            }
        }
        self.curves.push(curve);
        Ok(())
    }

    /// Rank+1 lattice of a single blow-up: gram bordered by a new basis
    /// class E with E^2 = -1, E orthogonal to the old basis, K' = K + E.
    /// The extended model is never minimal and keeps no curve registry;
    /// strict transforms are tracked by the blow-up state instead.
    pub(crate) fn extend_blowup(&self) -> SurfaceModel {
        let rank = self.rank + 1;
        let mut gram = Vec::with_capacity(rank);
        for row in &self.gram {
            let mut r = row.clone();
            r.push(0);
            gram.push(r);
        }
        let mut last = vec![0; rank];
        last[rank - 1] = -1;
        gram.push(last);
        let mut canonical = self.canonical.coeffs().to_vec();
        canonical.push(1);
        SurfaceModel {
            rank,
            gram,
            canonical: DivisorClass::new(canonical),
            irregularity: self.irregularity,
            kodaira: self.kodaira,
            minimal: false,
            geom_genus: self.geom_genus,
            is_curve_product: false,
            curves: Vec::new(),
            h0: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn irregularity(&self) -> i64 {
        self.irregularity
    }

    pub fn kodaira(&self) -> KodairaDim {
        self.kodaira
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn geom_genus(&self) -> Option<i64> {
        self.geom_genus
    }

    pub fn is_curve_product(&self) -> bool {
        self.is_curve_product
    }

    pub fn curves(&self) -> &[CurveRecord] {
        &self.curves
    }

    pub fn curve(&self, id: &CurveId) -> Option<&CurveRecord> {
        self.curves.iter().find(|c| &c.id == id)
    }

    /// Declared h^0 of a class, if any.
    pub fn h0_declared(&self, class: &DivisorClass) -> Option<i64> {
        self.h0.get(class.coeffs()).copied()
    }

    /// Intersection number D.E computed through the gram matrix.
    pub fn pairing(&self, d: &DivisorClass, e: &DivisorClass) -> Result<i64> {
        if d.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: d.len(),
            });
        }
        if e.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: e.len(),
            });
        }
        let mut acc: i64 = 0;
        for (i, &di) in d.coeffs().iter().enumerate() {
            if di == 0 {
                continue;
            }
            for (j, &ej) in e.coeffs().iter().enumerate() {
                if ej == 0 {
                    continue;
                }
                acc += di * self.gram[i][j] * ej;
            }
        }
        Ok(acc)
    }

    pub fn self_intersection(&self, d: &DivisorClass) -> Result<i64> {
        self.pairing(d, d)
    }

    /// Sectional genus g(D) = 1 + (K+D).D / 2.
    pub fn sectional_genus(&self, d: &DivisorClass) -> Result<i64> {
        let s = self.pairing(&(&self.canonical + d), d)?;
        if s % 2 != 0 {
            return Err(Error::ParityViolation {
                class: d.to_string(),
            });
        }
        Ok(1 + s / 2)
    }

    fn arithmetic_genus_class(&self, class: &DivisorClass) -> Result<i64> {
        self.sectional_genus(class)
    }

    /// Arithmetic genus of a curve by adjunction; rejects a negative value
    /// for an irreducible reduced curve.
    pub fn arithmetic_genus(&self, curve: &CurveRecord) -> Result<i64> {
        let g = self.arithmetic_genus_class(&curve.class)?;
        if curve.irreducible && curve.reduced && g < 0 {
            return Err(Error::ModelInconsistency(format!(
                "irreducible reduced curve {} has arithmetic genus {g} < 0",
                curve.id
            )));
        }
        Ok(g)
    }

    /// Index-theorem test: (D.L)^2 >= D^2 L^2 whenever L^2 > 0.  A false
    /// return flags a lattice that no surface can carry.
    pub fn hodge_index_check(&self, d: &DivisorClass, l: &DivisorClass) -> Result<bool> {
        let l2 = self.self_intersection(l)?;
        if l2 <= 0 {
            return Err(Error::Precondition(format!(
                "hodge index test needs L^2 > 0, got {l2}"
            )));
        }
        let dl = self.pairing(d, l)?;
        let d2 = self.self_intersection(d)?;
        Ok(dl * dl >= d2 * l2)
    }
}

/// Signature (positive, negative, zero) of a symmetric integer matrix,
/// computed by exact rational elimination (Schur complements plus the
/// hyperbolic-pair transform when every active diagonal entry vanishes).
pub fn inertia(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0usize, 0usize);
    loop {
        if active.is_empty() {
            break;
        }
        if let Some(&p) = active.iter().find(|&&i| !a[i][i].is_zero()) {
            if a[p][p].is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            let rest: Vec<usize> = active.iter().copied().filter(|&i| i != p).collect();
            for &j in &rest {
                if a[j][p].is_zero() {
                    continue;
                }
                let f = &a[j][p] / &a[p][p];
                for &k in &rest {
                    let delta = &f * &a[p][k];
                    a[j][k] = &a[j][k] - &delta;
                }
            }
            // re-symmetrize the border (now unused) and drop the pivot
            active = rest;
        } else {
            // every active diagonal is zero; a nonzero off-diagonal entry
            // yields a hyperbolic plane after e_i += e_j
            let mut pair = None;
            'search: for (x, &i) in active.iter().enumerate() {
                for &j in &active[x + 1..] {
                    if !a[i][j].is_zero() {
                        pair = Some((i, j));
                        break 'search;
                    }
                }
            }
            match pair {
                None => break, // all zero: the rest is the kernel
                Some((i, j)) => {
                    let old_ii = a[i][i].clone();
                    let old_ij = a[i][j].clone();
                    let old_jj = a[j][j].clone();
                    for &k in &active {
                        if k == i {
                            continue;
                        }
                        let v = &a[i][k] + &a[j][k];
                        a[i][k] = v.clone();
                        a[k][i] = v;
                    }
                    a[i][i] = &old_ii + &(BigRational::from(BigInt::from(2)) * &old_ij) + &old_jj;
                }
            }
        }
    }
    (pos, neg, n - pos - neg)
}

/// Exact negative-semidefiniteness decision on a symmetric integer matrix.
pub fn is_negative_semidefinite_matrix(m: &[Vec<i64>]) -> bool {
    inertia(m).0 == 0
}

/// Exact decision on the Gram submatrix spanned by the given curves.
pub fn is_negative_semidefinite(x: &SurfaceModel, curves: &[CurveRecord]) -> Result<bool> {
    if curves.is_empty() {
        return Err(Error::Precondition(
            "semidefiniteness test needs at least one curve".into(),
        ));
    }
    let n = curves.len();
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = x.pairing(&curves[i].class, &curves[j].class)?;
        }
    }
    Ok(is_negative_semidefinite_matrix(&gram))
}

/// One failed numerical inequality found by [`validate_surface`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Lemma 1.2: K^2 >= 2 p_g (and K^2 >= 2q) on a minimal surface of
    /// general type.
    CanonicalSquareVsGenus { k2: i64, bound: i64 },
    /// Lemma 1.6: K^2 >= 6q - 13 unless the surface is a product of curves.
    CanonicalSquareVsIrregularity { k2: i64, bound: i64 },
    /// Proposition 1.7: K.C >= (3/2)q - 3 for an irreducible reduced curve
    /// with C^2 > 0 on a minimal surface of general type (stored doubled
    /// to stay in integers).
    CanonicalDegreeOfPositiveCurve {
        curve: CurveId,
        twice_kc: i64,
        twice_bound: i64,
    },
    /// Hodge index: the intersection form has more than one positive
    /// eigenvalue, which no projective surface allows.
    SignatureExcess { positive: usize },
}

impl Violation {
    /// Tag of the inequality being violated, as reported to the user.
    pub fn tag(&self) -> &'static str {
        match self {
            Violation::CanonicalSquareVsGenus { .. } => "Lemma 1.2: K^2 >= 2*p_g",
            Violation::CanonicalSquareVsIrregularity { .. } => "Lemma 1.6: K^2 >= 6*q - 13",
            Violation::CanonicalDegreeOfPositiveCurve { .. } => {
                "Proposition 1.7: K.C >= (3/2)*q - 3"
            }
            Violation::SignatureExcess { .. } => "Hodge index: signature (1, rank-1)",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CanonicalSquareVsGenus { k2, bound } => {
                write!(f, "{}: K^2 = {k2} < {bound}", self.tag())
            }
            Violation::CanonicalSquareVsIrregularity { k2, bound } => {
                write!(f, "{}: K^2 = {k2} < {bound}", self.tag())
            }
            Violation::CanonicalDegreeOfPositiveCurve {
                curve,
                twice_kc,
                twice_bound,
            } => write!(
                f,
                "{}: 2*K.{curve} = {twice_kc} < {twice_bound}",
                self.tag()
            ),
            Violation::SignatureExcess { positive } => write!(
                f,
                "{}: form has {positive} positive eigenvalues",
                self.tag()
            ),
        }
    }
}

/// Check every numerical inequality the declared invariants are subject to.
/// An empty list means the model is plausible; violations are data, not
/// errors.
pub fn validate_surface(x: &SurfaceModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let k2 = x
        .self_intersection(x.canonical())
        .expect("canonical class has ambient rank");
    let q = x.irregularity();

    let (pos, _, _) = inertia(x.gram());
    if pos > 1 {
        out.push(Violation::SignatureExcess { positive: pos });
    }

    if x.is_minimal() && x.kodaira() == KodairaDim::Two {
        let mut bound = 2 * q;
        if q >= 1 {
            if let Some(pg) = x.geom_genus() {
                bound = bound.max(2 * pg);
            }
        }
        if k2 < bound {
            out.push(Violation::CanonicalSquareVsGenus { k2, bound });
        }
        if !x.is_curve_product() && k2 < 6 * q - 13 {
            out.push(Violation::CanonicalSquareVsIrregularity {
                k2,
                bound: 6 * q - 13,
            });
        }
        for c in x.curves() {
            if !(c.irreducible && c.reduced) {
                continue;
            }
            let c2 = x.self_intersection(&c.class).expect("registered class");
            if c2 <= 0 {
                continue;
            }
            let kc = x.pairing(x.canonical(), &c.class).expect("registered class");
            if 2 * kc < 3 * q - 6 {
                out.push(Violation::CanonicalDegreeOfPositiveCurve {
                    curve: c.id.clone(),
                    twice_kc: 2 * kc,
                    twice_bound: 3 * q - 6,
                });
            }
        }
    }
    out
}

/// Rank-2 lattice of a product of two smooth curves of the given genera,
/// with basis (f, c) the two fiber classes.
pub fn product_surface(genus_f: i64, genus_c: i64) -> Result<SurfaceModel> {
    if genus_f < 1 || genus_c < 1 {
        return Err(Error::UnsupportedModel(format!(
            "product of genera ({genus_f},{genus_c}) has negative Kodaira dimension"
        )));
    }
    let kodaira = match (genus_f > 1, genus_c > 1) {
        (false, false) => KodairaDim::Zero,
        (true, true) => KodairaDim::Two,
        _ => KodairaDim::One,
    };
    let canonical = DivisorClass::new(vec![2 * genus_c - 2, 2 * genus_f - 2]);
    let fiber_f = CurveRecord {
        id: CurveId::new("f"),
        class: DivisorClass::new(vec![1, 0]),
        irreducible: true,
        reduced: true,
    };
    let fiber_c = CurveRecord {
        id: CurveId::new("c"),
        class: DivisorClass::new(vec![0, 1]),
        irreducible: true,
        reduced: true,
    };
    SurfaceModel::new(SurfaceData {
        gram: vec![vec![0, 1], vec![1, 0]],
        canonical,
        irregularity: genus_f + genus_c,
        kodaira,
        minimal: true,
        geom_genus: None,
        is_curve_product: true,
        curves: vec![fiber_f, fiber_c],
        h0: Vec::new(),
    })
}

/// Rank-2 lattice of an abelian surface: K = 0, q = 2, and classes of
/// positive square exist.
pub fn abelian_surface() -> SurfaceModel {
    SurfaceModel::new(SurfaceData {
        gram: vec![vec![0, 1], vec![1, 0]],
        canonical: DivisorClass::zero(2),
        irregularity: 2,
        kodaira: KodairaDim::Zero,
        minimal: true,
        geom_genus: Some(1),
        is_curve_product: false,
        curves: Vec::new(),
        h0: Vec::new(),
    })
    .expect("abelian lattice is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fc(a: i64, b: i64) -> DivisorClass {
        DivisorClass::new(vec![a, b])
    }

    #[test]
    fn pairing_product_basis() {
        let x = product_surface(1, 2).unwrap();
        let f = fc(1, 0);
        let c = fc(0, 1);
        assert_eq!(x.pairing(&f, &c).unwrap(), 1);
        assert_eq!(x.pairing(&f, &f).unwrap(), 0);
        // m = 0, L = c + f, K = 2f
        let l = fc(1, 1);
        assert_eq!(x.pairing(x.canonical(), &l).unwrap(), 2);
        assert_eq!(2 * x.irregularity() - 4, 2);
    }

    #[test]
    fn sectional_genus_examples() {
        for g_c in 2..=6 {
            for m in 0..=6 {
                let x = product_surface(1, g_c).unwrap();
                let l = fc(m + 1, 1);
                assert_eq!(x.sectional_genus(&l).unwrap(), g_c + 1 + m);
                assert_eq!(x.sectional_genus(&l).unwrap(), x.irregularity() + m);
            }
        }
        let x = product_surface(1, 2).unwrap();
        assert_eq!(x.sectional_genus(&DivisorClass::zero(2)).unwrap(), 1);

        let x = product_surface(2, 2).unwrap();
        let l = fc(2, 1);
        assert_eq!(x.sectional_genus(&l).unwrap(), x.irregularity() + 2);
        assert_eq!(x.self_intersection(&l).unwrap(), 4);
    }

    #[test]
    fn arithmetic_genus_examples() {
        let x = product_surface(3, 5).unwrap();
        let f = x.curve(&CurveId::new("f")).unwrap().clone();
        assert_eq!(x.arithmetic_genus(&f).unwrap(), 3);

        // additivity g(C1+C2) = g(C1)+g(C2)+C1.C2-1
        let c1 = fc(1, 2);
        let c2 = fc(3, 1);
        let g1 = x.sectional_genus(&c1).unwrap();
        let g2 = x.sectional_genus(&c2).unwrap();
        let g12 = x.sectional_genus(&(&c1 + &c2)).unwrap();
        assert_eq!(g12, g1 + g2 + x.pairing(&c1, &c2).unwrap() - 1);

        // newborn exceptional curve has genus 0
        let y = x.extend_blowup();
        let e = DivisorClass::basis(3, 2);
        assert_eq!(y.sectional_genus(&e).unwrap(), 0);
    }

    #[test]
    fn hodge_index_examples() {
        let x = product_surface(1, 2).unwrap();
        let l = fc(1, 1);
        assert!(x.hodge_index_check(&fc(1, -1), &l).unwrap());
        assert!(x.hodge_index_check(&l, &l).unwrap());
        assert!(x.hodge_index_check(&fc(1, 0), &l).unwrap());
        assert!(x.hodge_index_check(&fc(0, 0), &l).unwrap());
        assert!(x.hodge_index_check(&fc(1, 0), &fc(1, 0)).is_err());
    }

    #[test]
    fn inertia_small_matrices() {
        assert_eq!(inertia(&[vec![-2]]), (0, 1, 0));
        assert_eq!(inertia(&[vec![0, 1], vec![1, 0]]), (1, 1, 0));
        assert_eq!(inertia(&[vec![-2, 1], vec![1, -2]]), (0, 2, 0));
        assert_eq!(inertia(&[vec![0, 0], vec![0, 0]]), (0, 0, 2));
        assert_eq!(inertia(&[vec![-2, 1], vec![1, 0]]), (1, 1, 0));
        // kernel plus a negative direction
        assert_eq!(inertia(&[vec![-1, 1], vec![1, -1]]), (0, 1, 1));
    }

    #[test]
    fn negative_semidefinite_examples() {
        let x = product_surface(2, 2).unwrap();
        let single = CurveRecord {
            id: CurveId::new("a"),
            class: fc(1, -1), // square -2 on the product lattice
            irreducible: false,
            reduced: true,
        };
        assert!(is_negative_semidefinite(&x, &[single]).unwrap());
        assert!(!is_negative_semidefinite_matrix(&[vec![0, 1], vec![1, 0]]));
        assert!(is_negative_semidefinite_matrix(&[vec![-2, 1], vec![1, -2]]));
    }

    #[test]
    fn constructors() {
        let x = product_surface(1, 1).unwrap();
        assert!(x.canonical().is_zero());
        assert_eq!(x.irregularity(), 2);
        assert_eq!(x.kodaira(), KodairaDim::Zero);

        let x = product_surface(1, 3).unwrap();
        assert_eq!(x.canonical(), &fc(4, 0));
        assert_eq!(x.irregularity(), 4);
        assert_eq!(x.kodaira(), KodairaDim::One);

        let x = product_surface(2, 2).unwrap();
        assert_eq!(x.canonical(), &fc(2, 2));
        assert_eq!(x.irregularity(), 4);
        assert_eq!(x.kodaira(), KodairaDim::Two);

        assert!(product_surface(0, 2).is_err());

        let a = abelian_surface();
        let l = fc(2, 3);
        assert_eq!(a.pairing(a.canonical(), &l).unwrap(), 0);
        assert_eq!(2 * a.irregularity() - 4, 0);
        assert_eq!(
            a.sectional_genus(&l).unwrap(),
            1 + a.self_intersection(&l).unwrap() / 2
        );
    }

    #[test]
    fn validate_surface_examples() {
        assert!(validate_surface(&abelian_surface()).is_empty());
        assert!(validate_surface(&product_surface(2, 2).unwrap()).is_empty());

        // minimal general type, q = 4, K^2 = 6, not a product
        let x = SurfaceModel::new(SurfaceData {
            gram: vec![vec![2, 0], vec![0, -2]],
            canonical: DivisorClass::new(vec![2, 1]),
            irregularity: 4,
            kodaira: KodairaDim::Two,
            minimal: true,
            geom_genus: None,
            is_curve_product: false,
            curves: Vec::new(),
            h0: Vec::new(),
        })
        .unwrap();
        assert_eq!(x.self_intersection(x.canonical()).unwrap(), 6);
        let violations = validate_surface(&x);
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::CanonicalSquareVsIrregularity { k2: 6, bound: 11 })));
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::CanonicalSquareVsGenus { k2: 6, bound: 8 })));
    }

    #[test]
    fn construction_rejections() {
        // asymmetric gram
        assert!(SurfaceModel::new(SurfaceData {
            gram: vec![vec![0, 1], vec![2, 0]],
            canonical: DivisorClass::zero(2),
            irregularity: 0,
            kodaira: KodairaDim::Zero,
            minimal: true,
            geom_genus: None,
            is_curve_product: false,
            curves: Vec::new(),
            h0: Vec::new(),
        })
        .is_err());
        // parity violation: e_2^2 + K.e_2 = 1 odd
        assert!(matches!(
            SurfaceModel::new(SurfaceData {
                gram: vec![vec![0, 1], vec![1, 1]],
                canonical: DivisorClass::zero(2),
                irregularity: 0,
                kodaira: KodairaDim::Zero,
                minimal: true,
                geom_genus: None,
                is_curve_product: false,
                curves: Vec::new(),
                h0: Vec::new(),
            }),
            Err(Error::ParityViolation { .. })
        ));
        // kodaira 0 with q = 3
        assert!(SurfaceModel::new(SurfaceData {
            gram: vec![vec![0, 1], vec![1, 0]],
            canonical: DivisorClass::zero(2),
            irregularity: 3,
            kodaira: KodairaDim::Zero,
            minimal: true,
            geom_genus: None,
            is_curve_product: false,
            curves: Vec::new(),
            h0: Vec::new(),
        })
        .is_err());
    }
}

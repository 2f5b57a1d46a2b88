//! Registry of the subalgebra pairs h ⊂ g under study.
//!
//! Each matrix-level case carries the ambient algebra, the subalgebra basis,
//! the trace-form orthogonal complement m, and optionally an involution
//! (symmetric pairs) and a Satake diagram. Rows whose ambient or subalgebra
//! is exceptional beyond G2 are registered as data-only stubs; a deliberately
//! bad embedding is kept as a negative control.

use crate::linalg::SpanSolver;
use crate::models::{
    build_a2_in_g2, build_classical, build_g2_in_so7, build_spin7_in_so8, MatrixLieAlgebra,
    ModelError,
};
use crate::orbits::{self, LieType, OrbitId, Partition};
use crate::{rat, ratio, Rat, RatMatrix};
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbedError {
    #[error("case has no Satake data")]
    NoSatakeData,
    #[error("unknown case id {0}")]
    UnknownCase(String),
    #[error("element outside the ambient span")]
    NotInAmbient,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Orbit(#[from] crate::orbits::OrbitError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeColor {
    White,
    Black,
}

/// Satake diagram of the involution defining the pair, Bourbaki node order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatakeDiagram {
    pub colors: Vec<NodeColor>,
    pub arrows: Vec<(usize, usize)>,
}

impl SatakeDiagram {
    fn single_white(nodes: usize, white: usize) -> Self {
        let colors = (0..nodes)
            .map(|i| {
                if i == white {
                    NodeColor::White
                } else {
                    NodeColor::Black
                }
            })
            .collect();
        SatakeDiagram {
            colors,
            arrows: Vec::new(),
        }
    }
}

/// How elements of g are conjugated when sampling for generic witnesses.
#[derive(Debug, Clone)]
pub enum Sampler {
    /// Cayley transforms of random form-skew matrices (so/sp ambient).
    CayleyForm,
    /// Products of elementary unipotent matrices (sl ambient).
    Elementary,
    /// Products of exponentials of the given nilpotent matrices (G2 ambient).
    UnipotentSet(Vec<RatMatrix>),
}

/// Involution with h as its +1 eigenspace, when the pair is symmetric.
#[derive(Debug, Clone)]
pub enum Involution {
    /// x ↦ R x R⁻¹ for a form-preserving R with R² = 1.
    Conjugation(RatMatrix),
    /// x ↦ −Ω⁻¹ xᵀ Ω (the symplectic symmetric pair inside sl).
    NegFormAdjoint(RatMatrix),
}

impl Involution {
    pub fn apply(&self, x: &RatMatrix) -> RatMatrix {
        match self {
            Involution::Conjugation(r) => {
                let r_inv = r.inverse().expect("involution invertible");
                r.mul(x).mul(&r_inv)
            }
            Involution::NegFormAdjoint(form) => {
                let inv = form.inverse().expect("form invertible");
                inv.mul(&x.transpose()).mul(form).neg()
            }
        }
    }
}

/// What the ambient algebra is, for orbit identification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmbientKind {
    Classical(LieType),
    G2,
}

impl AmbientKind {
    pub fn lie_type(&self) -> LieType {
        match self {
            AmbientKind::Classical(t) => *t,
            AmbientKind::G2 => LieType::g2(),
        }
    }
}

/// How H-orbits of subalgebra elements are identified.
#[derive(Debug, Clone)]
pub enum SubKind {
    /// so_{N−1} ⊂ so_N standard: the ambient Jordan type minus one part 1.
    SoStandard(LieType),
    /// sp_{2n} ⊂ sl_{2n}: the ambient Jordan type itself.
    SpInSl(LieType),
    /// Product of symplectic blocks: per-factor Jordan types on the given
    /// symmetric index subsets.
    SpProduct(Vec<(LieType, Vec<usize>)>),
    /// g2: centralizer dimension in the subalgebra is a complete invariant.
    G2Sub,
    /// spin_7: translate to the 7-dim vector representation (basis-aligned)
    /// and read the B3 Jordan type there.
    Spin7Sub(Vec<RatMatrix>),
    /// Long-root sl3 of g2: centralizer dimension (8, 4, 2 for the three
    /// orbit classes).
    A2Sub,
}

/// An H-orbit of the subalgebra: a single orbit id, or one per product factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HOrbit {
    Single(OrbitId),
    Product(Vec<OrbitId>),
}

impl fmt::Display for HOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HOrbit::Single(o) => match o {
                OrbitId::Classical { p, .. } => write!(f, "{p}"),
                OrbitId::Exceptional { label, .. } => write!(f, "{label}"),
            },
            HOrbit::Product(v) => {
                let strs: Vec<String> = v
                    .iter()
                    .map(|o| match o {
                        OrbitId::Classical { p, .. } => p.to_string(),
                        OrbitId::Exceptional { label, .. } => label.clone(),
                    })
                    .collect();
                write!(f, "{}", strs.join(" x "))
            }
        }
    }
}

/// A fully constructed matrix-level pair h ⊂ g.
#[derive(Debug, Clone)]
pub struct MatrixCase {
    pub id: String,
    pub description: String,
    pub ambient: MatrixLieAlgebra,
    pub ambient_kind: AmbientKind,
    pub sub: MatrixLieAlgebra,
    pub sub_kind: SubKind,
    pub sub_rank: usize,
    pub complement: Vec<RatMatrix>,
    pub involution: Option<Involution>,
    pub satake: Option<SatakeDiagram>,
    /// Orbit this case certifies (the minimal orbit for first-table rows).
    pub orbit: OrbitId,
    pub golden_row: Option<String>,
    /// Which argument certifies property P1 for the pair.
    pub route: &'static str,
    /// Expected to produce no dense-orbit certificate.
    pub negative: bool,
    pub sampler: Sampler,
    /// Standard minimal representative for non-classical ambient kinds.
    pub ambient_min_rep: Option<RatMatrix>,
    proj: SpanSolver<Rat>,
}

/// A data-only stub (exceptional ambient or subalgebra outside our models).
#[derive(Debug, Clone)]
pub struct DataCase {
    pub id: String,
    pub description: String,
    pub ambient: LieType,
    pub sub: LieType,
    pub golden_row: String,
}

#[derive(Debug, Clone)]
pub enum EmbeddingCase {
    Matrix(Box<MatrixCase>),
    Data(DataCase),
}

impl EmbeddingCase {
    pub fn id(&self) -> &str {
        match self {
            EmbeddingCase::Matrix(c) => &c.id,
            EmbeddingCase::Data(c) => &c.id,
        }
    }
}

impl MatrixCase {
    /// Exact trace-form decomposition x = a + b with a ∈ h, b ∈ m.
    pub fn project(&self, x: &RatMatrix) -> Result<(RatMatrix, RatMatrix), EmbedError> {
        let coords = self
            .proj
            .coordinates(&x.flatten())
            .ok_or(EmbedError::NotInAmbient)?;
        let dh = self.sub.dim();
        let mut a = self.ambient.zero_matrix();
        for (c, m) in coords[..dh].iter().zip(&self.sub.basis) {
            if !c.is_zero() {
                a = a.add(&m.scale(c));
            }
        }
        let mut b = self.ambient.zero_matrix();
        for (c, m) in coords[dh..].iter().zip(&self.complement) {
            if !c.is_zero() {
                b = b.add(&m.scale(c));
            }
        }
        Ok((a, b))
    }

    /// Identify the H-orbit of a nilpotent element of h.
    pub fn identify_sub_orbit(&self, a: &RatMatrix) -> Result<HOrbit, EmbedError> {
        Ok(match &self.sub_kind {
            SubKind::SoStandard(t) => {
                let jt = a
                    .jordan_type_nilpotent()
                    .map_err(|_| ModelError::NotNilpotent)?;
                let mut parts = jt.parts().to_vec();
                // the fixed anisotropic vector contributes one trivial block
                let pos = parts
                    .iter()
                    .rposition(|&p| p == 1)
                    .expect("sub element must annihilate the fixed vector");
                parts.remove(pos);
                HOrbit::Single(OrbitId::Classical {
                    t: *t,
                    p: Partition::new(parts),
                })
            }
            SubKind::SpInSl(t) => {
                let jt = a
                    .jordan_type_nilpotent()
                    .map_err(|_| ModelError::NotNilpotent)?;
                HOrbit::Single(OrbitId::Classical {
                    t: *t,
                    p: Partition::new(jt.parts().to_vec()),
                })
            }
            SubKind::SpProduct(factors) => {
                let mut ids = Vec::new();
                for (t, idx) in factors {
                    let local = RatMatrix::from_fn(idx.len(), idx.len(), |r, c| {
                        a[(idx[r], idx[c])].clone()
                    });
                    let jt = local
                        .jordan_type_nilpotent()
                        .map_err(|_| ModelError::NotNilpotent)?;
                    ids.push(OrbitId::Classical {
                        t: *t,
                        p: Partition::new(jt.parts().to_vec()),
                    });
                }
                HOrbit::Product(ids)
            }
            SubKind::G2Sub => {
                let w = crate::models::identify_g2_orbit(&self.sub, a)?;
                HOrbit::Single(w.orbit)
            }
            SubKind::Spin7Sub(vector_rep) => {
                let coords = self.sub.coordinates(a)?;
                let mut v = RatMatrix::zero(7, 7);
                for (c, g) in coords.iter().zip(vector_rep) {
                    if !c.is_zero() {
                        v = v.add(&g.scale(c));
                    }
                }
                let jt = v
                    .jordan_type_nilpotent()
                    .map_err(|_| ModelError::NotNilpotent)?;
                HOrbit::Single(OrbitId::Classical {
                    t: LieType::b(3),
                    p: Partition::new(jt.parts().to_vec()),
                })
            }
            SubKind::A2Sub => {
                let zdim = self.sub.dim() - MatrixLieAlgebra::bracket_image_dim(&self.sub.basis, a);
                let parts = match zdim {
                    8 => vec![1, 1, 1],
                    4 => vec![2, 1],
                    2 => vec![3],
                    other => {
                        return Err(EmbedError::Model(ModelError::UnknownCentralizerDim(other)))
                    }
                };
                HOrbit::Single(OrbitId::Classical {
                    t: LieType::a(2),
                    p: Partition::new(parts),
                })
            }
        })
    }

    /// Identify the G-orbit of a nilpotent ambient element.
    pub fn identify_ambient_orbit(&self, x: &RatMatrix) -> Result<OrbitId, EmbedError> {
        Ok(match self.ambient_kind {
            AmbientKind::Classical(t) => {
                let w = crate::models::identify_classical_orbit(&self.ambient, t, x)?;
                w.orbit
            }
            AmbientKind::G2 => {
                let w = crate::models::identify_g2_orbit(&self.ambient, x)?;
                w.orbit
            }
        })
    }
}

/// Satake criterion: does the orbit meet the (−1)-eigenspace m?
///
/// True iff every nonzero label of the weighted Dynkin diagram sits on a
/// white node and the label vector is invariant under the arrow involution.
pub fn satake_meets_criterion(case: &MatrixCase, o: &OrbitId) -> Result<bool, EmbedError> {
    let satake = case.satake.as_ref().ok_or(EmbedError::NoSatakeData)?;
    let AmbientKind::Classical(t) = case.ambient_kind else {
        return Err(EmbedError::NoSatakeData);
    };
    let p = o.partition().expect("classical orbit");
    let wdd = orbits::weighted_dynkin(t, p)?;
    let on_white = wdd
        .labels
        .iter()
        .enumerate()
        .all(|(i, &l)| l == 0 || satake.colors[i] == NodeColor::White);
    let arrow_invariant = satake
        .arrows
        .iter()
        .all(|&(a, b)| wdd.labels[a] == wdd.labels[b]);
    Ok(on_white && arrow_invariant)
}

// ---------------------------------------------------------------------------
// construction helpers

/// Scatter an n_small×n_small matrix into n_big×n_big on the given indices.
fn scatter(n_big: usize, idx: &[usize], m: &RatMatrix) -> RatMatrix {
    let mut out = RatMatrix::zero(n_big, n_big);
    for r in 0..idx.len() {
        for c in 0..idx.len() {
            if !m[(r, c)].is_zero() {
                out[(idx[r], idx[c])] = m[(r, c)].clone();
            }
        }
    }
    out
}

/// Index subset realizing so_{N−1} ⊂ so_N for odd N (drop the middle index).
fn drop_middle_indices(n_big: usize) -> Vec<usize> {
    assert!(n_big % 2 == 1);
    (0..n_big).filter(|&i| i != n_big / 2).collect()
}

/// Embedding so_{2n+1} ⊂ so_{2n+2} fixing an anisotropic vector: returns the
/// isometry T onto the complement of the vector, its left inverse, and the
/// form-preserving reflection R with fixed space im(T).
fn so_odd_in_even_maps(n_small: usize) -> (RatMatrix, RatMatrix, RatMatrix) {
    assert!(n_small % 2 == 1);
    let n_big = n_small + 1;
    let mid = n_small / 2; // small middle index; big middle pair (mid, mid+1)
    let mut t = RatMatrix::zero(n_big, n_small);
    let mut t_inv = RatMatrix::zero(n_small, n_big);
    for j in 0..n_small {
        if j < mid {
            t[(j, j)] = rat(1);
            t_inv[(j, j)] = rat(1);
        } else if j == mid {
            // w = e_mid + (1/2) e_{mid+1}, with Q(w) = 1
            t[(mid, mid)] = rat(1);
            t[(mid + 1, mid)] = ratio(1, 2);
            t_inv[(mid, mid)] = ratio(1, 2);
            t_inv[(mid, mid + 1)] = rat(1);
        } else {
            t[(j + 1, j)] = rat(1);
            t_inv[(j, j + 1)] = rat(1);
        }
    }
    // reflection through the hyperplane im(T): swaps the middle pair with
    // weights so that v = e_mid − (1/2) e_{mid+1} goes to −v
    let mut r = RatMatrix::identity(n_big);
    r[(mid, mid)] = rat(0);
    r[(mid + 1, mid + 1)] = rat(0);
    r[(mid + 1, mid)] = ratio(1, 2);
    r[(mid, mid + 1)] = rat(2);
    (t, t_inv, r)
}

fn embed_via_maps(t: &RatMatrix, t_inv: &RatMatrix, m: &RatMatrix) -> RatMatrix {
    t.mul(m).mul(t_inv)
}

/// Symmetric index subsets for k symplectic factors inside sp_2n.
fn sp_factor_indices(ni: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = ni.iter().sum();
    let big = 2 * n;
    let mut lo = 0;
    let mut hi = big;
    let mut out = Vec::new();
    for &f in ni {
        let mut idx: Vec<usize> = (lo..lo + f).collect();
        idx.extend(hi - f..hi);
        lo += f;
        hi -= f;
        out.push(idx);
    }
    out
}

struct CaseBuilder {
    id: String,
    description: String,
    ambient: MatrixLieAlgebra,
    ambient_kind: AmbientKind,
    sub_name: String,
    sub_basis: Vec<RatMatrix>,
    sub_kind: SubKind,
    sub_rank: usize,
    involution: Option<Involution>,
    satake: Option<SatakeDiagram>,
    orbit: OrbitId,
    golden_row: Option<String>,
    route: &'static str,
    negative: bool,
    sampler: Sampler,
    ambient_min_rep: Option<RatMatrix>,
}

impl CaseBuilder {
    fn build(self) -> MatrixCase {
        let sub = MatrixLieAlgebra::new(
            self.sub_name,
            self.ambient.ambient_dim,
            self.sub_basis,
            None,
        );
        // complement: exact trace-form orthogonal of h inside g
        let pairing = RatMatrix::from_fn(sub.dim(), self.ambient.dim(), |i, j| {
            sub.basis[i].trace_mul(&self.ambient.basis[j])
        });
        let complement: Vec<RatMatrix> = pairing
            .kernel_basis()
            .into_iter()
            .map(|coords| {
                let mut m = self.ambient.zero_matrix();
                for (c, b) in coords.iter().zip(&self.ambient.basis) {
                    if !c.is_zero() {
                        m = m.add(&b.scale(c));
                    }
                }
                m
            })
            .collect();
        assert_eq!(
            sub.dim() + complement.len(),
            self.ambient.dim(),
            "complement dimension mismatch in {}",
            self.id
        );
        let mut gens: Vec<Vec<Rat>> = sub.basis.iter().map(RatMatrix::flatten).collect();
        gens.extend(complement.iter().map(RatMatrix::flatten));
        let proj = SpanSolver::new(&gens);
        MatrixCase {
            id: self.id,
            description: self.description,
            ambient: self.ambient,
            ambient_kind: self.ambient_kind,
            sub,
            sub_kind: self.sub_kind,
            sub_rank: self.sub_rank,
            complement,
            involution: self.involution,
            satake: self.satake,
            orbit: self.orbit,
            golden_row: self.golden_row,
            route: self.route,
            negative: self.negative,
            sampler: self.sampler,
            ambient_min_rep: self.ambient_min_rep,
            proj,
        }
    }
}

fn min_orbit(t: LieType) -> OrbitId {
    OrbitId::Classical {
        t,
        p: orbits::minimal_orbit_partition(t).unwrap(),
    }
}

/// so_{N−1} ⊂ so_N with the Satake diagram of the rank-one symmetric pair.
fn build_so_pair(
    n_big: usize,
    orbit: Option<OrbitId>,
    id: String,
    golden: Option<String>,
    route: &'static str,
) -> MatrixCase {
    assert!(n_big >= 5);
    let (amb_t, sub_t) = if n_big % 2 == 1 {
        (LieType::b(n_big / 2), LieType::d((n_big - 1) / 2))
    } else {
        (LieType::d(n_big / 2), LieType::b(n_big / 2 - 1))
    };
    let ambient = build_classical(amb_t).unwrap();
    let sub_model = build_classical(sub_t).unwrap();
    let (sub_basis, involution) = if n_big % 2 == 1 {
        let idx = drop_middle_indices(n_big);
        let basis: Vec<RatMatrix> = sub_model
            .basis
            .iter()
            .map(|m| scatter(n_big, &idx, m))
            .collect();
        let mut d = RatMatrix::identity(n_big);
        d[(n_big / 2, n_big / 2)] = rat(-1);
        (basis, Involution::Conjugation(d))
    } else {
        let (t, t_inv, r) = so_odd_in_even_maps(n_big - 1);
        let basis: Vec<RatMatrix> = sub_model
            .basis
            .iter()
            .map(|m| embed_via_maps(&t, &t_inv, m))
            .collect();
        (basis, Involution::Conjugation(r))
    };
    let orbit = orbit.unwrap_or_else(|| min_orbit(amb_t));
    CaseBuilder {
        id,
        description: format!("standard so_{} inside so_{}", n_big - 1, n_big),
        ambient,
        ambient_kind: AmbientKind::Classical(amb_t),
        sub_name: format!("so{}(so{})", n_big - 1, n_big),
        sub_basis,
        sub_kind: SubKind::SoStandard(sub_t),
        sub_rank: sub_t.rank,
        involution: Some(involution),
        satake: Some(SatakeDiagram::single_white(amb_t.rank, 0)),
        orbit,
        golden_row: golden,
        route,
        negative: false,
        sampler: Sampler::CayleyForm,
        ambient_min_rep: None,
    }
    .build()
}

/// Parameters controlling which instances the registry constructs.
#[derive(Debug, Clone)]
pub struct RegistryParams {
    pub row3_n: Vec<usize>,
    pub row4_n: Vec<usize>,
    pub row5_n: Vec<usize>,
    pub row11: Vec<Vec<usize>>,
    pub t2_km: Vec<(usize, usize)>,
}

impl Default for RegistryParams {
    fn default() -> Self {
        RegistryParams {
            row3_n: vec![3, 4, 5],
            row4_n: vec![2, 3, 4, 5],
            row5_n: vec![2, 3, 4],
            row11: vec![vec![1, 1], vec![1, 1, 1]],
            t2_km: vec![(2, 0), (2, 1), (2, 2), (3, 1)],
        }
    }
}

/// Construct every registered case.
pub fn registry(params: &RegistryParams) -> Vec<EmbeddingCase> {
    let spin = build_spin7_in_so8();
    let g2 = build_g2_in_so7();
    let a2 = build_a2_in_g2(&g2);
    let mut cases: Vec<EmbeddingCase> = Vec::new();

    // data-only stubs for the exceptional rows
    for (id, amb, sub, desc) in [
        (
            "T1.row1",
            LieType::f4(),
            LieType::b(4),
            "so_9 inside f4 (symmetric)",
        ),
        (
            "T1.row2",
            LieType::e6(),
            LieType::f4(),
            "f4 inside e6 (symmetric)",
        ),
        ("T1.row8", LieType::f4(), LieType::d(4), "so_8 inside f4"),
    ] {
        cases.push(EmbeddingCase::Data(DataCase {
            id: id.into(),
            description: format!("{desc}; exceptional-data validated"),
            ambient: amb,
            sub,
            golden_row: id.into(),
        }));
    }

    for &n in &params.row3_n {
        cases.push(EmbeddingCase::Matrix(Box::new(build_so_pair(
            2 * n + 1,
            None,
            format!("T1.row3(n={n})"),
            Some(format!("T1.row3(n={n})")),
            "P2-certificate",
        ))));
    }
    for &n in &params.row4_n {
        cases.push(EmbeddingCase::Matrix(Box::new(build_so_pair(
            2 * n + 2,
            None,
            format!("T1.row4(n={n})"),
            Some(format!("T1.row4(n={n})")),
            "P2-certificate",
        ))));
    }

    // row 4, spin variant at n = 3: spin_7 ⊂ so_8
    {
        let amb_t = LieType::d(4);
        let ambient = build_classical(amb_t).unwrap();
        cases.push(EmbeddingCase::Matrix(Box::new(
            CaseBuilder {
                id: "T1.row4spin".into(),
                description: "spin_7 inside so_8 (the spinor-representation embedding)".into(),
                ambient,
                ambient_kind: AmbientKind::Classical(amb_t),
                sub_name: "spin7(so8)".into(),
                sub_basis: spin.so8.basis.clone(),
                sub_kind: SubKind::Spin7Sub(spin.vector_rep.clone()),
                sub_rank: 3,
                involution: None,
                satake: Some(SatakeDiagram::single_white(4, 2)),
                orbit: min_orbit(amb_t),
                golden_row: Some("T1.row4(n=3)".into()),
                route: "P2-certificate",
                negative: false,
                sampler: Sampler::CayleyForm,
                ambient_min_rep: None,
            }
            .build(),
        )));
    }

    for &n in &params.row5_n {
        let amb_t = LieType::a(2 * n - 1);
        let sub_t = LieType::c(n);
        let ambient = build_classical(amb_t).unwrap();
        let sub_model = build_classical(sub_t).unwrap();
        let form = sub_model.form.clone().unwrap();
        cases.push(EmbeddingCase::Matrix(Box::new(
            CaseBuilder {
                id: format!("T1.row5(n={n})"),
                description: format!("sp_{} inside sl_{} (symmetric)", 2 * n, 2 * n),
                ambient,
                ambient_kind: AmbientKind::Classical(amb_t),
                sub_name: format!("sp{}(sl{})", 2 * n, 2 * n),
                sub_basis: sub_model.basis.clone(),
                sub_kind: SubKind::SpInSl(sub_t),
                sub_rank: n,
                involution: Some(Involution::NegFormAdjoint(form)),
                satake: None,
                orbit: min_orbit(amb_t),
                golden_row: Some(format!("T1.row5(n={n})")),
                route: "P2-certificate",
                negative: false,
                sampler: Sampler::Elementary,
                ambient_min_rep: None,
            }
            .build(),
        )));
    }

    // row 6: g2 ⊂ so_7
    {
        let amb_t = LieType::b(3);
        let ambient = build_classical(amb_t).unwrap();
        cases.push(EmbeddingCase::Matrix(Box::new(
            CaseBuilder {
                id: "T1.row6".into(),
                description: "g2 inside so_7 (generic spinor stabilizer)".into(),
                ambient,
                ambient_kind: AmbientKind::Classical(amb_t),
                sub_name: "g2(so7)".into(),
                sub_basis: g2.so7.basis.clone(),
                sub_kind: SubKind::G2Sub,
                sub_rank: 2,
                involution: None,
                satake: None,
                orbit: min_orbit(amb_t),
                golden_row: Some("T1.row6".into()),
                route: "P2-certificate",
                negative: false,
                sampler: Sampler::CayleyForm,
                ambient_min_rep: None,
            }
            .build(),
        )));
    }

    // row 7: spin_7 ⊂ so_8 ⊂ so_9
    {
        let amb_t = LieType::b(4);
        let ambient = build_classical(amb_t).unwrap();
        let idx = drop_middle_indices(9);
        let sub_basis: Vec<RatMatrix> =
            spin.so8.basis.iter().map(|m| scatter(9, &idx, m)).collect();
        cases.push(EmbeddingCase::Matrix(Box::new(
            CaseBuilder {
                id: "T1.row7".into(),
                description: "spin_7 inside so_9 via the chain spin_7 ⊂ so_8 ⊂ so_9".into(),
                ambient,
                ambient_kind: AmbientKind::Classical(amb_t),
                sub_name: "spin7(so9)".into(),
                sub_basis,
                sub_kind: SubKind::Spin7Sub(spin.vector_rep.clone()),
                sub_rank: 3,
                involution: None,
                satake: None,
                orbit: min_orbit(amb_t),
                golden_row: Some("T1.row7".into()),
                route: "chain",
                negative: false,
                sampler: Sampler::CayleyForm,
                ambient_min_rep: None,
            }
            .build(),
        )));
    }

    // row 9: long-root sl3 ⊂ g2 (ambient is the g2 model itself)
    {
        cases.push(EmbeddingCase::Matrix(Box::new(
            CaseBuilder {
                id: "T1.row9".into(),
                description: "long-root sl3 inside g2".into(),
                ambient: g2.so7.clone(),
                ambient_kind: AmbientKind::G2,
                sub_name: "a2(g2)".into(),
                sub_basis: a2.a2.basis.clone(),
                sub_kind: SubKind::A2Sub,
                sub_rank: 2,
                involution: None,
                satake: None,
                orbit: OrbitId::exceptional(LieType::g2(), "A1"),
                golden_row: Some("T1.row9".into()),
                route: "P2-certificate",
                negative: false,
                sampler: Sampler::UnipotentSet(a2.root_vectors.clone()),
                ambient_min_rep: Some(a2.long_root_vector.clone()),
            }
            .build(),
        )));
    }

    // row 10: g2 ⊂ so_7 ⊂ so_8
    {
        let amb_t = LieType::d(4);
        let ambient = build_classical(amb_t).unwrap();
        let (t, t_inv, _r) = so_odd_in_even_maps(7);
        let sub_basis: Vec<RatMatrix> = g2
            .so7
            .basis
            .iter()
            .map(|m| embed_via_maps(&t, &t_inv, m))
            .collect();
        cases.push(EmbeddingCase::Matrix(Box::new(
            CaseBuilder {
                id: "T1.row10".into(),
                description: "g2 inside so_8 via the chain g2 ⊂ so_7 ⊂ so_8".into(),
                ambient,
                ambient_kind: AmbientKind::Classical(amb_t),
                sub_name: "g2(so8)".into(),
                sub_basis,
                sub_kind: SubKind::G2Sub,
                sub_rank: 2,
                involution: None,
                satake: None,
                orbit: min_orbit(amb_t),
                golden_row: Some("T1.row10".into()),
                route: "chain",
                negative: false,
                sampler: Sampler::CayleyForm,
                ambient_min_rep: None,
            }
            .build(),
        )));
    }

    for ni in &params.row11 {
        let k = ni.len();
        let n: usize = ni.iter().sum();
        let amb_t = LieType::c(n);
        let ambient = build_classical(amb_t).unwrap();
        let idx_sets = sp_factor_indices(ni);
        let mut sub_basis = Vec::new();
        let mut factors = Vec::new();
        for (f, idx) in ni.iter().zip(&idx_sets) {
            let t = LieType::c(*f);
            let local = build_classical(t).unwrap();
            for m in &local.basis {
                sub_basis.push(scatter(2 * n, idx, m));
            }
            factors.push((t, idx.clone()));
        }
        let involution = if k == 2 {
            let mut d = RatMatrix::identity(2 * n);
            for &i in &idx_sets[1] {
                d[(i, i)] = rat(-1);
            }
            Some(Involution::Conjugation(d))
        } else {
            None
        };
        let label = ni
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join("+");
        cases.push(EmbeddingCase::Matrix(Box::new(
            CaseBuilder {
                id: format!("T1.row11(n={label})"),
                description: format!("block-diagonal product of sp factors inside sp_{}", 2 * n),
                ambient,
                ambient_kind: AmbientKind::Classical(amb_t),
                sub_name: format!("spx{k}(sp{})", 2 * n),
                sub_basis,
                sub_kind: SubKind::SpProduct(factors),
                sub_rank: n,
                involution,
                satake: None,
                orbit: min_orbit(amb_t),
                golden_row: Some(format!("T1.row11(n={label})")),
                route: "P2-certificate",
                negative: false,
                sampler: Sampler::CayleyForm,
                ambient_min_rep: None,
            }
            .build(),
        )));
    }

    // second table: non-minimal good orbits of the orthogonal pairs
    for &(k, m) in &params.t2_km {
        let boxes = 4 * k + m;
        let mut parts = vec![2; 2 * k];
        parts.extend(std::iter::repeat(1).take(m));
        let amb_t = if boxes % 2 == 1 {
            LieType::b(boxes / 2)
        } else {
            LieType::d(boxes / 2)
        };
        let p = if amb_t.family == orbits::Family::D
            && Partition::new(parts.clone()).is_very_even_shape()
        {
            Partition::with_tag(parts, orbits::VeryEvenTag::I)
        } else {
            Partition::new(parts)
        };
        let orbit = OrbitId::Classical { t: amb_t, p };
        let mut case = build_so_pair(
            boxes,
            Some(orbit),
            format!("T2.i(k={k},m={m})"),
            Some(format!("T2.i(k={k},m={m})")),
            "satake",
        );
        case.description = format!("non-minimal good orbit for so_{} ⊃ so_{}", boxes, boxes - 1);
        cases.push(EmbeddingCase::Matrix(Box::new(case)));
    }

    // second table, row (ii): (3,1^4) for g2 ⊂ so_7
    {
        let amb_t = LieType::b(3);
        let ambient = build_classical(amb_t).unwrap();
        let orbit = OrbitId::Classical {
            t: amb_t,
            p: Partition::new(vec![3, 1, 1, 1, 1]),
        };
        cases.push(EmbeddingCase::Matrix(Box::new(
            CaseBuilder {
                id: "T2.ii".into(),
                description: "the non-minimal good orbit for g2 inside so_7".into(),
                ambient,
                ambient_kind: AmbientKind::Classical(amb_t),
                sub_name: "g2(so7)".into(),
                sub_basis: g2.so7.basis.clone(),
                sub_kind: SubKind::G2Sub,
                sub_rank: 2,
                involution: None,
                satake: None,
                orbit,
                golden_row: Some("T2.ii".into()),
                route: "data-only",
                negative: false,
                sampler: Sampler::CayleyForm,
                ambient_min_rep: None,
            }
            .build(),
        )));
    }

    // negative control: the standard so_7 ⊂ so_9 (vector plus two trivials)
    {
        let amb_t = LieType::b(4);
        let ambient = build_classical(amb_t).unwrap();
        let sub_model = build_classical(LieType::b(3)).unwrap();
        let idx: Vec<usize> = (1..8).collect();
        let sub_basis: Vec<RatMatrix> = sub_model
            .basis
            .iter()
            .map(|m| scatter(9, &idx, m))
            .collect();
        cases.push(EmbeddingCase::Matrix(Box::new(
            CaseBuilder {
                id: "NEG.so7-in-so9-standard".into(),
                description: "negative control: standard so_7 inside so_9 (no dense orbit)".into(),
                ambient,
                ambient_kind: AmbientKind::Classical(amb_t),
                sub_name: "so7std(so9)".into(),
                sub_basis,
                sub_kind: SubKind::SoStandard(LieType::b(3)),
                sub_rank: 3,
                involution: None,
                satake: None,
                orbit: min_orbit(amb_t),
                golden_row: None,
                route: "negative-control",
                negative: true,
                sampler: Sampler::CayleyForm,
                ambient_min_rep: None,
            }
            .build(),
        )));
    }

    cases
}

/// Find a case by id in a built registry.
pub fn find_case<'a>(
    cases: &'a [EmbeddingCase],
    id: &str,
) -> Result<&'a EmbeddingCase, EmbedError> {
    cases
        .iter()
        .find(|c| c.id() == id)
        .ok_or_else(|| EmbedError::UnknownCase(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_registry() -> Vec<EmbeddingCase> {
        registry(&RegistryParams {
            row3_n: vec![3],
            row4_n: vec![2, 3],
            row5_n: vec![2],
            row11: vec![vec![1, 1], vec![1, 1, 1]],
            t2_km: vec![(2, 0), (2, 1)],
        })
    }

    fn matrix_case<'a>(cases: &'a [EmbeddingCase], id: &str) -> &'a MatrixCase {
        match find_case(cases, id).unwrap() {
            EmbeddingCase::Matrix(c) => c,
            EmbeddingCase::Data(_) => panic!("{id} should be a matrix case"),
        }
    }

    #[test]
    fn complements_have_expected_dimensions() {
        let cases = default_registry();
        for (id, dim_m) in [
            ("T1.row3(n=3)", 6),
            ("T1.row4(n=3)", 7),
            ("T1.row4spin", 7),
            ("T1.row5(n=2)", 5),
            ("T1.row6", 7),
            ("T1.row7", 15),
            ("T1.row9", 6),
            ("T1.row10", 14),
            ("T1.row11(n=1+1)", 4),
            ("T1.row11(n=1+1+1)", 12),
        ] {
            let c = matrix_case(&cases, id);
            assert_eq!(c.complement.len(), dim_m, "dim m for {id}");
        }
    }

    #[test]
    fn sub_is_bracket_closed_and_normalizes_complement() {
        let cases = default_registry();
        for id in [
            "T1.row3(n=3)",
            "T1.row4(n=3)",
            "T1.row4spin",
            "T1.row5(n=2)",
            "T1.row6",
            "T1.row7",
            "T1.row9",
            "T1.row10",
            "T1.row11(n=1+1+1)",
        ] {
            let c = matrix_case(&cases, id);
            let m_span = SpanSolver::new(
                &c.complement
                    .iter()
                    .map(RatMatrix::flatten)
                    .collect::<Vec<_>>(),
            );
            // sample a spread of basis pairs rather than the full quadratic sweep
            let dh = c.sub.dim();
            let step = (dh / 5).max(1);
            for i in (0..dh).step_by(step) {
                for j in (0..dh).step_by(step) {
                    let br = c.sub.basis[i].commutator(&c.sub.basis[j]);
                    assert!(c.sub.contains(&br), "[h,h] ⊆ h fails in {id}");
                }
                for (j, m) in c.complement.iter().enumerate().step_by(2) {
                    let br = c.sub.basis[i].commutator(m);
                    assert!(
                        m_span.contains(&br.flatten()),
                        "[h,m] ⊆ m fails in {id} at ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn projection_is_exact_decomposition() {
        let cases = default_registry();
        let c = matrix_case(&cases, "T1.row6");
        // x in h projects to (x, 0); x in m to (0, x)
        let h0 = &c.sub.basis[3];
        let (a, b) = c.project(h0).unwrap();
        assert_eq!(&a, h0);
        assert!(b.is_zero());
        let m0 = &c.complement[2];
        let (a, b) = c.project(m0).unwrap();
        assert!(a.is_zero());
        assert_eq!(&b, m0);
        // generic ambient element decomposes exactly
        let x = c.ambient.basis[5].add(&c.ambient.basis[17]);
        let (a, b) = c.project(&x).unwrap();
        assert_eq!(a.add(&b), x);
    }

    #[test]
    fn involutions_fix_h_and_negate_m() {
        let cases = default_registry();
        for id in [
            "T1.row3(n=3)",
            "T1.row4(n=3)",
            "T1.row5(n=2)",
            "T1.row11(n=1+1)",
        ] {
            let c = matrix_case(&cases, id);
            let sigma = c.involution.as_ref().expect("symmetric pair");
            for h in c.sub.basis.iter().step_by(3) {
                assert_eq!(sigma.apply(h), h.clone(), "σ|_h = id fails in {id}");
            }
            for m in c.complement.iter().step_by(2) {
                assert_eq!(sigma.apply(m), m.neg(), "σ|_m = −id fails in {id}");
            }
            // σ is an automorphism on a sample pair
            let x = &c.ambient.basis[1];
            let y = &c.ambient.basis[4];
            assert_eq!(
                sigma.apply(&x.commutator(y)),
                sigma.apply(x).commutator(&sigma.apply(y))
            );
        }
    }

    #[test]
    fn satake_criterion_on_so8() {
        let cases = default_registry();
        // standard so_7 ⊂ so_8 is the (2,0) instance of the second table
        let standard = matrix_case(&cases, "T2.i(k=2,m=0)");
        let d4 = LieType::d(4);
        let meets = |c: &MatrixCase, p: Partition| {
            satake_meets_criterion(c, &OrbitId::Classical { t: d4, p }).unwrap()
        };
        assert!(meets(standard, Partition::new(vec![3, 1, 1, 1, 1, 1])));
        assert!(!meets(
            standard,
            Partition::with_tag(vec![2; 4], orbits::VeryEvenTag::I)
        ));
        assert!(!meets(
            standard,
            Partition::with_tag(vec![2; 4], orbits::VeryEvenTag::II)
        ));
        // the spin embedding flips which covers of the minimal orbit meet m
        let spin = matrix_case(&cases, "T1.row4spin");
        assert!(!meets(spin, Partition::new(vec![3, 1, 1, 1, 1, 1])));
        assert!(meets(
            spin,
            Partition::with_tag(vec![2; 4], orbits::VeryEvenTag::I)
        ));
        assert!(!meets(
            spin,
            Partition::with_tag(vec![2; 4], orbits::VeryEvenTag::II)
        ));
        let none = matrix_case(&cases, "T1.row6");
        assert!(matches!(
            satake_meets_criterion(none, &min_orbit(LieType::b(3))),
            Err(EmbedError::NoSatakeData)
        ));
    }

    #[test]
    fn row7_complement_splits_under_spin7() {
        // m decomposes as the 8-dim spin module (complement of so_8 in
        // so_9) plus the 7-dim vector module (complement of g... of spin_7
        // in so_8, pushed forward); both pieces are h-invariant
        let cases = default_registry();
        let c = matrix_case(&cases, "T1.row7");
        assert_eq!(c.complement.len(), 15);
        assert_eq!(c.sub.dim(), 21);
        assert_eq!(c.ambient.dim(), 36);

        let spin = crate::models::build_spin7_in_so8();
        let so8_model = crate::models::build_classical(LieType::d(4)).unwrap();
        let idx: Vec<usize> = (0..9).filter(|&i| i != 4).collect();
        let so8_embedded: Vec<RatMatrix> = so8_model
            .basis
            .iter()
            .map(|m| scatter(9, &idx, m))
            .collect();
        // spin piece: trace-orthogonal of so_8 inside so_9
        let pairing = RatMatrix::from_fn(so8_embedded.len(), c.ambient.dim(), |i, j| {
            so8_embedded[i].trace_mul(&c.ambient.basis[j])
        });
        let m1: Vec<RatMatrix> = pairing
            .kernel_basis()
            .into_iter()
            .map(|coords| {
                let mut m = c.ambient.zero_matrix();
                for (cf, b) in coords.iter().zip(&c.ambient.basis) {
                    if !cf.is_zero() {
                        m = m.add(&b.scale(cf));
                    }
                }
                m
            })
            .collect();
        assert_eq!(m1.len(), 8);
        // vector piece: complement of spin_7 inside so_8, pushed into so_9
        let pairing8 = RatMatrix::from_fn(spin.so8.dim(), so8_model.dim(), |i, j| {
            spin.so8.basis[i].trace_mul(&so8_model.basis[j])
        });
        let m2: Vec<RatMatrix> = pairing8
            .kernel_basis()
            .into_iter()
            .map(|coords| {
                let mut m = RatMatrix::zero(8, 8);
                for (cf, b) in coords.iter().zip(&so8_model.basis) {
                    if !cf.is_zero() {
                        m = m.add(&b.scale(cf));
                    }
                }
                scatter(9, &idx, &m)
            })
            .collect();
        assert_eq!(m2.len(), 7);
        // both pieces sit inside m and are h-invariant
        let m_span = SpanSolver::new(
            &c.complement
                .iter()
                .map(RatMatrix::flatten)
                .collect::<Vec<_>>(),
        );
        let m1_span = SpanSolver::new(&m1.iter().map(RatMatrix::flatten).collect::<Vec<_>>());
        let m2_span = SpanSolver::new(&m2.iter().map(RatMatrix::flatten).collect::<Vec<_>>());
        for (piece, span) in [(&m1, &m1_span), (&m2, &m2_span)] {
            for v in piece.iter() {
                assert!(m_span.contains(&v.flatten()));
            }
            for h in c.sub.basis.iter().step_by(4) {
                for v in piece.iter().step_by(3) {
                    assert!(span.contains(&h.commutator(v).flatten()));
                }
            }
        }
    }
}

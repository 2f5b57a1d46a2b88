//! The verification engine: certifies dense-orbit property for registered
//! pairs, audits every identity the classification asserts, and regenerates
//! the golden tables cell by cell.
//!
//! All certificates are exact. A returned witness is a proof (its defining
//! rank condition can be rechecked independently); absence of a witness
//! after sampling is only evidence, and is reported as such — except for the
//! registered negative controls, where "no certificate" is the expectation.

use crate::data::{self, GoldenRow, RowTier};
use crate::embeddings::{AmbientKind, DataCase, EmbeddingCase, HOrbit, MatrixCase, Sampler};
use crate::models::{sl2_characteristic, standard_nilpotent, MatrixLieAlgebra};
use crate::orbits::{self, Isogeny, LieType, OrbitId, Partition};
use crate::rng::SplitMix64;
use crate::{rat, ratio, RatMatrix};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("no standard representative available for {0}")]
    RepresentativeUnavailable(String),
    #[error(transparent)]
    Embed(#[from] crate::embeddings::EmbedError),
    #[error(transparent)]
    Model(#[from] crate::models::ModelError),
    #[error(transparent)]
    Orbit(#[from] crate::orbits::OrbitError),
}

/// Reproducibility knobs. The default seed is fixed so that reports are
/// byte-identical across runs.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub seed: u64,
    pub samples: usize,
    /// Half-width of the integer grid for the commutative-plane census.
    pub grid: i64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            seed: 1729,
            samples: 32,
            grid: 3,
        }
    }
}

/// Random small-coefficient element of a form-skew algebra, used as Cayley
/// input for genericity sampling. Sparse on purpose: a handful of nonzero
/// coefficients keeps the conjugated representatives small enough for the
/// exact eliminations downstream, and two Cayley factors restore genericity.
pub fn random_form_skew(alg: &MatrixLieAlgebra, rng: &mut SplitMix64) -> RatMatrix {
    let mut s = alg.zero_matrix();
    let picks = 6.min(alg.dim());
    for _ in 0..picks {
        let i = rng.below(alg.dim() as u64) as usize;
        let c = ratio(rng.int_in(-2, 2), rng.int_in(1, 3));
        s = s.add(&alg.basis[i].scale(&c));
    }
    s
}

/// Exact exponential of a nilpotent matrix.
fn exp_nilpotent(x: &RatMatrix) -> RatMatrix {
    let n = x.rows();
    let mut acc = RatMatrix::identity(n);
    let mut term = RatMatrix::identity(n);
    let mut k = 1i64;
    loop {
        term = term.mul(x).scale(&ratio(1, k));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
        k += 1;
        assert!(k as usize <= n + 1, "input not nilpotent");
    }
    acc
}

/// Draw a group element appropriate for the case's ambient algebra.
fn random_conjugator(case: &MatrixCase, rng: &mut SplitMix64) -> RatMatrix {
    match &case.sampler {
        Sampler::CayleyForm => {
            let form = case.ambient.form.clone().expect("form-preserving sampler");
            let one_factor = |rng: &mut SplitMix64| loop {
                let s = random_form_skew(&case.ambient, rng);
                if let Ok(g) = RatMatrix::cayley_orthogonal(&s, &form) {
                    return g;
                }
            };
            one_factor(rng).mul(&one_factor(rng))
        }
        Sampler::Elementary => {
            let n = case.ambient.ambient_dim;
            let mut g = RatMatrix::identity(n);
            for _ in 0..2 * n {
                let i = rng.below(n as u64) as usize;
                let mut j = rng.below(n as u64) as usize;
                if i == j {
                    j = (j + 1) % n;
                }
                let mut el = RatMatrix::identity(n);
                el[(i, j)] = ratio(rng.int_in(-2, 2), rng.int_in(1, 3));
                g = g.mul(&el);
            }
            g
        }
        Sampler::UnipotentSet(gens) => {
            let mut g = RatMatrix::identity(case.ambient.ambient_dim);
            for _ in 0..6 {
                let pick = rng.below(gens.len() as u64) as usize;
                let t = ratio(rng.int_in(-2, 2), rng.int_in(1, 2));
                g = g.mul(&exp_nilpotent(&gens[pick].scale(&t)));
            }
            g
        }
    }
}

/// A certified element of the dense H-orbit, with its exact projections.
#[derive(Debug, Clone)]
pub struct Witness {
    pub element: RatMatrix,
    pub a: RatMatrix,
    pub b: RatMatrix,
    pub achieved_dim: usize,
    pub sample_index: usize,
}

/// Standard representative of the case's ambient orbit.
fn ambient_representative(case: &MatrixCase, orbit: &OrbitId) -> Result<RatMatrix, EngineError> {
    match (&case.ambient_kind, orbit) {
        (AmbientKind::Classical(t), OrbitId::Classical { p, .. }) => Ok(standard_nilpotent(*t, p)?),
        (AmbientKind::G2, OrbitId::Exceptional { label, .. }) if label == "A1" => case
            .ambient_min_rep
            .clone()
            .ok_or_else(|| EngineError::RepresentativeUnavailable(case.id.clone())),
        _ => Err(EngineError::RepresentativeUnavailable(format!(
            "{} orbit {orbit}",
            case.id
        ))),
    }
}

/// Necessary condition for a dense orbit: dim O ≤ dim h − rk h.
pub fn p2_dimension_filter(case: &MatrixCase, orbit: &OrbitId) -> bool {
    orbit_dim_any(orbit) <= case.sub.dim() - case.sub_rank
}

/// Search for a witness of the dense H-orbit in the given ambient orbit by
/// conjugating the standard representative with exact random group elements.
/// A returned witness is a proof; `None` after `samples` tries is not.
pub fn certify_p2(
    case: &MatrixCase,
    orbit: &OrbitId,
    config: &EngineConfig,
) -> Result<Option<Witness>, EngineError> {
    let e0 = ambient_representative(case, orbit)?;
    let target = orbit_dim_any(orbit);
    let mut rng = SplitMix64::new(config.seed ^ fxhash(&case.id));
    for sample_index in 0..config.samples {
        let g = random_conjugator(case, &mut rng);
        let g_inv = g.inverse().expect("group element invertible");
        let e = g.mul(&e0).mul(&g_inv);
        let achieved = MatrixLieAlgebra::bracket_image_dim(&case.sub.basis, &e);
        if achieved == target {
            let (a, b) = case.project(&e)?;
            return Ok(Some(Witness {
                element: e,
                a,
                b,
                achieved_dim: achieved,
                sample_index,
            }));
        }
    }
    Ok(None)
}

fn fxhash(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100000001b3)
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

/// The five exact identities every certified witness must satisfy.
pub fn verify_projection_identities(
    case: &MatrixCase,
    w: &Witness,
) -> Result<Vec<CheckResult>, EngineError> {
    let mut out = Vec::new();
    let commute = w.a.commutator(&w.b).is_zero();
    out.push(check("c1-commuting-projections", commute, "[a,b] = 0"));

    // z_h(a) ⊆ z_h(b) as kernels
    let ad_a = MatrixLieAlgebra::ad_map_from(&case.sub.basis, &w.a);
    let mut containment = true;
    for kv in ad_a.kernel_basis() {
        let mut y = case.ambient.zero_matrix();
        for (c, m) in kv.iter().zip(&case.sub.basis) {
            if !c.is_zero() {
                y = y.add(&m.scale(c));
            }
        }
        if !y.commutator(&w.b).is_zero() {
            containment = false;
            break;
        }
    }
    out.push(check(
        "c2-centralizer-containment",
        containment,
        "z_h(a) ⊆ z_h(b)",
    ));

    let nilp = w.a.is_nilpotent() && w.b.is_nilpotent();
    out.push(check("c3-projections-nilpotent", nilp, "a, b nilpotent"));

    // characteristic of a inside h acts on b with eigenvalue 2
    let c4 = if w.a.is_zero() {
        w.b.is_zero()
    } else {
        let h_a = sl2_characteristic(&case.sub, &w.a)?;
        h_a.commutator(&w.b) == w.b.scale(&rat(2))
    };
    out.push(check("c4-characteristic-acts-by-two", c4, "[h_a, b] = 2b"));

    // b lies in the closure of G·a
    let c5 = match case.ambient_kind {
        AmbientKind::Classical(_) => {
            let ja = Partition::new(
                w.a.jordan_type_nilpotent()
                    .map_err(|_| crate::models::ModelError::NotNilpotent)?
                    .parts()
                    .to_vec(),
            );
            let jb = Partition::new(
                w.b.jordan_type_nilpotent()
                    .map_err(|_| crate::models::ModelError::NotNilpotent)?
                    .parts()
                    .to_vec(),
            );
            jb.dominates_leq(&ja)
        }
        AmbientKind::G2 => {
            let da = case.ambient.centralizer_dim(&w.a);
            let db = case.ambient.centralizer_dim(&w.b);
            db >= da // smaller orbit has bigger centralizer; G2 poset is a chain
        }
    };
    out.push(check(
        "c5-jordan-dominance",
        c5,
        "type of b ≤ type of a in the closure order",
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// orbit invariants across classical and exceptional labels

pub fn orbit_dim_any(o: &OrbitId) -> usize {
    match o {
        OrbitId::Classical { t, p } => orbits::orbit_dimension(*t, p).expect("valid orbit"),
        OrbitId::Exceptional { t, label } => {
            data::lookup_exceptional(*t, label)
                .expect("known label")
                .dim
        }
    }
}

pub fn orbit_height_any(o: &OrbitId) -> usize {
    match o {
        OrbitId::Classical { t, p } => orbits::orbit_height(*t, p).expect("nonzero orbit"),
        OrbitId::Exceptional { t, label } => {
            data::lookup_exceptional(*t, label)
                .expect("known label")
                .height
        }
    }
}

/// Fundamental group order in the simply connected form, when available.
pub fn orbit_pi1_sc(o: &OrbitId) -> Option<usize> {
    match o {
        OrbitId::Classical { t, p } => {
            orbits::fundamental_group_order(*t, p, Isogeny::SimplyConnected).ok()
        }
        OrbitId::Exceptional { t, label } => data::lookup_exceptional(*t, label)
            .ok()
            .and_then(|r| r.pi1_order),
    }
}

/// Fundamental group order in the "special" form (SO/Sp), when it differs.
pub fn orbit_pi1_special(o: &OrbitId) -> Option<usize> {
    match o {
        OrbitId::Classical { t, p } => {
            orbits::fundamental_group_order(*t, p, Isogeny::Special).ok()
        }
        OrbitId::Exceptional { .. } => None,
    }
}

fn h_orbit_pi1_sc(ho: &HOrbit) -> Option<usize> {
    match ho {
        HOrbit::Single(o) => orbit_pi1_sc(o),
        HOrbit::Product(v) => v.iter().map(orbit_pi1_sc).product(),
    }
}

fn h_orbit_pi1_special(ho: &HOrbit) -> Option<usize> {
    match ho {
        HOrbit::Single(o) => orbit_pi1_special(o),
        HOrbit::Product(v) => v.iter().map(orbit_pi1_special).product(),
    }
}

fn h_orbit_height(ho: &HOrbit) -> usize {
    match ho {
        HOrbit::Single(o) => orbit_height_any(o),
        HOrbit::Product(v) => v.iter().map(orbit_height_any).max().unwrap_or(0),
    }
}

fn h_orbit_dim(ho: &HOrbit) -> usize {
    match ho {
        HOrbit::Single(o) => orbit_dim_any(o),
        HOrbit::Product(v) => v.iter().map(orbit_dim_any).sum(),
    }
}

fn orbit_cell(o: &OrbitId) -> String {
    match o {
        OrbitId::Classical { p, .. } => p.to_string(),
        OrbitId::Exceptional { label, .. } => label.clone(),
    }
}

/// The ambient orbit generated by the h-projection of a witness.
pub fn compute_tilde_o(case: &MatrixCase, w: &Witness) -> Result<OrbitId, EngineError> {
    case.identify_ambient_orbit(&w.a).map_err(Into::into)
}

/// Degree of the finite projection as the ratio of fundamental group orders
/// (simply connected form); `None` when the ratio is not defined or not an
/// integer — that signals a wrong isogeny choice and is reported, not fixed.
pub fn compute_deg_phi(orbit: &OrbitId, phi: &HOrbit) -> Option<usize> {
    let num = h_orbit_pi1_sc(phi)?;
    let den = orbit_pi1_sc(orbit)?;
    if den == 0 || num % den != 0 {
        return None;
    }
    Some(num / den)
}

/// The height identity: the height of φ(Ω) inside h equals the height of its
/// ambient saturation.
pub fn verify_height_identity(phi: &HOrbit, tilde: &OrbitId) -> (usize, usize, bool) {
    let hh = h_orbit_height(phi);
    let hg = orbit_height_any(tilde);
    (hh, hg, hh == hg)
}

/// Every good orbit has height 2.
pub fn verify_good_orbit_height(orbit: &OrbitId) -> bool {
    orbit_height_any(orbit) == 2
}

/// Do the two projections of the witness generate the same ambient orbit?
pub fn verify_ga_equals_gb(case: &MatrixCase, w: &Witness) -> Result<bool, EngineError> {
    let ga = case.identify_ambient_orbit(&w.a)?;
    let gb = case.identify_ambient_orbit(&w.b)?;
    Ok(ga == gb)
}

fn is_minimal(case: &MatrixCase, orbit: &OrbitId) -> bool {
    match (&case.ambient_kind, orbit) {
        (AmbientKind::Classical(t), OrbitId::Classical { p, .. }) => {
            p.untagged() == orbits::minimal_orbit_partition(*t).unwrap()
        }
        (AmbientKind::G2, OrbitId::Exceptional { label, .. }) => label == "A1",
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// reports

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct P2Certificate {
    pub sample_index: usize,
    pub achieved_dim: usize,
    pub samples_tried: usize,
    /// The witness matrix itself, rows of exact rationals, so the
    /// certificate can be rechecked outside this process.
    pub witness_element: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Pi1Detail {
    pub orbit_simply_connected: Option<usize>,
    pub orbit_special: Option<usize>,
    pub phi_simply_connected: Option<usize>,
    pub phi_special: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub case_id: String,
    pub orbit: String,
    pub route: String,
    pub tier: String,
    pub negative_control: bool,
    pub p2_certificate: Option<P2Certificate>,
    pub phi_orbit: Option<String>,
    pub psi_saturation: Option<String>,
    pub tilde_o: Option<String>,
    pub dim_tilde_o: Option<usize>,
    pub deg_phi: Option<usize>,
    pub pi1: Option<Pi1Detail>,
    /// (height of φ(Ω) in h, height of the saturation in g)
    pub heights: Option<[usize; 2]>,
    pub checks: Vec<CheckResult>,
    pub golden_row: Option<String>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn finish(mut report: VerificationReport) -> VerificationReport {
    report.pass = report.checks.iter().all(|c| c.pass);
    report
}

/// Verify a matrix-level case against its golden row.
pub fn verify_matrix_case(
    case: &MatrixCase,
    orbit_override: Option<OrbitId>,
    golden: &[GoldenRow],
    config: &EngineConfig,
) -> Result<VerificationReport, EngineError> {
    let orbit = orbit_override.unwrap_or_else(|| case.orbit.clone());
    // golden cells describe the case's default orbit only
    let golden_row = if orbit == case.orbit {
        case.golden_row
            .as_ref()
            .and_then(|id| golden.iter().find(|r| &r.row_id == id))
    } else {
        None
    };
    let mut report = VerificationReport {
        case_id: case.id.clone(),
        orbit: orbit_cell(&orbit),
        route: case.route.to_string(),
        tier: "matrix".into(),
        negative_control: case.negative,
        p2_certificate: None,
        phi_orbit: None,
        psi_saturation: None,
        tilde_o: None,
        dim_tilde_o: None,
        deg_phi: None,
        pi1: None,
        heights: None,
        checks: Vec::new(),
        golden_row: case.golden_row.clone(),
        pass: false,
    };

    let dim_o = orbit_dim_any(&orbit);
    let filter = p2_dimension_filter(case, &orbit);
    report.checks.push(check(
        "p2-dimension-filter",
        filter,
        format!(
            "dim O = {dim_o} ≤ dim h − rk h = {}",
            case.sub.dim() - case.sub_rank
        ),
    ));

    let witness = certify_p2(case, &orbit, config)?;
    if case.negative {
        report.checks.push(check(
            "no-p2-certificate",
            witness.is_none(),
            format!(
                "negative control: no witness expected after {} samples",
                config.samples
            ),
        ));
        return Ok(finish(report));
    }
    let Some(w) = witness else {
        report.checks.push(check(
            "p2-certificate",
            false,
            format!("no witness found after {} samples", config.samples),
        ));
        return Ok(finish(report));
    };
    // soundness recheck, independent of the sampling loop
    let recheck = MatrixLieAlgebra::bracket_image_dim(&case.sub.basis, &w.element);
    report.checks.push(check(
        "p2-certificate",
        recheck == dim_o,
        format!(
            "witness at sample {} with dim [h, e] = {recheck} = dim O",
            w.sample_index
        ),
    ));
    report.p2_certificate = Some(P2Certificate {
        sample_index: w.sample_index,
        achieved_dim: w.achieved_dim,
        samples_tried: config.samples,
        witness_element: (0..w.element.rows())
            .map(|r| w.element.row(r).iter().map(|x| x.to_string()).collect())
            .collect(),
    });

    report
        .checks
        .extend(verify_projection_identities(case, &w)?);

    // φ(Ω) and its dimension
    let phi = case.identify_sub_orbit(&w.a)?;
    report.phi_orbit = Some(phi.to_string());
    let z_h_a = case.sub.dim() - MatrixLieAlgebra::bracket_image_dim(&case.sub.basis, &w.a);
    report.checks.push(check(
        "dim-phi-orbit",
        case.sub.dim() - z_h_a == dim_o && h_orbit_dim(&phi) == dim_o,
        format!("dim φ(Ω) = {} = dim O", case.sub.dim() - z_h_a),
    ));
    if let Some(g) = golden_row {
        report.checks.push(check(
            "phi-orbit-matches-golden",
            phi.to_string() == g.phi_orbit,
            format!("computed {} vs golden {}", phi, g.phi_orbit),
        ));
    }

    // saturations
    let tilde = compute_tilde_o(case, &w)?;
    let dim_tilde = orbit_dim_any(&tilde);
    report.tilde_o = Some(orbit_cell(&tilde));
    report.dim_tilde_o = Some(dim_tilde);
    let psi_sat = case.identify_ambient_orbit(&w.b)?;
    report.psi_saturation = Some(orbit_cell(&psi_sat));
    if let Some(g) = golden_row {
        report.checks.push(check(
            "tilde-o-matches-golden",
            orbit_cell(&tilde) == g.tilde_o && dim_tilde == g.dim_tilde_o,
            format!(
                "computed {} (dim {dim_tilde}) vs golden {} (dim {})",
                orbit_cell(&tilde),
                g.tilde_o,
                g.dim_tilde_o
            ),
        ));
        report.checks.push(check(
            "dim-orbit-matches-golden",
            dim_o == g.dim_orbit,
            format!("dim O = {dim_o} vs golden {}", g.dim_orbit),
        ));
        report.checks.push(check(
            "dim-m-matches-golden",
            case.complement.len() == g.dim_m,
            format!("dim m = {} vs golden {}", case.complement.len(), g.dim_m),
        ));
    }

    // saturations of the two projections agree exactly for minimal orbits
    let minimal = is_minimal(case, &orbit);
    let equal_saturations = verify_ga_equals_gb(case, &w)?;
    report.checks.push(check(
        "ga-equals-gb",
        equal_saturations == minimal,
        format!(
            "G·a = {} vs G·b = {} ({})",
            orbit_cell(&tilde),
            orbit_cell(&psi_sat),
            if minimal {
                "must coincide for the minimal orbit"
            } else {
                "must differ for a non-minimal good orbit"
            }
        ),
    ));

    // degree of the projection as a ratio of fundamental group orders
    let pi_o_sc = orbit_pi1_sc(&orbit);
    let pi_phi_sc = h_orbit_pi1_sc(&phi);
    report.pi1 = Some(Pi1Detail {
        orbit_simply_connected: pi_o_sc,
        orbit_special: orbit_pi1_special(&orbit),
        phi_simply_connected: pi_phi_sc,
        phi_special: h_orbit_pi1_special(&phi),
    });
    match compute_deg_phi(&orbit, &phi) {
        Some(deg) => {
            report.deg_phi = Some(deg);
            let mut ok = true;
            let mut detail = format!("deg φ = {:?}/{:?} = {deg}", pi_phi_sc, pi_o_sc);
            if let Some(g) = golden_row {
                ok = deg == g.deg_phi;
                detail.push_str(&format!(" vs golden {}", g.deg_phi));
            }
            report.checks.push(check("deg-phi", ok, detail));
        }
        None => {
            report.checks.push(check(
                "deg-phi",
                false,
                format!(
                    "non-integer or unavailable ratio {pi_phi_sc:?}/{pi_o_sc:?}; both isogeny forms recorded"
                ),
            ));
        }
    }

    // height identity and goodness height
    let (h_height, g_height, heights_agree) = verify_height_identity(&phi, &tilde);
    report.heights = Some([h_height, g_height]);
    report.checks.push(check(
        "height-identity",
        heights_agree,
        format!("hot_H(φ(Ω)) = {h_height}, hot_G(G·φ(Ω)) = {g_height}"),
    ));
    report.checks.push(check(
        "good-orbit-height-2",
        verify_good_orbit_height(&orbit),
        format!("hot(O) = {}", orbit_height_any(&orbit)),
    ));

    Ok(finish(report))
}

/// Verify a data-only row: dimension bookkeeping, degree integrality and the
/// height identity, all at the level of stored invariants.
pub fn verify_data_case(case: &DataCase, golden: &[GoldenRow]) -> VerificationReport {
    let g = golden
        .iter()
        .find(|r| r.row_id == case.golden_row)
        .expect("stub rows have golden rows");
    let mut checks = Vec::new();
    let dim_g = case.ambient.algebra_dim();
    let dim_h = case.sub.algebra_dim();
    checks.push(check(
        "dim-m-bookkeeping",
        dim_g - dim_h == g.dim_m,
        format!(
            "dim g − dim h = {dim_g} − {dim_h} = {} vs golden {}",
            dim_g - dim_h,
            g.dim_m
        ),
    ));
    // the minimal orbit dimension of the ambient, from the data tables
    let omin = data::lookup_exceptional(case.ambient, "A1").expect("minimal orbit record");
    checks.push(check(
        "dim-omin-data",
        omin.dim == g.dim_orbit,
        format!("dim Omin = {} vs golden {}", omin.dim, g.dim_orbit),
    ));
    // φ(Ω) has the same dimension as the orbit (projections preserve it)
    let phi_id = data::orbit_id_of_cell(case.sub, &g.phi_orbit);
    let phi_dim = phi_id.as_ref().map(orbit_dim_any);
    checks.push(check(
        "dim-phi-orbit",
        phi_dim == Some(g.dim_orbit),
        format!("dim φ(Ω) = {phi_dim:?} vs dim O = {}", g.dim_orbit),
    ));
    let tilde_id = data::orbit_id_of_cell(case.ambient, &g.tilde_o);
    let tilde_dim = tilde_id.as_ref().map(orbit_dim_any);
    checks.push(check(
        "dim-tilde-o",
        tilde_dim == Some(g.dim_tilde_o),
        format!("dim Õ = {tilde_dim:?} vs golden {}", g.dim_tilde_o),
    ));
    // degree integrality against stored fundamental groups
    let pi_phi = phi_id.as_ref().and_then(orbit_pi1_sc);
    let pi_o = orbit_pi1_sc(&OrbitId::exceptional(case.ambient, "A1"));
    let deg_detail = format!(
        "π1(φ(Ω)) = {pi_phi:?}, π1(O) = {pi_o:?}, golden deg {}",
        g.deg_phi
    );
    let deg_ok = match (pi_phi, pi_o) {
        (Some(a), Some(b)) => b > 0 && a % b == 0 && a / b == g.deg_phi,
        _ => false,
    };
    checks.push(check("deg-integrality", deg_ok, deg_detail));
    // height identity from stored heights
    let hh = phi_id.as_ref().map(orbit_height_any);
    let hg = tilde_id.as_ref().map(orbit_height_any);
    checks.push(check(
        "height-identity-data",
        hh.is_some() && hh == hg,
        format!("hot_H(φ(Ω)) = {hh:?}, hot_G(Õ) = {hg:?}"),
    ));
    finish(VerificationReport {
        case_id: case.id.clone(),
        orbit: "Omin".into(),
        route: "data-only".into(),
        tier: "data".into(),
        negative_control: false,
        p2_certificate: None,
        phi_orbit: Some(g.phi_orbit.clone()),
        psi_saturation: None,
        tilde_o: Some(g.tilde_o.clone()),
        dim_tilde_o: Some(g.dim_tilde_o),
        deg_phi: Some(g.deg_phi),
        pi1: Some(Pi1Detail {
            orbit_simply_connected: pi_o,
            orbit_special: None,
            phi_simply_connected: pi_phi,
            phi_special: None,
        }),
        heights: match (hh, hg) {
            (Some(a), Some(b)) => Some([a, b]),
            _ => None,
        },
        checks,
        golden_row: Some(case.golden_row.clone()),
        pass: false,
    })
}

/// Verify any registered case.
pub fn verify_case(
    case: &EmbeddingCase,
    orbit_override: Option<OrbitId>,
    golden: &[GoldenRow],
    config: &EngineConfig,
) -> Result<VerificationReport, EngineError> {
    match case {
        EmbeddingCase::Matrix(c) => verify_matrix_case(c, orbit_override, golden, config),
        EmbeddingCase::Data(c) => Ok(verify_data_case(c, golden)),
    }
}

// ---------------------------------------------------------------------------
// good-orbit enumeration by the Satake criterion

/// All good orbits of the pair per the Satake route: an orbit is good iff no
/// nonzero orbit in its closure meets m.
pub fn good_orbits_by_satake(case: &MatrixCase) -> Result<Vec<OrbitId>, EngineError> {
    let AmbientKind::Classical(t) = case.ambient_kind else {
        return Err(EngineError::RepresentativeUnavailable(case.id.clone()));
    };
    let orbits_all = orbits::enumerate_orbits(t)?;
    let meets: Vec<bool> = orbits_all
        .iter()
        .map(|o| crate::embeddings::satake_meets_criterion(case, o))
        .collect::<Result<_, _>>()?;
    let mut good = Vec::new();
    for o in &orbits_all {
        let p = o.partition().unwrap();
        if p.is_zero_orbit() {
            continue;
        }
        let mut ok = true;
        for (o2, m2) in orbits_all.iter().zip(&meets) {
            let p2 = o2.partition().unwrap();
            if p2.is_zero_orbit() || !*m2 {
                continue;
            }
            if orbits::closure_leq(t, p2, p)? {
                ok = false;
                break;
            }
        }
        if ok {
            good.push(o.clone());
        }
    }
    Ok(good)
}

// ---------------------------------------------------------------------------
// commutative planes

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PlanePoint {
    pub c1: i64,
    pub c2: i64,
    pub orbit: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PlaneCensus {
    pub case_id: String,
    pub points: Vec<PlanePoint>,
    /// Distinct orbits met on the grid, zero orbit excluded.
    pub distinct: Vec<String>,
    /// For symmetric pairs: did (ad x)³ vanish at every sample?
    pub ad_cube_vanishes: Option<bool>,
}

/// Evaluate the ambient orbit of c1·a + c2·b over the rational grid.
pub fn plane_census(
    case: &MatrixCase,
    w: &Witness,
    config: &EngineConfig,
) -> Result<PlaneCensus, EngineError> {
    assert!(w.a.commutator(&w.b).is_zero(), "not a commutative plane");
    let mut points = Vec::new();
    let mut distinct = BTreeSet::new();
    let mut ad_cube = case.involution.as_ref().map(|_| true);
    let r = config.grid;
    for c1 in -r..=r {
        for c2 in -r..=r {
            if c1 == 0 && c2 == 0 {
                continue;
            }
            let x = w.a.scale(&rat(c1)).add(&w.b.scale(&rat(c2)));
            let orbit = if x.is_zero() {
                "0".to_string()
            } else {
                orbit_cell(&case.identify_ambient_orbit(&x)?)
            };
            if !x.is_zero() {
                distinct.insert(orbit.clone());
            }
            if let Some(flag) = ad_cube.as_mut() {
                if *flag {
                    // (ad x)^3 = 0 on the whole ambient algebra
                    *flag = case
                        .ambient
                        .basis
                        .iter()
                        .all(|g| x.commutator(&x.commutator(&x.commutator(g))).is_zero());
                }
            }
            points.push(PlanePoint { c1, c2, orbit });
        }
    }
    Ok(PlaneCensus {
        case_id: case.id.clone(),
        points,
        distinct: distinct.into_iter().collect(),
        ad_cube_vanishes: ad_cube,
    })
}

// ---------------------------------------------------------------------------
// triples of nested pairs

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TripleReport {
    pub name: String,
    pub kind: String,
    pub lhs: String,
    pub rhs: String,
    pub expected: String,
    pub pass: bool,
}

fn phi_orbit_of(
    cases: &[EmbeddingCase],
    id: &str,
    orbit_override: Option<OrbitId>,
    config: &EngineConfig,
) -> Result<(HOrbit, Witness, &'static str), EngineError> {
    let case = crate::embeddings::find_case(cases, id)?;
    let EmbeddingCase::Matrix(case) = case else {
        return Err(EngineError::RepresentativeUnavailable(id.to_string()));
    };
    let orbit = orbit_override.unwrap_or_else(|| case.orbit.clone());
    let w = certify_p2(case, &orbit, config)?
        .ok_or_else(|| EngineError::RepresentativeUnavailable(format!("{id}: no witness")))?;
    let phi = case.identify_sub_orbit(&w.a)?;
    Ok((phi, w, ""))
}

fn tilde_of(
    cases: &[EmbeddingCase],
    id: &str,
    config: &EngineConfig,
) -> Result<OrbitId, EngineError> {
    let case = crate::embeddings::find_case(cases, id)?;
    let EmbeddingCase::Matrix(case) = case else {
        return Err(EngineError::RepresentativeUnavailable(id.to_string()));
    };
    let w = certify_p2(case, &case.orbit, config)?
        .ok_or_else(|| EngineError::RepresentativeUnavailable(format!("{id}: no witness")))?;
    case.identify_ambient_orbit(&w.a).map_err(Into::into)
}

/// The nested-pair coincidences: for chains g ⊃ h1 ⊃ h2 of registered pairs,
/// the H1-orbit φ1(Ω(Omin(g))) equals the H1-saturation of φ2(Ω(Omin(h1)));
/// and the second-kind chain projects the minimal orbit twice.
pub fn verify_triples(
    cases: &[EmbeddingCase],
    config: &EngineConfig,
) -> Result<Vec<TripleReport>, EngineError> {
    let mut out = Vec::new();

    // first kind: (outer case, inner case, expected common H1-orbit)
    let first_kind = [
        (
            "D4 ⊃ B3 ⊃ D3",
            "T1.row4(n=3)",
            "T1.row3(n=3)",
            Partition::new(vec![3, 1, 1, 1, 1]).to_string(),
        ),
        (
            "B3 ⊃ D3 ⊃ B2",
            "T1.row3(n=3)",
            "T1.row4(n=2)",
            Partition::new(vec![3, 1, 1, 1]).to_string(),
        ),
        (
            "A3 ⊃ C2 ⊃ C1xC1",
            "T1.row5(n=2)",
            "T1.row11(n=1+1)",
            Partition::new(vec![2, 2]).to_string(),
        ),
        (
            "B4 ⊃ B3 ⊃ G2",
            "T1.row7",
            "T1.row6",
            Partition::new(vec![3, 2, 2]).to_string(),
        ),
        (
            "D4 ⊃ G2 ⊃ A2",
            "T1.row10",
            "T1.row9",
            "G2(a1)".to_string(),
        ),
    ];
    for (name, outer, inner, expected) in first_kind {
        let (phi, _, _) = phi_orbit_of(cases, outer, None, config)?;
        let tilde = tilde_of(cases, inner, config)?;
        let lhs = phi.to_string();
        let rhs = orbit_cell(&tilde);
        let pass = lhs == expected && rhs == expected;
        out.push(TripleReport {
            name: name.into(),
            kind: "first".into(),
            lhs,
            rhs,
            expected,
            pass,
        });
    }

    // second kind: Omin(so_9) ⇝ (3,1^5) ⇝ (3,2,2) through the spin chain
    {
        let (phi1, _, _) = phi_orbit_of(cases, "T1.row3(n=4)", None, config)?;
        let o_prime = Partition::new(vec![3, 1, 1, 1, 1, 1]);
        let step1 = phi1.to_string() == o_prime.to_string();
        let override_orbit = OrbitId::Classical {
            t: LieType::d(4),
            p: o_prime.clone(),
        };
        let (phi2, _, _) = phi_orbit_of(cases, "T1.row4spin", Some(override_orbit), config)?;
        let expected = Partition::new(vec![3, 2, 2]).to_string();
        let pass = step1 && phi2.to_string() == expected;
        out.push(TripleReport {
            name: "B4 ⊃ D4 ⊃ (B3, spin)".into(),
            kind: "second".into(),
            lhs: phi1.to_string(),
            rhs: phi2.to_string(),
            expected: format!("{o_prime} then {expected}"),
            pass,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// table regeneration

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableDiff {
    pub row_id: String,
    pub cell: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TablesReport {
    pub rows: Vec<VerificationReport>,
    pub diffs: Vec<TableDiff>,
}

/// Recompute every cell the build can compute and diff it against the golden
/// rows. The diff list must be empty on a correct build.
pub fn regenerate_tables(
    cases: &[EmbeddingCase],
    golden1: &[GoldenRow],
    golden2: &[GoldenRow],
    config: &EngineConfig,
) -> Result<TablesReport, EngineError> {
    let all: Vec<GoldenRow> = golden1.iter().chain(golden2.iter()).cloned().collect();
    let mut rows = Vec::new();
    let mut diffs = Vec::new();
    for g in &all {
        let Some(case) = cases.iter().find(|c| match c {
            EmbeddingCase::Matrix(m) => m.golden_row.as_deref() == Some(g.row_id.as_str()),
            EmbeddingCase::Data(d) => d.golden_row == g.row_id,
        }) else {
            continue;
        };
        let report = verify_case(case, None, &all, config)?;
        collect_diffs(g, &report, &mut diffs);
        rows.push(report);
    }
    Ok(TablesReport { rows, diffs })
}

fn collect_diffs(g: &GoldenRow, report: &VerificationReport, diffs: &mut Vec<TableDiff>) {
    let mut push = |cell: &str, expected: String, computed: String| {
        if expected != computed {
            diffs.push(TableDiff {
                row_id: g.row_id.clone(),
                cell: cell.into(),
                expected,
                computed,
            });
        }
    };
    match g.tier {
        RowTier::Matrix => {
            if let Some(phi) = &report.phi_orbit {
                push("phi_orbit", g.phi_orbit.clone(), phi.clone());
            } else {
                push("phi_orbit", g.phi_orbit.clone(), "<missing>".into());
            }
            if let Some(tilde) = &report.tilde_o {
                push("tilde_o", g.tilde_o.clone(), tilde.clone());
            } else {
                push("tilde_o", g.tilde_o.clone(), "<missing>".into());
            }
            push(
                "dim_tilde_o",
                g.dim_tilde_o.to_string(),
                report
                    .dim_tilde_o
                    .map(|d| d.to_string())
                    .unwrap_or_else(|| "<missing>".into()),
            );
            push(
                "deg_phi",
                g.deg_phi.to_string(),
                report
                    .deg_phi
                    .map(|d| d.to_string())
                    .unwrap_or_else(|| "<missing>".into()),
            );
            if !report.pass {
                push("checks", "all-pass".into(), "failures".into());
            }
        }
        RowTier::DataOnly => {
            if !report.pass {
                push("checks", "all-pass".into(), "failures".into());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embeddings::{find_case, registry, RegistryParams};
    use crate::rat;

    fn small_registry() -> Vec<EmbeddingCase> {
        registry(&RegistryParams {
            row3_n: vec![3],
            row4_n: vec![3],
            row5_n: vec![2],
            row11: vec![vec![1, 1]],
            t2_km: vec![],
        })
    }

    fn the_case<'a>(cases: &'a [EmbeddingCase], id: &str) -> &'a MatrixCase {
        match find_case(cases, id).unwrap() {
            EmbeddingCase::Matrix(c) => c,
            _ => panic!("expected matrix case"),
        }
    }

    #[test]
    fn exp_nilpotent_inverts() {
        let mut x = RatMatrix::zero(3, 3);
        x[(0, 1)] = rat(2);
        x[(1, 2)] = rat(-1);
        let e = exp_nilpotent(&x);
        let e_neg = exp_nilpotent(&x.neg());
        assert_eq!(e.mul(&e_neg), RatMatrix::identity(3));
    }

    #[test]
    fn conjugators_preserve_the_form() {
        let cases = small_registry();
        let case = the_case(&cases, "T1.row3(n=3)");
        let form = case.ambient.form.clone().unwrap();
        let mut rng = SplitMix64::new(5);
        for _ in 0..3 {
            let g = random_conjugator(case, &mut rng);
            assert_eq!(g.transpose().mul(&form).mul(&g), form);
        }
    }

    #[test]
    fn unipotent_conjugators_preserve_g2() {
        let cases = small_registry();
        let case = the_case(&cases, "T1.row9");
        let mut rng = SplitMix64::new(9);
        let g = random_conjugator(case, &mut rng);
        for b in case.ambient.basis.iter().step_by(3) {
            let conj = g.mul(b).mul(&g.inverse().unwrap());
            assert!(case.ambient.contains(&conj), "Ad(g) must preserve g2");
        }
    }

    #[test]
    fn witness_is_reproducible() {
        let cases = small_registry();
        let case = the_case(&cases, "T1.row6");
        let config = EngineConfig::default();
        let w1 = certify_p2(case, &case.orbit, &config).unwrap().unwrap();
        let w2 = certify_p2(case, &case.orbit, &config).unwrap().unwrap();
        assert_eq!(w1.element, w2.element);
        assert_eq!(w1.sample_index, w2.sample_index);
    }

    #[test]
    fn dimension_filter_on_the_long_root_pair() {
        let cases = small_registry();
        let case = the_case(&cases, "T1.row9");
        let g2 = LieType::g2();
        assert!(p2_dimension_filter(case, &OrbitId::exceptional(g2, "A1")));
        for label in ["Ã1", "G2(a1)", "G2"] {
            assert!(!p2_dimension_filter(case, &OrbitId::exceptional(g2, label)));
        }
    }

    #[test]
    fn deg_phi_helper_matches_quoted_values() {
        // minimal orbit of so_7 under g2: both groups trivial
        let omin_b3 = OrbitId::Classical {
            t: LieType::b(3),
            p: orbits::minimal_orbit_partition(LieType::b(3)).unwrap(),
        };
        let phi = HOrbit::Single(OrbitId::exceptional(LieType::g2(), "Ã1"));
        assert_eq!(compute_deg_phi(&omin_b3, &phi), Some(1));
        // the (3,1^4) orbit under g2: 6 / 2 = 3
        let o = OrbitId::Classical {
            t: LieType::b(3),
            p: Partition::new(vec![3, 1, 1, 1, 1]),
        };
        let phi = HOrbit::Single(OrbitId::exceptional(LieType::g2(), "G2(a1)"));
        assert_eq!(compute_deg_phi(&o, &phi), Some(3));
    }

    #[test]
    fn degenerate_witness_passes_identities() {
        // e already in h: b = 0 and all five identities hold trivially
        let cases = small_registry();
        let case = the_case(&cases, "T1.row3(n=3)");
        let e = standard_nilpotent(
            LieType::b(3),
            &orbits::minimal_orbit_partition(LieType::b(3)).unwrap(),
        )
        .unwrap();
        // the standard minimal representative of so_7 happens to lie in the
        // embedded so_6 here; project and confirm before using it
        let (a, b) = case.project(&e).unwrap();
        assert!(b.is_zero(), "chosen degenerate element must lie in h");
        let w = Witness {
            element: e,
            a,
            b,
            achieved_dim: 0,
            sample_index: 0,
        };
        for c in verify_projection_identities(case, &w).unwrap() {
            assert!(c.pass, "degenerate identity {} failed", c.name);
        }
    }

    #[test]
    fn representative_unavailable_for_foreign_orbits() {
        let cases = small_registry();
        let case = the_case(&cases, "T1.row9");
        let bogus = OrbitId::exceptional(LieType::g2(), "G2(a1)");
        assert!(matches!(
            ambient_representative(case, &bogus),
            Err(EngineError::RepresentativeUnavailable(_))
        ));
    }
}

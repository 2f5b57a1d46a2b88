//! Explicit rational matrix models of simple Lie algebras.
//!
//! A [`MatrixLieAlgebra`] is a basis of rational matrices closed under the
//! commutator, together with (for the orthogonal and symplectic models) the
//! invariant bilinear form on the defining space. Elements are handled
//! either as plain matrices or as coordinate vectors over the basis; a
//! [`SpanSolver`] built once per algebra makes coordinatization cheap.

mod classical;
mod spin;

pub use classical::{build_classical, so_form, sp_form, standard_nilpotent};
pub use spin::{
    build_a2_in_g2, build_g2_in_so7, build_spin7_in_so8, commutant_dim, A2Model, G2Model,
    Spin7Model,
};

use crate::linalg::{JordanType, SpanSolver};
use crate::orbits::{Family, LieType, OrbitId, Partition};
use crate::{rat, Rat, RatMatrix};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("element does not lie in the span of the basis")]
    NotInSpan,
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("no sl2-triple solution found (must not happen for nilpotent input)")]
    NoSolution,
    #[error("rank {0} exceeds the configured bound {1}")]
    RankBound(usize, usize),
    #[error("type {0} has no classical matrix model")]
    NotClassical(LieType),
    #[error("no orbit with centralizer dimension {0} in g2")]
    UnknownCentralizerDim(usize),
    #[error("zero element has no sl2-triple")]
    ZeroElement,
    #[error(transparent)]
    Orbit(#[from] crate::orbits::OrbitError),
}

/// A Lie algebra of rational matrices, given by a basis closed under bracket.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    pub name: String,
    /// Size of the defining matrices.
    pub ambient_dim: usize,
    pub basis: Vec<RatMatrix>,
    /// Invariant bilinear form on the defining space (anti-diagonal
    /// convention for so/sp); `None` for sl.
    pub form: Option<RatMatrix>,
    /// Gram matrix of the trace form (x, y) ↦ tr(xy) on the basis.
    pub trace_gram: RatMatrix,
    span: SpanSolver<Rat>,
}

impl MatrixLieAlgebra {
    pub fn new(
        name: impl Into<String>,
        ambient_dim: usize,
        basis: Vec<RatMatrix>,
        form: Option<RatMatrix>,
    ) -> Self {
        let flat: Vec<Vec<Rat>> = basis.iter().map(RatMatrix::flatten).collect();
        let span = SpanSolver::new(&flat);
        assert_eq!(span.rank(), basis.len(), "basis is linearly dependent");
        let n = basis.len();
        let trace_gram = RatMatrix::from_fn(n, n, |i, j| basis[i].trace_mul(&basis[j]));
        MatrixLieAlgebra {
            name: name.into(),
            ambient_dim,
            basis,
            form,
            trace_gram,
            span,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero_matrix(&self) -> RatMatrix {
        RatMatrix::zero(self.ambient_dim, self.ambient_dim)
    }

    pub fn to_matrix(&self, coords: &[Rat]) -> RatMatrix {
        assert_eq!(coords.len(), self.dim());
        let mut m = self.zero_matrix();
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = m.add(&b.scale(c));
            }
        }
        m
    }

    pub fn coordinates(&self, m: &RatMatrix) -> Result<Vec<Rat>, ModelError> {
        self.span
            .coordinates(&m.flatten())
            .ok_or(ModelError::NotInSpan)
    }

    pub fn contains(&self, m: &RatMatrix) -> bool {
        self.span.contains(&m.flatten())
    }

    /// Bracket in coordinates over the basis. Errors with `NotInSpan` if the
    /// commutator leaves the span, which signals a broken basis.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>, ModelError> {
        let xm = self.to_matrix(x);
        let ym = self.to_matrix(y);
        self.coordinates(&xm.commutator(&ym))
    }

    /// The linear map `span(sub) → gl_N`, `y ↦ [y, x]`, as an N²×k matrix.
    pub fn ad_map_from(sub: &[RatMatrix], x: &RatMatrix) -> RatMatrix {
        let cols: Vec<Vec<Rat>> = sub.iter().map(|s| s.commutator(x).flatten()).collect();
        RatMatrix::from_columns(&cols)
    }

    /// `dim [span(sub), x]`.
    pub fn bracket_image_dim(sub: &[RatMatrix], x: &RatMatrix) -> usize {
        Self::ad_map_from(sub, x).rank()
    }

    /// Dimension of the centralizer of `x` in this algebra.
    pub fn centralizer_dim(&self, x: &RatMatrix) -> usize {
        self.dim() - Self::bracket_image_dim(&self.basis, x)
    }

    /// Basis (in coordinates over this algebra's basis) of the centralizer
    /// of `x`.
    pub fn centralizer_coords(&self, x: &RatMatrix) -> Vec<Vec<Rat>> {
        Self::ad_map_from(&self.basis, x).kernel_basis()
    }

    /// Matrix of `ad(x)` in coordinates over the basis (d×d).
    pub fn ad_matrix(&self, x: &RatMatrix) -> Result<RatMatrix, ModelError> {
        let cols: Vec<Vec<Rat>> = self
            .basis
            .iter()
            .map(|b| self.coordinates(&b.commutator(x)))
            .collect::<Result<_, _>>()?;
        Ok(RatMatrix::from_columns(&cols))
    }

    /// Eigenvalue dimensions of `ad(h)` over the integer range that can
    /// occur; returns pairs (λ, dim ker(ad h − λ)) with nonzero dimension.
    /// Panics if the dimensions do not add up (non-diagonalizable or
    /// non-integer spectrum).
    pub fn ad_integer_spectrum(&self, h: &RatMatrix) -> Result<Vec<(i64, usize)>, ModelError> {
        let ad = self.ad_matrix(h)?;
        let d = self.dim();
        let bound = 2 * self.ambient_dim as i64;
        let mut out = Vec::new();
        let mut total = 0;
        for lam in -bound..=bound {
            let shifted = ad.sub(&RatMatrix::identity(d).scale(&rat(lam)));
            let dim = d - shifted.rank();
            if dim > 0 {
                out.push((lam, dim));
                total += dim;
            }
            if total == d {
                break;
            }
        }
        assert_eq!(
            total, d,
            "ad(h) is not diagonalizable with integer spectrum"
        );
        Ok(out)
    }
}

/// An sl2-triple {e, h, f} with [h,e]=2e, [h,f]=-2f, [e,f]=h.
#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub e: RatMatrix,
    pub h: RatMatrix,
    pub f: RatMatrix,
}

impl Sl2Triple {
    pub fn verify(&self) -> bool {
        self.h.commutator(&self.e) == self.e.scale(&rat(2))
            && self.h.commutator(&self.f) == self.f.scale(&rat(-2))
            && self.e.commutator(&self.f) == self.h
    }
}

/// Characteristic of a nonzero nilpotent `e`: an `h` in the image of
/// `ad e` with `[h, e] = 2e`, found by one linear solve. Solvability is the
/// Jacobson–Morozov theorem.
pub fn sl2_characteristic(alg: &MatrixLieAlgebra, e: &RatMatrix) -> Result<RatMatrix, ModelError> {
    if e.is_zero() {
        return Err(ModelError::ZeroElement);
    }
    if !e.is_nilpotent() {
        return Err(ModelError::NotNilpotent);
    }
    if !alg.contains(e) {
        return Err(ModelError::NotInSpan);
    }
    let cols: Vec<Vec<Rat>> = alg
        .basis
        .iter()
        .map(|b| b.commutator(e).commutator(e).flatten())
        .collect();
    let a = RatMatrix::from_columns(&cols);
    let rhs: Vec<Rat> = e.scale(&rat(2)).flatten();
    let z = a.solve(&rhs).ok_or(ModelError::NoSolution)?;
    let zm = alg.to_matrix(&z);
    Ok(zm.commutator(e))
}

/// Complete a nonzero nilpotent `e` to an sl2-triple inside `alg`: the
/// characteristic solve above, then `f` with `[e,f] = h` and `[h,f] = -2f`.
pub fn complete_sl2(alg: &MatrixLieAlgebra, e: &RatMatrix) -> Result<Sl2Triple, ModelError> {
    let d = alg.dim();
    let h = sl2_characteristic(alg, e)?;

    // stacked system for f
    let n2 = alg.ambient_dim * alg.ambient_dim;
    let mut stacked = RatMatrix::zero(2 * n2, d);
    for (j, b) in alg.basis.iter().enumerate() {
        let top = e.commutator(b).flatten();
        let bot = h.commutator(b).add(&b.scale(&rat(2))).flatten();
        for i in 0..n2 {
            stacked[(i, j)] = top[i].clone();
            stacked[(n2 + i, j)] = bot[i].clone();
        }
    }
    let mut rhs2 = h.flatten();
    rhs2.extend(std::iter::repeat(Rat::zero()).take(n2));
    let f = stacked.solve(&rhs2).ok_or(ModelError::NoSolution)?;
    let fm = alg.to_matrix(&f);
    let triple = Sl2Triple {
        e: e.clone(),
        h,
        f: fm,
    };
    debug_assert!(triple.verify());
    Ok(triple)
}

/// Identification record for a nilpotent element.
#[derive(Clone, Debug)]
pub struct ElementOrbitWitness {
    pub centralizer_dim: usize,
    pub jordan: Option<JordanType>,
    pub orbit: OrbitId,
    /// For very even D shapes the Jordan type cannot separate the I/II pair.
    pub very_even_undetermined: bool,
}

/// Identify the orbit of a nilpotent `x` in a classical algebra from its
/// Jordan type in the defining representation.
pub fn identify_classical_orbit(
    alg: &MatrixLieAlgebra,
    t: LieType,
    x: &RatMatrix,
) -> Result<ElementOrbitWitness, ModelError> {
    if !x.is_nilpotent() {
        return Err(ModelError::NotNilpotent);
    }
    let jt = x
        .jordan_type_nilpotent()
        .map_err(|_| ModelError::NotNilpotent)?;
    let p = Partition::new(jt.parts().to_vec());
    let undetermined = t.family == Family::D && p.is_very_even_shape();
    let orbit = OrbitId::Classical { t, p };
    Ok(ElementOrbitWitness {
        centralizer_dim: alg.centralizer_dim(x),
        jordan: Some(jt),
        orbit,
        very_even_undetermined: undetermined,
    })
}

/// Identify a G2 orbit from the centralizer dimension inside g2 (the G2
/// orbit poset is a chain, so this is a complete invariant).
pub fn identify_g2_orbit(
    g2: &MatrixLieAlgebra,
    x: &RatMatrix,
) -> Result<ElementOrbitWitness, ModelError> {
    if !x.is_nilpotent() {
        return Err(ModelError::NotNilpotent);
    }
    let cd = g2.centralizer_dim(x);
    let label = crate::data::g2_orbit_by_centralizer_dim(cd)
        .ok_or(ModelError::UnknownCentralizerDim(cd))?;
    Ok(ElementOrbitWitness {
        centralizer_dim: cd,
        jordan: None,
        orbit: OrbitId::exceptional(LieType::g2(), label),
        very_even_undetermined: false,
    })
}

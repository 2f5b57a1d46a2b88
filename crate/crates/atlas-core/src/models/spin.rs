//! Spinor constructions over the rationals: spin_7 acting on the 8-dim
//! spinor module, the exceptional algebra g_2 as a generic-spinor
//! annihilator, and the long-root subalgebra sl_3 of g_2.
//!
//! The Clifford algebra of the split 7-dim quadratic form is realized on
//! the exterior algebra of a maximal isotropic subspace: creation operators
//! for a_1,a_2,a_3, doubled contraction for b_1,b_2,b_3 and the parity
//! operator for the anisotropic middle vector c. Everything stays rational.

use super::{MatrixLieAlgebra, ModelError};
use crate::{rat, Rat, RatMatrix};
use num_traits::{One, Zero};

const WEDGE: [&[usize]; 8] = [&[], &[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]];

fn wedge_index(set: &[usize]) -> usize {
    WEDGE.iter().position(|w| *w == set).unwrap()
}

/// Creation operator a_i ∧ (·) on the wedge basis.
fn ext_op(i: usize) -> RatMatrix {
    let mut m = RatMatrix::zero(8, 8);
    for (col, set) in WEDGE.iter().enumerate() {
        if set.contains(&i) {
            continue;
        }
        let mut new: Vec<usize> = set.to_vec();
        new.push(i);
        new.sort_unstable();
        let sign = set.iter().filter(|&&j| j < i).count();
        let row = wedge_index(&new);
        m[(row, col)] = if sign % 2 == 0 { rat(1) } else { rat(-1) };
    }
    m
}

/// Contraction operator against b_i on the wedge basis.
fn int_op(i: usize) -> RatMatrix {
    let mut m = RatMatrix::zero(8, 8);
    for (col, set) in WEDGE.iter().enumerate() {
        if !set.contains(&i) {
            continue;
        }
        let new: Vec<usize> = set.iter().copied().filter(|&j| j != i).collect();
        let sign = set.iter().filter(|&&j| j < i).count();
        let row = wedge_index(&new);
        m[(row, col)] = if sign % 2 == 0 { rat(1) } else { rat(-1) };
    }
    m
}

fn parity_op() -> RatMatrix {
    RatMatrix::from_fn(8, 8, |r, c| {
        if r == c {
            if WEDGE[r].len() % 2 == 0 {
                rat(1)
            } else {
                rat(-1)
            }
        } else {
            rat(0)
        }
    })
}

/// Model of spin_7: the 21 quadratic Clifford elements acting on the 8-dim
/// spinor module, conjugated into the anti-diagonal so_8 model, together
/// with the matching 7-dim vector representation in the anti-diagonal so_7
/// model. The generator order is shared between the two representations.
#[derive(Clone, Debug)]
pub struct Spin7Model {
    pub so8: MatrixLieAlgebra,
    pub vector_rep: Vec<RatMatrix>,
}

impl Spin7Model {
    /// Re-express an element of the spin model (an 8×8 matrix in the span
    /// of the generators) in the 7-dim vector representation.
    pub fn vector_image(&self, m: &RatMatrix) -> Result<RatMatrix, ModelError> {
        let coords = self.so8.coordinates(m)?;
        let mut out = RatMatrix::zero(7, 7);
        for (c, v) in coords.iter().zip(&self.vector_rep) {
            if !c.is_zero() {
                out = out.add(&v.scale(c));
            }
        }
        Ok(out)
    }
}

/// V7 basis order: (a1, a2, a3, c, b3, b2, b1); its Gram matrix is exactly
/// the anti-diagonal form of size 7.
fn gamma_matrices() -> Vec<RatMatrix> {
    let two = rat(2);
    vec![
        ext_op(0),
        ext_op(1),
        ext_op(2),
        parity_op(),
        int_op(2).scale(&two),
        int_op(1).scale(&two),
        int_op(0).scale(&two),
    ]
}

/// The 21 spin generators x_{uv} = [γ_u, γ_v]/4 in spinor coordinates,
/// ordered by the pair (u, v), u < v over the V7 basis order.
fn spin_generators_wedge() -> Vec<RatMatrix> {
    let gam = gamma_matrices();
    let quarter = crate::ratio(1, 4);
    let mut gens = Vec::with_capacity(21);
    for u in 0..7 {
        for v in u + 1..7 {
            gens.push(gam[u].commutator(&gam[v]).scale(&quarter));
        }
    }
    gens
}

/// Vector representation of the generator x_{uv}: w ↦ B(v,w)u − B(u,w)v,
/// with B the anti-diagonal form on V7.
fn vector_generators() -> Vec<RatMatrix> {
    let b = super::so_form(7);
    let mut gens = Vec::with_capacity(21);
    for u in 0..7 {
        for v in u + 1..7 {
            let mut m = RatMatrix::zero(7, 7);
            for w in 0..7 {
                if !b[(v, w)].is_zero() {
                    m[(u, w)] = m[(u, w)].clone() + b[(v, w)].clone();
                }
                if !b[(u, w)].is_zero() {
                    m[(v, w)] = m[(v, w)].clone() - b[(u, w)].clone();
                }
            }
            gens.push(m);
        }
    }
    gens
}

/// Solve for the invariant bilinear form on the spinor module: the kernel of
/// x ↦ xᵀB + Bx over all generators. One-dimensional by irreducibility.
fn invariant_spinor_form(gens: &[RatMatrix]) -> RatMatrix {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for x in gens {
        // equation: (xᵀ B + B x)[r][c] = 0, unknowns B[a][b] flattened
        for r in 0..8 {
            for c in 0..8 {
                let mut row = vec![Rat::zero(); 64];
                for k in 0..8 {
                    // xᵀ[r][k] B[k][c] = x[k][r] B[k][c]
                    if !x[(k, r)].is_zero() {
                        row[k * 8 + c] = row[k * 8 + c].clone() + x[(k, r)].clone();
                    }
                    // B[r][k] x[k][c]
                    if !x[(k, c)].is_zero() {
                        row[r * 8 + k] = row[r * 8 + k].clone() + x[(k, c)].clone();
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = RatMatrix::from_rows(rows);
    let kernel = system.kernel_basis();
    assert_eq!(kernel.len(), 1, "spinor form should be unique up to scale");
    let b = RatMatrix::from_fn(8, 8, |r, c| kernel[0][r * 8 + c].clone());
    assert_eq!(b.transpose(), b, "spinor form should be symmetric");
    b
}

/// Change of basis turning a symmetric form whose nonzero pattern is a
/// fixed-point-free perfect matching into the anti-diagonal form of ones.
fn antidiagonalize_matching(b: &RatMatrix) -> RatMatrix {
    let n = b.rows();
    let mut partner = vec![usize::MAX; n];
    for r in 0..n {
        let nz: Vec<usize> = (0..n).filter(|&c| !b[(r, c)].is_zero()).collect();
        assert_eq!(nz.len(), 1, "form is not a perfect matching");
        assert_ne!(nz[0], r, "form has a self-pairing");
        partner[r] = nz[0];
    }
    let mut used = vec![false; n];
    let mut front = Vec::new();
    let mut back = Vec::new();
    for r in 0..n {
        if used[r] {
            continue;
        }
        let p = partner[r];
        used[r] = true;
        used[p] = true;
        front.push(r);
        back.push(p);
    }
    // order: fronts, then partners reversed; scale the partner columns
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let unit = |i: usize, s: Rat| {
        let mut v = vec![Rat::zero(); n];
        v[i] = s;
        v
    };
    for &r in &front {
        cols.push(unit(r, Rat::one()));
    }
    for (&r, &p) in front.iter().zip(back.iter()).rev() {
        let scale = Rat::one() / b[(r, p)].clone();
        cols.push(unit(p, scale));
    }
    RatMatrix::from_columns(&cols)
}

/// Build spin_7 inside the anti-diagonal so_8 model, with the matching
/// vector representation.
pub fn build_spin7_in_so8() -> Spin7Model {
    let wedge_gens = spin_generators_wedge();
    let b = invariant_spinor_form(&wedge_gens);
    let p = antidiagonalize_matching(&b);
    let p_inv = p.inverse().expect("basis change invertible");
    assert_eq!(
        p.transpose().mul(&b).mul(&p),
        super::so_form(8),
        "spinor form normalizes to the anti-diagonal"
    );
    let gens: Vec<RatMatrix> = wedge_gens.iter().map(|x| p_inv.mul(x).mul(&p)).collect();
    let so8 = MatrixLieAlgebra::new("spin7(so8)", 8, gens, Some(super::so_form(8)));
    Spin7Model {
        so8,
        vector_rep: vector_generators(),
    }
}

/// Model of g2: the annihilator of a generic spinor inside spin_7, carried
/// in the 7-dim vector representation, plus the coordinates of its basis
/// over the 21 spin generators.
#[derive(Clone, Debug)]
pub struct G2Model {
    pub so7: MatrixLieAlgebra,
    /// Coordinates of the g2 basis over the spin generator basis.
    pub spin_coords: Vec<Vec<Rat>>,
}

/// Build g2 ⊂ so_7 as the stabilizer of a generic spinor.
///
/// The fixed spinor pairs the empty and the top wedge monomials, which makes
/// its stabilizer contain a split rational torus (the genericity itself is
/// certified by the stabilizer dimension being exactly 14 and the spinor
/// norm being nonzero).
pub fn build_g2_in_so7() -> G2Model {
    let wedge_gens = spin_generators_wedge();
    let b = invariant_spinor_form(&wedge_gens);
    let mut s0 = vec![Rat::zero(); 8];
    s0[0] = Rat::one();
    s0[7] = Rat::one();
    // spinor norm must not vanish, otherwise the stabilizer is not reductive
    let norm: Rat = (0..8)
        .map(|i| {
            (0..8)
                .map(|j| b[(i, j)].clone() * s0[i].clone() * s0[j].clone())
                .fold(Rat::zero(), |a, x| a + x)
        })
        .fold(Rat::zero(), |a, x| a + x);
    assert!(!norm.is_zero(), "chosen spinor is null");

    let action = RatMatrix::from_columns(
        &wedge_gens
            .iter()
            .map(|x| x.mul_vec(&s0))
            .collect::<Vec<_>>(),
    );
    let kernel = action.kernel_basis();
    assert_eq!(kernel.len(), 14, "generic spinor stabilizer must be 14-dim");

    let vec_gens = vector_generators();
    let basis: Vec<RatMatrix> = kernel
        .iter()
        .map(|coords| {
            let mut m = RatMatrix::zero(7, 7);
            for (c, g) in coords.iter().zip(&vec_gens) {
                if !c.is_zero() {
                    m = m.add(&g.scale(c));
                }
            }
            m
        })
        .collect();
    let so7 = MatrixLieAlgebra::new("g2(so7)", 7, basis, Some(super::so_form(7)));
    G2Model {
        so7,
        spin_coords: kernel,
    }
}

/// The long-root subalgebra sl_3 of g_2, plus the full root decomposition
/// used for exact unipotent sampling in the adjoint group.
#[derive(Clone, Debug)]
pub struct A2Model {
    pub a2: MatrixLieAlgebra,
    /// All twelve root vectors of g2 (7×7 nilpotent matrices).
    pub root_vectors: Vec<RatMatrix>,
    /// One long root vector (a representative of the minimal orbit).
    pub long_root_vector: RatMatrix,
}

/// Extract the split Cartan, the root decomposition of g2 with respect to
/// it, and assemble the long-root sl_3.
pub fn build_a2_in_g2(g2: &G2Model) -> A2Model {
    let alg = &g2.so7;
    let d = alg.dim();

    // Cartan: the diagonal matrices inside g2 (2-dimensional)
    let mut rows = Vec::new();
    for r in 0..7 {
        for c in 0..7 {
            if r == c {
                continue;
            }
            let row: Vec<Rat> = alg.basis.iter().map(|bm| bm[(r, c)].clone()).collect();
            rows.push(row);
        }
    }
    let offdiag = RatMatrix::from_rows(rows);
    let cartan_coords = offdiag.kernel_basis();
    assert_eq!(cartan_coords.len(), 2, "g2 torus should be 2-dim");
    let cartan: Vec<RatMatrix> = cartan_coords.iter().map(|c| alg.to_matrix(c)).collect();

    // weights (w1, w2) of a torus element: read off the diagonal
    let weights = |t: &RatMatrix| (t[(0, 0)].clone(), t[(1, 1)].clone());

    // pick t0 with all twelve root values distinct: weights (1, 4, -5)
    let (t0, t1) = {
        let (a11, a12) = weights(&cartan[0]);
        let (a21, a22) = weights(&cartan[1]);
        // solve for combos giving (w1,w2) = (1,4) and (0,1)
        let m = RatMatrix::from_rows(vec![vec![a11, a21], vec![a12, a22]]);
        let c0 = m.solve(&[rat(1), rat(4)]).expect("torus spans weights");
        let c1 = m.solve(&[rat(0), rat(1)]).expect("torus spans weights");
        let t0 = cartan[0].scale(&c0[0]).add(&cartan[1].scale(&c0[1]));
        let t1 = cartan[0].scale(&c1[0]).add(&cartan[1].scale(&c1[1]));
        (t0, t1)
    };

    let ad_t0 = alg.ad_matrix(&t0).expect("t0 in g2");
    let ad_t1 = alg.ad_matrix(&t1).expect("t1 in g2");

    // candidate eigenvalues: pairwise differences of the diagonal of t0
    let mut candidates: Vec<Rat> = Vec::new();
    for i in 0..7 {
        for j in 0..7 {
            let v = t0[(i, i)].clone() - t0[(j, j)].clone();
            if !v.is_zero() && !candidates.contains(&v) {
                candidates.push(v);
            }
        }
    }

    let mut roots: Vec<(Rat, Rat, Vec<Rat>)> = Vec::new(); // (a, b, coords)
    let mut total = 0usize;
    for lam in &candidates {
        let shifted = ad_t0.sub(&RatMatrix::identity(d).scale(lam));
        let kernel = shifted.kernel_basis();
        if kernel.is_empty() {
            continue;
        }
        assert_eq!(
            kernel.len(),
            1,
            "root spaces of g2 are 1-dim for generic t0"
        );
        let coords = kernel.into_iter().next().unwrap();
        // value of the root on t1
        let image = ad_t1.mul_vec(&coords);
        let k = coords.iter().position(|x| !x.is_zero()).unwrap();
        let mu = image[k].clone() / coords[k].clone();
        // α = a·ε1 + b·ε2 where t0 has (w1,w2) = (1,4), t1 has (0,1):
        // a + 4b = λ, b = μ
        let b_coef = mu;
        let a_coef = lam.clone() - rat(4) * b_coef.clone();
        roots.push((a_coef, b_coef, coords));
        total += 1;
    }
    assert_eq!(total, 12, "g2 has twelve roots");

    // squared length up to scale: a² + b² − ab; long roots have three times
    // the short value
    let norm =
        |a: &Rat, b: &Rat| a.clone() * a.clone() + b.clone() * b.clone() - a.clone() * b.clone();
    let min_norm = roots
        .iter()
        .map(|(a, b, _)| norm(a, b))
        .min()
        .expect("nonempty");
    let mut long_vectors = Vec::new();
    let mut all_vectors = Vec::new();
    for (a, b, coords) in &roots {
        let v = alg.to_matrix(coords);
        all_vectors.push(v.clone());
        let nv = norm(a, b);
        if nv == rat(3) * min_norm.clone() {
            long_vectors.push(v);
        } else {
            assert_eq!(nv, min_norm, "root norms take exactly two values");
        }
    }
    assert_eq!(long_vectors.len(), 6, "six long roots");

    let mut basis = cartan.clone();
    basis.extend(long_vectors.iter().cloned());
    let long_root_vector = long_vectors[0].clone();
    let a2 = MatrixLieAlgebra::new("a2(g2)", 7, basis, Some(super::so_form(7)));
    A2Model {
        a2,
        root_vectors: all_vectors,
        long_root_vector,
    }
}

/// Commutant dimension of a set of operators: solves [M, x_i] = 0 for all i.
/// For a completely reducible module, dimension 1 certifies irreducibility.
pub fn commutant_dim(gens: &[RatMatrix]) -> usize {
    let n = gens.first().map_or(0, RatMatrix::rows);
    let mut rows = Vec::new();
    for x in gens {
        for r in 0..n {
            for c in 0..n {
                // (M x − x M)[r][c] = Σ_k M[r][k] x[k][c] − x[r][k] M[k][c]
                let mut row = vec![Rat::zero(); n * n];
                for k in 0..n {
                    if !x[(k, c)].is_zero() {
                        row[r * n + k] = row[r * n + k].clone() + x[(k, c)].clone();
                    }
                    if !x[(r, k)].is_zero() {
                        row[k * n + c] = row[k * n + c].clone() - x[(r, k)].clone();
                    }
                }
                rows.push(row);
            }
        }
    }
    RatMatrix::from_rows(rows).kernel_basis().len()
}

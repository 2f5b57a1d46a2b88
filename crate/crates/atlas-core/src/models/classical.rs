//! Matrix models of sl_n, so_n, sp_2n and standard partition representatives.
//!
//! Orthogonal and symplectic algebras use the anti-diagonal form convention,
//! so upper-triangular matrices realize a Borel and block representatives
//! are easy to write down. A nilpotent representative for a partition is
//! assembled from chunks placed on index subsets symmetric about the
//! anti-diagonal: equal parts `(p,p)` through the gl_p embedding, a pair of
//! distinct odd parts through a two-chain construction, and (for odd N) one
//! leftover odd part in the middle block.

use super::{MatrixLieAlgebra, ModelError};
use crate::orbits::{Family, LieType, Partition, DEFAULT_RANK_BOUND};
use crate::{rat, Rat, RatMatrix};
use num_traits::{One, Zero};

/// Anti-diagonal symmetric form of size n.
pub fn so_form(n: usize) -> RatMatrix {
    RatMatrix::from_fn(n, n, |r, c| if r + c == n - 1 { rat(1) } else { rat(0) })
}

/// Anti-diagonal symplectic form of size 2n: +1 above the center, −1 below.
pub fn sp_form(two_n: usize) -> RatMatrix {
    assert!(two_n % 2 == 0);
    RatMatrix::from_fn(two_n, two_n, |r, c| {
        if r + c == two_n - 1 {
            if r < two_n / 2 {
                rat(1)
            } else {
                rat(-1)
            }
        } else {
            rat(0)
        }
    })
}

fn e_ij(n: usize, i: usize, j: usize) -> RatMatrix {
    let mut m = RatMatrix::zero(n, n);
    m[(i, j)] = rat(1);
    m
}

fn so_basis(n: usize) -> Vec<RatMatrix> {
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (ri, rj) = (n - 1 - j, n - 1 - i);
            if i + j == n - 1 {
                continue; // reflection-fixed positions vanish
            }
            if (i, j) < (ri, rj) {
                let m = e_ij(n, i, j).sub(&e_ij(n, ri, rj));
                basis.push(m);
            }
        }
    }
    basis
}

fn sp_basis(two_n: usize) -> Vec<RatMatrix> {
    let n = two_n / 2;
    let eta = |i: usize| if i < n { rat(1) } else { rat(-1) };
    let mut basis = Vec::new();
    for i in 0..two_n {
        for j in 0..two_n {
            let (ri, rj) = (two_n - 1 - j, two_n - 1 - i);
            if (i, j) == (ri, rj) {
                basis.push(e_ij(two_n, i, j));
            } else if (i, j) < (ri, rj) {
                let m = e_ij(two_n, i, j).sub(&e_ij(two_n, ri, rj).scale(&(eta(i) * eta(j))));
                basis.push(m);
            }
        }
    }
    basis
}

fn sl_basis(n: usize) -> Vec<RatMatrix> {
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(e_ij(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        basis.push(e_ij(n, i, i).sub(&e_ij(n, i + 1, i + 1)));
    }
    basis
}

/// Build the standard matrix model of a classical type.
pub fn build_classical(t: LieType) -> Result<MatrixLieAlgebra, ModelError> {
    build_classical_bounded(t, DEFAULT_RANK_BOUND)
}

pub fn build_classical_bounded(t: LieType, bound: usize) -> Result<MatrixLieAlgebra, ModelError> {
    if !t.is_classical() {
        return Err(ModelError::NotClassical(t));
    }
    if t.rank > bound {
        return Err(ModelError::RankBound(t.rank, bound));
    }
    let n = t.defining_dim();
    let (basis, form) = match t.family {
        Family::A => (sl_basis(n), None),
        Family::B | Family::D => (so_basis(n), Some(so_form(n))),
        Family::C => (sp_basis(n), Some(sp_form(n))),
        _ => unreachable!(),
    };
    let alg = MatrixLieAlgebra::new(format!("{t}"), n, basis, form);
    debug_assert_eq!(alg.dim(), t.algebra_dim());
    Ok(alg)
}

#[derive(Debug, Clone, Copy)]
enum Chunk {
    /// Parts (p, p) via the gl_p embedding; local size 2p.
    GlPair(usize),
    /// Distinct odd parts (p, q), p > q; local size p + q (even).
    OddPair(usize, usize),
    /// A single odd part in the middle block (only for odd N).
    Middle(usize),
}

impl Chunk {
    fn size(&self) -> usize {
        match *self {
            Chunk::GlPair(p) => 2 * p,
            Chunk::OddPair(p, q) => p + q,
            Chunk::Middle(p) => p,
        }
    }
}

/// Split a valid partition into chunks. For so: even parts pair among
/// themselves, odd parts pair greedily (equal sizes first), at most one odd
/// leftover goes to the middle. For sp: odd parts pair among themselves and
/// even parts embed singly via the two-chain construction with itself — for
/// uniformity a single even part of size p is realized as OddPair-style
/// chain of length p (see `sp_single_chunk`).
fn chunks_so(p: &Partition) -> Vec<Chunk> {
    let mut chunks = Vec::new();
    let mut odd_left = Vec::new();
    let mut i = 0;
    let parts = p.parts();
    while i < parts.len() {
        let v = parts[i];
        let mut mult = 0;
        while i < parts.len() && parts[i] == v {
            mult += 1;
            i += 1;
        }
        if v % 2 == 0 {
            debug_assert!(mult % 2 == 0);
            for _ in 0..mult / 2 {
                chunks.push(Chunk::GlPair(v));
            }
        } else {
            for _ in 0..mult / 2 {
                chunks.push(Chunk::GlPair(v));
            }
            if mult % 2 == 1 {
                odd_left.push(v);
            }
        }
    }
    // pair leftover distinct odd parts; at most one survives to the middle
    while odd_left.len() >= 2 {
        let q = odd_left.pop().unwrap();
        let p0 = odd_left.pop().unwrap();
        chunks.push(Chunk::OddPair(p0, q));
    }
    if let Some(m) = odd_left.pop() {
        chunks.push(Chunk::Middle(m));
    }
    chunks
}

fn chunks_sp(p: &Partition) -> Vec<Chunk> {
    let mut chunks = Vec::new();
    let mut i = 0;
    let parts = p.parts();
    while i < parts.len() {
        let v = parts[i];
        let mut mult = 0;
        while i < parts.len() && parts[i] == v {
            mult += 1;
            i += 1;
        }
        if v % 2 == 1 {
            debug_assert!(mult % 2 == 0);
            for _ in 0..mult / 2 {
                chunks.push(Chunk::GlPair(v));
            }
        } else {
            // single even Jordan block fits in sp_p
            for _ in 0..mult {
                chunks.push(Chunk::Middle(v)); // "middle" here means single chain
            }
        }
    }
    chunks
}

/// Local matrix of the gl_p pair chunk in so/sp of size 2p: the Jordan
/// block on the first p indices and its negative anti-transpose on the rest.
fn gl_pair_local(p: usize) -> RatMatrix {
    let mut m = RatMatrix::zero(2 * p, 2 * p);
    for i in 0..p.saturating_sub(1) {
        m[(i, i + 1)] = rat(1);
        m[(p + i, p + i + 1)] = rat(-1);
    }
    m
}

/// Single-chain chunk for so (odd p): a regular nilpotent of so_p in the
/// anti-diagonal model. The chain u_0..u_{p-1} with e·u_i = u_{i-1} carries
/// the form ⟨u_i, u_{p-1-i}⟩ = s·(-1)^i, with the block sign s chosen so the
/// self-paired middle vector has norm +1; rescaling the tail normalizes the
/// Gram to the anti-diagonal of ones.
fn so_single_local(p: usize) -> RatMatrix {
    let s = if ((p - 1) / 2) % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    };
    let eps = |i: usize| {
        let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
        s.clone() * sign
    };
    let mid = (p - 1) / 2;
    let d: Vec<Rat> = (0..p)
        .map(|i| if i <= mid { rat(1) } else { eps(i) })
        .collect();
    let mut m = RatMatrix::zero(p, p);
    for i in 1..p {
        m[(i - 1, i)] = d[i].clone() / d[i - 1].clone();
    }
    m
}

/// Single even chain for sp: a regular nilpotent of sp_p, p even, in the
/// anti-diagonal signed model.
fn sp_single_local(p: usize) -> RatMatrix {
    // chain with ⟨u_i, u_{p-1-i}⟩ = (-1)^i; scale the back half so the top
    // pairings are +1 (the bottom ones become −1 by antisymmetry).
    let half = p / 2;
    let d: Vec<Rat> = (0..p)
        .map(|i| {
            if i < half {
                rat(1)
            } else {
                let j = p - 1 - i; // pairs with u_j, j < half
                if j % 2 == 0 {
                    rat(1)
                } else {
                    rat(-1)
                }
            }
        })
        .collect();
    let mut m = RatMatrix::zero(p, p);
    for i in 1..p {
        m[(i - 1, i)] = d[i].clone() / d[i - 1].clone();
    }
    m
}

/// Two distinct odd chains (p > q) inside so_{p+q} with the anti-diagonal
/// form. The two self-paired middle vectors are combined into a hyperbolic
/// pair; everything else pairs across the chains' ends.
fn so_odd_pair_local(p: usize, q: usize) -> RatMatrix {
    assert!(p > q && p % 2 == 1 && q % 2 == 1);
    let c = p + q;
    let mu = (p - 1) / 2;
    let mw = (q - 1) / 2;
    // block signs: su = 1, sw makes the two middle norms opposite
    let su = rat(1);
    let sw = if ((p + q) / 2) % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    };
    let sign = |i: usize| if i % 2 == 0 { rat(1) } else { rat(-1) };
    let sigma_u = su.clone() * sign(mu);
    let sigma_w = sw.clone() * sign(mw);
    assert_eq!(sigma_u.clone() + sigma_w.clone(), Rat::zero());

    // chain coordinates: 0..p are u_0..u_{p-1}, p..p+q are w_0..w_{q-1}
    let chain_dim = c;
    let u = |i: usize| i;
    let w = |j: usize| p + j;
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(c);
    let unit = |idx: usize, scale: Rat| {
        let mut v = vec![Rat::zero(); chain_dim];
        v[idx] = scale;
        v
    };
    // front half
    for i in 0..mu {
        cols.push(unit(u(i), rat(1)));
    }
    for j in 0..mw {
        cols.push(unit(w(j), rat(1)));
    }
    // x = u_mu + w_mw
    {
        let mut v = vec![Rat::zero(); chain_dim];
        v[u(mu)] = rat(1);
        v[w(mw)] = rat(1);
        cols.push(v);
    }
    // back half, positions half+1..=c (partners in reverse order)
    // y = (u_mu - w_mw) / (2 sigma_u)
    {
        let mut v = vec![Rat::zero(); chain_dim];
        let denom = rat(2) * sigma_u.clone();
        v[u(mu)] = Rat::one() / denom.clone();
        v[w(mw)] = -(Rat::one() / denom);
        cols.push(v);
    }
    for j in (0..mw).rev() {
        let scale = Rat::one() / (sw.clone() * sign(j));
        cols.push(unit(w(q - 1 - j), scale));
    }
    for i in (0..mu).rev() {
        let scale = Rat::one() / (su.clone() * sign(i));
        cols.push(unit(u(p - 1 - i), scale));
    }
    assert_eq!(cols.len(), c);
    let basis_change = RatMatrix::from_columns(&cols);

    // chain-model shift operator and Gram
    let mut shift = RatMatrix::zero(c, c);
    for i in 1..p {
        shift[(u(i - 1), u(i))] = rat(1);
    }
    for j in 1..q {
        shift[(w(j - 1), w(j))] = rat(1);
    }
    let gram = RatMatrix::from_fn(c, c, |a, b| {
        if a < p && b < p && a + b == p - 1 {
            su.clone() * sign(a)
        } else if a >= p && b >= p && (a - p) + (b - p) == q - 1 {
            sw.clone() * sign(a - p)
        } else {
            Rat::zero()
        }
    });
    let inv = basis_change.inverse().expect("basis change invertible");
    let local = inv.mul(&shift).mul(&basis_change);
    debug_assert_eq!(
        basis_change.transpose().mul(&gram).mul(&basis_change),
        so_form(c),
        "odd pair ({p},{q}) gram normalization"
    );
    local
}

/// Standard nilpotent representative of the orbit labelled by `p`.
pub fn standard_nilpotent(t: LieType, p: &Partition) -> Result<RatMatrix, ModelError> {
    if !crate::orbits::validate_partition(t, p)? {
        return Err(ModelError::Orbit(
            crate::orbits::OrbitError::InvalidPartition { t, p: p.clone() },
        ));
    }
    let n = t.defining_dim();
    if t.family == Family::A {
        // plain Jordan blocks
        let mut m = RatMatrix::zero(n, n);
        let mut off = 0;
        for &part in p.parts() {
            for i in 0..part - 1 {
                m[(off + i, off + i + 1)] = rat(1);
            }
            off += part;
        }
        return Ok(m);
    }

    let chunks = match t.family {
        Family::B | Family::D => chunks_so(p),
        Family::C => chunks_sp(p),
        _ => unreachable!(),
    };
    // allocate symmetric index subsets: fronts from the left, backs mirrored
    let mut lo = 0usize;
    let mut hi = n; // exclusive
    let mut placed: Vec<(Vec<usize>, RatMatrix)> = Vec::new();
    let mut middle_chunk: Option<Chunk> = None;
    for ch in &chunks {
        let is_middle = matches!(ch, Chunk::Middle(_)) && t.family != Family::C;
        if is_middle {
            assert!(middle_chunk.is_none(), "at most one middle chunk");
            middle_chunk = Some(*ch);
            continue;
        }
        let c = ch.size();
        let a = c / 2;
        debug_assert!(c % 2 == 0);
        let mut idx: Vec<usize> = (lo..lo + a).collect();
        idx.extend(hi - a..hi);
        lo += a;
        hi -= a;
        let local = match *ch {
            Chunk::GlPair(pp) => gl_pair_local(pp),
            Chunk::OddPair(pp, qq) => so_odd_pair_local(pp, qq),
            Chunk::Middle(pp) => sp_single_local(pp), // sp single even chain
        };
        placed.push((idx, local));
    }
    if let Some(Chunk::Middle(pp)) = middle_chunk {
        let idx: Vec<usize> = (lo..hi).collect();
        assert_eq!(idx.len(), pp);
        placed.push((idx, so_single_local(pp)));
    }

    let mut m = RatMatrix::zero(n, n);
    for (idx, local) in placed {
        for (a, &ga) in idx.iter().enumerate() {
            for (b, &gb) in idx.iter().enumerate() {
                if !local[(a, b)].is_zero() {
                    m[(ga, gb)] = local[(a, b)].clone();
                }
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::{self, LieType};

    #[test]
    fn so_single_local_is_orthogonal_regular() {
        for p in [1usize, 3, 5, 7, 9] {
            let m = so_single_local(p);
            let form = so_form(p);
            assert!(m.transpose().mul(&form).add(&form.mul(&m)).is_zero());
            if p > 1 {
                assert_eq!(m.jordan_type_nilpotent().unwrap().parts(), &[p]);
            }
        }
    }

    #[test]
    fn sp_single_local_is_symplectic_regular() {
        for p in [2usize, 4, 6, 8] {
            let m = sp_single_local(p);
            let form = sp_form(p);
            assert!(m.transpose().mul(&form).add(&form.mul(&m)).is_zero());
            assert_eq!(m.jordan_type_nilpotent().unwrap().parts(), &[p]);
        }
    }

    #[test]
    fn odd_pair_local_types() {
        for (p, q) in [
            (3usize, 1usize),
            (5, 1),
            (5, 3),
            (7, 1),
            (7, 3),
            (7, 5),
            (9, 1),
        ] {
            let m = so_odd_pair_local(p, q);
            let form = so_form(p + q);
            assert!(
                m.transpose().mul(&form).add(&form.mul(&m)).is_zero(),
                "({p},{q}) not skew"
            );
            assert_eq!(m.jordan_type_nilpotent().unwrap().parts(), &[p, q]);
        }
    }

    #[test]
    fn gl_pair_local_types() {
        for p in [1usize, 2, 3, 4] {
            let m = gl_pair_local(p);
            let form = so_form(2 * p);
            assert!(m.transpose().mul(&form).add(&form.mul(&m)).is_zero());
            let sp = sp_form(2 * p);
            assert!(m.transpose().mul(&sp).add(&sp.mul(&m)).is_zero());
            if p > 1 {
                assert_eq!(m.jordan_type_nilpotent().unwrap().parts(), &[p, p]);
            }
        }
    }

    #[test]
    fn representatives_cover_rank_five_orthogonal() {
        for t in [LieType::b(4), LieType::b(5), LieType::d(5)] {
            let form = so_form(t.defining_dim());
            for o in orbits::enumerate_orbits(t).unwrap() {
                let p = o.partition().unwrap();
                let e = standard_nilpotent(t, p).unwrap();
                assert!(e.transpose().mul(&form).add(&form.mul(&e)).is_zero());
                assert_eq!(e.jordan_type_nilpotent().unwrap().parts(), p.parts());
            }
        }
    }

    #[test]
    fn representatives_cover_rank_five_symplectic() {
        for t in [LieType::c(4), LieType::c(5)] {
            let form = sp_form(t.defining_dim());
            for o in orbits::enumerate_orbits(t).unwrap() {
                let p = o.partition().unwrap();
                let e = standard_nilpotent(t, p).unwrap();
                assert!(e.transpose().mul(&form).add(&form.mul(&e)).is_zero());
                assert_eq!(e.jordan_type_nilpotent().unwrap().parts(), p.parts());
            }
        }
    }
}

//! Partition calculus for nilpotent orbits of the classical Lie algebras.
//!
//! Classical nilpotent orbits are labelled by partitions of the defining
//! dimension subject to the usual parity constraints (B/D: even parts with
//! even multiplicity, C: odd parts with even multiplicity). On top of the
//! labels this module computes dimensions, the closure (dominance) order,
//! weighted Dynkin diagrams, heights, fundamental-group orders and DOT
//! exports of the Hasse diagram.

use num_integer::Integer;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Default cap on ranks for enumeration-style operations.
pub const DEFAULT_RANK_BOUND: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("type {0} is not classical")]
    ExceptionalType(LieType),
    #[error("partition {p} is not a nilpotent orbit label for {t}")]
    InvalidPartition { t: LieType, p: Partition },
    #[error("partitions label orbits of different algebras: {0} vs {1} boxes")]
    BoxMismatch(usize, usize),
    #[error("the zero orbit has no height")]
    ZeroOrbit,
    #[error("rank {0} exceeds the configured bound {1}")]
    RankBound(usize, usize),
    #[error("fundamental group for {t} in the {iso:?} form is not supported")]
    UnsupportedIsogeny { t: LieType, iso: Isogeny },
    #[error("rank {rank} is not valid for family {family:?}")]
    BadRank { family: Family, rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    F4,
    E6,
    E7,
    E8,
}

/// A simple Lie algebra type: classical family with rank, or an exceptional tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self, OrbitError> {
        let ok = match family {
            Family::A | Family::B | Family::C => rank >= 1,
            // D2 is not simple; D3 ≅ A3 is allowed as an internal model
            Family::D => rank >= 3,
            Family::G2 => rank == 2,
            Family::F4 => rank == 4,
            Family::E6 => rank == 6,
            Family::E7 => rank == 7,
            Family::E8 => rank == 8,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(OrbitError::BadRank { family, rank })
        }
    }

    pub fn a(rank: usize) -> Self {
        LieType::new(Family::A, rank).unwrap()
    }
    pub fn b(rank: usize) -> Self {
        LieType::new(Family::B, rank).unwrap()
    }
    pub fn c(rank: usize) -> Self {
        LieType::new(Family::C, rank).unwrap()
    }
    pub fn d(rank: usize) -> Self {
        LieType::new(Family::D, rank).unwrap()
    }
    pub fn g2() -> Self {
        LieType::new(Family::G2, 2).unwrap()
    }
    pub fn f4() -> Self {
        LieType::new(Family::F4, 4).unwrap()
    }
    pub fn e6() -> Self {
        LieType::new(Family::E6, 6).unwrap()
    }

    pub fn is_classical(&self) -> bool {
        matches!(self.family, Family::A | Family::B | Family::C | Family::D)
    }

    /// Size of the defining representation (partitions are of this number).
    pub fn defining_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B => 2 * self.rank + 1,
            Family::C | Family::D => 2 * self.rank,
            _ => panic!("defining_dim is only used for classical types"),
        }
    }

    pub fn algebra_dim(&self) -> usize {
        match self.family {
            Family::A => (self.rank + 1) * (self.rank + 1) - 1,
            Family::B | Family::D => {
                let n = self.defining_dim();
                n * (n - 1) / 2
            }
            Family::C => self.rank * (2 * self.rank + 1),
            Family::G2 => 14,
            Family::F4 => 52,
            Family::E6 => 78,
            Family::E7 => 133,
            Family::E8 => 248,
        }
    }

    pub fn algebra_rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.family {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => return write!(f, "G2"),
            Family::F4 => return write!(f, "F4"),
            Family::E6 => return write!(f, "E6"),
            Family::E7 => return write!(f, "E7"),
            Family::E8 => return write!(f, "E8"),
        };
        write!(f, "{letter}{}", self.rank)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VeryEvenTag {
    I,
    II,
}

impl fmt::Display for VeryEvenTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VeryEvenTag::I => write!(f, "I"),
            VeryEvenTag::II => write!(f, "II"),
        }
    }
}

/// A partition label for a classical nilpotent orbit. For type `D` with all
/// parts even there are two orbits per partition, distinguished by the tag;
/// a tag of `None` on a very even shape means "I-or-II undetermined" (matrix
/// identification alone cannot separate the pair).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    tag: Option<VeryEvenTag>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts, tag: None }
    }

    pub fn with_tag(parts: Vec<usize>, tag: VeryEvenTag) -> Self {
        let mut p = Partition::new(parts);
        p.tag = Some(tag);
        p
    }

    pub fn tagged(&self, tag: VeryEvenTag) -> Self {
        let mut p = self.clone();
        p.tag = Some(tag);
        p
    }

    pub fn untagged(&self) -> Self {
        let mut p = self.clone();
        p.tag = None;
        p
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn tag(&self) -> Option<VeryEvenTag> {
        self.tag
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_zero_orbit(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// All parts even (the shape admitting an I/II pair in type D).
    pub fn is_very_even_shape(&self) -> bool {
        !self.parts.is_empty() && self.parts.iter().all(|&p| p % 2 == 0)
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    pub fn distinct_odd_parts(&self) -> usize {
        self.parts
            .iter()
            .filter(|&&p| p % 2 == 1)
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn distinct_even_parts(&self) -> usize {
        self.parts
            .iter()
            .filter(|&&p| p % 2 == 0)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Count of odd parts with multiplicity.
    pub fn odd_parts_with_multiplicity(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 1).count()
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Vec<usize> {
        let max = self.parts.first().copied().unwrap_or(0);
        (1..=max)
            .map(|k| self.parts.iter().filter(|&&p| p >= k).count())
            .collect()
    }

    /// The multiset `{m-1, m-3, …, 1-m}` over all parts `m`, sorted descending.
    pub fn characteristic_eigenvalues(&self) -> Vec<i64> {
        let mut ev = Vec::with_capacity(self.total());
        for &m in &self.parts {
            let m = m as i64;
            let mut v = m - 1;
            while v >= 1 - m {
                ev.push(v);
                v -= 2;
            }
        }
        ev.sort_unstable_by(|a, b| b.cmp(a));
        ev
    }

    /// Dominance: all partial sums of `self` are ≤ those of `other`.
    pub fn dominates_leq(&self, other: &Partition) -> bool {
        let mut sa = 0usize;
        let mut sb = 0usize;
        let n = self.parts.len().max(other.parts.len());
        for i in 0..n {
            sa += self.parts.get(i).copied().unwrap_or(0);
            sb += other.parts.get(i).copied().unwrap_or(0);
            if sa > sb {
                return false;
            }
        }
        true
    }

    /// Parse `"3,2^2,1^2"` with optional `"_I"`/`"_II"` suffix.
    pub fn parse(s: &str) -> Option<Partition> {
        let (body, tag) = if let Some(b) = s.strip_suffix("_II") {
            (b, Some(VeryEvenTag::II))
        } else if let Some(b) = s.strip_suffix("_I") {
            (b, Some(VeryEvenTag::I))
        } else {
            (s, None)
        };
        let mut parts = Vec::new();
        for token in body.split(',') {
            let token = token.trim();
            if token.is_empty() {
                return None;
            }
            let (p, m) = match token.split_once('^') {
                Some((p, m)) => (p.trim().parse().ok()?, m.trim().parse().ok()?),
                None => (token.parse().ok()?, 1usize),
            };
            if p == 0 || m == 0 {
                return None;
            }
            for _ in 0..m {
                parts.push(p);
            }
        }
        let mut out = Partition::new(parts);
        out.tag = tag;
        Some(out)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut mult = 0;
            while i < self.parts.len() && self.parts[i] == p {
                mult += 1;
                i += 1;
            }
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if mult == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{mult}")?;
            }
        }
        if let Some(tag) = self.tag {
            write!(f, "_{tag}")?;
        }
        Ok(())
    }
}

/// Identifier of a nilpotent orbit: a typed partition for the classical
/// families, or a labelled exceptional orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitId {
    Classical { t: LieType, p: Partition },
    Exceptional { t: LieType, label: String },
}

impl OrbitId {
    pub fn classical(t: LieType, p: Partition) -> Result<Self, OrbitError> {
        if !validate_partition(t, &p)? {
            return Err(OrbitError::InvalidPartition { t, p });
        }
        Ok(OrbitId::Classical { t, p })
    }

    pub fn exceptional(t: LieType, label: &str) -> Self {
        OrbitId::Exceptional {
            t,
            label: label.to_string(),
        }
    }

    pub fn lie_type(&self) -> LieType {
        match self {
            OrbitId::Classical { t, .. } | OrbitId::Exceptional { t, .. } => *t,
        }
    }

    pub fn partition(&self) -> Option<&Partition> {
        match self {
            OrbitId::Classical { p, .. } => Some(p),
            OrbitId::Exceptional { .. } => None,
        }
    }
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitId::Classical { p, .. } => write!(f, "({p})"),
            OrbitId::Exceptional { label, .. } => write!(f, "{label}"),
        }
    }
}

/// Weighted Dynkin diagram: one label in {0,1,2} per node, Bourbaki order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDynkinDiagram {
    pub labels: Vec<usize>,
}

impl fmt::Display for WeightedDynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", strs.join(","))
    }
}

/// Isogeny form in which fundamental groups are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Isogeny {
    Adjoint,
    SimplyConnected,
    /// SO_n for the orthogonal series, Sp_2n for the symplectic one.
    Special,
}

fn require_classical(t: LieType) -> Result<(), OrbitError> {
    if t.is_classical() {
        Ok(())
    } else {
        Err(OrbitError::ExceptionalType(t))
    }
}

/// Does `p` label a nilpotent orbit of `t`?
pub fn validate_partition(t: LieType, p: &Partition) -> Result<bool, OrbitError> {
    require_classical(t)?;
    if p.total() != t.defining_dim() {
        return Ok(false);
    }
    let ok = match t.family {
        Family::A => true,
        Family::B | Family::D => {
            // even parts occur with even multiplicity
            p.parts()
                .iter()
                .collect::<BTreeSet<_>>()
                .iter()
                .all(|&&q| q % 2 == 1 || p.multiplicity(q) % 2 == 0)
        }
        Family::C => p
            .parts()
            .iter()
            .collect::<BTreeSet<_>>()
            .iter()
            .all(|&&q| q % 2 == 0 || p.multiplicity(q) % 2 == 0),
        _ => unreachable!(),
    };
    if !ok {
        return Ok(false);
    }
    // tag sanity: a tag is only meaningful for very even D shapes
    if p.tag().is_some() && !(t.family == Family::D && p.is_very_even_shape()) {
        return Ok(false);
    }
    Ok(true)
}

fn checked(t: LieType, p: &Partition) -> Result<(), OrbitError> {
    if validate_partition(t, p)? {
        Ok(())
    } else {
        Err(OrbitError::InvalidPartition { t, p: p.clone() })
    }
}

/// Exact orbit dimension from the partition.
pub fn orbit_dimension(t: LieType, p: &Partition) -> Result<usize, OrbitError> {
    checked(t, p)?;
    let conj_sq: usize = p.conjugate().iter().map(|&c| c * c).sum();
    let odd = p.odd_parts_with_multiplicity();
    Ok(match t.family {
        Family::A => {
            let n = t.defining_dim();
            n * n - conj_sq
        }
        Family::B | Family::D => {
            let cent = (conj_sq - odd) / 2;
            t.algebra_dim() - cent
        }
        Family::C => {
            let cent = (conj_sq + odd) / 2;
            t.algebra_dim() - cent
        }
        _ => unreachable!(),
    })
}

/// Closure order: is `O(p)` contained in the closure of `O(q)`?
///
/// Implemented as dominance between valid partitions; two very even
/// partitions with equal parts additionally require matching tags.
pub fn closure_leq(t: LieType, p: &Partition, q: &Partition) -> Result<bool, OrbitError> {
    checked(t, p)?;
    checked(t, q)?;
    if p.total() != q.total() {
        return Err(OrbitError::BoxMismatch(p.total(), q.total()));
    }
    if p.parts() == q.parts() {
        let both_very_even = t.family == Family::D && p.is_very_even_shape();
        if both_very_even && p.tag() != q.tag() {
            return Ok(false);
        }
        return Ok(true);
    }
    Ok(p.dominates_leq(q))
}

/// Dominant characteristic for the weighted Dynkin diagram: the first `rank`
/// eigenvalues for B/C/D (with the D-tag twist), or all of them for A.
fn dominant_characteristic(t: LieType, p: &Partition) -> Vec<i64> {
    let ev = p.characteristic_eigenvalues();
    match t.family {
        Family::A => ev,
        Family::B | Family::C => ev[..t.rank].to_vec(),
        Family::D => {
            let mut h = ev[..t.rank].to_vec();
            // very even: the last entry is nonzero and the I/II tag picks its sign
            if p.is_very_even_shape() && p.tag() == Some(VeryEvenTag::I) {
                let last = h.last_mut().unwrap();
                *last = -*last;
            }
            h
        }
        _ => unreachable!(),
    }
}

/// Weighted Dynkin diagram of the orbit, labels in Bourbaki node order.
pub fn weighted_dynkin(t: LieType, p: &Partition) -> Result<WeightedDynkinDiagram, OrbitError> {
    checked(t, p)?;
    let h = dominant_characteristic(t, p);
    let n = t.rank;
    let mut labels = Vec::with_capacity(n);
    match t.family {
        Family::A => {
            for i in 0..n {
                labels.push((h[i] - h[i + 1]) as usize);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                labels.push((h[i] - h[i + 1]) as usize);
            }
            labels.push(h[n - 1] as usize);
        }
        Family::C => {
            for i in 0..n - 1 {
                labels.push((h[i] - h[i + 1]) as usize);
            }
            labels.push((2 * h[n - 1]) as usize);
        }
        Family::D => {
            for i in 0..n - 1 {
                labels.push((h[i] - h[i + 1]) as usize);
            }
            labels.push((h[n - 2] + h[n - 1]) as usize);
        }
        _ => unreachable!(),
    }
    debug_assert!(labels.iter().all(|&l| l <= 2));
    Ok(WeightedDynkinDiagram { labels })
}

/// Height of the orbit: the highest root evaluated on the dominant
/// characteristic.
pub fn orbit_height(t: LieType, p: &Partition) -> Result<usize, OrbitError> {
    checked(t, p)?;
    if p.is_zero_orbit() {
        return Err(OrbitError::ZeroOrbit);
    }
    let ev = p.characteristic_eigenvalues();
    let h = match t.family {
        Family::A => ev[0] - ev[ev.len() - 1],
        Family::B | Family::D => ev[0] + ev[1],
        Family::C => 2 * ev[0],
        _ => unreachable!(),
    };
    Ok(h as usize)
}

/// Order of the fundamental group of the orbit variety, per isogeny form.
///
/// Orthogonal types: the `Special` form counts components of the stabiliser
/// in SO_n; the `SimplyConnected` form the components in Spin_n, where the
/// central element stays outside the identity component exactly when no odd
/// part repeats. Symplectic: 2^{#distinct even parts}. Type A: the gcd of
/// the parts, identical across the forms.
pub fn fundamental_group_order(
    t: LieType,
    p: &Partition,
    iso: Isogeny,
) -> Result<usize, OrbitError> {
    checked(t, p)?;
    match t.family {
        Family::A => {
            let d = p.parts().iter().fold(0usize, |acc, &x| acc.gcd(&x));
            Ok(d.max(1))
        }
        Family::C => match iso {
            Isogeny::SimplyConnected | Isogeny::Special => Ok(1 << p.distinct_even_parts()),
            Isogeny::Adjoint => Err(OrbitError::UnsupportedIsogeny { t, iso }),
        },
        Family::B | Family::D => {
            let b = p.distinct_odd_parts();
            let so_order = 1usize << b.saturating_sub(1);
            match iso {
                Isogeny::Special => Ok(so_order),
                Isogeny::Adjoint if t.family == Family::B => Ok(so_order),
                Isogeny::Adjoint => Err(OrbitError::UnsupportedIsogeny { t, iso }),
                Isogeny::SimplyConnected => {
                    let repeated_odd = p
                        .parts()
                        .iter()
                        .collect::<BTreeSet<_>>()
                        .iter()
                        .any(|&&q| q % 2 == 1 && p.multiplicity(q) >= 2);
                    Ok(if repeated_odd { so_order } else { 2 * so_order })
                }
            }
        }
        _ => Err(OrbitError::ExceptionalType(t)),
    }
}

/// Partition of the minimal nonzero nilpotent orbit.
pub fn minimal_orbit_partition(t: LieType) -> Result<Partition, OrbitError> {
    require_classical(t)?;
    let n = t.defining_dim();
    Ok(match t.family {
        Family::A => {
            let mut parts = vec![2];
            parts.extend(std::iter::repeat(1).take(n - 2));
            Partition::new(parts)
        }
        Family::C => {
            let mut parts = vec![2];
            parts.extend(std::iter::repeat(1).take(n - 2));
            Partition::new(parts)
        }
        Family::B | Family::D => {
            if n == 3 {
                // so_3: the unique nonzero orbit is regular
                Partition::new(vec![3])
            } else {
                let mut parts = vec![2, 2];
                parts.extend(std::iter::repeat(1).take(n - 4));
                Partition::new(parts)
            }
        }
        _ => unreachable!(),
    })
}

fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let top = n.min(max);
        for p in (1..=top).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All nilpotent orbits of `t`, very even D-partitions listed twice (I, II).
/// Sorted by (dimension, partition, tag) for deterministic output.
pub fn enumerate_orbits(t: LieType) -> Result<Vec<OrbitId>, OrbitError> {
    enumerate_orbits_bounded(t, DEFAULT_RANK_BOUND)
}

pub fn enumerate_orbits_bounded(t: LieType, bound: usize) -> Result<Vec<OrbitId>, OrbitError> {
    require_classical(t)?;
    if t.rank > bound {
        return Err(OrbitError::RankBound(t.rank, bound));
    }
    let n = t.defining_dim();
    let mut out = Vec::new();
    for parts in partitions_of(n) {
        let p = Partition::new(parts);
        if !validate_partition(t, &p)? {
            continue;
        }
        if t.family == Family::D && p.is_very_even_shape() {
            out.push(OrbitId::Classical {
                t,
                p: p.tagged(VeryEvenTag::I),
            });
            out.push(OrbitId::Classical {
                t,
                p: p.tagged(VeryEvenTag::II),
            });
        } else {
            out.push(OrbitId::Classical { t, p });
        }
    }
    out.sort_by_key(|o| {
        let p = o.partition().unwrap().clone();
        (orbit_dimension(t, &p).unwrap(), p)
    });
    Ok(out)
}

/// Covering relations of the closure order among the orbits of `t`.
pub fn hasse_covers(t: LieType) -> Result<Vec<(OrbitId, OrbitId)>, OrbitError> {
    let orbits = enumerate_orbits(t)?;
    let leq = |a: &OrbitId, b: &OrbitId| {
        closure_leq(t, a.partition().unwrap(), b.partition().unwrap()).unwrap()
    };
    let mut covers = Vec::new();
    for hi in &orbits {
        for lo in &orbits {
            if lo == hi || !leq(lo, hi) {
                continue;
            }
            let intermediate = orbits
                .iter()
                .any(|mid| mid != lo && mid != hi && leq(lo, mid) && leq(mid, hi));
            if !intermediate {
                covers.push((hi.clone(), lo.clone()));
            }
        }
    }
    Ok(covers)
}

/// DOT digraph of the covering relation; edges point from an orbit to the
/// orbits it covers.
pub fn hasse_dot(t: LieType) -> Result<String, OrbitError> {
    let orbits = enumerate_orbits(t)?;
    let covers = hasse_covers(t)?;
    let mut s = String::new();
    s.push_str(&format!(
        "digraph nilpotent_orbits_{}{} {{\n",
        match t.family {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            _ => unreachable!(),
        },
        t.rank
    ));
    for o in orbits.iter().rev() {
        let p = o.partition().unwrap();
        s.push_str(&format!("  \"{p}\";\n"));
    }
    let mut lines: Vec<String> = covers
        .iter()
        .map(|(hi, lo)| {
            format!(
                "  \"{}\" -> \"{}\";",
                hi.partition().unwrap(),
                lo.partition().unwrap()
            )
        })
        .collect();
    lines.sort();
    for l in lines {
        s.push_str(&l);
        s.push('\n');
    }
    s.push_str("}\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    // Brute-force oracle for validity: the parity constraints stated per family.
    fn valid_oracle(t: LieType, parts: &[usize]) -> bool {
        let sum: usize = parts.iter().sum();
        if sum != t.defining_dim() {
            return false;
        }
        let distinct: BTreeSet<usize> = parts.iter().copied().collect();
        match t.family {
            Family::A => true,
            Family::B | Family::D => distinct
                .iter()
                .all(|&q| q % 2 == 1 || parts.iter().filter(|&&x| x == q).count() % 2 == 0),
            Family::C => distinct
                .iter()
                .all(|&q| q % 2 == 0 || parts.iter().filter(|&&x| x == q).count() % 2 == 0),
            _ => unreachable!(),
        }
    }

    #[test]
    fn validity_examples() {
        assert!(validate_partition(LieType::b(3), &pt(&[2, 2, 1, 1, 1])).unwrap());
        assert!(validate_partition(LieType::c(4), &pt(&[2, 1, 1, 1, 1, 1, 1])).unwrap());
        // odd number of 2-blocks cannot be skew-symmetric
        assert!(!validate_partition(LieType::b(3), &pt(&[2, 2, 2, 1])).unwrap());
        assert!(valid_oracle(LieType::b(3), &[2, 2, 1, 1, 1]));
        assert!(!valid_oracle(LieType::b(3), &[2, 2, 2, 1]));
        assert!(matches!(
            validate_partition(LieType::g2(), &pt(&[3])),
            Err(OrbitError::ExceptionalType(_))
        ));
    }

    #[test]
    fn dimension_examples() {
        // minimal symplectic orbit has dimension 2n
        for n in 1..=6 {
            let t = LieType::c(n);
            let p = minimal_orbit_partition(t).unwrap();
            assert_eq!(orbit_dimension(t, &p).unwrap(), 2 * n);
        }
        // (2^{2k}, 1^m) has dimension 2k(2k+m-1)
        for (k, m) in [(1usize, 3usize), (2, 0), (2, 1), (2, 2), (3, 1)] {
            let boxes = 4 * k + m;
            let t = if boxes % 2 == 1 {
                LieType::b((boxes - 1) / 2)
            } else {
                LieType::d(boxes / 2)
            };
            let mut parts = vec![2; 2 * k];
            parts.extend(std::iter::repeat(1).take(m));
            let p = pt(&parts);
            assert_eq!(orbit_dimension(t, &p).unwrap(), 2 * k * (2 * k + m - 1));
        }
        // zero orbit
        assert_eq!(orbit_dimension(LieType::b(4), &pt(&[1; 9])).unwrap(), 0);
        // (3,2,2,1,1) in so_9
        assert_eq!(
            orbit_dimension(LieType::b(4), &pt(&[3, 2, 2, 1, 1])).unwrap(),
            20
        );
    }

    #[test]
    fn closure_examples() {
        let b3 = LieType::b(3);
        let p = pt(&[2, 2, 1, 1, 1]);
        assert!(closure_leq(b3, &p, &p).unwrap());
        assert!(closure_leq(b3, &p, &pt(&[3, 1, 1, 1, 1])).unwrap());
        // the chain of 2-block orbits
        for n in [8usize, 9, 12, 13] {
            let t = if n % 2 == 1 {
                LieType::b(n / 2)
            } else {
                LieType::d(n / 2)
            };
            let mut prev: Option<Partition> = None;
            for k in 1..=n / 4 {
                let mut parts = vec![2; 2 * k];
                parts.extend(std::iter::repeat(1).take(n - 4 * k));
                let p = pt(&parts);
                if let Some(q) = prev {
                    assert!(closure_leq(t, &q, &p).unwrap());
                }
                prev = Some(p);
            }
        }
    }

    #[test]
    fn very_even_tags_in_closure() {
        let d4 = LieType::d(4);
        let i = Partition::with_tag(vec![2, 2, 2, 2], VeryEvenTag::I);
        let ii = Partition::with_tag(vec![2, 2, 2, 2], VeryEvenTag::II);
        assert!(closure_leq(d4, &i, &i).unwrap());
        assert!(!closure_leq(d4, &i, &ii).unwrap());
        // both sit over the (untagged) minimal orbit
        let min = pt(&[2, 2, 1, 1, 1, 1]);
        assert!(closure_leq(d4, &min, &i).unwrap());
        assert!(closure_leq(d4, &min, &ii).unwrap());
    }

    #[test]
    fn weighted_dynkin_d4() {
        let d4 = LieType::d(4);
        assert_eq!(
            weighted_dynkin(d4, &pt(&[3, 1, 1, 1, 1, 1]))
                .unwrap()
                .labels,
            vec![2, 0, 0, 0]
        );
        assert_eq!(
            weighted_dynkin(d4, &Partition::with_tag(vec![2; 4], VeryEvenTag::I))
                .unwrap()
                .labels,
            vec![0, 0, 2, 0]
        );
        assert_eq!(
            weighted_dynkin(d4, &Partition::with_tag(vec![2; 4], VeryEvenTag::II))
                .unwrap()
                .labels,
            vec![0, 0, 0, 2]
        );
        assert_eq!(
            weighted_dynkin(d4, &pt(&[2, 2, 1, 1, 1, 1]))
                .unwrap()
                .labels,
            vec![0, 1, 0, 0]
        );
    }

    #[test]
    fn wdd_reconstructs_characteristic() {
        // reconstruct the eigenvalue multiset from the diagram and compare
        for t in [LieType::b(3), LieType::c(3), LieType::d(4), LieType::a(4)] {
            for o in enumerate_orbits(t).unwrap() {
                let p = o.partition().unwrap();
                let wdd = weighted_dynkin(t, p).unwrap();
                assert!(wdd.labels.iter().all(|&l| l <= 2));
                let h = dominant_characteristic(t, p);
                // rebuild h from labels
                let n = t.rank;
                let mut rebuilt = vec![0i64; n];
                match t.family {
                    Family::B => {
                        rebuilt[n - 1] = wdd.labels[n - 1] as i64;
                        for i in (0..n - 1).rev() {
                            rebuilt[i] = rebuilt[i + 1] + wdd.labels[i] as i64;
                        }
                    }
                    Family::C => {
                        rebuilt[n - 1] = wdd.labels[n - 1] as i64 / 2;
                        for i in (0..n - 1).rev() {
                            rebuilt[i] = rebuilt[i + 1] + wdd.labels[i] as i64;
                        }
                    }
                    Family::D => {
                        let diff = wdd.labels[n - 2] as i64;
                        let sum = wdd.labels[n - 1] as i64;
                        rebuilt[n - 1] = (sum - diff) / 2;
                        rebuilt[n - 2] = (sum + diff) / 2;
                        for i in (0..n - 2).rev() {
                            rebuilt[i] = rebuilt[i + 1] + wdd.labels[i] as i64;
                        }
                    }
                    Family::A => {
                        // defined up to a common shift; compare successive differences
                        let ev = p.characteristic_eigenvalues();
                        for i in 0..n {
                            assert_eq!(ev[i] - ev[i + 1], wdd.labels[i] as i64);
                        }
                        continue;
                    }
                    _ => unreachable!(),
                }
                assert_eq!(rebuilt, h);
            }
        }
    }

    #[test]
    fn height_examples() {
        // minimal orbits have height 2
        for t in [
            LieType::a(3),
            LieType::b(2),
            LieType::b(4),
            LieType::c(3),
            LieType::d(4),
        ] {
            let p = minimal_orbit_partition(t).unwrap();
            assert_eq!(orbit_height(t, &p).unwrap(), 2);
        }
        // (3, 2^{2k-2}, 1^{m+1}) has height 3
        assert_eq!(
            orbit_height(LieType::b(4), &pt(&[3, 2, 2, 1, 1])).unwrap(),
            3
        );
        assert_eq!(
            orbit_height(LieType::d(5), &pt(&[3, 2, 2, 1, 1, 1])).unwrap(),
            3
        );
        // (3,3,1) in so_7 has height 4
        assert_eq!(orbit_height(LieType::b(3), &pt(&[3, 3, 1])).unwrap(), 4);
        // regular orbit of B_n has height 4n-2 (twice the Coxeter number minus 2)
        for n in 2..=5 {
            assert_eq!(
                orbit_height(LieType::b(n), &pt(&[2 * n + 1])).unwrap(),
                4 * n - 2
            );
        }
        assert!(matches!(
            orbit_height(LieType::b(2), &pt(&[1; 5])),
            Err(OrbitError::ZeroOrbit)
        ));
    }

    #[test]
    fn pi1_examples() {
        use Isogeny::*;
        // O(2^{2k},1^m) in SO_N, odd m >= 3: trivial
        assert_eq!(
            fundamental_group_order(LieType::b(5), &pt(&[2, 2, 2, 2, 1, 1, 1]), SimplyConnected)
                .unwrap(),
            1
        );
        // O(3,2^{2k-2},1^m), m >= 2
        assert_eq!(
            fundamental_group_order(LieType::b(4), &pt(&[3, 2, 2, 1, 1]), SimplyConnected).unwrap(),
            2
        );
        // O(2^{2k},1) in SO_{4k+1} and its projection orbit
        assert_eq!(
            fundamental_group_order(LieType::b(4), &pt(&[2, 2, 2, 2, 1]), SimplyConnected).unwrap(),
            2
        );
        assert_eq!(
            fundamental_group_order(LieType::d(4), &pt(&[3, 2, 2, 1]), SimplyConnected).unwrap(),
            4
        );
        // O(3,1^4) in SO_7
        assert_eq!(
            fundamental_group_order(LieType::b(3), &pt(&[3, 1, 1, 1, 1]), SimplyConnected).unwrap(),
            2
        );
        // very even orbits
        assert_eq!(
            fundamental_group_order(
                LieType::d(4),
                &Partition::with_tag(vec![2; 4], VeryEvenTag::I),
                SimplyConnected
            )
            .unwrap(),
            2
        );
        // symplectic minimal orbit: Z_2
        assert_eq!(
            fundamental_group_order(LieType::c(3), &pt(&[2, 1, 1, 1, 1]), Special).unwrap(),
            2
        );
        // regular orbit of sl_3: Z_3
        assert_eq!(
            fundamental_group_order(LieType::a(2), &pt(&[3]), SimplyConnected).unwrap(),
            3
        );
        // SO form differs from Spin form where no odd part repeats
        assert_eq!(
            fundamental_group_order(LieType::b(4), &pt(&[2, 2, 2, 2, 1]), Special).unwrap(),
            1
        );
        assert!(fundamental_group_order(LieType::d(4), &pt(&[3, 2, 2, 1]), Adjoint).is_err());
    }

    #[test]
    fn enumerate_small_types() {
        // so_3 has exactly the zero and the regular orbit
        let b1 = enumerate_orbits(LieType::b(1)).unwrap();
        assert_eq!(b1.len(), 2);
        // brute force count for B3: partitions of 7 with B-parity
        let mut count = 0;
        for parts in partitions_of(7) {
            if valid_oracle(LieType::b(3), &parts) {
                count += 1;
            }
        }
        let b3 = enumerate_orbits(LieType::b(3)).unwrap();
        assert_eq!(b3.len(), count);
        assert_eq!(count, 7);
        // D4: exactly two orbits for (2^4), twelve in total
        let d4 = enumerate_orbits(LieType::d(4)).unwrap();
        let very_even: Vec<_> = d4
            .iter()
            .filter(|o| o.partition().unwrap().parts() == [2, 2, 2, 2])
            .collect();
        assert_eq!(very_even.len(), 2);
        assert_eq!(d4.len(), 12);
        // A1: two orbits
        assert_eq!(enumerate_orbits(LieType::a(1)).unwrap().len(), 2);
    }

    #[test]
    fn closure_is_partial_order() {
        for t in [LieType::b(3), LieType::c(3), LieType::d(4), LieType::a(4)] {
            let orbits = enumerate_orbits(t).unwrap();
            let leq = |a: &OrbitId, b: &OrbitId| {
                closure_leq(t, a.partition().unwrap(), b.partition().unwrap()).unwrap()
            };
            for a in &orbits {
                assert!(leq(a, a));
                for b in &orbits {
                    if leq(a, b) && leq(b, a) {
                        assert_eq!(a, b);
                    }
                    for c in &orbits {
                        if leq(a, b) && leq(b, c) {
                            assert!(leq(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closure_implies_height_monotone() {
        for t in [LieType::b(3), LieType::c(3), LieType::d(4)] {
            let orbits = enumerate_orbits(t).unwrap();
            for a in &orbits {
                for b in &orbits {
                    let (pa, pb) = (a.partition().unwrap(), b.partition().unwrap());
                    if pa.is_zero_orbit() || pb.is_zero_orbit() {
                        continue;
                    }
                    if closure_leq(t, pa, pb).unwrap() {
                        assert!(orbit_height(t, pa).unwrap() <= orbit_height(t, pb).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn hasse_b3_and_d4() {
        let dot = hasse_dot(LieType::b(3)).unwrap();
        assert!(dot.starts_with("digraph nilpotent_orbits_B3 {"));
        assert!(dot.contains("\"3,2^2\" -> \"3,1^4\";"));
        // D4: the minimal orbit is covered by (3,1^5), (2^4)_I and (2^4)_II
        let covers = hasse_covers(LieType::d(4)).unwrap();
        let min = pt(&[2, 2, 1, 1, 1, 1]);
        let over_min: BTreeSet<String> = covers
            .iter()
            .filter(|(_, lo)| lo.partition().unwrap() == &min)
            .map(|(hi, _)| hi.partition().unwrap().to_string())
            .collect();
        let expect: BTreeSet<String> = ["3,1^5", "2^4_I", "2^4_II"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(over_min, expect);
        // B1: a single edge
        let covers_b1 = hasse_covers(LieType::b(1)).unwrap();
        assert_eq!(covers_b1.len(), 1);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        /// Random valid partitions at ranks beyond the exhaustive sweeps:
        /// labels stay in {0,1,2}, nonzero orbits have height ≥ 2, and
        /// closure containment never decreases the height.
        #[test]
        fn prop_wdd_and_height(seed in 0u64..10_000) {
            let mut rng = crate::rng::SplitMix64::new(seed);
            let fam = match rng.below(4) {
                0 => Family::A,
                1 => Family::B,
                2 => Family::C,
                _ => Family::D,
            };
            let rank = 7 + rng.below(4) as usize;
            let t = LieType::new(fam, rank).unwrap();
            let n = t.defining_dim();
            let random_valid = |rng: &mut crate::rng::SplitMix64| loop {
                let mut left = n;
                let mut parts = Vec::new();
                while left > 0 {
                    let p = 1 + rng.below(left.min(6) as u64) as usize;
                    parts.push(p);
                    left -= p;
                }
                let p = Partition::new(parts);
                if validate_partition(t, &p).unwrap() {
                    return p;
                }
            };
            let p = random_valid(&mut rng);
            let q = random_valid(&mut rng);
            let wdd = weighted_dynkin(t, &p).unwrap();
            proptest::prop_assert!(wdd.labels.iter().all(|&l| l <= 2));
            if !p.is_zero_orbit() {
                proptest::prop_assert!(orbit_height(t, &p).unwrap() >= 2);
            }
            if !p.is_zero_orbit() && !q.is_zero_orbit() && closure_leq(t, &p, &q).unwrap() {
                proptest::prop_assert!(
                    orbit_height(t, &p).unwrap() <= orbit_height(t, &q).unwrap()
                );
                proptest::prop_assert!(
                    orbit_dimension(t, &p).unwrap() <= orbit_dimension(t, &q).unwrap()
                );
            }
        }
    }

    #[test]
    fn rank_bound_is_enforced() {
        assert!(matches!(
            enumerate_orbits(LieType::b(13)),
            Err(OrbitError::RankBound(13, _))
        ));
        assert!(enumerate_orbits_bounded(LieType::b(13), 13).is_ok());
    }

    #[test]
    fn partition_parse_roundtrip() {
        for s in ["3,2^2,1^2", "2^4_I", "7", "2,1^5"] {
            let p = Partition::parse(s).unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!(Partition::parse("").is_none());
        assert!(Partition::parse("0,1").is_none());
    }
}

//! The quantum algebra of observables: Λ(Φ) with the Clifford product for the
//! rescaled inner product ħ·g.
//!
//! Two independent routes compute the product. [`clifford_product`] is the
//! fast one: a bitmask product for diagonal metrics and a recursive
//! contract-or-append expansion otherwise. [`wick_product`] enumerates every
//! set of contractions between the factors, which is factorially slower but is
//! literally Wick's theorem; it is kept as a verifier.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::wedge;
use crate::blade::Blade;
use crate::metric::Metric;
use crate::multivector::Multivector;
use crate::{Error, Result};

/// Scale ħ ≥ 0 applied to g. ħ = 0 reduces the Clifford product to the wedge.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct DeformationParameter(f64);

impl DeformationParameter {
    pub const ZERO: DeformationParameter = DeformationParameter(0.0);
    pub const ONE: DeformationParameter = DeformationParameter(1.0);

    pub fn new(hbar: f64) -> Result<Self> {
        if hbar.is_finite() && hbar >= 0.0 {
            Ok(DeformationParameter(hbar))
        } else {
            Err(Error::InvalidHbar(hbar))
        }
    }

    pub fn hbar(self) -> f64 {
        self.0
    }
}

impl Default for DeformationParameter {
    fn default() -> Self {
        Self::ONE
    }
}

#[inline]
fn parity(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn check(a: &Multivector, b: &Multivector, metric: &Metric) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim(), b.dim()));
    }
    metric.check_dim(a.dim())
}

/// Clifford product `AB` for the metric ħ·g.
pub fn clifford_product(
    a: &Multivector,
    b: &Multivector,
    metric: &Metric,
    h: DeformationParameter,
) -> Result<Multivector> {
    check(a, b, metric)?;
    let hbar = h.hbar();
    if hbar == 0.0 {
        return wedge(a, b);
    }
    if metric.is_diagonal() {
        return Ok(diagonal_product(a, b, metric, hbar));
    }
    let mut memo = BTreeMap::new();
    let mut out = Multivector::zero(a.dim());
    for (blade, c) in a.terms() {
        let prod = blade_times(blade, b, metric, hbar, &mut memo);
        out = out.add_scaled(&prod, c);
    }
    Ok(out)
}

/// For orthogonal basis vectors `e_I e_J = sign · Π_{k ∈ I∩J} ħ g_kk · e_{I △ J}`.
fn diagonal_product(a: &Multivector, b: &Multivector, metric: &Metric, hbar: f64) -> Multivector {
    let mut out = Multivector::zero(a.dim());
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            let common = Blade::from_bits(ba.bits() & bb.bits());
            let mut w = ba.reorder_sign(bb) * ca * cb;
            for k in common.indices() {
                w *= hbar * metric.g(k, k);
            }
            out.add_term(Blade::from_bits(ba.bits() ^ bb.bits()), w);
        }
    }
    out
}

/// `e_i X = e_i ∧ X + e_i ⌋ X`.
fn vector_times(i: usize, x: &Multivector, metric: &Metric, hbar: f64) -> Multivector {
    let mut out = Multivector::zero(x.dim());
    for (blade, c) in x.terms() {
        if !blade.contains(i) {
            out.add_term(blade.with(i), parity(blade.position(i)) * c);
        }
        for l in blade.indices() {
            let g = metric.g(i, l);
            if g != 0.0 {
                out.add_term(blade.without(l), parity(blade.position(l)) * hbar * g * c);
            }
        }
    }
    out
}

/// `e_I B` via `e_i ∧ R = e_i R − e_i ⌋ R` with `e_I = e_i ∧ e_R`, `i = min I`.
fn blade_times(
    blade: Blade,
    b: &Multivector,
    metric: &Metric,
    hbar: f64,
    memo: &mut BTreeMap<Blade, Multivector>,
) -> Multivector {
    if blade.is_scalar() {
        return b.clone();
    }
    if let Some(hit) = memo.get(&blade) {
        return hit.clone();
    }
    let i = blade.indices().next().unwrap();
    let rest = blade.without(i);
    let tail = blade_times(rest, b, metric, hbar, memo);
    let mut out = vector_times(i, &tail, metric, hbar);
    for l in rest.indices() {
        let g = metric.g(i, l);
        if g == 0.0 {
            continue;
        }
        let inner = blade_times(rest.without(l), b, metric, hbar, memo);
        out = out.add_scaled(&inner, -parity(rest.position(l)) * hbar * g);
    }
    memo.insert(blade, out.clone());
    out
}

/// Clifford product by explicit enumeration of all contraction sets between
/// the two factors (Wick's theorem), for the metric ħ·g.
pub fn wick_product(
    a: &Multivector,
    b: &Multivector,
    metric: &Metric,
    h: DeformationParameter,
) -> Result<Multivector> {
    check(a, b, metric)?;
    Ok(wick_sum(a, b, metric, h.hbar(), None))
}

/// Exact first-order coefficient `d/dħ AB |_{ħ=0}`: the single-contraction
/// Wick terms for the metric g.
pub fn deformation_derivative(
    a: &Multivector,
    b: &Multivector,
    metric: &Metric,
) -> Result<Multivector> {
    check(a, b, metric)?;
    Ok(wick_sum(a, b, metric, 1.0, Some(1)))
}

/// `[A, B] = AB − BA`.
pub fn clifford_commutator(
    a: &Multivector,
    b: &Multivector,
    metric: &Metric,
    h: DeformationParameter,
) -> Result<Multivector> {
    let ab = clifford_product(a, b, metric, h)?;
    let ba = clifford_product(b, a, metric, h)?;
    Ok(&ab - &ba)
}

fn wick_sum(
    a: &Multivector,
    b: &Multivector,
    metric: &Metric,
    hbar: f64,
    order: Option<usize>,
) -> Multivector {
    let mut out = Multivector::zero(a.dim());
    for (ba, ca) in a.terms() {
        let left: Vec<usize> = ba.indices().collect();
        for (bb, cb) in b.terms() {
            let right: Vec<usize> = bb.indices().collect();
            let mut pairs = Vec::new();
            let mut used = alloc::vec![false; right.len()];
            enumerate_matchings(&left, &right, 0, &mut used, &mut pairs, &mut |pairs| {
                if order.is_some_and(|k| k != pairs.len()) {
                    return;
                }
                let mut w = ca * cb;
                for &(x, y) in pairs {
                    w *= hbar * metric.g(left[x], right[y]);
                }
                if w == 0.0 {
                    return;
                }
                if let Some((blade, sign)) = contracted_term(&left, &right, pairs) {
                    out.add_term(blade, sign * w);
                }
            });
        }
    }
    out
}

type Pairs = [(usize, usize)];

/// Visits every partial matching between positions of `left` and `right`.
fn enumerate_matchings(
    left: &[usize],
    right: &[usize],
    at: usize,
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    visit: &mut dyn FnMut(&Pairs),
) {
    if at == left.len() {
        visit(pairs);
        return;
    }
    enumerate_matchings(left, right, at + 1, used, pairs, visit);
    for y in 0..right.len() {
        if !used[y] {
            used[y] = true;
            pairs.push((at, y));
            enumerate_matchings(left, right, at + 1, used, pairs, visit);
            pairs.pop();
            used[y] = false;
        }
    }
}

/// Sign of the permutation of `left ++ right` that places each contracted pair
/// side by side (pairs first, survivors after, in their original order),
/// combined with the wedge of the survivors. `None` when survivors repeat.
fn contracted_term(
    left: &[usize],
    right: &[usize],
    pairs: &[(usize, usize)],
) -> Option<(Blade, f64)> {
    let p = left.len();
    let mut order: Vec<usize> = Vec::with_capacity(p + right.len());
    let mut taken = alloc::vec![false; p + right.len()];
    for &(x, y) in pairs {
        order.push(x);
        order.push(p + y);
        taken[x] = true;
        taken[p + y] = true;
    }
    let contracted = order.len();
    order.extend((0..p + right.len()).filter(|&k| !taken[k]));
    let mut sign = parity(inversions(&order));

    let values: Vec<usize> = order[contracted..]
        .iter()
        .map(|&k| if k < p { left[k] } else { right[k - p] })
        .collect();
    let mut bits = 0u32;
    for &v in &values {
        let bit = 1u32 << (v - 1);
        if bits & bit != 0 {
            return None;
        }
        bits |= bit;
    }
    sign *= parity(inversions(&values));
    Some((Blade::from_bits(bits), sign))
}

fn inversions(seq: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                count += 1;
            }
        }
    }
    count
}

//! Brute-force dense-tensor reference implementations.
//!
//! Every p-form is stored as its full n^p array of components and each product
//! is evaluated from its index formula with explicit permutation sums. Nothing
//! here reuses the blade engine's sign or contraction helpers, so agreement
//! between the two is evidence rather than tautology. Costs grow like
//! n^k·k!, hence the cap of six dimensions.

use alloc::vec;
use alloc::vec::Vec;

use crate::blade::Blade;
use crate::clifford::DeformationParameter;
use crate::metric::Metric;
use crate::multivector::Multivector;
use crate::{Error, Result};

pub const ORACLE_MAX_DIM: usize = 6;

/// Antisymmetry tolerance for dense forms.
pub const ANTISYMMETRY_TOLERANCE: f64 = 1e-12;

/// A totally antisymmetric rank-p tensor over an n-dimensional space.
///
/// Components are stored row-major: tuple `(a_0, …, a_{p−1})` (0-based) lives
/// at `Σ a_k n^{p−1−k}`. A blade `c·e{i1<…<ip}` has component `c·sgn(σ)` at
/// every permutation σ of its index tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseForm {
    dim: usize,
    grade: usize,
    comps: Vec<f64>,
}

impl DenseForm {
    /// Wraps components after checking total antisymmetry.
    pub fn new(dim: usize, grade: usize, comps: Vec<f64>) -> Result<Self> {
        check_oracle_dim(dim)?;
        if grade > dim {
            return Err(Error::GradeTooLarge { grade, dim });
        }
        assert_eq!(comps.len(), dim.pow(grade as u32), "component count");
        let form = DenseForm { dim, grade, comps };
        let residual = form.antisymmetry_residual();
        if residual > ANTISYMMETRY_TOLERANCE {
            return Err(Error::NotAntisymmetric(residual));
        }
        Ok(form)
    }

    pub fn zero(dim: usize, grade: usize) -> Result<Self> {
        check_oracle_dim(dim)?;
        if grade > dim {
            return Err(Error::GradeTooLarge { grade, dim });
        }
        Ok(DenseForm {
            dim,
            grade,
            comps: vec![0.0; dim.pow(grade as u32)],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn components(&self) -> &[f64] {
        &self.comps
    }

    /// Component at a 0-based index tuple.
    pub fn get(&self, tuple: &[usize]) -> f64 {
        self.comps[offset(self.dim, tuple)]
    }

    /// Largest `|T[t] + T[t with one adjacent pair swapped]|`. Adjacent
    /// transpositions generate the symmetric group, so zero means total
    /// antisymmetry (repeated indices included).
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for t in tuples(self.dim, self.grade) {
            for i in 0..self.grade.saturating_sub(1) {
                let mut s = t.clone();
                s.swap(i, i + 1);
                let r = (self.get(&t) + self.get(&s)).abs();
                worst = worst.max(r);
            }
        }
        worst
    }
}

/// One dense form per grade `0..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMultivector {
    dim: usize,
    forms: Vec<DenseForm>,
}

impl DenseMultivector {
    pub fn zero(dim: usize) -> Result<Self> {
        check_oracle_dim(dim)?;
        Ok(DenseMultivector {
            dim,
            forms: (0..=dim)
                .map(|p| DenseForm::zero(dim, p))
                .collect::<Result<_>>()?,
        })
    }

    pub fn from_multivector(a: &Multivector) -> Result<Self> {
        let n = a.dim();
        check_oracle_dim(n)?;
        Ok(DenseMultivector {
            dim: n,
            forms: (0..=n).map(|p| to_dense(a, p)).collect::<Result<_>>()?,
        })
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut out = Multivector::zero(self.dim);
        for f in &self.forms {
            out = &out + &from_dense(f);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[DenseForm] {
        &self.forms
    }

    pub fn grade(&self, p: usize) -> &DenseForm {
        &self.forms[p]
    }

    fn accumulate(&mut self, f: &DenseForm) {
        let target = &mut self.forms[f.grade];
        for (x, y) in target.comps.iter_mut().zip(&f.comps) {
            *x += y;
        }
    }
}

fn check_oracle_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > ORACLE_MAX_DIM {
        Err(Error::DimTooLarge(dim))
    } else {
        Ok(())
    }
}

fn offset(dim: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * dim + a)
}

/// All `dim^k` index tuples in row-major order.
fn tuples(dim: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(k as u32);
    (0..total).map(move |mut flat| {
        let mut t = vec![0; k];
        for slot in (0..k).rev() {
            t[slot] = flat % dim;
            flat /= dim;
        }
        t
    })
}

/// Strictly increasing k-tuples from `0..dim`.
fn combinations(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, dim, k, &mut Vec::new(), &mut out);
    out
}

/// Sign of a permutation of `0..len` from its cycle decomposition.
fn cycle_sign(perm: &[usize]) -> f64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1.0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Every permutation of `0..k` with its sign.
fn signed_permutations(k: usize) -> Vec<(Vec<usize>, f64)> {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut perms = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let s = cycle_sign(&p);
            (p, s)
        })
        .collect()
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Grade-p part of `a` as a dense tensor.
pub fn to_dense(a: &Multivector, p: usize) -> Result<DenseForm> {
    let n = a.dim();
    let mut form = DenseForm::zero(n, p)?;
    let perms = signed_permutations(p);
    for (blade, c) in a.terms() {
        if blade.grade() != p {
            continue;
        }
        let idx: Vec<usize> = blade.indices().map(|i| i - 1).collect();
        for (perm, sign) in &perms {
            let t: Vec<usize> = perm.iter().map(|&k| idx[k]).collect();
            form.comps[offset(n, &t)] = sign * c;
        }
    }
    Ok(form)
}

/// Reads the ascending-index components back into blade coefficients.
pub fn from_dense(d: &DenseForm) -> Multivector {
    let mut out = Multivector::zero(d.dim);
    for t in combinations(d.dim, d.grade) {
        let c = d.get(&t);
        if c != 0.0 {
            let idx: Vec<usize> = t.iter().map(|i| i + 1).collect();
            out.add_term(Blade::from_indices(&idx).expect("ascending"), c);
        }
    }
    out
}

/// Antisymmetrizes a raw tensor: `(1/k!) Σ_σ sgn σ T[t∘σ]`.
fn antisymmetrize(dim: usize, k: usize, raw: &[f64]) -> Vec<f64> {
    let perms = signed_permutations(k);
    let norm = 1.0 / factorial(k);
    let mut out = vec![0.0; raw.len()];
    for (flat, t) in tuples(dim, k).enumerate() {
        let mut s = 0.0;
        for (perm, sign) in &perms {
            let permuted: Vec<usize> = perm.iter().map(|&i| t[i]).collect();
            s += sign * raw[offset(dim, &permuted)];
        }
        out[flat] = s * norm;
    }
    out
}

/// `ω∧α = ((p+q)!/(p!q!)) ω^{[a…} α^{b…]}`.
pub fn dense_wedge(w: &DenseForm, a: &DenseForm) -> Result<DenseForm> {
    let n = w.dim;
    let k = w.grade + a.grade;
    if k > n {
        return Err(Error::GradeOverflow { grade: k, dim: n });
    }
    let mut raw = vec![0.0; n.pow(k as u32)];
    for (flat, t) in tuples(n, k).enumerate() {
        raw[flat] = w.get(&t[..w.grade]) * a.get(&t[w.grade..]);
    }
    let alt = antisymmetrize(n, k, &raw);
    let factor = factorial(k) / (factorial(w.grade) * factorial(a.grade));
    DenseForm::new(n, k, alt.into_iter().map(|x| x * factor).collect())
}

/// `{ω, α} = 2pq g_ab ω^{[c…|a} α^{b|d…]}`.
///
/// The index formula is evaluated on normalized components (`ω/p!`, `α/q!`)
/// and the result is converted back with `(p+q−2)!`. With that reading the
/// bracket is a graded biderivation with `{η, η′} = 2g(η, η′)`.
/// Returns `None` when either argument is a scalar.
pub fn dense_bracket(w: &DenseForm, a: &DenseForm, metric: &Metric) -> Result<Option<DenseForm>> {
    let n = w.dim;
    let (p, q) = (w.grade, a.grade);
    if p == 0 || q == 0 {
        return Ok(None);
    }
    let k = p + q - 2;
    if k > n {
        return Err(Error::GradeOverflow { grade: k, dim: n });
    }
    let (wp, aq) = (factorial(p), factorial(q));
    let mut raw = vec![0.0; n.pow(k as u32)];
    for (flat, t) in tuples(n, k).enumerate() {
        let (c, d) = t.split_at(p - 1);
        let mut s = 0.0;
        for x in 0..n {
            let mut left = c.to_vec();
            left.push(x);
            let wv = w.get(&left) / wp;
            if wv == 0.0 {
                continue;
            }
            for y in 0..n {
                let mut right = vec![y];
                right.extend_from_slice(d);
                s += metric.gram()[(x, y)] * wv * (a.get(&right) / aq);
            }
        }
        raw[flat] = s;
    }
    let alt = antisymmetrize(n, k, &raw);
    let scale = 2.0 * (p * q) as f64 * factorial(k);
    Ok(Some(DenseForm::new(
        n,
        k,
        alt.into_iter().map(|x| x * scale).collect(),
    )?))
}

/// `⟨ω, α⟩ = (1/p!) g_{a1b1}⋯g_{apbp} ω^{a…} α^{b…}`; zero across grades.
pub fn dense_inner(w: &DenseForm, a: &DenseForm, metric: &Metric) -> f64 {
    if w.grade != a.grade {
        return 0.0;
    }
    let p = w.grade;
    let g = metric.gram();
    let nz = |f: &DenseForm| -> Vec<(Vec<usize>, f64)> {
        tuples(f.dim, p)
            .map(|t| {
                let v = f.get(&t);
                (t, v)
            })
            .filter(|(_, v)| *v != 0.0)
            .collect()
    };
    let (left, right) = (nz(w), nz(a));
    let mut s = 0.0;
    for (ta, va) in &left {
        for (tb, vb) in &right {
            let mut prod = va * vb;
            for (x, y) in ta.iter().zip(tb) {
                prod *= g[(*x, *y)];
            }
            s += prod;
        }
    }
    s / factorial(p)
}

/// `(∇_a ω)^{b…} = g_ac ω^{cb…}` for every slot a; `None` on scalars.
pub fn dense_derivative(w: &DenseForm, metric: &Metric) -> Result<Option<Vec<DenseForm>>> {
    let n = w.dim;
    if w.grade == 0 {
        return Ok(None);
    }
    let k = w.grade - 1;
    let mut out = Vec::with_capacity(n);
    for slot in 0..n {
        let mut comps = vec![0.0; n.pow(k as u32)];
        for (flat, t) in tuples(n, k).enumerate() {
            let mut s = 0.0;
            for c in 0..n {
                let mut full = vec![c];
                full.extend_from_slice(&t);
                s += metric.gram()[(slot, c)] * w.get(&full);
            }
            comps[flat] = s;
        }
        out.push(DenseForm::new(n, k, comps)?);
    }
    Ok(Some(out))
}

/// Gram–Schmidt factorization of a basis blade into mutually g-orthogonal
/// vectors with the same wedge (unit lower-triangular change of basis). For
/// orthogonal vectors the Clifford product equals the wedge product, so the
/// blade is literally the Clifford product of the returned vectors.
fn factor_blade(indices: &[usize], metric: &Metric) -> Vec<Vec<f64>> {
    let n = metric.dim();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(indices.len());
    for &i in indices {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        let mut f = v.clone();
        for prev in &out {
            let c = metric.inner(&v, prev) / metric.inner(prev, prev);
            for (x, y) in f.iter_mut().zip(prev) {
                *x -= c * y;
            }
        }
        out.push(f);
    }
    out
}

type Matching = Vec<(usize, usize)>;

/// Every set of disjoint pairs drawn from `0..len`.
fn all_matchings(len: usize) -> Vec<Matching> {
    fn rec(
        at: usize,
        len: usize,
        used: &mut [bool],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Matching>,
    ) {
        if at == len {
            out.push(cur.clone());
            return;
        }
        if used[at] {
            rec(at + 1, len, used, cur, out);
            return;
        }
        rec(at + 1, len, used, cur, out);
        used[at] = true;
        for j in at + 1..len {
            if !used[j] {
                used[j] = true;
                cur.push((at, j));
                rec(at + 1, len, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
        used[at] = false;
    }
    let mut out = Vec::new();
    rec(0, len, &mut vec![false; len], &mut Vec::new(), &mut out);
    out
}

/// Dense tensor of `v_1 ∧ … ∧ v_k`: the k×k minors, scattered to every
/// permutation of each ascending index tuple.
fn dense_wedge_of_vectors(vectors: &[Vec<f64>], dim: usize) -> Vec<f64> {
    let k = vectors.len();
    let perms = signed_permutations(k);
    let mut comps = vec![0.0; dim.pow(k as u32)];
    for rows in combinations(dim, k) {
        let mut det = 0.0;
        for (perm, sign) in &perms {
            let mut prod = *sign;
            for (m, v) in vectors.iter().enumerate() {
                prod *= v[rows[perm[m]]];
            }
            det += prod;
        }
        if det == 0.0 {
            continue;
        }
        for (perm, sign) in &perms {
            let t: Vec<usize> = perm.iter().map(|&m| rows[m]).collect();
            comps[offset(dim, &t)] = sign * det;
        }
    }
    comps
}

/// Clifford product by Wick's theorem over factored blades: each blade is
/// written as a Clifford product of orthogonal vectors, and the product of the
/// concatenated vector list is the signed sum over all contraction sets.
pub fn dense_clifford(
    a: &DenseMultivector,
    b: &DenseMultivector,
    metric: &Metric,
    h: DeformationParameter,
) -> Result<DenseMultivector> {
    let n = a.dim;
    if b.dim != n {
        return Err(Error::DimMismatch(n, b.dim));
    }
    metric.check_dim(n)?;
    let hbar = h.hbar();
    let mut out = DenseMultivector::zero(n)?;
    let mut matchings_by_len: Vec<Option<Vec<Matching>>> = vec![None; 2 * n + 1];
    for fa in &a.forms {
        for ta in combinations(n, fa.grade) {
            let ca = fa.get(&ta);
            if ca == 0.0 {
                continue;
            }
            for fb in &b.forms {
                for tb in combinations(n, fb.grade) {
                    let cb = fb.get(&tb);
                    if cb == 0.0 {
                        continue;
                    }
                    let mut vectors = factor_blade(&ta, metric);
                    vectors.extend(factor_blade(&tb, metric));
                    let len = vectors.len();
                    let matchings = matchings_by_len[len].get_or_insert_with(|| all_matchings(len));
                    for pairs in matchings.iter() {
                        let rest_len = len - 2 * pairs.len();
                        if rest_len > n {
                            continue;
                        }
                        let mut weight = ca * cb;
                        for &(x, y) in pairs {
                            weight *= hbar * metric.inner(&vectors[x], &vectors[y]);
                        }
                        if weight == 0.0 {
                            continue;
                        }
                        // order: contracted pairs side by side, survivors after
                        let mut taken = vec![false; len];
                        let mut order = Vec::with_capacity(len);
                        for &(x, y) in pairs {
                            order.push(x);
                            order.push(y);
                            taken[x] = true;
                            taken[y] = true;
                        }
                        let rest: Vec<usize> = (0..len).filter(|&i| !taken[i]).collect();
                        order.extend_from_slice(&rest);
                        // sign of the permutation position -> original index
                        let sign = cycle_sign(&order);
                        let survivors: Vec<Vec<f64>> =
                            rest.iter().map(|&i| vectors[i].clone()).collect();
                        let comps = dense_wedge_of_vectors(&survivors, n);
                        let target = &mut out.forms[rest_len].comps;
                        for (x, y) in target.iter_mut().zip(&comps) {
                            *x += sign * weight * y;
                        }
                    }
                }
            }
        }
    }
    for f in &out.forms {
        DenseForm::new(n, f.grade, f.comps.clone())?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Wedge,
    Bracket,
    Clifford,
    Inner,
    Derivative,
}

#[derive(Clone, Debug, PartialEq)]
pub enum OracleOutput {
    Forms(DenseMultivector),
    Scalar(f64),
    /// One multivector per derivative slot.
    Family(Vec<DenseMultivector>),
}

/// Evaluates `kind` on dense multivectors, summing over grade pairs. Grade
/// pairs whose result would exceed the dimension vanish identically and are
/// skipped. `b` is ignored for the derivative; `h` only enters the Clifford
/// product.
pub fn oracle_product(
    kind: OracleKind,
    a: &DenseMultivector,
    b: &DenseMultivector,
    metric: &Metric,
    h: DeformationParameter,
) -> Result<OracleOutput> {
    let n = a.dim;
    if b.dim != n {
        return Err(Error::DimMismatch(n, b.dim));
    }
    metric.check_dim(n)?;
    match kind {
        OracleKind::Clifford => Ok(OracleOutput::Forms(dense_clifford(a, b, metric, h)?)),
        OracleKind::Inner => {
            let s = a
                .forms
                .iter()
                .zip(&b.forms)
                .map(|(x, y)| dense_inner(x, y, metric))
                .sum();
            Ok(OracleOutput::Scalar(s))
        }
        OracleKind::Derivative => {
            let mut family: Vec<DenseMultivector> = (0..n)
                .map(|_| DenseMultivector::zero(n))
                .collect::<Result<_>>()?;
            for f in &a.forms {
                if let Some(slots) = dense_derivative(f, metric)? {
                    for (acc, d) in family.iter_mut().zip(&slots) {
                        acc.accumulate(d);
                    }
                }
            }
            Ok(OracleOutput::Family(family))
        }
        OracleKind::Wedge | OracleKind::Bracket => {
            let mut out = DenseMultivector::zero(n)?;
            for x in &a.forms {
                if is_zero_form(x) {
                    continue;
                }
                for y in &b.forms {
                    if is_zero_form(y) {
                        continue;
                    }
                    let part = if kind == OracleKind::Wedge {
                        match dense_wedge(x, y) {
                            Ok(f) => Some(f),
                            Err(Error::GradeOverflow { .. }) => None,
                            Err(e) => return Err(e),
                        }
                    } else {
                        match dense_bracket(x, y, metric) {
                            Ok(f) => f,
                            Err(Error::GradeOverflow { .. }) => None,
                            Err(e) => return Err(e),
                        }
                    };
                    if let Some(f) = part {
                        out.accumulate(&f);
                    }
                }
            }
            Ok(OracleOutput::Forms(out))
        }
    }
}

fn is_zero_form(f: &DenseForm) -> bool {
    f.comps.iter().all(|&c| c == 0.0)
}

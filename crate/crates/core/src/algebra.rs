//! The classical algebra of observables: wedge product, Casalbuoni bracket,
//! extended inner product, volume element, the functionals `i` and `∫`, the
//! derivative ∇, the involution †, the 2-form ↔ generator isomorphism and
//! the action of canonical transformations.
//!
//! Tensor components of a blade follow one convention throughout: a blade
//! `c·e{i,j}` with `i < j` has components `A^{ij} = c`, `A^{ji} = −c`, and
//! likewise with the permutation sign for higher grades.

use alloc::vec::Vec;

use crate::blade::Blade;
use crate::linalg::{determinant, Matrix};
use crate::maps::{Generator, LinearMap, OrthogonalMap};
use crate::metric::Metric;
use crate::multivector::Multivector;
use crate::{Error, Result};

#[inline]
fn parity(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Wedge product of basis blades: zero on overlap, otherwise the merged blade
/// with the sign of sorting the concatenation.
pub fn wedge_blades(a: Blade, b: Blade) -> Option<(Blade, f64)> {
    if a.bits() & b.bits() != 0 {
        None
    } else {
        Some((Blade::from_bits(a.bits() | b.bits()), a.reorder_sign(b)))
    }
}

pub fn wedge(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.check_same_dim(b)?;
    let mut out = Multivector::zero(a.dim());
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            if let Some((blade, sign)) = wedge_blades(ba, bb) {
                out.add_term(blade, sign * ca * cb);
            }
        }
    }
    Ok(out)
}

/// Casalbuoni bracket `{A, B}`.
///
/// On blades e_I (grade p) and e_J (grade q) this is twice the sum over single
/// contractions: pick `k ∈ I` and `l ∈ J`, move e_k to the end of e_I and e_l
/// to the front of e_J, replace the adjacent pair by `g(e_k, e_l)` and wedge
/// what remains. For vectors `{η, η′} = 2 g(η, η′)`, and the bracket is a
/// graded biderivation of degree −2.
pub fn bracket(a: &Multivector, b: &Multivector, metric: &Metric) -> Result<Multivector> {
    a.check_same_dim(b)?;
    metric.check_dim(a.dim())?;
    let mut out = Multivector::zero(a.dim());
    for (ba, ca) in a.terms() {
        let p = ba.grade();
        for (bb, cb) in b.terms() {
            for k in ba.indices() {
                let to_end = p - 1 - ba.position(k);
                let rest_a = ba.without(k);
                for l in bb.indices() {
                    let g = metric.g(k, l);
                    if g == 0.0 {
                        continue;
                    }
                    let rest_b = bb.without(l);
                    if let Some((blade, sign)) = wedge_blades(rest_a, rest_b) {
                        let s = sign * parity(to_end + bb.position(l));
                        out.add_term(blade, 2.0 * s * g * ca * cb);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `⟨e_I, e_J⟩`: the determinant of the Gram submatrix `[g(e_i, e_j)]`,
/// zero across grades.
pub fn blade_inner(a: Blade, b: Blade, metric: &Metric) -> f64 {
    let p = a.grade();
    if p != b.grade() {
        return 0.0;
    }
    if p == 0 {
        return 1.0;
    }
    if metric.is_diagonal() {
        if a != b {
            return 0.0;
        }
        return a.indices().map(|i| metric.g(i, i)).product();
    }
    let mut sub = Vec::with_capacity(p * p);
    for i in a.indices() {
        for j in b.indices() {
            sub.push(metric.g(i, j));
        }
    }
    determinant(p, sub)
}

/// Extended inner product `⟨A, B⟩ = Σ_p (1/p!) g…g A_p B_p`.
pub fn extended_inner(a: &Multivector, b: &Multivector, metric: &Metric) -> Result<f64> {
    a.check_same_dim(b)?;
    metric.check_dim(a.dim())?;
    let mut sum = 0.0;
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            if ba.grade() == bb.grade() {
                sum += ca * cb * blade_inner(ba, bb, metric);
            }
        }
    }
    Ok(sum)
}

/// Volume element `(det G)^(-1/2) · e{1,…,n}`, the positively oriented
/// solution of `⟨ε, ε⟩ = 1`.
pub fn epsilon(metric: &Metric) -> Multivector {
    let n = metric.dim();
    Multivector::from_blade(n, Blade::top(n), 1.0 / libm::sqrt(metric.det()))
}

/// `(i(A), ∫A) = (⟨1, A⟩, ⟨ε, A⟩)`.
pub fn distinguished_functionals(a: &Multivector, metric: &Metric) -> Result<(f64, f64)> {
    metric.check_dim(a.dim())?;
    let one = Multivector::scalar(a.dim(), 1.0);
    Ok((
        extended_inner(&one, a, metric)?,
        extended_inner(&epsilon(metric), a, metric)?,
    ))
}

/// Derivative `(∇_a ω)^{b…} = g_ac ω^{cb…}`, one multivector per slot
/// `a = 1..=n` (index 0 of the returned vector is slot 1).
pub fn derivative(a: &Multivector, metric: &Metric) -> Result<Vec<Multivector>> {
    metric.check_dim(a.dim())?;
    let n = a.dim();
    let mut out: Vec<Multivector> = (0..n).map(|_| Multivector::zero(n)).collect();
    for (blade, c) in a.terms() {
        for k in blade.indices() {
            let rest = blade.without(k);
            let s = parity(blade.position(k)) * c;
            for (slot, d) in out.iter_mut().enumerate() {
                let g = metric.g(slot + 1, k);
                if g != 0.0 {
                    d.add_term(rest, s * g);
                }
            }
        }
    }
    Ok(out)
}

/// The involution `ω† = (−1)^{p(p−1)/2} ω` on p-forms.
pub fn dagger(a: &Multivector) -> Multivector {
    a.map_grades(|p| parity(p * p.saturating_sub(1) / 2))
}

/// The 2-form `H^{ab} = H^a_c g^{cb}` of a generator, read onto blades
/// `e{a,b}` with `a < b`.
pub fn two_form_from_generator(h: &Generator) -> Multivector {
    let n = h.dim();
    let raised = h.matrix().mul(h.metric().inverse());
    let mut out = Multivector::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            out.add_term(Blade::vector(i + 1).with(j + 1), raised[(i, j)]);
        }
    }
    out
}

/// Inverse of [`two_form_from_generator`]: `H^a_b = H^{ac} g_cb`.
pub fn generator_from_two_form(form: &Multivector, metric: &Metric) -> Result<Generator> {
    metric.check_dim(form.dim())?;
    let n = form.dim();
    let mut raised = Matrix::zeros(n);
    for (blade, c) in form.terms() {
        if blade.grade() != 2 {
            return Err(Error::NotTwoForm);
        }
        let mut it = blade.indices();
        let (i, j) = (it.next().unwrap() - 1, it.next().unwrap() - 1);
        raised[(i, j)] = c;
        raised[(j, i)] = -c;
    }
    let lowered = raised.mul(metric.gram());
    Generator::new(LinearMap::from_matrix(lowered)?, metric)
}

/// Induced action of a linear map on Λ(Φ): `e_I ↦ (M e_{i1}) ∧ … ∧ (M e_{ip})`.
pub fn outermorphism(map: &LinearMap, a: &Multivector) -> Result<Multivector> {
    if map.dim() != a.dim() {
        return Err(Error::DimMismatch(map.dim(), a.dim()));
    }
    let n = a.dim();
    let m = map.matrix();
    let columns: Vec<Multivector> = (0..n)
        .map(|j| Multivector::vector(&(0..n).map(|i| m[(i, j)]).collect::<Vec<_>>()))
        .collect();
    let mut out = Multivector::zero(n);
    for (blade, c) in a.terms() {
        let mut image = Multivector::scalar(n, c);
        for i in blade.indices() {
            image = wedge(&image, &columns[i - 1])?;
        }
        out = &out + &image;
    }
    Ok(out)
}

/// Automorphism action `U(ω) = U^{a1}_{b1}⋯U^{ap}_{bp} ω^{b1…bp}` of a
/// canonical transformation.
pub fn apply_orthogonal(u: &OrthogonalMap, a: &Multivector) -> Result<Multivector> {
    outermorphism(u.map(), a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, idx: &[usize]) -> Multivector {
        Multivector::blade(n, idx, 1.0).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let (e1, e2) = (e(2, &[1]), e(2, &[2]));
        assert_eq!(wedge(&e1, &e2).unwrap(), e(2, &[1, 2]));
        assert_eq!(wedge(&e2, &e1).unwrap(), -e(2, &[1, 2]));
        let s = &e1 + &e2;
        assert!(wedge(&s, &s).unwrap().is_zero());
        assert_eq!(
            wedge(&e1, &e(3, &[1])).unwrap_err(),
            Error::DimMismatch(2, 3)
        );
    }

    #[test]
    fn bracket_examples() {
        let m = Metric::identity(3);
        let one = Multivector::scalar(3, 1.0);
        assert!(bracket(&one, &e(3, &[1, 2]), &m).unwrap().is_zero());
        assert_eq!(
            bracket(&e(3, &[1]), &e(3, &[1]), &m).unwrap(),
            Multivector::scalar(3, 2.0)
        );
        // single contraction over e2, doubled
        assert_eq!(
            bracket(&e(3, &[1, 2]), &e(3, &[2, 3]), &m).unwrap(),
            e(3, &[1, 3]) * 2.0
        );
    }

    #[test]
    fn bracket_leibniz_counterexample_of_pq_weighting() {
        // {e1, e1∧e2} must equal {e1,e1}∧e2 − e1∧{e1,e2} = 2 e2
        let m = Metric::identity(2);
        let b = bracket(&e(2, &[1]), &e(2, &[1, 2]), &m).unwrap();
        assert_eq!(b, e(2, &[2]) * 2.0);
    }

    #[test]
    fn inner_examples() {
        let id = Metric::identity(2);
        assert_eq!(
            extended_inner(&e(2, &[1, 2]), &e(2, &[1, 2]), &id).unwrap(),
            1.0
        );
        assert_eq!(
            extended_inner(&Multivector::scalar(2, 1.0), &e(2, &[1]), &id).unwrap(),
            0.0
        );
        let g = Metric::new(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let v = extended_inner(&e(2, &[1, 2]), &e(2, &[1, 2]), &g).unwrap();
        assert!((v - 3.0).abs() < 1e-14);
        // e1, e2 are not orthogonal under this metric
        assert_eq!(extended_inner(&e(2, &[1]), &e(2, &[2]), &g).unwrap(), 1.0);
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&Metric::identity(2)), e(2, &[1, 2]));
        let m = Metric::new(&[[4.0]]).unwrap();
        assert_eq!(epsilon(&m), e(1, &[1]) * 0.5);
        let g = Metric::new(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let eps = epsilon(&g);
        assert!((eps.coeff(&[1, 2]) - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((extended_inner(&eps, &eps, &g).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn functional_examples() {
        let id = Metric::identity(2);
        let a = &Multivector::scalar(2, 3.0) + &(e(2, &[1]) * 2.0);
        assert_eq!(distinguished_functionals(&a, &id).unwrap(), (3.0, 0.0));
        let a = e(2, &[1, 2]) * 5.0;
        assert_eq!(distinguished_functionals(&a, &id).unwrap(), (0.0, 5.0));
        let g = Metric::new(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let (i, int) = distinguished_functionals(&e(2, &[1, 2]), &g).unwrap();
        assert_eq!(i, 0.0);
        assert!((int - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn derivative_examples() {
        let m = Metric::identity(3);
        let d = derivative(&e(3, &[1]), &m).unwrap();
        assert_eq!(d[0], Multivector::scalar(3, 1.0));
        assert!(d[1].is_zero() && d[2].is_zero());
        let d = derivative(&Multivector::scalar(3, 1.0), &m).unwrap();
        assert!(d.iter().all(Multivector::is_zero));
        let d = derivative(&e(3, &[1, 2]), &m).unwrap();
        assert_eq!(d[0], e(3, &[2]));
        assert_eq!(d[1], -e(3, &[1]));
        assert!(d[2].is_zero());
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(dagger(&e(4, &[1])), e(4, &[1]));
        assert_eq!(dagger(&e(4, &[1, 2])), -e(4, &[1, 2]));
        assert_eq!(dagger(&e(4, &[1, 2, 3])), -e(4, &[1, 2, 3]));
        assert_eq!(dagger(&e(4, &[1, 2, 3, 4])), e(4, &[1, 2, 3, 4]));
        assert_eq!(
            dagger(&Multivector::scalar(4, 2.0)),
            Multivector::scalar(4, 2.0)
        );
    }

    #[test]
    fn iso_examples() {
        let id = Metric::identity(2);
        let h = Generator::from_rows(&[[0.0, -1.0], [1.0, 0.0]], &id).unwrap();
        let form = two_form_from_generator(&h);
        assert_eq!(form, -e(2, &[1, 2]));
        assert_eq!(generator_from_two_form(&form, &id).unwrap(), h);

        let g = Metric::new(&[[2.0, 0.0], [0.0, 1.0]]).unwrap();
        let h = Generator::from_rows(&[[0.0, -1.0], [2.0, 0.0]], &g).unwrap();
        // H·G⁻¹ = [[0,-1],[2,0]]·diag(1/2,1) = [[0,-1],[1,0]]
        let form = two_form_from_generator(&h);
        assert_eq!(form, -e(2, &[1, 2]));
        let back = generator_from_two_form(&form, &g).unwrap();
        assert!(back.matrix().sub(h.matrix()).norm_max() < 1e-12);

        assert_eq!(
            generator_from_two_form(&e(2, &[1]), &id).unwrap_err(),
            Error::NotTwoForm
        );
    }

    #[test]
    fn apply_orthogonal_examples() {
        let m = Metric::identity(2);
        let rot =
            OrthogonalMap::new(LinearMap::new(&[[0.0, -1.0], [1.0, 0.0]]).unwrap(), &m).unwrap();
        assert_eq!(apply_orthogonal(&rot, &e(2, &[1])).unwrap(), e(2, &[2]));
        assert_eq!(
            apply_orthogonal(&rot, &e(2, &[1, 2])).unwrap(),
            e(2, &[1, 2])
        );
        let a = &Multivector::scalar(2, 0.3) + &e(2, &[2]);
        assert_eq!(
            apply_orthogonal(&OrthogonalMap::identity(&m), &a).unwrap(),
            a
        );
    }
}

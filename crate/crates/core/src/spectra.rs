//! Pisot and Perron tests with certified root disks, and the search for
//! polynomials with coefficients in `{−1, 0, 1}` vanishing at β.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::dynamics::Params;
use crate::exactnum::{AlgebraicReal, Field, IntPoly, SturmSequence};
use crate::shifts::{Classification, KneadingSpec, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("polynomial must have exactly one real root greater than 1 (found {0})")]
    PreconditionFailed(usize),
    #[error("finite-type verdict contradicts the witness search: {0}")]
    Inconsistent(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum PisotVerdict {
    Pisot,
    NotPisot,
    Indeterminate,
}

/// Perron verdicts are about the supplied polynomial: a violating root is a
/// Galois conjugate of β only when the polynomial is irreducible.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum PerronVerdict {
    Perron,
    NotPerron,
    Indeterminate,
}

/// A disk certified to contain exactly one root.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct RootDisk {
    pub center: Complex64,
    pub radius: f64,
}

impl RootDisk {
    /// Bounds on the modulus of the enclosed root.
    pub fn modulus(&self) -> (f64, f64) {
        let m = self.center.norm();
        let slack = self.radius + 4.0 * f64::EPSILON * m;
        ((m - slack).max(0.0), m + slack)
    }
}

fn horner(p: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

fn aberth(p: &[f64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let lead = p[n];
    let bound = 1.0 + p[..n].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> =
        (0..n).map(|i| Complex64::from_polar(0.5 * bound, 2.0 * PI * (i as f64 + 0.25) / n as f64)).collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = horner(p, z[i]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-17 {
            break;
        }
    }
    z
}

type CQ = Complex<BigRational>;

fn exact(z: Complex64) -> CQ {
    let q = |x: f64| BigRational::from_f64(x).expect("finite root estimate");
    Complex::new(q(z.re), q(z.im))
}

/// Root disks from the inclusion theorem: with `w_i = p(z_i) / (a_n Π_{j≠i}(z_i − z_j))`
/// the disks `|z − z_i| ≤ n|w_i|` cover all roots, and every isolated disk holds
/// exactly one. `|w_i|²` is evaluated exactly at the floating-point centres.
/// Returns `None` if the disks are not pairwise disjoint.
pub fn root_disks(p: &IntPoly) -> Option<Vec<RootDisk>> {
    let p = p.squarefree_part();
    let n = p.degree()?;
    if n == 0 {
        return Some(Vec::new());
    }
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    let centers = aberth(&coeffs);
    let ex: Vec<CQ> = centers.iter().map(|&z| exact(z)).collect();
    let lead = BigRational::from_integer(p.leading()?.clone());
    let mut disks = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: CQ = Complex::new(BigRational::zero(), BigRational::zero());
        for c in p.coeffs().iter().rev() {
            v = v * ex[i].clone() + Complex::new(BigRational::from_integer(c.clone()), BigRational::zero());
        }
        let mut denom = &lead * &lead;
        for j in (0..n).filter(|&j| j != i) {
            let d = ex[i].clone() - ex[j].clone();
            denom *= d.norm_sqr();
        }
        if denom.is_zero() {
            return None;
        }
        let w2 = v.norm_sqr() / denom * BigRational::from_integer(BigInt::from(n * n));
        let radius = w2.to_f64()?.sqrt() * (1.0 + 1e-12) + f64::MIN_POSITIVE;
        disks.push(RootDisk { center: centers[i], radius });
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = (disks[i].center - disks[j].center).norm();
            if gap * (1.0 - 1e-12) <= disks[i].radius + disks[j].radius {
                return None;
            }
        }
    }
    Some(disks)
}

fn dominant_root(p: &IntPoly) -> Result<AlgebraicReal, SpectraError> {
    let sf = p.squarefree_part();
    let one = BigRational::one();
    let top = sf.cauchy_bound() + &one;
    let count = SturmSequence::new(&sf).count_open(&one, &top);
    if count != 1 {
        return Err(SpectraError::PreconditionFailed(count));
    }
    let roots = crate::exactnum::isolate_roots(&sf, &crate::exactnum::RationalInterval::new(one, top));
    Ok(roots.into_iter().next().expect("one root counted"))
}

/// The disks of all roots other than the real root `β > 1`, and `β` itself.
fn conjugate_disks(p: &IntPoly) -> Result<Option<(AlgebraicReal, Vec<RootDisk>)>, SpectraError> {
    let beta = dominant_root(p)?;
    let Some(mut disks) = root_disks(p) else {
        return Ok(None);
    };
    let b = beta.to_f64();
    let i = (0..disks.len())
        .min_by(|&i, &j| {
            let di = (disks[i].center - b).norm();
            let dj = (disks[j].center - b).norm();
            di.total_cmp(&dj)
        })
        .expect("degree ≥ 1");
    disks.remove(i);
    Ok(Some((beta, disks)))
}

/// Pisot: every other root has modulus below 1.
pub fn pisot_check(p: &IntPoly) -> Result<PisotVerdict, SpectraError> {
    let Some((_, disks)) = conjugate_disks(p)? else {
        return Ok(PisotVerdict::Indeterminate);
    };
    if disks.iter().all(|d| d.modulus().1 < 1.0) {
        Ok(PisotVerdict::Pisot)
    } else if disks.iter().any(|d| d.modulus().0 > 1.0) {
        Ok(PisotVerdict::NotPisot)
    } else {
        Ok(PisotVerdict::Indeterminate)
    }
}

/// Perron: every other root has modulus below β. The root `−β` is detected
/// exactly, since no disk can separate it from the circle `|z| = β`.
pub fn perron_check(p: &IntPoly) -> Result<PerronVerdict, SpectraError> {
    let beta = dominant_root(p)?;
    let field = Field::new(beta.clone());
    let minus_beta = -field.beta();
    let value = p.coeffs().iter().rev().fold(field.zero(), |acc, c| {
        &acc * &minus_beta + field.from_rational_value(BigRational::from_integer(c.clone()))
    });
    if value.is_zero() {
        return Ok(PerronVerdict::NotPerron);
    }
    let Some((_, disks)) = conjugate_disks(p)? else {
        return Ok(PerronVerdict::Indeterminate);
    };
    let tight = beta.refine_to(&BigRational::new(1.into(), BigInt::from(10u64.pow(15))));
    let (lo, hi) = (tight.lo().to_f64().unwrap_or(0.0), tight.hi().to_f64().unwrap_or(f64::INFINITY));
    if disks.iter().all(|d| d.modulus().1 < lo) {
        Ok(PerronVerdict::Perron)
    } else if disks.iter().any(|d| d.modulus().0 > hi) {
        Ok(PerronVerdict::NotPerron)
    } else {
        Ok(PerronVerdict::Indeterminate)
    }
}

/// Smallest-degree polynomial with coefficients in `{−1, 0, 1}`, leading
/// coefficient 1 and nonzero constant term, vanishing at β, of degree at most
/// `max_degree`. Branches are pruned when the chosen high-order part already
/// exceeds what the remaining terms can cancel; candidates are confirmed by
/// exact evaluation.
pub fn pm1_witness_search(beta: &AlgebraicReal, max_degree: usize) -> Option<IntPoly> {
    let field = Field::new(beta.clone());
    let b = beta.to_f64();
    (1..=max_degree).find_map(|d| {
        // tail[j] = Σ_{i<j} b^i
        let mut tail = vec![0.0f64; d + 1];
        for j in 1..=d {
            tail[j] = tail[j - 1] + b.powi(j as i32 - 1);
        }
        let mut coeffs = vec![0i8; d + 1];
        coeffs[d] = 1;
        search(&field, b, &tail, &mut coeffs, d, b.powi(d as i32))
    })
}

fn search(field: &Field, b: f64, tail: &[f64], coeffs: &mut [i8], next: usize, partial: f64) -> Option<IntPoly> {
    // Coefficients above `next` are fixed; `partial` is their value at b.
    let slack = 1e-9 * (1.0 + tail[tail.len() - 1] + partial.abs());
    if partial.abs() > tail[next] + slack {
        return None;
    }
    if next == 0 {
        if coeffs[0] == 0 {
            return None;
        }
        let poly = IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect());
        return field.element(poly.to_rat()).is_zero().then_some(poly);
    }
    let i = next - 1;
    for c in [0i8, 1, -1] {
        coeffs[i] = c;
        if let Some(p) = search(field, b, tail, coeffs, i, partial + c as f64 * b.powi(i as i32)) {
            return Some(p);
        }
    }
    coeffs[i] = 0;
    None
}

/// The integer polynomial `N` with `N(β) = 0` expressing `π(τ⁻(p)) = π(τ⁺(p))`:
/// with a common preperiod `P` and period `L`, `N = β^P (β^L − 1) Σ (u_m − v_m) β^{−m}`.
pub fn kneading_relation(spec: &KneadingSpec) -> Option<IntPoly> {
    let (u, v) = spec.words().ok()?;
    let pre = u.preperiod().len().max(v.preperiod().len());
    let per = u.period().len().lcm(&v.period().len());
    let mut c = vec![0i64; pre + per];
    for m in 1..=pre + per {
        let d = u.symbol(m - 1) as i64 - v.symbol(m - 1) as i64;
        if m <= pre {
            c[pre + per - m] += d;
            c[pre - m] -= d;
        } else {
            c[pre + per - m] += d;
        }
    }
    let p = IntPoly::new(c.into_iter().map(BigInt::from).collect());
    (!p.is_zero()).then_some(p)
}

/// Cross-check between a finite-type verdict and the witness search: an SFT
/// verdict forces β to satisfy [`kneading_relation`]; when that relation has
/// coefficients in `{−1, 0, 1}` within `max_degree`, the search must find a
/// witness. Returns the relation when one applies.
pub fn check_sft_consistency(
    params: &Params,
    spec: &KneadingSpec,
    classification: &Classification,
    max_degree: usize,
) -> Result<Option<IntPoly>, SpectraError> {
    if classification.verdict != Verdict::Sft {
        return Ok(None);
    }
    let Some(rel) = kneading_relation(spec) else {
        return Ok(None);
    };
    let value = params.field().element(rel.to_rat());
    if !value.is_zero() {
        return Err(SpectraError::Inconsistent(format!("kneading relation {rel} does not vanish at β")));
    }
    let trimmed = strip_x(&rel);
    let small = trimmed.coeffs().iter().all(|c| c.abs() <= BigInt::one());
    if small && trimmed.degree().is_some_and(|d| d <= max_degree) {
        let root = params.field().root();
        if pm1_witness_search(root, max_degree).is_none() {
            return Err(SpectraError::Inconsistent(format!(
                "SFT verdict implies {trimmed}(β) = 0 but no witness of degree ≤ {max_degree} was found"
            )));
        }
    }
    Ok(Some(trimmed))
}

/// Removes factors of `x` and normalises the sign of the leading coefficient.
fn strip_x(p: &IntPoly) -> IntPoly {
    let first = p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut c = p.coeffs()[first..].to_vec();
    if c.last().is_some_and(Signed::is_negative) {
        c.iter_mut().for_each(|x| *x = -x.clone());
    }
    IntPoly::new(c)
}

/// Minimal polynomials of the two smallest Pisot numbers, `θ₀` and `θ₁`.
pub fn small_pisot_polynomials() -> [IntPoly; 2] {
    [IntPoly::from_i64s(&[-1, -1, 0, 1]), IntPoly::from_i64s(&[-1, 0, 0, -1, 1])]
}

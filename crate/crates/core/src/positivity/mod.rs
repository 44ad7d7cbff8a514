//! Exact sign decisions for `P_n(α, ·)` on `(0, ∞)` and the α-threshold search.
//!
//! Index convention: polynomial index `m` belongs to `Φ_m`, which is the transition
//! function used for conjecture parameter `n = m + 1`. Reports carry both.

mod quadratic;
mod sturm;

use std::ops::RangeInclusive;

use serde::Serialize;

pub use quadratic::{quad_nonneg, QuadraticCoeffs};
pub use sturm::{cauchy_bound, gcd, squarefree, SturmChain};

use crate::exactalg::{RatPoly, Rational, ZPolynomial};
use crate::transition::p_poly;

/// Root isolation gives up (verdict `Inconclusive`) below this interval width.
pub const MIN_ISOLATION_WIDTH_LOG2: u32 = 40;

pub const DEFAULT_THRESHOLD_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Nonnegative,
    Negative,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// `A > 0, B < 0, B² − 4AC ≤ 0`
    CriterionCase1,
    /// `A > 0, B ≥ 0, C ≥ 0`
    CriterionCase2,
    /// `A = 0, B ≥ 0, C ≥ 0`
    CriterionCase3,
    SturmNoPositiveRoot,
    /// Positive roots exist but the sign is non-negative in every gap between them.
    SturmEvenMultiplicityRoots,
    AllCoefficientsNonnegative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityVerdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    /// Positive `z` with `P(z) < 0`.
    pub witness: Option<Rational>,
}

impl PositivityVerdict {
    pub fn nonnegative(certificate: Certificate) -> Self {
        PositivityVerdict {
            status: Status::Nonnegative,
            certificate: Some(certificate),
            witness: None,
        }
    }

    pub fn negative(witness: Rational) -> Self {
        PositivityVerdict {
            status: Status::Negative,
            certificate: None,
            witness: Some(witness),
        }
    }

    pub fn inconclusive() -> Self {
        PositivityVerdict {
            status: Status::Inconclusive,
            certificate: None,
            witness: None,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.status == Status::Nonnegative
    }
}

/// Decide `p(z) ≥ 0` for all `z > 0` with exact arithmetic.
pub fn rat_poly_nonneg_on_pos(p: &RatPoly) -> PositivityVerdict {
    if p.coeffs().iter().all(|c| !c.is_negative()) {
        return PositivityVerdict::nonnegative(Certificate::AllCoefficientsNonnegative);
    }
    // z^m > 0 on (0, ∞), so low-order zero coefficients do not affect the sign
    let shift = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let reduced = RatPoly::new(p.coeffs()[shift..].to_vec());
    let lead = reduced.leading().expect("non-zero polynomial");
    let bound = cauchy_bound(&reduced);
    if lead.is_negative() {
        return checked_negative(p, bound);
    }

    let sf = squarefree(&reduced);
    let chain = SturmChain::new(&sf);
    let total = chain.count_roots(&Rational::zero(), &bound);
    if total == 0 {
        return PositivityVerdict::nonnegative(Certificate::SturmNoPositiveRoot);
    }

    let Some(intervals) = isolate(&sf, &chain, Rational::zero(), bound.clone(), total) else {
        return PositivityVerdict::inconclusive();
    };
    // one sample in every gap: below the smallest positive root, then each right endpoint
    let mut samples = vec![positive_root_lower_bound(&reduced)];
    samples.extend(intervals.into_iter().map(|(_, hi)| hi));
    for z in samples {
        if p.eval(&z).is_negative() {
            return PositivityVerdict::negative(z);
        }
    }
    PositivityVerdict::nonnegative(Certificate::SturmEvenMultiplicityRoots)
}

fn checked_negative(p: &RatPoly, z: Rational) -> PositivityVerdict {
    debug_assert!(p.eval(&z).is_negative());
    PositivityVerdict::negative(z)
}

/// Half the reciprocal Cauchy bound of the reversed polynomial; requires `p(0) ≠ 0`.
fn positive_root_lower_bound(p: &RatPoly) -> Rational {
    let reversed = RatPoly::new(p.coeffs().iter().rev().cloned().collect());
    cauchy_bound(&reversed).recip().expect("bound >= 1") / Rational::from(2)
}

/// Split `(lo, hi]` into sub-intervals holding exactly one root each; all split
/// points are non-roots. `None` if the width limit is hit first.
fn isolate(
    sf: &RatPoly,
    chain: &SturmChain,
    lo: Rational,
    hi: Rational,
    count: usize,
) -> Option<Vec<(Rational, Rational)>> {
    let min_width = Rational::new(1, num_bigint::BigInt::from(1u64) << MIN_ISOLATION_WIDTH_LOG2)
        .expect("non-zero");
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi, count)];
    while let Some((lo, hi, count)) = stack.pop() {
        match count {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                if &hi - &lo < min_width {
                    return None;
                }
                let mid = non_root_split(sf, &lo, &hi);
                let left = chain.count_roots(&lo, &mid);
                stack.push((mid.clone(), hi, count - left));
                stack.push((lo, mid, left));
            }
        }
    }
    out.sort();
    Some(out)
}

fn non_root_split(sf: &RatPoly, lo: &Rational, hi: &Rational) -> Rational {
    let width = hi - lo;
    // midpoint first, then 1/3, 2/3, 1/5, 2/5, ... of the way across
    let mut candidates = vec![Rational::frac(1, 2)];
    let mut denom = 3;
    while candidates.len() <= sf.degree().unwrap_or(0) + 2 {
        for num in 1..denom {
            candidates.push(Rational::frac(num, denom));
        }
        denom += 2;
    }
    candidates
        .into_iter()
        .map(|f| lo + &(&width * &f))
        .find(|m| !sf.eval(m).is_zero())
        .expect("more candidates than roots")
}

/// Specialize `P` at α and decide its sign on `(0, ∞)`.
pub fn poly_nonneg_on_pos(p: &ZPolynomial, alpha: &Rational) -> PositivityVerdict {
    rat_poly_nonneg_on_pos(&p.specialize(alpha))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdInterval {
    /// Polynomial index `m` (the transition function `Φ_m`).
    pub poly_index: u32,
    pub lo: Rational,
    pub hi: Rational,
    /// `lo == hi` is proven: `P_m(α, 0) < 0` on all of `(lo, hi]`.
    pub exact: bool,
    /// The upper end of the search range was itself non-negative.
    pub saturated: bool,
    pub probes: usize,
    pub inconclusive_probes: usize,
}

impl ThresholdInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, alpha: &Rational) -> bool {
        &self.lo <= alpha && alpha <= &self.hi
    }
}

pub fn alpha_threshold(poly_index: u32, tol: f64) -> ThresholdInterval {
    alpha_threshold_in(poly_index, tol, &Rational::from(4))
}

/// Bisect on `(0, upper]` for the largest α at which `P_m(α, ·)` is certified non-negative.
///
/// Probes are dyadic rationals; an inconclusive probe is treated as not non-negative.
pub fn alpha_threshold_in(poly_index: u32, tol: f64, upper: &Rational) -> ThresholdInterval {
    let poly = p_poly(poly_index);
    let mut probes = 1;
    let mut inconclusive_probes = 0;
    let top = poly_nonneg_on_pos(&poly, upper);
    if top.is_nonnegative() {
        return ThresholdInterval {
            poly_index,
            lo: upper.clone(),
            hi: upper.clone(),
            exact: false,
            saturated: true,
            probes,
            inconclusive_probes,
        };
    }
    inconclusive_probes += usize::from(top.status == Status::Inconclusive);
    let mut lo = Rational::zero();
    let mut hi = upper.clone();
    while (&hi - &lo).to_f64() > tol {
        let mid = lo.midpoint(&hi);
        let verdict = poly_nonneg_on_pos(&poly, &mid);
        probes += 1;
        match verdict.status {
            Status::Nonnegative => lo = mid,
            Status::Negative => hi = mid,
            Status::Inconclusive => {
                inconclusive_probes += 1;
                hi = mid;
            }
        }
    }
    let exact = !lo.is_zero() && constant_term_negative_above(&poly.coeff(0), &lo, &hi);
    if exact {
        hi = lo.clone();
    }
    ThresholdInterval {
        poly_index,
        lo,
        hi,
        exact,
        saturated: false,
        probes,
        inconclusive_probes,
    }
}

/// `c(lo) = 0`, `c(hi) < 0` and no root of `c` in `(lo, hi]`.
fn constant_term_negative_above(c: &RatPoly, lo: &Rational, hi: &Rational) -> bool {
    if !c.eval(lo).is_zero() || !c.eval(hi).is_negative() {
        return false;
    }
    let sf = squarefree(c);
    SturmChain::new(&sf).count_roots(lo, hi) == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanCell {
    pub poly_index: u32,
    pub conjecture_n: u32,
    pub alpha: Rational,
    pub verdict: PositivityVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub cells: Vec<ScanCell>,
}

impl ScanReport {
    pub fn count(&self, status: Status) -> usize {
        self.cells.iter().filter(|c| c.verdict.status == status).count()
    }
}

/// Verdict matrix over polynomial indices and an α grid, ordered by `(index, α)`.
pub fn region_scan(indices: RangeInclusive<u32>, alphas: &[Rational]) -> ScanReport {
    let mut alphas = alphas.to_vec();
    alphas.sort();
    alphas.dedup();
    let mut cells = Vec::new();
    for m in indices {
        let poly = p_poly(m);
        for alpha in &alphas {
            let verdict = if alpha.is_positive() {
                poly_nonneg_on_pos(&poly, alpha)
            } else {
                PositivityVerdict::inconclusive()
            };
            cells.push(ScanCell {
                poly_index: m,
                conjecture_n: m + 1,
                alpha: alpha.clone(),
                verdict,
            });
        }
    }
    ScanReport { cells }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn quadratic_at_half_is_nonnegative() {
        let v = poly_nonneg_on_pos(&p_poly(2), &r(1, 2));
        assert!(v.is_nonnegative());
        assert_eq!(p_poly(2).specialize(&r(1, 2)), RatPoly::from_ints(&[0, 0, 3]));
    }

    #[test]
    fn linear_above_half_has_small_witness() {
        let v = poly_nonneg_on_pos(&p_poly(1), &r(3, 5));
        assert_eq!(v.status, Status::Negative);
        let w = v.witness.unwrap();
        assert!(w.is_positive() && w < r(1, 11));
        assert!(p_poly(1).eval(&r(3, 5), &w).is_negative());
        assert_eq!(p_poly(1).eval(&r(3, 5), &r(1, 22)), r(-1, 10));
    }

    #[test]
    fn quadratic_below_half_nonnegative() {
        assert!(poly_nonneg_on_pos(&p_poly(2), &r(3, 10)).is_nonnegative());
    }

    #[test]
    fn zero_polynomial_is_trivially_nonnegative() {
        let v = rat_poly_nonneg_on_pos(&RatPoly::zero());
        assert_eq!(v.certificate, Some(Certificate::AllCoefficientsNonnegative));
    }

    #[test]
    fn double_root_is_touching_not_negative() {
        // (z − 1)² (z + 3)
        let p = &RatPoly::from_ints(&[1, -2, 1]) * &RatPoly::from_ints(&[3, 1]);
        let v = rat_poly_nonneg_on_pos(&p);
        assert_eq!(v.certificate, Some(Certificate::SturmEvenMultiplicityRoots));
        // (z − 1)(z − 2)(z + 1)… negative on (1, 2)
        let q = &RatPoly::from_ints(&[2, -3, 1]) * &RatPoly::from_ints(&[1, 1]);
        let v = rat_poly_nonneg_on_pos(&q);
        let w = v.witness.unwrap();
        assert!(q.eval(&w).is_negative());
    }

    #[test]
    fn no_positive_roots() {
        // z² − z + 1 has complex roots
        let v = rat_poly_nonneg_on_pos(&RatPoly::from_ints(&[1, -1, 1]));
        assert_eq!(v.certificate, Some(Certificate::SturmNoPositiveRoot));
    }

    #[test]
    fn root_at_zero_is_factored_out() {
        // z (z − 1)²
        let p = RatPoly::from_ints(&[0, 1, -2, 1]);
        assert!(rat_poly_nonneg_on_pos(&p).is_nonnegative());
        // z (z − 1)
        let p = RatPoly::from_ints(&[0, -1, 1]);
        assert_eq!(rat_poly_nonneg_on_pos(&p).status, Status::Negative);
    }

    #[test]
    fn negative_leading_coefficient() {
        let p = RatPoly::from_ints(&[5, 3, -1]);
        let v = rat_poly_nonneg_on_pos(&p);
        assert!(p.eval(&v.witness.unwrap()).is_negative());
    }

    #[test]
    fn thresholds_are_one_half() {
        let t1 = alpha_threshold(1, DEFAULT_THRESHOLD_TOL);
        assert!(t1.exact);
        assert_eq!((t1.lo.clone(), t1.hi.clone()), (r(1, 2), r(1, 2)));
        let t2 = alpha_threshold(2, DEFAULT_THRESHOLD_TOL);
        assert!(t2.contains(&r(1, 2)));
        assert!(t2.width().to_f64() <= DEFAULT_THRESHOLD_TOL);
    }

    #[test]
    fn index_zero_saturates() {
        let t0 = alpha_threshold(0, 1e-3);
        assert!(t0.saturated);
    }

    #[test]
    fn scan_examples() {
        let scan = region_scan(1..=3, &[r(1, 4), r(1, 2)]);
        assert_eq!(scan.cells.len(), 6);
        assert_eq!(scan.count(Status::Nonnegative), 6);
        let scan = region_scan(1..=2, &[r(3, 4)]);
        assert_eq!(scan.count(Status::Negative), 2);
        // P_1(10, z) = 21 z − 19
        let scan = region_scan(1..=1, &[r(10, 1)]);
        assert_eq!(scan.cells[0].conjecture_n, 2);
        assert_eq!(scan.cells[0].verdict.status, Status::Negative);
        let scan = region_scan(0..=0, &[r(1, 1), r(2, 1), r(4, 1)]);
        assert_eq!(scan.count(Status::Nonnegative), 3);
    }
}

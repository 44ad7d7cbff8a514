use crate::exactalg::{RatPoly, Rational};

/// Monic gcd by the Euclidean algorithm.
pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y).expect("non-zero divisor");
        x = y;
        y = r;
    }
    match x.leading() {
        Some(lead) => x.scale(&lead.recip().expect("non-zero leading coefficient")),
        None => x,
    }
}

/// `p / gcd(p, p')`: same roots, all simple.
pub fn squarefree(p: &RatPoly) -> RatPoly {
    if p.degree().unwrap_or(0) == 0 {
        return p.clone();
    }
    let g = gcd(p, &p.derivative());
    p.div_rem(&g).expect("gcd is non-zero").0
}

/// Every root satisfies `|z| < 1 + max |a_i / a_n|`.
pub fn cauchy_bound(p: &RatPoly) -> Rational {
    let Some(lead) = p.leading() else {
        return Rational::one();
    };
    let n = p.coeffs().len() - 1;
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| (c / lead).abs())
        .max()
        .unwrap_or_default();
    Rational::one() + max
}

#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    /// Chain `p, p', −rem(p, p'), …`. Intended for squarefree `p`.
    pub fn new(p: &RatPoly) -> Self {
        let mut chain = vec![p.clone()];
        if p.is_zero() {
            return SturmChain { chain };
        }
        let mut next = p.derivative();
        while !next.is_zero() {
            chain.push(next);
            let len = chain.len();
            let (_, r) = chain[len - 2].div_rem(&chain[len - 1]).expect("non-zero");
            // positive rescaling keeps the signs and the numbers small
            next = match r.leading() {
                Some(lead) => r.scale(&-lead.abs().recip().expect("non-zero")),
                None => r,
            };
        }
        SturmChain { chain }
    }

    pub fn polys(&self) -> &[RatPoly] {
        &self.chain
    }

    pub fn sign_variations(&self, x: &Rational) -> usize {
        let signs = self
            .chain
            .iter()
            .map(|p| p.eval(x).signum())
            .filter(|&s| s != 0);
        let mut count = 0;
        let mut prev = 0;
        for s in signs {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_variations(a).saturating_sub(self.sign_variations(b))
    }
}

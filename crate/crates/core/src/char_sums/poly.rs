use crate::field::{FieldCtx, FieldElement, Result};

/// Dense univariate polynomial over GF(q), constant term first, no trailing
/// zeros. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldPoly {
    coeffs: Vec<FieldElement>,
}

impl FieldPoly {
    pub fn new(ctx: &FieldCtx, coeffs: Vec<FieldElement>) -> Result<Self> {
        for &c in &coeffs {
            ctx.check(c)?;
        }
        let mut poly = FieldPoly { coeffs };
        poly.trim();
        Ok(poly)
    }

    pub fn zero() -> Self {
        FieldPoly { coeffs: Vec::new() }
    }

    /// The polynomial x.
    pub fn x(ctx: &FieldCtx) -> Self {
        FieldPoly {
            coeffs: vec![ctx.zero(), ctx.one()],
        }
    }

    /// c·x^k.
    pub fn monomial(ctx: &FieldCtx, c: FieldElement, k: usize) -> Result<Self> {
        let mut coeffs = vec![ctx.zero(); k + 1];
        coeffs[k] = c;
        Self::new(ctx, coeffs)
    }

    /// a·x + b·x².
    pub fn linear_plus_quadratic(ctx: &FieldCtx, a: FieldElement, b: FieldElement) -> Result<Self> {
        Self::new(ctx, vec![ctx.zero(), a, b])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement) -> Result<FieldElement> {
        ctx.check(x)?;
        Ok(ctx.wrap(self.eval_code(ctx, x.code())))
    }

    pub(crate) fn eval_code(&self, ctx: &FieldCtx, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| ctx.add_codes(ctx.mul_codes(acc, x), c.code()))
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| ctx.wrap(ctx.mul_codes(ctx.from_int(k as i64).code(), c.code())))
            .collect();
        let mut poly = FieldPoly { coeffs };
        poly.trim();
        poly
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(ctx: &FieldCtx, a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(ctx, &b);
            a = b;
            b = r;
        }
        a.make_monic(ctx);
        a
    }

    /// True when the polynomial has no repeated factor over the algebraic
    /// closure, i.e. gcd(g, g') = 1.
    pub fn is_squarefree(&self, ctx: &FieldCtx) -> bool {
        if self.is_zero() {
            return false;
        }
        let g = Self::gcd(ctx, self, &self.derivative(ctx));
        g.degree() == Some(0)
    }

    fn rem(&self, ctx: &FieldCtx, divisor: &Self) -> Self {
        let db = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = ctx
            .inv(divisor.coeffs[db])
            .expect("trimmed polynomial has a nonzero lead");
        let mut r = self.coeffs.clone();
        while r.len() > db {
            let dr = r.len() - 1;
            let factor = ctx.mul_codes(r[dr].code(), lead_inv.code());
            let shift = dr - db;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let sub = ctx.mul_codes(factor, c.code());
                r[shift + i] = ctx.wrap(ctx.add_codes(r[shift + i].code(), ctx.neg_code(sub)));
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        FieldPoly { coeffs: r }
    }

    fn make_monic(&mut self, ctx: &FieldCtx) {
        if let Some(&lead) = self.coeffs.last() {
            let inv = ctx.inv(lead).expect("nonzero lead");
            for c in &mut self.coeffs {
                *c = ctx.wrap(ctx.mul_codes(c.code(), inv.code()));
            }
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

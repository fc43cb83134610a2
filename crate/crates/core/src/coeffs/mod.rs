//! Scalar and Hopf-valued coaction coefficients: q-binomials, φ, the
//! families R and λ, the coefficients c(k,l) = λ(k,l)·x^{k−l}g^{i−kt},
//! comatrices and their block structure.

mod blocks;
mod cache;
mod comatrix;

pub use blocks::{block_decompose, BlockReport};
pub use comatrix::{build_comatrix, verify_comatrix, Comatrix};

use serde::Serialize;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::hopf::{h_antipode, HopfElt, TaftParams};

/// Gaussian binomial via binom(k+1,p) = binom(k,p) + q^{k+1−p}·binom(k,p−1).
/// Zero outside `0 <= p <= k`.
pub fn qbinom(k: i64, p: i64, q: &CycNum) -> CycNum {
    let n = q.order();
    if k < 0 || p < 0 || p > k {
        return CycNum::zero(n);
    }
    if p == 0 || p == k {
        return CycNum::one(n);
    }
    let p = p.min(k) as usize;
    // row[r] = binom(kk, r) for the current kk; only entries up to p matter
    let mut row = vec![CycNum::zero(n); p + 1];
    row[0] = CycNum::one(n);
    let mut qpow = vec![CycNum::one(n)];
    for e in 1..=k as usize {
        qpow.push(&qpow[e - 1] * q);
    }
    for kk in 0..k as usize {
        // from binom(kk, ·) to binom(kk+1, ·), descending so row[r-1] is still old
        for r in (1..=p.min(kk + 1)).rev() {
            let add = &qpow[kk + 1 - r] * &row[r - 1];
            row[r].add_assign_ref(&add);
        }
    }
    row[p].clone()
}

/// The representative of `i mod big_n` in `{1, …, big_n}`.
pub fn phi(i: i64, big_n: u32) -> u32 {
    assert!(big_n >= 1, "N must be positive");
    let r = i.rem_euclid(big_n as i64) as u32;
    if r == 0 {
        big_n
    } else {
        r
    }
}

/// Which formula [`coeff_r`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RVariant {
    /// ξ^{t(j−l)} − ξ^{t(k−1)−i}
    General,
    /// w^{j−l} − w^{k−1−i₁} for charge i = t·i₁
    TMultiple,
}

/// Indices (i, j) of a coefficient family, reduced to i mod n and j mod N.
/// Contexts built with [`CoeffContext::t_multiple`] also keep i₁ mod N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoeffContext {
    params: TaftParams,
    i: u32,
    j: u32,
    i1: Option<u32>,
}

impl CoeffContext {
    pub fn new(params: TaftParams, i: i64, j: i64) -> Self {
        CoeffContext {
            params,
            i: i.rem_euclid(params.n() as i64) as u32,
            j: j.rem_euclid(params.big_n() as i64) as u32,
            i1: None,
        }
    }

    /// Context for charge t·i₁.
    pub fn t_multiple(params: TaftParams, i1: i64, j: i64) -> Self {
        let big_n = params.big_n() as i64;
        let i1 = i1.rem_euclid(big_n);
        let mut ctx = Self::new(params, params.t() as i64 * i1, j);
        ctx.i1 = Some(i1 as u32);
        ctx
    }

    pub fn params(&self) -> TaftParams {
        self.params
    }

    /// i mod n.
    pub fn i(&self) -> u32 {
        self.i
    }

    /// j mod N.
    pub fn j(&self) -> u32 {
        self.j
    }

    /// i₁ mod N for t-multiple contexts.
    pub fn i1(&self) -> Option<u32> {
        self.i1
    }

    /// Cache key; i₁ does not affect any value.
    pub(crate) fn key(&self) -> (u32, u32, u32, u32) {
        (self.params.n(), self.params.t(), self.i, self.j)
    }

    fn xi_t(&self, e: i64) -> CycNum {
        self.params.xi(self.params.t() as i64 * e)
    }
}

fn check_indices(k: u32, l: u32) -> Result<()> {
    if l > k {
        return Err(Error::Index(format!("need l <= k, got k={k}, l={l}")));
    }
    Ok(())
}

/// R(k,l); equals 1 when l = k.
pub fn coeff_r(ctx: &CoeffContext, k: u32, l: u32, variant: RVariant) -> Result<CycNum> {
    check_indices(k, l)?;
    let p = ctx.params;
    if l == k {
        return Ok(p.one());
    }
    let (k, l) = (k as i64, l as i64);
    match variant {
        RVariant::General => {
            let a = ctx.xi_t(ctx.j as i64 - l);
            let b = p.xi(p.t() as i64 * (k - 1) - ctx.i as i64);
            Ok(&a - &b)
        }
        RVariant::TMultiple => {
            let i1 = ctx.i1.ok_or_else(|| {
                Error::InvalidArgument("t-multiple variant needs a context built from i₁".into())
            })?;
            Ok(&p.w_pow(ctx.j as i64 - l) - &p.w_pow(k - 1 - i1 as i64))
        }
    }
}

fn r_general(ctx: &CoeffContext, k: u32, l: u32) -> CycNum {
    coeff_r(ctx, k, l, RVariant::General).expect("l <= k")
}

/// λ(k,l) by the three-case recursion (memoized per context).
pub fn lambda_rec(ctx: &CoeffContext, k: u32, l: u32) -> Result<CycNum> {
    check_indices(k, l)?;
    Ok(cache::lambda_table(ctx, k)[k as usize][l as usize].clone())
}

/// Builds rows 0..=kmax of the λ table from scratch (or extends `prev`).
pub(crate) fn lambda_rows(ctx: &CoeffContext, prev: &[Vec<CycNum>], kmax: u32) -> Vec<Vec<CycNum>> {
    let p = ctx.params;
    let mut rows: Vec<Vec<CycNum>> = prev.to_vec();
    if rows.is_empty() {
        rows.push(vec![p.one()]);
    }
    for k in rows.len() as u32..=kmax {
        let last = &rows[k as usize - 1];
        let mut row = Vec::with_capacity(k as usize + 1);
        for l in 0..=k {
            let v = if l == k {
                p.one()
            } else if l == 0 {
                &r_general(ctx, k, 0) * &last[0]
            } else {
                let mut v = &r_general(ctx, k, l) * &last[l as usize];
                v.add_assign_ref(&last[l as usize - 1]);
                v
            };
            row.push(v);
        }
        rows.push(row);
    }
    rows
}

/// λ(k,p) = binom(k,p)_{ξᵗ}·ξ^{−t(k−p)p}·∏_{l=p+1..k} R(l,0).
pub fn lambda_closed(ctx: &CoeffContext, k: u32, p: u32) -> Result<CycNum> {
    check_indices(k, p)?;
    let par = ctx.params;
    let mut v = qbinom(k as i64, p as i64, &par.w());
    v = &v * &ctx.xi_t(-((k - p) as i64) * p as i64);
    for l in p + 1..=k {
        if v.is_zero() {
            break;
        }
        v = &v * &r_general(ctx, l, 0);
    }
    Ok(v)
}

/// Rows `from..=kmax` of the closed form, sharing the Gaussian binomials and
/// the products of R(l,0) across a row.
pub(crate) fn lambda_closed_rows(ctx: &CoeffContext, from: u32, kmax: u32) -> Vec<Vec<CycNum>> {
    let par = ctx.params;
    let w = par.w();
    let r: Vec<CycNum> = (0..=kmax).map(|l| if l == 0 { par.one() } else { r_general(ctx, l, 0) }).collect();
    let mut binom = vec![par.one()];
    let mut wpow = par.one();
    let mut out = Vec::new();
    for k in 0..=kmax {
        if k > 0 {
            // binom(k,·) from binom(k−1,·): b(k,p) = b(k−1,p−1) + w^p·b(k−1,p)
            wpow = &wpow * &w;
            let mut next = vec![par.one(); k as usize + 1];
            let mut wp = par.one();
            for q in 1..k as usize {
                wp = &wp * &w;
                next[q] = &binom[q - 1] + &(&wp * &binom[q]);
            }
            binom = next;
        }
        if k < from {
            continue;
        }
        let mut row = vec![par.zero(); k as usize + 1];
        let mut tail = par.one();
        for q in (0..=k).rev() {
            if q < k {
                tail = &tail * &r[q as usize + 1];
            }
            row[q as usize] = &(&binom[q as usize] * &ctx.xi_t(-((k - q) as i64) * q as i64)) * &tail;
        }
        out.push(row);
    }
    out
}

/// c(k,l) as λ(k,l)·x^{k−l}g^{i−kt}, normalized to the gᵃxᵇ basis.
pub fn c_coeff_closed(ctx: &CoeffContext, k: u32, l: u32) -> Result<HopfElt> {
    let lam = lambda_closed(ctx, k, l)?;
    Ok(c_from_lambda(ctx, k, l, &lam))
}

pub(crate) fn c_from_lambda(ctx: &CoeffContext, k: u32, l: u32, lam: &CycNum) -> HopfElt {
    let p = ctx.params;
    let a = ctx.i as i64 - k as i64 * p.t() as i64;
    // x^b g^a = ξ^{ab} g^a x^b
    let phase = p.xi((k - l) as i64 * a);
    HopfElt::monomial(p, a, k - l, lam * &phase)
}

/// Rows 0..=kmax of c by the Hopf-level recursion
/// c(k+1,l) = c(k,l)S(x) + ξ^{t(j−l)}·x·c(k,l)·S(gᵗ) + c(k,l−1)S(gᵗ),
/// with c(0,0) = gⁱ and c = 0 outside 0 <= l <= k.
pub(crate) fn c_rows_recursive(ctx: &CoeffContext, prev: &[Vec<HopfElt>], kmax: u32) -> Vec<Vec<HopfElt>> {
    let p = ctx.params;
    let sx = h_antipode(&HopfElt::x_pow(p, 1));
    let sgt = HopfElt::g_pow(p, -(p.t() as i64));
    let x = HopfElt::x_pow(p, 1);
    let mut rows: Vec<Vec<HopfElt>> = prev.to_vec();
    if rows.is_empty() {
        rows.push(vec![HopfElt::g_pow(p, ctx.i as i64)]);
    }
    for k in rows.len() as u32..=kmax {
        let last = &rows[k as usize - 1];
        let mut row = Vec::with_capacity(k as usize + 1);
        for l in 0..=k {
            let mut v = HopfElt::zero(p);
            if l < k {
                let c = &last[l as usize];
                v.add_assign(&c.mul(&sx));
                let phase = ctx.xi_t(ctx.j as i64 - l as i64);
                v.add_assign(&x.mul(c).mul(&sgt).scale(&phase));
            }
            if l >= 1 {
                v.add_assign(&last[l as usize - 1].mul(&sgt));
            }
            row.push(v);
        }
        rows.push(row);
    }
    rows
}

/// c(k,l) from the Hopf-level recursion alone (not cached).
pub fn c_coeff_recursive(ctx: &CoeffContext, k: u32, l: u32) -> Result<HopfElt> {
    check_indices(k, l)?;
    Ok(c_rows_recursive(ctx, &[], k)[k as usize][l as usize].clone())
}

/// c(k,l); both the closed form and the recursion are evaluated (once per
/// context and row, then memoized) and must agree.
pub fn c_coeff(ctx: &CoeffContext, k: u32, l: u32) -> Result<HopfElt> {
    check_indices(k, l)?;
    Ok(cache::c_table(ctx, k)[k as usize][l as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx41() -> CoeffContext {
        CoeffContext::t_multiple(TaftParams::new(4, 1).unwrap(), 1, 0)
    }

    #[test]
    fn closed_rows_match_pointwise() {
        for (n, t) in [(4u32, 1u32), (6, 2), (5, 0)] {
            let p = TaftParams::new(n, t).unwrap();
            for (i, j) in [(0i64, 0i64), (1, 2), (3, 1)] {
                let c = CoeffContext::new(p, i, j);
                let rows = lambda_closed_rows(&c, 2, 9);
                for (k, row) in (2..=9u32).zip(&rows) {
                    for (l, v) in row.iter().enumerate() {
                        assert_eq!(*v, lambda_closed(&c, k, l as u32).unwrap(), "H({n},{t}) ({i},{j}) λ({k},{l})");
                    }
                }
            }
        }
    }

    #[test]
    fn qbinom_examples() {
        let q = CycNum::root_power(7, 3);
        assert_eq!(qbinom(2, 1, &q), &CycNum::one(7) + &q);
        assert!(qbinom(5, 0, &q).is_one());
        // [2]_{-1} = 0 but binom(4,2)_{-1} = binom(2,1) = 2 by q-Lucas
        assert!(qbinom(2, 1, &CycNum::root_power(2, 1)).is_zero());
        assert_eq!(qbinom(4, 2, &CycNum::root_power(2, 1)), CycNum::from_int(2, 2));
        assert!(qbinom(3, 4, &q).is_zero());
        assert!(qbinom(3, -1, &q).is_zero());
    }

    /// binom(k,p)_q = Σ over p-subsets of q^{inversions}.
    fn qbinom_by_subsets(k: u32, p: u32, q: &CycNum) -> CycNum {
        let mut out = CycNum::zero(q.order());
        for mask in 0u32..(1 << k) {
            if mask.count_ones() != p {
                continue;
            }
            let mut inv = 0u32;
            let mut ones = 0u32;
            for b in 0..k {
                if mask >> b & 1 == 1 {
                    ones += 1;
                } else {
                    inv += ones;
                }
            }
            out = &out + &q.pow(inv);
        }
        out
    }

    #[test]
    fn qbinom_matches_subset_count() {
        for n in [2u32, 3, 4, 6, 8] {
            for e in 0..n {
                let q = CycNum::root_power(n, e as i64);
                for k in 0..8 {
                    for p in 0..=k {
                        assert_eq!(qbinom(k as i64, p as i64, &q), qbinom_by_subsets(k, p, &q), "n={n} e={e} k={k} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0, 4), 4);
        assert_eq!(phi(-3, 4), 1);
        assert_eq!(phi(5, 4), 1);
    }

    #[test]
    fn r_and_lambda_examples() {
        let c = ctx41();
        let p = c.params();
        assert!(coeff_r(&c, 3, 3, RVariant::General).unwrap().is_one());
        assert!(coeff_r(&c, 2, 0, RVariant::TMultiple).unwrap().is_zero());
        let one_minus = &p.one() - &p.xi(3);
        assert_eq!(coeff_r(&c, 1, 0, RVariant::TMultiple).unwrap(), one_minus);
        assert_eq!(coeff_r(&c, 1, 0, RVariant::General).unwrap(), one_minus);
        assert_eq!(lambda_rec(&c, 1, 0).unwrap(), one_minus);
        assert!(lambda_rec(&c, 2, 0).unwrap().is_zero());
        assert!(lambda_closed(&c, 2, 1).unwrap().is_zero());
        assert!(matches!(coeff_r(&c, 1, 2, RVariant::General), Err(Error::Index(_))));
        let plain = CoeffContext::new(p, 1, 0);
        assert!(coeff_r(&plain, 1, 0, RVariant::TMultiple).is_err());
    }

    #[test]
    fn c_examples() {
        let c = CoeffContext::new(TaftParams::new(6, 2).unwrap(), 5, 1);
        let p = c.params();
        assert_eq!(c_coeff(&c, 0, 0).unwrap(), HopfElt::g_pow(p, 5));
        assert_eq!(c_coeff(&c, 3, 3).unwrap(), HopfElt::g_pow(p, 5 - 6));
        for k in 0..=6 {
            for l in 0..=k {
                assert_eq!(c_coeff_recursive(&c, k, l).unwrap(), c_coeff_closed(&c, k, l).unwrap());
            }
        }
    }
}

use serde::Serialize;

use super::{build_comatrix, coeff_r, lambda_rec, phi, CoeffContext, RVariant};
use crate::error::{Error, Result};
use crate::report::CheckReport;

/// One diagonal block of 𝒜(N−1): the bar matrix of context (t·i₁, j) placed at `offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDescriptor {
    pub offset: usize,
    pub size: usize,
    pub i1: u32,
    pub j: u32,
}

/// Outcome of [`block_decompose`].
#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    /// m = N − φ(−i₁−j); the leading block has size m+1.
    pub m: u32,
    pub big_n: u32,
    /// Blocks of 𝒜(N−1).
    pub blocks: Vec<BlockDescriptor>,
    /// Number of copies of 𝒜(N−1) checked in 𝒜(pN−1).
    pub copies: u32,
    pub report: CheckReport,
}

/// Computes m and checks the block structure of 𝒜 for a t-multiple context:
/// the vanishing pattern of λ, the split of 𝒜(N−1) into two bar blocks when
/// m < N−1, and 𝒜(qN−1) = q copies of 𝒜(N−1) for q ≤ `p`.
pub fn block_decompose(ctx: &CoeffContext, p: u32) -> Result<BlockReport> {
    let i1 = ctx
        .i1()
        .ok_or_else(|| Error::InvalidArgument("block decomposition needs a t-multiple context".into()))?;
    let par = ctx.params();
    let big_n = par.big_n();
    let j = ctx.j();
    let m = big_n - phi(-(i1 as i64) - j as i64, big_n);
    let mut rep = CheckReport::new(format!("blocks of A^(t·{i1})_{j} for H({},{})", par.n(), par.t()));

    // m is also the first index with R(m+1,0) = 0
    let first_zero = (1..=big_n)
        .find(|&k| coeff_r(ctx, k, 0, RVariant::TMultiple).is_ok_and(|r| r.is_zero()))
        .map(|k| k - 1);
    rep.check(first_zero == Some(m), || {
        format!("first vanishing R(k,0) gives m = {first_zero:?}, formula gives {m}")
    });

    let kmax = (p.max(1) * big_n).saturating_sub(1);
    for k in 0..=kmax {
        for l in 0..=k.min(m) {
            let lam = lambda_rec(ctx, k, l)?;
            if k <= m {
                rep.check(!lam.is_zero(), || format!("λ({k},{l}) vanishes inside the bar block"));
            } else {
                rep.check(lam.is_zero(), || format!("λ({k},{l}) nonzero below the bar block"));
            }
        }
    }

    let a = build_comatrix(ctx, big_n - 1);
    let bar = build_comatrix(ctx, m);
    let mut blocks = vec![BlockDescriptor {
        offset: 0,
        size: m as usize + 1,
        i1,
        j,
    }];
    rep.check(a.block(0, m as usize + 1) == bar.block(0, m as usize + 1), || {
        "leading block of A(N-1) differs from the bar matrix".into()
    });
    if m + 1 < big_n {
        let tail_size = (big_n - m - 1) as usize;
        let ctx2 = CoeffContext::t_multiple(par, i1 as i64 - m as i64 - 1, j as i64 - m as i64 - 1);
        let bar2 = build_comatrix(&ctx2, big_n - m - 2);
        let m2 = big_n - phi(-(ctx2.i1().unwrap() as i64) - ctx2.j() as i64, big_n);
        rep.check(m2 as usize + 1 == tail_size, || {
            format!("second bar block has size {} but should be {tail_size}", m2 + 1)
        });
        rep.check(a.block(m as usize + 1, tail_size) == bar2.block(0, tail_size), || {
            "trailing block of A(N-1) differs from the shifted bar matrix".into()
        });
        rep.check(a.is_block_diagonal(&[m as usize + 1, tail_size]), || {
            "A(N-1) has entries outside its two diagonal blocks".into()
        });
        blocks.push(BlockDescriptor {
            offset: m as usize + 1,
            size: tail_size,
            i1: ctx2.i1().unwrap(),
            j: ctx2.j(),
        });
    }

    let unit = a.block(0, big_n as usize);
    for q in 1..=p {
        let big = build_comatrix(ctx, q * big_n - 1);
        let sizes = vec![big_n as usize; q as usize];
        rep.check(big.is_block_diagonal(&sizes), || {
            format!("A({}N-1) is not block diagonal", q)
        });
        for c in 0..q as usize {
            rep.check(big.block(c * big_n as usize, big_n as usize) == unit, || {
                format!("copy {c} of A(N-1) inside A({q}N-1) differs")
            });
        }
    }

    Ok(BlockReport {
        m,
        big_n,
        blocks,
        copies: p,
        report: rep,
    })
}

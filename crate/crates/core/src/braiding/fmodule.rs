//! F(𝒱_{i,j}), the simple Yetter-Drinfeld module over the Taft algebra
//! A(N,N,0,w⁻¹) whose braiding agrees with that of V(ti,j,0).

use super::operator::{braiding_operator, BraidingOperator};
use crate::coeffs::{lambda_rec, phi, qbinom, CoeffContext};
use crate::cyclo::{CycNum, SparseMatrix};
use crate::hopf::TaftParams;
use crate::report::CheckReport;
use crate::yd::build_finite_module;

/// dim F(𝒱_{i,j}) = r+1 = φ(i+j+1).
pub fn f_module_dim(params: TaftParams, i: i64, j: i64) -> usize {
    phi(i + j + 1, params.big_n()) as usize
}

/// β_{k−l,k} = binom(k,l)_w ∏_{s=l}^{k−1}(w^{−i} − w^{j−s}) for l < k, and 1 for l = k.
pub fn beta(params: TaftParams, i: i64, j: i64, k: u32, l: u32) -> CycNum {
    assert!(l <= k, "beta needs l <= k");
    if l == k {
        return params.one();
    }
    let mut acc = qbinom(k as i64, l as i64, &params.w());
    for s in l..k {
        acc = &acc * &(&params.w_pow(-i) - &params.w_pow(j - s as i64));
    }
    acc
}

/// Braiding of F(𝒱_{i,j}) with the given β table.
pub fn f_module_braiding_with(
    params: TaftParams,
    i: i64,
    j: i64,
    beta_fn: impl Fn(u32, u32) -> CycNum,
) -> BraidingOperator {
    let dim = f_module_dim(params, i, j);
    let r = dim - 1;
    // g·u_k = w^{k−j}u_k, x·u_k = −w^{k−j}u_{k+1}, x·u_r = 0
    let act = |a: i64, b: usize, k: usize| -> Option<(usize, CycNum)> {
        let mut coef = params.w_pow(a * (k as i64 - j));
        let mut idx = k;
        for _ in 0..b {
            if idx == r {
                return None;
            }
            coef = -(&coef * &params.w_pow(idx as i64 - j));
            idx += 1;
        }
        Some((idx, coef))
    };
    let mut sparse = SparseMatrix::zeros(dim * dim, dim * dim);
    for p in 0..dim {
        for k in 0..dim {
            let col = &mut sparse.columns[p * dim + k];
            // δ(u_p) = Σ_l β_{p−l,p} x^{p−l}g^{−i+l} ⊗ u_l
            for l in 0..=p {
                if let Some((s, c)) = act(l as i64 - i, p - l, k) {
                    col.add_product((s * dim + l) as u32, &beta_fn(p as u32, l as u32), &c);
                }
            }
        }
    }
    BraidingOperator::from_sparse(params, format!("F(V_{{{i},{j}}})"), dim, sparse)
}

pub fn f_module_braiding(params: TaftParams, i: i64, j: i64) -> BraidingOperator {
    f_module_braiding_with(params, i, j, |k, l| beta(params, i, j, k, l))
}

/// β_{p−l,p}·(−1)^{p−l}·w^{(p−l)(p−l−1)/2} = λ(p,l) for the context (ti, j).
pub fn beta_lambda_identity(params: TaftParams, i: i64, j: i64) -> CheckReport {
    let mut rep = CheckReport::new(format!("beta/lambda identity for (i,j) = ({i},{j})"));
    let ctx = CoeffContext::t_multiple(params, i, j);
    let dim = f_module_dim(params, i, j) as u32;
    for p in 0..dim {
        for l in 0..=p {
            let d = (p - l) as i64;
            let sign = if d % 2 == 0 { params.one() } else { params.int(-1) };
            let lhs = &(&beta(params, i, j, p, l) * &sign) * &params.w_pow(d * (d - 1) / 2);
            match lambda_rec(&ctx, p, l) {
                Ok(rhs) => {
                    rep.check(lhs == rhs, || format!("mismatch at (p,l) = ({p},{l})"));
                }
                Err(e) => rep.fail(format!("lambda({p},{l}): {e}")),
            }
        }
    }
    rep
}

/// Compares the braiding of V(ti,j,0) with that of F(𝒱_{i,j}) under v_k ↦ u_k.
pub fn braided_iso_report(params: TaftParams, i: i64, j: i64) -> CheckReport {
    let f = f_module_braiding(params, i, j);
    let mut rep = compare_with(params, i, j, &f);
    rep.absorb(beta_lambda_identity(params, i, j));
    rep
}

pub fn braided_iso_check(params: TaftParams, i: i64, j: i64) -> bool {
    braided_iso_report(params, i, j).passed
}

/// Matrix comparison of V(ti,j,0) against an arbitrary candidate operator.
pub fn compare_with(params: TaftParams, i: i64, j: i64, f: &BraidingOperator) -> CheckReport {
    let mut rep = CheckReport::new(format!("V(t·{i},{j},0) against {}", f.label));
    let v = match build_finite_module(params, i, j, params.zero()) {
        Ok(v) => v,
        Err(e) => {
            rep.fail(e.to_string());
            return rep;
        }
    };
    if !rep.check(v.dim == f.dim, || format!("dimensions differ: {} and {}", v.dim, f.dim)) {
        return rep;
    }
    let c1 = braiding_operator(&v);
    let d = v.dim;
    for p in 0..d {
        for k in 0..d {
            rep.check(c1.image(p, k) == f.image(p, k), || format!("c(v_{p}⊗v_{k}) differs"));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yd::build_finite_module;

    #[test]
    fn beta_diagonal_is_one() {
        let p = TaftParams::new(6, 1).unwrap();
        for k in 0..6 {
            assert!(beta(p, 2, 3, k, k).is_one());
        }
    }

    #[test]
    fn dims_agree() {
        for (n, t) in [(4, 1), (6, 2), (6, 3), (5, 0)] {
            let p = TaftParams::new(n, t).unwrap();
            for i in 0..n as i64 {
                for j in 0..n as i64 {
                    let v = build_finite_module(p, i, j, p.zero()).unwrap();
                    assert_eq!(v.dim, f_module_dim(p, i, j));
                }
            }
        }
    }

    #[test]
    fn iso_small() {
        for (n, t) in [(3, 1), (4, 1), (6, 2), (6, 4), (2, 0)] {
            let p = TaftParams::new(n, t).unwrap();
            for i in 0..n as i64 {
                for j in 0..n as i64 {
                    let r = braided_iso_report(p, i, j);
                    assert!(r.passed, "{}", r.summary());
                }
            }
        }
    }

    #[test]
    fn perturbed_beta_detected() {
        let p = TaftParams::new(5, 1).unwrap();
        let (i, j) = (1, 1);
        assert!(f_module_dim(p, i, j) >= 2);
        let bad = f_module_braiding_with(p, i, j, |k, l| {
            let b = beta(p, i, j, k, l);
            if (k, l) == (1, 0) {
                &b + &p.one()
            } else {
                b
            }
        });
        assert!(!compare_with(p, i, j, &bad).passed);
    }
}

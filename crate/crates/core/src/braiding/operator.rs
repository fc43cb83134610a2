use crate::coeffs::{lambda_rec, phi, CoeffContext};
use crate::cyclo::{mat_rank, CycMatrix, SparseMatrix, SparseVec};
use crate::error::{Error, Result};
use crate::hopf::TaftParams;
use crate::report::CheckReport;
use crate::yd::YdModule;

/// The braiding c(v⊗w) = v₋₁·w ⊗ v₀ of a module, on the basis v_a⊗v_b with
/// index a·dim + b.
#[derive(Clone, Debug)]
pub struct BraidingOperator {
    pub label: String,
    pub params: TaftParams,
    /// Source module; `None` for F(𝒱_{i,j}) and hand-built operators.
    pub module: Option<YdModule>,
    pub dim: usize,
    pub matrix: CycMatrix,
    /// Set for truncated windows, where v_k = 0 is assumed for k > K.
    pub approximate: bool,
    sparse: SparseMatrix,
}

impl BraidingOperator {
    /// Wraps a (dim²)×(dim²) matrix.
    pub fn from_matrix(params: TaftParams, label: impl Into<String>, dim: usize, matrix: CycMatrix) -> Result<Self> {
        if matrix.rows() != dim * dim || matrix.cols() != dim * dim {
            return Err(Error::DomainMismatch(format!(
                "braiding on a {dim}-dimensional space needs a {0}×{0} matrix",
                dim * dim
            )));
        }
        let sparse = SparseMatrix::from_dense(&matrix);
        Ok(BraidingOperator {
            label: label.into(),
            params,
            module: None,
            dim,
            matrix,
            approximate: false,
            sparse,
        })
    }

    pub(crate) fn from_sparse(params: TaftParams, label: String, dim: usize, sparse: SparseMatrix) -> Self {
        BraidingOperator {
            label,
            params,
            module: None,
            dim,
            matrix: sparse.to_dense(params.n()),
            approximate: false,
            sparse,
        }
    }

    pub fn sparse(&self) -> &SparseMatrix {
        &self.sparse
    }

    /// c(v_a ⊗ v_b).
    pub fn image(&self, a: usize, b: usize) -> &SparseVec {
        &self.sparse.columns[a * self.dim + b]
    }

    /// c_k = id^{⊗(k−1)} ⊗ c ⊗ id^{⊗(m−k−1)} on V^{⊗m}, with 1 ≤ k < m. Word
    /// (i₁, …, i_m) has index Σ i_r·dim^{m−r}.
    pub fn apply_at(&self, m: usize, k: usize, v: &SparseVec) -> SparseVec {
        debug_assert!(k >= 1 && k < m);
        let d = self.dim as u32;
        let low = d.pow((m - k - 1) as u32);
        let pair = d * d;
        let mid = pair * low;
        let mut out = SparseVec::new();
        for (idx, a) in v.iter() {
            let pre = idx / mid;
            let p = (idx / low) % pair;
            let post = idx % low;
            for (q, c) in self.sparse.columns[p as usize].iter() {
                out.add_product(pre * mid + q * low + post, a, c);
            }
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        mat_rank(&self.matrix).is_ok_and(|r| r == self.dim * self.dim)
    }
}

/// c(v_a⊗v_b) = Σ_l c(a,l)·v_b ⊗ v_l.
pub fn braiding_operator(m: &YdModule) -> BraidingOperator {
    let p = m.params();
    let dim = m.dim;
    let mut sparse = SparseMatrix::zeros(dim * dim, dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let col = &mut sparse.columns[a * dim + b];
            let vb = m.basis_vector(b);
            for (h, l) in &m.coaction[a] {
                for (s, coef) in m.act(h, &vb).iter().enumerate() {
                    col.add_term((s * dim + l) as u32, coef);
                }
            }
        }
    }
    let mut b = BraidingOperator::from_sparse(p, m.spec.describe(), dim, sparse);
    b.approximate = m.truncated;
    b.module = Some(m.clone());
    b
}

/// The closed coefficient form of the braiding of V(ti,j,0):
/// c(v_p⊗v_k) = w^{(i−p)(j−k)} Σ_{l≤p} λ(p,l) v_{p+k−l}⊗v_l, with v_s = 0 past the top.
pub fn braiding_closed_form(params: TaftParams, i1: i64, j: i64) -> Result<CycMatrix> {
    let big_n = params.big_n();
    let dim = (big_n - phi(-i1 - j, big_n)) as usize + 1;
    let ctx = CoeffContext::t_multiple(params, i1, j);
    let mut out = CycMatrix::zeros(params.n(), dim * dim, dim * dim);
    for p in 0..dim {
        for k in 0..dim {
            let phase = params.w_pow((i1 - p as i64) * (j - k as i64));
            for l in 0..=p {
                let s = p + k - l;
                if s >= dim {
                    continue;
                }
                let lam = lambda_rec(&ctx, p as u32, l as u32)?;
                let entry = out.get_mut(s * dim + l, p * dim + k);
                *entry = &*entry + &(&phase * &lam);
            }
        }
    }
    Ok(out)
}

/// (c⊗id)(id⊗c)(c⊗id) − (id⊗c)(c⊗id)(id⊗c) on V^{⊗3}, one column per word.
pub fn yang_baxter_residual(b: &BraidingOperator) -> SparseMatrix {
    let size = b.dim.pow(3);
    let mut out = SparseMatrix::zeros(size, size);
    for (idx, col) in out.columns.iter_mut().enumerate() {
        *col = yb_column(b, idx as u32);
    }
    out
}

fn yb_column(b: &BraidingOperator, idx: u32) -> SparseVec {
    let e = SparseVec::unit(idx, b.params.n());
    let lhs = b.apply_at(3, 1, &b.apply_at(3, 2, &b.apply_at(3, 1, &e)));
    let mut rhs = b.apply_at(3, 2, &b.apply_at(3, 1, &b.apply_at(3, 2, &e)));
    rhs.axpy(&-b.params.one(), &lhs);
    rhs
}

/// Braid relation on every basis word. For truncated windows only words with
/// index sum ≤ K are checked: the braiding preserves index sums, so on those
/// words no truncated vector is ever produced.
pub fn yang_baxter_check(b: &BraidingOperator) -> CheckReport {
    let mut rep = CheckReport::new(format!("braid relation for {}", b.label));
    let d = b.dim;
    let limit = if b.approximate { d - 1 } else { usize::MAX };
    for idx in 0..d.pow(3) {
        let (x, y, z) = (idx / (d * d), (idx / d) % d, idx % d);
        if x + y + z > limit {
            continue;
        }
        let r = yb_column(b, idx as u32);
        rep.check(r.is_empty(), || format!("residual nonzero on v_{x}⊗v_{y}⊗v_{z}"));
    }
    rep
}

/// Right triangularity with respect to v_m < … < v₀: every c(v_p⊗v_k) is
/// β·v_k⊗v_p plus terms u⊗v_l with l < p.
pub fn triangularity_check(b: &BraidingOperator) -> bool {
    let order: Vec<usize> = (0..b.dim).rev().collect();
    triangularity_check_with_order(b, &order)
}

/// Right triangularity for the order listing basis indices from smallest to
/// largest: c(x⊗y) = β·y⊗x + Σ_{z>x} w_z⊗z.
pub fn triangularity_check_with_order(b: &BraidingOperator, order: &[usize]) -> bool {
    let d = b.dim;
    let mut rank = vec![usize::MAX; d];
    for (pos, &v) in order.iter().enumerate() {
        if v < d {
            rank[v] = pos;
        }
    }
    if order.len() != d || rank.contains(&usize::MAX) {
        return false;
    }
    (0..d).all(|x| {
        (0..d).all(|y| {
            b.image(x, y).iter().all(|(idx, _)| {
                let (s, z) = (idx as usize / d, idx as usize % d);
                (s, z) == (y, x) || rank[z] > rank[x]
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycNum;
    use crate::yd::{build_finite_module, build_infinite_truncation};

    #[test]
    fn dim_one_scalar() {
        let p = TaftParams::new(6, 2).unwrap();
        // N = 3, i₁ = 1, j = 2: i₁ + j ≡ 0
        let m = build_finite_module(p, 1, 2, CycNum::zero(6)).unwrap();
        assert_eq!(m.dim, 1);
        let b = braiding_operator(&m);
        assert_eq!(*b.matrix.get(0, 0), p.w_pow(2));
    }

    #[test]
    fn t_zero_is_flip() {
        let p = TaftParams::new(3, 0).unwrap();
        let m = build_finite_module(p, 0, 1, CycNum::one(3)).unwrap();
        let b = braiding_operator(&m);
        let d = m.dim;
        for a in 0..d {
            for c in 0..d {
                assert_eq!(*b.image(a, c), SparseVec::unit((c * d + a) as u32, 3));
            }
        }
    }

    #[test]
    fn matches_closed_form() {
        for (n, t) in [(4, 1), (6, 2), (5, 1), (8, 2)] {
            let p = TaftParams::new(n, t).unwrap();
            for i in 0..p.big_n() as i64 {
                for j in 0..p.big_n() as i64 {
                    let m = build_finite_module(p, i, j, CycNum::zero(n)).unwrap();
                    assert_eq!(braiding_operator(&m).matrix, braiding_closed_form(p, i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn braid_relation_and_shape() {
        let p = TaftParams::new(4, 1).unwrap();
        for lam in [CycNum::zero(4), CycNum::root_power(4, 1)] {
            for i in 0..4 {
                for j in 0..4 {
                    let m = build_finite_module(p, i, j, lam.clone()).unwrap();
                    let b = braiding_operator(&m);
                    assert!(yang_baxter_check(&b).passed);
                    assert!(triangularity_check(&b));
                    assert!(b.is_invertible());
                }
            }
        }
    }

    #[test]
    fn standard_order_is_not_triangular() {
        let p = TaftParams::new(4, 1).unwrap();
        let m = build_finite_module(p, 1, 1, CycNum::zero(4)).unwrap();
        assert!(m.dim >= 2);
        let b = braiding_operator(&m);
        let up: Vec<usize> = (0..m.dim).collect();
        assert!(!triangularity_check_with_order(&b, &up));
    }

    #[test]
    fn hand_built_violation() {
        let p = TaftParams::new(3, 1).unwrap();
        // c(v₀⊗v₀) = v₀⊗v₀ + v₁⊗v₀ breaks the shape for both orders
        let mut mat = CycMatrix::identity(3, 4);
        mat.set(2, 0, p.one());
        mat.set(1, 1, p.zero());
        mat.set(2, 1, p.one());
        mat.set(2, 2, p.zero());
        mat.set(1, 2, p.one());
        let b = BraidingOperator::from_matrix(p, "control", 2, mat).unwrap();
        assert!(!triangularity_check(&b));
        assert!(!triangularity_check_with_order(&b, &[0, 1]));
    }

    #[test]
    fn window_braid_relation() {
        let p = TaftParams::new(4, 2).unwrap();
        let m = build_infinite_truncation(p, 1, 0, 6).unwrap();
        let b = braiding_operator(&m);
        assert!(b.approximate);
        assert!(yang_baxter_check(&b).passed);
    }
}

//! Braided symmetrizers S_m on V^{⊗m} and graded Nichols dimensions.
//!
//! Basis words (i₁, …, i_m) are indexed by Σ i_r·dim^{m−r}. Operators are
//! returned column-sparse.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::operator::{braiding_operator, BraidingOperator};
use crate::cyclo::{CycNum, EchelonBasis, SparseMatrix, SparseVec};
use crate::error::{Error, Result};
use crate::hopf::HopfElt;
use crate::report::CheckReport;
use crate::yd::{ModuleKind, YdModule};

/// dim(V)^m must not exceed this many basis words.
pub const DEFAULT_BUDGET: u64 = 6561;

fn words(dim: usize, m: usize, budget: u64) -> Result<usize> {
    let size = (dim as u64).checked_pow(m as u32).filter(|&s| s <= budget);
    match size {
        Some(s) if s <= u32::MAX as u64 => Ok(s as usize),
        _ => Err(Error::BudgetExceeded(format!(
            "{dim}^{m} basis words exceed the budget of {budget}"
        ))),
    }
}

fn exact_operator(b: &BraidingOperator) -> Result<()> {
    if b.approximate {
        return Err(Error::Unsupported(format!(
            "{} is a truncated window; symmetrizers need an exact braiding",
            b.label
        )));
    }
    Ok(())
}

fn exact_module(m: &YdModule) -> Result<()> {
    if m.truncated {
        return Err(Error::Unsupported(format!(
            "{} is a truncated window; symmetrizers need an exact braiding",
            m.spec.describe()
        )));
    }
    Ok(())
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .map(|a| (a + 1..p.len()).filter(|&b| p[a] > p[b]).count())
        .sum()
}

/// s_k ∘ σ for the transposition s_k of positions k, k+1 (1-based).
fn left_mul(k: usize, p: &[usize]) -> Vec<usize> {
    p.iter()
        .map(|&x| {
            if x == k - 1 {
                k
            } else if x == k {
                k - 1
            } else {
                x
            }
        })
        .collect()
}

fn reduced_word(p: &[usize], pick_max: bool) -> Vec<usize> {
    let mut cur = p.to_vec();
    let mut word = Vec::new();
    let m = p.len();
    while inversions(&cur) > 0 {
        let len = inversions(&cur);
        let mut descents = (1..m).filter(|&k| inversions(&left_mul(k, &cur)) < len);
        let k = if pick_max { descents.next_back() } else { descents.next() }.expect("a descent exists");
        word.push(k);
        cur = left_mul(k, &cur);
    }
    word
}

/// Lexicographically minimal reduced word s_{k₁}⋯s_{k_r} of σ.
pub fn lexmin_reduced_word(p: &[usize]) -> Vec<usize> {
    reduced_word(p, false)
}

/// Lexicographically maximal reduced word of σ.
pub fn lexmax_reduced_word(p: &[usize]) -> Vec<usize> {
    reduced_word(p, true)
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..m {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=k {
                let mut q: Vec<usize> = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// c_{k₁}∘⋯∘c_{k_r} applied to v (c_{k_r} first).
pub fn lift_word(b: &BraidingOperator, m: usize, word: &[usize], v: &SparseVec) -> SparseVec {
    word.iter().rev().fold(v.clone(), |acc, &k| b.apply_at(m, k, &acc))
}

/// S_m = Σ_σ lift(lexmin word of σ). Lexmin words are closed under taking
/// suffixes, so each lift reuses the lift of its tail.
pub fn symmetrizer_permsum(b: &BraidingOperator, m: usize, budget: u64) -> Result<SparseMatrix> {
    exact_operator(b)?;
    if m == 0 {
        return Err(Error::InvalidArgument("degree m must be at least 1".into()));
    }
    let size = words(b.dim, m, budget)?;
    let mut word_list: Vec<Vec<usize>> = all_permutations(m).iter().map(|p| lexmin_reduced_word(p)).collect();
    word_list.sort_by_key(|w| w.len());
    let order = b.params.n();
    let mut out = SparseMatrix::zeros(size, size);
    for (idx, col) in out.columns.iter_mut().enumerate() {
        let mut lifted: HashMap<&[usize], SparseVec> = HashMap::new();
        for w in &word_list {
            let v = if w.is_empty() {
                SparseVec::unit(idx as u32, order)
            } else {
                b.apply_at(m, w[0], &lifted[&w[1..]])
            };
            col.axpy(&CycNum::one(order), &v);
            lifted.insert(w.as_slice(), v);
        }
    }
    Ok(out)
}

/// Compares the lexmin and lexmax lifts of `samples` random permutations on
/// every basis word of V^{⊗m}.
pub fn reduced_word_spot_check(b: &BraidingOperator, m: usize, samples: usize, seed: u64, budget: u64) -> Result<CheckReport> {
    exact_operator(b)?;
    let size = words(b.dim, m, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CheckReport::new(format!("reduced-word independence for {} in degree {m}", b.label));
    let mut perm: Vec<usize> = (0..m).collect();
    for _ in 0..samples {
        perm.shuffle(&mut rng);
        let (lo, hi) = (lexmin_reduced_word(&perm), lexmax_reduced_word(&perm));
        for idx in 0..size {
            let e = SparseVec::unit(idx as u32, b.params.n());
            rep.check(lift_word(b, m, &lo, &e) == lift_word(b, m, &hi, &e), || {
                format!("words {lo:?} and {hi:?} lift differently on word {idx}")
            });
        }
    }
    Ok(rep)
}

/// Δ_{1^m} evaluated by the recursion S_m = (π₁ ⊗ S_{m−1})∘Δ: the k-th term
/// of the (1, m−1) component is (u₁⋯u_{k−1})₋₁·u_k ⊗ (u₁⋯u_{k−1})₀ ⊗ u_{k+1}⋯u_m,
/// with the diagonal coaction on tensor words.
pub struct RecursiveSymmetrizer<'a> {
    module: &'a YdModule,
    memo: HashMap<(usize, u32), SparseVec>,
}

impl<'a> RecursiveSymmetrizer<'a> {
    pub fn new(module: &'a YdModule) -> Result<Self> {
        exact_module(module)?;
        Ok(RecursiveSymmetrizer {
            module,
            memo: HashMap::new(),
        })
    }

    fn digits(&self, m: usize, idx: u32) -> Vec<usize> {
        let d = self.module.dim as u32;
        let mut out = vec![0; m];
        let mut x = idx;
        for slot in out.iter_mut().rev() {
            *slot = (x % d) as usize;
            x /= d;
        }
        out
    }

    /// S_m applied to the basis word `idx` of V^{⊗m}.
    pub fn apply(&mut self, m: usize, idx: u32) -> SparseVec {
        let p = self.module.params();
        if m == 1 {
            return SparseVec::unit(idx, p.n());
        }
        if let Some(v) = self.memo.get(&(m, idx)) {
            return v.clone();
        }
        let d = self.module.dim as u32;
        let tail_size = d.pow(m as u32 - 1);
        let word = self.digits(m, idx);
        let mut out = SparseVec::new();
        // δ of the prefix u₁⋯u_{k−1}: word index of the v_l part ↦ H-coefficient
        let mut prefix: Vec<(u32, HopfElt)> = vec![(0, HopfElt::one(p))];
        for k in 0..m {
            let suffix_len = (m - k - 1) as u32;
            let suffix = word[k + 1..].iter().fold(0u32, |acc, &x| acc * d + x as u32);
            let uk = self.module.basis_vector(word[k]);
            for (lidx, h) in &prefix {
                let img = self.module.act(h, &uk);
                if img.iter().all(CycNum::is_zero) {
                    continue;
                }
                let tail = lidx * d.pow(suffix_len) + suffix;
                let rest = self.apply(m - 1, tail);
                for (s, a) in img.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (t, c) in rest.iter() {
                        out.add_product(s as u32 * tail_size + t, a, c);
                    }
                }
            }
            let mut next: HashMap<u32, HopfElt> = HashMap::new();
            for (lidx, h) in &prefix {
                for (c, l) in &self.module.coaction[word[k]] {
                    next.entry(lidx * d + *l as u32)
                        .or_insert_with(|| HopfElt::zero(p))
                        .add_assign(&h.mul(c));
                }
            }
            prefix = next.into_iter().filter(|(_, h)| !h.is_zero()).collect();
            prefix.sort_by_key(|(k, _)| *k);
        }
        self.memo.insert((m, idx), out.clone());
        out
    }
}

/// S_m as a matrix, by the coaction recursion.
pub fn symmetrizer_recursive(module: &YdModule, m: usize, budget: u64) -> Result<SparseMatrix> {
    if m == 0 {
        return Err(Error::InvalidArgument("degree m must be at least 1".into()));
    }
    let size = words(module.dim, m, budget)?;
    let mut rec = RecursiveSymmetrizer::new(module)?;
    let mut out = SparseMatrix::zeros(size, size);
    for (idx, col) in out.columns.iter_mut().enumerate() {
        *col = rec.apply(m, idx as u32);
    }
    Ok(out)
}

/// Every output word of S_m has index sum at most that of its input word.
pub fn index_sum_check(module: &YdModule, m: usize, budget: u64) -> Result<bool> {
    let s = symmetrizer_recursive(module, m, budget)?;
    let d = module.dim as u32;
    let sum = |mut x: u32| {
        let mut t = 0;
        for _ in 0..m {
            t += x % d;
            x /= d;
        }
        t
    };
    Ok(s.columns.iter().enumerate().all(|(idx, col)| {
        let bound = sum(idx as u32);
        col.iter().all(|(o, _)| sum(o) <= bound)
    }))
}

/// Coefficient of v_i^{⊗m} in S_m(v_i^{⊗m}) for the given basis index.
pub fn psi_coefficient_at(module: &YdModule, m: usize, index: usize, budget: u64) -> Result<CycNum> {
    if index >= module.dim {
        return Err(Error::Index(format!("v_{index} is not a basis vector")));
    }
    words(module.dim, m, budget)?;
    let d = module.dim as u32;
    let idx = (0..m).fold(0u32, |acc, _| acc * d + index as u32);
    let mut rec = RecursiveSymmetrizer::new(module)?;
    let col = rec.apply(m, idx);
    Ok(col.get(idx).cloned().unwrap_or_else(|| module.params().zero()))
}

/// ψ_m(v_i^{⊗m}) = a_m·v_i^{⊗m} for V(ti,j,λ) with λ ≠ 0 and i reduced mod n.
pub fn psi_coefficient(module: &YdModule, m: usize, budget: u64) -> Result<CycNum> {
    let i1 = match &module.spec.kind {
        ModuleKind::Finite { i1, lambda, .. } if !lambda.is_zero() => *i1,
        _ => {
            return Err(Error::NotApplicable(format!(
                "psi is defined for V(ti,j,λ) with λ ≠ 0, not {}",
                module.spec.describe()
            )))
        }
    };
    let index = i1.rem_euclid(module.params().n() as i64) as usize;
    psi_coefficient_at(module, m, index, budget)
}

/// dim 𝓑ᵐ for m = 0..=max_m from the operator alone. Uses
/// S_m = Y_m∘(S_{m−1}⊗id) with Y_m = Σ_k c_k c_{k+1}⋯c_{m−1}, so im S_m is
/// spanned by Y_m(u⊗v_k) for u in a basis of im S_{m−1}. Vectors are kept in
/// separate echelon bases per total g-weight, which the braiding preserves.
pub fn graded_dims_from_operator(b: &BraidingOperator, weights: &[u32], max_m: usize, budget: u64) -> Result<Vec<usize>> {
    exact_operator(b)?;
    let n = b.params.n();
    let d = b.dim;
    let mut dims = vec![1usize];
    if max_m == 0 {
        return Ok(dims);
    }
    let mut image: Vec<(u32, SparseVec)> = (0..d).map(|k| (weights[k], SparseVec::unit(k as u32, n))).collect();
    dims.push(d);
    for m in 2..=max_m {
        if image.is_empty() {
            dims.push(0);
            continue;
        }
        words(d, m, budget)?;
        let mut classes: HashMap<u32, EchelonBasis> = HashMap::new();
        for (w, u) in &image {
            for k in 0..d {
                let mut v = SparseVec::new();
                for (idx, c) in u.iter() {
                    v.add_term(idx * d as u32 + k as u32, c);
                }
                let mut acc = v.clone();
                let mut cur = v;
                for pos in (1..m).rev() {
                    cur = b.apply_at(m, pos, &cur);
                    acc.axpy(&CycNum::one(n), &cur);
                }
                classes.entry((w + weights[k]) % n).or_default().insert(acc);
            }
        }
        let mut keys: Vec<u32> = classes.keys().copied().collect();
        keys.sort_unstable();
        image = keys
            .into_iter()
            .flat_map(|w| classes[&w].basis().into_iter().map(move |v| (w, v)))
            .collect();
        dims.push(image.len());
    }
    Ok(dims)
}

/// dim 𝓑ᵐ(V) for m = 0..=max_m.
pub fn graded_nichols_dims(module: &YdModule, max_m: usize, budget: u64) -> Result<Vec<usize>> {
    exact_module(module)?;
    graded_dims_from_operator(&braiding_operator(module), &module.g_weights, max_m, budget)
}

/// dim 𝓑ᵐ(V) = rank S_m.
pub fn graded_nichols_dim(module: &YdModule, m: usize, budget: u64) -> Result<usize> {
    Ok(graded_nichols_dims(module, m, budget)?[m])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::mat_rank;
    use crate::hopf::TaftParams;
    use crate::yd::build_finite_module;

    fn module(n: u32, t: u32, i: i64, j: i64, lam: CycNum) -> YdModule {
        build_finite_module(TaftParams::new(n, t).unwrap(), i, j, lam).unwrap()
    }

    #[test]
    fn reduced_words() {
        assert_eq!(lexmin_reduced_word(&[0, 1, 2]), Vec::<usize>::new());
        assert_eq!(lexmin_reduced_word(&[2, 1, 0]), vec![1, 2, 1]);
        assert_eq!(lexmax_reduced_word(&[2, 1, 0]), vec![2, 1, 2]);
        for p in all_permutations(4) {
            assert_eq!(lexmin_reduced_word(&p).len(), inversions(&p));
        }
        assert_eq!(all_permutations(5).len(), 120);
    }

    #[test]
    fn low_degrees() {
        let v = module(4, 1, 1, 1, CycNum::zero(4));
        let b = braiding_operator(&v);
        let s1 = symmetrizer_permsum(&b, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(s1, SparseMatrix::identity(4, v.dim));
        let s2 = symmetrizer_permsum(&b, 2, DEFAULT_BUDGET).unwrap();
        let mut expect = SparseMatrix::identity(4, v.dim * v.dim);
        expect.add_assign(b.sparse());
        assert_eq!(s2, expect);
        assert_eq!(symmetrizer_recursive(&v, 2, DEFAULT_BUDGET).unwrap(), expect);
    }

    #[test]
    fn q_factorial_on_a_point() {
        // dim 1 with c = w^{ij}: S_m = [m]_q!
        let v = module(3, 1, 1, 2, CycNum::zero(3));
        assert_eq!(v.dim, 1);
        let q = v.params().w_pow(2);
        let b = braiding_operator(&v);
        let mut fact = CycNum::one(3);
        for m in 1..=4usize {
            let qint = (0..m).fold(CycNum::zero(3), |acc, e| &acc + &q.pow(e as u32));
            fact = &fact * &qint;
            let s = symmetrizer_permsum(&b, m, DEFAULT_BUDGET).unwrap();
            assert_eq!(s.columns[0].get(0).cloned().unwrap_or(CycNum::zero(3)), fact);
        }
        assert_eq!(graded_nichols_dims(&v, 4, DEFAULT_BUDGET).unwrap(), vec![1, 1, 1, 0, 0]);
    }

    #[test]
    fn both_constructions_agree() {
        for lam in [CycNum::zero(3), CycNum::one(3)] {
            for (i, j) in [(2, 2), (1, 0), (0, 1)] {
                let v = module(3, 1, i, j, lam.clone());
                let b = braiding_operator(&v);
                for m in 1..=4 {
                    let a = symmetrizer_permsum(&b, m, DEFAULT_BUDGET).unwrap();
                    let r = symmetrizer_recursive(&v, m, DEFAULT_BUDGET).unwrap();
                    assert_eq!(a, r, "V({i},{j},{lam}) m={m}");
                    let rank = mat_rank(&a.to_dense(3)).unwrap();
                    assert_eq!(rank, graded_nichols_dim(&v, m, DEFAULT_BUDGET).unwrap());
                }
            }
        }
    }

    #[test]
    fn psi_examples() {
        let v = module(4, 1, 1, 2, CycNum::one(4));
        for (m, f) in [(1, 1), (2, 2), (3, 6)] {
            assert_eq!(psi_coefficient(&v, m, DEFAULT_BUDGET).unwrap(), CycNum::from_int(4, f));
        }
        let z = module(4, 1, 1, 2, CycNum::zero(4));
        assert!(matches!(psi_coefficient(&z, 2, DEFAULT_BUDGET), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn budget_and_truncation() {
        let v = module(4, 1, 1, 2, CycNum::one(4));
        assert!(matches!(
            symmetrizer_permsum(&braiding_operator(&v), 7, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded(_))
        ));
        let p = TaftParams::new(4, 2).unwrap();
        let w = crate::yd::build_infinite_truncation(p, 1, 0, 4).unwrap();
        assert!(matches!(graded_nichols_dims(&w, 2, DEFAULT_BUDGET), Err(Error::Unsupported(_))));
    }

    #[test]
    fn spot_check_passes() {
        let v = module(3, 1, 2, 2, CycNum::zero(3));
        let r = reduced_word_spot_check(&braiding_operator(&v), 4, 5, 7, DEFAULT_BUDGET).unwrap();
        assert!(r.passed);
    }
}

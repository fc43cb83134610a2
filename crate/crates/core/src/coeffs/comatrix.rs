use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{c_coeff, qbinom, CoeffContext};
use crate::cyclo::CycNum;
use crate::hopf::{h_coproduct, h_counit, HopfElt, TaftParams, TensorElt};
use crate::report::CheckReport;

/// A square matrix of Hopf elements, lower triangular when built from a
/// context. Hand-built matrices (module coactions, perturbed controls) carry
/// no context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comatrix {
    params: TaftParams,
    ctx: Option<CoeffContext>,
    entries: Vec<Vec<HopfElt>>,
}

impl Comatrix {
    /// Wraps a square array; `ctx` enables the scalar λ criterion.
    pub fn from_entries(params: TaftParams, ctx: Option<CoeffContext>, entries: Vec<Vec<HopfElt>>) -> Self {
        let size = entries.len();
        assert!(entries.iter().all(|r| r.len() == size), "comatrix must be square");
        Comatrix { params, ctx, entries }
    }

    pub fn params(&self) -> TaftParams {
        self.params
    }

    pub fn ctx(&self) -> Option<&CoeffContext> {
        self.ctx.as_ref()
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, k: usize, l: usize) -> &HopfElt {
        &self.entries[k][l]
    }

    pub fn set(&mut self, k: usize, l: usize, v: HopfElt) {
        self.entries[k][l] = v;
    }

    /// The principal block of `size` rows starting at `offset`.
    pub fn block(&self, offset: usize, size: usize) -> Vec<Vec<HopfElt>> {
        (offset..offset + size)
            .map(|k| self.entries[k][offset..offset + size].to_vec())
            .collect()
    }

    /// True iff every entry outside the given diagonal blocks is zero.
    pub fn is_block_diagonal(&self, sizes: &[usize]) -> bool {
        let mut owner = Vec::with_capacity(self.size());
        for (b, &s) in sizes.iter().enumerate() {
            owner.extend(std::iter::repeat(b).take(s));
        }
        if owner.len() != self.size() {
            return false;
        }
        (0..self.size()).all(|k| (0..self.size()).all(|l| owner[k] == owner[l] || self.entries[k][l].is_zero()))
    }

    /// Grid rendering, one row per line.
    pub fn render(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(HopfElt::render).collect())
            .collect();
        let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for row in cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:<width$}")).collect();
            out.push_str(&format!("[ {} ]\n", padded.join(" | ")));
        }
        out
    }
}

#[derive(Serialize)]
struct EntryRepr<'a> {
    k: String,
    l: String,
    value: &'a HopfElt,
}

impl Serialize for Comatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut entries = Vec::new();
        for (k, row) in self.entries.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    entries.push(EntryRepr {
                        k: k.to_string(),
                        l: l.to_string(),
                        value: v,
                    });
                }
            }
        }
        let mut st = s.serialize_struct("Comatrix", 2)?;
        st.serialize_field("size", &self.size().to_string())?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// The (p+1)×(p+1) lower-triangular matrix with entries c(k,l).
pub fn build_comatrix(ctx: &CoeffContext, p: u32) -> Comatrix {
    let par = ctx.params();
    let size = p as usize + 1;
    let mut entries = vec![vec![HopfElt::zero(par); size]; size];
    for (k, row) in entries.iter_mut().enumerate() {
        for (l, slot) in row.iter_mut().enumerate().take(k + 1) {
            *slot = c_coeff(ctx, k as u32, l as u32).expect("l <= k");
        }
    }
    Comatrix {
        params: par,
        ctx: Some(*ctx),
        entries,
    }
}

/// Checks Δ(c_kl) = Σ_p c_kp ⊗ c_pl and ε(c_kl) = δ_kl, then (for matrices
/// with a context) the scalar identity
/// λ(k,p+l)·λ(p+l,l) = binom(k−l,p)_{ξᵗ}·ξ^{−t(k−(p+l))p}·λ(k,l).
pub fn verify_comatrix(m: &Comatrix) -> CheckReport {
    let par = m.params;
    let size = m.size();
    let mut rep = CheckReport::new(format!("comatrix of size {size}"));
    for k in 0..size {
        for l in 0..size {
            let lhs = h_coproduct(&m.entries[k][l]);
            let mut rhs = TensorElt::zero(par, 2);
            for p in 0..size {
                let (a, b) = (&m.entries[k][p], &m.entries[p][l]);
                if !a.is_zero() && !b.is_zero() {
                    rhs.add_assign(&TensorElt::pure(&[a, b]));
                }
            }
            if !rep.check(lhs == rhs, || format!("Δ(c({k},{l})) ≠ Σ_p c({k},p)⊗c(p,{l})")) {
                return rep;
            }
            let eps = h_counit(&m.entries[k][l]);
            let ok = if k == l { eps.is_one() } else { eps.is_zero() };
            if !rep.check(ok, || format!("ε(c({k},{l})) = {eps}")) {
                return rep;
            }
        }
    }
    if let Some(ctx) = m.ctx {
        scalar_criterion(m, &ctx, &mut rep);
    }
    rep
}

/// λ read back from an entry expected to be λ·x^{k−l}g^{i−kt}.
fn extract_lambda(m: &Comatrix, ctx: &CoeffContext, k: usize, l: usize) -> Option<CycNum> {
    let par = m.params;
    let e = &m.entries[k][l];
    if l > k {
        return e.is_zero().then(|| par.zero());
    }
    let a = ctx.i() as i64 - k as i64 * par.t() as i64;
    let ag = par.reduce_g(a);
    let b = (k - l) as u32;
    let c = e.coeff(ag, b);
    let expect = HopfElt::monomial(par, a, b, c.clone());
    if *e != expect {
        return None;
    }
    // undo x^b g^a = ξ^{ab} g^a x^b
    Some(&c * &par.xi(-(b as i64) * a))
}

fn scalar_criterion(m: &Comatrix, ctx: &CoeffContext, rep: &mut CheckReport) {
    let par = m.params;
    let size = m.size();
    let mut lam = vec![vec![par.zero(); size]; size];
    for k in 0..size {
        for l in 0..=k {
            match extract_lambda(m, ctx, k, l) {
                Some(v) => lam[k][l] = v,
                None => {
                    rep.fail(format!("entry ({k},{l}) is not of the form λ·x^{{k−l}}g^{{i−kt}}"));
                    return;
                }
            }
        }
    }
    let w = par.w();
    let binom: Vec<Vec<CycNum>> = (0..size)
        .map(|r| (0..=r).map(|p| qbinom(r as i64, p as i64, &w)).collect())
        .collect();
    for k in 0..size {
        for l in 0..=k {
            for p in 0..=(k - l) {
                let lhs = &lam[k][p + l] * &lam[p + l][l];
                let phase = par.xi(-(par.t() as i64) * (k - (p + l)) as i64 * p as i64);
                let rhs = &(&binom[k - l][p] * &phase) * &lam[k][l];
                if !rep.check(lhs == rhs, || format!("scalar criterion fails at (k,l,p) = ({k},{l},{p})")) {
                    return;
                }
            }
        }
    }
}

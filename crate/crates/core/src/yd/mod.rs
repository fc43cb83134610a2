//! Yetter-Drinfeld modules over H(n,t,ξ): the finite simple modules
//! V(ti,j,λ), windows of the infinite modules V(i,j), and hand-built modules
//! used as controls.

mod structure;
mod verify;

pub use structure::{
    hom_dimension, is_simple_bruteforce, iso_test, socle, socle_type_criterion, standard_basis_check,
    standard_elements, SocleReport, SocleSummand, StandardElement,
};
pub use verify::{verify_yd_module, x_power_check};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coeffs::{c_coeff, phi, CoeffContext, Comatrix};
use crate::cyclo::{CycMatrix, CycNum};
use crate::error::{Error, Result};
use crate::hopf::{HopfElt, Mono, TaftParams};

/// Parses the λ grammar `0 | 1 | zeta^e` (e any integer, read mod n).
pub fn parse_lambda(spec: &str, n: u32) -> Result<CycNum> {
    let s = spec.trim();
    match s {
        "0" => return Ok(CycNum::zero(n)),
        "1" => return Ok(CycNum::one(n)),
        _ => {}
    }
    let e = s
        .strip_prefix("zeta^")
        .and_then(|e| e.trim().parse::<i64>().ok())
        .ok_or_else(|| Error::InvalidSpecifier(format!("lambda must be 0, 1 or zeta^e, got {spec:?}")))?;
    Ok(CycNum::root_power(n, e))
}

/// Inverse of [`parse_lambda`] for values of that form; other scalars render in full.
pub fn lambda_tag(lambda: &CycNum) -> String {
    if lambda.is_zero() {
        return "0".into();
    }
    match lambda.root_exponent() {
        Some(0) => "1".into(),
        Some(e) => format!("zeta^{e}"),
        None => lambda.render(),
    }
}

/// True iff i is not congruent to any multiple of t mod n, i.e. gcd(t,n) ∤ i.
pub fn in_standard_set(params: TaftParams, i: i64) -> bool {
    i.rem_euclid(params.d() as i64) != 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// V(t·i₁, j, λ).
    Finite { i1: i64, j: i64, lambda: CycNum },
    /// The window v₀..v_K of V(i,j).
    Infinite { i: i64, j: i64, truncation: u32 },
    /// Hand-built from explicit data.
    Custom { label: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpecifier {
    pub params: TaftParams,
    pub kind: ModuleKind,
}

impl ModuleSpecifier {
    pub fn finite(params: TaftParams, i1: i64, j: i64, lambda: CycNum) -> Self {
        ModuleSpecifier {
            params,
            kind: ModuleKind::Finite { i1, j, lambda },
        }
    }

    pub fn infinite(params: TaftParams, i: i64, j: i64, truncation: u32) -> Self {
        ModuleSpecifier {
            params,
            kind: ModuleKind::Infinite { i, j, truncation },
        }
    }

    /// Builds the module this specifier names.
    pub fn build(&self) -> Result<YdModule> {
        match &self.kind {
            ModuleKind::Finite { i1, j, lambda } => build_finite_module(self.params, *i1, *j, lambda.clone()),
            ModuleKind::Infinite { i, j, truncation } => build_infinite_truncation(self.params, *i, *j, *truncation),
            ModuleKind::Custom { label } => Err(Error::Unsupported(format!(
                "custom module {label:?} has no construction recipe"
            ))),
        }
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            ModuleKind::Finite { i1, j, lambda } => format!("V(t·{i1},{j},{})", lambda_tag(lambda)),
            ModuleKind::Infinite { i, j, truncation } => format!("V({i},{j}) up to v_{truncation}"),
            ModuleKind::Custom { label } => label.clone(),
        }
    }
}

impl Serialize for ModuleSpecifier {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ModuleSpecifier", 6)?;
        st.serialize_field("params", &self.params)?;
        match &self.kind {
            ModuleKind::Finite { i1, j, lambda } => {
                st.serialize_field("kind", "finite")?;
                st.serialize_field("i1", &i1.to_string())?;
                st.serialize_field("j", &j.to_string())?;
                st.serialize_field("lambda", lambda)?;
            }
            ModuleKind::Infinite { i, j, truncation } => {
                st.serialize_field("kind", "infinite")?;
                st.serialize_field("i", &i.to_string())?;
                st.serialize_field("j", &j.to_string())?;
                st.serialize_field("K", &truncation.to_string())?;
            }
            ModuleKind::Custom { label } => {
                st.serialize_field("kind", "custom")?;
                st.serialize_field("label", label)?;
            }
        }
        st.end()
    }
}

/// A concrete module on the basis v₀, …, v_{dim−1}.
///
/// `x_matrix` holds x·v_k in column k. Row k of `coaction` lists the nonzero
/// terms of δ(v_k) = Σ_l c(k,l) ⊗ v_l. For truncated windows x·v_K is left
/// undefined (a zero column) and is never read by the verifiers.
#[derive(Clone, Debug)]
pub struct YdModule {
    pub spec: ModuleSpecifier,
    pub dim: usize,
    pub g_weights: Vec<u32>,
    pub x_matrix: CycMatrix,
    pub coaction: Vec<Vec<(HopfElt, usize)>>,
    pub truncated: bool,
    ctx: Option<CoeffContext>,
}

/// V(t·i₁, j, λ): basis v₀..v_m with m = N−φ(−i₁−j) for λ = 0 and n−1 otherwise,
/// g·v_k = ξ^{j−k}v_k, x·v_k = v_{k+1} (x·v_m = λv₀), δ(v_k) = Σ_l c(k,l)⊗v_l
/// with coefficients of context (t·i₁, j).
pub fn build_finite_module(params: TaftParams, i1: i64, j: i64, lambda: CycNum) -> Result<YdModule> {
    if lambda.order() != params.n() {
        return Err(Error::DomainMismatch(format!(
            "lambda lives in Q(zeta_{}) but n = {}",
            lambda.order(),
            params.n()
        )));
    }
    let ctx = CoeffContext::t_multiple(params, i1, j);
    let m = if lambda.is_zero() {
        params.big_n() - phi(-i1 - j, params.big_n())
    } else {
        params.n() - 1
    } as usize;
    let dim = m + 1;
    let mut x = CycMatrix::zeros(params.n(), dim, dim);
    for k in 0..m {
        x.set(k + 1, k, params.one());
    }
    x.set(0, m, &x.get(0, m).clone() + &lambda);
    let coaction = coaction_rows(&ctx, dim)?;
    Ok(YdModule {
        spec: ModuleSpecifier::finite(params, i1, j, lambda),
        dim,
        g_weights: weights(params, j, dim),
        x_matrix: x,
        coaction,
        truncated: false,
        ctx: Some(ctx),
    })
}

/// The window v₀..v_K of V(i,j); needs i ∈ 𝒥.
pub fn build_infinite_truncation(params: TaftParams, i: i64, j: i64, truncation: u32) -> Result<YdModule> {
    if !in_standard_set(params, i) {
        return Err(Error::InvalidSpecifier(format!(
            "i = {i} is not in J: it is a multiple of gcd(t,n) = {} mod {}",
            params.d(),
            params.n()
        )));
    }
    if truncation == 0 {
        return Err(Error::InvalidArgument("truncation K must be at least 1".into()));
    }
    let ctx = CoeffContext::new(params, i, j);
    let dim = truncation as usize + 1;
    let mut x = CycMatrix::zeros(params.n(), dim, dim);
    for k in 0..dim - 1 {
        x.set(k + 1, k, params.one());
    }
    let coaction = coaction_rows(&ctx, dim)?;
    Ok(YdModule {
        spec: ModuleSpecifier::infinite(params, i, j, truncation),
        dim,
        g_weights: weights(params, j, dim),
        x_matrix: x,
        coaction,
        truncated: true,
        ctx: Some(ctx),
    })
}

fn weights(params: TaftParams, j: i64, dim: usize) -> Vec<u32> {
    (0..dim).map(|k| params.reduce_g(j - k as i64)).collect()
}

fn coaction_rows(ctx: &CoeffContext, dim: usize) -> Result<Vec<Vec<(HopfElt, usize)>>> {
    (0..dim)
        .map(|k| {
            let mut row = Vec::new();
            for l in 0..=k {
                let c = c_coeff(ctx, k as u32, l as u32)?;
                if !c.is_zero() {
                    row.push((c, l));
                }
            }
            Ok(row)
        })
        .collect()
}

impl YdModule {
    /// A module from explicit data; no axioms are checked here.
    pub fn from_parts(
        params: TaftParams,
        label: impl Into<String>,
        g_weights: Vec<u32>,
        x_matrix: CycMatrix,
        coaction: Vec<Vec<(HopfElt, usize)>>,
    ) -> Result<Self> {
        let dim = g_weights.len();
        if x_matrix.rows() != dim || x_matrix.cols() != dim || coaction.len() != dim {
            return Err(Error::InvalidArgument(format!(
                "inconsistent sizes: {dim} weights, {}x{} x-matrix, {} coaction rows",
                x_matrix.rows(),
                x_matrix.cols(),
                coaction.len()
            )));
        }
        if x_matrix.order() != params.n() {
            return Err(Error::DomainMismatch("x-matrix order differs from n".into()));
        }
        for row in &coaction {
            for (c, l) in row {
                if *l >= dim {
                    return Err(Error::Index(format!("coaction index {l} out of range")));
                }
                if c.params() != params {
                    return Err(Error::DomainMismatch("coaction coefficient from another H".into()));
                }
            }
        }
        Ok(YdModule {
            spec: ModuleSpecifier {
                params,
                kind: ModuleKind::Custom { label: label.into() },
            },
            dim,
            g_weights: g_weights.into_iter().map(|w| w % params.n()).collect(),
            x_matrix,
            coaction,
            truncated: false,
            ctx: None,
        })
    }

    /// A ⊕ B with the basis of A first.
    pub fn direct_sum(a: &YdModule, b: &YdModule) -> Result<Self> {
        if a.params() != b.params() {
            return Err(Error::DomainMismatch("direct sum of modules over different H".into()));
        }
        if a.truncated || b.truncated {
            return Err(Error::Unsupported("direct sums of truncated windows".into()));
        }
        let n = a.params().n();
        let dim = a.dim + b.dim;
        let mut x = CycMatrix::zeros(n, dim, dim);
        for r in 0..a.dim {
            for c in 0..a.dim {
                x.set(r, c, a.x_matrix.get(r, c).clone());
            }
        }
        for r in 0..b.dim {
            for c in 0..b.dim {
                x.set(a.dim + r, a.dim + c, b.x_matrix.get(r, c).clone());
            }
        }
        let mut coaction = a.coaction.clone();
        coaction.extend(
            b.coaction
                .iter()
                .map(|row| row.iter().map(|(c, l)| (c.clone(), l + a.dim)).collect()),
        );
        let mut g = a.g_weights.clone();
        g.extend(&b.g_weights);
        let label = format!("{} ⊕ {}", a.spec.describe(), b.spec.describe());
        YdModule::from_parts(a.params(), label, g, x, coaction)
    }

    pub fn params(&self) -> TaftParams {
        self.spec.params
    }

    pub fn ctx(&self) -> Option<&CoeffContext> {
        self.ctx.as_ref()
    }

    /// λ for finite specifiers.
    pub fn lambda(&self) -> Option<&CycNum> {
        match &self.spec.kind {
            ModuleKind::Finite { lambda, .. } => Some(lambda),
            _ => None,
        }
    }

    /// The coefficient matrix (c(k,l)) of the coaction.
    pub fn comatrix(&self) -> Comatrix {
        let p = self.params();
        let mut entries = vec![vec![HopfElt::zero(p); self.dim]; self.dim];
        for (k, row) in self.coaction.iter().enumerate() {
            for (c, l) in row {
                entries[k][*l].add_assign(c);
            }
        }
        Comatrix::from_entries(p, self.ctx, entries)
    }

    /// The diagonal matrix of the g-action.
    pub fn g_matrix(&self) -> CycMatrix {
        let p = self.params();
        let mut g = CycMatrix::zeros(p.n(), self.dim, self.dim);
        for (k, &w) in self.g_weights.iter().enumerate() {
            g.set(k, k, p.xi(w as i64));
        }
        g
    }

    /// gᵃxᵇ applied to a coordinate vector.
    pub fn act_mono(&self, (a, b): Mono, v: &[CycNum]) -> Vec<CycNum> {
        let p = self.params();
        let mut cur = v.to_vec();
        for _ in 0..b {
            cur = self.x_matrix.apply(&cur).expect("sizes agree");
        }
        for (k, c) in cur.iter_mut().enumerate() {
            if !c.is_zero() {
                *c = &*c * &p.xi(a as i64 * self.g_weights[k] as i64);
            }
        }
        cur
    }

    /// h applied to a coordinate vector.
    pub fn act(&self, h: &HopfElt, v: &[CycNum]) -> Vec<CycNum> {
        let p = self.params();
        let mut out = vec![p.zero(); self.dim];
        for (m, c) in h.terms() {
            for (o, t) in out.iter_mut().zip(self.act_mono(m, v)) {
                if !t.is_zero() {
                    o.add_assign_ref(&(c * &t));
                }
            }
        }
        out
    }

    /// Coordinate vector of v_k.
    pub fn basis_vector(&self, k: usize) -> Vec<CycNum> {
        let p = self.params();
        let mut v = vec![p.zero(); self.dim];
        v[k] = p.one();
        v
    }

    /// δ(v) as the list of H-coefficients of v₀, …, v_{dim−1}.
    pub fn coact(&self, v: &[CycNum]) -> Vec<HopfElt> {
        let p = self.params();
        let mut out = vec![HopfElt::zero(p); self.dim];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, l) in &self.coaction[k] {
                out[*l].add_assign(&c.scale(a));
            }
        }
        out
    }

    /// True iff all g-weights are pairwise distinct.
    pub fn weights_distinct(&self) -> bool {
        let mut seen = vec![false; self.params().n() as usize];
        self.g_weights.iter().all(|&w| !std::mem::replace(&mut seen[w as usize], true))
    }
}

#[derive(Serialize)]
struct CoactionRepr<'a>(String, String, &'a HopfElt);

impl Serialize for YdModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coaction: Vec<CoactionRepr> = self
            .coaction
            .iter()
            .enumerate()
            .flat_map(|(k, row)| row.iter().map(move |(c, l)| CoactionRepr(k.to_string(), l.to_string(), c)))
            .collect();
        let weights: Vec<String> = self.g_weights.iter().map(u32::to_string).collect();
        let mut st = s.serialize_struct("YdModule", 6)?;
        st.serialize_field("spec", &self.spec)?;
        st.serialize_field("dim", &self.dim.to_string())?;
        st.serialize_field("g_weights", &weights)?;
        st.serialize_field("x_matrix", &self.x_matrix)?;
        st.serialize_field("coaction", &coaction)?;
        st.serialize_field("truncated", &self.truncated)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, t: u32) -> TaftParams {
        TaftParams::new(n, t).unwrap()
    }

    #[test]
    fn standard_set_examples() {
        assert!(in_standard_set(p(4, 2), 1));
        assert!(!in_standard_set(p(4, 2), 2));
        assert!((0..5).all(|i| !in_standard_set(p(5, 2), i)));
    }

    #[test]
    fn lambda_grammar() {
        assert!(parse_lambda("0", 6).unwrap().is_zero());
        assert!(parse_lambda("1", 6).unwrap().is_one());
        assert_eq!(parse_lambda("zeta^7", 6).unwrap(), CycNum::root_power(6, 1));
        assert_eq!(parse_lambda("zeta^-1", 6).unwrap(), CycNum::root_power(6, 5));
        assert!(parse_lambda("2", 6).is_err());
        assert!(parse_lambda("zeta", 6).is_err());
        assert_eq!(lambda_tag(&CycNum::root_power(6, 5)), "zeta^5");
    }

    #[test]
    fn finite_dimensions() {
        let m = build_finite_module(p(3, 1), 1, 1, CycNum::zero(3)).unwrap();
        assert_eq!(m.dim, 3);
        let m = build_finite_module(p(6, 2), 1, 2, CycNum::zero(6)).unwrap();
        assert_eq!(m.dim, 1);
        let row = &m.coaction[0];
        assert_eq!(row.len(), 1);
        assert_eq!(row[0].0, HopfElt::g_pow(p(6, 2), 2));
        let m = build_finite_module(p(4, 1), 0, 0, CycNum::one(4)).unwrap();
        assert_eq!(m.dim, 4);
    }

    #[test]
    fn infinite_window() {
        let m = build_infinite_truncation(p(4, 2), 1, 0, 5).unwrap();
        assert_eq!(m.dim, 6);
        assert!(m.truncated);
        let e3 = m.basis_vector(3);
        let g3 = m.act(&HopfElt::g_pow(p(4, 2), 1), &e3);
        assert_eq!(g3[3], p(4, 2).xi(-3));
        assert!(matches!(
            build_infinite_truncation(p(4, 2), 2, 0, 3),
            Err(Error::InvalidSpecifier(_))
        ));
    }

    #[test]
    fn lambda_order_must_match() {
        assert!(build_finite_module(p(4, 1), 0, 0, CycNum::one(3)).is_err());
    }
}

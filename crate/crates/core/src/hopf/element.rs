use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use smallvec::smallvec;

use super::{TaftParams, TensorElt};
use crate::coeffs::qbinom;
use crate::cyclo::CycNum;
use crate::error::{Error, Result};

/// A basis monomial gᵃxᵇ as `(a mod n, b)`.
pub type Mono = (u32, u32);

/// A finite linear combination of monomials gᵃxᵇ.
#[derive(Clone, PartialEq, Eq)]
pub struct HopfElt {
    params: TaftParams,
    terms: BTreeMap<Mono, CycNum>,
}

impl HopfElt {
    pub fn zero(params: TaftParams) -> Self {
        HopfElt {
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(params: TaftParams) -> Self {
        Self::monomial(params, 0, 0, params.one())
    }

    /// `c·gᵃxᵇ` with `a` reduced mod n.
    pub fn monomial(params: TaftParams, a: i64, b: u32, c: CycNum) -> Self {
        let mut h = Self::zero(params);
        if !c.is_zero() {
            h.terms.insert((params.reduce_g(a), b), c);
        }
        h
    }

    pub fn g_pow(params: TaftParams, a: i64) -> Self {
        Self::monomial(params, a, 0, params.one())
    }

    pub fn x_pow(params: TaftParams, b: u32) -> Self {
        Self::monomial(params, 0, b, params.one())
    }

    pub fn scalar(params: TaftParams, c: CycNum) -> Self {
        Self::monomial(params, 0, 0, c)
    }

    pub fn params(&self) -> TaftParams {
        self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, &CycNum)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: u32, b: u32) -> CycNum {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(|| self.params.zero())
    }

    /// The single term, if this element is `c·gᵃxᵇ`.
    pub fn as_monomial(&self) -> Option<(Mono, &CycNum)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Mono, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(|| self.params.zero());
        slot.add_assign_ref(c);
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_assign(&mut self, o: &HopfElt) {
        for (m, c) in o.terms() {
            self.add_term(m, c);
        }
    }

    pub fn add(&self, o: &HopfElt) -> HopfElt {
        let mut s = self.clone();
        s.add_assign(o);
        s
    }

    pub fn sub(&self, o: &HopfElt) -> HopfElt {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> HopfElt {
        self.scale(&self.params.int(-1))
    }

    pub fn scale(&self, s: &CycNum) -> HopfElt {
        let mut h = HopfElt::zero(self.params);
        if s.is_zero() {
            return h;
        }
        for (m, c) in self.terms() {
            let v = c * s;
            if !v.is_zero() {
                h.terms.insert(m, v);
            }
        }
        h
    }

    /// Product without the parameter check; both sides must share params.
    pub fn mul(&self, o: &HopfElt) -> HopfElt {
        debug_assert_eq!(self.params, o.params);
        let mut h = HopfElt::zero(self.params);
        for ((a1, b1), c1) in self.terms() {
            for ((a2, b2), c2) in o.terms() {
                let (m, phase) = mono_mul(&self.params, (a1, b1), (a2, b2));
                let c = &(c1 * c2) * &self.params.xi(phase);
                h.add_term(m, &c);
            }
        }
        h
    }

    pub fn pow(&self, e: u32) -> HopfElt {
        let mut acc = HopfElt::one(self.params);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest x-degree among the terms.
    pub fn max_x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    /// Sum of terms rendered as `c·g^a·x^b`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let cs = c.render();
                let cs = if c.support_len() > 1 { format!("({cs})") } else { cs };
                format!("{cs}·g^{a}·x^{b}")
            })
            .collect();
        parts.join(" + ")
    }
}

/// `(gᵃ¹xᵇ¹)(gᵃ²xᵇ²) = ξ^{b₁a₂} g^{a₁+a₂} x^{b₁+b₂}`; returns the monomial and the ξ-exponent.
pub(crate) fn mono_mul(p: &TaftParams, m1: Mono, m2: Mono) -> (Mono, i64) {
    let n = p.n() as u64;
    let phase = (m1.1 as u64 * m2.0 as u64) % n;
    (((m1.0 + m2.0) % p.n(), m1.1 + m2.1), phase as i64)
}

impl fmt::Debug for HopfElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfElt({})", self.render())
    }
}

impl fmt::Display for HopfElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize)]
struct TermRepr<'a> {
    g: String,
    x: String,
    coeff: &'a CycNum,
}

impl Serialize for HopfElt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|((a, b), c)| TermRepr {
                g: a.to_string(),
                x: b.to_string(),
                coeff: c,
            })
            .collect();
        let mut st = s.serialize_struct("HopfElt", 2)?;
        st.serialize_field("text", &self.render())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Product in H; errors if the parameters differ.
pub fn h_mul(a: &HopfElt, b: &HopfElt) -> Result<HopfElt> {
    if a.params != b.params {
        return Err(Error::DomainMismatch(format!(
            "H({},{}) vs H({},{})",
            a.params.n(),
            a.params.t(),
            b.params.n(),
            b.params.t()
        )));
    }
    Ok(a.mul(b))
}

type QbinomKey = (u32, u32, u32);
static QBINOM_ROWS: OnceLock<RwLock<HashMap<QbinomKey, Arc<Vec<CycNum>>>>> = OnceLock::new();

/// Row `binom(b, ·)_{ξᵗ}`, cached.
fn qbinom_row(p: &TaftParams, b: u32) -> Arc<Vec<CycNum>> {
    let key = (p.n(), p.t(), b);
    let cache = QBINOM_ROWS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(r) = cache.read().get(&key) {
        return r.clone();
    }
    let w = p.w();
    let row: Arc<Vec<CycNum>> = Arc::new((0..=b as i64).map(|k| qbinom(b as i64, k, &w)).collect());
    cache.write().insert(key, row.clone());
    row
}

/// Δ(gᵃxᵇ) = Σ_p binom(b,p)_{ξᵗ} gᵃx^{b−p} ⊗ g^{a+t(b−p)}xᵖ.
pub(crate) fn mono_coproduct(p: &TaftParams, (a, b): Mono, out: &mut TensorElt, scale: &CycNum) {
    let row = qbinom_row(p, b);
    for k in 0..=b {
        let c = &row[k as usize];
        if c.is_zero() {
            continue;
        }
        let left = (a, b - k);
        let right = (p.reduce_g(a as i64 + p.t() as i64 * (b - k) as i64), k);
        out.add_term(smallvec![left, right], &(c * scale));
    }
}

/// Δ as an algebra map, via the q-binomial expansion.
pub fn h_coproduct(h: &HopfElt) -> TensorElt {
    let mut out = TensorElt::zero(h.params, 2);
    for (m, c) in h.terms() {
        mono_coproduct(&h.params, m, &mut out, c);
    }
    out
}

/// ε(gᵃxᵇ) = δ_{b,0}.
pub fn h_counit(h: &HopfElt) -> CycNum {
    let mut s = h.params.zero();
    for ((_, b), c) in h.terms() {
        if b == 0 {
            s.add_assign_ref(c);
        }
    }
    s
}

/// S(gᵃxᵇ) = S(x)ᵇS(g)ᵃ with S(g) = g⁻¹ and S(x) = −xg^{−t}.
pub fn h_antipode(h: &HopfElt) -> HopfElt {
    let p = h.params;
    let sx = HopfElt::monomial(p, 0, 1, p.int(-1)).mul(&HopfElt::g_pow(p, -(p.t() as i64)));
    let mut out = HopfElt::zero(p);
    for ((a, b), c) in h.terms() {
        let img = sx.pow(b).mul(&HopfElt::g_pow(p, -(a as i64)));
        out.add_assign(&img.scale(c));
    }
    out
}

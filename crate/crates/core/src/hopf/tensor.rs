use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::element::{mono_coproduct, mono_mul};
use super::{HopfElt, Mono, TaftParams};
use crate::cyclo::CycNum;

pub(crate) type Key = SmallVec<[Mono; 3]>;

/// An element of H^{⊗legs}.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElt {
    params: TaftParams,
    legs: usize,
    terms: BTreeMap<Key, CycNum>,
}

impl TensorElt {
    pub fn zero(params: TaftParams, legs: usize) -> Self {
        TensorElt {
            params,
            legs,
            terms: BTreeMap::new(),
        }
    }

    /// The pure tensor `f₁ ⊗ … ⊗ f_k`.
    pub fn pure(factors: &[&HopfElt]) -> Self {
        let params = factors[0].params();
        let mut acc: Vec<(Key, CycNum)> = vec![(Key::new(), params.one())];
        for f in factors {
            let mut next = Vec::new();
            for (k, c) in &acc {
                for (m, d) in f.terms() {
                    let mut k2 = k.clone();
                    k2.push(m);
                    next.push((k2, c * d));
                }
            }
            acc = next;
        }
        let mut t = TensorElt::zero(params, factors.len());
        for (k, c) in acc {
            t.add_term(k, &c);
        }
        t
    }

    pub fn params(&self) -> TaftParams {
        self.params
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Mono], &CycNum)> {
        self.terms.iter().map(|(k, c)| (&k[..], c))
    }

    pub fn coeff(&self, key: &[Mono]) -> CycNum {
        self.terms
            .get(&Key::from_slice(key))
            .cloned()
            .unwrap_or_else(|| self.params.zero())
    }

    pub(crate) fn add_term(&mut self, k: Key, c: &CycNum) {
        debug_assert_eq!(k.len(), self.legs);
        if c.is_zero() {
            return;
        }
        let zero = self.params.zero();
        let slot = self.terms.entry(k.clone()).or_insert(zero);
        slot.add_assign_ref(c);
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_assign(&mut self, o: &TensorElt) {
        assert_eq!(self.legs, o.legs, "leg count mismatch");
        for (k, c) in &o.terms {
            self.add_term(k.clone(), c);
        }
    }

    pub fn sub(&self, o: &TensorElt) -> TensorElt {
        let mut s = self.clone();
        s.add_assign(&o.scale(&self.params.int(-1)));
        s
    }

    pub fn scale(&self, s: &CycNum) -> TensorElt {
        let mut t = TensorElt::zero(self.params, self.legs);
        for (k, c) in &self.terms {
            t.add_term(k.clone(), &(c * s));
        }
        t
    }

    /// Leg-wise product in the algebra H^{⊗legs}.
    pub fn mul(&self, o: &TensorElt) -> TensorElt {
        assert_eq!(self.legs, o.legs, "leg count mismatch");
        let mut t = TensorElt::zero(self.params, self.legs);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let mut key = Key::new();
                let mut phase = 0i64;
                for (m1, m2) in k1.iter().zip(k2.iter()) {
                    let (m, ph) = mono_mul(&self.params, *m1, *m2);
                    key.push(m);
                    phase += ph;
                }
                let c = &(c1 * c2) * &self.params.xi(phase);
                t.add_term(key, &c);
            }
        }
        t
    }

    /// Applies Δ to leg `leg`, producing `legs + 1` legs.
    pub fn coproduct_on_leg(&self, leg: usize) -> TensorElt {
        let mut t = TensorElt::zero(self.params, self.legs + 1);
        for (k, c) in &self.terms {
            let mut piece = TensorElt::zero(self.params, 2);
            mono_coproduct(&self.params, k[leg], &mut piece, c);
            for (pk, pc) in &piece.terms {
                let mut key = Key::new();
                key.extend_from_slice(&k[..leg]);
                key.extend_from_slice(pk);
                key.extend_from_slice(&k[leg + 1..]);
                t.add_term(key, pc);
            }
        }
        t
    }

    /// Applies a linear map (given on monomials) to leg `leg`.
    pub fn map_leg(&self, leg: usize, f: &dyn Fn(&HopfElt) -> HopfElt) -> TensorElt {
        let mut t = TensorElt::zero(self.params, self.legs);
        for (k, c) in &self.terms {
            let img = f(&HopfElt::monomial(self.params, k[leg].0 as i64, k[leg].1, c.clone()));
            for (m, d) in img.terms() {
                let mut key = k.clone();
                key[leg] = m;
                t.add_term(key, d);
            }
        }
        t
    }

    /// Multiplies all legs together in order, m(a ⊗ b ⊗ …) = ab⋯.
    pub fn multiply_out(&self) -> HopfElt {
        let mut h = HopfElt::zero(self.params);
        for (k, c) in &self.terms {
            let mut m: Mono = (0, 0);
            let mut phase = 0i64;
            for step in k.iter() {
                let (m2, ph) = mono_mul(&self.params, m, *step);
                m = m2;
                phase += ph;
            }
            h.add_term(m, &(c * &self.params.xi(phase)));
        }
        h
    }

    /// Contracts one leg with a scalar functional (e.g. ε), removing it.
    pub fn contract_leg(&self, leg: usize, f: &dyn Fn(Mono) -> CycNum) -> TensorElt {
        let mut t = TensorElt::zero(self.params, self.legs - 1);
        for (k, c) in &self.terms {
            let s = f(k[leg]);
            if s.is_zero() {
                continue;
            }
            let mut key = k.clone();
            key.remove(leg);
            t.add_term(key, &(c * &s));
        }
        t
    }

    /// Views a one-leg tensor as an element of H.
    pub fn to_hopf(&self) -> HopfElt {
        assert_eq!(self.legs, 1);
        let mut h = HopfElt::zero(self.params);
        for (k, c) in &self.terms {
            h.add_term(k[0], c);
        }
        h
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let cs = c.render();
                let cs = if c.support_len() > 1 { format!("({cs})") } else { cs };
                let legs: Vec<String> = k.iter().map(|(a, b)| format!("g^{a}·x^{b}")).collect();
                format!("{cs}·{}", legs.join(" ⊗ "))
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for TensorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElt[{}]({})", self.legs, self.render())
    }
}

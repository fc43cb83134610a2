//! The Hopf algebra H(n,t,ξ): generated by a group-like g of order n and a
//! (gᵗ,1)-primitive x with xg = ξgx, where ξ = ζₙ. Elements are finite
//! combinations of the basis monomials gᵃxᵇ.

mod axioms;
mod element;
mod tensor;

pub use axioms::{antipode_from_generators, verify_hopf_axioms, verify_hopf_axioms_with};
pub use element::{h_antipode, h_coproduct, h_counit, h_mul, HopfElt, Mono};
pub use tensor::TensorElt;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};

/// The parameters (n, t) with ξ = ζₙ fixed, plus N = ord(ξᵗ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaftParams {
    n: u32,
    t: u32,
    big_n: u32,
}

impl Serialize for TaftParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TaftParams", 3)?;
        st.serialize_field("n", &self.n.to_string())?;
        st.serialize_field("t", &self.t.to_string())?;
        st.serialize_field("N", &self.big_n.to_string())?;
        st.end()
    }
}

impl TaftParams {
    pub fn new(n: u32, t: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
        }
        if t >= n {
            return Err(Error::InvalidArgument(format!("t must lie in 0..{n}, got {t}")));
        }
        // gcd(0, n) = n gives N = 1 for t = 0
        let big_n = n / t.gcd(&n);
        Ok(TaftParams { n, t, big_n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// N = n / gcd(t, n), the order of w = ξᵗ.
    pub fn big_n(&self) -> u32 {
        self.big_n
    }

    /// gcd(t, n); equals n when t = 0.
    pub fn d(&self) -> u32 {
        self.t.gcd(&self.n)
    }

    /// ξᵉ.
    pub fn xi(&self, e: i64) -> CycNum {
        CycNum::root_power(self.n, e)
    }

    /// w = ξᵗ.
    pub fn w(&self) -> CycNum {
        self.w_pow(1)
    }

    /// wᵉ = ξ^{te}.
    pub fn w_pow(&self, e: i64) -> CycNum {
        CycNum::root_power(self.n, (self.t as i64) * e.rem_euclid(self.big_n as i64))
    }

    pub fn zero(&self) -> CycNum {
        CycNum::zero(self.n)
    }

    pub fn one(&self) -> CycNum {
        CycNum::one(self.n)
    }

    pub fn int(&self, v: i64) -> CycNum {
        CycNum::from_int(self.n, v)
    }

    /// Reduces an exponent of g into `0..n`.
    pub fn reduce_g(&self, a: i64) -> u32 {
        a.rem_euclid(self.n as i64) as u32
    }
}

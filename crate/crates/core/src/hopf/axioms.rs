use super::{h_antipode, h_coproduct, h_counit, HopfElt, Mono, TaftParams};
use crate::report::CheckReport;

/// Anti-algebra extension of prescribed images of g and x.
pub fn antipode_from_generators(s_g: HopfElt, s_x: HopfElt) -> impl Fn(&HopfElt) -> HopfElt {
    move |h: &HopfElt| {
        let p = h.params();
        let mut out = HopfElt::zero(p);
        for ((a, b), c) in h.terms() {
            out.add_assign(&s_x.pow(b).mul(&s_g.pow(a)).scale(c));
        }
        out
    }
}

/// Runs the Hopf-axiom harness with the built-in antipode.
pub fn verify_hopf_axioms(params: TaftParams, degree_bound: u32) -> CheckReport {
    verify_hopf_axioms_with(params, degree_bound, &h_antipode)
}

/// Checks coassociativity, the counit laws, the antipode law and
/// multiplicativity of Δ and ε on every monomial gᵃxᵇ with b ≤ `degree_bound`,
/// using `antipode` in place of S.
pub fn verify_hopf_axioms_with(
    params: TaftParams,
    degree_bound: u32,
    antipode: &dyn Fn(&HopfElt) -> HopfElt,
) -> CheckReport {
    let mut rep = CheckReport::new(format!("hopf axioms H({},{})", params.n(), params.t()));
    let gens = [HopfElt::g_pow(params, 1), HopfElt::x_pow(params, 1)];
    for b in 0..=degree_bound {
        for a in 0..params.n() {
            let m = HopfElt::monomial(params, a as i64, b, params.one());
            let label = || mono_label((a, b));
            let d = h_coproduct(&m);

            let ok = d.coproduct_on_leg(0) == d.coproduct_on_leg(1);
            if !rep.check(ok, || format!("coassociativity at {}", label())) {
                return rep;
            }

            let eps = |mm: Mono| if mm.1 == 0 { params.one() } else { params.zero() };
            let left = d.contract_leg(0, &eps).to_hopf();
            let right = d.contract_leg(1, &eps).to_hopf();
            if !rep.check(left == m && right == m, || format!("counit law at {}", label())) {
                return rep;
            }

            let unit = HopfElt::scalar(params, h_counit(&m));
            let ls = d.map_leg(0, antipode).multiply_out();
            let rs = d.map_leg(1, antipode).multiply_out();
            if !rep.check(ls == unit && rs == unit, || {
                format!(
                    "antipode law at {}: m(S⊗id)Δ = {}, m(id⊗S)Δ = {}",
                    label(),
                    ls.render(),
                    rs.render()
                )
            }) {
                return rep;
            }

            for h in &gens {
                for (first, second) in [(h, &m), (&m, h)] {
                    let prod = first.mul(second);
                    let lhs = h_coproduct(&prod);
                    let rhs = h_coproduct(first).mul(&h_coproduct(second));
                    if !rep.check(lhs == rhs, || format!("Δ multiplicative at {}", label())) {
                        return rep;
                    }
                    let e_ok = h_counit(&prod) == &h_counit(first) * &h_counit(second);
                    if !rep.check(e_ok, || format!("ε multiplicative at {}", label())) {
                        return rep;
                    }
                }
            }
        }
    }
    rep
}

fn mono_label((a, b): Mono) -> String {
    match (a, b) {
        (0, 0) => "1".into(),
        (0, 1) => "x".into(),
        (0, b) => format!("x^{b}"),
        (a, 0) => format!("g^{a}"),
        (a, b) => format!("g^{a}·x^{b}"),
    }
}

use super::YdModule;
use crate::coeffs::verify_comatrix;
use crate::cyclo::{CycMatrix, CycNum};
use crate::hopf::{h_antipode, h_coproduct, HopfElt};
use crate::report::CheckReport;

/// Checks (a) the module relations gⁿ = 1 and xg = ξgx, (b) the comodule
/// axioms through the coefficient matrix and (c) the compatibility
/// δ(h·v) = h₁v₋₁S(h₃) ⊗ h₂·v₀ for h ∈ {g, x} on every basis vector.
/// Truncated windows skip x·v_K, which is undefined.
pub fn verify_yd_module(m: &YdModule) -> CheckReport {
    let p = m.params();
    let mut rep = CheckReport::new(format!("YD axioms for {}", m.spec.describe()));

    let g = m.g_matrix();
    let gn = g.pow(p.n()).expect("square");
    rep.check(gn == CycMatrix::identity(p.n(), m.dim), || "g^n does not act as the identity".into());
    let xi = p.xi(1);
    let checked_x = if m.truncated { m.dim - 1 } else { m.dim };
    for k in 0..checked_x {
        let e = m.basis_vector(k);
        let xg = m.x_matrix.apply(&g.apply(&e).unwrap()).unwrap();
        let gx: Vec<CycNum> = g.apply(&m.x_matrix.apply(&e).unwrap()).unwrap().iter().map(|c| c * &xi).collect();
        rep.check(xg == gx, || format!("module relation xg = ξgx fails on v_{k}"));
    }

    rep.absorb(verify_comatrix(&m.comatrix()));

    let gens = [("g", HopfElt::g_pow(p, 1)), ("x", HopfElt::x_pow(p, 1))];
    for (name, h) in &gens {
        let d2 = h_coproduct(h).coproduct_on_leg(0);
        let limit = if *name == "x" { checked_x } else { m.dim };
        for k in 0..limit {
            let e = m.basis_vector(k);
            let lhs = m.coact(&m.act(h, &e));
            let mut rhs = vec![HopfElt::zero(p); m.dim];
            for (key, c) in d2.terms() {
                let h1 = HopfElt::monomial(p, key[0].0 as i64, key[0].1, c.clone());
                let s3 = h_antipode(&HopfElt::monomial(p, key[2].0 as i64, key[2].1, p.one()));
                for (ckl, l) in &m.coaction[k] {
                    let left = h1.mul(ckl).mul(&s3);
                    let img = m.act_mono(key[1], &m.basis_vector(*l));
                    for (s, a) in img.iter().enumerate() {
                        if !a.is_zero() {
                            rhs[s].add_assign(&left.scale(a));
                        }
                    }
                }
            }
            rep.check(lhs == rhs, || {
                let s = (0..m.dim).find(|&s| lhs[s] != rhs[s]).unwrap_or(0);
                format!(
                    "compatibility h={name} k={k}: coefficient of v_{s} is {} on the left, {} on the right",
                    lhs[s].render(),
                    rhs[s].render()
                )
            });
        }
    }
    rep
}

/// xⁿ = λ·id on a finite module V(ti,j,λ).
pub fn x_power_check(m: &YdModule) -> CheckReport {
    let p = m.params();
    let mut rep = CheckReport::new(format!("x^n scalar for {}", m.spec.describe()));
    let Some(lambda) = m.lambda() else {
        rep.fail("only defined for finite modules V(ti,j,λ)");
        return rep;
    };
    let xn = m.x_matrix.pow(p.n()).expect("square");
    let target = CycMatrix::identity(p.n(), m.dim).scale(lambda);
    rep.check(xn == target, || format!("x^{} ≠ {}·id", p.n(), lambda.render()));
    rep
}

//! Rank-two Weyl groupoid of a diagonal braiding whose entries are powers of
//! a primitive N-th root of unity w, given by exponents mod N.
//!
//! Used only as a cross-check of the table classifier: when the root system
//! is finite the Nichols algebra has a PBW basis over the positive roots β,
//! each of height ord(q_β), so dim 𝓑 = ∏ ord(q_β).

use num_integer::Integer;

/// q_ab = w^{e[a][b]}.
pub type Exponents = [[i64; 2]; 2];

const MAX_ROOTS: usize = 64;
// finite rank-two root systems have small coefficients; growth past this
// bound means an infinite system
const MAX_COEFF: i64 = 1 << 16;

fn order(e: i64, big_n: u32) -> u32 {
    let n = big_n as i64;
    (n / e.rem_euclid(n).gcd(&n)) as u32
}

/// m_ij = min{m ≥ 0 : (m+1)_{q_ii} = 0 or q_ii^m q_ij q_ji = 1}, if it exists.
fn cartan(e: &Exponents, i: usize, big_n: u32) -> Option<i64> {
    let n = big_n as i64;
    let qii = e[i][i].rem_euclid(n);
    let edge = e[i][1 - i] + e[1 - i][i];
    let ord = order(qii, big_n) as i64;
    (0..n.max(1) + 1).find(|&m| (qii != 0 && m + 1 == ord) || (m * qii + edge).rem_euclid(n) == 0)
}

fn chi(e: &Exponents, u: [i64; 2], v: [i64; 2]) -> i64 {
    let mut s = 0;
    for a in 0..2 {
        for b in 0..2 {
            s += u[a] * v[b] * e[a][b];
        }
    }
    s
}

/// Positive roots in the basis of the starting point, ending with α₂, or
/// `None` if some Cartan entry is undefined or no end is reached.
pub fn positive_roots(e: &Exponents, big_n: u32) -> Option<Vec<[i64; 2]>> {
    let n = big_n as i64;
    let mut cur = *e;
    // columns: images of α₁, α₂ in the starting basis
    let mut w = [[1i64, 0], [0, 1]];
    let mut letter = 0usize;
    let mut roots = Vec::new();
    for _ in 0..MAX_ROOTS {
        let beta = w[letter];
        if beta[0] < 0 || beta[1] < 0 || beta[0] > MAX_COEFF || beta[1] > MAX_COEFF {
            return None;
        }
        roots.push(beta);
        if beta == [0, 1] {
            return Some(roots);
        }
        let m = cartan(&cur, letter, big_n)?;
        // s(α_i) = −α_i, s(α_j) = α_j + m α_i
        let mut s = [[0i64; 2]; 2];
        s[letter][letter] = -1;
        s[1 - letter][1 - letter] = 1;
        s[1 - letter][letter] = m;
        let img = |v: [i64; 2]| [v[0] * w[0][0] + v[1] * w[1][0], v[0] * w[0][1] + v[1] * w[1][1]];
        w = [img(s[0]), img(s[1])];
        let mut next = [[0i64; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                next[a][b] = chi(&cur, s[a], s[b]).rem_euclid(n);
            }
        }
        cur = next;
        letter = 1 - letter;
    }
    None
}

/// ∏ ord(q_β) over the positive roots; `None` if the root system is infinite
/// or some q_β = 1.
pub fn diagonal_nichols_dimension(e: &Exponents, big_n: u32) -> Option<u64> {
    let roots = positive_roots(e, big_n)?;
    let mut dim = 1u64;
    for b in roots {
        let o = order(chi(e, b, b), big_n);
        if o == 1 {
            return None;
        }
        dim = dim.checked_mul(o as u64)?;
    }
    Some(dim)
}

/// Graded dimensions ∏_β (1 + t^{|β|} + … + t^{(N_β−1)|β|}), both generators in degree 1.
pub fn diagonal_hilbert_series(e: &Exponents, big_n: u32) -> Option<Vec<u64>> {
    let roots = positive_roots(e, big_n)?;
    let mut series = vec![1u64];
    for b in roots {
        let o = order(chi(e, b, b), big_n) as usize;
        if o == 1 {
            return None;
        }
        let h = (b[0] + b[1]) as usize;
        let mut next = vec![0u64; series.len() + (o - 1) * h];
        for (d, c) in series.iter().enumerate() {
            for r in 0..o {
                next[d + r * h] += c;
            }
        }
        series = next;
    }
    Some(series)
}

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::weyl::{diagonal_nichols_dimension, Exponents};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::hopf::TaftParams;

/// The diagonal braiding of W_{−i,−j}: q11 = w, q12 = w^{−j}, q21 = w^{−i}, q22 = w^{ij}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalBraidingData {
    pub big_n: u32,
    pub w: CycNum,
    pub q11: CycNum,
    pub q12: CycNum,
    pub q21: CycNum,
    pub q22: CycNum,
    /// Exponents of w, reduced mod N.
    pub exponents: Exponents,
}

/// Two vertices and the edge label q12·q21.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram2 {
    pub big_n: u32,
    pub vertex1: CycNum,
    pub vertex2: CycNum,
    pub edge: CycNum,
    pub connected: bool,
    /// (vertex1, edge, vertex2) as exponents of w mod N.
    pub exponents: (u32, u32, u32),
}

fn power_label(e: u32) -> String {
    match e {
        0 => "1".into(),
        1 => "w".into(),
        _ => format!("w^{e}"),
    }
}

impl DynkinDiagram2 {
    /// "(w) —[w^e]— (w^b)", or "(w)   (w^b)" when disconnected.
    pub fn render(&self) -> String {
        let (a, e, b) = self.exponents;
        if self.connected {
            format!("({}) —[{}]— ({})", power_label(a), power_label(e), power_label(b))
        } else {
            format!("({})   ({})", power_label(a), power_label(b))
        }
    }
}

impl Serialize for DynkinDiagram2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (a, e, b) = self.exponents;
        let mut st = s.serialize_struct("DynkinDiagram2", 6)?;
        st.serialize_field("N", &self.big_n.to_string())?;
        st.serialize_field("vertex1_exp", &a.to_string())?;
        st.serialize_field("edge_exp", &e.to_string())?;
        st.serialize_field("vertex2_exp", &b.to_string())?;
        st.serialize_field("connected", &self.connected)?;
        st.serialize_field("render", &self.render())?;
        st.end()
    }
}

/// Rank-two diagonal data attached to V(ti,j,0). N = 1 is not applicable.
pub fn reduce_to_diagonal(params: TaftParams, i: i64, j: i64) -> Result<(DiagonalBraidingData, DynkinDiagram2)> {
    let big_n = params.big_n();
    if big_n < 2 {
        return Err(Error::NotApplicable(
            "N = 1 (t = 0): the diagonal reduction needs N >= 2".into(),
        ));
    }
    let n = big_n as i64;
    let red = |e: i64| e.rem_euclid(n);
    let exponents = [[1, red(-j)], [red(-i), red(i * j)]];
    let data = DiagonalBraidingData {
        big_n,
        w: params.w(),
        q11: params.w_pow(exponents[0][0]),
        q12: params.w_pow(exponents[0][1]),
        q21: params.w_pow(exponents[1][0]),
        q22: params.w_pow(exponents[1][1]),
        exponents,
    };
    let edge = red(-i - j);
    let diagram = DynkinDiagram2 {
        big_n,
        vertex1: data.q11.clone(),
        vertex2: data.q22.clone(),
        edge: params.w_pow(edge),
        connected: edge != 0,
        exponents: (1, edge as u32, exponents[1][1] as u32),
    };
    Ok((data, diagram))
}

/// dim 𝓑(W_{−i,−j}) from the rank-two Weyl groupoid, when finite.
pub fn diagonal_dimension(data: &DiagonalBraidingData) -> Option<u64> {
    diagonal_nichols_dimension(&data.exponents, data.big_n)
}

/// One labelled diagram of a Heckenberger row: each label is c·s + h·L/2 in
/// exponents of a primitive L-th root ζ_L, where q = ζ_L^s.
struct Pattern {
    labels: [(i64, i64); 3],
}

struct TagShape {
    patterns: &'static [Pattern],
    /// Predicate on (order of q) that the row imposes.
    allowed: fn(u64) -> bool,
}

const fn pat(v1: (i64, i64), e: (i64, i64), v2: (i64, i64)) -> Pattern {
    Pattern { labels: [v1, e, v2] }
}

fn shape(tag: (u32, u32)) -> Option<TagShape> {
    static ROW2: [Pattern; 1] = [pat((1, 0), (-1, 0), (1, 0))];
    static ROW3: [Pattern; 2] = [pat((1, 0), (-1, 0), (0, 1)), pat((0, 1), (1, 0), (0, 1))];
    static ROW4: [Pattern; 1] = [pat((1, 0), (-2, 0), (2, 0))];
    static ROW11: [Pattern; 1] = [pat((1, 0), (-3, 0), (3, 0))];
    static ROW12: [Pattern; 1] = [pat((2, 0), (1, 0), (-1, 0))];
    match tag {
        (2, 1) => Some(TagShape { patterns: &ROW2, allowed: |o| o != 1 }),
        (3, 1) => Some(TagShape { patterns: &ROW3, allowed: |o| o > 2 }),
        (4, 1) => Some(TagShape { patterns: &ROW4, allowed: |o| o > 2 }),
        (11, 1) => Some(TagShape { patterns: &ROW11, allowed: |o| o > 3 }),
        (12, 1) => Some(TagShape { patterns: &ROW12, allowed: |o| o == 8 }),
        _ => None,
    }
}

/// Whether the diagram has the labelled shape of Heckenberger row `tag`
/// for some parameter q. `None` for rows whose shape is not encoded. Row
/// (1,1) is the disconnected diagram.
pub fn tag_shape_consistent(tag: (u32, u32), d: &DynkinDiagram2) -> Option<bool> {
    if tag == (1, 1) {
        return Some(!d.connected);
    }
    let sh = shape(tag)?;
    // q may be a square or cube root of a power of w
    let l = 6 * d.big_n as i64;
    let (a, e, b) = d.exponents;
    let target = [6 * a as i64, 6 * e as i64, 6 * b as i64];
    let ord = |s: i64| (l / num_integer::gcd(s.rem_euclid(l), l)) as u64;
    let eval = |c: (i64, i64), s: i64| (c.0 * s + c.1 * l / 2).rem_euclid(l);
    let found = (0..l).any(|s| {
        (sh.allowed)(ord(s))
            && sh.patterns.iter().any(|p| {
                let v: Vec<i64> = p.labels.iter().map(|&c| eval(c, s)).collect();
                (v[0], v[1], v[2]) == (target[0], target[1], target[2])
                    || (v[2], v[1], v[0]) == (target[0], target[1], target[2])
            })
    });
    Some(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_example() {
        let p = TaftParams::new(3, 1).unwrap();
        let (data, d) = reduce_to_diagonal(p, 2, 2).unwrap();
        assert_eq!(data.q22, p.w());
        assert_eq!(d.edge, p.w_pow(-1));
        assert_eq!(d.render(), "(w) —[w^2]— (w)");
        assert_eq!(tag_shape_consistent((2, 1), &d), Some(true));
        assert_eq!(tag_shape_consistent((4, 1), &d), Some(false));
        assert_eq!(diagonal_dimension(&data), Some(27));
    }

    #[test]
    fn disconnected_and_not_applicable() {
        let p = TaftParams::new(5, 1).unwrap();
        let (_, d) = reduce_to_diagonal(p, 2, 3).unwrap();
        assert!(!d.connected);
        assert_eq!(d.render(), "(w)   (w)");
        let p0 = TaftParams::new(5, 0).unwrap();
        assert!(matches!(reduce_to_diagonal(p0, 1, 1), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn labels_are_nth_roots() {
        let p = TaftParams::new(8, 2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let (data, _) = reduce_to_diagonal(p, i, j).unwrap();
                for q in [&data.q11, &data.q12, &data.q21, &data.q22] {
                    assert!(q.pow(4).is_one());
                }
            }
        }
    }
}

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coeffs::phi;
use crate::cyclo::CycNum;
use crate::hopf::TaftParams;

/// Condition on N in a table row; k is the quotient named in the row.
#[derive(Clone, Copy, Debug)]
enum NRule {
    AtLeast(u32),
    /// N = a·k + b with k ≥ kmin.
    Linear { a: u32, b: u32, kmin: u32 },
    Exactly(u32),
}

/// Condition on i mod N.
#[derive(Clone, Copy, Debug)]
enum IRule {
    SquareNonzero,
    /// i(a−i) ≡ c·k + e for one of the listed (c, e).
    Quadratic { a: i64, targets: &'static [(i64, i64)] },
    Residues(&'static [u32]),
}

/// One row of the classification tables, which are indexed by dim V.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub dim: u32,
    pub n_text: &'static str,
    pub i_text: &'static str,
    pub tags: &'static [(u32, u32)],
    n_rule: NRule,
    i_rule: IRule,
}

const fn row(
    dim: u32,
    n_text: &'static str,
    i_text: &'static str,
    n_rule: NRule,
    i_rule: IRule,
    tags: &'static [(u32, u32)],
) -> TableRow {
    TableRow {
        dim,
        n_text,
        i_text,
        tags,
        n_rule,
        i_rule,
    }
}

use IRule::*;
use NRule::*;

pub static TABLE_ROWS: &[TableRow] = &[
    row(1, "N >= 2", "i^2 !≡ 0 (mod N)", AtLeast(2), SquareNonzero, &[(1, 1)]),
    row(2, "N >= 2", "i(1-i) ≡ 1 (mod N)", AtLeast(2), Quadratic { a: 1, targets: &[(0, 1)] }, &[(2, 1)]),
    row(2, "N = 2k, k >= 2", "i(1-i) ≡ k (mod N)", Linear { a: 2, b: 0, kmin: 2 }, Quadratic { a: 1, targets: &[(1, 0)] }, &[(3, 1)]),
    row(2, "N = 2k+1, k >= 1", "i(1-i) ≡ k+1 (mod N)", Linear { a: 2, b: 1, kmin: 1 }, Quadratic { a: 1, targets: &[(1, 1)] }, &[(4, 1)]),
    row(2, "N = 3k, k >= 2", "i(1-i) ≡ k, 2k (mod N)", Linear { a: 3, b: 0, kmin: 2 }, Quadratic { a: 1, targets: &[(1, 0), (2, 0)] }, &[(6, 1), (6, 2)]),
    row(2, "N = 3k+1, k >= 1", "i(1-i) ≡ 2k+1 (mod N)", Linear { a: 3, b: 1, kmin: 1 }, Quadratic { a: 1, targets: &[(2, 1)] }, &[(11, 1)]),
    row(2, "N = 3k+2, k >= 1", "i(1-i) ≡ k+1 (mod N)", Linear { a: 3, b: 2, kmin: 1 }, Quadratic { a: 1, targets: &[(1, 1)] }, &[(11, 1)]),
    row(2, "N = 8", "i ≡ 2, 7 (mod 8)", Exactly(8), Residues(&[2, 7]), &[(12, 1)]),
    row(2, "N = 24", "i ≡ 3, 6, 19, 22 (mod 24)", Exactly(24), Residues(&[3, 6, 19, 22]), &[(13, 2)]),
    row(2, "N = 30", "i ≡ 4, 7, 9, 12, 19, 22, 24, 27 (mod 30)", Exactly(30), Residues(&[4, 7, 9, 12, 19, 22, 24, 27]), &[(16, 2)]),
    row(3, "N >= 3", "i(2-i) ≡ 2 (mod N)", AtLeast(3), Quadratic { a: 2, targets: &[(0, 2)] }, &[(4, 1)]),
    row(3, "N = 2k, k >= 3", "i(2-i) ≡ k (mod N)", Linear { a: 2, b: 0, kmin: 3 }, Quadratic { a: 2, targets: &[(1, 0)] }, &[(5, 1), (5, 2)]),
    row(3, "N = 18", "i ≡ 6, 14 (mod 18)", Exactly(18), Residues(&[6, 14]), &[(10, 1)]),
    row(4, "N = 12", "i ≡ 6, 9 (mod 12)", Exactly(12), Residues(&[6, 9]), &[(9, 3)]),
    row(4, "N >= 4", "i(3-i) ≡ 3 (mod N)", AtLeast(4), Quadratic { a: 3, targets: &[(0, 3)] }, &[(11, 1)]),
    row(4, "N = 8", "i ≡ 4, 7 (mod 8)", Exactly(8), Residues(&[4, 7]), &[(12, 3)]),
    row(4, "N = 20", "i ≡ 5, 10, 13, 18 (mod 20)", Exactly(20), Residues(&[5, 10, 13, 18]), &[(15, 1), (15, 2)]),
    row(4, "N = 30", "i ≡ 5, 8, 10, 13, 20, 23, 25, 28 (mod 30)", Exactly(30), Residues(&[5, 8, 10, 13, 20, 23, 25, 28]), &[(16, 1)]),
    row(5, "N = 18", "i ≡ 9, 13 (mod 18)", Exactly(18), Residues(&[9, 13]), &[(10, 3)]),
    row(5, "N = 10", "i ≡ 5, 9 (mod 10)", Exactly(10), Residues(&[5, 9]), &[(14, 2)]),
    row(6, "N = 24", "i ≡ 9, 12, 17, 20 (mod 24)", Exactly(24), Residues(&[9, 12, 17, 20]), &[(13, 4)]),
];

impl TableRow {
    /// Tests the row against (N, i mod N); the dimension is checked by the caller.
    pub fn matches(&self, big_n: u32, i: u32) -> bool {
        let k = match self.n_rule {
            AtLeast(lo) => {
                if big_n < lo {
                    return false;
                }
                0
            }
            Exactly(v) => {
                if big_n != v {
                    return false;
                }
                0
            }
            Linear { a, b, kmin } => {
                if big_n < b || (big_n - b) % a != 0 || (big_n - b) / a < kmin {
                    return false;
                }
                (big_n - b) / a
            }
        };
        let n = big_n as i64;
        let i = i as i64;
        match self.i_rule {
            SquareNonzero => (i * i).rem_euclid(n) != 0,
            Quadratic { a, targets } => {
                let lhs = (i * (a - i)).rem_euclid(n);
                targets.iter().any(|&(c, e)| (c * k as i64 + e).rem_euclid(n) == lhs)
            }
            Residues(list) => list.contains(&(i as u32)),
        }
    }

    /// "dim d: N … ; i …".
    pub fn describe(&self) -> String {
        format!("dim {}: {}; {}", self.dim, self.n_text, self.i_text)
    }
}

/// Why a verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerdictReason {
    TZero,
    LambdaNonzero,
    TableRow {
        dim: u32,
        table_conditions: Vec<String>,
        heckenberger_tags: Vec<(u32, u32)>,
    },
    NoTableMatch,
    IjZero,
}

impl VerdictReason {
    pub fn code(&self) -> &'static str {
        match self {
            VerdictReason::TZero => "T_ZERO",
            VerdictReason::LambdaNonzero => "LAMBDA_NONZERO",
            VerdictReason::TableRow { .. } => "TABLE_ROW",
            VerdictReason::NoTableMatch => "NO_TABLE_MATCH",
            VerdictReason::IjZero => "IJ_ZERO",
        }
    }
}

/// Finite-dimensionality verdict for 𝓑(V(ti,j,λ)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NicholsVerdict {
    pub finite: bool,
    pub reason: VerdictReason,
    pub dim_module: usize,
    /// (degree m, dim 𝓑ᵐ) pairs, when probed.
    pub probe: Option<Vec<(usize, usize)>>,
}

impl NicholsVerdict {
    pub fn tags(&self) -> Vec<(u32, u32)> {
        match &self.reason {
            VerdictReason::TableRow { heckenberger_tags, .. } => heckenberger_tags.clone(),
            _ => Vec::new(),
        }
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "{} ({}), dim V = {}",
            if self.finite { "finite" } else { "infinite" },
            self.reason.code(),
            self.dim_module
        );
        if let VerdictReason::TableRow {
            table_conditions,
            heckenberger_tags,
            ..
        } = &self.reason
        {
            let tags: Vec<String> = heckenberger_tags.iter().map(|(k, l)| format!("({k},{l})")).collect();
            s.push_str(&format!(", tags {}", tags.join(" ")));
            for c in table_conditions {
                s.push_str(&format!("\n  {c}"));
            }
        }
        if let Some(p) = &self.probe {
            let dims: Vec<String> = p.iter().map(|(m, d)| format!("{m}:{d}")).collect();
            s.push_str(&format!("\n  probe {}", dims.join(" ")));
        }
        s
    }
}

impl Serialize for NicholsVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let tags: Vec<[String; 2]> = self.tags().iter().map(|(k, l)| [k.to_string(), l.to_string()]).collect();
        let conditions: Vec<String> = match &self.reason {
            VerdictReason::TableRow { table_conditions, .. } => table_conditions.clone(),
            _ => Vec::new(),
        };
        let probe: Option<Vec<[String; 2]>> = self
            .probe
            .as_ref()
            .map(|p| p.iter().map(|(m, d)| [m.to_string(), d.to_string()]).collect());
        let mut st = s.serialize_struct("NicholsVerdict", 6)?;
        st.serialize_field("finite", &self.finite)?;
        st.serialize_field("reason", self.reason.code())?;
        st.serialize_field("table_conditions", &conditions)?;
        st.serialize_field("tags", &tags)?;
        st.serialize_field("dim_module", &self.dim_module.to_string())?;
        st.serialize_field("probe", &probe)?;
        st.end()
    }
}

/// All table rows matching (N, i mod N) for a module of dimension `dim`.
pub fn matching_rows(big_n: u32, i: u32, dim: u32) -> Vec<&'static TableRow> {
    TABLE_ROWS
        .iter()
        .filter(|r| r.dim == dim && r.matches(big_n, i))
        .collect()
}

/// t = 0 ⇒ T_ZERO; λ ≠ 0 ⇒ LAMBDA_NONZERO; ij ≡ 0 (mod N) ⇒ IJ_ZERO; otherwise
/// finite iff some row of the table for d = N − φ(−i−j) + 1 matches.
pub fn classify_nichols(params: TaftParams, i1: i64, j: i64, lambda: &CycNum) -> NicholsVerdict {
    let big_n = params.big_n();
    let n = big_n as i64;
    let d = big_n - phi(-i1 - j, big_n) + 1;
    let dim_module = if lambda.is_zero() { d as usize } else { params.n() as usize };
    let verdict = |finite, reason| NicholsVerdict {
        finite,
        reason,
        dim_module,
        probe: None,
    };
    if params.t() == 0 {
        return verdict(false, VerdictReason::TZero);
    }
    if !lambda.is_zero() {
        return verdict(false, VerdictReason::LambdaNonzero);
    }
    let (i, j) = (i1.rem_euclid(n), j.rem_euclid(n));
    if (i * j) % n == 0 {
        return verdict(false, VerdictReason::IjZero);
    }
    let rows = matching_rows(big_n, i as u32, d);
    if rows.is_empty() {
        return verdict(false, VerdictReason::NoTableMatch);
    }
    let mut tags = Vec::new();
    for r in &rows {
        for t in r.tags {
            if !tags.contains(t) {
                tags.push(*t);
            }
        }
    }
    verdict(
        true,
        VerdictReason::TableRow {
            dim: d,
            table_conditions: rows.iter().map(|r| r.describe()).collect(),
            heckenberger_tags: tags,
        },
    )
}

//! Process-wide memo of λ and c tables, keyed by the reduced context.
//! Tables only grow; concurrent writers store identical values.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;

use super::{c_from_lambda, c_rows_recursive, lambda_closed_rows, lambda_rows, CoeffContext};
use crate::cyclo::CycNum;
use crate::hopf::HopfElt;

type Key = (u32, u32, u32, u32);
type Table<T> = Arc<Vec<Vec<T>>>;

static LAMBDA: OnceLock<RwLock<HashMap<Key, Table<CycNum>>>> = OnceLock::new();
static C: OnceLock<RwLock<HashMap<Key, Table<HopfElt>>>> = OnceLock::new();

fn lookup<T: Clone>(
    cell: &'static OnceLock<RwLock<HashMap<Key, Table<T>>>>,
    key: Key,
    kmax: u32,
    grow: impl FnOnce(&[Vec<T>], u32) -> Vec<Vec<T>>,
) -> Table<T> {
    let map = cell.get_or_init(|| RwLock::new(HashMap::new()));
    let existing = map.read().get(&key).cloned();
    if let Some(t) = &existing {
        if t.len() > kmax as usize {
            return t.clone();
        }
    }
    let prev: &[Vec<T>] = existing.as_deref().map_or(&[], |v| &v[..]);
    // grow geometrically so repeated small extensions stay cheap
    let target = kmax.max(2 * prev.len() as u32).max(8);
    let table = Arc::new(grow(prev, target));
    let mut w = map.write();
    let keep = match w.get(&key) {
        Some(t) if t.len() >= table.len() => t.clone(),
        _ => {
            w.insert(key, table.clone());
            table
        }
    };
    keep
}

pub(crate) fn lambda_table(ctx: &CoeffContext, kmax: u32) -> Table<CycNum> {
    lookup(&LAMBDA, ctx.key(), kmax, |prev, target| lambda_rows(ctx, prev, target))
}

pub(crate) fn c_table(ctx: &CoeffContext, kmax: u32) -> Table<HopfElt> {
    lookup(&C, ctx.key(), kmax, |prev, target| {
        let rows = c_rows_recursive(ctx, prev, target);
        let closed_rows = lambda_closed_rows(ctx, prev.len() as u32, rows.len() as u32 - 1);
        for (k, lams) in (prev.len()..rows.len()).zip(&closed_rows) {
            for (l, lam) in lams.iter().enumerate() {
                let closed = c_from_lambda(ctx, k as u32, l as u32, lam);
                assert!(
                    rows[k][l] == closed,
                    "c({k},{l}) disagrees between recursion and closed form for {ctx:?}"
                );
            }
        }
        rows
    })
}

//! Degree bookkeeping for the induction on curve degree: the twist numbers
//! `s = 2 deg L - deg H`, the degree rules for a new inducting pair, iterated
//! schedules, and the dimension changes of automorphism, deformation and
//! obstruction spaces under elementary modifications of a stable map.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum LedgerError {
    #[error("k = {k} is outside 1..={s_bar}")]
    KOutOfRange { k: i64, s_bar: i64 },
    #[error("the very twisting family must have e = 1, got e = {0}")]
    NotDegreeOne(u32),
    #[error("row e = {row}: {invariant}")]
    Invariant { row: u32, invariant: String },
    #[error("schedule from e = {start} to e_max = {e_max} needs {needed} steps, got {got}")]
    ScheduleLength {
        start: u32,
        e_max: u32,
        needed: usize,
        got: usize,
    },
    #[error("{space} would drop below zero under move {mv}")]
    NegativeDimension { space: &'static str, mv: Move },
}

/// Where a boundary degree came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Given by one of the degree rules.
    Tracked,
    /// Not determined by the rules; initialized to 0.
    UntrackedOrigin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaDegree {
    pub value: i64,
    pub origin: Origin,
}

/// Degrees of the tautological classes pulled back along a one-parameter
/// family of degree-`e` pointed maps. `delta` is `None` when the boundary
/// degrees are not tracked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyDegrees {
    pub e: u32,
    pub deg_l: i64,
    pub deg_h: i64,
    #[serde(serialize_with = "ser_delta")]
    pub delta: Option<BTreeMap<(u32, u32), DeltaDegree>>,
}

fn ser_delta<S: serde::Serializer>(
    d: &Option<BTreeMap<(u32, u32), DeltaDegree>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match d {
        None => s.serialize_none(),
        Some(m) => {
            use serde::ser::SerializeMap;
            let mut map = s.serialize_map(Some(m.len()))?;
            for ((a, b), v) in m {
                map.serialize_entry(&format!("{a},{b}"), v)?;
            }
            map.end()
        }
    }
}

impl FamilyDegrees {
    pub fn new(e: u32, deg_l: i64, deg_h: i64) -> Self {
        Self {
            e,
            deg_l,
            deg_h,
            delta: Some(BTreeMap::new()),
        }
    }

    /// The twist number `2 deg L - deg H`.
    pub fn s(&self) -> i64 {
        twist_number(self.deg_l, self.deg_h)
    }

    pub fn delta(&self, e1: u32, e2: u32) -> Option<DeltaDegree> {
        self.delta.as_ref().and_then(|m| m.get(&(e1, e2)).copied())
    }
}

/// `s = 2 deg L - deg H`.
pub fn twist_number(deg_l: i64, deg_h: i64) -> i64 {
    2 * deg_l - deg_h
}

/// The degrees of the inducting pair `(xi_1^k, xi-bar^k_{e+1})` built from
/// `(zeta_1, zeta-bar_e)`. The boundary degrees of `xi_1^k` are not given by
/// the rules and are left untracked.
pub fn induct_step(
    zeta1: &FamilyDegrees,
    zeta_bar: &FamilyDegrees,
    k: i64,
) -> Result<(FamilyDegrees, FamilyDegrees), LedgerError> {
    if zeta1.e != 1 {
        return Err(LedgerError::NotDegreeOne(zeta1.e));
    }
    let s = zeta1.s();
    let s_bar = zeta_bar.s();
    if k < 1 || k > s_bar {
        return Err(LedgerError::KOutOfRange { k, s_bar });
    }
    let e = zeta_bar.e;
    let xi1 = FamilyDegrees {
        e: 1,
        deg_l: zeta1.deg_l + k,
        deg_h: zeta1.deg_h + 2 * k,
        delta: None,
    };
    let tracked = |value| DeltaDegree {
        value,
        origin: Origin::Tracked,
    };
    let mut delta = BTreeMap::new();
    if e == 1 {
        delta.insert((1, 1), tracked(s + s_bar));
    } else {
        for e1 in 2..=e.saturating_sub(2) {
            let e2 = e - e1;
            let carried = zeta_bar.delta(e1, e2).unwrap_or(DeltaDegree {
                value: 0,
                origin: Origin::UntrackedOrigin,
            });
            delta.insert((e1 + 1, e2), carried);
        }
        let prev = zeta_bar.delta(e - 1, 1).unwrap_or(DeltaDegree {
            value: 0,
            origin: Origin::UntrackedOrigin,
        });
        delta.insert(
            (e, 1),
            DeltaDegree {
                value: prev.value + s + k,
                origin: prev.origin,
            },
        );
        delta.insert((1, e), tracked(s_bar - k));
        for e1 in 1..=e {
            delta.entry((e1, e + 1 - e1)).or_insert(DeltaDegree {
                value: 0,
                origin: Origin::UntrackedOrigin,
            });
        }
    }
    let xi_bar = FamilyDegrees {
        e: e + 1,
        deg_l: zeta1.deg_l + k,
        deg_h: zeta1.deg_h + zeta_bar.deg_h,
        delta: Some(delta),
    };
    Ok((xi1, xi_bar))
}

/// One row of an iterated schedule: the pair in degree `e`, and the `k`
/// used to leave it (none on the last row).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScheduleRow {
    pub e: u32,
    pub zeta1: FamilyDegrees,
    pub zeta_bar: FamilyDegrees,
    pub s: i64,
    pub s_bar: i64,
    pub k: Option<i64>,
}

/// The rows completed before an invariant failed, and the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScheduleFailure {
    pub rows: Vec<ScheduleRow>,
    pub error: LedgerError,
}

fn row_invariants(row: &ScheduleRow) -> Result<(), LedgerError> {
    let fail = |invariant: String| LedgerError::Invariant {
        row: row.e,
        invariant,
    };
    if row.s < 1 {
        return Err(fail(format!(
            "very twisting side needs s >= 1, got s = {}",
            row.s
        )));
    }
    if row.s_bar < 1 {
        return Err(fail(format!(
            "need s-bar >= 1 to continue, got s-bar = {}",
            row.s_bar
        )));
    }
    if let Some(m) = &row.zeta_bar.delta {
        if let Some(((a, b), d)) = m.iter().find(|(_, d)| d.value < 0) {
            return Err(fail(format!("Delta({a},{b}) = {} is negative", d.value)));
        }
    }
    Ok(())
}

/// Iterates [`induct_step`] from `base` with the given `k` choices, checking
/// after every step that the degree rules were applied consistently and that
/// the next step is possible.
pub fn run_schedule(
    base: (FamilyDegrees, FamilyDegrees),
    steps: &[i64],
    e_max: u32,
) -> Result<Vec<ScheduleRow>, ScheduleFailure> {
    let (mut zeta1, mut zeta_bar) = base;
    let start = zeta_bar.e;
    let needed = e_max.saturating_sub(start) as usize;
    let mut rows: Vec<ScheduleRow> = Vec::new();
    let failed = |rows: Vec<ScheduleRow>, error| Err(ScheduleFailure { rows, error });
    if steps.len() != needed {
        return failed(
            rows,
            LedgerError::ScheduleLength {
                start,
                e_max,
                needed,
                got: steps.len(),
            },
        );
    }
    for i in 0..=needed {
        let row = ScheduleRow {
            e: zeta_bar.e,
            s: zeta1.s(),
            s_bar: zeta_bar.s(),
            zeta1: zeta1.clone(),
            zeta_bar: zeta_bar.clone(),
            k: steps.get(i).copied(),
        };
        if let Err(e) = row_invariants(&row) {
            rows.push(row);
            return failed(rows, e);
        }
        rows.push(row);
        let Some(&k) = steps.get(i) else { break };
        let (xi1, xi_bar) = match induct_step(&zeta1, &zeta_bar, k) {
            Ok(p) => p,
            Err(e) => return failed(rows, e),
        };
        let e_new = xi_bar.e;
        let fail = |invariant: String| LedgerError::Invariant {
            row: e_new,
            invariant,
        };
        if xi_bar.deg_h - zeta_bar.deg_h != zeta1.deg_h {
            return failed(rows, fail("H(xi-bar) - H(zeta-bar) != H(zeta_1)".into()));
        }
        if xi_bar.deg_l != zeta1.deg_l + k || xi1.deg_l != xi_bar.deg_l {
            return failed(rows, fail("L must grow by k on both sides".into()));
        }
        if zeta_bar.e > 1 && xi_bar.delta(1, zeta_bar.e).map(|d| d.value + k) != Some(zeta_bar.s())
        {
            return failed(rows, fail("Delta(1,e) + k != s-bar".into()));
        }
        zeta1 = xi1;
        zeta_bar = xi_bar;
    }
    Ok(rows)
}

/// Dimensions of infinitesimal automorphisms, first-order deformations and
/// obstructions of a stable map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DefDims {
    pub aut: u32,
    pub def: u32,
    pub obs: u32,
}

impl DefDims {
    pub fn new(aut: u32, def: u32, obs: u32) -> Self {
        Self { aut, def, obs }
    }

    /// `aut - def + obs`.
    pub fn euler(&self) -> i64 {
        self.aut as i64 - self.def as i64 + self.obs as i64
    }
}

/// Elementary modifications `h: B' -> B` of a stable map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    Ia,
    Ib,
    IIa,
    IIb,
    IIIa,
    IIIb,
}

impl Move {
    pub const ALL: [Move; 6] = [
        Move::Ia,
        Move::Ib,
        Move::IIa,
        Move::IIb,
        Move::IIIa,
        Move::IIIb,
    ];
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Kernel and cokernel dimensions of the map from the new space to the old.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KerCoker {
    pub kernel: u32,
    pub cokernel: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtBreakdown {
    pub aut: KerCoker,
    pub def: KerCoker,
    pub obs: KerCoker,
}

const fn kc(kernel: u32, cokernel: u32) -> KerCoker {
    KerCoker { kernel, cokernel }
}

/// Kernel/cokernel dimensions of `Ext^i(new) -> Ext^i(old)` for each move.
///
/// Type II uses `H^0(E, T_E(-D)) = 1` for the automorphism kernel, since
/// `T_E(-D)` is trivial on the exceptional line `E`.
pub fn move_breakdown(mv: Move) -> ExtBreakdown {
    let (aut, def, obs) = match mv {
        Move::Ia => (kc(2, 0), kc(2, 0), kc(0, 0)),
        Move::Ib => (kc(1, 1), kc(1, 0), kc(0, 0)),
        Move::IIa => (kc(1, 0), kc(1, 1), kc(0, 0)),
        Move::IIb => (kc(1, 0), kc(1, 0), kc(1, 0)),
        Move::IIIa => (kc(0, 1), kc(0, 0), kc(0, 0)),
        Move::IIIb => (kc(0, 0), kc(1, 0), kc(0, 0)),
    };
    ExtBreakdown { aut, def, obs }
}

/// Dimensions after applying `mv`: each space changes by kernel minus
/// cokernel of its comparison map.
pub fn ext_dimension_step(dims: DefDims, mv: Move) -> Result<(DefDims, ExtBreakdown), LedgerError> {
    let b = move_breakdown(mv);
    let apply = |old: u32, m: KerCoker, space: &'static str| {
        (old + m.kernel)
            .checked_sub(m.cokernel)
            .ok_or(LedgerError::NegativeDimension { space, mv })
    };
    Ok((
        DefDims {
            aut: apply(dims.aut, b.aut, "aut")?,
            def: apply(dims.def, b.def, "def")?,
            obs: apply(dims.obs, b.obs, "obs")?,
        },
        b,
    ))
}

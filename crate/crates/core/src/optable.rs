//! Finite binary operations as tables, and the checkers that decide
//! whether a table is a t-norm, t-conorm or nullnorm.
//!
//! Every checker is the naive loop over its quantifier domain: that is
//! the normative semantics, and the first violation in row-major scan
//! order becomes the witness.

use thiserror::Error;

use crate::psoset::{Elem, Psoset};
use crate::report::{CheckReport, Verdict, Witness};
use crate::trellis::BoundedTrellis;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OpTableError {
    #[error("carrier indices must be strictly ascending")]
    BadCarrier,
    #[error("table has {got} entries, expected {expected}")]
    BadSize { expected: usize, got: usize },
    #[error("entry at ({x}, {y}) is element {value}, which is outside the carrier")]
    EntryOutsideCarrier { x: Elem, y: Elem, value: Elem },
    #[error("carrier is not an interval of the trellis")]
    NotAnInterval,
    #[error("operation is not a nullnorm with zero `{0}`")]
    NotANullnorm(String),
}

/// An n×n element-valued table over a carrier of parent-universe indices.
///
/// Sub-universe tables (say on the interval below a zero element) keep
/// parent indices throughout, so results can be compared against parent
/// meets and joins directly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    carrier: Vec<Elem>,
    entries: Vec<Elem>,
}

impl OpTable {
    pub fn new(carrier: Vec<Elem>, entries: Vec<Elem>) -> Result<Self, OpTableError> {
        if carrier.windows(2).any(|w| w[0] >= w[1]) {
            return Err(OpTableError::BadCarrier);
        }
        let k = carrier.len();
        if entries.len() != k * k {
            return Err(OpTableError::BadSize {
                expected: k * k,
                got: entries.len(),
            });
        }
        for (idx, &v) in entries.iter().enumerate() {
            if carrier.binary_search(&v).is_err() {
                return Err(OpTableError::EntryOutsideCarrier {
                    x: carrier[idx / k],
                    y: carrier[idx % k],
                    value: v,
                });
            }
        }
        Ok(OpTable { carrier, entries })
    }

    /// Tabulates `f` over the given carrier.
    pub fn from_fn(
        carrier: Vec<Elem>,
        f: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self, OpTableError> {
        let entries: Vec<Elem> = carrier
            .iter()
            .flat_map(|&x| carrier.iter().map(move |&y| f(x, y)))
            .collect();
        OpTable::new(carrier, entries)
    }

    /// The full meet table of a trellis.
    pub fn meet_table(t: &BoundedTrellis) -> Self {
        OpTable::from_fn((0..t.len()).collect(), |x, y| t.meet(x, y)).expect("meets are closed")
    }

    /// The full join table of a trellis.
    pub fn join_table(t: &BoundedTrellis) -> Self {
        OpTable::from_fn((0..t.len()).collect(), |x, y| t.join(x, y)).expect("joins are closed")
    }

    pub fn carrier(&self) -> &[Elem] {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.carrier.binary_search(&x).is_ok()
    }

    fn pos(&self, x: Elem) -> usize {
        self.carrier
            .binary_search(&x)
            .unwrap_or_else(|_| panic!("element {x} is not in the table's carrier"))
    }

    /// Value of the operation at two parent-universe indices.
    pub fn value(&self, x: Elem, y: Elem) -> Elem {
        self.entries[self.pos(x) * self.size() + self.pos(y)]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn is_full_universe(&self, p: &Psoset) -> bool {
        self.carrier.len() == p.len()
    }
}

fn pair_note(p: &Psoset, x: Elem, y: Elem, vxy: Elem, vyx: Elem) -> String {
    format!(
        "V({}, {}) = {} but V({}, {}) = {}",
        p.label(x),
        p.label(y),
        p.label(vxy),
        p.label(y),
        p.label(x),
        p.label(vyx)
    )
}

/// First commutativity violation in row-major order, if any.
pub fn commutativity_witness(p: &Psoset, v: &OpTable) -> Option<Witness> {
    for &x in v.carrier() {
        for &y in v.carrier() {
            let (a, b) = (v.value(x, y), v.value(y, x));
            if a != b {
                return Some(Witness::new(vec![x, y], pair_note(p, x, y, a, b)));
            }
        }
    }
    None
}

/// First associativity violation over all triples, if any.
pub fn associativity_witness(p: &Psoset, v: &OpTable) -> Option<Witness> {
    for &x in v.carrier() {
        for &y in v.carrier() {
            for &z in v.carrier() {
                let left = v.value(v.value(x, y), z);
                let right = v.value(x, v.value(y, z));
                if left != right {
                    let note = format!(
                        "V(V({x0}, {y0}), {z0}) = {l} but V({x0}, V({y0}, {z0})) = {r}",
                        x0 = p.label(x),
                        y0 = p.label(y),
                        z0 = p.label(z),
                        l = p.label(left),
                        r = p.label(right)
                    );
                    return Some(Witness::new(vec![x, y, z], note));
                }
            }
        }
    }
    None
}

/// First increasingness violation over comparable pairs × comparable
/// pairs, if any: x ⊴ y and z ⊴ t must give V(x,z) ⊴ V(y,t).
pub fn increasingness_witness(p: &Psoset, v: &OpTable) -> Option<Witness> {
    for &x in v.carrier() {
        for &y in v.carrier() {
            if !p.leq(x, y) {
                continue;
            }
            for &z in v.carrier() {
                for &t in v.carrier() {
                    if !p.leq(z, t) {
                        continue;
                    }
                    let (lo, hi) = (v.value(x, z), v.value(y, t));
                    if !p.leq(lo, hi) {
                        let note = format!(
                            "{} ⊴ {} and {} ⊴ {} but V({}, {}) = {} ⋬ {} = V({}, {})",
                            p.label(x),
                            p.label(y),
                            p.label(z),
                            p.label(t),
                            p.label(x),
                            p.label(z),
                            p.label(lo),
                            p.label(hi),
                            p.label(y),
                            p.label(t)
                        );
                        return Some(Witness::new(vec![x, y, z, t], note));
                    }
                }
            }
        }
    }
    None
}

/// Commutativity, associativity and increasingness of a table, under the
/// relation induced on its carrier.
pub fn check_axioms(p: &Psoset, v: &OpTable) -> CheckReport {
    let mut report = CheckReport::new();
    report.push(Verdict::from_option("commutative", commutativity_witness(p, v)));
    report.push(Verdict::from_option("associative", associativity_witness(p, v)));
    report.push(Verdict::from_option("increasing", increasingness_witness(p, v)));
    report
}

/// Elements `a` whose two boundary rows hold: V(x, 0) = x for all x ⊴ a
/// and V(x, 1) = x for all x ⊵ a. Does not test the other axioms.
pub fn zero_elements(t: &BoundedTrellis, v: &OpTable) -> Vec<Elem> {
    assert!(
        v.is_full_universe(t.psoset()),
        "zero_elements needs a full-universe table"
    );
    let n = t.len();
    (0..n)
        .filter(|&a| {
            (0..n).all(|x| !t.leq(x, a) || v.value(x, t.bottom()) == x)
                && (0..n).all(|x| !t.leq(a, x) || v.value(x, t.top()) == x)
        })
        .collect()
}

/// Outcome of a nullnorm check: the axiom report plus every zero found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullnormCheck {
    pub axioms: CheckReport,
    pub zeros: Vec<Elem>,
    /// Some zero is neither bottom nor top.
    pub proper: bool,
}

impl NullnormCheck {
    pub fn is_nullnorm(&self) -> bool {
        self.axioms.all_passed() && !self.zeros.is_empty()
    }
}

/// A table is a nullnorm when all three axioms hold and at least one
/// zero element exists.
pub fn is_nullnorm(t: &BoundedTrellis, v: &OpTable) -> NullnormCheck {
    let axioms = check_axioms(t.psoset(), v);
    let zeros = zero_elements(t, v);
    let proper = zeros.iter().any(|&a| a != t.bottom() && a != t.top());
    NullnormCheck {
        axioms,
        zeros,
        proper,
    }
}

/// Endpoints of the carrier when it is an interval [lo, hi] of the
/// trellis, in the induced relation.
fn interval_endpoints(t: &BoundedTrellis, v: &OpTable) -> Result<(Elem, Elem), OpTableError> {
    let carrier = v.carrier();
    let lo = carrier
        .iter()
        .copied()
        .find(|&l| carrier.iter().all(|&x| t.leq(l, x)))
        .ok_or(OpTableError::NotAnInterval)?;
    let hi = carrier
        .iter()
        .copied()
        .find(|&h| carrier.iter().all(|&x| t.leq(x, h)))
        .ok_or(OpTableError::NotAnInterval)?;
    if t.interval(lo, hi) != carrier {
        return Err(OpTableError::NotAnInterval);
    }
    Ok((lo, hi))
}

fn neutral_witness(p: &Psoset, v: &OpTable, e: Elem) -> Option<Witness> {
    for &x in v.carrier() {
        for (got, args) in [(v.value(x, e), (x, e)), (v.value(e, x), (e, x))] {
            if got != x {
                let note = format!(
                    "V({}, {}) = {}, expected {}",
                    p.label(args.0),
                    p.label(args.1),
                    p.label(got),
                    p.label(x)
                );
                return Some(Witness::new(vec![args.0, args.1], note));
            }
        }
    }
    None
}

/// T-norm check on an interval sub-universe: axioms plus the interval's
/// top as neutral element.
pub fn is_tnorm(t: &BoundedTrellis, v: &OpTable) -> Result<CheckReport, OpTableError> {
    let (_, hi) = interval_endpoints(t, v)?;
    let mut report = check_axioms(t.psoset(), v);
    report.push(Verdict::from_option("neutral", neutral_witness(t.psoset(), v, hi)));
    Ok(report)
}

/// T-conorm check on an interval sub-universe: axioms plus the interval's
/// bottom as neutral element.
pub fn is_tconorm(t: &BoundedTrellis, v: &OpTable) -> Result<CheckReport, OpTableError> {
    let (lo, _) = interval_endpoints(t, v)?;
    let mut report = check_axioms(t.psoset(), v);
    report.push(Verdict::from_option("neutral", neutral_witness(t.psoset(), v, lo)));
    Ok(report)
}

/// Restriction of a full table to a sub-carrier; fails when some entry
/// leaves the sub-carrier.
fn restrict(v: &OpTable, carrier: Vec<Elem>) -> Result<OpTable, (Elem, Elem, Elem)> {
    let mut entries = Vec::with_capacity(carrier.len() * carrier.len());
    for &x in &carrier {
        for &y in &carrier {
            let val = v.value(x, y);
            if carrier.binary_search(&val).is_err() {
                return Err((x, y, val));
            }
            entries.push(val);
        }
    }
    Ok(OpTable::new(carrier, entries).expect("restriction entries checked"))
}

/// The structural consequences every nullnorm with zero `a` must show:
/// the lower and upper blocks restrict to a t-conorm and a t-norm, the
/// mixed blocks are constantly `a`, and the ordering and meet/join bounds
/// hold cell by cell. One verdict per statement.
pub fn check_block_structure(
    t: &BoundedTrellis,
    v: &OpTable,
    zero: Elem,
) -> Result<CheckReport, OpTableError> {
    let check = is_nullnorm(t, v);
    if !check.is_nullnorm() || !check.zeros.contains(&zero) {
        return Err(OpTableError::NotANullnorm(t.label(zero).to_string()));
    }
    let p = t.psoset();
    let n = t.len();
    let a = zero;
    let all: Vec<Elem> = (0..n).collect();
    let lower: Vec<Elem> = (0..n).filter(|&x| t.leq(x, a)).collect();
    let upper: Vec<Elem> = (0..n).filter(|&x| t.leq(a, x)).collect();
    let incomp: Vec<Elem> = (0..n).filter(|&x| p.incomparable(x, a)).collect();
    let dashed_up: Vec<Elem> = incomp.iter().copied().filter(|&x| p.reachable(x, a)).collect();
    let dashed_down: Vec<Elem> = incomp.iter().copied().filter(|&x| p.reachable(a, x)).collect();

    let mut report = CheckReport::new();
    let cell = |x: Elem, y: Elem| v.value(x, y);
    let lbl = |e: Elem| p.label(e);

    // constant-a requirements over a set of (row, column) domains
    let constant_zero = |domains: &[(&[Elem], &[Elem])]| -> Option<Witness> {
        for &(rows, cols) in domains {
            for &x in rows {
                for &y in cols {
                    if cell(x, y) != a {
                        let note = format!(
                            "V({}, {}) = {}, expected the zero {}",
                            lbl(x),
                            lbl(y),
                            lbl(cell(x, y)),
                            lbl(a)
                        );
                        return Some(Witness::new(vec![x, y], note));
                    }
                }
            }
        }
        None
    };
    // lower-bound requirements: bound(x, y) ⊴ V(x, y)
    let bounded_below = |domains: &[(&[Elem], &[Elem])],
                         bound: &dyn Fn(Elem, Elem) -> Elem|
     -> Option<Witness> {
        for &(rows, cols) in domains {
            for &x in rows {
                for &y in cols {
                    let b = bound(x, y);
                    if !t.leq(b, cell(x, y)) {
                        let note = format!(
                            "{} ⋬ V({}, {}) = {}",
                            lbl(b),
                            lbl(x),
                            lbl(y),
                            lbl(cell(x, y))
                        );
                        return Some(Witness::new(vec![x, y], note));
                    }
                }
            }
        }
        None
    };
    // upper-bound requirements: V(x, y) ⊴ bound(x, y)
    let bounded_above = |domains: &[(&[Elem], &[Elem])],
                         bound: &dyn Fn(Elem, Elem) -> Elem|
     -> Option<Witness> {
        for &(rows, cols) in domains {
            for &x in rows {
                for &y in cols {
                    let b = bound(x, y);
                    if !t.leq(cell(x, y), b) {
                        let note = format!(
                            "V({}, {}) = {} ⋬ {}",
                            lbl(x),
                            lbl(y),
                            lbl(cell(x, y)),
                            lbl(b)
                        );
                        return Some(Witness::new(vec![x, y], note));
                    }
                }
            }
        }
        None
    };

    report.push(Verdict::from_option(
        "below_with_upper_is_zero",
        constant_zero(&[(&lower, &upper)]),
    ));
    report.push(Verdict::from_option(
        "above_with_lower_is_zero",
        constant_zero(&[(&upper, &lower)]),
    ));
    report.push(Verdict::from_option(
        "dashed_up_with_upper_is_zero",
        constant_zero(&[(&dashed_up, &upper)]),
    ));
    report.push(Verdict::from_option(
        "dashed_down_with_lower_is_zero",
        constant_zero(&[(&dashed_down, &lower)]),
    ));
    report.push(sub_operation_verdict(
        t,
        v,
        "lower_block_tconorm",
        lower.clone(),
        SubKind::Tconorm,
    ));
    report.push(sub_operation_verdict(
        t,
        v,
        "upper_block_tnorm",
        upper.clone(),
        SubKind::Tnorm,
    ));
    report.push(Verdict::from_option(
        "mixed_blocks_constant",
        constant_zero(&[(&lower, &upper), (&upper, &lower)]),
    ));
    report.push(Verdict::from_option(
        "upper_mixed_above_zero",
        bounded_below(
            &[(&upper, &upper), (&upper, &incomp), (&incomp, &upper)],
            &|_, _| a,
        ),
    ));
    report.push(Verdict::from_option(
        "lower_mixed_below_zero",
        bounded_above(
            &[(&lower, &lower), (&lower, &incomp), (&incomp, &lower)],
            &|_, _| a,
        ),
    ));
    report.push(Verdict::from_option(
        "upper_column_bound",
        bounded_above(&[(&all, &upper)], &|_, y| y),
    ));
    report.push(Verdict::from_option(
        "upper_row_bound",
        bounded_above(&[(&upper, &all)], &|x, _| x),
    ));
    report.push(Verdict::from_option(
        "lower_row_bound",
        bounded_below(&[(&lower, &all)], &|x, _| x),
    ));
    report.push(Verdict::from_option(
        "lower_column_bound",
        bounded_below(&[(&all, &lower)], &|_, y| y),
    ));
    report.push(Verdict::from_option(
        "lower_block_join_bound",
        bounded_below(&[(&lower, &lower)], &|x, y| t.join(x, y)),
    ));
    report.push(Verdict::from_option(
        "upper_block_meet_bound",
        bounded_above(&[(&upper, &upper)], &|x, y| t.meet(x, y)),
    ));
    report.push(Verdict::from_option(
        "incomparable_join_bound",
        bounded_below(
            &[(&lower, &incomp), (&incomp, &lower), (&incomp, &incomp)],
            &|x, y| t.join(t.meet(x, a), t.meet(y, a)),
        ),
    ));
    report.push(Verdict::from_option(
        "incomparable_meet_bound",
        bounded_above(
            &[(&upper, &incomp), (&incomp, &upper), (&incomp, &incomp)],
            &|x, y| t.meet(t.join(x, a), t.join(y, a)),
        ),
    ));
    Ok(report)
}

enum SubKind {
    Tnorm,
    Tconorm,
}

/// Folds the restriction-to-a-block check into one verdict: closure of
/// the block, then the full t-norm/t-conorm report on the restriction.
fn sub_operation_verdict(
    t: &BoundedTrellis,
    v: &OpTable,
    name: &str,
    carrier: Vec<Elem>,
    kind: SubKind,
) -> Verdict {
    let p = t.psoset();
    match restrict(v, carrier) {
        Err((x, y, val)) => Verdict::fail(
            name,
            Witness::new(
                vec![x, y],
                format!(
                    "V({}, {}) = {} leaves the block",
                    p.label(x),
                    p.label(y),
                    p.label(val)
                ),
            ),
        ),
        Ok(sub) => {
            let report = match kind {
                SubKind::Tnorm => is_tnorm(t, &sub),
                SubKind::Tconorm => is_tconorm(t, &sub),
            };
            match report {
                Err(e) => Verdict::fail(name, Witness::new(vec![], e.to_string())),
                Ok(rep) => match rep.failures().next() {
                    None => Verdict::pass(name),
                    Some(bad) => {
                        let w = bad.witness.clone().unwrap_or(Witness::new(vec![], String::new()));
                        Verdict::fail(
                            name,
                            Witness::new(w.elements, format!("{} fails: {}", bad.name, w.note)),
                        )
                    }
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psoset::Psoset;

    fn chain3() -> BoundedTrellis {
        let p = Psoset::build(&["0", "m", "1"], &[("0", "m"), ("m", "1"), ("0", "1")]).unwrap();
        BoundedTrellis::from_psoset(p).unwrap()
    }

    #[test]
    fn meet_table_of_a_chain_is_a_nullnorm_with_zero_bottom() {
        let t = chain3();
        let v = OpTable::meet_table(&t);
        let report = check_axioms(t.psoset(), &v);
        assert!(report.all_passed(), "{report}");
        assert_eq!(zero_elements(&t, &v), vec![0]);
        let nn = is_nullnorm(&t, &v);
        assert!(nn.is_nullnorm());
        assert!(!nn.proper);
    }

    #[test]
    fn join_table_of_a_chain_is_a_nullnorm_with_zero_top() {
        let t = chain3();
        let v = OpTable::join_table(&t);
        let nn = is_nullnorm(&t, &v);
        assert!(nn.is_nullnorm());
        assert_eq!(nn.zeros, vec![2]);
    }

    #[test]
    fn midpoint_nullnorm_on_the_chain() {
        let t = chain3();
        // 0 at (0,0), 1 at (1,1), m everywhere else
        let v = OpTable::from_fn((0..3).collect(), |x, y| match (x, y) {
            (0, 0) => 0,
            (2, 2) => 2,
            _ => 1,
        })
        .unwrap();
        assert_eq!(zero_elements(&t, &v), vec![1]);
        let nn = is_nullnorm(&t, &v);
        assert!(nn.is_nullnorm());
        assert!(nn.proper);
        let blocks = check_block_structure(&t, &v, 1).unwrap();
        assert!(blocks.all_passed(), "{blocks}");
        assert_eq!(blocks.verdicts.len(), 17);
    }

    #[test]
    fn constant_table_is_not_a_nullnorm() {
        let t = chain3();
        let v = OpTable::from_fn((0..3).collect(), |_, _| 1).unwrap();
        let nn = is_nullnorm(&t, &v);
        assert!(nn.axioms.all_passed());
        assert!(nn.zeros.is_empty());
        assert!(!nn.is_nullnorm());
    }

    #[test]
    fn broken_cell_fails_increasingness_with_a_replayable_witness() {
        let t = chain3();
        let mut entries = OpTable::meet_table(&t).entries().to_vec();
        entries[1 * 3 + 1] = 2; // V(m, m) = 1 breaks monotonicity against V(m, 1) = m
        let v = OpTable::new((0..3).collect(), entries).unwrap();
        let w = increasingness_witness(t.psoset(), &v).expect("must fail");
        let [x, y, z, tt] = w.elements[..] else {
            panic!("witness arity")
        };
        assert!(t.leq(x, y) && t.leq(z, tt));
        assert!(!t.leq(v.value(x, z), v.value(y, tt)));
    }

    #[test]
    fn non_interval_carrier_is_rejected() {
        let t = chain3();
        // {0, 1} misses the midpoint, so it is not an interval
        let v = OpTable::from_fn(vec![0, 2], |x, y| x.min(y)).unwrap();
        assert_eq!(is_tnorm(&t, &v), Err(OpTableError::NotAnInterval));
    }

    #[test]
    fn meet_on_an_interval_is_a_tnorm() {
        let t = chain3();
        let v = OpTable::from_fn(vec![1, 2], |x, y| t.meet(x, y)).unwrap();
        let rep = is_tnorm(&t, &v).unwrap();
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn entries_outside_the_carrier_are_rejected() {
        let err = OpTable::new(vec![0, 1], vec![0, 1, 1, 2]).unwrap_err();
        assert_eq!(
            err,
            OpTableError::EntryOutsideCarrier { x: 1, y: 1, value: 2 }
        );
    }
}

//! Nullnorm constructions from a t-conorm on the lower interval and a
//! t-norm on the upper one, plus the drastic generators and the lattice
//! specializations.
//!
//! The raw table builder is total: it only needs a split of the zero's
//! incomparables, never the structural preconditions. The checked
//! constructor validates those preconditions first and re-verifies the
//! outcome, so the "bad" tables the validation rejects can still be built
//! and inspected deliberately.

use thiserror::Error;

use crate::optable::{is_nullnorm, is_tconorm, is_tnorm, OpTable, OpTableError};
use crate::psoset::Elem;
use crate::report::{CheckReport, Verdict, Witness};
use crate::trellis::{BoundedTrellis, ClassifyError, IncomparablePartition, ZeroClassification};

/// Where the detached incomparables go: `Thm31` folds them into the
/// upper (t-norm) block, `Thm32` into the lower (t-conorm) block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionVariant {
    Thm31,
    Thm32,
}

impl ConstructionVariant {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionVariant::Thm31 => "thm31",
            ConstructionVariant::Thm32 => "thm32",
        }
    }
}

impl std::str::FromStr for ConstructionVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "thm31" => Ok(ConstructionVariant::Thm31),
            "thm32" => Ok(ConstructionVariant::Thm32),
            other => Err(format!("unknown variant `{other}`, expected thm31 or thm32")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("the trellis has {0} elements, constructions need at least 3")]
    TooSmall(usize),
    #[error("zero element must differ from bottom and top")]
    ZeroAtBound,
    #[error("lower operation is not a t-conorm on [0, zero]: {0}")]
    BadTconorm(String),
    #[error("upper operation is not a t-norm on [zero, 1]: {0}")]
    BadTnorm(String),
    #[error("lower operation carrier is not the interval [0, zero]")]
    TconormCarrier,
    #[error("upper operation carrier is not the interval [zero, 1]")]
    TnormCarrier,
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("construction preconditions failed:\n{0}")]
    PreconditionsFailed(CheckReport),
    #[error("the trellis is not a lattice")]
    NotALattice,
}

/// A variant, an intended zero and the two interval operations.
///
/// Building a spec verifies the operation tables: the lower one must be a
/// t-conorm on [0, zero], the upper one a t-norm on [zero, 1]. An
/// explicit incomparable split may be attached afterwards; by default the
/// canonical reachability-based one is used.
#[derive(Debug, Clone)]
pub struct ConstructionSpec {
    pub variant: ConstructionVariant,
    pub zero: Elem,
    tconorm: OpTable,
    tnorm: OpTable,
    partition: Option<IncomparablePartition>,
}

impl ConstructionSpec {
    pub fn new(
        t: &BoundedTrellis,
        variant: ConstructionVariant,
        zero: Elem,
        tconorm: OpTable,
        tnorm: OpTable,
    ) -> Result<Self, ConstructError> {
        if t.len() < 3 {
            return Err(ConstructError::TooSmall(t.len()));
        }
        if zero == t.bottom() || zero == t.top() {
            return Err(ConstructError::ZeroAtBound);
        }
        if tconorm.carrier() != t.interval(t.bottom(), zero) {
            return Err(ConstructError::TconormCarrier);
        }
        if tnorm.carrier() != t.interval(zero, t.top()) {
            return Err(ConstructError::TnormCarrier);
        }
        let s_report = is_tconorm(t, &tconorm).map_err(|e| ConstructError::BadTconorm(e.to_string()))?;
        if let Some(bad) = s_report.failures().next() {
            return Err(ConstructError::BadTconorm(describe(bad)));
        }
        let t_report = is_tnorm(t, &tnorm).map_err(|e| ConstructError::BadTnorm(e.to_string()))?;
        if let Some(bad) = t_report.failures().next() {
            return Err(ConstructError::BadTnorm(describe(bad)));
        }
        Ok(ConstructionSpec {
            variant,
            zero,
            tconorm,
            tnorm,
            partition: None,
        })
    }

    /// Uses the drastic generators for both interval operations.
    pub fn with_drastic(
        t: &BoundedTrellis,
        variant: ConstructionVariant,
        zero: Elem,
    ) -> Result<Self, ConstructError> {
        if t.len() < 3 {
            return Err(ConstructError::TooSmall(t.len()));
        }
        if zero == t.bottom() || zero == t.top() {
            return Err(ConstructError::ZeroAtBound);
        }
        ConstructionSpec::new(t, variant, zero, drastic_tconorm(t, zero), drastic_tnorm(t, zero))
    }

    /// Attaches an explicit split of the zero's incomparables.
    pub fn with_partition(mut self, partition: IncomparablePartition) -> Self {
        self.partition = Some(partition);
        self
    }

    pub fn tconorm(&self) -> &OpTable {
        &self.tconorm
    }

    pub fn tnorm(&self) -> &OpTable {
        &self.tnorm
    }

    /// The classification the construction will run on.
    pub fn classification(&self, t: &BoundedTrellis) -> Result<ZeroClassification, ClassifyError> {
        match &self.partition {
            None => t.classify_around(self.zero),
            Some(p) => t.classify_around_with(self.zero, p),
        }
    }
}

fn describe(v: &Verdict) -> String {
    match &v.witness {
        Some(w) => format!("{} ({})", v.name, w.note),
        None => v.name.clone(),
    }
}

/// Drastic t-conorm on [0, a]: the join when one argument is the bottom,
/// `a` otherwise.
pub fn drastic_tconorm(t: &BoundedTrellis, a: Elem) -> OpTable {
    let carrier = t.interval(t.bottom(), a);
    OpTable::from_fn(carrier, |x, y| {
        if x == t.bottom() || y == t.bottom() {
            t.join(x, y)
        } else {
            a
        }
    })
    .expect("drastic entries stay inside the interval")
}

/// Drastic t-norm on [a, 1]: the meet when one argument is the top,
/// `a` otherwise.
pub fn drastic_tnorm(t: &BoundedTrellis, a: Elem) -> OpTable {
    let carrier = t.interval(a, t.top());
    OpTable::from_fn(carrier, |x, y| {
        if x == t.top() || y == t.top() {
            t.meet(x, y)
        } else {
            a
        }
    })
    .expect("drastic entries stay inside the interval")
}

fn subset_witness(
    t: &BoundedTrellis,
    members: &[Elem],
    required: &[Elem],
    requirement: &str,
) -> Option<Witness> {
    for &x in members {
        let ok = required.contains(&x) && x != t.bottom() && x != t.top();
        if !ok {
            return Some(Witness::new(
                vec![x],
                format!("`{}` is not {}", t.label(x), requirement),
            ));
        }
    }
    None
}

/// The three structural preconditions and the emptiness condition of the
/// chosen variant, each as one verdict:
///
/// - `zero_in_kernel`: the zero is middle-transitive, on no cycle and not
///   a bound;
/// - `lower_side_left_transitive`: the raised inner elements and every
///   incomparable folded into the lower block are left-transitive;
/// - `upper_side_right_transitive`: dual, for the upper block;
/// - `no_detached_under` / `no_detached_over`: the emptiness condition the
///   construction is equivalent to, with the offending pair as witness.
pub fn validate_preconditions(t: &BoundedTrellis, spec: &ConstructionSpec) -> CheckReport {
    let mut report = CheckReport::new();
    let cls = match spec.classification(t) {
        Ok(c) => c,
        Err(e) => {
            // without a usable split no verdict can be assessed
            let names = [
                "zero_in_kernel",
                "lower_side_left_transitive",
                "upper_side_right_transitive",
                match spec.variant {
                    ConstructionVariant::Thm31 => "no_detached_under",
                    ConstructionVariant::Thm32 => "no_detached_over",
                },
            ];
            for name in names {
                report.push(Verdict::fail(name, Witness::new(vec![], e.to_string())));
            }
            return report;
        }
    };
    let a = spec.zero;
    let kernel_witness = if a == t.bottom() || a == t.top() {
        Some(Witness::new(
            vec![a],
            format!("`{}` is the bottom or top", t.label(a)),
        ))
    } else if t.psoset().on_cycle(a) {
        Some(Witness::new(
            vec![a],
            format!("`{}` lies on a cycle", t.label(a)),
        ))
    } else if !t.psoset().is_middle_transitive(a) {
        Some(Witness::new(
            vec![a],
            format!("`{}` is not middle-transitive", t.label(a)),
        ))
    } else {
        None
    };
    report.push(Verdict::from_option("zero_in_kernel", kernel_witness));

    let trans = t.psoset().transitivity_report();
    let (lower_extra, upper_extra): (Vec<Elem>, Vec<Elem>) = match spec.variant {
        ConstructionVariant::Thm31 => (cls.dashed_up.clone(), {
            let mut v = cls.dashed_down.clone();
            v.extend(&cls.detached);
            v
        }),
        ConstructionVariant::Thm32 => (
            {
                let mut v = cls.dashed_up.clone();
                v.extend(&cls.detached);
                v
            },
            cls.dashed_down.clone(),
        ),
    };
    let mut lower_side = cls.inner_raised.clone();
    lower_side.extend(lower_extra);
    let mut upper_side = cls.inner_lowered.clone();
    upper_side.extend(upper_extra);
    report.push(Verdict::from_option(
        "lower_side_left_transitive",
        subset_witness(t, &lower_side, &trans.left, "a left-transitive non-bound"),
    ));
    report.push(Verdict::from_option(
        "upper_side_right_transitive",
        subset_witness(t, &upper_side, &trans.right, "a right-transitive non-bound"),
    ));

    match spec.variant {
        ConstructionVariant::Thm31 => {
            let witness = cls.detached_under.first().map(|&x| {
                let y = cls
                    .below
                    .iter()
                    .chain(cls.dashed_up.iter())
                    .copied()
                    .find(|&y| t.leq(x, y))
                    .expect("membership implies a witness pair");
                Witness::new(
                    vec![x, y],
                    format!(
                        "detached `{}` lies below `{}`",
                        t.label(x),
                        t.label(y)
                    ),
                )
            });
            report.push(Verdict::from_option("no_detached_under", witness));
        }
        ConstructionVariant::Thm32 => {
            let witness = cls.detached_over.first().map(|&x| {
                let y = cls
                    .above
                    .iter()
                    .chain(cls.dashed_down.iter())
                    .copied()
                    .find(|&y| t.leq(y, x))
                    .expect("membership implies a witness pair");
                Witness::new(
                    vec![x, y],
                    format!(
                        "detached `{}` lies above `{}`",
                        t.label(x),
                        t.label(y)
                    ),
                )
            });
            report.push(Verdict::from_option("no_detached_over", witness));
        }
    }
    report
}

/// The raw construction formula. Total over the classification: the
/// lower branch applies the t-conorm to the meets with the zero, the
/// upper branch the t-norm to the joins, everything else is the zero.
/// The zero element itself always lands in the constant branch.
pub fn construct(t: &BoundedTrellis, spec: &ConstructionSpec) -> Result<OpTable, ConstructError> {
    if t.len() < 3 {
        return Err(ConstructError::TooSmall(t.len()));
    }
    let cls = spec.classification(t)?;
    let a = spec.zero;
    let mut lower: Vec<Elem> = cls.below.clone();
    let mut upper: Vec<Elem> = cls.above.clone();
    lower.extend(&cls.dashed_up);
    upper.extend(&cls.dashed_down);
    match spec.variant {
        ConstructionVariant::Thm31 => upper.extend(&cls.detached),
        ConstructionVariant::Thm32 => lower.extend(&cls.detached),
    }
    let table = OpTable::from_fn((0..t.len()).collect(), |x, y| {
        if lower.contains(&x) && lower.contains(&y) {
            spec.tconorm.value(t.meet(x, a), t.meet(y, a))
        } else if upper.contains(&x) && upper.contains(&y) {
            spec.tnorm.value(t.join(x, a), t.join(y, a))
        } else {
            a
        }
    })
    .expect("branch values stay inside the universe");
    Ok(table)
}

/// Validates the preconditions, builds the table and re-verifies that it
/// is a nullnorm with the requested zero.
pub fn construct_checked(
    t: &BoundedTrellis,
    spec: &ConstructionSpec,
) -> Result<OpTable, ConstructError> {
    let report = validate_preconditions(t, spec);
    if !report.all_passed() {
        return Err(ConstructError::PreconditionsFailed(report));
    }
    let table = construct(t, spec)?;
    let check = is_nullnorm(t, &table);
    assert!(
        check.is_nullnorm() && check.zeros.contains(&spec.zero),
        "validated construction must yield a nullnorm with the requested zero"
    );
    Ok(table)
}

/// The bounded-lattice specialization, written independently of the
/// trellis formula: with a transitive relation no incomparable is chained
/// to the zero, so the split degenerates and the meets/joins with the
/// zero simplify away on one side.
pub fn lattice_construct(
    t: &BoundedTrellis,
    spec: &ConstructionSpec,
) -> Result<OpTable, ConstructError> {
    if t.len() < 3 {
        return Err(ConstructError::TooSmall(t.len()));
    }
    if !t.is_lattice() {
        return Err(ConstructError::NotALattice);
    }
    let a = spec.zero;
    let n = t.len();
    let strictly_below = |x: Elem| t.lt(x, a);
    let strictly_above = |x: Elem| t.lt(a, x);
    let incomp = |x: Elem| t.psoset().incomparable(x, a);
    let table = match spec.variant {
        ConstructionVariant::Thm31 => OpTable::from_fn((0..n).collect(), |x, y| {
            if strictly_below(x) && strictly_below(y) {
                spec.tconorm.value(x, y)
            } else if (strictly_above(x) || incomp(x)) && (strictly_above(y) || incomp(y)) {
                spec.tnorm.value(t.join(x, a), t.join(y, a))
            } else {
                a
            }
        }),
        ConstructionVariant::Thm32 => OpTable::from_fn((0..n).collect(), |x, y| {
            if (strictly_below(x) || incomp(x)) && (strictly_below(y) || incomp(y)) {
                spec.tconorm.value(t.meet(x, a), t.meet(y, a))
            } else if strictly_above(x) && strictly_above(y) {
                spec.tnorm.value(x, y)
            } else {
                a
            }
        }),
    };
    Ok(table.expect("branch values stay inside the universe"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psoset::Psoset;

    fn chain3() -> BoundedTrellis {
        let p = Psoset::build(&["0", "m", "1"], &[("0", "m"), ("m", "1"), ("0", "1")]).unwrap();
        BoundedTrellis::from_psoset(p).unwrap()
    }

    fn diamond() -> BoundedTrellis {
        let p = Psoset::build(
            &["0", "p", "q", "1"],
            &[("0", "p"), ("0", "q"), ("0", "1"), ("p", "1"), ("q", "1")],
        )
        .unwrap();
        BoundedTrellis::from_psoset(p).unwrap()
    }

    #[test]
    fn drastic_on_a_two_element_interval_is_the_join() {
        let t = chain3();
        let s = drastic_tconorm(&t, 1);
        assert_eq!(s.carrier(), &[0, 1]);
        for &x in s.carrier() {
            for &y in s.carrier() {
                assert_eq!(s.value(x, y), t.join(x, y));
            }
        }
    }

    #[test]
    fn chain_construction_yields_the_midpoint_nullnorm() {
        let t = chain3();
        let spec = ConstructionSpec::with_drastic(&t, ConstructionVariant::Thm31, 1).unwrap();
        let v = construct_checked(&t, &spec).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                let expected = match (x, y) {
                    (0, 0) => 0,
                    (2, 2) => 2,
                    _ => 1,
                };
                assert_eq!(v.value(x, y), expected);
            }
        }
    }

    #[test]
    fn zero_at_a_bound_is_rejected() {
        let t = chain3();
        let err = ConstructionSpec::with_drastic(&t, ConstructionVariant::Thm31, 0).unwrap_err();
        assert!(matches!(err, ConstructError::ZeroAtBound));
    }

    #[test]
    fn two_element_trellis_is_too_small() {
        let p = Psoset::build(&["0", "1"], &[("0", "1")]).unwrap();
        let t = BoundedTrellis::from_psoset(p).unwrap();
        let err = ConstructionSpec::with_drastic(&t, ConstructionVariant::Thm31, 0).unwrap_err();
        assert!(matches!(err, ConstructError::TooSmall(2)));
    }

    #[test]
    fn trellis_formula_matches_lattice_formula_on_the_diamond() {
        let t = diamond();
        let p = t.psoset().index_of("p").unwrap();
        for variant in [ConstructionVariant::Thm31, ConstructionVariant::Thm32] {
            let spec = ConstructionSpec::with_drastic(&t, variant, p).unwrap();
            let general = construct(&t, &spec).unwrap();
            let special = lattice_construct(&t, &spec).unwrap();
            assert_eq!(general, special);
            assert!(is_nullnorm(&t, &general).is_nullnorm());
        }
    }

    #[test]
    fn diamond_preconditions_pass_for_an_atom_zero() {
        let t = diamond();
        let p = t.psoset().index_of("p").unwrap();
        let spec = ConstructionSpec::with_drastic(&t, ConstructionVariant::Thm31, p).unwrap();
        let report = validate_preconditions(&t, &spec);
        assert!(report.all_passed(), "{report}");
    }
}

//! Exhaustive search: every nullnorm on a given bounded trellis, every
//! labeled bounded trellis up to a size bound, and a harness that checks
//! the structural laws and construction equivalences over all of them.
//!
//! The nullnorm enumerator seeds only the values every nullnorm with the
//! candidate zero must have (the two boundary rows, the constant mixed
//! blocks, commutativity) and backtracks over the rest. Partial
//! assignments are pruned when an already-decided axiom instance fails;
//! every completed table is re-checked from scratch before it is
//! reported, so the pruner is never trusted for soundness.

use std::collections::HashSet;

use crate::construct::{construct, validate_preconditions, ConstructionSpec, ConstructionVariant};
use crate::optable::{check_block_structure, is_nullnorm, OpTable};
use crate::psoset::{Elem, Psoset};
use crate::report::{CheckReport, Verdict, Witness};
use crate::trellis::BoundedTrellis;

/// Bounds and switches for the searches.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Structure enumeration bound (number of elements), ≥ 1.
    pub max_elements: usize,
    /// Restrict the nullnorm search to tables with this zero element.
    pub fixed_zero: Option<Elem>,
    /// Stop after this many tables.
    pub table_limit: Option<usize>,
    /// Deduplicate enumerated structures by canonical relabeled form.
    pub dedup_canonical: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_elements: 4,
            fixed_zero: None,
            table_limit: None,
            dedup_canonical: false,
        }
    }
}

/// Aggregate outcome of the conjecture suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub checks: CheckReport,
    pub structures: usize,
    pub nullnorms: usize,
    pub construction_cases: usize,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.all_passed()
    }
}

/// All tables on the trellis that pass the full nullnorm check, in a
/// deterministic order.
pub fn enumerate_nullnorms(t: &BoundedTrellis, cfg: &SearchConfig) -> Vec<OpTable> {
    let n = t.len();
    let zeros: Vec<Elem> = match cfg.fixed_zero {
        Some(z) => vec![z],
        None => (0..n).collect(),
    };
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut out: Vec<OpTable> = Vec::new();
    for a in zeros {
        if at_limit(cfg, out.len()) {
            break;
        }
        let Some(mut cells) = seeded_cells(t, a) else {
            continue;
        };
        let free: Vec<(Elem, Elem)> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| cells[i * n + j].is_none())
            .collect();
        search(t, &mut cells, &free, 0, cfg, &mut seen, &mut out);
    }
    out
}

fn at_limit(cfg: &SearchConfig, found: usize) -> bool {
    cfg.table_limit.map(|cap| found >= cap).unwrap_or(false)
}

/// Values forced for a table with zero `a`: the boundary rows, the mixed
/// blocks, and their commuted mirrors. Returns None when the forcings
/// conflict, in which case no such nullnorm exists.
fn seeded_cells(t: &BoundedTrellis, a: Elem) -> Option<Vec<Option<Elem>>> {
    let n = t.len();
    let mut cells: Vec<Option<Elem>> = vec![None; n * n];
    let mut set = |cells: &mut Vec<Option<Elem>>, x: Elem, y: Elem, v: Elem| -> bool {
        match cells[x * n + y] {
            None => {
                cells[x * n + y] = Some(v);
                true
            }
            Some(w) => w == v,
        }
    };
    for x in 0..n {
        if t.leq(x, a) {
            if !set(&mut cells, x, t.bottom(), x) || !set(&mut cells, t.bottom(), x, x) {
                return None;
            }
        }
        if t.leq(a, x) {
            if !set(&mut cells, x, t.top(), x) || !set(&mut cells, t.top(), x, x) {
                return None;
            }
        }
    }
    for x in (0..n).filter(|&x| t.leq(x, a)) {
        for y in (0..n).filter(|&y| t.leq(a, y)) {
            if !set(&mut cells, x, y, a) || !set(&mut cells, y, x, a) {
                return None;
            }
        }
    }
    Some(cells)
}

fn search(
    t: &BoundedTrellis,
    cells: &mut Vec<Option<Elem>>,
    free: &[(Elem, Elem)],
    depth: usize,
    cfg: &SearchConfig,
    seen: &mut HashSet<Vec<Elem>>,
    out: &mut Vec<OpTable>,
) {
    if at_limit(cfg, out.len()) {
        return;
    }
    let n = t.len();
    if depth == free.len() {
        let entries: Vec<Elem> = cells.iter().map(|c| c.expect("table complete")).collect();
        let table = OpTable::new((0..n).collect(), entries).expect("entries are elements");
        if is_nullnorm(t, &table).is_nullnorm() && !seen.contains(table.entries()) {
            seen.insert(table.entries().to_vec());
            out.push(table);
        }
        return;
    }
    let (i, j) = free[depth];
    for v in 0..n {
        cells[i * n + j] = Some(v);
        cells[j * n + i] = Some(v);
        if partial_consistent(t, cells, i, j) && partial_consistent(t, cells, j, i) {
            search(t, cells, free, depth + 1, cfg, seen, out);
        }
        cells[i * n + j] = None;
        cells[j * n + i] = None;
    }
}

/// Rejects an assignment as soon as some fully-decided increasingness or
/// associativity instance touching cell (r, c) fails.
fn partial_consistent(t: &BoundedTrellis, cells: &[Option<Elem>], r: Elem, c: Elem) -> bool {
    let n = t.len();
    let get = |x: Elem, y: Elem| cells[x * n + y];
    let v = get(r, c).expect("cell under test is assigned");
    for y in 0..n {
        if !t.leq(r, y) {
            continue;
        }
        for z in 0..n {
            if t.leq(c, z) {
                if let Some(w) = get(y, z) {
                    if !t.leq(v, w) {
                        return false;
                    }
                }
            }
        }
    }
    for x in 0..n {
        if !t.leq(x, r) {
            continue;
        }
        for z in 0..n {
            if t.leq(z, c) {
                if let Some(w) = get(x, z) {
                    if !t.leq(w, v) {
                        return false;
                    }
                }
            }
        }
    }
    // associativity triples whose four lookups all resolve
    for x in 0..n {
        for y in 0..n {
            let Some(xy) = get(x, y) else { continue };
            for z in 0..n {
                let Some(yz) = get(y, z) else { continue };
                let (Some(l), Some(rr)) = (get(xy, z), get(x, yz)) else {
                    continue;
                };
                if l != rr {
                    return false;
                }
            }
        }
    }
    true
}

/// All labeled bounded trellises on at most `cfg.max_elements` elements.
///
/// The first label is designated bottom and the last top; every bounded
/// trellis is label-isomorphic to one of this shape, and the laws checked
/// over the enumeration are label-invariant. Candidate relations assign
/// one of three states to each unordered pair of middle elements, then
/// get filtered by the meet/join totality check.
pub fn enumerate_bounded_trellises(cfg: &SearchConfig) -> Vec<BoundedTrellis> {
    let mut out = Vec::new();
    let mut canon_seen: HashSet<Vec<bool>> = HashSet::new();
    for k in 1..=cfg.max_elements {
        let labels: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
        let middles: Vec<usize> = (1..k.saturating_sub(1)).collect();
        let pairs: Vec<(usize, usize)> = middles
            .iter()
            .flat_map(|&i| middles.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect();
        let combos = 3usize.pow(pairs.len() as u32);
        for code in 0..combos {
            let mut rel = vec![false; k * k];
            for i in 0..k {
                rel[i * k + i] = true;
                rel[0 * k + i] = true;
                rel[i * k + (k - 1)] = true;
            }
            let mut c = code;
            for &(i, j) in &pairs {
                match c % 3 {
                    1 => rel[i * k + j] = true,
                    2 => rel[j * k + i] = true,
                    _ => {}
                }
                c /= 3;
            }
            let Ok(psoset) = Psoset::from_relation(labels.clone(), rel.clone()) else {
                continue;
            };
            let Ok(trellis) = BoundedTrellis::from_psoset(psoset) else {
                continue;
            };
            if cfg.dedup_canonical && !canon_seen.insert(canonical_form(k, &rel)) {
                continue;
            }
            out.push(trellis);
        }
    }
    out
}

/// Lexicographically minimal flattened relation over all relabelings.
fn canonical_form(k: usize, rel: &[bool]) -> Vec<bool> {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best: Option<Vec<bool>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut image = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                image[i * k + j] = rel[p[i] * k + p[j]];
            }
        }
        if best.as_ref().map(|b| image < *b).unwrap_or(true) {
            best = Some(image);
        }
    });
    best.expect("at least the identity permutation")
}

fn permute(items: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, visit);
        items.swap(at, i);
    }
}

const SUITE_CHECKS: &[&str] = &[
    "below_with_upper_is_zero",
    "above_with_lower_is_zero",
    "dashed_up_with_upper_is_zero",
    "dashed_down_with_lower_is_zero",
    "lower_block_tconorm",
    "upper_block_tnorm",
    "mixed_blocks_constant",
    "upper_mixed_above_zero",
    "lower_mixed_below_zero",
    "upper_column_bound",
    "upper_row_bound",
    "lower_row_bound",
    "lower_column_bound",
    "lower_block_join_bound",
    "upper_block_meet_bound",
    "incomparable_join_bound",
    "incomparable_meet_bound",
    "zero_is_middle_transitive",
    "middle_transitive_bridging",
    "join_monotone_at_right_transitive",
    "meet_monotone_at_left_transitive",
    "construction_equivalence_detached_upper",
    "construction_equivalence_detached_lower",
];

struct Aggregate {
    names: Vec<&'static str>,
    first_failure: Vec<Option<Witness>>,
}

impl Aggregate {
    fn new() -> Self {
        Aggregate {
            names: SUITE_CHECKS.to_vec(),
            first_failure: vec![None; SUITE_CHECKS.len()],
        }
    }

    fn fail(&mut self, name: &str, witness: Witness) {
        let idx = self
            .names
            .iter()
            .position(|&n| n == name)
            .unwrap_or_else(|| panic!("unknown suite check `{name}`"));
        if self.first_failure[idx].is_none() {
            self.first_failure[idx] = Some(witness);
        }
    }

    fn into_report(self) -> CheckReport {
        let mut report = CheckReport::new();
        for (name, failure) in self.names.into_iter().zip(self.first_failure) {
            report.push(Verdict::from_option(name, failure));
        }
        report
    }
}

/// Checks every structural law on every nullnorm of every enumerated
/// bounded trellis, and the construction equivalences wherever the
/// transitivity preconditions hold with the drastic generators.
pub fn run_conjecture_suite(cfg: &SearchConfig) -> SuiteReport {
    run_conjecture_suite_with_fault(cfg, None)
}

/// Self-test hook: `drop_middle_transitive` pretends the element with
/// that index is not middle-transitive, which must surface as a reported
/// counterexample on any structure where it is a nullnorm zero.
pub fn run_conjecture_suite_with_fault(
    cfg: &SearchConfig,
    drop_middle_transitive: Option<Elem>,
) -> SuiteReport {
    let mut agg = Aggregate::new();
    let mut structures = 0;
    let mut nullnorms = 0;
    let mut construction_cases = 0;
    let inner_cfg = SearchConfig {
        max_elements: cfg.max_elements,
        fixed_zero: None,
        table_limit: None,
        dedup_canonical: false,
    };
    for (idx, t) in enumerate_bounded_trellises(cfg).into_iter().enumerate() {
        structures += 1;
        let tag = |inner: &str| format!("structure {idx} ({}): {inner}", t.psoset());
        check_bridging(&t, idx, &mut agg);
        check_bound_monotonicity(&t, idx, &mut agg);
        for table in enumerate_nullnorms(&t, &inner_cfg) {
            nullnorms += 1;
            let check = is_nullnorm(&t, &table);
            for &zero in &check.zeros {
                let blocks =
                    check_block_structure(&t, &table, zero).expect("table re-checked as nullnorm");
                for v in blocks.failures() {
                    let w = v.witness.clone().unwrap_or_else(|| Witness::new(vec![], String::new()));
                    agg.fail(&v.name, Witness::new(w.elements, tag(&w.note)));
                }
                let mtr = t.psoset().is_middle_transitive(zero)
                    && drop_middle_transitive != Some(zero);
                if !mtr {
                    agg.fail(
                        "zero_is_middle_transitive",
                        Witness::new(
                            vec![zero],
                            tag(&format!("zero `{}` is not middle-transitive", t.label(zero))),
                        ),
                    );
                }
            }
        }
        construction_cases += check_equivalences(&t, idx, &mut agg);
    }
    SuiteReport {
        checks: agg.into_report(),
        structures,
        nullnorms,
        construction_cases,
    }
}

/// For a middle-transitive element m, everything below it relates to
/// everything above it.
fn check_bridging(t: &BoundedTrellis, idx: usize, agg: &mut Aggregate) {
    let p = t.psoset();
    let n = t.len();
    for m in 0..n {
        if !p.is_middle_transitive(m) {
            continue;
        }
        for x in (0..n).filter(|&x| t.leq(x, m)) {
            for y in (0..n).filter(|&y| t.leq(m, y)) {
                if !t.leq(x, y) {
                    agg.fail(
                        "middle_transitive_bridging",
                        Witness::new(
                            vec![m, x, y],
                            format!(
                                "structure {idx} ({p}): {} ⊴ {} ⊴ {} but {} ⋬ {}",
                                p.label(x),
                                p.label(m),
                                p.label(y),
                                p.label(x),
                                p.label(y)
                            ),
                        ),
                    );
                }
            }
        }
    }
}

/// Joins grow along relations out of right-transitive elements; dually
/// for meets into left-transitive ones.
fn check_bound_monotonicity(t: &BoundedTrellis, idx: usize, agg: &mut Aggregate) {
    let p = t.psoset();
    let n = t.len();
    for a in 0..n {
        if p.is_right_transitive(a) {
            for x in (0..n).filter(|&x| t.leq(a, x)) {
                for y in 0..n {
                    if !t.leq(t.join(a, y), t.join(x, y)) {
                        agg.fail(
                            "join_monotone_at_right_transitive",
                            Witness::new(
                                vec![a, x, y],
                                format!(
                                    "structure {idx} ({p}): {} ⊴ {} but ({}∨{}) ⋬ ({}∨{})",
                                    p.label(a),
                                    p.label(x),
                                    p.label(a),
                                    p.label(y),
                                    p.label(x),
                                    p.label(y)
                                ),
                            ),
                        );
                    }
                }
            }
        }
        if p.is_left_transitive(a) {
            for x in (0..n).filter(|&x| t.leq(x, a)) {
                for y in 0..n {
                    if !t.leq(t.meet(x, y), t.meet(a, y)) {
                        agg.fail(
                            "meet_monotone_at_left_transitive",
                            Witness::new(
                                vec![a, x, y],
                                format!(
                                    "structure {idx} ({p}): {} ⊴ {} but ({}∧{}) ⋬ ({}∧{})",
                                    p.label(x),
                                    p.label(a),
                                    p.label(x),
                                    p.label(y),
                                    p.label(a),
                                    p.label(y)
                                ),
                            ),
                        );
                    }
                }
            }
        }
    }
}

/// Wherever the structural preconditions hold with drastic generators,
/// the raw construction must be a nullnorm exactly when the variant's
/// emptiness condition holds.
fn check_equivalences(t: &BoundedTrellis, idx: usize, agg: &mut Aggregate) -> usize {
    if t.len() < 3 {
        return 0;
    }
    let mut cases = 0;
    for a in 0..t.len() {
        if a == t.bottom() || a == t.top() {
            continue;
        }
        for variant in [ConstructionVariant::Thm31, ConstructionVariant::Thm32] {
            let Ok(spec) = ConstructionSpec::with_drastic(t, variant, a) else {
                continue;
            };
            let report = validate_preconditions(t, &spec);
            let structural_ok = ["zero_in_kernel", "lower_side_left_transitive", "upper_side_right_transitive"]
                .iter()
                .all(|name| report.verdict(name).map(|v| v.passed).unwrap_or(false));
            if !structural_ok {
                continue;
            }
            cases += 1;
            let empty_name = match variant {
                ConstructionVariant::Thm31 => "no_detached_under",
                ConstructionVariant::Thm32 => "no_detached_over",
            };
            let condition_holds = report
                .verdict(empty_name)
                .map(|v| v.passed)
                .expect("emptiness verdict present");
            let Ok(table) = construct(t, &spec) else {
                continue;
            };
            let check = is_nullnorm(t, &table);
            let built_ok = check.is_nullnorm() && check.zeros.contains(&a);
            if built_ok != condition_holds {
                let name = match variant {
                    ConstructionVariant::Thm31 => "construction_equivalence_detached_upper",
                    ConstructionVariant::Thm32 => "construction_equivalence_detached_lower",
                };
                agg.fail(
                    name,
                    Witness::new(
                        vec![a],
                        format!(
                            "structure {idx} ({}): zero `{}`: construction nullnorm = {}, emptiness condition = {}",
                            t.psoset(),
                            t.label(a),
                            built_ok,
                            condition_holds
                        ),
                    ),
                );
            }
        }
    }
    cases
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> BoundedTrellis {
        let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let mut rel = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                rel[i * n + j] = true;
            }
        }
        BoundedTrellis::from_psoset(Psoset::from_relation(labels, rel).unwrap()).unwrap()
    }

    #[test]
    fn two_chain_has_exactly_the_meet_and_join_nullnorms() {
        let t = chain(2);
        let found = enumerate_nullnorms(&t, &SearchConfig::default());
        assert_eq!(found.len(), 2);
        assert!(found.contains(&OpTable::meet_table(&t)));
        assert!(found.contains(&OpTable::join_table(&t)));
        // they differ exactly at V(0, 1)
        assert_ne!(found[0].value(0, 1), found[1].value(0, 1));
    }

    #[test]
    fn three_chain_has_five_nullnorms() {
        let t = chain(3);
        let found = enumerate_nullnorms(&t, &SearchConfig::default());
        assert_eq!(found.len(), 5);
        let mut by_zero = [0usize; 3];
        for v in &found {
            for z in is_nullnorm(&t, v).zeros {
                by_zero[z] += 1;
            }
        }
        assert_eq!(by_zero, [2, 1, 2]);
    }

    #[test]
    fn fixing_the_zero_never_finds_more() {
        let t = chain(3);
        let all = enumerate_nullnorms(&t, &SearchConfig::default());
        for z in 0..3 {
            let fixed = enumerate_nullnorms(
                &t,
                &SearchConfig {
                    fixed_zero: Some(z),
                    ..SearchConfig::default()
                },
            );
            assert!(fixed.len() <= all.len());
            for v in &fixed {
                assert!(all.contains(v));
            }
        }
    }

    #[test]
    fn table_limit_caps_the_result() {
        let t = chain(3);
        let capped = enumerate_nullnorms(
            &t,
            &SearchConfig {
                table_limit: Some(2),
                ..SearchConfig::default()
            },
        );
        assert_eq!(capped.len(), 2);
    }

    #[test]
    fn exactly_one_three_element_structure_exists() {
        let cfg = SearchConfig {
            max_elements: 3,
            ..SearchConfig::default()
        };
        let all = enumerate_bounded_trellises(&cfg);
        let of_three: Vec<_> = all.iter().filter(|t| t.len() == 3).collect();
        assert_eq!(of_three.len(), 1);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let cfg = SearchConfig {
            max_elements: 4,
            ..SearchConfig::default()
        };
        let a: Vec<Vec<bool>> = enumerate_bounded_trellises(&cfg)
            .iter()
            .map(|t| {
                (0..t.len() * t.len())
                    .map(|i| t.leq(i / t.len(), i % t.len()))
                    .collect()
            })
            .collect();
        let b: Vec<Vec<bool>> = enumerate_bounded_trellises(&cfg)
            .iter()
            .map(|t| {
                (0..t.len() * t.len())
                    .map(|i| t.leq(i / t.len(), i % t.len()))
                    .collect()
            })
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn suite_passes_at_three_elements_with_enough_instances() {
        let cfg = SearchConfig {
            max_elements: 3,
            ..SearchConfig::default()
        };
        let report = run_conjecture_suite(&cfg);
        assert!(report.all_passed(), "{}", report.checks);
        assert!(report.nullnorms >= 5, "saw {} nullnorms", report.nullnorms);
    }

    #[test]
    fn dropping_an_elements_middle_transitivity_is_caught() {
        let cfg = SearchConfig {
            max_elements: 3,
            ..SearchConfig::default()
        };
        // e1 is the midpoint zero of one nullnorm on the 3-chain
        let report = run_conjecture_suite_with_fault(&cfg, Some(1));
        let verdict = report.checks.verdict("zero_is_middle_transitive").unwrap();
        assert!(!verdict.passed);
        assert!(verdict.witness.is_some());
    }
}

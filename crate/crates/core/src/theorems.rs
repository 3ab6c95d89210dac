//! Checks of the breadth inequalities and equalities on a concrete diagram,
//! and the breadth-based non-alternation criterion for links.

use std::fmt;

use serde::Serialize;

use crate::analysis::{self, DiagramProfile};
use crate::diagram::AnnularDiagram;
use crate::laurent::LaurentPoly;
use crate::skein::{self, SkeinError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    /// The bracket of a link with odd total winding is zero.
    Vanishing,
    /// `B <= 2(n + s+ + s-)`, with equality for adequate diagrams.
    BreadthUpperBound,
    /// `s+ + s- <= n + 2` in a disk, `<= n` otherwise (connected diagrams).
    StateCountBound,
    /// Equality in the state-count bound for alternating diagrams.
    AlternatingStateCount,
    /// `B <= 4n + 4` / `4n`; equal to `4n + 4` / `4n - 4k` for alternating
    /// diagrams without nugatory crossings.
    BreadthFormula,
    /// Simple alternating diagrams are adequate.
    AdequacyOfSimple,
    /// `p(s+)`, `p(s-)` and the homology class agree mod 2.
    NontrivialParity,
    /// Circles of the two constant states of an alternating diagram equal
    /// the number of faces.
    RegionCount,
    /// Plain and Gray-code evaluators agree.
    EvaluatorAgreement,
    /// The non-alternation criterion does not fire on a diagram that is
    /// alternating, connected and simple.
    NonalternatingCriterion,
}

impl CheckId {
    pub const ALL: [CheckId; 10] = [
        CheckId::Vanishing,
        CheckId::BreadthUpperBound,
        CheckId::StateCountBound,
        CheckId::AlternatingStateCount,
        CheckId::BreadthFormula,
        CheckId::AdequacyOfSimple,
        CheckId::NontrivialParity,
        CheckId::RegionCount,
        CheckId::EvaluatorAgreement,
        CheckId::NonalternatingCriterion,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Vanishing => "vanishing",
            CheckId::BreadthUpperBound => "breadth_upper_bound",
            CheckId::StateCountBound => "state_count_bound",
            CheckId::AlternatingStateCount => "alternating_state_count",
            CheckId::BreadthFormula => "breadth_formula",
            CheckId::AdequacyOfSimple => "adequacy_of_simple",
            CheckId::NontrivialParity => "nontrivial_parity",
            CheckId::RegionCount => "region_count",
            CheckId::EvaluatorAgreement => "evaluator_agreement",
            CheckId::NonalternatingCriterion => "nonalternating_criterion",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesesNotMet,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HypothesesNotMet => "hypotheses-not-met",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: CheckId,
    /// Predicate values the hypotheses were evaluated on.
    pub hypotheses: Vec<(String, bool)>,
    /// Compared quantities, e.g. `("breadth", "16")`.
    pub quantities: Vec<(String, String)>,
    /// The relation that was asserted, or why nothing was asserted.
    pub claim: String,
    pub verdict: Verdict,
}

impl CheckRecord {
    fn new(id: CheckId) -> Self {
        Self { id, hypotheses: Vec::new(), quantities: Vec::new(), claim: String::new(), verdict: Verdict::Pass }
    }

    fn hyp(mut self, name: &str, value: bool) -> Self {
        self.hypotheses.push((name.to_string(), value));
        self
    }

    fn qty(mut self, name: &str, value: impl ToString) -> Self {
        self.quantities.push((name.to_string(), value.to_string()));
        self
    }

    /// Decides the verdict: not met unless every listed hypothesis holds.
    fn decide(mut self, claim: impl Into<String>, holds: impl FnOnce() -> bool) -> Self {
        if self.hypotheses.iter().all(|(_, v)| *v) {
            self.claim = claim.into();
            self.verdict = if holds() { Verdict::Pass } else { Verdict::Fail };
        } else {
            self.claim = "not asserted".into();
            self.verdict = Verdict::HypothesesNotMet;
        }
        self
    }
}

/// Properties of the link that the diagram cannot decide; carried verbatim
/// into reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LinkAssertions {
    /// Not separated by a trivial sphere or a Heegaard torus.
    pub non_h_split: bool,
    pub not_in_3ball: bool,
    /// Does not meet some non-separating sphere in exactly two points.
    pub no_double_sphere_intersection: bool,
}

impl LinkAssertions {
    pub fn describe(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.non_h_split {
            out.push("link asserted non H-split".to_string());
        }
        if self.not_in_3ball {
            out.push("link asserted not contained in a 3-ball".to_string());
        }
        if self.no_double_sphere_intersection {
            out.push("link asserted not to meet a non-separating sphere twice".to_string());
        }
        out
    }
}

/// Everything computed once per diagram and shared by the checks.
#[derive(Clone, Debug, Serialize)]
pub struct Computed {
    pub profile: DiagramProfile,
    pub bracket: LaurentPoly,
    pub bracket_gray: LaurentPoly,
}

impl Computed {
    pub fn new(d: &AnnularDiagram, threads: usize) -> Result<Self, SkeinError> {
        Ok(Self {
            profile: analysis::profile(d)?,
            bracket: skein::bracket_with_threads(d, threads)?,
            bracket_gray: skein::bracket_gray_with_threads(d, threads)?,
        })
    }

    fn breadth(&self) -> u64 {
        self.bracket.breadth()
    }
}

pub fn check_vanishing(c: &Computed) -> CheckRecord {
    CheckRecord::new(CheckId::Vanishing)
        .hyp("z2_nontrivial", c.profile.z2_class)
        .qty("bracket", &c.bracket)
        .decide("bracket = 0", || c.bracket.is_zero())
}

pub fn check_breadth_upper(c: &Computed) -> CheckRecord {
    let p = &c.profile;
    let rhs = 2 * (p.crossings + p.s_plus + p.s_minus) as u64;
    let b = c.breadth();
    let adequate = p.adequate();
    CheckRecord::new(CheckId::BreadthUpperBound)
        .hyp("z2_trivial", !p.z2_class)
        .qty("breadth", b)
        .qty("2(n+s_plus+s_minus)", rhs)
        .qty("adequate", adequate)
        .decide(if adequate { "breadth = 2(n+s_plus+s_minus)" } else { "breadth <= 2(n+s_plus+s_minus)" }, || {
            if adequate {
                b == rhs
            } else {
                b <= rhs
            }
        })
}

fn state_bound(p: &DiagramProfile) -> usize {
    if p.in_disk {
        p.crossings + 2
    } else {
        p.crossings
    }
}

pub fn check_state_count_bound(c: &Computed) -> CheckRecord {
    let p = &c.profile;
    let sum = p.s_plus + p.s_minus;
    let bound = state_bound(p);
    CheckRecord::new(CheckId::StateCountBound)
        .hyp("connected", p.connected)
        .hyp("z2_trivial", !p.z2_class)
        .qty("s_plus+s_minus", sum)
        .qty(if p.in_disk { "n+2" } else { "n" }, bound)
        .decide("s_plus+s_minus <= bound", || sum <= bound)
}

pub fn check_alternating_equality(c: &Computed) -> CheckRecord {
    let p = &c.profile;
    let sum = p.s_plus + p.s_minus;
    let bound = state_bound(p);
    CheckRecord::new(CheckId::AlternatingStateCount)
        .hyp("connected", p.connected)
        .hyp("alternating", p.alternating)
        .hyp("z2_trivial", !p.z2_class)
        .qty("s_plus+s_minus", sum)
        .qty(if p.in_disk { "n+2" } else { "n" }, bound)
        .decide("s_plus+s_minus = bound", || sum == bound)
}

pub fn check_breadth_theorem(c: &Computed) -> CheckRecord {
    let p = &c.profile;
    let n = p.crossings as i64;
    let b = c.breadth() as i64;
    let upper = if p.in_disk { 4 * n + 4 } else { 4 * n };
    let rec = CheckRecord::new(CheckId::BreadthFormula)
        .hyp("connected", p.connected)
        .hyp("z2_trivial", !p.z2_class)
        .qty("breadth", b)
        .qty("upper", upper);
    let exact = p.alternating && p.nugatory == Some(0);
    if !exact {
        return rec.decide("breadth <= upper", || b <= upper);
    }
    let k = p.external_adjacent.unwrap_or(0) as i64;
    let expected = if p.in_disk { 4 * n + 4 } else { 4 * n - 4 * k };
    rec.qty("k", k)
        .qty("expected", expected)
        .decide(if p.in_disk { "breadth = 4n+4" } else { "breadth = 4n-4k" }, || b <= upper && b == expected)
}

pub fn check_adequacy_of_simple(c: &Computed) -> CheckRecord {
    let p = &c.profile;
    CheckRecord::new(CheckId::AdequacyOfSimple)
        .hyp("simple", p.simple == Some(true))
        .hyp("alternating", p.alternating)
        .hyp("connected", p.connected)
        .hyp("z2_trivial", !p.z2_class)
        .qty("plus_adequate", p.plus_adequate)
        .qty("minus_adequate", p.minus_adequate)
        .decide("plus- and minus-adequate", || p.adequate())
}

pub fn check_nontrivial_parity(c: &Computed) -> CheckRecord {
    let p = &c.profile;
    let z = p.z2_class as usize;
    let split_annular = p.connected && p.alternating && !p.z2_class && !p.in_disk && p.crossings > 0;
    let mut rec = CheckRecord::new(CheckId::NontrivialParity)
        .qty("p_plus", p.p_plus)
        .qty("p_minus", p.p_minus)
        .qty("z2_class", z);
    if split_annular {
        rec = rec.qty("connected_alternating_annular", true);
    }
    rec.decide(
        if split_annular {
            "p_plus = p_minus = z2 mod 2, {p_plus, p_minus} = {0, 2}"
        } else {
            "p_plus = p_minus = z2 mod 2"
        },
        || {
            let parity = p.p_plus % 2 == z && p.p_minus % 2 == z;
            let pair = !split_annular || (p.p_plus.min(p.p_minus) == 0 && p.p_plus.max(p.p_minus) == 2);
            parity && pair
        },
    )
}

pub fn check_region_count(c: &Computed) -> CheckRecord {
    let p = &c.profile;
    let circles = p.s_plus + p.p_plus + p.s_minus + p.p_minus;
    CheckRecord::new(CheckId::RegionCount)
        .hyp("connected", p.connected)
        .hyp("alternating", p.alternating)
        .hyp("has_crossings", p.crossings > 0)
        .qty("constant_state_circles", circles)
        .qty("faces", p.faces)
        .decide("circles = faces", || circles == p.faces)
}

pub fn check_evaluator_agreement(c: &Computed) -> CheckRecord {
    CheckRecord::new(CheckId::EvaluatorAgreement)
        .qty("bracket", &c.bracket)
        .qty("bracket_gray", &c.bracket_gray)
        .decide("bracket = bracket_gray", || c.bracket == c.bracket_gray)
}

pub fn check_nonalternating_consistency(c: &Computed) -> CheckRecord {
    let p = &c.profile;
    let rec = CheckRecord::new(CheckId::NonalternatingCriterion)
        .hyp("alternating", p.alternating)
        .hyp("connected", p.connected)
        .hyp("simple", p.simple == Some(true))
        .hyp("z2_trivial", !p.z2_class)
        .hyp("has_crossings", p.crossings > 0);
    let flags = LinkAssertions { non_h_split: true, not_in_3ball: !p.in_disk, no_double_sphere_intersection: true };
    let fired = classify_nonalternating(&c.bracket, p.crossings, flags, p.in_disk, true)
        .map(|v| v.fired.iter().map(|f| f.case.as_str()).collect::<Vec<_>>())
        .unwrap_or_default();
    let listed = if fired.is_empty() { "-".to_string() } else { fired.join(",") };
    rec.qty("fired_cases", listed).decide("no case fires", || fired.is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionCase {
    /// Breadth is not a positive multiple of 4.
    BreadthNotPositiveMultipleOf4,
    /// In a 3-ball with breadth below `4n + 4`.
    BallBreadthBelow,
    /// Not in a 3-ball, no double sphere intersection, breadth below `4n`.
    AnnularBreadthBelow,
}

impl CriterionCase {
    pub fn as_str(self) -> &'static str {
        match self {
            CriterionCase::BreadthNotPositiveMultipleOf4 => "breadth-not-positive-multiple-of-4",
            CriterionCase::BallBreadthBelow => "ball-breadth-below",
            CriterionCase::AnnularBreadthBelow => "annular-breadth-below",
        }
    }
}

impl fmt::Display for CriterionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiredCase {
    pub case: CriterionCase,
    pub conclusion: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonalternatingVerdict {
    pub breadth: u64,
    pub n_claim: usize,
    pub hypotheses_met: bool,
    pub assumptions: Vec<String>,
    pub fired: Vec<FiredCase>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("contradictory assertions: the link cannot be both inside and outside a 3-ball")]
pub struct ContradictoryAssertions;

/// Applies the breadth criterion for non-alternation to a link with the
/// given bracket. The criterion needs a non H-split, Z/2-trivial link; when
/// either fails nothing fires. Conclusions are disjunctions and are reported
/// as such.
pub fn classify_nonalternating(
    bracket: &LaurentPoly,
    n_claim: usize,
    flags: LinkAssertions,
    in_3ball: bool,
    z2_trivial: bool,
) -> Result<NonalternatingVerdict, ContradictoryAssertions> {
    if in_3ball && flags.not_in_3ball {
        return Err(ContradictoryAssertions);
    }
    let b = bracket.breadth();
    let n = n_claim as u64;
    let mut assumptions = flags.describe();
    if in_3ball {
        assumptions.push("link asserted contained in a 3-ball".to_string());
    }
    if z2_trivial {
        assumptions.push("link Z/2-homologically trivial".to_string());
    }
    let hypotheses_met = flags.non_h_split && z2_trivial;
    let mut fired = Vec::new();
    if hypotheses_met {
        if b == 0 || !b.is_multiple_of(4) {
            fired.push(FiredCase {
                case: CriterionCase::BreadthNotPositiveMultipleOf4,
                conclusion: "the link is not alternating, or it is the knot with crossing number 1".into(),
            });
        }
        if in_3ball && b < 4 * n + 4 {
            fired.push(FiredCase {
                case: CriterionCase::BallBreadthBelow,
                conclusion: format!("the link is not alternating, or its crossing number is lower than {n}"),
            });
        }
        if flags.not_in_3ball && flags.no_double_sphere_intersection && b < 4 * n {
            fired.push(FiredCase {
                case: CriterionCase::AnnularBreadthBelow,
                conclusion: format!("the link is not alternating, or its crossing number is lower than {n}"),
            });
        }
    }
    Ok(NonalternatingVerdict { breadth: b, n_claim, hypotheses_met, assumptions, fired })
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub assumptions: Vec<String>,
    pub profile: DiagramProfile,
    pub bracket: LaurentPoly,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    /// A check whose hypotheses held and whose claim was false.
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn check(&self, id: CheckId) -> &CheckRecord {
        self.checks.iter().find(|c| c.id == id).expect("every check is recorded")
    }
}

pub fn run_checks(c: &Computed) -> Vec<CheckRecord> {
    vec![
        check_vanishing(c),
        check_breadth_upper(c),
        check_state_count_bound(c),
        check_alternating_equality(c),
        check_breadth_theorem(c),
        check_adequacy_of_simple(c),
        check_nontrivial_parity(c),
        check_region_count(c),
        check_evaluator_agreement(c),
        check_nonalternating_consistency(c),
    ]
}

/// Runs every check on one diagram.
pub fn verify_all(d: &AnnularDiagram, flags: LinkAssertions, threads: usize) -> Result<VerificationReport, SkeinError> {
    let computed = Computed::new(d, threads)?;
    let checks = run_checks(&computed);
    Ok(VerificationReport {
        name: d.meta.name.clone().unwrap_or_else(|| "unnamed".into()),
        assumptions: flags.describe(),
        profile: computed.profile,
        bracket: computed.bracket,
        checks,
    })
}

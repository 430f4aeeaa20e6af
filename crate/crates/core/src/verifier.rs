//! Empirical verification of the quasi-Frobenius equivalences and the
//! supporting structural facts, over single tables and whole corpora.
//!
//! The equivalence of the four conditions is only asserted for members that
//! have an identity and a nilpotent unit complement ("in hypothesis"). Other
//! 0-cancellative tables are still verified and their oddities are reported
//! as out-of-hypothesis anomalies.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    brute_force_algebra_qf, check_annihilator_correspondence, contracted_algebra,
    frobenius_parastrophic, frobenius_via_socle, BruteQf, FieldSpec, ParastrophicMode,
    ParastrophicVerdict, SocleVerdict, DEFAULT_BRUTE_DIM_CAP,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::ideals::{
    has_least_nonzero_ideal, has_least_nonzero_two_sided_ideal, is_quasi_frobenius,
    LeastIdealVerdict, QfWitness, DEFAULT_IDEAL_CAP,
};
use crate::modifications::{
    catalog, coset_parameters, coset_table, enumerate_modifications, modification_coset,
    modification_h_block, GroupTable, DEFAULT_BUDGET,
};
use crate::semigroup::{CayleyTable, ElementSet, Side};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_RANDOM_SUBSETS: usize = 100;
pub const DEFAULT_PARASTROPHIC_DIM_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub fields: Vec<FieldSpec>,
    pub qf_dim_cap: usize,
    /// Exhaustive GF(2) functional search runs up to this dimension.
    pub parastrophic_dim_cap: usize,
    pub ideal_cap: usize,
    pub seed: u64,
    pub random_subsets: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            fields: FieldSpec::defaults(),
            qf_dim_cap: DEFAULT_BRUTE_DIM_CAP,
            parastrophic_dim_cap: DEFAULT_PARASTROPHIC_DIM_CAP,
            ideal_cap: DEFAULT_IDEAL_CAP,
            seed: DEFAULT_SEED,
            random_subsets: DEFAULT_RANDOM_SUBSETS,
        }
    }
}

pub const QF_WITHOUT_IDENTITY: &str = "out-of-hypothesis: QF without identity";
pub const NOT_NILPOTENT: &str = "out-of-hypothesis: unit complement not nilpotent";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub name: String,
    pub in_hypothesis: bool,
    pub identity: Option<usize>,
    /// Semigroup quasi-Frobenius.
    pub cond_i: bool,
    pub qf_witness: QfWitness,
    /// Identity present and `M(S)` the least nonzero left and right ideal.
    pub cond_ii: bool,
    pub least_ideal: LeastIdealVerdict,
    /// `M(S)` the least nonzero two-sided ideal; reported, not compared.
    pub least_two_sided: bool,
    /// Frobenius through the socle functional, per field.
    pub cond_iii: BTreeMap<String, bool>,
    pub socle_witness: BTreeMap<String, Option<usize>>,
    pub cond_iii_skipped: Option<String>,
    /// GF(2) algebra quasi-Frobenius by subspace enumeration.
    pub cond_iv: Option<bool>,
    pub brute_qf: Option<BruteQf>,
    pub parastrophic: Option<ParastrophicVerdict>,
    pub anomalies: Vec<String>,
}

fn require_zero_cancellative(table: &CayleyTable) -> Result<()> {
    match table.zero_cancellation_witness() {
        Some(w) => Err(Error::NotZeroCancellative {
            a: w.a,
            b: w.b,
            c: w.c,
        }),
        None => Ok(()),
    }
}

fn member_name(table: &CayleyTable) -> String {
    table.name().unwrap_or("unnamed").to_string()
}

/// `M = Ha ∪ 0 = aH ∪ 0`.
fn socle_is_coset(table: &CayleyTable, socle: &ElementSet, units: &ElementSet, a: usize) -> bool {
    let zero = ElementSet::zero(table.order());
    *socle == table.left_translate(units, a).union(&zero)
        && *socle == table.right_translate(a, units).union(&zero)
}

pub fn verify_equivalence(table: &CayleyTable, config: &VerifyConfig) -> Result<EquivalenceReport> {
    require_zero_cancellative(table)?;
    let structure = table.structure();
    let in_hypothesis = structure.is_elementary();

    let qf_witness = is_quasi_frobenius(table, config.ideal_cap)?;
    let least_ideal = has_least_nonzero_ideal(table);

    let mut cond_iii = BTreeMap::new();
    let mut socle_witness = BTreeMap::new();
    let mut cond_iii_skipped = None;
    for &field in &config.fields {
        match frobenius_via_socle(table, field) {
            Ok(SocleVerdict { frobenius, witness }) => {
                cond_iii.insert(field.to_string(), frobenius);
                socle_witness.insert(field.to_string(), witness);
            }
            Err(e @ (Error::NoIdentity | Error::NotElementary)) => {
                cond_iii_skipped = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e),
        }
    }

    let algebra = contracted_algebra(table);
    let brute_qf = if algebra.dim() <= config.qf_dim_cap {
        Some(brute_force_algebra_qf(&algebra, config.qf_dim_cap)?)
    } else {
        None
    };
    let parastrophic = if algebra.dim() <= config.parastrophic_dim_cap {
        Some(frobenius_parastrophic(
            table,
            FieldSpec::GF2,
            ParastrophicMode::Exhaustive,
        )?)
    } else {
        None
    };

    let mut report = EquivalenceReport {
        name: member_name(table),
        in_hypothesis,
        identity: structure.identity,
        cond_i: qf_witness.verdict,
        qf_witness,
        cond_ii: least_ideal.holds,
        least_ideal,
        least_two_sided: has_least_nonzero_two_sided_ideal(table).holds,
        cond_iii,
        socle_witness,
        cond_iii_skipped,
        cond_iv: brute_qf.as_ref().map(|b| b.verdict),
        brute_qf,
        parastrophic,
        anomalies: Vec::new(),
    };

    if !in_hypothesis {
        if report.cond_i && structure.identity.is_none() {
            report.anomalies.push(QF_WITHOUT_IDENTITY.to_string());
        }
        if structure.nilpotency_index.is_none() {
            report.anomalies.push(NOT_NILPOTENT.to_string());
        }
        return Ok(report);
    }

    let mut verdicts: Vec<(String, bool)> =
        vec![("i".into(), report.cond_i), ("ii".into(), report.cond_ii)];
    verdicts.extend(
        report
            .cond_iii
            .iter()
            .map(|(f, &v)| (format!("iii[{f}]"), v)),
    );
    if let Some(v) = report.cond_iv {
        verdicts.push(("iv".into(), v));
    }
    if let Some(p) = &report.parastrophic {
        verdicts.push(("parastrophic[gf2]".into(), p.is_frobenius()));
    }
    if verdicts.iter().any(|(_, v)| *v != report.cond_i) {
        let listing: Vec<String> = verdicts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        report
            .anomalies
            .push(format!("conditions disagree: {}", listing.join(" ")));
    }
    if report.cond_i {
        let socle = structure.socle.as_ref().expect("in hypothesis");
        for (field, witness) in &report.socle_witness {
            if let Some(a) = witness {
                if !socle_is_coset(table, socle, &structure.units, *a) {
                    report.anomalies.push(format!(
                        "socle witness {a} over {field} is not a single coset"
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum LemmaStatus {
    Holds,
    Fails {
        detail: String,
        elements: Vec<usize>,
    },
    NotApplicable {
        reason: String,
    },
}

impl LemmaStatus {
    pub fn failed(&self) -> bool {
        matches!(self, LemmaStatus::Fails { .. })
    }

    fn fails(detail: impl Into<String>, elements: Vec<usize>) -> Self {
        LemmaStatus::Fails {
            detail: detail.into(),
            elements,
        }
    }

    fn not_applicable(reason: &str) -> Self {
        LemmaStatus::NotApplicable {
            reason: reason.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub name: String,
    /// `N = S \ H` is a nilpotent two-sided ideal.
    pub nilpotent_complement: LemmaStatus,
    /// Quasi-Frobenius forces an identity.
    pub qf_has_identity: LemmaStatus,
    /// Quasi-Frobenius forces `M = Ha ∪ 0 = aH ∪ 0` for all `a ∈ M \ 0`.
    pub socle_single_coset: LemmaStatus,
    /// Quasi-Frobenius makes `xb = a` and `bx = a` uniquely solvable for
    /// `a ∈ M \ 0`, `b ≠ 0`.
    pub socle_division: LemmaStatus,
    /// `l(F_0 A) = F_0 l(A)` and `r(F_0 A) = F_0 r(A)` on sampled subsets.
    pub annihilator_correspondence: LemmaStatus,
    pub subsets_checked: usize,
}

impl LemmaReport {
    pub fn statuses(&self) -> [(&'static str, &LemmaStatus); 5] {
        [
            ("nilpotent_complement", &self.nilpotent_complement),
            ("qf_has_identity", &self.qf_has_identity),
            ("socle_single_coset", &self.socle_single_coset),
            ("socle_division", &self.socle_division),
            (
                "annihilator_correspondence",
                &self.annihilator_correspondence,
            ),
        ]
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

/// All singletons, then `count` random nonempty subsets drawn from a stream
/// seeded by `seed` and the table name.
pub fn sample_subsets(table: &CayleyTable, seed: u64, count: usize) -> Vec<ElementSet> {
    let n = table.order();
    let mut out: Vec<ElementSet> = (0..n).map(|x| ElementSet::from_elements(n, [x])).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(member_name(table).as_bytes()));
    while out.len() < n + count {
        let set = ElementSet::from_elements(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        if !set.is_empty() {
            out.push(set);
        }
    }
    out
}

fn check_nilpotent_complement(table: &CayleyTable) -> LemmaStatus {
    let structure = table.structure();
    let complement = &structure.complement;
    for x in complement.iter() {
        for s in table.elements() {
            if !complement.contains(table.mul(x, s)) || !complement.contains(table.mul(s, x)) {
                return LemmaStatus::fails("complement is not a two-sided ideal", vec![x, s]);
            }
        }
    }
    if structure.nilpotency_index.is_some() {
        return LemmaStatus::Holds;
    }
    // a non-nil element of N witnesses the failure
    let non_nil = complement.nonzero().find(|&x| {
        let mut power = x;
        (0..table.order()).all(|_| {
            power = table.mul(power, x);
            power != 0
        })
    });
    LemmaStatus::fails(
        "complement is not nilpotent; the witness has no vanishing power",
        non_nil.into_iter().collect(),
    )
}

pub fn verify_lemmas(table: &CayleyTable, config: &VerifyConfig) -> Result<LemmaReport> {
    require_zero_cancellative(table)?;
    let structure = table.structure();
    let qf = is_quasi_frobenius(table, config.ideal_cap)?.verdict;

    let nilpotent_complement = check_nilpotent_complement(table);

    let qf_has_identity = match (qf, structure.identity) {
        (false, _) => LemmaStatus::not_applicable("not quasi-Frobenius"),
        (true, Some(_)) => LemmaStatus::Holds,
        (true, None) => LemmaStatus::fails("quasi-Frobenius without identity", vec![]),
    };

    let socle = structure
        .socle
        .as_ref()
        .filter(|_| structure.identity.is_some());
    let (socle_single_coset, socle_division) = match (qf, socle) {
        (false, _) => (
            LemmaStatus::not_applicable("not quasi-Frobenius"),
            LemmaStatus::not_applicable("not quasi-Frobenius"),
        ),
        (true, None) => (
            LemmaStatus::not_applicable("socle undefined"),
            LemmaStatus::not_applicable("socle undefined"),
        ),
        (true, Some(socle)) => {
            let coset = socle
                .nonzero()
                .find(|&a| !socle_is_coset(table, socle, &structure.units, a))
                .map_or(LemmaStatus::Holds, |a| {
                    LemmaStatus::fails("socle is not Ha ∪ 0 = aH ∪ 0", vec![a])
                });
            (coset, check_division(table, socle))
        }
    };

    let subsets = sample_subsets(table, config.seed, config.random_subsets);
    let mut annihilator_correspondence = LemmaStatus::Holds;
    'outer: for subset in &subsets {
        for &field in &config.fields {
            if !check_annihilator_correspondence(table, subset, field) {
                annihilator_correspondence = LemmaStatus::fails(
                    format!("annihilators differ over {field}"),
                    subset.to_vec(),
                );
                break 'outer;
            }
        }
    }

    Ok(LemmaReport {
        name: member_name(table),
        nilpotent_complement,
        qf_has_identity,
        socle_single_coset,
        socle_division,
        annihilator_correspondence,
        subsets_checked: subsets.len(),
    })
}

fn check_division(table: &CayleyTable, socle: &ElementSet) -> LemmaStatus {
    for a in socle.nonzero() {
        for b in 1..table.order() {
            for side in [Side::Left, Side::Right] {
                match table.solve_division(a, b, side) {
                    Ok(Some(_)) => {}
                    Ok(None) => {
                        return LemmaStatus::fails(
                            format!("{side} division has no solution"),
                            vec![a, b],
                        );
                    }
                    Err(e) => return LemmaStatus::fails(e.to_string(), vec![a, b]),
                }
            }
        }
    }
    LemmaStatus::Holds
}

/// A corpus entry; construction or parse failures are carried along.
#[derive(Clone, Debug)]
pub struct CorpusMember {
    pub name: String,
    pub table: std::result::Result<CayleyTable, Error>,
}

impl CorpusMember {
    pub fn ok(table: CayleyTable) -> Self {
        CorpusMember {
            name: member_name(&table),
            table: Ok(table),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    /// Groups whose modifications are enumerated exhaustively.
    pub enumerate_groups: Vec<GroupTable>,
    /// Groups for the h-block and `Ha` constructions.
    pub construction_groups: Vec<GroupTable>,
    pub include_fixtures: bool,
    pub budget: usize,
    pub verify: VerifyConfig,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        let c = |n| GroupTable::cyclic(n).expect("n >= 1");
        CorpusConfig {
            enumerate_groups: vec![
                c(2),
                c(3),
                c(4),
                c(5),
                GroupTable::dihedral(3).expect("n >= 3"),
            ],
            construction_groups: catalog(8),
            include_fixtures: true,
            budget: DEFAULT_BUDGET,
            verify: VerifyConfig::default(),
        }
    }
}

impl CorpusConfig {
    pub fn empty() -> Self {
        CorpusConfig {
            enumerate_groups: Vec::new(),
            construction_groups: Vec::new(),
            include_fixtures: false,
            budget: DEFAULT_BUDGET,
            verify: VerifyConfig::default(),
        }
    }
}

/// Tally of `Ha`-patterns whose witness lies outside the normalizer.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OutsideNormalizer {
    pub triples: usize,
    pub associative: usize,
    pub associative_qf: usize,
}

pub fn build_corpus(config: &CorpusConfig) -> (Vec<CorpusMember>, OutsideNormalizer) {
    let mut members = Vec::new();
    if config.include_fixtures {
        members.extend(fixtures::atlas().into_iter().map(CorpusMember::ok));
    }
    for group in &config.enumerate_groups {
        match enumerate_modifications(group, config.budget) {
            Ok(mods) => members.extend(mods.into_iter().map(|m| CorpusMember::ok(m.semigroup))),
            Err(e) => members.push(CorpusMember {
                name: format!("{}/raw", group.name()),
                table: Err(e),
            }),
        }
    }
    let mut outside = OutsideNormalizer::default();
    for group in &config.construction_groups {
        for h in group.subgroups() {
            let m = modification_h_block(group, &h);
            members.push(match m {
                Ok(m) => CorpusMember::ok(m.semigroup),
                Err(e) => CorpusMember {
                    name: format!("{}/h-block", group.name()),
                    table: Err(e),
                },
            });
        }
        for (h, a) in coset_parameters(group) {
            members.push(match modification_coset(group, &h, a) {
                Ok(m) => CorpusMember::ok(m.semigroup),
                Err(e) => CorpusMember {
                    name: format!(
                        "{}/coset/{}/{}",
                        group.name(),
                        group.set_label(&h),
                        group.label(a)
                    ),
                    table: Err(e),
                },
            });
        }
        for h in group.subgroups() {
            let normalizer = group.normalizer(&h).expect("subgroup");
            for a in (0..group.order()).filter(|&a| !normalizer.contains(a)) {
                outside.triples += 1;
                if let Ok(t) = coset_table(group, &h, a) {
                    outside.associative += 1;
                    if is_quasi_frobenius(&t, config.verify.ideal_cap).is_ok_and(|w| w.verdict) {
                        outside.associative_qf += 1;
                    }
                }
            }
        }
    }
    (members, outside)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MemberReport {
    pub equivalence: EquivalenceReport,
    pub lemmas: LemmaReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Anomaly {
    pub member: String,
    /// Contradicts a claim whose hypotheses the member satisfies.
    pub in_hypothesis: bool,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberError {
    pub member: String,
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub members: usize,
    pub in_hypothesis: usize,
    pub out_of_hypothesis: usize,
    pub quasi_frobenius: usize,
    pub not_quasi_frobenius: usize,
    pub brute_checked: usize,
    pub subsets_checked: usize,
    /// In-hypothesis members where the two-sided least-ideal reading
    /// disagrees with the semigroup QF verdict.
    pub two_sided_disagreements: usize,
    pub in_hypothesis_anomalies: usize,
    pub out_of_hypothesis_anomalies: usize,
    pub anomalies: Vec<Anomaly>,
    pub errors: Vec<MemberError>,
    pub outside_normalizer: Option<OutsideNormalizer>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<MemberReport>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl CorpusSummary {
    /// 0 clean, 2 member errors, 3 in-hypothesis anomalies.
    pub fn exit_code(&self) -> i32 {
        if self.in_hypothesis_anomalies > 0 {
            3
        } else if !self.errors.is_empty() {
            2
        } else {
            0
        }
    }
}

fn verify_member(table: &CayleyTable, config: &VerifyConfig) -> Result<MemberReport> {
    Ok(MemberReport {
        equivalence: verify_equivalence(table, config)?,
        lemmas: verify_lemmas(table, config)?,
    })
}

/// Verifies members concurrently; output is sorted by member name.
pub fn verify_members(mut members: Vec<CorpusMember>, config: &VerifyConfig) -> CorpusSummary {
    let start = Instant::now();
    members.sort_by(|a, b| a.name.cmp(&b.name));
    let results: Vec<(String, Result<MemberReport>)> = members
        .par_iter()
        .map(|m| {
            let result = m.table.clone().and_then(|t| verify_member(&t, config));
            (m.name.clone(), result)
        })
        .collect();

    let mut summary = CorpusSummary {
        members: members.len(),
        in_hypothesis: 0,
        out_of_hypothesis: 0,
        quasi_frobenius: 0,
        not_quasi_frobenius: 0,
        brute_checked: 0,
        subsets_checked: 0,
        two_sided_disagreements: 0,
        in_hypothesis_anomalies: 0,
        out_of_hypothesis_anomalies: 0,
        anomalies: Vec::new(),
        errors: Vec::new(),
        outside_normalizer: None,
        reports: Vec::new(),
        runtime: Duration::ZERO,
    };
    for (name, result) in results {
        let report = match result {
            Ok(r) => r,
            Err(e) => {
                summary.errors.push(MemberError {
                    member: name,
                    kind: e.kind().to_string(),
                    message: e.to_string(),
                });
                continue;
            }
        };
        let eq = &report.equivalence;
        if eq.in_hypothesis {
            summary.in_hypothesis += 1;
        } else {
            summary.out_of_hypothesis += 1;
        }
        if eq.cond_i {
            summary.quasi_frobenius += 1;
        } else {
            summary.not_quasi_frobenius += 1;
        }
        summary.brute_checked += usize::from(eq.cond_iv.is_some());
        summary.two_sided_disagreements +=
            usize::from(eq.in_hypothesis && eq.least_two_sided != eq.cond_i);
        summary.subsets_checked += report.lemmas.subsets_checked;
        let mut found: Vec<Anomaly> = eq
            .anomalies
            .iter()
            .map(|m| Anomaly {
                member: name.clone(),
                in_hypothesis: eq.in_hypothesis,
                message: m.clone(),
            })
            .collect();
        for (lemma, status) in report.lemmas.statuses() {
            if let LemmaStatus::Fails { detail, elements } = status {
                // the annihilator correspondence needs only 0-cancellativity
                let serious = eq.in_hypothesis || lemma == "annihilator_correspondence";
                found.push(Anomaly {
                    member: name.clone(),
                    in_hypothesis: serious,
                    message: format!("{lemma} fails: {detail} {elements:?}"),
                });
            }
        }
        for a in found {
            if a.in_hypothesis {
                summary.in_hypothesis_anomalies += 1;
            } else {
                summary.out_of_hypothesis_anomalies += 1;
            }
            summary.anomalies.push(a);
        }
        summary.reports.push(report);
    }
    summary.runtime = start.elapsed();
    summary
}

pub fn run_corpus(config: &CorpusConfig) -> CorpusSummary {
    let start = Instant::now();
    let (members, outside) = build_corpus(config);
    let mut summary = verify_members(members, &config.verify);
    if !config.construction_groups.is_empty() {
        summary.outside_normalizer = Some(outside);
    }
    summary.runtime = start.elapsed();
    summary
}

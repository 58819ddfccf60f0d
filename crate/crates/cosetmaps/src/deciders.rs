//! Decision pipelines: power words, very strong and very weak multiplicity
//! bounding of arbitrary words, and the sweep over all words of length at
//! most 8.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use num_bigint::BigUint;
use num_prime::nt_funcs::{factorize64, is_prime64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, AutElem, AutElemDesc, Family, GroupCtx, GroupDesc};
use crate::engine::{
    check_word_on_group, hash_str, mix_seed, plain_map_nonconstant, AssignmentResult, CertificateDesc, CompiledWord,
    ConstancyCertificate, EngineOpts, GroupCheck, GroupVerdict, WitnessDesc,
};
use crate::words::{
    canonical_cell_counts, coverage_check, enumerate_canonical, normalized_words, symmetry_orbit, variations_up_to_equivalence,
    Cell, Certifier, CoverageReport, Derivation, Word, TABLE_COUNTS,
};

#[derive(Debug, Error)]
pub enum DecideError {
    #[error("the exponent must be nonzero")]
    ZeroExponent,
    #[error("the word is empty after free reduction")]
    EmptyWord,
    #[error("sweep length {0} is outside 1..=8")]
    SweepScope(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    #[serde(rename = "MB")]
    Mb,
    #[serde(rename = "NOT_MB")]
    NotMb,
    #[serde(rename = "VSMB")]
    Vsmb,
    #[serde(rename = "NOT_VSMB")]
    NotVsmb,
    #[serde(rename = "VWMB")]
    Vwmb,
    #[serde(rename = "NOT_VWMB")]
    NotVwmb,
    #[serde(rename = "UNDECIDED")]
    Undecided,
}

impl VerdictKind {
    pub fn is_positive(self) -> bool {
        matches!(self, VerdictKind::Mb | VerdictKind::Vsmb | VerdictKind::Vwmb)
    }

    pub fn is_negative(self) -> bool {
        matches!(self, VerdictKind::NotMb | VerdictKind::NotVsmb | VerdictKind::NotVwmb)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Mb => "MB",
            VerdictKind::NotMb => "NOT_MB",
            VerdictKind::Vsmb => "VSMB",
            VerdictKind::NotVsmb => "NOT_VSMB",
            VerdictKind::Vwmb => "VWMB",
            VerdictKind::NotVwmb => "NOT_VWMB",
            VerdictKind::Undecided => "UNDECIDED",
        }
    }
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

// ---------------------------------------------------------------------------
// Closed formulas.

/// Exponent of `PSL_2(p^l)` (for `p^l >= 4`) or of `Sz(2^(2l-1))`.
pub fn exponent_formula(family: Family, p: u64, l: u32) -> BigUint {
    let one = BigUint::from(1u32);
    match family {
        Family::Psl2 if p == 2 => (BigUint::from(2u32).pow(2 * l) - &one) * 2u32,
        Family::Psl2 => BigUint::from(p) * (BigUint::from(p).pow(2 * l) - &one) / 4u32,
        Family::Suzuki => {
            let q = BigUint::from(2u32).pow(2 * l - 1);
            let r = BigUint::from(2u32).pow(l);
            (&q + &r + &one) * (&q - &r + &one) * (&q - &one) * 4u32
        }
    }
}

/// Least common multiple of the element orders in `PGL_2(q) \ PSL_2(q)`,
/// `q = p^l` odd.
pub fn outer_coset_lcm_formula(p: u64, l: u32) -> BigUint {
    (BigUint::from(p).pow(2 * l) - 1u32) / 2u32
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    /// `exp(S)`: the `e`-th power map is trivial on `S` itself.
    Exponent,
    /// Order lcm over `PGL_2(q) \ PSL_2(q)`: trivial on that coset.
    OuterCosetLcm,
}

/// `value` divides `e`, so the `e`-th power map is constant on a coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityFact {
    pub family: Family,
    pub p: u64,
    pub l: u32,
    pub quantity: Quantity,
    pub value: BigUint,
    pub e: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivisibilityDesc {
    pub group: String,
    pub coset: String,
    pub quantity: Quantity,
    pub value: String,
    pub e: u64,
}

impl DivisibilityFact {
    pub fn group_name(&self) -> String {
        group_name(self.family, self.p, self.l)
    }

    pub fn coset(&self) -> String {
        let q = BigUint::from(self.p).pow(self.l);
        match self.quantity {
            Quantity::Exponent => self.group_name(),
            Quantity::OuterCosetLcm => format!("PGL2({q}) \\ PSL2({q})"),
        }
    }

    /// Recomputes the formula and the divisibility.
    pub fn verify(&self) -> bool {
        let v = match self.quantity {
            Quantity::Exponent => exponent_formula(self.family, self.p, self.l),
            Quantity::OuterCosetLcm if self.p != 2 => outer_coset_lcm_formula(self.p, self.l),
            Quantity::OuterCosetLcm => return false,
        };
        v == self.value && (BigUint::from(self.e) % &v) == BigUint::from(0u32)
    }

    pub fn describe(&self) -> DivisibilityDesc {
        DivisibilityDesc {
            group: self.group_name(),
            coset: self.coset(),
            quantity: self.quantity,
            value: self.value.to_string(),
            e: self.e,
        }
    }
}

fn group_name(family: Family, p: u64, l: u32) -> String {
    match family {
        Family::Psl2 => format!("PSL2({p}^{l})"),
        Family::Suzuki => format!("Sz(2^{})", 2 * l - 1),
    }
}

/// All exponent and coset-lcm values of simple groups `PSL_2(q)`, `q >= 4`,
/// and `Sz(q)`, `q >= 8`, that divide `|e|`, in increasing order of `q`.
pub fn divisibility_facts(e: i64) -> Vec<DivisibilityFact> {
    let a = e.unsigned_abs();
    let ab = BigUint::from(a);
    let zero = BigUint::from(0u32);
    let mut facts = Vec::new();
    let mut push = |family, p, l, quantity, value: BigUint, q: BigUint| {
        if &ab % &value == zero {
            facts.push((q, DivisibilityFact { family, p, l, quantity, value, e: a }));
        }
    };
    for p in primes_up_to(a) {
        for l in 1u32.. {
            let q = BigUint::from(p).pow(l);
            if q < BigUint::from(4u32) {
                continue;
            }
            let exp = exponent_formula(Family::Psl2, p, l);
            let lcm = (p != 2).then(|| outer_coset_lcm_formula(p, l));
            if exp > ab && lcm.as_ref().is_none_or(|v| v > &ab) {
                break;
            }
            push(Family::Psl2, p, l, Quantity::Exponent, exp, q.clone());
            if let Some(v) = lcm {
                push(Family::Psl2, p, l, Quantity::OuterCosetLcm, v, q);
            }
        }
    }
    for l in 2u32.. {
        let exp = exponent_formula(Family::Suzuki, 2, l);
        if exp > ab {
            break;
        }
        push(Family::Suzuki, 2, l, Quantity::Exponent, exp, BigUint::from(2u32).pow(2 * l - 1));
    }
    facts.sort_by(|x, y| x.0.cmp(&y.0));
    facts.into_iter().map(|x| x.1).collect()
}

/// Identity-valued constancy via Shintani descent. For `S = PSL_2(p^m)` and a
/// field automorphism `sigma` of order `m`, `(g sigma)^m` is conjugate over
/// the algebraic closure to an element of `PGL_2(p)` lying in the coset of
/// `PSL_2(p)` given by the determinant class of `g`. So every element of
/// `S g sigma` has order `m * ord(h)` for some `h` in that small coset, and
/// the `e`-th power map is identically 1 on `S g sigma` once `m * lcm`
/// divides `e`. The same holds for `Sz(2^m)` over `Sz(2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentFact {
    pub family: Family,
    pub p: u64,
    /// Degree of the field over its prime field.
    pub m: u32,
    /// Non-square determinant class (odd `p` only).
    pub outer: bool,
    /// Frobenius powers `K` with `gcd(K, m) = 1`.
    pub frobs: Vec<usize>,
    /// Order lcm over the matching coset of the group over the prime field.
    pub base_lcm: u64,
    pub e: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentDesc {
    pub group: String,
    pub cosets: Vec<String>,
    pub base_coset: String,
    pub base_lcm: u64,
    pub degree: u32,
    pub e: u64,
}

/// Points of each large coset sampled by [`DescentFact::verify`].
const DESCENT_SAMPLES: usize = 8;

impl DescentFact {
    fn base_coset(&self) -> String {
        match (self.family, self.outer) {
            (Family::Suzuki, _) => "Sz(2)".to_string(),
            (Family::Psl2, false) => format!("PSL2({})", self.p),
            (Family::Psl2, true) => format!("PGL2({0}) \\ PSL2({0})", self.p),
        }
    }

    fn big_group(&self, seed: u64) -> Result<GroupCtx, AlgebraError> {
        match self.family {
            Family::Psl2 => GroupCtx::psl2(self.p, self.m, seed),
            Family::Suzuki => GroupCtx::suzuki(self.m.div_ceil(2), seed),
        }
    }

    fn coset_names(&self) -> Vec<String> {
        let q = BigUint::from(self.p).pow(self.m);
        self.frobs
            .iter()
            .map(|k| match (self.family, self.outer) {
                (Family::Suzuki, _) => format!("Sz({q})*phi^{k}"),
                (Family::Psl2, false) => format!("PSL2({q})*phi^{k}"),
                (Family::Psl2, true) => format!("(PGL2({q}) \\ PSL2({q}))*phi^{k}"),
            })
            .collect()
    }

    /// Recomputes the small-coset lcm by enumeration, rechecks the
    /// arithmetic, and samples the large cosets for `x^e = 1`.
    pub fn verify(&self) -> bool {
        let gcd1 = |k: usize| num_integer::gcd(k, self.m as usize) == 1;
        if self.m < 2 || self.frobs.is_empty() || !self.frobs.iter().all(|&k| k >= 1 && k < self.m as usize && gcd1(k)) {
            return false;
        }
        if !self.e.is_multiple_of(self.m as u64 * self.base_lcm) {
            return false;
        }
        let base = match self.family {
            Family::Psl2 => GroupCtx::psl2(self.p, 1, 0),
            Family::Suzuki => GroupCtx::suzuki(1, 0),
        };
        let Ok(base) = base else { return false };
        let Some(rep) = base.cosets().iter().find(|r| r.frob == 0 && base.in_psl2(&r.part) != self.outer) else {
            return false;
        };
        let Some(elements) = base.s_elements() else { return false };
        let mut lcm = 1u64;
        for s in elements {
            let x = base.mul(&base.from_s(s.clone()), rep);
            match base.element_order(&x, 1 << 20) {
                Some(o) => lcm = num_integer::lcm(lcm, o),
                None => return false,
            }
        }
        if lcm != self.base_lcm {
            return false;
        }
        let Ok(big) = self.big_group(0) else { return false };
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(self.p, &[self.m as u64, self.e]));
        for &k in &self.frobs {
            let Some(rep) = big.cosets().iter().find(|r| r.frob == k && big.in_psl2(&r.part) != self.outer) else {
                return false;
            };
            for _ in 0..DESCENT_SAMPLES {
                let x = big.mul(&big.from_s(big.random_s(&mut rng)), rep);
                if !big.is_identity(&big.pow_i64(&x, self.e as i64)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn describe(&self) -> DescentDesc {
        DescentDesc {
            group: group_name(self.family, self.p, if self.family == Family::Suzuki { self.m.div_ceil(2) } else { self.m }),
            cosets: self.coset_names(),
            base_coset: self.base_coset(),
            base_lcm: self.base_lcm,
            degree: self.m,
            e: self.e,
        }
    }
}

/// All descent facts for `|e|`: base coset lcm times the field degree divides
/// `|e|`. Ordered by field size.
pub fn descent_facts(e: i64) -> Vec<DescentFact> {
    let a = e.unsigned_abs();
    let mut facts = Vec::new();
    let frobs = |m: u32| -> Vec<usize> { (1..m as usize).filter(|&k| num_integer::gcd(k, m as usize) == 1).collect() };
    let mut bases: Vec<(Family, u64, bool, u64)> = vec![(Family::Psl2, 2, false, 6), (Family::Suzuki, 2, false, 20)];
    for p in primes_up_to(a).into_iter().filter(|&p| p > 2) {
        let inner = exponent_formula(Family::Psl2, p, 1);
        let outer = outer_coset_lcm_formula(p, 1);
        for (flag, v) in [(false, inner), (true, outer)] {
            if let Ok(v) = u64::try_from(v) {
                bases.push((Family::Psl2, p, flag, v));
            }
        }
    }
    for (family, p, outer, base_lcm) in bases {
        for m in 2..=a {
            let ok = a.is_multiple_of(m) && (a / m).is_multiple_of(base_lcm) && (family != Family::Suzuki || m % 2 == 1);
            if !ok {
                continue;
            }
            let Ok(m) = u32::try_from(m) else { continue };
            facts.push(DescentFact { family, p, m, outer, frobs: frobs(m), base_lcm, e: a });
        }
    }
    facts.sort_by_key(|f| (BigUint::from(f.p).pow(f.m), f.outer));
    facts
}

// ---------------------------------------------------------------------------
// Group lists.

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime64(p)).collect()
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut v: Vec<u64> = factorize64(n).into_keys().collect();
    v.sort_unstable();
    v
}

fn powers_of_two_up_to(n: u64, from: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut x = from;
    while x <= n {
        out.push(x as u32);
        x *= 2;
    }
    out
}

fn nu2(n: u64) -> u32 {
    n.trailing_zeros()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskReason {
    /// `L` is a prime divisor of `e` (or a prime in range).
    PrimeDegree,
    /// `L` is a power of two.
    PowerOfTwoDegree,
    /// `L` is an odd prime, needed for `p = 3` when `PSL_2(3)` has a constant map.
    OddPrimeFallback,
    /// The non-simple base group `PSL_2(3)`.
    BaseGroup,
    /// `2L - 1` is a prime (divisor of `e` for power words).
    SuzukiPrimeDegree,
}

/// One group to check, with the Frobenius exponents `K` that need to be
/// considered (those divisible by `k_step`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupTask {
    pub family: Family,
    pub p: u64,
    #[serde(rename = "L")]
    pub l: u32,
    pub k_step: usize,
    pub reason: TaskReason,
}

impl GroupTask {
    fn new(family: Family, p: u64, l: u32, k_step: usize, reason: TaskReason) -> GroupTask {
        GroupTask { family, p, l, k_step, reason }
    }

    pub fn name(&self) -> String {
        group_name(self.family, self.p, self.l)
    }

    /// Field size, for ordering.
    pub fn field_order(&self) -> BigUint {
        match self.family {
            Family::Psl2 => BigUint::from(self.p).pow(self.l),
            Family::Suzuki => BigUint::from(2u32).pow(2 * self.l - 1),
        }
    }

    fn sort(tasks: &mut [GroupTask]) {
        tasks.sort_by(|a, b| {
            (a.field_order(), a.family.name(), a.reason as u8).cmp(&(b.field_order(), b.family.name(), b.reason as u8))
        });
    }
}

/// Groups on which the `e`-th power map must be non-constant on the allowed
/// cosets, excluding those already settled by [`divisibility_facts`].
pub fn power_group_list(e: i64) -> Result<Vec<GroupTask>, DecideError> {
    if e == 0 {
        return Err(DecideError::ZeroExponent);
    }
    let a = e.unsigned_abs();
    let bound = a * a;
    let divs = prime_divisors(a);
    let v = nu2(a);
    // K-restriction for odd p and L = 2^f >= 4: K must be divisible by
    // 2^max(0, f - nu_2(e)).
    let step = |l: u32| -> usize {
        let f = l.trailing_zeros();
        if l < 4 || f <= v {
            1
        } else {
            1 << (f - v)
        }
    };
    let mut tasks = Vec::new();
    for &r in &divs {
        if r <= bound {
            tasks.push(GroupTask::new(Family::Psl2, 2, r as u32, 1, TaskReason::PrimeDegree));
        }
    }
    for p in primes_up_to(a).into_iter().filter(|&p| p >= 3) {
        if p == 3 {
            for &r in divs.iter().filter(|&&r| r <= bound && r % 2 == 1) {
                tasks.push(GroupTask::new(Family::Psl2, 3, r as u32, 1, TaskReason::PrimeDegree));
            }
        }
        let from = if p == 3 { 2 } else { 1 };
        for l in powers_of_two_up_to(bound, from) {
            tasks.push(GroupTask::new(Family::Psl2, p, l, step(l), TaskReason::PowerOfTwoDegree));
        }
    }
    for &r in divs.iter().filter(|&&r| r >= 3) {
        let l = r.div_ceil(2);
        if l <= 4 * bound {
            tasks.push(GroupTask::new(Family::Suzuki, 2, l as u32, 1, TaskReason::SuzukiPrimeDegree));
        }
    }
    GroupTask::sort(&mut tasks);
    Ok(tasks)
}

/// Results of the plain word maps on `PSL_2(2) = Sym_3` and `Sz(2)`, which
/// decide whether the characteristic-2 families need checking.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Shortcuts {
    /// `Some(true)`: the word map on `Sym_3` is non-constant.
    pub sym3_nonconstant: Option<bool>,
    pub sz2_nonconstant: Option<bool>,
}

/// Group lists for a word with maximal multiplicity `m` and length `l`.
/// `main` always has to be checked. `fallback` (odd prime `L` for `p = 3`)
/// is only needed if some coset map on `PSL_2(3)` is constant.
#[derive(Debug, Clone, Serialize)]
pub struct WordGroupList {
    pub m: usize,
    pub l: usize,
    pub shortcuts: Shortcuts,
    pub main: Vec<GroupTask>,
    pub fallback: Vec<GroupTask>,
}

pub fn word_group_list(m: usize, l: usize, shortcuts: Shortcuts) -> WordGroupList {
    let ml = (m * l) as u64;
    let mut main = Vec::new();
    let mut fallback = Vec::new();
    if m >= 2 && shortcuts.sym3_nonconstant != Some(true) {
        for r in primes_up_to(ml) {
            main.push(GroupTask::new(Family::Psl2, 2, r as u32, 1, TaskReason::PrimeDegree));
        }
    }
    for p in primes_up_to(m as u64).into_iter().filter(|&p| p >= 3) {
        for lv in powers_of_two_up_to(ml, 1) {
            let reason = if p == 3 && lv == 1 { TaskReason::BaseGroup } else { TaskReason::PowerOfTwoDegree };
            main.push(GroupTask::new(Family::Psl2, p, lv, 1, reason));
        }
        if p == 3 {
            for r in primes_up_to(ml).into_iter().filter(|&r| r >= 3) {
                fallback.push(GroupTask::new(Family::Psl2, 3, r as u32, 1, TaskReason::OddPrimeFallback));
            }
        }
    }
    if shortcuts.sz2_nonconstant != Some(true) {
        for lv in 2..=4 * ml {
            if is_prime64(2 * lv - 1) {
                main.push(GroupTask::new(Family::Suzuki, 2, lv as u32, 1, TaskReason::SuzukiPrimeDegree));
            }
        }
    }
    GroupTask::sort(&mut main);
    GroupTask::sort(&mut fallback);
    WordGroupList { m, l, shortcuts, main, fallback }
}

// ---------------------------------------------------------------------------
// Verdicts.

/// A constant coset map, proven by exhaustion.
#[derive(Debug, Clone)]
pub struct ConstancyFact {
    pub ctx: Arc<GroupCtx>,
    pub word: CompiledWord,
    pub cert: ConstancyCertificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstancyDesc {
    pub group: GroupDesc,
    pub word: Word,
    pub cosets: Vec<String>,
    pub certificate: CertificateDesc,
}

impl ConstancyFact {
    pub fn verify(&self) -> bool {
        self.cert.verify(&self.ctx, &self.word)
    }

    pub fn coset_labels(&self) -> Vec<String> {
        self.cert.assignment.iter().map(|a| coset_label(&self.ctx, a)).collect()
    }

    pub fn describe(&self) -> ConstancyDesc {
        ConstancyDesc {
            group: self.ctx.describe(),
            word: self.word.word.clone(),
            cosets: self.coset_labels(),
            certificate: self.cert.describe(),
        }
    }
}

/// Human-readable name of the coset `S * rep`.
pub fn coset_label(ctx: &GroupCtx, rep: &AutElem) -> String {
    let frob = if rep.frob == 0 { String::new() } else { format!("*phi^{}", rep.frob) };
    match ctx.family() {
        Family::Psl2 => {
            let q = ctx.q();
            if ctx.in_psl2(&rep.part) {
                format!("PSL2({q}){frob}")
            } else if frob.is_empty() {
                format!("PGL2({q}) \\ PSL2({q})")
            } else {
                format!("(PGL2({q}) \\ PSL2({q})){frob}")
            }
        }
        Family::Suzuki => format!("Sz({}){frob}", ctx.q()),
    }
}

#[derive(Debug, Clone)]
pub enum Certificate {
    Divisibility(DivisibilityFact),
    Constancy(ConstancyFact),
    Descent(DescentFact),
    Syntactic(Derivation),
}

impl Certificate {
    /// Independent re-verification (syntactic derivations are trusted).
    pub fn verify(&self) -> bool {
        match self {
            Certificate::Divisibility(d) => d.verify(),
            Certificate::Constancy(c) => c.verify(),
            Certificate::Descent(d) => d.verify(),
            Certificate::Syntactic(_) => true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CertificateReport {
    Divisibility(DivisibilityDesc),
    Constancy(ConstancyDesc),
    Descent(DescentDesc),
    Syntactic { derivation: Derivation },
}

impl Certificate {
    pub fn describe(&self) -> CertificateReport {
        match self {
            Certificate::Divisibility(d) => CertificateReport::Divisibility(d.describe()),
            Certificate::Constancy(c) => CertificateReport::Constancy(c.describe()),
            Certificate::Descent(d) => CertificateReport::Descent(d.describe()),
            Certificate::Syntactic(d) => CertificateReport::Syntactic { derivation: d.clone() },
        }
    }
}

/// One word checked on one group.
#[derive(Debug, Clone)]
pub struct TaskRecord {
    pub task: GroupTask,
    pub ctx: Arc<GroupCtx>,
    pub word: CompiledWord,
    pub reps: Vec<AutElem>,
    pub check: GroupCheck,
}

#[derive(Debug, Clone, Serialize)]
pub struct AssignmentReport {
    pub assignment: Vec<AutElemDesc>,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDesc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDesc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TaskReport {
    pub ctx: GroupDesc,
    pub task: GroupTask,
    pub word: Word,
    pub verdict: GroupVerdict,
    pub assignments: usize,
    pub evaluations: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<AssignmentReport>,
}

impl TaskRecord {
    pub fn describe(&self, detailed: bool) -> TaskReport {
        let results = if detailed {
            self.check
                .assignments
                .iter()
                .zip(&self.check.results)
                .map(|(a, r)| {
                    let assignment = a.iter().map(|x| x.describe()).collect();
                    match r {
                        AssignmentResult::Nonconstant(w) => AssignmentReport {
                            assignment,
                            kind: "witness",
                            witness: w.as_ref().map(|w| w.describe()),
                            certificate: None,
                        },
                        AssignmentResult::Constant(c) => {
                            AssignmentReport { assignment, kind: "certificate", witness: None, certificate: Some(c.describe()) }
                        }
                        AssignmentResult::Undecided => {
                            AssignmentReport { assignment, kind: "exhausted", witness: None, certificate: None }
                        }
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        TaskReport {
            ctx: self.ctx.describe(),
            task: self.task.clone(),
            word: self.word.word.clone(),
            verdict: self.check.verdict,
            assignments: self.check.assignments.len(),
            evaluations: self.check.evaluations,
            results,
        }
    }

    /// Re-verifies every stored witness pair; returns (checked, passed).
    pub fn verify_witnesses(&self) -> (usize, usize) {
        let mut n = 0;
        let mut ok = 0;
        for (a, r) in self.check.assignments.iter().zip(&self.check.results) {
            if let AssignmentResult::Nonconstant(Some(w)) = r {
                n += 1;
                if w.verify(&self.ctx, &self.word, a) {
                    ok += 1;
                }
            }
        }
        (n, ok)
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub input: String,
    pub kind: VerdictKind,
    pub certificates: Vec<Certificate>,
    pub tasks: Vec<TaskRecord>,
    pub shortcuts: Option<Shortcuts>,
    /// Variation classes settled syntactically.
    pub syntactic: Vec<Derivation>,
    /// Power-word verdict this one was derived from.
    pub delegated: Option<Box<Verdict>>,
    pub notes: Vec<String>,
    pub elapsed: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub input: String,
    pub kind: VerdictKind,
    pub certificates: Vec<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shortcuts: Option<Shortcuts>,
    pub tasks: Vec<TaskReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub syntactic: Vec<Derivation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delegated: Option<Box<VerdictReport>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub seed: u64,
    pub budget: usize,
    pub threshold: u64,
    pub elapsed: f64,
}

impl Verdict {
    fn new(input: String, kind: VerdictKind) -> Verdict {
        Verdict {
            input,
            kind,
            certificates: Vec::new(),
            tasks: Vec::new(),
            shortcuts: None,
            syntactic: Vec::new(),
            delegated: None,
            notes: Vec::new(),
            elapsed: 0.0,
        }
    }

    pub fn report(&self, opts: &EngineOpts) -> VerdictReport {
        VerdictReport {
            input: self.input.clone(),
            kind: self.kind,
            certificates: self.certificates.iter().map(|c| c.describe()).collect(),
            shortcuts: self.shortcuts,
            tasks: self.tasks.iter().map(|t| t.describe(opts.keep_witnesses)).collect(),
            syntactic: self.syntactic.clone(),
            delegated: self.delegated.as_ref().map(|d| Box::new(d.report(opts))),
            notes: self.notes.clone(),
            seed: opts.seed,
            budget: opts.budget,
            threshold: opts.threshold,
            elapsed: self.elapsed,
        }
    }

    /// Re-verifies all certificates, including delegated ones.
    pub fn verify_certificates(&self) -> bool {
        self.certificates.iter().all(|c| c.verify()) && self.delegated.as_ref().is_none_or(|d| d.verify_certificates())
    }

    /// Re-verifies every stored witness; returns (checked, passed).
    pub fn verify_witnesses(&self) -> (usize, usize) {
        let mut acc = self.delegated.as_ref().map_or((0, 0), |d| d.verify_witnesses());
        for t in &self.tasks {
            let (n, ok) = t.verify_witnesses();
            acc.0 += n;
            acc.1 += ok;
        }
        acc
    }

    pub fn evaluations(&self) -> u64 {
        self.tasks.iter().map(|t| t.check.evaluations).sum::<u64>()
            + self.delegated.as_ref().map_or(0, |d| d.evaluations())
    }
}

// ---------------------------------------------------------------------------
// The decider.

/// Outcome of running a list of tasks on a list of words.
struct TaskRun {
    records: Vec<TaskRecord>,
    constant: Option<ConstancyFact>,
    base_constant: bool,
    undecided: bool,
}

/// Runs the decision pipelines with shared group contexts.
pub struct Decider {
    pub opts: EngineOpts,
    groups: Mutex<HashMap<(Family, u64, u32), Arc<GroupCtx>>>,
    pool: Option<rayon::ThreadPool>,
}

impl Decider {
    pub fn new(opts: EngineOpts) -> Decider {
        Decider { opts, groups: Mutex::new(HashMap::new()), pool: None }
    }

    /// Uses a dedicated pool of `jobs` worker threads.
    pub fn with_jobs(opts: EngineOpts, jobs: usize) -> Decider {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
        Decider { opts, groups: Mutex::new(HashMap::new()), pool: Some(pool) }
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match &self.pool {
            Some(p) => p.install(f),
            None => f(),
        }
    }

    /// The group context for `(family, p, L)`, over a field drawn from the seed.
    pub fn group(&self, family: Family, p: u64, l: u32) -> Result<Arc<GroupCtx>, DecideError> {
        if let Some(g) = self.groups.lock().unwrap().get(&(family, p, l)) {
            return Ok(g.clone());
        }
        let seed = mix_seed(self.opts.seed, &[hash_str(family.name()), p, l as u64]);
        let g = Arc::new(match family {
            Family::Psl2 => GroupCtx::psl2(p, l, seed)?,
            Family::Suzuki => GroupCtx::suzuki(l, seed)?,
        });
        self.groups.lock().unwrap().insert((family, p, l), g.clone());
        Ok(g)
    }

    fn run_tasks(&self, tasks: &[GroupTask], words: &[CompiledWord]) -> Result<TaskRun, DecideError> {
        let mut run = TaskRun { records: Vec::new(), constant: None, base_constant: false, undecided: false };
        for task in tasks {
            let ctx = self.group(task.family, task.p, task.l)?;
            let reps: Vec<AutElem> = ctx.cosets().iter().filter(|r| r.frob % task.k_step == 0).cloned().collect();
            for w in words {
                let key = format!("{}@{}", w.word, task.name());
                let check = check_word_on_group(&ctx, w, &reps, &self.opts, &key);
                let verdict = check.verdict;
                let cert = check.first_certificate().cloned();
                run.records.push(TaskRecord { task: task.clone(), ctx: ctx.clone(), word: w.clone(), reps: reps.clone(), check });
                match verdict {
                    GroupVerdict::ConstantFound if task.reason == TaskReason::BaseGroup => {
                        run.base_constant = true;
                        break;
                    }
                    GroupVerdict::ConstantFound => {
                        run.constant = Some(ConstancyFact { ctx: ctx.clone(), word: w.clone(), cert: cert.unwrap() });
                        return Ok(run);
                    }
                    GroupVerdict::Undecided => run.undecided = true,
                    GroupVerdict::NonconstantAll => {}
                }
            }
        }
        Ok(run)
    }

    /// Decides whether `x^e` is multiplicity bounding.
    pub fn decide_power(&self, e: i64) -> Result<Verdict, DecideError> {
        if e == 0 {
            return Err(DecideError::ZeroExponent);
        }
        let t0 = Instant::now();
        let w = Word::power(e);
        let mut v = Verdict::new(w.to_string(), VerdictKind::Mb);
        let facts = divisibility_facts(e);
        if !facts.is_empty() {
            v.kind = VerdictKind::NotMb;
            v.certificates = facts.into_iter().map(Certificate::Divisibility).collect();
            v.elapsed = t0.elapsed().as_secs_f64();
            return Ok(v);
        }
        let tasks = power_group_list(e)?;
        let cw = CompiledWord::new(&w);
        let run = self.install(|| self.run_tasks(&tasks, std::slice::from_ref(&cw)))?;
        v.tasks = run.records;
        if let Some(c) = run.constant {
            v.kind = VerdictKind::NotMb;
            v.certificates.push(Certificate::Constancy(c));
        } else if run.undecided {
            let facts = descent_facts(e);
            if facts.is_empty() {
                v.kind = VerdictKind::Undecided;
            } else {
                v.kind = VerdictKind::NotMb;
                v.notes.push("sampling left cosets open; settled by descent to the prime field".to_string());
                v.certificates = facts.into_iter().map(Certificate::Descent).collect();
            }
        }
        v.elapsed = t0.elapsed().as_secs_f64();
        Ok(v)
    }

    /// Shortcut evaluations of the plain word map on `Sym_3` and `Sz(2)`.
    pub fn shortcuts(&self, w: &Word) -> Result<Shortcuts, DecideError> {
        let cw = CompiledWord::new(w);
        let sym3 = self.group(Family::Psl2, 2, 1)?;
        let sz2 = self.group(Family::Suzuki, 2, 1)?;
        Ok(Shortcuts {
            sym3_nonconstant: plain_map_nonconstant(&sym3, &cw, &self.opts, &format!("{w}@Sym3")),
            sz2_nonconstant: plain_map_nonconstant(&sz2, &cw, &self.opts, &format!("{w}@Sz(2)")),
        })
    }

    /// The group list for `w`, with shortcuts evaluated.
    pub fn word_group_list(&self, w: &Word) -> Result<WordGroupList, DecideError> {
        Ok(word_group_list(w.max_multiplicity(), w.len(), self.shortcuts(w)?))
    }

    /// Checks the coset maps of `words` on the group list of `base`.
    /// Returns `Some(true)` if all are non-constant, `Some(false)` with a
    /// certificate if one is constant on a simple group, `None` if undecided.
    fn check_groups(&self, base: &Word, words: &[Word], v: &mut Verdict) -> Result<Option<bool>, DecideError> {
        let list = self.word_group_list(base)?;
        v.shortcuts = Some(list.shortcuts);
        let cws: Vec<CompiledWord> = words.iter().map(CompiledWord::new).collect();
        let run = self.install(|| self.run_tasks(&list.main, &cws))?;
        let mut undecided = run.undecided;
        v.tasks = run.records;
        if let Some(c) = run.constant {
            v.certificates.push(Certificate::Constancy(c));
            return Ok(Some(false));
        }
        if run.base_constant {
            v.notes.push("a coset map on PSL2(3) is constant; odd prime degrees for p = 3 checked".into());
            let fb = self.install(|| self.run_tasks(&list.fallback, &cws))?;
            undecided |= fb.undecided;
            v.tasks.extend(fb.records);
            if let Some(c) = fb.constant {
                v.certificates.push(Certificate::Constancy(c));
                return Ok(Some(false));
            }
        }
        Ok(if undecided { None } else { Some(true) })
    }

    /// Decides very strong multiplicity bounding, trusting all lengths in
    /// `certified` for the syntactic rules.
    pub fn decide_vsmb_with(&self, w: &Word, certifier: &Certifier) -> Result<Verdict, DecideError> {
        if w.is_empty() {
            return Err(DecideError::EmptyWord);
        }
        let t0 = Instant::now();
        let mut v = Verdict::new(w.to_string(), VerdictKind::Vsmb);
        let power = w.as_power();
        if let Some((_, e)) = power {
            let pv = self.decide_power(e)?;
            match pv.kind {
                VerdictKind::NotMb => {
                    v.kind = VerdictKind::NotVsmb;
                    v.certificates = pv.certificates.clone();
                    v.delegated = Some(Box::new(pv));
                    v.elapsed = t0.elapsed().as_secs_f64();
                    return Ok(v);
                }
                VerdictKind::Undecided => v.kind = VerdictKind::Undecided,
                _ => {}
            }
            v.delegated = Some(Box::new(pv));
        } else if let Some(d) = certifier.certify(w) {
            v.certificates.push(Certificate::Syntactic(d));
            v.elapsed = t0.elapsed().as_secs_f64();
            return Ok(v);
        }
        let classes: BTreeSet<Word> = variations_up_to_equivalence(w).into_iter().map(|x| x.normalized()).collect();
        let mut open = Vec::new();
        for c in classes {
            if power.is_some() && c.num_vars() == 1 {
                continue;
            }
            match certifier.certify(&c) {
                Some(d) => v.syntactic.push(d),
                None => open.push(c),
            }
        }
        if !open.is_empty() {
            match self.check_groups(w, &open, &mut v)? {
                Some(true) => {}
                Some(false) => v.kind = VerdictKind::NotVsmb,
                None => v.kind = VerdictKind::Undecided,
            }
        }
        v.elapsed = t0.elapsed().as_secs_f64();
        Ok(v)
    }

    pub fn decide_vsmb(&self, w: &Word) -> Result<Verdict, DecideError> {
        self.decide_vsmb_with(w, &Certifier::new(1..=5))
    }

    /// Decides very weak multiplicity bounding: no coset map of `w` itself
    /// is constant on the listed groups.
    pub fn decide_vwmb(&self, w: &Word) -> Result<Verdict, DecideError> {
        if w.is_empty() {
            return Err(DecideError::EmptyWord);
        }
        let t0 = Instant::now();
        let mut v = Verdict::new(w.to_string(), VerdictKind::Vwmb);
        if let Some((_, e)) = w.as_power() {
            let pv = self.decide_power(e)?;
            v.kind = match pv.kind {
                VerdictKind::Mb => VerdictKind::Vwmb,
                VerdictKind::NotMb => VerdictKind::NotVwmb,
                _ => VerdictKind::Undecided,
            };
            v.certificates = pv.certificates.clone();
            v.delegated = Some(Box::new(pv));
        } else if w.min_multiplicity() == 1 {
            v.notes.push("a variable occurs once; every coset map is a bijection in it".into());
        } else {
            match self.check_groups(w, std::slice::from_ref(w), &mut v)? {
                Some(true) => {}
                Some(false) => v.kind = VerdictKind::NotVwmb,
                None => v.kind = VerdictKind::Undecided,
            }
        }
        v.elapsed = t0.elapsed().as_secs_f64();
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// Sweep.

/// One line of sweep output.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SweepEvent {
    /// A canonical word checked on groups.
    Word {
        length: usize,
        word: Word,
        cell: Cell,
        verdict: VerdictKind,
        groups: usize,
        evaluations: u64,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        certificates: Vec<CertificateReport>,
        elapsed: f64,
    },
    /// A canonical word whose verdict was taken from an earlier report.
    Resumed { length: usize, word: Word, cell: Cell, verdict: VerdictKind },
    /// The power word of the given length.
    Power { length: usize, word: Word, verdict: VerdictKind, exception: bool, elapsed: f64 },
    /// Summary of one length.
    Length(LengthSummary),
}

#[derive(Debug, Clone, Serialize)]
pub struct CellCount {
    pub cell: Cell,
    pub count: usize,
    pub table: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LengthSummary {
    pub length: usize,
    /// Reduced words up to renaming of variables.
    pub words: usize,
    pub syntactic: usize,
    pub in_canonical_orbit: usize,
    pub power_words: usize,
    pub uncovered: Vec<Word>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<CellCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage: Option<CoverageReport>,
    pub failed: Vec<Word>,
    pub undecided: Vec<Word>,
    /// Power words excluded from the conclusion.
    pub exceptions: Vec<Word>,
    /// Every word of this length, except the exceptions, is very strongly
    /// multiplicity bounding.
    pub certified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub lengths: Vec<LengthSummary>,
    pub certified: bool,
    pub undecided: bool,
}

/// Verdicts from an earlier run, keyed by word text.
pub type ResumeMap = HashMap<String, VerdictKind>;

impl Decider {
    /// Establishes very strong multiplicity bounding for all words of length
    /// `1..=l_max` (except `x^8`, `x^-8`). Lengths up to 5 are settled by
    /// the syntactic rules; longer ones by checking the canonical words and
    /// the power word on groups. `emit` receives every event in order.
    pub fn sweep(
        &self,
        l_max: usize,
        resume: &ResumeMap,
        emit: &mut dyn FnMut(&SweepEvent),
    ) -> Result<SweepReport, DecideError> {
        if !(1..=8).contains(&l_max) {
            return Err(DecideError::SweepScope(l_max));
        }
        let table: HashMap<Cell, usize> = TABLE_COUNTS.iter().copied().collect();
        let mut lengths = Vec::new();
        let mut certified: BTreeSet<usize> = BTreeSet::new();
        let mut any_undecided = false;
        for l in 1..=l_max {
            let certifier = Certifier::new(certified.iter().copied());
            let mut s = LengthSummary {
                length: l,
                words: 0,
                syntactic: 0,
                in_canonical_orbit: 0,
                power_words: 0,
                uncovered: Vec::new(),
                canonical: None,
                cells: Vec::new(),
                coverage: None,
                failed: Vec::new(),
                undecided: Vec::new(),
                exceptions: Vec::new(),
                certified: false,
            };
            let canon = if l >= 6 { enumerate_canonical(l) } else { Vec::new() };
            let canon_set: std::collections::HashSet<Word> = canon.iter().map(|c| c.word.clone()).collect();
            for w in normalized_words(l) {
                s.words += 1;
                if w.num_vars() == 1 && l >= 6 {
                    s.power_words += 1;
                } else if certifier.certify(&w).is_some() {
                    s.syntactic += 1;
                } else if w.num_vars() == 2 && symmetry_orbit(&w).iter().any(|x| canon_set.contains(x)) {
                    s.in_canonical_orbit += 1;
                } else {
                    s.uncovered.push(w);
                }
            }
            if l >= 6 {
                let t0 = Instant::now();
                let pv = self.decide_power(l as i64)?;
                let exception = pv.kind == VerdictKind::NotMb && l == 8;
                match pv.kind {
                    VerdictKind::Mb => {}
                    VerdictKind::NotMb if exception => {
                        s.exceptions.push(Word::power(8));
                        s.exceptions.push(Word::power(-8));
                    }
                    VerdictKind::Undecided => s.undecided.push(Word::power(l as i64)),
                    _ => s.failed.push(Word::power(l as i64)),
                }
                emit(&SweepEvent::Power {
                    length: l,
                    word: Word::power(l as i64),
                    verdict: pv.kind,
                    exception,
                    elapsed: t0.elapsed().as_secs_f64(),
                });
                s.canonical = Some(canon.len());
                s.cells = canonical_cell_counts(&canon)
                    .into_iter()
                    .map(|(cell, count)| CellCount { cell, count, table: table.get(&cell).copied() })
                    .collect();
                for c in &canon {
                    let key = c.word.to_string();
                    let (kind, ev) = match resume.get(&key) {
                        Some(&k) => (k, SweepEvent::Resumed { length: l, word: c.word.clone(), cell: c.cell, verdict: k }),
                        None => {
                            let t0 = Instant::now();
                            let v = self.decide_vwmb(&c.word)?;
                            let ev = SweepEvent::Word {
                                length: l,
                                word: c.word.clone(),
                                cell: c.cell,
                                verdict: v.kind,
                                groups: v.tasks.len(),
                                evaluations: v.evaluations(),
                                certificates: v.certificates.iter().map(|x| x.describe()).collect(),
                                elapsed: t0.elapsed().as_secs_f64(),
                            };
                            (v.kind, ev)
                        }
                    };
                    emit(&ev);
                    match kind {
                        VerdictKind::Vwmb => {}
                        VerdictKind::Undecided => s.undecided.push(c.word.clone()),
                        _ => s.failed.push(c.word.clone()),
                    }
                }
                s.coverage = Some(coverage_check(l));
            }
            s.certified = s.uncovered.is_empty()
                && s.failed.is_empty()
                && s.undecided.is_empty()
                && s.coverage.as_ref().is_none_or(|c| c.passed());
            any_undecided |= !s.undecided.is_empty();
            if s.certified {
                certified.insert(l);
            }
            emit(&SweepEvent::Length(s.clone()));
            let stop = !s.certified;
            lengths.push(s);
            if stop {
                break;
            }
        }
        let all = lengths.len() == l_max && lengths.iter().all(|s| s.certified);
        Ok(SweepReport { lengths, certified: all, undecided: any_undecided })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas_small_values() {
        let f = |p, l| exponent_formula(Family::Psl2, p, l);
        assert_eq!(f(2, 2), BigUint::from(30u32));
        assert_eq!(f(2, 3), BigUint::from(126u32));
        assert_eq!(f(5, 1), BigUint::from(30u32));
        assert_eq!(f(7, 1), BigUint::from(84u32));
        assert_eq!(f(3, 2), BigUint::from(60u32));
        assert_eq!(outer_coset_lcm_formula(5, 1), BigUint::from(12u32));
        assert_eq!(outer_coset_lcm_formula(3, 2), BigUint::from(40u32));
        assert_eq!(exponent_formula(Family::Suzuki, 2, 1), BigUint::from(20u32));
        assert_eq!(exponent_formula(Family::Suzuki, 2, 2), BigUint::from(1820u32));
    }

    #[test]
    fn divisibility_short_circuits() {
        let f12 = divisibility_facts(12);
        assert_eq!(f12.len(), 1);
        assert_eq!(f12[0].coset(), "PGL2(5) \\ PSL2(5)");
        let f30: Vec<String> = divisibility_facts(-30).iter().map(|f| f.coset()).collect();
        assert_eq!(f30, ["PSL2(2^2)", "PSL2(5^1)"]);
        assert!(divisibility_facts(24).iter().all(|f| f.verify()));
        for e in [8, 16, 18, 2, 7, 14] {
            assert!(divisibility_facts(e).is_empty(), "{e}");
        }
    }

    #[test]
    fn power_list_shapes() {
        let t = power_group_list(22).unwrap();
        assert!(t.iter().any(|t| t.family == Family::Psl2 && t.p == 19 && t.l == 256 && t.k_step == 128));
        assert!(t.iter().any(|t| t.family == Family::Suzuki && t.l == 6));
        let t8 = power_group_list(8).unwrap();
        assert_eq!(t8[0].name(), "PSL2(2^2)");
        assert!(t8.iter().filter(|t| t.l <= 8).all(|t| t.k_step == 1));
        assert!(t8.iter().any(|t| t.p == 3 && t.l == 64 && t.k_step == 8));
        assert!(power_group_list(0).is_err());
    }

    #[test]
    fn word_list_parameters() {
        let l = word_group_list(2, 4, Shortcuts { sym3_nonconstant: Some(true), sz2_nonconstant: Some(true) });
        assert!(l.main.is_empty());
        let l = word_group_list(3, 4, Shortcuts { sym3_nonconstant: Some(false), sz2_nonconstant: None });
        let p3: Vec<u32> = l.main.iter().filter(|t| t.p == 3).map(|t| t.l).collect();
        assert_eq!(p3, [1, 2, 4, 8]);
        let fb: Vec<u32> = l.fallback.iter().map(|t| t.l).collect();
        assert_eq!(fb, [3, 5, 7, 11]);
        let p2: Vec<u32> = l.main.iter().filter(|t| t.p == 2 && t.family == Family::Psl2).map(|t| t.l).collect();
        assert_eq!(p2, [2, 3, 5, 7, 11]);
        let sz = l.main.iter().filter(|t| t.family == Family::Suzuki).count();
        assert_eq!(sz, (2..=48u64).filter(|&x| is_prime64(2 * x - 1)).count());
    }

    #[test]
    fn small_power_verdicts() {
        let d = Decider::new(EngineOpts::default());
        assert_eq!(d.decide_power(3).unwrap().kind, VerdictKind::Mb);
        let v = d.decide_power(8).unwrap();
        assert_eq!(v.kind, VerdictKind::NotMb);
        assert!(v.verify_certificates());
        match &v.certificates[0] {
            Certificate::Constancy(c) => assert_eq!(c.coset_labels(), ["(PGL2(9) \\ PSL2(9))*phi^1"]),
            _ => panic!("expected a constancy certificate"),
        }
    }

    #[test]
    fn word_verdicts() {
        let d = Decider::new(EngineOpts::default());
        let w = |s: &str| Word::parse(s).unwrap();
        assert_eq!(d.decide_vsmb(&w("baBA")).unwrap().kind, VerdictKind::Vsmb);
        assert_eq!(d.decide_vsmb(&w("a")).unwrap().kind, VerdictKind::Vsmb);
        assert_eq!(d.decide_vwmb(&w("aabbAABB")).unwrap().kind, VerdictKind::Vwmb);
        assert_eq!(d.decide_vsmb(&w("a^8")).unwrap().kind, VerdictKind::NotVsmb);
        assert_eq!(d.decide_vwmb(&w("a^8")).unwrap().kind, VerdictKind::NotVwmb);
    }
}

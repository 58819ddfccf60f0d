//! Coset word maps and the search for non-constancy witnesses.
//!
//! Fix a word `w` in variables `X_1..X_d`, a simple group `S` and coset
//! representatives `o_1..o_d` in `Aut(S)`. The coset word map sends
//! `(s_1..s_d)` in `S^d` to `w(s_1 o_1, ..., s_d o_d)`, evaluated left to
//! right in `Aut(S)`. A witness of non-constancy is a pair of points with
//! different values; constancy can only be certified by exhaustion.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AutElem, AutElemDesc, GroupCtx, Matrix};
use crate::words::Word;

pub const DEFAULT_BUDGET: usize = 256;
pub const DEFAULT_THRESHOLD: u64 = 10_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct EngineOpts {
    pub seed: u64,
    /// Random points tried per assignment after the deterministic probes.
    pub budget: usize,
    /// Largest `|S|^d` for which exhaustive constancy checks are run.
    pub threshold: u64,
    /// Keep witness pairs in results (costly for large sweeps).
    #[serde(skip)]
    pub keep_witnesses: bool,
}

impl Default for EngineOpts {
    fn default() -> Self {
        EngineOpts { seed: 0, budget: DEFAULT_BUDGET, threshold: DEFAULT_THRESHOLD, keep_witnesses: true }
    }
}

/// A word with its variables renumbered `0..d` in increasing order.
#[derive(Debug, Clone)]
pub struct CompiledWord {
    pub word: Word,
    pub d: usize,
    runs: Vec<(usize, i64)>,
    letters: Vec<(usize, bool)>,
}

impl CompiledWord {
    pub fn new(w: &Word) -> CompiledWord {
        let vars = w.vars();
        let idx = |v: u8| vars.iter().position(|&x| x == v).unwrap();
        CompiledWord {
            word: w.clone(),
            d: vars.len(),
            runs: w.runs().into_iter().map(|(v, e)| (idx(v), e)).collect(),
            letters: w.letters().iter().map(|l| (idx(l.var), l.inv)).collect(),
        }
    }
}

fn raw_pow(ctx: &GroupCtx, g: &AutElem, mut n: u64) -> AutElem {
    let mut r: Option<AutElem> = None;
    let mut b = g.clone();
    while n > 0 {
        if n & 1 == 1 {
            r = Some(match r {
                None => b.clone(),
                Some(x) => ctx.mul_raw(&x, &b),
            });
        }
        n >>= 1;
        if n > 0 {
            b = ctx.mul_raw(&b, &b);
        }
    }
    r.unwrap_or_else(|| ctx.identity())
}

/// `w(s_1 o_1, ..., s_d o_d)`.
pub fn eval_coset_map(ctx: &GroupCtx, w: &CompiledWord, assignment: &[AutElem], point: &[Matrix]) -> AutElem {
    let f = ctx.field();
    let gs: Vec<AutElem> = assignment
        .iter()
        .zip(point)
        .map(|(o, s)| AutElem { part: s.mul(f, &o.part), frob: o.frob })
        .collect();
    let mut invs: Vec<Option<AutElem>> = vec![None; gs.len()];
    let mut acc: Option<AutElem> = None;
    for &(i, e) in &w.runs {
        let base = if e > 0 {
            &gs[i]
        } else {
            invs[i].get_or_insert_with(|| ctx.inv_raw(&gs[i]))
        };
        let t = raw_pow(ctx, base, e.unsigned_abs());
        acc = Some(match acc {
            None => t,
            Some(x) => ctx.mul_raw(&x, &t),
        });
    }
    ctx.normalize(&acc.unwrap_or_else(|| ctx.identity()))
}

/// Letter-by-letter evaluation with normalized products throughout; used
/// to re-verify values produced by [`eval_coset_map`].
pub fn eval_coset_map_naive(ctx: &GroupCtx, w: &CompiledWord, assignment: &[AutElem], point: &[Matrix]) -> AutElem {
    let mut acc = ctx.identity();
    for &(i, inv) in &w.letters {
        let g = ctx.mul(&ctx.from_s(point[i].clone()), &assignment[i]);
        let g = if inv { ctx.inv(&g) } else { g };
        acc = ctx.mul(&acc, &g);
    }
    acc
}

/// Value of the automorphic word map `prod_j omega_j(s_(i_j))^(e_j)`,
/// where `omega_j` is conjugation by the prefix of `w(o)` that precedes the
/// `j`-th letter (including that letter when it is inverted). It lies in `S`
/// and equals `w(s o) * w(o)^-1`.
pub fn automorphic_value(ctx: &GroupCtx, w: &CompiledWord, assignment: &[AutElem], point: &[Matrix]) -> AutElem {
    let mut prefix = ctx.identity();
    let mut acc = ctx.identity();
    for &(i, inv) in &w.letters {
        let o = if inv { ctx.inv(&assignment[i]) } else { assignment[i].clone() };
        let conj_by = if inv { ctx.mul(&prefix, &o) } else { prefix.clone() };
        let s = ctx.from_s(point[i].clone());
        let c = ctx.mul(&ctx.mul(&conj_by, &s), &ctx.inv(&conj_by));
        let c = if inv { ctx.inv(&c) } else { c };
        acc = ctx.mul(&acc, &c);
        prefix = ctx.mul(&prefix, &o);
    }
    acc
}

/// Checks that `value * w(o)^-1` has trivial Frobenius part, lies in `S`
/// (tested directly for `PSL_2`), and agrees with the automorphic word map.
pub fn residual_in_s(ctx: &GroupCtx, w: &CompiledWord, assignment: &[AutElem], point: &[Matrix], value: &AutElem) -> bool {
    let base = eval_coset_map(ctx, w, assignment, &vec![ctx.mat_identity(); w.d]);
    let residual = ctx.mul(value, &ctx.inv(&base));
    if residual.frob != 0 {
        return false;
    }
    if ctx.family() == crate::algebra::Family::Psl2 && !ctx.in_psl2(&residual.part) {
        return false;
    }
    ctx.eq(&residual, &automorphic_value(ctx, w, assignment, point))
}

#[derive(Debug, Clone)]
pub struct WitnessPair {
    pub point_a: Vec<Matrix>,
    pub point_b: Vec<Matrix>,
    pub value_a: AutElem,
    pub value_b: AutElem,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessDesc {
    pub point_a: Vec<Vec<Vec<u32>>>,
    pub point_b: Vec<Vec<Vec<u32>>>,
    pub value_a: AutElemDesc,
    pub value_b: AutElemDesc,
}

impl WitnessPair {
    /// Re-evaluates both points independently and checks the values differ.
    pub fn verify(&self, ctx: &GroupCtx, w: &CompiledWord, assignment: &[AutElem]) -> bool {
        let a = eval_coset_map_naive(ctx, w, assignment, &self.point_a);
        let b = eval_coset_map_naive(ctx, w, assignment, &self.point_b);
        ctx.eq(&a, &self.value_a) && ctx.eq(&b, &self.value_b) && !ctx.eq(&a, &b)
    }

    pub fn describe(&self) -> WitnessDesc {
        WitnessDesc {
            point_a: self.point_a.iter().map(|m| m.to_coeffs()).collect(),
            point_b: self.point_b.iter().map(|m| m.to_coeffs()).collect(),
            value_a: self.value_a.describe(),
            value_b: self.value_b.describe(),
        }
    }
}

/// Proof of constancy by exhaustion.
#[derive(Debug, Clone)]
pub struct ConstancyCertificate {
    pub assignment: Vec<AutElem>,
    pub value: AutElem,
    pub points_checked: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateDesc {
    pub assignment: Vec<AutElemDesc>,
    pub value: AutElemDesc,
    pub points_checked: u64,
}

impl ConstancyCertificate {
    pub fn describe(&self) -> CertificateDesc {
        CertificateDesc {
            assignment: self.assignment.iter().map(|a| a.describe()).collect(),
            value: self.value.describe(),
            points_checked: self.points_checked,
        }
    }

    /// Re-runs the exhaustive check from scratch.
    pub fn verify(&self, ctx: &GroupCtx, w: &CompiledWord) -> bool {
        match exhaustive_constancy(ctx, w, &self.assignment, u64::MAX) {
            Some(Exhaustive::Constant(c)) => ctx.eq(&c.value, &self.value) && c.points_checked == self.points_checked,
            _ => false,
        }
    }
}

pub enum SearchOutcome {
    Witness(WitnessPair),
    Exhausted,
}

/// Looks for two points with different values: the all-identity point
/// against single-variable probes, then against random points.
pub fn find_witness(
    ctx: &GroupCtx,
    w: &CompiledWord,
    assignment: &[AutElem],
    budget: usize,
    rng: &mut ChaCha8Rng,
    evals: &mut u64,
) -> SearchOutcome {
    let id = ctx.mat_identity();
    let base_point = vec![id.clone(); w.d];
    let base = eval_coset_map(ctx, w, assignment, &base_point);
    *evals += 1;
    let found = |pt: Vec<Matrix>, v: AutElem| {
        SearchOutcome::Witness(WitnessPair { point_a: base_point.clone(), point_b: pt, value_a: base.clone(), value_b: v })
    };
    let probes = ctx.probes();
    for i in 0..w.d {
        for pr in &probes {
            let mut pt = base_point.clone();
            pt[i] = pr.clone();
            let v = eval_coset_map(ctx, w, assignment, &pt);
            *evals += 1;
            if !ctx.eq(&v, &base) {
                return found(pt, v);
            }
        }
    }
    for _ in 0..budget {
        let pt: Vec<Matrix> = (0..w.d).map(|_| ctx.random_s(rng)).collect();
        let v = eval_coset_map(ctx, w, assignment, &pt);
        *evals += 1;
        if !ctx.eq(&v, &base) {
            return found(pt, v);
        }
    }
    SearchOutcome::Exhausted
}

pub enum Exhaustive {
    Constant(ConstancyCertificate),
    Witness(WitnessPair),
}

/// Evaluates the coset map on all of `S^d`. Returns `None` when `S` cannot be
/// listed or `|S|^d` exceeds `threshold`.
pub fn exhaustive_constancy(ctx: &GroupCtx, w: &CompiledWord, assignment: &[AutElem], threshold: u64) -> Option<Exhaustive> {
    let elems = ctx.s_elements()?;
    let n = elems.len() as u64;
    let total = n.checked_pow(w.d as u32)?;
    if total > threshold {
        return None;
    }
    let mut idx = vec![0usize; w.d];
    let point = |idx: &[usize]| -> Vec<Matrix> { idx.iter().map(|&i| elems[i].clone()).collect() };
    let first_pt = point(&idx);
    let first = eval_coset_map(ctx, w, assignment, &first_pt);
    for _ in 1..total {
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < elems.len() {
                break;
            }
            *slot = 0;
        }
        let pt = point(&idx);
        let v = eval_coset_map(ctx, w, assignment, &pt);
        if !ctx.eq(&v, &first) {
            return Some(Exhaustive::Witness(WitnessPair { point_a: first_pt, point_b: pt, value_a: first, value_b: v }));
        }
    }
    Some(Exhaustive::Constant(ConstancyCertificate { assignment: assignment.to_vec(), value: first, points_checked: total }))
}

/// Result for one assignment of coset representatives.
#[derive(Debug, Clone)]
pub enum AssignmentResult {
    Nonconstant(Option<WitnessPair>),
    Constant(ConstancyCertificate),
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupVerdict {
    NonconstantAll,
    ConstantFound,
    Undecided,
}

#[derive(Debug, Clone)]
pub struct GroupCheck {
    pub verdict: GroupVerdict,
    /// Representatives assigned to the variables, per assignment.
    pub assignments: Vec<Vec<AutElem>>,
    pub results: Vec<AssignmentResult>,
    pub evaluations: u64,
}

impl GroupCheck {
    pub fn first_certificate(&self) -> Option<&ConstancyCertificate> {
        self.results.iter().find_map(|r| match r {
            AssignmentResult::Constant(c) => Some(c),
            _ => None,
        })
    }

    pub fn undecided_count(&self) -> usize {
        self.results.iter().filter(|r| matches!(r, AssignmentResult::Undecided)).count()
    }
}

/// Stable 64-bit mixing of a seed with further integers.
pub fn mix_seed(seed: u64, parts: &[u64]) -> u64 {
    let mut h = seed ^ 0x243f_6a88_85a3_08d3;
    for &p in parts {
        h ^= p;
        h = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = h;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h = z ^ (z >> 31);
    }
    h
}

/// FNV-1a hash of a string, for deriving per-task random streams.
pub fn hash_str(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Decides one assignment: witness search, then exhaustion if affordable.
pub fn check_assignment(
    ctx: &GroupCtx,
    w: &CompiledWord,
    assignment: &[AutElem],
    opts: &EngineOpts,
    stream: u64,
    evals: &mut u64,
) -> AssignmentResult {
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    match find_witness(ctx, w, assignment, opts.budget, &mut rng, evals) {
        SearchOutcome::Witness(wp) => AssignmentResult::Nonconstant(opts.keep_witnesses.then_some(wp)),
        SearchOutcome::Exhausted => match exhaustive_constancy(ctx, w, assignment, opts.threshold) {
            Some(Exhaustive::Constant(c)) => {
                *evals += c.points_checked;
                AssignmentResult::Constant(c)
            }
            Some(Exhaustive::Witness(wp)) => AssignmentResult::Nonconstant(opts.keep_witnesses.then_some(wp)),
            None => AssignmentResult::Undecided,
        },
    }
}

/// Runs every assignment of the given representatives to the variables of
/// `w`. `task_key` separates the random streams of different tasks.
pub fn check_word_on_group(ctx: &GroupCtx, w: &CompiledWord, reps: &[AutElem], opts: &EngineOpts, task_key: &str) -> GroupCheck {
    let n = reps.len();
    let total = n.pow(w.d as u32);
    let assignments: Vec<Vec<AutElem>> = (0..total)
        .map(|mut idx| {
            (0..w.d)
                .map(|_| {
                    let r = reps[idx % n].clone();
                    idx /= n;
                    r
                })
                .collect()
        })
        .collect();
    let key = hash_str(task_key);
    let out: Vec<(AssignmentResult, u64)> = assignments
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let mut evals = 0;
            let r = check_assignment(ctx, w, a, opts, mix_seed(opts.seed, &[key, i as u64]), &mut evals);
            (r, evals)
        })
        .collect();
    let evaluations = out.iter().map(|x| x.1).sum();
    let results: Vec<AssignmentResult> = out.into_iter().map(|x| x.0).collect();
    let verdict = if results.iter().any(|r| matches!(r, AssignmentResult::Constant(_))) {
        GroupVerdict::ConstantFound
    } else if results.iter().any(|r| matches!(r, AssignmentResult::Undecided)) {
        GroupVerdict::Undecided
    } else {
        GroupVerdict::NonconstantAll
    };
    GroupCheck { verdict, assignments, results, evaluations }
}

/// Whether the plain word map `w_S` (all representatives trivial) is
/// non-constant; `None` if no witness was found and exhaustion was too costly.
pub fn plain_map_nonconstant(ctx: &GroupCtx, w: &CompiledWord, opts: &EngineOpts, task_key: &str) -> Option<bool> {
    let id = vec![ctx.identity(); w.d];
    let mut evals = 0;
    match check_assignment(ctx, w, &id, opts, mix_seed(opts.seed, &[hash_str(task_key)]), &mut evals) {
        AssignmentResult::Nonconstant(_) => Some(true),
        AssignmentResult::Constant(_) => Some(false),
        AssignmentResult::Undecided => None,
    }
}

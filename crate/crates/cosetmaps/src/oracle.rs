//! Brute-force checks over small groups: word map fibers, coset fibers,
//! the coset-wise fiber bound, the coordinate equations over `S^n`,
//! exponent formulas and constant-coset certificates.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, AutElem, Family, GroupCtx, Matrix};
use crate::deciders::{
    coset_label, descent_facts, exponent_formula, outer_coset_lcm_formula, Certificate, ConstancyFact, DecideError, Decider, DivisibilityFact, Quantity,
    VerdictKind,
};
use crate::engine::{CompiledWord, EngineOpts};
use crate::words::Word;

/// Largest group handled with a full multiplication table.
pub const TABLE_CAP: usize = 5_000;
/// Largest domain enumerated by the fiber computations.
pub const DOMAIN_CAP: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("group of order above {0} requested")]
    GroupTooLarge(usize),
    #[error("domain of size {0} exceeds the enumeration threshold")]
    DomainTooLarge(u64),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("unknown oracle check {0:?}")]
    UnknownCheck(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Decide(#[from] DecideError),
}

/// A finite subgroup of `Aut(S)` with its multiplication table.
pub struct SmallGroup {
    pub ctx: Arc<GroupCtx>,
    pub elements: Vec<AutElem>,
    index: HashMap<AutElem, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
}

impl SmallGroup {
    /// Closure of `gens` by breadth-first search.
    pub fn generate(ctx: Arc<GroupCtx>, gens: &[AutElem]) -> Result<SmallGroup, OracleError> {
        let elements = ctx.closure(gens, TABLE_CAP).map_err(|_| OracleError::GroupTooLarge(TABLE_CAP))?;
        let n = elements.len();
        let index: HashMap<AutElem, u32> = elements.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&ctx.mul(a, b)];
            }
        }
        let identity = index[&ctx.identity()];
        let inv = (0..n).map(|i| (0..n as u32).find(|&j| mul[i * n + j as usize] == identity).unwrap()).collect();
        Ok(SmallGroup { ctx, elements, index, mul, inv, identity })
    }

    /// `S` itself, generated by its standard generators.
    pub fn simple(ctx: Arc<GroupCtx>) -> Result<SmallGroup, OracleError> {
        let gens: Vec<AutElem> = ctx.generators().into_iter().map(|m| ctx.from_s(m)).collect();
        SmallGroup::generate(ctx, &gens)
    }

    /// `S` together with extra automorphisms.
    pub fn extended(ctx: Arc<GroupCtx>, extra: &[AutElem]) -> Result<SmallGroup, OracleError> {
        let mut gens: Vec<AutElem> = ctx.generators().into_iter().map(|m| ctx.from_s(m)).collect();
        gens.extend(extra.iter().cloned());
        SmallGroup::generate(ctx, &gens)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn index_of(&self, a: &AutElem) -> Option<u32> {
        self.index.get(&self.ctx.normalize(a)).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// Subgroup generated by the given elements.
    pub fn subgroup(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = HashSet::from([self.identity]);
        let mut all = vec![self.identity];
        let mut i = 0;
        while i < all.len() {
            for &g in gens {
                let x = self.mul(all[i], g);
                if seen.insert(x) {
                    all.push(x);
                }
            }
            i += 1;
        }
        all.sort_unstable();
        all
    }

    /// Elements lying in `S` (Frobenius part zero and, for `PSL_2`, square
    /// determinant).
    pub fn s_part(&self) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&i| {
                let a = &self.elements[i as usize];
                a.frob == 0 && (self.ctx.family() != Family::Psl2 || self.ctx.in_psl2(&a.part))
            })
            .collect()
    }

    pub fn is_normal(&self, sub: &[u32]) -> bool {
        let set: HashSet<u32> = sub.iter().copied().collect();
        (0..self.order() as u32).all(|g| sub.iter().all(|&n| set.contains(&self.mul(self.mul(g, n), self.inv(g)))))
    }

    /// Element order by repeated multiplication.
    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn eval(&self, letters: &[(usize, bool)], point: &[u32]) -> u32 {
        letters.iter().fold(self.identity, |acc, &(i, inv)| {
            let g = if inv { self.inv(point[i]) } else { point[i] };
            self.mul(acc, g)
        })
    }
}

fn letters_of(w: &Word) -> Vec<(usize, bool)> {
    let vars = w.vars();
    w.letters().iter().map(|l| (vars.iter().position(|&v| v == l.var).unwrap(), l.inv)).collect()
}

fn check_domain(base: usize, d: usize) -> Result<u64, OracleError> {
    let total = (base as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    if total > DOMAIN_CAP {
        return Err(OracleError::DomainTooLarge(total));
    }
    Ok(total)
}

/// Calls `f` on every tuple in `choices[0] x ... x choices[d-1]`.
fn for_each_tuple(choices: &[&[u32]], mut f: impl FnMut(&[u32])) {
    let d = choices.len();
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; d];
    let mut point: Vec<u32> = choices.iter().map(|c| c[0]).collect();
    loop {
        f(&point);
        let mut k = 0;
        loop {
            if k == d {
                return;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                point[k] = choices[k][idx[k]];
                break;
            }
            idx[k] = 0;
            point[k] = choices[k][0];
            k += 1;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberStats {
    /// Fiber sizes keyed by element index.
    pub fibers: BTreeMap<u32, u64>,
    pub domain: u64,
    /// Largest fiber size.
    pub max: u64,
    /// `max / domain`.
    pub proportion: f64,
}

impl FiberStats {
    fn from_counts(fibers: BTreeMap<u32, u64>, domain: u64) -> FiberStats {
        let max = fibers.values().copied().max().unwrap_or(0);
        FiberStats { fibers, domain, max, proportion: max as f64 / domain as f64 }
    }
}

/// Exact fibers of the word map `w_G : G^d -> G`.
pub fn word_fibers(w: &Word, g: &SmallGroup) -> Result<FiberStats, OracleError> {
    let d = w.num_vars();
    let letters = letters_of(w);
    let domain = check_domain(g.order(), d)?;
    let all: Vec<u32> = (0..g.order() as u32).collect();
    let choices = vec![all.as_slice(); d];
    let mut fibers = BTreeMap::new();
    for_each_tuple(&choices, |pt| *fibers.entry(g.eval(&letters, pt)).or_insert(0) += 1);
    Ok(FiberStats::from_counts(fibers, domain))
}

/// Right cosets `N g` of a normal subgroup.
pub struct CosetTable {
    pub coset_of: Vec<u32>,
    pub reps: Vec<u32>,
    pub subgroup: Vec<u32>,
}

impl CosetTable {
    pub fn new(g: &SmallGroup, n: &[u32]) -> Result<CosetTable, OracleError> {
        if !g.is_normal(n) {
            return Err(OracleError::NotNormal);
        }
        let mut coset_of = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &h in n {
                coset_of[g.mul(h, x) as usize] = c;
            }
        }
        Ok(CosetTable { coset_of, reps, subgroup: n.to_vec() })
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

/// Fibers of `w` on the quotient `G/N`, indexed by coset number.
pub fn quotient_fibers(w: &Word, g: &SmallGroup, table: &CosetTable) -> Result<FiberStats, OracleError> {
    let d = w.num_vars();
    let letters = letters_of(w);
    let domain = check_domain(table.count(), d)?;
    let choices = vec![table.reps.as_slice(); d];
    let mut fibers = BTreeMap::new();
    for_each_tuple(&choices, |pt| {
        let v = table.coset_of[g.eval(&letters, pt) as usize];
        *fibers.entry(v).or_insert(0) += 1;
    });
    Ok(FiberStats::from_counts(fibers, domain))
}

/// Fibers of the coset map `(h_1..h_d) -> w(h_1 g_1, ..., h_d g_d)` on `N^d`.
pub fn coset_map_fibers(w: &Word, g: &SmallGroup, n: &[u32], reps: &[u32]) -> Result<FiberStats, OracleError> {
    let d = w.num_vars();
    let letters = letters_of(w);
    let domain = check_domain(n.len(), d)?;
    let choices = vec![n; d];
    let mut fibers = BTreeMap::new();
    let mut pt = vec![0u32; d];
    for_each_tuple(&choices, |h| {
        for i in 0..d {
            pt[i] = g.mul(h[i], reps[i]);
        }
        *fibers.entry(g.eval(&letters, &pt)).or_insert(0) += 1;
    });
    Ok(FiberStats::from_counts(fibers, domain))
}

#[derive(Debug, Clone, Serialize)]
pub struct CosetGamma {
    /// Largest fiber of any coset map.
    pub gamma_max: u64,
    /// `gamma_max / |N|^d`.
    pub gamma_ratio: f64,
    /// Representatives attaining the maximum.
    pub argmax: Vec<u32>,
}

/// Maximal fiber size over all coset maps of `w` with respect to `N`.
pub fn coset_gamma(w: &Word, g: &SmallGroup, table: &CosetTable) -> Result<CosetGamma, OracleError> {
    let d = w.num_vars();
    check_domain(table.count() * table.subgroup.len(), d)?;
    let choices = vec![table.reps.as_slice(); d];
    let mut best = (0u64, Vec::new());
    let mut err = None;
    for_each_tuple(&choices, |reps| {
        if err.is_some() {
            return;
        }
        match coset_map_fibers(w, g, &table.subgroup, reps) {
            Ok(f) if f.max > best.0 => best = (f.max, reps.to_vec()),
            Ok(_) => {}
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let dom = (table.subgroup.len() as u64).pow(d as u32);
    Ok(CosetGamma { gamma_max: best.0, gamma_ratio: best.0 as f64 / dom as f64, argmax: best.1 })
}

#[derive(Debug, Clone, Serialize)]
pub struct CosetwiseBound {
    pub word: Word,
    pub group_order: usize,
    pub subgroup_order: usize,
    /// Largest fiber of `w_G`.
    pub pi_g: u64,
    /// Largest fiber of `w_{G/N}`.
    pub pi_quotient: u64,
    pub gamma: u64,
    pub holds: bool,
}

/// Checks `Pi_w(G) <= Pi_w(G/N) * Gamma_w(N, G)` exhaustively.
pub fn verify_cosetwise_bound(w: &Word, g: &SmallGroup, n: &[u32]) -> Result<CosetwiseBound, OracleError> {
    let table = CosetTable::new(g, n)?;
    let pi_g = word_fibers(w, g)?.max;
    let pi_quotient = quotient_fibers(w, g, &table)?.max;
    let gamma = coset_gamma(w, g, &table)?.gamma_max;
    Ok(CosetwiseBound {
        word: w.clone(),
        group_order: g.order(),
        subgroup_order: n.len(),
        pi_g,
        pi_quotient,
        gamma,
        holds: pi_g <= pi_quotient * gamma,
    })
}

/// Checks that the multiset of fiber sizes of a coset map depends only on the
/// cosets, not on the representatives: compares the given representatives
/// with `n_i * g_i` for every choice of `n_i` in `N` on the first variable.
pub fn representative_independence(w: &Word, g: &SmallGroup, n: &[u32], reps: &[u32]) -> Result<bool, OracleError> {
    let profile = |r: &[u32]| -> Result<Vec<u64>, OracleError> {
        let mut v: Vec<u64> = coset_map_fibers(w, g, n, r)?.fibers.into_values().collect();
        v.sort_unstable();
        Ok(v)
    };
    let base = profile(reps)?;
    for &h in n {
        for i in 0..reps.len() {
            let mut r = reps.to_vec();
            r[i] = g.mul(h, reps[i]);
            if profile(&r)? != base {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Coordinate equations over S^n.

/// Permutation of `0..n` as the list of images.
pub type Perm = Vec<usize>;

fn perm_mul(a: &Perm, b: &Perm) -> Perm {
    // (a b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

fn perm_inv(a: &Perm) -> Perm {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x] = i;
    }
    r
}

/// Element `(t_1, ..., t_n) sigma` of `Aut(S) wr Sym_n`, where `sigma` moves
/// coordinate `i` to position `sigma(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathElem {
    pub coords: Vec<AutElem>,
    pub perm: Perm,
}

fn wreath_mul(ctx: &GroupCtx, a: &WreathElem, b: &WreathElem) -> WreathElem {
    let pinv = perm_inv(&a.perm);
    let coords = (0..a.coords.len()).map(|i| ctx.mul(&a.coords[i], &b.coords[pinv[i]])).collect();
    WreathElem { coords, perm: perm_mul(&a.perm, &b.perm) }
}

fn wreath_inv(ctx: &GroupCtx, a: &WreathElem) -> WreathElem {
    // (t sigma)^-1 = sigma^-1 t^-1 = (sigma^-1 . t^-1) sigma^-1
    let coords = (0..a.coords.len()).map(|i| ctx.inv(&a.coords[a.perm[i]])).collect();
    WreathElem { coords, perm: perm_inv(&a.perm) }
}

fn word_in_sym(w: &Word, sigmas: &[Perm], n: usize) -> Perm {
    let letters = letters_of(w);
    letters.iter().fold((0..n).collect(), |acc, &(i, inv)| {
        let s = if inv { perm_inv(&sigmas[i]) } else { sigmas[i].clone() };
        perm_mul(&acc, &s)
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EquationSystemReport {
    pub word: Word,
    pub n: usize,
    pub sigmas: Vec<Perm>,
    pub psi: Perm,
    pub psi_matches: bool,
    pub points_checked: u64,
    pub direct_fiber: usize,
    pub system_solutions: usize,
    pub sets_equal: bool,
}

/// Compares the fiber of `beta` under the coset word map on `S^n` (with
/// representatives `(alpha_k,1, ..., alpha_k,n) sigma_k`) against the solution
/// set of the coordinate equations, and checks that the fiber is empty when
/// `psi` differs from `w(sigma_1, ..., sigma_d)` in `Sym_n`.
pub fn equation_system_check(
    ctx: &GroupCtx,
    w: &Word,
    n: usize,
    sigmas: &[Perm],
    alphas: &[Vec<AutElem>],
    beta: &[AutElem],
    psi: &Perm,
) -> Result<EquationSystemReport, OracleError> {
    let elems = ctx.s_elements().ok_or(OracleError::GroupTooLarge(crate::algebra::ENUMERATION_CAP as usize))?;
    let d = w.num_vars();
    let total = check_domain(elems.len(), n * d)?;
    let letters = letters_of(w);
    let psi_matches = word_in_sym(w, sigmas, n) == *psi;
    // chi_j: product of sigma^eps over the letters before j, including j
    // itself when it is inverted.
    let mut chis_inv = Vec::new();
    let mut prefix: Perm = (0..n).collect();
    for &(i, inv) in &letters {
        let s = if inv { perm_inv(&sigmas[i]) } else { sigmas[i].clone() };
        let next = perm_mul(&prefix, &s);
        chis_inv.push(perm_inv(if inv { &next } else { &prefix }));
        prefix = next;
    }
    let target = WreathElem { coords: beta.to_vec(), perm: psi.clone() };
    let idx_all: Vec<u32> = (0..elems.len() as u32).collect();
    let choices = vec![idx_all.as_slice(); n * d];
    let mut direct = Vec::new();
    let mut system = Vec::new();
    for_each_tuple(&choices, |pt| {
        // pt[k * n + i] is s_{k,i}.
        let s = |k: usize, i: usize| ctx.from_s(elems[pt[k * n + i] as usize].clone());
        let t = |k: usize, i: usize| ctx.mul(&s(k, i), &alphas[k][i]);
        let mut acc = WreathElem { coords: vec![ctx.identity(); n], perm: (0..n).collect() };
        for &(k, inv) in &letters {
            let x = WreathElem { coords: (0..n).map(|i| t(k, i)).collect(), perm: sigmas[k].clone() };
            let x = if inv { wreath_inv(ctx, &x) } else { x };
            acc = wreath_mul(ctx, &acc, &x);
        }
        if acc.perm == target.perm && (0..n).all(|i| ctx.eq(&acc.coords[i], &target.coords[i])) {
            direct.push(pt.to_vec());
        }
        if psi_matches {
            let ok = (0..n).all(|i| {
                let lhs = letters.iter().zip(&chis_inv).fold(ctx.identity(), |acc, (&(k, inv), chi_inv)| {
                    let x = t(k, chi_inv[i]);
                    ctx.mul(&acc, &if inv { ctx.inv(&x) } else { x })
                });
                ctx.eq(&lhs, &beta[i])
            });
            if ok {
                system.push(pt.to_vec());
            }
        }
    });
    Ok(EquationSystemReport {
        word: w.clone(),
        n,
        sigmas: sigmas.to_vec(),
        psi: psi.clone(),
        psi_matches,
        points_checked: total,
        direct_fiber: direct.len(),
        system_solutions: system.len(),
        sets_equal: direct == system,
    })
}

// ---------------------------------------------------------------------------
// Exponents.

fn lcm_of_orders<'a>(ctx: &GroupCtx, it: impl Iterator<Item = &'a Matrix>, rep: &AutElem) -> BigUint {
    let mut l = 1u64;
    for m in it {
        let x = ctx.mul(&ctx.from_s(m.clone()), rep);
        l = l.lcm(&ctx.element_order(&x, 1 << 20).expect("element order"));
    }
    BigUint::from(l)
}

/// Exponent of `S` by brute force.
pub fn group_exponent(ctx: &GroupCtx) -> Option<BigUint> {
    Some(lcm_of_orders(ctx, ctx.s_elements()?.iter(), &ctx.identity()))
}

/// Least common multiple of the orders of the elements of `S * rep`.
pub fn coset_order_lcm(ctx: &GroupCtx, rep: &AutElem) -> Option<BigUint> {
    Some(lcm_of_orders(ctx, ctx.s_elements()?.iter(), rep))
}

/// Representative of `PGL_2(q) \ PSL_2(q)` (odd `q`).
pub fn outer_diagonal_rep(ctx: &GroupCtx) -> AutElem {
    ctx.cosets().iter().find(|r| r.frob == 0 && !ctx.in_psl2(&r.part)).expect("odd characteristic").clone()
}

/// Checks a divisibility fact by raising every element of the coset to the
/// `e`-th power.
pub fn verify_divisibility_exhaustively(fact: &DivisibilityFact, seed: u64) -> Result<bool, OracleError> {
    let ctx = match fact.family {
        Family::Psl2 => GroupCtx::psl2(fact.p, fact.l, seed)?,
        Family::Suzuki => GroupCtx::suzuki(fact.l, seed)?,
    };
    let rep = match fact.quantity {
        Quantity::Exponent => ctx.identity(),
        Quantity::OuterCosetLcm => outer_diagonal_rep(&ctx),
    };
    let elems = ctx.s_elements().ok_or(OracleError::GroupTooLarge(crate::algebra::ENUMERATION_CAP as usize))?;
    Ok(elems.iter().all(|m| ctx.is_identity(&ctx.pow_i64(&ctx.mul(&ctx.from_s(m.clone()), &rep), fact.e as i64))))
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberLowerBound {
    pub word: Word,
    pub s_order: u64,
    pub group_order: usize,
    pub value_fiber: u64,
    pub bound: u64,
    pub holds: bool,
}

/// For a constant coset map on `S`, builds the subgroup of `Aut(S)`
/// generated by `S` and the representatives, and shows the word map there
/// has a fiber of size at least `|S|^d`.
pub fn fiber_lower_bound_witness(fact: &ConstancyFact) -> Result<FiberLowerBound, OracleError> {
    let g = SmallGroup::extended(fact.ctx.clone(), &fact.cert.assignment)?;
    let w = &fact.word.word;
    let fibers = word_fibers(w, &g)?;
    let v = g.index_of(&fact.cert.value).expect("value lies in the group");
    let s = fact.ctx.s_elements().map_or(0, |e| e.len()) as u64;
    let bound = s.pow(fact.word.d as u32);
    let value_fiber = fibers.fibers.get(&v).copied().unwrap_or(0);
    Ok(FiberLowerBound { word: w.clone(), s_order: s, group_order: g.order(), value_fiber, bound, holds: value_fiber >= bound })
}

// ---------------------------------------------------------------------------
// Named suites.

#[derive(Debug, Clone, Serialize)]
pub struct OracleCheck {
    pub suite: &'static str,
    pub name: String,
    pub computed: Value,
    pub expected: Value,
    pub passed: bool,
}

fn check(suite: &'static str, name: impl Into<String>, computed: Value, expected: Value) -> OracleCheck {
    let passed = computed == expected;
    OracleCheck { suite, name: name.into(), computed, expected, passed }
}

pub const SUITES: &[&str] = &[
    "enumeration",
    "fibers",
    "coset-gamma",
    "cosetwise-bound",
    "representatives",
    "equation-system",
    "exponents",
    "power-certificates",
    "fiber-lower-bound",
];

fn ctx_psl2(p: u64, l: u32, seed: u64) -> Result<Arc<GroupCtx>, OracleError> {
    Ok(Arc::new(GroupCtx::psl2(p, l, seed)?))
}

fn sym3(seed: u64) -> Result<(SmallGroup, Vec<u32>), OracleError> {
    let g = SmallGroup::simple(ctx_psl2(2, 1, seed)?)?;
    let alt3 = g.subgroup(&(0..g.order() as u32).filter(|&x| g.element_order(x) == 3).collect::<Vec<_>>());
    Ok((g, alt3))
}

fn pgl2(p: u64, l: u32, seed: u64) -> Result<(SmallGroup, Vec<u32>), OracleError> {
    let ctx = ctx_psl2(p, l, seed)?;
    let rep = outer_diagonal_rep(&ctx);
    let g = SmallGroup::extended(ctx, &[rep])?;
    let s = g.s_part();
    Ok((g, s))
}

fn word(s: &str) -> Word {
    Word::parse(s).expect("valid word")
}

/// Runs one named suite.
pub fn run_suite(name: &str, seed: u64) -> Result<Vec<OracleCheck>, OracleError> {
    let mut out = Vec::new();
    match name {
        "enumeration" => {
            let s = "enumeration";
            out.push(check(s, "|PSL2(5)|", json!(SmallGroup::simple(ctx_psl2(5, 1, seed)?)?.order()), json!(60)));
            let sz2 = Arc::new(GroupCtx::suzuki(1, seed)?);
            out.push(check(s, "|Sz(2)|", json!(SmallGroup::simple(sz2)?.order()), json!(20)));
            out.push(check(s, "|PGL2(9)|", json!(pgl2(3, 2, seed)?.0.order()), json!(720)));
            let sz8 = GroupCtx::suzuki(2, seed)?;
            out.push(check(s, "|Sz(8)|", json!(sz8.s_elements().map(|e| e.len())), json!(29120)));
        }
        "fibers" => {
            let s = "fibers";
            let (g, _) = sym3(seed)?;
            let f = word_fibers(&word("a"), &g)?;
            out.push(check(s, "a on Sym3: all fibers 1", json!([f.max, f.fibers.len()]), json!([1, 6])));
            let f = word_fibers(&word("aa"), &g)?;
            out.push(check(s, "aa on Sym3: largest fiber", json!(f.max), json!(4)));
            let (pg, _) = pgl2(5, 1, seed)?;
            let f = word_fibers(&word("a^12"), &pg)?;
            let recount = (0..pg.order() as u32).filter(|&x| 12 % pg.element_order(x) == 0).count();
            out.push(check(s, "a^12 on PGL2(5): largest fiber", json!(f.max), json!(96)));
            out.push(check(s, "a^12 on PGL2(5): recount by element orders", json!(recount), json!(f.max)));
            let f = word_fibers(&word("abAB"), &SmallGroup::simple(ctx_psl2(5, 1, seed)?)?)?;
            out.push(check(s, "abAB on PSL2(5): fibers sum to domain", json!(f.fibers.values().sum::<u64>()), json!(3600)));
        }
        "coset-gamma" => {
            let s = "coset-gamma";
            let (g, alt3) = sym3(seed)?;
            let t = CosetTable::new(&g, &alt3)?;
            out.push(check(s, "a, Alt3 in Sym3", json!(coset_gamma(&word("a"), &g, &t)?.gamma_max), json!(1)));
            out.push(check(s, "aa, Alt3 in Sym3", json!(coset_gamma(&word("aa"), &g, &t)?.gamma_max), json!(3)));
            let (pg, s5) = pgl2(5, 1, seed)?;
            let t = CosetTable::new(&pg, &s5)?;
            let r = coset_gamma(&word("a^12"), &pg, &t)?;
            out.push(check(s, "a^12, PSL2(5) in PGL2(5): ratio in (0,1]", json!(r.gamma_ratio > 0.0 && r.gamma_ratio <= 1.0), json!(true)));
            out.push(check(s, "a^12, PSL2(5) in PGL2(5)", json!(r.gamma_max), json!(60)));
        }
        "cosetwise-bound" => {
            let s = "cosetwise-bound";
            let (g, alt3) = sym3(seed)?;
            let b = verify_cosetwise_bound(&word("aa"), &g, &alt3)?;
            out.push(check(s, "aa, Sym3, Alt3", json!([b.pi_g, b.pi_quotient, b.gamma, b.holds]), json!([4, 2, 3, true])));
            let b = verify_cosetwise_bound(&word("aa"), &g, &[g.identity()])?;
            out.push(check(s, "aa, Sym3, trivial", json!([b.pi_g, b.gamma, b.holds]), json!([4, 1, true])));
            let (pg, s5) = pgl2(5, 1, seed)?;
            let b = verify_cosetwise_bound(&word("a^12"), &pg, &s5)?;
            out.push(check(s, "a^12, PGL2(5), PSL2(5)", json!([b.pi_g, b.pi_quotient, b.gamma, b.holds]), json!([96, 2, 60, true])));
            let b = verify_cosetwise_bound(&word("abAB"), &pg, &s5)?;
            out.push(check(s, "abAB, PGL2(5), PSL2(5)", json!(b.holds), json!(true)));
            let (g9, s9) = pgl2(3, 2, seed)?;
            let b = verify_cosetwise_bound(&word("aabb"), &g9, &s9)?;
            out.push(check(s, "aabb, PGL2(9), PSL2(9)", json!(b.holds), json!(true)));
        }
        "representatives" => {
            let s = "representatives";
            let (pg, s5) = pgl2(5, 1, seed)?;
            let t = CosetTable::new(&pg, &s5)?;
            let odd = t.reps[1];
            for w in ["aa", "a^3", "abAB", "aabb"] {
                let reps = vec![odd; word(w).num_vars()];
                out.push(check(s, format!("{w}, PSL2(5) in PGL2(5)"), json!(representative_independence(&word(w), &pg, &s5, &reps)?), json!(true)));
            }
        }
        "equation-system" => {
            let s = "equation-system";
            let ctx = ctx_psl2(2, 2, seed)?;
            let frob = ctx.cosets().iter().find(|r| r.frob == 1).unwrap().clone();
            let id = ctx.identity();
            let swap: Perm = vec![1, 0];
            let ident: Perm = vec![0, 1];
            let elems = ctx.s_elements().unwrap();
            let g = ctx.from_s(elems[7].clone());
            let h = ctx.from_s(elems[23].clone());
            let configs: Vec<(&str, Perm, Vec<AutElem>)> = vec![
                ("a^2", swap.clone(), vec![frob.clone(), id.clone()]),
                ("a^2", ident.clone(), vec![frob.clone(), frob.clone()]),
                ("a^3", swap.clone(), vec![id.clone(), frob.clone()]),
                ("a^-2", swap.clone(), vec![frob.clone(), id.clone()]),
            ];
            for (w, sigma, alpha) in configs {
                let wd = word(w);
                let psi = word_in_sym(&wd, std::slice::from_ref(&sigma), 2);
                // A target value attained by the map, so the fiber is nonempty.
                let pt = WreathElem { coords: vec![ctx.mul(&g, &alpha[0]), ctx.mul(&h, &alpha[1])], perm: sigma.clone() };
                let mut acc = WreathElem { coords: vec![ctx.identity(); 2], perm: ident.clone() };
                for l in wd.letters() {
                    let x = if l.inv { wreath_inv(&ctx, &pt) } else { pt.clone() };
                    acc = wreath_mul(&ctx, &acc, &x);
                }
                let r = equation_system_check(&ctx, &wd, 2, std::slice::from_ref(&sigma), std::slice::from_ref(&alpha), &acc.coords, &psi)?;
                out.push(check(
                    s,
                    format!("PSL2(4)^2, {w}, sigma {sigma:?}, psi matched"),
                    json!([r.sets_equal, r.direct_fiber > 0, r.points_checked]),
                    json!([true, true, 3600]),
                ));
                let other: Perm = if psi == ident { swap.clone() } else { ident.clone() };
                let r = equation_system_check(&ctx, &wd, 2, std::slice::from_ref(&sigma), std::slice::from_ref(&alpha), &acc.coords, &other)?;
                out.push(check(
                    s,
                    format!("PSL2(4)^2, {w}, sigma {sigma:?}, psi mismatched"),
                    json!([r.psi_matches, r.direct_fiber, r.sets_equal]),
                    json!([false, 0, true]),
                ));
            }
            let r = equation_system_check(&ctx, &word("a^2"), 1, &[vec![0]], &[vec![frob.clone()]], &[ctx.mul(&g, &g)], &vec![0])?;
            out.push(check(s, "n = 1 reduces to the coset map", json!(r.sets_equal), json!(true)));
        }
        "exponents" => {
            let s = "exponents";
            for (p, l) in [(2u64, 2u32), (5, 1), (7, 1), (2, 3), (3, 2)] {
                let ctx = GroupCtx::psl2(p, l, seed)?;
                out.push(check(
                    s,
                    format!("exp(PSL2({}))", ctx.q()),
                    json!(group_exponent(&ctx).map(|x| x.to_string())),
                    json!(exponent_formula(Family::Psl2, p, l).to_string()),
                ));
            }
            for (p, l) in [(5u64, 1u32), (7, 1), (3, 2)] {
                let ctx = GroupCtx::psl2(p, l, seed)?;
                out.push(check(
                    s,
                    format!("lcm of orders on PGL2({0}) \\ PSL2({0})", ctx.q()),
                    json!(coset_order_lcm(&ctx, &outer_diagonal_rep(&ctx)).map(|x| x.to_string())),
                    json!(outer_coset_lcm_formula(p, l).to_string()),
                ));
            }
            for l in [1u32, 2] {
                let ctx = GroupCtx::suzuki(l, seed)?;
                out.push(check(
                    s,
                    format!("exp(Sz({}))", ctx.q()),
                    json!(group_exponent(&ctx).map(|x| x.to_string())),
                    json!(exponent_formula(Family::Suzuki, 2, l).to_string()),
                ));
            }
        }
        "power-certificates" => {
            let s = "power-certificates";
            let d = Decider::new(EngineOpts { seed, ..EngineOpts::default() });
            for e in [8i64, 12, 16, 18, 24, 30] {
                let v = d.decide_power(e)?;
                let mut ok = v.kind == VerdictKind::NotMb && !v.certificates.is_empty();
                let mut labels = Vec::new();
                for c in &v.certificates {
                    match c {
                        Certificate::Divisibility(f) => {
                            ok &= f.verify() && verify_divisibility_exhaustively(f, seed)?;
                            labels.push(f.coset());
                        }
                        Certificate::Constancy(f) => {
                            ok &= f.verify();
                            labels.extend(f.coset_labels());
                        }
                        Certificate::Descent(f) => {
                            ok &= f.verify();
                            labels.extend(f.describe().cosets);
                        }
                        Certificate::Syntactic(_) => ok = false,
                    }
                }
                out.push(check(s, format!("x^{e}: {}", labels.join("; ")), json!(ok), json!(true)));
            }
            // Descent predictions against exhaustion where the large group is enumerable.
            for e in [8i64, 12, 18] {
                for f in descent_facts(e) {
                    let ctx = match f.family {
                        Family::Psl2 => GroupCtx::psl2(f.p, f.m, seed)?,
                        Family::Suzuki => GroupCtx::suzuki(f.m.div_ceil(2), seed)?,
                    };
                    if ctx.s_elements().is_none() {
                        continue;
                    }
                    let cw = CompiledWord::new(&word(&format!("a^{e}")));
                    for &k in &f.frobs {
                        let Some(rep) = ctx.cosets().iter().find(|r| r.frob == k && ctx.in_psl2(&r.part) != f.outer) else {
                            continue;
                        };
                        let trivial = matches!(
                            crate::engine::exhaustive_constancy(&ctx, &cw, std::slice::from_ref(rep), u64::MAX),
                            Some(crate::engine::Exhaustive::Constant(c)) if ctx.is_identity(&c.value)
                        );
                        out.push(check(s, format!("descent x^{e} on {}", coset_label(&ctx, rep)), json!(trivial), json!(true)));
                    }
                }
            }
        }
        "fiber-lower-bound" => {
            let s = "fiber-lower-bound";
            let d = Decider::new(EngineOpts { seed, ..EngineOpts::default() });
            let ctx = d.group(Family::Psl2, 5, 1)?;
            let rep = outer_diagonal_rep(&ctx);
            let cw = CompiledWord::new(&word("a^12"));
            let cert = match crate::engine::exhaustive_constancy(&ctx, &cw, std::slice::from_ref(&rep), u64::MAX) {
                Some(crate::engine::Exhaustive::Constant(c)) => c,
                _ => return Ok(vec![check(s, "a^12 on the odd coset of PGL2(5)", json!("not constant"), json!("constant"))]),
            };
            let b = fiber_lower_bound_witness(&ConstancyFact { ctx: ctx.clone(), word: cw, cert })?;
            out.push(check(s, "a^12, odd coset of PGL2(5)", json!([b.value_fiber, b.bound, b.holds]), json!([96, 60, true])));
            let a5 = SmallGroup::simple(ctx.clone())?;
            let f = word_fibers(&word("a^30"), &a5)?;
            out.push(check(s, "a^30 on PSL2(5): identity fiber", json!(f.fibers.get(&a5.identity())), json!(60)));
            let f = word_fibers(&word("a"), &a5)?;
            out.push(check(s, "a on PSL2(5)", json!(f.max), json!(1)));
        }
        other => return Err(OracleError::UnknownCheck(other.to_string())),
    }
    Ok(out)
}

/// Runs a named suite, or all of them for `"all"`.
pub fn run(name: &str, seed: u64) -> Result<Vec<OracleCheck>, OracleError> {
    if name == "all" {
        let mut out = Vec::new();
        for s in SUITES {
            out.extend(run_suite(s, seed)?);
        }
        Ok(out)
    } else {
        run_suite(name, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_conventions() {
        let a: Perm = vec![1, 2, 0];
        let b: Perm = vec![1, 0, 2];
        assert_eq!(perm_mul(&a, &b), vec![2, 1, 0]);
        assert_eq!(perm_mul(&a, &perm_inv(&a)), vec![0, 1, 2]);
    }

    #[test]
    fn wreath_inverse() {
        let ctx = GroupCtx::psl2(2, 2, 0).unwrap();
        let e = ctx.s_elements().unwrap();
        let x = WreathElem {
            coords: vec![ctx.mul(&ctx.from_s(e[5].clone()), &ctx.cosets()[1]), ctx.from_s(e[9].clone())],
            perm: vec![1, 0],
        };
        let y = wreath_mul(&ctx, &x, &wreath_inv(&ctx, &x));
        assert_eq!(y.perm, vec![0, 1]);
        assert!(y.coords.iter().all(|c| ctx.is_identity(c)));
    }

    #[test]
    fn small_suites_pass() {
        for s in ["fibers", "coset-gamma", "cosetwise-bound"] {
            for c in run_suite(s, 0).unwrap() {
                assert!(c.passed, "{c:?}");
            }
        }
    }
}

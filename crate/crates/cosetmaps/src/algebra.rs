//! Automorphism groups of `PSL_2(q)` and of Suzuki groups `Sz(q)`.
//!
//! An automorphism is a pair `(M, K)`: a matrix part `M` (projective 2x2 for
//! the `PSL_2` family, an honest 4x4 matrix for Suzuki groups) and a Frobenius
//! exponent `K` in `[0, k)`. It acts on the simple group by
//! `x -> M x^(p^K) M^-1`, so that
//!
//! ```text
//! (M, K) (N, J) = (M * phi^K(N), K + J mod k)
//! ```
//!
//! The simple group `S` itself is embedded as the pairs `(s, 0)`.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Signed;
use rand::Rng;
use serde::Serialize;

use crate::ff::{make_field, Fe, Field, FieldDesc, FieldError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "PSL2")]
    Psl2,
    #[serde(rename = "Sz")]
    Suzuki,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Psl2 => "PSL2",
            Family::Suzuki => "Sz",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("Suzuki groups need L >= 1, got {0}")]
    SuzukiParameter(u32),
    #[error("matrix is singular")]
    Singular,
    #[error("group of order {0} is too large to enumerate")]
    TooLarge(BigUint),
}

/// Square matrix over a finite field, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    n: usize,
    e: Vec<Fe>,
}

impl Matrix {
    pub fn new(n: usize, e: Vec<Fe>) -> Matrix {
        assert_eq!(e.len(), n * n);
        Matrix { n, e }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Fe] {
        &self.e
    }

    pub fn get(&self, i: usize, j: usize) -> &Fe {
        &self.e[i * self.n + j]
    }

    pub fn identity(f: &Field, n: usize) -> Matrix {
        let e = (0..n * n).map(|i| if i % (n + 1) == 0 { f.one() } else { f.zero() }).collect();
        Matrix { n, e }
    }

    pub fn diag(f: &Field, d: &[Fe]) -> Matrix {
        let n = d.len();
        let e = (0..n * n).map(|i| if i % (n + 1) == 0 { d[i / n].clone() } else { f.zero() }).collect();
        Matrix { n, e }
    }

    pub fn mul(&self, f: &Field, o: &Matrix) -> Matrix {
        let n = self.n;
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: Option<Fe> = None;
                for t in 0..n {
                    let a = &self.e[i * n + t];
                    let b = &o.e[t * n + j];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let prod = f.mul(a, b);
                    acc = Some(match acc {
                        None => prod,
                        Some(x) => f.add(&x, &prod),
                    });
                }
                e.push(acc.unwrap_or_else(|| f.zero()));
            }
        }
        Matrix { n, e }
    }

    pub fn frobenius(&self, f: &Field, k: usize) -> Matrix {
        if k.is_multiple_of(f.k()) {
            return self.clone();
        }
        Matrix { n: self.n, e: self.e.iter().map(|x| f.frobenius(x, k)).collect() }
    }

    pub fn det(&self, f: &Field) -> Fe {
        match self.n {
            1 => self.e[0].clone(),
            2 => f.sub(&f.mul(&self.e[0], &self.e[3]), &f.mul(&self.e[1], &self.e[2])),
            _ => {
                let (_, d) = self.gauss_inverse(f);
                d
            }
        }
    }

    /// Adjugate of a 2x2 matrix; the inverse up to the scalar `det`.
    pub fn adjugate2(&self, f: &Field) -> Matrix {
        assert_eq!(self.n, 2);
        let e = &self.e;
        Matrix { n: 2, e: vec![e[3].clone(), f.neg(&e[1]), f.neg(&e[2]), e[0].clone()] }
    }

    pub fn inverse(&self, f: &Field) -> Result<Matrix, AlgebraError> {
        let (inv, d) = self.gauss_inverse(f);
        if d.is_zero() {
            return Err(AlgebraError::Singular);
        }
        Ok(inv.expect("nonsingular"))
    }

    /// Gauss-Jordan elimination returning the inverse (if any) and determinant.
    fn gauss_inverse(&self, f: &Field) -> (Option<Matrix>, Fe) {
        let n = self.n;
        let mut a = self.e.clone();
        let mut b = Matrix::identity(f, n).e;
        let mut det = f.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return (None, f.zero());
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    b.swap(piv * n + j, col * n + j);
                }
                det = f.neg(&det);
            }
            let pv = a[col * n + col].clone();
            det = f.mul(&det, &pv);
            let pinv = f.inv(&pv).expect("nonzero pivot");
            for j in 0..n {
                a[col * n + j] = f.mul(&a[col * n + j], &pinv);
                b[col * n + j] = f.mul(&b[col * n + j], &pinv);
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let c = a[r * n + col].clone();
                for j in 0..n {
                    let t = f.mul(&c, &a[col * n + j]);
                    a[r * n + j] = f.sub(&a[r * n + j], &t);
                    let t = f.mul(&c, &b[col * n + j]);
                    b[r * n + j] = f.sub(&b[r * n + j], &t);
                }
            }
        }
        (Some(Matrix { n, e: b }), det)
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        self.e.iter().enumerate().all(|(i, x)| if i % (n + 1) == 0 { x.is_one() } else { x.is_zero() })
    }

    /// Coefficient vectors of the entries, row-major.
    pub fn to_coeffs(&self) -> Vec<Vec<u32>> {
        self.e.iter().map(|x| x.to_vec_trimmed()).collect()
    }
}

/// Canonical representative of a projective 2x2 matrix: the first nonzero
/// entry in row-major order is scaled to 1.
pub fn canon2(f: &Field, m: &Matrix) -> Matrix {
    let lead = m.e.iter().find(|x| !x.is_zero()).expect("nonzero matrix");
    if lead.is_one() {
        return m.clone();
    }
    let s = f.inv(lead).expect("nonzero");
    Matrix { n: m.n, e: m.e.iter().map(|x| f.mul(x, &s)).collect() }
}

/// Element of `Aut(S)`; see the module documentation for the convention.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AutElem {
    pub part: Matrix,
    pub frob: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AutElemDesc {
    pub part: Vec<Vec<u32>>,
    pub frob: usize,
}

impl AutElem {
    pub fn describe(&self) -> AutElemDesc {
        AutElemDesc { part: self.part.to_coeffs(), frob: self.frob }
    }
}

/// Serializable summary of a group context.
#[derive(Debug, Clone, Serialize)]
pub struct GroupDesc {
    pub family: Family,
    pub p: u32,
    pub k: usize,
    #[serde(rename = "L")]
    pub l: u32,
    pub coset_count: usize,
    pub field: FieldDesc,
}

/// Largest simple group we are willing to list element by element.
pub const ENUMERATION_CAP: u64 = 100_000;

/// A simple group `S` (or `PSL_2(2)`, `PSL_2(3)`) together with the
/// arithmetic of its automorphism group and a transversal of `S` in it.
pub struct GroupCtx {
    family: Family,
    field: Field,
    l: u32,
    cosets: Vec<AutElem>,
    elements: OnceLock<Option<Vec<Matrix>>>,
}

impl std::fmt::Debug for GroupCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl GroupCtx {
    /// `PSL_2(p^l)` over a field drawn with `seed`.
    pub fn psl2(p: u64, l: u32, seed: u64) -> Result<GroupCtx, AlgebraError> {
        let field = make_field(p, l as usize, None, seed)?;
        Ok(GroupCtx::psl2_over(field))
    }

    pub fn psl2_over(field: Field) -> GroupCtx {
        let l = field.k() as u32;
        let mut ctx = GroupCtx { family: Family::Psl2, field, l, cosets: Vec::new(), elements: OnceLock::new() };
        ctx.cosets = ctx.psl2_cosets();
        ctx
    }

    /// `Sz(2^(2l-1))` over a field drawn with `seed`.
    pub fn suzuki(l: u32, seed: u64) -> Result<GroupCtx, AlgebraError> {
        if l == 0 {
            return Err(AlgebraError::SuzukiParameter(l));
        }
        let field = make_field(2, (2 * l - 1) as usize, None, seed)?;
        Ok(GroupCtx::suzuki_over(field))
    }

    /// Suzuki group over a given field of odd degree over GF(2).
    pub fn suzuki_over(field: Field) -> GroupCtx {
        assert!(field.p() == 2 && field.k() % 2 == 1);
        let l = (field.k() as u32).div_ceil(2);
        let mut ctx = GroupCtx { family: Family::Suzuki, field, l, cosets: Vec::new(), elements: OnceLock::new() };
        ctx.cosets = (0..ctx.k()).map(|kk| AutElem { part: ctx.mat_identity(), frob: kk }).collect();
        ctx
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// Degree of the field over its prime field.
    pub fn k(&self) -> usize {
        self.field.k()
    }

    /// The parameter `L`: `q = p^L` for `PSL_2`, `q = 2^(2L-1)` for Suzuki groups.
    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn dim(&self) -> usize {
        match self.family {
            Family::Psl2 => 2,
            Family::Suzuki => 4,
        }
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::Psl2 => format!("PSL2({}^{})", self.p(), self.k()),
            Family::Suzuki => format!("Sz(2^{})", self.k()),
        }
    }

    pub fn describe(&self) -> GroupDesc {
        GroupDesc {
            family: self.family,
            p: self.p(),
            k: self.k(),
            l: self.l,
            coset_count: self.cosets.len(),
            field: self.field.describe(),
        }
    }

    /// Coset representatives of `S` in `Aut(S)`.
    pub fn cosets(&self) -> &[AutElem] {
        &self.cosets
    }

    /// Order of `S`.
    pub fn s_order(&self) -> BigUint {
        let q = self.field.order();
        match self.family {
            Family::Psl2 => {
                let g = if self.p() == 2 { 1u32 } else { 2 };
                &q * (&q * &q - 1u32) / g
            }
            Family::Suzuki => &q * &q * (&q * &q + 1u32) * (&q - 1u32),
        }
    }

    /// Field order `q`.
    pub fn q(&self) -> BigUint {
        self.field.order()
    }

    /// Whether `S` is a nonabelian simple group.
    pub fn is_simple(&self) -> bool {
        match self.family {
            Family::Psl2 => self.q() >= BigUint::from(4u32),
            Family::Suzuki => self.l >= 2,
        }
    }

    fn psl2_cosets(&self) -> Vec<AutElem> {
        let f = &self.field;
        let mut reps = Vec::new();
        let eps: &[usize] = if f.p() == 2 { &[0] } else { &[0, 1] };
        for &e in eps {
            let d = if e == 0 { f.one() } else { f.nonsquare().unwrap().clone() };
            let part = canon2(f, &Matrix::diag(f, &[d, f.one()]));
            for kk in 0..f.k() {
                reps.push(AutElem { part: part.clone(), frob: kk });
            }
        }
        reps
    }

    pub fn mat_identity(&self) -> Matrix {
        Matrix::identity(&self.field, self.dim())
    }

    pub fn identity(&self) -> AutElem {
        AutElem { part: self.mat_identity(), frob: 0 }
    }

    /// Puts a matrix part into the canonical form used for equality.
    pub fn normalize_part(&self, m: &Matrix) -> Matrix {
        match self.family {
            Family::Psl2 => canon2(&self.field, m),
            Family::Suzuki => m.clone(),
        }
    }

    pub fn normalize(&self, a: &AutElem) -> AutElem {
        AutElem { part: self.normalize_part(&a.part), frob: a.frob }
    }

    /// Product without normalizing the matrix part.
    pub fn mul_raw(&self, a: &AutElem, b: &AutElem) -> AutElem {
        let f = &self.field;
        let nb = b.part.frobenius(f, a.frob);
        AutElem { part: a.part.mul(f, &nb), frob: (a.frob + b.frob) % self.k() }
    }

    pub fn mul(&self, a: &AutElem, b: &AutElem) -> AutElem {
        self.normalize(&self.mul_raw(a, b))
    }

    /// Inverse of a matrix part (projectively for `PSL_2`).
    pub fn part_inverse(&self, m: &Matrix) -> Matrix {
        match self.family {
            Family::Psl2 => m.adjugate2(&self.field),
            Family::Suzuki => m.inverse(&self.field).expect("group elements are invertible"),
        }
    }

    pub fn inv_raw(&self, a: &AutElem) -> AutElem {
        let k = self.k();
        let back = (k - a.frob) % k;
        AutElem { part: self.part_inverse(&a.part).frobenius(&self.field, back), frob: back }
    }

    pub fn inv(&self, a: &AutElem) -> AutElem {
        self.normalize(&self.inv_raw(a))
    }

    pub fn eq(&self, a: &AutElem, b: &AutElem) -> bool {
        a.frob == b.frob && self.normalize_part(&a.part) == self.normalize_part(&b.part)
    }

    pub fn is_identity(&self, a: &AutElem) -> bool {
        a.frob == 0 && self.normalize_part(&a.part).is_identity()
    }

    pub fn pow_u(&self, a: &AutElem, n: &BigUint) -> AutElem {
        let mut r = self.identity();
        for i in (0..n.bits()).rev() {
            r = self.mul_raw(&r, &r);
            if n.bit(i) {
                r = self.mul_raw(&r, a);
            }
        }
        self.normalize(&r)
    }

    pub fn pow(&self, a: &AutElem, n: &BigInt) -> AutElem {
        match n.sign() {
            Sign::Minus => self.pow_u(&self.inv_raw(a), &n.abs().to_biguint().unwrap()),
            _ => self.pow_u(a, &n.to_biguint().unwrap()),
        }
    }

    pub fn pow_i64(&self, a: &AutElem, n: i64) -> AutElem {
        self.pow(a, &BigInt::from(n))
    }

    /// Order of `a`, or `None` if it exceeds `cap`.
    pub fn element_order(&self, a: &AutElem, cap: u64) -> Option<u64> {
        let a = self.normalize(a);
        let mut x = a.clone();
        for n in 1..=cap {
            if self.is_identity(&x) {
                return Some(n);
            }
            x = self.mul(&x, &a);
        }
        None
    }

    /// Whether a 2x2 part lies in `PSL_2(q)`: always in characteristic 2,
    /// otherwise iff its determinant is a square.
    pub fn in_psl2(&self, m: &Matrix) -> bool {
        assert_eq!(self.family, Family::Psl2);
        if self.p() == 2 {
            return true;
        }
        let d = m.det(&self.field);
        !d.is_zero() && self.field.is_square(&d).expect("odd characteristic")
    }

    /// For `PSL_2`, the pair `(epsilon, K)` naming the coset of `S` containing `a`.
    pub fn psl2_coset_of(&self, a: &AutElem) -> (usize, usize) {
        let eps = if self.p() == 2 || self.in_psl2(&a.part) { 0 } else { 1 };
        (eps, a.frob)
    }

    /// Whether `a` lies in the coset `S * rep`.
    pub fn same_coset(&self, a: &AutElem, rep: &AutElem) -> bool {
        let r = self.mul(a, &self.inv(rep));
        r.frob == 0
            && match self.family {
                Family::Psl2 => self.in_psl2(&r.part),
                Family::Suzuki => true,
            }
    }

    // Suzuki matrices. With theta = 2^L, theta^2 is the squaring automorphism
    // of GF(2^(2L-1)).

    fn theta(&self, a: &Fe) -> Fe {
        self.field.frobenius(a, self.l as usize)
    }

    /// Lower unitriangular generator `U(a, b)` of a Sylow 2-subgroup.
    pub fn sz_unipotent(&self, a: &Fe, b: &Fe) -> Matrix {
        assert_eq!(self.family, Family::Suzuki);
        let f = &self.field;
        let at = self.theta(a);
        let bt = self.theta(b);
        let a2t = f.mul(&f.sqr(a), &at);
        let c30 = f.add(&f.add(&a2t, &f.mul(a, b)), &bt);
        let c31 = f.add(&f.mul(a, &at), b);
        let (o, z) = (f.one(), f.zero());
        Matrix::new(4, vec![
            o.clone(), z.clone(), z.clone(), z.clone(),
            a.clone(), o.clone(), z.clone(), z.clone(),
            b.clone(), at, o.clone(), z.clone(),
            c30, c31, a.clone(), o,
        ])
    }

    /// Torus element `diag(k, k^(theta-1), k^(1-theta), k^-1)`.
    pub fn sz_torus(&self, kappa: &Fe) -> Matrix {
        assert_eq!(self.family, Family::Suzuki);
        let f = &self.field;
        let kt = self.theta(kappa);
        let ki = f.inv(kappa).expect("nonzero torus parameter");
        let d1 = f.mul(&kt, &ki);
        let d2 = f.inv(&d1).unwrap();
        Matrix::diag(f, &[kappa.clone(), d1, d2, ki])
    }

    /// The anti-diagonal Weyl element.
    pub fn sz_weyl(&self) -> Matrix {
        let f = &self.field;
        let e = (0..16).map(|i| if i % 4 + i / 4 == 3 { f.one() } else { f.zero() }).collect();
        Matrix::new(4, e)
    }

    /// Generators of `S`.
    pub fn generators(&self) -> Vec<Matrix> {
        let f = &self.field;
        let mut basis = vec![f.one()];
        if f.k() > 1 {
            basis.push(f.gen());
        }
        let mut x = f.gen();
        for _ in 2..f.k() {
            x = f.mul(&x, &f.gen());
            basis.push(x.clone());
        }
        match self.family {
            Family::Psl2 => {
                let mut g = Vec::new();
                for b in &basis {
                    g.push(Matrix::new(2, vec![f.one(), b.clone(), f.zero(), f.one()]));
                    g.push(Matrix::new(2, vec![f.one(), f.zero(), b.clone(), f.one()]));
                }
                g.into_iter().map(|m| canon2(f, &m)).collect()
            }
            Family::Suzuki => {
                let mut g = vec![self.sz_weyl()];
                for b in &basis {
                    g.push(self.sz_unipotent(b, &f.zero()));
                    g.push(self.sz_unipotent(&f.zero(), b));
                }
                if f.k() > 1 {
                    g.push(self.sz_torus(&f.gen()));
                }
                g
            }
        }
    }

    /// A random element of `S`. Not uniform; only variety matters here.
    pub fn random_s<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix {
        let f = &self.field;
        match self.family {
            Family::Psl2 => {
                // random element of SL_2 with nonzero top-left entry
                let a = f.random_nonzero(rng);
                let b = f.random(rng);
                let c = f.random(rng);
                let d = f.div(&f.add(&f.one(), &f.mul(&b, &c)), &a).unwrap();
                canon2(f, &Matrix::new(2, vec![a, b, c, d]))
            }
            Family::Suzuki => {
                let u = self.sz_unipotent(&f.random(rng), &f.random(rng));
                let t = self.sz_torus(&f.random_nonzero(rng));
                let m = u.mul(f, &t);
                if rng.gen_bool(0.75) {
                    let u2 = self.sz_unipotent(&f.random(rng), &f.random(rng));
                    m.mul(f, &self.sz_weyl()).mul(f, &u2)
                } else {
                    m
                }
            }
        }
    }

    /// Deterministic elements of `S` tried before random ones when looking
    /// for witnesses: diagonal (torus) elements, unipotents and a Weyl element.
    pub fn probes(&self) -> Vec<Matrix> {
        let f = &self.field;
        let mut out = Vec::new();
        match self.family {
            Family::Psl2 => {
                let c = match f.nonsquare() {
                    Some(n) => f.sqr(n),
                    None => f.gen(),
                };
                let o = f.one();
                let z = f.zero();
                if !c.is_zero() && !c.is_one() {
                    let ci = f.inv(&c).unwrap();
                    out.push(Matrix::diag(f, &[c.clone(), o.clone()]));
                    out.push(Matrix::diag(f, &[ci, o.clone()]));
                    out.push(Matrix::new(2, vec![c.clone(), o.clone(), z.clone(), o.clone()]));
                }
                out.push(Matrix::new(2, vec![o.clone(), o.clone(), z.clone(), o.clone()]));
                out.push(Matrix::new(2, vec![o.clone(), z.clone(), o.clone(), o.clone()]));
                out.push(Matrix::new(2, vec![z.clone(), o.clone(), f.neg(&o), z]));
                out.into_iter().map(|m| canon2(f, &m)).collect()
            }
            Family::Suzuki => {
                let c = f.gen();
                if !c.is_zero() && !c.is_one() {
                    out.push(self.sz_torus(&c));
                    out.push(self.sz_torus(&f.inv(&c).unwrap()));
                }
                out.push(self.sz_unipotent(&f.one(), &f.zero()));
                out.push(self.sz_unipotent(&f.zero(), &f.one()));
                out.push(self.sz_weyl());
                out
            }
        }
    }

    /// All elements of `S`, if `|S|` is at most [`ENUMERATION_CAP`].
    pub fn s_elements(&self) -> Option<&[Matrix]> {
        self.elements
            .get_or_init(|| {
                if self.s_order() > BigUint::from(ENUMERATION_CAP) {
                    return None;
                }
                Some(match self.family {
                    Family::Psl2 => self.enumerate_psl2(),
                    Family::Suzuki => self.enumerate_bfs(),
                })
            })
            .as_deref()
    }

    fn enumerate_psl2(&self) -> Vec<Matrix> {
        let f = &self.field;
        let elems = f.elements();
        let mut out = Vec::new();
        let mut push = |m: Matrix| {
            if !m.det(f).is_zero() && self.in_psl2(&m) {
                out.push(m);
            }
        };
        for c in &elems {
            for d in &elems {
                push(Matrix::new(2, vec![f.zero(), f.one(), c.clone(), d.clone()]));
                for b in &elems {
                    push(Matrix::new(2, vec![f.one(), b.clone(), c.clone(), d.clone()]));
                }
            }
        }
        out
    }

    fn enumerate_bfs(&self) -> Vec<Matrix> {
        let f = &self.field;
        let gens = self.generators();
        let id = self.mat_identity();
        let mut seen = std::collections::HashSet::new();
        seen.insert(id.clone());
        let mut all = vec![id];
        let mut i = 0;
        while i < all.len() {
            let g = all[i].clone();
            for h in &gens {
                let x = self.normalize_part(&g.mul(f, h));
                if seen.insert(x.clone()) {
                    all.push(x);
                }
            }
            i += 1;
        }
        all
    }

    /// Embeds an element of `S`.
    pub fn from_s(&self, m: Matrix) -> AutElem {
        AutElem { part: self.normalize_part(&m), frob: 0 }
    }

    /// Elements generated by the given automorphisms, by breadth-first search,
    /// giving up beyond `cap` elements.
    pub fn closure(&self, gens: &[AutElem], cap: usize) -> Result<Vec<AutElem>, AlgebraError> {
        let id = self.identity();
        let gens: Vec<AutElem> = gens.iter().map(|g| self.normalize(g)).collect();
        let mut seen = std::collections::HashSet::new();
        seen.insert(id.clone());
        let mut all = vec![id];
        let mut i = 0;
        while i < all.len() {
            for h in &gens {
                let x = self.mul(&all[i], h);
                if seen.insert(x.clone()) {
                    if all.len() >= cap {
                        return Err(AlgebraError::TooLarge(BigUint::from(cap)));
                    }
                    all.push(x);
                }
            }
            i += 1;
        }
        Ok(all)
    }
}

/// Order of `PSL_2(p^l)`.
pub fn psl2_order(p: u64, l: u32) -> BigUint {
    let q = BigUint::from(p).pow(l);
    let g = if p == 2 { 1u32 } else { 2 };
    &q * (&q * &q - 1u32) / g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coset_counts() {
        assert_eq!(GroupCtx::psl2(5, 1, 0).unwrap().cosets().len(), 2);
        assert_eq!(GroupCtx::psl2(2, 2, 0).unwrap().cosets().len(), 2);
        assert_eq!(GroupCtx::psl2(3, 2, 0).unwrap().cosets().len(), 4);
        assert_eq!(GroupCtx::suzuki(2, 0).unwrap().cosets().len(), 3);
    }

    #[test]
    fn pgl2_5_diagonal() {
        let g = GroupCtx::psl2(5, 1, 0).unwrap();
        let f = g.field();
        let a = AutElem { part: Matrix::diag(f, &[f.from_u64(2), f.one()]), frob: 0 };
        assert!(g.is_identity(&g.pow_i64(&a, 4)));
        assert_eq!(g.element_order(&a, 100), Some(4));
        assert!(!g.in_psl2(&a.part));
    }

    #[test]
    fn group_orders_by_enumeration() {
        assert_eq!(GroupCtx::psl2(5, 1, 0).unwrap().s_elements().unwrap().len(), 60);
        assert_eq!(GroupCtx::psl2(2, 2, 0).unwrap().s_elements().unwrap().len(), 60);
        assert_eq!(GroupCtx::psl2(3, 2, 0).unwrap().s_elements().unwrap().len(), 360);
        assert_eq!(GroupCtx::psl2(2, 1, 0).unwrap().s_elements().unwrap().len(), 6);
        assert_eq!(GroupCtx::psl2(3, 1, 0).unwrap().s_elements().unwrap().len(), 12);
        assert_eq!(GroupCtx::suzuki(1, 0).unwrap().s_elements().unwrap().len(), 20);
        assert_eq!(GroupCtx::suzuki(2, 0).unwrap().s_elements().unwrap().len(), 29120);
    }

    #[test]
    fn suzuki_torus_pattern() {
        let g = GroupCtx::suzuki(2, 0).unwrap();
        let f = g.field();
        let k = f.gen();
        let t = g.sz_torus(&k);
        let want = [1i64, 3, -3, -1];
        for (i, &e) in want.iter().enumerate() {
            assert_eq!(t.get(i, i), &f.pow_i64(&k, e).unwrap());
        }
        let elems: std::collections::HashSet<_> = g.s_elements().unwrap().iter().cloned().collect();
        assert!(elems.contains(&t));
    }

    #[test]
    fn automorphism_group_axioms() {
        let g = GroupCtx::psl2(3, 3, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rand_aut = |rng: &mut ChaCha8Rng| {
            let r = &g.cosets()[rng.gen_range(0..g.cosets().len())];
            g.mul(&g.from_s(g.random_s(rng)), r)
        };
        for _ in 0..30 {
            let (a, b, c) = (rand_aut(&mut rng), rand_aut(&mut rng), rand_aut(&mut rng));
            assert!(g.eq(&g.mul(&g.mul(&a, &b), &c), &g.mul(&a, &g.mul(&b, &c))));
            assert!(g.is_identity(&g.mul(&a, &g.inv(&a))));
            assert!(g.is_identity(&g.mul(&g.inv(&a), &a)));
        }
    }
}

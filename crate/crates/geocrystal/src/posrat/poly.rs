//! Sparse polynomials and the canonical form used to decide equality.
//!
//! Expressions are converted to *factored fractions*: a rational
//! coefficient times a Laurent monomial times a product of interned
//! primitive polynomial factors raised to signed exponents. Sums are
//! expanded over the common part of their summands and the result is
//! trial-divided by the denominators it sits over. Equality is decided by
//! dividing the two forms and, if any factor survives, expanding the
//! numerator and denominator and comparing them term by term.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ptr, Expr, Node, PosRatError};

/// Dense exponent vector with trailing zeros trimmed, so the derived
/// lexicographic order on `Vec` is the lex monomial order.
pub type Mono = Vec<u32>;

fn trim(mut m: Mono) -> Mono {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = alloc::vec![0; a.len().max(b.len())];
    for (k, e) in a.iter().enumerate() {
        out[k] += e;
    }
    for (k, e) in b.iter().enumerate() {
        out[k] += e;
    }
    out
}

fn mono_div(a: &Mono, b: &Mono) -> Option<Mono> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = a.clone();
    for (k, e) in b.iter().enumerate() {
        out[k] = out[k].checked_sub(*e)?;
    }
    Some(trim(out))
}

/// A sparse multivariate polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Poly {
    pub terms: BTreeMap<Mono, BigInt>,
}

impl Poly {
    pub fn one() -> Poly {
        Poly::monomial(Vec::new(), BigInt::one())
    }

    pub fn monomial(m: Mono, c: BigInt) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(m), c);
        }
        Poly { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Poly, cap: usize) -> Result<Poly, PosRatError> {
        let work = self.len().saturating_mul(other.len());
        if work > cap.saturating_mul(16) {
            return Err(PosRatError::ExpansionTooLarge { terms: work, cap });
        }
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(trim(mono_mul(ma, mb)), ca * cb);
            }
        }
        if out.len() > cap {
            return Err(PosRatError::ExpansionTooLarge { terms: out.len(), cap });
        }
        Ok(out)
    }

    /// Exact quotient `self / d` when `d` divides `self`, with `d` primitive.
    pub fn exact_div(&self, d: &Poly, cap: usize) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let mut r = self.clone();
        let mut q = Poly::default();
        let mut steps = 0usize;
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let m = mono_div(&rm, dm)?;
            let (c, rem) = rc.div_rem(dc);
            if !rem.is_zero() {
                return None;
            }
            steps += d.len();
            if steps > cap.saturating_mul(16) {
                return None;
            }
            for (tm, tc) in &d.terms {
                r.add_term(trim(mono_mul(tm, &m)), -(tc * &c));
            }
            q.add_term(m, c);
        }
        Some(q)
    }

    pub fn pow(&self, e: u32, cap: usize) -> Result<Poly, PosRatError> {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self, cap)?;
        }
        Ok(out)
    }

    /// Splits off the signed integer content and the monomial content, leaving
    /// a primitive polynomial with positive leading coefficient.
    fn normalize(mut self) -> (BigInt, Mono, Poly) {
        let width = self.terms.keys().map(|m| m.len()).max().unwrap_or(0);
        let mut low: Mono = alloc::vec![u32::MAX; width];
        for m in self.terms.keys() {
            for (k, slot) in low.iter_mut().enumerate() {
                *slot = (*slot).min(m.get(k).copied().unwrap_or(0));
            }
        }
        let low = trim(low);
        if !low.is_empty() {
            self.terms = self
                .terms
                .into_iter()
                .map(|(m, c)| (mono_div(&m, &low).expect("content divides"), c))
                .collect();
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            content = content.gcd(c);
        }
        if self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            content = -content;
        }
        if !content.is_one() {
            for c in self.terms.values_mut() {
                *c = &*c / &content;
            }
        }
        (content, low, self)
    }
}

/// Numerator and denominator of a fully expanded rational function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseFraction {
    pub vars: Vec<String>,
    pub num: Poly,
    pub den: Poly,
}

#[derive(Clone, Debug)]
struct Frac {
    coeff: BigRational,
    mono: BTreeMap<u32, i64>,
    factors: BTreeMap<usize, i64>,
}

impl Frac {
    fn scalar(q: BigRational) -> Frac {
        Frac { coeff: q, mono: BTreeMap::new(), factors: BTreeMap::new() }
    }

    fn mul(&self, other: &Frac) -> Frac {
        let mut out = self.clone();
        out.coeff *= &other.coeff;
        merge(&mut out.mono, &other.mono, 1);
        merge(&mut out.factors, &other.factors, 1);
        out
    }

    fn pow(&self, k: i64) -> Frac {
        let coeff = if k >= 0 {
            num_traits::pow(self.coeff.clone(), k as usize)
        } else {
            num_traits::pow(self.coeff.recip(), (-k) as usize)
        };
        Frac {
            coeff,
            mono: self.mono.iter().map(|(v, e)| (*v, e * k)).collect(),
            factors: self.factors.iter().map(|(v, e)| (*v, e * k)).collect(),
        }
    }

    fn is_one(&self) -> bool {
        self.coeff.is_one() && self.mono.is_empty() && self.factors.is_empty()
    }
}

fn merge<K: Ord + Copy>(into: &mut BTreeMap<K, i64>, from: &BTreeMap<K, i64>, sign: i64) {
    for (k, e) in from {
        let slot = into.entry(*k).or_insert(0);
        *slot += sign * e;
        if *slot == 0 {
            into.remove(k);
        }
    }
}

/// Tuning for [`Canonicalizer`].
#[derive(Clone, Debug)]
pub struct EqualityConfig {
    /// Largest number of terms any expansion may produce.
    pub term_cap: usize,
    /// Random evaluation points tried before the exact comparison.
    pub prefilter_points: usize,
    pub seed: u64,
}

impl Default for EqualityConfig {
    fn default() -> Self {
        EqualityConfig { term_cap: 1_000_000, prefilter_points: 2, seed: 0x5eed }
    }
}

/// A session that converts expressions to canonical factored form.
///
/// Factors and per-node results are cached across calls, so checking many
/// identities over the same expressions reuses work.
pub struct Canonicalizer {
    cfg: EqualityConfig,
    vars: BTreeMap<String, u32>,
    names: Vec<String>,
    factor_ids: BTreeMap<Poly, usize>,
    factors: Vec<Poly>,
    // The expression is kept alive so its address stays a valid key.
    memo: BTreeMap<usize, (Expr, Frac)>,
    rng: ChaCha8Rng,
}

const RESAMPLE_CAP: usize = 1000;

impl Canonicalizer {
    pub fn new(cfg: EqualityConfig) -> Self {
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        Canonicalizer {
            cfg,
            vars: BTreeMap::new(),
            names: Vec::new(),
            factor_ids: BTreeMap::new(),
            factors: Vec::new(),
            memo: BTreeMap::new(),
            rng,
        }
    }

    fn var_index(&mut self, name: &str) -> u32 {
        if let Some(&k) = self.vars.get(name) {
            return k;
        }
        let k = self.names.len() as u32;
        self.vars.insert(name.to_string(), k);
        self.names.push(name.to_string());
        k
    }

    fn intern(&mut self, p: Poly) -> usize {
        if let Some(&id) = self.factor_ids.get(&p) {
            return id;
        }
        let id = self.factors.len();
        self.factors.push(p.clone());
        self.factor_ids.insert(p, id);
        id
    }

    fn frac(&mut self, e: &Expr) -> Result<Frac, PosRatError> {
        if let Some((_, f)) = self.memo.get(&ptr(e)) {
            return Ok(f.clone());
        }
        let f = match e.node() {
            Node::Var(v) => {
                let k = self.var_index(v);
                let mut f = Frac::scalar(BigRational::one());
                f.mono.insert(k, 1);
                f
            }
            Node::Const(q) => Frac::scalar(q.clone()),
            Node::Prod(xs) => {
                let mut acc = Frac::scalar(BigRational::one());
                for x in xs {
                    acc = acc.mul(&self.frac(x)?);
                }
                acc
            }
            Node::Quot(a, b) => {
                let fa = self.frac(a)?;
                let fb = self.frac(b)?;
                fa.mul(&fb.pow(-1))
            }
            Node::Pow(b, k) => self.frac(b)?.pow(*k as i64),
            Node::Sum(xs) => {
                let mut parts = Vec::with_capacity(xs.len());
                for x in xs {
                    parts.push(self.frac(x)?);
                }
                self.add(&parts)?
            }
        };
        self.memo.insert(ptr(e), (e.clone(), f.clone()));
        Ok(f)
    }

    fn expand(&self, coeff: &BigInt, mono: &BTreeMap<u32, i64>, factors: &BTreeMap<usize, i64>) -> Result<Poly, PosRatError> {
        let cap = self.cfg.term_cap;
        let mut m: Mono = Vec::new();
        for (v, e) in mono {
            debug_assert!(*e >= 0);
            if m.len() <= *v as usize {
                m.resize(*v as usize + 1, 0);
            }
            m[*v as usize] = *e as u32;
        }
        let mut out = Poly::monomial(m, coeff.clone());
        // multiply small factors first to keep intermediates short
        let mut order: Vec<(usize, i64)> = factors.iter().map(|(k, e)| (*k, *e)).collect();
        order.sort_by_key(|(k, _)| self.factors[*k].len());
        for (k, e) in order {
            debug_assert!(e >= 0);
            let p = self.factors[k].pow(e as u32, cap)?;
            out = out.mul(&p, cap)?;
        }
        Ok(out)
    }

    fn add(&mut self, parts: &[Frac]) -> Result<Frac, PosRatError> {
        if parts.len() == 1 {
            return Ok(parts[0].clone());
        }
        let mut common = parts[0].clone();
        common.coeff = BigRational::one();
        for p in &parts[1..] {
            lower(&mut common.mono, &p.mono);
            lower(&mut common.factors, &p.factors);
        }
        let lcm = parts.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.coeff.denom()));
        let mut sum = Poly::default();
        for p in parts {
            let c = p.coeff.numer() * (&lcm / p.coeff.denom());
            let mut mono = p.mono.clone();
            merge(&mut mono, &common.mono, -1);
            let mut factors = p.factors.clone();
            merge(&mut factors, &common.factors, -1);
            let term = self.expand(&c, &mono, &factors)?;
            sum = sum.add(&term);
            if sum.len() > self.cfg.term_cap {
                return Err(PosRatError::ExpansionTooLarge { terms: sum.len(), cap: self.cfg.term_cap });
            }
        }
        assert!(!sum.is_empty(), "a sum of positive expressions cannot vanish");
        let (content, low, mut prim) = sum.normalize();
        let mut out = common;
        out.coeff = BigRational::new(content, lcm);
        for (k, e) in low.iter().enumerate() {
            if *e > 0 {
                *out.mono.entry(k as u32).or_insert(0) += *e as i64;
            }
        }
        out.mono.retain(|_, e| *e != 0);
        let dens: Vec<(usize, i64)> = out.factors.iter().filter(|(_, e)| **e < 0).map(|(k, e)| (*k, *e)).collect();
        for (id, mut e) in dens {
            while e < 0 && prim.len() > 1 {
                match prim.exact_div(&self.factors[id], self.cfg.term_cap) {
                    Some(q) => {
                        prim = q;
                        e += 1;
                    }
                    None => break,
                }
            }
            if e == 0 {
                out.factors.remove(&id);
            } else {
                out.factors.insert(id, e);
            }
        }
        if prim.len() > 1 {
            let id = self.intern(prim);
            let slot = out.factors.entry(id).or_insert(0);
            *slot += 1;
            if *slot == 0 {
                out.factors.remove(&id);
            }
        } else if let Some((m, c)) = prim.terms.into_iter().next() {
            // trial division can leave a bare monomial behind
            out.coeff *= BigRational::from_integer(c);
            for (k, e) in m.iter().enumerate() {
                if *e > 0 {
                    *out.mono.entry(k as u32).or_insert(0) += *e as i64;
                }
            }
            out.mono.retain(|_, e| *e != 0);
        }
        Ok(out)
    }

    fn split(&self, f: &Frac) -> Result<(Poly, Poly), PosRatError> {
        let num = self.expand(f.coeff.numer(), &pos(&f.mono), &pos(&f.factors))?;
        let den = self.expand(f.coeff.denom(), &neg(&f.mono), &neg(&f.factors))?;
        Ok((num, den))
    }

    /// Fully expanded numerator and denominator.
    pub fn sparse_fraction(&mut self, e: &Expr) -> Result<SparseFraction, PosRatError> {
        let f = self.frac(e)?;
        let (num, den) = self.split(&f)?;
        Ok(SparseFraction { vars: self.names.clone(), num, den })
    }

    fn sample_point(&mut self, vars: &[String]) -> BTreeMap<String, BigRational> {
        vars.iter()
            .map(|v| {
                let mut k: i64 = 0;
                while k == 0 {
                    k = self.rng.gen_range(-1_000_000..=1_000_000);
                }
                (v.clone(), BigRational::from_integer(BigInt::from(k)))
            })
            .collect()
    }

    /// `Some(false)` when a random point separates the two expressions.
    fn prefilter(&mut self, a: &Expr, b: &Expr) -> Option<bool> {
        let mut vars: Vec<String> = a.vars().into_iter().collect();
        vars.extend(b.vars());
        vars.sort();
        vars.dedup();
        for _ in 0..self.cfg.prefilter_points {
            for _ in 0..RESAMPLE_CAP {
                let p = self.sample_point(&vars);
                match (a.eval(&p), b.eval(&p)) {
                    (Ok(x), Ok(y)) => {
                        if x != y {
                            return Some(false);
                        }
                        break;
                    }
                    _ => continue,
                }
            }
        }
        None
    }

    /// True iff the two expressions denote the same rational function.
    pub fn equal(&mut self, a: &Expr, b: &Expr) -> Result<bool, PosRatError> {
        if ptr(a) == ptr(b) {
            return Ok(true);
        }
        if let Some(v) = self.prefilter(a, b) {
            return Ok(v);
        }
        let fa = self.frac(a)?;
        let fb = self.frac(b)?;
        let q = fa.mul(&fb.pow(-1));
        if q.is_one() {
            return Ok(true);
        }
        let (num, den) = self.split(&q)?;
        Ok(num == den)
    }
}

fn pos<K: Ord + Copy>(m: &BTreeMap<K, i64>) -> BTreeMap<K, i64> {
    m.iter().filter(|(_, e)| **e > 0).map(|(k, e)| (*k, *e)).collect()
}

fn neg<K: Ord + Copy>(m: &BTreeMap<K, i64>) -> BTreeMap<K, i64> {
    m.iter().filter(|(_, e)| **e < 0).map(|(k, e)| (*k, -*e)).collect()
}

fn lower<K: Ord + Copy>(into: &mut BTreeMap<K, i64>, other: &BTreeMap<K, i64>) {
    let keys: Vec<K> = into.keys().chain(other.keys()).copied().collect();
    for k in keys {
        let a = into.get(&k).copied().unwrap_or(0);
        let b = other.get(&k).copied().unwrap_or(0);
        let m = a.min(b);
        if m == 0 {
            into.remove(&k);
        } else {
            into.insert(k, m);
        }
    }
}

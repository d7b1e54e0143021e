//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored in ascending degree order; the representation is
//! canonical (empty vector for the zero polynomial, nonzero leading
//! coefficient otherwise). Besides arithmetic the module provides the exact
//! root machinery the window analysis is built on: Yun square-free
//! decomposition, Sturm-chain root counting and isolation, detection of
//! rational roots through the minimal-denominator rational of an isolating
//! interval, and certified range bounds from Bernstein coefficients.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rat::{midpoint, rat_int, simplest_in_closed, Rat};

/// Dense univariate polynomial over the rationals, `coeffs[i]` holding the
/// coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})x", c)?,
                _ => write!(f, "({})x^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl Poly {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// The indeterminate x.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    /// `a + b*x`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        Poly::from_coeffs(vec![a, b])
    }

    /// Construct from ascending-degree coefficients; trailing zeros stripped.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from i64 coefficients (ascending order).
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scalar_mul(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        }
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rat::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / rat_int((i + 1) as i64));
        }
        Poly::from_coeffs(coeffs)
    }

    /// `p(x + c)` by repeated synthetic division (exact Taylor shift).
    pub fn shift(&self, c: &Rat) -> Poly {
        if self.is_zero() || c.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut work = self.coeffs.clone();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            // Synthetic division of `work` by (x - (-c)) leaves the
            // remainder in work[0]; that remainder is the next coefficient.
            for i in (0..work.len() - 1).rev() {
                let t = &work[i + 1] * c;
                work[i] += t;
            }
            out.push(work.remove(0));
        }
        Poly::from_coeffs(out)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    /// Division with remainder. Panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead = d.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            for i in 0..=dd {
                let t = &q * &d.coeffs[i];
                rem[k + i] -= t;
            }
            rem.pop();
            quo[k] = q;
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quo), Poly::from_coeffs(rem))
    }

    /// Monic gcd (1 for coprime inputs, 0 only if both inputs are 0).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        match a.leading_coeff() {
            None => a,
            Some(lc) => {
                let inv = lc.recip();
                a.scalar_mul(&inv)
            }
        }
    }

    /// Yun square-free decomposition: returns `(f_i, i)` pairs with
    /// `self = lc * prod f_i^i`, each `f_i` monic square-free, pairwise
    /// coprime, and only classes with `deg f_i >= 1` listed.
    pub fn square_free_decomposition(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let monic = self.scalar_mul(&self.leading_coeff().unwrap().recip());
        let d = monic.derivative();
        let a0 = monic.gcd(&d);
        let mut b = monic.divrem(&a0).0;
        let mut c = d.divrem(&a0).0;
        let mut i = 1u32;
        loop {
            let db = b.derivative();
            let diff = &c - &db;
            let f = b.gcd(&diff);
            if f.degree().unwrap_or(0) >= 1 {
                out.push((f.clone(), i));
            }
            b = b.divrem(&f).0;
            c = diff.divrem(&f).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            i += 1;
        }
        out
    }

    /// Square-free part (product of the distinct irreducible factors).
    pub fn square_free_part(&self) -> Poly {
        let mut p = Poly::one();
        for (f, _) in self.square_free_decomposition() {
            p = &p * &f;
        }
        p
    }

    /// Multiplicity of the exact rational root `r` (0 if not a root).
    pub fn root_multiplicity(&self, r: &Rat) -> u32 {
        if self.is_zero() {
            return 0;
        }
        let mut m = 0u32;
        let mut p = self.clone();
        let divisor = Poly::linear(-r.clone(), Rat::one());
        while !p.is_zero() && p.eval(r).is_zero() {
            let (q, rem) = p.divrem(&divisor);
            debug_assert!(rem.is_zero());
            p = q;
            m += 1;
        }
        m
    }

    /// Clear denominators and integer content: the primitive integer
    /// polynomial with the same roots (positive leading coefficient).
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = num_integer::gcd(content, v.clone());
        }
        if ints.last().map(|c| c.is_negative()).unwrap_or(false) {
            content = -content;
        }
        for v in &mut ints {
            *v = &*v / &content;
        }
        ints
    }

    /// Sturm chain of the (assumed square-free is not required) polynomial.
    pub fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = Vec::new();
        if self.is_zero() {
            return chain;
        }
        chain.push(self.clone());
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        chain
    }

    /// Number of distinct real roots in the half-open interval `]lo, hi]`
    /// (Sturm's theorem; multiple roots counted once).
    pub fn count_roots_half_open(chain: &[Poly], lo: &Rat, hi: &Rat) -> usize {
        let v_lo = sign_variations(chain, lo);
        let v_hi = sign_variations(chain, hi);
        v_lo.saturating_sub(v_hi)
    }

    /// Isolating intervals for the distinct real roots of a square-free
    /// polynomial in the open interval `]lo, hi[`. Each returned entry is
    /// either an exact root (`Exact`) or an open interval with a strict
    /// sign change containing exactly one root. Roots at the endpoints are
    /// excluded.
    pub fn isolate_roots_open(&self, lo: &Rat, hi: &Rat) -> Vec<Isolation> {
        let chain = self.sturm_chain();
        let mut out = Vec::new();
        self.isolate_rec(&chain, lo.clone(), hi.clone(), &mut out);
        out.sort_by(|a, b| a.order_key().cmp(b.order_key()));
        out
    }

    fn isolate_rec(&self, chain: &[Poly], lo: Rat, hi: Rat, out: &mut Vec<Isolation>) {
        let n = Poly::count_roots_half_open(chain, &lo, &hi);
        let n = n - usize::from(self.eval(&hi).is_zero());
        if n == 0 {
            return;
        }
        if n == 1 {
            // Shrink until the endpoints are clean and the sign changes.
            let (mut l, mut h) = (lo, hi);
            loop {
                let fl = self.eval(&l);
                let fh = self.eval(&h);
                if !fl.is_zero() && !fh.is_zero() {
                    if (fl.is_positive() && fh.is_negative())
                        || (fl.is_negative() && fh.is_positive())
                    {
                        out.push(Isolation::Interval(l, h));
                        return;
                    }
                    // Single root strictly inside but no sign change cannot
                    // happen for a square-free polynomial.
                    unreachable!("square-free single-root interval without sign change");
                }
                let m = midpoint(&l, &h);
                if self.eval(&m).is_zero() {
                    out.push(Isolation::Exact(m));
                    return;
                }
                if Poly::count_roots_half_open(chain, &l, &m)
                    - usize::from(self.eval(&m).is_zero())
                    >= 1
                {
                    h = m;
                } else {
                    l = m;
                }
            }
        }
        let m = midpoint(&lo, &hi);
        if self.eval(&m).is_zero() {
            out.push(Isolation::Exact(m.clone()));
        }
        self.isolate_rec(chain, lo, m.clone(), out);
        self.isolate_rec(chain, m, hi, out);
    }

    /// Bernstein coefficient range bounds of the polynomial on `[lo, hi]`:
    /// returns `(min, max)` with `min <= p(x) <= max` on the interval.
    pub fn bernstein_bounds(&self, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
        assert!(lo <= hi);
        if self.is_zero() {
            return (Rat::zero(), Rat::zero());
        }
        if lo == hi {
            let v = self.eval(lo);
            return (v.clone(), v);
        }
        // Map [lo, hi] to [0, 1]: q(t) = p(lo + t*(hi - lo)).
        let width = hi - lo;
        let shifted = self.shift(lo);
        let n = shifted.coeffs.len() - 1;
        let mut scaled: Vec<Rat> = shifted.coeffs.clone();
        let mut w = Rat::one();
        for c in scaled.iter_mut() {
            *c *= &w;
            w *= &width;
        }
        // Bernstein coefficients: b_j = sum_i scaled[i] * C(j,i)/C(n,i).
        let mut binom = vec![vec![Rat::zero(); n + 1]; n + 1];
        for (j, row) in binom.iter_mut().enumerate() {
            row[0] = Rat::one();
            for i in 1..=j {
                let prev = row[i - 1].clone();
                row[i] = prev * rat_int((j - i + 1) as i64) / rat_int(i as i64);
            }
        }
        let mut min = None::<Rat>;
        let mut max = None::<Rat>;
        for j in 0..=n {
            let mut b = Rat::zero();
            for (i, c) in scaled.iter().enumerate().take(j + 1) {
                b += c * &binom[j][i] / &binom[n][i];
            }
            min = Some(match min {
                None => b.clone(),
                Some(m) => m.min(b.clone()),
            });
            max = Some(match max {
                None => b,
                Some(m) => m.max(b),
            });
        }
        (min.unwrap(), max.unwrap())
    }

    /// Certified positive rational lower bound for `|p|` on `[lo, hi]`,
    /// assuming `p` has no root there (returns `None` after `max_depth`
    /// subdivisions, which signals a root on the interval).
    pub fn min_abs_lower_bound(&self, lo: &Rat, hi: &Rat, max_depth: u32) -> Option<Rat> {
        let mut best: Option<Rat> = None;
        if !self.min_abs_rec(lo, hi, max_depth, &mut best) {
            return None;
        }
        best
    }

    fn min_abs_rec(&self, lo: &Rat, hi: &Rat, depth: u32, best: &mut Option<Rat>) -> bool {
        let (mn, mx) = self.bernstein_bounds(lo, hi);
        let bound = if mn.is_positive() {
            Some(mn)
        } else if mx.is_negative() {
            Some(-mx)
        } else {
            None
        };
        if let Some(b) = bound {
            *best = Some(match best.take() {
                None => b,
                Some(prev) => prev.min(b),
            });
            return true;
        }
        if depth == 0 {
            return false;
        }
        let m = midpoint(lo, hi);
        self.min_abs_rec(lo, &m, depth - 1, best) && self.min_abs_rec(&m, hi, depth - 1, best)
    }
}

/// Result of isolating one root.
#[derive(Debug, Clone)]
pub enum Isolation {
    /// The root is exactly this rational.
    Exact(Rat),
    /// Open interval with strict sign change containing exactly one root.
    Interval(Rat, Rat),
}

impl Isolation {
    fn order_key(&self) -> &Rat {
        match self {
            Isolation::Exact(r) => r,
            Isolation::Interval(l, _) => l,
        }
    }
}

/// Determinant of a square matrix of polynomials by fraction-free
/// (Bareiss) elimination; every division is exact.
fn det_poly_matrix(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev_pivot = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                let (q, r) = num.divrem(&prev_pivot);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = Poly::zero();
        }
        prev_pivot = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Resultant in `x` of two polynomials whose coefficients are themselves
/// polynomials (in an outer variable), via the Sylvester matrix.
fn resultant_x(p: &[Poly], q: &[Poly]) -> Poly {
    let m = p.len() - 1;
    let n = q.len() - 1;
    if m == 0 {
        // Res(c, q) = c^n.
        let mut r = Poly::one();
        for _ in 0..n {
            r = &r * &p[0];
        }
        return r;
    }
    if n == 0 {
        let mut r = Poly::one();
        for _ in 0..m {
            r = &r * &q[0];
        }
        return r;
    }
    let size = m + n;
    let mut mat = vec![vec![Poly::zero(); size]; size];
    for row in 0..n {
        for (j, c) in p.iter().enumerate() {
            mat[row][row + j] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in q.iter().enumerate() {
            mat[n + row][row + j] = c.clone();
        }
    }
    det_poly_matrix(mat)
}

/// A polynomial (in `t`) vanishing on every sum `z + w` of a root `z` of
/// `p` and a root `w` of `q`: the resultant in `x` of `p(x)` and `q(t-x)`.
pub fn sum_carrier_poly(p: &Poly, q: &Poly) -> Poly {
    assert!(!p.is_zero() && !q.is_zero());
    let dp = p.degree().unwrap();
    let dq = q.degree().unwrap();
    // p(x) with constant-in-t coefficients, highest x-degree first entry
    // convention: store ascending in x like everywhere else.
    let p_in_x: Vec<Poly> = (0..=dp).map(|i| Poly::constant(p.coeff(i))).collect();
    // q(t - x) = sum_j q_j (t - x)^j; coefficient of x^i is
    // sum_{j>=i} q_j * C(j, i) * (-1)^i * t^(j-i).
    let mut q_in_x: Vec<Poly> = Vec::with_capacity(dq + 1);
    for i in 0..=dq {
        let mut coeffs_t = vec![Rat::zero(); dq - i + 1];
        for j in i..=dq {
            let qj = q.coeff(j);
            if qj.is_zero() {
                continue;
            }
            let mut binom = Rat::one();
            // C(j, i)
            for step in 0..i {
                binom = binom * rat_int((j - step) as i64) / rat_int((step + 1) as i64);
            }
            let signed = if i % 2 == 1 { -binom } else { binom };
            coeffs_t[j - i] = qj * signed;
        }
        q_in_x.push(Poly::from_coeffs(coeffs_t));
    }
    // The Sylvester convention wants descending exponent layout; the
    // helper indexes via offsets, so pass descending.
    let p_desc: Vec<Poly> = p_in_x.into_iter().rev().collect();
    let q_desc: Vec<Poly> = q_in_x.into_iter().rev().collect();
    resultant_x(&p_desc, &q_desc)
}

/// Sign variation count of a Sturm chain at a point (zeros skipped).
pub fn sign_variations(chain: &[Poly], x: &Rat) -> usize {
    let mut last: Option<bool> = None;
    let mut v = 0;
    for p in chain {
        let val = p.eval(x);
        if val.is_zero() {
            continue;
        }
        let s = val.is_positive();
        if let Some(prev) = last {
            if prev != s {
                v += 1;
            }
        }
        last = Some(s);
    }
    v
}

/// A root of a square-free polynomial located in an interval, produced by
/// [`real_roots_in`]: exact rational location or an isolating interval.
#[derive(Debug, Clone)]
pub enum LocatedRoot {
    Rational(Rat),
    /// Square-free carrier polynomial plus a strict-sign-change isolating
    /// open interval. The carrier is shared so downstream algebraic values
    /// stay cheap to clone.
    Algebraic {
        poly: Arc<Poly>,
        lo: Rat,
        hi: Rat,
    },
}

/// All real roots of `p` in the **closed** interval `[lo, hi]` with
/// multiplicities, rational roots identified exactly.
pub fn real_roots_in(p: &Poly, lo: &Rat, hi: &Rat) -> Vec<(LocatedRoot, u32)> {
    assert!(!p.is_zero(), "root finding on the zero polynomial");
    let mut out: Vec<(LocatedRoot, u32)> = Vec::new();
    for (f, mult) in p.square_free_decomposition() {
        // Endpoint roots first (the isolation below is on the open interval).
        if f.eval(lo).is_zero() {
            out.push((LocatedRoot::Rational(lo.clone()), mult));
        }
        if hi != lo && f.eval(hi).is_zero() {
            out.push((LocatedRoot::Rational(hi.clone()), mult));
        }
        if lo == hi {
            continue;
        }
        let mut shared: Option<Arc<Poly>> = None;
        for iso in f.isolate_roots_open(lo, hi) {
            match iso {
                Isolation::Exact(r) => out.push((LocatedRoot::Rational(r), mult)),
                Isolation::Interval(mut l, mut h) => {
                    // A rational root q = s/t of the primitive integer form
                    // has t dividing the leading coefficient L. Refining the
                    // isolating interval below width 1/(2 L^2) leaves room
                    // for at most one rational with denominator <= L, and
                    // the minimal-denominator rational of the interval finds
                    // it if it exists.
                    let ints = f.primitive_integer();
                    let lead = Rat::from_integer(ints.last().unwrap().clone());
                    let target = (lead.clone() * lead).recip() / rat_int(2);
                    let mut exact: Option<Rat> = None;
                    while &h - &l >= target {
                        let m = midpoint(&l, &h);
                        let fm = f.eval(&m);
                        if fm.is_zero() {
                            exact = Some(m);
                            break;
                        }
                        let fl = f.eval(&l);
                        if fl.is_positive() != fm.is_positive() {
                            h = m;
                        } else {
                            l = m;
                        }
                    }
                    if exact.is_none() {
                        let cand = simplest_in_closed(&l, &h);
                        if f.eval(&cand).is_zero() {
                            exact = Some(cand);
                        }
                    }
                    match exact {
                        Some(r) => out.push((LocatedRoot::Rational(r), mult)),
                        None => {
                            let poly = shared
                                .get_or_insert_with(|| Arc::new(f.clone()))
                                .clone();
                            out.push((
                                LocatedRoot::Algebraic { poly, lo: l, hi: h },
                                mult,
                            ));
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| cmp_located(&a.0, &b.0));
    out
}

fn cmp_located(a: &LocatedRoot, b: &LocatedRoot) -> Ordering {
    let lo = |r: &LocatedRoot| match r {
        LocatedRoot::Rational(q) => q.clone(),
        LocatedRoot::Algebraic { lo, .. } => lo.clone(),
    };
    // Roots from different square-free classes are distinct; interval
    // overlap across classes is broken arbitrarily but deterministically.
    lo(a).cmp(&lo(b))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

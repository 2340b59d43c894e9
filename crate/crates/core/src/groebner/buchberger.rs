use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ideal::Ideal;
use crate::error::{Error, Result};
use crate::polyalg::{divides, is_coprime, MonomialOrder, Polynomial, Rational, VariableRing};

/// Default cap on reduction steps for one basis computation.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct GbConfig {
    /// Reduction steps (single leading-term cancellations, S-polynomial
    /// formations included) allowed before giving up.
    pub step_budget: u64,
}

impl Default for GbConfig {
    fn default() -> Self {
        Self {
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub steps: u64,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_skipped: usize,
}

/// Reduced Gröbner basis: monic, interreduced, sorted by ascending leading
/// monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<VariableRing>,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    stats: GbStats,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<VariableRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the ideal is the whole ring.
    pub fn is_one(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    /// Unique normal form of `f` modulo the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let f = f.with_order(&self.order);
        if self.elements.is_empty() {
            return Ok(f);
        }
        Ok(f.divmod(&self.elements)?.1)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks Buchberger's criterion directly: every S-polynomial of the
    /// basis reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> Result<bool> {
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j], &self.order)?;
                if !self.normal_form(&s)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Monic, and no term of any element divisible by another leading
    /// monomial.
    pub fn is_reduced(&self) -> bool {
        let lms: Vec<&[u32]> = self
            .elements
            .iter()
            .map(|g| g.leading_exps().unwrap())
            .collect();
        self.elements.iter().enumerate().all(|(i, g)| {
            g.leading_coeff().is_some_and(|c| c.is_one())
                && g.terms().all(|(_, e)| {
                    lms.iter()
                        .enumerate()
                        .all(|(j, lm)| j == i || !divides(lm, e))
                })
        })
    }

    /// Text dump: a header naming the order and the variable priority, then
    /// one element per line.
    pub fn dump(&self) -> String {
        let pr: Vec<&str> = self
            .order
            .priority()
            .iter()
            .map(|&v| self.ring.name(v))
            .collect();
        let mut s = format!("# order: {}\n# priority: {}\n", self.order, pr.join(" > "));
        for g in &self.elements {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

/// `S(f, g) = (L/lt(f)) f - (L/lt(g)) g` with `L` the lcm of the leading
/// monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Result<Polynomial> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::MalformedInput("S-polynomial of a zero polynomial".into()));
    }
    let f = f.with_order(order);
    let g = g.with_order(order);
    let (fl, gl) = (f.leading_exps().unwrap(), g.leading_exps().unwrap());
    let l: Vec<u32> = fl.iter().zip(gl).map(|(a, b)| *a.max(b)).collect();
    let sf: Vec<u32> = l.iter().zip(fl).map(|(a, b)| a - b).collect();
    let sg: Vec<u32> = l.iter().zip(gl).map(|(a, b)| a - b).collect();
    let a = f.mul_monomial(&sf).scale(&f.leading_coeff().unwrap().recip());
    let b = g.mul_monomial(&sg).scale(&g.leading_coeff().unwrap().recip());
    a.checked_sub(&b)
}

pub fn groebner_basis(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    groebner_basis_with(ideal, order, &GbConfig::default())
}

/// Buchberger's algorithm with the Gebauer-Möller pair criteria and the
/// sugar selection strategy, over primitive integer polynomials.
pub fn groebner_basis_with(
    ideal: &Ideal,
    order: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<GroebnerBasis> {
    let ring = ideal.ring().clone();
    if order.arity() != ring.arity() {
        return Err(Error::MalformedInput(format!(
            "order of arity {} for {}",
            order.arity(),
            ring
        )));
    }
    let mut eng = Engine::new(ring.arity(), order, cfg.step_budget);
    let mut inputs: Vec<WPoly> = ideal
        .generators()
        .iter()
        .map(|g| WPoly::from_poly(&g.with_order(order)))
        .collect();
    inputs.sort_by(|a, b| {
        order
            .compare(a.lm(eng.n), b.lm(eng.n))
            .then(a.len().cmp(&b.len()))
    });
    let elements = match eng.run(inputs)? {
        Outcome::One => vec![Polynomial::one(&ring, order)],
        Outcome::Basis(ws) => ws.into_iter().map(|w| w.to_poly(&ring, order)).collect(),
    };
    Ok(GroebnerBasis {
        ring,
        order: order.clone(),
        elements,
        stats: eng.stats,
    })
}

/// Working polynomial: integer coefficients, flat exponents, sorted
/// descending. Kept primitive with positive leading coefficient between
/// reductions.
#[derive(Clone, Debug)]
struct WPoly {
    coeffs: Vec<BigInt>,
    exps: Vec<u32>,
}

impl WPoly {
    fn from_poly(p: &Polynomial) -> Self {
        let (_, ints) = p.integer_coeffs();
        let mut exps = Vec::with_capacity(p.len() * p.arity());
        for (_, e) in p.terms() {
            exps.extend_from_slice(e);
        }
        let mut w = WPoly { coeffs: ints, exps };
        w.normalize();
        w
    }

    fn len(&self) -> usize {
        self.coeffs.len()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn exps(&self, i: usize, n: usize) -> &[u32] {
        &self.exps[i * n..(i + 1) * n]
    }

    fn lm(&self, n: usize) -> &[u32] {
        self.exps(0, n)
    }

    fn is_constant(&self, n: usize) -> bool {
        self.len() == 1 && self.lm(n).iter().all(|&e| e == 0)
    }

    fn normalize(&mut self) {
        if self.coeffs.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        let neg = self.coeffs[0].is_negative();
        if !g.is_one() || neg {
            let g = if neg { -g } else { g };
            for c in &mut self.coeffs {
                *c = &*c / &g;
            }
        }
    }

    fn to_poly(&self, ring: &Arc<VariableRing>, order: &MonomialOrder) -> Polynomial {
        let n = ring.arity();
        let lc = Rational::from_integer(self.coeffs[0].clone());
        let raw = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Rational::from_integer(c.clone()) / &lc, self.exps(i, n).to_vec()))
            .collect();
        Polynomial::from_raw(ring.clone(), order.clone(), raw)
    }
}

struct Elem {
    poly: WPoly,
    lm: Vec<u32>,
    mask: u128,
    sugar: u32,
    active: bool,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u32>,
    sugar: u32,
}

enum Outcome {
    One,
    Basis(Vec<WPoly>),
}

struct Engine<'a> {
    n: usize,
    order: &'a MonomialOrder,
    budget: u64,
    basis: Vec<Elem>,
    pairs: Vec<Pair>,
    stats: GbStats,
}

fn mask_of(e: &[u32]) -> u128 {
    let mut m = 0u128;
    for (v, &x) in e.iter().enumerate() {
        if x > 0 {
            m |= 1u128 << (v % 128);
        }
    }
    m
}

fn lcm_of(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl<'a> Engine<'a> {
    fn new(n: usize, order: &'a MonomialOrder, budget: u64) -> Self {
        Self {
            n,
            order,
            budget,
            basis: Vec::new(),
            pairs: Vec::new(),
            stats: GbStats::default(),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.stats.steps += 1;
        if self.stats.steps > self.budget {
            return Err(Error::ResourceExhausted {
                steps: self.stats.steps,
                basis_len: self.basis.iter().filter(|e| e.active).count(),
                pending_pairs: self.pairs.len(),
            });
        }
        Ok(())
    }

    fn run(&mut self, inputs: Vec<WPoly>) -> Result<Outcome> {
        for w in inputs {
            let sugar = (0..w.len()).map(|i| degree(w.exps(i, self.n))).max().unwrap_or(0);
            let h = self.reduce(w, None)?;
            if h.is_zero() {
                continue;
            }
            if h.is_constant(self.n) {
                return Ok(Outcome::One);
            }
            self.insert(h, sugar);
        }
        while let Some(k) = self.select() {
            let pair = self.pairs.swap_remove(k);
            let s = self.spoly(pair.i, pair.j, &pair.lcm)?;
            self.stats.pairs_reduced += 1;
            let h = self.reduce(s, None)?;
            if h.is_zero() {
                self.stats.zero_reductions += 1;
                continue;
            }
            if h.is_constant(self.n) {
                return Ok(Outcome::One);
            }
            self.insert(h, pair.sugar);
        }
        self.interreduce()
    }

    /// Pair with least (sugar, lcm, indices).
    fn select(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, p) in self.pairs.iter().enumerate() {
            best = match best {
                None => Some(k),
                Some(b) => {
                    let q = &self.pairs[b];
                    let ord = p
                        .sugar
                        .cmp(&q.sugar)
                        .then_with(|| self.order.compare(&p.lcm, &q.lcm))
                        .then(p.j.cmp(&q.j))
                        .then(p.i.cmp(&q.i));
                    if ord == Ordering::Less {
                        Some(k)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }

    fn insert(&mut self, h: WPoly, sugar: u32) {
        let lm = h.lm(self.n).to_vec();
        let idx = self.basis.len();
        self.basis.push(Elem {
            mask: mask_of(&lm),
            lm,
            poly: h,
            sugar,
            active: true,
        });
        self.update(idx);
    }

    /// Gebauer-Möller update after adding basis element `h`.
    fn update(&mut self, h: usize) {
        let hl = self.basis[h].lm.clone();
        let cand: Vec<(usize, Vec<u32>, bool)> = (0..h)
            .filter(|&i| self.basis[i].active)
            .map(|i| {
                let l = lcm_of(&self.basis[i].lm, &hl);
                (i, l, is_coprime(&self.basis[i].lm, &hl))
            })
            .collect();
        let before = cand.len();
        let mut kept: Vec<(usize, Vec<u32>, bool)> = Vec::new();
        for (k, (i, l, cop)) in cand.iter().enumerate() {
            let dominated = || {
                cand[k + 1..].iter().any(|(_, l2, _)| divides(l2, l))
                    || kept.iter().any(|(_, l2, _)| divides(l2, l))
            };
            if *cop || !dominated() {
                kept.push((*i, l.clone(), *cop));
            }
        }
        let old = self.pairs.len();
        let basis = &self.basis;
        self.pairs.retain(|p| {
            !(divides(&hl, &p.lcm)
                && lcm_of(&basis[p.i].lm, &hl) != p.lcm
                && lcm_of(&basis[p.j].lm, &hl) != p.lcm)
        });
        let retained = self.pairs.len();
        let hs = self.basis[h].sugar;
        let hd = degree(&hl);
        for (i, l, cop) in kept {
            if cop {
                continue;
            }
            let ld = degree(&l);
            let e = &self.basis[i];
            let sugar = (e.sugar + ld - degree(&e.lm)).max(hs + ld - hd);
            self.pairs.push(Pair {
                i,
                j: h,
                lcm: l,
                sugar,
            });
        }
        let added = self.pairs.len() - retained;
        self.stats.pairs_skipped += (old - retained) + (before - added);
        for i in 0..h {
            if self.basis[i].active && divides(&hl, &self.basis[i].lm) {
                self.basis[i].active = false;
            }
        }
    }

    fn spoly(&mut self, i: usize, j: usize, l: &[u32]) -> Result<WPoly> {
        self.tick()?;
        let (f, g) = (&self.basis[i], &self.basis[j]);
        let sf: Vec<u32> = l.iter().zip(&f.lm).map(|(a, b)| a - b).collect();
        let sg: Vec<u32> = l.iter().zip(&g.lm).map(|(a, b)| a - b).collect();
        let (lf, lg) = (&f.poly.coeffs[0], &g.poly.coeffs[0]);
        let d = lf.gcd(lg);
        let a = lg / &d;
        let b = lf / &d;
        let mut s = combine(
            self.order,
            self.n,
            (&a, &f.poly, 1, Some(&sf)),
            (&b, &g.poly, 1, Some(&sg)),
        );
        s.normalize();
        Ok(s)
    }

    fn find_reducer(&self, m: &[u32], skip: Option<usize>) -> Option<usize> {
        let mm = mask_of(m);
        let mut best: Option<usize> = None;
        for (k, e) in self.basis.iter().enumerate() {
            if !e.active || Some(k) == skip || e.mask & !mm != 0 || !divides(&e.lm, m) {
                continue;
            }
            if best.is_none_or(|b| e.poly.len() < self.basis[b].poly.len()) {
                best = Some(k);
            }
        }
        best
    }

    /// Full reduction by the active elements (other than `skip`).
    fn reduce(&mut self, mut p: WPoly, skip: Option<usize>) -> Result<WPoly> {
        let n = self.n;
        let mut pos = 0;
        let mut since = 0u32;
        while pos < p.len() {
            let m = p.exps(pos, n).to_vec();
            let Some(k) = self.find_reducer(&m, skip) else {
                pos += 1;
                continue;
            };
            self.tick()?;
            let g = &self.basis[k].poly;
            let shift: Vec<u32> = m.iter().zip(&self.basis[k].lm).map(|(a, b)| a - b).collect();
            let (lp, lg) = (&p.coeffs[pos], &g.coeffs[0]);
            let d = lp.gcd(lg);
            let a = lg / &d;
            let b = lp / &d;
            let mut out = WPoly {
                coeffs: Vec::with_capacity(p.len() + g.len()),
                exps: Vec::with_capacity((p.len() + g.len()) * n),
            };
            for i in 0..pos {
                out.coeffs.push(if a.is_one() { p.coeffs[i].clone() } else { &p.coeffs[i] * &a });
                out.exps.extend_from_slice(p.exps(i, n));
            }
            let tail = combine(self.order, n, (&a, &p, pos + 1, None), (&b, g, 1, Some(&shift)));
            out.coeffs.extend(tail.coeffs);
            out.exps.extend(tail.exps);
            p = out;
            since += 1;
            if since >= 8 {
                p.normalize();
                since = 0;
            }
        }
        p.normalize();
        Ok(p)
    }

    fn interreduce(&mut self) -> Result<Outcome> {
        let act: Vec<usize> = (0..self.basis.len()).filter(|&k| self.basis[k].active).collect();
        let mut out = Vec::with_capacity(act.len());
        for &k in &act {
            let p = self.basis[k].poly.clone();
            out.push(self.reduce(p, Some(k))?);
        }
        let n = self.n;
        out.sort_by(|a, b| self.order.compare(a.lm(n), b.lm(n)));
        Ok(Outcome::Basis(out))
    }
}

/// `a * x^sp * p[ps..] - b * x^sq * q[qs..]` as a merged sorted term list.
fn combine(
    order: &MonomialOrder,
    n: usize,
    (a, p, ps, sp): (&BigInt, &WPoly, usize, Option<&[u32]>),
    (b, q, qs, sq): (&BigInt, &WPoly, usize, Option<&[u32]>),
) -> WPoly {
    let cap = p.len() + q.len();
    let mut coeffs = Vec::with_capacity(cap);
    let mut exps = Vec::with_capacity(cap * n);
    let fill = |buf: &mut [u32], w: &WPoly, i: usize, s: Option<&[u32]>| {
        let e = w.exps(i, n);
        match s {
            Some(s) => {
                for k in 0..n {
                    buf[k] = e[k] + s[k];
                }
            }
            None => buf.copy_from_slice(e),
        }
    };
    let mut bp = vec![0u32; n];
    let mut bq = vec![0u32; n];
    let (mut i, mut j) = (ps, qs);
    if i < p.len() {
        fill(&mut bp, p, i, sp);
    }
    if j < q.len() {
        fill(&mut bq, q, j, sq);
    }
    let a_one = a.is_one();
    while i < p.len() || j < q.len() {
        let ord = if i >= p.len() {
            Ordering::Less
        } else if j >= q.len() {
            Ordering::Greater
        } else {
            order.compare(&bp, &bq)
        };
        match ord {
            Ordering::Greater => {
                coeffs.push(if a_one { p.coeffs[i].clone() } else { a * &p.coeffs[i] });
                exps.extend_from_slice(&bp);
                i += 1;
                if i < p.len() {
                    fill(&mut bp, p, i, sp);
                }
            }
            Ordering::Less => {
                coeffs.push(-(b * &q.coeffs[j]));
                exps.extend_from_slice(&bq);
                j += 1;
                if j < q.len() {
                    fill(&mut bq, q, j, sq);
                }
            }
            Ordering::Equal => {
                let c = a * &p.coeffs[i] - b * &q.coeffs[j];
                if !c.is_zero() {
                    coeffs.push(c);
                    exps.extend_from_slice(&bp);
                }
                i += 1;
                j += 1;
                if i < p.len() {
                    fill(&mut bp, p, i, sp);
                }
                if j < q.len() {
                    fill(&mut bq, q, j, sq);
                }
            }
        }
    }
    WPoly { coeffs, exps }
}

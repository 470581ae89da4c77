//! Standard bases of ideals in the local ring via Mora's tangent-cone normal
//! form.
//!
//! Polynomials are kept sorted ascending, so the initial term (order minimum)
//! plays the role of the leading term of a local degree ordering in which `1`
//! is the largest monomial. Reduction cancels initial terms; when the chosen
//! reducer has larger écart than the current remainder, the remainder joins
//! the reducer pool, which is what makes the division terminate.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::One;
use serde::Serialize;

use crate::algebra::{same_ring, Exponent, OrderSpec, Poly, Ring, Q};
use crate::diagram::{exponents_upto, Diagram};
use crate::error::{Error, Result};

/// Default limit on the reducer pool of a single run.
pub const DEFAULT_POOL_CEILING: usize = 10_000;
/// Default limit on the reduction steps of a single normal form.
pub const DEFAULT_STEP_CEILING: usize = 1_000;

#[derive(Clone, Debug)]
pub struct SbOptions {
    pub pool_ceiling: usize,
    pub step_ceiling: usize,
    /// Express every basis element as a polynomial combination of the inputs.
    pub track_cofactors: bool,
}

impl Default for SbOptions {
    fn default() -> Self {
        SbOptions {
            pool_ceiling: DEFAULT_POOL_CEILING,
            step_ceiling: DEFAULT_STEP_CEILING,
            track_cofactors: false,
        }
    }
}

impl SbOptions {
    pub fn with_ceiling(pool_ceiling: usize) -> Self {
        SbOptions {
            pool_ceiling,
            ..Default::default()
        }
    }
}

/// Bookkeeping of one normal-form computation.
///
/// With `reducers = g_1..g_r` the result `h` satisfies
/// `unit·f = h - Σ cofactors_i·g_i` where `unit` has a nonzero constant term.
#[derive(Clone, Debug)]
pub struct NormalFormTrace {
    pub steps: usize,
    pub pool_additions: usize,
    pub unit: Poly,
    pub cofactors: Option<Vec<Poly>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PairOutcome {
    Zero,
    NewElement(usize),
    /// Discarded by the product or chain criterion without reduction.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    /// Indices in order of creation; retired elements keep their index.
    pub pair: (usize, usize),
    pub lcm: Exponent,
    pub steps: usize,
    pub pool_additions: usize,
    pub outcome: PairOutcome,
}

/// A computed standard basis together with its diagram.
#[derive(Clone, Debug)]
pub struct SBasis {
    generators: Vec<Poly>,
    basis: Vec<Poly>,
    /// Position of each basis element in the trace numbering.
    labels: Vec<usize>,
    diagram: Diagram,
    order: OrderSpec,
    trace: Vec<PairRecord>,
    representations: Option<Vec<Vec<Poly>>>,
    limits: Limits,
}

struct PoolEntry {
    poly: Poly,
    ecart: u64,
    unit: Option<Poly>,
    cofactors: Option<Vec<Poly>>,
}

#[derive(Debug)]
struct Tracked {
    h: Poly,
    unit: Poly,
    cofactors: Option<Vec<Poly>>,
    steps: usize,
    pool_additions: usize,
}

#[derive(Clone, Copy, Debug)]
struct Limits {
    pool: usize,
    steps: usize,
}

impl Limits {
    const DEFAULT: Limits = Limits {
        pool: DEFAULT_POOL_CEILING,
        steps: DEFAULT_STEP_CEILING,
    };

    fn of(opts: &SbOptions) -> Self {
        Limits {
            pool: opts.pool_ceiling,
            steps: opts.step_ceiling,
        }
    }
}

/// Monomials known to lie in the ideal: those of weighted length at least
/// `corner` and the multiples of `monomials`.
#[derive(Clone, Debug, Default)]
struct Cut {
    corner: Option<u64>,
    monomials: Vec<Exponent>,
}

impl Cut {
    fn corner(k: u64) -> Self {
        Cut {
            corner: Some(k),
            monomials: Vec::new(),
        }
    }

    fn is_empty(&self) -> bool {
        self.corner.is_none() && self.monomials.is_empty()
    }

    fn drop_multiples(&self, p: &mut Poly) {
        if !self.monomials.is_empty() {
            p.retain_terms(|e| !self.monomials.iter().any(|m| m.divides(e)));
        }
    }

    fn apply(&self, p: &mut Poly) {
        if let Some(k) = self.corner {
            p.truncate_weighted(k);
        }
        self.drop_multiples(p);
    }
}

#[derive(Clone, Copy, Default)]
struct NfMode<'a> {
    track_unit: bool,
    /// Cofactors over the initial reducers.
    track_cofactors: bool,
    /// Terms in the cut lie in the ideal and are dropped. Only valid without
    /// tracking.
    cut: Option<&'a Cut>,
    /// Keep the remainder primitive.
    normalize: bool,
}

impl NfMode<'_> {
    const PLAIN: NfMode<'static> = NfMode {
        track_unit: false,
        track_cofactors: false,
        cut: None,
        normalize: false,
    };
}

fn nf_mora(f: &Poly, reducers: &[Poly], limits: Limits, mode: NfMode) -> Result<Tracked> {
    let NfMode {
        track_unit,
        track_cofactors,
        cut,
        normalize,
    } = mode;
    debug_assert!(cut.is_none() || !(track_unit || track_cofactors));
    let ring = f.ring();
    let n = reducers.len();
    let zero_vec = || vec![Poly::zero(ring); n];
    let mut pool: Vec<PoolEntry> = reducers
        .iter()
        .enumerate()
        .map(|(i, g)| PoolEntry {
            poly: g.clone(),
            ecart: g.weighted_ecart(),
            unit: None,
            cofactors: track_cofactors.then(|| {
                let mut v = zero_vec();
                v[i] = Poly::one(ring);
                v
            }),
        })
        .collect();
    let mut h = f.clone();
    if let Some(cut) = cut {
        cut.apply(&mut h);
    }
    let mut unit = Poly::one(ring);
    let mut cofactors = track_cofactors.then(zero_vec);
    let mut steps = 0;
    let mut pool_additions = 0;
    let ord = ring.order();

    while let Ok(lead) = h.initial_exponent() {
        let lead = lead.clone();
        let best = pool
            .iter()
            .enumerate()
            .filter(|(_, e)| e.poly.initial_exponent().is_ok_and(|g| g.divides(&lead)))
            .min_by(|(ia, a), (ib, b)| {
                a.ecart
                    .cmp(&b.ecart)
                    .then_with(|| {
                        ord.cmp(
                            a.poly.initial_exponent().unwrap(),
                            b.poly.initial_exponent().unwrap(),
                        )
                    })
                    .then(ia.cmp(ib))
            })
            .map(|(i, _)| i);
        let Some(idx) = best else { break };
        if steps >= limits.steps {
            return Err(Error::StepCeiling {
                limit: limits.steps,
            });
        }

        let h_ecart = h.weighted_ecart();
        if pool[idx].ecart > h_ecart {
            if pool.len() >= limits.pool {
                return Err(Error::PoolCeiling { limit: limits.pool });
            }
            pool.push(PoolEntry {
                poly: h.clone(),
                ecart: h_ecart,
                unit: track_unit.then(|| unit.clone()),
                cofactors: cofactors.clone(),
            });
            pool_additions += 1;
        }

        let g = &pool[idx];
        let g_lead = g.poly.initial_term().expect("nonzero reducer");
        let shift = g_lead
            .exponent
            .quotient(&lead)
            .expect("reducer divides the initial exponent");
        let c = h.initial_coefficient().expect("nonzero") / &g_lead.coefficient;
        h = h.sub_scaled_shift(&g.poly, &shift, &c);
        if track_unit {
            if let Some(gu) = &g.unit {
                unit = unit.sub_scaled_shift(gu, &shift, &c);
            }
        }
        if let (Some(acc), Some(gc)) = (cofactors.as_mut(), g.cofactors.as_ref()) {
            for (a, b) in acc.iter_mut().zip(gc) {
                if !b.is_zero() {
                    *a = a.sub_scaled_shift(b, &shift, &c);
                }
            }
        }
        if let Some(cut) = cut {
            cut.apply(&mut h);
        }
        if normalize {
            let (p, factor) = h.primitive();
            h = p;
            if track_unit {
                unit = unit.scalar_mul(&factor);
            }
            if let Some(acc) = cofactors.as_mut() {
                for a in acc.iter_mut() {
                    *a = a.scalar_mul(&factor);
                }
            }
        }
        steps += 1;
    }
    Ok(Tracked {
        h,
        unit,
        cofactors,
        steps,
        pool_additions,
    })
}

fn ordered_ring(ring: &Ring, ord: &OrderSpec) -> Result<Ring> {
    if ring.order() == ord {
        Ok(ring.clone())
    } else {
        ring.reordered(ord.clone())
    }
}

fn common_ring<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Result<Option<Ring>> {
    let mut ring: Option<Ring> = None;
    for p in polys {
        match &ring {
            None => ring = Some(p.ring().clone()),
            Some(r) if !same_ring(r, p.ring()) => return Err(Error::RingMismatch),
            Some(_) => {}
        }
    }
    Ok(ring)
}

/// Mora normal form of `f` with respect to `reducers` in the order `ord`.
///
/// The remainder is returned in a ring sorted by `ord`. Its initial exponent,
/// when nonzero, is divisible by no reducer's initial exponent.
pub fn mora_normal_form(
    f: &Poly,
    reducers: &[Poly],
    ord: &OrderSpec,
) -> Result<(Poly, NormalFormTrace)> {
    if reducers.iter().any(Poly::is_zero) {
        return Err(Error::ZeroReducer);
    }
    common_ring(std::iter::once(f).chain(reducers))?;
    let ring = ordered_ring(f.ring(), ord)?;
    let f = f.reorder(&ring)?;
    let reducers: Vec<Poly> = reducers
        .iter()
        .map(|g| g.reorder(&ring))
        .collect::<Result<_>>()?;
    let t = nf_mora(
        &f,
        &reducers,
        Limits::DEFAULT,
        NfMode {
            track_unit: true,
            track_cofactors: true,
            ..NfMode::PLAIN
        },
    )?;
    Ok((
        t.h,
        NormalFormTrace {
            steps: t.steps,
            pool_additions: t.pool_additions,
            unit: t.unit,
            cofactors: t.cofactors,
        },
    ))
}

fn s_poly(a: &Poly, b: &Poly) -> (Poly, Exponent, (Exponent, Q), (Exponent, Q)) {
    let ta = a.initial_term().expect("nonzero");
    let tb = b.initial_term().expect("nonzero");
    let lcm = ta.exponent.lcm(&tb.exponent);
    let sa = ta.exponent.quotient(&lcm).unwrap();
    let sb = tb.exponent.quotient(&lcm).unwrap();
    let ca = ta.coefficient.recip();
    let cb = tb.coefficient.recip();
    let s = a.mul_term(&sa, &ca).sub_scaled_shift(b, &sb, &cb);
    (s, lcm, (sa, ca), (sb, cb))
}

/// Computes a standard basis of the ideal generated by `gens` in the local
/// ring, with respect to `ord`.
pub fn standard_basis(gens: &[Poly], ord: &OrderSpec) -> Result<SBasis> {
    standard_basis_with(gens, ord, &SbOptions::default())
}

pub fn standard_basis_with(gens: &[Poly], ord: &OrderSpec, opts: &SbOptions) -> Result<SBasis> {
    let known = if opts.track_cofactors {
        Cut::default()
    } else {
        certified_cut(gens, ord, opts)?
    };
    build(gens, ord, opts, &known, true)
}

// Both certificates rest on the basis of I + m^N, which is cheap because
// everything at or beyond N is dropped from the start. Its diagram agrees
// with that of I below N.
//
// Corner: if every monomial of weighted length in [K, K + λ) lies in that
// diagram with K + λ ≤ N, where λ is the largest weight, then
// m^K ⊆ I + m·m^K and Nakayama gives m^K ⊆ I.
//
// Monomials: let L be generated by the vertices below N. If L ⊆ I + m·L,
// Nakayama gives L ⊆ I. The membership test drops multiples of m·L.
fn certified_cut(gens: &[Poly], ord: &OrderSpec, opts: &SbOptions) -> Result<Cut> {
    let lambda = u64::from(ord.weights().iter().copied().max().unwrap_or(1));
    let d = gens
        .iter()
        .flat_map(|g| g.terms().iter().map(|t| ord.weighted_length(&t.exponent)))
        .max()
        .unwrap_or(0);
    if d == 0 || ord.arity() == 0 {
        return Ok(Cut::default());
    }
    let n = d + lambda;
    let sb = match build(gens, ord, opts, &Cut::corner(n), false) {
        Ok(sb) => sb,
        Err(Error::PoolCeiling { .. } | Error::StepCeiling { .. }) => return Ok(Cut::default()),
        Err(e) => return Err(e),
    };
    if sb.diagram.is_full() {
        return Ok(Cut::default());
    }
    let below = u32::try_from(n - 1).unwrap_or(u32::MAX);
    let k = sb
        .diagram
        .complement_upto(below)
        .iter()
        .map(|e| ord.weighted_length(e))
        .filter(|&l| l < n)
        .map(|l| l + 1)
        .max()
        .unwrap_or(0);
    if k + lambda <= n {
        return Ok(Cut::corner(k));
    }

    let l: Vec<Exponent> = sb
        .diagram
        .vertices()
        .iter()
        .filter(|v| ord.weighted_length(v) < n)
        .cloned()
        .collect();
    if l.is_empty() {
        return Ok(Cut::default());
    }
    let shifted = Cut {
        corner: None,
        monomials: l
            .iter()
            .flat_map(|v| (0..ord.arity()).map(move |i| v + &Exponent::axis(ord.arity(), i, 1)))
            .collect(),
    };
    let check = match build(gens, ord, opts, &shifted, true) {
        Ok(sb) => sb,
        Err(Error::PoolCeiling { .. } | Error::StepCeiling { .. }) => return Ok(Cut::default()),
        Err(e) => return Err(e),
    };
    let Some(ring) = check.basis.first().map(Poly::ring) else {
        return Ok(Cut::default());
    };
    let mode = NfMode {
        cut: Some(&shifted),
        ..NfMode::PLAIN
    };
    for v in &l {
        if !check.diagram.contains(v)? {
            return Ok(Cut::default());
        }
        let x = Poly::monomial(ring, v.clone(), Q::one());
        match nf_mora(&x, &check.basis, Limits::of(opts), mode) {
            Ok(t) if t.h.is_zero() => {}
            Ok(_) | Err(Error::PoolCeiling { .. } | Error::StepCeiling { .. }) => {
                return Ok(Cut::default())
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Cut {
        corner: None,
        monomials: l,
    })
}

// Every monomial in `known` lies in the ideal. With `seed` the generators of
// the cut are added to the basis so that the diagram sees them.
fn build(
    gens: &[Poly],
    ord: &OrderSpec,
    opts: &SbOptions,
    known: &Cut,
    seed: bool,
) -> Result<SBasis> {
    let Some(ring) = common_ring(gens)? else {
        return Ok(SBasis {
            generators: Vec::new(),
            basis: Vec::new(),
            labels: Vec::new(),
            diagram: Diagram::empty(ord.arity()),
            order: ord.clone(),
            trace: Vec::new(),
            representations: opts.track_cofactors.then(Vec::new),
            limits: Limits::of(opts),
        });
    };
    if ord.arity() != ring.arity() {
        return Err(Error::ArityMismatch {
            expected: ring.arity(),
            found: ord.arity(),
        });
    }
    let oring = ordered_ring(&ring, ord)?;
    let inputs: Vec<Poly> = gens
        .iter()
        .map(|g| g.reorder(&oring))
        .collect::<Result<_>>()?;
    let k = inputs.len();

    let mut basis: Vec<Poly> = Vec::new();
    let mut reps: Option<Vec<Vec<Poly>>> = opts.track_cofactors.then(Vec::new);
    for (i, g) in inputs.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let (p, factor) = g.primitive();
        basis.push(p);
        if let Some(reps) = reps.as_mut() {
            let mut r = vec![Poly::zero(&oring); k];
            r[i] = Poly::constant(&oring, factor);
            reps.push(r);
        }
    }
    let nonzero = !basis.is_empty();
    if !known.monomials.is_empty() {
        basis.iter_mut().for_each(|b| known.drop_multiples(b));
        basis.retain(|b| !b.is_zero());
    }
    if seed && nonzero {
        for m in &known.monomials {
            basis.push(Poly::monomial(&oring, m.clone(), Q::one()));
        }
    }
    if let (Some(corner), true, true) = (known.corner, seed, nonzero) {
        let lambda = u64::from(ord.weights().iter().copied().max().unwrap_or(1));
        let top = u32::try_from(corner + lambda - 1).unwrap_or(u32::MAX);
        for e in exponents_upto(ord.arity(), top) {
            let l = ord.weighted_length(&e);
            if l >= corner && l < corner + lambda {
                basis.push(Poly::monomial(&oring, e, Q::one()));
            }
        }
    }

    let mut trace = Vec::new();
    let mut alive = vec![true];
    // a unit generates everything
    if let Some(u) = basis.iter().position(Poly::is_unit) {
        let unit = basis.swap_remove(u);
        basis = vec![unit];
        if let Some(reps) = reps.as_mut() {
            let r = reps.swap_remove(u);
            *reps = vec![r];
        }
    } else {
        let mut cut = Cut {
            corner: None,
            monomials: known.monomials.clone(),
        };
        if reps.is_none() {
            basis.iter_mut().for_each(strip_unit_factor);
            cut.corner = apply_corner(&mut basis, ord, known.corner)?;
        }
        alive = vec![true; basis.len()];
        let mut pairs: BTreeSet<PairKey> = BTreeSet::new();
        for j in 0..basis.len() {
            for i in 0..j {
                pairs.insert(PairKey::new(&basis, i, j, ord));
            }
        }
        while let Some(key) = pairs.pop_first() {
            let (i, j) = (key.i, key.j);
            if !alive[i] || !alive[j] {
                continue;
            }
            if skip_pair(&basis, &alive, &pairs, &key, ord) {
                trace.push(PairRecord {
                    pair: (i, j),
                    lcm: key.lcm,
                    steps: 0,
                    pool_additions: 0,
                    outcome: PairOutcome::Skipped,
                });
                continue;
            }
            let (s, lcm, (sa, ca), (sb, cb)) = s_poly(&basis[i], &basis[j]);
            let tracking = reps.is_some();
            let mode = NfMode {
                track_unit: tracking,
                track_cofactors: tracking,
                cut: (!tracking && !cut.is_empty()).then_some(&cut),
                normalize: !tracking,
            };
            let t = if tracking {
                nf_mora(&s, &basis, Limits::of(opts), mode)?
            } else {
                let live: Vec<Poly> = basis
                    .iter()
                    .zip(&alive)
                    .filter(|(_, a)| **a)
                    .map(|(b, _)| b.clone())
                    .collect();
                nf_mora(&s, &live, Limits::of(opts), mode)?
            };
            // once the pair is reduced, a multiple lies in the ideal of the rest
            if !tracking {
                let (ei, ej) = (
                    basis[i].initial_exponent().expect("nonzero"),
                    basis[j].initial_exponent().expect("nonzero"),
                );
                if ei.divides(ej) {
                    alive[j] = false;
                } else if ej.divides(ei) {
                    alive[i] = false;
                }
            }
            let outcome = if t.h.is_zero() {
                PairOutcome::Zero
            } else {
                let (h, factor) = t.h.primitive();
                if let Some(reps) = reps.as_mut() {
                    let cof = t.cofactors.as_ref().expect("tracked");
                    let rep = (0..k)
                        .map(|c| {
                            // h = unit·s + Σ cof_l·b_l, s = ca·x^sa·b_i − cb·x^sb·b_j
                            let mut acc = reps[i][c].mul_term(&sa, &ca).sub_scaled_shift(
                                &reps[j][c],
                                &sb,
                                &cb,
                            );
                            acc = &t.unit * &acc;
                            for (l, cl) in cof.iter().enumerate() {
                                if !cl.is_zero() {
                                    acc = &acc + &(cl * &reps[l][c]);
                                }
                            }
                            acc.scalar_mul(&factor)
                        })
                        .collect();
                    reps.push(rep);
                }
                let unit = h.is_unit();
                basis.push(h);
                alive.push(true);
                let new = basis.len() - 1;
                if unit {
                    trace.push(PairRecord {
                        pair: (i, j),
                        lcm,
                        steps: t.steps,
                        pool_additions: t.pool_additions,
                        outcome: PairOutcome::NewElement(new),
                    });
                    break;
                }
                if reps.is_none() {
                    strip_unit_factor(basis.last_mut().expect("pushed"));
                    cut.corner = apply_corner(&mut basis, ord, known.corner)?;
                }
                for a in (0..new).filter(|a| alive[*a]) {
                    pairs.insert(PairKey::new(&basis, a, new, ord));
                }
                PairOutcome::NewElement(new)
            };
            trace.push(PairRecord {
                pair: (i, j),
                lcm,
                steps: t.steps,
                pool_additions: t.pool_additions,
                outcome,
            });
        }
    }

    let labels: Vec<usize> = (0..basis.len()).filter(|l| alive[*l]).collect();
    let basis: Vec<Poly> = labels.iter().map(|l| basis[*l].clone()).collect();
    let diagram = Diagram::from_exponents(
        ring.arity(),
        basis.iter().map(|b| b.initial_exponent().expect("nonzero")),
    )?;
    Ok(SBasis {
        generators: gens.to_vec(),
        basis,
        labels,
        diagram,
        order: ord.clone(),
        trace,
        representations: reps,
        limits: Limits::of(opts),
    })
}

// Product criterion: for coprime leads m, n and tails r, q the s-polynomial
// is r·g − q·f, a standard representation unless in(r)·n = in(q)·m. Chain
// criterion: some k with in(k) | lcm whose pairs with i and j are done.
fn skip_pair(
    basis: &[Poly],
    alive: &[bool],
    pending: &BTreeSet<PairKey>,
    key: &PairKey,
    ord: &OrderSpec,
) -> bool {
    let (i, j) = (key.i, key.j);
    let (ei, ej) = (
        basis[i].initial_exponent().expect("nonzero"),
        basis[j].initial_exponent().expect("nonzero"),
    );
    let coprime = ei
        .entries()
        .iter()
        .zip(ej.entries())
        .all(|(a, b)| *a == 0 || *b == 0);
    if coprime {
        let tail_lead = |p: &Poly| p.terms().get(1).map(|t| t.exponent.clone());
        match (tail_lead(&basis[i]), tail_lead(&basis[j])) {
            (Some(ri), Some(rj)) if &ri + ej == &rj + ei => {}
            _ => return true,
        }
    }
    let is_pending = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        pending.contains(&PairKey::new(basis, a, b, ord))
    };
    (0..basis.len()).any(|k| {
        k != i
            && k != j
            && alive[k]
            && basis[k]
                .initial_exponent()
                .expect("nonzero")
                .divides(&key.lcm)
            && !is_pending(i, k)
            && !is_pending(j, k)
    })
}

// A monomial times a unit generates the same ideal as the monomial. Its
// leading exponent is that monomial, so queued pairs stay valid.
fn strip_unit_factor(b: &mut Poly) {
    if b.len() > 1 {
        let lead = b.initial_exponent().expect("nonzero").clone();
        if b.terms().iter().all(|t| lead.divides(&t.exponent)) {
            *b = Poly::monomial(b.ring(), lead, Q::one());
        }
    }
}

// Once the leading exponents leave a finite complement, every monomial at or
// beyond the corner is in the ideal. Tails there are dropped and elements
// that lie entirely there become their leading monomial. Leading exponents
// are unchanged, so queued pairs stay valid.
fn apply_corner(basis: &mut [Poly], ord: &OrderSpec, known: Option<u64>) -> Result<Option<u64>> {
    let arity = ord.arity();
    let d = Diagram::from_exponents(
        arity,
        basis.iter().map(|b| b.initial_exponent().expect("nonzero")),
    )?;
    let Some(k) = [d.weighted_corner(ord), known].into_iter().flatten().min() else {
        return Ok(None);
    };
    for b in basis.iter_mut() {
        let lead = b.initial_exponent().expect("nonzero").clone();
        if ord.weighted_length(&lead) >= k {
            if b.len() > 1 {
                *b = Poly::monomial(b.ring(), lead, Q::one());
            }
        } else {
            b.truncate_weighted(k);
        }
    }
    Ok(Some(k))
}

#[derive(PartialEq, Eq)]
struct PairKey {
    lcm: Exponent,
    weighted: u64,
    i: usize,
    j: usize,
}

impl PairKey {
    fn new(basis: &[Poly], i: usize, j: usize, ord: &OrderSpec) -> Self {
        let lcm = basis[i]
            .initial_exponent()
            .unwrap()
            .lcm(basis[j].initial_exponent().unwrap());
        PairKey {
            weighted: ord.weighted_length(&lcm),
            lcm,
            i,
            j,
        }
    }
}

impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weighted
            .cmp(&other.weighted)
            .then_with(|| self.lcm.entries().cmp(other.lcm.entries()))
            .then(self.i.cmp(&other.i))
            .then(self.j.cmp(&other.j))
    }
}

impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl SBasis {
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Basis elements, sorted in the ring reordered by [`SBasis::order`].
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn trace(&self) -> &[PairRecord] {
        &self.trace
    }

    /// When cofactors were tracked: `basis[k] = Σ_j rep[k][j]·generators[j]`.
    pub fn representations(&self) -> Option<&[Vec<Poly>]> {
        self.representations.as_deref()
    }

    /// One basis element per diagram vertex.
    pub fn minimal_basis(&self) -> Vec<&Poly> {
        self.diagram
            .vertices()
            .iter()
            .map(|v| {
                self.basis
                    .iter()
                    .find(|b| b.initial_exponent().unwrap() == v)
                    .expect("every vertex comes from a basis element")
            })
            .collect()
    }

    /// Normal form of `f` against the basis.
    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        let Some(ring) = self.basis.first().map(|b| b.ring().clone()) else {
            return Ok(f.clone());
        };
        let f = f.reorder(&ring)?;
        Ok(nf_mora(&f, &self.basis, self.limits, NfMode::PLAIN)?.h)
    }

    /// Ideal membership in the local ring.
    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Re-checks that every generator and every s-pair reduces to zero.
    pub fn verify(&self) -> Result<bool> {
        for g in &self.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        for j in 0..self.basis.len() {
            for i in 0..j {
                let (s, ..) = s_poly(&self.basis[i], &self.basis[j]);
                if !nf_mora(&s, &self.basis, self.limits, NfMode::PLAIN)?
                    .h
                    .is_zero()
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Human-readable reduction log. No stable format.
    pub fn trace_text(&self) -> String {
        let mut out = String::new();
        for (k, b) in self.labels.iter().zip(&self.basis) {
            let _ = writeln!(out, "g{k} = {b}");
        }
        for r in &self.trace {
            let outcome = match r.outcome {
                PairOutcome::Zero => "0".to_string(),
                PairOutcome::NewElement(k) => format!("new g{k}"),
                PairOutcome::Skipped => "skipped".to_string(),
            };
            let _ = writeln!(
                out,
                "pair ({}, {}) lcm {} steps {} pool +{} -> {outcome}",
                r.pair.0, r.pair.1, r.lcm, r.steps, r.pool_additions
            );
        }
        out
    }
}

/// Diagram of initial exponents of the ideal generated by `gens`.
pub fn diagram_of_ideal(gens: &[Poly], ord: &OrderSpec) -> Result<Diagram> {
    Ok(standard_basis(gens, ord)?.diagram)
}

pub fn diagram_of_ideal_with(gens: &[Poly], ord: &OrderSpec, opts: &SbOptions) -> Result<Diagram> {
    Ok(standard_basis_with(gens, ord, opts)?.diagram)
}

//! Finite groups of monomial matrices over the roots of unity.
//!
//! An element is a permutation together with one angle per coordinate, the
//! angle being an exact fraction in `[0, 1)` read as `exp(2*pi*i*angle)`. The
//! matrix convention is fixed once and used everywhere:
//!
//! `M[perm(i), i] = exp(2*pi*i * angles[i])`
//!
//! i.e. column `i` carries its phase into row `perm(i)`. Products, inverses,
//! eigenvalue angles, ages and closures all follow from this convention and
//! are computed exactly; no floating point enters the engine.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::scalar::{fr_int, int, mod1, Frac, Scalar};
use crate::{Int, DEFAULT_CAP};

/// An element of Q/Z: a reduced fraction in `[0, 1)` under addition mod 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle<I: Scalar = Int>(Frac<I>);

impl<I: Scalar> Angle<I> {
    /// Wrap any fraction into `[0, 1)`.
    pub fn new(x: Frac<I>) -> Self {
        Angle(mod1(&x))
    }

    pub fn zero() -> Self {
        Angle(Frac::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Angle::new(&self.0 + &rhs.0)
    }

    pub fn neg(&self) -> Self {
        Angle::new(-self.0.clone())
    }

    pub fn as_frac(&self) -> &Frac<I> {
        &self.0
    }

    /// Additive order: the denominator of the reduced fraction.
    pub fn order(&self) -> I {
        self.0.denom().clone()
    }
}

impl<I: Scalar> fmt::Display for Angle<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A monomial matrix: permutation plus per-coordinate angles.
///
/// The derived ordering (permutation word first, then angles) is the
/// canonical key used for dedup, class representatives and reporting.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialElement<I: Scalar = Int> {
    perm: Vec<usize>,
    angles: Vec<Angle<I>>,
}

impl<I: Scalar> MonomialElement<I> {
    pub fn new(perm: Vec<usize>, angles: Vec<Angle<I>>) -> Result<Self, Error> {
        if perm.len() != angles.len() {
            return Err(Error::DimensionMismatch(perm.len(), angles.len()));
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidElement(format!("not a permutation of 0..{n}: {perm:?}")));
            }
            seen[p] = true;
        }
        Ok(MonomialElement { perm, angles })
    }

    pub fn identity(n: usize) -> Self {
        MonomialElement { perm: (0..n).collect(), angles: vec![Angle::zero(); n] }
    }

    pub fn diagonal(angles: Vec<Angle<I>>) -> Self {
        let n = angles.len();
        MonomialElement { perm: (0..n).collect(), angles }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn angles(&self) -> &[Angle<I>] {
        &self.angles
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
            && self.angles.iter().all(|a| a.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn multiply(&self, rhs: &Self) -> Result<Self, Error> {
        let n = self.dim();
        if n != rhs.dim() {
            return Err(Error::DimensionMismatch(n, rhs.dim()));
        }
        let perm = (0..n).map(|i| self.perm[rhs.perm[i]]).collect();
        let angles = (0..n)
            .map(|i| rhs.angles[i].add(&self.angles[rhs.perm[i]]))
            .collect();
        Ok(MonomialElement { perm, angles })
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0usize; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
        }
        let angles = (0..n).map(|j| self.angles[perm[j]].neg()).collect();
        MonomialElement { perm, angles }
    }

    /// Eigenvalue angles as a sorted multiset. A permutation cycle of length
    /// `l` whose angles sum to `s` contributes `(s + j)/l mod 1` for
    /// `j = 0..l-1`.
    pub fn eigen_angles(&self) -> Vec<Angle<I>> {
        let n = self.dim();
        let mut seen = vec![false; n];
        let mut out: Vec<Angle<I>> = Vec::with_capacity(n);
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle_sum = Frac::zero();
            let mut len = 0i64;
            let mut i = start;
            loop {
                seen[i] = true;
                cycle_sum = cycle_sum + self.angles[i].as_frac();
                len += 1;
                i = self.perm[i];
                if i == start {
                    break;
                }
            }
            let l = fr_int::<I>(len);
            for j in 0..len {
                out.push(Angle::new((&cycle_sum + fr_int::<I>(j)) / l.clone()));
            }
        }
        out.sort();
        out
    }

    /// Sum of the eigenvalue angles; the degree shift of the sector fixed by
    /// this element.
    pub fn age(&self) -> Frac<I> {
        let mut acc = Frac::zero();
        for a in self.eigen_angles() {
            acc = acc + a.as_frac();
        }
        acc
    }

    /// `sum (1 - theta)` over nonzero eigenvalue angles, defined relative to
    /// an ambient exponent `m` that the element order must divide. Equals
    /// `age` of the inverse.
    pub fn shift_w(&self, m: &I) -> Result<Frac<I>, Error> {
        let ord = self.order();
        if !m.clone().mod_floor(&ord).is_zero() {
            return Err(Error::OrderDoesNotDivide { order: ord.to_string(), m: m.to_string() });
        }
        let mut acc = Frac::zero();
        for a in self.eigen_angles() {
            if !a.is_zero() {
                acc = acc + (Frac::one() - a.as_frac());
            }
        }
        Ok(acc)
    }

    /// Dimension of the fixed subspace: multiplicity of eigenvalue 1.
    pub fn fixed_dim(&self) -> usize {
        self.eigen_angles().iter().filter(|a| a.is_zero()).count()
    }

    /// Multiplicative order: lcm of the eigenvalue angle denominators.
    pub fn order(&self) -> I {
        let mut m = I::one();
        for a in self.eigen_angles() {
            m = m.lcm(&a.order());
        }
        m
    }

    /// Angle of the determinant: sum of eigenvalue angles mod 1.
    pub fn det_angle(&self) -> Angle<I> {
        Angle::new(self.age())
    }

    /// Generator-syntax rendering, also used as a canonical label.
    pub fn to_syntax(&self) -> String {
        let angles = self
            .angles
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        if self.is_diagonal() {
            format!("diag({angles})")
        } else {
            let perm = self
                .perm
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            format!("mono(perm = [{perm}]; angles = [{angles}])")
        }
    }
}

/// A finite monomial matrix group, closed under multiplication, with its
/// elements in canonical order.
#[derive(Clone, Debug)]
pub struct MonomialGroup<I: Scalar = Int> {
    dim: usize,
    generators: Vec<MonomialElement<I>>,
    elements: Vec<MonomialElement<I>>,
    exponent: I,
}

/// One conjugacy class: lexicographically minimal representative, sorted
/// members, and the centralizer order `|G| / |class|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass<I: Scalar = Int> {
    pub representative: MonomialElement<I>,
    pub members: Vec<MonomialElement<I>>,
    pub centralizer_order: usize,
}

impl<I: Scalar> MonomialGroup<I> {
    /// Breadth-first closure of the generators. Fails once more than `cap`
    /// distinct elements appear.
    pub fn close(n: usize, generators: Vec<MonomialElement<I>>, cap: u64) -> Result<Self, Error> {
        for g in &generators {
            if g.dim() != n {
                return Err(Error::DimensionMismatch(n, g.dim()));
            }
        }
        let id = MonomialElement::identity(n);
        let mut seen: BTreeSet<MonomialElement<I>> = BTreeSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for e in &frontier {
                for g in &generators {
                    let p = g.multiply(e)?;
                    if !seen.contains(&p) {
                        if seen.len() as u64 >= cap {
                            return Err(Error::GroupTooLarge { cap });
                        }
                        seen.insert(p.clone());
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        let elements: Vec<_> = seen.into_iter().collect();
        let mut exponent = I::one();
        for e in &elements {
            exponent = exponent.lcm(&e.order());
        }
        Ok(MonomialGroup { dim: n, generators, elements, exponent })
    }

    pub fn close_default(n: usize, generators: Vec<MonomialElement<I>>) -> Result<Self, Error> {
        Self::close(n, generators, DEFAULT_CAP)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in canonical (sorted) order; the identity comes first.
    pub fn elements(&self) -> &[MonomialElement<I>] {
        &self.elements
    }

    pub fn generators(&self) -> &[MonomialElement<I>] {
        &self.generators
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> &I {
        &self.exponent
    }

    pub fn contains(&self, e: &MonomialElement<I>) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    pub fn is_diagonal(&self) -> bool {
        self.elements.iter().all(|e| e.is_diagonal())
    }

    /// True when every element's eigenvalue angles sum to an integer, i.e.
    /// all determinants are 1.
    pub fn is_sl(&self) -> bool {
        self.elements.iter().all(|e| e.det_angle().is_zero())
    }

    /// Conjugacy classes sorted by representative key.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass<I>> {
        let mut assigned: BTreeSet<MonomialElement<I>> = BTreeSet::new();
        let mut classes = Vec::new();
        for e in &self.elements {
            if assigned.contains(e) {
                continue;
            }
            let mut members: BTreeSet<MonomialElement<I>> = BTreeSet::new();
            for x in &self.elements {
                let conj = x
                    .multiply(e)
                    .and_then(|xe| xe.multiply(&x.inverse()))
                    .expect("dimensions agree inside a group");
                members.insert(conj);
            }
            for m in &members {
                assigned.insert(m.clone());
            }
            let members: Vec<_> = members.into_iter().collect();
            debug_assert_eq!(self.order() % members.len(), 0);
            classes.push(ConjugacyClass {
                representative: members[0].clone(),
                centralizer_order: self.order() / members.len(),
                members,
            });
        }
        classes
    }

    /// For a diagonal group: the angle vector of every element, in element
    /// order. `None` if some element permutes coordinates.
    pub fn angle_vectors(&self) -> Option<Vec<Vec<Frac<I>>>> {
        if !self.is_diagonal() {
            return None;
        }
        Some(
            self.elements
                .iter()
                .map(|e| e.angles().iter().map(|a| a.as_frac().clone()).collect())
                .collect(),
        )
    }
}

// ---- Generator text syntax ----

/// Parse one generator in the forms
/// `diag(a1/b1, ..., an/bn)`,
/// `mono(perm = [i0, ...]; angles = [a1/b1, ...])`, or
/// `cyclic r : w1, ..., wn` (the diagonal with angles `wi/r`).
pub fn parse_generator(s: &str) -> Result<MonomialElement<Int>, Error> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
        let angles = parse_frac_list(inner)?
            .into_iter()
            .map(Angle::new)
            .collect::<Vec<_>>();
        if angles.is_empty() {
            return Err(Error::InvalidElement("diag(...) needs at least one angle".into()));
        }
        return Ok(MonomialElement::diagonal(angles));
    }
    if let Some(inner) = t.strip_prefix("mono(").and_then(|r| r.strip_suffix(')')) {
        let mut perm: Option<Vec<usize>> = None;
        let mut angles: Option<Vec<Angle<Int>>> = None;
        for part in inner.split(';') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidElement(format!("expected key = value in '{part}'")))?;
            let value = value.trim();
            let value = value
                .strip_prefix('[')
                .and_then(|v| v.strip_suffix(']'))
                .ok_or_else(|| Error::InvalidElement(format!("expected [...] after '{}'", key.trim())))?;
            match key.trim() {
                "perm" => {
                    let mut p = Vec::new();
                    for tok in split_commas(value) {
                        p.push(tok.parse::<usize>().map_err(|_| {
                            Error::InvalidElement(format!("bad permutation entry '{tok}'"))
                        })?);
                    }
                    perm = Some(p);
                }
                "angles" => {
                    angles = Some(parse_frac_list(value)?.into_iter().map(Angle::new).collect());
                }
                other => {
                    return Err(Error::InvalidElement(format!("unknown key '{other}' in mono(...)")));
                }
            }
        }
        let perm = perm.ok_or_else(|| Error::InvalidElement("mono(...) is missing perm".into()))?;
        let angles =
            angles.ok_or_else(|| Error::InvalidElement("mono(...) is missing angles".into()))?;
        return MonomialElement::new(perm, angles);
    }
    if let Some(rest) = t.strip_prefix("cyclic") {
        let (order, weights) = rest
            .split_once(':')
            .ok_or_else(|| Error::InvalidElement("expected 'cyclic r : w1, ..., wn'".into()))?;
        let r = order
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::InvalidElement(format!("bad cyclic order '{}'", order.trim())))?;
        if r < 1 {
            return Err(Error::InvalidElement(format!("cyclic order must be >= 1, got {r}")));
        }
        let mut angles = Vec::new();
        for tok in split_commas(weights) {
            let w = tok
                .parse::<i64>()
                .map_err(|_| Error::InvalidElement(format!("bad cyclic weight '{tok}'")))?;
            angles.push(Angle::new(Frac::new(int(w), int(r))));
        }
        if angles.is_empty() {
            return Err(Error::InvalidElement("cyclic needs at least one weight".into()));
        }
        return Ok(MonomialElement::diagonal(angles));
    }
    Err(Error::InvalidElement(format!("unrecognized generator '{t}'")))
}

/// Parse a fraction `a/b` or integer `a`.
pub fn parse_frac(tok: &str) -> Result<Frac<Int>, Error> {
    let tok = tok.trim();
    let parse_int = |s: &str| -> Result<Int, Error> {
        s.trim()
            .parse::<i64>()
            .map(int)
            .map_err(|_| Error::InvalidElement(format!("bad number '{s}'")))
    };
    match tok.split_once('/') {
        None => Ok(Frac::from_integer(parse_int(tok)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::InvalidElement(format!("zero denominator in '{tok}'")));
            }
            Ok(Frac::new(parse_int(n)?, den))
        }
    }
}

fn parse_frac_list(s: &str) -> Result<Vec<Frac<Int>>, Error> {
    split_commas(s).map(|tok| parse_frac(tok)).collect()
}

fn split_commas(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

//! Simplicial fans over refined lattices and their exact E-polynomials.
//!
//! A refined lattice is a finite-index refinement `N` of `Z^d` inside `Q^d`,
//! stored by its canonical Hermite basis so that equal lattices compare
//! equal. A fan is a list of primitive rays in `N` together with simplicial
//! maximal cones; construction validates that every pair of cones meets in a
//! common face and closes the collection under faces. Cone multiplicities,
//! box elements (residues of the ray sublattice inside `N`) and the coarse
//! and stringy E-polynomials are computed exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::epoly::MotivicClass;
use crate::error::Error;
use crate::linalg::{content, hnf_cols, snf, QMat, ZMat};
use crate::scalar::{Frac, Scalar};
use crate::{Int, DEFAULT_CAP};

/// A finite-index refinement `N` of `Z^d` in `Q^d`, always containing `Z^d`.
///
/// The basis is kept as a gcd-reduced pair `(H, denom)` with `H` the column
/// Hermite form of `denom * N`, which makes the representation canonical:
/// two values compare equal exactly when they describe the same lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedLattice<I: Scalar = Int> {
    dim: usize,
    denom: I,
    basis_int: ZMat<I>,
}

impl<I: Scalar> RefinedLattice<I> {
    /// The standard lattice `Z^d`.
    pub fn standard(dim: usize) -> Self {
        RefinedLattice { dim, denom: I::one(), basis_int: ZMat::identity(dim) }
    }

    /// The lattice generated by `Z^d` together with the given rational
    /// vectors.
    pub fn from_generators(dim: usize, extra: &[Vec<Frac<I>>]) -> Result<Self, Error> {
        for g in extra {
            if g.len() != dim {
                return Err(Error::DimensionMismatch(dim, g.len()));
            }
        }
        if dim == 0 {
            return Ok(Self::standard(0));
        }
        let mut denom = I::one();
        for g in extra {
            for x in g {
                denom = denom.lcm(x.denom());
            }
        }
        let mut cols: Vec<Vec<I>> = Vec::with_capacity(dim + extra.len());
        for i in 0..dim {
            let mut e = vec![I::zero(); dim];
            e[i] = denom.clone();
            cols.push(e);
        }
        for g in extra {
            cols.push(
                g.iter()
                    .map(|x| {
                        let s = x.clone() * Frac::from_integer(denom.clone());
                        debug_assert!(s.is_integer());
                        s.to_integer()
                    })
                    .collect(),
            );
        }
        let mut h = hnf_cols(&ZMat::from_cols(cols))?;
        let mut g = denom.clone();
        for i in 0..dim {
            for j in 0..dim {
                g = g.gcd(h.at(i, j));
            }
        }
        if g > I::one() {
            for i in 0..dim {
                for j in 0..dim {
                    let q = h.at(i, j).div_floor(&g);
                    *h.at_mut(i, j) = q;
                }
            }
            denom = denom.div_floor(&g);
        }
        Ok(RefinedLattice { dim, denom, basis_int: h })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_standard(&self) -> bool {
        self.denom.is_one() && self.basis_int == ZMat::identity(self.dim)
    }

    /// Basis vectors as columns of a rational matrix.
    pub(crate) fn basis(&self) -> QMat<I> {
        let mut q = self.basis_int.to_qmat();
        let d = Frac::from_integer(self.denom.clone());
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = q.at(i, j).clone() / d.clone();
                *q.at_mut(i, j) = v;
            }
        }
        q
    }

    /// Index of `Z^d` inside this lattice.
    pub fn index_over_standard(&self) -> I {
        let mut num = I::one();
        let mut den = I::one();
        for i in 0..self.dim {
            num = num * self.denom.clone();
            den = den * self.basis_int.at(i, i).clone();
        }
        debug_assert!(num.clone().mod_floor(&den).is_zero());
        num.div_floor(&den)
    }

    /// Coordinates of `v` in the lattice basis, rational for any `v`.
    pub fn rational_coords(&self, v: &[Frac<I>]) -> Result<Vec<Frac<I>>, Error> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        self.basis()
            .solve(v)
            .ok_or_else(|| Error::Internal("lattice basis is singular".into()))
    }

    /// Coordinates of `v` if it is a lattice point.
    pub fn integer_coords(&self, v: &[Frac<I>]) -> Result<Option<Vec<I>>, Error> {
        let q = self.rational_coords(v)?;
        if q.iter().all(|x| x.is_integer()) {
            Ok(Some(q.into_iter().map(|x| x.to_integer()).collect()))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, v: &[Frac<I>]) -> Result<bool, Error> {
        Ok(self.integer_coords(v)?.is_some())
    }

    /// Ambient vector with the given basis coordinates.
    pub fn to_ambient(&self, coords: &[I]) -> Vec<Frac<I>> {
        let c: Vec<Frac<I>> = coords.iter().map(|x| Frac::from_integer(x.clone())).collect();
        self.basis().mul_vec(&c)
    }

    /// The first lattice point on the ray through `v`.
    pub fn primitive(&self, v: &[Frac<I>]) -> Result<Vec<Frac<I>>, Error> {
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::Internal("zero vector has no primitive representative".into()));
        }
        let x = self.rational_coords(v)?;
        let mut l = I::one();
        for c in &x {
            l = l.lcm(c.denom());
        }
        let lq = Frac::from_integer(l);
        let w: Vec<I> = x.iter().map(|c| (c.clone() * lq.clone()).to_integer()).collect();
        let g = content(&w);
        let coords: Vec<I> = w.into_iter().map(|c| c.div_floor(&g)).collect();
        Ok(self.to_ambient(&coords))
    }
}

/// A simplicial cone, stored as a strictly increasing list of ray indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    rays: Vec<usize>,
}

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Result<Self, Error> {
        rays.sort_unstable();
        for w in rays.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidFan(format!("repeated ray index {}", w[0])));
            }
        }
        Ok(Cone { rays })
    }

    pub fn zero() -> Self {
        Cone { rays: Vec::new() }
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.rays.iter().all(|r| other.rays.binary_search(r).is_ok())
    }

    fn faces(&self) -> Vec<Cone> {
        let k = self.rays.len();
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u32..(1 << k) {
            let rays = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| self.rays[i]).collect();
            out.push(Cone { rays });
        }
        out
    }
}

/// One residue of the ray sublattice of a cone inside the ambient lattice:
/// a lattice point `sum residues[i] * ray_i` with all `residues[i]` in
/// `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxElement<I: Scalar = Int> {
    /// Coefficients along the cone's rays, each in `[0, 1)`.
    pub residues: Vec<Frac<I>>,
    /// The point in ambient coordinates.
    pub point: Vec<Frac<I>>,
}

impl<I: Scalar> BoxElement<I> {
    /// Sum of the residues; the degree shift this point contributes.
    pub fn age(&self) -> Frac<I> {
        let mut s = Frac::zero();
        for r in &self.residues {
            s = s + r;
        }
        s
    }

    /// True when every residue is nonzero, i.e. the point does not lie on a
    /// proper face of its cone.
    pub fn has_full_support(&self) -> bool {
        self.residues.iter().all(|r| !r.is_zero())
    }
}

/// A simplicial fan in a refined lattice.
#[derive(Clone, Debug)]
pub struct Fan<I: Scalar = Int> {
    lattice: RefinedLattice<I>,
    rays: Vec<Vec<Frac<I>>>,
    ray_coords: Vec<Vec<I>>,
    max_cones: Vec<Cone>,
    cones: Vec<Cone>,
}

impl<I: Scalar> Fan<I> {
    /// Validate rays and maximal cones and close under faces.
    ///
    /// Requirements: rays are distinct primitive lattice points, each used by
    /// some cone; cones are simplicial, none contains another, and every
    /// pair meets in a common face.
    pub fn new(
        lattice: RefinedLattice<I>,
        rays: Vec<Vec<Frac<I>>>,
        max_cones: Vec<Cone>,
    ) -> Result<Self, Error> {
        let d = lattice.dim();
        let mut ray_coords = Vec::with_capacity(rays.len());
        let mut seen = BTreeSet::new();
        for (i, r) in rays.iter().enumerate() {
            if r.len() != d {
                return Err(Error::DimensionMismatch(d, r.len()));
            }
            if r.iter().all(|x| x.is_zero()) {
                return Err(Error::InvalidFan(format!("ray {i} is zero")));
            }
            let coords = lattice
                .integer_coords(r)?
                .ok_or_else(|| Error::InvalidFan(format!("ray {i} is not a lattice point")))?;
            if lattice.primitive(r)? != *r {
                return Err(Error::InvalidFan(format!("ray {i} is not primitive")));
            }
            if !seen.insert(coords.clone()) {
                return Err(Error::InvalidFan(format!("ray {i} repeats an earlier ray")));
            }
            ray_coords.push(coords);
        }
        let mut sorted: Vec<Cone> = Vec::new();
        for c in max_cones {
            for &r in c.rays() {
                if r >= rays.len() {
                    return Err(Error::InvalidFan(format!("cone uses missing ray {r}")));
                }
            }
            if !sorted.contains(&c) {
                sorted.push(c);
            }
        }
        sorted.sort();
        for i in 0..sorted.len() {
            for j in 0..sorted.len() {
                if i != j && sorted[i].is_face_of(&sorted[j]) {
                    return Err(Error::InvalidFan(format!(
                        "cone {:?} is contained in cone {:?}",
                        sorted[i].rays(),
                        sorted[j].rays()
                    )));
                }
            }
        }
        let mut used = vec![false; rays.len()];
        for c in &sorted {
            for &r in c.rays() {
                used[r] = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::InvalidFan(format!("ray {i} is not used by any cone")));
        }
        for c in &sorted {
            let m = QMat::from_cols(
                c.rays().iter().map(|&r| to_frac_vec(&ray_coords[r])).collect(),
            );
            if m.rank() != c.dim() {
                return Err(Error::NonSimplicial(format!(
                    "rays {:?} are linearly dependent",
                    c.rays()
                )));
            }
        }
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                if !cones_meet_in_common_face(&ray_coords, d, &sorted[i], &sorted[j]) {
                    return Err(Error::InvalidFan(format!(
                        "cones {:?} and {:?} do not meet in a common face",
                        sorted[i].rays(),
                        sorted[j].rays()
                    )));
                }
            }
        }
        let mut closure: BTreeSet<Cone> = BTreeSet::new();
        closure.insert(Cone::zero());
        for c in &sorted {
            for f in c.faces() {
                closure.insert(f);
            }
        }
        Ok(Fan {
            lattice,
            rays,
            ray_coords,
            max_cones: sorted,
            cones: closure.into_iter().collect(),
        })
    }

    pub fn lattice(&self) -> &RefinedLattice<I> {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn rays(&self) -> &[Vec<Frac<I>>] {
        &self.rays
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// All cones including every face and the zero cone, sorted.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Cones counted by dimension, starting at the zero cone.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.cones.iter().map(Cone::dim).max().unwrap_or(0);
        let mut f = vec![0usize; top + 1];
        for c in &self.cones {
            f[c.dim()] += 1;
        }
        f
    }

    fn require_cone(&self, cone: &Cone) -> Result<(), Error> {
        if self.cones.binary_search(cone).is_err() {
            return Err(Error::InvalidFan(format!("cone {:?} is not in the fan", cone.rays())));
        }
        Ok(())
    }

    /// Index of the sublattice spanned by the cone's rays inside the ambient
    /// lattice restricted to the cone's span. Equals 1 exactly for smooth
    /// cones.
    pub fn cone_index(&self, cone: &Cone) -> Result<I, Error> {
        self.require_cone(cone)?;
        if cone.dim() == 0 {
            return Ok(I::one());
        }
        let a = ZMat::from_cols(cone.rays().iter().map(|&r| self.ray_coords[r].clone()).collect());
        let s = snf(&a);
        let mut idx = I::one();
        for d in &s.d {
            idx = idx * d.clone();
        }
        Ok(idx)
    }

    /// All residues of the cone's ray sublattice inside the ambient lattice,
    /// sorted by residue vector. The zero residue is included, so the count
    /// equals the cone index.
    pub fn box_elements(&self, cone: &Cone, cap: u64) -> Result<Vec<BoxElement<I>>, Error> {
        self.require_cone(cone)?;
        let k = cone.dim();
        let d = self.dim();
        if k == 0 {
            return Ok(vec![BoxElement {
                residues: Vec::new(),
                point: vec![Frac::zero(); d],
            }]);
        }
        let a = ZMat::from_cols(cone.rays().iter().map(|&r| self.ray_coords[r].clone()).collect());
        let s = snf(&a);
        let mut total = I::one();
        for di in &s.d {
            total = total * di.clone();
        }
        match crate::scalar::to_u64(&total) {
            Some(t) if t <= cap => {}
            _ => {
                return Err(Error::EnumerationTooLarge { needed: total.to_string(), cap });
            }
        }
        let radices: Vec<I> = s.d.clone();
        let mut digits = vec![I::zero(); k];
        let mut out = Vec::new();
        loop {
            let w: Vec<Frac<I>> =
                (0..k).map(|i| Frac::new(digits[i].clone(), radices[i].clone())).collect();
            let residues: Vec<Frac<I>> = (0..k)
                .map(|j| {
                    let mut acc = Frac::zero();
                    for (i, wi) in w.iter().enumerate() {
                        acc = acc + Frac::from_integer(s.v.at(j, i).clone()) * wi.clone();
                    }
                    crate::scalar::mod1(&acc)
                })
                .collect();
            let mut point = vec![Frac::zero(); d];
            for (i, &r) in cone.rays().iter().enumerate() {
                for (pc, rc) in point.iter_mut().zip(&self.rays[r]) {
                    *pc = pc.clone() + residues[i].clone() * rc.clone();
                }
            }
            out.push(BoxElement { residues, point });
            let mut carry = 0;
            loop {
                if carry == k {
                    break;
                }
                digits[carry] = digits[carry].clone() + I::one();
                if digits[carry] < radices[carry] {
                    break;
                }
                digits[carry] = I::zero();
                carry += 1;
            }
            if carry == k {
                break;
            }
        }
        out.sort_by(|a, b| a.residues.cmp(&b.residues));
        out.dedup_by(|a, b| a.residues == b.residues);
        if crate::scalar::to_u64(&total) != Some(out.len() as u64) {
            return Err(Error::Internal("box enumeration missed residues".into()));
        }
        Ok(out)
    }

    /// E-polynomial of the star of a cone: the sum of `(uv - 1)^(n - dim)`
    /// over all cones containing it.
    pub fn star_epoly(&self, cone: &Cone) -> Result<MotivicClass<I>, Error> {
        self.require_cone(cone)?;
        let n = self.dim();
        let mut acc = MotivicClass::zero();
        for c in &self.cones {
            if cone.is_face_of(c) {
                acc = acc.add(&torus_factor(n - c.dim()));
            }
        }
        Ok(acc)
    }

    /// Coarse E-polynomial: strata counted with no regard to multiplicity.
    pub fn epoly(&self) -> MotivicClass<I> {
        self.star_epoly(&Cone::zero()).expect("zero cone is always present")
    }

    /// Stringy E-polynomial: each cone contributes its torus factor weighted
    /// by `(uv)^age` over its box elements.
    pub fn stringy_epoly(&self, cap: u64) -> Result<MotivicClass<I>, Error> {
        let n = self.dim();
        let mut acc = MotivicClass::zero();
        for c in &self.cones {
            let mut boxes = MotivicClass::zero();
            for b in self.box_elements(c, cap)? {
                boxes = boxes.add(&MotivicClass::tate_power(b.age())?);
            }
            acc = acc.add(&torus_factor(n - c.dim()).mul(&boxes));
        }
        Ok(acc)
    }

    pub fn stringy_epoly_default(&self) -> Result<MotivicClass<I>, Error> {
        self.stringy_epoly(DEFAULT_CAP)
    }

    /// Whether the linear functional taking value 1 on each ray of the cone
    /// is integral on the ambient lattice restricted to the cone's span.
    pub fn cone_is_gorenstein(&self, cone: &Cone) -> Result<bool, Error> {
        self.require_cone(cone)?;
        let k = cone.dim();
        if k == 0 {
            return Ok(true);
        }
        let a = ZMat::from_cols(cone.rays().iter().map(|&r| self.ray_coords[r].clone()).collect());
        let s = snf(&a);
        for j in 0..k {
            let mut col_sum = I::zero();
            for i in 0..k {
                col_sum = col_sum + s.v.at(i, j).clone();
            }
            if !col_sum.mod_floor(&s.d[j]).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when every maximal cone admits an integral height functional.
    pub fn is_gorenstein(&self) -> Result<bool, Error> {
        for c in &self.max_cones {
            if !self.cone_is_gorenstein(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when every cone has index 1.
    pub fn is_smooth(&self) -> Result<bool, Error> {
        for c in &self.max_cones {
            if !self.cone_index(c)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Facet-pairing completeness check: every maximal cone is full
    /// dimensional and every codimension-one face is shared by exactly two
    /// of them.
    pub fn is_complete(&self) -> bool {
        let d = self.dim();
        if d == 0 {
            return true;
        }
        if self.max_cones.is_empty() || self.max_cones.iter().any(|c| c.dim() != d) {
            return false;
        }
        let mut facet_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for c in &self.max_cones {
            for skip in 0..d {
                let facet: Vec<usize> = c
                    .rays()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &r)| r)
                    .collect();
                *facet_count.entry(facet).or_insert(0) += 1;
            }
        }
        facet_count.values().all(|&n| n == 2)
    }

    /// Whether `v` lies in the union of the fan's cones.
    pub fn supports_point(&self, v: &[Frac<I>]) -> Result<bool, Error> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), v.len()));
        }
        if v.iter().all(|x| x.is_zero()) {
            return Ok(true);
        }
        for c in &self.max_cones {
            let m = QMat::from_cols(c.rays().iter().map(|&r| self.rays[r].clone()).collect());
            if let Some(q) = m.solve(v) {
                if q.iter().all(|x| !x.is_negative()) && m.mul_vec(&q) == v {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Canonical text rendering; [`parse_text`] reads it back.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "rank {}", self.dim()).unwrap();
        if !self.lattice.is_standard() {
            let basis = self.lattice.basis();
            for j in 0..self.dim() {
                let col: Vec<String> = (0..self.dim()).map(|i| basis.at(i, j).to_string()).collect();
                writeln!(s, "latgen {}", col.join(", ")).unwrap();
            }
        }
        for r in &self.rays {
            let coords: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(s, "ray {}", coords.join(", ")).unwrap();
        }
        for c in &self.max_cones {
            let idx: Vec<String> = c.rays().iter().map(|r| r.to_string()).collect();
            writeln!(s, "cone {}", idx.join(", ")).unwrap();
        }
        s
    }
}

fn to_frac_vec<I: Scalar>(v: &[I]) -> Vec<Frac<I>> {
    v.iter().map(|x| Frac::from_integer(x.clone())).collect()
}

/// `(uv - 1)^k`, the class of a `k`-dimensional torus.
pub(crate) fn torus_factor<I: Scalar>(k: usize) -> MotivicClass<I> {
    let minus_one = -I::one();
    let base = MotivicClass::uv(1).add(&MotivicClass::one().scale(&minus_one));
    base.pow(k)
}

fn dot<I: Scalar>(a: &[Frac<I>], b: &[Frac<I>]) -> Frac<I> {
    let mut acc = Frac::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

/// Whether two simplicial cones intersect exactly in the cone spanned by
/// their shared rays. Candidate extreme rays of the intersection are read
/// off from one dimensional tight subsets of the combined constraints and
/// each must lie in the shared face.
fn cones_meet_in_common_face<I: Scalar>(
    ray_coords: &[Vec<I>],
    d: usize,
    a: &Cone,
    b: &Cone,
) -> bool {
    let cols = |c: &Cone| -> Vec<Vec<Frac<I>>> {
        c.rays().iter().map(|&r| to_frac_vec(&ray_coords[r])).collect()
    };
    let mut equations: Vec<Vec<Frac<I>>> = Vec::new();
    let mut inequalities: Vec<Vec<Frac<I>>> = Vec::new();
    for c in [a, b] {
        let v = QMat::from_cols(cols(c));
        equations.extend(v.transpose().nullspace());
        let vt = v.transpose();
        let gram = vt.mul(&v);
        let dual = gram.inverse().expect("simplicial rays have invertible Gram matrix").mul(&vt);
        for i in 0..c.dim() {
            inequalities.push(dual.row(i));
        }
    }
    let shared: Vec<usize> =
        a.rays().iter().copied().filter(|r| b.rays().binary_search(r).is_ok()).collect();
    let shared_mat = if shared.is_empty() {
        None
    } else {
        Some(QMat::from_cols(shared.iter().map(|&r| to_frac_vec(&ray_coords[r])).collect()))
    };
    let m = inequalities.len();
    for mask in 0u32..(1 << m) {
        let mut rows: Vec<Vec<Frac<I>>> = equations.clone();
        for (i, ineq) in inequalities.iter().enumerate() {
            if mask >> i & 1 == 1 {
                rows.push(ineq.clone());
            }
        }
        if rows.is_empty() {
            rows.push(vec![Frac::zero(); d]);
        }
        let null = QMat::from_rows(rows).nullspace();
        if null.len() != 1 {
            continue;
        }
        for sign in [1i64, -1] {
            let w: Vec<Frac<I>> = null[0]
                .iter()
                .map(|x| x.clone() * Frac::from_integer(crate::scalar::int::<I>(sign)))
                .collect();
            if inequalities.iter().any(|row| dot(row, &w).is_negative()) {
                continue;
            }
            // w is a nonzero direction inside both cones; it must lie in the
            // cone on the shared rays.
            match &shared_mat {
                None => return false,
                Some(sm) => match sm.solve(&w) {
                    None => return false,
                    Some(q) => {
                        if q.iter().any(|x| x.is_negative()) || sm.mul_vec(&q) != w {
                            return false;
                        }
                    }
                },
            }
        }
    }
    true
}

/// Parse the text format produced by [`Fan::render_text`]: a `rank d` line,
/// then optional `latgen`, `ray` and `cone` lines. Blank lines and `#`
/// comments are ignored.
pub fn parse_text(text: &str) -> Result<Fan<Int>, Error> {
    let mut rank: Option<usize> = None;
    let mut latgens: Vec<Vec<Frac<Int>>> = Vec::new();
    let mut rays: Vec<Vec<Frac<Int>>> = Vec::new();
    let mut cones: Vec<Cone> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        if word != "rank" && rank.is_none() {
            return Err(Error::parse(line_no, "the rank line must come first"));
        }
        match word {
            "rank" => {
                if rank.is_some() {
                    return Err(Error::parse(line_no, "duplicate rank line"));
                }
                let d = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("bad rank '{}'", rest.trim())))?;
                rank = Some(d);
            }
            "latgen" | "ray" => {
                let d = rank.unwrap();
                let mut v = Vec::new();
                for tok in rest.split(',') {
                    let f = crate::monomial::parse_frac(tok)
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                    v.push(f);
                }
                if v.len() != d {
                    return Err(Error::parse(
                        line_no,
                        format!("expected {d} coordinates, found {}", v.len()),
                    ));
                }
                if word == "latgen" {
                    latgens.push(v);
                } else {
                    rays.push(v);
                }
            }
            "cone" => {
                let mut idxs = Vec::new();
                for tok in rest.split(',') {
                    let tok = tok.trim();
                    let i = tok
                        .parse::<usize>()
                        .map_err(|_| Error::parse(line_no, format!("bad ray index '{tok}'")))?;
                    idxs.push(i);
                }
                cones.push(Cone::new(idxs).map_err(|e| Error::parse(line_no, e.to_string()))?);
            }
            other => {
                return Err(Error::parse(line_no, format!("unknown directive '{other}'")));
            }
        }
    }
    let rank = rank.ok_or_else(|| Error::InvalidFan("missing rank line".into()))?;
    let lattice = RefinedLattice::from_generators(rank, &latgens)?;
    Fan::new(lattice, rays, cones)
}

//! Orbifold models, their twisted sector decompositions, and exact
//! comparisons against crepant resolutions.
//!
//! Three kinds of model are supported: a finite monomial matrix group acting
//! linearly on affine space, a simplicial toric fan, and a weighted
//! projective space. Each decomposes into sectors carrying an exact fixed
//! locus class and a rational degree shift; the orbifold E-polynomial is the
//! shift-weighted sum. When a crepant resolution is available its
//! E-polynomial is computed independently through the fan machinery, and the
//! two routes are compared term by term.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::epoly::MotivicClass;
use crate::error::Error;
use crate::linalg::{snf, ZMat};
use crate::monomial::MonomialGroup;
use crate::resolve::crepant_resolution;
use crate::scalar::{fr, int, mod1, Frac, Scalar};
use crate::toric::{torus_factor, Cone, Fan, RefinedLattice};
use crate::Int;

/// One twisted sector: a display label, the class of its fixed locus, and
/// the rational degree shift it contributes with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector<I: Scalar = Int> {
    pub label: String,
    pub fixed: MotivicClass<I>,
    pub shift: Frac<I>,
}

impl<I: Scalar> Sector<I> {
    /// The sector's contribution `fixed * (uv)^shift`.
    pub fn contribution(&self) -> Result<MotivicClass<I>, Error> {
        Ok(self.fixed.mul(&MotivicClass::tate_power(self.shift.clone())?))
    }
}

/// Shift-weighted sum over a sector list.
pub fn sector_sum<I: Scalar>(sectors: &[Sector<I>]) -> Result<MotivicClass<I>, Error> {
    let mut acc = MotivicClass::zero();
    for s in sectors {
        acc = acc.add(&s.contribution()?);
    }
    Ok(acc)
}

/// Sectors of a linear quotient by a closed monomial group: one sector per
/// conjugacy class, with fixed class `(uv)^dim_fixed` and shift the age of
/// the representative.
pub fn sectors_local_quotient<I: Scalar>(group: &MonomialGroup<I>) -> Vec<Sector<I>> {
    group
        .conjugacy_classes()
        .into_iter()
        .map(|class| {
            let g = &class.representative;
            debug_assert_eq!(
                g.inverse().shift_w(group.exponent()).expect("orders divide the exponent"),
                g.age()
            );
            Sector {
                label: g.to_syntax(),
                fixed: MotivicClass::uv(g.fixed_dim() as i64),
                shift: g.age(),
            }
        })
        .collect()
}

/// Sectors of a toric model: one per full-support box element of each cone,
/// weighted by the E-polynomial of that cone's star. The zero cone's unique
/// box element gives the untwisted sector.
pub fn sectors_toric<I: Scalar>(fan: &Fan<I>, cap: u64) -> Result<Vec<Sector<I>>, Error> {
    let mut out = Vec::new();
    for c in fan.cones() {
        let star = fan.star_epoly(c)?;
        for b in fan.box_elements(c, cap)? {
            if !b.has_full_support() {
                continue;
            }
            let point: Vec<String> = b.point.iter().map(|x| x.to_string()).collect();
            out.push(Sector {
                label: format!("cone {:?} point ({})", c.rays(), point.join(", ")),
                fixed: star.clone(),
                shift: b.age(),
            });
        }
    }
    Ok(out)
}

/// Sectors of a weighted projective space: one per rotation angle `theta`
/// with some `theta * w_i` integral. The fixed locus is the sub weighted
/// space on the untouched coordinates and the shift adds the fractional
/// parts of the moved ones.
pub fn sectors_wps<I: Scalar>(weights: &[i64]) -> Result<Vec<Sector<I>>, Error> {
    check_weights::<I>(weights)?;
    let mut thetas: BTreeSet<Frac<I>> = BTreeSet::new();
    for &w in weights {
        for k in 0..w {
            thetas.insert(fr(k, w));
        }
    }
    let mut out = Vec::new();
    for theta in thetas {
        let mut fixed = MotivicClass::zero();
        let mut shift = Frac::zero();
        let mut fixed_count = 0i64;
        for &w in weights {
            let tw = mod1(&(theta.clone() * fr::<I>(w, 1)));
            if tw.is_zero() {
                fixed = fixed.add(&MotivicClass::uv(fixed_count));
                fixed_count += 1;
            } else {
                shift = shift + tw;
            }
        }
        out.push(Sector { label: format!("theta = {theta}"), fixed, shift });
    }
    Ok(out)
}

fn check_weights<I: Scalar>(weights: &[i64]) -> Result<(), Error> {
    if weights.len() < 2 {
        return Err(Error::InvalidFan("need at least two weights".into()));
    }
    if weights.iter().any(|&w| w < 1) {
        return Err(Error::InvalidFan(format!("weights must be positive, got {weights:?}")));
    }
    let gcd_all = weights.iter().fold(0i64, |g, &w| g.gcd(&w));
    if gcd_all != 1 {
        return Err(Error::NonCoprimeWeights(gcd_all.to_string()));
    }
    for i in 0..weights.len() {
        let g = weights
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(0i64, |g, (_, &w)| g.gcd(&w));
        if g != 1 {
            return Err(Error::InvalidFan(format!(
                "weights {weights:?} are not well formed: dropping index {i} leaves gcd {g}"
            )));
        }
    }
    Ok(())
}

/// The complete fan of a weighted projective space in the quotient of
/// `Z^(n+1)` by the weight vector, identified with `Z^n` through the Smith
/// form of the weight column.
pub fn wps_fan<I: Scalar>(weights: &[i64]) -> Result<Fan<I>, Error> {
    check_weights::<I>(weights)?;
    let m = weights.len();
    let n = m - 1;
    let col = ZMat::from_cols(vec![weights.iter().map(|&w| int::<I>(w)).collect()]);
    let s = snf(&col);
    debug_assert!(s.d[0].is_one());
    let rays: Vec<Vec<Frac<I>>> = (0..m)
        .map(|i| (1..m).map(|r| Frac::from_integer(s.u.at(r, i).clone())).collect())
        .collect();
    let cones: Vec<Cone> = (0..m)
        .map(|skip| Cone::new((0..m).filter(|&i| i != skip).collect()))
        .collect::<Result<_, _>>()?;
    Fan::new(RefinedLattice::standard(n), rays, cones)
}

/// The orthant fan of a diagonal monomial group: the lattice is refined by
/// the group's angle vectors and the rays are the primitive points on the
/// coordinate axes.
pub fn diagonal_orthant_fan<I: Scalar>(group: &MonomialGroup<I>) -> Result<Fan<I>, Error> {
    let Some(vectors) = group.angle_vectors() else {
        return Err(Error::InvalidElement(
            "group permutes coordinates and has no orthant chart".into(),
        ));
    };
    let n = group.dim();
    let lattice = RefinedLattice::from_generators(n, &vectors)?;
    debug_assert_eq!(
        crate::scalar::to_u64(&lattice.index_over_standard()),
        Some(group.order() as u64)
    );
    let rays: Vec<Vec<Frac<I>>> = (0..n)
        .map(|i| {
            let mut e = vec![Frac::zero(); n];
            e[i] = Frac::one();
            lattice.primitive(&e)
        })
        .collect::<Result<_, _>>()?;
    let cone = Cone::new((0..n).collect())?;
    Fan::new(lattice, rays, vec![cone])
}

/// An orbifold model: a linear quotient, a toric fan, or a weighted
/// projective space.
#[derive(Clone, Debug)]
pub enum OrbifoldModel<I: Scalar = Int> {
    LocalQuotient(MonomialGroup<I>),
    Toric(Fan<I>),
    WeightedProjective(Vec<i64>),
}

impl<I: Scalar> OrbifoldModel<I> {
    pub fn dimension(&self) -> usize {
        match self {
            OrbifoldModel::LocalQuotient(g) => g.dim(),
            OrbifoldModel::Toric(f) => f.dim(),
            OrbifoldModel::WeightedProjective(w) => w.len().saturating_sub(1),
        }
    }

    pub fn sectors(&self, cap: u64) -> Result<Vec<Sector<I>>, Error> {
        match self {
            OrbifoldModel::LocalQuotient(g) => Ok(sectors_local_quotient(g)),
            OrbifoldModel::Toric(f) => sectors_toric(f, cap),
            OrbifoldModel::WeightedProjective(w) => sectors_wps(w),
        }
    }

    /// The orbifold E-polynomial: the shift-weighted sector sum.
    pub fn orbifold_epoly(&self, cap: u64) -> Result<MotivicClass<I>, Error> {
        sector_sum(&self.sectors(cap)?)
    }
}

/// Result of comparing the orbifold E-polynomial with the E-polynomial of a
/// crepant resolution. `equal` is `None` when no resolution is available;
/// the notes say why.
#[derive(Clone, Debug)]
pub struct VerificationReport<I: Scalar = Int> {
    pub orbifold_epoly: MotivicClass<I>,
    pub resolution_epoly: Option<MotivicClass<I>>,
    pub equal: Option<bool>,
    pub special_linear: Option<bool>,
    pub fractional_exponent: Option<Frac<I>>,
    pub notes: Vec<String>,
}

impl<I: Scalar> VerificationReport<I> {
    pub fn euler_orbifold(&self) -> I {
        self.orbifold_epoly.euler_characteristic()
    }

    pub fn euler_resolution(&self) -> Option<I> {
        self.resolution_epoly.as_ref().map(MotivicClass::euler_characteristic)
    }
}

/// Compute both sides where possible: the sector sum always, and the
/// E-polynomial of a crepant resolution whenever the model admits one.
/// Structural obstructions (a non diagonal group, a missing integral height
/// functional, rank above 3) are reported as notes, not errors.
pub fn verify_mckay<I: Scalar>(model: &OrbifoldModel<I>, cap: u64) -> Result<VerificationReport<I>, Error> {
    let orb = model.orbifold_epoly(cap)?;
    let mut notes = Vec::new();
    let mut special_linear = None;
    let fractional_exponent = orb.min_fractional_exponent();
    if let Some(e) = &fractional_exponent {
        notes.push(format!("orbifold E-polynomial has fractional exponent {e}"));
    }
    if let Err(e) = orb.hodge_numbers() {
        notes.push(format!("no Hodge table: {e}"));
    }
    let fan: Option<Fan<I>> = match model {
        OrbifoldModel::LocalQuotient(g) => {
            special_linear = Some(g.is_sl());
            if g.is_diagonal() {
                Some(diagonal_orthant_fan(g)?)
            } else {
                notes.push("group is not diagonal; no toric model, resolution skipped".into());
                None
            }
        }
        OrbifoldModel::Toric(f) => Some(f.clone()),
        OrbifoldModel::WeightedProjective(w) => Some(wps_fan(w)?),
    };
    let resolution_epoly = match fan {
        None => None,
        Some(f) => match crepant_resolution(&f, cap) {
            Ok(res) => {
                debug_assert!(res.is_smooth().expect("resolved fans are validated"));
                Some(res.epoly())
            }
            Err(Error::NonGorenstein(msg)) => {
                notes.push(format!("no crepant resolution: {msg}"));
                None
            }
            Err(Error::RankTooLarge(r)) => {
                notes.push(format!("resolution supports rank at most 3, found {r}; skipped"));
                None
            }
            Err(e) => return Err(e),
        },
    };
    let equal = resolution_epoly.as_ref().map(|res| *res == orb);
    Ok(VerificationReport {
        orbifold_epoly: orb,
        resolution_epoly,
        equal,
        special_linear,
        fractional_exponent,
        notes,
    })
}

/// Result of comparing two fans that are expected to be different
/// subdivisions of the same space.
#[derive(Clone, Debug)]
pub struct ComparisonReport<I: Scalar = Int> {
    pub stringy_left: MotivicClass<I>,
    pub stringy_right: MotivicClass<I>,
    pub equal: bool,
}

/// Check that two fans share their lattice, rays, support and height one
/// points, then compare their stringy E-polynomials. Structural mismatches
/// are reported as [`Error::Incomparable`].
pub fn compare_k_equivalent<I: Scalar>(
    left: &Fan<I>,
    right: &Fan<I>,
    cap: u64,
) -> Result<ComparisonReport<I>, Error> {
    if left.lattice() != right.lattice() {
        return Err(Error::Incomparable("the fans use different lattices".into()));
    }
    let ray_set = |f: &Fan<I>| -> BTreeSet<Vec<Frac<I>>> { f.rays().iter().cloned().collect() };
    if ray_set(left) != ray_set(right) {
        return Err(Error::Incomparable("the fans use different ray sets".into()));
    }
    for (a, b, side) in [(left, right, "left"), (right, left, "right")] {
        for c in a.maximal_cones() {
            let k = int::<I>(c.dim() as i64);
            let mut bary = vec![Frac::zero(); a.dim()];
            for &r in c.rays() {
                for (acc, x) in bary.iter_mut().zip(&a.rays()[r]) {
                    *acc = acc.clone() + x.clone();
                }
            }
            for x in bary.iter_mut() {
                *x = x.clone() / Frac::from_integer(k.clone());
            }
            if !b.supports_point(&bary)? {
                return Err(Error::Incomparable(format!(
                    "a {side} cone is not covered by the other fan"
                )));
            }
        }
    }
    if height_one_points(left, cap)? != height_one_points(right, cap)? {
        return Err(Error::Incomparable("the fans have different height one points".into()));
    }
    let stringy_left = left.stringy_epoly(cap)?;
    let stringy_right = right.stringy_epoly(cap)?;
    let equal = stringy_left == stringy_right;
    Ok(ComparisonReport { stringy_left, stringy_right, equal })
}

fn height_one_points<I: Scalar>(
    fan: &Fan<I>,
    cap: u64,
) -> Result<BTreeSet<Vec<Frac<I>>>, Error> {
    let mut out = BTreeSet::new();
    for c in fan.maximal_cones() {
        for &r in c.rays() {
            out.insert(fan.rays()[r].clone());
        }
        for b in fan.box_elements(c, cap)? {
            if b.age() == Frac::one() {
                out.insert(b.point);
            }
        }
    }
    Ok(out)
}

/// One isotropy stratum of a fan: the cone, the order of the isotropy group
/// on its relative interior, the stratum's torus class, and the box
/// weighted contribution it makes to the stringy E-polynomial.
#[derive(Clone, Debug)]
pub struct Stratum<I: Scalar = Int> {
    pub cone: Cone,
    pub isotropy_order: I,
    pub stratum: MotivicClass<I>,
    pub weighted: MotivicClass<I>,
}

/// Decompose a fan into isotropy strata, one per cone, and check that the
/// weighted contributions sum back to the stringy E-polynomial.
pub fn stratify_by_isotropy<I: Scalar>(fan: &Fan<I>, cap: u64) -> Result<Vec<Stratum<I>>, Error> {
    let n = fan.dim();
    let mut out = Vec::new();
    let mut total = MotivicClass::zero();
    for c in fan.cones() {
        let stratum = torus_factor(n - c.dim());
        let mut boxes = MotivicClass::zero();
        for b in fan.box_elements(c, cap)? {
            boxes = boxes.add(&MotivicClass::tate_power(b.age())?);
        }
        let weighted = stratum.mul(&boxes);
        total = total.add(&weighted);
        out.push(Stratum {
            cone: c.clone(),
            isotropy_order: fan.cone_index(c)?,
            stratum,
            weighted,
        });
    }
    if total != fan.stringy_epoly(cap)? {
        return Err(Error::Internal("strata do not sum to the stringy class".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{Angle, MonomialElement};
    use crate::scalar::fr_int;

    fn ang(n: i64, d: i64) -> Angle<Int> {
        Angle::new(fr(n, d))
    }

    fn diag(angles: &[(i64, i64)]) -> MonomialElement<Int> {
        MonomialElement::diagonal(angles.iter().map(|&(n, d)| ang(n, d)).collect())
    }

    fn mono(perm: &[usize], angles: &[(i64, i64)]) -> MonomialElement<Int> {
        MonomialElement::new(perm.to_vec(), angles.iter().map(|&(n, d)| ang(n, d)).collect())
            .unwrap()
    }

    fn cyclic_quotient(r: i64, weights: &[i64]) -> MonomialGroup<Int> {
        let angles = weights.iter().map(|&w| Angle::new(fr(w, r))).collect();
        MonomialGroup::close_default(weights.len(), vec![MonomialElement::diagonal(angles)])
            .unwrap()
    }

    fn uv_poly(coeffs: &[(i64, i64)]) -> MotivicClass<Int> {
        let mut acc = MotivicClass::zero();
        for &(c, k) in coeffs {
            acc = acc.add(&MotivicClass::uv(k).scale(&int(c)));
        }
        acc
    }

    #[test]
    fn quaternion_sectors() {
        let i = diag(&[(1, 4), (3, 4)]);
        let j = mono(&[1, 0], &[(0, 1), (1, 2)]);
        let q8 = MonomialGroup::close_default(2, vec![i, j]).unwrap();
        let sectors = sectors_local_quotient(&q8);
        assert_eq!(sectors.len(), 5);
        assert_eq!(sectors.iter().filter(|s| !s.shift.is_zero()).count(), 4);
        assert_eq!(sector_sum(&sectors).unwrap(), uv_poly(&[(1, 2), (4, 1)]));
        // The untwisted sector comes first and carries the full space.
        assert_eq!(sectors[0].label, "diag(0, 0)");
        assert_eq!(sectors[0].fixed, MotivicClass::uv(2));
    }

    #[test]
    fn binary_dihedral_sectors() {
        let a = diag(&[(1, 6), (5, 6)]);
        let j = mono(&[1, 0], &[(0, 1), (1, 2)]);
        let bd3 = MonomialGroup::close_default(2, vec![a, j]).unwrap();
        assert_eq!(bd3.order(), 12);
        assert!(bd3.is_sl());
        let sectors = sectors_local_quotient(&bd3);
        assert_eq!(sectors.len(), 6);
        assert_eq!(sector_sum(&sectors).unwrap(), uv_poly(&[(1, 2), (5, 1)]));
    }

    #[test]
    fn surface_cyclic_series_sector_sums() {
        for r in 2..=6 {
            let g = cyclic_quotient(r, &[1, r - 1]);
            let sectors = sectors_local_quotient(&g);
            assert_eq!(sector_sum(&sectors).unwrap(), uv_poly(&[(1, 2), (r - 1, 1)]));
            assert_eq!(
                sector_sum(&sectors).unwrap().euler_characteristic(),
                int(r)
            );
        }
    }

    #[test]
    fn diagonal_group_sum_matches_orthant_stringy() {
        let g = cyclic_quotient(3, &[1, 1, 1]);
        let fan = diagonal_orthant_fan(&g).unwrap();
        assert_eq!(fan.lattice().index_over_standard(), int(3));
        let sum = sector_sum(&sectors_local_quotient(&g)).unwrap();
        assert_eq!(sum, fan.stringy_epoly(100).unwrap());
        assert_eq!(sum, uv_poly(&[(1, 3), (1, 2), (1, 1)]));
    }

    #[test]
    fn non_special_linear_group_report() {
        let g = cyclic_quotient(3, &[1, 1]);
        let model = OrbifoldModel::LocalQuotient(g);
        let report = verify_mckay(&model, 100).unwrap();
        let expected = MotivicClass::uv(2)
            .add(&MotivicClass::tate_power(fr(2, 3)).unwrap())
            .add(&MotivicClass::tate_power(fr(4, 3)).unwrap());
        assert_eq!(report.orbifold_epoly, expected);
        assert_eq!(report.special_linear, Some(false));
        assert_eq!(report.fractional_exponent, Some(fr(2, 3)));
        assert_eq!(report.resolution_epoly, None);
        assert_eq!(report.equal, None);
        assert!(report.notes.iter().any(|n| n.contains("fractional exponent 2/3")));
        assert!(report.notes.iter().any(|n| n.contains("no Hodge table")));
        assert!(report.notes.iter().any(|n| n.contains("no crepant resolution")));
    }

    #[test]
    fn nondiagonal_group_skips_resolution() {
        let i = diag(&[(1, 4), (3, 4)]);
        let j = mono(&[1, 0], &[(0, 1), (1, 2)]);
        let q8 = MonomialGroup::close_default(2, vec![i, j]).unwrap();
        let report = verify_mckay(&OrbifoldModel::LocalQuotient(q8), 100).unwrap();
        assert_eq!(report.equal, None);
        assert_eq!(report.resolution_epoly, None);
        assert_eq!(report.special_linear, Some(true));
        assert!(report.notes.iter().any(|n| n.contains("resolution skipped")));
    }

    #[test]
    fn special_linear_quotients_verify() {
        for (r, weights, expected) in [
            (5, vec![1i64, 1, 3], uv_poly(&[(1, 3), (2, 2), (2, 1)])),
            (2, vec![1, 1, 0], uv_poly(&[(1, 3), (1, 2)])),
            (7, vec![1, 2, 4], uv_poly(&[(1, 3), (3, 2), (3, 1)])),
        ] {
            let g = cyclic_quotient(r, &weights);
            let report = verify_mckay(&OrbifoldModel::LocalQuotient(g), 1000).unwrap();
            assert_eq!(report.equal, Some(true), "r = {r}, weights {weights:?}");
            assert_eq!(report.orbifold_epoly, expected);
            assert_eq!(report.resolution_epoly, Some(expected.clone()));
            assert_eq!(report.special_linear, Some(true));
            assert_eq!(report.fractional_exponent, None);
        }
    }

    #[test]
    fn wps_sector_lists() {
        let s112 = sectors_wps::<Int>(&[1, 1, 2]).unwrap();
        let labels: Vec<&str> = s112.iter().map(|s| s.label.as_str()).collect();
        assert_eq!(labels, vec!["theta = 0", "theta = 1/2"]);
        assert_eq!(s112[1].fixed, MotivicClass::one());
        assert_eq!(s112[1].shift, fr(1, 1));
        assert_eq!(sector_sum(&s112).unwrap(), uv_poly(&[(1, 0), (2, 1), (1, 2)]));

        let s123 = sectors_wps::<Int>(&[1, 2, 3]).unwrap();
        let labels: Vec<&str> = s123.iter().map(|s| s.label.as_str()).collect();
        assert_eq!(labels, vec!["theta = 0", "theta = 1/3", "theta = 1/2", "theta = 2/3"]);
        assert_eq!(sector_sum(&s123).unwrap(), uv_poly(&[(1, 0), (4, 1), (1, 2)]));
    }

    #[test]
    fn wps_fans_from_weight_columns() {
        let f112 = wps_fan::<Int>(&[1, 1, 2]).unwrap();
        let expect = |v: &[i64]| -> Vec<Frac<Int>> { v.iter().map(|&x| fr_int(x)).collect() };
        assert_eq!(f112.rays(), &[expect(&[-1, -2]), expect(&[1, 0]), expect(&[0, 1])]);
        assert!(f112.is_complete());
        let f123 = wps_fan::<Int>(&[1, 2, 3]).unwrap();
        assert_eq!(f123.rays(), &[expect(&[-2, -3]), expect(&[1, 0]), expect(&[0, 1])]);
        assert_eq!(
            f123.stringy_epoly(100).unwrap(),
            uv_poly(&[(1, 0), (4, 1), (1, 2)])
        );
        assert_eq!(
            wps_fan::<Int>(&[2, 4]).unwrap_err(),
            Error::NonCoprimeWeights("2".into())
        );
        assert!(matches!(
            wps_fan::<Int>(&[1, 2, 2]).unwrap_err(),
            Error::InvalidFan(m) if m.contains("not well formed")
        ));
    }

    #[test]
    fn wps_models_verify_against_their_resolutions() {
        for (weights, expected, resolved_f) in [
            (vec![1i64, 1, 2], uv_poly(&[(1, 0), (2, 1), (1, 2)]), vec![1usize, 4, 4]),
            (vec![1, 2, 3], uv_poly(&[(1, 0), (4, 1), (1, 2)]), vec![1, 6, 6]),
        ] {
            let model = OrbifoldModel::<Int>::WeightedProjective(weights.clone());
            let report = verify_mckay(&model, 1000).unwrap();
            assert_eq!(report.equal, Some(true), "weights {weights:?}");
            assert_eq!(report.orbifold_epoly, expected);
            let fan = wps_fan::<Int>(&weights).unwrap();
            let res = crepant_resolution(&fan, 1000).unwrap();
            assert_eq!(res.f_vector(), resolved_f);
        }
    }

    #[test]
    fn toric_sectors_regroup_the_stringy_class() {
        let g = cyclic_quotient(5, &[1, 1, 3]);
        let fan = diagonal_orthant_fan(&g).unwrap();
        let sectors = sectors_toric(&fan, 100).unwrap();
        assert_eq!(sector_sum(&sectors).unwrap(), fan.stringy_epoly(100).unwrap());
        // Box points sit in two cones: the full orthant holds the age 1 and
        // age 2 points with full support, and the zero cone the origin.
        assert_eq!(sectors.len(), 5);
        assert_eq!(sectors[0].label, "cone [] point (0, 0, 0)");
        assert_eq!(sectors[0].fixed, fan.epoly());
        let wps = wps_fan::<Int>(&[1, 1, 2]).unwrap();
        let sectors = sectors_toric(&wps, 100).unwrap();
        assert_eq!(sector_sum(&sectors).unwrap(), wps.stringy_epoly(100).unwrap());
        assert_eq!(sectors.len(), 2);
    }

    #[test]
    fn toric_model_verifies() {
        let wps = wps_fan::<Int>(&[1, 1, 2]).unwrap();
        let report = verify_mckay(&OrbifoldModel::Toric(wps), 1000).unwrap();
        assert_eq!(report.equal, Some(true));
        assert_eq!(report.special_linear, None);
        assert_eq!(report.euler_orbifold(), int(4));
        assert_eq!(report.euler_resolution(), Some(int(4)));
    }

    #[test]
    fn flop_pair_compares_equal() {
        let lattice = RefinedLattice::<Int>::standard(3);
        let rays: Vec<Vec<Frac<Int>>> = [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| fr_int(x)).collect())
            .collect();
        let left = Fan::new(
            lattice.clone(),
            rays.clone(),
            vec![Cone::new(vec![0, 1, 3]).unwrap(), Cone::new(vec![0, 2, 3]).unwrap()],
        )
        .unwrap();
        let right = Fan::new(
            lattice,
            rays,
            vec![Cone::new(vec![0, 1, 2]).unwrap(), Cone::new(vec![1, 2, 3]).unwrap()],
        )
        .unwrap();
        let report = compare_k_equivalent(&left, &right, 100).unwrap();
        assert!(report.equal);
        assert_eq!(report.stringy_left, uv_poly(&[(1, 3), (1, 2)]));
        assert_eq!(report.stringy_left, report.stringy_right);
    }

    #[test]
    fn incomparable_fans_are_diagnosed() {
        let g2 = cyclic_quotient(2, &[1, 1]);
        let fan = diagonal_orthant_fan(&g2).unwrap();
        let resolved = crepant_resolution(&fan, 100).unwrap();
        assert!(matches!(
            compare_k_equivalent(&fan, &resolved, 100).unwrap_err(),
            Error::Incomparable(m) if m.contains("ray sets")
        ));
        let other = diagonal_orthant_fan(&cyclic_quotient(3, &[1, 2])).unwrap();
        assert!(matches!(
            compare_k_equivalent(&fan, &other, 100).unwrap_err(),
            Error::Incomparable(m) if m.contains("lattices")
        ));
    }

    #[test]
    fn strata_carry_isotropy_orders() {
        let g = cyclic_quotient(5, &[1, 1, 3]);
        let fan = diagonal_orthant_fan(&g).unwrap();
        let strata = stratify_by_isotropy(&fan, 100).unwrap();
        assert_eq!(strata.len(), 8);
        let orders: Vec<Int> = strata.iter().map(|s| s.isotropy_order.clone()).collect();
        assert_eq!(orders.iter().filter(|&o| o.is_one()).count(), 7);
        assert_eq!(orders.iter().filter(|&o| *o == int(5)).count(), 1);
        // The deepest stratum is the fixed point with all the twisting.
        let top = strata.iter().find(|s| s.cone.dim() == 3).unwrap();
        assert_eq!(top.isotropy_order, int(5));
        assert_eq!(top.stratum, MotivicClass::one());
    }
}

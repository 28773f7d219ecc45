//! Crepant resolutions of Gorenstein simplicial fans of rank at most 3.
//!
//! Each maximal cone is subdivided on its height one slice using every
//! lattice point of height one: the cone's own rays plus its box elements of
//! age one. A one dimensional slice is cut into consecutive segments; a two
//! dimensional slice is triangulated by deterministic incremental insertion
//! in lexicographic order. Any triangulation that uses all height one points
//! is automatically unimodular and crepant, so no edge flipping is needed;
//! the insertion order only fixes which triangulation is produced. Induced
//! subdivisions of shared faces depend only on the points lying on the face,
//! so neighbouring cones stay compatible and the result is again a valid
//! fan.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::scalar::{Frac, Scalar};
use crate::toric::{Cone, Fan};

/// Subdivide every maximal cone so that all cones become smooth while the
/// height one points are preserved; the stringy E-polynomial is unchanged.
///
/// Fails with [`Error::RankTooLarge`] for cones of dimension above 3 and
/// [`Error::NonGorenstein`] when a cone has no integral height functional.
/// `cap` bounds the box enumeration per cone.
pub fn crepant_resolution<I: Scalar>(fan: &Fan<I>, cap: u64) -> Result<Fan<I>, Error> {
    let mut rays: Vec<Vec<Frac<I>>> = fan.rays().to_vec();
    let mut index: BTreeMap<Vec<Frac<I>>, usize> =
        rays.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    let mut intern = |rays: &mut Vec<Vec<Frac<I>>>, p: &Vec<Frac<I>>| -> usize {
        if let Some(&i) = index.get(p) {
            return i;
        }
        let i = rays.len();
        rays.push(p.clone());
        index.insert(p.clone(), i);
        i
    };
    let mut new_cones: Vec<Cone> = Vec::new();
    for cone in fan.maximal_cones() {
        let k = cone.dim();
        if k > 3 {
            return Err(Error::RankTooLarge(k));
        }
        if !fan.cone_is_gorenstein(cone)? {
            return Err(Error::NonGorenstein(format!(
                "cone {:?} has no integral height functional",
                cone.rays()
            )));
        }
        if k <= 1 {
            new_cones.push(cone.clone());
            continue;
        }
        // Height one points in slice coordinates: the cone's rays are the
        // unit vectors, age one box elements keep their residues.
        let mut pts: Vec<(Vec<Frac<I>>, Vec<Frac<I>>)> = Vec::new();
        for (i, &r) in cone.rays().iter().enumerate() {
            let mut q = vec![Frac::zero(); k];
            q[i] = Frac::one();
            pts.push((q, fan.rays()[r].clone()));
        }
        for b in fan.box_elements(cone, cap)? {
            if b.age() == Frac::one() {
                pts.push((b.residues.clone(), b.point.clone()));
            }
        }
        if k == 2 {
            pts.sort_by(|a, b| a.0[0].cmp(&b.0[0]));
            for w in pts.windows(2) {
                let i0 = intern(&mut rays, &w[0].1);
                let i1 = intern(&mut rays, &w[1].1);
                new_cones.push(Cone::new(vec![i0, i1])?);
            }
        } else {
            let proj: Vec<(Frac<I>, Frac<I>)> =
                pts.iter().map(|(q, _)| (q[0].clone(), q[1].clone())).collect();
            for t in triangulate_slice(&proj)? {
                let idxs: Vec<usize> =
                    t.iter().map(|&p| intern(&mut rays, &pts[p].1)).collect();
                new_cones.push(Cone::new(idxs)?);
            }
        }
    }
    let resolved = Fan::new(fan.lattice().clone(), rays, new_cones)?;
    for c in resolved.maximal_cones() {
        let idx = resolved.cone_index(c)?;
        if !idx.is_one() {
            return Err(Error::NonUnimodular {
                cone: format!("{:?}", c.rays()),
                index: idx.to_string(),
            });
        }
    }
    Ok(resolved)
}

/// Sign of the cross product `(b - a) x (c - a)`: positive for a left turn.
fn orient<I: Scalar>(a: &(Frac<I>, Frac<I>), b: &(Frac<I>, Frac<I>), c: &(Frac<I>, Frac<I>)) -> i32 {
    let lhs = (b.0.clone() - a.0.clone()) * (c.1.clone() - a.1.clone());
    let rhs = (b.1.clone() - a.1.clone()) * (c.0.clone() - a.0.clone());
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Less => -1,
    }
}

fn has_directed_edge(t: &[usize; 3], u: usize, v: usize) -> bool {
    (t[0] == u && t[1] == v) || (t[1] == u && t[2] == v) || (t[2] == u && t[0] == v)
}

/// Full triangulation of the standard slice triangle with vertices `(1,0)`,
/// `(0,1)`, `(0,0)`, which must be `points[0..3]`. The remaining points are
/// inserted in lexicographic order; a point splits its containing triangle,
/// or both triangles along its containing edge. All triangles are returned
/// counterclockwise.
fn triangulate_slice<I: Scalar>(points: &[(Frac<I>, Frac<I>)]) -> Result<Vec<[usize; 3]>, Error> {
    let corner_ok = points.len() >= 3
        && points[0] == (Frac::one(), Frac::zero())
        && points[1] == (Frac::zero(), Frac::one())
        && points[2] == (Frac::zero(), Frac::zero());
    if !corner_ok {
        return Err(Error::Internal("slice triangulation needs its corners first".into()));
    }
    let mut tris: Vec<[usize; 3]> = vec![[0, 1, 2]];
    let mut order: Vec<usize> = (3..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    for pi in order {
        let p = &points[pi];
        let mut found = None;
        for (ti, t) in tris.iter().enumerate() {
            let o = [
                orient(&points[t[0]], &points[t[1]], p),
                orient(&points[t[1]], &points[t[2]], p),
                orient(&points[t[2]], &points[t[0]], p),
            ];
            if o.iter().all(|&s| s >= 0) {
                found = Some((ti, o));
                break;
            }
        }
        let Some((ti, o)) = found else {
            return Err(Error::Internal("slice point falls outside the slice".into()));
        };
        let t = tris[ti];
        match o.iter().filter(|&&s| s == 0).count() {
            0 => {
                tris.swap_remove(ti);
                tris.push([t[0], t[1], pi]);
                tris.push([t[1], t[2], pi]);
                tris.push([t[2], t[0], pi]);
            }
            1 => {
                let e = o.iter().position(|&s| s == 0).unwrap();
                let (a, b, c) = (t[e], t[(e + 1) % 3], t[(e + 2) % 3]);
                tris.swap_remove(ti);
                tris.push([a, pi, c]);
                tris.push([pi, b, c]);
                if let Some(tj) = tris.iter().position(|s| has_directed_edge(s, b, a)) {
                    let s = tris[tj];
                    let d = *s.iter().find(|&&x| x != a && x != b).unwrap();
                    tris.swap_remove(tj);
                    tris.push([b, pi, d]);
                    tris.push([pi, a, d]);
                }
            }
            _ => return Err(Error::Internal("repeated slice point".into())),
        }
    }
    Ok(tris)
}

//! Finite groupoids with explicit composition tables.
//!
//! Composition is written in diagram order: `compose(a, b)` means "a then
//! b" and needs `dst(a) == src(b)`. The two constructions used elsewhere are
//! the action groupoid of a finite group acting on a finite set and the
//! inertia groupoid, whose objects are loops and whose arrows are the
//! conjugating witnesses. Connected components of the inertia groupoid of a
//! one object action groupoid recover the conjugacy classes of the group, a
//! route independent of any matrix arithmetic.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::monomial::MonomialGroup;
use crate::scalar::Scalar;

/// An arrow with a display name and object endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

impl Arrow {
    pub fn new(name: impl Into<String>, src: usize, dst: usize) -> Self {
        Arrow { name: name.into(), src, dst }
    }
}

/// A finite groupoid: named objects, named arrows, and a composition table
/// keyed by pairs of arrow indices in diagram order.
#[derive(Clone, Debug)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    composition: BTreeMap<(usize, usize), usize>,
}

impl FiniteGroupoid {
    /// Build and validate.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        composition: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self, Error> {
        let g = FiniteGroupoid { objects, arrows, composition };
        g.validate()?;
        Ok(g)
    }

    /// Build without validation, so that [`FiniteGroupoid::validate`] can
    /// diagnose exactly what is wrong with untrusted data.
    pub fn from_raw_parts(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        composition: BTreeMap<(usize, usize), usize>,
    ) -> Self {
        FiniteGroupoid { objects, arrows, composition }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// `a` then `b`, if composable.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.composition.get(&(a, b)).copied()
    }

    /// Exhaustive check of the groupoid axioms. The first violation found is
    /// reported with the offending arrow names.
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::InvalidGroupoid(msg));
        for a in &self.arrows {
            if a.src >= self.objects.len() || a.dst >= self.objects.len() {
                return bad(format!("arrow '{}' has an endpoint outside the object list", a.name));
            }
        }
        for (&(i, j), &k) in &self.composition {
            if i >= self.arrows.len() || j >= self.arrows.len() || k >= self.arrows.len() {
                return bad(format!("composition entry ({i}, {j}) -> {k} is out of range"));
            }
            let (a, b, c) = (&self.arrows[i], &self.arrows[j], &self.arrows[k]);
            if a.dst != b.src {
                return bad(format!(
                    "'{}' and '{}' are composed but do not share an object",
                    a.name, b.name
                ));
            }
            if c.src != a.src || c.dst != b.dst {
                return bad(format!(
                    "composite of '{}' and '{}' has the wrong endpoints",
                    a.name, b.name
                ));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            for (j, b) in self.arrows.iter().enumerate() {
                if a.dst == b.src && !self.composition.contains_key(&(i, j)) {
                    return bad(format!(
                        "no composite defined for '{}' then '{}'",
                        a.name, b.name
                    ));
                }
            }
        }
        for (&(i, j), &ij) in &self.composition {
            for k in 0..self.arrows.len() {
                if self.arrows[j].dst != self.arrows[k].src {
                    continue;
                }
                let jk = self.composition[&(j, k)];
                if self.composition[&(ij, k)] != self.composition[&(i, jk)] {
                    return bad(format!(
                        "associativity fails at '{}', '{}', '{}'",
                        self.arrows[i].name, self.arrows[j].name, self.arrows[k].name
                    ));
                }
            }
        }
        let identities = self.find_identities()?;
        for (i, a) in self.arrows.iter().enumerate() {
            let (es, ed) = (identities[a.src], identities[a.dst]);
            let has_inverse = (0..self.arrows.len()).any(|j| {
                self.composition.get(&(i, j)) == Some(&es)
                    && self.composition.get(&(j, i)) == Some(&ed)
            });
            if !has_inverse {
                return bad(format!("arrow '{}' has no inverse", a.name));
            }
        }
        Ok(())
    }

    /// The identity arrow at each object; fails naming the first object
    /// without one.
    fn find_identities(&self) -> Result<Vec<usize>, Error> {
        let mut ids = Vec::with_capacity(self.objects.len());
        'objects: for (x, name) in self.objects.iter().enumerate() {
            for (i, e) in self.arrows.iter().enumerate() {
                if e.src != x || e.dst != x {
                    continue;
                }
                let neutral = self.arrows.iter().enumerate().all(|(j, a)| {
                    (a.dst != x || self.composition.get(&(j, i)) == Some(&j))
                        && (a.src != x || self.composition.get(&(i, j)) == Some(&j))
                });
                if neutral {
                    ids.push(i);
                    continue 'objects;
                }
            }
            return Err(Error::InvalidGroupoid(format!("object '{name}' has no identity arrow")));
        }
        Ok(ids)
    }

    /// Connected components of the object set, each sorted, ordered by their
    /// smallest member.
    pub fn pi0(&self) -> Vec<Vec<usize>> {
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in &self.arrows {
            let (ra, rb) = (find(&mut parent, a.src), find(&mut parent, a.dst));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            comps.entry(r).or_default().push(x);
        }
        comps.into_values().collect()
    }

    /// The inertia groupoid: objects are the loops of `self`, and an arrow
    /// from loop `v` to loop `w` is any arrow `alpha` with
    /// `v then alpha = alpha then w`. Witnesses are kept separate, not
    /// quotiented. Requires a valid groupoid.
    pub fn inertia(&self) -> FiniteGroupoid {
        let loops: Vec<usize> = (0..self.arrows.len())
            .filter(|&i| self.arrows[i].src == self.arrows[i].dst)
            .collect();
        let loop_pos: BTreeMap<usize, usize> =
            loops.iter().enumerate().map(|(p, &l)| (l, p)).collect();
        let objects: Vec<String> = loops.iter().map(|&l| self.arrows[l].name.clone()).collect();
        let mut arrows = Vec::new();
        let mut arrow_key: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (vp, &v) in loops.iter().enumerate() {
            for (alpha, arr) in self.arrows.iter().enumerate() {
                if arr.src != self.arrows[v].src {
                    continue;
                }
                let Some(va) = self.compose(v, alpha) else { continue };
                for &w in &loops {
                    if self.arrows[w].src == arr.dst && self.compose(alpha, w) == Some(va) {
                        arrow_key.insert((vp, alpha), arrows.len());
                        arrows.push(Arrow::new(arr.name.clone(), vp, loop_pos[&w]));
                        break;
                    }
                }
            }
        }
        let mut composition = BTreeMap::new();
        for (&(vp, alpha), &i) in &arrow_key {
            for (&(wp, beta), &j) in &arrow_key {
                if arrows[i].dst != wp {
                    continue;
                }
                let ab = self.compose(alpha, beta).expect("witnesses compose in a valid groupoid");
                composition.insert((i, j), arrow_key[&(vp, ab)]);
            }
        }
        FiniteGroupoid { objects, arrows, composition }
    }
}

/// A finite group as a multiplication table with named elements.
#[derive(Clone, Debug)]
pub struct GroupTable {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    id: usize,
    inv: Vec<usize>,
}

impl GroupTable {
    /// Validate a multiplication table: associativity, a two sided identity
    /// and inverses.
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self, Error> {
        let n = names.len();
        if mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroupoid("multiplication table is not square".into()));
        }
        for r in &mul {
            for &x in r {
                if x >= n {
                    return Err(Error::InvalidGroupoid(format!("table entry {x} out of range")));
                }
            }
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::InvalidGroupoid("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroupoid(format!(
                            "associativity fails at '{}', '{}', '{}'",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut inv = vec![0usize; n];
        for g in 0..n {
            inv[g] = (0..n).find(|&h| mul[g][h] == id && mul[h][g] == id).ok_or_else(|| {
                Error::InvalidGroupoid(format!("element '{}' has no inverse", names[g]))
            })?;
        }
        Ok(GroupTable { names, mul, id, inv })
    }

    /// The cyclic group of order `n` with elements `g0, ..., g{n-1}`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n).map(|k| format!("g{k}")).collect();
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        GroupTable::new(names, mul).expect("cyclic tables satisfy the axioms")
    }

    /// Table of a closed monomial matrix group; element names use the
    /// generator syntax.
    pub fn from_monomial<I: Scalar>(group: &MonomialGroup<I>) -> Self {
        let elements = group.elements();
        let names = elements.iter().map(|e| e.to_syntax()).collect();
        let mul = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let p = a.multiply(b).expect("group elements share a dimension");
                        elements.binary_search(&p).expect("group is closed")
                    })
                    .collect()
            })
            .collect();
        GroupTable::new(names, mul).expect("closed groups satisfy the axioms")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inv[g]
    }

    /// Number of conjugacy classes, computed by merging `g` with every
    /// `x g x^-1` directly on the table.
    pub fn conjugacy_class_count(&self) -> usize {
        let n = self.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in 0..n {
            for x in 0..n {
                let c = self.mul[self.mul[x][g]][self.inv[x]];
                let (rg, rc) = (find(&mut parent, g), find(&mut parent, c));
                if rg != rc {
                    parent[rg.max(rc)] = rg.min(rc);
                }
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }
}

/// A finite group action: named points and one map per group element, as
/// `maps[g][x] = g . x`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub points: Vec<String>,
    pub maps: Vec<Vec<usize>>,
}

impl GroupAction {
    /// The action on a single point.
    pub fn trivial(table: &GroupTable) -> Self {
        GroupAction { points: vec!["pt".into()], maps: vec![vec![0]; table.order()] }
    }

    /// The group acting on itself by left translation.
    pub fn translation(table: &GroupTable) -> Self {
        let points = (0..table.order()).map(|x| table.name(x).to_string()).collect();
        let maps = (0..table.order())
            .map(|g| (0..table.order()).map(|x| table.multiply(g, x)).collect())
            .collect();
        GroupAction { points, maps }
    }
}

/// The action groupoid: one object per point, one arrow `g @ x` from `x` to
/// `g . x` per pair, composed by `(g, x)` then `(h, g . x)` equals
/// `(h g, x)`.
pub fn action_groupoid(table: &GroupTable, action: &GroupAction) -> Result<FiniteGroupoid, Error> {
    let n = table.order();
    let p = action.points.len();
    if action.maps.len() != n {
        return Err(Error::InvalidAction(format!(
            "expected {n} maps, found {}",
            action.maps.len()
        )));
    }
    for (g, row) in action.maps.iter().enumerate() {
        if row.len() != p {
            return Err(Error::InvalidAction(format!(
                "map of '{}' touches {} of {p} points",
                table.name(g),
                row.len()
            )));
        }
        let mut seen = vec![false; p];
        for &y in row {
            if y >= p || seen[y] {
                return Err(Error::InvalidAction(format!(
                    "map of '{}' is not a permutation of the points",
                    table.name(g)
                )));
            }
            seen[y] = true;
        }
    }
    for x in 0..p {
        if action.maps[table.identity()][x] != x {
            return Err(Error::InvalidAction(format!(
                "identity moves point '{}'",
                action.points[x]
            )));
        }
    }
    for g in 0..n {
        for h in 0..n {
            for x in 0..p {
                if action.maps[h][action.maps[g][x]] != action.maps[table.multiply(h, g)][x] {
                    return Err(Error::InvalidAction(format!(
                        "maps of '{}' and '{}' are incompatible at point '{}'",
                        table.name(g),
                        table.name(h),
                        action.points[x]
                    )));
                }
            }
        }
    }
    let objects = action.points.clone();
    let idx = |g: usize, x: usize| g * p + x;
    let mut arrows = Vec::with_capacity(n * p);
    for g in 0..n {
        for x in 0..p {
            arrows.push(Arrow::new(
                format!("{} @ {}", table.name(g), action.points[x]),
                x,
                action.maps[g][x],
            ));
        }
    }
    let mut composition = BTreeMap::new();
    for g in 0..n {
        for h in 0..n {
            for x in 0..p {
                let gx = action.maps[g][x];
                composition.insert((idx(g, x), idx(h, gx)), idx(table.multiply(h, g), x));
            }
        }
    }
    FiniteGroupoid::new(objects, arrows, composition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{Angle, MonomialElement};
    use crate::scalar::fr;
    use crate::Int;

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

    fn quaternion_group() -> MonomialGroup<Int> {
        let i = diag(&[(1, 4), (3, 4)]);
        let j = mono(&[1, 0], &[(0, 1), (1, 2)]);
        MonomialGroup::close_default(2, vec![i, j]).unwrap()
    }

    #[test]
    fn cyclic_tables_are_abelian() {
        let t = GroupTable::cyclic(6);
        assert_eq!(t.order(), 6);
        assert_eq!(t.inverse(1), 5);
        assert_eq!(t.conjugacy_class_count(), 6);
    }

    #[test]
    fn tables_from_matrix_groups_count_classes() {
        assert_eq!(GroupTable::from_monomial(&quaternion_group()).conjugacy_class_count(), 5);
        let s3 = MonomialGroup::close_default(
            3,
            vec![mono(&[1, 0, 2], &[(0, 1); 3]), mono(&[1, 2, 0], &[(0, 1); 3])],
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(GroupTable::from_monomial(&s3).conjugacy_class_count(), 3);
        let d4 = MonomialGroup::close_default(
            2,
            vec![mono(&[1, 0], &[(0, 1), (1, 2)]), diag(&[(0, 1), (1, 2)])],
        )
        .unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(GroupTable::from_monomial(&d4).conjugacy_class_count(), 5);
    }

    #[test]
    fn inertia_of_a_one_object_groupoid_counts_classes() {
        let q8 = GroupTable::from_monomial(&quaternion_group());
        let bg = action_groupoid(&q8, &GroupAction::trivial(&q8)).unwrap();
        assert_eq!(bg.objects().len(), 1);
        assert_eq!(bg.arrows().len(), 8);
        let inertia = bg.inertia();
        inertia.validate().unwrap();
        assert_eq!(inertia.objects().len(), 8);
        assert_eq!(inertia.pi0().len(), 5);
    }

    #[test]
    fn inertia_components_match_class_sizes_for_cyclic_groups() {
        for n in 1..=6 {
            let t = GroupTable::cyclic(n);
            let bg = action_groupoid(&t, &GroupAction::trivial(&t)).unwrap();
            assert_eq!(bg.inertia().pi0().len(), n);
        }
    }

    #[test]
    fn translation_action_is_connected_and_free() {
        let s3 = MonomialGroup::close_default(
            3,
            vec![mono(&[1, 0, 2], &[(0, 1); 3]), mono(&[1, 2, 0], &[(0, 1); 3])],
        )
        .unwrap();
        let t = GroupTable::from_monomial(&s3);
        let g = action_groupoid(&t, &GroupAction::translation(&t)).unwrap();
        assert_eq!(g.pi0().len(), 1);
        // Freeness leaves only identity loops, so the inertia is connected.
        let inertia = g.inertia();
        assert_eq!(inertia.objects().len(), 6);
        assert_eq!(inertia.pi0().len(), 1);
    }

    #[test]
    fn validation_names_the_offending_arrow() {
        // A single loop with no composite defined.
        let g = FiniteGroupoid::from_raw_parts(
            vec!["x".into()],
            vec![Arrow::new("e", 0, 0)],
            BTreeMap::new(),
        );
        let err = g.validate().unwrap_err();
        assert_eq!(err, Error::InvalidGroupoid("no composite defined for 'e' then 'e'".into()));
        // An idempotent non identity arrow has no inverse.
        let mut comp = BTreeMap::new();
        comp.insert((0, 0), 0);
        comp.insert((0, 1), 1);
        comp.insert((1, 0), 1);
        comp.insert((1, 1), 1);
        let g = FiniteGroupoid::from_raw_parts(
            vec!["x".into()],
            vec![Arrow::new("e", 0, 0), Arrow::new("s", 0, 0)],
            comp,
        );
        assert_eq!(g.validate().unwrap_err(), Error::InvalidGroupoid("arrow 's' has no inverse".into()));
        // Composing arrows that do not share an object.
        let mut comp = BTreeMap::new();
        comp.insert((0, 0), 0);
        comp.insert((1, 1), 1);
        comp.insert((0, 1), 1);
        comp.insert((1, 0), 0);
        let g = FiniteGroupoid::from_raw_parts(
            vec!["x".into(), "y".into()],
            vec![Arrow::new("ex", 0, 0), Arrow::new("ey", 1, 1)],
            comp,
        );
        assert_eq!(
            g.validate().unwrap_err(),
            Error::InvalidGroupoid("'ex' and 'ey' are composed but do not share an object".into())
        );
    }

    #[test]
    fn bad_actions_are_rejected() {
        let t = GroupTable::cyclic(2);
        let err = action_groupoid(
            &t,
            &GroupAction { points: vec!["a".into(), "b".into()], maps: vec![vec![0, 1], vec![0, 0]] },
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidAction(m) if m.contains("permutation")));
        let err = action_groupoid(
            &t,
            &GroupAction { points: vec!["a".into()], maps: vec![vec![0]] },
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidAction(m) if m.contains("expected 2 maps")));
    }

    #[test]
    fn bad_tables_are_rejected() {
        let err = GroupTable::new(
            vec!["a".into(), "b".into()],
            vec![vec![0, 1], vec![1, 1]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidGroupoid(_)));
    }
}

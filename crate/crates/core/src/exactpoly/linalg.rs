//! Exact sparse linear algebra over Q.
//!
//! Subspaces are kept in reduced row echelon form at all times, so
//! membership, dimension, sum and intersection are all exact and
//! deterministic. A [`Solver`] additionally tags inserted vectors so that
//! the coordinates of a solved target are recovered (the particular
//! solution with all free variables zero).

use super::poly::{Mono, Poly, VarSet};
use super::rat::Rat;
use num_traits::Zero;
use std::collections::HashMap;

/// A sparse vector: sorted `(index, coefficient)` pairs, no zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    pub entries: Vec<(u32, Rat)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn from_entries(mut entries: Vec<(u32, Rat)>) -> Self {
        entries.sort_by_key(|e| e.0);
        entries.retain(|e| !e.1.is_zero());
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(u32, &Rat)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: u32) -> Option<&Rat> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// `self + c * other`, merged in one pass.
    pub fn add_scaled(&self, other: &SparseVec, c: &Rat) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (ia, ca) = &self.entries[i];
            let (ib, cb) = &other.entries[j];
            match ia.cmp(ib) {
                std::cmp::Ordering::Less => {
                    out.push((*ia, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*ib, cb * c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = ca + &(cb * c);
                    if !v.is_zero() {
                        out.push((*ia, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.entries[i..].iter().cloned());
        out.extend(other.entries[j..].iter().map(|(k, v)| (*k, v * c)));
        SparseVec { entries: out }
    }

    pub fn scale_mut(&mut self, c: &Rat) {
        for (_, v) in &mut self.entries {
            *v = &*v * c;
        }
    }

    /// Shift every index by `offset`.
    pub fn shifted(&self, offset: u32) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (i + offset, c.clone()))
                .collect(),
        }
    }
}

/// A subspace of `Q^n` in reduced row echelon form.
#[derive(Clone, Debug, Default)]
pub struct Subspace {
    /// Rows sorted by pivot index; each pivot entry is 1 and is the only
    /// nonzero entry in its column among the rows.
    rows: Vec<SparseVec>,
    pivots: Vec<u32>,
}

impl Subspace {
    pub fn new() -> Self {
        Subspace::default()
    }

    pub fn from_vecs(vecs: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut s = Subspace::new();
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    /// Reduce `v` against the rows (eliminating every pivot coordinate).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        loop {
            // find the first entry of w that sits on a pivot column
            let mut hit: Option<(usize, Rat)> = None;
            for (i, c) in &w.entries {
                if let Ok(r) = self.pivots.binary_search(i) {
                    hit = Some((r, c.clone()));
                    break;
                }
            }
            match hit {
                None => return w,
                Some((r, c)) => {
                    w = w.add_scaled(&self.rows[r], &-c);
                }
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert a vector; returns `true` if the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut w = self.reduce(&v);
        match w.leading() {
            None => false,
            Some((pivot, lead)) => {
                let inv = Rat::from_integer(1.into()) / lead.clone();
                w.scale_mut(&inv);
                // clear this column from the existing rows to keep RREF
                for r in 0..self.rows.len() {
                    if let Some(c) = self.rows[r].get(pivot) {
                        let c = c.clone();
                        self.rows[r] = self.rows[r].add_scaled(&w, &-c);
                    }
                }
                let at = self.pivots.partition_point(|&p| p < pivot);
                self.pivots.insert(at, pivot);
                self.rows.insert(at, w);
                true
            }
        }
    }

    /// Span of the union of both subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    /// Intersection, computed by the Zassenhaus trick on `[v | v]` vs
    /// `[w | 0]` blocks with `dim` the ambient dimension.
    pub fn intersect(&self, other: &Subspace, dim: u32) -> Subspace {
        let mut ech = Subspace::new();
        let mut tail_rows: Vec<SparseVec> = Vec::new();
        // rows [v | v] first, then [w | 0]; when the left block of a
        // reduced row vanishes, its right block lies in the intersection.
        let mut work: Vec<SparseVec> = Vec::new();
        for v in &self.rows {
            let mut e = v.entries.clone();
            e.extend(v.shifted(dim).entries);
            work.push(SparseVec { entries: e });
        }
        for w in &other.rows {
            work.push(w.clone());
        }
        for row in work {
            let mut r = ech.reduce(&row);
            // only pivot on the left block
            let left_lead = r.leading().filter(|(i, _)| *i < dim);
            match left_lead {
                Some((_, lead)) => {
                    let inv = Rat::from_integer(1.into()) / lead.clone();
                    r.scale_mut(&inv);
                    let pivot = r.leading().unwrap().0;
                    let at = ech.pivots.partition_point(|&p| p < pivot);
                    ech.pivots.insert(at, pivot);
                    ech.rows.insert(at, r);
                }
                None => {
                    if !r.is_zero() {
                        tail_rows.push(SparseVec {
                            entries: r.entries.iter().map(|(i, c)| (i - dim, c.clone())).collect(),
                        });
                    }
                }
            }
        }
        Subspace::from_vecs(tail_rows)
    }

    pub fn intersect_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// The subspace of vectors vanishing on a coordinate set: re-echelonize
    /// with the constrained coordinates first; rows whose pivot escapes the
    /// set span exactly the vanishing subspace.
    pub fn vanishing_on(&self, ncols: u32, in_set: impl Fn(u32) -> bool) -> Subspace {
        let mut perm = vec![0u32; ncols as usize];
        let mut next = 0u32;
        for i in 0..ncols {
            if in_set(i) {
                perm[i as usize] = next;
                next += 1;
            }
        }
        let set_count = next;
        for i in 0..ncols {
            if !in_set(i) {
                perm[i as usize] = next;
                next += 1;
            }
        }
        let mut inv = vec![0u32; ncols as usize];
        for (i, &p) in perm.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        let mut ech = Subspace::new();
        for row in &self.rows {
            ech.insert(SparseVec::from_entries(
                row.entries
                    .iter()
                    .map(|(i, c)| (perm[*i as usize], c.clone()))
                    .collect(),
            ));
        }
        let mut out = Subspace::new();
        for (row, &pivot) in ech.rows.iter().zip(&ech.pivots) {
            if pivot >= set_count {
                out.insert(SparseVec::from_entries(
                    row.entries
                        .iter()
                        .map(|(i, c)| (inv[*i as usize], c.clone()))
                        .collect(),
                ));
            }
        }
        out
    }

    /// True if `other` is contained in `self`.
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        // RREF is canonical, so equality is structural
        self.pivots == other.pivots && self.rows == other.rows
    }
}

/// Echelon with tags: solves `target = sum c_i v_i` over the inserted
/// vectors `v_i`, returning the echelon-determined particular solution.
#[derive(Clone, Debug)]
pub struct Solver {
    rows: Vec<(SparseVec, SparseVec)>, // (ambient part, tag part)
    pivots: Vec<u32>,
    kernel: Vec<SparseVec>, // tag combinations that map to zero
    nvecs: u32,
}

impl Solver {
    pub fn new() -> Self {
        Solver {
            rows: Vec::new(),
            pivots: Vec::new(),
            kernel: Vec::new(),
            nvecs: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn num_vectors(&self) -> u32 {
        self.nvecs
    }

    pub fn kernel(&self) -> &[SparseVec] {
        &self.kernel
    }

    fn reduce_pair(&self, v: &SparseVec, t: &SparseVec) -> (SparseVec, SparseVec) {
        let mut w = v.clone();
        let mut tag = t.clone();
        loop {
            let mut hit: Option<(usize, Rat)> = None;
            for (i, c) in &w.entries {
                if let Ok(r) = self.pivots.binary_search(i) {
                    hit = Some((r, c.clone()));
                    break;
                }
            }
            match hit {
                None => return (w, tag),
                Some((r, c)) => {
                    let nc = -c;
                    w = w.add_scaled(&self.rows[r].0, &nc);
                    tag = tag.add_scaled(&self.rows[r].1, &nc);
                }
            }
        }
    }

    /// Insert a spanning vector; returns its tag index.
    pub fn push(&mut self, v: SparseVec) -> u32 {
        let idx = self.nvecs;
        self.nvecs += 1;
        let tag = SparseVec::from_entries(vec![(idx, Rat::from_integer(1.into()))]);
        let (mut w, mut t) = self.reduce_pair(&v, &tag);
        match w.leading() {
            None => self.kernel.push(t),
            Some((pivot, lead)) => {
                let inv = Rat::from_integer(1.into()) / lead.clone();
                w.scale_mut(&inv);
                t.scale_mut(&inv);
                for r in 0..self.rows.len() {
                    if let Some(c) = self.rows[r].0.get(pivot) {
                        let nc = -c.clone();
                        self.rows[r].0 = self.rows[r].0.add_scaled(&w, &nc);
                        self.rows[r].1 = self.rows[r].1.add_scaled(&t, &nc);
                    }
                }
                let at = self.pivots.partition_point(|&p| p < pivot);
                self.pivots.insert(at, pivot);
                self.rows.insert(at, (w, t));
            }
        }
        idx
    }

    /// Solve `target = sum c_i v_i`. Returns dense coefficients, one per
    /// inserted vector, or `None` when the target is outside the span.
    pub fn solve(&self, target: &SparseVec) -> Option<Vec<Rat>> {
        let (w, t) = self.reduce_pair(target, &SparseVec::new());
        if !w.is_zero() {
            return None;
        }
        let mut coeffs = vec![Rat::zero(); self.nvecs as usize];
        for (i, c) in &t.entries {
            coeffs[*i as usize] = -c.clone();
        }
        Some(coeffs)
    }

    pub fn contains(&self, target: &SparseVec) -> bool {
        self.reduce_pair(target, &SparseVec::new()).0.is_zero()
    }
}

impl Default for Solver {
    fn default() -> Self {
        Self::new()
    }
}

/// Deterministic enumeration of the monomials of one bigrade, used to
/// translate polynomials into sparse coordinate vectors.
#[derive(Clone, Debug)]
pub struct MonoIndex<V: VarSet> {
    monos: Vec<Mono<V>>,
    lookup: HashMap<Mono<V>, u32>,
}

impl<V: VarSet> MonoIndex<V> {
    /// All monomials of the given weight (and depth/secondary degree if
    /// given), in canonical order.
    pub fn new(weight: u32, deg2: Option<u32>) -> Self {
        let mut monos = Vec::new();
        let mut e = [0u16; super::poly::MAX_VARS];
        enumerate_rec::<V>(0, weight, &mut e, &mut monos);
        if let Some(d) = deg2 {
            monos.retain(|m| m.deg2() == d);
        }
        monos.sort();
        let lookup = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, i as u32))
            .collect();
        MonoIndex { monos, lookup }
    }

    pub fn dim(&self) -> u32 {
        self.monos.len() as u32
    }

    pub fn monos(&self) -> &[Mono<V>] {
        &self.monos
    }

    pub fn mono(&self, i: u32) -> &Mono<V> {
        &self.monos[i as usize]
    }

    pub fn index_of(&self, m: &Mono<V>) -> Option<u32> {
        self.lookup.get(m).copied()
    }

    /// Translate a polynomial into coordinates. Panics if some monomial of
    /// `p` falls outside this bigrade.
    pub fn vec(&self, p: &Poly<V>) -> SparseVec {
        SparseVec::from_entries(
            p.terms()
                .map(|(m, c)| {
                    let i = self
                        .index_of(m)
                        .unwrap_or_else(|| panic!("monomial {:?} outside ambient bigrade", m));
                    (i, c.clone())
                })
                .collect(),
        )
    }

    pub fn poly(&self, v: &SparseVec) -> Poly<V> {
        let mut p = Poly::zero();
        for (i, c) in &v.entries {
            p.add_term(self.monos[*i as usize], c.clone());
        }
        p
    }
}

fn enumerate_rec<V: VarSet>(
    var: usize,
    remaining: u32,
    e: &mut [u16; super::poly::MAX_VARS],
    out: &mut Vec<Mono<V>>,
) {
    if var == V::N {
        if remaining == 0 {
            out.push(Mono::new(*e));
        }
        return;
    }
    let w = V::WEIGHTS[var];
    if var == V::N - 1 {
        // last variable must absorb exactly the remaining weight
        if w > 0 && remaining.is_multiple_of(w) {
            e[var] = (remaining / w) as u16;
            out.push(Mono::new(*e));
            e[var] = 0;
        } else if w == 0 && remaining == 0 {
            out.push(Mono::new(*e));
        }
        return;
    }
    let maxk = if w > 0 { remaining / w } else { 0 };
    for k in 0..=maxk {
        e[var] = k as u16;
        enumerate_rec::<V>(var + 1, remaining - k * w, e, out);
    }
    e[var] = 0;
}

/// A graded subspace: one echelonized [`Subspace`] per bigrade, sharing a
/// deterministic ambient enumeration.
#[derive(Clone, Debug, Default)]
pub struct GradedSubspace<V: VarSet> {
    pieces: std::collections::BTreeMap<(u32, Option<u32>), (MonoIndexRef<V>, Subspace)>,
}

type MonoIndexRef<V> = std::sync::Arc<MonoIndex<V>>;

impl<V: VarSet> GradedSubspace<V> {
    pub fn new() -> Self {
        GradedSubspace {
            pieces: Default::default(),
        }
    }

    pub fn insert_poly(&mut self, weight: u32, deg2: Option<u32>, p: &Poly<V>) -> bool {
        let entry = self
            .pieces
            .entry((weight, deg2))
            .or_insert_with(|| (std::sync::Arc::new(MonoIndex::new(weight, deg2)), Subspace::new()));
        let v = entry.0.vec(p);
        entry.1.insert(v)
    }

    pub fn dim(&self, weight: u32, deg2: Option<u32>) -> usize {
        self.pieces
            .get(&(weight, deg2))
            .map(|(_, s)| s.dim())
            .unwrap_or(0)
    }

    pub fn contains_poly(&self, weight: u32, deg2: Option<u32>, p: &Poly<V>) -> bool {
        if p.is_zero() {
            return true;
        }
        match self.pieces.get(&(weight, deg2)) {
            None => false,
            Some((ix, s)) => s.contains(&ix.vec(p)),
        }
    }

    pub fn bigrades(&self) -> impl Iterator<Item = &(u32, Option<u32>)> {
        self.pieces.keys()
    }

    pub fn piece(&self, weight: u32, deg2: Option<u32>) -> Option<&Subspace> {
        self.pieces.get(&(weight, deg2)).map(|(_, s)| s)
    }

    /// Per-bigrade sum with an identical ambient enumeration.
    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, (ix, s)) in &other.pieces {
            match out.pieces.get_mut(k) {
                None => {
                    out.pieces.insert(*k, (ix.clone(), s.clone()));
                }
                Some((_, mine)) => {
                    *mine = mine.sum(s);
                }
            }
        }
        out
    }

    /// Per-bigrade intersection.
    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = GradedSubspace::new();
        for (k, (ix, s)) in &self.pieces {
            if let Some((_, t)) = other.pieces.get(k) {
                let inter = s.intersect(t, ix.dim());
                out.pieces.insert(*k, (ix.clone(), inter));
            }
        }
        out
    }

    /// `dim X - dim (X ∩ Y)` per bigrade.
    pub fn quotient_dims(&self, other: &Self) -> std::collections::BTreeMap<(u32, Option<u32>), usize> {
        let mut out = std::collections::BTreeMap::new();
        for (k, (_, s)) in &self.pieces {
            let d = match other.pieces.get(k) {
                None => s.dim(),
                Some((_, t)) => s.dim() - s.intersect_dim(t),
            };
            out.insert(*k, d);
        }
        out
    }

    /// Image under a linear map given on polynomials.
    pub fn image_under(
        &self,
        f: impl Fn(&Poly<V>) -> Poly<V>,
        grade_of_image: impl Fn(u32, Option<u32>) -> (u32, Option<u32>),
    ) -> Self {
        let mut out = GradedSubspace::new();
        for ((w, d), (ix, s)) in &self.pieces {
            let (wi, di) = grade_of_image(*w, *d);
            for row in s.rows() {
                let p = ix.poly(row);
                let q = f(&p);
                if !q.is_zero() {
                    out.insert_poly(wi, di, &q);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::poly::{ambient, Ambient};
    use crate::exactpoly::rat::rat_i;
    use proptest::prelude::*;

    fn sv(entries: &[(u32, i64)]) -> SparseVec {
        SparseVec::from_entries(entries.iter().map(|&(i, c)| (i, rat_i(c))).collect())
    }

    #[test]
    fn echelon_membership() {
        let mut s = Subspace::new();
        assert!(s.insert(sv(&[(0, 1), (2, 2)])));
        assert!(s.insert(sv(&[(1, 3)])));
        assert!(!s.insert(sv(&[(0, 2), (1, 3), (2, 4)])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&sv(&[(0, 5), (1, -6), (2, 10)])));
        assert!(!s.contains(&sv(&[(2, 1)])));
    }

    #[test]
    fn subspace_contains_itself_and_zero_intersection() {
        let x = Subspace::from_vecs([sv(&[(0, 1)]), sv(&[(1, 1)])]);
        assert!(x.contains_subspace(&x));
        let zero = Subspace::new();
        let inter = x.intersect(&zero, 4);
        assert_eq!(inter.dim(), 0);
    }

    #[test]
    fn intersection_basis() {
        // span{e0, e1} ∩ span{e1, e2} = span{e1}
        let x = Subspace::from_vecs([sv(&[(0, 1)]), sv(&[(1, 1)])]);
        let y = Subspace::from_vecs([sv(&[(1, 2)]), sv(&[(2, 1)])]);
        let inter = x.intersect(&y, 3);
        assert_eq!(inter.dim(), 1);
        assert!(inter.contains(&sv(&[(1, 7)])));
    }

    #[test]
    fn solver_recovers_coordinates() {
        let mut s = Solver::new();
        s.push(sv(&[(0, 1), (1, 1)]));
        s.push(sv(&[(1, 1), (2, 1)]));
        s.push(sv(&[(0, 1), (1, 2), (2, 1)])); // dependent
        assert_eq!(s.rank(), 2);
        assert_eq!(s.kernel().len(), 1);
        let c = s.solve(&sv(&[(0, 2), (1, 3), (2, 1)])).unwrap();
        // deterministic: free coefficient (third vector) stays zero
        assert_eq!(c, vec![rat_i(2), rat_i(1), rat_i(0)]);
        assert!(s.solve(&sv(&[(3, 1)])).is_none());
    }

    #[test]
    fn mono_index_round_trip() {
        let ix = MonoIndex::<Ambient>::new(3, Some(1));
        // weight-3 depth-1 monomials in A,B,A',B'
        assert!(ix.dim() > 0);
        let p = ambient::a().pow(2).mul(&ambient::b());
        let v = ix.vec(&p);
        assert_eq!(ix.poly(&v), p);
    }

    #[test]
    fn graded_subspace_ops() {
        use crate::exactpoly::rat::rat;
        let a = ambient::a();
        let b = ambient::b();
        let mut x = GradedSubspace::new();
        x.insert_poly(2, None, &a.pow(2));
        x.insert_poly(2, None, &a.mul(&b));
        let mut y = GradedSubspace::new();
        y.insert_poly(2, None, &a.mul(&b).scale(&rat(3, 2)));
        y.insert_poly(2, None, &b.pow(2));
        assert!(x.contains_key_example());
        let sum = x.sum(&y);
        assert_eq!(sum.dim(2, None), 3);
        let inter = x.intersect(&y);
        assert_eq!(inter.dim(2, None), 1);
        assert!(inter.contains_poly(2, None, &a.mul(&b).scale(&rat(-7, 5))));
        // dim(X+Y) = dim X + dim Y - dim(X ∩ Y)
        assert_eq!(
            sum.dim(2, None),
            x.dim(2, None) + y.dim(2, None) - inter.dim(2, None)
        );
        let q = x.quotient_dims(&y);
        assert_eq!(q[&(2, None)], 1);
        // image under squaring the grade: multiply by A^2
        let img = x.image_under(|p| p.mul(&a.pow(2)), |w, d| (w + 2, d));
        assert_eq!(img.dim(4, None), 2);
        assert!(img.contains_poly(4, None, &a.pow(3).mul(&b)));
    }

    impl GradedSubspace<Ambient> {
        fn contains_key_example(&self) -> bool {
            self.contains_poly(2, None, &ambient::a().pow(2))
                && !self.contains_poly(2, None, &ambient::b().pow(2))
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn dim_sum_formula(rows_a in prop::collection::vec(prop::collection::vec(-3i64..4, 6), 0..5),
                           rows_b in prop::collection::vec(prop::collection::vec(-3i64..4, 6), 0..5)) {
            let build = |rows: &Vec<Vec<i64>>| {
                Subspace::from_vecs(rows.iter().map(|r| {
                    SparseVec::from_entries(
                        r.iter().enumerate().map(|(i, &c)| (i as u32, rat_i(c))).collect())
                }))
            };
            let (x, y) = (build(&rows_a), build(&rows_b));
            let sum = x.sum(&y);
            let inter = x.intersect(&y, 6);
            prop_assert_eq!(x.dim() + y.dim(), sum.dim() + inter.dim());
            // intersection is inside both
            prop_assert!(x.contains_subspace(&inter));
            prop_assert!(y.contains_subspace(&inter));
        }
    }
}

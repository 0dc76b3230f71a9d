//! Finite groups given by Cayley tables on `0..n` with identity `0`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::perm::{Perm, PermGroup};
use crate::search;

pub const DEFAULT_ORDER_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is empty or not square")]
    Malformed,
    #[error("entry table[{0}][{1}] = {2} is out of range")]
    NotClosed(usize, usize, usize),
    #[error("index 0 is not a two-sided identity")]
    NoIdentityAtZero,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("order {order} exceeds the configured bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
}

/// A group on `0..n` with identity `0`, stored as a flat Cayley table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("n", &self.n)
            .field("table", &self.rows())
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a square table. Checks run in the order: shape, range,
    /// identity at 0, inverses, associativity; the first failure is reported.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::Malformed);
        }
        for (a, row) in rows.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(GroupError::NotClosed(a, b, c));
                }
            }
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        FiniteGroup::from_flat(n, table)
    }

    pub fn from_flat(n: usize, table: Vec<usize>) -> Result<FiniteGroup, GroupError> {
        if n == 0 || table.len() != n * n {
            return Err(GroupError::Malformed);
        }
        if let Some(i) = table.iter().position(|&c| c >= n) {
            return Err(GroupError::NotClosed(i / n, i % n, table[i]));
        }
        let t = |a: usize, b: usize| table[a * n + b];
        if (0..n).any(|a| t(0, a) != a || t(a, 0) != a) {
            return Err(GroupError::NoIdentityAtZero);
        }
        let mut inv = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| t(a, b) == 0 && t(b, a) == 0) {
                Some(b) => inv[a] = b,
                None => return Err(GroupError::NoInverse(a)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = t(a, b);
                for c in 0..n {
                    if t(ab, c) != t(a, t(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup { n, table, inv })
    }

    /// Builds a group from a multiplication closure, validating the result.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup, GroupError> {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(f(a, b));
            }
        }
        FiniteGroup::from_flat(n, table)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a · b⁻¹`.
    #[inline]
    pub fn div(&self, a: usize, b: usize) -> usize {
        self.op(a, self.inv[b])
    }

    /// `a⁻¹ · b`.
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.op(self.inv[a], b)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.op(acc, a))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|a| self.element_order(a) == self.n)
    }

    pub fn exponent(&self) -> usize {
        (0..self.n).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn centre(&self) -> BTreeSet<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.op(a, b) == self.op(b, a)))
            .collect()
    }

    /// `z ↦ g·z·g⁻¹`.
    pub fn inner_automorphism(&self, g: usize) -> Perm {
        let gi = self.inv[g];
        Perm::from_images_unchecked((0..self.n).map(|z| self.op(self.op(g, z), gi)).collect())
    }

    pub fn inner_group(&self) -> PermGroup {
        let gens: Vec<Perm> = (0..self.n).map(|g| self.inner_automorphism(g)).collect();
        PermGroup::generate(self.n, gens.iter())
    }

    pub fn is_automorphism(&self, p: &Perm) -> bool {
        p.degree() == self.n
            && (0..self.n).all(|a| {
                (0..self.n).all(|b| p.apply(self.op(a, b)) == self.op(p.apply(a), p.apply(b)))
            })
    }

    pub fn automorphism_group(&self, bound: usize) -> Result<PermGroup, GroupError> {
        if self.n > bound {
            return Err(GroupError::OrderBoundExceeded { order: self.n, bound });
        }
        let autos = search::find_isomorphisms(&[self], &[self], false);
        let set: BTreeSet<Perm> = autos.into_iter().collect();
        Ok(PermGroup::from_elements(self.n, set).expect("automorphisms form a group"))
    }

    /// A small generating set, preferring elements of large order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.n).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span: BTreeSet<usize> = [0].into_iter().collect();
        for a in by_order {
            if !span.contains(&a) {
                gens.push(a);
                span = self.closure(&gens);
            }
            if span.len() == self.n {
                break;
            }
        }
        gens
    }

    /// The subgroup generated by `gens`, as an index set.
    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut span: BTreeSet<usize> = [0].into_iter().collect();
        let mut queue: Vec<usize> = vec![0];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.op(x, g);
                if span.insert(y) {
                    queue.push(y);
                }
            }
        }
        span
    }

    pub fn is_subgroup(&self, s: &BTreeSet<usize>) -> bool {
        s.contains(&0)
            && s.iter()
                .all(|&a| s.contains(&self.inv[a]) && s.iter().all(|&b| s.contains(&self.op(a, b))))
    }

    pub fn is_normal_subgroup(&self, s: &BTreeSet<usize>) -> bool {
        self.is_subgroup(s)
            && (0..self.n).all(|g| s.iter().all(|&x| s.contains(&self.op(self.op(g, x), self.inv[g]))))
    }

    /// Restricts to a subgroup. The returned embedding lists the original
    /// indices in increasing order, so index 0 maps to 0.
    pub fn restrict(&self, subset: &BTreeSet<usize>) -> Option<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(subset) {
            return None;
        }
        let emb: Vec<usize> = subset.iter().copied().collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in emb.iter().enumerate() {
            pos[x] = i;
        }
        let k = emb.len();
        let g = FiniteGroup::from_fn(k, |a, b| pos[self.op(emb[a], emb[b])]).ok()?;
        Some((g, emb))
    }

    /// Applies a relabeling `x ↦ p(x)` to the carrier.
    pub fn relabel(&self, p: &Perm) -> Result<FiniteGroup, GroupError> {
        let q = p.inverse();
        FiniteGroup::from_fn(self.n, |a, b| p.apply(self.op(q.apply(a), q.apply(b))))
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup { n: 1, table: vec![0], inv: vec![0] }
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_fn(n, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// Dihedral group of order `2m`; `a^i b^j` is encoded as `2i + j`
    /// with `b a b⁻¹ = a⁻¹`.
    pub fn dihedral(m: usize) -> FiniteGroup {
        FiniteGroup::from_fn(2 * m, |x, y| {
            let (i, j) = (x / 2, x % 2);
            let (k, l) = (y / 2, y % 2);
            let k = if j == 0 { k } else { (m - k) % m };
            ((i + k) % m) * 2 + (j + l) % 2
        })
        .expect("dihedral group")
    }

    /// Quaternion group; `i^a j^b` encoded as `2a + b` with `a ∈ 0..4`.
    pub fn quaternion() -> FiniteGroup {
        FiniteGroup::from_fn(8, |x, y| {
            let (a, b) = (x / 2, x % 2);
            let (c, d) = (y / 2, y % 2);
            // j i = i^3 j, j^2 = i^2
            let c = if b == 1 { (4 - c) % 4 } else { c };
            let extra = if b == 1 && d == 1 { 2 } else { 0 };
            ((a + c + extra) % 4) * 2 + (b + d) % 2
        })
        .expect("quaternion group")
    }

    /// Direct product; `(g, k)` is encoded as `g * |K| + k`.
    pub fn direct_product(g: &FiniteGroup, k: &FiniteGroup) -> FiniteGroup {
        let m = k.n;
        FiniteGroup::from_fn(g.n * m, |x, y| g.op(x / m, y / m) * m + k.op(x % m, y % m))
            .expect("direct product")
    }

    pub fn symmetric(deg: usize) -> FiniteGroup {
        let mut perms: Vec<Perm> = Vec::new();
        let mut cur: Vec<usize> = (0..deg).collect();
        permutations(&mut cur, 0, &mut perms);
        perms.sort();
        let idx = |p: &Perm| perms.binary_search(p).expect("closed");
        FiniteGroup::from_fn(perms.len(), |a, b| idx(&perms[a].compose(&perms[b])))
            .expect("symmetric group")
    }
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k == cur.len() {
        out.push(Perm::from_images_unchecked(cur.clone()));
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Locates a two-sided identity in a raw table, if any.
pub fn find_identity(rows: &[Vec<usize>]) -> Option<usize> {
    let n = rows.len();
    (0..n).find(|&e| (0..n).all(|a| rows[e][a] == a && rows[a][e] == a))
}

/// Swaps labels `0` and `e` in a raw table.
pub fn swap_labels(rows: &[Vec<usize>], e: usize) -> Vec<Vec<usize>> {
    let n = rows.len();
    let s = |x: usize| {
        if x == e {
            0
        } else if x == 0 {
            e
        } else {
            x
        }
    };
    (0..n)
        .map(|a| (0..n).map(|b| s(rows[s(a)][s(b)])).collect())
        .collect()
}

/// A short human-readable name for a group of order at most 8.
pub fn identify(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut orders: Vec<usize> = (0..n).map(|a| g.element_order(a)).collect();
    orders.sort_unstable();
    let count = |k: usize| orders.iter().filter(|&&o| o == k).count();
    if n == 1 {
        return "trivial".into();
    }
    if g.is_cyclic() {
        return format!("Z{n}");
    }
    let name = match (n, g.is_abelian()) {
        (4, true) => "Z2xZ2",
        (6, false) => "S3",
        (8, true) if g.exponent() == 4 => "Z4xZ2",
        (8, true) => "Z2xZ2xZ2",
        (8, false) if count(2) == 1 => "Q8",
        (8, false) => "D8",
        _ => "",
    };
    if name.is_empty() {
        let kind = if g.is_abelian() { "abelian" } else { "nonabelian" };
        format!("{kind} group of order {n}")
    } else {
        name.into()
    }
}

/// Enumerates every group table on `0..n` (identity 0) that agrees with
/// `fixed` wherever it is `Some`, and whose entries satisfy
/// `allowed(a, b, c)`. Results are in lexicographic order of flat tables.
pub fn enumerate_group_tables(
    n: usize,
    fixed: &[Option<usize>],
    allowed: &(dyn Fn(usize, usize, usize) -> bool + Sync),
) -> Vec<FiniteGroup> {
    assert_eq!(fixed.len(), n * n);
    let mut t: Vec<Option<usize>> = fixed.to_vec();
    for a in 0..n {
        for (cell, val) in [(a, a), (a * n, a)] {
            match t[cell] {
                Some(v) if v != val => return Vec::new(),
                _ => t[cell] = Some(val),
            }
        }
    }
    let mut row_used = vec![vec![false; n]; n];
    let mut col_used = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            if let Some(c) = t[a * n + b] {
                if row_used[a][c] || col_used[b][c] || !allowed(a, b, c) {
                    return Vec::new();
                }
                row_used[a][c] = true;
                col_used[b][c] = true;
            }
        }
    }
    let mut st = TableSearch { n, t, row_used, col_used, out: Vec::new() };
    if st.consistent_all() {
        st.fill(0, allowed);
    }
    st.out
}

struct TableSearch {
    n: usize,
    t: Vec<Option<usize>>,
    row_used: Vec<Vec<bool>>,
    col_used: Vec<Vec<bool>>,
    out: Vec<FiniteGroup>,
}

impl TableSearch {
    fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.t[a * self.n + b]
    }

    fn consistent_all(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                if !self.consistent_at(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Partial associativity checks involving the cell `(a, b)`.
    fn consistent_at(&self, a: usize, b: usize) -> bool {
        let n = self.n;
        let Some(c) = self.get(a, b) else { return true };
        for x in 0..n {
            // (x a) b = x (a b)
            if let (Some(u), Some(r)) = (self.get(x, a), self.get(x, c)) {
                if let Some(l) = self.get(u, b) {
                    if l != r {
                        return false;
                    }
                }
            }
            // (a b) x = a (b x)
            if let (Some(l), Some(v)) = (self.get(c, x), self.get(b, x)) {
                if let Some(r) = self.get(a, v) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn fill(&mut self, cell: usize, allowed: &(dyn Fn(usize, usize, usize) -> bool + Sync)) {
        let n = self.n;
        let mut cell = cell;
        while cell < n * n && self.t[cell].is_some() {
            cell += 1;
        }
        if cell == n * n {
            let flat: Vec<usize> = self.t.iter().map(|c| c.unwrap()).collect();
            if let Ok(g) = FiniteGroup::from_flat(n, flat) {
                self.out.push(g);
            }
            return;
        }
        let (a, b) = (cell / n, cell % n);
        for c in 0..n {
            if self.row_used[a][c] || self.col_used[b][c] || !allowed(a, b, c) {
                continue;
            }
            self.t[cell] = Some(c);
            self.row_used[a][c] = true;
            self.col_used[b][c] = true;
            if self.consistent_at(a, b) && self.touching_ok(a, b) {
                self.fill(cell + 1, allowed);
            }
            self.t[cell] = None;
            self.row_used[a][c] = false;
            self.col_used[b][c] = false;
        }
    }

    /// Re-checks cells whose associativity constraints newly became
    /// decidable because `(a, b)` was filled.
    fn touching_ok(&self, a: usize, b: usize) -> bool {
        let n = self.n;
        for x in 0..n {
            if self.get(x, a).is_some() && !self.consistent_at(x, a) {
                return false;
            }
            if self.get(b, x).is_some() && !self.consistent_at(b, x) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_is_valid() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn constant_row_has_no_inverse() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoInverse(1));
    }

    #[test]
    fn reports_out_of_range_and_identity() {
        assert_eq!(
            FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]).unwrap_err(),
            GroupError::NotClosed(0, 1, 2)
        );
        assert_eq!(
            FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap_err(),
            GroupError::NoIdentityAtZero
        );
        assert_eq!(FiniteGroup::from_table(&[vec![0, 1]]).unwrap_err(), GroupError::Malformed);
    }

    #[test]
    fn detects_non_associative_loop() {
        // A Latin square with identity 0 and inverses that is not associative.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(&rows),
            Err(GroupError::NotAssociative(..))
        ));
    }

    #[test]
    fn automorphism_group_orders() {
        let b = DEFAULT_ORDER_BOUND;
        assert_eq!(FiniteGroup::cyclic(2).automorphism_group(b).unwrap().order(), 1);
        assert_eq!(FiniteGroup::cyclic(3).automorphism_group(b).unwrap().order(), 2);
        let s3 = FiniteGroup::symmetric(3);
        let aut = s3.automorphism_group(b).unwrap();
        assert_eq!(aut.order(), 6);
        assert_eq!(aut, s3.inner_group());
        assert_eq!(FiniteGroup::dihedral(4).automorphism_group(b).unwrap().order(), 8);
        assert_eq!(FiniteGroup::quaternion().automorphism_group(b).unwrap().order(), 24);
        let v = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(v.automorphism_group(b).unwrap().order(), 6);
        let big = FiniteGroup::cyclic(17);
        assert!(matches!(big.automorphism_group(b), Err(GroupError::OrderBoundExceeded { .. })));
    }

    #[test]
    fn inner_automorphisms() {
        let z4 = FiniteGroup::cyclic(4);
        assert!(z4.inner_automorphism(3).is_identity());
        let s3 = FiniteGroup::symmetric(3);
        assert!(s3.inner_automorphism(0).is_identity());
        let t = (0..6).find(|&g| s3.element_order(g) == 2).unwrap();
        let c = s3.inner_automorphism(t);
        let three_cycles: Vec<usize> = (0..6).filter(|&g| s3.element_order(g) == 3).collect();
        assert_eq!(c.apply(three_cycles[0]), three_cycles[1]);
        assert_eq!(c.apply(three_cycles[1]), three_cycles[0]);
        assert_eq!(s3.inner_group().order(), 6);
        let one = [c];
        assert_eq!(PermGroup::normal_closure(&s3.inner_group(), one.iter()).order(), 6);
    }

    #[test]
    fn named_groups() {
        assert_eq!(identify(&FiniteGroup::symmetric(3)), "S3");
        assert_eq!(identify(&FiniteGroup::dihedral(3)), "S3");
        assert_eq!(identify(&FiniteGroup::dihedral(4)), "D8");
        assert_eq!(identify(&FiniteGroup::quaternion()), "Q8");
        assert_eq!(identify(&FiniteGroup::cyclic(6)), "Z6");
        assert_eq!(FiniteGroup::quaternion().centre().len(), 2);
        assert_eq!(FiniteGroup::dihedral(4).centre().len(), 2);
    }

    #[test]
    fn relabel_swaps_identity() {
        let rows = vec![vec![1, 0], vec![0, 1]];
        let e = find_identity(&rows).unwrap();
        assert_eq!(e, 1);
        let fixed = swap_labels(&rows, e);
        assert!(FiniteGroup::from_table(&fixed).is_ok());
    }

    #[test]
    fn restrict_subgroup() {
        let z6 = FiniteGroup::cyclic(6);
        let s: BTreeSet<usize> = [0, 2, 4].into_iter().collect();
        let (g, emb) = z6.restrict(&s).unwrap();
        assert_eq!(emb, vec![0, 2, 4]);
        assert!(g.is_cyclic());
        assert!(z6.restrict(&[0, 1].into_iter().collect()).is_none());
    }

    #[test]
    fn enumerates_all_tables_of_order_four() {
        let n = 4;
        let tables = enumerate_group_tables(n, &vec![None; n * n], &|_, _, _| true);
        // 4!/|Aut| labelings fixing 0: Z4 gives 3, Klein gives 1.
        assert_eq!(tables.len(), 4);
        assert_eq!(tables.iter().filter(|g| g.is_cyclic()).count(), 3);
        let n = 6;
        let tables = enumerate_group_tables(n, &vec![None; n * n], &|_, _, _| true);
        // 5!/2 cyclic labelings plus 5!/6 labelings of S3.
        assert_eq!(tables.len(), 60 + 20);
    }
}

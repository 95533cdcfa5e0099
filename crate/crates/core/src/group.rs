//! Finite groups as multiplication tables, finite abelian groups in
//! invariant-factor form, and finite group actions.

use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest group order accepted by constructors.
pub const MAX_ORDER: usize = 10_000;

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        return Err(Error::TooLarge { what: "group order".into(), size: n as u64, limit: MAX_ORDER as u64 });
    }
    Ok(())
}

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a square table: entries in range, associativity,
    /// two-sided identity and inverses.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<FiniteGroup> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty multiplication table".into()));
        }
        check_order(n)?;
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidInput(format!("entry {bad} in row {i} is out of range")));
            }
            table.extend_from_slice(row);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|g| table[e * n + g] == g && table[g * n + e] == g)).ok_or(Error::NoIdentity)?;
        let mut inv = vec![0; n];
        for g in 0..n {
            inv[g] = (0..n).find(|&h| table[g * n + h] == identity && table[h * n + g] == identity).ok_or(Error::NoInverse(g))?;
        }
        Ok(FiniteGroup { n, table, identity, inv })
    }

    /// Builds from a table known to be a group.
    fn trusted(n: usize, table: Vec<usize>) -> FiniteGroup {
        let identity = (0..n).find(|&e| (0..n).all(|g| table[e * n + g] == g)).expect("identity");
        let mut inv = vec![0; n];
        for g in 0..n {
            inv[g] = (0..n).find(|&h| table[g * n + h] == identity).expect("inverse");
        }
        FiniteGroup { n, table, identity, inv }
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::trusted(1, vec![0])
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidInput("cyclic group of order 0".into()));
        }
        check_order(n)?;
        Ok(FiniteGroup::trusted(n, (0..n * n).map(|i| (i / n + i % n) % n).collect()))
    }

    /// Product of cyclic groups of the given orders, elements ordered
    /// lexicographically with the first coordinate most significant.
    pub fn abelian_product(orders: &[usize]) -> Result<FiniteGroup> {
        let mut g = FiniteGroup::trivial();
        for &d in orders {
            g = g.direct_product(&FiniteGroup::cyclic(d)?)?;
        }
        Ok(g)
    }

    /// Klein four group with elements `e, x, p, xp` at indices `0..4`.
    pub fn klein() -> FiniteGroup {
        FiniteGroup::trusted(4, (0..16).map(|i| (i / 4) ^ (i % 4)).collect())
    }

    /// Dihedral group of order `2n`; `r^a s^b` has index `a + n·b`.
    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidInput("dihedral group of order 0".into()));
        }
        check_order(2 * n)?;
        let m = 2 * n;
        let mut table = vec![0; m * m];
        for x in 0..m {
            let (a, b) = (x % n, x / n);
            for y in 0..m {
                let (c, d) = (y % n, y / n);
                let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                table[x * m + y] = rot + n * ((b + d) % 2);
            }
        }
        Ok(FiniteGroup::trusted(m, table))
    }

    /// Quaternion group; index `u + 4s` is `(−1)^s·u` for `u ∈ (1, i, j, k)`.
    pub fn quaternion() -> FiniteGroup {
        // unit products as (sign, unit)
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let mut table = vec![0; 64];
        for x in 0..8 {
            for y in 0..8 {
                let (s, u) = UNIT[x % 4][y % 4];
                table[x * 8 + y] = u + 4 * ((s + x / 4 + y / 4) % 2);
            }
        }
        FiniteGroup::trusted(8, table)
    }

    /// Symmetric group on `k` letters, permutations in lexicographic order;
    /// the product `στ` applies `τ` first.
    pub fn symmetric(k: usize) -> Result<FiniteGroup> {
        if k > 7 {
            return Err(Error::TooLarge { what: "symmetric group degree".into(), size: k as u64, limit: 7 });
        }
        let mut perms = Vec::new();
        let mut p: Vec<usize> = (0..k).collect();
        permutations(&mut p, 0, &mut perms);
        perms.sort();
        let n = perms.len();
        let index: std::collections::HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = vec![0; n * n];
        for (i, s) in perms.iter().enumerate() {
            for (j, t) in perms.iter().enumerate() {
                let st: Vec<usize> = t.iter().map(|&x| s[x]).collect();
                table[i * n + j] = index[&st];
            }
        }
        Ok(FiniteGroup::trusted(n, table))
    }

    /// `G × H` with `(g, h)` at index `g·|H| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        check_order(n)?;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = self.mul(x / n2, y / n2) * n2 + other.mul(x % n2, y % n2);
            }
        }
        Ok(FiniteGroup::trusted(n, table))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|g| self.element_order(g)).fold(1, |a, b| a.lcm(&b))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.n).filter(|&i| seen[i]).collect()
    }

    /// Every subgroup, as a sorted element list, ordered by size then
    /// lexicographically.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        let start = vec![self.identity];
        found.insert((1, start.clone()));
        let mut frontier = vec![start];
        while let Some(h) = frontier.pop() {
            for g in self.elements() {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if found.insert((k.len(), k.clone())) {
                    frontier.push(k);
                }
            }
        }
        found.into_iter().map(|(_, h)| h).collect()
    }

    /// The subgroup on the listed elements, as a group in its own right
    /// together with its inclusion. Element `i` of the subgroup is `elems[i]`.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FiniteGroup, GroupHom)> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &g) in elems.iter().enumerate() {
            if g >= self.n {
                return Err(Error::InvalidInput(format!("element {g} out of range")));
            }
            if pos[g] != usize::MAX {
                return Err(Error::InvalidInput(format!("element {g} listed twice")));
            }
            pos[g] = i;
        }
        let m = elems.len();
        let mut table = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                let p = pos[self.mul(elems[i], elems[j])];
                if p == usize::MAX {
                    return Err(Error::InvalidInput("subset is not closed under multiplication".into()));
                }
                table[i * m + j] = p;
            }
        }
        if pos[self.identity] == usize::MAX {
            return Err(Error::InvalidInput("subset does not contain the identity".into()));
        }
        let h = FiniteGroup::trusted(m, table);
        let f = GroupHom { source: h.clone(), target: self.clone(), map: elems.to_vec() };
        Ok((h, f))
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, out);
        p.swap(k, i);
    }
}

/// A homomorphism between finite groups, as an element map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<GroupHom> {
        if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(Error::InvalidInput("map does not fit the groups".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotAHomomorphism(a, b));
                }
            }
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), map })
    }

    pub fn identity(g: &FiniteGroup) -> GroupHom {
        GroupHom { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    pub fn apply(&self, h: usize) -> usize {
        self.map[h]
    }

    pub fn check_injective(&self) -> Result<()> {
        let mut seen = vec![usize::MAX; self.target.order()];
        for (h, &g) in self.map.iter().enumerate() {
            if seen[g] != usize::MAX {
                return Err(Error::NotInjective(seen[g], h));
            }
            seen[g] = h;
        }
        Ok(())
    }
}

/// Finite abelian group `ℤ/d₁ × … × ℤ/d_r` with `d₁ | d₂ | … | d_r`.
///
/// Elements are tuples indexed lexicographically, first coordinate most
/// significant, so `abelian_embed` agrees with [`FiniteGroup::abelian_product`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    factors: Vec<i64>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<i64>) -> Result<AbelianGroup> {
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidInput(format!("invariant factor {d} is below 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidInput(format!("invariant factor {} does not divide {}", w[0], w[1])));
        }
        let order = factors.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d as u64));
        match order {
            Some(o) if o <= MAX_ORDER as u64 => Ok(AbelianGroup { factors }),
            _ => Err(Error::TooLarge { what: "abelian group order".into(), size: order.unwrap_or(u64::MAX), limit: MAX_ORDER as u64 }),
        }
    }

    /// `ℤ/n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: i64) -> Result<AbelianGroup> {
        match n {
            1 => Ok(AbelianGroup::trivial()),
            _ => AbelianGroup::new(vec![n]),
        }
    }

    pub fn trivial() -> AbelianGroup {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<i64>() as usize
    }

    pub fn exponent(&self) -> i64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn element(&self, mut idx: usize) -> Vec<i64> {
        let mut t = vec![0; self.rank()];
        for (slot, &d) in t.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % d as usize) as i64;
            idx /= d as usize;
        }
        t
    }

    /// Index of a tuple; coordinates are reduced modulo their factor.
    pub fn index(&self, t: &[i64]) -> usize {
        assert_eq!(t.len(), self.rank(), "tuple length differs from rank");
        t.iter().zip(&self.factors).fold(0, |acc, (&x, &d)| acc * d as usize + x.rem_euclid(d) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        self.index(&x.iter().zip(&y).map(|(u, v)| u + v).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: usize) -> usize {
        self.scale(-1, a)
    }

    pub fn scale(&self, k: i64, a: usize) -> usize {
        self.index(&self.element(a).iter().map(|u| u * k).collect::<Vec<_>>())
    }

    /// Generator `e_i` of the `i`-th cyclic factor.
    pub fn basis(&self, i: usize) -> usize {
        let mut t = vec![0; self.rank()];
        t[i] = 1;
        self.index(&t)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Comma separated coordinates, the JSON key form of an element.
    pub fn label(&self, a: usize) -> String {
        self.element(a).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse_label(&self, s: &str) -> Result<usize> {
        let coords: std::result::Result<Vec<i64>, _> =
            if s.trim().is_empty() { Ok(Vec::new()) } else { s.split(',').map(|x| x.trim().parse()).collect() };
        match coords {
            Ok(c) if c.len() == self.rank() => Ok(self.index(&c)),
            _ => Err(Error::Parse(format!("element {s:?} does not match factors {:?}", self.factors))),
        }
    }

    /// The multiplication table of this group.
    pub fn embed(&self) -> Result<FiniteGroup> {
        FiniteGroup::abelian_product(&self.factors.iter().map(|&d| d as usize).collect::<Vec<_>>())
    }
}

/// An abelian [`FiniteGroup`] written in invariant-factor form, with the
/// images of the standard generators.
pub fn decompose_abelian(g: &FiniteGroup) -> Result<(AbelianGroup, Vec<usize>)> {
    if !g.is_abelian() {
        return Err(Error::InvalidInput("group is not abelian".into()));
    }
    let n = g.order();
    let orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();

    // p-primary partitions from the counts of p^k-torsion elements
    let mut prime_parts: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            let mut sums = Vec::new();
            let mut k = 1u32;
            loop {
                let pk = p.pow(k);
                let cnt = orders.iter().filter(|&&o| pk % o == 0).count();
                let s = cnt.ilog(p);
                if sums.last() == Some(&s) {
                    break;
                }
                sums.push(s);
                k += 1;
            }
            // sums[k-1] = Σ min(λ_i, k); the conjugate partition is its difference sequence
            let mut conj = Vec::new();
            let mut prev = 0;
            for s in sums {
                conj.push(s - prev);
                prev = s;
            }
            let parts: Vec<u32> = (1..=conj[0]).map(|i| conj.iter().filter(|&&c| c >= i).count() as u32).collect();
            prime_parts.push((p, parts));
        }
        p += 1;
    }
    let rank = prime_parts.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
    let mut factors = vec![1usize; rank];
    for (p, parts) in &prime_parts {
        // parts are descending; the largest goes to the last factor
        for (i, &e) in parts.iter().enumerate() {
            factors[rank - 1 - i] *= p.pow(e);
        }
    }
    let abelian = AbelianGroup::new(factors.iter().map(|&d| d as i64).collect())?;

    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    if !find_basis(g, &orders, &factors, &mut gens, &mut span) {
        return Err(Error::InvalidInput("failed to find a basis of the abelian group".into()));
    }
    Ok((abelian, gens))
}

fn find_basis(g: &FiniteGroup, orders: &[usize], factors: &[usize], gens: &mut Vec<usize>, span: &mut Vec<usize>) -> bool {
    let i = gens.len();
    if i == factors.len() {
        return true;
    }
    let d = factors[i];
    let members: HashSet<usize> = span.iter().copied().collect();
    for x in g.elements().filter(|&x| orders[x] == d) {
        // independence: x^j ∉ span for 0 < j < d
        let mut y = x;
        let mut independent = true;
        for _ in 1..d {
            if members.contains(&y) {
                independent = false;
                break;
            }
            y = g.mul(y, x);
        }
        if !independent {
            continue;
        }
        let old = span.clone();
        let mut next = Vec::with_capacity(span.len() * d);
        let mut power = g.identity();
        for _ in 0..d {
            next.extend(old.iter().map(|&s| g.mul(s, power)));
            power = g.mul(power, x);
        }
        *span = next;
        gens.push(x);
        if find_basis(g, orders, factors, gens, span) {
            return true;
        }
        gens.pop();
        *span = old;
    }
    false
}

/// A left action of a finite group on `0..points`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    points: usize,
    table: Vec<usize>,
}

/// One orbit with its least point and the stabilizer of that point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub rep: usize,
    pub points: Vec<usize>,
    pub stabilizer: Vec<usize>,
}

impl GroupAction {
    /// `table[g][x]` is the image of point `x` under `g`.
    pub fn new(group: &FiniteGroup, table: Vec<Vec<usize>>) -> Result<GroupAction> {
        if table.len() != group.order() {
            return Err(Error::InvalidInput("action table needs one row per group element".into()));
        }
        let points = table[0].len();
        if table.iter().any(|r| r.len() != points || r.iter().any(|&y| y >= points)) {
            return Err(Error::InvalidInput("ragged or out-of-range action table".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let a = GroupAction { group: group.clone(), points, table: flat };
        for x in 0..points {
            if a.act(group.identity(), x) != x {
                return Err(Error::NotAnAction(group.identity(), group.identity(), x));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                for x in 0..points {
                    if a.act(group.mul(g, h), x) != a.act(g, a.act(h, x)) {
                        return Err(Error::NotAnAction(g, h, x));
                    }
                }
            }
        }
        Ok(a)
    }

    /// Left multiplication of a group on itself.
    pub fn regular(group: &FiniteGroup) -> GroupAction {
        let n = group.order();
        GroupAction { group: group.clone(), points: n, table: (0..n * n).map(|i| group.mul(i / n, i % n)).collect() }
    }

    pub fn trivial(group: &FiniteGroup, points: usize) -> GroupAction {
        GroupAction { group: group.clone(), points, table: (0..group.order() * points).map(|i| i % points).collect() }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.table[g * self.points + x]
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.act(g, x) == x).collect()
    }

    /// Orbits in order of their least point.
    pub fn orbits_with_stabilizers(&self) -> Vec<Orbit> {
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        for x in 0..self.points {
            if seen[x] {
                continue;
            }
            let mut pts: Vec<usize> = self.group.elements().map(|g| self.act(g, x)).collect();
            pts.sort_unstable();
            pts.dedup();
            for &y in &pts {
                seen[y] = true;
            }
            out.push(Orbit { rep: x, points: pts, stabilizer: self.stabilizer(x) });
        }
        out
    }

    /// Only the identity fixes every point.
    pub fn is_effective(&self) -> bool {
        self.group.elements().filter(|&g| g != self.group.identity()).all(|g| (0..self.points).any(|x| self.act(g, x) != x))
    }
}

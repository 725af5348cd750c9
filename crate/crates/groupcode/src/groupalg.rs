//! Abstract finite groups as Cayley tables, the group algebra FG, its
//! ideals, and the coordinate bijection between F^n and FG.
//!
//! Group labels are 0..n-1 with 0 the identity. A group is built either
//! from a spec string ("C6", "D8", "E2^3", "S4", "A:2x4", "MC:3,2,2",
//! products joined by 'x'), from a regular permutation group, or from an
//! explicit multiplication rule. Axioms are verified exhaustively at
//! construction for the string-driven paths.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};
use crate::lincode::{rref, LinearCode};
use crate::perm::{PermGroup, Permutation};

struct GroupData {
    n: usize,
    name: String,
    /// Flat n*n Cayley table; entry at [a*n + b] is a*b.
    table: Vec<u16>,
    inv: Vec<u16>,
    orders: Vec<u32>,
    gens: Vec<usize>,
}

/// A finite group by multiplication table. Cheap to clone; equality is
/// table equality (same labeling), not isomorphism.
#[derive(Clone)]
pub struct FiniteGroupTable {
    data: Arc<GroupData>,
}

impl PartialEq for FiniteGroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.data.n == other.data.n && self.data.table == other.data.table
    }
}

impl Eq for FiniteGroupTable {}

impl fmt::Debug for FiniteGroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroupTable({}, order {})", self.data.name, self.data.n)
    }
}

impl FiniteGroupTable {
    /// Builds from a multiplication rule on labels; verifies axioms.
    pub fn from_rule(name: &str, n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteGroupTable> {
        if n == 0 || n > 64 {
            return Err(Error::InvalidParameter(format!("group order {n} out of range [1,64]")));
        }
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(Error::NotAGroup("product out of range".into()));
                }
                table[a * n + b] = c as u16;
            }
        }
        Self::from_table(name, n, table)
    }

    pub fn from_table(name: &str, n: usize, table: Vec<u16>) -> Result<FiniteGroupTable> {
        if table.len() != n * n {
            return Err(Error::SizeMismatch { expected: n * n, got: table.len() });
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        // identity = 0
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::NotAGroup("label 0 is not an identity".into()));
            }
        }
        // inverses
        let mut inv = vec![u16::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if at(a, b) == 0 && at(b, a) == 0 {
                    inv[a] = b as u16;
                }
            }
            if inv[a] == u16::MAX {
                return Err(Error::NotAGroup(format!("label {a} has no inverse")));
            }
        }
        // associativity, exhaustive (n <= 64)
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        let mut orders = vec![0u32; n];
        for a in 0..n {
            let mut x = a;
            let mut ord = 1;
            while x != 0 {
                x = at(x, a);
                ord += 1;
            }
            orders[a] = ord;
        }
        let mut g = GroupData {
            n,
            name: name.to_string(),
            table,
            inv,
            orders,
            gens: vec![],
        };
        g.gens = g.greedy_generators();
        Ok(FiniteGroupTable { data: Arc::new(g) })
    }

    /// Converts a regular or general permutation group to an abstract
    /// table; element 0 is the identity (the lexicographically smallest
    /// permutation, which sorts first).
    pub fn from_perm_group(g: &PermGroup, name: &str) -> FiniteGroupTable {
        let n = g.order();
        let elems = g.elements();
        debug_assert!(elems[0].is_identity());
        let mut table = vec![0u16; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let c = a.compose(b).unwrap();
                let idx = g.element_index(&c).expect("closed");
                table[i * n + j] = idx as u16;
            }
        }
        FiniteGroupTable::from_table(name, n, table).expect("a permutation group satisfies the axioms")
    }

    pub fn order(&self) -> usize {
        self.data.n
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn with_name(&self, name: &str) -> FiniteGroupTable {
        let d = &self.data;
        FiniteGroupTable {
            data: Arc::new(GroupData {
                n: d.n,
                name: name.to_string(),
                table: d.table.clone(),
                inv: d.inv.clone(),
                orders: d.orders.clone(),
                gens: d.gens.clone(),
            }),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data.table[a * self.data.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.data.inv[a] as usize
    }

    pub fn order_of(&self, a: usize) -> u32 {
        self.data.orders[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.data.gens
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.data.n;
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.data.orders.iter().any(|&o| o as usize == self.data.n)
    }

    pub fn center_size(&self) -> usize {
        let n = self.data.n;
        (0..n)
            .filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .count()
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<u32> {
        let mut v = self.data.orders.clone();
        v.sort();
        v
    }

    /// Closure of a label set under multiplication and inverses.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.data.n];
        seen[0] = true;
        let mut queue: Vec<usize> = vec![0];
        for &g in gens {
            if !seen[g] {
                seen[g] = true;
                queue.push(g);
            }
        }
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &g in gens {
                for y in [self.mul(x, g), self.mul(g, x)] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push(y);
                    }
                }
            }
        }
        (0..self.data.n).filter(|&x| seen[x]).collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: HashSet<usize> = elems.iter().copied().collect();
        set.contains(&0)
            && elems
                .iter()
                .all(|&a| set.contains(&self.inv(a)) && elems.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_abelian_subset(&self, elems: &[usize]) -> bool {
        elems
            .iter()
            .all(|&a| elems.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let set: HashSet<usize> = elems.iter().copied().collect();
        (0..self.data.n).all(|g| {
            elems
                .iter()
                .all(|&h| set.contains(&self.mul(self.mul(g, h), self.inv(g))))
        })
    }

    /// All subgroups, as sorted label lists, by closure growth.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = vec![0usize];
        seen.insert(trivial.clone());
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        queue.push_back(trivial);
        while let Some(h) = queue.pop_front() {
            for g in 1..self.data.n {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens: Vec<usize> = h.clone();
                gens.push(g);
                let k = self.subgroup_closure(&gens);
                if seen.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Does G have a normal subgroup of order `s` with cyclic quotient?
    pub fn has_normal_with_cyclic_quotient(&self, s: usize) -> bool {
        if !self.data.n.is_multiple_of(s) {
            return false;
        }
        let h = self.data.n / s;
        self.all_subgroups().into_iter().any(|sub| {
            sub.len() == s && self.is_normal(&sub) && self.quotient_has_element_of_order(&sub, h)
        })
    }

    fn quotient_has_element_of_order(&self, normal: &[usize], h: usize) -> bool {
        let set: HashSet<usize> = normal.iter().copied().collect();
        (0..self.data.n).any(|g| {
            // order of gN in G/N
            let mut x = g;
            let mut ord = 1;
            while !set.contains(&x) {
                x = self.mul(x, g);
                ord += 1;
            }
            ord == h
        })
    }

    /// The left regular representation of g: label x -> g*x.
    pub fn left_regular_perm(&self, g: usize) -> Permutation {
        let images: Vec<u8> = (0..self.data.n).map(|x| self.mul(g, x) as u8).collect();
        Permutation::from_images(images).expect("rows of a Cayley table are bijections")
    }

    /// The image of the left regular representation, a regular subgroup of
    /// S_n in the coordinate labeling of FG.
    pub fn left_regular_group(&self) -> PermGroup {
        let elements: Vec<Permutation> = (0..self.data.n).map(|g| self.left_regular_perm(g)).collect();
        PermGroup::from_elements(self.data.n, elements)
    }
}

impl GroupData {
    fn greedy_generators_impl(n: usize, mul: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        let closure = |gens: &[usize]| -> Vec<bool> {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut queue = vec![0usize];
            let mut i = 0;
            while i < queue.len() {
                let x = queue[i];
                i += 1;
                for &g in gens {
                    let y = mul(x, g);
                    if !seen[y] {
                        seen[y] = true;
                        queue.push(y);
                    }
                }
            }
            seen
        };
        let mut gens: Vec<usize> = Vec::new();
        let mut covered = closure(&gens);
        for g in 1..n {
            if covered[g] {
                continue;
            }
            gens.push(g);
            covered = closure(&gens);
            if covered.iter().all(|&b| b) {
                break;
            }
        }
        gens
    }

    fn greedy_generators(&self) -> Vec<usize> {
        Self::greedy_generators_impl(self.n, |a, b| self.table[a * self.n + b] as usize)
    }
}

// ---- group spec mini-language ----

/// Parses the spec mini-language:
///   "C<n>" cyclic, "D<n>" dihedral of order n (n even), "E<p>^<m>"
///   elementary abelian, "S<k>" symmetric, "A:<d1>x<d2>x..." abelian
///   invariant-factor product, "MC:<n>,<m>,<r>" split metacyclic
///   <a,b | a^n = b^m = 1, b a b^-1 = a^r>, and direct products of atoms
///   joined by 'x' (or the multiplication sign).
pub fn group_from_spec(spec: &str) -> Result<FiniteGroupTable> {
    let atoms = split_atoms(spec)?;
    let mut groups = atoms.iter().map(|a| atom_from_spec(a)).collect::<Result<Vec<_>>>()?;
    let mut g = groups.remove(0);
    for h in groups {
        g = direct_product(&g, &h)?;
    }
    Ok(g)
}

fn split_atoms(spec: &str) -> Result<Vec<String>> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace('\u{00d7}', "x");
    if s.is_empty() {
        return Err(Error::InvalidSpec("empty group spec".into()));
    }
    let bytes: Vec<char> = s.chars().collect();
    let mut atoms = Vec::new();
    let mut cur = String::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c == 'x' {
            // inside an "A:" atom an 'x' followed by a digit separates
            // invariant factors and stays in the atom
            if cur.starts_with("A:") && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                cur.push(c);
            } else if cur.is_empty() {
                return Err(Error::InvalidSpec(format!("dangling 'x' in '{spec}'")));
            } else {
                atoms.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
        i += 1;
    }
    if cur.is_empty() {
        return Err(Error::InvalidSpec(format!("dangling 'x' in '{spec}'")));
    }
    atoms.push(cur);
    Ok(atoms)
}

fn atom_from_spec(atom: &str) -> Result<FiniteGroupTable> {
    let bad = || Error::InvalidSpec(format!("bad group atom '{atom}'"));
    if let Some(rest) = atom.strip_prefix("MC:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let n: usize = parts[0].parse().map_err(|_| bad())?;
        let m: usize = parts[1].parse().map_err(|_| bad())?;
        let r: usize = parts[2].parse().map_err(|_| bad())?;
        return metacyclic(n, m, r);
    }
    if let Some(rest) = atom.strip_prefix("A:") {
        let factors: Vec<usize> = rest
            .split('x')
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if factors.is_empty() || factors.contains(&0) {
            return Err(bad());
        }
        let mut g = cyclic(factors[0])?;
        for &d in &factors[1..] {
            g = direct_product(&g, &cyclic(d)?)?;
        }
        return Ok(g.with_name(&format!("A:{rest}")));
    }
    if let Some(rest) = atom.strip_prefix('E') {
        let (p, m) = rest.split_once('^').ok_or_else(bad)?;
        let p: usize = p.parse().map_err(|_| bad())?;
        let m: u32 = m.parse().map_err(|_| bad())?;
        return elementary_abelian(p, m);
    }
    if let Some(rest) = atom.strip_prefix('C') {
        let n: usize = rest.parse().map_err(|_| bad())?;
        return cyclic(n);
    }
    if let Some(rest) = atom.strip_prefix('D') {
        let n: usize = rest.parse().map_err(|_| bad())?;
        return dihedral(n);
    }
    if let Some(rest) = atom.strip_prefix('S') {
        let k: usize = rest.parse().map_err(|_| bad())?;
        return symmetric_table(k);
    }
    Err(bad())
}

pub fn cyclic(n: usize) -> Result<FiniteGroupTable> {
    FiniteGroupTable::from_rule(&format!("C{n}"), n, |a, b| (a + b) % n)
}

/// Dihedral group of ORDER n (n even): elements rho^i s^j with labels
/// j*(n/2) + i.
pub fn dihedral(n: usize) -> Result<FiniteGroupTable> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidSpec(format!("dihedral order {n} must be even and >= 2")));
    }
    let m = n / 2;
    FiniteGroupTable::from_rule(&format!("D{n}"), n, move |a, b| {
        let (i1, j1) = (a % m, a / m);
        let (i2, j2) = (b % m, b / m);
        // (rho^i1 s^j1)(rho^i2 s^j2): s rho^i = rho^{-i} s
        let i = if j1 == 0 { (i1 + i2) % m } else { (i1 + m - i2 % m) % m };
        let j = (j1 + j2) % 2;
        j * m + i
    })
}

pub fn elementary_abelian(p: usize, m: u32) -> Result<FiniteGroupTable> {
    let is_p_prime = p >= 2 && (2..p).all(|d| !p.is_multiple_of(d));
    if !is_p_prime || m == 0 {
        return Err(Error::InvalidSpec(format!("E{p}^{m} needs prime p and m >= 1")));
    }
    let n = p.checked_pow(m).filter(|&n| n <= 64).ok_or_else(|| {
        Error::InvalidSpec(format!("E{p}^{m} exceeds order 64"))
    })?;
    FiniteGroupTable::from_rule(&format!("E{p}^{m}"), n, move |a, b| {
        let mut out = 0;
        let mut scale = 1;
        let (mut a, mut b) = (a, b);
        for _ in 0..m {
            out += (a % p + b % p) % p * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    })
}

/// Symmetric group on k letters as a table, labels by lexicographic rank of
/// the image vector (identity is rank 0).
pub fn symmetric_table(k: usize) -> Result<FiniteGroupTable> {
    if k == 0 || k > 4 {
        // 5! = 120 > 64
        return Err(Error::InvalidSpec(format!("S{k} table supported for k in 1..=4")));
    }
    let mut perms: Vec<Vec<u8>> = Vec::new();
    let mut cur: Vec<u8> = (0..k as u8).collect();
    loop {
        perms.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..k - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    perms.sort();
    let index = |p: &[u8]| perms.binary_search_by(|x| x.as_slice().cmp(p)).unwrap();
    FiniteGroupTable::from_rule(&format!("S{k}"), perms.len(), |a, b| {
        let pa = &perms[a];
        let pb = &perms[b];
        let comp: Vec<u8> = (0..k).map(|i| pa[pb[i] as usize]).collect();
        index(&comp)
    })
}

/// Split metacyclic <a, b | a^n = b^m = 1, b a b^-1 = a^r>; requires
/// r^m = 1 mod n. Labels j*n + i for a^i b^j.
pub fn metacyclic(n: usize, m: usize, r: usize) -> Result<FiniteGroupTable> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidSpec("MC parameters must be positive".into()));
    }
    let mut rm = 1usize;
    for _ in 0..m {
        rm = rm * r % n;
    }
    if rm % n != 1 % n {
        return Err(Error::InvalidSpec(format!(
            "MC:{n},{m},{r} invalid: r^m = {rm} != 1 mod n"
        )));
    }
    // r^j mod n, precomputed
    let mut rpow = vec![1usize; m];
    for j in 1..m {
        rpow[j] = rpow[j - 1] * r % n;
    }
    FiniteGroupTable::from_rule(&format!("MC:{n},{m},{r}"), n * m, move |a, b| {
        let (i1, j1) = (a % n, a / n);
        let (i2, j2) = (b % n, b / n);
        // (a^i1 b^j1)(a^i2 b^j2) = a^{i1 + i2*r^j1} b^{j1+j2}
        let i = (i1 + i2 * rpow[j1]) % n;
        let j = (j1 + j2) % m;
        j * n + i
    })
}

/// Dicyclic group of order 4m: <a, b | a^{2m} = 1, b^2 = a^m, b a b^-1 = a^-1>.
/// Labels j*2m + i for a^i b^j, j in {0,1}.
pub fn dicyclic(m: usize) -> Result<FiniteGroupTable> {
    if m < 2 {
        return Err(Error::InvalidSpec("dicyclic needs m >= 2".into()));
    }
    let n2 = 2 * m;
    let name = if m == 2 { "Q8".to_string() } else { format!("Dic{m}") };
    FiniteGroupTable::from_rule(&name, 4 * m, move |a, b| {
        let (i1, j1) = (a % n2, a / n2);
        let (i2, j2) = (b % n2, b / n2);
        if j1 == 0 {
            let i = (i1 + i2) % n2;
            let j = j2;
            j * n2 + i
        } else if j2 == 0 {
            // (a^i1 b)(a^i2) = a^{i1 - i2} b
            let i = (i1 + n2 - i2 % n2) % n2;
            n2 + i
        } else {
            // (a^i1 b)(a^i2 b) = a^{i1 - i2 + m}
            
            (i1 + n2 - i2 % n2 + m) % n2
        }
    })
}

/// The alternating group A4 as a table, from its permutation action.
pub fn alternating4() -> FiniteGroupTable {
    let caps = Caps::default();
    let g = PermGroup::closure(
        &[
            Permutation::parse_cycles("(1,2,3)", 4).unwrap(),
            Permutation::parse_cycles("(1,2)(3,4)", 4).unwrap(),
        ],
        caps.group_order,
    )
    .unwrap();
    FiniteGroupTable::from_perm_group(&g, "A4")
}

pub fn direct_product(a: &FiniteGroupTable, b: &FiniteGroupTable) -> Result<FiniteGroupTable> {
    let (na, nb) = (a.order(), b.order());
    let a = a.clone();
    let b = b.clone();
    let name = format!("{}x{}", a.name(), b.name());
    FiniteGroupTable::from_rule(&name, na * nb, move |x, y| {
        let (xa, xb) = (x / nb, x % nb);
        let (ya, yb) = (y / nb, y % nb);
        a.mul(xa, ya) * nb + b.mul(xb, yb)
    })
}

// ---- catalog of groups of order <= 13 ----

/// All isomorphism types of groups of the given order, 1 <= n <= 13.
pub fn groups_of_order(n: usize) -> Result<Vec<FiniteGroupTable>> {
    let g = |s: &str| group_from_spec(s);
    Ok(match n {
        1 => vec![g("C1")?],
        2 => vec![g("C2")?],
        3 => vec![g("C3")?],
        4 => vec![g("C4")?, g("A:2x2")?.with_name("C2xC2")],
        5 => vec![g("C5")?],
        6 => vec![g("C6")?, g("S3")?],
        7 => vec![g("C7")?],
        8 => vec![
            g("C8")?,
            g("A:4x2")?.with_name("C4xC2"),
            g("E2^3")?,
            g("D8")?,
            dicyclic(2)?, // Q8
        ],
        9 => vec![g("C9")?, g("A:3x3")?.with_name("C3xC3")],
        10 => vec![g("C10")?, g("D10")?],
        11 => vec![g("C11")?],
        12 => vec![
            g("C12")?,
            g("A:6x2")?.with_name("C6xC2"),
            g("D12")?,
            alternating4(),
            dicyclic(3)?, // Dic3
        ],
        13 => vec![g("C13")?],
        _ => {
            return Err(Error::InvalidParameter(format!(
                "group catalog covers orders 1..=13, got {n}"
            )))
        }
    })
}

/// Name of the isomorphism type of `g`, for |g| <= 13.
pub fn iso_type_name(g: &FiniteGroupTable) -> Result<String> {
    for candidate in groups_of_order(g.order())? {
        if are_isomorphic(g, &candidate, &Caps::default())?.is_some() {
            return Ok(candidate.name().to_string());
        }
    }
    unreachable!("catalog lists every isomorphism type of order <= 13")
}

// ---- isomorphism testing ----

/// Generator-image backtracking with order-profile pruning. Returns a full
/// label map G1 -> G2 or None.
pub fn are_isomorphic(
    g1: &FiniteGroupTable,
    g2: &FiniteGroupTable,
    caps: &Caps,
) -> Result<Option<Vec<usize>>> {
    if g1.order() != g2.order() {
        return Ok(None);
    }
    let n = g1.order();
    if n > caps.iso_order {
        return Err(Error::CapExceeded {
            what: "group order for isomorphism testing",
            limit: caps.iso_order as u64,
            needed: n as u64,
        });
    }
    // cheap invariants
    if g1.order_profile() != g2.order_profile()
        || g1.is_abelian() != g2.is_abelian()
        || g1.center_size() != g2.center_size()
    {
        return Ok(None);
    }
    let gens = g1.generators().to_vec();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    Ok(extend_iso(g1, g2, &gens, 0, &mut map))
}

fn extend_iso(
    g1: &FiniteGroupTable,
    g2: &FiniteGroupTable,
    gens: &[usize],
    gi: usize,
    map: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if gi == gens.len() {
        return Some(map.clone());
    }
    let g = gens[gi];
    let n = g1.order();
    let used: HashSet<usize> = map.iter().copied().filter(|&x| x != usize::MAX).collect();
    for target in 0..n {
        if used.contains(&target) || g2.order_of(target) != g1.order_of(g) {
            continue;
        }
        let saved = map.clone();
        if close_map(g1, g2, map, g, target) {
            if let Some(done) = extend_iso(g1, g2, gens, gi + 1, map) {
                return Some(done);
            }
        }
        *map = saved;
    }
    None
}

/// Extends the partial isomorphism with g -> target and closes it under
/// products; false on any conflict.
fn close_map(
    g1: &FiniteGroupTable,
    g2: &FiniteGroupTable,
    map: &mut [usize],
    g: usize,
    target: usize,
) -> bool {
    if map[g] != usize::MAX {
        return map[g] == target;
    }
    // known elements so far
    let known: Vec<usize> = (0..g1.order()).filter(|&x| map[x] != usize::MAX).collect();
    let mut inverse_used = vec![false; g2.order()];
    for &x in &known {
        inverse_used[map[x]] = true;
    }
    if inverse_used[target] {
        return false;
    }
    map[g] = target;
    inverse_used[target] = true;
    let mut frontier = vec![g];
    while let Some(x) = frontier.pop() {
        let known_now: Vec<usize> = (0..g1.order()).filter(|&y| map[y] != usize::MAX).collect();
        for &y in &known_now {
            for (a, b) in [(x, y), (y, x)] {
                let p = g1.mul(a, b);
                let q = g2.mul(map[a], map[b]);
                if map[p] == usize::MAX {
                    if inverse_used[q] {
                        map[p] = usize::MAX;
                        return false;
                    }
                    map[p] = q;
                    inverse_used[q] = true;
                    frontier.push(p);
                } else if map[p] != q {
                    return false;
                }
            }
        }
    }
    true
}

// ---- group algebra ----

/// The group algebra FG: a context for elementwise operations.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    pub group: FiniteGroupTable,
    pub field: FiniteField,
}

/// An element of FG: coefficient of group label g at index g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub coeffs: Vec<FieldElement>,
}

impl GroupAlgebra {
    pub fn new(group: FiniteGroupTable, field: FiniteField) -> GroupAlgebra {
        GroupAlgebra { group, field }
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> GroupAlgebraElement {
        GroupAlgebraElement {
            coeffs: vec![self.field.zero(); self.dim()],
        }
    }

    pub fn basis(&self, g: usize) -> GroupAlgebraElement {
        let mut x = self.zero();
        x.coeffs[g] = self.field.one();
        x
    }

    pub fn from_coeffs(&self, coeffs: Vec<FieldElement>) -> Result<GroupAlgebraElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::LengthMismatch { expected: self.dim(), got: coeffs.len() });
        }
        Ok(GroupAlgebraElement { coeffs })
    }

    pub fn add(&self, x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> GroupAlgebraElement {
        GroupAlgebraElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(&a, &b)| self.field.add(a, b))
                .collect(),
        }
    }

    /// Full convolution product in FG.
    pub fn mul(&self, x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = self.zero();
        for (g, &a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (h, &b) in y.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let gh = self.group.mul(g, h);
                out.coeffs[gh] = self.field.add(out.coeffs[gh], self.field.mul(a, b));
            }
        }
        out
    }

    /// g * x for a basis element g: a coefficient permutation.
    pub fn basis_mul_left(&self, g: usize, x: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = self.zero();
        for (h, &a) in x.coeffs.iter().enumerate() {
            out.coeffs[self.group.mul(g, h)] = a;
        }
        out
    }

    /// x * g for a basis element g.
    pub fn basis_mul_right(&self, x: &GroupAlgebraElement, g: usize) -> GroupAlgebraElement {
        let mut out = self.zero();
        for (h, &a) in x.coeffs.iter().enumerate() {
            out.coeffs[self.group.mul(h, g)] = a;
        }
        out
    }
}

/// Which multiplications an ideal must absorb.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sided {
    Left,
    TwoSided,
}

/// The bijection phi: coordinates -> group labels; `map[i]` is the label
/// assigned to coordinate i (0-based; textbook coordinate e_{i+1}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexBijection {
    map: Vec<usize>,
}

impl IndexBijection {
    pub fn new(map: Vec<usize>) -> Result<IndexBijection> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &g in &map {
            if g >= n || seen[g] {
                return Err(Error::NotABijection);
            }
            seen[g] = true;
        }
        Ok(IndexBijection { map })
    }

    /// The natural bijection e_i -> label i-1 (for cyclic groups this is
    /// the classical e_i -> g^{i-1}).
    pub fn natural(n: usize) -> IndexBijection {
        IndexBijection { map: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn label_of(&self, coord: usize) -> usize {
        self.map[coord]
    }

    pub fn coord_of(&self, label: usize) -> usize {
        self.map.iter().position(|&g| g == label).expect("bijection")
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Transport a coordinate vector into FG coefficients.
    pub fn to_algebra(&self, x: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if x.len() != self.map.len() {
            return Err(Error::LengthMismatch { expected: self.map.len(), got: x.len() });
        }
        let mut out = vec![FieldElement::ZERO; x.len()];
        for (i, &g) in self.map.iter().enumerate() {
            out[g] = x[i];
        }
        Ok(out)
    }

    /// Transport FG coefficients back to coordinates.
    pub fn from_algebra(&self, coeffs: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if coeffs.len() != self.map.len() {
            return Err(Error::LengthMismatch { expected: self.map.len(), got: coeffs.len() });
        }
        Ok(self.map.iter().map(|&g| coeffs[g]).collect())
    }
}

/// The bijection of the characterization theorem: coordinate h(1) carries
/// the element h, for each h in the regular group H.
pub fn regular_subgroup_phi(h: &PermGroup) -> Result<(FiniteGroupTable, IndexBijection)> {
    if !h.is_regular() {
        return Err(Error::NotRegular);
    }
    let table = FiniteGroupTable::from_perm_group(h, "H");
    let n = h.degree();
    let mut map = vec![usize::MAX; n];
    for (label, e) in h.elements().iter().enumerate() {
        map[e.apply(0)] = label;
    }
    Ok((table, IndexBijection::new(map)?))
}

/// The permutation representation f = f_phi attached to a bijection phi:
/// e_{f(g)(i)} = phi^{-1}(g * phi(e_i)). It is a homomorphism G -> S_n,
/// and for phi arising from a regular subgroup it is the identity
/// embedding.
pub fn f_phi(g: &FiniteGroupTable, phi: &IndexBijection, label: usize) -> Result<Permutation> {
    let n = g.order();
    if phi.n() != n {
        return Err(Error::SizeMismatch { expected: n, got: phi.n() });
    }
    let images: Vec<u8> = (0..n)
        .map(|i| phi.coord_of(g.mul(label, phi.label_of(i))) as u8)
        .collect();
    Permutation::from_images(images)
}

/// Is phi(C) a left ideal of FG? Stability under the group's generators is
/// checked on a basis of C; that suffices because left multiplication by a
/// generator is invertible and the generators produce the whole group.
pub fn is_left_ideal(c: &LinearCode, g: &FiniteGroupTable, phi: &IndexBijection) -> Result<bool> {
    ideal_check(c, g, phi, Sided::Left)
}

pub fn is_two_sided_ideal(c: &LinearCode, g: &FiniteGroupTable, phi: &IndexBijection) -> Result<bool> {
    ideal_check(c, g, phi, Sided::TwoSided)
}

fn ideal_check(c: &LinearCode, g: &FiniteGroupTable, phi: &IndexBijection, sided: Sided) -> Result<bool> {
    if g.order() != c.len() {
        return Err(Error::SizeMismatch { expected: c.len(), got: g.order() });
    }
    if phi.n() != c.len() {
        return Err(Error::SizeMismatch { expected: c.len(), got: phi.n() });
    }
    let alg = GroupAlgebra::new(g.clone(), c.field().clone());
    // basis of phi(C) in FG coordinates, as a canonical code for membership
    let algebra_rows: Vec<Vec<FieldElement>> = c
        .rows()
        .iter()
        .map(|r| phi.to_algebra(r))
        .collect::<Result<_>>()?;
    if algebra_rows.is_empty() {
        return Ok(true);
    }
    let span = LinearCode::from_rows(c.field(), &algebra_rows)?;
    for row in &algebra_rows {
        let x = GroupAlgebraElement { coeffs: row.clone() };
        for &gen in g.generators() {
            let left = alg.basis_mul_left(gen, &x);
            if !span.contains(&left.coeffs)? {
                return Ok(false);
            }
            if sided == Sided::TwoSided {
                let right = alg.basis_mul_right(&x, gen);
                if !span.contains(&right.coeffs)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Accumulating span with incremental elimination; rows kept in RREF.
struct Span {
    field: FiniteField,
    rows: Vec<Vec<FieldElement>>,
}

impl Span {
    fn new(field: &FiniteField) -> Span {
        Span {
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    /// Returns true if v was independent (span grew).
    fn insert(&mut self, v: &[FieldElement]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rref(&self.field, &mut rows);
        if rows.len() > self.rows.len() {
            self.rows = rows;
            true
        } else {
            false
        }
    }

}

/// Smallest (left or two-sided) ideal containing the generators, as a
/// canonical RREF basis.
pub fn ideal_generated(
    alg: &GroupAlgebra,
    gens: &[GroupAlgebraElement],
    sided: Sided,
) -> Result<Vec<GroupAlgebraElement>> {
    let n = alg.dim();
    if n > 64 {
        return Err(Error::CapExceeded {
            what: "group order for ideal span",
            limit: 64,
            needed: n as u64,
        });
    }
    let mut span = Span::new(&alg.field);
    let mut work: Vec<GroupAlgebraElement> = Vec::new();
    for x in gens {
        if x.coeffs.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: x.coeffs.len() });
        }
        if span.insert(&x.coeffs) {
            work.push(x.clone());
        }
    }
    while let Some(x) = work.pop() {
        for &g in alg.group.generators() {
            let mut products = vec![alg.basis_mul_left(g, &x)];
            if sided == Sided::TwoSided {
                products.push(alg.basis_mul_right(&x, g));
            }
            for y in products {
                if span.insert(&y.coeffs) {
                    work.push(y);
                }
            }
        }
    }
    Ok(span
        .rows
        .iter()
        .map(|r| GroupAlgebraElement { coeffs: r.clone() })
        .collect())
}

/// All (left or two-sided) ideals of FG, as canonical codes in FG
/// coordinates.
///
/// Every ideal is a sum of single-generator ideals, so the lattice is the
/// closure of { ideal(x) : x in FG } under pairwise sums. This covers group
/// orders where subspace-by-subspace filtering is far out of reach; the
/// filtering variant survives below as a cross-check oracle.
pub fn enumerate_ideals(alg: &GroupAlgebra, sided: Sided, caps: &Caps) -> Result<Vec<LinearCode>> {
    let n = alg.dim();
    let q = alg.field.q() as u64;
    let total = q.checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > caps.ideal_generators {
        return Err(Error::CapExceeded {
            what: "ideal generator scan",
            limit: caps.ideal_generators,
            needed: total,
        });
    }
    let key = |c: &LinearCode| -> Vec<u32> {
        let mut k: Vec<u32> = vec![c.dim() as u32];
        for row in c.rows() {
            k.extend(row.iter().map(|e| e.rep()));
        }
        k
    };
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut ideals: Vec<LinearCode> = Vec::new();
    let mut push = |c: LinearCode, ideals: &mut Vec<LinearCode>| -> bool {
        if seen.insert(key(&c)) {
            ideals.push(c);
            true
        } else {
            false
        }
    };
    push(LinearCode::zero(&alg.field, n), &mut ideals);
    // cyclic ideals
    let mut coeffs = vec![0u32; n];
    'outer: loop {
        // skip zero vector (already inserted)
        if coeffs.iter().any(|&c| c != 0) {
            let x = GroupAlgebraElement {
                coeffs: coeffs.iter().map(|&c| alg.field.element(c).unwrap()).collect(),
            };
            let basis = ideal_generated(alg, &[x], sided)?;
            let rows: Vec<Vec<FieldElement>> = basis.iter().map(|b| b.coeffs.clone()).collect();
            let c = LinearCode::from_rows(&alg.field, &rows)?;
            push(c, &mut ideals);
        }
        let mut i = 0;
        loop {
            if i == n {
                break 'outer;
            }
            coeffs[i] += 1;
            if coeffs[i] < q as u32 {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
    // close under pairwise sums
    let mut frontier: Vec<LinearCode> = ideals.clone();
    while let Some(a) = frontier.pop() {
        let snapshot = ideals.clone();
        for b in &snapshot {
            let mut rows = a.rows().to_vec();
            rows.extend(b.rows().iter().cloned());
            if rows.is_empty() {
                continue;
            }
            let sum = LinearCode::from_rows(&alg.field, &rows)?;
            if push(sum, &mut ideals) {
                frontier.push(ideals.last().unwrap().clone());
            }
        }
    }
    ideals.sort_by_key(key);
    Ok(ideals)
}

/// Oracle variant: enumerate every subspace of FG in RREF profile order and
/// keep the ideals. Exponentially expensive; guarded by the subspace cap.
pub fn enumerate_ideals_by_subspace_filter(
    alg: &GroupAlgebra,
    sided: Sided,
    caps: &Caps,
) -> Result<Vec<LinearCode>> {
    let n = alg.dim();
    let q = alg.field.q() as u64;
    let count = count_subspaces(n, q);
    if count > caps.subspace_count as u128 {
        return Err(Error::CapExceeded {
            what: "subspace enumeration",
            limit: caps.subspace_count,
            needed: count.min(u64::MAX as u128) as u64,
        });
    }
    let phi = IndexBijection::natural(n);
    let mut out = vec![LinearCode::zero(&alg.field, n)];
    for k in 1..=n {
        for_each_rref(&alg.field, n, k, &mut |code| {
            let keep = match sided {
                Sided::Left => is_left_ideal(code, &alg.group, &phi),
                Sided::TwoSided => is_two_sided_ideal(code, &alg.group, &phi),
            }?;
            if keep {
                out.push(code.clone());
            }
            Ok(())
        })?;
    }
    Ok(out)
}

/// Outcome of the two-abelian-factor harness for one group.
#[derive(Clone, Debug)]
pub struct AbReport {
    pub group_name: String,
    pub q: u32,
    pub a_order: usize,
    pub b_order: usize,
    pub ideal_count: usize,
    /// (dimension, abelian witness iso-type) per two-sided ideal.
    pub outcomes: Vec<(usize, Option<String>)>,
    /// Indices of ideals that failed the abelian-group-code test.
    pub violations: Vec<usize>,
}

/// Empirical harness for the two-abelian-factor theorem: when G = AB for
/// abelian subgroups A and B, every two-sided ideal of FG must be an
/// abelian group code. Enumerates the ideals and runs the abelian test on
/// each; the expected outcome is an empty violation list.
pub fn check_ab_theorem(
    alg: &GroupAlgebra,
    a_gens: &[usize],
    b_gens: &[usize],
    caps: &Caps,
) -> Result<AbReport> {
    let g = &alg.group;
    let n = g.order();
    let a = g.subgroup_closure(a_gens);
    let b = g.subgroup_closure(b_gens);
    if !g.is_abelian_subset(&a) {
        return Err(Error::Precondition("subgroup A is not abelian".into()));
    }
    if !g.is_abelian_subset(&b) {
        return Err(Error::Precondition("subgroup B is not abelian".into()));
    }
    // AB = G by element-product saturation
    let mut products = vec![false; n];
    for &x in &a {
        for &y in &b {
            products[g.mul(x, y)] = true;
        }
    }
    if !products.iter().all(|&p| p) {
        return Err(Error::Precondition("AB does not cover G".into()));
    }
    let ideals = enumerate_ideals(alg, Sided::TwoSided, caps)?;
    // candidate witness from the factorization: the left-regular image of
    // A together with the sigma-image of B commutes elementwise and, when
    // the ideal is two-sided, lands inside PAut. It is verified from
    // scratch below, so a failed candidate only costs the fallback to the
    // generic search.
    let lambda_g = g.left_regular_group();
    let mut k_gens: Vec<Permutation> = a_gens.iter().map(|&x| g.left_regular_perm(x)).collect();
    for &x in b_gens {
        k_gens.push(lambda_g.anti_iso_sigma(0, &g.left_regular_perm(x))?);
    }
    if k_gens.is_empty() {
        k_gens.push(Permutation::identity(n));
    }
    let k_candidate = PermGroup::closure(&k_gens, caps.group_order)?;
    let candidate_ok =
        k_candidate.order() == n && k_candidate.is_abelian() && k_candidate.is_regular();

    let mut outcomes = Vec::with_capacity(ideals.len());
    let mut violations = Vec::new();
    for (i, ideal) in ideals.iter().enumerate() {
        let mut witness: Option<String> = None;
        if candidate_ok {
            let preserved = k_candidate
                .generators()
                .iter()
                .all(|s| ideal.permute(s).map(|c| c == *ideal).unwrap_or(false));
            if preserved {
                let table = FiniteGroupTable::from_perm_group(&k_candidate, "K");
                witness = Some(if n <= 13 {
                    iso_type_name(&table)?
                } else {
                    abelian_invariant_name(&table)
                });
            }
        }
        if witness.is_none() {
            witness = crate::classify::is_abelian_group_code(ideal, caps)?.map(|w| w.iso_name);
        }
        if witness.is_none() {
            violations.push(i);
        }
        outcomes.push((ideal.dim(), witness));
    }
    Ok(AbReport {
        group_name: g.name().to_string(),
        q: alg.field.q(),
        a_order: a.len(),
        b_order: b.len(),
        ideal_count: ideals.len(),
        outcomes,
        violations,
    })
}

/// Invariant-factor name for an abelian group, largest factor first with
/// each factor divisible by the next, e.g. "C6xC2".
pub fn abelian_invariant_name(g: &FiniteGroupTable) -> String {
    debug_assert!(g.is_abelian());
    let n = g.order();
    let pow = |x: usize, mut e: u64| -> usize {
        let mut acc = 0usize;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = g.mul(acc, base);
            }
            base = g.mul(base, base);
            e >>= 1;
        }
        acc
    };
    let mut primes = Vec::new();
    let mut rest = n;
    let mut d = 2;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            primes.push(d);
            while rest.is_multiple_of(d) {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    // per prime: #elements killed by p^j is p^{sum_i min(lambda_i, j)}, so
    // the log jumps m_j - m_{j-1} count the parts of length >= j
    let mut partitions: Vec<Vec<u32>> = Vec::new();
    for &p in &primes {
        let log_p = |c: usize| -> u32 {
            let mut l = 0;
            let mut v = c;
            while v > 1 {
                v /= p;
                l += 1;
            }
            l
        };
        let mut lambda: Vec<u32> = Vec::new();
        let mut prev_m = 0u32;
        for j in 1..=12u32 {
            let c = (0..n).filter(|&x| pow(x, (p as u64).pow(j)) == 0).count();
            let m = log_p(c);
            let parts_ge_j = m - prev_m;
            if parts_ge_j == 0 {
                break;
            }
            while (lambda.len() as u32) < parts_ge_j {
                lambda.push(0);
            }
            for part in lambda.iter_mut().take(parts_ge_j as usize) {
                *part = j;
            }
            prev_m = m;
        }
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        partitions.push(lambda);
    }
    // invariant factors: combine r-th largest parts across primes
    let rows = partitions.iter().map(|l| l.len()).max().unwrap_or(0);
    let mut factors = Vec::new();
    for r in 0..rows {
        let mut f: u64 = 1;
        for (pi, &p) in primes.iter().enumerate() {
            if let Some(&e) = partitions[pi].get(r) {
                f *= (p as u64).pow(e);
            }
        }
        factors.push(f);
    }
    if factors.is_empty() {
        return "C1".to_string();
    }
    factors
        .iter()
        .map(|f| format!("C{f}"))
        .collect::<Vec<_>>()
        .join("x")
}


/// Gaussian-binomial count of all subspaces of F_q^n.
pub fn count_subspaces(n: usize, q: u64) -> u128 {
    let mut total: u128 = 0;
    for k in 0..=n {
        // [n choose k]_q
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..k {
            num *= (q as u128).pow((n - i) as u32) - 1;
            den *= (q as u128).pow((k - i) as u32) - 1;
        }
        total += num / den;
    }
    total
}

/// Visits every k-dimensional subspace of F_q^n exactly once, via its RREF:
/// choose pivot columns, then all assignments of the free entries.
fn for_each_rref(
    field: &FiniteField,
    n: usize,
    k: usize,
    visit: &mut dyn FnMut(&LinearCode) -> Result<()>,
) -> Result<()> {
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free positions: (row r, col c) with c > pivots[r], c not a pivot
        let mut free: Vec<(usize, usize)> = Vec::new();
        for r in 0..k {
            for c in pivots[r] + 1..n {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let q = field.q() as u64;
        let mut assign = vec![0u32; free.len()];
        loop {
            let mut rows = vec![vec![field.zero(); n]; k];
            for r in 0..k {
                rows[r][pivots[r]] = field.one();
            }
            for (idx, &(r, c)) in free.iter().enumerate() {
                rows[r][c] = field.element(assign[idx]).unwrap();
            }
            let code = LinearCode::from_rows(field, &rows)?;
            debug_assert_eq!(code.dim(), k);
            visit(&code)?;
            // odometer
            let mut i = 0;
            loop {
                if i == assign.len() {
                    // done with this pivot set
                    if !next_combination(&mut pivots, n) {
                        return Ok(());
                    }
                    break;
                }
                assign[i] += 1;
                if (assign[i] as u64) < q {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
            if i == assign.len() {
                break;
            }
        }
    }
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - (k - i) {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

//! Group-code decision procedures.
//!
//! A linear code C of length n is a left group code exactly when PAut(C)
//! contains a regular subgroup; it is a (two-sided) group code exactly when
//! some regular subgroup H has its full centralizer C_{S_n}(H) inside
//! PAut(C). Abelian and cyclic refinements ask for an abelian or cyclic
//! regular subgroup; for those, left and two-sided coincide since an
//! abelian regular subgroup is its own centralizer.
//!
//! The regular-subgroup search grows subgroups sharply: a regular subgroup
//! contains, for each point i, exactly one element mapping the base point
//! to i, so the search always adjoins a candidate moving the base point to
//! the smallest uncovered point. Candidates are the fixed-point-free
//! elements of PAut whose order divides n; partial closures are pruned as
//! soon as they exceed order n, acquire a fixed point, or break Lagrange
//! divisibility.

use std::collections::BTreeSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};
use crate::groupalg::{self, FiniteGroupTable};
use crate::lincode::LinearCode;
use crate::perm::{PermGroup, Permutation};

/// A regular subgroup of PAut(C) together with its isomorphism type.
#[derive(Clone, Debug)]
pub struct Witness {
    pub group: PermGroup,
    pub iso_name: String,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub n: usize,
    pub dim: usize,
    pub paut_order: u64,
    pub is_left_group_code: bool,
    /// One witness per isomorphism type found, deterministic order.
    pub left_witnesses: Vec<Witness>,
    pub is_group_code: bool,
    pub two_sided_witnesses: Vec<Witness>,
    pub is_abelian_group_code: bool,
    pub is_cyclic_group_code: bool,
    pub notes: Vec<String>,
}

/// What the regular-subgroup search should keep.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Keep {
    All,
    AbelianOnly,
}

struct RegularSearch<'a> {
    ambient: &'a PermGroup,
    n: usize,
    candidates: Vec<Permutation>,
    keep: Keep,
    stop_after_first: bool,
    seen: BTreeSet<Vec<Vec<u8>>>,
    found: Vec<PermGroup>,
    nodes: u64,
    node_cap: u64,
}

impl<'a> RegularSearch<'a> {
    fn new(ambient: &'a PermGroup, keep: Keep, stop_after_first: bool, caps: &Caps) -> RegularSearch<'a> {
        let n = ambient.degree();
        let candidates: Vec<Permutation> = ambient
            .elements()
            .iter()
            .filter(|e| {
                !e.is_identity() && e.is_fixed_point_free() && {
                    let o = e.order();
                    n.is_multiple_of(o)
                }
            })
            .cloned()
            .collect();
        RegularSearch {
            ambient,
            n,
            candidates,
            keep,
            stop_after_first,
            seen: BTreeSet::new(),
            found: Vec::new(),
            nodes: 0,
            node_cap: caps.search_nodes,
        }
    }

    fn key(elements: &[Permutation]) -> Vec<Vec<u8>> {
        let mut k: Vec<Vec<u8>> = elements.iter().map(|e| e.images().to_vec()).collect();
        k.sort();
        k
    }

    fn run(&mut self) -> Result<()> {
        if self.n == 1 {
            self.found.push(PermGroup::trivial(1));
            return Ok(());
        }
        if !self.ambient.is_transitive() {
            return Ok(());
        }
        let start = vec![Permutation::identity(self.n)];
        self.extend(start)
    }

    /// `elements` is a closed, fixed-point-free-outside-identity subgroup.
    fn extend(&mut self, elements: Vec<Permutation>) -> Result<()> {
        if self.stop_after_first && !self.found.is_empty() {
            return Ok(());
        }
        if elements.len() == self.n {
            let g = PermGroup::from_elements(self.n, elements);
            debug_assert!(g.is_regular());
            self.found.push(g);
            return Ok(());
        }
        // smallest point outside the orbit of 0 under the partial group
        let mut covered = vec![false; self.n];
        for e in &elements {
            covered[e.apply(0)] = true;
        }
        let target = (0..self.n).find(|&i| !covered[i]).expect("partial group is smaller than n");

        // snapshot candidate list indices to iterate deterministically
        for ci in 0..self.candidates.len() {
            if self.stop_after_first && !self.found.is_empty() {
                return Ok(());
            }
            let g = self.candidates[ci].clone();
            if g.apply(0) != target {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.node_cap {
                return Err(Error::CapExceeded {
                    what: "regular subgroup search nodes",
                    limit: self.node_cap,
                    needed: self.nodes,
                });
            }
            if self.keep == Keep::AbelianOnly && !elements.iter().all(|e| g.commutes_with(e)) {
                continue;
            }
            if let Some(closure) = self.grow(&elements, &g) {
                let key = Self::key(&closure);
                if self.seen.insert(key) {
                    self.extend(closure)?;
                }
            }
        }
        Ok(())
    }

    /// Closure of `elements` with g adjoined; None when the closure leaves
    /// the admissible region (order > n or not dividing n, a fixed point,
    /// or a non-commuting pair in abelian mode).
    fn grow(&self, elements: &[Permutation], g: &Permutation) -> Option<Vec<Permutation>> {
        let mut set: BTreeSet<Permutation> = elements.iter().cloned().collect();
        let mut queue: Vec<Permutation> = vec![g.clone()];
        set.insert(g.clone());
        while let Some(x) = queue.pop() {
            let snapshot: Vec<Permutation> = set.iter().cloned().collect();
            for y in snapshot {
                for z in [x.compose(&y).unwrap(), y.compose(&x).unwrap()] {
                    if set.contains(&z) {
                        continue;
                    }
                    if set.len() >= self.n {
                        return None;
                    }
                    if !z.is_identity() {
                        if !z.is_fixed_point_free() {
                            return None;
                        }
                        if self.keep == Keep::AbelianOnly
                            && !set.iter().all(|w| z.commutes_with(w))
                        {
                            return None;
                        }
                    }
                    set.insert(z.clone());
                    queue.push(z);
                }
            }
        }
        if !self.n.is_multiple_of(set.len()) {
            return None;
        }
        debug_assert!(set.iter().all(|e| self.ambient.contains(e)));
        Some(set.into_iter().collect())
    }
}

/// All regular subgroups of P acting on its degree-n points (full list, not
/// up to conjugacy). Deterministic order.
pub fn regular_subgroups(p: &PermGroup, caps: &Caps) -> Result<Vec<PermGroup>> {
    if p.order() as u64 > caps.group_order {
        return Err(Error::CapExceeded {
            what: "ambient group order",
            limit: caps.group_order,
            needed: p.order() as u64,
        });
    }
    let mut search = RegularSearch::new(p, Keep::All, false, caps);
    search.run()?;
    let mut found = search.found;
    found.sort_by_key(|g| RegularSearch::key(g.elements()));
    Ok(found)
}

/// Reduces a list of subgroups of P to conjugacy-class representatives
/// (conjugation by elements of P).
pub fn dedup_conjugate_subgroups(p: &PermGroup, subs: &[PermGroup]) -> Vec<PermGroup> {
    let mut reps: Vec<PermGroup> = Vec::new();
    let mut seen: BTreeSet<Vec<Vec<u8>>> = BTreeSet::new();
    for s in subs {
        let key = RegularSearch::key(s.elements());
        if seen.contains(&key) {
            continue;
        }
        reps.push(s.clone());
        // orbit of the subgroup under conjugation
        let mut orbit: BTreeSet<Vec<Vec<u8>>> = BTreeSet::new();
        orbit.insert(key);
        let mut frontier = vec![s.clone()];
        while let Some(g) = frontier.pop() {
            for tau in p.generators() {
                let conj = g.conjugate(tau).unwrap();
                let k = RegularSearch::key(conj.elements());
                if orbit.insert(k) {
                    frontier.push(conj);
                }
            }
        }
        seen.extend(orbit);
    }
    reps
}

fn abelian_regular_subgroup(p: &PermGroup, caps: &Caps) -> Result<Option<PermGroup>> {
    let mut search = RegularSearch::new(p, Keep::AbelianOnly, true, caps);
    search.run()?;
    Ok(search.found.into_iter().next())
}

/// First fixed-point-free n-cycle generating a transitive group, if any.
fn cyclic_regular_subgroup(p: &PermGroup) -> Option<PermGroup> {
    let n = p.degree();
    if n == 1 {
        return Some(PermGroup::trivial(1));
    }
    for e in p.elements() {
        if e.order() == n && e.is_fixed_point_free() {
            let g = PermGroup::closure(std::slice::from_ref(e), n as u64 + 1).ok()?;
            if g.order() == n && g.is_transitive() {
                return Some(g);
            }
        }
    }
    None
}

fn witness_from(group: PermGroup) -> Result<Witness> {
    let table = FiniteGroupTable::from_perm_group(&group, "H");
    let iso_name = groupalg::iso_type_name(&table)?;
    Ok(Witness { group, iso_name })
}

/// Collapses a subgroup list to one witness per isomorphism type,
/// lexicographically smallest generator images first.
fn witnesses_by_type(subs: &[PermGroup]) -> Result<Vec<Witness>> {
    let mut out: Vec<Witness> = Vec::new();
    for s in subs {
        let w = witness_from(s.clone())?;
        if !out.iter().any(|o| o.iso_name == w.iso_name) {
            out.push(w);
        }
    }
    out.sort_by(|a, b| a.iso_name.cmp(&b.iso_name));
    Ok(out)
}

/// Is sigma(C) = C for every sigma in the centralizer of H? H must be
/// regular; the centralizer is computed through the anti-isomorphism.
fn centralizer_inside_paut(c: &LinearCode, h: &PermGroup) -> Result<bool> {
    let cent = h.centralizer_of_regular(0)?;
    for s in cent.elements() {
        if c.permute(s)? != *c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full classification of a code per the characterization theorem.
pub fn classify(c: &LinearCode, caps: &Caps) -> Result<ClassificationReport> {
    let n = c.len();
    let k = c.dim();
    let mut notes = Vec::new();

    // degenerate codes (zero, full, or anything else fixed by all of S_n,
    // like repetition codes): PAut = S_n, so every group of order n is a
    // witness, both left and two-sided, by the built-in table instead of
    // an S_n enumeration
    let degenerate = k == 0 || k == n || symmetric_paut_shortcut(c)?;
    if degenerate {
        notes.push("PAut is the full symmetric group; every group of order n acts".into());
        let mut all: Vec<Witness> = groupalg::groups_of_order(n)?
            .into_iter()
            .map(|g| Witness {
                group: g.left_regular_group(),
                iso_name: g.name().to_string(),
            })
            .collect();
        all.sort_by(|a, b| a.iso_name.cmp(&b.iso_name));
        let mut fact = 1u64;
        for i in 1..=n as u64 {
            fact = fact.saturating_mul(i);
        }
        return Ok(ClassificationReport {
            n,
            dim: k,
            paut_order: fact,
            is_left_group_code: true,
            left_witnesses: all.clone(),
            is_group_code: true,
            two_sided_witnesses: all,
            is_abelian_group_code: true,
            is_cyclic_group_code: true,
            notes,
        });
    }

    let paut = c.paut(caps)?;
    let subs = regular_subgroups(&paut, caps)?;
    let left_witnesses = witnesses_by_type(&subs)?;
    let is_left = !subs.is_empty();

    let mut two_sided: Vec<PermGroup> = Vec::new();
    for h in &subs {
        if centralizer_inside_paut(c, h)? {
            two_sided.push(h.clone());
        }
    }
    let two_sided_witnesses = witnesses_by_type(&two_sided)?;
    let is_abelian = subs.iter().any(|h| h.is_abelian());
    let is_cyclic = subs
        .iter()
        .any(|h| h.elements().iter().any(|e| e.order() == n));
    if is_abelian {
        debug_assert!(!two_sided.is_empty(), "abelian regular witnesses are self-centralizing");
    }

    Ok(ClassificationReport {
        n,
        dim: k,
        paut_order: paut.order() as u64,
        is_left_group_code: is_left,
        left_witnesses,
        is_group_code: !two_sided.is_empty(),
        two_sided_witnesses,
        is_abelian_group_code: is_abelian,
        is_cyclic_group_code: is_cyclic,
        notes,
    })
}

pub fn is_left_group_code(c: &LinearCode, caps: &Caps) -> Result<bool> {
    Ok(classify(c, caps)?.is_left_group_code)
}

pub fn is_group_code(c: &LinearCode, caps: &Caps) -> Result<bool> {
    Ok(classify(c, caps)?.is_group_code)
}

/// Fast abelian test that avoids the full regular-subgroup enumeration.
pub fn is_abelian_group_code(c: &LinearCode, caps: &Caps) -> Result<Option<Witness>> {
    let n = c.len();
    let k = c.dim();
    if k == 0 || k == n {
        let g = groupalg::cyclic(n)?;
        return Ok(Some(Witness {
            group: g.left_regular_group(),
            iso_name: g.name().to_string(),
        }));
    }
    // S_n shortcut: contains the full shift group, so C_n is a witness
    if symmetric_paut_shortcut(c)? {
        let g = groupalg::cyclic(n)?;
        return Ok(Some(Witness {
            group: g.left_regular_group(),
            iso_name: g.name().to_string(),
        }));
    }
    let paut = c.paut(caps)?;
    match abelian_regular_subgroup(&paut, caps)? {
        Some(h) => Ok(Some(witness_from(h)?)),
        None => Ok(None),
    }
}

pub fn is_cyclic_group_code(c: &LinearCode, caps: &Caps) -> Result<Option<Witness>> {
    let n = c.len();
    let k = c.dim();
    if k == 0 || k == n || symmetric_paut_shortcut(c)? {
        let g = groupalg::cyclic(n)?;
        return Ok(Some(Witness {
            group: g.left_regular_group(),
            iso_name: g.name().to_string(),
        }));
    }
    let paut = c.paut(caps)?;
    match cyclic_regular_subgroup(&paut) {
        Some(h) => Ok(Some(witness_from(h)?)),
        None => Ok(None),
    }
}

fn symmetric_paut_shortcut(c: &LinearCode) -> Result<bool> {
    let n = c.len();
    if n < 2 {
        return Ok(true);
    }
    let mut swap: Vec<u8> = (0..n as u8).collect();
    swap.swap(0, 1);
    let mut cyc: Vec<u8> = (1..n as u8).collect();
    cyc.push(0);
    for images in [swap, cyc] {
        let s = Permutation::from_images(images)?;
        if c.permute(&s)? != *c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A left-G-code verdict with an explicit witness: the regular subgroup,
/// the isomorphism onto G, and the coordinate bijection phi.
#[derive(Clone, Debug)]
pub struct GCodeWitness {
    pub subgroup: PermGroup,
    /// iso[h-label] = G-label, for the subgroup's own table labeling.
    pub iso: Vec<usize>,
    pub phi: groupalg::IndexBijection,
}

/// Is C a left G-code for this specific G? Searches regular subgroups of
/// PAut(C) isomorphic to G.
pub fn is_left_g_code(c: &LinearCode, g: &FiniteGroupTable, caps: &Caps) -> Result<Option<GCodeWitness>> {
    let n = c.len();
    if g.order() != n {
        return Err(Error::SizeMismatch { expected: n, got: g.order() });
    }
    let k = c.dim();
    let candidates: Vec<PermGroup> = if k == 0 || k == n || symmetric_paut_shortcut(c)? {
        vec![g.left_regular_group()]
    } else {
        let paut = c.paut(caps)?;
        regular_subgroups(&paut, caps)?
    };
    let profile = {
        let mut p = g.order_profile();
        p.sort();
        p
    };
    for h in candidates {
        let table = FiniteGroupTable::from_perm_group(&h, "H");
        if table.order_profile() != profile {
            continue;
        }
        if let Some(iso) = groupalg::are_isomorphic(&table, g, caps)? {
            let (_, phi) = groupalg::regular_subgroup_phi(&h)?;
            return Ok(Some(GCodeWitness { subgroup: h, iso, phi }));
        }
    }
    Ok(None)
}

// ---- one-dimensional codes ----

/// Outcome of the one-dimensional criterion: the span of v is a left group
/// code exactly when the entries of v form a geometric multiset
/// { u xi^j : 0 <= j < h }, each value appearing s = n/h times, with xi a
/// primitive h-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimReport {
    pub n: usize,
    pub is_left_group_code: bool,
    pub h: usize,
    pub s: usize,
    pub u: Option<FieldElement>,
    pub xi: Option<FieldElement>,
}

impl OneDimReport {
    /// A group G of order n admits the code as a left G-code exactly when
    /// G has a normal subgroup of order s with cyclic quotient.
    pub fn admits(&self, g: &FiniteGroupTable) -> Result<bool> {
        if g.order() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, got: g.order() });
        }
        if !self.is_left_group_code {
            return Ok(false);
        }
        Ok(g.has_normal_with_cyclic_quotient(self.s))
    }
}

pub fn classify_one_dim(field: &FiniteField, v: &[FieldElement]) -> Result<OneDimReport> {
    let n = v.len();
    if n == 0 || v.iter().all(|e| e.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let negative = OneDimReport {
        n,
        is_left_group_code: false,
        h: 0,
        s: 0,
        u: None,
        xi: None,
    };
    if v.iter().any(|e| e.is_zero()) {
        return Ok(negative);
    }
    // multiset of values
    let mut counts: Vec<(FieldElement, usize)> = Vec::new();
    for &e in v {
        match counts.iter_mut().find(|(x, _)| *x == e) {
            Some((_, c)) => *c += 1,
            None => counts.push((e, 1)),
        }
    }
    counts.sort();
    let s = counts[0].1;
    if counts.iter().any(|&(_, c)| c != s) {
        return Ok(negative);
    }
    let h = counts.len();
    debug_assert_eq!(h * s, n);
    // D = u R for a multiplicative subgroup R iff D/u is closed under
    // multiplication, u any member of D
    let u = counts[0].0;
    let uinv = field.inv(u)?;
    let ratios: Vec<FieldElement> = counts.iter().map(|&(d, _)| field.mul(d, uinv)).collect();
    let in_ratios = |x: FieldElement| ratios.contains(&x);
    for &a in &ratios {
        for &b in &ratios {
            if !in_ratios(field.mul(a, b)) {
                return Ok(negative);
            }
        }
    }
    // R is a subgroup of the cyclic group F*, hence cyclic of order h;
    // its canonical generator is the smallest-rep element of order h
    let xi = ratios
        .iter()
        .copied()
        .filter(|&r| field.multiplicative_order(r).unwrap() as usize == h)
        .min()
        .expect("a finite multiplicative subgroup is cyclic");
    Ok(OneDimReport {
        n,
        is_left_group_code: true,
        h,
        s,
        u: Some(u),
        xi: Some(xi),
    })
}

/// The one-dimensional corollary: a left group code spanned by one vector
/// is always a cyclic group code, because C_n has a (normal) subgroup of
/// order s for every s dividing n.
pub fn one_dim_cyclic_corollary_check(field: &FiniteField, v: &[FieldElement]) -> Result<bool> {
    let report = classify_one_dim(field, v)?;
    if !report.is_left_group_code {
        return Err(Error::Precondition(
            "one-dim cyclic corollary applies only to left group codes".into(),
        ));
    }
    report.admits(&groupalg::cyclic(report.n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalg::group_from_spec;

    fn caps() -> Caps {
        Caps::default()
    }

    fn fcode(field: &FiniteField, rows: &[&[i64]]) -> LinearCode {
        let rows: Vec<Vec<FieldElement>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        LinearCode::from_rows(field, &rows).unwrap()
    }

    #[test]
    fn regular_subgroups_of_s4() {
        let caps = caps();
        let s4 = PermGroup::symmetric(4, &caps).unwrap();
        let subs = regular_subgroups(&s4, &caps).unwrap();
        // 3 cyclic C4s and the normal Klein group
        assert_eq!(subs.len(), 4);
        let mut names: Vec<String> = subs
            .iter()
            .map(|h| groupalg::iso_type_name(&FiniteGroupTable::from_perm_group(h, "H")).unwrap())
            .collect();
        names.sort();
        assert_eq!(names, vec!["C2xC2", "C4", "C4", "C4"]);
        // conjugacy: the three C4s fuse, the Klein group is normal
        let reps = dedup_conjugate_subgroups(&s4, &subs);
        assert_eq!(reps.len(), 2);
    }

    #[test]
    fn regular_subgroups_small_cases() {
        let caps = caps();
        let p = PermGroup::closure(&[Permutation::parse_cycles("(1,2)", 2).unwrap()], 10).unwrap();
        let subs = regular_subgroups(&p, &caps).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0], p);

        // intransitive ambient group: nothing
        let q = PermGroup::closure(&[Permutation::parse_cycles("(1,2)", 4).unwrap()], 10).unwrap();
        assert!(regular_subgroups(&q, &caps).unwrap().is_empty());
    }

    #[test]
    fn regular_subgroups_match_naive_enumeration() {
        // oracle: enumerate all subgroups of S_n by closure growth and keep
        // the regular ones
        let caps = caps();
        for n in [4usize, 5, 6] {
            let sn = PermGroup::symmetric(n, &caps).unwrap();
            let fast = regular_subgroups(&sn, &caps).unwrap();
            let mut naive: BTreeSet<Vec<Vec<u8>>> = BTreeSet::new();
            // grow subgroups from single elements of order dividing n
            let mut seen: BTreeSet<Vec<Vec<u8>>> = BTreeSet::new();
            let mut queue: Vec<Vec<Permutation>> = vec![vec![Permutation::identity(n)]];
            seen.insert(RegularSearch::key(&queue[0]));
            while let Some(h) = queue.pop() {
                if h.len() == n {
                    let g = PermGroup::from_elements(n, h.clone());
                    if g.is_regular() {
                        naive.insert(RegularSearch::key(g.elements()));
                    }
                    continue;
                }
                if h.len() > n {
                    continue;
                }
                for e in sn.elements() {
                    if e.is_identity() || h.contains(e) {
                        continue;
                    }
                    if !e.is_fixed_point_free() || n % e.order() != 0 {
                        continue;
                    }
                    let mut gens = h.clone();
                    gens.push(e.clone());
                    let Ok(k) = PermGroup::closure(&gens, n as u64) else {
                        continue;
                    };
                    if k.order() > n
                        || n % k.order() != 0
                        || !k.elements().iter().all(|x| x.is_identity() || x.is_fixed_point_free())
                    {
                        continue;
                    }
                    let key = RegularSearch::key(k.elements());
                    if seen.insert(key) {
                        queue.push(k.elements().to_vec());
                    }
                }
            }
            let fast_keys: BTreeSet<Vec<Vec<u8>>> =
                fast.iter().map(|g| RegularSearch::key(g.elements())).collect();
            assert_eq!(fast_keys, naive, "n = {n}");
        }
    }

    #[test]
    fn classify_f11_example() {
        let caps = caps();
        let f11 = FiniteField::new(11, 1).unwrap();
        let c = fcode(&f11, &[&[2, 5, -7, 2, -7, 5], &[4, -3, -1, -4, 1, 3]]);
        let report = classify(&c, &caps).unwrap();
        assert!(report.is_left_group_code);
        assert!(report.left_witnesses.iter().any(|w| w.iso_name == "S3"));
        assert!(!report.is_abelian_group_code);
        assert!(!report.is_cyclic_group_code);

        let s3 = group_from_spec("S3").unwrap();
        let w = is_left_g_code(&c, &s3, &caps).unwrap();
        assert!(w.is_some());
        let c6 = group_from_spec("C6").unwrap();
        assert!(is_left_g_code(&c, &c6, &caps).unwrap().is_none());
    }

    #[test]
    fn classify_intro_example() {
        let caps = caps();
        let f3 = FiniteField::new(3, 1).unwrap();
        let c = fcode(&f3, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let report = classify(&c, &caps).unwrap();
        assert!(report.is_left_group_code);
        assert!(report.is_abelian_group_code);
        assert!(report.is_cyclic_group_code);
        // C4 and the Klein group both act
        let names: Vec<&str> = report.left_witnesses.iter().map(|w| w.iso_name.as_str()).collect();
        assert!(names.contains(&"C4"));
        assert!(names.contains(&"C2xC2"));
        // two-sided: C4 is abelian hence self-centralizing
        assert!(report.is_group_code);

        let c4 = group_from_spec("C4").unwrap();
        let w = is_left_g_code(&c, &c4, &caps).unwrap().unwrap();
        // the witness bijection really maps C onto a left ideal
        assert!(groupalg::is_left_ideal(
            &c,
            &FiniteGroupTable::from_perm_group(&w.subgroup, "H"),
            &w.phi
        )
        .unwrap());
    }

    #[test]
    fn classify_repetition_and_onedim() {
        let caps = caps();
        let f5 = FiniteField::new(5, 1).unwrap();
        // repetition code: PAut = S_n, left group code for every type
        let rep = fcode(&f5, &[&[1, 1, 1, 1]]);
        let report = classify(&rep, &caps).unwrap();
        assert!(report.is_left_group_code);
        assert_eq!(report.paut_order, 24);
        let names: Vec<&str> = report.left_witnesses.iter().map(|w| w.iso_name.as_str()).collect();
        assert_eq!(names, vec!["C2xC2", "C4"]);

        // span{(1,2,3)} over F_5: not a left group code
        let c = fcode(&f5, &[&[1, 2, 3]]);
        let report = classify(&c, &caps).unwrap();
        assert!(!report.is_left_group_code);
    }

    #[test]
    fn hamming_cyclic_code_is_group_code() {
        let caps = caps();
        let f2 = FiniteField::new(2, 1).unwrap();
        // cyclic [7,4] code with generator polynomial 1 + x + x^3
        let c = fcode(
            &f2,
            &[
                &[1, 1, 0, 1, 0, 0, 0],
                &[0, 1, 1, 0, 1, 0, 0],
                &[0, 0, 1, 1, 0, 1, 0],
                &[0, 0, 0, 1, 1, 0, 1],
            ],
        );
        let report = classify(&c, &caps).unwrap();
        assert!(report.is_left_group_code);
        assert!(report.is_group_code);
        assert!(report.is_cyclic_group_code);
        assert_eq!(report.paut_order, 168);
    }

    #[test]
    fn one_dim_examples() {
        let field = FiniteField::new(5, 1).unwrap();
        // all-ones: h = 1, s = n
        let ones: Vec<FieldElement> = vec![field.one(); 6];
        let r = classify_one_dim(&field, &ones).unwrap();
        assert!(r.is_left_group_code);
        assert_eq!((r.h, r.s), (1, 6));
        for g in groupalg::groups_of_order(6).unwrap() {
            assert!(r.admits(&g).unwrap());
        }

        // (1,4,1,4) over F_5: h = 2 (xi = 4 = -1), s = 2
        let v: Vec<FieldElement> = [1u32, 4, 1, 4]
            .iter()
            .map(|&x| field.element(x).unwrap())
            .collect();
        let r = classify_one_dim(&field, &v).unwrap();
        assert!(r.is_left_group_code);
        assert_eq!((r.h, r.s), (2, 2));
        assert_eq!(r.xi.unwrap().rep(), 4);
        for g in groupalg::groups_of_order(4).unwrap() {
            assert!(r.admits(&g).unwrap());
        }

        // (1,2,3) over F_7: ratio multiset is not geometric
        let f7 = FiniteField::new(7, 1).unwrap();
        let v: Vec<FieldElement> = [1u32, 2, 3].iter().map(|&x| f7.element(x).unwrap()).collect();
        let r = classify_one_dim(&f7, &v).unwrap();
        assert!(!r.is_left_group_code);

        // zero vector
        assert_eq!(
            classify_one_dim(&f7, &[f7.zero(), f7.zero()]),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn one_dim_scaling_and_permutation_invariance() {
        let field = FiniteField::new(7, 1).unwrap();
        let v: Vec<FieldElement> = [1i64, 2, 4, 1, 2, 4]
            .iter()
            .map(|&x| field.from_int(x))
            .collect();
        let base = classify_one_dim(&field, &v).unwrap();
        assert!(base.is_left_group_code);
        assert_eq!((base.h, base.s), (3, 2));
        for lam in field.units() {
            let scaled: Vec<FieldElement> = v.iter().map(|&x| field.mul(lam, x)).collect();
            let r = classify_one_dim(&field, &scaled).unwrap();
            assert_eq!((r.h, r.s, r.xi), (base.h, base.s, base.xi));
        }
        let sigma = Permutation::parse_cycles("(1,4,2,5)(3,6)", 6).unwrap();
        let permuted = sigma.apply_to_word(&v).unwrap();
        let r = classify_one_dim(&field, &permuted).unwrap();
        assert_eq!((r.h, r.s), (base.h, base.s));
    }

    #[test]
    fn one_dim_cyclic_corollary() {
        let f5 = FiniteField::new(5, 1).unwrap();
        let ones: Vec<FieldElement> = vec![f5.one(); 6];
        assert!(one_dim_cyclic_corollary_check(&f5, &ones).unwrap());

        let v: Vec<FieldElement> = [1u32, 4, 1, 4].iter().map(|&x| f5.element(x).unwrap()).collect();
        assert!(one_dim_cyclic_corollary_check(&f5, &v).unwrap());

        let f7 = FiniteField::new(7, 1).unwrap();
        let xi = f7.element(2).unwrap(); // order 3
        let v: Vec<FieldElement> = vec![f7.one(), xi, f7.mul(xi, xi)];
        assert!(one_dim_cyclic_corollary_check(&f7, &v).unwrap());

        // precondition violated: (1,2,3) is not a left group code
        let bad: Vec<FieldElement> = [1u32, 2, 3].iter().map(|&x| f7.element(x).unwrap()).collect();
        assert!(matches!(
            one_dim_cyclic_corollary_check(&f7, &bad),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn one_dim_agrees_with_generic_machinery_exhaustive() {
        // oracle equivalence on a slice: every nonzero v over F_3, n <= 4
        let caps = caps();
        let f3 = FiniteField::new(3, 1).unwrap();
        for n in 1..=4usize {
            let total = 3u32.pow(n as u32);
            for code in 1..total {
                let mut v = Vec::with_capacity(n);
                let mut x = code;
                for _ in 0..n {
                    v.push(f3.element(x % 3).unwrap());
                    x /= 3;
                }
                let dim1 = classify_one_dim(&f3, &v).unwrap();
                let c = LinearCode::from_rows(&f3, &[v.clone()]).unwrap();
                let generic = classify(&c, &caps).unwrap();
                assert_eq!(dim1.is_left_group_code, generic.is_left_group_code, "v = {v:?}");
            }
        }
    }
}

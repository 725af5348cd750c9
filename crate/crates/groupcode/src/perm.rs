//! Permutations of {1,..,n} and small fully-enumerated permutation groups.
//!
//! Everything here is exhaustive by design: groups are stored as sorted
//! element lists, produced by breadth-first closure of a generating set.
//! The paper-facing pieces are the regularity test and the centralizer
//! anti-isomorphism h -> sigma_h of a regular subgroup.
//!
//! Internally permutations are 0-based; the text form (disjoint cycles,
//! identity printed as "()") is 1-based.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::caps::Caps;
use crate::error::{Error, Result};

/// A permutation of {0,..,n-1}; `images[i]` is the image of i.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Permutation> {
        let n = images.len();
        if n > 64 {
            return Err(Error::InvalidParameter("degree above 64 not supported".into()));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::NotABijection);
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based disjoint-cycle notation, e.g. "(1,2,3)(4,5,6)"; "()"
    /// is the identity. Entries not mentioned are fixed.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Permutation> {
        let bad = |msg: &str| Error::InvalidSpec(format!("bad cycle notation '{s}': {msg}"));
        let mut images: Vec<u8> = (0..n as u8).collect();
        let body = s.trim();
        if !body.starts_with('(') || !body.ends_with(')') {
            return Err(bad("expected parenthesized cycles"));
        }
        let mut touched = vec![false; n];
        for cyc in body[1..body.len() - 1].split(")(") {
            let cyc = cyc.trim();
            if cyc.is_empty() {
                continue;
            }
            let pts: Vec<usize> = cyc
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad("non-integer entry")))
                .collect::<Result<_>>()?;
            for &p in &pts {
                if p < 1 || p > n {
                    return Err(bad("entry out of range"));
                }
                if touched[p - 1] {
                    return Err(bad("repeated entry"));
                }
                touched[p - 1] = true;
            }
            for w in 0..pts.len() {
                let from = pts[w] - 1;
                let to = pts[(w + 1) % pts.len()] - 1;
                images[from] = to as u8;
            }
        }
        Permutation::from_images(images)
    }

    /// 1-based disjoint-cycle form; cycles sorted by smallest member.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut i = start;
            loop {
                seen[i] = true;
                out.push_str(&(i + 1).to_string());
                i = self.apply(i);
                if i == start {
                    break;
                }
                out.push(',');
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// self after other: (a.compose(b))(i) = a(b(i)).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                got: other.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u8;
        }
        Permutation { images }
    }

    pub fn order(&self) -> usize {
        let mut x = self.clone();
        let mut ord = 1;
        while !x.is_identity() {
            x = x.compose(self).unwrap();
            ord += 1;
        }
        ord
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &v)| *i == v as usize).count()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.fixed_point_count() == 0
    }

    /// The linear action e_i -> e_{sigma(i)}: result[sigma(i)] = x[i].
    pub fn apply_to_word<T: Copy>(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.degree() {
            return Err(Error::LengthMismatch {
                expected: self.degree(),
                got: x.len(),
            });
        }
        let mut out = x.to_vec();
        for (i, &v) in x.iter().enumerate() {
            out[self.apply(i)] = v;
        }
        Ok(out)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        debug_assert_eq!(self.degree(), other.degree());
        // compare a(b(i)) with b(a(i)) with early exit
        self.images
            .iter()
            .enumerate()
            .all(|(i, _)| self.images[other.images[i] as usize] == other.images[self.images[i] as usize])
    }
}

/// A fully enumerated permutation group: sorted element list plus the
/// generators it was built from.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, gens {})",
            self.degree,
            self.elements.len(),
            self.generator_string()
        )
    }
}

impl PermGroup {
    pub fn trivial(n: usize) -> PermGroup {
        PermGroup {
            degree: n,
            elements: vec![Permutation::identity(n)],
            generators: vec![],
        }
    }

    /// Breadth-first product saturation of the generators. Errors out when
    /// the group grows past `cap`.
    pub fn closure(generators: &[Permutation], cap: u64) -> Result<PermGroup> {
        let degree = match generators.first() {
            None => return Err(Error::InvalidParameter("closure needs at least one generator".into())),
            Some(g) => g.degree(),
        };
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x.compose(g).unwrap();
                if !seen.contains(&y) {
                    if seen.len() as u64 >= cap {
                        return Err(Error::CapExceeded {
                            what: "permutation group order",
                            limit: cap,
                            needed: cap + 1,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(PermGroup {
            degree,
            elements,
            generators: generators
                .iter()
                .filter(|g| !g.is_identity())
                .cloned()
                .collect(),
        })
    }

    /// From a known-closed element set (skips saturation, sorts, picks a
    /// small generating set).
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> PermGroup {
        elements.sort();
        elements.dedup();
        debug_assert!(elements.first().map(|e| e.is_identity()).unwrap_or(false));
        let mut g = PermGroup {
            degree,
            elements,
            generators: vec![],
        };
        g.generators = g.small_generating_set();
        g
    }

    pub fn symmetric(n: usize, caps: &Caps) -> Result<PermGroup> {
        let mut fact = 1u64;
        for i in 1..=n as u64 {
            fact = fact.saturating_mul(i);
        }
        if fact > caps.group_order {
            return Err(Error::CapExceeded {
                what: "permutation group order",
                limit: caps.group_order,
                needed: fact,
            });
        }
        if n <= 1 {
            return Ok(PermGroup::trivial(n.max(1)));
        }
        let mut swap: Vec<u8> = (0..n as u8).collect();
        swap.swap(0, 1);
        let mut cyc: Vec<u8> = (1..n as u8).collect();
        cyc.push(0);
        PermGroup::closure(
            &[Permutation::from_images(swap)?, Permutation::from_images(cyc)?],
            caps.group_order,
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_string(&self) -> String {
        if self.generators.is_empty() {
            "()".to_string()
        } else {
            self.generators
                .iter()
                .map(|g| g.cycle_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Greedy small generating set: repeatedly adjoin the first element
    /// outside the running closure.
    pub fn small_generating_set(&self) -> Vec<Permutation> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut closed: HashSet<Permutation> = HashSet::new();
        closed.insert(Permutation::identity(self.degree));
        for e in &self.elements {
            if closed.contains(e) {
                continue;
            }
            gens.push(e.clone());
            let sub = PermGroup::closure(&gens, self.elements.len() as u64 + 1)
                .expect("closure of a subset cannot exceed the group");
            closed = sub.elements.iter().cloned().collect();
            if closed.len() == self.elements.len() {
                break;
            }
        }
        gens
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut in_orbit = vec![false; self.degree];
        in_orbit[point] = true;
        let mut queue = vec![point];
        let gens: Vec<&Permutation> = if self.generators.is_empty() {
            self.elements.iter().collect()
        } else {
            self.generators.iter().collect()
        };
        while let Some(x) = queue.pop() {
            for g in &gens {
                let y = g.apply(x);
                if !in_orbit[y] {
                    in_orbit[y] = true;
                    queue.push(y);
                }
            }
        }
        (0..self.degree).filter(|&i| in_orbit[i]).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    pub fn is_abelian(&self) -> bool {
        let gens = if self.generators.is_empty() {
            self.elements.as_slice()
        } else {
            self.generators.as_slice()
        };
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Regular = transitive of order n. Both textbook characterizations are
    /// computed and must agree.
    pub fn is_regular(&self) -> bool {
        let by_transitivity = self.is_transitive() && self.order() == self.degree;
        let by_fixed_points = self.order() == self.degree
            && self
                .elements
                .iter()
                .all(|e| e.is_identity() || e.is_fixed_point_free());
        assert_eq!(
            by_transitivity, by_fixed_points,
            "the two regularity characterizations must agree"
        );
        by_transitivity
    }

    pub fn center(&self) -> Vec<Permutation> {
        let gens = if self.generators.is_empty() {
            self.elements.as_slice()
        } else {
            self.generators.as_slice()
        };
        self.elements
            .iter()
            .filter(|e| gens.iter().all(|g| e.commutes_with(g)))
            .cloned()
            .collect()
    }

    /// For regular H: the map psi(h) = h(i0) is a bijection H -> points;
    /// sigma_h(i) = psi^{-1}(i)(h(i0)) defines the anti-isomorphism of the
    /// regularity lemma.
    pub fn anti_iso_sigma(&self, i0: usize, h: &Permutation) -> Result<Permutation> {
        if !self.is_regular() {
            return Err(Error::NotRegular);
        }
        if i0 >= self.degree {
            return Err(Error::InvalidParameter(format!("base point {i0} out of range")));
        }
        if !self.contains(h) {
            return Err(Error::InvalidParameter("element not in the group".into()));
        }
        // psi_inv[i] = the unique element mapping i0 to i
        let mut psi_inv: Vec<Option<&Permutation>> = vec![None; self.degree];
        for e in &self.elements {
            psi_inv[e.apply(i0)] = Some(e);
        }
        let target = h.apply(i0);
        let images: Vec<u8> = (0..self.degree)
            .map(|i| psi_inv[i].expect("regular").apply(target) as u8)
            .collect();
        Permutation::from_images(images)
    }

    /// {sigma_h : h in H}; equals the full centralizer of H in S_n.
    pub fn centralizer_of_regular(&self, i0: usize) -> Result<PermGroup> {
        if !self.is_regular() {
            return Err(Error::NotRegular);
        }
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .map(|h| self.anti_iso_sigma(i0, h))
            .collect::<Result<_>>()?;
        Ok(PermGroup::from_elements(self.degree, elements))
    }

    /// Conjugate group tau G tau^{-1}.
    pub fn conjugate(&self, tau: &Permutation) -> Result<PermGroup> {
        let inv = tau.inverse();
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .map(|e| tau.compose(e)?.compose(&inv))
            .collect::<Result<_>>()?;
        Ok(PermGroup::from_elements(self.degree, elements))
    }
}

/// Brute-force centralizer oracle: all elements of `ambient` commuting with
/// every generator of `h`. Kept separate from the sigma construction so
/// tests can compare the two routes.
pub fn brute_force_centralizer(ambient: &PermGroup, h: &PermGroup) -> PermGroup {
    let gens = if h.generators().is_empty() {
        h.elements()
    } else {
        h.generators()
    };
    let elements: Vec<Permutation> = ambient
        .elements()
        .iter()
        .filter(|x| gens.iter().all(|g| x.commutes_with(g)))
        .cloned()
        .collect();
    PermGroup::from_elements(ambient.degree(), elements)
}

/// Sorted multiset of element orders, a cheap isomorphism invariant.
pub fn order_profile(g: &PermGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.elements().iter().map(|e| e.order()).collect();
    v.sort();
    v
}

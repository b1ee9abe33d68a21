//! Finite groups as explicit multiplication tables, with subgroup machinery.
//!
//! Elements are dense indices `0..n-1`; every operation downstream of this
//! module is a table lookup.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::Limits;

/// A permutation written as a map table: `p[i]` is the image of point `i`.
pub type Perm = Vec<usize>;

/// Orders up to this size get the full `O(n^3)` associativity check;
/// larger tables use Light's test on a generating set.
const FULL_ASSOC_BOUND: usize = 128;

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
    orders: Vec<usize>,
    label: Option<String>,
    perm_gens: Option<Vec<Perm>>,
    /// One permutation per element when built from permutation generators,
    /// in element-index order. Lets callers locate a specific permutation.
    elem_perms: Option<Vec<Perm>>,
}

impl FiniteGroup {
    /// Validates a raw multiplication table and builds the group.
    /// Identity and inverses are derived from the table, never trusted.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        label: Option<String>,
        limits: &Limits,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty multiplication table".into()));
        }
        if n > limits.max_order {
            return Err(Error::SizeExceeded {
                got: n,
                bound: limits.max_order,
            });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "row {i} has length {} in a table of size {n}",
                    row.len()
                )));
            }
        }
        // Latin square: every row and column is a permutation of 0..n-1.
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = table[i][j];
                let c = table[j][i];
                if r >= n || c >= n || row_seen[r] || col_seen[c] {
                    return Err(Error::NotLatinSquare(i));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(Error::NoIdentity)?;
        check_associativity(&table, identity)?;
        let mut inv = vec![0; n];
        for x in 0..n {
            let y = (0..n).find(|&y| table[x][y] == identity).unwrap();
            if table[y][x] != identity {
                return Err(Error::NoIdentity);
            }
            inv[x] = y;
        }
        let orders = element_orders(&table, identity);
        Ok(FiniteGroup {
            mul: table,
            identity,
            inv,
            orders,
            label,
            perm_gens: None,
            elem_perms: None,
        })
    }

    /// Closes a list of permutation generators under composition and
    /// materializes the multiplication table. Elements are indexed by the
    /// lexicographic order of their permutations, so the identity is index 0.
    pub fn from_permutations(
        gens: Vec<Perm>,
        label: Option<String>,
        limits: &Limits,
    ) -> Result<Self> {
        let degree = gens.first().map(|p| p.len()).unwrap_or(1);
        for p in &gens {
            if p.len() != degree || !is_bijection(p) {
                return Err(Error::NotBijective);
            }
        }
        let id: Perm = (0..degree).collect();
        let mut elems: BTreeSet<Perm> = BTreeSet::new();
        elems.insert(id);
        let mut frontier: Vec<Perm> = elems.iter().cloned().collect();
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q: Perm = (0..degree).map(|i| g[p[i]]).collect();
                if elems.insert(q.clone()) {
                    if elems.len() > limits.max_order {
                        return Err(Error::SizeExceeded {
                            got: elems.len(),
                            bound: limits.max_order,
                        });
                    }
                    frontier.push(q);
                }
            }
        }
        let elem_perms: Vec<Perm> = elems.into_iter().collect();
        let n = elem_perms.len();
        let index_of = |p: &Perm| elem_perms.binary_search(p).unwrap();
        let mut mul = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let composed: Perm = (0..degree).map(|x| elem_perms[i][elem_perms[j][x]]).collect();
                mul[i][j] = index_of(&composed);
            }
        }
        let identity = 0;
        let mut inv = vec![0; n];
        for (i, p) in elem_perms.iter().enumerate() {
            let mut q = vec![0; degree];
            for x in 0..degree {
                q[p[x]] = x;
            }
            inv[i] = index_of(&q);
        }
        let orders = element_orders(&mul, identity);
        Ok(FiniteGroup {
            mul,
            identity,
            inv,
            orders,
            label,
            perm_gens: Some(gens),
            elem_perms: Some(elem_perms),
        })
    }

    /// The opposite group on the same element set: `x *' y = y * x`.
    pub fn opposite(&self, label: Option<String>) -> Self {
        let n = self.order();
        let mut mul = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                mul[i][j] = self.mul[j][i];
            }
        }
        FiniteGroup {
            mul,
            identity: self.identity,
            inv: self.inv.clone(),
            orders: self.orders.clone(),
            label,
            perm_gens: None,
            elem_perms: None,
        }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g * x * g^-1`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elem_order(&self, x: usize) -> usize {
        self.orders[x]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = Some(label.into());
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn perm_gens(&self) -> Option<&[Perm]> {
        self.perm_gens.as_deref()
    }

    /// The element index of a permutation, for groups built from permutations.
    pub fn elem_index_of_perm(&self, p: &Perm) -> Option<usize> {
        self.elem_perms.as_ref()?.binary_search(p).ok()
    }

    /// Structural equality: same table and identity. Labels are ignored.
    pub fn same_structure(&self, other: &FiniteGroup) -> bool {
        self.mul == other.mul && self.identity == other.identity
    }

    /// Smallest subset containing `seed` and closed under multiplication,
    /// together with the identity. Sorted.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        let mut frontier: Vec<usize> = Vec::new();
        for &s in seed {
            if !inside[s] {
                inside[s] = true;
                members.push(s);
                frontier.push(s);
            }
        }
        while let Some(x) = frontier.pop() {
            let mut i = 0;
            while i < members.len() {
                let y = members[i];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                        frontier.push(p);
                    }
                }
                i += 1;
            }
        }
        members.sort_unstable();
        members
    }

    /// A small generating set chosen greedily, elements of maximal order first.
    pub fn greedy_generators(&self) -> Vec<usize> {
        self.greedy_generators_extending(&[])
    }

    /// Greedy generating set starting from a given partial closure.
    pub fn greedy_generators_extending(&self, start: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut by_order: Vec<usize> = (0..n).collect();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(self.orders[x]), x));
        let mut gens = Vec::new();
        let mut current = self.closure(start);
        for x in by_order {
            if current.len() == n {
                break;
            }
            if current.binary_search(&x).is_err() {
                gens.push(x);
                let mut seed = current.clone();
                seed.push(x);
                current = self.closure(&seed);
            }
        }
        gens
    }
}

fn is_bijection(p: &[usize]) -> bool {
    let n = p.len();
    let mut seen = vec![false; n];
    p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

fn element_orders(table: &[Vec<usize>], identity: usize) -> Vec<usize> {
    let n = table.len();
    (0..n)
        .map(|x| {
            let mut acc = x;
            let mut ord = 1;
            while acc != identity {
                acc = table[acc][x];
                ord += 1;
            }
            ord
        })
        .collect()
}

fn check_associativity(table: &[Vec<usize>], identity: usize) -> Result<()> {
    let n = table.len();
    if n <= FULL_ASSOC_BOUND {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NonAssociative(a, b, c));
                    }
                }
            }
        }
        return Ok(());
    }
    // Light's test: associativity follows from checking it with the middle
    // element ranging over a generating set of the magma.
    let mut inside = vec![false; n];
    inside[identity] = true;
    let mut members = vec![identity];
    let mut gens = Vec::new();
    for x in 0..n {
        if members.len() == n {
            break;
        }
        if inside[x] {
            continue;
        }
        gens.push(x);
        // magma closure of members + x
        let mut frontier = vec![x];
        inside[x] = true;
        members.push(x);
        while let Some(u) = frontier.pop() {
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                for p in [table[u][v], table[v][u]] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                        frontier.push(p);
                    }
                }
                i += 1;
            }
        }
    }
    for &g in &gens {
        for a in 0..n {
            for b in 0..n {
                if table[table[a][g]][b] != table[a][table[g][b]] {
                    return Err(Error::NonAssociative(a, g, b));
                }
            }
        }
    }
    Ok(())
}

/// Verifies raw table data and builds a group; never trusts the input.
pub fn validate_group(table: Vec<Vec<usize>>, limits: &Limits) -> Result<FiniteGroup> {
    FiniteGroup::from_table(table, None, limits)
}

/// Closes permutation generators into a group.
pub fn group_from_permutations(gens: Vec<Perm>, limits: &Limits) -> Result<FiniteGroup> {
    FiniteGroup::from_permutations(gens, None, limits)
}

/// A subgroup stored as a sorted set of parent element indices.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates that `elements` really is a subgroup of `parent`.
    pub fn new(parent: Arc<FiniteGroup>, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elems: Vec<usize> = elements.into_iter().collect();
        elems.sort_unstable();
        elems.dedup();
        let n = parent.order();
        if elems.iter().any(|&x| x >= n) {
            return Err(Error::InvalidInput("subgroup element index out of range".into()));
        }
        if elems.binary_search(&parent.identity()).is_err() {
            return Err(Error::NotASubgroup);
        }
        for &a in &elems {
            if elems.binary_search(&parent.inv(a)).is_err() {
                return Err(Error::NotASubgroup);
            }
            for &b in &elems {
                if elems.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Subgroup { parent, elements: elems })
    }

    /// The smallest subgroup containing `seed`.
    pub fn generated(parent: &Arc<FiniteGroup>, seed: &[usize]) -> Result<Self> {
        let n = parent.order();
        if seed.iter().any(|&x| x >= n) {
            return Err(Error::InvalidInput("seed element index out of range".into()));
        }
        Ok(Subgroup {
            parent: Arc::clone(parent),
            elements: parent.closure(seed),
        })
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            elements: vec![parent.identity()],
            parent: Arc::clone(parent),
        }
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            elements: (0..parent.order()).collect(),
            parent: Arc::clone(parent),
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a subgroup always contains the identity
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Position of a parent element within the sorted element list.
    pub fn pos(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_whole(&self) -> bool {
        self.len() == self.parent.order()
    }

    pub fn same_parent_as(&self, g: &FiniteGroup) -> bool {
        self.parent.same_structure(g)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn set_eq(&self, other: &Subgroup) -> bool {
        self.elements == other.elements
    }

    /// `(size, sorted element list)` — the canonical dedup/sort key.
    pub fn canonical_key(&self) -> (usize, Vec<usize>) {
        (self.len(), self.elements.clone())
    }

    /// The subgroup `g * self * g^-1`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let mut elems: Vec<usize> = self.elements.iter().map(|&x| self.parent.conj(g, x)).collect();
        elems.sort_unstable();
        Subgroup {
            parent: Arc::clone(&self.parent),
            elements: elems,
        }
    }

    /// Whether conjugation by `g` fixes this subgroup setwise.
    pub fn is_normalized_by(&self, g: usize) -> bool {
        self.elements
            .iter()
            .all(|&x| self.contains(self.parent.conj(g, x)))
    }

    pub fn is_normal_in(&self, ambient: &Subgroup) -> bool {
        ambient.elements.iter().all(|&g| self.is_normalized_by(g))
    }

    /// The subgroup as an abstract group on indices `0..len`, plus the
    /// embedding table sending abstract index `i` to the parent element.
    pub fn as_group(&self, label: Option<String>) -> (FiniteGroup, Vec<usize>) {
        let k = self.len();
        let mut mul = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                let p = self.parent.mul(self.elements[i], self.elements[j]);
                mul[i][j] = self.pos(p).expect("subgroup closed under multiplication");
            }
        }
        let identity = self.pos(self.parent.identity()).unwrap();
        let inv = (0..k)
            .map(|i| self.pos(self.parent.inv(self.elements[i])).unwrap())
            .collect();
        let orders = element_orders(&mul, identity);
        (
            FiniteGroup {
                mul,
                identity,
                inv,
                orders,
                label,
                perm_gens: None,
                elem_perms: None,
            },
            self.elements.clone(),
        )
    }
}

/// All subgroups of a parent group, deduplicated and canonically sorted.
#[derive(Debug, Clone)]
pub struct SubgroupList {
    parent: Arc<FiniteGroup>,
    items: Vec<Subgroup>,
}

impl SubgroupList {
    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn items(&self) -> &[Subgroup] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

fn expect_subgroup_of(g: &Arc<FiniteGroup>, h: &Subgroup) -> Result<()> {
    if h.same_parent_as(g) {
        Ok(())
    } else {
        Err(Error::SubgroupNotInParent)
    }
}

/// `{g in G : g H g^-1 = H}`.
pub fn normalizer(g: &Arc<FiniteGroup>, h: &Subgroup) -> Result<Subgroup> {
    expect_subgroup_of(g, h)?;
    let elems: Vec<usize> = (0..g.order()).filter(|&x| h.is_normalized_by(x)).collect();
    Ok(Subgroup {
        parent: Arc::clone(g),
        elements: elems,
    })
}

/// `{g in G : gh = hg for all h in H}`.
pub fn centralizer(g: &Arc<FiniteGroup>, h: &Subgroup) -> Result<Subgroup> {
    expect_subgroup_of(g, h)?;
    let elems: Vec<usize> = (0..g.order())
        .filter(|&x| h.elements().iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect();
    Ok(Subgroup {
        parent: Arc::clone(g),
        elements: elems,
    })
}

pub fn center(g: &Arc<FiniteGroup>) -> Subgroup {
    centralizer(g, &Subgroup::whole(g)).expect("whole group is a subgroup of itself")
}

/// Whether `h` is an (internal) direct factor of `k`: looks for a complement
/// `C <= k` with trivial intersection, elementwise commuting with `h`, and
/// `|C| * |h| = |k|`. Returns the witness complement when one exists.
pub fn is_direct_factor(k: &Subgroup, h: &Subgroup) -> Result<Option<Subgroup>> {
    if !h.parent().same_structure(k.parent()) || !h.is_subset_of(k) {
        return Err(Error::SubgroupNotInParent);
    }
    if !k.len().is_multiple_of(h.len()) {
        return Ok(None);
    }
    let want = k.len() / h.len();
    if want == 1 {
        return Ok(Some(Subgroup::trivial(k.parent())));
    }
    let parent = k.parent();
    let identity = parent.identity();
    let (k_abs, embed) = k.as_group(None);
    let k_abs = Arc::new(k_abs);
    let subs = enumerate_subgroups(&k_abs, &Limits::default())?;
    for c_abs in subs.items() {
        if c_abs.len() != want {
            continue;
        }
        let c_elems: Vec<usize> = c_abs.elements().iter().map(|&i| embed[i]).collect();
        let trivial_meet = c_elems.iter().all(|&x| x == identity || !h.contains(x));
        if !trivial_meet {
            continue;
        }
        let commutes = c_elems
            .iter()
            .all(|&c| h.elements().iter().all(|&y| parent.mul(c, y) == parent.mul(y, c)));
        if commutes {
            let witness = Subgroup {
                parent: Arc::clone(parent),
                elements: {
                    let mut e = c_elems;
                    e.sort_unstable();
                    e
                },
            };
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// Whether there is a homomorphism `G -> H` restricting to the identity on `H`.
pub fn is_retract(g: &Arc<FiniteGroup>, h: &Subgroup, limits: &Limits) -> Result<bool> {
    expect_subgroup_of(g, h)?;
    if h.is_whole() || h.len() == 1 {
        return Ok(true);
    }
    let (h_abs, embed) = h.as_group(None);
    // Seed: every element of H maps to itself.
    let seed: Vec<(usize, usize)> = embed.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let gens = g.greedy_generators_extending(h.elements());
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&gen| {
            let go = g.elem_order(gen);
            (0..h_abs.order()).filter(|&c| go.is_multiple_of(h_abs.elem_order(c))).collect()
        })
        .collect();
    let mut used = 0u64;
    let mut found = false;
    crate::search::search_homs(
        g,
        &h_abs,
        &gens,
        &candidates,
        &seed,
        false,
        None,
        limits.search_nodes,
        &mut used,
        &mut |_map| {
            found = true;
            true
        },
    )?;
    Ok(found)
}

/// All subgroups, found by cyclic seeding followed by join closure.
pub fn enumerate_subgroups(g: &Arc<FiniteGroup>, limits: &Limits) -> Result<SubgroupList> {
    let n = g.order();
    if n > limits.max_order {
        return Err(Error::SizeExceeded {
            got: n,
            bound: limits.max_order,
        });
    }
    let mut cyclics: BTreeSet<Vec<usize>> = BTreeSet::new();
    for x in 0..n {
        cyclics.insert(g.closure(&[x]));
    }
    let cyclics: Vec<Vec<usize>> = cyclics.into_iter().collect();
    let mut known: BTreeSet<Vec<usize>> = cyclics.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = cyclics.clone();
    while let Some(s) = frontier.pop() {
        for c in &cyclics {
            if c.iter().all(|x| s.binary_search(x).is_ok()) {
                continue;
            }
            let mut seed = s.clone();
            seed.extend_from_slice(c);
            let join = g.closure(&seed);
            if known.insert(join.clone()) {
                frontier.push(join);
            }
        }
    }
    let mut items: Vec<Subgroup> = known
        .into_iter()
        .map(|elements| Subgroup {
            parent: Arc::clone(g),
            elements,
        })
        .collect();
    items.sort_by_key(|a| a.canonical_key());
    items.dedup_by(|a, b| a.elements == b.elements);
    Ok(SubgroupList {
        parent: Arc::clone(g),
        items,
    })
}

//! Double-coset decompositions of subsets of a finite group, generic orbit
//! enumeration under families of permutations, and the twisted order-two
//! action on double cosets.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] == x {
            x
        } else {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
            root
        }
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            self.parent[ra] = rb;
            self.size[rb] += self.size[ra];
        } else {
            self.parent[rb] = ra;
            self.size[ra] += self.size[rb];
        }
    }
}

/// Orbit partition of `0..n` under the group generated by the given
/// permutations. Orbits are sorted internally and listed by minimal element.
pub fn generic_orbits(n: usize, actors: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    for a in actors {
        if a.len() != n {
            return Err(Error::NotBijective);
        }
        let mut seen = vec![false; n];
        for &y in a {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(Error::NotBijective);
            }
        }
    }
    let mut uf = UnionFind::new(n);
    for a in actors {
        for (x, &y) in a.iter().enumerate() {
            uf.union(x, y);
        }
    }
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = uf.find(x);
        buckets[r].push(x);
    }
    let mut orbits: Vec<Vec<usize>> = buckets.into_iter().filter(|b| !b.is_empty()).collect();
    orbits.sort_by_key(|o| o[0]);
    Ok(orbits)
}

/// One `(A, B)`-double coset: canonical representative (minimal element) and
/// the full sorted member set.
#[derive(Debug, Clone)]
pub struct DoubleCosetClass {
    pub rep: usize,
    pub members: Vec<usize>,
}

/// The partition of a carrier subset `S` into `A\S/B` double cosets.
#[derive(Debug, Clone)]
pub struct DoubleCosetDecomposition {
    ambient: Arc<FiniteGroup>,
    left: Subgroup,
    right: Subgroup,
    carrier: Vec<usize>,
    classes: Vec<DoubleCosetClass>,
}

impl DoubleCosetDecomposition {
    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn left(&self) -> &Subgroup {
        &self.left
    }

    pub fn right(&self) -> &Subgroup {
        &self.right
    }

    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn classes(&self) -> &[DoubleCosetClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Index of the class containing a carrier element.
    pub fn class_of(&self, x: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.members.binary_search(&x).is_ok())
    }
}

/// Decomposes `S` into `(A, B)`-double cosets `A s B`. The carrier must be
/// closed: `A * S * B = S`. Representatives are the minimal member of each
/// class, and classes are listed by representative.
pub fn double_cosets(
    ambient: &Arc<FiniteGroup>,
    left: &Subgroup,
    right: &Subgroup,
    carrier: &[usize],
) -> Result<DoubleCosetDecomposition> {
    if !left.same_parent_as(ambient) || !right.same_parent_as(ambient) {
        return Err(Error::SubgroupNotInParent);
    }
    let mut s: Vec<usize> = carrier.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.iter().any(|&x| x >= ambient.order()) {
        return Err(Error::InvalidInput("carrier element out of range".into()));
    }
    let mut assigned = vec![false; ambient.order()];
    let mut classes = Vec::new();
    for &x in &s {
        if assigned[x] {
            continue;
        }
        let mut members = Vec::new();
        for &a in left.elements() {
            let ax = ambient.mul(a, x);
            for &b in right.elements() {
                let axb = ambient.mul(ax, b);
                if s.binary_search(&axb).is_err() {
                    return Err(Error::CarrierNotClosed);
                }
                if !std::mem::replace(&mut assigned[axb], true) {
                    members.push(axb);
                }
            }
        }
        members.sort_unstable();
        classes.push(DoubleCosetClass { rep: x, members });
    }
    Ok(DoubleCosetDecomposition {
        ambient: Arc::clone(ambient),
        left: left.clone(),
        right: right.clone(),
        carrier: s,
        classes,
    })
}

/// Setwise product of subsets of one ambient group, sorted and deduplicated.
pub fn product_set(ambient: &FiniteGroup, factors: &[&[usize]]) -> Vec<usize> {
    let mut acc = vec![ambient.identity()];
    for xs in factors {
        let mut next = Vec::with_capacity(acc.len() * xs.len());
        for &a in &acc {
            for &x in xs.iter() {
                next.push(ambient.mul(a, x));
            }
        }
        next.sort_unstable();
        next.dedup();
        acc = next;
    }
    acc
}

/// `{x^-1 : x in xs}`, sorted.
pub fn inverse_set(ambient: &FiniteGroup, xs: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = xs.iter().map(|&x| ambient.inv(x)).collect();
    out.sort_unstable();
    out
}

/// `{xi * x^-1 * xi : x in xs}`, sorted.
pub fn twisted_inverse_set(ambient: &FiniteGroup, xi: usize, xs: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = xs
        .iter()
        .map(|&x| ambient.mul(ambient.mul(xi, ambient.inv(x)), xi))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The order-two rule on double cosets sending `A x B` to `A (xi x^-1 xi) B`.
#[derive(Debug, Clone)]
pub struct TwistedInvolution {
    ambient: Arc<FiniteGroup>,
    xi: usize,
}

impl TwistedInvolution {
    pub fn new(ambient: &Arc<FiniteGroup>, xi: usize) -> Result<Self> {
        if xi >= ambient.order() {
            return Err(Error::InvalidInput("twist element out of range".into()));
        }
        Ok(TwistedInvolution {
            ambient: Arc::clone(ambient),
            xi,
        })
    }

    pub fn xi(&self) -> usize {
        self.xi
    }

    pub fn apply_elem(&self, x: usize) -> usize {
        let g = &self.ambient;
        g.mul(g.mul(self.xi, g.inv(x)), self.xi)
    }
}

/// Orbit structure of the twisted rule on the classes of a decomposition:
/// which classes are fixed and which are swapped in pairs.
#[derive(Debug, Clone)]
pub struct C2Orbits {
    pub orbit_count: usize,
    pub fixed: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    /// Image class per class index.
    pub image: Vec<usize>,
}

/// Applies the twisted rule to every class of `decomp`, checking that the
/// rule stays inside the carrier, is independent of the chosen
/// representative, and squares to the identity on classes.
pub fn c2_orbits(decomp: &DoubleCosetDecomposition, tw: &TwistedInvolution) -> Result<C2Orbits> {
    if !tw.ambient.same_structure(decomp.ambient()) {
        return Err(Error::IncompatibleShapes);
    }
    let k = decomp.class_count();
    let mut image = vec![0usize; k];
    for (i, class) in decomp.classes().iter().enumerate() {
        let target = decomp
            .class_of(tw.apply_elem(class.rep))
            .ok_or(Error::ActionNotClosed)?;
        for &m in &class.members {
            match decomp.class_of(tw.apply_elem(m)) {
                Some(t) if t == target => {}
                Some(_) => return Err(Error::ActionNotWellDefined(i)),
                None => return Err(Error::ActionNotClosed),
            }
        }
        image[i] = target;
    }
    let mut fixed = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..k {
        if image[image[i]] != i {
            return Err(Error::NotInvolution(i));
        }
        if image[i] == i {
            fixed.push(i);
        } else if i < image[i] {
            pairs.push((i, image[i]));
        }
    }
    Ok(C2Orbits {
        orbit_count: fixed.len() + pairs.len(),
        fixed,
        pairs,
        image,
    })
}

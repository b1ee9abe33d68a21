//! Homomorphisms, automorphism groups, inner/outer quotients, and the
//! restriction images of subgroup-preserving automorphisms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::search;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    Hom,
    Injection,
    Automorphism,
}

/// A homomorphism recorded element by element.
#[derive(Debug, Clone)]
pub struct Morphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
    kind: MorphismKind,
}

impl Morphism {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<usize>,
        kind: MorphismKind,
    ) -> Result<Self> {
        let n = source.order();
        if map.len() != n || map.iter().any(|&y| y >= target.order()) {
            return Err(Error::InvalidInput("morphism table has wrong shape".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotHomomorphism(a, b));
                }
            }
        }
        match kind {
            MorphismKind::Hom => {}
            MorphismKind::Injection => {
                if !is_injective(&map, target.order()) {
                    return Err(Error::NotBijective);
                }
            }
            MorphismKind::Automorphism => {
                if !source.same_structure(&target) || !is_injective(&map, target.order()) {
                    return Err(Error::NotBijective);
                }
            }
        }
        Ok(Morphism {
            source,
            target,
            map,
            kind,
        })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        Morphism {
            source: Arc::clone(g),
            target: Arc::clone(g),
            map: (0..g.order()).collect(),
            kind: MorphismKind::Automorphism,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        is_injective(&self.map, self.target.order())
    }

    /// Sorted image set in the target.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn image_subgroup(&self) -> Subgroup {
        Subgroup::new(Arc::clone(&self.target), self.image()).expect("image of a homomorphism is a subgroup")
    }

    /// `self o other` (apply `other` first).
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if !other.target.same_structure(&self.source) {
            return Err(Error::IncompatibleShapes);
        }
        let map: Vec<usize> = other.map.iter().map(|&x| self.map[x]).collect();
        let kind = match (self.kind, other.kind) {
            (MorphismKind::Automorphism, MorphismKind::Automorphism)
                if self.source.same_structure(&other.source) =>
            {
                MorphismKind::Automorphism
            }
            (a, b) if a != MorphismKind::Hom && b != MorphismKind::Hom => MorphismKind::Injection,
            _ => MorphismKind::Hom,
        };
        Morphism::new(
            Arc::clone(&other.source),
            Arc::clone(&self.target),
            map,
            kind,
        )
    }
}

fn is_injective(map: &[usize], target_order: usize) -> bool {
    let mut seen = vec![false; target_order];
    map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

/// `f[g[i]]` on raw tables.
pub fn compose_tables(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// Inverse of a bijective table.
pub fn invert_table(t: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; t.len()];
    for (i, &x) in t.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// All injective homomorphisms `H -> G`, canonically ordered by map table.
pub fn enumerate_injections(
    h: &Arc<FiniteGroup>,
    g: &Arc<FiniteGroup>,
    limits: &Limits,
) -> Result<Vec<Morphism>> {
    if h.order() > g.order() || !g.order().is_multiple_of(h.order()) {
        return Ok(Vec::new());
    }
    let gens = h.greedy_generators();
    let candidates = search::order_matched_candidates(h, g, &gens);
    let mut tables: Vec<Vec<usize>> = Vec::new();
    let mut used = 0u64;
    search::search_homs(
        h,
        g,
        &gens,
        &candidates,
        &[],
        true,
        None,
        limits.search_nodes,
        &mut used,
        &mut |map| {
            tables.push(map.to_vec());
            false
        },
    )?;
    tables.sort_unstable();
    tables
        .into_iter()
        .map(|map| Morphism::new(Arc::clone(h), Arc::clone(g), map, MorphismKind::Injection))
        .collect()
}

/// The automorphism group of a finite group, materialized: all map tables in
/// lexicographic order, the induced composition-table group, and the inner
/// automorphisms as a subgroup of it.
#[derive(Debug, Clone)]
pub struct AutGroup {
    base: Arc<FiniteGroup>,
    maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    group: Arc<FiniteGroup>,
    inn: Subgroup,
}

impl AutGroup {
    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the identity automorphism is always present
    }

    pub fn map_table(&self, i: usize) -> &[usize] {
        &self.maps[i]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn index_of(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }

    /// Composition-table group on automorphism indices.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn inn(&self) -> &Subgroup {
        &self.inn
    }

    pub fn as_morphism(&self, i: usize) -> Morphism {
        Morphism {
            source: Arc::clone(&self.base),
            target: Arc::clone(&self.base),
            map: self.maps[i].clone(),
            kind: MorphismKind::Automorphism,
        }
    }
}

/// Computes `Aut(G)` by generator-image search with order matching.
pub fn compute_aut(g: &Arc<FiniteGroup>, limits: &Limits) -> Result<AutGroup> {
    if g.order() > limits.max_order {
        return Err(Error::SizeExceeded {
            got: g.order(),
            bound: limits.max_order,
        });
    }
    let gens = g.greedy_generators();
    let candidates = search::order_matched_candidates(g, g, &gens);
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut used = 0u64;
    search::search_homs(
        g,
        g,
        &gens,
        &candidates,
        &[],
        true,
        None,
        limits.search_nodes,
        &mut used,
        &mut |map| {
            maps.push(map.to_vec());
            false
        },
    )?;
    maps.sort_unstable();
    build_aut_group(g, maps)
}

fn build_aut_group(g: &Arc<FiniteGroup>, maps: Vec<Vec<usize>>) -> Result<AutGroup> {
    let k = maps.len();
    let index: HashMap<Vec<usize>, usize> =
        maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut table = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let composed = compose_tables(&maps[i], &maps[j]);
            table[i][j] = *index
                .get(&composed)
                .expect("automorphism list closed under composition");
        }
    }
    let limits = Limits {
        max_order: k.max(1),
        ..Limits::default()
    };
    let group = Arc::new(FiniteGroup::from_table(table, None, &limits)?);
    let mut inn_indices: Vec<usize> = (0..g.order())
        .map(|x| {
            let t: Vec<usize> = (0..g.order()).map(|y| g.conj(x, y)).collect();
            *index.get(&t).expect("inner automorphism is an automorphism")
        })
        .collect();
    inn_indices.sort_unstable();
    inn_indices.dedup();
    let inn = Subgroup::new(Arc::clone(&group), inn_indices)?;
    Ok(AutGroup {
        base: Arc::clone(g),
        maps,
        index,
        group,
        inn,
    })
}

/// `Out(H) = Aut(H)/Inn(H)` with canonical coset representatives (the
/// lexicographically minimal map table in each coset).
#[derive(Debug, Clone)]
pub struct OutQuotient {
    aut: Arc<AutGroup>,
    reps: Vec<usize>,
    projection: Vec<usize>,
    group: Arc<FiniteGroup>,
}

impl OutQuotient {
    pub fn aut(&self) -> &Arc<AutGroup> {
        &self.aut
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Aut index of the canonical representative of coset `i`.
    pub fn rep(&self, i: usize) -> usize {
        self.reps[i]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Coset index of an automorphism.
    pub fn project(&self, aut_index: usize) -> usize {
        self.projection[aut_index]
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// Quotient group on coset indices.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
}

pub fn out_quotient(aut: &Arc<AutGroup>) -> Result<OutQuotient> {
    let k = aut.len();
    let inn = aut.inn();
    let mut projection = vec![usize::MAX; k];
    let mut reps = Vec::new();
    for a in 0..k {
        if projection[a] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(a);
        for &i in inn.elements() {
            projection[aut.group().mul(a, i)] = id;
        }
    }
    let q = reps.len();
    let mut table = vec![vec![0; q]; q];
    for x in 0..q {
        for y in 0..q {
            table[x][y] = projection[aut.group().mul(reps[x], reps[y])];
        }
    }
    let limits = Limits {
        max_order: q.max(1),
        ..Limits::default()
    };
    let group = Arc::new(FiniteGroup::from_table(table, None, &limits)?);
    Ok(OutQuotient {
        aut: Arc::clone(aut),
        reps,
        projection,
        group,
    })
}

/// Restriction data of a subgroup `H <= G` inside `Aut(H)` and `Out(H)`:
/// the `H`-preserving automorphisms of `G`, their restrictions, and the
/// conjugation images of the normalizer.
#[derive(Debug, Clone)]
pub struct RestrictionImage {
    /// `H`-preserving automorphisms, as a subgroup of the Aut(G) composition group.
    pub aut_stab: Subgroup,
    /// Restrictions to `H`, as a subgroup of the Aut(H) composition group.
    pub bar_image: Subgroup,
    /// Image of `bar_image` in `Out(H)`.
    pub tilde_image: Subgroup,
    /// Conjugations by normalizer elements, restricted to `H`.
    pub bar_normalizer: Subgroup,
    /// Image of `bar_normalizer` in `Out(H)`.
    pub tilde_normalizer: Subgroup,
}

/// Restriction image of `H <= G`, computed against the caller's `Out(H)`
/// context. The subgroup's abstract group must match the context's base.
pub fn restriction_image(
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    aut_g: &AutGroup,
    out_h: &OutQuotient,
) -> Result<RestrictionImage> {
    restriction_image_transported(g, h, aut_g, out_h, None)
}

/// Same, but with the restrictions transported through an isomorphism
/// `transport: reference H -> abstract(h)` (a table on abstract indices).
/// Used for the second factor, whose subgroup is identified with the
/// reference copy of `H` through a chosen isomorphism.
pub fn restriction_image_transported(
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    aut_g: &AutGroup,
    out_h: &OutQuotient,
    transport: Option<&[usize]>,
) -> Result<RestrictionImage> {
    if !h.same_parent_as(g) || !aut_g.base().same_structure(g) {
        return Err(Error::SubgroupNotInParent);
    }
    let (h_abs, embed) = h.as_group(None);
    if !out_h.aut().base().same_structure(&h_abs) && transport.is_none() {
        return Err(Error::IncompatibleShapes);
    }
    let transport_inv = transport.map(invert_table);
    let to_reference = |restriction: Vec<usize>| -> Vec<usize> {
        match (&transport, &transport_inv) {
            (Some(t), Some(ti)) => {
                // reference index i -> transport -> restrict -> back
                (0..t.len()).map(|i| ti[restriction[t[i]]]).collect()
            }
            _ => restriction,
        }
    };
    let locate = |table: Vec<usize>| -> usize {
        out_h
            .aut()
            .index_of(&table)
            .expect("restriction of a subgroup-preserving automorphism lies in Aut(H)")
    };

    let mut stab = Vec::new();
    let mut bar = Vec::new();
    for i in 0..aut_g.len() {
        let phi = aut_g.map_table(i);
        if h.elements().iter().all(|&x| h.contains(phi[x])) {
            stab.push(i);
            let restriction: Vec<usize> =
                (0..h.len()).map(|j| h.pos(phi[embed[j]]).unwrap()).collect();
            bar.push(locate(to_reference(restriction)));
        }
    }
    let aut_stab = Subgroup::new(Arc::clone(aut_g.group()), stab)?;
    bar.sort_unstable();
    bar.dedup();
    let bar_image = Subgroup::new(Arc::clone(out_h.aut().group()), bar.iter().copied())?;
    let tilde_image = project_subgroup(out_h, bar_image.elements())?;

    let n = crate::group::normalizer(g, h)?;
    let mut barn: Vec<usize> = n
        .elements()
        .iter()
        .map(|&x| {
            let restriction: Vec<usize> =
                (0..h.len()).map(|j| h.pos(g.conj(x, embed[j])).unwrap()).collect();
            locate(to_reference(restriction))
        })
        .collect();
    barn.sort_unstable();
    barn.dedup();
    let bar_normalizer = Subgroup::new(Arc::clone(out_h.aut().group()), barn.iter().copied())?;
    let tilde_normalizer = project_subgroup(out_h, bar_normalizer.elements())?;

    Ok(RestrictionImage {
        aut_stab,
        bar_image,
        tilde_image,
        bar_normalizer,
        tilde_normalizer,
    })
}

fn project_subgroup(out_h: &OutQuotient, aut_indices: &[usize]) -> Result<Subgroup> {
    let mut proj: Vec<usize> = aut_indices.iter().map(|&a| out_h.project(a)).collect();
    proj.sort_unstable();
    proj.dedup();
    Subgroup::new(Arc::clone(out_h.group()), proj)
}

/// Any isomorphism `G1 -> G2`, or `None`.
pub fn find_isomorphism(
    g1: &Arc<FiniteGroup>,
    g2: &Arc<FiniteGroup>,
    limits: &Limits,
) -> Result<Option<Morphism>> {
    if g1.order() != g2.order() || !same_order_profile(g1, g2) {
        return Ok(None);
    }
    let gens = g1.greedy_generators();
    let candidates = search::order_matched_candidates(g1, g2, &gens);
    let mut found: Option<Vec<usize>> = None;
    let mut used = 0u64;
    search::search_homs(
        g1,
        g2,
        &gens,
        &candidates,
        &[],
        true,
        None,
        limits.search_nodes,
        &mut used,
        &mut |map| {
            found = Some(map.to_vec());
            true
        },
    )?;
    found
        .map(|map| Morphism::new(Arc::clone(g1), Arc::clone(g2), map, MorphismKind::Injection))
        .transpose()
}

/// An isomorphism `G1 -> G2` carrying `H1` onto `H2` setwise, or `None`.
pub fn find_subgroup_preserving_iso(
    g1: &Arc<FiniteGroup>,
    h1: &Subgroup,
    g2: &Arc<FiniteGroup>,
    h2: &Subgroup,
    limits: &Limits,
) -> Result<Option<Morphism>> {
    if !h1.same_parent_as(g1) || !h2.same_parent_as(g2) {
        return Err(Error::SubgroupNotInParent);
    }
    if g1.order() != g2.order() || h1.len() != h2.len() || !same_order_profile(g1, g2) {
        return Ok(None);
    }
    let gens = g1.greedy_generators();
    let candidates = search::order_matched_candidates(g1, g2, &gens);
    // An isomorphism with gamma(H1) = H2 maps H1 into H2 and the complement
    // into the complement.
    let constraint = |x: usize, y: usize| h1.contains(x) == h2.contains(y);
    let mut found: Option<Vec<usize>> = None;
    let mut used = 0u64;
    search::search_homs(
        g1,
        g2,
        &gens,
        &candidates,
        &[],
        true,
        Some(&constraint),
        limits.search_nodes,
        &mut used,
        &mut |map| {
            found = Some(map.to_vec());
            true
        },
    )?;
    found
        .map(|map| Morphism::new(Arc::clone(g1), Arc::clone(g2), map, MorphismKind::Injection))
        .transpose()
}

fn same_order_profile(g1: &FiniteGroup, g2: &FiniteGroup) -> bool {
    let mut p1: Vec<usize> = (0..g1.order()).map(|x| g1.elem_order(x)).collect();
    let mut p2: Vec<usize> = (0..g2.order()).map(|x| g2.elem_order(x)).collect();
    p1.sort_unstable();
    p2.sort_unstable();
    p1 == p2
}

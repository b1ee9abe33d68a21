//! Generator-image backtracking over partial homomorphisms.
//!
//! A partial map is kept closed: its domain is always the subgroup generated
//! by the assigned elements, so multiplicativity is checked exhaustively on
//! the way and never needs a final pass.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Clone)]
struct PartialMap {
    map: Vec<Option<usize>>,
    dom: Vec<usize>,
    hit: Vec<bool>,
}

impl PartialMap {
    fn new(source_order: usize, target_order: usize) -> Self {
        PartialMap {
            map: vec![None; source_order],
            dom: Vec::new(),
            hit: vec![false; target_order],
        }
    }
}

/// Constraint on individual assignments `(source element, proposed image)`.
pub type PairConstraint<'a> = &'a dyn Fn(usize, usize) -> bool;

struct Ctx<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    injective: bool,
    constraint: Option<PairConstraint<'a>>,
    max_nodes: u64,
    used: &'a mut u64,
}

impl<'a> Ctx<'a> {
    fn assign(&self, pm: &mut PartialMap, x: usize, y: usize) -> bool {
        if let Some(c) = self.constraint {
            if !c(x, y) {
                return false;
            }
        }
        if self.injective {
            if pm.hit[y] {
                return false;
            }
            pm.hit[y] = true;
        }
        pm.map[x] = Some(y);
        pm.dom.push(x);
        true
    }

    /// Extends `pm` with `gen -> img` and closes the domain under products.
    /// On failure the caller discards `pm` (it is cloned at each branch).
    fn extend(&mut self, pm: &mut PartialMap, gen: usize, img: usize) -> Result<bool> {
        *self.used += 1;
        if *self.used > self.max_nodes {
            return Err(Error::BudgetExceeded(self.max_nodes));
        }
        match pm.map[gen] {
            Some(v) => return Ok(v == img),
            None => {
                if !self.assign(pm, gen, img) {
                    return Ok(false);
                }
            }
        }
        let mut queue = vec![gen];
        while let Some(x) = queue.pop() {
            let fx = pm.map[x].unwrap();
            let mut i = 0;
            while i < pm.dom.len() {
                let y = pm.dom[i];
                let fy = pm.map[y].unwrap();
                for (p, fp) in [
                    (self.source.mul(x, y), self.target.mul(fx, fy)),
                    (self.source.mul(y, x), self.target.mul(fy, fx)),
                ] {
                    match pm.map[p] {
                        Some(v) => {
                            if v != fp {
                                return Ok(false);
                            }
                        }
                        None => {
                            if !self.assign(pm, p, fp) {
                                return Ok(false);
                            }
                            queue.push(p);
                        }
                    }
                }
                i += 1;
            }
        }
        Ok(true)
    }
}

/// Backtracking search over homomorphisms `source -> target` determined by
/// images of `gens`. `seed` pins images in advance (it must itself be
/// consistent). The callback receives each completed map table; returning
/// `true` stops the search.
#[allow(clippy::too_many_arguments)]
pub fn search_homs(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    seed: &[(usize, usize)],
    injective: bool,
    constraint: Option<PairConstraint<'_>>,
    max_nodes: u64,
    used: &mut u64,
    on_found: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    assert_eq!(gens.len(), candidates.len());
    let mut ctx = Ctx {
        source,
        target,
        injective,
        constraint,
        max_nodes,
        used,
    };
    let mut pm = PartialMap::new(source.order(), target.order());
    if !ctx.extend(&mut pm, source.identity(), target.identity())? {
        return Ok(());
    }
    for &(x, y) in seed {
        if !ctx.extend(&mut pm, x, y)? {
            return Ok(());
        }
    }
    recurse(&mut ctx, &pm, gens, candidates, 0, on_found)?;
    Ok(())
}

fn recurse(
    ctx: &mut Ctx<'_>,
    pm: &PartialMap,
    gens: &[usize],
    candidates: &[Vec<usize>],
    level: usize,
    on_found: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<bool> {
    if level == gens.len() {
        let table: Vec<usize> = pm
            .map
            .iter()
            .map(|v| v.expect("generators generate the source, so the map is total"))
            .collect();
        return Ok(on_found(&table));
    }
    let gen = gens[level];
    if pm.map[gen].is_some() {
        // Already forced by earlier assignments.
        return recurse(ctx, pm, gens, candidates, level + 1, on_found);
    }
    for &img in &candidates[level] {
        let mut next = pm.clone();
        if ctx.extend(&mut next, gen, img)? && recurse(ctx, &next, gens, candidates, level + 1, on_found)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Images whose order equals the generator's order (for injective searches).
pub fn order_matched_candidates(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
) -> Vec<Vec<usize>> {
    gens.iter()
        .map(|&g| {
            let want = source.elem_order(g);
            (0..target.order()).filter(|&c| target.elem_order(c) == want).collect()
        })
        .collect()
}

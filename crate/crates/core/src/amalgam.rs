//! Push-outs (pairs of embeddings of a common finite subgroup), the
//! push-out isomorphism test, isomorphism-class counting for amalgamated
//! free products, and the brute-force orbit oracle that recounts every
//! formula-based number independently.

use std::collections::HashMap;
use std::sync::Arc;

use crate::coset::{c2_orbits, double_cosets, generic_orbits, TwistedInvolution, UnionFind};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::morphism::{
    compose_tables, compute_aut, enumerate_injections, find_isomorphism,
    find_subgroup_preserving_iso, invert_table, out_quotient, restriction_image,
    restriction_image_transported, AutGroup, Morphism, MorphismKind, OutQuotient,
    RestrictionImage,
};
use crate::search;
use crate::Limits;

/// A pair of embeddings `lambda: H -> G1`, `mu: H -> G2` presenting one
/// amalgamated free product `G1 *_H G2`.
#[derive(Debug, Clone)]
pub struct PushOut {
    lambda: Morphism,
    mu: Morphism,
}

impl PushOut {
    pub fn new(lambda: Morphism, mu: Morphism) -> Result<Self> {
        if !lambda.source().same_structure(mu.source()) {
            return Err(Error::IncompatibleShapes);
        }
        if !lambda.is_injective() || !mu.is_injective() {
            return Err(Error::NotBijective);
        }
        // Non-fictitious: the subgroup must be proper in both factors.
        if lambda.source().order() == lambda.target().order()
            || mu.source().order() == mu.target().order()
        {
            return Err(Error::FictitiousAmalgam);
        }
        Ok(PushOut { lambda, mu })
    }

    pub fn h(&self) -> &Arc<FiniteGroup> {
        self.lambda.source()
    }

    pub fn g1(&self) -> &Arc<FiniteGroup> {
        self.lambda.target()
    }

    pub fn g2(&self) -> &Arc<FiniteGroup> {
        self.mu.target()
    }

    pub fn lambda(&self) -> &Morphism {
        &self.lambda
    }

    pub fn mu(&self) -> &Morphism {
        &self.mu
    }
}

/// Witness for an isomorphism of push-outs: automorphisms of the factors and
/// of the subgroup satisfying the commuting condition, possibly after the
/// factor swap transported through a fixed isomorphism `G1 -> G2`.
#[derive(Debug, Clone)]
pub struct PushoutWitness {
    pub beta1: Vec<usize>,
    pub beta2: Vec<usize>,
    pub alpha: Vec<usize>,
    pub swapped: bool,
}

/// Precomputed automorphism data for classifying push-outs over one factor
/// pair `(G1, G2)`.
pub struct PushoutClassifier {
    g1: Arc<FiniteGroup>,
    g2: Arc<FiniteGroup>,
    aut1: AutGroup,
    aut2: AutGroup,
    gamma: Option<Morphism>,
}

impl PushoutClassifier {
    pub fn new(g1: &Arc<FiniteGroup>, g2: &Arc<FiniteGroup>, limits: &Limits) -> Result<Self> {
        Ok(PushoutClassifier {
            g1: Arc::clone(g1),
            g2: Arc::clone(g2),
            aut1: compute_aut(g1, limits)?,
            aut2: compute_aut(g2, limits)?,
            gamma: find_isomorphism(g1, g2, limits)?,
        })
    }

    /// Whether the amalgams presented by `p` and `q` are isomorphic: searches
    /// for `(beta1, beta2, alpha)` with `lambda alpha = beta1 eta` and
    /// `mu alpha = beta2 nu`, trying the transported factor swap as well when
    /// `allow_swap` is set and the factors are isomorphic.
    pub fn isomorphic(&self, p: &PushOut, q: &PushOut, allow_swap: bool) -> Result<Option<PushoutWitness>> {
        for (pu, shape) in [(p, "p"), (q, "q")] {
            let _ = shape;
            if !pu.g1().same_structure(&self.g1)
                || !pu.g2().same_structure(&self.g2)
                || !pu.h().same_structure(p.h())
            {
                return Err(Error::IncompatibleShapes);
            }
        }
        if let Some(w) = self.direct_iso(p, q.lambda(), q.mu()) {
            return Ok(Some(w));
        }
        if allow_swap {
            if let Some(gamma) = &self.gamma {
                let gamma_inv = invert_table(gamma.map());
                // q' = (gamma^-1 nu, gamma eta) presents the same amalgam with
                // the factors exchanged.
                let eta_p = Morphism::new(
                    Arc::clone(q.h()),
                    Arc::clone(&self.g1),
                    compose_tables(&gamma_inv, q.mu().map()),
                    MorphismKind::Injection,
                )?;
                let nu_p = Morphism::new(
                    Arc::clone(q.h()),
                    Arc::clone(&self.g2),
                    compose_tables(gamma.map(), q.lambda().map()),
                    MorphismKind::Injection,
                )?;
                if let Some(mut w) = self.direct_iso(p, &eta_p, &nu_p) {
                    w.swapped = true;
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }

    /// Factor-preserving branch: `alpha` is forced by each `H`-image
    /// preserving `beta1`, and `beta2` is then found by scanning `Aut(G2)`.
    fn direct_iso(&self, p: &PushOut, eta: &Morphism, nu: &Morphism) -> Option<PushoutWitness> {
        let h_order = p.h().order();
        let lambda = p.lambda().map();
        let mu = p.mu().map();
        let lambda_image: Vec<usize> = {
            let mut v = lambda.to_vec();
            v.sort_unstable();
            v
        };
        let lambda_pos: HashMap<usize, usize> =
            lambda.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        for b1 in self.aut1.maps() {
            let b1_eta = compose_tables(b1, eta.map());
            if !b1_eta.iter().all(|x| lambda_image.binary_search(x).is_ok()) {
                continue;
            }
            // alpha = lambda^-1 beta1 eta
            let alpha: Vec<usize> = b1_eta.iter().map(|x| lambda_pos[x]).collect();
            let want: Vec<usize> = (0..h_order).map(|i| mu[alpha[i]]).collect();
            for b2 in self.aut2.maps() {
                if (0..h_order).all(|i| b2[nu.map()[i]] == want[i]) {
                    return Some(PushoutWitness {
                        beta1: b1.clone(),
                        beta2: b2.clone(),
                        alpha,
                        swapped: false,
                    });
                }
            }
        }
        None
    }
}

/// One-shot form of [`PushoutClassifier::isomorphic`].
pub fn pushout_isomorphic(
    p: &PushOut,
    q: &PushOut,
    allow_swap: bool,
    limits: &Limits,
) -> Result<Option<PushoutWitness>> {
    PushoutClassifier::new(p.g1(), p.g2(), limits)?.isomorphic(p, q, allow_swap)
}

/// Searches for an isomorphism `gamma: G1 -> G2` with `gamma(lambda(h)) =
/// mu(h)` pointwise; when one exists the amalgam is isomorphic to the double
/// `G1 *_{lambda(H)} G1`.
pub fn is_double(p: &PushOut, limits: &Limits) -> Result<Option<Morphism>> {
    let (g1, g2) = (p.g1(), p.g2());
    if g1.order() != g2.order() {
        return Ok(None);
    }
    let seed: Vec<(usize, usize)> = p
        .lambda()
        .map()
        .iter()
        .zip(p.mu().map())
        .map(|(&x, &y)| (x, y))
        .collect();
    let image: Vec<usize> = p.lambda().image();
    let gens = g1.greedy_generators_extending(&image);
    let candidates = search::order_matched_candidates(g1, g2, &gens);
    let mut found: Option<Vec<usize>> = None;
    let mut used = 0u64;
    search::search_homs(
        g1,
        g2,
        &gens,
        &candidates,
        &seed,
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

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassFamily {
    /// All pairs of injections of `H` into the factors.
    PushoutFamily,
    /// Two fixed amalgamated copies of `H`.
    FixedSubgroups,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Formula,
    Oracle,
}

#[derive(Debug, Clone)]
pub struct IsoClassReport {
    pub count: usize,
    pub representatives: Vec<PushOut>,
    pub family: ClassFamily,
    pub symmetric: bool,
    pub method: CountMethod,
}

/// Shared data for one fixed pair of amalgamated subgroups: the abstract
/// copy of `H`, the chosen identification of the two images, automorphism
/// and restriction data on both sides, and the subgroup-preserving symmetry
/// when one exists.
#[derive(Debug)]
pub struct FixedPairContext {
    pub g1: Arc<FiniteGroup>,
    pub g2: Arc<FiniteGroup>,
    pub h1: Subgroup,
    pub h2: Subgroup,
    pub h_abs: Arc<FiniteGroup>,
    /// Embedding of the abstract `H` onto `h1`.
    pub embed1: Morphism,
    /// Chosen isomorphism from abstract `H` to abstract `h2` (minimal table).
    pub mu: Vec<usize>,
    /// Embedding of the abstract `H` onto `h2` through `mu`.
    pub embed2_mu: Morphism,
    pub aut_g1: AutGroup,
    pub aut_g2: AutGroup,
    pub aut_h: Arc<AutGroup>,
    pub out_h: Arc<OutQuotient>,
    pub ri1: RestrictionImage,
    pub ri2: RestrictionImage,
    /// Subgroup-preserving isomorphism `g1 -> g2` with `gamma(h1) = h2`.
    pub gamma: Option<Morphism>,
    /// `mu^-1 (gamma restricted to h1)` as an element of `Aut(H)` / `Out(H)`.
    pub xi_aut: Option<usize>,
    pub xi_out: Option<usize>,
}

impl FixedPairContext {
    pub fn new(
        g1: &Arc<FiniteGroup>,
        h1: &Subgroup,
        g2: &Arc<FiniteGroup>,
        h2: &Subgroup,
        limits: &Limits,
    ) -> Result<Self> {
        if !h1.same_parent_as(g1) || !h2.same_parent_as(g2) {
            return Err(Error::SubgroupNotInParent);
        }
        if h1.len() == g1.order() || h2.len() == g2.order() {
            return Err(Error::FictitiousAmalgam);
        }
        let (h_abs_raw, embed1_table) = h1.as_group(None);
        let h_abs = Arc::new(h_abs_raw);
        let (h2_abs_raw, _) = h2.as_group(None);
        let h2_abs = Arc::new(h2_abs_raw);
        let isos = enumerate_injections(&h_abs, &h2_abs, limits)?;
        let mu = isos
            .first()
            .filter(|m| m.is_injective() && h_abs.order() == h2_abs.order())
            .ok_or(Error::NotIsomorphicSubgroups)?
            .map()
            .to_vec();
        let embed1 = Morphism::new(
            Arc::clone(&h_abs),
            Arc::clone(g1),
            embed1_table.clone(),
            MorphismKind::Injection,
        )?;
        let embed2_mu = Morphism::new(
            Arc::clone(&h_abs),
            Arc::clone(g2),
            mu.iter().map(|&j| h2.elements()[j]).collect(),
            MorphismKind::Injection,
        )?;
        let aut_g1 = compute_aut(g1, limits)?;
        let aut_g2 = compute_aut(g2, limits)?;
        let aut_h = Arc::new(compute_aut(&h_abs, limits)?);
        let out_h = Arc::new(out_quotient(&aut_h)?);
        let ri1 = restriction_image(g1, h1, &aut_g1, &out_h)?;
        let ri2 = restriction_image_transported(g2, h2, &aut_g2, &out_h, Some(&mu))?;
        let gamma = find_subgroup_preserving_iso(g1, h1, g2, h2, limits)?;
        let (xi_aut, xi_out) = match &gamma {
            Some(gm) => {
                let mu_inv = invert_table(&mu);
                let xi_table: Vec<usize> = (0..h_abs.order())
                    .map(|i| mu_inv[h2.pos(gm.apply(embed1.apply(i))).unwrap()])
                    .collect();
                let idx = aut_h
                    .index_of(&xi_table)
                    .expect("twist of a subgroup-preserving isomorphism is an automorphism of H");
                (Some(idx), Some(out_h.project(idx)))
            }
            None => (None, None),
        };
        Ok(FixedPairContext {
            g1: Arc::clone(g1),
            g2: Arc::clone(g2),
            h1: h1.clone(),
            h2: h2.clone(),
            h_abs,
            embed1,
            mu,
            embed2_mu,
            aut_g1,
            aut_g2,
            aut_h,
            out_h,
            ri1,
            ri2,
            gamma,
            xi_aut,
            xi_out,
        })
    }

    /// Push-out `(embed1, embed2_mu alpha)` for an automorphism index of `H`.
    pub fn pushout_for_alpha(&self, alpha_index: usize) -> Result<PushOut> {
        let alpha = self.aut_h.as_morphism(alpha_index);
        let mu_alpha = self.embed2_mu.compose(&alpha)?;
        PushOut::new(self.embed1.clone(), mu_alpha)
    }
}

/// Number of isomorphism classes of amalgams with both subgroup images
/// fixed, by the double-coset count in `Out(H)` (with the order-two quotient
/// when a subgroup-preserving isomorphism exists between the factors).
pub fn count_classes_fixed_subgroups(
    g1: &Arc<FiniteGroup>,
    h1: &Subgroup,
    g2: &Arc<FiniteGroup>,
    h2: &Subgroup,
    limits: &Limits,
) -> Result<IsoClassReport> {
    let ctx = FixedPairContext::new(g1, h1, g2, h2, limits)?;
    count_classes_fixed_subgroups_ctx(&ctx)
}

pub fn count_classes_fixed_subgroups_ctx(ctx: &FixedPairContext) -> Result<IsoClassReport> {
    let out_g = ctx.out_h.group();
    let carrier: Vec<usize> = (0..out_g.order()).collect();
    let decomp = double_cosets(out_g, &ctx.ri2.tilde_image, &ctx.ri1.tilde_image, &carrier)?;
    let rep_classes: Vec<usize> = match ctx.xi_out {
        Some(xi) => {
            let tw = TwistedInvolution::new(out_g, xi)?;
            let orbits = c2_orbits(&decomp, &tw)?;
            let mut reps: Vec<usize> = orbits.fixed.clone();
            reps.extend(orbits.pairs.iter().map(|&(i, _)| i));
            reps.sort_unstable();
            reps
        }
        None => (0..decomp.class_count()).collect(),
    };
    let mut representatives = Vec::new();
    for &ci in &rep_classes {
        let out_rep = decomp.classes()[ci].rep;
        representatives.push(ctx.pushout_for_alpha(ctx.out_h.rep(out_rep))?);
    }
    Ok(IsoClassReport {
        count: rep_classes.len(),
        representatives,
        family: ClassFamily::FixedSubgroups,
        symmetric: ctx.gamma.is_some(),
        method: CountMethod::Formula,
    })
}

/// Number of isomorphism classes of amalgams `G1 *_H G2` over all pairs of
/// injections, by explicit orbit enumeration: post-composition by the factor
/// automorphisms, diagonal pre-composition by `Aut(H)`, and the transported
/// coordinate swap when the factors are isomorphic.
pub fn count_classes_pushout_family(
    h: &Arc<FiniteGroup>,
    g1: &Arc<FiniteGroup>,
    g2: &Arc<FiniteGroup>,
    limits: &Limits,
) -> Result<IsoClassReport> {
    if h.order() == g1.order() || h.order() == g2.order() {
        return Err(Error::FictitiousAmalgam);
    }
    let inj1 = enumerate_injections(h, g1, limits)?;
    let inj2 = enumerate_injections(h, g2, limits)?;
    if inj1.is_empty() || inj2.is_empty() {
        return Err(Error::InvalidInput(
            "H does not embed into both factors".into(),
        ));
    }
    let n1 = inj1.len();
    let n2 = inj2.len();
    let n = n1
        .checked_mul(n2)
        .filter(|&n| n <= limits.oracle_carrier)
        .ok_or(Error::SizeExceeded {
            got: usize::MAX,
            bound: limits.oracle_carrier,
        })?;
    let idx1: HashMap<Vec<usize>, usize> = inj1
        .iter()
        .enumerate()
        .map(|(i, m)| (m.map().to_vec(), i))
        .collect();
    let idx2: HashMap<Vec<usize>, usize> = inj2
        .iter()
        .enumerate()
        .map(|(i, m)| (m.map().to_vec(), i))
        .collect();
    let point = |i1: usize, i2: usize| i1 * n2 + i2;

    let aut1 = compute_aut(g1, limits)?;
    let aut2 = compute_aut(g2, limits)?;
    let aut_h = compute_aut(h, limits)?;
    let gamma = find_isomorphism(g1, g2, limits)?;

    let mut actors: Vec<Vec<usize>> = Vec::new();
    for gi in aut1.group().greedy_generators() {
        let phi = aut1.map_table(gi);
        let move1: Vec<usize> = inj1
            .iter()
            .map(|m| idx1[&compose_tables(phi, m.map())])
            .collect();
        actors.push((0..n).map(|p| point(move1[p / n2], p % n2)).collect());
    }
    for gi in aut2.group().greedy_generators() {
        let phi = aut2.map_table(gi);
        let move2: Vec<usize> = inj2
            .iter()
            .map(|m| idx2[&compose_tables(phi, m.map())])
            .collect();
        actors.push((0..n).map(|p| point(p / n2, move2[p % n2])).collect());
    }
    for gi in aut_h.group().greedy_generators() {
        let alpha = aut_h.map_table(gi);
        let move1: Vec<usize> = inj1
            .iter()
            .map(|m| idx1[&compose_tables(m.map(), alpha)])
            .collect();
        let move2: Vec<usize> = inj2
            .iter()
            .map(|m| idx2[&compose_tables(m.map(), alpha)])
            .collect();
        actors.push((0..n).map(|p| point(move1[p / n2], move2[p % n2])).collect());
    }
    if let Some(gm) = &gamma {
        let gm_inv = invert_table(gm.map());
        let to1: Vec<usize> = inj2
            .iter()
            .map(|m| idx1[&compose_tables(&gm_inv, m.map())])
            .collect();
        let to2: Vec<usize> = inj1
            .iter()
            .map(|m| idx2[&compose_tables(gm.map(), m.map())])
            .collect();
        actors.push((0..n).map(|p| point(to1[p % n2], to2[p / n2])).collect());
    }

    let orbits = generic_orbits(n, &actors)?;
    let mut representatives = Vec::new();
    for orbit in &orbits {
        let p = orbit[0];
        representatives.push(PushOut::new(inj1[p / n2].clone(), inj2[p % n2].clone())?);
    }
    Ok(IsoClassReport {
        count: orbits.len(),
        representatives,
        family: ClassFamily::PushoutFamily,
        symmetric: gamma.is_some(),
        method: CountMethod::Oracle,
    })
}

/// Restricted oracle: orbit count on the pairs of injections with images
/// exactly `(h1, h2)`, under the stabilizer actions and the diagonal. This
/// recounts the fixed-subgroup double-coset formula from first principles.
pub fn fixed_subgroups_orbit_oracle(ctx: &FixedPairContext, limits: &Limits) -> Result<usize> {
    let k = ctx.aut_h.len();
    let lam: Vec<Vec<usize>> = (0..k)
        .map(|a| compose_tables(ctx.embed1.map(), ctx.aut_h.map_table(a)))
        .collect();
    let mus: Vec<Vec<usize>> = (0..k)
        .map(|a| compose_tables(ctx.embed2_mu.map(), ctx.aut_h.map_table(a)))
        .collect();
    let idx_l: HashMap<Vec<usize>, usize> =
        lam.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let idx_m: HashMap<Vec<usize>, usize> =
        mus.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let n = k * k;
    if n > limits.oracle_carrier {
        return Err(Error::SizeExceeded {
            got: n,
            bound: limits.oracle_carrier,
        });
    }
    let point = |a: usize, b: usize| a * k + b;
    let mut actors: Vec<Vec<usize>> = Vec::new();
    // Post-composition by automorphisms of G1 preserving h1.
    for &s in ctx.ri1.aut_stab.elements() {
        let phi = ctx.aut_g1.map_table(s);
        let move1: Vec<usize> = lam.iter().map(|t| idx_l[&compose_tables(phi, t)]).collect();
        actors.push((0..n).map(|p| point(move1[p / k], p % k)).collect());
    }
    for &s in ctx.ri2.aut_stab.elements() {
        let phi = ctx.aut_g2.map_table(s);
        let move2: Vec<usize> = mus.iter().map(|t| idx_m[&compose_tables(phi, t)]).collect();
        actors.push((0..n).map(|p| point(p / k, move2[p % k])).collect());
    }
    // Diagonal pre-composition by Aut(H).
    for c in 0..k {
        let alpha = ctx.aut_h.map_table(c);
        let move1: Vec<usize> = lam.iter().map(|t| idx_l[&compose_tables(t, alpha)]).collect();
        let move2: Vec<usize> = mus.iter().map(|t| idx_m[&compose_tables(t, alpha)]).collect();
        actors.push((0..n).map(|p| point(move1[p / k], move2[p % k])).collect());
    }
    if let Some(gm) = &ctx.gamma {
        let gm_inv = invert_table(gm.map());
        let to1: Vec<usize> = mus.iter().map(|t| idx_l[&compose_tables(&gm_inv, t)]).collect();
        let to2: Vec<usize> = lam.iter().map(|t| idx_m[&compose_tables(gm.map(), t)]).collect();
        actors.push((0..n).map(|p| point(to1[p % k], to2[p / k])).collect());
    }
    Ok(generic_orbits(n, &actors)?.len())
}

/// Comparison of one fixed subgroup pair: formula count vs. restricted
/// orbit oracle.
#[derive(Debug, Clone)]
pub struct PairComparison {
    pub h1_elements: Vec<usize>,
    pub h2_elements: Vec<usize>,
    pub formula_count: usize,
    pub restricted_orbit_count: usize,
    pub symmetric: bool,
}

impl PairComparison {
    pub fn agree(&self) -> bool {
        self.formula_count == self.restricted_orbit_count
    }
}

/// Full three-way comparison for one `(G1, G2, H)` instance: the family-level
/// orbit count, the sum of per-pair double-coset counts, and the pairwise
/// classification of the orbit representatives.
#[derive(Debug, Clone)]
pub struct InstanceComparison {
    pub g1: String,
    pub g2: String,
    pub h: String,
    pub family_orbit_count: usize,
    pub formula_sum: usize,
    pub pairwise_distinct: usize,
    pub pairs: Vec<PairComparison>,
    pub agree: bool,
    pub note: Option<String>,
}

fn label_of(g: &FiniteGroup) -> String {
    g.label().map(str::to_string).unwrap_or_else(|| format!("order{}", g.order()))
}

/// Recomputes every count for an instance `(G1, G2, H)` by (a) generic orbit
/// enumeration on injection pairs, (b) the double-coset formulas summed over
/// unordered pairs of subgroup orbits, and (c) pairwise push-out isomorphism
/// classification of the orbit representatives.
pub fn oracle_cross_check(
    g1: &Arc<FiniteGroup>,
    g2: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    limits: &Limits,
) -> Result<InstanceComparison> {
    let family = count_classes_pushout_family(h, g1, g2, limits)?;

    // Subgroup images of H in each factor, partitioned into Aut-orbits.
    let subs1 = subgroup_images(h, g1, limits)?;
    let subs2 = subgroup_images(h, g2, limits)?;
    let orbits1 = subgroup_orbits(g1, &subs1, limits)?;
    let orbits2 = subgroup_orbits(g2, &subs2, limits)?;
    let gamma = find_isomorphism(g1, g2, limits)?;

    let mut formula_sum = 0usize;
    let mut pairs = Vec::new();
    let mut note = None;

    let mut run_pair = |h1: &Subgroup, h2: &Subgroup| -> Result<()> {
        let ctx = FixedPairContext::new(g1, h1, g2, h2, limits)?;
        let report = count_classes_fixed_subgroups_ctx(&ctx)?;
        let restricted = fixed_subgroups_orbit_oracle(&ctx, limits)?;
        formula_sum += report.count;
        pairs.push(PairComparison {
            h1_elements: h1.elements().to_vec(),
            h2_elements: h2.elements().to_vec(),
            formula_count: report.count,
            restricted_orbit_count: restricted,
            symmetric: report.symmetric,
        });
        Ok(())
    };

    match &gamma {
        None => {
            for o1 in &orbits1 {
                for o2 in &orbits2 {
                    run_pair(&subs1[o1[0]], &subs2[o2[0]])?;
                }
            }
        }
        Some(gm) => {
            // Label each G2-orbit by the G1-orbit its gamma-preimage lies in,
            // then sum over unordered label pairs.
            let gm_inv = invert_table(gm.map());
            let orbit1_of: HashMap<Vec<usize>, usize> = orbits1
                .iter()
                .enumerate()
                .flat_map(|(oi, orbit)| {
                    orbit.iter().map(move |&si| (si, oi)).collect::<Vec<_>>()
                })
                .map(|(si, oi)| (subs1[si].elements().to_vec(), oi))
                .collect();
            let mut label_to_orbit2: HashMap<usize, usize> = HashMap::new();
            for (oi, orbit) in orbits2.iter().enumerate() {
                let rep = &subs2[orbit[0]];
                let mut pre: Vec<usize> = rep.elements().iter().map(|&x| gm_inv[x]).collect();
                pre.sort_unstable();
                let label = *orbit1_of
                    .get(&pre)
                    .expect("gamma-preimage of an H-image is an H-image");
                label_to_orbit2.insert(label, oi);
            }
            for a in 0..orbits1.len() {
                for b in a..orbits1.len() {
                    let o2 = label_to_orbit2
                        .get(&b)
                        .expect("orbit correspondence through gamma is onto");
                    run_pair(&subs1[orbits1[a][0]], &subs2[orbits2[*o2][0]])?;
                }
            }
        }
    }

    // Pairwise classification of the family orbit representatives.
    let classifier = PushoutClassifier::new(g1, g2, limits)?;
    let reps = &family.representatives;
    let mut uf = UnionFind::new(reps.len());
    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            if classifier.isomorphic(&reps[i], &reps[j], true)?.is_some() {
                uf.union(i, j);
                if note.is_none() {
                    note = Some(format!(
                        "family orbit representatives {i} and {j} are isomorphic push-outs"
                    ));
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..reps.len()).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    let pairwise_distinct = roots.len();

    let pairs_agree = pairs.iter().all(PairComparison::agree);
    if note.is_none() {
        if let Some(bad) = pairs.iter().find(|p| !p.agree()) {
            note = Some(format!(
                "pair with images {:?} / {:?}: formula {} vs restricted oracle {}",
                bad.h1_elements, bad.h2_elements, bad.formula_count, bad.restricted_orbit_count
            ));
        } else if family.count != formula_sum {
            note = Some(format!(
                "family orbit count {} vs formula sum {}",
                family.count, formula_sum
            ));
        }
    }
    let agree = family.count == formula_sum && family.count == pairwise_distinct && pairs_agree;
    Ok(InstanceComparison {
        g1: label_of(g1),
        g2: label_of(g2),
        h: label_of(h),
        family_orbit_count: family.count,
        formula_sum,
        pairwise_distinct,
        pairs,
        agree,
        note,
    })
}

/// Enumerates every cross-check instance in a catalog: unordered pairs of
/// groups of order at most `max_order`, with one instance per isomorphism
/// type of common subgroup of order at most `max_subgroup` (proper in both
/// factors), and runs the three-way comparison on each.
pub fn sweep_catalog(
    entries: &[crate::catalog::CatalogEntry],
    max_order: usize,
    max_subgroup: usize,
    limits: &Limits,
) -> Result<Vec<InstanceComparison>> {
    let groups: Vec<&crate::catalog::CatalogEntry> = entries
        .iter()
        .filter(|e| e.group.order() <= max_order)
        .collect();
    let mut out = Vec::new();
    for i in 0..groups.len() {
        for j in i..groups.len() {
            let (g1, g2) = (&groups[i].group, &groups[j].group);
            for h in common_subgroup_types(g1, g2, max_subgroup, limits)? {
                out.push(oracle_cross_check(g1, g2, &h, limits)?);
            }
        }
    }
    Ok(out)
}

/// One abstract representative per isomorphism type of subgroup occurring in
/// both groups, of order at most `max_subgroup` and proper in both.
pub fn common_subgroup_types(
    g1: &Arc<FiniteGroup>,
    g2: &Arc<FiniteGroup>,
    max_subgroup: usize,
    limits: &Limits,
) -> Result<Vec<Arc<FiniteGroup>>> {
    let subs1 = crate::group::enumerate_subgroups(g1, limits)?;
    let mut types: Vec<Arc<FiniteGroup>> = Vec::new();
    for s in subs1.items() {
        if s.len() > max_subgroup || s.len() >= g1.order() || s.len() >= g2.order() {
            continue;
        }
        let (mut h_raw, _) = s.as_group(None);
        let probe = Arc::new(h_raw.clone());
        let mut seen = false;
        for t in &types {
            if find_isomorphism(t, &probe, limits)?.is_some() {
                seen = true;
                break;
            }
        }
        if seen {
            continue;
        }
        if enumerate_injections(&probe, g2, limits)?.is_empty() {
            continue;
        }
        let variant = types.iter().filter(|t| t.order() == h_raw.order()).count();
        h_raw.set_label(format!("h{}v{}", h_raw.order(), variant));
        types.push(Arc::new(h_raw));
    }
    Ok(types)
}

/// All subgroups of `G` isomorphic to `H` (as images of injections),
/// canonically ordered.
pub fn subgroup_images(
    h: &Arc<FiniteGroup>,
    g: &Arc<FiniteGroup>,
    limits: &Limits,
) -> Result<Vec<Subgroup>> {
    let mut images: Vec<Vec<usize>> = enumerate_injections(h, g, limits)?
        .iter()
        .map(|m| m.image())
        .collect();
    images.sort_unstable();
    images.dedup();
    images
        .into_iter()
        .map(|e| Subgroup::new(Arc::clone(g), e))
        .collect()
}

/// Orbits of a list of subgroups under the natural `Aut(G)` action,
/// as index sets into the list.
pub fn subgroup_orbits(
    g: &Arc<FiniteGroup>,
    subs: &[Subgroup],
    limits: &Limits,
) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<Vec<usize>, usize> = subs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.elements().to_vec(), i))
        .collect();
    let aut = compute_aut(g, limits)?;
    let mut actors = Vec::new();
    for gi in aut.group().greedy_generators() {
        let phi = aut.map_table(gi);
        let actor: Vec<usize> = subs
            .iter()
            .map(|s| {
                let mut img: Vec<usize> = s.elements().iter().map(|&x| phi[x]).collect();
                img.sort_unstable();
                *index
                    .get(&img)
                    .expect("automorphic image of an H-image is an H-image")
            })
            .collect();
        actors.push(actor);
    }
    generic_orbits(subs.len(), &actors)
}

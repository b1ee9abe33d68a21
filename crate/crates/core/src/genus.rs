//! The genus formulas over `Out(H)`-level data: the restricted double-coset
//! counts over the carrier sets `K` and `S`, their order-two quotients, the
//! simplification conditions, the normalizer-decomposition bound, and the
//! push-out genus summation.

use std::sync::Arc;

use crate::amalgam::FixedPairContext;
use crate::coset::{
    c2_orbits, double_cosets, product_set, twisted_inverse_set, C2Orbits,
    DoubleCosetDecomposition, TwistedInvolution,
};
use crate::error::{Error, Result};
use crate::group::{center, is_direct_factor, is_retract, normalizer, FiniteGroup, Subgroup};
use crate::morphism::OutQuotient;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryMode {
    /// No isomorphism of the completions carries one amalgamated copy to the other.
    ProfinitelyNonsymmetric,
    /// The completions admit such an isomorphism but the groups do not.
    ProfinitelySymmetricNonsymmetric,
    /// The groups themselves admit a subgroup-preserving isomorphism.
    Symmetric,
    /// The amalgam is a double of one factor.
    Double,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NplusPolicy {
    /// Caller-supplied set.
    Exact,
    /// `{identity}`: never overcounts the carrier.
    LowerProxy,
    /// The full generated normalizer image: never undercounts the carrier.
    UpperProxy,
}

/// The `Out(H)`-level data consumed by the genus formulas. For finite factors
/// every field is derived; in abstract mode the caller supplies the profinite
/// images and the symmetry mode directly.
#[derive(Debug, Clone)]
pub struct GenusInput {
    pub out: Arc<OutQuotient>,
    /// Discrete images in `Out(H)`, second factor first: the formulas read
    /// `A2 \ ... / A1`.
    pub a1: Subgroup,
    pub a2: Subgroup,
    /// Profinite images in `Out(H)`.
    pub ahat1: Subgroup,
    pub ahat2: Subgroup,
    /// Image of the mysterious normalizer subset; always contains the identity.
    pub nplus: Vec<usize>,
    pub nplus_policy: NplusPolicy,
    /// Twist from a (profinite) symmetry, required outside the
    /// profinitely-nonsymmetric mode.
    pub xi: Option<usize>,
    pub mode: SymmetryMode,
    /// Normalizer images, kept when derived from finite groups.
    pub n1: Option<Subgroup>,
    pub n2: Option<Subgroup>,
}

impl GenusInput {
    pub fn validate(&self) -> Result<()> {
        let out_g = self.out.group();
        for (name, s) in [
            ("a1", &self.a1),
            ("a2", &self.a2),
            ("ahat1", &self.ahat1),
            ("ahat2", &self.ahat2),
        ] {
            if !s.same_parent_as(out_g) {
                return Err(Error::InvalidGenusInput(format!("{name} not inside Out(H)")));
            }
        }
        if !self.a1.is_subset_of(&self.ahat1) || !self.a2.is_subset_of(&self.ahat2) {
            return Err(Error::InvalidGenusInput(
                "discrete image must lie inside the profinite image".into(),
            ));
        }
        if self.nplus.iter().any(|&x| x >= out_g.order()) {
            return Err(Error::InvalidGenusInput("nplus element out of range".into()));
        }
        if !self.nplus.contains(&out_g.identity()) {
            return Err(Error::InvalidGenusInput(
                "nplus must contain the identity".into(),
            ));
        }
        if let Some(xi) = self.xi {
            if xi >= out_g.order() {
                return Err(Error::InvalidGenusInput("xi out of range".into()));
            }
        }
        Ok(())
    }

    fn xi_or_err(&self) -> Result<usize> {
        self.xi.ok_or(Error::MissingXi)
    }
}

/// Overrides for abstract case studies: any supplied field replaces the
/// finite-derived value.
#[derive(Debug, Clone, Default)]
pub struct GenusOverrides {
    pub a1: Option<Vec<usize>>,
    pub a2: Option<Vec<usize>>,
    pub ahat1: Option<Vec<usize>>,
    pub ahat2: Option<Vec<usize>>,
    pub nplus: Option<Vec<usize>>,
    pub xi: Option<usize>,
    pub mode: Option<SymmetryMode>,
}

/// Derives the `Out(H)`-level data from finite groups. Discrete and profinite
/// images coincide, the normalizer subset follows the chosen policy, and the
/// mode is decided by the subgroup-preserving isomorphism search.
pub fn derive_genus_input(
    g1: &Arc<FiniteGroup>,
    h1: &Subgroup,
    g2: &Arc<FiniteGroup>,
    h2: &Subgroup,
    policy: NplusPolicy,
    overrides: Option<GenusOverrides>,
    limits: &Limits,
) -> Result<GenusInput> {
    let ctx = FixedPairContext::new(g1, h1, g2, h2, limits)?;
    derive_genus_input_ctx(&ctx, policy, overrides)
}

pub fn derive_genus_input_ctx(
    ctx: &FixedPairContext,
    policy: NplusPolicy,
    overrides: Option<GenusOverrides>,
) -> Result<GenusInput> {
    let out_g = ctx.out_h.group();
    let n1 = ctx.ri1.tilde_normalizer.clone();
    let n2 = ctx.ri2.tilde_normalizer.clone();
    let nplus = match policy {
        NplusPolicy::LowerProxy => vec![out_g.identity()],
        NplusPolicy::UpperProxy => {
            let mut seed: Vec<usize> = n1.elements().to_vec();
            seed.extend_from_slice(n2.elements());
            Subgroup::generated(out_g, &seed)?.elements().to_vec()
        }
        NplusPolicy::Exact => {
            let ov = overrides.as_ref().and_then(|o| o.nplus.clone());
            ov.ok_or_else(|| {
                Error::InvalidGenusInput("exact nplus policy needs an explicit set".into())
            })?
        }
    };
    let mode = if ctx.gamma.is_some() {
        SymmetryMode::Symmetric
    } else {
        SymmetryMode::ProfinitelyNonsymmetric
    };
    let mut input = GenusInput {
        out: Arc::clone(&ctx.out_h),
        a1: ctx.ri1.tilde_image.clone(),
        a2: ctx.ri2.tilde_image.clone(),
        ahat1: ctx.ri1.tilde_image.clone(),
        ahat2: ctx.ri2.tilde_image.clone(),
        nplus,
        nplus_policy: policy,
        xi: ctx.xi_out,
        mode,
        n1: Some(n1),
        n2: Some(n2),
    };
    if let Some(ov) = overrides {
        let sub = |elems: Vec<usize>| Subgroup::new(Arc::clone(out_g), elems);
        if let Some(e) = ov.a1 {
            input.a1 = sub(e)?;
        }
        if let Some(e) = ov.a2 {
            input.a2 = sub(e)?;
        }
        if let Some(e) = ov.ahat1 {
            input.ahat1 = sub(e)?;
        }
        if let Some(e) = ov.ahat2 {
            input.ahat2 = sub(e)?;
        }
        if let Some(e) = ov.nplus {
            let mut e = e;
            e.sort_unstable();
            e.dedup();
            input.nplus = e;
            input.nplus_policy = NplusPolicy::Exact;
        }
        if let Some(xi) = ov.xi {
            input.xi = Some(xi);
        }
        if let Some(mode) = ov.mode {
            input.mode = mode;
        }
    }
    input.validate()?;
    Ok(input)
}

/// Status of the simplification conditions (per factor where applicable),
/// plus whether the normalizer subset provably drops out of the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionVector {
    pub central: [bool; 2],
    pub direct_factor_of_normalizer: [bool; 2],
    pub out_abelian: bool,
    pub self_normalizing: [bool; 2],
    pub retract: [bool; 2],
    /// The generated normalizer image equals the plain product `N2 * N1`.
    pub nplus_eliminable: bool,
}

impl ConditionVector {
    pub fn any_holds(&self) -> bool {
        self.central.iter().any(|&b| b)
            || self.direct_factor_of_normalizer.iter().any(|&b| b)
            || self.out_abelian
            || self.self_normalizing.iter().any(|&b| b)
            || self.retract.iter().any(|&b| b)
    }
}

pub fn check_simplifications(
    g1: &Arc<FiniteGroup>,
    h1: &Subgroup,
    g2: &Arc<FiniteGroup>,
    h2: &Subgroup,
    limits: &Limits,
) -> Result<ConditionVector> {
    let ctx = FixedPairContext::new(g1, h1, g2, h2, limits)?;
    check_simplifications_ctx(&ctx, limits)
}

pub fn check_simplifications_ctx(ctx: &FixedPairContext, limits: &Limits) -> Result<ConditionVector> {
    let sides = [(&ctx.g1, &ctx.h1), (&ctx.g2, &ctx.h2)];
    let mut central = [false; 2];
    let mut direct_factor = [false; 2];
    let mut self_normalizing = [false; 2];
    let mut retract = [false; 2];
    for (i, (g, h)) in sides.iter().enumerate() {
        let z = center(g);
        central[i] = h.is_subset_of(&z);
        let n = normalizer(g, h)?;
        self_normalizing[i] = n.set_eq(h);
        direct_factor[i] = is_direct_factor(&n, h)?.is_some();
        retract[i] = is_retract(g, h, limits)?;
    }
    let out_abelian = ctx.out_h.group().is_abelian();
    let out_g = ctx.out_h.group();
    let n1 = &ctx.ri1.tilde_normalizer;
    let n2 = &ctx.ri2.tilde_normalizer;
    let mut seed: Vec<usize> = n1.elements().to_vec();
    seed.extend_from_slice(n2.elements());
    let generated = Subgroup::generated(out_g, &seed)?;
    let plain_product = product_set(out_g, &[n2.elements(), n1.elements()]);
    let nplus_eliminable = plain_product == generated.elements();
    Ok(ConditionVector {
        central,
        direct_factor_of_normalizer: direct_factor,
        out_abelian,
        self_normalizing,
        retract,
        nplus_eliminable,
    })
}

/// A genus value together with the full audit trail: the carrier sets, the
/// decomposition, the order-two pairing when one applies, and the formula
/// that fired.
#[derive(Debug, Clone)]
pub struct GenusReport {
    pub value: usize,
    pub is_bound: bool,
    pub k_set: Vec<usize>,
    pub s_set: Vec<usize>,
    pub decomposition: DoubleCosetDecomposition,
    pub c2: Option<C2Orbits>,
    pub conditions: Option<ConditionVector>,
    pub formula: String,
    pub policy: NplusPolicy,
    pub mode: SymmetryMode,
}

/// The restricted double-coset count over the carrier `K = Ahat2 Nplus Ahat1`
/// (or `S = K union xi K^-1 xi`), with the order-two quotient in symmetric
/// mode. Dispatches on the input's symmetry mode.
pub fn genus_fixed(input: &GenusInput) -> Result<GenusReport> {
    input.validate()?;
    if input.mode == SymmetryMode::Double {
        return genus_double(input);
    }
    let out_g = input.out.group();
    let k_set = product_set(
        out_g,
        &[input.ahat2.elements(), &input.nplus, input.ahat1.elements()],
    );
    match input.mode {
        SymmetryMode::ProfinitelyNonsymmetric => {
            let decomposition = double_cosets(out_g, &input.a2, &input.a1, &k_set)?;
            Ok(GenusReport {
                value: decomposition.class_count(),
                is_bound: false,
                s_set: k_set.clone(),
                k_set,
                decomposition,
                c2: None,
                conditions: None,
                formula: "restricted double cosets over K (*)".into(),
                policy: input.nplus_policy,
                mode: input.mode,
            })
        }
        SymmetryMode::ProfinitelySymmetricNonsymmetric | SymmetryMode::Symmetric => {
            let xi = input.xi_or_err()?;
            check_twist_compatibility(input, xi)?;
            let mut s_set = k_set.clone();
            s_set.extend(twisted_inverse_set(out_g, xi, &k_set));
            s_set.sort_unstable();
            s_set.dedup();
            let decomposition = double_cosets(out_g, &input.a2, &input.a1, &s_set)?;
            if input.mode == SymmetryMode::ProfinitelySymmetricNonsymmetric {
                return Ok(GenusReport {
                    value: decomposition.class_count(),
                    is_bound: false,
                    k_set,
                    s_set,
                    decomposition,
                    c2: None,
                    conditions: None,
                    formula: "restricted double cosets over S (**)".into(),
                    policy: input.nplus_policy,
                    mode: input.mode,
                });
            }
            let tw = TwistedInvolution::new(out_g, xi)?;
            let c2 = c2_orbits(&decomposition, &tw)?;
            Ok(GenusReport {
                value: c2.orbit_count,
                is_bound: false,
                k_set,
                s_set,
                decomposition,
                c2: Some(c2),
                conditions: None,
                formula: "restricted double cosets over S with C2 quotient (***)".into(),
                policy: input.nplus_policy,
                mode: input.mode,
            })
        }
        SymmetryMode::Double => unreachable!("dispatched above"),
    }
}

fn check_twist_compatibility(input: &GenusInput, xi: usize) -> Result<()> {
    let out_g = input.out.group();
    let conj = |s: &Subgroup| -> Vec<usize> {
        let mut v: Vec<usize> = s
            .elements()
            .iter()
            .map(|&a| out_g.mul(out_g.mul(out_g.inv(xi), a), xi))
            .collect();
        v.sort_unstable();
        v
    };
    if conj(&input.a2) != input.a1.elements() || conj(&input.ahat2) != input.ahat1.elements() {
        return Err(Error::InvalidGenusInput(
            "twist does not conjugate the second-factor images onto the first".into(),
        ));
    }
    Ok(())
}

/// Genus of a double: double cosets of the discrete image inside the
/// profinite image, quotiented by inversion when the amalgam itself is
/// symmetric; the profinitely-symmetric-only branch drops the quotient.
pub fn genus_double(input: &GenusInput) -> Result<GenusReport> {
    input.validate()?;
    let out_g = input.out.group();
    let carrier = input.ahat1.elements().to_vec();
    match input.mode {
        SymmetryMode::Double | SymmetryMode::Symmetric => {
            let decomposition = double_cosets(out_g, &input.a1, &input.a1, &carrier)?;
            let tw = TwistedInvolution::new(out_g, out_g.identity())?;
            let c2 = c2_orbits(&decomposition, &tw)?;
            Ok(GenusReport {
                value: c2.orbit_count,
                is_bound: false,
                k_set: carrier.clone(),
                s_set: carrier,
                decomposition,
                c2: Some(c2),
                conditions: None,
                formula: "double: inversion quotient of A1-double cosets in Ahat1".into(),
                policy: input.nplus_policy,
                mode: input.mode,
            })
        }
        SymmetryMode::ProfinitelySymmetricNonsymmetric => {
            let decomposition = double_cosets(out_g, &input.a2, &input.a1, &carrier)?;
            Ok(GenusReport {
                value: decomposition.class_count(),
                is_bound: false,
                k_set: carrier.clone(),
                s_set: carrier,
                decomposition,
                c2: None,
                conditions: None,
                formula: "profinite double: A2\\Ahat1/A1 without quotient".into(),
                policy: input.nplus_policy,
                mode: input.mode,
            })
        }
        SymmetryMode::ProfinitelyNonsymmetric => Err(Error::InvalidGenusInput(
            "a double is at least profinitely symmetric".into(),
        )),
    }
}

/// Kernel of the normalizer-decomposition bound: double cosets of the two
/// normalizer images inside the subgroup they generate.
pub fn normalizer_bound(
    out_g: &Arc<FiniteGroup>,
    n1: &Subgroup,
    n2: &Subgroup,
) -> Result<(usize, DoubleCosetDecomposition)> {
    let mut seed: Vec<usize> = n1.elements().to_vec();
    seed.extend_from_slice(n2.elements());
    let generated = Subgroup::generated(out_g, &seed)?;
    let decomposition = double_cosets(out_g, n2, n1, generated.elements())?;
    Ok((decomposition.class_count(), decomposition))
}

/// Upper bound for the genus of a non-symmetric amalgam of finite groups:
/// the normalizer image of the amalgam decomposes over the two factors, and
/// the genus is at most the number of its double cosets.
pub fn genus_bound_finite(
    g1: &Arc<FiniteGroup>,
    h1: &Subgroup,
    g2: &Arc<FiniteGroup>,
    h2: &Subgroup,
    limits: &Limits,
) -> Result<GenusReport> {
    let ctx = FixedPairContext::new(g1, h1, g2, h2, limits)?;
    genus_bound_finite_ctx(&ctx)
}

pub fn genus_bound_finite_ctx(ctx: &FixedPairContext) -> Result<GenusReport> {
    if ctx.gamma.is_some() {
        return Err(Error::SymmetricInputForNonsymmetricBound);
    }
    let out_g = ctx.out_h.group();
    let (value, decomposition) =
        normalizer_bound(out_g, &ctx.ri1.tilde_normalizer, &ctx.ri2.tilde_normalizer)?;
    Ok(GenusReport {
        value,
        is_bound: true,
        k_set: decomposition.carrier().to_vec(),
        s_set: decomposition.carrier().to_vec(),
        decomposition,
        c2: None,
        conditions: None,
        formula: "normalizer decomposition bound (N2\\N/N1)".into(),
        policy: NplusPolicy::UpperProxy,
        mode: SymmetryMode::ProfinitelyNonsymmetric,
    })
}

/// Genus over the push-out family: the sum of fixed-subgroup genera over
/// unordered pairs of subgroup-orbit representatives.
#[derive(Debug, Clone)]
pub struct PushoutGenusReport {
    pub total: usize,
    /// Number of relevant subgroup orbits per factor (always 1 when derived
    /// from finite groups; `None` when abstract orbit data was supplied).
    pub k1: Option<usize>,
    pub k2: Option<usize>,
    pub pairs: Vec<(String, GenusReport)>,
}

/// Finite path of the push-out genus: computes the automorphism orbit of
/// each amalgamated copy explicitly, takes canonical representatives, and
/// sums the fixed-subgroup genus over the resulting unordered pairs.
/// With `orbit_data` supplied the summation runs over the given abstract
/// inputs instead.
pub fn genus_pushout(
    g1: &Arc<FiniteGroup>,
    h1: &Subgroup,
    g2: &Arc<FiniteGroup>,
    h2: &Subgroup,
    policy: NplusPolicy,
    orbit_data: Option<Vec<GenusInput>>,
    limits: &Limits,
) -> Result<PushoutGenusReport> {
    if let Some(inputs) = orbit_data {
        let mut total = 0;
        let mut pairs = Vec::new();
        for (i, input) in inputs.iter().enumerate() {
            let report = genus_fixed(input)?;
            total += report.value;
            pairs.push((format!("abstract pair {i}"), report));
        }
        return Ok(PushoutGenusReport {
            total,
            k1: None,
            k2: None,
            pairs,
        });
    }
    let rep1 = canonical_orbit_rep(g1, h1, limits)?;
    let rep2 = canonical_orbit_rep(g2, h2, limits)?;
    let (k1, h1_rep) = rep1;
    let (k2, h2_rep) = rep2;
    let input = derive_genus_input(g1, &h1_rep, g2, &h2_rep, policy, None, limits)?;
    let report = genus_fixed(&input)?;
    let label = format!(
        "images {:?} / {:?}",
        h1_rep.elements(),
        h2_rep.elements()
    );
    Ok(PushoutGenusReport {
        total: report.value,
        k1: Some(k1),
        k2: Some(k2),
        pairs: vec![(label, report)],
    })
}

/// The `Aut(G)`-orbit of `h` (computed explicitly), partitioned under
/// `Aut(G)`, returning the orbit count of the relevant set (one, by
/// construction, for finite groups) and the canonical representative.
fn canonical_orbit_rep(
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    limits: &Limits,
) -> Result<(usize, Subgroup)> {
    let aut = crate::morphism::compute_aut(g, limits)?;
    let mut orbit: Vec<Vec<usize>> = aut
        .maps()
        .iter()
        .map(|phi| {
            let mut img: Vec<usize> = h.elements().iter().map(|&x| phi[x]).collect();
            img.sort_unstable();
            img
        })
        .collect();
    orbit.sort_unstable();
    orbit.dedup();
    let subs: Vec<Subgroup> = orbit
        .into_iter()
        .map(|e| Subgroup::new(Arc::clone(g), e))
        .collect::<Result<_>>()?;
    let orbits = crate::amalgam::subgroup_orbits(g, &subs, limits)?;
    let k = orbits.len();
    let rep = subs[orbits[0][0]].clone();
    Ok((k, rep))
}

/// Convenience wrapper for finite inputs: derives the genus input, runs the
/// fixed-subgroup genus, and attaches the simplification conditions.
pub fn genus_for_groups(
    g1: &Arc<FiniteGroup>,
    h1: &Subgroup,
    g2: &Arc<FiniteGroup>,
    h2: &Subgroup,
    policy: NplusPolicy,
    limits: &Limits,
) -> Result<GenusReport> {
    let ctx = FixedPairContext::new(g1, h1, g2, h2, limits)?;
    let input = derive_genus_input_ctx(&ctx, policy, None)?;
    let mut report = genus_fixed(&input)?;
    report.conditions = Some(check_simplifications_ctx(&ctx, limits)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::morphism::{compute_aut, out_quotient};

    fn limits() -> Limits {
        Limits::default()
    }

    /// Out(C7) is cyclic of order 6; handy abstract ambient.
    fn out_c6() -> Arc<OutQuotient> {
        let c7 = catalog::builtin_group("c7").unwrap();
        let aut = Arc::new(compute_aut(&c7, &limits()).unwrap());
        Arc::new(out_quotient(&aut).unwrap())
    }

    fn abstract_input(
        out: &Arc<OutQuotient>,
        a: Vec<usize>,
        ahat: Vec<usize>,
        nplus: Vec<usize>,
        mode: SymmetryMode,
        xi: Option<usize>,
    ) -> GenusInput {
        let g = out.group();
        GenusInput {
            out: Arc::clone(out),
            a1: Subgroup::new(Arc::clone(g), a.clone()).unwrap(),
            a2: Subgroup::new(Arc::clone(g), a).unwrap(),
            ahat1: Subgroup::new(Arc::clone(g), ahat.clone()).unwrap(),
            ahat2: Subgroup::new(Arc::clone(g), ahat).unwrap(),
            nplus,
            nplus_policy: NplusPolicy::Exact,
            xi,
            mode,
            n1: None,
            n2: None,
        }
    }

    #[test]
    fn derive_for_d8_klein_is_symmetric_with_order_two_images() {
        let entry = catalog::builtin_entry("d8").unwrap();
        let klein = entry.subgroups.get("klein").unwrap();
        let input = derive_genus_input(
            &entry.group,
            klein,
            &entry.group,
            klein,
            NplusPolicy::UpperProxy,
            None,
            &limits(),
        )
        .unwrap();
        assert_eq!(input.mode, SymmetryMode::Symmetric);
        assert_eq!(input.a1.len(), 2);
        assert_eq!(input.a2.len(), 2);
        assert_eq!(input.out.group().order(), 6);
        assert!(input.xi.is_some());
    }

    #[test]
    fn d8_klein_genus_is_one_under_both_policies() {
        let entry = catalog::builtin_entry("d8").unwrap();
        let klein = entry.subgroups.get("klein").unwrap();
        for policy in [NplusPolicy::LowerProxy, NplusPolicy::UpperProxy] {
            let report =
                genus_for_groups(&entry.group, klein, &entry.group, klein, policy, &limits())
                    .unwrap();
            assert_eq!(report.value, 1, "{policy:?}");
        }
    }

    #[test]
    fn abstract_trivial_images_full_hats_count_the_whole_carrier() {
        let out = out_c6();
        let g = out.group();
        let e = g.identity();
        let input = abstract_input(
            &out,
            vec![e],
            (0..6).collect(),
            vec![e],
            SymmetryMode::ProfinitelyNonsymmetric,
            None,
        );
        let report = genus_fixed(&input).unwrap();
        assert_eq!(report.value, 6);
        assert_eq!(report.k_set.len(), 6);
    }

    #[test]
    fn abstract_double_with_trivial_discrete_image_quotients_by_inversion() {
        let out = out_c6();
        let g = out.group();
        let e = g.identity();
        let input = abstract_input(
            &out,
            vec![e],
            (0..6).collect(),
            vec![e],
            SymmetryMode::Double,
            Some(e),
        );
        let report = genus_double(&input).unwrap();
        assert_eq!(report.value, 4);
    }

    #[test]
    fn full_discrete_images_give_genus_one() {
        let out = out_c6();
        let all: Vec<usize> = (0..6).collect();
        let e = out.group().identity();
        let input = abstract_input(
            &out,
            all.clone(),
            all,
            vec![e],
            SymmetryMode::Double,
            Some(e),
        );
        assert_eq!(genus_double(&input).unwrap().value, 1);
    }

    #[test]
    fn missing_xi_is_rejected_in_symmetric_mode() {
        let out = out_c6();
        let g = out.group();
        let e = g.identity();
        let input = abstract_input(
            &out,
            vec![e],
            (0..6).collect(),
            vec![e],
            SymmetryMode::Symmetric,
            None,
        );
        assert_eq!(genus_fixed(&input).unwrap_err(), Error::MissingXi);
    }

    #[test]
    fn conditions_for_central_subgroup_of_d8() {
        let entry = catalog::builtin_entry("d8").unwrap();
        let z = entry.subgroups.get("center").unwrap();
        let c = check_simplifications(&entry.group, z, &entry.group, z, &limits()).unwrap();
        assert!(c.central[0] && c.central[1]);
        assert!(c.any_holds());
    }

    #[test]
    fn conditions_for_borel_subgroup_are_self_normalizing() {
        let gl = catalog::builtin_entry("gl2f2").unwrap();
        let op = catalog::builtin_entry("gl2f2_op").unwrap();
        let b1 = gl.subgroups.get("borel_upper").unwrap();
        let b2 = op.subgroups.get("borel_lower").unwrap();
        let c = check_simplifications(&gl.group, b1, &op.group, b2, &limits()).unwrap();
        assert!(c.self_normalizing[0] && c.self_normalizing[1]);
    }

    #[test]
    fn conditions_for_klein_report_nonabelian_out() {
        let entry = catalog::builtin_entry("d8").unwrap();
        let klein = entry.subgroups.get("klein").unwrap();
        let c = check_simplifications(&entry.group, klein, &entry.group, klein, &limits()).unwrap();
        assert!(!c.out_abelian);
    }

    #[test]
    fn abstract_normalizer_bound_matches_the_worked_shape() {
        // Two distinct order-2 subgroups of S3 generate it; the bound is the
        // number of their double cosets inside it, namely 2.
        let klein = catalog::builtin_group("klein").unwrap();
        let aut = Arc::new(compute_aut(&klein, &limits()).unwrap());
        let out = out_quotient(&aut).unwrap();
        let out_g = out.group();
        assert_eq!(out_g.order(), 6);
        let invs: Vec<usize> = (0..6).filter(|&x| out_g.elem_order(x) == 2).collect();
        let n1 = Subgroup::generated(out_g, &[invs[0]]).unwrap();
        let n2 = Subgroup::generated(out_g, &[invs[1]]).unwrap();
        let (bound, _) = normalizer_bound(out_g, &n1, &n2).unwrap();
        assert_eq!(bound, 2);
    }

    #[test]
    fn bound_rejects_symmetric_amalgams() {
        let entry = catalog::builtin_entry("d8").unwrap();
        let klein = entry.subgroups.get("klein").unwrap();
        let err =
            genus_bound_finite(&entry.group, klein, &entry.group, klein, &limits()).unwrap_err();
        assert_eq!(err, Error::SymmetricInputForNonsymmetricBound);
    }

    #[test]
    fn bound_for_d8_q8_over_c4_is_one() {
        let d8 = catalog::builtin_entry("d8").unwrap();
        let q8 = catalog::builtin_entry("q8").unwrap();
        let h1 = d8.subgroups.get("c4").unwrap();
        let h2 = q8.subgroups.get("i").unwrap();
        let report = genus_bound_finite(&d8.group, h1, &q8.group, h2, &limits()).unwrap();
        assert!(report.is_bound);
        assert_eq!(report.value, 1);
    }

    #[test]
    fn pushout_genus_collapses_to_fixed_genus_for_finite_groups() {
        let entry = catalog::builtin_entry("d8").unwrap();
        let c4 = entry.subgroups.get("c4").unwrap();
        let report = genus_pushout(
            &entry.group,
            c4,
            &entry.group,
            c4,
            NplusPolicy::UpperProxy,
            None,
            &limits(),
        )
        .unwrap();
        assert_eq!(report.total, 1);
        assert_eq!(report.k1, Some(1));
        assert_eq!(report.k2, Some(1));

        let trivial = Subgroup::trivial(&entry.group);
        let report = genus_pushout(
            &entry.group,
            &trivial,
            &entry.group,
            &trivial,
            NplusPolicy::UpperProxy,
            None,
            &limits(),
        )
        .unwrap();
        assert_eq!(report.total, 1);
    }
}

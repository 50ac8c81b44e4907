//! Gluing presentations of a closed stratum and its open complement, and
//! reconstructing global classes from their restrictions to strata.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::chowfile::ChowDocument;
use crate::groebner::{
    divide_in_quotient, groebner_basis_with, is_member, is_nonzerodivisor, GbOptions, GroebnerError, Ideal, MapGraph,
};
use crate::poly::{GradedRing, PolyError, Polynomial, RingMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error("gluing condition fails: {0}")]
    GluingConditionFailed(String),
    #[error("cannot lift: {0}")]
    LiftingFailed(String),
    #[error("restriction to `{stratum}` is not divisible by its top Chern class: {detail}")]
    NotDivisible { stratum: String, detail: String },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("invalid gluing data: {0}")]
    InvalidDatum(String),
    #[error("unknown stratum `{0}`")]
    UnknownStratum(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

impl From<PolyError> for GlueError {
    fn from(e: PolyError) -> Self {
        GlueError::Groebner(e.into())
    }
}

/// A graded ring together with its relation ideal.
#[derive(Debug, Clone)]
pub struct StratumPresentation {
    pub name: String,
    pub relations: Ideal,
}

impl StratumPresentation {
    pub fn new(name: impl Into<String>, relations: Ideal) -> Self {
        StratumPresentation { name: name.into(), relations }
    }

    pub fn free(name: impl Into<String>, ring: &GradedRing) -> Self {
        StratumPresentation::new(name, Ideal::zero(ring))
    }

    pub fn ring(&self) -> &GradedRing {
        self.relations.ring()
    }
}

/// One closed stratum attached to an open complement along the class of the
/// closed stratum.
#[derive(Debug, Clone)]
pub struct GluingDatum {
    pub open: StratumPresentation,
    pub closed: StratumPresentation,
    pub class_var: String,
    pub class_degree: u32,
    /// From the open ring extended by `class_var` to the closed ring.
    pub pullback: RingMap,
    pub c_top: Polynomial,
}

impl GluingDatum {
    pub fn new(
        open: StratumPresentation,
        closed: StratumPresentation,
        class_var: &str,
        class_degree: u32,
        pullback: RingMap,
        c_top: Polynomial,
    ) -> Result<GluingDatum, GlueError> {
        let extended = open.ring().extend(class_var, class_degree)?;
        if !pullback.source().same_as(&extended) {
            return Err(GlueError::InvalidDatum(format!(
                "pullback source {:?} differs from the extended open ring {:?}",
                pullback.source(),
                extended
            )));
        }
        if !pullback.target().same_as(closed.ring()) {
            return Err(GlueError::InvalidDatum("pullback does not land in the closed ring".into()));
        }
        if pullback.image_of(class_var) != Some(&c_top) {
            return Err(GlueError::InvalidDatum(format!("pullback must send {class_var} to the top Chern class")));
        }
        Ok(GluingDatum { open, closed, class_var: class_var.to_string(), class_degree, pullback, c_top })
    }

    pub fn glued_ring(&self) -> &GradedRing {
        self.pullback.source()
    }

    fn class(&self) -> Polynomial {
        Polynomial::variable(self.glued_ring(), self.glued_ring().nvars() - 1)
    }
}

/// Outcome of the two preconditions of gluing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GluingCheck {
    pub nonzerodivisor: bool,
    pub surjective: bool,
}

impl GluingCheck {
    pub fn holds(&self) -> bool {
        self.nonzerodivisor && self.surjective
    }
}

pub fn gluing_check(d: &GluingDatum) -> Result<GluingCheck, GlueError> {
    let nonzerodivisor = is_nonzerodivisor(&d.c_top, &d.closed.relations)?;
    let surjective = MapGraph::new(&d.pullback, Some(&d.closed.relations))?.is_surjective()?;
    Ok(GluingCheck { nonzerodivisor, surjective })
}

/// Whether the top Chern class is a nonzerodivisor on the closed side and the
/// pullback is onto modulo the closed relations.
pub fn check_gluing_condition(d: &GluingDatum) -> bool {
    gluing_check(d).map(|c| c.holds()).unwrap_or(false)
}

/// Where a glued relation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// The class times a lift of a closed-side relation.
    ClosedLift,
    /// The class times a kernel element of the free pullback.
    Kernel,
    /// An open-side relation corrected by a multiple of the class.
    OpenCorrected,
}

#[derive(Debug, Clone)]
pub struct GlueOutput {
    pub presentation: StratumPresentation,
    pub families: Vec<(Family, Polynomial)>,
}

fn lift_with(graph: &MapGraph, y: &Polynomial, what: &str) -> Result<Polynomial, GlueError> {
    graph.lift(y)?.ok_or_else(|| GlueError::LiftingFailed(format!("{what} is not in the image: {y}")))
}

/// Presentation of the union of both sides. The output ideal is generated by
/// three families: `Z·q` for lifts `q` of the closed relations, `Z·v` for
/// the kernel of the free pullback, and `p + Z·g` for each open relation `p`
/// where `pullback(p) + c_top·g'` vanishes on the closed side and `g` lifts
/// `g'`. Lifts are the normal forms against the graph ideal, so the output
/// is deterministic.
pub fn glue(d: &GluingDatum) -> Result<GlueOutput, GlueError> {
    glue_with(d, LiftChoice::FreeFirst)
}

/// How the correction term of an open relation is lifted. Any two choices
/// differ by elements of the first two families, so the glued ideal does not
/// depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LiftChoice {
    /// Preimage under the free pullback, falling back to a preimage modulo
    /// the closed relations.
    #[default]
    FreeFirst,
    /// Always a preimage modulo the closed relations.
    ModuloRelations,
}

pub fn glue_with(d: &GluingDatum, choice: LiftChoice) -> Result<GlueOutput, GlueError> {
    let check = gluing_check(d)?;
    if !check.holds() {
        return Err(GlueError::GluingConditionFailed(format!(
            "{}: nonzerodivisor {}, surjective {}",
            d.closed.name, check.nonzerodivisor, check.surjective
        )));
    }
    let ring = d.glued_ring().clone();
    let z = d.class();
    let free = MapGraph::new(&d.pullback, None)?;
    let modj = MapGraph::new(&d.pullback, Some(&d.closed.relations))?;
    let mut families = Vec::new();

    for r in d.closed.relations.generators() {
        let q = lift_with(&free, r, "closed relation")?;
        families.push((Family::ClosedLift, &z * &q));
    }
    for v in free.kernel()?.generators() {
        families.push((Family::Kernel, &z * v));
    }
    for p in d.open.relations.generators() {
        let p = p.embed(&ring)?;
        let image = d.pullback.apply(&p)?;
        let g_prime = match divide_in_quotient(&image, &d.c_top, &d.closed.relations) {
            Ok(w) => -&w,
            Err(GroebnerError::NotDivisible(why)) => {
                return Err(GlueError::LiftingFailed(format!(
                    "open relation {p} does not restrict into the closed ideal plus the top class: {why}"
                )))
            }
            Err(e) => return Err(e.into()),
        };
        let g = match (choice, free.lift(&g_prime)?) {
            (LiftChoice::FreeFirst, Some(g)) => g,
            _ => lift_with(&modj, &g_prime, "correction term")?,
        };
        families.push((Family::OpenCorrected, &p + &(&z * &g)));
    }
    let relations = Ideal::new(&ring, families.iter().map(|(_, p)| p.clone()).collect())?;
    Ok(GlueOutput { presentation: StratumPresentation::new(d.closed.name.clone(), relations), families })
}

/// One stage of a stratification: a closed stratum glued onto whatever has
/// been built so far.
#[derive(Debug, Clone)]
pub struct Stage {
    pub name: String,
    pub closed: StratumPresentation,
    pub class_var: String,
    pub class_degree: u32,
    pub pullback: RingMap,
    pub c_top: Polynomial,
}

/// Per-stratum restriction data from the ambient ring.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub stratum: StratumPresentation,
    pub map: RingMap,
}

/// An open stratum followed by closed strata in gluing order, plus the
/// restriction of the ambient generators to every stratum. The restriction
/// list starts with the open stratum and follows the stage order.
#[derive(Debug, Clone)]
pub struct Stratification {
    pub base: StratumPresentation,
    pub stages: Vec<Stage>,
    pub restrictions: Vec<Restriction>,
}

/// Result of gluing every stage in turn.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub stages: Vec<(GluingCheck, GlueOutput)>,
}

impl PipelineOutput {
    pub fn final_presentation(&self) -> Option<&StratumPresentation> {
        self.stages.last().map(|(_, o)| &o.presentation)
    }
}

impl Stratification {
    /// Reads a stratification from a document, starting at the glue block
    /// `last` and following `open` references back to a plain stratum.
    /// Restrictions are taken from maps named `PREFIX<stratum>`.
    pub fn from_document(
        doc: &ChowDocument,
        last: &str,
        restriction_prefix: &str,
    ) -> Result<Stratification, GlueError> {
        let mut chain = Vec::new();
        let mut cur = last.to_string();
        while let Some(g) = doc.glues.get(&cur) {
            chain.push((cur.clone(), g.clone()));
            cur = g.open.clone();
        }
        chain.reverse();
        let base = stratum_from(doc, &cur)?;
        let mut stages = Vec::new();
        for (name, g) in chain {
            let pullback = doc
                .maps
                .get(&g.pullback)
                .ok_or_else(|| GlueError::InvalidDatum(format!("unknown map `{}`", g.pullback)))?
                .map
                .clone();
            stages.push(Stage {
                name,
                closed: stratum_from(doc, &g.closed)?,
                class_var: g.class_var,
                class_degree: g.class_degree,
                pullback,
                c_top: g.c_top,
            });
        }
        let mut restrictions = Vec::new();
        for s in std::iter::once(&base).chain(stages.iter().map(|s| &s.closed)) {
            let key = format!("{restriction_prefix}{}", s.name);
            let map = doc
                .maps
                .get(&key)
                .ok_or_else(|| GlueError::InvalidDatum(format!("no restriction map `{key}`")))?
                .map
                .clone();
            restrictions.push(Restriction { stratum: s.clone(), map });
        }
        Ok(Stratification { base, stages, restrictions })
    }

    pub fn ambient_ring(&self) -> &GradedRing {
        self.restrictions[0].map.source()
    }

    /// Glues every stage, each onto the output of the previous one.
    pub fn run(&self) -> Result<PipelineOutput, GlueError> {
        let mut open = self.base.clone();
        let mut out = Vec::new();
        for s in &self.stages {
            let d = GluingDatum::new(
                open.clone(),
                s.closed.clone(),
                &s.class_var,
                s.class_degree,
                s.pullback.clone(),
                s.c_top.clone(),
            )?;
            let check = gluing_check(&d)?;
            let glued = glue(&d)?;
            open = StratumPresentation::new(s.name.clone(), glued.presentation.relations.clone());
            out.push((check, glued));
        }
        Ok(PipelineOutput { stages: out })
    }

    /// Classes named `PREFIX/<stratum>` in a document, keyed by stratum.
    pub fn restriction_data(&self, doc: &ChowDocument, prefix: &str) -> BTreeMap<String, Polynomial> {
        self.restrictions
            .iter()
            .filter_map(|r| {
                doc.class(&format!("{prefix}/{}", r.stratum.name)).map(|p| (r.stratum.name.clone(), p.clone()))
            })
            .collect()
    }

    fn restriction(&self, stratum: &str) -> Option<&Restriction> {
        self.restrictions.iter().find(|r| r.stratum.name == stratum)
    }
}

fn stratum_from(doc: &ChowDocument, name: &str) -> Result<StratumPresentation, GlueError> {
    let s = doc.strata.get(name).ok_or_else(|| GlueError::UnknownStratum(name.to_string()))?;
    let ring = &doc.rings[&s.ring];
    let relations = match &s.ideal {
        Some(j) => doc.ideal(j).expect("resolved at load"),
        None => Ideal::zero(ring),
    };
    Ok(StratumPresentation::new(name, relations))
}

/// Builds a global class from its restrictions, outside in. Missing strata
/// count as zero restrictions. The result restricts to every given value
/// modulo the stratum relations.
pub fn reconstruct_class(
    strat: &Stratification,
    restrictions: &BTreeMap<String, Polynomial>,
) -> Result<Polynomial, GlueError> {
    for name in restrictions.keys() {
        if strat.restriction(name).is_none() {
            return Err(GlueError::UnknownStratum(name.clone()));
        }
    }
    let degrees: Vec<u32> = restrictions.values().filter(|p| !p.is_zero()).filter_map(|p| p.degree()).collect();
    if restrictions.values().any(|p| !p.is_zero() && !p.is_homogeneous()) {
        return Err(GlueError::DegreeMismatch("restrictions must be homogeneous".into()));
    }
    let ambient = strat.ambient_ring().clone();
    let Some(&degree) = degrees.first() else {
        return Ok(Polynomial::zero(&ambient));
    };
    if degrees.iter().any(|&d| d != degree) {
        return Err(GlueError::DegreeMismatch(format!("restrictions have degrees {degrees:?}")));
    }

    let value = |r: &Restriction| {
        restrictions.get(&r.stratum.name).cloned().unwrap_or_else(|| Polynomial::zero(r.stratum.ring()))
    };
    let open = &strat.restrictions[0];
    let graph = MapGraph::new(&open.map, Some(&open.stratum.relations))?;
    let mut x = lift_with(&graph, &value(open), "open restriction")?;

    for (stage, r) in strat.stages.iter().zip(&strat.restrictions[1..]) {
        let target = value(r);
        if !target.ring().same_as(r.stratum.ring()) {
            return Err(PolyError::RingMismatch.into());
        }
        let defect = &target - &r.map.apply(&x)?;
        let w = divide_in_quotient(&defect, &stage.c_top, &r.stratum.relations).map_err(|e| match e {
            GroebnerError::NotDivisible(detail) => GlueError::NotDivisible { stratum: r.stratum.name.clone(), detail },
            e => e.into(),
        })?;
        if w.is_zero() {
            continue;
        }
        let graph = MapGraph::new(&r.map, Some(&r.stratum.relations))?;
        let g = lift_with(&graph, &w, "quotient by the top Chern class")?;
        let z = ambient.var(&stage.class_var)?;
        x = &x + &(&z * &g);
    }
    Ok(x)
}

/// Membership of one restricted relation in one stratum ideal.
#[derive(Debug, Clone)]
pub struct StratumCheck {
    pub stratum: String,
    pub pass: bool,
    /// The normal form of the restriction; nonzero exactly on failure.
    pub normal_form: Polynomial,
}

/// Restricts `relation` to every stratum and tests membership there.
pub fn stratum_vanishing(relation: &Polynomial, strat: &Stratification) -> Result<Vec<StratumCheck>, GlueError> {
    let mut out = Vec::new();
    for r in &strat.restrictions {
        let image = r.map.apply(relation)?;
        let normal_form = match image.degree() {
            None => image,
            Some(d) => {
                let opts = GbOptions { truncate_at: Some(d), ..GbOptions::default() };
                groebner_basis_with(&r.stratum.relations, &opts)?.reduce(&image)?
            }
        };
        out.push(StratumCheck { stratum: r.stratum.name.clone(), pass: normal_form.is_zero(), normal_form });
    }
    Ok(out)
}

/// Whether `a − b` lies in `ideal`.
pub fn congruent(a: &Polynomial, b: &Polynomial, ideal: &Ideal) -> Result<bool, GlueError> {
    Ok(is_member(&(a - b), ideal)?.member_over_q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideal_equal;

    fn ring(vars: &[(&str, u32)]) -> GradedRing {
        GradedRing::new(vars.iter().copied()).unwrap()
    }

    #[test]
    fn weight_one_line() {
        let open_ring = ring(&[("T", 1)]);
        let open = StratumPresentation::new("U", Ideal::new(&open_ring, vec![open_ring.parse("T").unwrap()]).unwrap());
        let closed_ring = ring(&[("t", 1)]);
        let closed = StratumPresentation::free("Z", &closed_ring);
        let ext = open_ring.extend("Z", 1).unwrap();
        let pb = RingMap::from_texts(&ext, &closed_ring, &[("T", "t"), ("Z", "t")]).unwrap();
        let d = GluingDatum::new(open, closed, "Z", 1, pb, closed_ring.parse("t").unwrap()).unwrap();
        assert!(check_gluing_condition(&d));
        let out = glue(&d).unwrap();
        let expected = Ideal::new(&ext, vec![ext.parse("T - Z").unwrap()]).unwrap();
        assert!(ideal_equal(&out.presentation.relations, &expected).unwrap());
        assert!(out.families.iter().any(|(f, _)| *f == Family::Kernel));
    }

    #[test]
    fn free_sides_glue_to_zero() {
        let open_ring = ring(&[("x", 1)]);
        let closed_ring = ring(&[("y", 1), ("s", 1)]);
        let ext = open_ring.extend("Z", 1).unwrap();
        let pb = RingMap::from_texts(&ext, &closed_ring, &[("x", "y"), ("Z", "s")]).unwrap();
        let d = GluingDatum::new(
            StratumPresentation::free("U", &open_ring),
            StratumPresentation::free("Z", &closed_ring),
            "Z",
            1,
            pb,
            closed_ring.parse("s").unwrap(),
        )
        .unwrap();
        assert!(glue(&d).unwrap().presentation.relations.is_zero());
    }

    #[test]
    fn point_without_weights_fails() {
        // A point on a line: the normal class is zero in degree one.
        let open_ring = ring(&[("x", 1)]);
        let closed_ring = ring(&[("y", 1)]);
        let closed =
            StratumPresentation::new("pt", Ideal::new(&closed_ring, vec![closed_ring.parse("y").unwrap()]).unwrap());
        let ext = open_ring.extend("Z", 1).unwrap();
        let pb = RingMap::from_texts(&ext, &closed_ring, &[("x", "0"), ("Z", "0")]).unwrap();
        let d = GluingDatum::new(
            StratumPresentation::free("U", &open_ring),
            closed,
            "Z",
            1,
            pb,
            Polynomial::zero(&closed_ring),
        )
        .unwrap();
        assert!(!check_gluing_condition(&d));
        assert!(matches!(glue(&d), Err(GlueError::GluingConditionFailed(_))));
    }

    #[test]
    fn pullback_must_send_class_to_ctop() {
        let open_ring = ring(&[("x", 1)]);
        let closed_ring = ring(&[("y", 1)]);
        let ext = open_ring.extend("Z", 1).unwrap();
        let pb = RingMap::from_texts(&ext, &closed_ring, &[("x", "y"), ("Z", "2*y")]).unwrap();
        let err = GluingDatum::new(
            StratumPresentation::free("U", &open_ring),
            StratumPresentation::free("Z", &closed_ring),
            "Z",
            1,
            pb,
            closed_ring.parse("y").unwrap(),
        )
        .unwrap_err();
        assert!(matches!(err, GlueError::InvalidDatum(_)));
    }
}

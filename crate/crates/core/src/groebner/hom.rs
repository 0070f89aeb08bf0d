use std::collections::HashMap;

use super::ideal::Ideal;
use crate::error::{AlgebraError, Result};
use crate::symcore::{check_same, Ctx, Polynomial, VariableContext};

/// `ℚ[context] / relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    ctx: Ctx,
    relations: Ideal,
}

impl RingPresentation {
    pub fn new(ctx: &Ctx, relations: Vec<Polynomial>) -> Result<Self> {
        Ok(RingPresentation {
            ctx: ctx.clone(),
            relations: Ideal::new(ctx, relations)?,
        })
    }

    pub fn free(ctx: &Ctx) -> Self {
        RingPresentation {
            ctx: ctx.clone(),
            relations: Ideal::zero(ctx),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    /// Whether `p` is zero in the quotient ring.
    pub fn is_zero(&self, p: &Polynomial) -> Result<bool> {
        self.relations.contains(p)
    }

    pub fn equal(&self, p: &Polynomial, q: &Polynomial) -> Result<bool> {
        self.is_zero(&p.checked_sub(q)?)
    }
}

/// A homomorphism `source -> target` given by the images of the source
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom {
    source: RingPresentation,
    target: RingPresentation,
    images: Vec<Polynomial>,
}

impl RingHom {
    /// `images[i]` is the image of source variable `i`.
    pub fn new(source: RingPresentation, target: RingPresentation, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.ctx().len() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} images for {} source variables",
                images.len(),
                source.ctx().len()
            )));
        }
        for img in &images {
            check_same(img.ctx(), target.ctx())?;
        }
        Ok(RingHom {
            source,
            target,
            images,
        })
    }

    /// Images keyed by source variable name; every source variable needs one.
    pub fn from_map(
        source: RingPresentation,
        target: RingPresentation,
        map: &HashMap<String, Polynomial>,
    ) -> Result<Self> {
        let images = source
            .ctx()
            .names()
            .iter()
            .map(|n| {
                map.get(n)
                    .cloned()
                    .ok_or_else(|| AlgebraError::UnmappedVariable(n.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &RingPresentation {
        &self.source
    }

    pub fn target(&self) -> &RingPresentation {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        check_same(p.ctx(), self.source.ctx())?;
        p.compose(&self.images, self.target.ctx())
    }

    /// Every source relation maps into the target relation ideal.
    pub fn check_well_defined(&self) -> Result<bool> {
        let gb = self.target.relations().grevlex_basis();
        for r in self.source.relations().generators() {
            if !gb.contains(&self.apply(r)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Kernel as an ideal of the source polynomial ring (it contains the
    /// source relations). Computed from the graph ideal
    /// `(x - h(x)) + target relations` by eliminating the target variables.
    pub fn kernel(&self) -> Result<Ideal> {
        if !self.check_well_defined()? {
            return Err(AlgebraError::IllDefinedHom(
                "a source relation does not map into the target relations".into(),
            ));
        }
        let sctx = self.source.ctx();
        let tctx = self.target.ctx();
        // source names, renamed if they clash with target names
        let mut src_names = Vec::with_capacity(sctx.len());
        for n in sctx.names() {
            let mut cand = n.clone();
            while tctx.index_of(&cand).is_some() || src_names.contains(&cand) {
                cand = format!("src_{cand}");
            }
            src_names.push(cand);
        }
        let big = VariableContext::new(tctx.names().iter().cloned().chain(src_names.iter().cloned()))?;
        let offset = tctx.len();
        let mut gens = Vec::new();
        for (i, img) in self.images.iter().enumerate() {
            gens.push(Polynomial::var_index(&big, offset + i) - img.embed(&big)?);
        }
        for r in self.target.relations().generators() {
            gens.push(r.embed(&big)?);
        }
        let keep: Vec<&str> = src_names.iter().map(String::as_str).collect();
        let eliminated = Ideal::new(&big, gens)?.eliminate_to(&keep)?;
        // back to the source context, variable by variable
        let back: Vec<Polynomial> = (0..sctx.len())
            .map(|i| Polynomial::var_index(sctx, i))
            .collect();
        let gens = eliminated
            .generators()
            .iter()
            .map(|g| g.compose(&back, sctx))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(sctx, gens)
    }
}

/// Kernel of a ring homomorphism.
pub fn kernel_of_hom(h: &RingHom) -> Result<Ideal> {
    h.kernel()
}

/// Well-definedness of a ring homomorphism.
pub fn check_well_defined(h: &RingHom) -> Result<bool> {
    h.check_well_defined()
}

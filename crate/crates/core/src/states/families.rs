//! Named state families behind a common trait, selected at runtime.

use super::{
    make_ppt_form, make_zce, random_local_unitaries, random_rank_two, random_separable,
    DensityMatrix, RankTwoState,
};
use crate::error::{Error, Result};
use crate::matops::{herm_eig, partial_transpose_a};
use crate::registry::Registry;
use crate::rng;
use crate::tol;

/// Inputs shared by all families; each family reads the fields it needs.
#[derive(Clone, Debug)]
pub struct FamilyParams {
    pub seed: u64,
    pub terms: usize,
    pub n_b: usize,
    pub q1: Option<f64>,
    pub phi: f64,
    /// Apply seeded random local unitaries to the generated state.
    pub rotate: bool,
    pub tilde: Option<DensityMatrix>,
}

impl Default for FamilyParams {
    fn default() -> Self {
        Self {
            seed: 0xC0FFEE,
            terms: 2,
            n_b: 4,
            q1: None,
            phi: 0.0,
            rotate: false,
            tilde: None,
        }
    }
}

/// A generated state, with its rank-2 structure when the family knows it.
#[derive(Clone, Debug)]
pub struct Generated {
    pub density: DensityMatrix,
    pub rank_two: Option<RankTwoState>,
}

impl Generated {
    fn from_rank_two(s: RankTwoState) -> Self {
        Self {
            density: s.density(),
            rank_two: Some(s),
        }
    }
}

pub trait StateFamily: Send + Sync {
    fn description(&self) -> &'static str;
    fn generate(&self, params: &FamilyParams) -> Result<Generated>;
}

struct Separable;
struct Zce;
struct PptForm;
struct RandomRankTwo;

impl StateFamily for Separable {
    fn description(&self) -> &'static str {
        "mixture of random pure product states"
    }

    fn generate(&self, p: &FamilyParams) -> Result<Generated> {
        let (density, _) = random_separable(&mut rng::seeded(p.seed), p.terms, p.n_b)?;
        Ok(Generated {
            density,
            rank_two: None,
        })
    }
}

impl StateFamily for Zce {
    fn description(&self) -> &'static str {
        "entangled rank-2 state with vanishing concurrences"
    }

    fn generate(&self, p: &FamilyParams) -> Result<Generated> {
        let q1 = p
            .q1
            .ok_or_else(|| Error::InvalidInput("zce requires q1".into()))?;
        let mut s = make_zce(q1, p.phi)?;
        if p.rotate {
            let (x1, x2) = random_local_unitaries(&mut rng::seeded(p.seed));
            s = s.local_transform(&x1, &x2)?;
        }
        Ok(Generated::from_rank_two(s))
    }
}

impl StateFamily for PptForm {
    fn description(&self) -> &'static str {
        "two-qubit state embedded in the 2x4 block pattern"
    }

    fn generate(&self, p: &FamilyParams) -> Result<Generated> {
        let tilde = p
            .tilde
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("pptform requires a two-qubit input state".into()))?;
        if (tilde.n_a(), tilde.n_b()) != (2, 2) {
            return Err(Error::InvalidInput("pptform input must be 2x2".into()));
        }
        let min = herm_eig(&partial_transpose_a(tilde.matrix(), 2, 2)?)?.min();
        if min < -tol::PSD {
            return Err(Error::InvalidInput(format!(
                "input state is not PPT (min eigenvalue {min:e}), so the embedding would be entangled"
            )));
        }
        Ok(Generated {
            density: make_ppt_form(tilde)?,
            rank_two: None,
        })
    }
}

impl StateFamily for RandomRankTwo {
    fn description(&self) -> &'static str {
        "generic rank-2 state from complex Gaussian vectors"
    }

    fn generate(&self, p: &FamilyParams) -> Result<Generated> {
        Ok(Generated::from_rank_two(random_rank_two(&mut rng::seeded(p.seed))))
    }
}

pub fn family_registry() -> Registry<dyn StateFamily> {
    Registry::<dyn StateFamily>::new("state family")
        .with("separable", Box::new(Separable))
        .with("zce", Box::new(Zce))
        .with("pptform", Box::new(PptForm))
        .with("random", Box::new(RandomRankTwo))
}

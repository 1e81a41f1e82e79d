use super::{DensityMatrix, PptBlockForm};
use crate::error::{Error, Result};
use crate::matops::{kron, CMatrix, CVector};

const WEIGHT_TOL: f64 = 1e-10;
const RECONSTRUCT_TOL: f64 = 1e-9;

/// Pure-state ensemble `rho = sum_j mu_j |psi_j><psi_j|`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub weights: Vec<f64>,
    pub vectors: Vec<CVector>,
}

impl Decomposition {
    pub fn new(weights: Vec<f64>, vectors: Vec<CVector>) -> Result<Self> {
        check_weights(&weights)?;
        if weights.len() != vectors.len() {
            return Err(Error::dims(format!("{} vectors", weights.len()), vectors.len()));
        }
        for v in &vectors {
            if (v.norm() - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidInput("ensemble vectors must be unit".into()));
            }
        }
        Ok(Self { weights, vectors })
    }

    pub fn reconstruct(&self) -> CMatrix {
        let n = self.vectors[0].len();
        self.weights
            .iter()
            .zip(&self.vectors)
            .fold(CMatrix::zeros(n, n), |acc, (&w, v)| {
                &acc + &CMatrix::outer(v).scale_real(w)
            })
    }
}

/// One term `mu (rho_a (x) rho_b)` of a separable decomposition.
#[derive(Clone, Debug)]
pub struct ProductTerm {
    pub weight: f64,
    pub factor_a: CMatrix,
    pub factor_b: CMatrix,
}

impl ProductTerm {
    /// Term built from pure local states.
    pub fn pure(weight: f64, a: &CVector, b: &CVector) -> Self {
        Self {
            weight,
            factor_a: CMatrix::outer(a),
            factor_b: CMatrix::outer(b),
        }
    }
}

/// `rho = sum_j mu_j rho_a_j (x) rho_b_j`, a certificate of separability.
#[derive(Clone, Debug)]
pub struct ProductDecomposition {
    pub terms: Vec<ProductTerm>,
}

impl ProductDecomposition {
    pub fn new(terms: Vec<ProductTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::WeightError("decomposition has no terms".into()));
        }
        check_weights(&terms.iter().map(|t| t.weight).collect::<Vec<_>>())?;
        let shape_a = terms[0].factor_a.shape();
        let shape_b = terms[0].factor_b.shape();
        for t in &terms {
            if t.factor_a.shape() != shape_a || t.factor_b.shape() != shape_b {
                return Err(Error::dims(
                    format!("factors of shape {shape_a:?} and {shape_b:?}"),
                    format!("{:?} and {:?}", t.factor_a.shape(), t.factor_b.shape()),
                ));
            }
            for f in [&t.factor_a, &t.factor_b] {
                DensityMatrix::new(1, f.rows(), f.clone())?;
            }
        }
        Ok(Self { terms })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.terms[0].factor_a.rows(), self.terms[0].factor_b.rows())
    }

    pub fn reconstruct(&self) -> CMatrix {
        let (n_a, n_b) = self.dims();
        let n = n_a * n_b;
        self.terms.iter().fold(CMatrix::zeros(n, n), |acc, t| {
            &acc + &kron(&t.factor_a, &t.factor_b).scale_real(t.weight)
        })
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        let (n_a, n_b) = self.dims();
        DensityMatrix::new(n_a, n_b, self.reconstruct())
    }
}

fn check_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::WeightError("no weights".into()));
    }
    if let Some(w) = weights.iter().find(|&&w| !w.is_finite() || w <= 0.0) {
        return Err(Error::WeightError(format!("weight {w} is not positive")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::WeightError(format!("weights sum to {total}, expected 1")));
    }
    Ok(())
}

/// Turns a two-qubit separable decomposition of `rho-tilde` into one of the
/// embedded 2x4 state: each term `mu rho1 (x) rho2` becomes
/// `mu rho1 (x) (diag(1, 0) (x) rho2)`.
pub fn lift_separable_decomposition(
    blocks: &PptBlockForm,
    tilde: &ProductDecomposition,
) -> Result<ProductDecomposition> {
    if tilde.dims() != (2, 2) {
        return Err(Error::UnsupportedShape {
            n_a: tilde.dims().0,
            n_b: tilde.dims().1,
        });
    }
    let target = blocks.tilde();
    let residual = tilde.reconstruct().max_abs_diff(&target);
    if residual > RECONSTRUCT_TOL {
        return Err(Error::DecompositionMismatch { residual });
    }
    let upper = CMatrix::from_real_diagonal(&[1.0, 0.0]);
    let terms = tilde
        .terms
        .iter()
        .map(|t| ProductTerm {
            weight: t.weight,
            factor_a: t.factor_a.clone(),
            factor_b: kron(&upper, &t.factor_b),
        })
        .collect();
    Ok(ProductDecomposition { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matops::basis;
    use crate::states::make_ppt_form;

    fn computational_decomposition() -> ProductDecomposition {
        let terms = (0..4)
            .map(|k| ProductTerm::pure(0.25, &basis(2, k / 2), &basis(2, k % 2)))
            .collect();
        ProductDecomposition::new(terms).unwrap()
    }

    #[test]
    fn lift_of_maximally_mixed() {
        let tilde = computational_decomposition().density().unwrap();
        let rho = make_ppt_form(&tilde).unwrap();
        let blocks = PptBlockForm::from_tilde(&tilde).unwrap();
        let lifted = lift_separable_decomposition(&blocks, &computational_decomposition()).unwrap();
        assert_eq!(lifted.terms.len(), 4);
        assert!(lifted.reconstruct().approx_eq(rho.matrix(), 1e-12));
        for t in &lifted.terms {
            assert!(DensityMatrix::new(1, 4, t.factor_b.clone()).is_ok());
        }
    }

    #[test]
    fn lift_of_single_product() {
        let a = CVector::from_column_slice(&[crate::matops::C64::new(0.6, 0.0), crate::matops::C64::new(0.0, 0.8)]);
        let term = ProductTerm::pure(1.0, &a, &basis(2, 1));
        let dec = ProductDecomposition::new(vec![term]).unwrap();
        let tilde = dec.density().unwrap();
        let blocks = PptBlockForm::from_tilde(&tilde).unwrap();
        let lifted = lift_separable_decomposition(&blocks, &dec).unwrap();
        assert_eq!(lifted.terms.len(), 1);
        assert!(lifted
            .reconstruct()
            .approx_eq(make_ppt_form(&tilde).unwrap().matrix(), 1e-12));
    }

    #[test]
    fn lift_rejects_mismatch() {
        let dec = computational_decomposition();
        let other = ProductDecomposition::new(vec![ProductTerm::pure(1.0, &basis(2, 0), &basis(2, 0))])
            .unwrap()
            .density()
            .unwrap();
        let blocks = PptBlockForm::from_tilde(&other).unwrap();
        assert!(matches!(
            lift_separable_decomposition(&blocks, &dec),
            Err(Error::DecompositionMismatch { .. })
        ));
    }

    #[test]
    fn weight_errors() {
        let t = |w| ProductTerm::pure(w, &basis(2, 0), &basis(2, 0));
        assert!(matches!(ProductDecomposition::new(vec![t(0.5)]), Err(Error::WeightError(_))));
        assert!(matches!(
            ProductDecomposition::new(vec![t(1.5), t(-0.5)]),
            Err(Error::WeightError(_))
        ));
        assert!(Decomposition::new(vec![1.0], vec![basis(4, 0)]).is_ok());
    }
}

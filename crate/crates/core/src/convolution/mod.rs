//! Exact convolution algebras of finite groupoids and the tight
//! representation check.

mod tight;

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use thiserror::Error;

pub use tight::{
    check_tight_representation, unit_cover, CoverMode, TightRepresentationReport, TightnessWitness,
    AUDIT_COVER_SIZE,
};

use crate::action::GermGroupoid;
use crate::bits::BitSet;
use crate::groupoid::{Bisection, FiniteGroupoid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvolutionError {
    #[error("elements belong to different groupoid algebras")]
    GroupoidMismatch,
    #[error("matrices of sizes {left} and {right} cannot be combined")]
    DimensionMismatch { left: usize, right: usize },
    #[error("tight spectrum is empty")]
    EmptySpectrum,
    #[error("check failed: {0}")]
    CheckFailed(String),
}

/// A unital algebra with involution, as needed by the tightness check.
pub trait StarAlgebra {
    type Element: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Element;
    fn one(&self) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, ConvolutionError>;
    fn add(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, ConvolutionError>;
    fn sub(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, ConvolutionError>;
    fn star(&self, a: &Self::Element) -> Result<Self::Element, ConvolutionError>;

    /// `p ∨ q = p + q − pq`.
    fn join(&self, p: &Self::Element, q: &Self::Element) -> Result<Self::Element, ConvolutionError> {
        self.sub(&self.add(p, q)?, &self.mul(p, q)?)
    }
}

/// A finitely supported function on the arrows of a groupoid.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    fingerprint: u64,
    coefficients: Vec<Rational64>,
}

impl AlgebraElement {
    pub fn coefficient(&self, arrow: usize) -> Rational64 {
        self.coefficients[arrow]
    }

    pub fn coefficients(&self) -> &[Rational64] {
        &self.coefficients
    }

    pub fn support(&self) -> BitSet {
        BitSet::from_indices(
            self.coefficients.len(),
            (0..self.coefficients.len()).filter(|&a| !self.coefficients[a].is_zero()),
        )
    }

    /// Whether every coefficient is 0 or 1.
    pub fn is_indicator(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero() || c.is_one())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.coefficients.iter().enumerate().filter(|(_, c)| !c.is_zero()))
            .finish()
    }
}

/// `C(G)` with convolution `(f·g)(γ) = Σ_{αβ=γ} f(α)g(β)` and
/// `f*(γ) = f(γ⁻¹)`.
#[derive(Debug, Clone)]
pub struct ConvolutionAlgebra {
    groupoid: FiniteGroupoid,
    fingerprint: u64,
    triples: Vec<(usize, usize, usize)>,
}

impl ConvolutionAlgebra {
    pub fn new(groupoid: &FiniteGroupoid) -> Self {
        let triples = groupoid
            .composable_pairs()
            .map(|(a, b)| (a, b, groupoid.compose(a, b).expect("composable")))
            .collect();
        ConvolutionAlgebra { groupoid: groupoid.clone(), fingerprint: groupoid.fingerprint(), triples }
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn indicator(&self, arrows: &BitSet) -> AlgebraElement {
        assert_eq!(arrows.capacity(), self.groupoid.len());
        let mut coefficients = vec![Rational64::zero(); self.groupoid.len()];
        for a in arrows.iter() {
            coefficients[a] = Rational64::one();
        }
        AlgebraElement { fingerprint: self.fingerprint, coefficients }
    }

    pub fn from_coefficients(&self, coefficients: Vec<Rational64>) -> AlgebraElement {
        assert_eq!(coefficients.len(), self.groupoid.len());
        AlgebraElement { fingerprint: self.fingerprint, coefficients }
    }

    pub fn convolve(&self, f: &AlgebraElement, g: &AlgebraElement) -> Result<AlgebraElement, ConvolutionError> {
        self.check(f)?;
        self.check(g)?;
        let mut out = vec![Rational64::zero(); self.groupoid.len()];
        for &(a, b, c) in &self.triples {
            let (x, y) = (f.coefficients[a], g.coefficients[b]);
            if !x.is_zero() && !y.is_zero() {
                out[c] += x * y;
            }
        }
        Ok(self.from_coefficients(out))
    }

    /// Matrix of left convolution by `f` on the arrow basis.
    pub fn left_regular(&self, matrices: &MatrixAlgebra, f: &AlgebraElement) -> Result<Matrix, ConvolutionError> {
        self.check(f)?;
        let n = self.groupoid.len();
        if matrices.dim != n {
            return Err(ConvolutionError::DimensionMismatch { left: matrices.dim, right: n });
        }
        let mut entries = vec![Rational64::zero(); n * n];
        for &(a, b, c) in &self.triples {
            entries[c * n + b] += f.coefficients[a];
        }
        Ok(Matrix { dim: n, entries })
    }

    fn check(&self, f: &AlgebraElement) -> Result<(), ConvolutionError> {
        if f.fingerprint != self.fingerprint || f.coefficients.len() != self.groupoid.len() {
            return Err(ConvolutionError::GroupoidMismatch);
        }
        Ok(())
    }

    fn pointwise(
        &self,
        f: &AlgebraElement,
        g: &AlgebraElement,
        op: impl Fn(Rational64, Rational64) -> Rational64,
    ) -> Result<AlgebraElement, ConvolutionError> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.from_coefficients(f.coefficients.iter().zip(&g.coefficients).map(|(&x, &y)| op(x, y)).collect()))
    }
}

impl StarAlgebra for ConvolutionAlgebra {
    type Element = AlgebraElement;

    fn zero(&self) -> AlgebraElement {
        self.indicator(&BitSet::new(self.groupoid.len()))
    }

    /// The indicator of the unit space.
    fn one(&self) -> AlgebraElement {
        self.indicator(&BitSet::from_indices(self.groupoid.len(), self.groupoid.units()))
    }

    fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, ConvolutionError> {
        self.convolve(a, b)
    }

    fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, ConvolutionError> {
        self.pointwise(a, b, |x, y| x + y)
    }

    fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, ConvolutionError> {
        self.pointwise(a, b, |x, y| x - y)
    }

    fn star(&self, a: &AlgebraElement) -> Result<AlgebraElement, ConvolutionError> {
        self.check(a)?;
        Ok(self.from_coefficients((0..self.groupoid.len()).map(|g| a.coefficients[self.groupoid.inverse(g)]).collect()))
    }
}

/// `ρ(S) = 1_S`.
pub fn rho(algebra: &ConvolutionAlgebra, slice: &Bisection) -> AlgebraElement {
    algebra.indicator(slice.arrows())
}

/// `ρ'(s) = 1_{X_s}` in the algebra of the germ groupoid.
pub fn rho_prime(algebra: &ConvolutionAlgebra, germs: &GermGroupoid, element: usize) -> AlgebraElement {
    algebra.indicator(germs.slice_of(element).arrows())
}

/// Square rational matrices of a fixed size with transpose as involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixAlgebra {
    dim: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Rational64>,
}

impl Matrix {
    pub fn entry(&self, row: usize, col: usize) -> Rational64 {
        self.entries[row * self.dim + col]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.dim.max(1))).finish()
    }
}

impl MatrixAlgebra {
    pub fn new(dim: usize) -> Self {
        MatrixAlgebra { dim }
    }

    fn check(&self, m: &Matrix) -> Result<(), ConvolutionError> {
        if m.dim != self.dim {
            return Err(ConvolutionError::DimensionMismatch { left: self.dim, right: m.dim });
        }
        Ok(())
    }

    fn zip(&self, a: &Matrix, b: &Matrix, op: impl Fn(Rational64, Rational64) -> Rational64) -> Result<Matrix, ConvolutionError> {
        self.check(a)?;
        self.check(b)?;
        Ok(Matrix { dim: self.dim, entries: a.entries.iter().zip(&b.entries).map(|(&x, &y)| op(x, y)).collect() })
    }
}

impl StarAlgebra for MatrixAlgebra {
    type Element = Matrix;

    fn zero(&self) -> Matrix {
        Matrix { dim: self.dim, entries: vec![Rational64::zero(); self.dim * self.dim] }
    }

    fn one(&self) -> Matrix {
        let mut m = self.zero();
        for i in 0..self.dim {
            m.entries[i * self.dim + i] = Rational64::one();
        }
        m
    }

    fn mul(&self, a: &Matrix, b: &Matrix) -> Result<Matrix, ConvolutionError> {
        self.check(a)?;
        self.check(b)?;
        let n = self.dim;
        let mut out = self.zero();
        for i in 0..n {
            for k in 0..n {
                let x = a.entries[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += x * b.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }

    fn add(&self, a: &Matrix, b: &Matrix) -> Result<Matrix, ConvolutionError> {
        self.zip(a, b, |x, y| x + y)
    }

    fn sub(&self, a: &Matrix, b: &Matrix) -> Result<Matrix, ConvolutionError> {
        self.zip(a, b, |x, y| x - y)
    }

    fn star(&self, a: &Matrix) -> Result<Matrix, ConvolutionError> {
        self.check(a)?;
        let n = self.dim;
        Ok(Matrix { dim: n, entries: (0..n * n).map(|k| a.entries[(k % n) * n + k / n]).collect() })
    }
}

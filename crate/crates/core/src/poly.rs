//! Polynomials over `Z_p`: Horner evaluation and full-coefficient Lagrange
//! interpolation.
//!
//! Interpolation returns every coefficient, not only the value at zero,
//! because recursive reconstruction feeds the higher coefficients of one
//! level back in as the share values of the level below.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::field::{FieldElement, FieldError, PrimeModulus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial needs at least one coefficient")]
    Empty,
    #[error("no points to interpolate")]
    NoPoints,
    #[error("expected {expected} points, got {got}")]
    WrongPointCount { expected: usize, got: usize },
    #[error("duplicate evaluation point x = {0} (mod p)")]
    DuplicateX(u64),
    #[error("evaluation point x = {0} is zero modulo p")]
    ZeroX(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coefficients `c_0..c_d` over `Z_p`; `c_0` is the free term.
///
/// The length is significant: trailing zero coefficients are kept, so a
/// degree-`d` container whose leading coefficient happens to be zero still
/// has `d + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coefficients: Vec<FieldElement>,
    modulus: PrimeModulus,
}

impl Polynomial {
    pub fn new(coefficients: Vec<FieldElement>) -> Result<Self, PolyError> {
        let modulus = coefficients.first().ok_or(PolyError::Empty)?.modulus();
        if let Some(bad) = coefficients.iter().find(|c| c.modulus() != modulus) {
            return Err(FieldError::ModulusMismatch(modulus.get(), bad.modulus().get()).into());
        }
        Ok(Polynomial {
            coefficients,
            modulus,
        })
    }

    /// Builds a polynomial from raw integers, each of which must be `< p`.
    pub fn from_values(modulus: PrimeModulus, values: &[u64]) -> Result<Self, PolyError> {
        let coefficients = values
            .iter()
            .map(|&v| modulus.element(v))
            .collect::<Result<Vec<_>, _>>()?;
        if coefficients.is_empty() {
            return Err(PolyError::Empty);
        }
        Ok(Polynomial {
            coefficients,
            modulus,
        })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coefficients
    }

    pub fn coefficient_values(&self) -> Vec<u64> {
        self.coefficients.iter().map(|c| c.value()).collect()
    }

    /// Number of coefficients (degree bound plus one).
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn free_term(&self) -> FieldElement {
        self.coefficients[0]
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: u64) -> FieldElement {
        self.eval_at(self.modulus.reduce(x))
    }

    pub fn eval_at(&self, x: FieldElement) -> FieldElement {
        self.coefficients
            .iter()
            .rev()
            .fold(self.modulus.zero(), |acc, &c| acc * x + c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (j, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() && !(j == 0 && !wrote) {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{j}")?,
            }
            wrote = true;
        }
        write!(f, " (mod {})", self.modulus)
    }
}

/// An evaluation point `(x, y)` with `x` nonzero modulo `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SharePoint {
    pub x: u64,
    pub y: FieldElement,
}

impl SharePoint {
    pub fn new(x: u64, y: FieldElement) -> Result<Self, PolyError> {
        if x.is_multiple_of(y.modulus().get()) {
            return Err(PolyError::ZeroX(x));
        }
        Ok(SharePoint { x, y })
    }
}

/// Precomputed Lagrange basis for a fixed set of abscissae.
///
/// Row `i` of the basis holds the coefficients of the polynomial `L_i` with
/// `L_i(x_i) = 1` and `L_i(x_j) = 0` for `j != i`. Interpolating a vector of
/// ordinates is then a single matrix-vector product, which is what the codec
/// needs when it reconstructs many blocks from the same set of shares.
#[derive(Debug, Clone)]
pub struct Interpolator {
    modulus: PrimeModulus,
    xs: Vec<u64>,
    basis: Vec<Vec<FieldElement>>,
}

impl Interpolator {
    pub fn new(modulus: PrimeModulus, xs: &[u64]) -> Result<Self, PolyError> {
        if xs.is_empty() {
            return Err(PolyError::NoPoints);
        }
        let mut seen = HashSet::with_capacity(xs.len());
        let nodes: Vec<FieldElement> = xs.iter().map(|&x| modulus.reduce(x)).collect();
        for (&x, node) in xs.iter().zip(&nodes) {
            if node.is_zero() {
                return Err(PolyError::ZeroX(x));
            }
            if !seen.insert(node.value()) {
                return Err(PolyError::DuplicateX(x));
            }
        }

        // master(x) = prod_j (x - x_j), coefficients low to high
        let len = nodes.len();
        let mut master = vec![modulus.zero(); len + 1];
        master[0] = modulus.one();
        for (deg, &node) in nodes.iter().enumerate() {
            for j in (0..=deg + 1).rev() {
                let shifted = if j > 0 { master[j - 1] } else { modulus.zero() };
                master[j] = shifted - node * master[j];
            }
        }

        let mut basis = Vec::with_capacity(len);
        for &node in &nodes {
            // synthetic division of master by (x - node)
            let mut quotient = vec![modulus.zero(); len];
            let mut carry = modulus.zero();
            for j in (0..len).rev() {
                carry = master[j + 1] + carry * node;
                quotient[j] = carry;
            }
            let denom = quotient
                .iter()
                .rev()
                .fold(modulus.zero(), |acc, &c| acc * node + c);
            let scale = denom.inv()?;
            basis.push(quotient.into_iter().map(|c| c * scale).collect());
        }

        Ok(Interpolator {
            modulus,
            xs: xs.to_vec(),
            basis,
        })
    }

    pub fn xs(&self) -> &[u64] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// The unique polynomial with `len()` coefficients through `(x_i, ys[i])`.
    pub fn interpolate(&self, ys: &[FieldElement]) -> Result<Polynomial, PolyError> {
        if ys.len() != self.xs.len() {
            return Err(PolyError::WrongPointCount {
                expected: self.xs.len(),
                got: ys.len(),
            });
        }
        if let Some(bad) = ys.iter().find(|y| y.modulus() != self.modulus) {
            return Err(
                FieldError::ModulusMismatch(self.modulus.get(), bad.modulus().get()).into(),
            );
        }
        let mut coefficients = vec![self.modulus.zero(); self.xs.len()];
        for (row, &y) in self.basis.iter().zip(ys) {
            if y.is_zero() {
                continue;
            }
            for (acc, &b) in coefficients.iter_mut().zip(row) {
                *acc = *acc + b * y;
            }
        }
        Ok(Polynomial {
            coefficients,
            modulus: self.modulus,
        })
    }
}

/// Interpolates exactly `length` points into a `length`-coefficient polynomial.
pub fn interpolate(points: &[SharePoint], length: usize) -> Result<Polynomial, PolyError> {
    let first = points.first().ok_or(PolyError::NoPoints)?;
    if points.len() != length {
        return Err(PolyError::WrongPointCount {
            expected: length,
            got: points.len(),
        });
    }
    let xs: Vec<u64> = points.iter().map(|pt| pt.x).collect();
    let ys: Vec<FieldElement> = points.iter().map(|pt| pt.y).collect();
    Interpolator::new(first.y.modulus(), &xs)?.interpolate(&ys)
}

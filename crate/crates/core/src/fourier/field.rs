use num_complex::Complex64;

/// Spectral coefficients of a real scalar field.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    pub coeffs: Vec<Complex64>,
}

impl ScalarField {
    pub fn zeros(len: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_assign(&mut self, other: &ScalarField) {
        self.axpy(1.0, other);
    }

    pub fn sub_assign(&mut self, other: &ScalarField) {
        self.axpy(-1.0, other);
    }

    /// `self += a · other`
    pub fn axpy(&mut self, a: f64, other: &ScalarField) {
        debug_assert_eq!(self.len(), other.len());
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += y * a;
        }
    }

    pub fn scaled(&self, a: f64) -> ScalarField {
        ScalarField {
            coeffs: self.coeffs.iter().map(|c| c * a).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn max_abs_diff(&self, other: &ScalarField) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}

/// Spectral coefficients of a real 3-vector field.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField(pub [ScalarField; 3]);

impl VectorField {
    pub fn zeros(len: usize) -> Self {
        VectorField([
            ScalarField::zeros(len),
            ScalarField::zeros(len),
            ScalarField::zeros(len),
        ])
    }

    pub fn axpy(&mut self, a: f64, other: &VectorField) {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            x.axpy(a, y);
        }
    }

    pub fn add_assign(&mut self, other: &VectorField) {
        self.axpy(1.0, other);
    }

    pub fn scaled(&self, a: f64) -> VectorField {
        VectorField(self.0.clone().map(|c| c.scaled(a)))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(ScalarField::max_abs).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &VectorField) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

use serde::Serialize;

/// Element `a + b u` of the plane algebra with `u^2 = alpha + beta u`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeneralizedComplex {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl GeneralizedComplex {
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64) -> Self {
        GeneralizedComplex { a, b, alpha, beta }
    }

    fn with(self, a: f64, b: f64) -> Self {
        GeneralizedComplex { a, b, ..self }
    }

    /// Product in the same algebra; the structure constants of `self` are used.
    pub fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.a, self.b, o.a, o.b);
        self.with(a * c + self.alpha * b * d, a * d + b * c + self.beta * b * d)
    }

    pub fn add(self, o: Self) -> Self {
        self.with(self.a + o.a, self.b + o.b)
    }

    /// `a + beta b - b u`, so that `z conj(z) = D`.
    pub fn conj(self) -> Self {
        self.with(self.a + self.beta * self.b, -self.b)
    }

    /// `D = a^2 + beta a b - alpha b^2`
    pub fn norm_form(self) -> f64 {
        self.a * self.a + self.beta * self.a * self.b - self.alpha * self.b * self.b
    }

    /// `beta^2 + 4 alpha`
    pub fn discriminant(self) -> f64 {
        self.beta * self.beta + 4.0 * self.alpha
    }

    pub fn system_class(self) -> SystemClass {
        let d = self.discriminant();
        if d < 0.0 {
            SystemClass::Elliptic
        } else if d == 0.0 {
            SystemClass::Parabolic
        } else {
            SystemClass::Hyperbolic
        }
    }

    pub fn is_invertible(self, tol: f64) -> bool {
        self.norm_form().abs() > tol * (self.a * self.a + self.b * self.b)
    }

    pub fn inverse(self) -> Option<Self> {
        let d = self.norm_form();
        if d == 0.0 {
            return None;
        }
        let c = self.conj();
        Some(self.with(c.a / d, c.b / d))
    }

    /// Coefficients `k` such that the zero divisors lie on the lines
    /// `a + k b = 0`; empty for elliptic systems.
    pub fn zero_divisor_lines(self) -> Vec<f64> {
        let d = self.discriminant();
        if d < 0.0 {
            return Vec::new();
        }
        let r = d.sqrt();
        if r == 0.0 {
            return vec![self.beta / 2.0];
        }
        vec![(self.beta - r) / 2.0, (self.beta + r) / 2.0]
    }
}

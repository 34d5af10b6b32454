//! Problem definition: conflict function, constraints and variable domains.

use thiserror::Error;

/// Objective ("conflict") or constraint function over a candidate point.
pub type ScalarFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Domain of one decision variable.
#[derive(Debug, Clone, PartialEq)]
pub enum VariableKind {
    Continuous,
    /// Admissible values, sorted ascending. Evaluation snaps to the nearest
    /// one, ties towards the smaller value.
    DiscreteSet(Vec<f64>),
    /// Shorthand for the discrete set {0, 1}.
    Binary,
}

#[derive(Debug, Error, PartialEq)]
pub enum ProblemError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("variable {dim}: lower bound {lo} is not below upper bound {hi}")]
    InvalidBounds { dim: usize, lo: f64, hi: f64 },
    #[error("variable {dim}: discrete value set is empty")]
    EmptyDiscreteSet { dim: usize },
    #[error("variable {dim}: discrete value set must be sorted ascending without duplicates")]
    UnsortedDiscreteSet { dim: usize },
    #[error("expected {expected} {what}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("equality tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("no conflict function was provided")]
    MissingConflict,
}

/// A minimization problem: a conflict function, box bounds, per-variable
/// domains and optional inequality/equality constraints.
///
/// Inequality constraints are stored in normalized form: a point is feasible
/// with respect to constraint `g` when `g(x) <= 0`. Use
/// [`ProblemBuilder::inequality_ge`] for constraints stated in `>= 0` form;
/// it negates them on the way in.
pub struct Problem {
    dimension: usize,
    bounds: Vec<(f64, f64)>,
    kinds: Vec<VariableKind>,
    conflict: ScalarFn,
    inequalities: Vec<ScalarFn>,
    equalities: Vec<ScalarFn>,
    equality_tolerance: f64,
}

impl Problem {
    pub fn builder(dimension: usize) -> ProblemBuilder {
        ProblemBuilder::new(dimension)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn kinds(&self) -> &[VariableKind] {
        &self.kinds
    }

    pub fn equality_tolerance(&self) -> f64 {
        self.equality_tolerance
    }

    pub fn inequality_count(&self) -> usize {
        self.inequalities.len()
    }

    pub fn equality_count(&self) -> usize {
        self.equalities.len()
    }

    pub fn has_constraints(&self) -> bool {
        !self.inequalities.is_empty() || !self.equalities.is_empty()
    }

    /// Raw conflict value at `x`. Callers are expected to pass snapped
    /// vectors for problems with discrete variables.
    pub fn conflict(&self, x: &[f64]) -> f64 {
        (self.conflict)(x)
    }

    pub fn inequality(&self, j: usize, x: &[f64]) -> f64 {
        (self.inequalities[j])(x)
    }

    pub fn equality(&self, j: usize, x: &[f64]) -> f64 {
        (self.equalities[j])(x)
    }

    pub fn in_bounds(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(&self.bounds)
            .all(|(&v, &(lo, hi))| v >= lo && v <= hi)
    }

    /// Whether any variable is discrete (including binary).
    pub fn has_discrete_variables(&self) -> bool {
        self.kinds
            .iter()
            .any(|k| !matches!(k, VariableKind::Continuous))
    }

    /// Snaps `x` onto the admissible domain of every variable.
    pub fn snapped(&self, x: &[f64]) -> Vec<f64> {
        crate::discrete::round_to_domain(x, &self.kinds)
    }
}

impl std::fmt::Debug for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Problem")
            .field("dimension", &self.dimension)
            .field("bounds", &self.bounds)
            .field("inequalities", &self.inequalities.len())
            .field("equalities", &self.equalities.len())
            .finish()
    }
}

pub struct ProblemBuilder {
    dimension: usize,
    bounds: Option<Vec<(f64, f64)>>,
    kinds: Option<Vec<VariableKind>>,
    conflict: Option<ScalarFn>,
    inequalities: Vec<ScalarFn>,
    equalities: Vec<ScalarFn>,
    equality_tolerance: f64,
}

impl ProblemBuilder {
    fn new(dimension: usize) -> Self {
        Self {
            dimension,
            bounds: None,
            kinds: None,
            conflict: None,
            inequalities: Vec::new(),
            equalities: Vec::new(),
            equality_tolerance: 1e-6,
        }
    }

    /// Per-dimension `[lo, hi]` intervals.
    pub fn bounds(mut self, bounds: Vec<(f64, f64)>) -> Self {
        self.bounds = Some(bounds);
        self
    }

    /// The same `[lo, hi]` interval for every dimension.
    pub fn uniform_bounds(mut self, lo: f64, hi: f64) -> Self {
        self.bounds = Some(vec![(lo, hi); self.dimension]);
        self
    }

    pub fn kinds(mut self, kinds: Vec<VariableKind>) -> Self {
        self.kinds = Some(kinds);
        self
    }

    pub fn conflict(mut self, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.conflict = Some(Box::new(f));
        self
    }

    /// Adds an inequality constraint that is feasible when `g(x) <= 0`.
    pub fn inequality_le(mut self, g: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.inequalities.push(Box::new(g));
        self
    }

    /// Adds an inequality constraint stated as `g(x) >= 0`; it is negated so
    /// that the stored form is feasible when `<= 0`.
    pub fn inequality_ge(mut self, g: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.inequalities.push(Box::new(move |x| -g(x)));
        self
    }

    /// Adds an equality constraint `h(x) = 0`, satisfied within the problem's
    /// equality tolerance.
    pub fn equality(mut self, h: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.equalities.push(Box::new(h));
        self
    }

    pub fn equality_tolerance(mut self, tol: f64) -> Self {
        self.equality_tolerance = tol;
        self
    }

    pub fn build(self) -> Result<Problem, ProblemError> {
        let n = self.dimension;
        if n == 0 {
            return Err(ProblemError::ZeroDimension);
        }
        let bounds = self.bounds.ok_or(ProblemError::LengthMismatch {
            what: "bounds",
            expected: n,
            got: 0,
        })?;
        if bounds.len() != n {
            return Err(ProblemError::LengthMismatch {
                what: "bounds",
                expected: n,
                got: bounds.len(),
            });
        }
        for (dim, &(lo, hi)) in bounds.iter().enumerate() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(ProblemError::InvalidBounds { dim, lo, hi });
            }
        }
        let kinds = self
            .kinds
            .unwrap_or_else(|| vec![VariableKind::Continuous; n]);
        if kinds.len() != n {
            return Err(ProblemError::LengthMismatch {
                what: "variable kinds",
                expected: n,
                got: kinds.len(),
            });
        }
        for (dim, kind) in kinds.iter().enumerate() {
            if let VariableKind::DiscreteSet(values) = kind {
                if values.is_empty() {
                    return Err(ProblemError::EmptyDiscreteSet { dim });
                }
                if values.windows(2).any(|w| !(w[0] < w[1])) {
                    return Err(ProblemError::UnsortedDiscreteSet { dim });
                }
            }
        }
        if !(self.equality_tolerance > 0.0) || !self.equality_tolerance.is_finite() {
            return Err(ProblemError::InvalidTolerance(self.equality_tolerance));
        }
        let conflict = self.conflict.ok_or(ProblemError::MissingConflict)?;
        Ok(Problem {
            dimension: n,
            bounds,
            kinds,
            conflict,
            inequalities: self.inequalities,
            equalities: self.equalities,
            equality_tolerance: self.equality_tolerance,
        })
    }
}

use crate::error::{Error, Result};

/// Tabulated values of `omega(1, kappa, 1)`, linearly interpolated.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentTable {
    points: Vec<(f64, f64)>,
}

impl ExponentTable {
    /// `points` are `(kappa, omega(1, kappa, 1))` pairs.
    pub fn new(mut points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("empty exponent table".into()));
        }
        if points
            .iter()
            .any(|&(k, w)| !(k.is_finite() && w.is_finite()) || k < 0.0)
        {
            return Err(Error::InvalidParameter(
                "non-finite exponent table entry".into(),
            ));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameter(
                "duplicate kappa in exponent table".into(),
            ));
        }
        Ok(ExponentTable { points })
    }

    /// `omega(1, kappa, 1)`. Beyond the last point the exponent grows by one
    /// per unit of `kappa`; below the first it is clamped.
    pub fn omega_1k1(&self, kappa: f64) -> f64 {
        let pts = &self.points;
        let (k0, w0) = pts[0];
        if kappa <= k0 {
            return w0;
        }
        let (kl, wl) = pts[pts.len() - 1];
        if kappa >= kl {
            return wl + (kappa - kl);
        }
        let i = pts.partition_point(|&(k, _)| k <= kappa);
        let ((ka, wa), (kb, wb)) = (pts[i - 1], pts[i]);
        wa + (wb - wa) * (kappa - ka) / (kb - ka)
    }
}

/// Predicted cost of a rectangular product `MM(n1, n2, n3)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum MMCostModel {
    /// Schoolbook: `n1 * n2 * n3`.
    #[default]
    Classical,
    /// Square blocks of side `min(n1, n2, n3)` multiplied in `side^omega`.
    SquareOmega(f64),
    /// Outer dimensions tiled into squares, exponent from a table over the
    /// inner/outer ratio.
    Table(ExponentTable),
}

impl MMCostModel {
    pub fn square_omega(omega: f64) -> Result<Self> {
        if !(2.0..=3.0).contains(&omega) {
            return Err(Error::InvalidParameter(format!(
                "omega {omega} outside [2, 3]"
            )));
        }
        Ok(MMCostModel::SquareOmega(omega))
    }

    /// The square-matrix exponent this model implies.
    pub fn omega(&self) -> f64 {
        match self {
            MMCostModel::Classical => 3.0,
            MMCostModel::SquareOmega(w) => *w,
            MMCostModel::Table(t) => t.omega_1k1(1.0),
        }
    }

    /// Exponent `omega(a, b, c)` of multiplying `N^a x N^b` by `N^b x N^c`.
    pub fn exponent(&self, a: f64, b: f64, c: f64) -> f64 {
        match self {
            MMCostModel::Classical => a + b + c,
            MMCostModel::SquareOmega(w) => a + b + c - (3.0 - w) * a.min(b).min(c),
            MMCostModel::Table(t) => {
                let m = a.min(c);
                if m <= 0.0 {
                    return a + b + c;
                }
                m * t.omega_1k1(b / m) + (a - m) + (c - m)
            }
        }
    }

    /// Predicted cost of `MM(n1, n2, n3)`; zero if any dimension is zero.
    pub fn predict_cost(&self, n1: f64, n2: f64, n3: f64) -> f64 {
        if n1 <= 0.0 || n2 <= 0.0 || n3 <= 0.0 {
            return 0.0;
        }
        match self {
            MMCostModel::Classical => n1 * n2 * n3,
            MMCostModel::SquareOmega(w) => n1 * n2 * n3 * n1.min(n2).min(n3).powf(w - 3.0),
            MMCostModel::Table(_) => {
                let big = n1.max(n2).max(n3);
                if big <= 1.0 {
                    return 1.0;
                }
                let l = big.ln();
                big.powf(self.exponent(n1.ln() / l, n2.ln() / l, n3.ln() / l))
            }
        }
    }
}

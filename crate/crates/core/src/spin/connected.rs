//! The connected series `B_c(x) = log B(x)`.

use serde::Serialize;

use crate::error::Result;
use crate::exact::{ExactRational, MomentPolynomial, TruncatedSeries};
use crate::spin::barbell::barbell_group_order;
use crate::spin::moments::spin_moment_closed;

/// `B(x) = Σ_m C_S(n, 2m) / (2^m m!) x^{2m}` through `x^{2 max_m}`.
pub fn barbell_series(max_m: usize) -> TruncatedSeries {
    let order = 2 * max_m + 1;
    let mut b = TruncatedSeries::zero(order);
    for m in 0..=max_m {
        b.set_coeff(2 * m, spin_moment_closed(2 * m).scale(&barbell_group_order(m).recip()));
    }
    b
}

/// `Σ_{m≥1} ((2^m - 1) n + 1) / (2m) x^{2m}` through `x^{2 max_m}`.
pub fn connected_closed_form(max_m: usize) -> TruncatedSeries {
    let order = 2 * max_m + 1;
    let mut s = TruncatedSeries::zero(order);
    for m in 1..=max_m {
        let c = MomentPolynomial::from_coeffs(vec![
            ExactRational::ONE,
            ExactRational::from((1i64 << m) - 1),
        ]);
        s.set_coeff(2 * m, c.scale(&ExactRational::new(1, 2 * m as i64)));
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectedSeries {
    pub from_log: TruncatedSeries,
    pub closed_form: TruncatedSeries,
}

impl ConnectedSeries {
    pub fn agree(&self) -> bool {
        self.from_log == self.closed_form
    }
}

/// Both `log B(x)` and the closed form, through `x^{2 max_m}`.
pub fn connected_series(max_m: usize) -> Result<ConnectedSeries> {
    Ok(ConnectedSeries {
        from_log: barbell_series(max_m).log()?,
        closed_form: connected_closed_form(max_m),
    })
}

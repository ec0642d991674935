use serde::Serialize;

use super::build::KZBData;
use crate::curve::Chart;
use crate::error::{Error, Result};
use crate::formal::Rational;
use crate::freealg::{project_metab, ConnectionForm, NCSeries};
use crate::metabelian::MetabElt;

/// Polar data of `omega'_KZB` at the puncture.
#[derive(Clone, Debug, Serialize)]
pub struct ResidueReport {
    /// The `dz/z` coefficient projected to the metabelian quotient.
    #[serde(skip)]
    pub residue: MetabElt<Rational>,
    pub residue_json: serde_json::Value,
    /// Largest pole order over all words (1 for a logarithmic form).
    pub max_pole_order: i64,
    /// Whether the coefficient of the word `B` has no polar part.
    pub b_holomorphic: bool,
}

/// Expands `omega'_KZB` at infinity and reads off its residue.
pub fn residue_at_infinity(data: &KZBData) -> Result<ResidueReport> {
    let chart = Chart::infinity(&data.params);
    let local = ConnectionForm::Global(data.omega_prime.clone()).localize(&chart, 2)?;
    let ConnectionForm::Local { series, .. } = local else {
        unreachable!("localize returns a local form")
    };
    let mut residue = NCSeries::<Rational>::zero(data.depth);
    let mut max_pole = 0;
    for (w, c) in series.terms() {
        if let Some(v) = c.valuation() {
            max_pole = max_pole.max(-v);
        }
        residue.set(w, c.coeff(-1, 0)?);
    }
    if max_pole > 1 {
        return Err(Error::PoleOrder { order: max_pole });
    }
    let b = series.coeff("B")?;
    let residue = project_metab(&residue)?;
    Ok(ResidueReport {
        residue_json: residue.to_json(),
        residue,
        max_pole_order: max_pole,
        b_holomorphic: b.valuation().is_none_or(|v| v >= 0),
    })
}

use serde::{Deserialize, Serialize};

use super::{
    end_edge_survey, range_of_profile, Budget, EndEdgeClass, Extremum, GenusRange, RangeError,
};
use crate::surface::EndEdgeTrace;
use crate::words::{concat, ChordWord};

/// Predicted and observed corrections for `gr(W1 W2) = [g1 + g2 - eps, g1' + g2' - eps']`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumLaw {
    pub left: GenusRange,
    pub right: GenusRange,
    pub combined: GenusRange,
    pub predicted: (u32, u32),
    pub observed: (i64, i64),
    pub agree: bool,
}

/// Corrections from the end-edge case table:
/// `eps = 0` iff one side is `A(min,2)`, `eps' = 0` iff one side is `E(max,2)`.
pub fn predicted_epsilons(left: &EndEdgeClass, right: &EndEdgeClass) -> (u32, u32) {
    let min_double = [left, right]
        .iter()
        .any(|c| c.all(Extremum::Min, EndEdgeTrace::Double));
    let max_double = [left, right]
        .iter()
        .any(|c| c.exists(Extremum::Max, EndEdgeTrace::Double));
    (u32::from(!min_double), u32::from(!max_double))
}

pub fn connected_sum_law(
    left: &ChordWord,
    right: &ChordWord,
    budget: &Budget,
) -> Result<SumLaw, RangeError> {
    let joined = concat(left, right);
    budget.check_profile(joined.n())?;
    let survey_left = end_edge_survey(left, budget)?;
    let survey_right = end_edge_survey(right, budget)?;
    let gr_left = range_of_profile(left, &survey_left.profile())?;
    let gr_right = range_of_profile(right, &survey_right.profile())?;
    let combined = super::genus_range_with(&joined, budget)?;

    let predicted = predicted_epsilons(&survey_left.class(), &survey_right.class());
    let observed = (
        i64::from(gr_left.lo + gr_right.lo) - i64::from(combined.lo),
        i64::from(gr_left.hi + gr_right.hi) - i64::from(combined.hi),
    );
    let agree = observed == (i64::from(predicted.0), i64::from(predicted.1));
    Ok(SumLaw {
        left: gr_left,
        right: gr_right,
        combined,
        predicted,
        observed,
        agree,
    })
}

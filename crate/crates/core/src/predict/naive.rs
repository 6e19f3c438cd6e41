use crate::ca::{apply_to_pattern, CellularAutomaton, Pattern, State};
use crate::error::{Error, Result};
use crate::predict::rle::RleColumn;

/// Does `F^t(u)` equal `target` at the origin? `u` has radius exactly `r·t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictionInstance {
    pub t: usize,
    pub input: Pattern,
    pub target: Option<State>,
}

impl PredictionInstance {
    pub fn new(ca: &CellularAutomaton, t: usize, input: Pattern, target: Option<State>) -> Result<Self> {
        let want = ca.radius() * t;
        if input.radius() != want {
            return Err(Error::Precondition(format!(
                "input radius must be r·t = {want}, got {}",
                input.radius()
            )));
        }
        ca.check_dim(input.dim())?;
        Ok(PredictionInstance { t, input, target })
    }

    /// 1D instance from a row of length `2rt + 1`.
    pub fn from_row(ca: &CellularAutomaton, t: usize, row: &[State], target: Option<State>) -> Result<Self> {
        PredictionInstance::new(ca, t, Pattern::from_row(row)?, target)
    }
}

fn check(ca: &CellularAutomaton, inst: &PredictionInstance) -> Result<()> {
    if inst.input.radius() != ca.radius() * inst.t {
        return Err(Error::Precondition("input radius must equal r·t".into()));
    }
    ca.check_dim(inst.input.dim())
}

/// `t` applications of the rule to the pattern; the center of the result.
pub fn predict_naive(ca: &CellularAutomaton, inst: &PredictionInstance) -> Result<State> {
    check(ca, inst)?;
    let mut u = inst.input.clone();
    for _ in 0..inst.t {
        u = apply_to_pattern(ca, &u)?;
    }
    Ok(u.center())
}

/// The true columns of a 1D instance: column i holds times `0..=h_i`, `h_i = ⌊(rt − |i|)/r⌋`.
pub fn true_columns(ca: &CellularAutomaton, inst: &PredictionInstance) -> Result<Vec<RleColumn>> {
    check(ca, inst)?;
    if ca.dim() != 1 {
        return Err(Error::NotOneDimensional);
    }
    let r = ca.radius();
    let big_r = (r * inst.t) as i64;
    let mut cols: Vec<RleColumn> = inst.input.row().iter().map(|&s| RleColumn::from_states(&[s])).collect();
    let mut u = inst.input.clone();
    for _ in 0..inst.t {
        u = apply_to_pattern(ca, &u)?;
        let rad = u.radius() as i64;
        for (j, &s) in u.row().iter().enumerate() {
            cols[(j as i64 - rad + big_r) as usize].push(s, 1);
        }
    }
    Ok(cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{Alphabet, Neighborhood};
    use crate::zoo;

    #[test]
    fn identity_returns_center() {
        let id = zoo::identity(Alphabet::numeric(3), Neighborhood::interval(-1, 1)).unwrap();
        let row = [0, 1, 2, 0, 1].map(State);
        let inst = PredictionInstance::from_row(&id, 2, &row, None).unwrap();
        assert_eq!(predict_naive(&id, &inst).unwrap(), State(2));
    }

    #[test]
    fn ulam_1d_two_steps() {
        let ca = zoo::ulam_1d();
        let mut row = vec![State(0); 5];
        row[2] = State(1);
        let inst = PredictionInstance::from_row(&ca, 2, &row, None).unwrap();
        assert_eq!(predict_naive(&ca, &inst).unwrap(), State(1));
    }

    #[test]
    fn radius_checked() {
        let ca = zoo::max_rule(2, -1, 1);
        assert!(PredictionInstance::from_row(&ca, 2, &[State(0); 3], None).is_err());
    }

    #[test]
    fn column_heights() {
        let ca = zoo::max_rule(2, -1, 1);
        let row = [0, 0, 0, 0, 1, 0, 0].map(State);
        let inst = PredictionInstance::from_row(&ca, 3, &row, None).unwrap();
        let cols = true_columns(&ca, &inst).unwrap();
        let h: Vec<usize> = cols.iter().map(|c| c.total_height() - 1).collect();
        assert_eq!(h, vec![0, 1, 2, 3, 2, 1, 0]);
        assert_eq!(cols[3].segments(), &[(State(0), 1), (State(1), 3)]);
    }
}

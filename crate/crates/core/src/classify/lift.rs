use crate::ca::{Alphabet, CellularAutomaton, State};
use crate::error::{Error, Result};

/// `s` spreads: every context containing `s` maps to `s`.
pub fn is_spreading(ca: &CellularAutomaton, s: State) -> bool {
    ca.table()
        .iter()
        .enumerate()
        .all(|(idx, out)| *out == s || !ca.context_of(idx).contains(&s))
}

/// The product F₁ on Q × {0,1}: (s,0) next to an s, otherwise the inner image with
/// the center bit flipped. State (q, b) has id 2q + b and name `q/b`.
pub fn lift_spreading_product(ca: &CellularAutomaton, s: State) -> Result<CellularAutomaton> {
    ca.check_state(s)?;
    if !is_spreading(ca, s) {
        return Err(Error::NotSpreading(ca.alphabet().name(s).to_string()));
    }
    let ci = ca
        .neighborhood()
        .center_index()
        .ok_or_else(|| Error::Precondition("product needs the origin in the neighborhood".into()))?;
    let names: Vec<String> = ca
        .alphabet()
        .names()
        .iter()
        .flat_map(|n| [format!("{n}/0"), format!("{n}/1")])
        .collect();
    let mut inner = vec![State(0); ca.neighborhood().len()];
    let out = CellularAutomaton::from_fn(Alphabet::new(&names)?, ca.neighborhood().clone(), |ctx| {
        for (slot, c) in inner.iter_mut().zip(ctx) {
            *slot = State(c.0 / 2);
        }
        if inner.contains(&s) {
            State(2 * s.0)
        } else {
            State(2 * ca.apply(&inner).0 + (1 - ctx[ci].0 % 2))
        }
    })?;
    Ok(out.with_name(format!("product-{}", ca.name().unwrap_or("rule"))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{simulate, Configuration, Neighborhood};
    use crate::zoo;

    #[test]
    fn constant_s_collapses() {
        let ca = zoo::constant(Alphabet::numeric(2), Neighborhood::interval(-1, 1), State(0)).unwrap();
        let f1 = lift_spreading_product(&ca, State(0)).unwrap();
        let c = Configuration::from_row(State(3), -2, &[State(1), State(2), State(0)]);
        let o = simulate(&f1, &c, 1).unwrap();
        assert_eq!(o[1], Configuration::uniform(1, State(0)));
    }

    #[test]
    fn bit_layer_oscillates() {
        // max over {0,1,2}: 2 spreads, and an all-1 row never produces it
        let ca = zoo::max_rule(3, -1, 1);
        let f1 = lift_spreading_product(&ca, State(2)).unwrap();
        let c = Configuration::uniform(1, State(2));
        let o = simulate(&f1, &c, 4).unwrap();
        let col: Vec<u16> = o.iter().map(|x| x.at(0).0).collect();
        assert_eq!(col, vec![2, 3, 2, 3, 2]);
    }

    #[test]
    fn non_spreading_rejected() {
        let id = zoo::identity(Alphabet::numeric(2), Neighborhood::interval(-1, 1)).unwrap();
        assert!(matches!(lift_spreading_product(&id, State(1)), Err(Error::NotSpreading(_))));
    }
}

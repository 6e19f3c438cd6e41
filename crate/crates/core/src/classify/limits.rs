use crate::ca::{Alphabet, Background, CellularAutomaton, Configuration, Neighborhood, Orbit, State};
use crate::error::{Error, Result};

/// Group a 1D radius-r rule into a radius-1 rule on blocks of `r` cells
/// (block j holds cells jr … jr+r−1). Block states are named `a.b.…`.
pub fn group_blocks(ca: &CellularAutomaton) -> Result<CellularAutomaton> {
    if ca.dim() != 1 {
        return Err(Error::NotOneDimensional);
    }
    let r = ca.radius().max(1);
    let q = ca.num_states();
    let nb_states = q.checked_pow(r as u32).ok_or(Error::TableTooLarge(u128::MAX))?;
    let decode = |mut id: usize| -> Vec<State> {
        let mut v = vec![State(0); r];
        for slot in v.iter_mut().rev() {
            *slot = State((id % q) as u16);
            id /= q;
        }
        v
    };
    let names: Vec<String> = (0..nb_states)
        .map(|id| {
            decode(id)
                .iter()
                .map(|s| ca.alphabet().name(*s))
                .collect::<Vec<_>>()
                .join(".")
        })
        .collect();
    let alphabet = Alphabet::new(&names)?;
    let offs: Vec<i64> = ca.neighborhood().offsets().iter().map(|o| o[0]).collect();
    let mut ctx = vec![State(0); offs.len()];
    let out = CellularAutomaton::from_fn(alphabet, Neighborhood::interval(-1, 1), |blocks| {
        // cells −r … 2r−1 relative to the block start
        let cells: Vec<State> = blocks.iter().flat_map(|b| decode(b.index())).collect();
        let mut id = 0usize;
        for i in 0..r as i64 {
            for (slot, v) in ctx.iter_mut().zip(&offs) {
                *slot = cells[(r as i64 + i + v) as usize];
            }
            id = id * q + ca.apply(&ctx).index();
        }
        State(id as u16)
    })?;
    Ok(out.with_name(format!("grouped-{}", ca.name().unwrap_or("rule"))))
}

fn lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// The configuration of blocks matching `group_blocks(ca)` with block size `r`.
pub fn group_configuration(c: &Configuration, r: usize, q: usize) -> Result<Configuration> {
    if c.dim() != 1 {
        return Err(Error::NotOneDimensional);
    }
    let r = r.max(1) as i64;
    let block_id = |j: i64| -> State {
        let mut id = 0usize;
        for i in 0..r {
            id = id * q + c.at(j * r + i).index();
        }
        State(id as u16)
    };
    let bg = match c.background() {
        Background::Uniform(b) => Background::Uniform(State((0..r).fold(0usize, |id, _| id * q + b.index()) as u16)),
        Background::Periodic { periods, block } => {
            let p = lcm(periods[0], r) / r;
            let bg = Background::Periodic {
                periods: periods.clone(),
                block: block.clone(),
            };
            let ids = (0..p)
                .map(|j| {
                    let mut id = 0usize;
                    for i in 0..r {
                        id = id * q + bg.at(&[j * r + i]).index();
                    }
                    State(id as u16)
                })
                .collect();
            Background::Periodic {
                periods: vec![p],
                block: ids,
            }
        }
    };
    let mut out = Configuration::with_background(1, bg)?;
    if let Some((lo, hi)) = c.bounding_box() {
        for j in lo[0].div_euclid(r)..=hi[0].div_euclid(r) {
            out.set(vec![j], block_id(j))?;
        }
    }
    Ok(out)
}

/// Limit on `[z, z′]` from exact change counts λ(z), λ(z′) (radius-1 rules):
/// run until both counts are observed at time t, then return F^{t+k(z′−z)}(c) there.
#[allow(clippy::too_many_arguments)]
pub fn limit_segment_with_counts(
    ca: &CellularAutomaton,
    c: &Configuration,
    z: i64,
    z2: i64,
    lambda_z: usize,
    lambda_z2: usize,
    k: usize,
    cap: usize,
) -> Result<Vec<State>> {
    if ca.dim() != 1 {
        return Err(Error::NotOneDimensional);
    }
    if ca.radius() > 1 {
        return Err(Error::WrongRadius {
            expected: 1,
            got: ca.radius(),
        });
    }
    if z > z2 {
        return Err(Error::InvalidConfiguration("segment needs z ≤ z′".into()));
    }
    let extra = k * (z2 - z) as usize;
    let mut seen = (0usize, 0usize);
    let mut prev = (c.at(z), c.at(z2));
    let mut reached_at = if lambda_z == 0 && lambda_z2 == 0 { Some(0) } else { None };
    for (t, cfg) in Orbit::new(ca, c)?.enumerate() {
        if t > 0 && reached_at.is_none() {
            let now = (cfg.at(z), cfg.at(z2));
            seen.0 += usize::from(now.0 != prev.0);
            seen.1 += usize::from(now.1 != prev.1);
            prev = now;
            if seen.0 > lambda_z || seen.1 > lambda_z2 {
                return Err(Error::InvalidConfiguration("observed more changes than the oracle counts".into()));
            }
            if seen == (lambda_z, lambda_z2) {
                reached_at = Some(t);
            }
        }
        if let Some(t0) = reached_at {
            if t == t0 + extra {
                return Ok(cfg.row(z, z2));
            }
        } else if t >= cap {
            return Err(Error::CountsNotReached(cap));
        }
    }
    unreachable!("orbit is infinite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::simulate;
    use crate::zoo;

    #[test]
    fn grouping_commutes_with_simulation() {
        let ca = zoo::threshold_growth(2, Neighborhood::interval(-2, 2)).unwrap();
        let g = group_blocks(&ca).unwrap();
        assert_eq!(g.num_states(), 4);
        let c = Configuration::from_row(State(0), -3, &[State(1), State(0), State(1), State(0), State(0), State(1)]);
        let gc = group_configuration(&c, 2, 2).unwrap();
        let a = simulate(&ca, &c, 6).unwrap();
        let b = simulate(&g, &gc, 6).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(group_configuration(x, 2, 2).unwrap(), *y);
        }
    }

    #[test]
    fn identity_segment() {
        let id = zoo::identity(Alphabet::numeric(2), Neighborhood::interval(-1, 1)).unwrap();
        let c = Configuration::from_row(State(0), 0, &[State(1), State(0), State(1)]);
        let v = limit_segment_with_counts(&id, &c, 0, 2, 0, 0, 0, 10).unwrap();
        assert_eq!(v, vec![State(1), State(0), State(1)]);
    }

    #[test]
    fn bad_counts_fail() {
        let id = zoo::identity(Alphabet::numeric(2), Neighborhood::interval(-1, 1)).unwrap();
        let c = Configuration::uniform(1, State(0));
        assert_eq!(
            limit_segment_with_counts(&id, &c, 0, 0, 1, 0, 0, 50),
            Err(Error::CountsNotReached(50))
        );
    }
}

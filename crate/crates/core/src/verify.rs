//! Regression checks tying the three routes together: the closed-form
//! piecewise solution, the exact simplex, and the brute-force basis oracle.
//! Shared by the `verify` CLI subcommand and the test suites.

use crate::lp::{brute_force_optimum, build_lp, solve_simplex, LpStatus};
use crate::model::{check_feasible, CacheBudget, Region};
use crate::rat::{fmt_rat, int, Rat};
use crate::theorem::{closed_form_fdt, closed_form_ratios, region_formula};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A failed check, naming the first offending budget point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    pub check: &'static str,
    pub mu_r: String,
    pub mu_t: String,
    pub detail: String,
}

impl std::fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} failed at (mu_r={}, mu_t={}): {}",
            self.check, self.mu_r, self.mu_t, self.detail
        )
    }
}

fn failure(check: &'static str, b: &CacheBudget, detail: String) -> CheckFailure {
    CheckFailure {
        check,
        mu_r: fmt_rat(b.mu_r()),
        mu_t: fmt_rat(b.mu_t()),
        detail,
    }
}

/// All grid points k*step within the unit square, feasible ones only.
pub fn feasible_grid(step: &Rat) -> Vec<CacheBudget> {
    let mut points = Vec::new();
    let mut mu_r = Rat::zero();
    while mu_r <= int(1) {
        let mut mu_t = Rat::zero();
        while mu_t <= int(1) {
            let b = CacheBudget::new(mu_r.clone(), mu_t.clone()).unwrap();
            if check_feasible(&b) {
                points.push(b);
            }
            mu_t += step;
        }
        mu_r += step;
    }
    points
}

/// Simplex optimum equals the closed-form piecewise value at every feasible
/// grid point. Returns the number of points checked.
pub fn check_theorem_agreement(step: &Rat) -> Result<usize, CheckFailure> {
    let grid = feasible_grid(step);
    for b in &grid {
        let sol = solve_simplex(&build_lp(b).unwrap());
        if sol.status != LpStatus::Optimal {
            return Err(failure("theorem-agreement", b, "LP reported infeasible".into()));
        }
        let closed = closed_form_fdt(b).unwrap();
        if sol.tau != closed {
            return Err(failure(
                "theorem-agreement",
                b,
                format!("simplex {} != closed form {}", sol.tau, closed),
            ));
        }
        let stated = closed_form_ratios(b).unwrap();
        if crate::lp::evaluate_fdt(&stated) != sol.tau {
            return Err(failure(
                "theorem-agreement",
                b,
                "stated splitting ratios are not LP-optimal".into(),
            ));
        }
    }
    Ok(grid.len())
}

/// Every feasible grid point must satisfy exactly one region predicate.
/// Generic over the membership test so a corrupted predicate can be
/// injected to exercise the failure path.
pub fn check_partition_with<F>(step: &Rat, contains: F) -> Result<usize, CheckFailure>
where
    F: Fn(Region, &CacheBudget) -> bool,
{
    let grid = feasible_grid(step);
    for b in &grid {
        let matches: Vec<Region> = Region::ALL
            .into_iter()
            .filter(|r| contains(*r, b))
            .collect();
        if matches.len() != 1 {
            return Err(failure(
                "region-partition",
                b,
                format!("matched {:?}", matches),
            ));
        }
    }
    Ok(grid.len())
}

pub fn check_partition(step: &Rat) -> Result<usize, CheckFailure> {
    check_partition_with(step, |r, b| r.contains(b))
}

/// Adjacent regions and points on their shared boundary segment.
type BoundarySegment = (Region, Region, Vec<(Rat, Rat)>);

fn boundary_segments(step: &Rat) -> Vec<BoundarySegment> {
    let line = |f: &dyn Fn(&Rat) -> Option<(Rat, Rat)>| -> Vec<(Rat, Rat)> {
        let mut pts = Vec::new();
        let mut t = Rat::zero();
        while t <= int(1) {
            if let Some(p) = f(&t) {
                pts.push(p);
            }
            t += step;
        }
        pts
    };
    vec![
        // mu_r + mu_t = 1
        (Region::R1, Region::R2, line(&|t| Some((t.clone(), int(1) - t)))),
        // 2 mu_r + mu_t = 1, mu_r in [0, 1/2]
        (
            Region::R2,
            Region::R3,
            line(&|t| {
                let mu_r = t / int(2);
                let mu_t = int(1) - int(2) * &mu_r;
                Some((mu_r, mu_t))
            }),
        ),
        // mu_r + mu_t = 2/3
        (
            Region::R3,
            Region::R4,
            line(&|t| {
                let mu_r = t * crate::rat::rat(2, 3);
                let mu_t = crate::rat::rat(2, 3) - &mu_r;
                Some((mu_r, mu_t))
            }),
        ),
        // mu_t = 1/3
        (
            Region::R4,
            Region::R5,
            line(&|t| Some((t.clone(), crate::rat::rat(1, 3)))),
        ),
        // mu_r + 2 mu_t = 1
        (
            Region::R2,
            Region::R5,
            line(&|t| {
                let mu_t = (int(1) - t) / int(2);
                Some((t.clone(), mu_t))
            }),
        ),
    ]
}

/// On each shared boundary the two region formulas must evaluate equal.
pub fn check_boundary_continuity(step: &Rat) -> Result<usize, CheckFailure> {
    let mut checked = 0;
    for (lhs, rhs, points) in boundary_segments(step) {
        for (mu_r, mu_t) in points {
            let a = region_formula(lhs, &mu_r, &mu_t);
            let b = region_formula(rhs, &mu_r, &mu_t);
            if a != b {
                return Err(CheckFailure {
                    check: "boundary-continuity",
                    mu_r: fmt_rat(&mu_r),
                    mu_t: fmt_rat(&mu_t),
                    detail: format!(
                        "{} gives {}, {} gives {}",
                        lhs.name(),
                        fmt_rat(&a),
                        rhs.name(),
                        fmt_rat(&b)
                    ),
                });
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Random feasible budget with both denominators at most `max_denom`.
pub fn random_feasible_budget(rng: &mut impl Rng, max_denom: u32) -> CacheBudget {
    loop {
        let dr = rng.gen_range(1..=max_denom) as i64;
        let dt = rng.gen_range(1..=max_denom) as i64;
        let mu_r = crate::rat::rat(rng.gen_range(0..=dr), dr);
        let mu_t = crate::rat::rat(rng.gen_range(0..=dt), dt);
        let b = CacheBudget::new(mu_r, mu_t).unwrap();
        if check_feasible(&b) {
            return b;
        }
    }
}

/// Simplex optimum equals the brute-force basis enumeration on random
/// feasible budgets. Deterministic for a given seed.
pub fn check_oracle_equivalence(samples: usize, seed: u64) -> Result<usize, CheckFailure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let b = random_feasible_budget(&mut rng, 60);
        let problem = build_lp(&b).unwrap();
        let simplex = solve_simplex(&problem);
        let oracle = brute_force_optimum(&problem).unwrap();
        if simplex.tau != oracle {
            return Err(failure(
                "oracle-equivalence",
                &b,
                format!("simplex {} != oracle {}", simplex.tau, oracle),
            ));
        }
    }
    Ok(samples)
}

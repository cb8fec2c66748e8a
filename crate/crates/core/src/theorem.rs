//! Closed-form achievable FDT: the piecewise-linear tradeoff, its optimal
//! splitting ratios per region, and the baseline curves it is compared with.

use crate::error::{Error, Result};
use crate::model::{classify_region, CacheBudget, Region, SplitRatios};
use crate::rat::{fmt_rat, int, rat, Rat};

/// Dimensionless normalized delivery time, always in [0, 1].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FdtValue(Rat);

impl FdtValue {
    pub fn new(value: Rat) -> Self {
        debug_assert!(value >= int(0) && value <= int(1), "FDT out of [0,1]: {value}");
        Self(value)
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn into_inner(self) -> Rat {
        self.0
    }
}

impl std::fmt::Display for FdtValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&fmt_rat(&self.0))
    }
}

/// The linear expression of one region, evaluated without asking whether
/// the point lies inside it. Used for boundary-continuity checks.
pub fn region_formula(region: Region, mu_r: &Rat, mu_t: &Rat) -> Rat {
    match region {
        Region::R1 => rat(1, 3) - rat(1, 3) * mu_r,
        Region::R2 => rat(4, 9) - rat(4, 9) * mu_r - rat(1, 9) * mu_t,
        Region::R3 => rat(1, 2) - rat(5, 9) * mu_r - rat(1, 6) * mu_t,
        Region::R4 => rat(13, 18) - rat(8, 9) * mu_r - rat(1, 2) * mu_t,
        Region::R5 => rat(8, 9) - rat(8, 9) * mu_r - mu_t,
    }
}

/// Piecewise-linear achievable FDT at a feasible budget.
pub fn closed_form_fdt(budget: &CacheBudget) -> Result<FdtValue> {
    let region = classify_region(budget)?;
    let tau = region_formula(region, budget.mu_r(), budget.mu_t());
    Ok(FdtValue::new(tau))
}

/// The per-region optimal splitting ratios. For R1 and R2 the optimum is not
/// unique; this returns the stated representative solution.
pub fn closed_form_ratios(budget: &CacheBudget) -> Result<SplitRatios> {
    let region = classify_region(budget)?;
    let mu_r = budget.mu_r();
    let mu_t = budget.mu_t();
    let mut r = SplitRatios::zero();
    match region {
        Region::R1 => {
            r.a30 = mu_r.clone();
            r.a03 = int(1) - mu_r;
        }
        Region::R2 => {
            r.a11 = rat(1, 3) - rat(1, 3) * mu_r - rat(1, 3) * mu_t;
            r.a30 = int(2) * mu_r + mu_t - int(1);
            r.a03 = mu_r + int(2) * mu_t - int(1);
        }
        Region::R3 => {
            r.a11 = mu_r / int(3);
            r.a02 = int(1) - int(2) * mu_r - mu_t;
            r.a03 = int(3) * mu_r + int(3) * mu_t - int(2);
        }
        Region::R4 => {
            r.a11 = mu_r / int(3);
            r.a01 = rat(2, 3) - mu_r - mu_t;
            r.a02 = mu_t - rat(1, 3);
        }
        Region::R5 => {
            r.a11 = mu_r / int(3) + mu_t - rat(1, 3);
            r.a01 = int(1) - mu_r - int(2) * mu_t;
            r.a30 = int(1) - int(3) * mu_t;
        }
    }
    debug_assert!(r.all_nonnegative(), "negative ratio in {region:?} at {budget:?}");
    debug_assert_eq!(r.total_size(), int(1));
    Ok(r)
}

/// The transmitter-cache-only curve (mu_r = 0), defined on [1/3, 1].
pub fn tx_only_fdt(mu_t: &Rat) -> Result<FdtValue> {
    if *mu_t < rat(1, 3) || *mu_t > int(1) {
        return Err(Error::OutOfDomain(fmt_rat(mu_t)));
    }
    let tau = if *mu_t <= rat(2, 3) {
        rat(13, 18) - rat(1, 2) * mu_t
    } else {
        rat(1, 2) - rat(1, 6) * mu_t
    };
    Ok(FdtValue::new(tau))
}

/// Single-server coded-caching baseline (1-mu_r)/(1+3*mu_r), stated only at
/// mu_r in {0, 1/3, 2/3, 1}.
pub fn broadcast_baseline_fdt(mu_r: &Rat) -> Result<FdtValue> {
    let cited = [int(0), rat(1, 3), rat(2, 3), int(1)];
    if !cited.contains(mu_r) {
        return Err(Error::OutOfDomain(fmt_rat(mu_r)));
    }
    let tau = (int(1) - mu_r) / (int(1) + int(3) * mu_r);
    Ok(FdtValue::new(tau))
}

//! The file-splitting linear program: objective and constraint rows, an
//! exact-rational two-phase simplex solver, and a brute-force basis
//! enumeration used as an independent oracle in tests and verification.

use crate::error::{Error, Result};
use crate::model::{CacheBudget, SplitRatios};
use crate::rat::{int, rat, Rat};
use crate::theorem::FdtValue;
use num_traits::{One, Zero};

pub const NUM_RATIOS: usize = 13;

/// Delivery-time cost per unit of each splitting ratio, in the fixed
/// variable order. Classes with all receivers caching the bit cost nothing.
pub fn objective_coeffs() -> [Rat; 13] {
    let third = rat(1, 3);
    [
        int(0),
        int(0),
        int(0),
        int(0),
        &third * int(3),
        &third * int(3),
        &third * int(1),
        &third * int(7),
        &third * int(6),
        &third * int(2),
        &third * int(5),
        &third * rat(7, 2),
        &third * int(1),
    ]
}

fn eq_file_size_row() -> [Rat; 13] {
    [1, 3, 3, 1, 9, 9, 3, 9, 9, 3, 3, 3, 1].map(int)
}

fn le_rx_cache_row() -> [Rat; 13] {
    [1, 3, 3, 1, 6, 6, 2, 3, 3, 1, 0, 0, 0].map(int)
}

fn le_tx_cache_row() -> [Rat; 13] {
    [0, 1, 2, 1, 3, 6, 3, 3, 6, 3, 1, 2, 1].map(int)
}

#[derive(Debug, Clone)]
pub struct LpProblem {
    pub objective: [Rat; 13],
    pub eq_constraints: Vec<([Rat; 13], Rat)>,
    pub le_constraints: Vec<([Rat; 13], Rat)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub ratios: SplitRatios,
    pub tau: FdtValue,
}

/// Assembles the splitting-ratio program for a budget: minimize delivery
/// time subject to the file-size identity and both cache-size limits.
pub fn build_lp(budget: &CacheBudget) -> Result<LpProblem> {
    if !crate::model::check_feasible(budget) {
        return Err(budget.infeasible_error());
    }
    Ok(LpProblem {
        objective: objective_coeffs(),
        eq_constraints: vec![(eq_file_size_row(), int(1))],
        le_constraints: vec![
            (le_rx_cache_row(), budget.mu_r().clone()),
            (le_tx_cache_row(), budget.mu_t().clone()),
        ],
    })
}

/// Total FDT of a splitting: (1/3)(5a01 + 7/2 a02 + a03 + 3a21 + 3a22 +
/// a23 + 7a11 + 6a12 + 2a13).
pub fn evaluate_fdt(ratios: &SplitRatios) -> FdtValue {
    let tau = objective_coeffs()
        .iter()
        .zip(ratios.to_vec())
        .map(|(c, a)| c * a)
        .sum();
    FdtValue::new(tau)
}

/// Standard-form view: rows over structural variables plus one slack per
/// inequality. Every rhs here is nonnegative.
fn standard_form(problem: &LpProblem) -> (Vec<Vec<Rat>>, Vec<Rat>, Vec<Rat>) {
    let num_slack = problem.le_constraints.len();
    let ncols = NUM_RATIOS + num_slack;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (coeffs, b) in &problem.eq_constraints {
        let mut row = vec![Rat::zero(); ncols];
        row[..NUM_RATIOS].clone_from_slice(coeffs);
        rows.push(row);
        rhs.push(b.clone());
    }
    for (i, (coeffs, b)) in problem.le_constraints.iter().enumerate() {
        let mut row = vec![Rat::zero(); ncols];
        row[..NUM_RATIOS].clone_from_slice(coeffs);
        row[NUM_RATIOS + i] = Rat::one();
        rows.push(row);
        rhs.push(b.clone());
    }
    let mut cost = vec![Rat::zero(); ncols];
    cost[..NUM_RATIOS].clone_from_slice(&problem.objective);
    (rows, rhs, cost)
}

struct Tableau {
    /// m rows, each ncols coefficients plus trailing rhs.
    rows: Vec<Vec<Rat>>,
    /// Reduced-cost row, trailing entry is minus the objective value.
    cost: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn ncols(&self) -> usize {
        self.cost.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * pv;
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (x, pv) in self.cost.iter_mut().zip(&pivot_row) {
                *x -= &f * pv;
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes with Bland's rule (smallest-index entering column,
    /// smallest basis index on ratio ties), which cannot cycle.
    fn run(&mut self) {
        loop {
            let ncols = self.ncols();
            let Some(entering) = (0..ncols).find(|&j| self.cost[j] < Rat::zero()) else {
                return;
            };
            let mut leaving: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[entering] <= Rat::zero() {
                    continue;
                }
                let ratio = &row[ncols] / &row[entering];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b
                            || (ratio == *b
                                && self.basis[i] < self.basis[leaving.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leaving = Some(i);
                }
            }
            let r = leaving.expect("bounded problem cannot have an unbounded direction");
            self.pivot(r, entering);
        }
    }

    /// Installs a cost vector for the current basis: reduced costs and the
    /// negated objective value in the trailing slot.
    fn set_cost(&mut self, cost_per_col: &[Rat]) {
        let _ncols = self.ncols();
        let mut cost = cost_per_col.to_vec();
        cost.push(Rat::zero());
        for (i, &bj) in self.basis.iter().enumerate() {
            if bj >= cost_per_col.len() || cost_per_col[bj].is_zero() {
                continue;
            }
            let f = cost_per_col[bj].clone();
            for (x, rv) in cost.iter_mut().zip(&self.rows[i]) {
                *x -= &f * rv;
            }
        }
        self.cost = cost;
    }

    fn objective_value(&self) -> Rat {
        -self.cost[self.ncols()].clone()
    }
}

/// Exact two-phase simplex. Deterministic: the fixed pivot rule always
/// yields the same basic solution for the same problem.
pub fn solve_simplex(problem: &LpProblem) -> LpSolution {
    let (rows, rhs, cost) = standard_form(problem);
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);

    // Phase one: one artificial per row, minimize their sum.
    let mut tab_rows = Vec::with_capacity(m);
    for (i, (row, b)) in rows.iter().zip(&rhs).enumerate() {
        let mut r: Vec<Rat> = row.clone();
        let neg = *b < Rat::zero();
        if neg {
            for x in r.iter_mut() {
                *x = -x.clone();
            }
        }
        r.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        r.push(if neg { -b.clone() } else { b.clone() });
        tab_rows.push(r);
    }
    let mut tab = Tableau {
        rows: tab_rows,
        cost: vec![Rat::zero(); n + m + 1],
        basis: (n..n + m).collect(),
    };
    let phase1_cost: Vec<Rat> = (0..n + m)
        .map(|j| if j >= n { Rat::one() } else { Rat::zero() })
        .collect();
    tab.set_cost(&phase1_cost);
    tab.run();

    if !tab.objective_value().is_zero() {
        return LpSolution {
            status: LpStatus::Infeasible,
            ratios: SplitRatios::zero(),
            tau: FdtValue::new(Rat::zero()),
        };
    }

    // Drive leftover artificials out of a degenerate basis.
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(c) = (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                tab.pivot(i, c);
            }
        }
    }

    // Phase two over structural and slack columns only.
    for row in tab.rows.iter_mut() {
        let b = row.pop().unwrap();
        row.truncate(n);
        row.push(b);
    }
    tab.cost.truncate(n + 1);
    let mut phase2_cost = cost;
    phase2_cost.resize(n, Rat::zero());
    tab.set_cost(&phase2_cost);
    tab.run();

    let mut x = vec![Rat::zero(); n];
    for (i, &bj) in tab.basis.iter().enumerate() {
        if bj < n {
            x[bj] = tab.rows[i][n].clone();
        }
    }
    let ratios = SplitRatios::from_vec(std::array::from_fn(|j| x[j].clone()));
    let tau = tab.objective_value();
    LpSolution {
        status: LpStatus::Optimal,
        ratios,
        tau: FdtValue::new(tau),
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Solves the square system given by the chosen basis columns. Returns None
/// when the columns are linearly dependent.
fn solve_square(rows: &[Vec<Rat>], rhs: &[Rat], cols: &[usize]) -> Option<Vec<Rat>> {
    let m = rows.len();
    let mut a: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r: Vec<Rat> = cols.iter().map(|&c| row[c].clone()).collect();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, pv) in row.iter_mut().zip(&prow) {
                *x -= &f * pv;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Independent oracle: enumerates every candidate basis of the standard
/// form (all column triples for the 3-row instance), keeps the
/// feasible basic solutions, and returns the minimum objective.
pub fn brute_force_optimum(problem: &LpProblem) -> Result<FdtValue> {
    let (rows, rhs, cost) = standard_form(problem);
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut best: Option<Rat> = None;
    for cols in combinations(n, m) {
        let Some(x) = solve_square(&rows, &rhs, &cols) else {
            continue;
        };
        if x.iter().any(|v| *v < Rat::zero()) {
            continue;
        }
        let obj: Rat = cols.iter().zip(&x).map(|(&c, v)| &cost[c] * v).sum();
        if best.as_ref().is_none_or(|b| obj < *b) {
            best = Some(obj);
        }
    }
    best.map(FdtValue::new).ok_or(Error::NoFeasibleBasis)
}

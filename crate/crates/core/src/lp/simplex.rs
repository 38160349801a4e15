//! Dense exact-rational two-phase simplex with Bland's anti-cycling rule.
//!
//! Optimal solutions are re-verified before being returned: exact primal
//! feasibility, objective recomputation, exact dual feasibility and a zero
//! duality gap. A reported optimum is therefore a certificate pair, not a
//! trusted byproduct of the pivoting.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::scalar::format_rat;
use crate::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("constraint matrix is not rectangular: row {row} has {got} entries, expected {expected}")]
    NotRectangular { row: usize, got: usize, expected: usize },
    #[error("row count {rows} does not match sense count {senses} or rhs count {rhs}")]
    RowMismatch { rows: usize, senses: usize, rhs: usize },
    #[error("duplicate variable name {0:?}")]
    DuplicateName(String),
    #[error("bounds/name/objective length must equal the variable count")]
    BadVariableData,
    #[error("parameters rejected: {0}")]
    BadParams(String),
    #[error("instance cap exceeded: {0}")]
    CapExceeded(String),
    #[error("post-solve verification failed: {0}")]
    VerificationFailed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VarBound {
    Free,
    NonNegative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Objective {
    Minimize,
    Maximize,
}

/// A linear program in row form. `rows[i] . x  <sense[i]>  rhs[i]`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<Rat>,
    pub rows: Vec<Vec<Rat>>,
    pub senses: Vec<Sense>,
    pub rhs: Vec<Rat>,
    pub bounds: Vec<VarBound>,
    pub direction: Objective,
    pub names: Vec<String>,
}

impl LinearProgram {
    pub fn new(
        direction: Objective,
        objective: Vec<Rat>,
        rows: Vec<Vec<Rat>>,
        senses: Vec<Sense>,
        rhs: Vec<Rat>,
        bounds: Vec<VarBound>,
        names: Vec<String>,
    ) -> Result<Self, LpError> {
        let nvars = objective.len();
        if bounds.len() != nvars || names.len() != nvars {
            return Err(LpError::BadVariableData);
        }
        if senses.len() != rows.len() || rhs.len() != rows.len() {
            return Err(LpError::RowMismatch { rows: rows.len(), senses: senses.len(), rhs: rhs.len() });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != nvars {
                return Err(LpError::NotRectangular { row: i, got: row.len(), expected: nvars });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !seen.insert(n.clone()) {
                return Err(LpError::DuplicateName(n.clone()));
            }
        }
        Ok(LinearProgram { objective, rows, senses, rhs, bounds, direction, names })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    fn objective_value(&self, x: &[Rat]) -> Rat {
        dot(&self.objective, x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Exact solution report. When `status` is `Optimal` the primal and dual
/// vectors have been verified: feasibility, complementary slackness and a
/// zero duality gap all hold exactly.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Rat,
    /// One entry per original variable.
    pub primal: Vec<Rat>,
    /// One multiplier per original row, for the problem as stated.
    pub dual: Vec<Rat>,
    /// Names of basic columns in the final standardized tableau.
    pub basis: Vec<String>,
    pub pivots: u64,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// Column classes in the standardized problem.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Col {
    /// Part of original variable `v` with sign `sgn` (free vars are split).
    Var { v: usize, sgn: i8 },
    /// Slack/surplus of row r.
    Slack { r: usize },
    Artificial { r: usize },
}

struct Standardized {
    a: Vec<Vec<Rat>>, // m x n, equality form with rhs >= 0
    b: Vec<Rat>,
    cost: Vec<Rat>, // minimization costs over n columns
    cols: Vec<Col>,
    row_flip: Vec<bool>, // original row multiplied by -1
    row_of: Vec<usize>,  // original row index per standardized row
}

fn standardize(lp: &LinearProgram) -> Standardized {
    let _nvars = lp.num_vars();
    let mut cols = Vec::new();
    for (v, bound) in lp.bounds.iter().enumerate() {
        cols.push(Col::Var { v, sgn: 1 });
        if *bound == VarBound::Free {
            cols.push(Col::Var { v, sgn: -1 });
        }
    }
    let _var_cols = cols.len();
    // Row senses after flipping negative rhs.
    let mut senses = Vec::with_capacity(lp.num_rows());
    let mut row_flip = Vec::with_capacity(lp.num_rows());
    for (i, s) in lp.senses.iter().enumerate() {
        if lp.rhs[i].is_negative() {
            row_flip.push(true);
            senses.push(match s {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            });
        } else {
            row_flip.push(false);
            senses.push(*s);
        }
    }
    for (r, s) in senses.iter().enumerate() {
        if *s != Sense::Eq {
            cols.push(Col::Slack { r });
        }
        let _ = s;
    }
    for (r, s) in senses.iter().enumerate() {
        match s {
            Sense::Le => {}
            _ => cols.push(Col::Artificial { r }),
        }
    }
    let n = cols.len();
    let m = lp.num_rows();
    let mut a = vec![vec![Rat::zero(); n]; m];
    let mut b = Vec::with_capacity(m);
    for r in 0..m {
        let flip = row_flip[r];
        for (j, col) in cols.iter().enumerate() {
            let val = match col {
                Col::Var { v, sgn } => {
                    let base = lp.rows[r][*v].clone();
                    let base = if *sgn < 0 { -base } else { base };
                    if flip {
                        -base
                    } else {
                        base
                    }
                }
                Col::Slack { r: sr } if *sr == r => match senses[r] {
                    Sense::Le => Rat::one(),
                    Sense::Ge => -Rat::one(),
                    Sense::Eq => unreachable!(),
                },
                Col::Artificial { r: ar } if *ar == r => Rat::one(),
                _ => Rat::zero(),
            };
            a[r][j] = val;
        }
        let rhs = if flip { -lp.rhs[r].clone() } else { lp.rhs[r].clone() };
        b.push(rhs);
    }
    // Minimization costs.
    let mut cost = vec![Rat::zero(); n];
    for (j, col) in cols.iter().enumerate() {
        if let Col::Var { v, sgn } = col {
            let c = lp.objective[*v].clone();
            let c = if *sgn < 0 { -c } else { c };
            cost[j] = match lp.direction {
                Objective::Minimize => c,
                Objective::Maximize => -c,
            };
        }
    }
    Standardized { a, b, cost, cols, row_flip, row_of: (0..m).collect() }
}

/// Full dense tableau `B^{-1}[A | b]` with an incrementally maintained
/// reduced-cost row; every pivot costs O(m n) exact operations.
struct Tableau {
    /// m rows of n+1 entries, the last being the current basic value.
    t: Vec<Vec<Rat>>,
    /// n reduced costs followed by the negated objective value.
    cost_row: Vec<Rat>,
    basis: Vec<usize>,
    n: usize,
    pivots: u64,
}

impl Tableau {
    fn new(a: &[Vec<Rat>], b: &[Rat], basis: Vec<usize>) -> Self {
        // The initial basis columns form an identity, so B^{-1}[A|b] = [A|b].
        let n = if a.is_empty() { 0 } else { a[0].len() };
        let t: Vec<Vec<Rat>> = a
            .iter()
            .zip(b)
            .map(|(row, rhs)| {
                let mut r = row.clone();
                r.push(rhs.clone());
                r
            })
            .collect();
        Tableau { t, cost_row: vec![Rat::zero(); n + 1], basis, n, pivots: 0 }
    }

    /// Recomputes the reduced-cost row for a new cost vector (phase switch).
    fn load_costs(&mut self, cost: &[Rat]) {
        let m = self.t.len();
        for j in 0..=self.n {
            let cj = if j < self.n { cost[j].clone() } else { Rat::zero() };
            let mut acc = cj;
            for r in 0..m {
                let cb = &cost[self.basis[r]];
                if !cb.is_zero() && !self.t[r][j].is_zero() {
                    acc -= cb * &self.t[r][j];
                }
            }
            self.cost_row[j] = acc;
        }
    }

    fn pivot(&mut self, enter: usize, row: usize) {
        let m = self.t.len();
        let pivot = self.t[row][enter].clone();
        for j in 0..=self.n {
            self.t[row][j] = &self.t[row][j] / &pivot;
        }
        for r in 0..m {
            if r == row || self.t[r][enter].is_zero() {
                continue;
            }
            let factor = self.t[r][enter].clone();
            for j in 0..=self.n {
                if !self.t[row][j].is_zero() {
                    let delta = &factor * &self.t[row][j];
                    self.t[r][j] -= delta;
                }
            }
        }
        if !self.cost_row[enter].is_zero() {
            let factor = self.cost_row[enter].clone();
            for j in 0..=self.n {
                if !self.t[row][j].is_zero() {
                    let delta = &factor * &self.t[row][j];
                    self.cost_row[j] -= delta;
                }
            }
        }
        self.basis[row] = enter;
        self.pivots += 1;
    }

    /// One simplex phase; `allowed` masks columns that may enter. Returns
    /// false when an unbounded direction is found.
    ///
    /// Pivot selection is Dantzig's rule (most negative reduced cost) with
    /// Bland's rule as the anti-cycling device: cycling requires degenerate
    /// pivots, so after a run of consecutive degenerate pivots the phase
    /// switches to Bland's smallest-index rule until the objective strictly
    /// improves again, which guarantees termination.
    fn run(&mut self, allowed: &[bool]) -> bool {
        let m = self.t.len();
        let stall_limit = m as u32 + 8;
        let mut stalled: u32 = 0;
        loop {
            let bland = stalled > stall_limit;
            let mut entering: Option<usize> = None;
            for j in 0..self.n {
                if !allowed[j] || !self.cost_row[j].is_negative() || self.basis.contains(&j) {
                    continue;
                }
                match entering {
                    None => entering = Some(j),
                    Some(e) => {
                        if !bland && self.cost_row[j] < self.cost_row[e] {
                            entering = Some(j);
                        }
                    }
                }
                if bland {
                    break; // smallest index wins
                }
            }
            let Some(e) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..m {
                if self.t[r][e].is_positive() {
                    let ratio = &self.t[r][self.n] / &self.t[r][e];
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((lr, ratio)) = leave else {
                return false;
            };
            if ratio.is_zero() {
                stalled += 1;
            } else {
                stalled = 0;
            }
            self.pivot(e, lr);
        }
    }

    fn basic_value(&self, r: usize) -> &Rat {
        &self.t[r][self.n]
    }
}

/// Exact Gaussian elimination with partial (first-nonzero) pivoting.
/// Returns None when the matrix is singular.
pub(crate) fn gaussian_solve(mat: &mut [Vec<Rat>], rhs: &mut [Rat]) -> Option<Vec<Rat>> {
    let n = mat.len();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        let pivot = mat[col][col].clone();
        for r in 0..n {
            if r == col || mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &mat[col][c];
                mat[r][c] -= delta;
            }
            let delta = &factor * &rhs[col];
            rhs[r] -= delta;
        }
    }
    Some((0..n).map(|i| &rhs[i] / &mat[i][i]).collect())
}

/// Exact two-phase simplex. Optimal results are verified before returning;
/// infeasible/unbounded are reported as statuses, not errors.
pub fn simplex_solve(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    let std = standardize(lp);
    let m = std.a.len();
    let n = std.cols.len();

    // Initial basis: slack for <= rows, artificial otherwise.
    let mut basis = vec![usize::MAX; m];
    for (j, col) in std.cols.iter().enumerate() {
        match col {
            Col::Slack { r } => {
                if basis[*r] == usize::MAX {
                    basis[*r] = j;
                }
            }
            Col::Artificial { r } => basis[*r] = j,
            _ => {}
        }
    }
    // <= rows take their slack; >= rows have both surplus and artificial, the
    // artificial must start basic (surplus enters with -1 coefficient).
    for (j, col) in std.cols.iter().enumerate() {
        if let Col::Artificial { r } = col {
            basis[*r] = j;
        }
    }
    debug_assert!(basis.iter().all(|&j| j != usize::MAX));

    let mut tab = Tableau::new(&std.a, &std.b, basis);
    let allowed: Vec<bool> = std.cols.iter().map(|c| !matches!(c, Col::Artificial { .. })).collect();

    // Phase 1: minimize the sum of artificials.
    let has_artificial = std.cols.iter().any(|c| matches!(c, Col::Artificial { .. }));
    if has_artificial {
        let phase1_cost: Vec<Rat> = std
            .cols
            .iter()
            .map(|c| if matches!(c, Col::Artificial { .. }) { Rat::one() } else { Rat::zero() })
            .collect();
        tab.load_costs(&phase1_cost);
        let all = vec![true; n];
        if !tab.run(&all) {
            // Phase-1 objective is bounded below by 0; unbounded impossible.
            return Err(LpError::VerificationFailed("phase 1 reported unbounded".into()));
        }
        let phase1_val: Rat = (0..m)
            .map(|r| {
                if matches!(std.cols[tab.basis[r]], Col::Artificial { .. }) {
                    tab.basic_value(r).clone()
                } else {
                    Rat::zero()
                }
            })
            .sum();
        if !phase1_val.is_zero() {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                value: Rat::zero(),
                primal: Vec::new(),
                dual: Vec::new(),
                basis: Vec::new(),
                pivots: tab.pivots,
            });
        }
        // Drive any basic artificial (necessarily at value 0) out of the
        // basis via a degenerate pivot on any nonzero tableau entry. Rows
        // where none exists are redundant and stay parked on the artificial.
        for r in 0..m {
            if matches!(std.cols[tab.basis[r]], Col::Artificial { .. }) {
                let replacement = (0..n)
                    .find(|&j| allowed[j] && !tab.basis.contains(&j) && !tab.t[r][j].is_zero());
                if let Some(j) = replacement {
                    tab.pivot(j, r);
                }
            }
        }
    }

    // Phase 2: original costs; artificial columns may not enter.
    tab.load_costs(&std.cost);
    if !tab.run(&allowed) {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            value: Rat::zero(),
            primal: Vec::new(),
            dual: Vec::new(),
            basis: Vec::new(),
            pivots: tab.pivots,
        });
    }

    // Extract primal solution in original variable space.
    let mut x = vec![Rat::zero(); lp.num_vars()];
    for r in 0..m {
        if let Col::Var { v, sgn } = std.cols[tab.basis[r]] {
            if sgn > 0 {
                x[v] += tab.basic_value(r);
            } else {
                x[v] -= tab.basic_value(r);
            }
        }
    }
    let value = lp.objective_value(&x);

    // Dual vector for the original rows: y from B^T y = c_B on the original
    // standardized matrix, unflipped, and negated back when the original
    // problem was a maximization.
    let y_std = {
        let mut mat: Vec<Vec<Rat>> = (0..m)
            .map(|i| (0..m).map(|r| std.a[r][tab.basis[i]].clone()).collect())
            .collect();
        let mut rhs: Vec<Rat> = tab.basis.iter().map(|&j| std.cost[j].clone()).collect();
        gaussian_solve(&mut mat, &mut rhs).ok_or_else(|| {
            LpError::VerificationFailed("singular basis while extracting duals".into())
        })?
    };
    let mut dual = vec![Rat::zero(); m];
    for r in 0..m {
        let orig = std.row_of[r];
        let mut v = y_std[r].clone();
        if std.row_flip[r] {
            v = -v;
        }
        if lp.direction == Objective::Maximize {
            v = -v;
        }
        dual[orig] = v;
    }

    let basis_names: Vec<String> = tab
        .basis
        .iter()
        .map(|&j| match std.cols[j] {
            Col::Var { v, sgn } => {
                if sgn > 0 {
                    lp.names[v].clone()
                } else {
                    format!("{}-", lp.names[v])
                }
            }
            Col::Slack { r } => format!("slack{r}"),
            Col::Artificial { r } => format!("art{r}"),
        })
        .collect();

    let solution = LpSolution {
        status: LpStatus::Optimal,
        value,
        primal: x,
        dual,
        basis: basis_names,
        pivots: tab.pivots,
    };
    verify_optimal(lp, &solution)?;
    Ok(solution)
}

/// Exact verification of an optimal solution: primal feasibility, objective
/// recomputation, dual feasibility (sign conditions and reduced costs) and
/// complementary slackness, which together pin the optimum.
pub fn verify_optimal(lp: &LinearProgram, sol: &LpSolution) -> Result<(), LpError> {
    let fail = |msg: String| Err(LpError::VerificationFailed(msg));
    if sol.status != LpStatus::Optimal {
        return fail("verify_optimal expects an optimal solution".into());
    }
    // Primal feasibility.
    for (i, row) in lp.rows.iter().enumerate() {
        let lhs = dot(row, &sol.primal);
        let ok = match lp.senses[i] {
            Sense::Le => lhs <= lp.rhs[i],
            Sense::Ge => lhs >= lp.rhs[i],
            Sense::Eq => lhs == lp.rhs[i],
        };
        if !ok {
            return fail(format!("row {i} violated: lhs {}", format_rat(&lhs)));
        }
    }
    for (v, b) in lp.bounds.iter().enumerate() {
        if *b == VarBound::NonNegative && sol.primal[v].is_negative() {
            return fail(format!("variable {} negative", lp.names[v]));
        }
    }
    // Objective recomputation.
    let value = lp.objective_value(&sol.primal);
    if value != sol.value {
        return fail("objective mismatch".into());
    }
    // Dual sign conditions (for min: y >= 0 on >=, y <= 0 on <=; flipped for max).
    for (i, s) in lp.senses.iter().enumerate() {
        let y = &sol.dual[i];
        let ok = match (lp.direction, s) {
            (_, Sense::Eq) => true,
            (Objective::Minimize, Sense::Ge) => !y.is_negative(),
            (Objective::Minimize, Sense::Le) => !y.is_positive(),
            (Objective::Maximize, Sense::Le) => !y.is_negative(),
            (Objective::Maximize, Sense::Ge) => !y.is_positive(),
        };
        if !ok {
            return fail(format!("dual sign wrong on row {i}"));
        }
    }
    // Reduced costs and complementary slackness.
    for v in 0..lp.num_vars() {
        let col: Vec<Rat> = lp.rows.iter().map(|r| r[v].clone()).collect();
        let reduced = &lp.objective[v] - dot(&sol.dual, &col);
        match (lp.direction, lp.bounds[v]) {
            (_, VarBound::Free) => {
                if !reduced.is_zero() {
                    return fail(format!("free variable {} has nonzero reduced cost", lp.names[v]));
                }
            }
            (Objective::Minimize, VarBound::NonNegative) => {
                if reduced.is_negative() {
                    return fail(format!("negative reduced cost on {}", lp.names[v]));
                }
                if sol.primal[v].is_positive() && !reduced.is_zero() {
                    return fail(format!("complementary slackness broken on {}", lp.names[v]));
                }
            }
            (Objective::Maximize, VarBound::NonNegative) => {
                if reduced.is_positive() {
                    return fail(format!("positive reduced cost on {}", lp.names[v]));
                }
                if sol.primal[v].is_positive() && !reduced.is_zero() {
                    return fail(format!("complementary slackness broken on {}", lp.names[v]));
                }
            }
        }
    }
    // Zero duality gap: y . b == value.
    let gap = dot(&sol.dual, &lp.rhs);
    if gap != sol.value {
        return fail(format!("duality gap: y.b = {}", format_rat(&gap)));
    }
    Ok(())
}

/// Mechanical LP dual. The dual of the dual recovers the primal, and
/// [`solve_via_dual`] uses the pair as mutually-certifying certificates.
pub fn dualize(lp: &LinearProgram) -> LinearProgram {
    let m = lp.num_rows();
    let n = lp.num_vars();
    // Dual variable per primal row; represent sign-constrained ones as
    // nonnegative via explicit negation of their column.
    // For max primal: row <= gives y >= 0, row >= gives y <= 0, row = free.
    // For min primal: row <= gives y <= 0, row >= gives y >= 0, row = free.
    let mut bounds = Vec::with_capacity(m);
    let mut negate = Vec::with_capacity(m);
    for s in &lp.senses {
        match (lp.direction, s) {
            (_, Sense::Eq) => {
                bounds.push(VarBound::Free);
                negate.push(false);
            }
            (Objective::Maximize, Sense::Le) | (Objective::Minimize, Sense::Ge) => {
                bounds.push(VarBound::NonNegative);
                negate.push(false);
            }
            (Objective::Maximize, Sense::Ge) | (Objective::Minimize, Sense::Le) => {
                bounds.push(VarBound::NonNegative);
                negate.push(true); // y <= 0 stored as -z, z >= 0
            }
        }
    }
    let sign = |r: usize, v: &Rat| if negate[r] { -v.clone() } else { v.clone() };
    // Dual objective: b^T y (min for max primal, max for min primal).
    let objective: Vec<Rat> = (0..m).map(|r| sign(r, &lp.rhs[r])).collect();
    // Dual rows: one per primal variable, A^T y vs c.
    let mut rows = Vec::with_capacity(n);
    let mut senses = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for v in 0..n {
        let row: Vec<Rat> = (0..m).map(|r| sign(r, &lp.rows[r][v])).collect();
        rows.push(row);
        rhs.push(lp.objective[v].clone());
        senses.push(match (lp.direction, lp.bounds[v]) {
            (_, VarBound::Free) => Sense::Eq,
            // max primal, x >= 0: A^T y >= c ; min primal, x >= 0: A^T y <= c
            (Objective::Maximize, VarBound::NonNegative) => Sense::Ge,
            (Objective::Minimize, VarBound::NonNegative) => Sense::Le,
        });
    }
    let direction = match lp.direction {
        Objective::Maximize => Objective::Minimize,
        Objective::Minimize => Objective::Maximize,
    };
    let names = (0..m).map(|r| format!("y{r}")).collect();
    LinearProgram::new(direction, objective, rows, senses, rhs, bounds, names)
        .expect("dual construction is shape-correct")
}

/// Solves `lp` by solving its mechanical dual (profitable when the row count
/// far exceeds the variable count) and recovering the primal solution from
/// the dual's multipliers. The recovered pair is verified exactly against the
/// original program, so the result carries the same guarantees as
/// [`simplex_solve`].
pub fn solve_via_dual(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    let dual = dualize(lp);
    let dual_sol = simplex_solve(&dual)?;
    match dual_sol.status {
        LpStatus::Infeasible => {
            // Dual infeasible: primal is unbounded or infeasible. Fall back.
            return simplex_solve(lp);
        }
        LpStatus::Unbounded => {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                value: Rat::zero(),
                primal: Vec::new(),
                dual: Vec::new(),
                basis: Vec::new(),
                pivots: dual_sol.pivots,
            });
        }
        LpStatus::Optimal => {}
    }
    // Multipliers of the dual's rows are the primal variable values.
    let primal = dual_sol.dual.clone();
    // Dual variable values are multipliers for the original rows, with the
    // stored negation undone by dualize's sign bookkeeping.
    let mut dual_vals = Vec::with_capacity(lp.num_rows());
    for (r, s) in lp.senses.iter().enumerate() {
        let raw = dual_sol.primal[r].clone();
        let v = match (lp.direction, s) {
            (_, Sense::Eq) => raw,
            (Objective::Maximize, Sense::Le) | (Objective::Minimize, Sense::Ge) => raw,
            _ => -raw,
        };
        dual_vals.push(v);
    }
    let value = lp.objective_value(&primal);
    if value != dual_sol.value {
        return Err(LpError::VerificationFailed(format!(
            "strong duality mismatch: primal {} vs dual {}",
            format_rat(&value),
            format_rat(&dual_sol.value)
        )));
    }
    let solution = LpSolution {
        status: LpStatus::Optimal,
        value,
        primal,
        dual: dual_vals,
        basis: dual_sol.basis.clone(),
        pivots: dual_sol.pivots,
    };
    verify_optimal(lp, &solution)?;
    Ok(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn r(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&v| rat_int(v)).collect()
    }

    #[test]
    fn min_x_geq_3() {
        let lp = LinearProgram::new(
            Objective::Minimize,
            r(&[1]),
            vec![r(&[1])],
            vec![Sense::Ge],
            r(&[3]),
            vec![VarBound::NonNegative],
            vec!["x".into()],
        )
        .unwrap();
        let sol = simplex_solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value, rat_int(3));
        assert_eq!(sol.primal, r(&[3]));
    }

    #[test]
    fn max_x_plus_y() {
        let lp = LinearProgram::new(
            Objective::Maximize,
            r(&[1, 1]),
            vec![r(&[1, 1])],
            vec![Sense::Le],
            r(&[1]),
            vec![VarBound::NonNegative, VarBound::NonNegative],
            vec!["x".into(), "y".into()],
        )
        .unwrap();
        let sol = simplex_solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value, rat_int(1));
    }

    #[test]
    fn infeasible_detected() {
        let lp = LinearProgram::new(
            Objective::Minimize,
            r(&[1]),
            vec![r(&[1]), r(&[1])],
            vec![Sense::Ge, Sense::Le],
            r(&[3, 1]),
            vec![VarBound::NonNegative],
            vec!["x".into()],
        )
        .unwrap();
        assert_eq!(simplex_solve(&lp).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let lp = LinearProgram::new(
            Objective::Maximize,
            r(&[1]),
            vec![r(&[1])],
            vec![Sense::Ge],
            r(&[0]),
            vec![VarBound::NonNegative],
            vec!["x".into()],
        )
        .unwrap();
        assert_eq!(simplex_solve(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        // min |view|: x free with x = -5 forced.
        let lp = LinearProgram::new(
            Objective::Minimize,
            r(&[1]),
            vec![r(&[1])],
            vec![Sense::Eq],
            r(&[-5]),
            vec![VarBound::Free],
            vec!["x".into()],
        )
        .unwrap();
        let sol = simplex_solve(&lp).unwrap();
        assert_eq!(sol.value, rat_int(-5));
        assert_eq!(sol.primal, r(&[-5]));
    }

    #[test]
    fn beale_cycling_instance_terminates() {
        // Classic degenerate instance that cycles under Dantzig's rule.
        let lp = LinearProgram::new(
            Objective::Minimize,
            vec![rat(-3, 4), rat_int(150), rat(-1, 50), rat_int(6)],
            vec![
                vec![rat(1, 4), rat_int(-60), rat(-1, 25), rat_int(9)],
                vec![rat(1, 2), rat_int(-90), rat(-1, 50), rat_int(3)],
                vec![rat_int(0), rat_int(0), rat_int(1), rat_int(0)],
            ],
            vec![Sense::Le, Sense::Le, Sense::Le],
            r(&[0, 0, 1]),
            vec![VarBound::NonNegative; 4],
            vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
        )
        .unwrap();
        let sol = simplex_solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value, rat(-1, 20));
    }

    #[test]
    fn dual_solve_agrees() {
        let lp = LinearProgram::new(
            Objective::Minimize,
            r(&[2, 3]),
            vec![r(&[1, 1]), r(&[1, 3]), r(&[2, 1])],
            vec![Sense::Ge, Sense::Ge, Sense::Ge],
            r(&[4, 6, 5]),
            vec![VarBound::NonNegative, VarBound::NonNegative],
            vec!["x".into(), "y".into()],
        )
        .unwrap();
        let direct = simplex_solve(&lp).unwrap();
        let via_dual = solve_via_dual(&lp).unwrap();
        assert_eq!(direct.value, via_dual.value);
        assert_eq!(direct.status, LpStatus::Optimal);
    }
}

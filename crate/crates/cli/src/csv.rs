//! CSV output: header row, `.` decimals, 17 significant digits, LF endings.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use fermion_core::{distinguished_functionals, extended_inner, Blade, Metric, Multivector, Result};

/// `{:.16e}` with negative zero folded into zero.
pub fn number(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

/// One row per grid point: `t`, one column per blade present at any time,
/// then `norm`, `i`, `int`.
pub fn trajectory(traj: &[(f64, Multivector)], metric: &Metric) -> Result<String> {
    let dim = metric.dim();
    let blades: BTreeSet<Blade> = traj
        .iter()
        .flat_map(|(_, a)| a.terms().map(|(b, _)| b))
        .collect();
    let mut s = String::from("t");
    for b in &blades {
        s.push(',');
        s.push_str(&b.label(dim));
    }
    s.push_str(",norm,i,int\n");
    for (t, a) in traj {
        s.push_str(&number(*t));
        for &b in &blades {
            let _ = write!(s, ",{}", number(a.coefficient(b)));
        }
        let norm = extended_inner(a, a, metric)?.sqrt();
        let (i, int) = distinguished_functionals(a, metric)?;
        let _ = writeln!(s, ",{},{},{}", number(norm), number(i), number(int));
    }
    Ok(s)
}

/// One row per ħ: `hbar`, `‖AB − A∧B‖∞`, `‖AB − A∧B − ħ·½{A,B}‖∞`.
pub fn deformation(rows: &[(f64, f64, f64)]) -> String {
    let mut s = String::from("hbar,clifford_minus_wedge,first_order_residual\n");
    for &(h, d0, d1) in rows {
        let _ = writeln!(s, "{},{},{}", number(h), number(d0), number(d1));
    }
    s
}

//! The asymptotic-constants table: every constant recomputed from the
//! singular expansion, set against exact values at a finite size and against
//! the reference value.

use std::io::Write;

use distree_core::asymptotics::{
    compare, factor_at_singularity, mean_height_exact, parameter_constant, ratio_to_f64,
    AsymptoticConstant, ConstantKind, CrossCheck, ExactOracle, SingularData, Singularity,
};
use distree_core::{models, Real};

use crate::error::CliResult;

/// Singular terms used by the refined predictions.
pub const REFINED_TERMS: usize = 6;

/// Relative tolerance of a refined prediction.
pub const REFINED_TOLERANCE: f64 = 1e-6;

/// Relative tolerance of a leading-order prediction at the check size.
pub fn leading_tolerance(kind: ConstantKind) -> f64 {
    match kind {
        ConstantKind::Leaves
        | ConstantKind::Height
        | ConstantKind::RootDegree
        | ConstantKind::LeftmostPath => 0.01,
        ConstantKind::Count | ConstantKind::Pathlength | ConstantKind::OldLeaves => 0.02,
    }
}

/// One constant with its finite-size checks.
#[derive(Debug, Clone)]
pub struct Row {
    pub constant: AsymptoticConstant,
    /// Exact value at the check size: the mean for parameters, and
    /// `[z^n] A rho^n n^{3/2}` for the count.
    pub exact: f64,
    /// Leading term with the recomputed constant.
    pub leading: CrossCheck,
    /// Several singular terms with exact binomial coefficients, where the
    /// parameter has a rational generating function.
    pub refined: Option<CrossCheck>,
    /// Leading term with the reference constant.
    pub reference: CrossCheck,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub digits: u32,
    pub check_n: usize,
    pub singular: SingularData,
    /// `r(rho)` and `rho r(rho)` for the singular cubic `q = (z - rho) r`.
    pub cubic_slopes: (Real, Real),
    pub rows: Vec<Row>,
}

/// `n^{e/2}` for `e = exponent_twice`, with the `sqrt(pi)` of the height.
fn scale(kind: ConstantKind, n: usize) -> f64 {
    let n = n as f64;
    match kind {
        ConstantKind::Count => 1.0,
        ConstantKind::Height => (std::f64::consts::PI * n).sqrt(),
        _ => n.powf(kind.exponent_twice() as f64 / 2.0),
    }
}

pub fn build(digits: u32, check_n: usize) -> CliResult<Report> {
    if check_n == 0 {
        return Err(distree_core::Error::EmptyInput.into());
    }
    let phi = models::distinguished_phi();
    let sing = Singularity::new(&phi, digits)?;
    let oracle = ExactOracle::new(check_n)?;
    let heights = mean_height_exact(check_n)?;
    let cubic_slopes = factor_at_singularity(&models::singular_cubic(), &sing.data)?;
    let mut rows = Vec::new();
    for kind in ConstantKind::ALL {
        let constant = parameter_constant(&sing, kind)?;
        let recomputed = constant.recomputed.to_f64();
        let reference: f64 = constant.reference.parse().expect("reference is a decimal");
        let exact = match kind {
            ConstantKind::Count => oracle.count_ratio(&sing, check_n)? * recomputed,
            ConstantKind::Height => ratio_to_f64(&heights[check_n - 1]),
            _ => oracle.mean_f64(kind, check_n)?,
        };
        let s = scale(kind, check_n);
        let tol = leading_tolerance(kind);
        let leading = compare(exact, recomputed * s, check_n, tol);
        let reference = compare(exact, reference * s, check_n, tol);
        let refined = match kind.total_gf() {
            Some(gf) => {
                let expansion = sing.expand(&gf)?;
                let predicted = sing.predict_mean_exact(&expansion, check_n, REFINED_TERMS);
                Some(compare(
                    exact,
                    predicted.to_f64(),
                    check_n,
                    REFINED_TOLERANCE,
                ))
            }
            None if kind == ConstantKind::Count => {
                let count = sing.count_expansion();
                let normalized = count.transfer_exact(check_n, REFINED_TERMS).to_f64()
                    * (check_n as f64).powf(1.5);
                Some(compare(exact, normalized, check_n, REFINED_TOLERANCE))
            }
            None => None,
        };
        rows.push(Row {
            constant,
            exact,
            leading,
            refined,
            reference,
        });
    }
    Ok(Report {
        digits,
        check_n,
        singular: sing.data.clone(),
        cubic_slopes,
        rows,
    })
}

fn growth(kind: ConstantKind) -> &'static str {
    match kind {
        ConstantKind::Count => "rho^-n n^-3/2",
        ConstantKind::Height => "sqrt(pi n)",
        ConstantKind::Leaves | ConstantKind::OldLeaves => "n",
        ConstantKind::RootDegree | ConstantKind::LeftmostPath => "1",
        ConstantKind::Pathlength => "n^3/2",
    }
}

pub fn write(out: &mut dyn Write, r: &Report) -> CliResult<()> {
    let d = r.digits as usize;
    let sd = &r.singular;
    writeln!(out, "structural constants ({} digits)", r.digits)?;
    writeln!(out, "tau\t{}", sd.tau.to_decimal(d))?;
    writeln!(out, "rho\t{}", sd.rho.to_decimal(d))?;
    writeln!(out, "amplitude\t{}", sd.amplitude.to_decimal(d))?;
    writeln!(out, "Phi(tau)\t{}", sd.phi0.to_decimal(d))?;
    writeln!(out, "Phi'(tau)\t{}", sd.phi1.to_decimal(d))?;
    writeln!(out, "Phi''(tau)\t{}", sd.phi2.to_decimal(d))?;
    writeln!(out, "q'(rho)\t{}", r.cubic_slopes.0.to_decimal(d))?;
    writeln!(out, "rho q'(rho)\t{}", r.cubic_slopes.1.to_decimal(d))?;
    writeln!(out)?;
    writeln!(out, "asymptotic constants (checks at n = {})", r.check_n)?;
    writeln!(
        out,
        "kind\tgrowth\treference\trecomputed\tstatus\texact\tleading_rel_err\trefined_rel_err\treference_rel_err"
    )?;
    for row in &r.rows {
        let c = &row.constant;
        let refined = row
            .refined
            .as_ref()
            .map_or_else(|| "-".to_string(), |x| format!("{:.3e}", x.relative_error));
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{:.9}\t{:.3e}\t{}\t{:.3e}",
            c.kind,
            growth(c.kind),
            c.reference,
            c.recomputed.to_decimal(12),
            c.status,
            row.exact,
            row.leading.relative_error,
            refined,
            row.reference.relative_error,
        )?;
    }
    writeln!(out)?;
    writeln!(out, "notes")?;
    for row in &r.rows {
        writeln!(out, "{}\t{}", row.constant.kind, row.constant.note)?;
    }
    Ok(())
}

use tin_core::detmodel::{separability_verdict, Conclusion, InvertibilityStatus, SeparabilityOptions};
use tin_core::fixtures;
use tin_core::optimize::{solve_lp, sum_gdof, LpSolution, VarSign};
use tin_core::rational::{frac, int, render, Rational};
use tin_core::region::{combined_sum_bounds, separate_tin_decomposable, Decomposition, GdofTuple};

use crate::{Failure, Flags, Status};

struct Tally {
    failed: usize,
}

impl Tally {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed += 1;
        }
    }
}

pub fn run(flags: &Flags) -> Result<Status, Failure> {
    let eps = flags.epsilon.clone().unwrap_or_else(fixtures::default_epsilon);
    let mut tally = Tally { failed: 0 };

    let ex1 = fixtures::example1();
    let sums = ex1
        .channels()
        .iter()
        .map(|ch| sum_gdof(ch).map(|s| s.value))
        .collect::<Result<Vec<_>, _>>()?;
    tally.check(
        "example1 per-sub-channel sum-capacity",
        sums.iter().all(|v| *v == int(6)),
        format!("[{}]", sums.iter().map(render).collect::<Vec<_>>().join(", ")),
    );
    let verdict = separability_verdict(&ex1, &SeparabilityOptions::default())?;
    let total = match &verdict.conclusion {
        Conclusion::Separable { total } => Some(total.clone()),
        Conclusion::Inapplicable { .. } => None,
    };
    tally.check(
        "example1 separable",
        total == Some(int(18)),
        total.map_or("inapplicable".into(), |t| format!("total {}", render(&t))),
    );

    let ex2 = fixtures::example2();
    let verdict = separability_verdict(&ex2, &SeparabilityOptions::default())?;
    let third = &verdict.subchannels[2];
    let witnessed = third
        .certificates
        .iter()
        .filter(|c| !c.invertible)
        .map(|c| c.kernel_verified(ex2.channel(2)))
        .collect::<Result<Vec<_>, _>>()?;
    tally.check(
        "example2 sub-channel 3 not invertible",
        third.status == InvertibilityStatus::NotInvertible && !witnessed.is_empty() && witnessed.iter().all(|&v| v),
        format!("{}, {} verified kernel witness(es)", third.status.label(), witnessed.len()),
    );
    tally.check(
        "example2 separability inapplicable",
        !verdict.is_separable(),
        match &verdict.conclusion {
            Conclusion::Inapplicable { reasons } => reasons.join("; "),
            Conclusion::Separable { .. } => "separable".into(),
        },
    );

    let gap = fixtures::gap(&eps)?;
    let bounds = combined_sum_bounds(&gap)?;
    let point = GdofTuple::new(vec![int(2), frac(1, 2), frac(1, 2)])?;
    let inside = bounds.contains(&point)?;
    let split = separate_tin_decomposable(&gap, &point)?;
    tally.check(
        &format!("gap ε={} (2,1/2,1/2) meets combined bounds", render(&eps)),
        inside,
        format!("{} violated bound(s)", bounds.violated(&point).len()),
    );
    tally.check(
        &format!("gap ε={} (2,1/2,1/2) not separately achievable", render(&eps)),
        !split.is_feasible(),
        match &split {
            Decomposition::Infeasible { certificate, .. } => format!("Farkas certificate over {} rows", certificate.len()),
            Decomposition::Feasible { .. } => "decomposition found".into(),
        },
    );
    let ones = GdofTuple::new(vec![int(1); 3])?;
    let halves = vec![vec![frac(1, 2); 3]; 2];
    let split = separate_tin_decomposable(&gap, &ones)?;
    let ok = match &split {
        Decomposition::Feasible { parts } => *parts == halves,
        Decomposition::Infeasible { .. } => false,
    };
    let detail = match &split {
        Decomposition::Feasible { parts } => parts
            .iter()
            .map(|p| format!("({})", p.iter().map(render).collect::<Vec<_>>().join(", ")))
            .collect::<Vec<_>>()
            .join(" + "),
        Decomposition::Infeasible { .. } => "infeasible".into(),
    };
    tally.check("gap (1,1,1) splits into halves", ok, detail);

    for (sign, expected) in [(VarSign::NonNegative, int(20)), (VarSign::Free, int(25))] {
        let value: Option<Rational> = match solve_lp(&fixtures::lp_caution(sign)) {
            LpSolution::Optimal { value, .. } => Some(value),
            _ => None,
        };
        tally.check(
            &format!("rate LP with {sign:?} variables"),
            value.as_ref() == Some(&expected),
            value.map_or("not optimal".into(), |v| format!("optimum {}", render(&v))),
        );
    }

    println!("{} check(s) failed", tally.failed);
    Ok(if tally.failed == 0 { Status::Positive } else { Status::Negative })
}

use serde_json::{json, Value};
use tin_core::cycles::parse_partition;
use tin_core::detmodel::{
    invertible_gf2, separability_verdict, Conclusion, InvertibilityCertificate, InvertibilityStatus,
    SeparabilityOptions,
};
use tin_core::model::{check_tin as tin_verdict, quantize, Mode, TinVerdict};
use tin_core::optimize::sum_gdof;
use tin_core::rational::{render, render_all, Rational};
use tin_core::region::{
    combined_sum_bounds, contains, region_constraints, separate_tin_decomposable, violations, Decomposition,
    GdofTuple, RegionLabel,
};
use tin_core::report::{predecessor_array, save_report, AnalysisReport, CertificateReport};

use crate::input::load;
use crate::{Failure, Flags, Status};

fn emit(flags: &Flags, value: Value, text: impl FnOnce() -> String) {
    if flags.json {
        println!("{}", serde_json::to_string_pretty(&value).expect("json value serializes"));
    } else {
        print!("{}", text());
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Positive
    } else {
        Status::Negative
    }
}

fn tin_json(v: &TinVerdict) -> Value {
    json!({
        "holds": v.holds,
        "strict": v.strict,
        "violations": v.violations.iter().map(|x| json!({
            "user": x.user + 1,
            "desired": render(&x.desired),
            "incoming": render(&x.incoming),
            "outgoing": render(&x.outgoing),
        })).collect::<Vec<_>>(),
    })
}

fn tin_text(v: &TinVerdict) -> String {
    let mut s = match (v.holds, v.strict) {
        (true, true) => "TIN-optimal (strict)".to_string(),
        (true, false) => "TIN-optimal (with equality)".to_string(),
        (false, _) => "not TIN-optimal".to_string(),
    };
    for x in &v.violations {
        s.push_str(&format!(
            "\n    user {}: desired {} < incoming {} + outgoing {}",
            x.user + 1,
            render(&x.desired),
            render(&x.incoming),
            render(&x.outgoing)
        ));
    }
    s
}

fn tuple(flags: &Flags, users: usize) -> Result<GdofTuple, Failure> {
    let text = flags
        .tuple
        .as_deref()
        .ok_or_else(|| Failure::Input("--tuple is required".into()))?;
    let t = GdofTuple::parse(text)?;
    if t.len() != users {
        return Err(Failure::Input(format!("--tuple has {} entries, network has {users} users", t.len())));
    }
    Ok(t)
}

pub fn check_tin(source: &str, flags: &Flags) -> Result<Status, Failure> {
    let input = load(source, flags)?;
    let net = &input.network;
    let verdicts: Vec<TinVerdict> = net.channels().iter().map(tin_verdict).collect();
    let quantized = match (&flags.log_p, net.mode()) {
        (Some(l), Mode::Gdof) => Some(
            net.channels()
                .iter()
                .map(|ch| quantize(ch, l).map(|q| tin_verdict(&q)))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        _ => None,
    };
    let all = verdicts.iter().all(|v| v.holds);
    emit(
        flags,
        json!({
            "tin_optimal": all,
            "subchannels": verdicts.iter().map(tin_json).collect::<Vec<_>>(),
            "quantized": quantized.as_ref().map(|q| q.iter().map(tin_json).collect::<Vec<_>>()),
            "warnings": input.warnings,
        }),
        || {
            let mut s = String::new();
            for (m, v) in verdicts.iter().enumerate() {
                s.push_str(&format!("sub-channel {}: {}\n", m + 1, tin_text(v)));
            }
            if let Some(q) = &quantized {
                for (m, v) in q.iter().enumerate() {
                    s.push_str(&format!("sub-channel {} quantized: {}\n", m + 1, tin_text(v)));
                }
            }
            s
        },
    );
    Ok(status(all))
}

pub fn sum(source: &str, flags: &Flags) -> Result<Status, Failure> {
    let input = load(source, flags)?;
    let sums = input
        .network
        .channels()
        .iter()
        .map(sum_gdof)
        .collect::<Result<Vec<_>, _>>()?;
    let total: Rational = sums.iter().map(|s| &s.value).sum();
    let unit = match input.network.mode() {
        Mode::Gdof => "sum-GDoF",
        Mode::Deterministic => "sum-capacity",
    };
    emit(
        flags,
        json!({
            "measure": unit,
            "subchannels": sums.iter().enumerate().map(|(m, s)| json!({
                "subchannel": m + 1,
                "value": render(&s.value),
                "label": s.label.describe(),
                "lp": s.lp.as_ref().map(render),
                "assignment": render(&s.assignment),
                "brute_force": s.brute_force.as_ref().map(render),
                "methods_agree": s.methods_agree,
                "partition": predecessor_array(&s.partition),
                "lp_point": s.lp_point.as_deref().map(render_all),
            })).collect::<Vec<_>>(),
            "total": render(&total),
            "warnings": input.warnings,
        }),
        || {
            let mut s = String::new();
            for (m, x) in sums.iter().enumerate() {
                let mut methods = vec![format!("assignment {}", render(&x.assignment))];
                if let Some(v) = &x.lp {
                    methods.push(format!("LP {}", render(v)));
                }
                if let Some(v) = &x.brute_force {
                    methods.push(format!("exhaustive {}", render(v)));
                }
                s.push_str(&format!(
                    "sub-channel {}: {unit} {} [{}] partition {} ({})\n",
                    m + 1,
                    render(&x.value),
                    x.label.describe(),
                    x.partition,
                    methods.join(", ")
                ));
            }
            s.push_str(&format!("total over sub-channels: {}\n", render(&total)));
            s
        },
    );
    Ok(Status::Positive)
}

pub fn region(source: &str, flags: &Flags) -> Result<Status, Failure> {
    let input = load(source, flags)?;
    let mut per = Vec::new();
    for ch in input.network.channels() {
        per.push((RegionLabel::of(ch), region_constraints(ch)?));
    }
    emit(
        flags,
        json!({
            "subchannels": per.iter().enumerate().map(|(m, (label, cs))| json!({
                "subchannel": m + 1,
                "label": label.describe(),
                "constraints": cs.iter().map(|c| json!({
                    "users": c.cycle.users().iter().map(|u| u + 1).collect::<Vec<_>>(),
                    "rhs": render(&c.rhs),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "warnings": input.warnings,
        }),
        || {
            let mut s = String::new();
            for (m, (label, cs)) in per.iter().enumerate() {
                s.push_str(&format!("sub-channel {} ({}):\n", m + 1, label.describe()));
                for c in cs {
                    s.push_str(&format!("  cycle {}: {c}\n", c.cycle));
                }
            }
            s
        },
    );
    Ok(Status::Positive)
}

pub fn member(source: &str, flags: &Flags) -> Result<Status, Failure> {
    let input = load(source, flags)?;
    let net = &input.network;
    let t = tuple(flags, net.users())?;
    let mut per = Vec::new();
    for ch in net.channels() {
        let cs = region_constraints(ch)?;
        let broken: Vec<String> = violations(&cs, &t).iter().map(ToString::to_string).collect();
        per.push((contains(&cs, &t)?, broken));
    }
    let (inside, scope, broken) = match flags.subchannel {
        Some(m) if m == 0 || m > net.subchannels() => {
            return Err(Failure::Input(format!("--subchannel {m} outside 1..={}", net.subchannels())))
        }
        Some(m) => (per[m - 1].0, format!("sub-channel {m} region"), per[m - 1].1.clone()),
        None if net.subchannels() == 1 => (per[0].0, "region".to_string(), per[0].1.clone()),
        None => {
            let bounds = combined_sum_bounds(net)?;
            let broken: Vec<String> = bounds.violated(&t).iter().map(ToString::to_string).collect();
            (broken.is_empty(), "combined sum bounds".to_string(), broken)
        }
    };
    emit(
        flags,
        json!({
            "tuple": render_all(t.values()),
            "scope": scope,
            "inside": inside,
            "violated": broken,
            "per_subchannel": per.iter().map(|(ok, _)| ok).collect::<Vec<_>>(),
            "warnings": input.warnings,
        }),
        || {
            let mut s = format!("{t} {} the {scope}\n", if inside { "lies in" } else { "lies outside" });
            for b in &broken {
                s.push_str(&format!("  violated: {b}\n"));
            }
            if net.subchannels() > 1 {
                for (m, (ok, _)) in per.iter().enumerate() {
                    s.push_str(&format!("  sub-channel {} region: {}\n", m + 1, if *ok { "inside" } else { "outside" }));
                }
            }
            s
        },
    );
    Ok(status(inside))
}

pub fn combined_bounds(source: &str, flags: &Flags) -> Result<Status, Failure> {
    let input = load(source, flags)?;
    let b = combined_sum_bounds(&input.network)?;
    emit(
        flags,
        json!({
            "tight": b.tight,
            "bounds": b.bounds.iter().map(|x| json!({
                "users": x.users.iter().map(|u| u + 1).collect::<Vec<_>>(),
                "per_subchannel": render_all(&x.per_subchannel),
                "total": render(&x.total),
            })).collect::<Vec<_>>(),
            "warnings": input.warnings,
        }),
        || {
            let mut s = String::new();
            if !b.tight {
                s.push_str("note: some sub-channel fails the TIN condition; bounds are not tight\n");
            }
            for x in &b.bounds {
                s.push_str(&format!("{x}   ({})\n", render_all(&x.per_subchannel).join(" + ")));
            }
            s
        },
    );
    Ok(Status::Positive)
}

pub fn decompose(source: &str, flags: &Flags) -> Result<Status, Failure> {
    let input = load(source, flags)?;
    let t = tuple(flags, input.network.users())?;
    let d = separate_tin_decomposable(&input.network, &t)?;
    let value = match &d {
        Decomposition::Feasible { parts } => json!({
            "tuple": render_all(t.values()),
            "decomposable": true,
            "parts": parts.iter().map(|p| render_all(p)).collect::<Vec<_>>(),
            "warnings": input.warnings,
        }),
        Decomposition::Infeasible { certificate, .. } => json!({
            "tuple": render_all(t.values()),
            "decomposable": false,
            "certificate": certificate.iter().map(|(label, y)| json!({
                "constraint": label,
                "multiplier": render(y),
            })).collect::<Vec<_>>(),
            "warnings": input.warnings,
        }),
    };
    emit(flags, value, || match &d {
        Decomposition::Feasible { parts } => {
            let mut s = format!("{t} is achievable by separate TIN:\n");
            for (m, p) in parts.iter().enumerate() {
                s.push_str(&format!("  sub-channel {}: ({})\n", m + 1, render_all(p).join(", ")));
            }
            s
        }
        Decomposition::Infeasible { certificate, .. } => {
            let mut s = format!("{t} is not achievable by separate TIN; Farkas multipliers:\n");
            for (label, y) in certificate {
                s.push_str(&format!("  {:>6}  {label}\n", render(y)));
            }
            s
        }
    });
    Ok(status(d.is_feasible()))
}

fn certificate_text(c: &InvertibilityCertificate) -> String {
    let mut s = format!(
        "partition {}: {} input bits, {} output bits, rank {} -> {}",
        c.partition,
        c.input_bits,
        c.output_bits,
        c.rank,
        if c.invertible { "invertible" } else { "not invertible" }
    );
    if let Some(k) = &c.kernel {
        let bits: Vec<String> = k.iter().map(ToString::to_string).collect();
        s.push_str(&format!("\n      kernel witness: {{{}}} map to zero", bits.join(", ")));
    }
    s
}

pub fn invertibility(source: &str, flags: &Flags) -> Result<Status, Failure> {
    let input = load(source, flags)?;
    let net = &input.network;
    if let Some(text) = &flags.partition {
        if net.mode() != Mode::Deterministic {
            return Err(Failure::Input("--partition probes need a deterministic network".into()));
        }
        let p = parse_partition(net.users(), text)?;
        let certs = net
            .channels()
            .iter()
            .map(|ch| invertible_gf2(ch, &p))
            .collect::<Result<Vec<_>, _>>()?;
        let all = certs.iter().all(|c| c.invertible);
        emit(
            flags,
            json!({
                "partition": predecessor_array(&p),
                "subchannels": certs.iter().map(CertificateReport::from).collect::<Vec<_>>(),
                "warnings": input.warnings,
            }),
            || {
                let mut s = String::new();
                for (m, c) in certs.iter().enumerate() {
                    s.push_str(&format!("sub-channel {}: {}\n", m + 1, certificate_text(c)));
                }
                s
            },
        );
        return Ok(status(all));
    }

    // Invertibility is examined on every sub-channel, including M = 1.
    let options = SeparabilityOptions {
        log2_p: flags.log_p.clone(),
        ..Default::default()
    };
    let probe = if net.subchannels() == 1 {
        tin_core::model::ParallelNetwork::new(vec![net.channel(0).clone(), net.channel(0).clone()])?
    } else {
        net.clone()
    };
    let verdict = separability_verdict(&probe, &options)?;
    let analyses = &verdict.subchannels[..net.subchannels()];
    let all = analyses.iter().all(|a| a.status == InvertibilityStatus::Invertible);
    emit(
        flags,
        json!({
            "subchannels": analyses.iter().enumerate().map(|(m, a)| json!({
                "subchannel": m + 1,
                "status": a.status.label(),
                "method": a.method.label(),
                "conditions": a.conditions,
                "certificates": a.certificates.iter().map(CertificateReport::from).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "warnings": input.warnings,
        }),
        || {
            let mut s = String::new();
            for (m, a) in analyses.iter().enumerate() {
                s.push_str(&format!("sub-channel {}: {} ({})\n", m + 1, a.status.label(), a.method.label()));
                for c in &a.certificates {
                    s.push_str(&format!("    {}\n", certificate_text(c)));
                }
                for c in &a.conditions {
                    s.push_str(&format!("    holds: {c}\n"));
                }
            }
            s
        },
    );
    Ok(status(all))
}

pub fn separability(source: &str, flags: &Flags) -> Result<Status, Failure> {
    let input = load(source, flags)?;
    let options = SeparabilityOptions {
        log2_p: flags.log_p.clone(),
        ..Default::default()
    };
    let verdict = separability_verdict(&input.network, &options)?;
    if flags.json {
        let report = AnalysisReport::new(input.network.users(), &verdict, input.warnings.clone());
        print!("{}", save_report(&report));
    } else {
        for (m, a) in verdict.subchannels.iter().enumerate() {
            println!(
                "sub-channel {}: {}; value {}; {} ({})",
                m + 1,
                tin_text(&a.tin).lines().next().unwrap_or_default(),
                render(&a.sum.value),
                a.status.label(),
                a.method.label()
            );
        }
        match &verdict.conclusion {
            Conclusion::Separable { total } => {
                let what = match verdict.mode {
                    Mode::Gdof => "sum-GDoF",
                    Mode::Deterministic => "sum-capacity",
                };
                println!("separable: separate TIN over each sub-channel achieves the {what} {}", render(total));
            }
            Conclusion::Inapplicable { reasons } => {
                println!("separability result inapplicable:");
                for r in reasons {
                    println!("  {r}");
                }
            }
        }
    }
    Ok(status(verdict.is_separable()))
}

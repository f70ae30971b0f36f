use std::collections::BTreeSet;
use std::fmt::Write as _;

use cycdes_core::code::{cyclicity_audit, CyclicityReport};
use cycdes_core::combinatorics::{containing_kernel_count, exact_kernel_count};
use cycdes_core::design::{Basis, VerdictReport};
use cycdes_core::gf::is_prime;
use cycdes_core::linearized::{enumerate_subspaces, KernelCensus};
use cycdes_core::{
    blocks_of_weight, build_generator, design_report, weight_distribution, DesignLimits,
    DesignReport, Field, WeightDistribution,
};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::{exit, Command, Failure, Format, RunConfig};

/// Codeword count up to which the cyclic-shift audit is exhaustive.
const CYCLICITY_EXHAUSTIVE: u64 = 1 << 20;
/// Sample size for the cyclic-shift audit above that.
const CYCLICITY_SAMPLES: u64 = 10_000;

type Outcome = Result<(String, u8), Failure>;

fn bad(message: impl Into<String>) -> Failure {
    Failure {
        code: exit::BAD_PARAMETERS,
        message: message.into(),
    }
}

struct Params {
    p: u64,
    m: u32,
    h: u32,
}

fn field_params(cfg: &RunConfig) -> Result<(u64, u32), Failure> {
    let p = cfg.p.ok_or_else(|| bad("--p is required"))?;
    let m = cfg.m.ok_or_else(|| bad("--m is required"))?;
    if !is_prime(p) {
        return Err(bad(format!("{p} is not a prime")));
    }
    if m == 0 {
        return Err(bad("--m must be positive"));
    }
    Ok((p, m))
}

fn code_params(cfg: &RunConfig) -> Result<Params, Failure> {
    let (p, m) = field_params(cfg)?;
    let h = cfg.h.ok_or_else(|| bad("--h is required"))?;
    if h >= m {
        return Err(bad(format!("h={h} must be less than m={m}")));
    }
    if cfg.budget == 0 {
        return Err(bad("--budget must be at least 1"));
    }
    Ok(Params { p, m, h })
}

pub fn run(cfg: &RunConfig) -> Outcome {
    match cfg.command {
        Command::FieldInfo => field_info(cfg),
        Command::Weights => weights(cfg),
        Command::Designs => designs(cfg),
        Command::Verify => verify(cfg),
        Command::Audit => audit(cfg),
    }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn modulus_text(modulus: &[u32]) -> String {
    let terms: Vec<String> = modulus
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            match i {
                0 => c.to_string(),
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            }
        })
        .collect();
    terms.join(" + ")
}

fn field_info(cfg: &RunConfig) -> Outcome {
    let (p, m) = field_params(cfg)?;
    let field = Field::new(p, m)?;
    let q = field.q();
    let alpha = field.alpha();
    let order = (1..q)
        .find(|&k| field.pow(alpha, k) == cycdes_core::FieldElement::ONE)
        .unwrap_or(0);
    let primitive = order == q - 1;
    let out = match cfg.format {
        Format::Json => json_line(&json!({
            "p": p,
            "m": m,
            "q": q,
            "modulus": field.modulus(),
            "alpha_order": order,
            "primitive": primitive,
        })),
        Format::Csv => {
            let coeffs: Vec<String> = field.modulus().iter().map(u32::to_string).collect();
            format!(
                "p,m,q,modulus,alpha_order,primitive\n{p},{m},{q},{},{order},{primitive}\n",
                coeffs.join(" ")
            )
        }
        Format::Text => format!(
            "GF({p}^{m}), q = {q}\nmodulus: {}\nalpha order: {order} ({})\n",
            modulus_text(field.modulus()),
            if primitive { "primitive" } else { "NOT primitive" }
        ),
    };
    Ok((out, if primitive { exit::OK } else { exit::MISMATCH }))
}

struct WeightRow {
    weight: u64,
    formula: BigUint,
    brute: Option<BigUint>,
}

impl WeightRow {
    fn matches(&self) -> Option<bool> {
        self.brute.as_ref().map(|b| *b == self.formula)
    }
}

fn weight_rows(formula: &WeightDistribution, brute: Option<&WeightDistribution>) -> Vec<WeightRow> {
    let mut keys: BTreeSet<u64> = formula.counts.keys().copied().collect();
    if let Some(b) = brute {
        keys.extend(b.counts.keys().copied());
    }
    keys.into_iter()
        .map(|w| WeightRow {
            weight: w,
            formula: formula.get(w),
            brute: brute.map(|b| b.get(w)),
        })
        .collect()
}

fn weights(cfg: &RunConfig) -> Outcome {
    let Params { p, m, h } = code_params(cfg)?;
    let formula = WeightDistribution::from_formula(p, m, h)?;
    let brute = if cfg.formula_only {
        None
    } else {
        let field = Field::new(p, m)?;
        Some(weight_distribution(&field, h as usize, cfg.budget)?)
    };
    let rows = weight_rows(&formula, brute.as_ref());
    let all_match = rows.iter().all(|r| r.matches() != Some(false));
    let out = match cfg.format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "weight": r.weight.to_string(),
                        "formula": r.formula.to_string(),
                        "brute_force": r.brute.as_ref().map(|b| b.to_string()),
                        "match": r.matches(),
                    })
                })
                .collect();
            json_line(&json!({
                "p": p,
                "m": m,
                "h": h,
                "formula_only": cfg.formula_only,
                "rows": rows,
                "all_match": all_match,
            }))
        }
        Format::Csv | Format::Text => {
            let mut s = String::from("weight,formula,brute_force,match\n");
            for r in &rows {
                let (brute, verdict) = match (&r.brute, r.matches()) {
                    (Some(b), Some(true)) => (b.to_string(), "match"),
                    (Some(b), _) => (b.to_string(), "mismatch"),
                    (None, _) => (String::new(), "skipped"),
                };
                let _ = writeln!(s, "{},{},{},{}", r.weight, r.formula, brute, verdict);
            }
            s
        }
    };
    Ok((out, if all_match { exit::OK } else { exit::MISMATCH }))
}

fn limits(cfg: &RunConfig) -> Result<DesignLimits, Failure> {
    let defaults = DesignLimits::default();
    if cfg.t_max == 0 {
        return Err(bad("--t must be at least 1"));
    }
    if cfg.t_max > defaults.max_t && !cfg.allow_large_t {
        return Err(Failure {
            code: exit::BUDGET,
            message: format!("--t {} is above {}; pass --allow-large-t to run it anyway", cfg.t_max, defaults.max_t),
        });
    }
    Ok(DesignLimits {
        max_t: cfg.t_max.max(defaults.max_t),
        ..defaults
    })
}

fn verdict_text(v: &VerdictReport) -> String {
    let observed = match &v.verdict.lambda {
        Some(l) => format!("holds λ={l}"),
        None => format!(
            "fails (covers {}..{})",
            v.verdict.min_cover, v.verdict.max_cover
        ),
    };
    let check = match (&v.expected_lambda, v.matches, v.basis) {
        (Some(e), Some(true), _) => format!("expected {e}, match"),
        (Some(e), _, _) => format!("expected {e}, MISMATCH"),
        (None, _, Basis::EmpiricalOnly) => "empirical only".to_string(),
        (None, _, Basis::Theorem) => String::new(),
    };
    format!("t={} {observed} [{check}]", v.verdict.t)
}

fn report_text(r: &DesignReport) -> String {
    let mut s = format!("C_D{} over GF({}^{}), q = {}\n", r.h, r.p, r.m, r.q);
    for c in &r.classes {
        let _ = writeln!(
            s,
            "weight {} (j={}): {} blocks of size {}, multiplicity {}",
            c.weight, c.j, c.block_count, c.block_size, c.multiplicity
        );
        for v in &c.verdicts {
            let _ = writeln!(s, "  {}", verdict_text(v));
        }
        if let Some(comp) = &c.complement {
            let _ = writeln!(s, "  complement {}", verdict_text(comp));
        }
    }
    if r.mismatches.is_empty() {
        s.push_str("all closed forms match\n");
    } else {
        for m in &r.mismatches {
            let _ = writeln!(s, "MISMATCH: {m}");
        }
    }
    s
}

fn report_csv(r: &DesignReport) -> String {
    let mut s = String::from("weight,j,blocks,multiplicity,t,holds,lambda,expected_lambda,basis,match\n");
    for c in &r.classes {
        let rows = c
            .verdicts
            .iter()
            .map(|v| (c.weight.to_string(), v))
            .chain(c.complement.iter().map(|v| (format!("complement-{}", c.weight), v)));
        for (label, v) in rows {
            let _ = writeln!(
                s,
                "{label},{},{},{},{},{},{},{},{},{}",
                c.j,
                c.block_count,
                c.multiplicity,
                v.verdict.t,
                v.verdict.holds,
                v.verdict.lambda.as_ref().map(|l| l.to_string()).unwrap_or_default(),
                v.expected_lambda.as_ref().map(|l| l.to_string()).unwrap_or_default(),
                match v.basis {
                    Basis::Theorem => "theorem",
                    Basis::EmpiricalOnly => "empirical_only",
                },
                v.matches.map(|m| m.to_string()).unwrap_or_default(),
            );
        }
    }
    s
}

fn designs(cfg: &RunConfig) -> Outcome {
    let Params { p, m, h } = code_params(cfg)?;
    let field = Field::new(p, m)?;
    if let Some(w) = cfg.weight {
        let set = blocks_of_weight(&field, h as usize, w, cfg.budget)?;
        return Ok((set.to_design_text(), exit::OK));
    }
    let report = design_report(&field, h as usize, cfg.t_max, cfg.budget, &limits(cfg)?)?;
    let out = match cfg.format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Csv => report_csv(&report),
        Format::Text => report_text(&report),
    };
    Ok((out, exit::OK))
}

fn verify(cfg: &RunConfig) -> Outcome {
    let Params { p, m, h } = code_params(cfg)?;
    let field = Field::new(p, m)?;
    let formula = WeightDistribution::from_formula(p, m, h)?;
    let brute = weight_distribution(&field, h as usize, cfg.budget)?;
    let weights_match = formula == brute;
    let report = design_report(&field, h as usize, cfg.t_max, cfg.budget, &limits(cfg)?)?;
    let verified = weights_match && report.all_match();
    let out = match cfg.format {
        Format::Json => {
            let report: Value = serde_json::from_str(&report.to_json()).expect("report is json");
            json_line(&json!({
                "p": p,
                "m": m,
                "h": h,
                "t_max": cfg.t_max,
                "weights_match": weights_match,
                "weights": serde_json::from_str::<Value>(&brute.to_json()).expect("weights are json")["counts"],
                "designs": report,
                "verified": verified,
            }))
        }
        Format::Csv => report_csv(&report),
        Format::Text => {
            let mut s = format!(
                "weight distribution: {}\n",
                if weights_match { "match" } else { "MISMATCH" }
            );
            s.push_str(&report_text(&report));
            s.push_str(if verified { "verified\n" } else { "FAILED\n" });
            s
        }
    };
    Ok((out, if verified { exit::OK } else { exit::MISMATCH }))
}

struct KernelAudit {
    subspaces: u64,
    mismatches: Vec<String>,
}

fn kernel_audit(field: &Field, h: u32, budget: u64) -> Result<KernelAudit, Failure> {
    let (p, m) = (field.p(), field.m());
    match cycdes_core::checked_pow(field.q(), h + 1) {
        Some(n) if n <= budget => {}
        _ => {
            return Err(Failure {
                code: exit::BUDGET,
                message: format!("kernel census over GF({p}^{m})^{} exceeds the budget", h + 1),
            })
        }
    }
    let census = KernelCensus::new(field, h as usize)?;
    let mut audit = KernelAudit {
        subspaces: 0,
        mismatches: Vec::new(),
    };
    for j in 0..=h {
        let expect_g = containing_kernel_count(p, m, h, j)?;
        let expect_f = exact_kernel_count(p, m, h, j)?;
        for u in enumerate_subspaces(field, j as usize) {
            audit.subspaces += 1;
            let g = census.containing(field, &u);
            let f = census.exact(&u);
            if g != expect_g {
                audit.mismatches.push(format!("dim {j} {:?}: G = {g}, expected {expect_g}", u.basis()));
            }
            if f != expect_f {
                audit.mismatches.push(format!("dim {j} {:?}: F = {f}, expected {expect_f}", u.basis()));
            }
        }
    }
    Ok(audit)
}

fn audit(cfg: &RunConfig) -> Outcome {
    let Params { p, m, h } = code_params(cfg)?;
    let field = Field::new(p, m)?;
    let q = field.q();
    let rank = build_generator(&field, h as usize)?.rank(&field);
    let dist = weight_distribution(&field, h as usize, cfg.budget)?;
    let min_weight = dist.min_weight().unwrap_or(0);
    let expected_min = q - p.pow(h);
    let kernels = kernel_audit(&field, h, cfg.budget)?;
    let exhaustive = cycdes_core::checked_pow(q, h + 2).is_some_and(|n| n <= CYCLICITY_EXHAUSTIVE);
    let cyclic: CyclicityReport = cyclicity_audit(
        &field,
        h as usize,
        if exhaustive { CYCLICITY_EXHAUSTIVE } else { CYCLICITY_SAMPLES },
    )?;
    let pass = rank == h as usize + 2
        && min_weight == expected_min
        && kernels.mismatches.is_empty()
        && cyclic.closed;
    let out = match cfg.format {
        Format::Json => json_line(&json!({
            "p": p,
            "m": m,
            "h": h,
            "rank": rank,
            "expected_rank": h + 2,
            "min_weight": min_weight.to_string(),
            "expected_min_weight": expected_min.to_string(),
            "subspaces_checked": kernels.subspaces.to_string(),
            "kernel_mismatches": kernels.mismatches,
            "cyclicity": {
                "checked": cyclic.checked.to_string(),
                "exhaustive": cyclic.exhaustive,
                "closed": cyclic.closed,
            },
            "pass": pass,
        })),
        Format::Csv => format!(
            "check,observed,expected,pass\nrank,{rank},{},{}\nmin_weight,{min_weight},{expected_min},{}\nkernel_counts,{},0,{}\ncyclic_shift,{},{},{}\n",
            h + 2,
            rank == h as usize + 2,
            min_weight == expected_min,
            kernels.mismatches.len(),
            kernels.mismatches.is_empty(),
            cyclic.checked,
            if cyclic.exhaustive { "exhaustive" } else { "sampled" },
            cyclic.closed,
        ),
        Format::Text => {
            let mut s = format!(
                "rank(D_{h}) = {rank} (expected {})\nminimum weight = {min_weight} (expected {expected_min})\n",
                h + 2
            );
            let _ = writeln!(
                s,
                "kernel counts: {} subspaces of dimension <= {h}, {} mismatches",
                kernels.subspaces,
                kernels.mismatches.len()
            );
            for mm in &kernels.mismatches {
                let _ = writeln!(s, "  MISMATCH: {mm}");
            }
            let _ = writeln!(
                s,
                "cyclic shift: {} codewords ({}), {}",
                cyclic.checked,
                if cyclic.exhaustive { "exhaustive" } else { "sampled" },
                if cyclic.closed { "closed" } else { "NOT closed" }
            );
            s.push_str(if pass { "pass\n" } else { "FAILED\n" });
            s
        }
    };
    Ok((out, if pass { exit::OK } else { exit::MISMATCH }))
}

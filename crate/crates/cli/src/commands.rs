//! One function per subcommand, each returning a payload and its checks.

use lschan::capacity::{
    capacity_report, chi_capacity_numeric, coherent_information, ea_capacity_numeric,
    quantum_capacity_verdict,
};
use lschan::channel::{complementary, landau_streater};
use lschan::degradability::{
    choi_rank, factoring_diag_element_numeric, factoring_map, ls_degradability, FACTORING_TOL,
};
use lschan::entanglement::{annihilation_witness, eb_verdict, extreme_dyad_residual, witness_min_pt_closed};
use lschan::extremes::{
    max_p_norm_closed, min_output_entropy_closed, multiplicativity_experiment,
    optimize_min_entropy, optimize_output_norm, OptimizerConfig,
};
use lschan::linalg::{identity, re};
use lschan::spectral::{determinant, ls_spectrum_closed, map_spectrum_numeric, verify_eigenoperators};
use lschan::{Result, TwoJ};
use serde_json::{json, Value};

use crate::report::{Check, Section};

#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub j: TwoJ,
    pub seed: u64,
    /// Overrides every per-check tolerance when set.
    pub tol: Option<f64>,
    pub restarts: usize,
    pub p: f64,
}

impl Params {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn optimizer(&self) -> OptimizerConfig {
        OptimizerConfig {
            restarts: self.restarts,
            seed: self.seed,
            ..Default::default()
        }
    }
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn spectrum(p: &Params) -> Result<Section> {
    let j = p.j;
    let closed = ls_spectrum_closed(j);
    let ch = landau_streater(j);
    let numeric = map_spectrum_numeric(&ch)?;
    let closed_flat = closed.flattened();
    let mut checks = Vec::new();
    let tol_spec = p.tol(1e-9);
    for level in &closed.levels {
        let start = (level.l * level.l) as usize;
        let block = &numeric.values()[start..start + level.multiplicity];
        let mean = block.iter().sum::<f64>() / block.len() as f64;
        let worst = block
            .iter()
            .map(|x| (x - level.eigenvalue).abs())
            .fold(0.0, f64::max);
        let mut c = Check::new(format!("lambda_{}", level.l), level.eigenvalue, mean, tol_spec);
        c.deviation = worst;
        c.pass = worst <= tol_spec;
        checks.push(c);
    }
    let det_numeric = determinant(&ch)?;
    checks.push(Check::new("determinant", closed.determinant(), det_numeric, p.tol(1e-10)));
    let eig = verify_eigenoperators(j, p.seed)?;
    for row in &eig {
        checks.push(Check::new(format!("eigenoperator_residual_{}", row.l), 0.0, row.residual, p.tol(1e-10)));
        checks.push(Check::new(
            format!("rotated_eigenoperator_residual_{}", row.l),
            0.0,
            row.rotated_residual,
            p.tol(1e-10),
        ));
    }
    let payload = json!({
        "levels": closed.levels.iter().map(|l| json!({
            "l": l.l,
            "lambda": l.eigenvalue,
            "multiplicity": l.multiplicity,
        })).collect::<Vec<_>>(),
        "closed_multiset": closed_flat.values(),
        "numeric_multiset": numeric.values(),
        "max_deviation": closed_flat.max_distance(&numeric),
        "determinant_closed": closed.determinant(),
        "determinant_numeric": det_numeric,
        "eigenoperators": eig,
    });
    Ok(Section { payload, checks })
}

pub fn capacities(p: &Params) -> Result<Section> {
    let j = p.j;
    let report = capacity_report(j);
    let verdict = quantum_capacity_verdict(j);
    let ch = landau_streater(j);
    let mixed = identity(j.dim()) * re(1.0 / j.dim() as f64);
    let chi_numeric = chi_capacity_numeric(j, &p.optimizer())?;
    let ea_numeric = ea_capacity_numeric(j)?;
    let ic_numeric = coherent_information(&ch, &mixed)?;
    let checks = vec![
        Check::new("chi_capacity", report.chi_capacity, chi_numeric, p.tol(1e-5)),
        Check::new("ea_capacity", report.ea_capacity, ea_numeric, p.tol(1e-10)),
        Check::new("coherent_info_mm", report.coherent_info_mm, ic_numeric, p.tol(1e-10)),
    ];
    let mut payload = serde_json::to_value(report).expect("report serializes");
    payload["chi_capacity_label"] = json!(if report.chi_equals_classical_capacity {
        "classical capacity"
    } else {
        "lower bound on classical capacity"
    });
    payload["q_verdict"] = json!({
        "q_zero": verdict.q_zero,
        "lower_bound": verdict.lower_bound,
    });
    Ok(Section { payload, checks })
}

pub fn degradability(p: &Params) -> Result<Section> {
    let j = p.j;
    let verdict = ls_degradability(j, p.tol(FACTORING_TOL))?;
    let (exp_deg, exp_anti) = match j.two_j() {
        1 => (false, true),
        2 => (true, true),
        _ => (false, false),
    };
    let mut checks = vec![
        Check::flag("degradable", exp_deg, verdict.degradable),
        Check::flag("antidegradable", exp_anti, verdict.antidegradable),
    ];
    let ch = landau_streater(j);
    let comp = complementary(&ch);
    let rank = choi_rank(&comp, lschan::channel::KRAUS_RANK_TOL);
    checks.push(Check::new("complementary_choi_rank", j.dim() as f64, rank as f64, 0.0));
    let forward = factoring_map(&ch, &comp)?;
    if !forward.singular {
        checks.push(Check::new("factoring_residual", 0.0, forward.residual, p.tol(1e-9)));
    }
    for cert in &verdict.degradable_certificates {
        if let lschan::degradability::Certificate::NegativeDiagonal {
            two_m,
            closed_form,
            numeric: Some(_),
        } = cert
        {
            let numeric = factoring_diag_element_numeric(j, *two_m)?;
            checks.push(Check::new(
                format!("diag_element_2m_{two_m}"),
                *closed_form,
                numeric,
                p.tol(1e-8),
            ));
        }
    }
    let payload = serde_json::to_value(&verdict).expect("verdict serializes");
    Ok(Section { payload, checks })
}

pub fn entanglement(p: &Params) -> Result<Section> {
    let j = p.j;
    let witness = annihilation_witness(j)?;
    let eb = eb_verdict(j)?;
    let mut checks = vec![
        Check::flag("witness_entangled", j.two_j() >= 2, witness.entangled),
        Check::flag("entanglement_breaking", j.two_j() == 1, eb.entanglement_breaking),
        Check::new("extreme_dyad_residual", 0.0, extreme_dyad_residual(j)?, p.tol(1e-12)),
    ];
    let closed = witness_min_pt_closed(j);
    if let Some(c) = closed {
        checks.push(Check::new("witness_min_pt_eigenvalue", c, witness.min_pt_eigenvalue, p.tol(1e-10)));
    }
    let payload = json!({
        "witness": witness,
        "witness_min_pt_closed": closed,
        "entanglement_breaking": eb,
    });
    Ok(Section { payload, checks })
}

pub fn extremes(p: &Params) -> Result<Section> {
    let j = p.j;
    let ch = landau_streater(j);
    let cfg = p.optimizer();
    let norm = optimize_output_norm(&ch, p.p, &cfg)?;
    let entropy = optimize_min_entropy(&ch, &cfg)?;
    let nu_closed = max_p_norm_closed(j, p.p)?;
    let s_closed = min_output_entropy_closed(j);
    let p_label = if p.p.is_infinite() { "inf".to_string() } else { format!("{}", p.p) };
    let checks = vec![
        Check::new(format!("nu_{p_label}"), nu_closed, norm.value, p.tol(1e-6)),
        Check::new("s_min_bits", s_closed, entropy.value, p.tol(1e-6)),
    ];
    let payload = json!({
        "p": if p.p.is_infinite() { json!("inf") } else { json!(p.p) },
        "nu_p_closed": nu_closed,
        "nu_p_numeric": norm.value,
        "nu_p_converged_restarts": norm.converged_restarts,
        "nu_p_gradient_norm": finite_or_null(norm.best_gradient_norm),
        "s_min_closed": s_closed,
        "s_min_numeric": entropy.value,
        "s_min_converged_restarts": entropy.converged_restarts,
        "restarts": norm.restarts,
        "exceeds_upper_bound": norm.value > nu_closed + 1e-8,
    });
    Ok(Section { payload, checks })
}

pub fn multiplicativity(p: &Params) -> Result<Section> {
    let j = p.j;
    let r = multiplicativity_experiment(j, &p.optimizer())?;
    let checks = vec![
        Check::new("nu2_single", max_p_norm_closed(j, 2.0)?, r.nu2_single, p.tol(1e-6)),
        Check::new("multiplicativity_gap", 0.0, r.gap, p.tol(1e-4)),
    ];
    let payload = serde_json::to_value(r).expect("report serializes");
    Ok(Section { payload, checks })
}

type Command = fn(&Params) -> Result<Section>;

pub const ALL: [(&str, Command); 6] = [
    ("spectrum", spectrum),
    ("capacities", capacities),
    ("degradability", degradability),
    ("entanglement", entanglement),
    ("extremes", extremes),
    ("multiplicativity", multiplicativity),
];

/// Every analysis, payloads keyed by command name, check names prefixed.
pub fn report(p: &Params) -> Result<Section> {
    let mut payload = serde_json::Map::new();
    let mut checks = Vec::new();
    for (name, cmd) in ALL {
        let section = cmd(p)?;
        payload.insert(name.into(), section.payload);
        checks.extend(section.checks.into_iter().map(|c| c.prefixed(name)));
    }
    Ok(Section {
        payload: Value::Object(payload),
        checks,
    })
}

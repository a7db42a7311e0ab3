use serde::Serialize;

use degenerata_core::nodal::{cross_validate_toric, resolve_nodal, NodalModel, Phase};

use crate::errors::CmdError;

fn parse_exponents(s: &str) -> Result<NodalModel, CmdError> {
    let exps: Result<Vec<u32>, _> = s
        .split(',')
        .map(|x| x.trim().parse::<u32>())
        .collect();
    let exps = exps.map_err(|_| CmdError::usage(format!("bad exponent list {s:?}")))?;
    NodalModel::new(exps).map_err(CmdError::from)
}

#[derive(Serialize)]
struct BlowupJson {
    phase: Phase,
    center: String,
}

#[derive(Serialize)]
struct ResolveOut {
    blowups: Vec<BlowupJson>,
    #[serde(rename = "final")]
    final_state: String,
}

pub fn resolve(exponents: &str, json: bool) -> Result<String, CmdError> {
    let model = parse_exponents(exponents)?;
    let trace = resolve_nodal(&model);
    for m in &trace.frontier {
        assert!(!m.is_singular());
    }
    if json {
        let payload = ResolveOut {
            blowups: trace
                .records
                .iter()
                .map(|r| BlowupJson {
                    phase: r.phase,
                    center: r.center_label(),
                })
                .collect(),
            final_state: "smooth".to_string(),
        };
        return Ok(serde_json::to_string(&payload)?);
    }
    let mut s = format!("model {}\n", model);
    if trace.records.is_empty() {
        s.push_str("already smooth, nothing to do");
        return Ok(s);
    }
    for (i, r) in trace.records.iter().enumerate() {
        s.push_str(&format!(
            "{:>3}. {:?} blowup along {}",
            i + 1,
            r.phase,
            r.center_label()
        ));
        if r.children.is_empty() {
            s.push_str("  (no singular residue)");
        } else {
            let kids: Vec<String> = r.children.iter().map(|c| c.to_string()).collect();
            s.push_str(&format!("  singular residues: {}", kids.join("; ")));
        }
        s.push('\n');
    }
    s.push_str(&format!(
        "{} first-phase and {} second-phase blowups; final state smooth",
        trace.step1_count(),
        trace.step2_count()
    ));
    Ok(s)
}

#[derive(Serialize)]
struct ValidateOut {
    singular: bool,
    cone_smooth: bool,
    consistent: bool,
}

pub fn validate(exponents: &str, json: bool) -> Result<String, CmdError> {
    let model = parse_exponents(exponents)?;
    let consistent = cross_validate_toric(&model)?;
    let singular = model.is_singular();
    // consistency means the cone is smooth exactly when the model is not
    let cone_smooth = if consistent { !singular } else { singular };
    if json {
        let payload = ValidateOut {
            singular,
            cone_smooth,
            consistent,
        };
        return Ok(serde_json::to_string(&payload)?);
    }
    Ok(format!(
        "model {}: singular = {}, toric cross-check consistent = {}",
        model, singular, consistent
    ))
}

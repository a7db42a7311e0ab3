use num::Integer;
use serde::Serialize;

use degenerata_core::elliptic::{
    hesse_special_fiber_check, NodeReport, ReductionData, ReductionType, WeierstrassModel,
};
use degenerata_core::valued::Place;

use super::parse_place;
use crate::errors::CmdError;

#[derive(Serialize)]
struct ClassifyOut {
    #[serde(rename = "type")]
    rtype: String,
    e_min_hint: u32,
}

/// A cheap a-priori bound on the semistable base-change degree, from the
/// valuation pattern of the minimal model. Not verified; the
/// semistable-degree command computes the witness.
fn e_hint(d: &ReductionData) -> u32 {
    match d.rtype {
        ReductionType::Good | ReductionType::Multiplicative => 1,
        ReductionType::Additive => {
            let pot_good = match d.v_j {
                None => true,
                Some(v) => v >= 0,
            };
            if pot_good {
                let vd = d.v_delta.unwrap_or(0).rem_euclid(12) as u32;
                if vd == 0 {
                    1
                } else {
                    12 / vd.gcd(&12)
                }
            } else {
                2
            }
        }
    }
}

fn build_model(a: &str, b: &str, place: &str, characteristic: u64) -> Result<WeierstrassModel, CmdError> {
    let place = parse_place(place, characteristic)?;
    let a = place.parse(a)?;
    let b = place.parse(b)?;
    WeierstrassModel::new(place, a, b).map_err(CmdError::from)
}

pub fn classify(
    a: &str,
    b: &str,
    place: &str,
    characteristic: u64,
    json: bool,
) -> Result<String, CmdError> {
    let m = build_model(a, b, place, characteristic)?;
    let d = m.reduction_type()?;
    if json {
        let payload = ClassifyOut {
            rtype: d.rtype.to_string(),
            e_min_hint: e_hint(&d),
        };
        return Ok(serde_json::to_string(&payload)?);
    }
    let vfmt = |v: Option<i64>| match v {
        None => "inf".to_string(),
        Some(v) => v.to_string(),
    };
    Ok(format!(
        "reduction type: {}\nminimal model: A = {}, B = {} (u = pi^{})\nv(delta) = {}, v(c4) = {}, v(j) = {}\npotentially good: {}",
        d.rtype,
        d.a_min,
        d.b_min,
        d.u_power,
        vfmt(d.v_delta),
        vfmt(d.v_c4),
        vfmt(d.v_j),
        m.potentially_good()?
    ))
}

#[derive(Serialize)]
struct SemistableOut {
    e: u32,
    witness_type: String,
    witness_a_min: String,
    witness_b_min: String,
}

pub fn semistable_degree(
    a: &str,
    b: &str,
    place: &str,
    characteristic: u64,
    json: bool,
) -> Result<String, CmdError> {
    let m = build_model(a, b, place, characteristic)?;
    let (e, _witness, data) = m.semistable_degree()?;
    if json {
        let payload = SemistableOut {
            e,
            witness_type: data.rtype.to_string(),
            witness_a_min: data.a_min.to_string(),
            witness_b_min: data.b_min.to_string(),
        };
        return Ok(serde_json::to_string(&payload)?);
    }
    Ok(format!(
        "semistable after t -> s^{e}\nwitness minimal model: A = {}, B = {} with {} reduction",
        data.a_min, data.b_min, data.rtype
    ))
}

#[derive(Serialize)]
struct HesseOut {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes: Option<usize>,
}

pub fn hesse(
    lambda: &str,
    mu: &str,
    place: &str,
    characteristic: u64,
    json: bool,
) -> Result<String, CmdError> {
    let place: Place = parse_place(place, characteristic)?;
    let lambda = place.parse(lambda)?;
    let mu = place.parse(mu)?;
    let report = hesse_special_fiber_check(&place, &lambda, &mu)?;
    if json {
        let payload = match report {
            NodeReport::Smooth => HesseOut {
                kind: "Smooth".into(),
                nodes: None,
            },
            NodeReport::Nodal { nodes } => HesseOut {
                kind: "Nodal".into(),
                nodes: Some(nodes),
            },
        };
        return Ok(serde_json::to_string(&payload)?);
    }
    Ok(match report {
        NodeReport::Smooth => "special fiber: smooth cubic".to_string(),
        NodeReport::Nodal { nodes } => {
            format!("special fiber: nodal cubic with {nodes} geometric nodes")
        }
    })
}

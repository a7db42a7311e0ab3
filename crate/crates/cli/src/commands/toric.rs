use serde::Serialize;

use degenerata_core::toric::{
    resolve_fan_with_cap, star_subdivision, Cone, Fan, FanJson, HistoryStepJson,
    RESOLVE_STEP_CAP,
};

use super::parse_rays;
use crate::errors::CmdError;

#[derive(Serialize)]
struct ResolveOut {
    fan: FanJson,
    history: Vec<HistoryStepJson>,
}

fn load_fan(path: &str) -> Result<Fan, CmdError> {
    let text = std::fs::read_to_string(path)?;
    let j: FanJson = serde_json::from_str(&text)?;
    Fan::from_json(&j).map_err(CmdError::from)
}

pub fn resolve(fan_path: &str, json: bool, max_steps: Option<u64>) -> Result<String, CmdError> {
    let fan = load_fan(fan_path)?;
    let cap = max_steps.unwrap_or(RESOLVE_STEP_CAP);
    let (out, history) = resolve_fan_with_cap(&fan, cap)?;
    if json {
        let payload = ResolveOut {
            fan: out.to_json()?,
            history: history.to_json()?,
        };
        return Ok(serde_json::to_string(&payload)?);
    }
    let mut s = String::new();
    s.push_str(&format!(
        "resolved fan: {} rays, {} maximal cones, smooth: {}\n",
        out.rays().len(),
        out.num_cones(),
        out.is_smooth()
    ));
    if history.steps.is_empty() {
        s.push_str("no subdivisions needed");
    } else {
        s.push_str(&format!("{} subdivisions:", history.steps.len()));
        for step in &history.steps {
            s.push_str(&format!("\n  insert {}", step.ray));
        }
    }
    Ok(s)
}

#[derive(Serialize)]
struct DualOut {
    rank: usize,
    rays: Vec<Vec<i64>>,
    has_lines: bool,
}

fn rays_to_i64(cone: &Cone) -> Result<Vec<Vec<i64>>, CmdError> {
    cone.rays()
        .iter()
        .map(|r| {
            r.entries()
                .iter()
                .map(|x| {
                    i64::try_from(x.clone())
                        .map_err(|_| CmdError::domain("ray entry exceeds 64-bit range"))
                })
                .collect()
        })
        .collect()
}

pub fn dual(rank: usize, rays: &str, json: bool) -> Result<String, CmdError> {
    let gens = parse_rays(rank, rays)?;
    let cone = Cone::from_rays(rank, &gens)?;
    let d = cone.dual()?;
    if json {
        let payload = DualOut {
            rank,
            rays: rays_to_i64(&d)?,
            has_lines: d.has_lines(),
        };
        return Ok(serde_json::to_string(&payload)?);
    }
    let mut s = String::from("dual cone rays:");
    for r in d.rays() {
        s.push_str(&format!("\n  {}", r));
    }
    if d.has_lines() {
        s.push_str("\n(contains lines, encoded as opposite ray pairs)");
    }
    Ok(s)
}

#[derive(Serialize)]
struct SmoothOut {
    smooth: bool,
    simplicial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    multiplicity: Option<String>,
}

pub fn smooth(rank: usize, rays: &str, json: bool) -> Result<String, CmdError> {
    let gens = parse_rays(rank, rays)?;
    let cone = Cone::from_rays(rank, &gens)?;
    let simplicial = cone.is_simplicial();
    let mult = if simplicial {
        Some(cone.multiplicity()?.to_string())
    } else {
        None
    };
    if json {
        let payload = SmoothOut {
            smooth: cone.is_smooth(),
            simplicial,
            multiplicity: mult,
        };
        return Ok(serde_json::to_string(&payload)?);
    }
    Ok(match mult {
        Some(m) => format!(
            "smooth: {}, simplicial: true, multiplicity: {}",
            cone.is_smooth(),
            m
        ),
        None => format!("smooth: {}, simplicial: false", cone.is_smooth()),
    })
}

#[derive(Serialize)]
struct SubdivideOut {
    fan: FanJson,
    step: HistoryStepJson,
}

pub fn subdivide(fan_path: &str, ray: &str, json: bool) -> Result<String, CmdError> {
    let fan = load_fan(fan_path)?;
    let rays = parse_rays(fan.rank(), ray)?;
    if rays.len() != 1 {
        return Err(CmdError::usage("--ray expects a single vector"));
    }
    let (out, step) = star_subdivision(&fan, &rays[0])?;
    if json {
        let payload = SubdivideOut {
            fan: out.to_json()?,
            step: HistoryStepJson {
                ray: step
                    .ray
                    .entries()
                    .iter()
                    .map(|x| {
                        i64::try_from(x.clone())
                            .map_err(|_| CmdError::domain("ray entry exceeds 64-bit range"))
                    })
                    .collect::<Result<_, _>>()?,
                replaced: step.replaced.clone(),
            },
        };
        return Ok(serde_json::to_string(&payload)?);
    }
    Ok(format!(
        "subdivided at {}: replaced cones {:?}, now {} maximal cones",
        step.ray,
        step.replaced,
        out.num_cones()
    ))
}

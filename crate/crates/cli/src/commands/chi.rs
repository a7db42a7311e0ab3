use std::time::Instant;

use serde::Serialize;

use degenerata_core::arith::FieldSpec;
use degenerata_core::intersection::IntersectionProblem;
use degenerata_core::polyring::{parse_poly, set_basis_cap, MonomialOrder, PolyRing};

use crate::errors::CmdError;

#[derive(Serialize)]
struct ChiOut {
    l0: usize,
    l1: usize,
    l2: usize,
    chi: i64,
    support_at_origin: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn run(
    ring: &str,
    ideal_file: &str,
    f: &str,
    g: Option<&str>,
    order: &str,
    max_basis: Option<usize>,
    json: bool,
) -> Result<String, CmdError> {
    if let Some(cap) = max_basis {
        set_basis_cap(cap);
    }
    let names: Vec<String> = ring
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(CmdError::usage("--ring needs at least one variable"));
    }
    let ring = PolyRing::new(names, FieldSpec::Q);
    let order = match order {
        "lex" => MonomialOrder::Lex,
        "grevlex" => MonomialOrder::GrevLex,
        other => return Err(CmdError::usage(format!("unknown order {other:?}"))),
    };
    let text = std::fs::read_to_string(ideal_file)?;
    let mut gens = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        gens.push(parse_poly(&ring, line)?);
    }
    let f = parse_poly(&ring, f)?;
    let g = g.map(|g| parse_poly(&ring, g)).transpose()?;

    let started = Instant::now();
    let problem = IntersectionProblem::new(f, g, gens, order)?;
    let profile = problem.koszul_tor_lengths()?;
    let support = problem.support_at_origin()?;
    let elapsed = started.elapsed();

    if json {
        let payload = ChiOut {
            l0: profile.l0,
            l1: profile.l1,
            l2: profile.l2,
            chi: profile.chi,
            support_at_origin: support,
        };
        return Ok(serde_json::to_string(&payload)?);
    }
    Ok(format!(
        "l0 = {}   (tensor length)\nl1 = {}\nl2 = {}\nchi = {}\nsupport at origin: {}\nwall time: {:.3?}",
        profile.l0, profile.l1, profile.l2, profile.chi, support, elapsed
    ))
}

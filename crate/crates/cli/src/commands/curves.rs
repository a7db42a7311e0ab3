use degenerata_core::arith::FieldSpec;
use degenerata_core::curves0::{
    cross_ratio as cr, stable_limit, AttachPoint, MarkedTree, ProjPoint, TreeJson,
};
use degenerata_core::valued::{Place, RatFun};

use crate::errors::CmdError;

fn parse_point(s: &str) -> Result<ProjPoint<RatFun>, CmdError> {
    let s = s.trim();
    if s == "inf" {
        return Ok(ProjPoint::infinity(&RatFun::zero(FieldSpec::Q)));
    }
    let f = RatFun::parse(FieldSpec::Q, "t", s)?;
    Ok(ProjPoint::affine(f))
}

fn load_tree(path: &str) -> Result<MarkedTree, CmdError> {
    let text = std::fs::read_to_string(path)?;
    let j: TreeJson = serde_json::from_str(&text)?;
    MarkedTree::from_json(&j).map_err(CmdError::from)
}

fn render_tree(tree: &MarkedTree, json: bool) -> Result<String, CmdError> {
    if json {
        return Ok(serde_json::to_string(&tree.to_json())?);
    }
    let mut s = format!(
        "stable tree: {} vertices, {} markings\n",
        tree.num_vertices(),
        tree.num_markings()
    );
    for v in 0..tree.num_vertices() {
        let marks: Vec<String> = tree
            .markings()
            .iter()
            .filter(|(_, &mv)| mv == v)
            .map(|(m, _)| m.to_string())
            .collect();
        s.push_str(&format!("  vertex {v}: markings {{{}}}\n", marks.join(",")));
    }
    let edges: Vec<String> = tree
        .edges()
        .iter()
        .map(|&(a, b)| format!("{a}-{b}"))
        .collect();
    s.push_str(&format!("  edges: {}", edges.join(" ")));
    Ok(s)
}

pub fn limit(points_path: &str, json: bool) -> Result<String, CmdError> {
    let text = std::fs::read_to_string(points_path)?;
    let mut points = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        points.push(parse_point(line)?);
    }
    let tree = stable_limit(&Place::t_adic_q(), &points)?;
    render_tree(&tree, json)
}

pub fn contract(tree_path: &str, marking: u32, json: bool) -> Result<String, CmdError> {
    let tree = load_tree(tree_path)?;
    let out = tree.contract(marking)?;
    render_tree(&out, json)
}

pub fn stabilize(tree_path: &str, attach: &str, json: bool) -> Result<String, CmdError> {
    let tree = load_tree(tree_path)?;
    let attach = parse_attach(attach)?;
    let out = tree.stabilize(&attach)?;
    render_tree(&out, json)
}

fn parse_attach(s: &str) -> Result<AttachPoint, CmdError> {
    let (kind, value) = s
        .split_once(':')
        .ok_or_else(|| CmdError::usage("attach must be free:<v>, marking:<m>, or node:<e>"))?;
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| CmdError::usage(format!("bad attach index {value:?}")))?;
    match kind {
        "free" => Ok(AttachPoint::Free(n)),
        "marking" => Ok(AttachPoint::AtMarking(n as u32)),
        "node" => Ok(AttachPoint::AtNode(n)),
        _ => Err(CmdError::usage(format!("unknown attach kind {kind:?}"))),
    }
}

#[derive(serde::Serialize)]
struct CrossRatioOut {
    value: String,
}

pub fn cross_ratio(p1: &str, p2: &str, p3: &str, z: &str, json: bool) -> Result<String, CmdError> {
    let (p1, p2, p3, z) = (
        parse_point(p1)?,
        parse_point(p2)?,
        parse_point(p3)?,
        parse_point(z)?,
    );
    let lambda = cr(&p1, &p2, &p3, &z)?;
    let value = lambda.to_string();
    if json {
        return Ok(serde_json::to_string(&CrossRatioOut { value })?);
    }
    Ok(value)
}

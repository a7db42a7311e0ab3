//! Optional key=value configuration, located by the DEGENERATA_CONFIG
//! environment variable. Flags override file values.

#[derive(Debug, Default)]
pub struct Config {
    pub max_groebner_basis: Option<usize>,
    pub max_subdivision_steps: Option<u64>,
}

pub fn load() -> Result<Config, String> {
    let mut cfg = Config::default();
    let Ok(path) = std::env::var("DEGENERATA_CONFIG") else {
        return Ok(cfg);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read config {path:?}: {e}"))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config line {} is not key=value", lineno + 1));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "max_groebner_basis" => {
                cfg.max_groebner_basis = Some(
                    value
                        .parse()
                        .map_err(|_| format!("bad value for {key}: {value:?}"))?,
                )
            }
            "max_subdivision_steps" => {
                cfg.max_subdivision_steps = Some(
                    value
                        .parse()
                        .map_err(|_| format!("bad value for {key}: {value:?}"))?,
                )
            }
            _ => return Err(format!("unknown config key {key:?}")),
        }
    }
    Ok(cfg)
}

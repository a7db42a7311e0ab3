pub mod chi;
pub mod curves;
pub mod elliptic;
pub mod nodal;
pub mod toric;

use degenerata_core::lattice::LatticeVector;
use degenerata_core::valued::Place;

use crate::errors::CmdError;

/// Parses "a,b;c,d" into lattice vectors of the expected rank; an empty
/// string gives no rays.
pub fn parse_rays(rank: usize, s: &str) -> Result<Vec<LatticeVector>, CmdError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(';')
        .map(|chunk| {
            let entries: Result<Vec<i64>, _> = chunk
                .trim()
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect();
            let entries =
                entries.map_err(|_| CmdError::usage(format!("bad ray {chunk:?}")))?;
            if entries.len() != rank {
                return Err(CmdError::usage(format!(
                    "ray {chunk:?} has {} entries, expected {rank}",
                    entries.len()
                )));
            }
            Ok(LatticeVector::from_i64(&entries))
        })
        .collect()
}

/// Parses "t" (with an optional prime characteristic) or "p=<prime>".
pub fn parse_place(place: &str, characteristic: u64) -> Result<Place, CmdError> {
    match place {
        "t" => {
            if characteristic == 0 {
                Ok(Place::t_adic_q())
            } else {
                Place::t_adic_fp(characteristic).map_err(CmdError::from)
            }
        }
        other => match other.strip_prefix("p=") {
            Some(p) => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| CmdError::usage(format!("bad prime in --place {other:?}")))?;
                Place::p_adic(p).map_err(CmdError::from)
            }
            None => Err(CmdError::usage(format!(
                "--place must be \"t\" or \"p=<prime>\", got {other:?}"
            ))),
        },
    }
}

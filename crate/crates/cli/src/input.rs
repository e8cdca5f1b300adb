//! Loading complexes from files or inline generator specs.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use facering::complex::{
    boundary_simplex, cross_polytope_boundary, cyclic_polytope_boundary, parse_text, simplex, ComplexDocument,
};
use facering::SimplicialComplex;

const TORUS: &str = include_str!("../data/torus7.txt");

/// Parses `cross:D`, `cyclic:D,N`, `simplex-boundary:N`, `simplex:N` or `torus7`.
pub fn generate(spec: &str) -> Result<SimplicialComplex> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums = args
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.trim().parse::<usize>().with_context(|| format!("bad number `{s}` in `{spec}`")))
        .collect::<Result<Vec<_>>>()?;
    let arity = |n: usize| -> Result<()> {
        if nums.len() != n {
            bail!("generator `{name}` takes {n} argument(s), got {}", nums.len());
        }
        Ok(())
    };
    let c = match name {
        "cross" => {
            arity(1)?;
            cross_polytope_boundary(nums[0])?
        }
        "cyclic" => {
            arity(2)?;
            cyclic_polytope_boundary(nums[0], nums[1])?
        }
        "simplex-boundary" => {
            arity(1)?;
            boundary_simplex(nums[0])?
        }
        "simplex" => {
            arity(1)?;
            simplex(nums[0])
        }
        "torus7" => {
            arity(0)?;
            parse_text(TORUS)?
        }
        other => bail!("unknown generator `{other}`"),
    };
    Ok(c)
}

pub fn read(path: &Path) -> Result<SimplicialComplex> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).context("reading standard input")?
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    if text.trim_start().starts_with('{') {
        let doc: ComplexDocument = serde_json::from_str(&text).context("parsing JSON complex document")?;
        return Ok(SimplicialComplex::try_from(doc)?);
    }
    Ok(parse_text(&text)?)
}

/// A comma-separated face such as `1,3,5`.
pub fn parse_face(s: &str) -> Result<Vec<usize>> {
    let mut f = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad vertex `{t}`")))
        .collect::<Result<Vec<_>>>()?;
    f.sort_unstable();
    f.dedup();
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        assert_eq!(generate("cross:3").unwrap().f_vector(), vec![6, 12, 8]);
        assert_eq!(generate("cyclic:4,7").unwrap().m(), 7);
        assert_eq!(generate("torus7").unwrap().facets().len(), 14);
        assert!(generate("cross").is_err());
        assert!(generate("sphere:2").is_err());
        assert_eq!(parse_face("3,1").unwrap(), vec![1, 3]);
    }
}

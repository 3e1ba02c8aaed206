use std::io::Read;
use std::path::Path;

use clap::ValueEnum;
use eds_core::generators::GenSpec;
use eds_core::registry::Registry;
use eds_core::{parse_edge_list, parse_graph6, EdsError, Graph};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Edge list if the first nonempty line is a bare integer, else graph6.
    Auto,
    Graph6,
    Edgelist,
}

/// A graph to process plus the generator spec it came from, if any.
pub struct Job {
    pub graph: Graph,
    pub genspec: Option<String>,
}

/// Reads `input`: `-` or nothing means stdin, an existing path is read as a
/// file, anything else is taken as a literal graph6 string.
pub fn read_graphs(input: Option<&str>, format: Format) -> Result<Vec<Graph>, CliError> {
    let text = match input {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("reading stdin: {e}")))?;
            s
        }
        Some(p) if Path::new(p).is_file() => {
            std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("reading {p}: {e}")))?
        }
        Some(literal) => literal.to_string(),
    };
    parse_text(&text, format)
}

pub fn parse_text(text: &str, format: Format) -> Result<Vec<Graph>, CliError> {
    let format = match format {
        Format::Auto => {
            let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
            if !first.is_empty() && first.bytes().all(|b| b.is_ascii_digit()) {
                Format::Edgelist
            } else {
                Format::Graph6
            }
        }
        f => f,
    };
    match format {
        Format::Edgelist => Ok(vec![parse_edge_list(text)?]),
        _ => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                parse_graph6(l.trim_end()).map_err(|e| CliError::Input(format!("line {}: {e}", i + 1)))
            })
            .collect(),
    }
}

/// Expands integer ranges `a..b` (inclusive) in any parameter, e.g.
/// `random-regular:n=12,r=3,seed=1..500` becomes 500 specs. When a
/// `random-regular` spec has no seed, `default_seeds` supplies them.
pub fn expand_spec(raw: &str, default_seeds: Option<&str>) -> Result<Vec<GenSpec>, CliError> {
    let mut spec: GenSpec = raw.parse()?;
    if spec.family == "random-regular" && spec.params.raw("seed").is_none() {
        let seeds = default_seeds
            .ok_or_else(|| CliError::Input(format!("{raw}: random-regular needs seed=... or --seeds")))?;
        spec.params.set("seed", seeds);
    }
    let mut out = vec![spec.clone()];
    let keys: Vec<String> = spec.params.keys().map(str::to_string).collect();
    for key in keys {
        let value = spec.params.raw(&key).unwrap_or_default().to_string();
        let Some((lo, hi)) = value.split_once("..") else { continue };
        let bad = || CliError::Input(format!("invalid range {value:?} for {key} in {raw}"));
        let lo: u64 = lo.parse().map_err(|_| bad())?;
        let hi: u64 = hi.parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        out = out
            .into_iter()
            .flat_map(|s| {
                let key = key.clone();
                (lo..=hi).map(move |v| {
                    let mut s = s.clone();
                    s.params.set(key.clone(), v.to_string());
                    s
                })
            })
            .collect();
    }
    Ok(out)
}

/// Builds jobs from `--gen` specs, or from the positional input when no spec
/// is given.
pub fn collect_jobs(
    registry: &Registry,
    input: Option<&str>,
    format: Format,
    gens: &[String],
    seeds: Option<&str>,
) -> Result<Vec<Job>, CliError> {
    let mut jobs = Vec::new();
    if input.is_some() || gens.is_empty() {
        jobs.extend(read_graphs(input, format)?.into_iter().map(|graph| Job { graph, genspec: None }));
    }
    for raw in gens {
        for spec in expand_spec(raw, seeds)? {
            let (graph, canonical) = registry.generate(&spec)?;
            jobs.push(Job { graph, genspec: Some(canonical) });
        }
    }
    Ok(jobs)
}

impl From<EdsError> for CliError {
    fn from(e: EdsError) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Capacity(e.to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expands_ranges() {
        let specs = expand_spec("random-regular:n=12,r=3,seed=1..500", None).unwrap();
        assert_eq!(specs.len(), 500);
        assert_eq!(specs[499].params.raw("seed"), Some("500"));
        let grid = expand_spec("cycle:n=3..5", None).unwrap();
        assert_eq!(grid.iter().map(|s| s.to_string()).collect::<Vec<_>>(), ["cycle:n=3", "cycle:n=4", "cycle:n=5"]);
        assert_eq!(expand_spec("random-regular:n=8..10,r=3", Some("1..2")).unwrap().len(), 6);
        assert!(expand_spec("random-regular:n=8,r=3", None).is_err());
        assert!(expand_spec("cycle:n=5..3", None).is_err());
    }

    #[test]
    fn auto_format_detection() {
        assert_eq!(parse_text("Bw\n@\n", Format::Auto).unwrap().len(), 2);
        let g = parse_text("3\n0 1\n1 2\n0 2\n", Format::Auto).unwrap();
        assert_eq!(g[0].edge_count(), 3);
        let err = parse_text("Bw\nB \n", Format::Graph6).err().unwrap();
        assert!(matches!(err, CliError::Input(m) if m.starts_with("line 2: ") && m.contains("byte 1")));
    }
}

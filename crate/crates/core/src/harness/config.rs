//! Experiment configuration and its flat `key = value` file format.

use std::path::{Path, PathBuf};

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{read_edge_list, topology, Graph};
use crate::solvers::{SolverConfig, SolverPreset};

/// Where the network topology comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum TopologySpec {
    EdgeList(PathBuf),
    ScaleFree { nodes: usize, attach: usize },
    RandomRegular { nodes: usize, degree: usize },
    Grid { rows: usize, cols: usize },
}

impl TopologySpec {
    pub fn build<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Graph> {
        match self {
            TopologySpec::EdgeList(path) => read_edge_list(path),
            TopologySpec::ScaleFree { nodes, attach } => topology::scale_free(*nodes, *attach, rng),
            TopologySpec::RandomRegular { nodes, degree } => {
                topology::random_regular(*nodes, *degree, rng)
            }
            TopologySpec::Grid { rows, cols } => topology::grid(*rows, *cols),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub topology: TopologySpec,
    /// Moves per random walk.
    pub steps: usize,
    /// Numbers of walks, as percentages of the link count.
    pub m_grid: Vec<f64>,
    /// Sparsity levels, as percentages of the link count.
    pub sparsity_grid: Vec<f64>,
    pub runs: usize,
    pub preset: SolverPreset,
    pub solver: SolverConfig,
    /// Noise standard deviation; `None` means `0.01 · max_delay`.
    pub sigma: Option<f64>,
    pub max_delay: f64,
    pub corr_power: f64,
    pub eta: f64,
    /// Sparsity (percent of links) held fixed while sweeping walks.
    pub walks_sweep_sparsity: f64,
    /// Walks (percent of links) held fixed while sweeping sparsity.
    pub sparsity_sweep_walks: f64,
    /// Support size for the irrepresentable-condition experiment.
    pub consistency_k: usize,
    /// Measurement matrix for `solve`.
    pub matrix: Option<PathBuf>,
    /// Observation vector for `solve`.
    pub observations: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let preset = SolverPreset::Weak;
        ExperimentConfig {
            topology: TopologySpec::ScaleFree {
                nodes: 138,
                attach: 2,
            },
            steps: 15,
            m_grid: (1..=9).map(|i| 10.0 * i as f64).collect(),
            sparsity_grid: (1..=6).map(|i| 5.0 * i as f64).collect(),
            runs: 30,
            preset,
            solver: preset.config(),
            sigma: None,
            max_delay: 1.0,
            corr_power: 2.0,
            eta: 0.01,
            walks_sweep_sparsity: 5.0,
            sparsity_sweep_walks: 50.0,
            consistency_k: 8,
            matrix: None,
            observations: None,
        }
    }
}

/// Named topologies at the two reference scales (≈273 and ≈366 links).
fn topology_preset(name: &str) -> Option<TopologySpec> {
    Some(match name {
        "scale-free-273" => TopologySpec::ScaleFree {
            nodes: 138,
            attach: 2,
        },
        "scale-free-366" => TopologySpec::ScaleFree {
            nodes: 185,
            attach: 2,
        },
        "random-regular-273" => TopologySpec::RandomRegular {
            nodes: 182,
            degree: 3,
        },
        "random-regular-366" => TopologySpec::RandomRegular {
            nodes: 244,
            degree: 3,
        },
        "grid-273" => TopologySpec::Grid { rows: 10, cols: 15 },
        "grid-366" => TopologySpec::Grid { rows: 14, cols: 14 },
        _ => return None,
    })
}

const KEYS: &[&str] = &[
    "topology",
    "edge_list",
    "nodes",
    "attach",
    "degree",
    "rows",
    "cols",
    "steps",
    "m_grid",
    "sparsity_grid",
    "runs",
    "preset",
    "lambda",
    "gamma",
    "alpha",
    "max_iter",
    "tol",
    "theta",
    "sigma",
    "max_delay",
    "corr_power",
    "eta",
    "walks_sweep_sparsity",
    "sparsity_sweep_walks",
    "consistency_k",
    "matrix",
    "observations",
];

fn invalid(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| invalid(line, format!("{key}: cannot parse {value:?}: {e}")))
}

fn parse_list(line: usize, key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|tok| parse_num(line, key, tok.trim()))
        .collect()
}

impl ExperimentConfig {
    /// Parses the config text. Relative paths resolve against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        let mut seen: Vec<(&str, usize, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| invalid(i + 1, format!("expected `key = value`, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let key = *KEYS
                .iter()
                .find(|&&k| k == key)
                .ok_or_else(|| invalid(i + 1, format!("unknown key {key:?}")))?;
            if seen.iter().any(|(k, _, _)| *k == key) {
                return Err(invalid(i + 1, format!("duplicate key {key:?}")));
            }
            seen.push((key, i + 1, value));
        }
        let get = |key: &str| {
            seen.iter()
                .find(|(k, _, _)| *k == key)
                .map(|&(_, l, v)| (l, v))
        };

        // preset first so explicit weights override it
        if let Some((line, v)) = get("preset") {
            cfg.preset = v.parse().map_err(|e: Error| invalid(line, e))?;
            cfg.solver = cfg.preset.config();
        }
        let resolve = |v: &str| {
            let p = PathBuf::from(v);
            if p.is_relative() {
                base_dir.join(p)
            } else {
                p
            }
        };
        let count = |key: &str| -> Result<Option<usize>> {
            get(key).map(|(l, v)| parse_num(l, key, v)).transpose()
        };
        if let Some((line, kind)) = get("topology") {
            cfg.topology = match kind {
                "edge-list" => {
                    let (_, path) = get("edge_list")
                        .ok_or_else(|| invalid(line, "topology = edge-list needs edge_list"))?;
                    TopologySpec::EdgeList(resolve(path))
                }
                "scale-free" => TopologySpec::ScaleFree {
                    nodes: count("nodes")?.unwrap_or(138),
                    attach: count("attach")?.unwrap_or(2),
                },
                "random-regular" => TopologySpec::RandomRegular {
                    nodes: count("nodes")?.unwrap_or(182),
                    degree: count("degree")?.unwrap_or(3),
                },
                "grid" => TopologySpec::Grid {
                    rows: count("rows")?.unwrap_or(10),
                    cols: count("cols")?.unwrap_or(15),
                },
                other => topology_preset(other)
                    .ok_or_else(|| invalid(line, format!("unknown topology {other:?}")))?,
            };
        } else if let Some((_, path)) = get("edge_list") {
            cfg.topology = TopologySpec::EdgeList(resolve(path));
        }

        if let Some(v) = count("steps")? {
            cfg.steps = v;
        }
        if let Some(v) = count("runs")? {
            cfg.runs = v;
        }
        if let Some(v) = count("max_iter")? {
            cfg.solver.max_iter = v;
        }
        if let Some(v) = count("consistency_k")? {
            cfg.consistency_k = v;
        }
        if let Some((l, v)) = get("m_grid") {
            cfg.m_grid = parse_list(l, "m_grid", v)?;
        }
        if let Some((l, v)) = get("sparsity_grid") {
            cfg.sparsity_grid = parse_list(l, "sparsity_grid", v)?;
        }
        let real = |key: &str, slot: &mut f64| -> Result<()> {
            if let Some((l, v)) = get(key) {
                *slot = parse_num(l, key, v)?;
            }
            Ok(())
        };
        real("lambda", &mut cfg.solver.lambda)?;
        real("gamma", &mut cfg.solver.gamma)?;
        real("alpha", &mut cfg.solver.alpha)?;
        real("tol", &mut cfg.solver.tol)?;
        real("theta", &mut cfg.solver.theta)?;
        real("max_delay", &mut cfg.max_delay)?;
        real("corr_power", &mut cfg.corr_power)?;
        real("eta", &mut cfg.eta)?;
        real("walks_sweep_sparsity", &mut cfg.walks_sweep_sparsity)?;
        real("sparsity_sweep_walks", &mut cfg.sparsity_sweep_walks)?;
        if let Some((l, v)) = get("sigma") {
            cfg.sigma = Some(parse_num(l, "sigma", v)?);
        }
        cfg.matrix = get("matrix").map(|(_, v)| resolve(v));
        cfg.observations = get("observations").map(|(_, v)| resolve(v));
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse(&text, base)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.runs == 0 {
            return fail("runs must be at least 1".into());
        }
        if self.steps == 0 {
            return fail("steps must be at least 1".into());
        }
        for (name, grid) in [
            ("m_grid", &self.m_grid),
            ("sparsity_grid", &self.sparsity_grid),
        ] {
            if grid.is_empty() {
                return fail(format!("{name} is empty"));
            }
            if let Some(p) = grid.iter().find(|p| !(**p > 0.0 && **p <= 100.0)) {
                return fail(format!("{name} entry {p} is not a percentage in (0, 100]"));
            }
        }
        for (name, p) in [
            ("walks_sweep_sparsity", self.walks_sweep_sparsity),
            ("sparsity_sweep_walks", self.sparsity_sweep_walks),
        ] {
            if !(p > 0.0 && p <= 100.0) {
                return fail(format!("{name} = {p} is not a percentage in (0, 100]"));
            }
        }
        if !(self.max_delay > 0.0 && self.max_delay.is_finite()) {
            return fail(format!(
                "max_delay must be positive, got {}",
                self.max_delay
            ));
        }
        if !(self.corr_power >= 0.0 && self.corr_power.is_finite()) {
            return fail(format!("corr_power must be >= 0, got {}", self.corr_power));
        }
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return fail(format!("eta must be positive, got {}", self.eta));
        }
        if let Some(s) = self.sigma {
            if !(s >= 0.0 && s.is_finite()) {
                return fail(format!("sigma must be >= 0, got {s}"));
            }
        }
        if self.consistency_k == 0 {
            return fail("consistency_k must be at least 1".into());
        }
        self.solver.validate()
    }

    pub fn sigma(&self) -> f64 {
        self.sigma.unwrap_or(0.01 * self.max_delay)
    }
}

/// Percentage of `n`, rounded, at least 1.
pub fn count_from_pct(pct: f64, n: usize) -> usize {
    ((pct / 100.0 * n as f64).round() as usize).clamp(1, n.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_protocol() {
        let cfg = ExperimentConfig::default();
        assert_eq!(cfg.steps, 15);
        assert_eq!(cfg.runs, 30);
        assert_eq!(
            cfg.m_grid,
            vec![10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0]
        );
        assert_eq!(cfg.sparsity_grid, vec![5.0, 10.0, 15.0, 20.0, 25.0, 30.0]);
        assert_eq!(cfg.eta, 0.01);
        assert_eq!(cfg.sigma(), 0.01);
    }

    #[test]
    fn parses_keys_and_overrides() {
        let text =
            "# demo\ntopology = grid\nrows = 3\ncols = 4\nruns = 2\npreset = unit\nalpha = 0.5\n\
                    m_grid = 20, 40\nsigma = 0\n";
        let cfg = ExperimentConfig::parse(text, Path::new("/tmp")).unwrap();
        assert_eq!(cfg.topology, TopologySpec::Grid { rows: 3, cols: 4 });
        assert_eq!(cfg.runs, 2);
        assert_eq!(cfg.preset, SolverPreset::Unit);
        assert_eq!((cfg.solver.lambda, cfg.solver.alpha), (1.0, 0.5));
        assert_eq!(cfg.m_grid, vec![20.0, 40.0]);
        assert_eq!(cfg.sigma(), 0.0);
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        let err = ExperimentConfig::parse("runs = 3\nbogus = 1\n", Path::new(".")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = ExperimentConfig::parse("runs = 3\nruns = 4\n", Path::new(".")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = ExperimentConfig::parse("runs 3\n", Path::new(".")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn rejects_invalid_values() {
        for text in [
            "runs = 0",
            "m_grid = 0, 50",
            "sparsity_grid = 120",
            "eta = 0",
            "preset = x",
        ] {
            assert!(
                ExperimentConfig::parse(text, Path::new(".")).is_err(),
                "{text}"
            );
        }
    }

    #[test]
    fn edge_list_path_is_relative_to_config() {
        let cfg = ExperimentConfig::parse(
            "topology = edge-list\nedge_list = net.txt\n",
            Path::new("/data"),
        )
        .unwrap();
        assert_eq!(
            cfg.topology,
            TopologySpec::EdgeList(PathBuf::from("/data/net.txt"))
        );
        let cfg = ExperimentConfig::parse("topology = scale-free-366\n", Path::new(".")).unwrap();
        assert_eq!(
            cfg.topology,
            TopologySpec::ScaleFree {
                nodes: 185,
                attach: 2
            }
        );
    }

    #[test]
    fn pct_counts() {
        assert_eq!(count_from_pct(10.0, 273), 27);
        assert_eq!(count_from_pct(5.0, 273), 14);
        assert_eq!(count_from_pct(1.0, 10), 1);
        assert_eq!(count_from_pct(100.0, 10), 10);
    }
}

//! Name-keyed registries of the interchangeable pieces: deciders (the
//! reduction under different selection orders), exact oracles, and graph
//! families. The CLI resolves user-supplied names through these.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{EdsError, Result};
use crate::generators::{builtin_families, GenSpec, GraphFamily};
use crate::graph::Graph;
use crate::oracle::{solve_exact_with, solve_naive, OracleOptions, OracleReport};
use crate::reduction::{decide_eds, decide_with_order, Decision};

/// Something that runs the reduction procedure and reports a [`Decision`].
pub trait EdsDecider: Send + Sync {
    /// Name including any argument, e.g. `seeded:7`.
    fn name(&self) -> String;
    fn decide(&self, g: &Graph) -> Result<Decision>;
}

/// An exact solver.
pub trait EdsOracle: Send + Sync {
    fn name(&self) -> &'static str;
    fn solve(&self, g: &Graph, enumerate_all: bool) -> Result<OracleReport>;
}

pub struct SmallestIdDecider;

impl EdsDecider for SmallestIdDecider {
    fn name(&self) -> String {
        "smallest-id".into()
    }

    fn decide(&self, g: &Graph) -> Result<Decision> {
        decide_eds(g)
    }
}

pub struct SeededDecider(pub u64);

impl EdsDecider for SeededDecider {
    fn name(&self) -> String {
        format!("seeded:{}", self.0)
    }

    fn decide(&self, g: &Graph) -> Result<Decision> {
        decide_with_order(g, self.0)
    }
}

pub struct ExactOracle(pub OracleOptions);

impl EdsOracle for ExactOracle {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn solve(&self, g: &Graph, enumerate_all: bool) -> Result<OracleReport> {
        solve_exact_with(g, enumerate_all, self.0)
    }
}

/// Subset enumeration; ignores `enumerate_all` and always lists everything.
pub struct NaiveOracle;

impl EdsOracle for NaiveOracle {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn solve(&self, g: &Graph, _enumerate_all: bool) -> Result<OracleReport> {
        solve_naive(g)
    }
}

type DeciderFactory = fn(Option<&str>) -> Result<Arc<dyn EdsDecider>>;

pub struct Registry {
    deciders: BTreeMap<&'static str, DeciderFactory>,
    oracles: BTreeMap<&'static str, Arc<dyn EdsOracle>>,
    families: BTreeMap<&'static str, Arc<dyn GraphFamily>>,
}

impl Registry {
    /// The built-in deciders, oracles and families; the exact oracle uses `opts`.
    pub fn new(opts: OracleOptions) -> Self {
        let mut reg = Registry { deciders: BTreeMap::new(), oracles: BTreeMap::new(), families: BTreeMap::new() };
        reg.register_decider("smallest-id", |arg| match arg {
            None => Ok(Arc::new(SmallestIdDecider)),
            Some(a) => Err(EdsError::usage(format!("decider smallest-id takes no argument, got {a:?}"))),
        });
        reg.register_decider("seeded", |arg| {
            let raw = arg.ok_or_else(|| EdsError::usage("decider seeded needs a seed, e.g. seeded:7"))?;
            let seed = raw.parse().map_err(|_| EdsError::usage(format!("invalid seed {raw:?}")))?;
            Ok(Arc::new(SeededDecider(seed)))
        });
        reg.register_oracle(Arc::new(ExactOracle(opts)));
        reg.register_oracle(Arc::new(NaiveOracle));
        for f in builtin_families() {
            reg.register_family(Arc::from(f));
        }
        reg
    }

    pub fn register_decider(&mut self, name: &'static str, factory: DeciderFactory) {
        self.deciders.insert(name, factory);
    }

    pub fn register_oracle(&mut self, oracle: Arc<dyn EdsOracle>) {
        self.oracles.insert(oracle.name(), oracle);
    }

    pub fn register_family(&mut self, family: Arc<dyn GraphFamily>) {
        self.families.insert(family.name(), family);
    }

    /// Resolves `name` or `name:arg`.
    pub fn decider(&self, spec: &str) -> Result<Arc<dyn EdsDecider>> {
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let factory = self.deciders.get(name).ok_or_else(|| {
            EdsError::usage(format!("unknown decider {name:?} (known: {})", self.decider_names().join(", ")))
        })?;
        factory(arg)
    }

    pub fn oracle(&self, name: &str) -> Result<Arc<dyn EdsOracle>> {
        self.oracles.get(name).cloned().ok_or_else(|| {
            let known: Vec<_> = self.oracles.keys().copied().collect();
            EdsError::usage(format!("unknown oracle {name:?} (known: {})", known.join(", ")))
        })
    }

    pub fn family(&self, name: &str) -> Result<Arc<dyn GraphFamily>> {
        self.families.get(name).cloned().ok_or_else(|| {
            let known: Vec<_> = self.families.keys().copied().collect();
            EdsError::usage(format!("unknown graph family {name:?} (known: {})", known.join(", ")))
        })
    }

    pub fn decider_names(&self) -> Vec<&'static str> {
        self.deciders.keys().copied().collect()
    }

    /// Builds the graph a spec names and returns it with its canonical string.
    pub fn generate(&self, spec: &GenSpec) -> Result<(Graph, String)> {
        let family = self.family(&spec.family)?;
        let canonical = spec.canonical(family.as_ref())?;
        Ok((family.build(&spec.params)?, canonical))
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry::new(OracleOptions::default())
    }
}

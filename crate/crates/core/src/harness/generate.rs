use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Graph family with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    /// `G(n, p)`.
    ErdosRenyi {
        p: f64,
    },
    /// Uniform-ish `d`-regular graph by randomized pairing with restarts.
    RandomRegular {
        d: usize,
    },
    /// `parts` contiguous blocks, edge probability `p_in` inside a block and
    /// `p_out` across.
    PlantedClusters {
        parts: usize,
        p_in: f64,
        p_out: f64,
    },
    Path,
    Star,
    Complete,
    /// Random recursive tree: vertex `v` attaches to a uniform earlier vertex.
    Tree,
}

/// Textual graph specification such as `er:n=300,p=0.1,seed=1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize) -> Self {
        GenSpec { family, n, seed: 0 }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GenSpec { seed, ..self }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        match self.family {
            Family::RandomRegular { d } if d > 0 && (d >= n || (n * d) % 2 == 1) => {
                Err(spec_error(format!("no {d}-regular graph on {n} vertices")))
            }
            Family::PlantedClusters { parts: 0, .. } => Err(spec_error("parts must be at least 1")),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match self.family {
            Family::ErdosRenyi { p } => write!(f, "er:n={n},p={p}")?,
            Family::RandomRegular { d } => write!(f, "regular:n={n},d={d}")?,
            Family::PlantedClusters { parts, p_in, p_out } => {
                write!(f, "clusters:n={n},parts={parts},p_in={p_in},p_out={p_out}")?
            }
            Family::Path => write!(f, "path:n={n}")?,
            Family::Star => write!(f, "star:n={n}")?,
            Family::Complete => write!(f, "complete:n={n}")?,
            Family::Tree => write!(f, "tree:n={n}")?,
        }
        if self.seed != 0 {
            write!(f, ",seed={}", self.seed)?;
        }
        Ok(())
    }
}

fn spec_error(message: impl Into<String>) -> Error {
    Error::InvalidParameter(message.into())
}

struct Fields<'a> {
    spec: &'a str,
    values: BTreeMap<&'a str, &'a str>,
}

impl<'a> Fields<'a> {
    fn parse(spec: &'a str, body: &'a str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| spec_error(format!("`{item}` in `{spec}` is not key=value")))?;
            if values.insert(key.trim(), value.trim()).is_some() {
                return Err(spec_error(format!("`{key}` repeated in `{spec}`")));
            }
        }
        Ok(Fields { spec, values })
    }

    fn take<T: FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.values.remove(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                spec_error(format!("bad value `{raw}` for `{key}` in `{}`", self.spec))
            }),
        }
    }

    fn require<T: FromStr>(&mut self, key: &str) -> Result<T> {
        self.take(key)?
            .ok_or_else(|| spec_error(format!("`{}` is missing `{key}`", self.spec)))
    }

    fn probability(&mut self, key: &str) -> Result<f64> {
        let p: f64 = self.require(key)?;
        if !(0.0..=1.0).contains(&p) {
            return Err(spec_error(format!("`{key}` = {p} is not a probability")));
        }
        Ok(p)
    }

    fn finish(self) -> Result<()> {
        match self.values.keys().next() {
            Some(key) => Err(spec_error(format!(
                "unknown key `{key}` in `{}`",
                self.spec
            ))),
            None => Ok(()),
        }
    }
}

impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, body) = s.split_once(':').unwrap_or((s, ""));
        let mut fields = Fields::parse(s, body)?;
        let n: usize = fields.require("n")?;
        let seed = fields.take("seed")?.unwrap_or(0);
        let family = match name.trim() {
            "er" | "erdos-renyi" => Family::ErdosRenyi {
                p: fields.probability("p")?,
            },
            "regular" | "random-regular" => Family::RandomRegular {
                d: fields.require("d")?,
            },
            "clusters" | "planted-clusters" => Family::PlantedClusters {
                parts: fields.require("parts")?,
                p_in: fields.probability("p_in")?,
                p_out: fields.probability("p_out")?,
            },
            "path" => Family::Path,
            "star" => Family::Star,
            "complete" => Family::Complete,
            "tree" => Family::Tree,
            other => return Err(spec_error(format!("unknown graph family `{other}`"))),
        };
        fields.finish()?;
        let spec = GenSpec { family, n, seed };
        spec.validate()?;
        Ok(spec)
    }
}

/// Builds the graph described by `spec`; identical specs give identical graphs.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges = match spec.family {
        Family::ErdosRenyi { p } => bernoulli_pairs(n, p, &mut rng, |_, _| true),
        Family::PlantedClusters { parts, p_in, p_out } => {
            let block = |v: usize| v * parts / n.max(1);
            let mut edges = bernoulli_pairs(n, p_in, &mut rng, |u, v| block(u) == block(v));
            edges.extend(bernoulli_pairs(n, p_out, &mut rng, |u, v| {
                block(u) != block(v)
            }));
            edges
        }
        Family::RandomRegular { d } => random_regular(n, d, &mut rng)?,
        Family::Path => (1..n).map(|v| (v - 1, v)).collect(),
        Family::Star => (1..n).map(|v| (0, v)).collect(),
        Family::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        Family::Tree => (1..n).map(|v| (rng.gen_range(0..v), v)).collect(),
    };
    Graph::from_edges(n, edges)
}

/// Each pair `u < v` accepted by `keep` independently with probability `p`,
/// sampled by geometric skips over the pair sequence.
fn bernoulli_pairs<F>(n: usize, p: f64, rng: &mut ChaCha8Rng, keep: F) -> Vec<(usize, usize)>
where
    F: Fn(usize, usize) -> bool,
{
    let mut edges = Vec::new();
    if p <= 0.0 || n < 2 {
        return edges;
    }
    if p >= 1.0 {
        for u in 0..n {
            edges.extend((u + 1..n).filter(|&v| keep(u, v)).map(|v| (u, v)));
        }
        return edges;
    }
    let log_q = (1.0 - p).ln();
    let (mut u, mut v) = (0usize, 0usize);
    loop {
        let r: f64 = rng.gen::<f64>();
        let skip = (((1.0 - r).ln() / log_q).floor() as usize).min(n * n);
        v += 1 + skip;
        while v >= n {
            u += 1;
            if u + 1 >= n {
                return edges;
            }
            v = v - n + u + 1;
        }
        if keep(u, v) {
            edges.push((u, v));
        }
    }
}

fn random_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    for _ in 0..1000 {
        if let Some(edges) = try_pairing(n, d, rng) {
            return Ok(edges);
        }
    }
    Err(spec_error(format!(
        "failed to sample a {d}-regular graph on {n} vertices"
    )))
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(n * d / 2);
    while !points.is_empty() {
        points.shuffle(rng);
        let mut rest = Vec::new();
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u != v && seen.insert((u, v)) {
                edges.push((u, v));
            } else {
                rest.extend_from_slice(pair);
            }
        }
        if rest.len() == points.len() {
            let stuck = rest.iter().enumerate().all(|(i, &u)| {
                rest[i + 1..]
                    .iter()
                    .all(|&v| u == v || seen.contains(&(u.min(v), u.max(v))))
            });
            if stuck {
                return None;
            }
        }
        points = rest;
    }
    Some(edges)
}

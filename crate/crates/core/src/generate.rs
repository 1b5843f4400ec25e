//! Deterministic synthetic pipelines standing in for unrolled logical graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DataflowEdge, Drop, Pgt};
use crate::resource::ResourceVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineFamily {
    /// `n` compute drops in a line.
    Chain { n: usize },
    /// One data drop fanning out to `width` workers that feed one join drop.
    ForkJoin { width: usize },
    /// `layers` alternating data/compute layers of `width` drops each,
    /// starting with a data layer; every drop feeds its counterpart in the
    /// next layer and sometimes its right-hand neighbour as well.
    LayeredImaging { layers: usize, width: usize },
}

/// Parameters of a generated pipeline. Ranges are inclusive `(min, max)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub family: PipelineFamily,
    pub compute_time: (f64, f64),
    pub data_time: (f64, f64),
    pub volume: (f64, f64),
    pub cores: (u64, u64),
    pub memory_mb: (u64, u64),
    /// Memory held by data drops; their core demand is always zero.
    pub payload_mb: (u64, u64),
    pub bandwidth: f64,
    /// Probability of the extra neighbour edge in layered pipelines.
    pub cross_link: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn chain(n: usize) -> Self {
        GeneratorSpec {
            family: PipelineFamily::Chain { n },
            compute_time: (1.0, 1.0),
            data_time: (0.0, 0.0),
            volume: (1.0, 1.0),
            cores: (1, 1),
            memory_mb: (0, 0),
            payload_mb: (0, 0),
            bandwidth: 1.0,
            cross_link: 0.0,
            seed: 0,
        }
    }

    pub fn fork_join(width: usize) -> Self {
        GeneratorSpec {
            family: PipelineFamily::ForkJoin { width },
            compute_time: (5.0, 5.0),
            data_time: (1.0, 1.0),
            volume: (10.0, 10.0),
            cores: (4, 4),
            memory_mb: (1024, 1024),
            payload_mb: (512, 512),
            bandwidth: 1.0,
            cross_link: 0.0,
            seed: 0,
        }
    }

    pub fn layered_imaging(layers: usize, width: usize) -> Self {
        GeneratorSpec {
            family: PipelineFamily::LayeredImaging { layers, width },
            compute_time: (1.0, 20.0),
            data_time: (0.1, 2.0),
            volume: (1.0, 100.0),
            cores: (1, 8),
            memory_mb: (256, 4096),
            payload_mb: (64, 2048),
            bandwidth: 10.0,
            cross_link: 0.25,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSpec(msg.to_string()));
        match self.family {
            PipelineFamily::Chain { n: 0 } => return bad("chain length must be positive"),
            PipelineFamily::ForkJoin { width: 0 } => {
                return bad("fork-join width must be positive")
            }
            PipelineFamily::LayeredImaging { layers, width } if layers == 0 || width == 0 => {
                return bad("layered pipeline needs at least one layer of positive width")
            }
            _ => {}
        }
        if !(self.bandwidth.is_finite() && self.bandwidth > 0.0) {
            return bad("bandwidth must be positive");
        }
        for (name, (lo, hi)) in [
            ("compute_time", self.compute_time),
            ("data_time", self.data_time),
            ("volume", self.volume),
        ] {
            if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi) {
                return Err(Error::InvalidSpec(format!(
                    "{name} range ({lo}, {hi}) is invalid"
                )));
            }
        }
        for (name, (lo, hi)) in [
            ("cores", self.cores),
            ("memory_mb", self.memory_mb),
            ("payload_mb", self.payload_mb),
        ] {
            if lo > hi {
                return Err(Error::InvalidSpec(format!(
                    "{name} range ({lo}, {hi}) is invalid"
                )));
            }
        }
        if !(0.0..=1.0).contains(&self.cross_link) {
            return bad("cross_link must be a probability");
        }
        Ok(())
    }
}

struct Builder {
    rng: ChaCha8Rng,
    spec: GeneratorSpec,
    drops: Vec<Drop>,
    edges: Vec<DataflowEdge>,
}

impl Builder {
    fn compute(&mut self, id: String) {
        let (t, c, m) = (self.spec.compute_time, self.spec.cores, self.spec.memory_mb);
        let exec = self.rng.gen_range(t.0..=t.1);
        let demand =
            ResourceVector::new(self.rng.gen_range(c.0..=c.1), self.rng.gen_range(m.0..=m.1));
        self.drops.push(Drop::compute(id, exec, demand));
    }

    fn data(&mut self, id: String) {
        let (t, p) = (self.spec.data_time, self.spec.payload_mb);
        let exec = self.rng.gen_range(t.0..=t.1);
        let demand = ResourceVector::new(0, self.rng.gen_range(p.0..=p.1));
        self.drops.push(Drop::data(id, exec, demand));
    }

    fn edge(&mut self, src: &str, dst: &str) {
        let v = self.spec.volume;
        let volume = self.rng.gen_range(v.0..=v.1);
        self.edges.push(DataflowEdge::new(src, dst, volume));
    }
}

/// Builds a validated graph from `spec`; identical specs give identical graphs.
pub fn generate_pipeline(spec: &GeneratorSpec) -> Result<Pgt> {
    spec.validate()?;
    let mut b = Builder {
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        spec: spec.clone(),
        drops: Vec::new(),
        edges: Vec::new(),
    };
    match spec.family {
        PipelineFamily::Chain { n } => {
            for i in 0..n {
                b.compute(format!("c{i}"));
                if i > 0 {
                    b.edge(&format!("c{}", i - 1), &format!("c{i}"));
                }
            }
        }
        PipelineFamily::ForkJoin { width } => {
            b.data("src".into());
            for i in 0..width {
                let w = format!("worker{i}");
                b.compute(w.clone());
                b.edge("src", &w);
            }
            b.compute("join".into());
            for i in 0..width {
                b.edge(&format!("worker{i}"), "join");
            }
        }
        PipelineFamily::LayeredImaging { layers, width } => {
            let id = |l: usize, i: usize| format!("L{l}_{i}");
            for l in 0..layers {
                for i in 0..width {
                    if l % 2 == 0 {
                        b.data(id(l, i));
                    } else {
                        b.compute(id(l, i));
                    }
                }
                if l == 0 {
                    continue;
                }
                for i in 0..width {
                    b.edge(&id(l - 1, i), &id(l, i));
                    if width > 1 && b.rng.gen_bool(spec.cross_link) {
                        b.edge(&id(l - 1, i), &id(l, (i + 1) % width));
                    }
                }
            }
        }
    }
    Pgt::new(b.drops, b.edges, spec.bandwidth)
}

//! The insertion-only streaming model: replayable edge streams, the
//! pass-driven detector contract, and word-level space accounting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Embedding, GraphError, OrientedGraph, UndirectedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StreamMode {
    Undirected,
    Oriented,
}

/// One streamed edge or arc.
pub type Item = (u32, u32);

/// Replayable ordered sequence of edges/arcs with the vertex count known in
/// advance.
#[derive(Debug, Clone)]
pub struct EdgeStream {
    pub n: usize,
    pub mode: StreamMode,
    items: Vec<Item>,
}

impl EdgeStream {
    pub fn new(n: usize, mode: StreamMode, items: Vec<Item>) -> Result<Self, GraphError> {
        // Validate aggregate simplicity by building the corresponding graph.
        match mode {
            StreamMode::Undirected => {
                UndirectedGraph::from_edges(n, &items)?;
            }
            StreamMode::Oriented => {
                OrientedGraph::from_arcs(n, &items)?;
            }
        }
        Ok(EdgeStream { n, mode, items })
    }

    pub fn from_undirected(g: &UndirectedGraph) -> Self {
        EdgeStream { n: g.n(), mode: StreamMode::Undirected, items: g.edge_vec() }
    }

    pub fn from_oriented(g: &OrientedGraph) -> Self {
        EdgeStream { n: g.n(), mode: StreamMode::Oriented, items: g.arc_vec() }
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn as_undirected(&self) -> UndirectedGraph {
        match self.mode {
            StreamMode::Undirected => UndirectedGraph::from_edges(self.n, &self.items).unwrap(),
            StreamMode::Oriented => {
                OrientedGraph::from_arcs(self.n, &self.items).unwrap().underlying()
            }
        }
    }

    pub fn as_oriented(&self) -> OrientedGraph {
        assert_eq!(self.mode, StreamMode::Oriented);
        OrientedGraph::from_arcs(self.n, &self.items).unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderStrategy {
    Sorted,
    Reversed,
    InterleaveParts,
    SeededShuffle(u64),
}

/// Deterministically permute the stream's items.
pub fn adversarial_order(stream: &EdgeStream, strategy: OrderStrategy) -> EdgeStream {
    let mut items = stream.items.clone();
    match strategy {
        OrderStrategy::Sorted => items.sort_unstable(),
        OrderStrategy::Reversed => {
            items.sort_unstable();
            items.reverse();
        }
        OrderStrategy::InterleaveParts => {
            items.sort_unstable();
            let mid = items.len() / 2;
            let (a, b) = items.split_at(mid);
            let mut merged = Vec::with_capacity(items.len());
            let mut ia = a.iter();
            let mut ib = b.iter();
            loop {
                match (ia.next(), ib.next()) {
                    (None, None) => break,
                    (x, y) => {
                        if let Some(&e) = x {
                            merged.push(e);
                        }
                        if let Some(&e) = y {
                            merged.push(e);
                        }
                    }
                }
            }
            items = merged;
        }
        OrderStrategy::SeededShuffle(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            items.shuffle(&mut rng);
        }
    }
    EdgeStream { n: stream.n, mode: stream.mode, items }
}

pub fn all_orders(stream: &EdgeStream, shuffle_seed: u64) -> Vec<EdgeStream> {
    vec![
        adversarial_order(stream, OrderStrategy::Sorted),
        adversarial_order(stream, OrderStrategy::Reversed),
        adversarial_order(stream, OrderStrategy::InterleaveParts),
        adversarial_order(stream, OrderStrategy::SeededShuffle(shuffle_seed)),
    ]
}

/// Word-level space accounting. Detectors acquire and release every
/// persistent cell; transient per-item scratch is exempt.
#[derive(Debug, Default)]
pub struct SpaceMeter {
    current: u64,
    peak: u64,
}

impl SpaceMeter {
    pub fn acquire(&mut self, words: u64) {
        self.current += words;
        if self.current > self.peak {
            self.peak = self.current;
        }
    }

    pub fn release(&mut self, words: u64) {
        debug_assert!(self.current >= words, "releasing more words than held");
        self.current = self.current.saturating_sub(words);
    }

    pub fn current(&self) -> u64 {
        self.current
    }

    pub fn peak(&self) -> u64 {
        self.peak
    }

    /// Words for a bit-array over `n` cells (64 bits per register word).
    pub fn bit_words(n: usize) -> u64 {
        ((n + 63) / 64) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DetectionResult {
    Found(EmbeddingOut),
    NotFound,
    /// A sketch query the construction required returned nothing.
    Failed(String),
}

/// Serialization-friendly embedding wrapper.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingOut {
    pub map: Vec<u32>,
}

impl From<Embedding> for EmbeddingOut {
    fn from(e: Embedding) -> Self {
        EmbeddingOut { map: e.map }
    }
}

impl DetectionResult {
    pub fn found(e: Embedding) -> Self {
        DetectionResult::Found(e.into())
    }

    pub fn is_found(&self) -> bool {
        matches!(self, DetectionResult::Found(_))
    }

    pub fn embedding(&self) -> Option<Embedding> {
        match self {
            DetectionResult::Found(e) => Some(Embedding::new(e.map.clone())),
            _ => None,
        }
    }
}

/// Pass-driven detector contract. The engine exposes items one-way only:
/// a detector sees each item once per pass, in stream order.
pub trait Detector {
    /// Human-readable algorithm id for reports.
    fn name(&self) -> &'static str;

    fn begin_pass(&mut self, pass_index: usize, meter: &mut SpaceMeter);

    fn on_item(&mut self, item: Item, meter: &mut SpaceMeter);

    /// Returning `Some` terminates the run.
    fn end_pass(&mut self, meter: &mut SpaceMeter) -> Option<DetectionResult>;
}

#[derive(Debug, Clone, Serialize)]
pub struct RunStats {
    pub algo: String,
    pub passes_used: usize,
    pub peak_words: u64,
    pub outcome: DetectionResult,
    pub seed: Option<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RunError {
    #[error("pass budget exceeded: {0} passes allowed")]
    PassBudgetExceeded(usize),
    #[error("word budget exceeded: {used} > {budget}")]
    WordBudgetExceeded { used: u64, budget: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_passes: usize,
    pub max_words: Option<u64>,
}

impl Budget {
    pub fn passes(max_passes: usize) -> Self {
        Budget { max_passes, max_words: None }
    }
}

/// Drive a detector over the stream until it reports a result or the budget
/// runs out.
pub fn run(
    detector: &mut dyn Detector,
    stream: &EdgeStream,
    budget: Budget,
    seed: Option<u64>,
) -> Result<RunStats, RunError> {
    let mut meter = SpaceMeter::default();
    let mut passes = 0usize;
    loop {
        if passes >= budget.max_passes {
            return Err(RunError::PassBudgetExceeded(budget.max_passes));
        }
        detector.begin_pass(passes, &mut meter);
        for &item in stream.items() {
            detector.on_item(item, &mut meter);
        }
        passes += 1;
        let outcome = detector.end_pass(&mut meter);
        if let Some(budget_words) = budget.max_words {
            if meter.peak() > budget_words {
                return Err(RunError::WordBudgetExceeded { used: meter.peak(), budget: budget_words });
            }
        }
        if let Some(outcome) = outcome {
            return Ok(RunStats {
                algo: detector.name().to_string(),
                passes_used: passes,
                peak_words: meter.peak(),
                outcome,
                seed,
            });
        }
    }
}

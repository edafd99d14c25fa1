use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

/// Search limits: a node count and a wall-clock allowance, whichever trips first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_wall: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: None, max_wall: None };

    pub fn nodes(n: u64) -> Self {
        Budget { max_nodes: Some(n), max_wall: None }
    }

    pub fn wall(d: Duration) -> Self {
        Budget { max_nodes: None, max_wall: Some(d) }
    }

    pub fn with_nodes(mut self, n: u64) -> Self {
        self.max_nodes = Some(n);
        self
    }

    pub fn with_wall(mut self, d: Duration) -> Self {
        self.max_wall = Some(d);
        self
    }

    pub fn start(self) -> Meter {
        Meter { budget: self, started: Instant::now(), nodes: 0, tripped: false }
    }
}

/// Running consumption against a [`Budget`].
#[derive(Debug, Clone)]
pub struct Meter {
    budget: Budget,
    started: Instant,
    nodes: u64,
    tripped: bool,
}

impl Meter {
    /// Counts one node; returns false once the budget is exhausted.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.tripped {
            return false;
        }
        self.nodes += 1;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                self.tripped = true;
                return false;
            }
        }
        if self.nodes & 0x3ff == 0 {
            if let Some(wall) = self.budget.max_wall {
                if self.started.elapsed() > wall {
                    self.tripped = true;
                    return false;
                }
            }
        }
        true
    }

    pub fn exhausted(&self) -> bool {
        self.tripped
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }
}

/// A [`Meter`] that several worker threads can charge at once.
#[derive(Debug)]
pub struct SharedMeter {
    budget: Budget,
    started: Instant,
    nodes: AtomicU64,
    tripped: AtomicBool,
}

impl SharedMeter {
    pub fn new(budget: Budget) -> Self {
        Self { budget, started: Instant::now(), nodes: AtomicU64::new(0), tripped: AtomicBool::new(false) }
    }

    /// Counts one node; returns false once the budget is exhausted.
    #[inline]
    pub fn tick(&self) -> bool {
        if self.tripped.load(Ordering::Relaxed) {
            return false;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.budget.max_nodes.is_some_and(|max| count > max);
        let over_wall = count & 0x3ff == 0 && self.budget.max_wall.is_some_and(|w| self.started.elapsed() > w);
        if over_nodes || over_wall {
            self.tripped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub fn exhausted(&self) -> bool {
        self.tripped.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }
}

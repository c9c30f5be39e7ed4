//! Exhaustive extremal search: `mi_k(n, F)` and `m(k, t)` with witnesses.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::enumeration::count_mi;
use crate::error::Result;
use crate::generate::fold_graphs;
use crate::graph::{FamilyFilter, Graph};
use crate::graph6;

/// Witness lists are cut at this length; the exact total is kept separately.
pub const WITNESS_LIMIT: usize = 100;

/// Outcome of scoring every class of one order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub k: u32,
    pub family: FamilyFilter,
    /// Largest number of k-DISes over the family.
    pub optimum: u64,
    /// graph6 of the classes attaining the optimum, in generation order.
    pub witnesses: Vec<String>,
    pub witness_count: u64,
    pub graphs_examined: u64,
    /// Wall-clock seconds.
    pub elapsed: f64,
}

impl SearchReport {
    pub fn witness_graphs(&self) -> Vec<Graph> {
        decode_all(&self.witnesses)
    }
}

fn decode_all(witnesses: &[String]) -> Vec<Graph> {
    witnesses
        .iter()
        .map(|s| graph6::decode(s).expect("witnesses are valid graph6"))
        .collect()
}

#[derive(Clone, Debug, Default)]
struct Tally {
    optimum: u64,
    witnesses: Vec<Graph>,
    witness_count: u64,
    examined: u64,
}

impl Tally {
    fn observe(mut self, g: &Graph, count: u64, bar: Option<u64>) -> Self {
        self.examined += 1;
        match bar {
            Some(t) => {
                self.optimum = self.optimum.max(count);
                if count >= t {
                    self.push(g);
                }
            }
            None => {
                if count > self.optimum || self.examined == 1 {
                    self.optimum = count;
                    self.witnesses.clear();
                    self.witness_count = 0;
                }
                if count == self.optimum {
                    self.push(g);
                }
            }
        }
        self
    }

    fn push(&mut self, g: &Graph) {
        self.witness_count += 1;
        if self.witnesses.len() < WITNESS_LIMIT {
            self.witnesses.push(g.clone());
        }
    }

    /// Left-to-right merge. With a bar, witnesses are everything clearing it;
    /// without one, only the side(s) holding the larger optimum survive.
    fn merge(mut self, other: Tally, bar: Option<u64>) -> Tally {
        if other.examined == 0 {
            return self;
        }
        if self.examined == 0 {
            return other;
        }
        let examined = self.examined + other.examined;
        if bar.is_none() && other.optimum > self.optimum {
            return Tally { examined, ..other };
        }
        if bar.is_some() || other.optimum == self.optimum {
            self.witness_count += other.witness_count;
            let room = WITNESS_LIMIT - self.witnesses.len();
            self.witnesses.extend(other.witnesses.into_iter().take(room));
        }
        self.optimum = self.optimum.max(other.optimum);
        self.examined = examined;
        self
    }
}

fn tally(n: usize, k: u32, family: FamilyFilter, bar: Option<u64>) -> Result<Tally> {
    fold_graphs(
        n,
        family,
        Tally::default,
        |acc, g| acc.observe(g, count_mi(g, k), bar),
        |a, b| a.merge(b, bar),
    )
}

/// `mi_k(n, family)`: scores every class and keeps all optimal witnesses.
pub fn compute_mi_table(n: usize, k: u32, family: FamilyFilter) -> Result<SearchReport> {
    let start = Instant::now();
    let t = tally(n, k, family, None)?;
    Ok(SearchReport {
        n,
        k,
        family,
        optimum: t.optimum,
        witnesses: t.witnesses.iter().map(graph6::encode).collect(),
        witness_count: t.witness_count,
        graphs_examined: t.examined,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MStatus {
    /// `m_value` found and every smaller order searched exhaustively.
    Certified,
    /// No order up to the budget reaches `t`.
    Inconclusive,
}

/// Result of the search for `m(k, t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MResult {
    pub k: u32,
    pub t: u64,
    pub status: MStatus,
    pub m_value: Option<usize>,
    /// First witness in generation order.
    pub witness: Option<String>,
    /// All classes on `m_value` vertices with at least `t` k-DISes (truncated).
    pub witnesses: Vec<String>,
    pub witness_count: u64,
    /// `(n, mi_k(n))` for every order searched.
    pub optima: Vec<(usize, u64)>,
}

impl MResult {
    pub fn witness_graphs(&self) -> Vec<Graph> {
        decode_all(&self.witnesses)
    }
}

/// Smallest `n <= n_budget` such that some `n`-vertex graph has at least `t`
/// k-DISes. Orders are searched upwards from 1, so a hit certifies that all
/// smaller orders fail.
pub fn compute_m(k: u32, t: u64, n_budget: usize) -> Result<MResult> {
    let mut optima = Vec::new();
    for n in 1..=n_budget {
        let tl = tally(n, k, FamilyFilter::All, Some(t))?;
        optima.push((n, tl.optimum));
        if tl.witness_count > 0 {
            let witnesses: Vec<String> = tl.witnesses.iter().map(graph6::encode).collect();
            return Ok(MResult {
                k,
                t,
                status: MStatus::Certified,
                m_value: Some(n),
                witness: witnesses.first().cloned(),
                witnesses,
                witness_count: tl.witness_count,
                optima,
            });
        }
    }
    Ok(MResult {
        k,
        t,
        status: MStatus::Inconclusive,
        m_value: None,
        witness: None,
        witnesses: Vec::new(),
        witness_count: 0,
        optima,
    })
}

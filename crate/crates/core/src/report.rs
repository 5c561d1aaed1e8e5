//! One benchmark measurement and its tab-separated row form.

use std::fmt;
use std::time::Duration;

use crate::changelog::ChangeLog;
use crate::partition::BatchMode;
use crate::runtime::TaskCounters;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub dataset: String,
    pub mode: BatchMode,
    pub batch_size: usize,
    pub workers: usize,
    pub rounds: usize,
    /// Maintenance time only; loading and generation are excluded.
    pub total: Duration,
    pub round_counters: Vec<TaskCounters>,
    /// Baseline time per edge over this report's time per edge.
    pub speedup: Option<f64>,
}

impl BenchReport {
    pub const HEADER: &'static str = "dataset\tmode\tbatch\tworkers\trounds\ttotal_ms\tper_edge_us\tvisited\tnegative\tsd\tcsd\tround_visited\tspeedup";

    pub fn from_log(
        dataset: impl Into<String>,
        batch_size: usize,
        workers: usize,
        total: Duration,
        log: &ChangeLog,
    ) -> Self {
        BenchReport {
            dataset: dataset.into(),
            mode: log.mode,
            batch_size,
            workers,
            rounds: log.round_count(),
            total,
            round_counters: log.rounds.iter().map(|r| r.counters).collect(),
            speedup: None,
        }
    }

    /// `total / batch_size`; zero for an empty batch.
    pub fn per_edge(&self) -> Duration {
        match u32::try_from(self.batch_size) {
            Ok(0) => Duration::ZERO,
            Ok(n) => self.total / n,
            Err(_) => Duration::from_secs_f64(self.total.as_secs_f64() / self.batch_size as f64),
        }
    }

    pub fn counters(&self) -> TaskCounters {
        let mut total = TaskCounters::default();
        for c in &self.round_counters {
            total += *c;
        }
        total
    }

    /// Sets `speedup` against a baseline's time per edge.
    pub fn with_baseline(mut self, baseline_per_edge: Duration) -> Self {
        let own = self.per_edge().as_secs_f64();
        self.speedup = (own > 0.0).then(|| baseline_per_edge.as_secs_f64() / own);
        self
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.counters();
        let per_round: Vec<String> = self
            .round_counters
            .iter()
            .map(|r| r.visited.to_string())
            .collect();
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{:.3}\t{:.3}\t{}\t{}\t{}\t{}\t{}\t",
            self.dataset,
            self.mode.as_str(),
            self.batch_size,
            self.workers,
            self.rounds,
            self.total.as_secs_f64() * 1e3,
            self.per_edge().as_secs_f64() * 1e6,
            c.visited,
            c.negative_touches,
            c.sd_computations,
            c.csd_computations,
            if per_round.is_empty() {
                "-".to_string()
            } else {
                per_round.join(",")
            },
        )?;
        match self.speedup {
            Some(s) => write!(f, "{s:.2}"),
            None => write!(f, "-"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(batch: usize, total_ms: u64) -> BenchReport {
        BenchReport {
            dataset: "er".into(),
            mode: BatchMode::Insert,
            batch_size: batch,
            workers: 2,
            rounds: 2,
            total: Duration::from_millis(total_ms),
            round_counters: vec![
                TaskCounters {
                    visited: 3,
                    ..Default::default()
                },
                TaskCounters {
                    visited: 4,
                    negative_touches: 1,
                    ..Default::default()
                },
            ],
            speedup: None,
        }
    }

    #[test]
    fn per_edge_is_total_over_batch() {
        assert_eq!(report(4, 10).per_edge(), Duration::from_micros(2500));
        assert_eq!(report(0, 10).per_edge(), Duration::ZERO);
    }

    #[test]
    fn speedup_against_baseline() {
        let r = report(4, 10).with_baseline(Duration::from_millis(25));
        assert!((r.speedup.unwrap() - 10.0).abs() < 1e-9);
    }

    #[test]
    fn row_matches_header_width() {
        let row = report(4, 10).to_string();
        assert_eq!(
            row.split('\t').count(),
            BenchReport::HEADER.split('\t').count()
        );
        assert_eq!(
            row,
            "er\tinsert\t4\t2\t2\t10.000\t2500.000\t7\t1\t0\t0\t3,4\t-"
        );
    }
}

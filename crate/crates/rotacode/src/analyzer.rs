//! Oligo quality assessment: homopolymer statistics and GC-content
//! distribution over an oligo pool, with machine-readable reports.
//!
//! A homopolymer is a maximal run of one nucleotide; runs longer than three
//! violate synthesis constraints, so runs of length four and up are counted.
//! GC content below 30% or above 60% marks an oligo as problematic. Runs are
//! measured within oligos and never across oligo boundaries.

use serde::{Deserialize, Serialize};

use crate::codebook::Nucleotide;
use crate::oligo::OligoPool;

/// Shortest run that counts as a homopolymer.
pub const HOMOPOLYMER_THRESHOLD: usize = 4;

/// GC fraction limits; strictly outside is problematic.
pub const GC_LOW: f64 = 0.30;
pub const GC_HIGH: f64 = 0.60;

/// Number of histogram bins (5% wide).
pub const GC_BINS: usize = 20;

/// Maximal runs of length >= 4 as `(start, length)` pairs.
pub fn homopolymer_runs(oligo: &[Nucleotide]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = 0usize;
    for i in 1..=oligo.len() {
        if i == oligo.len() || oligo[i] != oligo[start] {
            if i - start >= HOMOPOLYMER_THRESHOLD {
                runs.push((start, i - start));
            }
            start = i;
        }
    }
    runs
}

/// Aggregated homopolymer statistics over a pool.
#[derive(Debug, Clone, PartialEq)]
pub struct HomopolymerStats {
    /// Number of qualifying runs over the whole pool.
    pub n_homopolymers: u64,
    /// Mean length of qualifying runs; 0 when there are none.
    pub avg_len: f64,
    /// Longest qualifying run; 0 when there are none.
    pub max_len: u64,
    /// Mean qualifying-run length per oligo, for oligos with at least one run.
    pub per_oligo_avg: Vec<(usize, f64)>,
    /// Fraction of oligos containing no qualifying run.
    pub clean_oligo_fraction: f64,
}

pub fn homopolymer_stats(pool: &OligoPool) -> HomopolymerStats {
    let mut n = 0u64;
    let mut total_len = 0u64;
    let mut max_len = 0u64;
    let mut per_oligo_avg = Vec::new();
    let mut clean = 0usize;
    for (index, oligo) in pool.oligos().iter().enumerate() {
        let runs = homopolymer_runs(oligo);
        if runs.is_empty() {
            clean += 1;
            continue;
        }
        let oligo_total: u64 = runs.iter().map(|&(_, len)| len as u64).sum();
        n += runs.len() as u64;
        total_len += oligo_total;
        max_len = max_len.max(runs.iter().map(|&(_, len)| len as u64).max().unwrap_or(0));
        per_oligo_avg.push((index, oligo_total as f64 / runs.len() as f64));
    }
    HomopolymerStats {
        n_homopolymers: n,
        avg_len: if n > 0 { total_len as f64 / n as f64 } else { 0.0 },
        max_len,
        per_oligo_avg,
        clean_oligo_fraction: if pool.is_empty() {
            0.0
        } else {
            clean as f64 / pool.len() as f64
        },
    }
}

/// GC fraction of one sequence.
pub fn gc_fraction(oligo: &[Nucleotide]) -> f64 {
    if oligo.is_empty() {
        return 0.0;
    }
    let gc = oligo
        .iter()
        .filter(|n| matches!(n, Nucleotide::G | Nucleotide::C))
        .count();
    gc as f64 / oligo.len() as f64
}

/// GC-content distribution over a pool.
#[derive(Debug, Clone, PartialEq)]
pub struct GcReport {
    pub per_oligo_gc: Vec<f64>,
    /// Counts over 20 bins of width 5%; a fraction of exactly 1.0 lands in
    /// the last bin.
    pub histogram: [u64; GC_BINS],
    /// Fraction of oligos with GC strictly below 30% or above 60%.
    pub problematic_fraction: f64,
}

pub fn gc_report(pool: &OligoPool) -> GcReport {
    let mut per_oligo_gc = Vec::with_capacity(pool.len());
    let mut histogram = [0u64; GC_BINS];
    let mut problematic = 0usize;
    for oligo in pool.oligos() {
        let gc = gc_fraction(oligo);
        per_oligo_gc.push(gc);
        let bin = ((gc * GC_BINS as f64) as usize).min(GC_BINS - 1);
        histogram[bin] += 1;
        if !(GC_LOW..=GC_HIGH).contains(&gc) {
            problematic += 1;
        }
    }
    GcReport {
        per_oligo_gc,
        histogram,
        problematic_fraction: if pool.is_empty() {
            0.0
        } else {
            problematic as f64 / pool.len() as f64
        },
    }
}

/// The machine-readable quality report emitted by the analyzer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub n_oligos: u64,
    pub n_homopolymers: u64,
    pub avg_homopolymer_len: f64,
    pub max_homopolymer_len: u64,
    pub clean_oligo_fraction: f64,
    pub gc_problematic_fraction: f64,
    pub gc_histogram: Vec<u64>,
}

pub fn quality_report(pool: &OligoPool) -> QualityReport {
    let homopolymers = homopolymer_stats(pool);
    let gc = gc_report(pool);
    QualityReport {
        n_oligos: pool.len() as u64,
        n_homopolymers: homopolymers.n_homopolymers,
        avg_homopolymer_len: homopolymers.avg_len,
        max_homopolymer_len: homopolymers.max_len,
        clean_oligo_fraction: homopolymers.clean_oligo_fraction,
        gc_problematic_fraction: gc.problematic_fraction,
        gc_histogram: gc.histogram.to_vec(),
    }
}

/// Signed differences between two reports (`b` minus `a`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportDelta {
    pub d_n_homopolymers: i64,
    pub d_avg_homopolymer_len: f64,
    pub d_max_homopolymer_len: i64,
    pub d_gc_problematic_fraction: f64,
}

pub fn compare_reports(a: &QualityReport, b: &QualityReport) -> ReportDelta {
    ReportDelta {
        d_n_homopolymers: b.n_homopolymers as i64 - a.n_homopolymers as i64,
        d_avg_homopolymer_len: b.avg_homopolymer_len - a.avg_homopolymer_len,
        d_max_homopolymer_len: b.max_homopolymer_len as i64 - a.max_homopolymer_len as i64,
        d_gc_problematic_fraction: b.gc_problematic_fraction - a.gc_problematic_fraction,
    }
}

/// CSV of the GC histogram: `bin_low,bin_high,count` per line.
pub fn gc_histogram_csv(report: &QualityReport) -> String {
    let mut out = String::from("bin_low,bin_high,count\n");
    for (i, count) in report.gc_histogram.iter().enumerate() {
        out.push_str(&format!(
            "{:.2},{:.2},{count}\n",
            i as f64 / GC_BINS as f64,
            (i + 1) as f64 / GC_BINS as f64
        ));
    }
    out
}

/// CSV of per-oligo metrics: `index,gc,n_runs,avg_run_len` per line.
pub fn per_oligo_csv(pool: &OligoPool) -> String {
    let mut out = String::from("index,gc,n_runs,avg_run_len\n");
    for (index, oligo) in pool.oligos().iter().enumerate() {
        let runs = homopolymer_runs(oligo);
        let avg = if runs.is_empty() {
            0.0
        } else {
            runs.iter().map(|&(_, len)| len as f64).sum::<f64>() / runs.len() as f64
        };
        out.push_str(&format!(
            "{index},{:.6},{},{avg:.6}\n",
            gc_fraction(oligo),
            runs.len()
        ));
    }
    out
}

use anyhow::Result;
use spectra_core::par::{map_range, Execution};
use spectra_core::PrecisionContext;

use crate::output::RowSink;
use crate::spec::TableSpec;
use crate::tables::{columns, describe, plan, run_task};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub rows: usize,
    pub failures: Vec<String>,
}

impl RunSummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn chunk_len(exec: Execution) -> usize {
    match exec {
        Execution::Sequential => 1,
        Execution::Parallel => std::thread::available_parallelism().map_or(4, |n| n.get()),
    }
}

/// Computes every task of `spec` and streams the rows to `sink`.
///
/// Tasks run in parallel chunks; each chunk is emitted in task order before
/// the next starts, so output is ordered and partial results reach the sink
/// early. A failing task is reported and skipped.
pub fn run(spec: &TableSpec, sink: &mut dyn RowSink, exec: Execution) -> Result<RunSummary> {
    spec.validate()?;
    let ctx = PrecisionContext::new(spec.precision_digits)?;
    let tasks = plan(spec);
    sink.begin(spec, columns(spec.table_id))?;
    let mut summary = RunSummary::default();
    for chunk in tasks.chunks(chunk_len(exec)) {
        let results = map_range(0..chunk.len(), exec, |i| run_task(spec, chunk[i], &ctx, exec));
        for (task, result) in chunk.iter().zip(results) {
            match result {
                Ok(rows) => {
                    for row in &rows {
                        sink.row(row)?;
                    }
                    summary.rows += rows.len();
                }
                Err(e) => summary.failures.push(format!("{}: {e:#}", describe(*task))),
            }
        }
    }
    sink.finish(&summary.failures)?;
    Ok(summary)
}

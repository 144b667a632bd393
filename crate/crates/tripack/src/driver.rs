//! Runs the oracle's root branches on a pool of threads and times the search.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use tripack_core::oracle::{reduce, root_branches, search_branch, BranchResult, OracleConfig, Problem, SearchReport};
use tripack_core::{Error, Result};

/// Searches every root branch of `problem` with up to `threads` workers.
///
/// Branches are independent and [`reduce`] ignores their order, so the
/// report is the same for every thread count apart from `elapsed`.
pub fn run_oracle(problem: Problem, cfg: &OracleConfig, threads: usize) -> Result<SearchReport> {
    if threads == 0 {
        return Err(Error::InvalidParameter("threads must be at least 1".into()));
    }
    problem.validate(cfg.force)?;
    let start = Instant::now();
    let points = match problem {
        Problem::Mpts { nu, .. } => nu,
        Problem::Extremal { n, .. } => n,
    };
    let branches = root_branches(points);
    let workers = threads.min(branches.len());
    let results = if workers == 1 {
        branches.iter().map(|&b| search_branch(problem, b, cfg)).collect::<Result<Vec<_>>>()?
    } else {
        let next = AtomicUsize::new(0);
        let done: Mutex<Vec<Result<BranchResult>>> = Mutex::new(Vec::with_capacity(branches.len()));
        thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let k = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&b) = branches.get(k) else { break };
                    let r = search_branch(problem, b, cfg);
                    done.lock().expect("worker panicked").push(r);
                });
            }
        });
        done.into_inner().expect("worker panicked").into_iter().collect::<Result<Vec<_>>>()?
    };
    let mut report = reduce(problem, results)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

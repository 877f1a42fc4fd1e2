use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

/// Number of parts per thread; extra parts give dynamic scheduling some
/// slack when part costs are uneven.
pub(crate) const PARTS_PER_THREAD: usize = 4;

/// Runs `work(state, part)` for every part in `0..nparts` on `nthreads`
/// scoped threads that pull part indices from a shared counter. Results come
/// back in part order; the per-thread states are returned alongside.
pub(crate) fn run_parts<S, R, I, F>(nparts: usize, nthreads: usize, init: I, work: F) -> (Vec<R>, Vec<S>)
where
    S: Send,
    R: Send,
    I: Fn() -> S + Sync,
    F: Fn(&mut S, usize) -> R + Sync,
{
    let nthreads = nthreads.clamp(1, nparts.max(1));
    if nthreads == 1 {
        let mut state = init();
        let results = (0..nparts).map(|p| work(&mut state, p)).collect();
        return (results, vec![state]);
    }
    let next = AtomicUsize::new(0);
    let per_thread: Vec<(Vec<(usize, R)>, S)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..nthreads)
            .map(|_| {
                scope.spawn(|| {
                    let mut state = init();
                    let mut done = Vec::new();
                    loop {
                        let p = next.fetch_add(1, Ordering::Relaxed);
                        if p >= nparts {
                            break;
                        }
                        done.push((p, work(&mut state, p)));
                    }
                    (done, state)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("kernel worker panicked"))
            .collect()
    });
    let mut slots: Vec<Option<R>> = (0..nparts).map(|_| None).collect();
    let mut states = Vec::with_capacity(per_thread.len());
    for (done, state) in per_thread {
        for (p, r) in done {
            slots[p] = Some(r);
        }
        states.push(state);
    }
    (
        slots.into_iter().map(|r| r.expect("every part runs once")).collect(),
        states,
    )
}

/// Splits `0..weights.len()` into at most `nparts` contiguous ranges of
/// roughly equal total weight, given prefix sums (`prefix.len() == n + 1`).
pub(crate) fn balanced_ranges(prefix: &[usize], nparts: usize) -> Vec<std::ops::Range<usize>> {
    let n = prefix.len() - 1;
    let total = prefix[n];
    let nparts = nparts.max(1);
    let mut bounds = vec![0usize];
    for q in 1..nparts {
        let target = (total as u128 * q as u128 / nparts as u128) as usize;
        let pos = prefix.partition_point(|&s| s < target).min(n);
        if pos > *bounds.last().unwrap() {
            bounds.push(pos);
        }
    }
    if *bounds.last().unwrap() < n {
        bounds.push(n);
    }
    bounds.windows(2).map(|w| w[0]..w[1]).collect()
}

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Runs `f` on a detached thread and waits at most `timeout` for it.
/// On timeout the thread is abandoned and keeps running until it returns;
/// callers pass a cooperative deadline into `f` to make that short.
pub fn run_with_timeout<T, F>(timeout: Duration, f: F) -> (Option<T>, Duration)
where
    T: Send + 'static,
    F: FnOnce() -> T + Send + 'static,
{
    let (tx, rx) = mpsc::channel();
    let start = Instant::now();
    std::thread::spawn(move || {
        let _ = tx.send(f());
    });
    match rx.recv_timeout(timeout) {
        Ok(v) => (Some(v), start.elapsed()),
        Err(_) => (None, start.elapsed()),
    }
}

/// Maps `f` over `jobs` with `threads` workers. The output is in job order
/// whatever the completion order.
pub fn run_pool<J, T, F>(jobs: &[J], threads: usize, f: F) -> Vec<T>
where
    J: Sync,
    T: Send,
    F: Fn(&J) -> T + Sync,
{
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads.max(1).min(jobs.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let out = f(&jobs[i]);
                slots.lock().unwrap()[i] = Some(out);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|o| o.expect("job finished")).collect()
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_keeps_job_order() {
        let jobs: Vec<u64> = (0..50).collect();
        let out = run_pool(&jobs, 4, |&j| {
            std::thread::sleep(Duration::from_micros((50 - j) * 10));
            j * 2
        });
        assert_eq!(out, jobs.iter().map(|j| j * 2).collect::<Vec<_>>());
    }

    #[test]
    fn timeout_abandons_slow_job() {
        let (v, _) = run_with_timeout(Duration::from_millis(20), || {
            std::thread::sleep(Duration::from_millis(500));
            1
        });
        assert_eq!(v, None);
        let (v, _) = run_with_timeout(Duration::from_secs(5), || 7);
        assert_eq!(v, Some(7));
    }
}

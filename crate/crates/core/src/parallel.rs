// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! Order-preserving map over independent work items.

/// Worker count: `None` for all available cores, `Some(1)` for serial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Jobs(pub Option<usize>);

impl Jobs {
    pub const SERIAL: Jobs = Jobs(Some(1));
    pub const AUTO: Jobs = Jobs(None);

    pub fn is_serial(self) -> bool {
        self.0 == Some(1) || !cfg!(feature = "parallel")
    }
}

/// Applies `f` to every item. Output order always matches input order.
pub fn map_ordered<T, R, F>(items: &[T], jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if jobs.is_serial() || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    par_map(items, jobs, f)
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], jobs: Jobs, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match jobs.0 {
        None => items.par_iter().map(f).collect(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
            Err(_) => items.iter().map(f).collect(),
        },
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], _jobs: Jobs, f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

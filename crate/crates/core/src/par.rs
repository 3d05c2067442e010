//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the helpers run on rayon's
//! global pool; without it, or with [`Execution::Sequential`], they run on
//! the calling thread. Results never depend on the execution mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// The mode that will actually run: `Parallel` degrades to
    /// `Sequential` when the crate is built without the `parallel` feature.
    pub fn effective(self) -> Execution {
        if cfg!(feature = "parallel") {
            self
        } else {
            Execution::Sequential
        }
    }
}

/// First item (in slice order) satisfying `pred`.
pub fn find_first<T, F>(items: &[T], pred: F) -> Option<&T>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    find_first_with(Execution::default(), items, pred)
}

pub fn find_first_with<T, F>(exec: Execution, items: &[T], pred: F) -> Option<&T>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().find_first(|t| pred(t)),
        _ => items.iter().find(|t| pred(t)),
    }
}

/// Order-preserving map.
pub fn map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let v: Vec<u32> = (0..1000).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(find_first_with(exec, &v, |x| x % 97 == 96), Some(&96));
            assert_eq!(map(exec, &v, |x| x * 2)[999], 1998);
        }
    }
}

//! Execution strategy for the data-parallel loops (degree sweeps, Cramer solves,
//! weight-block kernel ranks, random trial batches).
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] dispatches to rayon;
//! without it every strategy runs sequentially. Results are always returned in
//! input order, so output is identical under both strategies.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this build can actually run in parallel.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    pub fn try_map<T, R, E, F>(self, items: &[T], f: F) -> Result<Vec<R>, E>
    where
        T: Sync,
        R: Send,
        E: Send,
        F: Fn(&T) -> Result<R, E> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = Exec::Sequential.map(&xs, |x| x * x + 1);
        let par = Exec::Parallel.map(&xs, |x| x * x + 1);
        assert_eq!(seq, par);
        assert_eq!(seq[10], 101);
    }

    #[test]
    fn try_map_propagates_errors() {
        let xs = [1, 2, 3, 4];
        let r: Result<Vec<i32>, String> =
            Exec::Parallel.try_map(&xs, |&x| if x == 3 { Err("three".into()) } else { Ok(x) });
        assert_eq!(r, Err("three".to_string()));
    }
}

//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper here produces bit-identical results whatever the worker
//! count: parallel maps collect in input order, and reductions use a fixed
//! pairwise tree over fixed-size chunks.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Leaf size of the pairwise summation tree.
const PAIRWISE_LEAF: usize = 64;

/// How a batch of independent evaluations is executed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Execution {
    Sequential,
    /// Runs on the rayon pool when the `parallel` feature is enabled,
    /// sequentially otherwise.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `items`, returning results in input order.
pub fn ordered_map<I, T, F>(exec: Execution, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Like [`ordered_map`] for fallible evaluations; the first error in input order wins.
pub fn try_ordered_map<I, T, E, F>(exec: Execution, items: &[I], f: F) -> Result<Vec<T>, E>
where
    I: Sync,
    T: Send,
    E: Send,
    F: Fn(&I) -> Result<T, E> + Sync + Send,
{
    ordered_map(exec, items, f).into_iter().collect()
}

/// Pairwise (cascade) summation with a fixed split rule.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Inclusive prefix sums, accumulated left to right.
pub fn prefix_sums(values: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    values
        .iter()
        .map(|v| {
            acc += v;
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_exact_integers() {
        let v: Vec<f64> = (1..=10_000).map(|k| k as f64).collect();
        assert_eq!(pairwise_sum(&v), 50_005_000.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }

    #[test]
    fn ordered_map_is_order_preserving() {
        let items: Vec<u64> = (0..5000).collect();
        let seq = ordered_map(Execution::Sequential, &items, |k| (k * k) as f64 / 7.0);
        let par = ordered_map(Execution::Parallel, &items, |k| (k * k) as f64 / 7.0);
        assert_eq!(seq, par);
        assert_eq!(pairwise_sum(&seq).to_bits(), pairwise_sum(&par).to_bits());
    }

    #[test]
    fn first_error_in_input_order() {
        let items = [1, 2, 3, 4];
        let r: Result<Vec<i32>, i32> =
            try_ordered_map(Execution::Parallel, &items, |&k| if k >= 2 { Err(k) } else { Ok(k) });
        assert_eq!(r, Err(2));
    }

    #[test]
    fn prefix_sums_accumulate() {
        assert_eq!(prefix_sums(&[1.0, 2.0, 3.5]), vec![1.0, 3.0, 6.5]);
    }
}
